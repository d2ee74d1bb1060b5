//! Morphism classification against a probe family: mono and epi by
//! exhaustive pre/post-composition tables, iso by two-sided inverse
//! search, and factorisation through monomorphisms.

use crate::cat::{Category, Mor, Obj};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

/// `f` is monic on the probes iff postcomposition with `f` is injective
/// on every `hom(P, src f)`; epi dually; iso iff a two-sided inverse
/// exists in `hom(tgt f, src f)`.
pub fn morphism_class(cat: &Category, f: &Mor, probes: &[Obj]) -> Result<MorphismClass> {
    Ok(MorphismClass {
        mono: is_mono(cat, f, probes)?,
        epi: is_epi(cat, f, probes)?,
        iso: inverse(cat, f)?.is_some(),
    })
}

pub fn is_mono(cat: &Category, f: &Mor, probes: &[Obj]) -> Result<bool> {
    for p in probes {
        let hs = cat.hom(p, &f.src_obj())?;
        let mut seen = std::collections::BTreeSet::new();
        for u in &hs {
            if !seen.insert(cat.compose(f, u)?.key) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_epi(cat: &Category, f: &Mor, probes: &[Obj]) -> Result<bool> {
    for p in probes {
        let hs = cat.hom(&f.tgt_obj(), p)?;
        let mut seen = std::collections::BTreeSet::new();
        for u in &hs {
            if !seen.insert(cat.compose(u, f)?.key) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two-sided inverse, least in key order, if one exists. Finite sets
/// invert bijections directly instead of scanning the hom-set.
pub fn inverse(cat: &Category, f: &Mor) -> Result<Option<Mor>> {
    if let crate::cat::CatKind::FinSet = cat.kind() {
        let dom = crate::cat::finset::elems(&f.src_obj())?.to_vec();
        let cod = crate::cat::finset::elems(&f.tgt_obj())?.to_vec();
        if dom.len() != cod.len() {
            return Ok(None);
        }
        let mut back = Vec::with_capacity(dom.len());
        let mut seen = std::collections::BTreeSet::new();
        for x in &dom {
            let y = crate::cat::finset::apply(f, x)?;
            if !seen.insert(y.clone()) {
                return Ok(None);
            }
            back.push((y, x.clone()));
        }
        return Ok(Some(crate::cat::finset::mor_from_pairs(
            &f.tgt_obj(),
            &f.src_obj(),
            back,
        )?));
    }
    for g in cat.hom(&f.tgt_obj(), &f.src_obj())? {
        if cat.is_identity(&cat.compose(&g, f)?)? && cat.is_identity(&cat.compose(f, &g)?)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_iso(cat: &Category, f: &Mor) -> Result<bool> {
    Ok(inverse(cat, f)?.is_some())
}

/// The unique `h` with `m ∘ h = f`, if it exists. `m` must be monic on
/// the declared probes, which makes the lift unique.
pub fn factor_through(cat: &Category, f: &Mor, m: &Mor, probes: &[Obj]) -> Result<Option<Mor>> {
    if !is_mono(cat, m, probes)? {
        return Err(Error::NotMonic(format!("{} fails the probe check", m.key)));
    }
    cat.lift(m, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::finset;
    use crate::key::Key;

    #[test]
    fn inclusion_is_mono_not_epi() {
        let c = Category::finset();
        let x = finset::obj([Key::Nat(1)]);
        let y = finset::obj([Key::Nat(1), Key::Nat(2)]);
        let m = finset::mor_from_pairs(&x, &y, [(Key::Nat(1), Key::Nat(1))]).unwrap();
        let probes = vec![finset::obj([]), finset::obj([Key::Unit]), y.clone()];
        let cls = morphism_class(&c, &m, &probes).unwrap();
        assert!(cls.mono && !cls.epi && !cls.iso);
    }

    #[test]
    fn surjection_is_epi_not_mono() {
        let c = Category::finset();
        let x = finset::obj([Key::Nat(1), Key::Nat(2)]);
        let y = finset::obj([Key::sym("a")]);
        let f = finset::constant(&x, &y, &Key::sym("a")).unwrap();
        let probes = vec![finset::obj([Key::Unit]), x.clone(), y.clone()];
        let cls = morphism_class(&c, &f, &probes).unwrap();
        assert!(cls.epi && !cls.mono && !cls.iso);
    }

    #[test]
    fn identity_is_iso() {
        let c = Category::finset();
        let x = finset::obj([Key::Nat(1), Key::Nat(2)]);
        let id = c.identity(&x).unwrap();
        let probes = vec![x.clone()];
        let cls = morphism_class(&c, &id, &probes).unwrap();
        assert!(cls.mono && cls.epi && cls.iso);
    }

    #[test]
    fn factor_through_corestricts() {
        let c = Category::finset();
        let x = finset::obj([Key::Nat(1)]);
        let y = finset::obj([Key::Nat(1), Key::Nat(2)]);
        let z = finset::obj([Key::Nat(1), Key::Nat(2), Key::Nat(3)]);
        let m = finset::mor_from_pairs(
            &y,
            &z,
            [(Key::Nat(1), Key::Nat(1)), (Key::Nat(2), Key::Nat(2))],
        )
        .unwrap();
        let f = finset::mor_from_pairs(&x, &z, [(Key::Nat(1), Key::Nat(2))]).unwrap();
        let probes = vec![finset::obj([Key::Unit])];
        let h = factor_through(&c, &f, &m, &probes).unwrap().unwrap();
        assert_eq!(c.compose(&m, &h).unwrap().key, f.key);
        // a map hitting a point outside the image has no factorisation
        let g = finset::mor_from_pairs(&x, &z, [(Key::Nat(1), Key::Nat(3))]).unwrap();
        assert!(factor_through(&c, &g, &m, &probes).unwrap().is_none());
    }
}
