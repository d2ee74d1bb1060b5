//! Pretopos axiom audits and the colimit constructions they rest on:
//! effective epimorphisms, image factorization, equivalence-relation
//! generation by monotone saturation, and coequalizers of arbitrary
//! pairs.

use crate::cat::{Category, Mor, Obj};
use crate::classify;
use crate::error::{Error, Result};
use crate::groupoids::{self, KanOutcome, TruncatedSimplicial};
use crate::limits::{self, PullbackSq};
use crate::report::{AuditReport, Verdict};
use crate::key::Key;

/// A relation on `x`: an object anchored over the chosen product x × x.
#[derive(Clone, Debug)]
pub struct RelationOver {
    pub x: Obj,
    pub a: Obj,
    pub anchor: Mor,
}

impl RelationOver {
    pub fn new(cat: &Category, x: Obj, a: Obj, anchor: Mor) -> Result<RelationOver> {
        let prod = limits::binary_product(cat, &x, &x)?;
        if anchor.src != a.key || anchor.tgt != prod.apex.key {
            return Err(Error::Malformed(
                "relation anchor must target the chosen product of its base".into(),
            ));
        }
        Ok(RelationOver { x, a, anchor })
    }

    /// Anchor postcomposed with the swap of the product factors.
    pub fn opposite(&self, cat: &Category) -> Result<RelationOver> {
        let prod = limits::binary_product(cat, &self.x, &self.x)?;
        let swap = limits::pair_into(cat, &prod, &prod.p2, &prod.p1)?;
        Ok(RelationOver {
            x: self.x.clone(),
            a: self.a.clone(),
            anchor: cat.compose(&swap, &self.anchor)?,
        })
    }
}

/// Relation on a finite set given by an explicit pair list; the relation
/// object's elements are the pairs themselves.
pub fn finset_relation_over(
    cat: &Category,
    x: &Obj,
    pairs: &[(Key, Key)],
) -> Result<RelationOver> {
    let prod = limits::binary_product(cat, x, x)?;
    let elems: Vec<Key> = pairs
        .iter()
        .map(|(a, b)| Key::pair(a.clone(), b.clone()))
        .collect();
    let a = crate::cat::finset::obj(elems);
    let anchor = crate::cat::finset::mor_from_pairs(
        &a,
        &prod.apex,
        crate::cat::finset::elems(&a)?
            .iter()
            .map(|e| (e.clone(), e.clone())),
    )?;
    RelationOver::new(cat, x.clone(), a, anchor)
}

/// `p` is an effective epimorphism iff its target, with `p`, coequalizes
/// the kernel pair: every coequalizing probe map factors exactly once.
pub fn is_effective_epi(cat: &Category, p: &Mor, probes: &[Obj]) -> Result<bool> {
    let kp = limits::chosen_pullback(cat, p, p)?;
    for probe in probes {
        for q in cat.hom(&p.src_obj(), probe)? {
            if cat.compose(&q, &kp.p1)?.key != cat.compose(&q, &kp.p2)?.key {
                continue;
            }
            let mut count = 0;
            for u in cat.hom(&p.tgt_obj(), probe)? {
                if cat.compose(&u, p)?.key == q.key {
                    count += 1;
                }
            }
            if count != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernel-pair groupoid of a morphism: the fiber product of `f` with
/// itself, anchored by its projections, with the diagonal degeneracy.
pub fn kernel_pair_groupoid(cat: &Category, f: &Mor) -> Result<TruncatedSimplicial> {
    let sq = limits::chosen_pullback(cat, f, f)?;
    let id = cat.identity(&f.src_obj())?;
    let diagonal = limits::pb_mediator(cat, &sq, &id, &id)?;
    TruncatedSimplicial::new(
        cat.clone(),
        f.src_obj(),
        sq.apex.clone(),
        sq.p1.clone(),
        sq.p2.clone(),
        diagonal,
    )
}

/// Factorization of `f` as an effective epimorphism (the quotient of the
/// kernel pair) followed by a monomorphism, both classified over probes.
pub struct ImageFactorization {
    pub epi: Mor,
    pub mono: Mor,
    pub image: Obj,
}

pub fn image_factorization(cat: &Category, f: &Mor, probes: &[Obj]) -> Result<ImageFactorization> {
    let gp = kernel_pair_groupoid(cat, f)?;
    let (image, epi) = groupoids::quotient(&gp)?;
    let mono = groupoids::quotient_factor(&gp, &epi, f)?;
    if !is_effective_epi(cat, &epi, probes)? {
        return Err(Error::BadCertificate("quotient projection is not an effective epi".into()));
    }
    if !classify::is_mono(cat, &mono, probes)? {
        return Err(Error::BadCertificate("induced comparison is not monic".into()));
    }
    Ok(ImageFactorization { epi, mono, image })
}

/// The monic part of the image of `f`: finite sets take the direct
/// image, other kinds run the kernel-pair construction.
pub fn image_of(cat: &Category, f: &Mor, probes: &[Obj]) -> Result<Mor> {
    match cat.kind() {
        crate::cat::CatKind::FinSet => {
            let (_, _, mono) = crate::cat::finset::image(f)?;
            Ok(mono)
        }
        _ => Ok(image_factorization(cat, f, probes)?.mono),
    }
}

/// The subobject of x × x generated by a relation: the least equivalence
/// relation containing it, computed as the saturation fixed point of
/// reflexivity, symmetry and one-step composition, taking images at each
/// step. Terminates within the height of the finite subobject lattice.
pub fn equivalence_closure(
    cat: &Category,
    rel: &RelationOver,
    probes: &[Obj],
) -> Result<TruncatedSimplicial> {
    let prod = limits::binary_product(cat, &rel.x, &rel.x)?;
    let id = cat.identity(&rel.x)?;
    let diagonal = limits::pb_mediator(cat, &prod, &id, &id)?;
    // current subobject: starts at the image of Δ ⊔ A ⊔ A^op
    let bound = saturation_bound(cat, &rel.x)?;
    let mut current: Mor = {
        let start = triple_union(cat, rel, &diagonal)?;
        image_of(cat, &start, probes)?
    };
    for _ in 0..bound {
        let (sq_comp, step) = one_step(cat, rel, &prod, &current)?;
        let _ = sq_comp;
        let next = image_of(cat, &step, probes)?;
        if subobject_equal(cat, &current, &next, probes)? {
            // fixed point: assemble the groupoid on the saturated relation
            let s_anchor = current.clone();
            let a1 = s_anchor.src_obj();
            let d0 = cat.compose(&prod.p1, &s_anchor)?;
            let d1 = cat.compose(&prod.p2, &s_anchor)?;
            let diag_lift = cat.lift(&s_anchor, &diagonal)?.ok_or_else(|| {
                Error::BadCertificate("saturated relation lost the diagonal".into())
            })?;
            let ts = TruncatedSimplicial::new(cat.clone(), rel.x.clone(), a1, d0, d1, diag_lift)?;
            if !ts.is_equivalence_groupoid()? {
                return Err(Error::BadCertificate(
                    "saturation fixed point is not an equivalence groupoid".into(),
                ));
            }
            return Ok(ts);
        }
        current = next;
    }
    Err(Error::SaturationBound { bound })
}

fn saturation_bound(cat: &Category, x: &Obj) -> Result<usize> {
    match cat.kind() {
        crate::cat::CatKind::FinSet => {
            let n = crate::cat::finset::elems(x)?.len();
            Ok(n * n + 2)
        }
        _ => {
            // subobject classes are bounded by the morphism count into x²
            let prod = limits::binary_product(cat, x, x)?;
            let mut total = 0usize;
            if let Some(objs) = cat.objects() {
                for o in &objs {
                    total += cat.hom(o, &prod.apex)?.len();
                }
            }
            Ok(total.max(4))
        }
    }
}

/// Canonical map Δ ⊔ A ⊔ A^op → x × x.
fn triple_union(cat: &Category, rel: &RelationOver, diagonal: &Mor) -> Result<Mor> {
    let op = rel.opposite(cat)?;
    let c = limits::chosen_coproduct(cat, &[rel.x.clone(), rel.a.clone(), rel.a.clone()])?;
    limits::cop_mediator(
        cat,
        &c,
        &[diagonal.clone(), rel.anchor.clone(), op.anchor],
    )
}

/// One saturation step: Δ ⊔ S ⊔ S^op ⊔ (S ⊗ S) mapped into x × x, where
/// the composite pairs pull back the second leg against the first.
fn one_step(
    cat: &Category,
    rel: &RelationOver,
    prod: &PullbackSq,
    current: &Mor,
) -> Result<(PullbackSq, Mor)> {
    let x = &rel.x;
    let id = cat.identity(x)?;
    let diagonal = limits::pb_mediator(cat, prod, &id, &id)?;
    let s_rel = RelationOver {
        x: x.clone(),
        a: current.src_obj(),
        anchor: current.clone(),
    };
    let s_op = s_rel.opposite(cat)?;
    let d1 = cat.compose(&prod.p2, current)?;
    let d0 = cat.compose(&prod.p1, current)?;
    // composable pairs: target of the first matches source of the second
    let sq = limits::chosen_pullback(cat, &d1, &d0)?;
    let comp_anchor = limits::pair_into(
        cat,
        prod,
        &cat.compose(&d0, &sq.p1)?,
        &cat.compose(&d1, &sq.p2)?,
    )?;
    let c = limits::chosen_coproduct(
        cat,
        &[
            x.clone(),
            current.src_obj(),
            current.src_obj(),
            sq.apex.clone(),
        ],
    )?;
    let total = limits::cop_mediator(
        cat,
        &c,
        &[diagonal, s_rel.anchor, s_op.anchor, comp_anchor],
    )?;
    Ok((sq, total))
}

/// Two monos into the same object present the same subobject iff each
/// factors through the other.
pub fn subobject_equal(cat: &Category, m1: &Mor, m2: &Mor, _probes: &[Obj]) -> Result<bool> {
    Ok(cat.lift(m2, m1)?.is_some() && cat.lift(m1, m2)?.is_some())
}

/// Coequalizer of an arbitrary pair: quotient of the equivalence closure
/// of the relation anchored by `⟨f, g⟩`.
pub fn coequalizer_pair(
    cat: &Category,
    f: &Mor,
    g: &Mor,
    probes: &[Obj],
) -> Result<(Obj, Mor)> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(Error::Precondition("coequalizer requires a parallel pair".into()));
    }
    let x = f.tgt_obj();
    let prod = limits::binary_product(cat, &x, &x)?;
    let anchor = limits::pair_into(cat, &prod, f, g)?;
    let rel = RelationOver {
        x: x.clone(),
        a: f.src_obj(),
        anchor,
    };
    let closure = equivalence_closure(cat, &rel, probes)?;
    let (q, proj) = groupoids::quotient(&closure)?;
    // certify the couniversal property on the probes
    for p in probes {
        for u in cat.hom(&x, p)? {
            if cat.compose(&u, f)?.key != cat.compose(&u, g)?.key {
                continue;
            }
            let mut count = 0;
            for m in cat.hom(&Obj::new(q.key.clone()), p)? {
                if cat.compose(&m, &proj)?.key == u.key {
                    count += 1;
                }
            }
            if count != 1 {
                return Err(Error::BadCertificate(format!(
                    "coequalizer candidate fails couniversality at probe {}",
                    p.key
                )));
            }
        }
    }
    Ok((q, proj))
}

/// Giraud-style audit grid: objects, equivalence groupoids and the
/// morphism family the "for all" clauses quantify over. With no explicit
/// morphism family, every morphism between grid objects is used.
#[derive(Clone, Debug)]
pub struct AuditGrid {
    pub objects: Vec<Obj>,
    pub groupoids: Vec<TruncatedSimplicial>,
    pub maps: Option<Vec<Mor>>,
}

impl AuditGrid {
    pub fn new(objects: Vec<Obj>, groupoids: Vec<TruncatedSimplicial>) -> AuditGrid {
        AuditGrid {
            objects,
            groupoids,
            maps: None,
        }
    }

    fn maps_between(&self, cat: &Category, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        match &self.maps {
            Some(ms) => Ok(ms
                .iter()
                .filter(|m| m.src == x.key && m.tgt == y.key)
                .cloned()
                .collect()),
            None => cat.hom(x, y),
        }
    }
}

/// Exhaustive finite-set grid: the canonical sets of size 0..=n and all
/// equivalence-relation groupoids on them.
pub fn finset_grid(max_size: u64) -> Result<AuditGrid> {
    let mut objects = Vec::new();
    let mut groupoids = Vec::new();
    for n in 0..=max_size {
        let elems: Vec<Key> = (0..n).map(Key::Nat).collect();
        objects.push(crate::cat::finset::obj(elems.clone()));
        for partition in partitions(&elems) {
            let mut pairs = Vec::new();
            for block in &partition {
                for a in block {
                    for b in block {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
            }
            groupoids.push(crate::groupoids::finset_relation_groupoid(
                elems.clone(),
                &pairs,
            )?);
        }
    }
    Ok(AuditGrid::new(objects, groupoids))
}

/// All set partitions, in a deterministic refinement order.
pub fn partitions(elems: &[Key]) -> Vec<Vec<Vec<Key>>> {
    if elems.is_empty() {
        return vec![vec![]];
    }
    let (first, rest) = (elems[0].clone(), &elems[1..]);
    let mut out = Vec::new();
    for sub in partitions(rest) {
        // insert the first element into each existing block, or alone
        for k in 0..sub.len() {
            let mut copy = sub.clone();
            copy[k].insert(0, first.clone());
            out.push(copy);
        }
        let mut alone = vec![vec![first.clone()]];
        alone.extend(sub);
        out.push(alone);
    }
    out
}

/// Audits, per grid instance: (a) equivalence groupoids are effective,
/// (b) effective epimorphisms are stable under pullback, (c) coequalizers
/// of equivalence groupoids are universal; then cross-checks that the
/// verdict of (a)+(b) matches (a)+(c).
pub fn audit_giraud(cat: &Category, grid: &AuditGrid) -> Result<AuditReport> {
    audit_giraud_as(cat, grid, "giraud")
}

pub fn audit_giraud_as(cat: &Category, grid: &AuditGrid, suite: &str) -> Result<AuditReport> {
    let mut report = AuditReport::new();
    if !cat.has_quotients() {
        report.push(
            suite,
            cat.name(),
            "preconditions",
            Verdict::Skipped("quotients unavailable".into()),
        );
        return Ok(report);
    }
    let probes = &grid.objects;
    // (a) effectivity of equivalence groupoids
    let mut all_a = true;
    for (i, g) in grid.groupoids.iter().enumerate() {
        let verdict = effectivity_verdict(cat, g, probes)?;
        if verdict != Verdict::Pass {
            all_a = false;
        }
        report.push(suite, format!("groupoid-{i}"), "equivalence-groupoids-effective", verdict);
    }
    // (b) stability of effective epis under pullback along grid maps
    let mut all_b = true;
    let mut epis = Vec::new();
    for x in &grid.objects {
        for y in &grid.objects {
            for p in grid.maps_between(cat, x, y)? {
                if is_effective_epi(cat, &p, probes)? {
                    epis.push(p);
                }
            }
        }
    }
    for (pi, p) in epis.iter().enumerate() {
        for z in &grid.objects {
            for h in grid.maps_between(cat, z, &p.tgt_obj())? {
                let sq = match limits::chosen_pullback(cat, p, &h) {
                    Ok(sq) => sq,
                    Err(e) => {
                        report.push(
                            suite,
                            format!("epi-{pi}-along-{}", h.key),
                            "effective-epis-stable",
                            Verdict::Skipped(format!("{e}")),
                        );
                        continue;
                    }
                };
                let verdict = if is_effective_epi(cat, &sq.p2, probes)? {
                    Verdict::Pass
                } else {
                    all_b = false;
                    Verdict::Fail(format!("pullback of {} along {} is not effective", p.key, h.key))
                };
                report.push(
                    suite,
                    format!("epi-{pi}-along-{}", h.key),
                    "effective-epis-stable",
                    verdict,
                );
            }
        }
    }
    // (c) universality of groupoid coequalizers
    let mut all_c = true;
    for (i, g) in grid.groupoids.iter().enumerate() {
        for z in &grid.objects {
            for u in grid.maps_between(cat, &g.a0, z)? {
                if cat.compose(&u, &g.d0)?.key != cat.compose(&u, &g.d1)?.key {
                    continue;
                }
                for y in &grid.objects {
                    for v in grid.maps_between(cat, y, z)? {
                        let verdict = universality_verdict(cat, g, &u, &v)?;
                        if matches!(verdict, Verdict::Fail(_)) {
                            all_c = false;
                        }
                        report.push(
                            suite,
                            format!("groupoid-{i}->{}<-{}", z.key, y.key),
                            "groupoid-coequalizers-universal",
                            verdict,
                        );
                    }
                }
            }
        }
    }
    let cross = (all_a && all_b) == (all_a && all_c);
    report.push(
        suite,
        cat.name(),
        "cross-check-b-equiv-c",
        if cross {
            Verdict::Pass
        } else {
            Verdict::Fail(format!("(a)+(b) = {} but (a)+(c) = {}", all_a && all_b, all_a && all_c))
        },
    );
    Ok(report)
}

fn effectivity_verdict(
    cat: &Category,
    g: &TruncatedSimplicial,
    probes: &[Obj],
) -> Result<Verdict> {
    if !g.is_equivalence_groupoid()? {
        return Ok(Verdict::Skipped("grid instance is not an equivalence groupoid".into()));
    }
    let (q, proj) = match groupoids::quotient(g) {
        Ok(r) => r,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    let _ = q;
    let kp = match limits::chosen_pullback(cat, &proj, &proj) {
        Ok(sq) => sq,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    // comparison A1 -> A0 ×_{A0/A1} A0
    let comparison = limits::pb_mediator(cat, &kp, &g.d0, &g.d1)?;
    let _ = probes;
    if classify::is_iso(cat, &comparison)? {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail(format!(
            "kernel-pair comparison {} is not invertible",
            comparison.key
        )))
    }
}

fn universality_verdict(
    cat: &Category,
    g: &TruncatedSimplicial,
    u: &Mor,
    v: &Mor,
) -> Result<Verdict> {
    // pulled-back groupoid: X1 ×_Z Y ⇉ X0 ×_Z Y
    let u1 = cat.compose(u, &g.d0)?;
    let sq0 = match limits::chosen_pullback(cat, u, v) {
        Ok(s) => s,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    let sq1 = match limits::chosen_pullback(cat, &u1, v) {
        Ok(s) => s,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    let f0 = limits::pb_mediator(
        cat,
        &sq0,
        &cat.compose(&g.d0, &sq1.p1)?,
        &sq1.p2.clone(),
    )?;
    let f1 = limits::pb_mediator(
        cat,
        &sq0,
        &cat.compose(&g.d1, &sq1.p1)?,
        &sq1.p2.clone(),
    )?;
    let s_new = limits::pb_mediator(
        cat,
        &sq1,
        &cat.compose(&g.s, &sq0.p1)?,
        &sq0.p2.clone(),
    )?;
    let pulled = TruncatedSimplicial::new(
        cat.clone(),
        sq0.apex.clone(),
        sq1.apex.clone(),
        f0,
        f1,
        s_new,
    )?;
    if let KanOutcome::Fails { horn } = pulled.check_kan()? {
        return Ok(Verdict::Skipped(format!("pulled-back groupoid is not Kan at horn {horn}")));
    }
    let (_, proj_pulled) = match groupoids::quotient(&pulled) {
        Ok(r) => r,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    // comparison coeq(X1 ×_Z Y ⇉ X0 ×_Z Y) -> (X0/X1) ×_Z Y
    let (_, proj) = match groupoids::quotient(g) {
        Ok(r) => r,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    let u_bar = groupoids::quotient_factor(g, &proj, u)?;
    let big = match limits::chosen_pullback(cat, &u_bar, v) {
        Ok(s) => s,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    let into_big = limits::pb_mediator(
        cat,
        &big,
        &cat.compose(&proj, &sq0.p1)?,
        &sq0.p2.clone(),
    )?;
    let comparison = groupoids::quotient_factor(&pulled, &proj_pulled, &into_big)?;
    if classify::is_iso(cat, &comparison)? {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail(format!(
            "universality comparison {} is not invertible",
            comparison.key
        )))
    }
}

/// Runs the Giraud audit plus the extensivity audit: the four clauses of
/// the infinitary-pretopos definition, reported separately. A map cap
/// bounds the extensivity quantifiers by evenly-spaced selection.
pub fn audit_pretopos(
    cat: &Category,
    grid: &AuditGrid,
    map_cap: Option<usize>,
) -> Result<AuditReport> {
    let mut report = audit_giraud_as(cat, grid, "pretopos")?;
    report.merge(crate::sums::check_extensivity_capped(
        cat,
        &grid.objects,
        "pretopos",
        map_cap,
    )?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::finset;
    use crate::cat::tabulated::preorder_category;

    fn nset(n: u64) -> Obj {
        finset::obj((0..n).map(Key::Nat))
    }

    fn finset_probes() -> Vec<Obj> {
        vec![nset(0), nset(1), nset(2), nset(3)]
    }

    #[test]
    fn effective_epis_are_surjections() {
        let c = Category::finset();
        let probes = finset_probes();
        let x = nset(3);
        let y = finset::obj([Key::sym("a"), Key::sym("b")]);
        let surj = finset::mor_from_pairs(
            &x,
            &y,
            [
                (Key::Nat(0), Key::sym("a")),
                (Key::Nat(1), Key::sym("a")),
                (Key::Nat(2), Key::sym("b")),
            ],
        )
        .unwrap();
        assert!(is_effective_epi(&c, &surj, &probes).unwrap());
        let non_surj = finset::constant(&x, &y, &Key::sym("a")).unwrap();
        assert!(!is_effective_epi(&c, &non_surj, &probes).unwrap());
        assert!(is_effective_epi(&c, &c.identity(&x).unwrap(), &probes).unwrap());
    }

    #[test]
    fn image_factorization_matches_set_image() {
        let c = Category::finset();
        let probes = finset_probes();
        let x = nset(3);
        let y = finset::obj([Key::sym("a"), Key::sym("b"), Key::sym("c")]);
        let f = finset::mor_from_pairs(
            &x,
            &y,
            [
                (Key::Nat(0), Key::sym("a")),
                (Key::Nat(1), Key::sym("a")),
                (Key::Nat(2), Key::sym("b")),
            ],
        )
        .unwrap();
        let fac = image_factorization(&c, &f, &probes).unwrap();
        assert_eq!(finset::elems(&fac.image).unwrap().len(), 2);
        assert_eq!(c.compose(&fac.mono, &fac.epi).unwrap().key, f.key);
        // image elements map bijectively onto {a, b}
        let image_vals: Vec<Key> = finset::elems(&fac.image)
            .unwrap()
            .iter()
            .map(|e| finset::apply(&fac.mono, e).unwrap())
            .collect();
        assert!(image_vals.contains(&Key::sym("a")) && image_vals.contains(&Key::sym("b")));
        // mono input: the epi part is invertible
        let m = finset::mor_from_pairs(
            &finset::obj([Key::Nat(0)]),
            &y,
            [(Key::Nat(0), Key::sym("c"))],
        )
        .unwrap();
        let fac_m = image_factorization(&c, &m, &probes).unwrap();
        assert!(crate::classify::is_iso(&c, &fac_m.epi).unwrap());
        // effective-epi input: the mono part is invertible
        let e = finset::constant(&nset(2), &nset(1), &Key::Nat(0)).unwrap();
        let fac_e = image_factorization(&c, &e, &probes).unwrap();
        assert!(crate::classify::is_iso(&c, &fac_e.mono).unwrap());
    }

    /// Reflexive-symmetric-transitive closure oracle on explicit pairs.
    fn closure_oracle(n: u64, pairs: &[(u64, u64)]) -> std::collections::BTreeSet<(u64, u64)> {
        let mut rel: std::collections::BTreeSet<(u64, u64)> = pairs.iter().cloned().collect();
        for i in 0..n {
            rel.insert((i, i));
        }
        loop {
            let mut grew = false;
            let snapshot: Vec<(u64, u64)> = rel.iter().cloned().collect();
            for &(a, b) in &snapshot {
                if rel.insert((b, a)) {
                    grew = true;
                }
                for &(c, d) in &snapshot {
                    if b == c && rel.insert((a, d)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        rel
    }

    fn closure_pairs(c: &Category, x: &Obj, pairs: &[(u64, u64)]) -> Vec<(u64, u64)> {
        let rel = finset_relation_over(
            c,
            x,
            &pairs
                .iter()
                .map(|&(a, b)| (Key::Nat(a), Key::Nat(b)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let ts = equivalence_closure(c, &rel, &finset_probes()).unwrap();
        finset::elems(&ts.a1)
            .unwrap()
            .iter()
            .map(|e| {
                // saturated edges are image elements keyed by the pair
                let p = e.as_seq().unwrap();
                (p[0].as_nat().unwrap(), p[1].as_nat().unwrap())
            })
            .collect()
    }

    #[test]
    fn closure_agrees_with_oracle() {
        let c = Category::finset();
        let x = nset(3);
        // chain 0-1-2 closes to the full relation
        let got = closure_pairs(&c, &x, &[(0, 1), (1, 2)]);
        assert_eq!(got.len(), 9);
        // empty relation closes to the diagonal
        let got = closure_pairs(&c, &x, &[]);
        let oracle = closure_oracle(3, &[]);
        assert_eq!(got.iter().cloned().collect::<std::collections::BTreeSet<_>>(), oracle);
        // an equivalence relation is a fixed point
        let already = [(0, 1), (1, 0), (0, 0), (1, 1), (2, 2)];
        let got = closure_pairs(&c, &x, &already);
        assert_eq!(
            got.iter().cloned().collect::<std::collections::BTreeSet<_>>(),
            closure_oracle(3, &already)
        );
    }

    #[test]
    fn closure_exhaustive_on_three_elements() {
        let c = Category::finset();
        let x = nset(3);
        let all_pairs: Vec<(u64, u64)> =
            (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << 9) {
            let pairs: Vec<(u64, u64)> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p)
                .collect();
            let got: std::collections::BTreeSet<(u64, u64)> =
                closure_pairs(&c, &x, &pairs).into_iter().collect();
            assert_eq!(got, closure_oracle(3, &pairs), "mask {mask}");
        }
    }

    #[test]
    fn coequalizer_pair_follows_orbits() {
        let c = Category::finset();
        let probes = finset_probes();
        let x = nset(2);
        // f = g: the coequalizer is the target itself
        let f = finset::constant(&nset(1), &x, &Key::Nat(0)).unwrap();
        let (q, proj) = coequalizer_pair(&c, &f, &f, &probes).unwrap();
        assert_eq!(finset::elems(&Obj::new(q.key)).unwrap().len(), 2);
        assert!(crate::classify::is_iso(&c, &proj).unwrap());
        // picking out two points merges them
        let g = finset::constant(&nset(1), &x, &Key::Nat(1)).unwrap();
        let (q, _) = coequalizer_pair(&c, &f, &g, &probes).unwrap();
        assert_eq!(finset::elems(&Obj::new(q.key)).unwrap().len(), 1);
        // two parallel maps generating a 2-cycle: orbit count survives
        let a = nset(2);
        let x4 = nset(4);
        let f2 = finset::mor_from_pairs(
            &a,
            &x4,
            [(Key::Nat(0), Key::Nat(0)), (Key::Nat(1), Key::Nat(2))],
        )
        .unwrap();
        let g2 = finset::mor_from_pairs(
            &a,
            &x4,
            [(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(3))],
        )
        .unwrap();
        let (q, _) = coequalizer_pair(&c, &f2, &g2, &probes).unwrap();
        // orbits {0,1} and {2,3}
        assert_eq!(finset::elems(&Obj::new(q.key)).unwrap().len(), 2);
    }

    #[test]
    fn giraud_passes_on_small_finite_sets() {
        let c = Category::finset();
        let grid = finset_grid(2).unwrap();
        let report = audit_giraud(&c, &grid).unwrap();
        assert!(report.all_pass(), "{}", report.render());
    }

    #[test]
    fn giraud_skips_without_quotients() {
        let p = Category::finposet(
            crate::cat::finposet::PosetData::from_hasse(
                vec![Key::Nat(0), Key::Nat(1), Key::Nat(2)],
                &[(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(2))],
            )
            .unwrap(),
            "chain3",
        );
        let grid = AuditGrid::new(vec![Obj::new(Key::Nat(0))], vec![]);
        let report = audit_giraud(&p, &grid).unwrap();
        assert!(report.any_skip());
        assert!(!report.any_fail());
    }

    #[test]
    fn chain_lattice_fails_disjointness() {
        // tabulated 3-chain: joins exist, but 1 ×_{1∨1} 1 = 1 is not
        // initial, so coproducts are not disjoint
        let data = preorder_category(
            &[Key::Nat(0), Key::Nat(1), Key::Nat(2)],
            &[(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(2))],
        );
        let c = Category::tabulated(data, "chain3").unwrap();
        let objs: Vec<Obj> = c.objects().unwrap();
        let report = crate::sums::check_extensivity(&c, &objs, "extensivity").unwrap();
        assert!(report.any_fail());
        let disjoint_failures: Vec<_> = report
            .records
            .iter()
            .filter(|r| {
                r.clause == "coproducts-disjoint" && matches!(r.verdict, Verdict::Fail(_))
            })
            .collect();
        assert!(!disjoint_failures.is_empty());
    }

    #[test]
    fn nondistributive_lattice_fails_universality() {
        // M3: bottom, three incomparable atoms, top; meets/joins exist but
        // a ∧ (b ∨ c) = a while (a∧b) ∨ (a∧c) = ⊥
        let elems: Vec<Key> = ["bot", "a", "b", "c", "top"].iter().map(|s| Key::sym(*s)).collect();
        let hasse: Vec<(Key, Key)> = [
            ("bot", "a"),
            ("bot", "b"),
            ("bot", "c"),
            ("a", "top"),
            ("b", "top"),
            ("c", "top"),
        ]
        .iter()
        .map(|(x, y)| (Key::sym(*x), Key::sym(*y)))
        .collect();
        let data = preorder_category(&elems, &hasse);
        let c = Category::tabulated(data, "m3").unwrap();
        let objs = c.objects().unwrap();
        let report = crate::sums::check_extensivity(&c, &objs, "extensivity").unwrap();
        let universal_failures = report
            .records
            .iter()
            .filter(|r| r.clause == "coproducts-universal" && matches!(r.verdict, Verdict::Fail(_)))
            .count();
        assert!(universal_failures > 0);
    }

    #[test]
    fn pretopos_audit_passes_on_finite_sets() {
        let c = Category::finset();
        let grid = finset_grid(2).unwrap();
        let report = audit_pretopos(&c, &grid, Some(20)).unwrap();
        assert!(report.all_pass(), "{}", report.render());
        // all four clauses are present
        for clause in [
            "equivalence-groupoids-effective",
            "effective-epis-stable",
            "groupoid-coequalizers-universal",
            "coproducts-universal",
            "coproducts-disjoint",
        ] {
            assert!(report.records.iter().any(|r| r.clause == clause));
        }
    }

    #[test]
    fn iso_iff_mono_and_effective_epi() {
        let c = Category::finset();
        let probes = finset_probes();
        let x = nset(2);
        for f in c.hom(&x, &x).unwrap() {
            let cls = crate::classify::morphism_class(&c, &f, &probes).unwrap();
            let eff = is_effective_epi(&c, &f, &probes).unwrap();
            assert_eq!(cls.iso, cls.mono && eff);
        }
    }
}
