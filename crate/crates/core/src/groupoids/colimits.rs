//! Coequalizers of internal equivalence groupoids and quotients of
//! 2-groupoids in their carrier.

use crate::cat::{CatKind, Category, Mor, Obj};
use crate::error::{Error, Result};
use crate::limits::{self, Diagram};

use super::{
    e2, homotopy_witness, is_two_morphism, kan_compose, kan_invert, HomotopyClass, KanOutcome,
    KanWitness, TruncatedSimplicial, TwoGroupoidMorphism,
};

/// An internal equivalence groupoid `B ⇉ A` in the homotopy category:
/// level objects are 2-groupoids, faces and degeneracy are level pairs
/// whose simplicial identities hold up to homotopy.
#[derive(Clone, Debug)]
pub struct InternalGroupoid {
    pub a: TruncatedSimplicial,
    pub b: TruncatedSimplicial,
    pub delta0: TwoGroupoidMorphism,
    pub delta1: TwoGroupoidMorphism,
    pub sigma: TwoGroupoidMorphism,
}

impl InternalGroupoid {
    pub fn new(
        a: TruncatedSimplicial,
        b: TruncatedSimplicial,
        delta0: TwoGroupoidMorphism,
        delta1: TwoGroupoidMorphism,
        sigma: TwoGroupoidMorphism,
    ) -> Result<InternalGroupoid> {
        for (m, src, tgt) in [(&delta0, &b, &a), (&delta1, &b, &a), (&sigma, &a, &b)] {
            if !is_two_morphism(src, tgt, m)? {
                return Err(Error::Malformed(
                    "internal groupoid structure map violates the face square".into(),
                ));
            }
        }
        Ok(InternalGroupoid {
            a,
            b,
            delta0,
            delta1,
            sigma,
        })
    }

    /// Decodes an object of an `e2-over` category (a truncated simplicial
    /// object whose levels are themselves 2-groupoids) into its internal
    /// groupoid data over the inner carrier.
    pub fn from_e2_object(inner: &Category, ts: &TruncatedSimplicial) -> Result<InternalGroupoid> {
        let a = TruncatedSimplicial::from_key(inner, &ts.a0.key)?;
        let b = TruncatedSimplicial::from_key(inner, &ts.a1.key)?;
        InternalGroupoid::new(
            a,
            b,
            e2::decode_class_rep(inner, &ts.d0)?,
            e2::decode_class_rep(inner, &ts.d1)?,
            e2::decode_class_rep(inner, &ts.s)?,
        )
    }
}

struct SectionWitnesses {
    /// h0 : A0 → A1 with d0∘h0 = id and d1∘h0 = δ0₀∘σ0
    h0: Mor,
    /// h1 : A0 → A1 with d0∘h1 = δ1₀∘σ0 and d1∘h1 = id
    h1: Mor,
    kan_a: KanWitness,
}

fn section_witnesses(ig: &InternalGroupoid) -> Result<SectionWitnesses> {
    let c = &ig.a.carrier;
    let kan_a = match ig.a.check_kan()? {
        KanOutcome::Witness(w) => w,
        KanOutcome::Fails { horn } => {
            return Err(Error::Precondition(format!(
                "level object is not Kan: horn {horn}"
            )))
        }
    };
    let id0 = c.identity(&ig.a.a0)?;
    let d0s = c.compose(&ig.delta0.f0, &ig.sigma.f0)?;
    let d1s = c.compose(&ig.delta1.f0, &ig.sigma.f0)?;
    let h0 = match homotopy_witness(&ig.a, &id0, &d0s)? {
        Some(h) => h,
        None => match homotopy_witness(&ig.a, &d0s, &id0)? {
            Some(w) => kan_invert(&ig.a, &kan_a, &w)?,
            None => {
                return Err(Error::Precondition(
                    "degeneracy is not a homotopy section of the first face".into(),
                ))
            }
        },
    };
    let h1 = match homotopy_witness(&ig.a, &d1s, &id0)? {
        Some(h) => h,
        None => match homotopy_witness(&ig.a, &id0, &d1s)? {
            Some(w) => kan_invert(&ig.a, &kan_a, &w)?,
            None => {
                return Err(Error::Precondition(
                    "degeneracy is not a homotopy section of the second face".into(),
                ))
            }
        },
    };
    Ok(SectionWitnesses { h0, h1, kan_a })
}

fn coeq_level1(ig: &InternalGroupoid) -> Result<(Diagram, crate::limits::LimitCone)> {
    let c = &ig.a.carrier;
    // (r, b, r') with r into δ0(b) and r' out of δ1(b)
    let diag = Diagram {
        nodes: vec![
            ig.a.a1.clone(),
            ig.b.a0.clone(),
            ig.a.a1.clone(),
            ig.a.a0.clone(),
            ig.a.a0.clone(),
        ],
        arrows: vec![
            (0, 3, ig.a.d1.clone()),
            (1, 3, ig.delta0.f0.clone()),
            (1, 4, ig.delta1.f0.clone()),
            (2, 4, ig.a.d0.clone()),
        ],
    };
    let lim = limits::finite_limit(c, &diag)?;
    Ok((diag, lim))
}

/// Exhibits the three level-0 horn factorisations that witness the Kan
/// property of the internal groupoid; reports the first missing one.
pub fn internal_kan_check(ig: &InternalGroupoid) -> Result<()> {
    let c = &ig.a.carrier;
    let (_, lim1) = coeq_level1(ig)?;
    let dc0 = c.compose(&ig.a.d0, &lim1.legs[0])?;
    let dc1 = c.compose(&ig.a.d1, &lim1.legs[2])?;
    let prod = limits::binary_product(c, &ig.a.a0, &ig.a.a0)?;
    let anchor_cd = limits::pair_into(c, &prod, &dc0, &dc1)?;
    // horn domains: pairs of B-points joined by an A-edge in each of the
    // three endpoint configurations
    let configs: [(usize, Mor, Mor, Mor, Mor); 3] = [
        (
            0,
            ig.delta0.f0.clone(),
            ig.delta0.f0.clone(),
            ig.delta1.f0.clone(),
            ig.delta1.f0.clone(),
        ),
        (
            1,
            ig.delta1.f0.clone(),
            ig.delta0.f0.clone(),
            ig.delta0.f0.clone(),
            ig.delta1.f0.clone(),
        ),
        (
            2,
            ig.delta1.f0.clone(),
            ig.delta1.f0.clone(),
            ig.delta0.f0.clone(),
            ig.delta0.f0.clone(),
        ),
    ];
    for (horn, left_face, right_face, out_left, out_right) in configs {
        let diag = Diagram {
            nodes: vec![
                ig.b.a0.clone(),
                ig.a.a1.clone(),
                ig.b.a0.clone(),
                ig.a.a0.clone(),
                ig.a.a0.clone(),
            ],
            arrows: vec![
                (0, 3, left_face.clone()),
                (1, 3, ig.a.d0.clone()),
                (1, 4, ig.a.d1.clone()),
                (2, 4, right_face.clone()),
            ],
        };
        let lim = limits::finite_limit(c, &diag)?;
        let target = limits::pair_into(
            c,
            &prod,
            &c.compose(&out_left, &lim.legs[0])?,
            &c.compose(&out_right, &lim.legs[2])?,
        )?;
        if c.lift(&anchor_cd, &target)?.is_none() {
            return Err(Error::NotInternalGroupoid { horn });
        }
    }
    Ok(())
}

/// Coequalizer of an internal equivalence groupoid in the homotopy
/// category: the quotient 2-groupoid together with the projection class,
/// whose level-0 component is the identity.
pub fn coequalizer_c(ig: &InternalGroupoid) -> Result<(TruncatedSimplicial, HomotopyClass)> {
    let c = &ig.a.carrier;
    if let KanOutcome::Fails { horn } = ig.b.check_kan()? {
        return Err(Error::Precondition(format!(
            "relation object is not Kan: horn {horn}"
        )));
    }
    let w = section_witnesses(ig)?;
    internal_kan_check(ig)?;
    let (diag1, lim1) = coeq_level1(ig)?;
    let dc0 = c.compose(&ig.a.d0, &lim1.legs[0])?;
    let dc1 = c.compose(&ig.a.d1, &lim1.legs[2])?;
    let d0s0 = c.compose(&ig.delta0.f0, &ig.sigma.f0)?;
    let d1s0 = c.compose(&ig.delta1.f0, &ig.sigma.f0)?;
    let s_cone = [
        w.h0.clone(),
        ig.sigma.f0.clone(),
        w.h1.clone(),
        d0s0.clone(),
        d1s0.clone(),
    ];
    let s_c = limits::limit_mediator(c, &diag1, &s_cone, &lim1)?;
    let cd = TruncatedSimplicial::new(
        c.clone(),
        ig.a.a0.clone(),
        lim1.apex.clone(),
        dc0,
        dc1,
        s_c,
    )?;
    if let KanOutcome::Fails { horn } = cd.check_kan()? {
        return Err(Error::BadCertificate(format!(
            "coequalizer object fails the Kan condition at horn {horn}"
        )));
    }
    // projection: identity at level 0; edges route through the degeneracy
    let id1 = c.identity(&ig.a.a1)?;
    let composite_edge = kan_compose(
        &ig.a,
        &w.kan_a,
        &c.compose(&w.h1, &ig.a.d0)?,
        &id1,
    )?;
    let pi_cone = [
        c.compose(&w.h0, &ig.a.d0)?,
        c.compose(&ig.sigma.f0, &ig.a.d0)?,
        composite_edge,
        c.compose(&d0s0, &ig.a.d0)?,
        c.compose(&d1s0, &ig.a.d0)?,
    ];
    let pi1 = limits::limit_mediator(c, &diag1, &pi_cone, &lim1)?;
    let rep = TwoGroupoidMorphism {
        f0: c.identity(&ig.a.a0)?,
        f1: pi1,
    };
    let class = HomotopyClass::canonical(&ig.a, &cd, &rep)?;
    Ok((cd, class))
}

/// Quotient of a 2-groupoid in its carrier: the coequalizer of the two
/// faces, with the canonical projection.
pub fn quotient(ts: &TruncatedSimplicial) -> Result<(Obj, Mor)> {
    match ts.carrier.kind() {
        CatKind::FinSet => {
            let elems1 = crate::cat::finset::elems(&ts.a1)?.to_vec();
            let related = elems1
                .iter()
                .map(|r| {
                    Ok((
                        crate::cat::finset::apply(&ts.d0, r)?,
                        crate::cat::finset::apply(&ts.d1, r)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            crate::cat::finset::partition_quotient(&ts.a0, &related)
        }
        CatKind::Tabulated(_) => quotient_by_search(ts),
        CatKind::E2(inner) => {
            let ig = InternalGroupoid::from_e2_object(inner, ts)?;
            let (cd, class) = coequalizer_c(&ig)?;
            Ok((cd.to_obj(), class.to_mor()))
        }
        CatKind::Psh(base) => crate::presheaves::quotient_groupoid(base, ts),
        _ => Err(Error::NoCoequalizer(format!(
            "{} kind declares no quotients",
            ts.carrier.kind_tag()
        ))),
    }
}

fn quotient_by_search(ts: &TruncatedSimplicial) -> Result<(Obj, Mor)> {
    let c = &ts.carrier;
    let objects = c
        .objects()
        .ok_or_else(|| Error::Precondition("search needs enumerable objects".into()))?;
    for cand in &objects {
        for proj in c.hom(&ts.a0, cand)? {
            if c.compose(&proj, &ts.d0)?.key != c.compose(&proj, &ts.d1)?.key {
                continue;
            }
            let mut universal = true;
            'probe: for p in &objects {
                for u in c.hom(&ts.a0, p)? {
                    if c.compose(&u, &ts.d0)?.key != c.compose(&u, &ts.d1)?.key {
                        continue;
                    }
                    let mut count = 0;
                    for m in c.hom(cand, p)? {
                        if c.compose(&m, &proj)?.key == u.key {
                            count += 1;
                        }
                    }
                    if count != 1 {
                        universal = false;
                        break 'probe;
                    }
                }
            }
            if universal {
                return Ok((cand.clone(), proj));
            }
        }
    }
    Err(Error::NoCoequalizer("tabulated search exhausted".into()))
}

/// The unique factorisation of a coequalizing morphism through the
/// quotient projection.
pub fn quotient_factor(ts: &TruncatedSimplicial, proj: &Mor, u: &Mor) -> Result<Mor> {
    let c = &ts.carrier;
    if c.compose(u, &ts.d0)?.key != c.compose(u, &ts.d1)?.key {
        return Err(Error::Precondition("morphism does not coequalize the faces".into()));
    }
    match c.kind() {
        CatKind::FinSet => {
            let q = proj.tgt_obj();
            let reps = crate::cat::finset::elems(&q)?.to_vec();
            let pairs = reps
                .iter()
                .map(|r| Ok((r.clone(), crate::cat::finset::apply(u, r)?)))
                .collect::<Result<Vec<_>>>()?;
            crate::cat::finset::mor_from_pairs(&q, &u.tgt_obj(), pairs)
        }
        _ => {
            let mut found = None;
            for m in c.hom(&proj.tgt_obj(), &u.tgt_obj())? {
                if c.compose(&m, proj)?.key == u.key {
                    if found.is_some() {
                        return Err(Error::BadCertificate(
                            "two factorisations through a quotient projection".into(),
                        ));
                    }
                    found = Some(m);
                }
            }
            found.ok_or_else(|| {
                Error::BadCertificate("no factorisation through the quotient projection".into())
            })
        }
    }
}
