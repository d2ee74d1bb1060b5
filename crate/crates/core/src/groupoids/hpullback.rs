//! Finite limits of equivalence 2-groupoids: the two-level fiber formula
//! for the pullback of a cospan, with mediator construction from a
//! level-0 homotopy witness.


use crate::error::{Error, Result};
use crate::limits::{self, Diagram, LimitCone};

use super::{
    homotopy_witness, is_two_morphism, KanOutcome, TruncatedSimplicial, TwoGroupoidMorphism,
};

/// The pullback `A ×ʰ_D B`: level 0 fibers the cospan through a D-edge,
/// level 1 carries an A-edge, a B-edge and two D-edges connecting the
/// endpoint images.
#[derive(Clone, Debug)]
pub struct HPullback {
    pub a: TruncatedSimplicial,
    pub d: TruncatedSimplicial,
    pub b: TruncatedSimplicial,
    pub u: TwoGroupoidMorphism,
    pub v: TwoGroupoidMorphism,
    pub apex: TruncatedSimplicial,
    pub leg_a: TwoGroupoidMorphism,
    pub leg_b: TwoGroupoidMorphism,
    diag0: Diagram,
    lim0: LimitCone,
    diag1: Diagram,
    lim1: LimitCone,
}

/// Builds the pullback of the cospan `u : A → D ← B : v` from level-pair
/// representatives.
pub fn pullback_h(
    a: &TruncatedSimplicial,
    d: &TruncatedSimplicial,
    b: &TruncatedSimplicial,
    u: &TwoGroupoidMorphism,
    v: &TwoGroupoidMorphism,
) -> Result<HPullback> {
    let c = &a.carrier;
    if !is_two_morphism(a, d, u)? || !is_two_morphism(b, d, v)? {
        return Err(Error::Malformed("cospan legs violate the face square".into()));
    }
    // level 0: (x, w, y) with w an edge from u(x) to v(y)
    let diag0 = Diagram {
        nodes: vec![
            a.a0.clone(),
            d.a1.clone(),
            b.a0.clone(),
            d.a0.clone(),
            d.a0.clone(),
        ],
        arrows: vec![
            (0, 3, u.f0.clone()),
            (1, 3, d.d0.clone()),
            (1, 4, d.d1.clone()),
            (2, 4, v.f0.clone()),
        ],
    };
    let lim0 = limits::finite_limit(c, &diag0)?;
    // level 1: (r, w, w', t) with w over the sources, w' over the targets
    let diag1 = Diagram {
        nodes: vec![
            a.a1.clone(),
            d.a1.clone(),
            d.a1.clone(),
            b.a1.clone(),
            d.a0.clone(),
            d.a0.clone(),
            d.a0.clone(),
            d.a0.clone(),
        ],
        arrows: vec![
            (0, 4, c.compose(&u.f0, &a.d0)?),
            (1, 4, d.d0.clone()),
            (1, 5, d.d1.clone()),
            (3, 5, c.compose(&v.f0, &b.d0)?),
            (0, 6, c.compose(&u.f0, &a.d1)?),
            (2, 6, d.d0.clone()),
            (2, 7, d.d1.clone()),
            (3, 7, c.compose(&v.f0, &b.d1)?),
        ],
    };
    let lim1 = limits::finite_limit(c, &diag1)?;
    // faces project the A- and B-edges and the matching D-edge
    let level0_cone_d0 = [
        c.compose(&a.d0, &lim1.legs[0])?,
        lim1.legs[1].clone(),
        c.compose(&b.d0, &lim1.legs[3])?,
        lim1.legs[4].clone(),
        lim1.legs[5].clone(),
    ];
    let d0 = limits::limit_mediator(c, &diag0, &level0_cone_d0, &lim0)?;
    let level0_cone_d1 = [
        c.compose(&a.d1, &lim1.legs[0])?,
        lim1.legs[2].clone(),
        c.compose(&b.d1, &lim1.legs[3])?,
        lim1.legs[6].clone(),
        lim1.legs[7].clone(),
    ];
    let d1 = limits::limit_mediator(c, &diag0, &level0_cone_d1, &lim0)?;
    // degeneracy: degenerate A- and B-edges, the same D-edge twice
    let s_cone = [
        c.compose(&a.s, &lim0.legs[0])?,
        lim0.legs[1].clone(),
        lim0.legs[1].clone(),
        c.compose(&b.s, &lim0.legs[2])?,
        lim0.legs[3].clone(),
        lim0.legs[4].clone(),
        lim0.legs[3].clone(),
        lim0.legs[4].clone(),
    ];
    let s = limits::limit_mediator(c, &diag1, &s_cone, &lim1)?;
    let apex = TruncatedSimplicial::new(
        c.clone(),
        lim0.apex.clone(),
        lim1.apex.clone(),
        d0,
        d1,
        s,
    )?;
    if let KanOutcome::Fails { horn } = apex.check_kan()? {
        return Err(Error::BadCertificate(format!(
            "pullback apex fails the Kan condition at horn {horn}"
        )));
    }
    let leg_a = TwoGroupoidMorphism {
        f0: lim0.legs[0].clone(),
        f1: lim1.legs[0].clone(),
    };
    let leg_b = TwoGroupoidMorphism {
        f0: lim0.legs[2].clone(),
        f1: lim1.legs[3].clone(),
    };
    Ok(HPullback {
        a: a.clone(),
        d: d.clone(),
        b: b.clone(),
        u: u.clone(),
        v: v.clone(),
        apex,
        leg_a,
        leg_b,
        diag0,
        lim0,
        diag1,
        lim1,
    })
}

/// Mediator for a commuting square: given level pairs `α : P → A` and
/// `β : P → B` whose composites to `D` are homotopic, tuples them with
/// the homotopy witness.
pub fn pullback_h_mediator(
    hp: &HPullback,
    p: &TruncatedSimplicial,
    alpha: &TwoGroupoidMorphism,
    beta: &TwoGroupoidMorphism,
) -> Result<TwoGroupoidMorphism> {
    let c = &p.carrier;
    let ua0 = c.compose(&hp.u.f0, &alpha.f0)?;
    let vb0 = c.compose(&hp.v.f0, &beta.f0)?;
    let h = homotopy_witness(&hp.d, &ua0, &vb0)?.ok_or_else(|| {
        Error::Precondition("square does not commute up to homotopy".into())
    })?;
    let cone0 = [
        alpha.f0.clone(),
        h.clone(),
        beta.f0.clone(),
        c.compose(&hp.d.d0, &h)?,
        c.compose(&hp.d.d1, &h)?,
    ];
    let f0 = limits::limit_mediator(c, &hp.diag0, &cone0, &hp.lim0)?;
    let hd0 = c.compose(&h, &p.d0)?;
    let hd1 = c.compose(&h, &p.d1)?;
    let cone1 = [
        alpha.f1.clone(),
        hd0.clone(),
        hd1.clone(),
        beta.f1.clone(),
        c.compose(&hp.d.d0, &hd0)?,
        c.compose(&hp.d.d1, &hd0)?,
        c.compose(&hp.d.d0, &hd1)?,
        c.compose(&hp.d.d1, &hd1)?,
    ];
    let f1 = limits::limit_mediator(c, &hp.diag1, &cone1, &hp.lim1)?;
    Ok(TwoGroupoidMorphism { f0, f1 })
}
