//! Derived constructions on 2-groupoids: path objects, the monic/epic
//! class predicates, the stacking presentation, the reflection onto
//! equivalence groupoids, and transport along lex functors.

use crate::cat::{Mor, Obj};
use crate::classify;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::limits::{self, Diagram};

use super::colimits::{quotient, quotient_factor};
use super::{
    evaluate, eval_mediator, GraphShape, HomotopyClass, KanOutcome, KanWitness,
    TruncatedSimplicial, TwoGroupoidMorphism,
};

/// Path object of an equivalence groupoid: level 0 is the edge object,
/// level 1 evaluates the square of parallel edge pairs, faces project
/// the opposite (bottom/top) edges.
pub fn path_object(b: &TruncatedSimplicial) -> Result<TruncatedSimplicial> {
    let c = &b.carrier;
    let ev = evaluate(b, &GraphShape::boundary_square())?;
    let d0 = ev.edge_leg(0).clone();
    let d1 = ev.edge_leg(1).clone();
    let vertices = [
        c.compose(&b.d0, &c.identity(&b.a1)?)?,
        c.compose(&b.d1, &c.identity(&b.a1)?)?,
        b.d0.clone(),
        b.d1.clone(),
    ];
    let edges = [
        c.identity(&b.a1)?,
        c.identity(&b.a1)?,
        c.compose(&b.s, &b.d0)?,
        c.compose(&b.s, &b.d1)?,
    ];
    let s = eval_mediator(b, &ev, &vertices, &edges)?;
    TruncatedSimplicial::new(c.clone(), b.a1.clone(), ev.apex().clone(), d0, d1, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassPredicates {
    pub monic: bool,
    /// Sufficient condition only: the representative's level-0 component
    /// is invertible.
    pub epic_sufficient: bool,
}

/// Monicity by the comparison map `A1 → A0 ×_{B0} B1 ×_{B0} A0` being
/// invertible; the epic predicate reads only the level-0 component.
pub fn class_predicates(f: &HomotopyClass) -> Result<ClassPredicates> {
    let c = &f.src.carrier;
    let (a, b) = (&f.src, &f.tgt);
    let diag = Diagram {
        nodes: vec![
            a.a0.clone(),
            b.a1.clone(),
            a.a0.clone(),
            b.a0.clone(),
            b.a0.clone(),
        ],
        arrows: vec![
            (0, 3, f.rep.f0.clone()),
            (1, 3, b.d0.clone()),
            (1, 4, b.d1.clone()),
            (2, 4, f.rep.f0.clone()),
        ],
    };
    let lim = limits::finite_limit(c, &diag)?;
    let cone = [
        a.d0.clone(),
        f.rep.f1.clone(),
        a.d1.clone(),
        c.compose(&f.rep.f0, &a.d0)?,
        c.compose(&f.rep.f0, &a.d1)?,
    ];
    let comparison = limits::limit_mediator(c, &diag, &cone, &lim)?;
    Ok(ClassPredicates {
        monic: classify::is_iso(c, &comparison)?,
        epic_sufficient: classify::is_iso(c, &f.rep.f0)?,
    })
}

/// The stacking presentation of a 2-groupoid: the level-0 object together
/// with the parallel-edge groupoid on the edges.
#[derive(Clone, Debug)]
pub struct DPresentation {
    pub a0: Obj,
    /// The equivalence groupoid (A1, A1 ×_{A0×A0} A1) with projection
    /// faces and diagonal degeneracy.
    pub groupoid: TruncatedSimplicial,
    /// The two edge endpoints, anchoring the groupoid over the level-0
    /// object.
    pub face0: Mor,
    pub face1: Mor,
    /// Whether the anchor class passed the monic comparison.
    pub monic_certified: bool,
}

/// Presents a 2-groupoid as an equivalence groupoid over its own level 0.
pub fn d_functor(ts: &TruncatedSimplicial) -> Result<DPresentation> {
    let c = &ts.carrier;
    let (_, anchor) = ts.anchor()?;
    let sq = limits::chosen_pullback(c, &anchor, &anchor)?;
    let id1 = c.identity(&ts.a1)?;
    let diagonal = limits::pb_mediator(c, &sq, &id1, &id1)?;
    let groupoid = TruncatedSimplicial::new(
        c.clone(),
        ts.a1.clone(),
        sq.apex.clone(),
        sq.p1.clone(),
        sq.p2.clone(),
        diagonal,
    )?;
    // the anchor class into the discrete groupoid on A0 × A0 is monic
    let prod_apex = anchor.tgt_obj();
    let idp = c.identity(&prod_apex)?;
    let discrete = TruncatedSimplicial::new(
        c.clone(),
        prod_apex.clone(),
        prod_apex,
        idp.clone(),
        idp.clone(),
        idp,
    )?;
    let rep = TwoGroupoidMorphism {
        f0: anchor.clone(),
        f1: c.compose(&anchor, &sq.p1)?,
    };
    let class = HomotopyClass::canonical(&groupoid, &discrete, &rep)?;
    let monic_certified = class_predicates(&class)?.monic;
    Ok(DPresentation {
        a0: ts.a0.clone(),
        groupoid,
        face0: ts.d0.clone(),
        face1: ts.d1.clone(),
        monic_certified,
    })
}

/// Reflection onto equivalence groupoids: quotient the edges by the
/// parallel-edge groupoid. Returns the reflected object and the unit.
pub fn e_functor(ts: &TruncatedSimplicial) -> Result<(TruncatedSimplicial, TwoGroupoidMorphism)> {
    let c = &ts.carrier;
    let pres = d_functor(ts)?;
    let (e_a1, proj) = quotient(&pres.groupoid)?;
    let (prod, anchor) = ts.anchor()?;
    let induced = quotient_factor(&pres.groupoid, &proj, &anchor)?;
    let e_ts = TruncatedSimplicial::new(
        c.clone(),
        ts.a0.clone(),
        Obj::new(e_a1.key),
        c.compose(&prod.p1, &induced)?,
        c.compose(&prod.p2, &induced)?,
        c.compose(&proj, &ts.s)?,
    )?;
    let unit = TwoGroupoidMorphism {
        f0: c.identity(&ts.a0)?,
        f1: proj,
    };
    Ok((e_ts, unit))
}

/// Applies a lex functor levelwise; the image is Kan because the functor
/// carries the horn limits to certified limits.
pub fn apply_lex_functor(
    f: &Functor,
    ts: &TruncatedSimplicial,
) -> Result<(TruncatedSimplicial, KanWitness)> {
    if !f.is_lex_flagged() {
        return Err(Error::Precondition("functor is not lex-certified".into()));
    }
    let image = TruncatedSimplicial::new(
        f.tgt.clone(),
        f.apply_obj(&ts.a0)?,
        f.apply_obj(&ts.a1)?,
        f.apply_mor(&ts.d0)?,
        f.apply_mor(&ts.d1)?,
        f.apply_mor(&ts.s)?,
    )?;
    match image.check_kan()? {
        KanOutcome::Witness(w) => Ok((image, w)),
        KanOutcome::Fails { horn } => Err(Error::BadCertificate(format!(
            "lex image lost the Kan property at horn {horn}"
        ))),
    }
}
