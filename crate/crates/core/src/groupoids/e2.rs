//! Category-kind dispatch for the homotopy category of equivalence
//! 2-groupoids over a lex base: objects are Kan-certified truncated
//! simplicial objects, morphisms are homotopy classes keyed by their
//! canonical representative, the terminal object is levelwise, pullbacks
//! follow the two-level fiber formula, and coproducts are levelwise.

use crate::cat::{Category, Mor, Obj};
use crate::error::{Error, Result};
use crate::limits::{Coproduct, LimitCert, ProbeScope, PullbackSq};

use super::*;

pub fn check_object(base: &Category, x: &Obj) -> Result<()> {
    let ts = TruncatedSimplicial::from_key(base, &x.key)?;
    match ts.check_kan()? {
        KanOutcome::Witness(_) => Ok(()),
        KanOutcome::Fails { horn } => Err(Error::Precondition(format!(
            "object is not Kan: horn {horn} has no section"
        ))),
    }
}

pub fn hom(base: &Category, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
    let a = TruncatedSimplicial::from_key(base, &x.key)?;
    let b = TruncatedSimplicial::from_key(base, &y.key)?;
    Ok(hom_e2(&a, &b)?.into_iter().map(|c| c.to_mor()).collect())
}

pub fn identity(base: &Category, x: &Obj) -> Result<Mor> {
    let a = TruncatedSimplicial::from_key(base, &x.key)?;
    let f0 = base.identity(&a.a0)?;
    let f1 = base.identity(&a.a1)?;
    Ok(HomotopyClass::canonical(&a, &a, &TwoGroupoidMorphism { f0, f1 })?.to_mor())
}

pub fn compose(base: &Category, g: &Mor, f: &Mor) -> Result<Mor> {
    let a = TruncatedSimplicial::from_key(base, &f.src)?;
    let b = TruncatedSimplicial::from_key(base, &f.tgt)?;
    let c = TruncatedSimplicial::from_key(base, &g.tgt)?;
    let fr = decode_class_rep(base, f)?;
    let gr = decode_class_rep(base, g)?;
    let comp = TwoGroupoidMorphism {
        f0: base.compose(&gr.f0, &fr.f0)?,
        f1: base.compose(&gr.f1, &fr.f1)?,
    };
    let _ = b;
    Ok(HomotopyClass::canonical(&a, &c, &comp)?.to_mor())
}

pub fn terminal(base: &Category) -> Result<Obj> {
    Ok(point_groupoid(base)?.to_obj())
}

pub fn to_terminal(base: &Category, x: &Obj) -> Result<Mor> {
    let a = TruncatedSimplicial::from_key(base, &x.key)?;
    let t = point_groupoid(base)?;
    let rep = TwoGroupoidMorphism {
        f0: crate::limits::to_terminal(base, &a.a0)?,
        f1: crate::limits::to_terminal(base, &a.a1)?,
    };
    Ok(HomotopyClass::canonical(&a, &t, &rep)?.to_mor())
}

pub fn pullback(base: &Category, f: &Mor, g: &Mor) -> Result<PullbackSq> {
    let a = TruncatedSimplicial::from_key(base, &f.src)?;
    let d = TruncatedSimplicial::from_key(base, &f.tgt)?;
    let b = TruncatedSimplicial::from_key(base, &g.src)?;
    let u = decode_class_rep(base, f)?;
    let v = decode_class_rep(base, g)?;
    let hp = pullback_h(&a, &d, &b, &u, &v)?;
    let scope = ProbeScope::Formula;
    let p1 = HomotopyClass::canonical(&hp.apex, &a, &hp.leg_a)?.to_mor();
    let p2 = HomotopyClass::canonical(&hp.apex, &b, &hp.leg_b)?.to_mor();
    Ok(PullbackSq {
        f: f.clone(),
        g: g.clone(),
        apex: hp.apex.to_obj(),
        p1,
        p2,
        cert: LimitCert { scope },
    })
}

pub fn pb_mediator(base: &Category, sq: &PullbackSq, u: &Mor, v: &Mor) -> Result<Mor> {
    let a = TruncatedSimplicial::from_key(base, &sq.f.src)?;
    let d = TruncatedSimplicial::from_key(base, &sq.f.tgt)?;
    let b = TruncatedSimplicial::from_key(base, &sq.g.src)?;
    let fa = decode_class_rep(base, &sq.f)?;
    let gb = decode_class_rep(base, &sq.g)?;
    let hp = pullback_h(&a, &d, &b, &fa, &gb)?;
    let p = TruncatedSimplicial::from_key(base, &u.src)?;
    let alpha = decode_class_rep(base, u)?;
    let beta = decode_class_rep(base, v)?;
    let med = pullback_h_mediator(&hp, &p, &alpha, &beta)?;
    Ok(HomotopyClass::canonical(&p, &hp.apex, &med)?.to_mor())
}

/// Levelwise coproduct of equivalence 2-groupoids.
pub fn coproduct(base: &Category, summands: &[Obj]) -> Result<Coproduct> {
    let tss = summands
        .iter()
        .map(|s| TruncatedSimplicial::from_key(base, &s.key))
        .collect::<Result<Vec<_>>>()?;
    let lvl0 = crate::limits::chosen_coproduct(
        base,
        &tss.iter().map(|t| t.a0.clone()).collect::<Vec<_>>(),
    )?;
    let lvl1 = crate::limits::chosen_coproduct(
        base,
        &tss.iter().map(|t| t.a1.clone()).collect::<Vec<_>>(),
    )?;
    let d0 = crate::limits::cop_mediator(
        base,
        &lvl1,
        &tss.iter()
            .zip(&lvl0.injections)
            .map(|(t, inj)| base.compose(inj, &t.d0))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let d1 = crate::limits::cop_mediator(
        base,
        &lvl1,
        &tss.iter()
            .zip(&lvl0.injections)
            .map(|(t, inj)| base.compose(inj, &t.d1))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let s = crate::limits::cop_mediator(
        base,
        &lvl0,
        &tss.iter()
            .zip(&lvl1.injections)
            .map(|(t, inj)| base.compose(inj, &t.s))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let apex = if summands.is_empty() {
        // empty coproduct: levelwise initial
        let i = crate::limits::initial(base)?;
        TruncatedSimplicial::new(
            base.clone(),
            i.clone(),
            i.clone(),
            base.identity(&i)?,
            base.identity(&i)?,
            base.identity(&i)?,
        )?
    } else {
        TruncatedSimplicial::new(base.clone(), lvl0.apex.clone(), lvl1.apex.clone(), d0, d1, s)?
    };
    let mut injections = Vec::new();
    for (t, (i0, i1)) in tss
        .iter()
        .zip(lvl0.injections.iter().zip(&lvl1.injections))
    {
        let rep = TwoGroupoidMorphism {
            f0: i0.clone(),
            f1: i1.clone(),
        };
        injections.push(HomotopyClass::canonical(t, &apex, &rep)?.to_mor());
    }
    Ok(Coproduct {
        summands: summands.to_vec(),
        apex: apex.to_obj(),
        injections,
    })
}

pub fn cop_mediator(base: &Category, c: &Coproduct, cocone: &[Mor]) -> Result<Mor> {
    let tgt = cocone
        .first()
        .map(|m| m.tgt_obj())
        .ok_or_else(|| Error::Precondition("empty cocone needs explicit target".into()))?;
    let apex = TruncatedSimplicial::from_key(base, &c.apex.key)?;
    let tgt_ts = TruncatedSimplicial::from_key(base, &tgt.key)?;
    let summand_ts = c
        .summands
        .iter()
        .map(|s| TruncatedSimplicial::from_key(base, &s.key))
        .collect::<Result<Vec<_>>>()?;
    let lvl0 = crate::limits::chosen_coproduct(
        base,
        &summand_ts.iter().map(|t| t.a0.clone()).collect::<Vec<_>>(),
    )?;
    let lvl1 = crate::limits::chosen_coproduct(
        base,
        &summand_ts.iter().map(|t| t.a1.clone()).collect::<Vec<_>>(),
    )?;
    let reps = cocone
        .iter()
        .map(|m| decode_class_rep(base, m))
        .collect::<Result<Vec<_>>>()?;
    let f0 = crate::limits::cop_mediator(
        base,
        &lvl0,
        &reps.iter().map(|r| r.f0.clone()).collect::<Vec<_>>(),
    )?;
    let f1 = crate::limits::cop_mediator(
        base,
        &lvl1,
        &reps.iter().map(|r| r.f1.clone()).collect::<Vec<_>>(),
    )?;
    Ok(HomotopyClass::canonical(&apex, &tgt_ts, &TwoGroupoidMorphism { f0, f1 })?.to_mor())
}

pub fn from_initial(base: &Category, x: &Obj) -> Result<Mor> {
    let tgt = TruncatedSimplicial::from_key(base, &x.key)?;
    let init = coproduct(base, &[])?;
    let src = TruncatedSimplicial::from_key(base, &init.apex.key)?;
    let rep = TwoGroupoidMorphism {
        f0: crate::limits::from_initial(base, &tgt.a0)?,
        f1: crate::limits::from_initial(base, &tgt.a1)?,
    };
    Ok(HomotopyClass::canonical(&src, &tgt, &rep)?.to_mor())
}

pub(super) fn decode_class_rep(base: &Category, m: &Mor) -> Result<TwoGroupoidMorphism> {
    let parts = m
        .key
        .as_seq()
        .filter(|s| s.len() == 2)
        .ok_or_else(|| Error::Malformed(format!("bad class key {}", m.key)))?;
    let src = TruncatedSimplicial::from_key(base, &m.src)?;
    let tgt = TruncatedSimplicial::from_key(base, &m.tgt)?;
    Ok(TwoGroupoidMorphism {
        f0: Mor::new(src.a0.key.clone(), tgt.a0.key.clone(), parts[0].clone()),
        f1: Mor::new(src.a1.key.clone(), tgt.a1.key.clone(), parts[1].clone()),
    })
}
