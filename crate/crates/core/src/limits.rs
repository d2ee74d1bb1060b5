//! Chosen limits with certificates.
//!
//! Every chosen limit records the finite probe scope its universal
//! property was verified against: all objects for tabulated kinds, a
//! declared probe family for constructive ones, or `Formula` when the
//! apex comes from a canonical construction and certification is done on
//! demand by [`validate_terminal`] / [`validate_pullback`].
//!
//! The module also houses a small engine that computes the limit of any
//! finite diagram from the chosen terminal and pullbacks, recording its
//! construction trace so mediating morphisms can be replayed for
//! arbitrary cones.

use crate::cat::{CatKind, Category, Mor, Obj};
use crate::error::{guard_cap, Error, Result};
use crate::key::Key;

/// How far a certificate's universal property was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeScope {
    /// Every object of the category (tabulated kinds).
    AllObjects,
    /// A caller-declared finite probe family (constructive kinds).
    Declared(Vec<Key>),
    /// Canonical formula; revalidate on demand against declared probes.
    Formula,
}

#[derive(Clone, Debug)]
pub struct LimitCert {
    pub scope: ProbeScope,
}

#[derive(Clone, Debug)]
pub struct TerminalCert {
    pub obj: Obj,
    pub cert: LimitCert,
}

/// A chosen pullback square for the cospan `f : X → Z ← Y : g`, with the
/// first leg over the source of `f`.
#[derive(Clone, Debug)]
pub struct PullbackSq {
    pub f: Mor,
    pub g: Mor,
    pub apex: Obj,
    pub p1: Mor,
    pub p2: Mor,
    pub cert: LimitCert,
}

fn default_scope(cat: &Category) -> ProbeScope {
    if cat.objects().is_some() {
        ProbeScope::AllObjects
    } else if cat.declared_probes().is_empty() {
        ProbeScope::Formula
    } else {
        ProbeScope::Declared(cat.declared_probes().to_vec())
    }
}

fn scope_objects(cat: &Category, scope: &ProbeScope) -> Vec<Obj> {
    match scope {
        ProbeScope::AllObjects => cat.objects().unwrap_or_default(),
        ProbeScope::Declared(keys) => keys.iter().cloned().map(Obj::new).collect(),
        ProbeScope::Formula => cat.probe_objects(),
    }
}

/// Chosen terminal object. Tabulated kinds search objects in key order;
/// constructive kinds use their canonical terminal.
pub fn chosen_terminal(cat: &Category) -> Result<TerminalCert> {
    let obj = match cat.kind() {
        CatKind::Tabulated(t) => {
            let mut near_misses = Vec::new();
            let mut found = None;
            for cand in &t.objects {
                let cand_obj = Obj::new(cand.clone());
                let mut all_one = true;
                let mut all_at_most_one = true;
                for x in &t.objects {
                    let n = t.hom(&Obj::new(x.clone()), &cand_obj)?.len();
                    if n != 1 {
                        all_one = false;
                    }
                    if n > 1 {
                        all_at_most_one = false;
                    }
                }
                if all_one {
                    found = Some(cand_obj);
                    break;
                }
                if all_at_most_one {
                    near_misses.push(cand.clone());
                }
            }
            match found {
                Some(o) => o,
                None => return Err(Error::NoTerminal { near_misses }),
            }
        }
        CatKind::FinSet => crate::cat::finset::terminal_obj(),
        CatKind::FinPoset(p) => match p.top() {
            Some(t) => Obj::new(t),
            None => {
                // near misses: maximal elements
                let near = p
                    .elements
                    .iter()
                    .filter(|m| p.elements.iter().all(|x| !p.leq(m, x) || *x == **m))
                    .cloned()
                    .collect();
                return Err(Error::NoTerminal { near_misses: near });
            }
        },
        CatKind::Sums(base) => crate::sums::terminal(base)?,
        CatKind::E2(base) => crate::groupoids::e2::terminal(base)?,
        CatKind::Psh(base) => crate::presheaves::terminal(base)?,
    };
    Ok(TerminalCert {
        obj,
        cert: LimitCert {
            scope: default_scope(cat),
        },
    })
}

/// The unique morphism from `x` to the chosen terminal object.
pub fn to_terminal(cat: &Category, x: &Obj) -> Result<Mor> {
    let t = chosen_terminal(cat)?;
    match cat.kind() {
        CatKind::FinSet => crate::cat::finset::constant(x, &t.obj, &Key::Unit),
        CatKind::FinPoset(p) => {
            let hs = p.hom(x, &t.obj)?;
            Ok(hs[0].clone())
        }
        CatKind::Sums(base) => crate::sums::to_terminal(base, x),
        CatKind::E2(base) => crate::groupoids::e2::to_terminal(base, x),
        CatKind::Psh(base) => crate::presheaves::to_terminal(base, x),
        CatKind::Tabulated(_) => {
            let hs = cat.hom(x, &t.obj)?;
            hs.into_iter()
                .next()
                .ok_or_else(|| Error::BadCertificate("terminal object lost its certificate".into()))
        }
    }
}

/// Chosen pullback of the cospan `f : X → Z ← Y : g`.
pub fn chosen_pullback(cat: &Category, f: &Mor, g: &Mor) -> Result<PullbackSq> {
    if f.tgt != g.tgt {
        return Err(Error::Precondition("pullback requires a shared target".into()));
    }
    match cat.kind() {
        CatKind::FinSet => {
            let (apex, p1, p2) = crate::cat::finset::fiber_product(f, g)?;
            Ok(PullbackSq {
                f: f.clone(),
                g: g.clone(),
                apex,
                p1,
                p2,
                cert: LimitCert {
                    scope: default_scope(cat),
                },
            })
        }
        CatKind::FinPoset(p) => {
            let meet = p.meet(&f.src, &g.src).ok_or_else(|| {
                Error::NoPullback(format!("no meet of {} and {} exists", f.src, g.src))
            })?;
            let apex = Obj::new(meet.clone());
            let p1 = p.hom(&apex, &f.src_obj())?[0].clone();
            let p2 = p.hom(&apex, &g.src_obj())?[0].clone();
            Ok(PullbackSq {
                f: f.clone(),
                g: g.clone(),
                apex,
                p1,
                p2,
                cert: LimitCert {
                    scope: ProbeScope::AllObjects,
                },
            })
        }
        CatKind::Tabulated(t) => {
            let mut first_witness: Option<String> = None;
            for cand in &t.objects {
                let apex = Obj::new(cand.clone());
                for p1 in t.hom(&apex, &f.src_obj())? {
                    for p2 in t.hom(&apex, &g.src_obj())? {
                        if t.compose(f, &p1)?.key != t.compose(g, &p2)?.key {
                            continue;
                        }
                        let sq = PullbackSq {
                            f: f.clone(),
                            g: g.clone(),
                            apex: apex.clone(),
                            p1: p1.clone(),
                            p2: p2.clone(),
                            cert: LimitCert {
                                scope: ProbeScope::AllObjects,
                            },
                        };
                        match validate_pullback(cat, &sq) {
                            Ok(()) => return Ok(sq),
                            Err(e) => {
                                if first_witness.is_none() {
                                    first_witness = Some(format!("{e}"));
                                }
                            }
                        }
                    }
                }
            }
            Err(Error::NoPullback(format!(
                "search exhausted for {} -> {} <- {}{}",
                f.src,
                f.tgt,
                g.src,
                first_witness
                    .map(|w| format!("; nearest candidate failed: {w}"))
                    .unwrap_or_default()
            )))
        }
        CatKind::Sums(base) => crate::sums::pullback(base, cat, f, g),
        CatKind::E2(base) => crate::groupoids::e2::pullback(base, f, g),
        CatKind::Psh(base) => crate::presheaves::pullback(base, f, g),
    }
}

/// The unique mediating morphism into a chosen pullback for a cone
/// `(u, v)` with `f∘u = g∘v`.
pub fn pb_mediator(cat: &Category, sq: &PullbackSq, u: &Mor, v: &Mor) -> Result<Mor> {
    if u.src != v.src || u.tgt != sq.p1.tgt || v.tgt != sq.p2.tgt {
        return Err(Error::Precondition("mediator cone is ill-typed".into()));
    }
    if cat.compose(&sq.f, u)?.key != cat.compose(&sq.g, v)?.key {
        return Err(Error::Precondition("mediator cone does not commute".into()));
    }
    match cat.kind() {
        CatKind::FinSet => {
            let dom = crate::cat::finset::elems(&u.src_obj())?.to_vec();
            let pairs = dom
                .iter()
                .map(|x| {
                    Ok((
                        x.clone(),
                        Key::pair(
                            crate::cat::finset::apply(u, x)?,
                            crate::cat::finset::apply(v, x)?,
                        ),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            crate::cat::finset::mor_from_pairs(&u.src_obj(), &sq.apex, pairs)
        }
        CatKind::FinPoset(p) => Ok(p.hom(&u.src_obj(), &sq.apex)?[0].clone()),
        CatKind::Tabulated(_) => {
            let mut found = None;
            for m in cat.hom(&u.src_obj(), &sq.apex)? {
                if cat.compose(&sq.p1, &m)?.key == u.key && cat.compose(&sq.p2, &m)?.key == v.key {
                    if found.is_some() {
                        return Err(Error::BadCertificate(
                            "two distinct mediators into a chosen pullback".into(),
                        ));
                    }
                    found = Some(m);
                }
            }
            found.ok_or_else(|| Error::BadCertificate("no mediator into a chosen pullback".into()))
        }
        CatKind::Sums(base) => crate::sums::pb_mediator(base, cat, sq, u, v),
        CatKind::E2(base) => crate::groupoids::e2::pb_mediator(base, sq, u, v),
        CatKind::Psh(base) => crate::presheaves::pb_mediator(base, sq, u, v),
    }
}

/// Re-runs the probe loop of a terminal certificate: every probe must
/// have exactly one morphism into the apex.
pub fn validate_terminal(cat: &Category, tc: &TerminalCert) -> Result<()> {
    for p in scope_objects(cat, &tc.cert.scope) {
        let n = cat.hom(&p, &tc.obj)?.len();
        if n != 1 {
            return Err(Error::BadCertificate(format!(
                "terminal {}: probe {} has {} morphisms",
                tc.obj.key, p.key, n
            )));
        }
    }
    Ok(())
}

/// Re-runs the probe loop of a pullback certificate: for every probe and
/// every commuting cone, exactly one mediator exists.
pub fn validate_pullback(cat: &Category, sq: &PullbackSq) -> Result<()> {
    if sq.p1.src != sq.apex.key
        || sq.p2.src != sq.apex.key
        || cat.compose(&sq.f, &sq.p1)?.key != cat.compose(&sq.g, &sq.p2)?.key
    {
        return Err(Error::BadCertificate("pullback square does not commute".into()));
    }
    for p in scope_objects(cat, &sq.cert.scope) {
        let us = cat.hom(&p, &sq.f.src_obj())?;
        let vs = cat.hom(&p, &sq.g.src_obj())?;
        let ms = cat.hom(&p, &sq.apex)?;
        guard_cap(us.len() as u128 * vs.len() as u128)?;
        for u in &us {
            let fu = cat.compose(&sq.f, u)?;
            for v in &vs {
                if fu.key != cat.compose(&sq.g, v)?.key {
                    continue;
                }
                let mut count = 0usize;
                for m in &ms {
                    if cat.compose(&sq.p1, m)?.key == u.key && cat.compose(&sq.p2, m)?.key == v.key
                    {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Err(Error::BadCertificate(format!(
                        "pullback {}: cone ({}, {}) from {} has {} mediators",
                        sq.apex.key, u.key, v.key, p.key, count
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Binary product as the pullback over the chosen terminal.
pub fn binary_product(cat: &Category, x: &Obj, y: &Obj) -> Result<PullbackSq> {
    let tx = to_terminal(cat, x)?;
    let ty = to_terminal(cat, y)?;
    chosen_pullback(cat, &tx, &ty)
}

/// Pairing `⟨u, v⟩` into a binary product.
pub fn pair_into(cat: &Category, prod: &PullbackSq, u: &Mor, v: &Mor) -> Result<Mor> {
    pb_mediator(cat, prod, u, v)
}

/// Equalizer of `f, g : X → Y` as the pullback of the diagonal of `Y`
/// along `⟨f, g⟩`. Returns the apex and the (monic) inclusion leg.
pub fn equalizer(cat: &Category, f: &Mor, g: &Mor) -> Result<(Obj, Mor)> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(Error::Precondition("equalizer requires a parallel pair".into()));
    }
    let y = f.tgt_obj();
    let prod = binary_product(cat, &y, &y)?;
    let idy = cat.identity(&y)?;
    let diag = pair_into(cat, &prod, &idy, &idy)?;
    let fg = pair_into(cat, &prod, f, g)?;
    let sq = chosen_pullback(cat, &diag, &fg)?;
    Ok((sq.apex.clone(), sq.p2.clone()))
}

/// A finite diagram: nodes with objects, arrows with morphisms between
/// the named nodes.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub nodes: Vec<Obj>,
    pub arrows: Vec<(usize, usize, Mor)>,
}

impl Diagram {
    pub fn validate(&self, _cat: &Category) -> Result<()> {
        for (i, j, m) in &self.arrows {
            let (src, tgt) = (
                self.nodes.get(*i).ok_or_else(|| Error::DanglingRef("diagram arrow source".into()))?,
                self.nodes.get(*j).ok_or_else(|| Error::DanglingRef("diagram arrow target".into()))?,
            );
            if m.src != src.key || m.tgt != tgt.key {
                return Err(Error::Malformed(format!(
                    "diagram arrow {} is not typed {} -> {}",
                    m.key, src.key, tgt.key
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum LimitStep {
    Init { node: usize },
    Extend,
    Attach { arrow: usize, sq: PullbackSq },
    Equalize { arrow: usize, sq: PullbackSq },
    Product { node: usize, sq: PullbackSq },
}

/// Limit cone of a finite diagram together with the construction trace
/// used to replay mediators.
#[derive(Clone, Debug)]
pub struct LimitCone {
    pub apex: Obj,
    pub legs: Vec<Mor>,
    steps: Vec<LimitStep>,
}

/// Computes the limit of a finite diagram from chosen terminal and
/// pullbacks, joining nodes in deterministic order.
pub fn finite_limit(cat: &Category, diag: &Diagram) -> Result<LimitCone> {
    diag.validate(cat)?;
    let n = diag.nodes.len();
    let mut steps = Vec::new();
    if n == 0 {
        let t = chosen_terminal(cat)?;
        return Ok(LimitCone {
            apex: t.obj,
            legs: vec![],
            steps,
        });
    }
    let mut legs: Vec<Option<Mor>> = vec![None; n];
    let mut apex: Option<Obj> = None;
    let mut arrow_done = vec![false; diag.arrows.len()];
    loop {
        let joined = |i: usize, legs: &Vec<Option<Mor>>| legs[i].is_some();
        if let Some(cur) = apex.clone() {
            // 1. extend along an arrow into a fresh node
            if let Some(a) = (0..diag.arrows.len()).find(|&a| {
                !arrow_done[a] && joined(diag.arrows[a].0, &legs) && !joined(diag.arrows[a].1, &legs)
            }) {
                let (i, j, ref m) = diag.arrows[a];
                legs[j] = Some(cat.compose(m, legs[i].as_ref().unwrap())?);
                arrow_done[a] = true;
                steps.push(LimitStep::Extend);
                continue;
            }
            // 2. attach a fresh node mapping into a joined one
            if let Some(a) = (0..diag.arrows.len()).find(|&a| {
                !arrow_done[a] && !joined(diag.arrows[a].0, &legs) && joined(diag.arrows[a].1, &legs)
            }) {
                let (i, j, ref m) = diag.arrows[a];
                let sq = chosen_pullback(cat, legs[j].as_ref().unwrap(), m)?;
                for leg in legs.iter_mut().flatten() {
                    *leg = cat.compose(leg, &sq.p1)?;
                }
                legs[i] = Some(sq.p2.clone());
                apex = Some(sq.apex.clone());
                arrow_done[a] = true;
                steps.push(LimitStep::Attach { arrow: a, sq });
                continue;
            }
            // 3. equalize an arrow between joined nodes
            if let Some(a) = (0..diag.arrows.len())
                .find(|&a| !arrow_done[a] && joined(diag.arrows[a].0, &legs) && joined(diag.arrows[a].1, &legs))
            {
                let (i, j, ref m) = diag.arrows[a];
                let via = cat.compose(m, legs[i].as_ref().unwrap())?;
                let direct = legs[j].as_ref().unwrap().clone();
                let y = direct.tgt_obj();
                let prod = binary_product(cat, &y, &y)?;
                let idy = cat.identity(&y)?;
                let dia = pair_into(cat, &prod, &idy, &idy)?;
                let pairmor = pair_into(cat, &prod, &via, &direct)?;
                let sq = chosen_pullback(cat, &dia, &pairmor)?;
                for leg in legs.iter_mut().flatten() {
                    *leg = cat.compose(leg, &sq.p2)?;
                }
                apex = Some(sq.apex.clone());
                arrow_done[a] = true;
                steps.push(LimitStep::Equalize { arrow: a, sq });
                continue;
            }
            // 4. join a disconnected node by product
            if let Some(i) = (0..n).find(|&i| !joined(i, &legs)) {
                let t1 = to_terminal(cat, &cur)?;
                let t2 = to_terminal(cat, &diag.nodes[i])?;
                let sq = chosen_pullback(cat, &t1, &t2)?;
                for leg in legs.iter_mut().flatten() {
                    *leg = cat.compose(leg, &sq.p1)?;
                }
                legs[i] = Some(sq.p2.clone());
                apex = Some(sq.apex.clone());
                steps.push(LimitStep::Product { node: i, sq });
                continue;
            }
            break;
        } else {
            legs[0] = Some(cat.identity(&diag.nodes[0])?);
            apex = Some(diag.nodes[0].clone());
            steps.push(LimitStep::Init { node: 0 });
        }
    }
    Ok(LimitCone {
        apex: apex.unwrap(),
        legs: legs.into_iter().map(Option::unwrap).collect(),
        steps,
    })
}

/// The mediating morphism into a computed limit for a commuting cone
/// (one leg per diagram node), replayed along the construction trace.
pub fn limit_mediator(cat: &Category, diag: &Diagram, cone: &[Mor], lim: &LimitCone) -> Result<Mor> {
    if cone.len() != diag.nodes.len() {
        return Err(Error::Precondition("cone arity mismatch".into()));
    }
    for (i, j, m) in &diag.arrows {
        if cat.compose(m, &cone[*i])?.key != cone[*j].key {
            return Err(Error::Precondition(format!(
                "cone does not commute along arrow {} -> {}",
                i, j
            )));
        }
    }
    let mut med: Option<Mor> = None;
    for step in &lim.steps {
        match step {
            LimitStep::Init { node } => med = Some(cone[*node].clone()),
            LimitStep::Extend => {}
            LimitStep::Attach { arrow, sq } => {
                let (i, _, _) = diag.arrows[*arrow];
                med = Some(pb_mediator(cat, sq, med.as_ref().unwrap(), &cone[i])?);
            }
            LimitStep::Equalize { arrow, sq } => {
                let (_, j, _) = diag.arrows[*arrow];
                med = Some(pb_mediator(cat, sq, &cone[j], med.as_ref().unwrap())?);
            }
            LimitStep::Product { node, sq } => {
                med = Some(pb_mediator(cat, sq, med.as_ref().unwrap(), &cone[*node])?);
            }
        }
    }
    let med = med.ok_or_else(|| Error::Precondition("empty diagram has no mediator".into()))?;
    // sanity: the mediator reproduces the cone
    for (i, leg) in lim.legs.iter().enumerate() {
        if cat.compose(leg, &med)?.key != cone[i].key {
            return Err(Error::BadCertificate(format!(
                "replayed mediator does not reproduce cone leg {i}"
            )));
        }
    }
    Ok(med)
}

/// Exhaustive universal-property check of a limit cone over a probe
/// family: every commuting cone from a probe has exactly one mediator.
pub fn validate_limit_cone(
    cat: &Category,
    diag: &Diagram,
    lim: &LimitCone,
    probes: &[Obj],
) -> Result<()> {
    for p in probes {
        let homs: Vec<Vec<Mor>> = diag
            .nodes
            .iter()
            .map(|nd| cat.hom(p, nd))
            .collect::<Result<_>>()?;
        let total: u128 = homs.iter().map(|h| h.len() as u128).product();
        guard_cap(total)?;
        let ms = cat.hom(p, &lim.apex)?;
        let mut idx = vec![0usize; diag.nodes.len()];
        if homs.iter().any(|h| h.is_empty()) {
            continue;
        }
        'outer: loop {
            let cone: Vec<&Mor> = idx.iter().zip(&homs).map(|(&i, h)| &h[i]).collect();
            let commutes = diag.arrows.iter().all(|(i, j, m)| {
                cat.compose(m, cone[*i]).map(|c| c.key == cone[*j].key).unwrap_or(false)
            });
            if commutes {
                let mut count = 0;
                for m in &ms {
                    let mut all = true;
                    for (leg, c) in lim.legs.iter().zip(&cone) {
                        if cat.compose(leg, m)?.key != c.key {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Err(Error::BadCertificate(format!(
                        "limit {}: a cone from {} has {} mediators",
                        lim.apex.key, p.key, count
                    )));
                }
            }
            let mut k = idx.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                if idx[k] + 1 < homs[k].len() {
                    idx[k] += 1;
                    for v in idx[k + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Chosen finite coproduct with injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub summands: Vec<Obj>,
    pub apex: Obj,
    pub injections: Vec<Mor>,
}

pub fn chosen_coproduct(cat: &Category, summands: &[Obj]) -> Result<Coproduct> {
    match cat.kind() {
        CatKind::FinSet => {
            let (apex, injections) = crate::cat::finset::coproduct(summands)?;
            Ok(Coproduct {
                summands: summands.to_vec(),
                apex,
                injections,
            })
        }
        CatKind::Sums(base) => crate::sums::coproduct(base, summands),
        CatKind::E2(base) => crate::groupoids::e2::coproduct(base, summands),
        CatKind::Psh(base) => crate::presheaves::coproduct(base, summands),
        CatKind::Tabulated(t) => {
            // certified search in key order
            for cand in &t.objects {
                let apex = Obj::new(cand.clone());
                let mut choices: Vec<Vec<Mor>> = Vec::new();
                for s in summands {
                    choices.push(cat.hom(s, &apex)?);
                }
                if choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; summands.len()];
                loop {
                    let injections: Vec<Mor> =
                        idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
                    let cocone = Coproduct {
                        summands: summands.to_vec(),
                        apex: apex.clone(),
                        injections,
                    };
                    if validate_coproduct(cat, &cocone).is_ok() {
                        return Ok(cocone);
                    }
                    let mut k = idx.len();
                    let mut done = false;
                    loop {
                        if k == 0 {
                            done = true;
                            break;
                        }
                        k -= 1;
                        if idx[k] + 1 < choices[k].len() {
                            idx[k] += 1;
                            for v in idx[k + 1..].iter_mut() {
                                *v = 0;
                            }
                            break;
                        }
                    }
                    if done {
                        break;
                    }
                }
            }
            Err(Error::NoCoproduct("tabulated search exhausted".into()))
        }
        CatKind::FinPoset(_) => Err(Error::NoCoproduct("finposet kind declares no coproducts".into())),
    }
}

/// Couniversal property over all probes: every cocone factors uniquely.
pub fn validate_coproduct(cat: &Category, c: &Coproduct) -> Result<()> {
    let probes = cat.probe_objects();
    for p in &probes {
        let legs: Vec<Vec<Mor>> = c
            .summands
            .iter()
            .map(|s| cat.hom(s, p))
            .collect::<Result<_>>()?;
        let total: u128 = legs.iter().map(|l| l.len() as u128).product();
        guard_cap(total)?;
        if legs.iter().any(|l| l.is_empty()) {
            continue;
        }
        let ms = cat.hom(&c.apex, p)?;
        let mut idx = vec![0usize; c.summands.len()];
        'cocones: loop {
            let cocone: Vec<&Mor> = idx.iter().zip(&legs).map(|(&i, l)| &l[i]).collect();
            let mut count = 0;
            for m in &ms {
                let mut all = true;
                for (inj, u) in c.injections.iter().zip(&cocone) {
                    if cat.compose(m, inj)?.key != u.key {
                        all = false;
                        break;
                    }
                }
                if all {
                    count += 1;
                }
            }
            if count != 1 {
                return Err(Error::BadCertificate(format!(
                    "coproduct {}: a cocone into {} has {} factorisations",
                    c.apex.key, p.key, count
                )));
            }
            let mut k = idx.len();
            loop {
                if k == 0 {
                    break 'cocones;
                }
                k -= 1;
                if idx[k] + 1 < legs[k].len() {
                    idx[k] += 1;
                    for v in idx[k + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }
    Ok(())
}

/// The unique morphism out of a coproduct determined by a cocone.
pub fn cop_mediator(cat: &Category, c: &Coproduct, cocone: &[Mor]) -> Result<Mor> {
    if cocone.len() != c.summands.len() {
        return Err(Error::Precondition("cocone arity mismatch".into()));
    }
    match cat.kind() {
        CatKind::FinSet => {
            let tgt = if let Some(first) = cocone.first() {
                first.tgt_obj()
            } else {
                return Err(Error::Precondition(
                    "empty cocone needs an explicit target; use from_initial".into(),
                ));
            };
            let mut pairs = Vec::new();
            for (inj, u) in c.injections.iter().zip(cocone) {
                for e in crate::cat::finset::elems(&inj.src_obj())? {
                    pairs.push((
                        crate::cat::finset::apply(inj, e)?,
                        crate::cat::finset::apply(u, e)?,
                    ));
                }
            }
            crate::cat::finset::mor_from_pairs(&c.apex, &tgt, pairs)
        }
        CatKind::Sums(base) => crate::sums::cop_mediator(base, c, cocone),
        CatKind::E2(base) => crate::groupoids::e2::cop_mediator(base, c, cocone),
        CatKind::Psh(base) => crate::presheaves::cop_mediator(base, c, cocone),
        _ => {
            let tgt = cocone
                .first()
                .map(|m| m.tgt_obj())
                .ok_or_else(|| Error::Precondition("empty cocone needs explicit target".into()))?;
            let mut found = None;
            for m in cat.hom(&c.apex, &tgt)? {
                let ok = c
                    .injections
                    .iter()
                    .zip(cocone)
                    .all(|(inj, u)| cat.compose(&m, inj).map(|r| r.key == u.key).unwrap_or(false));
                if ok {
                    if found.is_some() {
                        return Err(Error::BadCertificate("two factorisations out of a coproduct".into()));
                    }
                    found = Some(m);
                }
            }
            found.ok_or_else(|| {
                Error::BadCertificate(format!(
                    "no factorisation out of coproduct {} into {}",
                    c.apex.key, tgt.key
                ))
            })
        }
    }
}

/// Chosen initial object: the empty coproduct.
pub fn initial(cat: &Category) -> Result<Obj> {
    Ok(chosen_coproduct(cat, &[])?.apex)
}

/// The unique morphism from the chosen initial object to `x`.
pub fn from_initial(cat: &Category, x: &Obj) -> Result<Mor> {
    let i = initial(cat)?;
    match cat.kind() {
        CatKind::FinSet => crate::cat::finset::mor_from_pairs(&i, x, []),
        CatKind::Sums(base) => crate::sums::from_initial(base, x),
        CatKind::E2(base) => crate::groupoids::e2::from_initial(base, x),
        CatKind::Psh(base) => crate::presheaves::from_initial(base, x),
        _ => {
            let hs = cat.hom(&i, x)?;
            if hs.len() != 1 {
                return Err(Error::BadCertificate(format!(
                    "initial object {} has {} morphisms to {}",
                    i.key,
                    hs.len(),
                    x.key
                )));
            }
            Ok(hs.into_iter().next().unwrap())
        }
    }
}
