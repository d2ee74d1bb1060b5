//! The finite-index sums completion of a lex base category.
//!
//! An object is a finite ordered family of base objects; a morphism is a
//! reindexing function together with a componentwise family of base
//! morphisms. Hom-sets multiply out componentwise, the terminal object is
//! the singleton family on the base terminal, pullbacks fiber the index
//! sets, and coproducts concatenate with positional tags.

use crate::cat::{CatKind, Category, Mor, Obj};
use crate::classify;
use crate::error::{guard_cap, Error, Result};
use crate::key::Key;
use crate::limits::{self, Coproduct, LimitCert, ProbeScope, PullbackSq};
use crate::report::{AuditReport, Verdict};

/// Category of finite-index sums over `base`. The base must have a
/// validated chosen terminal (lex entry point); pullbacks are consulted
/// on demand.
pub fn sums_category(base: &Category) -> Result<Category> {
    let t = limits::chosen_terminal(base)?;
    limits::validate_terminal(base, &t)?;
    Ok(Category::new(
        CatKind::Sums(base.clone()),
        format!("sums-over({})", base.name()),
    ))
}

/// Component object keys of a sum object, in index order.
pub fn components(x: &Obj) -> Result<Vec<Obj>> {
    let parts = x
        .key
        .as_seq()
        .ok_or_else(|| Error::Malformed(format!("sum object must be a sequence: {}", x.key)))?;
    Ok(parts.iter().cloned().map(Obj::new).collect())
}

pub fn sum_obj(family: impl IntoIterator<Item = Obj>) -> Obj {
    Obj::new(Key::seq(family.into_iter().map(|o| o.key)))
}

/// Embedding of a base object as the singleton-index sum.
pub fn embed_obj(x: &Obj) -> Obj {
    sum_obj([x.clone()])
}

pub fn embed_mor(m: &Mor) -> Mor {
    encode_mor(
        &embed_obj(&m.src_obj()),
        &embed_obj(&m.tgt_obj()),
        &[0],
        &[m.clone()],
    )
}

pub fn encode_mor(src: &Obj, tgt: &Obj, index_fun: &[usize], comps: &[Mor]) -> Mor {
    let ifun = Key::seq(
        index_fun
            .iter()
            .enumerate()
            .map(|(i, j)| Key::pair(Key::Nat(i as u64), Key::Nat(*j as u64))),
    );
    let ckeys = Key::seq(comps.iter().map(|m| m.key.clone()));
    Mor::new(src.key.clone(), tgt.key.clone(), Key::seq([ifun, ckeys]))
}

/// Splits a sum morphism into its reindexing function and components.
pub fn decode_mor(m: &Mor) -> Result<(Vec<usize>, Vec<Mor>)> {
    let parts = m
        .key
        .as_seq()
        .filter(|s| s.len() == 2)
        .ok_or_else(|| Error::Malformed(format!("bad sum morphism key {}", m.key)))?;
    let src = components(&m.src_obj())?;
    let tgt = components(&m.tgt_obj())?;
    let ifun_pairs = parts[0]
        .as_seq()
        .ok_or_else(|| Error::Malformed("bad index function".into()))?;
    let ckeys = parts[1]
        .as_seq()
        .ok_or_else(|| Error::Malformed("bad component list".into()))?;
    if ifun_pairs.len() != src.len() || ckeys.len() != src.len() {
        return Err(Error::Malformed("sum morphism arity mismatch".into()));
    }
    let mut index_fun = Vec::with_capacity(src.len());
    let mut comps = Vec::with_capacity(src.len());
    for (i, (p, ck)) in ifun_pairs.iter().zip(ckeys).enumerate() {
        let pair = p
            .as_seq()
            .filter(|s| s.len() == 2)
            .ok_or_else(|| Error::Malformed("bad index pair".into()))?;
        let j = pair[1]
            .as_nat()
            .ok_or_else(|| Error::Malformed("index must be a natural".into()))? as usize;
        if pair[0].as_nat() != Some(i as u64) || j >= tgt.len() {
            return Err(Error::Malformed("index function out of range".into()));
        }
        index_fun.push(j);
        comps.push(Mor::new(src[i].key.clone(), tgt[j].key.clone(), ck.clone()));
    }
    Ok((index_fun, comps))
}

pub fn check_object(base: &Category, x: &Obj) -> Result<()> {
    for c in components(x)? {
        base.check_object(&c)?;
    }
    Ok(())
}

pub fn hom(base: &Category, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
    let xs = components(x)?;
    let ys = components(y)?;
    // per index: every (target index, base morphism) choice
    let mut choices: Vec<Vec<(usize, Mor)>> = Vec::with_capacity(xs.len());
    for xi in &xs {
        let mut cs = Vec::new();
        for (j, yj) in ys.iter().enumerate() {
            for m in base.hom(xi, yj)? {
                cs.push((j, m));
            }
        }
        choices.push(cs);
    }
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    guard_cap(total)?;
    if choices.iter().any(|c| c.is_empty()) && !xs.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; xs.len()];
    loop {
        let index_fun: Vec<usize> = idx.iter().zip(&choices).map(|(&i, c)| c[i].0).collect();
        let comps: Vec<Mor> = idx.iter().zip(&choices).map(|(&i, c)| c[i].1.clone()).collect();
        out.push(encode_mor(x, y, &index_fun, &comps));
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
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
    }
}

pub fn identity(base: &Category, x: &Obj) -> Result<Mor> {
    let xs = components(x)?;
    let index_fun: Vec<usize> = (0..xs.len()).collect();
    let comps = xs
        .iter()
        .map(|c| base.identity(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(encode_mor(x, x, &index_fun, &comps))
}

pub fn compose(base: &Category, g: &Mor, f: &Mor) -> Result<Mor> {
    let (fi, fc) = decode_mor(f)?;
    let (gi, gc) = decode_mor(g)?;
    let mut index_fun = Vec::with_capacity(fi.len());
    let mut comps = Vec::with_capacity(fi.len());
    for (i, &j) in fi.iter().enumerate() {
        index_fun.push(gi[j]);
        comps.push(base.compose(&gc[j], &fc[i])?);
    }
    Ok(encode_mor(&f.src_obj(), &g.tgt_obj(), &index_fun, &comps))
}

pub fn terminal(base: &Category) -> Result<Obj> {
    let t = limits::chosen_terminal(base)?;
    Ok(embed_obj(&t.obj))
}

pub fn to_terminal(base: &Category, x: &Obj) -> Result<Mor> {
    let xs = components(x)?;
    let t = terminal(base)?;
    let index_fun = vec![0usize; xs.len()];
    let comps = xs
        .iter()
        .map(|c| limits::to_terminal(base, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(encode_mor(x, &t, &index_fun, &comps))
}

/// Pullback: the index set fibers over the cospan's index functions and
/// each component is the chosen base pullback.
pub fn pullback(base: &Category, sums_cat: &Category, f: &Mor, g: &Mor) -> Result<PullbackSq> {
    let (fi, fc) = decode_mor(f)?;
    let (gi, gc) = decode_mor(g)?;
    let mut apex_comps = Vec::new();
    let mut pairs = Vec::new();
    let mut p1_comps = Vec::new();
    let mut p2_comps = Vec::new();
    for (i, &k1) in fi.iter().enumerate() {
        for (j, &k2) in gi.iter().enumerate() {
            if k1 != k2 {
                continue;
            }
            let sq = limits::chosen_pullback(base, &fc[i], &gc[j])?;
            apex_comps.push(sq.apex.clone());
            pairs.push((i, j));
            p1_comps.push(sq.p1.clone());
            p2_comps.push(sq.p2.clone());
        }
    }
    let apex = sum_obj(apex_comps);
    let p1 = encode_mor(
        &apex,
        &f.src_obj(),
        &pairs.iter().map(|(i, _)| *i).collect::<Vec<_>>(),
        &p1_comps,
    );
    let p2 = encode_mor(
        &apex,
        &g.src_obj(),
        &pairs.iter().map(|(_, j)| *j).collect::<Vec<_>>(),
        &p2_comps,
    );
    let scope = if sums_cat.declared_probes().is_empty() {
        ProbeScope::Formula
    } else {
        ProbeScope::Declared(sums_cat.declared_probes().to_vec())
    };
    Ok(PullbackSq {
        f: f.clone(),
        g: g.clone(),
        apex,
        p1,
        p2,
        cert: LimitCert { scope },
    })
}

pub fn pb_mediator(
    base: &Category,
    _sums_cat: &Category,
    sq: &PullbackSq,
    u: &Mor,
    v: &Mor,
) -> Result<Mor> {
    let (fi, fc) = decode_mor(&sq.f)?;
    let (gi, _) = decode_mor(&sq.g)?;
    let (ui, uc) = decode_mor(u)?;
    let (vi, vc) = decode_mor(v)?;
    // apex index order replays the fiber enumeration
    let mut fiber = Vec::new();
    for (i, &k1) in fi.iter().enumerate() {
        for (j, &k2) in gi.iter().enumerate() {
            if k1 == k2 {
                fiber.push((i, j));
            }
        }
    }
    let mut index_fun = Vec::new();
    let mut comps = Vec::new();
    for w in 0..ui.len() {
        let (i, j) = (ui[w], vi[w]);
        let pos = fiber
            .iter()
            .position(|&(a, b)| a == i && b == j)
            .ok_or_else(|| Error::Precondition("mediator cone does not commute on indices".into()))?;
        let comp_sq = limits::chosen_pullback(base, &fc[i], &decode_mor(&sq.g)?.1[j])?;
        comps.push(limits::pb_mediator(base, &comp_sq, &uc[w], &vc[w])?);
        index_fun.push(pos);
    }
    Ok(encode_mor(&u.src_obj(), &sq.apex, &index_fun, &comps))
}

/// Disjoint union of index sets with identity components on injections.
pub fn coproduct(_base: &Category, summands: &[Obj]) -> Result<Coproduct> {
    let mut family = Vec::new();
    let mut offsets = Vec::new();
    for s in summands {
        offsets.push(family.len());
        family.extend(components(s)?);
    }
    let apex = sum_obj(family.clone());
    let mut injections = Vec::new();
    for (k, s) in summands.iter().enumerate() {
        let cs = components(s)?;
        let index_fun: Vec<usize> = (0..cs.len()).map(|i| offsets[k] + i).collect();
        let comps = cs
            .iter()
            .map(|c| _base.identity(c))
            .collect::<Result<Vec<_>>>()?;
        injections.push(encode_mor(s, &apex, &index_fun, &comps));
    }
    Ok(Coproduct {
        summands: summands.to_vec(),
        apex,
        injections,
    })
}

pub fn cop_mediator(_base: &Category, c: &Coproduct, cocone: &[Mor]) -> Result<Mor> {
    let tgt = cocone
        .first()
        .map(|m| m.tgt_obj())
        .ok_or_else(|| Error::Precondition("empty cocone needs explicit target".into()))?;
    let mut index_fun = Vec::new();
    let mut comps = Vec::new();
    for u in cocone {
        let (ui, uc) = decode_mor(u)?;
        index_fun.extend(ui);
        comps.extend(uc);
    }
    Ok(encode_mor(&c.apex, &tgt, &index_fun, &comps))
}

pub fn from_initial(_base: &Category, x: &Obj) -> Result<Mor> {
    Ok(encode_mor(&sum_obj([]), x, &[], &[]))
}

/// Least lift of `f` through `p` (targets agree), chosen index by index.
pub fn lift(base: &Category, p: &Mor, f: &Mor) -> Result<Option<Mor>> {
    let (pi, pc) = decode_mor(p)?;
    let (fi, fc) = decode_mor(f)?;
    let mut index_fun = Vec::new();
    let mut comps = Vec::new();
    for d in 0..fi.len() {
        let k = fi[d];
        let mut found = None;
        for (w, &pw) in pi.iter().enumerate() {
            if pw != k {
                continue;
            }
            if let Some(h) = base.lift(&pc[w], &fc[d])? {
                found = Some((w, h));
                break;
            }
        }
        match found {
            Some((w, h)) => {
                index_fun.push(w);
                comps.push(h);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(encode_mor(&f.src_obj(), &p.src_obj(), &index_fun, &comps)))
}

/// Indexwise least `q∘h` over lifts `h` of `f` through `p`: per source
/// index, minimize the target index first and the component second,
/// recursing into the base for component minima.
pub fn min_push(base: &Category, p: &Mor, q: &Mor, f: &Mor) -> Result<Option<Mor>> {
    let (pi, pc) = decode_mor(p)?;
    let (qi, qc) = decode_mor(q)?;
    let (fi, fc) = decode_mor(f)?;
    let mut index_fun = Vec::new();
    let mut comps = Vec::new();
    for d in 0..fi.len() {
        let mut best: Option<(usize, Mor)> = None;
        for (w, &pw) in pi.iter().enumerate() {
            if pw != fi[d] {
                continue;
            }
            if let Some(pushed) = base.min_push(&pc[w], &qc[w], &fc[d])? {
                let cand = (qi[w], pushed);
                let better = match &best {
                    None => true,
                    Some((bj, bm)) => cand.0 < *bj || (cand.0 == *bj && cand.1.key < bm.key),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        match best {
            Some((j, m)) => {
                index_fun.push(j);
                comps.push(m);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(encode_mor(&f.src_obj(), &q.tgt_obj(), &index_fun, &comps)))
}

/// Deterministic evenly-spaced selection used to bound quantifier loops;
/// `None` keeps the whole family.
pub fn select_maps(all: Vec<Mor>, cap: Option<usize>) -> Vec<Mor> {
    match cap {
        Some(cap) if all.len() > cap && cap > 0 => {
            let stride = all.len() as f64 / cap as f64;
            (0..cap)
                .map(|i| all[(i as f64 * stride) as usize].clone())
                .collect()
        }
        _ => all,
    }
}

/// Audits that coproducts in `cat` are universal and disjoint over the
/// grid objects, with hom-set quantifiers optionally capped by an
/// evenly-spaced selection. Failures carry the offending cospan or pair.
pub fn check_extensivity_capped(
    cat: &Category,
    grid: &[Obj],
    suite: &str,
    map_cap: Option<usize>,
) -> Result<AuditReport> {
    let mut report = AuditReport::new();
    if !cat.has_coproducts() {
        report.push(
            suite,
            cat.name(),
            "coproducts-universal",
            Verdict::Fail("no coproducts certificate".into()),
        );
        report.push(
            suite,
            cat.name(),
            "coproducts-disjoint",
            Verdict::Fail("no coproducts certificate".into()),
        );
        return Ok(report);
    }
    let probes = cat.probe_objects();
    let probes = if probes.is_empty() { grid.to_vec() } else { probes };
    // universality over all two-summand cospans from the grid
    for x1 in grid {
        for x2 in grid {
            let cop = limits::chosen_coproduct(cat, &[x1.clone(), x2.clone()])?;
            for z in grid {
                for u in select_maps(cat.hom(&cop.apex, z)?, map_cap) {
                    for y in grid {
                        for v in select_maps(cat.hom(y, z)?, map_cap) {
                            let verdict = universality_verdict(cat, &cop, &u, &v, &probes);
                            let instance = format!(
                                "[{}+{}]->{}<-{}",
                                x1.key, x2.key, z.key, y.key
                            );
                            report.push(suite, instance, "coproducts-universal", verdict?);
                        }
                    }
                }
            }
        }
    }
    // disjointness over all grid pairs
    for x in grid {
        for y in grid {
            let cop = limits::chosen_coproduct(cat, &[x.clone(), y.clone()])?;
            let sq = match limits::chosen_pullback(cat, &cop.injections[0], &cop.injections[1]) {
                Ok(sq) => sq,
                Err(e) => {
                    report.push(
                        suite,
                        format!("{}+{}", x.key, y.key),
                        "coproducts-disjoint",
                        Verdict::Skipped(format!("{e}")),
                    );
                    continue;
                }
            };
            let canonical = limits::from_initial(cat, &sq.apex)?;
            let verdict = if classify::is_iso(cat, &canonical)? {
                Verdict::Pass
            } else {
                Verdict::Fail(format!(
                    "initial -> {} is not invertible",
                    sq.apex.key
                ))
            };
            report.push(suite, format!("{}+{}", x.key, y.key), "coproducts-disjoint", verdict);
        }
    }
    Ok(report)
}

/// Uncapped extensivity audit.
pub fn check_extensivity(cat: &Category, grid: &[Obj], suite: &str) -> Result<AuditReport> {
    check_extensivity_capped(cat, grid, suite, None)
}

fn universality_verdict(
    cat: &Category,
    cop: &Coproduct,
    u: &Mor,
    v: &Mor,
    _probes: &[Obj],
) -> Result<Verdict> {
    // lhs: coproduct of the componentwise pullbacks
    let mut pieces = Vec::new();
    let mut piece_sqs = Vec::new();
    for inj in &cop.injections {
        let leg = cat.compose(u, inj)?;
        match limits::chosen_pullback(cat, &leg, v) {
            Ok(sq) => {
                pieces.push(sq.apex.clone());
                piece_sqs.push(sq);
            }
            Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
        }
    }
    let lhs = limits::chosen_coproduct(cat, &pieces)?;
    // rhs: pullback of the whole cospan
    let rhs = match limits::chosen_pullback(cat, u, v) {
        Ok(sq) => sq,
        Err(e) => return Ok(Verdict::Skipped(format!("{e}"))),
    };
    // canonical comparison: each piece maps into the big pullback
    let mut legs = Vec::new();
    for (inj, sq) in cop.injections.iter().zip(&piece_sqs) {
        let into_sum = cat.compose(inj, &sq.p1)?;
        legs.push(limits::pb_mediator(cat, &rhs, &into_sum, &sq.p2)?);
    }
    let canonical = limits::cop_mediator(cat, &lhs, &legs)?;
    if classify::is_iso(cat, &canonical)? {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail(format!(
            "comparison {} -> {} is not invertible",
            lhs.apex.key, rhs.apex.key
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::tabulated::TabulatedData;

    fn terminal_category() -> Category {
        let mut d = TabulatedData::new();
        d.add_object(Key::sym("*"));
        d.add_morphism(Key::sym("id"), Key::sym("*"), Key::sym("*"));
        d.set_identity(Key::sym("*"), Key::sym("id"));
        d.set_composite(Key::sym("id"), Key::sym("id"), Key::sym("id"));
        Category::tabulated(d, "pt").unwrap()
    }

    fn cardinal(s: &Category, n: usize) -> Obj {
        let base = Obj::new(Key::sym("*"));
        let _ = s;
        sum_obj(std::iter::repeat(base).take(n))
    }

    #[test]
    fn sums_over_point_behave_like_finite_sets() {
        let base = terminal_category();
        let s = sums_category(&base).unwrap();
        let x = cardinal(&s, 2);
        let y = cardinal(&s, 3);
        // hom(X, Y) counts index functions
        assert_eq!(s.hom(&x, &y).unwrap().len(), 9);
        // empty index set: exactly one morphism to every object
        let empty = sum_obj([]);
        assert_eq!(s.hom(&empty, &y).unwrap().len(), 1);
        // strict initial: morphisms into the empty sum need empty source
        assert_eq!(s.hom(&y, &empty).unwrap().len(), 0);
        assert_eq!(s.hom(&empty, &empty).unwrap().len(), 1);
    }

    #[test]
    fn embedding_is_fully_faithful() {
        let base = terminal_category();
        let s = sums_category(&base).unwrap();
        let c = Obj::new(Key::sym("*"));
        let e = embed_obj(&c);
        assert_eq!(
            s.hom(&e, &e).unwrap().len(),
            base.hom(&c, &c).unwrap().len()
        );
    }

    #[test]
    fn pullback_fibres_the_index_sets() {
        let base = terminal_category();
        let s = sums_category(&base).unwrap();
        let x = cardinal(&s, 2);
        let z = cardinal(&s, 1);
        let y = cardinal(&s, 1);
        let f = s.hom(&x, &z).unwrap()[0].clone();
        let g = s.hom(&y, &z).unwrap()[0].clone();
        let sq = limits::chosen_pullback(&s, &f, &g).unwrap();
        assert_eq!(components(&sq.apex).unwrap().len(), 2);
        limits::validate_pullback(
            &s.with_probes(vec![x.key.clone(), y.key.clone(), z.key.clone()]),
            &crate::limits::PullbackSq {
                cert: crate::limits::LimitCert {
                    scope: crate::limits::ProbeScope::Declared(vec![
                        x.key.clone(),
                        y.key.clone(),
                        z.key.clone(),
                    ]),
                },
                ..sq
            },
        )
        .unwrap();
    }

    #[test]
    fn coproduct_concatenates_with_tags() {
        let base = terminal_category();
        let s = sums_category(&base).unwrap();
        let x = cardinal(&s, 2);
        let c = limits::chosen_coproduct(&s, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(components(&c.apex).unwrap().len(), 4);
        let empty = limits::chosen_coproduct(&s, &[]).unwrap();
        assert_eq!(components(&empty.apex).unwrap().len(), 0);
    }
}
