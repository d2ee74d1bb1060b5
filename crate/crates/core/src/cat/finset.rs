//! Finite sets with canonical keyed elements.
//!
//! An object is the sorted sequence of its element keys; a morphism is the
//! graph of a function, stored as a sorted pair list. Hom-sets enumerate
//! all functions in lexicographic order over the domain's element order.

use crate::error::{guard_cap, Error, Result};
use crate::key::Key;

use super::{Mor, Obj};

pub fn check_object(x: &Obj) -> Result<()> {
    let elems = x
        .key
        .as_seq()
        .ok_or_else(|| Error::Malformed(format!("finset object must be a sequence: {}", x.key)))?;
    for w in elems.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Malformed(format!(
                "finset object elements must be sorted and unique: {}",
                x.key
            )));
        }
    }
    Ok(())
}

pub fn elems(x: &Obj) -> Result<&[Key]> {
    check_object(x)?;
    Ok(x.key.as_seq().unwrap())
}

pub fn obj(elements: impl IntoIterator<Item = Key>) -> Obj {
    Obj::new(Key::set(elements))
}

/// The designated singleton.
pub fn terminal_obj() -> Obj {
    obj([Key::Unit])
}

pub fn initial_obj() -> Obj {
    obj([])
}

/// Builds the morphism with graph `{(x, f(x))}`; pairs need not be sorted.
pub fn mor_from_pairs(
    src: &Obj,
    tgt: &Obj,
    pairs: impl IntoIterator<Item = (Key, Key)>,
) -> Result<Mor> {
    let dom = elems(src)?;
    let cod = elems(tgt)?;
    let mut graph: Vec<(Key, Key)> = pairs.into_iter().collect();
    graph.sort();
    let xs: Vec<&Key> = graph.iter().map(|(x, _)| x).collect();
    if xs.len() != dom.len() || !dom.iter().zip(&xs).all(|(a, b)| a == *b) {
        return Err(Error::Malformed("function graph does not cover the domain".into()));
    }
    for (_, y) in &graph {
        if !cod.contains(y) {
            return Err(Error::DanglingRef(format!("value {y} outside codomain")));
        }
    }
    let key = Key::seq(graph.into_iter().map(|(x, y)| Key::pair(x, y)));
    Ok(Mor::new(src.key.clone(), tgt.key.clone(), key))
}

pub fn apply(m: &Mor, x: &Key) -> Result<Key> {
    let graph = m
        .key
        .as_seq()
        .ok_or_else(|| Error::Malformed("finset morphism key must be a pair list".into()))?;
    for p in graph {
        let pq = p.as_seq().filter(|s| s.len() == 2);
        let pq = pq.ok_or_else(|| Error::Malformed("bad graph entry".into()))?;
        if &pq[0] == x {
            return Ok(pq[1].clone());
        }
    }
    Err(Error::DanglingRef(format!("{x} not in domain of {}", m.key)))
}

pub fn hom(x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
    let dom = elems(x)?;
    let cod = elems(y)?;
    if dom.is_empty() {
        return Ok(vec![mor_from_pairs(x, y, [])?]);
    }
    if cod.is_empty() {
        return Ok(vec![]);
    }
    guard_cap((cod.len() as u128).pow(dom.len() as u32))?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; dom.len()];
    loop {
        out.push(mor_from_pairs(
            x,
            y,
            dom.iter()
                .zip(&choice)
                .map(|(d, &c)| (d.clone(), cod[c].clone())),
        )?);
        // next assignment in lexicographic order
        let mut i = dom.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if choice[i] + 1 < cod.len() {
                choice[i] += 1;
                for c in choice[i + 1..].iter_mut() {
                    *c = 0;
                }
                break;
            }
        }
    }
}

pub fn identity(x: &Obj) -> Result<Mor> {
    let dom = elems(x)?;
    mor_from_pairs(x, x, dom.iter().map(|e| (e.clone(), e.clone())))
}

pub fn compose(g: &Mor, f: &Mor) -> Result<Mor> {
    let dom = f
        .key
        .as_seq()
        .ok_or_else(|| Error::Malformed("bad finset morphism".into()))?;
    let mut pairs = Vec::with_capacity(dom.len());
    for p in dom {
        let pq = p.as_seq().unwrap();
        pairs.push((pq[0].clone(), apply(g, &pq[1])?));
    }
    Ok(Mor::new(
        f.src.clone(),
        g.tgt.clone(),
        Key::seq(pairs.into_iter().map(|(x, y)| Key::pair(x, y))),
    ))
}

/// Constant map onto a chosen element of the target.
pub fn constant(src: &Obj, tgt: &Obj, value: &Key) -> Result<Mor> {
    mor_from_pairs(src, tgt, elems(src)?.iter().map(|e| (e.clone(), value.clone())))
}

/// Fiber product `{(x, y) : f(x) = g(y)}` with pair elements.
pub fn fiber_product(f: &Mor, g: &Mor) -> Result<(Obj, Mor, Mor)> {
    let xs = elems(&f.src_obj())?.to_vec();
    let ys = elems(&g.src_obj())?.to_vec();
    let mut pairs = Vec::new();
    for x in &xs {
        let fx = apply(f, x)?;
        for y in &ys {
            if fx == apply(g, y)? {
                pairs.push(Key::pair(x.clone(), y.clone()));
            }
        }
    }
    let apex = obj(pairs);
    let p1 = mor_from_pairs(
        &apex,
        &f.src_obj(),
        elems(&apex)?
            .iter()
            .map(|p| (p.clone(), p.as_seq().unwrap()[0].clone())),
    )?;
    let p2 = mor_from_pairs(
        &apex,
        &g.src_obj(),
        elems(&apex)?
            .iter()
            .map(|p| (p.clone(), p.as_seq().unwrap()[1].clone())),
    )?;
    Ok((apex, p1, p2))
}

/// Least lift `h` with `p ∘ h = f`, chosen pointwise, if the image of `f`
/// lies inside the image of `p`.
pub fn lift(p: &Mor, f: &Mor) -> Result<Option<Mor>> {
    let dom = elems(&f.src_obj())?.to_vec();
    let pw = elems(&p.src_obj())?.to_vec();
    let mut pairs = Vec::with_capacity(dom.len());
    for x in &dom {
        let fx = apply(f, x)?;
        // pw is sorted, so the first preimage is the least one
        let mut found = None;
        for w in &pw {
            if apply(p, w)? == fx {
                found = Some(w.clone());
                break;
            }
        }
        match found {
            Some(w) => pairs.push((x.clone(), w)),
            None => return Ok(None),
        }
    }
    Ok(Some(mor_from_pairs(&f.src_obj(), &p.src_obj(), pairs)?))
}

/// Pointwise least `q∘h` over lifts `h` of `f` through `p`: at each point
/// the minimum of the q-image of the p-fiber.
pub fn min_push(p: &Mor, q: &Mor, f: &Mor) -> Result<Option<Mor>> {
    let dom = elems(&f.src_obj())?.to_vec();
    let fibre = elems(&p.src_obj())?.to_vec();
    let mut pairs = Vec::with_capacity(dom.len());
    for x in &dom {
        let fx = apply(f, x)?;
        let mut best: Option<Key> = None;
        for w in &fibre {
            if apply(p, w)? == fx {
                let qv = apply(q, w)?;
                if best.as_ref().map(|b| qv < *b).unwrap_or(true) {
                    best = Some(qv);
                }
            }
        }
        match best {
            Some(v) => pairs.push((x.clone(), v)),
            None => return Ok(None),
        }
    }
    Ok(Some(mor_from_pairs(&f.src_obj(), &q.tgt_obj(), pairs)?))
}

/// Tagged disjoint union; the i-th summand's elements become `[i, e]`.
pub fn coproduct(summands: &[Obj]) -> Result<(Obj, Vec<Mor>)> {
    let mut all = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        for e in elems(s)? {
            all.push(Key::pair(Key::Nat(i as u64), e.clone()));
        }
    }
    let apex = obj(all);
    let mut injections = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        injections.push(mor_from_pairs(
            s,
            &apex,
            elems(s)?
                .iter()
                .map(|e| (e.clone(), Key::pair(Key::Nat(i as u64), e.clone()))),
        )?);
    }
    Ok((apex, injections))
}

/// Canonical quotient of a set by the equivalence closure of a pair list:
/// each element maps to the least member of its block.
pub fn partition_quotient(x: &Obj, related: &[(Key, Key)]) -> Result<(Obj, Mor)> {
    let dom = elems(x)?.to_vec();
    let idx = |k: &Key| -> Result<usize> {
        dom.binary_search(k)
            .map_err(|_| Error::DanglingRef(format!("{k} not an element of {}", x.key)))
    };
    let mut parent: Vec<usize> = (0..dom.len()).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (a, b) in related {
        let (ra, rb) = (root(&mut parent, idx(a)?), root(&mut parent, idx(b)?));
        // keep the least element as the block root
        let (lo, hi) = if dom[ra] <= dom[rb] { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
    let reps: Vec<Key> = (0..dom.len()).map(|i| dom[root(&mut parent.clone(), i)].clone()).collect();
    let quotient = obj(reps.iter().cloned());
    let proj = mor_from_pairs(x, &quotient, dom.iter().cloned().zip(reps.iter().cloned()))?;
    Ok((quotient, proj))
}

/// Image factorisation data: the image subset of the codomain with the
/// corestriction and inclusion.
pub fn image(f: &Mor) -> Result<(Obj, Mor, Mor)> {
    let dom = elems(&f.src_obj())?.to_vec();
    let mut img = Vec::new();
    for x in &dom {
        img.push(apply(f, x)?);
    }
    let im = obj(img);
    let e = mor_from_pairs(&f.src_obj(), &im, dom.iter().map(|x| (x.clone(), apply(f, x).unwrap())))?;
    let m = mor_from_pairs(&im, &f.tgt_obj(), elems(&im)?.iter().map(|y| (y.clone(), y.clone())))?;
    Ok((im, e, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts_functions() {
        let x = obj([Key::Nat(1), Key::Nat(2)]);
        let y = obj([Key::sym("a"), Key::sym("b"), Key::sym("c")]);
        assert_eq!(hom(&x, &y).unwrap().len(), 9);
        // empty domain: exactly one map; empty codomain: none from nonempty
        assert_eq!(hom(&initial_obj(), &y).unwrap().len(), 1);
        assert_eq!(hom(&x, &initial_obj()).unwrap().len(), 0);
    }

    #[test]
    fn compose_and_identity() {
        let x = obj([Key::Nat(1), Key::Nat(2)]);
        let id = identity(&x).unwrap();
        let f = mor_from_pairs(&x, &x, [(Key::Nat(1), Key::Nat(2)), (Key::Nat(2), Key::Nat(2))]).unwrap();
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert_eq!(compose(&id, &f).unwrap(), f);
    }

    #[test]
    fn fiber_product_size() {
        let x = obj([Key::Nat(1), Key::Nat(2)]);
        let z = terminal_obj();
        let f = constant(&x, &z, &Key::Unit).unwrap();
        let (apex, _, _) = fiber_product(&f, &f).unwrap();
        assert_eq!(elems(&apex).unwrap().len(), 4);
    }

    #[test]
    fn partition_uses_min_representatives() {
        let x = obj([Key::Nat(1), Key::Nat(2), Key::Nat(3)]);
        let (q, proj) = partition_quotient(&x, &[(Key::Nat(1), Key::Nat(2))]).unwrap();
        assert_eq!(elems(&q).unwrap().len(), 2);
        assert_eq!(apply(&proj, &Key::Nat(2)).unwrap(), Key::Nat(1));
        assert_eq!(apply(&proj, &Key::Nat(3)).unwrap(), Key::Nat(3));
    }
}
