//! Brute-force finite-valued presheaves on a base with enumerable
//! objects and hom-sets: value and action tables, natural transformations
//! by exhaustive component search, pointwise limits and colimits, the
//! Yoneda embedding, and the comparison with 2-groupoids of sums.

pub mod compare;

#[cfg(test)]
mod compare_tests;

use std::collections::BTreeMap;

use crate::cat::{CatKind, Category, Mor, Obj};
use crate::error::{guard_cap, Error, Result};
use crate::key::Key;
use crate::limits::{Coproduct, LimitCert, ProbeScope, PullbackSq};

/// Functor from the opposite of the base to finite sets, given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafTable {
    pub values: BTreeMap<Key, Vec<Key>>,
    /// morphism key -> (element of the target value -> element of the
    /// source value); contravariant.
    pub actions: BTreeMap<Key, BTreeMap<Key, Key>>,
}

pub(crate) fn base_objects(base: &Category) -> Result<Vec<Obj>> {
    base.objects()
        .ok_or_else(|| Error::Precondition("presheaves need an enumerable base".into()))
}

pub(crate) fn base_morphisms(base: &Category) -> Result<Vec<Mor>> {
    let objs = base_objects(base)?;
    let mut out = Vec::new();
    for x in &objs {
        for y in &objs {
            out.extend(base.hom(x, y)?);
        }
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

impl PresheafTable {
    /// Validates totality and functoriality of the tables against the
    /// base: identities act as identities and composition is respected.
    pub fn validate(&self, base: &Category) -> Result<()> {
        let objs = base_objects(base)?;
        for x in &objs {
            if !self.values.contains_key(&x.key) {
                return Err(Error::Malformed(format!("presheaf misses a value at {}", x.key)));
            }
        }
        for m in base_morphisms(base)? {
            let act = self
                .actions
                .get(&m.key)
                .ok_or_else(|| Error::Malformed(format!("presheaf misses the action of {}", m.key)))?;
            let tgt_val = &self.values[&m.tgt];
            let src_val = &self.values[&m.src];
            if act.len() != tgt_val.len() {
                return Err(Error::Malformed(format!("action of {} is not total", m.key)));
            }
            for (e, v) in act {
                if !tgt_val.contains(e) || !src_val.contains(v) {
                    return Err(Error::DanglingRef(format!("action of {} leaves the tables", m.key)));
                }
            }
        }
        for x in &objs {
            let id = base.identity(x)?;
            for e in &self.values[&x.key] {
                if self.actions[&id.key][e] != *e {
                    return Err(Error::Malformed(format!("identity action at {} moves {e}", x.key)));
                }
            }
        }
        let mors = base_morphisms(base)?;
        for g in &mors {
            for f in &mors {
                if f.tgt != g.src {
                    continue;
                }
                let gf = base.compose(g, f)?;
                for e in &self.values[&g.tgt] {
                    let via = &self.actions[&f.key][&self.actions[&g.key][e]];
                    if self.actions[&gf.key][e] != *via {
                        return Err(Error::Malformed(format!(
                            "composition action fails at ({}, {})",
                            g.key, f.key
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, x: &Key) -> &[Key] {
        self.values.get(x).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn act(&self, m: &Key, e: &Key) -> Result<Key> {
        self.actions
            .get(m)
            .and_then(|a| a.get(e))
            .cloned()
            .ok_or_else(|| Error::DanglingRef(format!("no action entry for {m} at {e}")))
    }

    pub fn to_obj(&self) -> Obj {
        let values = Key::seq(
            self.values
                .iter()
                .map(|(k, v)| Key::seq([k.clone(), Key::seq(v.iter().cloned())])),
        );
        let actions = Key::seq(self.actions.iter().map(|(m, a)| {
            Key::seq([
                m.clone(),
                Key::seq(a.iter().map(|(e, v)| Key::pair(e.clone(), v.clone()))),
            ])
        }));
        Obj::new(Key::seq([values, actions]))
    }

    pub fn from_key(base: &Category, key: &Key) -> Result<PresheafTable> {
        let parts = key
            .as_seq()
            .filter(|s| s.len() == 2)
            .ok_or_else(|| Error::Malformed(format!("bad presheaf key {key}")))?;
        let mut values = BTreeMap::new();
        for entry in parts[0].as_seq().unwrap_or(&[]) {
            let kv = entry
                .as_seq()
                .filter(|s| s.len() == 2)
                .ok_or_else(|| Error::Malformed("bad presheaf value entry".into()))?;
            values.insert(
                kv[0].clone(),
                kv[1].as_seq().unwrap_or(&[]).to_vec(),
            );
        }
        let mut actions = BTreeMap::new();
        for entry in parts[1].as_seq().unwrap_or(&[]) {
            let kv = entry
                .as_seq()
                .filter(|s| s.len() == 2)
                .ok_or_else(|| Error::Malformed("bad presheaf action entry".into()))?;
            let mut table = BTreeMap::new();
            for pair in kv[1].as_seq().unwrap_or(&[]) {
                let p = pair
                    .as_seq()
                    .filter(|s| s.len() == 2)
                    .ok_or_else(|| Error::Malformed("bad action pair".into()))?;
                table.insert(p[0].clone(), p[1].clone());
            }
            actions.insert(kv[0].clone(), table);
        }
        let table = PresheafTable { values, actions };
        table.validate(base)?;
        Ok(table)
    }

    /// Builds a presheaf from per-object values and per-morphism actions,
    /// filling in identity actions.
    pub fn build(
        base: &Category,
        values: BTreeMap<Key, Vec<Key>>,
        mut actions: BTreeMap<Key, BTreeMap<Key, Key>>,
    ) -> Result<PresheafTable> {
        let mut values = values;
        for (_, v) in values.iter_mut() {
            v.sort();
            v.dedup();
        }
        for x in base_objects(base)? {
            let id = base.identity(&x)?;
            actions.entry(id.key.clone()).or_insert_with(|| {
                values
                    .get(&x.key)
                    .map(|v| v.iter().map(|e| (e.clone(), e.clone())).collect())
                    .unwrap_or_default()
            });
        }
        // actions out of an empty value set are forced
        for m in base_morphisms(base)? {
            if values.get(&m.tgt).map(|v| v.is_empty()).unwrap_or(true) {
                actions.entry(m.key.clone()).or_default();
            }
        }
        let t = PresheafTable { values, actions };
        t.validate(base)?;
        Ok(t)
    }
}

/// The category of finite-valued presheaves over an enumerable base.
pub fn psh_category(base: &Category) -> Result<Category> {
    base_objects(base)?;
    Ok(Category::new(
        CatKind::Psh(base.clone()),
        format!("psh-over({})", base.name()),
    ))
}

/// Yoneda embedding: values are hom-sets into `x`, actions precompose.
pub fn yoneda(base: &Category, x: &Obj) -> Result<PresheafTable> {
    let objs = base_objects(base)?;
    let mut values = BTreeMap::new();
    for v in &objs {
        values.insert(
            v.key.clone(),
            base.hom(v, x)?.iter().map(|m| m.key.clone()).collect::<Vec<_>>(),
        );
    }
    let mut actions = BTreeMap::new();
    for f in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for m in base.hom(&f.tgt_obj(), x)? {
            table.insert(m.key.clone(), base.compose(&m, &f)?.key);
        }
        actions.insert(f.key.clone(), table);
    }
    PresheafTable::build(base, values, actions)
}

pub fn check_object(base: &Category, x: &Obj) -> Result<()> {
    PresheafTable::from_key(base, &x.key).map(|_| ())
}

/// Natural transformations by exhaustive component search with
/// naturality pruning, in lexicographic component order.
pub fn hom(base: &Category, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
    let f = PresheafTable::from_key(base, &x.key)?;
    let g = PresheafTable::from_key(base, &y.key)?;
    let objs = base_objects(base)?;
    let mors = base_morphisms(base)?;
    let mut total: u128 = 1;
    for o in &objs {
        let fv = f.value(&o.key).len() as u128;
        let gv = g.value(&o.key).len() as u128;
        if fv > 0 && gv == 0 {
            return Ok(vec![]);
        }
        total = total.saturating_mul(gv.max(1).pow(fv as u32));
    }
    guard_cap(total)?;
    let mut out = Vec::new();
    let mut components: Vec<BTreeMap<Key, Key>> = Vec::new();
    search_nt(base, &f, &g, &objs, &mors, 0, &mut components, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_nt(
    base: &Category,
    f: &PresheafTable,
    g: &PresheafTable,
    objs: &[Obj],
    mors: &[Mor],
    depth: usize,
    components: &mut Vec<BTreeMap<Key, Key>>,
    out: &mut Vec<Mor>,
) -> Result<()> {
    if depth == objs.len() {
        out.push(encode_nt(&f.to_obj(), &g.to_obj(), objs, components));
        return Ok(());
    }
    let x = &objs[depth];
    let dom = f.value(&x.key).to_vec();
    let cod = g.value(&x.key).to_vec();
    if dom.is_empty() {
        components.push(BTreeMap::new());
        natural_then_recurse(base, f, g, objs, mors, depth, components, out)?;
        components.pop();
        return Ok(());
    }
    if cod.is_empty() {
        return Ok(());
    }
    let mut idx = vec![0usize; dom.len()];
    loop {
        let table: BTreeMap<Key, Key> = dom
            .iter()
            .zip(&idx)
            .map(|(d, &i)| (d.clone(), cod[i].clone()))
            .collect();
        components.push(table);
        natural_then_recurse(base, f, g, objs, mors, depth, components, out)?;
        components.pop();
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            if idx[k] + 1 < cod.len() {
                idx[k] += 1;
                for v in idx[k + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn natural_then_recurse(
    base: &Category,
    f: &PresheafTable,
    g: &PresheafTable,
    objs: &[Obj],
    mors: &[Mor],
    depth: usize,
    components: &mut Vec<BTreeMap<Key, Key>>,
    out: &mut Vec<Mor>,
) -> Result<()> {
    // check naturality for every base morphism between assigned objects
    let assigned = |k: &Key| objs[..=depth].iter().position(|o| o.key == *k);
    for m in mors {
        let (Some(si), Some(ti)) = (assigned(&m.src), assigned(&m.tgt)) else {
            continue;
        };
        for e in f.value(&m.tgt) {
            // η_src(F(m)(e)) must equal G(m)(η_tgt(e))
            let lhs = &components[si][&f.act(&m.key, e)?];
            let rhs = g.act(&m.key, &components[ti][e])?;
            if *lhs != rhs {
                return Ok(());
            }
        }
    }
    search_nt(base, f, g, objs, mors, depth + 1, components, out)
}

pub(crate) fn encode_nt(x: &Obj, y: &Obj, objs: &[Obj], components: &[BTreeMap<Key, Key>]) -> Mor {
    let key = Key::seq(objs.iter().zip(components).map(|(o, table)| {
        Key::seq([
            o.key.clone(),
            Key::seq(table.iter().map(|(a, b)| Key::pair(a.clone(), b.clone()))),
        ])
    }));
    Mor::new(x.key.clone(), y.key.clone(), key)
}

fn decode_nt(m: &Mor) -> Result<BTreeMap<Key, BTreeMap<Key, Key>>> {
    let mut out = BTreeMap::new();
    for entry in m
        .key
        .as_seq()
        .ok_or_else(|| Error::Malformed("bad transformation key".into()))?
    {
        let kv = entry
            .as_seq()
            .filter(|s| s.len() == 2)
            .ok_or_else(|| Error::Malformed("bad transformation entry".into()))?;
        let mut table = BTreeMap::new();
        for pair in kv[1].as_seq().unwrap_or(&[]) {
            let p = pair.as_seq().unwrap();
            table.insert(p[0].clone(), p[1].clone());
        }
        out.insert(kv[0].clone(), table);
    }
    Ok(out)
}

pub fn identity(base: &Category, x: &Obj) -> Result<Mor> {
    let f = PresheafTable::from_key(base, &x.key)?;
    let objs = base_objects(base)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            f.value(&o.key)
                .iter()
                .map(|e| (e.clone(), e.clone()))
                .collect()
        })
        .collect();
    Ok(encode_nt(x, x, &objs, &components))
}

pub fn compose(base: &Category, g: &Mor, f: &Mor) -> Result<Mor> {
    let objs = base_objects(base)?;
    let ft = decode_nt(f)?;
    let gt = decode_nt(g)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            ft[&o.key]
                .iter()
                .map(|(e, v)| (e.clone(), gt[&o.key][v].clone()))
                .collect()
        })
        .collect();
    Ok(encode_nt(&f.src_obj(), &g.tgt_obj(), &objs, &components))
}

pub fn terminal(base: &Category) -> Result<Obj> {
    let objs = base_objects(base)?;
    let values: BTreeMap<Key, Vec<Key>> = objs
        .iter()
        .map(|o| (o.key.clone(), vec![Key::Unit]))
        .collect();
    let actions: BTreeMap<Key, BTreeMap<Key, Key>> = base_morphisms(base)?
        .into_iter()
        .map(|m| (m.key, BTreeMap::from([(Key::Unit, Key::Unit)])))
        .collect();
    Ok(PresheafTable::build(base, values, actions)?.to_obj())
}

pub fn to_terminal(base: &Category, x: &Obj) -> Result<Mor> {
    let f = PresheafTable::from_key(base, &x.key)?;
    let t = terminal(base)?;
    let objs = base_objects(base)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            f.value(&o.key)
                .iter()
                .map(|e| (e.clone(), Key::Unit))
                .collect()
        })
        .collect();
    Ok(encode_nt(x, &t, &objs, &components))
}

/// Pointwise fiber product with pair elements.
pub fn pullback(base: &Category, f: &Mor, g: &Mor) -> Result<PullbackSq> {
    let ft = decode_nt(f)?;
    let gt = decode_nt(g)?;
    let fx = PresheafTable::from_key(base, &f.src)?;
    let gy = PresheafTable::from_key(base, &g.src)?;
    let objs = base_objects(base)?;
    let mut values = BTreeMap::new();
    for o in &objs {
        let mut v = Vec::new();
        for a in fx.value(&o.key) {
            for b in gy.value(&o.key) {
                if ft[&o.key][a] == gt[&o.key][b] {
                    v.push(Key::pair(a.clone(), b.clone()));
                }
            }
        }
        values.insert(o.key.clone(), v);
    }
    let mut actions = BTreeMap::new();
    for m in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for e in &values[&m.tgt] {
            let p = e.as_seq().unwrap();
            table.insert(
                e.clone(),
                Key::pair(fx.act(&m.key, &p[0])?, gy.act(&m.key, &p[1])?),
            );
        }
        actions.insert(m.key.clone(), table);
    }
    let apex_table = PresheafTable::build(base, values, actions)?;
    let apex = apex_table.to_obj();
    let p1 = project_component(base, &apex_table, &f.src_obj(), 0, &apex)?;
    let p2 = project_component(base, &apex_table, &g.src_obj(), 1, &apex)?;
    Ok(PullbackSq {
        f: f.clone(),
        g: g.clone(),
        apex,
        p1,
        p2,
        cert: LimitCert {
            scope: ProbeScope::Formula,
        },
    })
}

fn project_component(
    base: &Category,
    apex: &PresheafTable,
    tgt: &Obj,
    side: usize,
    apex_obj: &Obj,
) -> Result<Mor> {
    let objs = base_objects(base)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            apex.value(&o.key)
                .iter()
                .map(|e| (e.clone(), e.as_seq().unwrap()[side].clone()))
                .collect()
        })
        .collect();
    Ok(encode_nt(apex_obj, tgt, &objs, &components))
}

pub fn pb_mediator(base: &Category, sq: &PullbackSq, u: &Mor, v: &Mor) -> Result<Mor> {
    let objs = base_objects(base)?;
    let ut = decode_nt(u)?;
    let vt = decode_nt(v)?;
    let src = PresheafTable::from_key(base, &u.src)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            src.value(&o.key)
                .iter()
                .map(|e| {
                    (
                        e.clone(),
                        Key::pair(ut[&o.key][e].clone(), vt[&o.key][e].clone()),
                    )
                })
                .collect()
        })
        .collect();
    Ok(encode_nt(&u.src_obj(), &sq.apex, &objs, &components))
}

/// Pointwise tagged disjoint union.
pub fn coproduct(base: &Category, summands: &[Obj]) -> Result<Coproduct> {
    let objs = base_objects(base)?;
    let tables = summands
        .iter()
        .map(|s| PresheafTable::from_key(base, &s.key))
        .collect::<Result<Vec<_>>>()?;
    let mut values: BTreeMap<Key, Vec<Key>> = BTreeMap::new();
    for o in &objs {
        let mut v = Vec::new();
        for (i, t) in tables.iter().enumerate() {
            for e in t.value(&o.key) {
                v.push(Key::pair(Key::Nat(i as u64), e.clone()));
            }
        }
        values.insert(o.key.clone(), v);
    }
    let mut actions = BTreeMap::new();
    for m in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for e in &values[&m.tgt] {
            let p = e.as_seq().unwrap();
            let i = p[0].as_nat().unwrap() as usize;
            table.insert(
                e.clone(),
                Key::pair(p[0].clone(), tables[i].act(&m.key, &p[1])?),
            );
        }
        actions.insert(m.key.clone(), table);
    }
    let apex_table = PresheafTable::build(base, values, actions)?;
    let apex = apex_table.to_obj();
    let mut injections = Vec::new();
    for (i, (s, t)) in summands.iter().zip(&tables).enumerate() {
        let components: Vec<BTreeMap<Key, Key>> = objs
            .iter()
            .map(|o| {
                t.value(&o.key)
                    .iter()
                    .map(|e| (e.clone(), Key::pair(Key::Nat(i as u64), e.clone())))
                    .collect()
            })
            .collect();
        injections.push(encode_nt(s, &apex, &objs, &components));
    }
    Ok(Coproduct {
        summands: summands.to_vec(),
        apex,
        injections,
    })
}

pub fn cop_mediator(base: &Category, c: &Coproduct, cocone: &[Mor]) -> Result<Mor> {
    let tgt = cocone
        .first()
        .map(|m| m.tgt_obj())
        .ok_or_else(|| Error::Precondition("empty cocone needs explicit target".into()))?;
    let objs = base_objects(base)?;
    let tables = cocone.iter().map(decode_nt).collect::<Result<Vec<_>>>()?;
    let apex = PresheafTable::from_key(base, &c.apex.key)?;
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| {
            apex.value(&o.key)
                .iter()
                .map(|e| {
                    let p = e.as_seq().unwrap();
                    let i = p[0].as_nat().unwrap() as usize;
                    (e.clone(), tables[i][&o.key][&p[1]].clone())
                })
                .collect()
        })
        .collect();
    Ok(encode_nt(&c.apex, &tgt, &objs, &components))
}

pub fn from_initial(base: &Category, x: &Obj) -> Result<Mor> {
    let init = coproduct(base, &[])?;
    let objs = base_objects(base)?;
    let components: Vec<BTreeMap<Key, Key>> = objs.iter().map(|_| BTreeMap::new()).collect();
    Ok(encode_nt(&init.apex, x, &objs, &components))
}

/// Pointwise pushout of a span `f : H → F`, `g : H → G`: the tagged union
/// of values glued along the span, with least-key block representatives.
pub fn pushout(base: &Category, f: &Mor, g: &Mor) -> Result<(Obj, Mor, Mor)> {
    if f.src != g.src {
        return Err(Error::Precondition("pushout requires a span".into()));
    }
    let ft = decode_nt(f)?;
    let gt = decode_nt(g)?;
    let fv = PresheafTable::from_key(base, &f.tgt)?;
    let gv = PresheafTable::from_key(base, &g.tgt)?;
    let hv = PresheafTable::from_key(base, &f.src)?;
    let objs = base_objects(base)?;
    let tag = |side: u64, e: &Key| Key::pair(Key::Nat(side), e.clone());
    let mut block: BTreeMap<Key, BTreeMap<Key, Key>> = BTreeMap::new();
    for o in &objs {
        let mut parent: BTreeMap<Key, Key> = fv
            .value(&o.key)
            .iter()
            .map(|e| (tag(0, e), tag(0, e)))
            .chain(gv.value(&o.key).iter().map(|e| (tag(1, e), tag(1, e))))
            .collect();
        fn root(parent: &mut BTreeMap<Key, Key>, k: &Key) -> Key {
            let p = parent[k].clone();
            if p == *k {
                return p;
            }
            let r = root(parent, &p);
            parent.insert(k.clone(), r.clone());
            r
        }
        for h in hv.value(&o.key) {
            let a = tag(0, &ft[&o.key][h]);
            let b = tag(1, &gt[&o.key][h]);
            let (ra, rb) = (root(&mut parent, &a), root(&mut parent, &b));
            let (lo, hi) = if ra <= rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
        let keys: Vec<Key> = parent.keys().cloned().collect();
        let table = keys
            .into_iter()
            .map(|k| {
                let r = root(&mut parent, &k);
                (k, r)
            })
            .collect();
        block.insert(o.key.clone(), table);
    }
    let values: BTreeMap<Key, Vec<Key>> = objs
        .iter()
        .map(|o| {
            let mut reps: Vec<Key> = block[&o.key].values().cloned().collect();
            reps.sort();
            reps.dedup();
            (o.key.clone(), reps)
        })
        .collect();
    let mut actions = BTreeMap::new();
    for m in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for rep in &values[&m.tgt] {
            let p = rep.as_seq().unwrap();
            let moved = if p[0] == Key::Nat(0) {
                tag(0, &fv.act(&m.key, &p[1])?)
            } else {
                tag(1, &gv.act(&m.key, &p[1])?)
            };
            table.insert(rep.clone(), block[&m.src][&moved].clone());
        }
        actions.insert(m.key.clone(), table);
    }
    let apex = PresheafTable::build(base, values, actions)?;
    let apex_obj = apex.to_obj();
    let mk_inj = |side: u64, src_table: &PresheafTable, src: &Key| -> Mor {
        let components: Vec<BTreeMap<Key, Key>> = objs
            .iter()
            .map(|o| {
                src_table
                    .value(&o.key)
                    .iter()
                    .map(|e| (e.clone(), block[&o.key][&tag(side, e)].clone()))
                    .collect()
            })
            .collect();
        encode_nt(&Obj::new(src.clone()), &apex_obj, &objs, &components)
    };
    let inj_f = mk_inj(0, &fv, &f.tgt);
    let inj_g = mk_inj(1, &gv, &g.tgt);
    Ok((apex_obj, inj_f, inj_g))
}

/// Pointwise quotient of a 2-groupoid of presheaves: blocks with least
/// representatives per base object, actions descending to blocks.
pub fn quotient_groupoid(
    base: &Category,
    ts: &crate::groupoids::TruncatedSimplicial,
) -> Result<(Obj, Mor)> {
    let a0 = PresheafTable::from_key(base, &ts.a0.key)?;
    let a1 = PresheafTable::from_key(base, &ts.a1.key)?;
    let d0 = decode_nt(&ts.d0)?;
    let d1 = decode_nt(&ts.d1)?;
    let objs = base_objects(base)?;
    let mut block: BTreeMap<Key, BTreeMap<Key, Key>> = BTreeMap::new();
    for o in &objs {
        let mut parent: BTreeMap<Key, Key> = a0
            .value(&o.key)
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        fn root(parent: &mut BTreeMap<Key, Key>, k: &Key) -> Key {
            let p = parent[k].clone();
            if p == *k {
                return p;
            }
            let r = root(parent, &p);
            parent.insert(k.clone(), r.clone());
            r
        }
        for r in a1.value(&o.key) {
            let (x, y) = (&d0[&o.key][r], &d1[&o.key][r]);
            let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
            let (lo, hi) = if rx <= ry { (rx, ry) } else { (ry, rx) };
            parent.insert(hi, lo);
        }
        let table = a0
            .value(&o.key)
            .iter()
            .map(|e| (e.clone(), root(&mut parent, e)))
            .collect();
        block.insert(o.key.clone(), table);
    }
    let values: BTreeMap<Key, Vec<Key>> = objs
        .iter()
        .map(|o| {
            let mut reps: Vec<Key> = block[&o.key].values().cloned().collect();
            reps.sort();
            reps.dedup();
            (o.key.clone(), reps)
        })
        .collect();
    let mut actions = BTreeMap::new();
    for m in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for rep in &values[&m.tgt] {
            table.insert(rep.clone(), block[&m.src][&a0.act(&m.key, rep)?].clone());
        }
        actions.insert(m.key.clone(), table);
    }
    let q = PresheafTable::build(base, values, actions)?;
    let q_obj = q.to_obj();
    let components: Vec<BTreeMap<Key, Key>> = objs
        .iter()
        .map(|o| block[&o.key].clone())
        .collect();
    let proj = encode_nt(&ts.a0, &q_obj, &objs, &components);
    Ok((q_obj, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::tabulated::preorder_category;

    fn point_base() -> Category {
        let mut d = crate::cat::tabulated::TabulatedData::new();
        d.add_object(Key::sym("*"));
        d.add_morphism(Key::sym("id"), Key::sym("*"), Key::sym("*"));
        d.set_identity(Key::sym("*"), Key::sym("id"));
        d.set_composite(Key::sym("id"), Key::sym("id"), Key::sym("id"));
        Category::tabulated(d, "pt").unwrap()
    }

    #[test]
    fn presheaves_over_point_are_sets() {
        let base = point_base();
        let psh = psh_category(&base).unwrap();
        let two = PresheafTable::build(
            &base,
            BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0), Key::Nat(1)])]),
            BTreeMap::new(),
        )
        .unwrap();
        let three = PresheafTable::build(
            &base,
            BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0), Key::Nat(1), Key::Nat(2)])]),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(
            psh.hom(&two.to_obj(), &three.to_obj()).unwrap().len(),
            9
        );
    }

    #[test]
    fn yoneda_hom_counts_values() {
        let data = preorder_category(&[Key::Nat(0), Key::Nat(1)], &[(Key::Nat(0), Key::Nat(1))]);
        let base = Category::tabulated(data, "chain2").unwrap();
        let psh = psh_category(&base).unwrap();
        let y0 = yoneda(&base, &Obj::new(Key::Nat(0))).unwrap();
        let y1 = yoneda(&base, &Obj::new(Key::Nat(1))).unwrap();
        for (x_key, yx) in [(Key::Nat(0), &y0), (Key::Nat(1), &y1)] {
            for f in [&y0, &y1] {
                let nts = psh.hom(&yx.to_obj(), &f.to_obj()).unwrap();
                assert_eq!(nts.len(), f.value(&x_key).len());
            }
        }
    }
}
