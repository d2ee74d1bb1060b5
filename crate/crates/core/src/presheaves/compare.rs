//! The comparison between 2-groupoids of sums and presheaves: stalkwise
//! embedding, recognition of coproducts of representables through the
//! category of elements, tautological covers, and the full-faithfulness
//! audit.

use std::collections::BTreeMap;

use crate::cat::{Category, Mor, Obj};
use crate::error::{Error, Result};
use crate::groupoids::{hom_e2, TruncatedSimplicial};
use crate::key::Key;
use crate::report::{AuditReport, Verdict};
use crate::sums;

use super::{base_morphisms, base_objects, hom as psh_hom, PresheafTable};

/// Pointwise coproduct of representables: the presheaf of a sum object,
/// with elements `[i, m]` for a summand index and a base morphism into
/// that summand.
pub fn sum_to_psh(base: &Category, sum: &Obj) -> Result<PresheafTable> {
    let comps = sums::components(sum)?;
    let objs = base_objects(base)?;
    let mut values = BTreeMap::new();
    for v in &objs {
        let mut elems = Vec::new();
        for (i, x) in comps.iter().enumerate() {
            for m in base.hom(v, x)? {
                elems.push(Key::pair(Key::Nat(i as u64), m.key));
            }
        }
        values.insert(v.key.clone(), elems);
    }
    let mut actions = BTreeMap::new();
    for f in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for e in &values[&f.tgt] {
            let p = e.as_seq().unwrap();
            let i = p[0].as_nat().unwrap() as usize;
            let m = Mor::new(f.tgt.clone(), comps[i].key.clone(), p[1].clone());
            table.insert(
                e.clone(),
                Key::pair(p[0].clone(), base.compose(&m, &f)?.key),
            );
        }
        actions.insert(f.key.clone(), table);
    }
    PresheafTable::build(base, values, actions)
}

/// The stalkwise embedding of a 2-groupoid of sums: each stalk is the
/// set coequalizer of the edge maps on hom-sets from the embedded base
/// object, with least-key class representatives.
pub struct PshEmbedding {
    pub table: PresheafTable,
    /// per base object: hom representative key -> class representative
    blocks: BTreeMap<Key, BTreeMap<Key, Key>>,
}

impl PshEmbedding {
    pub fn class_of(&self, v: &Key, hom_key: &Key) -> Result<Key> {
        self.blocks
            .get(v)
            .and_then(|b| b.get(hom_key))
            .cloned()
            .ok_or_else(|| Error::DanglingRef(format!("no stalk class for {hom_key} at {v}")))
    }
}

pub fn embed_to_psh(
    base: &Category,
    sums_cat: &Category,
    w: &TruncatedSimplicial,
) -> Result<PshEmbedding> {
    let objs = base_objects(base)?;
    let mut blocks = BTreeMap::new();
    let mut values = BTreeMap::new();
    for v in &objs {
        let iv = sums::embed_obj(v);
        let into_w0: Vec<Mor> = sums_cat.hom(&iv, &w.a0)?;
        let into_w1: Vec<Mor> = sums_cat.hom(&iv, &w.a1)?;
        let mut parent: BTreeMap<Key, Key> = into_w0
            .iter()
            .map(|m| (m.key.clone(), m.key.clone()))
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
        for u in &into_w1 {
            let a = sums_cat.compose(&w.d0, u)?.key;
            let b = sums_cat.compose(&w.d1, u)?.key;
            let (ra, rb) = (root(&mut parent, &a), root(&mut parent, &b));
            let (lo, hi) = if ra <= rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
        let table: BTreeMap<Key, Key> = into_w0
            .iter()
            .map(|m| (m.key.clone(), root(&mut parent, &m.key)))
            .collect();
        let mut reps: Vec<Key> = table.values().cloned().collect();
        reps.sort();
        reps.dedup();
        values.insert(v.key.clone(), reps);
        blocks.insert(v.key.clone(), table);
    }
    let mut actions = BTreeMap::new();
    for f in base_morphisms(base)? {
        let embedded = sums::embed_mor(&f);
        let mut action = BTreeMap::new();
        for rep in &values[&f.tgt] {
            let u = Mor::new(
                sums::embed_obj(&f.tgt_obj()).key,
                w.a0.key.clone(),
                rep.clone(),
            );
            let pre = sums_cat.compose(&u, &embedded)?;
            action.insert(rep.clone(), blocks[&f.src][&pre.key].clone());
        }
        actions.insert(f.key.clone(), action);
    }
    Ok(PshEmbedding {
        table: PresheafTable::build(base, values, actions)?,
        blocks,
    })
}

/// Recognition of a presheaf as a finite coproduct of representables via
/// its category of elements: every connected component must have a
/// terminal element.
pub struct SumRecognition {
    /// object of the sums category
    pub sum: Obj,
    /// terminal element (base object, element) per component, in order
    pub components: Vec<(Obj, Key)>,
    /// (base object key, element) -> (component index, routing morphism)
    routing: BTreeMap<(Key, Key), (usize, Mor)>,
}

impl SumRecognition {
    pub fn route(&self, obj: &Key, elem: &Key) -> Result<&(usize, Mor)> {
        self.routing
            .get(&(obj.clone(), elem.clone()))
            .ok_or_else(|| Error::DanglingRef(format!("element {elem} at {obj} has no route")))
    }
}

pub fn as_sum_of_representables(
    base: &Category,
    f: &PresheafTable,
) -> Result<Option<SumRecognition>> {
    let objs = base_objects(base)?;
    let mors = base_morphisms(base)?;
    // elements and the undirected reachability between them
    let mut elements: Vec<(Key, Key)> = Vec::new();
    for o in &objs {
        for e in f.value(&o.key) {
            elements.push((o.key.clone(), e.clone()));
        }
    }
    let index_of: BTreeMap<(Key, Key), usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for m in &mors {
        for e in f.value(&m.tgt) {
            let src_elem = f.act(&m.key, e)?;
            let a = index_of[&(m.tgt.clone(), e.clone())];
            let b = index_of[&(m.src.clone(), src_elem)];
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comp_roots: Vec<usize> = (0..elements.len())
        .map(|i| root(&mut parent.clone(), i))
        .collect();
    let mut roots: Vec<usize> = comp_roots.clone();
    roots.sort_unstable();
    roots.dedup();
    // terminal element per component: a unique morphism from every
    // element of the component
    let mut components = Vec::new();
    let mut routing = BTreeMap::new();
    for &r in &roots {
        let members: Vec<usize> = (0..elements.len()).filter(|&i| comp_roots[i] == r).collect();
        let mut terminal: Option<(usize, BTreeMap<usize, Mor>)> = None;
        'candidates: for &cand in &members {
            let (cx, ce) = &elements[cand];
            let cx_obj = Obj::new(cx.clone());
            let mut routes = BTreeMap::new();
            for &m in &members {
                let (mx, me) = &elements[m];
                let mut found: Option<Mor> = None;
                for g in base.hom(&Obj::new(mx.clone()), &cx_obj)? {
                    if f.act(&g.key, ce)? == *me {
                        if found.is_some() {
                            continue 'candidates;
                        }
                        found = Some(g);
                    }
                }
                match found {
                    Some(g) => {
                        routes.insert(m, g);
                    }
                    None => continue 'candidates,
                }
            }
            terminal = Some((cand, routes));
            break;
        }
        let Some((cand, routes)) = terminal else {
            return Ok(None);
        };
        let idx = components.len();
        components.push((Obj::new(elements[cand].0.clone()), elements[cand].1.clone()));
        for (m, g) in routes {
            routing.insert(elements[m].clone(), (idx, g));
        }
    }
    let sum = sums::sum_obj(components.iter().map(|(x, _)| x.clone()));
    let _ = comp_roots.drain(..);
    Ok(Some(SumRecognition {
        sum,
        components,
        routing,
    }))
}

/// Per-cospan witnesses that the pullbacks of representables over a
/// presheaf are coproducts of representables.
pub struct SimpleObjectCert {
    /// (object, element, object, element) cospans with their recognized
    /// sum objects
    pub witnesses: Vec<(Key, Key, Key, Key, Obj)>,
}

/// Checks simplicity over the full element grid: every cospan of
/// representables (elements of the presheaf, by the Yoneda bijection)
/// has a pullback recognizable in the sums category.
pub fn check_simple(base: &Category, z: &PresheafTable) -> Result<Option<SimpleObjectCert>> {
    let objs = base_objects(base)?;
    let mut witnesses = Vec::new();
    for v in &objs {
        for a in z.value(&v.key) {
            for w in &objs {
                for b in z.value(&w.key) {
                    let apex = representable_fiber(base, z, v, a, w, b)?;
                    match as_sum_of_representables(base, &apex)? {
                        Some(rec) => witnesses.push((
                            v.key.clone(),
                            a.clone(),
                            w.key.clone(),
                            b.clone(),
                            rec.sum,
                        )),
                        None => return Ok(None),
                    }
                }
            }
        }
    }
    Ok(Some(SimpleObjectCert { witnesses }))
}

/// The pullback `yV ×_Z yW` for the cospan classified by elements
/// `a ∈ Z(V)`, `b ∈ Z(W)`, computed pointwise.
fn representable_fiber(
    base: &Category,
    z: &PresheafTable,
    v: &Obj,
    a: &Key,
    w: &Obj,
    b: &Key,
) -> Result<PresheafTable> {
    let objs = base_objects(base)?;
    let mut values = BTreeMap::new();
    for o in &objs {
        let mut elems = Vec::new();
        for m in base.hom(o, v)? {
            for n in base.hom(o, w)? {
                if z.act(&m.key, a)? == z.act(&n.key, b)? {
                    elems.push(Key::pair(m.key.clone(), n.key.clone()));
                }
            }
        }
        values.insert(o.key.clone(), elems);
    }
    let mut actions = BTreeMap::new();
    for f in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for e in &values[&f.tgt] {
            let p = e.as_seq().unwrap();
            let m = Mor::new(f.tgt.clone(), v.key.clone(), p[0].clone());
            let n = Mor::new(f.tgt.clone(), w.key.clone(), p[1].clone());
            table.insert(
                e.clone(),
                Key::pair(base.compose(&m, &f)?.key, base.compose(&n, &f)?.key),
            );
        }
        actions.insert(f.key.clone(), table);
    }
    PresheafTable::build(base, values, actions)
}

/// The tautological cover of a presheaf: one representable summand per
/// element, the kernel-pair relation recognized in the sums category,
/// and the verified isomorphism between the embedded quotient and the
/// original presheaf.
pub struct PresheafCover {
    pub groupoid: TruncatedSimplicial,
    pub cover_tags: Vec<(Obj, Key)>,
    pub relation_simple: SimpleObjectCert,
}

pub fn presheaf_cover(
    base: &Category,
    sums_cat: &Category,
    z: &PresheafTable,
) -> Result<PresheafCover> {
    let objs = base_objects(base)?;
    // Y: one representable per element of Z
    let mut tags = Vec::new();
    for x in &objs {
        for e in z.value(&x.key) {
            tags.push((x.clone(), e.clone()));
        }
    }
    let y_sum = sums::sum_obj(tags.iter().map(|(x, _)| x.clone()));
    // the cover map lands each [i, m] at the action of m on the i-th tag
    let y_psh = sum_to_psh(base, &y_sum)?;
    let q_at = |vkey: &Key, elem: &Key| -> Result<Key> {
        let p = elem.as_seq().unwrap();
        let i = p[0].as_nat().unwrap() as usize;
        let m = Mor::new(vkey.clone(), tags[i].0.key.clone(), p[1].clone());
        z.act(&m.key, &tags[i].1)
    };
    // R_Y = Y ×_Z Y pointwise
    let mut values = BTreeMap::new();
    for o in &objs {
        let mut elems = Vec::new();
        for e1 in y_psh.value(&o.key) {
            for e2 in y_psh.value(&o.key) {
                if q_at(&o.key, e1)? == q_at(&o.key, e2)? {
                    elems.push(Key::pair(e1.clone(), e2.clone()));
                }
            }
        }
        values.insert(o.key.clone(), elems);
    }
    let mut actions = BTreeMap::new();
    for f in base_morphisms(base)? {
        let mut table = BTreeMap::new();
        for e in &values[&f.tgt] {
            let p = e.as_seq().unwrap();
            table.insert(
                e.clone(),
                Key::pair(y_psh.act(&f.key, &p[0])?, y_psh.act(&f.key, &p[1])?),
            );
        }
        actions.insert(f.key.clone(), table);
    }
    let r_psh = PresheafTable::build(base, values, actions)?;
    let relation_simple = check_simple(base, &r_psh)?.ok_or_else(|| {
        Error::BadCertificate("kernel-pair relation is not simple".into())
    })?;
    let rec = as_sum_of_representables(base, &r_psh)?.ok_or_else(|| {
        Error::BadCertificate("kernel-pair relation is not a sum of representables".into())
    })?;
    // faces: each relation component routes to the two cover summands
    // through the halves of its terminal element
    let mut d0_index = Vec::new();
    let mut d0_comps = Vec::new();
    let mut d1_index = Vec::new();
    let mut d1_comps = Vec::new();
    for (xk, ek) in &rec.components {
        let halves = ek.as_seq().unwrap();
        for (side, (idx_acc, comp_acc)) in [
            (&halves[0], (&mut d0_index, &mut d0_comps)),
            (&halves[1], (&mut d1_index, &mut d1_comps)),
        ] {
            let p = side.as_seq().unwrap();
            let i = p[0].as_nat().unwrap() as usize;
            idx_acc.push(i);
            comp_acc.push(Mor::new(xk.key.clone(), tags[i].0.key.clone(), p[1].clone()));
        }
    }
    let d0 = sums::encode_mor(&rec.sum, &y_sum, &d0_index, &d0_comps);
    let d1 = sums::encode_mor(&rec.sum, &y_sum, &d1_index, &d1_comps);
    // degeneracy: the diagonal element of each cover summand routes into
    // the relation
    let mut s_index = Vec::new();
    let mut s_comps = Vec::new();
    for (i, (x, _)) in tags.iter().enumerate() {
        let idm = base.identity(x)?;
        let diag = Key::pair(
            Key::pair(Key::Nat(i as u64), idm.key.clone()),
            Key::pair(Key::Nat(i as u64), idm.key),
        );
        let (k, route) = rec.route(&x.key, &diag)?;
        s_index.push(*k);
        s_comps.push(route.clone());
    }
    let s = sums::encode_mor(&y_sum, &rec.sum, &s_index, &s_comps);
    let groupoid = TruncatedSimplicial::new(sums_cat.clone(), y_sum, rec.sum.clone(), d0, d1, s)?;
    // certificate: the embedded quotient is isomorphic to Z, stalkwise
    let emb = embed_to_psh(base, sums_cat, &groupoid)?;
    for v in &objs {
        let mut seen = BTreeMap::new();
        for rep in emb.table.value(&v.key) {
            let u = Mor::new(
                sums::embed_obj(v).key,
                groupoid.a0.key.clone(),
                rep.clone(),
            );
            let (ui, uc) = sums::decode_mor(&u)?;
            let elem = Key::pair(Key::Nat(ui[0] as u64), uc[0].key.clone());
            let img = q_at(&v.key, &elem)?;
            if seen.insert(img, rep.clone()).is_some() {
                return Err(Error::BadCertificate(
                    "embedded quotient is not injective onto the presheaf".into(),
                ));
            }
        }
        if seen.len() != z.value(&v.key).len() {
            return Err(Error::BadCertificate(
                "embedded quotient misses presheaf elements".into(),
            ));
        }
    }
    Ok(PresheafCover {
        groupoid,
        cover_tags: tags,
        relation_simple,
    })
}

/// Full-faithfulness audit: for each sample pair of 2-groupoids of sums,
/// the homotopy classes biject with the natural transformations between
/// the embedded presheaves, with the explicit bijection constructed by
/// mapping representatives stalkwise.
pub fn check_fully_faithful(
    base: &Category,
    sums_cat: &Category,
    samples: &[(TruncatedSimplicial, TruncatedSimplicial)],
) -> Result<AuditReport> {
    let mut report = AuditReport::new();
    for (n, (x, y)) in samples.iter().enumerate() {
        let verdict = fully_faithful_verdict(base, sums_cat, x, y)?;
        report.push("psh-compare", format!("pair-{n}"), "fully-faithful", verdict);
    }
    Ok(report)
}

fn fully_faithful_verdict(
    base: &Category,
    sums_cat: &Category,
    x: &TruncatedSimplicial,
    y: &TruncatedSimplicial,
) -> Result<Verdict> {
    let classes = hom_e2(x, y)?;
    let ex = embed_to_psh(base, sums_cat, x)?;
    let ey = embed_to_psh(base, sums_cat, y)?;
    let nts = psh_hom(base, &ex.table.to_obj(), &ey.table.to_obj())?;
    if classes.len() != nts.len() {
        return Ok(Verdict::Fail(format!(
            "{} homotopy classes vs {} transformations",
            classes.len(),
            nts.len()
        )));
    }
    // explicit bijection: each class induces the stalkwise map
    // [u] -> [f0 ∘ u]; check the induced transformations are pairwise
    // distinct members of the enumerated hom-set
    let objs = base_objects(base)?;
    let mut induced = Vec::new();
    for ct in &classes {
        let mut components = Vec::new();
        for v in &objs {
            let mut table = BTreeMap::new();
            for rep in ex.table.value(&v.key) {
                let u = Mor::new(sums::embed_obj(v).key, x.a0.key.clone(), rep.clone());
                let composed = sums_cat.compose(&ct.rep.f0, &u)?;
                table.insert(rep.clone(), ey.class_of(&v.key, &composed.key)?);
            }
            components.push(table);
        }
        induced.push(super::encode_nt(
            &ex.table.to_obj(),
            &ey.table.to_obj(),
            &objs,
            &components,
        ));
    }
    let mut keys: Vec<&Key> = induced.iter().map(|m| &m.key).collect();
    keys.sort();
    keys.dedup();
    if keys.len() != classes.len() {
        return Ok(Verdict::Fail("induced transformations collide".into()));
    }
    for m in &induced {
        if !nts.iter().any(|n| n.key == m.key) {
            return Ok(Verdict::Fail(format!(
                "induced transformation {} not found in the enumerated hom-set",
                m.key
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Indexed presentation of a 2-groupoid of sums: the level data of the
/// index sets together with the per-index families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedPresentation {
    pub vertex_family: Vec<Obj>,
    pub edge_family: Vec<Obj>,
    pub d0: Vec<(usize, Mor)>,
    pub d1: Vec<(usize, Mor)>,
    pub s: Vec<(usize, Mor)>,
}

pub fn to_indexed(w: &TruncatedSimplicial) -> Result<IndexedPresentation> {
    let vertex_family = sums::components(&w.a0)?;
    let edge_family = sums::components(&w.a1)?;
    let unz = |m: &Mor| -> Result<Vec<(usize, Mor)>> {
        let (ix, comps) = sums::decode_mor(m)?;
        Ok(ix.into_iter().zip(comps).collect())
    };
    Ok(IndexedPresentation {
        vertex_family,
        edge_family,
        d0: unz(&w.d0)?,
        d1: unz(&w.d1)?,
        s: unz(&w.s)?,
    })
}

pub fn from_indexed(
    sums_cat: &Category,
    p: &IndexedPresentation,
) -> Result<TruncatedSimplicial> {
    let a0 = sums::sum_obj(p.vertex_family.iter().cloned());
    let a1 = sums::sum_obj(p.edge_family.iter().cloned());
    let zip = |entries: &[(usize, Mor)], src: &Obj, tgt: &Obj| -> Mor {
        let (ix, comps): (Vec<usize>, Vec<Mor>) = entries.iter().cloned().unzip();
        sums::encode_mor(src, tgt, &ix, &comps)
    };
    TruncatedSimplicial::new(
        sums_cat.clone(),
        a0.clone(),
        a1.clone(),
        zip(&p.d0, &a1, &a0),
        zip(&p.d1, &a1, &a0),
        zip(&p.s, &a0, &a1),
    )
}
