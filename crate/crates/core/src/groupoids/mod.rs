//! Equivalence 2-groupoids over a lex carrier.
//!
//! A truncated simplicial object holds the level-≤1 data (A0, A1, d0, d1,
//! s) of a 1-coskeletal simplicial object. Evaluating it at a finite
//! reflexive graph is a finite limit; the Kan condition asks for sections
//! of the restrictions from the 2-simplex boundary to its three horns.
//! Kan objects with monic face pair are internal equivalence relations;
//! without monicity they are the objects of the homotopy category whose
//! morphisms are level-pairs taken up to the level-0 homotopy relation.

pub mod e2;

use crate::cat::{CatKind, Category, Mor, Obj};
use crate::classify;
use crate::error::{guard_cap, Error, Result};
use crate::key::Key;
use crate::limits::{self, Diagram, LimitCone, PullbackSq};

/// Level-≤1 data of a 1-coskeletal simplicial object.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicial {
    pub carrier: Category,
    pub a0: Obj,
    pub a1: Obj,
    pub d0: Mor,
    pub d1: Mor,
    pub s: Mor,
}

/// Sections of the three boundary-to-horn restrictions.
#[derive(Clone, Debug)]
pub struct KanWitness {
    pub sections: [Mor; 3],
}

#[derive(Clone, Debug)]
pub enum KanOutcome {
    Witness(KanWitness),
    /// The first horn index (0, 1, 2) with no section.
    Fails { horn: usize },
}

impl TruncatedSimplicial {
    /// Validates typing and the simplicial identities d0∘s = d1∘s = id.
    pub fn new(
        carrier: Category,
        a0: Obj,
        a1: Obj,
        d0: Mor,
        d1: Mor,
        s: Mor,
    ) -> Result<TruncatedSimplicial> {
        if d0.src != a1.key || d0.tgt != a0.key || d1.src != a1.key || d1.tgt != a0.key {
            return Err(Error::Malformed("face maps must be typed A1 -> A0".into()));
        }
        if s.src != a0.key || s.tgt != a1.key {
            return Err(Error::Malformed("degeneracy must be typed A0 -> A1".into()));
        }
        let ts = TruncatedSimplicial {
            carrier,
            a0,
            a1,
            d0,
            d1,
            s,
        };
        let id0 = ts.carrier.identity(&ts.a0)?;
        if ts.carrier.compose(&ts.d0, &ts.s)?.key != id0.key
            || ts.carrier.compose(&ts.d1, &ts.s)?.key != id0.key
        {
            return Err(Error::Malformed(
                "degeneracy is not a common section of the faces".into(),
            ));
        }
        Ok(ts)
    }

    /// Canonical object key in the 2-groupoid category over the carrier.
    pub fn key(&self) -> Key {
        Key::seq([
            self.a0.key.clone(),
            self.a1.key.clone(),
            self.d0.key.clone(),
            self.d1.key.clone(),
            self.s.key.clone(),
        ])
    }

    pub fn to_obj(&self) -> Obj {
        Obj::new(self.key())
    }

    pub fn from_key(carrier: &Category, key: &Key) -> Result<TruncatedSimplicial> {
        let parts = key
            .as_seq()
            .filter(|s| s.len() == 5)
            .ok_or_else(|| Error::Malformed(format!("bad 2-groupoid object key {key}")))?;
        let a0 = Obj::new(parts[0].clone());
        let a1 = Obj::new(parts[1].clone());
        TruncatedSimplicial::new(
            carrier.clone(),
            a0.clone(),
            a1.clone(),
            Mor::new(a1.key.clone(), a0.key.clone(), parts[2].clone()),
            Mor::new(a1.key.clone(), a0.key.clone(), parts[3].clone()),
            Mor::new(a0.key.clone(), a1.key.clone(), parts[4].clone()),
        )
    }

    /// The face pair `(d0, d1) : A1 → A0 × A0` through the chosen product.
    pub fn anchor(&self) -> Result<(PullbackSq, Mor)> {
        let prod = limits::binary_product(&self.carrier, &self.a0, &self.a0)?;
        let anchor = limits::pair_into(&self.carrier, &prod, &self.d0, &self.d1)?;
        Ok((prod, anchor))
    }

    pub fn evaluate(&self, shape: &GraphShape) -> Result<Evaluation> {
        evaluate(self, shape)
    }

    pub fn check_kan(&self) -> Result<KanOutcome> {
        check_kan(self)
    }

    /// Kan plus monic face pair.
    pub fn is_equivalence_groupoid(&self) -> Result<bool> {
        if !matches!(self.check_kan()?, KanOutcome::Witness(_)) {
            return Ok(false);
        }
        let (_, anchor) = self.anchor()?;
        classify::is_mono(&self.carrier, &anchor, &default_probes(self)?)
    }
}

/// Probe family for monicity and certificate checks. Every object of the
/// carrier kinds below is a coproduct of the listed probes, so testing
/// against them is exact; other kinds fall back on the declared probes
/// plus the object's own levels.
pub fn default_probes(ts: &TruncatedSimplicial) -> Result<Vec<Obj>> {
    let mut probes = ts.carrier.probe_objects();
    let extras: Vec<Obj> = match ts.carrier.kind() {
        CatKind::FinSet => vec![crate::cat::finset::terminal_obj()],
        CatKind::Sums(base) => base
            .objects()
            .map(|objs| objs.iter().map(crate::sums::embed_obj).collect())
            .unwrap_or_default(),
        CatKind::Psh(base) => {
            let mut reps = Vec::new();
            if let Some(objs) = base.objects() {
                for o in &objs {
                    reps.push(crate::presheaves::yoneda(base, o)?.to_obj());
                }
            }
            reps
        }
        _ => {
            let t = limits::chosen_terminal(&ts.carrier)?;
            vec![t.obj, ts.a0.clone(), ts.a1.clone()]
        }
    };
    for extra in extras {
        if !probes.contains(&extra) {
            probes.push(extra);
        }
    }
    Ok(probes)
}

/// Finite reflexive graph used as an evaluation scheme: one level-0 node
/// per vertex, one level-1 node per edge with faces matching endpoints;
/// edges marked reflexive are constrained to be degenerate.
#[derive(Clone, Debug)]
pub struct GraphShape {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Copy, Debug)]
pub struct GraphEdge {
    pub src: usize,
    pub tgt: usize,
    pub reflexive: bool,
}

impl GraphShape {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> GraphShape {
        GraphShape {
            vertices,
            edges: edges
                .iter()
                .map(|&(src, tgt)| GraphEdge {
                    src,
                    tgt,
                    reflexive: false,
                })
                .collect(),
        }
    }

    /// The 2-simplex boundary: vertices 0,1,2 and edges 01, 02, 12.
    pub fn boundary_2_simplex() -> GraphShape {
        GraphShape::new(3, &[(0, 1), (0, 2), (1, 2)])
    }

    /// The horn at vertex `i`: the boundary with the opposite edge removed.
    pub fn horn(i: usize) -> GraphShape {
        match i {
            0 => GraphShape::new(3, &[(0, 1), (0, 2)]),
            1 => GraphShape::new(3, &[(0, 1), (1, 2)]),
            2 => GraphShape::new(3, &[(0, 2), (1, 2)]),
            _ => unreachable!("horn index must be 0, 1 or 2"),
        }
    }

    /// Which boundary edges survive in the horn at `i`.
    pub fn horn_edge_indices(i: usize) -> [usize; 2] {
        match i {
            0 => [0, 1],
            1 => [0, 2],
            2 => [1, 2],
            _ => unreachable!(),
        }
    }

    /// The square of parallel edge pairs: vertices 00, 01, 10, 11 with
    /// edges 00→01 (bottom), 10→11 (top), 00→10 (left), 01→11 (right).
    pub fn boundary_square() -> GraphShape {
        GraphShape::new(4, &[(0, 1), (2, 3), (0, 2), (1, 3)])
    }
}

/// Result of evaluating a truncated simplicial object at a graph shape.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub shape: GraphShape,
    pub diag: Diagram,
    pub lim: LimitCone,
}

impl Evaluation {
    pub fn apex(&self) -> &Obj {
        &self.lim.apex
    }

    pub fn vertex_leg(&self, v: usize) -> &Mor {
        &self.lim.legs[v]
    }

    pub fn edge_leg(&self, e: usize) -> &Mor {
        &self.lim.legs[self.shape.vertices + e]
    }
}

/// Limit of the graph-shaped diagram with projection legs, certified by
/// the chosen-limit machinery it is assembled from.
pub fn evaluate(ts: &TruncatedSimplicial, shape: &GraphShape) -> Result<Evaluation> {
    let mut nodes = vec![ts.a0.clone(); shape.vertices];
    nodes.extend(std::iter::repeat(ts.a1.clone()).take(shape.edges.len()));
    let mut arrows = Vec::new();
    for (e, edge) in shape.edges.iter().enumerate() {
        if edge.src >= shape.vertices || edge.tgt >= shape.vertices {
            return Err(Error::DanglingRef("graph edge endpoint out of range".into()));
        }
        arrows.push((shape.vertices + e, edge.src, ts.d0.clone()));
        arrows.push((shape.vertices + e, edge.tgt, ts.d1.clone()));
        if edge.reflexive {
            arrows.push((edge.src, shape.vertices + e, ts.s.clone()));
        }
    }
    let diag = Diagram { nodes, arrows };
    let lim = limits::finite_limit(&ts.carrier, &diag)?;
    Ok(Evaluation {
        shape: shape.clone(),
        diag,
        lim,
    })
}

/// Mediator into an evaluation for a cone given by per-vertex and
/// per-edge legs.
pub fn eval_mediator(
    ts: &TruncatedSimplicial,
    ev: &Evaluation,
    vertex_cone: &[Mor],
    edge_cone: &[Mor],
) -> Result<Mor> {
    let mut cone = vertex_cone.to_vec();
    cone.extend(edge_cone.iter().cloned());
    limits::limit_mediator(&ts.carrier, &ev.diag, &cone, &ev.lim)
}

/// Restriction from the boundary evaluation to the horn evaluation.
pub fn horn_restriction(
    ts: &TruncatedSimplicial,
    boundary: &Evaluation,
    horn_ev: &Evaluation,
    horn: usize,
) -> Result<Mor> {
    let keep = GraphShape::horn_edge_indices(horn);
    let vertex_cone: Vec<Mor> = (0..3).map(|v| boundary.vertex_leg(v).clone()).collect();
    let edge_cone: Vec<Mor> = keep.iter().map(|&e| boundary.edge_leg(e).clone()).collect();
    eval_mediator(ts, horn_ev, &vertex_cone, &edge_cone)
}

/// Searches for sections of the three horn restrictions in key order and
/// returns the first witness triple, or the first horn with no section.
pub fn check_kan(ts: &TruncatedSimplicial) -> Result<KanOutcome> {
    let boundary = evaluate(ts, &GraphShape::boundary_2_simplex())?;
    let mut sections = Vec::new();
    for i in 0..3 {
        let horn_ev = evaluate(ts, &GraphShape::horn(i))?;
        let restriction = horn_restriction(ts, &boundary, &horn_ev, i)?;
        let id = ts.carrier.identity(horn_ev.apex())?;
        match ts.carrier.lift(&restriction, &id)? {
            Some(section) => sections.push(section),
            None => return Ok(KanOutcome::Fails { horn: i }),
        }
    }
    Ok(KanOutcome::Witness(KanWitness {
        sections: [
            sections[0].clone(),
            sections[1].clone(),
            sections[2].clone(),
        ],
    }))
}

/// Revalidates a stored witness: each stored section must section its
/// restriction.
pub fn revalidate_kan(ts: &TruncatedSimplicial, witness: &KanWitness) -> Result<()> {
    let boundary = evaluate(ts, &GraphShape::boundary_2_simplex())?;
    for i in 0..3 {
        let horn_ev = evaluate(ts, &GraphShape::horn(i))?;
        let restriction = horn_restriction(ts, &boundary, &horn_ev, i)?;
        let comp = ts.carrier.compose(&restriction, &witness.sections[i])?;
        if !ts.carrier.is_identity(&comp)? {
            return Err(Error::BadCertificate(format!(
                "stored section for horn {i} does not revalidate"
            )));
        }
    }
    Ok(())
}

/// A level pair (f0, f1) whose face square commutes; the degeneracy
/// square is not required to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGroupoidMorphism {
    pub f0: Mor,
    pub f1: Mor,
}

impl TwoGroupoidMorphism {
    pub fn key(&self) -> Key {
        Key::seq([self.f0.key.clone(), self.f1.key.clone()])
    }
}

/// Face-square check: d0∘f1 = f0∘d0 and d1∘f1 = f0∘d1.
pub fn is_two_morphism(
    a: &TruncatedSimplicial,
    b: &TruncatedSimplicial,
    m: &TwoGroupoidMorphism,
) -> Result<bool> {
    let c = &a.carrier;
    Ok(c.compose(&b.d0, &m.f1)?.key == c.compose(&m.f0, &a.d0)?.key
        && c.compose(&b.d1, &m.f1)?.key == c.compose(&m.f0, &a.d1)?.key)
}

/// Homotopy witness for a level-0 pair: the least `h : A0 → B1` with
/// `d0∘h = f0` and `d1∘h = g0`, if one exists.
pub fn homotopy_witness(
    b: &TruncatedSimplicial,
    f0: &Mor,
    g0: &Mor,
) -> Result<Option<Mor>> {
    let c = &b.carrier;
    let (prod, anchor) = b.anchor()?;
    let fg = limits::pair_into(c, &prod, f0, g0)?;
    c.lift(&anchor, &fg)
}

/// Two level pairs are homotopic iff their level-0 pair factors through
/// the target's level 1.
pub fn are_homotopic(
    b: &TruncatedSimplicial,
    f: &TwoGroupoidMorphism,
    g: &TwoGroupoidMorphism,
) -> Result<Option<Mor>> {
    homotopy_witness(b, &f.f0, &g.f0)
}

/// A homotopy class, keyed by its canonical representative: the least
/// valid homotopic f0, then the least f1 over it.
#[derive(Clone, Debug)]
pub struct HomotopyClass {
    pub src: TruncatedSimplicial,
    pub tgt: TruncatedSimplicial,
    pub rep: TwoGroupoidMorphism,
}

impl HomotopyClass {
    /// Canonicalizes a representative. The least homotopic level-0 map is
    /// `min(d1∘h)` over lifts `h` of f0 through d0, which ranges over the
    /// whole class; the level-1 component is the least lift over it.
    pub fn canonical(
        src: &TruncatedSimplicial,
        tgt: &TruncatedSimplicial,
        rep: &TwoGroupoidMorphism,
    ) -> Result<HomotopyClass> {
        if !is_two_morphism(src, tgt, rep)? {
            return Err(Error::Malformed("level pair violates the face square".into()));
        }
        let c = &src.carrier;
        let g0 = c
            .min_push(&tgt.d0, &tgt.d1, &rep.f0)?
            .ok_or_else(|| Error::BadCertificate("class has no degeneracy witness".into()))?;
        let g1 = least_level1(src, tgt, &g0)?.ok_or_else(|| {
            Error::BadCertificate("canonical level-0 map admits no level-1 lift".into())
        })?;
        Ok(HomotopyClass {
            src: src.clone(),
            tgt: tgt.clone(),
            rep: TwoGroupoidMorphism { f0: g0, f1: g1 },
        })
    }

    pub fn to_mor(&self) -> Mor {
        Mor::new(self.src.key(), self.tgt.key(), self.rep.key())
    }

    pub fn same_class(&self, other: &HomotopyClass) -> Result<bool> {
        Ok(are_homotopic(&self.tgt, &self.rep, &other.rep)?.is_some())
    }
}

/// Least f1 making (f0, f1) a two-groupoid morphism, if any: the least
/// lift of `⟨f0∘d0, f0∘d1⟩` through the target's face pair.
pub fn least_level1(
    a: &TruncatedSimplicial,
    b: &TruncatedSimplicial,
    f0: &Mor,
) -> Result<Option<Mor>> {
    let c = &a.carrier;
    let (prod, anchor) = b.anchor()?;
    let down = limits::pair_into(
        c,
        &prod,
        &c.compose(f0, &a.d0)?,
        &c.compose(f0, &a.d1)?,
    )?;
    c.lift(&anchor, &down)
}

fn pt_like_base(base: &Category) -> bool {
    // every hom-set a singleton, so morphism data reduces to indices
    match base.objects() {
        Some(objs) => objs.iter().all(|x| {
            objs.iter()
                .all(|y| base.hom(x, y).map(|h| h.len() == 1).unwrap_or(false))
        }),
        None => false,
    }
}

/// Combinatorial element view of a 2-groupoid whose carrier is finite
/// sets, or finite sums over a base with singleton hom-sets.
struct ElementView {
    /// level-0 element keys in order
    elems0: Vec<Key>,
    /// (edge key, source element, target element)
    edges: Vec<(Key, Key, Key)>,
}

fn element_view(ts: &TruncatedSimplicial) -> Result<Option<ElementView>> {
    match ts.carrier.kind() {
        CatKind::FinSet => {
            let elems0 = crate::cat::finset::elems(&ts.a0)?.to_vec();
            let elems1 = crate::cat::finset::elems(&ts.a1)?.to_vec();
            let mut edges = Vec::new();
            for r in &elems1 {
                edges.push((
                    r.clone(),
                    crate::cat::finset::apply(&ts.d0, r)?,
                    crate::cat::finset::apply(&ts.d1, r)?,
                ));
            }
            Ok(Some(ElementView { elems0, edges }))
        }
        CatKind::Sums(base) if pt_like_base(base) => {
            let n0 = crate::sums::components(&ts.a0)?.len();
            let (d0i, _) = crate::sums::decode_mor(&ts.d0)?;
            let (d1i, _) = crate::sums::decode_mor(&ts.d1)?;
            let elems0: Vec<Key> = (0..n0 as u64).map(Key::Nat).collect();
            let edges = d0i
                .iter()
                .zip(&d1i)
                .enumerate()
                .map(|(e, (&s, &t))| (Key::Nat(e as u64), Key::Nat(s as u64), Key::Nat(t as u64)))
                .collect();
            Ok(Some(ElementView { elems0, edges }))
        }
        _ => Ok(None),
    }
}

impl ElementView {
    /// Blocks of the equivalence relation generated by the edges
    /// (for Kan objects the edge image is already an equivalence
    /// relation); each element maps to the least member of its block.
    fn block_min(&self) -> std::collections::BTreeMap<Key, Key> {
        let mut parent: std::collections::BTreeMap<Key, Key> = self
            .elems0
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        fn root(parent: &mut std::collections::BTreeMap<Key, Key>, k: &Key) -> Key {
            let p = parent.get(k).cloned().unwrap_or_else(|| k.clone());
            if p == *k {
                return p;
            }
            let r = root(parent, &p);
            parent.insert(k.clone(), r.clone());
            r
        }
        for (_, s, t) in &self.edges {
            let (rs, rt) = (root(&mut parent, s), root(&mut parent, t));
            let (lo, hi) = if rs <= rt { (rs, rt) } else { (rt, rs) };
            parent.insert(hi, lo);
        }
        self.elems0
            .iter()
            .map(|e| (e.clone(), root(&mut parent, e)))
            .collect()
    }
}

/// Rebuilds a level-0 morphism of the carrier from an element assignment.
fn mor_from_assignment(
    a: &TruncatedSimplicial,
    b: &TruncatedSimplicial,
    assign: &std::collections::BTreeMap<Key, Key>,
    level: usize,
) -> Result<Mor> {
    let (src, tgt) = if level == 0 {
        (&a.a0, &b.a0)
    } else {
        (&a.a1, &b.a1)
    };
    match a.carrier.kind() {
        CatKind::FinSet => crate::cat::finset::mor_from_pairs(
            src,
            tgt,
            assign.iter().map(|(k, v)| (k.clone(), v.clone())),
        ),
        CatKind::Sums(base) => {
            let src_comps = crate::sums::components(src)?;
            let tgt_comps = crate::sums::components(tgt)?;
            let mut index_fun = Vec::new();
            let mut comps = Vec::new();
            for i in 0..src_comps.len() {
                let j = assign
                    .get(&Key::Nat(i as u64))
                    .and_then(|k| k.as_nat())
                    .ok_or_else(|| Error::Malformed("assignment misses an index".into()))?
                    as usize;
                index_fun.push(j);
                let hs = base.hom(&src_comps[i], &tgt_comps[j])?;
                comps.push(hs[0].clone());
            }
            Ok(crate::sums::encode_mor(src, tgt, &index_fun, &comps))
        }
        _ => Err(Error::Precondition("element view unavailable".into())),
    }
}

/// Enumerates all homotopy classes from `a` to `b`, canonically
/// represented and sorted by representative key.
pub fn hom_e2(a: &TruncatedSimplicial, b: &TruncatedSimplicial) -> Result<Vec<HomotopyClass>> {
    if let (Some(va), Some(vb)) = (element_view(a)?, element_view(b)?) {
        return hom_e2_elementwise(a, b, &va, &vb);
    }
    // generic path: scan level-0 morphisms in key order; the first seen
    // member of each class is its canonical representative
    let homs = a.carrier.hom(&a.a0, &b.a0)?;
    let mut classes: Vec<HomotopyClass> = Vec::new();
    'next: for f0 in homs {
        let Some(f1) = least_level1(a, b, &f0)? else {
            continue;
        };
        let cand = TwoGroupoidMorphism { f0, f1 };
        for cl in &classes {
            if are_homotopic(b, &cl.rep, &cand)?.is_some() {
                continue 'next;
            }
        }
        classes.push(HomotopyClass {
            src: a.clone(),
            tgt: b.clone(),
            rep: cand,
        });
    }
    classes.sort_by(|x, y| x.rep.key().cmp(&y.rep.key()));
    Ok(classes)
}

/// Element-level class enumeration: classes correspond to block-preserving
/// assignments from source blocks to target block minima, because the
/// edge image of a Kan object is an equivalence relation on elements.
fn hom_e2_elementwise(
    a: &TruncatedSimplicial,
    b: &TruncatedSimplicial,
    va: &ElementView,
    vb: &ElementView,
) -> Result<Vec<HomotopyClass>> {
    let block_a = va.block_min();
    let block_b = vb.block_min();
    let mut blocks_a: Vec<Key> = block_a.values().cloned().collect();
    blocks_a.sort();
    blocks_a.dedup();
    let mut reps_b: Vec<Key> = block_b.values().cloned().collect();
    reps_b.sort();
    reps_b.dedup();
    if !blocks_a.is_empty() && reps_b.is_empty() {
        return Ok(vec![]);
    }
    guard_cap((reps_b.len().max(1) as u128).pow(blocks_a.len() as u32))?;
    let mut classes = Vec::new();
    let mut idx = vec![0usize; blocks_a.len()];
    loop {
        // level 0: every element goes to its block's assigned representative
        let mut assign0 = std::collections::BTreeMap::new();
        for e in &va.elems0 {
            let bi = blocks_a.binary_search(&block_a[e]).unwrap();
            assign0.insert(e.clone(), reps_b[idx[bi]].clone());
        }
        let f0 = mor_from_assignment(a, b, &assign0, 0)?;
        // level 1: each edge goes to the least target edge over its image
        let mut assign1 = std::collections::BTreeMap::new();
        let mut ok = true;
        for (ek, es, et) in &va.edges {
            let (fs, ft) = (&assign0[es], &assign0[et]);
            let mut found = None;
            for (wk, ws, wt) in &vb.edges {
                if ws == fs && wt == ft {
                    found = Some(wk.clone());
                    break;
                }
            }
            match found {
                Some(w) => {
                    assign1.insert(ek.clone(), w);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let f1 = mor_from_assignment(a, b, &assign1, 1)?;
            classes.push(HomotopyClass {
                src: a.clone(),
                tgt: b.clone(),
                rep: TwoGroupoidMorphism { f0, f1 },
            });
        }
        let mut k = idx.len();
        let mut done = false;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            if idx[k] + 1 < reps_b.len() {
                idx[k] += 1;
                for v in idx[k + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
        if done || blocks_a.is_empty() {
            break;
        }
    }
    classes.sort_by(|x, y| x.rep.key().cmp(&y.rep.key()));
    Ok(classes)
}

/// Builds a 2-groupoid over a sums category from an index-level relation:
/// one vertex summand per listed base object, one edge summand per index
/// pair with the chosen product of its endpoint components, faces given
/// by the product legs. The edge list must contain every reflexive pair
/// so the diagonal degeneracy exists.
pub fn sums_groupoid_from_index_relation(
    sums_cat: &Category,
    base: &Category,
    vertices: &[Obj],
    edges: &[(usize, usize)],
) -> Result<TruncatedSimplicial> {
    let a0 = crate::sums::sum_obj(vertices.iter().map(crate::sums::embed_obj).flat_map(
        |o| crate::sums::components(&o).unwrap_or_default(),
    ));
    let mut edge_comps = Vec::new();
    let mut d0_ix = Vec::new();
    let mut d0_comps = Vec::new();
    let mut d1_ix = Vec::new();
    let mut d1_comps = Vec::new();
    for &(i, j) in edges {
        let prod = limits::binary_product(base, &vertices[i], &vertices[j])?;
        edge_comps.push(prod.apex.clone());
        d0_ix.push(i);
        d0_comps.push(prod.p1.clone());
        d1_ix.push(j);
        d1_comps.push(prod.p2.clone());
    }
    let a1 = crate::sums::sum_obj(edge_comps);
    let d0 = crate::sums::encode_mor(&a1, &a0, &d0_ix, &d0_comps);
    let d1 = crate::sums::encode_mor(&a1, &a0, &d1_ix, &d1_comps);
    let mut s_ix = Vec::new();
    let mut s_comps = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        let pos = edges
            .iter()
            .position(|&(a, b)| a == i && b == i)
            .ok_or_else(|| {
                Error::Precondition("index relation must contain every reflexive pair".into())
            })?;
        let prod = limits::binary_product(base, v, v)?;
        let idv = base.identity(v)?;
        s_ix.push(pos);
        s_comps.push(limits::pb_mediator(base, &prod, &idv, &idv)?);
    }
    let s = crate::sums::encode_mor(&a0, &a1, &s_ix, &s_comps);
    TruncatedSimplicial::new(sums_cat.clone(), a0, a1, d0, d1, s)
}

/// The point groupoid: both levels the chosen terminal.
pub fn point_groupoid(carrier: &Category) -> Result<TruncatedSimplicial> {
    let t = limits::chosen_terminal(carrier)?;
    let id = carrier.identity(&t.obj)?;
    TruncatedSimplicial::new(
        carrier.clone(),
        t.obj.clone(),
        t.obj,
        id.clone(),
        id.clone(),
        id,
    )
}

/// The homotopy category of equivalence 2-groupoids over a lex base, with
/// a declared probe family (object keys of that category) for universal-
/// property certificates.
pub fn e2_category(base: &Category, probes: Vec<Key>) -> Result<Category> {
    let t = limits::chosen_terminal(base)?;
    limits::validate_terminal(base, &t)?;
    Ok(Category::new(
        CatKind::E2(base.clone()),
        format!("e2-over({})", base.name()),
    )
    .with_probes(probes))
}

/// Builds a 2-groupoid over finite sets from a set of elements and a
/// list of related pairs; the pair set must contain the diagonal so the
/// degeneracy exists.
pub fn finset_relation_groupoid(
    elements: impl IntoIterator<Item = Key>,
    pairs: &[(Key, Key)],
) -> Result<TruncatedSimplicial> {
    let carrier = Category::finset();
    let a0 = crate::cat::finset::obj(elements);
    let a1 = crate::cat::finset::obj(pairs.iter().map(|(x, y)| Key::pair(x.clone(), y.clone())));
    let elems1 = crate::cat::finset::elems(&a1)?.to_vec();
    let d0 = crate::cat::finset::mor_from_pairs(
        &a1,
        &a0,
        elems1
            .iter()
            .map(|p| (p.clone(), p.as_seq().unwrap()[0].clone())),
    )?;
    let d1 = crate::cat::finset::mor_from_pairs(
        &a1,
        &a0,
        elems1
            .iter()
            .map(|p| (p.clone(), p.as_seq().unwrap()[1].clone())),
    )?;
    let elems0 = crate::cat::finset::elems(&a0)?.to_vec();
    let s = crate::cat::finset::mor_from_pairs(
        &a0,
        &a1,
        elems0
            .iter()
            .map(|x| (x.clone(), Key::pair(x.clone(), x.clone()))),
    )
    .map_err(|_| {
        Error::Precondition("relation must contain the diagonal to carry a degeneracy".into())
    })?;
    TruncatedSimplicial::new(carrier, a0, a1, d0, d1, s)
}

#[cfg(test)]
mod tests;

mod colimits;
mod functors;
mod hpullback;

pub use colimits::{coequalizer_c, internal_kan_check, quotient, quotient_factor, InternalGroupoid};
pub use functors::{apply_lex_functor, class_predicates, d_functor, e_functor, path_object, ClassPredicates, DPresentation};
pub use hpullback::{pullback_h, pullback_h_mediator, HPullback};

/// Composition of two edge-valued maps through the inner-horn section:
/// given `u, v : W → A1` with `d1∘u = d0∘v`, produces `w` with
/// `d0∘w = d0∘u` and `d1∘w = d1∘v`.
pub fn kan_compose(
    a: &TruncatedSimplicial,
    witness: &KanWitness,
    u: &Mor,
    v: &Mor,
) -> Result<Mor> {
    let c = &a.carrier;
    if c.compose(&a.d1, u)?.key != c.compose(&a.d0, v)?.key {
        return Err(Error::Precondition("edge maps are not composable".into()));
    }
    let horn = evaluate(a, &GraphShape::horn(1))?;
    let boundary = evaluate(a, &GraphShape::boundary_2_simplex())?;
    let vertices = [
        c.compose(&a.d0, u)?,
        c.compose(&a.d1, u)?,
        c.compose(&a.d1, v)?,
    ];
    let med = eval_mediator(a, &horn, &vertices, &[u.clone(), v.clone()])?;
    let filled = c.compose(&witness.sections[1], &med)?;
    // edge 02 of the filled boundary is the composite
    c.compose(boundary.edge_leg(1), &filled)
}

/// Inversion of an edge-valued map through the initial-horn section:
/// given `u : W → A1`, produces `u'` with `d0∘u' = d1∘u`, `d1∘u' = d0∘u`.
pub fn kan_invert(a: &TruncatedSimplicial, witness: &KanWitness, u: &Mor) -> Result<Mor> {
    let c = &a.carrier;
    let horn = evaluate(a, &GraphShape::horn(0))?;
    let boundary = evaluate(a, &GraphShape::boundary_2_simplex())?;
    let src = c.compose(&a.d0, u)?;
    let degenerate = c.compose(&a.s, &src)?;
    let vertices = [src.clone(), c.compose(&a.d1, u)?, src];
    let med = eval_mediator(a, &horn, &vertices, &[u.clone(), degenerate])?;
    let filled = c.compose(&witness.sections[0], &med)?;
    // edge 12 of the filled boundary runs from d1∘u back to d0∘u
    c.compose(boundary.edge_leg(2), &filled)
}
