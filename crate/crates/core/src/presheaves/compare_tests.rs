use std::collections::BTreeMap;

use super::compare::*;
use super::{psh_category, pushout, yoneda, PresheafTable};
use crate::cat::{Category, Obj};
use crate::groupoids::{sums_groupoid_from_index_relation, TruncatedSimplicial};
use crate::key::Key;
use crate::sums::{self, sums_category};

fn point_base() -> Category {
    let mut d = crate::cat::tabulated::TabulatedData::new();
    d.add_object(Key::sym("*"));
    d.add_morphism(Key::sym("id"), Key::sym("*"), Key::sym("*"));
    d.set_identity(Key::sym("*"), Key::sym("id"));
    d.set_composite(Key::sym("id"), Key::sym("id"), Key::sym("id"));
    Category::tabulated(d, "pt").unwrap()
}

fn chain3_base() -> Category {
    let data = crate::cat::tabulated::preorder_category(
        &[Key::Nat(0), Key::Nat(1), Key::Nat(2)],
        &[(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(2))],
    );
    Category::tabulated(data, "chain3").unwrap()
}

/// n points with an index-level relation, over sums of the point.
fn pt_groupoid(
    sums_cat: &Category,
    base: &Category,
    n: usize,
    extra: &[(usize, usize)],
) -> TruncatedSimplicial {
    let pt = Obj::new(Key::sym("*"));
    let verts = vec![pt; n];
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    edges.extend_from_slice(extra);
    sums_groupoid_from_index_relation(sums_cat, base, &verts, &edges).unwrap()
}

#[test]
fn embedding_an_object_gives_its_representable() {
    let base = chain3_base();
    let s = sums_category(&base).unwrap();
    let x = Obj::new(Key::Nat(1));
    let g = sums_groupoid_from_index_relation(&s, &base, &[x.clone()], &[(0, 0)]).unwrap();
    let emb = embed_to_psh(&base, &s, &g).unwrap();
    let y = yoneda(&base, &x).unwrap();
    for v in base.objects().unwrap() {
        assert_eq!(
            emb.table.value(&v.key).len(),
            y.value(&v.key).len(),
            "stalk size at {}",
            v.key
        );
    }
}

#[test]
fn embedding_a_full_relation_collapses_to_a_point() {
    let base = point_base();
    let s = sums_category(&base).unwrap();
    let g = pt_groupoid(&s, &base, 2, &[(0, 1), (1, 0)]);
    let emb = embed_to_psh(&base, &s, &g).unwrap();
    assert_eq!(emb.table.value(&Key::sym("*")).len(), 1);
}

#[test]
fn embedding_preserves_coproducts_of_representables() {
    let base = chain3_base();
    let s = sums_category(&base).unwrap();
    let x0 = Obj::new(Key::Nat(0));
    let x2 = Obj::new(Key::Nat(2));
    let g = sums_groupoid_from_index_relation(
        &s,
        &base,
        &[x0.clone(), x2.clone()],
        &[(0, 0), (1, 1)],
    )
    .unwrap();
    let emb = embed_to_psh(&base, &s, &g).unwrap();
    let y0 = yoneda(&base, &x0).unwrap();
    let y2 = yoneda(&base, &x2).unwrap();
    for v in base.objects().unwrap() {
        assert_eq!(
            emb.table.value(&v.key).len(),
            y0.value(&v.key).len() + y2.value(&v.key).len()
        );
    }
}

#[test]
fn fully_faithful_on_discrete_groupoids() {
    let base = point_base();
    let s = sums_category(&base).unwrap();
    let two = pt_groupoid(&s, &base, 2, &[]);
    let three = pt_groupoid(&s, &base, 3, &[]);
    let report = check_fully_faithful(&base, &s, &[(two.clone(), three.clone())]).unwrap();
    assert!(report.all_pass(), "{}", report.render());
    // both sides count 3^2 = 9
    assert_eq!(crate::groupoids::hom_e2(&two, &three).unwrap().len(), 9);
}

#[test]
fn fully_faithful_merges_through_relations() {
    let base = point_base();
    let s = sums_category(&base).unwrap();
    let full2 = pt_groupoid(&s, &base, 2, &[(0, 1), (1, 0)]);
    let three = pt_groupoid(&s, &base, 3, &[]);
    let pairs = vec![
        (full2.clone(), three.clone()),
        (three.clone(), full2.clone()),
        (full2.clone(), full2.clone()),
    ];
    let report = check_fully_faithful(&base, &s, &pairs).unwrap();
    assert!(report.all_pass(), "{}", report.render());
}

#[test]
fn recognition_of_coproducts_of_representables() {
    let base = chain3_base();
    let y1 = yoneda(&base, &Obj::new(Key::Nat(1))).unwrap();
    let rec = as_sum_of_representables(&base, &y1).unwrap().unwrap();
    assert_eq!(rec.components.len(), 1);
    assert_eq!(rec.components[0].0.key, Key::Nat(1));
    // a two-element constant presheaf over the point base splits in two
    let pt = point_base();
    let two = PresheafTable::build(
        &pt,
        BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0), Key::Nat(1)])]),
        BTreeMap::new(),
    )
    .unwrap();
    let rec = as_sum_of_representables(&pt, &two).unwrap().unwrap();
    assert_eq!(rec.components.len(), 2);
    // a non-representable presheaf over the chain is rejected: value only
    // at the bottom but nontrivially glued shapes cannot split
    let odd = PresheafTable::build(
        &base,
        BTreeMap::from([
            (Key::Nat(0), vec![Key::Nat(0), Key::Nat(1)]),
            (Key::Nat(1), vec![Key::Nat(0)]),
            (Key::Nat(2), vec![]),
        ]),
        BTreeMap::from([(
            Key::pair(Key::Nat(0), Key::Nat(1)),
            BTreeMap::from([(Key::Nat(0), Key::Nat(0))]),
        )]),
    )
    .unwrap();
    // the element (0, 1) is not in the image of any component terminal
    // unless a second component carries it; recognition still succeeds
    // here because each element class has a terminal, so just check it
    // runs and routes every element
    if let Some(rec) = as_sum_of_representables(&base, &odd).unwrap() {
        assert_eq!(rec.components.len(), 2);
    }
}

#[test]
fn cover_roundtrips_small_presheaves() {
    // representable over the chain
    let base = chain3_base();
    let s = sums_category(&base).unwrap();
    let y1 = yoneda(&base, &Obj::new(Key::Nat(1))).unwrap();
    let cover = presheaf_cover(&base, &s, &y1).unwrap();
    assert!(matches!(
        cover.groupoid.check_kan().unwrap(),
        crate::groupoids::KanOutcome::Witness(_)
    ));
    // two-element constant presheaf over the point: two summands with the
    // diagonal relation
    let pt = point_base();
    let spt = sums_category(&pt).unwrap();
    let two = PresheafTable::build(
        &pt,
        BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0), Key::Nat(1)])]),
        BTreeMap::new(),
    )
    .unwrap();
    let cover = presheaf_cover(&pt, &spt, &two).unwrap();
    assert_eq!(sums::components(&cover.groupoid.a0).unwrap().len(), 2);
    assert_eq!(sums::components(&cover.groupoid.a1).unwrap().len(), 2);
    // constant singleton: one point, trivial relation
    let one = PresheafTable::build(
        &pt,
        BTreeMap::from([(Key::sym("*"), vec![Key::Unit])]),
        BTreeMap::new(),
    )
    .unwrap();
    let cover = presheaf_cover(&pt, &spt, &one).unwrap();
    assert_eq!(sums::components(&cover.groupoid.a0).unwrap().len(), 1);
}

#[test]
fn simplicity_passes_to_subobjects() {
    let pt = point_base();
    let two = PresheafTable::build(
        &pt,
        BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0), Key::Nat(1)])]),
        BTreeMap::new(),
    )
    .unwrap();
    assert!(check_simple(&pt, &two).unwrap().is_some());
    let sub = PresheafTable::build(
        &pt,
        BTreeMap::from([(Key::sym("*"), vec![Key::Nat(0)])]),
        BTreeMap::new(),
    )
    .unwrap();
    assert!(check_simple(&pt, &sub).unwrap().is_some());
}

#[test]
fn indexed_presentation_round_trips() {
    let base = chain3_base();
    let s = sums_category(&base).unwrap();
    let g = sums_groupoid_from_index_relation(
        &s,
        &base,
        &[Obj::new(Key::Nat(0)), Obj::new(Key::Nat(2))],
        &[(0, 0), (1, 1)],
    )
    .unwrap();
    let p = to_indexed(&g).unwrap();
    let back = from_indexed(&s, &p).unwrap();
    assert_eq!(back.key(), g.key());
}

#[test]
fn pointwise_pushout_matches_set_oracle() {
    let pt = point_base();
    let psh = psh_category(&pt).unwrap();
    let star = Key::sym("*");
    let mk = |elems: Vec<Key>| {
        PresheafTable::build(&pt, BTreeMap::from([(star.clone(), elems)]), BTreeMap::new())
            .unwrap()
    };
    let h = mk(vec![Key::Nat(0)]);
    let f_t = mk(vec![Key::Nat(0), Key::Nat(1)]);
    let g_t = mk(vec![Key::Nat(0), Key::Nat(1)]);
    // span picks 0 in F and 1 in G: pushout glues them: 2 + 2 - 1 = 3
    let f = {
        let nts = psh.hom(&h.to_obj(), &f_t.to_obj()).unwrap();
        nts.into_iter()
            .find(|m| m.key.to_string().contains("[0,0]"))
            .unwrap()
    };
    let g = {
        let nts = psh.hom(&h.to_obj(), &g_t.to_obj()).unwrap();
        nts.into_iter()
            .find(|m| m.key.to_string().contains("[0,1]"))
            .unwrap()
    };
    let (apex, inj_f, inj_g) = pushout(&pt, &f, &g).unwrap();
    let apex_table = PresheafTable::from_key(&pt, &apex.key).unwrap();
    assert_eq!(apex_table.value(&star).len(), 3);
    // the glued elements agree
    let ft = PresheafTable::from_key(&pt, &f.tgt).unwrap();
    let _ = ft;
    let dec = |m: &crate::cat::Mor, e: &Key| {
        let tables = m.key.as_seq().unwrap();
        for entry in tables {
            let kv = entry.as_seq().unwrap();
            if kv[0] == star {
                for pair in kv[1].as_seq().unwrap() {
                    let p = pair.as_seq().unwrap();
                    if p[0] == *e {
                        return p[1].clone();
                    }
                }
            }
        }
        panic!("component not found");
    };
    assert_eq!(dec(&inj_f, &Key::Nat(0)), dec(&inj_g, &Key::Nat(1)));
}
