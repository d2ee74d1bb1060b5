//! Instance bundles: JSON files describing categories, sum objects,
//! groupoids, relations and presheaves, with all references resolving
//! inside the bundle and stored witnesses revalidated on load.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cat::{finposet::PosetData, tabulated::TabulatedData, Category, Mor, Obj};
use crate::error::{Error, Result};
use crate::groupoids::{self, TruncatedSimplicial};
use crate::key::Key;
use crate::presheaves::PresheafTable;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub id: serde_json::Value,
    pub src: serde_json::Value,
    pub tgt: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComposeDecl {
    pub g: serde_json::Value,
    pub f: serde_json::Value,
    pub result: serde_json::Value,
}

/// Tabulated category file: objects, morphisms, identities, compose.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct TabulatedDecl {
    pub objects: Vec<serde_json::Value>,
    pub morphisms: Vec<MorphismDecl>,
    pub identities: BTreeMap<String, serde_json::Value>,
    pub compose: Vec<ComposeDecl>,
}

/// Builder declarations for the constructive base kinds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CategoryDecl {
    Tabulated(TabulatedDecl),
    Finset,
    Finposet {
        elements: Vec<serde_json::Value>,
        hasse: Vec<(serde_json::Value, serde_json::Value)>,
    },
    /// Sums over another declared category.
    Sums { base: String },
    /// 2-groupoid homotopy category over another declared category.
    E2 { base: String },
    /// Presheaves over another declared category.
    Psh { base: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumObjectDecl {
    pub category: String,
    pub indices: Vec<serde_json::Value>,
    pub family: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KanDecl {
    pub s0: serde_json::Value,
    pub s1: serde_json::Value,
    pub s2: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidDecl {
    pub carrier: String,
    #[serde(rename = "A0")]
    pub a0: serde_json::Value,
    #[serde(rename = "A1")]
    pub a1: serde_json::Value,
    pub d0: serde_json::Value,
    pub d1: serde_json::Value,
    pub s: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kan: Option<KanDecl>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationDecl {
    pub category: String,
    pub x: serde_json::Value,
    pub pairs: Vec<(serde_json::Value, serde_json::Value)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafDecl {
    pub base: String,
    pub values: BTreeMap<String, Vec<serde_json::Value>>,
    pub actions: BTreeMap<String, BTreeMap<String, serde_json::Value>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct InstanceBundle {
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryDecl>,
    #[serde(default)]
    pub sum_objects: BTreeMap<String, SumObjectDecl>,
    #[serde(default)]
    pub groupoids: BTreeMap<String, GroupoidDecl>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationDecl>,
    #[serde(default)]
    pub presheaves: BTreeMap<String, PresheafDecl>,
    #[serde(default)]
    pub grids: BTreeMap<String, Vec<serde_json::Value>>,
}

fn key_of(v: &serde_json::Value) -> Result<Key> {
    Key::from_json(v).ok_or_else(|| Error::Malformed(format!("bad key literal: {v}")))
}

/// A bundle resolved into live values; construction revalidates every
/// stored witness.
pub struct ResolvedBundle {
    pub categories: BTreeMap<String, Category>,
    pub groupoids: BTreeMap<String, TruncatedSimplicial>,
    pub sum_objects: BTreeMap<String, (Category, Obj)>,
    pub relations: BTreeMap<String, (Category, crate::pretopos::RelationOver)>,
    pub presheaves: BTreeMap<String, (Category, PresheafTable)>,
    pub grids: BTreeMap<String, Vec<Key>>,
}

impl InstanceBundle {
    pub fn from_json(text: &str) -> Result<InstanceBundle> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("bundle parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialization cannot fail")
    }

    pub fn resolve(&self) -> Result<ResolvedBundle> {
        let mut categories: BTreeMap<String, Category> = BTreeMap::new();
        // resolve categories, allowing references to earlier entries
        let mut pending: Vec<(&String, &CategoryDecl)> = self.categories.iter().collect();
        let mut progress = true;
        while !pending.is_empty() && progress {
            progress = false;
            pending.retain(|(name, decl)| {
                match build_category(decl, &categories) {
                    Ok(Some(cat)) => {
                        categories.insert((*name).clone(), cat);
                        progress = true;
                        false
                    }
                    _ => true,
                }
            });
        }
        if let Some((name, _)) = pending.first() {
            return Err(Error::DanglingRef(format!(
                "category {name} references an unknown base"
            )));
        }
        let mut groupoids_out = BTreeMap::new();
        for (name, decl) in &self.groupoids {
            let carrier = categories
                .get(&decl.carrier)
                .ok_or_else(|| Error::DanglingRef(format!("groupoid {name}: unknown carrier")))?;
            let a0 = Obj::new(key_of(&decl.a0)?);
            let a1 = Obj::new(key_of(&decl.a1)?);
            let ts = TruncatedSimplicial::new(
                carrier.clone(),
                a0.clone(),
                a1.clone(),
                Mor::new(a1.key.clone(), a0.key.clone(), key_of(&decl.d0)?),
                Mor::new(a1.key.clone(), a0.key.clone(), key_of(&decl.d1)?),
                Mor::new(a0.key.clone(), a1.key.clone(), key_of(&decl.s)?),
            )?;
            if let Some(kan) = &decl.kan {
                let witness = stored_witness(&ts, kan)?;
                groupoids::revalidate_kan(&ts, &witness)?;
            }
            groupoids_out.insert(name.clone(), ts);
        }
        let mut sum_objects = BTreeMap::new();
        for (name, decl) in &self.sum_objects {
            let cat = categories
                .get(&decl.category)
                .ok_or_else(|| Error::DanglingRef(format!("sum object {name}: unknown category")))?;
            let mut family = Vec::new();
            for idx in &decl.indices {
                let label = match idx {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let comp = decl.family.get(&label).ok_or_else(|| {
                    Error::DanglingRef(format!("sum object {name}: family misses index {label}"))
                })?;
                family.push(Obj::new(key_of(comp)?));
            }
            let obj = crate::sums::sum_obj(family);
            cat.check_object(&obj)?;
            sum_objects.insert(name.clone(), (cat.clone(), obj));
        }
        let mut relations = BTreeMap::new();
        for (name, decl) in &self.relations {
            let cat = categories
                .get(&decl.category)
                .ok_or_else(|| Error::DanglingRef(format!("relation {name}: unknown category")))?;
            let x = Obj::new(key_of(&decl.x)?);
            cat.check_object(&x)?;
            let rel = finset_relation(cat, &x, &decl.pairs)?;
            relations.insert(name.clone(), (cat.clone(), rel));
        }
        let mut presheaves = BTreeMap::new();
        for (name, decl) in &self.presheaves {
            let base = categories
                .get(&decl.base)
                .ok_or_else(|| Error::DanglingRef(format!("presheaf {name}: unknown base")))?;
            let mut values = BTreeMap::new();
            for (obj, elems) in &decl.values {
                values.insert(
                    parse_label(obj)?,
                    elems.iter().map(key_of).collect::<Result<Vec<_>>>()?,
                );
            }
            let mut actions = BTreeMap::new();
            for (mor, table) in &decl.actions {
                let mut t = BTreeMap::new();
                for (e, v) in table {
                    t.insert(parse_label(e)?, key_of(v)?);
                }
                actions.insert(parse_label(mor)?, t);
            }
            let table = PresheafTable::build(base, values, actions)?;
            presheaves.insert(name.clone(), (base.clone(), table));
        }
        let mut grids = BTreeMap::new();
        for (name, cells) in &self.grids {
            grids.insert(
                name.clone(),
                cells.iter().map(key_of).collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(ResolvedBundle {
            categories,
            groupoids: groupoids_out,
            sum_objects,
            relations,
            presheaves,
            grids,
        })
    }
}

fn parse_label(s: &str) -> Result<Key> {
    // labels in JSON maps are strings; try the JSON reading first so
    // numeric and structured keys round-trip
    if let Ok(v) = serde_json::from_str::<serde_json::Value>(s) {
        if let Some(k) = Key::from_json(&v) {
            return Ok(k);
        }
    }
    Ok(Key::sym(s))
}

fn stored_witness(ts: &TruncatedSimplicial, kan: &KanDecl) -> Result<groupoids::KanWitness> {
    let boundary = groupoids::evaluate(ts, &groupoids::GraphShape::boundary_2_simplex())?;
    let mut sections = Vec::new();
    for (i, raw) in [&kan.s0, &kan.s1, &kan.s2].into_iter().enumerate() {
        let horn = groupoids::evaluate(ts, &groupoids::GraphShape::horn(i))?;
        sections.push(Mor::new(
            horn.apex().key.clone(),
            boundary.apex().key.clone(),
            key_of(raw)?,
        ));
    }
    Ok(groupoids::KanWitness {
        sections: [sections[0].clone(), sections[1].clone(), sections[2].clone()],
    })
}

fn finset_relation(
    cat: &Category,
    x: &Obj,
    pairs: &[(serde_json::Value, serde_json::Value)],
) -> Result<crate::pretopos::RelationOver> {
    let prod = crate::limits::binary_product(cat, x, x)?;
    let mut elems = Vec::new();
    for (a, b) in pairs {
        elems.push(Key::pair(key_of(a)?, key_of(b)?));
    }
    let a = crate::cat::finset::obj(elems.clone());
    let anchor = crate::cat::finset::mor_from_pairs(
        &a,
        &prod.apex,
        crate::cat::finset::elems(&a)?
            .iter()
            .map(|e| (e.clone(), e.clone())),
    )?;
    crate::pretopos::RelationOver::new(cat, x.clone(), a, anchor)
}

fn build_category(
    decl: &CategoryDecl,
    known: &BTreeMap<String, Category>,
) -> Result<Option<Category>> {
    match decl {
        CategoryDecl::Finset => Ok(Some(Category::finset())),
        CategoryDecl::Tabulated(t) => {
            let mut data = TabulatedData::new();
            for o in &t.objects {
                data.add_object(key_of(o)?);
            }
            for m in &t.morphisms {
                data.add_morphism(key_of(&m.id)?, key_of(&m.src)?, key_of(&m.tgt)?);
            }
            for (obj, id) in &t.identities {
                data.set_identity(parse_label(obj)?, key_of(id)?);
            }
            for c in &t.compose {
                data.set_composite(key_of(&c.g)?, key_of(&c.f)?, key_of(&c.result)?);
            }
            Ok(Some(Category::tabulated(data, "tabulated")?))
        }
        CategoryDecl::Finposet { elements, hasse } => {
            let elems = elements.iter().map(key_of).collect::<Result<Vec<_>>>()?;
            let hasse = hasse
                .iter()
                .map(|(a, b)| Ok((key_of(a)?, key_of(b)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(Category::finposet(
                PosetData::from_hasse(elems, &hasse)?,
                "finposet",
            )))
        }
        CategoryDecl::Sums { base } => match known.get(base) {
            Some(b) => Ok(Some(crate::sums::sums_category(b)?)),
            None => Ok(None),
        },
        CategoryDecl::E2 { base } => match known.get(base) {
            Some(b) => Ok(Some(crate::groupoids::e2_category(b, Vec::new())?)),
            None => Ok(None),
        },
        CategoryDecl::Psh { base } => match known.get(base) {
            Some(b) => Ok(Some(crate::presheaves::psh_category(b)?)),
            None => Ok(None),
        },
    }
}
