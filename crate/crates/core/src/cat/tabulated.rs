//! Fully tabulated finite categories: explicit object, morphism, identity
//! and composition tables. Everything about them is checkable by
//! exhaustive enumeration.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::key::Key;

use super::{Mor, Obj};

#[derive(Clone, Debug, Default)]
pub struct TabulatedData {
    /// Object keys in canonical (sorted) order.
    pub objects: Vec<Key>,
    /// morphism id -> (src, tgt)
    pub morphisms: BTreeMap<Key, (Key, Key)>,
    /// object -> identity morphism id
    pub identities: BTreeMap<Key, Key>,
    /// (g, f) -> g∘f for composable pairs
    pub compose: BTreeMap<(Key, Key), Key>,
}

impl TabulatedData {
    pub fn new() -> TabulatedData {
        TabulatedData::default()
    }

    pub fn add_object(&mut self, key: Key) {
        if !self.objects.contains(&key) {
            self.objects.push(key);
            self.objects.sort();
        }
    }

    pub fn add_morphism(&mut self, id: Key, src: Key, tgt: Key) {
        self.morphisms.insert(id, (src, tgt));
    }

    pub fn set_identity(&mut self, obj: Key, id: Key) {
        self.identities.insert(obj, id);
    }

    pub fn set_composite(&mut self, g: Key, f: Key, result: Key) {
        self.compose.insert((g, f), result);
    }

    /// Rejects tables with dangling src/tgt/identity/composite references.
    pub fn validate_refs(&self) -> Result<()> {
        for (id, (s, t)) in &self.morphisms {
            if !self.objects.contains(s) || !self.objects.contains(t) {
                return Err(Error::DanglingRef(format!(
                    "morphism {id} has src/tgt outside the object list"
                )));
            }
        }
        for (x, id) in &self.identities {
            if !self.objects.contains(x) {
                return Err(Error::DanglingRef(format!("identity declared for unknown object {x}")));
            }
            match self.morphisms.get(id) {
                Some((s, t)) if s == x && t == x => {}
                Some(_) => {
                    return Err(Error::DanglingRef(format!(
                        "identity of {x} is not an endomorphism of {x}"
                    )))
                }
                None => return Err(Error::DanglingRef(format!("identity of {x} is not a morphism"))),
            }
        }
        for ((g, f), r) in &self.compose {
            for id in [g, f, r] {
                if !self.morphisms.contains_key(id) {
                    return Err(Error::DanglingRef(format!("composite table mentions unknown {id}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_object(&self, x: &Obj) -> Result<()> {
        if self.objects.contains(&x.key) {
            Ok(())
        } else {
            Err(Error::DanglingRef(format!("unknown object {}", x.key)))
        }
    }

    fn mor(&self, id: &Key) -> Result<Mor> {
        let (s, t) = self
            .morphisms
            .get(id)
            .ok_or_else(|| Error::DanglingRef(format!("unknown morphism {id}")))?;
        Ok(Mor::new(s.clone(), t.clone(), id.clone()))
    }

    pub fn hom(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        Ok(self
            .morphisms
            .iter()
            .filter(|(_, (s, t))| *s == x.key && *t == y.key)
            .map(|(id, (s, t))| Mor::new(s.clone(), t.clone(), id.clone()))
            .collect())
    }

    pub fn identity(&self, x: &Obj) -> Result<Mor> {
        let id = self
            .identities
            .get(&x.key)
            .ok_or_else(|| Error::DanglingRef(format!("no identity tabulated for {}", x.key)))?;
        self.mor(id)
    }

    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        let r = self
            .compose
            .get(&(g.key.clone(), f.key.clone()))
            .ok_or_else(|| {
                Error::Malformed(format!("missing composite entry for ({}, {})", g.key, f.key))
            })?;
        let m = self.mor(r)?;
        if m.src != f.src || m.tgt != g.tgt {
            return Err(Error::Malformed(format!(
                "ill-typed composite entry for ({}, {})",
                g.key, f.key
            )));
        }
        Ok(m)
    }

    pub fn all_morphisms(&self) -> Vec<Mor> {
        self.morphisms
            .iter()
            .map(|(id, (s, t))| Mor::new(s.clone(), t.clone(), id.clone()))
            .collect()
    }
}

/// Builds the tabulated category of a finite preorder given by `leq` pairs
/// (reflexive-transitive closure is taken); morphism ids are `[x, y]`.
pub fn preorder_category(elements: &[Key], hasse: &[(Key, Key)]) -> TabulatedData {
    let mut leq: Vec<(Key, Key)> = elements.iter().map(|e| (e.clone(), e.clone())).collect();
    leq.extend(hasse.iter().cloned());
    loop {
        let mut grew = false;
        let snapshot = leq.clone();
        for (a, b) in &snapshot {
            for (c, d) in &snapshot {
                if b == c && !leq.contains(&(a.clone(), d.clone())) {
                    leq.push((a.clone(), d.clone()));
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut data = TabulatedData::new();
    for e in elements {
        data.add_object(e.clone());
    }
    for (a, b) in &leq {
        data.add_morphism(Key::pair(a.clone(), b.clone()), a.clone(), b.clone());
    }
    for e in elements {
        data.set_identity(e.clone(), Key::pair(e.clone(), e.clone()));
    }
    for (a, b) in &leq {
        for (c, d) in &leq {
            if b == c {
                data.set_composite(
                    Key::pair(c.clone(), d.clone()),
                    Key::pair(a.clone(), b.clone()),
                    Key::pair(a.clone(), d.clone()),
                );
            }
        }
    }
    data
}
