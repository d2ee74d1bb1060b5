//! Table-driven functors between categories with enumerable sources,
//! with exhaustive functoriality checking and a lex certificate that
//! verifies chosen limits are carried to certified cones.

use std::collections::BTreeMap;

use crate::cat::{Category, Mor, Obj};
use crate::error::{Error, Result};
use crate::key::Key;
use crate::limits::{self, LimitCert, ProbeScope, PullbackSq, TerminalCert};

#[derive(Clone, Debug)]
pub struct Functor {
    pub src: Category,
    pub tgt: Category,
    obj_map: BTreeMap<Key, Key>,
    mor_map: BTreeMap<Key, Key>,
    lex: bool,
}

impl Functor {
    /// Builds and checks a functor from explicit object/morphism tables.
    /// The source must have enumerable objects and hom-sets; identities
    /// and all composites are verified exhaustively.
    pub fn from_tables(
        src: Category,
        tgt: Category,
        obj_map: BTreeMap<Key, Key>,
        mor_map: BTreeMap<Key, Key>,
    ) -> Result<Functor> {
        let f = Functor {
            src,
            tgt,
            obj_map,
            mor_map,
            lex: false,
        };
        f.check_functoriality()?;
        Ok(f)
    }

    pub fn identity(cat: &Category) -> Result<Functor> {
        let objects = cat
            .objects()
            .ok_or_else(|| Error::Precondition("identity functor table needs enumerable objects".into()))?;
        let mut obj_map = BTreeMap::new();
        let mut mor_map = BTreeMap::new();
        for x in &objects {
            obj_map.insert(x.key.clone(), x.key.clone());
            for y in &objects {
                for m in cat.hom(x, y)? {
                    mor_map.insert(m.key.clone(), m.key.clone());
                }
            }
        }
        Functor::from_tables(cat.clone(), cat.clone(), obj_map, mor_map)
    }

    /// The covariant hom-functor `hom(x, −)` into finite sets, with
    /// morphism keys as elements.
    pub fn hom_functor(cat: &Category, x: &Obj) -> Result<Functor> {
        let objects = cat
            .objects()
            .ok_or_else(|| Error::Precondition("hom functor needs enumerable objects".into()))?;
        let mut obj_map = BTreeMap::new();
        let mut mor_map = BTreeMap::new();
        for y in &objects {
            let hs = cat.hom(x, y)?;
            obj_map.insert(
                y.key.clone(),
                crate::cat::finset::obj(hs.iter().map(|m| m.key.clone())).key,
            );
        }
        for y in &objects {
            for z in &objects {
                for g in cat.hom(y, z)? {
                    let dom = crate::cat::finset::obj(cat.hom(x, y)?.iter().map(|m| m.key.clone()));
                    let cod = crate::cat::finset::obj(cat.hom(x, z)?.iter().map(|m| m.key.clone()));
                    let mut pairs = Vec::new();
                    for m in cat.hom(x, y)? {
                        pairs.push((m.key.clone(), cat.compose(&g, &m)?.key));
                    }
                    let f = crate::cat::finset::mor_from_pairs(&dom, &cod, pairs)?;
                    mor_map.insert(g.key.clone(), f.key);
                }
            }
        }
        Functor::from_tables(cat.clone(), Category::finset(), obj_map, mor_map)
    }

    pub fn apply_obj(&self, x: &Obj) -> Result<Obj> {
        self.obj_map
            .get(&x.key)
            .cloned()
            .map(Obj::new)
            .ok_or_else(|| Error::DanglingRef(format!("object {} outside functor table", x.key)))
    }

    pub fn apply_mor(&self, m: &Mor) -> Result<Mor> {
        let key = self
            .mor_map
            .get(&m.key)
            .cloned()
            .ok_or_else(|| Error::DanglingRef(format!("morphism {} outside functor table", m.key)))?;
        Ok(Mor::new(
            self.apply_obj(&m.src_obj())?.key,
            self.apply_obj(&m.tgt_obj())?.key,
            key,
        ))
    }

    pub fn is_lex_flagged(&self) -> bool {
        self.lex
    }

    fn check_functoriality(&self) -> Result<()> {
        let objects = self
            .src
            .objects()
            .ok_or_else(|| Error::Precondition("functor check needs enumerable source".into()))?;
        for x in &objects {
            let fx = self.apply_obj(x)?;
            self.tgt.check_object(&fx)?;
            let id = self.src.identity(x)?;
            if self.apply_mor(&id)?.key != self.tgt.identity(&fx)?.key {
                return Err(Error::Malformed(format!("identity of {} not preserved", x.key)));
            }
        }
        for x in &objects {
            for y in &objects {
                for f in self.src.hom(x, y)? {
                    let ff = self.apply_mor(&f)?;
                    if ff.src != self.apply_obj(x)?.key || ff.tgt != self.apply_obj(y)?.key {
                        return Err(Error::Malformed(format!("morphism {} mapped off-type", f.key)));
                    }
                    for z in &objects {
                        for g in self.src.hom(y, z)? {
                            let lhs = self.apply_mor(&self.src.compose(&g, &f)?)?;
                            let rhs = self.tgt.compose(&self.apply_mor(&g)?, &ff)?;
                            if lhs.key != rhs.key {
                                return Err(Error::Malformed(format!(
                                    "composition not preserved at ({}, {})",
                                    g.key, f.key
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Verifies that the chosen terminal and all chosen pullbacks of the
    /// source map to limit-certified cones in the target, and flags the
    /// functor lex. Certification in the target runs over `tgt_probes`.
    pub fn certify_lex(mut self, tgt_probes: &[Obj]) -> Result<Functor> {
        let probed = if tgt_probes.is_empty() {
            self.tgt.clone()
        } else {
            self.tgt
                .with_probes(tgt_probes.iter().map(|p| p.key.clone()).collect())
        };
        let src_t = limits::chosen_terminal(&self.src)?;
        let ft = TerminalCert {
            obj: self.apply_obj(&src_t.obj)?,
            cert: LimitCert {
                scope: if tgt_probes.is_empty() {
                    ProbeScope::Formula
                } else {
                    ProbeScope::Declared(tgt_probes.iter().map(|p| p.key.clone()).collect())
                },
            },
        };
        limits::validate_terminal(&probed, &ft)?;
        let objects = self.src.objects().unwrap_or_default();
        for x in &objects {
            for y in &objects {
                for z in &objects {
                    for f in self.src.hom(x, z)? {
                        for g in self.src.hom(y, z)? {
                            let sq = match limits::chosen_pullback(&self.src, &f, &g) {
                                Ok(sq) => sq,
                                Err(Error::NoPullback(_)) => continue,
                                Err(e) => return Err(e),
                            };
                            let image = PullbackSq {
                                f: self.apply_mor(&f)?,
                                g: self.apply_mor(&g)?,
                                apex: self.apply_obj(&sq.apex)?,
                                p1: self.apply_mor(&sq.p1)?,
                                p2: self.apply_mor(&sq.p2)?,
                                cert: ft.cert.clone(),
                            };
                            limits::validate_pullback(&probed, &image)?;
                        }
                    }
                }
            }
        }
        self.lex = true;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::finset;
    use crate::cat::tabulated::preorder_category;

    #[test]
    fn hom_functor_counts_points() {
        let data = preorder_category(
            &[Key::Nat(0), Key::Nat(1)],
            &[(Key::Nat(0), Key::Nat(1))],
        );
        let c = Category::tabulated(data, "chain2").unwrap();
        let f = Functor::hom_functor(&c, &Obj::new(Key::Nat(0))).unwrap();
        let img = f.apply_obj(&Obj::new(Key::Nat(1))).unwrap();
        assert_eq!(finset::elems(&img).unwrap().len(), 1);
        let probes = vec![finset::obj([Key::Unit]), finset::obj([])];
        assert!(f.certify_lex(&probes).is_ok());
    }
}
