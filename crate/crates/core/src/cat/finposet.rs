//! Finite posets as thin categories. Built from a Hasse relation; the
//! order is its reflexive-transitive closure. At most one morphism per
//! ordered pair, keyed `[x, y]`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::key::Key;

use super::{Mor, Obj};

#[derive(Clone, Debug)]
pub struct PosetData {
    pub elements: Vec<Key>,
    leq: BTreeSet<(Key, Key)>,
}

impl PosetData {
    /// Closes the Hasse relation reflexively and transitively.
    pub fn from_hasse(elements: Vec<Key>, hasse: &[(Key, Key)]) -> Result<PosetData> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let mut leq: BTreeSet<(Key, Key)> =
            elements.iter().map(|e| (e.clone(), e.clone())).collect();
        for (a, b) in hasse {
            if !elements.contains(a) || !elements.contains(b) {
                return Err(Error::DanglingRef(format!("hasse pair ({a}, {b}) outside elements")));
            }
            leq.insert((a.clone(), b.clone()));
        }
        loop {
            let mut add = Vec::new();
            for (a, b) in &leq {
                for (c, d) in &leq {
                    if b == c && !leq.contains(&(a.clone(), d.clone())) {
                        add.push((a.clone(), d.clone()));
                    }
                }
            }
            if add.is_empty() {
                break;
            }
            leq.extend(add);
        }
        // antisymmetry makes it a poset rather than a preorder
        for (a, b) in &leq {
            if a != b && leq.contains(&(b.clone(), a.clone())) {
                return Err(Error::Malformed(format!("order is not antisymmetric at {a}, {b}")));
            }
        }
        Ok(PosetData { elements, leq })
    }

    pub fn leq(&self, a: &Key, b: &Key) -> bool {
        self.leq.contains(&(a.clone(), b.clone()))
    }

    pub fn check_object(&self, x: &Obj) -> Result<()> {
        if self.elements.contains(&x.key) {
            Ok(())
        } else {
            Err(Error::DanglingRef(format!("unknown poset element {}", x.key)))
        }
    }

    pub fn hom(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        if self.leq(&x.key, &y.key) {
            Ok(vec![Mor::new(
                x.key.clone(),
                y.key.clone(),
                Key::pair(x.key.clone(), y.key.clone()),
            )])
        } else {
            Ok(vec![])
        }
    }

    pub fn identity(&self, x: &Obj) -> Result<Mor> {
        self.check_object(x)?;
        Ok(Mor::new(
            x.key.clone(),
            x.key.clone(),
            Key::pair(x.key.clone(), x.key.clone()),
        ))
    }

    /// Top element, if any.
    pub fn top(&self) -> Option<Key> {
        self.elements
            .iter()
            .find(|t| self.elements.iter().all(|x| self.leq(x, t)))
            .cloned()
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: &Key, b: &Key) -> Option<Key> {
        let lower: Vec<&Key> = self
            .elements
            .iter()
            .filter(|w| self.leq(w, a) && self.leq(w, b))
            .collect();
        lower
            .iter()
            .find(|m| lower.iter().all(|w| self.leq(w, m)))
            .map(|m| (*m).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> PosetData {
        PosetData::from_hasse(
            vec![Key::Nat(0), Key::Nat(1), Key::Nat(2)],
            &[(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(2))],
        )
        .unwrap()
    }

    #[test]
    fn chain_has_top_and_meets() {
        let p = chain3();
        assert_eq!(p.top(), Some(Key::Nat(2)));
        assert_eq!(p.meet(&Key::Nat(1), &Key::Nat(2)), Some(Key::Nat(1)));
        assert!(p.leq(&Key::Nat(0), &Key::Nat(2)));
        let x = Obj::new(Key::Nat(1));
        let y = Obj::new(Key::Nat(2));
        assert_eq!(p.hom(&x, &y).unwrap().len(), 1);
        assert_eq!(p.hom(&y, &x).unwrap().len(), 0);
    }

    #[test]
    fn cycle_is_rejected() {
        let r = PosetData::from_hasse(
            vec![Key::Nat(0), Key::Nat(1)],
            &[(Key::Nat(0), Key::Nat(1)), (Key::Nat(1), Key::Nat(0))],
        );
        assert!(r.is_err());
    }
}
