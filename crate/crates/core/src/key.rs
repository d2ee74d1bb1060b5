//! Canonical structural descriptors.
//!
//! Every object and morphism of every category kind is identified by a
//! [`Key`]: a small ordered tree of atoms. Keys are the only notion of
//! equality the library uses; isomorphism is always a separate, searched
//! notion. The derived `Ord` gives the canonical enumeration order that
//! makes limit search, class representatives and reports deterministic.

use std::fmt;

/// Canonical descriptor: orderable, equality-comparable, serializable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    /// The unique atom, used for canonical points.
    Unit,
    Nat(u64),
    Sym(String),
    Seq(Vec<Key>),
}

impl Key {
    pub fn sym(s: impl Into<String>) -> Key {
        Key::Sym(s.into())
    }

    pub fn pair(a: Key, b: Key) -> Key {
        Key::Seq(vec![a, b])
    }

    pub fn seq(items: impl IntoIterator<Item = Key>) -> Key {
        Key::Seq(items.into_iter().collect())
    }

    /// Sorted, deduplicated sequence: the canonical form of a finite set.
    pub fn set(items: impl IntoIterator<Item = Key>) -> Key {
        let mut v: Vec<Key> = items.into_iter().collect();
        v.sort();
        v.dedup();
        Key::Seq(v)
    }

    pub fn as_seq(&self) -> Option<&[Key]> {
        match self {
            Key::Seq(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Key::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Key::Sym(s) => Some(s),
            _ => None,
        }
    }

    /// Converts to a JSON value; inverse of [`Key::from_json`].
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Key::Unit => serde_json::Value::Null,
            Key::Nat(n) => serde_json::Value::from(*n),
            Key::Sym(s) => serde_json::Value::from(s.clone()),
            Key::Seq(v) => serde_json::Value::Array(v.iter().map(Key::to_json).collect()),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Key> {
        match v {
            serde_json::Value::Null => Some(Key::Unit),
            serde_json::Value::Number(n) => n.as_u64().map(Key::Nat),
            serde_json::Value::String(s) => Some(Key::Sym(s.clone())),
            serde_json::Value::Array(items) => items
                .iter()
                .map(Key::from_json)
                .collect::<Option<Vec<_>>>()
                .map(Key::Seq),
            _ => None,
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Unit => write!(f, "()"),
            Key::Nat(n) => write!(f, "{n}"),
            Key::Sym(s) => write!(f, "{s}"),
            Key::Seq(v) => {
                write!(f, "[")?;
                for (i, k) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<u64> for Key {
    fn from(n: u64) -> Key {
        Key::Nat(n)
    }
}

impl From<&str> for Key {
    fn from(s: &str) -> Key {
        Key::Sym(s.to_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_total_and_structural() {
        let a = Key::set([Key::Nat(2), Key::Nat(1), Key::Nat(2)]);
        assert_eq!(a, Key::seq([Key::Nat(1), Key::Nat(2)]));
        assert!(Key::Unit < Key::Nat(0));
        assert!(Key::Nat(7) < Key::sym("a"));
        assert!(Key::sym("z") < Key::seq([]));
    }

    #[test]
    fn json_round_trip() {
        let k = Key::seq([Key::Unit, Key::Nat(3), Key::sym("x"), Key::seq([Key::Nat(0)])]);
        let j = k.to_json();
        assert_eq!(Key::from_json(&j).unwrap(), k);
    }
}
