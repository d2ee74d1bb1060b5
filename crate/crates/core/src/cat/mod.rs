//! Categories with enumerable hom-sets.
//!
//! A [`Category`] is either fully tabulated (objects and morphisms listed,
//! limits found by certified search) or constructive (canonical objects
//! created on demand, limits computed by formula): finite sets, finite
//! posets, sums over a base, equivalence 2-groupoids over a base, or
//! presheaves over a tabulated base. Objects and morphisms are plain
//! [`Key`]s; each kind encodes and decodes its own key shapes.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so identical inputs always produce
//! identical keys.

pub mod axioms;
pub mod finposet;
pub mod finset;
pub mod tabulated;

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::key::Key;

pub use axioms::{check_category_axioms, AxiomReport, AxiomViolation};
pub use finposet::PosetData;
pub use tabulated::TabulatedData;

/// Reference to an object: the canonical key within its carrier category.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Obj {
    pub key: Key,
}

impl Obj {
    pub fn new(key: Key) -> Obj {
        Obj { key }
    }
}

/// Reference to a morphism: source and target object keys plus the
/// morphism's own canonical descriptor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mor {
    pub src: Key,
    pub tgt: Key,
    pub key: Key,
}

impl Mor {
    pub fn new(src: Key, tgt: Key, key: Key) -> Mor {
        Mor { src, tgt, key }
    }

    pub fn src_obj(&self) -> Obj {
        Obj::new(self.src.clone())
    }

    pub fn tgt_obj(&self) -> Obj {
        Obj::new(self.tgt.clone())
    }
}

/// The supported category kinds.
#[derive(Clone)]
pub enum CatKind {
    Tabulated(Rc<TabulatedData>),
    FinSet,
    FinPoset(Rc<PosetData>),
    /// Finite-index sums over a base category.
    Sums(Category),
    /// Homotopy category of equivalence 2-groupoids over a lex base.
    E2(Category),
    /// Finite-valued presheaves over a base with enumerable objects.
    Psh(Category),
}

struct CatInner {
    kind: CatKind,
    name: String,
    /// Declared probe family for universal-property certificates on
    /// constructive kinds. Tabulated kinds always probe all objects.
    probes: Vec<Key>,
}

/// A category handle; cheap to clone.
#[derive(Clone)]
pub struct Category {
    inner: Rc<CatInner>,
}

impl std::fmt::Debug for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Category({})", self.inner.name)
    }
}

impl Category {
    pub fn new(kind: CatKind, name: impl Into<String>) -> Category {
        Category {
            inner: Rc::new(CatInner {
                kind,
                name: name.into(),
                probes: Vec::new(),
            }),
        }
    }

    pub fn finset() -> Category {
        Category::new(CatKind::FinSet, "finset")
    }

    pub fn tabulated(data: TabulatedData, name: impl Into<String>) -> Result<Category> {
        data.validate_refs()?;
        Ok(Category::new(CatKind::Tabulated(Rc::new(data)), name))
    }

    pub fn finposet(data: PosetData, name: impl Into<String>) -> Category {
        Category::new(CatKind::FinPoset(Rc::new(data)), name)
    }

    /// Same category with a declared probe family (object keys) for
    /// constructive-kind certificates.
    pub fn with_probes(&self, probes: Vec<Key>) -> Category {
        Category {
            inner: Rc::new(CatInner {
                kind: self.inner.kind.clone(),
                name: self.inner.name.clone(),
                probes,
            }),
        }
    }

    pub fn kind(&self) -> &CatKind {
        &self.inner.kind
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn kind_tag(&self) -> &'static str {
        match &self.inner.kind {
            CatKind::Tabulated(_) => "tabulated",
            CatKind::FinSet => "finset",
            CatKind::FinPoset(_) => "finposet",
            CatKind::Sums(_) => "sums-over",
            CatKind::E2(_) => "e2-over",
            CatKind::Psh(_) => "psh-over",
        }
    }

    /// Base category of a constructive kind, if any.
    pub fn base(&self) -> Option<&Category> {
        match &self.inner.kind {
            CatKind::Sums(c) | CatKind::E2(c) | CatKind::Psh(c) => Some(c),
            _ => None,
        }
    }

    /// Complete object enumeration where one exists. Constructive kinds
    /// have unboundedly many canonical objects and return `None`.
    pub fn objects(&self) -> Option<Vec<Obj>> {
        match &self.inner.kind {
            CatKind::Tabulated(t) => Some(t.objects.iter().cloned().map(Obj::new).collect()),
            CatKind::FinPoset(p) => Some(p.elements.iter().cloned().map(Obj::new).collect()),
            _ => None,
        }
    }

    /// Objects against which universal properties are verified: every
    /// object for enumerable kinds, the declared probe family otherwise.
    pub fn probe_objects(&self) -> Vec<Obj> {
        match self.objects() {
            Some(os) => os,
            None => self.inner.probes.iter().cloned().map(Obj::new).collect(),
        }
    }

    pub fn declared_probes(&self) -> &[Key] {
        &self.inner.probes
    }

    pub fn check_object(&self, x: &Obj) -> Result<()> {
        match &self.inner.kind {
            CatKind::Tabulated(t) => t.check_object(x),
            CatKind::FinSet => finset::check_object(x),
            CatKind::FinPoset(p) => p.check_object(x),
            CatKind::Sums(c) => crate::sums::check_object(c, x),
            CatKind::E2(c) => crate::groupoids::e2::check_object(c, x),
            CatKind::Psh(c) => crate::presheaves::check_object(c, x),
        }
    }

    /// Complete, duplicate-free enumeration of `hom(x, y)` in key order.
    pub fn hom(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        let mut v = match &self.inner.kind {
            CatKind::Tabulated(t) => t.hom(x, y)?,
            CatKind::FinSet => finset::hom(x, y)?,
            CatKind::FinPoset(p) => p.hom(x, y)?,
            CatKind::Sums(c) => crate::sums::hom(c, x, y)?,
            CatKind::E2(c) => crate::groupoids::e2::hom(c, x, y)?,
            CatKind::Psh(c) => crate::presheaves::hom(c, x, y)?,
        };
        v.sort_by(|a, b| a.key.cmp(&b.key));
        v.dedup();
        Ok(v)
    }

    pub fn identity(&self, x: &Obj) -> Result<Mor> {
        match &self.inner.kind {
            CatKind::Tabulated(t) => t.identity(x),
            CatKind::FinSet => finset::identity(x),
            CatKind::FinPoset(p) => p.identity(x),
            CatKind::Sums(c) => crate::sums::identity(c, x),
            CatKind::E2(c) => crate::groupoids::e2::identity(c, x),
            CatKind::Psh(c) => crate::presheaves::identity(c, x),
        }
    }

    /// Composite `g ∘ f` (apply `f` first). Defined exactly when
    /// `tgt(f) = src(g)`.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        if f.tgt != g.src {
            return Err(Error::Precondition(format!(
                "composition undefined: tgt {} != src {}",
                f.tgt, g.src
            )));
        }
        match &self.inner.kind {
            CatKind::Tabulated(t) => t.compose(g, f),
            CatKind::FinSet => finset::compose(g, f),
            CatKind::FinPoset(_) => Ok(Mor::new(
                f.src.clone(),
                g.tgt.clone(),
                Key::pair(f.src.clone(), g.tgt.clone()),
            )),
            CatKind::Sums(c) => crate::sums::compose(c, g, f),
            CatKind::E2(c) => crate::groupoids::e2::compose(c, g, f),
            CatKind::Psh(c) => crate::presheaves::compose(c, g, f),
        }
    }

    pub fn compose_all(&self, chain: &[&Mor]) -> Result<Mor> {
        // chain listed outermost-first: compose_all([h, g, f]) = h∘g∘f.
        let mut it = chain.iter().rev();
        let first = it
            .next()
            .ok_or_else(|| Error::Precondition("empty composition chain".into()))?;
        let mut acc = (*first).clone();
        for m in it {
            acc = self.compose(m, &acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, m: &Mor) -> Result<bool> {
        Ok(m.src == m.tgt && *m == self.identity(&m.src_obj())?)
    }

    /// Some lift `h` with `p ∘ h = f`, least in key order, if one exists.
    /// When `p` is monic the lift is unique.
    pub fn lift(&self, p: &Mor, f: &Mor) -> Result<Option<Mor>> {
        if p.tgt != f.tgt {
            return Err(Error::Precondition("lift: targets differ".into()));
        }
        match &self.inner.kind {
            CatKind::FinSet => finset::lift(p, f),
            CatKind::Sums(c) => crate::sums::lift(c, p, f),
            _ => {
                // generic search over the enumerated hom-set
                for h in self.hom(&f.src_obj(), &p.src_obj())? {
                    if self.compose(p, &h)?.key == f.key {
                        return Ok(Some(h));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Least composite `q ∘ h` over all lifts `h` of `f` through `p`
    /// (`p : W → Z`, `q : W → V`, `f : X → Z`), or `None` when no lift
    /// exists. Keyed kinds minimize slotwise; the generic path scans.
    pub fn min_push(&self, p: &Mor, q: &Mor, f: &Mor) -> Result<Option<Mor>> {
        if p.tgt != f.tgt || p.src != q.src {
            return Err(Error::Precondition("min_push: spans are ill-typed".into()));
        }
        match &self.inner.kind {
            CatKind::FinSet => finset::min_push(p, q, f),
            CatKind::Sums(c) => crate::sums::min_push(c, p, q, f),
            _ => {
                let mut best: Option<Mor> = None;
                for h in self.hom(&f.src_obj(), &p.src_obj())? {
                    if self.compose(p, &h)?.key != f.key {
                        continue;
                    }
                    let pushed = self.compose(q, &h)?;
                    if best.as_ref().map(|b| pushed.key < b.key).unwrap_or(true) {
                        best = Some(pushed);
                    }
                }
                Ok(best)
            }
        }
    }

    pub fn has_coproducts(&self) -> bool {
        match &self.inner.kind {
            CatKind::Tabulated(_) => true,
            CatKind::FinSet => true,
            CatKind::FinPoset(_) => false,
            CatKind::Sums(_) => true,
            CatKind::E2(c) => c.has_coproducts(),
            CatKind::Psh(_) => true,
        }
    }

    /// Whether the kind supports quotients of equivalence 2-groupoids.
    pub fn has_quotients(&self) -> bool {
        match &self.inner.kind {
            CatKind::Tabulated(_) => true,
            CatKind::FinSet => true,
            CatKind::FinPoset(_) => false,
            CatKind::Sums(_) => false,
            CatKind::E2(_) => true,
            CatKind::Psh(_) => true,
        }
    }
}
