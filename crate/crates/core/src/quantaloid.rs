//! Finite quantaloids: categories whose hom-sets are finite lattices and
//! whose composition preserves joins in each variable.
//!
//! Arrows of `Q(s, t)` are dense codes `0..hom_size(s, t)`. For table
//! quantaloids the code is the lattice element index; for free quantaloids
//! it is the bitmask of a subset of the base hom-set `B(s, t)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Free quantaloids are materialized only for base hom-sets up to this size.
pub const MAX_FREE_HOM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaloidViolation {
    #[error("composition is not associative at ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("identity of {object} is not unital at {witness}")]
    NotUnital { object: String, witness: String },
    #[error("composition does not preserve {detail}")]
    JoinNotPreserved { detail: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A hom-lattice `Q(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hom {
    Table(Arc<FiniteLattice>),
    /// All subsets of a base hom-set with the given morphism names.
    Powerset(Vec<String>),
}

impl Hom {
    pub fn size(&self) -> usize {
        match self {
            Hom::Table(l) => l.len(),
            Hom::Powerset(names) => 1 << names.len(),
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match self {
            Hom::Table(l) => l.leq(a, b),
            Hom::Powerset(_) => a & !b == 0,
        }
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        match self {
            Hom::Table(l) => l.join(a, b),
            Hom::Powerset(_) => a | b,
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        match self {
            Hom::Table(l) => l.meet(a, b),
            Hom::Powerset(_) => a & b,
        }
    }

    pub fn bottom(&self) -> usize {
        match self {
            Hom::Table(l) => l.bottom(),
            Hom::Powerset(_) => 0,
        }
    }

    pub fn top(&self) -> usize {
        match self {
            Hom::Table(l) => l.top(),
            Hom::Powerset(names) => (1 << names.len()) - 1,
        }
    }

    pub fn name(&self, a: usize) -> String {
        match self {
            Hom::Table(l) => l.name(a).to_string(),
            Hom::Powerset(names) => {
                let members: Vec<&str> = names
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| a >> i & 1 == 1)
                    .map(|(_, n)| n.as_str())
                    .collect();
                format!("{{{}}}", members.join(","))
            }
        }
    }

    /// Parses an element name: a lattice element, or `{f,g}` for subsets.
    pub fn parse(&self, text: &str) -> Option<usize> {
        let text = text.trim();
        match self {
            Hom::Table(l) => l.index_of(text),
            Hom::Powerset(names) => {
                let inner = text.strip_prefix('{')?.strip_suffix('}')?;
                let mut mask = 0;
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    mask |= 1 << names.iter().position(|n| n == part)?;
                }
                Some(mask)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Composition {
    // table[(s * n + t) * n + u][g * |Q(s,t)| + f]
    Table(Vec<Vec<usize>>),
    Free(Arc<FiniteCategory>),
}

/// An arrow together with its type, for the typed public API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub dom: usize,
    pub cod: usize,
    pub elem: usize,
}

impl Arrow {
    pub fn new(dom: usize, cod: usize, elem: usize) -> Self {
        Arrow { dom, cod, elem }
    }
}

/// Which residual: `w ↙ u` (left) or `v ↘ w` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct Quantaloid {
    objects: Vec<String>,
    homs: Vec<Hom>,
    comp: Composition,
    ids: Vec<usize>,
    left_memo: Vec<OnceLock<Vec<usize>>>,
    right_memo: Vec<OnceLock<Vec<usize>>>,
}

impl PartialEq for Quantaloid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.ids == other.ids
            && self.comp == other.comp
    }
}

impl Eq for Quantaloid {}

impl fmt::Display for Quantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quantaloid on {{{}}}", self.objects.join(", "))
    }
}

fn memo_slots(n: usize) -> Vec<OnceLock<Vec<usize>>> {
    (0..n * n * n).map(|_| OnceLock::new()).collect()
}

impl Quantaloid {
    /// Builds and validates a quantaloid from hom-lattices, identities and
    /// a composition function `comp(s, t, u, g, f) = g ∘ f`.
    pub fn from_tables(
        objects: Vec<String>,
        homs: Vec<Arc<FiniteLattice>>,
        ids: Vec<usize>,
        comp: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> std::result::Result<Self, Vec<QuantaloidViolation>> {
        let n = objects.len();
        if homs.len() != n * n || ids.len() != n {
            return Err(vec![QuantaloidViolation::Shape(format!(
                "{} objects need {} homs and {} identities",
                n,
                n * n,
                n
            ))]);
        }
        let homs: Vec<Hom> = homs.into_iter().map(Hom::Table).collect();
        let mut tables = Vec::with_capacity(n * n * n);
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let w = homs[s * n + t].size();
                    let mut table = vec![0; homs[t * n + u].size() * w];
                    for g in 0..homs[t * n + u].size() {
                        for f in 0..w {
                            let h = comp(s, t, u, g, f);
                            if h >= homs[s * n + u].size() {
                                return Err(vec![QuantaloidViolation::Shape(format!(
                                    "composite out of range in Q({}, {})",
                                    objects[s], objects[u]
                                ))]);
                            }
                            table[g * w + f] = h;
                        }
                    }
                    tables.push(table);
                }
            }
        }
        let q = Quantaloid {
            left_memo: memo_slots(n),
            right_memo: memo_slots(n),
            objects,
            homs,
            comp: Composition::Table(tables),
            ids,
        };
        q.validate()?;
        Ok(q)
    }

    /// A one-object quantaloid from a lattice, a tensor table
    /// (`tensor[a][b] = a ⊗ b`, read as `a ∘ b`) and its unit.
    pub fn from_quantale(
        lattice: FiniteLattice,
        tensor: &[Vec<usize>],
        unit: usize,
    ) -> std::result::Result<Self, Vec<QuantaloidViolation>> {
        let n = lattice.len();
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n) || unit >= n {
            return Err(vec![QuantaloidViolation::Shape(
                "tensor table must be |L| x |L|".into(),
            )]);
        }
        Quantaloid::from_tables(
            vec!["*".into()],
            vec![Arc::new(lattice)],
            vec![unit],
            |_, _, _, g, f| tensor[g][f],
        )
    }

    /// The free quantaloid over a finite category: subsets of base
    /// hom-sets, elementwise composition, singleton identities.
    pub fn free(base: Arc<FiniteCategory>) -> Result<Self> {
        let n = base.len();
        let mut homs = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let size = base.hom_size(s, t);
                if size > MAX_FREE_HOM {
                    return Err(Error::TooLarge {
                        what: format!("free hom Q({}, {})", base.objects()[s], base.objects()[t]),
                        estimate: 1u128 << size,
                        cap: 1u128 << MAX_FREE_HOM,
                    });
                }
                homs.push(Hom::Powerset(base.hom_names(s, t).to_vec()));
            }
        }
        let ids = (0..n).map(|s| 1 << base.identity(s)).collect();
        Ok(Quantaloid {
            objects: base.objects().to_vec(),
            homs,
            comp: Composition::Free(base),
            ids,
            left_memo: memo_slots(n),
            right_memo: memo_slots(n),
        })
    }

    /// Exhaustive check of associativity, unitality and join preservation
    /// (binary joins and bottoms suffice in finite lattices).
    pub fn validate(&self) -> std::result::Result<(), Vec<QuantaloidViolation>> {
        let n = self.len();
        let mut errs = Vec::new();
        let name = |s: usize, t: usize, a: usize| self.hom(s, t).name(a);

        'unit: for s in 0..n {
            for t in 0..n {
                for f in 0..self.hom_size(s, t) {
                    if self.compose(s, t, t, self.ids[t], f) != f
                        || self.compose(s, s, t, f, self.ids[s]) != f
                    {
                        errs.push(QuantaloidViolation::NotUnital {
                            object: if self.compose(s, t, t, self.ids[t], f) != f {
                                self.objects[t].clone()
                            } else {
                                self.objects[s].clone()
                            },
                            witness: name(s, t, f),
                        });
                        break 'unit;
                    }
                }
            }
        }

        'join: for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let (st, tu) = (self.hom(s, t), self.hom(t, u));
                    let su = self.hom(s, u);
                    for g in 0..tu.size() {
                        if self.compose(s, t, u, g, st.bottom()) != su.bottom() {
                            errs.push(QuantaloidViolation::JoinNotPreserved {
                                detail: format!("bottom: {} ∘ ⊥ ≠ ⊥", name(t, u, g)),
                            });
                            break 'join;
                        }
                        for f1 in 0..st.size() {
                            for f2 in 0..st.size() {
                                let lhs = self.compose(s, t, u, g, st.join(f1, f2));
                                let rhs = su.join(
                                    self.compose(s, t, u, g, f1),
                                    self.compose(s, t, u, g, f2),
                                );
                                if lhs != rhs {
                                    errs.push(QuantaloidViolation::JoinNotPreserved {
                                        detail: format!(
                                            "{} ∘ ({} ∨ {})",
                                            name(t, u, g),
                                            name(s, t, f1),
                                            name(s, t, f2)
                                        ),
                                    });
                                    break 'join;
                                }
                            }
                        }
                    }
                    for f in 0..st.size() {
                        if self.compose(s, t, u, tu.bottom(), f) != su.bottom() {
                            errs.push(QuantaloidViolation::JoinNotPreserved {
                                detail: format!("bottom: ⊥ ∘ {} ≠ ⊥", name(s, t, f)),
                            });
                            break 'join;
                        }
                        for g1 in 0..tu.size() {
                            for g2 in 0..tu.size() {
                                let lhs = self.compose(s, t, u, tu.join(g1, g2), f);
                                let rhs = su.join(
                                    self.compose(s, t, u, g1, f),
                                    self.compose(s, t, u, g2, f),
                                );
                                if lhs != rhs {
                                    errs.push(QuantaloidViolation::JoinNotPreserved {
                                        detail: format!(
                                            "({} ∨ {}) ∘ {}",
                                            name(t, u, g1),
                                            name(t, u, g2),
                                            name(s, t, f)
                                        ),
                                    });
                                    break 'join;
                                }
                            }
                        }
                    }
                }
            }
        }

        'assoc: for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        for f in 0..self.hom_size(s, t) {
                            for g in 0..self.hom_size(t, u) {
                                let gf = self.compose(s, t, u, g, f);
                                for h in 0..self.hom_size(u, v) {
                                    let hg = self.compose(t, u, v, h, g);
                                    if self.compose(s, u, v, h, gf) != self.compose(s, t, v, hg, f)
                                    {
                                        errs.push(QuantaloidViolation::NotAssociative {
                                            h: name(u, v, h),
                                            g: name(t, u, g),
                                            f: name(s, t, f),
                                        });
                                        break 'assoc;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, s: usize, t: usize) -> &Hom {
        &self.homs[s * self.len() + t]
    }

    pub fn hom_size(&self, s: usize, t: usize) -> usize {
        self.hom(s, t).size()
    }

    pub fn identity(&self, s: usize) -> usize {
        self.ids[s]
    }

    /// The base category when this is a free quantaloid.
    pub fn free_base(&self) -> Option<&Arc<FiniteCategory>> {
        match &self.comp {
            Composition::Free(b) => Some(b),
            Composition::Table(_) => None,
        }
    }

    pub fn leq(&self, s: usize, t: usize, a: usize, b: usize) -> bool {
        self.hom(s, t).leq(a, b)
    }

    pub fn join(&self, s: usize, t: usize, a: usize, b: usize) -> usize {
        self.hom(s, t).join(a, b)
    }

    pub fn meet(&self, s: usize, t: usize, a: usize, b: usize) -> usize {
        self.hom(s, t).meet(a, b)
    }

    pub fn bottom(&self, s: usize, t: usize) -> usize {
        self.hom(s, t).bottom()
    }

    pub fn top(&self, s: usize, t: usize) -> usize {
        self.hom(s, t).top()
    }

    /// `g ∘ f` for `f: s → t`, `g: t → u`.
    pub fn compose(&self, s: usize, t: usize, u: usize, g: usize, f: usize) -> usize {
        let n = self.len();
        match &self.comp {
            Composition::Table(tables) => tables[(s * n + t) * n + u][g * self.hom_size(s, t) + f],
            Composition::Free(base) => {
                let mut out = 0;
                let mut gs = g;
                while gs != 0 {
                    let gi = gs.trailing_zeros() as usize;
                    gs &= gs - 1;
                    let mut fs = f;
                    while fs != 0 {
                        let fi = fs.trailing_zeros() as usize;
                        fs &= fs - 1;
                        out |= 1 << base.compose(s, t, u, gi, fi);
                    }
                }
                out
            }
        }
    }

    /// `w ↙ f = ⋁{g | g ∘ f ≤ w}` for `w: s → u`, `f: s → t`; lands in `Q(t, u)`.
    pub fn left_residual(&self, s: usize, t: usize, u: usize, w: usize, f: usize) -> usize {
        let n = self.len();
        match &self.comp {
            Composition::Free(base) => free_left_residual(base, s, t, u, w, f),
            Composition::Table(_) => {
                let table = self.left_memo[(s * n + t) * n + u].get_or_init(|| {
                    let fs = self.hom_size(s, t);
                    let mut table = vec![0; self.hom_size(s, u) * fs];
                    for w in 0..self.hom_size(s, u) {
                        for f in 0..fs {
                            table[w * fs + f] = self.left_residual_by_join(s, t, u, w, f);
                        }
                    }
                    table
                });
                table[w * self.hom_size(s, t) + f]
            }
        }
    }

    /// `g ↘ w = ⋁{f | g ∘ f ≤ w}` for `g: t → u`, `w: s → u`; lands in `Q(s, t)`.
    pub fn right_residual(&self, s: usize, t: usize, u: usize, g: usize, w: usize) -> usize {
        let n = self.len();
        match &self.comp {
            Composition::Free(base) => free_right_residual(base, s, t, u, g, w),
            Composition::Table(_) => {
                let table = self.right_memo[(s * n + t) * n + u].get_or_init(|| {
                    let ws = self.hom_size(s, u);
                    let mut table = vec![0; self.hom_size(t, u) * ws];
                    for g in 0..self.hom_size(t, u) {
                        for w in 0..ws {
                            table[g * ws + w] = self.right_residual_by_join(s, t, u, g, w);
                        }
                    }
                    table
                });
                table[g * self.hom_size(s, u) + w]
            }
        }
    }

    /// The defining join formula for `w ↙ f`, evaluated by enumeration.
    pub fn left_residual_by_join(&self, s: usize, t: usize, u: usize, w: usize, f: usize) -> usize {
        let tu = self.hom(t, u);
        (0..tu.size())
            .filter(|&g| self.leq(s, u, self.compose(s, t, u, g, f), w))
            .fold(tu.bottom(), |acc, g| tu.join(acc, g))
    }

    /// The defining join formula for `g ↘ w`, evaluated by enumeration.
    pub fn right_residual_by_join(
        &self,
        s: usize,
        t: usize,
        u: usize,
        g: usize,
        w: usize,
    ) -> usize {
        let st = self.hom(s, t);
        (0..st.size())
            .filter(|&f| self.leq(s, u, self.compose(s, t, u, g, f), w))
            .fold(st.bottom(), |acc, f| st.join(acc, f))
    }

    pub fn compose_arrows(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        if f.cod != g.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.objects[g.dom], self.objects[g.cod], self.objects[f.dom], self.objects[f.cod]
            )));
        }
        Ok(Arrow::new(f.dom, g.cod, self.compose(f.dom, f.cod, g.cod, g.elem, f.elem)))
    }

    /// Typed residual. `Left`: `a = w: S → U`, `b = u: S → T`, result
    /// `w ↙ u: T → U`. `Right`: `a = v: T → U`, `b = w: S → U`, result
    /// `v ↘ w: S → T`.
    pub fn residual(&self, side: Side, a: Arrow, b: Arrow) -> Result<Arrow> {
        match side {
            Side::Left => {
                if a.dom != b.dom {
                    return Err(Error::TypeMismatch(
                        "w ↙ u needs w and u with a common domain".into(),
                    ));
                }
                let (s, t, u) = (a.dom, b.cod, a.cod);
                Ok(Arrow::new(t, u, self.left_residual(s, t, u, a.elem, b.elem)))
            }
            Side::Right => {
                if a.cod != b.cod {
                    return Err(Error::TypeMismatch(
                        "v ↘ w needs v and w with a common codomain".into(),
                    ));
                }
                let (s, t, u) = (b.dom, a.dom, a.cod);
                Ok(Arrow::new(s, t, self.right_residual(s, t, u, a.elem, b.elem)))
            }
        }
    }

    /// `Q^op(t, s) = Q(s, t)` with the same order and reversed composition.
    /// The opposite of a free quantaloid is the free quantaloid of the
    /// opposite base.
    pub fn opposite(&self) -> Quantaloid {
        let n = self.len();
        match &self.comp {
            Composition::Free(base) => {
                Quantaloid::free(Arc::new(base.opposite())).expect("same hom sizes as the original")
            }
            Composition::Table(_) => {
                let mut homs = vec![Hom::Powerset(Vec::new()); n * n];
                for s in 0..n {
                    for t in 0..n {
                        homs[t * n + s] = self.hom(s, t).clone();
                    }
                }
                let mut tables = Vec::with_capacity(n * n * n);
                // in Q^op: f: a -> b is f in Q(b, a), g: b -> c is g in Q(c, b)
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            let fs = homs[a * n + b].size();
                            let gs = homs[b * n + c].size();
                            let mut table = vec![0; gs * fs];
                            for g in 0..gs {
                                for f in 0..fs {
                                    table[g * fs + f] = self.compose(c, b, a, f, g);
                                }
                            }
                            tables.push(table);
                        }
                    }
                }
                Quantaloid {
                    objects: self.objects.clone(),
                    homs,
                    comp: Composition::Table(tables),
                    ids: self.ids.clone(),
                    left_memo: memo_slots(n),
                    right_memo: memo_slots(n),
                }
            }
        }
    }

    /// Whether this is (isomorphic to) the two-element quantale `2`:
    /// one object, two elements, identity on top.
    pub fn is_two(&self) -> bool {
        self.len() == 1 && self.hom_size(0, 0) == 2 && self.ids[0] == self.top(0, 0)
    }

    /// Parses an element name of `Q(s, t)`.
    pub fn parse_elem(&self, s: usize, t: usize, text: &str) -> Option<usize> {
        self.hom(s, t).parse(text)
    }

    pub fn elem_name(&self, s: usize, t: usize, a: usize) -> String {
        self.hom(s, t).name(a)
    }
}

fn free_left_residual(
    base: &FiniteCategory,
    s: usize,
    t: usize,
    u: usize,
    w: usize,
    f: usize,
) -> usize {
    // {g ∈ B(t,u) | ∀ f ∈ f: g ∘ f ∈ w}
    let mut out = 0;
    for g in 0..base.hom_size(t, u) {
        let ok = (0..base.hom_size(s, t))
            .filter(|fi| f >> fi & 1 == 1)
            .all(|fi| w >> base.compose(s, t, u, g, fi) & 1 == 1);
        if ok {
            out |= 1 << g;
        }
    }
    out
}

fn free_right_residual(
    base: &FiniteCategory,
    s: usize,
    t: usize,
    u: usize,
    g: usize,
    w: usize,
) -> usize {
    // {f ∈ B(s,t) | ∀ g ∈ g: g ∘ f ∈ w}
    let mut out = 0;
    for f in 0..base.hom_size(s, t) {
        let ok = (0..base.hom_size(t, u))
            .filter(|gi| g >> gi & 1 == 1)
            .all(|gi| w >> base.compose(s, t, u, gi, f) & 1 == 1);
        if ok {
            out |= 1 << f;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_is_valid_and_commutative() {
        let two = fixtures::two();
        assert!(two.is_two());
        assert_eq!(two.opposite(), two);
        // ⊤ ↙ ⊥ = ⊤
        assert_eq!(two.left_residual(0, 0, 0, 1, 0), 1);
    }

    #[test]
    fn two_with_bottom_identity_is_not_unital() {
        let l = FiniteLattice::chain(2);
        let errs = Quantaloid::from_quantale(l, &[vec![0, 0], vec![0, 1]], 0).unwrap_err();
        assert!(errs.contains(&QuantaloidViolation::NotUnital {
            object: "*".into(),
            witness: "1".into()
        }));
    }

    #[test]
    fn join_as_tensor_fails() {
        let l = FiniteLattice::chain(2);
        let errs = Quantaloid::from_quantale(l, &[vec![0, 1], vec![1, 1]], 0).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, QuantaloidViolation::NotUnital { .. } | QuantaloidViolation::JoinNotPreserved { .. })));
    }

    #[test]
    fn non_monotone_table_on_three_chain() {
        // identity at 2, but 1 ∘ 1 = 0 while 1 ∘ 0 = 1: not monotone
        let l = FiniteLattice::chain(3);
        let t = vec![vec![0, 0, 0], vec![1, 0, 1], vec![0, 1, 2]];
        let errs = Quantaloid::from_quantale(l, &t, 2).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, QuantaloidViolation::JoinNotPreserved { .. })));
    }

    #[test]
    fn fin_metric_is_valid() {
        let q = fixtures::fin_metric();
        assert_eq!(q.hom_size(0, 0), 4);
        q.validate().unwrap();
    }

    #[test]
    fn free_over_b_mono() {
        let q = fixtures::q_b_mono();
        assert_eq!(q.hom_size(0, 0), 4);
        let one = q.parse_elem(0, 0, "{1}").unwrap();
        let e = q.parse_elem(0, 0, "{e}").unwrap();
        let both = q.parse_elem(0, 0, "{1,e}").unwrap();
        assert_eq!(q.compose(0, 0, 0, both, e), e);
        assert_eq!(q.left_residual(0, 0, 0, one, e), 0);
        assert_eq!(q.left_residual(0, 0, 0, e, e), both);
        q.validate().unwrap();
        q.opposite().validate().unwrap();
        assert_eq!(q.opposite().opposite(), q);
    }

    #[test]
    fn free_over_terminal_is_two() {
        let q = Quantaloid::free(Arc::new(FiniteCategory::terminal())).unwrap();
        assert!(q.is_two());
        q.validate().unwrap();
    }

    #[test]
    fn typed_residual_checks_types() {
        let q = fixtures::two();
        let a = Arrow::new(0, 0, 1);
        assert_eq!(q.residual(Side::Left, a, Arrow::new(0, 0, 0)).unwrap(), a);
        let arrow = Arc::new(crate::fixtures::arrow_category());
        let q2 = Quantaloid::free(arrow).unwrap();
        let err = q2.residual(Side::Left, Arrow::new(0, 1, 0), Arrow::new(1, 1, 0));
        assert!(matches!(err, Err(Error::TypeMismatch(_))));
    }
}
