//! Categories, functors and distributors enriched in a finite quantaloid.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::lattice::Poset;
use crate::quantaloid::{Quantaloid, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichedViolation {
    #[error("unit fails at {object}: identity not below hom({object},{object})")]
    UnitFailure { object: String },
    #[error("composition fails at ({x}, {y}, {z})")]
    CompositionFailure { x: String, y: String, z: String },
    #[error("extent mismatch at {object}: {detail}")]
    ExtentMismatch { object: String, detail: String },
    #[error("hom not preserved at ({x}, {y})")]
    FunctorFailure { x: String, y: String },
    #[error("bimodule law fails at ({x1}, {x}, {y}, {y1})")]
    BimoduleFailure {
        x1: String,
        x: String,
        y: String,
        y1: String,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

fn same_base(a: &Arc<Quantaloid>, b: &Arc<Quantaloid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A category enriched in `base`: objects with an extent in the base and
/// hom-arrows `hom(x, y) ∈ Q(|x|, |y|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCategory {
    base: Arc<Quantaloid>,
    names: Vec<String>,
    extent: Vec<usize>,
    hom: Vec<usize>,
}

impl fmt::Display for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q-category on {{{}}}", self.names.join(", "))
    }
}

impl QCategory {
    /// Builds and validates. `hom` is row-major: `hom[x * n + y]`.
    pub fn new(
        base: Arc<Quantaloid>,
        names: Vec<String>,
        extent: Vec<usize>,
        hom: Vec<usize>,
    ) -> Result<Self> {
        let c = QCategory::new_unchecked(base, names, extent, hom)?;
        c.validate().map_err(Error::Enriched)?;
        Ok(c)
    }

    /// Builds without the unit/composition checks (shapes and ranges are
    /// still checked).
    pub fn new_unchecked(
        base: Arc<Quantaloid>,
        names: Vec<String>,
        extent: Vec<usize>,
        hom: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if extent.len() != n || hom.len() != n * n {
            return Err(Error::Enriched(vec![EnrichedViolation::Shape(format!(
                "{n} objects need {n} extents and {} homs",
                n * n
            ))]));
        }
        for (x, &s) in extent.iter().enumerate() {
            if s >= base.len() {
                return Err(Error::Enriched(vec![EnrichedViolation::ExtentMismatch {
                    object: names[x].clone(),
                    detail: "extent is not a base object".into(),
                }]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if hom[x * n + y] >= base.hom_size(extent[x], extent[y]) {
                    return Err(Error::Enriched(vec![EnrichedViolation::Shape(format!(
                        "hom({}, {}) out of range",
                        names[x], names[y]
                    ))]));
                }
            }
        }
        Ok(QCategory {
            base,
            names,
            extent,
            hom,
        })
    }

    /// A preordered set viewed as a category over a one-object base:
    /// `hom(x, y) = top` iff `x ≤ y`, else bottom.
    pub fn from_poset(base: Arc<Quantaloid>, poset: &Poset) -> Result<Self> {
        let n = poset.len();
        let (top, bot) = (base.top(0, 0), base.bottom(0, 0));
        let hom = (0..n * n)
            .map(|i| if poset.leq(i / n, i % n) { top } else { bot })
            .collect();
        QCategory::new(base, poset.names().to_vec(), vec![0; n], hom)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<EnrichedViolation>> {
        let q = &self.base;
        let n = self.len();
        let mut errs = Vec::new();
        for x in 0..n {
            let s = self.extent[x];
            if !q.leq(s, s, q.identity(s), self.hom(x, x)) {
                errs.push(EnrichedViolation::UnitFailure {
                    object: self.names[x].clone(),
                });
                break;
            }
        }
        'comp: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b, c) = (self.extent[x], self.extent[y], self.extent[z]);
                    let gf = q.compose(a, b, c, self.hom(y, z), self.hom(x, y));
                    if !q.leq(a, c, gf, self.hom(x, z)) {
                        errs.push(EnrichedViolation::CompositionFailure {
                            x: self.names[x].clone(),
                            y: self.names[y].clone(),
                            z: self.names[z].clone(),
                        });
                        break 'comp;
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

    pub fn base(&self) -> &Arc<Quantaloid> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn extent(&self, x: usize) -> usize {
        self.extent[x]
    }

    pub fn extents(&self) -> &[usize] {
        &self.extent
    }

    pub fn hom(&self, x: usize, y: usize) -> usize {
        self.hom[x * self.len() + y]
    }

    pub fn hom_name(&self, x: usize, y: usize) -> String {
        self.base
            .elem_name(self.extent[x], self.extent[y], self.hom(x, y))
    }

    /// `1_{|x|} ≤ hom(x, y)`; requires equal extents.
    pub fn le(&self, x: usize, y: usize) -> bool {
        let s = self.extent[x];
        self.extent[y] == s && self.base.leq(s, s, self.base.identity(s), self.hom(x, y))
    }

    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// `E^op` over `Q^op`, with `E^op(y, x) = E(x, y)`.
    pub fn dual(&self) -> QCategory {
        self.dual_over(Arc::new(self.base.opposite()))
    }

    /// The dual, reusing an already computed opposite base.
    pub fn dual_over(&self, base_op: Arc<Quantaloid>) -> QCategory {
        let n = self.len();
        let mut hom = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                hom[y * n + x] = self.hom(x, y);
            }
        }
        QCategory {
            base: base_op,
            names: self.names.clone(),
            extent: self.extent.clone(),
            hom,
        }
    }

    /// The full subcategory on the given objects, in the given order.
    pub fn full_subcategory(&self, objects: &[usize]) -> QCategory {
        let hom = objects
            .iter()
            .flat_map(|&x| objects.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.hom(x, y))
            .collect();
        QCategory {
            base: self.base.clone(),
            names: objects.iter().map(|&x| self.names[x].clone()).collect(),
            extent: objects.iter().map(|&x| self.extent[x]).collect(),
            hom,
        }
    }

    /// Objects of extent `t` with their preorder and isomorphism classes.
    pub fn fibre(&self, t: usize) -> Fibre {
        let objects: Vec<usize> = (0..self.len()).filter(|&x| self.extent[x] == t).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &x in &objects {
            match classes.iter_mut().find(|c| self.iso(c[0], x)) {
                Some(c) => c.push(x),
                None => classes.push(vec![x]),
            }
        }
        let order_complete = !objects.is_empty() && {
            let has_bottom = objects.iter().any(|&b| objects.iter().all(|&x| self.le(b, x)));
            let joins = objects.iter().all(|&a| {
                objects.iter().all(|&b| {
                    objects.iter().any(|&j| {
                        self.le(a, j)
                            && self.le(b, j)
                            && objects
                                .iter()
                                .all(|&u| !(self.le(a, u) && self.le(b, u)) || self.le(j, u))
                    })
                })
            });
            has_bottom && joins
        };
        Fibre {
            objects,
            classes,
            order_complete,
        }
    }
}

/// A fibre `E_T` of a Q-category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fibre {
    pub objects: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Every subset (including the empty one) has a join.
    pub order_complete: bool,
}

/// A Q-functor, given by its object map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFunctor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    map: Vec<usize>,
}

impl QFunctor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        let f = QFunctor::new_unchecked(source, target, map)?;
        f.validate().map_err(Error::Enriched)?;
        Ok(f)
    }

    pub fn new_unchecked(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if !same_base(source.base(), target.base()) {
            return Err(Error::TypeMismatch(
                "functor between categories over different bases".into(),
            ));
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::Enriched(vec![EnrichedViolation::Shape(
                "object map does not fit source and target".into(),
            )]));
        }
        Ok(QFunctor {
            source,
            target,
            map,
        })
    }

    pub fn identity(cat: Arc<QCategory>) -> Self {
        let map = (0..cat.len()).collect();
        QFunctor {
            source: cat.clone(),
            target: cat,
            map,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<EnrichedViolation>> {
        let (e, d) = (&self.source, &self.target);
        let q = e.base();
        for x in 0..e.len() {
            if d.extent(self.map[x]) != e.extent(x) {
                return Err(vec![EnrichedViolation::ExtentMismatch {
                    object: e.name(x).to_string(),
                    detail: format!("mapped to {} of a different extent", d.name(self.map[x])),
                }]);
            }
        }
        for x in 0..e.len() {
            for y in 0..e.len() {
                let (s, t) = (e.extent(x), e.extent(y));
                if !q.leq(s, t, e.hom(x, y), d.hom(self.map[x], self.map[y])) {
                    return Err(vec![EnrichedViolation::FunctorFailure {
                        x: e.name(x).to_string(),
                        y: e.name(y).to_string(),
                    }]);
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `G ∘ F`.
    pub fn then(&self, g: &QFunctor) -> Result<QFunctor> {
        if *self.target != *g.source {
            return Err(Error::TypeMismatch("functors do not compose".into()));
        }
        Ok(QFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        })
    }

    /// Whether `hom(x, y) = hom(Fx, Fy)` for all `x, y`; returns the first
    /// failing pair otherwise.
    pub fn fully_faithful_witness(&self) -> Option<(usize, usize)> {
        let (e, d) = (&self.source, &self.target);
        (0..e.len())
            .flat_map(|x| (0..e.len()).map(move |y| (x, y)))
            .find(|&(x, y)| e.hom(x, y) != d.hom(self.map[x], self.map[y]))
    }

    /// `F_♮(x, y) = D(Fx, y)`, a distributor `E ⇸ D`.
    pub fn graph(&self) -> QDistributor {
        let (e, d) = (&self.source, &self.target);
        let mat = (0..e.len())
            .flat_map(|x| (0..d.len()).map(move |y| d.hom(self.map[x], y)))
            .collect();
        QDistributor {
            source: e.clone(),
            target: d.clone(),
            mat,
        }
    }

    /// `F^♮(y, x) = D(y, Fx)`, a distributor `D ⇸ E`.
    pub fn cograph(&self) -> QDistributor {
        let (e, d) = (&self.source, &self.target);
        let mat = (0..d.len())
            .flat_map(|y| (0..e.len()).map(move |x| d.hom(y, self.map[x])))
            .collect();
        QDistributor {
            source: d.clone(),
            target: e.clone(),
            mat,
        }
    }

    /// `F^op: E^op → D^op` given the already dualized source and target.
    pub fn dual_between(&self, source_op: Arc<QCategory>, target_op: Arc<QCategory>) -> QFunctor {
        QFunctor {
            source: source_op,
            target: target_op,
            map: self.map.clone(),
        }
    }

    pub fn dual(&self) -> QFunctor {
        let base_op = Arc::new(self.source.base().opposite());
        let s = Arc::new(self.source.dual_over(base_op.clone()));
        let t = if Arc::ptr_eq(&self.source, &self.target) {
            s.clone()
        } else {
            Arc::new(self.target.dual_over(base_op))
        };
        self.dual_between(s, t)
    }
}

/// `F ≤ G` iff `1_{|x|} ≤ D(Fx, Gx)` for every `x`.
pub fn functor_leq(f: &QFunctor, g: &QFunctor) -> bool {
    let d = &f.target;
    (0..f.source.len()).all(|x| {
        let s = f.source.extent(x);
        d.base().leq(s, s, d.base().identity(s), d.hom(f.map[x], g.map[x]))
    })
}

/// A distributor `Φ: E ⇸ D` with entries `Φ(x, y) ∈ Q(|x|, |y|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDistributor {
    source: Arc<QCategory>,
    target: Arc<QCategory>,
    mat: Vec<usize>,
}

impl QDistributor {
    /// Builds and validates. `mat` is row-major: `mat[x * |D| + y]`.
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, mat: Vec<usize>) -> Result<Self> {
        let d = QDistributor::new_unchecked(source, target, mat)?;
        d.validate().map_err(Error::Enriched)?;
        Ok(d)
    }

    pub fn new_unchecked(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        mat: Vec<usize>,
    ) -> Result<Self> {
        if !same_base(source.base(), target.base()) {
            return Err(Error::TypeMismatch(
                "distributor between categories over different bases".into(),
            ));
        }
        if mat.len() != source.len() * target.len() {
            return Err(Error::Enriched(vec![EnrichedViolation::Shape(
                "matrix does not fit source and target".into(),
            )]));
        }
        let q = source.base();
        for x in 0..source.len() {
            for y in 0..target.len() {
                if mat[x * target.len() + y] >= q.hom_size(source.extent(x), target.extent(y)) {
                    return Err(Error::Enriched(vec![EnrichedViolation::Shape(format!(
                        "entry ({}, {}) out of range",
                        source.name(x),
                        target.name(y)
                    ))]));
                }
            }
        }
        Ok(QDistributor {
            source,
            target,
            mat,
        })
    }

    /// The identity distributor `E: E ⇸ E`.
    pub fn identity(cat: Arc<QCategory>) -> Self {
        QDistributor {
            mat: cat.hom.clone(),
            source: cat.clone(),
            target: cat,
        }
    }

    /// The everywhere-bottom distributor.
    pub fn bottom(source: Arc<QCategory>, target: Arc<QCategory>) -> Self {
        let q = source.base().clone();
        let mat = (0..source.len())
            .flat_map(|x| (0..target.len()).map(move |y| (x, y)))
            .map(|(x, y)| q.bottom(source.extent(x), target.extent(y)))
            .collect();
        QDistributor {
            source,
            target,
            mat,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<EnrichedViolation>> {
        let (e, d) = (&self.source, &self.target);
        let q = e.base();
        // D(y, y') ∘ Φ(x, y) ∘ E(x', x) ≤ Φ(x', y'); checking each side
        // separately is equivalent since the homs contain identities.
        for x1 in 0..e.len() {
            for x in 0..e.len() {
                for y in 0..d.len() {
                    let (a, b, c) = (e.extent(x1), e.extent(x), d.extent(y));
                    let v = q.compose(a, b, c, self.get(x, y), e.hom(x1, x));
                    if !q.leq(a, c, v, self.get(x1, y)) {
                        return Err(vec![EnrichedViolation::BimoduleFailure {
                            x1: e.name(x1).to_string(),
                            x: e.name(x).to_string(),
                            y: d.name(y).to_string(),
                            y1: d.name(y).to_string(),
                        }]);
                    }
                }
            }
        }
        for x in 0..e.len() {
            for y in 0..d.len() {
                for y1 in 0..d.len() {
                    let (a, b, c) = (e.extent(x), d.extent(y), d.extent(y1));
                    let v = q.compose(a, b, c, d.hom(y, y1), self.get(x, y));
                    if !q.leq(a, c, v, self.get(x, y1)) {
                        return Err(vec![EnrichedViolation::BimoduleFailure {
                            x1: e.name(x).to_string(),
                            x: e.name(x).to_string(),
                            y: d.name(y).to_string(),
                            y1: d.name(y1).to_string(),
                        }]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QCategory> {
        &self.target
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.mat[x * self.target.len() + y]
    }

    pub fn matrix(&self) -> &[usize] {
        &self.mat
    }

    /// Pointwise order; both must have the same source and target.
    pub fn leq(&self, other: &QDistributor) -> bool {
        let q = self.source.base();
        (0..self.source.len()).all(|x| {
            (0..self.target.len()).all(|y| {
                q.leq(
                    self.source.extent(x),
                    self.target.extent(y),
                    self.get(x, y),
                    other.get(x, y),
                )
            })
        })
    }

    /// `Φ^op: D^op ⇸ E^op` with `Φ^op(y, x) = Φ(x, y)`.
    pub fn dual_between(&self, target_op: Arc<QCategory>, source_op: Arc<QCategory>) -> QDistributor {
        let (m, n) = (self.source.len(), self.target.len());
        let mut mat = vec![0; m * n];
        for x in 0..m {
            for y in 0..n {
                mat[y * m + x] = self.get(x, y);
            }
        }
        QDistributor {
            source: target_op,
            target: source_op,
            mat,
        }
    }
}

fn same_cat(a: &Arc<QCategory>, b: &Arc<QCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `(Ψ ∘ Φ)(x, z) = ⋁_y Ψ(y, z) ∘ Φ(x, y)` for `Φ: E ⇸ D`, `Ψ: D ⇸ C`.
pub fn compose_dist(psi: &QDistributor, phi: &QDistributor) -> Result<QDistributor> {
    if !same_cat(&phi.target, &psi.source) {
        return Err(Error::TypeMismatch(
            "distributors do not compose: target and source differ".into(),
        ));
    }
    let (e, d, c) = (&phi.source, &phi.target, &psi.target);
    let q = e.base();
    let mut mat = Vec::with_capacity(e.len() * c.len());
    for x in 0..e.len() {
        for z in 0..c.len() {
            let (a, cz) = (e.extent(x), c.extent(z));
            let mut acc = q.bottom(a, cz);
            for y in 0..d.len() {
                let v = q.compose(a, d.extent(y), cz, psi.get(y, z), phi.get(x, y));
                acc = q.join(a, cz, acc, v);
            }
            mat.push(acc);
        }
    }
    Ok(QDistributor {
        source: e.clone(),
        target: c.clone(),
        mat,
    })
}

/// Distributor residuals.
///
/// `Left`: `a = Ξ: E ⇸ C`, `b = Φ: E ⇸ D`, result `Ξ ↙ Φ: D ⇸ C` with
/// `(Ξ ↙ Φ)(y, z) = ⋀_x Ξ(x, z) ↙ Φ(x, y)`.
///
/// `Right`: `a = Ψ: D ⇸ C`, `b = Ξ: E ⇸ C`, result `Ψ ↘ Ξ: E ⇸ D` with
/// `(Ψ ↘ Ξ)(x, y) = ⋀_z Ψ(y, z) ↘ Ξ(x, z)`.
pub fn dist_residual(side: Side, a: &QDistributor, b: &QDistributor) -> Result<QDistributor> {
    match side {
        Side::Left => {
            if !same_cat(&a.source, &b.source) {
                return Err(Error::TypeMismatch(
                    "Ξ ↙ Φ needs Ξ and Φ with a common source".into(),
                ));
            }
            let (e, d, c) = (&a.source, &b.target, &a.target);
            let q = e.base();
            let mut mat = Vec::with_capacity(d.len() * c.len());
            for y in 0..d.len() {
                for z in 0..c.len() {
                    let (t, u) = (d.extent(y), c.extent(z));
                    let mut acc = q.top(t, u);
                    for x in 0..e.len() {
                        let r = q.left_residual(e.extent(x), t, u, a.get(x, z), b.get(x, y));
                        acc = q.meet(t, u, acc, r);
                    }
                    mat.push(acc);
                }
            }
            Ok(QDistributor {
                source: d.clone(),
                target: c.clone(),
                mat,
            })
        }
        Side::Right => {
            if !same_cat(&a.target, &b.target) {
                return Err(Error::TypeMismatch(
                    "Ψ ↘ Ξ needs Ψ and Ξ with a common target".into(),
                ));
            }
            let (e, d, c) = (&b.source, &a.source, &a.target);
            let q = e.base();
            let mut mat = Vec::with_capacity(e.len() * d.len());
            for x in 0..e.len() {
                for y in 0..d.len() {
                    let (s, t) = (e.extent(x), d.extent(y));
                    let mut acc = q.top(s, t);
                    for z in 0..c.len() {
                        let r = q.right_residual(s, t, c.extent(z), a.get(y, z), b.get(x, z));
                        acc = q.meet(s, t, acc, r);
                    }
                    mat.push(acc);
                }
            }
            Ok(QDistributor {
                source: e.clone(),
                target: d.clone(),
                mat,
            })
        }
    }
}

/// A one-object base as a category over itself: objects are the
/// elements, `hom(u, v) = v ↙ u`.
pub fn quantale_self_category(q: Arc<Quantaloid>) -> Result<QCategory> {
    if q.len() != 1 {
        return Err(Error::NotAQuantale(q.len()));
    }
    let n = q.hom_size(0, 0);
    let names = (0..n).map(|a| q.elem_name(0, 0, a)).collect();
    let hom = (0..n * n)
        .map(|i| q.left_residual(0, 0, 0, i % n, i / n))
        .collect();
    QCategory::new(q, names, vec![0; n], hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn two_cat(poset: &Poset) -> Arc<QCategory> {
        Arc::new(QCategory::from_poset(Arc::new(fixtures::two()), poset).unwrap())
    }

    #[test]
    fn diamond_and_antichain_are_valid() {
        let d = fixtures::diamond_category();
        assert_eq!(d.len(), 4);
        two_cat(&Poset::antichain(&["a", "b"]));
    }

    #[test]
    fn broken_diamond_reports_composition_failure() {
        let d = fixtures::diamond_category();
        let (bot, top) = (d.index_of("bot").unwrap(), d.index_of("top").unwrap());
        let mut hom: Vec<usize> = (0..16).map(|i| d.hom(i / 4, i % 4)).collect();
        hom[bot * 4 + top] = 0;
        let err = QCategory::new(
            d.base().clone(),
            d.names().to_vec(),
            vec![0; 4],
            hom,
        )
        .unwrap_err();
        match err {
            Error::Enriched(v) => {
                assert!(matches!(&v[0], EnrichedViolation::CompositionFailure { x, z, .. } if x == "bot" && z == "top"))
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn functor_order_on_diamond() {
        let d = Arc::new(fixtures::diamond_category());
        let bot = d.index_of("bot").unwrap();
        let top = d.index_of("top").unwrap();
        let cb = QFunctor::new(d.clone(), d.clone(), vec![bot; 4]).unwrap();
        let ct = QFunctor::new(d.clone(), d.clone(), vec![top; 4]).unwrap();
        assert!(functor_leq(&cb, &cb));
        assert!(functor_leq(&cb, &ct));
        assert!(!functor_leq(&ct, &cb));
        assert!(functor_leq(&ct.dual(), &cb.dual()));
    }

    #[test]
    fn identity_distributor_is_unit() {
        let c = two_cat(&Poset::chain(2));
        let id = QDistributor::identity(c.clone());
        assert_eq!(compose_dist(&id, &id).unwrap(), id);
        let bot = QDistributor::bottom(c.clone(), c.clone());
        assert_eq!(compose_dist(&id, &bot).unwrap(), bot);
        assert_eq!(dist_residual(Side::Left, &id, &id).unwrap(), id);
    }

    #[test]
    fn antichain_self_residual_is_identity() {
        let c = two_cat(&Poset::antichain(&["a", "b"]));
        let id = QDistributor::identity(c);
        assert_eq!(dist_residual(Side::Left, &id, &id).unwrap(), id);
        assert_eq!(dist_residual(Side::Right, &id, &id).unwrap(), id);
    }

    #[test]
    fn graph_and_cograph_of_inclusion() {
        let ab = two_cat(&Poset::antichain(&["a", "b"]));
        let a = Arc::new(ab.full_subcategory(&[0]));
        let f = QFunctor::new(a, ab, vec![0]).unwrap();
        let g = f.graph();
        assert_eq!((g.get(0, 0), g.get(0, 1)), (1, 0));
        let c = f.cograph();
        assert_eq!((c.get(0, 0), c.get(1, 0)), (1, 0));
        g.validate().unwrap();
        c.validate().unwrap();
    }

    #[test]
    fn fibres() {
        let d = fixtures::diamond_category();
        let f = d.fibre(0);
        assert_eq!(f.objects.len(), 4);
        assert!(f.order_complete);
        let ab = two_cat(&Poset::antichain(&["a", "b"]));
        assert!(!ab.fibre(0).order_complete);
        let empty = QCategory::new(ab.base().clone(), vec![], vec![], vec![]).unwrap();
        assert!(!empty.fibre(0).order_complete);
    }

    #[test]
    fn dual_is_involutive() {
        let d = fixtures::diamond_category();
        let dd = d.dual().dual();
        assert_eq!(dd.names(), d.names());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(dd.hom(x, y), d.hom(x, y));
                assert_eq!(d.dual().hom(x, y), d.hom(y, x));
            }
        }
        d.dual().validate().unwrap();
    }

    #[test]
    fn self_categories() {
        let two = quantale_self_category(Arc::new(fixtures::two())).unwrap();
        assert_eq!((two.hom(0, 1), two.hom(1, 0)), (1, 0));
        let q = Arc::new(fixtures::fin_metric());
        let m = quantale_self_category(q.clone()).unwrap();
        let (one, two) = (m.index_of("1").unwrap(), m.index_of("2").unwrap());
        assert_eq!(m.hom_name(one, two), "1");
        for u in 0..m.len() {
            assert!(q.leq(0, 0, q.identity(0), m.hom(u, u)));
        }
        let free = Arc::new(fixtures::q_b_mono());
        assert!(quantale_self_category(free).is_ok());
        let arrow = Arc::new(Quantaloid::free(Arc::new(fixtures::arrow_category())).unwrap());
        assert!(matches!(quantale_self_category(arrow), Err(Error::NotAQuantale(2))));
    }
}
