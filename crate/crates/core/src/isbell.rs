//! Isbell adjunctions of distributors, their categories of fixed points,
//! Chu transforms, and order-theoretic completions recovered from them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::enriched::{compose_dist, dist_residual, QCategory, QDistributor, QFunctor};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::lattice::{dedekind_macneille, BoundKind, FiniteLattice, MacNeille, Poset};
use crate::presheaf::{
    enumerate_presheaves, hom_pe, lower_star, presheaf_name, weighted_colimit, yoneda,
    CoPresheaf, Presheaf,
};
use crate::quantaloid::Side;

fn check_len(have: usize, want: usize) -> Result<()> {
    if have != want {
        return Err(Error::TypeMismatch(format!(
            "family has {have} components, expected {want}"
        )));
    }
    Ok(())
}

/// `(Φ↑φ)_Y = ⋀_X Φ(X, Y) ↙ φ_X`, a covariant presheaf on `D`.
pub fn isbell_up(phi: &QDistributor, weight: &Presheaf) -> Result<CoPresheaf> {
    let (e, d) = (phi.source(), phi.target());
    check_len(weight.comps.len(), e.len())?;
    let q = e.base();
    let t = weight.extent;
    let comps = (0..d.len())
        .map(|y| {
            let c = d.extent(y);
            (0..e.len()).fold(q.top(t, c), |acc, x| {
                let r = q.left_residual(e.extent(x), t, c, phi.get(x, y), weight.comps[x]);
                q.meet(t, c, acc, r)
            })
        })
        .collect();
    Ok(Presheaf { extent: t, comps })
}

/// `(Φ↓ψ)_X = ⋀_Y ψ_Y ↘ Φ(X, Y)`, a presheaf on `E`.
pub fn isbell_down(phi: &QDistributor, psi: &CoPresheaf) -> Result<Presheaf> {
    let (e, d) = (phi.source(), phi.target());
    check_len(psi.comps.len(), d.len())?;
    let q = e.base();
    let t = psi.extent;
    let comps = (0..e.len())
        .map(|x| {
            let a = e.extent(x);
            (0..d.len()).fold(q.top(a, t), |acc, y| {
                let r = q.right_residual(a, t, d.extent(y), psi.comps[y], phi.get(x, y));
                q.meet(a, t, acc, r)
            })
        })
        .collect();
    Ok(Presheaf { extent: t, comps })
}

/// The Isbell category `IΦ`: presheaves on `E` fixed by `Φ↓Φ↑`, as a full
/// subcategory of `PE`.
#[derive(Debug, Clone)]
pub struct Isbell {
    phi: QDistributor,
    fixed: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
    cat: Arc<QCategory>,
    presheaf_count: usize,
}

impl Isbell {
    pub fn distributor(&self) -> &QDistributor {
        &self.phi
    }

    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn fixed_points(&self) -> &[Presheaf] {
        &self.fixed
    }

    /// Number of presheaves on `E` that were scanned.
    pub fn presheaf_count(&self) -> usize {
        self.presheaf_count
    }

    pub fn find(&self, phi: &Presheaf) -> Option<usize> {
        self.index.get(phi).copied()
    }

    /// The reflector `φ ↦ Φ↓Φ↑φ`.
    pub fn closure(&self, weight: &Presheaf) -> Result<Presheaf> {
        isbell_down(&self.phi, &isbell_up(&self.phi, weight)?)
    }

    /// The reflection of `φ` as an object of `IΦ`.
    pub fn reflect(&self, weight: &Presheaf) -> Result<usize> {
        let c = self.closure(weight)?;
        self.find(&c)
            .ok_or_else(|| Error::Inconsistent("closure is not a fixed point".into()))
    }
}

/// Enumerates `PE`, keeps the fixed points and checks that the closure is
/// left adjoint to the inclusion.
pub fn isbell_category(phi: &QDistributor, caps: &Caps) -> Result<Isbell> {
    let e = phi.source();
    let all = enumerate_presheaves(e, None, caps)?;
    let mut fixed = Vec::new();
    let mut closures = Vec::with_capacity(all.len());
    for p in &all {
        let c = isbell_down(phi, &isbell_up(phi, p)?)?;
        if &c == p {
            fixed.push(p.clone());
        }
        closures.push(c);
    }
    let index: HashMap<Presheaf, usize> =
        fixed.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let hom = fixed
        .iter()
        .flat_map(|a| fixed.iter().map(move |b| (a, b)))
        .map(|(a, b)| hom_pe(e, a, b))
        .collect();
    let names = fixed.iter().map(|p| presheaf_name(e, p)).collect();
    let extent = fixed.iter().map(|p| p.extent).collect();
    let cat = QCategory::new_unchecked(e.base().clone(), names, extent, hom)?;
    for (p, c) in all.iter().zip(&closures) {
        if !index.contains_key(c) {
            return Err(Error::Inconsistent(format!(
                "closure of {} is not fixed",
                presheaf_name(e, p)
            )));
        }
        for f in &fixed {
            if hom_pe(e, p, f) != hom_pe(e, c, f) {
                return Err(Error::Inconsistent(format!(
                    "closure of {} is not a reflection",
                    presheaf_name(e, p)
                )));
            }
        }
    }
    Ok(Isbell {
        phi: phi.clone(),
        fixed,
        index,
        cat: Arc::new(cat),
        presheaf_count: all.len(),
    })
}

/// A Chu transform `(F, G): Φ → Ψ` with `F: E → D`, `G: C → B`,
/// `Φ: E ⇸ B` and `Ψ: D ⇸ C`.
#[derive(Debug, Clone)]
pub struct ChuTransform {
    pub f: QFunctor,
    pub g: QFunctor,
    pub phi: QDistributor,
    pub psi: QDistributor,
}

/// Outcome of [`is_chu_transform`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChuCheck {
    pub holds: bool,
    /// First entry `(X, Z)` of `E × C` where the square fails.
    pub witness: Option<(String, String)>,
}

fn first_difference(a: &QDistributor, b: &QDistributor) -> Option<(usize, usize)> {
    let (m, n) = (a.source().len(), a.target().len());
    (0..m)
        .flat_map(|x| (0..n).map(move |z| (x, z)))
        .find(|&(x, z)| a.get(x, z) != b.get(x, z))
}

/// Checks `Ψ ∘ F_♮ = G^♮ ∘ Φ` and `Ψ ↙ F^♮ = G_♮ ↘ Φ` independently.
pub fn is_chu_transform(t: &ChuTransform) -> Result<ChuCheck> {
    let same = |a: &Arc<QCategory>, b: &Arc<QCategory>| Arc::ptr_eq(a, b) || **a == **b;
    if !same(t.f.source(), t.phi.source())
        || !same(t.g.target(), t.phi.target())
        || !same(t.f.target(), t.psi.source())
        || !same(t.g.source(), t.psi.target())
    {
        return Err(Error::TypeMismatch(
            "F, G, Φ and Ψ do not form a square".into(),
        ));
    }
    let top = compose_dist(&t.psi, &t.f.graph())?;
    let bottom = compose_dist(&t.g.cograph(), &t.phi)?;
    let square = first_difference(&top, &bottom);
    let left = dist_residual(Side::Left, &t.psi, &t.f.cograph())?;
    let right = dist_residual(Side::Right, &t.g.graph(), &t.phi)?;
    let diagonal = first_difference(&left, &right);
    if square.is_none() != diagonal.is_none() {
        return Err(Error::Inconsistent(
            "square and diagonal forms of the Chu condition disagree".into(),
        ));
    }
    let (e, c) = (t.phi.source(), t.psi.target());
    Ok(ChuCheck {
        holds: square.is_none(),
        witness: square.map(|(x, z)| (e.name(x).to_string(), c.name(z).to_string())),
    })
}

/// `I(F, G) = Ψ↓Ψ↑F_!` restricted to `IΦ → IΨ`.
pub fn chu_apply(t: &ChuTransform, source: &Isbell, target: &Isbell) -> Result<QFunctor> {
    let check = is_chu_transform(t)?;
    if !check.holds {
        let (x, z) = check.witness.unwrap_or_default();
        return Err(Error::NotChu(format!("square fails at ({x}, {z})")));
    }
    let map = source
        .fixed_points()
        .iter()
        .map(|p| target.reflect(&lower_star(&t.f, p)?))
        .collect::<Result<Vec<_>>>()?;
    QFunctor::new(source.category().clone(), target.category().clone(), map)
}

/// The functors `F: E → IΦ`, `G: D → IΦ` with `FX = Φ↓Φ↑(Y X)` and
/// `GY = Φ↓(D(Y, -))`, and the checks performed on them.
#[derive(Debug, Clone)]
pub struct IsbellWitnesses {
    pub f: QFunctor,
    pub g: QFunctor,
    /// `Φ = G^♮ ∘ F_♮`.
    pub factorizes: bool,
    pub dense: bool,
    pub codense: bool,
    /// Checked only when `Φ ↘ Φ = E` and `Φ ↙ Φ = D`.
    pub fully_faithful: Option<bool>,
}

pub fn isbell_witnesses(isb: &Isbell, caps: &Caps) -> Result<IsbellWitnesses> {
    let phi = isb.distributor();
    let (e, d) = (phi.source(), phi.target());
    let c = isb.category();
    let fmap = (0..e.len())
        .map(|x| isb.reflect(&yoneda(e, x)))
        .collect::<Result<Vec<_>>>()?;
    let gmap = (0..d.len())
        .map(|y| {
            let rep = Presheaf {
                extent: d.extent(y),
                comps: (0..d.len()).map(|z| d.hom(y, z)).collect(),
            };
            let down = isbell_down(phi, &rep)?;
            isb.find(&down)
                .ok_or_else(|| Error::Inconsistent("Φ↓ of a representable is not fixed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = QFunctor::new(e.clone(), c.clone(), fmap)?;
    let g = QFunctor::new(d.clone(), c.clone(), gmap)?;

    let factorizes = compose_dist(&g.cograph(), &f.graph())? == *phi;

    let mut covered = vec![false; c.len()];
    for w in enumerate_presheaves(e, None, caps)? {
        if let Some(class) = weighted_colimit(&f, &w)? {
            for m in class.members {
                covered[m] = true;
            }
        }
    }
    let dense = covered.iter().all(|&b| b);

    let g_op = g.dual();
    let mut covered = vec![false; c.len()];
    for w in enumerate_presheaves(g_op.source(), None, caps)? {
        if let Some(class) = weighted_colimit(&g_op, &w)? {
            for m in class.members {
                covered[m] = true;
            }
        }
    }
    let codense = covered.iter().all(|&b| b);

    let e_id = QDistributor::identity(e.clone());
    let d_id = QDistributor::identity(d.clone());
    let fully_faithful = if dist_residual(Side::Right, phi, phi)? == e_id
        && dist_residual(Side::Left, phi, phi)? == d_id
    {
        Some(f.fully_faithful_witness().is_none() && g.fully_faithful_witness().is_none())
    } else {
        None
    };
    Ok(IsbellWitnesses {
        f,
        g,
        factorizes,
        dense,
        codense,
        fully_faithful,
    })
}

/// The MacNeille completion as the Isbell category of the identity
/// distributor of `P` over `2`, checked against the cut construction
/// (same cuts, same embedding).
pub fn macneille_completion(p: &Poset, caps: &Caps) -> Result<MacNeille> {
    let e = Arc::new(fixtures::poset_category(p));
    let isb = isbell_category(&QDistributor::identity(e.clone()), caps)?;
    let two_top = e.base().top(0, 0);
    let cuts: Vec<Vec<bool>> = isb
        .fixed_points()
        .iter()
        .map(|f| f.comps.iter().map(|&v| v == two_top).collect())
        .collect();
    let oracle = dedekind_macneille(p);
    let mut mine = cuts.clone();
    let mut theirs = oracle.cuts.clone();
    mine.sort();
    theirs.sort();
    if mine != theirs {
        return Err(Error::Inconsistent(
            "Isbell fixed points differ from the Dedekind cuts".into(),
        ));
    }
    let embedding: Vec<usize> = (0..p.len())
        .map(|x| isb.reflect(&yoneda(&e, x)))
        .collect::<Result<_>>()?;
    for (x, &i) in embedding.iter().enumerate() {
        if cuts[i] != oracle.cuts[oracle.embedding[x]] {
            return Err(Error::Inconsistent(format!(
                "embeddings disagree at {}",
                p.name(x)
            )));
        }
    }
    let names = cuts
        .iter()
        .map(|c| {
            let k = oracle.cuts.iter().position(|o| o == c).expect("same cuts");
            oracle.lattice.name(k).to_string()
        })
        .collect();
    let m = cuts.len();
    let leq = (0..m * m)
        .map(|i| isb.category().le(i / m, i % m))
        .collect();
    let poset = Poset::new(names, leq).map_err(Error::Lattice)?;
    let lattice = FiniteLattice::from_poset(poset).map_err(Error::Lattice)?;
    Ok(MacNeille {
        lattice,
        cuts,
        embedding,
    })
}

/// A finite lattice recovered from its irreducibles: `Φ: J ⇸ M` with
/// `Φ(j, m) = ⊤` iff `j ≤ m`, and `x ↦ ↓x ∩ J` as a map `L → IΦ`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub join_irreducibles: Vec<usize>,
    pub meet_irreducibles: Vec<usize>,
    pub phi: QDistributor,
    pub isbell: Isbell,
    /// `map[x]` is the object of `IΦ` for `↓x ∩ J`.
    pub map: Vec<usize>,
}

pub fn lattice_reconstruction(l: &FiniteLattice, caps: &Caps) -> Result<Reconstruction> {
    let two = Arc::new(fixtures::two());
    let (bot, top) = (two.bottom(0, 0), two.top(0, 0));
    let js = l.irreducibles(BoundKind::Join);
    let ms = l.irreducibles(BoundKind::Meet);
    let sub = |xs: &[usize]| -> Result<Arc<QCategory>> {
        let names = xs.iter().map(|&x| l.name(x).to_string()).collect();
        let hom = xs
            .iter()
            .flat_map(|&a| xs.iter().map(move |&b| if l.leq(a, b) { top } else { bot }))
            .collect();
        Ok(Arc::new(QCategory::new(two.clone(), names, vec![0; xs.len()], hom)?))
    };
    let (j, m) = (sub(&js)?, sub(&ms)?);
    let mat = js
        .iter()
        .flat_map(|&a| ms.iter().map(move |&b| if l.leq(a, b) { top } else { bot }))
        .collect();
    let phi = QDistributor::new(j.clone(), m, mat)?;
    let isbell = isbell_category(&phi, caps)?;
    let map = (0..l.len())
        .map(|x| {
            let down = Presheaf {
                extent: 0,
                comps: js.iter().map(|&a| if l.leq(a, x) { top } else { bot }).collect(),
            };
            isbell.find(&down).ok_or_else(|| {
                Error::Inconsistent(format!("↓{} ∩ J is not a fixed point", l.name(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = map.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != l.len() || seen.len() != isbell.category().len() {
        return Err(Error::Inconsistent(
            "x ↦ ↓x ∩ J is not a bijection onto IΦ".into(),
        ));
    }
    for x in 0..l.len() {
        for y in 0..l.len() {
            if l.leq(x, y) != isbell.category().le(map[x], map[y]) {
                return Err(Error::Inconsistent(format!(
                    "order not reflected at ({}, {})",
                    l.name(x),
                    l.name(y)
                )));
            }
        }
    }
    Ok(Reconstruction {
        join_irreducibles: js,
        meet_irreducibles: ms,
        phi,
        isbell,
        map,
    })
}
