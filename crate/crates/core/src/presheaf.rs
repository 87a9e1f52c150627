//! Presheaves, the presheaf category `PE`, Yoneda, suprema, tensors,
//! transport along functors and distributors, and weighted colimits.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::enriched::{QCategory, QDistributor, QFunctor};
use crate::error::{Error, Result};

/// A presheaf `φ` on a Q-category `E`: an extent `T` and arrows
/// `φ_X: |X| → T` with `φ_X ∘ E(X', X) ≤ φ_X'`.
///
/// The category is not stored; a presheaf is identified by its extent and
/// component vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    pub extent: usize,
    pub comps: Vec<usize>,
}

/// A covariant presheaf on `E`, stored as a presheaf on `E^op`: arrows
/// `ψ_X: T → |X|` with `E(X, X') ∘ ψ_X ≤ ψ_X'`.
pub type CoPresheaf = Presheaf;

/// An isomorphism class of objects, with its lowest-index member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub members: Vec<usize>,
    pub canonical: usize,
}

impl IsoClass {
    fn from_members(members: Vec<usize>) -> Option<IsoClass> {
        let canonical = *members.iter().min()?;
        Some(IsoClass { members, canonical })
    }
}

/// First pair `(X, X')` violating the presheaf condition, if any.
pub fn presheaf_violation(e: &QCategory, phi: &Presheaf) -> Option<(usize, usize)> {
    let q = e.base();
    let t = phi.extent;
    for x in 0..e.len() {
        for x1 in 0..e.len() {
            let (a, b) = (e.extent(x1), e.extent(x));
            let v = q.compose(a, b, t, phi.comps[x], e.hom(x1, x));
            if !q.leq(a, t, v, phi.comps[x1]) {
                return Some((x, x1));
            }
        }
    }
    None
}

pub fn is_presheaf(e: &QCategory, phi: &Presheaf) -> bool {
    phi.comps.len() == e.len()
        && phi.extent < e.base().len()
        && phi
            .comps
            .iter()
            .enumerate()
            .all(|(x, &c)| c < e.base().hom_size(e.extent(x), phi.extent))
        && presheaf_violation(e, phi).is_none()
}

pub fn is_copresheaf(e: &QCategory, psi: &CoPresheaf) -> bool {
    let q = e.base();
    let t = psi.extent;
    psi.comps.len() == e.len()
        && (0..e.len()).all(|x| {
            (0..e.len()).all(|x1| {
                let (a, b) = (e.extent(x), e.extent(x1));
                let v = q.compose(t, a, b, e.hom(x, x1), psi.comps[x]);
                q.leq(t, b, v, psi.comps[x1])
            })
        })
}

/// The number of candidate families an enumeration would visit.
pub fn candidate_estimate(e: &QCategory, extent: Option<usize>) -> u128 {
    let q = e.base();
    let targets: Vec<usize> = match extent {
        Some(t) => vec![t],
        None => (0..q.len()).collect(),
    };
    targets
        .iter()
        .map(|&t| {
            (0..e.len()).fold(1u128, |acc, x| {
                acc.saturating_mul(q.hom_size(e.extent(x), t) as u128)
            })
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// All presheaves on `E`, of the given extent or of every extent, in
/// lexicographic order of (extent, components). Fails once more than
/// `max_presheaves` presheaves are found or the search visits sixteen
/// times that many partial families.
pub fn enumerate_presheaves(
    e: &QCategory,
    extent: Option<usize>,
    caps: &Caps,
) -> Result<Vec<Presheaf>> {
    let targets: Vec<usize> = match extent {
        Some(t) => vec![t],
        None => (0..e.base().len()).collect(),
    };
    let mut search = Search {
        e,
        out: Vec::new(),
        nodes: 0,
        cap: caps.max_presheaves,
        budget: caps.max_presheaves.saturating_mul(16),
    };
    for t in targets {
        let mut comps = vec![0; e.len()];
        if !search.extend(t, 0, &mut comps) {
            return Err(Error::TooLarge {
                what: "presheaf enumeration".into(),
                estimate: candidate_estimate(e, extent),
                cap: caps.max_presheaves,
            });
        }
    }
    Ok(search.out)
}

struct Search<'a> {
    e: &'a QCategory,
    out: Vec<Presheaf>,
    nodes: u128,
    cap: u128,
    budget: u128,
}

impl Search<'_> {
    /// Returns false when a cap is exceeded.
    fn extend(&mut self, t: usize, k: usize, comps: &mut Vec<usize>) -> bool {
        let e = self.e;
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if k == e.len() {
            self.out.push(Presheaf {
                extent: t,
                comps: comps.clone(),
            });
            return self.out.len() as u128 <= self.cap;
        }
        let q = e.base();
        let b = e.extent(k);
        for v in 0..q.hom_size(b, t) {
            let ok = (0..=k).all(|x| {
                let a = e.extent(x);
                let vx = if x == k { v } else { comps[x] };
                // v ∘ E(x, k) ≤ φ_x and φ_x ∘ E(k, x) ≤ v
                q.leq(a, t, q.compose(a, b, t, v, e.hom(x, k)), vx)
                    && q.leq(b, t, q.compose(b, a, t, vx, e.hom(k, x)), v)
            });
            if ok {
                comps[k] = v;
                if !self.extend(t, k + 1, comps) {
                    return false;
                }
            }
        }
        true
    }
}

/// `PE(φ, ψ) = ⋀_X ψ_X ↙ φ_X`.
pub fn hom_pe(e: &QCategory, phi: &Presheaf, psi: &Presheaf) -> usize {
    let q = e.base();
    let (s, t) = (phi.extent, psi.extent);
    (0..e.len()).fold(q.top(s, t), |acc, x| {
        let r = q.left_residual(e.extent(x), s, t, psi.comps[x], phi.comps[x]);
        q.meet(s, t, acc, r)
    })
}

/// `P†E(ψ, ψ') = ⋀_X ψ'_X ↘ ψ_X` on covariant presheaves.
pub fn hom_cope(e: &QCategory, psi: &CoPresheaf, psi1: &CoPresheaf) -> usize {
    let q = e.base();
    let (s, t) = (psi.extent, psi1.extent);
    (0..e.len()).fold(q.top(s, t), |acc, x| {
        let r = q.right_residual(s, t, e.extent(x), psi1.comps[x], psi.comps[x]);
        q.meet(s, t, acc, r)
    })
}

pub fn presheaf_name(e: &QCategory, phi: &Presheaf) -> String {
    let q = e.base();
    let parts: Vec<String> = (0..e.len())
        .map(|x| {
            format!(
                "{}={}",
                e.name(x),
                q.elem_name(e.extent(x), phi.extent, phi.comps[x])
            )
        })
        .collect();
    if q.len() > 1 {
        format!("[{}]@{}", parts.join(","), q.objects()[phi.extent])
    } else {
        format!("[{}]", parts.join(","))
    }
}

fn copresheaf_name(e: &QCategory, psi: &CoPresheaf) -> String {
    let q = e.base();
    let parts: Vec<String> = (0..e.len())
        .map(|x| {
            format!(
                "{}={}",
                e.name(x),
                q.elem_name(psi.extent, e.extent(x), psi.comps[x])
            )
        })
        .collect();
    if q.len() > 1 {
        format!("[{}]@{}", parts.join(","), q.objects()[psi.extent])
    } else {
        format!("[{}]", parts.join(","))
    }
}

/// `PE` (or `P†E`) materialized: the enumerated (co)presheaves and the
/// Q-category they form.
#[derive(Debug, Clone)]
pub struct PresheafCategory {
    source: Arc<QCategory>,
    cat: Arc<QCategory>,
    presheaves: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
}

/// Categories with at most this many objects are revalidated after
/// construction.
const VALIDATE_MAX: usize = 160;

impl PresheafCategory {
    pub fn source(&self) -> &Arc<QCategory> {
        &self.source
    }

    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn presheaves(&self) -> &[Presheaf] {
        &self.presheaves
    }

    pub fn presheaf(&self, i: usize) -> &Presheaf {
        &self.presheaves[i]
    }

    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn find(&self, phi: &Presheaf) -> Option<usize> {
        self.index.get(phi).copied()
    }

    /// The Yoneda functor `E → PE` (or the dual Yoneda functor `E → P†E`).
    pub fn yoneda_functor(&self, covariant: bool) -> QFunctor {
        let e = &self.source;
        let map = (0..e.len())
            .map(|x| {
                let y = if covariant {
                    co_yoneda(e, x)
                } else {
                    yoneda(e, x)
                };
                self.find(&y).expect("representables are enumerated")
            })
            .collect();
        QFunctor::new_unchecked(e.clone(), self.cat.clone(), map).expect("matching shapes")
    }
}

fn index_of(presheaves: &[Presheaf]) -> HashMap<Presheaf, usize> {
    presheaves
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect()
}

/// The presheaf category `PE`.
pub fn build_pe(e: Arc<QCategory>, caps: &Caps) -> Result<PresheafCategory> {
    let presheaves = enumerate_presheaves(&e, None, caps)?;
    let n = presheaves.len();
    let mut hom = Vec::with_capacity(n * n);
    for phi in &presheaves {
        for psi in &presheaves {
            hom.push(hom_pe(&e, phi, psi));
        }
    }
    let names = presheaves.iter().map(|p| presheaf_name(&e, p)).collect();
    let extent = presheaves.iter().map(|p| p.extent).collect();
    let cat = if n <= VALIDATE_MAX {
        QCategory::new(e.base().clone(), names, extent, hom)?
    } else {
        QCategory::new_unchecked(e.base().clone(), names, extent, hom)?
    };
    Ok(PresheafCategory {
        index: index_of(&presheaves),
        source: e,
        cat: Arc::new(cat),
        presheaves,
    })
}

/// The covariant presheaf category `P†E = (P(E^op))^op`, cross-checked
/// against the direct formula `P†E(ψ, ψ') = ⋀_X ψ'_X ↘ ψ_X`.
pub fn build_cope(e: Arc<QCategory>, caps: &Caps) -> Result<PresheafCategory> {
    let e_op = Arc::new(e.dual());
    let p_op = build_pe(e_op, caps)?;
    let presheaves = p_op.presheaves.clone();
    let n = presheaves.len();
    let mut hom = Vec::with_capacity(n * n);
    for (i, psi) in presheaves.iter().enumerate() {
        for (j, psi1) in presheaves.iter().enumerate() {
            let direct = hom_cope(&e, psi, psi1);
            if direct != p_op.cat.hom(j, i) {
                return Err(Error::Inconsistent(format!(
                    "covariant presheaf hom differs from the double dual at ({}, {})",
                    copresheaf_name(&e, psi),
                    copresheaf_name(&e, psi1)
                )));
            }
            hom.push(direct);
        }
    }
    let names = presheaves.iter().map(|p| copresheaf_name(&e, p)).collect();
    let extent = presheaves.iter().map(|p| p.extent).collect();
    let cat = if n <= VALIDATE_MAX {
        QCategory::new(e.base().clone(), names, extent, hom)?
    } else {
        QCategory::new_unchecked(e.base().clone(), names, extent, hom)?
    };
    Ok(PresheafCategory {
        index: index_of(&presheaves),
        source: e,
        cat: Arc::new(cat),
        presheaves,
    })
}

/// The representable presheaf `E(-, X)`.
pub fn yoneda(e: &QCategory, x: usize) -> Presheaf {
    Presheaf {
        extent: e.extent(x),
        comps: (0..e.len()).map(|y| e.hom(y, x)).collect(),
    }
}

/// The representable covariant presheaf `E(X, -)`.
pub fn co_yoneda(e: &QCategory, x: usize) -> CoPresheaf {
    Presheaf {
        extent: e.extent(x),
        comps: (0..e.len()).map(|y| e.hom(x, y)).collect(),
    }
}

/// All objects `Y` of extent `t` with `E(Y, Z) = row[Z]` for every `Z`.
pub fn objects_with_row(e: &QCategory, t: usize, row: &[usize]) -> Option<IsoClass> {
    let members = (0..e.len())
        .filter(|&y| e.extent(y) == t && (0..e.len()).all(|z| e.hom(y, z) == row[z]))
        .collect();
    IsoClass::from_members(members)
}

/// All objects `Y` of extent `t` with `E(Z, Y) = column[Z]` for every `Z`.
pub fn objects_with_column(e: &QCategory, t: usize, column: &[usize]) -> Option<IsoClass> {
    let members = (0..e.len())
        .filter(|&y| e.extent(y) == t && (0..e.len()).all(|z| e.hom(z, y) == column[z]))
        .collect();
    IsoClass::from_members(members)
}

/// `R(Z) = ⋀_X E(X, Z) ↙ φ_X`, the hom-row a supremum of `φ` must have.
pub fn supremum_row(e: &QCategory, phi: &Presheaf) -> Vec<usize> {
    let q = e.base();
    let t = phi.extent;
    (0..e.len())
        .map(|z| {
            let c = e.extent(z);
            (0..e.len()).fold(q.top(t, c), |acc, x| {
                let r = q.left_residual(e.extent(x), t, c, e.hom(x, z), phi.comps[x]);
                q.meet(t, c, acc, r)
            })
        })
        .collect()
}

pub fn supremum(e: &QCategory, phi: &Presheaf) -> Option<IsoClass> {
    objects_with_row(e, phi.extent, &supremum_row(e, phi))
}

/// `R(Z) = ⋀_X ψ_X ↘ E(Z, X)`, the hom-column an infimum of `ψ` must have.
pub fn infimum_column(e: &QCategory, psi: &CoPresheaf) -> Vec<usize> {
    let q = e.base();
    let t = psi.extent;
    (0..e.len())
        .map(|z| {
            let c = e.extent(z);
            (0..e.len()).fold(q.top(c, t), |acc, x| {
                let r = q.right_residual(c, t, e.extent(x), psi.comps[x], e.hom(z, x));
                q.meet(c, t, acc, r)
            })
        })
        .collect()
}

/// The infimum of a covariant presheaf: the supremum in `E^op`.
pub fn infimum(e: &QCategory, psi: &CoPresheaf) -> Option<IsoClass> {
    objects_with_column(e, psi.extent, &infimum_column(e, psi))
}

fn check_arrow(e: &QCategory, s: usize, t: usize, u: usize) -> Result<()> {
    if t >= e.base().len() || u >= e.base().hom_size(s, t) {
        return Err(Error::TypeMismatch(format!(
            "arrow {u} is not in Q({}, {t})",
            e.base().objects()[s]
        )));
    }
    Ok(())
}

/// The tensor `u ⊗ X` for `u: |X| → t`: `E(Y, Z) = E(X, Z) ↙ u`.
pub fn tensor(e: &QCategory, u: usize, x: usize, t: usize) -> Result<Option<IsoClass>> {
    let s = e.extent(x);
    check_arrow(e, s, t, u)?;
    let q = e.base();
    let row: Vec<usize> = (0..e.len())
        .map(|z| q.left_residual(s, t, e.extent(z), e.hom(x, z), u))
        .collect();
    Ok(objects_with_row(e, t, &row))
}

/// The cotensor of `u: t → |X|` and `X`: `E(Z, Y) = u ↘ E(Z, X)`.
pub fn cotensor(e: &QCategory, u: usize, x: usize, t: usize) -> Result<Option<IsoClass>> {
    let s = e.extent(x);
    if t >= e.base().len() || u >= e.base().hom_size(t, s) {
        return Err(Error::TypeMismatch("cotensor weight has the wrong type".into()));
    }
    let q = e.base();
    let column: Vec<usize> = (0..e.len())
        .map(|z| q.right_residual(e.extent(z), t, s, u, e.hom(z, x)))
        .collect();
    Ok(objects_with_column(e, t, &column))
}

fn check_len(what: &str, have: usize, want: usize) -> Result<()> {
    if have != want {
        return Err(Error::TypeMismatch(format!(
            "{what} has {have} components, expected {want}"
        )));
    }
    Ok(())
}

/// `(F_! φ)_Y = ⋁_X φ_X ∘ D(Y, FX)`.
pub fn lower_star(f: &QFunctor, phi: &Presheaf) -> Result<Presheaf> {
    let (e, d) = (f.source(), f.target());
    check_len("presheaf", phi.comps.len(), e.len())?;
    let q = e.base();
    let t = phi.extent;
    let comps = (0..d.len())
        .map(|y| {
            let b = d.extent(y);
            (0..e.len()).fold(q.bottom(b, t), |acc, x| {
                let v = q.compose(b, e.extent(x), t, phi.comps[x], d.hom(y, f.apply(x)));
                q.join(b, t, acc, v)
            })
        })
        .collect();
    Ok(Presheaf { extent: t, comps })
}

/// `(F^* ψ)_X = ψ_{FX}`.
pub fn upper_star(f: &QFunctor, psi: &Presheaf) -> Result<Presheaf> {
    check_len("presheaf", psi.comps.len(), f.target().len())?;
    Ok(Presheaf {
        extent: psi.extent,
        comps: f.map().iter().map(|&y| psi.comps[y]).collect(),
    })
}

/// `(Φ^* ψ)_X = ⋁_Z ψ_Z ∘ Φ(X, Z)` for `Φ: E ⇸ D` and `ψ` on `D`.
pub fn dist_star(phi: &QDistributor, psi: &Presheaf) -> Result<Presheaf> {
    let (e, d) = (phi.source(), phi.target());
    check_len("presheaf", psi.comps.len(), d.len())?;
    let q = e.base();
    let t = psi.extent;
    let comps = (0..e.len())
        .map(|x| {
            let a = e.extent(x);
            (0..d.len()).fold(q.bottom(a, t), |acc, z| {
                let v = q.compose(a, d.extent(z), t, psi.comps[z], phi.get(x, z));
                q.join(a, t, acc, v)
            })
        })
        .collect();
    Ok(Presheaf { extent: t, comps })
}

/// `φ ⋆ D`, computed as `sup D_! φ` and checked against the direct
/// definition `E(Y, Z) = PJ(φ, E(D-, Z))`.
pub fn weighted_colimit(diagram: &QFunctor, phi: &Presheaf) -> Result<Option<IsoClass>> {
    let (j, e) = (diagram.source(), diagram.target());
    let pushed = lower_star(diagram, phi)?;
    let row = supremum_row(e, &pushed);
    let direct: Vec<usize> = (0..e.len())
        .map(|z| {
            let column = Presheaf {
                extent: e.extent(z),
                comps: (0..j.len()).map(|x| e.hom(diagram.apply(x), z)).collect(),
            };
            hom_pe(j, phi, &column)
        })
        .collect();
    if row != direct {
        return Err(Error::Inconsistent(
            "weighted colimit differs from the supremum of the pushed-forward weight".into(),
        ));
    }
    Ok(objects_with_row(e, phi.extent, &row))
}

/// The weighted limit of `D` by a covariant weight `ψ` on `J`: the weighted
/// colimit of `D^op` in `E^op`.
pub fn weighted_limit(diagram: &QFunctor, psi: &CoPresheaf) -> Result<Option<IsoClass>> {
    weighted_colimit(&diagram.dual(), psi)
}

/// `S_E Φ` for a presheaf on `PE` given sparsely as pairs
/// `(index into PE, Φ_φ)` all of extent `t`: `(S_E Φ)_X = ⋁_φ Φ_φ ∘ φ_X`.
///
/// The result is checked to be the supremum in `PE` of the presheaf
/// generated by the pairs.
pub fn monad_mult(pe: &PresheafCategory, big: &[(usize, usize)], t: usize) -> Result<Presheaf> {
    let e = pe.source();
    let q = e.base();
    for &(i, c) in big {
        if i >= pe.len() {
            return Err(Error::TypeMismatch(format!("no presheaf with index {i}")));
        }
        check_arrow(e, pe.presheaf(i).extent, t, c)?;
    }
    let comps = (0..e.len())
        .map(|x| {
            let a = e.extent(x);
            big.iter().fold(q.bottom(a, t), |acc, &(i, c)| {
                let phi = pe.presheaf(i);
                q.join(a, t, acc, q.compose(a, phi.extent, t, c, phi.comps[x]))
            })
        })
        .collect();
    let result = Presheaf { extent: t, comps };

    let pcat = pe.category();
    let generated = Presheaf {
        extent: t,
        comps: (0..pe.len())
            .map(|psi| {
                let s = pcat.extent(psi);
                big.iter().fold(q.bottom(s, t), |acc, &(i, c)| {
                    let v = q.compose(s, pcat.extent(i), t, c, pcat.hom(psi, i));
                    q.join(s, t, acc, v)
                })
            })
            .collect(),
    };
    let sup = supremum(pcat, &generated).ok_or_else(|| Error::Inconsistent(
        "presheaf category has a presheaf without supremum".into(),
    ))?;
    if pe.presheaf(sup.canonical) != &result {
        return Err(Error::Inconsistent(
            "monad multiplication differs from the supremum in PE".into(),
        ));
    }
    Ok(result)
}

/// The Kock-Zöberlein inequality `((Y_E)_! φ)_ψ ≤ PE(ψ, φ)` for all `φ, ψ`;
/// returns the first failing pair.
pub fn kz_violation(pe: &PresheafCategory) -> Option<(usize, usize)> {
    let e = pe.source();
    let q = e.base();
    let pcat = pe.category();
    let yon: Vec<usize> = pe.yoneda_functor(false).map().to_vec();
    for phi in 0..pe.len() {
        let t = pcat.extent(phi);
        for psi in 0..pe.len() {
            let s = pcat.extent(psi);
            let lhs = (0..e.len()).fold(q.bottom(s, t), |acc, x| {
                let v = q.compose(
                    s,
                    e.extent(x),
                    t,
                    pe.presheaf(phi).comps[x],
                    pcat.hom(psi, yon[x]),
                );
                q.join(s, t, acc, v)
            });
            if !q.leq(s, t, lhs, pcat.hom(psi, phi)) {
                return Some((phi, psi));
            }
        }
    }
    None
}
