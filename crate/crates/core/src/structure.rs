//! Deciding totality and its equivalent forms, tensors, conical
//! (co)completeness and fibre completeness; the adjoint functor criterion
//! and extension along fully faithful functors.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::caps::Caps;
use crate::enriched::{QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::presheaf::{
    enumerate_presheaves, hom_pe, lower_star, objects_with_row,
    presheaf_name, supremum, supremum_row, IsoClass, Presheaf,
};

/// Fibres larger than this are not searched for conical families.
pub const MAX_CONICAL_FIBRE: usize = 16;

/// Above this many objects the totally-cocomplete check restricts its
/// diagrams to full subcategories on at most two objects plus the whole
/// category.
const ALL_SUBDIAGRAMS_MAX: usize = 6;

/// One decided property with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub name: &'static str,
    pub value: bool,
    pub witness: Option<String>,
}

impl Flag {
    fn yes(name: &'static str) -> Flag {
        Flag {
            name,
            value: true,
            witness: None,
        }
    }

    fn no(name: &'static str, witness: String) -> Flag {
        Flag {
            name,
            value: false,
            witness: Some(witness),
        }
    }

    fn renamed(self, name: &'static str) -> Flag {
        Flag { name, ..self }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{}: {} (witness: {})", self.name, self.value, w),
            None => write!(f, "{}: {}", self.name, self.value),
        }
    }
}

fn class_name(e: &QCategory, c: &IsoClass) -> String {
    let names: Vec<&str> = c.members.iter().map(|&x| e.name(x)).collect();
    names.join(" ≅ ")
}

/// Every presheaf with its supremum class (or none).
pub fn suprema_table(e: &QCategory, caps: &Caps) -> Result<Vec<(Presheaf, Option<IsoClass>)>> {
    Ok(enumerate_presheaves(e, None, caps)?
        .into_iter()
        .map(|phi| {
            let sup = supremum(e, &phi);
            (phi, sup)
        })
        .collect())
}

/// Totality, decided by the existence of all suprema.
pub fn is_total(e: &QCategory, caps: &Caps) -> Result<Flag> {
    for phi in enumerate_presheaves(e, None, caps)? {
        if supremum(e, &phi).is_none() {
            return Ok(Flag::no("total", presheaf_name(e, &phi)));
        }
    }
    Ok(Flag::yes("total"))
}

/// Cototality: totality of the dual.
pub fn is_cototal(e: &QCategory, caps: &Caps) -> Result<Flag> {
    Ok(is_total(&e.dual(), caps)?.renamed("cototal"))
}

/// Whether the Yoneda functor has a left adjoint `L` with
/// `E(Lφ, Z) = PE(φ, Y Z)`, including functoriality of `L`.
pub fn yoneda_left_adjoint(e: &QCategory, caps: &Caps) -> Result<Flag> {
    const NAME: &str = "yoneda has a left adjoint";
    let presheaves = enumerate_presheaves(e, None, caps)?;
    let reps: Vec<Presheaf> = (0..e.len()).map(|z| crate::presheaf::yoneda(e, z)).collect();
    let mut l = Vec::with_capacity(presheaves.len());
    for phi in &presheaves {
        let row: Vec<usize> = reps.iter().map(|yz| hom_pe(e, phi, yz)).collect();
        match objects_with_row(e, phi.extent, &row) {
            Some(c) => l.push(c.canonical),
            None => return Ok(Flag::no(NAME, presheaf_name(e, phi))),
        }
    }
    let q = e.base();
    for (i, phi) in presheaves.iter().enumerate() {
        for (j, psi) in presheaves.iter().enumerate() {
            let (s, t) = (phi.extent, psi.extent);
            if !q.leq(s, t, hom_pe(e, phi, psi), e.hom(l[i], l[j])) {
                return Err(Error::Inconsistent(format!(
                    "left adjoint of Yoneda is not functorial at ({}, {})",
                    presheaf_name(e, phi),
                    presheaf_name(e, psi)
                )));
            }
        }
    }
    Ok(Flag::yes(NAME))
}

fn subsets_for_diagrams(n: usize) -> Vec<Vec<usize>> {
    if n <= ALL_SUBDIAGRAMS_MAX {
        (0..1u32 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut out = vec![vec![]];
        out.extend((0..n).map(|i| vec![i]));
        for i in 0..n {
            for j in i + 1..n {
                out.push(vec![i, j]);
            }
        }
        out.push((0..n).collect());
        out
    }
}

/// Total cocompleteness, decided over the inclusions of full
/// subcategories (see [`subsets_for_diagrams`]) with all weights, each
/// colimit evaluated by its direct definition `E(Y, Z) = PJ(φ, E(D-, Z))`.
pub fn is_totally_cocomplete(e: &QCategory, caps: &Caps) -> Result<Flag> {
    const NAME: &str = "totally cocomplete";
    let q = e.base();
    let subsets = subsets_for_diagrams(e.len());
    let cap = caps.max_presheaves.saturating_mul(4);
    let mut weights: u128 = 0;
    for s in subsets {
        let j = e.full_subcategory(&s);
        let all = enumerate_presheaves(&j, None, caps)?;
        weights = weights.saturating_add(all.len() as u128);
        if weights > cap {
            return Err(Error::TooLarge {
                what: "weighted diagrams".into(),
                estimate: weights,
                cap,
            });
        }
        for phi in all {
            let t = phi.extent;
            let row: Vec<usize> = (0..e.len())
                .map(|z| {
                    let c = e.extent(z);
                    s.iter().enumerate().fold(q.top(t, c), |acc, (k, &x)| {
                        let r = q.left_residual(e.extent(x), t, c, e.hom(x, z), phi.comps[k]);
                        q.meet(t, c, acc, r)
                    })
                })
                .collect();
            if objects_with_row(e, t, &row).is_none() {
                return Ok(Flag::no(
                    NAME,
                    format!("weight {} on {{{}}}", presheaf_name(&j, &phi), j.names().join(",")),
                ));
            }
        }
    }
    Ok(Flag::yes(NAME))
}

/// Whether every `u ⋆ X` exists.
pub fn is_tensored(e: &QCategory) -> Flag {
    let q = e.base();
    for x in 0..e.len() {
        let s = e.extent(x);
        for t in 0..q.len() {
            for u in 0..q.hom_size(s, t) {
                let row: Vec<usize> = (0..e.len())
                    .map(|z| q.left_residual(s, t, e.extent(z), e.hom(x, z), u))
                    .collect();
                if objects_with_row(e, t, &row).is_none() {
                    return Flag::no(
                        "tensored",
                        format!("{} ⋆ {}", q.elem_name(s, t, u), e.name(x)),
                    );
                }
            }
        }
    }
    Flag::yes("tensored")
}

pub fn is_cotensored(e: &QCategory) -> Flag {
    is_tensored(&e.dual()).renamed("cotensored")
}

/// Whether `sup ⋁_i E(-, Y_i)` exists for every family of objects of a
/// common extent (including empty families).
pub fn is_conically_cocomplete(e: &QCategory) -> Result<Flag> {
    const NAME: &str = "conically cocomplete";
    let q = e.base();
    for t in 0..q.len() {
        let fibre: Vec<usize> = (0..e.len()).filter(|&x| e.extent(x) == t).collect();
        if fibre.len() > MAX_CONICAL_FIBRE {
            return Err(Error::TooLarge {
                what: format!("families in fibre {}", q.objects()[t]),
                estimate: 1u128 << fibre.len(),
                cap: 1u128 << MAX_CONICAL_FIBRE,
            });
        }
        for mask in 0..1u32 << fibre.len() {
            let members: Vec<usize> = (0..fibre.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| fibre[i])
                .collect();
            let comps = (0..e.len())
                .map(|x| {
                    let a = e.extent(x);
                    members
                        .iter()
                        .fold(q.bottom(a, t), |acc, &y| q.join(a, t, acc, e.hom(x, y)))
                })
                .collect();
            let psi = Presheaf { extent: t, comps };
            if objects_with_row(e, t, &supremum_row(e, &psi)).is_none() {
                let names: Vec<&str> = members.iter().map(|&y| e.name(y)).collect();
                return Ok(Flag::no(
                    NAME,
                    format!("family {{{}}} over {}", names.join(","), q.objects()[t]),
                ));
            }
        }
    }
    Ok(Flag::yes(NAME))
}

pub fn is_conically_complete(e: &QCategory) -> Result<Flag> {
    Ok(is_conically_cocomplete(&e.dual())?.renamed("conically complete"))
}

/// Whether every fibre admits all joins.
pub fn is_order_complete(e: &QCategory) -> Flag {
    let q = e.base();
    for t in 0..q.len() {
        if !e.fibre(t).order_complete {
            return Flag::no("order complete", format!("fibre over {}", q.objects()[t]));
        }
    }
    Flag::yes("order complete")
}

/// All structural flags of one category.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub flags: Vec<Flag>,
    /// Presheaves of `E` with their suprema (rendered).
    pub suprema: Vec<(String, Option<String>)>,
    pub presheaf_count: usize,
    pub elapsed: Duration,
}

impl StructureReport {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name == name)
    }
}

pub fn structure_report(e: &QCategory, caps: &Caps) -> Result<StructureReport> {
    let start = Instant::now();
    let table = suprema_table(e, caps)?;
    let total = match table.iter().find(|(_, s)| s.is_none()) {
        Some((phi, _)) => Flag::no("total", presheaf_name(e, phi)),
        None => Flag::yes("total"),
    };
    let flags = vec![
        total,
        is_cototal(e, caps)?,
        is_tensored(e),
        is_cotensored(e),
        is_conically_cocomplete(e)?,
        is_conically_complete(e)?,
        is_order_complete(e),
    ];
    let suprema = table
        .iter()
        .map(|(phi, s)| (presheaf_name(e, phi), s.as_ref().map(|c| class_name(e, c))))
        .collect();
    Ok(StructureReport {
        flags,
        suprema,
        presheaf_count: table.len(),
        elapsed: start.elapsed(),
    })
}

/// The eight equivalent conditions, each decided independently.
#[derive(Debug, Clone)]
pub struct TotalityReport {
    pub conditions: Vec<Flag>,
}

impl TotalityReport {
    pub fn value(&self) -> bool {
        self.conditions[0].value
    }
}

fn four_conditions(e: &QCategory, caps: &Caps) -> Result<[Flag; 4]> {
    let tensored = is_tensored(e);
    let conical = is_conically_cocomplete(e)?;
    let iv = match (tensored.value, conical.value) {
        (true, true) => Flag::yes("tensored and conically cocomplete"),
        (false, _) => Flag::no(
            "tensored and conically cocomplete",
            tensored.witness.unwrap_or_default(),
        ),
        (true, false) => Flag::no(
            "tensored and conically cocomplete",
            conical.witness.unwrap_or_default(),
        ),
    };
    let iii = is_total(e, caps)?.renamed("all suprema");
    Ok([
        yoneda_left_adjoint(e, caps)?,
        is_totally_cocomplete(e, caps)?,
        iii,
        iv,
    ])
}

/// Decides conditions (i)-(iv) on `E` and their duals (v)-(viii) on
/// `E^op`; any disagreement is reported as an engine inconsistency.
pub fn verify_totality_equivalences(e: &QCategory, caps: &Caps) -> Result<TotalityReport> {
    let [a, b, c, d] = four_conditions(e, caps)?;
    let [f, g, h, i] = four_conditions(&e.dual(), caps)?;
    let conditions = vec![
        a,
        b,
        c,
        d,
        f.renamed("dual yoneda has a right adjoint"),
        g.renamed("totally complete"),
        h.renamed("all infima"),
        i.renamed("cotensored and conically complete"),
    ];
    let value = conditions[0].value;
    if let Some(bad) = conditions.iter().find(|f| f.value != value) {
        let rendered: Vec<String> = conditions.iter().map(|f| f.to_string()).collect();
        return Err(Error::Inconsistent(format!(
            "totality conditions disagree at '{}': {}",
            bad.name,
            rendered.join("; ")
        )));
    }
    Ok(TotalityReport { conditions })
}

/// Outcome of the right adjoint search.
#[derive(Debug, Clone)]
pub struct RightAdjoint {
    /// The adjoint, when one exists.
    pub adjoint: Option<QFunctor>,
    /// Failure witness when none exists.
    pub witness: Option<String>,
}

/// Searches directly for `G` with `E(X, GY) = D(FX, Y)`.
pub fn right_adjoint_brute(f: &QFunctor) -> RightAdjoint {
    let (e, d) = (f.source(), f.target());
    let mut map = Vec::with_capacity(d.len());
    for y in 0..d.len() {
        let column: Vec<usize> = (0..e.len()).map(|x| d.hom(f.apply(x), y)).collect();
        match crate::presheaf::objects_with_column(e, d.extent(y), &column) {
            Some(c) => map.push(c.canonical),
            None => {
                return RightAdjoint {
                    adjoint: None,
                    witness: Some(format!("no object of E represents D(F-, {})", d.name(y))),
                }
            }
        }
    }
    let g = QFunctor::new_unchecked(d.clone(), e.clone(), map).expect("matching shapes");
    RightAdjoint {
        adjoint: Some(g),
        witness: None,
    }
}

/// Join of a subset of a fibre, if it exists.
fn fibre_join(c: &QCategory, t: usize, subset: &[usize]) -> Option<usize> {
    (0..c.len()).find(|&j| {
        c.extent(j) == t
            && subset.iter().all(|&s| c.le(s, j))
            && (0..c.len()).all(|u| {
                c.extent(u) != t || !subset.iter().all(|&s| c.le(s, u)) || c.le(j, u)
            })
    })
}

/// Whether `F` preserves tensors and fibre joins; the first failure.
fn aft_criterion(f: &QFunctor) -> Result<Option<String>> {
    let (e, d) = (f.source(), f.target());
    let q = e.base();
    for x in 0..e.len() {
        let s = e.extent(x);
        for t in 0..q.len() {
            for u in 0..q.hom_size(s, t) {
                let tx = crate::presheaf::tensor(e, u, x, t)?
                    .expect("source is tensored")
                    .canonical;
                let ftx = f.apply(tx);
                let ok = (0..d.len()).all(|y| {
                    d.hom(ftx, y) == q.left_residual(s, t, d.extent(y), d.hom(f.apply(x), y), u)
                });
                if !ok {
                    return Ok(Some(format!(
                        "F does not preserve the tensor {} ⋆ {}",
                        q.elem_name(s, t, u),
                        e.name(x)
                    )));
                }
            }
        }
    }
    for t in 0..q.len() {
        let fibre: Vec<usize> = (0..e.len()).filter(|&x| e.extent(x) == t).collect();
        if fibre.len() > MAX_CONICAL_FIBRE {
            return Err(Error::TooLarge {
                what: "fibre subsets".into(),
                estimate: 1u128 << fibre.len(),
                cap: 1u128 << MAX_CONICAL_FIBRE,
            });
        }
        for mask in 0..1u32 << fibre.len() {
            let subset: Vec<usize> = (0..fibre.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| fibre[i])
                .collect();
            let join = fibre_join(e, t, &subset).expect("source is order complete");
            let image: Vec<usize> = subset.iter().map(|&x| f.apply(x)).collect();
            let fj = f.apply(join);
            let is_join = image.iter().all(|&s| d.le(s, fj))
                && (0..d.len()).all(|u| {
                    d.extent(u) != t || !image.iter().all(|&s| d.le(s, u)) || d.le(fj, u)
                });
            if !is_join {
                let names: Vec<&str> = subset.iter().map(|&x| e.name(x)).collect();
                return Ok(Some(format!(
                    "F does not preserve the join {} of {{{}}}",
                    e.name(join),
                    names.join(",")
                )));
            }
        }
    }
    Ok(None)
}

/// Decides whether `F` has a right adjoint, by the adjoint functor
/// criterion and by direct search; the two verdicts must agree. The
/// adjoint returned is built fibrewise as `GY = ⋁{X ∈ E_|Y| | FX ≤ Y}`.
pub fn has_right_adjoint(f: &QFunctor) -> Result<RightAdjoint> {
    let e = f.source();
    let tensored = is_tensored(e);
    let complete = is_order_complete(e);
    if !tensored.value || !complete.value {
        let failed = if tensored.value { complete } else { tensored };
        return Err(Error::PreconditionFailed(format!(
            "source is not tensored and order complete ({failed})"
        )));
    }
    let brute = right_adjoint_brute(f);
    let failure = aft_criterion(f)?;
    if failure.is_none() != brute.adjoint.is_some() {
        return Err(Error::Inconsistent(
            "adjoint functor criterion and direct search disagree".into(),
        ));
    }
    if let Some(w) = failure {
        return Ok(RightAdjoint {
            adjoint: None,
            witness: Some(w),
        });
    }
    let d = f.target();
    let map: Vec<usize> = (0..d.len())
        .map(|y| {
            let t = d.extent(y);
            let below: Vec<usize> = (0..e.len())
                .filter(|&x| e.extent(x) == t && d.le(f.apply(x), y))
                .collect();
            fibre_join(e, t, &below).expect("order complete")
        })
        .collect();
    let g = QFunctor::new(d.clone(), e.clone(), map)?;
    for x in 0..e.len() {
        for y in 0..d.len() {
            if e.hom(x, g.apply(y)) != d.hom(f.apply(x), y) {
                return Err(Error::Inconsistent(format!(
                    "constructed adjoint fails at ({}, {})",
                    e.name(x),
                    d.name(y)
                )));
            }
        }
    }
    Ok(RightAdjoint {
        adjoint: Some(g),
        witness: None,
    })
}

/// Extends `F: C → E` along a fully faithful `G: C → D` to
/// `H = sup ∘ F_! ∘ Ĝ_♮: D → E`, with `H ∘ G ≅ F`.
pub fn injective_extension(f: &QFunctor, g: &QFunctor, caps: &Caps) -> Result<QFunctor> {
    let (c, e, d) = (f.source(), f.target(), g.target());
    if **c != **g.source() {
        return Err(Error::TypeMismatch("F and G need a common source".into()));
    }
    let total = is_total(e, caps)?;
    if !total.value {
        return Err(Error::NotTotal {
            witness: total.witness.unwrap_or_default(),
        });
    }
    if let Some((a, b)) = g.fully_faithful_witness() {
        return Err(Error::NotFullyFaithful {
            a: c.name(a).to_string(),
            b: c.name(b).to_string(),
        });
    }
    let mut map = Vec::with_capacity(d.len());
    for y in 0..d.len() {
        let gy = Presheaf {
            extent: d.extent(y),
            comps: (0..c.len()).map(|x| d.hom(g.apply(x), y)).collect(),
        };
        let pushed = lower_star(f, &gy)?;
        let sup = supremum(e, &pushed).ok_or_else(|| {
            Error::Inconsistent("total category lacks a supremum".into())
        })?;
        map.push(sup.canonical);
    }
    let h = QFunctor::new(d.clone(), e.clone(), map)
        .map_err(|err| Error::Inconsistent(format!("extension is not a functor: {err}")))?;
    for x in 0..c.len() {
        if !e.iso(h.apply(g.apply(x)), f.apply(x)) {
            return Err(Error::Inconsistent(format!(
                "HG and F differ at {}",
                c.name(x)
            )));
        }
    }
    Ok(h)
}

/// For a presheaf `φ` without supremum, the extension problem along the
/// Yoneda functor into the representables plus `φ`: returns the
/// category `D`, the embedding `E → D`, and whether some functor
/// `H: D → E` with `H ∘ Y ≅ 1` exists (found by exhaustive search).
pub fn yoneda_extension_problem(
    e: &Arc<QCategory>,
    phi: &Presheaf,
) -> Result<(Arc<QCategory>, QFunctor, bool)> {
    let mut objects: Vec<Presheaf> = (0..e.len()).map(|x| crate::presheaf::yoneda(e, x)).collect();
    objects.push(phi.clone());
    let n = objects.len();
    let mut names: Vec<String> = e.names().iter().map(|s| format!("y{s}")).collect();
    names.push("phi".into());
    let hom = objects
        .iter()
        .flat_map(|a| objects.iter().map(move |b| (a, b)))
        .map(|(a, b)| hom_pe(e, a, b))
        .collect();
    let extent = objects.iter().map(|p| p.extent).collect();
    let d = Arc::new(QCategory::new(e.base().clone(), names, extent, hom)?);
    let y = QFunctor::new(e.clone(), d.clone(), (0..e.len()).collect())?;

    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|k| {
            (0..e.len())
                .filter(|&z| {
                    if k < e.len() {
                        e.iso(z, k)
                    } else {
                        e.extent(z) == phi.extent
                    }
                })
                .collect()
        })
        .collect();
    let mut map = vec![0; n];
    let found = search_functor(e, &d, &candidates, 0, &mut map);
    Ok((d, y, found))
}

fn search_functor(
    e: &QCategory,
    d: &QCategory,
    candidates: &[Vec<usize>],
    k: usize,
    map: &mut Vec<usize>,
) -> bool {
    if k == candidates.len() {
        return true;
    }
    let q = e.base();
    for &z in &candidates[k] {
        map[k] = z;
        let ok = (0..=k).all(|j| {
            q.leq(d.extent(j), d.extent(k), d.hom(j, k), e.hom(map[j], z))
                && q.leq(d.extent(k), d.extent(j), d.hom(k, j), e.hom(z, map[j]))
        });
        if ok && search_functor(e, d, candidates, k + 1, map) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::Poset;

    fn cat(p: &Poset) -> Arc<QCategory> {
        Arc::new(fixtures::poset_category(p))
    }

    #[test]
    fn totality_examples() {
        let caps = Caps::default();
        let d = cat(&fixtures::diamond_poset());
        assert!(is_total(&d, &caps).unwrap().value);
        let ab = cat(&fixtures::antichain2());
        let f = is_total(&ab, &caps).unwrap();
        assert!(!f.value);
        assert_eq!(f.witness.as_deref(), Some("[a=bot,b=bot]"));
        let missing: Vec<Vec<usize>> = suprema_table(&ab, &caps)
            .unwrap()
            .into_iter()
            .filter(|(_, s)| s.is_none())
            .map(|(p, _)| p.comps)
            .collect();
        assert_eq!(missing, vec![vec![0, 0], vec![1, 1]]);
        assert!(is_total(&cat(&Poset::chain(2)), &caps).unwrap().value);
    }

    #[test]
    fn flags_on_diamond_and_antichain() {
        let caps = Caps::default();
        let d = structure_report(&cat(&fixtures::diamond_poset()), &caps).unwrap();
        assert!(d.flags.iter().all(|f| f.value));
        let ab = cat(&fixtures::antichain2());
        let r = structure_report(&ab, &caps).unwrap();
        assert!(!r.flag("tensored").unwrap().value);
        assert!(!r.flag("order complete").unwrap().value);
    }

    #[test]
    fn eight_conditions() {
        let caps = Caps::default();
        let d = verify_totality_equivalences(&cat(&fixtures::diamond_poset()), &caps).unwrap();
        assert!(d.conditions.iter().all(|f| f.value));
        let ab = verify_totality_equivalences(&cat(&fixtures::antichain2()), &caps).unwrap();
        assert!(ab.conditions.iter().all(|f| !f.value));
    }

    #[test]
    fn right_adjoints_between_diamond_and_chain() {
        let d = cat(&fixtures::diamond_poset());
        let c2 = cat(&Poset::chain(2));
        let id = QFunctor::identity(d.clone());
        assert_eq!(has_right_adjoint(&id).unwrap().adjoint.unwrap().map(), id.map());
        // bot, a, b ↦ 0 and top ↦ 1 preserves meets but not the join a ∨ b
        let meet_map = QFunctor::new(d.clone(), c2.clone(), vec![0, 0, 0, 1]).unwrap();
        let r = has_right_adjoint(&meet_map).unwrap();
        assert!(r.adjoint.is_none());
        assert!(r.witness.unwrap().contains("join"));
        let join_map = QFunctor::new(d.clone(), c2, vec![0, 1, 1, 1]).unwrap();
        let g = has_right_adjoint(&join_map).unwrap().adjoint.unwrap();
        assert_eq!(g.map(), &[0, 3]);
        let ab = cat(&fixtures::antichain2());
        let err = has_right_adjoint(&QFunctor::identity(ab));
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn extension_along_inclusion() {
        let caps = Caps::default();
        let e = cat(&fixtures::diamond_poset());
        let ab = cat(&fixtures::antichain2());
        let a = Arc::new(ab.full_subcategory(&[0]));
        let f = QFunctor::new(a.clone(), e.clone(), vec![1]).unwrap();
        let g = QFunctor::new(a, ab.clone(), vec![0]).unwrap();
        let h = injective_extension(&f, &g, &caps).unwrap();
        assert_eq!(h.map(), &[1, 0]);

        let atoms = QFunctor::new(ab.clone(), e.clone(), vec![1, 2]).unwrap();
        let h = injective_extension(&atoms, &atoms, &caps).unwrap();
        assert_eq!(h.map(), &[0, 1, 2, 3]);

        let id = QFunctor::identity(ab.clone());
        let err = injective_extension(&id, &id, &caps);
        assert!(matches!(err, Err(Error::NotTotal { .. })));
    }

    #[test]
    fn converse_extension_fails_on_antichain() {
        let ab = cat(&fixtures::antichain2());
        let phi = Presheaf {
            extent: 0,
            comps: vec![1, 1],
        };
        let (_, _, found) = yoneda_extension_problem(&ab, &phi).unwrap();
        assert!(!found);
    }
}
