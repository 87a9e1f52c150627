//! Concrete categories over a finite base, read as categories enriched in
//! the free quantaloid of the base; structured sinks and final liftings.

use std::sync::Arc;

use thiserror::Error;

use crate::caps::Caps;
use crate::category::FiniteCategory;
use crate::enriched::{quantale_self_category, QCategory};
use crate::error::{Error, Result};
use crate::presheaf::{enumerate_presheaves, presheaf_name, supremum, IsoClass, Presheaf};
use crate::quantaloid::Quantaloid;
use crate::structure::{is_order_complete, is_total, Flag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcreteViolation {
    #[error("identity of {0} is not a morphism")]
    MissingIdentity(String),
    #[error("{g} . {f} is not a morphism {x} -> {z} (through {y})")]
    NotClosed {
        x: String,
        y: String,
        z: String,
        g: String,
        f: String,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A category concrete over `base`: objects with an extent and, for each
/// pair, the set of base morphisms that are morphisms of the category
/// (as a bitmask over `B(|x|, |y|)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteCategory {
    base: Arc<FiniteCategory>,
    q: Arc<Quantaloid>,
    names: Vec<String>,
    extent: Vec<usize>,
    morph: Vec<usize>,
}

impl ConcreteCategory {
    pub fn new(
        base: Arc<FiniteCategory>,
        names: Vec<String>,
        extent: Vec<usize>,
        morph: Vec<usize>,
    ) -> Result<Self> {
        let q = Arc::new(Quantaloid::free(base.clone())?);
        ConcreteCategory::with_quantaloid(q, names, extent, morph)
    }

    /// Like [`ConcreteCategory::new`], reusing an existing free quantaloid.
    pub fn with_quantaloid(
        q: Arc<Quantaloid>,
        names: Vec<String>,
        extent: Vec<usize>,
        morph: Vec<usize>,
    ) -> Result<Self> {
        let base = q
            .free_base()
            .ok_or_else(|| Error::TypeMismatch("concrete categories need a free base".into()))?
            .clone();
        let n = names.len();
        let shape = |m: String| Error::Concrete(vec![ConcreteViolation::Shape(m)]);
        if extent.len() != n || morph.len() != n * n {
            return Err(shape(format!("{n} objects need {n} extents and {} hom-sets", n * n)));
        }
        if extent.iter().any(|&s| s >= base.len()) {
            return Err(shape("extent outside the base".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if morph[x * n + y] >= q.hom_size(extent[x], extent[y]) {
                    return Err(shape(format!("hom-set ({}, {}) out of range", names[x], names[y])));
                }
            }
        }
        let c = ConcreteCategory {
            base,
            q,
            names,
            extent,
            morph,
        };
        c.validate().map_err(Error::Concrete)?;
        Ok(c)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<ConcreteViolation>> {
        let n = self.len();
        let b = &self.base;
        for x in 0..n {
            let s = self.extent[x];
            if self.morph(x, x) >> b.identity(s) & 1 == 0 {
                return Err(vec![ConcreteViolation::MissingIdentity(self.names[x].clone())]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (s, t, u) = (self.extent[x], self.extent[y], self.extent[z]);
                    for f in bits(self.morph(x, y)) {
                        for g in bits(self.morph(y, z)) {
                            if self.morph(x, z) >> b.compose(s, t, u, g, f) & 1 == 0 {
                                return Err(vec![ConcreteViolation::NotClosed {
                                    x: self.names[x].clone(),
                                    y: self.names[y].clone(),
                                    z: self.names[z].clone(),
                                    g: b.morphism_name(t, u, g).to_string(),
                                    f: b.morphism_name(s, t, f).to_string(),
                                }]);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.q
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn extent(&self, x: usize) -> usize {
        self.extent[x]
    }

    /// The morphisms `x → y` as a bitmask over `B(|x|, |y|)`.
    pub fn morph(&self, x: usize, y: usize) -> usize {
        self.morph[x * self.len() + y]
    }

    /// The corresponding `Q_B`-category `Ē`.
    pub fn encode(&self) -> QCategory {
        QCategory::new(self.q.clone(), self.names.clone(), self.extent.clone(), self.morph.clone())
            .expect("concrete categories encode to valid Q-categories")
    }

    /// `E^op` concrete over `B^op`.
    pub fn dual(&self) -> ConcreteCategory {
        let n = self.len();
        let mut morph = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                morph[y * n + x] = self.morph(x, y);
            }
        }
        ConcreteCategory {
            base: self.q.opposite().free_base().expect("free").clone(),
            q: Arc::new(self.q.opposite()),
            names: self.names.clone(),
            extent: self.extent.clone(),
            morph,
        }
    }
}

pub(crate) fn bits(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |i| mask >> i & 1 == 1)
}

/// A structured sink over `target`: for each object `x` a set of base
/// maps `|x| → target`, as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSink {
    pub target: usize,
    pub comps: Vec<usize>,
}

impl StructuredSink {
    pub fn empty(e: &ConcreteCategory, target: usize) -> Self {
        StructuredSink {
            target,
            comps: vec![0; e.len()],
        }
    }

    /// The sink consisting of the single map `f: |x| → target`.
    pub fn singleton(e: &ConcreteCategory, x: usize, target: usize, f: usize) -> Self {
        let mut s = StructuredSink::empty(e, target);
        s.comps[x] = 1 << f;
        s
    }
}

fn check_sink(e: &ConcreteCategory, sink: &StructuredSink) -> Result<()> {
    if sink.comps.len() != e.len() || sink.target >= e.base.len() {
        return Err(Error::TypeMismatch("sink does not fit the category".into()));
    }
    for (x, &c) in sink.comps.iter().enumerate() {
        if c >= e.q.hom_size(e.extent(x), sink.target) {
            return Err(Error::TypeMismatch(format!(
                "sink component at {} is not a set of maps into the target",
                e.names[x]
            )));
        }
    }
    Ok(())
}

/// The least family containing the sink that is closed under composition
/// with morphisms from the right. Iterates to a fixpoint and checks that
/// the first pass already reached it.
pub fn normalize_sink(e: &ConcreteCategory, sink: &StructuredSink) -> Result<Presheaf> {
    check_sink(e, sink)?;
    let t = sink.target;
    let q = &e.q;
    let step = |cur: &[usize]| -> Vec<usize> {
        (0..e.len())
            .map(|x1| {
                (0..e.len()).fold(cur[x1], |acc, x| {
                    acc | q.compose(e.extent(x1), e.extent(x), t, cur[x], e.morph(x1, x))
                })
            })
            .collect()
    };
    let mut cur = sink.comps.clone();
    let mut passes = 0;
    loop {
        let next = step(&cur);
        if next == cur {
            break;
        }
        cur = next;
        passes += 1;
    }
    if passes > 1 {
        return Err(Error::Inconsistent(format!(
            "sink normalization needed {passes} passes"
        )));
    }
    Ok(Presheaf {
        extent: t,
        comps: cur,
    })
}

/// Final lifting via the supremum of the normalized sink in `Ē`.
pub fn final_lift(e: &ConcreteCategory, sink: &StructuredSink) -> Result<Option<IsoClass>> {
    let phi = normalize_sink(e, sink)?;
    Ok(supremum(&e.encode(), &phi))
}

/// Final lifting by the set-theoretic characterization: `Y` over the
/// target such that `g: |Y| → |Z|` is a morphism iff `g ∘ f` is a
/// morphism `X → Z` for every `f` in the sink at `X`. Works on the raw sink.
pub fn final_lift_direct(e: &ConcreteCategory, sink: &StructuredSink) -> Result<Option<IsoClass>> {
    check_sink(e, sink)?;
    let b = &e.base;
    let t = sink.target;
    let required: Vec<usize> = (0..e.len())
        .map(|z| {
            let u = e.extent(z);
            (0..b.hom_size(t, u))
                .filter(|&g| {
                    (0..e.len()).all(|x| {
                        bits(sink.comps[x]).all(|f| {
                            e.morph(x, z) >> b.compose(e.extent(x), t, u, g, f) & 1 == 1
                        })
                    })
                })
                .fold(0, |acc, g| acc | 1 << g)
        })
        .collect();
    let members: Vec<usize> = (0..e.len())
        .filter(|&y| e.extent(y) == t && (0..e.len()).all(|z| e.morph(y, z) == required[z]))
        .collect();
    Ok(members.first().map(|&c| IsoClass {
        canonical: c,
        members: members.clone(),
    }))
}

/// Initial lifting of a structured source (maps `target → |x|`): the final
/// lifting in the dual.
pub fn initial_lift(e: &ConcreteCategory, source: &StructuredSink) -> Result<Option<IsoClass>> {
    final_lift(&e.dual(), source)
}

/// Topologicity: totality of `Ē`, cross-checked against final liftings of
/// all normalized sinks computed set-theoretically.
pub fn is_topological(e: &ConcreteCategory, caps: &Caps) -> Result<Flag> {
    let enc = e.encode();
    let total = is_total(&enc, caps)?;
    let mut direct: Option<String> = None;
    for phi in enumerate_presheaves(&enc, None, caps)? {
        let sink = StructuredSink {
            target: phi.extent,
            comps: phi.comps.clone(),
        };
        if final_lift_direct(e, &sink)?.is_none() {
            direct = Some(presheaf_name(&enc, &phi));
            break;
        }
    }
    if total.value != direct.is_none() {
        return Err(Error::Inconsistent(
            "totality and direct final liftings disagree".into(),
        ));
    }
    Ok(Flag {
        name: "topological",
        value: total.value,
        witness: direct,
    })
}

/// Whether every singleton sink has a final lifting.
pub fn is_cofibred(e: &ConcreteCategory) -> Result<Flag> {
    let b = &e.base;
    let enc = e.encode();
    for x in 0..e.len() {
        let s = e.extent(x);
        for t in 0..b.len() {
            for f in 0..b.hom_size(s, t) {
                let sink = StructuredSink::singleton(e, x, t, f);
                let direct = final_lift_direct(e, &sink)?;
                let via_sup = supremum(&enc, &normalize_sink(e, &sink)?);
                if direct.is_some() != via_sup.is_some() {
                    return Err(Error::Inconsistent(
                        "singleton lifting disagrees with the supremum".into(),
                    ));
                }
                if direct.is_none() {
                    return Ok(Flag {
                        name: "cofibred",
                        value: false,
                        witness: Some(format!(
                            "{{{}}} at {}",
                            b.morphism_name(s, t, f),
                            e.names[x]
                        )),
                    });
                }
            }
        }
    }
    Ok(Flag {
        name: "cofibred",
        value: true,
        witness: None,
    })
}

pub fn is_fibred(e: &ConcreteCategory) -> Result<Flag> {
    let f = is_cofibred(&e.dual())?;
    Ok(Flag {
        name: "fibred",
        ..f
    })
}

/// The three equivalent forms of topologicity with their witnesses.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub topological: Flag,
    pub dual_topological: Flag,
    pub fibred: Flag,
    pub cofibred: Flag,
    pub order_complete: Flag,
    pub conically_cocomplete: Flag,
}

impl DualityReport {
    pub fn value(&self) -> bool {
        self.topological.value
    }

    pub fn flags(&self) -> Vec<&Flag> {
        vec![
            &self.topological,
            &self.dual_topological,
            &self.fibred,
            &self.cofibred,
            &self.order_complete,
            &self.conically_cocomplete,
        ]
    }
}

/// Topological over `B`, topological dual over `B^op`, and fibred plus
/// cofibred with complete fibres must agree. Fibred and order complete
/// must imply conically cocomplete.
pub fn check_topological_duality(e: &ConcreteCategory, caps: &Caps) -> Result<DualityReport> {
    let topological = is_topological(e, caps)?;
    let dual = is_topological(&e.dual(), caps)?;
    let dual_topological = Flag {
        name: "dual topological",
        ..dual
    };
    let fibred = is_fibred(e)?;
    let cofibred = is_cofibred(e)?;
    let enc = e.encode();
    let order_complete = is_order_complete(&enc);
    let conically_cocomplete = crate::structure::is_conically_cocomplete(&enc)?;
    let third = fibred.value && cofibred.value && order_complete.value;
    if topological.value != dual_topological.value || topological.value != third {
        return Err(Error::Inconsistent(format!(
            "topologicity forms disagree: {topological}; {dual_topological}; {fibred}; {cofibred}; {order_complete}"
        )));
    }
    if fibred.value && order_complete.value && !conically_cocomplete.value {
        return Err(Error::Inconsistent(
            "fibred and order complete but not conically cocomplete".into(),
        ));
    }
    Ok(DualityReport {
        topological,
        dual_topological,
        fibred,
        cofibred,
        order_complete,
        conically_cocomplete,
    })
}

/// Bounded check that the source `(E(X, -))_X` into the self-category of
/// a one-object base is initial: every `Q`-category `W` on at most `k`
/// objects and every map `h: ob W → ob E` that becomes a functor after
/// each `E(X, -)` is itself a functor. The result holds only up to `k`.
pub fn check_initial_source(e: &QCategory, k: usize, caps: &Caps) -> Result<Flag> {
    let q = e.base().clone();
    if q.len() != 1 {
        return Err(Error::NotAQuantale(q.len()));
    }
    let target = quantale_self_category(q.clone())?;
    let size = q.hom_size(0, 0) as u128;
    let estimate: u128 = (1..=k as u32)
        .map(|m| {
            size.saturating_pow(m * m)
                .saturating_mul((e.len() as u128).saturating_pow(m))
        })
        .fold(0u128, |a, b| a.saturating_add(b));
    if estimate > caps.max_presheaves {
        return Err(Error::TooLarge {
            what: "initiality probes".into(),
            estimate,
            cap: caps.max_presheaves,
        });
    }
    for m in 1..=k {
        let mut homs = vec![0; m * m];
        if let Some(w) = probe_structures(e, &target, m, 0, &mut homs) {
            return Ok(Flag {
                name: "initial source",
                value: false,
                witness: Some(w),
            });
        }
    }
    Ok(Flag {
        name: "initial source",
        value: true,
        witness: None,
    })
}

fn probe_structures(
    e: &QCategory,
    target: &QCategory,
    m: usize,
    k: usize,
    homs: &mut Vec<usize>,
) -> Option<String> {
    let q = e.base();
    if k == m * m {
        let valid = (0..m).all(|a| q.leq(0, 0, q.identity(0), homs[a * m + a]))
            && (0..m).all(|a| {
                (0..m).all(|b| {
                    (0..m).all(|c| {
                        q.leq(0, 0, q.compose(0, 0, 0, homs[b * m + c], homs[a * m + b]), homs[a * m + c])
                    })
                })
            });
        if !valid {
            return None;
        }
        let mut h = vec![0; m];
        return probe_maps(e, target, m, homs, 0, &mut h);
    }
    for v in 0..q.hom_size(0, 0) {
        homs[k] = v;
        if let Some(w) = probe_structures(e, target, m, k + 1, homs) {
            return Some(w);
        }
    }
    None
}

fn probe_maps(
    e: &QCategory,
    target: &QCategory,
    m: usize,
    homs: &[usize],
    k: usize,
    h: &mut Vec<usize>,
) -> Option<String> {
    let q = e.base();
    if k == m {
        let pair_ok = |a: usize, b: usize, lhs: usize, rhs: usize| {
            let _ = (a, b);
            q.leq(0, 0, lhs, rhs)
        };
        let composites_ok = (0..e.len()).all(|x| {
            (0..m).all(|a| {
                (0..m).all(|b| {
                    pair_ok(a, b, homs[a * m + b], target.hom(e.hom(x, h[a]), e.hom(x, h[b])))
                })
            })
        });
        let functor = (0..m)
            .all(|a| (0..m).all(|b| q.leq(0, 0, homs[a * m + b], e.hom(h[a], h[b]))));
        if composites_ok && !functor {
            return Some(format!("probe of size {m} with map {h:?}"));
        }
        return None;
    }
    for y in 0..e.len() {
        h[k] = y;
        if let Some(w) = probe_maps(e, target, m, homs, k + 1, h) {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::Poset;
    use crate::structure::is_tensored;

    #[test]
    fn comma_encoding() {
        let c = fixtures::comma_bmono();
        let enc = c.encode();
        let (one, e) = (c.index_of("1").unwrap(), c.index_of("e").unwrap());
        assert_eq!(enc.hom_name(one, one), "{1}");
        assert_eq!(enc.hom_name(one, e), "{e}");
        assert_eq!(enc.hom_name(e, e), "{1,e}");
        assert_eq!(enc.hom_name(e, one), "{}");
    }

    #[test]
    fn comma_lifts() {
        let c = fixtures::comma_bmono();
        let (one, e) = (c.index_of("1").unwrap(), c.index_of("e").unwrap());
        let ee = c.base().find_morphism("e").unwrap().2;
        let sink = StructuredSink::singleton(&c, one, 0, ee);
        assert_eq!(final_lift(&c, &sink).unwrap().unwrap().canonical, e);
        assert_eq!(final_lift_direct(&c, &sink).unwrap().unwrap().canonical, e);
        let norm = normalize_sink(&c, &sink).unwrap();
        assert_eq!(norm.comps, vec![0b10, 0]);
        let empty = StructuredSink::empty(&c, 0);
        assert_eq!(normalize_sink(&c, &empty).unwrap().comps, vec![0, 0]);
        assert_eq!(final_lift(&c, &empty).unwrap(), None);
    }

    #[test]
    fn comma_flags() {
        let caps = Caps::default();
        let c = fixtures::comma_bmono();
        assert!(is_cofibred(&c).unwrap().value);
        assert!(!is_tensored(&c.encode()).value);
        let t = is_topological(&c, &caps).unwrap();
        assert!(!t.value);
        assert_eq!(t.witness.as_deref(), Some("[1={},e={}]"));
        let r = check_topological_duality(&c, &caps).unwrap();
        assert!(!r.topological.value && !r.dual_topological.value);
        assert!(!(r.fibred.value && r.cofibred.value && r.order_complete.value));
    }

    fn over_terminal(p: &Poset) -> ConcreteCategory {
        let base = Arc::new(FiniteCategory::terminal());
        let n = p.len();
        let morph = (0..n * n).map(|i| usize::from(p.leq(i / n, i % n))).collect();
        ConcreteCategory::new(base, p.names().to_vec(), vec![0; n], morph).unwrap()
    }

    #[test]
    fn posets_over_terminal() {
        let caps = Caps::default();
        let d = over_terminal(&fixtures::diamond_poset());
        let r = check_topological_duality(&d, &caps).unwrap();
        assert!(r.flags().iter().all(|f| f.value));
        let a = over_terminal(&fixtures::antichain2());
        assert!(!is_topological(&a, &caps).unwrap().value);
        assert!(d.encode().base().is_two());
    }

    #[test]
    fn non_closed_morphisms_are_rejected() {
        let base = Arc::new(fixtures::b_mono());
        // e: X -> Y and e: Y -> X but no e: X -> X
        let err = ConcreteCategory::new(base, vec!["X".into(), "Y".into()], vec![0, 0], vec![1, 2, 2, 1]);
        assert!(matches!(err, Err(Error::Concrete(_))));
    }

    #[test]
    fn initial_sources() {
        let caps = Caps::default();
        let c2 = fixtures::poset_category(&Poset::chain(2));
        assert!(check_initial_source(&c2, 2, &caps).unwrap().value);
        let two = quantale_self_category(Arc::new(fixtures::two())).unwrap();
        assert!(check_initial_source(&two, 2, &caps).unwrap().value);
        let one = fixtures::poset_category(&Poset::chain(1));
        assert!(check_initial_source(&one, 3, &caps).unwrap().value);
    }
}
