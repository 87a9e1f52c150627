use std::sync::Arc;

use proptest::prelude::*;
use qk_core::caps::Caps;
use qk_core::concrete::{
    final_lift, final_lift_direct, is_topological, normalize_sink, ConcreteCategory, StructuredSink,
};
use qk_core::corpus;
use qk_core::enriched::{functor_leq, QCategory, QFunctor};
use qk_core::presheaf::{build_pe, lower_star, supremum};
use qk_core::quantaloid::Quantaloid;
use rand::seq::SliceRandom;
use rand::Rng;

fn free_bases() -> Vec<Arc<Quantaloid>> {
    corpus::small_categories(2, 4, 4)
        .into_iter()
        .map(|c| Arc::new(Quantaloid::free(Arc::new(c)).unwrap()))
        .collect()
}

fn random_sink(r: &mut impl Rng, e: &ConcreteCategory) -> StructuredSink {
    let q = e.quantaloid();
    let target = r.gen_range(0..q.len());
    let comps = (0..e.len())
        .map(|x| r.gen_range(0..q.hom_size(e.extent(x), target)))
        .collect();
    StructuredSink { target, comps }
}

/// Concrete functor by the set condition: `F` keeps extents and every
/// morphism `x → y` is a morphism `Fx → Fy`.
fn is_concrete_functor(e: &ConcreteCategory, d: &ConcreteCategory, map: &[usize]) -> bool {
    (0..e.len()).all(|x| e.extent(x) == d.extent(map[x]))
        && (0..e.len()).all(|x| (0..e.len()).all(|y| e.morph(x, y) & !d.morph(map[x], map[y]) == 0))
}

fn concrete_leq(e: &ConcreteCategory, d: &ConcreteCategory, f: &[usize], g: &[usize]) -> bool {
    (0..e.len()).all(|x| d.morph(f[x], g[x]) >> e.base().identity(e.extent(x)) & 1 == 1)
}

fn object_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32))
        .map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifts_see_only_the_normalized_sink(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        for e in corpus::concrete_corpus(seed, 3) {
            for _ in 0..4 {
                let sink = random_sink(&mut r, &e);
                let phi = normalize_sink(&e, &sink).unwrap();
                let normalized = StructuredSink { target: phi.extent, comps: phi.comps };
                let lift = final_lift(&e, &sink).unwrap();
                prop_assert_eq!(&lift, &final_lift(&e, &normalized).unwrap());
                prop_assert_eq!(&lift, &final_lift_direct(&e, &sink).unwrap());
            }
        }
    }

    #[test]
    fn topologicity_is_self_dual(seed in any::<u64>()) {
        let caps = Caps::default();
        for e in corpus::concrete_corpus(seed, 4) {
            let there = is_topological(&e, &caps).unwrap().value;
            let back = is_topological(&e.dual(), &caps).unwrap().value;
            prop_assert_eq!(there, back);
        }
    }

    #[test]
    fn concrete_functors_are_enriched_functors(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let q = free_bases().choose(&mut r).unwrap().clone();
        let n = r.gen_range(1..=3);
        let e = corpus::random_concrete(&mut r, &q, n);
        let n = r.gen_range(1..=3);
        let d = corpus::random_concrete(&mut r, &q, n);
        let (ee, dd) = (Arc::new(e.encode()), Arc::new(d.encode()));
        let mut functors = Vec::new();
        for map in object_maps(e.len(), d.len()) {
            let concrete = is_concrete_functor(&e, &d, &map);
            let enriched = QFunctor::new(ee.clone(), dd.clone(), map.clone());
            prop_assert_eq!(concrete, enriched.is_ok());
            if let Ok(f) = enriched {
                functors.push((map, f));
            }
        }
        for (fm, f) in &functors {
            for (gm, g) in &functors {
                prop_assert_eq!(concrete_leq(&e, &d, fm, gm), functor_leq(f, g));
            }
        }
    }
}

/// `F` with a right adjoint, by search over object maps.
fn has_adjoint(f: &QFunctor) -> bool {
    let (e, d) = (f.source(), f.target());
    (0..d.len()).all(|y| {
        (0..e.len()).any(|g| {
            e.extent(g) == d.extent(y) && (0..e.len()).all(|x| e.hom(x, g) == d.hom(f.apply(x), y))
        })
    })
}

fn hull_factorization(e: &ConcreteCategory, d: &ConcreteCategory, f: &QFunctor) -> usize {
    let caps = Caps::default();
    let pe = build_pe(Arc::new(e.encode()), &caps).unwrap();
    let dd: &Arc<QCategory> = f.target();
    let y = pe.yoneda_functor(false);
    let map: Vec<usize> = pe
        .presheaves()
        .iter()
        .map(|phi| supremum(dd, &lower_star(f, phi).unwrap()).expect("topological target").canonical)
        .collect();
    let h = QFunctor::new(pe.category().clone(), dd.clone(), map).unwrap();
    for x in 0..e.len() {
        assert!(dd.iso(h.apply(y.apply(x)), f.apply(x)));
    }
    assert!(has_adjoint(&h));

    let options: Vec<Vec<usize>> = (0..pe.len())
        .map(|p| (0..d.len()).filter(|&z| d.extent(z) == pe.presheaf(p).extent).collect())
        .collect();
    let space = options.iter().fold(1usize, |acc, o| acc.saturating_mul(o.len()));
    if space > 50_000 {
        return 0;
    }
    let mut candidates = 0;
    for code in 0..space {
        let mut rest = code;
        let map: Vec<usize> = options
            .iter()
            .map(|o| {
                let z = o[rest % o.len()];
                rest /= o.len();
                z
            })
            .collect();
        let Ok(k) = QFunctor::new(pe.category().clone(), dd.clone(), map) else {
            continue;
        };
        if (0..e.len()).all(|x| dd.iso(k.apply(y.apply(x)), f.apply(x))) && has_adjoint(&k) {
            candidates += 1;
            for p in 0..pe.len() {
                assert!(dd.iso(k.apply(p), h.apply(p)));
            }
        }
    }
    candidates
}

#[test]
fn presheaf_hull_factors_uniquely() {
    let caps = Caps::default();
    let mut r = corpus::rng(0xc0c0);
    let bases = free_bases();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 25 {
        attempts += 1;
        assert!(attempts < 20_000, "too few topological targets");
        let q = bases.choose(&mut r).unwrap().clone();
        let n = r.gen_range(1..=3);
        let d = corpus::random_concrete(&mut r, &q, n);
        if !is_topological(&d, &caps).unwrap().value {
            continue;
        }
        let n = r.gen_range(1..=2);
        let e = corpus::random_concrete(&mut r, &q, n);
        let (ee, dd) = (Arc::new(e.encode()), Arc::new(d.encode()));
        let Some(f) = corpus::random_functor(&mut r, &ee, &dd, 16) else {
            continue;
        };
        if hull_factorization(&e, &d, &f) > 0 {
            checked += 1;
        }
    }
}
