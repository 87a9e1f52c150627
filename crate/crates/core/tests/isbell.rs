use std::sync::Arc;

use proptest::prelude::*;
use qk_core::caps::Caps;
use qk_core::corpus;
use qk_core::enriched::{QDistributor, QFunctor};
use qk_core::fixtures;
use qk_core::isbell::{isbell_category, isbell_down, isbell_up, macneille_completion};
use qk_core::lattice::dedekind_macneille;
use qk_core::presheaf::{build_cope, enumerate_presheaves, hom_cope, hom_pe, is_copresheaf, is_presheaf, yoneda};
use qk_core::structure::is_total;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn up_and_down_are_adjoint(seed in any::<u64>()) {
        let caps = Caps::default();
        for phi in corpus::distributor_corpus(seed, 3) {
            let (e, d) = (phi.source(), phi.target());
            let weights = enumerate_presheaves(e, None, &caps).unwrap();
            let coweights = build_cope(d.clone(), &caps).unwrap();
            for w in &weights {
                let up = isbell_up(&phi, w).unwrap();
                prop_assert!(is_copresheaf(d, &up));
                for psi in coweights.presheaves() {
                    let down = isbell_down(&phi, psi).unwrap();
                    prop_assert!(is_presheaf(e, &down));
                    prop_assert_eq!(hom_cope(d, &up, psi), hom_pe(e, w, &down));
                }
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>()) {
        let caps = Caps::default();
        for phi in corpus::distributor_corpus(seed, 3) {
            let e = phi.source().clone();
            let q = e.base().clone();
            let isb = isbell_category(&phi, &caps).unwrap();
            let weights = enumerate_presheaves(&e, None, &caps).unwrap();
            let below = |a: &qk_core::presheaf::Presheaf, b: &qk_core::presheaf::Presheaf| {
                a.extent == b.extent
                    && (0..e.len()).all(|x| q.leq(e.extent(x), a.extent, a.comps[x], b.comps[x]))
            };
            let closed: Vec<_> = weights.iter().map(|w| isb.closure(w).unwrap()).collect();
            for (w, c) in weights.iter().zip(&closed) {
                prop_assert!(below(w, c));
                prop_assert_eq!(&isb.closure(c).unwrap(), c);
                prop_assert!(isb.find(c).is_some());
            }
            for i in 0..weights.len() {
                for j in 0..weights.len() {
                    if below(&weights[i], &weights[j]) {
                        prop_assert!(below(&closed[i], &closed[j]));
                    }
                }
            }
            prop_assert!(is_total(isb.category(), &caps).unwrap().value);
        }
    }

    #[test]
    fn enriched_macneille_matches_cuts(seed in any::<u64>()) {
        let caps = Caps::default();
        for p in corpus::poset_corpus(seed, 3, 6) {
            let enriched = macneille_completion(&p, &caps).unwrap();
            let classical = dedekind_macneille(&p);
            let mut a = enriched.cuts.clone();
            let mut b = classical.cuts.clone();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
            prop_assert_eq!(enriched.lattice.len(), classical.lattice.len());
        }
    }
}

#[test]
fn metric_categories_embed_in_their_isbell_category() {
    let caps = Caps::default();
    let q = Arc::new(fixtures::fin_metric());
    let mut r = corpus::rng(0x1b);
    for _ in 0..30 {
        let e = Arc::new(corpus::random_qcategory(&mut r, &q, 3));
        let isb = isbell_category(&QDistributor::identity(e.clone()), &caps).unwrap();
        let map: Vec<usize> = (0..e.len())
            .map(|x| isb.find(&yoneda(&e, x)).expect("representables are fixed"))
            .collect();
        let y = QFunctor::new(e.clone(), isb.category().clone(), map).unwrap();
        assert_eq!(y.fully_faithful_witness(), None);
    }
}
