use proptest::prelude::*;
use qk_core::corpus;
use qk_core::lattice::{dedekind_macneille, BoundKind, FiniteLattice};

type Op = fn(&FiniteLattice, usize, usize) -> usize;

fn definitional_irreducibles(l: &FiniteLattice, kind: BoundKind) -> Vec<usize> {
    let (unit, op): (usize, Op) = match kind {
        BoundKind::Join => (l.bottom(), FiniteLattice::join),
        BoundKind::Meet => (l.top(), FiniteLattice::meet),
    };
    (0..l.len())
        .filter(|&x| x != unit)
        .filter(|&x| {
            (0..l.len()).all(|a| (0..l.len()).all(|b| op(l, a, b) != x || a == x || b == x))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn joins_are_least_upper_bounds(seed in any::<u64>()) {
        for l in corpus::lattice_corpus(seed, 4, 6) {
            let n = l.len();
            for x in 0..n {
                for y in 0..n {
                    let j = l.join(x, y);
                    let m = l.meet(x, y);
                    prop_assert!(l.leq(x, j) && l.leq(y, j));
                    prop_assert!(l.leq(m, x) && l.leq(m, y));
                    for z in 0..n {
                        if l.leq(x, z) && l.leq(y, z) {
                            prop_assert!(l.leq(j, z));
                        }
                        if l.leq(z, x) && l.leq(z, y) {
                            prop_assert!(l.leq(z, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibles_match_definition(seed in any::<u64>()) {
        for l in corpus::lattice_corpus(seed, 4, 7) {
            for kind in [BoundKind::Join, BoundKind::Meet] {
                let mut got = l.irreducibles(kind);
                got.sort_unstable();
                prop_assert_eq!(got, definitional_irreducibles(&l, kind));
            }
        }
    }

    #[test]
    fn macneille_embeds_densely(seed in any::<u64>()) {
        for p in corpus::poset_corpus(seed, 4, 8) {
            let m = dedekind_macneille(&p);
            let l = &m.lattice;
            let n = p.len();
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(p.leq(x, y), l.leq(m.embedding[x], m.embedding[y]));
                }
            }
            for a in 0..l.len() {
                let below = (0..n).filter(|&x| l.leq(m.embedding[x], a)).map(|x| m.embedding[x]);
                let above = (0..n).filter(|&x| l.leq(a, m.embedding[x])).map(|x| m.embedding[x]);
                prop_assert_eq!(l.bound(below, BoundKind::Join), a);
                prop_assert_eq!(l.bound(above, BoundKind::Meet), a);
            }
        }
    }
}

#[test]
fn dual_swaps_irreducibles() {
    for l in corpus::lattice_corpus(7, 20, 7) {
        let d = l.dual();
        let mut a = l.irreducibles(BoundKind::Join);
        let mut b = d.irreducibles(BoundKind::Meet);
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}
