//! Small named instances used throughout the tests and the command line.

use std::sync::Arc;

use crate::category::FiniteCategory;
use crate::concrete::ConcreteCategory;
use crate::enriched::QCategory;
use crate::lattice::{FiniteLattice, Poset};
use crate::quantaloid::Quantaloid;

/// The two-element quantale `({bot, top}, ∧, top)`.
pub fn two() -> Quantaloid {
    let l = FiniteLattice::from_named_covers(&["bot", "top"], &[("bot", "top")])
        .expect("two-element chain");
    Quantaloid::from_quantale(l, &[vec![0, 0], vec![0, 1]], 1).expect("TWO is a quantale")
}

/// Distances `{0, 1, 2, inf}` ordered by `≥`, with addition truncated to
/// `inf` above 2 and unit 0.
pub fn fin_metric() -> Quantaloid {
    let names = ["0", "1", "2", "inf"];
    let l = FiniteLattice::from_named_covers(&names, &[("inf", "2"), ("2", "1"), ("1", "0")])
        .expect("four-element chain");
    let tensor: Vec<Vec<usize>> = (0..4)
        .map(|a| (0..4).map(|b| if a == 3 || b == 3 || a + b > 2 { 3 } else { a + b }).collect())
        .collect();
    Quantaloid::from_quantale(l, &tensor, 0).expect("FIN_METRIC is a quantale")
}

/// One object with morphisms `1` and an idempotent `e`.
pub fn b_mono() -> FiniteCategory {
    FiniteCategory::monoid(&["1", "e"], &[&[0, 1], &[1, 1]]).expect("idempotent monoid")
}

pub fn q_b_mono() -> Quantaloid {
    Quantaloid::free(Arc::new(b_mono())).expect("small base")
}

/// The arrow category `0 → 1` with one non-identity morphism `a`.
pub fn arrow_category() -> FiniteCategory {
    FiniteCategory::from_fn(
        vec!["0".into(), "1".into()],
        vec![
            vec!["id0".into()],
            vec!["a".into()],
            vec![],
            vec!["id1".into()],
        ],
        vec![0, 0],
        |_, _, _, _, _| 0,
    )
    .expect("arrow category")
}

pub fn diamond_poset() -> Poset {
    Poset::from_named_covers(
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .expect("diamond")
}

pub fn antichain2() -> Poset {
    Poset::antichain(&["a", "b"])
}

/// The four-element poset `a < b, c < d, a < d, c < b`.
pub fn benzene() -> Poset {
    Poset::from_named_covers(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("c", "d"), ("a", "d"), ("c", "b")],
    )
    .expect("benzene")
}

pub fn poset_category(p: &Poset) -> QCategory {
    QCategory::from_poset(Arc::new(two()), p).expect("orders are TWO-categories")
}

pub fn diamond_category() -> QCategory {
    poset_category(&diamond_poset())
}

/// The comma category of the terminal object over the idempotent monoid:
/// objects `1` and `e`, concrete over it by the codomain.
pub fn comma_bmono() -> ConcreteCategory {
    ConcreteCategory::new(
        Arc::new(b_mono()),
        vec!["1".into(), "e".into()],
        vec![0, 0],
        vec![0b01, 0b10, 0b00, 0b11],
    )
    .expect("comma category")
}
