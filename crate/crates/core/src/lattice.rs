//! Finite posets and finite (hence complete) lattices.
//!
//! Elements are interned to dense indices `0..len`; every relation and
//! operation is a table lookup afterwards.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Which of the two bounds is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Join,
    Meet,
}

impl BoundKind {
    pub fn dual(self) -> Self {
        match self {
            BoundKind::Join => BoundKind::Meet,
            BoundKind::Meet => BoundKind::Join,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Join => write!(f, "join"),
            BoundKind::Meet => write!(f, "meet"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeViolation {
    #[error("empty element list")]
    Empty,
    #[error("not a poset: {law} fails at ({})", .witness.join(", "))]
    NotAPoset {
        law: &'static str,
        witness: Vec<String>,
    },
    #[error("no {kind} for {{{}}}", .witness.join(", "))]
    NoBound {
        kind: BoundKind,
        witness: Vec<String>,
    },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

/// A finite partially ordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    // leq[a * n + b] is `true` iff a <= b
    leq: Vec<bool>,
}

impl Poset {
    /// Validates an explicit order table.
    pub fn new(names: Vec<String>, leq: Vec<bool>) -> Result<Self, Vec<LatticeViolation>> {
        let n = names.len();
        assert_eq!(leq.len(), n * n, "order table must be n*n");
        let mut errs = Vec::new();
        for a in 0..n {
            if !leq[a * n + a] {
                errs.push(LatticeViolation::NotAPoset {
                    law: "reflexivity",
                    witness: vec![names[a].clone()],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a < b && leq[a * n + b] && leq[b * n + a] {
                    errs.push(LatticeViolation::NotAPoset {
                        law: "antisymmetry",
                        witness: vec![names[a].clone(), names[b].clone()],
                    });
                }
                if !leq[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b * n + c] && !leq[a * n + c] {
                        errs.push(LatticeViolation::NotAPoset {
                            law: "transitivity",
                            witness: vec![names[a].clone(), names[b].clone(), names[c].clone()],
                        });
                    }
                }
            }
        }
        if errs.is_empty() {
            Ok(Poset { names, leq })
        } else {
            Err(errs)
        }
    }

    /// Builds the reflexive-transitive closure of the given covering pairs
    /// `(lower, upper)` and rejects cycles.
    pub fn from_covers(
        names: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Self, Vec<LatticeViolation>> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in covers {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        let mut errs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if leq[a * n + b] && leq[b * n + a] {
                    errs.push(LatticeViolation::NotAPoset {
                        law: "antisymmetry (cycle)",
                        witness: vec![names[a].clone(), names[b].clone()],
                    });
                }
            }
        }
        if errs.is_empty() {
            Ok(Poset { names, leq })
        } else {
            Err(errs)
        }
    }

    /// Like [`Poset::from_covers`] but with pairs given by name.
    pub fn from_named_covers(
        names: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Self, Vec<LatticeViolation>> {
        let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *idx
                .get(a)
                .ok_or_else(|| vec![LatticeViolation::UnknownElement(a.to_string())])?;
            let ib = *idx
                .get(b)
                .ok_or_else(|| vec![LatticeViolation::UnknownElement(b.to_string())])?;
            pairs.push((ia, ib));
        }
        Poset::from_covers(names.iter().map(|s| s.to_string()).collect(), &pairs)
    }

    pub fn antichain(names: &[&str]) -> Self {
        Poset::from_named_covers(names, &[]).expect("antichain is a poset")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(names, &covers).expect("chain is a poset")
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

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Upper bounds of a subset, as a membership vector.
    pub fn upper_bounds(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|b| (0..self.len()).all(|a| !subset[a] || self.leq(a, b)))
            .collect()
    }

    pub fn lower_bounds(&self, subset: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|b| (0..self.len()).all(|a| !subset[a] || self.leq(b, a)))
            .collect()
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        Poset {
            names: self.names.clone(),
            leq,
        }
    }
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Lattices up to this size get the full subset-join audit.
pub const FULL_AUDIT_MAX: usize = 12;
const AUDIT_SAMPLES: usize = 10_000;

fn least_in(poset: &Poset, candidates: &[bool]) -> Option<usize> {
    let n = poset.len();
    (0..n).find(|&c| candidates[c] && (0..n).all(|d| !candidates[d] || poset.leq(c, d)))
}

fn greatest_in(poset: &Poset, candidates: &[bool]) -> Option<usize> {
    let n = poset.len();
    (0..n).find(|&c| candidates[c] && (0..n).all(|d| !candidates[d] || poset.leq(d, c)))
}

impl FiniteLattice {
    /// Checks that `poset` has all pairwise joins and meets plus bounds,
    /// filling the operation tables.
    pub fn from_poset(poset: Poset) -> Result<Self, Vec<LatticeViolation>> {
        let n = poset.len();
        if n == 0 {
            return Err(vec![LatticeViolation::Empty]);
        }
        let mut errs = Vec::new();
        let all = vec![true; n];
        let bottom = least_in(&poset, &all);
        let top = greatest_in(&poset, &all);
        let mut join = vec![usize::MAX; n * n];
        let mut meet = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in a..n {
                let mut pair = vec![false; n];
                pair[a] = true;
                pair[b] = true;
                match least_in(&poset, &poset.upper_bounds(&pair)) {
                    Some(j) => {
                        join[a * n + b] = j;
                        join[b * n + a] = j;
                    }
                    None => errs.push(LatticeViolation::NoBound {
                        kind: BoundKind::Join,
                        witness: vec![poset.names[a].clone(), poset.names[b].clone()],
                    }),
                }
                match greatest_in(&poset, &poset.lower_bounds(&pair)) {
                    Some(m) => {
                        meet[a * n + b] = m;
                        meet[b * n + a] = m;
                    }
                    None => errs.push(LatticeViolation::NoBound {
                        kind: BoundKind::Meet,
                        witness: vec![poset.names[a].clone(), poset.names[b].clone()],
                    }),
                }
            }
        }
        if bottom.is_none() {
            errs.push(LatticeViolation::NoBound {
                kind: BoundKind::Join,
                witness: vec![],
            });
        }
        if top.is_none() {
            errs.push(LatticeViolation::NoBound {
                kind: BoundKind::Meet,
                witness: vec![],
            });
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let lattice = FiniteLattice {
            poset,
            join,
            meet,
            bottom: bottom.unwrap(),
            top: top.unwrap(),
        };
        lattice.audit_subset_joins()?;
        Ok(lattice)
    }

    /// Redundancy audit: folded joins of subsets are least upper bounds.
    fn audit_subset_joins(&self) -> Result<(), Vec<LatticeViolation>> {
        let n = self.len();
        let check = |subset: &[bool]| -> Option<LatticeViolation> {
            let folded = self.bound(
                (0..n).filter(|&i| subset[i]),
                BoundKind::Join,
            );
            let ub = self.poset.upper_bounds(subset);
            if ub[folded] && (0..n).all(|z| !ub[z] || self.leq(folded, z)) {
                None
            } else {
                Some(LatticeViolation::NoBound {
                    kind: BoundKind::Join,
                    witness: (0..n)
                        .filter(|&i| subset[i])
                        .map(|i| self.name(i).to_string())
                        .collect(),
                })
            }
        };
        if n <= FULL_AUDIT_MAX {
            for mask in 0u32..(1 << n) {
                let subset: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                if let Some(v) = check(&subset) {
                    return Err(vec![v]);
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1a77_1ce5);
            for _ in 0..AUDIT_SAMPLES {
                let subset: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                if let Some(v) = check(&subset) {
                    return Err(vec![v]);
                }
            }
        }
        Ok(())
    }

    /// Validates an order given by covering pairs of named elements.
    pub fn from_named_covers(
        names: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Self, Vec<LatticeViolation>> {
        FiniteLattice::from_poset(Poset::from_named_covers(names, covers)?)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        FiniteLattice::from_poset(Poset::chain(n)).expect("nonempty chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn name(&self, a: usize) -> &str {
        self.poset.name(a)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Join or meet of an arbitrary subset (empty join is bottom).
    pub fn bound(&self, subset: impl IntoIterator<Item = usize>, kind: BoundKind) -> usize {
        match kind {
            BoundKind::Join => subset.into_iter().fold(self.bottom, |acc, x| self.join(acc, x)),
            BoundKind::Meet => subset.into_iter().fold(self.top, |acc, x| self.meet(acc, x)),
        }
    }

    /// Join-irreducible (resp. meet-irreducible) elements: those with
    /// exactly one lower (resp. upper) cover.
    pub fn irreducibles(&self, kind: BoundKind) -> Vec<usize> {
        let covers = self.poset.covers();
        (0..self.len())
            .filter(|&x| {
                let count = covers
                    .iter()
                    .filter(|&&(a, b)| match kind {
                        BoundKind::Join => b == x,
                        BoundKind::Meet => a == x,
                    })
                    .count();
                count == 1
            })
            .collect()
    }

    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice {
            poset: self.poset.dual(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }
}

/// The lattice of cuts of a poset together with the embedding `x ↦ ↓x`.
#[derive(Debug, Clone)]
pub struct MacNeille {
    pub lattice: FiniteLattice,
    /// `cuts[i]` is the lower half of the cut at lattice element `i`.
    pub cuts: Vec<Vec<bool>>,
    pub embedding: Vec<usize>,
}

/// Dedekind–MacNeille completion by cuts.
///
/// The closed lower sets `A = (A^u)^l` are exactly the intersections of
/// principal ideals (the whole poset being the empty intersection), so
/// they are generated by closing `{P} ∪ {↓x}` under pairwise intersection.
pub fn dedekind_macneille(p: &Poset) -> MacNeille {
    let n = p.len();
    let principal = |x: usize| -> Vec<bool> { (0..n).map(|y| p.leq(y, x)).collect() };
    let mut cuts: Vec<Vec<bool>> = vec![vec![true; n]];
    for x in 0..n {
        let d = principal(x);
        if !cuts.contains(&d) {
            cuts.push(d);
        }
    }
    let mut i = 0;
    while i < cuts.len() {
        for j in 0..i {
            let meet: Vec<bool> = cuts[i].iter().zip(&cuts[j]).map(|(a, b)| *a && *b).collect();
            if !cuts.contains(&meet) {
                cuts.push(meet);
            }
        }
        i += 1;
    }
    // deterministic order: by size, then lexicographically
    cuts.sort_by(|a, b| {
        let ca = a.iter().filter(|x| **x).count();
        let cb = b.iter().filter(|x| **x).count();
        ca.cmp(&cb).then_with(|| b.cmp(a))
    });
    let names: Vec<String> = cuts
        .iter()
        .map(|c| {
            match (0..n).find(|&x| principal(x) == *c) {
                Some(x) => p.name(x).to_string(),
                None => {
                    let members: Vec<&str> =
                        (0..n).filter(|&y| c[y]).map(|y| p.name(y)).collect();
                    format!("cut{{{}}}", members.join("+"))
                }
            }
        })
        .collect();
    let m = cuts.len();
    let mut leq = vec![false; m * m];
    for a in 0..m {
        for b in 0..m {
            leq[a * m + b] = (0..n).all(|y| !cuts[a][y] || cuts[b][y]);
        }
    }
    let poset = Poset::new(names, leq).expect("inclusion is a partial order");
    let lattice = FiniteLattice::from_poset(poset).expect("cuts form a complete lattice");
    let embedding = (0..n)
        .map(|x| cuts.iter().position(|c| *c == principal(x)).unwrap())
        .collect();
    MacNeille {
        lattice,
        cuts,
        embedding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_named_covers(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    #[test]
    fn one_point_lattice() {
        let l = FiniteLattice::chain(1);
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn antichain_has_no_bound() {
        let errs = FiniteLattice::from_poset(Poset::antichain(&["a", "b"])).unwrap_err();
        assert!(errs.contains(&LatticeViolation::NoBound {
            kind: BoundKind::Join,
            witness: vec!["a".into(), "b".into()],
        }));
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let errs = Poset::from_named_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(&errs[0], LatticeViolation::NotAPoset { witness, .. } if witness == &["a", "b"]));
    }

    #[test]
    fn missing_reflexivity_is_reported() {
        let errs = Poset::new(vec!["a".into()], vec![false]).unwrap_err();
        assert!(matches!(&errs[0], LatticeViolation::NotAPoset { law: "reflexivity", .. }));
    }

    #[test]
    fn empty_lattice_rejected() {
        let p = Poset::new(vec![], vec![]).unwrap();
        assert_eq!(FiniteLattice::from_poset(p).unwrap_err(), vec![LatticeViolation::Empty]);
    }

    #[test]
    fn diamond_bounds() {
        let l = diamond();
        let (bot, a, b, top) = (0, 1, 2, 3);
        assert_eq!(l.join(a, b), top);
        assert_eq!(l.bound([], BoundKind::Join), bot);
        assert_eq!(l.bound([a, b], BoundKind::Join), top);
        assert_eq!(l.bound([a, b], BoundKind::Meet), bot);
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(diamond().irreducibles(BoundKind::Join), vec![1, 2]);
        assert_eq!(diamond().irreducibles(BoundKind::Meet), vec![1, 2]);
        assert_eq!(FiniteLattice::chain(3).irreducibles(BoundKind::Join), vec![1, 2]);
        assert!(FiniteLattice::chain(1).irreducibles(BoundKind::Join).is_empty());
    }

    #[test]
    fn macneille_of_antichain_is_diamond() {
        let mc = dedekind_macneille(&Poset::antichain(&["a", "b"]));
        assert_eq!(mc.lattice.len(), 4);
        let (a, b) = (mc.embedding[0], mc.embedding[1]);
        assert_eq!(mc.lattice.join(a, b), mc.lattice.top());
        assert_eq!(mc.lattice.meet(a, b), mc.lattice.bottom());
    }

    #[test]
    fn macneille_adds_only_bottom_to_a_v() {
        let p = Poset::from_named_covers(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        let mc = dedekind_macneille(&p);
        assert_eq!(mc.lattice.len(), 4);
        assert_eq!(mc.lattice.top(), mc.embedding[2]);
        assert!(!mc.embedding.contains(&mc.lattice.bottom()));
    }

    #[test]
    fn macneille_of_lattice_is_itself() {
        let l = diamond();
        let mc = dedekind_macneille(l.poset());
        assert_eq!(mc.lattice.len(), l.len());
        for x in 0..l.len() {
            for y in 0..l.len() {
                assert_eq!(l.leq(x, y), mc.lattice.leq(mc.embedding[x], mc.embedding[y]));
            }
        }
    }

    #[test]
    fn sampled_audit_on_larger_lattice() {
        let l = FiniteLattice::chain(14);
        assert_eq!(l.bound(0..14, BoundKind::Join), 13);
    }
}
