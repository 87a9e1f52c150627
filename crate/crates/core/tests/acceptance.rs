//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use qk_core::caps::Caps;
use qk_core::concrete::{final_lift, final_lift_direct, is_cofibred, is_fibred, is_topological, StructuredSink};
use qk_core::corpus;
use qk_core::enriched::{quantale_self_category, QCategory, QDistributor};
use qk_core::fixtures;
use qk_core::instance::{parse_instance, Item};
use qk_core::isbell::{isbell_category, isbell_witnesses, lattice_reconstruction, macneille_completion, Isbell};
use qk_core::lattice::{FiniteLattice, Poset};
use qk_core::presheaf::{enumerate_presheaves, hom_pe, yoneda, Presheaf};
use qk_core::quantaloid::Quantaloid;
use qk_core::structure::{injective_extension, is_order_complete, is_tensored, is_total, verify_totality_equivalences, yoneda_extension_problem};

const RESIDUAL_LIMIT: Duration = Duration::from_secs(10);
const TOTALITY_LIMIT: Duration = Duration::from_secs(300);
const MACNEILLE_LIMIT: Duration = Duration::from_secs(60);

const TOTALITY_SEED: u64 = 0x5eed_0004;
const CONCRETE_SEED: u64 = 0x5eed_0005;
const POSET_SEED: u64 = 0x5eed_0006;
const LATTICE_SEED: u64 = 0x5eed_0007;
const EXTENSION_SEED: u64 = 0x5eed_0009;
const DISTRIBUTOR_SEED: u64 = 0x5eed_000a;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fixture_quantaloids() -> Vec<(String, Quantaloid)> {
    vec![
        ("TWO".into(), fixtures::two()),
        ("FIN_METRIC".into(), fixtures::fin_metric()),
        ("Q_B_mono".into(), fixtures::q_b_mono()),
    ]
}

/// `v ∘ u ≤ w ⟺ v ≤ w ↙ u ⟺ u ≤ v ↘ w` on every aligned triple.
fn adjunction_failures(q: &Quantaloid) -> (u64, u64) {
    let n = q.len();
    let (mut checked, mut failed) = (0, 0);
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                for a in 0..q.hom_size(s, t) {
                    for b in 0..q.hom_size(t, u) {
                        let ba = q.compose(s, t, u, b, a);
                        for w in 0..q.hom_size(s, u) {
                            let first = q.leq(s, u, ba, w);
                            let second = q.leq(t, u, b, q.left_residual(s, t, u, w, a));
                            let third = q.leq(s, t, a, q.right_residual(s, t, u, b, w));
                            checked += 1;
                            if first != second || second != third {
                                failed += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    (checked, failed)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut qs = fixture_quantaloids();
    let bases = corpus::small_categories_up_to_iso(2, 3, 12);
    let free_count = bases.len();
    for c in bases {
        qs.push((String::new(), Quantaloid::free(Arc::new(c)).expect("small base")));
    }
    let (mut checked, mut failed) = (0, 0);
    for (_, q) in &qs {
        let (c, f) = adjunction_failures(q);
        checked += c;
        failed += f;
    }
    let elapsed = start.elapsed();
    outcome(
        failed == 0 && elapsed < RESIDUAL_LIMIT,
        format!(
            "3 fixture quantaloids + {free_count} free quantaloids (bases up to isomorphism), \
             {checked} aligned triples, {failed} failures, {:.1?} (limit {RESIDUAL_LIMIT:?})",
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let bases = corpus::small_categories_up_to_iso(2, 3, 12);
    let (mut checked, mut mismatches) = (0u64, 0u64);
    for c in bases {
        let b = Arc::new(c);
        let q = Quantaloid::free(b.clone()).expect("small base");
        let n = b.len();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let composes_into = |g: usize, f: usize, w: usize| w >> b.compose(s, t, u, g, f) & 1 == 1;
                    for w in 0..q.hom_size(s, u) {
                        for f in 0..q.hom_size(s, t) {
                            // {g | g . f' ∈ w for all f' ∈ f}
                            let direct = (0..b.hom_size(t, u))
                                .filter(|&g| (0..b.hom_size(s, t)).filter(|i| f >> i & 1 == 1).all(|fi| composes_into(g, fi, w)))
                                .fold(0, |m, g| m | 1 << g);
                            let formula = q.left_residual(s, t, u, w, f);
                            let by_join = q.left_residual_by_join(s, t, u, w, f);
                            checked += 1;
                            if direct != formula || formula != by_join {
                                mismatches += 1;
                            }
                        }
                        for g in 0..q.hom_size(t, u) {
                            // {f | g' . f ∈ w for all g' ∈ g}
                            let direct = (0..b.hom_size(s, t))
                                .filter(|&f| (0..b.hom_size(t, u)).filter(|i| g >> i & 1 == 1).all(|gi| composes_into(gi, f, w)))
                                .fold(0, |m, f| m | 1 << f);
                            let formula = q.right_residual(s, t, u, g, w);
                            let by_join = q.right_residual_by_join(s, t, u, g, w);
                            checked += 1;
                            if direct != formula || formula != by_join {
                                mismatches += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{checked} residuals compared three ways, {mismatches} mismatches"),
    )
}

fn fixture_file_categories() -> Vec<(String, Arc<QCategory>)> {
    let files = [
        include_str!("../../../fixtures/diamond.qk"),
        include_str!("../../../fixtures/antichain2.qk"),
        include_str!("../../../fixtures/fin_metric.qk"),
    ];
    let mut out = Vec::new();
    for text in files {
        let inst = parse_instance(text).expect("fixture parses");
        for (name, item) in inst.items() {
            if let Item::QCategory { cat, .. } = item {
                out.push((name.clone(), cat.clone()));
            }
        }
    }
    out
}

fn fixture_categories() -> Vec<(String, Arc<QCategory>)> {
    let mut out = fixture_file_categories();
    out.push(("benzene".into(), Arc::new(fixtures::poset_category(&fixtures::benzene()))));
    out.push(("comma_bmono".into(), Arc::new(fixtures::comma_bmono().encode())));
    for (name, q) in fixture_quantaloids() {
        out.push((format!("{name} itself"), Arc::new(quantale_self_category(Arc::new(q)).expect("quantale"))));
    }
    out.push(("arrow".into(), Arc::new(fixtures::poset_category(&Poset::chain(2)))));
    out
}

fn criterion_3() -> Outcome {
    let caps = Caps::default();
    let (mut checked, mut mismatches, mut categories, mut skipped) = (0, 0, 0, Vec::new());
    for (name, e) in fixture_categories() {
        let all = enumerate_presheaves(&e, None, &caps).expect("small");
        if all.len() > 500 {
            skipped.push(name);
            continue;
        }
        categories += 1;
        for x in 0..e.len() {
            let yx = yoneda(&e, x);
            for phi in &all {
                checked += 1;
                if hom_pe(&e, &yx, phi) != phi.comps[x] {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{categories} fixture categories, {checked} pairs, {mismatches} mismatches, skipped {skipped:?}"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let corpus = corpus::qcategory_corpus(TOTALITY_SEED, 500);
    let (mut total, mut disagreements, mut errors) = (0, 0, 0);
    for e in &corpus {
        match verify_totality_equivalences(e, &caps) {
            Ok(r) => {
                if r.conditions.iter().any(|c| c.value != r.conditions[0].value) {
                    disagreements += 1;
                }
                total += usize::from(r.value());
            }
            Err(qk_core::Error::Inconsistent(_)) => disagreements += 1,
            Err(_) => errors += 1,
        }
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements == 0 && errors == 0 && elapsed < TOTALITY_LIMIT,
        format!(
            "{} categories ({total} total), {disagreements} disagreements, {errors} errors, {:.1?} (limit {TOTALITY_LIMIT:?})",
            corpus.len(),
            elapsed
        ),
    )
}

fn criterion_5() -> Outcome {
    let caps = Caps::default();
    let corpus = corpus::concrete_corpus(CONCRETE_SEED, 200);
    let (mut topological, mut disagreements) = (0, 0);
    for c in &corpus {
        let enc = c.encode();
        let total = is_total(&enc, &caps).expect("small").value;
        let all_lift = enumerate_presheaves(&enc, None, &caps)
            .expect("small")
            .into_iter()
            .all(|phi| {
                let sink = StructuredSink {
                    target: phi.extent,
                    comps: phi.comps,
                };
                final_lift_direct(c, &sink).expect("fits").is_some()
            });
        let fibrewise = is_fibred(c).expect("small").value
            && is_cofibred(c).expect("small").value
            && is_order_complete(&enc).value;
        let flag = is_topological(c, &caps).map(|f| f.value);
        if total != all_lift || total != fibrewise || flag.as_ref().ok() != Some(&total) {
            disagreements += 1;
        }
        topological += usize::from(total);
    }
    outcome(
        disagreements == 0,
        format!("{} concrete categories ({topological} topological), {disagreements} disagreements", corpus.len()),
    )
}

/// Subsets `A` with `A = lower(upper(A))`, by brute force.
fn brute_force_cuts(p: &Poset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let upper: Vec<bool> = (0..n).map(|y| (0..n).all(|x| !a[x] || p.leq(x, y))).collect();
        let lower: Vec<bool> = (0..n).map(|x| (0..n).all(|y| !upper[y] || p.leq(x, y))).collect();
        if lower == a {
            out.push(a);
        }
    }
    out
}

fn check_macneille(p: &Poset, caps: &Caps, isbells: &mut Vec<Isbell>) -> bool {
    let e = Arc::new(fixtures::poset_category(p));
    let Ok(isb) = isbell_category(&QDistributor::identity(e.clone()), caps) else {
        return false;
    };
    let top = e.base().top(0, 0);
    let as_set = |f: &Presheaf| -> Vec<bool> { f.comps.iter().map(|&v| v == top).collect() };
    let mine: Vec<Vec<bool>> = isb.fixed_points().iter().map(as_set).collect();
    let cuts = brute_force_cuts(p);
    let mut sorted = mine.clone();
    sorted.sort();
    let mut expected = cuts.clone();
    expected.sort();
    if sorted != expected {
        return false;
    }
    let n = mine.len();
    // order is inclusion of cuts
    let order_ok = (0..n * n).all(|i| {
        let (a, b) = (&mine[i / n], &mine[i % n]);
        isb.category().le(i / n, i % n) == a.iter().zip(b).all(|(x, y)| !x || *y)
    });
    // the embedding sends x to its principal downset
    let embedding_ok = (0..p.len()).all(|x| {
        let principal: Vec<bool> = (0..p.len()).map(|y| p.leq(y, x)).collect();
        isb.reflect(&yoneda(&e, x)).is_ok_and(|i| mine[i] == principal)
    });
    let library = macneille_completion(p, caps).is_ok_and(|m| m.lattice.len() == n);
    isbells.push(isb);
    order_ok && embedding_ok && library
}

fn criterion_6(isbells: &mut Vec<Isbell>) -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let mut posets = vec![fixtures::antichain2(), fixtures::diamond_poset(), fixtures::benzene()];
    posets.extend(corpus::poset_corpus(POSET_SEED, 150, 7));
    let antichain_size = brute_force_cuts(&fixtures::antichain2()).len();
    let mismatches = posets.iter().filter(|p| !check_macneille(p, &caps, isbells)).count();
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && antichain_size == 4 && elapsed < MACNEILLE_LIMIT,
        format!(
            "{} orders of size <= 7, {mismatches} mismatches, 2-antichain completes to {antichain_size} elements, {:.1?} (limit {MACNEILLE_LIMIT:?})",
            posets.len(),
            elapsed
        ),
    )
}

fn check_reconstruction(l: &FiniteLattice, caps: &Caps, isbells: &mut Vec<Isbell>) -> bool {
    let n = l.len();
    let lower_covers = |x: usize| {
        (0..n)
            .filter(|&y| y != x && l.leq(y, x) && !(0..n).any(|z| z != x && z != y && l.leq(y, z) && l.leq(z, x)))
            .count()
    };
    let js: Vec<usize> = (0..n).filter(|&x| lower_covers(x) == 1).collect();
    let Ok(r) = lattice_reconstruction(l, caps) else {
        return false;
    };
    if r.join_irreducibles != js {
        return false;
    }
    let c = r.isbell.category().clone();
    let top = c.base().top(0, 0);
    let downset_ok = (0..n).all(|x| {
        let comps: Vec<bool> = r.isbell.fixed_points()[r.map[x]].comps.iter().map(|&v| v == top).collect();
        comps == js.iter().map(|&j| l.leq(j, x)).collect::<Vec<_>>()
    });
    let mut image = r.map.clone();
    image.sort();
    image.dedup();
    let bijective = image.len() == n && c.len() == n;
    let order_ok = (0..n * n).all(|i| l.leq(i / n, i % n) == c.le(r.map[i / n], r.map[i % n]));
    isbells.push(r.isbell);
    downset_ok && bijective && order_ok
}

fn criterion_7(isbells: &mut Vec<Isbell>) -> Outcome {
    let caps = Caps::default();
    let mut lattices = vec![FiniteLattice::from_poset(fixtures::diamond_poset()).expect("lattice")];
    lattices.extend(corpus::lattice_corpus(LATTICE_SEED, 150, 8));
    let mismatches = lattices.iter().filter(|l| !check_reconstruction(l, &caps, isbells)).count();
    outcome(
        mismatches == 0,
        format!("{} lattices of size <= 8, {mismatches} mismatches", lattices.len()),
    )
}

fn criterion_8() -> Outcome {
    let caps = Caps::default();
    let c = fixtures::comma_bmono();
    let cofibred = is_cofibred(&c).map(|f| f.value);
    let tensored = is_tensored(&c.encode()).value;
    let top = is_topological(&c, &caps);
    let empty = StructuredSink::empty(&c, 0);
    let empty_lifts = final_lift(&c, &empty).map(|l| l.is_some());
    let witness = top.as_ref().ok().and_then(|f| f.witness.clone());
    let pass = cofibred.as_ref().ok() == Some(&true)
        && !tensored
        && top.as_ref().is_ok_and(|f| !f.value)
        && witness.as_deref() == Some("[1={},e={}]")
        && empty_lifts.as_ref().ok() == Some(&false);
    outcome(
        pass,
        format!(
            "cofibred={:?}, tensored={tensored}, topological={:?}, witness={witness:?}, empty sink lifts={:?}",
            cofibred.ok(),
            top.ok().map(|f| f.value),
            empty_lifts.ok()
        ),
    )
}

fn criterion_9() -> Outcome {
    let caps = Caps::default();
    let cases = corpus::extension_corpus(EXTENSION_SEED, 100, &caps);
    let mut bad = 0;
    for case in &cases {
        let ok = injective_extension(&case.f, &case.g, &caps).is_ok_and(|h| {
            let e = case.f.target();
            h.validate().is_ok() && (0..case.f.source().len()).all(|x| e.iso(h.apply(case.g.apply(x)), case.f.apply(x)))
        });
        bad += usize::from(!ok);
    }
    let non_total = corpus::non_total_corpus(EXTENSION_SEED ^ 1, 20, &caps);
    let solvable = non_total
        .iter()
        .filter(|(e, phi)| yoneda_extension_problem(e, phi).map(|(_, _, found)| found).unwrap_or(true))
        .count();
    outcome(
        bad == 0 && solvable == 0,
        format!(
            "{} extensions, {bad} failures; {} non-total categories, {solvable} with a solvable witness problem",
            cases.len(),
            non_total.len()
        ),
    )
}

fn check_isbell(isb: &Isbell, caps: &Caps) -> bool {
    let c = isb.category();
    let e = isb.distributor().source();
    let q = e.base();
    let total = is_total(c, caps).is_ok_and(|f| f.value);
    let Ok(weights) = enumerate_presheaves(e, None, caps) else {
        return false;
    };
    let leq = |a: &Presheaf, b: &Presheaf| {
        a.extent == b.extent && (0..e.len()).all(|x| q.leq(e.extent(x), a.extent, a.comps[x], b.comps[x]))
    };
    let closures: Vec<Presheaf> = weights.iter().map(|w| isb.closure(w).expect("typed")).collect();
    let extensive = weights.iter().zip(&closures).all(|(w, c)| leq(w, c));
    let idempotent = closures.iter().all(|c| isb.closure(c).is_ok_and(|cc| &cc == c));
    let monotone = (0..weights.len()).all(|i| {
        (0..weights.len()).all(|j| !leq(&weights[i], &weights[j]) || leq(&closures[i], &closures[j]))
    });
    let witnesses = isbell_witnesses(isb, caps).is_ok_and(|w| w.factorizes && w.dense && w.codense);
    total && extensive && idempotent && monotone && witnesses
}

fn criterion_10(mut isbells: Vec<Isbell>) -> Outcome {
    let caps = Caps::default();
    for phi in corpus::distributor_corpus(DISTRIBUTOR_SEED, 100) {
        if let Ok(isb) = isbell_category(&phi, &caps) {
            isbells.push(isb);
        }
    }
    let failures = isbells.iter().filter(|i| !check_isbell(i, &caps)).count();
    outcome(
        failures == 0,
        format!("{} Isbell categories, {failures} failures", isbells.len()),
    )
}

fn main() {
    let mut isbells = Vec::new();
    let names = [
        "residual adjunction",
        "free residual formulas",
        "Yoneda lemma",
        "eight totality conditions agree",
        "topological iff total",
        "MacNeille via Isbell",
        "lattice reconstruction",
        "comma category counterexample",
        "injectivity of total categories",
        "Isbell fixed points",
    ];
    let mut failed = 0;
    for (i, name) in names.iter().enumerate() {
        let start = Instant::now();
        let o = match i {
            0 => criterion_1(),
            1 => criterion_2(),
            2 => criterion_3(),
            3 => criterion_4(),
            4 => criterion_5(),
            5 => criterion_6(&mut isbells),
            6 => criterion_7(&mut isbells),
            7 => criterion_8(),
            8 => criterion_9(),
            _ => criterion_10(std::mem::take(&mut isbells)),
        };
        failed += usize::from(!o.pass);
        println!(
            "{} criterion {:>2} {name}: {} [{:.2?}]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed()
        );
    }
    println!("{} of {} criteria passed", names.len() - failed, names.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
