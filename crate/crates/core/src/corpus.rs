//! Seeded generators of small instances: enriched categories, orders,
//! lattices, base categories and concrete categories.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::category::FiniteCategory;
use crate::concrete::ConcreteCategory;
use crate::enriched::{QCategory, QDistributor, QFunctor};
use crate::fixtures;
use crate::lattice::{dedekind_macneille, FiniteLattice, Poset};
use crate::presheaf::{build_pe, Presheaf};
use crate::quantaloid::Quantaloid;
use crate::structure::suprema_table;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn object_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Joins composites into the homs until the composition inequality
/// holds, and identities into the diagonal.
pub fn saturate(q: &Quantaloid, extent: &[usize], hom: &mut [usize]) {
    let n = extent.len();
    for x in 0..n {
        let s = extent[x];
        hom[x * n + x] = q.join(s, s, hom[x * n + x], q.identity(s));
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (s, t, u) = (extent[x], extent[y], extent[z]);
                    let c = q.compose(s, t, u, hom[y * n + z], hom[x * n + y]);
                    let j = q.join(s, u, hom[x * n + z], c);
                    if j != hom[x * n + z] {
                        hom[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// A random `Q`-category on `n` objects: random homs (bottom about half
/// the time), then saturated.
pub fn random_qcategory(rng: &mut impl Rng, q: &Arc<Quantaloid>, n: usize) -> QCategory {
    let extent: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q.len())).collect();
    let mut hom: Vec<usize> = (0..n * n)
        .map(|i| {
            let (s, t) = (extent[i / n], extent[i % n]);
            if rng.gen_bool(0.5) {
                q.bottom(s, t)
            } else {
                rng.gen_range(0..q.hom_size(s, t))
            }
        })
        .collect();
    saturate(q, &extent, &mut hom);
    QCategory::new(q.clone(), object_names(n), extent, hom).expect("saturated homs form a category")
}

/// `count` categories with 1 to 4 objects, alternating between the
/// two-element and the truncated-metric quantale.
pub fn qcategory_corpus(seed: u64, count: usize) -> Vec<QCategory> {
    let mut r = rng(seed);
    let bases = [Arc::new(fixtures::two()), Arc::new(fixtures::fin_metric())];
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=4);
            random_qcategory(&mut r, &bases[i % 2], n)
        })
        .collect()
}

/// A random order on `n` elements: random relations between earlier and
/// later elements, closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Poset {
    let density = rng.gen_range(0.1..0.6);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                covers.push((a, b));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let covers: Vec<(usize, usize)> = covers.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    let names = (0..n).map(|i| format!("p{i}")).collect();
    Poset::from_covers(names, &covers).expect("relations from a linear order are acyclic")
}

pub fn poset_corpus(seed: u64, count: usize, max: usize) -> Vec<Poset> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max);
            random_poset(&mut r, n)
        })
        .collect()
}

/// Random lattices with at most `max` elements, obtained as completions
/// of random orders.
pub fn lattice_corpus(seed: u64, count: usize, max: usize) -> Vec<FiniteLattice> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(1..=max);
        let p = random_poset(&mut r, n);
        let l = dedekind_macneille(&p).lattice;
        if l.len() <= max {
            out.push(l);
        }
    }
    out
}

/// Every category with at most `max_objects` objects, at most `max_hom`
/// morphisms per hom-set and at most `max_total` morphisms overall,
/// including isomorphic copies. Identities come first in each endo-hom.
pub fn small_categories(max_objects: usize, max_hom: usize, max_total: usize) -> Vec<FiniteCategory> {
    enumerate_categories(max_objects, (max_hom, max_total), false)
}

/// Like [`small_categories`], with exactly one category per isomorphism
/// class.
pub fn small_categories_up_to_iso(
    max_objects: usize,
    max_hom: usize,
    max_total: usize,
) -> Vec<FiniteCategory> {
    enumerate_categories(max_objects, (max_hom, max_total), true)
}

fn enumerate_categories(max_objects: usize, bounds: (usize, usize), up_to_iso: bool) -> Vec<FiniteCategory> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        let mut sizes = vec![0; n * n];
        hom_sizes(n, bounds, up_to_iso, 0, &mut sizes, &mut out);
    }
    out
}

fn hom_sizes(
    n: usize,
    bounds: (usize, usize),
    up_to_iso: bool,
    k: usize,
    sizes: &mut Vec<usize>,
    out: &mut Vec<FiniteCategory>,
) {
    if k == n * n {
        let relabelings = relabelings(n, sizes);
        // a shape that some object permutation makes smaller is covered there
        if up_to_iso && relabelings.iter().any(|r| r.smaller_shape) {
            return;
        }
        tables(n, sizes, up_to_iso.then_some(&relabelings), out);
        return;
    }
    let min = usize::from(k / n == k % n);
    let used: usize = sizes[..k].iter().sum();
    let rest_min = (k + 1..n * n).filter(|&j| j / n == j % n).count();
    let max = bounds.0.min(bounds.1.saturating_sub(used + rest_min));
    for s in min..=max {
        sizes[k] = s;
        hom_sizes(n, bounds, up_to_iso, k + 1, sizes, out);
    }
    sizes[k] = 0;
}

const UNSET: u8 = u8::MAX;

struct Tables<'a> {
    n: usize,
    sizes: &'a [usize],
    slots: Vec<(usize, usize, usize, usize, usize)>,
    // composites of all (s, t, u, g, f), identities filled in, UNSET while open
    table: Vec<u8>,
    offset: Vec<usize>,
    // position in `table` of each slot
    cell: Vec<usize>,
}

impl Tables<'_> {
    fn new<'a>(n: usize, sizes: &'a [usize], slots: Vec<(usize, usize, usize, usize, usize)>) -> Tables<'a> {
        let mut offset = Vec::with_capacity(n * n * n);
        let mut len = 0;
        for i in 0..n * n * n {
            let (s, t, u) = (i / (n * n), i / n % n, i % n);
            offset.push(len);
            len += sizes[t * n + u] * sizes[s * n + t];
        }
        let mut table = vec![UNSET; len];
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let base = offset[(s * n + t) * n + u];
                    let fs = sizes[s * n + t];
                    for g in 0..sizes[t * n + u] {
                        for f in 0..fs {
                            if t == u && g == 0 {
                                table[base + g * fs + f] = f as u8;
                            } else if s == t && f == 0 {
                                table[base + g * fs + f] = g as u8;
                            }
                        }
                    }
                }
            }
        }
        let cell = slots
            .iter()
            .map(|&(s, t, u, g, f)| offset[(s * n + t) * n + u] + g * sizes[s * n + t] + f)
            .collect();
        Tables {
            n,
            sizes,
            slots,
            table,
            offset,
            cell,
        }
    }

    #[inline]
    fn raw(&self, s: usize, t: usize, u: usize, g: usize, f: usize) -> u8 {
        let n = self.n;
        self.table[self.offset[(s * n + t) * n + u] + g * self.sizes[s * n + t] + f]
    }

    fn lookup(&self, s: usize, t: usize, u: usize, g: usize, f: usize) -> Option<usize> {
        match self.raw(s, t, u, g, f) {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    /// Whether every fully determined associativity instance in which
    /// slot `k` takes part holds. An instance `(h, g, f)` reads the
    /// composites `g . f`, `h . (g . f)`, `h . g` and `(h . g) . f`.
    fn consistent_at(&self, k: usize) -> bool {
        let n = self.n;
        let (s, t, u, a, b) = self.slots[k];
        let holds = |w: usize, x: usize, y: usize, z: usize, h: usize, g: usize, f: usize| {
            let gf = self.raw(w, x, y, g, f);
            let hg = self.raw(x, y, z, h, g);
            if gf == UNSET || hg == UNSET {
                return true;
            }
            let l = self.raw(w, y, z, h, gf as usize);
            let r = self.raw(w, x, z, hg as usize, f);
            l == UNSET || r == UNSET || l == r
        };
        let size = |x: usize, y: usize| self.sizes[x * n + y];
        for v in 0..n {
            // slot k as g . f
            if !(0..size(u, v)).all(|h| holds(s, t, u, v, h, a, b)) {
                return false;
            }
            // slot k as h . g
            if !(0..size(v, s)).all(|f| holds(v, s, t, u, a, b, f)) {
                return false;
            }
        }
        for x in 0..n {
            // slot k as h . (g . f), where g . f = b
            for g in 0..size(x, t) {
                for f in 0..size(s, x) {
                    if self.raw(s, x, t, g, f) as usize == b && !holds(s, x, t, u, a, g, f) {
                        return false;
                    }
                }
            }
            // slot k as (h . g) . f, where h . g = a
            for h in 0..size(x, u) {
                for g in 0..size(t, x) {
                    if self.raw(t, x, u, h, g) as usize == a && !holds(s, t, x, u, h, g, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, k: usize, emit: &mut dyn FnMut(&Self)) {
        if k == self.slots.len() {
            emit(self);
            return;
        }
        let (s, _, u, _, _) = self.slots[k];
        let cell = self.cell[k];
        for v in 0..self.sizes[s * self.n + u] {
            self.table[cell] = v as u8;
            if self.consistent_at(k) {
                self.search(k + 1, emit);
            }
        }
        self.table[cell] = UNSET;
    }
}

/// An object permutation with, per hom-set, a permutation of its
/// morphisms fixing identities. `map[s * n + t][f]` is the new index of
/// `f: s → t` in `B(pi s, pi t)`.
struct Relabeling {
    #[cfg_attr(not(test), allow(dead_code))]
    pi: Vec<usize>,
    inv_pi: Vec<usize>,
    map: Vec<Vec<usize>>,
    inv: Vec<Vec<usize>>,
    smaller_shape: bool,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn relabelings(n: usize, sizes: &[usize]) -> Vec<Relabeling> {
    let mut out = Vec::new();
    for pi in permutations(&(0..n).collect::<Vec<_>>()) {
        let permuted: Vec<usize> = (0..n * n)
            .map(|i| {
                let (s, t) = (i / n, i % n);
                let inv = |x: usize| pi.iter().position(|&p| p == x).unwrap();
                sizes[inv(s) * n + inv(t)]
            })
            .collect();
        if permuted != sizes {
            out.push(Relabeling {
                smaller_shape: permuted.as_slice() < sizes,
                pi,
                inv_pi: Vec::new(),
                map: Vec::new(),
                inv: Vec::new(),
            });
            continue;
        }
        let inv_pi: Vec<usize> = (0..n).map(|x| pi.iter().position(|&p| p == x).unwrap()).collect();
        // per-hom permutations, combined by an odometer over the hom-sets
        let per_hom: Vec<Vec<Vec<usize>>> = (0..n * n)
            .map(|i| {
                let fixed = usize::from(i / n == i % n);
                permutations(&(fixed..sizes[i]).collect::<Vec<_>>())
                    .into_iter()
                    .map(|p| (0..fixed).chain(p).collect())
                    .collect()
            })
            .collect();
        let mut choice = vec![0; n * n];
        loop {
            let map: Vec<Vec<usize>> = (0..n * n).map(|i| per_hom[i][choice[i]].clone()).collect();
            let inv = map
                .iter()
                .map(|m| {
                    let mut v = vec![0; m.len()];
                    for (a, &b) in m.iter().enumerate() {
                        v[b] = a;
                    }
                    v
                })
                .collect();
            out.push(Relabeling {
                pi: pi.clone(),
                inv_pi: inv_pi.clone(),
                map,
                inv,
                smaller_shape: false,
            });
            let mut i = 0;
            while i < n * n {
                choice[i] += 1;
                if choice[i] < per_hom[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n * n {
                break;
            }
        }
    }
    out
}

impl Tables<'_> {
    /// The composition table, read in a fixed order, is not
    /// lexicographically larger than its image under `r`.
    fn not_improved_by(&self, r: &Relabeling) -> bool {
        if r.map.is_empty() {
            return true;
        }
        let n = self.n;
        for s1 in 0..n {
            for t1 in 0..n {
                for u1 in 0..n {
                    let (s, t, u) = (r.inv_pi[s1], r.inv_pi[t1], r.inv_pi[u1]);
                    for g1 in 0..self.sizes[t1 * n + u1] {
                        for f1 in 0..self.sizes[s1 * n + t1] {
                            let (g, f) = (r.inv[t * n + u][g1], r.inv[s * n + t][f1]);
                            let old = self.lookup(s, t, u, g, f).expect("complete");
                            let image = r.map[s * n + u][old];
                            let own = self.lookup(s1, t1, u1, g1, f1).expect("complete");
                            match image.cmp(&own) {
                                std::cmp::Ordering::Less => return false,
                                std::cmp::Ordering::Greater => return true,
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

fn tables(n: usize, sizes: &[usize], relabel: Option<&[Relabeling]>, out: &mut Vec<FiniteCategory>) {
    let objects: Vec<String> = if n == 1 {
        vec!["*".into()]
    } else {
        (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
    };
    let mut letters = "fghkmpqrsuvwxyz".chars();
    let homs: Vec<Vec<String>> = (0..n * n)
        .map(|i| {
            (0..sizes[i])
                .map(|j| {
                    if i / n == i % n && j == 0 {
                        if n == 1 {
                            "1".to_string()
                        } else {
                            format!("1{}", objects[i / n])
                        }
                    } else {
                        letters.next().expect("few morphisms").to_string()
                    }
                })
                .collect()
        })
        .collect();
    // free slots: (s, t, u, g, f) with neither g nor f an identity
    let mut slots = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                for g in 0..sizes[t * n + u] {
                    for f in 0..sizes[s * n + t] {
                        if (t == u && g == 0) || (s == t && f == 0) {
                            continue;
                        }
                        if sizes[s * n + u] == 0 {
                            return;
                        }
                        slots.push((s, t, u, g, f));
                    }
                }
            }
        }
    }
    slots.sort_by_key(|&(s, t, u, g, f)| (t, s, u, g, f));
    let mut tables = Tables::new(n, sizes, slots);
    tables.search(0, &mut |t| {
        if relabel.is_some_and(|rs| !rs.iter().all(|r| t.not_improved_by(r))) {
            return;
        }
        let c = FiniteCategory::from_fn(objects.clone(), homs.clone(), vec![0; n], |s, a, u, g, f| {
            t.lookup(s, a, u, g, f).expect("complete assignment")
        })
        .expect("associative tables with identities form a category");
        out.push(c);
    });
}

/// A random concrete category over the free quantaloid `q` with `n`
/// objects: random morphism sets closed under composition.
pub fn random_concrete(rng: &mut impl Rng, q: &Arc<Quantaloid>, n: usize) -> ConcreteCategory {
    let b = q.len();
    let extent: Vec<usize> = (0..n).map(|_| rng.gen_range(0..b)).collect();
    let density = rng.gen_range(0.2..0.8);
    let mut morph: Vec<usize> = (0..n * n)
        .map(|i| {
            let size = q.hom_size(extent[i / n], extent[i % n]);
            let bits = size.trailing_zeros();
            (0..bits).filter(|_| rng.gen_bool(density)).fold(0, |m, j| m | 1 << j)
        })
        .collect();
    saturate(q, &extent, &mut morph);
    ConcreteCategory::with_quantaloid(q.clone(), object_names(n), extent, morph)
        .expect("saturated morphism sets form a concrete category")
}

/// Concrete categories over random bases with at most two objects and
/// four morphisms, with 1 to 3 objects each.
pub fn concrete_corpus(seed: u64, count: usize) -> Vec<ConcreteCategory> {
    let mut r = rng(seed);
    let bases: Vec<Arc<Quantaloid>> = small_categories(2, 4, 4)
        .into_iter()
        .map(|c| Arc::new(Quantaloid::free(Arc::new(c)).expect("small base")))
        .collect();
    (0..count)
        .map(|_| {
            let q = bases.choose(&mut r).expect("bases exist").clone();
            let n = r.gen_range(1..=3);
            random_concrete(&mut r, &q, n)
        })
        .collect()
}

/// A random functor: random object maps respecting extents until one is
/// a functor, else `None`.
pub fn random_functor(
    rng: &mut impl Rng,
    source: &Arc<QCategory>,
    target: &Arc<QCategory>,
    tries: usize,
) -> Option<QFunctor> {
    let options: Vec<Vec<usize>> = (0..source.len())
        .map(|x| (0..target.len()).filter(|&y| target.extent(y) == source.extent(x)).collect())
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    (0..tries).find_map(|_| {
        let map = options.iter().map(|o| *o.choose(rng).unwrap()).collect();
        QFunctor::new(source.clone(), target.clone(), map).ok()
    })
}

/// A random distributor `E ⇸ D`: random entries, then closed under the
/// actions of both homs.
pub fn random_distributor(rng: &mut impl Rng, e: &Arc<QCategory>, d: &Arc<QCategory>) -> QDistributor {
    let q = e.base();
    let (n, m) = (e.len(), d.len());
    let mut mat: Vec<usize> = (0..n * m)
        .map(|i| {
            let (s, t) = (e.extent(i / m), d.extent(i % m));
            if rng.gen_bool(0.5) {
                q.bottom(s, t)
            } else {
                rng.gen_range(0..q.hom_size(s, t))
            }
        })
        .collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..m {
                let v = mat[x * m + y];
                for y1 in 0..m {
                    let c = q.compose(e.extent(x), d.extent(y), d.extent(y1), d.hom(y, y1), v);
                    let j = q.join(e.extent(x), d.extent(y1), mat[x * m + y1], c);
                    changed |= j != mat[x * m + y1];
                    mat[x * m + y1] = j;
                }
                for x1 in 0..n {
                    let c = q.compose(e.extent(x1), e.extent(x), d.extent(y), v, e.hom(x1, x));
                    let j = q.join(e.extent(x1), d.extent(y), mat[x1 * m + y], c);
                    changed |= j != mat[x1 * m + y];
                    mat[x1 * m + y] = j;
                }
            }
        }
        if !changed {
            break;
        }
    }
    QDistributor::new(e.clone(), d.clone(), mat).expect("closed matrices are distributors")
}

/// Distributors between random categories with 1 to 3 objects over the
/// two-element and the truncated-metric quantale.
pub fn distributor_corpus(seed: u64, count: usize) -> Vec<QDistributor> {
    let mut r = rng(seed);
    let bases = [Arc::new(fixtures::two()), Arc::new(fixtures::fin_metric())];
    (0..count)
        .map(|i| {
            let q = &bases[i % 2];
            let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
            let e = Arc::new(random_qcategory(&mut r, q, a));
            let d = Arc::new(random_qcategory(&mut r, q, b));
            random_distributor(&mut r, &e, &d)
        })
        .collect()
}

/// An extension problem: `F: C → E` with `E` total and `G: C → D` a full
/// inclusion.
#[derive(Debug, Clone)]
pub struct ExtensionCase {
    pub f: QFunctor,
    pub g: QFunctor,
}

/// Extension problems where `E` is either a random lattice (as a
/// two-valued category) or the presheaf category of a small metric-like
/// category.
pub fn extension_corpus(seed: u64, count: usize, caps: &Caps) -> Vec<ExtensionCase> {
    let mut r = rng(seed);
    let two = Arc::new(fixtures::two());
    let metric = Arc::new(fixtures::fin_metric());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (q, e) = if out.len() % 2 == 0 {
            let n = r.gen_range(1..=5);
            let l = dedekind_macneille(&random_poset(&mut r, n)).lattice;
            let e = QCategory::from_poset(two.clone(), l.poset()).expect("orders are categories");
            (two.clone(), Arc::new(e))
        } else {
            let n = r.gen_range(1..=2);
            let small = Arc::new(random_qcategory(&mut r, &metric, n));
            let pe = build_pe(small, caps).expect("small presheaf category");
            (metric.clone(), pe.category().clone())
        };
        let dn = r.gen_range(1..=4);
        let d = Arc::new(random_qcategory(&mut r, &q, dn));
        let mut keep: Vec<usize> = (0..dn).filter(|_| r.gen_bool(0.5)).collect();
        if keep.is_empty() {
            keep.push(r.gen_range(0..dn));
        }
        let c = Arc::new(d.full_subcategory(&keep));
        let g = QFunctor::new(c.clone(), d, keep).expect("full inclusions are functors");
        if let Some(f) = random_functor(&mut r, &c, &e, 200) {
            out.push(ExtensionCase { f, g });
        }
    }
    out
}

/// Random categories that are not total, each with a presheaf lacking a
/// supremum.
pub fn non_total_corpus(seed: u64, count: usize, caps: &Caps) -> Vec<(Arc<QCategory>, Presheaf)> {
    let mut r = rng(seed);
    let bases = [Arc::new(fixtures::two()), Arc::new(fixtures::fin_metric())];
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        i += 1;
        let n = r.gen_range(1..=3);
        let e = Arc::new(random_qcategory(&mut r, &bases[i % 2], n));
        let table = suprema_table(&e, caps).expect("small category");
        if let Some((phi, _)) = table.into_iter().find(|(_, s)| s.is_none()) {
            out.push((e, phi));
        }
    }
    out
}
