use std::path::Path;
use std::sync::Arc;

use qk_core::caps::Caps;
use qk_core::concrete::{check_initial_source, check_topological_duality, final_lift_direct, normalize_sink};
use qk_core::dot::{hasse_dot, hom_table, qcategory_dot};
use qk_core::enriched::{QCategory, QDistributor};
use qk_core::fixtures::poset_category;
use qk_core::instance::{parse_instance, Instance, Item};
use qk_core::isbell::{isbell_category, isbell_witnesses, lattice_reconstruction, macneille_completion};
use qk_core::lattice::{dedekind_macneille, FiniteLattice, Poset};
use qk_core::presheaf::{presheaf_name, supremum, yoneda, IsoClass};
use qk_core::structure::{injective_extension, suprema_table, verify_totality_equivalences};
use qk_core::Error;

use crate::report::{violation_lines, Failure, Report};
use crate::{Mode, Property};

type Outcome = Result<Report, Failure>;

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn target<'a>(inst: &'a Instance, name: &str) -> Result<&'a Item, Failure> {
    if inst.get(name).is_none() && !inst.failures().iter().any(|f| f.name == name) {
        return Err(Failure::input(format!("no block named `{name}`")));
    }
    Ok(inst.item(name)?)
}

fn wrong_kind(name: &str, item: &Item, wanted: &str) -> Failure {
    Failure::input(format!("`{name}` is a {}, expected {wanted}", item.kind().keyword()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn class_name(e: &QCategory, c: &IsoClass) -> String {
    let names: Vec<&str> = c.members.iter().map(|&x| e.name(x)).collect();
    names.join(" ≅ ")
}

/// Names that survive a round trip through the instance format.
fn clean(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_whitespace() || "[]=,#".contains(c) { '_' } else { c })
        .collect()
}

pub fn validate(path: &Path) -> Outcome {
    let inst = load(path)?;
    let mut r = Report::new();
    r.line("blocks", inst.items().len() + inst.failures().len());
    r.line("valid", inst.items().len());
    for f in inst.failures() {
        let at = format!("{} ({}, line {})", f.name, f.kind.keyword(), f.line);
        if f.dependent {
            r.line(&at, format!("skipped: {}", f.error));
        } else {
            for v in violation_lines(&f.error) {
                r.line(&at, v);
            }
        }
        r.fails();
    }
    Ok(r)
}

fn as_qcategory(inst: &Instance, name: &str) -> Result<Arc<QCategory>, Failure> {
    match target(inst, name)? {
        Item::QCategory { cat, .. } => Ok(cat.clone()),
        Item::Concrete { cat, .. } => Ok(Arc::new(cat.encode())),
        Item::Lattice(l) => Ok(Arc::new(poset_category(l.poset()))),
        Item::Poset(p) => Ok(Arc::new(poset_category(p))),
        other => Err(wrong_kind(name, other, "a category, lattice or poset")),
    }
}

pub fn check(path: &Path, name: &str, property: Property, caps: &Caps) -> Outcome {
    let inst = load(path)?;
    let mut r = Report::new();
    r.line("target", name);
    match property {
        Property::Total => check_total(&*as_qcategory(&inst, name)?, caps, &mut r)?,
        Property::Topological => check_topological(&inst, name, caps, &mut r)?,
        Property::All => match target(&inst, name)? {
            Item::Concrete { cat, .. } => {
                let d = check_topological_duality(cat, caps)?;
                for flag in d.flags() {
                    r.line(flag.name, flag.value);
                }
                r.line("consistent", "yes");
                if !d.value() {
                    r.fails();
                }
            }
            _ => check_all(&*as_qcategory(&inst, name)?, caps, &mut r)?,
        },
    }
    Ok(r)
}

fn check_total(e: &QCategory, caps: &Caps, r: &mut Report) -> Result<(), Failure> {
    let table = suprema_table(e, caps)?;
    let missing: Vec<_> = table.iter().filter(|(_, s)| s.is_none()).collect();
    match missing.first() {
        None => r.line("total", format!("true ({} presheaves, all suprema found)", table.len())),
        Some((phi, _)) => {
            r.line(
                "total",
                format!(
                    "false ({} presheaves, {} without supremum); witness: {}",
                    table.len(),
                    missing.len(),
                    presheaf_name(e, phi)
                ),
            );
            r.fails();
        }
    }
    Ok(())
}

fn check_topological(inst: &Instance, name: &str, caps: &Caps, r: &mut Report) -> Result<(), Failure> {
    let c = match target(inst, name)? {
        Item::Concrete { cat, .. } => cat.clone(),
        other => return Err(wrong_kind(name, other, "a concrete category")),
    };
    let e = c.encode();
    let table = suprema_table(&e, caps)?;
    let flag = qk_core::concrete::is_topological(&c, caps)?;
    let witness = table.iter().find(|(_, s)| s.is_none()).map(|(phi, _)| phi);
    match (flag.value, witness) {
        (true, None) => r.line("topological", format!("true ({} normalized sinks, all lift)", table.len())),
        (false, Some(phi)) => {
            let q = c.quantaloid();
            let sink = if phi.comps.iter().enumerate().all(|(x, &v)| v == q.bottom(c.extent(x), phi.extent)) {
                "empty sink".to_string()
            } else {
                format!("sink {}", presheaf_name(&e, phi))
            };
            r.line("topological", format!("false; witness: {sink}"));
            r.fails();
        }
        _ => {
            return Err(Error::Inconsistent("topologicity and the suprema table disagree".into()).into())
        }
    }
    Ok(())
}

fn check_all(e: &QCategory, caps: &Caps, r: &mut Report) -> Result<(), Failure> {
    let report = match verify_totality_equivalences(e, caps) {
        Ok(report) => report,
        Err(Error::Inconsistent(msg)) => {
            r.line("consistent", format!("no ({msg})"));
            r.fails();
            return Ok(());
        }
        Err(other) => return Err(other.into()),
    };
    for flag in &report.conditions {
        match &flag.witness {
            Some(w) => r.line(flag.name, format!("{} (witness: {w})", flag.value)),
            None => r.line(flag.name, flag.value),
        }
    }
    r.line("consistent", "yes");
    if e.base().len() == 1 {
        let source = check_initial_source(e, caps.probe_bound, caps)?;
        r.line(
            &format!("initial source (probes up to {} objects)", caps.probe_bound),
            source.value,
        );
    }
    if !report.value() {
        r.fails();
    }
    Ok(())
}

fn lattice_of(inst: &Instance, name: &str) -> Result<FiniteLattice, Failure> {
    match target(inst, name)? {
        Item::Lattice(l) => Ok((**l).clone()),
        Item::Poset(p) => FiniteLattice::from_poset((**p).clone()).map_err(|v| Error::Lattice(v).into()),
        other => Err(wrong_kind(name, other, "a lattice or poset")),
    }
}

fn poset_of(inst: &Instance, name: &str) -> Result<Poset, Failure> {
    match target(inst, name)? {
        Item::Lattice(l) => Ok(l.poset().clone()),
        Item::Poset(p) => Ok((**p).clone()),
        other => Err(wrong_kind(name, other, "a lattice or poset")),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

pub fn complete(
    path: &Path,
    name: &str,
    mode: Mode,
    output: &Path,
    dot: Option<&Path>,
    caps: &Caps,
) -> Outcome {
    let inst = load(path)?;
    let mut r = Report::new();
    r.line("target", name);
    let mut out = Instance::new();
    let result_name;
    let diagram;
    match mode {
        Mode::Macneille => {
            let p = poset_of(&inst, name)?;
            let m = macneille_completion(&p, caps)?;
            let oracle = dedekind_macneille(&p);
            let (mut a, mut b) = (m.cuts.clone(), oracle.cuts.clone());
            a.sort();
            b.sort();
            r.line("elements", m.lattice.len());
            r.line("matches cut oracle", yes_no(a == b));
            if a != b {
                r.fails();
            }
            let embedding: Vec<String> = (0..p.len())
                .map(|x| format!("{} -> {}", p.name(x), m.lattice.name(m.embedding[x])))
                .collect();
            r.line("embedding", embedding.join(", "));
            result_name = format!("{name}_macneille");
            diagram = hasse_dot(&result_name, m.lattice.poset());
            out.push(result_name.clone(), Item::Lattice(Arc::new(m.lattice)));
        }
        Mode::Reconstruct => {
            let l = lattice_of(&inst, name)?;
            let rec = lattice_reconstruction(&l, caps)?;
            let set = |xs: &[usize]| {
                let names: Vec<&str> = xs.iter().map(|&x| l.name(x)).collect();
                format!("{{{}}}", names.join(","))
            };
            r.line(
                "L ≅ IΦ",
                format!(
                    "yes (J={}, M={})",
                    set(&rec.join_irreducibles),
                    set(&rec.meet_irreducibles)
                ),
            );
            let c = rec.isbell.category();
            let n = l.len();
            let mut names = vec![String::new(); n];
            for x in 0..n {
                names[rec.map[x]] = l.name(x).to_string();
            }
            let leq = (0..n * n).map(|i| c.le(i / n, i % n)).collect();
            let poset = Poset::new(names, leq).map_err(Error::Lattice)?;
            let lattice = FiniteLattice::from_poset(poset).map_err(Error::Lattice)?;
            result_name = format!("{name}_reconstructed");
            diagram = hasse_dot(&result_name, lattice.poset());
            out.push(result_name.clone(), Item::Lattice(Arc::new(lattice)));
        }
        Mode::Isbell => {
            let (phi, source) = match target(&inst, name)? {
                Item::QDistributor { dist, source, .. } => (dist.clone(), source.clone()),
                other => return Err(wrong_kind(name, other, "a distributor")),
            };
            let isb = isbell_category(&phi, caps)?;
            let e = phi.source();
            let c = isb.category();
            r.line("presheaves scanned", isb.presheaf_count());
            r.line("fixed points", c.len());
            let representable: Vec<Option<usize>> = isb
                .fixed_points()
                .iter()
                .map(|f| (0..e.len()).find(|&x| yoneda(e, x) == *f))
                .collect();
            let identity = Arc::ptr_eq(phi.source(), phi.target()) || phi.source() == phi.target();
            if identity && *phi == QDistributor::identity(e.clone()) && representable.iter().all(Option::is_some) {
                r.line("E ≅ IΦ", "yes (certificate: trivial)");
            } else {
                let w = isbell_witnesses(&isb, caps)?;
                r.line("Φ = G^♮∘F_♮", yes_no(w.factorizes));
                r.line("F dense", yes_no(w.dense));
                r.line("G codense", yes_no(w.codense));
                if !(w.factorizes && w.dense && w.codense) {
                    r.fails();
                }
            }
            let mut names: Vec<String> = Vec::with_capacity(c.len());
            for (i, rep) in representable.iter().enumerate() {
                let base = match rep {
                    Some(x) => clean(e.name(*x)),
                    None => format!("fix{i}"),
                };
                let mut candidate = base.clone();
                while names.contains(&candidate) {
                    candidate.push('\'');
                }
                names.push(candidate);
            }
            let legend: Vec<String> = names
                .iter()
                .zip(isb.fixed_points())
                .map(|(n, f)| format!("{n} = {}", presheaf_name(e, f)))
                .collect();
            r.line("objects", legend.join("; "));
            let hom = (0..c.len() * c.len()).map(|i| c.hom(i / c.len(), i % c.len())).collect();
            let cat = QCategory::new(c.base().clone(), names, c.extents().to_vec(), hom)?;
            let base = copy_base(&inst, &source, &mut out)?;
            result_name = format!("{name}_isbell");
            diagram = qcategory_dot(&result_name, &cat).unwrap_or_else(|_| hom_table(&cat));
            out.push(result_name.clone(), Item::QCategory { base, cat: Arc::new(cat) });
        }
    }
    write_file(output, &out.to_text())?;
    r.line("written", format!("{} ({result_name})", output.display()));
    if let Some(dot) = dot {
        write_file(dot, &diagram)?;
        r.line("diagram", dot.display());
    }
    Ok(r)
}

/// Copies the base quantaloid of the category `cat` (and the category a
/// free base is built on) into `out`, returning the base's name.
fn copy_base(inst: &Instance, cat: &str, out: &mut Instance) -> Result<String, Failure> {
    let base = match inst.item(cat)? {
        Item::QCategory { base, .. } => base.clone(),
        other => return Err(wrong_kind(cat, other, "a qcategory")),
    };
    let item = inst.item(&base)?.clone();
    if let Item::Quantale { free: Some(under), .. } = &item {
        out.push(under.clone(), inst.item(under)?.clone());
    }
    out.push(base.clone(), item);
    Ok(base)
}

pub fn final_lift(path: &Path, name: &str) -> Outcome {
    let inst = load(path)?;
    let (category, sink) = match target(&inst, name)? {
        Item::Sink { category, sink } => (category.clone(), sink.clone()),
        other => return Err(wrong_kind(name, other, "a sink")),
    };
    let c = inst.concrete(&category)?;
    let e = c.encode();
    let normalized = normalize_sink(&c, &sink)?;
    let lift = supremum(&e, &normalized);
    let direct = final_lift_direct(&c, &sink)?;
    if lift != direct {
        return Err(Error::Inconsistent("supremum and set-theoretic final lift disagree".into()).into());
    }
    let mut r = Report::new();
    r.line("sink", name);
    r.line("category", &category);
    r.line("target object", &c.quantaloid().objects()[sink.target]);
    r.line("normalized", presheaf_name(&e, &normalized));
    match lift {
        Some(class) => r.line("final lift", class_name(&e, &class)),
        None => {
            r.line("final lift", "none");
            r.fails();
        }
    }
    Ok(r)
}

pub fn extend(path: &Path, f_name: &str, g_name: &str, caps: &Caps) -> Outcome {
    let inst = load(path)?;
    let functor = |name: &str| match target(&inst, name)? {
        Item::QFunctor { functor, .. } => Ok(functor.clone()),
        other => Err(wrong_kind(name, other, "a qfunctor")),
    };
    let (f, g) = (functor(f_name)?, functor(g_name)?);
    let mut r = Report::new();
    match injective_extension(&f, &g, caps) {
        Ok(h) => {
            let (d, e) = (g.target(), f.target());
            let map: Vec<String> = (0..d.len())
                .map(|y| format!("{} -> {}", d.name(y), e.name(h.apply(y))))
                .collect();
            r.line("extension", map.join(", "));
            r.line("H∘G ≅ F", "yes");
        }
        Err(err @ (Error::NotTotal { .. } | Error::NotFullyFaithful { .. })) => {
            r.line("extension", "none");
            r.line("reason", err);
            r.fails();
        }
        Err(other) => return Err(other.into()),
    }
    Ok(r)
}

pub fn export_dot(path: &Path, name: &str) -> Result<String, Failure> {
    let inst = load(path)?;
    match target(&inst, name)? {
        Item::Lattice(l) => Ok(hasse_dot(name, l.poset())),
        Item::Poset(p) => Ok(hasse_dot(name, p)),
        Item::QCategory { cat, .. } => match qcategory_dot(name, cat) {
            Ok(dot) => Ok(dot),
            Err(Error::NotVisualizable(why)) => {
                eprintln!("qk: not visualizable as a Hasse diagram ({why}); printing the hom table");
                Ok(hom_table(cat))
            }
            Err(other) => Err(other.into()),
        },
        Item::Concrete { cat, .. } => {
            let e = cat.encode();
            eprintln!("qk: concrete categories are printed as hom tables");
            Ok(hom_table(&e))
        }
        other => Err(wrong_kind(name, other, "a lattice, poset or qcategory")),
    }
}
