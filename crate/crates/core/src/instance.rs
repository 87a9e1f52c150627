//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! [poset diamond]
//! elements = bot, a, b, top
//! covers = bot < a, bot < b, a < top, b < top
//!
//! [category b_mono]
//! objects = *
//! morphisms = 1 : * -> *, e : * -> *
//! identities = * : 1
//! e . e = e
//! ```
//!
//! Block kinds: `lattice`, `poset`, `category`, `quantale`, `qcategory`,
//! `qfunctor`, `qdistributor`, `concrete`, `sink`, `presheaf`. Blocks refer
//! to each other by name; names are unique within a file.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::category::{FiniteCategory, MorphismDecl};
use crate::concrete::{ConcreteCategory, StructuredSink};
use crate::enriched::{QCategory, QDistributor, QFunctor};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Poset};
use crate::presheaf::{is_presheaf, Presheaf};
use crate::quantaloid::{Hom, Quantaloid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Lattice,
    Poset,
    Category,
    Quantale,
    QCategory,
    QFunctor,
    QDistributor,
    Concrete,
    Sink,
    Presheaf,
}

impl BlockKind {
    const ALL: [BlockKind; 10] = [
        BlockKind::Lattice,
        BlockKind::Poset,
        BlockKind::Category,
        BlockKind::Quantale,
        BlockKind::QCategory,
        BlockKind::QFunctor,
        BlockKind::QDistributor,
        BlockKind::Concrete,
        BlockKind::Sink,
        BlockKind::Presheaf,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            BlockKind::Lattice => "lattice",
            BlockKind::Poset => "poset",
            BlockKind::Category => "category",
            BlockKind::Quantale => "quantale",
            BlockKind::QCategory => "qcategory",
            BlockKind::QFunctor => "qfunctor",
            BlockKind::QDistributor => "qdistributor",
            BlockKind::Concrete => "concrete",
            BlockKind::Sink => "sink",
            BlockKind::Presheaf => "presheaf",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        BlockKind::ALL.into_iter().find(|k| k.keyword() == s)
    }

    fn rank(self) -> usize {
        match self {
            BlockKind::Lattice | BlockKind::Poset | BlockKind::Category => 0,
            BlockKind::Quantale | BlockKind::Concrete => 1,
            BlockKind::QCategory | BlockKind::Sink => 2,
            _ => 3,
        }
    }

    /// Keys holding references, with the kinds they may point to.
    fn references(self) -> &'static [(&'static str, &'static [BlockKind])] {
        const QCAT: &[BlockKind] = &[BlockKind::QCategory];
        match self {
            BlockKind::Quantale => &[("free", &[BlockKind::Category])],
            BlockKind::QCategory => &[
                ("base", &[BlockKind::Quantale]),
                ("poset", &[BlockKind::Poset, BlockKind::Lattice]),
            ],
            BlockKind::QFunctor | BlockKind::QDistributor => &[("source", QCAT), ("target", QCAT)],
            BlockKind::Concrete => &[("base", &[BlockKind::Category])],
            BlockKind::Sink => &[("category", &[BlockKind::Concrete])],
            BlockKind::Presheaf => &[("category", QCAT)],
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryKind {
    /// `key = value`
    Assign { key: String, value: String },
    /// `g . f = h`
    Triple { g: String, f: String, h: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub kind: EntryKind,
    pub line: usize,
    /// 1-based column of the value (or of `h` for triples).
    pub value_column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Block {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries
            .iter()
            .find(|e| matches!(&e.kind, EntryKind::Assign { key: k, .. } if k == key))
    }

    fn value(&self, key: &str) -> Option<(&str, &Entry)> {
        self.get(key).map(|e| match &e.kind {
            EntryKind::Assign { value, .. } => (value.as_str(), e),
            EntryKind::Triple { .. } => unreachable!(),
        })
    }

    fn require(&self, key: &str) -> Result<(&str, &Entry)> {
        self.value(key).ok_or_else(|| Error::Parse {
            line: self.line,
            column: 1,
            message: format!("[{} {}] needs `{key} = ...`", self.kind.keyword(), self.name),
        })
    }
}

/// A syntactically valid file, before any structure is checked.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && !s.chars().any(|c| c.is_whitespace() || "[]=,#".contains(c))
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn column_of(raw: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - raw.as_ptr() as usize;
    raw[..offset].chars().count() + 1
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut names: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, raw.len(), "missing `]`"))?;
            let mut words = inner.split_whitespace();
            let (Some(kw), Some(name), None) = (words.next(), words.next(), words.next()) else {
                return Err(parse_err(line, column_of(raw, trimmed), "expected `[kind name]`"));
            };
            let kind = BlockKind::from_keyword(kw).ok_or_else(|| {
                parse_err(line, column_of(raw, kw), format!("unknown block kind `{kw}`"))
            })?;
            if !is_name(name) {
                return Err(parse_err(line, column_of(raw, name), format!("bad name `{name}`")));
            }
            if let Some(prev) = names.insert(name.to_string(), line) {
                return Err(parse_err(
                    line,
                    column_of(raw, name),
                    format!("`{name}` already defined at line {prev}"),
                ));
            }
            doc.blocks.push(Block {
                kind,
                name: name.to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let block = doc
            .blocks
            .last_mut()
            .ok_or_else(|| parse_err(line, 1, "entry outside of a block"))?;
        let Some(eq) = content.find('=') else {
            return Err(parse_err(line, column_of(raw, trimmed), "expected `key = value`"));
        };
        let (lhs, rhs) = (content[..eq].trim(), content[eq + 1..].trim());
        if lhs.is_empty() {
            return Err(parse_err(line, column_of(raw, trimmed), "empty key"));
        }
        let value_column = if rhs.is_empty() {
            column_of(raw, &content[eq..]) + 1
        } else {
            column_of(raw, rhs)
        };
        let kind = match lhs.split_once(" . ") {
            Some((g, f))
                if matches!(block.kind, BlockKind::Category | BlockKind::Quantale) =>
            {
                let (g, f) = (g.trim(), f.trim());
                for part in [g, f, rhs] {
                    if !is_name(part) {
                        let col = if part.is_empty() { value_column } else { column_of(raw, part) };
                        return Err(parse_err(line, col, format!("bad morphism name `{part}`")));
                    }
                }
                EntryKind::Triple {
                    g: g.into(),
                    f: f.into(),
                    h: rhs.into(),
                }
            }
            _ => {
                if block.get(lhs).is_some() {
                    return Err(parse_err(
                        line,
                        column_of(raw, lhs),
                        format!("duplicate key `{lhs}`"),
                    ));
                }
                EntryKind::Assign {
                    key: lhs.into(),
                    value: rhs.into(),
                }
            }
        };
        block.entries.push(Entry {
            kind,
            line,
            value_column,
        });
    }
    Ok(doc)
}

/// A checked structure together with the names it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Lattice(Arc<FiniteLattice>),
    Poset(Arc<Poset>),
    Category(Arc<FiniteCategory>),
    /// A one-object table quantale, or the free quantaloid over `free`.
    Quantale {
        free: Option<String>,
        q: Arc<Quantaloid>,
    },
    QCategory {
        base: String,
        cat: Arc<QCategory>,
    },
    QFunctor {
        source: String,
        target: String,
        functor: Arc<QFunctor>,
    },
    QDistributor {
        source: String,
        target: String,
        dist: Arc<QDistributor>,
    },
    Concrete {
        base: String,
        cat: Arc<ConcreteCategory>,
    },
    Sink {
        category: String,
        sink: StructuredSink,
    },
    Presheaf {
        category: String,
        presheaf: Presheaf,
    },
}

impl Item {
    pub fn kind(&self) -> BlockKind {
        match self {
            Item::Lattice(_) => BlockKind::Lattice,
            Item::Poset(_) => BlockKind::Poset,
            Item::Category(_) => BlockKind::Category,
            Item::Quantale { .. } => BlockKind::Quantale,
            Item::QCategory { .. } => BlockKind::QCategory,
            Item::QFunctor { .. } => BlockKind::QFunctor,
            Item::QDistributor { .. } => BlockKind::QDistributor,
            Item::Concrete { .. } => BlockKind::Concrete,
            Item::Sink { .. } => BlockKind::Sink,
            Item::Presheaf { .. } => BlockKind::Presheaf,
        }
    }
}

/// A block that parsed but failed its structural checks, or that depends
/// on such a block.
#[derive(Debug, Clone)]
pub struct Failure {
    pub name: String,
    pub kind: BlockKind,
    pub line: usize,
    pub error: Error,
    pub dependent: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Instance {
    items: Vec<(String, Item)>,
    failures: Vec<Failure>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Instance {
    pub fn new() -> Self {
        Instance::default()
    }

    pub fn push(&mut self, name: impl Into<String>, item: Item) {
        self.items.push((name.into(), item));
    }

    pub fn items(&self) -> &[(String, Item)] {
        &self.items
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    fn lookup(&self, name: &str) -> Result<&Item> {
        if let Some(f) = self.failures.iter().find(|f| f.name == name) {
            return Err(Error::PreconditionFailed(format!(
                "`{name}` (line {}) is invalid: {}",
                f.line, f.error
            )));
        }
        self.get(name).ok_or_else(|| Error::UnresolvedReference {
            name: name.to_string(),
            line: 0,
        })
    }

    pub fn qcategory(&self, name: &str) -> Result<Arc<QCategory>> {
        match self.lookup(name)? {
            Item::QCategory { cat, .. } => Ok(cat.clone()),
            other => Err(wrong_kind(name, other.kind(), "qcategory")),
        }
    }

    pub fn concrete(&self, name: &str) -> Result<Arc<ConcreteCategory>> {
        match self.lookup(name)? {
            Item::Concrete { cat, .. } => Ok(cat.clone()),
            other => Err(wrong_kind(name, other.kind(), "concrete")),
        }
    }

    pub fn item(&self, name: &str) -> Result<&Item> {
        self.lookup(name)
    }

    /// The first item of the given kind.
    pub fn first(&self, kind: BlockKind) -> Option<(&str, &Item)> {
        self.items
            .iter()
            .find(|(_, i)| i.kind() == kind)
            .map(|(n, i)| (n.as_str(), i))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, item) in &self.items {
            if !out.is_empty() {
                out.push('\n');
            }
            write_item(&mut out, self, name, item);
        }
        out
    }
}

fn wrong_kind(name: &str, found: BlockKind, wanted: &str) -> Error {
    Error::TypeMismatch(format!("`{name}` is a {}, not a {wanted}", found.keyword()))
}

/// Whether an error is caused by the input text itself (as opposed to a
/// structure that fails its axioms).
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. } | Error::UnresolvedReference { .. } | Error::TypeMismatch(_)
    )
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    build(&parse_document(text)?)
}

/// Checks references, then builds every block in dependency order.
/// Errors in the text are returned; blocks that fail their axioms are
/// recorded as failures.
pub fn build(doc: &Document) -> Result<Instance> {
    let kinds: HashMap<&str, BlockKind> =
        doc.blocks.iter().map(|b| (b.name.as_str(), b.kind)).collect();
    for b in &doc.blocks {
        for (key, allowed) in b.kind.references() {
            if let Some((target, entry)) = b.value(key) {
                match kinds.get(target) {
                    None => {
                        return Err(Error::UnresolvedReference {
                            name: target.to_string(),
                            line: entry.line,
                        })
                    }
                    Some(k) if !allowed.contains(k) => {
                        return Err(parse_err(
                            entry.line,
                            entry.value_column,
                            format!("`{target}` is a {}, expected {}", k.keyword(), allowed[0].keyword()),
                        ))
                    }
                    _ => {}
                }
            }
        }
    }
    let mut order: Vec<&Block> = doc.blocks.iter().collect();
    order.sort_by_key(|b| b.kind.rank());
    let mut inst = Instance::new();
    let mut built: HashMap<String, Item> = HashMap::new();
    for b in order {
        let deps: Vec<&str> = b
            .kind
            .references()
            .iter()
            .filter_map(|(k, _)| b.value(k).map(|(v, _)| v))
            .collect();
        if let Some(bad) = deps.iter().find(|d| !built.contains_key(**d)) {
            inst.failures.push(Failure {
                name: b.name.clone(),
                kind: b.kind,
                line: b.line,
                error: Error::PreconditionFailed(format!("depends on invalid `{bad}`")),
                dependent: true,
            });
            continue;
        }
        match build_block(b, &built) {
            Ok(item) => {
                built.insert(b.name.clone(), item);
            }
            Err(e) if is_input_error(&e) => return Err(e),
            Err(e) => inst.failures.push(Failure {
                name: b.name.clone(),
                kind: b.kind,
                line: b.line,
                error: e,
                dependent: false,
            }),
        }
    }
    for b in &doc.blocks {
        if let Some(item) = built.remove(&b.name) {
            inst.items.push((b.name.clone(), item));
        }
    }
    inst.failures.sort_by_key(|f| f.line);
    Ok(inst)
}

fn list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn pair<'a>(s: &'a str, sep: &str, e: &Entry) -> Result<(&'a str, &'a str)> {
    s.split_once(sep)
        .map(|(a, b)| (a.trim(), b.trim()))
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| parse_err(e.line, e.value_column, format!("expected `a {sep} b` in `{s}`")))
}

fn index(names: &[String], name: &str, e: &Entry) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnresolvedReference {
            name: name.to_string(),
            line: e.line,
        })
}

fn names_of(value: &str, e: &Entry) -> Result<Vec<String>> {
    let names: Vec<String> = list(value).into_iter().map(String::from).collect();
    if let Some(bad) = names.iter().find(|n| !is_name(n)) {
        return Err(parse_err(e.line, e.value_column, format!("bad name `{bad}`")));
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(parse_err(e.line, e.value_column, format!("duplicate name `{n}`")));
        }
    }
    Ok(names)
}

fn poset_of(b: &Block) -> Result<Poset> {
    let (elements, e) = b.require("elements")?;
    let names = names_of(elements, e)?;
    let mut covers = Vec::new();
    if let Some((value, e)) = b.value("covers") {
        for c in list(value) {
            let (lo, hi) = pair(c, "<", e)?;
            covers.push((index(&names, lo, e)?, index(&names, hi, e)?));
        }
    }
    Poset::from_covers(names, &covers).map_err(Error::Lattice)
}

fn triples(b: &Block) -> impl Iterator<Item = (&str, &str, &str, &Entry)> {
    b.entries.iter().filter_map(|e| match &e.kind {
        EntryKind::Triple { g, f, h } => Some((g.as_str(), f.as_str(), h.as_str(), e)),
        _ => None,
    })
}

fn check_keys(b: &Block, allowed: &[&str], prefix: Option<&str>) -> Result<()> {
    for e in &b.entries {
        if let EntryKind::Assign { key, .. } = &e.kind {
            let ok = allowed.contains(&key.as_str())
                || key.contains("->") && prefix.is_none() && allowed.contains(&"->")
                || prefix.is_some_and(|p| key.starts_with(p));
            if !ok {
                return Err(parse_err(
                    e.line,
                    1,
                    format!("unexpected key `{key}` in [{} {}]", b.kind.keyword(), b.name),
                ));
            }
        }
    }
    Ok(())
}

fn no_triples(b: &Block) -> Result<()> {
    match triples(b).next() {
        Some((.., e)) => Err(parse_err(e.line, 1, "composition triples are not allowed here")),
        None => Ok(()),
    }
}

fn build_block(b: &Block, built: &HashMap<String, Item>) -> Result<Item> {
    let reference = |key: &str| -> Result<&Item> {
        let (name, _) = b.require(key)?;
        Ok(&built[name])
    };
    let qcat = |key: &str| -> Result<(String, Arc<QCategory>)> {
        match reference(key)? {
            Item::QCategory { cat, .. } => Ok((b.value(key).unwrap().0.to_string(), cat.clone())),
            _ => unreachable!("reference kinds are checked"),
        }
    };
    let elem = |q: &Quantaloid, s: usize, t: usize, text: &str, e: &Entry| -> Result<usize> {
        q.parse_elem(s, t, text).ok_or_else(|| {
            parse_err(
                e.line,
                e.value_column,
                format!("`{text}` is not an element of the hom from {} to {}", q.objects()[s], q.objects()[t]),
            )
        })
    };
    match b.kind {
        BlockKind::Poset => {
            no_triples(b)?;
            check_keys(b, &["elements", "covers"], None)?;
            Ok(Item::Poset(Arc::new(poset_of(b)?)))
        }
        BlockKind::Lattice => {
            no_triples(b)?;
            check_keys(b, &["elements", "covers"], None)?;
            let l = FiniteLattice::from_poset(poset_of(b)?).map_err(Error::Lattice)?;
            Ok(Item::Lattice(Arc::new(l)))
        }
        BlockKind::Category => {
            check_keys(b, &["objects", "morphisms", "identities"], None)?;
            let (objs, e) = b.require("objects")?;
            let objects = names_of(objs, e)?;
            let mut morphisms = Vec::new();
            if let Some((value, e)) = b.value("morphisms") {
                for m in list(value) {
                    let (name, ty) = pair(m, ":", e)?;
                    let (dom, cod) = pair(ty, "->", e)?;
                    for o in [dom, cod] {
                        index(&objects, o, e)?;
                    }
                    morphisms.push(MorphismDecl {
                        name: name.into(),
                        dom: dom.into(),
                        cod: cod.into(),
                    });
                }
            }
            let mut ids = Vec::new();
            if let Some((value, e)) = b.value("identities") {
                for m in list(value) {
                    let (obj, name) = pair(m, ":", e)?;
                    index(&objects, obj, e)?;
                    ids.push((obj.to_string(), name.to_string()));
                }
            }
            let declared: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
            let mut tri = Vec::new();
            for (g, f, h, e) in triples(b) {
                for m in [g, f, h] {
                    index(&declared, m, e)?;
                }
                tri.push((g.to_string(), f.to_string(), h.to_string()));
            }
            FiniteCategory::from_triples(objects, &morphisms, &ids, &tri)
                .map(|c| Item::Category(Arc::new(c)))
                .map_err(Error::Category)
        }
        BlockKind::Quantale => {
            if let Some((name, _)) = b.value("free") {
                no_triples(b)?;
                check_keys(b, &["free"], None)?;
                let Item::Category(c) = &built[name] else {
                    unreachable!("reference kinds are checked")
                };
                return Ok(Item::Quantale {
                    free: Some(name.to_string()),
                    q: Arc::new(Quantaloid::free(c.clone())?),
                });
            }
            check_keys(b, &["elements", "covers", "unit"], None)?;
            let l = FiniteLattice::from_poset(poset_of(b)?).map_err(Error::Lattice)?;
            let (unit_name, ue) = b.require("unit")?;
            let unit = index(l.names(), unit_name, ue)?;
            let n = l.len();
            let bot = l.bottom();
            let mut table = vec![vec![None; n]; n];
            for (g, f, h, e) in triples(b) {
                let (gi, fi, hi) = (
                    index(l.names(), g, e)?,
                    index(l.names(), f, e)?,
                    index(l.names(), h, e)?,
                );
                if table[gi][fi].replace(hi).is_some_and(|old| old != hi) {
                    return Err(parse_err(e.line, 1, format!("conflicting values for {g} . {f}")));
                }
            }
            let mut tensor = vec![vec![0; n]; n];
            for g in 0..n {
                for f in 0..n {
                    tensor[g][f] = match table[g][f] {
                        Some(h) => h,
                        None if g == unit => f,
                        None if f == unit => g,
                        None if g == bot || f == bot => bot,
                        None => {
                            return Err(parse_err(
                                b.line,
                                1,
                                format!("missing composite {} . {}", l.name(g), l.name(f)),
                            ))
                        }
                    };
                }
            }
            let q = Quantaloid::from_quantale(l, &tensor, unit).map_err(Error::Quantaloid)?;
            Ok(Item::Quantale {
                free: None,
                q: Arc::new(q),
            })
        }
        BlockKind::QCategory => {
            no_triples(b)?;
            check_keys(b, &["base", "objects", "poset", "->"], None)?;
            let (base_name, _) = b.require("base")?;
            let Item::Quantale { q, .. } = &built[base_name] else {
                unreachable!("reference kinds are checked")
            };
            if let Some((pname, e)) = b.value("poset") {
                if b.entries.len() > 2 {
                    return Err(parse_err(e.line, 1, "`poset = ...` takes no other entries"));
                }
                if q.len() != 1 {
                    return Err(Error::TypeMismatch("`poset` needs a one-object base".into()));
                }
                let p = match &built[pname] {
                    Item::Poset(p) => p.as_ref().clone(),
                    Item::Lattice(l) => l.poset().clone(),
                    _ => unreachable!("reference kinds are checked"),
                };
                return Ok(Item::QCategory {
                    base: base_name.to_string(),
                    cat: Arc::new(QCategory::from_poset(q.clone(), &p)?),
                });
            }
            let (objs, oe) = b.require("objects")?;
            let (names, extent) = typed_objects(objs, oe, q.objects())?;
            let n = names.len();
            let mut hom: Vec<usize> = (0..n * n)
                .map(|i| q.bottom(extent[i / n], extent[i % n]))
                .collect();
            for e in &b.entries {
                let EntryKind::Assign { key, value } = &e.kind else { continue };
                let Some((x, y)) = key.split_once("->") else { continue };
                let (x, y) = (index(&names, x.trim(), e)?, index(&names, y.trim(), e)?);
                hom[x * n + y] = elem(q, extent[x], extent[y], value, e)?;
            }
            Ok(Item::QCategory {
                base: base_name.to_string(),
                cat: Arc::new(QCategory::new(q.clone(), names, extent, hom)?),
            })
        }
        BlockKind::QFunctor => {
            no_triples(b)?;
            check_keys(b, &["source", "target", "map"], None)?;
            let (sname, source) = qcat("source")?;
            let (tname, target) = qcat("target")?;
            let (value, e) = b.require("map")?;
            let mut map = vec![usize::MAX; source.len()];
            for m in list(value) {
                let (x, y) = pair(m, "->", e)?;
                map[index(source.names(), x, e)?] = index(target.names(), y, e)?;
            }
            if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
                return Err(parse_err(e.line, e.value_column, format!("no image for `{}`", source.name(x))));
            }
            Ok(Item::QFunctor {
                source: sname,
                target: tname,
                functor: Arc::new(QFunctor::new(source, target, map)?),
            })
        }
        BlockKind::QDistributor => {
            no_triples(b)?;
            check_keys(b, &["source", "target", "->"], None)?;
            let (sname, source) = qcat("source")?;
            let (tname, target) = qcat("target")?;
            if source.base() != target.base() {
                return Err(Error::TypeMismatch("source and target have different bases".into()));
            }
            let q = source.base().clone();
            let m = target.len();
            let mut mat: Vec<usize> = (0..source.len() * m)
                .map(|i| q.bottom(source.extent(i / m), target.extent(i % m)))
                .collect();
            for e in &b.entries {
                let EntryKind::Assign { key, value } = &e.kind else { continue };
                let Some((x, y)) = key.split_once("->") else { continue };
                let x = index(source.names(), x.trim(), e)?;
                let y = index(target.names(), y.trim(), e)?;
                mat[x * m + y] = elem(&q, source.extent(x), target.extent(y), value, e)?;
            }
            Ok(Item::QDistributor {
                source: sname,
                target: tname,
                dist: Arc::new(QDistributor::new(source, target, mat)?),
            })
        }
        BlockKind::Concrete => {
            no_triples(b)?;
            check_keys(b, &["base", "objects", "->"], None)?;
            let (base_name, _) = b.require("base")?;
            let Item::Category(base) = &built[base_name] else {
                unreachable!("reference kinds are checked")
            };
            let q = Arc::new(Quantaloid::free(base.clone())?);
            let (objs, oe) = b.require("objects")?;
            let (names, extent) = typed_objects(objs, oe, base.objects())?;
            let n = names.len();
            let mut morph = vec![0; n * n];
            for e in &b.entries {
                let EntryKind::Assign { key, value } = &e.kind else { continue };
                let Some((x, y)) = key.split_once("->") else { continue };
                let (x, y) = (index(&names, x.trim(), e)?, index(&names, y.trim(), e)?);
                morph[x * n + y] = elem(&q, extent[x], extent[y], value, e)?;
            }
            Ok(Item::Concrete {
                base: base_name.to_string(),
                cat: Arc::new(ConcreteCategory::with_quantaloid(q, names, extent, morph)?),
            })
        }
        BlockKind::Sink => {
            no_triples(b)?;
            check_keys(b, &["category", "target"], Some("from "))?;
            let (cname, _) = b.require("category")?;
            let Item::Concrete { cat, .. } = &built[cname] else {
                unreachable!("reference kinds are checked")
            };
            let (tname, te) = b.require("target")?;
            let target = index(cat.base().objects(), tname, te)?;
            let mut sink = StructuredSink::empty(cat, target);
            for e in &b.entries {
                let EntryKind::Assign { key, value } = &e.kind else { continue };
                let Some(x) = key.strip_prefix("from ") else { continue };
                let x = index(cat.names(), x.trim(), e)?;
                sink.comps[x] = elem(cat.quantaloid(), cat.extent(x), target, value, e)?;
            }
            Ok(Item::Sink {
                category: cname.to_string(),
                sink,
            })
        }
        BlockKind::Presheaf => {
            no_triples(b)?;
            check_keys(b, &["category", "extent"], Some("at "))?;
            let (cname, cat) = qcat("category")?;
            let q = cat.base().clone();
            let extent = match b.value("extent") {
                Some((t, e)) => index(q.objects(), t, e)?,
                None if q.len() == 1 => 0,
                None => return Err(b.require("extent").unwrap_err()),
            };
            let mut comps: Vec<usize> = (0..cat.len())
                .map(|x| q.bottom(cat.extent(x), extent))
                .collect();
            for e in &b.entries {
                let EntryKind::Assign { key, value } = &e.kind else { continue };
                let Some(x) = key.strip_prefix("at ") else { continue };
                let x = index(cat.names(), x.trim(), e)?;
                comps[x] = elem(&q, cat.extent(x), extent, value, e)?;
            }
            let presheaf = Presheaf { extent, comps };
            if !is_presheaf(&cat, &presheaf) {
                return Err(Error::PreconditionFailed(format!(
                    "[presheaf {}] is not compatible with the homs of `{cname}`",
                    b.name
                )));
            }
            Ok(Item::Presheaf {
                category: cname,
                presheaf,
            })
        }
    }
}

/// `x, y` (one-object base) or `x : T, y : S`.
fn typed_objects(value: &str, e: &Entry, base_objects: &[String]) -> Result<(Vec<String>, Vec<usize>)> {
    let mut names = Vec::new();
    let mut extent = Vec::new();
    for o in list(value) {
        let (name, t) = match o.split_once(':') {
            Some((n, t)) => (n.trim(), index(base_objects, t.trim(), e)?),
            None if base_objects.len() == 1 => (o, 0),
            None => {
                return Err(parse_err(e.line, e.value_column, format!("`{o}` needs an extent `{o} : T`")))
            }
        };
        if !is_name(name) || names.iter().any(|n| n == name) {
            return Err(parse_err(e.line, e.value_column, format!("bad or duplicate name `{name}`")));
        }
        names.push(name.to_string());
        extent.push(t);
    }
    Ok((names, extent))
}

fn write_poset_body(out: &mut String, p: &Poset) {
    let _ = writeln!(out, "elements = {}", p.names().join(", "));
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{} < {}", p.name(a), p.name(b)))
        .collect();
    if !covers.is_empty() {
        let _ = writeln!(out, "covers = {}", covers.join(", "));
    }
}

fn typed_names(names: &[String], extent: &[usize], base: &[String]) -> String {
    if base.len() == 1 {
        return names.join(", ");
    }
    names
        .iter()
        .zip(extent)
        .map(|(n, &t)| format!("{n} : {}", base[t]))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_item(out: &mut String, inst: &Instance, name: &str, item: &Item) {
    let _ = writeln!(out, "[{} {name}]", item.kind().keyword());
    match item {
        Item::Lattice(l) => write_poset_body(out, l.poset()),
        Item::Poset(p) => write_poset_body(out, p),
        Item::Category(c) => {
            let _ = writeln!(out, "objects = {}", c.objects().join(", "));
            let n = c.len();
            let mut morphisms = Vec::new();
            let mut ids = Vec::new();
            for s in 0..n {
                ids.push(format!("{} : {}", c.objects()[s], c.morphism_name(s, s, c.identity(s))));
                for t in 0..n {
                    for m in c.hom_names(s, t) {
                        morphisms.push(format!("{m} : {} -> {}", c.objects()[s], c.objects()[t]));
                    }
                }
            }
            if !morphisms.is_empty() {
                let _ = writeln!(out, "morphisms = {}", morphisms.join(", "));
            }
            let _ = writeln!(out, "identities = {}", ids.join(", "));
            for (g, f, h) in c.triples() {
                let _ = writeln!(out, "{g} . {f} = {h}");
            }
        }
        Item::Quantale { free: Some(base), .. } => {
            let _ = writeln!(out, "free = {base}");
        }
        Item::Quantale { free: None, q } => {
            let Hom::Table(l) = q.hom(0, 0) else {
                unreachable!("table quantales have lattice homs")
            };
            write_poset_body(out, l.poset());
            let unit = q.identity(0);
            let _ = writeln!(out, "unit = {}", l.name(unit));
            let bot = l.bottom();
            for g in 0..l.len() {
                for f in 0..l.len() {
                    let h = q.compose(0, 0, 0, g, f);
                    let inferred = if g == unit {
                        Some(f)
                    } else if f == unit {
                        Some(g)
                    } else if g == bot || f == bot {
                        Some(bot)
                    } else {
                        None
                    };
                    if inferred != Some(h) {
                        let _ = writeln!(out, "{} . {} = {}", l.name(g), l.name(f), l.name(h));
                    }
                }
            }
        }
        Item::QCategory { base, cat } => {
            let q = cat.base();
            let _ = writeln!(out, "base = {base}");
            let _ = writeln!(out, "objects = {}", typed_names(cat.names(), cat.extents(), q.objects()));
            for x in 0..cat.len() {
                for y in 0..cat.len() {
                    if cat.hom(x, y) != q.bottom(cat.extent(x), cat.extent(y)) {
                        let _ = writeln!(out, "{} -> {} = {}", cat.name(x), cat.name(y), cat.hom_name(x, y));
                    }
                }
            }
        }
        Item::QFunctor {
            source,
            target,
            functor,
        } => {
            let _ = writeln!(out, "source = {source}");
            let _ = writeln!(out, "target = {target}");
            let (s, t) = (functor.source(), functor.target());
            let map: Vec<String> = (0..s.len())
                .map(|x| format!("{} -> {}", s.name(x), t.name(functor.apply(x))))
                .collect();
            let _ = writeln!(out, "map = {}", map.join(", "));
        }
        Item::QDistributor {
            source,
            target,
            dist,
        } => {
            let _ = writeln!(out, "source = {source}");
            let _ = writeln!(out, "target = {target}");
            let (s, t) = (dist.source(), dist.target());
            let q = s.base();
            for x in 0..s.len() {
                for y in 0..t.len() {
                    let (a, b) = (s.extent(x), t.extent(y));
                    if dist.get(x, y) != q.bottom(a, b) {
                        let _ = writeln!(out, "{} -> {} = {}", s.name(x), t.name(y), q.elem_name(a, b, dist.get(x, y)));
                    }
                }
            }
        }
        Item::Concrete { base, cat } => {
            let q = cat.quantaloid();
            let _ = writeln!(out, "base = {base}");
            let extent: Vec<usize> = (0..cat.len()).map(|x| cat.extent(x)).collect();
            let _ = writeln!(out, "objects = {}", typed_names(cat.names(), &extent, cat.base().objects()));
            for x in 0..cat.len() {
                for y in 0..cat.len() {
                    if cat.morph(x, y) != 0 {
                        let name = q.elem_name(cat.extent(x), cat.extent(y), cat.morph(x, y));
                        let _ = writeln!(out, "{} -> {} = {name}", cat.names()[x], cat.names()[y]);
                    }
                }
            }
        }
        Item::Sink { category, sink } => {
            let _ = writeln!(out, "category = {category}");
            let cat = inst.concrete(category).expect("sinks refer to concrete categories");
            let t = sink.target;
            let _ = writeln!(out, "target = {}", cat.base().objects()[t]);
            for (x, &c) in sink.comps.iter().enumerate() {
                if c != 0 {
                    let value = cat.quantaloid().elem_name(cat.extent(x), t, c);
                    let _ = writeln!(out, "from {} = {value}", cat.names()[x]);
                }
            }
        }
        Item::Presheaf { category, presheaf } => {
            let _ = writeln!(out, "category = {category}");
            let cat = inst.qcategory(category).expect("presheaves refer to Q-categories");
            let q = cat.base();
            let t = presheaf.extent;
            if q.len() > 1 {
                let _ = writeln!(out, "extent = {}", q.objects()[t]);
            }
            for (x, &c) in presheaf.comps.iter().enumerate() {
                if c != q.bottom(cat.extent(x), t) {
                    let _ = writeln!(out, "at {} = {}", cat.name(x), q.elem_name(cat.extent(x), t, c));
                }
            }
        }
    }
}
