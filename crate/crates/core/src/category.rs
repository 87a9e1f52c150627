//! Finite ordinary categories, used as bases of free quantaloids and of
//! concrete categories.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown or duplicate morphism `{0}`")]
    BadMorphism(String),
    #[error("composite {g} . {f} is not defined")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} . {f} = {h} has the wrong type or conflicts with another entry")]
    BadComposite { g: String, f: String, h: String },
    #[error("identity law fails at {0}")]
    NotUnital(String),
    #[error("associativity fails at ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    // homs[s * n + t] lists the names of B(s, t)
    homs: Vec<Vec<String>>,
    // comp[(s * n + t) * n + u][g * |B(s,t)| + f] = g . f
    comp: Vec<Vec<usize>>,
    ids: Vec<usize>,
}

/// One morphism declaration: name, domain, codomain.
#[derive(Debug, Clone)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

impl FiniteCategory {
    /// Builds a category from named morphisms, one identity per object and
    /// composition triples `g . f = h`. Composites with identities may be
    /// omitted; they are inferred.
    pub fn from_triples(
        objects: Vec<String>,
        morphisms: &[MorphismDecl],
        identities: &[(String, String)],
        triples: &[(String, String, String)],
    ) -> Result<Self, Vec<CategoryViolation>> {
        let n = objects.len();
        let obj_idx: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut errs = Vec::new();
        let mut homs: Vec<Vec<String>> = vec![Vec::new(); n * n];
        let mut mor_idx: HashMap<String, (usize, usize, usize)> = HashMap::new();
        for m in morphisms {
            let (Some(&s), Some(&t)) = (obj_idx.get(m.dom.as_str()), obj_idx.get(m.cod.as_str()))
            else {
                errs.push(CategoryViolation::UnknownObject(format!("{} -> {}", m.dom, m.cod)));
                continue;
            };
            if mor_idx.contains_key(&m.name) {
                errs.push(CategoryViolation::BadMorphism(m.name.clone()));
                continue;
            }
            mor_idx.insert(m.name.clone(), (s, t, homs[s * n + t].len()));
            homs[s * n + t].push(m.name.clone());
        }
        let mut ids = vec![usize::MAX; n];
        for (obj, name) in identities {
            let Some(&s) = obj_idx.get(obj.as_str()) else {
                errs.push(CategoryViolation::UnknownObject(obj.clone()));
                continue;
            };
            match mor_idx.get(name) {
                Some(&(a, b, i)) if a == s && b == s => ids[s] = i,
                _ => errs.push(CategoryViolation::BadMorphism(name.clone())),
            }
        }
        for (s, id) in ids.iter().enumerate() {
            if *id == usize::MAX {
                errs.push(CategoryViolation::NotUnital(objects[s].clone()));
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let mut comp: Vec<Vec<usize>> = Vec::with_capacity(n * n * n);
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let size = homs[t * n + u].len() * homs[s * n + t].len();
                    comp.push(vec![usize::MAX; size]);
                }
            }
        }
        let tri = |s: usize, t: usize, u: usize| (s * n + t) * n + u;
        let set = |comp: &mut Vec<Vec<usize>>,
                       s: usize,
                       t: usize,
                       u: usize,
                       g: usize,
                       f: usize,
                       h: usize|
         -> bool {
            let w = homs[s * n + t].len();
            let slot = &mut comp[tri(s, t, u)][g * w + f];
            if *slot == usize::MAX || *slot == h {
                *slot = h;
                true
            } else {
                false
            }
        };
        // identities
        for s in 0..n {
            for t in 0..n {
                for f in 0..homs[s * n + t].len() {
                    set(&mut comp, s, t, t, ids[t], f, f);
                    set(&mut comp, s, s, t, f, ids[s], f);
                }
            }
        }
        for (g, f, h) in triples {
            let lookup = |name: &String| mor_idx.get(name).copied();
            match (lookup(g), lookup(f), lookup(h)) {
                (Some((t1, u, gi)), Some((s, t, fi)), Some((s2, u2, hi)))
                    if t1 == t && s2 == s && u2 == u =>
                {
                    if !set(&mut comp, s, t, u, gi, fi, hi) {
                        errs.push(CategoryViolation::BadComposite {
                            g: g.clone(),
                            f: f.clone(),
                            h: h.clone(),
                        });
                    }
                }
                _ => errs.push(CategoryViolation::BadComposite {
                    g: g.clone(),
                    f: f.clone(),
                    h: h.clone(),
                }),
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let cat = FiniteCategory {
            objects,
            homs,
            comp,
            ids,
        };
        cat.validate()?;
        Ok(cat)
    }

    /// Exhaustive check of totality, identity laws and associativity.
    pub fn validate(&self) -> Result<(), Vec<CategoryViolation>> {
        let n = self.len();
        let mut errs = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let w = self.hom_size(s, t);
                    for (k, h) in self.comp[(s * n + t) * n + u].iter().enumerate() {
                        if *h == usize::MAX {
                            errs.push(CategoryViolation::MissingComposite {
                                g: self.morphism_name(t, u, k / w).to_string(),
                                f: self.morphism_name(s, t, k % w).to_string(),
                            });
                        }
                    }
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for s in 0..n {
            for t in 0..n {
                for f in 0..self.hom_size(s, t) {
                    if self.compose(s, t, t, self.ids[t], f) != f
                        || self.compose(s, s, t, f, self.ids[s]) != f
                    {
                        errs.push(CategoryViolation::NotUnital(
                            self.morphism_name(s, t, f).to_string(),
                        ));
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        for f in 0..self.hom_size(s, t) {
                            for g in 0..self.hom_size(t, u) {
                                let gf = self.compose(s, t, u, g, f);
                                for h in 0..self.hom_size(u, v) {
                                    let hg = self.compose(t, u, v, h, g);
                                    if self.compose(s, u, v, h, gf) != self.compose(s, t, v, hg, f)
                                    {
                                        errs.push(CategoryViolation::NotAssociative {
                                            h: self.morphism_name(u, v, h).to_string(),
                                            g: self.morphism_name(t, u, g).to_string(),
                                            f: self.morphism_name(s, t, f).to_string(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Builds a category from a composition function; the result is
    /// validated.
    pub fn from_fn(
        objects: Vec<String>,
        homs: Vec<Vec<String>>,
        ids: Vec<usize>,
        compose: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self, Vec<CategoryViolation>> {
        let n = objects.len();
        let mut comp = Vec::with_capacity(n * n * n);
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let w = homs[s * n + t].len();
                    let mut table = vec![0; homs[t * n + u].len() * w];
                    for g in 0..homs[t * n + u].len() {
                        for f in 0..w {
                            table[g * w + f] = compose(s, t, u, g, f);
                        }
                    }
                    comp.push(table);
                }
            }
        }
        let cat = FiniteCategory {
            objects,
            homs,
            comp,
            ids,
        };
        cat.validate()?;
        Ok(cat)
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        FiniteCategory::from_fn(
            vec!["*".into()],
            vec![vec!["1".into()]],
            vec![0],
            |_, _, _, _, _| 0,
        )
        .expect("terminal category")
    }

    /// A one-object category from a monoid multiplication table
    /// (`table[g][f] = g . f`, element 0 the identity).
    pub fn monoid(names: &[&str], table: &[&[usize]]) -> Result<Self, Vec<CategoryViolation>> {
        FiniteCategory::from_fn(
            vec!["*".into()],
            vec![names.iter().map(|s| s.to_string()).collect()],
            vec![0],
            |_, _, _, g, f| table[g][f],
        )
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom_size(&self, s: usize, t: usize) -> usize {
        self.homs[s * self.len() + t].len()
    }

    pub fn hom_names(&self, s: usize, t: usize) -> &[String] {
        &self.homs[s * self.len() + t]
    }

    pub fn morphism_name(&self, s: usize, t: usize, f: usize) -> &str {
        &self.homs[s * self.len() + t][f]
    }

    /// Finds a morphism by name: `(dom, cod, index)`.
    pub fn find_morphism(&self, name: &str) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                if let Some(i) = self.homs[s * n + t].iter().position(|m| m == name) {
                    return Some((s, t, i));
                }
            }
        }
        None
    }

    pub fn identity(&self, s: usize) -> usize {
        self.ids[s]
    }

    /// `g . f` for `f: s -> t`, `g: t -> u`.
    pub fn compose(&self, s: usize, t: usize, u: usize, g: usize, f: usize) -> usize {
        let n = self.len();
        self.comp[(s * n + t) * n + u][g * self.hom_size(s, t) + f]
    }

    /// Composition triples `(g, f, g . f)` not involving identities.
    pub fn triples(&self) -> Vec<(String, String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    for g in 0..self.hom_size(t, u) {
                        for f in 0..self.hom_size(s, t) {
                            if (t == u && g == self.ids[t]) || (s == t && f == self.ids[s]) {
                                continue;
                            }
                            out.push((
                                self.morphism_name(t, u, g).to_string(),
                                self.morphism_name(s, t, f).to_string(),
                                self.morphism_name(s, u, self.compose(s, t, u, g, f)).to_string(),
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    /// The opposite category. `B^op(t, s)` keeps the morphism order of
    /// `B(s, t)`, so subsets are encoded by the same bitmasks.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.len();
        let mut homs = vec![Vec::new(); n * n];
        for s in 0..n {
            for t in 0..n {
                homs[t * n + s] = self.homs[s * n + t].clone();
            }
        }
        // in B^op: f: a -> b is f in B(b, a); g: b -> c is g in B(c, b);
        // g .op f = f . g in B(c, a)
        FiniteCategory::from_fn(self.objects.clone(), homs, self.ids.clone(), |a, b, c, g, f| {
            self.compose(c, b, a, f, g)
        })
        .expect("opposite of a valid category")
    }
}
