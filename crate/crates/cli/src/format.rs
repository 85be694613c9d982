//! The `semh-1` structure file format: a JSON document of tagged records
//! with explicit tables, cross-referenced by name. Degrees are serialized
//! as strings. Every record validates through its owning module during
//! resolution, and references must be declared before use.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use semh_core::chain::ChainComplex;
use semh_core::hom::Hom;
use semh_core::morphism::ChainMorphism;
use semh_core::schreier::{check_ses, SchreierSES};
use semh_core::semimodule::FiniteSemimodule;
use semh_core::semiring::FiniteSemiring;
use semh_core::windowed::{MatrixHom, WindowedComplex, WindowedFreeSemimodule};

pub const FORMAT_VERSION: &str = "semh-1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported format tag {0:?} (expected {FORMAT_VERSION:?})")]
    Version(String),

    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),

    #[error("duplicate record name: {0}")]
    DuplicateName(String),

    #[error("record {name}: {detail}")]
    Validation { name: String, detail: String },
}

fn validation(name: &str, detail: impl ToString) -> FormatError {
    FormatError::Validation {
        name: name.to_owned(),
        detail: detail.to_string(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StructureFile {
    pub format: String,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Semiring(SemiringRecord),
    Semimodule(SemimoduleRecord),
    Hom(HomRecord),
    Complex(ComplexRecord),
    Morphism(MorphismRecord),
    Ses(SesRecord),
    ConeRequest(ConeRecord),
}

impl Record {
    pub fn name(&self) -> &str {
        match self {
            Record::Semiring(r) => &r.name,
            Record::Semimodule(r) => &r.name,
            Record::Hom(r) => &r.name,
            Record::Complex(r) => &r.name,
            Record::Morphism(r) => &r.name,
            Record::Ses(r) => &r.name,
            Record::ConeRequest(r) => &r.name,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SemiringRecord {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
    pub zero: String,
    pub one: String,
}

/// A finite semimodule (tables) or a windowed free carrier (`free_rank`).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SemimoduleRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

/// An element map (`map`) or a matrix hom between windowed carriers.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomRecord {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub name: String,
    /// Degree (as a string) to semimodule name.
    pub modules: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dplus: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dminus: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MorphismRecord {
    pub name: String,
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SesRecord {
    pub name: String,
    pub kappa: String,
    pub sigma: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConeRecord {
    pub name: String,
    pub morphism: String,
}

/// A resolved record value.
#[derive(Debug, Clone)]
pub enum Resolved {
    Semiring(Arc<FiniteSemiring>),
    Semimodule(Arc<FiniteSemimodule>),
    Windowed(WindowedFreeSemimodule),
    Hom(Hom),
    MatrixHom {
        hom: MatrixHom,
        source: String,
        target: String,
    },
    Complex(Arc<ChainComplex>),
    WindowedComplex(WindowedComplex),
    Morphism(ChainMorphism),
    Ses(SchreierSES),
    ConeRequest(ChainMorphism),
}

/// A fully resolved document, in declaration order.
#[derive(Debug, Default)]
pub struct Document {
    pub entries: Vec<(String, Resolved)>,
    index: BTreeMap<String, usize>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Resolved> {
        self.index.get(name).map(|&i| &self.entries[i].1)
    }

    /// Adds a resolved value under a fresh name (used when building
    /// documents programmatically for serialization).
    pub fn push_entry(&mut self, name: &str, value: Resolved) -> Result<(), FormatError> {
        self.insert(name, value)
    }

    fn insert(&mut self, name: &str, value: Resolved) -> Result<(), FormatError> {
        if self.index.contains_key(name) {
            return Err(FormatError::DuplicateName(name.to_owned()));
        }
        self.index.insert(name.to_owned(), self.entries.len());
        self.entries.push((name.to_owned(), value));
        Ok(())
    }

    fn semimodule(&self, name: &str) -> Result<&Arc<FiniteSemimodule>, FormatError> {
        match self.get(name) {
            Some(Resolved::Semimodule(m)) => Ok(m),
            Some(_) => Err(validation(name, "expected a finite semimodule")),
            None => Err(FormatError::UnresolvedReference(name.to_owned())),
        }
    }

    pub fn sequences(&self) -> impl Iterator<Item = (&String, &SchreierSES)> {
        self.entries.iter().filter_map(|(name, value)| match value {
            Resolved::Ses(ses) => Some((name, ses)),
            _ => None,
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&String, &ChainMorphism)> {
        self.entries.iter().filter_map(|(name, value)| match value {
            Resolved::Morphism(m) => Some((name, m)),
            _ => None,
        })
    }
}

fn table_to_indices(
    name: &str,
    elements: &[String],
    table: &[Vec<String>],
) -> Result<Vec<Vec<usize>>, FormatError> {
    let index = |e: &String| {
        elements
            .iter()
            .position(|x| x == e)
            .ok_or_else(|| validation(name, format!("unknown element {e:?} in table")))
    };
    table
        .iter()
        .map(|row| row.iter().map(index).collect())
        .collect()
}

fn degree_key(name: &str, key: &str) -> Result<i64, FormatError> {
    key.parse()
        .map_err(|_| validation(name, format!("degree {key:?} is not an integer")))
}

/// Parses and resolves a structure file. References resolve in declaration
/// order; every record is validated through its owning module.
pub fn parse(text: &str) -> Result<Document, FormatError> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
    if file.format != FORMAT_VERSION {
        return Err(FormatError::Version(file.format));
    }
    resolve(&file)
}

pub fn resolve(file: &StructureFile) -> Result<Document, FormatError> {
    let mut doc = Document::default();
    for record in &file.records {
        match record {
            Record::Semiring(r) => {
                let add = table_to_indices(&r.name, &r.elements, &r.add)?;
                let mul = table_to_indices(&r.name, &r.elements, &r.mul)?;
                let zero = r
                    .elements
                    .iter()
                    .position(|e| e == &r.zero)
                    .ok_or_else(|| validation(&r.name, "zero is not an element"))?;
                let one = r
                    .elements
                    .iter()
                    .position(|e| e == &r.one)
                    .ok_or_else(|| validation(&r.name, "one is not an element"))?;
                let sr = FiniteSemiring::new(r.elements.clone(), add, mul, zero, one)
                    .map_err(|e| validation(&r.name, e))?;
                doc.insert(&r.name, Resolved::Semiring(sr))?;
            }
            Record::Semimodule(r) => {
                if let Some(rank) = r.free_rank {
                    let bound = r.bound.unwrap_or(32);
                    doc.insert(
                        &r.name,
                        Resolved::Windowed(WindowedFreeSemimodule::new(rank, bound)),
                    )?;
                    continue;
                }
                let elements = r
                    .elements
                    .clone()
                    .ok_or_else(|| validation(&r.name, "missing elements"))?;
                let add_names = r
                    .add
                    .as_ref()
                    .ok_or_else(|| validation(&r.name, "missing addition table"))?;
                let zero_name = r
                    .zero
                    .as_ref()
                    .ok_or_else(|| validation(&r.name, "missing zero"))?;
                let add = table_to_indices(&r.name, &elements, add_names)?;
                let zero = elements
                    .iter()
                    .position(|e| e == zero_name)
                    .ok_or_else(|| validation(&r.name, "zero is not an element"))?;
                let module = match (&r.semiring, &r.action) {
                    (None, None) => FiniteSemimodule::monoid(elements, add, zero)
                        .map_err(|e| validation(&r.name, e))?,
                    (Some(sr_name), Some(action_names)) => {
                        let sr = match doc.get(sr_name) {
                            Some(Resolved::Semiring(sr)) => sr.clone(),
                            Some(_) => {
                                return Err(validation(&r.name, "semiring ref is not a semiring"))
                            }
                            None => return Err(FormatError::UnresolvedReference(sr_name.clone())),
                        };
                        let action = table_to_indices(&r.name, &elements, action_names)?;
                        FiniteSemimodule::over_semiring(sr, elements, add, zero, action)
                            .map_err(|e| validation(&r.name, e))?
                    }
                    _ => {
                        return Err(validation(
                            &r.name,
                            "semiring and action must be given together",
                        ))
                    }
                };
                doc.insert(&r.name, Resolved::Semimodule(module))?;
            }
            Record::Hom(r) => {
                if let Some(matrix) = &r.matrix {
                    let source = match doc.get(&r.source) {
                        Some(Resolved::Windowed(w)) => w.clone(),
                        Some(_) => {
                            return Err(validation(&r.name, "matrix hom source must be windowed"))
                        }
                        None => return Err(FormatError::UnresolvedReference(r.source.clone())),
                    };
                    let target = match doc.get(&r.target) {
                        Some(Resolved::Windowed(w)) => w.clone(),
                        Some(_) => {
                            return Err(validation(&r.name, "matrix hom target must be windowed"))
                        }
                        None => return Err(FormatError::UnresolvedReference(r.target.clone())),
                    };
                    let hom = MatrixHom::new(matrix.clone(), target.rank(), source.rank())
                        .map_err(|e| validation(&r.name, e))?;
                    doc.insert(
                        &r.name,
                        Resolved::MatrixHom {
                            hom,
                            source: r.source.clone(),
                            target: r.target.clone(),
                        },
                    )?;
                    continue;
                }
                let source = doc.semimodule(&r.source)?.clone();
                let target = doc.semimodule(&r.target)?.clone();
                let pairs = r
                    .map
                    .as_ref()
                    .ok_or_else(|| validation(&r.name, "missing element map"))?;
                let mut map = vec![usize::MAX; source.size()];
                for (from, to) in pairs {
                    let i = source
                        .index_of(from)
                        .ok_or_else(|| validation(&r.name, format!("unknown element {from:?}")))?;
                    let j = target
                        .index_of(to)
                        .ok_or_else(|| validation(&r.name, format!("unknown element {to:?}")))?;
                    map[i] = j;
                }
                if map.iter().any(|&v| v == usize::MAX) {
                    return Err(validation(&r.name, "element map is not total"));
                }
                let hom = Hom::new(source, target, map).map_err(|e| validation(&r.name, e))?;
                doc.insert(&r.name, Resolved::Hom(hom))?;
            }
            Record::Complex(r) => {
                // Windowed or finite, depending on the referenced modules.
                let first = r
                    .modules
                    .values()
                    .next()
                    .ok_or_else(|| validation(&r.name, "empty complex"))?;
                let windowed = matches!(doc.get(first), Some(Resolved::Windowed(_)));
                if windowed {
                    let mut ranks = BTreeMap::new();
                    let mut bound = None;
                    for (key, module) in &r.modules {
                        let n = degree_key(&r.name, key)?;
                        match doc.get(module) {
                            Some(Resolved::Windowed(w)) => {
                                if let Some(b) = bound {
                                    if b != w.bound() {
                                        return Err(validation(&r.name, "mixed window bounds"));
                                    }
                                } else {
                                    bound = Some(w.bound());
                                }
                                ranks.insert(n, w.rank());
                            }
                            Some(_) => {
                                return Err(validation(
                                    &r.name,
                                    "mixed finite and windowed modules",
                                ))
                            }
                            None => return Err(FormatError::UnresolvedReference(module.clone())),
                        }
                    }
                    let mut dplus = BTreeMap::new();
                    let mut dminus = BTreeMap::new();
                    for (maps, store) in [(&r.dplus, &mut dplus), (&r.dminus, &mut dminus)] {
                        for (key, hom) in maps {
                            let n = degree_key(&r.name, key)?;
                            match doc.get(hom) {
                                Some(Resolved::MatrixHom { hom, .. }) => {
                                    store.insert(n, hom.clone());
                                }
                                Some(_) => {
                                    return Err(validation(&r.name, "expected a matrix hom"))
                                }
                                None => return Err(FormatError::UnresolvedReference(hom.clone())),
                            }
                        }
                    }
                    let complex = WindowedComplex::new(bound.unwrap_or(32), ranks, dplus, dminus)
                        .map_err(|e| validation(&r.name, e))?;
                    doc.insert(&r.name, Resolved::WindowedComplex(complex))?;
                    continue;
                }
                let mut modules = BTreeMap::new();
                for (key, module) in &r.modules {
                    let n = degree_key(&r.name, key)?;
                    modules.insert(n, doc.semimodule(module)?.clone());
                }
                let mut dplus = BTreeMap::new();
                let mut dminus = BTreeMap::new();
                for (maps, store) in [(&r.dplus, &mut dplus), (&r.dminus, &mut dminus)] {
                    for (key, hom) in maps {
                        let n = degree_key(&r.name, key)?;
                        match doc.get(hom) {
                            Some(Resolved::Hom(h)) => {
                                store.insert(n, h.clone());
                            }
                            Some(_) => return Err(validation(&r.name, "expected a hom")),
                            None => return Err(FormatError::UnresolvedReference(hom.clone())),
                        }
                    }
                }
                let complex = ChainComplex::new(modules, dplus, dminus)
                    .map_err(|e| validation(&r.name, e))?;
                doc.insert(&r.name, Resolved::Complex(Arc::new(complex)))?;
            }
            Record::Morphism(r) => {
                let source = match doc.get(&r.source) {
                    Some(Resolved::Complex(c)) => c.clone(),
                    Some(_) => {
                        return Err(validation(&r.name, "morphism source must be a complex"))
                    }
                    None => return Err(FormatError::UnresolvedReference(r.source.clone())),
                };
                let target = match doc.get(&r.target) {
                    Some(Resolved::Complex(c)) => c.clone(),
                    Some(_) => {
                        return Err(validation(&r.name, "morphism target must be a complex"))
                    }
                    None => return Err(FormatError::UnresolvedReference(r.target.clone())),
                };
                let mut components = BTreeMap::new();
                for (key, hom) in &r.components {
                    let n = degree_key(&r.name, key)?;
                    match doc.get(hom) {
                        Some(Resolved::Hom(h)) => {
                            components.insert(n, h.clone());
                        }
                        Some(_) => return Err(validation(&r.name, "expected a hom")),
                        None => return Err(FormatError::UnresolvedReference(hom.clone())),
                    }
                }
                let morphism = ChainMorphism::classify(source, target, components)
                    .map_err(|e| validation(&r.name, e))?;
                doc.insert(&r.name, Resolved::Morphism(morphism))?;
            }
            Record::Ses(r) => {
                let kappa = match doc.get(&r.kappa) {
                    Some(Resolved::Morphism(m)) => m.clone(),
                    Some(_) => return Err(validation(&r.name, "kappa must be a morphism")),
                    None => return Err(FormatError::UnresolvedReference(r.kappa.clone())),
                };
                let sigma = match doc.get(&r.sigma) {
                    Some(Resolved::Morphism(m)) => m.clone(),
                    Some(_) => return Err(validation(&r.name, "sigma must be a morphism")),
                    None => return Err(FormatError::UnresolvedReference(r.sigma.clone())),
                };
                let ses = check_ses(kappa, sigma).map_err(|e| validation(&r.name, e))?;
                doc.insert(&r.name, Resolved::Ses(ses))?;
            }
            Record::ConeRequest(r) => {
                let morphism = match doc.get(&r.morphism) {
                    Some(Resolved::Morphism(m)) => m.clone(),
                    Some(_) => return Err(validation(&r.name, "cone request needs a morphism")),
                    None => return Err(FormatError::UnresolvedReference(r.morphism.clone())),
                };
                doc.insert(&r.name, Resolved::ConeRequest(morphism))?;
            }
        }
    }
    Ok(doc)
}

fn names_table(m: &FiniteSemimodule, table: &[Vec<usize>]) -> Vec<Vec<String>> {
    table
        .iter()
        .map(|row| row.iter().map(|&v| m.name_of(v).to_owned()).collect())
        .collect()
}

/// Emission state for [`serialize`]: records plus the set of names already
/// written.
struct Emitter {
    records: Vec<Record>,
    emitted: BTreeMap<String, ()>,
}

impl Emitter {
    fn new() -> Self {
        Emitter {
            records: Vec::new(),
            emitted: BTreeMap::new(),
        }
    }

    fn push_once(&mut self, name: &str, record: Record) {
        if self.emitted.contains_key(name) {
            return;
        }
        self.emitted.insert(name.to_owned(), ());
        self.records.push(record);
    }

    fn semiring(&mut self, name: &str, sr: &Arc<FiniteSemiring>) {
        let to_names = |table: &[Vec<usize>]| -> Vec<Vec<String>> {
            table
                .iter()
                .map(|row| row.iter().map(|&v| sr.name_of(v).to_owned()).collect())
                .collect()
        };
        self.push_once(
            name,
            Record::Semiring(SemiringRecord {
                name: name.to_owned(),
                elements: sr.elements().to_vec(),
                add: to_names(sr.add_table()),
                mul: to_names(sr.mul_table()),
                zero: sr.name_of(sr.zero()).to_owned(),
                one: sr.name_of(sr.one()).to_owned(),
            }),
        );
    }

    fn semimodule(&mut self, name: &str, m: &Arc<FiniteSemimodule>) {
        if self.emitted.contains_key(name) {
            return;
        }
        let semiring_ref = m.scalars().semiring().map(|sr| {
            let sr_name = format!("{name}.semiring");
            self.semiring(&sr_name, sr);
            sr_name
        });
        self.push_once(
            name,
            Record::Semimodule(SemimoduleRecord {
                name: name.to_owned(),
                elements: Some(m.elements().to_vec()),
                add: Some(names_table(m, m.add_table())),
                zero: Some(m.name_of(m.zero()).to_owned()),
                semiring: semiring_ref,
                action: m.action_table().map(|t| names_table(m, t)),
                free_rank: None,
                bound: None,
            }),
        );
    }

    fn windowed(&mut self, name: &str, w: &WindowedFreeSemimodule) {
        self.push_once(
            name,
            Record::Semimodule(SemimoduleRecord {
                name: name.to_owned(),
                elements: None,
                add: None,
                zero: None,
                semiring: None,
                action: None,
                free_rank: Some(w.rank()),
                bound: Some(w.bound()),
            }),
        );
    }

    fn hom(&mut self, name: &str, hom: &Hom, source_name: &str, target_name: &str) {
        self.semimodule(source_name, hom.source());
        self.semimodule(target_name, hom.target());
        let map = hom
            .map()
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (
                    hom.source().name_of(i).to_owned(),
                    hom.target().name_of(v).to_owned(),
                )
            })
            .collect();
        self.push_once(
            name,
            Record::Hom(HomRecord {
                name: name.to_owned(),
                source: source_name.to_owned(),
                target: target_name.to_owned(),
                map: Some(map),
                matrix: None,
            }),
        );
    }

    fn complex(&mut self, name: &str, c: &Arc<ChainComplex>) {
        if self.emitted.contains_key(name) {
            return;
        }
        let (lo, hi) = c.window();
        let mut modules = BTreeMap::new();
        for n in lo..=hi {
            let module_name = format!("{name}.{n}");
            self.semimodule(&module_name, &c.module_at(n));
            modules.insert(n.to_string(), module_name);
        }
        let mut dplus = BTreeMap::new();
        let mut dminus = BTreeMap::new();
        for n in (lo + 1)..=hi {
            for (tag, hom, store) in [
                ("dplus", c.dplus_at(n), &mut dplus),
                ("dminus", c.dminus_at(n), &mut dminus),
            ] {
                if hom.is_zero_map() {
                    continue;
                }
                let hom_name = format!("{name}.{tag}.{n}");
                self.hom(
                    &hom_name,
                    &hom,
                    &format!("{name}.{n}"),
                    &format!("{name}.{}", n - 1),
                );
                store.insert(n.to_string(), hom_name);
            }
        }
        self.push_once(
            name,
            Record::Complex(ComplexRecord {
                name: name.to_owned(),
                modules,
                dplus,
                dminus,
            }),
        );
    }

    fn morphism(&mut self, name: &str, m: &ChainMorphism) {
        if self.emitted.contains_key(name) {
            return;
        }
        let source_name = format!("{name}.source");
        let target_name = format!("{name}.target");
        self.complex(&source_name, m.source());
        self.complex(&target_name, m.target());
        let (slo, shi) = m.source().window();
        let (tlo, thi) = m.target().window();
        let mut components = BTreeMap::new();
        for n in slo.min(tlo)..=shi.max(thi) {
            let hom = m.component_at(n);
            let hom_name = format!("{name}.{n}");
            // Fringe components live on zero modules which are not part of
            // the complex records; emit standalone carriers for them.
            self.hom(
                &hom_name,
                &hom,
                &format!("{source_name}.{n}"),
                &format!("{target_name}.{n}"),
            );
            components.insert(n.to_string(), hom_name);
        }
        self.push_once(
            name,
            Record::Morphism(MorphismRecord {
                name: name.to_owned(),
                source: source_name,
                target: target_name,
                components,
            }),
        );
    }
}

/// Serializes a resolved document back into a structure file; resolving the
/// result reproduces the same algebraic values.
pub fn serialize(doc: &Document) -> StructureFile {
    let mut emitter = Emitter::new();
    for (name, value) in &doc.entries {
        match value {
            Resolved::Semiring(sr) => emitter.semiring(name, sr),
            Resolved::Semimodule(m) => emitter.semimodule(name, m),
            Resolved::Windowed(w) => emitter.windowed(name, w),
            Resolved::Hom(h) => {
                let src = format!("{name}.source");
                let tgt = format!("{name}.target");
                emitter.hom(name, h, &src, &tgt);
            }
            Resolved::MatrixHom {
                hom,
                source,
                target,
            } => {
                emitter.push_once(
                    name,
                    Record::Hom(HomRecord {
                        name: name.clone(),
                        source: source.clone(),
                        target: target.clone(),
                        map: None,
                        matrix: Some(hom.entries.clone()),
                    }),
                );
            }
            Resolved::Complex(c) => emitter.complex(name, c),
            Resolved::WindowedComplex(w) => {
                let (lo, hi) = w.window();
                let mut modules = BTreeMap::new();
                let mut dplus = BTreeMap::new();
                let mut dminus = BTreeMap::new();
                for n in lo..=hi {
                    let carrier_name = format!("{name}.{n}");
                    emitter.windowed(
                        &carrier_name,
                        &WindowedFreeSemimodule::new(w.rank_at(n).max(1), w.bound()),
                    );
                    modules.insert(n.to_string(), carrier_name);
                }
                for n in (lo + 1)..=hi {
                    for (tag, matrix, store) in [
                        ("dplus", w.dplus_at(n), &mut dplus),
                        ("dminus", w.dminus_at(n), &mut dminus),
                    ] {
                        let hom_name = format!("{name}.{tag}.{n}");
                        emitter.push_once(
                            &hom_name,
                            Record::Hom(HomRecord {
                                name: hom_name.clone(),
                                source: format!("{name}.{n}"),
                                target: format!("{name}.{}", n - 1),
                                map: None,
                                matrix: Some(matrix.entries.clone()),
                            }),
                        );
                        store.insert(n.to_string(), hom_name);
                    }
                }
                emitter.push_once(
                    name,
                    Record::Complex(ComplexRecord {
                        name: name.clone(),
                        modules,
                        dplus,
                        dminus,
                    }),
                );
            }
            Resolved::Morphism(m) => emitter.morphism(name, m),
            Resolved::Ses(ses) => {
                let kappa_name = format!("{name}.kappa");
                let sigma_name = format!("{name}.sigma");
                emitter.morphism(&kappa_name, ses.kappa());
                emitter.morphism(&sigma_name, ses.sigma());
                emitter.push_once(
                    name,
                    Record::Ses(SesRecord {
                        name: name.clone(),
                        kappa: kappa_name,
                        sigma: sigma_name,
                    }),
                );
            }
            Resolved::ConeRequest(m) => {
                let morphism_name = format!("{name}.morphism");
                emitter.morphism(&morphism_name, m);
                emitter.push_once(
                    name,
                    Record::ConeRequest(ConeRecord {
                        name: name.clone(),
                        morphism: morphism_name,
                    }),
                );
            }
        }
    }
    StructureFile {
        format: FORMAT_VERSION.to_owned(),
        records: emitter.records,
    }
}

/// Serializes to the canonical pretty-printed JSON text.
pub fn to_text(file: &StructureFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("structure files serialize");
    text.push('\n');
    text
}

/// A full structure-file dump of one sequence, for preserving soundness
/// alarms as replayable instances.
pub fn dump_ses(name: &str, ses: &SchreierSES) -> String {
    let mut doc = Document::default();
    doc.push_entry(name, Resolved::Ses(ses.clone()))
        .expect("fresh document accepts one entry");
    to_text(&serialize(&doc))
}

#[cfg(test)]
mod tests {
    use semh_core::fixtures;

    use super::*;

    fn roundtrip(doc: &Document) -> Document {
        let text = to_text(&serialize(doc));
        parse(&text).expect("serialized documents parse")
    }

    #[test]
    fn semimodule_and_semiring_roundtrip() {
        let mut doc = Document::default();
        doc.insert("l2", Resolved::Semimodule(fixtures::l2()))
            .unwrap();
        doc.insert("bool", Resolved::Semiring(fixtures::boolean_semiring()))
            .unwrap();
        doc.insert("l2b", Resolved::Semimodule(fixtures::l2_over_boolean()))
            .unwrap();
        doc.insert("incl", Resolved::Hom(fixtures::z2_into_z4()))
            .unwrap();
        let back = roundtrip(&doc);
        match back.get("l2") {
            Some(Resolved::Semimodule(m)) => assert_eq!(m, &fixtures::l2()),
            _ => panic!("l2 did not survive"),
        }
        match back.get("l2b") {
            Some(Resolved::Semimodule(m)) => assert_eq!(m, &fixtures::l2_over_boolean()),
            _ => panic!("l2b did not survive"),
        }
        match back.get("incl") {
            Some(Resolved::Hom(h)) => assert_eq!(h, &fixtures::z2_into_z4()),
            _ => panic!("incl did not survive"),
        }
    }

    #[test]
    fn ses_and_cone_roundtrip() {
        let mut doc = Document::default();
        doc.insert("snake", Resolved::Ses(fixtures::module_snake_ses()))
            .unwrap();
        doc.insert(
            "counterexample",
            Resolved::Ses(fixtures::counterexample_ses(&fixtures::l2())),
        )
        .unwrap();
        let back = roundtrip(&doc);
        match back.get("snake") {
            Some(Resolved::Ses(ses)) => {
                let original = fixtures::module_snake_ses();
                assert_eq!(ses.kappa(), original.kappa());
                assert_eq!(ses.sigma(), original.sigma());
                assert_eq!(ses.flags, original.flags);
            }
            _ => panic!("snake did not survive"),
        }
        match back.get("counterexample") {
            Some(Resolved::Ses(ses)) => {
                assert!(!ses.flags.sigma_is_pm);
                assert!(!ses.flags.c_cancellative);
            }
            _ => panic!("counterexample did not survive"),
        }
    }

    #[test]
    fn windowed_records_roundtrip() {
        let mut doc = Document::default();
        doc.insert(
            "free",
            Resolved::Windowed(WindowedFreeSemimodule::new(1, 32)),
        )
        .unwrap();
        let mut ranks = BTreeMap::new();
        ranks.insert(0i64, 1usize);
        ranks.insert(1, 1);
        let mut dplus = BTreeMap::new();
        dplus.insert(1i64, MatrixHom::new(vec![vec![2]], 1, 1).unwrap());
        let complex = WindowedComplex::new(32, ranks, dplus, BTreeMap::new()).unwrap();
        doc.insert("doubling", Resolved::WindowedComplex(complex.clone()))
            .unwrap();
        let back = roundtrip(&doc);
        match back.get("doubling") {
            Some(Resolved::WindowedComplex(w)) => assert_eq!(w, &complex),
            _ => panic!("windowed complex did not survive"),
        }
    }

    #[test]
    fn morphisms_between_different_windows_roundtrip() {
        // The cone injection maps a one-term complex into a two-term one;
        // its fringe components live on synthesized zero modules.
        let z4 = fixtures::cyclic(4);
        let x = fixtures::concentrated(&z4);
        let mut components = std::collections::BTreeMap::new();
        components.insert(
            0,
            semh_core::hom::Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap(),
        );
        let f = ChainMorphism::classify(x.clone(), x, components).unwrap();
        let cone = semh_core::cone::mapping_cone(&f).unwrap();
        let mut doc = Document::default();
        doc.push_entry("inject", Resolved::Morphism(cone.injection.clone()))
            .unwrap();
        let back = roundtrip(&doc);
        match back.get("inject") {
            Some(Resolved::Morphism(m)) => {
                assert_eq!(m.source().window(), (0, 0));
                assert_eq!(m.target().window(), (0, 1));
                assert!(m.is_pm());
                for n in -1..=2 {
                    assert_eq!(m.component_at(n), cone.injection.component_at(n));
                }
            }
            _ => panic!("injection did not survive"),
        }
    }

    #[test]
    fn unresolved_references_are_reported() {
        let text = r#"{"format":"semh-1","records":[
            {"kind":"hom","name":"f","source":"ghost","target":"ghost","map":{}}
        ]}"#;
        match parse(text) {
            Err(FormatError::UnresolvedReference(name)) => assert_eq!(name, "ghost"),
            other => panic!("expected an unresolved reference, got {other:?}"),
        }
    }

    #[test]
    fn version_mismatch_is_reported() {
        let text = r#"{"format":"semh-0","records":[]}"#;
        assert!(matches!(parse(text), Err(FormatError::Version(_))));
    }
}
