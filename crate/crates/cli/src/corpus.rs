//! Corpus generation: enumeration of small commutative monoids up to
//! isomorphism, enumeration of homs, the exhaustive and seeded families of
//! Schreier short exact sequences, ladder instances, and the bundled
//! worked examples.
//!
//! Generation is deterministic given the seed; isomorphic duplicates are
//! rejected by canonical form; every generated extension passes the full
//! Schreier validation before it is counted in any statistic.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use semh_core::chain::ChainComplex;
use semh_core::fixtures;
use semh_core::hom::{is_exact_at, Hom};
use semh_core::iso::canonical_add_table;
use semh_core::morphism::ChainMorphism;
use semh_core::schreier::{check_ses, SchreierSES};
use semh_core::semimodule::{FiniteSemimodule, Scalars, Subsemimodule};

/// Enumeration never goes past this carrier size.
pub const MONOID_SIZE_LIMIT: usize = 5;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("requested size {requested} exceeds the enumeration limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
}

/// Which backend a corpus runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Finite,
    Window { bound: u64 },
}

/// How corpus instances are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    AllMonoidsUpToIso,
    RandomExtensions { seed: u64, count: usize },
    PaperExamples,
}

/// A corpus request: carrier bound, backend and generator.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub max_carrier_size: usize,
    pub backend: Backend,
    pub generator: Generator,
}

/// A generated corpus: named sequences on the finite backend, or windowed
/// free carriers on the window backend.
#[derive(Debug, Default)]
pub struct Corpus {
    pub monoids: Vec<Arc<FiniteSemimodule>>,
    pub sequences: Vec<(String, SchreierSES)>,
    pub windowed: Vec<semh_core::windowed::WindowedFreeSemimodule>,
}

impl CorpusSpec {
    /// Generates the corpus. Deterministic given the seed; every sequence
    /// has passed the full Schreier validation.
    pub fn generate(&self) -> Result<Corpus, CorpusError> {
        let mut corpus = Corpus::default();
        if let Backend::Window { bound } = self.backend {
            for rank in 1..=self.max_carrier_size.min(2) {
                corpus
                    .windowed
                    .push(semh_core::windowed::WindowedFreeSemimodule::new(
                        rank, bound,
                    ));
            }
            return Ok(corpus);
        }
        match &self.generator {
            Generator::AllMonoidsUpToIso => {
                corpus.monoids = enumerate_monoids(self.max_carrier_size)?;
                // Sequence enumeration is complete only at size <= 3.
                corpus.sequences = exhaustive_ses_corpus(self.max_carrier_size.min(3))?
                    .into_iter()
                    .enumerate()
                    .map(|(i, ses)| (format!("exhaustive-{i}"), ses))
                    .collect();
            }
            Generator::RandomExtensions { seed, count } => {
                corpus.monoids = enumerate_monoids(self.max_carrier_size)?;
                corpus.sequences = random_ses_corpus(*seed, *count, self.max_carrier_size)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, ses)| (format!("random-{seed}-{i}"), ses))
                    .collect();
            }
            Generator::PaperExamples => {
                corpus.sequences = paper_examples(self.max_carrier_size.min(3))?;
            }
        }
        Ok(corpus)
    }
}

/// All commutative monoids up to isomorphism with at most `max_size`
/// elements, ordered by size and canonical table. Elements are named
/// `0..n-1` with `0` the identity.
pub fn enumerate_monoids(max_size: usize) -> Result<Vec<Arc<FiniteSemimodule>>, CorpusError> {
    if max_size > MONOID_SIZE_LIMIT {
        return Err(CorpusError::LimitExceeded {
            requested: max_size,
            limit: MONOID_SIZE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        enumerate_tables(n, &mut |table| {
            let monoid = build_monoid(n, table);
            canon.insert(canonical_add_table(&monoid));
        });
        for table in canon {
            let add: Vec<Vec<usize>> = (0..n)
                .map(|i| (0..n).map(|j| table[i * n + j]).collect())
                .collect();
            let elements = (0..n).map(|i| i.to_string()).collect();
            out.push(
                FiniteSemimodule::monoid(elements, add, 0)
                    .expect("canonical table is a valid monoid"),
            );
        }
    }
    Ok(out)
}

fn build_monoid(n: usize, table: &[Vec<usize>]) -> Arc<FiniteSemimodule> {
    let elements = (0..n).map(|i| i.to_string()).collect();
    FiniteSemimodule::monoid(elements, table.to_vec(), 0).expect("search output is a monoid")
}

/// Backtracking over commutative addition tables with 0 as the identity,
/// pruning on every associativity triple that is already determined.
fn enumerate_tables(n: usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    let unset = usize::MAX;
    let mut table = vec![vec![unset; n]; n];
    for i in 0..n {
        table[0][i] = i;
        table[i][0] = i;
    }
    // Cells (i, j) with 1 <= i <= j in lexicographic order.
    let mut cells = Vec::new();
    for i in 1..n {
        for j in i..n {
            cells.push((i, j));
        }
    }
    fn assoc_consistent(n: usize, table: &[Vec<usize>]) -> bool {
        let unset = usize::MAX;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                if ab == unset {
                    continue;
                }
                for c in 0..n {
                    let bc = table[b][c];
                    if bc == unset {
                        continue;
                    }
                    let left = table[ab][c];
                    let right = table[a][bc];
                    if left != unset && right != unset && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn fill(
        n: usize,
        cells: &[(usize, usize)],
        at: usize,
        table: &mut Vec<Vec<usize>>,
        visit: &mut impl FnMut(&[Vec<usize>]),
    ) {
        if at == cells.len() {
            visit(table);
            return;
        }
        let (i, j) = cells[at];
        for v in 0..n {
            table[i][j] = v;
            table[j][i] = v;
            if assoc_consistent(n, table) {
                fill(n, cells, at + 1, table, visit);
            }
        }
        table[i][j] = usize::MAX;
        table[j][i] = usize::MAX;
    }
    if n == 1 {
        visit(&table);
        return;
    }
    fill(n, &cells, 0, &mut table, visit);
}

/// All homs between two finite semimodules, in lexicographic map order.
pub fn all_homs(a: &Arc<FiniteSemimodule>, b: &Arc<FiniteSemimodule>) -> Vec<Hom> {
    let n = a.size();
    let m = b.size();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if let Ok(hom) = Hom::new(a.clone(), b.clone(), map.clone()) {
            out.push(hom);
        }
        // Advance the map like an odometer.
        let mut k = n;
        while k > 0 {
            k -= 1;
            map[k] += 1;
            if map[k] < m {
                break;
            }
            map[k] = 0;
            if k == 0 {
                return out;
            }
        }
        if n == 0 {
            return out;
        }
    }
}

pub fn surjective_homs(a: &Arc<FiniteSemimodule>, b: &Arc<FiniteSemimodule>) -> Vec<Hom> {
    all_homs(a, b)
        .into_iter()
        .filter(|h| h.is_surjective())
        .collect()
}

/// The groups among the enumerated monoids (finite cancellative commutative
/// monoids are groups).
pub fn module_pool(max_size: usize) -> Result<Vec<Arc<FiniteSemimodule>>, CorpusError> {
    Ok(enumerate_monoids(max_size)?
        .into_iter()
        .filter(|m| m.is_module())
        .collect())
}

fn zero_module() -> Arc<FiniteSemimodule> {
    FiniteSemimodule::zero_module(Scalars::Natural)
}

/// Builds the two-degree complex `m1 → m0` with the given differential pair.
fn two_term_paired(dp: Hom, dm: Hom) -> Arc<ChainComplex> {
    let mut modules = BTreeMap::new();
    modules.insert(1, dp.source().clone());
    modules.insert(0, dp.target().clone());
    let mut dplus = BTreeMap::new();
    dplus.insert(1, dp);
    let mut dminus = BTreeMap::new();
    dminus.insert(1, dm);
    Arc::new(ChainComplex::new(modules, dplus, dminus).expect("two-term complexes always chain"))
}

fn morphism_two_term(
    source: &Arc<ChainComplex>,
    target: &Arc<ChainComplex>,
    f1: Hom,
    f0: Hom,
) -> Option<ChainMorphism> {
    let mut components = BTreeMap::new();
    components.insert(1, f1);
    components.insert(0, f0);
    let m = ChainMorphism::classify(source.clone(), target.clone(), components).ok()?;
    m.is_plain().then_some(m)
}

/// The exhaustive two-degree corpus over monoids of bounded size: every
/// Schreier level shape, every differential pair on the middle row, and
/// every compatible differential pair on the outer rows, filtered to the
/// connecting-homomorphism hypotheses.
///
/// With carriers of at most three elements the fiber sizes of a Schreier
/// level multiply to the middle carrier size, so up to isomorphism the
/// only level shapes are `0 ↣ B ↠ B` and `B ↣ B ↠ 0`; the enumeration is
/// complete there and refuses larger bounds, where proper extensions
/// would appear and the family would no longer be exhaustive.
pub fn exhaustive_ses_corpus(max_size: usize) -> Result<Vec<SchreierSES>, CorpusError> {
    if max_size > 3 {
        return Err(CorpusError::LimitExceeded {
            requested: max_size,
            limit: 3,
        });
    }
    let pool = enumerate_monoids(max_size)?;
    let zero = zero_module();
    let mut corpus = Vec::new();

    #[derive(Clone, Copy, PartialEq)]
    enum LevelShape {
        /// `0 ↣ B ↠ B` with the identity quotient map.
        Quotient,
        /// `B ↣ B ↠ 0` with the identity sub map; requires `B` cancellative.
        Sub,
    }
    let shapes = [LevelShape::Quotient, LevelShape::Sub];

    for b1 in &pool {
        for b0 in &pool {
            let middle_homs = all_homs(b1, b0);
            for shape1 in shapes {
                if shape1 == LevelShape::Sub && !b1.is_cancellative() {
                    continue;
                }
                for shape0 in shapes {
                    if shape0 == LevelShape::Sub && !b0.is_cancellative() {
                        continue;
                    }
                    let (a1, c1) = match shape1 {
                        LevelShape::Quotient => (zero.clone(), b1.clone()),
                        LevelShape::Sub => (b1.clone(), zero.clone()),
                    };
                    let (a0, c0) = match shape0 {
                        LevelShape::Quotient => (zero.clone(), b0.clone()),
                        LevelShape::Sub => (b0.clone(), zero.clone()),
                    };
                    let kappa1 = match shape1 {
                        LevelShape::Quotient => Hom::zero(&zero, b1),
                        LevelShape::Sub => Hom::identity(b1),
                    };
                    let sigma1 = match shape1 {
                        LevelShape::Quotient => Hom::identity(b1),
                        LevelShape::Sub => Hom::zero(b1, &zero),
                    };
                    let kappa0 = match shape0 {
                        LevelShape::Quotient => Hom::zero(&zero, b0),
                        LevelShape::Sub => Hom::identity(b0),
                    };
                    let sigma0 = match shape0 {
                        LevelShape::Quotient => Hom::identity(b0),
                        LevelShape::Sub => Hom::zero(b0, &zero),
                    };
                    let a_homs = all_homs(&a1, &a0);
                    let c_homs = all_homs(&c1, &c0);
                    for dp in &middle_homs {
                        for dm in &middle_homs {
                            let b_row = two_term_paired(dp.clone(), dm.clone());
                            for dap in &a_homs {
                                for dam in &a_homs {
                                    // κ must be a morphism of complexes.
                                    if !plain_condition(dp, dm, dap, dam, &kappa1, &kappa0) {
                                        continue;
                                    }
                                    let a_row = two_term_paired(dap.clone(), dam.clone());
                                    for dcp in &c_homs {
                                        for dcm in &c_homs {
                                            if !plain_condition(dcp, dcm, dp, dm, &sigma1, &sigma0)
                                            {
                                                continue;
                                            }
                                            let c_row = two_term_paired(dcp.clone(), dcm.clone());
                                            let Some(kappa) = morphism_two_term(
                                                &a_row,
                                                &b_row,
                                                kappa1.clone(),
                                                kappa0.clone(),
                                            ) else {
                                                continue;
                                            };
                                            let Some(sigma) = morphism_two_term(
                                                &b_row,
                                                &c_row,
                                                sigma1.clone(),
                                                sigma0.clone(),
                                            ) else {
                                                continue;
                                            };
                                            let Ok(ses) = check_ses(kappa, sigma) else {
                                                continue;
                                            };
                                            if ses.flags.connecting_hypotheses() {
                                                corpus.push(ses);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(corpus)
}

/// The plain-morphism condition `∂'⁺f₁ + f₀d⁻ = ∂'⁻f₁ + f₀d⁺` at the only
/// nontrivial degree of a two-degree ladder, where `(d⁺, d⁻)` is the source
/// differential pair and `(∂'⁺, ∂'⁻)` the target pair.
fn plain_condition(
    target_dp: &Hom,
    target_dm: &Hom,
    source_dp: &Hom,
    source_dm: &Hom,
    f1: &Hom,
    f0: &Hom,
) -> bool {
    let carrier = target_dp.target();
    (0..f1.source().size()).all(|x| {
        let lhs = carrier.add(target_dp.apply(f1.apply(x)), f0.apply(source_dm.apply(x)));
        let rhs = carrier.add(target_dm.apply(f1.apply(x)), f0.apply(source_dp.apply(x)));
        lhs == rhs
    })
}

/// A seeded random corpus of Schreier sequences satisfying the
/// connecting-homomorphism hypotheses, drawn from three families: split
/// sums of a module row with a monoid row, mapping cones over module
/// targets, and module ladders with paired differentials.
pub fn random_ses_corpus(
    seed: u64,
    count: usize,
    max_size: usize,
) -> Result<Vec<SchreierSES>, CorpusError> {
    let monoids = enumerate_monoids(max_size)?;
    let modules = module_pool(max_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::new();
    let mut guard = 0usize;
    while corpus.len() < count && guard < count * 200 {
        guard += 1;
        let family = rng.random_range(0..3u32);
        let ses = match family {
            0 => random_split_ses(&mut rng, &modules, &monoids),
            1 => random_cone_ses(&mut rng, &modules, &monoids),
            _ => random_module_ses(&mut rng, &modules),
        };
        if let Some(ses) = ses {
            if ses.flags.connecting_hypotheses() {
                corpus.push(ses);
            }
        }
    }
    Ok(corpus)
}

fn random_complex(
    rng: &mut ChaCha8Rng,
    pool: &[Arc<FiniteSemimodule>],
) -> Option<Arc<ChainComplex>> {
    let m1 = pool.choose(rng)?.clone();
    let m0 = pool.choose(rng)?.clone();
    let homs = all_homs(&m1, &m0);
    let dp = homs.choose(rng)?.clone();
    let dm = homs.choose(rng)?.clone();
    Some(two_term_paired(dp, dm))
}

fn random_split_ses(
    rng: &mut ChaCha8Rng,
    modules: &[Arc<FiniteSemimodule>],
    monoids: &[Arc<FiniteSemimodule>],
) -> Option<SchreierSES> {
    let a_row = random_complex(rng, modules)?;
    let c_row = random_complex(rng, monoids)?;
    let mut sums = BTreeMap::new();
    let mut b_modules = BTreeMap::new();
    for n in 0..=1 {
        let sum =
            semh_core::semimodule::DirectSum::new(&a_row.module_at(n), &c_row.module_at(n)).ok()?;
        b_modules.insert(n, sum.module.clone());
        sums.insert(n, sum);
    }
    let diagonal = |da: &Hom, dc: &Hom| -> Option<Hom> {
        let sum1 = &sums[&1];
        let sum0 = &sums[&0];
        let map: Vec<usize> = (0..sum1.module.size())
            .map(|k| {
                let (a, c) = sum1.split(k);
                sum0.pair(da.apply(a), dc.apply(c))
            })
            .collect();
        Hom::new(sum1.module.clone(), sum0.module.clone(), map).ok()
    };
    let mut dplus = BTreeMap::new();
    dplus.insert(1, diagonal(&a_row.dplus_at(1), &c_row.dplus_at(1))?);
    let mut dminus = BTreeMap::new();
    dminus.insert(1, diagonal(&a_row.dminus_at(1), &c_row.dminus_at(1))?);
    let b_row = Arc::new(ChainComplex::new(b_modules, dplus, dminus).ok()?);

    let mut kappa_components = BTreeMap::new();
    let mut sigma_components = BTreeMap::new();
    for n in 0..=1 {
        let sum = &sums[&n];
        let inj: Vec<usize> = (0..a_row.module_at(n).size())
            .map(|a| sum.pair(a, c_row.module_at(n).zero()))
            .collect();
        kappa_components.insert(
            n,
            Hom::new(a_row.module_at(n), sum.module.clone(), inj).ok()?,
        );
        let proj: Vec<usize> = (0..sum.module.size()).map(|k| sum.split(k).1).collect();
        sigma_components.insert(
            n,
            Hom::new(sum.module.clone(), c_row.module_at(n), proj).ok()?,
        );
    }
    let kappa = ChainMorphism::classify(a_row, b_row.clone(), kappa_components).ok()?;
    let sigma = ChainMorphism::classify(b_row, c_row, sigma_components).ok()?;
    check_ses(kappa, sigma).ok()
}

fn random_cone_ses(
    rng: &mut ChaCha8Rng,
    modules: &[Arc<FiniteSemimodule>],
    monoids: &[Arc<FiniteSemimodule>],
) -> Option<SchreierSES> {
    let f = random_cone_morphism(rng, modules, monoids)?;
    semh_core::cone::mapping_cone(&f).ok().map(|c| c.ses)
}

/// A random plain morphism from a monoid complex into a module complex,
/// as used by the cone suites.
pub fn random_cone_morphism(
    rng: &mut ChaCha8Rng,
    modules: &[Arc<FiniteSemimodule>],
    monoids: &[Arc<FiniteSemimodule>],
) -> Option<ChainMorphism> {
    let x = random_complex(rng, monoids)?;
    let xp = random_complex(rng, modules)?;
    let h1 = all_homs(&x.module_at(1), &xp.module_at(1));
    let h0 = all_homs(&x.module_at(0), &xp.module_at(0));
    // Try a handful of random component pairs for the morphism identity.
    for _ in 0..12 {
        let f1 = h1.choose(rng)?.clone();
        let f0 = h0.choose(rng)?.clone();
        if let Some(m) = morphism_two_term(&x, &xp, f1, f0) {
            return Some(m);
        }
    }
    None
}

fn random_module_ses(
    rng: &mut ChaCha8Rng,
    modules: &[Arc<FiniteSemimodule>],
) -> Option<SchreierSES> {
    // Levelwise Z2 ↣ Z4 ↠ Z2-style data: a random module extension at both
    // degrees with random compatible differentials.
    let z2 = fixtures::cyclic(2);
    let z4 = fixtures::cyclic(4);
    let choice = rng.random_range(0..2u32);
    let (a_carrier, b_carrier, c_carrier, kappa_level, sigma_level) = if choice == 0 {
        (
            z2.clone(),
            z4.clone(),
            z2.clone(),
            fixtures::z2_into_z4(),
            fixtures::z4_to_z2_reduction(),
        )
    } else {
        let g = modules.choose(rng)?.clone();
        let zero = zero_module();
        (
            g.clone(),
            g.clone(),
            zero.clone(),
            Hom::identity(&g),
            Hom::zero(&g, &zero),
        )
    };
    let b_homs = all_homs(&b_carrier, &b_carrier);
    let dp = b_homs.choose(rng)?.clone();
    let dm = b_homs.choose(rng)?.clone();
    let b_row = two_term_paired(dp.clone(), dm.clone());

    let a_candidates: Vec<(Hom, Hom)> = {
        let homs = all_homs(&a_carrier, &a_carrier);
        let mut valid = Vec::new();
        for dap in &homs {
            for dam in &homs {
                if plain_condition(&dp, &dm, dap, dam, &kappa_level, &kappa_level) {
                    valid.push((dap.clone(), dam.clone()));
                }
            }
        }
        valid
    };
    let c_candidates: Vec<(Hom, Hom)> = {
        let homs = all_homs(&c_carrier, &c_carrier);
        let mut valid = Vec::new();
        for dcp in &homs {
            for dcm in &homs {
                if plain_condition(dcp, dcm, &dp, &dm, &sigma_level, &sigma_level) {
                    valid.push((dcp.clone(), dcm.clone()));
                }
            }
        }
        valid
    };
    let (dap, dam) = a_candidates.choose(rng)?.clone();
    let (dcp, dcm) = c_candidates.choose(rng)?.clone();
    let a_row = two_term_paired(dap, dam);
    let c_row = two_term_paired(dcp, dcm);
    let kappa = morphism_two_term(&a_row, &b_row, kappa_level.clone(), kappa_level)?;
    let sigma = morphism_two_term(&b_row, &c_row, sigma_level.clone(), sigma_level)?;
    check_ses(kappa, sigma).ok()
}

/// A commutative two-row ladder instance for the exactness-transfer lemma:
/// the bottom row is exact with a normal second map, `f` is surjective,
/// `phi` injective, and the squares commute with `βα = 0`.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub alpha: Hom,
    pub beta: Hom,
    pub alpha_bottom: Hom,
    pub beta_bottom: Hom,
    pub f: Hom,
    pub phi: Hom,
    pub psi: Hom,
}

impl Ladder {
    /// Recomputes the hypotheses.
    pub fn hypotheses_hold(&self) -> bool {
        let commutes_left = (0..self.f.source().size()).all(|x| {
            self.phi.apply(self.alpha.apply(x)) == self.alpha_bottom.apply(self.f.apply(x))
        });
        let commutes_right = (0..self.phi.source().size()).all(|y| {
            self.psi.apply(self.beta.apply(y)) == self.beta_bottom.apply(self.phi.apply(y))
        });
        let beta_alpha_zero = (0..self.f.source().size())
            .all(|x| self.beta.apply(self.alpha.apply(x)) == self.beta.target().zero());
        commutes_left
            && commutes_right
            && beta_alpha_zero
            && self.f.is_surjective()
            && self.phi.is_injective()
            && is_exact_at(&self.alpha_bottom, &self.beta_bottom)
                .map(|c| c.exact)
                .unwrap_or(false)
            && self.beta_bottom.is_normal()
    }

    /// The conclusion: the top row is exact and `β` is normal.
    pub fn conclusion_holds(&self) -> bool {
        is_exact_at(&self.alpha, &self.beta)
            .map(|c| c.exact)
            .unwrap_or(false)
            && self.beta.is_normal()
    }
}

/// Seeded ladder instances satisfying the lemma's hypotheses.
pub fn ladder_corpus(seed: u64, count: usize, max_size: usize) -> Result<Vec<Ladder>, CorpusError> {
    let monoids = enumerate_monoids(max_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut guard = 0usize;
    while out.len() < count && guard < count * 400 {
        guard += 1;
        let Some(ladder) = random_ladder(&mut rng, &monoids) else {
            continue;
        };
        if ladder.hypotheses_hold() {
            out.push(ladder);
        }
    }
    Ok(out)
}

fn subsemimodules_containing(
    carrier: &Arc<FiniteSemimodule>,
    seed_members: &[usize],
) -> Vec<Subsemimodule> {
    // Grow the seed through closure under addition; enumerate closures of
    // the seed plus each extra element (small carriers only).
    let close = |mut members: BTreeSet<usize>| -> Option<Subsemimodule> {
        members.insert(carrier.zero());
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = members.iter().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    grew |= members.insert(carrier.add(a, b));
                }
            }
            if !grew {
                break;
            }
        }
        Subsemimodule::new(carrier.clone(), members.into_iter().collect()).ok()
    };
    let base: BTreeSet<usize> = seed_members.iter().copied().collect();
    let mut out = Vec::new();
    if let Some(sub) = close(base.clone()) {
        out.push(sub);
    }
    for extra in 0..carrier.size() {
        let mut grown = base.clone();
        grown.insert(extra);
        if let Some(sub) = close(grown) {
            if !out.contains(&sub) {
                out.push(sub);
            }
        }
    }
    out
}

fn random_ladder(rng: &mut ChaCha8Rng, pool: &[Arc<FiniteSemimodule>]) -> Option<Ladder> {
    // Bottom row: α' random, β' the projection onto Y'/Im(α'), kept only
    // when the row is exact (the projection is always normal).
    let x_bottom = pool.choose(rng)?.clone();
    let y_bottom = pool.choose(rng)?.clone();
    let alpha_bottom = all_homs(&x_bottom, &y_bottom).choose(rng)?.clone();
    let image = alpha_bottom.image();
    let (_, beta_bottom) =
        semh_core::congruence::quotient_by_subsemimodule(&y_bottom, &image).ok()?;
    if !is_exact_at(&alpha_bottom, &beta_bottom).ok()?.exact {
        return None;
    }

    // Top row: X ↠ X' random surjection, Y a subsemimodule of Y' containing
    // Im(α'), φ the inclusion, β the restriction of β'.
    let x_top = pool.choose(rng)?.clone();
    let surjections = surjective_homs(&x_top, &x_bottom);
    let f = surjections.choose(rng)?.clone();
    let candidates = subsemimodules_containing(&y_bottom, image.members());
    let y_sub = candidates.choose(rng)?.clone();
    let mat = y_sub.materialize();
    let alpha_map: Vec<usize> = (0..x_top.size())
        .map(|x| {
            mat.from_parent[alpha_bottom.apply(f.apply(x))]
                .expect("image of alpha lies inside the chosen subsemimodule")
        })
        .collect();
    let alpha = Hom::new(x_top.clone(), mat.module.clone(), alpha_map).ok()?;
    let beta = beta_bottom.compose(&mat.include).ok()?;
    let psi = Hom::identity(beta.target());
    Some(Ladder {
        alpha,
        beta,
        alpha_bottom,
        beta_bottom,
        f,
        phi: mat.include,
        psi,
    })
}

/// The bundled worked sequences over a pool of monoids: the counterexample
/// ladder per monoid plus the module snake instance.
pub fn paper_examples(max_size: usize) -> Result<Vec<(String, SchreierSES)>, CorpusError> {
    let mut out = vec![("module-snake".to_owned(), fixtures::module_snake_ses())];
    for (i, monoid) in enumerate_monoids(max_size)?.into_iter().enumerate() {
        let name = format!("counterexample-{i}[n={}]", monoid.size());
        out.push((name, fixtures::counterexample_ses(&monoid)));
    }
    Ok(out)
}
