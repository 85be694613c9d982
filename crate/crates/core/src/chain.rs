//! Chain complexes with paired differentials, cycles, the homology
//! congruence, and the completion of complexes.
//!
//! A complex is a bounded family of semimodules `X_n` with differentials
//! `∂ₙ⁺, ∂ₙ⁻ : X_n → X_{n-1}` satisfying
//! `∂ₙ⁺∂ₙ₊₁⁺ + ∂ₙ⁻∂ₙ₊₁⁻ = ∂ₙ⁺∂ₙ₊₁⁻ + ∂ₙ⁻∂ₙ₊₁⁺`. Ordinary complexes are
//! the special case `∂⁻ = 0`. Outside the window every module is the zero
//! semimodule.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::completion::{complete, complete_hom_with, CompletionResult};
use crate::congruence::Congruence;
use crate::error::AlgebraError;
use crate::hom::Hom;
use crate::semimodule::{FiniteSemimodule, Scalars, Subsemimodule};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("chain condition fails at degree {degree} on element {witness}")]
    ChainConditionViolation { degree: i64, witness: String },

    #[error("module window is empty or not contiguous")]
    WindowNotContiguous,

    #[error("mixed scalar bases inside one complex")]
    MixedScalars,

    #[error("differential at degree {0} has mismatched endpoints")]
    DifferentialMismatch(i64),

    #[error("differential at degree {0} lies outside the window")]
    DifferentialOutsideWindow(i64),

    #[error("operation requires an ordinary complex of modules")]
    NotModule,

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// A validated bounded chain complex of finite semimodules.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    scalars: Scalars,
    lo: i64,
    hi: i64,
    modules: Vec<Arc<FiniteSemimodule>>,
    dplus: Vec<Hom>,
    dminus: Vec<Hom>,
    zero_module: Arc<FiniteSemimodule>,
}

impl ChainComplex {
    /// Validates raw data into a chain complex (the `validate_complex`
    /// entry point). Differentials may be omitted, defaulting to zero maps;
    /// provided ones must connect adjacent window degrees.
    pub fn new(
        modules: BTreeMap<i64, Arc<FiniteSemimodule>>,
        mut dplus: BTreeMap<i64, Hom>,
        mut dminus: BTreeMap<i64, Hom>,
    ) -> Result<Self, ChainError> {
        let lo = *modules
            .keys()
            .next()
            .ok_or(ChainError::WindowNotContiguous)?;
        let hi = *modules.keys().last().unwrap();
        if modules.len() != (hi - lo + 1) as usize {
            return Err(ChainError::WindowNotContiguous);
        }
        let scalars = modules[&lo].scalars().clone();
        if modules.values().any(|m| m.scalars() != &scalars) {
            return Err(ChainError::MixedScalars);
        }
        let zero_module = FiniteSemimodule::zero_module(scalars.clone());
        for key in dplus.keys().chain(dminus.keys()) {
            if *key <= lo || *key > hi {
                return Err(ChainError::DifferentialOutsideWindow(*key));
            }
        }
        let ordered: Vec<Arc<FiniteSemimodule>> = (lo..=hi).map(|n| modules[&n].clone()).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for n in (lo + 1)..=hi {
            let src = &ordered[(n - lo) as usize];
            let tgt = &ordered[(n - lo - 1) as usize];
            let dp = dplus.remove(&n).unwrap_or_else(|| Hom::zero(src, tgt));
            let dm = dminus.remove(&n).unwrap_or_else(|| Hom::zero(src, tgt));
            if dp.source() != src || dp.target() != tgt || dm.source() != src || dm.target() != tgt
            {
                return Err(ChainError::DifferentialMismatch(n));
            }
            plus.push(dp);
            minus.push(dm);
        }
        let complex = ChainComplex {
            scalars,
            lo,
            hi,
            modules: ordered,
            dplus: plus,
            dminus: minus,
            zero_module,
        };
        complex.check_chain_condition()?;
        Ok(complex)
    }

    fn check_chain_condition(&self) -> Result<(), ChainError> {
        for m in (self.lo + 2)..=self.hi {
            let x_m = self.module_at(m);
            let x_prev = self.module_at(m - 2);
            let dp_m = self.dplus_at(m);
            let dm_m = self.dminus_at(m);
            let dp = self.dplus_at(m - 1);
            let dm = self.dminus_at(m - 1);
            for x in 0..x_m.size() {
                let lhs = x_prev.add(dp.apply(dp_m.apply(x)), dm.apply(dm_m.apply(x)));
                let rhs = x_prev.add(dp.apply(dm_m.apply(x)), dm.apply(dp_m.apply(x)));
                if lhs != rhs {
                    return Err(ChainError::ChainConditionViolation {
                        degree: m,
                        witness: x_m.name_of(x).to_owned(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn scalars(&self) -> &Scalars {
        &self.scalars
    }

    pub fn zero_module(&self) -> &Arc<FiniteSemimodule> {
        &self.zero_module
    }

    /// The module at degree `n`; the zero semimodule outside the window.
    pub fn module_at(&self, n: i64) -> Arc<FiniteSemimodule> {
        if n < self.lo || n > self.hi {
            self.zero_module.clone()
        } else {
            self.modules[(n - self.lo) as usize].clone()
        }
    }

    /// `∂ₙ⁺ : X_n → X_{n-1}`, a zero map outside the stored range.
    pub fn dplus_at(&self, n: i64) -> Hom {
        if n > self.lo && n <= self.hi {
            self.dplus[(n - self.lo - 1) as usize].clone()
        } else {
            Hom::zero(&self.module_at(n), &self.module_at(n - 1))
        }
    }

    pub fn dminus_at(&self, n: i64) -> Hom {
        if n > self.lo && n <= self.hi {
            self.dminus[(n - self.lo - 1) as usize].clone()
        } else {
            Hom::zero(&self.module_at(n), &self.module_at(n - 1))
        }
    }

    /// True when every stored `∂⁻` is the zero map.
    pub fn is_ordinary(&self) -> bool {
        self.dminus.iter().all(|d| d.is_zero_map())
    }

    pub fn degreewise_cancellative(&self) -> bool {
        self.modules.iter().all(|m| m.is_cancellative())
    }

    pub fn degreewise_modules(&self) -> bool {
        self.modules.iter().all(|m| m.is_module())
    }

    pub fn is_zero_complex(&self) -> bool {
        self.modules.iter().all(|m| m.is_trivial())
    }

    /// The `n`-cycles `Z_n = {x | ∂ₙ⁺(x) = ∂ₙ⁻(x)}` as a verified
    /// subsemimodule of `X_n`.
    pub fn cycles(&self, n: i64) -> Subsemimodule {
        let x_n = self.module_at(n);
        let dp = self.dplus_at(n);
        let dm = self.dminus_at(n);
        let members: Vec<usize> = (0..x_n.size())
            .filter(|&x| dp.apply(x) == dm.apply(x))
            .collect();
        Subsemimodule::new(x_n, members).expect("cycles form a subsemimodule")
    }

    /// The homology presentation at degree `n`: cycles, the congruence
    /// `ρ_n` with replayable `(u, v)` witnesses, and the quotient `H_n`.
    pub fn homology(&self, n: i64) -> Result<HomologyPresentation, ChainError> {
        let x_n = self.module_at(n);
        let x_up = self.module_at(n + 1);
        let dp = self.dplus_at(n + 1);
        let dm = self.dminus_at(n + 1);

        let cycles = self.cycles(n);
        let mat = cycles.materialize();
        let z = mat.module.clone();
        let k = z.size();

        // ρ_n by direct enumeration of (u, v) over X_{n+1}²; least witness kept.
        let mut related = vec![vec![false; k]; k];
        let mut witnesses: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for i in 0..k {
            for j in i..k {
                let xi = mat.to_parent[i];
                let xj = mat.to_parent[j];
                let mut hit = None;
                'search: for u in 0..x_up.size() {
                    for v in 0..x_up.size() {
                        let lhs = x_n.add(xi, x_n.add(dp.apply(u), dm.apply(v)));
                        let rhs = x_n.add(xj, x_n.add(dp.apply(v), dm.apply(u)));
                        if lhs == rhs {
                            hit = Some((u, v));
                            break 'search;
                        }
                    }
                }
                if let Some((u, v)) = hit {
                    related[i][j] = true;
                    related[j][i] = true;
                    witnesses.insert((xi, xj), (u, v));
                    witnesses.insert((xj, xi), (v, u));
                }
            }
        }
        // ρ_n is a congruence in general; re-prove it on this instance.
        let congruence = Congruence::from_relation(&z, |i, j| related[i][j])
            .map_err(|e| ChainError::Internal(format!("rho is not a congruence: {e}")))?;
        let q = congruence.quotient();

        let presentation = HomologyPresentation {
            degree: n,
            cycles,
            cycle_module: z,
            include: mat.include,
            congruence,
            module: q.module,
            projection: q.projection,
            to_parent: mat.to_parent,
            from_parent: mat.from_parent,
            witnesses,
        };
        presentation.replay_witnesses(&x_n, &dp, &dm)?;
        if self.is_ordinary() {
            self.check_ordinary_presentation(&presentation, &dp)?;
        }
        Ok(presentation)
    }

    /// For an ordinary complex, `H_k` must agree with
    /// `Ker(∂ₖ) / ∂ₖ₊₁(X_{k+1})` computed through the congruence-quotient
    /// route.
    fn check_ordinary_presentation(
        &self,
        h: &HomologyPresentation,
        dp_up: &Hom,
    ) -> Result<(), ChainError> {
        let image_members: Vec<usize> = dp_up
            .image()
            .members()
            .iter()
            .filter_map(|&i| h.from_parent[i])
            .collect();
        if image_members.len() != dp_up.image().size() {
            return Err(ChainError::Internal(
                "boundary image is not contained in the cycles".into(),
            ));
        }
        let sub = Subsemimodule::new(h.cycle_module.clone(), image_members)
            .map_err(|e| ChainError::Internal(format!("boundary image: {e}")))?;
        let (quotient, projection) =
            crate::congruence::quotient_by_subsemimodule(&h.cycle_module, &sub)
                .map_err(|e| ChainError::Internal(format!("kernel-mod-image quotient: {e}")))?;
        if quotient.size() != h.module.size() {
            return Err(ChainError::Internal(
                "homology differs from kernel mod image on an ordinary complex".into(),
            ));
        }
        for i in 0..h.cycle_module.size() {
            for j in 0..h.cycle_module.size() {
                if (projection.apply(i) == projection.apply(j))
                    != (h.projection.apply(i) == h.projection.apply(j))
                {
                    return Err(ChainError::Internal(
                        "homology classes differ from kernel mod image".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The shifted complex `X[-1]` with `X[-1]_{n} = X_{n-1}` and the roles
    /// of the differentials swapped.
    pub fn shift_minus_one(&self) -> Result<ChainComplex, ChainError> {
        let mut modules = BTreeMap::new();
        for n in self.lo..=self.hi {
            modules.insert(n + 1, self.module_at(n));
        }
        let mut dplus = BTreeMap::new();
        let mut dminus = BTreeMap::new();
        for n in (self.lo + 1)..=self.hi {
            dplus.insert(n + 1, self.dminus_at(n));
            dminus.insert(n + 1, self.dplus_at(n));
        }
        ChainComplex::new(modules, dplus, dminus)
    }

    /// Completes the complex degreewise: the ordinary complex
    /// `{K(X_n), K(∂⁺) - K(∂⁻)}` of modules, the paired form
    /// `{K(X_n), K(∂⁺), K(∂⁻)}`, and the canonical morphisms from `X`.
    pub fn complete(self: &Arc<Self>) -> Result<CompletedComplex, ChainError> {
        let mut level = BTreeMap::new();
        for n in self.lo..=self.hi {
            level.insert(n, complete(&self.module_at(n)));
        }
        let zero_completion = complete(&self.zero_module);
        let level_at = |n: i64| level.get(&n).unwrap_or(&zero_completion);

        let mut modules = BTreeMap::new();
        for n in self.lo..=self.hi {
            modules.insert(n, level_at(n).completed.clone());
        }
        let mut kplus = BTreeMap::new();
        let mut kminus = BTreeMap::new();
        let mut ordinary_d = BTreeMap::new();
        for n in (self.lo + 1)..=self.hi {
            let kp = complete_hom_with(&self.dplus_at(n), level_at(n), level_at(n - 1));
            let km = complete_hom_with(&self.dminus_at(n), level_at(n), level_at(n - 1));
            let tgt = level_at(n - 1).completed.clone();
            let diff_map: Vec<usize> = (0..kp.source().size())
                .map(|x| {
                    let neg = tgt.neg(km.apply(x)).expect("completed carrier is a group");
                    tgt.add(kp.apply(x), neg)
                })
                .collect();
            let diff = Hom::new(kp.source().clone(), tgt, diff_map)?;
            ordinary_d.insert(n, diff);
            kplus.insert(n, kp);
            kminus.insert(n, km);
        }
        let ordinary = Arc::new(ChainComplex::new(
            modules.clone(),
            ordinary_d,
            BTreeMap::new(),
        )?);
        let paired = Arc::new(ChainComplex::new(modules, kplus, kminus)?);

        let mut components = BTreeMap::new();
        for n in self.lo..=self.hi {
            components.insert(n, level_at(n).canonical.clone());
        }
        let canonical_ordinary = crate::morphism::ChainMorphism::classify(
            self.clone(),
            ordinary.clone(),
            components.clone(),
        )?;
        let canonical_paired =
            crate::morphism::ChainMorphism::classify(self.clone(), paired.clone(), components)?;
        if !canonical_paired.is_pm() {
            return Err(ChainError::Internal(
                "canonical morphism into the paired completion is not a ±-morphism".into(),
            ));
        }
        if !canonical_ordinary.is_plain() {
            return Err(ChainError::Internal(
                "canonical morphism into the ordinary completion is not a morphism".into(),
            ));
        }
        Ok(CompletedComplex {
            level,
            ordinary,
            paired,
            canonical_ordinary,
            canonical_paired,
        })
    }

    /// Classical homology `Ker(dₙ)/Im(dₙ₊₁)` of an ordinary complex of
    /// modules, by direct kernel/image enumeration. This code path is kept
    /// independent of the congruence machinery and serves as the oracle.
    pub fn classical_homology(&self, n: i64) -> Result<ClassicalHomology, ChainError> {
        if !self.is_ordinary() || !self.degreewise_modules() {
            return Err(ChainError::NotModule);
        }
        let x_n = self.module_at(n);
        let d_n = self.dplus_at(n);
        let d_up = self.dplus_at(n + 1);

        let target_zero = d_n.target().zero();
        let kernel: Vec<usize> = (0..x_n.size())
            .filter(|&x| d_n.apply(x) == target_zero)
            .collect();
        let mut image: Vec<usize> = d_up.map().to_vec();
        image.sort_unstable();
        image.dedup();

        let in_image = |x: usize| image.binary_search(&x).is_ok();
        let related = |x: usize, y: usize| {
            let ny = x_n.neg(y).expect("module element has an inverse");
            in_image(x_n.add(x, ny))
        };

        // Partition the kernel by the image cosets.
        let mut class_of_kernel: Vec<usize> = Vec::with_capacity(kernel.len());
        let mut reps: Vec<usize> = Vec::new();
        for &x in &kernel {
            match reps.iter().position(|&r| related(x, r)) {
                Some(c) => class_of_kernel.push(c),
                None => {
                    reps.push(x);
                    class_of_kernel.push(reps.len() - 1);
                }
            }
        }
        let k = reps.len();
        let elements: Vec<String> = reps
            .iter()
            .map(|&r| format!("[{}]", x_n.name_of(r)))
            .collect();
        let kernel_pos = |x: usize| kernel.binary_search(&x).expect("closed under addition");
        let mut add = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                add[i][j] = class_of_kernel[kernel_pos(x_n.add(reps[i], reps[j]))];
            }
        }
        let zero = class_of_kernel[kernel_pos(x_n.zero())];
        let module = match x_n.scalars() {
            Scalars::Natural => {
                FiniteSemimodule::monoid(elements, add, zero).map_err(ChainError::Algebra)?
            }
            Scalars::Semiring(sr) => {
                let mut action = vec![vec![0usize; k]; sr.size()];
                for l in 0..sr.size() {
                    for (i, &r) in reps.iter().enumerate() {
                        action[l][i] = class_of_kernel[kernel_pos(x_n.act(l, r))];
                    }
                }
                FiniteSemimodule::over_semiring(sr.clone(), elements, add, zero, action)
                    .map_err(ChainError::Algebra)?
            }
        };
        let mut class_of = vec![None; x_n.size()];
        for (pos, &x) in kernel.iter().enumerate() {
            class_of[x] = Some(class_of_kernel[pos]);
        }
        Ok(ClassicalHomology {
            degree: n,
            module,
            kernel,
            class_of,
        })
    }
}

/// Cycles, the congruence `ρ_n` with witnesses, and the quotient `H_n`.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    pub degree: i64,
    pub cycles: Subsemimodule,
    pub cycle_module: Arc<FiniteSemimodule>,
    pub include: Hom,
    pub congruence: Congruence,
    pub module: Arc<FiniteSemimodule>,
    pub projection: Hom,
    to_parent: Vec<usize>,
    from_parent: Vec<Option<usize>>,
    witnesses: BTreeMap<(usize, usize), (usize, usize)>,
}

impl HomologyPresentation {
    pub fn size(&self) -> usize {
        self.module.size()
    }

    /// The homology class of a parent element, when it is a cycle.
    pub fn class_of(&self, x_parent: usize) -> Option<usize> {
        self.from_parent[x_parent].map(|i| self.projection.apply(i))
    }

    pub fn related(&self, x_parent: usize, y_parent: usize) -> Option<bool> {
        Some(self.class_of(x_parent)? == self.class_of(y_parent)?)
    }

    /// The `(u, v)` certificate for two related cycles, in parent indices.
    pub fn witness(&self, x_parent: usize, y_parent: usize) -> Option<(usize, usize)> {
        self.witnesses.get(&(x_parent, y_parent)).copied()
    }

    /// All stored `(x, y) -> (u, v)` certificates, in parent indices.
    pub fn witness_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &(usize, usize))> {
        self.witnesses.iter()
    }

    /// The least cycle (as a parent index) in homology class `h`.
    pub fn class_rep(&self, h: usize) -> usize {
        let i = (0..self.cycle_module.size())
            .find(|&i| self.projection.apply(i) == h)
            .expect("every class has a member");
        self.to_parent[i]
    }

    /// Cycle members (parent indices) of homology class `h`.
    pub fn class_members(&self, h: usize) -> Vec<usize> {
        (0..self.cycle_module.size())
            .filter(|&i| self.projection.apply(i) == h)
            .map(|i| self.to_parent[i])
            .collect()
    }

    fn replay_witnesses(
        &self,
        x_n: &Arc<FiniteSemimodule>,
        dp_up: &Hom,
        dm_up: &Hom,
    ) -> Result<(), ChainError> {
        for (&(x, y), &(u, v)) in &self.witnesses {
            let lhs = x_n.add(x, x_n.add(dp_up.apply(u), dm_up.apply(v)));
            let rhs = x_n.add(y, x_n.add(dp_up.apply(v), dm_up.apply(u)));
            if lhs != rhs {
                return Err(ChainError::Internal(format!(
                    "stored witness for ({}, {}) does not replay",
                    x_n.name_of(x),
                    x_n.name_of(y)
                )));
            }
        }
        Ok(())
    }
}

/// A classical kernel-mod-image homology carrier (the oracle side).
#[derive(Debug, Clone)]
pub struct ClassicalHomology {
    pub degree: i64,
    pub module: Arc<FiniteSemimodule>,
    pub kernel: Vec<usize>,
    /// Parent index -> class, defined on kernel members.
    pub class_of: Vec<Option<usize>>,
}

impl ClassicalHomology {
    pub fn size(&self) -> usize {
        self.module.size()
    }
}

/// A degreewise completion of a complex: its ordinary and paired forms plus
/// the canonical morphisms from the original complex.
#[derive(Debug, Clone)]
pub struct CompletedComplex {
    pub level: BTreeMap<i64, CompletionResult>,
    pub ordinary: Arc<ChainComplex>,
    pub paired: Arc<ChainComplex>,
    pub canonical_ordinary: crate::morphism::ChainMorphism,
    pub canonical_paired: crate::morphism::ChainMorphism,
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::iso;

    use super::*;

    #[test]
    fn ordinary_two_term_complex_is_valid() {
        let x = fixtures::two_term(fixtures::z2_into_z4());
        assert!(x.is_ordinary());
        assert_eq!(x.window(), (0, 1));
    }

    #[test]
    fn chain_condition_violation_is_reported_at_the_upper_degree() {
        let z2 = fixtures::cyclic(2);
        let mut modules = BTreeMap::new();
        for n in -1..=1 {
            modules.insert(n, z2.clone());
        }
        let mut dplus = BTreeMap::new();
        dplus.insert(1, Hom::identity(&z2));
        dplus.insert(0, Hom::identity(&z2));
        let err = ChainComplex::new(modules, dplus, BTreeMap::new()).unwrap_err();
        assert_eq!(
            err,
            ChainError::ChainConditionViolation {
                degree: 1,
                witness: "1".into()
            }
        );
    }

    #[test]
    fn cycles_of_the_doubling_complex() {
        let x = fixtures::two_term(fixtures::z2_into_z4());
        // Z_1 = Ker(incl ×2) = {0}, Z_0 = Z4 entire.
        assert_eq!(x.cycles(1).members(), &[0]);
        assert!(x.cycles(0).is_full());
    }

    #[test]
    fn homology_of_z4_doubling_complex() {
        // Z4 --×2--> Z4 in degrees 1, 0.
        let z4 = fixtures::cyclic(4);
        let times2 = Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let x = fixtures::two_term(times2);
        let h1 = x.homology(1).unwrap();
        let h0 = x.homology(0).unwrap();
        assert!(iso::are_isomorphic(&h1.module, &fixtures::cyclic(2)));
        assert!(iso::are_isomorphic(&h0.module, &fixtures::cyclic(2)));

        // The classical oracle agrees.
        let c1 = x.classical_homology(1).unwrap();
        let c0 = x.classical_homology(0).unwrap();
        assert!(iso::are_isomorphic(&h1.module, &c1.module));
        assert!(iso::are_isomorphic(&h0.module, &c0.module));
    }

    #[test]
    fn classical_homology_of_zero_differentials() {
        let z2 = fixtures::cyclic(2);
        let x = fixtures::two_term(Hom::zero(&z2, &z2));
        for n in 0..=1 {
            let c = x.classical_homology(n).unwrap();
            assert!(iso::are_isomorphic(&c.module, &z2));
        }
        let zero = fixtures::zero_complex(z2.scalars().clone(), 0, 1);
        assert_eq!(zero.classical_homology(0).unwrap().size(), 1);
    }

    #[test]
    fn classical_homology_rejects_non_modules() {
        let l2 = fixtures::l2();
        let x = fixtures::two_term(Hom::zero(&l2, &l2));
        assert_eq!(x.classical_homology(0).unwrap_err(), ChainError::NotModule);
    }

    #[test]
    fn shift_swaps_differential_roles() {
        let z4 = fixtures::cyclic(4);
        let times2 = Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let x = fixtures::two_term(times2.clone());
        let shifted = x.shift_minus_one().unwrap();
        assert_eq!(shifted.window(), (1, 2));
        assert_eq!(shifted.dminus_at(2), times2);
        assert!(shifted.dplus_at(2).is_zero_map());
        // H_{n}(X[-1]) has the same carriers as H_{n-1}(X).
        let h2 = shifted.homology(2).unwrap();
        let h1 = x.homology(1).unwrap();
        assert_eq!(h2.module, h1.module);
    }

    #[test]
    fn completion_of_a_module_complex_is_itself() {
        let x = fixtures::two_term(fixtures::z2_into_z4());
        let completed = x.complete().unwrap();
        assert_eq!(completed.ordinary.module_at(1), x.module_at(1));
        assert_eq!(completed.ordinary.dplus_at(1), x.dplus_at(1));
        assert!(completed.canonical_paired.is_pm());
    }

    #[test]
    fn completion_of_the_l2_counterexample_row_is_zero() {
        let ses = fixtures::counterexample_ses(&fixtures::l2());
        let c = ses.c().clone();
        let completed = c.complete().unwrap();
        assert!(completed.ordinary.is_zero_complex());
    }
}
