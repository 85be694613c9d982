//! Schreier extensions of semimodules and Schreier short exact sequences of
//! chain complexes, with cached representative sets and recomputed flags.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::chain::{ChainComplex, ChainError, CompletedComplex};
use crate::completion::complete_hom_with;
use crate::hom::Hom;
use crate::morphism::ChainMorphism;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchreierError {
    #[error(transparent)]
    Chain(#[from] ChainError),

    #[error("kappa is not injective: {0} and {1} collide")]
    NotInjective(String, String),

    #[error("tau is not surjective: {0} has no preimage")]
    NotSurjective(String),

    #[error("kappa image differs from the kernel of tau at {0}")]
    KernelMismatch(String),

    #[error("fiber of {0} contains no representative")]
    NoRepresentative(String),

    #[error("kappa and tau do not compose")]
    CompositionMismatch,

    #[error("component maps are not morphisms of complexes")]
    NotMorphism,

    #[error("sigma ∘ kappa is nonzero at degree {0}")]
    MorphismMismatch(i64),

    #[error("level at degree {degree} is not a Schreier extension: {source}")]
    Level {
        degree: i64,
        source: Box<SchreierError>,
    },
}

/// True when every element of `b`'s fiber decomposes uniquely as
/// `κ(a) + b`. Assumes condition (1) of a Schreier extension holds for
/// `(kappa, tau)`.
pub fn is_representative(kappa: &Hom, tau: &Hom, b: usize) -> bool {
    let carrier = tau.source();
    let c = tau.apply(b);
    (0..carrier.size()).filter(|&x| tau.apply(x) == c).all(|x| {
        let count = (0..kappa.source().size())
            .filter(|&a| carrier.add(kappa.apply(a), b) == x)
            .count();
        count == 1
    })
}

/// A verified Schreier extension `A ↣ B ↠ C` with the representative set of
/// every fiber precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct SchreierExtension {
    kappa: Hom,
    tau: Hom,
    /// Per element of `C`, the sorted representatives in `B`.
    representatives: Vec<Vec<usize>>,
}

impl SchreierExtension {
    /// The `check_schreier` entry point: verifies injectivity, surjectivity,
    /// the kernel condition, and non-emptiness of every representative set.
    pub fn check(kappa: Hom, tau: Hom) -> Result<Self, SchreierError> {
        if kappa.target() != tau.source() {
            return Err(SchreierError::CompositionMismatch);
        }
        let a = kappa.source();
        let b = tau.source();
        let c = tau.target();
        for x in 0..a.size() {
            for y in (x + 1)..a.size() {
                if kappa.apply(x) == kappa.apply(y) {
                    return Err(SchreierError::NotInjective(
                        a.name_of(x).to_owned(),
                        a.name_of(y).to_owned(),
                    ));
                }
            }
        }
        if !tau.is_surjective() {
            let missing = (0..c.size())
                .find(|&y| !tau.map().contains(&y))
                .expect("some element is missed");
            return Err(SchreierError::NotSurjective(c.name_of(missing).to_owned()));
        }
        let image = kappa.image();
        let kernel = tau.kernel();
        for x in 0..b.size() {
            if image.contains(x) != kernel.contains(x) {
                return Err(SchreierError::KernelMismatch(b.name_of(x).to_owned()));
            }
        }
        let mut representatives = vec![Vec::new(); c.size()];
        for u in 0..b.size() {
            if is_representative(&kappa, &tau, u) {
                representatives[tau.apply(u)].push(u);
            }
        }
        for (cv, reps) in representatives.iter().enumerate() {
            if reps.is_empty() {
                return Err(SchreierError::NoRepresentative(c.name_of(cv).to_owned()));
            }
        }
        Ok(SchreierExtension {
            kappa,
            tau,
            representatives,
        })
    }

    pub fn kappa(&self) -> &Hom {
        &self.kappa
    }

    pub fn tau(&self) -> &Hom {
        &self.tau
    }

    pub fn representatives(&self, c: usize) -> &[usize] {
        &self.representatives[c]
    }

    pub fn least_representative(&self, c: usize) -> usize {
        self.representatives[c][0]
    }

    pub fn is_rep(&self, b: usize) -> bool {
        self.representatives[self.tau.apply(b)].contains(&b)
    }

    /// The unique `a` with `b = κ(a) + u`, when `u` is a representative of
    /// `b`'s fiber.
    pub fn decompose(&self, b: usize, u: usize) -> Option<usize> {
        let carrier = self.tau.source();
        let mut found = None;
        for a in 0..self.kappa.source().size() {
            if carrier.add(self.kappa.apply(a), u) == b {
                if found.is_some() {
                    return None;
                }
                found = Some(a);
            }
        }
        found
    }
}

/// Recomputed structural facts about a Schreier short exact sequence
/// `A ↣ B ↠ C`; never trusted from input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SesFlags {
    pub sigma_is_pm: bool,
    pub kappa_is_pm: bool,
    /// Every `A_n` cancellative.
    pub a_cancellative: bool,
    pub c_cancellative: bool,
    /// Every `A_n` a module.
    pub a_modules: bool,
    pub c_modules: bool,
    pub a_ordinary: bool,
    pub c_ordinary: bool,
    /// Every `∂ₙ⁻` of the middle row maps representatives to representatives.
    pub dminus_preserves_reps: bool,
}

impl SesFlags {
    /// The hypotheses of the connecting-homomorphism construction:
    /// sub-row cancellative, `∂⁻` preserves representatives, and either the
    /// quotient map is a ±-morphism or the quotient row is cancellative.
    pub fn connecting_hypotheses(&self) -> bool {
        self.a_cancellative
            && self.dminus_preserves_reps
            && (self.sigma_is_pm || self.c_cancellative)
    }

    pub fn failed_connecting_hypotheses(&self) -> Vec<String> {
        let mut failures = Vec::new();
        if !self.a_cancellative {
            failures.push("sub row is not degreewise cancellative".to_owned());
        }
        if !self.dminus_preserves_reps {
            failures.push("some ∂⁻ does not preserve representatives".to_owned());
        }
        if !self.sigma_is_pm && !self.c_cancellative {
            failures.push(
                "neither is sigma a ±-morphism nor is the quotient row degreewise cancellative"
                    .to_owned(),
            );
        }
        failures
    }
}

/// A degreewise Schreier short exact sequence of chain complexes.
#[derive(Debug, Clone)]
pub struct SchreierSES {
    kappa: ChainMorphism,
    sigma: ChainMorphism,
    levels: BTreeMap<i64, SchreierExtension>,
    window: (i64, i64),
    pub flags: SesFlags,
}

/// The `check_ses` entry point: validates every level as a Schreier
/// extension, checks `σκ = 0`, and recomputes all flags.
pub fn check_ses(kappa: ChainMorphism, sigma: ChainMorphism) -> Result<SchreierSES, SchreierError> {
    if kappa.target() != sigma.source() {
        return Err(SchreierError::CompositionMismatch);
    }
    if !kappa.is_plain() || !sigma.is_plain() {
        return Err(SchreierError::NotMorphism);
    }
    let a = kappa.source().clone();
    let b = kappa.target().clone();
    let c = sigma.target().clone();
    let lo = a.window().0.min(b.window().0).min(c.window().0);
    let hi = a.window().1.max(b.window().1).max(c.window().1);

    // σκ = 0 is forced by levelwise exactness; assert it as cheap redundancy.
    for n in lo..=hi {
        let composite = sigma
            .component_at(n)
            .compose(&kappa.component_at(n))
            .map_err(|_| SchreierError::CompositionMismatch)?;
        if !composite.is_zero_map() {
            return Err(SchreierError::MorphismMismatch(n));
        }
    }

    let mut levels = BTreeMap::new();
    for n in lo..=hi {
        let level = SchreierExtension::check(kappa.component_at(n), sigma.component_at(n))
            .map_err(|e| SchreierError::Level {
                degree: n,
                source: Box::new(e),
            })?;
        levels.insert(n, level);
    }

    let mut dminus_preserves_reps = true;
    for n in (lo + 1)..=hi {
        let dm = b.dminus_at(n);
        let level_n = &levels[&n];
        let level_prev = &levels[&(n - 1)];
        for u in 0..b.module_at(n).size() {
            if level_n.is_rep(u) && !level_prev.is_rep(dm.apply(u)) {
                dminus_preserves_reps = false;
            }
        }
    }

    let flags = SesFlags {
        sigma_is_pm: sigma.is_pm(),
        kappa_is_pm: kappa.is_pm(),
        a_cancellative: a.degreewise_cancellative(),
        c_cancellative: c.degreewise_cancellative(),
        a_modules: a.degreewise_modules(),
        c_modules: c.degreewise_modules(),
        a_ordinary: a.is_ordinary(),
        c_ordinary: c.is_ordinary(),
        dminus_preserves_reps,
    };
    Ok(SchreierSES {
        kappa,
        sigma,
        levels,
        window: (lo, hi),
        flags,
    })
}

impl SchreierSES {
    pub fn a(&self) -> &Arc<ChainComplex> {
        self.kappa.source()
    }

    pub fn b(&self) -> &Arc<ChainComplex> {
        self.kappa.target()
    }

    pub fn c(&self) -> &Arc<ChainComplex> {
        self.sigma.target()
    }

    pub fn kappa(&self) -> &ChainMorphism {
        &self.kappa
    }

    pub fn sigma(&self) -> &ChainMorphism {
        &self.sigma
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn level_at(&self, n: i64) -> Option<&SchreierExtension> {
        self.levels.get(&n)
    }

    /// Completes the sequence degreewise into a short exact sequence of
    /// ordinary chain complexes of modules, re-verifying exactness at every
    /// level by enumeration.
    pub fn complete(&self) -> Result<CompletedSES, SchreierError> {
        let a = self.a().complete()?;
        let b = self.b().complete()?;
        let c = self.c().complete()?;
        let (lo, hi) = self.window;

        let mut kappa_components = BTreeMap::new();
        let mut sigma_components = BTreeMap::new();
        for n in lo..=hi {
            let ka = complete_hom_with(&self.kappa.component_at(n), &a.level_at(n), &b.level_at(n));
            let ks = complete_hom_with(&self.sigma.component_at(n), &b.level_at(n), &c.level_at(n));
            // 0 → K(A) → K(B) → K(C) → 0 exact at every level.
            if !ka.is_injective() {
                return Err(SchreierError::Level {
                    degree: n,
                    source: Box::new(SchreierError::NotInjective(
                        "completed kappa".to_owned(),
                        "collides".to_owned(),
                    )),
                });
            }
            if !ks.is_surjective() {
                return Err(SchreierError::Level {
                    degree: n,
                    source: Box::new(SchreierError::NotSurjective("completed sigma".to_owned())),
                });
            }
            let check = crate::hom::is_exact_at(&ka, &ks)
                .map_err(|_| SchreierError::CompositionMismatch)?;
            if !check.exact {
                let witness = ka.target().name_of(check.witness.unwrap()).to_owned();
                return Err(SchreierError::Level {
                    degree: n,
                    source: Box::new(SchreierError::KernelMismatch(witness)),
                });
            }
            kappa_components.insert(n, ka);
            sigma_components.insert(n, ks);
        }
        let kappa =
            ChainMorphism::classify(a.ordinary.clone(), b.ordinary.clone(), kappa_components)?;
        let sigma =
            ChainMorphism::classify(b.ordinary.clone(), c.ordinary.clone(), sigma_components)?;
        let ses = check_ses(kappa.clone(), sigma.clone())?;
        Ok(CompletedSES {
            a,
            b,
            c,
            kappa,
            sigma,
            ses,
        })
    }
}

impl CompletedComplex {
    /// The completion result at degree `n` (the zero completion outside the
    /// window).
    pub fn level_at(&self, n: i64) -> crate::completion::CompletionResult {
        match self.level.get(&n) {
            Some(l) => l.clone(),
            None => crate::completion::complete(self.ordinary.zero_module()),
        }
    }
}

/// The completed sequence `0 → K(A) → K(B) → K(C) → 0` of ordinary module
/// complexes, along with its own Schreier SES structure.
#[derive(Debug, Clone)]
pub struct CompletedSES {
    pub a: CompletedComplex,
    pub b: CompletedComplex,
    pub c: CompletedComplex,
    pub kappa: ChainMorphism,
    pub sigma: ChainMorphism,
    pub ses: SchreierSES,
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::semimodule::FiniteSemimodule;

    use super::*;

    #[test]
    fn module_extension_has_full_representative_sets() {
        let incl = fixtures::z2_into_z4();
        let proj = fixtures::z4_to_z2_reduction();
        let ext = SchreierExtension::check(incl, proj).unwrap();
        // A is a module, so every element of B is a representative.
        for c in 0..2 {
            assert_eq!(ext.representatives(c).len(), 2);
        }
        assert_eq!(ext.decompose(3, 1), Some(1));
    }

    #[test]
    fn saturation_fiber_has_no_representative() {
        let n3 = fixtures::n_sat(3);
        let zero = FiniteSemimodule::zero_module(n3.scalars().clone());
        let kappa = Hom::zero(&zero, &n3);
        let tau = fixtures::n3_to_l2_saturation();
        let err = SchreierExtension::check(kappa, tau).unwrap_err();
        assert_eq!(err, SchreierError::NoRepresentative("e".to_owned()));
    }

    #[test]
    fn identity_extension_onto_zero() {
        let l2 = fixtures::l2();
        let zero = FiniteSemimodule::zero_module(l2.scalars().clone());
        let kappa = Hom::identity(&l2);
        let tau = Hom::zero(&l2, &zero);
        let ext = SchreierExtension::check(kappa, tau).unwrap();
        // Representatives of the single fiber are the units U(L2) = {0}.
        assert_eq!(ext.representatives(0), &[0]);
    }

    #[test]
    fn counterexample_ladder_is_a_valid_ses_with_expected_flags() {
        let ses = fixtures::counterexample_ses(&fixtures::l2());
        assert!(!ses.flags.sigma_is_pm);
        assert!(!ses.flags.c_cancellative);
        assert!(ses.flags.a_cancellative);
        assert!(ses.flags.a_modules);
        assert!(ses.flags.dminus_preserves_reps);
        assert!(!ses.flags.connecting_hypotheses());
    }

    #[test]
    fn module_snake_ses_flags() {
        let ses = fixtures::module_snake_ses();
        assert!(ses.flags.a_cancellative);
        assert!(ses.flags.c_cancellative);
        assert!(ses.flags.a_modules);
        assert!(ses.flags.c_modules);
        assert!(ses.flags.dminus_preserves_reps);
        assert!(ses.flags.connecting_hypotheses());
    }

    #[test]
    fn completed_counterexample_collapses_to_zero() {
        let ses = fixtures::counterexample_ses(&fixtures::l2());
        let completed = ses.complete().unwrap();
        assert!(completed.a.ordinary.is_zero_complex());
        assert!(completed.b.ordinary.is_zero_complex());
        assert!(completed.c.ordinary.is_zero_complex());
    }

    #[test]
    fn completed_module_ses_is_unchanged() {
        let ses = fixtures::module_snake_ses();
        let completed = ses.complete().unwrap();
        assert_eq!(completed.b.ordinary.module_at(0), ses.b().module_at(0));
        assert!(completed.ses.flags.a_modules);
    }

    #[test]
    fn split_levels_complete_to_the_module_part() {
        // A = L2, B = L2 ⊕ Z2, C = Z2 split: completion gives 0 → Z2 → Z2.
        let l2 = fixtures::l2();
        let z2 = fixtures::cyclic(2);
        let sum = crate::semimodule::DirectSum::new(&l2, &z2).unwrap();
        let kappa_map: Vec<usize> = (0..l2.size()).map(|i| sum.pair(i, z2.zero())).collect();
        let kappa = Hom::new(l2.clone(), sum.module.clone(), kappa_map).unwrap();
        let sigma_map: Vec<usize> = (0..sum.module.size()).map(|k| sum.split(k).1).collect();
        let sigma = Hom::new(sum.module.clone(), z2.clone(), sigma_map).unwrap();
        let ext = SchreierExtension::check(kappa.clone(), sigma.clone()).unwrap();
        assert!(ext.is_rep(sum.pair(l2.zero(), 1)));

        let ka = crate::completion::complete_hom(&kappa);
        let ks = crate::completion::complete_hom(&sigma);
        assert!(ka.source().is_trivial());
        assert_eq!(ks.source().size(), 2);
        assert!(crate::hom::is_exact_at(&ka, &ks).unwrap().exact);
    }
}
