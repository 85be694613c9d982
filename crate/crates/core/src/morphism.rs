//! Morphisms of chain complexes: classification into ±-morphisms and plain
//! morphisms, and the induced maps on homology with their certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::chain::{ChainComplex, ChainError, HomologyPresentation};
use crate::hom::Hom;

/// How a componentwise family of homs interacts with the differentials.
#[derive(Debug, Clone, PartialEq)]
pub enum MorphismKind {
    /// `f∂⁺ = ∂′⁺f` and `f∂⁻ = ∂′⁻f` in every degree.
    Pm,
    /// `∂′⁺f + f∂⁻ = ∂′⁻f + f∂⁺` in every degree, but not a ±-morphism.
    Plain,
    /// Neither identity holds; carries the first failure.
    Invalid { degree: i64, witness: String },
}

/// A classified morphism of chain complexes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMorphism {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: BTreeMap<i64, Hom>,
    kind: MorphismKind,
}

impl ChainMorphism {
    /// Validates componentwise homs and classifies the family
    /// (the `classify_morphism` entry point). Missing components default to
    /// zero maps.
    pub fn classify(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        mut components: BTreeMap<i64, Hom>,
    ) -> Result<Self, ChainError> {
        for (&n, f) in &components {
            if f.source() != &source.module_at(n) || f.target() != &target.module_at(n) {
                return Err(ChainError::DifferentialMismatch(n));
            }
        }
        // Store components densely over the union window so equal morphisms
        // compare equal regardless of which zero maps were spelled out.
        let lo = source.window().0.min(target.window().0);
        let hi = source.window().1.max(target.window().1);
        for n in lo..=hi {
            components
                .entry(n)
                .or_insert_with(|| Hom::zero(&source.module_at(n), &target.module_at(n)));
        }
        components.retain(|&n, _| n >= lo && n <= hi);
        let mut morphism = ChainMorphism {
            source,
            target,
            components,
            kind: MorphismKind::Pm,
        };
        morphism.kind = morphism.classify_kind();
        Ok(morphism)
    }

    fn window(&self) -> (i64, i64) {
        let (slo, shi) = self.source.window();
        let (tlo, thi) = self.target.window();
        (slo.min(tlo), shi.max(thi))
    }

    fn classify_kind(&self) -> MorphismKind {
        let (lo, hi) = self.window();
        let mut pm = true;
        for n in lo..=(hi + 1) {
            let f_n = self.component_at(n);
            let f_prev = self.component_at(n - 1);
            let dp = self.source.dplus_at(n);
            let dm = self.source.dminus_at(n);
            let dp_t = self.target.dplus_at(n);
            let dm_t = self.target.dminus_at(n);
            let x_n = self.source.module_at(n);
            let tgt_prev = self.target.module_at(n - 1);
            for x in 0..x_n.size() {
                if f_prev.apply(dp.apply(x)) != dp_t.apply(f_n.apply(x))
                    || f_prev.apply(dm.apply(x)) != dm_t.apply(f_n.apply(x))
                {
                    pm = false;
                }
                let lhs = tgt_prev.add(dp_t.apply(f_n.apply(x)), f_prev.apply(dm.apply(x)));
                let rhs = tgt_prev.add(dm_t.apply(f_n.apply(x)), f_prev.apply(dp.apply(x)));
                if lhs != rhs {
                    return MorphismKind::Invalid {
                        degree: n,
                        witness: x_n.name_of(x).to_owned(),
                    };
                }
            }
        }
        if pm {
            MorphismKind::Pm
        } else {
            MorphismKind::Plain
        }
    }

    pub fn identity(x: &Arc<ChainComplex>) -> Self {
        let mut components = BTreeMap::new();
        for n in x.degrees() {
            components.insert(n, Hom::identity(&x.module_at(n)));
        }
        ChainMorphism::classify(x.clone(), x.clone(), components)
            .expect("identity morphism is well-typed")
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn kind(&self) -> &MorphismKind {
        &self.kind
    }

    pub fn is_pm(&self) -> bool {
        matches!(self.kind, MorphismKind::Pm)
    }

    /// Every ±-morphism is in particular a morphism.
    pub fn is_plain(&self) -> bool {
        !matches!(self.kind, MorphismKind::Invalid { .. })
    }

    /// The component at degree `n`, a zero map outside the stored range.
    pub fn component_at(&self, n: i64) -> Hom {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Hom::zero(&self.source.module_at(n), &self.target.module_at(n)))
    }

    /// `self ∘ first`; the kind of the composite is recomputed.
    pub fn compose(&self, first: &ChainMorphism) -> Result<ChainMorphism, ChainError> {
        if first.target != self.source {
            return Err(ChainError::Algebra(
                crate::error::AlgebraError::CompositionMismatch,
            ));
        }
        let (lo, hi) = first.window();
        let (lo2, hi2) = self.window();
        let mut components = BTreeMap::new();
        for n in lo.min(lo2)..=hi.max(hi2) {
            components.insert(n, self.component_at(n).compose(&first.component_at(n))?);
        }
        ChainMorphism::classify(first.source.clone(), self.target.clone(), components)
    }

    /// Pointwise sum of parallel morphisms; the kind is recomputed.
    pub fn add(&self, other: &ChainMorphism) -> Result<ChainMorphism, ChainError> {
        if self.source != other.source || self.target != other.target {
            return Err(ChainError::Algebra(
                crate::error::AlgebraError::CompositionMismatch,
            ));
        }
        let (lo, hi) = self.window();
        let mut components = BTreeMap::new();
        for n in lo..=hi {
            components.insert(n, self.component_at(n).add(&other.component_at(n))?);
        }
        ChainMorphism::classify(self.source.clone(), self.target.clone(), components)
    }

    /// Whether every component is a zero map.
    pub fn is_zero(&self) -> bool {
        self.components.values().all(|f| f.is_zero_map())
    }

    /// The induced hom `H_n(f)` with a certificate naming the sufficient
    /// condition that applied, computing homology presentations on demand.
    pub fn induced(&self, n: i64) -> Result<InducedHom, InducedError> {
        let hs = self.source.homology(n)?;
        let ht = self.target.homology(n)?;
        self.induced_with(n, &hs, &ht)
    }

    /// The induced hom against precomputed homology presentations.
    ///
    /// The certificate records which sufficient condition applied; when none
    /// does, well-definedness is confirmed by direct exhaustive check and
    /// the certificate is `Enumerated`. A theorem-backed certificate whose
    /// direct check fails is a soundness error.
    pub fn induced_with(
        &self,
        n: i64,
        hs: &HomologyPresentation,
        ht: &HomologyPresentation,
    ) -> Result<InducedHom, InducedError> {
        let f_n = self.component_at(n);
        // Cycles must map to cycles.
        for &x in hs.cycles.members() {
            if ht.class_of(f_n.apply(x)).is_none() {
                return Err(InducedError::CycleNotPreserved {
                    degree: n,
                    witness: f_n.source().name_of(x).to_owned(),
                });
            }
        }
        let certificate = if self.is_pm() {
            InducedCertificate::PmMorphism
        } else if self.target.degreewise_cancellative() {
            InducedCertificate::TargetCancellative
        } else if self.source.is_ordinary() {
            InducedCertificate::SourceOrdinary
        } else {
            InducedCertificate::Enumerated
        };
        // Direct well-definedness check, run regardless of the certificate.
        for &x in hs.cycles.members() {
            for &y in hs.cycles.members() {
                if hs.related(x, y) != Some(true) {
                    continue;
                }
                if ht.related(f_n.apply(x), f_n.apply(y)) != Some(true) {
                    let witness = (
                        f_n.source().name_of(x).to_owned(),
                        f_n.source().name_of(y).to_owned(),
                    );
                    if certificate == InducedCertificate::Enumerated {
                        return Err(InducedError::NotWellDefined { degree: n, witness });
                    }
                    return Err(InducedError::Soundness(format!(
                        "certificate {certificate:?} at degree {n} contradicted by ({}, {})",
                        witness.0, witness.1
                    )));
                }
            }
        }
        let mut map = vec![0usize; hs.module.size()];
        for h in 0..hs.module.size() {
            let rep = hs.class_rep(h);
            map[h] = ht
                .class_of(f_n.apply(rep))
                .expect("image of a cycle is a cycle");
        }
        let map = Hom::new(hs.module.clone(), ht.module.clone(), map)
            .map_err(|e| InducedError::Soundness(format!("induced map is not a hom: {e}")))?;
        Ok(InducedHom { map, certificate })
    }
}

/// Which sufficient condition justified an induced map on homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InducedCertificate {
    PmMorphism,
    TargetCancellative,
    SourceOrdinary,
    /// The sub-row map of a Schreier short exact sequence with the sub-row
    /// degreewise cancellative.
    SchreierKappa,
    /// No theorem applied; well-definedness confirmed by exhaustive check.
    Enumerated,
}

impl InducedCertificate {
    pub fn label(&self) -> &'static str {
        match self {
            InducedCertificate::PmMorphism => "pm-morphism",
            InducedCertificate::TargetCancellative => "target-cancellative",
            InducedCertificate::SourceOrdinary => "source-ordinary",
            InducedCertificate::SchreierKappa => "schreier-kappa",
            InducedCertificate::Enumerated => "enumerated",
        }
    }
}

/// An induced hom on homology and the certificate that justified it.
#[derive(Debug, Clone)]
pub struct InducedHom {
    pub map: Hom,
    pub certificate: InducedCertificate,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InducedError {
    #[error(transparent)]
    Chain(#[from] ChainError),

    #[error("component at degree {degree} does not send cycles to cycles: {witness}")]
    CycleNotPreserved { degree: i64, witness: String },

    #[error("induced map at degree {degree} is not well-defined on classes of {} and {}", witness.0, witness.1)]
    NotWellDefined {
        degree: i64,
        witness: (String, String),
    },

    #[error("soundness alarm: {0}")]
    Soundness(String),
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::hom::Hom;

    use super::*;

    #[test]
    fn identity_is_a_pm_morphism_and_induces_identity() {
        let x = fixtures::two_term(fixtures::z2_into_z4());
        let id = ChainMorphism::identity(&x);
        assert!(id.is_pm());
        for n in 0..=1 {
            let induced = id.induced(n).unwrap();
            assert_eq!(induced.certificate, InducedCertificate::PmMorphism);
            assert_eq!(induced.map, Hom::identity(induced.map.source()));
        }
    }

    #[test]
    fn counterexample_sigma_is_plain_but_not_pm() {
        let ses = fixtures::counterexample_ses(&fixtures::l2());
        assert!(ses.sigma().is_plain());
        assert!(!ses.sigma().is_pm());
    }

    #[test]
    fn counterexample_sigma_induces_the_canonical_map_at_minus_one() {
        // H_{-1}(σ) is the canonical surjection M → M' (for L2: L2 → 0).
        let l2 = fixtures::l2();
        let ses = fixtures::counterexample_ses(&l2);
        let induced = ses.sigma().induced(-1).unwrap();
        assert_eq!(induced.certificate, InducedCertificate::SourceOrdinary);
        assert_eq!(induced.map.source(), &l2);
        assert!(induced.map.target().is_trivial());

        let (m_prime, k) = crate::congruence::max_cancellative_image(&l2);
        assert_eq!(induced.map.target(), &m_prime);
        assert_eq!(induced.map.map(), k.map());
    }

    #[test]
    fn canonical_completion_morphism_is_pm_into_the_paired_form() {
        let ses = fixtures::counterexample_ses(&fixtures::l2());
        let completed = ses.c().complete().unwrap();
        assert!(completed.canonical_paired.is_pm());
        assert!(completed.canonical_ordinary.is_plain());
    }

    #[test]
    fn invalid_families_are_tagged() {
        let z2 = fixtures::cyclic(2);
        let x = fixtures::two_term(Hom::identity(&z2));
        let y = fixtures::two_term(Hom::zero(&z2, &z2));
        let mut components = BTreeMap::new();
        components.insert(1, Hom::identity(&z2));
        components.insert(0, Hom::identity(&z2));
        let morphism = ChainMorphism::classify(x, y, components).unwrap();
        assert!(matches!(
            morphism.kind(),
            MorphismKind::Invalid { degree: 1, .. }
        ));
    }

    #[test]
    fn plain_morphisms_can_destroy_cycles() {
        // The identity family from the paired quotient row into the
        // ordinary middle row of the counterexample ladder is a morphism,
        // but the idempotent 1-cycle is no middle-row cycle.
        let l2 = fixtures::l2();
        let ses = fixtures::counterexample_ses(&l2);
        let c_row = ses.c().clone();
        let b_row = ses.b().clone();
        let mut components = BTreeMap::new();
        for n in -1..=1 {
            components.insert(n, Hom::identity(&l2));
        }
        let tau = ChainMorphism::classify(c_row, b_row, components).unwrap();
        assert!(tau.is_plain());
        match tau.induced(1) {
            Err(InducedError::CycleNotPreserved { degree: 1, witness }) => {
                assert_eq!(witness, "e");
            }
            other => panic!("expected a destroyed cycle, got {other:?}"),
        }
    }

    #[test]
    fn functor_laws_for_induced_maps_on_pm_morphisms() {
        let z4 = fixtures::cyclic(4);
        let times2 = Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let x = fixtures::two_term(times2);
        let id = ChainMorphism::identity(&x);
        let composed = id.compose(&id).unwrap();
        for n in 0..=1 {
            let lhs = composed.induced(n).unwrap().map;
            let f = id.induced(n).unwrap().map;
            assert_eq!(lhs, f.compose(&f).unwrap());
        }
        // Additivity: H(id + id) = H(id) + H(id) on a module complex.
        let doubled = id.add(&id).unwrap();
        for n in 0..=1 {
            let lhs = doubled.induced(n).unwrap().map;
            let f = id.induced(n).unwrap().map;
            assert_eq!(lhs, f.add(&f).unwrap());
        }
    }
}
