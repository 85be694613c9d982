//! Homomorphisms of finite semimodules, with kernels, images, exactness and
//! normality checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::semimodule::{FiniteSemimodule, Subsemimodule};

/// A total element map between semimodules over the same scalar base,
/// verified to respect addition, zero and the scalar action.
#[derive(Debug, Clone, PartialEq)]
pub struct Hom {
    source: Arc<FiniteSemimodule>,
    target: Arc<FiniteSemimodule>,
    map: Vec<usize>,
}

impl Hom {
    pub fn new(
        source: Arc<FiniteSemimodule>,
        target: Arc<FiniteSemimodule>,
        map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if source.scalars() != target.scalars() {
            return Err(AlgebraError::ScalarMismatch);
        }
        if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
            return Err(AlgebraError::ShapeMismatch(
                "element map has wrong shape".into(),
            ));
        }
        if map[source.zero()] != target.zero() {
            return Err(AlgebraError::axiom(
                "hom-zero",
                vec![source.name_of(source.zero()).to_owned()],
            ));
        }
        let n = source.size();
        for a in 0..n {
            for b in 0..n {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(AlgebraError::axiom(
                        "hom-additivity",
                        vec![source.name_of(a).to_owned(), source.name_of(b).to_owned()],
                    ));
                }
            }
        }
        if let Some(sr) = source.scalars().semiring() {
            for l in 0..sr.size() {
                for a in 0..n {
                    if map[source.act(l, a)] != target.act(l, map[a]) {
                        return Err(AlgebraError::axiom(
                            "hom-action",
                            vec![sr.name_of(l).to_owned(), source.name_of(a).to_owned()],
                        ));
                    }
                }
            }
        }
        Ok(Hom {
            source,
            target,
            map,
        })
    }

    /// Builds a hom from element names.
    pub fn from_names(
        source: Arc<FiniteSemimodule>,
        target: Arc<FiniteSemimodule>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, AlgebraError> {
        let mut map = vec![usize::MAX; source.size()];
        for (from, to) in pairs {
            let i = source
                .index_of(from)
                .ok_or_else(|| AlgebraError::UnknownElement((*from).to_owned()))?;
            let j = target
                .index_of(to)
                .ok_or_else(|| AlgebraError::UnknownElement((*to).to_owned()))?;
            map[i] = j;
        }
        if map.iter().any(|&v| v == usize::MAX) {
            return Err(AlgebraError::ShapeMismatch(
                "element map is not total".into(),
            ));
        }
        Hom::new(source, target, map)
    }

    pub fn identity(m: &Arc<FiniteSemimodule>) -> Self {
        Hom {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.size()).collect(),
        }
    }

    pub fn zero(source: &Arc<FiniteSemimodule>, target: &Arc<FiniteSemimodule>) -> Self {
        Hom {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.zero(); source.size()],
        }
    }

    pub fn source(&self) -> &Arc<FiniteSemimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSemimodule> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self ∘ first`, requiring `first.target == self.source`.
    pub fn compose(&self, first: &Hom) -> Result<Hom, AlgebraError> {
        if first.target != self.source {
            return Err(AlgebraError::CompositionMismatch);
        }
        Ok(Hom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    /// Pointwise sum of two parallel homs.
    pub fn add(&self, other: &Hom) -> Result<Hom, AlgebraError> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::CompositionMismatch);
        }
        let map = (0..self.source.size())
            .map(|i| self.target.add(self.map[i], other.map[i]))
            .collect();
        Hom::new(self.source.clone(), self.target.clone(), map)
    }

    pub fn is_zero_map(&self) -> bool {
        self.map.iter().all(|&v| v == self.target.zero())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// The kernel `f⁻¹(0)` as a verified subsemimodule of the source.
    pub fn kernel(&self) -> Subsemimodule {
        let members = (0..self.source.size())
            .filter(|&i| self.map[i] == self.target.zero())
            .collect();
        Subsemimodule::new(self.source.clone(), members).expect("kernel is a subsemimodule")
    }

    /// The image `f(source)` as a verified subsemimodule of the target.
    pub fn image(&self) -> Subsemimodule {
        let members: BTreeSet<usize> = self.map.iter().copied().collect();
        Subsemimodule::new(self.target.clone(), members.into_iter().collect())
            .expect("image is a subsemimodule")
    }

    /// Returns a pair `(a1, a2)` with `f(a1) = f(a2)` that cannot be matched
    /// by kernel translates, or `None` when the hom is normal
    /// (kernel-regular): `f(a1)=f(a2)` implies `k1+a1 = k2+a2` for some
    /// kernel elements `k1, k2`.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let kernel = self.kernel();
        let n = self.source.size();
        for a1 in 0..n {
            for a2 in 0..n {
                if self.map[a1] != self.map[a2] {
                    continue;
                }
                let matched = kernel.members().iter().any(|&k1| {
                    kernel
                        .members()
                        .iter()
                        .any(|&k2| self.source.add(k1, a1) == self.source.add(k2, a2))
                });
                if !matched {
                    return Some((a1, a2));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }
}

/// Outcome of an exactness check at the middle of `α: A→B`, `β: B→C`:
/// exact means `Im(α) = Ker(β)`; a failure carries an element of the
/// symmetric difference.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessCheck {
    pub exact: bool,
    /// Index into the middle carrier of an element separating image and kernel.
    pub witness: Option<usize>,
}

/// Checks `Im(α) = Ker(β)` where `β` leaves the target of `α`.
pub fn is_exact_at(alpha: &Hom, beta: &Hom) -> Result<ExactnessCheck, AlgebraError> {
    if alpha.target() != beta.source() {
        return Err(AlgebraError::CompositionMismatch);
    }
    let image = alpha.image();
    let kernel = beta.kernel();
    for x in 0..alpha.target().size() {
        if image.contains(x) != kernel.contains(x) {
            return Ok(ExactnessCheck {
                exact: false,
                witness: Some(x),
            });
        }
    }
    Ok(ExactnessCheck {
        exact: true,
        witness: None,
    })
}

/// A subsemimodule materialized as a standalone carrier, together with the
/// inclusion hom and index translations.
#[derive(Debug, Clone)]
pub struct MaterializedSub {
    pub module: Arc<FiniteSemimodule>,
    pub include: Hom,
    /// Materialized index -> parent index.
    pub to_parent: Vec<usize>,
    /// Parent index -> materialized index.
    pub from_parent: Vec<Option<usize>>,
}

impl Subsemimodule {
    /// Materializes the subsemimodule as its own carrier, keeping the
    /// parent's element names.
    pub fn materialize(&self) -> MaterializedSub {
        let parent = self.parent();
        let to_parent: Vec<usize> = self.members().to_vec();
        let mut from_parent = vec![None; parent.size()];
        for (new, &old) in to_parent.iter().enumerate() {
            from_parent[old] = Some(new);
        }
        let n = to_parent.len();
        let elements: Vec<String> = to_parent
            .iter()
            .map(|&i| parent.name_of(i).to_owned())
            .collect();
        let mut add = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = from_parent[parent.add(to_parent[i], to_parent[j])]
                    .expect("subsemimodule closed under addition");
            }
        }
        let zero = from_parent[parent.zero()].expect("subsemimodule contains zero");
        let module = match parent.scalars() {
            crate::semimodule::Scalars::Natural => {
                FiniteSemimodule::monoid(elements, add, zero).expect("valid submonoid")
            }
            crate::semimodule::Scalars::Semiring(sr) => {
                let mut action = vec![vec![0usize; n]; sr.size()];
                for l in 0..sr.size() {
                    for (i, &old) in to_parent.iter().enumerate() {
                        action[l][i] = from_parent[parent.act(l, old)]
                            .expect("subsemimodule closed under action");
                    }
                }
                FiniteSemimodule::over_semiring(sr.clone(), elements, add, zero, action)
                    .expect("valid subsemimodule")
            }
        };
        let include = Hom::new(module.clone(), parent.clone(), to_parent.clone())
            .expect("inclusion is a hom");
        MaterializedSub {
            module,
            include,
            to_parent,
            from_parent,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    use super::*;

    #[test]
    fn kernel_and_image_of_mod2_reduction() {
        let f = fixtures::z4_to_z2_reduction();
        assert_eq!(
            f.kernel().member_names(),
            vec!["0".to_owned(), "2".to_owned()]
        );
        assert!(f.image().is_full());

        let l2 = fixtures::l2();
        let id = Hom::identity(&l2);
        assert!(id.kernel().is_zero());
        assert!(id.image().is_full());

        let zero = Hom::zero(&l2, &l2);
        assert!(zero.kernel().is_full());
        assert!(zero.image().is_zero());
    }

    #[test]
    fn exactness_of_z2_z4_z2() {
        let incl = fixtures::z2_into_z4();
        let proj = fixtures::z4_to_z2_reduction();
        let check = is_exact_at(&incl, &proj).unwrap();
        assert!(check.exact);
    }

    #[test]
    fn zero_into_l2_out_is_inexact_with_witness_e() {
        // 0 → M → 0 is exact at M iff M is trivial.
        let l2 = fixtures::l2();
        let zero = crate::semimodule::FiniteSemimodule::zero_module(l2.scalars().clone());
        let alpha = Hom::zero(&zero, &l2);
        let beta = Hom::zero(&l2, &zero);
        let check = is_exact_at(&alpha, &beta).unwrap();
        assert!(!check.exact);
        assert_eq!(l2.name_of(check.witness.unwrap()), "e");
    }

    #[test]
    fn exactness_with_zero_alpha_and_injective_beta() {
        let z2 = fixtures::cyclic(2);
        let zero_mod = crate::semimodule::FiniteSemimodule::zero_module(z2.scalars().clone());
        let alpha = Hom::zero(&zero_mod, &z2);
        let beta = fixtures::z2_into_z4();
        assert!(is_exact_at(&alpha, &beta).unwrap().exact);
    }

    #[test]
    fn normality_examples() {
        // Any hom out of a module is normal.
        let f = fixtures::z4_to_z2_reduction();
        assert!(f.is_normal());

        // The saturation map N3 → L2 (1,2 ↦ e) is not normal: f(1)=f(2) but
        // the kernel is {0} and 1 ≠ 2.
        let tau = fixtures::n3_to_l2_saturation();
        let witness = tau.normality_witness().unwrap();
        let names = (
            tau.source().name_of(witness.0),
            tau.source().name_of(witness.1),
        );
        assert!(names == ("1", "2") || names == ("2", "1"));

        let l2 = fixtures::l2();
        assert!(Hom::identity(&l2).is_normal());
    }

    #[test]
    fn materialized_subsemimodule_keeps_names() {
        let z4 = fixtures::cyclic(4);
        let sub = crate::semimodule::Subsemimodule::new(z4, vec![0, 2]).unwrap();
        let mat = sub.materialize();
        assert_eq!(mat.module.elements(), &["0".to_owned(), "2".to_owned()]);
        assert!(mat.module.is_module());
        assert_eq!(mat.include.apply(1), 2);
    }

    #[test]
    fn hom_functoriality_helpers() {
        let incl = fixtures::z2_into_z4();
        let proj = fixtures::z4_to_z2_reduction();
        let comp = proj.compose(&incl).unwrap();
        assert!(comp.is_zero_map());

        let z2 = fixtures::cyclic(2);
        let id = Hom::identity(&z2);
        let doubled = id.add(&id).unwrap();
        assert!(doubled.is_zero_map());
    }
}
