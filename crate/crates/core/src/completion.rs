//! Group completion of monoids, ring completion of semirings, and module
//! completion of semimodules, together with the completion functor on homs.
//!
//! The completion of `A` is built from pairs `(u, v)` modulo
//! `(u,v) ~ (x,y) ⟺ u+y+z = v+x+z` for some `z`; the canonical map sends
//! `x` to the class of `(x, 0)`. Completed carriers are materialized with
//! canonical class representatives (the lexicographically least pair).

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::hom::Hom;
use crate::semimodule::{FiniteSemimodule, Scalars};
use crate::semiring::FiniteSemiring;

/// A completed semimodule with its canonical hom and the pair-to-class map.
#[derive(Debug, Clone)]
pub struct CompletionResult {
    pub completed: Arc<FiniteSemimodule>,
    pub canonical: Hom,
    /// `(u, v)` pairs to completed elements, indexed as `u * n + v`.
    pair_class: Vec<usize>,
    source_size: usize,
}

impl CompletionResult {
    pub fn class_of_pair(&self, u: usize, v: usize) -> usize {
        self.pair_class[u * self.source_size + v]
    }

    /// The least pair `(u, v)` representing a completed element.
    pub fn rep_pair(&self, class: usize) -> (usize, usize) {
        let p = self
            .pair_class
            .iter()
            .position(|&c| c == class)
            .expect("class is inhabited");
        (p / self.source_size, p % self.source_size)
    }
}

fn pair_classes(a: &FiniteSemimodule) -> (Vec<usize>, Vec<(usize, usize)>) {
    let n = a.size();
    // Union-find over pairs, generated by (u,v) ~ (u+z, v+z). The closure of
    // these single steps is exactly the defining relation.
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for u in 0..n {
        for v in 0..n {
            for z in 0..n {
                let p = u * n + v;
                let q = a.add(u, z) * n + a.add(v, z);
                let rp = find(&mut parent, p);
                let rq = find(&mut parent, q);
                if rp != rq {
                    let (lo, hi) = if rp < rq { (rp, rq) } else { (rq, rp) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n * n).map(|p| find(&mut parent, p)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let pair_class: Vec<usize> = roots
        .iter()
        .map(|r| reps.binary_search(r).unwrap())
        .collect();
    let rep_pairs: Vec<(usize, usize)> = reps.iter().map(|&p| (p / n, p % n)).collect();

    // Re-prove the characterization: same class ⟺ ∃z, u+y+z = v+x+z.
    for p in 0..n * n {
        for q in 0..n * n {
            let (u, v) = (p / n, p % n);
            let (x, y) = (q / n, q % n);
            let witnessed = (0..n).any(|z| a.add(a.add(u, y), z) == a.add(a.add(v, x), z));
            assert_eq!(
                witnessed,
                pair_class[p] == pair_class[q],
                "pair classes match the defining relation"
            );
        }
    }
    (pair_class, rep_pairs)
}

/// The module completion `K(A)` of a semimodule. When `A` is already a
/// module the result is `A` itself with the identity as canonical map.
pub fn complete(a: &Arc<FiniteSemimodule>) -> CompletionResult {
    let n = a.size();
    if a.is_module() {
        let mut pair_class = vec![0usize; n * n];
        for u in 0..n {
            for v in 0..n {
                let neg_v = a.neg(v).expect("module elements are invertible");
                pair_class[u * n + v] = a.add(u, neg_v);
            }
        }
        let result = CompletionResult {
            completed: a.clone(),
            canonical: Hom::identity(a),
            pair_class,
            source_size: n,
        };
        verify_completion(a, &result);
        return result;
    }

    let (pair_class, rep_pairs) = pair_classes(a);
    let k = rep_pairs.len();
    let elements: Vec<String> = rep_pairs
        .iter()
        .map(|&(u, v)| format!("[{},{}]", a.name_of(u), a.name_of(v)))
        .collect();
    let mut add = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (u1, v1) = rep_pairs[i];
            let (u2, v2) = rep_pairs[j];
            add[i][j] = pair_class[a.add(u1, u2) * n + a.add(v1, v2)];
        }
    }
    let zero = pair_class[a.zero() * n + a.zero()];
    let completed = match a.scalars() {
        Scalars::Natural => {
            FiniteSemimodule::monoid(elements, add, zero).expect("completion is a valid monoid")
        }
        Scalars::Semiring(sr) => {
            let mut action = vec![vec![0usize; k]; sr.size()];
            for l in 0..sr.size() {
                for (i, &(u, v)) in rep_pairs.iter().enumerate() {
                    action[l][i] = pair_class[a.act(l, u) * n + a.act(l, v)];
                }
            }
            FiniteSemimodule::over_semiring(sr.clone(), elements, add, zero, action)
                .expect("completion is a valid semimodule")
        }
    };
    let canonical_map: Vec<usize> = (0..n).map(|x| pair_class[x * n + a.zero()]).collect();
    let canonical =
        Hom::new(a.clone(), completed.clone(), canonical_map).expect("canonical map is a hom");
    let result = CompletionResult {
        completed,
        canonical,
        pair_class,
        source_size: n,
    };
    verify_completion(a, &result);
    result
}

fn verify_completion(a: &Arc<FiniteSemimodule>, result: &CompletionResult) {
    // The completed additive monoid is a group.
    assert!(
        result.completed.is_module(),
        "completion has a group additive structure"
    );
    // k(x) is the class of (x, 0).
    for x in 0..a.size() {
        assert_eq!(
            result.canonical.apply(x),
            result.class_of_pair(x, a.zero()),
            "canonical map sends x to the class of (x, 0)"
        );
    }
    // Addition of classes is componentwise on representative pairs; spot
    // checked through the canonical map.
    for x in 0..a.size() {
        for y in 0..a.size() {
            assert_eq!(
                result.canonical.apply(a.add(x, y)),
                result
                    .completed
                    .add(result.canonical.apply(x), result.canonical.apply(y)),
            );
        }
    }
}

/// `K(f)` between already-computed completions: `[a1, a2] ↦ [f(a1), f(a2)]`.
pub fn complete_hom_with(f: &Hom, source: &CompletionResult, target: &CompletionResult) -> Hom {
    let n = f.source().size();
    let mut map = vec![0usize; source.completed.size()];
    let mut seen = vec![false; source.completed.size()];
    for u in 0..n {
        for v in 0..n {
            let from = source.class_of_pair(u, v);
            let to = target.class_of_pair(f.apply(u), f.apply(v));
            if seen[from] {
                assert_eq!(map[from], to, "completed map is well-defined");
            } else {
                map[from] = to;
                seen[from] = true;
            }
        }
    }
    assert!(
        seen.into_iter().all(|s| s),
        "every class has a representative"
    );
    Hom::new(source.completed.clone(), target.completed.clone(), map)
        .expect("completed map is a hom")
}

/// `K(f)` computed from scratch.
pub fn complete_hom(f: &Hom) -> Hom {
    let source = complete(f.source());
    let target = complete(f.target());
    complete_hom_with(f, &source, &target)
}

/// A completed semiring with the canonical semiring map.
#[derive(Debug, Clone)]
pub struct SemiringCompletion {
    pub completed: Arc<FiniteSemiring>,
    /// Element of the source to its class in the completion.
    pub canonical: Vec<usize>,
    pair_class: Vec<usize>,
    source_size: usize,
}

impl SemiringCompletion {
    pub fn class_of_pair(&self, u: usize, v: usize) -> usize {
        self.pair_class[u * self.source_size + v]
    }
}

/// The ring completion `K(Λ)` of a semiring, with multiplication
/// `[x1,y1]·[x2,y2] = [x1x2 + y1y2, x1y2 + y1x2]`.
pub fn complete_semiring(sr: &Arc<FiniteSemiring>) -> SemiringCompletion {
    let n = sr.size();
    // Reuse the monoid pair-class computation on the additive structure.
    let additive =
        FiniteSemimodule::monoid(sr.elements().to_vec(), sr.add_table().to_vec(), sr.zero())
            .expect("semiring addition is a commutative monoid");
    let (pair_class, rep_pairs) = pair_classes(&additive);
    let k = rep_pairs.len();
    let elements: Vec<String> = rep_pairs
        .iter()
        .map(|&(u, v)| format!("[{},{}]", sr.name_of(u), sr.name_of(v)))
        .collect();
    let mut add = vec![vec![0usize; k]; k];
    let mut mul = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (x1, y1) = rep_pairs[i];
            let (x2, y2) = rep_pairs[j];
            add[i][j] = pair_class[sr.add(x1, x2) * n + sr.add(y1, y2)];
            mul[i][j] = pair_class[sr.add(sr.mul(x1, x2), sr.mul(y1, y2)) * n
                + sr.add(sr.mul(x1, y2), sr.mul(y1, x2))];
        }
    }
    // Multiplication must be independent of representatives.
    for p in 0..n * n {
        for q in 0..n * n {
            let (x1, y1) = (p / n, p % n);
            let (x2, y2) = (q / n, q % n);
            let prod = pair_class[sr.add(sr.mul(x1, x2), sr.mul(y1, y2)) * n
                + sr.add(sr.mul(x1, y2), sr.mul(y1, x2))];
            assert_eq!(
                prod, mul[pair_class[p]][pair_class[q]],
                "completed multiplication is well-defined"
            );
        }
    }
    let zero = pair_class[sr.zero() * n + sr.zero()];
    let one = pair_class[sr.one() * n + sr.zero()];
    let completed =
        FiniteSemiring::new(elements, add, mul, zero, one).expect("ring completion is valid");
    assert!(completed.is_ring(), "completion is a ring");
    let canonical: Vec<usize> = (0..n).map(|x| pair_class[x * n + sr.zero()]).collect();
    // The canonical map is a semiring homomorphism.
    for x in 0..n {
        for y in 0..n {
            assert_eq!(
                canonical[sr.add(x, y)],
                completed.add(canonical[x], canonical[y])
            );
            assert_eq!(
                canonical[sr.mul(x, y)],
                completed.mul(canonical[x], canonical[y])
            );
        }
    }
    SemiringCompletion {
        completed,
        canonical,
        pair_class,
        source_size: n,
    }
}

/// Restricts a cancellative `Λ`-semimodule to a semimodule over `C(Λ)` by
/// descending the action along the canonical surjection. Returns `None`
/// when the action does not descend (possible only for non-cancellative
/// carriers).
pub fn over_cancellative_scalars(
    a: &Arc<FiniteSemimodule>,
) -> Result<Option<Arc<FiniteSemimodule>>, AlgebraError> {
    let Some(sr) = a.scalars().semiring() else {
        return Err(AlgebraError::ScalarMismatch);
    };
    let (contracted, class_of) = crate::congruence::additively_cancellative_image(sr);
    let k = contracted.size();
    let mut action = vec![vec![usize::MAX; a.size()]; k];
    for l in 0..sr.size() {
        for x in 0..a.size() {
            let slot = &mut action[class_of[l]][x];
            let value = a.act(l, x);
            if *slot == usize::MAX {
                *slot = value;
            } else if *slot != value {
                return Ok(None);
            }
        }
    }
    let module = FiniteSemimodule::over_semiring(
        contracted,
        a.elements().to_vec(),
        a.add_table().to_vec(),
        a.zero(),
        action,
    )?;
    Ok(Some(module))
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    use super::*;

    #[test]
    fn completion_of_a_module_is_the_identity() {
        let z2 = fixtures::cyclic(2);
        let result = complete(&z2);
        assert_eq!(result.completed, z2);
        assert_eq!(result.canonical, Hom::identity(&z2));
    }

    #[test]
    fn completion_of_l2_and_n3_is_trivial() {
        for m in [fixtures::l2(), fixtures::n_sat(3)] {
            let result = complete(&m);
            assert!(result.completed.is_trivial());
            assert!(result.canonical.is_zero_map());
        }
    }

    #[test]
    fn canonical_injective_iff_cancellative() {
        for m in [
            fixtures::l2(),
            fixtures::n_sat(3),
            fixtures::cyclic(4),
            fixtures::cyclic(3),
        ] {
            let result = complete(&m);
            assert_eq!(result.canonical.is_injective(), m.is_cancellative());
        }
    }

    #[test]
    fn completion_functor_laws_on_small_maps() {
        let f = fixtures::z2_into_z4();
        let g = fixtures::z4_to_z2_reduction();
        let kf = complete_hom(&f);
        let kg = complete_hom(&g);
        let kgf = complete_hom(&g.compose(&f).unwrap());
        assert_eq!(kg.compose(&kf).unwrap(), kgf);

        let id = Hom::identity(&fixtures::l2());
        let kid = complete_hom(&id);
        assert!(kid.source().is_trivial());

        // Additivity: K(f + g) = K(f) + K(g).
        let z4 = fixtures::cyclic(4);
        let double = Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let triple = Hom::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        let sum = double.add(&triple).unwrap();
        assert_eq!(
            complete_hom(&sum),
            complete_hom(&double).add(&complete_hom(&triple)).unwrap()
        );
    }

    #[test]
    fn saturation_map_completes_to_zero_between_trivial_groups() {
        let tau = fixtures::n3_to_l2_saturation();
        let k = complete_hom(&tau);
        assert!(k.source().is_trivial());
        assert!(k.target().is_trivial());
    }

    #[test]
    fn ring_completions() {
        let boolean = fixtures::boolean_semiring();
        let kb = complete_semiring(&boolean);
        assert_eq!(kb.completed.size(), 1);

        let z2 = fixtures::z2_semiring();
        let kz = complete_semiring(&z2);
        assert_eq!(kz.completed.size(), 2);
        assert!(kz.completed.is_ring());

        let n4 = fixtures::n4_saturating_semiring();
        let kn = complete_semiring(&n4);
        assert_eq!(kn.completed.size(), 1);
    }

    #[test]
    fn cancellative_scalars_restriction() {
        // L2 over the Boolean semiring is not cancellative, and the Boolean
        // action cannot descend to the trivial C(Λ).
        let l2b = fixtures::l2_over_boolean();
        assert_eq!(over_cancellative_scalars(&l2b).unwrap(), None);

        // A module over the Z2 semiring descends to itself (C(Z2) = Z2).
        let z2sr = fixtures::z2_semiring();
        let m = FiniteSemimodule::over_semiring(
            z2sr,
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 0]],
            0,
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        let descended = over_cancellative_scalars(&m).unwrap().unwrap();
        assert!(descended.is_cancellative());
    }
}
