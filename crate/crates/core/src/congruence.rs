//! Congruences on finite semimodules, congruence closure, and the quotient
//! constructions derived from them.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::hom::Hom;
use crate::semimodule::{FiniteSemimodule, Scalars, Subsemimodule};
use crate::semiring::FiniteSemiring;

/// An equivalence on a semimodule carrier compatible with addition and the
/// scalar action. Classes are ordered by least member.
#[derive(Debug, Clone, PartialEq)]
pub struct Congruence {
    carrier: Arc<FiniteSemimodule>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn partition_from(carrier: &Arc<FiniteSemimodule>, uf: &mut UnionFind) -> Congruence {
    let n = carrier.size();
    let mut roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut class_of = vec![0usize; n];
    let mut classes = vec![Vec::new(); reps.len()];
    for i in 0..n {
        let c = reps.binary_search(&roots[i]).unwrap();
        class_of[i] = c;
        classes[c].push(i);
    }
    roots.clear();
    Congruence {
        carrier: carrier.clone(),
        class_of,
        classes,
    }
}

impl Congruence {
    /// The smallest congruence containing the seed pairs: the closure under
    /// symmetry, transitivity, addition with constants, and the scalar
    /// action, computed by fixed-point iteration.
    pub fn closure(carrier: &Arc<FiniteSemimodule>, seeds: &[(usize, usize)]) -> Congruence {
        let n = carrier.size();
        let mut uf = UnionFind::new(n);
        for &(a, b) in seeds {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in (x + 1)..n {
                    if uf.find(x) != uf.find(y) {
                        continue;
                    }
                    for z in 0..n {
                        changed |= uf.union(carrier.add(x, z), carrier.add(y, z));
                    }
                    if let Some(sr) = carrier.scalars().semiring() {
                        for l in 0..sr.size() {
                            changed |= uf.union(carrier.act(l, x), carrier.act(l, y));
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        partition_from(carrier, &mut uf)
    }

    /// Builds a congruence from a given relation after verifying that the
    /// relation is reflexive, symmetric, transitive and compatible with the
    /// structure. Useful when a relation is claimed to be a congruence and
    /// the engine must re-prove it.
    pub fn from_relation(
        carrier: &Arc<FiniteSemimodule>,
        related: impl Fn(usize, usize) -> bool,
    ) -> Result<Congruence, AlgebraError> {
        let n = carrier.size();
        for x in 0..n {
            if !related(x, x) {
                return Err(AlgebraError::axiom(
                    "congruence-reflexivity",
                    vec![carrier.name_of(x).to_owned()],
                ));
            }
            for y in 0..n {
                if related(x, y) != related(y, x) {
                    return Err(AlgebraError::axiom(
                        "congruence-symmetry",
                        vec![carrier.name_of(x).to_owned(), carrier.name_of(y).to_owned()],
                    ));
                }
                for z in 0..n {
                    if related(x, y) && related(y, z) && !related(x, z) {
                        return Err(AlgebraError::axiom(
                            "congruence-transitivity",
                            vec![
                                carrier.name_of(x).to_owned(),
                                carrier.name_of(y).to_owned(),
                                carrier.name_of(z).to_owned(),
                            ],
                        ));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !related(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !related(carrier.add(x, z), carrier.add(y, z)) {
                        return Err(AlgebraError::axiom(
                            "congruence-addition",
                            vec![
                                carrier.name_of(x).to_owned(),
                                carrier.name_of(y).to_owned(),
                                carrier.name_of(z).to_owned(),
                            ],
                        ));
                    }
                }
                if let Some(sr) = carrier.scalars().semiring() {
                    for l in 0..sr.size() {
                        if !related(carrier.act(l, x), carrier.act(l, y)) {
                            return Err(AlgebraError::axiom(
                                "congruence-action",
                                vec![sr.name_of(l).to_owned(), carrier.name_of(x).to_owned()],
                            ));
                        }
                    }
                }
            }
        }
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in (x + 1)..n {
                if related(x, y) {
                    uf.union(x, y);
                }
            }
        }
        Ok(partition_from(carrier, &mut uf))
    }

    pub fn discrete(carrier: &Arc<FiniteSemimodule>) -> Congruence {
        let n = carrier.size();
        Congruence {
            carrier: carrier.clone(),
            class_of: (0..n).collect(),
            classes: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteSemimodule> {
        &self.carrier
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.carrier.size()
    }

    /// Re-checks compatibility with addition and the action.
    pub fn verify_compatible(&self) -> Result<(), AlgebraError> {
        let n = self.carrier.size();
        for x in 0..n {
            for y in 0..n {
                if !self.related(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !self.related(self.carrier.add(x, z), self.carrier.add(y, z)) {
                        return Err(AlgebraError::axiom(
                            "congruence-addition",
                            vec![
                                self.carrier.name_of(x).to_owned(),
                                self.carrier.name_of(y).to_owned(),
                                self.carrier.name_of(z).to_owned(),
                            ],
                        ));
                    }
                }
                if let Some(sr) = self.carrier.scalars().semiring() {
                    for l in 0..sr.size() {
                        if !self.related(self.carrier.act(l, x), self.carrier.act(l, y)) {
                            return Err(AlgebraError::axiom(
                                "congruence-action",
                                vec![sr.name_of(l).to_owned(), self.carrier.name_of(x).to_owned()],
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Materializes the quotient semimodule. A discrete congruence returns
    /// the carrier itself with the identity projection; otherwise classes
    /// are named `[r]` after their least member `r`.
    pub fn quotient(&self) -> QuotientResult {
        if self.is_discrete() {
            return QuotientResult {
                module: self.carrier.clone(),
                projection: Hom::identity(&self.carrier),
                class_of: self.class_of.clone(),
            };
        }
        let k = self.classes.len();
        let reps: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        let elements: Vec<String> = reps
            .iter()
            .map(|&r| format!("[{}]", self.carrier.name_of(r)))
            .collect();
        let mut add = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                add[i][j] = self.class_of[self.carrier.add(reps[i], reps[j])];
            }
        }
        let zero = self.class_of[self.carrier.zero()];
        let module = match self.carrier.scalars() {
            Scalars::Natural => {
                FiniteSemimodule::monoid(elements, add, zero).expect("quotient monoid is valid")
            }
            Scalars::Semiring(sr) => {
                let mut action = vec![vec![0usize; k]; sr.size()];
                for l in 0..sr.size() {
                    for (i, &r) in reps.iter().enumerate() {
                        action[l][i] = self.class_of[self.carrier.act(l, r)];
                    }
                }
                FiniteSemimodule::over_semiring(sr.clone(), elements, add, zero, action)
                    .expect("quotient semimodule is valid")
            }
        };
        let projection = Hom::new(self.carrier.clone(), module.clone(), self.class_of.clone())
            .expect("projection is a hom");
        QuotientResult {
            module,
            projection,
            class_of: self.class_of.clone(),
        }
    }
}

/// A quotient carrier with its canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub module: Arc<FiniteSemimodule>,
    pub projection: Hom,
    pub class_of: Vec<usize>,
}

/// Quotient of `B` by the smallest congruence some class of which contains
/// the subsemimodule `A`. The classes are verified against the bracket
/// characterization `[b1] = [b2] ⟺ a1+b1 = a2+b2 for some a1,a2 ∈ A`.
pub fn quotient_by_subsemimodule(
    b: &Arc<FiniteSemimodule>,
    a: &Subsemimodule,
) -> Result<(Arc<FiniteSemimodule>, Hom), AlgebraError> {
    if a.parent() != b {
        return Err(AlgebraError::NotSubsemimodule(
            "subsemimodule belongs to a different carrier".into(),
        ));
    }
    let zero = b.zero();
    let seeds: Vec<(usize, usize)> = a.members().iter().map(|&m| (m, zero)).collect();
    let cong = Congruence::closure(b, &seeds);
    // Bracket characterization, checked exhaustively.
    for b1 in 0..b.size() {
        for b2 in 0..b.size() {
            let translated = a
                .members()
                .iter()
                .any(|&a1| a.members().iter().any(|&a2| b.add(a1, b1) == b.add(a2, b2)));
            if translated != cong.related(b1, b2) {
                return Err(AlgebraError::axiom(
                    "quotient-bracket-characterization",
                    vec![b.name_of(b1).to_owned(), b.name_of(b2).to_owned()],
                ));
            }
        }
    }
    let q = cong.quotient();
    Ok((q.module, q.projection))
}

/// The largest cancellative homomorphic image `M'` of a semimodule, with the
/// canonical surjection. The defining relation `m1 ~ m2 ⟺ ∃m, m1+m = m2+m`
/// is verified to be a congruence and the image verified cancellative.
pub fn max_cancellative_image(m: &Arc<FiniteSemimodule>) -> (Arc<FiniteSemimodule>, Hom) {
    let n = m.size();
    let related = |x: usize, y: usize| (0..n).any(|z| m.add(x, z) == m.add(y, z));
    let cong = Congruence::from_relation(m, related).expect("merging relation is a congruence");
    let q = cong.quotient();
    debug_assert!(q.module.is_cancellative());
    (q.module, q.projection)
}

/// The largest additively cancellative homomorphic image `C(Λ)` of a
/// semiring; both operations descend to the quotient.
pub fn additively_cancellative_image(
    sr: &Arc<FiniteSemiring>,
) -> (Arc<FiniteSemiring>, Vec<usize>) {
    let n = sr.size();
    let related = |x: usize, y: usize| (0..n).any(|z| sr.add(z, x) == sr.add(z, y));
    // Group elements into classes ordered by least member.
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        let hit = reps.iter().position(|&r| related(r, x));
        match hit {
            Some(c) => class_of[x] = c,
            None => {
                reps.push(x);
                class_of[x] = reps.len() - 1;
            }
        }
    }
    let k = reps.len();
    let elements: Vec<String> = reps
        .iter()
        .map(|&r| {
            if k == n {
                sr.name_of(r).to_owned()
            } else {
                format!("[{}]", sr.name_of(r))
            }
        })
        .collect();
    let mut add = vec![vec![0usize; k]; k];
    let mut mul = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            add[i][j] = class_of[sr.add(reps[i], reps[j])];
            mul[i][j] = class_of[sr.mul(reps[i], reps[j])];
        }
    }
    // Both operations must descend: verify independence from representatives.
    for x in 0..n {
        for y in 0..n {
            assert_eq!(
                class_of[sr.add(x, y)],
                add[class_of[x]][class_of[y]],
                "addition descends to the quotient"
            );
            assert_eq!(
                class_of[sr.mul(x, y)],
                mul[class_of[x]][class_of[y]],
                "multiplication descends to the quotient"
            );
        }
    }
    let quotient = FiniteSemiring::new(elements, add, mul, class_of[sr.zero()], class_of[sr.one()])
        .expect("quotient semiring is valid");
    assert!(quotient.is_additively_cancellative());
    (quotient, class_of)
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::iso;

    use super::*;

    #[test]
    fn closure_on_l2_collapses_everything() {
        let l2 = fixtures::l2();
        let e = l2.index_of("e").unwrap();
        let cong = Congruence::closure(&l2, &[(l2.zero(), e)]);
        assert_eq!(cong.classes().len(), 1);
    }

    #[test]
    fn empty_seed_gives_discrete_partition() {
        let z4 = fixtures::cyclic(4);
        let cong = Congruence::closure(&z4, &[]);
        assert!(cong.is_discrete());
    }

    #[test]
    fn closure_on_z4_from_one_pair() {
        let z4 = fixtures::cyclic(4);
        let cong = Congruence::closure(&z4, &[(1, 3)]);
        assert_eq!(cong.classes(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn quotient_of_z4_by_two_torsion() {
        let z4 = fixtures::cyclic(4);
        let sub = Subsemimodule::new(z4.clone(), vec![0, 2]).unwrap();
        let (q, proj) = quotient_by_subsemimodule(&z4, &sub).unwrap();
        assert_eq!(q.size(), 2);
        assert!(iso::are_isomorphic(&q, &fixtures::cyclic(2)));
        assert_eq!(proj.apply(1), proj.apply(3));
        assert_ne!(proj.apply(0), proj.apply(1));
    }

    #[test]
    fn quotient_by_zero_on_cancellative_carrier_is_identity() {
        let z4 = fixtures::cyclic(4);
        let sub = Subsemimodule::zero_sub(z4.clone());
        let (q, proj) = quotient_by_subsemimodule(&z4, &sub).unwrap();
        assert_eq!(q, z4);
        assert_eq!(proj, Hom::identity(&z4));
    }

    #[test]
    fn quotient_of_n3_by_top_collapses() {
        let n3 = fixtures::n_sat(3);
        let sub = Subsemimodule::new(n3.clone(), vec![0, 2]).unwrap();
        let (q, _) = quotient_by_subsemimodule(&n3, &sub).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn max_cancellative_images() {
        let l2 = fixtures::l2();
        let (m, k) = max_cancellative_image(&l2);
        assert!(m.is_trivial());
        assert!(k.is_surjective());

        let z2 = fixtures::cyclic(2);
        let (m, k) = max_cancellative_image(&z2);
        assert_eq!(m, z2);
        assert_eq!(k, Hom::identity(&z2));

        let n3 = fixtures::n_sat(3);
        let (m, _) = max_cancellative_image(&n3);
        assert!(m.is_trivial());
    }

    #[test]
    fn max_cancellative_image_is_idempotent() {
        for m in [fixtures::l2(), fixtures::n_sat(3), fixtures::cyclic(4)] {
            let (m1, _) = max_cancellative_image(&m);
            let (m2, _) = max_cancellative_image(&m1);
            assert!(iso::are_isomorphic(&m1, &m2));
        }
    }

    #[test]
    fn additively_cancellative_image_of_semirings() {
        let boolean = fixtures::boolean_semiring();
        let (c, _) = additively_cancellative_image(&boolean);
        assert_eq!(c.size(), 1);

        let z2 = fixtures::z2_semiring();
        let (c, _) = additively_cancellative_image(&z2);
        assert_eq!(c, z2);

        let n4 = fixtures::n4_saturating_semiring();
        let (c, _) = additively_cancellative_image(&n4);
        assert_eq!(c.size(), 1);
    }
}
