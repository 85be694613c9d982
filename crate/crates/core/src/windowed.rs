//! A bounded window onto the free commutative monoid `N^d`.
//!
//! Finite cancellative commutative monoids are necessarily groups, so a
//! genuinely cancellative non-module carrier can only be exercised through
//! an unbounded-carrier surrogate. The window keeps every existential search
//! bounded: searches return a witness or an explicit
//! no-witness-within-bound verdict, and arithmetic that leaves the window
//! reports [`WindowInconclusive`] instead of truncating.

use thiserror::Error;

/// Raised when a computation needs a value outside the declared window.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("inconclusive within window bound {bound}: {detail}")]
pub struct WindowInconclusive {
    pub bound: u64,
    pub detail: String,
}

/// Outcome of a bounded existential search.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundedSearch<T> {
    Witness(T),
    NoWitnessWithinBound,
}

impl<T> BoundedSearch<T> {
    pub fn found(&self) -> bool {
        matches!(self, BoundedSearch::Witness(_))
    }
}

/// Integer vectors with coordinates in `[0, bound]`, with partial addition.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedFreeSemimodule {
    rank: usize,
    bound: u64,
}

impl WindowedFreeSemimodule {
    pub fn new(rank: usize, bound: u64) -> Self {
        assert!(rank >= 1, "rank must be positive");
        assert!(bound >= 1, "bound must be positive");
        WindowedFreeSemimodule { rank, bound }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank]
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.rank && v.iter().all(|&x| x <= self.bound)
    }

    /// Addition, defined only when the sum stays inside the window.
    pub fn add(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, WindowInconclusive> {
        debug_assert!(self.contains(x) && self.contains(y));
        let sum: Vec<u64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        if sum.iter().any(|&c| c > self.bound) {
            return Err(WindowInconclusive {
                bound: self.bound,
                detail: format!("sum {sum:?} leaves the window"),
            });
        }
        Ok(sum)
    }

    /// Iterates all vectors inside the window. Exponential in the rank;
    /// intended for rank 1 or 2 at desk scale.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..self.rank {
            let mut next = Vec::new();
            for prefix in &out {
                for c in 0..=self.bound {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Searches the window for a cancellation failure `a+b = a+c`, `b != c`.
    /// The free carrier is cancellative, so the expected outcome is
    /// `NoWitnessWithinBound`; the search is still performed.
    pub fn cancellation_witness(&self) -> BoundedSearch<(Vec<u64>, Vec<u64>, Vec<u64>)> {
        let elems = self.elements();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    if b == c {
                        continue;
                    }
                    let ab: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let ac: Vec<u64> = a.iter().zip(c).map(|(x, y)| x + y).collect();
                    if ab == ac {
                        return BoundedSearch::Witness((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        BoundedSearch::NoWitnessWithinBound
    }

    /// Decides whether the pairs `(u,v)` and `(x,y)` fall into the same
    /// completion class, searching for the translating `z` inside the window.
    /// On the free carrier `u+y = v+x` is already decisive; the bounded
    /// search is the generic fallback.
    pub fn pairs_equivalent(
        &self,
        (u, v): (&[u64], &[u64]),
        (x, y): (&[u64], &[u64]),
    ) -> BoundedSearch<Vec<u64>> {
        let lhs: Vec<u64> = u.iter().zip(y).map(|(a, b)| a + b).collect();
        let rhs: Vec<u64> = v.iter().zip(x).map(|(a, b)| a + b).collect();
        if lhs == rhs {
            return BoundedSearch::Witness(self.zero());
        }
        for z in self.elements() {
            let l: Vec<u64> = lhs.iter().zip(&z).map(|(a, b)| a + b).collect();
            let r: Vec<u64> = rhs.iter().zip(&z).map(|(a, b)| a + b).collect();
            if l == r {
                return BoundedSearch::Witness(z);
            }
        }
        BoundedSearch::NoWitnessWithinBound
    }

    /// The symbolic completion `Z^rank`, carrying the window bound.
    pub fn complete(&self) -> FreeCompletion {
        FreeCompletion {
            rank: self.rank,
            bound: self.bound,
        }
    }
}

/// The group completion of the windowed free carrier, represented
/// symbolically as `Z^rank` with differences bounded by the window.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeCompletion {
    rank: usize,
    bound: u64,
}

impl FreeCompletion {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn check(&self, v: &[i64]) -> Result<(), WindowInconclusive> {
        if v.iter().any(|&c| c.unsigned_abs() > self.bound) {
            return Err(WindowInconclusive {
                bound: self.bound,
                detail: format!("value {v:?} leaves the completed window"),
            });
        }
        Ok(())
    }

    /// The class of the pair `(u, v)`: the coordinatewise difference.
    pub fn class_of_pair(&self, u: &[u64], v: &[u64]) -> Result<Vec<i64>, WindowInconclusive> {
        let diff: Vec<i64> = u
            .iter()
            .zip(v)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        self.check(&diff)?;
        Ok(diff)
    }

    /// The canonical map `k(x) = [x, 0]`.
    pub fn canonical(&self, x: &[u64]) -> Result<Vec<i64>, WindowInconclusive> {
        self.class_of_pair(x, &vec![0; x.len()])
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>, WindowInconclusive> {
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.check(&sum)?;
        Ok(sum)
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter().map(|&c| -c).collect()
    }

    /// The canonical map restricted to the window is injective.
    pub fn canonical_injective_on_window(&self, carrier: &WindowedFreeSemimodule) -> bool {
        let elems = carrier.elements();
        for (i, x) in elems.iter().enumerate() {
            for y in elems.iter().skip(i + 1) {
                if self.canonical(x) == self.canonical(y) {
                    return false;
                }
            }
        }
        true
    }
}

/// A nonnegative integer matrix acting as a hom between free carriers.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixHom {
    /// `entries[r][c]`: coefficient of source coordinate `c` in target row `r`.
    pub entries: Vec<Vec<u64>>,
    pub rows: usize,
    pub cols: usize,
}

impl MatrixHom {
    pub fn new(
        entries: Vec<Vec<u64>>,
        rows: usize,
        cols: usize,
    ) -> Result<Self, WindowInconclusive> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(WindowInconclusive {
                bound: 0,
                detail: "matrix shape mismatch".into(),
            });
        }
        Ok(MatrixHom {
            entries,
            rows,
            cols,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixHom {
            entries: vec![vec![0; cols]; rows],
            rows,
            cols,
        }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entries[r][c] * v[c]).sum())
            .collect()
    }

    fn compose(&self, first: &MatrixHom) -> MatrixHom {
        let mut entries = vec![vec![0u64; first.cols]; self.rows];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..self.cols)
                    .map(|k| self.entries[r][k] * first.entries[k][c])
                    .sum();
            }
        }
        MatrixHom {
            entries,
            rows: self.rows,
            cols: first.cols,
        }
    }

    fn plus(&self, other: &MatrixHom) -> MatrixHom {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        MatrixHom {
            entries,
            rows: self.rows,
            cols: self.cols,
        }
    }
}

/// A bounded chain complex of windowed free carriers with matrix
/// differentials. The chain condition is an exact matrix identity; homology
/// is only semi-decided, with witness searches restricted to the window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedComplex {
    bound: u64,
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    dplus: Vec<MatrixHom>,
    dminus: Vec<MatrixHom>,
}

/// The bounded homology verdict: the classes found within the window, and
/// whether the partition is conclusive (it is exactly when every pair of
/// cycles was positively related).
#[derive(Debug, Clone)]
pub struct WindowedHomology {
    pub degree: i64,
    pub cycles: Vec<Vec<u64>>,
    pub classes: Vec<Vec<usize>>,
    pub conclusive: bool,
}

impl WindowedComplex {
    pub fn new(
        bound: u64,
        ranks: std::collections::BTreeMap<i64, usize>,
        mut dplus: std::collections::BTreeMap<i64, MatrixHom>,
        mut dminus: std::collections::BTreeMap<i64, MatrixHom>,
    ) -> Result<Self, WindowInconclusive> {
        let lo = *ranks.keys().next().ok_or_else(|| WindowInconclusive {
            bound,
            detail: "empty window".into(),
        })?;
        let hi = *ranks.keys().last().unwrap();
        if ranks.len() != (hi - lo + 1) as usize {
            return Err(WindowInconclusive {
                bound,
                detail: "window is not contiguous".into(),
            });
        }
        let rank_list: Vec<usize> = (lo..=hi).map(|n| ranks[&n]).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for n in (lo + 1)..=hi {
            let rows = rank_list[(n - lo - 1) as usize];
            let cols = rank_list[(n - lo) as usize];
            let dp = dplus
                .remove(&n)
                .unwrap_or_else(|| MatrixHom::zero(rows, cols));
            let dm = dminus
                .remove(&n)
                .unwrap_or_else(|| MatrixHom::zero(rows, cols));
            if dp.rows != rows || dp.cols != cols || dm.rows != rows || dm.cols != cols {
                return Err(WindowInconclusive {
                    bound,
                    detail: format!("differential at degree {n} has the wrong shape"),
                });
            }
            plus.push(dp);
            minus.push(dm);
        }
        let complex = WindowedComplex {
            bound,
            lo,
            hi,
            ranks: rank_list,
            dplus: plus,
            dminus: minus,
        };
        // Chain condition as an exact matrix identity over N.
        for m in (lo + 2)..=hi {
            let dp_m = complex.dplus_at(m);
            let dm_m = complex.dminus_at(m);
            let dp = complex.dplus_at(m - 1);
            let dm = complex.dminus_at(m - 1);
            let lhs = dp.compose(&dp_m).plus(&dm.compose(&dm_m));
            let rhs = dp.compose(&dm_m).plus(&dm.compose(&dp_m));
            if lhs != rhs {
                return Err(WindowInconclusive {
                    bound,
                    detail: format!("chain condition fails at degree {m}"),
                });
            }
        }
        Ok(complex)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn dplus_at(&self, n: i64) -> MatrixHom {
        if n > self.lo && n <= self.hi {
            self.dplus[(n - self.lo - 1) as usize].clone()
        } else {
            MatrixHom::zero(self.rank_at(n - 1), self.rank_at(n))
        }
    }

    pub fn dminus_at(&self, n: i64) -> MatrixHom {
        if n > self.lo && n <= self.hi {
            self.dminus[(n - self.lo - 1) as usize].clone()
        } else {
            MatrixHom::zero(self.rank_at(n - 1), self.rank_at(n))
        }
    }

    /// Cycles inside the window: `D⁺x = D⁻x` decided by exact arithmetic.
    pub fn cycles(&self, n: i64) -> Vec<Vec<u64>> {
        let carrier = WindowedFreeSemimodule::new(self.rank_at(n).max(1), self.bound);
        let dp = self.dplus_at(n);
        let dm = self.dminus_at(n);
        if self.rank_at(n) == 0 {
            return vec![vec![]];
        }
        carrier
            .elements()
            .into_iter()
            .filter(|x| dp.apply(x) == dm.apply(x))
            .collect()
    }

    /// Bounded homology: relates cycles by searching `(u, v)` inside the
    /// window one degree up. The result is conclusive only when every pair
    /// of cycles was positively related (the quotient is then proved
    /// trivial); otherwise the partial partition is reported through the
    /// error.
    pub fn homology(&self, n: i64) -> Result<WindowedHomology, WindowInconclusive> {
        let cycles = self.cycles(n);
        let up_rank = self.rank_at(n + 1);
        let dp = self.dplus_at(n + 1);
        let dm = self.dminus_at(n + 1);
        let ups = if up_rank == 0 {
            vec![vec![]]
        } else {
            WindowedFreeSemimodule::new(up_rank, self.bound).elements()
        };
        let k = cycles.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let mut all_related = true;
        for i in 0..k {
            for j in (i + 1)..k {
                let mut related = false;
                'search: for u in &ups {
                    for v in &ups {
                        let lhs: Vec<u64> = cycles[i]
                            .iter()
                            .zip(dp.apply(u))
                            .zip(dm.apply(v))
                            .map(|((&x, p), m)| x + p + m)
                            .collect();
                        let rhs: Vec<u64> = cycles[j]
                            .iter()
                            .zip(dp.apply(v))
                            .zip(dm.apply(u))
                            .map(|((&x, p), m)| x + p + m)
                            .collect();
                        if lhs == rhs {
                            related = true;
                            break 'search;
                        }
                    }
                }
                if related {
                    let ri = find(&mut parent, i);
                    let rj = find(&mut parent, j);
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                } else {
                    all_related = false;
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..k {
            let root = find(&mut parent, i);
            classes.entry(root).or_default().push(i);
        }
        let classes: Vec<Vec<usize>> = classes.into_values().collect();
        let conclusive = all_related || k <= 1;
        let result = WindowedHomology {
            degree: n,
            cycles,
            classes,
            conclusive,
        };
        if conclusive {
            Ok(result)
        } else {
            Err(WindowInconclusive {
                bound: self.bound,
                detail: format!(
                    "H_{} undecided within the window: {} classes found among {} cycles, \
                     unrelated pairs may merge beyond the bound",
                    n,
                    result.classes.len(),
                    result.cycles.len()
                ),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_window_reports_no_cancellation_witness() {
        let free = WindowedFreeSemimodule::new(1, 32);
        assert_eq!(
            free.cancellation_witness(),
            BoundedSearch::NoWitnessWithinBound
        );
    }

    #[test]
    fn addition_overflow_is_flagged() {
        let free = WindowedFreeSemimodule::new(1, 32);
        assert!(free.add(&[20], &[12]).is_ok());
        assert!(free.add(&[20], &[13]).is_err());
    }

    #[test]
    fn completion_is_symbolic_integers() {
        let free = WindowedFreeSemimodule::new(1, 32);
        let k = free.complete();
        assert_eq!(k.rank(), 1);
        assert_eq!(k.class_of_pair(&[3], &[5]).unwrap(), vec![-2]);
        assert_eq!(k.canonical(&[7]).unwrap(), vec![7]);
        assert!(k.canonical_injective_on_window(&free));
        // Arithmetic beyond the window raises rather than truncating.
        assert!(k.add(&[30], &[5]).is_err());
        assert!(k.add(&[-30], &[-5]).is_err());
        assert_eq!(k.add(&[30], &[-5]).unwrap(), vec![25]);
    }

    #[test]
    fn pair_equivalence_is_decided_inside_the_window() {
        let free = WindowedFreeSemimodule::new(1, 8);
        assert!(free.pairs_equivalent((&[3], &[1]), (&[4], &[2])).found());
        assert_eq!(
            free.pairs_equivalent((&[3], &[1]), (&[4], &[3])),
            BoundedSearch::NoWitnessWithinBound
        );
    }

    #[test]
    fn windowed_complex_chain_condition_is_exact_matrix_arithmetic() {
        use std::collections::BTreeMap;
        // d1 = (2), d0 = (0) in ranks 1,1,1: d0∘d1 = 0 holds.
        let mut ranks = BTreeMap::new();
        for n in -1..=1 {
            ranks.insert(n, 1usize);
        }
        let mut dplus = BTreeMap::new();
        dplus.insert(1, MatrixHom::new(vec![vec![2]], 1, 1).unwrap());
        let complex = WindowedComplex::new(8, ranks.clone(), dplus, BTreeMap::new()).unwrap();
        assert_eq!(complex.rank_at(0), 1);

        // d1 = d0 = identity violates the condition.
        let mut dplus = BTreeMap::new();
        dplus.insert(1, MatrixHom::new(vec![vec![1]], 1, 1).unwrap());
        dplus.insert(0, MatrixHom::new(vec![vec![1]], 1, 1).unwrap());
        assert!(WindowedComplex::new(8, ranks, dplus, BTreeMap::new()).is_err());
    }

    #[test]
    fn windowed_homology_is_inconclusive_when_classes_may_merge() {
        use std::collections::BTreeMap;
        // N --2--> N in degrees 1, 0: H_0 within the window cannot be decided.
        let mut ranks = BTreeMap::new();
        ranks.insert(0, 1usize);
        ranks.insert(1, 1usize);
        let mut dplus = BTreeMap::new();
        dplus.insert(1, MatrixHom::new(vec![vec![2]], 1, 1).unwrap());
        let complex = WindowedComplex::new(4, ranks, dplus, BTreeMap::new()).unwrap();
        let err = complex.homology(0).unwrap_err();
        assert!(err.detail.contains("undecided"));
        // Degree 1 cycles: 2x = 0 forces x = 0; conclusive singleton.
        let h1 = complex.homology(1).unwrap();
        assert!(h1.conclusive);
        assert_eq!(h1.cycles, vec![vec![0]]);
    }
}
