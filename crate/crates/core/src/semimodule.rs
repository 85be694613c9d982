//! Finite semimodules: commutative monoids carrying a semiring action.
//!
//! A plain commutative monoid is treated as a semimodule over the
//! (unmaterialized) semiring of nonnegative integers, acting by iterated
//! addition. A module is the special case where every element has an
//! additive inverse.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::semiring::{check_commutative_monoid, check_square, FiniteSemiring};

/// The scalar base of a semimodule: either the nonnegative integers acting
/// by iterated addition, or an explicit finite semiring with an action table.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalars {
    Natural,
    Semiring(Arc<FiniteSemiring>),
}

impl Scalars {
    pub fn is_natural(&self) -> bool {
        matches!(self, Scalars::Natural)
    }

    pub fn semiring(&self) -> Option<&Arc<FiniteSemiring>> {
        match self {
            Scalars::Natural => None,
            Scalars::Semiring(sr) => Some(sr),
        }
    }
}

/// A finite semimodule with explicit tables. Axioms are checked exhaustively
/// at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSemimodule {
    scalars: Scalars,
    elements: Vec<String>,
    add: Vec<Vec<usize>>,
    zero: usize,
    /// `action[l][a]`, present exactly when `scalars` is a semiring.
    action: Option<Vec<Vec<usize>>>,
}

impl FiniteSemimodule {
    /// Validates a commutative monoid as a semimodule over the nonnegative
    /// integers (action synthesized from iterated addition, never stored).
    pub fn monoid(
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        zero: usize,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(AlgebraError::ShapeMismatch("empty carrier".into()));
        }
        if zero >= n {
            return Err(AlgebraError::ShapeMismatch("zero out of range".into()));
        }
        check_square(n, &add, "addition")?;
        check_commutative_monoid(&elements, &add, zero)?;
        Ok(Arc::new(FiniteSemimodule {
            scalars: Scalars::Natural,
            elements,
            add,
            zero,
            action: None,
        }))
    }

    /// Validates tables into a semimodule over an explicit semiring
    /// (the `validate_semimodule` entry point for the table-backed case).
    pub fn over_semiring(
        semiring: Arc<FiniteSemiring>,
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        zero: usize,
        action: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(AlgebraError::ShapeMismatch("empty carrier".into()));
        }
        if zero >= n {
            return Err(AlgebraError::ShapeMismatch("zero out of range".into()));
        }
        check_square(n, &add, "addition")?;
        check_commutative_monoid(&elements, &add, zero)?;

        let k = semiring.size();
        if action.len() != k || action.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "action table is not {k}x{n}"
            )));
        }
        for row in &action {
            for &v in row {
                if v >= n {
                    return Err(AlgebraError::ShapeMismatch(
                        "action table entry out of range".into(),
                    ));
                }
            }
        }
        for a in 0..n {
            if action[semiring.one()][a] != a {
                return Err(AlgebraError::axiom(
                    "unit-action",
                    vec![elements[a].clone()],
                ));
            }
            if action[semiring.zero()][a] != zero {
                return Err(AlgebraError::axiom(
                    "zero-action",
                    vec![elements[a].clone()],
                ));
            }
        }
        for l in 0..k {
            for a in 0..n {
                for b in 0..n {
                    if action[l][add[a][b]] != add[action[l][a]][action[l][b]] {
                        return Err(AlgebraError::axiom(
                            "action-add-distributivity",
                            vec![
                                semiring.name_of(l).to_owned(),
                                elements[a].clone(),
                                elements[b].clone(),
                            ],
                        ));
                    }
                }
            }
        }
        for l in 0..k {
            for m in 0..k {
                for a in 0..n {
                    if action[semiring.add(l, m)][a] != add[action[l][a]][action[m][a]] {
                        return Err(AlgebraError::axiom(
                            "action-scalar-addition",
                            vec![
                                semiring.name_of(l).to_owned(),
                                semiring.name_of(m).to_owned(),
                                elements[a].clone(),
                            ],
                        ));
                    }
                    if action[semiring.mul(l, m)][a] != action[l][action[m][a]] {
                        return Err(AlgebraError::axiom(
                            "action-scalar-multiplication",
                            vec![
                                semiring.name_of(l).to_owned(),
                                semiring.name_of(m).to_owned(),
                                elements[a].clone(),
                            ],
                        ));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteSemimodule {
            scalars: Scalars::Semiring(semiring),
            elements,
            add,
            zero,
            action: Some(action),
        }))
    }

    /// The one-element semimodule over the given scalar base.
    pub fn zero_module(scalars: Scalars) -> Arc<Self> {
        let action = scalars.semiring().map(|sr| vec![vec![0usize]; sr.size()]);
        Arc::new(FiniteSemimodule {
            scalars,
            elements: vec!["0".into()],
            add: vec![vec![0]],
            zero: 0,
            action,
        })
    }

    pub fn scalars(&self) -> &Scalars {
        &self.scalars
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn action_table(&self) -> Option<&[Vec<usize>]> {
        self.action.as_deref()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// Scalar action for semiring-based semimodules.
    pub fn act(&self, l: usize, a: usize) -> usize {
        self.action
            .as_ref()
            .expect("natural scalars have no action table")[l][a]
    }

    /// Iterated-addition action of a nonnegative integer.
    pub fn nat_act(&self, k: u64, a: usize) -> usize {
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add[acc][a];
        }
        acc
    }

    pub fn sum(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.zero, |acc, x| self.add[acc][x])
    }

    /// Additive inverse, if one exists.
    pub fn neg(&self, i: usize) -> Option<usize> {
        (0..self.size()).find(|&j| self.add[i][j] == self.zero)
    }

    /// True when the additive monoid is a group, i.e. the semimodule is a module.
    pub fn is_module(&self) -> bool {
        (0..self.size()).all(|i| self.neg(i).is_some())
    }

    /// Returns a triple `(a, b, c)` with `a+b = a+c` and `b != c`, or `None`
    /// when the semimodule is cancellative.
    pub fn cancellation_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if b != c && self.add[a][b] == self.add[a][c] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellation_witness().is_none()
    }

    /// The submonoid of idempotents `{x | x + x = x}`.
    pub fn idempotent_submonoid(self: &Arc<Self>) -> Subsemimodule {
        let members = (0..self.size()).filter(|&x| self.add(x, x) == x).collect();
        Subsemimodule::new(self.clone(), members).expect("idempotents form a subsemimodule")
    }

    /// The largest subsemimodule whose additive monoid is a group: the
    /// additively invertible elements.
    pub fn units_submodule(self: &Arc<Self>) -> Subsemimodule {
        let members = (0..self.size())
            .filter(|&x| self.neg(x).is_some())
            .collect();
        Subsemimodule::new(self.clone(), members).expect("invertible elements form a subsemimodule")
    }

    pub(crate) fn names(&self, idxs: &[usize]) -> Vec<String> {
        idxs.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

/// A verified subsemimodule: a subset containing zero, closed under addition
/// and under the scalar action.
#[derive(Debug, Clone, PartialEq)]
pub struct Subsemimodule {
    parent: Arc<FiniteSemimodule>,
    members: Vec<usize>,
}

impl Subsemimodule {
    pub fn new(
        parent: Arc<FiniteSemimodule>,
        mut members: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= parent.size()) {
            return Err(AlgebraError::ShapeMismatch("member out of range".into()));
        }
        if !members.contains(&parent.zero()) {
            return Err(AlgebraError::NotSubsemimodule("missing zero".into()));
        }
        let inside = |x: usize| members.binary_search(&x).is_ok();
        for &a in &members {
            for &b in &members {
                if !inside(parent.add(a, b)) {
                    return Err(AlgebraError::NotSubsemimodule(format!(
                        "not closed under addition at {} + {}",
                        parent.name_of(a),
                        parent.name_of(b)
                    )));
                }
            }
        }
        if let Some(sr) = parent.scalars().semiring() {
            for l in 0..sr.size() {
                for &a in &members {
                    if !inside(parent.act(l, a)) {
                        return Err(AlgebraError::NotSubsemimodule(format!(
                            "not closed under the action at {}·{}",
                            sr.name_of(l),
                            parent.name_of(a)
                        )));
                    }
                }
            }
        }
        Ok(Subsemimodule { parent, members })
    }

    pub fn full(parent: Arc<FiniteSemimodule>) -> Self {
        let members = (0..parent.size()).collect();
        Subsemimodule { parent, members }
    }

    pub fn zero_sub(parent: Arc<FiniteSemimodule>) -> Self {
        let members = vec![parent.zero()];
        Subsemimodule { parent, members }
    }

    pub fn parent(&self) -> &Arc<FiniteSemimodule> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.size()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    /// Member names, in carrier order.
    pub fn member_names(&self) -> Vec<String> {
        self.parent.names(&self.members)
    }
}

/// A direct sum `A ⊕ B` with pair elements named `(a|b)`.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Arc<FiniteSemimodule>,
    left: Arc<FiniteSemimodule>,
    right: Arc<FiniteSemimodule>,
}

impl DirectSum {
    pub fn new(
        left: &Arc<FiniteSemimodule>,
        right: &Arc<FiniteSemimodule>,
    ) -> Result<Self, AlgebraError> {
        if left.scalars() != right.scalars() {
            return Err(AlgebraError::ScalarMismatch);
        }
        let nl = left.size();
        let nr = right.size();
        let n = nl * nr;
        let pair = |i: usize, j: usize| i * nr + j;
        let mut elements = Vec::with_capacity(n);
        for i in 0..nl {
            for j in 0..nr {
                elements.push(format!("({}|{})", left.name_of(i), right.name_of(j)));
            }
        }
        let mut add = vec![vec![0usize; n]; n];
        for i in 0..nl {
            for j in 0..nr {
                for x in 0..nl {
                    for y in 0..nr {
                        add[pair(i, j)][pair(x, y)] = pair(left.add(i, x), right.add(j, y));
                    }
                }
            }
        }
        let zero = pair(left.zero(), right.zero());
        let module = match left.scalars() {
            Scalars::Natural => FiniteSemimodule::monoid(elements, add, zero)?,
            Scalars::Semiring(sr) => {
                let mut action = vec![vec![0usize; n]; sr.size()];
                for l in 0..sr.size() {
                    for i in 0..nl {
                        for j in 0..nr {
                            action[l][pair(i, j)] = pair(left.act(l, i), right.act(l, j));
                        }
                    }
                }
                FiniteSemimodule::over_semiring(sr.clone(), elements, add, zero, action)?
            }
        };
        Ok(DirectSum {
            module,
            left: left.clone(),
            right: right.clone(),
        })
    }

    pub fn left(&self) -> &Arc<FiniteSemimodule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteSemimodule> {
        &self.right
    }

    pub fn pair(&self, i: usize, j: usize) -> usize {
        i * self.right.size() + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right.size(), k % self.right.size())
    }
}
