//! Finite semirings given by explicit addition and multiplication tables.

use std::sync::Arc;

use crate::error::AlgebraError;

/// A finite semiring: a carrier with a commutative additive monoid, a
/// multiplicative monoid, two-sided distributivity and a two-sided
/// multiplicatively absorbing zero. All axioms are checked exhaustively at
/// construction; operations may assume validity afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    elements: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

pub(crate) fn check_square(
    n: usize,
    table: &[Vec<usize>],
    label: &str,
) -> Result<(), AlgebraError> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{label} table is not {n}x{n}"
        )));
    }
    for row in table {
        for &v in row {
            if v >= n {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "{label} table entry {v} out of range"
                )));
            }
        }
    }
    Ok(())
}

/// Checks that `(elements, table, zero)` is a commutative monoid, reporting
/// the first violated axiom with witnesses.
pub(crate) fn check_commutative_monoid(
    names: &[String],
    table: &[Vec<usize>],
    zero: usize,
) -> Result<(), AlgebraError> {
    let n = names.len();
    for i in 0..n {
        if table[zero][i] != i {
            return Err(AlgebraError::axiom("identity", vec![names[i].clone()]));
        }
        if table[i][zero] != i {
            return Err(AlgebraError::axiom("identity", vec![names[i].clone()]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return Err(AlgebraError::axiom(
                    "commutativity",
                    vec![names[i].clone(), names[j].clone()],
                ));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(AlgebraError::axiom(
                        "associativity",
                        vec![names[i].clone(), names[j].clone(), names[k].clone()],
                    ));
                }
            }
        }
    }
    Ok(())
}

impl FiniteSemiring {
    /// Validates raw tables into a semiring (the `validate_semiring` entry point).
    pub fn new(
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(AlgebraError::ShapeMismatch("empty carrier".into()));
        }
        if zero >= n || one >= n {
            return Err(AlgebraError::ShapeMismatch(
                "distinguished element out of range".into(),
            ));
        }
        check_square(n, &add, "addition")?;
        check_square(n, &mul, "multiplication")?;
        check_commutative_monoid(&elements, &add, zero)?;

        // (elements, mul, one) is a monoid.
        for i in 0..n {
            if mul[one][i] != i || mul[i][one] != i {
                return Err(AlgebraError::axiom(
                    "mul-identity",
                    vec![elements[i].clone()],
                ));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if mul[mul[i][j]][k] != mul[i][mul[j][k]] {
                        return Err(AlgebraError::axiom(
                            "mul-associativity",
                            vec![
                                elements[i].clone(),
                                elements[j].clone(),
                                elements[k].clone(),
                            ],
                        ));
                    }
                }
            }
        }
        // Distributivity on both sides and absorption by zero.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if mul[i][add[j][k]] != add[mul[i][j]][mul[i][k]] {
                        return Err(AlgebraError::axiom(
                            "left-distributivity",
                            vec![
                                elements[i].clone(),
                                elements[j].clone(),
                                elements[k].clone(),
                            ],
                        ));
                    }
                    if mul[add[j][k]][i] != add[mul[j][i]][mul[k][i]] {
                        return Err(AlgebraError::axiom(
                            "right-distributivity",
                            vec![
                                elements[j].clone(),
                                elements[k].clone(),
                                elements[i].clone(),
                            ],
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            if mul[zero][i] != zero || mul[i][zero] != zero {
                return Err(AlgebraError::axiom(
                    "zero-annihilation",
                    vec![elements[i].clone()],
                ));
            }
        }
        Ok(Arc::new(FiniteSemiring {
            elements,
            add,
            mul,
            zero,
            one,
        }))
    }

    pub fn size(&self) -> usize {
        self.elements.len()
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

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// True when every element has an additive inverse, i.e. the semiring is a ring.
    pub fn is_ring(&self) -> bool {
        (0..self.size()).all(|i| (0..self.size()).any(|j| self.add[i][j] == self.zero))
    }

    /// True when addition is cancellative.
    pub fn is_additively_cancellative(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.add[a][b] == self.add[a][c] && b != c {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    use super::*;

    #[test]
    fn boolean_semiring_is_valid() {
        let b = fixtures::boolean_semiring();
        assert_eq!(b.size(), 2);
        assert_eq!(b.add(1, 1), 1);
        assert!(!b.is_additively_cancellative());
    }

    #[test]
    fn z2_as_semiring_is_valid_and_ring() {
        let z2 = fixtures::z2_semiring();
        assert_eq!(z2.add(1, 1), 0);
        assert!(z2.is_ring());
        assert!(z2.is_additively_cancellative());
    }

    #[test]
    fn broken_identity_is_reported() {
        // 0 + 1 = 0 breaks the additive identity at element 1.
        let err = FiniteSemiring::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::AxiomViolation {
                axiom: "identity",
                witness: vec!["1".into()]
            }
        );
    }

    #[test]
    fn n4_saturating_semiring_is_valid() {
        let n4 = fixtures::n4_saturating_semiring();
        assert_eq!(n4.size(), 4);
        assert_eq!(n4.add(2, 3), 3);
        assert_eq!(n4.mul(2, 2), 3);
        assert!(!n4.is_additively_cancellative());
    }
}
