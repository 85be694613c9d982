//! Small worked structures shared by the test suites and the example corpus.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::ChainComplex;
use crate::hom::Hom;
use crate::morphism::ChainMorphism;
use crate::schreier::{check_ses, SchreierSES};
use crate::semimodule::FiniteSemimodule;
use crate::semiring::FiniteSemiring;

/// The two-element semilattice `{0, e}` with `e + e = e`.
pub fn l2() -> Arc<FiniteSemimodule> {
    FiniteSemimodule::monoid(
        vec!["0".into(), "e".into()],
        vec![vec![0, 1], vec![1, 1]],
        0,
    )
    .expect("L2 is a valid monoid")
}

/// The cyclic group of order `n`, elements named `0..n-1`.
pub fn cyclic(n: usize) -> Arc<FiniteSemimodule> {
    let elements = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteSemimodule::monoid(elements, add, 0).expect("cyclic group is a valid monoid")
}

/// The saturating monoid `{0, .., n-1}` with addition capped at `n-1`.
pub fn n_sat(n: usize) -> Arc<FiniteSemimodule> {
    let elements = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n)
        .map(|i| (0..n).map(|j| (i + j).min(n - 1)).collect())
        .collect();
    FiniteSemimodule::monoid(elements, add, 0).expect("saturating monoid is valid")
}

/// The Boolean semiring `{0, 1}` with `1 + 1 = 1`.
pub fn boolean_semiring() -> Arc<FiniteSemiring> {
    FiniteSemiring::new(
        vec!["0".into(), "1".into()],
        vec![vec![0, 1], vec![1, 1]],
        vec![vec![0, 0], vec![0, 1]],
        0,
        1,
    )
    .expect("Boolean semiring is valid")
}

/// `Z2` viewed as a semiring.
pub fn z2_semiring() -> Arc<FiniteSemiring> {
    FiniteSemiring::new(
        vec!["0".into(), "1".into()],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![0, 1]],
        0,
        1,
    )
    .expect("Z2 is a valid semiring")
}

/// `{0..3}` with saturating addition and multiplication truncated at 3.
pub fn n4_saturating_semiring() -> Arc<FiniteSemiring> {
    let elements = (0..4).map(|i| i.to_string()).collect();
    let add = (0..4)
        .map(|i| (0..4).map(|j| (i + j).min(3)).collect())
        .collect();
    let mul = (0..4)
        .map(|i| (0..4).map(|j| (i * j).min(3)).collect())
        .collect();
    FiniteSemiring::new(elements, add, mul, 0, 1).expect("saturating semiring is valid")
}

/// `L2` as a semimodule over the Boolean semiring (`1·x = x`).
pub fn l2_over_boolean() -> Arc<FiniteSemimodule> {
    FiniteSemimodule::over_semiring(
        boolean_semiring(),
        vec!["0".into(), "e".into()],
        vec![vec![0, 1], vec![1, 1]],
        0,
        vec![vec![0, 0], vec![0, 1]],
    )
    .expect("L2 over the Boolean semiring is valid")
}

/// The inclusion `Z2 → Z4` sending 1 to 2.
pub fn z2_into_z4() -> Hom {
    Hom::new(cyclic(2), cyclic(4), vec![0, 2]).expect("inclusion is a hom")
}

/// The reduction `Z4 → Z2`.
pub fn z4_to_z2_reduction() -> Hom {
    Hom::new(cyclic(4), cyclic(2), vec![0, 1, 0, 1]).expect("reduction is a hom")
}

/// The saturation map `N3 → L2` sending 1 and 2 to `e`.
pub fn n3_to_l2_saturation() -> Hom {
    Hom::new(n_sat(3), l2(), vec![0, 1, 1]).expect("saturation is a hom")
}

/// A complex concentrated in degree 0.
pub fn concentrated(m: &Arc<FiniteSemimodule>) -> Arc<ChainComplex> {
    let mut modules = BTreeMap::new();
    modules.insert(0, m.clone());
    Arc::new(
        ChainComplex::new(modules, BTreeMap::new(), BTreeMap::new())
            .expect("one-term complex is valid"),
    )
}

/// The ordinary two-term complex `m1 --d--> m0` in degrees 1, 0.
pub fn two_term(d: Hom) -> Arc<ChainComplex> {
    let mut modules = BTreeMap::new();
    modules.insert(1, d.source().clone());
    modules.insert(0, d.target().clone());
    let mut dplus = BTreeMap::new();
    dplus.insert(1, d);
    Arc::new(ChainComplex::new(modules, dplus, BTreeMap::new()).expect("two-term complex is valid"))
}

/// The zero complex over the given window.
pub fn zero_complex(scalars: crate::semimodule::Scalars, lo: i64, hi: i64) -> Arc<ChainComplex> {
    let zero = FiniteSemimodule::zero_module(scalars);
    let mut modules = BTreeMap::new();
    for n in lo..=hi {
        modules.insert(n, zero.clone());
    }
    Arc::new(
        ChainComplex::new(modules, BTreeMap::new(), BTreeMap::new())
            .expect("zero complex is valid"),
    )
}

/// The three-row ladder over a monoid `M` from the counterexample family:
///
/// ```text
/// G:  0 ──────── 0 ──────── 0
/// B:  M ──1────→ M ──0────→ M          (ordinary)
/// C:  M ═(1+1,1)═ M ═(1,1)═ M          (paired differentials)
/// ```
///
/// in degrees 1, 0, -1, with `κ: G → B` zero and `σ: B → C` the identity in
/// every degree.
pub fn counterexample_ses(m: &Arc<FiniteSemimodule>) -> SchreierSES {
    let scalars = m.scalars().clone();
    let g = zero_complex(scalars, -1, 1);

    let id = Hom::identity(m);
    let zero_map = Hom::zero(m, m);
    let double = id.add(&id).expect("1+1 is a hom");

    let mut b_modules = BTreeMap::new();
    for n in -1..=1 {
        b_modules.insert(n, m.clone());
    }
    let mut b_dplus = BTreeMap::new();
    b_dplus.insert(1, id.clone());
    b_dplus.insert(0, zero_map.clone());
    let b = Arc::new(
        ChainComplex::new(b_modules.clone(), b_dplus, BTreeMap::new())
            .expect("middle row is a valid complex"),
    );

    let mut c_dplus = BTreeMap::new();
    c_dplus.insert(1, double);
    c_dplus.insert(0, id.clone());
    let mut c_dminus = BTreeMap::new();
    c_dminus.insert(1, id.clone());
    c_dminus.insert(0, id.clone());
    let c = Arc::new(
        ChainComplex::new(b_modules, c_dplus, c_dminus).expect("bottom row is a valid complex"),
    );

    let mut kappa_components = BTreeMap::new();
    let mut sigma_components = BTreeMap::new();
    for n in -1..=1 {
        kappa_components.insert(n, Hom::zero(&g.module_at(n), &b.module_at(n)));
        sigma_components.insert(n, Hom::identity(m));
    }
    let kappa = ChainMorphism::classify(g, b.clone(), kappa_components)
        .expect("zero morphism is well-typed");
    let sigma = ChainMorphism::classify(b, c, sigma_components).expect("sigma is well-typed");
    check_ses(kappa, sigma).expect("counterexample ladder is a Schreier SES")
}

/// The module Schreier SES with the identity connecting map:
/// `A = Z2` in degree 0, `B: Z2 → Z4` (inclusion by doubling), `C: Z2 → Z2`
/// with zero differential; `κ0 = ×2`, `σ1 = id`, `σ0 = mod 2`.
pub fn module_snake_ses() -> SchreierSES {
    let z2 = cyclic(2);
    let scalars = z2.scalars().clone();
    let zero = FiniteSemimodule::zero_module(scalars);

    let mut a_modules = BTreeMap::new();
    a_modules.insert(1, zero.clone());
    a_modules.insert(0, z2.clone());
    let a = Arc::new(
        ChainComplex::new(a_modules, BTreeMap::new(), BTreeMap::new())
            .expect("A row is a valid complex"),
    );

    let b = two_term(z2_into_z4());
    let c = two_term(Hom::zero(&z2, &z2));

    let mut kappa_components = BTreeMap::new();
    kappa_components.insert(1, Hom::zero(&zero, &z2));
    kappa_components.insert(0, z2_into_z4());
    let kappa =
        ChainMorphism::classify(a, b.clone(), kappa_components).expect("kappa is well-typed");

    let mut sigma_components = BTreeMap::new();
    sigma_components.insert(1, Hom::identity(&z2));
    sigma_components.insert(0, z4_to_z2_reduction());
    let sigma = ChainMorphism::classify(b, c, sigma_components).expect("sigma is well-typed");

    check_ses(kappa, sigma).expect("module ladder is a Schreier SES")
}
