//! Property suites over the small fixture carriers: hom laws, congruence
//! closure, completion functoriality, and windowed arithmetic.

use std::sync::Arc;

use proptest::prelude::*;

use semh_core::completion::{complete, complete_hom};
use semh_core::congruence::Congruence;
use semh_core::fixtures;
use semh_core::hom::Hom;
use semh_core::semimodule::FiniteSemimodule;
use semh_core::windowed::WindowedFreeSemimodule;

fn carrier_pool() -> Vec<Arc<FiniteSemimodule>> {
    vec![
        fixtures::l2(),
        fixtures::cyclic(2),
        fixtures::cyclic(3),
        fixtures::cyclic(4),
        fixtures::n_sat(3),
        fixtures::n_sat(4),
    ]
}

fn arb_carrier() -> impl Strategy<Value = Arc<FiniteSemimodule>> {
    (0..carrier_pool().len()).prop_map(|i| carrier_pool()[i].clone())
}

/// A random hom between two random pool carriers, built by filtering
/// random element maps.
fn arb_hom() -> impl Strategy<Value = Hom> {
    (arb_carrier(), arb_carrier(), any::<u64>()).prop_filter_map(
        "random map happens to be a hom",
        |(a, b, seed)| {
            let mut state = seed;
            let mut next = || {
                // Small xorshift keeps the strategy shrink-friendly.
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state as usize) % b.size()
            };
            let map: Vec<usize> = (0..a.size()).map(|_| next()).collect();
            Hom::new(a, b, map).ok()
        },
    )
}

proptest! {
    #[test]
    fn kernel_and_image_are_subsemimodules(f in arb_hom()) {
        let kernel = f.kernel();
        let image = f.image();
        prop_assert!(kernel.contains(f.source().zero()));
        prop_assert!(image.contains(f.target().zero()));
        for &x in kernel.members() {
            for &y in kernel.members() {
                prop_assert!(kernel.contains(f.source().add(x, y)));
            }
        }
        for &x in image.members() {
            for &y in image.members() {
                prop_assert!(image.contains(f.target().add(x, y)));
            }
        }
    }

    #[test]
    fn completion_respects_composition_with_identity(f in arb_hom()) {
        let id_source = Hom::identity(f.source());
        let kf = complete_hom(&f);
        let k_composed = complete_hom(&f.compose(&id_source).unwrap());
        prop_assert_eq!(kf, k_composed);
    }

    #[test]
    fn canonical_map_detects_cancellativity(m in arb_carrier()) {
        let result = complete(&m);
        prop_assert_eq!(result.canonical.is_injective(), m.is_cancellative());
        prop_assert!(result.completed.is_module());
    }

    #[test]
    fn congruence_closure_contains_its_seeds_and_is_compatible(
        m in arb_carrier(),
        raw_seeds in prop::collection::vec((0usize..4, 0usize..4), 0..3),
    ) {
        let seeds: Vec<(usize, usize)> = raw_seeds
            .into_iter()
            .map(|(a, b)| (a % m.size(), b % m.size()))
            .collect();
        let cong = Congruence::closure(&m, &seeds);
        for &(a, b) in &seeds {
            prop_assert!(cong.related(a, b));
        }
        prop_assert!(cong.verify_compatible().is_ok());
    }

    #[test]
    fn windowed_addition_is_commutative_where_defined(
        x in 0u64..33,
        y in 0u64..33,
    ) {
        let free = WindowedFreeSemimodule::new(1, 32);
        let forward = free.add(&[x], &[y]);
        let backward = free.add(&[y], &[x]);
        prop_assert_eq!(forward.is_ok(), backward.is_ok());
        if let (Ok(a), Ok(b)) = (forward, backward) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn closure_quotient_projection_is_surjective(
        m in arb_carrier(),
        raw_seeds in prop::collection::vec((0usize..4, 0usize..4), 1..3),
    ) {
        let seeds: Vec<(usize, usize)> = raw_seeds
            .into_iter()
            .map(|(a, b)| (a % m.size(), b % m.size()))
            .collect();
        let quotient = Congruence::closure(&m, &seeds).quotient();
        prop_assert!(quotient.projection.is_surjective());
    }

    #[test]
    fn subsemimodule_quotient_projection_is_normal(m in arb_carrier(), pick in 0usize..3) {
        // Quotients by a subsemimodule are always normal surjections;
        // quotients by an arbitrary congruence need not be.
        let sub = match pick {
            0 => semh_core::semimodule::Subsemimodule::zero_sub(m.clone()),
            1 => m.idempotent_submonoid(),
            _ => m.units_submodule(),
        };
        let (_, projection) =
            semh_core::congruence::quotient_by_subsemimodule(&m, &sub).unwrap();
        prop_assert!(projection.is_surjective());
        prop_assert!(projection.is_normal());
    }
}
