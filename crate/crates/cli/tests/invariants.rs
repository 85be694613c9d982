//! Structural invariants re-proved over generated corpora: the elementary
//! Schreier extension facts, cancellativity of homology over cancellative
//! complexes, and injectivity of the canonical map on homology.

use semh_cli::corpus::{self, Backend, CorpusSpec, Generator};
use semh_core::longseq::SesAnalysis;

fn corpus_sequences() -> Vec<semh_core::schreier::SchreierSES> {
    let mut out = Vec::new();
    for generator in [
        Generator::AllMonoidsUpToIso,
        Generator::RandomExtensions {
            seed: 31,
            count: 60,
        },
        Generator::PaperExamples,
    ] {
        let spec = CorpusSpec {
            max_carrier_size: 3,
            backend: Backend::Finite,
            generator,
        };
        out.extend(
            spec.generate()
                .expect("corpus")
                .sequences
                .into_iter()
                .map(|(_, s)| s),
        );
    }
    out
}

/// Kernel translations cancel over a cancellative sub row:
/// `κ(a) + b1 = κ(a) + b2` forces `b1 = b2`.
#[test]
fn cancellative_sub_rows_cancel_kernel_translates() {
    let mut checked = 0usize;
    for ses in corpus_sequences() {
        if !ses.a().degreewise_cancellative() {
            continue;
        }
        let (lo, hi) = ses.window();
        for n in lo..=hi {
            let kappa = ses.kappa().component_at(n);
            let b = kappa.target().clone();
            for a in 0..kappa.source().size() {
                let image = kappa.apply(a);
                for b1 in 0..b.size() {
                    for b2 in 0..b.size() {
                        if b.add(image, b1) == b.add(image, b2) {
                            assert_eq!(b1, b2, "kernel translate must cancel");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

/// The middle row is cancellative exactly when both outer rows are.
#[test]
fn middle_row_cancellativity_is_equivalent_to_the_outer_rows() {
    for ses in corpus_sequences() {
        let outer = ses.a().degreewise_cancellative() && ses.c().degreewise_cancellative();
        assert_eq!(ses.b().degreewise_cancellative(), outer);
    }
}

/// Over a module sub row, every element of the middle row is a
/// representative of its fiber.
#[test]
fn module_sub_rows_make_every_element_a_representative() {
    let mut checked = 0usize;
    for ses in corpus_sequences() {
        if !ses.a().degreewise_modules() {
            continue;
        }
        let (lo, hi) = ses.window();
        for n in lo..=hi {
            let level = ses.level_at(n).expect("window level");
            for b in 0..ses.b().module_at(n).size() {
                assert!(level.is_rep(b));
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

/// Degreewise cancellative complexes have cancellative homology, and the
/// canonical map into the completed complex is injective on homology.
#[test]
fn cancellative_complexes_have_cancellative_homology() {
    let mut checked = 0usize;
    for ses in corpus_sequences() {
        for row in [ses.a(), ses.b(), ses.c()] {
            if !row.degreewise_cancellative() {
                continue;
            }
            let completed = row.complete().expect("completion");
            let (lo, hi) = row.window();
            for n in (lo - 1)..=(hi + 1) {
                let h = row.homology(n).expect("homology");
                assert!(h.module.is_cancellative());
                let hk = completed.ordinary.homology(n).expect("homology");
                let induced = completed
                    .canonical_ordinary
                    .induced_with(n, &h, &hk)
                    .expect("induced canonical map");
                assert!(induced.map.is_injective());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

/// The window backend of a corpus spec produces the symbolic free carriers.
#[test]
fn window_backend_produces_free_carriers() {
    let spec = CorpusSpec {
        max_carrier_size: 2,
        backend: Backend::Window { bound: 16 },
        generator: Generator::AllMonoidsUpToIso,
    };
    let corpus = spec.generate().expect("corpus");
    assert!(corpus.sequences.is_empty());
    assert_eq!(corpus.windowed.len(), 2);
    assert_eq!(corpus.windowed[0].bound(), 16);
}

/// Connecting maps are independent of every representative choice: the
/// recipe tries all representatives of all class members, so a successful
/// analysis certifies independence. Spot-check the analysis over the
/// worked-example corpus.
#[test]
fn connecting_maps_are_choice_independent_on_the_examples() {
    let spec = CorpusSpec {
        max_carrier_size: 3,
        backend: Backend::Finite,
        generator: Generator::PaperExamples,
    };
    for (name, ses) in spec.generate().expect("corpus").sequences {
        let analysis = SesAnalysis::new(ses.clone()).expect("analysis");
        let (lo, hi) = ses.window();
        for n in lo..=(hi + 1) {
            analysis
                .connecting(n)
                .unwrap_or_else(|e| panic!("{name} at degree {n}: {e}"));
        }
    }
}

/// Enumerated monoids are pairwise non-isomorphic and canonical.
#[test]
fn enumerated_monoids_are_canonical_and_distinct() {
    let monoids = corpus::enumerate_monoids(4).expect("enumeration");
    for (i, a) in monoids.iter().enumerate() {
        for b in monoids.iter().skip(i + 1) {
            if a.size() == b.size() {
                assert!(!semh_core::iso::are_isomorphic(a, b));
            }
        }
    }
}
