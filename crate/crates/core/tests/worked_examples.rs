//! End-to-end runs of the worked instances through the public API: the
//! counterexample ladder, the module snake, and the doubling cone.

use std::collections::BTreeMap;

use semh_core::fixtures;
use semh_core::hom::Hom;
use semh_core::longseq::{exactness_report, PositionVerdict, Row, SesAnalysis};
use semh_core::morphism::ChainMorphism;

#[test]
fn counterexample_row_homology_values() {
    // The bottom row of the ladder over L2: H_1 is the idempotent
    // submonoid, H_0 vanishes, H_{-1} is the largest cancellative image.
    let l2 = fixtures::l2();
    let ses = fixtures::counterexample_ses(&l2);
    let c = ses.c();
    let h1 = c.homology(1).unwrap();
    assert_eq!(h1.module.size(), 2);
    assert_eq!(
        h1.cycles.member_names(),
        vec!["0".to_owned(), "e".to_owned()]
    );
    let h0 = c.homology(0).unwrap();
    assert!(h0.module.is_trivial());
    let h_minus = c.homology(-1).unwrap();
    assert!(h_minus.module.is_trivial());

    // And for the middle row: H_1 = H_0 = 0, H_{-1} = M.
    let b = ses.b();
    assert!(b.homology(1).unwrap().module.is_trivial());
    assert!(b.homology(0).unwrap().module.is_trivial());
    assert_eq!(b.homology(-1).unwrap().module, l2);
}

#[test]
fn counterexample_over_a_group_is_exact_everywhere() {
    // With a group in place of the semilattice the same ladder becomes
    // exact: the quotient row turns cancellative and the idempotents vanish.
    let z3 = fixtures::cyclic(3);
    let ses = fixtures::counterexample_ses(&z3);
    assert!(ses.flags.c_cancellative);
    assert!(ses.flags.connecting_hypotheses());
    let analysis = SesAnalysis::new(ses).unwrap();
    let seq = analysis.assemble().unwrap();
    assert!(exactness_report(&seq).exact_everywhere());
}

#[test]
fn snake_witnesses_replay() {
    let ses = fixtures::module_snake_ses();
    let analysis = SesAnalysis::new(ses.clone()).unwrap();
    let seq = analysis.assemble().unwrap();
    assert!(seq.is_chain_complex());

    // Every homology class witness replays against the complex.
    let b = ses.b();
    let h0 = b.homology(0).unwrap();
    for &x in h0.cycles.members() {
        for &y in h0.cycles.members() {
            if h0.related(x, y) == Some(true) {
                let (u, v) = h0.witness(x, y).expect("related cycles carry witnesses");
                let dp = b.dplus_at(1);
                let dm = b.dminus_at(1);
                let carrier = b.module_at(0);
                let lhs = carrier.add(x, carrier.add(dp.apply(u), dm.apply(v)));
                let rhs = carrier.add(y, carrier.add(dp.apply(v), dm.apply(u)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn snake_exactness_positions_in_detail() {
    let ses = fixtures::module_snake_ses();
    let analysis = SesAnalysis::new(ses).unwrap();
    let seq = analysis.assemble().unwrap();
    let report = exactness_report(&seq);
    for position in &report.positions {
        assert!(
            matches!(position.verdict, PositionVerdict::Exact),
            "position {} must be exact",
            position.label
        );
    }
    // H_1(C) and H_0(A) are the nontrivial terms.
    let h1c = seq.term_index(1, Row::C).unwrap();
    let h0a = seq.term_index(0, Row::A).unwrap();
    assert_eq!(seq.terms[h1c].module.size(), 2);
    assert_eq!(seq.terms[h0a].module.size(), 2);
}

#[test]
fn doubling_cone_long_sequence_is_exact() {
    let z4 = fixtures::cyclic(4);
    let x = fixtures::concentrated(&z4);
    let mut components = BTreeMap::new();
    components.insert(
        0,
        Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap(),
    );
    let f = ChainMorphism::classify(x.clone(), x, components).unwrap();
    let cone = semh_core::cone::cone_sequence(&f).unwrap();
    let seq = cone.analysis.assemble().unwrap();
    let report = exactness_report(&seq);
    assert!(report.exact_everywhere());
    // The connecting map at degree 1 is H_0(×2): Z4 → Z4.
    let connecting = cone.analysis.connecting(1).unwrap();
    assert_eq!(connecting.map.source().size(), 4);
    assert_eq!(connecting.map.map(), &[0, 2, 0, 2]);
}

#[test]
fn functoriality_of_homology_across_composition() {
    // H_n(g ∘ f) = H_n(g) ∘ H_n(f) for ±-morphisms between module complexes.
    let z4 = fixtures::cyclic(4);
    let doubling = Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
    let x = fixtures::two_term(doubling.clone());
    let mut components = BTreeMap::new();
    components.insert(1, doubling.clone());
    components.insert(0, doubling);
    let f = ChainMorphism::classify(x.clone(), x.clone(), components).unwrap();
    assert!(f.is_pm());
    let ff = f.compose(&f).unwrap();
    for n in 0..=1 {
        let hf = f.induced(n).unwrap().map;
        let hff = ff.induced(n).unwrap().map;
        assert_eq!(hff, hf.compose(&hf).unwrap());
    }
}
