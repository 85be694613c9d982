//! Regenerates the checked-in structure files under `fixtures/`.
//!
//! Run from the repository root:
//! `cargo run -p semh-cli --example regen_fixtures`

use std::collections::BTreeMap;
use std::path::Path;

use semh_cli::format::{self, Document, Record, Resolved, SemiringRecord, StructureFile};
use semh_core::fixtures;
use semh_core::hom::Hom;
use semh_core::morphism::ChainMorphism;
use semh_core::windowed::{MatrixHom, WindowedComplex, WindowedFreeSemimodule};

fn write(dir: &Path, name: &str, file: &StructureFile) {
    let path = dir.join(name);
    std::fs::write(&path, format::to_text(file)).expect("fixture written");
    // Regenerated files must parse back.
    format::parse(&std::fs::read_to_string(&path).unwrap()).expect("fixture parses");
    println!("wrote {}", path.display());
}

fn doc_with(entries: Vec<(&str, Resolved)>) -> StructureFile {
    let mut doc = Document::default();
    for (name, value) in entries {
        doc.push_entry(name, value).expect("unique fixture names");
    }
    format::serialize(&doc)
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixtures directory");

    // The counterexample ladders over the semilattice and the saturating
    // three-element monoid.
    write(
        &dir,
        "paper_remark26.sms",
        &doc_with(vec![
            (
                "counterexample-l2",
                Resolved::Ses(fixtures::counterexample_ses(&fixtures::l2())),
            ),
            (
                "counterexample-n3",
                Resolved::Ses(fixtures::counterexample_ses(&fixtures::n_sat(3))),
            ),
        ]),
    );

    // The module ladder with the identity connecting map.
    write(
        &dir,
        "module_snake.sms",
        &doc_with(vec![("snake", Resolved::Ses(fixtures::module_snake_ses()))]),
    );

    // Doubling on Z4 concentrated in degree 0, as a cone request.
    let z4 = fixtures::cyclic(4);
    let x = fixtures::concentrated(&z4);
    let mut components = BTreeMap::new();
    components.insert(
        0,
        Hom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).expect("doubling"),
    );
    let doubling =
        ChainMorphism::classify(x.clone(), x, components).expect("doubling is a morphism");
    write(
        &dir,
        "cone_doubling.sms",
        &doc_with(vec![("doubling-cone", Resolved::ConeRequest(doubling))]),
    );

    // The identity naturality ladder over the module snake.
    let snake = fixtures::module_snake_ses();
    write(
        &dir,
        "naturality_snake.sms",
        &doc_with(vec![
            ("left", Resolved::Ses(snake.clone())),
            ("right", Resolved::Ses(snake.clone())),
            ("f", Resolved::Morphism(ChainMorphism::identity(snake.a()))),
            ("g", Resolved::Morphism(ChainMorphism::identity(snake.b()))),
            ("h", Resolved::Morphism(ChainMorphism::identity(snake.c()))),
        ]),
    );

    // The windowed free carrier and the doubling complex over it.
    let free = WindowedFreeSemimodule::new(1, 32);
    let mut ranks = BTreeMap::new();
    ranks.insert(0i64, 1usize);
    ranks.insert(1, 1);
    let mut dplus = BTreeMap::new();
    dplus.insert(1i64, MatrixHom::new(vec![vec![2]], 1, 1).expect("matrix"));
    let complex =
        WindowedComplex::new(32, ranks, dplus, BTreeMap::new()).expect("windowed complex");
    write(
        &dir,
        "windowed_free.sms",
        &doc_with(vec![
            ("free", Resolved::Windowed(free)),
            ("free-doubling", Resolved::WindowedComplex(complex)),
        ]),
    );

    // A semiring whose addition table breaks the identity axiom.
    let bad = StructureFile {
        format: format::FORMAT_VERSION.to_owned(),
        records: vec![Record::Semiring(SemiringRecord {
            name: "broken".to_owned(),
            elements: vec!["0".to_owned(), "1".to_owned()],
            add: vec![
                vec!["0".to_owned(), "0".to_owned()],
                vec!["0".to_owned(), "1".to_owned()],
            ],
            mul: vec![
                vec!["0".to_owned(), "0".to_owned()],
                vec!["0".to_owned(), "1".to_owned()],
            ],
            zero: "0".to_owned(),
            one: "1".to_owned(),
        })],
    };
    let path = dir.join("bad_semiring.sms");
    std::fs::write(&path, format::to_text(&bad)).expect("fixture written");
    println!("wrote {}", path.display());

    // Completion showcase: monoids and a semiring with trivial completions.
    write(
        &dir,
        "completions.sms",
        &doc_with(vec![
            ("l2", Resolved::Semimodule(fixtures::l2())),
            ("n3", Resolved::Semimodule(fixtures::n_sat(3))),
            ("z4", Resolved::Semimodule(fixtures::cyclic(4))),
            ("boolean", Resolved::Semiring(fixtures::boolean_semiring())),
        ]),
    );
}
