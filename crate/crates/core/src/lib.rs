//! Computational homological algebra over finite semirings and semimodules:
//! chain complexes with paired differentials, Schreier short exact
//! sequences, group completion, connecting homomorphisms and long homology
//! sequences, with every theorem-backed step re-verified by enumeration on
//! the finite instances it runs on.

pub mod chain;
pub mod completion;
pub mod cone;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod iso;
pub mod longseq;
pub mod morphism;
pub mod schreier;
pub mod semimodule;
pub mod semiring;
pub mod windowed;

pub use chain::{
    ChainComplex, ChainError, ClassicalHomology, CompletedComplex, HomologyPresentation,
};
pub use completion::{
    complete, complete_hom, complete_semiring, CompletionResult, SemiringCompletion,
};
pub use cone::{
    check_corollary_2_7, completion_commutes, cone_sequence, mapping_cone, ConeError, ConeSequence,
    CorollaryVerdict, MappingCone,
};
pub use congruence::{
    additively_cancellative_image, max_cancellative_image, quotient_by_subsemimodule, Congruence,
    QuotientResult,
};
pub use error::AlgebraError;
pub use hom::{is_exact_at, ExactnessCheck, Hom, MaterializedSub};
pub use iso::{are_isomorphic, canonical_add_table, find_isomorphism};
pub use longseq::{
    assemble, check_theorem_2_4, check_theorem_2_5, connecting, exactness_report, naturality_check,
    ConnectingCertificate, ConnectingHom, ExactnessReport, LongSeqError, LongSequence,
    NaturalityReport, OracleSequence, PositionVerdict, Row, SesAnalysis, TheoremVerdict,
};
pub use morphism::{ChainMorphism, InducedCertificate, InducedError, InducedHom, MorphismKind};
pub use schreier::{
    check_ses, is_representative, CompletedSES, SchreierError, SchreierExtension, SchreierSES,
    SesFlags,
};
pub use semimodule::{DirectSum, FiniteSemimodule, Scalars, Subsemimodule};
pub use semiring::FiniteSemiring;
pub use windowed::{
    BoundedSearch, FreeCompletion, MatrixHom, WindowInconclusive, WindowedComplex,
    WindowedFreeSemimodule, WindowedHomology,
};
