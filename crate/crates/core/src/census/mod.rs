//! Generation, stream scans and the embedded reference graphs.

pub(crate) mod canon;
pub mod fixtures;
pub mod generate;
pub mod lemma;
pub mod stream;
pub mod verify;

pub use fixtures::{
    family, fixture, fixtures, load_fixtures, order28_conn3, Fixture, FixtureFamily,
};
pub use generate::{
    generate_cubic, generate_cubic_with, generate_degree23, generate_degree23_with, GenerateError,
};
pub use lemma::{
    ham_path_from_degree2, lemma_short_exhaustive, lemma_short_hypotheses, lemma_short_scan,
    HypothesisCheck, ScanHit, ScanReport,
};
pub use stream::{
    census_generated, census_graphs, nontraceable_census, CensusOutput, CensusRecord,
    LineDiagnostic,
};
pub use verify::{verify_artifacts, ArtifactCheck, ArtifactReport};
