//! Finite simplicial complexes standing in for varieties: relative cohomology,
//! good pairs, filtrations, Čech complexes and diagram fixtures built from them.

pub mod cochain;
pub mod complex;
pub mod fixture;
pub mod kunneth;
pub mod pairs;

pub use cochain::{induced_map, CochainComplex, Cohomology};
pub use complex::{Complex, Simplex};
pub use fixture::{conjugate, make_diagram_fixture, MapSpec, PairFixture, PairSpec, TripleSpec};
pub use kunneth::{kunneth_fixture, standard_leaves, KunnethFixture};
pub use pairs::{
    cech_total_complex, cohomology_dims, connecting_map, filtration_complex, induced_cohomology_map, is_good_pair,
    long_exact_sequence, relative_cochains, relative_cohomology, skeletal_filtration, Filtration, LesReport,
    RelativeCochains, VertexMap,
};
