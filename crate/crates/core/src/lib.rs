//! Exact combinatorics of partition-type lattices, their nested set complexes,
//! complexes of rooted trees, and the stellar subdivisions relating them to
//! order complexes.
//!
//! Everything is computed explicitly and exactly: lattices are materialized
//! with full order/join/meet tables, simplicial complexes are stored by their
//! facets, and homology is computed by exact elimination over the rationals
//! or a prime field.

pub mod complex;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod lattice;
pub mod linalg;
pub mod nbc;
pub mod suites;
pub mod tree;

pub use complex::{SimplicialComplex, SubdivisionStep, SubdivisionTrace};
pub use error::{Error, Result};
pub use homology::FieldChoice;
pub use lattice::{BuildingSet, FiniteLattice, SetPartition, Subset};
pub use nbc::{GeometricLattice, LabeledChain, ProperMaximalNestedSet};
pub use tree::RootedTreeType;

/// Renders a subset of `{1..n}` in the compact form used for every vertex
/// label: concatenated digits while `n <= 9`, comma separated otherwise.
pub fn subset_label<I: IntoIterator<Item = u32>>(items: I, n: usize) -> String {
    let items: Vec<u32> = items.into_iter().collect();
    if n <= 9 {
        items.iter().map(|i| char::from_digit(*i, 10).unwrap()).collect()
    } else {
        items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}
