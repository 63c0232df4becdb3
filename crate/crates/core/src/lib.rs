//! Expanded graphs, GIT-stable strata of graph-labelled point configurations,
//! and the symmetric products `Symⁿ(Γ)` of a graph as Δ-complexes with
//! integral homology.

pub mod delta_complex;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod snf;
pub mod stability;
pub mod sym_product;

pub use delta_complex::{CellAction, DeltaComplex, HomologyResult, Quotient, Violation};
pub use error::{ComplexError, GraphError, IndexSetError, ParseError, StabilityError};
pub use expansion::{expand, ExpandedGraph, IndexSet, Node, StageArrow};
pub use graph::{parse_graph, Arrow, OrientedGraph, VertexPartition};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use stability::{
    combinatorial_support, enumerate_strata, enumerate_tuples, is_stable, numerical_support, stratum_facet,
    tuple_facet, StratumIndex, SupportVector, TupleIndex,
};
pub use sym_product::{
    product_complex, quotient_sym, skeleton_complex, sym_complex, sym_face, BuildLimits, Factor, ProductCell,
    SymCell, VertexWeights,
};
