//! Finite-dimensional `Y(gl(M|N))` modules.
pub mod highest;
pub mod induced;
pub mod module;

pub use highest::{
    cyclic_span, highest_weight_of, irreducible_quotient, maximal_space_dim, maximal_vectors, submodule,
    MaximalVector, QuotientResult,
};
pub use induced::{induced_module_truncated, induced_module_truncated_with, odd_words, AuxData, InducedModule};
pub use module::{
    evaluation_rep, shifted_tensor, shifted_tensor_iterated, shifted_tensor_with, tensor_pair, verify_defining_relations,
    verify_defining_relations_with, Counterexample,
    ModeTable, Provenance, RelationReport, YModule,
};
