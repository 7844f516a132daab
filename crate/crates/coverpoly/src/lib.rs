//! Vertex cover ideals of cactus graphs and their powers.
//!
//! The crate computes minimal vertex covers, builds the cover ideal `J(G)`,
//! expands minimal generating sets of `J(G)^k`, and checks the weakly
//! polymatroidal property of a monomial ideal under a block variable order
//! derived from a clique / 5-cycle / 4-cycle-edge decomposition of the graph.
//! For exchange steps that land on the two interior positions of a basic
//! 5-cycle block it also produces constructive witnesses with explicit
//! certificate factorizations, alongside a brute-force witness search used
//! as an independent cross-check.
//!
//! The `parallel` feature (on by default) runs the hot loops (power
//! expansion, generator minimization, pair checking) on rayon. Results are
//! identical with the feature disabled; `*_seq` entry points expose the
//! sequential kernels directly for comparison benchmarks.

pub mod decomp;
pub mod error;
pub mod graph;
pub mod ideal;
pub mod monomial;
pub mod wp;

pub use decomp::{
    find_decomposition, label_five_cycle, random_decomposed_graph, variable_order,
    verify_decomposition, BlockLimits, CliqueBlock, Decomposition, FiveCycleBlock, VariableOrder,
};
pub use error::{Error, Result};
pub use graph::{reachable_partition, CycleList, Graph};
pub use ideal::{cover_ideal, minimal_vertex_covers, minimalize, minimalize_seq, MonomialIdeal};
pub use monomial::{Factorization, Monomial};
pub use wp::{
    analyze_power, constructive_witness, count_identities_check, first_divergence,
    has_linear_quotients, triple_counts, witness_bruteforce, wp_check, wp_check_seq, CoverTriple,
    DivergencePoint, IdentityReport, PairRecord, PowerAnalysis, TripleCounts, WitnessMethod,
    WitnessReport, WpOutcome,
};
