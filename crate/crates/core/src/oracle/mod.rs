//! Exact checks of almost Moore digraph structure on concrete instances.

pub mod battery;
pub mod closure;
pub mod digraph;
pub mod instances;
pub mod moore;
pub mod profile;

pub use battery::{r_set_size, run_battery, BatteryReport};
pub use closure::{build_h_alpha, check_rk_closed, check_subdigraph_theorem};
pub use digraph::{gen_line_digraph_complete, parse_digraph, serialize_digraph, Digraph, Instance};
pub use moore::{verify_moore, MooreCheck};
pub use profile::{profile_in_neighborhood, InNeighborhoodProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {from} -> {to}")]
    DuplicateArc { from: usize, to: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} has no out-neighbours")]
    EmptyOutList(usize),
    #[error("degree {d} and diameter {k} must both exceed 1")]
    InvalidDegree { d: u64, k: u64 },
    #[error("not diregular at vertex {vertex}")]
    NotDiregular { vertex: usize },
    #[error("order {found}, expected {expected}")]
    OrderMismatch { expected: u64, found: u64 },
    #[error("I + A + ... + A^k - J is not a permutation matrix (entry {entry} at {row},{col})")]
    NotAlmostMoore { row: usize, col: usize, entry: i64 },
    #[error("repeat map does not preserve arc {from} -> {to}")]
    NotAutomorphism { from: usize, to: usize },
    #[error("Tr(A^{ell}) = {trace}, expected {expected}")]
    TraceIdentity { ell: u64, trace: i64, expected: i64 },
}
