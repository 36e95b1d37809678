//! Sparse simulation of stabiliser circuits with quadratic form expansions.
//!
//! The state type is [`QfeState`]. Gates, single-qubit measurements, Pauli
//! product measurements and strong/weak sampling are methods on it. The
//! [`oracle`] module holds a dense reference simulator used for checking.

pub mod batch;
pub mod circuit;
pub mod cosim;
pub mod error;
pub mod gates;
pub mod measure;
pub mod oracle;
pub mod pauli;
pub mod sparse;
pub mod state;
pub mod touch;
pub mod transforms;
pub mod workloads;

pub use batch::Dyadic;
pub use circuit::{parse_circuit, parse_records, Circuit, CircuitError, Instruction, ParseError, RecordSet};
pub use error::QfeError;
pub use gates::Gate;
pub use measure::{Basis, BitSource, ConstBit, RngStream};
pub use oracle::DenseState;
pub use pauli::PauliString;
pub use state::QfeState;
