//! Exact Grundy numbers of small graphs and spectral upper bounds on the
//! Grundy number built from k-atoms and matching polynomials.

pub mod atoms;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod graph;
pub mod matching;
pub mod poly;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{parse_edge_list, Graph, GraphClassTag};
pub use poly::IntPolynomial;
