//! Constructive toolkit for 1-perfect mixed codes in F_n × F_q^n.
//!
//! The crate builds the ingredients (finite fields, generalized Reed-Muller
//! codes, distance-2 MDS codes and the quasigroups behind them, partitions of
//! MDS codes into Reed-Muller-like codes) and the constructions that combine
//! them, then certifies every claimed property with brute-force verifiers
//! that share no code with the constructions.
//!
//! Module map:
//!
//! - [`galois`]: lookup-table arithmetic in F_q, q ≤ 16.
//! - [`space`]: mixed spaces, words, codes, radii, perfection, equivalence.
//! - [`grm`]: generalized Reed-Muller codes and exact minimum distances.
//! - [`mdsq`]: quasigroups, Latin hypercubes and distance-2 MDS codes.
//! - [`partition`]: coset partitions and partition certificates.
//! - [`construct`]: the constructions of perfect, MDS and RM-like codes.
//! - [`census`]: distinctness and nonequivalence experiments.

pub mod census;
pub mod construct;
pub mod error;
pub mod galois;
pub mod grm;
pub mod linalg;
pub mod mdsq;
pub mod partition;
pub mod space;

pub use error::{Error, Result};
pub use galois::{field, make_field, FieldElem, FieldTable};
pub use space::{Code, Gate, MixedSpace, Word, ZeroWord};
