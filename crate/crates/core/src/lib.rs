//! Simulator for three-party quantum secret sharing by Bell-state
//! entanglement swapping.
//!
//! The dealer prepares three EPR pairs on qubits 1..6, encodes two secret
//! bits per round as a Pauli on qubit 1 or 4, and hands P1 the pair (1,4),
//! P2 (2,6) and P3 (3,5). Each participant measures in the Bell basis; the
//! three announced outcomes together fix the operator, any two do not.
//!
//! - [`qsim`]: dense statevector engine, labels 1..n with label 1 the most
//!   significant bit of the basis index.
//! - [`bellalg`]: Bell labels, Pauli action on them, basis rebasing and the
//!   collapse table.
//! - [`protocol`]: encoding, rounds, reconstruction and secret sessions.
//! - [`adversary`]: dishonest dealer, dishonest P1, outside forgery and
//!   withheld shares.
//! - [`neqr`] and [`pgm`]: quantum image states and pixel-wise sharing.
//! - [`cli`] and [`verify`]: the `bellshare` command and its self-checks.

pub mod adversary;
pub mod bellalg;
pub mod cli;
pub mod error;
pub mod neqr;
pub mod pgm;
pub mod protocol;
pub mod qsim;
pub mod verify;
