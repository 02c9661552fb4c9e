//! Costas permutations from the Welch and Golomb constructions, exact
//! cross-correlation analysis, and verification of the correlation bounds
//! those families satisfy.
//!
//! The crate is organized bottom-up:
//!
//! * [`numtheory`]: factorization, totient, safe primes, and exact
//!   integer evaluation of ⌊(c/d)√m⌋-shaped bounds.
//! * [`ffield`]: GF(p^r) arithmetic for p^r ≤ 2^20, primitive elements,
//!   and exp/log tables.
//! * [`costas`]: the Welch and Golomb constructions, their families
//!   (W_p, G_q, L_q), and the Costas-property verifier.
//! * [`xcorr`]: exact cross-correlation values, tables, pair maxima, and
//!   parallel family-wide scans.
//! * [`theorems`]: the correlation-bound predictions for W_p and G_q,
//!   their verification against exhaustive scans, and brute-force solution
//!   counters for the underlying equation-counting lemmas.
//!
//! All numeric verdicts are computed in exact integer arithmetic; no
//! floating point is involved anywhere.

pub mod costas;
pub mod error;
pub mod ffield;
pub mod numtheory;
pub mod theorems;
pub mod xcorr;

pub use costas::{CostasPermutation, Provenance};
pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec, LogTable};
pub use numtheory::Factorization;
pub use xcorr::{CorrelationTable, FamilyScanResult, PairMax, Witness};
