//! Weight enumerators of irreducible cyclic codes.
//!
//! The weight of every word of an irreducible cyclic `[n, k]` code over GF(q)
//! is a fixed linear combination of the Gauss sums of one order-`d` character
//! of GF(q^k) (McEliece's formula). Words whose discrete-log index lies in the
//! same `q`-cyclotomic coset mod `N = (q^k - 1)/n` share a weight, so the whole
//! spectrum follows from `d - 1` Gauss sums and one evaluation per coset.
//!
//! Modules, bottom up:
//!
//! - [`field`]: GF(q) and table-backed GF(q^k), discrete logs, the trace.
//! - [`cosets`]: the coset-leader sieve and the coset-count formula.
//! - [`cyclic_poly`]: polynomials over GF(q), minimal polynomials, the
//!   factorization of `x^n - 1`, and the codes themselves.
//! - [`characters`]: additive and multiplicative characters, Gauss sums.
//! - [`weights`]: weight spectra by formula and by enumeration, the weight
//!   enumerator and its MacWilliams transform.
//! - [`icq`]: the divisibility exponent, the phase-error bound, and the
//!   noisy-oracle recovery pipeline.
//! - [`cli`]: the `cyclotome` command line.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod cosets;
pub mod cyclic_poly;
mod error;
pub mod field;
pub mod icq;
pub mod weights;

pub use error::{Error, Result};
