//! Singer perfect difference sets, Sidon set predicates, transfer of modular
//! Sidon sets into intervals, and exact search for largest Sidon subsets of
//! `{1, ..., N}`.
//!
//! - [`ff`]: finite fields GF(p^d), traces, discrete logarithms.
//! - [`singer`]: Singer sets mod q^2 + q + 1 and their structural checks.
//! - [`sidon`]: integer, modular and interval Sidon predicates and identities.
//! - [`transfer`]: window restriction and full transfer thresholds.
//! - [`extremal`]: exact h(N), bounds and constructive lower witnesses.
//! - [`primes`]: sieve, Bertrand and gap primes.
//! - [`cert`]: JSON certificates and their independent verification.

pub mod arith;
pub mod cert;
pub mod extremal;
pub mod ff;
pub mod primes;
pub mod sidon;
pub mod singer;
pub mod transfer;
