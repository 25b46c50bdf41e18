//! Exact-arithmetic engine for lines on diagonal surfaces
//! `a0*x0^d + a1*x1^d + a2*x2^d + a3*x3^d = 0` over Q and cyclotomic fields.
//!
//! The crate decides line existence globally, at every completion, and as a
//! Hasse-principle verdict; computes the controlling Galois cohomology
//! group; synthesizes certified counter-example surfaces; and counts the
//! density of degrees where the odd-degree criterion holds.
//!
//! Modules, bottom up:
//!
//! * [`arith`] — integer/rational kernel (factorization, primality, d-th
//!   power tests over Q and R).
//! * [`fq`] — finite fields F_{l^f} and polynomial factorization mod l.
//! * [`numeric`] — high-precision complex embeddings with tracked error.
//! * [`cyclotomic`] — exact arithmetic in Q(mu_m), prime splitting, and the
//!   global d-th power test.
//! * [`local`] — d-th power membership in completions (Q_l and the
//!   completions of cyclotomic fields).
//! * [`cohomology`] — the special case, H^1 triviality, the Hasse-principle
//!   prediction, and representatives of nontrivial classes.
//! * [`hilbert`] — the Hilbert scheme of lines and direct global/local
//!   line-existence tests.
//! * [`galois`] — splitting-field Galois group, its action on the 3d^2
//!   lines, fixed-point analysis, and the full verdict.
//! * [`construct`] — certified counter-example synthesis.
//! * [`counting`] — the Erdos density sieve for D(x), D_sf(x).

pub mod arith;
pub mod config;
pub mod error;
pub mod fq;
pub mod numeric;

pub mod cyclotomic;
pub mod local;

pub mod cohomology;
pub mod hilbert;

pub mod galois;

pub mod construct;
pub mod counting;

pub mod textio;

pub use config::Config;
pub use error::{Error, Result};
