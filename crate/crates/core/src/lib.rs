//! Lucas-type congruences and algebraic independence for hypergeometric series.
//!
//! The crate is organised by task:
//!
//! - [`hyperdata`]: parameter systems and the factorial-to-Pochhammer translation
//! - [`stepfun`]: `xi_a`, Landau's function, the Dwork map and regions of `[0,1)^d`
//! - [`certifier`]: exact minimisation and certificates for `p^k`-Lucas properties
//! - [`sequences`]: exact coefficient streams, specializations and closure operations
//! - [`padic`]: p-adic valuations through digit-sum formulas
//! - [`lucasverify`]: brute-force congruence checks
//! - [`independence`]: monomial relation search, asymptotics and independence verdicts
//! - [`cli`]: problem documents, the corpus and the command runner behind the binary
//!
//! Runnable tours live in `examples/`.

pub mod certifier;
pub mod cli;
pub mod engine;
pub mod hyperdata;
pub mod independence;
mod lp;
pub mod lucasverify;
pub mod padic;
pub mod rational;
pub mod sequences;
pub mod stepfun;

pub use rational::{int, parse_rational, rat, Rational};
