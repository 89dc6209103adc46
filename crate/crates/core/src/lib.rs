//! Duopoly model solver.
//!
//! The crate covers one full innovation cycle of a two-firm market:
//!
//! * [`cournot`]: homogeneous-product quantity competition with linear demand
//!   `p = cap - (qA + qB)` and zero marginal cost.
//! * [`hotelling`]: price competition on a preference line of length `L` with
//!   quadratic consumer disutility `c * x^2`.
//! * [`techcost`]: constant-returns unit costs and the `C_t = C_0 / A(t)` law.
//! * [`rdgame`]: pure-strategy analysis of bimatrix games (Nash, dominance,
//!   prisoner's-dilemma classification).
//! * [`cyclesim`]: composes the above into the periodic two-phase game.
//! * [`cli`]: the command-line front end used by the `duopoly` binary.
//!
//! Every closed form has an independent numeric counterpart (best-response
//! iteration, golden-section search, finite differences) exposed alongside it.

pub mod cli;
pub mod cournot;
pub mod cyclesim;
mod error;
pub mod fmt;
pub mod hotelling;
pub mod rdgame;
pub mod techcost;

pub use error::{Error, Result};
