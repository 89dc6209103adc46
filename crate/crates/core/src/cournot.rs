//! Homogeneous-product stage: Cournot duopoly with inverse demand
//! `p = cap - (qA + qB)` and zero marginal cost.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Linear market with demand intercept `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CournotMarket {
    pub cap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CournotOutcome {
    pub q_a: f64,
    pub q_b: f64,
    pub price: f64,
    pub profit_a: f64,
    pub profit_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    ClosedForm,
    Iterate,
}

/// Settings for simultaneous best-response iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    pub start: (f64, f64),
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IterateOptions {
    fn default() -> Self {
        Self {
            start: (0.0, 0.0),
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

fn check_quantity(name: &str, q: f64) -> Result<()> {
    if !q.is_finite() || q < 0.0 {
        return Err(Error::InvalidInput(format!(
            "{name} must be a finite quantity >= 0, got {q}"
        )));
    }
    Ok(())
}

impl CournotMarket {
    pub fn new(cap: f64) -> Result<Self> {
        if !cap.is_finite() || cap < 0.0 {
            return Err(Error::InvalidInput(format!(
                "demand intercept must be finite and >= 0, got {cap}"
            )));
        }
        Ok(Self { cap })
    }

    /// Market price at total output `qA + qB`. Negative when output exceeds `cap`.
    pub fn price(&self, q_a: f64, q_b: f64) -> f64 {
        self.cap - q_a - q_b
    }

    /// Profit-maximizing output against a fixed rival quantity, clamped at zero.
    pub fn best_response(&self, q_rival: f64) -> Result<f64> {
        check_quantity("rival quantity", q_rival)?;
        Ok(((self.cap - q_rival) / 2.0).max(0.0))
    }

    /// Profits `(p * qA, p * qB)` at arbitrary quantities. Out-of-equilibrium
    /// evaluations may yield a negative price and hence negative profits.
    pub fn profits(&self, q_a: f64, q_b: f64) -> Result<(f64, f64)> {
        check_quantity("qA", q_a)?;
        check_quantity("qB", q_b)?;
        let p = self.price(q_a, q_b);
        Ok((p * q_a, p * q_b))
    }

    pub fn outcome_at(&self, q_a: f64, q_b: f64) -> Result<CournotOutcome> {
        let (profit_a, profit_b) = self.profits(q_a, q_b)?;
        Ok(CournotOutcome {
            q_a,
            q_b,
            price: self.price(q_a, q_b),
            profit_a,
            profit_b,
        })
    }

    pub fn equilibrium(&self, method: Method) -> Result<CournotOutcome> {
        match method {
            Method::ClosedForm => self.closed_form(),
            Method::Iterate => self.iterate(IterateOptions::default()),
        }
    }

    /// `qA = qB = cap/3`, `profit = cap^2/9`.
    pub fn closed_form(&self) -> Result<CournotOutcome> {
        let q = self.cap / 3.0;
        let profit = self.cap * self.cap / 9.0;
        Ok(CournotOutcome {
            q_a: q,
            q_b: q,
            price: self.price(q, q),
            profit_a: profit,
            profit_b: profit,
        })
    }

    /// Jacobi best-response iteration: both firms reply to the previous pair
    /// until successive pairs differ by less than `tol` in max norm.
    pub fn iterate(&self, opts: IterateOptions) -> Result<CournotOutcome> {
        let (mut q_a, mut q_b) = opts.start;
        check_quantity("starting qA", q_a)?;
        check_quantity("starting qB", q_b)?;
        let mut step = f64::INFINITY;
        for _ in 0..opts.max_iter {
            let next_a = self.best_response(q_b)?;
            let next_b = self.best_response(q_a)?;
            step = (next_a - q_a).abs().max((next_b - q_b).abs());
            q_a = next_a;
            q_b = next_b;
            if step < opts.tol {
                return self.outcome_at(q_a, q_b);
            }
        }
        Err(Error::NonConvergence {
            solver: "cournot best-response iteration",
            iterations: opts.max_iter,
            last_step: step,
        })
    }
}
