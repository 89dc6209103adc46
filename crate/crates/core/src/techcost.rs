//! Cost side of technical progress.
//!
//! Output is `q = A(t) * f(k, l)` with the constant-returns Cobb-Douglas
//! technology `f = k^alpha * l^(1 - alpha)`. The cost function is then linear
//! in output and scales down with progress: `C_t(v, w, q) = q * C_0(v, w, 1) / A(t)`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const GOLDEN_TOL: f64 = 1e-12;
const GOLDEN_MAX_ITER: usize = 500;
const BRACKET_MAX_ITER: usize = 200;

/// Path of the technology factor `A(t)`, with `A(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Progress {
    /// `A(t) = (1 + g)^t`, `g >= 0`.
    Geometric { growth: f64 },
    /// Explicit values per period; periods past the end keep the last value.
    Table(Vec<f64>),
}

impl Progress {
    pub fn validate(&self) -> Result<()> {
        match self {
            Progress::Geometric { growth } => {
                if !(growth.is_finite() && *growth >= 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "growth rate must be >= 0, got {growth}"
                    )));
                }
            }
            Progress::Table(values) => {
                if values.first() != Some(&1.0) {
                    return Err(Error::InvalidInput(
                        "progress table must start at A(0) = 1".into(),
                    ));
                }
                if values.iter().any(|a| !a.is_finite()) {
                    return Err(Error::InvalidInput(
                        "progress table has non-finite entries".into(),
                    ));
                }
                if values.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::InvalidInput(
                        "progress table must be non-decreasing".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn factor(&self, t: usize) -> f64 {
        match self {
            Progress::Geometric { growth } => (1.0 + growth).powi(t as i32),
            Progress::Table(values) => values[t.min(values.len() - 1)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TechSchedule {
    /// Capital rental rate.
    pub v: f64,
    /// Wage.
    pub w: f64,
    /// Capital share of the Cobb-Douglas technology.
    pub alpha: f64,
    pub progress: Progress,
}

/// Cost-minimizing input bundle for one unit of output at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitInputs {
    pub cost: f64,
    pub capital: f64,
    pub labor: f64,
}

impl TechSchedule {
    pub fn new(v: f64, w: f64, alpha: f64, progress: Progress) -> Result<Self> {
        let s = Self {
            v,
            w,
            alpha,
            progress,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.v.is_finite() && self.v > 0.0 && self.w.is_finite() && self.w > 0.0) {
            return Err(Error::InvalidInput(format!(
                "factor prices must be > 0, got v = {}, w = {}",
                self.v, self.w
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        self.progress.validate()
    }

    /// Labor needed alongside `capital` to produce one unit.
    fn unit_labor(&self, capital: f64) -> f64 {
        capital.powf(-self.alpha / (1.0 - self.alpha))
    }

    /// Minimizes `v k + w l` subject to `f(k, l) = 1` by golden-section search
    /// over `ln k`.
    pub fn unit_inputs(&self) -> Result<UnitInputs> {
        self.validate()?;
        let spend = |s: f64| {
            let k = s.exp();
            self.v * k + self.w * self.unit_labor(k)
        };
        let (lo, hi) = bracket(&spend)?;
        let s = golden_section(&spend, lo, hi)?;
        let capital = s.exp();
        let labor = self.unit_labor(capital);
        Ok(UnitInputs {
            cost: self.v * capital + self.w * labor,
            capital,
            labor,
        })
    }

    /// Minimized cost of one unit of output at `t = 0`.
    pub fn unit_cost(&self) -> Result<f64> {
        Ok(self.unit_inputs()?.cost)
    }

    /// Closed-form Cobb-Douglas unit cost `(v/alpha)^alpha (w/(1-alpha))^(1-alpha)`.
    pub fn analytic_unit_cost(&self) -> f64 {
        let a = self.alpha;
        (self.v / a).powf(a) * (self.w / (1.0 - a)).powf(1.0 - a)
    }

    pub fn factor(&self, t: usize) -> f64 {
        self.progress.factor(t)
    }

    /// `q * unit_cost / A(t)`.
    pub fn total_cost(&self, q: f64, t: usize) -> Result<f64> {
        self.total_cost_at_factor(q, self.factor(t))
    }

    /// Total cost with the technology factor supplied directly.
    pub fn total_cost_at_factor(&self, q: f64, factor: f64) -> Result<f64> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::InvalidInput(format!("output must be >= 0, got {q}")));
        }
        if !(factor.is_finite() && factor >= 1.0) {
            return Err(Error::InvalidInput(format!(
                "technology factor must be >= 1, got {factor}"
            )));
        }
        Ok(q * self.unit_cost()? / factor)
    }

    /// Whether producing `q` at period `t` is strictly cheaper than at period 0.
    pub fn cost_decline_check(&self, q: f64, t: usize) -> Result<bool> {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidInput(format!("output must be > 0, got {q}")));
        }
        Ok(self.total_cost(q, t)? < self.total_cost(q, 0)?)
    }
}

// Widens a symmetric interval around 0 until the midpoint is below both ends.
// Valid for the convex, coercive objective used here.
fn bracket(f: &impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let mid = f(0.0);
    let mut half = 1.0;
    for _ in 0..BRACKET_MAX_ITER {
        let (lo, hi) = (-half, half);
        let (f_lo, f_hi) = (f(lo), f(hi));
        if !(f_lo.is_finite() && f_hi.is_finite()) {
            break;
        }
        if f_lo > mid && f_hi > mid {
            return Ok((lo, hi));
        }
        half *= 2.0;
    }
    Err(Error::SearchFailure(
        "could not bracket the unit-cost minimum".into(),
    ))
}

fn golden_section(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_MAX_ITER {
        if hi - lo < GOLDEN_TOL {
            return Ok(0.5 * (lo + hi));
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    Err(Error::SearchFailure(format!(
        "golden-section search stopped at width {:e}",
        hi - lo
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sched(v: f64, w: f64, alpha: f64, table: &[f64]) -> TechSchedule {
        TechSchedule::new(v, w, alpha, Progress::Table(table.to_vec())).unwrap()
    }

    #[test]
    fn unit_cost_examples() {
        for (v, w, expected) in [(1.0, 1.0, 2.0), (4.0, 1.0, 4.0), (2.0, 2.0, 4.0)] {
            let s = sched(v, w, 0.5, &[1.0]);
            assert_relative_eq!(s.unit_cost().unwrap(), expected, max_relative = 1e-8);
            assert_relative_eq!(s.analytic_unit_cost(), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn unit_inputs_produce_one_unit() {
        let s = sched(3.0, 0.7, 0.3, &[1.0]);
        let u = s.unit_inputs().unwrap();
        let output = u.capital.powf(0.3) * u.labor.powf(0.7);
        assert_relative_eq!(output, 1.0, max_relative = 1e-12);
        // Cobb-Douglas expenditure shares: v k / C = alpha
        assert_relative_eq!(3.0 * u.capital / u.cost, 0.3, max_relative = 1e-6);
    }

    #[test]
    fn total_cost_examples() {
        let s = sched(1.0, 1.0, 0.5, &[1.0, 2.0]);
        assert_relative_eq!(s.total_cost(1.0, 0).unwrap(), 2.0, max_relative = 1e-8);
        assert_relative_eq!(s.total_cost(1.0, 1).unwrap(), 1.0, max_relative = 1e-8);
        assert_eq!(
            s.total_cost(1.0, 1).unwrap() * 2.0,
            s.total_cost(1.0, 0).unwrap()
        );
        assert_eq!(s.total_cost(0.0, 0).unwrap(), 0.0);
        assert_eq!(s.total_cost(0.0, 7).unwrap(), 0.0);
        assert!(s.total_cost(-1.0, 0).is_err());
    }

    #[test]
    fn cost_decline_examples() {
        assert!(sched(1.0, 1.0, 0.5, &[1.0, 1.5])
            .cost_decline_check(1.0, 1)
            .unwrap());
        assert!(!sched(1.0, 1.0, 0.5, &[1.0, 1.0])
            .cost_decline_check(1.0, 1)
            .unwrap());
        let s = sched(1.0, 1.0, 0.5, &[1.0, 3.0]);
        assert!(s.cost_decline_check(10.0, 1).unwrap());
        let ratio = s.total_cost(10.0, 1).unwrap() / s.total_cost(10.0, 0).unwrap();
        assert_relative_eq!(ratio, 1.0 / 3.0, max_relative = 1e-15);
        assert!(s.cost_decline_check(0.0, 1).is_err());
    }

    #[test]
    fn geometric_progress() {
        let p = Progress::Geometric { growth: 1.0 };
        assert_eq!(
            (0..5).map(|t| p.factor(t)).collect::<Vec<_>>(),
            vec![1.0, 2.0, 4.0, 8.0, 16.0]
        );
        let p = Progress::Table(vec![1.0, 1.2]);
        assert_eq!(p.factor(9), 1.2);
    }

    #[test]
    fn schedule_validation() {
        assert!(TechSchedule::new(0.0, 1.0, 0.5, Progress::Geometric { growth: 0.0 }).is_err());
        assert!(TechSchedule::new(1.0, 1.0, 1.0, Progress::Geometric { growth: 0.0 }).is_err());
        assert!(TechSchedule::new(1.0, 1.0, 0.5, Progress::Geometric { growth: -0.1 }).is_err());
        assert!(TechSchedule::new(1.0, 1.0, 0.5, Progress::Table(vec![1.2, 1.5])).is_err());
        assert!(TechSchedule::new(1.0, 1.0, 0.5, Progress::Table(vec![1.0, 1.5, 1.4])).is_err());
        assert!(TechSchedule::new(1.0, 1.0, 0.5, Progress::Table(vec![])).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let s = golden_section(&|x: f64| (x - 0.3).powi(2), -1.0, 1.0).unwrap();
        assert!((s - 0.3).abs() < 1e-7);
    }
}
