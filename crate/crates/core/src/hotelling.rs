//! Differentiated stage: price competition on a preference line with
//! quadratic disutility.
//!
//! Consumers are spread uniformly over `[0, L]`, each buying one unit. A
//! consumer at distance `x` from the variety they buy suffers `c * x^2`.
//! Firm A sits `loc_a` from the left end, firm B sits `loc_b` from the right
//! end, so the gap between them is `L - loc_a - loc_b`. The indifferent
//! consumer lies `x` to the right of A and `y` to the left of B.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-12;
/// Finite-difference step as a fraction of the line length.
pub const DEFAULT_REL_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearMarket {
    pub length: f64,
    pub disutility: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Locations {
    /// Distance of firm A from the left endpoint.
    pub loc_a: f64,
    /// Distance of firm B from the right endpoint.
    pub loc_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PricePair {
    pub p_a: f64,
    pub p_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HotellingOutcome {
    pub prices: PricePair,
    pub x: f64,
    pub y: f64,
    pub demand_a: f64,
    pub demand_b: f64,
    pub profit_a: f64,
    pub profit_b: f64,
    /// Closed-form equilibrium demand of A.
    pub e_share: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    ClosedForm,
    Numeric,
}

impl Locations {
    pub fn new(loc_a: f64, loc_b: f64) -> Self {
        Self { loc_a, loc_b }
    }
}

impl PricePair {
    pub fn new(p_a: f64, p_b: f64) -> Result<Self> {
        for (name, p) in [("pA", p_a), ("pB", p_b)] {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and >= 0, got {p}"
                )));
            }
        }
        Ok(Self { p_a, p_b })
    }
}

impl LinearMarket {
    pub fn new(length: f64, disutility: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidInput(format!(
                "line length must be > 0, got {length}"
            )));
        }
        if !(disutility.is_finite() && disutility > 0.0) {
            return Err(Error::InvalidInput(format!(
                "disutility must be > 0, got {disutility}"
            )));
        }
        Ok(Self { length, disutility })
    }

    /// Both locations non-negative and the firms strictly ordered on the line.
    pub fn check_locations(&self, locs: Locations) -> Result<()> {
        let Locations { loc_a, loc_b } = locs;
        if !(loc_a.is_finite() && loc_b.is_finite()) || loc_a < 0.0 || loc_b < 0.0 {
            return Err(Error::InvalidLocations(format!(
                "locations must be finite and >= 0, got ({loc_a}, {loc_b})"
            )));
        }
        if loc_a + loc_b >= self.length {
            return Err(Error::InvalidLocations(format!(
                "locA + locB = {} must be below the line length {}",
                loc_a + loc_b,
                self.length
            )));
        }
        Ok(())
    }

    fn gap(&self, locs: Locations) -> f64 {
        self.length - locs.loc_a - locs.loc_b
    }

    /// Distances `(x, y)` from A and B to the indifferent consumer.
    pub fn split(&self, locs: Locations, prices: PricePair) -> Result<(f64, f64)> {
        self.check_locations(locs)?;
        let (l, c) = (self.length, self.disutility);
        let Locations { loc_a: a, loc_b: b } = locs;
        let gap = self.gap(locs);
        let gap_sq = l * l + a * a + b * b - 2.0 * a * l - 2.0 * b * l + 2.0 * a * b;
        let x = (prices.p_b - prices.p_a) / (2.0 * c * gap) + gap_sq / (2.0 * gap);
        let y = (prices.p_a - prices.p_b) / (2.0 * c * gap) + gap_sq / (2.0 * gap);
        if x < 0.0 || y < 0.0 {
            return Err(Error::OutOfInterior { x, y });
        }
        Ok((x, y))
    }

    /// Revenues `pA * (locA + x)` and `pB * (locB + y)`; marginal cost is zero.
    pub fn stage_profits(&self, locs: Locations, prices: PricePair) -> Result<(f64, f64)> {
        let (x, y) = self.split(locs, prices)?;
        Ok((prices.p_a * (locs.loc_a + x), prices.p_b * (locs.loc_b + y)))
    }

    /// Equilibrium prices from the pair of first-order conditions.
    pub fn price_equilibrium(&self, locs: Locations, method: Method) -> Result<PricePair> {
        match method {
            Method::ClosedForm => self.closed_form_prices(locs),
            Method::Numeric => self.numeric_prices(locs, DEFAULT_TOL, DEFAULT_MAX_ITER),
        }
    }

    pub fn closed_form_prices(&self, locs: Locations) -> Result<PricePair> {
        self.check_locations(locs)?;
        let (l, c) = (self.length, self.disutility);
        let Locations { loc_a: a, loc_b: b } = locs;
        let p_a = c / 3.0 * (3.0 * l * l - a * a + b * b - 2.0 * a * l - 4.0 * b * l);
        let p_b = c / 3.0 * (3.0 * l * l + a * a - b * b - 4.0 * a * l - 2.0 * b * l);
        Ok(PricePair { p_a, p_b })
    }

    // Own-price-independent parts of each firm's demand numerator.
    fn demand_constants(&self, locs: Locations) -> (f64, f64) {
        let l = self.length;
        let Locations { loc_a: a, loc_b: b } = locs;
        (
            l * l - a * a + b * b - 2.0 * b * l,
            l * l + a * a - b * b - 2.0 * a * l,
        )
    }

    /// Each firm's price solving its own first-order condition given the rival's price.
    pub fn price_best_responses(&self, locs: Locations, prices: PricePair) -> PricePair {
        let (k_a, k_b) = self.demand_constants(locs);
        let c = self.disutility;
        PricePair {
            p_a: (prices.p_b + c * k_a) / 2.0,
            p_b: (prices.p_a + c * k_b) / 2.0,
        }
    }

    /// Alternating best responses in prices, starting from zero prices.
    pub fn numeric_prices(&self, locs: Locations, tol: f64, max_iter: usize) -> Result<PricePair> {
        self.check_locations(locs)?;
        let mut prices = PricePair { p_a: 0.0, p_b: 0.0 };
        let mut step = f64::INFINITY;
        for _ in 0..max_iter {
            let p_a = self.price_best_responses(locs, prices).p_a;
            let p_b = self
                .price_best_responses(
                    locs,
                    PricePair {
                        p_a,
                        p_b: prices.p_b,
                    },
                )
                .p_b;
            step = (p_a - prices.p_a).abs().max((p_b - prices.p_b).abs());
            prices = PricePair { p_a, p_b };
            if step < tol {
                return Ok(prices);
            }
        }
        Err(Error::NonConvergence {
            solver: "hotelling price best-response iteration",
            iterations: max_iter,
            last_step: step,
        })
    }

    /// Derivatives of each firm's profit with respect to its own price.
    pub fn foc_residuals(&self, locs: Locations, prices: PricePair) -> Result<(f64, f64)> {
        self.check_locations(locs)?;
        let (k_a, k_b) = self.demand_constants(locs);
        let gap = self.gap(locs);
        let c = self.disutility;
        let PricePair { p_a, p_b } = prices;
        Ok((
            (p_b - 2.0 * p_a) / (2.0 * c * gap) + k_a / (2.0 * gap),
            (p_a - 2.0 * p_b) / (2.0 * c * gap) + k_b / (2.0 * gap),
        ))
    }

    /// A's equilibrium demand `(3L^2 - a^2 + b^2 - 2aL - 4bL) / (6(L - a - b))`.
    pub fn e_share(&self, locs: Locations) -> Result<f64> {
        self.check_locations(locs)?;
        let l = self.length;
        let Locations { loc_a: a, loc_b: b } = locs;
        Ok((-a * a + b * b - 2.0 * a * l - 4.0 * b * l + 3.0 * l * l) / (6.0 * self.gap(locs)))
    }

    pub fn equilibrium_outcome(&self, locs: Locations) -> Result<HotellingOutcome> {
        let prices = self.closed_form_prices(locs)?;
        let (x, y) = self.split(locs, prices)?;
        let (profit_a, profit_b) = self.stage_profits(locs, prices)?;
        Ok(HotellingOutcome {
            prices,
            x,
            y,
            demand_a: locs.loc_a + x,
            demand_b: locs.loc_b + y,
            profit_a,
            profit_b,
            e_share: self.e_share(locs)?,
        })
    }

    fn default_step(&self) -> f64 {
        DEFAULT_REL_STEP * self.length
    }

    /// Finite-difference `(d profitA / d locA, d profitB / d locB)` of the
    /// equilibrium profits. Central differences in the interior; a
    /// second-order forward difference for a firm sitting at its endpoint.
    pub fn location_gradient(&self, locs: Locations, step: Option<f64>) -> Result<(f64, f64)> {
        self.check_locations(locs)?;
        let h = step.unwrap_or_else(|| self.default_step());
        let d_a = own_derivative(self, locs, Firm::A, h, |m, l| {
            Ok(m.equilibrium_outcome(l)?.profit_a)
        })?;
        let d_b = own_derivative(self, locs, Firm::B, h, |m, l| {
            Ok(m.equilibrium_outcome(l)?.profit_b)
        })?;
        Ok((d_a, d_b))
    }

    /// `F = L^2 + a^2 + 2ab - 2bL - 2aL + b^2` and the finite-difference
    /// derivative of [`e_share`](Self::e_share) in `loc_a`.
    pub fn diagnostics_f_de(&self, locs: Locations) -> Result<(f64, f64)> {
        let l = self.length;
        let Locations { loc_a: a, loc_b: b } = locs;
        let f = l * l + a * a + 2.0 * a * b - 2.0 * b * l - 2.0 * a * l + b * b;
        if a + b >= l {
            // E is undefined once the firms touch; only F is reported.
            return Ok((f, f64::NAN));
        }
        let de = own_derivative(self, locs, Firm::A, self.default_step(), |m, l| {
            m.e_share(l)
        })?;
        Ok((f, de))
    }
}

#[derive(Clone, Copy)]
enum Firm {
    A,
    B,
}

fn shifted(locs: Locations, firm: Firm, delta: f64) -> Locations {
    match firm {
        Firm::A => Locations {
            loc_a: locs.loc_a + delta,
            ..locs
        },
        Firm::B => Locations {
            loc_b: locs.loc_b + delta,
            ..locs
        },
    }
}

fn own_derivative<F>(
    market: &LinearMarket,
    locs: Locations,
    firm: Firm,
    h: f64,
    f: F,
) -> Result<f64>
where
    F: Fn(&LinearMarket, Locations) -> Result<f64>,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "finite-difference step must be > 0, got {h}"
        )));
    }
    let own = match firm {
        Firm::A => locs.loc_a,
        Firm::B => locs.loc_b,
    };
    let at = |delta: f64| -> Result<f64> {
        let moved = shifted(locs, firm, delta);
        market
            .check_locations(moved)
            .map_err(|_| Error::StepTooLarge(h))?;
        f(market, moved)
    };
    if own == 0.0 {
        let (f0, f1, f2) = (at(0.0)?, at(h)?, at(2.0 * h)?);
        Ok((-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h))
    } else {
        Ok((at(h)? - at(-h)?) / (2.0 * h))
    }
}

/// Evenly spaced values `lo, ..., hi` (`n` points) used on both location axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;

    /// `lo:hi:n`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid spec must be lo:hi:n, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(bad());
        }
        Ok(Grid { lo, hi, n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub loc_a: f64,
    pub loc_b: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub profit_a: f64,
    pub profit_b: f64,
    pub f: f64,
    pub d_e: f64,
    pub grad_a: f64,
    pub grad_b: f64,
}

impl SweepRow {
    pub const HEADER: [&'static str; 10] = [
        "locA", "locB", "pA", "pB", "profitA", "profitB", "F", "dE", "gradA", "gradB",
    ];

    pub fn values(&self) -> [f64; 10] {
        [
            self.loc_a,
            self.loc_b,
            self.p_a,
            self.p_b,
            self.profit_a,
            self.profit_b,
            self.f,
            self.d_e,
            self.grad_a,
            self.grad_b,
        ]
    }
}

/// Equilibrium, diagnostics and location gradients over `grid x grid`,
/// `locA` varying slowest. Points where the firms overlap, the equilibrium
/// split is not interior, or the gradient stencil leaves the region are skipped.
pub fn sweep(market: &LinearMarket, grid: Grid) -> Result<Vec<SweepRow>> {
    let pts = grid.points();
    let mut rows = Vec::with_capacity(pts.len() * pts.len());
    for &loc_a in &pts {
        for &loc_b in &pts {
            match sweep_point(market, Locations { loc_a, loc_b }) {
                Ok(row) => rows.push(row),
                Err(
                    Error::InvalidLocations(_)
                    | Error::OutOfInterior { .. }
                    | Error::StepTooLarge(_),
                ) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rows)
}

fn sweep_point(market: &LinearMarket, locs: Locations) -> Result<SweepRow> {
    let out = market.equilibrium_outcome(locs)?;
    let (f, d_e) = market.diagnostics_f_de(locs)?;
    let (grad_a, grad_b) = market.location_gradient(locs, None)?;
    Ok(SweepRow {
        loc_a: locs.loc_a,
        loc_b: locs.loc_b,
        p_a: out.prices.p_a,
        p_b: out.prices.p_b,
        profit_a: out.profit_a,
        profit_b: out.profit_b,
        f,
        d_e,
        grad_a,
        grad_b,
    })
}
