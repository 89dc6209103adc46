//! The periodic two-phase game.
//!
//! Each cycle starts with homogeneous products (Cournot), the firms then play
//! the R&D game, and if both innovate the differentiated phase is played at
//! maximal differentiation. Innovators pay the sunk R&D cost scaled by the
//! technology factor `A(t)`, which advances every cycle.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cournot::CournotMarket;
use crate::hotelling::{LinearMarket, Locations};
use crate::rdgame::BimatrixGame;
use crate::techcost::{Progress, TechSchedule};
use crate::{Error, Result};

pub const DEFAULT_INNOVATE_LABEL: &str = "R&D";

#[derive(Debug, Clone, PartialEq)]
pub struct CycleConfig {
    pub num_cycles: usize,
    pub cournot_cap: f64,
    pub market: LinearMarket,
    /// Rows are firm A's strategies, columns firm B's.
    pub rd_game: BimatrixGame,
    pub sched: TechSchedule,
    pub rd_fixed_cost: f64,
    /// Strategy label meaning "invest in R&D" for both players.
    pub innovate_label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleRecord {
    pub t: usize,
    pub tech_factor: f64,
    /// Production cost per unit of output in this period.
    pub unit_cost: f64,
    pub phase1_profit: (f64, f64),
    pub choice: (String, String),
    pub innovates: (bool, bool),
    pub phase2_gross: (f64, f64),
    pub cost_paid: (f64, f64),
    pub net_profit: (f64, f64),
    /// Separation between the firms' varieties: `L` when differentiated, else 0.
    pub differentiation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub cycles: Vec<CycleRecord>,
}

/// Changes between consecutive cycles, with `d_t = -d_c + d_d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionStep {
    pub from: usize,
    pub to: usize,
    pub d_t: f64,
    pub d_c: f64,
    pub d_d: f64,
}

impl CycleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_cycles == 0 {
            return Err(Error::InvalidInput("num_cycles must be >= 1".into()));
        }
        CournotMarket::new(self.cournot_cap)?;
        LinearMarket::new(self.market.length, self.market.disutility)?;
        self.rd_game.validate()?;
        self.sched.validate()?;
        if !(self.rd_fixed_cost.is_finite() && self.rd_fixed_cost >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "rd_fixed_cost must be >= 0, got {}",
                self.rd_fixed_cost
            )));
        }
        let label = &self.innovate_label;
        if !self.rd_game.row_strategies.contains(label)
            || !self.rd_game.col_strategies.contains(label)
        {
            return Err(Error::InvalidInput(format!(
                "innovation strategy {label:?} missing from the R&D game"
            )));
        }
        Ok(())
    }

    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_config(base_dir)
    }

    /// Reads a TOML config; a game `file` is resolved relative to the config's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }
}

pub fn run(config: &CycleConfig) -> Result<Trajectory> {
    config.validate()?;
    let phase1 = CournotMarket::new(config.cournot_cap)?.closed_form()?;
    let equilibria = config.rd_game.pure_nash();
    let [profile] = equilibria.as_slice() else {
        return Err(Error::AmbiguousEquilibrium(equilibria.len()));
    };
    let innovates = (
        profile.row_choice == config.innovate_label,
        profile.col_choice == config.innovate_label,
    );
    let differentiated = innovates.0 && innovates.1;
    let phase2 = if differentiated {
        let out = config
            .market
            .equilibrium_outcome(Locations::new(0.0, 0.0))?;
        (out.profit_a, out.profit_b)
    } else {
        (phase1.profit_a, phase1.profit_b)
    };
    let base_unit_cost = config.sched.unit_cost()?;

    let cycles = (0..config.num_cycles)
        .map(|t| {
            let tech_factor = config.sched.factor(t);
            let rd_cost = config.rd_fixed_cost / tech_factor;
            let cost_paid = (
                if innovates.0 { rd_cost } else { 0.0 },
                if innovates.1 { rd_cost } else { 0.0 },
            );
            CycleRecord {
                t,
                tech_factor,
                unit_cost: base_unit_cost / tech_factor,
                phase1_profit: (phase1.profit_a, phase1.profit_b),
                choice: (profile.row_choice.clone(), profile.col_choice.clone()),
                innovates,
                phase2_gross: phase2,
                cost_paid,
                net_profit: (phase2.0 - cost_paid.0, phase2.1 - cost_paid.1),
                differentiation: if differentiated {
                    config.market.length
                } else {
                    0.0
                },
            }
        })
        .collect();
    Ok(Trajectory { cycles })
}

pub fn decompose(trajectory: &Trajectory) -> Result<Vec<DecompositionStep>> {
    let costs: Vec<f64> = trajectory.cycles.iter().map(|c| c.unit_cost).collect();
    let diffs: Vec<f64> = trajectory
        .cycles
        .iter()
        .map(|c| c.differentiation)
        .collect();
    decompose_series(&costs, &diffs)
}

/// Step-wise `dT = -dC + dD` from a cost-level path and a differentiation path.
pub fn decompose_series(cost: &[f64], differentiation: &[f64]) -> Result<Vec<DecompositionStep>> {
    if cost.len() != differentiation.len() {
        return Err(Error::InvalidInput(
            "cost and differentiation paths differ in length".into(),
        ));
    }
    if cost.len() < 2 {
        return Err(Error::TrajectoryTooShort(cost.len()));
    }
    Ok((1..cost.len())
        .map(|t| {
            let d_c = cost[t] - cost[t - 1];
            let d_d = differentiation[t] - differentiation[t - 1];
            DecompositionStep {
                from: t - 1,
                to: t,
                d_t: -d_c + d_d,
                d_c,
                d_d,
            }
        })
        .collect())
}

// On-disk config layout.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    num_cycles: usize,
    cournot_cap: f64,
    rd_fixed_cost: f64,
    innovate: Option<String>,
    market: RawMarket,
    tech: RawTech,
    rd_game: RawGame,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMarket {
    length: f64,
    disutility: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTech {
    v: f64,
    w: f64,
    alpha: f64,
    growth: Option<f64>,
    table: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    file: Option<PathBuf>,
    rows: Option<Vec<String>>,
    cols: Option<Vec<String>>,
    payoffs: Option<Vec<Vec<(f64, f64)>>>,
}

impl RawConfig {
    fn into_config(self, base_dir: Option<&Path>) -> Result<CycleConfig> {
        let progress = match (self.tech.growth, self.tech.table) {
            (Some(growth), None) => Progress::Geometric { growth },
            (None, Some(table)) => Progress::Table(table),
            _ => {
                return Err(Error::Parse(
                    "[tech] needs exactly one of `growth` or `table`".into(),
                ))
            }
        };
        let rd_game = match self.rd_game {
            RawGame {
                file: Some(file),
                rows: None,
                cols: None,
                payoffs: None,
            } => {
                let path = match base_dir {
                    Some(dir) if file.is_relative() => dir.join(file),
                    _ => file,
                };
                BimatrixGame::load(path)?
            }
            RawGame {
                file: None,
                rows: Some(rows),
                cols: Some(cols),
                payoffs: Some(payoffs),
            } => BimatrixGame::new(rows, cols, payoffs)?,
            _ => {
                return Err(Error::Parse(
                    "[rd_game] needs either `file` or all of `rows`, `cols`, `payoffs`".into(),
                ))
            }
        };
        let config = CycleConfig {
            num_cycles: self.num_cycles,
            cournot_cap: self.cournot_cap,
            market: LinearMarket::new(self.market.length, self.market.disutility)?,
            rd_game,
            sched: TechSchedule::new(self.tech.v, self.tech.w, self.tech.alpha, progress)?,
            rd_fixed_cost: self.rd_fixed_cost,
            innovate_label: self
                .innovate
                .unwrap_or_else(|| DEFAULT_INNOVATE_LABEL.to_string()),
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdgame::figure3;

    fn base_config(cycles: usize) -> CycleConfig {
        CycleConfig {
            num_cycles: cycles,
            cournot_cap: 3.0,
            market: LinearMarket::new(1.0, 1.0).unwrap(),
            rd_game: figure3(),
            sched: TechSchedule::new(1.0, 1.0, 0.5, Progress::Geometric { growth: 1.0 }).unwrap(),
            rd_fixed_cost: 0.2,
            innovate_label: DEFAULT_INNOVATE_LABEL.into(),
        }
    }

    #[test]
    fn two_cycle_example() {
        let traj = run(&base_config(2)).unwrap();
        assert_eq!(traj.cycles.len(), 2);
        for rec in &traj.cycles {
            assert_eq!(rec.phase1_profit, (1.0, 1.0));
            assert_eq!(rec.choice, ("R&D".to_string(), "R&D".to_string()));
            assert!(
                (rec.phase2_gross.0 - 0.5).abs() < 1e-15
                    && (rec.phase2_gross.1 - 0.5).abs() < 1e-15
            );
            assert_eq!(rec.differentiation, 1.0);
        }
        assert_eq!(traj.cycles[0].cost_paid, (0.2, 0.2));
        assert_eq!(traj.cycles[1].cost_paid, (0.1, 0.1));
        assert_eq!(
            traj.cycles[1].net_profit.0,
            traj.cycles[1].phase2_gross.0 - 0.1
        );
    }

    #[test]
    fn no_innovation_branch() {
        let mut cfg = base_config(3);
        cfg.rd_game = BimatrixGame::from_labels(
            &["R&D", "NoR&D"],
            &["R&D", "NoR&D"],
            vec![vec![(1.0, 1.0), (1.0, 2.0)], vec![(2.0, 1.0), (3.0, 3.0)]],
        )
        .unwrap();
        let traj = run(&cfg).unwrap();
        for rec in &traj.cycles {
            assert_eq!(rec.differentiation, 0.0);
            assert_eq!(rec.phase2_gross, rec.phase1_profit);
            assert_eq!(rec.cost_paid, (0.0, 0.0));
            assert_eq!(rec.net_profit, rec.phase1_profit);
        }
    }

    #[test]
    fn single_cycle() {
        let traj = run(&base_config(1)).unwrap();
        assert_eq!(traj.cycles.len(), 1);
        assert_eq!(traj.cycles[0].tech_factor, 1.0);
        assert_eq!(traj.cycles[0].cost_paid, (0.2, 0.2));
        assert!(matches!(
            decompose(&traj),
            Err(Error::TrajectoryTooShort(1))
        ));
    }

    #[test]
    fn ambiguous_game_aborts() {
        let mut cfg = base_config(2);
        cfg.rd_game = BimatrixGame::from_labels(
            &["R&D", "NoR&D"],
            &["R&D", "NoR&D"],
            vec![vec![(2.0, 2.0), (0.0, 0.0)], vec![(0.0, 0.0), (1.0, 1.0)]],
        )
        .unwrap();
        assert!(matches!(run(&cfg), Err(Error::AmbiguousEquilibrium(2))));
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = base_config(0);
        assert!(run(&cfg).is_err());
        cfg.num_cycles = 2;
        cfg.rd_fixed_cost = -1.0;
        assert!(run(&cfg).is_err());
        cfg.rd_fixed_cost = 0.0;
        cfg.innovate_label = "Research".into();
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let steps = decompose_series(&[0.2, 0.1], &[1.0, 1.0]).unwrap();
        assert!((steps[0].d_t - 0.1).abs() < 1e-15);
        let steps = decompose_series(&[0.5, 0.5], &[0.0, 1.0]).unwrap();
        assert_eq!(steps[0].d_t, 1.0);
        let steps = decompose_series(&[0.2, 0.1], &[0.0, 1.0]).unwrap();
        assert!((steps[0].d_t - 1.1).abs() < 1e-15);
        assert!(decompose_series(&[1.0], &[0.0]).is_err());
        assert!(decompose_series(&[1.0, 2.0], &[0.0]).is_err());
    }

    #[test]
    fn config_parse_inline_and_errors() {
        let text = r#"
num_cycles = 2
cournot_cap = 3.0
rd_fixed_cost = 0.2

[market]
length = 1.0
disutility = 1.0

[tech]
v = 1.0
w = 1.0
alpha = 0.5
table = [1.0, 2.0]

[rd_game]
rows = ["R&D", "NoR&D"]
cols = ["R&D", "NoR&D"]
payoffs = [[[50, 50], [200, 0]], [[0, 200], [100, 100]]]
"#;
        let cfg = CycleConfig::parse(text, None).unwrap();
        assert_eq!(cfg.rd_game, figure3());
        assert_eq!(cfg.sched.progress, Progress::Table(vec![1.0, 2.0]));
        assert_eq!(cfg.innovate_label, "R&D");

        let both = text.replace("table = [1.0, 2.0]", "table = [1.0, 2.0]\ngrowth = 1.0");
        assert!(matches!(
            CycleConfig::parse(&both, None),
            Err(Error::Parse(_))
        ));
        let unknown = text.replace("num_cycles = 2", "num_cycles = 2\nextra = 1");
        assert!(matches!(
            CycleConfig::parse(&unknown, None),
            Err(Error::Parse(_))
        ));
    }
}
