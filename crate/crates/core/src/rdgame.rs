//! Two-player games in normal form: pure Nash equilibria, strict dominance
//! and prisoner's-dilemma classification.
//!
//! Game files are plain text:
//!
//! ```text
//! # rows: ATI, columns: NVIDIA
//! R&D NoR&D
//! R&D NoR&D
//! 50,50 200,0
//! 0,200 100,100
//! ```
//!
//! Line 1 holds the row labels, line 2 the column labels, and each following
//! line one row of `row_payoff,col_payoff` pairs. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BimatrixGame {
    pub row_strategies: Vec<String>,
    pub col_strategies: Vec<String>,
    /// `payoffs[i][j] = (row payoff, column payoff)` when row plays `i` and column plays `j`.
    pub payoffs: Vec<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyProfile {
    pub row: usize,
    pub col: usize,
    pub row_choice: String,
    pub col_choice: String,
    pub payoffs: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominantStrategies {
    pub row: Option<usize>,
    pub col: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdCertificate {
    pub equilibrium: StrategyProfile,
    pub dominated_by: StrategyProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdClassification {
    pub is_prisoners_dilemma: bool,
    pub certificate: Option<PdCertificate>,
}

impl BimatrixGame {
    pub fn new(
        row_strategies: Vec<String>,
        col_strategies: Vec<String>,
        payoffs: Vec<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        let g = Self {
            row_strategies,
            col_strategies,
            payoffs,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a game with `&str` labels; convenient for fixtures.
    pub fn from_labels(
        rows: &[&str],
        cols: &[&str],
        payoffs: Vec<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        Self::new(
            rows.iter().map(|s| s.to_string()).collect(),
            cols.iter().map(|s| s.to_string()).collect(),
            payoffs,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let (r, c) = self.shape();
        if r < 2 || c < 2 {
            return Err(Error::InvalidInput(format!(
                "each player needs at least 2 strategies, got {r}x{c}"
            )));
        }
        if self.payoffs.len() != r || self.payoffs.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput(format!(
                "payoff matrix does not match the {r}x{c} strategy lists"
            )));
        }
        if self
            .payoffs
            .iter()
            .flatten()
            .any(|(a, b)| !(a.is_finite() && b.is_finite()))
        {
            return Err(Error::InvalidInput("payoffs must be finite".into()));
        }
        for labels in [&self.row_strategies, &self.col_strategies] {
            for (i, s) in labels.iter().enumerate() {
                if s.is_empty() || labels[..i].contains(s) {
                    return Err(Error::InvalidInput(format!(
                        "strategy labels must be unique and non-empty: {s:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_strategies.len(), self.col_strategies.len())
    }

    pub fn profile(&self, row: usize, col: usize) -> StrategyProfile {
        StrategyProfile {
            row,
            col,
            row_choice: self.row_strategies[row].clone(),
            col_choice: self.col_strategies[col].clone(),
            payoffs: self.payoffs[row][col],
        }
    }

    fn row_payoff(&self, i: usize, j: usize) -> f64 {
        self.payoffs[i][j].0
    }

    fn col_payoff(&self, i: usize, j: usize) -> f64 {
        self.payoffs[i][j].1
    }

    /// Profiles where neither player has a strictly improving unilateral
    /// deviation, in row-major order.
    pub fn pure_nash(&self) -> Vec<StrategyProfile> {
        let (r, c) = self.shape();
        let best_row: Vec<f64> = (0..c)
            .map(|j| {
                (0..r)
                    .map(|i| self.row_payoff(i, j))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let best_col: Vec<f64> = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| self.col_payoff(i, j))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                self.row_payoff(i, j) >= best_row[j] && self.col_payoff(i, j) >= best_col[i]
            })
            .map(|(i, j)| self.profile(i, j))
            .collect()
    }

    /// Strategies that strictly beat every alternative against every opposing strategy.
    pub fn dominant_strategies(&self) -> DominantStrategies {
        let (r, c) = self.shape();
        let row = (0..r).find(|&s| {
            (0..r)
                .filter(|&o| o != s)
                .all(|o| (0..c).all(|j| self.row_payoff(s, j) > self.row_payoff(o, j)))
        });
        let col = (0..c).find(|&s| {
            (0..c)
                .filter(|&o| o != s)
                .all(|o| (0..r).all(|i| self.col_payoff(i, s) > self.col_payoff(i, o)))
        });
        DominantStrategies { row, col }
    }

    /// A 2x2 game is a prisoner's dilemma when both players have strictly
    /// dominant strategies and another profile strictly improves on the
    /// resulting equilibrium for both players.
    pub fn classify_prisoners_dilemma(&self) -> Result<PdClassification> {
        let (rows, cols) = self.shape();
        if (rows, cols) != (2, 2) {
            return Err(Error::NotTwoByTwo { rows, cols });
        }
        let not_pd = PdClassification {
            is_prisoners_dilemma: false,
            certificate: None,
        };
        let DominantStrategies {
            row: Some(i),
            col: Some(j),
        } = self.dominant_strategies()
        else {
            return Ok(not_pd);
        };
        let (eq_r, eq_c) = self.payoffs[i][j];
        let better = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .find(|&(a, b)| self.row_payoff(a, b) > eq_r && self.col_payoff(a, b) > eq_c);
        Ok(match better {
            Some((a, b)) => PdClassification {
                is_prisoners_dilemma: true,
                certificate: Some(PdCertificate {
                    equilibrium: self.profile(i, j),
                    dominated_by: self.profile(a, b),
                }),
            },
            None => not_pd,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut labels = |what: &str| -> Result<Vec<String>> {
            let (_, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what} labels")))?;
            Ok(line.split_whitespace().map(String::from).collect())
        };
        let rows = labels("row")?;
        let cols = labels("column")?;
        let mut payoffs = Vec::new();
        for (n, line) in lines {
            let row = line
                .split_whitespace()
                .map(|cell| {
                    parse_pair(cell).ok_or_else(|| {
                        Error::Parse(format!("line {}: bad payoff pair {cell:?}", n + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            payoffs.push(row);
        }
        Self::new(rows, cols, payoffs).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::Parse(msg),
            other => other,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Renders the game in the text format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.row_strategies.join(" "));
        let _ = writeln!(out, "{}", self.col_strategies.join(" "));
        for row in &self.payoffs {
            let cells: Vec<String> = row.iter().map(|(a, b)| format!("{a},{b}")).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

fn parse_pair(cell: &str) -> Option<(f64, f64)> {
    let (a, b) = cell.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// The R&D game between the two graphics-card makers: rows are ATI, columns NVIDIA.
pub fn figure3() -> BimatrixGame {
    BimatrixGame::from_labels(
        &["R&D", "NoR&D"],
        &["R&D", "NoR&D"],
        vec![
            vec![(50.0, 50.0), (200.0, 0.0)],
            vec![(0.0, 200.0), (100.0, 100.0)],
        ],
    )
    .expect("static game is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coordination() -> BimatrixGame {
        BimatrixGame::from_labels(
            &["A", "B"],
            &["A", "B"],
            vec![vec![(2.0, 2.0), (0.0, 0.0)], vec![(0.0, 0.0), (1.0, 1.0)]],
        )
        .unwrap()
    }

    fn constant() -> BimatrixGame {
        BimatrixGame::from_labels(&["A", "B"], &["A", "B"], vec![vec![(1.0, 1.0); 2]; 2]).unwrap()
    }

    fn labels(ps: &[StrategyProfile]) -> Vec<(&str, &str)> {
        ps.iter()
            .map(|p| (p.row_choice.as_str(), p.col_choice.as_str()))
            .collect()
    }

    #[test]
    fn pure_nash_examples() {
        assert_eq!(labels(&figure3().pure_nash()), vec![("R&D", "R&D")]);
        assert_eq!(constant().pure_nash().len(), 4);
        assert_eq!(
            labels(&coordination().pure_nash()),
            vec![("A", "A"), ("B", "B")]
        );
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            figure3().dominant_strategies(),
            DominantStrategies {
                row: Some(0),
                col: Some(0)
            }
        );
        let pennies = BimatrixGame::from_labels(
            &["H", "T"],
            &["H", "T"],
            vec![
                vec![(1.0, -1.0), (-1.0, 1.0)],
                vec![(-1.0, 1.0), (1.0, -1.0)],
            ],
        )
        .unwrap();
        assert_eq!(
            pennies.dominant_strategies(),
            DominantStrategies {
                row: None,
                col: None
            }
        );
        assert!(pennies.pure_nash().is_empty());
        assert_eq!(
            constant().dominant_strategies(),
            DominantStrategies {
                row: None,
                col: None
            }
        );
    }

    #[test]
    fn pd_examples() {
        let pd = figure3().classify_prisoners_dilemma().unwrap();
        assert!(pd.is_prisoners_dilemma);
        let cert = pd.certificate.unwrap();
        assert_eq!(cert.equilibrium.payoffs, (50.0, 50.0));
        assert_eq!(cert.dominated_by.payoffs, (100.0, 100.0));
        assert_eq!(cert.dominated_by.row_choice, "NoR&D");

        assert!(
            !coordination()
                .classify_prisoners_dilemma()
                .unwrap()
                .is_prisoners_dilemma
        );

        // dominant-strategy equilibrium that is already Pareto optimal
        let harmony = BimatrixGame::from_labels(
            &["C", "D"],
            &["C", "D"],
            vec![vec![(3.0, 3.0), (2.0, 1.0)], vec![(1.0, 2.0), (0.0, 0.0)]],
        )
        .unwrap();
        assert_eq!(
            harmony.dominant_strategies(),
            DominantStrategies {
                row: Some(0),
                col: Some(0)
            }
        );
        assert!(
            !harmony
                .classify_prisoners_dilemma()
                .unwrap()
                .is_prisoners_dilemma
        );

        let three =
            BimatrixGame::from_labels(&["a", "b", "c"], &["x", "y"], vec![vec![(0.0, 0.0); 2]; 3])
                .unwrap();
        assert!(matches!(
            three.classify_prisoners_dilemma(),
            Err(Error::NotTwoByTwo { rows: 3, cols: 2 })
        ));
    }

    #[test]
    fn parse_and_render() {
        let text = "# rows ATI\nR&D NoR&D\nR&D NoR&D\n\n50,50 200,0\n0,200 100,100\n";
        let g = BimatrixGame::parse(text).unwrap();
        assert_eq!(g, figure3());
        assert_eq!(BimatrixGame::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(BimatrixGame::parse(""), Err(Error::Parse(_))));
        assert!(matches!(
            BimatrixGame::parse("A B\nA B\n1,1 2\n1,1 1,1"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BimatrixGame::parse("A B\nA B\n1,1 1,1"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BimatrixGame::parse("A A\nA B\n1,1 1,1\n1,1 1,1"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BimatrixGame::parse("A\nA B\n1,1 1,1"),
            Err(Error::Parse(_))
        ));
    }
}
