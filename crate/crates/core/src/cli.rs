//! Command-line front end.
//!
//! ```text
//! duopoly [--format json|csv] [--output PATH] <command>
//!
//!   cournot   --cap X [--method closed|iterate]
//!   hotelling prices --L X --c X --locA X --locB X [--method closed|numeric]
//!   hotelling sweep  --grid LO:HI:N [--L X] [--c X]
//!   cost      --v X --w X --alpha X --q X --A X
//!   rdgame    --file PATH
//!   simulate  --config PATH
//! ```
//!
//! JSON is the default format except for `hotelling sweep`, which defaults
//! to CSV. CSV column orders:
//!
//! * cournot: `method,cap,qA,qB,price,profitA,profitB`
//! * hotelling prices: `method,L,c,locA,locB,pA,pB,x,y,demandA,demandB,profitA,profitB,eShare,focA,focB`
//! * hotelling sweep: `locA,locB,pA,pB,profitA,profitB,F,dE,gradA,gradB`
//! * cost: `v,w,alpha,q,A,unitCost,analyticUnitCost,capital,labor,baseCost,totalCost,declines`
//! * rdgame: `row,col,rowPayoff,colPayoff` (one line per pure Nash equilibrium)
//! * simulate: `t,A,unitCost,phase1A,phase1B,choiceA,choiceB,phase2A,phase2B,costA,costB,netA,netB,D,dT,dC,dD`
//!   (the decomposition columns are empty on the first cycle)

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cournot::{self, CournotMarket};
use crate::cyclesim::{self, CycleConfig};
use crate::fmt::{number, round_json};
use crate::hotelling::{self, Grid, LinearMarket, Locations};
use crate::rdgame::{BimatrixGame, StrategyProfile};
use crate::techcost::{Progress, TechSchedule};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "duopoly", version, about = "Duopoly equilibrium solver")]
struct Cli {
    /// Output format (default: json; csv for `hotelling sweep`)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homogeneous-product Cournot equilibrium
    Cournot {
        #[arg(long, allow_negative_numbers = true)]
        cap: f64,
        #[arg(long, value_enum, default_value = "closed")]
        method: CournotMethod,
    },
    /// Differentiated-product price competition
    Hotelling {
        #[command(subcommand)]
        command: HotellingCommand,
    },
    /// Unit and total production cost under technical progress
    Cost(CostArgs),
    /// Pure-strategy analysis of a game file
    Rdgame {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run the periodic game from a TOML config
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CournotMethod {
    Closed,
    Iterate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PriceMethod {
    Closed,
    Numeric,
}

#[derive(Debug, Subcommand)]
enum HotellingCommand {
    /// Equilibrium prices and the resulting split at given locations
    Prices {
        #[arg(long = "L", allow_negative_numbers = true)]
        length: f64,
        #[arg(long = "c", allow_negative_numbers = true)]
        disutility: f64,
        #[arg(long = "locA", allow_negative_numbers = true)]
        loc_a: f64,
        #[arg(long = "locB", allow_negative_numbers = true)]
        loc_b: f64,
        #[arg(long, value_enum, default_value = "closed")]
        method: PriceMethod,
    },
    /// Equilibria, diagnostics and location gradients over a square grid
    Sweep {
        /// LO:HI:N, applied to both locA and locB
        #[arg(long)]
        grid: String,
        #[arg(long = "L", default_value_t = 1.0)]
        length: f64,
        #[arg(long = "c", default_value_t = 1.0)]
        disutility: f64,
    },
}

#[derive(Debug, Args)]
struct CostArgs {
    #[arg(long, allow_negative_numbers = true)]
    v: f64,
    #[arg(long, allow_negative_numbers = true)]
    w: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    /// Technology factor A(t) >= 1
    #[arg(long = "A", default_value_t = 1.0, allow_negative_numbers = true)]
    factor: f64,
}

#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// A command result in both renderings.
struct Report {
    json: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    default_format: Format,
}

impl Report {
    fn render(mut self, format: Option<Format>) -> Result<String> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                round_json(&mut self.json);
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Io(e.to_string());
                w.write_record(&self.columns).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render)).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the rendered result to `out` or the `--output` file. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let rendered = execute(&cli.command).and_then(|report| report.render(cli.format));
    let text = match rendered {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Cournot { cap, method } => cournot_report(*cap, *method),
        Command::Hotelling {
            command:
                HotellingCommand::Prices {
                    length,
                    disutility,
                    loc_a,
                    loc_b,
                    method,
                },
        } => prices_report(
            *length,
            *disutility,
            Locations::new(*loc_a, *loc_b),
            *method,
        ),
        Command::Hotelling {
            command:
                HotellingCommand::Sweep {
                    grid,
                    length,
                    disutility,
                },
        } => sweep_report(grid.parse()?, *length, *disutility),
        Command::Cost(args) => cost_report(args),
        Command::Rdgame { file } => rdgame_report(&BimatrixGame::load(file)?),
        Command::Simulate { config } => simulate_report(&CycleConfig::load(config)?),
    }
}

fn cournot_report(cap: f64, method: CournotMethod) -> Result<Report> {
    let market = CournotMarket::new(cap)?;
    let (name, method) = match method {
        CournotMethod::Closed => ("closed", cournot::Method::ClosedForm),
        CournotMethod::Iterate => ("iterate", cournot::Method::Iterate),
    };
    let o = market.equilibrium(method)?;
    Ok(Report {
        json: json!({
            "method": name, "cap": cap, "qA": o.q_a, "qB": o.q_b, "price": o.price,
            "profitA": o.profit_a, "profitB": o.profit_b,
        }),
        columns: vec!["method", "cap", "qA", "qB", "price", "profitA", "profitB"],
        rows: vec![vec![
            name.into(),
            cap.into(),
            o.q_a.into(),
            o.q_b.into(),
            o.price.into(),
            o.profit_a.into(),
            o.profit_b.into(),
        ]],
        default_format: Format::Json,
    })
}

fn prices_report(
    length: f64,
    disutility: f64,
    locs: Locations,
    method: PriceMethod,
) -> Result<Report> {
    let market = LinearMarket::new(length, disutility)?;
    let (name, method) = match method {
        PriceMethod::Closed => ("closed", hotelling::Method::ClosedForm),
        PriceMethod::Numeric => ("numeric", hotelling::Method::Numeric),
    };
    let p = market.price_equilibrium(locs, method)?;
    let (x, y) = market.split(locs, p)?;
    let (profit_a, profit_b) = market.stage_profits(locs, p)?;
    let e_share = market.e_share(locs)?;
    let (foc_a, foc_b) = market.foc_residuals(locs, p)?;
    let (demand_a, demand_b) = (locs.loc_a + x, locs.loc_b + y);
    Ok(Report {
        json: json!({
            "method": name, "L": length, "c": disutility, "locA": locs.loc_a, "locB": locs.loc_b,
            "pA": p.p_a, "pB": p.p_b, "x": x, "y": y, "demandA": demand_a, "demandB": demand_b,
            "profitA": profit_a, "profitB": profit_b, "eShare": e_share, "focA": foc_a, "focB": foc_b,
        }),
        columns: vec![
            "method", "L", "c", "locA", "locB", "pA", "pB", "x", "y", "demandA", "demandB",
            "profitA", "profitB", "eShare", "focA", "focB",
        ],
        rows: vec![vec![
            name.into(),
            length.into(),
            disutility.into(),
            locs.loc_a.into(),
            locs.loc_b.into(),
            p.p_a.into(),
            p.p_b.into(),
            x.into(),
            y.into(),
            demand_a.into(),
            demand_b.into(),
            profit_a.into(),
            profit_b.into(),
            e_share.into(),
            foc_a.into(),
            foc_b.into(),
        ]],
        default_format: Format::Json,
    })
}

fn sweep_report(grid: Grid, length: f64, disutility: f64) -> Result<Report> {
    let market = LinearMarket::new(length, disutility)?;
    let rows = hotelling::sweep(&market, grid)?;
    let columns = hotelling::SweepRow::HEADER.to_vec();
    let json = Value::Array(
        rows.iter()
            .map(|r| {
                Value::Object(
                    columns
                        .iter()
                        .map(|c| c.to_string())
                        .zip(r.values().map(|v| json!(v)))
                        .collect(),
                )
            })
            .collect(),
    );
    Ok(Report {
        json,
        rows: rows
            .iter()
            .map(|r| r.values().iter().map(|&v| Cell::Num(v)).collect())
            .collect(),
        columns,
        default_format: Format::Csv,
    })
}

fn cost_report(args: &CostArgs) -> Result<Report> {
    let sched = TechSchedule::new(
        args.v,
        args.w,
        args.alpha,
        Progress::Geometric { growth: 0.0 },
    )?;
    let inputs = sched.unit_inputs()?;
    let analytic = sched.analytic_unit_cost();
    let base = sched.total_cost_at_factor(args.q, 1.0)?;
    let total = sched.total_cost_at_factor(args.q, args.factor)?;
    let declines = total < base;
    Ok(Report {
        json: json!({
            "v": args.v, "w": args.w, "alpha": args.alpha, "q": args.q, "A": args.factor,
            "unitCost": inputs.cost, "analyticUnitCost": analytic, "capital": inputs.capital,
            "labor": inputs.labor, "baseCost": base, "totalCost": total, "declines": declines,
        }),
        columns: vec![
            "v",
            "w",
            "alpha",
            "q",
            "A",
            "unitCost",
            "analyticUnitCost",
            "capital",
            "labor",
            "baseCost",
            "totalCost",
            "declines",
        ],
        rows: vec![vec![
            args.v.into(),
            args.w.into(),
            args.alpha.into(),
            args.q.into(),
            args.factor.into(),
            inputs.cost.into(),
            analytic.into(),
            inputs.capital.into(),
            inputs.labor.into(),
            base.into(),
            total.into(),
            declines.into(),
        ]],
        default_format: Format::Json,
    })
}

fn profile_json(p: &StrategyProfile) -> Value {
    json!({ "row": p.row_choice, "col": p.col_choice, "payoffs": [p.payoffs.0, p.payoffs.1] })
}

fn rdgame_report(game: &BimatrixGame) -> Result<Report> {
    let nash = game.pure_nash();
    let dominant = game.dominant_strategies();
    let pd = match game.classify_prisoners_dilemma() {
        Ok(c) => json!({
            "isPrisonersDilemma": c.is_prisoners_dilemma,
            "equilibrium": c.certificate.as_ref().map(|c| profile_json(&c.equilibrium)),
            "dominatedBy": c.certificate.as_ref().map(|c| profile_json(&c.dominated_by)),
        }),
        Err(Error::NotTwoByTwo { .. }) => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(Report {
        json: json!({
            "rows": game.row_strategies,
            "cols": game.col_strategies,
            "pureNash": nash.iter().map(profile_json).collect::<Vec<_>>(),
            "dominant": {
                "row": dominant.row.map(|i| game.row_strategies[i].clone()),
                "col": dominant.col.map(|j| game.col_strategies[j].clone()),
            },
            "prisonersDilemma": pd,
        }),
        columns: vec!["row", "col", "rowPayoff", "colPayoff"],
        rows: nash
            .iter()
            .map(|p| {
                vec![
                    p.row_choice.clone().into(),
                    p.col_choice.clone().into(),
                    p.payoffs.0.into(),
                    p.payoffs.1.into(),
                ]
            })
            .collect(),
        default_format: Format::Json,
    })
}

fn simulate_report(config: &CycleConfig) -> Result<Report> {
    let traj = cyclesim::run(config)?;
    let steps = if traj.cycles.len() >= 2 {
        cyclesim::decompose(&traj)?
    } else {
        Vec::new()
    };
    let cycles: Vec<Value> = traj
        .cycles
        .iter()
        .map(|c| {
            json!({
                "t": c.t, "A": c.tech_factor, "unitCost": c.unit_cost,
                "phase1Profit": [c.phase1_profit.0, c.phase1_profit.1],
                "choice": [c.choice.0, c.choice.1],
                "phase2Gross": [c.phase2_gross.0, c.phase2_gross.1],
                "costPaid": [c.cost_paid.0, c.cost_paid.1],
                "netProfit": [c.net_profit.0, c.net_profit.1],
                "D": c.differentiation,
            })
        })
        .collect();
    let decomposition: Vec<Value> = steps
        .iter()
        .map(|s| json!({ "from": s.from, "to": s.to, "dT": s.d_t, "dC": s.d_c, "dD": s.d_d }))
        .collect();
    let rows = traj
        .cycles
        .iter()
        .map(|c| {
            let mut row: Vec<Cell> = vec![
                Cell::Text(c.t.to_string()),
                c.tech_factor.into(),
                c.unit_cost.into(),
                c.phase1_profit.0.into(),
                c.phase1_profit.1.into(),
                c.choice.0.clone().into(),
                c.choice.1.clone().into(),
                c.phase2_gross.0.into(),
                c.phase2_gross.1.into(),
                c.cost_paid.0.into(),
                c.cost_paid.1.into(),
                c.net_profit.0.into(),
                c.net_profit.1.into(),
                c.differentiation.into(),
            ];
            match steps.iter().find(|s| s.to == c.t) {
                Some(s) => row.extend([s.d_t.into(), s.d_c.into(), s.d_d.into()]),
                None => row.extend(std::iter::repeat_with(|| Cell::Text(String::new())).take(3)),
            }
            row
        })
        .collect();
    Ok(Report {
        json: json!({ "cycles": cycles, "decomposition": decomposition }),
        columns: vec![
            "t", "A", "unitCost", "phase1A", "phase1B", "choiceA", "choiceB", "phase2A", "phase2B",
            "costA", "costB", "netA", "netB", "D", "dT", "dC", "dD",
        ],
        rows,
        default_format: Format::Json,
    })
}
