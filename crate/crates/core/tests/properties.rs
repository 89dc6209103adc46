use duopoly::cournot::{CournotMarket, Method as CournotMethod};
use duopoly::cyclesim::{self, CycleConfig};
use duopoly::hotelling::{LinearMarket, Locations, Method as PriceMethod, PricePair};
use duopoly::rdgame::{figure3, BimatrixGame};
use duopoly::techcost::{Progress, TechSchedule};
use proptest::prelude::*;

fn valid_locs(max: f64) -> impl Strategy<Value = Locations> {
    (0.0..max, 0.0..max).prop_map(|(a, b)| Locations::new(a, b))
}

fn game(max_dim: usize) -> impl Strategy<Value = BimatrixGame> {
    (2..=max_dim, 2..=max_dim)
        .prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec((-3i32..4, -3i32..4), c), r)
        })
        .prop_map(|grid| {
            let r = grid.len();
            let c = grid[0].len();
            let payoffs = grid
                .into_iter()
                .map(|row| row.into_iter().map(|(a, b)| (a as f64, b as f64)).collect())
                .collect();
            BimatrixGame::new(
                (0..r).map(|i| format!("r{i}")).collect(),
                (0..c).map(|j| format!("c{j}")).collect(),
                payoffs,
            )
            .unwrap()
        })
}

fn nash_cells(g: &BimatrixGame) -> Vec<(usize, usize)> {
    g.pure_nash().iter().map(|p| (p.row, p.col)).collect()
}

proptest! {
    #[test]
    fn cournot_methods_agree(cap in 1e-3..10.0f64) {
        let m = CournotMarket::new(cap).unwrap();
        let cf = m.equilibrium(CournotMethod::ClosedForm).unwrap();
        let it = m.equilibrium(CournotMethod::Iterate).unwrap();
        prop_assert!((cf.q_a - it.q_a).abs() <= 1e-9 && (cf.q_b - it.q_b).abs() <= 1e-9);
        prop_assert!((cf.profit_a - it.profit_a).abs() <= 1e-9);
        prop_assert!((cf.profit_a - cap * cap / 9.0).abs() <= 1e-12);
        prop_assert_eq!(cf.price, cap - cf.q_a - cf.q_b);
    }

    #[test]
    fn cournot_deviation_never_helps(cap in 0.1..10.0f64, frac in -1.0..1.0f64) {
        let m = CournotMarket::new(cap).unwrap();
        let q = cap / 3.0;
        let dev = (q + frac * q).max(0.0);
        let (at_eq, _) = m.profits(q, q).unwrap();
        let (deviated, _) = m.profits(dev, q).unwrap();
        prop_assert!(deviated <= at_eq + 1e-12);
    }

    #[test]
    fn hotelling_split_invariants(
        locs in valid_locs(0.45),
        c in 0.2..5.0f64,
        pa in 0.0..1.0f64,
        pb in 0.0..1.0f64,
    ) {
        let m = LinearMarket::new(1.0, c).unwrap();
        let prices = PricePair::new(pa * c, pb * c).unwrap();
        if let Ok((x, y)) = m.split(locs, prices) {
            prop_assert!((locs.loc_a + x + y + locs.loc_b - 1.0).abs() <= 1e-12);
            prop_assert!((prices.p_a + c * x * x - prices.p_b - c * y * y).abs() <= 1e-9);
        }
    }

    #[test]
    fn price_methods_agree(locs in valid_locs(0.4), c in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let m = LinearMarket::new(1.0, c).unwrap();
        let cf = m.price_equilibrium(locs, PriceMethod::ClosedForm).unwrap();
        let num = m.price_equilibrium(locs, PriceMethod::Numeric).unwrap();
        prop_assert!((cf.p_a - num.p_a).abs() <= 1e-9 && (cf.p_b - num.p_b).abs() <= 1e-9);
        let (ra, rb) = m.foc_residuals(locs, cf).unwrap();
        prop_assert!(ra.abs() < 1e-9 && rb.abs() < 1e-9);
    }

    #[test]
    fn hotelling_scales_linearly_in_disutility(locs in valid_locs(0.4), c in 0.1..4.0f64, k in 0.1..10.0f64) {
        let base = LinearMarket::new(1.0, c).unwrap().equilibrium_outcome(locs).unwrap();
        let scaled = LinearMarket::new(1.0, c * k).unwrap().equilibrium_outcome(locs).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
        prop_assert!(rel(scaled.prices.p_a, k * base.prices.p_a));
        prop_assert!(rel(scaled.profit_b, k * base.profit_b));
        prop_assert!((scaled.demand_a - base.demand_a).abs() <= 1e-9);
    }

    #[test]
    fn equilibrium_demand_matches_e_share(locs in valid_locs(0.4), l in 0.5..3.0f64) {
        let locs = Locations::new(locs.loc_a * l, locs.loc_b * l);
        let out = LinearMarket::new(l, 1.0).unwrap().equilibrium_outcome(locs).unwrap();
        prop_assert!((out.e_share - out.demand_a).abs() <= 1e-9);
        prop_assert!((out.demand_a + out.demand_b - l).abs() <= 1e-12);
    }

    #[test]
    fn gradients_negative_and_f_is_square(locs in valid_locs(0.4)) {
        let m = LinearMarket::new(1.0, 1.0).unwrap();
        let (ga, gb) = m.location_gradient(locs, None).unwrap();
        prop_assert!(ga < 0.0 && gb < 0.0);
        let (f, de) = m.diagnostics_f_de(locs).unwrap();
        let gap = 1.0 - locs.loc_a - locs.loc_b;
        prop_assert!((f - gap * gap).abs() <= 1e-12);
        prop_assert!((de - 1.0 / 6.0).abs() <= 1e-6);
    }

    #[test]
    fn unit_cost_homogeneity(v in 0.1..5.0f64, w in 0.1..5.0f64, alpha in 0.05..0.95f64, k in 0.1..10.0f64) {
        let s = TechSchedule::new(v, w, alpha, Progress::Geometric { growth: 0.0 }).unwrap();
        let scaled = TechSchedule::new(k * v, k * w, alpha, Progress::Geometric { growth: 0.0 }).unwrap();
        let (base, big) = (s.unit_cost().unwrap(), scaled.unit_cost().unwrap());
        prop_assert!((big - k * base).abs() <= 1e-9 * k * base);
        prop_assert!((base - s.analytic_unit_cost()).abs() <= 1e-8 * base);
    }

    #[test]
    fn cost_non_increasing_over_time(table in prop::collection::vec(0.0..0.5f64, 1..8), q in 0.0..100.0f64) {
        let mut path = vec![1.0];
        for inc in table {
            path.push(path.last().unwrap() + inc);
        }
        let n = path.len();
        let s = TechSchedule::new(1.0, 2.0, 0.4, Progress::Table(path)).unwrap();
        for t in 1..n {
            prop_assert!(s.total_cost(q, t).unwrap() <= s.total_cost(q, t - 1).unwrap());
        }
    }

    #[test]
    fn dominant_strategies_give_unique_equilibrium(g in game(4)) {
        let dom = g.dominant_strategies();
        if let (Some(i), Some(j)) = (dom.row, dom.col) {
            prop_assert_eq!(nash_cells(&g), vec![(i, j)]);
        }
    }

    #[test]
    fn affine_payoff_transform_is_harmless(g in game(4), k in 0.1..10.0f64, m in -50.0..50.0f64, row_player in any::<bool>()) {
        let mut t = g.clone();
        for cell in t.payoffs.iter_mut().flatten() {
            if row_player {
                cell.0 = k * cell.0 + m;
            } else {
                cell.1 = k * cell.1 + m;
            }
        }
        prop_assert_eq!(nash_cells(&g), nash_cells(&t));
        prop_assert_eq!(g.dominant_strategies(), t.dominant_strategies());
        if g.shape() == (2, 2) {
            let (a, b) = (g.classify_prisoners_dilemma().unwrap(), t.classify_prisoners_dilemma().unwrap());
            prop_assert_eq!(a.is_prisoners_dilemma, b.is_prisoners_dilemma);
        }
    }

    #[test]
    fn innovation_raises_net_profit_over_time(cost in 0.01..5.0f64, growth in 0.01..1.0f64, cycles in 2usize..12) {
        let config = CycleConfig {
            num_cycles: cycles,
            cournot_cap: 3.0,
            market: LinearMarket::new(1.0, 1.0).unwrap(),
            rd_game: figure3(),
            sched: TechSchedule::new(1.0, 1.0, 0.5, Progress::Geometric { growth }).unwrap(),
            rd_fixed_cost: cost,
            innovate_label: "R&D".into(),
        };
        let traj = cyclesim::run(&config).unwrap();
        prop_assert!(traj.cycles.iter().all(|c| c.innovates == (true, true)));
        for w in traj.cycles.windows(2) {
            prop_assert!(w[1].net_profit.0 > w[0].net_profit.0);
            prop_assert!(w[1].net_profit.1 > w[0].net_profit.1);
        }
        for s in cyclesim::decompose(&traj).unwrap() {
            prop_assert_eq!(s.d_t, -s.d_c + s.d_d);
        }
        prop_assert_eq!(traj, cyclesim::run(&config).unwrap());
    }
}
