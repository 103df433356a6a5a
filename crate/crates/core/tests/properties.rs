use hogcycle::constants::{seasonal_mass, window_bounds_by_quadrature};
use hogcycle::model::seasonality;
use hogcycle::{
    check_bounds, derive_constants, discretize, simulate, BirthLaw, Parameters, Preset, RecordSpec,
    SimState, Simulator, Var, VarSet,
};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Brute-force c0/c1: trapezoid rule at step 1e-4 over 1e4 offsets.
///
/// Nodes are shifted by half a step. Unshifted, they land exactly on the
/// season boundaries, where rounding picks either side of the jump and
/// costs up to `1e-4 * max(m_rho)` per boundary.
fn brute_force(lo: f64, hi: f64, rho: f64) -> (f64, f64) {
    window_bounds_by_quadrature(|t| seasonality(t + 0.5e-4, rho), lo, hi, 1e-4, 10_000)
}

#[test]
fn constants_match_quadrature_oracle() {
    let mut cases: Vec<Parameters> = Preset::ALL.iter().map(|p| p.params()).collect();
    let mut odd = Parameters::sp();
    odd.a0 = 0.37;
    odd.a1 = 2.61;
    odd.omega0 = 0.5;
    odd.omega1 = 1.25;
    odd.rho = 0.55;
    cases.push(odd);
    for p in &cases {
        let c = derive_constants(p);
        let (c0, c1) = brute_force(p.a0, p.a1, p.rho);
        let (w0, w1) = brute_force(p.omega0, p.omega1, p.rho);
        assert!(rel(c.c0, c0) < 1e-4, "c0 {} vs {c0}", c.c0);
        assert!(rel(c.c1, c1) < 1e-4, "c1 {} vs {c1}", c.c1);
        assert!(rel(c.c_omega_min, w0) < 1e-4);
        assert!(rel(c.c_omega_max, w1) < 1e-4);
    }
}

#[test]
fn sp_constants() {
    let c = derive_constants(&Parameters::sp());
    assert!((c.c0 - (1.0 + 0.03 / 0.21)).abs() < 1e-12);
    assert!((c.c1 - 2.0).abs() < 1e-12);
    assert!((c.n_max - 10.0).abs() < 1e-12);
    assert!((c.s_max - 10.989_010_989).abs() < 1e-6);
    assert!((c.l1 - 47.619_047_619).abs() < 1e-6);
}

#[test]
fn seasonality_has_unit_yearly_mass() {
    for rho in [0.1, 0.5, 0.79, 0.95] {
        for t in [0.0, 0.013, 0.21, 0.3, 0.5, 0.77, 0.79, 0.9, 1.4, 7.25] {
            let mass = seasonal_mass(t + 1.0, rho) - seasonal_mass(t, rho);
            assert!((mass - 1.0).abs() < 1e-9, "rho {rho} t {t}");
        }
    }
}

#[test]
fn yearly_series_is_grid_subsampled() {
    let p = Parameters::sp();
    let spec = RecordSpec::default();
    let traj = simulate(&p, 5, 20, &spec).unwrap();
    assert_eq!(traj.grid_len, 2000);
    assert_eq!(traj.yearly_len, 20);
    let q = p.q as usize;
    for var in Var::ALL {
        let grid = traj.grid.get(var).unwrap();
        let yearly = traj.yearly.get(var).unwrap();
        for (y, &v) in yearly.iter().enumerate() {
            assert_eq!(
                v.to_bits(),
                grid[(y + 1) * q - 1].to_bits(),
                "{var:?} year {}",
                y + 1
            );
        }
    }
}

#[test]
fn runs_are_bit_identical() {
    let p = Parameters::sp();
    let a = simulate(&p, 11, 100, &RecordSpec::default()).unwrap();
    let b = simulate(&p, 11, 100, &RecordSpec::default()).unwrap();
    assert_eq!(a, b);
    let c = simulate(&p, 12, 100, &RecordSpec::default()).unwrap();
    assert_ne!(a, c);
}

#[test]
fn extending_by_zero_years_changes_nothing() {
    let mut sim = Simulator::new(Parameters::sp(), 3).unwrap();
    let before = sim.state().fingerprint();
    let traj = sim.extend(0, &RecordSpec::default()).unwrap();
    assert!(traj.is_empty());
    assert_eq!(sim.state().fingerprint(), before);
    assert_eq!(sim.state().step_index(), 0);
}

#[test]
fn initial_mature_population_is_near_one() {
    // each of the 182 window cells has mean 1/182
    let p = Parameters::sp();
    let n = 200;
    let mean = (1..=n)
        .map(|s| SimState::new(&p, s).unwrap().window_sums().0)
        .sum::<f64>()
        / n as f64;
    assert!((mean - 1.0).abs() < 0.03, "{mean}");
}

#[test]
fn long_run_keeps_reproducers_while_mature_line_dips() {
    let p = Parameters::sp();
    let spec = RecordSpec {
        grid: VarSet::of(&[Var::Nr]),
        grid_stride: 1,
        grid_from_step: 100 * 100 + 1,
        yearly: VarSet::NONE,
        yearly_from_year: 1,
        totals: true,
    };
    let traj = simulate(&p, 1, 2000, &spec).unwrap();
    let (tr, _) = traj.totals.as_ref().unwrap();
    let min_total = tr.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_nr = traj
        .grid
        .get(Var::Nr)
        .unwrap()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    assert!(min_total >= 0.1, "min total {min_total}");
    assert!(min_nr < 1e-2, "min N_r {min_nr}");
}

#[test]
fn window_sums_track_naive_sums() {
    let p = Parameters::sp();
    let mut sim = Simulator::new(p, 9).unwrap();
    let mut worst: f64 = 0.0;
    sim.run_with(200_000, |k, _, st| {
        if k % 1000 == 0 {
            let (r, b) = st.window_sums();
            let (nr, nb) = st.naive_window_sums();
            worst = worst.max(rel(r, nr)).max(rel(b, nb));
        }
    })
    .unwrap();
    assert!(worst < 1e-9, "{worst}");
}

/// Same initial birth density on both grids: every history cell holds
/// `1 / width`, so the mature population starts at 1 either way.
fn flat_start(q: u32) -> Simulator {
    let mut p = Parameters::sp();
    p.q = q;
    let idx = discretize(&p);
    let cell = 1.0 / idx.reproducing_width() as f64;
    let len = idx.history_len();
    let st = SimState::with_histories(&p, vec![cell; len], vec![cell; len], 1.0).unwrap();
    Simulator::from_state(p, st)
}

#[test]
fn doubling_q_is_a_small_change_early_on() {
    let spec = RecordSpec::yearly_only(VarSet::of(&[Var::Nr]), 1);
    let coarse = flat_start(100).extend(50, &spec).unwrap();
    let fine = flat_start(200).extend(50, &spec).unwrap();
    let a = coarse.yearly.get(Var::Nr).unwrap();
    let b = fine.yearly.get(Var::Nr).unwrap();
    for y in 0..2 {
        assert!(
            rel(a[y], b[y]) < 0.1,
            "year {}: {} vs {}",
            y + 1,
            a[y],
            b[y]
        );
    }
    assert!(a.iter().chain(b).all(|v| v.is_finite() && *v >= 0.0));
}

#[test]
fn preset_tg_meets_all_hypotheses() {
    let c = derive_constants(&Preset::Tg.params());
    assert_eq!(c.hypotheses(), (true, true, true));
    let c = derive_constants(&Parameters::sp());
    assert!(!c.all_hypotheses());
}

fn random_params() -> impl Strategy<Value = Parameters> {
    (
        (2.0..8.0f64, 2.0..10.0f64, 0.3..0.9f64, 0.3..2.0f64),
        (2.0..30.0f64, 0.0..0.5f64, 0.6..1.0f64, 0.05..0.5f64),
        (1.2..3.0f64, 0.05..0.5f64, 1.2..3.0f64),
    )
        .prop_map(
            |((m0, gamma, rho, lambda), (d0, r0, r1, a0), (a1, w0, w1))| {
                let mut p = Parameters::sp();
                p.m0 = m0;
                p.gamma = gamma;
                p.rho = rho;
                p.lambda = lambda;
                p.d0 = d0;
                p.r0 = r0;
                p.r1 = r1;
                p.a0 = a0;
                p.a1 = a1;
                p.omega0 = w0;
                p.omega1 = w1;
                p.birth_law = BirthLaw::Proportional;
                p
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn proportional_law_respects_a_priori_bounds(p in random_params(), seed in 0u64..1000) {
        let r = check_bounds(&p, seed, 200).unwrap();
        prop_assert!(r.n_r_within_cap(0.05), "N_r {} cap {}", r.max_n_r, r.n_cap);
        prop_assert!(r.supply_within_cap(0.05), "S {} cap {}", r.max_supply, r.s_cap);
        prop_assert!(r.lipschitz_ok(0.05), "step {} cap {}", r.max_step_change, r.step_cap);
        prop_assert_eq!(r.negatives, 0);
    }

    #[test]
    fn overrides_round_trip(p in random_params()) {
        let pairs = p.to_pairs();
        let back = Parameters::sp()
            .with_overrides(pairs.iter().map(|(k, v)| (*k, v.as_str())))
            .unwrap();
        prop_assert_eq!(back, p);
    }
}
