use std::fs;
use std::path::{Path, PathBuf};

use hogcycle::io::Manifest;
use proptest::prelude::*;

use super::*;

/// Exit status `main` would return for these arguments.
fn status(args: &[&str]) -> i32 {
    match parse_args(args) {
        Err(e) => e.exit_code(),
        Ok(c) => match run(&c) {
            Ok(_) => 0,
            Err(e) => e.exit_code(),
        },
    }
}

fn cmd(args: &[&str]) -> Command {
    parse_args(args).unwrap()
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    assert_eq!(status(&["simulate", "--years", "2", "--out", &out]), 0);
    assert_eq!(status(&["simulate", "--preset", "XX", "--out", &out]), 2);
    assert_eq!(status(&["simulate", "--set", "nope=1", "--out", &out]), 2);
    assert_eq!(
        status(&["simulate", "--set", "gamma=abc", "--out", &out]),
        2
    );
    assert_eq!(
        status(&["simulate", "--birth-law", "linear", "--out", &out]),
        2
    );
    assert_eq!(status(&["simulate", "--years", "0", "--out", &out]), 2);
    assert_eq!(status(&["frobnicate"]), 2);
    assert_eq!(status(&["fracdim", "--var", "S", "--out", &out]), 2);
    // a constant price has no autocorrelation: a runtime fault, not a usage error
    assert_eq!(
        status(&[
            "chaos",
            "--birth-law",
            "appendix_literal",
            "--years",
            "2000",
            "--window",
            "1000",
            "--out",
            &out
        ]),
        1
    );
}

#[test]
fn simulate_writes_expected_tables() {
    let dir = tempfile::tempdir().unwrap();
    let lines = run(&cmd(&[
        "simulate",
        "--years",
        "50",
        "--out",
        &out_arg(dir.path()),
    ]))
    .unwrap();
    assert!(lines.iter().any(|l| l == "birth_law=proportional"));
    let yearly = fs::read_to_string(dir.path().join("yearly.csv")).unwrap();
    let grid = fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    assert_eq!(yearly.lines().next(), Some("t,N_r,N_b,S,P,B_r,B_b"));
    assert_eq!(yearly.lines().count(), 51);
    assert_eq!(grid.lines().count(), 50 * 100 + 1);
    assert!(grid.lines().next().unwrap().ends_with("total_r,total_b"));
    let m = Manifest::parse(&fs::read_to_string(dir.path().join("manifest.txt")).unwrap()).unwrap();
    assert_eq!(m.get("command"), Some("simulate"));
    assert_eq!(m.get("seed"), Some("1"));
    assert_eq!(m.get("param.birth_law"), Some("proportional"));
    assert_eq!(m.get("param.q"), Some("100"));
    assert_eq!(m.get("version"), Some(env!("CARGO_PKG_VERSION")));
}

#[test]
fn grid_stride_decimates() {
    let dir = tempfile::tempdir().unwrap();
    run(&cmd(&[
        "simulate",
        "--years",
        "10",
        "--grid-stride",
        "25",
        "--out",
        &out_arg(dir.path()),
    ]))
    .unwrap();
    let grid = fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 10 * 4 + 1);
}

#[test]
fn flags_beat_config_which_beats_preset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# overrides\ngamma = 6\nm0=4\nq=200\n").unwrap();
    let c = cmd(&[
        "simulate",
        "--preset",
        "SP",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "m0=3",
        "--q",
        "50",
    ]);
    let p = c.run_config().unwrap().resolve().unwrap();
    assert_eq!(p.gamma, 6.0);
    assert_eq!(p.m0, 3.0);
    assert_eq!(p.q, 50);
    assert_eq!(p.rho, 0.79);

    let hh1 = cmd(&["check", "--preset", "HH1"])
        .run_config()
        .unwrap()
        .resolve()
        .unwrap();
    assert_eq!(hh1.r_const, Some(0.955));
}

#[test]
fn bad_config_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "gamma 6\n").unwrap();
    let c = cmd(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        &out_arg(dir.path()),
    ]);
    assert_eq!(run(&c).unwrap_err().exit_code(), 2);
    let missing = cmd(&["simulate", "--config", "/nonexistent/x.cfg"]);
    assert_eq!(run(&missing).unwrap_err().exit_code(), 2);
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn rerun_reproduces_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = cmd(&[
        "bifurcate",
        "--param",
        "gamma",
        "--lo",
        "3",
        "--hi",
        "3.2",
        "--step",
        "0.05",
        "--seed",
        "4",
        "--years",
        "300",
        "--from-year",
        "250",
        "--out",
        &out_arg(a.path()),
    ]);
    run(&first).unwrap();
    let again = cmd(&[
        "rerun",
        "--manifest",
        a.path().join("manifest.txt").to_str().unwrap(),
        "--out",
        &out_arg(b.path()),
    ]);
    run(&again).unwrap();
    let fa = files(a.path());
    assert_eq!(fa.len(), files(b.path()).len());
    for f in fa {
        let name = f.file_name().unwrap();
        if name == "manifest.txt" {
            continue;
        }
        assert_eq!(
            fs::read(&f).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn check_reports_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let lines = run(&cmd(&[
        "check",
        "--preset",
        "TG",
        "--out",
        &out_arg(dir.path()),
    ]))
    .unwrap();
    assert!(lines.iter().any(|l| l == "hypotheses_all=true"));
    let text = fs::read_to_string(dir.path().join("check.txt")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("N_max=")));
}

fn text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_./]{1,12}"
}

fn run_config() -> impl Strategy<Value = RunConfig> {
    (
        prop_oneof![
            Just("SP".to_string()),
            Just("HH1".to_string()),
            Just("TG".to_string())
        ],
        proptest::option::of(text()),
        proptest::collection::vec(
            ("[a-zA-Z]{1,6}", -1e3..1e3f64).prop_map(|(k, v)| format!("{k}={v}")),
            0..3,
        ),
        any::<u64>(),
        proptest::option::of(1u64..1_000_000),
        proptest::option::of(1u32..1000),
        proptest::option::of(prop_oneof![
            Just("proportional".to_string()),
            Just("appendix_literal".to_string())
        ]),
        text(),
        proptest::option::of(1usize..64),
    )
        .prop_map(
            |(preset, config, set, seed, years, q, birth_law, out, workers)| RunConfig {
                preset,
                config: config.map(PathBuf::from),
                set,
                seed,
                years,
                q,
                birth_law,
                out: PathBuf::from(out),
                workers,
            },
        )
}

fn any_command() -> impl Strategy<Value = Command> {
    let finite = -1e6..1e6f64;
    prop_oneof![
        (run_config(), 1u64..1000)
            .prop_map(|(run, grid_stride)| Command::Simulate(SimulateArgs { run, grid_stride })),
        (run_config(), any::<bool>())
            .prop_map(|(run, empirical)| Command::Check(CheckArgs { run, empirical })),
        (
            run_config(),
            1u64..100_000,
            0.0..1e3f64,
            1usize..30,
            prop_oneof![Just("ols"), Just("theil_sen")]
        )
            .prop_map(|(run, window, max_lag, kmax, r)| Command::Chaos(ChaosArgs {
                run,
                window,
                max_lag,
                kmax,
                regression: r.to_string()
            })),
        (
            run_config(),
            prop_oneof![Just("Nr"), Just("P")],
            1u64..1_000_000
        )
            .prop_map(|(run, var, from_year)| Command::Fracdim(FracdimArgs {
                run,
                var: var.to_string(),
                from_year
            })),
        (
            run_config(),
            "[a-zA-Z0]{1,6}",
            finite.clone(),
            finite.clone(),
            1e-6..1.0f64,
            1u64..5000,
            1e-9..1.0f64,
            1usize..100
        )
            .prop_map(
                |(run, param, lo, hi, step, from_year, radius_frac, max_clusters)| {
                    Command::Bifurcate(BifurcateArgs {
                        run,
                        param,
                        lo,
                        hi,
                        step,
                        from_year,
                        radius_frac,
                        max_clusters,
                    })
                }
            ),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_parses_back(c in any_command()) {
        let argv = c.render();
        let back = parse_args(&argv).unwrap();
        prop_assert_eq!(back, c);
    }
}
