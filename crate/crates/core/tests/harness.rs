mod common;

use meshfree_hydro::fluid::parse_snapshot_csv;
use meshfree_hydro::harness::{convergence_study, run, setup_sod, RunConfig};
use meshfree_hydro::scheme::SchemeKind;
use meshfree_hydro::Error;

fn report_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("report has no `{key}`"))
        .to_string()
}

#[test]
fn run_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::with_scheme(SchemeKind::Rbf);
    cfg.n_particles = 120;
    cfg.snapshot_every = 20;
    cfg.out_dir = Some(dir.path().to_path_buf());
    let report = run(&cfg).unwrap();

    for name in [
        "config.txt",
        "run.log",
        "report.txt",
        "snapshot_final.csv",
        "snapshot_000020.csv",
    ] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
    let text = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    for key in [
        "fitted_order",
        "momentum_drift",
        "energy_drift",
        "contact_position_error",
        "linf_pressure",
    ] {
        report_value(&text, key);
    }
    assert_eq!(
        report_value(&text, "steps").parse::<usize>().unwrap(),
        report.steps
    );

    let rows = parse_snapshot_csv(
        &std::fs::read_to_string(dir.path().join("snapshot_final.csv")).unwrap(),
    )
    .unwrap();
    assert_eq!(rows.len(), 120);
    assert!(rows.windows(2).all(|w| w[0].x < w[1].x));

    let log = std::fs::read_to_string(dir.path().join("run.log")).unwrap();
    assert_eq!(log.lines().count(), report.steps);

    let again = RunConfig::from_file(&dir.path().join("config.txt")).unwrap();
    assert_eq!(again, cfg);
}

#[test]
fn reruns_are_bit_identical() {
    let mut cfg = RunConfig::with_scheme(SchemeKind::Mls);
    cfg.n_particles = 100;
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a.final_state, b.final_state);
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn report_errors_match_the_exact_solution() {
    let sod = common::sod();
    let mut cfg = RunConfig::with_scheme(SchemeKind::Sph);
    cfg.n_particles = 150;
    let r = run(&cfg).unwrap();
    let mask = sod.smooth_mask(&r.final_state.x, r.t, r.final_state.m[0], 10.0);
    assert_eq!(mask, r.mask);
    let linf = r
        .final_snapshot
        .iter()
        .zip(&mask)
        .filter(|(_, &m)| m)
        .map(|(row, _)| (row.p - sod.at(row.x, r.t).0).abs())
        .fold(0.0, f64::max);
    assert!((linf - r.errors.pressure.linf).abs() < 1e-14);
    assert!(r.errors.pressure.l1 <= r.errors.pressure.linf);
    assert!((r.t - 0.2).abs() < 1e-15);
}

#[test]
fn setup_matches_hand_counts() {
    let s = setup_sod(&RunConfig::default()).unwrap();
    let left = s.x.iter().filter(|&&x| x < 0.0).count();
    assert_eq!((left, s.len() - left), (400, 50));
    assert!(s.x.iter().all(|&x| (-0.5..=0.5).contains(&x)));
    assert_eq!(s.fixed.iter().filter(|&&f| f).count(), 12);
}

#[test]
fn convergence_study_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::with_scheme(SchemeKind::Rbf);
    cfg.out_dir = Some(dir.path().to_path_buf());
    let study = convergence_study(&cfg, &[100, 140, 200]).unwrap();
    assert_eq!(study.errors.len(), 3);
    let fitted = common::fitted_order(&[100, 140, 200], &study.errors);
    assert!((fitted - study.fitted_order).abs() < 1e-12);
    let text = std::fs::read_to_string(dir.path().join("convergence.txt")).unwrap();
    assert!(text.contains("fitted_order"));
    for n in [100, 140, 200] {
        let report =
            std::fs::read_to_string(dir.path().join(format!("n{n}")).join("report.txt")).unwrap();
        assert_ne!(report_value(&report, "fitted_order"), "none");
    }
}

#[test]
fn bad_configs_are_rejected() {
    let cfg = RunConfig {
        n_particles: 10,
        ..RunConfig::default()
    };
    assert!(matches!(run(&cfg), Err(Error::Config(_))));
    let mut cfg = RunConfig::default();
    assert!(cfg.set("no_such_key", "1").is_err());
    assert!(cfg.apply_text("scheme = foo").is_err());
    assert!(cfg.apply_text("cfl 0.3").is_err());
    cfg.apply_text("# comment\n\nscheme = sph  # trailing\ncfl = 0.2\n")
        .unwrap();
    assert_eq!(cfg.scheme, SchemeKind::Sph);
    assert_eq!(cfg.controls.cfl, 0.2);
}
