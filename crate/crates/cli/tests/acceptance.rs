//! Pipeline-level acceptance: determinism of the full run and stage isolation.

use meandim_cli::{run_pipeline, RunConfig};
use std::path::Path;

fn worked_config(out: &Path, seed: u64) -> RunConfig {
    let mut cfg = RunConfig::from_str_flat(
        "a=0\nb=3\ns=1\nmode=strict\np=5\nq=3\neps0=0.5\nc=0.2\nkmax=2\ntrials=120\n",
    )
    .unwrap();
    cfg.seed = seed;
    cfg.out = out.to_path_buf();
    cfg
}

fn summary_without_timestamp(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|line| !line.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_11_pipeline_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = worked_config(&dir.path().join("run"), 42);

    let first = run_pipeline(&cfg).unwrap();
    assert!(first.overall_pass, "first run failed: {}", first.summary);
    let first_text = summary_without_timestamp(&cfg.out.join("summary.json"));

    let second = run_pipeline(&cfg).unwrap();
    assert!(second.overall_pass);
    let second_text = summary_without_timestamp(&cfg.out.join("summary.json"));

    assert_eq!(
        first_text, second_text,
        "summaries differ beyond the timestamp"
    );
    println!("criterion 11 (pipeline determinism, identical config+seed): PASS");
}

#[test]
fn corrupted_config_stops_at_validation() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = worked_config(&dir.path().join("bad"), 1);
    cfg.c = Some(0.3); // violates c < a + eps0/2 = 0.25
    let outcome = run_pipeline(&cfg).unwrap();
    assert!(!outcome.overall_pass);
    let stages = outcome.summary["stages"].as_object().unwrap();
    assert_eq!(stages["validation"]["pass"], serde_json::json!(false));
    for name in [
        "construction",
        "certificates",
        "synthesis",
        "spectral",
        "sampling",
    ] {
        assert!(
            stages[name].get("skipped").is_some(),
            "stage {name} ran despite failed validation"
        );
    }
    // nothing but the summary and params should have been produced
    assert!(!cfg.out.join("patterns").exists());
    assert!(!cfg.out.join("signals").exists());
}

#[test]
fn degenerate_s_zero_run_collapses_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        s: 0.0,
        k_max: 2,
        trials: 60,
        out: dir.path().join("zero"),
        ..RunConfig::default()
    };
    let outcome = run_pipeline(&cfg).unwrap();
    assert!(outcome.overall_pass, "{}", outcome.summary);
    let certs = &outcome.summary["stages"]["certificates"];
    assert_eq!(certs["degenerate_r_zero"], serde_json::json!(true));
    let gaps = certs["gaps"].as_array().unwrap();
    assert!(gaps.iter().all(|g| g.as_f64().unwrap() == 0.0));
    // upper bounds still head toward s = 0 as the level grows
    let levels = certs["levels"].as_array().unwrap();
    let uppers: Vec<f64> = levels
        .iter()
        .map(|l| l["report"]["upper_k"].as_f64().unwrap())
        .collect();
    assert!(uppers.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn negative_band_pipeline_passes() {
    // bands left of zero exercise the negative modulation multiple and the
    // symmetrized realified band
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        a: -3.0,
        b: 0.0,
        s: 1.0,
        k_max: 2,
        trials: 60,
        seed: 11,
        out: dir.path().join("neg"),
        ..RunConfig::default()
    };
    let outcome = run_pipeline(&cfg).unwrap();
    assert!(outcome.overall_pass, "{}", outcome.summary);
    let params = &outcome.summary["stages"]["validation"]["params"];
    assert!(params["c"].as_f64().unwrap() < 0.0);
    let real_band = &outcome.summary["stages"]["spectral"]["realified"]["band"];
    let lo = real_band[0].as_f64().unwrap();
    let hi = real_band[1].as_f64().unwrap();
    assert!(lo < 0.0 && hi > 0.0 && (lo + hi).abs() < 1e-12);
}

#[test]
fn output_files_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = worked_config(&dir.path().join("files"), 3);
    let outcome = run_pipeline(&cfg).unwrap();
    assert!(outcome.overall_pass);
    for file in [
        "summary.json",
        "params.config",
        "patterns/level_1.json",
        "patterns/level_2.json",
        "certificates/certificates.json",
        "certificates/minimality.json",
        "signals/f_image.csv",
        "signals/kernel.csv",
        "signals/kernel.json",
        "signals/coefficients.json",
        "signals/roundtrip.json",
        "spectra/f_image.csv",
        "spectra/g_image.csv",
        "spectra/realified.csv",
        "spectra/report.json",
    ] {
        assert!(cfg.out.join(file).exists(), "missing {file}");
    }
    // the params document round-trips through the flat format
    let text = std::fs::read_to_string(cfg.out.join("params.config")).unwrap();
    let parsed = meandim::params::ConstructionParams::from_config(&text).unwrap();
    assert_eq!((parsed.p, parsed.q), (5, 3));
}
