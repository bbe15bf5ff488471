//! Pipeline orchestration: build, certify, synthesize, verify, and emit
//! deterministic reports.

pub mod config;

pub use config::RunConfig;

use meandim::kernel::{make_kernel, normalization_c, InterpolationKernel};
use meandim::mdim::{exact_bounds, lower_certificate, mdim_report, upper_certificate};
use meandim::params::{validate_params, ConstructionParams};
use meandim::ratio::to_f64;
use meandim::spectral::{
    band_energy_ratio, sampling_injectivity_check, spectrum_estimate, SpectrumEstimate, WindowKind,
};
use meandim::symbolic::{
    generate_segment, minimality_evidence, window_admissible, BuildCaps, Construction, FillMode,
    SkewPoint,
};
use meandim::synthesis::{
    apply_g, integer_sampling, metric_d, realify, recover_coeffs, synth_f, BandSignal, RealSignal,
};
use meandim::{Error, Result};
use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Map, Value};
use std::fs;
use std::path::Path;

/// Everything the downstream stages share.
struct Context {
    cfg: RunConfig,
    params: ConstructionParams,
    construction: Option<Construction>,
    kernel: Option<InterpolationKernel>,
    norm_c: f64,
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| Error::InvalidArgument(format!("mkdir {}: {e}", parent.display())))?;
    }
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidArgument(format!("serialize: {e}")))?;
    fs::write(path, text + "\n")
        .map_err(|e| Error::InvalidArgument(format!("write {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| Error::InvalidArgument(format!("mkdir {}: {e}", parent.display())))?;
    }
    fs::write(path, text)
        .map_err(|e| Error::InvalidArgument(format!("write {}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Derive or accept parameters and validate them.
pub fn run_plan(cfg: &RunConfig) -> Result<(ConstructionParams, Value, bool)> {
    let params = cfg.resolve_params()?;
    let report = validate_params(&params);
    let pass = report.all_pass();
    let degenerate = params.r() == 0.0;
    let value = json!({
        "params": to_value(&params),
        "r": params.r(),
        "kernel_sharpness": params.kernel_sharpness(),
        "degenerate_r_zero": degenerate,
        "checks": to_value(&report.checks),
        "pass": pass,
    });
    Ok((params, value, pass))
}

fn stage_construction(ctx: &mut Context) -> Result<(Value, bool)> {
    let cons = Construction::build(&ctx.params, ctx.cfg.k_max, BuildCaps::default(), None)?;
    let r = cons.exact_r();
    let mut levels = Vec::new();
    let mut pass = true;
    for word in cons.levels() {
        let ok = word.proportion_ok(&r);
        pass &= ok;
        levels.push(json!({
            "k": word.level,
            "n_len": word.len(),
            "n_mult": word.n_mult,
            "stars": word.star_count(),
            "proportion": word.star_count() as f64 / word.len() as f64,
            "proportion_ok": ok,
        }));
        write_json(
            &ctx.cfg
                .out
                .join(format!("patterns/level_{}.json", word.level)),
            &word.to_json(),
        )?;
    }
    // nesting: a zero-filled deepest segment is admissible at every level
    let deepest = cons.word(ctx.cfg.k_max).len();
    let seg = generate_segment(
        &cons,
        ctx.cfg.k_max,
        3 * deepest,
        ctx.cfg.seed,
        FillMode::Zero,
    )?;
    let mut nesting = Vec::new();
    for k in 1..=ctx.cfg.k_max {
        let m = window_admissible(&seg, cons.word(k), 1e-9)?;
        pass &= m.is_some();
        nesting.push(json!({"k": k, "alignment": m}));
    }
    ctx.construction = Some(cons);
    Ok((
        json!({"levels": levels, "nesting": nesting, "pass": pass}),
        pass,
    ))
}

fn stage_certificates(ctx: &Context) -> Result<(Value, bool)> {
    let cons = ctx.construction.as_ref().expect("construction available");
    let cfg = &ctx.cfg;
    let mut reports = Vec::new();
    let mut pass = true;
    let s_exact = meandim::ratio::exact_ratio(ctx.params.s);
    let mut gaps = Vec::new();
    for k in 1..=cfg.k_max {
        let lower_ev = lower_certificate(cons, k, cfg.trials, cfg.seed)?;
        let m = cons.word(k).len();
        let upper_ev = upper_certificate(cons, k, m, 0.1, cfg.trials, cfg.seed)?;
        let report = mdim_report(cons, k, &lower_ev, &upper_ev);
        pass &= report.violations.is_empty();
        let (lower, upper, gap) = exact_bounds(cons, k);
        // exact identities: upper == s + 2q/(p N_k), s < lower <= upper
        let identity = &s_exact
            + meandim::ratio::big_ratio(2 * ctx.params.q as i64, ctx.params.p as i64 * m as i64);
        pass &= upper == identity;
        pass &= s_exact < lower && lower <= upper;
        gaps.push(gap);
        reports.push(json!({
            "report": to_value(&report),
            "lower_evidence": to_value(&lower_ev),
            "upper_evidence": to_value(&upper_ev),
        }));
    }
    // gap strictly shrinking, except in the degenerate collapsed case gap = 0
    for w in gaps.windows(2) {
        let ok = w[1] < w[0] || (w[0].is_zero() && w[1].is_zero());
        pass &= ok;
    }
    let table = json!({
        "levels": reports,
        "gaps": gaps.iter().map(to_f64).collect::<Vec<_>>(),
        "degenerate_r_zero": cons.exact_r().is_zero(),
        "pass": pass,
    });
    write_json(&cfg.out.join("certificates/certificates.json"), &table)?;
    Ok((table, pass))
}

fn stage_minimality(ctx: &Context) -> Result<(Value, bool)> {
    let cons = ctx.construction.as_ref().expect("construction available");
    let cfg = &ctx.cfg;
    if cfg.k_max < 2 {
        let value = json!({"skipped": "needs k_max >= 2", "pass": true});
        write_json(&cfg.out.join("certificates/minimality.json"), &value)?;
        return Ok((value, true));
    }
    let mut evidence = Vec::new();
    let mut pass = true;
    for k in 2..=cfg.k_max {
        let len = 10 * cons.word(k).len();
        let seg = generate_segment(cons, k, len, cfg.seed ^ k as u64, FillMode::Random)?;
        let report = minimality_evidence(cons, k, &seg, 1e-9);
        pass &= report.pass;
        evidence.push(to_value(&report));
    }
    let value = json!({"levels": evidence, "pass": pass});
    write_json(&cfg.out.join("certificates/minimality.json"), &value)?;
    Ok((value, pass))
}

/// Synthesis fixture: a random deep point, its image under the synthesis map,
/// and the modulated image.
struct SignalFixture {
    point: SkewPoint,
    f_image: BandSignal,
    g_image: BandSignal,
}

fn make_fixture(ctx: &Context, seed: u64) -> Result<SignalFixture> {
    let cons = ctx.construction.as_ref().expect("construction available");
    let cfg = &ctx.cfg;
    let kernel = ctx.kernel.as_ref().expect("kernel available");
    let depth = cfg.k_max;
    let len = 2 * (cfg.window_radius.unsigned_abs() + cons.word(depth).len() + 64);
    let seg = generate_segment(cons, depth, len, seed, FillMode::Random)?;
    let point = SkewPoint::new(seg, 0, ctx.params.p);
    let f_image = synth_f(&point, kernel, ctx.norm_c, cfg.window_radius)?;
    let g_image = apply_g(&f_image, point.i, ctx.params.c, cfg.exp_sign);
    Ok(SignalFixture {
        point,
        f_image,
        g_image,
    })
}

fn sample_range(ctx: &Context) -> f64 {
    let kernel = ctx.kernel.as_ref().unwrap();
    (0.4 * kernel.node_spacing() * ctx.cfg.window_radius as f64 * ctx.params.q as f64).min(100.0)
}

fn stage_synthesis(ctx: &Context) -> Result<(Value, bool)> {
    let cfg = &ctx.cfg;
    let fixture = make_fixture(ctx, cfg.seed)?;
    let kernel = ctx.kernel.as_ref().unwrap();
    let mut rng = meandim::seeding::stage_rng(cfg.seed, meandim::seeding::Stream::Synthesis);

    // unit-ball membership on random points
    let range = sample_range(ctx);
    let mut max_modulus: f64 = 0.0;
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(-range..range);
        max_modulus = max_modulus.max(fixture.f_image.eval(x).norm());
        max_modulus = max_modulus.max(fixture.g_image.eval(x).norm());
    }
    let unit_ball_ok = max_modulus <= 1.0 + 1e-9;

    // coefficient round trip on the inner half of the window
    let recover_radius = cfg.window_radius / 2;
    let recovered = recover_coeffs(&fixture.f_image, recover_radius);
    let mut max_err: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    let mut within_bound = true;
    for rec in &recovered {
        let truth = fixture.f_image.coeff(rec.n, rec.j);
        let err = ((rec.re - truth.re).powi(2) + (rec.im - truth.im).powi(2)).sqrt();
        within_bound &= err <= rec.bound;
        max_err = max_err.max(err);
        max_bound = max_bound.max(rec.bound);
    }
    let roundtrip_ok = within_bound && max_err < cfg.tol_roundtrip;

    // equivariance F(S y) = T(F y) through one cyclic period
    let mut equivariance_ok = true;
    let mut max_equiv_excess: f64 = -f64::INFINITY;
    let mut current = fixture.point.clone();
    for _ in 0..ctx.params.p {
        let lhs = synth_f(&current.apply_s(), kernel, ctx.norm_c, cfg.window_radius)?;
        let rhs = synth_f(&current, kernel, ctx.norm_c, cfg.window_radius)?.apply_t();
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-range / 2.0..range / 2.0);
            let budget = lhs.truncation_bound(x) + rhs.truncation_bound(x) + 1e-12;
            let diff = (lhs.eval(x) - rhs.eval(x)).norm();
            max_equiv_excess = max_equiv_excess.max(diff - budget);
            equivariance_ok &= diff <= budget;
        }
        current = current.apply_s();
    }
    // modulated side: G(T(g)) equals the shifted G(g) exactly up to rounding
    let stepped = fixture.g_image.apply_t();
    let mut max_shift_diff: f64 = 0.0;
    for _ in 0..200 {
        let x: f64 = rng.gen_range(-range / 2.0..range / 2.0);
        max_shift_diff =
            max_shift_diff.max((stepped.eval(x) - fixture.g_image.eval(x + 1.0)).norm());
    }
    let shift_ok = max_shift_diff <= 1e-10;

    // metric form of equivariance
    let shifted_back = synth_f(
        &fixture.point.apply_s(),
        kernel,
        ctx.norm_c,
        cfg.window_radius,
    )?;
    let t_image = synth_f(&fixture.point, kernel, ctx.norm_c, cfg.window_radius)?.apply_t();
    let (d_value, d_bound) = metric_d(&shifted_back, &t_image, 12, 0.05, 8.0);
    let metric_ok = d_value <= d_bound + 2.0 * t_image.truncation_bound(0.0) + 1e-9;

    // sample dump and coefficient map
    let mut csv = String::from("x,re,im,err_bound\n");
    let dump_range = range.min(50.0);
    let steps = (2.0 * dump_range / 0.25) as i64;
    for i in 0..=steps {
        let x = -dump_range + i as f64 * 0.25;
        let v = fixture.f_image.eval(x);
        csv.push_str(&format!(
            "{x},{},{},{}\n",
            v.re,
            v.im,
            fixture.f_image.truncation_bound(x)
        ));
    }
    write_text(&cfg.out.join("signals/f_image.csv"), &csv)?;
    let mut kcsv = String::from("x,re,im\n");
    for i in 0..=steps {
        let x = -dump_range + i as f64 * 0.25;
        let v = kernel.eval(x);
        kcsv.push_str(&format!("{x},{},{}\n", v.re, v.im));
    }
    write_text(&cfg.out.join("signals/kernel.csv"), &kcsv)?;
    write_json(&cfg.out.join("signals/kernel.json"), &to_value(kernel))?;
    let coeffs: Vec<Value> = (-cfg.window_radius..=cfg.window_radius)
        .flat_map(|n| (0..ctx.params.q).map(move |j| (n, j)))
        .map(|(n, j)| {
            let c = fixture.f_image.coeff(n, j);
            json!({"n": n, "j": j, "re": c.re, "im": c.im})
        })
        .collect();
    write_json(&cfg.out.join("signals/coefficients.json"), &json!(coeffs))?;
    write_json(
        &cfg.out.join("signals/roundtrip.json"),
        &json!({
            "recover_radius": recover_radius,
            "max_error": max_err,
            "max_bound": max_bound,
            "within_bound": within_bound,
        }),
    )?;

    let pass = unit_ball_ok && roundtrip_ok && equivariance_ok && shift_ok && metric_ok;
    Ok((
        json!({
            "max_modulus": max_modulus,
            "unit_ball_ok": unit_ball_ok,
            "roundtrip_max_error": max_err,
            "roundtrip_max_bound": max_bound,
            "roundtrip_ok": roundtrip_ok,
            "equivariance_ok": equivariance_ok,
            "equivariance_max_excess": max_equiv_excess,
            "modulated_shift_max_diff": max_shift_diff,
            "modulated_shift_ok": shift_ok,
            "metric_d_value": d_value,
            "metric_d_budget": d_bound,
            "metric_ok": metric_ok,
            "pass": pass,
        }),
        pass,
    ))
}

fn spectrum_csv(est: &SpectrumEstimate) -> String {
    let mut out = String::from("freq,power\n");
    for (f, p) in est.freqs.iter().zip(&est.power) {
        out.push_str(&format!("{f},{p}\n"));
    }
    out
}

fn stage_spectral(ctx: &Context) -> Result<(Value, bool)> {
    let cfg = &ctx.cfg;
    let params = &ctx.params;
    let fixture = make_fixture(ctx, cfg.seed ^ 0x5eed)?;

    let f_est = spectrum_estimate(
        &fixture.f_image,
        cfg.spectrum_radius,
        cfg.spectrum_step,
        WindowKind::Hann,
    )?;
    let guard = f_est.bin_width();
    let f_ratio = band_energy_ratio(&f_est, params.a + params.eps0, params.b, guard);

    let g_est = spectrum_estimate(
        &fixture.g_image,
        cfg.spectrum_radius,
        cfg.spectrum_step,
        WindowKind::Hann,
    )?;
    // with the negative exponent the line lands at -c, outside [a, b]; the
    // checked band is the hull of the configured band and the actual line
    let line = fixture.g_image.extra.as_ref().unwrap().line();
    let g_lo = params.a.min(line);
    let g_hi = params.b.max(line);
    let g_ratio = band_energy_ratio(&g_est, g_lo, g_hi, guard);
    let dominant = g_est.dominant_frequency();
    let line_ok = dominant.is_some_and(|f| (f - line).abs() <= 2.0 * guard);

    let real = realify(&fixture.f_image);
    let real_est = spectrum_estimate(
        &real,
        cfg.spectrum_radius,
        cfg.spectrum_step,
        WindowKind::Hann,
    )?;
    // symmetrized hull of the synthesis band; stays valid left of zero
    let (real_lo, c_prime) = real.band_hint();
    let real_ratio = band_energy_ratio(&real_est, real_lo, c_prime, guard);
    // conjugate symmetry of the realified spectrum
    let n = real_est.power.len();
    let total = real_est.total_power();
    let mut max_asym: f64 = 0.0;
    for i in 0..n {
        let j = n - 1 - i;
        if (real_est.freqs[i] + real_est.freqs[j]).abs() < 1e-9 {
            max_asym = max_asym.max((real_est.power[i] - real_est.power[j]).abs());
        }
    }
    let symmetric_ok = max_asym <= 1e-9 * total.max(1e-300);

    write_text(&cfg.out.join("spectra/f_image.csv"), &spectrum_csv(&f_est))?;
    write_text(&cfg.out.join("spectra/g_image.csv"), &spectrum_csv(&g_est))?;
    write_text(
        &cfg.out.join("spectra/realified.csv"),
        &spectrum_csv(&real_est),
    )?;

    let pass = f_ratio >= cfg.tol_band
        && g_ratio >= cfg.tol_band
        && real_ratio >= cfg.tol_band
        && line_ok
        && symmetric_ok;
    let value = json!({
        "f_image": {"band": [params.a + params.eps0, params.b], "ratio": f_ratio},
        "g_image": {"band": [g_lo, g_hi], "ratio": g_ratio,
                     "line_expected": line, "line_observed": dominant},
        "realified": {"band": [real_lo, c_prime], "ratio": real_ratio,
                       "max_asymmetry": max_asym},
        "guard": guard,
        "pass": pass,
    });
    write_json(&cfg.out.join("spectra/report.json"), &value)?;
    Ok((value, pass))
}

fn stage_sampling(ctx: &Context) -> Result<(Value, bool)> {
    let cfg = &ctx.cfg;
    // family of realified synthesis images over their symmetrized band
    let mut family: Vec<RealSignal> = Vec::new();
    for t in 0..6u64 {
        let fixture = make_fixture(ctx, cfg.seed ^ (0xa11ce + t))?;
        family.push(realify(&fixture.f_image));
    }
    let half_band = family[0].band_hint().1;
    // step chosen to satisfy the sampling hypothesis with margin 0.9
    let step = 0.45 / half_band;
    let evidence = sampling_injectivity_check(
        &family,
        half_band,
        step,
        60,
        cfg.trials.min(60),
        cfg.seed,
        1e-9,
    )?;
    // the guard must refuse a step violating the hypothesis
    let bad_step = 0.5 / half_band;
    let guard_ok = matches!(
        sampling_injectivity_check(&family, half_band, bad_step, 60, 4, cfg.seed, 1e-9),
        Err(Error::HypothesisViolation { .. })
    );
    // rescaled integer samples stay in [0, 1]
    let samples = integer_sampling(&family[0], -40, 40);
    let rescale_ok = samples.rescaled.iter().all(|&v| (0.0..=1.0).contains(&v));

    let pass = evidence.violations == 0 && guard_ok && rescale_ok;
    let value = json!({
        "evidence": to_value(&evidence),
        "guard_refuses_bad_step": guard_ok,
        "rescaled_in_unit_interval": rescale_ok,
        "pass": pass,
    });
    Ok((value, pass))
}

pub struct PipelineOutcome {
    pub summary: Value,
    pub overall_pass: bool,
}

fn stage_entry(
    stages: &mut Map<String, Value>,
    passes: &mut Map<String, Value>,
    name: &str,
    outcome: Result<(Value, bool)>,
) -> bool {
    match outcome {
        Ok((value, pass)) => {
            stages.insert(name.into(), value);
            passes.insert(name.into(), json!(pass));
            pass
        }
        Err(err) => {
            stages.insert(name.into(), json!({"error": err.to_string()}));
            passes.insert(name.into(), json!(false));
            false
        }
    }
}

fn skipped(stages: &mut Map<String, Value>, passes: &mut Map<String, Value>, name: &str) {
    stages.insert(name.into(), json!({"skipped": "prerequisite stage failed"}));
    passes.insert(name.into(), json!(false));
}

/// Run every stage, isolating failures, and write `summary.json`.
pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineOutcome> {
    cfg.validate()?;
    let mut stages = Map::new();
    let mut passes = Map::new();

    let (params, plan_value, plan_pass) = run_plan(cfg)?;
    stages.insert("validation".into(), plan_value);
    passes.insert("validation".into(), json!(plan_pass));
    write_text(&cfg.out.join("params.config"), &params.to_config())?;

    let mut ctx = Context {
        cfg: cfg.clone(),
        params,
        construction: None,
        kernel: None,
        norm_c: 0.0,
    };

    let mut overall = plan_pass;
    if plan_pass {
        let construction_pass = stage_entry(
            &mut stages,
            &mut passes,
            "construction",
            stage_construction(&mut ctx),
        );
        overall &= construction_pass;
        if construction_pass {
            overall &= stage_entry(
                &mut stages,
                &mut passes,
                "certificates",
                stage_certificates(&ctx),
            );
            overall &= stage_entry(
                &mut stages,
                &mut passes,
                "minimality",
                stage_minimality(&ctx),
            );
            match make_kernel(&ctx.params, None) {
                Ok(kernel) => {
                    ctx.norm_c = normalization_c(&kernel, 1e-3);
                    ctx.kernel = Some(kernel);
                    overall &=
                        stage_entry(&mut stages, &mut passes, "synthesis", stage_synthesis(&ctx));
                    overall &=
                        stage_entry(&mut stages, &mut passes, "spectral", stage_spectral(&ctx));
                    overall &=
                        stage_entry(&mut stages, &mut passes, "sampling", stage_sampling(&ctx));
                }
                Err(err) => {
                    for name in ["synthesis", "spectral", "sampling"] {
                        stages.insert(name.into(), json!({"error": err.to_string()}));
                        passes.insert(name.into(), json!(false));
                    }
                    overall = false;
                }
            }
        } else {
            for name in [
                "certificates",
                "minimality",
                "synthesis",
                "spectral",
                "sampling",
            ] {
                skipped(&mut stages, &mut passes, name);
            }
            overall = false;
        }
    } else {
        for name in [
            "construction",
            "certificates",
            "minimality",
            "synthesis",
            "spectral",
            "sampling",
        ] {
            stages.insert(name.into(), json!({"skipped": "validation failed"}));
            passes.insert(name.into(), json!(false));
        }
        overall = false;
    }

    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let summary = json!({
        "config": to_value(cfg),
        "stages": Value::Object(stages),
        "stage_pass": Value::Object(passes),
        "overall_pass": overall,
        "timestamp": timestamp,
    });
    write_json(&cfg.out.join("summary.json"), &summary)?;
    Ok(PipelineOutcome {
        summary,
        overall_pass: overall,
    })
}

/// Individual subcommands: each runs the pipeline prefix it needs.
pub fn run_construct(cfg: &RunConfig) -> Result<(Value, bool)> {
    cfg.validate()?;
    let (params, _, pass) = run_plan(cfg)?;
    if !pass {
        return Err(Error::InvalidArgument("parameters fail validation".into()));
    }
    let mut ctx = Context {
        cfg: cfg.clone(),
        params,
        construction: None,
        kernel: None,
        norm_c: 0.0,
    };
    stage_construction(&mut ctx)
}

fn context_with_kernel(cfg: &RunConfig) -> Result<Context> {
    let (params, _, pass) = run_plan(cfg)?;
    if !pass {
        return Err(Error::InvalidArgument("parameters fail validation".into()));
    }
    let mut ctx = Context {
        cfg: cfg.clone(),
        params,
        construction: None,
        kernel: None,
        norm_c: 0.0,
    };
    stage_construction(&mut ctx)?;
    let kernel = make_kernel(&ctx.params, None)?;
    ctx.norm_c = normalization_c(&kernel, 1e-3);
    ctx.kernel = Some(kernel);
    Ok(ctx)
}

pub fn run_synth(cfg: &RunConfig) -> Result<(Value, bool)> {
    cfg.validate()?;
    let ctx = context_with_kernel(cfg)?;
    stage_synthesis(&ctx)
}

pub fn run_spectrum(cfg: &RunConfig) -> Result<(Value, bool)> {
    cfg.validate()?;
    let ctx = context_with_kernel(cfg)?;
    stage_spectral(&ctx)
}

pub fn run_certify(cfg: &RunConfig) -> Result<(Value, bool)> {
    cfg.validate()?;
    let (params, _, pass) = run_plan(cfg)?;
    if !pass {
        return Err(Error::InvalidArgument("parameters fail validation".into()));
    }
    let mut ctx = Context {
        cfg: cfg.clone(),
        params,
        construction: None,
        kernel: None,
        norm_c: 0.0,
    };
    stage_construction(&mut ctx)?;
    let (cert_value, cert_pass) = stage_certificates(&ctx)?;
    let (min_value, min_pass) = stage_minimality(&ctx)?;
    Ok((
        json!({"certificates": cert_value, "minimality": min_value}),
        cert_pass && min_pass,
    ))
}
