//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured figures (visible under `--nocapture`).

use meandim::kernel::{make_kernel, normalization_c};
use meandim::mdim::{exact_bounds, l_for_epsilon, lower_certificate, upper_certificate};
use meandim::params::{derive_params, validate_params, ConstructionParams, Mode};
use meandim::ratio::{big_ratio, exact_ratio, from_int};
use meandim::seeding::{stage_rng, Stream};
use meandim::spectral::{
    band_energy_ratio, sampling_injectivity_check, spectrum_estimate, WindowKind,
};
use meandim::symbolic::{
    generate_segment, minimality_evidence, BuildCaps, Construction, FillMode, SkewPoint,
};
use meandim::synthesis::{apply_g, integer_sampling, realify, recover_coeffs, synth_f, ExpSign};
use meandim::Error;
use num_complex::Complex64;
use rand::Rng;

/// The worked instance: a=0, b=3, s=1 with the lattice pair p=5, q=3,
/// eps0=0.5, c=0.2 (all six invariant inequalities hold by direct
/// arithmetic), giving r = 5/6.
fn worked_params() -> ConstructionParams {
    let params = ConstructionParams {
        a: 0.0,
        b: 3.0,
        s: 1.0,
        p: 5,
        q: 3,
        eps0: 0.5,
        c: 0.2,
        mode: Mode::Strict,
    };
    assert!(validate_params(&params).all_pass());
    params
}

/// The r = 1/2 state instance: q=1, p=2, s=1/2 on the same band, with
/// eps0=1.2 and c=0.5 (0.25 < 0.5 < 3; 0.5+1.2+1 = 2.7 < 3; 0 < 0.5 < 0.6;
/// c*p = 1).
fn half_params() -> ConstructionParams {
    let params = ConstructionParams {
        a: 0.0,
        b: 3.0,
        s: 0.5,
        p: 2,
        q: 1,
        eps0: 1.2,
        c: 0.5,
        mode: Mode::Strict,
    };
    assert!(validate_params(&params).all_pass());
    params
}

fn build(params: &ConstructionParams, k_max: u32) -> Construction {
    Construction::build(params, k_max, BuildCaps::default(), None).unwrap()
}

#[test]
fn criterion_01_proportion_invariant() {
    // Arithmetic oracle for the r=1/2 instance: the unique star count in
    // (rN, rN+1] is floor(rN)+1, so N1=3 carries 2 stars (2/3 in (1/2, 5/6]);
    // the single filling from the 1-dense set forces n2=7 (least n with
    // (2n-3)/(3n) > 1/2), N2=21, 12 stars pre-trim and 11 after
    // (11/21 in (1/2, 1/2+1/21]).
    let half = build(&half_params(), 2);
    let r_half = big_ratio(1, 2);
    assert_eq!(half.exact_r(), r_half);
    assert_eq!(half.word(1).len(), 3);
    assert_eq!(half.word(1).star_count(), 2);
    assert_eq!(half.word(2).len(), 21);
    assert_eq!(half.word(2).star_count(), 11);

    let worked = build(&worked_params(), 2);
    assert_eq!(worked.exact_r(), big_ratio(5, 6));

    for (name, cons) in [("r=1/2", &half), ("worked", &worked)] {
        let r = cons.exact_r();
        for k in 1..=2 {
            let word = cons.word(k);
            assert!(word.proportion_ok(&r), "{name} level {k}");
            // spelled out: r < stars/N <= r + 1/N in exact rationals
            let stars = from_int(word.star_count());
            let n = from_int(word.len());
            assert!(&r * &n < stars);
            assert!(stars <= &r * &n + from_int(1));
        }
    }
    println!("criterion 01 (proportion invariant, exact rationals): PASS");
}

#[test]
fn criterion_02_certificate_sandwich() {
    // frozen exact bounds, derived by hand from the level data:
    //   r=1/2: k=1: lower 2*1*2/(3*2) = 2/3, upper (2/2)(1/2+1/3) = 5/6
    //          k=2: lower 2*11/(21*2) = 11/21, upper (1/2+1/21) = 23/42
    //   worked: k=1: lower 2*3*6/(7*5) = 36/35, upper (6/5)(5/6+1/7) = 41/35
    //           k=2: lower 6*251/(301*5) = 1506/1505, upper 1511/1505
    let half = build(&half_params(), 3);
    let worked = build(&worked_params(), 2);
    let expect_half = [
        (big_ratio(2, 3), big_ratio(5, 6)),
        (big_ratio(11, 21), big_ratio(23, 42)),
    ];
    for (k, (lo, hi)) in expect_half.iter().enumerate() {
        let (lower, upper, _) = exact_bounds(&half, k as u32 + 1);
        assert_eq!(&lower, lo);
        assert_eq!(&upper, hi);
    }
    let expect_worked = [
        (big_ratio(36, 35), big_ratio(41, 35)),
        (big_ratio(1506, 1505), big_ratio(1511, 1505)),
    ];
    for (k, (lo, hi)) in expect_worked.iter().enumerate() {
        let (lower, upper, _) = exact_bounds(&worked, k as u32 + 1);
        assert_eq!(&lower, lo);
        assert_eq!(&upper, hi);
    }

    for (name, cons, depth) in [("r=1/2", &half, 3u32), ("worked", &worked, 2)] {
        let s = exact_ratio(cons.params.s);
        let mut previous_gap = None;
        for k in 1..=depth {
            let (lower, upper, gap) = exact_bounds(cons, k);
            assert!(s < lower, "{name} level {k}: sandwich left");
            assert!(lower <= upper, "{name} level {k}: sandwich right");
            let identity = &s
                + big_ratio(
                    2 * cons.params.q as i64,
                    cons.params.p as i64 * cons.word(k).len() as i64,
                );
            assert_eq!(upper, identity, "{name} level {k}: upper identity");
            if let Some(prev) = previous_gap {
                assert!(gap < prev, "{name} level {k}: gap not shrinking");
            }
            previous_gap = Some(gap);
        }
    }
    println!("criterion 02 (certificate sandwich + shrinking gap, exact): PASS");
}

#[test]
fn criterion_03_kernel_interpolation() {
    let params = worked_params();
    let kernel = make_kernel(&params, None).unwrap();
    assert!((kernel.eval(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    let spacing = kernel.node_spacing();
    let mut worst_node: f64 = 0.0;
    for n in 1..=1000i64 {
        for sign in [-1.0, 1.0] {
            worst_node = worst_node.max(kernel.eval(sign * n as f64 * spacing).norm());
        }
    }
    assert!(worst_node < 1e-12, "worst node magnitude {worst_node}");

    let mut rng = stage_rng(3, Stream::Spectral);
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..1_000_000 {
        let x: f64 = rng.gen_range(-1000.0..1000.0);
        let value = kernel.eval(x).norm() * (1.0 + x * x);
        worst_ratio = worst_ratio.max(value / kernel.c1);
        assert!(value <= kernel.c1, "envelope violated at x={x}");
    }
    println!(
        "criterion 03 (kernel interpolation + envelope, worst node {worst_node:.2e}, envelope use {worst_ratio:.3}): PASS"
    );
}

#[test]
fn criterion_04_unit_ball_and_round_trip() {
    let params = worked_params();
    let cons = build(&params, 2);
    let kernel = make_kernel(&params, None).unwrap();
    let norm_c = normalization_c(&kernel, 1e-3);
    let radius = 200i64;
    let segment = generate_segment(&cons, 2, 1200, 1001, FillMode::Random).unwrap();
    let point = SkewPoint::new(segment, 0, params.p);
    let signal = synth_f(&point, &kernel, norm_c, radius).unwrap();

    let mut rng = stage_rng(1001, Stream::Synthesis);
    let mut max_modulus: f64 = 0.0;
    for _ in 0..10_000 {
        let x: f64 = rng.gen_range(-100.0..100.0);
        max_modulus = max_modulus.max(signal.eval(x).norm());
    }
    assert!(max_modulus <= 1.0 + 1e-9, "unit ball broken: {max_modulus}");

    let recovered = recover_coeffs(&signal, 100);
    let mut max_err: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    for rec in &recovered {
        let truth = signal.coeff(rec.n, rec.j);
        let err = ((rec.re - truth.re).powi(2) + (rec.im - truth.im).powi(2)).sqrt();
        assert!(
            err <= rec.bound,
            "node ({}, {}): error {err} above certified bound {}",
            rec.n,
            rec.j,
            rec.bound
        );
        max_err = max_err.max(err);
        max_bound = max_bound.max(rec.bound);
    }
    assert!(max_err < 1e-3, "round-trip error {max_err}");
    println!(
        "criterion 04 (unit ball max {max_modulus:.4}, round trip err {max_err:.2e} <= bound {max_bound:.2e}): PASS"
    );
}

#[test]
fn criterion_05_equivariance() {
    let params = worked_params();
    let cons = build(&params, 2);
    let kernel = make_kernel(&params, None).unwrap();
    let norm_c = normalization_c(&kernel, 1e-3);
    let radius = 200i64;
    // reference point (zero fill) and a random point, both stepped once
    for (label, mode, seed) in [("z", FillMode::Zero, 7u64), ("random", FillMode::Random, 8)] {
        let segment = generate_segment(&cons, 2, 1200, seed, mode).unwrap();
        let mut point = SkewPoint::new(segment, 0, params.p);
        let mut rng = stage_rng(seed, Stream::Synthesis);
        for _ in 0..params.p {
            let lhs = synth_f(&point.apply_s(), &kernel, norm_c, radius).unwrap();
            let rhs = synth_f(&point, &kernel, norm_c, radius).unwrap().apply_t();
            let g_lhs = apply_g(&lhs, lhs.phase_i, params.c, ExpSign::Positive);
            let g_prev = apply_g(
                &synth_f(&point, &kernel, norm_c, radius).unwrap(),
                point.i,
                params.c,
                ExpSign::Positive,
            );
            let g_stepped = g_prev.apply_t();
            for _ in 0..200 {
                let x: f64 = rng.gen_range(-50.0..50.0);
                let budget = lhs.truncation_bound(x) + rhs.truncation_bound(x) + 1e-12;
                let diff = (lhs.eval(x) - rhs.eval(x)).norm();
                assert!(
                    diff <= budget,
                    "{label}: F/S vs T/F at x={x}: {diff} > {budget}"
                );
                // sigma(G g) = G(T g): identical expansions up to rounding
                let shift_diff = (g_stepped.eval(x) - g_prev.eval(x + 1.0)).norm();
                assert!(shift_diff <= 1e-10, "{label}: G/T vs sigma/G at x={x}");
                // and the two G-images of the stepped point agree within budgets
                let cross = (g_lhs.eval(x) - g_stepped.eval(x)).norm();
                assert!(
                    cross <= budget / 2.0 + 1e-12,
                    "{label}: G equivariance at x={x}"
                );
            }
            point = point.apply_s();
        }
    }
    println!("criterion 05 (equivariance F.S = T.F and G.T = sigma.G, 1000 points/side): PASS");
}

#[test]
fn criterion_06_distance_increasing() {
    for (name, params) in [("r=1/2", half_params()), ("worked", worked_params())] {
        let cons = build(&params, 2);
        for k in 1..=2 {
            let evidence = lower_certificate(&cons, k, 1000, 77).unwrap();
            assert_eq!(
                evidence.violations, 0,
                "{name} level {k}: min slack {}",
                evidence.min_slack
            );
            assert!(evidence.min_slack >= -1e-12);
        }
    }
    println!("criterion 06 (distance-increasing, 1000 pairs x 2 instances x 2 levels): PASS");
}

#[test]
fn criterion_07_eps_embedding() {
    let cons = build(&half_params(), 2);
    let n2 = cons.word(2).len();
    for &eps in &[0.5, 0.1] {
        let l = l_for_epsilon(eps);
        // mesh justification: agreement on [-L, L] leaves D1 below 2^{-L+1} < eps
        assert!(0.5f64.powi(l as i32 - 1) < eps);
        for &m in &[n2, 2 * n2] {
            let evidence = upper_certificate(&cons, 2, m, eps, 1000, 55).unwrap();
            assert_eq!(
                evidence.violations, 0,
                "eps={eps} m={m}: max rho {}",
                evidence.max_rho
            );
            assert!(evidence.max_rho + evidence.tail < eps);
        }
    }
    // halving epsilon grows the window by exactly one
    assert_eq!(l_for_epsilon(0.25), l_for_epsilon(0.5) + 1);
    println!("criterion 07 (eps-embedding, eps in {{0.5, 0.1}}, m in {{N2, 2N2}}, 1000 pairs each): PASS");
}

#[test]
fn criterion_08_minimality_evidence() {
    for (name, params) in [("r=1/2", half_params()), ("worked", worked_params())] {
        let cons = build(&params, 2);
        let len = 10 * cons.word(2).len();
        let segment = generate_segment(&cons, 2, len, 13, FillMode::Random).unwrap();
        let report = minimality_evidence(&cons, 2, &segment, 1e-9);
        assert!(
            report.pass_gaps,
            "{name}: max gap {:?} vs bound {}",
            report.max_gap, report.gap_bound
        );
        assert!(
            report.pass_census,
            "{name}: census {} of {}",
            report.census_distinct, report.census_expected
        );
    }
    println!("criterion 08 (syndetic gaps <= 2*N_k and filling census bijective): PASS");
}

#[test]
fn criterion_09_spectral_band_checks() {
    let params = worked_params();
    let cons = build(&params, 2);
    let kernel = make_kernel(&params, None).unwrap();
    let norm_c = normalization_c(&kernel, 1e-3);
    let segment = generate_segment(&cons, 2, 1200, 4242, FillMode::Random).unwrap();
    let point = SkewPoint::new(segment, 0, params.p);
    let signal = synth_f(&point, &kernel, norm_c, 200).unwrap();
    // slowest in-band component has period 1/(a+eps0) = 2, so 64 periods = 128
    let radius = 128.0;
    let step = 1.0 / 16.0;

    let f_est = spectrum_estimate(&signal, radius, step, WindowKind::Hann).unwrap();
    let guard = f_est.bin_width();
    let f_ratio = band_energy_ratio(&f_est, params.a + params.eps0, params.b, guard);
    assert!(f_ratio >= 0.99, "synthesis image ratio {f_ratio}");

    let g_image = apply_g(&signal, point.i, params.c, ExpSign::Positive);
    let g_est = spectrum_estimate(&g_image, radius, step, WindowKind::Hann).unwrap();
    let g_ratio = band_energy_ratio(&g_est, params.a, params.b, guard);
    assert!(g_ratio >= 0.99, "modulated image ratio {g_ratio}");
    let line = g_est.dominant_frequency().unwrap();
    assert!(
        (line - params.c).abs() <= 2.0 * guard,
        "dominant line {line} not near c={}",
        params.c
    );

    let real = realify(&signal);
    let real_est = spectrum_estimate(&real, radius, step, WindowKind::Hann).unwrap();
    let c_prime = kernel.band().1;
    let real_ratio = band_energy_ratio(&real_est, -c_prime, c_prime, guard);
    assert!(real_ratio >= 0.99, "realified ratio {real_ratio}");
    let n = real_est.power.len();
    let total = real_est.total_power();
    for i in 0..n {
        let j = n - 1 - i;
        if (real_est.freqs[i] + real_est.freqs[j]).abs() < 1e-9 {
            assert!(
                (real_est.power[i] - real_est.power[j]).abs() <= 1e-9 * total,
                "spectrum asymmetric at {}",
                real_est.freqs[i]
            );
        }
    }
    println!(
        "criterion 09 (band energy: F {f_ratio:.6}, G {g_ratio:.6} line {line:.4}, real {real_ratio:.6}): PASS"
    );
}

#[test]
fn criterion_10_sampling_injectivity() {
    // small-band instance: derived parameters fit the kernel band inside
    // [-0.4, 0.4] so integer sampling (d=1) satisfies 2*a'*d = 0.8 < 1
    let params = derive_params(0.0, 0.4, 0.1, Mode::Relaxed, 64).unwrap();
    assert_eq!((params.p, params.q), (13, 1));
    let kernel = make_kernel(&params, None).unwrap();
    assert!(kernel.band().1 <= 0.4, "band {:?}", kernel.band());
    let norm_c = normalization_c(&kernel, 1e-3);
    let cons = build(&params, 1);

    let mut family = Vec::new();
    for t in 0..12u64 {
        let segment = generate_segment(&cons, 1, 300, 900 + t, FillMode::Random).unwrap();
        let point = SkewPoint::new(segment, 0, params.p);
        family.push(realify(&synth_f(&point, &kernel, norm_c, 40).unwrap()));
    }
    let evidence = sampling_injectivity_check(&family, 0.4, 1.0, 60, 100, 31, 1e-9).unwrap();
    assert_eq!(
        evidence.violations, 0,
        "min separation {}",
        evidence.min_separation
    );
    assert!(evidence.min_separation > 1e-9);

    // hypothesis violation 2*0.6*1 >= 1 must be refused
    let refusal = sampling_injectivity_check(&family, 0.6, 1.0, 60, 4, 31, 1e-9);
    assert!(matches!(refusal, Err(Error::HypothesisViolation { .. })));

    // rescaled integer samples land in [0, 1]
    let samples = integer_sampling(&family[0], -60, 60);
    assert!(samples.rescaled.iter().all(|&v| (0.0..=1.0).contains(&v)));
    for (raw, out) in samples.raw.iter().zip(&samples.rescaled) {
        // affine inverse up to one rounding of the (raw+1) sum
        assert!((raw - (2.0 * out - 1.0)).abs() <= 4.0 * f64::EPSILON);
    }
    println!(
        "criterion 10 (sampling injectivity, 100 pairs separated, min {:.3e}; refusal + rescale ok): PASS",
        evidence.min_separation
    );
}
