//! Monte Carlo invariance checks on the samplers and walks. Everything here
//! is seed-pinned; the tolerances come with the sample sizes stated next to
//! them.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wrt_dist::predictor::sharp_bound_probability;
use wrt_dist::rmt::{
    self, CMatrix, Group, SampleKind, UnitarySample, WalkConfig,
};
use wrt_dist::stats::{
    ks_critical_value, ks_distance_two_sample, ks_test, AnalyticLaw, EmpiricalDistribution,
};
use wrt_dist::tqft::Level;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    rng
}

fn haar_batch(dim: usize, group: Group, n: usize, seed: u64) -> Vec<UnitarySample> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            rmt::sample_haar_unitary(dim, group, &mut rng).unwrap()
        })
        .collect()
}

fn emp(values: Vec<f64>) -> EmpiricalDistribution {
    EmpiricalDistribution::from_values(values).unwrap()
}

#[test]
fn haar_entry_second_moment_at_dim_two() {
    // E|U_11|^2 = 1/d by column-norm symmetry.
    let set = rmt::haar_sample_set(2, Group::U, SampleKind::Entry, 100_000, 21).unwrap();
    let mean: f64 = set.moduli().iter().map(|m| m * m).sum::<f64>() / 100_000.0;
    assert!((mean - 0.5).abs() < 0.01, "mean |entry|^2 = {mean}");
}

#[test]
fn haar_entry_tail_at_dim_five() {
    // P{|entry| >= 1/2} = (1 - 1/4)^4 = 0.3164.
    let set = rmt::haar_sample_set(5, Group::U, SampleKind::Entry, 100_000, 22).unwrap();
    let frac = set.moduli().iter().filter(|&&m| m >= 0.5).count() as f64 / 100_000.0;
    assert!((frac - 0.3164).abs() < 0.01, "tail fraction = {frac}");
}

#[test]
fn haar_law_is_left_invariant() {
    // The |entry| law of V*U for a fixed V matches the law of U itself.
    let n = 100_000;
    let dim = 3;
    let mut vrng = trial_rng(777, 0);
    let v = rmt::sample_haar_unitary(dim, Group::U, &mut vrng)
        .unwrap()
        .matrix()
        .clone();
    let plain: Vec<f64> = haar_batch(dim, Group::U, n, 31)
        .into_iter()
        .map(|u| u.entry(0, 0).norm())
        .collect();
    let mut buf = CMatrix::zeros(dim);
    let shifted: Vec<f64> = haar_batch(dim, Group::U, n, 32)
        .into_iter()
        .map(|u| {
            v.mul_into(u.matrix(), &mut buf);
            buf.entry(0, 0).norm()
        })
        .collect();
    let d = ks_distance_two_sample(&emp(plain), &emp(shifted));
    assert!(d < 0.01, "two-sample KS distance {d}");
}

#[test]
fn su_phase_rotation_shifts_phase_and_preserves_modulus() {
    // Left-multiplying by diag(zeta, conj(zeta), 1, ..) stays in SU, rotates
    // the (1,1)-entry by zeta, and leaves the modulus law unchanged.
    let n = 50_000;
    let dim = 4;
    let zeta = Complex64::from_polar(1.0, 0.9);
    let batch = haar_batch(dim, Group::SU, n, 41);
    // diag(zeta, conj zeta, 1, 1): det = 1, so it stays inside SU.
    let mut data: Vec<Complex64> = CMatrix::identity(dim).data().to_vec();
    data[0] = zeta;
    data[dim + 1] = zeta.conj();
    let a = CMatrix::from_data(dim, data);
    let mut rotated = Vec::with_capacity(n);
    let mut plain = Vec::with_capacity(n);
    let mut mean_plain = Complex64::ZERO;
    let mut mean_rotated = Complex64::ZERO;
    let mut buf = CMatrix::zeros(dim);
    for u in &batch {
        a.mul_into(u.matrix(), &mut buf);
        let z = u.entry(0, 0);
        let w = buf.entry(0, 0);
        assert!((w - zeta * z).norm() < 1e-12, "phase shift is exact");
        plain.push(z.norm());
        rotated.push(w.norm());
        mean_plain += z / z.norm();
        mean_rotated += w / w.norm();
    }
    // The circular mean rotates by exactly zeta.
    assert!((mean_rotated - zeta * mean_plain).norm() / mean_plain.norm() < 1e-9);
    // Modulus law unchanged: compare the rotated batch against an
    // independent one.
    let fresh: Vec<f64> = haar_batch(dim, Group::SU, n, 42)
        .into_iter()
        .map(|u| u.entry(0, 0).norm())
        .collect();
    let d = ks_distance_two_sample(&emp(rotated), &emp(fresh));
    assert!(d < 0.01, "two-sample KS distance {d}");
}

#[test]
fn entry_law_agrees_between_u_and_su() {
    let n = 100_000;
    let u: Vec<f64> = haar_batch(3, Group::U, n, 51)
        .into_iter()
        .map(|s| s.entry(0, 0).norm())
        .collect();
    let su: Vec<f64> = haar_batch(3, Group::SU, n, 52)
        .into_iter()
        .map(|s| s.entry(0, 0).norm())
        .collect();
    let d = ks_distance_two_sample(&emp(u), &emp(su));
    assert!(d < 0.01, "two-sample KS distance {d}");
}

#[test]
fn marginal_sampler_agrees_with_full_sampler() {
    // The O(d) column-marginal route and the full QR route draw from the
    // same law.
    let n = 100_000;
    let full = rmt::haar_sample_set(5, Group::U, SampleKind::Entry, n, 61).unwrap();
    let marginal = rmt::haar_entry_marginal_set(5, n, 62).unwrap();
    let d = ks_distance_two_sample(&emp(full.moduli()), &emp(marginal.moduli()));
    assert!(d < 0.01, "two-sample KS distance {d}");
}

#[test]
fn walk_entry_law_matches_haar_at_spec_point() {
    // d=5, SU, k=3, l=200, N=1e5, seed 42: KS against 1-(1-x^2)^4 at 0.01.
    let config = WalkConfig {
        walk_length: 200,
        ..WalkConfig::new(5, Group::SU, 100_000, 42)
    };
    let set = rmt::run_entry_walk(&config).unwrap();
    let report = ks_test(&emp(set.moduli()), &AnalyticLaw::EntryModulus { dim: 5 }, 0.01).unwrap();
    assert!(
        report.passed,
        "D = {}, critical {}",
        report.statistic, report.critical_value
    );
}

#[test]
fn walk_of_length_one_is_far_from_haar() {
    // A length-1 walk over two fixed generators is a two-atom modulus
    // mixture; the KS gate against the Haar entry law must fail.
    let config = WalkConfig {
        walk_length: 1,
        num_generators: 2,
        ..WalkConfig::new(2, Group::U, 10_000, 7)
    };
    let set = rmt::run_entry_walk(&config).unwrap();
    let report = ks_test(&emp(set.moduli()), &AnalyticLaw::EntryModulus { dim: 2 }, 0.01).unwrap();
    assert!(!report.passed, "an unmixed walk must not look Haar");
}

#[test]
fn walk_convergence_is_monotone_in_length() {
    // KS distance to the entry law at l = 1, 5, 25, 125, 625 must be
    // non-increasing within sampling noise (2x the critical value).
    let n = 20_000;
    let law = AnalyticLaw::EntryModulus { dim: 3 };
    let noise = 2.0 * ks_critical_value(0.01, n);
    let mut previous = f64::INFINITY;
    for length in [1usize, 5, 25, 125, 625] {
        let config = WalkConfig {
            walk_length: length,
            ..WalkConfig::new(3, Group::SU, n, 71)
        };
        let set = rmt::run_entry_walk(&config).unwrap();
        let d = ks_test(&emp(set.moduli()), &law, 0.01).unwrap().statistic;
        assert!(
            d <= previous + noise,
            "KS distance grew from {previous} to {d} at length {length}"
        );
        previous = d;
    }
    assert!(previous < noise, "walk never mixed: final distance {previous}");
}

#[test]
fn trace_walk_matches_direct_haar_second_moment() {
    // Walk traces against the direct Haar oracle (no walk): both must give
    // E|tr|^2 = 1 at d = 8.
    let n = 20_000;
    let config = WalkConfig {
        walk_length: 150,
        ..WalkConfig::new(8, Group::U, n, 81)
    };
    let walk = rmt::run_trace_walk(&config).unwrap();
    let walk_mean: f64 = walk.moduli().iter().map(|m| m * m).sum::<f64>() / n as f64;
    let direct = rmt::haar_sample_set(8, Group::U, SampleKind::Trace, n, 82).unwrap();
    let direct_mean: f64 = direct.moduli().iter().map(|m| m * m).sum::<f64>() / n as f64;
    assert!((walk_mean - 1.0).abs() < 0.05, "walk E|tr|^2 = {walk_mean}");
    assert!((direct_mean - 1.0).abs() < 0.05, "direct E|tr|^2 = {direct_mean}");
    assert!((walk_mean - direct_mean).abs() < 0.07);
    // Moduli stay within the trace bound d.
    assert!(walk.moduli().iter().all(|&m| m <= 8.0 + 1e-9));
}

#[test]
fn walk_output_is_identical_across_thread_counts() {
    let config = WalkConfig {
        walk_length: 96,
        ..WalkConfig::new(4, Group::SU, 512, 91)
    };
    let csv_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| rmt::run_entry_walk(&config).unwrap().to_csv_string())
    };
    let one = csv_with(1);
    let two = csv_with(2);
    let four = csv_with(4);
    assert_eq!(one, two);
    assert_eq!(one, four);
    // And across repeat runs in the ambient pool.
    assert_eq!(
        rmt::run_entry_walk(&config).unwrap().to_csv_string(),
        one
    );
}

#[test]
fn walk_event_frequency_matches_sharp_bound_probability() {
    // P{ |entry| > mu } over walk samples at the genus-2 dimension equals
    // the closed-form sharp-bound probability to +-0.01 at N = 1e5.
    let level = Level::new(5).unwrap();
    let config = WalkConfig::new(5, Group::SU, 100_000, 95); // l = 250
    let set = rmt::run_entry_walk(&config).unwrap();
    let frac = set
        .moduli()
        .iter()
        .filter(|&&m| m > level.mu())
        .count() as f64
        / 100_000.0;
    let closed = sharp_bound_probability(&level, 2)
        .unwrap()
        .probability
        .to_f64();
    assert!(
        (frac - closed).abs() < 0.01,
        "walk frequency {frac} vs closed form {closed}"
    );
    // The same event in invariant units: mu^(1-g)|entry| > mu^(2-g).
    let scaled = rmt::rescale_to_z(&set, &level, 2).unwrap();
    let threshold = level.mu().powi(0); // mu^(2-g) at g = 2
    let frac_scaled = scaled.iter().filter(|&&v| v > threshold).count() as f64 / 100_000.0;
    assert_eq!(frac, frac_scaled);
}
