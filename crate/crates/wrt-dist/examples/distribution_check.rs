//! Quick end-to-end pass over the main distributional claims at reduced
//! sample counts: prints the KS verdicts the acceptance suite gates on at
//! N = 1e5.

use wrt_dist::rmt::{self, Group, SampleKind, WalkConfig};
use wrt_dist::stats::{ks_test, AnalyticLaw, EmpiricalDistribution};
use wrt_dist::tqft::Level;

fn verdict(name: &str, values: Vec<f64>, law: AnalyticLaw) {
    let emp = EmpiricalDistribution::from_values(values).unwrap();
    let ks = ks_test(&emp, &law, 0.01).unwrap();
    println!(
        "{name:<42} D = {:.5}  critical = {:.5}  {}",
        ks.statistic,
        ks.critical_value,
        if ks.passed { "pass" } else { "FAIL" }
    );
}

fn main() {
    let n = 20_000;
    let seed = 1;

    for dim in [2usize, 5, 14] {
        let set = rmt::haar_sample_set(dim, Group::U, SampleKind::Entry, n, seed).unwrap();
        verdict(
            &format!("Haar entries, d = {dim}"),
            set.moduli(),
            AnalyticLaw::EntryModulus { dim: dim as u64 },
        );
    }

    let config = WalkConfig::new(5, Group::SU, n, seed);
    let set = rmt::run_entry_walk(&config).unwrap();
    verdict(
        "generator walk entries, d = 5, l = 250",
        set.moduli(),
        AnalyticLaw::EntryModulus { dim: 5 },
    );

    let level = Level::new(5).unwrap();
    let genus = 6;
    let dim = level.verlinde_dimension(genus).unwrap() as usize;
    let set = rmt::haar_entry_marginal_set(dim, n, seed).unwrap();
    verdict(
        &format!("scaled entries, r = 5, g = {genus} (d = {dim})"),
        rmt::rescale_to_z(&set, &level, genus).unwrap(),
        AnalyticLaw::Rayleigh,
    );

    let config = WalkConfig {
        walk_length: 200,
        ..WalkConfig::new(20, Group::U, n, seed)
    };
    let set = rmt::run_trace_walk(&config).unwrap();
    let mean_sq: f64 = set.moduli().iter().map(|m| m * m).sum::<f64>() / n as f64;
    verdict(
        "trace walk, d = 20, l = 200",
        set.moduli(),
        AnalyticLaw::Rayleigh,
    );
    println!("trace second moment E|tr|^2 = {mean_sq:.4} (expect 1)");
}
