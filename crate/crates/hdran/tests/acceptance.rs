//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Every tolerance is pinned here, in code.
//!
//! Two checks encode externally pinned reference values that the
//! implementation demonstrates to be internally inconsistent; they are
//! kept as stated and fail with a full explanation rather than being
//! loosened (see `criterion_05_gini` and `criterion_08_diameter_constants`).

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use hdran::experiments::wiener::wiener_study;
use hdran::experiments::{concentration_probe, run_replicates, Measurement, Measurements};
use hdran::generator::{
    expected_active_cliques, expected_edge_count, expected_vertex_count, Network,
};
use hdran::io::load_network;
use hdran::metrics::{distance_metrics, DistanceMode};
use hdran::rng::Xoshiro256StarStar;
use hdran::theory::clustering::clustering_limit;
use hdran::theory::depth::{
    expected_total_depth, expected_total_depth_exact, total_depth_second_moment_exact,
    total_depth_std,
};
use hdran::theory::diameter::{diameter_constants, eta_residual, rate_residual};
use hdran::theory::fractions::{limit_fraction, partial_sum_fractions, rational_to_f64};
use hdran::theory::lorenz::{theoretical_gini, theoretical_lorenz, trapezoid_area};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_deterministic_invariants() {
    let started = Instant::now();
    let mut rng = Xoshiro256StarStar::seed_from_u64(0xACCE_0001);
    for case in 0..200u64 {
        let k = 3 + rng.next_bounded(8) as u32; // 3..=10
        let n = rng.next_bounded(1001);
        let seed = rng.next_u64();
        let net = Network::generate(k, n, seed).unwrap();
        assert_eq!(net.vertex_count(), expected_vertex_count(k, n), "case {case}");
        assert_eq!(net.edge_count(), expected_edge_count(k, n), "case {case}");
        assert_eq!(
            net.active_clique_count(),
            expected_active_cliques(k, n),
            "case {case}"
        );
        assert_eq!(net.clique_census().active_count, net.active_clique_count());
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    report(
        "1 deterministic invariants",
        true,
        &format!("200 random (k, n, seed) cases in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_limit_fractions() {
    // closed-form partial sums equal term-by-term rational sums exactly
    for k in 3..=8u32 {
        let mut acc = common::rat(0, 1);
        for n in 0..=50u64 {
            acc += limit_fraction(k as u64 + n, k).unwrap();
            assert_eq!(partial_sum_fractions(n, k), acc, "k={k} n={n}");
        }
    }
    assert_eq!(limit_fraction(3, 3).unwrap(), common::rat(2, 5));
    // b(j, 3) * j^3 -> Gamma(5)/Gamma(2) = 24 at j = 1000, within 2%
    let j = 1000u64;
    let scaled = rational_to_f64(&limit_fraction(j, 3).unwrap()) * (j as f64).powi(3);
    assert!((scaled - 24.0).abs() / 24.0 <= 0.02, "scaled = {scaled}");
    report(
        "2 limit fractions",
        true,
        &format!("partial sums exact for k<=8, n<=50; b(1000,3)*j^3 = {scaled:.3}"),
    );
}

#[test]
fn criterion_03_small_instance_oracles() {
    let started = Instant::now();
    // exact pmf agreement is covered per (k, n, j) in oracle_small.rs;
    // here the depth moments and histogram replay are pinned end to end.
    for (k, n_max) in [(3u32, 4u64), (4, 3)] {
        for n in 1..=n_max {
            let (mean, second) = common::enumerated_depth_moments(k as usize, n);
            assert_eq!(expected_total_depth_exact(n, k), mean, "k={k} n={n}");
            assert_eq!(total_depth_second_moment_exact(n, k), second, "k={k} n={n}");
            for j in 1..=n {
                let theory: Vec<(u64, common::Rat)> =
                    hdran::theory::label_degree::label_degree_pmf(n, j, k)
                        .unwrap()
                        .into_iter()
                        .map(|(d, p)| (k as u64 + d, p))
                        .collect();
                let enumerated = common::enumerated_label_pmf(k as usize, n, j);
                for (degree, p) in theory {
                    let e = enumerated
                        .get(&degree)
                        .cloned()
                        .unwrap_or_else(|| common::rat(0, 1));
                    assert_eq!(p, e, "pmf k={k} n={n} j={j} degree={degree}");
                }
            }
            // histograms: replay every history through the generator
            common::enumerate_histories(k as usize, n, &mut |h| {
                let mut net = Network::initial(k).unwrap();
                for &pos in &h.positions {
                    net.subdivide_at(pos);
                }
                let hist = hdran::metrics::degree_histogram(&net);
                assert_eq!(hist.counts_all, h.net.histogram_all());
                assert_eq!(net.clique_census().total_depth, h.net.total_depth());
            });
        }
    }
    // the pinned spot values
    assert_eq!(expected_total_depth_exact(3, 3), common::rat(71, 5));
    assert_eq!(total_depth_second_moment_exact(3, 3), common::rat(1013, 5));
    assert!((expected_total_depth(3, 3) - 14.2).abs() < 1e-12);
    assert!(
        (hdran::theory::depth::total_depth_second_moment(3, 3) - 202.6).abs() < 1e-10
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    report(
        "3 small-instance oracles",
        true,
        &format!("enumeration matches pmf, depth moments and histograms exactly in {elapsed:?}"),
    );
}

#[test]
fn criterion_04_clustering() {
    // Table of closed forms: value = A pi^2 - B. The two terms cancel to
    // ~1e-8 of their own size by k = 10, so the reference is evaluated in
    // rationals against a 40-digit pi^2 instead of in f64.
    let pi2_digits = "98696044010893586188344909998761511353137";
    let pi2 = common::Rat::new(
        pi2_digits.parse::<num::BigInt>().unwrap(),
        num::BigInt::from(10u8).pow(40),
    );
    let table: [(u32, i64, i64, i64, i64); 8] = [
        (3, 12, 1, 353, 3),
        (4, 120, 1, 2367, 2),
        (5, 2800, 3, 138_161, 15),
        (6, 6300, 1, 746_131, 12),
        (7, 38_808, 1, 134_056_533, 350),
        (8, 224_224, 1, 663_900_367, 300),
        (9, 1_235_520, 1, 26_887_974_331, 2205),
        (10, 6_563_700, 1, 253_941_996_039, 3920),
    ];
    for (k, a_num, a_den, b_num, b_den) in table {
        let want_rat = common::rat(a_num, a_den) * &pi2 - common::rat(b_num, b_den);
        let want = rational_to_f64(&want_rat);
        let got = clustering_limit(k).unwrap();
        assert!(
            (got - want).abs() <= 1e-9,
            "k={k}: {got} vs closed form {want}"
        );
    }
    assert!((clustering_limit(3).unwrap() - 0.768_586).abs() < 1e-6);

    // Monte Carlo at k=3, n=1e4, 50 replicates within +-0.005 of the
    // published 0.7683..0.7686 range
    let measurements: Measurements = BTreeSet::from([Measurement::Clustering]);
    let summaries = run_replicates(3, 10_000, 50, 0xC1_05, &measurements).unwrap();
    let mean: f64 = summaries
        .iter()
        .map(|s| s.clustering_avg.unwrap())
        .sum::<f64>()
        / summaries.len() as f64;
    assert!(
        (0.7683 - 0.005..=0.7686 + 0.005).contains(&mean),
        "MC clustering mean = {mean}"
    );
    report(
        "4 clustering",
        true,
        &format!("table closed forms to 1e-9; MC mean {mean:.5}"),
    );
}

/// The first clause pins the published simulation values 0.9970 (k=3) and
/// 0.9990 (k=10) at n=50000. The class-based curve (the construction the
/// closed form describes, and the only one near those numbers) reproduces
/// the k=10 value, but at k=3 it gives 0.99986, tying out with the closed
/// form (0.999860) rather than with 0.9970330; the vertex-level curve
/// gives 0.377. No construction reproduces the k=3 number at the stated
/// scale, so that clause fails and is kept failing deliberately.
#[test]
fn criterion_05_gini() {
    // closed form equals direct trapezoid integration to 1e-9
    for (n, k) in [(10u64, 3u32), (1000, 3), (50_000, 3), (50_000, 10)] {
        let closed = theoretical_gini(n, k);
        let trap = 1.0 - 2.0 * trapezoid_area(&theoretical_lorenz(n, k));
        assert!(
            (closed - trap).abs() <= 1e-9,
            "closed form vs trapezoid at n={n}, k={k}: {closed} vs {trap}"
        );
    }

    let measurements: Measurements = BTreeSet::from([Measurement::Gini]);
    let mut results = Vec::new();
    for k in [3u32, 10] {
        let summaries = run_replicates(k, 50_000, 10, 0x61_17, &measurements).unwrap();
        let class_mean: f64 =
            summaries.iter().map(|s| s.gini_class.unwrap()).sum::<f64>() / summaries.len() as f64;
        let vertex_mean: f64 =
            summaries.iter().map(|s| s.gini.unwrap()).sum::<f64>() / summaries.len() as f64;
        results.push((k, class_mean, vertex_mean));
    }
    let (_, class3, vertex3) = results[0];
    let (_, class10, vertex10) = results[1];
    let theory3 = theoretical_gini(50_000, 3);
    let theory10 = theoretical_gini(50_000, 10);

    // the k=10 published value is reproduced by the class construction
    assert!(
        (class10 - 0.9990).abs() <= 0.001,
        "k=10 class Gini = {class10}"
    );
    // the construction-vs-theory gap is reported, not hidden
    report(
        "5 gini",
        (class3 - 0.9970).abs() <= 0.001,
        &format!(
            "k=3: class {class3:.7} / vertex {vertex3:.4} / closed form {theory3:.7} / pinned 0.9970; \
             k=10: class {class10:.7} / vertex {vertex10:.4} / closed form {theory10:.7} / pinned 0.9990"
        ),
    );
    assert!(
        (class3 - 0.9970).abs() <= 0.001,
        "k=3 Gini at n=50000: class construction gives {class3:.7} (matching the closed form \
         {theory3:.7} to {:.1e}), vertex construction gives {vertex3:.4}; neither is within \
         0.001 of the pinned simulation value 0.9970, which is not reproducible at this scale",
        (class3 - theory3).abs()
    );
}

#[test]
fn criterion_06_degree_concentration() {
    let k = 3u32;
    let n = 1000u64;
    let scale = (8.0 * k as f64 * n as f64).sqrt();
    let grid: Vec<f64> = (1..=20).map(|i| i as f64 * scale / 20.0).collect();
    let rows = concentration_probe(k, n, 10_000, 0xC0_06, 3, &grid).unwrap();
    for r in &rows {
        assert!(
            !r.violation,
            "bound violated at lambda={}: tail={} bound={} se={}",
            r.lambda, r.empirical_tail, r.bound, r.binomial_se
        );
    }
    report(
        "6 degree concentration",
        true,
        "no violation beyond 3 binomial SEs on the 20-point grid",
    );
}

#[test]
fn criterion_07_depth() {
    let k = 3u32;
    let n = 1000u64;
    let reps = 1000u32;
    let measurements: Measurements = BTreeSet::from([Measurement::Depth]);
    let summaries = run_replicates(k, n, reps, 0xDE_07, &measurements).unwrap();
    let mean: f64 = summaries
        .iter()
        .map(|s| s.total_depth.unwrap() as f64)
        .sum::<f64>()
        / reps as f64;
    let expected = expected_total_depth(n, k);
    let se = total_depth_std(n, k) / (reps as f64).sqrt();
    assert!(
        (mean - expected).abs() <= 3.0 * se,
        "MC mean {mean} vs {expected} (3 SE = {})",
        3.0 * se
    );

    // leading order k n log n, stable within 20% across n in {1e3, 1e4}
    let summaries_large = run_replicates(k, 10_000, 200, 0xDE_08, &measurements).unwrap();
    let mean_large: f64 = summaries_large
        .iter()
        .map(|s| s.total_depth.unwrap() as f64)
        .sum::<f64>()
        / 200.0;
    let ratio_small = mean / (k as f64 * n as f64 * (n as f64).ln());
    let ratio_large = mean_large / (k as f64 * 10_000.0 * 10_000f64.ln());
    assert!(
        (ratio_small / ratio_large - 1.0).abs() <= 0.2,
        "ratios {ratio_small} vs {ratio_large}"
    );
    report(
        "7 depth",
        true,
        &format!(
            "MC mean {mean:.1} vs expectation {expected:.1} (3 SE {:.1}); \
             leading-order ratios {ratio_small:.4} / {ratio_large:.4}",
            3.0 * se
        ),
    );
}

/// The pinned large-k expectation `c(200) * 200 * log 2` within 10% of 1
/// belongs to the one-sided depth constant c/2: the diameter constant that
/// satisfies c(3) = 1.668 has c * k * log 2 -> 2. Both clauses are pinned
/// by the same source; they cannot both hold for a single c, so the
/// large-k clause fails and is kept failing deliberately.
#[test]
fn criterion_08_diameter_constants() {
    let d3 = diameter_constants(3).unwrap();
    assert!((d3.c - 1.668).abs() <= 0.002, "c(3) = {}", d3.c);
    for k in [3u32, 10, 200] {
        let d = diameter_constants(k).unwrap();
        assert!(eta_residual(d.eta_star, k).abs() <= 1e-10);
        assert!((rate_residual(d.a, k).exp() - 1.0).abs() <= 1e-10);
    }
    let d200 = diameter_constants(200).unwrap();
    let scaled = d200.c * 200.0 * std::f64::consts::LN_2;
    let large_k_clause = (scaled - 1.0).abs() <= 0.1;
    report(
        "8 diameter constants",
        large_k_clause,
        &format!(
            "c(3) = {:.6}; residuals <= 1e-10; c(200)*200*log2 = {scaled:.4} \
             (pinned target 1 +- 10%, consistent only with the half constant)",
            d3.c
        ),
    );
    assert!(
        large_k_clause,
        "c(200)*200*log2 = {scaled:.4}: the diameter constant scales to 2/(k log 2) \
         (the pinned limit 1/(k log 2) describes the one-sided depth constant c/2, \
         which would contradict the pinned c(3) = 1.668)"
    );
}

#[test]
fn criterion_09_wiener_study() {
    // default scale
    let study = wiener_study(3, 500, 200, 0).unwrap();
    assert!(study.skewness > 0.0, "skewness = {}", study.skewness);
    assert!(
        study.normality.p_value < 0.01,
        "default scale p = {}",
        study.normality.p_value
    );
    let p_default = study.normality.p_value;

    // full scale
    let long = wiener_study(3, 2000, 500, 0).unwrap();
    assert!(long.skewness > 0.0);
    assert!(
        long.normality.p_value < 0.01,
        "long scale p = {}",
        long.normality.p_value
    );
    // the dominant-term trend ratio keeps drifting down with n
    let (r_small, r_long) = (study.trend_ratio.unwrap(), long.trend_ratio.unwrap());
    assert!(r_small > r_long && r_long > 0.25 && r_small < 0.75);

    // serialized fixture reproduces the diameter-2 example exactly
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/fig3_k5_n2.json");
    let net = load_network(&fixture).unwrap();
    let census = net.clique_census();
    assert_eq!(census.total_depth, 14);
    let r = distance_metrics(&net, DistanceMode::Exact).unwrap();
    assert_eq!(r.diameter, 2);
    assert_eq!(r.wiener, 22);

    report(
        "9 wiener study",
        true,
        &format!(
            "skew {:.3} / {:.3}, p {p_default:.2e} / {:.2e}, fixture diameter 2",
            study.skewness, long.skewness, long.normality.p_value
        ),
    );
}

#[test]
fn criterion_10_power_law() {
    let measurements: Measurements = BTreeSet::from([Measurement::Degrees]);
    let summaries = run_replicates(3, 10_000, 50, 0xF0_10, &measurements).unwrap();
    // average newcomer fractions, then fit log-log over j in [10, 40]
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in 10u64..=40 {
        let mean: f64 = summaries
            .iter()
            .map(|s| s.degree_fractions.get(&j).copied().unwrap_or(0.0))
            .sum::<f64>()
            / summaries.len() as f64;
        assert!(mean > 0.0, "no vertices of degree {j} observed");
        xs.push((j as f64).ln());
        ys.push(mean.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    assert!(
        (slope - (-3.0)).abs() <= 0.3,
        "log-log slope = {slope}"
    );
    report("10 power law", true, &format!("slope {slope:.3}"));
}
