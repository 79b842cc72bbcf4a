//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.
//!
//! Run with `cargo test -p kuroda --test acceptance --release`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kuroda::blowup::{
    block_formula_check, boundary_census, cond_all_triple, pullback_trace,
    region_inequality_pullback, ChartTriple,
};
use kuroda::config::{validate, Axis, KurodaConfig, ValidConfig};
use kuroda::expr::parse_polynomial;
use kuroda::membership::{
    enumerate_t_generators, in_r_oracle, in_r_star, monoid_member, monoid_member_oracle,
    random_pi_polynomial, vectors_of_degree,
};
use kuroda::regions::{
    escape_point, sample_region, sandwich_check, RegionKind, RegionSpec, BOUND_SLACK,
};
use kuroda::VarSystem;

/// Seeds are fixed so that every run checks the same points.
const MEMBERSHIP_SEED: u64 = 20_04;
const BOUND_SEED: u64 = 8;
const SANDWICH_SEED: u64 = 10;

/// Generator counts at D = 4, 6, 8, frozen from the first verified run of
/// the exhaustive splitting search.
const FROZEN_GENERATOR_COUNTS: [usize; 3] = [17, 17, 17];

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn concrete() -> ValidConfig {
    ValidConfig::concrete_example()
}

fn seven_halves() -> ValidConfig {
    ValidConfig::new(KurodaConfig::symmetric(2, 7, 1)).expect("valid family")
}

fn criterion_1() -> Outcome {
    let c = concrete();
    let m: Vec<usize> = Axis::ALL
        .iter()
        .map(|&a| c.tower().axis(a).block_count())
        .collect();
    let n: Vec<i64> = Axis::ALL
        .iter()
        .map(|&a| c.tower().axis(a).total())
        .collect();
    let census = boundary_census(&c);
    let pass = m == [1, 1, 1] && n == [3, 3, 3] && census.z1_equals_z2;
    outcome(
        pass,
        format!("M={m:?} N={n:?} Z1=Z2: {}", census.z1_equals_z2),
    )
}

fn criterion_2() -> Outcome {
    let report = validate(&KurodaConfig::concrete_example());
    let three_quarters = BigRational::new(3.into(), 4.into());
    let pairs_ok = report.pair_checks.len() == 3
        && report
            .pair_checks
            .iter()
            .all(|p| p.diag_product == 1 && p.cross_product == 9 && p.holds);
    let value = report.eq1_value.clone();
    let pass = value.as_ref() == Some(&three_quarters) && report.valid && pairs_ok;
    let shown = value
        .map(|v| v.to_string())
        .unwrap_or_else(|| "none".into());
    outcome(
        pass,
        format!("value={shown} valid={} pairs 1<9: {pairs_ok}", report.valid),
    )
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for (name, c) in [("concrete", concrete()), ("Q=7/2", seven_halves())] {
        for d in 0..=12 {
            for n in vectors_of_degree(d) {
                checked += 1;
                if monoid_member(&n, c.raw()) != monoid_member_oracle(&n, c.raw()) {
                    exceptions.push((name, n));
                }
            }
        }
    }
    let pass = exceptions.is_empty() && checked == 2 * 1820;
    outcome(
        pass,
        format!(
            "{checked} vectors over 2 configs, {} exceptions",
            exceptions.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let c = concrete();
    let mut rng = ChaCha8Rng::seed_from_u64(MEMBERSHIP_SEED);
    let mut disagreements = 0;
    let mut members = 0;
    for _ in 0..1000 {
        let f = random_pi_polynomial(&mut rng);
        let star = in_r_star(&f, &c).expect("pi polynomial");
        let oracle = in_r_oracle(&f, c.raw()).expect("pi polynomial");
        members += star as usize;
        disagreements += (star != oracle) as usize;
    }
    let fixtures = [
        ("1", true),
        ("P1", false),
        ("P1*P2*P3", false),
        ("(P1-P2)*(P2-P3)*(P3-P1)", true),
    ];
    let mut fixture_failures = Vec::new();
    for (text, expected) in fixtures {
        let f = parse_polynomial(text, VarSystem::Pi3).expect("fixture parses");
        let star = in_r_star(&f, &c).expect("pi polynomial");
        let oracle = in_r_oracle(&f, c.raw()).expect("pi polynomial");
        if star != expected || oracle != expected {
            fixture_failures.push(text);
        }
    }
    let pass = disagreements == 0 && fixture_failures.is_empty();
    outcome(
        pass,
        format!(
            "1000 random ({members} in R), {disagreements} disagreements; fixture failures {fixture_failures:?}"
        ),
    )
}

fn sweep_triples() -> impl Iterator<Item = ChartTriple> {
    (0..=60).flat_map(|r1| {
        (0..=1).flat_map(move |r2| (0..=60).map(move |r3| ChartTriple::new(r1, r2, r3)))
    })
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut disagreements = 0;
    let mut negative_intermediates = 0;
    for c in [concrete(), seven_halves()] {
        for axis in Axis::ALL {
            let tower = c.tower().axis(axis);
            for t in sweep_triples() {
                checked += 1;
                let v = cond_all_triple(t, axis, &c);
                disagreements += !v.agree() as usize;
                if v.cond1 && pullback_trace(t, tower).triples.iter().any(|s| s.r3 < 0) {
                    negative_intermediates += 1;
                }
            }
        }
    }
    let pass = disagreements == 0 && negative_intermediates == 0;
    outcome(
        pass,
        format!("{checked} triples, {disagreements} disagreements, {negative_intermediates} negative r3 under Cond1"),
    )
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut inconsistent = 0;
    for c in [concrete(), seven_halves()] {
        for axis in Axis::ALL {
            let tower = c.tower().axis(axis);
            for t in sweep_triples() {
                checked += 1;
                inconsistent += !block_formula_check(t, tower).consistent as usize;
            }
        }
    }
    outcome(
        inconsistent == 0,
        format!("{checked} triples, {inconsistent} inconsistent"),
    )
}

fn criterion_7() -> Outcome {
    let a = region_inequality_pullback(Axis::One, &concrete()).expect("no collision");
    let b = region_inequality_pullback(Axis::One, &seven_halves()).expect("no collision");
    let pass = a.poles == [0, 1, 2]
        && a.poles_equal_z2
        && a.z2_divisors == [0, 1, 2]
        && b.poles == [0, 1, 2, 3]
        && b.poles_equal_z2
        && b.z2_divisors == [0, 1, 2, 3];
    outcome(
        pass,
        format!(
            "concrete poles {:?} (Z2 {:?}); Q=7/2 poles {:?} (J2 {:?})",
            a.poles, a.z2_divisors, b.poles, b.z2_divisors
        ),
    )
}

fn criterion_8() -> Outcome {
    let c = concrete();
    let generators = enumerate_t_generators(c.raw(), 8);
    let mut worst_ratio: f64 = 0.0;
    let mut violations = 0;
    let mut sample_total = 0;
    for (idx, lambda) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let spec = RegionSpec::new(RegionKind::SPrime, lambda).expect("positive scale");
        let samples =
            sample_region(&spec, 100_000, BOUND_SEED + idx as u64, 50.0, &c).expect("samples");
        sample_total += samples.points.len();
        for g in &generators.generators {
            let n: i64 = g.iter().sum();
            let bound = lambda.powi(n as i32);
            let sup = samples
                .points
                .iter()
                .map(|p| {
                    (0..4)
                        .map(|v| p[v].powi(g[v] as i32))
                        .product::<f64>()
                        .abs()
                })
                .fold(0.0, f64::max);
            worst_ratio = worst_ratio.max(sup / bound);
            if sup > bound + BOUND_SLACK {
                violations += 1;
            }
        }
    }
    let pass = violations == 0 && sample_total == 300_000;
    outcome(
        pass,
        format!(
            "{} generators x 3 scales, {sample_total} samples, {violations} violations, max sup/λⁿ = {worst_ratio:.6}",
            generators.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let c = concrete();
    let mut values = Vec::new();
    let mut outside = Vec::new();
    for k in 16..=10_000u64 {
        let e = escape_point(k, &c).expect("k >= 16");
        values.push((k, e.projected[0].abs()));
        if !e.in_s_prime {
            outside.push(k);
        }
    }
    let drops: Vec<u64> = values
        .windows(2)
        .filter(|w| w[1].1 <= w[0].1)
        .map(|w| w[1].0)
        .collect();
    let last = values.last().expect("nonempty").1;
    let monotone = drops.is_empty();
    let pass = monotone && last > 9e3 && outside.is_empty();
    outcome(
        pass,
        format!(
            "monotone: {monotone} (drops at k={:?}), final |P1| = {last:.2}, a_k outside S' for {} of {} k",
            &drops[..drops.len().min(5)],
            outside.len(),
            values.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let c = concrete();
    let report = sandwich_check(&c, 10_000, SANDWICH_SEED).expect("sandwich sampling");
    let fraction = report.uncertain_fraction();
    let pass = report.violations.is_empty() && fraction < 0.02;
    outcome(
        pass,
        format!(
            "{} + {} points in C, {} violations, {} uncertain ({:.3}%)",
            report.half_s_checked,
            report.tilde_checked,
            report.violations.len(),
            report.uncertain_count,
            100.0 * fraction
        ),
    )
}

fn criterion_11() -> Outcome {
    let c = concrete();
    let counts: Vec<usize> = [4, 6, 8]
        .iter()
        .map(|&d| enumerate_t_generators(c.raw(), d).len())
        .collect();
    let g2 = enumerate_t_generators(c.raw(), 2);
    let fixtures = g2.contains(&[0, 0, 0, 1])
        && g2.contains(&[1, 1, 0, 0])
        && g2.contains(&[1, 0, 1, 0])
        && g2.contains(&[0, 1, 1, 0])
        && !g2.contains(&[0, 0, 0, 2])
        && enumerate_t_generators(c.raw(), 1).generators == [[0, 0, 0, 1]];
    let increasing = counts.windows(2).all(|w| w[1] > w[0]);
    let frozen = counts == FROZEN_GENERATOR_COUNTS;
    let pass = increasing && fixtures && frozen;
    outcome(
        pass,
        format!("counts at D=4,6,8: {counts:?} (frozen {FROZEN_GENERATOR_COUNTS:?}), strictly increasing: {increasing}, fixtures: {fixtures}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "concrete tower M=1, N=3, Z1=Z2",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "validity value 3/4 and 1 < 9 pairs",
            criterion_2,
            Duration::from_secs(1),
        ),
        (
            "monoid oracle equivalence, degree <= 12",
            criterion_3,
            Duration::from_secs(60),
        ),
        (
            "star / oracle membership equivalence",
            criterion_4,
            Duration::from_secs(60),
        ),
        (
            "Cond1 = Cond2 = Cond3 sweep",
            criterion_5,
            Duration::from_secs(60),
        ),
        (
            "block formula consistency",
            criterion_6,
            Duration::from_secs(60),
        ),
        ("(‡) pole sets", criterion_7, Duration::from_secs(1)),
        (
            "monomial bound on λS'",
            criterion_8,
            Duration::from_secs(120),
        ),
        (
            "escape sequence divergence",
            criterion_9,
            Duration::from_secs(10),
        ),
        (
            "sandwich inclusions",
            criterion_10,
            Duration::from_secs(120),
        ),
        ("generator growth", criterion_11, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (idx, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let within = elapsed <= *budget;
        let pass = o.pass && within;
        failed += !pass as usize;
        println!(
            "{} criterion {:>2}: {name}: {} [{:.2}s / {}s budget{}]",
            if pass { "PASS" } else { "FAIL" },
            idx + 1,
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if within { "" } else { ", over budget" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
