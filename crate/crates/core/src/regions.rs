//! Floating-point layer over the semialgebraic sets
//!
//! * `S′ ⊂ ℝ⁴`: `|y_i^{δ_{j,i}} y_j^{δ_{i,i}}| < 1` for `i ≠ j ≤ 3`, `|y₄| < 1`;
//! * `S″ ⊂ ℝ³`: the same without `y₄`, a six-armed star;
//! * `S = S″ + J`, `J` the open diagonal segment of half-length 1;
//! * `S̃ ⊂ ℝ³`: the basic open set cut out by `(A1)–(B3)`;
//!
//! and their scalings `λX = {p : p/λ ∈ X}`. Everything here is evidence in
//! double precision: predicates, seeded samplers, probes along the escape
//! sequence `a_k`, and point clouds for plotting. None of it certifies
//! boundedness.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial, VarSystem};
use crate::config::{Axis, ValidConfig};
use crate::membership::monoid_member;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("no sample of {kind:?} accepted after {attempts} attempts")]
    SamplingFailure { kind: RegionKind, attempts: usize },
    #[error("escape sequence needs k >= 16, got {0}")]
    EscapeDomain(u64),
    #[error("scale must be positive, got {0}")]
    Scale(f64),
    #[error("{kind:?} lives in dimension {expected}, polynomial has {found} variables")]
    Dimension {
        kind: RegionKind,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionKind {
    SPrime,
    SDoublePrime,
    S,
    STilde,
}

impl RegionKind {
    pub fn dimension(self) -> usize {
        match self {
            RegionKind::SPrime => 4,
            _ => 3,
        }
    }
}

/// Default tolerance band for the tri-state test of `S`.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Slack allowed over `λⁿ` when checking sampled monomial bounds.
pub const BOUND_SLACK: f64 = 1e-9;
/// Grid resolution of the shift scan in [`in_s`].
pub const SHIFT_GRID: usize = 1024;
/// Half-width of the ray tubes, in units of `λ`.
pub const TUBE_RADIUS: f64 = 0.5;
/// Decades spanned by the log-uniform transverse coordinates of a tube.
pub const TUBE_DECADES: f64 = 12.0;
/// Default divergence threshold for escape probes.
pub const DIVERGENCE_THRESHOLD: f64 = 1e3;

/// Right-hand sides of `(A1), (B1), (A2), (B2), (A3), (B3)`.
pub const DEFAULT_TILDE_RHS: [f64; 6] = [1.0, 4.0, 1.0, 4.0, 1.0, 4.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub lambda: f64,
    /// Replacement right-hand sides for `(A1)–(B3)` (order A1, B1, A2, B2,
    /// A3, B3). Only used by `S̃`.
    pub rhs_overrides: Option<[f64; 6]>,
}

impl RegionSpec {
    pub fn new(kind: RegionKind, lambda: f64) -> Result<Self, RegionError> {
        if lambda.is_nan() || lambda <= 0.0 || !lambda.is_finite() {
            return Err(RegionError::Scale(lambda));
        }
        Ok(RegionSpec {
            kind,
            lambda,
            rhs_overrides: None,
        })
    }

    pub fn with_overrides(mut self, rhs: [f64; 6]) -> Self {
        self.rhs_overrides = Some(rhs);
        self
    }

    fn tilde_rhs(&self) -> [f64; 6] {
        self.rhs_overrides.unwrap_or(DEFAULT_TILDE_RHS)
    }

    /// The ring of bounded polynomials stays `R` only while every
    /// `(A)`-type right-hand side is positive.
    pub fn same_ring_claim_holds(&self) -> bool {
        let rhs = self.tilde_rhs();
        [0, 2, 4].iter().all(|&i| rhs[i] > 0.0)
    }

    /// Membership test; `UNCERTAIN` only arises for `S`.
    pub fn contains(&self, p: &[f64], config: &ValidConfig) -> Membership {
        match self.kind {
            RegionKind::SPrime => in_s_prime(&to4(p), self.lambda, config).into(),
            RegionKind::SDoublePrime => in_s_double_prime(&to3(p), self.lambda, config).into(),
            RegionKind::STilde => {
                in_s_tilde(&to3(p), self.lambda, self.rhs_overrides.as_ref(), config).into()
            }
            RegionKind::S => in_s(&to3(p), self.lambda, DEFAULT_TOLERANCE, config).verdict,
        }
    }
}

fn to3(p: &[f64]) -> [f64; 3] {
    [p[0], p[1], p[2]]
}

fn to4(p: &[f64]) -> [f64; 4] {
    [p[0], p[1], p[2], p[3]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    In,
    Out,
    Uncertain,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Membership::In
        } else {
            Membership::Out
        }
    }
}

/// `1 − max |q_i^{δ_{j,i}} q_j^{δ_{i,i}}|` over ordered pairs `i ≠ j`, at
/// `q = p/λ`. Positive exactly on `λS″`.
pub fn star_margin(p: &[f64; 3], lambda: f64, config: &ValidConfig) -> f64 {
    let q = p.map(|x| x / lambda);
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let v = (q[i].powi(config.delta(j, i) as i32)
                    * q[j].powi(config.delta(i, i) as i32))
                .abs();
                worst = worst.max(v);
            }
        }
    }
    1.0 - worst
}

pub fn in_s_double_prime(p: &[f64; 3], lambda: f64, config: &ValidConfig) -> bool {
    star_margin(p, lambda, config) > 0.0
}

pub fn in_s_prime(p: &[f64; 4], lambda: f64, config: &ValidConfig) -> bool {
    (p[3] / lambda).abs() < 1.0 && in_s_double_prime(&[p[0], p[1], p[2]], lambda, config)
}

/// Left sides of `(A1), (B1), (A2), (B2), (A3), (B3)` at `p/λ`.
pub fn tilde_lhs(p: &[f64; 3], lambda: f64, config: &ValidConfig) -> [f64; 6] {
    let q = p.map(|x| x / lambda);
    let mut out = [0.0; 6];
    for axis in Axis::ALL {
        let i = axis.index();
        let (j, k) = axis.others();
        let (qj, qk) = (q[j.index()], q[k.index()]);
        let d = config.d(axis) as i32;
        let diag = config.diag(axis) as i32;
        out[2 * i] = (q[i].powi(2 * d) - 1.0) * (qj - qk).powi(2 * diag);
        out[2 * i + 1] = (q[i] * q[i] - 1.0) * ((qj + qk).powi(2) - 4.0);
    }
    out
}

pub fn in_s_tilde(
    p: &[f64; 3],
    lambda: f64,
    overrides: Option<&[f64; 6]>,
    config: &ValidConfig,
) -> bool {
    let rhs = overrides.copied().unwrap_or(DEFAULT_TILDE_RHS);
    tilde_lhs(p, lambda, config)
        .iter()
        .zip(rhs)
        .all(|(&l, r)| l < r)
}

/// Smallest normalized slack `(rhs − lhs)/(|rhs| + |lhs|)` over `(A1)–(B3)`.
pub fn tilde_margin(
    p: &[f64; 3],
    lambda: f64,
    overrides: Option<&[f64; 6]>,
    config: &ValidConfig,
) -> f64 {
    let rhs = overrides.copied().unwrap_or(DEFAULT_TILDE_RHS);
    tilde_lhs(p, lambda, config)
        .iter()
        .zip(rhs)
        .map(|(&l, r)| relative_slack(l, r))
        .fold(f64::INFINITY, f64::min)
}

fn relative_slack(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs() + rhs.abs();
    if scale == 0.0 {
        0.0
    } else {
        (rhs - lhs) / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SVerdict {
    pub verdict: Membership,
    /// Best shift `a` found and its margin.
    pub shift: f64,
    pub margin: f64,
}

fn shift_margin(p: &[f64; 3], a: f64, lambda: f64, config: &ValidConfig) -> f64 {
    let inside_segment = 1.0 - a.abs() / lambda;
    let b = [p[0] - a, p[1] - a, p[2] - a];
    inside_segment.min(star_margin(&b, lambda, config))
}

/// Semi-decide `∃ a ∈ (−λ, λ): p − (a, a, a) ∈ λS″`.
///
/// Scans a grid of [`SHIFT_GRID`] shifts plus the shifts that zero out one
/// coordinate, then refines the best candidates twice on finer local grids.
/// A best margin within `tolerance` of zero yields `UNCERTAIN`.
pub fn in_s(p: &[f64; 3], lambda: f64, tolerance: f64, config: &ValidConfig) -> SVerdict {
    let step = 2.0 * lambda / SHIFT_GRID as f64;
    let mut scored: Vec<(f64, f64)> = (0..SHIFT_GRID)
        .map(|t| -lambda + (t as f64 + 0.5) * step)
        .chain(p.iter().copied().filter(|x| x.abs() < lambda))
        .map(|a| (shift_margin(p, a, lambda, config), a))
        .collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    scored.truncate(8);

    let (mut best_margin, mut best_shift) = scored[0];
    for &(m0, a0) in &scored {
        let (mut centre, mut centre_margin, mut half) = (a0, m0, step);
        for _ in 0..2 {
            for s in 0..=64 {
                let a = centre - half + 2.0 * half * s as f64 / 64.0;
                if a.abs() >= lambda {
                    continue;
                }
                let m = shift_margin(p, a, lambda, config);
                if m > centre_margin {
                    centre_margin = m;
                    centre = a;
                }
            }
            half /= 32.0;
        }
        if centre_margin > best_margin {
            best_margin = centre_margin;
            best_shift = centre;
        }
    }
    let verdict = if best_margin > tolerance {
        Membership::In
    } else if best_margin < -tolerance {
        Membership::Out
    } else {
        Membership::Uncertain
    };
    SVerdict {
        verdict,
        shift: best_shift,
        margin: best_margin,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EscapePoint {
    pub k: u64,
    pub axis: Axis,
    pub point: [f64; 4],
    /// `(y₁ − y₄, y₂ − y₄, y₃ − y₄)`
    pub projected: [f64; 3],
    pub in_s_prime: bool,
}

/// `a_k = (k^{δ_{1,1}}, 1/(k^{δ_{2,1}} log k), 1/(k^{δ_{3,1}} log log k), 1/log log log k)`
/// and its diagonal projection.
pub fn escape_point(k: u64, config: &ValidConfig) -> Result<EscapePoint, RegionError> {
    escape_point_along(k, Axis::One, config)
}

/// The escape sequence with `axis` as the dominating coordinate; the other
/// two take the `log` and `log log` damping in increasing index order.
pub fn escape_point_along(
    k: u64,
    axis: Axis,
    config: &ValidConfig,
) -> Result<EscapePoint, RegionError> {
    if k < 16 {
        return Err(RegionError::EscapeDomain(k));
    }
    let kf = k as f64;
    let l1 = kf.ln();
    let l2 = l1.ln();
    let l3 = l2.ln();
    let i = axis.index();
    let (j, m) = axis.others();
    let mut point = [0.0; 4];
    point[i] = kf.powi(config.delta(i, i) as i32);
    point[j.index()] = 1.0 / (kf.powi(config.delta(j.index(), i) as i32) * l1);
    point[m.index()] = 1.0 / (kf.powi(config.delta(m.index(), i) as i32) * l2);
    point[3] = 1.0 / l3;
    let projected = [
        point[0] - point[3],
        point[1] - point[3],
        point[2] - point[3],
    ];
    Ok(EscapePoint {
        k,
        axis,
        point,
        projected,
        in_s_prime: in_s_prime(&point, 1.0, config),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    Box,
    Core,
    Tube,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    pub spec: RegionSpec,
    pub seed: u64,
    pub radius: f64,
    pub points: Vec<Vec<f64>>,
    pub strata: Vec<Stratum>,
    pub attempts: usize,
    pub uncertain: usize,
}

impl SampleSet {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.points.len() as f64 / self.attempts as f64
        }
    }
}

fn tube_coordinate<R: Rng>(rng: &mut R, lambda: f64) -> f64 {
    let magnitude = TUBE_RADIUS * lambda * 10f64.powf(-TUBE_DECADES * rng.gen::<f64>());
    if rng.gen() {
        magnitude
    } else {
        -magnitude
    }
}

fn draw_candidate<R: Rng>(
    rng: &mut R,
    stratum: Stratum,
    spec: &RegionSpec,
    radius: f64,
) -> Vec<f64> {
    let dim = spec.kind.dimension();
    let lambda = spec.lambda;
    let mut p: Vec<f64> = match stratum {
        Stratum::Box => (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect(),
        Stratum::Core => (0..dim)
            .map(|_| rng.gen_range(-2.0 * lambda..=2.0 * lambda))
            .collect(),
        Stratum::Tube => {
            let axis = rng.gen_range(0..3);
            let mut p: Vec<f64> = (0..dim).map(|_| tube_coordinate(rng, lambda)).collect();
            p[axis] = rng.gen_range(-radius..=radius);
            if matches!(spec.kind, RegionKind::S | RegionKind::STilde) {
                let a = rng.gen_range(-lambda..lambda);
                p.iter_mut().for_each(|x| *x += a);
            }
            p
        }
    };
    if spec.kind == RegionKind::SPrime && stratum != Stratum::Box {
        p[3] = rng.gen_range(-lambda..lambda);
    }
    p
}

/// Seeded stratified rejection sampler. Candidates cycle through a box of
/// half-width `radius`, a core box of half-width `2λ`, and two draws from
/// per-axis ray tubes (one coordinate up to `radius`, the others
/// log-uniform within `0.5λ`). Gives up after `100_000 + 200·count`
/// attempts; zero acceptances is an error, a partial set is returned as is.
pub fn sample_region(
    spec: &RegionSpec,
    count: usize,
    seed: u64,
    radius: f64,
    config: &ValidConfig,
) -> Result<SampleSet, RegionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = 100_000 + 200 * count;
    let cycle = [Stratum::Box, Stratum::Core, Stratum::Tube, Stratum::Tube];
    let mut set = SampleSet {
        spec: spec.clone(),
        seed,
        radius,
        points: Vec::with_capacity(count),
        strata: Vec::with_capacity(count),
        attempts: 0,
        uncertain: 0,
    };
    while set.points.len() < count && set.attempts < cap {
        let stratum = cycle[set.attempts % cycle.len()];
        set.attempts += 1;
        let p = draw_candidate(&mut rng, stratum, spec, radius);
        match spec.contains(&p, config) {
            Membership::In => {
                set.points.push(p);
                set.strata.push(stratum);
            }
            Membership::Uncertain => set.uncertain += 1,
            Membership::Out => {}
        }
    }
    if count > 0 && set.points.is_empty() {
        return Err(RegionError::SamplingFailure {
            kind: spec.kind,
            attempts: set.attempts,
        });
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub sample_count: usize,
    pub max_abs_value: f64,
    pub argmax: Vec<f64>,
    /// `λⁿ` when `f` is a single `y`-monomial in `M` of total degree `n`.
    pub monomial_bound: Option<f64>,
    pub bound_holds: Option<bool>,
    pub escape_ks: usize,
    pub escape_final_value: Option<f64>,
    pub monotone_tail: bool,
    pub divergence: bool,
    pub uncertain_count: usize,
    pub pole_skips: usize,
    /// Always `"evidence"`: sampling cannot prove boundedness.
    pub status: &'static str,
}

/// `|f|` over a sample set and along the escape sequence.
///
/// For `Y4` polynomials the escape points are `a_k` themselves; for `PI3`
/// polynomials their diagonal projections. The tail (second half of the
/// `k` list) is "monotone" when `|f|` strictly increases along it, and
/// "divergent" when it is monotone and ends above `threshold`.
pub fn boundedness_probe(
    f: &Polynomial,
    samples: &SampleSet,
    escape_ks: &[u64],
    threshold: f64,
    config: &ValidConfig,
) -> Result<ProbeReport, RegionError> {
    let dim = samples.spec.kind.dimension();
    if f.system().arity() != dim {
        return Err(RegionError::Dimension {
            kind: samples.spec.kind,
            expected: dim,
            found: f.system().arity(),
        });
    }
    let mut max_abs_value: f64 = 0.0;
    let mut argmax = Vec::new();
    let mut pole_skips = 0;
    for p in &samples.points {
        match f.evaluate(p) {
            Ok(v) => {
                if v.abs() > max_abs_value || argmax.is_empty() {
                    max_abs_value = max_abs_value.max(v.abs());
                    argmax = p.clone();
                }
            }
            Err(AlgebraError::PoleAtPoint { .. }) => pole_skips += 1,
            Err(e) => return Err(e.into()),
        }
    }

    let monomial_bound =
        single_monoid_monomial(f, config).map(|degree| samples.spec.lambda.powi(degree as i32));
    let bound_holds = monomial_bound.map(|b| max_abs_value <= b + BOUND_SLACK);

    let mut values = Vec::with_capacity(escape_ks.len());
    for &k in escape_ks {
        let e = escape_point(k, config)?;
        let v = match f.system() {
            VarSystem::Y4 => f.evaluate(&e.point)?,
            _ => f.evaluate(&e.projected)?,
        };
        values.push(v.abs());
    }
    let tail = &values[values.len() / 2..];
    let monotone_tail = tail.len() >= 2 && tail.windows(2).all(|w| w[1] > w[0]);
    let escape_final_value = values.last().copied();
    let divergence = monotone_tail && escape_final_value.is_some_and(|v| v > threshold);

    Ok(ProbeReport {
        seed: samples.seed,
        sample_count: samples.points.len(),
        max_abs_value,
        argmax,
        monomial_bound,
        bound_holds,
        escape_ks: escape_ks.len(),
        escape_final_value,
        monotone_tail,
        divergence,
        uncertain_count: samples.uncertain,
        pole_skips,
        status: "evidence",
    })
}

/// Total degree of `f` if it is a scalar multiple of one `y`-monomial
/// whose exponent lies in `M`.
fn single_monoid_monomial(f: &Polynomial, config: &ValidConfig) -> Option<i64> {
    if f.system() != VarSystem::Y4 || f.len() != 1 {
        return None;
    }
    let (e, c) = f.terms().next()?;
    let n = [e[0], e[1], e[2], e[3]];
    (monoid_member(&n, config.raw()) && num_traits::Signed::abs(c) == num_traits::One::one())
        .then(|| n.iter().sum())
}

/// Outside every centered cube of half-width 2.
pub fn in_c(p: &[f64; 3]) -> bool {
    p.iter().any(|x| x.abs() > 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichViolation {
    pub point: [f64; 3],
    /// Which inclusion failed: `"half_s_in_tilde"` or `"tilde_in_double_s"`.
    pub inclusion: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub seed: u64,
    pub half_s_checked: usize,
    pub tilde_checked: usize,
    pub uncertain_count: usize,
    pub violations: Vec<SandwichViolation>,
}

impl SandwichReport {
    pub fn uncertain_fraction(&self) -> f64 {
        let total = self.half_s_checked + self.tilde_checked;
        if total == 0 {
            0.0
        } else {
            self.uncertain_count as f64 / total as f64
        }
    }
}

/// Radius used for sandwich sampling.
pub const SANDWICH_RADIUS: f64 = 50.0;

/// Check `(½S) ∩ C ⊆ S̃ ∩ C ⊆ (2S) ∩ C` on `count` points of each side.
///
/// Points of `½S` are built as `b + (a, a, a)` with `b` sampled from `½S″`
/// and `|a| < ½`; points of `S̃` come from [`sample_region`]. Points outside
/// `C` are discarded and redrawn. `UNCERTAIN` verdicts of the `2S` test are
/// counted, not treated as violations.
pub fn sandwich_check(
    config: &ValidConfig,
    count: usize,
    seed: u64,
) -> Result<SandwichReport, RegionError> {
    let mut report = SandwichReport {
        seed,
        half_s_checked: 0,
        tilde_checked: 0,
        uncertain_count: 0,
        violations: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let star_spec = RegionSpec::new(RegionKind::SDoublePrime, 0.5)?;
    let mut round = 0u64;
    while report.half_s_checked < count {
        let batch = sample_region(
            &star_spec,
            count,
            seed ^ (0x5eed_0000 + round),
            SANDWICH_RADIUS,
            config,
        )?;
        round += 1;
        for b in &batch.points {
            if report.half_s_checked == count {
                break;
            }
            let a = rng.gen_range(-0.5..0.5);
            let p = [b[0] + a, b[1] + a, b[2] + a];
            if !in_c(&p) {
                continue;
            }
            report.half_s_checked += 1;
            if !in_s_tilde(&p, 1.0, None, config) {
                report.violations.push(SandwichViolation {
                    point: p,
                    inclusion: "half_s_in_tilde",
                });
            }
        }
    }

    let tilde_spec = RegionSpec::new(RegionKind::STilde, 1.0)?;
    let mut round = 0u64;
    while report.tilde_checked < count {
        let batch = sample_region(
            &tilde_spec,
            count,
            seed ^ (0x7113_0000 + round),
            SANDWICH_RADIUS,
            config,
        )?;
        round += 1;
        for p in &batch.points {
            if report.tilde_checked == count {
                break;
            }
            let p = to3(p);
            if !in_c(&p) {
                continue;
            }
            report.tilde_checked += 1;
            match in_s(&p, 2.0, DEFAULT_TOLERANCE, config).verdict {
                Membership::In => {}
                Membership::Uncertain => report.uncertain_count += 1,
                Membership::Out => report.violations.push(SandwichViolation {
                    point: p,
                    inclusion: "tilde_in_double_s",
                }),
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CloudRegion {
    SDoublePrime,
    STilde,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CloudReport {
    pub region: CloudRegion,
    pub grid: usize,
    pub radius: f64,
    pub band: f64,
    pub points: usize,
    /// Point counts per octant, indexed by the sign bits `(x<0, y<0, z<0)`.
    pub octant_counts: [usize; 8],
}

impl CloudReport {
    /// Counts of the four antipodal octant pairs.
    pub fn octant_pair_counts(&self) -> [usize; 4] {
        let c = &self.octant_counts;
        [c[0] + c[7], c[1] + c[6], c[2] + c[5], c[3] + c[4]]
    }
}

/// Sample the defining inequalities on a `grid³` lattice over
/// `[−radius, radius]³` (cell centres, so the lattice is symmetric under
/// sign changes) and write near-boundary points as CSV rows
/// `x,y,z,margin`. A point is near the boundary when it is inside and has an
/// outside lattice neighbour, or when `|margin| < band`; `margin` is the
/// smallest normalized slack of the defining inequalities.
pub fn export_surface_cloud<W: Write>(
    config: &ValidConfig,
    region: CloudRegion,
    grid: usize,
    radius: f64,
    band: f64,
    out: W,
) -> Result<CloudReport, RegionError> {
    let mut writer = std::io::BufWriter::new(out);
    writeln!(writer, "x,y,z,margin")?;
    let coord = |t: usize| -radius + (t as f64 + 0.5) * 2.0 * radius / grid as f64;
    let margin_at = |p: &[f64; 3]| match region {
        CloudRegion::SDoublePrime => {
            let m = star_margin(p, 1.0, config);
            let lhs = 1.0 - m;
            relative_slack(lhs, 1.0)
        }
        CloudRegion::STilde => tilde_margin(p, 1.0, None, config),
    };
    let idx = |a: usize, b: usize, c: usize| (a * grid + b) * grid + c;
    let mut margins = vec![0.0; grid * grid * grid];
    for a in 0..grid {
        for b in 0..grid {
            for c in 0..grid {
                margins[idx(a, b, c)] = margin_at(&[coord(a), coord(b), coord(c)]);
            }
        }
    }
    let mut report = CloudReport {
        region,
        grid,
        radius,
        band,
        points: 0,
        octant_counts: [0; 8],
    };
    for a in 0..grid {
        for b in 0..grid {
            for c in 0..grid {
                let m = margins[idx(a, b, c)];
                let mut boundary = m.abs() < band;
                if m > 0.0 && !boundary {
                    let neighbours = [
                        (a.wrapping_sub(1), b, c),
                        (a + 1, b, c),
                        (a, b.wrapping_sub(1), c),
                        (a, b + 1, c),
                        (a, b, c.wrapping_sub(1)),
                        (a, b, c + 1),
                    ];
                    boundary = neighbours.iter().any(|&(x, y, z)| {
                        x < grid && y < grid && z < grid && margins[idx(x, y, z)] <= 0.0
                    });
                }
                if boundary {
                    let p = [coord(a), coord(b), coord(c)];
                    writeln!(writer, "{},{},{},{}", p[0], p[1], p[2], m)?;
                    report.points += 1;
                    let oct = (p[0] < 0.0) as usize * 4
                        + (p[1] < 0.0) as usize * 2
                        + (p[2] < 0.0) as usize;
                    report.octant_counts[oct] += 1;
                }
            }
        }
    }
    writer.flush()?;
    Ok(report)
}
