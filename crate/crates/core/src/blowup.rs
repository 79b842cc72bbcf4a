//! Exponent calculus of the blowup tower over the point `p_i`.
//!
//! A chart monomial `α^{r₂} β^{r₃} γ^{−r₁}` is tracked by its triple
//! `(r₁, r₂, r₃)`. Passing from chart `A_n` to `A_{n+1}` substitutes
//! `β → βγ` when `k(n+1)` is odd and `γ → βγ` when it is even, i.e.
//!
//! ```text
//! k(n+1) odd:  r₁ ← r₁ − r₃
//! k(n+1) even: r₃ ← r₃ − r₁
//! ```
//!
//! The divisor `E_{i,n}` is a pole of the monomial iff `r₁⁽ⁿ⁾ > 0` (odd
//! `k(n)`) or `r₃⁽ⁿ⁾ < 0` (even `k(n)`). Varieties, charts and centers exist
//! here only as labels.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial};
use crate::config::{Axis, AxisTower, ConfigError, ValidConfig};
use crate::membership::axis_support;

#[derive(Debug, Error)]
pub enum BlowupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Index(#[from] ConfigError),
    #[error("distinct triples {a:?} and {b:?} collide at index {n}")]
    TraceCollision { n: usize, a: [i64; 3], b: [i64; 3] },
}

/// Exponents of `α^{r₂} β^{r₃} γ^{−r₁}`; note `r₁` is the negated
/// `γ`-exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChartTriple {
    pub r1: i64,
    pub r2: i64,
    pub r3: i64,
}

impl ChartTriple {
    pub const fn new(r1: i64, r2: i64, r3: i64) -> Self {
        ChartTriple { r1, r2, r3 }
    }

    pub fn as_array(self) -> [i64; 3] {
        [self.r1, self.r2, self.r3]
    }

    /// Chart exponents `(α, β, γ)`.
    pub fn chart_exponents(self) -> [i64; 3] {
        [self.r2, self.r3, -self.r1]
    }

    fn step(self, odd_block: bool) -> Self {
        if odd_block {
            ChartTriple {
                r1: self.r1 - self.r3,
                ..self
            }
        } else {
            ChartTriple {
                r3: self.r3 - self.r1,
                ..self
            }
        }
    }
}

impl From<[i64; 3]> for ChartTriple {
    fn from(t: [i64; 3]) -> Self {
        ChartTriple::new(t[0], t[1], t[2])
    }
}

impl std::ops::Add for ChartTriple {
    type Output = ChartTriple;
    fn add(self, o: ChartTriple) -> ChartTriple {
        ChartTriple::new(self.r1 + o.r1, self.r2 + o.r2, self.r3 + o.r3)
    }
}

pub fn block_index(n: i64, tower: &AxisTower) -> Result<usize, BlowupError> {
    Ok(tower.block_index(n)?)
}

pub fn prev_block_max(n: i64, tower: &AxisTower) -> Result<i64, BlowupError> {
    Ok(tower.prev_block_max(n)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerTrace {
    pub axis: Axis,
    /// `triples[n]` is `(r₁⁽ⁿ⁾, r₂⁽ⁿ⁾, r₃⁽ⁿ⁾)` for `n = 0..=N`.
    pub triples: Vec<ChartTriple>,
}

impl TowerTrace {
    pub fn at(&self, n: usize) -> ChartTriple {
        self.triples[n]
    }

    pub fn last(&self) -> ChartTriple {
        *self.triples.last().expect("trace is never empty")
    }
}

/// Pull a chart monomial from `A_0` up through `A_N`.
pub fn pullback_trace(t: ChartTriple, tower: &AxisTower) -> TowerTrace {
    let n_max = tower.total();
    let mut triples = Vec::with_capacity(n_max as usize + 1);
    triples.push(t);
    let mut cur = t;
    for n in 1..=n_max {
        let k = tower.block_index(n).expect("n within tower");
        cur = cur.step(k % 2 == 1);
        triples.push(cur);
    }
    TowerTrace {
        axis: tower.axis,
        triples,
    }
}

/// Integer matrix `[[a, b], [c, d]]` with `(r₁⁽ⁿ⁾, r₃⁽ⁿ⁾) = M (r₁, r₃)`.
pub fn trace_matrix(n: i64, tower: &AxisTower) -> Result<[[i64; 2]; 2], BlowupError> {
    let mut m = [[1, 0], [0, 1]];
    for step in 1..=n {
        let k = block_index(step, tower)?;
        if k % 2 == 1 {
            m = [[m[0][0] - m[1][0], m[0][1] - m[1][1]], m[1]];
        } else {
            m = [m[0], [m[1][0] - m[0][0], m[1][1] - m[0][1]]];
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFormulaReport {
    pub consistent: bool,
    /// Triples predicted at `ν(1), …, ν(M)` by the aggregated formulas.
    pub block_ends: Vec<ChartTriple>,
}

/// Compare the per-block formulas
///
/// ```text
/// m odd:  r₁^{ν(m)} = r₁^{ν(m−1)} − q_m r₃^{ν(m−1)}
/// m even: r₃^{ν(m)} = r₃^{ν(m−1)} − q_m r₁^{ν(m−1)}
/// ```
///
/// with the stepwise trace at every block end (the initial triple plays the
/// role of `ν(0)`).
pub fn block_formula_check(t: ChartTriple, tower: &AxisTower) -> BlockFormulaReport {
    let trace = pullback_trace(t, tower);
    let mut cur = t;
    let mut block_ends = Vec::with_capacity(tower.block_count());
    let mut consistent = true;
    for m in 1..=tower.block_count() {
        let q = tower.q[m - 1];
        cur = if m % 2 == 1 {
            ChartTriple {
                r1: cur.r1 - q * cur.r3,
                ..cur
            }
        } else {
            ChartTriple {
                r3: cur.r3 - q * cur.r1,
                ..cur
            }
        };
        block_ends.push(cur);
        consistent &= trace.at(tower.nu(m) as usize) == cur;
    }
    BlockFormulaReport {
        consistent,
        block_ends,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleProfile {
    pub axis: Axis,
    /// Pole along `E_{i,n}`, `n = 0..=N`.
    pub pole_at: Vec<bool>,
    pub in_z1: Vec<bool>,
    pub in_z2: Vec<bool>,
    /// `B` and `E_{i,−1}` never carry poles of chart monomials here; listed
    /// for the census only.
    pub non_exceptional: [&'static str; 2],
}

impl PoleProfile {
    pub fn poles(&self) -> Vec<i64> {
        indices(&self.pole_at)
    }

    /// Every pole lies in `Z₁`.
    pub fn within_z1(&self) -> bool {
        self.pole_at.iter().zip(&self.in_z1).all(|(&p, &z)| !p || z)
    }

    /// Every pole lies in `Z₂`.
    pub fn within_z2(&self) -> bool {
        self.pole_at.iter().zip(&self.in_z2).all(|(&p, &z)| !p || z)
    }
}

fn indices(flags: &[bool]) -> Vec<i64> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(n, _)| n as i64)
        .collect()
}

fn pole_flag(t: ChartTriple, k: usize) -> bool {
    if k % 2 == 1 {
        t.r1 > 0
    } else {
        t.r3 < 0
    }
}

pub fn pole_profile(trace: &TowerTrace, tower: &AxisTower) -> PoleProfile {
    profile_from_flags(
        trace.axis,
        trace
            .triples
            .iter()
            .enumerate()
            .map(|(n, &t)| pole_flag(t, tower.block_index(n as i64).expect("n within tower")))
            .collect(),
        tower,
    )
}

fn profile_from_flags(axis: Axis, pole_at: Vec<bool>, tower: &AxisTower) -> PoleProfile {
    let range = 0..=tower.total();
    PoleProfile {
        axis,
        pole_at,
        in_z1: range.clone().map(|n| tower.in_j1(n)).collect(),
        in_z2: range.map(|n| tower.in_j2(n)).collect(),
        non_exceptional: ["B", "E_{i,-1}"],
    }
}

/// The three equivalent conditions on the tower over `p_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `δ_{i,i} r₁ ≤ d_i r₃` on the support.
    Star,
    /// Every pole `E_{i,n}` lies in `Z₁`.
    PolesInZ1,
    /// Every pole `E_{i,n}` lies in `Z₂`.
    PolesInZ2,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::Star, Condition::PolesInZ1, Condition::PolesInZ2];

    pub fn from_number(n: u8) -> Option<Condition> {
        match n {
            1 => Some(Condition::Star),
            2 => Some(Condition::PolesInZ1),
            3 => Some(Condition::PolesInZ2),
            _ => None,
        }
    }
}

pub fn cond_triple(t: ChartTriple, axis: Axis, which: Condition, config: &ValidConfig) -> bool {
    let tower = config.tower().axis(axis);
    match which {
        Condition::Star => config.diag(axis) * t.r1 <= config.d(axis) * t.r3,
        Condition::PolesInZ1 => pole_profile(&pullback_trace(t, tower), tower).within_z1(),
        Condition::PolesInZ2 => pole_profile(&pullback_trace(t, tower), tower).within_z2(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CondVerdicts {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
}

impl CondVerdicts {
    pub fn agree(&self) -> bool {
        self.cond1 == self.cond2 && self.cond2 == self.cond3
    }
}

pub fn cond_all_triple(t: ChartTriple, axis: Axis, config: &ValidConfig) -> CondVerdicts {
    let tower = config.tower().axis(axis);
    let profile = pole_profile(&pullback_trace(t, tower), tower);
    CondVerdicts {
        cond1: cond_triple(t, axis, Condition::Star, config),
        cond2: profile.within_z1(),
        cond3: profile.within_z2(),
    }
}

/// Pole profile of a `Π`-polynomial over `p_i`: the union of the profiles
/// of its support monomials. Fails if two support triples ever coincide
/// along the tower, which would allow cancellation.
pub fn polynomial_pole_profile(
    f: &Polynomial,
    axis: Axis,
    config: &ValidConfig,
) -> Result<PoleProfile, BlowupError> {
    let tower = config.tower().axis(axis);
    let traces: Vec<TowerTrace> = axis_support(f, axis)?
        .into_iter()
        .map(|t| pullback_trace(t.into(), tower))
        .collect();
    let len = tower.total() as usize + 1;
    for n in 0..len {
        let mut seen = BTreeSet::new();
        for (idx, tr) in traces.iter().enumerate() {
            if !seen.insert(tr.at(n)) {
                let other = traces[..idx].iter().find(|o| o.at(n) == tr.at(n)).unwrap();
                return Err(BlowupError::TraceCollision {
                    n,
                    a: other.at(0).as_array(),
                    b: tr.at(0).as_array(),
                });
            }
        }
    }
    let mut pole_at = vec![false; len];
    for tr in &traces {
        for (flag, p) in pole_at.iter_mut().zip(pole_profile(tr, tower).pole_at) {
            *flag |= p;
        }
    }
    Ok(profile_from_flags(axis, pole_at, tower))
}

pub fn cond_polynomial(
    f: &Polynomial,
    axis: Axis,
    which: Condition,
    config: &ValidConfig,
) -> Result<bool, BlowupError> {
    Ok(match which {
        Condition::Star => axis_support(f, axis)?
            .into_iter()
            .all(|t| cond_triple(t.into(), axis, Condition::Star, config)),
        Condition::PolesInZ1 => polynomial_pole_profile(f, axis, config)?.within_z1(),
        Condition::PolesInZ2 => polynomial_pole_profile(f, axis, config)?.within_z2(),
    })
}

pub fn cond_all_polynomial(
    f: &Polynomial,
    axis: Axis,
    config: &ValidConfig,
) -> Result<CondVerdicts, BlowupError> {
    let profile = polynomial_pole_profile(f, axis, config)?;
    Ok(CondVerdicts {
        cond1: cond_polynomial(f, axis, Condition::Star, config)?,
        cond2: profile.within_z1(),
        cond3: profile.within_z2(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// `None` for the strict transform of the plane at infinity `B`.
    pub axis: Option<Axis>,
    pub n: Option<i64>,
    pub label: String,
    pub in_z1: bool,
    pub in_z2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisCensus {
    pub axis: Axis,
    pub total: i64,
    pub j1: Vec<i64>,
    pub j2: Vec<i64>,
    pub z1_equals_z2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub axes: Vec<AxisCensus>,
    pub z1_equals_z2: bool,
}

/// Every boundary component with its `Z₁`/`Z₂` membership.
pub fn boundary_census(config: &ValidConfig) -> Census {
    let mut entries = vec![CensusEntry {
        axis: None,
        n: None,
        label: "B".to_string(),
        in_z1: true,
        in_z2: true,
    }];
    let mut axes = Vec::new();
    for axis in Axis::ALL {
        let tower = config.tower().axis(axis);
        // E_{i,-1} is the strict transform of the plane z_k = z_l; it meets
        // A³ and so lies in neither Z₁ nor Z₂.
        entries.push(CensusEntry {
            axis: Some(axis),
            n: Some(-1),
            label: format!("E_{{{},-1}}", axis.number()),
            in_z1: false,
            in_z2: false,
        });
        for n in 0..=tower.total() {
            entries.push(CensusEntry {
                axis: Some(axis),
                n: Some(n),
                label: format!("E_{{{},{}}}", axis.number(), n),
                in_z1: tower.in_j1(n),
                in_z2: tower.in_j2(n),
            });
        }
        let (j1, j2) = (tower.j1(), tower.j2());
        axes.push(AxisCensus {
            axis,
            total: tower.total(),
            z1_equals_z2: j1 == j2,
            j1,
            j2,
        });
    }
    let z1_equals_z2 = axes.iter().all(|a| a.z1_equals_z2);
    Census {
        entries,
        axes,
        z1_equals_z2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionPullbackTerm {
    pub triple: ChartTriple,
    pub trace: TowerTrace,
    pub poles: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionPullbackReport {
    pub axis: Axis,
    pub terms: Vec<RegionPullbackTerm>,
    /// Union of the term pole sets.
    pub poles: Vec<i64>,
    /// Tower divisors of `Z₂` over this axis (`J_{2,i}`).
    pub z2_divisors: Vec<i64>,
    pub every_z2_divisor_has_pole: bool,
    pub poles_equal_z2: bool,
}

/// Pole analysis of the left side of the scaled `(A_i)` inequality pulled
/// back to `A_0`: the monomials with triples `(2d_i, 0, 2δ_{i,i})` and
/// `(0, 0, 2δ_{i,i})`. Scale factors are constants and do not move poles.
pub fn region_inequality_pullback(
    axis: Axis,
    config: &ValidConfig,
) -> Result<RegionPullbackReport, BlowupError> {
    let tower = config.tower().axis(axis);
    let (d, diag) = (config.d(axis), config.diag(axis));
    let triples = [
        ChartTriple::new(2 * d, 0, 2 * diag),
        ChartTriple::new(0, 0, 2 * diag),
    ];
    let traces: Vec<TowerTrace> = triples.iter().map(|&t| pullback_trace(t, tower)).collect();
    for n in 0..traces[0].triples.len() {
        if traces[0].at(n) == traces[1].at(n) {
            return Err(BlowupError::TraceCollision {
                n,
                a: triples[0].as_array(),
                b: triples[1].as_array(),
            });
        }
    }
    let mut union = BTreeSet::new();
    let terms: Vec<RegionPullbackTerm> = triples
        .iter()
        .zip(traces)
        .map(|(&triple, trace)| {
            let poles = pole_profile(&trace, tower).poles();
            union.extend(poles.iter().copied());
            RegionPullbackTerm {
                triple,
                trace,
                poles,
            }
        })
        .collect();
    let poles: Vec<i64> = union.into_iter().collect();
    let z2_divisors = tower.j2();
    let every_z2_divisor_has_pole = z2_divisors.iter().all(|n| poles.contains(n));
    Ok(RegionPullbackReport {
        axis,
        terms,
        poles_equal_z2: poles == z2_divisors,
        poles,
        z2_divisors,
        every_z2_divisor_has_pole,
    })
}
