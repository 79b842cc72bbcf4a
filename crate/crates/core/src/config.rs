//! Kuroda configurations: the exponent data `δ₁, δ₂, δ₃, γ`, the exact
//! validity test, and the continued-fraction data that drives the blowup
//! tower.
//!
//! Internally every `δ_{i,j}` is stored as a magnitude. The diagonal entry of
//! row `i` enters the exponent vector `δ_i` with a minus sign; that sign is
//! applied only where exponent vectors are built (see
//! [`KurodaConfig::signed_row`]). The JSON file format uses the signed form
//! `[[-1,3,3,0],[3,-1,3,0],[3,3,-1,0]]`.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::serde_exact;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed configuration: {0}")]
    Malformed(String),
    #[error("configuration is not valid: {}", .0.summary())]
    Invalid(Box<ValidationReport>),
    #[error("index {n} out of range 0..={max} for axis {axis}")]
    OutOfRange { axis: Axis, n: i64, max: i64 },
}

/// One of the three coordinate directions `p₁, p₂, p₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    /// Zero-based index.
    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
            Axis::Three => 2,
        }
    }

    /// One-based label as printed in reports.
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Axis> {
        match n {
            1 => Some(Axis::One),
            2 => Some(Axis::Two),
            3 => Some(Axis::Three),
            _ => None,
        }
    }

    /// The other two axes `(j, k)` in increasing order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::One => (Axis::Two, Axis::Three),
            Axis::Two => (Axis::One, Axis::Three),
            Axis::Three => (Axis::One, Axis::Two),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl From<Axis> for u8 {
    fn from(a: Axis) -> u8 {
        a.number()
    }
}

impl TryFrom<u8> for Axis {
    type Error = String;
    fn try_from(n: u8) -> Result<Self, Self::Error> {
        Axis::from_number(n).ok_or_else(|| format!("axis must be 1, 2 or 3, got {n}"))
    }
}

/// Raw configuration as supplied by the user. Nothing is checked at
/// construction; use [`validate`] or [`ValidConfig::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KurodaConfig {
    /// `delta[i][j]` is the magnitude `δ_{i+1,j+1}`.
    delta: [[i64; 4]; 3],
    gamma: i64,
}

#[derive(Serialize, Deserialize)]
struct ConfigFile {
    delta: Vec<Vec<i64>>,
    gamma: i64,
}

impl KurodaConfig {
    /// Build from magnitudes: `delta[i][i]` is the positive number whose
    /// negation appears in `δ_i`.
    pub fn from_magnitudes(delta: [[i64; 4]; 3], gamma: i64) -> Self {
        KurodaConfig { delta, gamma }
    }

    /// Build from the signed rows `δ₁, δ₂, δ₃` as printed, e.g.
    /// `(-1, 3, 3, 0)`. The diagonal is negated to recover magnitudes, so a
    /// positive diagonal entry turns into a sign-pattern violation.
    pub fn from_signed_rows(rows: [[i64; 4]; 3], gamma: i64) -> Self {
        let mut delta = rows;
        for (i, row) in delta.iter_mut().enumerate() {
            row[i] = -row[i];
        }
        KurodaConfig { delta, gamma }
    }

    /// The family where every diagonal magnitude is `diag` and every other
    /// entry in the first three columns is `off`, with `δ_{i,4} = 0`.
    pub fn symmetric(diag: i64, off: i64, gamma: i64) -> Self {
        let mut delta = [[off, off, off, 0]; 3];
        for (i, row) in delta.iter_mut().enumerate() {
            row[i] = diag;
        }
        KurodaConfig { delta, gamma }
    }

    /// `δ = ((−1,3,3,0),(3,−1,3,0),(3,3,−1,0))`, `γ = 1`.
    pub fn concrete_example() -> Self {
        Self::symmetric(1, 3, 1)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        if file.delta.len() != 3 {
            return Err(ConfigError::Malformed(format!(
                "\"delta\" must have 3 rows, found {}",
                file.delta.len()
            )));
        }
        let mut rows = [[0i64; 4]; 3];
        for (i, row) in file.delta.iter().enumerate() {
            if row.len() != 4 {
                return Err(ConfigError::Malformed(format!(
                    "row {} of \"delta\" must have 4 entries, found {}",
                    i + 1,
                    row.len()
                )));
            }
            rows[i].copy_from_slice(row);
        }
        Ok(Self::from_signed_rows(rows, file.gamma))
    }

    pub fn to_json(&self) -> String {
        let file = ConfigFile {
            delta: (0..3).map(|i| self.signed_row(i).to_vec()).collect(),
            gamma: self.gamma,
        };
        serde_json::to_string(&file).expect("config serializes")
    }

    /// Magnitude `δ_{i+1,j+1}` (zero-based indices).
    pub fn delta(&self, i: usize, j: usize) -> i64 {
        self.delta[i][j]
    }

    /// Magnitude of the diagonal entry `δ_{i,i}`.
    pub fn diag(&self, axis: Axis) -> i64 {
        self.delta[axis.index()][axis.index()]
    }

    pub fn gamma(&self) -> i64 {
        self.gamma
    }

    /// The exponent vector `δ_{i+1} ∈ ℤ⁴` with the diagonal negated.
    pub fn signed_row(&self, i: usize) -> [i64; 4] {
        let mut row = self.delta[i];
        row[i] = -row[i];
        row
    }

    /// `d_i = min_{j ≠ i} δ_{j,i}`.
    pub fn d(&self, axis: Axis) -> i64 {
        let (j, k) = axis.others();
        let i = axis.index();
        self.delta[j.index()][i].min(self.delta[k.index()][i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: u8,
    pub j: u8,
    /// `δ_{i,i} δ_{j,j}`
    pub diag_product: i64,
    /// `δ_{i,j} δ_{j,i}`
    pub cross_product: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub sign_pattern_ok: bool,
    pub sign_violations: Vec<String>,
    /// Left side of the validity condition, present when the sign pattern
    /// holds (all denominators are then positive).
    #[serde(serialize_with = "serde_exact::opt_ratio")]
    pub eq1_value: Option<BigRational>,
    pub valid: bool,
    pub d: Option<[i64; 3]>,
    /// The pairwise consequence `δ_{i,i}δ_{j,j} < δ_{i,j}δ_{j,i}`, checked
    /// only for valid configurations.
    pub pair_checks: Vec<PairCheck>,
    pub consequence_holds: Option<bool>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if !self.sign_pattern_ok {
            return format!("sign pattern violated: {}", self.sign_violations.join("; "));
        }
        match &self.eq1_value {
            Some(v) if self.valid => format!("valid, condition value {v} < 1"),
            Some(v) => format!("condition value {v} is not < 1"),
            None => "condition not evaluated".to_string(),
        }
    }
}

/// Check the sign pattern and the strict inequality
/// `Σ_i δ_{i,i} / (δ_{i,i} + d_i) < 1` in exact rationals.
pub fn validate(config: &KurodaConfig) -> ValidationReport {
    let mut violations = Vec::new();
    for i in 0..3 {
        for j in 0..4 {
            let v = config.delta[i][j];
            if i == j && v < 1 {
                violations.push(format!(
                    "entry {} of delta_{} must be negative (magnitude {} < 1)",
                    j + 1,
                    i + 1,
                    v
                ));
            } else if i != j && j < 3 && v < 1 {
                violations.push(format!("delta_{},{} = {} must be >= 1", i + 1, j + 1, v));
            } else if j == 3 && v < 0 {
                violations.push(format!("delta_{},4 = {} must be >= 0", i + 1, v));
            }
        }
    }
    if config.gamma < 1 {
        violations.push(format!("gamma = {} must be >= 1", config.gamma));
    }
    let sign_pattern_ok = violations.is_empty();

    let mut report = ValidationReport {
        sign_pattern_ok,
        sign_violations: violations,
        eq1_value: None,
        valid: false,
        d: None,
        pair_checks: Vec::new(),
        consequence_holds: None,
    };
    if !sign_pattern_ok {
        return report;
    }

    let d = [
        config.d(Axis::One),
        config.d(Axis::Two),
        config.d(Axis::Three),
    ];
    let value = Axis::ALL
        .iter()
        .map(|&a| {
            let diag = config.diag(a);
            BigRational::new(BigInt::from(diag), BigInt::from(diag + d[a.index()]))
        })
        .fold(BigRational::zero(), |acc, t| acc + t);
    report.valid = value < BigRational::one();
    report.eq1_value = Some(value);
    report.d = Some(d);

    if report.valid {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let diag_product = config.delta[i][i] * config.delta[j][j];
                let cross_product = config.delta[i][j] * config.delta[j][i];
                report.pair_checks.push(PairCheck {
                    i: i as u8 + 1,
                    j: j as u8 + 1,
                    diag_product,
                    cross_product,
                    holds: diag_product < cross_product,
                });
            }
        }
        report.consequence_holds = Some(report.pair_checks.iter().all(|p| p.holds));
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedConstants {
    pub d: [i64; 3],
    /// `Q_i = d_i / δ_{i,i}`
    #[serde(serialize_with = "serde_exact::ratio_array")]
    pub q: [BigRational; 3],
}

impl DerivedConstants {
    pub fn d(&self, axis: Axis) -> i64 {
        self.d[axis.index()]
    }

    pub fn ratio(&self, axis: Axis) -> &BigRational {
        &self.q[axis.index()]
    }
}

/// Simple continued fraction `[a₀; a₁, …, a_m]` of a rational. The last
/// term is at least 2 whenever there is more than one term.
pub fn continued_fraction(value: &BigRational) -> Vec<BigInt> {
    let mut terms = Vec::new();
    let mut num = value.numer().clone();
    let mut den = value.denom().clone();
    while !den.is_zero() {
        let (q, r) = num.div_mod_floor(&den);
        terms.push(q);
        num = den;
        den = r;
    }
    terms
}

/// Per-axis continued-fraction data and the induced partition of
/// `{0, …, N}` into blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisTower {
    pub axis: Axis,
    #[serde(serialize_with = "serde_exact::ratio")]
    pub ratio: BigRational,
    /// `q_{i,1}, …, q_{i,M}`
    pub q: Vec<i64>,
    /// `ν(m) = max I_{i,m}` for `m = 0..=M`, with `ν(0) = −1`.
    pub nu: Vec<i64>,
}

impl AxisTower {
    /// Expand `Q` into its continued fraction. `Q` must be positive.
    pub fn from_ratio(axis: Axis, ratio: BigRational) -> Self {
        assert!(ratio.is_positive(), "tower ratio must be positive");
        let q: Vec<i64> = continued_fraction(&ratio)
            .iter()
            .map(|t| t.to_i64().expect("continued fraction term fits i64"))
            .collect();
        let mut nu = Vec::with_capacity(q.len() + 1);
        nu.push(-1);
        let mut end = q[0];
        nu.push(end);
        for &qm in &q[1..] {
            end += qm;
            nu.push(end);
        }
        AxisTower { axis, ratio, q, nu }
    }

    /// Number of blocks `M_i`.
    pub fn block_count(&self) -> usize {
        self.q.len()
    }

    /// `N_i = Σ_m q_{i,m}`; the tower has `N_i + 1` blowups.
    pub fn total(&self) -> i64 {
        *self.nu.last().expect("at least one block")
    }

    /// Block `I_{i,m}` for `m = 0..=M` (`I_{i,0} = {−1}`).
    pub fn block(&self, m: usize) -> RangeInclusive<i64> {
        if m == 0 {
            -1..=-1
        } else {
            (self.nu[m - 1] + 1)..=self.nu[m]
        }
    }

    pub fn blocks(&self) -> Vec<Vec<i64>> {
        (1..=self.block_count())
            .map(|m| self.block(m).collect())
            .collect()
    }

    /// `ν(m)`, with `ν(0) = −1`.
    pub fn nu(&self, m: usize) -> i64 {
        self.nu[m]
    }

    /// `k(n)`: the block containing `n ∈ {−1, …, N}`.
    pub fn block_index(&self, n: i64) -> Result<usize, ConfigError> {
        if n < -1 || n > self.total() {
            return Err(ConfigError::OutOfRange {
                axis: self.axis,
                n,
                max: self.total(),
            });
        }
        Ok(self.nu.partition_point(|&end| end < n))
    }

    /// `l_n = max I_{i,k(n)−1}` for `n ∈ {0, …, N − 1}`.
    pub fn prev_block_max(&self, n: i64) -> Result<i64, ConfigError> {
        if n < 0 || n >= self.total() {
            return Err(ConfigError::OutOfRange {
                axis: self.axis,
                n,
                max: self.total() - 1,
            });
        }
        let k = self.block_index(n)?;
        Ok(self.nu[k - 1])
    }

    /// `n ∈ J_{1,i} = {0, …, N − 1}`.
    pub fn in_j1(&self, n: i64) -> bool {
        (0..self.total()).contains(&n)
    }

    /// `n ∈ J_{2,i}`: union of the odd-numbered blocks, minus `{N}`.
    pub fn in_j2(&self, n: i64) -> bool {
        if n < 0 || n >= self.total() {
            return false;
        }
        self.block_index(n).map(|k| k % 2 == 1).unwrap_or(false)
    }

    pub fn j1(&self) -> Vec<i64> {
        (0..=self.total()).filter(|&n| self.in_j1(n)).collect()
    }

    pub fn j2(&self) -> Vec<i64> {
        (0..=self.total()).filter(|&n| self.in_j2(n)).collect()
    }

    /// Evaluate the stored continued fraction back to a rational.
    pub fn reconstruct(&self) -> BigRational {
        let mut iter = self.q.iter().rev();
        let last = iter.next().expect("at least one term");
        let mut acc = BigRational::from_integer(BigInt::from(*last));
        for &t in iter {
            acc = BigRational::from_integer(BigInt::from(t)) + acc.recip();
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EuclidTower {
    pub axes: [AxisTower; 3],
}

impl EuclidTower {
    pub fn axis(&self, axis: Axis) -> &AxisTower {
        &self.axes[axis.index()]
    }
}

/// A configuration that passed [`validate`], bundled with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidConfig {
    config: KurodaConfig,
    constants: DerivedConstants,
    tower: EuclidTower,
}

impl ValidConfig {
    pub fn new(config: KurodaConfig) -> Result<Self, ConfigError> {
        let report = validate(&config);
        if !report.valid {
            return Err(ConfigError::Invalid(Box::new(report)));
        }
        let constants = derive_constants(&config);
        let tower = build_tower(&constants);
        Ok(ValidConfig {
            config,
            constants,
            tower,
        })
    }

    pub fn concrete_example() -> Self {
        Self::new(KurodaConfig::concrete_example()).expect("concrete example is valid")
    }

    pub fn raw(&self) -> &KurodaConfig {
        &self.config
    }

    pub fn constants(&self) -> &DerivedConstants {
        &self.constants
    }

    pub fn tower(&self) -> &EuclidTower {
        &self.tower
    }

    pub fn diag(&self, axis: Axis) -> i64 {
        self.config.diag(axis)
    }

    pub fn d(&self, axis: Axis) -> i64 {
        self.constants.d(axis)
    }
}

impl std::ops::Deref for ValidConfig {
    type Target = KurodaConfig;
    fn deref(&self) -> &KurodaConfig {
        &self.config
    }
}

/// `d_i` and `Q_i = d_i/δ_{i,i}`. Meaningful only when the sign pattern
/// holds; [`ValidConfig`] guarantees that.
pub fn derive_constants(config: &KurodaConfig) -> DerivedConstants {
    let d = [
        config.d(Axis::One),
        config.d(Axis::Two),
        config.d(Axis::Three),
    ];
    let q = Axis::ALL
        .map(|a| BigRational::new(BigInt::from(d[a.index()]), BigInt::from(config.diag(a))));
    DerivedConstants { d, q }
}

fn build_tower(constants: &DerivedConstants) -> EuclidTower {
    EuclidTower {
        axes: Axis::ALL.map(|a| AxisTower::from_ratio(a, constants.ratio(a).clone())),
    }
}

pub fn euclid_tower(config: &ValidConfig) -> &EuclidTower {
    config.tower()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn concrete_example_is_valid_with_three_quarters() {
        let report = validate(&KurodaConfig::concrete_example());
        assert!(report.sign_pattern_ok);
        assert!(report.valid);
        assert_eq!(report.eq1_value, Some(ratio(3, 4)));
        assert_eq!(report.d, Some([3, 3, 3]));
        assert_eq!(report.consequence_holds, Some(true));
        for p in &report.pair_checks {
            assert_eq!((p.diag_product, p.cross_product), (1, 9));
        }
    }

    #[test]
    fn all_ones_is_invalid() {
        let report = validate(&KurodaConfig::symmetric(1, 1, 1));
        assert!(report.sign_pattern_ok);
        assert!(!report.valid);
        assert_eq!(report.eq1_value, Some(ratio(3, 2)));
        assert!(report.pair_checks.is_empty());
    }

    #[test]
    fn two_seven_family() {
        let cfg = KurodaConfig::from_signed_rows([[-2, 7, 7, 0], [7, -2, 7, 0], [7, 7, -2, 0]], 1);
        let report = validate(&cfg);
        assert!(report.valid);
        assert_eq!(report.eq1_value, Some(ratio(2, 3)));
        let c = derive_constants(&cfg);
        assert_eq!(c.d, [7, 7, 7]);
        assert_eq!(c.q, [ratio(7, 2), ratio(7, 2), ratio(7, 2)]);
    }

    #[test]
    fn sign_violation_is_a_verdict() {
        let cfg = KurodaConfig::from_signed_rows([[1, 3, 3, 0], [3, -1, 3, 0], [3, 3, -1, 0]], 1);
        let report = validate(&cfg);
        assert!(!report.sign_pattern_ok);
        assert!(!report.valid);
        assert_eq!(report.sign_violations.len(), 1);
        assert!(report.eq1_value.is_none());
        assert!(matches!(
            ValidConfig::new(cfg),
            Err(ConfigError::Invalid(_))
        ));

        let zero_gamma = KurodaConfig::symmetric(1, 3, 0);
        assert!(!validate(&zero_gamma).sign_pattern_ok);
        let neg_col4 =
            KurodaConfig::from_signed_rows([[-1, 3, 3, -1], [3, -1, 3, 0], [3, 3, -1, 0]], 1);
        assert!(!validate(&neg_col4).sign_pattern_ok);
    }

    #[test]
    fn equal_columns_give_that_d() {
        let cfg = KurodaConfig::from_magnitudes([[2, 5, 9, 1], [4, 2, 9, 0], [4, 5, 2, 3]], 2);
        let c = derive_constants(&cfg);
        assert_eq!(c.d, [4, 5, 9]);
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let text = r#"{"delta": [[-1,3,3,0],[3,-1,3,0],[3,3,-1,0]], "gamma": 1}"#;
        let cfg = KurodaConfig::from_json(text).unwrap();
        assert_eq!(cfg, KurodaConfig::concrete_example());
        assert_eq!(KurodaConfig::from_json(&cfg.to_json()).unwrap(), cfg);

        let short_row = r#"{"delta": [[-1,3,3],[3,-1,3,0],[3,3,-1,0]], "gamma": 1}"#;
        assert!(matches!(
            KurodaConfig::from_json(short_row),
            Err(ConfigError::Malformed(_))
        ));
        let two_rows = r#"{"delta": [[-1,3,3,0],[3,-1,3,0]], "gamma": 1}"#;
        assert!(matches!(
            KurodaConfig::from_json(two_rows),
            Err(ConfigError::Malformed(_))
        ));
        assert!(matches!(
            KurodaConfig::from_json("{"),
            Err(ConfigError::Malformed(_))
        ));
    }

    #[test]
    fn continued_fractions() {
        let cf = |n, d| -> Vec<i64> {
            continued_fraction(&ratio(n, d))
                .iter()
                .map(|t| t.to_i64().unwrap())
                .collect()
        };
        assert_eq!(cf(3, 1), vec![3]);
        assert_eq!(cf(7, 2), vec![3, 2]);
        assert_eq!(cf(1, 1), vec![1]);
        assert_eq!(cf(1, 2), vec![0, 2]);
        assert_eq!(cf(415, 93), vec![4, 2, 6, 7]);
    }

    #[test]
    fn concrete_tower() {
        let cfg = ValidConfig::concrete_example();
        for axis in Axis::ALL {
            let t = cfg.tower().axis(axis);
            assert_eq!(t.q, vec![3]);
            assert_eq!(t.block_count(), 1);
            assert_eq!(t.total(), 3);
            assert_eq!(t.blocks(), vec![vec![0, 1, 2, 3]]);
            assert_eq!(t.j1(), vec![0, 1, 2]);
            assert_eq!(t.j2(), vec![0, 1, 2]);
        }
    }

    #[test]
    fn seven_halves_tower() {
        let t = AxisTower::from_ratio(Axis::One, ratio(7, 2));
        assert_eq!(t.q, vec![3, 2]);
        assert_eq!(t.total(), 5);
        assert_eq!(t.blocks(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
        assert_eq!(t.j1(), vec![0, 1, 2, 3, 4]);
        assert_eq!(t.j2(), vec![0, 1, 2, 3]);
        assert_eq!(t.nu, vec![-1, 3, 5]);
        assert_eq!(t.block_index(4).unwrap(), 2);
        assert_eq!(t.prev_block_max(4).unwrap(), 3);
        assert!(t.prev_block_max(5).is_err());
    }

    #[test]
    fn unit_and_small_ratios() {
        let t = AxisTower::from_ratio(Axis::Two, ratio(1, 1));
        assert_eq!((t.q.clone(), t.total()), (vec![1], 1));
        assert_eq!(t.j1(), vec![0]);
        assert_eq!(t.j2(), vec![0]);

        // Q < 1 keeps a singleton first block.
        let t = AxisTower::from_ratio(Axis::Two, ratio(1, 2));
        assert_eq!(t.q, vec![0, 2]);
        assert_eq!(t.blocks(), vec![vec![0], vec![1, 2]]);
        assert_eq!(t.j2(), vec![0]);
        assert_eq!(t.reconstruct(), ratio(1, 2));
    }

    #[test]
    fn block_index_edges() {
        let t = AxisTower::from_ratio(Axis::Three, ratio(3, 1));
        assert_eq!(t.block_index(-1).unwrap(), 0);
        assert_eq!(t.block_index(0).unwrap(), 1);
        assert_eq!(t.block_index(2).unwrap(), 1);
        assert_eq!(t.prev_block_max(0).unwrap(), -1);
        assert!(t.block_index(4).is_err());
        assert!(t.block_index(-2).is_err());
        assert!(t.prev_block_max(3).is_err());
    }
}
