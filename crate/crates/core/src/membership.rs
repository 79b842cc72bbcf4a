//! Membership in the monoid `M`, the algebra `T = K[y] ∩ K[x]` and the ring
//! `R = K[x] ∩ K[Π]`, each decided two independent ways:
//!
//! * combinatorially, from the three inequalities defining `M` and the
//!   per-axis star condition `δ_{i,i} r₁ ≤ d_i r₃`;
//! * by brute force, expanding into `x`-exponents and checking signs.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{self, y_to_x_exponents, AlgebraError, Polynomial, VarSystem};
use crate::config::{Axis, KurodaConfig, ValidConfig};

/// Exponent vector `n` of a `y`-monomial.
pub type Exponents4 = [i64; 4];

/// `δ_{i,i} n_i ≤ δ_{j,i} n_j + δ_{k,i} n_k` for every `{i, j, k} = {1, 2, 3}`.
pub fn monoid_member(n: &Exponents4, config: &KurodaConfig) -> bool {
    Axis::ALL
        .iter()
        .all(|&axis| axis_inequality_holds(n, axis, config))
}

/// The single inequality of `M` attached to `axis`.
pub fn axis_inequality_holds(n: &Exponents4, axis: Axis, config: &KurodaConfig) -> bool {
    let i = axis.index();
    let (j, k) = axis.others();
    let (j, k) = (j.index(), k.index());
    config.delta(i, i) * n[i] <= config.delta(j, i) * n[j] + config.delta(k, i) * n[k]
}

/// `y^n ∈ K[x]`, i.e. `n₁δ₁ + n₂δ₂ + n₃δ₃ + n₄γe₄ ≥ 0` entrywise.
pub fn monoid_member_oracle(n: &Exponents4, config: &KurodaConfig) -> bool {
    y_to_x_exponents(n, config).iter().all(|&e| e >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorList {
    pub degree_bound: i64,
    /// Indecomposable elements of `M`, by total degree then lexicographic.
    pub generators: Vec<Exponents4>,
    pub complete_up_to: i64,
    /// `counts_by_degree[t]` generators of total degree `t`.
    pub counts_by_degree: Vec<usize>,
    /// Generators still appear at the bound itself, so a larger bound may
    /// find more.
    pub still_growing: bool,
}

impl GeneratorList {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, n: &Exponents4) -> bool {
        self.generators.contains(n)
    }
}

/// All `n ∈ ℤ⁴_{≥0}` of total degree exactly `degree`, lexicographic order.
pub fn vectors_of_degree(degree: i64) -> Vec<Exponents4> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            for c in (0..=degree - a - b).rev() {
                out.push([a, b, c, degree - a - b - c]);
            }
        }
    }
    out.reverse();
    out
}

/// Whether `n` splits as `a + b` with `a, b ∈ M ∖ {0}`, searching all
/// `0 < a < n` componentwise.
pub fn is_decomposable(n: &Exponents4, config: &KurodaConfig) -> bool {
    let total: i64 = n.iter().sum();
    for a0 in 0..=n[0] {
        for a1 in 0..=n[1] {
            for a2 in 0..=n[2] {
                for a3 in 0..=n[3] {
                    let a = [a0, a1, a2, a3];
                    let deg: i64 = a.iter().sum();
                    if deg == 0 || deg == total {
                        continue;
                    }
                    let b = [n[0] - a0, n[1] - a1, n[2] - a2, n[3] - a3];
                    if monoid_member(&a, config) && monoid_member(&b, config) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Minimal generators of `M` (hence monomial generators of `T`) up to total
/// degree `degree_bound`, by exhaustive splitting.
pub fn enumerate_t_generators(config: &KurodaConfig, degree_bound: i64) -> GeneratorList {
    let mut generators = Vec::new();
    let mut counts_by_degree = Vec::new();
    for degree in 0..=degree_bound.max(0) {
        let mut count = 0;
        if degree > 0 {
            for n in vectors_of_degree(degree) {
                if monoid_member(&n, config) && !is_decomposable(&n, config) {
                    generators.push(n);
                    count += 1;
                }
            }
        }
        counts_by_degree.push(count);
    }
    let still_growing = degree_bound > 0 && counts_by_degree.last().copied().unwrap_or(0) > 0;
    GeneratorList {
        degree_bound,
        generators,
        complete_up_to: degree_bound.max(0),
        counts_by_degree,
        still_growing,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarViolation {
    pub axis: Axis,
    pub triple: [i64; 3],
    /// `δ_{i,i} r₁`
    pub lhs: i64,
    /// `d_i r₃`
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub member: bool,
    /// Support `m_i(f)` per axis.
    pub supports: [Vec<[i64; 3]>; 3],
    /// Every violated triple over all three axes.
    pub violations: Vec<StarViolation>,
}

/// Support `m_i(f)`: exponent triples of `f` in the basis of `axis`.
pub fn axis_support(f: &Polynomial, axis: Axis) -> Result<Vec<[i64; 3]>, AlgebraError> {
    let g = algebra::reexpress_for_axis(f, axis)?;
    Ok(g.support().map(|e| [e[0], e[1], e[2]]).collect())
}

/// Star condition on every axis, collecting all violations.
pub fn star_check(f: &Polynomial, config: &ValidConfig) -> Result<StarReport, AlgebraError> {
    let mut supports: [Vec<[i64; 3]>; 3] = Default::default();
    let mut violations = Vec::new();
    for axis in Axis::ALL {
        let support = axis_support(f, axis)?;
        let (diag, d) = (config.diag(axis), config.d(axis));
        for &t in &support {
            let (lhs, rhs) = (diag * t[0], d * t[2]);
            if lhs > rhs {
                violations.push(StarViolation {
                    axis,
                    triple: t,
                    lhs,
                    rhs,
                });
            }
        }
        supports[axis.index()] = support;
    }
    Ok(StarReport {
        member: violations.is_empty(),
        supports,
        violations,
    })
}

pub fn in_r_star(f: &Polynomial, config: &ValidConfig) -> Result<bool, AlgebraError> {
    Ok(star_check(f, config)?.member)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub y_exponents: Exponents4,
    pub x_exponents: [i64; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub member: bool,
    pub y_terms: usize,
    pub failures: Vec<OracleFailure>,
}

/// Expand into `y`-monomials and check each one lies in `K[x]`.
pub fn oracle_check(f: &Polynomial, config: &KurodaConfig) -> Result<OracleReport, AlgebraError> {
    let expanded = algebra::expand_pi_to_y(f)?;
    let mut failures = Vec::new();
    for (e, _) in expanded.terms() {
        let n = [e[0], e[1], e[2], e[3]];
        if !monoid_member_oracle(&n, config) {
            failures.push(OracleFailure {
                y_exponents: n,
                x_exponents: y_to_x_exponents(&n, config),
            });
        }
    }
    Ok(OracleReport {
        member: failures.is_empty(),
        y_terms: expanded.len(),
        failures,
    })
}

pub fn in_r_oracle(f: &Polynomial, config: &KurodaConfig) -> Result<bool, AlgebraError> {
    Ok(oracle_check(f, config)?.member)
}

/// Seeded distribution for randomized property checks: support size
/// uniform in `1..=8`, distinct exponent vectors of total degree at most 6,
/// coefficients `a/b` with `a ∈ [−5, 5] ∖ {0}` and `b ∈ {1, 2, 3}`.
pub fn random_pi_polynomial<R: Rng + ?Sized>(rng: &mut R) -> Polynomial {
    let size = rng.gen_range(1..=8);
    let mut terms = std::collections::BTreeMap::new();
    while terms.len() < size {
        let e: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=6)).collect();
        if e.iter().sum::<i64>() > 6 || terms.contains_key(&e) {
            continue;
        }
        let mut num = rng.gen_range(-5..=4);
        if num >= 0 {
            num += 1;
        }
        let den = rng.gen_range(1..=3);
        terms.insert(e, BigRational::new(BigInt::from(num), BigInt::from(den)));
    }
    Polynomial::from_terms(VarSystem::Pi3, terms).expect("Π exponents are valid")
}
