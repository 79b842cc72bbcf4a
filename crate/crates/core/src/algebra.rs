//! Sparse Laurent polynomials over exact rationals, tagged by the variable
//! system they live in, plus the coordinate changes between systems:
//!
//! * `Π_i = y_i − y₄` ([`expand_pi_to_y`]),
//! * `y_i = x^{δ_i}`, `y₄ = x₄^γ` on exponent vectors ([`expand_y_to_x`]),
//! * `Π` to the per-axis bases `(Π₁, Π₂, Π₂−Π₃)`, `(Π₂, Π₁, Π₁−Π₃)`,
//!   `(Π₃, Π₁, Π₁−Π₂)` ([`reexpress_for_axis`]) and back.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::config::{Axis, KurodaConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable systems differ: {0} vs {1}")]
    SystemMismatch(VarSystem, VarSystem),
    #[error("{system} expects {expected} exponents, got {found}")]
    Arity {
        system: VarSystem,
        expected: usize,
        found: usize,
    },
    #[error("negative exponent {exponent} not allowed in {system}")]
    NegativeExponent { system: VarSystem, exponent: i64 },
    #[error(
        "pole at the evaluation point: coordinate {coordinate} is zero with exponent {exponent}"
    )]
    PoleAtPoint { coordinate: usize, exponent: i64 },
}

/// The coordinate systems in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VarSystem {
    /// `x₁..x₄`, Laurent.
    X4,
    /// `y₁..y₄`.
    Y4,
    /// `Π₁..Π₃`.
    Pi3,
    /// Per-axis basis coordinates `(r₁, r₂, r₃)` positions.
    Axis3,
    /// Chart coordinates `α, β, γ`, Laurent.
    Chart3,
}

impl VarSystem {
    pub fn arity(self) -> usize {
        match self {
            VarSystem::X4 | VarSystem::Y4 => 4,
            VarSystem::Pi3 | VarSystem::Axis3 | VarSystem::Chart3 => 3,
        }
    }

    pub fn allows_negative(self) -> bool {
        matches!(self, VarSystem::X4 | VarSystem::Chart3)
    }

    /// Printed variable names.
    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            VarSystem::X4 => &["X1", "X2", "X3", "X4"],
            VarSystem::Y4 => &["Y1", "Y2", "Y3", "Y4"],
            VarSystem::Pi3 => &["P1", "P2", "P3"],
            VarSystem::Axis3 => &["U1", "U2", "U3"],
            VarSystem::Chart3 => &["alpha", "beta", "gamma"],
        }
    }

    fn check(self, exps: &[i64]) -> Result<(), AlgebraError> {
        if exps.len() != self.arity() {
            return Err(AlgebraError::Arity {
                system: self,
                expected: self.arity(),
                found: exps.len(),
            });
        }
        if !self.allows_negative() {
            if let Some(&e) = exps.iter().find(|&&e| e < 0) {
                return Err(AlgebraError::NegativeExponent {
                    system: self,
                    exponent: e,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for VarSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            VarSystem::X4 => "X4",
            VarSystem::Y4 => "Y4",
            VarSystem::Pi3 => "PI3",
            VarSystem::Axis3 => "AXIS3",
            VarSystem::Chart3 => "CHART3",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExponentVector {
    system: VarSystem,
    exps: Vec<i64>,
}

impl ExponentVector {
    pub fn new(system: VarSystem, exps: Vec<i64>) -> Result<Self, AlgebraError> {
        system.check(&exps)?;
        Ok(ExponentVector { system, exps })
    }

    pub fn zero(system: VarSystem) -> Self {
        ExponentVector {
            system,
            exps: vec![0; system.arity()],
        }
    }

    pub fn system(&self) -> VarSystem {
        self.system
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn add(&self, other: &ExponentVector) -> Result<ExponentVector, AlgebraError> {
        if self.system != other.system {
            return Err(AlgebraError::SystemMismatch(self.system, other.system));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        ExponentVector::new(self.system, exps)
    }
}

/// A finite sum of rational multiples of monomials in one variable system.
/// Zero coefficients are never stored, so equal polynomials have equal term
/// maps. Terms iterate in lexicographic order of their exponent tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    system: VarSystem,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl Polynomial {
    pub fn zero(system: VarSystem) -> Self {
        Polynomial {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(system: VarSystem, c: BigRational) -> Self {
        let mut p = Self::zero(system);
        p.add_term(vec![0; system.arity()], c);
        p
    }

    pub fn one(system: VarSystem) -> Self {
        Self::constant(system, BigRational::one())
    }

    pub fn from_int(system: VarSystem, c: i64) -> Self {
        Self::constant(system, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable with zero-based index `idx`.
    ///
    /// Panics if `idx` is out of range for the system.
    pub fn var(system: VarSystem, idx: usize) -> Self {
        assert!(
            idx < system.arity(),
            "variable index {idx} out of range for {system}"
        );
        let mut exps = vec![0; system.arity()];
        exps[idx] = 1;
        Self::monomial(ExponentVector { system, exps }, BigRational::one())
    }

    pub fn monomial(exps: ExponentVector, coeff: BigRational) -> Self {
        let mut p = Self::zero(exps.system);
        p.add_term(exps.exps, coeff);
        p
    }

    /// Build from `(exponents, coefficient)` pairs, combining duplicates.
    pub fn from_terms<I>(system: VarSystem, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<i64>, BigRational)>,
    {
        let mut p = Self::zero(system);
        for (exps, c) in terms {
            system.check(&exps)?;
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn system(&self) -> VarSystem {
        self.system
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn support(&self) -> impl Iterator<Item = &[i64]> {
        self.terms.keys().map(|e| e.as_slice())
    }

    pub fn coefficient(&self, exps: &[i64]) -> Option<&BigRational> {
        self.terms.get(exps)
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn same_system(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.system == other.system {
            Ok(())
        } else {
            Err(AlgebraError::SystemMismatch(self.system, other.system))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_system(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            system: self.system,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.system);
        }
        Polynomial {
            system: self.system,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.same_system(other)?;
        let mut out = Polynomial::zero(self.system);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.system);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same system");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same system");
            }
        }
        result
    }

    /// Substitute polynomial `images[v]` for variable `v`. The images must
    /// share one system, which becomes the system of the result. Requires
    /// nonnegative exponents.
    pub fn substitute(
        &self,
        images: &[Polynomial],
        target: VarSystem,
    ) -> Result<Polynomial, AlgebraError> {
        if images.len() != self.system.arity() {
            return Err(AlgebraError::Arity {
                system: self.system,
                expected: self.system.arity(),
                found: images.len(),
            });
        }
        if let Some(img) = images.iter().find(|p| p.system != target) {
            return Err(AlgebraError::SystemMismatch(img.system, target));
        }
        // Powers are cached per variable; supports are small.
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (v, &e) in exps.iter().enumerate() {
                if e < 0 {
                    return Err(AlgebraError::NegativeExponent {
                        system: self.system,
                        exponent: e,
                    });
                }
                let e = e as usize;
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul(&images[v])?;
                    powers[v].push(next);
                }
                term = term.mul(&powers[v][e])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Floating-point evaluation. Negative exponents at a zero coordinate
    /// are reported as a pole.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, AlgebraError> {
        if point.len() != self.system.arity() {
            return Err(AlgebraError::Arity {
                system: self.system,
                expected: self.system.arity(),
                found: point.len(),
            });
        }
        let mut sum = 0.0;
        for (exps, c) in &self.terms {
            sum += c.to_f64().unwrap_or(f64::NAN) * eval_monomial(exps, point)?;
        }
        Ok(sum)
    }
}

pub(crate) fn eval_monomial(exps: &[i64], point: &[f64]) -> Result<f64, AlgebraError> {
    let mut value = 1.0;
    for (i, (&e, &x)) in exps.iter().zip(point).enumerate() {
        if e < 0 && x == 0.0 {
            return Err(AlgebraError::PoleAtPoint {
                coordinate: i,
                exponent: e,
            });
        }
        value *= x.powi(e as i32);
    }
    Ok(value)
}

impl fmt::Display for Polynomial {
    /// Prints in the expression syntax accepted by [`crate::expr`], highest
    /// terms first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.system.var_names();
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            let is_const = exps.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    /// `{"system": ..., "terms": [{"exponents": [...], "coefficient": "p/q"}]}`
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponents: &'a [i64],
            coefficient: String,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            system: VarSystem,
            text: String,
            terms: Vec<Term<'a>>,
        }
        Repr {
            system: self.system,
            text: self.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| Term {
                    exponents: e,
                    coefficient: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Substitute `Π_i = y_i − y₄`.
pub fn expand_pi_to_y(f: &Polynomial) -> Result<Polynomial, AlgebraError> {
    if f.system() != VarSystem::Pi3 {
        return Err(AlgebraError::SystemMismatch(f.system(), VarSystem::Pi3));
    }
    let y4 = Polynomial::var(VarSystem::Y4, 3);
    let images: Vec<Polynomial> = (0..3)
        .map(|i| Polynomial::var(VarSystem::Y4, i).sub(&y4))
        .collect::<Result<_, _>>()?;
    f.substitute(&images, VarSystem::Y4)
}

/// `n₁δ₁ + n₂δ₂ + n₃δ₃ + n₄γe₄`, the x-exponent of `y^n`.
pub fn expand_y_to_x(
    n: &ExponentVector,
    config: &KurodaConfig,
) -> Result<ExponentVector, AlgebraError> {
    if n.system() != VarSystem::Y4 {
        return Err(AlgebraError::SystemMismatch(n.system(), VarSystem::Y4));
    }
    Ok(ExponentVector {
        system: VarSystem::X4,
        exps: y_to_x_exponents(n.exps(), config).to_vec(),
    })
}

pub(crate) fn y_to_x_exponents(n: &[i64], config: &KurodaConfig) -> [i64; 4] {
    let mut out = [0i64; 4];
    for (i, &ni) in n.iter().take(3).enumerate() {
        let row = config.signed_row(i);
        for (o, r) in out.iter_mut().zip(row) {
            *o += ni * r;
        }
    }
    out[3] += n[3] * config.gamma();
    out
}

/// Position of `Π_i`, `Π_j`, `Π_k` for the basis of `axis`: the basis is
/// `(Π_i, Π_j, Π_j − Π_k)`.
pub fn axis_permutation(axis: Axis) -> [usize; 3] {
    let (j, k) = axis.others();
    [axis.index(), j.index(), k.index()]
}

/// Rewrite `f(Π)` as `f^{[i]}(u₁, u₂, u₃)` where `(u₁, u₂, u₃)` is the
/// basis of `axis`. The support of the result is `m_i(f)`.
pub fn reexpress_for_axis(f: &Polynomial, axis: Axis) -> Result<Polynomial, AlgebraError> {
    if f.system() != VarSystem::Pi3 {
        return Err(AlgebraError::SystemMismatch(f.system(), VarSystem::Pi3));
    }
    let [i, j, k] = axis_permutation(axis);
    let u = |v| Polynomial::var(VarSystem::Axis3, v);
    let mut images = vec![Polynomial::zero(VarSystem::Axis3); 3];
    images[i] = u(0);
    images[j] = u(1);
    // Π_k = u₂ − u₃
    images[k] = u(1).sub(&u(2))?;
    f.substitute(&images, VarSystem::Axis3)
}

/// Inverse of [`reexpress_for_axis`].
pub fn axis_to_pi(g: &Polynomial, axis: Axis) -> Result<Polynomial, AlgebraError> {
    if g.system() != VarSystem::Axis3 {
        return Err(AlgebraError::SystemMismatch(g.system(), VarSystem::Axis3));
    }
    let [i, j, k] = axis_permutation(axis);
    let p = |v| Polynomial::var(VarSystem::Pi3, v);
    let images = vec![p(i), p(j), p(j).sub(&p(k))?];
    g.substitute(&images, VarSystem::Pi3)
}

/// Evaluate `f` at a floating point of matching arity.
pub fn evaluate_numeric(f: &Polynomial, point: &[f64]) -> Result<f64, AlgebraError> {
    f.evaluate(point)
}
