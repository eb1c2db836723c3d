//! Laurent polynomials with integer coefficients.
//!
//! [`BivectorLaurent`] lives in `ℤ[Λ²N]` (exponents are bivectors) and
//! [`ScalarLaurent`] in `ℤ[q^{±1/4}]`, its exponents counted in quarter units.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{rat, rational_to_string, Bivector, Rational, TwoForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("exponent {0} is not a multiple of 1/4")]
    NonRepresentable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible: nonzero remainder")]
    NotDivisible,
}

fn add_coeff<K: Ord + Clone>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key.clone()).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn coeff_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// A finite sum `Σ c_w q^w` with `w ∈ Λ²N ⊗ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivectorLaurent {
    terms: BTreeMap<Bivector, BigInt>,
}

impl BivectorLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Bivector::zero(), BigInt::one())
    }

    pub fn monomial(w: Bivector, c: BigInt) -> Self {
        let mut p = Self::zero();
        add_coeff(&mut p.terms, w, c);
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Bivector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Bivector) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Evaluates `scale · ϖ` on every exponent, giving a polynomial in `q^{1/4}`.
    pub fn project(&self, f: &TwoForm, scale: &Rational) -> Result<ScalarLaurent, LaurentError> {
        let mut out = ScalarLaurent::zero();
        for (w, c) in &self.terms {
            let e = f.pair_bivector(w) * scale;
            let q = quarters(&e)?;
            add_coeff(&mut out.terms, q, c.clone());
        }
        Ok(out)
    }

    /// `q^w ↦ q^{factor·w}`.
    pub fn scale_exponents(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            add_coeff(&mut out.terms, w.scale(factor), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    let exponent: serde_json::Map<String, Value> = w
                        .terms()
                        .map(|(&(i, j), x)| (format!("e{}^e{}", i + 1, j + 1), json!(rational_to_string(x))))
                        .collect();
                    json!({ "exponent": exponent, "coefficient": coeff_json(c) })
                })
                .collect(),
        )
    }
}

/// `q^w − q^{−w}`, which is zero for `w = 0`.
pub fn binomial(w: &Bivector) -> BivectorLaurent {
    let mut p = BivectorLaurent::monomial(w.clone(), BigInt::one());
    add_coeff(&mut p.terms, -w, -BigInt::one());
    p
}

impl Add for &BivectorLaurent {
    type Output = BivectorLaurent;
    fn add(self, rhs: &BivectorLaurent) -> BivectorLaurent {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            add_coeff(&mut out.terms, w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &BivectorLaurent {
    type Output = BivectorLaurent;
    fn neg(self) -> BivectorLaurent {
        BivectorLaurent {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &BivectorLaurent {
    type Output = BivectorLaurent;
    fn sub(self, rhs: &BivectorLaurent) -> BivectorLaurent {
        self + &(-rhs)
    }
}

impl Mul for &BivectorLaurent {
    type Output = BivectorLaurent;
    fn mul(self, rhs: &BivectorLaurent) -> BivectorLaurent {
        let mut out = BivectorLaurent::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                add_coeff(&mut out.terms, w1 + w2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivectorLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            write_sign(f, k, c)?;
            let mag = c.abs();
            if !mag.is_one() || w.is_zero() {
                write!(f, "{mag}")?;
            }
            if !w.is_zero() {
                write!(f, "q^{{{w}}}")?;
            }
        }
        Ok(())
    }
}

fn write_sign(f: &mut fmt::Formatter<'_>, k: usize, c: &BigInt) -> fmt::Result {
    match (k, c.is_negative()) {
        (0, true) => write!(f, "-"),
        (0, false) => Ok(()),
        (_, true) => write!(f, " - "),
        (_, false) => write!(f, " + "),
    }
}

fn quarters(e: &Rational) -> Result<i64, LaurentError> {
    let q = e * rat(4);
    if !q.is_integer() {
        return Err(LaurentError::NonRepresentable(rational_to_string(e)));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| LaurentError::NonRepresentable(rational_to_string(e)))
}

/// A finite sum `Σ c_k q^{k/4}`, keyed by the quarter count `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl ScalarLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · q^{quarters/4}`.
    pub fn monomial(quarters: i64, c: BigInt) -> Self {
        let mut p = Self::zero();
        add_coeff(&mut p.terms, quarters, c);
        p
    }

    /// Builds from `(quarter exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            add_coeff(&mut p.terms, e, BigInt::from(c));
        }
        p
    }

    /// `q − q⁻¹`.
    pub fn q_minus_q_inverse() -> Self {
        Self::from_terms([(4, 1), (-4, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, quarters: i64) -> BigInt {
        self.terms.get(&quarters).cloned().unwrap_or_else(BigInt::zero)
    }

    fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `P / D`, failing unless `D` divides `P` in `ℤ[q^{±1/4}]`.
    pub fn divide_exact(&self, d: &ScalarLaurent) -> Result<ScalarLaurent, LaurentError> {
        let (d_top, d_lead) = d.leading().ok_or(LaurentError::DivisionByZero)?;
        let d_low = d.lowest_exponent().expect("nonzero divisor");
        let Some(p_low) = self.lowest_exponent() else {
            return Ok(Self::zero());
        };
        let floor = p_low - d_low;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = e - d_top;
            if qe < floor {
                return Err(LaurentError::NotDivisible);
            }
            let (qc, r) = c.div_rem(d_lead);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let step = Self::monomial(qe, qc);
            rem = &rem - &(&step * d);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }

    /// `q^e ↦ q^{factor·e}`.
    pub fn rescale_exponents(&self, factor: &Rational) -> Result<ScalarLaurent, LaurentError> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let scaled = rat(*e) * factor;
            if !scaled.is_integer() {
                return Err(LaurentError::NonRepresentable(rational_to_string(
                    &(scaled / rat(4)),
                )));
            }
            let q = scaled
                .to_integer()
                .to_i64()
                .ok_or_else(|| LaurentError::NonRepresentable(rational_to_string(&scaled)))?;
            add_coeff(&mut out.terms, q, c.clone());
        }
        Ok(out)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponent": e, "coefficient": coeff_json(c) }))
                .collect(),
        )
    }
}

impl Add for &ScalarLaurent {
    type Output = ScalarLaurent;
    fn add(self, rhs: &ScalarLaurent) -> ScalarLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            add_coeff(&mut out.terms, *e, c.clone());
        }
        out
    }
}

impl Neg for &ScalarLaurent {
    type Output = ScalarLaurent;
    fn neg(self) -> ScalarLaurent {
        ScalarLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &ScalarLaurent {
    type Output = ScalarLaurent;
    fn sub(self, rhs: &ScalarLaurent) -> ScalarLaurent {
        self + &(-rhs)
    }
}

impl Mul for &ScalarLaurent {
    type Output = ScalarLaurent;
    fn mul(self, rhs: &ScalarLaurent) -> ScalarLaurent {
        let mut out = ScalarLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                add_coeff(&mut out.terms, e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for ScalarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            write_sign(f, k, c)?;
            let mag = c.abs();
            if !mag.is_one() || *e == 0 {
                write!(f, "{mag}")?;
            }
            if *e != 0 {
                let r = Rational::new(BigInt::from(*e), BigInt::from(4));
                write!(f, "q^{{{}}}", rational_to_string(&r))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rat_frac, TwoForm};

    fn e12(c: i64) -> Bivector {
        Bivector::elementary(0, 1, rat(c))
    }

    #[test]
    fn ring_examples() {
        let p = &binomial(&e12(1)) + &BivectorLaurent::monomial(e12(3), BigInt::from(5));
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(&p * &BivectorLaurent::one(), p);
        // (q^w − q^{−w})² = q^{2w} − 2 + q^{−2w}
        let b = binomial(&e12(1));
        let sq = &b * &b;
        let expected = &(&BivectorLaurent::monomial(e12(2), BigInt::one())
            + &BivectorLaurent::monomial(Bivector::zero(), BigInt::from(-2)))
            + &BivectorLaurent::monomial(e12(-2), BigInt::one());
        assert_eq!(sq, expected);
    }

    #[test]
    fn binomial_examples() {
        assert!(binomial(&Bivector::zero()).is_zero());
        let b = binomial(&e12(1));
        assert_eq!(b.coeff(&e12(1)), BigInt::one());
        assert_eq!(b.coeff(&e12(-1)), -BigInt::one());
        assert_eq!(b.len(), 2);
        assert_eq!(binomial(&e12(-1)), -&b);
        // ϖ = e₁*∧e₃* in rank 3 kills e₁∧e₂, so both exponents collide at 0.
        let f = TwoForm::from_ints(&[vec![0, 0, 1], vec![0, 0, 0], vec![-1, 0, 0]]).unwrap();
        assert!(b.project(&f, &rat(1)).unwrap().is_zero());
    }

    #[test]
    fn project_examples() {
        let det = TwoForm::standard_rank2();
        let p = BivectorLaurent::monomial(e12(1), BigInt::one());
        assert_eq!(
            p.project(&det, &rat_frac(1, 2)).unwrap(),
            ScalarLaurent::from_terms([(2, 1)])
        );
        assert!(BivectorLaurent::zero().project(&det, &rat(1)).unwrap().is_zero());
        // Ω of rank 3 with kernel bivector e₂∧e₃ − e₁∧e₂ (ϖ(e₁∧e₂) = ϖ(e₂∧e₃) = 1).
        let f = TwoForm::from_ints(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let w1 = e12(1);
        let w2 = &w1 + &(&Bivector::elementary(1, 2, rat(1)) - &e12(1));
        assert_ne!(w1, w2);
        let p = &BivectorLaurent::monomial(w1, BigInt::one()) + &BivectorLaurent::monomial(w2, BigInt::one());
        assert_eq!(p.project(&f, &rat(1)).unwrap(), ScalarLaurent::from_terms([(4, 2)]));
        // 1/3 · 1 is off the quarter grid
        assert!(matches!(
            BivectorLaurent::monomial(e12(1), BigInt::one()).project(&det, &rat_frac(1, 3)),
            Err(LaurentError::NonRepresentable(_))
        ));
    }

    #[test]
    fn divide_examples() {
        let d = ScalarLaurent::q_minus_q_inverse();
        assert_eq!(d.pow(2).divide_exact(&d).unwrap(), d);
        // q + q⁻¹ = (q − q⁻¹)·1 + 2q⁻¹ leaves a remainder
        let p = ScalarLaurent::from_terms([(4, 1), (-4, 1)]);
        assert_eq!(p.divide_exact(&d), Err(LaurentError::NotDivisible));
        assert_eq!(p.divide_exact(&ScalarLaurent::one()).unwrap(), p);
        assert_eq!(p.divide_exact(&ScalarLaurent::zero()), Err(LaurentError::DivisionByZero));
        // leading coefficient must divide exactly
        let two = ScalarLaurent::from_terms([(0, 2)]);
        assert_eq!(ScalarLaurent::from_terms([(0, 3)]).divide_exact(&two), Err(LaurentError::NotDivisible));
    }

    #[test]
    fn rescale_examples() {
        let p = ScalarLaurent::from_terms([(2, 1), (-7, 3)]);
        assert_eq!(p.rescale_exponents(&rat(1)).unwrap(), p);
        assert_eq!(
            ScalarLaurent::from_terms([(2, 1)]).rescale_exponents(&rat(4)).unwrap(),
            ScalarLaurent::from_terms([(8, 1)])
        );
        assert_eq!(
            ScalarLaurent::q_minus_q_inverse().rescale_exponents(&rat_frac(1, 4)).unwrap(),
            ScalarLaurent::from_terms([(1, 1), (-1, -1)])
        );
        assert!(ScalarLaurent::from_terms([(1, 1)]).rescale_exponents(&rat_frac(1, 2)).is_err());
    }

    #[test]
    fn display() {
        let p = ScalarLaurent::from_terms([(4, 1), (-4, -1), (2, 3)]);
        assert_eq!(p.to_string(), "q^{1} + 3q^{1/2} - q^{-1}");
        assert_eq!(binomial(&e12(1)).to_string(), "-q^{-e1∧e2} + q^{e1∧e2}");
    }
}
