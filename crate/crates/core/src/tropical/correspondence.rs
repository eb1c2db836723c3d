//! Passage from the refined tropical count to the classical generating function `R_{Δ,ω}`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::EngineError;
use crate::laurent::{BivectorLaurent, ScalarLaurent};
use crate::lattice::{rat, rat_frac, Rational, TwoForm};

/// The classical count recovered from `N^{∂,trop}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correspondence {
    /// No complex pairs: `R(q^{1/4}) = N^{∂,trop}` in `ℤ[Λ²N]`, so `R` is the
    /// tropical count with every exponent multiplied by 4.
    TotallyReal { r: BivectorLaurent },
    /// `S > 0` pairs: `G = (q − q⁻¹)^{−S}⟨ω/2, N^{∂,trop}⟩` and `R(q^{1/4}) = G(q)`.
    WithPairs { s: u32, g: ScalarLaurent, r: ScalarLaurent },
}

impl Correspondence {
    /// `⟨scale·ϖ, R⟩` for the totally real branch; the scalar `R` otherwise.
    pub fn scalar_r(&self, f: &TwoForm, scale: &Rational) -> Result<ScalarLaurent, EngineError> {
        match self {
            Correspondence::TotallyReal { r } => Ok(r.project(f, scale)?),
            Correspondence::WithPairs { r, .. } => Ok(r.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Correspondence::TotallyReal { r } => json!({
                "S": 0,
                "G": Value::Null,
                "R": r.to_json(),
                "R_value_at_1": r.terms().fold(BigInt::from(0), |a, (_, c)| a + c).to_string(),
            }),
            Correspondence::WithPairs { s, g, r } => json!({
                "S": s,
                "G": g.to_json(),
                "G_display": g.to_string(),
                "R": r.to_json(),
                "R_display": r.to_string(),
            }),
        }
    }
}

pub fn correspondence(n_trop: &BivectorLaurent, f: &TwoForm, s: u32) -> Result<Correspondence, EngineError> {
    if s == 0 {
        return Ok(Correspondence::TotallyReal {
            r: n_trop.scale_exponents(&rat(4)),
        });
    }
    let projected = n_trop.project(f, &rat_frac(1, 2))?;
    let g = projected.divide_exact(&ScalarLaurent::q_minus_q_inverse().pow(s))?;
    let r = g.rescale_exponents(&rat(4))?;
    Ok(Correspondence::WithPairs { s, g, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::binomial;
    use crate::lattice::Bivector;

    fn e12(c: Rational) -> Bivector {
        Bivector::elementary(0, 1, c)
    }

    #[test]
    fn totally_real_scales_exponents() {
        let n = binomial(&e12(rat(1)));
        let Correspondence::TotallyReal { r } = correspondence(&n, &TwoForm::standard_rank2(), 0).unwrap() else {
            panic!("expected totally real branch");
        };
        assert_eq!(r, binomial(&e12(rat(4))));
        // substituting q ↦ q^{1/4} recovers the tropical count
        assert_eq!(r.scale_exponents(&rat_frac(1, 4)), n);
    }

    #[test]
    fn one_pair_round_trip() {
        // ⟨ω/2, q^{2e₁∧e₂}⟩ = q, so n = binomial(2e₁∧e₂)·(q^{4e₁∧e₂} + q^{−4e₁∧e₂}) projects to (q − q⁻¹)(q² + q⁻²)
        let f = TwoForm::standard_rank2();
        let mut sum = BivectorLaurent::monomial(e12(rat(4)), BigInt::from(1));
        sum = &sum + &BivectorLaurent::monomial(e12(rat(-4)), BigInt::from(1));
        let n = &binomial(&e12(rat(2))) * &sum;
        let Correspondence::WithPairs { g, r, .. } = correspondence(&n, &f, 1).unwrap() else {
            panic!("expected pair branch");
        };
        assert_eq!(g, ScalarLaurent::from_terms([(8, 1), (-8, 1)]));
        assert_eq!(r, ScalarLaurent::from_terms([(32, 1), (-32, 1)]));
        assert_eq!(r.rescale_exponents(&rat_frac(1, 4)).unwrap(), g);
    }

    #[test]
    fn indivisible_projection() {
        let f = TwoForm::standard_rank2();
        let n = &BivectorLaurent::monomial(e12(rat(2)), BigInt::from(1))
            + &BivectorLaurent::monomial(e12(rat(-2)), BigInt::from(1));
        let err = correspondence(&n, &f, 1).unwrap_err();
        assert_eq!(err.kind(), "NotDivisible");
    }
}
