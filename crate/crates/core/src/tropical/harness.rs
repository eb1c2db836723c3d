//! Repeated counting under independent random constraints.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::solve::{check_genericity, count, TropicalConstraints};
use super::EngineError;
use crate::config::MonomialBasis;
use crate::laurent::BivectorLaurent;
use crate::lattice::{LatticeVector, Rational, TwoForm};

/// Degenerate draws tolerated per trial before giving up.
pub const MAX_RESAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Numerators are uniform in `[−bound, bound]`.
    pub numerator_bound: i64,
    /// Denominators are uniform in `[1, bound]`.
    pub denominator_bound: i64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            numerator_bound: 1_000_000,
            denominator_bound: 1,
        }
    }
}

fn draw_rational(rng: &mut ChaCha8Rng, cfg: &SamplingConfig) -> Rational {
    let n = rng.gen_range(-cfg.numerator_bound..=cfg.numerator_bound);
    let d = rng.gen_range(1..=cfg.denominator_bound.max(1));
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn draw_constraints(rng: &mut ChaCha8Rng, num_p: usize, num_mu: usize, cfg: &SamplingConfig) -> TropicalConstraints {
    let p = (0..num_p).map(|_| draw_rational(rng, cfg)).collect();
    let mu = (0..num_mu).map(|_| draw_rational(rng, cfg)).collect();
    TropicalConstraints { p, mu }
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub constraints: TropicalConstraints,
    pub polynomial: BivectorLaurent,
    pub solutions: usize,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    /// All completed trials produced the same polynomial and no violation occurred.
    pub invariant: bool,
    /// The polynomial of the first trial.
    pub polynomial: Option<BivectorLaurent>,
    pub trials: Vec<TrialOutcome>,
    /// A genericity failure of `ω` on the degree; no further trials are run.
    pub violation: Option<EngineError>,
    /// Number of degenerate draws that were discarded.
    pub resamples: usize,
}

impl InvarianceReport {
    pub fn solutions_per_trial(&self) -> Vec<usize> {
        self.trials.iter().map(|t| t.solutions).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invariant": self.invariant,
            "polynomial": self.polynomial.as_ref().map(BivectorLaurent::to_json),
            "polynomial_display": self.polynomial.as_ref().map(ToString::to_string),
            "solutions_per_trial": self.solutions_per_trial(),
            "resamples": self.resamples,
            "violation": self.violation.as_ref().map(|e| json!({ "kind": e.kind(), "message": e.to_string() })),
            "trials": self.trials.iter().map(|t| json!({
                "constraints": t.constraints.to_json(),
                "polynomial": t.polynomial.to_json(),
                "solutions": t.solutions,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Counts under `trials` independent draws seeded by `seed` with default sampling.
pub fn invariance_harness(
    tdeg: &[LatticeVector],
    f: &TwoForm,
    basis: &MonomialBasis,
    trials: usize,
    seed: u64,
) -> Result<InvarianceReport, EngineError> {
    invariance_harness_with(tdeg, f, basis, trials, seed, &SamplingConfig::default())
}

pub fn invariance_harness_with(
    tdeg: &[LatticeVector],
    f: &TwoForm,
    basis: &MonomialBasis,
    trials: usize,
    seed: u64,
    sampling: &SamplingConfig,
) -> Result<InvarianceReport, EngineError> {
    if trials < 2 {
        return Err(EngineError::Shape("the harness needs at least two trials".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InvarianceReport {
        invariant: true,
        polynomial: None,
        trials: Vec::with_capacity(trials),
        violation: None,
        resamples: 0,
    };
    if let Err(e) = check_genericity(tdeg, f) {
        report.invariant = false;
        report.violation = Some(e);
        return Ok(report);
    }
    'trials: for _ in 0..trials {
        let mut degenerate = 0;
        loop {
            let c = draw_constraints(&mut rng, basis.monomials.len(), tdeg.len().saturating_sub(1), sampling);
            match count(tdeg, f, basis, &c) {
                Ok(r) => {
                    let first = report.polynomial.get_or_insert_with(|| r.polynomial.clone());
                    if *first != r.polynomial {
                        report.invariant = false;
                    }
                    report.trials.push(TrialOutcome {
                        constraints: c,
                        polynomial: r.polynomial,
                        solutions: r.solutions.len(),
                    });
                    break;
                }
                Err(EngineError::DegenerateConstraints(_)) => {
                    degenerate += 1;
                    report.resamples += 1;
                    if degenerate >= MAX_RESAMPLES {
                        return Err(EngineError::ExhaustedResampling(degenerate));
                    }
                }
                Err(e @ (EngineError::GenericityViolation(_) | EngineError::FlatVertex)) => {
                    report.invariant = false;
                    report.violation = Some(e);
                    break 'trials;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}
