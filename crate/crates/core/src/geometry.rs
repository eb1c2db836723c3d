//! Parametrized real rational curves: moments, quantum indices, the closed
//! logarithmic area and crossing numbers of reducible curves.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{eval_f64_matrix, wedge, Bivector, LatticeError, LatticeVector, TwoForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vectors of rank {found} in a curve of rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("puncture vectors do not balance: Σ n + 2Σ n' = {0}")]
    NotBalanced(LatticeVector),
    #[error("more than one puncture at infinity")]
    MultipleInfinity,
    #[error("two punctures coincide")]
    CoincidentPunctures,
    #[error("complex puncture {0} is not in the upper half-plane")]
    NotUpperHalfPlane(usize),
    #[error("the moment of a puncture at infinity is not defined in this chart")]
    InfinitePuncture,
    #[error("real punctures present but none at infinity")]
    NoInfinityPuncture,
    #[error("real puncture {0} is already at infinity")]
    AlreadyAtInfinity(usize),
    #[error("puncture index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("argument {0} is 0 or π")]
    DegenerateArgument(f64),
    #[error("cyclic component {0} does not sum to zero")]
    NonClosedComponent(usize),
    #[error("the node coincides with a puncture")]
    NodeAtPuncture,
    #[error("smoothing shift δ moves a point onto a puncture")]
    ShiftCollision,
    #[error("distance {residual} from k = {k} exceeds the tolerance")]
    ResidualTooLarge { k: f64, residual: f64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("invalid curve data: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Inf,
}

impl Alpha {
    pub fn finite(self) -> Option<f64> {
        match self {
            Alpha::Finite(a) => Some(a),
            Alpha::Inf => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealPuncture {
    pub alpha: Alpha,
    pub n: LatticeVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPuncture {
    /// The member of the conjugate pair with positive imaginary part.
    pub beta: Complex64,
    pub n: LatticeVector,
}

/// `y ↦ ξ + Σ nᵢ log|y − αᵢ| + Σ n'ⱼ log|(y − βⱼ)(y − β̄ⱼ)|` on the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametrizedCurve {
    xi: Vec<f64>,
    real: Vec<RealPuncture>,
    complex: Vec<ComplexPuncture>,
}

/// Index of a puncture: real punctures and complex pairs are numbered separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PunctureRef {
    Real(usize),
    Complex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Real(f64),
    /// Imaginary part reduced to `(−π, π]`.
    Complex(Complex64),
}

fn check_rank(expected: usize, v: &LatticeVector) -> Result<(), GeometryError> {
    if v.rank() != expected {
        return Err(GeometryError::RankMismatch {
            expected,
            found: v.rank(),
        });
    }
    Ok(())
}

/// Reduces an angle to `(−π, π]`.
pub fn principal_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

fn omega_f64(f: &TwoForm, u: &LatticeVector, v: &LatticeVector) -> f64 {
    f.eval(u, v).expect("ranks checked").to_f64().expect("finite rational")
}

impl ParametrizedCurve {
    pub fn new(xi: Vec<f64>, real: Vec<RealPuncture>, complex: Vec<ComplexPuncture>) -> Result<Self, GeometryError> {
        let rank = xi.len();
        let mut sum = LatticeVector::zero(rank);
        for p in &real {
            check_rank(rank, &p.n)?;
            sum = &sum + &p.n;
        }
        for (j, p) in complex.iter().enumerate() {
            check_rank(rank, &p.n)?;
            sum = &sum + &p.n.scale(2);
            if !(p.beta.im > 0.0) || !p.beta.re.is_finite() || !p.beta.im.is_finite() {
                return Err(GeometryError::NotUpperHalfPlane(j));
            }
        }
        if !sum.is_zero() {
            return Err(GeometryError::NotBalanced(sum));
        }
        if real.iter().filter(|p| p.alpha == Alpha::Inf).count() > 1 {
            return Err(GeometryError::MultipleInfinity);
        }
        let finite: Vec<f64> = real.iter().filter_map(|p| p.alpha.finite()).collect();
        if finite.iter().any(|a| !a.is_finite()) {
            return Err(GeometryError::Schema("real puncture positions must be finite or \"inf\"".into()));
        }
        for (i, a) in finite.iter().enumerate() {
            if finite[..i].contains(a) {
                return Err(GeometryError::CoincidentPunctures);
            }
        }
        for (j, p) in complex.iter().enumerate() {
            if complex[..j].iter().any(|q| q.beta == p.beta) {
                return Err(GeometryError::CoincidentPunctures);
            }
        }
        Ok(ParametrizedCurve { xi, real, complex })
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn real(&self) -> &[RealPuncture] {
        &self.real
    }

    pub fn complex(&self) -> &[ComplexPuncture] {
        &self.complex
    }

    pub fn infinity_index(&self) -> Option<usize> {
        self.real.iter().position(|p| p.alpha == Alpha::Inf)
    }

    pub fn is_totally_real(&self) -> bool {
        self.complex.is_empty()
    }

    /// The same curve with `ξ` translated by `v`.
    pub fn shifted(&self, v: &[f64]) -> Self {
        let mut c = self.clone();
        for (x, d) in c.xi.iter_mut().zip(v) {
            *x += d;
        }
        c
    }

    /// The image under `y ↦ ȳ`, parametrized again on the upper half-plane.
    /// As a set this is the conjugate half with its boundary traversed backwards,
    /// which the orientation-preserving chart `y ↦ −y` realizes.
    pub fn reversed(&self) -> Self {
        let real = self
            .real
            .iter()
            .map(|p| RealPuncture {
                alpha: match p.alpha {
                    Alpha::Finite(a) => Alpha::Finite(-a),
                    Alpha::Inf => Alpha::Inf,
                },
                n: p.n.clone(),
            })
            .collect();
        let complex = self
            .complex
            .iter()
            .map(|p| ComplexPuncture {
                beta: Complex64::new(-p.beta.re, p.beta.im),
                n: p.n.clone(),
            })
            .collect();
        ParametrizedCurve {
            xi: self.xi.clone(),
            real,
            complex,
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, GeometryError> {
        let cfg: CurveConfig = serde_json::from_value(v.clone()).map_err(|e| GeometryError::Schema(e.to_string()))?;
        cfg.build()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi,
            "real": self.real.iter().map(|p| json!({
                "alpha": match p.alpha { Alpha::Finite(a) => json!(a), Alpha::Inf => json!("inf") },
                "n": p.n.coords(),
            })).collect::<Vec<_>>(),
            "complex": self.complex.iter().map(|p| json!({
                "beta": [p.beta.re, p.beta.im],
                "n": p.n.coords(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaConfig {
    Value(f64),
    Tag(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealConfig {
    pub alpha: AlphaConfig,
    pub n: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexConfig {
    pub beta: [f64; 2],
    pub n: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveConfig {
    pub xi: Vec<f64>,
    #[serde(default)]
    pub real: Vec<RealConfig>,
    #[serde(default)]
    pub complex: Vec<ComplexConfig>,
}

impl CurveConfig {
    pub fn build(&self) -> Result<ParametrizedCurve, GeometryError> {
        let real = self
            .real
            .iter()
            .map(|r| {
                let alpha = match &r.alpha {
                    AlphaConfig::Value(a) => Alpha::Finite(*a),
                    AlphaConfig::Tag(t) if t.eq_ignore_ascii_case("inf") => Alpha::Inf,
                    AlphaConfig::Tag(t) => return Err(GeometryError::Schema(format!("bad alpha {t:?}"))),
                };
                Ok(RealPuncture {
                    alpha,
                    n: LatticeVector::new(r.n.clone()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let complex = self
            .complex
            .iter()
            .map(|c| ComplexPuncture {
                beta: Complex64::new(c.beta[0], c.beta[1]),
                n: LatticeVector::new(c.n.clone()),
            })
            .collect();
        ParametrizedCurve::new(self.xi.clone(), real, complex)
    }
}

/// `μ_k = ω(n_k, ξ) + Σ 2ω(n_k, nᵢ) log(λ_k − λᵢ) + Σ 2ω(n_k, n'ⱼ) log[(λ_k − βⱼ)(λ_k − β̄ⱼ)]`,
/// the coefficient 2 being that of the doubled degree.
pub fn moment(c: &ParametrizedCurve, f: &TwoForm, k: PunctureRef) -> Result<Moment, GeometryError> {
    if f.rank() != c.rank() {
        return Err(GeometryError::RankMismatch {
            expected: c.rank(),
            found: f.rank(),
        });
    }
    let fm = f.to_f64();
    let xi = &c.xi;
    match k {
        PunctureRef::Real(k) => {
            let p = c.real.get(k).ok_or(GeometryError::IndexOutOfRange(k))?;
            let lk = p.alpha.finite().ok_or(GeometryError::InfinitePuncture)?;
            let mut mu = eval_f64_matrix(&fm, &p.n.to_f64(), xi);
            for (i, q) in c.real.iter().enumerate() {
                if i == k {
                    continue;
                }
                let Some(li) = q.alpha.finite() else { continue };
                mu += 2.0 * omega_f64(f, &p.n, &q.n) * (lk - li).abs().ln();
            }
            for q in &c.complex {
                mu += 2.0 * omega_f64(f, &p.n, &q.n) * (Complex64::new(lk, 0.0) - q.beta).norm_sqr().ln();
            }
            Ok(Moment::Real(mu))
        }
        PunctureRef::Complex(k) => {
            let p = c.complex.get(k).ok_or(GeometryError::IndexOutOfRange(k))?;
            let bk = p.beta;
            let mut mu = Complex64::new(eval_f64_matrix(&fm, &p.n.to_f64(), xi), 0.0);
            for q in &c.real {
                let Some(li) = q.alpha.finite() else { continue };
                mu += 2.0 * omega_f64(f, &p.n, &q.n) * (bk - li).ln();
            }
            for (j, q) in c.complex.iter().enumerate() {
                if j == k {
                    continue;
                }
                mu += 2.0 * omega_f64(f, &p.n, &q.n) * ((bk - q.beta).ln() + (bk - q.beta.conj()).ln());
            }
            Ok(Moment::Complex(Complex64::new(mu.re, principal_angle(mu.im))))
        }
    }
}

/// `Σ μ_real + 2Σ Re μ_complex`, which vanishes by the Menelaus relation.
pub fn menelaus_defect(c: &ParametrizedCurve, f: &TwoForm) -> Result<f64, GeometryError> {
    let mut total = 0.0;
    for k in 0..c.real.len() {
        if let Moment::Real(m) = moment(c, f, PunctureRef::Real(k))? {
            total += m;
        }
    }
    for k in 0..c.complex.len() {
        if let Moment::Complex(m) = moment(c, f, PunctureRef::Complex(k))? {
            total += 2.0 * m.re;
        }
    }
    Ok(total)
}

/// Boundary cocharacters of one real component in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicComponent {
    pub vectors: Vec<LatticeVector>,
}

/// `Σ_k Σ_{i<j} nᵢ^{(k)} ∧ nⱼ^{(k)}`, starting each cycle at its first entry.
pub fn quantum_index_toric(components: &[CyclicComponent]) -> Result<Bivector, GeometryError> {
    let mut h = Bivector::zero();
    for (k, comp) in components.iter().enumerate() {
        let Some(first) = comp.vectors.first() else { continue };
        let rank = first.rank();
        for v in &comp.vectors {
            check_rank(rank, v)?;
        }
        if !LatticeVector::sum(rank, &comp.vectors).is_zero() {
            return Err(GeometryError::NonClosedComponent(k));
        }
        let mut partial = LatticeVector::zero(rank);
        for v in &comp.vectors {
            // Σ_{i<j} nᵢ∧nⱼ = Σ_j (Σ_{i<j} nᵢ)∧nⱼ
            h = &h + &wedge(&partial, v)?;
            partial = &partial + v;
        }
    }
    Ok(h)
}

/// `n₁∧n₂` for a balanced triple, where it equals `n₂∧n₃` and `n₃∧n₁`.
pub fn h_trivalent(n1: &LatticeVector, n2: &LatticeVector, n3: &LatticeVector) -> Result<Bivector, GeometryError> {
    let sum = &(n1 + n2) + n3;
    if !sum.is_zero() {
        return Err(GeometryError::NotBalanced(sum));
    }
    let h = wedge(n1, n2)?;
    assert_eq!(h, wedge(n2, n3)?, "balanced triple must have n₁∧n₂ = n₂∧n₃");
    assert_eq!(h, wedge(n3, n1)?, "balanced triple must have n₁∧n₂ = n₃∧n₁");
    Ok(h)
}

/// The real boundary of a totally real curve as one cyclic component: finite
/// punctures in increasing order, the puncture at infinity last.
pub fn boundary_cycle(c: &ParametrizedCurve) -> CyclicComponent {
    let mut finite: Vec<(f64, &LatticeVector)> =
        c.real.iter().filter_map(|p| p.alpha.finite().map(|a| (a, &p.n))).collect();
    finite.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut vectors: Vec<LatticeVector> = finite.into_iter().map(|(_, n)| n.clone()).collect();
    if let Some(i) = c.infinity_index() {
        vectors.push(c.real[i].n.clone());
    }
    CyclicComponent { vectors }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogArea {
    pub value: f64,
    /// The curve has no real punctures, a case outside the normalization `α_r = ∞`.
    pub no_real_punctures: bool,
}

fn sgn_between(a: Alpha, b: Alpha) -> f64 {
    match (a, b) {
        (Alpha::Finite(x), Alpha::Finite(y)) => (y - x).signum(),
        (Alpha::Finite(_), Alpha::Inf) => 1.0,
        (Alpha::Inf, Alpha::Finite(_)) => -1.0,
        (Alpha::Inf, Alpha::Inf) => 0.0,
    }
}

/// Closed form of `∫_H (log∘f)^*ϖ`.
///
/// The real/complex interaction is `2π ω(n'ⱼ, nᵢ) arctan((αᵢ − Re βⱼ)/Im βⱼ)`;
/// with the arguments of `ω` the other way round the value disagrees with
/// direct integration.
pub fn log_area_closed(c: &ParametrizedCurve, f: &TwoForm) -> Result<LogArea, GeometryError> {
    if f.rank() != c.rank() {
        return Err(GeometryError::RankMismatch {
            expected: c.rank(),
            found: f.rank(),
        });
    }
    if !c.real.is_empty() && c.infinity_index().is_none() {
        return Err(GeometryError::NoInfinityPuncture);
    }
    let mut area = 0.0;
    for (i, p) in c.real.iter().enumerate() {
        for q in &c.real[i + 1..] {
            area += omega_f64(f, &p.n, &q.n) * PI * PI / 2.0 * sgn_between(p.alpha, q.alpha);
        }
    }
    for p in &c.real {
        for q in &c.complex {
            let at = match p.alpha {
                Alpha::Finite(a) => ((a - q.beta.re) / q.beta.im).atan(),
                Alpha::Inf => PI / 2.0,
            };
            area += omega_f64(f, &q.n, &p.n) * 2.0 * PI * at;
        }
    }
    for (j, p) in c.complex.iter().enumerate() {
        for q in &c.complex[j + 1..] {
            let at = ((q.beta.re - p.beta.re) / (q.beta.im + p.beta.im)).atan();
            area += omega_f64(f, &p.n, &q.n) * 4.0 * PI * at;
        }
    }
    Ok(LogArea {
        value: area,
        no_real_punctures: c.real.is_empty(),
    })
}

/// Reparametrizes by `z = 1/(p − y)`, an orientation-preserving real Möbius
/// map sending `p` to infinity. `ξ` absorbs the constants so that moments
/// (with their doubled coefficients) are preserved; `skip` names a real
/// puncture sitting at `p`.
fn reparametrize_at(c: &ParametrizedCurve, p: f64, skip: Option<usize>) -> ParametrizedCurve {
    let rank = c.rank();
    let mut shift = vec![0.0; rank];
    let add = |shift: &mut Vec<f64>, n: &LatticeVector, w: f64| {
        for (s, &ni) in shift.iter_mut().zip(n.coords()) {
            *s += ni as f64 * w;
        }
    };
    let mut real = Vec::with_capacity(c.real.len());
    for (i, q) in c.real.iter().enumerate() {
        let alpha = if Some(i) == skip {
            Alpha::Inf
        } else {
            match q.alpha {
                Alpha::Inf => Alpha::Finite(0.0),
                Alpha::Finite(a) => {
                    add(&mut shift, &q.n, 2.0 * (p - a).abs().ln());
                    Alpha::Finite(1.0 / (p - a))
                }
            }
        };
        real.push(RealPuncture { alpha, n: q.n.clone() });
    }
    let complex = c
        .complex
        .iter()
        .map(|q| {
            let d = Complex64::new(p, 0.0) - q.beta;
            add(&mut shift, &q.n, 2.0 * d.norm_sqr().ln());
            ComplexPuncture {
                beta: d.inv(),
                n: q.n.clone(),
            }
        })
        .collect();
    let xi = c.xi.iter().zip(&shift).map(|(x, s)| x + s).collect();
    ParametrizedCurve { xi, real, complex }
}

/// Moves real puncture `which` to infinity by an orientation-preserving Möbius map.
pub fn mobius_normalize(c: &ParametrizedCurve, which: usize) -> Result<ParametrizedCurve, GeometryError> {
    let p = c.real.get(which).ok_or(GeometryError::IndexOutOfRange(which))?;
    let a = p.alpha.finite().ok_or(GeometryError::AlreadyAtInfinity(which))?;
    Ok(reparametrize_at(c, a, Some(which)))
}

/// Moves the point `p` of the real axis (not a puncture) to infinity, so
/// that every puncture becomes finite.
pub fn mobius_finite_chart(c: &ParametrizedCurve, p: f64) -> Result<ParametrizedCurve, GeometryError> {
    if c.real.iter().any(|q| q.alpha == Alpha::Finite(p)) {
        return Err(GeometryError::CoincidentPunctures);
    }
    Ok(reparametrize_at(c, p, None))
}

/// `(ε, θ)` with `εθπ` the principal argument `z`, `ε = ±1` and `0 < θ < 1`.
pub fn theta_epsilon_from_argument(arg: f64) -> Result<(i32, f64), GeometryError> {
    let a = principal_angle(arg);
    if a == 0.0 || a == PI {
        return Err(GeometryError::DegenerateArgument(a));
    }
    Ok((if a > 0.0 { 1 } else { -1 }, a.abs() / PI))
}

pub fn theta_epsilon_from_value(z: Complex64) -> Result<(i32, f64), GeometryError> {
    if z.im == 0.0 {
        return Err(GeometryError::DegenerateArgument(z.arg()));
    }
    theta_epsilon_from_argument(z.arg())
}

/// Argument of the monomial `ι_{n'ⱼ}ω` at the puncture `βⱼ` (upper member of
/// the pair) on the degree-`Δ` curve.
pub fn monomial_argument(c: &ParametrizedCurve, f: &TwoForm, j: usize) -> Result<f64, GeometryError> {
    let p = c.complex.get(j).ok_or(GeometryError::IndexOutOfRange(j))?;
    let mut arg = 0.0;
    for q in &c.real {
        let Some(a) = q.alpha.finite() else { continue };
        arg += omega_f64(f, &p.n, &q.n) * (p.beta - a).arg();
    }
    for (k, q) in c.complex.iter().enumerate() {
        if k != j {
            arg += omega_f64(f, &p.n, &q.n) * ((p.beta - q.beta).arg() + (p.beta - q.beta.conj()).arg());
        }
    }
    Ok(principal_angle(arg))
}

pub fn theta_epsilon(c: &ParametrizedCurve, f: &TwoForm, j: usize) -> Result<(i32, f64), GeometryError> {
    theta_epsilon_from_argument(monomial_argument(c, f, j)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumIndex {
    /// Nearest half-integer.
    pub k: f64,
    /// `(A − π²Σ εⱼ(2θⱼ − 1))/π²` before rounding.
    pub raw: f64,
    pub residual: f64,
    pub area: LogArea,
    pub shift: f64,
}

/// `A_log(S, ω)` in a chart where the closed form applies.
pub fn log_area_any_chart(c: &ParametrizedCurve, f: &TwoForm) -> Result<LogArea, GeometryError> {
    if c.real.is_empty() || c.infinity_index().is_some() {
        return log_area_closed(c, f);
    }
    let last = c.real.len() - 1;
    log_area_closed(&mobius_normalize(c, last)?, f)
}

/// `k(S, ω)` from `A_log(S, ω) − π²Σ εⱼ(2θⱼ − 1) = π²k`, failing when the
/// residual to the nearest half-integer exceeds `tol`.
pub fn quantum_index_k(c: &ParametrizedCurve, f: &TwoForm, tol: f64) -> Result<QuantumIndex, GeometryError> {
    let area = log_area_any_chart(c, f)?;
    let mut shift = 0.0;
    for j in 0..c.complex.len() {
        let (eps, theta) = theta_epsilon(c, f, j)?;
        shift += eps as f64 * (2.0 * theta - 1.0);
    }
    let raw = area.value / (PI * PI) - shift;
    // adding 0.0 turns a rounded −0 into 0
    let k = (2.0 * raw).round() / 2.0 + 0.0;
    let residual = (raw - k).abs();
    if residual > tol {
        return Err(GeometryError::ResidualTooLarge { k, residual });
    }
    Ok(QuantumIndex {
        k,
        raw,
        residual,
        area,
        shift,
    })
}

/// Two real rational curves `C_A`, `C_B` meeting at a node, `η` on `C_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReduciblePair {
    pub a: Vec<(f64, LatticeVector)>,
    pub eta: f64,
    pub b: Vec<(f64, LatticeVector)>,
    pub xi: Vec<f64>,
}

impl ReduciblePair {
    pub fn new(a: Vec<(f64, LatticeVector)>, eta: f64, b: Vec<(f64, LatticeVector)>, xi: Vec<f64>) -> Result<Self, GeometryError> {
        let rank = xi.len();
        for (_, n) in a.iter().chain(&b) {
            check_rank(rank, n)?;
        }
        let sum = LatticeVector::sum(rank, b.iter().map(|(_, n)| n));
        if !sum.is_zero() {
            return Err(GeometryError::NotBalanced(sum));
        }
        if a.iter().any(|(ai, _)| *ai == eta) {
            return Err(GeometryError::NodeAtPuncture);
        }
        for (j, (bj, _)) in b.iter().enumerate() {
            if b[..j].iter().any(|(bk, _)| bk == bj) {
                return Err(GeometryError::CoincidentPunctures);
            }
        }
        Ok(ReduciblePair { a, eta, b, xi })
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }
}

fn axpy(acc: &mut [f64], n: &LatticeVector, w: f64) {
    for (x, &c) in acc.iter_mut().zip(n.coords()) {
        *x += w * c as f64;
    }
}

/// `τ_A = Σ 2n_{α(i)}/(η − aᵢ)` and `τ_B = Σ 2n_{β(j)} bⱼ`.
pub fn tangent_vectors(p: &ReduciblePair) -> (Vec<f64>, Vec<f64>) {
    let mut ta = vec![0.0; p.rank()];
    let mut tb = vec![0.0; p.rank()];
    for (a, n) in &p.a {
        axpy(&mut ta, n, 2.0 / (p.eta - a));
    }
    for (b, n) in &p.b {
        axpy(&mut tb, n, 2.0 * b);
    }
    (ta, tb)
}

/// `ω(τ_A, τ_B)`, cross-checked against `4Σ ω(n_{α(i)}, n_{β(j)}) bⱼ/(η − aᵢ)`.
pub fn crossing_number(p: &ReduciblePair, f: &TwoForm) -> f64 {
    let (ta, tb) = tangent_vectors(p);
    let direct = f.eval_f64(&ta, &tb);
    let mut double_sum = 0.0;
    for (a, na) in &p.a {
        for (b, nb) in &p.b {
            double_sum += 4.0 * omega_f64(f, na, nb) * b / (p.eta - a);
        }
    }
    let scale = direct.abs().max(double_sum.abs()).max(1e-300);
    assert!(
        (direct - double_sum).abs() <= 1e-12 * scale.max(1.0),
        "crossing number routes disagree: {direct} vs {double_sum}"
    );
    direct
}

/// `Σ_k μ_{β(k)}(δ) = Σ_{i,k} 2ω(n_{β(k)}, n_{α(i)}) log|η + δb_k − aᵢ|` (plus
/// `ω(Σ n_β, ξ) = 0`).
pub fn beta_moment_sum(p: &ReduciblePair, f: &TwoForm, delta: f64) -> Result<f64, GeometryError> {
    let mut s = 0.0;
    for (b, nb) in &p.b {
        let y = p.eta + delta * b;
        for (a, na) in &p.a {
            let d = (y - a).abs();
            if d == 0.0 {
                return Err(GeometryError::ShiftCollision);
            }
            s += 2.0 * omega_f64(f, nb, na) * d.ln();
        }
    }
    Ok(s)
}

/// Central difference `(Σμ_β(δ) − Σμ_β(−δ))/(2δ)`.
pub fn smoothing_side_fd(p: &ReduciblePair, f: &TwoForm, delta: f64) -> Result<f64, GeometryError> {
    Ok((beta_moment_sum(p, f, delta)? - beta_moment_sum(p, f, -delta)?) / (2.0 * delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rat, IntMatrix};
    use proptest::prelude::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn real(a: f64, n: &[i64]) -> RealPuncture {
        RealPuncture {
            alpha: Alpha::Finite(a),
            n: v(n),
        }
    }

    fn inf(n: &[i64]) -> RealPuncture {
        RealPuncture { alpha: Alpha::Inf, n: v(n) }
    }

    fn cplx(re: f64, im: f64, n: &[i64]) -> ComplexPuncture {
        ComplexPuncture {
            beta: Complex64::new(re, im),
            n: v(n),
        }
    }

    fn line() -> ParametrizedCurve {
        ParametrizedCurve::new(vec![0.0, 0.0], vec![real(0.0, &[-1, 0]), real(1.0, &[0, -1]), inf(&[1, 1])], vec![]).unwrap()
    }

    fn finite_line() -> ParametrizedCurve {
        ParametrizedCurve::new(
            vec![0.0, 0.0],
            vec![real(0.0, &[-1, 0]), real(1.0, &[0, -1]), real(2.0, &[1, 1])],
            vec![],
        )
        .unwrap()
    }

    fn real_moment(c: &ParametrizedCurve, f: &TwoForm, k: usize) -> f64 {
        match moment(c, f, PunctureRef::Real(k)).unwrap() {
            Moment::Real(m) => m,
            Moment::Complex(_) => unreachable!(),
        }
    }

    #[test]
    fn line_moments() {
        let f = TwoForm::standard_rank2();
        let c = finite_line();
        let l2 = 2f64.ln();
        let mu: Vec<f64> = (0..3).map(|k| real_moment(&c, &f, k)).collect();
        for (m, want) in mu.iter().zip([-2.0 * l2, 0.0, 2.0 * l2]) {
            assert!((m - want).abs() < 1e-14, "{mu:?}");
        }
        assert!(mu.iter().sum::<f64>().abs() < 1e-14);
        let shifted = c.shifted(&[0.5, -2.0]);
        for k in 0..3 {
            let n = &c.real()[k].n;
            let d = f.eval_f64(&n.to_f64(), &[0.5, -2.0]);
            assert!((real_moment(&shifted, &f, k) - mu[k] - d).abs() < 1e-13);
        }
        assert_eq!(moment(&line(), &f, PunctureRef::Real(2)), Err(GeometryError::InfinitePuncture));
    }

    #[test]
    fn validation() {
        let e = ParametrizedCurve::new(vec![0.0, 0.0], vec![real(0.0, &[1, 0]), real(1.0, &[0, 1])], vec![]);
        assert!(matches!(e, Err(GeometryError::NotBalanced(_))));
        let e = ParametrizedCurve::new(vec![0.0, 0.0], vec![inf(&[1, 0]), inf(&[-1, 0])], vec![]);
        assert_eq!(e, Err(GeometryError::MultipleInfinity));
        let e = ParametrizedCurve::new(vec![0.0, 0.0], vec![real(1.0, &[1, 0]), real(1.0, &[-1, 0])], vec![]);
        assert_eq!(e, Err(GeometryError::CoincidentPunctures));
        let e = ParametrizedCurve::new(vec![0.0, 0.0], vec![real(1.0, &[-2, 0])], vec![cplx(0.0, -1.0, &[1, 0])]);
        assert_eq!(e, Err(GeometryError::NotUpperHalfPlane(0)));
    }

    #[test]
    fn curve_json_round_trip() {
        let c = ParametrizedCurve::new(
            vec![0.5, 1.0],
            vec![real(0.25, &[1, 0]), inf(&[1, 0])],
            vec![cplx(0.0, 1.5, &[-1, 0])],
        )
        .unwrap();
        assert_eq!(ParametrizedCurve::from_json(&c.to_json()).unwrap(), c);
        let bad = json!({"xi": [0.0], "real": [{"alpha": "nan", "n": [1]}]});
        assert!(matches!(ParametrizedCurve::from_json(&bad), Err(GeometryError::Schema(_))));
    }

    #[test]
    fn toric_index_examples() {
        let comp = |vs: &[&[i64]]| CyclicComponent {
            vectors: vs.iter().map(|c| v(c)).collect(),
        };
        let e12 = Bivector::elementary(0, 1, rat(1));
        let c = comp(&[&[-1, 0], &[0, -1], &[1, 1]]);
        assert_eq!(quantum_index_toric(std::slice::from_ref(&c)).unwrap(), e12);
        let r = comp(&[&[1, 1], &[0, -1], &[-1, 0]]);
        assert_eq!(quantum_index_toric(&[r.clone()]).unwrap(), -&e12);
        assert_eq!(quantum_index_toric(&[c, r]).unwrap(), Bivector::zero());
        assert_eq!(
            quantum_index_toric(&[comp(&[&[1, 0], &[0, 1]])]),
            Err(GeometryError::NonClosedComponent(0))
        );
        assert_eq!(h_trivalent(&v(&[-1, 0]), &v(&[0, -1]), &v(&[1, 1])).unwrap(), e12);
        assert_eq!(h_trivalent(&v(&[1, 0]), &v(&[-1, 0]), &v(&[0, 0])).unwrap(), Bivector::zero());
        assert!(matches!(h_trivalent(&v(&[1, 0]), &v(&[0, 1]), &v(&[0, 0])), Err(GeometryError::NotBalanced(_))));
    }

    #[test]
    fn line_log_area_and_index() {
        let f = TwoForm::standard_rank2();
        let pi2 = PI * PI;
        let a = log_area_closed(&line(), &f).unwrap();
        assert!((a.value - pi2 / 2.0).abs() < 1e-12);
        let h = quantum_index_toric(&[boundary_cycle(&line())]).unwrap();
        assert!((f.pair_bivector(&h).to_f64().unwrap() * pi2 / 2.0 - a.value).abs() < 1e-12);
        let q = quantum_index_k(&line(), &f, 1e-9).unwrap();
        assert_eq!(q.k, 0.5);
        assert!(q.residual < 1e-9);
        let rev = line().reversed();
        assert_eq!(quantum_index_k(&rev, &f, 1e-9).unwrap().k, -0.5);
        assert_eq!(log_area_closed(&finite_line(), &f), Err(GeometryError::NoInfinityPuncture));
        // swapping the finite positions flips the real/real sign term
        let swapped =
            ParametrizedCurve::new(vec![0.0, 0.0], vec![real(1.0, &[-1, 0]), real(0.0, &[0, -1]), inf(&[1, 1])], vec![])
                .unwrap();
        assert!((log_area_closed(&swapped, &f).unwrap().value - pi2 / 2.0 * (-1.0 - 1.0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn normalization() {
        let f = TwoForm::standard_rank2();
        let n = mobius_normalize(&finite_line(), 2).unwrap();
        assert!((log_area_closed(&n, &f).unwrap().value - PI * PI / 2.0).abs() < 1e-12);
        assert_eq!(mobius_normalize(&n, 2), Err(GeometryError::AlreadyAtInfinity(2)));
        // moments of the finite punctures survive the change of chart
        for k in 0..2 {
            assert!((real_moment(&n, &f, k) - real_moment(&finite_line(), &f, k)).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_epsilon_examples() {
        assert_eq!(theta_epsilon_from_value(Complex64::new(0.0, 1.0)).unwrap(), (1, 0.5));
        let (e, t) = theta_epsilon_from_value(Complex64::from_polar(1.0, -PI / 3.0)).unwrap();
        assert_eq!(e, -1);
        assert!((t - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            theta_epsilon_from_value(Complex64::new(-5.0, 0.0)),
            Err(GeometryError::DegenerateArgument(_))
        ));
    }

    #[test]
    fn one_pair_is_half_integral() {
        // (1,0) at α, a pair of (0,1)/… balanced by the puncture at infinity
        let f = TwoForm::standard_rank2();
        let c = ParametrizedCurve::new(
            vec![0.3, -0.2],
            vec![real(0.4, &[1, 0]), inf(&[-1, -2])],
            vec![cplx(-0.3, 0.8, &[0, 1])],
        )
        .unwrap();
        let q = quantum_index_k(&c, &f, 1e-9).unwrap();
        assert!(q.residual < 1e-9, "{q:?}");
    }

    #[test]
    fn reducible_pair_hand_values() {
        let f = TwoForm::standard_rank2();
        let p = ReduciblePair::new(
            vec![(0.0, v(&[-1, 0])), (2.0, v(&[1, 1]))],
            1.0,
            vec![(0.5, v(&[0, 1])), (-1.5, v(&[0, -1]))],
            vec![0.0, 0.0],
        )
        .unwrap();
        let (ta, tb) = tangent_vectors(&p);
        assert_eq!(ta, vec![-4.0, -2.0]);
        assert_eq!(tb, vec![0.0, 4.0]);
        assert_eq!(crossing_number(&p, &f), -16.0);
        let mut q = p.clone();
        for (b, _) in q.b.iter_mut() {
            *b = -*b;
        }
        assert_eq!(crossing_number(&q, &f), 16.0);
        assert_eq!(beta_moment_sum(&p, &f, 0.0).unwrap(), 0.0);
        assert!(matches!(
            ReduciblePair::new(vec![(1.0, v(&[1, 0]))], 1.0, vec![], vec![0.0, 0.0]),
            Err(GeometryError::NodeAtPuncture)
        ));
    }

    #[test]
    fn smoothing_derivative_is_half_the_crossing() {
        let f = TwoForm::standard_rank2();
        let p = ReduciblePair::new(
            vec![(0.0, v(&[-1, 0])), (2.0, v(&[1, 1])), (-3.0, v(&[2, 1]))],
            1.0,
            vec![(0.5, v(&[0, 1])), (-1.5, v(&[0, -1])), (0.7, v(&[1, 0])), (0.1, v(&[-1, 0]))],
            vec![0.0, 0.0],
        )
        .unwrap();
        let fd = smoothing_side_fd(&p, &f, 1e-5).unwrap();
        let x = crossing_number(&p, &f);
        assert!((fd + x / 2.0).abs() < 1e-6 * (1.0 + x.abs()), "fd {fd}, crossing {x}");
    }

    fn arb_vec(rank: usize) -> impl Strategy<Value = LatticeVector> {
        prop::collection::vec(-3i64..=3, rank).prop_map(LatticeVector::new)
    }

    fn arb_component(rank: usize) -> impl Strategy<Value = CyclicComponent> {
        prop::collection::vec(arb_vec(rank), 1..6).prop_map(move |mut vs| {
            let last = -&LatticeVector::sum(rank, &vs);
            vs.push(last);
            CyclicComponent { vectors: vs }
        })
    }

    /// A totally real curve with distinct sorted finite punctures and one at infinity.
    fn arb_real_curve(rank: usize) -> impl Strategy<Value = ParametrizedCurve> {
        (
            prop::collection::vec(arb_vec(rank), 2..5),
            prop::collection::btree_set(-40i32..40, 5),
            prop::collection::vec(-2.0f64..2.0, rank),
        )
            .prop_map(move |(vs, pos, xi)| {
                let pos: Vec<f64> = pos.into_iter().map(|p| p as f64 / 8.0).collect();
                let mut real: Vec<RealPuncture> =
                    vs.iter().zip(&pos).map(|(n, &a)| RealPuncture { alpha: Alpha::Finite(a), n: n.clone() }).collect();
                real.push(RealPuncture {
                    alpha: Alpha::Inf,
                    n: -&LatticeVector::sum(rank, &vs),
                });
                ParametrizedCurve::new(xi, real, vec![]).unwrap()
            })
    }

    fn arb_form(rank: usize) -> impl Strategy<Value = TwoForm> {
        prop::collection::vec(-3i64..=3, rank * (rank - 1) / 2).prop_map(move |e| {
            let mut m = vec![vec![0i64; rank]; rank];
            let mut it = e.into_iter();
            for i in 0..rank {
                for j in i + 1..rank {
                    let x = it.next().unwrap();
                    m[i][j] = x;
                    m[j][i] = -x;
                }
            }
            TwoForm::from_ints(&m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn toric_index_rotation_and_reversal(comp in arb_component(3), shift in 0usize..7) {
            let h = quantum_index_toric(std::slice::from_ref(&comp)).unwrap();
            let mut rot = comp.vectors.clone();
            let k = shift % rot.len();
            rot.rotate_left(k);
            prop_assert_eq!(quantum_index_toric(&[CyclicComponent { vectors: rot }]).unwrap(), h.clone());
            let mut rev = comp.vectors.clone();
            rev.reverse();
            prop_assert_eq!(quantum_index_toric(&[CyclicComponent { vectors: rev }]).unwrap(), -&h);
        }

        #[test]
        fn toric_index_pushforward(comp in arb_component(2), a in prop::collection::vec(-3i64..=3, 6)) {
            let m = IntMatrix::new(vec![a[0..2].to_vec(), a[2..4].to_vec(), a[4..6].to_vec()]).unwrap();
            let h = quantum_index_toric(std::slice::from_ref(&comp)).unwrap();
            let mapped = CyclicComponent { vectors: comp.vectors.iter().map(|x| m.apply(x).unwrap()).collect() };
            prop_assert_eq!(quantum_index_toric(&[mapped]).unwrap(), crate::lattice::pushforward_bivector(&m, &h).unwrap());
        }

        #[test]
        fn balanced_triples_agree(a in arb_vec(3), b in arb_vec(3)) {
            let c = -&(&a + &b);
            prop_assert_eq!(h_trivalent(&a, &b, &c).unwrap(), wedge(&a, &b).unwrap());
        }

        #[test]
        fn real_closed_form_matches_index(c in arb_real_curve(3), f in arb_form(3)) {
            let h = quantum_index_toric(&[boundary_cycle(&c)]).unwrap();
            let want = PI * PI / 2.0 * f.pair_bivector(&h).to_f64().unwrap();
            let got = log_area_closed(&c, &f).unwrap().value;
            prop_assert!((got - want).abs() < 1e-9);
        }

        #[test]
        fn normalization_preserves_area(c in arb_real_curve(2), f in arb_form(2), which in 0usize..4) {
            let finite: Vec<usize> = (0..c.real().len()).filter(|&i| c.real()[i].alpha != Alpha::Inf).collect();
            let i = finite[which % finite.len()];
            let n = mobius_normalize(&c, i).unwrap();
            let before = log_area_closed(&c, &f).unwrap().value;
            let after = log_area_closed(&n, &f).unwrap().value;
            prop_assert!((before - after).abs() < 1e-9);
        }

        #[test]
        fn menelaus_on_random_curves(
            xi in prop::collection::vec(-3.0f64..3.0, 2),
            n1 in arb_vec(2), n2 in arb_vec(2), p in arb_vec(2),
            pos in prop::collection::btree_set(-30i32..30, 3),
            beta in (-2.0f64..2.0, 0.1f64..2.0),
            f in arb_form(2),
        ) {
            let pos: Vec<f64> = pos.into_iter().map(|x| x as f64 / 7.0).collect();
            let n3 = -&(&(&n1 + &n2) + &p.scale(2));
            let c = ParametrizedCurve::new(
                xi,
                vec![
                    RealPuncture { alpha: Alpha::Finite(pos[0]), n: n1 },
                    RealPuncture { alpha: Alpha::Finite(pos[1]), n: n2 },
                    RealPuncture { alpha: Alpha::Finite(pos[2]), n: n3 },
                ],
                vec![ComplexPuncture { beta: Complex64::new(beta.0, beta.1), n: p }],
            ).unwrap();
            prop_assert!(menelaus_defect(&c, &f).unwrap().abs() < 1e-12 * 100.0);
        }
    }
}
