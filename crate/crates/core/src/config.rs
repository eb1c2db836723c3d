//! Validated problem setup: the degree with its real/complex markings, the
//! merged tropical degree and the monomials completing `ι_{n₀}ω`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{
    is_primitive, parse_rational, rat, rational_to_string, Covector, LatticeError, LatticeVector,
    Rational, TwoForm,
};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marking {
    Real,
    /// Member of a complex-conjugate pair; the payload is the partner's index.
    Pair(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct End {
    pub vector: LatticeVector,
    pub marking: Marking,
}

impl End {
    pub fn real(coords: &[i64]) -> Self {
        End {
            vector: LatticeVector::new(coords.to_vec()),
            marking: Marking::Real,
        }
    }

    pub fn paired(coords: &[i64], partner: usize) -> Self {
        End {
            vector: LatticeVector::new(coords.to_vec()),
            marking: Marking::Pair(partner),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeViolation {
    #[error("degree has no ends")]
    Empty,
    #[error("root index {0} out of range")]
    RootOutOfRange(usize),
    #[error("end {index} has rank {found}, expected {expected}")]
    RankMismatch { index: usize, expected: usize, found: usize },
    #[error("end {0} is the zero vector")]
    ZeroVector(usize),
    #[error("end {0} is not primitive")]
    NonPrimitiveVector(usize),
    #[error("ends sum to {0}, not zero")]
    NonZeroSum(LatticeVector),
    #[error("end {0} has an inconsistent complex pairing")]
    PairMismatch(usize),
    #[error("end {0} lies in the kernel of ω")]
    KernelVector(usize),
    #[error("root end is not real")]
    RootNotReal,
}

/// Every violation found while validating a degree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct DegreeError(pub Vec<DegreeViolation>);

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "invalid degree: {}", parts.join("; "))
    }
}

impl DegreeError {
    pub fn contains(&self, pred: impl Fn(&DegreeViolation) -> bool) -> bool {
        self.0.iter().any(pred)
    }
}

/// A validated degree `Δ = (n₀, n_k, n_l^±)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree {
    rank: usize,
    ends: Vec<End>,
    root: usize,
    real_count: usize,
    pair_count: usize,
}

impl Degree {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_vector(&self) -> &LatticeVector {
        &self.ends[self.root].vector
    }

    /// `R`: real ends other than the root.
    pub fn real_count(&self) -> usize {
        self.real_count
    }

    /// `S`: complex-conjugate pairs.
    pub fn pair_count(&self) -> usize {
        self.pair_count
    }
}

pub fn validate_degree(ends: Vec<End>, root: usize, f: &TwoForm) -> Result<Degree, DegreeError> {
    let mut violations = Vec::new();
    if ends.is_empty() {
        return Err(DegreeError(vec![DegreeViolation::Empty]));
    }
    if root >= ends.len() {
        return Err(DegreeError(vec![DegreeViolation::RootOutOfRange(root)]));
    }
    let rank = f.rank();
    for (i, e) in ends.iter().enumerate() {
        if e.vector.rank() != rank {
            violations.push(DegreeViolation::RankMismatch {
                index: i,
                expected: rank,
                found: e.vector.rank(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(DegreeError(violations));
    }

    for (i, e) in ends.iter().enumerate() {
        match is_primitive(&e.vector) {
            Err(_) => violations.push(DegreeViolation::ZeroVector(i)),
            Ok(false) => violations.push(DegreeViolation::NonPrimitiveVector(i)),
            Ok(true) => {}
        }
    }
    let sum = LatticeVector::sum(rank, ends.iter().map(|e| &e.vector));
    if !sum.is_zero() {
        violations.push(DegreeViolation::NonZeroSum(sum));
    }
    let mut pair_count = 0;
    for (i, e) in ends.iter().enumerate() {
        if let Marking::Pair(j) = e.marking {
            let ok = j != i
                && j < ends.len()
                && ends[j].marking == Marking::Pair(i)
                && ends[j].vector == e.vector;
            if !ok {
                violations.push(DegreeViolation::PairMismatch(i));
            } else if i < j {
                pair_count += 1;
            }
        }
    }
    for (i, e) in ends.iter().enumerate() {
        if !e.vector.is_zero() && f.annihilates(&e.vector).unwrap_or(false) {
            violations.push(DegreeViolation::KernelVector(i));
        }
    }
    if ends[root].marking != Marking::Real {
        violations.push(DegreeViolation::RootNotReal);
    }
    if !violations.is_empty() {
        return Err(DegreeError(violations));
    }
    let real_count = ends.iter().filter(|e| e.marking == Marking::Real).count() - 1;
    debug_assert_eq!(1 + real_count + 2 * pair_count, ends.len());
    Ok(Degree {
        rank,
        ends,
        root,
        real_count,
        pair_count,
    })
}

/// Where a tropical end came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Real(usize),
    /// A complex pair `(n⁺, n⁻)` merged into `2n⁺`.
    Merged(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropEnd {
    pub vector: LatticeVector,
    pub origin: Origin,
}

/// The merged degree `Δ_trop`. The root end comes first, the remaining
/// ends follow in input order, each pair contributing once at its first
/// member's position.
pub fn trop_degree(d: &Degree) -> Vec<TropEnd> {
    let mut out = vec![TropEnd {
        vector: d.root_vector().clone(),
        origin: Origin::Real(d.root),
    }];
    for (i, e) in d.ends.iter().enumerate() {
        if i == d.root {
            continue;
        }
        match e.marking {
            Marking::Real => out.push(TropEnd {
                vector: e.vector.clone(),
                origin: Origin::Real(i),
            }),
            Marking::Pair(j) if i < j => out.push(TropEnd {
                vector: e.vector.scale(2),
                origin: Origin::Merged(i, j),
            }),
            Marking::Pair(_) => {}
        }
    }
    out
}

pub fn trop_vectors(tdeg: &[TropEnd]) -> Vec<LatticeVector> {
    tdeg.iter().map(|e| e.vector.clone()).collect()
}

/// Monomials `m₁, …, m_{rank−2}` completing `ι_{n₀}ω` into a basis of `⟨n₀⟩^⊥ ⊗ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub monomials: Vec<Covector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("root vector lies in the kernel of ω")]
    DegenerateRoot,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("schema: {0}")]
    Schema(String),
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Integer basis of `{m ∈ ℤ^r : ⟨m, n⟩ = 0}` via unimodular column operations
/// reducing the row `nᵀ` to `(g, 0, …, 0)`.
fn annihilator_basis(n: &LatticeVector) -> Vec<Vec<i128>> {
    let r = n.rank();
    let mut a: Vec<i128> = n.coords().iter().map(|&c| c as i128).collect();
    let mut cols: Vec<Vec<i128>> = (0..r)
        .map(|j| (0..r).map(|i| i128::from(i == j)).collect())
        .collect();
    // Bring a nonzero entry to position 0.
    if let Some(p) = a.iter().position(|&x| x != 0) {
        a.swap(0, p);
        cols.swap(0, p);
    }
    for j in 1..r {
        if a[j] == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(a[0], a[j]);
        let (u, v) = (a[0] / g, a[j] / g);
        let c0: Vec<i128> = (0..r).map(|i| s * cols[0][i] + t * cols[j][i]).collect();
        let cj: Vec<i128> = (0..r).map(|i| -v * cols[0][i] + u * cols[j][i]).collect();
        cols[0] = c0;
        cols[j] = cj;
        a[0] = g;
        a[j] = 0;
    }
    cols.into_iter().skip(1).collect()
}

/// Row-style Hermite normal form of an integer matrix of full row rank.
fn hermite_rows(mut rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            // Euclid on the column below pivot_row.
            let mut best: Option<usize> = None;
            for i in pivot_row..rows.len() {
                if rows[i][col] != 0 && best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for i in (pivot_row + 1)..rows.len() {
                let q = rows[i][col].div_euclid(rows[pivot_row][col]);
                if q != 0 {
                    for k in 0..ncols {
                        rows[i][k] -= q * rows[pivot_row][k];
                    }
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = rows[pivot_row][col];
        for i in 0..pivot_row {
            let q = rows[i][col].div_euclid(p);
            if q != 0 {
                for k in 0..ncols {
                    rows[i][k] -= q * rows[pivot_row][k];
                }
            }
        }
        pivot_row += 1;
    }
    rows
}

/// Rank over `ℚ` of a list of rational rows.
pub(crate) fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in (rank + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &m[rank][col];
            for k in col..ncols {
                let delta = &factor * &m[rank][k];
                m[i][k] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn complete_monomial_basis(n0: &LatticeVector, f: &TwoForm) -> Result<MonomialBasis, ConfigError> {
    let iota = f.contract(n0)?;
    if iota.is_zero() {
        return Err(ConfigError::DegenerateRoot);
    }
    let r = n0.rank();
    if r <= 2 {
        return Ok(MonomialBasis { monomials: vec![] });
    }
    let candidates = hermite_rows(annihilator_basis(n0));
    let mut chosen: Vec<Vec<Rational>> = vec![iota.coords().to_vec()];
    let mut monomials = Vec::new();
    for row in candidates {
        if monomials.len() == r - 2 {
            break;
        }
        let q: Vec<Rational> = row.iter().map(|&x| rat(x as i64)).collect();
        let mut trial = chosen.clone();
        trial.push(q.clone());
        if rational_rank(&trial) == trial.len() {
            chosen = trial;
            monomials.push(Covector::new(q));
        }
    }
    debug_assert_eq!(monomials.len(), r - 2);
    Ok(MonomialBasis { monomials })
}

/// On-disk problem description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub rank: usize,
    pub omega: Vec<Vec<RationalEntry>>,
    pub ends: Vec<EndConfig>,
    pub root: usize,
}

/// A rational written as `"p/q"` or as a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndConfig {
    pub vector: Vec<i64>,
    pub marking: MarkingConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MarkingConfig {
    Tag(String),
    Pair { pair: usize },
}

/// Everything derived from a [`ProblemConfig`].
#[derive(Debug, Clone)]
pub struct Problem {
    pub omega: TwoForm,
    pub degree: Degree,
    pub tdeg: Vec<TropEnd>,
    pub basis: MonomialBasis,
}

impl ProblemConfig {
    pub fn omega(&self) -> Result<TwoForm, ConfigError> {
        if self.omega.len() != self.rank {
            return Err(ConfigError::Schema(format!(
                "omega has {} rows, rank is {}",
                self.omega.len(),
                self.rank
            )));
        }
        let mut m = Vec::with_capacity(self.rank);
        for row in &self.omega {
            if row.len() != self.rank {
                return Err(ConfigError::Schema("omega is not square".into()));
            }
            let mut out = Vec::with_capacity(self.rank);
            for e in row {
                out.push(match e {
                    RationalEntry::Int(i) => rat(*i),
                    RationalEntry::Text(s) => parse_rational(s)
                        .ok_or_else(|| ConfigError::Schema(format!("bad rational {s:?}")))?,
                });
            }
            m.push(out);
        }
        Ok(TwoForm::new(m)?)
    }

    pub fn ends(&self) -> Result<Vec<End>, ConfigError> {
        self.ends
            .iter()
            .map(|e| {
                let marking = match &e.marking {
                    MarkingConfig::Tag(t) if t == "real" => Marking::Real,
                    MarkingConfig::Tag(t) => {
                        return Err(ConfigError::Schema(format!("unknown marking {t:?}")))
                    }
                    MarkingConfig::Pair { pair } => Marking::Pair(*pair),
                };
                Ok(End {
                    vector: LatticeVector::new(e.vector.clone()),
                    marking,
                })
            })
            .collect()
    }

    pub fn resolve(&self) -> Result<Problem, ConfigError> {
        let omega = self.omega()?;
        let degree = validate_degree(self.ends()?, self.root, &omega)?;
        let basis = complete_monomial_basis(degree.root_vector(), &omega)?;
        let tdeg = trop_degree(&degree);
        Ok(Problem {
            omega,
            degree,
            tdeg,
            basis,
        })
    }
}

impl Problem {
    /// JSON echo of the resolved configuration, including derived data.
    pub fn to_json(&self) -> Value {
        let omega: Vec<Vec<String>> = self
            .omega
            .matrix()
            .iter()
            .map(|r| r.iter().map(rational_to_string).collect())
            .collect();
        let ends: Vec<Value> = self
            .degree
            .ends()
            .iter()
            .map(|e| {
                let marking = match e.marking {
                    Marking::Real => json!("real"),
                    Marking::Pair(j) => json!({ "pair": j }),
                };
                json!({ "vector": e.vector.coords(), "marking": marking })
            })
            .collect();
        let tdeg: Vec<Value> = self
            .tdeg
            .iter()
            .map(|e| {
                let origin = match e.origin {
                    Origin::Real(i) => json!({ "real": i }),
                    Origin::Merged(i, j) => json!({ "merged": [i, j] }),
                };
                json!({ "vector": e.vector.coords(), "origin": origin })
            })
            .collect();
        let basis: Vec<Vec<String>> = self
            .basis
            .monomials
            .iter()
            .map(|m| m.coords().iter().map(rational_to_string).collect())
            .collect();
        json!({
            "rank": self.degree.rank(),
            "omega": omega,
            "ends": ends,
            "root": self.degree.root(),
            "R": self.degree.real_count(),
            "S": self.degree.pair_count(),
            "trop_degree": tdeg,
            "monomial_basis": basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega3() -> TwoForm {
        TwoForm::from_ints(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap()
    }

    #[test]
    fn valid_rank2_line() {
        let d = validate_degree(
            vec![End::real(&[1, 1]), End::real(&[-1, 0]), End::real(&[0, -1])],
            0,
            &TwoForm::standard_rank2(),
        )
        .unwrap();
        assert_eq!(d.real_count(), 2);
        assert_eq!(d.pair_count(), 0);
    }

    #[test]
    fn violations_are_collected() {
        let err = validate_degree(
            vec![End::real(&[2, 0]), End::real(&[-1, 0]), End::real(&[0, -1])],
            0,
            &TwoForm::standard_rank2(),
        )
        .unwrap_err();
        assert!(err.contains(|v| *v == DegreeViolation::NonPrimitiveVector(0)));
        assert!(err.contains(|v| matches!(v, DegreeViolation::NonZeroSum(_))));

        let err = validate_degree(
            vec![
                End::real(&[-1, 0, -1]),
                End::real(&[1, 0, 1]),
            ],
            0,
            &omega3(),
        )
        .unwrap_err();
        assert!(err.contains(|v| *v == DegreeViolation::KernelVector(1)));
        assert!(err.contains(|v| *v == DegreeViolation::KernelVector(0)));

        let err = validate_degree(
            vec![End::paired(&[0, 1], 1), End::paired(&[0, 1], 0), End::real(&[0, -2])],
            0,
            &TwoForm::standard_rank2(),
        )
        .unwrap_err();
        assert!(err.contains(|v| *v == DegreeViolation::RootNotReal));

        let err = validate_degree(
            vec![End::real(&[1, 1]), End::paired(&[-1, 0], 2), End::paired(&[0, -1], 1)],
            0,
            &TwoForm::standard_rank2(),
        )
        .unwrap_err();
        assert!(err.contains(|v| *v == DegreeViolation::PairMismatch(1)));
    }

    #[test]
    fn trop_degree_merges_pairs() {
        let f = TwoForm::standard_rank2();
        let d = validate_degree(
            vec![End::real(&[-1, 0]), End::real(&[1, 0]), End::real(&[-1, 0]), End::real(&[1, 0]),
                 End::real(&[0, 1]), End::real(&[0, 1]), End::paired(&[0, -1], 7), End::paired(&[0, -1], 6)],
            0,
            &f,
        )
        .unwrap();
        assert_eq!(d.pair_count(), 1);
        assert_eq!(d.real_count(), 5);
        let t = trop_degree(&d);
        assert_eq!(t.len(), 1 + d.real_count() + d.pair_count());
        assert_eq!(t.last().unwrap().vector, LatticeVector::new(vec![0, -2]));
        assert_eq!(t.last().unwrap().origin, Origin::Merged(6, 7));
        assert!(LatticeVector::sum(2, t.iter().map(|e| &e.vector)).is_zero());

        let real = validate_degree(
            vec![End::real(&[0, -1]), End::real(&[1, 1]), End::real(&[-1, 0])],
            1,
            &f,
        )
        .unwrap();
        let t = trop_degree(&real);
        let vs: Vec<_> = t.iter().map(|e| e.vector.coords().to_vec()).collect();
        assert_eq!(vs, vec![vec![1, 1], vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn monomial_completion() {
        let f = TwoForm::standard_rank2();
        assert!(complete_monomial_basis(&LatticeVector::new(vec![1, 1]), &f)
            .unwrap()
            .monomials
            .is_empty());
        let b = complete_monomial_basis(&LatticeVector::new(vec![1, 0, 0]), &omega3()).unwrap();
        assert_eq!(b.monomials, vec![Covector::from_ints(&[0, 0, 1])]);
        assert_eq!(
            complete_monomial_basis(&LatticeVector::new(vec![1, 0, 1]), &omega3()),
            Err(ConfigError::DegenerateRoot)
        );
    }

    #[test]
    fn monomial_completion_rank4() {
        let f = TwoForm::from_ints(&[
            vec![0, 1, 2, 0],
            vec![-1, 0, 1, 3],
            vec![-2, -1, 0, 1],
            vec![0, -3, -1, 0],
        ])
        .unwrap();
        let n0 = LatticeVector::new(vec![2, -3, 5, 1]);
        let b = complete_monomial_basis(&n0, &f).unwrap();
        assert_eq!(b.monomials.len(), 2);
        let mut rows: Vec<Vec<Rational>> = b.monomials.iter().map(|m| m.coords().to_vec()).collect();
        for m in &b.monomials {
            assert!(m.pair(&n0).unwrap().is_zero());
        }
        rows.push(f.contract(&n0).unwrap().coords().to_vec());
        assert_eq!(rational_rank(&rows), 3);
    }

    #[test]
    fn config_json_roundtrip() {
        let text = r#"{"rank": 2, "omega": [["0", "1"], ["-1", 0]],
            "ends": [{"vector": [1, 1], "marking": "real"},
                     {"vector": [-1, 0], "marking": "real"},
                     {"vector": [0, -1], "marking": "real"}],
            "root": 0}"#;
        let cfg: ProblemConfig = serde_json::from_str(text).unwrap();
        let p = cfg.resolve().unwrap();
        assert_eq!(p.omega, TwoForm::standard_rank2());
        assert_eq!(p.tdeg.len(), 3);
        let bad: ProblemConfig = serde_json::from_str(
            r#"{"rank": 2, "omega": [["0", "1"], ["-1", "0"]],
                "ends": [{"vector": [1, 1], "marking": "imaginary"}], "root": 0}"#,
        )
        .unwrap();
        assert!(matches!(bad.resolve(), Err(ConfigError::Schema(_))));
    }
}
