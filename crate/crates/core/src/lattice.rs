//! Exact linear algebra on a lattice `N`, its dual `M` and `Λ²N`.
//!
//! Lattice vectors carry machine integers; everything that can pick up a
//! denominator (covectors, bivectors, 2-forms) is stored as a big rational.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("2-form matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("2-form matrix is not square")]
    NotSquare,
}

fn check_rank(expected: usize, found: usize) -> Result<(), LatticeError> {
    if expected == found {
        Ok(())
    } else {
        Err(LatticeError::RankMismatch { expected, found })
    }
}

/// An element of `N ≅ ℤ^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| rat(c)).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64).collect()
    }

    /// Sum of a family of vectors of a common rank.
    pub fn sum<'a, I: IntoIterator<Item = &'a LatticeVector>>(rank: usize, it: I) -> Self {
        it.into_iter().fold(LatticeVector::zero(rank), |acc, v| &acc + v)
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "lattice vector rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "lattice vector rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// True iff the gcd of the coordinates is 1.
pub fn is_primitive(v: &LatticeVector) -> Result<bool, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let g = v.0.iter().fold(0i64, |g, &c| g.gcd(&c));
    Ok(g == 1)
}

/// An element of `M ⊗ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector(Vec<Rational>);

impl Covector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Covector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Covector(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn pair(&self, v: &LatticeVector) -> Result<Rational, LatticeError> {
        check_rank(self.rank(), v.rank())?;
        Ok(self
            .0
            .iter()
            .zip(v.coords())
            .map(|(m, &x)| m * rat(x))
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// Pairing with a rational point of `N ⊗ ℚ`.
    pub fn pair_rational(&self, x: &[Rational]) -> Result<Rational, LatticeError> {
        check_rank(self.rank(), x.len())?;
        Ok(self
            .0
            .iter()
            .zip(x)
            .map(|(m, a)| m * a)
            .fold(Rational::zero(), |a, b| a + b))
    }
}

/// An element of `Λ²N ⊗ ℚ` in the basis `eᵢ∧eⱼ`, `i < j`.
///
/// Only nonzero coefficients are stored, so two bivectors are equal iff their
/// maps are equal. The rank is not recorded: a bivector of a sublattice spanned
/// by the first coordinates is the same object in any larger rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bivector(BTreeMap<(usize, usize), Rational>);

impl Bivector {
    pub fn zero() -> Self {
        Bivector(BTreeMap::new())
    }

    /// Builds a bivector from arbitrary `(i, j, c)` triples, reordering pairs
    /// with `i > j` and dropping diagonal entries.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, Rational)>>(terms: I) -> Self {
        let mut b = Bivector::zero();
        for (i, j, c) in terms {
            b.add_term(i, j, c);
        }
        b
    }

    /// `c · eᵢ∧eⱼ`.
    pub fn elementary(i: usize, j: usize, c: Rational) -> Self {
        Self::from_terms([(i, j, c)])
    }

    fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.0.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        if i == j {
            return Rational::zero();
        }
        if i < j {
            self.0.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
        } else {
            -self.0.get(&(j, i)).cloned().unwrap_or_else(Rational::zero)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.0.iter()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Bivector::zero();
        }
        Bivector(self.0.iter().map(|(p, c)| (*p, c * k)).collect())
    }

    /// Largest index appearing in a nonzero coefficient, plus one.
    pub fn min_rank(&self) -> usize {
        self.0.keys().map(|&(_, j)| j + 1).max().unwrap_or(0)
    }
}

impl Add for &Bivector {
    type Output = Bivector;
    fn add(self, rhs: &Bivector) -> Bivector {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.0 {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &Bivector {
    type Output = Bivector;
    fn sub(self, rhs: &Bivector) -> Bivector {
        self + &(-rhs)
    }
}

impl Neg for &Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector(self.0.iter().map(|(p, c)| (*p, -c)).collect())
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.0.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "e{}∧e{}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// `u∧v`, with coefficient `uᵢvⱼ − uⱼvᵢ` on `eᵢ∧eⱼ`.
pub fn wedge(u: &LatticeVector, v: &LatticeVector) -> Result<Bivector, LatticeError> {
    check_rank(u.rank(), v.rank())?;
    let n = u.rank();
    let mut b = Bivector::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = u[i] as i128 * v[j] as i128 - u[j] as i128 * v[i] as i128;
            if c != 0 {
                b.0.insert((i, j), Rational::from_integer(BigInt::from(c)));
            }
        }
    }
    Ok(b)
}

/// An antisymmetric bilinear form on `N`, stored as the matrix `Ω[i][j] = ϖ(eᵢ, eⱼ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoForm {
    matrix: Vec<Vec<Rational>>,
}

impl TwoForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in i..n {
                if matrix[i][j] != -&matrix[j][i] {
                    return Err(LatticeError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(TwoForm { matrix })
    }

    pub fn from_ints(matrix: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(
            matrix
                .iter()
                .map(|row| row.iter().map(|&c| rat(c)).collect())
                .collect(),
        )
    }

    /// The determinant form `e₁*∧e₂*` on a rank-2 lattice.
    pub fn standard_rank2() -> Self {
        Self::from_ints(&[vec![0, 1], vec![-1, 0]]).expect("antisymmetric")
    }

    /// The form `Σ_{i<j} cᵢⱼ eᵢ*∧eⱼ*` read off a bivector's coefficients.
    pub fn from_bivector_coeffs(rank: usize, b: &Bivector) -> Self {
        let mut m = vec![vec![Rational::zero(); rank]; rank];
        for (&(i, j), c) in b.terms() {
            m[i][j] = c.clone();
            m[j][i] = -c;
        }
        TwoForm { matrix: m }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TwoForm {
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| c * k).collect())
                .collect(),
        }
    }

    /// `uᵀΩv`.
    pub fn eval(&self, u: &LatticeVector, v: &LatticeVector) -> Result<Rational, LatticeError> {
        check_rank(self.rank(), u.rank())?;
        check_rank(self.rank(), v.rank())?;
        Ok(self.eval_rational(&u.to_rational(), &v.to_rational()))
    }

    /// `uᵀΩv` for rational points of `N ⊗ ℚ`. Ranks are the caller's concern.
    pub fn eval_rational(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() && !self.matrix[i][j].is_zero() {
                    acc += ui * &self.matrix[i][j] * vj;
                }
            }
        }
        acc
    }

    /// `uᵀΩv` in floating point.
    pub fn eval_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        let m = self.to_f64();
        eval_f64_matrix(&m, u, v)
    }

    /// The canonical pairing `⟨ϖ, w⟩ = Σ_{i<j} Ωᵢⱼ wᵢⱼ`.
    pub fn pair_bivector(&self, w: &Bivector) -> Rational {
        w.terms()
            .map(|(&(i, j), c)| {
                if i < self.rank() && j < self.rank() {
                    &self.matrix[i][j] * c
                } else {
                    Rational::zero()
                }
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// The contraction `ι_nϖ = ϖ(n, ·)`.
    pub fn contract(&self, n: &LatticeVector) -> Result<Covector, LatticeError> {
        check_rank(self.rank(), n.rank())?;
        let r = self.rank();
        let coords = (0..r)
            .map(|j| {
                (0..r)
                    .filter(|&i| n[i] != 0)
                    .map(|i| rat(n[i]) * &self.matrix[i][j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        Ok(Covector(coords))
    }

    /// `n ∈ ker ϖ`, i.e. `ι_nϖ = 0`.
    pub fn annihilates(&self, n: &LatticeVector) -> Result<bool, LatticeError> {
        Ok(self.contract(n)?.is_zero())
    }
}

pub fn eval_2form(f: &TwoForm, u: &LatticeVector, v: &LatticeVector) -> Result<Rational, LatticeError> {
    f.eval(u, v)
}

pub fn contract(f: &TwoForm, n: &LatticeVector) -> Result<Covector, LatticeError> {
    f.contract(n)
}

pub(crate) fn eval_f64_matrix(m: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            acc += ui * m[i][j] * vj;
        }
    }
    acc
}

/// An integer matrix `A: N' → N`, stored row-major with `target` rows and
/// `source` columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
    source: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let source = rows.first().map_or(0, Vec::len);
        for r in &rows {
            check_rank(source, r.len())?;
        }
        Ok(IntMatrix { rows, source })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        IntMatrix { rows, source: n }
    }

    pub fn source_rank(&self) -> usize {
        self.source
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        check_rank(self.source, v.rank())?;
        Ok(LatticeVector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        check_rank(self.source, rhs.target_rank())?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..rhs.source)
                    .map(|j| r.iter().enumerate().map(|(k, a)| a * rhs.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(IntMatrix {
            rows,
            source: rhs.source,
        })
    }
}

/// `(Λ²A)(w)`, extended linearly from `eᵢ∧eⱼ ↦ Aeᵢ∧Aeⱼ`.
pub fn pushforward_bivector(a: &IntMatrix, w: &Bivector) -> Result<Bivector, LatticeError> {
    if w.min_rank() > a.source_rank() {
        return Err(LatticeError::RankMismatch {
            expected: a.source_rank(),
            found: w.min_rank(),
        });
    }
    let mut out = Bivector::zero();
    for (&(i, j), c) in w.terms() {
        let img = wedge(&a.column(i), &a.column(j))?;
        out = &out + &img.scale(c);
    }
    Ok(out)
}

/// Reduces a rational to a plain `i64` when it is an integer that fits.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Renders a rational as `"p/q"` (or `"p"` for integers).
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().ok()?;
        let mag = int_part.abs() * &denom + frac_part;
        let numer = if negative { -mag } else { mag };
        return Some(Rational::new(numer, denom));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

pub(crate) fn rational_sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn omega3() -> TwoForm {
        TwoForm::from_ints(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let b = wedge(&v(&[1, 0]), &v(&[0, 1])).unwrap();
        assert_eq!(b, Bivector::elementary(0, 1, rat(1)));
        assert!(wedge(&v(&[3, -7]), &v(&[3, -7])).unwrap().is_zero());
        let b = wedge(&v(&[1, 0, 0]), &v(&[0, 1, 1])).unwrap();
        assert_eq!(b.coeff(0, 1), rat(1));
        assert_eq!(b.coeff(0, 2), rat(1));
        assert_eq!(b.coeff(1, 2), rat(0));
        assert_eq!(
            wedge(&v(&[1, 0]), &v(&[1, 0, 0])),
            Err(LatticeError::RankMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn eval_examples() {
        let det = TwoForm::standard_rank2();
        assert_eq!(eval_2form(&det, &v(&[1, 0]), &v(&[0, 1])).unwrap(), rat(1));
        assert_eq!(eval_2form(&det, &v(&[5, 2]), &v(&[5, 2])).unwrap(), rat(0));
        let om = omega3();
        for w in [v(&[1, 2, 3]), v(&[-4, 0, 7]), v(&[0, 0, 1])] {
            assert_eq!(eval_2form(&om, &v(&[1, 0, 1]), &w).unwrap(), rat(0));
        }
    }

    #[test]
    fn kernel_of_rank3_form_is_spanned_by_101() {
        // Solve Ωx = 0 by hand: rows give x₂ = 0, −x₁ + x₃ = 0.
        let om = omega3();
        let k = v(&[1, 0, 1]);
        assert!(om.annihilates(&k).unwrap());
        for other in [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 0, -1])] {
            assert!(!om.annihilates(&other).unwrap());
        }
    }

    #[test]
    fn contract_examples() {
        let det = TwoForm::standard_rank2();
        assert_eq!(contract(&det, &v(&[1, 0])).unwrap(), Covector::from_ints(&[0, 1]));
        let om = omega3();
        assert!(contract(&om, &v(&[1, 0, 1])).unwrap().is_zero());
        assert_eq!(contract(&om, &v(&[1, 0, 0])).unwrap(), Covector::from_ints(&[0, 1, 0]));
    }

    #[test]
    fn pushforward_examples() {
        let w = &Bivector::elementary(0, 1, rat(2)) + &Bivector::elementary(1, 2, rat_frac(-1, 4));
        assert_eq!(pushforward_bivector(&IntMatrix::identity(3), &w).unwrap(), w);
        let a = IntMatrix::new(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(
            pushforward_bivector(&a, &Bivector::elementary(0, 1, rat(1))).unwrap(),
            Bivector::elementary(0, 1, rat(6))
        );
        let a = IntMatrix::new(vec![vec![1, -2, 0], vec![3, 1, 1], vec![0, 2, -1]]).unwrap();
        let (u, x) = (v(&[1, 2, -1]), v(&[0, -3, 2]));
        let lhs = pushforward_bivector(&a, &wedge(&u, &x).unwrap()).unwrap();
        let rhs = wedge(&a.apply(&u).unwrap(), &a.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&v(&[2, 4])).unwrap());
        assert!(is_primitive(&v(&[1, 1])).unwrap());
        // gcd(3, 5) = 1, gcd(1, 7) = 1
        assert!(is_primitive(&v(&[3, 5, 7])).unwrap());
        assert!(is_primitive(&v(&[-1, 0])).unwrap());
        assert_eq!(is_primitive(&v(&[0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/6"), Some(rat_frac(1, 2)));
        assert_eq!(parse_rational("-2"), Some(rat(-2)));
        assert_eq!(parse_rational("-0.25"), Some(rat_frac(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_to_string(&rat_frac(-3, 4)), "-3/4");
        assert_eq!(rational_to_string(&rat(5)), "5");
    }

    #[test]
    fn non_antisymmetric_form_rejected() {
        assert!(TwoForm::from_ints(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(TwoForm::from_ints(&[vec![1, 0], vec![0, 0]]).is_err());
    }
}
