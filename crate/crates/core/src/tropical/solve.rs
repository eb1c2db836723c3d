//! Exact solution of the `ω`-constraint system for one combinatorial type,
//! refined multiplicities and the summed count.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::tree::{edge_slopes, enumerate_types, outgoing_slopes, CombinatorialType, Rooted};
use super::EngineError;
use crate::config::MonomialBasis;
use crate::laurent::{binomial, BivectorLaurent};
use crate::lattice::{rational_sign, rational_to_string, wedge, LatticeVector, Rational, TwoForm};

/// Values of the monomials `mᵢ` on the root end (`P`) and of `ι_{n_k}ω` on
/// the ends `1..L` (`μ`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalConstraints {
    pub p: Vec<Rational>,
    pub mu: Vec<Rational>,
}

impl TropicalConstraints {
    pub fn to_json(&self) -> Value {
        json!({
            "P": self.p.iter().map(rational_to_string).collect::<Vec<_>>(),
            "mu": self.mu.iter().map(rational_to_string).collect::<Vec<_>>(),
        })
    }
}

/// Ordered slopes `(a, b)` at a vertex with `ω(a, b) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexFrame {
    pub vertex: usize,
    pub a: LatticeVector,
    pub b: LatticeVector,
}

/// A parametrized tropical curve of a given type satisfying the constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalSolution {
    pub ctype: CombinatorialType,
    pub tdeg: Vec<LatticeVector>,
    /// Position of the vertex adjacent to leaf 0.
    pub xi: Vec<Rational>,
    /// Internal edges as `(parent, child)` pairs, aligned with `lengths`.
    pub internal_edges: Vec<(usize, usize)>,
    pub lengths: Vec<Rational>,
    /// Position of every internal vertex (`None` for leaves).
    pub positions: Vec<Option<Vec<Rational>>>,
    slopes: Vec<Option<LatticeVector>>,
    rooted: Rooted,
}

impl TropicalSolution {
    /// Position of the vertex carrying leaf `k`.
    pub fn leaf_vertex_position(&self, k: usize) -> &[Rational] {
        let v = leaf_vertex(&self.rooted, k);
        self.positions[v].as_deref().expect("internal vertex position")
    }

    /// Outgoing slopes `[a, b, c]` at an internal vertex, children first.
    pub fn outgoing(&self, v: usize) -> [LatticeVector; 3] {
        outgoing_slopes(&self.rooted, &self.slopes, v)
    }

    /// The frame at every internal vertex: the two slopes pointing away from
    /// leaf 0, ordered so that `ω(a, b) > 0`.
    pub fn vertex_frames(&self, f: &TwoForm) -> Result<Vec<VertexFrame>, EngineError> {
        let mut frames = Vec::new();
        for v in self.ctype.internal_vertices() {
            let [a, b, c] = self.outgoing(v);
            let w = wedge(&a, &b)?;
            if w.is_zero() {
                return Err(EngineError::FlatVertex);
            }
            let bc = wedge(&b, &c)?;
            let ca = wedge(&c, &a)?;
            assert!(w == bc && bc == ca, "balanced frame must have a∧b = b∧c = c∧a");
            let (a, b) = match rational_sign(&f.eval(&a, &b)?) {
                0 => return Err(EngineError::GenericityViolation(w)),
                s if s > 0 => (a, b),
                _ => (b, a),
            };
            frames.push(VertexFrame { vertex: v, a, b });
        }
        Ok(frames)
    }

    pub fn to_json(&self) -> Value {
        let lengths: Vec<Value> = self
            .internal_edges
            .iter()
            .zip(&self.lengths)
            .map(|(&(p, c), l)| json!({ "edge": [p, c], "length": rational_to_string(l) }))
            .collect();
        json!({
            "edges": self.ctype.edges(),
            "xi": self.xi.iter().map(rational_to_string).collect::<Vec<_>>(),
            "lengths": lengths,
        })
    }
}

fn leaf_vertex(rooted: &Rooted, k: usize) -> usize {
    if k == 0 {
        rooted.root_vertex
    } else {
        rooted.parent[k].expect("leaf attached to a vertex")
    }
}

/// Affine description of every vertex position in terms of the unknowns
/// `(ξ, ℓ)`: the list of internal edges on the path from the root vertex.
struct TypeModel {
    rooted: Rooted,
    slopes: Vec<Option<LatticeVector>>,
    internal_edges: Vec<(usize, usize)>,
    /// For each node, indices into `internal_edges` along its path.
    paths: Vec<Vec<usize>>,
}

impl TypeModel {
    fn new(t: &CombinatorialType, tdeg: &[LatticeVector]) -> Self {
        let rooted = t.rooted();
        let slopes = edge_slopes(t, &rooted, tdeg);
        let mut internal_edges = Vec::new();
        let mut paths = vec![Vec::new(); t.num_nodes()];
        for &v in &rooted.preorder {
            if v == rooted.root_vertex || t.is_leaf(v) {
                continue;
            }
            let p = rooted.parent[v].expect("non-root vertex has a parent");
            let mut path = paths[p].clone();
            path.push(internal_edges.len());
            internal_edges.push((p, v));
            paths[v] = path;
        }
        TypeModel {
            rooted,
            slopes,
            internal_edges,
            paths,
        }
    }

    fn edge_slope(&self, e: usize) -> &LatticeVector {
        self.slopes[self.internal_edges[e].1].as_ref().expect("edge slope")
    }

    fn positions(&self, t: &CombinatorialType, xi: &[Rational], lengths: &[Rational]) -> Vec<Option<Vec<Rational>>> {
        let mut pos: Vec<Option<Vec<Rational>>> = vec![None; t.num_nodes()];
        for v in t.internal_vertices() {
            let mut x = xi.to_vec();
            for &e in &self.paths[v] {
                let s = self.edge_slope(e);
                for (xc, &sc) in x.iter_mut().zip(s.coords()) {
                    if sc != 0 {
                        *xc += &lengths[e] * Rational::from_integer(sc.into());
                    }
                }
            }
            pos[v] = Some(x);
        }
        pos
    }

    /// The square matrix of `ev_trop` restricted to this type.
    fn matrix(&self, tdeg: &[LatticeVector], f: &TwoForm, basis: &MonomialBasis) -> Result<Vec<Vec<Rational>>, EngineError> {
        let rank = tdeg[0].rank();
        let ne = self.internal_edges.len();
        let mut rows = Vec::new();
        for m in &basis.monomials {
            let mut row = m.coords().to_vec();
            row.extend(std::iter::repeat_n(Rational::zero(), ne));
            rows.push(row);
        }
        for (k, n) in tdeg.iter().enumerate().skip(1) {
            let mut row = f.contract(n)?.coords().to_vec();
            row.extend(std::iter::repeat_n(Rational::zero(), ne));
            let v = leaf_vertex(&self.rooted, k);
            for &e in &self.paths[v] {
                row[rank + e] = f.eval(n, self.edge_slope(e))?;
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

enum LinearOutcome {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined,
}

/// Exact Gauss-Jordan elimination on `[A | b]`.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> LinearOutcome {
    let n = b.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = Rational::one() / &a[row][col];
        for k in col..ncols {
            a[row][k] *= &inv;
        }
        b[row] *= &inv;
        for i in 0..n {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for k in col..ncols {
                let d = &factor * &a[row][k];
                a[i][k] -= d;
            }
            let d = &factor * &b[row];
            b[i] -= d;
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if b[row..].iter().any(|x| !x.is_zero()) {
        return LinearOutcome::Inconsistent;
    }
    if pivots.len() < ncols {
        return LinearOutcome::Underdetermined;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = b[r].clone();
    }
    LinearOutcome::Unique(x)
}

fn check_shapes(tdeg: &[LatticeVector], f: &TwoForm, basis: &MonomialBasis, c: &TropicalConstraints) -> Result<(), EngineError> {
    let rank = f.rank();
    if tdeg.len() < 3 {
        return Err(EngineError::Shape("tropical degree needs at least three ends".into()));
    }
    if basis.monomials.len() + 2 != rank {
        return Err(EngineError::Shape(format!(
            "expected {} monomials, got {}",
            rank.saturating_sub(2),
            basis.monomials.len()
        )));
    }
    if c.p.len() != basis.monomials.len() || c.mu.len() != tdeg.len() - 1 {
        return Err(EngineError::Shape(format!(
            "constraints need |P| = {} and |μ| = {}",
            basis.monomials.len(),
            tdeg.len() - 1
        )));
    }
    Ok(())
}

impl TropicalSolution {
    /// The curve of type `t` with root vertex at `xi` and the given internal
    /// edge lengths, in the edge order `solve_type` reports. Lengths are not
    /// checked for positivity.
    pub fn from_parts(
        t: &CombinatorialType,
        tdeg: &[LatticeVector],
        xi: Vec<Rational>,
        lengths: Vec<Rational>,
    ) -> Result<Self, EngineError> {
        let model = TypeModel::new(t, tdeg);
        if lengths.len() != model.internal_edges.len() || xi.len() != tdeg[0].rank() {
            return Err(EngineError::Shape("wrong number of lengths or coordinates".into()));
        }
        let positions = model.positions(t, &xi, &lengths);
        Ok(TropicalSolution {
            ctype: t.clone(),
            tdeg: tdeg.to_vec(),
            xi,
            internal_edges: model.internal_edges,
            lengths,
            positions,
            slopes: model.slopes,
            rooted: model.rooted,
        })
    }
}

/// Solves `ev_trop = (P, μ)` on one combinatorial type.
///
/// Returns `Ok(None)` when the unique linear solution has a negative edge
/// length or the system is inconsistent, and `DegenerateConstraints` when a
/// length vanishes (all others nonnegative) or the solution set is not a point.
pub fn solve_type(
    t: &CombinatorialType,
    tdeg: &[LatticeVector],
    f: &TwoForm,
    basis: &MonomialBasis,
    c: &TropicalConstraints,
) -> Result<Option<TropicalSolution>, EngineError> {
    check_shapes(tdeg, f, basis, c)?;
    let model = TypeModel::new(t, tdeg);
    let matrix = model.matrix(tdeg, f, basis)?;
    let rhs: Vec<Rational> = c.p.iter().chain(&c.mu).cloned().collect();
    let x = match solve_linear(matrix, rhs) {
        LinearOutcome::Unique(x) => x,
        LinearOutcome::Inconsistent => return Ok(None),
        LinearOutcome::Underdetermined => {
            return Err(EngineError::DegenerateConstraints(
                "constraints lie in the image of a singular type".into(),
            ))
        }
    };
    let rank = f.rank();
    let (xi, lengths) = x.split_at(rank);
    if lengths.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    if lengths.iter().any(Zero::is_zero) {
        return Err(EngineError::DegenerateConstraints("an edge length vanishes".into()));
    }
    TropicalSolution::from_parts(t, tdeg, xi.to_vec(), lengths.to_vec()).map(Some)
}

/// `ev_trop` of the curve of type `t` with root vertex `xi` and the given
/// internal edge lengths (in the order `solve_type` reports them).
pub fn evaluate_constraints(
    t: &CombinatorialType,
    tdeg: &[LatticeVector],
    f: &TwoForm,
    basis: &MonomialBasis,
    xi: &[Rational],
    lengths: &[Rational],
) -> Result<TropicalConstraints, EngineError> {
    let s = TropicalSolution::from_parts(t, tdeg, xi.to_vec(), lengths.to_vec())?;
    let p = basis
        .monomials
        .iter()
        .map(|m| m.pair_rational(xi))
        .collect::<Result<Vec<_>, _>>()?;
    let mu = tdeg
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, n)| f.eval_rational(&n.to_rational(), s.leaf_vertex_position(k)))
        .collect();
    Ok(TropicalConstraints { p, mu })
}

/// `∏_w (q^{a_w∧b_w} − q^{−a_w∧b_w})` over the internal vertices.
pub fn multiplicity(s: &TropicalSolution, f: &TwoForm) -> Result<BivectorLaurent, EngineError> {
    let mut m = BivectorLaurent::one();
    for frame in s.vertex_frames(f)? {
        m = &m * &binomial(&wedge(&frame.a, &frame.b)?);
    }
    Ok(m)
}

/// `Σ_k ω(n_k, x_k)` over all ends, `x_k` the vertex carrying end `k`.
pub fn tropical_menelaus_check(s: &TropicalSolution, f: &TwoForm) -> Rational {
    s.tdeg
        .iter()
        .enumerate()
        .map(|(k, n)| f.eval_rational(&n.to_rational(), s.leaf_vertex_position(k)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `ω(n₀, x₀) + Σ_{k≥1} μ_k`: zero when `mu` are the moments of `s`.
pub fn moment_defect(s: &TropicalSolution, f: &TwoForm, mu: &[Rational]) -> Rational {
    let root = f.eval_rational(&s.tdeg[0].to_rational(), s.leaf_vertex_position(0));
    mu.iter().fold(root, |acc, m| acc + m)
}

/// Checks that `ω(a, b) ≠ 0` at every non-flat vertex of every combinatorial
/// type of degree `tdeg`, independently of any constraints.
pub fn check_genericity(tdeg: &[LatticeVector], f: &TwoForm) -> Result<(), EngineError> {
    for t in enumerate_types(tdeg.len()) {
        let rooted = t.rooted();
        let slopes = edge_slopes(&t, &rooted, tdeg);
        for v in t.internal_vertices() {
            let [a, b, _] = outgoing_slopes(&rooted, &slopes, v);
            let w = wedge(&a, &b)?;
            if !w.is_zero() && f.eval(&a, &b)?.is_zero() {
                return Err(EngineError::GenericityViolation(w));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub polynomial: BivectorLaurent,
    pub solutions: Vec<TropicalSolution>,
}

/// `Σ_Γ m_Γ^q` over the tropical curves of degree `tdeg` meeting the constraints.
///
/// Types are solved in parallel; results are merged in enumeration order, and
/// the first error in that order is reported.
pub fn count(
    tdeg: &[LatticeVector],
    f: &TwoForm,
    basis: &MonomialBasis,
    c: &TropicalConstraints,
) -> Result<CountResult, EngineError> {
    check_shapes(tdeg, f, basis, c)?;
    let types = enumerate_types(tdeg.len());
    let per_type: Vec<Result<Option<(TropicalSolution, BivectorLaurent)>, EngineError>> = types
        .par_iter()
        .map(|t| {
            let Some(s) = solve_type(t, tdeg, f, basis, c)? else {
                return Ok(None);
            };
            let m = multiplicity(&s, f)?;
            Ok(Some((s, m)))
        })
        .collect();
    let mut polynomial = BivectorLaurent::zero();
    let mut solutions = Vec::new();
    for r in per_type {
        if let Some((s, m)) = r? {
            polynomial = &polynomial + &m;
            solutions.push(s);
        }
    }
    Ok(CountResult {
        polynomial,
        solutions,
    })
}
