//! Leaf-labelled trivalent trees and their balanced edge slopes.

use crate::lattice::LatticeVector;

/// A trivalent tree with leaves `0..L`.
///
/// Nodes `0..L` are the leaves and nodes `L..2L−2` are the internal vertices.
/// Edges are unordered node pairs kept in insertion order, which makes the
/// enumeration order (and everything downstream) deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    num_leaves: usize,
    edges: Vec<(usize, usize)>,
}

/// A tree rooted at leaf 0. The root vertex is the internal vertex adjacent
/// to leaf 0; every other node points at its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rooted {
    pub root_vertex: usize,
    /// `parent[v]` for every node; leaf 0 has none.
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Nodes in depth-first preorder starting at the root vertex.
    pub preorder: Vec<usize>,
}

impl CombinatorialType {
    /// The tree with three leaves meeting at a single vertex.
    pub fn tripod() -> Self {
        CombinatorialType {
            num_leaves: 3,
            edges: vec![(3, 0), (3, 1), (3, 2)],
        }
    }

    pub fn num_leaves(&self) -> usize {
        self.num_leaves
    }

    pub fn num_nodes(&self) -> usize {
        2 * self.num_leaves - 2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.num_leaves
    }

    pub fn internal_vertices(&self) -> std::ops::Range<usize> {
        self.num_leaves..self.num_nodes()
    }

    /// Edges joining two internal vertices, in edge order.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(a, b)| !self.is_leaf(a) && !self.is_leaf(b))
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Inserts a new leaf, relabelled as internal vertex numbering shifts by one.
    fn insert_leaf(&self, edge_index: usize) -> Self {
        let old_l = self.num_leaves;
        let relabel = |v: usize| if v >= old_l { v + 1 } else { v };
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
        let new_leaf = old_l;
        let new_vertex = 2 * (old_l + 1) - 3;
        let (a, b) = edges[edge_index];
        edges[edge_index] = (a, new_vertex);
        edges.push((new_vertex, b));
        edges.push((new_vertex, new_leaf));
        CombinatorialType {
            num_leaves: old_l + 1,
            edges,
        }
    }

    /// Roots the tree at leaf 0.
    pub fn rooted(&self) -> Rooted {
        let adj = self.adjacency();
        let n = self.num_nodes();
        let root_vertex = adj[0][0];
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut preorder = Vec::with_capacity(n);
        parent[root_vertex] = Some(0);
        let mut stack = vec![root_vertex];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            let mut kids: Vec<usize> = adj[v].iter().copied().filter(|&w| Some(w) != parent[v]).collect();
            kids.sort_unstable();
            for &w in &kids {
                parent[w] = Some(v);
            }
            for &w in kids.iter().rev() {
                stack.push(w);
            }
            children[v] = kids;
        }
        Rooted {
            root_vertex,
            parent,
            children,
            preorder,
        }
    }

    /// Checks the structural invariants: a connected acyclic graph on
    /// `2L−2` nodes whose leaves have degree 1 and internal vertices degree 3.
    pub fn is_valid(&self) -> bool {
        let l = self.num_leaves;
        if l < 3 || self.edges.len() != 2 * l - 3 {
            return false;
        }
        let adj = self.adjacency();
        for (v, nbrs) in adj.iter().enumerate() {
            let want = if v < l { 1 } else { 3 };
            if nbrs.len() != want {
                return false;
            }
        }
        let mut seen = vec![false; self.num_nodes()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s) && self.internal_edges().len() == l - 3
    }

    /// The split of leaves induced by each internal edge, each side sorted,
    /// normalised so the side containing leaf 0 comes first. Two labelled
    /// trees are isomorphic iff their split sets agree.
    pub fn splits(&self) -> Vec<Vec<usize>> {
        let rooted = self.rooted();
        let below = leaves_below(self, &rooted);
        let mut out: Vec<Vec<usize>> = self
            .internal_edges()
            .iter()
            .map(|&(a, b)| {
                let child = if rooted.parent[b] == Some(a) { b } else { a };
                below[child].clone()
            })
            .collect();
        out.sort();
        out
    }
}

/// Leaves in the subtree of each node (for leaf 0: none).
pub fn leaves_below(t: &CombinatorialType, rooted: &Rooted) -> Vec<Vec<usize>> {
    let mut below = vec![Vec::new(); t.num_nodes()];
    for &v in rooted.preorder.iter().rev() {
        if t.is_leaf(v) {
            below[v] = vec![v];
        } else {
            let mut acc: Vec<usize> = rooted.children[v].iter().flat_map(|&c| below[c].clone()).collect();
            acc.sort_unstable();
            below[v] = acc;
        }
    }
    below
}

/// All `(2L−5)!!` leaf-labelled trivalent trees with `num_leaves` leaves,
/// generated by inserting leaf `k` into each edge of every tree on `k` leaves.
pub fn enumerate_types(num_leaves: usize) -> Vec<CombinatorialType> {
    assert!(num_leaves >= 3, "a trivalent tree needs at least three leaves");
    let mut level = vec![CombinatorialType::tripod()];
    for _ in 3..num_leaves {
        level = level
            .iter()
            .flat_map(|t| (0..t.edges.len()).map(move |e| t.insert_leaf(e)))
            .collect();
    }
    level
}

/// `(2L−5)!!`.
pub fn type_count(num_leaves: usize) -> u64 {
    (1..=(2 * num_leaves as u64).saturating_sub(5)).step_by(2).product()
}

/// Slope of every non-root edge, directed away from leaf 0 and indexed by
/// its child node: the sum of the degree vectors of the leaves behind it.
/// The entry of the root vertex is the slope of the edge coming from leaf 0.
pub fn edge_slopes(t: &CombinatorialType, rooted: &Rooted, tdeg: &[LatticeVector]) -> Vec<Option<LatticeVector>> {
    assert_eq!(tdeg.len(), t.num_leaves(), "degree size differs from leaf count");
    let rank = tdeg[0].rank();
    let mut slope: Vec<Option<LatticeVector>> = vec![None; t.num_nodes()];
    for &v in rooted.preorder.iter().rev() {
        let s = if t.is_leaf(v) {
            tdeg[v].clone()
        } else {
            LatticeVector::sum(
                rank,
                rooted.children[v].iter().map(|&c| slope[c].as_ref().expect("child visited first")),
            )
        };
        slope[v] = Some(s);
    }
    slope
}

/// The three outgoing slopes at an internal vertex: the two children first,
/// then the edge back towards leaf 0.
pub fn outgoing_slopes(rooted: &Rooted, slopes: &[Option<LatticeVector>], v: usize) -> [LatticeVector; 3] {
    let kids = &rooted.children[v];
    assert_eq!(kids.len(), 2, "internal vertex must be trivalent");
    let a = slopes[kids[0]].clone().expect("slope");
    let b = slopes[kids[1]].clone().expect("slope");
    let c = -slopes[v].as_ref().expect("slope");
    [a, b, c]
}
