//! Graphs given by an adjacency predicate, plus colouring, clique and
//! coclique certificate checks that stream edges instead of storing them.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::group::FiniteGroup;

/// Simple undirected graph on `0..vertex_count()`.
pub trait Graph {
    fn vertex_count(&self) -> usize;

    /// Irreflexive and symmetric.
    fn adjacent(&self, u: usize, v: usize) -> bool;

    /// Neighbours of `u`, ascending. The default scans every vertex.
    fn neighbours(&self, u: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| v != u && self.adjacent(u, v))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("colour list has {found} entries for {expected} vertices")]
    ColouringLength { expected: usize, found: usize },
    #[error("edge {{{0}, {1}}} is monochromatic")]
    MonochromaticEdge(usize, usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is listed twice")]
    RepeatedVertex(usize),
    #[error("{0} and {1} are not adjacent, so the set is not a clique")]
    MissingEdge(usize, usize),
    #[error("{0} and {1} are adjacent, so the set is not a coclique")]
    UnexpectedEdge(usize, usize),
    #[error("clique size {clique} times coclique size {coclique} is not {vertices}")]
    SizeProduct {
        clique: usize,
        coclique: usize,
        vertices: usize,
    },
}

/// First monochromatic edge `{u, v}` with `u < v`, in lexicographic order.
pub fn verify_proper_coloring<G: Graph + ?Sized>(
    graph: &G,
    color_of: &[usize],
) -> Result<(), CertificateError> {
    let n = graph.vertex_count();
    if color_of.len() != n {
        return Err(CertificateError::ColouringLength {
            expected: n,
            found: color_of.len(),
        });
    }
    for u in 0..n {
        for v in graph.neighbours(u) {
            if v > u && color_of[u] == color_of[v] {
                return Err(CertificateError::MonochromaticEdge(u, v));
            }
        }
    }
    Ok(())
}

fn check_members<G: Graph + ?Sized>(graph: &G, set: &[usize]) -> Result<(), CertificateError> {
    let mut seen = BitSet::new(graph.vertex_count());
    for &v in set {
        if v >= graph.vertex_count() {
            return Err(CertificateError::VertexOutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(CertificateError::RepeatedVertex(v));
        }
    }
    Ok(())
}

pub fn check_clique<G: Graph + ?Sized>(graph: &G, set: &[usize]) -> Result<(), CertificateError> {
    check_members(graph, set)?;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if !graph.adjacent(u, v) {
                return Err(CertificateError::MissingEdge(u, v));
            }
        }
    }
    Ok(())
}

pub fn check_coclique<G: Graph + ?Sized>(graph: &G, set: &[usize]) -> Result<(), CertificateError> {
    check_members(graph, set)?;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if graph.adjacent(u, v) {
                return Err(CertificateError::UnexpectedEdge(u, v));
            }
        }
    }
    Ok(())
}

/// Adjacency-matrix graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    adj: Vec<BitSet>,
}

impl ExplicitGraph {
    /// Loops are ignored; edges are symmetrised.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, CertificateError> {
        let mut adj = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(CertificateError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(CertificateError::VertexOutOfRange(v));
            }
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        Ok(Self { adj })
    }

    /// Materialises any graph.
    pub fn from_graph<G: Graph + ?Sized>(graph: &G) -> Self {
        let n = graph.vertex_count();
        let mut adj = vec![BitSet::new(n); n];
        for (u, row) in adj.iter_mut().enumerate() {
            for v in graph.neighbours(u) {
                row.insert(v);
            }
        }
        Self { adj }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Petersen graph: 2-subsets of a 5-set, adjacent when disjoint.
    pub fn petersen() -> Self {
        let pairs = pairs_of(5);
        let mut edges = Vec::new();
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate().skip(i + 1) {
                if p[0] != q[0] && p[0] != q[1] && p[1] != q[0] && p[1] != q[1] {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(pairs.len(), &edges).expect("indices in range")
    }
}

/// The 2-subsets `[x, y]`, `x < y`, of `0..n` in lexicographic order.
pub fn pairs_of(n: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            out.push([x, y]);
        }
    }
    out
}

impl Graph for ExplicitGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    fn neighbours(&self, u: usize) -> Vec<usize> {
        self.adj[u].iter().collect()
    }
}

/// Latin square graph of a Cayley table: cell `(r, c)` is vertex `r * n + c`
/// with symbol `r * c`; cells are adjacent when they share a row, a column
/// or a symbol.
#[derive(Clone, Copy, Debug)]
pub struct LatinSquareGraph<'a> {
    group: &'a FiniteGroup,
}

impl<'a> LatinSquareGraph<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        Self { group }
    }
}

impl Graph for LatinSquareGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.group.order() * self.group.order()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let n = self.group.order();
        let (r1, c1, r2, c2) = (u / n, u % n, v / n, v % n);
        u != v && (r1 == r2 || c1 == c2 || self.group.mul(r1, c1) == self.group.mul(r2, c2))
    }

    fn neighbours(&self, u: usize) -> Vec<usize> {
        let g = self.group;
        let n = g.order();
        let (r, c) = (u / n, u % n);
        let s = g.mul(r, c);
        let mut out = Vec::with_capacity(3 * (n - 1));
        for x in 0..n {
            if x != c {
                out.push(r * n + x);
            }
            if x != r {
                out.push(x * n + c);
                // r' c' = s with r' = x.
                out.push(x * n + g.mul(g.inv(x), s));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Cayley graph `Cay(H, S)`: `x ~ y` iff `y x^-1` lies in `S`.
#[derive(Clone, Debug)]
pub struct CayleyGraph<'a> {
    group: &'a FiniteGroup,
    connection: BitSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConnectionSetError {
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set contains {0} but not its inverse")]
    NotInverseClosed(usize),
    #[error("connection set contains {0} but not its conjugate {1}")]
    NotConjugationClosed(usize, usize),
}

impl<'a> CayleyGraph<'a> {
    /// `S` must be identity-free and inverse-closed.
    pub fn new(group: &'a FiniteGroup, connection: &[usize]) -> Result<Self, ConnectionSetError> {
        let mut set = BitSet::new(group.order());
        for &s in connection {
            if s >= group.order() {
                return Err(ConnectionSetError::OutOfRange(s));
            }
            set.insert(s);
        }
        if set.contains(group.identity()) {
            return Err(ConnectionSetError::ContainsIdentity);
        }
        for s in set.iter() {
            if !set.contains(group.inv(s)) {
                return Err(ConnectionSetError::NotInverseClosed(s));
            }
        }
        Ok(Self {
            group,
            connection: set,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn connection_set(&self) -> Vec<usize> {
        self.connection.iter().collect()
    }

    /// First `(s, g^-1 s g)` escaping `S`, if any.
    pub fn check_conjugation_closed(&self) -> Result<(), ConnectionSetError> {
        for s in self.connection.iter() {
            for g in 0..self.group.order() {
                let c = self.group.conjugate(s, g);
                if !self.connection.contains(c) {
                    return Err(ConnectionSetError::NotConjugationClosed(s, c));
                }
            }
        }
        Ok(())
    }
}

impl Graph for CayleyGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.group.order()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.connection
            .contains(self.group.mul(v, self.group.inv(u)))
    }

    fn neighbours(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .connection
            .iter()
            .map(|s| self.group.mul(s, u))
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_group;

    fn max_set_size(g: &ExplicitGraph, clique: bool) -> usize {
        let n = g.vertex_count();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = if clique {
                check_clique(g, &set).is_ok()
            } else {
                check_coclique(g, &set).is_ok()
            };
            if ok {
                best = best.max(set.len());
            }
        }
        best
    }

    #[test]
    fn petersen_parameters() {
        let p = ExplicitGraph::petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.neighbours(v).len() == 3));
        assert_eq!(max_set_size(&p, true), 2);
        assert_eq!(max_set_size(&p, false), 4);
    }

    #[test]
    fn colouring_violation_is_first_in_order() {
        let p = ExplicitGraph::petersen();
        assert_eq!(
            verify_proper_coloring(&p, &[0; 10]),
            Err(CertificateError::MonochromaticEdge(0, 7))
        );
        assert!(matches!(
            verify_proper_coloring(&p, &[0; 3]),
            Err(CertificateError::ColouringLength { .. })
        ));
    }

    #[test]
    fn latin_square_neighbourhoods_match_predicate() {
        let s3 = make_group("symmetric 3").unwrap();
        let g = LatinSquareGraph::new(&s3);
        let explicit = ExplicitGraph::from_edges(
            36,
            &(0..36)
                .flat_map(|u| (0..36).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && g.adjacent(u, v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for u in 0..36 {
            assert_eq!(g.neighbours(u), explicit.neighbours(u));
            assert_eq!(g.neighbours(u).len(), 15);
        }
    }

    #[test]
    fn cayley_graph_checks() {
        let z5 = make_group("cyclic 5").unwrap();
        let c = CayleyGraph::new(&z5, &[1, 4]).unwrap();
        assert!(c.adjacent(0, 1) && c.adjacent(1, 0) && !c.adjacent(0, 2));
        assert_eq!(c.neighbours(0), vec![1, 4]);
        assert!(c.check_conjugation_closed().is_ok());
        assert_eq!(
            CayleyGraph::new(&z5, &[1]).unwrap_err(),
            ConnectionSetError::NotInverseClosed(1)
        );
        assert_eq!(
            CayleyGraph::new(&z5, &[0]).unwrap_err(),
            ConnectionSetError::ContainsIdentity
        );
    }
}
