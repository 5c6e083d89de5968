//! The diagonal group `D(T, n)` acting on `T^(n-1)`, its invariant graph and
//! proper colourings with `|T|` colours; Hamming graphs as a comparator.
//!
//! Vertices `(t_2, ..., t_n)` are ranked in mixed radix `|T|` with `t_2` most
//! significant. Coordinates are stored 0-based, so slot `k` holds `t_{k+2}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::complete_mapping::CompleteMapping;
use crate::graph::{check_clique, verify_proper_coloring, CertificateError, Graph};
use crate::group::FiniteGroup;
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagonalError {
    #[error("n must be at least {min}, got {n}")]
    SmallN { n: usize, min: usize },
    #[error("this colouring needs n {expected}, got n = {n}")]
    Parity { n: usize, expected: &'static str },
    #[error("|T|^(n-1) does not fit the point index range")]
    TooManyVertices,
    #[error("automorphism {0} is not an automorphism of T")]
    NotAutomorphism(usize),
    #[error("the complete mapping belongs to a group of another order")]
    MappingMismatch,
    #[error("group is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// Which rule makes two vertices adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// Only coordinate `t_coord` differs (`coord` in `2..=n`).
    A1 { coord: usize },
    /// `u_i = x t_i` for every coordinate, `x != 1`.
    A2 { x: usize },
}

/// Implicit graph on `T^(n-1)` with rules A1 and A2.
#[derive(Clone, Debug)]
pub struct DiagonalGraph<'a> {
    t: &'a FiniteGroup,
    n: usize,
    vertex_count: usize,
    include_a2: bool,
}

fn checked_power(q: usize, e: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..e {
        acc = acc.checked_mul(q)?;
    }
    (acc <= u32::MAX as usize).then_some(acc)
}

impl<'a> DiagonalGraph<'a> {
    pub fn new(t: &'a FiniteGroup, n: usize) -> Result<Self, DiagonalError> {
        if n < 2 {
            return Err(DiagonalError::SmallN { n, min: 2 });
        }
        let vertex_count = checked_power(t.order(), n - 1).ok_or(DiagonalError::TooManyVertices)?;
        Ok(Self {
            t,
            n,
            vertex_count,
            include_a2: true,
        })
    }

    /// Same vertices with rule A2 deleted.
    pub fn without_a2(&self) -> Self {
        Self {
            include_a2: false,
            ..self.clone()
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let q = self.t.order();
        let mut out = vec![0; self.n - 1];
        let mut rest = v;
        for slot in out.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        out
    }

    pub fn rank(&self, coords: &[usize]) -> usize {
        let q = self.t.order();
        coords.iter().fold(0, |acc, &c| acc * q + c)
    }

    /// Rule tag for the pair, `None` when equal or non-adjacent. A1 is
    /// reported first when both apply (only possible for `n = 2`).
    pub fn adjacency(&self, u: &[usize], v: &[usize]) -> Option<Adjacency> {
        let mut differing = u.iter().zip(v).enumerate().filter(|(_, (a, b))| a != b);
        let first = differing.next()?.0;
        if differing.next().is_none() {
            return Some(Adjacency::A1 { coord: first + 2 });
        }
        if !self.include_a2 {
            return None;
        }
        // x = u_2 t_2^-1 must work for every coordinate.
        let x = self.t.mul(v[0], self.t.inv(u[0]));
        let all = u.iter().zip(v).all(|(&a, &b)| self.t.mul(x, a) == b);
        all.then_some(Adjacency::A2 { x })
    }

    /// The `n - 1` coordinate cliques followed by the A2 clique through `v`,
    /// each ascending and containing `v`.
    pub fn canonical_cliques(&self, v: usize) -> Vec<Vec<usize>> {
        let c = self.coords(v);
        let q = self.t.order();
        let mut out = Vec::with_capacity(self.n);
        for slot in 0..self.n - 1 {
            let mut w = c.clone();
            let mut clique: Vec<usize> = (0..q)
                .map(|val| {
                    w[slot] = val;
                    self.rank(&w)
                })
                .collect();
            clique.sort_unstable();
            out.push(clique);
        }
        let mut clique: Vec<usize> = (0..q)
            .map(|x| {
                let w: Vec<usize> = c.iter().map(|&ti| self.t.mul(x, ti)).collect();
                self.rank(&w)
            })
            .collect();
        clique.sort_unstable();
        out.push(clique);
        out
    }

    /// Colour `(t_2^-1 t_3)(t_4^-1 t_5)...(t_{n-2}^-1 t_{n-1}) t_n^-1`.
    pub fn coloring_even(&self) -> Result<Coloring, DiagonalError> {
        if !self.n.is_multiple_of(2) || self.n <= 2 {
            return Err(DiagonalError::Parity {
                n: self.n,
                expected: "even and greater than 2",
            });
        }
        let t = self.t;
        let color_of = (0..self.vertex_count)
            .map(|v| {
                let c = self.coords(v);
                let head = pair_product(t, &c[..self.n - 2]);
                t.mul(head, t.inv(c[self.n - 2]))
            })
            .collect();
        Ok(Coloring {
            color_of,
            palette: t.order(),
        })
    }

    /// Colour `(t_2^-1 t_3)...(t_{n-3}^-1 t_{n-2})(t_{n-1}^-1 psi(t_n))`, where
    /// `psi(g) = g phi(g)` for a complete mapping `phi` of `T`.
    pub fn coloring_odd(&self, mapping: &CompleteMapping) -> Result<Coloring, DiagonalError> {
        if self.n % 2 != 1 || self.n < 3 {
            return Err(DiagonalError::Parity {
                n: self.n,
                expected: "odd and at least 3",
            });
        }
        let t = self.t;
        if mapping.phi().len() != t.order() {
            return Err(DiagonalError::MappingMismatch);
        }
        let psi = mapping.psi();
        let color_of = (0..self.vertex_count)
            .map(|v| {
                let c = self.coords(v);
                let head = pair_product(t, &c[..self.n - 3]);
                let tail = t.mul(t.inv(c[self.n - 3]), psi[c[self.n - 2]]);
                t.mul(head, tail)
            })
            .collect();
        Ok(Coloring {
            color_of,
            palette: t.order(),
        })
    }
}

/// `(c_0^-1 c_1)(c_2^-1 c_3)...` over an even-length slice.
fn pair_product(t: &FiniteGroup, c: &[usize]) -> usize {
    c.chunks_exact(2)
        .fold(t.identity(), |acc, p| t.mul(acc, t.mul(t.inv(p[0]), p[1])))
}

impl Graph for DiagonalGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency(&self.coords(u), &self.coords(v)).is_some()
    }

    fn neighbours(&self, u: usize) -> Vec<usize> {
        let c = self.coords(u);
        let q = self.t.order();
        let mut out = Vec::with_capacity(self.n * (q - 1));
        let mut w = c.clone();
        for slot in 0..self.n - 1 {
            for val in 0..q {
                if val != c[slot] {
                    w[slot] = val;
                    out.push(self.rank(&w));
                }
            }
            w[slot] = c[slot];
        }
        if self.include_a2 {
            for x in 0..q {
                if x != self.t.identity() {
                    for (slot, &ti) in c.iter().enumerate() {
                        w[slot] = self.t.mul(x, ti);
                    }
                    out.push(self.rank(&w));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Vertex colouring by elements of a palette `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub color_of: Vec<usize>,
    pub palette: usize,
}

impl Coloring {
    pub fn color_count(&self) -> usize {
        self.fibers().iter().filter(|f| !f.is_empty()).count()
    }

    /// Colour classes indexed by colour.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let size = self
            .color_of
            .iter()
            .copied()
            .max()
            .map_or(self.palette, |m| self.palette.max(m + 1));
        let mut out = vec![Vec::new(); size];
        for (v, &c) in self.color_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Non-empty colour classes, i.e. the partition `P` of a witness.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.fibers().into_iter().filter(|f| !f.is_empty()).collect()
    }
}

/// Proper colouring plus a clique of the same size: clique number equals
/// chromatic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringCertificate {
    pub clique: Vec<usize>,
    pub coloring: Coloring,
}

/// Checks the colouring edge by edge and the clique pair by pair, and that
/// clique size equals the number of colours used.
pub fn certify<G: Graph + ?Sized>(
    graph: &G,
    clique: Vec<usize>,
    coloring: Coloring,
) -> Result<ColouringCertificate, DiagonalError> {
    verify_proper_coloring(graph, &coloring.color_of)?;
    check_clique(graph, &clique)?;
    let used = coloring.color_count();
    if used != clique.len() {
        return Err(CertificateError::SizeProduct {
            clique: clique.len(),
            coclique: used,
            vertices: graph.vertex_count(),
        }
        .into());
    }
    Ok(ColouringCertificate { clique, coloring })
}

/// Generators of `D(T, n)` as permutations of the ranked vertices:
///
/// * G1 `(s_1, ..., s_n): t_i -> s_1^-1 t_i s_i`, one generator of `T` in one
///   slot at a time;
/// * G2 `t_i -> t_i^alpha` for each supplied automorphism (image tables);
/// * G3 adjacent transpositions of the coordinates `2..n`;
/// * G4 `tau: (t_2, ..., t_n) -> (t_2^-1, t_2^-1 t_3, ..., t_2^-1 t_n)`.
pub fn diagonal_group_generators(
    t: &FiniteGroup,
    n: usize,
    automorphisms: &[Vec<usize>],
) -> Result<PermGroup, DiagonalError> {
    let graph = DiagonalGraph::new(t, n)?;
    for (k, alpha) in automorphisms.iter().enumerate() {
        if !is_automorphism(t, alpha) {
            return Err(DiagonalError::NotAutomorphism(k));
        }
    }
    let m = graph.vertex_count();
    let build = |f: &dyn Fn(&[usize]) -> Vec<usize>| -> Result<Permutation, DiagonalError> {
        let images = (0..m).map(|v| graph.rank(&f(&graph.coords(v)))).collect();
        Ok(Permutation::from_images(images)?)
    };
    let id = t.identity();
    let mut gens = Vec::new();
    for s in t.generating_set() {
        for slot in 0..n {
            let mut tuple = vec![id; n];
            tuple[slot] = s;
            let s1_inv = t.inv(tuple[0]);
            gens.push(build(&|c| {
                c.iter()
                    .enumerate()
                    .map(|(k, &ti)| t.mul(t.mul(s1_inv, ti), tuple[k + 1]))
                    .collect()
            })?);
        }
    }
    for alpha in automorphisms {
        gens.push(build(&|c| c.iter().map(|&ti| alpha[ti]).collect())?);
    }
    for slot in 0..n.saturating_sub(2) {
        gens.push(build(&|c| {
            let mut w = c.to_vec();
            w.swap(slot, slot + 1);
            w
        })?);
    }
    gens.push(build(&|c| {
        let head = t.inv(c[0]);
        core::iter::once(head)
            .chain(c[1..].iter().map(|&ti| t.mul(head, ti)))
            .collect()
    })?);
    Ok(PermGroup::new(m, gens)?)
}

fn is_automorphism(t: &FiniteGroup, alpha: &[usize]) -> bool {
    let n = t.order();
    if alpha.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in alpha {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..n).all(|x| (0..n).all(|y| alpha[t.mul(x, y)] == t.mul(alpha[x], alpha[y])))
}

/// `H(n, q)`: tuples over `0..q`, adjacent when they differ in exactly one
/// coordinate. Ranked with the first coordinate most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingGraph {
    n: usize,
    q: usize,
    vertex_count: usize,
}

impl HammingGraph {
    pub fn new(n: usize, q: usize) -> Result<Self, DiagonalError> {
        if n < 1 {
            return Err(DiagonalError::SmallN { n, min: 1 });
        }
        let vertex_count = checked_power(q, n).ok_or(DiagonalError::TooManyVertices)?;
        Ok(Self { n, q, vertex_count })
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        let mut rest = v;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.q;
            rest /= self.q;
        }
        out
    }

    pub fn rank(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.q + c)
    }
}

impl Graph for HammingGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.coords(u), self.coords(v));
        a.iter().zip(&b).filter(|(x, y)| x != y).count() == 1
    }

    fn neighbours(&self, u: usize) -> Vec<usize> {
        let c = self.coords(u);
        let mut w = c.clone();
        let mut out = Vec::with_capacity(self.n * (self.q - 1));
        for slot in 0..self.n {
            for val in 0..self.q {
                if val != c[slot] {
                    w[slot] = val;
                    out.push(self.rank(&w));
                }
            }
            w[slot] = c[slot];
        }
        out.sort_unstable();
        out
    }
}

/// Clique with the first `n - 1` coordinates at the identity, and the
/// colouring by coordinate sum in the abelian group `a`; both verified.
pub fn hamming_witness(
    n: usize,
    a: &FiniteGroup,
) -> Result<(HammingGraph, ColouringCertificate), DiagonalError> {
    if !a.is_abelian() {
        return Err(DiagonalError::NotAbelian);
    }
    let h = HammingGraph::new(n, a.order())?;
    let mut base = vec![a.identity(); n];
    let clique = (0..a.order())
        .map(|x| {
            base[n - 1] = x;
            h.rank(&base)
        })
        .collect::<Vec<_>>();
    let color_of = (0..h.vertex_count())
        .map(|v| h.coords(v).iter().fold(a.identity(), |s, &x| a.mul(s, x)))
        .collect();
    let coloring = Coloring {
        color_of,
        palette: a.order(),
    };
    let mut sorted = clique;
    sorted.sort_unstable();
    let cert = certify(&h, sorted, coloring)?;
    Ok((h, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_group;

    #[test]
    fn adjacency_examples() {
        let z3 = make_group("cyclic 3").unwrap();
        let g = DiagonalGraph::new(&z3, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.adjacency(&[0, 0], &[1, 0]), Some(Adjacency::A1 { coord: 2 }));
        assert_eq!(g.adjacency(&[0, 0], &[1, 1]), Some(Adjacency::A2 { x: 1 }));
        assert_eq!(g.adjacency(&[0, 0], &[1, 2]), None);
        assert_eq!(g.adjacency(&[0, 0], &[0, 0]), None);
    }

    #[test]
    fn clique_examples() {
        let z3 = make_group("cyclic 3").unwrap();
        let g = DiagonalGraph::new(&z3, 3).unwrap();
        let cliques = g.canonical_cliques(0);
        // (0,0),(1,0),(2,0) rank to 0,3,6.
        assert_eq!(cliques[0], vec![0, 3, 6]);
        assert_eq!(cliques[1], vec![0, 1, 2]);
        // (0,0),(1,1),(2,2).
        assert_eq!(cliques[2], vec![0, 4, 8]);
    }

    #[test]
    fn colour_examples() {
        let s3 = make_group("symmetric 3").unwrap();
        let g = DiagonalGraph::new(&s3, 4).unwrap();
        let even = g.coloring_even().unwrap();
        assert_eq!(even.color_of[g.rank(&[0, 0, 0])], s3.identity());
        assert!(verify_proper_coloring(&g, &even.color_of).is_ok());
        assert!(even.fibers().iter().all(|f| f.len() == 36));

        let z3 = make_group("cyclic 3").unwrap();
        let g3 = DiagonalGraph::new(&z3, 3).unwrap();
        let phi = CompleteMapping::new(&z3, vec![0, 1, 2]).unwrap();
        let odd = g3.coloring_odd(&phi).unwrap();
        assert_eq!(odd.color_of[0], 0);
        assert!(verify_proper_coloring(&g3, &odd.color_of).is_ok());
        assert_eq!(
            verify_proper_coloring(&g3, &[0; 9]),
            Err(CertificateError::MonochromaticEdge(0, 1))
        );
        assert!(matches!(g3.coloring_even(), Err(DiagonalError::Parity { .. })));
    }

    #[test]
    fn generator_degrees() {
        let z3 = make_group("cyclic 3").unwrap();
        assert_eq!(diagonal_group_generators(&z3, 3, &[]).unwrap().degree(), 9);
        let s3 = make_group("symmetric 3").unwrap();
        assert_eq!(diagonal_group_generators(&s3, 3, &[]).unwrap().degree(), 36);
        let bad = vec![vec![0, 2, 1, 3, 4, 5]];
        assert!(matches!(
            diagonal_group_generators(&s3, 3, &bad),
            Err(DiagonalError::NotAutomorphism(0))
        ));
    }

    #[test]
    fn hamming_examples() {
        let z3 = make_group("cyclic 3").unwrap();
        let (h, cert) = hamming_witness(2, &z3).unwrap();
        assert_eq!(h.neighbours(0).len(), 4);
        assert_eq!(cert.clique, vec![0, 1, 2]);
        assert_eq!(cert.coloring.color_count(), 3);
    }
}
