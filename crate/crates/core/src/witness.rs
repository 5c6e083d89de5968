//! Non-synchronization `(A, P)` and non-separation `(A, B)` witnesses, exact
//! factorisations of a regular group and the transfers between them.
//!
//! Groups are given as explicit element lists acting on `0..degree`; the
//! caller enumerates them (see [`group_elements`]).

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::graph::{check_clique, check_coclique, CayleyGraph, CertificateError, ConnectionSetError, Graph};
use crate::group::{FiniteGroup, GroupError};
use crate::perm::{PermGroup, Permutation};

pub const ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("set must have more than one element")]
    SetTooSmall,
    #[error("point {0} is out of range")]
    OutOfRange(usize),
    #[error("point {0} is listed twice")]
    Repeated(usize),
    #[error("partition is trivial")]
    TrivialPartition,
    #[error("point {0} is missing from the partition")]
    Uncovered(usize),
    #[error("|A| * |B| = {product}, expected {degree}")]
    SizeProduct { product: usize, degree: usize },
    #[error("|A| = {set} but the partition has {parts} parts")]
    PartCount { set: usize, parts: usize },
    #[error("image of A under {element} meets part {part:?} in {meets} points")]
    NotTransversal {
        element: Permutation,
        part: Vec<usize>,
        meets: usize,
    },
    #[error("image of A under {element} meets B in {meets} points")]
    BadIntersection { element: Permutation, meets: usize },
    #[error("partition parts have unequal sizes")]
    UnequalParts,
    #[error("{a1} {b1} = {a2} {b2}: factorisation is not exact")]
    NotExact {
        a1: usize,
        b1: usize,
        a2: usize,
        b2: usize,
    },
    #[error("element {0} lies in two parts")]
    Overlap(usize),
    #[error("degree {found} differs from {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("A is not a clique of the Cayley graph: {0} and {1}")]
    NotClique(usize, usize),
    #[error(transparent)]
    Connection(#[from] ConnectionSetError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sorted, duplicate-free set of points below `degree`.
pub fn normalise_set(set: &[usize], degree: usize) -> Result<Vec<usize>, WitnessError> {
    let mut seen = BitSet::new(degree);
    for &x in set {
        if x >= degree {
            return Err(WitnessError::OutOfRange(x));
        }
        if !seen.insert(x) {
            return Err(WitnessError::Repeated(x));
        }
    }
    Ok(seen.iter().collect())
}

/// Parts sorted internally and ordered by least element; must cover
/// `0..degree` disjointly.
pub fn canonical_partition(parts: &[Vec<usize>], degree: usize) -> Result<Vec<Vec<usize>>, WitnessError> {
    let mut seen = BitSet::new(degree);
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        if part.is_empty() {
            return Err(WitnessError::TrivialPartition);
        }
        let mut p = part.clone();
        p.sort_unstable();
        for &x in &p {
            if x >= degree {
                return Err(WitnessError::OutOfRange(x));
            }
            if !seen.insert(x) {
                return Err(WitnessError::Overlap(x));
            }
        }
        out.push(p);
    }
    if let Some(x) = (0..degree).find(|&x| !seen.contains(x)) {
        return Err(WitnessError::Uncovered(x));
    }
    out.sort_unstable_by_key(|p| p[0]);
    Ok(out)
}

/// `A` with every image `A g` a transversal of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncWitness {
    pub a: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

impl SyncWitness {
    /// Canonicalises and checks the shape: `|A| > 1`, `|A|` parts, and at
    /// least one part with more than one point.
    pub fn new(a: &[usize], parts: &[Vec<usize>], degree: usize) -> Result<Self, WitnessError> {
        let a = normalise_set(a, degree)?;
        if a.len() < 2 {
            return Err(WitnessError::SetTooSmall);
        }
        let parts = canonical_partition(parts, degree)?;
        if parts.len() < 2 || parts.iter().all(|p| p.len() == 1) {
            return Err(WitnessError::TrivialPartition);
        }
        if parts.len() != a.len() {
            return Err(WitnessError::PartCount {
                set: a.len(),
                parts: parts.len(),
            });
        }
        Ok(Self { a, parts })
    }
}

/// `A`, `B` with `|A g ∩ B| = 1` for every `g` and `|A| |B| = degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SepWitness {
    pub fn new(a: &[usize], b: &[usize], degree: usize) -> Result<Self, WitnessError> {
        let a = normalise_set(a, degree)?;
        let b = normalise_set(b, degree)?;
        if a.len() < 2 || b.len() < 2 {
            return Err(WitnessError::SetTooSmall);
        }
        if a.len() * b.len() != degree {
            return Err(WitnessError::SizeProduct {
                product: a.len() * b.len(),
                degree,
            });
        }
        Ok(Self { a, b })
    }
}

/// Every element of `H` is `a b` for exactly one `a` in `A`, `b` in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFactorisation<'h> {
    h: &'h FiniteGroup,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl<'h> ExactFactorisation<'h> {
    /// Checks `|A| |B| = |H|` and that the product map is injective.
    pub fn new(h: &'h FiniteGroup, a: &[usize], b: &[usize]) -> Result<Self, WitnessError> {
        let a = normalise_set(a, h.order())?;
        let b = normalise_set(b, h.order())?;
        if a.len() * b.len() != h.order() {
            return Err(WitnessError::SizeProduct {
                product: a.len() * b.len(),
                degree: h.order(),
            });
        }
        let mut owner: Vec<Option<(usize, usize)>> = vec![None; h.order()];
        for &x in &a {
            for &y in &b {
                let p = h.mul(x, y);
                if let Some((a1, b1)) = owner[p] {
                    return Err(WitnessError::NotExact {
                        a1,
                        b1,
                        a2: x,
                        b2: y,
                    });
                }
                owner[p] = Some((x, y));
            }
        }
        Ok(Self { h, a, b })
    }

    pub fn group(&self) -> &'h FiniteGroup {
        self.h
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }
}

/// Elements of `⟨g⟩` in closure order, capped at [`ENUMERATION_CAP`].
pub fn group_elements(g: &PermGroup) -> Result<Vec<Permutation>, WitnessError> {
    Ok(g.elements(ENUMERATION_CAP)?)
}

fn check_degree(elements: &[Permutation], degree: usize) -> Result<(), WitnessError> {
    match elements.iter().find(|e| e.degree() != degree) {
        Some(e) => Err(WitnessError::DegreeMismatch {
            expected: degree,
            found: e.degree(),
        }),
        None => Ok(()),
    }
}

/// First element (in list order) and part where `A g` fails to be a
/// transversal.
pub fn verify_sync_witness(
    elements: &[Permutation],
    degree: usize,
    w: &SyncWitness,
) -> Result<(), WitnessError> {
    check_degree(elements, degree)?;
    let checked = SyncWitness::new(&w.a, &w.parts, degree)?;
    let mut part_of = vec![0; degree];
    for (k, p) in checked.parts.iter().enumerate() {
        for &x in p {
            part_of[x] = k;
        }
    }
    let mut hits = vec![0usize; checked.parts.len()];
    for g in elements {
        hits.iter_mut().for_each(|h| *h = 0);
        for &x in &checked.a {
            hits[part_of[g.image(x)]] += 1;
        }
        if let Some(k) = hits.iter().position(|&h| h != 1) {
            return Err(WitnessError::NotTransversal {
                element: g.clone(),
                part: checked.parts[k].clone(),
                meets: hits[k],
            });
        }
    }
    Ok(())
}

/// First element (in list order) with `|A g ∩ B| != 1`.
pub fn verify_sep_witness(
    elements: &[Permutation],
    degree: usize,
    w: &SepWitness,
) -> Result<(), WitnessError> {
    check_degree(elements, degree)?;
    let checked = SepWitness::new(&w.a, &w.b, degree)?;
    let mut in_b = BitSet::new(degree);
    for &x in &checked.b {
        in_b.insert(x);
    }
    for g in elements {
        let meets = checked.a.iter().filter(|&&x| in_b.contains(g.image(x))).count();
        if meets != 1 {
            return Err(WitnessError::BadIntersection {
                element: g.clone(),
                meets,
            });
        }
    }
    Ok(())
}

/// `(A, B)` with `B` a largest part of `P` (least such by position).
/// All parts of a verified witness have equal size; unequal sizes are an error.
pub fn sync_witness_to_sep(w: &SyncWitness) -> Result<SepWitness, WitnessError> {
    let size = w.parts.first().map_or(0, Vec::len);
    if w.parts.iter().any(|p| p.len() != size) {
        return Err(WitnessError::UnequalParts);
    }
    let degree = w.parts.iter().map(Vec::len).sum();
    let b = w
        .parts
        .iter()
        .max_by_key(|p| (p.len(), core::cmp::Reverse(p[0])))
        .cloned()
        .unwrap_or_default();
    SepWitness::new(&w.a, &b, degree)
}

/// `H` acting on itself by right multiplication, as permutations.
pub fn right_regular_elements(h: &FiniteGroup) -> Vec<Permutation> {
    (0..h.order()).map(|g| h.right_regular(g)).collect()
}

/// Group generated by the left and right regular actions of `H`.
pub fn left_right_group(h: &FiniteGroup) -> PermGroup {
    let mut gens = Vec::new();
    for g in h.generating_set() {
        gens.push(h.right_regular(g));
        gens.push(h.left_regular(g));
    }
    PermGroup::new(h.order(), gens).expect("regular actions share the degree")
}

/// A separating pair for the right-regular action of `H` gives the exact
/// factorisation `H = A^-1 B`.
pub fn witness_to_factorisation<'h>(
    h: &'h FiniteGroup,
    w: &SepWitness,
) -> Result<ExactFactorisation<'h>, WitnessError> {
    verify_sep_witness(&right_regular_elements(h), h.order(), w)?;
    let a_inv: Vec<usize> = w.a.iter().map(|&x| h.inv(x)).collect();
    ExactFactorisation::new(h, &a_inv, &w.b)
}

/// Partition `{A b : b in B}`, canonicalised.
pub fn factorisation_to_partition(f: &ExactFactorisation<'_>) -> Result<Vec<Vec<usize>>, WitnessError> {
    let h = f.group();
    let parts: Vec<Vec<usize>> = f
        .b()
        .iter()
        .map(|&b| f.a().iter().map(|&a| h.mul(a, b)).collect())
        .collect();
    canonical_partition(&parts, h.order())
}

/// Checks `S` (identity-free, inverse- and conjugation-closed) and that
/// `a_2^-1 a_1` lies in `S` for distinct `a_1, a_2` in `A`; returns `A^-1`,
/// sorted.
pub fn cayley_inverse_clique(
    h: &FiniteGroup,
    s: &[usize],
    a: &[usize],
) -> Result<Vec<usize>, WitnessError> {
    let graph = CayleyGraph::new(h, s)?;
    graph.check_conjugation_closed()?;
    let a = normalise_set(a, h.order())?;
    check_clique(&graph, &a).map_err(|e| match e {
        CertificateError::MissingEdge(u, v) => WitnessError::NotClique(u, v),
        other => other.into(),
    })?;
    let set = graph.connection_set();
    for &a1 in &a {
        for &a2 in &a {
            if a1 != a2 && set.binary_search(&h.mul(h.inv(a2), a1)).is_err() {
                return Err(WitnessError::NotClique(a1, a2));
            }
        }
    }
    let mut inv: Vec<usize> = a.iter().map(|&x| h.inv(x)).collect();
    inv.sort_unstable();
    check_clique(&graph, &inv)?;
    Ok(inv)
}

/// `A` a clique, `B` a coclique and `|A| |B|` equal to the vertex count.
pub fn clique_coclique_check<G: Graph + ?Sized>(
    graph: &G,
    a: &[usize],
    b: &[usize],
) -> Result<(), WitnessError> {
    check_clique(graph, a)?;
    check_coclique(graph, b)?;
    if a.len() * b.len() != graph.vertex_count() {
        return Err(CertificateError::SizeProduct {
            clique: a.len(),
            coclique: b.len(),
            vertices: graph.vertex_count(),
        }
        .into());
    }
    Ok(())
}

/// Result of [`factorisation_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    pub factor_a: Vec<usize>,
    pub factor_b: Vec<usize>,
    pub sync: SyncWitness,
    pub sep: SepWitness,
}

/// From a separating pair `(A, B)` for a group containing the right action
/// of `H`: the exact factorisation `(A^-1, B)`, the partition
/// `P = {A^-1 b}`, the synchronizing witness `(B, P)` and the separating
/// pair recovered from it. Every step is verified against `elements`.
pub fn factorisation_pipeline(
    h: &FiniteGroup,
    elements: &[Permutation],
    w: &SepWitness,
) -> Result<PipelineReport, WitnessError> {
    verify_sep_witness(elements, h.order(), w)?;
    let f = witness_to_factorisation(h, w)?;
    let parts = factorisation_to_partition(&f)?;
    let sync = SyncWitness::new(&w.b, &parts, h.order())?;
    verify_sync_witness(elements, h.order(), &sync)?;
    let sep = sync_witness_to_sep(&sync)?;
    verify_sep_witness(elements, h.order(), &sep)?;
    Ok(PipelineReport {
        factor_a: f.a().to_vec(),
        factor_b: f.b().to_vec(),
        sync,
        sep,
    })
}
