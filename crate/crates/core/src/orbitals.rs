//! Suborbits, orbital pairing and collapsed adjacency matrices of a
//! transitive permutation group, the intersection algebra they span and the
//! double-coset containment checks read off from them.
//!
//! Convention: with `u_j` mapping the base point to the representative of
//! suborbit `j`, entry `(j, k)` of `A_i` counts the points of `O_i u_j` that
//! lie in `O_k`. Rows sum to `|O_i|`; row 0 is `|O_i| e_i`; column 0 is
//! `e_{i*}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitalError {
    #[error("base point {0} is out of range")]
    BaseOutOfRange(usize),
    #[error("group is not transitive: the base orbit has {orbit} of {degree} points")]
    NotTransitive { orbit: usize, degree: usize },
    #[error("orbital index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("suborbit ordering is not a permutation of 0..{0} fixing 0")]
    BadOrdering(usize),
    #[error("matrix {index} is not {rank} x {rank}")]
    Shape { index: usize, rank: usize },
    #[error("span has dimension {found}, expected {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("first rows of the algebra do not span: no element with first row e_{0}")]
    FirstRowSingular(usize),
    #[error("basis element {index} has {weight} non-zero entries in its first column")]
    FirstColumnWeight { index: usize, weight: usize },
    #[error("entry ({row}, {col}) of basis element {index} is not a non-negative integer")]
    NonIntegral { index: usize, row: usize, col: usize },
    #[error("matrices are not indexed in order: position {0}")]
    Unordered(usize),
    #[error("pairing is not an involution at {0}")]
    BadPairing(usize),
    #[error("multiplicity and indicator lists differ in length")]
    LengthMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalDecomposition {
    pub base: usize,
    /// Suborbit 0 is `{base}`; each suborbit is sorted.
    pub suborbits: Vec<Vec<usize>>,
    pub suborbit_of: Vec<usize>,
    pub pairing: Vec<usize>,
    pub subdegrees: Vec<usize>,
    /// `transversal[j]` maps the base to the least point of suborbit `j`.
    pub transversal: Vec<Permutation>,
}

impl OrbitalDecomposition {
    pub fn rank(&self) -> usize {
        self.suborbits.len()
    }

    pub fn degree(&self) -> usize {
        self.suborbit_of.len()
    }

    pub fn self_paired_count(&self) -> usize {
        (0..self.rank()).filter(|&i| self.pairing[i] == i).count()
    }

    /// Renumbers suborbits: new suborbit `n` is old suborbit `order[n]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self, OrbitalError> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if order.len() != r || order.first() != Some(&0) {
            return Err(OrbitalError::BadOrdering(r));
        }
        for &o in order {
            if o >= r || seen[o] {
                return Err(OrbitalError::BadOrdering(r));
            }
            seen[o] = true;
        }
        let mut new_of_old = vec![0; r];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        Ok(Self {
            base: self.base,
            suborbits: order.iter().map(|&o| self.suborbits[o].clone()).collect(),
            suborbit_of: self.suborbit_of.iter().map(|&s| new_of_old[s]).collect(),
            pairing: order.iter().map(|&o| new_of_old[self.pairing[o]]).collect(),
            subdegrees: order.iter().map(|&o| self.subdegrees[o]).collect(),
            transversal: order.iter().map(|&o| self.transversal[o].clone()).collect(),
        })
    }
}

/// Suborbits of a transitive group: `{base}` first, then by (size, least
/// point). The pair of suborbit `j` is the suborbit of `base u_j^-1`.
pub fn orbital_decomposition(g: &PermGroup, base: usize) -> Result<OrbitalDecomposition, OrbitalError> {
    let degree = g.degree();
    if base >= degree {
        return Err(OrbitalError::BaseOutOfRange(base));
    }
    let (orbit, transversal) = g.orbit_with_transversal(base);
    if orbit.len() != degree {
        return Err(OrbitalError::NotTransitive {
            orbit: orbit.len(),
            degree,
        });
    }
    let mut to_point = vec![Permutation::identity(degree); degree];
    for (x, u) in orbit.iter().zip(transversal) {
        to_point[*x] = u;
    }
    let (_, stabilizer) = g.orbit_and_stabilizer(base);
    let mut suborbits = stabilizer.orbits();
    suborbits.sort_by_key(|s| (s[0] != base, s.len(), s[0]));
    let mut suborbit_of = vec![0; degree];
    for (i, s) in suborbits.iter().enumerate() {
        for &x in s {
            suborbit_of[x] = i;
        }
    }
    let transversal: Vec<Permutation> = suborbits.iter().map(|s| to_point[s[0]].clone()).collect();
    let pairing = transversal
        .iter()
        .map(|u| suborbit_of[u.inverse().image(base)])
        .collect();
    Ok(OrbitalDecomposition {
        base,
        subdegrees: suborbits.iter().map(Vec::len).collect(),
        suborbits,
        suborbit_of,
        pairing,
        transversal,
    })
}

/// Collapsed adjacency matrix of one orbital.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedAdjacency {
    pub orbital: usize,
    pub matrix: Vec<Vec<u64>>,
}

impl CollapsedAdjacency {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn subdegree(&self) -> u64 {
        self.matrix[0].iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }

    /// Rows have the common sum, row 0 is supported on column `orbital`,
    /// column 0 has a single 1.
    pub fn is_well_formed(&self) -> bool {
        let r = self.rank();
        let k = self.subdegree();
        let first_row_ok = (0..r).all(|c| (self.matrix[0][c] != 0) == (c == self.orbital));
        let col: Vec<u64> = self.matrix.iter().map(|row| row[0]).collect();
        first_row_ok
            && self.matrix.iter().all(|row| row.len() == r)
            && self.row_sums().iter().all(|&s| s == k)
            && col.iter().filter(|&&x| x != 0).count() == 1
            && col.contains(&1)
    }

    /// Row index of the 1 in column 0.
    pub fn paired_index(&self) -> Option<usize> {
        self.matrix.iter().position(|row| row[0] != 0)
    }
}

/// `A_i[j][k] = |O_i u_j ∩ O_k|`.
pub fn collapsed_adjacency(dec: &OrbitalDecomposition, i: usize) -> Result<CollapsedAdjacency, OrbitalError> {
    let r = dec.rank();
    if i >= r {
        return Err(OrbitalError::IndexOutOfRange { index: i, rank: r });
    }
    let mut matrix = vec![vec![0u64; r]; r];
    for (j, u) in dec.transversal.iter().enumerate() {
        for &y in &dec.suborbits[i] {
            matrix[j][dec.suborbit_of[u.image(y)]] += 1;
        }
    }
    Ok(CollapsedAdjacency { orbital: i, matrix })
}

type RatMatrix = Vec<Vec<BigRational>>;

fn to_rational(m: &[Vec<u64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let r = a.len();
    let mut out = vec![vec![BigRational::zero(); r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..r {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Incremental row-echelon basis of a rational vector space.
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Reduces `v`; returns whether it was independent (and then keeps it).
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for (_, row) in self.rows.iter_mut() {
                    if !row[p].is_zero() {
                        let f = row[p].clone();
                        for (x, y) in row.iter_mut().zip(&v) {
                            if !y.is_zero() {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

/// Solves `x M = target` for square `M` (rows are equations' coefficients).
fn solve_left(m: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    // Augmented system on the transpose: M^T x^T = target^T.
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|c| {
            let mut row: Vec<BigRational> = (0..n).map(|r| m[r][c].clone()).collect();
            row.push(target[c].clone());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Spans the unital algebra generated by `generators` (square, order `rank`),
/// checks its dimension is `rank`, and returns for each `i` the element with
/// first row supported on `e_i`, scaled so its first-column entry is 1.
pub fn intersection_algebra_expand(
    generators: &[CollapsedAdjacency],
    rank: usize,
) -> Result<Vec<CollapsedAdjacency>, OrbitalError> {
    for (index, g) in generators.iter().enumerate() {
        if g.rank() != rank || g.matrix.iter().any(|row| row.len() != rank) {
            return Err(OrbitalError::Shape { index, rank });
        }
    }
    let gens: Vec<RatMatrix> = generators.iter().map(|g| to_rational(&g.matrix)).collect();
    let flatten = |m: &RatMatrix| m.iter().flatten().cloned().collect::<Vec<_>>();
    let identity: RatMatrix = (0..rank)
        .map(|i| (0..rank).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut echelon = Echelon::new();
    let mut basis: Vec<RatMatrix> = Vec::new();
    echelon.insert(flatten(&identity));
    basis.push(identity);
    let mut head = 0;
    while head < basis.len() {
        for g in &gens {
            let p = mat_mul(&basis[head], g);
            if echelon.insert(flatten(&p)) {
                basis.push(p);
                if basis.len() > rank {
                    return Err(OrbitalError::DimensionMismatch {
                        found: basis.len(),
                        expected: rank,
                    });
                }
            }
        }
        head += 1;
    }
    if basis.len() != rank {
        return Err(OrbitalError::DimensionMismatch {
            found: basis.len(),
            expected: rank,
        });
    }
    let first_rows: Vec<Vec<BigRational>> = basis.iter().map(|m| m[0].clone()).collect();
    let mut out = Vec::with_capacity(rank);
    for i in 0..rank {
        let target: Vec<BigRational> = (0..rank)
            .map(|c| if c == i { BigRational::one() } else { BigRational::zero() })
            .collect();
        let coeffs = solve_left(&first_rows, &target).ok_or(OrbitalError::FirstRowSingular(i))?;
        let mut m = vec![vec![BigRational::zero(); rank]; rank];
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (row, brow) in m.iter_mut().zip(b) {
                for (x, y) in row.iter_mut().zip(brow) {
                    *x += c * y;
                }
            }
        }
        let nonzero: Vec<usize> = (0..rank).filter(|&r| !m[r][0].is_zero()).collect();
        if nonzero.len() != 1 {
            return Err(OrbitalError::FirstColumnWeight {
                index: i,
                weight: nonzero.len(),
            });
        }
        let scale = m[nonzero[0]][0].recip();
        let mut matrix = vec![vec![0u64; rank]; rank];
        for (row, (mrow, orow)) in m.iter().zip(matrix.iter_mut()).enumerate() {
            for (col, (x, o)) in mrow.iter().zip(orow.iter_mut()).enumerate() {
                let v = x * &scale;
                let value = (v.is_integer() && !v.is_negative())
                    .then(|| v.to_integer().to_u64())
                    .flatten()
                    .ok_or(OrbitalError::NonIntegral { index: i, row, col })?;
                *o = value;
            }
        }
        out.push(CollapsedAdjacency { orbital: i, matrix });
    }
    Ok(out)
}

/// Per-orbital results of the containment checks, with the entries read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilcoxReport {
    /// `(A_i)_{i, i*}`.
    pub paired_entries: Vec<u64>,
    /// `(A_i)_{i, i}`.
    pub diagonal_entries: Vec<u64>,
    pub cor15: Vec<bool>,
    pub cor16: Vec<bool>,
}

impl WilcoxReport {
    pub fn all_cor15(&self) -> bool {
        self.cor15.iter().all(|&b| b)
    }

    pub fn all_cor16(&self) -> bool {
        self.cor16.iter().all(|&b| b)
    }
}

/// `D^-1 ⊆ D^2` for every double coset iff `(A_i)_{i i*} != 0` for all `i`;
/// `D ⊆ D^2` iff `(A_i)_{i i} != 0`. `matrices[i]` must be `A_i`.
pub fn wilcox_check(matrices: &[CollapsedAdjacency], pairing: &[usize]) -> Result<WilcoxReport, OrbitalError> {
    let r = matrices.len();
    if pairing.len() != r {
        return Err(OrbitalError::LengthMismatch);
    }
    for (i, m) in matrices.iter().enumerate() {
        if m.orbital != i {
            return Err(OrbitalError::Unordered(i));
        }
        if m.rank() != r || m.matrix.iter().any(|row| row.len() != r) {
            return Err(OrbitalError::Shape { index: i, rank: r });
        }
        if pairing[i] >= r || pairing[pairing[i]] != i {
            return Err(OrbitalError::BadPairing(i));
        }
    }
    let paired_entries: Vec<u64> = (0..r).map(|i| matrices[i].matrix[i][pairing[i]]).collect();
    let diagonal_entries: Vec<u64> = (0..r).map(|i| matrices[i].matrix[i][i]).collect();
    Ok(WilcoxReport {
        cor15: paired_entries.iter().map(|&x| x != 0).collect(),
        cor16: diagonal_entries.iter().map(|&x| x != 0).collect(),
        paired_entries,
        diagonal_entries,
    })
}

/// Pairing read from the matrices' first columns.
pub fn pairing_from_matrices(matrices: &[CollapsedAdjacency]) -> Result<Vec<usize>, OrbitalError> {
    matrices
        .iter()
        .enumerate()
        .map(|(i, m)| m.paired_index().ok_or(OrbitalError::FirstColumnWeight { index: i, weight: 0 }))
        .collect()
}

/// Rank `Σ m_i^2` and self-paired count `Σ m_i ind_i` of a permutation
/// character with constituent multiplicities `m_i` and indicators `ind_i`.
pub fn rank_and_selfpaired(multiplicities: &[u64], indicators: &[i64]) -> Result<(u64, i64), OrbitalError> {
    if multiplicities.len() != indicators.len() {
        return Err(OrbitalError::LengthMismatch);
    }
    let rank = multiplicities.iter().map(|m| m * m).sum();
    let selfpaired = multiplicities
        .iter()
        .zip(indicators)
        .map(|(&m, &ind)| m as i64 * ind)
        .sum();
    Ok((rank, selfpaired))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pairs_of;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, Some(n)).unwrap()
    }

    /// A5 acting on the 10 unordered pairs of 0..5.
    fn a5_on_pairs() -> PermGroup {
        let pairs = pairs_of(5);
        let lift = |p: &Permutation| {
            let images = pairs
                .iter()
                .map(|[x, y]| {
                    let (a, b) = (p.image(*x), p.image(*y));
                    let key = if a < b { [a, b] } else { [b, a] };
                    pairs.iter().position(|q| *q == key).unwrap()
                })
                .collect();
            Permutation::from_images(images).unwrap()
        };
        PermGroup::new(10, vec![lift(&perm("(0 1 2 3 4)", 5)), lift(&perm("(2 3 4)", 5))]).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let d = orbital_decomposition(&a5_on_pairs(), 0).unwrap();
        assert_eq!(d.subdegrees, vec![1, 3, 6]);
        assert_eq!(d.pairing, vec![0, 1, 2]);

        let s4 = PermGroup::new(4, vec![perm("(0 1)", 4), perm("(0 1 2 3)", 4)]).unwrap();
        assert_eq!(orbital_decomposition(&s4, 0).unwrap().subdegrees, vec![1, 3]);

        let c5 = PermGroup::new(5, vec![perm("(0 1 2 3 4)", 5)]).unwrap();
        let d5 = orbital_decomposition(&c5, 0).unwrap();
        assert_eq!(d5.subdegrees, vec![1; 5]);
        // Suborbit k is {k}; +k pairs with -k.
        assert_eq!(d5.pairing, vec![0, 4, 3, 2, 1]);

        let intransitive = PermGroup::new(3, vec![perm("(0 1)", 3)]).unwrap();
        assert!(matches!(
            orbital_decomposition(&intransitive, 0),
            Err(OrbitalError::NotTransitive { .. })
        ));
    }

    #[test]
    fn collapsed_examples() {
        let d = orbital_decomposition(&a5_on_pairs(), 0).unwrap();
        let a = collapsed_adjacency(&d, 1).unwrap();
        assert_eq!(a.matrix, vec![vec![0, 3, 0], vec![1, 0, 2], vec![0, 1, 2]]);
        assert!(a.is_well_formed());
        let id = collapsed_adjacency(&d, 0).unwrap();
        assert_eq!(id.matrix, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let s5 = PermGroup::new(5, vec![perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)]).unwrap();
        let d5 = orbital_decomposition(&s5, 2).unwrap();
        assert_eq!(collapsed_adjacency(&d5, 1).unwrap().matrix, vec![vec![0, 4], vec![1, 3]]);
    }

    #[test]
    fn expansion_examples() {
        let a = CollapsedAdjacency {
            orbital: 1,
            matrix: vec![vec![0, 4], vec![1, 3]],
        };
        let basis = intersection_algebra_expand(core::slice::from_ref(&a), 2).unwrap();
        assert_eq!(basis[0].matrix, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(basis[1], a);

        let d = orbital_decomposition(&a5_on_pairs(), 0).unwrap();
        let a1 = collapsed_adjacency(&d, 1).unwrap();
        let all: Vec<_> = (0..3).map(|i| collapsed_adjacency(&d, i).unwrap()).collect();
        assert_eq!(intersection_algebra_expand(&[a1], 3).unwrap(), all);

        let scalar = CollapsedAdjacency {
            orbital: 0,
            matrix: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        };
        assert_eq!(
            intersection_algebra_expand(&[scalar], 3),
            Err(OrbitalError::DimensionMismatch { found: 1, expected: 3 })
        );
    }

    #[test]
    fn wilcox_on_petersen() {
        let d = orbital_decomposition(&a5_on_pairs(), 0).unwrap();
        let all: Vec<_> = (0..3).map(|i| collapsed_adjacency(&d, i).unwrap()).collect();
        let report = wilcox_check(&all, &d.pairing).unwrap();
        assert_eq!(report.cor16, vec![true, false, true]);
        assert_eq!(report.diagonal_entries[0], 1);
        assert_eq!(pairing_from_matrices(&all).unwrap(), d.pairing);
    }

    #[test]
    fn rank_examples() {
        let mut mult = vec![1u64; 12];
        mult.extend([2, 2]);
        assert_eq!(rank_and_selfpaired(&mult, &[1; 14]).unwrap(), (20, 16));
        assert_eq!(rank_and_selfpaired(&[1], &[1]).unwrap(), (1, 1));
        assert_eq!(rank_and_selfpaired(&[1, 1], &[1, 1]).unwrap().0, 2);
    }
}
