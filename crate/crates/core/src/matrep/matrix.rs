//! Dense matrices over a prime field. Characteristic 2 packs each row into
//! `u64` words (bit `j % 64` of word `j / 64` is column `j`); odd
//! characteristic stores one byte per entry.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

pub const MAX_DIM: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("{0} is not a supported prime")]
    BadPrime(u32),
    #[error("dimension {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("shapes {0}x{1} and {2}x{3} are incompatible")]
    Shape(usize, usize, usize, usize),
    #[error("fields of characteristic {0} and {1} differ")]
    FieldMismatch(u32, u32),
    #[error("entry {value} at ({row}, {col}) is not below {p}")]
    Entry { row: usize, col: usize, value: u32, p: u32 },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

/// `rows x cols` matrix over `F_p`. Group elements are square; rectangular
/// shapes carry subspace bases. Padding bits are always zero, so equality
/// and hashing are bitwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    stride: usize,
    data: Storage,
}

fn is_supported_prime(p: u32) -> bool {
    (2..256).contains(&p) && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inverse_mod(x: u32, p: u32) -> u32 {
    // Fermat: x^(p-2).
    let mut base = x % p;
    let mut e = p - 2;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl BitMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Result<Self, MatrixError> {
        if !is_supported_prime(p) {
            return Err(MatrixError::BadPrime(p));
        }
        if rows > 2 * MAX_DIM || cols > 2 * MAX_DIM {
            return Err(MatrixError::TooLarge(rows.max(cols)));
        }
        Ok(if p == 2 {
            let stride = cols.div_ceil(64);
            Self {
                p,
                rows,
                cols,
                stride,
                data: Storage::Bits(vec![0; rows * stride]),
            }
        } else {
            Self {
                p,
                rows,
                cols,
                stride: cols,
                data: Storage::Bytes(vec![0; rows * cols]),
            }
        })
    }

    pub fn identity(p: u32, dim: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zero(p, dim, dim)?;
        for i in 0..dim {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Rows of entries in `0..p`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(p, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Shape(rows.len(), cols, i, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= p {
                    return Err(MatrixError::Entry { row: i, col: j, value: v, p });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column count; the dimension for square matrices.
    pub fn dim(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        match &self.data {
            Storage::Bits(w) => (w[i * self.stride + j / 64] >> (j % 64) & 1) as u32,
            Storage::Bytes(b) => b[i * self.stride + j] as u32,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let stride = self.stride;
        let p = self.p;
        match &mut self.data {
            Storage::Bits(w) => {
                let mask = 1u64 << (j % 64);
                if v % 2 == 1 {
                    w[i * stride + j / 64] |= mask;
                } else {
                    w[i * stride + j / 64] &= !mask;
                }
            }
            Storage::Bytes(b) => b[i * stride + j] = (v % p) as u8,
        }
    }

    pub fn row_entries(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Bits(w) => w.iter().all(|&x| x == 0),
            Storage::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), MatrixError> {
        if self.p != other.p {
            return Err(MatrixError::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zero(self.p, self.rows, other.cols)?;
        match (&self.data, &other.data, &mut out.data) {
            (Storage::Bits(a), Storage::Bits(b), Storage::Bits(c)) => {
                // Row i of the product is the XOR of the rows k of `other`
                // selected by the set bits of row i of `self`.
                let (sa, sb) = (self.stride, other.stride);
                for i in 0..self.rows {
                    let dst = &mut c[i * sb..(i + 1) * sb];
                    for (wi, &word) in a[i * sa..(i + 1) * sa].iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let k = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for (d, s) in dst.iter_mut().zip(&b[k * sb..(k + 1) * sb]) {
                                *d ^= s;
                            }
                        }
                    }
                }
            }
            (Storage::Bytes(a), Storage::Bytes(b), Storage::Bytes(c)) => {
                let p = self.p;
                let (n, m) = (self.cols, other.cols);
                let mut acc = vec![0u32; m];
                for i in 0..self.rows {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for k in 0..n {
                        let aik = a[i * n + k] as u32;
                        if aik == 0 {
                            continue;
                        }
                        for (x, &bkj) in acc.iter_mut().zip(&b[k * m..(k + 1) * m]) {
                            *x = (*x + aik * bkj as u32) % p;
                        }
                    }
                    for (dst, &x) in c[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                        *dst = x as u8;
                    }
                }
            }
            _ => unreachable!("storage follows the characteristic"),
        }
        Ok(out)
    }

    /// Panics on shape or field mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("compatible matrices")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = self.clone();
        match (&mut out.data, &other.data) {
            (Storage::Bits(a), Storage::Bits(b)) => a.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
            (Storage::Bytes(a), Storage::Bytes(b)) => {
                let p = self.p;
                a.iter_mut()
                    .zip(b)
                    .for_each(|(x, &y)| *x = ((*x as u32 + y as u32) % p) as u8);
            }
            _ => unreachable!("storage follows the characteristic"),
        }
        Ok(out)
    }

    /// `I - self` for square matrices.
    pub fn one_minus(&self) -> Self {
        let mut out = self.clone();
        let p = self.p;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = (p - self.get(i, j) + (i == j) as u32) % p;
                out.set(i, j, v);
            }
        }
        out
    }

    /// `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = self.clone();
        out.rows += other.rows;
        match (&mut out.data, &other.data) {
            (Storage::Bits(a), Storage::Bits(b)) => a.extend_from_slice(b),
            (Storage::Bytes(a), Storage::Bytes(b)) => a.extend_from_slice(b),
            _ => unreachable!("storage follows the characteristic"),
        }
        Ok(out)
    }

    /// Reduced row-echelon form without zero rows: a basis of the row space.
    pub fn row_space(&self) -> Self {
        let mut m = self.clone();
        let r = m.eliminate(true);
        m.truncate_rows(r);
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false)
    }

    fn truncate_rows(&mut self, r: usize) {
        self.rows = r;
        let len = r * self.stride;
        match &mut self.data {
            Storage::Bits(w) => w.truncate(len),
            Storage::Bytes(b) => b.truncate(len),
        }
    }

    /// In-place Gaussian elimination moving pivot rows to the top; returns
    /// the rank. With `full`, rows above each pivot are cleared too.
    fn eliminate(&mut self, full: bool) -> usize {
        let (rows, cols, stride, p) = (self.rows, self.cols, self.stride, self.p);
        let mut rank = 0;
        match &mut self.data {
            Storage::Bits(w) => {
                for col in 0..cols {
                    if rank == rows {
                        break;
                    }
                    let (wi, mask) = (col / 64, 1u64 << (col % 64));
                    let Some(piv) = (rank..rows).find(|&r| w[r * stride + wi] & mask != 0) else {
                        continue;
                    };
                    if piv != rank {
                        for k in 0..stride {
                            w.swap(piv * stride + k, rank * stride + k);
                        }
                    }
                    let start = if full { 0 } else { rank + 1 };
                    for r in start..rows {
                        if r != rank && w[r * stride + wi] & mask != 0 {
                            // Columns before `wi` are already zero in the pivot row.
                            for k in wi..stride {
                                let v = w[rank * stride + k];
                                w[r * stride + k] ^= v;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            Storage::Bytes(b) => {
                for col in 0..cols {
                    if rank == rows {
                        break;
                    }
                    let Some(piv) = (rank..rows).find(|&r| b[r * stride + col] != 0) else {
                        continue;
                    };
                    if piv != rank {
                        for k in 0..stride {
                            b.swap(piv * stride + k, rank * stride + k);
                        }
                    }
                    let inv = inverse_mod(b[rank * stride + col] as u32, p);
                    for k in col..cols {
                        b[rank * stride + k] = (b[rank * stride + k] as u32 * inv % p) as u8;
                    }
                    let start = if full { 0 } else { rank + 1 };
                    for r in start..rows {
                        let f = b[r * stride + col] as u32;
                        if r != rank && f != 0 {
                            for k in col..cols {
                                let v = b[rank * stride + k] as u32;
                                let x = b[r * stride + k] as u32;
                                b[r * stride + k] = ((x + p * p - f * v) % p) as u8;
                            }
                        }
                    }
                    rank += 1;
                }
            }
        }
        rank
    }

    /// Gauss–Jordan inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        // [self | I] as an n x 2n matrix.
        let mut aug = Self::zero(self.p, n, 2 * n)?;
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.eliminate(true);
        let left_is_identity = r == n && (0..n).all(|i| (0..n).all(|j| aug.get(i, j) == (i == j) as u32));
        if !left_is_identity {
            return Err(MatrixError::Singular);
        }
        let mut out = Self::zero(self.p, n, n)?;
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, exp: i64) -> Result<Self, MatrixError> {
        let mut base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::identity(self.p, self.cols)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Least `k <= cutoff` with `self^k = I`.
    pub fn order(&self, cutoff: u64) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let mut x = self.clone();
        for k in 1..=cutoff {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    /// Canonical bytes: characteristic, shape, then the storage.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.p.to_le_bytes());
        out.extend_from_slice(&(self.rows as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols as u64).to_le_bytes());
        match &self.data {
            Storage::Bits(w) => w.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
            Storage::Bytes(b) => out.extend_from_slice(b),
        }
        out
    }

    /// First 128 bits of the SHA-256 of [`Self::canonical_bytes`].
    pub fn digest128(&self) -> [u8; 16] {
        let mut h = Sha256::new();
        h.update(self.p.to_le_bytes());
        h.update((self.rows as u64).to_le_bytes());
        h.update((self.cols as u64).to_le_bytes());
        match &self.data {
            Storage::Bits(w) => w.iter().for_each(|x| h.update(x.to_le_bytes())),
            Storage::Bytes(b) => h.update(b),
        }
        let full = h.finalize();
        let mut out = [0u8; 16];
        out.copy_from_slice(&full[..16]);
        out
    }

    /// Permutation matrix of `x -> images[x]` acting on row vectors.
    pub fn permutation(p: u32, images: &[usize]) -> Result<Self, MatrixError> {
        let n = images.len();
        let mut m = Self::zero(p, n, n)?;
        for (i, &j) in images.iter().enumerate() {
            if j >= n {
                return Err(MatrixError::Shape(n, n, i, j));
            }
            m.set(i, j, 1);
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows.min(16) {
            for j in 0..self.cols.min(64) {
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(p: u32, n: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        BitMatrix::from_rows(p, &rows).unwrap()
    }

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> Vec<Vec<u32>> {
        let p = a.characteristic();
        (0..a.rows())
            .map(|i| {
                (0..b.cols())
                    .map(|j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum::<u32>() % p)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_and_entries() {
        let i = BitMatrix::from_rows(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(i, BitMatrix::identity(2, 2).unwrap());
        assert!(matches!(
            BitMatrix::from_rows(2, &[vec![2, 0], vec![0, 1]]),
            Err(MatrixError::Entry { .. })
        ));
        assert_eq!(BitMatrix::zero(4, 1, 1).unwrap_err(), MatrixError::BadPrime(4));
    }

    #[test]
    fn products_match_naive_across_word_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(2, 1), (2, 63), (2, 65), (2, 130), (3, 7), (5, 9)] {
            let a = random(p, n, &mut rng);
            let b = random(p, n, &mut rng);
            let c = a.mul(&b);
            let expect = naive_mul(&a, &b);
            for i in 0..n {
                assert_eq!(c.row_entries(i), expect[i]);
            }
        }
    }

    #[test]
    fn inverse_rank_and_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(2, 70), (3, 6), (7, 5)] {
            loop {
                let a = random(p, n, &mut rng);
                match a.inverse() {
                    Ok(inv) => {
                        assert!(a.mul(&inv).is_identity());
                        assert_eq!(a.rank(), n);
                        break;
                    }
                    Err(MatrixError::Singular) => assert!(a.rank() < n),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        let cycle = BitMatrix::permutation(2, &[1, 2, 3, 4, 0]).unwrap();
        assert_eq!(cycle.order(100), Some(5));
        assert_eq!(cycle.pow(-1).unwrap(), cycle.pow(4).unwrap());
        assert_eq!(BitMatrix::identity(2, 3).unwrap().order(10), Some(1));
    }

    #[test]
    fn row_space_is_reduced() {
        let m = BitMatrix::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let rs = m.row_space();
        assert_eq!(rs.rows(), 2);
        assert_eq!(rs.row_entries(0), vec![1, 0, 1]);
        assert_eq!(rs.row_entries(1), vec![0, 1, 1]);
        let m3 = BitMatrix::from_rows(3, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(m3.rank(), 1);
    }

    #[test]
    fn digest_separates_field_and_shape() {
        let a = BitMatrix::zero(2, 2, 2).unwrap();
        let b = BitMatrix::zero(3, 2, 2).unwrap();
        let c = BitMatrix::zero(2, 1, 4).unwrap();
        assert_ne!(a.digest128(), b.digest128());
        assert_ne!(a.digest128(), c.digest128());
        let bytes = a.canonical_bytes();
        let mut h = Sha256::new();
        h.update(&bytes);
        assert_eq!(&h.finalize()[..16], &a.digest128());
    }
}
