//! Subspace fingerprints of involution pairs, conjugation-orbit closure and
//! collapsed adjacency matrices of a conjugation action on a class of
//! involutions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use super::matrix::{BitMatrix, MatrixError};
use super::word::{GroupWord, WordError};
use crate::orbitals::CollapsedAdjacency;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrepError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0} does not commute with a")]
    NotCentralizing(&'static str),
    #[error("fingerprint {0} does not match any orbital")]
    UnknownOrbital(Fingerprint),
    #[error("fingerprint {0} is listed for two orbitals")]
    DuplicateFingerprint(Fingerprint),
    #[error("orbit exceeded {0} elements")]
    OrbitTooLarge(usize),
    #[error("orbital index {index} out of range for {rank} representatives")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// `(d1, d2, d1', d2')` for a pair of involutions `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub d1: usize,
    pub d2: usize,
    pub d1p: usize,
    pub d2p: usize,
}

impl Fingerprint {
    pub fn new(d1: usize, d2: usize, d1p: usize, d2p: usize) -> Self {
        Self { d1, d2, d1p, d2p }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.d1, self.d2, self.d1p, self.d2p)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.d1, self.d2, self.d1p, self.d2p)
    }
}

/// Fixes `x` and caches `1 - x` for repeated fingerprints `(x, y)`.
#[derive(Clone, Debug)]
pub struct FingerprintContext {
    x: BitMatrix,
    one_minus_x: BitMatrix,
}

impl FingerprintContext {
    pub fn new(x: &BitMatrix) -> Self {
        Self {
            x: x.clone(),
            one_minus_x: x.one_minus(),
        }
    }

    pub fn x(&self) -> &BitMatrix {
        &self.x
    }

    /// `V_0 = V`, `V_{i+1} = V_i(1-x) + V_i(1-y)`; `d_i = dim V_i`;
    /// `d1' = dim(V(1-x) + V(1-yxy))`, `d2' = dim(V(1-y) + V(1-xyx))`.
    pub fn fingerprint(&self, y: &BitMatrix) -> Result<Fingerprint, MatrepError> {
        let mx = &self.one_minus_x;
        let my = y.one_minus();
        let v1 = mx.vstack(&my)?.row_space();
        let d1 = v1.rows();
        let d2 = v1.try_mul(mx)?.vstack(&v1.try_mul(&my)?)?.rank();
        let yxy = y.try_mul(&self.x)?.try_mul(y)?;
        let xyx = self.x.try_mul(y)?.try_mul(&self.x)?;
        let d1p = mx.vstack(&yxy.one_minus())?.rank();
        let d2p = my.vstack(&xyx.one_minus())?.rank();
        Ok(Fingerprint { d1, d2, d1p, d2p })
    }
}

pub fn fingerprint(x: &BitMatrix, y: &BitMatrix) -> Result<Fingerprint, MatrepError> {
    FingerprintContext::new(x).fingerprint(y)
}

/// One order condition of a standard generator check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub word: &'static str,
    pub expected: u64,
    /// `None` when the order exceeds the search cutoff.
    pub found: Option<u64>,
}

impl OrderCheck {
    pub fn passed(&self) -> bool {
        self.found == Some(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardGeneratorReport {
    pub checks: Vec<OrderCheck>,
}

impl StandardGeneratorReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(OrderCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&OrderCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Order conditions defining the standard generators: `o(a) = 2`, `o(b) = 4`,
/// `o(ab) = 37`, `o(abab^2) = 10`. Conjugacy class names are not checked.
pub const STANDARD_ORDERS: [(&str, u64); 4] = [("a", 2), ("b", 4), ("ab", 37), ("abab^2", 10)];

const ORDER_CUTOFF: u64 = 256;

pub fn verify_standard_generators(a: &BitMatrix, b: &BitMatrix) -> Result<StandardGeneratorReport, MatrepError> {
    let env = WordEnvironment::new(a, b)?;
    let mut checks = Vec::new();
    for (word, expected) in STANDARD_ORDERS {
        let x = env.evaluate_str(word)?;
        checks.push(OrderCheck {
            word,
            expected,
            found: x.order(ORDER_CUTOFF),
        });
    }
    Ok(StandardGeneratorReport { checks })
}

/// Generator values plus derived letters, each defined by a word in the
/// letters before it.
#[derive(Clone, Debug)]
pub struct WordEnvironment {
    identity: BitMatrix,
    values: Vec<(char, BitMatrix)>,
}

impl WordEnvironment {
    /// `a`, `b` and the derived `t = (ab^2)^4`, `c = ab`, `d = ba`.
    pub fn new(a: &BitMatrix, b: &BitMatrix) -> Result<Self, MatrepError> {
        let mut env = Self::bare(a.characteristic(), a.dim())?;
        env.bind('a', a.clone());
        env.bind('b', b.clone());
        env.define('t', "(ab^2)^4")?;
        env.define('c', "ab")?;
        env.define('d', "ba")?;
        Ok(env)
    }

    pub fn bare(p: u32, dim: usize) -> Result<Self, MatrepError> {
        Ok(Self {
            identity: BitMatrix::identity(p, dim)?,
            values: Vec::new(),
        })
    }

    pub fn bind(&mut self, name: char, value: BitMatrix) {
        self.values.retain(|(c, _)| *c != name);
        self.values.push((name, value));
    }

    pub fn define(&mut self, name: char, word: &str) -> Result<(), MatrepError> {
        let value = self.evaluate_str(word)?;
        self.bind(name, value);
        Ok(())
    }

    pub fn get(&self, name: char) -> Option<&BitMatrix> {
        self.values.iter().find(|(c, _)| *c == name).map(|(_, v)| v)
    }

    pub fn identity(&self) -> &BitMatrix {
        &self.identity
    }

    pub fn evaluate(&self, word: &GroupWord) -> Result<BitMatrix, MatrepError> {
        Ok(word.evaluate(&|c| self.get(c).cloned(), &self.identity)?)
    }

    pub fn evaluate_str(&self, word: &str) -> Result<BitMatrix, MatrepError> {
        self.evaluate(&GroupWord::parse(word)?)
    }
}

pub const CENTRALIZER_WORDS: [&str; 2] = [
    "[a,b]^5(ab^2)^6",
    "bab^2ab[a,bab^2ab]^5ababab[a,ababab]^5",
];

#[derive(Clone, Debug)]
pub struct CentralizerGenerators {
    pub h1: BitMatrix,
    pub h2: BitMatrix,
    /// `a` is the identity, so commuting carries no information.
    pub degenerate: bool,
}

/// Evaluates the two centralizer words and checks both commute with `a`.
pub fn centralizer_generators(a: &BitMatrix, b: &BitMatrix) -> Result<CentralizerGenerators, MatrepError> {
    let env = WordEnvironment::new(a, b)?;
    let h1 = env.evaluate_str(CENTRALIZER_WORDS[0])?;
    let h2 = env.evaluate_str(CENTRALIZER_WORDS[1])?;
    for (name, h) in [("h1", &h1), ("h2", &h2)] {
        if h.try_mul(a)? != a.try_mul(h)? {
            return Err(MatrepError::NotCentralizing(name));
        }
    }
    Ok(CentralizerGenerators {
        h1,
        h2,
        degenerate: a.is_identity(),
    })
}

/// Set of matrices with insertion order, deduplicated by a 128-bit digest and
/// full comparison on digest match.
#[derive(Clone, Debug, Default)]
pub struct MatrixSet {
    elements: Vec<BitMatrix>,
    index: HashMap<[u8; 16], Vec<u32>>,
}

impl MatrixSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, m: &BitMatrix) -> Option<usize> {
        self.index
            .get(&m.digest128())?
            .iter()
            .map(|&i| i as usize)
            .find(|&i| self.elements[i] == *m)
    }

    pub fn contains(&self, m: &BitMatrix) -> bool {
        self.position(m).is_some()
    }

    /// Returns whether `m` was new.
    pub fn insert(&mut self, m: BitMatrix) -> bool {
        let bucket = self.index.entry(m.digest128()).or_default();
        if bucket.iter().any(|&i| self.elements[i as usize] == m) {
            return false;
        }
        bucket.push(self.elements.len() as u32);
        self.elements.push(m);
        true
    }

    pub fn elements(&self) -> &[BitMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<BitMatrix> {
        self.elements
    }
}

/// Closure of `{seed}` under `m -> h^-1 m h` for each conjugator, in
/// breadth-first order (conjugators applied in listed order).
pub fn orbit_closure(seed: &BitMatrix, conjugators: &[BitMatrix]) -> Result<Vec<BitMatrix>, MatrepError> {
    orbit_closure_capped(seed, conjugators, usize::MAX)
}

pub fn orbit_closure_capped(
    seed: &BitMatrix,
    conjugators: &[BitMatrix],
    cap: usize,
) -> Result<Vec<BitMatrix>, MatrepError> {
    let inverses = conjugators
        .iter()
        .map(BitMatrix::inverse)
        .collect::<Result<Vec<_>, _>>()?;
    let mut set = MatrixSet::new();
    set.insert(seed.clone());
    let mut head = 0;
    while head < set.len() {
        let m = set.elements()[head].clone();
        for (h, hi) in conjugators.iter().zip(&inverses) {
            let image = hi.try_mul(&m)?.try_mul(h)?;
            if set.insert(image) && set.len() > cap {
                return Err(MatrepError::OrbitTooLarge(cap));
            }
        }
        head += 1;
    }
    Ok(set.into_elements())
}

/// Fingerprint to orbital number; fingerprints must be distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FingerprintTable {
    entries: Vec<(Fingerprint, usize)>,
}

impl FingerprintTable {
    pub fn new(entries: Vec<(Fingerprint, usize)>) -> Result<Self, MatrepError> {
        for (i, (f, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(g, _)| g == f) {
                return Err(MatrepError::DuplicateFingerprint(*f));
            }
        }
        Ok(Self { entries })
    }

    pub fn lookup(&self, f: &Fingerprint) -> Option<usize> {
        self.entries.iter().find(|(g, _)| g == f).map(|&(_, o)| o)
    }

    pub fn entries(&self) -> &[(Fingerprint, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Row `j` of `A_i`: the orbital of `(x, y^{t_j})` for each `y` in `O_i`.
pub fn collapsed_row(
    ctx: &FingerprintContext,
    t_j: &BitMatrix,
    orbit: &[BitMatrix],
    table: &FingerprintTable,
    rank: usize,
) -> Result<Vec<u64>, MatrepError> {
    let t_inv = t_j.inverse()?;
    let mut row = vec![0u64; rank];
    for y in orbit {
        let conj = t_inv.try_mul(y)?.try_mul(t_j)?;
        let f = ctx.fingerprint(&conj)?;
        let k = table.lookup(&f).ok_or(MatrepError::UnknownOrbital(f))?;
        if k >= rank {
            return Err(MatrepError::IndexOutOfRange { index: k, rank });
        }
        row[k] += 1;
    }
    Ok(row)
}

/// `A_i` for the conjugation action: `reps[j]` is `t_j` (with `reps[0]` the
/// identity) and `orbit` is `O_i`, the centralizer orbit of `x^{t_i}`.
pub fn collapsed_adjacency_matrep(
    ctx: &FingerprintContext,
    reps: &[BitMatrix],
    orbit: &[BitMatrix],
    table: &FingerprintTable,
    orbital: usize,
) -> Result<CollapsedAdjacency, MatrepError> {
    let rank = reps.len();
    if orbital >= rank {
        return Err(MatrepError::IndexOutOfRange { index: orbital, rank });
    }
    let matrix = reps
        .iter()
        .map(|t| collapsed_row(ctx, t, orbit, table, rank))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CollapsedAdjacency { orbital, matrix })
}
