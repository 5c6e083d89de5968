//! Finite groups stored as explicit multiplication tables.
//!
//! Practical limits: table storage is quadratic in the order, so a few
//! thousand elements is the comfortable ceiling; the associativity check
//! follows Light's test and costs `order^2` per generator.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("closure exceeded the element cap of {cap}")]
    SizeOverflow { cap: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} or column {0} of the table is not a permutation")]
    NotLatin(usize),
    #[error("table has no identity element")]
    NoIdentity,
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("group of order zero")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates and wraps an `order x order` row-major table of 0-based indices.
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if mul.len() != order * order {
            return Err(GroupError::TableShape {
                expected: order * order,
                found: mul.len(),
            });
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(GroupError::LabelCount {
                    expected: order,
                    found: l.len(),
                });
            }
        }
        for (idx, &v) in mul.iter().enumerate() {
            if v as usize >= order {
                return Err(GroupError::EntryOutOfRange {
                    row: idx / order,
                    col: idx % order,
                    value: v as usize,
                });
            }
        }
        let mut seen = BitSet::new(order);
        for r in 0..order {
            seen.clear();
            for c in 0..order {
                if !seen.insert(mul[r * order + c] as usize) {
                    return Err(GroupError::NotLatin(r));
                }
            }
        }
        for c in 0..order {
            seen.clear();
            for r in 0..order {
                if !seen.insert(mul[r * order + c] as usize) {
                    return Err(GroupError::NotLatin(c));
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] as usize == identity)
                .expect("Latin rows contain the identity");
            inv[x] = y as u32;
        }
        let g = Self {
            order,
            mul,
            inv,
            identity,
            labels,
        };
        g.check_associative()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => alloc::format!("{a}"),
        }
    }

    /// Raw row-major table.
    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let mut base = if exp < 0 { self.inv(a) } else { a };
        let mut e = exp.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a membership set.
    pub fn subgroup_closure(&self, gens: &[usize]) -> BitSet {
        let mut members = BitSet::new(self.order);
        members.insert(self.identity);
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push(y);
                }
            }
            head += 1;
        }
        members
    }

    /// Greedy generating set: scan elements in index order and keep each one
    /// not already in the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = self.subgroup_closure(&gens);
        for x in 0..self.order {
            if !covered.contains(x) {
                gens.push(x);
                covered = self.subgroup_closure(&gens);
                if covered.count() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// Light's associativity test: the set of `a` with `(xy)a = x(ya)` for all
    /// `x, y` is closed under products, so checking a generating set suffices.
    /// The table is already Latin, so the magma generated by a set is the
    /// product closure computed by [`Self::generating_set`].
    pub fn check_associative(&self) -> Result<(), GroupError> {
        for a in self.magma_generators() {
            for x in 0..self.order {
                for y in 0..self.order {
                    if self.mul(self.mul(x, y), a) != self.mul(x, self.mul(y, a)) {
                        return Err(GroupError::NotAssociative(x, y, a));
                    }
                }
            }
        }
        Ok(())
    }

    fn magma_generators(&self) -> Vec<usize> {
        // Closure under products only (no identity or inverses assumed).
        let mut gens = Vec::new();
        let mut covered = BitSet::new(self.order);
        let mut list: Vec<usize> = Vec::new();
        for x in 0..self.order {
            if covered.contains(x) {
                continue;
            }
            gens.push(x);
            if covered.insert(x) {
                list.push(x);
            }
            let mut head = 0;
            while head < list.len() {
                let a = list[head];
                let mut k = 0;
                while k < list.len() {
                    let b = list[k];
                    for c in [self.mul(a, b), self.mul(b, a)] {
                        if covered.insert(c) {
                            list.push(c);
                        }
                    }
                    k += 1;
                }
                head += 1;
            }
            if list.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Exhaustive check of associativity over all triples (tests only; cubic).
    pub fn check_associative_exhaustive(&self) -> Result<(), GroupError> {
        for x in 0..self.order {
            for y in 0..self.order {
                let xy = self.mul(x, y);
                for z in 0..self.order {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Derived subgroup as a membership set.
    pub fn commutator_subgroup(&self) -> BitSet {
        let mut comms = Vec::new();
        let mut seen = BitSet::new(self.order);
        for x in 0..self.order {
            for y in 0..self.order {
                let c = self.commutator(x, y);
                if seen.insert(c) {
                    comms.push(c);
                }
            }
        }
        self.subgroup_closure(&comms)
    }

    /// Largest power of two dividing the order.
    pub fn two_part(&self) -> usize {
        1 << self.order.trailing_zeros()
    }

    /// Literal test: a Sylow 2-subgroup (order = 2-part) is cyclic iff some
    /// element has order equal to the 2-part. The trivial group counts as cyclic.
    pub fn sylow2_is_cyclic(&self) -> bool {
        let target = self.two_part();
        (0..self.order).any(|a| self.element_order(a) == target)
    }

    /// Right-regular permutation representation `x -> x g`.
    pub fn right_regular(&self, g: usize) -> crate::perm::Permutation {
        crate::perm::Permutation::from_images((0..self.order).map(|x| self.mul(x, g)).collect())
            .expect("Latin columns")
    }

    /// Left action `x -> g^-1 x`, written as a right action.
    pub fn left_regular(&self, g: usize) -> crate::perm::Permutation {
        let gi = self.inv(g);
        crate::perm::Permutation::from_images((0..self.order).map(|x| self.mul(gi, x)).collect())
            .expect("Latin rows")
    }

    /// Normal subgroups generated by unions of conjugacy classes closures,
    /// returned as sorted element lists. Includes the trivial and whole group.
    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        let classing = crate::classes::conjugacy_classes(self);
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![self.identity]];
        found.push(vec![self.identity]);
        while let Some(current) = frontier.pop() {
            for rep in &classing.representatives {
                let mut gens = current.clone();
                gens.extend(classing.members(*rep));
                let sub: Vec<usize> = self.subgroup_closure(&gens).iter().collect();
                if !found.contains(&sub) {
                    found.push(sub.clone());
                    frontier.push(sub);
                }
            }
        }
        found.sort_by_key(|s| (s.len(), s.clone()));
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        FiniteGroup::from_table(n, mul, None).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let z4 = cyclic(4);
        assert_eq!(z4.identity(), 0);
        assert_eq!(z4.inv(1), 3);
        assert_eq!(z4.element_order(1), 4);
        assert!(z4.sylow2_is_cyclic());
        assert!(z4.is_abelian());
        assert_eq!(z4.generating_set(), vec![1]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1, 1], None),
            Err(GroupError::NotLatin(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1], None),
            Err(GroupError::TableShape { .. })
        ));
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let loop5: [[u32; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let flat = loop5.iter().flatten().copied().collect();
        assert!(matches!(
            FiniteGroup::from_table(5, flat, None),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn derived_subgroup_of_abelian_is_trivial() {
        assert_eq!(cyclic(6).commutator_subgroup().count(), 1);
    }
}
