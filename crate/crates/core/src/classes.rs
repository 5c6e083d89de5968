//! Conjugacy classes of an explicit finite group.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassing {
    pub class_of: Vec<usize>,
    /// Least element index of each class.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub centralizer_orders: Vec<usize>,
    pub element_orders: Vec<usize>,
}

impl ConjugacyClassing {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Members of the class containing element `x`, ascending.
    pub fn members(&self, x: usize) -> Vec<usize> {
        let c = self.class_of[x];
        (0..self.class_of.len())
            .filter(|&y| self.class_of[y] == c)
            .collect()
    }

    pub fn class_members(&self, class: usize) -> Vec<usize> {
        self.members(self.representatives[class])
    }
}

/// Classes ordered by (element order, class size, least element index).
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClassing {
    let n = g.order();
    let orders = g.element_orders();
    let mut raw_class = vec![usize::MAX; n];
    let mut raw: Vec<(usize, usize)> = Vec::new(); // (rep, size)
    for x in 0..n {
        if raw_class[x] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let mut size = 0;
        for h in 0..n {
            let y = g.conjugate(x, h);
            if raw_class[y] == usize::MAX {
                raw_class[y] = id;
                size += 1;
            }
        }
        raw.push((x, size));
    }
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by_key(|&c| (orders[raw[c].0], raw[c].1, raw[c].0));
    let mut rank = vec![0; raw.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let class_of = raw_class.iter().map(|&c| rank[c]).collect();
    let representatives: Vec<usize> = perm.iter().map(|&c| raw[c].0).collect();
    let sizes: Vec<usize> = perm.iter().map(|&c| raw[c].1).collect();
    ConjugacyClassing {
        class_of,
        centralizer_orders: sizes.iter().map(|s| n / s).collect(),
        element_orders: representatives.iter().map(|&r| orders[r]).collect(),
        representatives,
        sizes,
    }
}
