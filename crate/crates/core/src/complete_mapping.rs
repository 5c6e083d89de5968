//! Complete mappings: bijections `phi` on a group with `x -> x phi(x)` also a
//! bijection. Equivalently, orthogonal mates of the Cayley table.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::group::FiniteGroup;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteMapping {
    phi: Vec<usize>,
    psi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MappingError {
    #[error("map has {found} entries for a group of order {order}")]
    WrongLength { order: usize, found: usize },
    #[error("phi is not a bijection: {0} is hit twice")]
    PhiNotBijective(usize),
    #[error("psi(x) = x phi(x) is not a bijection: {0} is hit twice")]
    PsiNotBijective(usize),
}

impl CompleteMapping {
    /// Checks both bijections exhaustively.
    pub fn new(g: &FiniteGroup, phi: Vec<usize>) -> Result<Self, MappingError> {
        let n = g.order();
        if phi.len() != n {
            return Err(MappingError::WrongLength {
                order: n,
                found: phi.len(),
            });
        }
        let mut seen = vec![false; n];
        for &y in &phi {
            if y >= n || seen[y] {
                return Err(MappingError::PhiNotBijective(y));
            }
            seen[y] = true;
        }
        seen.iter_mut().for_each(|s| *s = false);
        let psi: Vec<usize> = (0..n).map(|x| g.mul(x, phi[x])).collect();
        for &z in &psi {
            if seen[z] {
                return Err(MappingError::PsiNotBijective(z));
            }
            seen[z] = true;
        }
        Ok(Self { phi, psi })
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// `psi(x) = x phi(x)`.
    pub fn psi(&self) -> &[usize] {
        &self.psi
    }
}

pub fn verify_complete_mapping(g: &FiniteGroup, phi: &[usize]) -> bool {
    CompleteMapping::new(g, phi.to_vec()).is_ok()
}

/// Hall–Paige: a complete mapping exists iff the Sylow 2-subgroups are
/// trivial or non-cyclic.
pub fn hall_paige_predicate(g: &FiniteGroup) -> bool {
    g.two_part() == 1 || !g.sylow2_is_cyclic()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of assignments tried.
    pub budget: u64,
    /// Prune with the sum constraint in the abelianisation (see
    /// [`find_complete_mapping`]). Never changes which solution is found.
    pub quotient_sum_pruning: bool,
    /// Return the identity map immediately for groups of odd order.
    pub odd_order_shortcut: bool,
    /// Cut a node once some open position, free image or free product has
    /// no compatible completion left, or (order at most 128) when one of the
    /// position/image, position/product and image/product bipartite graphs
    /// of open triples has no perfect matching. Never changes which
    /// solution is found.
    pub forward_checking: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            quotient_sum_pruning: true,
            odd_order_shortcut: true,
            forward_checking: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { mapping: CompleteMapping, nodes: u64 },
    /// The whole tree was explored: no complete mapping exists.
    NotFound { nodes: u64 },
    /// Indeterminate: the node budget ran out.
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn mapping(&self) -> Option<&CompleteMapping> {
        match self {
            SearchOutcome::Found { mapping, .. } => Some(mapping),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::NotFound { nodes }
            | SearchOutcome::BudgetExhausted { nodes } => *nodes,
        }
    }
}

/// Abelianisation `G -> G/G'` as an index map plus the quotient's addition.
struct Abelianisation {
    class: Vec<usize>,
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl Abelianisation {
    fn new(g: &FiniteGroup) -> Self {
        let derived = g.commutator_subgroup();
        let n = g.order();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for d in derived.iter() {
                class[g.mul(d, x)] = id;
            }
        }
        let m = reps.len();
        let mut add = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                add[a * m + b] = class[g.mul(reps[a], reps[b])];
            }
        }
        let neg = reps.iter().map(|&r| class[g.inv(r)]).collect();
        Self {
            class,
            order: m,
            add,
            neg,
        }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }
}

struct Search<'a> {
    g: &'a FiniteGroup,
    n: usize,
    phi: Vec<usize>,
    used_phi: BitSet,
    used_psi: BitSet,
    nodes: u64,
    budget: u64,
    quotient: Option<Abelianisation>,
    /// Quotient sum of the positions `x..n`.
    suffix: Vec<usize>,
    sum_free_phi: usize,
    sum_free_psi: usize,
    forward: Option<Support>,
}

/// Counts of open triples `(x, y, x y)`: `x` unassigned, `y` a free image,
/// `x y` a free product, tallied per position, image and product.
struct Support {
    inv: Vec<usize>,
    pos: Vec<u32>,
    img: Vec<u32>,
    prod: Vec<u32>,
}

impl Support {
    fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        Self {
            inv: (0..n).map(|x| g.inv(x)).collect(),
            pos: vec![n as u32; n],
            img: vec![n as u32; n],
            prod: vec![n as u32; n],
        }
    }
}

enum Step {
    Done,
    Exhausted,
    Fail,
}

impl Search<'_> {
    fn feasible(&self, depth: usize) -> bool {
        match &self.quotient {
            None => true,
            Some(q) => q.add(self.suffix[depth], self.sum_free_phi) == self.sum_free_psi,
        }
    }

    /// Removes (`sign = -1`) or restores (`+1`) the open triples through
    /// `x`, `y` or `z = x y` other than `(x, y, z)`, with `y` and `z` not
    /// yet marked used. Returns whether some count reached zero.
    fn update_support(&mut self, x: usize, y: usize, z: usize, remove: bool) -> bool {
        let Some(f) = self.forward.as_mut() else {
            return false;
        };
        let g = self.g;
        let mut wiped = false;
        let mut bump = |c: &mut u32| {
            if remove {
                *c -= 1;
                wiped |= *c == 0;
            } else {
                *c += 1;
            }
        };
        for y2 in 0..self.n {
            if y2 == y || self.used_phi.contains(y2) {
                continue;
            }
            let z2 = g.mul(x, y2);
            if !self.used_psi.contains(z2) {
                bump(&mut f.img[y2]);
                bump(&mut f.prod[z2]);
            }
        }
        for x2 in x + 1..self.n {
            let z2 = g.mul(x2, y);
            if !self.used_psi.contains(z2) {
                bump(&mut f.pos[x2]);
                bump(&mut f.prod[z2]);
            }
            let y2 = g.mul(f.inv[x2], z);
            if !self.used_phi.contains(y2) {
                bump(&mut f.pos[x2]);
                bump(&mut f.img[y2]);
            }
        }
        if !remove {
            return false;
        }
        // Counts of used images and products are stale but never read.
        wiped
            && ((x + 1..self.n).any(|x2| f.pos[x2] == 0)
                || (0..self.n).any(|v| {
                    (v != y && !self.used_phi.contains(v) && f.img[v] == 0)
                        || (v != z && !self.used_psi.contains(v) && f.prod[v] == 0)
                }))
    }

    /// Perfect matchings of the three projections of the open triples,
    /// positions `x..n` open.
    fn matchable(&self, x: usize) -> bool {
        let n = self.n;
        if self.forward.is_none() || n > 128 || x + 1 >= n {
            return true;
        }
        let g = self.g;
        let m = n - x;
        let mut by_image = vec![0u128; m];
        let mut by_product = vec![0u128; m];
        let mut image_product = vec![0u128; n];
        for (row, p) in (x..n).enumerate() {
            for y in 0..n {
                if self.used_phi.contains(y) {
                    continue;
                }
                let z = g.mul(p, y);
                if !self.used_psi.contains(z) {
                    by_image[row] |= 1 << y;
                    by_product[row] |= 1 << z;
                    image_product[y] |= 1 << z;
                }
            }
        }
        let images: Vec<u128> = (0..n).filter(|&y| !self.used_phi.contains(y)).map(|y| image_product[y]).collect();
        perfect_matching(&by_image, n) && perfect_matching(&by_product, n) && perfect_matching(&images, n)
    }

    fn run(&mut self, x: usize) -> Step {
        if x == self.n {
            return Step::Done;
        }
        if !self.feasible(x) || !self.matchable(x) {
            return Step::Fail;
        }
        for y in 0..self.n {
            if self.used_phi.contains(y) {
                continue;
            }
            let z = self.g.mul(x, y);
            if self.used_psi.contains(z) {
                continue;
            }
            if self.nodes >= self.budget {
                return Step::Exhausted;
            }
            self.nodes += 1;
            self.phi[x] = y;
            let wiped = self.update_support(x, y, z, true);
            self.used_phi.insert(y);
            self.used_psi.insert(z);
            if let Some(q) = &self.quotient {
                self.sum_free_phi = q.sub(self.sum_free_phi, q.class[y]);
                self.sum_free_psi = q.sub(self.sum_free_psi, q.class[z]);
            }
            if !wiped {
                match self.run(x + 1) {
                    Step::Fail => {}
                    other => return other,
                }
            }
            self.used_phi.remove(y);
            self.used_psi.remove(z);
            self.update_support(x, y, z, false);
            if let Some(q) = &self.quotient {
                self.sum_free_phi = q.add(self.sum_free_phi, q.class[y]);
                self.sum_free_psi = q.add(self.sum_free_psi, q.class[z]);
            }
        }
        Step::Fail
    }
}

/// Kuhn's augmenting paths: every row matched to a distinct column.
fn perfect_matching(rows: &[u128], cols: usize) -> bool {
    fn augment(rows: &[u128], r: usize, seen: &mut u128, owner: &mut [usize]) -> bool {
        let mut cand = rows[r] & !*seen;
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *seen |= 1 << c;
            if owner[c] == usize::MAX || augment(rows, owner[c], seen, owner) {
                owner[c] = r;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; cols];
    rows.iter().enumerate().all(|(r, _)| {
        let mut seen = 0u128;
        augment(rows, r, &mut seen, &mut owner)
    })
}

/// Depth-first search for the lexicographically first complete mapping.
///
/// `phi` is assigned on elements in table order, trying images in index order
/// and skipping any image already used by `phi` or whose product `x phi(x)` is
/// already used by `psi`. With `quotient_sum_pruning`, a node is cut when the
/// unassigned positions and free images cannot satisfy
/// `sum pi(x) + sum pi(phi(x)) = sum pi(psi(x))` in the abelianisation `pi`,
/// which every completion must satisfy.
pub fn find_complete_mapping(g: &FiniteGroup, options: SearchOptions) -> SearchOutcome {
    let n = g.order();
    if options.odd_order_shortcut && n % 2 == 1 {
        let mapping =
            CompleteMapping::new(g, (0..n).collect()).expect("identity is complete in odd order");
        return SearchOutcome::Found { mapping, nodes: 0 };
    }
    let quotient = options.quotient_sum_pruning.then(|| Abelianisation::new(g));
    let (suffix, total) = match &quotient {
        Some(q) => {
            let mut suffix = vec![0; n + 1];
            let zero = q.class[g.identity()];
            suffix[n] = zero;
            for x in (0..n).rev() {
                suffix[x] = q.add(suffix[x + 1], q.class[x]);
            }
            let total = suffix[0];
            (suffix, total)
        }
        None => (Vec::new(), 0),
    };
    let mut search = Search {
        g,
        n,
        phi: vec![0; n],
        used_phi: BitSet::new(n),
        used_psi: BitSet::new(n),
        nodes: 0,
        budget: options.budget,
        quotient,
        suffix,
        sum_free_phi: total,
        sum_free_psi: total,
        forward: options.forward_checking.then(|| Support::new(g)),
    };
    match search.run(0) {
        Step::Done => {
            let nodes = search.nodes;
            let mapping =
                CompleteMapping::new(g, search.phi).expect("search only emits complete mappings");
            SearchOutcome::Found { mapping, nodes }
        }
        Step::Exhausted => SearchOutcome::BudgetExhausted {
            nodes: search.nodes,
        },
        Step::Fail => SearchOutcome::NotFound {
            nodes: search.nodes,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_group;

    fn plain() -> SearchOptions {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            quotient_sum_pruning: false,
            odd_order_shortcut: false,
            forward_checking: false,
        }
    }

    #[test]
    fn predicate_examples() {
        assert!(!hall_paige_predicate(&make_group("cyclic 2").unwrap()));
        assert!(hall_paige_predicate(&make_group("klein").unwrap()));
        assert!(!hall_paige_predicate(&make_group("symmetric 3").unwrap()));
        assert!(hall_paige_predicate(&make_group("cyclic 3").unwrap()));
    }

    #[test]
    fn search_examples() {
        let z3 = make_group("cyclic 3").unwrap();
        let found = find_complete_mapping(&z3, plain());
        assert_eq!(found.mapping().unwrap().phi(), &[0, 1, 2]);

        let z4 = make_group("cyclic 4").unwrap();
        assert!(matches!(
            find_complete_mapping(&z4, plain()),
            SearchOutcome::NotFound { .. }
        ));
        assert!(matches!(
            find_complete_mapping(&z4, SearchOptions::default()),
            SearchOutcome::NotFound { nodes: 0 }
        ));

        let v4 = make_group("klein").unwrap();
        assert!(find_complete_mapping(&v4, plain()).mapping().is_some());
    }

    #[test]
    fn budget_is_distinct_from_not_found() {
        let z8 = make_group("cyclic 8").unwrap();
        let opts = SearchOptions {
            budget: 5,
            ..plain()
        };
        assert_eq!(
            find_complete_mapping(&z8, opts),
            SearchOutcome::BudgetExhausted { nodes: 5 }
        );
    }

    #[test]
    fn verify_examples() {
        let z3 = make_group("cyclic 3").unwrap();
        assert!(verify_complete_mapping(&z3, &[0, 1, 2]));
        let z4 = make_group("cyclic 4").unwrap();
        assert!(!verify_complete_mapping(&z4, &[0, 1, 2, 3]));
        let s4 = make_group("symmetric 4").unwrap();
        let m = find_complete_mapping(&s4, SearchOptions::default());
        assert!(verify_complete_mapping(&s4, m.mapping().unwrap().phi()));
    }

    #[test]
    fn pruning_does_not_change_first_solution() {
        for name in ["klein", "dihedral 8", "quaternion8", "alternating 4", "cyclic 2 x cyclic 4"] {
            let g = make_group(name).unwrap();
            let a = find_complete_mapping(&g, plain());
            let b = find_complete_mapping(&g, SearchOptions::default());
            assert_eq!(a.mapping(), b.mapping(), "{name}");
            assert!(b.nodes() <= a.nodes());
        }
    }
}
