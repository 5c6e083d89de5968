//! Image-list permutations and generator-only permutation groups.
//!
//! Permutations act on the right: `x^(pq) = (x^p)^q`, so [`Permutation::compose`]
//! applies `self` first.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_integer::Integer;

use crate::group::{FiniteGroup, GroupError};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image list is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed permutation literal: {0}")]
    Syntax(String),
    #[error("generator degree {found} differs from group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if seen[x] {
                    return Err(PermError::RepeatedPoint(x));
                }
                seen[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    /// Parses `[1,0,2]` (image list) or `(0 1)(2 3)` (disjoint cycles).
    ///
    /// Cycle notation needs a degree; without one the largest mentioned point
    /// plus one is used. Commas are accepted as separators inside cycles.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self, PermError> {
        let s = text.trim();
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| PermError::Syntax(s.into()))?;
            let images = parse_points(body)?;
            if let Some(d) = degree {
                if d != images.len() {
                    return Err(PermError::DegreeMismatch {
                        expected: d,
                        found: images.len(),
                    });
                }
            }
            return Self::from_images(images);
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(s.into()))?;
            let close = open.find(')').ok_or_else(|| PermError::Syntax(s.into()))?;
            let cycle = parse_points(&open[..close])?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let max_point = cycles.iter().flatten().copied().max();
        let degree = match (degree, max_point) {
            (Some(d), _) => d,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        };
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| acc.lcm(&(c.len() as u128)))
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(&alloc::format!("{x}"));
            }
            s.push(')');
        }
        s
    }
}

fn parse_points(body: &str) -> Result<Vec<usize>, PermError> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| PermError::Syntax(t.into())))
        .collect()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// A permutation group given by generators only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

/// Breadth-first enumeration of a permutation group: elements, the Cayley
/// graph edges `element * generator`, and the BFS parent of each element.
#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<Permutation>,
    /// `right_mul[i * k + s]` is the index of `elements[i] * generators[s]`.
    pub right_mul: Vec<u32>,
    /// `(parent, generator)` for every element except the identity.
    pub parent: Vec<(u32, u32)>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Breadth-first closure from the identity, generators applied on the
    /// right in listed order. Fails once more than `cap` elements appear.
    pub fn closure(&self, cap: usize) -> Result<Closure, GroupError> {
        let id = Permutation::identity(self.degree);
        let k = self.generators.len();
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut elements = vec![id];
        let mut right_mul: Vec<u32> = Vec::new();
        let mut parent = vec![(0u32, 0u32)];
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in self.generators.iter().enumerate() {
                let prod = elements[head].compose(g);
                let next = elements.len() as u32;
                let idx = *index.entry(prod.clone()).or_insert(next);
                if idx == next {
                    if elements.len() >= cap {
                        return Err(GroupError::SizeOverflow { cap });
                    }
                    elements.push(prod);
                    parent.push((head as u32, s as u32));
                }
                right_mul.push(idx);
            }
            head += 1;
        }
        debug_assert_eq!(right_mul.len(), elements.len() * k);
        Ok(Closure {
            elements,
            right_mul,
            parent,
        })
    }

    /// Enumerates the group elements in closure order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>, GroupError> {
        Ok(self.closure(cap)?.elements)
    }

    /// Materialises the multiplication table of the generated group.
    pub fn to_finite_group(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let closure = self.closure(cap)?;
        closure_table(&closure, self.generators.len())
    }

    pub fn order(&self, cap: usize) -> Result<usize, GroupError> {
        Ok(self.closure(cap)?.elements.len())
    }

    /// Orbit of `point` in breadth-first order, with a transversal element
    /// mapping `point` to each orbit point.
    pub fn orbit_with_transversal(&self, point: usize) -> (Vec<usize>, Vec<Permutation>) {
        let mut pos = vec![usize::MAX; self.degree];
        let mut orbit = vec![point];
        let mut transversal = vec![Permutation::identity(self.degree)];
        pos[point] = 0;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for g in &self.generators {
                let y = g.image(x);
                if pos[y] == usize::MAX {
                    pos[y] = orbit.len();
                    orbit.push(y);
                    transversal.push(transversal[head].compose(g));
                }
            }
            head += 1;
        }
        (orbit, transversal)
    }

    /// Orbit of `point` (sorted) and its stabilizer, generated by the
    /// non-identity Schreier generators `u_x g u_{xg}^-1`.
    pub fn orbit_and_stabilizer(&self, point: usize) -> (Vec<usize>, PermGroup) {
        let (orbit, transversal) = self.orbit_with_transversal(point);
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &x) in orbit.iter().enumerate() {
            pos[x] = i;
        }
        let inverses: Vec<Permutation> = transversal.iter().map(|t| t.inverse()).collect();
        let mut seen: hashbrown::HashSet<Permutation> = hashbrown::HashSet::new();
        let mut gens = Vec::new();
        for (i, &x) in orbit.iter().enumerate() {
            for g in &self.generators {
                let j = pos[g.image(x)];
                let schreier = transversal[i].compose(g).compose(&inverses[j]);
                if !schreier.is_identity() && seen.insert(schreier.clone()) {
                    gens.push(schreier);
                }
            }
        }
        let mut sorted = orbit;
        sorted.sort_unstable();
        (
            sorted,
            PermGroup {
                degree: self.degree,
                generators: gens,
            },
        )
    }

    /// Orbits of the group on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                for g in &self.generators {
                    let y = g.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }
}

/// Fills the multiplication table column by column: if `e_j = e_p g_s` then
/// `e_i e_j = (e_i e_p) g_s`.
pub(crate) fn closure_table(closure: &Closure, k: usize) -> Result<FiniteGroup, GroupError> {
    let n = closure.elements.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        mul[i * n] = i as u32;
    }
    for j in 1..n {
        let (p, s) = closure.parent[j];
        for i in 0..n {
            let ip = mul[i * n + p as usize] as usize;
            mul[i * n + j] = closure.right_mul[ip * k + s as usize];
        }
    }
    let labels = closure.elements.iter().map(|p| p.to_cycle_string()).collect();
    FiniteGroup::from_table(n, mul, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p("(0 1 2)", 3).order(), 3);
        assert_eq!(p("(0 1)(2 3 4)", 5).order(), 6);
    }

    #[test]
    fn literal_forms_agree() {
        assert_eq!(p("[1,0,2]", 3), p("(0 1)", 3));
        assert_eq!(Permutation::parse("(0 1)(2 3)", None).unwrap().degree(), 4);
        assert!(Permutation::parse("[0,0]", None).is_err());
        assert!(Permutation::parse("(0 1)(1 2)", None).is_err());
    }

    #[test]
    fn compose_is_right_action() {
        let a = p("(0 1)", 3);
        let b = p("(1 2)", 3);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).image(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(p("(0 1 2 3)", 4).pow(-1), p("(0 3 2 1)", 4));
    }

    #[test]
    fn closures() {
        let s3 = PermGroup::new(3, vec![p("(0 1)", 3), p("(0 1 2)", 3)]).unwrap();
        assert_eq!(s3.order(100).unwrap(), 6);
        let a5 = PermGroup::new(5, vec![p("(0 1 2 3 4)", 5), p("(2 3 4)", 5)]).unwrap();
        assert_eq!(a5.order(100).unwrap(), 60);
        let c4 = PermGroup::new(4, vec![p("(0 1 2 3)", 4)]).unwrap();
        assert_eq!(c4.closure(3).unwrap_err(), GroupError::SizeOverflow { cap: 3 });
    }

    #[test]
    fn closure_table_matches_composition() {
        let a5 = PermGroup::new(5, vec![p("(0 1 2 3 4)", 5), p("(2 3 4)", 5)]).unwrap();
        let c = a5.closure(100).unwrap();
        let g = closure_table(&c, 2).unwrap();
        for i in 0..60 {
            for j in 0..60 {
                let prod = c.elements[i].compose(&c.elements[j]);
                assert_eq!(c.elements[g.mul(i, j)], prod);
            }
        }
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn orbit_stabilizer_examples() {
        let a5 = PermGroup::new(5, vec![p("(0 1 2 3 4)", 5), p("(2 3 4)", 5)]).unwrap();
        let (orbit, stab) = a5.orbit_and_stabilizer(0);
        assert_eq!(orbit.len(), 5);
        assert_eq!(stab.order(100).unwrap(), 12);

        let g = PermGroup::new(3, vec![p("(0 1)", 3)]).unwrap();
        let (orbit, stab) = g.orbit_and_stabilizer(2);
        assert_eq!(orbit, vec![2]);
        assert_eq!(stab.order(10).unwrap(), 2);

        let c4 = PermGroup::new(4, vec![p("(0 1 2 3)", 4)]).unwrap();
        let (orbit, stab) = c4.orbit_and_stabilizer(0);
        assert_eq!(orbit.len(), 4);
        assert_eq!(stab.order(10).unwrap(), 1);
    }
}
