use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use astro_float::RoundingMode;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::numeric::{approximate, biguint_to_float, float_below, nearest_integer, BigArith, BigComplex};
use super::table::{CharacterTable, TableError};
use crate::chartab::expr::Arith;
use crate::classes::{conjugacy_classes, ConjugacyClassing};
use crate::group::FiniteGroup;

/// Largest group the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 2000;

/// Distance from an integer tolerated when rounding a structure constant.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-3;

const RM: RoundingMode = RoundingMode::ToEven;

/// `(C1, C2, C3)` with the tuple count and `xi = hat / |G|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub classes: [String; 3],
    pub hat_value: BigUint,
    pub xi_value: BigRational,
}

impl StructureConstant {
    /// `|H| xi` for a supplied subgroup order.
    pub fn scaled(&self, h: u128) -> BigRational {
        &self.xi_value * BigRational::from_integer(BigInt::from(h))
    }
}

/// Evaluates `|G|^{n-1} / prod |C_G(g_i)| * sum_chi prod chi(g_i) / chi(1)^{n-2}`
/// at a precision sized for the tuple length, caching evaluated columns.
pub struct StructureConstants<'t> {
    table: &'t CharacterTable,
    arity: usize,
    arith: BigArith,
    columns: Vec<Option<Vec<BigComplex>>>,
}

impl<'t> StructureConstants<'t> {
    pub fn new(table: &'t CharacterTable) -> Result<Self, TableError> {
        Self::with_arity(table, 3)
    }

    pub fn with_arity(table: &'t CharacterTable, arity: usize) -> Result<Self, TableError> {
        Ok(Self {
            table,
            arity,
            arith: BigArith::new(precision_for(table, arity)).ok_or(TableError::Precision)?,
            columns: vec![None; table.class_count()],
        })
    }

    pub fn table(&self) -> &CharacterTable {
        self.table
    }

    pub fn precision(&self) -> usize {
        self.arith.precision()
    }

    fn column(&mut self, class: usize) -> Result<Vec<BigComplex>, TableError> {
        if let Some(c) = &self.columns[class] {
            return Ok(c.clone());
        }
        let col = self
            .table
            .characters()
            .iter()
            .enumerate()
            .map(|(row, chars)| {
                chars[class]
                    .evaluate(&mut self.arith)
                    .map_err(|source| TableError::Value { row, class, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.columns[class] = Some(col.clone());
        Ok(col)
    }

    /// Number of tuples `(x_1, ..., x_n)` with `x_i` in class `classes[i]`
    /// and `x_1 ... x_n = 1`.
    pub fn hat(&mut self, classes: &[usize]) -> Result<BigUint, TableError> {
        let k = self.table.class_count();
        if let Some(&bad) = classes.iter().find(|&&c| c >= k) {
            return Err(TableError::UnknownClass(bad.to_string()));
        }
        let n = classes.len();
        if n == 0 {
            return Ok(BigUint::one());
        }
        if n > self.arity {
            *self = Self::with_arity(self.table, n)?;
        }
        let p = self.arith.precision();
        let degrees: Vec<BigComplex> = self.table.degrees().iter().map(|&d| self.arith.int(d)).collect();
        let cols = classes.iter().map(|&c| self.column(c)).collect::<Result<Vec<_>, _>>()?;
        let mut sum = self.arith.zero();
        for (r, deg) in degrees.iter().enumerate() {
            let mut term = self.arith.int(1);
            for col in &cols {
                term = self.arith.mul(&term, &col[r]);
            }
            if n <= 2 {
                for _ in n..2 {
                    term = self.arith.mul(&term, deg);
                }
            } else {
                for _ in 2..n {
                    term = self.arith.div(&term, deg).ok_or(TableError::Precision)?;
                }
            }
            sum = self.arith.add(&sum, &term);
        }
        let order = BigUint::from(self.table.group_order());
        let num = order.pow((n - 1) as u32);
        let den = classes
            .iter()
            .fold(BigUint::one(), |acc, &c| acc * BigUint::from(self.table.classes()[c].centralizer_order));
        let value = self.arith.scale(&sum, &to_precision(&num, p), &to_precision(&den, p));
        let names = || classes.iter().map(|&c| self.table.classes()[c].name.clone()).collect::<Vec<_>>();
        let not_integral = || TableError::NotIntegral {
            classes: names(),
            value: alloc::format!("{:e}", approximate(&value.re)),
        };
        let (negative, int, dist) = nearest_integer(&value.re, p).ok_or_else(not_integral)?;
        let integral = float_below(&dist, INTEGRALITY_TOLERANCE, p) && float_below(&value.im, INTEGRALITY_TOLERANCE, p);
        if !integral || (negative && int != BigUint::ZERO) {
            return Err(not_integral());
        }
        Ok(int)
    }

    pub fn hat_by_name(&mut self, names: &[&str]) -> Result<BigUint, TableError> {
        let idx = names
            .iter()
            .map(|n| self.table.class_index(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.hat(&idx)
    }

    pub fn xi(&mut self, c1: usize, c2: usize, c3: usize) -> Result<StructureConstant, TableError> {
        let hat_value = self.hat(&[c1, c2, c3])?;
        let xi_value = BigRational::new(
            BigInt::from(hat_value.clone()),
            BigInt::from(self.table.group_order()),
        );
        let name = |c: usize| self.table.classes()[c].name.clone();
        Ok(StructureConstant {
            classes: [name(c1), name(c2), name(c3)],
            hat_value,
            xi_value,
        })
    }

    pub fn xi_by_name(&mut self, c1: &str, c2: &str, c3: &str) -> Result<StructureConstant, TableError> {
        let t = self.table;
        self.xi(t.class_index(c1)?, t.class_index(c2)?, t.class_index(c3)?)
    }
}

fn precision_for(table: &CharacterTable, arity: usize) -> usize {
    let bits = 128 - table.group_order().leading_zeros() as usize;
    let k_bits = usize::BITS as usize - table.class_count().leading_zeros() as usize;
    (96 + k_bits + (arity.max(1) + 1) * bits).next_multiple_of(64)
}

fn to_precision(u: &BigUint, p: usize) -> astro_float::BigFloat {
    let mut f = biguint_to_float(u);
    f.set_precision(p.max(u.bits() as usize), RM).ok();
    f
}

pub fn structure_constant_hat(table: &CharacterTable, classes: &[&str]) -> Result<BigUint, TableError> {
    StructureConstants::with_arity(table, classes.len())?.hat_by_name(classes)
}

pub fn structure_constant_xi(table: &CharacterTable, c1: &str, c2: &str, c3: &str) -> Result<StructureConstant, TableError> {
    StructureConstants::new(table)?.xi_by_name(c1, c2, c3)
}

/// Exhaustive triple counts `#{(x, y, z) : x in C_i, y in C_j, z in C_k,
/// xyz = 1}` indexed by the classes of [`conjugacy_classes`].
#[derive(Clone, Debug)]
pub struct BruteForceConstants {
    pub classing: ConjugacyClassing,
    counts: Vec<u64>,
}

impl BruteForceConstants {
    pub fn class_count(&self) -> usize {
        self.classing.class_count()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.class_count();
        self.counts[(i * n + j) * n + k]
    }
}

pub fn brute_force_structure_constants(g: &FiniteGroup) -> Result<BruteForceConstants, TableError> {
    if g.order() > BRUTE_FORCE_LIMIT {
        return Err(TableError::GroupTooLarge(g.order()));
    }
    let classing = conjugacy_classes(g);
    let n = classing.class_count();
    let mut counts = vec![0u64; n * n * n];
    for x in 0..g.order() {
        let cx = classing.class_of[x];
        for y in 0..g.order() {
            let z = g.inv(g.mul(x, y));
            let idx = (cx * n + classing.class_of[y]) * n + classing.class_of[z];
            counts[idx] += 1;
        }
    }
    Ok(BruteForceConstants { classing, counts })
}

/// Bijections from table classes to group classes preserving element order
/// and class size, at most `cap` of them.
pub fn class_correspondences(table: &CharacterTable, classing: &ConjugacyClassing, cap: usize) -> Vec<Vec<usize>> {
    fn extend(
        table: &CharacterTable,
        classing: &ConjugacyClassing,
        partial: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        let t = partial.len();
        if t == table.class_count() {
            out.push(partial.clone());
            return;
        }
        let info = &table.classes()[t];
        for g in 0..classing.class_count() {
            let fits = !used[g]
                && classing.element_orders[g] as u128 == info.element_order as u128
                && classing.sizes[g] as u128 == info.size;
            if fits {
                used[g] = true;
                partial.push(g);
                extend(table, classing, partial, used, out, cap);
                partial.pop();
                used[g] = false;
            }
        }
    }
    let mut out = Vec::new();
    if table.class_count() == classing.class_count() {
        let mut used = vec![false; classing.class_count()];
        extend(table, classing, &mut Vec::new(), &mut used, &mut out, cap);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Table class `t` corresponds to group class `correspondence[t]`.
    pub correspondence: Vec<usize>,
    pub triples: usize,
}

/// Formula values on all triples of table classes versus exhaustive counts,
/// trying each order- and size-preserving class correspondence.
pub fn compare_with_brute_force(table: &CharacterTable, g: &FiniteGroup) -> Result<OracleReport, TableError> {
    let brute = brute_force_structure_constants(g)?;
    let k = table.class_count();
    let mut sc = StructureConstants::new(table)?;
    let mut formula = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                formula.push(sc.hat(&[i, j, l])?);
            }
        }
    }
    let candidates = class_correspondences(table, &brute.classing, 1024);
    let mut first_mismatch = None;
    for sigma in candidates {
        let mut mismatch = None;
        'scan: for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let f = &formula[(i * k + j) * k + l];
                    let b = brute.get(sigma[i], sigma[j], sigma[l]);
                    if *f != BigUint::from(b) {
                        mismatch = Some(TableError::OracleMismatch {
                            classes: [i, j, l],
                            formula: f.to_string(),
                            brute: b,
                        });
                        break 'scan;
                    }
                }
            }
        }
        match mismatch {
            None => {
                return Ok(OracleReport {
                    correspondence: sigma,
                    triples: k * k * k,
                })
            }
            Some(e) => {
                first_mismatch.get_or_insert(e);
            }
        }
    }
    Err(first_mismatch.unwrap_or(TableError::NoCorrespondence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_group;
    use crate::chartab::table::fixtures::{a5, s3};

    fn count(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn s3_involution_pairs_into_three_cycles() {
        assert_eq!(structure_constant_hat(&s3(), &["2a", "2a", "3a"]).unwrap(), count(6));
        assert_eq!(structure_constant_hat(&s3(), &["1a", "1a", "1a"]).unwrap(), count(1));
        assert_eq!(structure_constant_hat(&a5(), &["1A", "1A", "1A"]).unwrap(), count(1));
    }

    #[test]
    fn other_arities() {
        let t = a5();
        assert_eq!(structure_constant_hat(&t, &["1a"]).unwrap(), count(1));
        assert_eq!(structure_constant_hat(&t, &["2a"]).unwrap(), count(0));
        assert_eq!(structure_constant_hat(&t, &["2a", "2a"]).unwrap(), count(15));
        assert_eq!(structure_constant_hat(&t, &[]).unwrap(), count(1));
        // Four involutions multiplying to 1: a brute force count over A5.
        let g = make_group("alternating 5").unwrap();
        let cl = conjugacy_classes(&g);
        let invs: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == 2).collect();
        let mut n = 0u64;
        for &x in &invs {
            for &y in &invs {
                for &z in &invs {
                    let w = g.inv(g.mul(g.mul(x, y), z));
                    if cl.element_orders[cl.class_of[w]] == 2 {
                        n += 1;
                    }
                }
            }
        }
        assert_eq!(structure_constant_hat(&t, &["2a", "2a", "2a", "2a"]).unwrap(), count(n));
    }

    #[test]
    fn xi_is_hat_over_group_order() {
        let t = s3();
        let c = structure_constant_xi(&t, "2a", "2a", "3a").unwrap();
        assert_eq!(c.xi_value, BigRational::new(BigInt::from(1), BigInt::from(1)));
        let one = structure_constant_xi(&t, "2a", "2a", "1a").unwrap();
        assert_eq!(one.xi_value, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(one.scaled(2), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(c.classes, ["2a".to_string(), "2a".to_string(), "3a".to_string()]);
    }

    #[test]
    fn z2_brute_force() {
        let b = brute_force_structure_constants(&make_group("cyclic 2").unwrap()).unwrap();
        let inv = (b.classing.class_of[0] == 0) as usize;
        assert_eq!(b.get(inv, inv, 0), 1);
    }

    #[test]
    fn formula_matches_oracle_on_s3_and_a5() {
        let r = compare_with_brute_force(&s3(), &make_group("symmetric 3").unwrap()).unwrap();
        assert_eq!(r.triples, 27);
        let r = compare_with_brute_force(&a5(), &make_group("alternating 5").unwrap()).unwrap();
        assert_eq!(r.triples, 125);
    }

    #[test]
    fn unknown_class_is_reported() {
        assert!(matches!(
            structure_constant_hat(&s3(), &["2a", "4a"]),
            Err(TableError::UnknownClass(_))
        ));
    }
}
