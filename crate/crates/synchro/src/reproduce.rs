//! Drivers recomputing the J4 tables and matrices from the external inputs,
//! and the entry-list check from the shipped collapsed matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use synchro_core::chartab::{CharacterTable, StructureConstants, TableError};
use synchro_core::matrep::{
    centralizer_generators, collapsed_row, orbit_closure, verify_standard_generators, BitMatrix, Fingerprint,
    FingerprintContext, FingerprintTable, MatrepError, StandardGeneratorReport, WordEnvironment,
};
use synchro_core::orbitals::{intersection_algebra_expand, wilcox_check, CollapsedAdjacency, OrbitalError};

use crate::formats::orbital_table::{fingerprint_table, pairing, OrbitalRow};
use crate::j4;

#[derive(Clone, Debug, Serialize)]
pub struct Table1Check {
    pub class: String,
    pub expected_xi: String,
    pub xi: String,
    pub expected_scaled: String,
    pub scaled: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Check>,
    /// Every class outside the nonzero rows, with whether `xi = 0`.
    pub zero_classes: Vec<(String, bool)>,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok) && self.zero_classes.iter().all(|(_, ok)| *ok)
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `xi(2A, 2A, C)` for every class `C` of the table.
pub fn table1(table: &CharacterTable) -> Result<Table1Report, TableError> {
    let expected = j4::table1_rows();
    let h = BigRational::from_integer(BigInt::from(j4::CENTRALIZER_ORDER));
    let mut sc = StructureConstants::new(table)?;
    let two_a = table.class_index("2A")?;
    let mut rows = Vec::new();
    let mut zero_classes = Vec::new();
    for (c, info) in table.classes().iter().enumerate() {
        let got = sc.xi(two_a, two_a, c)?;
        let scaled = &got.xi_value * &h;
        match expected.iter().find(|e| e.class.eq_ignore_ascii_case(&info.name)) {
            Some(e) => {
                let want_scaled = BigRational::from_integer(BigInt::from(e.scaled));
                rows.push(Table1Check {
                    class: e.class.clone(),
                    expected_xi: rational_string(&e.xi),
                    xi: rational_string(&got.xi_value),
                    expected_scaled: e.scaled.to_string(),
                    scaled: rational_string(&scaled),
                    ok: got.xi_value == e.xi && scaled == want_scaled,
                });
            }
            None => zero_classes.push((info.name.clone(), got.hat_value == 0u32.into())),
        }
    }
    // Rows missing from the table count as failures.
    for e in &expected {
        if !rows.iter().any(|r| r.class == e.class) {
            rows.push(Table1Check {
                class: e.class.clone(),
                expected_xi: rational_string(&e.xi),
                xi: "missing class".into(),
                expected_scaled: e.scaled.to_string(),
                scaled: "missing class".into(),
                ok: false,
            });
        }
    }
    Ok(Table1Report { rows, zero_classes })
}

/// The J4 pair with the derived letters and centralizer generators.
pub struct J4Context {
    pub env: WordEnvironment,
    pub a: BitMatrix,
    pub h: [BitMatrix; 2],
    pub standard: StandardGeneratorReport,
    pub rows: Vec<OrbitalRow>,
    pub table: FingerprintTable,
    pub reps: Vec<BitMatrix>,
}

impl J4Context {
    pub fn new(a: &BitMatrix, b: &BitMatrix, rows: Vec<OrbitalRow>) -> Result<Self, MatrepError> {
        let standard = verify_standard_generators(a, b)?;
        let env = WordEnvironment::new(a, b)?;
        let c = centralizer_generators(a, b)?;
        let table = fingerprint_table(&rows).map_err(|_| MatrepError::DuplicateFingerprint(rows[0].fingerprint))?;
        let reps = rows.iter().map(|r| env.evaluate(&r.word)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            env,
            a: a.clone(),
            h: [c.h1, c.h2],
            standard,
            rows,
            table,
            reps,
        })
    }

    pub fn conjugate(&self, x: &BitMatrix, t: &BitMatrix) -> Result<BitMatrix, MatrepError> {
        Ok(t.inverse()?.try_mul(x)?.try_mul(t)?)
    }

    /// `O_i`: the centralizer orbit of `a^{t_i}`.
    pub fn orbit(&self, i: usize) -> Result<Vec<BitMatrix>, MatrepError> {
        let seed = self.conjugate(&self.a, &self.reps[i])?;
        orbit_closure(&seed, &self.h)
    }

    /// `A_i`, rows evaluated in parallel.
    pub fn collapsed(&self, i: usize) -> Result<CollapsedAdjacency, MatrepError> {
        let orbit = self.orbit(i)?;
        let ctx = FingerprintContext::new(&self.a);
        let rank = self.reps.len();
        let matrix = self
            .reps
            .par_iter()
            .map(|t| collapsed_row(&ctx, t, &orbit, &self.table, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CollapsedAdjacency { orbital: i, matrix })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FingerprintCheck {
    pub orbital: usize,
    pub word: String,
    pub expected: (usize, usize, usize, usize),
    pub found: (usize, usize, usize, usize),
    pub rep_order: Option<u64>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Report {
    pub standard_generators: bool,
    pub failed_condition: Option<String>,
    pub fingerprints: Vec<FingerprintCheck>,
    /// `(orbital, expected s1, orbit size)`, 1-based orbital numbers.
    pub orbit_sizes: Vec<(usize, u64, usize)>,
}

impl Table2Report {
    pub fn passed(&self) -> bool {
        self.standard_generators
            && self.fingerprints.iter().all(|f| f.ok)
            && self.orbit_sizes.iter().all(|&(_, want, got)| want as usize == got)
    }
}

/// Fingerprint of `(a, a^{t_i})` for every row, and orbit sizes for the
/// requested orbitals (0-based).
pub fn table2(ctx: &J4Context, orbit_checks: &[usize]) -> Result<Table2Report, MatrepError> {
    let fp = FingerprintContext::new(&ctx.a);
    let fingerprints = ctx
        .rows
        .par_iter()
        .zip(&ctx.reps)
        .map(|(row, t)| {
            let y = ctx.conjugate(&ctx.a, t)?;
            let found: Fingerprint = fp.fingerprint(&y)?;
            // t_1 is the identity; the others are conjugates of t.
            let rep_order = t.order(16);
            let order_ok = if row.index == 0 { rep_order == Some(1) } else { rep_order == Some(3) };
            Ok(FingerprintCheck {
                orbital: row.index + 1,
                word: row.word_text.clone(),
                expected: row.fingerprint.as_tuple(),
                found: found.as_tuple(),
                rep_order,
                ok: found == row.fingerprint && order_ok,
            })
        })
        .collect::<Result<Vec<_>, MatrepError>>()?;
    let mut orbit_sizes = Vec::new();
    for &i in orbit_checks {
        orbit_sizes.push((i + 1, ctx.rows[i].s1, ctx.orbit(i)?.len()));
    }
    Ok(Table2Report {
        standard_generators: ctx.standard.passed(),
        failed_condition: ctx.standard.first_failure().map(|c| format!("o({}) = {:?}, expected {}", c.word, c.found, c.expected)),
        fingerprints,
        orbit_sizes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryListReport {
    pub basis_size: usize,
    pub paired: Vec<u64>,
    pub diagonal: Vec<u64>,
    pub expected_paired: Vec<u64>,
    pub expected_diagonal: Vec<u64>,
    pub cor15: bool,
    pub cor16: bool,
    pub pairing_matches: bool,
}

impl EntryListReport {
    pub fn passed(&self) -> bool {
        self.basis_size == j4::RANK
            && self.paired == self.expected_paired
            && self.diagonal == self.expected_diagonal
            && self.cor15
            && self.cor16
            && self.pairing_matches
    }
}

/// Expands the intersection algebra from the given generators and reads
/// off `(A_i)[i][i*]` and `(A_i)[i][i]`.
pub fn entry_lists(generators: &[CollapsedAdjacency]) -> Result<(Vec<CollapsedAdjacency>, EntryListReport), OrbitalError> {
    let basis = intersection_algebra_expand(generators, j4::RANK)?;
    let expected_pairing = pairing(&j4::orbital_rows());
    let found_pairing = synchro_core::orbitals::pairing_from_matrices(&basis)?;
    let w = wilcox_check(&basis, &expected_pairing)?;
    let (expected_paired, expected_diagonal) = j4::entry_lists();
    let report = EntryListReport {
        basis_size: basis.len(),
        paired: w.paired_entries.clone(),
        diagonal: w.diagonal_entries.clone(),
        expected_paired,
        expected_diagonal,
        cor15: w.all_cor15(),
        cor16: w.all_cor16(),
        pairing_matches: found_pairing == expected_pairing,
    };
    Ok((basis, report))
}
