//! Fixture groups by name.
//!
//! Accepted descriptors (case-insensitive), combinable with ` x ` for direct
//! products:
//!
//! | long form              | short form |
//! |------------------------|------------|
//! | `cyclic n`             | `Zn`, `Cn` |
//! | `dihedral m` (order m) | `Dm`       |
//! | `symmetric n`          | `Sn`       |
//! | `alternating n`        | `An`       |
//! | `elementary-abelian p^k` | `E p^k`  |
//! | `quaternion8`          | `Q8`       |
//! | `klein`                | `V4`       |

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupError};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown group descriptor `{0}`")]
    Unknown(String),
    #[error("invalid parameter in `{0}`")]
    BadParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

const CLOSURE_CAP: usize = 1 << 20;

pub fn make_group(desc: &str) -> Result<FiniteGroup, CatalogError> {
    let factors: Vec<&str> = desc
        .split('×')
        .flat_map(|s| s.split(" x "))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if factors.is_empty() {
        return Err(CatalogError::Unknown(desc.into()));
    }
    let mut group = make_factor(factors[0])?;
    for f in &factors[1..] {
        group = direct_product(&group, &make_factor(f)?)?;
    }
    Ok(group)
}

fn make_factor(desc: &str) -> Result<FiniteGroup, CatalogError> {
    let lower = desc.to_ascii_lowercase();
    let lower = lower.trim();
    let bad = || CatalogError::BadParameter(desc.into());
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());

    let (family, arg) = if let Some((f, a)) = lower.split_once(char::is_whitespace) {
        (f.to_string(), a.trim().to_string())
    } else {
        let split = lower
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(lower.len());
        (lower[..split].to_string(), lower[split..].to_string())
    };
    match family.as_str() {
        "cyclic" | "z" | "c" => cyclic(num(&arg)?),
        "dihedral" | "d" => {
            let m = num(&arg)?;
            if m == 0 || m % 2 == 1 {
                return Err(bad());
            }
            dihedral(m / 2)
        }
        "symmetric" | "s" => symmetric(num(&arg)?),
        "alternating" | "a" => alternating(num(&arg)?),
        "elementary-abelian" | "e" => {
            let (p, k) = arg.split_once('^').ok_or_else(bad)?;
            elementary_abelian(num(p)?, num(k)?)
        }
        "quaternion" if arg == "8" => quaternion8(),
        "quaternion8" | "q" if arg.is_empty() || arg == "8" => quaternion8(),
        "klein" | "v" if arg.is_empty() || arg == "4" => elementary_abelian(2, 2),
        _ => Err(CatalogError::Unknown(desc.into())),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParameter("cyclic 0".into()));
    }
    let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    Ok(FiniteGroup::from_table(n, mul, Some(labels))?)
}

/// Dihedral group of order `2n`; element `i + n*j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParameter("dihedral 0".into()));
    }
    let order = 2 * n;
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        let (i, j) = (a % n, a / n);
        for b in 0..order {
            let (k, l) = (b % n, b / n);
            // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            mul[a * order + b] = (rot + n * ((j + l) % 2)) as u32;
        }
    }
    let labels = (0..order)
        .map(|a| {
            let (i, j) = (a % n, a / n);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (i, 0) => alloc::format!("r^{i}"),
                (0, _) => "s".to_string(),
                (i, _) => alloc::format!("r^{i}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_table(order, mul, Some(labels))?)
}

fn perm_closure(degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup, CatalogError> {
    if degree <= 1 || gens.is_empty() {
        return cyclic(1);
    }
    let g = PermGroup::new(degree, gens).expect("catalog generators share a degree");
    Ok(g.to_finite_group(CLOSURE_CAP)?)
}

/// Symmetric group on `n` points from `(0 1)` and `(0 1 ... n-1)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, CatalogError> {
    if n <= 1 {
        return cyclic(1);
    }
    let t = Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid");
    let c = Permutation::from_cycles(n, &[(0..n).collect()]).expect("valid");
    let gens = if n == 2 { vec![t] } else { vec![t, c] };
    perm_closure(n, gens)
}

/// Alternating group from the 3-cycles `(0 1 k)`, `k = 2..n-1`.
pub fn alternating(n: usize) -> Result<FiniteGroup, CatalogError> {
    if n <= 2 {
        return cyclic(1);
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).expect("valid"))
        .collect();
    perm_closure(n, gens)
}

/// `(Z_p)^k` with element index = base-`p` digits, most significant first.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup, CatalogError> {
    if p < 2 || !(2..p).all(|d| !p.is_multiple_of(d)) {
        return Err(CatalogError::BadParameter(alloc::format!(
            "elementary-abelian {p}^{k}"
        )));
    }
    let mut g = cyclic(if k == 0 { 1 } else { p })?;
    for _ in 1..k {
        g = direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

/// Quaternion group; indices 0..8 are `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Result<FiniteGroup, CatalogError> {
    // unit (0..4 = 1,i,j,k) with sign
    fn unit_mul(a: usize, b: usize) -> (usize, bool) {
        // returns (unit, negated)
        const T: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        T[a][b]
    }
    let mut mul = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = unit_mul(a / 2, b / 2);
            let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
            mul[a * 8 + b] = (2 * u + sign as usize) as u32;
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(FiniteGroup::from_table(8, mul, Some(labels))?)
}

/// `G x H` with `(a, b)` at index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, CatalogError> {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (a, b) = (x / n, x % n);
        for y in 0..order {
            let (c, d) = (y / n, y % n);
            mul[x * order + y] = (g.mul(a, c) * n + h.mul(b, d)) as u32;
        }
    }
    let labels = (0..order)
        .map(|x| alloc::format!("({},{})", g.label(x / n), h.label(x % n)))
        .collect();
    Ok(FiniteGroup::from_table(order, mul, Some(labels))?)
}

/// Every catalog descriptor whose group has order at most `max_order`,
/// deduplicated by descriptor text, in a fixed order.
pub fn catalog_descriptors(max_order: usize) -> Vec<String> {
    let mut out: Vec<(String, usize)> = Vec::new();
    let mut push = |d: String, order: usize| {
        if order <= max_order && order >= 1 && !out.iter().any(|(e, _)| *e == d) {
            out.push((d, order));
        }
    };
    for n in 1..=max_order {
        push(alloc::format!("cyclic {n}"), n);
    }
    for m in (4..=max_order).step_by(2) {
        push(alloc::format!("dihedral {m}"), m);
    }
    let fact = |n: usize| (1..=n).product::<usize>();
    for n in 3..=6 {
        push(alloc::format!("symmetric {n}"), fact(n));
        push(alloc::format!("alternating {n}"), fact(n) / 2);
    }
    for p in [2usize, 3, 5, 7] {
        for k in 2..=6 {
            push(alloc::format!("elementary-abelian {p}^{k}"), p.pow(k as u32));
        }
    }
    push("quaternion8".into(), 8);
    // Small direct products of two or three factors.
    let bases: Vec<(String, usize)> = {
        let mut b = Vec::new();
        for n in 2..=12 {
            b.push((alloc::format!("cyclic {n}"), n));
        }
        for m in [6usize, 8, 10, 12] {
            b.push((alloc::format!("dihedral {m}"), m));
        }
        b.push(("quaternion8".into(), 8));
        b.push(("alternating 4".into(), 12));
        b.push(("symmetric 4".into(), 24));
        b
    };
    for (i, (a, oa)) in bases.iter().enumerate() {
        for (b, ob) in &bases[i..] {
            push(alloc::format!("{a} x {b}"), oa * ob);
        }
    }
    push("cyclic 2 x cyclic 2 x cyclic 3".into(), 12);
    push("cyclic 2 x cyclic 2 x cyclic 6".into(), 24);
    push("cyclic 2 x cyclic 2 x symmetric 3".into(), 24);
    out.into_iter().map(|(d, _)| d).collect()
}

/// Materialised catalog groups of order at most `max_order`.
pub fn catalog_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    catalog_descriptors(max_order)
        .into_iter()
        .map(|d| {
            let g = make_group(&d).expect("catalog descriptors are valid");
            (d, g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let q8 = make_group("quaternion8").unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
        assert_eq!(make_group("cyclic 1").unwrap().order(), 1);
        let s4 = make_group("symmetric 4").unwrap();
        assert_eq!(s4.order(), 24);
        assert!(!s4.sylow2_is_cyclic());
        assert!(make_group("frobenius 20").is_err());
    }

    #[test]
    fn short_forms() {
        assert_eq!(make_group("S3").unwrap().order(), 6);
        assert_eq!(make_group("A5").unwrap().order(), 60);
        assert_eq!(make_group("D8").unwrap().order(), 8);
        assert_eq!(make_group("Z2 x Z3").unwrap().order(), 6);
        assert_eq!(make_group("V4").unwrap().order(), 4);
        assert_eq!(make_group("E 3^2").unwrap().order(), 9);
        assert!(make_group("D7").is_err());
    }

    #[test]
    fn catalog_is_valid_and_associative() {
        for (name, g) in catalog_groups(64) {
            g.check_associative_exhaustive()
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            for x in 0..g.order() {
                assert_eq!(g.mul(x, g.inv(x)), g.identity(), "{name}");
                assert_eq!(g.mul(g.identity(), x), x, "{name}");
            }
        }
    }
}
