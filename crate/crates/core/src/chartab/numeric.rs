//! Complex arithmetic backends: `f64` for table validation and
//! arbitrary-precision binary floats for structure constants.

use alloc::vec::Vec;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;
use num_traits::{Float, Zero};

use super::expr::Arith;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct F64Arith;

impl Arith for F64Arith {
    type Value = C64;

    fn int(&mut self, v: i64) -> C64 {
        C64::new(v as f64, 0.0)
    }

    fn root_of_unity(&mut self, n: u32) -> C64 {
        let theta = 2.0 * core::f64::consts::PI / n as f64;
        C64::new(Float::cos(theta), Float::sin(theta))
    }

    fn sqrt(&mut self, n: i64) -> C64 {
        let r = Float::sqrt(n.unsigned_abs() as f64);
        if n < 0 {
            C64::new(0.0, r)
        } else {
            C64::new(r, 0.0)
        }
    }

    fn neg(&mut self, x: &C64) -> C64 {
        C64::new(-x.re, -x.im)
    }

    fn add(&mut self, x: &C64, y: &C64) -> C64 {
        C64::new(x.re + y.re, x.im + y.im)
    }

    fn sub(&mut self, x: &C64, y: &C64) -> C64 {
        C64::new(x.re - y.re, x.im - y.im)
    }

    fn mul(&mut self, x: &C64, y: &C64) -> C64 {
        x.mul(*y)
    }

    fn div(&mut self, x: &C64, y: &C64) -> Option<C64> {
        let d = y.norm_sqr();
        if d == 0.0 {
            return None;
        }
        let n = x.mul(y.conj());
        Some(C64::new(n.re / d, n.im / d))
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Arbitrary-precision complex arithmetic at a fixed binary precision.
pub struct BigArith {
    precision: usize,
    consts: Consts,
    roots: Vec<(u32, BigComplex)>,
}

const RM: RoundingMode = RoundingMode::ToEven;

impl core::fmt::Debug for BigArith {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BigArith").field("precision", &self.precision).finish()
    }
}

impl BigArith {
    /// `None` if the constant cache cannot be allocated.
    pub fn new(precision: usize) -> Option<Self> {
        Some(Self {
            precision,
            consts: Consts::new().ok()?,
            roots: Vec::new(),
        })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn zero(&self) -> BigComplex {
        BigComplex {
            re: BigFloat::from_i64(0, self.precision),
            im: BigFloat::from_i64(0, self.precision),
        }
    }

    pub fn real(&self, re: BigFloat) -> BigComplex {
        BigComplex {
            re,
            im: BigFloat::from_i64(0, self.precision),
        }
    }

    pub fn from_biguint(&self, u: &BigUint) -> BigFloat {
        biguint_to_float(u)
    }

    pub fn scale(&self, x: &BigComplex, num: &BigFloat, den: &BigFloat) -> BigComplex {
        let p = self.precision;
        BigComplex {
            re: x.re.mul(num, p, RM).div(den, p, RM),
            im: x.im.mul(num, p, RM).div(den, p, RM),
        }
    }
}

impl Arith for BigArith {
    type Value = BigComplex;

    fn int(&mut self, v: i64) -> BigComplex {
        self.real(BigFloat::from_i64(v, self.precision))
    }

    fn root_of_unity(&mut self, n: u32) -> BigComplex {
        if let Some((_, r)) = self.roots.iter().find(|(m, _)| *m == n) {
            return r.clone();
        }
        let p = self.precision;
        let guard = p + 64;
        let two_pi = self.consts.pi(guard, RM).mul(&BigFloat::from_i64(2, guard), guard, RM);
        let theta = two_pi.div(&BigFloat::from_u64(n as u64, guard), guard, RM);
        let mut r = BigComplex {
            re: theta.cos(guard, RM, &mut self.consts),
            im: theta.sin(guard, RM, &mut self.consts),
        };
        r.re.set_precision(p, RM).ok();
        r.im.set_precision(p, RM).ok();
        self.roots.push((n, r.clone()));
        r
    }

    fn sqrt(&mut self, n: i64) -> BigComplex {
        let p = self.precision;
        let r = BigFloat::from_u64(n.unsigned_abs(), p).sqrt(p, RM);
        if n < 0 {
            BigComplex {
                re: BigFloat::from_i64(0, p),
                im: r,
            }
        } else {
            self.real(r)
        }
    }

    fn neg(&mut self, x: &BigComplex) -> BigComplex {
        BigComplex {
            re: x.re.neg(),
            im: x.im.neg(),
        }
    }

    fn add(&mut self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.precision;
        BigComplex {
            re: x.re.add(&y.re, p, RM),
            im: x.im.add(&y.im, p, RM),
        }
    }

    fn sub(&mut self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.precision;
        BigComplex {
            re: x.re.sub(&y.re, p, RM),
            im: x.im.sub(&y.im, p, RM),
        }
    }

    fn mul(&mut self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.precision;
        let rr = x.re.mul(&y.re, p, RM);
        let ii = x.im.mul(&y.im, p, RM);
        let ri = x.re.mul(&y.im, p, RM);
        let ir = x.im.mul(&y.re, p, RM);
        BigComplex {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
        }
    }

    fn div(&mut self, x: &BigComplex, y: &BigComplex) -> Option<BigComplex> {
        let p = self.precision;
        let d = y.re.mul(&y.re, p, RM).add(&y.im.mul(&y.im, p, RM), p, RM);
        if d.is_zero() {
            return None;
        }
        let conj = BigComplex {
            re: y.re.clone(),
            im: y.im.neg(),
        };
        let n = self.mul(x, &conj);
        Some(BigComplex {
            re: n.re.div(&d, p, RM),
            im: n.im.div(&d, p, RM),
        })
    }
}

/// Exact conversion; the float carries as many bits as `u` needs.
pub fn biguint_to_float(u: &BigUint) -> BigFloat {
    if u.is_zero() {
        return BigFloat::from_u64(0, 64);
    }
    let words = u.to_u64_digits();
    let e = (64 * words.len()) as i32;
    BigFloat::from_words(&words, Sign::Pos, e)
}

/// Nearest integer to `x` and the distance to it, or `None` for NaN/inf.
pub fn nearest_integer(x: &BigFloat, precision: usize) -> Option<(bool, BigUint, BigFloat)> {
    if x.is_nan() || x.is_inf() {
        return None;
    }
    let r = x.round(0, RM);
    let dist = x.sub(&r, precision, RM).abs();
    if r.is_zero() {
        return Some((false, BigUint::zero(), dist));
    }
    let (m, _, s, e, _) = r.as_raw_parts()?;
    let mut v = BigUint::zero();
    for w in m.iter().rev() {
        v = (v << 64u32) + BigUint::from(*w);
    }
    let shift = e as i64 - 64 * m.len() as i64;
    let v = if shift >= 0 { v << (shift as u64) } else { v >> ((-shift) as u64) };
    Some((s == Sign::Neg, v, dist))
}

/// Leading 64 bits of `x` as an `f64`; for diagnostics only.
pub fn approximate(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) if !m.is_empty() => {
            let top = *m.last().unwrap() as f64;
            let v = top * Float::powi(2.0f64, e - 64);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
        _ => 0.0,
    }
}

pub fn float_below(x: &BigFloat, bound: f64, precision: usize) -> bool {
    x.abs().cmp(&BigFloat::from_f64(bound, precision)).is_some_and(|c| c < 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::expr::ValueExpr;

    #[test]
    fn integer_round_trip() {
        let u = BigUint::parse_bytes(b"86775571046077562880", 10).unwrap();
        let x = biguint_to_float(&u);
        let (neg, v, d) = nearest_integer(&x, 256).unwrap();
        assert!(!neg);
        assert_eq!(v, u);
        assert!(d.is_zero());
    }

    #[test]
    fn rounding_reports_distance() {
        let p = 256;
        let x = BigFloat::from_f64(-41.75, p);
        let (neg, v, d) = nearest_integer(&x, p).unwrap();
        assert!(neg);
        assert_eq!(v, BigUint::from(42u32));
        assert!(float_below(&d, 0.26, p));
        assert!(!float_below(&d, 0.24, p));
    }

    #[test]
    fn golden_ratio_identity_holds_at_high_precision() {
        // b5 = (-1+sqrt 5)/2 satisfies b5^2 + b5 - 1 = 0.
        let mut a = BigArith::new(320).unwrap();
        let e = ValueExpr::parse("(E(5)+E(5)^4)^2+E(5)+E(5)^4-1").unwrap();
        let v = e.evaluate(&mut a).unwrap();
        assert!(float_below(&v.re, 1e-80, 320));
        assert!(float_below(&v.im, 1e-80, 320));
    }
}
