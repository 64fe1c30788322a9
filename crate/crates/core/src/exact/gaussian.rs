//! Exact scalars: rationals (arbitrary precision) and Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite::num::arithmetic::traits::Reciprocal;
use malachite::num::basic::traits::{One, Zero};
use malachite::num::conversion::traits::RoundingFrom;
use malachite::rounding_modes::RoundingMode;
use malachite::{Integer, Natural};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use malachite::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from_signeds(n, d)
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    f64::rounding_from(q, RoundingMode::Nearest).0
}

/// Canonical "p/q" form; integers keep an explicit "/1".
pub fn fmt_rat(q: &Rational) -> String {
    if *q.denominator_ref() == Natural::ONE {
        format!("{q}/1")
    } else {
        format!("{q}")
    }
}

pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with('-') || den.starts_with('+') {
        return Err(bad());
    }
    let num = num.strip_prefix('+').unwrap_or(num);
    let n = Integer::from_str(num).map_err(|_| bad())?;
    let d = Integer::from_str(den).map_err(|_| bad())?;
    if d == Integer::ZERO {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::from_integers(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }
    pub fn zero() -> Self {
        GaussRat { re: Rational::ZERO, im: Rational::ZERO }
    }
    pub fn one() -> Self {
        GaussRat { re: Rational::ONE, im: Rational::ZERO }
    }
    pub fn i() -> Self {
        GaussRat { re: Rational::ZERO, im: Rational::ONE }
    }
    pub fn real(re: Rational) -> Self {
        GaussRat { re, im: Rational::ZERO }
    }
    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from(n))
    }
    pub fn frac(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat { re: rat(re.0, re.1), im: rat(im.0, im.1) }
    }
    pub fn is_zero(&self) -> bool {
        self.re == Rational::ZERO && self.im == Rational::ZERO
    }
    pub fn is_one(&self) -> bool {
        self.re == Rational::ONE && self.im == Rational::ZERO
    }
    pub fn is_real(&self) -> bool {
        self.im == Rational::ZERO
    }
    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Self::real((&self.re).reciprocal()));
        }
        let d = self.norm_sq().reciprocal();
        Some(GaussRat { re: &self.re * &d, im: -(&self.im * &d) })
    }
    pub fn scale(&self, q: &Rational) -> Self {
        GaussRat { re: &self.re * q, im: &self.im * q }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<Rational> for GaussRat {
    fn from(q: Rational) -> Self {
        GaussRat::real(q)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return f.write_str(&fmt_rat(&self.re));
        }
        let sign = if self.im < Rational::ZERO { '-' } else { '+' };
        let im_abs = if self.im < Rational::ZERO { -&self.im } else { self.im.clone() };
        write!(f, "{}{}{}*i", fmt_rat(&self.re), sign, fmt_rat(&im_abs))
    }
}

fn parse_term(t: &str) -> Result<GaussRat> {
    let bad = || Error::Parse(format!("invalid term {t:?}"));
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let body = body.trim();
    if body.is_empty() {
        return Err(bad());
    }
    let (imag, coeff) = if let Some(c) = body.strip_suffix("*i") {
        (true, c)
    } else if let Some(c) = body.strip_suffix('i') {
        (true, if c.is_empty() { "1" } else { c })
    } else {
        (false, body)
    };
    let mut q = parse_rat(coeff)?;
    if q < Rational::ZERO && (neg || t.starts_with('+')) {
        return Err(bad());
    }
    if neg {
        q = -q;
    }
    Ok(if imag { GaussRat::new(Rational::ZERO, q) } else { GaussRat::real(q) })
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts "p", "p/q", "p/q+r/s*i", "r/s*i", "i", "-i", and sums thereof.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty literal".into()));
        }
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut acc = GaussRat::zero();
        for t in terms {
            acc += &parse_term(t)?;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        match (self.is_real(), o.is_real()) {
            (true, true) => GaussRat::real(&self.re * &o.re),
            (true, false) => GaussRat { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => GaussRat { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => {
                GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
            }
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, o: &GaussRat) -> GaussRat {
        let inv = o.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: GaussRat) -> GaussRat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: &GaussRat) -> GaussRat {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $m(self, o: GaussRat) -> GaussRat {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        if !o.is_real() {
            self.im += &o.im;
        }
    }
}

impl AddAssign<GaussRat> for GaussRat {
    fn add_assign(&mut self, o: GaussRat) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: &GaussRat) {
        self.re -= &o.re;
        if !o.is_real() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, o: &GaussRat) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["1/2", "-3/4", "1/2+1/1*i", "0/1-2/3*i", "5/1"] {
            let g: GaussRat = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: GaussRat = "1/2+i".parse().unwrap();
        assert_eq!(g, GaussRat::complex((1, 2), (1, 1)));
        let g: GaussRat = "-i".parse().unwrap();
        assert_eq!(g, GaussRat::complex((0, 1), (-1, 1)));
        let g: GaussRat = "2".parse().unwrap();
        assert_eq!(g, GaussRat::from_int(2));
        let g: GaussRat = "-1/2-3/4*i".parse().unwrap();
        assert_eq!(g, GaussRat::complex((-1, 2), (-3, 4)));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1//2", "1/-2", "+-1", "1/2+"] {
            assert!(s.parse::<GaussRat>().is_err(), "{s}");
        }
    }

    #[test]
    fn reduced_form() {
        let q = parse_rat("6/-4");
        assert!(q.is_err());
        let q = parse_rat("-6/4").unwrap();
        assert_eq!(fmt_rat(&q), "-3/2");
        assert_eq!(fmt_rat(&rat(0, 5)), "0/1");
    }

    #[test]
    fn field_ops() {
        let a = GaussRat::complex((3, 2), (1, 2));
        let b = GaussRat::complex((-1, 3), (2, 1));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv().unwrap(), GaussRat::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
        assert!(GaussRat::zero().inv().is_none());
    }
}
