//! Sparse multivariate polynomials over ℚ(i) with dense exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::gaussian::{GaussRat, Rational};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }
    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }
    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0u8; MAX_VARS];
        for (k, &x) in exps.iter().enumerate() {
            e[k] = u8::try_from(x).expect("exponent overflow");
        }
        Monomial(e)
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial(e)
    }
    pub fn with_exp(&self, i: usize, v: u32) -> Monomial {
        let mut e = self.0;
        e[i] = v as u8;
        Monomial(e)
    }
    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&x| x as u32).collect()
    }
}

/// Graded-lex order arranged so that the leading monomial sorts first:
/// higher total degree first, then larger exponent of the earliest variable.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, leading first.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, k: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if k + 1 == nvars {
            cur[k] = left;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(nvars, k + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one()] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Checked ring operation on two polynomials.
pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    if p.nvars != q.nvars {
        return Err(Error::Dimension(format!("nvars {} vs {}", p.nvars, q.nvars)));
    }
    Ok(match op {
        PolyOp::Add => p + q,
        PolyOp::Mul => p * q,
    })
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(nvars, Monomial::var(i), GaussRat::one())
    }
    pub fn monomial(nvars: usize, m: Monomial, c: GaussRat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }
    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }
    /// Σ xᵢ².
    pub fn norm_sq(nvars: usize) -> Self {
        Self::from_terms(nvars, (0..nvars).map(|i| (Monomial::var(i).mul(&Monomial::var(i)), GaussRat::one())))
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        debug_assert!(m.0[self.nvars..].iter().all(|&e| e == 0));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: Monomial, c: &GaussRat) {
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }
    pub fn coeff_ref(&self, m: &Monomial) -> Option<&GaussRat> {
        self.terms.get(m)
    }
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next()
    }
    /// Total degree; −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.leading().map(|(m, _)| m.degree() as i64).unwrap_or(-1)
    }
    pub fn min_degree(&self) -> i64 {
        self.terms.keys().next_back().map(|m| m.degree() as i64).unwrap_or(-1)
    }
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree() == self.min_degree()
    }
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn scale(&self, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }
    pub fn scale_rat(&self, q: &Rational) -> MultiPoly {
        self.scale(&GaussRat::real(q.clone()))
    }
    pub fn conj(&self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, a.conj())).collect() }
    }
    pub fn mul_monomial(&self, m: &Monomial, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }
    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Adds `c·q` in place.
    pub fn add_scaled(&mut self, q: &MultiPoly, c: &GaussRat) {
        assert_eq!(self.nvars, q.nvars, "nvars mismatch");
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, a) in &q.terms {
            if unit {
                self.add_term_ref(*m, a);
            } else {
                self.add_term(*m, a * c);
            }
        }
    }

    pub fn diff(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::Index(format!("variable {i} of {}", self.nvars)));
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.terms.insert(m.with_exp(i, e - 1), c * &GaussRat::from_int(e as i64));
            }
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                let e = m.exp(i);
                if e >= 2 {
                    out.add_term(m.with_exp(i, e - 2), c * &GaussRat::from_int((e * (e - 1)) as i64));
                }
            }
        }
        out
    }

    /// Σ xᵢ∂ᵢ p.
    pub fn euler(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c * &GaussRat::from_int(m.degree() as i64))).collect(),
        }
    }

    pub fn eval(&self, x: &[GaussRat]) -> GaussRat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &xi.pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (i, xi) in x.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= xi.powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.eval_c64(&xc)
    }

    /// Exact division by `d`; `None` when the remainder is nonzero.
    /// Only valid when `{d}` is a Gröbner basis of its ideal, which holds for a single divisor.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, d.nvars);
        let (lm, lc) = d.leading()?;
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            let mut e = [0u8; MAX_VARS];
            for ((x, a), b) in e.iter_mut().zip(m.0).zip(lm.0) {
                *x = a.checked_sub(b)?;
            }
            let qm = Monomial(e);
            let qc = c * &lc_inv;
            let neg = -&qc;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), dc * &neg);
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Canonical serialization: graded-lex sorted list of (exponents, "p/q+r/s*i").
    pub fn to_term_list(&self) -> Vec<TermRecord> {
        self.terms.iter().map(|(m, c)| TermRecord { exps: m.exps(self.nvars), coeff: c.to_string() }).collect()
    }

    /// Same polynomial with variables renamed/embedded: variable `i` becomes `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// Returns `denom^m · p(numerators / denom)` for homogeneous `p` of degree `m`,
/// which is the polynomial `p(numerators)`; `denom` only fixes the target ring.
pub fn homogeneous_subst(p: &MultiPoly, numerators: &[MultiPoly], denom: &MultiPoly) -> Result<MultiPoly> {
    if numerators.len() != p.nvars {
        return Err(Error::Dimension(format!("{} numerators for {} variables", numerators.len(), p.nvars)));
    }
    let nv = denom.nvars;
    if numerators.iter().any(|q| q.nvars != nv) {
        return Err(Error::Dimension("numerators and denominator live in different rings".into()));
    }
    if !p.is_homogeneous() {
        return Err(Error::Shape("polynomial is not homogeneous".into()));
    }
    let mut cache: Vec<Vec<MultiPoly>> = numerators.iter().map(|q| vec![MultiPoly::one(nv), q.clone()]).collect();
    let mut out = MultiPoly::zero(nv);
    for (m, c) in p.terms() {
        let mut prod = MultiPoly::constant(nv, c.clone());
        for (i, q) in numerators.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e == 0 {
                continue;
            }
            while cache[i].len() <= e {
                let next = cache[i].last().unwrap() * q;
                cache[i].push(next);
            }
            prod = &prod * &cache[i][e];
        }
        out.add_scaled(&prod, &GaussRat::one());
    }
    Ok(out)
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        let mut out = self.clone();
        out.add_scaled(o, &GaussRat::one());
        out
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        let mut out = self.clone();
        out.add_scaled(o, &GaussRat::from_int(-1));
        out
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    e => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
