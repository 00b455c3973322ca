use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::field;
use super::monomial::{monomials_of_degree, Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// A polynomial in `x_0, …, x_{nvars-1}` over `F_p`.
///
/// Terms are kept in strictly descending monomial order with nonzero
/// coefficients in `1..p`, so the leading term comes first and equal
/// polynomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Poly {
    pub fn zero(p: u32, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            p,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(p: u32, nvars: usize, c: i64) -> Self {
        Self::term(p, nvars, Monomial::one(), c)
    }

    pub fn one(p: u32, nvars: usize) -> Self {
        Self::constant(p, nvars, 1)
    }

    pub fn var(p: u32, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range");
        Self::term(p, nvars, Monomial::var(i), 1)
    }

    pub fn term(p: u32, nvars: usize, m: Monomial, c: i64) -> Self {
        Self::from_terms(p, nvars, vec![(m, c)])
    }

    /// Collects like terms, reduces coefficients mod `p` and drops zeros.
    pub fn from_terms(p: u32, nvars: usize, terms: Vec<(Monomial, i64)>) -> Self {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.exps()[nvars..].iter().all(|&e| e == 0));
            let slot = acc.entry(m).or_insert(0);
            *slot = field::add(*slot, field::reduce(c, p), p);
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(m, _)| Reverse(m));
        let mut out = Poly::zero(p, nvars);
        out.terms = terms;
        out
    }

    /// A uniformly random form of degree `d`: each monomial of degree `d`
    /// gets an independent uniform coefficient in `F_p`, zero included.
    pub fn random_form<R: Rng + ?Sized>(p: u32, nvars: usize, d: u32, rng: &mut R) -> Self {
        let terms = monomials_of_degree(nvars, d)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..p) as i64))
            .collect();
        Self::from_terms(p, nvars, terms)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        matches!(self.constant_value(), Some(c) if c != 0)
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(&(m, _)) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(t, _)| t.degree() == m.degree()) {
            Homogeneity::Homogeneous(m.degree())
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.p != other.p || self.nvars != other.nvars {
            return Err(Error::ModulusMismatch(format!(
                "F_{}[{} vars] vs F_{}[{} vars]",
                self.p, self.nvars, other.p, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        Ok(self.add_scaled(other, Monomial::one(), 1))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        Ok(self.add_scaled(other, Monomial::one(), self.p - 1))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for &(m, c) in &self.terms {
            for &(n, d) in &other.terms {
                let slot = acc.entry(m.mul(&n)).or_insert(0);
                *slot = field::add(*slot, field::mul(c, d, self.p), self.p);
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(m, _)| Reverse(m));
        Ok(Poly {
            p: self.p,
            nvars: self.nvars,
            terms,
        })
    }

    /// `self + c·m·other`, by merging the two sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Poly, m: Monomial, c: u32) -> Poly {
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut rhs = other
            .terms
            .iter()
            .map(|&(t, d)| (t.mul(&m), field::mul(c, d, p)))
            .filter(|&(_, d)| d != 0)
            .peekable();
        let mut lhs = self.terms.iter().copied().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some(&(x, cx)), Some(&(y, cy))) => {
                    if x > y {
                        out.push((x, cx));
                        lhs.next();
                    } else if y > x {
                        out.push((y, cy));
                        rhs.next();
                    } else {
                        let s = field::add(cx, cy, p);
                        if s != 0 {
                            out.push((x, s));
                        }
                        lhs.next();
                        rhs.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(lhs);
                    break;
                }
                (None, Some(_)) => {
                    out.extend(rhs);
                    break;
                }
                (None, None) => break,
            }
        }
        Poly {
            p,
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn scale(&self, c: i64) -> Poly {
        let c = field::reduce(c, self.p);
        Poly::zero(self.p, self.nvars).add_scaled(self, Monomial::one(), c)
    }

    pub fn mul_term(&self, m: Monomial, c: u32) -> Poly {
        Poly::zero(self.p, self.nvars).add_scaled(self, m, c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.p, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.mul_term(Monomial::one(), field::inv(c, self.p)),
        }
    }

    /// Substitutes residues for the variables.
    pub fn eval(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.nvars, "point has the wrong dimension");
        let p = self.p;
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate() {
                v = field::mul(v, field::pow(x % p, m.exp(i) as u64, p), p);
            }
            acc = field::add(acc, v, p);
        }
        acc
    }

    /// Parses a sum of terms such as `3*x0^2*x1 - x2 + 5`.
    pub fn parse(s: &str, p: u32, nvars: usize) -> Result<Poly> {
        let bad = |why: String| Error::Parse(format!("polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !terms.is_empty() {
                return Err(bad("expected + or - between terms".into()));
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut coeff = sign;
            let mut exps = [0u16; MAX_VARS];
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable {factor:?}")))?;
                    if idx >= nvars {
                        return Err(bad(format!("x{idx} out of range for {nvars} variables")));
                    }
                    let e: u16 = e.parse().map_err(|_| bad(format!("bad exponent in {factor:?}")))?;
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| bad("exponent overflow".into()))?;
                } else {
                    let c: i64 = factor.parse().map_err(|_| bad(format!("bad factor {factor:?}")))?;
                    coeff = field::reduce(coeff, p) as i64 * field::reduce(c, p) as i64;
                    coeff = field::reduce(coeff, p) as i64;
                }
            }
            terms.push((Monomial::new(&exps[..nvars]), coeff));
        }
        Ok(Poly::from_terms(p, nvars, terms))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (c, m.is_one()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{m}")?,
                _ => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Panics if the operands live in different rings; use `checked_add` to
/// get an error instead.
impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(-1)
    }
}
