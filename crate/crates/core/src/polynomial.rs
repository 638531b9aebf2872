//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`], so iteration follows
//! the graded-lexicographic order. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::rref;
use crate::multiindex::MultiIndex;

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn from_biguint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer power of a rational with the convention `0^0 = 1`.
pub(crate) fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Parses `int ('/' posint)?`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut parser = Parser::new(text, None);
    parser.skip_ws();
    let sign = parser.sign();
    let value = parser.rational()?;
    parser.skip_ws();
    parser.expect_end()?;
    Ok(if sign { -value } else { value })
}

/// A point of ℚ^d.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "point must have dimension >= 1");
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point::new(vec![Rational::zero(); dim])
    }

    /// The all-ones point `e`.
    pub fn ones(dim: usize) -> Self {
        Point::new(vec![Rational::one(); dim])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Componentwise product `a·x`.
    pub fn hadamard(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point(
            self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect(),
        ))
    }

    /// `x^α = x_1^{α_1} ⋯ x_d^{α_d}`.
    pub fn power(&self, a: &MultiIndex) -> Rational {
        self.0
            .iter()
            .zip(a.entries())
            .fold(Rational::one(), |acc, (x, &e)| acc * pow(x, e))
    }

    /// Parses a comma-separated list of rationals, optionally in parentheses
    /// or brackets: `(3, 1/2)`.
    pub fn parse(text: &str) -> Result<Point> {
        let mut parser = Parser::new(text, None);
        parser.skip_ws();
        let close = match parser.peek() {
            Some(b'(') => Some(b')'),
            Some(b'[') => Some(b']'),
            _ => None,
        };
        if close.is_some() {
            parser.pos += 1;
        }
        let mut coords = Vec::new();
        loop {
            parser.skip_ws();
            let negative = parser.sign();
            parser.skip_ws();
            let value = parser.rational()?;
            coords.push(if negative { -value } else { value });
            parser.skip_ws();
            if parser.peek() == Some(b',') {
                parser.pos += 1;
            } else {
                break;
            }
        }
        if let Some(close) = close {
            if parser.peek() != Some(close) {
                return Err(parser.error(format!("expected '{}'", close as char)));
            }
            parser.pos += 1;
        }
        parser.skip_ws();
        parser.expect_end()?;
        Ok(Point(coords))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An element of ℚ[x_1, …, x_d].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Polynomial::from_terms(dim, [(MultiIndex::zeros(dim), c)])
    }

    /// `q_α : x ↦ x^α`.
    pub fn monomial(a: &MultiIndex) -> Self {
        Polynomial::from_terms(a.dim(), [(a.clone(), Rational::one())])
    }

    /// Sums the given terms; repeated indices accumulate.
    ///
    /// # Panics
    /// If an index has the wrong dimension.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Polynomial::zero(dim);
        for (a, c) in terms {
            assert_eq!(a.dim(), dim, "term dimension mismatch");
            p.add_term(a, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, a: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
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

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, a: &MultiIndex) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    /// Per-variable degree vector, `None` for the zero polynomial.
    pub fn degree_vector(&self) -> Option<MultiIndex> {
        let mut keys = self.terms.keys();
        let first = keys.next()?.clone();
        Some(keys.fold(first, |acc, a| acc.join(a)))
    }

    /// Graded-lex largest term.
    pub fn leading(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                out.add_term(a.add(b), c * e);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every coefficient by `c` in place, then subtracts. Used by
    /// row reduction: `self -= c · other`.
    pub(crate) fn sub_scaled(&mut self, c: &Rational, other: &Polynomial) {
        for (a, v) in &other.terms {
            self.add_term(a.clone(), -(c * v));
        }
    }

    pub fn eval(&self, point: &Point) -> Result<Rational> {
        check_dim(self.dim, point.dim())?;
        Ok(self
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (a, c)| acc + c * point.power(a)))
    }

    /// Maps every coefficient through `f(index, coefficient)`.
    pub(crate) fn map_terms(
        &self,
        mut f: impl FnMut(&MultiIndex, &Rational) -> Rational,
    ) -> Polynomial {
        Polynomial::from_terms(
            self.dim,
            self.terms.iter().map(|(a, c)| (a.clone(), f(a, c))),
        )
    }

    /// The unique polynomial supported in `allowed_support` taking `values`
    /// at `points`.
    ///
    /// Fails with [`Error::SingularSystem`] when the evaluation matrix
    /// restricted to the support is column-rank deficient, and with
    /// [`Error::Inconsistent`] when no such polynomial matches the data.
    pub fn fit_from_values(
        points: &[Point],
        values: &[Rational],
        allowed_support: &[MultiIndex],
        dim: usize,
    ) -> Result<Polynomial> {
        if points.len() != values.len() {
            return Err(Error::Precondition(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        for p in points {
            check_dim(dim, p.dim())?;
        }
        for a in allowed_support {
            check_dim(dim, a.dim())?;
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Precondition(format!("point {p} is repeated")));
            }
        }
        let mut support = allowed_support.to_vec();
        support.sort();
        support.dedup();

        let cols = support.len();
        let mut rows: Vec<Vec<Rational>> = points
            .iter()
            .zip(values)
            .map(|(pt, v)| {
                let mut row: Vec<Rational> = support.iter().map(|a| pt.power(a)).collect();
                row.push(v.clone());
                row
            })
            .collect();
        let pivots = rref(&mut rows, cols);
        if pivots.len() < cols {
            return Err(Error::SingularSystem);
        }
        if rows[cols..].iter().any(|r| !r[cols].is_zero()) {
            return Err(Error::Inconsistent);
        }
        Ok(Polynomial::from_terms(
            dim,
            support
                .into_iter()
                .zip(rows)
                .map(|(a, r)| (a, r[cols].clone())),
        ))
    }

    /// Parses the polynomial grammar; `dim` fixes the ambient dimension,
    /// otherwise it is the largest variable index seen (at least 1).
    pub fn parse(text: &str, dim: Option<usize>) -> Result<Polynomial> {
        if dim == Some(0) {
            return Err(Error::Precondition("dimension must be >= 1".into()));
        }
        Parser::new(text, dim).polynomial()
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s, None)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("dimension mismatch in polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("dimension mismatch in polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("dimension mismatch in polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (i, &e) in a.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: graded-lex descending, unit coefficients suppressed
/// except on the constant term, signs folded into the separators.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if a.is_zero() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write_monomial(f, a)?;
            } else {
                write!(f, "{magnitude}*")?;
                write_monomial(f, a)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, dim: Option<usize>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            dim,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos, message)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
        }
    }

    /// Consumes an optional sign; returns true for '-'.
    fn sign(&mut self) -> bool {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn natural(&mut self) -> Result<u32> {
        let start = self.pos;
        let digits = self
            .digits()
            .ok_or_else(|| self.error("expected a natural number"))?;
        digits
            .parse()
            .map_err(|_| Error::parse(start, "natural number out of range"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let digits = self
            .digits()
            .ok_or_else(|| self.error("expected a number"))?;
        let numer: BigInt = digits.parse().expect("ascii digits");
        self.skip_ws();
        if self.peek() != Some(b'/') {
            return Ok(Rational::from_integer(numer));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let denom: BigInt = self
            .digits()
            .ok_or_else(|| self.error("expected a denominator"))?
            .parse()
            .expect("ascii digits");
        if denom.is_zero() {
            return Err(Error::parse(start, "zero denominator"));
        }
        Ok(Rational::new(numer, denom))
    }

    /// Returns the 1-based variable index.
    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        let alias = |index: usize, this: &Self| -> Result<usize> {
            match this.dim {
                Some(d) if d > 3 => Err(Error::parse(
                    start,
                    "aliases x, y, z are only accepted for dimension <= 3",
                )),
                _ => Ok(index),
            }
        };
        let index = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    let n = self.natural()? as usize;
                    if n == 0 {
                        return Err(Error::parse(start, "variables are numbered from x1"));
                    }
                    n
                } else {
                    alias(1, self)?
                }
            }
            Some(b'y') => {
                self.pos += 1;
                alias(2, self)?
            }
            Some(b'z') => {
                self.pos += 1;
                alias(3, self)?
            }
            _ => return Err(self.error("expected a variable")),
        };
        if let Some(d) = self.dim {
            if index > d {
                return Err(Error::parse(
                    start,
                    format!("variable x{index} exceeds dimension {d}"),
                ));
            }
        }
        Ok(index)
    }

    fn monomial(&mut self, exponents: &mut Vec<u32>) -> Result<()> {
        loop {
            self.skip_ws();
            let var = self.variable()?;
            self.skip_ws();
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                self.natural()?
            } else {
                1
            };
            if exponents.len() < var {
                exponents.resize(var, 0);
            }
            exponents[var - 1] = exponents[var - 1]
                .checked_add(exp)
                .ok_or_else(|| self.error("exponent overflow"))?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn term(&mut self) -> Result<(Rational, Vec<u32>)> {
        self.skip_ws();
        let mut exponents = Vec::new();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let coeff = self.rational()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.monomial(&mut exponents)?;
            }
            Ok((coeff, exponents))
        } else {
            self.monomial(&mut exponents)?;
            Ok((Rational::one(), exponents))
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut negative = self.sign();
        loop {
            let (c, exps) = self.term()?;
            terms.push((if negative { -c } else { c }, exps));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') | Some(b'-') => negative = self.sign(),
                Some(c) => return Err(self.error(format!("unexpected character '{}'", c as char))),
            }
        }
        let dim = self
            .dim
            .unwrap_or_else(|| terms.iter().map(|(_, e)| e.len()).max().unwrap_or(0).max(1));
        Ok(Polynomial::from_terms(
            dim,
            terms.into_iter().map(|(c, mut e)| {
                e.resize(dim, 0);
                (MultiIndex::new(e), c)
            }),
        ))
    }
}
