//! Sparse multivariate polynomials in `x1, …, xn` over a [`Domain`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::parse::{parse_expr, Interpreter, ParseError};
use crate::ring::Domain;

/// Exponents `(d1, …, dn)` of a monomial.
///
/// Ordered graded-lexicographically: higher total degree is larger, ties are
/// broken by the first differing exponent (larger exponent of `x1` wins).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn combine(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `coefficient · x1^d1 ⋯ xn^dn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<D> {
    pub coefficient: D,
    pub exponents: ExponentVector,
}

impl<D: Domain> Term<D> {
    pub fn new(coefficient: D, exponents: impl Into<ExponentVector>) -> Self {
        Self {
            coefficient,
            exponents: exponents.into(),
        }
    }
}

/// A polynomial with a fixed number of variables. Only nonzero
/// coefficients are stored, so equal polynomials have identical maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<D> {
    arity: usize,
    terms: BTreeMap<ExponentVector, D>,
}

impl<D: Domain> Polynomial<D> {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, value: D) -> Self {
        let mut p = Self::zero(arity);
        p.accumulate(ExponentVector::zero(arity), value);
        p
    }

    /// The variable `x_{index+1}`.
    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: index + 1,
            });
        }
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Self::from_terms(arity, [Term::new(D::one(), exps)])
    }

    /// Sums the given terms; like terms are merged and zeros dropped.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = Term<D>>) -> Result<Self> {
        let mut p = Self::zero(arity);
        for term in terms {
            if term.exponents.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: term.exponents.arity(),
                });
            }
            p.accumulate(term.exponents, term.coefficient);
        }
        Ok(p)
    }

    fn accumulate(&mut self, exps: ExponentVector, value: D) {
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.add(&value);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, value);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> D {
        self.terms.get(exps).cloned().unwrap_or_else(D::zero)
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = Term<D>> + '_ {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| Term::new(c.clone(), e.clone()))
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.accumulate(ea.combine(eb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.arity, D::one());
        for _ in 0..exp {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &[D]) -> Result<D> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let powers = PowerTable::new(point, &self.max_exponents());
        Ok(self.evaluate_with(&powers))
    }

    pub(crate) fn evaluate_with(&self, powers: &PowerTable<D>) -> D {
        let mut acc = D::zero();
        for (exps, c) in &self.terms {
            let mut value = c.clone();
            for (k, &d) in exps.exponents().iter().enumerate() {
                if d > 0 {
                    value = value.mul(powers.get(k, d));
                }
            }
            acc = acc.add(&value);
        }
        acc
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&ExponentVector, &D)> {
        self.terms.iter()
    }

    /// Per-variable maximum exponent over all terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut max = vec![0; self.arity];
        for exps in self.terms.keys() {
            for (m, &d) in max.iter_mut().zip(exps.exponents()) {
                *m = (*m).max(d);
            }
        }
        max
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .next_back()
            .map(ExponentVector::total_degree)
            .ok_or(Error::ZeroPolynomial)
    }

    /// All terms of maximal total degree, graded-lexicographically
    /// descending.
    pub fn max_degree_terms(&self) -> Result<Vec<Term<D>>> {
        let degree = self.total_degree()?;
        Ok(self
            .terms()
            .take_while(|t| t.exponents.total_degree() == degree)
            .collect())
    }

    /// Picks the term the certificate is built around: the requested one if
    /// given (it must be present and of maximal total degree), otherwise the
    /// graded-lexicographically largest.
    pub fn select_leading_term(&self, requested: Option<&ExponentVector>) -> Result<Term<D>> {
        let degree = self.total_degree()?;
        let Some(requested) = requested else {
            let (e, c) = self.terms.last_key_value().expect("nonzero polynomial");
            return Ok(Term::new(c.clone(), e.clone()));
        };
        if requested.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: requested.arity(),
            });
        }
        match self.terms.get(requested) {
            Some(c) if requested.total_degree() == degree => {
                Ok(Term::new(c.clone(), requested.clone()))
            }
            _ => Err(Error::TermNotMaximal {
                requested: requested.to_string(),
                max_degree: degree,
            }),
        }
    }

    /// Parses the polynomial grammar with variables `x1..x{arity}`; other
    /// symbols resolve to the coefficient domain's generators.
    pub fn parse(text: &str, arity: usize) -> Result<Self, ParseError> {
        parse_expr(text)?.interpret(&PolynomialInterpreter::<D> {
            arity,
            marker: std::marker::PhantomData,
        })
    }

    /// Number of variables mentioned in `text` (the largest `xk` index), for
    /// callers that infer arity from input.
    pub fn parse_inferring_arity(text: &str) -> Result<Self, ParseError> {
        let expr = parse_expr(text)?;
        let arity = max_variable_index(&expr);
        expr.interpret(&PolynomialInterpreter::<D> {
            arity,
            marker: std::marker::PhantomData,
        })
    }
}

fn max_variable_index(expr: &crate::parse::Expr) -> usize {
    use crate::parse::Expr;
    match expr {
        Expr::Integer(_) => 0,
        Expr::Variable { name, .. } => variable_index(name).map_or(0, |k| k + 1),
        Expr::Neg(a) | Expr::Pow(a, _) => max_variable_index(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            max_variable_index(a).max(max_variable_index(b))
        }
    }
}

/// `x3` → `Some(2)`.
fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<usize>().ok().map(|k| k - 1)
}

struct PolynomialInterpreter<D> {
    arity: usize,
    marker: std::marker::PhantomData<D>,
}

impl<D: Domain> Interpreter for PolynomialInterpreter<D> {
    type Value = Polynomial<D>;

    fn constant(&self, value: &BigInt) -> Polynomial<D> {
        Polynomial::constant(self.arity, D::from_integer(value))
    }

    fn variable(&self, name: &str, position: usize) -> Result<Polynomial<D>, ParseError> {
        if let Some(k) = variable_index(name) {
            return Polynomial::variable(self.arity, k).map_err(|_| {
                ParseError::new(
                    position,
                    format!("variable `{name}` exceeds the {} available", self.arity),
                )
            });
        }
        D::generator(name)
            .map(|g| Polynomial::constant(self.arity, g))
            .ok_or_else(|| {
                ParseError::new(
                    position,
                    format!("unknown symbol `{name}` (domain {})", D::NAME),
                )
            })
    }

    fn add(&self, a: Polynomial<D>, b: Polynomial<D>) -> Polynomial<D> {
        a.add(&b).expect("same arity")
    }

    fn neg(&self, a: Polynomial<D>) -> Polynomial<D> {
        a.neg()
    }

    fn mul(&self, a: Polynomial<D>, b: Polynomial<D>) -> Polynomial<D> {
        a.mul(&b).expect("same arity")
    }

    fn pow(&self, a: Polynomial<D>, exp: u32) -> Polynomial<D> {
        a.pow(exp)
    }
}

/// `powers[k][d] = point[k]^d` for `d` up to a per-coordinate bound.
pub(crate) struct PowerTable<D> {
    powers: Vec<Vec<D>>,
}

impl<D: Domain> PowerTable<D> {
    pub(crate) fn new(point: &[D], max_exponents: &[u32]) -> Self {
        let powers = point
            .iter()
            .zip(max_exponents)
            .map(|(s, &max)| {
                let mut row = Vec::with_capacity(max as usize + 1);
                row.push(D::one());
                for d in 1..=max as usize {
                    let next = row[d - 1].mul(s);
                    row.push(next);
                }
                row
            })
            .collect();
        Self { powers }
    }

    pub(crate) fn get(&self, coordinate: usize, exp: u32) -> &D {
        &self.powers[coordinate][exp as usize]
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (k, &d) in exps.exponents().iter().enumerate() {
        if d == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", k + 1)?;
        if d > 1 {
            write!(f, "^{d}")?;
        }
    }
    Ok(())
}

impl<D: Domain> fmt::Display for Polynomial<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (index, (exps, c)) in self.terms.iter().rev().enumerate() {
            let constant = exps.total_degree() == 0;
            let (negative, body) = match c.signed_atom() {
                Some((negative, magnitude)) => (negative, Some(magnitude)),
                None => (false, None),
            };
            match (index, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match body {
                Some(magnitude) if constant => write!(f, "{magnitude}")?,
                Some(magnitude) if magnitude == "1" => write_monomial(f, exps)?,
                Some(magnitude) => {
                    write!(f, "{magnitude}*")?;
                    write_monomial(f, exps)?;
                }
                None if constant => write!(f, "({c})")?,
                None => {
                    write!(f, "({c})*")?;
                    write_monomial(f, exps)?;
                }
            }
        }
        Ok(())
    }
}
