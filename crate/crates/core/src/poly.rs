//! Sparse multivariate polynomials with exact coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Names used for up to five variables.
pub const ALIASES: [&str; 5] = ["x", "y", "z", "t", "w"];

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then the exponent of `x0`, then `x1`, …).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All monomials of total degree `degree` in `nvars` variables, in
    /// descending graded-lex order (x² > xy > xz > y² > …).
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, degree, &mut vec![0; nvars], &mut out);
        out
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Default variable names: the aliases for up to five variables, `x0, x1, …` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= ALIASES.len() {
        ALIASES[..nvars].iter().map(|s| String::from(*s)).collect()
    } else {
        (0..nvars).map(|i| alloc::format!("x{i}")).collect()
    }
}

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Poly::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Poly::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Poly::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: Field, mono: Monomial, coeff: Scalar) -> Self {
        let mut p = Poly::zero(field, mono.nvars());
        p.add_term(mono, coeff);
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(field: Field, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// The linear form Σ cᵢ·xᵢ.
    pub fn linear(field: Field, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            field,
            n,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.degree().unwrap())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.nvars != other.nvars {
            return Err(Error::Arity { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, c * &self.field.from_i64(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: point.len() });
        }
        if point.iter().any(|s| s.field() != self.field) {
            return Err(Error::MixedFields);
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Replaces variable `k` by the monomial `images[k]`; all images must
    /// share one degree, so homogeneous inputs stay homogeneous.
    pub fn substitute_monomials(&self, images: &[Monomial]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.nvars();
        if images.iter().any(|m| m.nvars() != target) {
            return Err(Error::Arity { expected: target, found: 0 });
        }
        let d = first.degree();
        if images.iter().any(|m| m.degree() != d) {
            return Err(Error::Degree(String::from("image monomials have unequal degrees")));
        }
        Ok(self.substitute_monomials_unchecked(images))
    }

    /// Monomial substitution without the equal-degree requirement.
    pub fn substitute_monomials_unchecked(&self, images: &[Monomial]) -> Poly {
        let target = images.first().map_or(0, Monomial::nvars);
        let mut out = Poly::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target];
            for (k, &pow) in m.0.iter().enumerate() {
                for (slot, &x) in e.iter_mut().zip(&images[k].0) {
                    *slot += pow * x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Replaces variable `k` by the polynomial `images[k]`.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (field, target) = (first.field, first.nvars);
        for im in images {
            if im.field != self.field || im.field != field {
                return Err(Error::MixedFields);
            }
            if im.nvars != target {
                return Err(Error::Arity { expected: target, found: im.nvars });
            }
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(field, target), p.clone()]).collect();
        let mut out = Poly::zero(field, target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(field, target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same polynomial with `extra` new variables appended after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let nvars = self.nvars + extra;
        Poly {
            field: self.field,
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Re-expresses the coefficients in a larger field.
    pub fn embed(&self, field: Field) -> Result<Poly> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.embed(field)?);
        }
        Ok(out)
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coefficients(&self) -> Result<Vec<Scalar>> {
        if self.degree().unwrap_or(1) != 1 || !self.is_homogeneous() {
            return Err(Error::Degree(String::from("expected a linear form")));
        }
        Ok((0..self.nvars).map(|i| self.coeff(&Monomial::var(self.nvars, i))).collect())
    }

    /// Coefficients on the given monomial basis; fails if a term falls outside it.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Result<Vec<Scalar>> {
        let mut out = vec![self.field.zero(); basis.len()];
        let mut seen = 0;
        for (i, m) in basis.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                out[i] = c.clone();
                seen += 1;
            }
        }
        if seen != self.terms.len() {
            return Err(Error::Degree(String::from("term outside the monomial basis")));
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            let t = Poly::term(self.field, qm, qc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// A homogeneous form of the given degree with random coefficients.
    pub fn random_form<R: Rng + ?Sized>(field: Field, nvars: usize, degree: u32, rng: &mut R) -> Poly {
        Poly::from_terms(
            field,
            nvars,
            Monomial::all_of_degree(nvars, degree).into_iter().map(|m| (m, field.random(rng))),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms().enumerate() {
            let is_const = m.degree() == 0;
            let (neg, mag) = if c.is_negative_rational() { (true, -c) } else { (false, c.clone()) };
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            if is_const {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.is_compound() {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            m.write_with(f, self.names)?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
