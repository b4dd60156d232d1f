//! Dense univariate polynomials, used for squarefreeness tests on a chart.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Reads a one-variable [`Poly`].
    pub fn from_poly(f: &Poly) -> Result<Self> {
        if f.nvars() != 1 {
            return Err(Error::Arity { expected: 1, found: f.nvars() });
        }
        Ok(Self::dehomogenize(f, 0))
    }

    /// Collects coefficients by the exponent of `var`, setting every other
    /// variable to 1 (the affine chart of a binary form).
    pub fn dehomogenize(f: &Poly, var: usize) -> Self {
        let deg = f.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![f.field().zero(); deg + 1];
        for (m, c) in f.terms() {
            let e = m.exponents()[var] as usize;
            coeffs[e] = &coeffs[e] + c;
        }
        UniPoly::new(f.field(), coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] * &lead_inv;
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&f * c);
            }
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        Ok(UniPoly::new(self.field, r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(lead) => {
                let inv = lead.inv().expect("nonzero lead");
                UniPoly::new(a.field, a.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => a,
        }
    }

    /// True iff gcd(f, f′) is a constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }
}

/// Squarefreeness of a one-variable polynomial.
pub fn is_squarefree_univariate(f: &Poly) -> Result<bool> {
    UniPoly::from_poly(f)?.is_squarefree()
}
