//! Hilbert functions of homogeneous ideals by graded linear algebra, and the
//! smoothness test built on them.
//!
//! `dim (S/J)_e` is `dim S_e` minus the rank of the matrix whose rows are
//! all products `x^γ·gᵢ` landing in degree `e`. No Gröbner bases are
//! involved.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::quadform::gram_from_poly;
use crate::scalar::{Field, Scalar};

/// Homogeneous generators over a common field and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSystem {
    field: Field,
    nvars: usize,
    generators: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDimensional {
    /// The Hilbert function vanishes in this degree (and every later one).
    Yes(u32),
    /// A common projective zero of the generators.
    No(Vec<Scalar>),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// Singular; carries a singular point when one was located.
    Singular(Option<Vec<Scalar>>),
    Inconclusive,
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        *self == Smoothness::Smooth
    }
}

/// `C(nvars + e − 1, e)`
pub fn graded_dimension(nvars: usize, e: u32) -> usize {
    if nvars == 0 {
        return usize::from(e == 0);
    }
    let (n, k) = (nvars as u128 - 1 + e as u128, e as u128);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

impl GradedSystem {
    pub fn new(field: Field, nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        for g in &generators {
            if g.field() != field {
                return Err(Error::MixedFields);
            }
            if g.nvars() != nvars {
                return Err(Error::Arity { expected: nvars, found: g.nvars() });
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(GradedSystem { field, nvars, generators })
    }

    /// Builds from a nonempty list, taking field and arity from the first generator.
    pub fn from_generators(generators: Vec<Poly>) -> Result<Self> {
        let first = generators.first().ok_or(Error::Precondition("no generators".into()))?;
        let (field, nvars) = (first.field(), first.nvars());
        GradedSystem::new(field, nvars, generators)
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn nonzero(&self) -> impl Iterator<Item = &Poly> {
        self.generators.iter().filter(|g| !g.is_zero())
    }

    /// The matrix of all degree-`e` multiples of the generators on the
    /// monomial basis of `S_e`.
    pub fn multiplication_matrix(&self, e: u32) -> Matrix {
        let basis = Monomial::all_of_degree(self.nvars, e);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in self.nonzero() {
            let dg = g.degree().unwrap();
            if dg > e {
                continue;
            }
            for shift in Monomial::all_of_degree(self.nvars, e - dg) {
                let mut row = alloc::vec![self.field.zero(); basis.len()];
                for (m, c) in g.terms() {
                    row[index[&m.mul(&shift)]] = c.clone();
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(self.field, 0, basis.len());
        }
        Matrix::from_rows(self.field, rows).expect("rows share the basis length")
    }

    /// `dim (S/J)_e`.
    pub fn hilbert_value(&self, e: u32) -> usize {
        let dim = graded_dimension(self.nvars, e);
        let m = self.multiplication_matrix(e);
        if m.rows() == 0 {
            return dim;
        }
        dim - m.rank()
    }

    /// Decides whether the ideal is primary to the irrelevant ideal by
    /// looking for a degree `e ≤ e_max` with vanishing Hilbert function;
    /// failing that, searches for a common projective zero.
    pub fn is_zero_dimensional(&self, e_max: u32) -> ZeroDimensional {
        let start = self.nonzero().map(|g| g.degree().unwrap()).min().unwrap_or(0);
        for e in start..=e_max {
            if self.hilbert_value(e) == 0 {
                return ZeroDimensional::Yes(e);
            }
        }
        match find_common_zero(&self.generators, self.field, self.nvars) {
            Some(pt) => ZeroDimensional::No(pt),
            None => ZeroDimensional::Inconclusive,
        }
    }
}

/// Vanishing degree of a zero-dimensional ideal generated by forms of
/// degree `d`: it contains a complete intersection of `nvars` such forms,
/// whose quotient vanishes from degree `nvars·(d − 1) + 1` on.
pub fn vanishing_bound(nvars: usize, d: u32) -> u32 {
    (nvars as u32 * d.saturating_sub(1)) + 1
}

const WITNESS_BUDGET: usize = 20_000;

/// Looks for a common projective zero among a bounded set of points: every
/// point of small finite fields, otherwise tuples of small elements.
pub fn find_common_zero(gens: &[Poly], field: Field, nvars: usize) -> Option<Vec<Scalar>> {
    if nvars == 0 {
        return None;
    }
    let values: Vec<Scalar> = match field.order() {
        Some(q) if q.checked_pow(nvars as u32 - 1).is_some_and(|t| t * nvars as u128 <= WITNESS_BUDGET as u128) => {
            all_elements(field)
        }
        _ => {
            let mut v: Vec<Scalar> = (0..5).map(|k| field.small_element(k)).collect();
            if let Some(g) = field.generator() {
                v.push(g.clone());
                v.push(-g);
            }
            v.dedup();
            v
        }
    };
    let mut budget = WITNESS_BUDGET;
    // projective normalization: the first nonzero coordinate is 1
    for lead in 0..nvars {
        let free = nvars - lead - 1;
        let mut idx = alloc::vec![0usize; free];
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let mut pt = alloc::vec![field.zero(); nvars];
            pt[lead] = field.one();
            for (k, &i) in idx.iter().enumerate() {
                pt[lead + 1 + k] = values[i].clone();
            }
            if gens.iter().all(|g| g.evaluate(&pt).is_ok_and(|v| v.is_zero())) {
                return Some(pt);
            }
            // odometer increment
            let mut k = 0;
            while k < free {
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    None
}

fn all_elements(field: Field) -> Vec<Scalar> {
    match field {
        Field::Prime(p) => (0..p as i64).map(|a| field.from_i64(a)).collect(),
        Field::PrimeQuadratic { p, .. } => {
            let w = field.generator().unwrap();
            let mut out = Vec::new();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    out.push(&field.from_i64(a) + &(&w * &field.from_i64(b)));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Jacobian-ideal vanishing degree `(n+1)(D−2)+1` for a smooth hypersurface
/// of degree `D` in `nvars = n+1` variables.
pub fn smoothness_bound(nvars: usize, degree: u32) -> u32 {
    (nvars as u32 * degree.saturating_sub(2)) + 1
}

/// Smoothness of the projective hypersurface `F = 0` over the algebraic
/// closure. Quadrics use the Gram rank; higher degrees use the Hilbert
/// function of the Jacobian ideal, which is a decision procedure as soon as
/// `e_max` reaches [`smoothness_bound`].
pub fn is_smooth_hypersurface(f: &Poly, e_max: Option<u32>) -> Result<Smoothness> {
    let degree = f.homogeneous_degree()?;
    let field = f.field();
    let p = field.characteristic();
    if p != 0 && degree as u64 % p == 0 {
        return Err(Error::CharacteristicDividesDegree { characteristic: p, degree });
    }
    match degree {
        0 => Err(Error::Degree(format!("{f} is constant"))),
        1 => Ok(Smoothness::Smooth),
        2 => {
            let rec = gram_from_poly(f)?;
            Ok(if rec.is_nonsingular() {
                Smoothness::Smooth
            } else {
                Smoothness::Singular(rec.singular_point())
            })
        }
        _ => {
            let bound = smoothness_bound(f.nvars(), degree);
            let e_max = e_max.unwrap_or(bound);
            let sys = GradedSystem::new(field, f.nvars(), f.gradient())?;
            Ok(match sys.is_zero_dimensional(e_max) {
                ZeroDimensional::Yes(_) => Smoothness::Smooth,
                ZeroDimensional::No(pt) => Smoothness::Singular(Some(pt)),
                ZeroDimensional::Inconclusive if e_max >= bound => Smoothness::Singular(None),
                ZeroDimensional::Inconclusive => Smoothness::Inconclusive,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sys(field: Field, n: usize, gens: &[&str]) -> GradedSystem {
        GradedSystem::new(field, n, gens.iter().map(|s| parse_poly(field, Some(n), s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let q = Field::Rationals;
        assert_eq!(sys(q, 3, &["x", "y", "z"]).hilbert_value(2), 0);
        assert_eq!(sys(q, 3, &["x^2", "y^2", "z^2"]).hilbert_value(3), 1);
        assert_eq!(sys(q, 3, &["x^2", "y^2", "z^2"]).hilbert_value(1), 3);
        assert_eq!(GradedSystem::new(q, 3, Vec::new()).unwrap().hilbert_value(2), 6);

        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let gens = (0..4).map(|_| Poly::random_form(f, 3, 2, &mut rng)).collect();
        assert_eq!(GradedSystem::new(f, 3, gens).unwrap().hilbert_value(4), 0);
    }

    #[test]
    fn zero_dimensional_examples() {
        let q = Field::Rationals;
        assert_eq!(sys(q, 3, &["x^2", "y^2", "z^2"]).is_zero_dimensional(6), ZeroDimensional::Yes(4));
        assert_eq!(
            sys(q, 3, &["x", "y"]).is_zero_dimensional(6),
            ZeroDimensional::No(alloc::vec![q.zero(), q.zero(), q.one()])
        );
        let f13 = Field::prime(13).unwrap();
        assert_eq!(
            sys(f13, 3, &["x^2+5*y^2", "x^2-5*y^2", "z^2", "z^2"]).is_zero_dimensional(8),
            ZeroDimensional::Yes(4)
        );
        // common zeros exist over ℚ̄ but none with small rational coordinates
        assert_eq!(sys(q, 3, &["x^2+y^2+z^2", "x^2+2*y^2+3*z^2"]).is_zero_dimensional(5), ZeroDimensional::Inconclusive);
    }

    #[test]
    fn smoothness_examples() {
        let q = Field::Rationals;
        let p = |s: &str| parse_poly(q, Some(3), s).unwrap();
        assert_eq!(is_smooth_hypersurface(&p("x^4+y^4+z^4"), None).unwrap(), Smoothness::Smooth);
        assert!(matches!(is_smooth_hypersurface(&p("x^2+y^2"), None).unwrap(), Smoothness::Singular(Some(_))));
        let prod = &p("x^2+y^2+z^2") * &p("x^2+2*y^2+3*z^2");
        assert!(matches!(is_smooth_hypersurface(&prod, None).unwrap(), Smoothness::Singular(_)));
        assert_eq!(is_smooth_hypersurface(&p("x^3"), None).unwrap(), Smoothness::Singular(Some(alloc::vec![q.zero(), q.one(), q.zero()])));
        assert_eq!(is_smooth_hypersurface(&p("x+y"), None).unwrap(), Smoothness::Smooth);
        // a too-small override cannot certify anything
        assert_eq!(is_smooth_hypersurface(&prod, Some(3)).unwrap(), Smoothness::Inconclusive);
        assert!(is_smooth_hypersurface(&p("x-x"), None).is_err());
        assert!(is_smooth_hypersurface(&p("x^2+y"), None).is_err());
        let f5 = Field::prime(5).unwrap();
        let quintic = parse_poly(f5, Some(3), "x^5+y^5+z^5").unwrap();
        assert_eq!(
            is_smooth_hypersurface(&quintic, None),
            Err(Error::CharacteristicDividesDegree { characteristic: 5, degree: 5 })
        );
    }

    /// Counts standard monomials of a monomial ideal directly.
    fn brute_force(nvars: usize, gens: &[Monomial], e: u32) -> usize {
        Monomial::all_of_degree(nvars, e)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count()
    }

    #[test]
    fn monomial_ideals_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let q = Field::Rationals;
        for _ in 0..60 {
            let n = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=4);
            let gens: Vec<Monomial> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    let all = Monomial::all_of_degree(n, d);
                    all[rng.gen_range(0..all.len())].clone()
                })
                .collect();
            let s = GradedSystem::new(q, n, gens.iter().map(|m| Poly::term(q, m.clone(), q.one())).collect()).unwrap();
            for e in 0..=8 {
                assert_eq!(s.hilbert_value(e), brute_force(n, &gens, e));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(graded_dimension(3, 4), 15);
        assert_eq!(graded_dimension(6, 2), 21);
        assert_eq!(graded_dimension(1, 9), 1);
        assert_eq!(graded_dimension(0, 0), 1);
    }
}
