//! Determinants of polynomial matrices, Sylvester resultants and the
//! transversality certificate for two plane curves.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::univariate::UniPoly;

/// Determinant of a square matrix of polynomials by fraction-free
/// elimination with exact polynomial division.
pub fn poly_determinant(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Shape);
    }
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Err(Error::Shape);
    };
    let (field, nvars) = (first.field(), first.nvars());
    let mut prev = Poly::one(field, nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Poly::zero(field, nvars));
        };
        if p != k {
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Coefficients of `f` as a polynomial in `var`, from the constant term up;
/// the coefficients keep the ambient arity with `var` absent.
fn coefficients_in(f: &Poly, var: usize) -> Vec<Poly> {
    let deg = f.degree_in(var).unwrap_or(0) as usize;
    let mut out = alloc::vec![Poly::zero(f.field(), f.nvars()); deg + 1];
    for (m, c) in f.terms() {
        let mut e = m.exponents().to_vec();
        let k = e[var] as usize;
        e[var] = 0;
        out[k] = &out[k] + &Poly::term(f.field(), Monomial::new(e), c.clone());
    }
    out
}

/// Determinant of the Sylvester matrix of `f` and `g` with respect to `var`.
pub fn sylvester_resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.nvars() != g.nvars() {
        return Err(Error::Arity { expected: f.nvars(), found: g.nvars() });
    }
    if f.field() != g.field() {
        return Err(Error::MixedFields);
    }
    if var >= f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), found: var + 1 });
    }
    let a = coefficients_in(f, var);
    let b = coefficients_in(g, var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    match (m, n) {
        (0, 0) => {
            return Err(Error::Degree(String::from("one input needs positive degree in the variable")))
        }
        (_, 0) => return Ok(b[0].pow(m as u32)),
        (0, _) => return Ok(a[0].pow(n as u32)),
        _ => {}
    }
    let size = m + n;
    let zero = Poly::zero(f.field(), f.nvars());
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    poly_determinant(rows)
}

/// Evidence that two plane curves of degree d meet in d² distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalCertificate {
    /// Linear change of coordinates applied before eliminating `x`.
    pub change: Matrix,
    /// Res_x of the transformed pair: a squarefree binary form of degree d².
    pub resultant: Poly,
    pub points: u32,
    pub trial: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transversality {
    Transversal(TransversalCertificate),
    Failed(String),
}

impl Transversality {
    pub fn is_transversal(&self) -> bool {
        matches!(self, Transversality::Transversal(_))
    }
}

/// Random invertible matrix over the field of `field`.
pub fn random_invertible<R: Rng + ?Sized>(field: crate::Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| field.random(rng)).collect()).collect();
        let m = Matrix::from_rows(field, rows).expect("square");
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Applies `x ↦ change·x` to a polynomial.
pub fn change_coordinates(f: &Poly, change: &Matrix) -> Result<Poly> {
    let images: Vec<Poly> = (0..change.rows())
        .map(|i| Poly::linear(f.field(), change.row(i)))
        .collect();
    f.compose(&images)
}

/// Transversality of two ternary forms of equal degree d: in random
/// coordinates the resultant in `x` must be a nonzero binary form of full
/// degree d² that stays squarefree on the chart `z = 1`.
pub fn certify_transversal<R: Rng + ?Sized>(
    f: &Poly,
    g: &Poly,
    trials: u32,
    rng: &mut R,
) -> Result<Transversality> {
    if f.nvars() != 3 || g.nvars() != 3 {
        return Err(Error::Arity { expected: 3, found: f.nvars().max(g.nvars()) });
    }
    let d = f.homogeneous_degree()?;
    if g.homogeneous_degree()? != d {
        return Err(Error::Degree(String::from("curves must have equal degree")));
    }
    if d == 0 {
        return Err(Error::Degree(String::from("curves must have positive degree")));
    }
    let field = f.field();
    let corner = [field.one(), field.zero(), field.zero()];
    let mut last_reason = String::from("no trial attempted");
    for trial in 0..trials {
        let change = random_invertible(field, 3, rng);
        let f2 = change_coordinates(f, &change)?;
        let g2 = change_coordinates(g, &change)?;
        if f2.evaluate(&corner)?.is_zero() || g2.evaluate(&corner)?.is_zero() {
            last_reason = String::from("degenerate coordinates");
            continue;
        }
        let res = sylvester_resultant(&f2, &g2, 0)?;
        if res.is_zero() {
            return Ok(Transversality::Failed(String::from("shared component")));
        }
        let chart = UniPoly::dehomogenize(&res, 1);
        if chart.degree() != Some((d * d) as usize) {
            last_reason = String::from("intersection point on the line at infinity");
            continue;
        }
        if chart.is_squarefree()? {
            return Ok(Transversality::Transversal(TransversalCertificate {
                change,
                resultant: res,
                points: d * d,
                trial,
            }));
        }
        last_reason = String::from("resultant is not squarefree");
    }
    Ok(Transversality::Failed(last_reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::text::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(field: Field, s: &str) -> Poly {
        parse_poly(field, Some(3), s).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let q = Field::Rationals;
        assert_eq!(sylvester_resultant(&p(q, "x^2"), &p(q, "y^2"), 0).unwrap(), p(q, "y^4"));
        let r = sylvester_resultant(&p(q, "x-y"), &p(q, "x+y"), 0).unwrap();
        assert_eq!(r, p(q, "2*y"));
        let r = sylvester_resultant(&p(q, "x^2-y*z"), &p(q, "y^2-x*z"), 0).unwrap();
        assert_eq!(r, p(q, "y^4-y*z^3"));
        assert!(sylvester_resultant(&p(q, "x-x"), &p(q, "y"), 0).is_err());
        assert_eq!(sylvester_resultant(&p(q, "y"), &p(q, "x"), 0).unwrap(), p(q, "y"));
        assert!(sylvester_resultant(&p(q, "y"), &p(q, "z"), 0).is_err());
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_roots() {
        // exhaustive check over 𝔽₇: specialize y, z and compare with root search in x
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let mut f = Poly::random_form(f7, 3, 2, &mut rng);
            let mut g = Poly::random_form(f7, 3, 2, &mut rng);
            // force monic leading coefficients in x
            f = &f + &p(f7, "x^2").scale(&(&f7.one() - &f.coeff(&Monomial::new(alloc::vec![2, 0, 0]))));
            g = &g + &p(f7, "x^2").scale(&(&f7.one() - &g.coeff(&Monomial::new(alloc::vec![2, 0, 0]))));
            let res = sylvester_resultant(&f, &g, 0).unwrap();
            for y in 0..7 {
                for z in 0..7 {
                    let (ys, zs) = (f7.from_i64(y), f7.from_i64(z));
                    let r = res.evaluate(&[f7.zero(), ys.clone(), zs.clone()]).unwrap();
                    let fu = UniPoly::dehomogenize(&specialize(&f, &ys, &zs), 0);
                    let gu = UniPoly::dehomogenize(&specialize(&g, &ys, &zs), 0);
                    let common = fu.gcd(&gu).degree().unwrap_or(0) > 0;
                    assert_eq!(r.is_zero(), common);
                }
            }
        }
    }

    fn specialize(f: &Poly, y: &crate::Scalar, z: &crate::Scalar) -> Poly {
        let field = f.field();
        let images = [
            Poly::var(field, 1, 0),
            Poly::constant(field, 1, y.clone()),
            Poly::constant(field, 1, z.clone()),
        ];
        f.compose(&images).unwrap()
    }

    #[test]
    fn transversality_examples() {
        let q = Field::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = certify_transversal(&p(q, "x"), &p(q, "y"), 8, &mut rng).unwrap();
        assert!(matches!(t, Transversality::Transversal(ref c) if c.points == 1));
        let t = certify_transversal(&p(q, "x^2"), &p(q, "y^2"), 8, &mut rng).unwrap();
        assert!(!t.is_transversal());
        let t = certify_transversal(&p(q, "x^2-y*z"), &p(q, "y^2-x*z"), 8, &mut rng).unwrap();
        assert!(matches!(t, Transversality::Transversal(ref c) if c.points == 4));
        let f = p(q, "x^2+y^2-z^2");
        let t = certify_transversal(&f, &f, 8, &mut rng).unwrap();
        assert_eq!(t, Transversality::Failed(String::from("shared component")));
        assert!(certify_transversal(&p(q, "x"), &p(q, "y^2"), 8, &mut rng).is_err());
    }

    #[test]
    fn determinant_of_polynomial_matrix() {
        let q = Field::Rationals;
        let m = alloc::vec![
            alloc::vec![p(q, "x"), p(q, "y")],
            alloc::vec![p(q, "z"), p(q, "x")],
        ];
        assert_eq!(poly_determinant(m).unwrap(), p(q, "x^2-y*z"));
        // needs a row swap
        let m = alloc::vec![
            alloc::vec![p(q, "x-x"), p(q, "y")],
            alloc::vec![p(q, "z"), p(q, "x")],
        ];
        assert_eq!(poly_determinant(m).unwrap(), p(q, "-y*z"));
    }
}
