//! Quadratic forms through their symmetric Gram matrices.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::resultant::poly_determinant;
use crate::scalar::{Field, Scalar, Sqrt};

/// A quadric with its Gram matrix: `poly(x) = xᵀ·gram·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFormRecord {
    pub poly: Poly,
    pub gram: Matrix,
    pub rank: usize,
}

impl QuadraticFormRecord {
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rank == self.nvars()
    }

    /// A nonzero vector in the kernel of the Gram matrix, i.e. a singular
    /// point of the quadric.
    pub fn singular_point(&self) -> Option<Vec<Scalar>> {
        self.gram.null_vector()
    }
}

/// Symmetric Gram matrix of a quadratic form (zero allowed).
pub fn gram_from_poly(q: &Poly) -> Result<QuadraticFormRecord> {
    let field = q.field();
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2);
    }
    if q.terms().any(|(m, _)| m.degree() != 2) {
        return Err(Error::Degree(format!("{q} is not a quadratic form")));
    }
    let n = q.nvars();
    let half = field.from_i64(2).inv()?;
    let mut gram = Matrix::zeros(field, n, n);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = m
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| core::iter::repeat_n(i, e as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            gram.set(i, i, c.clone());
        } else {
            let h = c * &half;
            gram.set(i, j, h.clone());
            gram.set(j, i, h);
        }
    }
    let rank = gram.rank();
    Ok(QuadraticFormRecord { poly: q.clone(), gram, rank })
}

/// The quadric `xᵀ·gram·x` of a symmetric matrix.
pub fn poly_from_gram(gram: &Matrix) -> Result<Poly> {
    if !gram.is_symmetric() {
        return Err(Error::Shape);
    }
    let field = gram.field();
    let n = gram.rows();
    let two = field.from_i64(2);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = alloc::vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let c = if i == j { gram.get(i, i).clone() } else { gram.get(i, j) * &two };
            terms.push((Monomial::new(e), c));
        }
    }
    Ok(Poly::from_terms(field, n, terms))
}

/// `Pᵀ·gram·P = diag(d)` and `Q = Σ dᵢ·λᵢ²`, with `λᵢ` the rows of `P⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub p: Matrix,
    pub d: Vec<Scalar>,
    pub lambdas: Vec<Poly>,
}

/// Symmetric congruence elimination. A nonzero diagonal entry is pivoted on
/// directly (completing the square); when the remaining diagonal is zero an
/// off-diagonal entry `b = M[i][j]` splits off `2b·U·V = 2b((U+V)/2)² − 2b((U−V)/2)²`.
pub fn diagonalize(qf: &QuadraticFormRecord) -> Result<Diagonalization> {
    let field = qf.field();
    let n = qf.nvars();
    let mut m = qf.gram.clone();
    let mut used = alloc::vec![false; n];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut d: Vec<Scalar> = Vec::new();
    let two = field.from_i64(2);
    let half = two.inv()?;

    loop {
        if let Some(i) = (0..n).find(|&i| !m.get(i, i).is_zero()) {
            let a = m.get(i, i).clone();
            let a_inv = a.inv()?;
            let row: Vec<Scalar> = m.row(i).to_vec();
            let mut next = m.clone();
            for r in 0..n {
                for c in 0..n {
                    let v = m.get(r, c) - &(&(&row[r] * &row[c]) * &a_inv);
                    next.set(r, c, v);
                }
            }
            m = next;
            rows.push(row.iter().map(|x| x * &a_inv).collect());
            d.push(a);
            used[i] = true;
            continue;
        }
        let Some((i, j)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !m.get(i, j).is_zero())
        else {
            break;
        };
        let b = m.get(i, j).clone();
        let b_inv = b.inv()?;
        let ri: Vec<Scalar> = m.row(i).to_vec();
        let rj: Vec<Scalar> = m.row(j).to_vec();
        let mut next = m.clone();
        for r in 0..n {
            for c in 0..n {
                let cross = &(&ri[r] * &rj[c]) + &(&rj[r] * &ri[c]);
                let v = m.get(r, c) - &(&cross * &b_inv);
                next.set(r, c, v);
            }
        }
        m = next;
        let u: Vec<Scalar> = rj.iter().map(|x| x * &b_inv).collect();
        let v: Vec<Scalar> = ri.iter().map(|x| x * &b_inv).collect();
        rows.push(u.iter().zip(&v).map(|(a, b)| &(a + b) * &half).collect());
        rows.push(u.iter().zip(&v).map(|(a, b)| &(a - b) * &half).collect());
        d.push(&two * &b);
        d.push(-(&two * &b));
        used[i] = true;
        used[j] = true;
    }

    for k in (0..n).filter(|&k| !used[k]) {
        let mut e = alloc::vec![field.zero(); n];
        e[k] = field.one();
        rows.push(e);
        d.push(field.zero());
    }
    let l = Matrix::from_rows(field, rows.clone())?;
    let p = l.inverse().ok_or(Error::Precondition("congruence matrix is singular".into()))?;
    let lambdas = rows.iter().map(|r| Poly::linear(field, r)).collect();
    Ok(Diagonalization { p, d, lambdas })
}

/// `Q = Σ lᵢ·mᵢ`; when `square_term` is set the last pair has `l = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumOfProducts {
    pub field: Field,
    pub nvars: usize,
    pub pairs: Vec<(Poly, Poly)>,
    pub square_term: bool,
}

impl SumOfProducts {
    pub fn new(field: Field, nvars: usize, pairs: Vec<(Poly, Poly)>) -> Self {
        let square_term = pairs.last().is_some_and(|(l, m)| l == m);
        SumOfProducts { field, nvars, pairs, square_term }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Σ lᵢ·mᵢ
    pub fn sum(&self) -> Poly {
        self.pairs
            .iter()
            .fold(Poly::zero(self.field, self.nvars), |acc, (l, m)| &acc + &(l * m))
    }
}

/// The field sum-of-products decompositions are computed in: 𝔽_p moves to
/// 𝔽_p(√ν), the others stay put.
pub fn pairing_field(field: Field) -> Result<Field> {
    match field {
        Field::Prime(p) => Field::prime_quadratic(p),
        f => Ok(f),
    }
}

/// Pairs consecutive nonzero diagonal terms into hyperbolic products; an
/// odd leftover `d·λ²` becomes the square pair `(√d·λ, √d·λ)`.
pub fn sum_of_products(qf: &QuadraticFormRecord) -> Result<SumOfProducts> {
    let field = pairing_field(qf.field())?;
    let qf = if field == qf.field() { qf.clone() } else { gram_from_poly(&qf.poly.embed(field)?)? };
    let diag = diagonalize(&qf)?;
    let terms: Vec<(&Scalar, &Poly)> = diag
        .d
        .iter()
        .zip(&diag.lambdas)
        .filter(|(d, _)| !d.is_zero())
        .collect();
    let mut pairs = Vec::new();
    for chunk in terms.chunks(2) {
        match *chunk {
            [(d1, l1), (d2, l2)] => pairs.push(hyperbolic_pair(d1, l1, d2, l2)?),
            [(d, l)] => {
                let s = d.sqrt().into_result()?;
                let sl = l.scale(&s);
                pairs.push((sl.clone(), sl));
            }
            _ => unreachable!(),
        }
    }
    let sop = SumOfProducts::new(field, qf.nvars(), pairs);
    debug_assert_eq!(sop.len(), qf.rank.div_ceil(2));
    if sop.sum() != qf.poly {
        return Err(Error::Precondition("pairing does not reproduce the quadric".into()));
    }
    Ok(sop)
}

/// `d₁λ₁² + d₂λ₂² = (c₁λ₁ + c₂λ₂)(c₁λ₁ − c₂λ₂)` with `c₁ = √d₁`, `c₂ = √−d₂`;
/// if `d₁` has no root, falls back to `d₁(λ₁ + cλ₂)(λ₁ − cλ₂)` with `c² = −d₂/d₁`.
fn hyperbolic_pair(d1: &Scalar, l1: &Poly, d2: &Scalar, l2: &Poly) -> Result<(Poly, Poly)> {
    if let (Sqrt::Root(c1), Sqrt::Root(c2)) = (d1.sqrt(), (-d2).sqrt()) {
        let a = l1.scale(&c1);
        let b = l2.scale(&c2);
        return Ok((&a + &b, &a - &b));
    }
    let ratio = (-d2).try_div(d1)?;
    let c = ratio.sqrt().into_result()?;
    let cl2 = l2.scale(&c);
    Ok(((l1 + &cl2).scale(d1), l1 - &cl2))
}

/// `det(Gram(r) − α·Gram(q))` as a polynomial in one variable α.
pub fn pencil_determinant(r: &QuadraticFormRecord, q: &QuadraticFormRecord) -> Result<Poly> {
    if r.nvars() != q.nvars() {
        return Err(Error::Arity { expected: r.nvars(), found: q.nvars() });
    }
    if r.field() != q.field() {
        return Err(Error::MixedFields);
    }
    let field = r.field();
    let n = r.nvars();
    let alpha = Poly::var(field, 1, 0);
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = Poly::constant(field, 1, r.gram.get(i, j).clone());
                    &a - &alpha.scale(q.gram.get(i, j))
                })
                .collect()
        })
        .collect();
    poly_determinant(entries)
}

/// Coefficients of a univariate polynomial from the constant term up.
pub fn univariate_coefficients(f: &Poly) -> Vec<Scalar> {
    let deg = f.degree().unwrap_or(0);
    (0..=deg)
        .map(|k| f.coeff(&Monomial::new(alloc::vec![k])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(field: Field, n: usize, s: &str) -> Poly {
        parse_poly(field, Some(n), s).unwrap()
    }

    fn sc(field: Field, s: &str) -> Scalar {
        field.parse_scalar(s).unwrap()
    }

    #[test]
    fn gram_examples() {
        let q = Field::Rationals;
        let rec = gram_from_poly(&p(q, 3, "x*y-z^2")).unwrap();
        let expect = Matrix::from_rows(
            q,
            alloc::vec![
                alloc::vec![sc(q, "0"), sc(q, "1/2"), sc(q, "0")],
                alloc::vec![sc(q, "1/2"), sc(q, "0"), sc(q, "0")],
                alloc::vec![sc(q, "0"), sc(q, "0"), sc(q, "-1")],
            ],
        )
        .unwrap();
        assert_eq!(rec.gram, expect);
        assert_eq!(rec.rank, 3);

        let rec = gram_from_poly(&p(q, 4, "x^2+y^2+z^2")).unwrap();
        assert_eq!(rec.gram, Matrix::diagonal(q, &[q.one(), q.one(), q.one(), q.zero()]));
        assert_eq!(rec.rank, 3);
        assert!(!rec.is_nonsingular());
        let pt = rec.singular_point().unwrap();
        assert_eq!(pt, alloc::vec![q.zero(), q.zero(), q.zero(), q.one()]);

        let rec = gram_from_poly(&p(q, 2, "x^2-x^2")).unwrap();
        assert_eq!(rec.rank, 0);
        assert!(gram_from_poly(&p(q, 2, "x^3")).is_err());
        assert!(gram_from_poly(&p(q, 2, "x^2+x")).is_err());
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let q = Field::Rationals;
        let rec = gram_from_poly(&p(q, 2, "x*y")).unwrap();
        let diag = diagonalize(&rec).unwrap();
        assert_eq!(diag.d, alloc::vec![q.one(), q.from_i64(-1)]);
        assert_eq!(diag.lambdas, alloc::vec![p(q, 2, "1/2*x+1/2*y"), p(q, 2, "1/2*x-1/2*y")]);
        let diag = diagonalize(&gram_from_poly(&p(q, 3, "x^2+y^2+z^2")).unwrap()).unwrap();
        assert_eq!(diag.d, alloc::vec![q.one(); 3]);
        assert_eq!(diag.lambdas, alloc::vec![p(q, 3, "x"), p(q, 3, "y"), p(q, 3, "z")]);
    }

    fn check_diagonalization(rec: &QuadraticFormRecord) {
        let field = rec.field();
        let diag = diagonalize(rec).unwrap();
        assert!(!diag.p.determinant().unwrap().is_zero());
        let congruent = diag.p.transpose().mul(&rec.gram).unwrap().mul(&diag.p).unwrap();
        assert_eq!(congruent, Matrix::diagonal(field, &diag.d));
        let sum = diag
            .d
            .iter()
            .zip(&diag.lambdas)
            .fold(Poly::zero(field, rec.nvars()), |acc, (d, l)| &acc + &(l * l).scale(d));
        assert_eq!(sum, rec.poly);
        assert_eq!(diag.d.iter().filter(|d| !d.is_zero()).count(), rec.rank);
    }

    pub(crate) fn random_quadric(field: Field, nvars: usize, rank: usize, rng: &mut ChaCha8Rng) -> Poly {
        // Σ cₖ·ℓₖ² over `rank` random linear forms, plus an occasional hyperbolic pair
        let mut q = Poly::zero(field, nvars);
        let mut k = 0;
        while k < rank {
            if rank - k >= 2 && rng.gen_bool(0.3) {
                let a = Poly::random_form(field, nvars, 1, rng);
                let b = Poly::random_form(field, nvars, 1, rng);
                q = &q + &(&a * &b);
                k += 2;
            } else {
                let a = Poly::random_form(field, nvars, 1, rng);
                q = &q + &(&a * &a).scale(&field.random_nonzero(rng));
                k += 1;
            }
        }
        q
    }

    #[test]
    fn diagonalize_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for field in [Field::Rationals, Field::prime(101).unwrap(), Field::GaussianRationals] {
            for _ in 0..40 {
                let n = rng.gen_range(1..6);
                let r = rng.gen_range(0..=n);
                let rec = gram_from_poly(&random_quadric(field, n, r, &mut rng)).unwrap();
                check_diagonalization(&rec);
            }
        }
        // zero diagonal throughout
        let q = Field::Rationals;
        check_diagonalization(&gram_from_poly(&p(q, 4, "x*y+y*z+z*t+x*t+2*x*z")).unwrap());
    }

    #[test]
    fn sop_examples() {
        let f = Field::prime(13).unwrap();
        let sop = sum_of_products(&gram_from_poly(&p(f, 3, "x^2+y^2+z^2")).unwrap()).unwrap();
        let f2 = Field::prime_quadratic(13).unwrap();
        assert_eq!(sop.field, f2);
        assert_eq!(sop.pairs, alloc::vec![
            (p(f2, 3, "x+5*y"), p(f2, 3, "x-5*y")),
            (p(f2, 3, "z"), p(f2, 3, "z")),
        ]);
        assert!(sop.square_term);

        let q = Field::Rationals;
        let sop = sum_of_products(&gram_from_poly(&p(q, 5, "x*y+z*w")).unwrap()).unwrap();
        assert_eq!(sop.pairs, alloc::vec![
            (p(q, 5, "x"), p(q, 5, "y")),
            (p(q, 5, "z"), p(q, 5, "w")),
        ]);
        assert!(!sop.square_term);

        let sop = sum_of_products(&gram_from_poly(&p(q, 1, "x^2")).unwrap()).unwrap();
        assert_eq!(sop.pairs, alloc::vec![(p(q, 1, "x"), p(q, 1, "x"))]);

        // 2x² has no rational square root for its square term
        let err = sum_of_products(&gram_from_poly(&p(q, 1, "2*x^2")).unwrap()).unwrap_err();
        assert_eq!(err, Error::ExtensionNeeded(q.from_i64(2)));
        // 2x² − 2y² pairs through the fallback: 2(x+y)(x−y)
        let sop = sum_of_products(&gram_from_poly(&p(q, 2, "2*x^2-2*y^2")).unwrap()).unwrap();
        assert_eq!(sop.sum(), p(q, 2, "2*x^2-2*y^2"));
    }

    #[test]
    fn sop_random_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for field in [Field::prime(101).unwrap(), Field::prime_quadratic(13).unwrap()] {
            for _ in 0..60 {
                let n = rng.gen_range(1..7);
                let r = rng.gen_range(0..=n);
                let rec = gram_from_poly(&random_quadric(field, n, r, &mut rng)).unwrap();
                let sop = match sum_of_products(&rec) {
                    Ok(sop) => sop,
                    // 𝔽_p(√ν) is not closed under square roots either
                    Err(Error::ExtensionNeeded(_)) if field.order() == Some(169) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert_eq!(sop.sum(), rec.poly.embed(sop.field).unwrap());
                assert_eq!(sop.len(), rec.rank.div_ceil(2));
                assert_eq!(sop.square_term, rec.rank % 2 == 1);
            }
        }
    }

    #[test]
    fn gram_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for field in [Field::Rationals, Field::GaussianRationals, Field::prime(101).unwrap(), Field::prime_quadratic(101).unwrap()] {
            for _ in 0..200 {
                let q = Poly::random_form(field, rng.gen_range(1..6), 2, &mut rng);
                let rec = gram_from_poly(&q).unwrap();
                assert!(rec.gram.is_symmetric());
                assert_eq!(poly_from_gram(&rec.gram).unwrap(), q);
            }
        }
    }

    /// Leibniz expansion over all permutations, independent of elimination.
    fn leibniz_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        let field = m.field();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = field.zero();
        fn rec(k: usize, perm: &mut Vec<usize>, sign: i64, m: &Matrix, total: &mut Scalar) {
            let n = perm.len();
            if k == n {
                let mut t = m.field().from_i64(sign);
                for (i, &j) in perm.iter().enumerate() {
                    t = &t * m.get(i, j);
                }
                *total = &*total + &t;
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, if i == k { sign } else { -sign }, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, 1, m, &mut total);
        total
    }

    #[test]
    fn pencil_examples() {
        let qi = Field::GaussianRationals;
        let r = gram_from_poly(&p(qi, 4, "x*y+i*t*y+z*t")).unwrap();
        let q = gram_from_poly(&p(qi, 4, "x^2+y^2+z^2")).unwrap();
        let det = pencil_determinant(&r, &q).unwrap();
        assert_eq!(univariate_coefficients(&det), alloc::vec![sc(qi, "1/16")]);
        // oracle: Leibniz determinant at a few α values
        for a in [-3i64, 0, 2, 7] {
            let alpha = qi.from_i64(a);
            let m = r.gram.sub(&q.gram.scale(&alpha)).unwrap();
            assert_eq!(leibniz_det(&m), sc(qi, "1/16"));
        }

        let qq = Field::Rationals;
        let q3 = gram_from_poly(&p(qq, 4, "x^2+y^2+z^2")).unwrap();
        assert!(pencil_determinant(&q3, &q3).unwrap().is_zero());
        let t2 = gram_from_poly(&p(qq, 4, "t^2")).unwrap();
        let det = pencil_determinant(&t2, &q3).unwrap();
        assert_eq!(det, p(qq, 1, "-x^3"));
        let two = gram_from_poly(&p(qq, 2, "x*y")).unwrap();
        assert!(pencil_determinant(&two, &q3).is_err());
    }

    #[test]
    fn pencil_matches_pointwise_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            let r = gram_from_poly(&Poly::random_form(field, 4, 2, &mut rng)).unwrap();
            let q = gram_from_poly(&Poly::random_form(field, 4, 2, &mut rng)).unwrap();
            let det = pencil_determinant(&r, &q).unwrap();
            assert!(det.degree().unwrap_or(0) <= 4);
            for _ in 0..20 {
                let a = field.random(&mut rng);
                let m = r.gram.sub(&q.gram.scale(&a)).unwrap();
                assert_eq!(det.evaluate(&[a]).unwrap(), leibniz_det(&m));
            }
        }
    }

    #[test]
    fn product_plus_square_is_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            for _ in 0..100 {
                let n = rng.gen_range(4..7);
                let l = Poly::random_form(field, n, 1, &mut rng);
                let m = Poly::random_form(field, n, 1, &mut rng);
                let a = Poly::random_form(field, n, 1, &mut rng);
                let rec = gram_from_poly(&(&(&l * &m) + &(&a * &a))).unwrap();
                assert!(rec.rank <= 3);
                assert!(!rec.is_nonsingular());
            }
        }
    }
}
