//! Square matrices of linear forms with `A² = Q·Id`, built recursively from
//! a sum of products `Q = Σ lᵢmᵢ`.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::quadform::SumOfProducts;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub size: usize,
    /// Row-major; every entry is zero or a linear form.
    pub entries: Vec<Vec<Poly>>,
    /// The pairs the matrix was assembled from, when it was built here.
    pub source: Option<SumOfProducts>,
    pub quadric: Poly,
    pub ulrich_rank: usize,
}

fn check_linear(p: &Poly) -> Result<()> {
    if p.is_zero() || (p.is_homogeneous() && p.degree() == Some(1)) {
        Ok(())
    } else {
        Err(Error::NonLinearEntry)
    }
}

impl MatrixFactorization {
    /// Wraps a matrix and a quadric without checking the identity; see
    /// [`verify_factorization`].
    pub fn from_entries(entries: Vec<Vec<Poly>>, quadric: Poly) -> Result<Self> {
        let size = entries.len();
        if size == 0 || entries.iter().any(|row| row.len() != size) {
            return Err(Error::Shape);
        }
        let (field, nvars) = (quadric.field(), quadric.nvars());
        for e in entries.iter().flatten() {
            if e.field() != field {
                return Err(Error::MixedFields);
            }
            if e.nvars() != nvars {
                return Err(Error::Arity { expected: nvars, found: e.nvars() });
            }
            check_linear(e)?;
        }
        Ok(MatrixFactorization { size, entries, source: None, quadric, ulrich_rank: size / 2 })
    }

    pub fn field(&self) -> Field {
        self.quadric.field()
    }

    pub fn nvars(&self) -> usize {
        self.quadric.nvars()
    }

    /// The numeric matrix `A(ξ)`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Matrix> {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.field(), rows)
    }
}

/// Base case `[[0, l₁], [m₁, 0]]`; each further pair `(l, m)` turns `A₁`
/// into `[[A₁, l·Id], [m·Id, −A₁]]`.
pub fn build_clifford_factorization(sop: &SumOfProducts) -> Result<MatrixFactorization> {
    let Some((l1, m1)) = sop.pairs.first() else {
        return Err(Error::EmptyDecomposition);
    };
    for (l, m) in &sop.pairs {
        check_linear(l)?;
        check_linear(m)?;
    }
    let zero = Poly::zero(sop.field, sop.nvars);
    let mut a = alloc::vec![
        alloc::vec![zero.clone(), l1.clone()],
        alloc::vec![m1.clone(), zero.clone()],
    ];
    for (l, m) in &sop.pairs[1..] {
        let n = a.len();
        let mut next = alloc::vec![alloc::vec![zero.clone(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = a[i][j].clone();
                next[n + i][n + j] = -&a[i][j];
            }
            next[i][n + i] = l.clone();
            next[n + i][i] = m.clone();
        }
        a = next;
    }
    let size = a.len();
    let mf = MatrixFactorization {
        size,
        entries: a,
        source: Some(sop.clone()),
        quadric: sop.sum(),
        ulrich_rank: size / 2,
    };
    if !verify_factorization(&mf) {
        return Err(Error::Precondition(String::from("assembled matrix does not square to the quadric")));
    }
    Ok(mf)
}

/// Whether `A·A = quadric·Id` holds entry by entry.
pub fn verify_factorization(mf: &MatrixFactorization) -> bool {
    let n = mf.size;
    let a = &mf.entries;
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return false;
    }
    let (field, nvars) = (mf.field(), mf.nvars());
    if a.iter().flatten().any(|e| e.field() != field || e.nvars() != nvars) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let mut acc = Poly::zero(field, nvars);
            for k in 0..n {
                if a[i][k].is_zero() || a[k][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&a[i][k] * &a[k][j]);
            }
            let expected = if i == j { &mf.quadric } else { &Poly::zero(field, nvars) };
            if &acc != expected {
                return false;
            }
        }
    }
    true
}

/// Outcome of the randomized determinant check `det A(ξ) = ε·Q(ξ)^{size/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantCertificate {
    pub holds: bool,
    /// The common sign ε, once a point with `Q(ξ) ≠ 0` was seen.
    pub sign: Option<Scalar>,
    pub checked: u32,
    /// Points skipped because `Q(ξ) = 0`.
    pub skipped: u32,
}

/// Samples `trials` random points and checks `det A(ξ)² = Q(ξ)^{size}`
/// together with a constant sign `ε = ±1` in `det A(ξ) = ε·Q(ξ)^{size/2}`.
pub fn determinant_certificate(mf: &MatrixFactorization, trials: u32, seed: u64) -> Result<DeterminantCertificate> {
    let field = mf.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (mf.size / 2) as u64;
    let (one, minus_one) = (field.one(), field.from_i64(-1));
    let mut cert = DeterminantCertificate { holds: mf.size % 2 == 0, sign: None, checked: 0, skipped: 0 };
    for _ in 0..trials {
        let point: Vec<Scalar> = (0..mf.nvars()).map(|_| field.random(&mut rng)).collect();
        let q = mf.quadric.evaluate(&point)?;
        if q.is_zero() {
            cert.skipped += 1;
            continue;
        }
        cert.checked += 1;
        let det = mf.evaluate(&point)?.determinant()?;
        let eps = det.try_div(&q.pow(half))?;
        if &det * &det != q.pow(2 * half) || (eps != one && eps != minus_one) {
            cert.holds = false;
        }
        match &cert.sign {
            None => cert.sign = Some(eps),
            Some(s) if *s != eps => cert.holds = false,
            Some(_) => {}
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{gram_from_poly, sum_of_products};
    use crate::text::parse_poly;

    fn p(field: Field, n: usize, s: &str) -> Poly {
        parse_poly(field, Some(n), s).unwrap()
    }

    fn sop(field: Field, n: usize, pairs: &[(&str, &str)]) -> SumOfProducts {
        SumOfProducts::new(field, n, pairs.iter().map(|(l, m)| (p(field, n, l), p(field, n, m))).collect())
    }

    fn grid(field: Field, n: usize, rows: &[&[&str]]) -> Vec<Vec<Poly>> {
        rows.iter().map(|r| r.iter().map(|s| p(field, n, s)).collect()).collect()
    }

    #[test]
    fn base_case() {
        let q = Field::Rationals;
        let mf = build_clifford_factorization(&sop(q, 2, &[("x", "y")])).unwrap();
        assert_eq!(mf.entries, grid(q, 2, &[&["0", "x"], &["y", "0"]]));
        assert_eq!((mf.size, mf.ulrich_rank), (2, 1));
        let cert = determinant_certificate(&mf, 30, 0).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.sign, Some(q.from_i64(-1)));
    }

    #[test]
    fn four_by_four() {
        let q = Field::Rationals;
        let mf = build_clifford_factorization(&sop(q, 4, &[("x", "y"), ("z", "w")])).unwrap();
        let expected = grid(
            q,
            4,
            &[&["0", "x", "z", "0"], &["y", "0", "0", "z"], &["w", "0", "0", "-x"], &["0", "w", "-y", "0"]],
        );
        assert_eq!(mf.entries, expected);
        assert_eq!(mf.quadric, p(q, 4, "x*y+z*w"));
        let f101 = Field::prime(101).unwrap();
        let mf = build_clifford_factorization(&sop(f101, 4, &[("x", "y"), ("z", "w")])).unwrap();
        let cert = determinant_certificate(&mf, 20, 5).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.sign, Some(f101.one()));
    }

    #[test]
    fn eight_by_eight() {
        let q = Field::Rationals;
        let mf = build_clifford_factorization(&sop(q, 6, &[("x0", "x1"), ("x2", "x3"), ("x4", "x5")])).unwrap();
        assert_eq!(mf.size, 8);
        assert_eq!(mf.ulrich_rank, 4);
        assert!(verify_factorization(&mf));
        assert!(determinant_certificate(&mf, 50, 1).unwrap().holds);
    }

    #[test]
    fn verification_examples() {
        let q = Field::Rationals;
        let square = MatrixFactorization::from_entries(grid(q, 1, &[&["0", "x"], &["x", "0"]]), p(q, 1, "x^2")).unwrap();
        assert!(verify_factorization(&square));
        let wrong = MatrixFactorization::from_entries(grid(q, 4, &[&["0", "x"], &["y", "0"]]), p(q, 4, "x*y+z*w")).unwrap();
        assert!(!verify_factorization(&wrong));
        assert!(!determinant_certificate(&wrong, 20, 0).unwrap().holds);
    }

    #[test]
    fn rejects_bad_input() {
        let q = Field::Rationals;
        assert_eq!(build_clifford_factorization(&sop(q, 2, &[])), Err(Error::EmptyDecomposition));
        assert_eq!(build_clifford_factorization(&sop(q, 2, &[("x^2", "y")])), Err(Error::NonLinearEntry));
        assert_eq!(build_clifford_factorization(&sop(q, 2, &[("x+1", "y")])), Err(Error::NonLinearEntry));
        assert_eq!(
            MatrixFactorization::from_entries(grid(q, 2, &[&["0", "x"]]), p(q, 2, "x*y")),
            Err(Error::Shape)
        );
    }

    #[test]
    fn appending_a_pair_doubles_the_size() {
        let f = Field::prime(101).unwrap();
        let base = [("x", "y"), ("z", "z"), ("x+y", "2*z-x")];
        for k in 1..base.len() {
            let small = build_clifford_factorization(&sop(f, 3, &base[..k])).unwrap();
            let big = build_clifford_factorization(&sop(f, 3, &base[..k + 1])).unwrap();
            assert_eq!(big.size, 2 * small.size);
        }
    }

    #[test]
    fn factorizations_of_random_quadrics() {
        use rand::{Rng, SeedableRng};
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let n = rng.gen_range(1..6);
            let quad = Poly::random_form(f, n, 2, &mut rng);
            let rec = gram_from_poly(&quad).unwrap();
            if rec.rank == 0 {
                continue;
            }
            let s = sum_of_products(&rec).unwrap();
            let mf = build_clifford_factorization(&s).unwrap();
            assert_eq!(mf.size, 1 << rec.rank.div_ceil(2));
            assert!(determinant_certificate(&mf, 10, 3).unwrap().holds);
        }
    }
}
