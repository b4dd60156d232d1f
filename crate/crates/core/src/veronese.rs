//! Lifting forms of degree 2d to quadrics on the d-uple embedding, the
//! double-cover quadric `T² − Q`, decompositions `F = Σ FᵢGᵢ` and the
//! resulting matrix factorizations and rank bounds.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graded::{is_smooth_hypersurface, vanishing_bound, GradedSystem, Smoothness, ZeroDimensional};
use crate::matrix_factor::{build_clifford_factorization, MatrixFactorization};
use crate::poly::{Monomial, Poly};
use crate::quadform::{gram_from_poly, sum_of_products, QuadraticFormRecord, SumOfProducts};
use crate::resultant::{certify_transversal, Transversality};
use crate::scalar::{Field, Scalar};

/// The map ℙⁿ → ℙᴺ given by all monomials of degree d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseMap {
    pub n: usize,
    pub d: u32,
    /// Degree-d monomials in `n + 1` variables, descending.
    pub basis: Vec<Monomial>,
}

impl VeroneseMap {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Degree(String::from("embedding degree must be positive")));
        }
        Ok(VeroneseMap { n, d, basis: Monomial::all_of_degree(n + 1, d) })
    }

    /// `N`, the dimension of the target space.
    pub fn target_dim(&self) -> usize {
        self.basis.len() - 1
    }

    fn index(&self) -> BTreeMap<&Monomial, usize> {
        self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Substitutes the basis monomials into a form in the `N + 1` target
    /// coordinates. Extra trailing coordinates (such as `T`) are carried
    /// over as plain variables after the `n + 1` source variables.
    pub fn pullback(&self, f: &Poly) -> Result<Poly> {
        let k = self.basis.len();
        if f.nvars() < k {
            return Err(Error::Arity { expected: k, found: f.nvars() });
        }
        let extra = f.nvars() - k;
        let src = self.n + 1;
        let images: Vec<Poly> = self
            .basis
            .iter()
            .map(|m| Poly::term(f.field(), Monomial::new(pad(m.exponents(), src + extra)), f.field().one()))
            .chain((0..extra).map(|j| Poly::var(f.field(), src + extra, src + j)))
            .collect();
        f.compose(&images)
    }

    /// The linear form in the target coordinates whose pullback is the
    /// degree-d form `f`.
    pub fn linear_lift(&self, f: &Poly) -> Result<Poly> {
        self.check_source(f, self.d)?;
        let coeffs = f.coefficients_on(&self.basis)?;
        Ok(Poly::linear(f.field(), &coeffs))
    }

    fn check_source(&self, f: &Poly, degree: u32) -> Result<()> {
        if f.nvars() != self.n + 1 {
            return Err(Error::Arity { expected: self.n + 1, found: f.nvars() });
        }
        if f.is_zero() {
            return Ok(());
        }
        let deg = f.homogeneous_degree()?;
        if deg != degree {
            return Err(Error::Degree(format!("expected a form of degree {degree}, found degree {deg}")));
        }
        Ok(())
    }
}

fn pad(e: &[u32], len: usize) -> Vec<u32> {
    let mut v = e.to_vec();
    v.resize(len, 0);
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricLift {
    pub vmap: VeroneseMap,
    /// Quadric in the `N + 1` target coordinates pulling back to `source`.
    pub q: QuadraticFormRecord,
    pub source: Poly,
}

/// Splits `α` into two halves of degree `d`, the first taking as much of
/// the leading variables as possible.
fn greedy_split(alpha: &[u32], d: u32) -> (Monomial, Monomial) {
    let mut left = d;
    let beta: Vec<u32> = alpha
        .iter()
        .map(|&a| {
            let take = a.min(left);
            left -= take;
            take
        })
        .collect();
    let gamma = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
    (Monomial::new(beta), Monomial::new(gamma))
}

/// A quadric on the d-uple embedding restricting to `f`.
pub fn lift_form(f: &Poly, vmap: &VeroneseMap) -> Result<QuadricLift> {
    vmap.check_source(f, 2 * vmap.d)?;
    let field = f.field();
    let k = vmap.basis.len();
    let index = vmap.index();
    let mut q = Poly::zero(field, k);
    for (m, c) in f.terms() {
        let (beta, gamma) = greedy_split(m.exponents(), vmap.d);
        let mut e = alloc::vec![0u32; k];
        e[index[&beta]] += 1;
        e[index[&gamma]] += 1;
        q = &q + &Poly::term(field, Monomial::new(e), c.clone());
    }
    if vmap.pullback(&q)? != *f {
        return Err(Error::Precondition(String::from("lift does not pull back to the form")));
    }
    Ok(QuadricLift { vmap: vmap.clone(), q: gram_from_poly(&q)?, source: f.clone() })
}

/// `T² − Q` with `T` appended as the last coordinate.
pub fn double_cover_quadric(lift: &QuadricLift) -> Result<QuadraticFormRecord> {
    let q = &lift.q.poly;
    let k = q.nvars();
    let t = Poly::var(q.field(), k + 1, k);
    gram_from_poly(&(&(&t * &t) - &q.extend_vars(1)))
}

/// Attached checks on a decomposition; `None` means not computed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecompositionCertificates {
    pub smoothness: Option<Smoothness>,
    pub factor_ideal: Option<ZeroDimensional>,
    pub transversality: Option<Transversality>,
}

/// `F = Σ FᵢGᵢ` with all factors of degree d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDecomposition {
    pub f: Poly,
    pub summands: Vec<(Poly, Poly)>,
    /// Whether the last summand is a square `Fₖ = Gₖ`.
    pub square_term: bool,
    pub certificates: DecompositionCertificates,
}

impl FormDecomposition {
    /// Validates a decomposition; factors may live in an extension of the
    /// field of `f`.
    pub fn new(f: Poly, summands: Vec<(Poly, Poly)>) -> Result<Self> {
        let Some((f1, _)) = summands.first() else {
            return Err(Error::EmptyDecomposition);
        };
        let field = f1.field();
        let target = f.embed(field)?;
        let total = target.degree().unwrap_or(0);
        let mut sum = Poly::zero(field, f.nvars());
        for (a, b) in &summands {
            for g in [a, b] {
                if g.field() != field {
                    return Err(Error::MixedFields);
                }
                if g.nvars() != f.nvars() {
                    return Err(Error::Arity { expected: f.nvars(), found: g.nvars() });
                }
                if !g.is_homogeneous() || 2 * g.degree().unwrap_or(0) != total {
                    return Err(Error::Degree(String::from("factors must be forms of half the degree")));
                }
            }
            sum = &sum + &(a * b);
        }
        if sum != target {
            return Err(Error::Precondition(String::from("summands do not add up to the form")));
        }
        let square_term = summands.last().is_some_and(|(a, b)| a == b);
        Ok(FormDecomposition { f, summands, square_term, certificates: DecompositionCertificates::default() })
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The field the factors live in.
    pub fn field(&self) -> Field {
        self.summands[0].0.field()
    }

    /// `r` with `F ∈ Sec_r`: one less than the number of summands.
    pub fn secant_index(&self) -> usize {
        self.summands.len() - 1
    }

    /// All `2k` factors.
    pub fn factors(&self) -> Vec<Poly> {
        self.summands.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
    }

    pub fn degree(&self) -> u32 {
        self.summands[0].0.degree().unwrap_or(0)
    }
}

/// Lifts, pairs the lifted quadric into hyperbolic products and pulls the
/// linear factors back.
pub fn decompose_form(f: &Poly, vmap: &VeroneseMap) -> Result<FormDecomposition> {
    let lift = lift_form(f, vmap)?;
    if lift.q.rank == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let sop = sum_of_products(&lift.q)?;
    let summands = sop
        .pairs
        .iter()
        .map(|(l, m)| Ok((vmap.pullback(l)?, vmap.pullback(m)?)))
        .collect::<Result<Vec<_>>>()?;
    FormDecomposition::new(f.clone(), summands)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationCase {
    /// The last summand is a square `l·l`; the first pair is `(T+l, T−l)`.
    SquareTerm,
    /// No square summand; the first pair is `(T, T)`.
    NoSquareTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlrichPresentation {
    pub decomposition: FormDecomposition,
    /// `Σ lᵢmᵢ` in the target coordinates, pulling back to the form.
    pub lifted_quadric: Poly,
    /// Factorization of `T² − Σ lᵢmᵢ` in the target coordinates and `T`.
    pub factorization: MatrixFactorization,
    /// Each matrix entry pulled back to the source variables plus `T`.
    pub pullbacks: Vec<Vec<Poly>>,
    pub case: PresentationCase,
    pub ulrich_rank: usize,
}

/// Matrix factorization of `T² − Q` from a decomposition of `F` (computed
/// with [`decompose_form`] when none is given).
pub fn ulrich_presentation(f: &Poly, decomp: Option<FormDecomposition>) -> Result<UlrichPresentation> {
    let deg = f.homogeneous_degree()?;
    if deg == 0 || deg % 2 == 1 {
        return Err(Error::Degree(format!("form degree {deg} is not a positive even number")));
    }
    let vmap = VeroneseMap::new(f.nvars() - 1, deg / 2)?;
    let decomp = match decomp {
        Some(d) => d,
        None => decompose_form(f, &vmap)?,
    };
    if decomp.f != *f {
        return Err(Error::Precondition(String::from("decomposition belongs to another form")));
    }
    let field = decomp.field();
    let k = vmap.basis.len();
    let lifted: Vec<(Poly, Poly)> = decomp
        .summands
        .iter()
        .map(|(a, b)| Ok((vmap.linear_lift(a)?.extend_vars(1), vmap.linear_lift(b)?.extend_vars(1))))
        .collect::<Result<_>>()?;
    let t = Poly::var(field, k + 1, k);
    let mut pairs = Vec::with_capacity(lifted.len() + 1);
    let (case, rest) = if decomp.square_term {
        let (l, _) = lifted.last().unwrap();
        pairs.push((&t + l, &t - l));
        (PresentationCase::SquareTerm, &lifted[..lifted.len() - 1])
    } else {
        pairs.push((t.clone(), t.clone()));
        (PresentationCase::NoSquareTerm, &lifted[..])
    };
    pairs.extend(rest.iter().map(|(l, m)| (l.clone(), -m)));
    let sop = SumOfProducts::new(field, k + 1, pairs);
    let factorization = build_clifford_factorization(&sop)?;
    let lifted_quadric = lifted
        .iter()
        .fold(Poly::zero(field, k + 1), |acc, (l, m)| &acc + &(l * m));
    let pullbacks = factorization
        .entries
        .iter()
        .map(|row| row.iter().map(|e| vmap.pullback(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let lifted_quadric = drop_last_var(&lifted_quadric);
    let ulrich_rank = factorization.ulrich_rank;
    Ok(UlrichPresentation { decomposition: decomp, lifted_quadric, factorization, pullbacks, case, ulrich_rank })
}

fn drop_last_var(f: &Poly) -> Poly {
    let n = f.nvars() - 1;
    Poly::from_terms(
        f.field(),
        n,
        f.terms().map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())),
    )
}

/// Whether the lower bound from the factor ideal applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundCheck {
    /// `F` is smooth: the factors have no common zero, so `2k ≥ n + 1`.
    Applicable { factor_ideal: ZeroDimensional, two_k: usize, n_plus_one: usize, holds: bool },
    NotApplicable { reason: String, witness: Option<Vec<Scalar>> },
}

impl LowerBoundCheck {
    pub fn holds(&self) -> bool {
        matches!(self, LowerBoundCheck::Applicable { holds: true, .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub n: usize,
    pub d: u32,
    pub target_dim: usize,
    /// `2^{[N/2]+1}`
    pub upper_bound: u128,
    pub summands: usize,
    pub r: usize,
    pub case: PresentationCase,
    /// `2^r` with a square summand, `2^{r+1}` without.
    pub achieved: u128,
    /// `2^{⌈(n+1)/2⌉−1}`, the least rank allowed by `2k ≥ n + 1` on a smooth form.
    pub lower_bound: u128,
    pub lower_bound_check: LowerBoundCheck,
}

fn pow2(e: usize) -> Result<u128> {
    1u128.checked_shl(e as u32).filter(|_| e < 128).ok_or(Error::Overflow)
}

/// Upper, achieved and lower Ulrich-rank bounds for a decomposition.
pub fn rank_bounds(f: &Poly, decomp: &FormDecomposition, e_max: Option<u32>) -> Result<RankReport> {
    let deg = f.homogeneous_degree()?;
    let d = deg / 2;
    let n = f.nvars() - 1;
    let vmap = VeroneseMap::new(n, d)?;
    let big_n = vmap.target_dim();
    let k = decomp.len();
    let (case, achieved) = if decomp.square_term {
        (PresentationCase::SquareTerm, pow2(k - 1)?)
    } else {
        (PresentationCase::NoSquareTerm, pow2(k)?)
    };
    let lower_bound_check = match is_smooth_hypersurface(f, e_max) {
        Ok(Smoothness::Smooth) => {
            let sys = GradedSystem::from_generators(decomp.factors())?;
            let factor_ideal = sys.is_zero_dimensional(vanishing_bound(n + 1, d));
            let holds = matches!(factor_ideal, ZeroDimensional::Yes(_)) && 2 * k >= n + 1;
            LowerBoundCheck::Applicable { factor_ideal, two_k: 2 * k, n_plus_one: n + 1, holds }
        }
        Ok(Smoothness::Singular(witness)) => {
            LowerBoundCheck::NotApplicable { reason: String::from("F singular"), witness }
        }
        Ok(Smoothness::Inconclusive) => {
            LowerBoundCheck::NotApplicable { reason: String::from("smoothness undecided below the degree bound"), witness: None }
        }
        Err(e) => LowerBoundCheck::NotApplicable { reason: format!("{e}"), witness: None },
    };
    Ok(RankReport {
        n,
        d,
        target_dim: big_n,
        upper_bound: pow2(big_n / 2 + 1)?,
        summands: k,
        r: k - 1,
        case,
        achieved,
        lower_bound: pow2((n + 1).div_ceil(2) - 1)?,
        lower_bound_check,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    /// The rewritten decomposition `F = F_α·G_β + F_β·G_α`, or the best attempt.
    pub decomposition: FormDecomposition,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    /// Candidate scalars tried, counting α and β together.
    pub trials: u32,
    pub success: bool,
    /// The check that failed last, when unsuccessful.
    pub failure: Option<String>,
}

/// Candidate scalars: the small elements 0, 1, −1, 2, … first, then random ones.
fn candidates(field: Field, count: u32, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    let small = match field.order() {
        Some(q) => (count as u128).min(q) as u64,
        None => count as u64,
    };
    for k in 0..small.min(8) {
        let s = field.small_element(k);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    while out.len() < count as usize {
        out.push(field.random(rng));
    }
    out
}

/// Rewrites `F = F₁G₁ + F₂G₂` on the plane as `F_α·G_β + F_β·G_α` with
/// `F_α = F₁ + αF₂` smooth, `F_β = F₂ + βF_α` smooth and `F_β`, `G_α`
/// meeting transversally in `d²` points.
pub fn normalize_plane_decomposition(
    f: &Poly,
    decomp: &FormDecomposition,
    seed: u64,
    max_trials: u32,
) -> Result<Normalization> {
    if f.nvars() != 3 {
        return Err(Error::Arity { expected: 3, found: f.nvars() });
    }
    if decomp.len() != 2 {
        return Err(Error::Precondition(format!("expected 2 summands, found {}", decomp.len())));
    }
    if decomp.f != *f {
        return Err(Error::Precondition(String::from("decomposition belongs to another form")));
    }
    let smooth_f = is_smooth_hypersurface(f, None)?;
    if !smooth_f.is_smooth() {
        return Err(Error::Precondition(String::from("F is not smooth")));
    }
    let field = decomp.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (f1, g1) = &decomp.summands[0];
    let (f2, g2) = &decomp.summands[1];
    let mut trials = 0;
    let mut failure = String::from("no smooth first factor found");
    let mut best: Option<(FormDecomposition, Scalar, Option<Scalar>)> = None;
    for alpha in candidates(field, max_trials, &mut rng) {
        trials += 1;
        let fa = f1 + &f2.scale(&alpha);
        let ga = g2 - &g1.scale(&alpha);
        if !is_smooth_hypersurface(&fa, None)?.is_smooth() {
            continue;
        }
        failure = String::from("no transversal second summand found");
        for beta in candidates(field, max_trials, &mut rng) {
            trials += 1;
            let fb = f2 + &fa.scale(&beta);
            let gb = g1 - &ga.scale(&beta);
            let attempt = FormDecomposition::new(f.clone(), alloc::vec![(fa.clone(), gb), (fb.clone(), ga.clone())])?;
            if best.is_none() {
                best = Some((attempt.clone(), alpha.clone(), Some(beta.clone())));
            }
            if fb.is_zero() || ga.is_zero() || !is_smooth_hypersurface(&fb, None)?.is_smooth() {
                failure = String::from("second factor not smooth");
                continue;
            }
            let cert = certify_transversal(&fb, &ga, 8, &mut rng)?;
            if let Transversality::Failed(reason) = &cert {
                failure = format!("transversality: {reason}");
                best = Some((attempt.clone(), alpha.clone(), Some(beta.clone())));
                continue;
            }
            let mut decomposition = attempt;
            decomposition.certificates = DecompositionCertificates {
                smoothness: Some(smooth_f),
                factor_ideal: None,
                transversality: Some(cert),
            };
            return Ok(Normalization {
                decomposition,
                alpha: Some(alpha),
                beta: Some(beta),
                trials,
                success: true,
                failure: None,
            });
        }
    }
    let (decomposition, alpha, beta) = match best {
        Some((d, a, b)) => (d, Some(a), b),
        None => (decomp.clone(), None, None),
    };
    Ok(Normalization { decomposition, alpha, beta, trials, success: false, failure: Some(failure) })
}

/// Rank after `n − 1` doublings: `base_rank · 2^{n−1}`.
pub fn induction_rank(n: u32, base_rank: u64) -> Result<u64> {
    if n < 2 || base_rank == 0 {
        return Err(Error::Precondition(String::from("need n ≥ 2 and base_rank ≥ 1")));
    }
    1u64.checked_shl(n - 1)
        .filter(|_| n - 1 < 64)
        .and_then(|p| p.checked_mul(base_rank))
        .ok_or(Error::Overflow)
}
