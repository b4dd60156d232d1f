//! Exact scalars over ℚ, ℚ(i), 𝔽_p and 𝔽_p(√ν).
//!
//! A [`Scalar`] carries enough of its field to do arithmetic on its own, so
//! the usual operator traits are implemented on references. Operators panic
//! when the operands come from different fields; the `try_*` methods report
//! that as [`Error::MixedFields`] instead.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// ℚ(i) with i² = −1.
    GaussianRationals,
    Prime(u64),
    /// 𝔽_p(w) with w² = ν, ν a quadratic nonresidue mod p.
    PrimeQuadratic { p: u64, nonresidue: u64 },
}

/// Outcome of [`Scalar::sqrt`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sqrt {
    Root(Scalar),
    /// No root in the field; carries the element whose root must be adjoined.
    ExtensionNeeded(Scalar),
}

impl Sqrt {
    pub fn root(self) -> Option<Scalar> {
        match self {
            Sqrt::Root(s) => Some(s),
            Sqrt::ExtensionNeeded(_) => None,
        }
    }

    pub fn into_result(self) -> Result<Scalar> {
        match self {
            Sqrt::Root(s) => Ok(s),
            Sqrt::ExtensionNeeded(a) => Err(Error::ExtensionNeeded(a)),
        }
    }
}

/// The largest prime modulus accepted; keeps products inside `u128`
/// comfortably and primality checks by trial division fast.
pub const MAX_PRIME: u64 = 1 << 40;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

fn is_residue(a: u64, p: u64) -> bool {
    a % p == 0 || pow_mod(a, (p - 1) / 2, p) == 1
}

/// Tonelli–Shanks; `a` must be a nonzero residue.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while is_residue(z, p) {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn canonical_mod_root(r: u64, p: u64) -> u64 {
    r.min((p - r) % p)
}

fn rational_to_mod(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
    let d = q.denom().mod_floor(&pb).to_u64().expect("residue fits");
    let dinv = inv_mod(d, p).ok_or(Error::DivisionByZero)?;
    Ok(mul_mod(n, dinv, p))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Field {
    /// `fp:<p>` with `p` an odd prime.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::Characteristic2);
        }
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^40")));
        }
        Ok(Field::Prime(p))
    }

    /// `fp2:<p>`, adjoining the root of the smallest nonresidue.
    pub fn prime_quadratic(p: u64) -> Result<Field> {
        Field::prime(p)?;
        let nonresidue = (2..p).find(|&a| !is_residue(a, p)).expect("odd prime has a nonresidue");
        Ok(Field::PrimeQuadratic { p, nonresidue })
    }

    /// Parses the CLI field selector: `q`, `qi`, `fp:<p>`, `fp2:<p>`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        let prime_of = |rest: &str| {
            rest.parse::<u64>()
                .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))
        };
        match s {
            "q" => Ok(Field::Rationals),
            "qi" => Ok(Field::GaussianRationals),
            _ => {
                if let Some(rest) = s.strip_prefix("fp2:") {
                    Field::prime_quadratic(prime_of(rest)?)
                } else if let Some(rest) = s.strip_prefix("fp:") {
                    Field::prime(prime_of(rest)?)
                } else {
                    Err(Error::InvalidField(format!("unknown field {s:?}")))
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals | Field::GaussianRationals => 0,
            Field::Prime(p) | Field::PrimeQuadratic { p, .. } => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match *self {
            Field::Prime(p) => Some(p as u128),
            Field::PrimeQuadratic { p, .. } => Some(p as u128 * p as u128),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            Field::GaussianRationals => {
                Scalar::Gaussian(BigRational::from_integer(n.into()), BigRational::zero())
            }
            Field::Prime(p) => Scalar::Prime { value: (n as i128).rem_euclid(p as i128) as u64, p },
            Field::PrimeQuadratic { p, nonresidue } => Scalar::Quadratic {
                a: (n as i128).rem_euclid(p as i128) as u64,
                b: 0,
                p,
                nonresidue,
            },
        }
    }

    /// The image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        Ok(match *self {
            Field::Rationals => Scalar::Rational(q.clone()),
            Field::GaussianRationals => Scalar::Gaussian(q.clone(), BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: rational_to_mod(q, p)?, p },
            Field::PrimeQuadratic { p, nonresidue } => Scalar::Quadratic {
                a: rational_to_mod(q, p)?,
                b: 0,
                p,
                nonresidue,
            },
        })
    }

    /// The imaginary unit of ℚ(i) or the adjoined root `w` of 𝔽_p(√ν).
    pub fn generator(&self) -> Option<Scalar> {
        match *self {
            Field::GaussianRationals => {
                Some(Scalar::Gaussian(BigRational::zero(), BigRational::one()))
            }
            Field::PrimeQuadratic { p, nonresidue } => {
                Some(Scalar::Quadratic { a: 0, b: 1, p, nonresidue })
            }
            _ => None,
        }
    }

    /// Some square root of −1, if the field has one.
    pub fn sqrt_minus_one(&self) -> Result<Scalar> {
        self.from_i64(-1).sqrt().root().ok_or(Error::NoSqrtMinusOne)
    }

    /// The k-th element of the sequence 0, 1, −1, 2, −2, … used for
    /// reproducible scalar trials.
    pub fn small_element(&self, k: u64) -> Scalar {
        let half = k.div_ceil(2) as i64;
        self.from_i64(if k % 2 == 1 { half } else { -half })
    }

    /// A random element. Finite fields sample uniformly; characteristic zero
    /// draws small integers (and small Gaussian integers over ℚ(i)).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Rationals => self.from_i64(rng.gen_range(-9..=9)),
            Field::GaussianRationals => Scalar::Gaussian(
                BigRational::from_integer(rng.gen_range(-5i64..=5).into()),
                BigRational::from_integer(rng.gen_range(-5i64..=5).into()),
            ),
            Field::Prime(p) => Scalar::Prime { value: rng.gen_range(0..p), p },
            Field::PrimeQuadratic { p, nonresidue } => Scalar::Quadratic {
                a: rng.gen_range(0..p),
                b: rng.gen_range(0..p),
                p,
                nonresidue,
            },
        }
    }

    /// Like [`Field::random`] but restricted to the prime subfield (or ℚ).
    pub fn random_base<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::GaussianRationals => Field::Rationals.random(rng).embed(*self).expect("ℚ ⊂ ℚ(i)"),
            Field::PrimeQuadratic { p, nonresidue } => {
                Scalar::Quadratic { a: rng.gen_range(0..p), b: 0, p, nonresidue }
            }
            _ => self.random(rng),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses a scalar in the serialized form of this field: `3/4`,
    /// `3/4+1/2i`, `7`, `7+2w`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let unit = match self {
            Field::GaussianRationals => Some('i'),
            Field::PrimeQuadratic { .. } => Some('w'),
            _ => None,
        };
        let (re, im) = parse_two_part(s, unit)?;
        let re = self.from_rational(&re)?;
        match (self.generator(), im) {
            (Some(g), Some(im)) => {
                let im = self.from_rational(&im)?;
                Ok(&re + &(&g * &im))
            }
            (_, None) => Ok(re),
            (None, Some(_)) => Err(Error::Parse(format!("{s:?} is not an element of {self}"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::GaussianRationals => write!(f, "qi"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::PrimeQuadratic { p, .. } => write!(f, "fp2:{p}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Splits `a+bu` (either part optional) into its rational parts.
fn parse_two_part(s: &str, unit: Option<char>) -> Result<(BigRational, Option<BigRational>)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".to_string()));
    }
    // split at sign characters that are not leading
    let mut parts = alloc::vec::Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            parts.push(&s[start..i]);
            start = i;
        }
    }
    parts.push(&s[start..]);
    if parts.len() > 2 {
        return Err(Error::Parse(format!("bad scalar {s:?}")));
    }
    let mut re = BigRational::zero();
    let mut im: Option<BigRational> = None;
    for part in parts {
        let (body, is_unit) = match unit {
            Some(u) if part.ends_with(u) => (&part[..part.len() - 1], true),
            _ => (part, false),
        };
        let body = body.strip_prefix('+').unwrap_or(body);
        let value = match body {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rational(body)?,
        };
        if is_unit {
            *im.get_or_insert_with(BigRational::zero) += value;
        } else {
            re += value;
        }
    }
    Ok((re, im))
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `re + im·i`
    Gaussian(BigRational, BigRational),
    /// residue in `[0, p)`
    Prime { value: u64, p: u64 },
    /// `a + b·w` with `w² = nonresidue`
    Quadratic { a: u64, b: u64, p: u64, nonresidue: u64 },
}

/// Arithmetic selector for [`Scalar::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> Field {
        match *self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Gaussian(..) => Field::GaussianRationals,
            Scalar::Prime { p, .. } => Field::Prime(p),
            Scalar::Quadratic { p, nonresidue, .. } => Field::PrimeQuadratic { p, nonresidue },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Quadratic { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(a, b) => a.is_one() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Quadratic { a, b, .. } => *a == 1 && *b == 0,
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d)) => Scalar::Gaussian(a + c, b + d),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: add_mod(*a, *b, *p), p: *p }
            }
            (
                &Scalar::Quadratic { a, b, p, nonresidue },
                &Scalar::Quadratic { a: c, b: d, p: q, nonresidue: n2 },
            ) if p == q && nonresidue == n2 => Scalar::Quadratic {
                a: add_mod(a, c, p),
                b: add_mod(b, d, p),
                p,
                nonresidue,
            },
            _ => return Err(Error::MixedFields),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d)) => {
                Scalar::Gaussian(a * c - b * d, a * d + b * c)
            }
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: mul_mod(*a, *b, *p), p: *p }
            }
            (
                &Scalar::Quadratic { a, b, p, nonresidue },
                &Scalar::Quadratic { a: c, b: d, p: q, nonresidue: n2 },
            ) if p == q && nonresidue == n2 => {
                let bd = mul_mod(b, d, p);
                Scalar::Quadratic {
                    a: add_mod(mul_mod(a, c, p), mul_mod(bd, nonresidue, p), p),
                    b: add_mod(mul_mod(a, d, p), mul_mod(b, c, p), p),
                    p,
                    nonresidue,
                }
            }
            _ => return Err(Error::MixedFields),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Gaussian(a, b) => {
                let n = a * a + b * b;
                Scalar::Gaussian(a / &n, -(b / &n))
            }
            &Scalar::Prime { value, p } => Scalar::Prime { value: inv_mod(value, p).unwrap(), p },
            &Scalar::Quadratic { a, b, p, nonresidue } => {
                let norm = sub_mod(mul_mod(a, a, p), mul_mod(mul_mod(b, b, p), nonresidue, p), p);
                let ninv = inv_mod(norm, p).expect("nonzero element has nonzero norm");
                Scalar::Quadratic {
                    a: mul_mod(a, ninv, p),
                    b: mul_mod((p - b) % p, ninv, p),
                    p,
                    nonresidue,
                }
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Re-expresses `self` in a field that contains its own.
    pub fn embed(&self, target: Field) -> Result<Scalar> {
        if self.field() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Rational(q), _) if !target.is_finite() => target.from_rational(q),
            (&Scalar::Prime { value, p }, Field::PrimeQuadratic { p: q, nonresidue }) if p == q => {
                Ok(Scalar::Quadratic { a: value, b: 0, p, nonresidue })
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// The rational value, when the scalar is rational (or has zero imaginary part).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Gaussian(a, b) if b.is_zero() => Some(a),
            _ => None,
        }
    }

    /// Deterministic square root: the canonical smallest root, or the
    /// element that has to be adjoined.
    pub fn sqrt(&self) -> Sqrt {
        match self {
            Scalar::Rational(q) => match rational_sqrt(q) {
                Some(r) => Sqrt::Root(Scalar::Rational(r)),
                None => Sqrt::ExtensionNeeded(self.clone()),
            },
            Scalar::Gaussian(a, b) => match gaussian_sqrt(a, b) {
                Some((x, y)) => Sqrt::Root(Scalar::Gaussian(x, y)),
                None => Sqrt::ExtensionNeeded(self.clone()),
            },
            &Scalar::Prime { value, p } => {
                if is_residue(value, p) {
                    Sqrt::Root(Scalar::Prime { value: canonical_mod_root(sqrt_mod(value, p), p), p })
                } else {
                    Sqrt::ExtensionNeeded(self.clone())
                }
            }
            &Scalar::Quadratic { a, b, p, nonresidue } => match quadratic_sqrt(a, b, p, nonresidue) {
                Some((x, y)) => {
                    let (nx, ny) = ((p - x) % p, (p - y) % p);
                    let (x, y) = if (nx, ny) < (x, y) { (nx, ny) } else { (x, y) };
                    Sqrt::Root(Scalar::Quadratic { a: x, b: y, p, nonresidue })
                }
                None => Sqrt::ExtensionNeeded(self.clone()),
            },
        }
    }

    /// Whether the coefficient needs parentheses inside polynomial text.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Scalar::Gaussian(a, b) => !b.is_zero() && !(a.is_zero() && b.is_one()),
            Scalar::Quadratic { b, .. } => *b != 0,
            _ => false,
        }
    }

    pub(crate) fn is_negative_rational(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Gaussian(a, b) => (a.is_negative() && b.is_zero()) || (a.is_zero() && b.is_negative()),
            _ => false,
        }
    }
}

/// Square root in ℚ(i) with the canonical choice re > 0, or re = 0 and im ≥ 0.
fn gaussian_sqrt(a: &BigRational, b: &BigRational) -> Option<(BigRational, BigRational)> {
    let two = BigRational::from_integer(2.into());
    if b.is_zero() {
        return match rational_sqrt(a) {
            Some(r) => Some((r, BigRational::zero())),
            None => rational_sqrt(&-a).map(|r| (BigRational::zero(), r)),
        };
    }
    let modulus = rational_sqrt(&(a * a + b * b))?;
    let x = rational_sqrt(&((a + &modulus) / &two))?;
    if x.is_zero() {
        return None;
    }
    let y = b / (&two * &x);
    Some((x, y))
}

/// Square root of `a + b·w` in 𝔽_p(w), w² = ν: a square exactly when its
/// norm `a² − ν b²` is a square in 𝔽_p.
fn quadratic_sqrt(a: u64, b: u64, p: u64, nu: u64) -> Option<(u64, u64)> {
    if b == 0 {
        if is_residue(a, p) {
            return Some((sqrt_mod(a, p), 0));
        }
        // a/ν is then a residue and (c·w)² = c²ν = a
        let c = sqrt_mod(mul_mod(a, inv_mod(nu, p)?, p), p);
        return Some((0, c));
    }
    let norm = sub_mod(mul_mod(a, a, p), mul_mod(mul_mod(b, b, p), nu, p), p);
    if !is_residue(norm, p) {
        return None;
    }
    let n = sqrt_mod(norm, p);
    let inv2 = inv_mod(2, p)?;
    for candidate in [add_mod(a, n, p), sub_mod(a, n, p)] {
        let x2 = mul_mod(candidate, inv2, p);
        if x2 != 0 && is_residue(x2, p) {
            let x = sqrt_mod(x2, p);
            let y = mul_mod(b, inv_mod(mul_mod(2, x, p), p)?, p);
            return Some((x, y));
        }
    }
    None
}

impl<'a> Add for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition across fields")
    }
}

impl<'a> Sub for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl<'a> Mul for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Gaussian(a, b) => Scalar::Gaussian(-a, -b),
            &Scalar::Prime { value, p } => Scalar::Prime { value: (p - value) % p, p },
            &Scalar::Quadratic { a, b, p, nonresidue } => Scalar::Quadratic {
                a: (p - a) % p,
                b: (p - b) % p,
                p,
                nonresidue,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn write_part(f: &mut fmt::Formatter<'_>, coeff: &str, unit: &str) -> fmt::Result {
    match coeff {
        "1" => write!(f, "{unit}"),
        "-1" => write!(f, "-{unit}"),
        c => write!(f, "{c}{unit}"),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Gaussian(a, b) => {
                if b.is_zero() {
                    write!(f, "{a}")
                } else {
                    if !a.is_zero() {
                        write!(f, "{a}")?;
                        if !b.is_negative() {
                            write!(f, "+")?;
                        }
                    }
                    write_part(f, &b.to_string(), "i")
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Quadratic { a, b, .. } => {
                if *b == 0 {
                    write!(f, "{a}")
                } else {
                    if *a != 0 {
                        write!(f, "{a}+")?;
                    }
                    write_part(f, &b.to_string(), "w")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn prime_field_product() {
        let f = Field::prime(13).unwrap();
        assert_eq!(&f.from_i64(7) * &f.from_i64(2), f.from_i64(1));
    }

    #[test]
    fn gaussian_norm() {
        let f = Field::GaussianRationals;
        let i = f.generator().unwrap();
        let a = &f.one() + &i;
        let b = &f.one() - &i;
        assert_eq!(&a * &b, f.from_i64(2));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(q(4, 1).sqrt(), Sqrt::Root(q(2, 1)));
        assert_eq!(q(2, 1).sqrt(), Sqrt::ExtensionNeeded(q(2, 1)));
        assert_eq!(q(9, 4).sqrt(), Sqrt::Root(q(3, 2)));
        let f13 = Field::prime(13).unwrap();
        // exhaustive: the roots of −1 mod 13 are 5 and 8
        let roots: alloc::vec::Vec<u64> = (0..13).filter(|x| (x * x) % 13 == 12).collect();
        assert_eq!(roots, [5, 8]);
        assert_eq!(f13.from_i64(-1).sqrt(), Sqrt::Root(f13.from_i64(5)));
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(f7.from_i64(-1).sqrt(), Sqrt::ExtensionNeeded(_)));
    }

    #[test]
    fn gaussian_sqrt_cases() {
        let f = Field::GaussianRationals;
        let i = f.generator().unwrap();
        assert_eq!(f.from_i64(-1).sqrt(), Sqrt::Root(i.clone()));
        // (1+i)² = 2i
        let two_i = &f.from_i64(2) * &i;
        assert_eq!(two_i.sqrt(), Sqrt::Root(&f.one() + &i));
        assert!(matches!(f.from_i64(2).sqrt(), Sqrt::ExtensionNeeded(_)));
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("fp:13").unwrap(), Field::Prime(13));
        assert_eq!(
            Field::parse("fp2:13").unwrap(),
            Field::PrimeQuadratic { p: 13, nonresidue: 2 }
        );
        assert_eq!(Field::parse("fp:2"), Err(Error::Characteristic2));
        assert!(Field::parse("fp:15").is_err());
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        let qi = Field::GaussianRationals;
        for s in ["3/4", "3/4+1/2i", "-1/2i", "i", "-i", "0", "2-i"] {
            let v = qi.parse_scalar(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        let f = Field::prime_quadratic(13).unwrap();
        for s in ["7", "7+2w", "w", "0"] {
            assert_eq!(f.parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(Field::prime(13).unwrap().parse_scalar("1/2").unwrap().to_string(), "7");
        assert!(Field::Rationals.parse_scalar("1/0").is_err());
        assert!(Field::Rationals.parse_scalar("i").is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(q(1, 1).try_div(&q(0, 1)), Err(Error::DivisionByZero));
        let f = Field::prime(13).unwrap();
        assert_eq!(q(1, 1).try_add(&f.one()), Err(Error::MixedFields));
        assert_eq!(
            f.one().try_mul(&Field::prime(17).unwrap().one()),
            Err(Error::MixedFields)
        );
    }

    fn fields() -> [Field; 4] {
        [
            Field::Rationals,
            Field::GaussianRationals,
            Field::prime(101).unwrap(),
            Field::prime_quadratic(101).unwrap(),
        ]
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fields() {
            for _ in 0..500 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn base_elements_square_in_quadratic_extension() {
        for p in [3u64, 5, 7, 13, 101] {
            let f = Field::prime_quadratic(p).unwrap();
            for a in 0..p as i64 {
                let x = f.from_i64(a);
                let s = x.sqrt().root().expect("base element has a root");
                assert_eq!(&s * &s, x);
            }
        }
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(a in 0u64..101, b in 0u64..101, n in -50i64..50, d in 1i64..20) {
            let f = Field::prime_quadratic(101).unwrap();
            let x = &f.from_i64(a as i64) + &(&f.generator().unwrap() * &f.from_i64(b as i64));
            if let Sqrt::Root(s) = x.sqrt() {
                prop_assert_eq!(&s * &s, x);
            }
            let r = q(n, d);
            if let Sqrt::Root(s) = r.sqrt() {
                prop_assert_eq!(&s * &s, r);
            }
            let g = Field::GaussianRationals;
            let z = &g.from_i64(n) + &(&g.generator().unwrap() * &g.from_i64(d));
            let z2 = &z * &z;
            let s = z2.sqrt().root().expect("a square has a root");
            prop_assert_eq!(&s * &s, z2);
        }

        #[test]
        fn quadratic_extension_squares_detected(a in 0u64..13, b in 0u64..13) {
            let f = Field::prime_quadratic(13).unwrap();
            let x = &f.from_i64(a as i64) + &(&f.generator().unwrap() * &f.from_i64(b as i64));
            let sq = &x * &x;
            prop_assert!(sq.sqrt().root().is_some());
        }
    }
}
