//! Exact arithmetic in multi-quadratic fields `Q(√d₁, …, √d_k)`.
//!
//! An element is stored as one rational coefficient per basis monomial
//! `∏_{i∈S} √d_i`, with the monomial indexed by the bitmask of `S`. The real
//! embedding takes every `√d_i` positive. Zero testing is exact; sign
//! determination runs the exact zero test first and then refines a rational
//! interval enclosure until it excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest number of adjoined square roots.
pub const MAX_RADICANDS: usize = 4;
/// Radicands are capped so that monomial products stay small and validation
/// by trial division stays cheap.
pub const MAX_RADICAND: u64 = 1 << 31;

const BASE_PRECISION: u64 = 64;

struct Inner {
    radicands: Vec<u64>,
    /// `monomial_value[S] = ∏_{i∈S} d_i`, the square of monomial `S`.
    monomial_value: Vec<BigInt>,
    /// `⌊√n · 2^64⌋` for every monomial, the seed of every sign computation.
    sqrt_floor_base: Vec<BigInt>,
}

/// A validated multi-quadratic field. Cloning is cheap (shared descriptor).
#[derive(Clone)]
pub struct FieldDescriptor {
    inner: Arc<Inner>,
}

impl FieldDescriptor {
    /// Builds `Q(√d₁, …, √d_k)`.
    ///
    /// Radicands must be squarefree, pairwise distinct and multiplicatively
    /// independent modulo squares, so that the `2^k` monomials are linearly
    /// independent over `Q`.
    pub fn new(radicands: &[u64]) -> Result<Self> {
        if radicands.len() > MAX_RADICANDS {
            return Err(Error::Descriptor(format!(
                "at most {MAX_RADICANDS} radicands are supported, got {}",
                radicands.len()
            )));
        }
        let mut prime_sets: Vec<Vec<u64>> = Vec::with_capacity(radicands.len());
        for (i, &d) in radicands.iter().enumerate() {
            if d < 2 {
                return Err(Error::Descriptor(format!("radicand {d} is smaller than 2")));
            }
            if d > MAX_RADICAND {
                return Err(Error::Descriptor(format!(
                    "radicand {d} exceeds the supported maximum {MAX_RADICAND}"
                )));
            }
            if radicands[..i].contains(&d) {
                return Err(Error::Descriptor(format!("duplicate radicand {d}")));
            }
            let primes = squarefree_factor(d)
                .ok_or_else(|| Error::Descriptor(format!("radicand {d} is not squarefree")))?;
            prime_sets.push(primes);
        }
        if !independent_mod_squares(&prime_sets) {
            return Err(Error::Descriptor(format!(
                "radicands {radicands:?} are multiplicatively dependent (some product is a square)"
            )));
        }

        let n = 1usize << radicands.len();
        let mut monomial_value = Vec::with_capacity(n);
        for s in 0..n {
            let mut v = BigInt::one();
            for (i, &d) in radicands.iter().enumerate() {
                if s & (1 << i) != 0 {
                    v *= d;
                }
            }
            monomial_value.push(v);
        }
        let sqrt_floor_base = monomial_value
            .iter()
            .map(|v| (v << (2 * BASE_PRECISION as usize)).sqrt())
            .collect();
        Ok(FieldDescriptor {
            inner: Arc::new(Inner {
                radicands: radicands.to_vec(),
                monomial_value,
                sqrt_floor_base,
            }),
        })
    }

    /// The field of rational numbers.
    pub fn rational() -> Self {
        Self::new(&[]).expect("the rational field is always valid")
    }

    pub fn radicands(&self) -> &[u64] {
        &self.inner.radicands
    }

    pub fn degree(&self) -> usize {
        self.inner.monomial_value.len()
    }

    pub fn is_rational_field(&self) -> bool {
        self.inner.radicands.is_empty()
    }

    /// Square of the basis monomial with index `s`.
    pub fn monomial_square(&self, s: usize) -> &BigInt {
        &self.inner.monomial_value[s]
    }

    /// Serialization key of a monomial: `"1"` or `"r"` followed by the radicand product.
    pub fn monomial_key(&self, s: usize) -> String {
        if s == 0 {
            "1".to_string()
        } else {
            format!("r{}", self.inner.monomial_value[s])
        }
    }

    pub fn monomial_from_key(&self, key: &str) -> Option<usize> {
        if key == "1" {
            return Some(0);
        }
        let digits = key.strip_prefix('r')?;
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return None;
        }
        let value: BigInt = digits.parse().ok()?;
        (1..self.degree()).find(|&s| self.inner.monomial_value[s] == value)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.rational_element(Rational::one())
    }

    pub fn int(&self, v: i64) -> FieldElement {
        self.rational_element(Rational::from_integer(v.into()))
    }

    pub fn ratio(&self, num: i64, den: i64) -> FieldElement {
        self.rational_element(Rational::new(num.into(), den.into()))
    }

    pub fn rational_element(&self, q: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    /// `√d` for a radicand `d` of this field, or a product of them.
    pub fn sqrt(&self, n: u64) -> Option<FieldElement> {
        let s = self.monomial_from_key(&format!("r{n}"))?;
        Some(self.monomial(s, Rational::one()))
    }

    pub fn monomial(&self, s: usize, coeff: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[s] = coeff;
        e
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<FieldElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::Descriptor(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// Enclosure `[lo, hi]` of `√(monomial s)` with `hi - lo = 2^-bits`
    /// (or a point interval for the unit monomial).
    fn sqrt_bounds(&self, s: usize, bits: u64) -> (Rational, Rational) {
        if s == 0 {
            return (Rational::one(), Rational::one());
        }
        let floor = if bits == BASE_PRECISION {
            self.inner.sqrt_floor_base[s].clone()
        } else {
            (&self.inner.monomial_value[s] << (2 * bits as usize)).sqrt()
        };
        let scale = BigInt::one() << bits as usize;
        let lo = Rational::new(floor.clone(), scale.clone());
        let hi = Rational::new(floor + 1, scale);
        (lo, hi)
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.radicands == other.inner.radicands
    }
}

impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational_field() {
            write!(f, "Q")
        } else {
            write!(f, "Q(")?;
            for (i, d) in self.radicands().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "√{d}")?;
            }
            write!(f, ")")
        }
    }
}

/// Prime factors of a squarefree `d`, or `None` if `d` has a square factor.
fn squarefree_factor(mut d: u64) -> Option<Vec<u64>> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return None;
            }
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if d > 1 {
        primes.push(d);
    }
    Some(primes)
}

/// Linear independence over GF(2) of the exponent vectors of the radicands.
fn independent_mod_squares(prime_sets: &[Vec<u64>]) -> bool {
    let k = prime_sets.len();
    for mask in 1usize..(1 << k) {
        let mut odd: Vec<u64> = Vec::new();
        for (i, primes) in prime_sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for p in primes {
                    if let Some(pos) = odd.iter().position(|q| q == p) {
                        odd.swap_remove(pos);
                    } else {
                        odd.push(*p);
                    }
                }
            }
        }
        if odd.is_empty() {
            return false;
        }
    }
    true
}

/// An exact element of a multi-quadratic field.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldDescriptor,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Coefficients indexed by monomial bitmask.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True iff every non-unit monomial coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The integer value, when the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        let q = self.to_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    /// Moves a rational element into `field`, or checks that `self` already lives there.
    pub fn lift_to(&self, field: &FieldDescriptor) -> Option<FieldElement> {
        if &self.field == field {
            Some(self.clone())
        } else {
            self.to_rational().map(|q| field.rational_element(q))
        }
    }

    /// Image under the automorphism `√d_i ↦ -√d_i`.
    pub fn conjugate(&self, i: usize) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, c)| if s & (1 << i) != 0 { -c } else { c.clone() })
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn abs(&self) -> FieldElement {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse by successive conjugation: multiplying by the
    /// conjugate over each radicand in turn leaves a rational denominator.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        if let Some(q) = self.to_rational() {
            return Ok(self.field.rational_element(q.recip()));
        }
        let mut num = self.field.one();
        let mut den = self.clone();
        for i in 0..self.field.radicands().len() {
            let c = den.conjugate(i);
            if c.coeffs.iter().zip(&den.coeffs).all(|(a, b)| a == b) {
                continue;
            }
            num = &num * &c;
            den = &den * &c;
        }
        let d = den
            .to_rational()
            .expect("norm of a multi-quadratic element is rational");
        Ok(num.scale(&d.recip()))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            if b.is_zero() {
                return Err(Error::Arithmetic("division by zero".into()));
            }
            let field = pick_field(&self.field, &other.field);
            return Ok(field.rational_element(a / b));
        }
        Ok(self * &other.inv()?)
    }

    /// Rational interval `[lo, hi]` enclosing the real value, evaluated with
    /// square-root enclosures of `bits` fractional bits.
    fn enclosure(&self, bits: u64) -> (Rational, Rational) {
        let mut lo = self.coeffs[0].clone();
        let mut hi = lo.clone();
        for (s, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let (l, h) = self.field.sqrt_bounds(s, bits);
            if c.is_positive() {
                lo += c * l;
                hi += c * h;
            } else {
                lo += c * h;
                hi += c * l;
            }
        }
        (lo, hi)
    }

    /// Sign of the real embedding. Exact: zero is detected symbolically and
    /// nonzero values are refined until the enclosure excludes zero.
    pub fn sign(&self) -> i32 {
        if self.is_rational() {
            return sign_of(&self.coeffs[0]);
        }
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.float_sign() {
            return s;
        }
        let mut bits = BASE_PRECISION;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Sign decided in double precision when the value is far from zero
    /// relative to the accumulated rounding error.
    fn float_sign(&self) -> Option<i32> {
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() {
                return None;
            }
            let root = self.field.monomial_square(s).to_f64()?.sqrt();
            let term = cf * root;
            value += term;
            magnitude += term.abs();
        }
        if !magnitude.is_finite() || magnitude == 0.0 {
            return None;
        }
        // Each term carries a few ulps of relative error; the margin is far wider.
        if value.abs() > magnitude * 1e-9 && magnitude > 1e-250 {
            Some(if value > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    /// Interval of width at most `2^-precision` containing the real value.
    pub fn approx(&self, precision: u64) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.coeffs[0].clone(), self.coeffs[0].clone());
        }
        let total: Rational = self.coeffs[1..].iter().map(|c| c.abs()).sum();
        let bound = total.ceil().to_integer();
        let bits = precision.max(1) + bound.bits() + 1;
        self.enclosure(bits)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.approx(60);
        ((lo + hi) / Rational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.to_rational() {
            return q.floor().to_integer();
        }
        // An irrational value is never an integer, so refinement terminates.
        let mut bits = BASE_PRECISION;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let (fl, fh) = (lo.floor().to_integer(), hi.floor().to_integer());
            if fl == fh && !hi.is_integer() {
                return fl;
            }
            bits *= 2;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Exact comparison of real values.
    pub fn cmp_exact(&self, other: &FieldElement) -> Ordering {
        if let (Some(a), Some(b)) = (
            self.is_rational().then_some(&self.coeffs[0]),
            other.is_rational().then_some(&other.coeffs[0]),
        ) {
            return a.cmp(b);
        }
        (self - other).sign().cmp(&0)
    }

    pub fn min_exact<'a>(&'a self, other: &'a FieldElement) -> &'a FieldElement {
        if self.cmp_exact(other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn max_exact<'a>(&'a self, other: &'a FieldElement) -> &'a FieldElement {
        if self.cmp_exact(other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// `(self + other) / 2`.
    pub fn midpoint(&self, other: &FieldElement) -> FieldElement {
        (self + other).scale(&Rational::new(1.into(), 2.into()))
    }
}

fn sign_of(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Common field of two operands; a rational-field operand adopts the other's field.
fn pick_field(a: &FieldDescriptor, b: &FieldDescriptor) -> FieldDescriptor {
    if a == b || b.is_rational_field() {
        a.clone()
    } else if a.is_rational_field() {
        b.clone()
    } else {
        panic!("arithmetic between elements of different fields {a:?} and {b:?}")
    }
}

fn aligned(a: &FieldElement, b: &FieldElement) -> (FieldDescriptor, Vec<Rational>, Vec<Rational>) {
    let field = pick_field(&a.field, &b.field);
    let widen = |e: &FieldElement| {
        if e.field == field {
            e.coeffs.clone()
        } else {
            let mut c = vec![Rational::zero(); field.degree()];
            c[0] = e.coeffs[0].clone();
            c
        }
    };
    let (ca, cb) = (widen(a), widen(b));
    (field, ca, cb)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.coeffs == other.coeffs;
        }
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        if self.field == rhs.field {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return FieldElement {
                field: self.field.clone(),
                coeffs,
            };
        }
        let (field, a, b) = aligned(self, rhs);
        FieldElement {
            field,
            coeffs: a.into_iter().zip(b).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        if self.field == rhs.field {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect();
            return FieldElement {
                field: self.field.clone(),
                coeffs,
            };
        }
        let (field, a, b) = aligned(self, rhs);
        FieldElement {
            field,
            coeffs: a.into_iter().zip(b).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        if self.is_rational() {
            return rhs
                .scale(&self.coeffs[0])
                .lift_field(&pick_field(&self.field, &rhs.field));
        }
        if rhs.is_rational() {
            return self
                .scale(&rhs.coeffs[0])
                .lift_field(&pick_field(&self.field, &rhs.field));
        }
        let (field, a, b) = aligned(self, rhs);
        let n = field.degree();
        let mut out = vec![Rational::zero(); n];
        for (s, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (t, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                // √(n_S)·√(n_T) = n_{S∩T} · √(n_{S xor T})
                let mut term = ca * cb;
                let common = s & t;
                if common != 0 {
                    term *= Rational::from_integer(field.monomial_square(common).clone());
                }
                out[s ^ t] += term;
            }
        }
        FieldElement { field, coeffs: out }
    }
}

impl FieldElement {
    fn lift_field(self, field: &FieldDescriptor) -> FieldElement {
        if &self.field == field {
            self
        } else {
            let mut coeffs = vec![Rational::zero(); field.degree()];
            coeffs[0] = self.coeffs[0].clone();
            FieldElement {
                field: field.clone(),
                coeffs,
            }
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            if s == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "√{}", self.field.monomial_square(s))?;
            } else {
                write!(f, "{a}·√{}", self.field.monomial_square(s))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `gcd` of two integers, nonnegative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
