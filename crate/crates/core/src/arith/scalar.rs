use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Rational};

/// Parameters `(p, e)` of the coefficient field `Q[u]/(u^e - p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    prime: u64,
    ramification: u32,
}

impl Field {
    pub fn new(prime: u64, ramification: u32) -> Result<Self, ArithError> {
        let bad = |reason| ArithError::InvalidField {
            prime,
            ramification,
            reason,
        };
        if !is_prime(prime) {
            return Err(bad("p must be prime"));
        }
        if ramification == 0 {
            return Err(bad("e must be at least 1"));
        }
        Ok(Field { prime, ramification })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_rational(*self, Rational::zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_rational(*self, Rational::one())
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_rational(*self, Rational::from_integer(BigInt::from(n)))
    }

    /// `p^n` as an element of the field.
    pub fn p_pow(&self, n: i64) -> Scalar {
        Scalar::from_rational(*self, p_power(self.prime, n))
    }

    /// `u^k` reduced using `u^e = p`.
    pub fn u_pow(&self, k: i64) -> Scalar {
        let e = self.ramification as i64;
        let (q, r) = k.div_mod_floor(&e);
        let mut coeffs = vec![Rational::zero(); self.ramification as usize];
        coeffs[r as usize] = p_power(self.prime, q);
        Scalar { field: *self, coeffs }
    }

    pub fn check(&self, other: &Field) -> Result<(), ArithError> {
        if self == other {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(
                self.prime,
                self.ramification,
                other.prime,
                other.ramification,
            ))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn p_power(p: u64, n: i64) -> Rational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, n.unsigned_abs() as usize);
    if n >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Exact `p`-adic valuation; `Infinite` is the valuation of zero and sorts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a rational number, `None` for zero.
pub fn rational_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_valuation(x.numer(), &p) - int_valuation(x.denom(), &p))
}

/// Element `c_0 + c_1 u + ... + c_{e-1} u^{e-1}` of `Q[u]/(u^e - p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    field: Field,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn from_rational(field: Field, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.ramification as usize];
        coeffs[0] = c;
        Scalar { field, coeffs }
    }

    /// Reduces an arbitrary-length coefficient list modulo `u^e - p`.
    pub fn from_coeffs(field: Field, coeffs: Vec<Rational>) -> Self {
        let e = field.ramification as usize;
        let p = Rational::from_integer(BigInt::from(field.prime));
        let mut out = vec![Rational::zero(); e];
        for (i, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scale = num_traits::pow(p.clone(), i / e);
            out[i % e] += c * scale;
        }
        Scalar { field, coeffs: out }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// `min_i (v_p(c_i) + i/e)`. The candidate terms have distinct fractional
    /// parts, so the minimum is attained exactly once and there is no
    /// cancellation.
    pub fn valuation(&self) -> Valuation {
        let e = BigInt::from(self.field.ramification);
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                rational_valuation(c, self.field.prime)
                    .map(|v| Rational::from_integer(BigInt::from(v)) + Rational::new(BigInt::from(i), e.clone()))
            })
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.field.check(&other.field)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.field.check(&other.field)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.field.check(&other.field)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.field.check(&other.field)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// lift of `self` and `u^e - p` in `Q[u]`.
    pub fn inv(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(self.field, r.recip()));
        }
        let e = self.field.ramification as usize;
        let mut modulus = vec![Rational::zero(); e + 1];
        modulus[0] = -Rational::from_integer(BigInt::from(self.field.prime));
        modulus[e] = Rational::one();
        let (g, s) = qpoly::ext_gcd(qpoly::trim(self.coeffs.clone()), modulus);
        // Irreducibility of u^e - p forces a constant gcd.
        debug_assert_eq!(g.len(), 1);
        let g0 = g[0].clone();
        let coeffs = s.into_iter().map(|c| c / g0.clone()).collect();
        Ok(Scalar::from_coeffs(self.field, coeffs))
    }

    pub fn pow(&self, n: i64) -> Result<Scalar, ArithError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Scalar {
            field: self.field,
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let e = self.field.ramification as usize;
        let mut prod = vec![Rational::zero(); 2 * e - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Scalar::from_coeffs(self.field, prod)
    }

    fn neg_ref(&self) -> Scalar {
        Scalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn assert_same(a: &Scalar, b: &Scalar) {
    assert_eq!(a.field, b.field, "scalar field mismatch");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Canonical literal form, readable back by [`super::scalar_parse`]:
/// the constant term first, then `c*u^i` terms in increasing `i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "u^{i}")?;
            } else {
                write!(f, "{mag}*u^{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Dense polynomials over `Q`, low degree first; only what inversion needs.
mod qpoly {
    use num_traits::Zero;

    use super::Rational;

    pub fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
        while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn is_zero(a: &[Rational]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn sub_scaled(a: &[Rational], b: &[Rational], c: &Rational, shift: usize) -> Vec<Rational> {
        let mut out = a.to_vec();
        if out.len() < b.len() + shift {
            out.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            out[i + shift] -= c * bi;
        }
        trim(out)
    }

    fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
        while !is_zero(&r) && r.len() > db {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            q[shift] = c.clone();
            r = sub_scaled(&r, b, &c, shift);
        }
        (trim(q), r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        sub_scaled(a, b, &Rational::from_integer(1.into()), 0)
    }

    /// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` up to scaling.
    pub fn ext_gcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (a, b);
        let (mut s0, mut s1) = (vec![Rational::from_integer(1.into())], vec![Rational::zero()]);
        while !is_zero(&r1) {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}
