use std::fmt;

use super::{ArithError, Field, Scalar};

/// Dense univariate polynomial over `E_e`, coefficients lowest degree first.
/// The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self, ArithError> {
        for c in &coeffs {
            field.check(&c.field())?;
        }
        Ok(Self::trimmed(field, coeffs))
    }

    fn trimmed(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: vec![field.one()],
        }
    }

    /// `X - root`.
    pub fn linear(root: &Scalar) -> Self {
        let f = root.field();
        Polynomial {
            field: f,
            coeffs: vec![-root, f.one()],
        }
    }

    /// `X^n`.
    pub fn monomial(field: Field, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        Polynomial { field, coeffs }
    }

    /// Product of `X - r` over the given roots.
    pub fn from_roots<'a>(field: Field, roots: impl IntoIterator<Item = &'a Scalar>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(field), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::trimmed(self.field, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::trimmed(self.field, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Self::trimmed(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Scales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), ArithError> {
        let dd = divisor.degree().ok_or(ArithError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + shift] = &rem[i + shift] - &(&c * d);
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        Ok((Self::trimmed(self.field, quot), Self::trimmed(self.field, rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic polynomial whose roots are the inverses of this one's:
    /// `X^n f(1/X) / f(0)`.
    pub fn reciprocal(&self) -> Result<Polynomial, ArithError> {
        let c0 = self.coeffs.first().ok_or(ArithError::ZeroConstantTerm)?;
        if c0.is_zero() {
            return Err(ArithError::ZeroConstantTerm);
        }
        let inv = c0.inv()?;
        let rev = self.coeffs.iter().rev().map(|c| c * &inv).collect();
        Ok(Self::trimmed(self.field, rev))
    }

    /// Monic polynomial whose roots are `c` times this one's: `c^n f(X/c)`.
    pub fn scale_roots(&self, c: &Scalar) -> Polynomial {
        let n = self.coeffs.len();
        let mut pow = self.field.one();
        let mut out = vec![self.field.zero(); n];
        for i in (0..n).rev() {
            out[i] = &self.coeffs[i] * &pow;
            pow = &pow * c;
        }
        Self::trimmed(self.field, out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{i}")?,
            }
        }
        Ok(())
    }
}
