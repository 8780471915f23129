use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ArithError, Polynomial, Rational, Valuation};

/// Multiset of rational slopes, strictly increasing, each with positive
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SlopeMultiset(Vec<(Rational, usize)>);

impl SlopeMultiset {
    pub fn empty() -> Self {
        SlopeMultiset(Vec::new())
    }

    /// Collects slopes with multiplicities, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let mut v: Vec<(Rational, usize)> = pairs.into_iter().filter(|(_, m)| *m > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, usize)> = Vec::with_capacity(v.len());
        for (s, m) in v {
            match out.last_mut() {
                Some((last, lm)) if *last == s => *lm += m,
                _ => out.push((s, m)),
            }
        }
        SlopeMultiset(out)
    }

    pub fn from_values(values: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_pairs(values.into_iter().map(|s| (s, 1)))
    }

    pub fn pairs(&self) -> &[(Rational, usize)] {
        &self.0
    }

    /// Every slope repeated by its multiplicity, ascending.
    pub fn expanded(&self) -> Vec<Rational> {
        self.0
            .iter()
            .flat_map(|(s, m)| std::iter::repeat_n(s.clone(), *m))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.0.iter().map(|(_, m)| m).sum()
    }

    /// Sum of slopes counted with multiplicity.
    pub fn weighted_sum(&self) -> Rational {
        self.0
            .iter()
            .map(|(s, m)| s * Rational::from_integer(BigInt::from(*m)))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn contains(&self, slope: &Rational) -> bool {
        self.0.iter().any(|(s, _)| s == slope)
    }

    pub fn union(&self, other: &SlopeMultiset) -> SlopeMultiset {
        Self::from_pairs(self.0.iter().chain(&other.0).cloned())
    }

    pub fn negated(&self) -> SlopeMultiset {
        Self::from_pairs(self.0.iter().map(|(s, m)| (-s, *m)))
    }

    pub fn shifted(&self, by: &Rational) -> SlopeMultiset {
        Self::from_pairs(self.0.iter().map(|(s, m)| (s + by, *m)))
    }

    pub fn is_pure(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Display for SlopeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *m == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s} x{m}")?;
            }
        }
        f.write_str("}")
    }
}

/// Valuations of the roots of a monic polynomial with nonzero constant term,
/// read off the lower convex hull of `(i, v(a_i))`.
pub fn newton_slopes(poly: &Polynomial) -> Result<SlopeMultiset, ArithError> {
    if !poly.is_monic() {
        return Err(ArithError::NotMonic);
    }
    if poly.coeff(0).is_zero() {
        return Err(ArithError::ZeroConstantTerm);
    }
    let points: Vec<(i64, Rational)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.valuation() {
            Valuation::Finite(v) => Some((i as i64, v)),
            Valuation::Infinite => None,
        })
        .collect();

    // Monotone chain, lower hull only; points arrive sorted by abscissa.
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly below the chord.
            let cross = (y2 - y1) * Rational::from_integer(BigInt::from(pt.0 - x1))
                - (&pt.1 - y1) * Rational::from_integer(BigInt::from(x2 - x1));
            if cross >= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    Ok(SlopeMultiset::from_pairs(hull.windows(2).map(|w| {
        let (i, vi) = &w[0];
        let (j, vj) = &w[1];
        let width = j - i;
        ((vi - vj) / Rational::from_integer(BigInt::from(width)), width as usize)
    })))
}
