use std::cmp::Ordering;
use std::fmt;

use crate::arith::{Field, Scalar};

use super::{LinalgError, MatrixE};

/// Subspace of `E_e^n` stored by its reduced row echelon basis. The basis is
/// unique, so equal subspaces compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::echelonize(&MatrixE::identity(field, ambient))
    }

    /// Row space of `m`.
    pub fn echelonize(m: &MatrixE) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            pivots,
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        for v in vectors {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        Ok(Self::echelonize(&MatrixE::from_rows(field, vectors.to_vec())?))
    }

    /// Span of the standard basis vectors at the given coordinates.
    pub fn coordinate(field: Field, ambient: usize, coords: &[usize]) -> Self {
        let vectors: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|&c| {
                let mut v = vec![field.zero(); ambient];
                v[c] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient, &vectors).expect("coordinates within ambient")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns not occupied by a pivot; they index the canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn basis_matrix(&self) -> MatrixE {
        if self.basis.is_empty() {
            return MatrixE::zeros(self.field, 0, self.ambient);
        }
        MatrixE::from_rows(self.field, self.basis.clone()).expect("uniform basis")
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        self.field.check(&other.field)?;
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// `v` minus its component along the basis, read off at pivot columns.
    /// Zero exactly when `v` lies in the subspace; otherwise vanishes on pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = &*x - &(&c * b);
                }
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&pc| v[pc].clone()).collect()
    }

    /// Coordinates of the class of `v` in `ambient / self`, indexed by non-pivot columns.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &rows)
    }

    /// Vectors of the dual space (in dual coordinates) vanishing on `self`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.field, self.ambient);
        }
        let ker = self.basis_matrix().kernel();
        Subspace::span(self.field, self.ambient, &ker).expect("kernel vectors have ambient length")
    }

    /// Intersection as the annihilator of the sum of annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn image(&self, m: &MatrixE) -> Result<Subspace, LinalgError> {
        self.check_operator(m)?;
        let imgs: Vec<Vec<Scalar>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(self.field, m.rows(), &imgs)
    }

    fn check_operator(&self, m: &MatrixE) -> Result<(), LinalgError> {
        self.field.check(&m.field())?;
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        Ok(())
    }

    pub fn is_invariant(&self, m: &MatrixE) -> Result<bool, LinalgError> {
        self.check_operator(m)?;
        Ok(self.basis.iter().all(|v| self.contains_vector(&m.apply(v))))
    }

    /// Matrix of `m` restricted to `self`, in the echelon basis.
    pub fn restriction(&self, m: &MatrixE) -> Result<MatrixE, LinalgError> {
        if !self.is_invariant(m)? {
            return Err(LinalgError::NotInvariant);
        }
        let k = self.dim();
        let mut out = MatrixE::zeros(self.field, k, k);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, c) in self.coords_of(&m.apply(v)).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// Matrix of the map induced by `m` on `ambient / self`, in the basis of
    /// standard vectors at non-pivot columns.
    pub fn quotient_map(&self, m: &MatrixE) -> Result<MatrixE, LinalgError> {
        if !self.is_invariant(m)? {
            return Err(LinalgError::NotInvariant);
        }
        let comp = self.non_pivots();
        let mut out = MatrixE::zeros(self.field, comp.len(), comp.len());
        for (j, &c) in comp.iter().enumerate() {
            for (i, x) in self.quotient_coords(&m.column(c)).into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    /// `(restriction, quotient)` of an operator preserving `self`.
    pub fn induced_maps(&self, m: &MatrixE) -> Result<(MatrixE, MatrixE), LinalgError> {
        Ok((self.restriction(m)?, self.quotient_map(m)?))
    }

    /// A subspace of `self`, rewritten in `self`'s echelon coordinates.
    pub fn relative(&self, inner: &Subspace) -> Result<Subspace, LinalgError> {
        if !self.contains(inner)? {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim(),
                found: inner.dim(),
            });
        }
        let rows: Vec<Vec<Scalar>> = inner.basis.iter().map(|v| self.coords_of(v)).collect();
        Subspace::span(self.field, self.dim(), &rows)
    }

    /// Image of a subspace in `ambient / self` (non-pivot coordinates).
    pub fn project(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<Scalar>> = other.basis.iter().map(|v| self.quotient_coords(v)).collect();
        Subspace::span(self.field, self.ambient - self.dim(), &rows)
    }

    /// Embeds into a larger ambient space at coordinate offset `offset`.
    pub fn embed(&self, ambient: usize, offset: usize) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|v| {
                let mut w = vec![self.field.zero(); ambient];
                w[offset..offset + self.ambient].clone_from_slice(v);
                w
            })
            .collect();
        Subspace::span(self.field, ambient, &rows).expect("embedding fits")
    }

    /// Applies a coordinate change `v -> m v` to every basis vector.
    pub fn transform(&self, m: &MatrixE) -> Result<Subspace, LinalgError> {
        self.image(m)
    }
}

/// Canonical order: by dimension, then lexicographically on echelon bases.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field, self.ambient, self.basis.len(), &self.basis).cmp(&(
            other.field,
            other.ambient,
            other.basis.len(),
            &other.basis,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("span{")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// Strictly decreasing chain of subspaces from the ambient space down to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    chain: Vec<Subspace>,
}

impl Flag {
    pub fn new(chain: Vec<Subspace>) -> Result<Self, LinalgError> {
        let ok = chain.first().is_some_and(Subspace::is_full)
            && chain.last().is_some_and(Subspace::is_zero)
            && chain
                .windows(2)
                .all(|w| w[0].dim() > w[1].dim() && w[0].contains(&w[1]).unwrap_or(false));
        if ok {
            Ok(Flag { chain })
        } else {
            Err(LinalgError::NotAFlag)
        }
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    /// Number of steps, i.e. gradeds.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.chain.windows(2).all(|w| w[0].dim() == w[1].dim() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f().int(x)).collect()
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        Subspace::span(f(), vs[0].len(), &vs.iter().map(|x| v(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn echelon_examples() {
        assert!(Subspace::echelonize(&MatrixE::identity(f(), 2)).is_full());
        let s = span(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 1])]);
        assert_eq!(span(&[&[0, 1], &[1, 0]]).basis(), &[v(&[1, 0]), v(&[0, 1])]);
        assert!(Subspace::echelonize(&MatrixE::zeros(f(), 2, 3)).is_zero());
    }

    #[test]
    fn lattice_operations() {
        let a = span(&[&[1, 1], &[1, 0]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let x = span(&[&[1, 0]]);
        let y = span(&[&[0, 1]]);
        assert!(x.sum(&y).unwrap().is_full());
        assert_eq!(a.intersect(&y).unwrap(), y);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert!(a.contains(&x).unwrap());
        assert!(!x.contains(&y).unwrap());
        let other = Subspace::zero(f(), 3);
        assert!(x.sum(&other).is_err());
    }

    #[test]
    fn invariance() {
        let fl = f();
        let d = MatrixE::diagonal(fl, &[fl.one(), fl.p_pow(-1)]);
        assert!(Subspace::zero(fl, 2).is_invariant(&d).unwrap());
        assert!(span(&[&[1, 0]]).is_invariant(&d).unwrap());
        assert!(!span(&[&[1, 1]]).is_invariant(&d).unwrap());
    }

    #[test]
    fn induced_on_eigenline_and_full() {
        let fl = f();
        let lam = fl.int(2);
        let mu = fl.p_pow(-1);
        let d = MatrixE::diagonal(fl, &[lam.clone(), mu.clone()]);
        let (r, q) = span(&[&[1, 0]]).induced_maps(&d).unwrap();
        assert_eq!(r, MatrixE::diagonal(fl, &[lam]));
        assert_eq!(q, MatrixE::diagonal(fl, &[mu]));
        let (r, q) = Subspace::full(fl, 2).induced_maps(&d).unwrap();
        assert_eq!(r, d);
        assert_eq!((q.rows(), q.cols()), (0, 0));
    }

    #[test]
    fn induced_nilpotent() {
        // basis (e_0, e_-1), N e_0 = e_-1
        let fl = f();
        let n = MatrixE::from_rows(fl, vec![v(&[0, 0]), v(&[1, 0])]).unwrap();
        let s = span(&[&[0, 1]]);
        let (r, q) = s.induced_maps(&n).unwrap();
        assert!(r.is_zero() && r.rows() == 1);
        assert!(q.is_zero() && q.rows() == 1);
        assert_eq!(span(&[&[1, 0]]).induced_maps(&n), Err(LinalgError::NotInvariant));
    }

    #[test]
    fn flags() {
        let fl = f();
        let full = Subspace::full(fl, 2);
        let line = span(&[&[1, 0]]);
        let zero = Subspace::zero(fl, 2);
        let flag = Flag::new(vec![full.clone(), line.clone(), zero.clone()]).unwrap();
        assert!(flag.is_complete());
        assert_eq!(flag.length(), 2);
        assert!(Flag::new(vec![full.clone(), full, zero]).is_err());
        assert!(Flag::new(vec![line, Subspace::zero(fl, 2)]).is_err());
    }
}
