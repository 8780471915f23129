use crate::arith::{Field, Rational};
use crate::linalg::{LinalgError, MatrixE, Subspace};

/// Decreasing, separated, exhaustive filtration recorded by its jumps.
///
/// A jump `(n, S)` means `Fil^n = S` and `Gr^n != 0`. Degrees increase
/// along the list while spaces strictly shrink; the first space is the
/// ambient space. `Fil^i` is the space of the smallest listed degree `>= i`,
/// the whole space below the first jump and zero past the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HodgeData {
    field: Field,
    ambient: usize,
    jumps: Vec<(i64, Subspace)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeChainError(pub String);

impl HodgeData {
    pub fn new(field: Field, ambient: usize, jumps: Vec<(i64, Subspace)>) -> Result<Self, HodgeChainError> {
        let err = |m: String| Err(HodgeChainError(m));
        if ambient == 0 {
            if !jumps.is_empty() {
                return err("zero-dimensional space carries no jumps".into());
            }
            return Ok(HodgeData { field, ambient, jumps });
        }
        match jumps.first() {
            None => return err("filtration has no jumps".into()),
            Some((_, s)) if !s.is_full() => return err("lowest jump must be the whole space".into()),
            _ => {}
        }
        for (n, s) in &jumps {
            if s.ambient_dim() != ambient || s.field() != field {
                return err(format!("space at degree {n} lives in the wrong ambient space"));
            }
            if s.is_zero() {
                return err(format!("space at degree {n} is zero"));
            }
        }
        for w in jumps.windows(2) {
            let ((a, sa), (b, sb)) = (&w[0], &w[1]);
            if a >= b {
                return err(format!("degrees {a}, {b} are not strictly increasing"));
            }
            if sb.dim() >= sa.dim() || !sa.contains(sb).unwrap_or(false) {
                return err(format!(
                    "space at degree {b} is not strictly inside the one at degree {a}"
                ));
            }
        }
        Ok(HodgeData { field, ambient, jumps })
    }

    /// Filtration with a single jump: `Fil^degree` is everything, `Fil^{degree+1} = 0`.
    pub fn concentrated(field: Field, ambient: usize, degree: i64) -> Self {
        if ambient == 0 {
            return HodgeData {
                field,
                ambient,
                jumps: Vec::new(),
            };
        }
        HodgeData {
            field,
            ambient,
            jumps: vec![(degree, Subspace::full(field, ambient))],
        }
    }

    pub fn jumps(&self) -> &[(i64, Subspace)] {
        &self.jumps
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn fil(&self, i: i64) -> Subspace {
        self.jumps
            .iter()
            .find(|(n, _)| *n >= i)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.field, self.ambient))
    }

    /// `(degree, dim Gr^degree)` for every jump.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        self.jumps
            .iter()
            .enumerate()
            .map(|(a, (n, s))| {
                let next = self.jumps.get(a + 1).map_or(0, |(_, t)| t.dim());
                (*n, s.dim() - next)
            })
            .collect()
    }

    /// The degree when the filtration has exactly one jump.
    pub fn concentration_degree(&self) -> Option<i64> {
        match self.jumps.as_slice() {
            [(n, _)] => Some(*n),
            _ => None,
        }
    }

    /// Hodge–Tate weights: weight `-n` with multiplicity `dim Gr^n`, ascending.
    pub fn hodge_tate_weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self
            .graded_dims()
            .into_iter()
            .flat_map(|(n, d)| std::iter::repeat_n(-n, d))
            .collect();
        w.sort_unstable();
        w
    }

    /// `sum_i i * dim Gr^i` of the whole filtration.
    pub fn t_h(&self) -> Rational {
        let total: i64 = self.graded_dims().iter().map(|(n, d)| n * *d as i64).sum();
        Rational::from_integer(total.into())
    }

    fn from_spaces(field: Field, ambient: usize, spaces: Vec<(i64, Subspace)>) -> Self {
        let mut jumps = Vec::new();
        for (a, (n, s)) in spaces.iter().enumerate() {
            let next_dim = spaces.get(a + 1).map_or(0, |(_, t)| t.dim());
            if s.dim() > next_dim {
                jumps.push((*n, s.clone()));
            }
        }
        HodgeData { field, ambient, jumps }
    }

    /// Filtration `Fil^i ∩ sub` on `sub`, in `sub`'s echelon coordinates.
    pub fn restrict(&self, sub: &Subspace) -> Result<HodgeData, LinalgError> {
        let mut spaces = Vec::with_capacity(self.jumps.len());
        for (n, s) in &self.jumps {
            spaces.push((*n, sub.relative(&s.intersect(sub)?)?));
        }
        Ok(Self::from_spaces(self.field, sub.dim(), spaces))
    }

    /// Image filtration on `ambient / sub`, in non-pivot coordinates.
    pub fn quotient(&self, sub: &Subspace) -> Result<HodgeData, LinalgError> {
        let mut spaces = Vec::with_capacity(self.jumps.len());
        for (n, s) in &self.jumps {
            spaces.push((*n, sub.project(s)?));
        }
        Ok(Self::from_spaces(self.field, self.ambient - sub.dim(), spaces))
    }

    /// Induced filtration on `top / bottom` for `bottom ⊆ top`.
    pub fn subquotient(&self, top: &Subspace, bottom: &Subspace) -> Result<HodgeData, LinalgError> {
        self.restrict(top)?.quotient(&top.relative(bottom)?)
    }

    /// Dual filtration `Fil^i(D*) = ann(Fil^{1-i} D)`, which negates jump degrees.
    pub fn dual(&self) -> HodgeData {
        let r = self.jumps.len();
        let jumps = (0..r)
            .rev()
            .map(|a| {
                let next = self
                    .jumps
                    .get(a + 1)
                    .map(|(_, s)| s.clone())
                    .unwrap_or_else(|| Subspace::zero(self.field, self.ambient));
                (-self.jumps[a].0, next.annihilator())
            })
            .collect();
        HodgeData {
            field: self.field,
            ambient: self.ambient,
            jumps,
        }
    }

    pub fn shift(&self, by: i64) -> HodgeData {
        HodgeData {
            field: self.field,
            ambient: self.ambient,
            jumps: self.jumps.iter().map(|(n, s)| (n + by, s.clone())).collect(),
        }
    }

    /// Rewrites every space under the coordinate change `v -> m v`.
    pub fn transform(&self, m: &MatrixE) -> Result<HodgeData, LinalgError> {
        let jumps = self
            .jumps
            .iter()
            .map(|(n, s)| Ok((*n, s.transform(m)?)))
            .collect::<Result<_, LinalgError>>()?;
        Ok(HodgeData {
            field: self.field,
            ambient: self.ambient,
            jumps,
        })
    }

    /// Filtration on the direct sum, `Fil^i = Fil^i(self) ⊕ Fil^i(other)`.
    pub fn direct_sum(&self, other: &HodgeData) -> HodgeData {
        let ambient = self.ambient + other.ambient;
        let mut degrees: Vec<i64> = self.jumps.iter().chain(&other.jumps).map(|(n, _)| *n).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let spaces = degrees
            .into_iter()
            .map(|n| {
                let a = self.fil(n).embed(ambient, 0);
                let b = other.fil(n).embed(ambient, self.ambient);
                (n, a.sum(&b).expect("same ambient"))
            })
            .collect();
        Self::from_spaces(self.field, ambient, spaces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Scalar};

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn line(xs: &[i64]) -> Subspace {
        let v: Vec<Scalar> = xs.iter().map(|&x| f().int(x)).collect();
        Subspace::span(f(), xs.len(), &[v]).unwrap()
    }

    /// Cohomological modular-form shape: `Fil^0 = D ⊋ Fil^1 = .. = Fil^{k-1} = L ⊋ 0`.
    fn coh(k: i64) -> HodgeData {
        HodgeData::new(f(), 2, vec![(0, Subspace::full(f(), 2)), (k - 1, line(&[1, 1]))]).unwrap()
    }

    #[test]
    fn fil_is_constant_between_jumps() {
        let h = coh(4);
        assert!(h.fil(-5).is_full());
        assert!(h.fil(0).is_full());
        assert_eq!(h.fil(1), line(&[1, 1]));
        assert_eq!(h.fil(3), line(&[1, 1]));
        assert!(h.fil(4).is_zero());
        assert_eq!(h.hodge_tate_weights(), vec![-3, 0]);
        assert_eq!(h.t_h(), int(3));
    }

    #[test]
    fn chain_violations() {
        let full = Subspace::full(f(), 2);
        assert!(HodgeData::new(f(), 2, vec![(0, line(&[1, 0]))]).is_err());
        assert!(HodgeData::new(f(), 2, vec![(1, full.clone()), (0, line(&[1, 0]))]).is_err());
        assert!(HodgeData::new(f(), 2, vec![(0, full.clone()), (1, full)]).is_err());
        assert!(HodgeData::new(f(), 2, vec![]).is_err());
    }

    #[test]
    fn dual_negates_degrees() {
        let h = coh(3);
        let d = h.dual();
        assert_eq!(d.jumps().iter().map(|j| j.0).collect::<Vec<_>>(), vec![-2, 0]);
        assert_eq!(d.jumps()[1].1, line(&[1, -1]));
        assert_eq!(d.dual(), h);
    }

    #[test]
    fn induced_filtrations() {
        let h = coh(2);
        // On the line L itself everything sits in degree 1.
        let on_l = h.restrict(&line(&[1, 1])).unwrap();
        assert_eq!(on_l.concentration_degree(), Some(1));
        // On a different line only degree 0 survives.
        let on_e0 = h.restrict(&line(&[1, 0])).unwrap();
        assert_eq!(on_e0.concentration_degree(), Some(0));
        // The quotient by e0 receives L, so it jumps at 1.
        let q = h.quotient(&line(&[1, 0])).unwrap();
        assert_eq!(q.concentration_degree(), Some(1));
        // Quotient by L sees nothing of L.
        let q = h.quotient(&line(&[1, 1])).unwrap();
        assert_eq!(q.concentration_degree(), Some(0));
    }
}
