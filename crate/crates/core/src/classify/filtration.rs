use rayon::prelude::*;

use crate::arith::Rational;
use crate::linalg::{Flag, Subspace};
use crate::phimod::{FilteredPhiNModule, GradedPiece, PhiModError};

use super::lattice::StableLattice;
use super::ClassifyError;

/// A stable flag `W_0 = D ⊋ W_1 ⊋ … ⊋ W_r = 0` whose graded `W_j / W_{j+1}`
/// carries weight `weights[j]`, strictly increasing in `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedFiltration {
    flag: Flag,
    weights: Vec<i64>,
}

impl IndexedFiltration {
    pub fn new(flag: Flag, weights: Vec<i64>) -> Result<Self, ClassifyError> {
        if weights.len() != flag.length() {
            return Err(ClassifyError::InvalidFiltration(format!(
                "{} weights for a flag with {} gradeds",
                weights.len(),
                flag.length()
            )));
        }
        if weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ClassifyError::InvalidFiltration(
                "weights must increase strictly with depth".into(),
            ));
        }
        Ok(IndexedFiltration { flag, weights })
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// `F^n`: the member `W_j` for the smallest `j` with `n_j >= n`.
    pub fn f(&self, n: i64) -> &Subspace {
        let chain = self.flag.chain();
        let j = self.weights.iter().position(|&w| w >= n).unwrap_or(self.weights.len());
        &chain[j]
    }

    /// `(weight, dim Gr)` per graded.
    pub fn multiplicities(&self) -> Vec<(i64, usize)> {
        let chain = self.flag.chain();
        self.weights
            .iter()
            .enumerate()
            .map(|(j, &w)| (w, chain[j].dim() - chain[j + 1].dim()))
            .collect()
    }

    /// Weight with its multiplicity, as a sorted list.
    pub fn weight_multiset(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .multiplicities()
            .into_iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w, m))
            .collect();
        out.sort_unstable();
        out
    }

    /// Same flag with every weight shifted by `n`.
    pub fn shifted(&self, n: i64) -> IndexedFiltration {
        IndexedFiltration {
            flag: self.flag.clone(),
            weights: self.weights.iter().map(|w| w + n).collect(),
        }
    }

    pub fn gradeds(&self, d: &FilteredPhiNModule) -> Result<Vec<GradedPiece>, ClassifyError> {
        let chain = self.flag.chain();
        self.weights
            .iter()
            .enumerate()
            .map(|(j, &w)| {
                Ok(GradedPiece {
                    weight: w,
                    data: d.subquotient(&chain[j], &chain[j + 1])?,
                })
            })
            .collect()
    }
}

/// Weight of a graded when it qualifies: zero induced monodromy and Hodge
/// filtration concentrated in one degree `-n`.
fn graded_weight(d: &FilteredPhiNModule, top: &Subspace, bottom: &Subspace) -> Result<Option<i64>, PhiModError> {
    let piece = d.subquotient(top, bottom)?;
    if !piece.monodromy.is_zero() {
        return Ok(None);
    }
    Ok(piece.hodge.concentration_degree().map(|n| -n))
}

/// Rechecks every defining condition of a triangulordinary filtration.
pub fn check_triangulordinary(d: &FilteredPhiNModule, f: &IndexedFiltration) -> Result<(), ClassifyError> {
    let chain = f.flag.chain();
    if chain[0].ambient_dim() != d.dim() || chain[0].field() != d.field() {
        return Err(ClassifyError::InvalidFiltration(
            "flag lives in a different space".into(),
        ));
    }
    for (j, w) in chain.iter().enumerate() {
        if !d.is_stable(w).map_err(PhiModError::from)? {
            return Err(ClassifyError::InvalidFiltration(format!(
                "member {j} is not (phi, N)-stable"
            )));
        }
    }
    for (j, &n) in f.weights.iter().enumerate() {
        match graded_weight(d, &chain[j], &chain[j + 1])? {
            Some(w) if w == n => {}
            _ => {
                return Err(ClassifyError::InvalidFiltration(format!(
                    "graded {j} is not crystalline with all weights {n}"
                )))
            }
        }
    }
    Ok(())
}

/// All triangulordinary filtrations, in canonical order.
///
/// Weights are forced by the induced Hodge degree and increase strictly,
/// so no two valid flags differ by a refinement inside one weight.
pub(crate) fn triangulordinary_in(
    d: &FilteredPhiNModule,
    lattice: &StableLattice,
) -> Result<Vec<IndexedFiltration>, ClassifyError> {
    let members = lattice.members();
    let full = members.iter().position(|(_, s)| s.is_full()).expect("full member");
    let first: Vec<(usize, i64)> = lattice
        .below(full)
        .into_iter()
        .map(|j| Ok(graded_weight(d, &members[full].1, &members[j].1)?.map(|w| (j, w))))
        .collect::<Result<Vec<_>, PhiModError>>()?
        .into_iter()
        .flatten()
        .collect();
    let found: Vec<Vec<(Vec<usize>, Vec<i64>)>> = first
        .par_iter()
        .map(|&(j, w)| {
            let mut out = Vec::new();
            let mut path = vec![full, j];
            let mut weights = vec![w];
            extend(d, lattice, &mut path, &mut weights, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_, PhiModError>>()?;
    let mut result: Vec<IndexedFiltration> = found
        .into_iter()
        .flatten()
        .map(|(path, weights)| {
            let chain = path.iter().map(|&i| members[i].1.clone()).collect();
            IndexedFiltration {
                flag: Flag::new(chain).expect("strict chain"),
                weights,
            }
        })
        .collect();
    result.sort();
    Ok(result)
}

fn extend(
    d: &FilteredPhiNModule,
    lattice: &StableLattice,
    path: &mut Vec<usize>,
    weights: &mut Vec<i64>,
    out: &mut Vec<(Vec<usize>, Vec<i64>)>,
) -> Result<(), PhiModError> {
    let members = lattice.members();
    let last = *path.last().expect("nonempty");
    if members[last].1.is_zero() {
        out.push((path.clone(), weights.clone()));
        return Ok(());
    }
    let floor = *weights.last().expect("nonempty");
    for j in lattice.below(last) {
        if let Some(w) = graded_weight(d, &members[last].1, &members[j].1)? {
            if w > floor {
                path.push(j);
                weights.push(w);
                extend(d, lattice, path, weights, out)?;
                weights.pop();
                path.pop();
            }
        }
    }
    Ok(())
}

/// Every graded of weight `n` has pure slope `-n`.
pub fn is_ordinary(d: &FilteredPhiNModule, f: &IndexedFiltration) -> Result<bool, ClassifyError> {
    check_triangulordinary(d, f)?;
    Ok(f.gradeds(d)?.iter().all(|g| {
        let slopes = g.data.slopes();
        let target = Rational::from_integer((-g.weight).into());
        slopes.pairs().iter().all(|(s, _)| *s == target)
    }))
}

/// No graded of weight `n <= 0` has slope `-1`. Returns the verdict and the
/// offending weights.
pub fn slope_hypothesis(d: &FilteredPhiNModule, f: &IndexedFiltration) -> Result<(bool, Vec<i64>), ClassifyError> {
    check_triangulordinary(d, f)?;
    let minus_one = Rational::from_integer((-1).into());
    let offending: Vec<i64> = f
        .gradeds(d)?
        .iter()
        .filter(|g| g.weight <= 0 && g.data.slopes().contains(&minus_one))
        .map(|g| g.weight)
        .collect();
    Ok((offending.is_empty(), offending))
}
