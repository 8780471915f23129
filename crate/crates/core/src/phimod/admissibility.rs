use rayon::prelude::*;

use crate::classify::stable_subspaces;
use crate::linalg::Subspace;

use super::{FilteredPhiNModule, PhiModError};

/// Outcome of the weak admissibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakAdmissibility {
    pub admissible: bool,
    /// First violating stable subspace in canonical order; the full space
    /// when the endpoints already disagree.
    pub witness: Option<Subspace>,
    pub endpoint_failure: bool,
}

/// Newton on or above Hodge for every `(φ, N)`-stable subspace, with equal
/// endpoints.
pub fn is_weakly_admissible(d: &FilteredPhiNModule) -> Result<WeakAdmissibility, PhiModError> {
    let full = Subspace::full(d.field(), d.dim());
    if d.t_h(&full)? != d.t_n(&full)? {
        return Ok(WeakAdmissibility {
            admissible: false,
            witness: Some(full),
            endpoint_failure: true,
        });
    }
    let stable = stable_subspaces(d)?;
    let checks: Vec<bool> = stable
        .par_iter()
        .map(|s| Ok(d.t_h(s)? > d.t_n(s)?))
        .collect::<Result<_, PhiModError>>()?;
    let witness = checks.iter().position(|&bad| bad).map(|i| stable[i].clone());
    Ok(WeakAdmissibility {
        admissible: witness.is_none(),
        witness,
        endpoint_failure: false,
    })
}

/// Étale, i.e. arising from a Galois representation: the same test.
pub fn is_etale(d: &FilteredPhiNModule) -> Result<bool, PhiModError> {
    Ok(is_weakly_admissible(d)?.admissible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::corpus::{counterexample_bad, cyclotomic, modular_form, ModularFormParams, Normalization};

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn cyclotomic_is_etale() {
        for n in -3..=3 {
            for norm in [Normalization::Homological, Normalization::Cohomological] {
                assert!(is_etale(&cyclotomic(f(), n, norm)).unwrap());
            }
        }
    }

    #[test]
    fn extension_fails_at_endpoint() {
        let d = counterexample_bad(f());
        let w = is_weakly_admissible(&d).unwrap();
        assert!(!w.admissible && w.endpoint_failure);
        assert_eq!(w.witness, Some(Subspace::full(f(), 2)));
    }

    #[test]
    fn hodge_line_on_lambda_fails() {
        let f = f();
        let params = |line: [i64; 2]| ModularFormParams {
            field: f,
            k: 2,
            lambda: f.one(),
            mu: f.int(3),
            monodromy: false,
            normalization: Normalization::Cohomological,
            hodge_line: line.iter().map(|&x| f.int(x)).collect(),
        };
        let bad = modular_form(&params([1, 0])).unwrap();
        let w = is_weakly_admissible(&bad).unwrap();
        assert!(!w.admissible && !w.endpoint_failure);
        assert_eq!(w.witness, Some(Subspace::coordinate(f, 2, &[0])));
        assert!(is_etale(&modular_form(&params([1, 1])).unwrap()).unwrap());
        let hom = modular_form(&ModularFormParams {
            normalization: Normalization::Homological,
            ..params([1, 1])
        })
        .unwrap();
        assert!(is_etale(&hom).unwrap());
    }
}
