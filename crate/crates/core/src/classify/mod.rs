//! Stable subspaces and flags, the triangulordinary / ordinary / trianguline
//! classifiers, and the classification report.

mod filtration;
mod lattice;
mod report;

pub use filtration::{check_triangulordinary, is_ordinary, slope_hypothesis, IndexedFiltration};
pub use lattice::StableLattice;
pub use report::{
    bloch_kato_fg, classify, classify_with, ClassificationReport, ClassifyOptions, FiltrationVerdict, Trianguline,
    WeakAdmissibilityVerdict, TRIANGULINE_CAVEAT,
};

use thiserror::Error;

use crate::linalg::{Flag, Subspace};
use crate::phimod::{FilteredPhiNModule, PhiModError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    /// Two blocks share an eigenvalue, so the stable subspaces are not a
    /// finite set.
    #[error("ENUM_INFEASIBLE: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Module(#[from] PhiModError),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl From<EnumError> for ClassifyError {
    fn from(e: EnumError) -> Self {
        ClassifyError::Module(PhiModError::Enum(e))
    }
}

impl ClassifyError {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ClassifyError::Module(PhiModError::Enum(EnumError::Infeasible(_))))
    }
}

/// Every `(φ, N)`-stable subspace, in canonical order.
pub fn stable_subspaces(d: &FilteredPhiNModule) -> Result<Vec<Subspace>, EnumError> {
    Ok(StableLattice::new(d)?.subspaces())
}

/// Stable flags from the full space to zero, optionally capped at
/// `max_length` steps.
pub fn stable_flags(d: &FilteredPhiNModule, max_length: Option<usize>) -> Result<Vec<Flag>, EnumError> {
    Ok(StableLattice::new(d)?.flags(max_length))
}

pub fn triangulordinary_filtrations(d: &FilteredPhiNModule) -> Result<Vec<IndexedFiltration>, ClassifyError> {
    filtration::triangulordinary_in(d, &StableLattice::new(d)?)
}

/// Whether a complete stable flag exists, and how many there are.
pub fn is_trianguline(d: &FilteredPhiNModule) -> Result<(bool, u128), EnumError> {
    let count = StableLattice::new(d)?.count_complete_flags();
    Ok((count > 0, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Polynomial, Rational};
    use crate::corpus::{counterexample_bad, cyclotomic, modular_form, ModularFormParams, Normalization};
    use crate::linalg::MatrixE;
    use crate::phimod::{validate_module, Block, RawModule};

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn module(
        blocks: Vec<Block>,
        n: Option<MatrixE>,
        hodge: Vec<(i64, Vec<Vec<crate::arith::Scalar>>)>,
    ) -> FilteredPhiNModule {
        let d: usize = blocks.iter().map(Block::size).sum();
        validate_module(RawModule {
            field: f(),
            dimension: d,
            labels: (0..d).map(|i| format!("x{i}")).collect(),
            blocks,
            phi: None,
            monodromy: n,
            hodge,
        })
        .unwrap()
    }

    fn concentrated(d: usize) -> Vec<(i64, Vec<Vec<crate::arith::Scalar>>)> {
        vec![(0, Subspace::full(f(), d).basis().to_vec())]
    }

    fn diag_1_pinv() -> FilteredPhiNModule {
        let f = f();
        module(
            vec![Block::Eigen(f.one()), Block::Eigen(f.p_pow(-1))],
            None,
            concentrated(2),
        )
    }

    fn modular(line: [i64; 2], lambda: i64, mu: i64, k: i64, norm: Normalization) -> FilteredPhiNModule {
        let f = f();
        modular_form(&ModularFormParams {
            field: f,
            k,
            lambda: f.int(lambda),
            mu: f.int(mu),
            monodromy: false,
            normalization: norm,
            hodge_line: line.iter().map(|&x| f.int(x)).collect(),
        })
        .unwrap()
    }

    #[test]
    fn stable_subspace_examples() {
        assert_eq!(stable_subspaces(&diag_1_pinv()).unwrap().len(), 4);
        let bad = stable_subspaces(&counterexample_bad(f())).unwrap();
        assert_eq!(
            bad,
            vec![
                Subspace::zero(f(), 2),
                Subspace::coordinate(f(), 2, &[1]),
                Subspace::full(f(), 2)
            ]
        );
    }

    #[test]
    fn shared_eigenvalue_is_infeasible() {
        let f = f();
        let d = module(
            vec![Block::Eigen(f.one()), Block::Eigen(f.one())],
            None,
            concentrated(2),
        );
        assert!(matches!(stable_subspaces(&d), Err(EnumError::Infeasible(_))));
        let r = classify(&d).unwrap();
        assert!(r.trianguline.is_none() && r.triangulordinary.is_none());
        assert!(r.weakly_admissible.is_none());
        assert!(r.warnings.iter().any(|w| w.starts_with("ENUM_INFEASIBLE")));
    }

    #[test]
    fn jordan_chain() {
        let f = f();
        let d = module(
            vec![Block::jordan(f.int(2), 3), Block::Eigen(f.one())],
            None,
            concentrated(4),
        );
        let s = stable_subspaces(&d).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(is_trianguline(&d).unwrap(), (true, 4));
    }

    #[test]
    fn flag_examples() {
        let f = f();
        let line = module(vec![Block::Eigen(f.int(2))], None, concentrated(1));
        assert_eq!(stable_flags(&line, None).unwrap().len(), 1);
        let flags = stable_flags(&diag_1_pinv(), None).unwrap();
        assert_eq!(flags.iter().filter(|fl| fl.is_complete()).count(), 2);
        assert_eq!(flags.iter().filter(|fl| fl.length() == 1).count(), 1);
        assert_eq!(stable_flags(&diag_1_pinv(), Some(1)).unwrap().len(), 1);
        let bad = stable_flags(&counterexample_bad(f), None).unwrap();
        assert_eq!(bad.iter().filter(|fl| fl.is_complete()).count(), 1);
    }

    #[test]
    fn triangulordinary_examples() {
        for n in -2..=2 {
            let c = cyclotomic(f(), n, Normalization::Homological);
            let fs = triangulordinary_filtrations(&c).unwrap();
            assert_eq!(fs.len(), 1);
            assert_eq!(fs[0].weights(), &[n]);
            assert!(is_ordinary(&c, &fs[0]).unwrap());
            assert_eq!(slope_hypothesis(&c, &fs[0]).unwrap(), (true, vec![]));
        }
        assert!(triangulordinary_filtrations(&counterexample_bad(f()))
            .unwrap()
            .is_empty());
        let generic = modular([1, 1], 3, 18, 4, Normalization::Cohomological);
        let fs = triangulordinary_filtrations(&generic).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|fl| !is_ordinary(&generic, fl).unwrap()));
    }

    #[test]
    fn ordinary_and_slope_hypothesis() {
        let split = modular([0, 1], 1, 3, 2, Normalization::Cohomological);
        let fs = triangulordinary_filtrations(&split).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].f(0), &Subspace::coordinate(f(), 2, &[0]));
        assert!(is_ordinary(&split, &fs[0]).unwrap());

        let hom = modular([1, 1], 3, -3, 3, Normalization::Homological);
        let fs = triangulordinary_filtrations(&hom).unwrap();
        assert_eq!(fs.len(), 2);
        for fl in &fs {
            assert_eq!(slope_hypothesis(&hom, fl).unwrap(), (false, vec![0]));
        }
    }

    #[test]
    fn foreign_filtration_is_rejected() {
        let c = cyclotomic(f(), 1, Normalization::Homological);
        let fl = triangulordinary_filtrations(&c).unwrap().remove(0).shifted(1);
        assert!(matches!(is_ordinary(&c, &fl), Err(ClassifyError::InvalidFiltration(_))));
        assert!(IndexedFiltration::new(fl.flag().clone(), vec![]).is_err());
    }

    #[test]
    fn trianguline_examples() {
        assert_eq!(is_trianguline(&counterexample_bad(f())).unwrap(), (true, 1));
        assert_eq!(
            is_trianguline(&modular([1, 1], 3, 18, 4, Normalization::Cohomological)).unwrap(),
            (true, 2)
        );
        let f = f();
        let cubic = Polynomial::new(f, vec![f.int(-2), f.zero(), f.zero(), f.one()]).unwrap();
        let d = module(vec![Block::irreducible(cubic)], None, concentrated(3));
        assert_eq!(is_trianguline(&d).unwrap(), (false, 0));
    }

    #[test]
    fn bloch_kato_examples() {
        let f = f();
        assert!(!bloch_kato_fg(&cyclotomic(f, 1, Normalization::Homological)).unwrap());
        assert!(bloch_kato_fg(&cyclotomic(f, 0, Normalization::Homological)).unwrap());
        assert!(!bloch_kato_fg(&counterexample_bad(f)).unwrap());
    }

    #[test]
    fn report_fields() {
        let r = classify(&counterexample_bad(f())).unwrap();
        assert!(r.semistable && !r.crystalline);
        assert_eq!(r.etale(), Some(false));
        assert_eq!(
            r.trianguline,
            Some(Trianguline {
                value: true,
                refinements: 1
            })
        );
        assert_eq!(r.triangulordinary, Some(vec![]));
        assert_eq!(r.ordinary, Some(None));
        assert!(r.plus_de_rham);

        let c = classify(&cyclotomic(f(), 2, Normalization::Homological)).unwrap();
        let ord = c.ordinary.clone().unwrap().unwrap();
        assert_eq!(c.triangulordinary.as_ref().unwrap()[0], ord);
        assert!(ord.theorem_applies);
        assert_eq!(
            ord.graded_slopes[0].expanded(),
            vec![Rational::from_integer((-2).into())]
        );
        assert!(!c.plus_de_rham);
    }

    #[test]
    fn guard_skips_enumeration() {
        let opts = ClassifyOptions {
            threads: 1,
            max_dim: Some(1),
        };
        let r = classify_with(&counterexample_bad(f()), &opts).unwrap();
        assert!(!r.is_complete());
        // The endpoint failure is still found.
        assert_eq!(r.etale(), Some(false));
        assert!(r.warnings.iter().any(|w| w.starts_with("GUARD_EXCEEDED")));
    }
}
