use crate::arith::{Field, SlopeMultiset};
use crate::linalg::{MatrixE, Subspace};
use crate::phimod::{is_weakly_admissible, FilteredPhiNModule, PhiModError, WeakAdmissibility};

use super::filtration::{triangulordinary_in, IndexedFiltration};
use super::lattice::StableLattice;
use super::{ClassifyError, EnumError};

pub const TRIANGULINE_CAVEAT: &str =
    "refinements are sought over the fixed coefficient field; a finite extension of it may create more";

const FIXED_FIELD_NOTE: &str =
    "stable subspaces are taken over the fixed coefficient field Q_p(p^(1/e)); no extension is searched";

const G_PLUS_NOTE: &str = "H^1_g(V) = H^1_g+(V) holds for every de Rham representation";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Worker threads for enumeration; 0 uses the global pool.
    pub threads: usize,
    /// Skip every enumeration when the dimension exceeds this.
    pub max_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationVerdict {
    pub filtration: IndexedFiltration,
    /// Slopes of `φ` on each graded, in flag order.
    pub graded_slopes: Vec<SlopeMultiset>,
    pub is_ordinary: bool,
    pub slope_hypothesis: bool,
    /// Equal to `slope_hypothesis`: the hypothesis is sufficient for the
    /// triangulordinary and Bloch–Kato local conditions to agree.
    pub theorem_applies: bool,
    /// Weights of the gradeds violating the slope hypothesis.
    pub offending_gradeds: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trianguline {
    pub value: bool,
    pub refinements: u128,
}

/// The weak admissibility verdict as reported.
pub type WeakAdmissibilityVerdict = WeakAdmissibility;

/// Every verdict for one module. `None` marks a field that could not be
/// decided because enumeration was infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub field: Field,
    pub dimension: usize,
    pub slopes: SlopeMultiset,
    pub hodge_tate_weights: Vec<i64>,
    pub semistable: bool,
    pub weakly_admissible: Option<WeakAdmissibility>,
    pub stable_subspace_count: Option<usize>,
    pub crystalline: bool,
    pub plus_de_rham: bool,
    /// `Some(None)`: decided, no ordinary filtration.
    pub ordinary: Option<Option<FiltrationVerdict>>,
    pub triangulordinary: Option<Vec<FiltrationVerdict>>,
    pub trianguline: Option<Trianguline>,
    pub bloch_kato_f_equals_g: bool,
    pub annotations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    pub fn etale(&self) -> Option<bool> {
        self.weakly_admissible.as_ref().map(|w| w.admissible)
    }

    pub fn is_complete(&self) -> bool {
        self.weakly_admissible.is_some()
            && self.ordinary.is_some()
            && self.triangulordinary.is_some()
            && self.trianguline.is_some()
    }
}

/// `H^1_f = H^1_g` test: `p^{-1}` is not an eigenvalue of `φ` on `ker N`.
pub fn bloch_kato_fg(d: &FilteredPhiNModule) -> Result<bool, PhiModError> {
    let f = d.field();
    let kernel = Subspace::span(f, d.dim(), &d.monodromy().kernel())?;
    let phi_k = kernel.restriction(d.phi())?;
    let shifted = phi_k.sub(&MatrixE::identity(f, kernel.dim()).scale(&f.p_pow(-1)))?;
    Ok(!shifted.determinant()?.is_zero())
}

pub fn classify(d: &FilteredPhiNModule) -> Result<ClassificationReport, ClassifyError> {
    classify_with(d, &ClassifyOptions::default())
}

pub fn classify_with(d: &FilteredPhiNModule, options: &ClassifyOptions) -> Result<ClassificationReport, ClassifyError> {
    if options.threads == 0 {
        return build(d, options.max_dim);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| ClassifyError::ThreadPool(e.to_string()))?;
    pool.install(|| build(d, options.max_dim))
}

fn build(d: &FilteredPhiNModule, max_dim: Option<usize>) -> Result<ClassificationReport, ClassifyError> {
    let hodge_tate_weights = d.hodge_tate_weights();
    let mut report = ClassificationReport {
        field: d.field(),
        dimension: d.dim(),
        slopes: d.slopes(),
        plus_de_rham: hodge_tate_weights.iter().all(|&w| w <= 0),
        hodge_tate_weights,
        semistable: true,
        weakly_admissible: None,
        stable_subspace_count: None,
        crystalline: d.is_crystalline(),
        ordinary: None,
        triangulordinary: None,
        trianguline: None,
        bloch_kato_f_equals_g: bloch_kato_fg(d)?,
        annotations: vec![FIXED_FIELD_NOTE.to_string()],
        warnings: d.monodromy_warnings(),
    };

    if let Some(m) = max_dim.filter(|&m| d.dim() > m) {
        report.warnings.push(format!(
            "GUARD_EXCEEDED: dimension {} is above the enumeration limit {m}",
            d.dim()
        ));
        report.weakly_admissible = endpoint_failure(d)?;
        return Ok(report);
    }
    let lattice = match StableLattice::new(d) {
        Ok(l) => l,
        Err(EnumError::Infeasible(msg)) => {
            report.warnings.push(format!("ENUM_INFEASIBLE: {msg}"));
            report.annotations.push(TRIANGULINE_CAVEAT.to_string());
            report.weakly_admissible = endpoint_failure(d)?;
            return Ok(report);
        }
    };

    report.stable_subspace_count = Some(lattice.members().len());
    let wa = is_weakly_admissible(d)?;
    if wa.admissible {
        report.annotations.push(G_PLUS_NOTE.to_string());
    }
    report.weakly_admissible = Some(wa);

    let count = lattice.count_complete_flags();
    report.trianguline = Some(Trianguline {
        value: count > 0,
        refinements: count,
    });
    if count == 0 {
        report.annotations.push(TRIANGULINE_CAVEAT.to_string());
    }

    let mut verdicts = Vec::new();
    for f in triangulordinary_in(d, &lattice)? {
        let gradeds = f.gradeds(d)?;
        let graded_slopes: Vec<SlopeMultiset> = gradeds.iter().map(|g| g.data.slopes()).collect();
        let is_ordinary = super::is_ordinary(d, &f)?;
        let (hyp, offending) = super::slope_hypothesis(d, &f)?;
        verdicts.push(FiltrationVerdict {
            filtration: f,
            graded_slopes,
            is_ordinary,
            slope_hypothesis: hyp,
            theorem_applies: hyp,
            offending_gradeds: offending,
        });
    }
    report.ordinary = Some(verdicts.iter().find(|v| v.is_ordinary).cloned());
    report.triangulordinary = Some(verdicts);
    Ok(report)
}

/// The endpoint half of weak admissibility, which needs no enumeration:
/// a failing verdict when `t_H != t_N` on the whole space, else undecided.
fn endpoint_failure(d: &FilteredPhiNModule) -> Result<Option<WeakAdmissibility>, PhiModError> {
    let full = Subspace::full(d.field(), d.dim());
    if d.t_h(&full)? == d.t_n(&full)? {
        return Ok(None);
    }
    Ok(Some(WeakAdmissibility {
        admissible: false,
        witness: Some(full),
        endpoint_failure: true,
    }))
}
