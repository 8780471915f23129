use crate::arith::{newton_slopes, Field, Rational, Scalar, SlopeMultiset, Valuation};
use crate::linalg::{LinalgError, MatrixE, Subspace};

use super::block::{Block, BlockDefect};
use super::hodge::HodgeData;
use super::{PhiModError, ValidationError, Violation, ViolationKind};

/// Unvalidated module data, as read from a document or assembled by hand.
#[derive(Debug, Clone)]
pub struct RawModule {
    pub field: Field,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub blocks: Vec<Block>,
    /// Explicit Frobenius; when present it must equal the block assembly.
    pub phi: Option<MatrixE>,
    /// Monodromy; `None` means zero.
    pub monodromy: Option<MatrixE>,
    /// Hodge jumps `(degree, spanning vectors)`, increasing in degree.
    pub hodge: Vec<(i64, Vec<Vec<Scalar>>)>,
}

/// Filtered `(φ, N)`-module over `E_e` with linear Frobenius.
///
/// Invariants: `N φ = p φ N`, `N` nilpotent, `φ` invertible and equal to the
/// block-diagonal assembly of `blocks`, Hodge data a strict chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilteredPhiNModule {
    field: Field,
    dim: usize,
    phi: MatrixE,
    monodromy: MatrixE,
    hodge: HodgeData,
    blocks: Vec<Block>,
    labels: Vec<String>,
}

/// Induced structure on `top / bottom` for stable `bottom ⊆ top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquotient {
    pub phi: MatrixE,
    pub monodromy: MatrixE,
    pub hodge: HodgeData,
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    pub fn slopes(&self) -> SlopeMultiset {
        slopes_of(&self.phi)
    }
}

/// A graded piece of an indexed filtration together with its weight label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub weight: i64,
    pub data: Subquotient,
}

fn slopes_of(phi: &MatrixE) -> SlopeMultiset {
    if phi.rows() == 0 {
        return SlopeMultiset::empty();
    }
    let cp = phi.charpoly().expect("square");
    newton_slopes(&cp).expect("charpoly of invertible operator")
}

pub fn validate_module(raw: RawModule) -> Result<FilteredPhiNModule, ValidationError> {
    let mut v = Vec::new();
    let f = raw.field;
    let d = raw.dimension;
    if d == 0 {
        v.push(Violation::new(
            ViolationKind::Dimension,
            "module dimension must be positive",
        ));
        return Err(ValidationError(v));
    }
    if raw.labels.len() != d {
        v.push(Violation::new(
            ViolationKind::Dimension,
            format!("{} labels for dimension {d}", raw.labels.len()),
        ));
    }

    // Frobenius from blocks.
    let mut block_ok = true;
    for (i, b) in raw.blocks.iter().enumerate() {
        if b.field() != f {
            v.push(
                Violation::new(
                    ViolationKind::BlockMismatch,
                    format!("block {i} uses a different field"),
                )
                .at(i, 0),
            );
            block_ok = false;
            continue;
        }
        match b.check() {
            Ok(()) => {}
            Err(BlockDefect::Singular) => {
                v.push(Violation::new(ViolationKind::PhiSingular, format!("block {i} has eigenvalue zero")).at(i, 0));
                block_ok = false;
            }
            Err(BlockDefect::Malformed(m)) => {
                v.push(Violation::new(ViolationKind::BlockMismatch, format!("block {i}: {m}")).at(i, 0));
                block_ok = false;
            }
        }
    }
    let total: usize = raw.blocks.iter().map(Block::size).sum();
    if total != d {
        v.push(Violation::new(
            ViolationKind::BlockMismatch,
            format!("block sizes sum to {total}, dimension is {d}"),
        ));
        block_ok = false;
    }
    let phi = if block_ok {
        let mats: Result<Vec<MatrixE>, LinalgError> = raw.blocks.iter().map(Block::matrix).collect();
        match mats {
            Ok(m) => Some(MatrixE::block_diag(f, &m)),
            Err(e) => {
                v.push(Violation::new(
                    ViolationKind::BlockMismatch,
                    format!("block assembly failed: {e}"),
                ));
                None
            }
        }
    } else {
        None
    };
    if let (Some(assembled), Some(given)) = (&phi, &raw.phi) {
        if given.field() != f || given.rows() != d || given.cols() != d {
            v.push(Violation::new(
                ViolationKind::BlockMismatch,
                "explicit phi has the wrong shape or field",
            ));
        } else {
            let bad = differing_entries(assembled, given);
            if !bad.is_empty() {
                v.push(Violation::new(ViolationKind::BlockMismatch, "phi differs from its block assembly").with(bad));
            }
        }
    }
    if let Some(phi) = &phi {
        if phi.determinant().map(|x| x.is_zero()).unwrap_or(true) {
            v.push(Violation::new(ViolationKind::PhiSingular, "phi has zero determinant"));
        }
    }

    // Monodromy.
    let monodromy = raw.monodromy.clone().unwrap_or_else(|| MatrixE::zeros(f, d, d));
    let n_ok = monodromy.field() == f && monodromy.rows() == d && monodromy.cols() == d;
    if !n_ok {
        v.push(Violation::new(
            ViolationKind::Dimension,
            format!("monodromy must be a {d}x{d} matrix over the module field"),
        ));
    } else {
        if let Some(phi) = &phi {
            let p = f.int(f.prime() as i64);
            let lhs = monodromy.mul(phi).expect("shapes checked");
            let rhs = phi.mul(&monodromy).expect("shapes checked").scale(&p);
            let bad = differing_entries(&lhs, &rhs);
            if !bad.is_empty() {
                v.push(Violation::new(ViolationKind::NotCommuting, "N·phi != p·phi·N").with(bad));
            }
        }
        let nd = monodromy.pow(d).expect("square");
        if !nd.is_zero() {
            let bad = (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .filter(|&(i, j)| !nd.get(i, j).is_zero())
                .collect();
            v.push(Violation::new(ViolationKind::NotNilpotent, format!("N^{d} != 0")).with(bad));
        }
    }

    // Hodge filtration.
    let mut jumps = Vec::with_capacity(raw.hodge.len());
    let mut hodge_ok = true;
    for (n, vecs) in &raw.hodge {
        match Subspace::span(f, d, vecs) {
            Ok(s) => jumps.push((*n, s)),
            Err(e) => {
                v.push(Violation::new(ViolationKind::HodgeNotChain, format!("degree {n}: {e}")));
                hodge_ok = false;
            }
        }
    }
    let hodge = if hodge_ok {
        match HodgeData::new(f, d, jumps) {
            Ok(h) => Some(h),
            Err(e) => {
                v.push(Violation::new(ViolationKind::HodgeNotChain, e.0));
                None
            }
        }
    } else {
        None
    };

    match (v.is_empty(), phi, hodge) {
        (true, Some(phi), Some(hodge)) => Ok(FilteredPhiNModule {
            field: f,
            dim: d,
            phi,
            monodromy,
            hodge,
            blocks: raw.blocks,
            labels: raw.labels,
        }),
        _ => Err(ValidationError(v)),
    }
}

fn differing_entries(a: &MatrixE, b: &MatrixE) -> Vec<(usize, usize)> {
    (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.get(i, j) != b.get(i, j))
        .collect()
}

impl FilteredPhiNModule {
    /// The zero-dimensional module, neutral for direct sums. Validation
    /// rejects dimension zero, so this is the only way to obtain it.
    pub fn zero(field: Field) -> Self {
        FilteredPhiNModule {
            field,
            dim: 0,
            phi: MatrixE::zeros(field, 0, 0),
            monodromy: MatrixE::zeros(field, 0, 0),
            hodge: HodgeData::concentrated(field, 0, 0),
            blocks: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self) -> &MatrixE {
        &self.phi
    }

    pub fn monodromy(&self) -> &MatrixE {
        &self.monodromy
    }

    pub fn hodge(&self) -> &HodgeData {
        &self.hodge
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinate ranges occupied by each block.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.size();
                start = r.end;
                r
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawModule {
        RawModule {
            field: self.field,
            dimension: self.dim,
            labels: self.labels.clone(),
            blocks: self.blocks.clone(),
            phi: None,
            monodromy: if self.monodromy.is_zero() {
                None
            } else {
                Some(self.monodromy.clone())
            },
            hodge: self
                .hodge
                .jumps()
                .iter()
                .map(|(n, s)| (*n, s.basis().to_vec()))
                .collect(),
        }
    }

    /// Frobenius slopes: Newton slopes of the characteristic polynomial.
    pub fn slopes(&self) -> SlopeMultiset {
        slopes_of(&self.phi)
    }

    pub fn hodge_tate_weights(&self) -> Vec<i64> {
        self.hodge.hodge_tate_weights()
    }

    pub fn is_crystalline(&self) -> bool {
        self.monodromy.is_zero()
    }

    pub fn is_stable(&self, s: &Subspace) -> Result<bool, LinalgError> {
        Ok(s.is_invariant(&self.phi)? && s.is_invariant(&self.monodromy)?)
    }

    /// Newton number: valuation of `det(φ|_S)` for a `φ`-stable `S`.
    pub fn t_n(&self, s: &Subspace) -> Result<Rational, PhiModError> {
        let det = s.restriction(&self.phi)?.determinant()?;
        match det.valuation() {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => unreachable!("phi is invertible"),
        }
    }

    /// Hodge number of the filtration induced on `S`.
    pub fn t_h(&self, s: &Subspace) -> Result<Rational, PhiModError> {
        Ok(self.hodge.restrict(s)?.t_h())
    }

    /// Induced structure on `top / bottom`; both must be `(φ, N)`-stable.
    pub fn subquotient(&self, top: &Subspace, bottom: &Subspace) -> Result<Subquotient, PhiModError> {
        let rel = top.relative(bottom)?;
        let phi_top = top.restriction(&self.phi)?;
        let n_top = top.restriction(&self.monodromy)?;
        Ok(Subquotient {
            phi: rel.quotient_map(&phi_top)?,
            monodromy: rel.quotient_map(&n_top)?,
            hodge: self.hodge.subquotient(top, bottom)?,
        })
    }

    /// Slopes of each block: eigenvalue valuations, or the Newton slopes of
    /// an irreducible block's polynomial.
    pub fn block_slopes(&self) -> Vec<SlopeMultiset> {
        self.blocks
            .iter()
            .map(|b| match b.eigenvalue() {
                Some(l) => SlopeMultiset::from_pairs([(
                    l.valuation().finite().cloned().expect("nonzero eigenvalue"),
                    b.size(),
                )]),
                None => newton_slopes(&b.charpoly()).expect("validated block"),
            })
            .collect()
    }

    /// Monodromy entries linking blocks whose slopes cannot differ by one.
    /// `N` must lower slopes by exactly one; a nonzero block of `N` between
    /// blocks admitting no such pair of slopes is reported.
    pub fn monodromy_warnings(&self) -> Vec<String> {
        let ranges = self.block_ranges();
        let slopes = self.block_slopes();
        let one = Rational::from_integer(1.into());
        let mut out = Vec::new();
        for (src, rs) in ranges.iter().enumerate() {
            for (dst, rd) in ranges.iter().enumerate() {
                let nonzero = rd
                    .clone()
                    .any(|i| rs.clone().any(|j| !self.monodromy.get(i, j).is_zero()));
                if !nonzero {
                    continue;
                }
                let compatible = slopes[src]
                    .pairs()
                    .iter()
                    .any(|(s, _)| slopes[dst].contains(&(s - &one)));
                if !compatible {
                    out.push(format!(
                        "monodromy maps block {src} (slopes {}) into block {dst} (slopes {}) without lowering slope by 1",
                        slopes[src], slopes[dst]
                    ));
                }
            }
        }
        out
    }

    /// Dual module: `φ^{-T}`, `-N^T`, `Fil^i = ann(Fil^{1-i})`.
    pub fn dual(&self) -> Result<FilteredPhiNModule, PhiModError> {
        let blocks = self.blocks.iter().map(Block::dual).collect::<Result<Vec<_>, _>>()?;
        let raw = RawModule {
            field: self.field,
            dimension: self.dim,
            labels: self.labels.iter().map(|l| dual_label(l)).collect(),
            blocks,
            phi: Some(self.phi.inverse()?.transpose()),
            monodromy: Some(self.monodromy.transpose().scale(&-self.field.one())),
            hodge: jumps_to_raw(&self.hodge.dual()),
        };
        self.revalidate(raw)
    }

    /// Twist by the `n`-th power of the cyclotomic character: `φ -> p^{-n} φ`,
    /// Hodge degrees shifted by `-n`.
    pub fn twist(&self, n: i64) -> Result<FilteredPhiNModule, PhiModError> {
        let c = self.field.p_pow(-n);
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut diag = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            let (nb, d) = b.scaled(&c);
            blocks.push(nb);
            diag.extend(d);
        }
        let p = MatrixE::diagonal(self.field, &diag);
        let p_inv = p.inverse()?;
        let monodromy = p_inv.mul(&self.monodromy)?.mul(&p)?;
        let hodge = self.hodge.transform(&p_inv)?.shift(-n);
        let raw = RawModule {
            field: self.field,
            dimension: self.dim,
            labels: self.labels.clone(),
            blocks,
            phi: Some(p_inv.mul(&self.phi.scale(&c))?.mul(&p)?),
            monodromy: Some(monodromy),
            hodge: jumps_to_raw(&hodge),
        };
        self.revalidate(raw)
    }

    pub fn direct_sum(&self, other: &FilteredPhiNModule) -> Result<FilteredPhiNModule, PhiModError> {
        self.field.check(&other.field).map_err(LinalgError::from)?;
        if other.dim == 0 {
            return Ok(self.clone());
        }
        if self.dim == 0 {
            return Ok(other.clone());
        }
        let f = self.field;
        let raw = RawModule {
            field: f,
            dimension: self.dim + other.dim,
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
            blocks: self.blocks.iter().chain(&other.blocks).cloned().collect(),
            phi: Some(MatrixE::block_diag(f, &[self.phi.clone(), other.phi.clone()])),
            monodromy: Some(MatrixE::block_diag(
                f,
                &[self.monodromy.clone(), other.monodromy.clone()],
            )),
            hodge: jumps_to_raw(&self.hodge.direct_sum(&other.hodge)),
        };
        self.revalidate(raw)
    }

    fn revalidate(&self, raw: RawModule) -> Result<FilteredPhiNModule, PhiModError> {
        let mut m = validate_module(raw).map_err(PhiModError::Validation)?;
        // Zero monodromy is stored explicitly either way.
        m.monodromy = if m.monodromy.is_zero() {
            MatrixE::zeros(self.field, m.dim, m.dim)
        } else {
            m.monodromy
        };
        Ok(m)
    }
}

fn jumps_to_raw(h: &HodgeData) -> Vec<(i64, Vec<Vec<Scalar>>)> {
    h.jumps().iter().map(|(n, s)| (*n, s.basis().to_vec())).collect()
}

/// Dual basis label: toggles a trailing `*`.
fn dual_label(l: &str) -> String {
    match l.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{l}*"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Polynomial};
    use crate::phimod::ViolationKind;

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn raw_bad(phi_diag: [Scalar; 2]) -> RawModule {
        let f = f();
        let mut n = MatrixE::zeros(f, 2, 2);
        n.set(1, 0, f.one());
        RawModule {
            field: f,
            dimension: 2,
            labels: vec!["e0".into(), "e-1".into()],
            blocks: phi_diag.into_iter().map(Block::Eigen).collect(),
            phi: None,
            monodromy: Some(n),
            hodge: vec![(0, vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]])],
        }
    }

    #[test]
    fn validation_examples() {
        let f = f();
        let good = validate_module(raw_bad([f.one(), f.p_pow(-1)])).unwrap();
        assert!(!good.is_crystalline());
        let mut zero_n = raw_bad([f.int(2), f.int(7)]);
        zero_n.monodromy = None;
        assert!(validate_module(zero_n).unwrap().is_crystalline());
        let err = validate_module(raw_bad([f.one(), f.one()])).unwrap_err();
        assert!(err.has(ViolationKind::NotCommuting));
        let v = err.0.iter().find(|v| v.kind == ViolationKind::NotCommuting).unwrap();
        assert_eq!(v.witness, vec![(1, 0)]);
    }

    #[test]
    fn validation_failures() {
        let f = f();
        let err = validate_module(raw_bad([f.zero(), f.p_pow(-1)])).unwrap_err();
        assert!(err.has(ViolationKind::PhiSingular));

        let mut not_nil = raw_bad([f.one(), f.p_pow(-1)]);
        not_nil.monodromy = Some(MatrixE::identity(f, 2));
        let err = validate_module(not_nil).unwrap_err();
        assert!(err.has(ViolationKind::NotNilpotent));

        let mut chain = raw_bad([f.one(), f.p_pow(-1)]);
        chain.hodge = vec![(0, vec![vec![f.one(), f.zero()]])];
        assert!(validate_module(chain).unwrap_err().has(ViolationKind::HodgeNotChain));

        let mut sizes = raw_bad([f.one(), f.p_pow(-1)]);
        sizes.blocks.pop();
        assert!(validate_module(sizes).unwrap_err().has(ViolationKind::BlockMismatch));

        let mut explicit = raw_bad([f.one(), f.p_pow(-1)]);
        explicit.phi = Some(MatrixE::identity(f, 2));
        assert!(validate_module(explicit).unwrap_err().has(ViolationKind::BlockMismatch));

        let mut empty = raw_bad([f.one(), f.p_pow(-1)]);
        empty.dimension = 0;
        assert!(validate_module(empty).unwrap_err().has(ViolationKind::Dimension));
    }

    #[test]
    fn newton_and_hodge_numbers() {
        let f = f();
        let d = validate_module(raw_bad([f.one(), f.p_pow(-1)])).unwrap();
        let full = Subspace::full(f, 2);
        let zero = Subspace::zero(f, 2);
        let e_minus = Subspace::coordinate(f, 2, &[1]);
        assert_eq!(d.slopes().expanded(), vec![int(-1), int(0)]);
        assert_eq!(d.t_n(&full).unwrap(), int(-1));
        assert_eq!(d.t_n(&zero).unwrap(), int(0));
        assert_eq!(d.t_n(&e_minus).unwrap(), int(-1));
        assert_eq!(d.t_h(&full).unwrap(), int(0));
        assert_eq!(d.t_h(&zero).unwrap(), int(0));
        assert_eq!(d.hodge_tate_weights(), vec![0, 0]);
        assert!(d.is_stable(&e_minus).unwrap());
        assert!(!d.is_stable(&Subspace::coordinate(f, 2, &[0])).unwrap());
    }

    #[test]
    fn dual_twist_sum() {
        let f = f();
        let d = validate_module(raw_bad([f.one(), f.p_pow(-1)])).unwrap();
        let dd = d.dual().unwrap();
        assert_eq!(dd.labels(), &["e0*".to_string(), "e-1*".to_string()]);
        assert_eq!(dd.slopes(), d.slopes().negated());
        assert_eq!(dd.dual().unwrap(), d);

        let t = d.twist(2).unwrap();
        assert_eq!(t.slopes(), d.slopes().shifted(&int(-2)));
        assert_eq!(t.hodge_tate_weights(), vec![2, 2]);
        assert_eq!(t.twist(-2).unwrap(), d);
        assert_eq!(d.twist(1).unwrap().twist(1).unwrap(), t);

        let zero = FilteredPhiNModule::zero(f);
        assert_eq!(d.direct_sum(&zero).unwrap(), d);
        assert_eq!(zero.direct_sum(&d).unwrap(), d);
        let s = d.direct_sum(&t).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.slopes(), d.slopes().union(&t.slopes()));
        let full = |m: &FilteredPhiNModule| m.t_h(&Subspace::full(f, m.dim())).unwrap();
        assert_eq!(full(&s), full(&d) + full(&t));
    }

    #[test]
    fn subquotient_of_extension() {
        let f = f();
        let d = validate_module(raw_bad([f.one(), f.p_pow(-1)])).unwrap();
        let full = Subspace::full(f, 2);
        let line = Subspace::coordinate(f, 2, &[1]);
        let q = d.subquotient(&full, &line).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.monodromy.is_zero());
        assert_eq!(q.phi.get(0, 0), &f.one());
        assert_eq!(q.hodge.concentration_degree(), Some(0));
    }

    #[test]
    fn monodromy_slope_warning() {
        let f = f();
        let d = validate_module(raw_bad([f.one(), f.p_pow(-1)])).unwrap();
        assert!(d.monodromy_warnings().is_empty());
        // N = 0 never warns, whatever the block slopes.
        let poly = Polynomial::new(f, vec![f.int(-3), f.zero(), f.one()]).unwrap();
        let raw = RawModule {
            field: f,
            dimension: 3,
            labels: vec!["a".into(), "b".into(), "c".into()],
            blocks: vec![Block::irreducible(poly), Block::Eigen(f.one())],
            phi: None,
            monodromy: None,
            hodge: vec![(0, Subspace::full(f, 3).basis().to_vec())],
        };
        assert!(validate_module(raw).unwrap().monodromy_warnings().is_empty());
    }
}
