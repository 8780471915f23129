//! The worked examples: cyclotomic characters, modular forms, abelian
//! variety slope scenarios and the non-crystalline extension, each with a
//! golden partial report.
//!
//! Scenario 1 reads a multiplicity-one slope `-2/3` E-linearly, which needs
//! `e = 3`; a semilinear Frobenius over an algebraically closed residue field
//! could not have it.

mod golden;
mod random;

pub use random::{random_module, RandomSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{Field, Polynomial, Rational, Scalar, Valuation};
use crate::classify::stable_subspaces;
use crate::linalg::{MatrixE, Subspace};
use crate::phimod::{is_weakly_admissible, validate_module, Block, FilteredPhiNModule, PhiModError, RawModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    Homological,
    Cohomological,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::Homological => "hom",
            Normalization::Cohomological => "coh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HodgePosition {
    Generic,
    /// `H` contains the slope-0 line.
    ContainsSlope0,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("EIGENVALUE_SUM: ord(lambda) + ord(mu) = {found}, expected k - 1 = {expected}")]
    EigenvalueSum { found: String, expected: i64 },
    #[error("NOT_DISTINCT: lambda and mu must differ")]
    NotDistinct,
    #[error("EIGENVALUE_ORDER: ord(lambda) = {0} exceeds ord(mu) = {1}")]
    EigenvalueOrder(String, String),
    #[error("MONODROMY_GAP: N(e_mu) = e_lambda needs mu = p*lambda")]
    MonodromyGap,
    #[error("weight k = {0} must be at least 2")]
    Weight(i64),
    #[error("hodge line must be a nonzero vector of length 2")]
    HodgeLine,
    #[error("no weakly admissible Hodge position found after {0} candidates")]
    NoAdmissiblePosition(usize),
    #[error("unknown scenario {0}")]
    Scenario(u8),
    #[error(transparent)]
    Module(#[from] PhiModError),
}

fn build(raw: RawModule) -> Result<FilteredPhiNModule, CorpusError> {
    validate_module(raw).map_err(|e| CorpusError::Module(PhiModError::Validation(e)))
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `χ^n`: homological `φ = p^{-n}` with jump at `-n`; cohomological is the dual.
pub fn cyclotomic(field: Field, n: i64, normalization: Normalization) -> FilteredPhiNModule {
    let raw = RawModule {
        field,
        dimension: 1,
        labels: labels(&["e"]),
        blocks: vec![Block::Eigen(field.p_pow(-n))],
        phi: None,
        monodromy: None,
        hodge: vec![(-n, vec![vec![field.one()]])],
    };
    let hom = build(raw).expect("cyclotomic data is valid");
    match normalization {
        Normalization::Homological => hom,
        Normalization::Cohomological => hom.dual().expect("dual of a valid module"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularFormParams {
    pub field: Field,
    pub k: i64,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub monodromy: bool,
    pub normalization: Normalization,
    /// Spans `Fil^{k-1}` of the cohomological module, in `(e_λ, e_μ)` coordinates.
    pub hodge_line: Vec<Scalar>,
}

fn ord(x: &Scalar) -> Rational {
    match x.valuation() {
        Valuation::Finite(v) => v,
        Valuation::Infinite => Rational::from_integer(0.into()),
    }
}

/// Two-dimensional module of a weight-`k` eigenform at `p`, with
/// `φ(e_λ) = λ e_λ`, `φ(e_μ) = μ e_μ`, optionally `N(e_μ) = e_λ`, and
/// cohomological Hodge filtration `D = Fil^0 ⊋ Fil^1 = … = Fil^{k-1} ⊋ 0`.
pub fn modular_form(params: &ModularFormParams) -> Result<FilteredPhiNModule, CorpusError> {
    let ModularFormParams {
        field: f,
        k,
        lambda,
        mu,
        monodromy,
        normalization,
        hodge_line,
    } = params;
    if *k < 2 {
        return Err(CorpusError::Weight(*k));
    }
    if lambda.is_zero() || mu.is_zero() || lambda == mu {
        return Err(CorpusError::NotDistinct);
    }
    let (ol, om) = (ord(lambda), ord(mu));
    if &ol + &om != Rational::from_integer((k - 1).into()) {
        return Err(CorpusError::EigenvalueSum {
            found: (&ol + &om).to_string(),
            expected: k - 1,
        });
    }
    if ol > om {
        return Err(CorpusError::EigenvalueOrder(ol.to_string(), om.to_string()));
    }
    let p = f.int(f.prime() as i64);
    if *monodromy && *mu != &p * lambda {
        return Err(CorpusError::MonodromyGap);
    }
    if hodge_line.len() != 2 || hodge_line.iter().all(Scalar::is_zero) {
        return Err(CorpusError::HodgeLine);
    }
    let n = monodromy.then(|| {
        let mut n = MatrixE::zeros(*f, 2, 2);
        n.set(0, 1, f.one());
        n
    });
    let coh = build(RawModule {
        field: *f,
        dimension: 2,
        labels: labels(&["e_lambda", "e_mu"]),
        blocks: vec![Block::Eigen(lambda.clone()), Block::Eigen(mu.clone())],
        phi: None,
        monodromy: n,
        hodge: vec![
            (0, vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]),
            (k - 1, vec![hodge_line.clone()]),
        ],
    })?;
    match normalization {
        Normalization::Cohomological => Ok(coh),
        Normalization::Homological => Ok(coh.dual()?),
    }
}

/// Non-crystalline extension: `φ(e_0) = e_0`, `φ(e_{-1}) = p^{-1} e_{-1}`,
/// `N(e_0) = e_{-1}`, `Fil^0 = D`, `Fil^1 = 0`.
pub fn counterexample_bad(field: Field) -> FilteredPhiNModule {
    let mut n = MatrixE::zeros(field, 2, 2);
    n.set(1, 0, field.one());
    build(RawModule {
        field,
        dimension: 2,
        labels: labels(&["e0", "e-1"]),
        blocks: vec![Block::Eigen(field.one()), Block::Eigen(field.p_pow(-1))],
        phi: None,
        monodromy: Some(n),
        hodge: vec![(
            0,
            vec![vec![field.one(), field.zero()], vec![field.zero(), field.one()]],
        )],
    })
    .expect("the printed data is valid")
}

/// Seeds for the Hodge-position search, one per scenario.
const SEEDS: [u64; 3] = [0x7a11, 0x7a12, 0x7a13];
const MAX_CANDIDATES: usize = 500;

/// Abelian-variety style modules with `Fil^{-1} = D ⊋ Fil^0 = H ⊋ 0`,
/// `dim H = dim D / 2`, `N = 0`.
///
/// 1. `e = 3`, `φ = diag(p^{-1}, u p^{-1}, u^2 p^{-1}, 1)`: slopes `-1, -2/3, -1/3, 0`.
/// 2. slopes `-1, -1/2, -1/2, 0`; with `split` over `e = 2` as `±u p^{-1}`,
///    otherwise over `e = 1` as one block `X^2 - p^{-1}`.
/// 3. `e = 1`, dimension 8: blocks `X^3 - 2p^{-3}`, `X^2 - p^{-1}`, `X^3 - 2`.
///
/// `H` is drawn from a fixed seed: small integer vectors, the first draw
/// that is weakly admissible and meets every stable subspace in the
/// expected dimension (stable subspaces through the slope-0 line excepted
/// when `H` must contain it).
pub fn abelian_scenario(
    p: u64,
    id: u8,
    position: HodgePosition,
    split: bool,
) -> Result<FilteredPhiNModule, CorpusError> {
    let (field, blocks, names, slope0): (Field, Vec<Block>, Vec<&str>, usize) = match id {
        1 => {
            let f = Field::new(p, 3).map_err(PhiModError::from)?;
            let pinv = f.p_pow(-1);
            (
                f,
                vec![
                    Block::Eigen(pinv.clone()),
                    Block::Eigen(&f.u_pow(1) * &pinv),
                    Block::Eigen(&f.u_pow(2) * &pinv),
                    Block::Eigen(f.one()),
                ],
                vec!["e(-1)", "e(-2/3)", "e(-1/3)", "e(0)"],
                3,
            )
        }
        2 if split => {
            let f = Field::new(p, 2).map_err(PhiModError::from)?;
            let r = &f.u_pow(1) * &f.p_pow(-1);
            (
                f,
                vec![
                    Block::Eigen(f.p_pow(-1)),
                    Block::Eigen(r.clone()),
                    Block::Eigen(-&r),
                    Block::Eigen(f.one()),
                ],
                vec!["e(-1)", "e(-1/2)+", "e(-1/2)-", "e(0)"],
                3,
            )
        }
        2 => {
            let f = Field::new(p, 1).map_err(PhiModError::from)?;
            let quad = Polynomial::new(f, vec![-&f.p_pow(-1), f.zero(), f.one()]).map_err(PhiModError::from)?;
            (
                f,
                vec![
                    Block::Eigen(f.p_pow(-1)),
                    Block::irreducible(quad),
                    Block::Eigen(f.one()),
                ],
                vec!["e(-1)", "e(-1/2)a", "e(-1/2)b", "e(0)"],
                3,
            )
        }
        3 => {
            let f = Field::new(p, 1).map_err(PhiModError::from)?;
            let cubic_neg = Polynomial::new(f, vec![-&(&f.int(2) * &f.p_pow(-3)), f.zero(), f.zero(), f.one()])
                .map_err(PhiModError::from)?;
            let quad = Polynomial::new(f, vec![-&f.p_pow(-1), f.zero(), f.one()]).map_err(PhiModError::from)?;
            let cubic_zero =
                Polynomial::new(f, vec![f.int(-2), f.zero(), f.zero(), f.one()]).map_err(PhiModError::from)?;
            (
                f,
                vec![
                    Block::irreducible(cubic_neg),
                    Block::irreducible(quad),
                    Block::irreducible(cubic_zero),
                ],
                vec!["a0", "a1", "a2", "b0", "b1", "c0", "c1", "c2"],
                5,
            )
        }
        other => return Err(CorpusError::Scenario(other)),
    };
    let d = names.len();
    let h_dim = d / 2;
    let template = build(RawModule {
        field,
        dimension: d,
        labels: labels(&names),
        blocks,
        phi: None,
        monodromy: None,
        hodge: vec![(-1, Subspace::full(field, d).basis().to_vec())],
    })?;
    let stable = stable_subspaces(&template).map_err(PhiModError::from)?;
    let zero_line = Subspace::coordinate(field, d, &[slope0]);

    let mut rng = ChaCha8Rng::seed_from_u64(SEEDS[(id - 1) as usize]);
    for _ in 0..MAX_CANDIDATES {
        let mut vectors: Vec<Vec<Scalar>> = Vec::with_capacity(h_dim);
        if position == HodgePosition::ContainsSlope0 {
            vectors.push(zero_line.basis()[0].clone());
        }
        while vectors.len() < h_dim {
            vectors.push((0..d).map(|_| field.int(rng.gen_range(-4..=4))).collect());
        }
        let h = Subspace::span(field, d, &vectors).map_err(PhiModError::from)?;
        if h.dim() != h_dim {
            continue;
        }
        let general = stable.iter().all(|s| {
            if position == HodgePosition::ContainsSlope0 && s.contains(&zero_line).unwrap_or(false) {
                return true;
            }
            let expected = (s.dim() + h_dim).saturating_sub(d);
            s.intersect(&h).map(|i| i.dim() == expected).unwrap_or(false)
        });
        if !general {
            continue;
        }
        let mut raw = template.to_raw();
        raw.hodge.push((0, h.basis().to_vec()));
        let candidate = build(raw)?;
        if is_weakly_admissible(&candidate)?.admissible {
            return Ok(candidate);
        }
    }
    Err(CorpusError::NoAdmissiblePosition(MAX_CANDIDATES))
}

/// A named example with its golden partial report (JSON text).
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub module: FilteredPhiNModule,
    pub expected: String,
}

/// Prime used by every registry entry.
pub const CORPUS_PRIME: u64 = 3;

/// Names of the fixed registry entries; `cyclotomic:n=N:hom|coh` also
/// accepts any integer `N`.
pub fn entry_names() -> Vec<String> {
    let mut names = vec!["exmp-bad".to_string()];
    for n in -2..=2 {
        for norm in ["hom", "coh"] {
            names.push(format!("cyclotomic:n={n}:{norm}"));
        }
    }
    names.extend(golden::MODULAR.iter().map(|m| m.name.to_string()));
    names.extend(golden::ABELIAN.iter().map(|a| a.name.to_string()));
    names
}

pub fn lookup(name: &str) -> Option<Result<CorpusEntry, CorpusError>> {
    let f1 = Field::new(CORPUS_PRIME, 1).expect("3 is prime");
    if name == "exmp-bad" {
        return Some(Ok(CorpusEntry {
            name: name.into(),
            module: counterexample_bad(f1),
            expected: golden::EXMP_BAD.to_string(),
        }));
    }
    if let Some(rest) = name.strip_prefix("cyclotomic:n=") {
        let (n, norm) = rest.split_once(':')?;
        let n: i64 = n.parse().ok()?;
        let norm = match norm {
            "hom" => Normalization::Homological,
            "coh" => Normalization::Cohomological,
            _ => return None,
        };
        return Some(Ok(CorpusEntry {
            name: name.into(),
            module: cyclotomic(f1, n, norm),
            expected: golden::cyclotomic(n, norm),
        }));
    }
    if let Some(m) = golden::MODULAR.iter().find(|m| m.name == name) {
        let f = f1;
        let params = ModularFormParams {
            field: f,
            k: m.k,
            lambda: crate::arith::scalar_parse(m.lambda, f).expect("preset literal"),
            mu: crate::arith::scalar_parse(m.mu, f).expect("preset literal"),
            monodromy: m.monodromy,
            normalization: m.normalization,
            hodge_line: m.line.iter().map(|&x| f.int(x)).collect(),
        };
        return Some(modular_form(&params).map(|module| CorpusEntry {
            name: name.into(),
            module,
            expected: m.expected.to_string(),
        }));
    }
    if let Some(a) = golden::ABELIAN.iter().find(|a| a.name == name) {
        return Some(
            abelian_scenario(CORPUS_PRIME, a.id, a.position, a.split).map(|module| CorpusEntry {
                name: name.into(),
                module,
                expected: a.expected.to_string(),
            }),
        );
    }
    None
}

/// Every fixed registry entry, in `entry_names` order.
pub fn all_entries() -> Result<Vec<CorpusEntry>, CorpusError> {
    entry_names()
        .iter()
        .map(|n| lookup(n).expect("registered name"))
        .collect()
}
