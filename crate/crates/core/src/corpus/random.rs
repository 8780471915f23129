//! Random small modules for property and oracle testing.

use rand::seq::SliceRandom;
use rand::Rng;

use num_traits::Zero;

use crate::arith::{Field, Polynomial, Rational, Scalar};
use crate::classify::stable_subspaces;
use crate::linalg::{MatrixE, Subspace};
use crate::phimod::{validate_module, Block, FilteredPhiNModule, RawModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub max_dim: usize,
    /// Only `Eigen` blocks; otherwise a Jordan or companion block may appear
    /// (and monodromy is then zero).
    pub diagonal: bool,
    /// Allow nonzero monodromy between eigenlines with `λ_j = p λ_i`.
    pub monodromy: bool,
    /// Pick the last eigenvalue so that `t_H(D) = t_N(D)`; weak
    /// admissibility can then only fail on a proper subspace.
    pub balanced: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_dim: 4,
            diagonal: true,
            monodromy: true,
            balanced: false,
        }
    }
}

fn random_field(rng: &mut impl Rng) -> Field {
    let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
    let e = rng.gen_range(1..=3);
    Field::new(p, e).expect("small primes")
}

fn random_unit_multiple(rng: &mut impl Rng, f: Field) -> Scalar {
    let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let k = rng.gen_range(0..f.ramification() as i64);
    let m = rng.gen_range(-2..=1);
    &(&f.int(c) * &f.u_pow(k)) * &f.p_pow(m)
}

/// Distinct nonzero eigenvalues; with monodromy allowed, some are planted
/// as `p` times an earlier one.
fn eigenvalues(rng: &mut impl Rng, f: Field, d: usize, plant: bool) -> Vec<Scalar> {
    let p = f.int(f.prime() as i64);
    let mut out: Vec<Scalar> = Vec::with_capacity(d);
    while out.len() < d {
        let cand = if plant && !out.is_empty() && rng.gen_bool(0.4) {
            &p * out.choose(rng).expect("nonempty")
        } else {
            random_unit_multiple(rng, f)
        };
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

fn random_hodge(rng: &mut impl Rng, f: Field, d: usize) -> Vec<(i64, Vec<Vec<Scalar>>)> {
    let basis = loop {
        let rows: Vec<Vec<Scalar>> = (0..d)
            .map(|_| (0..d).map(|_| f.int(rng.gen_range(-3..=3))).collect())
            .collect();
        let s = Subspace::span(f, d, &rows).expect("rows of length d");
        if s.is_full() {
            break rows;
        }
    };
    let jumps = rng.gen_range(1..=d.min(3));
    let mut sizes: Vec<usize> = (1..d).collect();
    sizes.shuffle(rng);
    let mut sizes: Vec<usize> = sizes.into_iter().take(jumps - 1).collect();
    sizes.push(d);
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut degrees: Vec<i64> = (-2..=2).collect();
    degrees.shuffle(rng);
    let mut degrees: Vec<i64> = degrees.into_iter().take(jumps).collect();
    degrees.sort_unstable();
    degrees
        .into_iter()
        .zip(sizes)
        .map(|(n, s)| (n, basis[..s].to_vec()))
        .collect()
}

fn valuation(x: &Scalar) -> Rational {
    x.valuation().finite().cloned().unwrap_or_else(Rational::zero)
}

/// An eigenvalue `c u^j p^m` with `c` a unit, whose valuation brings the
/// total slope up to the Hodge number of the whole space.
fn balancing_eigenvalue(
    rng: &mut impl Rng,
    f: Field,
    blocks: &[Block],
    eigen: &[Scalar],
    hodge: &[(i64, Vec<Vec<Scalar>>)],
) -> Option<Scalar> {
    let mut t_h = 0i64;
    for (k, (n, basis)) in hodge.iter().enumerate() {
        let next = hodge.get(k + 1).map_or(0, |(_, b)| b.len());
        t_h += n * (basis.len() - next) as i64;
    }
    let t_n = blocks
        .iter()
        .map(|b| valuation(&b.charpoly().coeff(0)))
        .chain(eigen.iter().map(valuation))
        .fold(Rational::zero(), |a, b| a + b);
    let e = f.ramification() as i64;
    let scaled = (Rational::from_integer(t_h.into()) - t_n) * Rational::from_integer(e.into());
    let scaled: i64 = scaled.to_integer().try_into().ok()?;
    let units: Vec<i64> = (1..=4).filter(|c| c % f.prime() as i64 != 0).collect();
    let c = units.choose(rng)? * if rng.gen_bool(0.5) { 1 } else { -1 };
    Some(&(&f.int(c) * &f.u_pow(scaled.rem_euclid(e))) * &f.p_pow(scaled.div_euclid(e)))
}

/// Samples a valid module whose blocks have pairwise coprime characteristic
/// polynomials, so its stable subspaces are enumerable.
pub fn random_module(rng: &mut impl Rng, spec: &RandomSpec) -> FilteredPhiNModule {
    loop {
        let f = random_field(rng);
        let d = rng.gen_range(1..=spec.max_dim.max(1));
        let mixed = !spec.diagonal && d >= 2 && rng.gen_bool(0.5);
        let plant = spec.monodromy && !mixed;
        let mut lambdas = eigenvalues(rng, f, d, plant);
        let hodge = random_hodge(rng, f, d);
        let mut blocks: Vec<Block> = Vec::new();
        let mut i = 0;
        if mixed {
            let c = lambdas[0].clone();
            let special = match rng.gen_range(0..3) {
                0 => Block::jordan(c, 2),
                1 => Block::Jordan {
                    eigenvalue: c,
                    size: 2,
                    orientation: crate::phimod::Orientation::Contragredient,
                },
                _ => {
                    let poly = Polynomial::new(f, vec![-&c, random_unit_multiple(rng, f), f.one()])
                        .expect("coefficients in f");
                    if rng.gen_bool(0.5) {
                        Block::irreducible(poly)
                    } else {
                        Block::irreducible(poly).dual().expect("nonzero constant term")
                    }
                }
            };
            blocks.push(special);
            i = 2;
        }
        if spec.balanced {
            if i >= d {
                continue;
            }
            let Some(last) = balancing_eigenvalue(rng, f, &blocks, &lambdas[i..d - 1], &hodge) else {
                continue;
            };
            if lambdas[..d - 1].contains(&last) {
                continue;
            }
            lambdas[d - 1] = last;
        }
        blocks.extend(lambdas[i..].iter().cloned().map(Block::Eigen));

        let mut n = MatrixE::zeros(f, d, d);
        if plant {
            let p = f.int(f.prime() as i64);
            for a in 0..d {
                for b in 0..d {
                    if lambdas[b] == &p * &lambdas[a] && rng.gen_bool(0.7) {
                        n.set(a, b, f.int(rng.gen_range(1..=3)));
                    }
                }
            }
        }
        let raw = RawModule {
            field: f,
            dimension: d,
            labels: (0..d).map(|k| format!("v{k}")).collect(),
            blocks,
            phi: None,
            monodromy: Some(n),
            hodge,
        };
        let Ok(m) = validate_module(raw) else { continue };
        if stable_subspaces(&m).is_ok() {
            return m;
        }
    }
}
