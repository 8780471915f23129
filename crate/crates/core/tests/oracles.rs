//! Brute-force recomputation of stable subspaces, flags, slopes and weak
//! admissibility for diagonal Frobenius with distinct eigenvalues.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tord_core::arith::{Rational, SlopeMultiset};
use tord_core::classify::{is_trianguline, stable_subspaces};
use tord_core::corpus::{random_module, RandomSpec};
use tord_core::linalg::Subspace;
use tord_core::phimod::{is_weakly_admissible, FilteredPhiNModule};

const CASES: u64 = 150;

fn diagonal_modules() -> impl Iterator<Item = FilteredPhiNModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bac1e);
    (0..CASES).map(move |i| {
        let spec = RandomSpec {
            balanced: i % 2 == 1,
            ..RandomSpec::default()
        };
        random_module(&mut rng, &spec)
    })
}

fn eigenvalues(d: &FilteredPhiNModule) -> Vec<tord_core::arith::Scalar> {
    (0..d.dim()).map(|i| d.phi().get(i, i).clone()).collect()
}

/// Index sets closed under `N`: column `j` of `N` must stay inside the set.
fn closed_sets(d: &FilteredPhiNModule) -> Vec<Vec<usize>> {
    let n = d.dim();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|set| {
            set.iter()
                .all(|&j| (0..n).all(|i| d.monodromy().get(i, j).is_zero() || set.contains(&i)))
        })
        .collect()
}

fn hodge_number(d: &FilteredPhiNModule, s: &Subspace) -> Rational {
    let jumps = d.hodge().jumps();
    let mut total = 0i64;
    for (k, (n, fil)) in jumps.iter().enumerate() {
        let here = fil.intersect(s).unwrap().dim() as i64;
        let next = jumps
            .get(k + 1)
            .map_or(0, |(_, f)| f.intersect(s).unwrap().dim() as i64);
        total += n * (here - next);
    }
    Rational::from_integer(total.into())
}

fn newton_number(d: &FilteredPhiNModule, set: &[usize]) -> Rational {
    let lambdas = eigenvalues(d);
    set.iter()
        .map(|&i| lambdas[i].valuation().finite().cloned().unwrap())
        .fold(Rational::from_integer(0.into()), |a, b| a + b)
}

#[test]
fn modules_are_diagonal() {
    for d in diagonal_modules() {
        let mut off = d.phi().clone();
        for i in 0..d.dim() {
            off.set(i, i, d.field().zero());
        }
        assert!(off.is_zero());
        let lambdas = eigenvalues(&d);
        let distinct: BTreeSet<String> = lambdas.iter().map(|x| x.to_string()).collect();
        assert_eq!(distinct.len(), d.dim());
    }
}

#[test]
fn balanced_modules_have_equal_endpoints() {
    for d in diagonal_modules().skip(1).step_by(2) {
        let full = Subspace::full(d.field(), d.dim());
        let all: Vec<usize> = (0..d.dim()).collect();
        assert_eq!(hodge_number(&d, &full), newton_number(&d, &all));
    }
}

#[test]
fn stable_subspaces_match_subsets() {
    for d in diagonal_modules() {
        let expected: BTreeSet<Subspace> = closed_sets(&d)
            .iter()
            .map(|set| Subspace::coordinate(d.field(), d.dim(), set))
            .collect();
        let got: Vec<Subspace> = stable_subspaces(&d).unwrap();
        assert_eq!(got.len(), expected.len());
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected);
    }
}

#[test]
fn complete_flags_are_closed_orderings() {
    fn count(d: &FilteredPhiNModule, closed: &BTreeSet<Vec<usize>>, prefix: &mut Vec<usize>) -> u128 {
        if prefix.len() == d.dim() {
            return 1;
        }
        let mut total = 0;
        for i in 0..d.dim() {
            if prefix.contains(&i) {
                continue;
            }
            prefix.push(i);
            let mut set = prefix.clone();
            set.sort_unstable();
            if closed.contains(&set) {
                total += count(d, closed, prefix);
            }
            prefix.pop();
        }
        total
    }
    for d in diagonal_modules() {
        let closed: BTreeSet<Vec<usize>> = closed_sets(&d).into_iter().collect();
        let expected = count(&d, &closed, &mut Vec::new());
        assert_eq!(is_trianguline(&d).unwrap(), (expected > 0, expected));
    }
}

#[test]
fn slopes_are_eigenvalue_valuations() {
    for d in diagonal_modules() {
        let expected =
            SlopeMultiset::from_values(eigenvalues(&d).iter().map(|x| x.valuation().finite().cloned().unwrap()));
        assert_eq!(d.slopes(), expected);
    }
}

#[test]
fn weak_admissibility_matches_brute_force() {
    let (mut admissible, mut proper) = (0, 0);
    for d in diagonal_modules() {
        let all: Vec<usize> = (0..d.dim()).collect();
        let full = Subspace::full(d.field(), d.dim());
        let endpoints = hodge_number(&d, &full) == newton_number(&d, &all);
        let first_bad = closed_sets(&d)
            .into_iter()
            .map(|set| {
                let s = Subspace::coordinate(d.field(), d.dim(), &set);
                let bad = hodge_number(&d, &s) > newton_number(&d, &set);
                (s, bad)
            })
            .filter(|(_, bad)| *bad)
            .map(|(s, _)| s)
            .min();
        let expected = endpoints && first_bad.is_none();
        let got = is_weakly_admissible(&d).unwrap();
        assert_eq!(got.admissible, expected);
        admissible += usize::from(expected);
        if !endpoints {
            assert!(got.endpoint_failure);
            assert_eq!(got.witness, Some(full));
        } else if !expected {
            proper += 1;
            assert!(!got.endpoint_failure);
            assert_eq!(got.witness, first_bad);
        }
    }
    assert!(admissible > 0 && proper > 0);
}
