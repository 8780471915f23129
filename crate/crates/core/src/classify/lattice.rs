use std::collections::HashMap;

use crate::linalg::{Flag, MatrixE, Subspace};
use crate::phimod::{Block, FilteredPhiNModule};

use super::EnumError;

/// The `(φ, N)`-stable subspaces of a module with coprime blocks.
///
/// Each block's `φ`-invariant subspaces form a chain, so every stable
/// subspace is a direct sum indexed by a level vector (one level per block)
/// and containment is the componentwise order on levels.
#[derive(Debug, Clone)]
pub struct StableLattice {
    /// Per block: the chain of invariant subspaces, embedded in the ambient space.
    chains: Vec<Vec<Subspace>>,
    /// Stable members as `(levels, subspace)`, in canonical subspace order.
    members: Vec<(Vec<usize>, Subspace)>,
}

impl StableLattice {
    pub fn new(d: &FilteredPhiNModule) -> Result<Self, EnumError> {
        check_coprime(d.blocks())?;
        let f = d.field();
        let n = d.dim();
        let chains: Vec<Vec<Subspace>> = d
            .blocks()
            .iter()
            .zip(d.block_ranges())
            .map(|(b, r)| block_chain(b).into_iter().map(|s| s.embed(n, r.start)).collect())
            .collect();
        let mut members = Vec::new();
        let mut levels = vec![0usize; chains.len()];
        loop {
            let mut s = Subspace::zero(f, n);
            for (c, &l) in chains.iter().zip(&levels) {
                s = s.sum(&c[l]).expect("same ambient");
            }
            if s.is_invariant(d.monodromy()).expect("square monodromy") {
                members.push((levels.clone(), s));
            }
            // Odometer over the level vectors.
            let mut i = 0;
            while i < levels.len() {
                levels[i] += 1;
                if levels[i] < chains[i].len() {
                    break;
                }
                levels[i] = 0;
                i += 1;
            }
            if i == levels.len() {
                break;
            }
        }
        members.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(StableLattice { chains, members })
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.members.iter().map(|(_, s)| s.clone()).collect()
    }

    pub fn members(&self) -> &[(Vec<usize>, Subspace)] {
        &self.members
    }

    pub fn block_chains(&self) -> &[Vec<Subspace>] {
        &self.chains
    }

    /// Indices of members strictly inside member `i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        let top = &self.members[i].0;
        (0..self.members.len())
            .filter(|&j| j != i && leq(&self.members[j].0, top))
            .collect()
    }

    fn index_of_full(&self) -> usize {
        self.members
            .iter()
            .position(|(_, s)| s.is_full())
            .expect("full space is stable")
    }

    /// Number of complete stable flags.
    pub fn count_complete_flags(&self) -> u128 {
        let mut memo: HashMap<usize, u128> = HashMap::new();
        self.count_from(self.index_of_full(), &mut memo)
    }

    fn count_from(&self, i: usize, memo: &mut HashMap<usize, u128>) -> u128 {
        let dim = self.members[i].1.dim();
        if dim == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&i) {
            return c;
        }
        let mut total = 0;
        for j in self.below(i) {
            if self.members[j].1.dim() + 1 == dim {
                total += self.count_from(j, memo);
            }
        }
        memo.insert(i, total);
        total
    }

    /// All strictly decreasing chains from the full space to zero with at
    /// most `max_length` steps, in canonical order.
    pub fn flags(&self, max_length: Option<usize>) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut path = vec![self.index_of_full()];
        self.extend_flags(&mut path, max_length, &mut out);
        out.sort();
        out
    }

    fn extend_flags(&self, path: &mut Vec<usize>, max_length: Option<usize>, out: &mut Vec<Flag>) {
        let last = *path.last().expect("nonempty path");
        if self.members[last].1.is_zero() {
            let chain = path.iter().map(|&i| self.members[i].1.clone()).collect();
            out.push(Flag::new(chain).expect("strict chain"));
            return;
        }
        if max_length.is_some_and(|m| path.len() > m) {
            return;
        }
        for j in self.below(last) {
            path.push(j);
            self.extend_flags(path, max_length, out);
            path.pop();
        }
    }
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Invariant chain of one block in its own coordinates.
fn block_chain(b: &Block) -> Vec<Subspace> {
    let m = b.matrix().expect("validated block");
    let f = b.field();
    let n = b.size();
    match b {
        Block::Eigen(_) => vec![Subspace::zero(f, 1), Subspace::full(f, 1)],
        Block::Irreducible { .. } => vec![Subspace::zero(f, n), Subspace::full(f, n)],
        Block::Jordan { .. } => {
            let lambda = b.eigenvalue().expect("jordan eigenvalue").clone();
            let shifted = m.sub(&MatrixE::identity(f, n).scale(&lambda)).expect("square");
            (0..=n)
                .map(|k| {
                    let kernel = shifted.pow(k).expect("square").kernel();
                    Subspace::span(f, n, &kernel).expect("kernel vectors")
                })
                .collect()
        }
    }
}

fn check_coprime(blocks: &[Block]) -> Result<(), EnumError> {
    let polys: Vec<_> = blocks.iter().map(Block::charpoly).collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let g = polys[i].gcd(&polys[j]);
            if g.degree().unwrap_or(0) > 0 {
                return Err(EnumError::Infeasible(format!(
                    "blocks {i} and {j} share the factor {g}; their stable subspaces form a positive-dimensional family"
                )));
            }
        }
    }
    Ok(())
}
