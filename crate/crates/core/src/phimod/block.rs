use num_bigint::BigInt;

use crate::arith::{ArithError, Field, Polynomial, Rational, Scalar};
use crate::linalg::{LinalgError, MatrixE};

/// Which representative matrix a block uses.
///
/// `Contragredient` blocks arise from duals: their matrix is the inverse
/// transpose of the standard matrix of the inverted data, so dualizing twice
/// returns the original matrix exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Contragredient,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Contragredient,
            Orientation::Contragredient => Orientation::Standard,
        }
    }
}

/// One diagonal block of Frobenius.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block {
    /// `1x1` block `[λ]`.
    Eigen(Scalar),
    /// Single Jordan block. The standard matrix is `λ·exp(S)` with `S` the
    /// nilpotent shift `e_j -> e_{j-1}`, entries `λ/(j-i)!` above the diagonal.
    Jordan {
        eigenvalue: Scalar,
        size: usize,
        orientation: Orientation,
    },
    /// Block with irreducible characteristic polynomial `f` (user asserted).
    /// The standard matrix is the companion matrix of `f`.
    Irreducible { poly: Polynomial, orientation: Orientation },
}

impl Block {
    pub fn jordan(eigenvalue: Scalar, size: usize) -> Self {
        Block::Jordan {
            eigenvalue,
            size,
            orientation: Orientation::Standard,
        }
    }

    pub fn irreducible(poly: Polynomial) -> Self {
        Block::Irreducible {
            poly,
            orientation: Orientation::Standard,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Block::Eigen(_) => 1,
            Block::Jordan { size, .. } => *size,
            Block::Irreducible { poly, .. } => poly.degree().unwrap_or(0),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Block::Eigen(l) | Block::Jordan { eigenvalue: l, .. } => l.field(),
            Block::Irreducible { poly, .. } => poly.field(),
        }
    }

    /// The declared eigenvalue of an `Eigen` or `Jordan` block.
    pub fn eigenvalue(&self) -> Option<&Scalar> {
        match self {
            Block::Eigen(l) | Block::Jordan { eigenvalue: l, .. } => Some(l),
            Block::Irreducible { .. } => None,
        }
    }

    /// Characteristic polynomial of the block.
    pub fn charpoly(&self) -> Polynomial {
        match self {
            Block::Eigen(l) => Polynomial::linear(l),
            Block::Jordan { eigenvalue, size, .. } => {
                let lin = Polynomial::linear(eigenvalue);
                (0..*size).fold(Polynomial::one(eigenvalue.field()), |acc, _| acc.mul(&lin))
            }
            Block::Irreducible { poly, .. } => poly.clone(),
        }
    }

    /// Checks the block data is usable; the message names the defect.
    pub fn check(&self) -> Result<(), BlockDefect> {
        match self {
            Block::Eigen(l) if l.is_zero() => Err(BlockDefect::Singular),
            Block::Jordan { eigenvalue, size, .. } => {
                if *size == 0 {
                    Err(BlockDefect::Malformed("Jordan block of size zero".into()))
                } else if eigenvalue.is_zero() {
                    Err(BlockDefect::Singular)
                } else {
                    Ok(())
                }
            }
            Block::Irreducible { poly, .. } => {
                if !poly.is_monic() {
                    Err(BlockDefect::Malformed(
                        "irreducible block polynomial is not monic".into(),
                    ))
                } else if poly.degree() == Some(0) {
                    Err(BlockDefect::Malformed(
                        "irreducible block polynomial is constant".into(),
                    ))
                } else if poly.coeff(0).is_zero() {
                    Err(BlockDefect::Singular)
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Matrix of the block in its own coordinates.
    pub fn matrix(&self) -> Result<MatrixE, LinalgError> {
        match self {
            Block::Eigen(l) => Ok(MatrixE::diagonal(l.field(), std::slice::from_ref(l))),
            Block::Jordan {
                eigenvalue,
                size,
                orientation: Orientation::Standard,
            } => Ok(jordan_exp(eigenvalue, *size)),
            Block::Jordan {
                eigenvalue,
                size,
                orientation: Orientation::Contragredient,
            } => Ok(jordan_exp(&eigenvalue.inv()?, *size).inverse()?.transpose()),
            Block::Irreducible {
                poly,
                orientation: Orientation::Standard,
            } => Ok(companion(poly)),
            Block::Irreducible {
                poly,
                orientation: Orientation::Contragredient,
            } => Ok(companion(&poly.reciprocal()?).inverse()?.transpose()),
        }
    }

    /// Block of the dual module, acting by the inverse transpose.
    pub fn dual(&self) -> Result<Block, ArithError> {
        Ok(match self {
            Block::Eigen(l) => Block::Eigen(l.inv()?),
            Block::Jordan {
                eigenvalue,
                size,
                orientation,
            } => Block::Jordan {
                eigenvalue: eigenvalue.inv()?,
                size: *size,
                orientation: orientation.flip(),
            },
            Block::Irreducible { poly, orientation } => Block::Irreducible {
                poly: poly.reciprocal()?,
                orientation: orientation.flip(),
            },
        })
    }

    /// Block for Frobenius scaled by `c`, together with the diagonal entries
    /// of the change of basis `P` such that `P^{-1} (c·B) P` is the new
    /// block's matrix.
    pub fn scaled(&self, c: &Scalar) -> (Block, Vec<Scalar>) {
        let f = c.field();
        match self {
            Block::Eigen(l) => (Block::Eigen(l * c), vec![f.one()]),
            Block::Jordan {
                eigenvalue,
                size,
                orientation,
            } => (
                Block::Jordan {
                    eigenvalue: eigenvalue * c,
                    size: *size,
                    orientation: *orientation,
                },
                vec![f.one(); *size],
            ),
            Block::Irreducible { poly, orientation } => {
                let n = poly.degree().unwrap_or(0);
                let mut diag = Vec::with_capacity(n);
                let mut pow = f.one();
                for _ in 0..n {
                    diag.push(pow.clone());
                    pow = &pow * c;
                }
                (
                    Block::Irreducible {
                        poly: poly.scale_roots(c),
                        orientation: *orientation,
                    },
                    diag,
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockDefect {
    Singular,
    Malformed(String),
}

fn jordan_exp(lambda: &Scalar, size: usize) -> MatrixE {
    let f = lambda.field();
    let mut m = MatrixE::zeros(f, size, size);
    let mut fact = BigInt::from(1);
    for k in 0..size {
        if k > 0 {
            fact *= k;
        }
        let entry = lambda * &Scalar::from_rational(f, Rational::new(1.into(), fact.clone()));
        for i in 0..size - k {
            m.set(i, i + k, entry.clone());
        }
    }
    m
}

/// Companion matrix: `e_j -> e_{j+1}`, `e_{n-1} -> -sum a_i e_i`.
fn companion(poly: &Polynomial) -> MatrixE {
    let f = poly.field();
    let n = poly.degree().unwrap_or(0);
    let mut m = MatrixE::zeros(f, n, n);
    for j in 0..n.saturating_sub(1) {
        m.set(j + 1, j, f.one());
    }
    for i in 0..n {
        m.set(i, n - 1, -&poly.coeff(i));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn matrices_have_declared_charpoly() {
        let f = f();
        let poly = Polynomial::new(f, vec![f.int(-2), f.int(1), f.zero(), f.one()]).unwrap();
        for b in [
            Block::Eigen(f.int(5)),
            Block::jordan(f.p_pow(-1), 3),
            Block::irreducible(poly.clone()),
        ] {
            assert_eq!(b.matrix().unwrap().charpoly().unwrap(), b.charpoly());
            let d = b.dual().unwrap();
            assert_eq!(d.matrix().unwrap(), b.matrix().unwrap().inverse().unwrap().transpose());
            assert_eq!(d.matrix().unwrap().charpoly().unwrap(), d.charpoly());
            assert_eq!(d.dual().unwrap(), b);
        }
    }

    #[test]
    fn scaling_conjugates_to_new_block() {
        let f = f();
        let c = f.p_pow(-2);
        let poly = Polynomial::new(f, vec![f.int(-2), f.int(1), f.zero(), f.one()]).unwrap();
        for b in [
            Block::jordan(f.int(7), 2),
            Block::irreducible(poly.clone()),
            Block::irreducible(poly).dual().unwrap(),
        ] {
            let (nb, diag) = b.scaled(&c);
            let p = MatrixE::diagonal(f, &diag);
            let conj = p
                .inverse()
                .unwrap()
                .mul(&b.matrix().unwrap().scale(&c))
                .unwrap()
                .mul(&p)
                .unwrap();
            assert_eq!(conj, nb.matrix().unwrap());
        }
    }

    #[test]
    fn defects() {
        let f = f();
        assert_eq!(Block::Eigen(f.zero()).check(), Err(BlockDefect::Singular));
        assert!(matches!(
            Block::jordan(f.one(), 0).check(),
            Err(BlockDefect::Malformed(_))
        ));
        let not_monic = Polynomial::new(f, vec![f.one(), f.int(2)]).unwrap();
        assert!(matches!(
            Block::irreducible(not_monic).check(),
            Err(BlockDefect::Malformed(_))
        ));
    }
}
