//! The module file format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use tord_core::arith::{scalar_parse, ArithError, Field, Polynomial, Scalar};
use tord_core::linalg::MatrixE;
use tord_core::phimod::{validate_module, Block, FilteredPhiNModule, Orientation, RawModule, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub prime: u64,
    pub ramification: u32,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub blocks: Vec<BlockDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<Vec<String>>>,
    pub hodge: Vec<HodgeJumpDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BlockDocument {
    Eigen {
        eigenvalue: String,
    },
    Jordan {
        eigenvalue: String,
        size: usize,
        #[serde(default, skip_serializing_if = "is_false")]
        dual: bool,
    },
    Irreducible {
        /// Coefficients from the constant term up to the leading 1.
        polynomial: Vec<String>,
        #[serde(default, skip_serializing_if = "is_false")]
        dual: bool,
    },
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeJumpDocument {
    pub degree: i64,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Scalar {
        location: String,
        #[source]
        source: ArithError,
    },
    #[error("{0}")]
    Field(ArithError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

fn scalar(text: &str, field: Field, location: impl FnOnce() -> String) -> Result<Scalar, DocumentError> {
    scalar_parse(text, field).map_err(|source| DocumentError::Scalar {
        location: location(),
        source,
    })
}

fn scalar_rows(rows: &[Vec<String>], field: Field, what: &str) -> Result<Vec<Vec<Scalar>>, DocumentError> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, t)| scalar(t, field, || format!("{what}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

impl ModuleDocument {
    pub fn parse(text: &str) -> Result<ModuleDocument, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn to_raw(&self) -> Result<RawModule, DocumentError> {
        let field = Field::new(self.prime, self.ramification).map_err(DocumentError::Field)?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| block_from_doc(b, field, i))
            .collect::<Result<Vec<_>, _>>()?;
        let monodromy = match &self.monodromy {
            None => None,
            Some(rows) => {
                let rows = scalar_rows(rows, field, "monodromy")?;
                Some(MatrixE::from_rows(field, rows).map_err(|e| DocumentError::Shape(format!("monodromy: {e}")))?)
            }
        };
        let hodge = self
            .hodge
            .iter()
            .enumerate()
            .map(|(a, j)| {
                let basis = scalar_rows(&j.basis, field, &format!("hodge[{a}].basis"))?;
                if basis.iter().any(|v| v.len() != self.dimension) {
                    return Err(DocumentError::Shape(format!(
                        "hodge[{a}]: basis vectors must have length {}",
                        self.dimension
                    )));
                }
                Ok((j.degree, basis))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RawModule {
            field,
            dimension: self.dimension,
            labels: self.labels.clone(),
            blocks,
            phi: None,
            monodromy,
            hodge,
        })
    }

    pub fn to_module(&self) -> Result<FilteredPhiNModule, DocumentError> {
        Ok(validate_module(self.to_raw()?)?)
    }

    pub fn from_module(d: &FilteredPhiNModule) -> ModuleDocument {
        let f = d.field();
        let rows = |m: &[Vec<Scalar>]| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        };
        ModuleDocument {
            prime: f.prime(),
            ramification: f.ramification(),
            dimension: d.dim(),
            labels: d.labels().to_vec(),
            blocks: d.blocks().iter().map(block_to_doc).collect(),
            monodromy: (!d.monodromy().is_zero()).then(|| rows(&d.monodromy().row_vecs())),
            hodge: d
                .hodge()
                .jumps()
                .iter()
                .map(|(n, s)| HodgeJumpDocument {
                    degree: *n,
                    basis: rows(s.basis()),
                })
                .collect(),
        }
    }
}

fn orientation(dual: bool) -> Orientation {
    if dual {
        Orientation::Contragredient
    } else {
        Orientation::Standard
    }
}

fn block_from_doc(b: &BlockDocument, field: Field, i: usize) -> Result<Block, DocumentError> {
    Ok(match b {
        BlockDocument::Eigen { eigenvalue } => {
            Block::Eigen(scalar(eigenvalue, field, || format!("blocks[{i}].eigenvalue"))?)
        }
        BlockDocument::Jordan { eigenvalue, size, dual } => Block::Jordan {
            eigenvalue: scalar(eigenvalue, field, || format!("blocks[{i}].eigenvalue"))?,
            size: *size,
            orientation: orientation(*dual),
        },
        BlockDocument::Irreducible { polynomial, dual } => {
            let coeffs = polynomial
                .iter()
                .enumerate()
                .map(|(j, t)| scalar(t, field, || format!("blocks[{i}].polynomial[{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Block::Irreducible {
                poly: Polynomial::new(field, coeffs).map_err(|source| DocumentError::Scalar {
                    location: format!("blocks[{i}].polynomial"),
                    source,
                })?,
                orientation: orientation(*dual),
            }
        }
    })
}

fn block_to_doc(b: &Block) -> BlockDocument {
    match b {
        Block::Eigen(l) => BlockDocument::Eigen {
            eigenvalue: l.to_string(),
        },
        Block::Jordan {
            eigenvalue,
            size,
            orientation,
        } => BlockDocument::Jordan {
            eigenvalue: eigenvalue.to_string(),
            size: *size,
            dual: *orientation == Orientation::Contragredient,
        },
        Block::Irreducible { poly, orientation } => BlockDocument::Irreducible {
            polynomial: poly.coeffs().iter().map(ToString::to_string).collect(),
            dual: *orientation == Orientation::Contragredient,
        },
    }
}
