//! JSON document formats: state ingestion and analysis reports.
//!
//! Complex numbers serialize as two-element `[re, im]` arrays at full
//! round-trip precision. Amplitude and matrix indexing follow the library
//! convention (qubit 1 is the most significant bit). Documents within 1e-6
//! of normalization are renormalized on ingestion and the adjustment is
//! reported; anything further off is rejected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{AnyState, MixedState, PureState};
use crate::Tolerances;

/// Ingestion tolerance for hand-authored documents.
pub const DOCUMENT_TOL: f64 = 1e-6;
/// Norm adjustments above this are surfaced as a warning field.
const RENORM_WARN: f64 = 1e-9;

/// A state in wire format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateDocument {
    Pure {
        n: usize,
        amplitudes: Vec<[f64; 2]>,
    },
    Mixed {
        n: usize,
        matrix: Vec<Vec<[f64; 2]>>,
    },
    Named {
        #[serde(flatten)]
        which: NamedState,
    },
    Symmetric {
        n: usize,
        dicke_coeffs: Vec<[f64; 2]>,
    },
}

/// Catalog entries addressable by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "parameters", rename_all = "snake_case")]
pub enum NamedState {
    Dicke { n: usize, ell: usize },
    Ghz { n: usize },
    W { n: usize },
    Bell { x: u8, y: u8 },
    Swapping {},
    Smolin {},
    GhzWMixture { n: usize, p: f64 },
    DickeMixture { n: usize, ell: usize, ell_prime: usize, p: f64 },
    RandomPure { n: usize, seed: u64 },
    RandomProduct { n: usize, sizes: Vec<usize>, seed: u64 },
}

/// Every valid catalog name, as accepted on the command line.
pub const CATALOG_NAMES: &[&str] = &[
    "dicke",
    "ghz",
    "w",
    "bell",
    "swapping",
    "smolin",
    "ghz_w_mixture",
    "dicke_mixture",
    "random_pure",
    "random_product",
];

fn to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn from_pair(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl NamedState {
    /// Materialize the named state from the catalog.
    pub fn build(&self) -> Result<AnyState> {
        Ok(match self {
            NamedState::Dicke { n, ell } => catalog::dicke(*n, *ell)?.into(),
            NamedState::Ghz { n } => catalog::ghz(*n)?.into(),
            NamedState::W { n } => catalog::w(*n)?.into(),
            NamedState::Bell { x, y } => catalog::bell(*x, *y)?.into(),
            NamedState::Swapping {} => catalog::swapping_state().into(),
            NamedState::Smolin {} => catalog::smolin().into(),
            NamedState::GhzWMixture { n, p } => catalog::ghz_w_mixture(*n, *p)?.into(),
            NamedState::DickeMixture {
                n,
                ell,
                ell_prime,
                p,
            } => catalog::dicke_mixture(*n, *ell, *ell_prime, *p)?.into(),
            NamedState::RandomPure { n, seed } => catalog::random_pure(*n, *seed)?.into(),
            NamedState::RandomProduct { n, sizes, seed } => {
                catalog::random_product(*n, sizes, *seed)?.into()
            }
        })
    }
}

impl StateDocument {
    /// Expanded wire form of a state (explicit amplitudes or matrix).
    pub fn from_state(state: &AnyState) -> Self {
        match state {
            AnyState::Pure(psi) => StateDocument::Pure {
                n: psi.n(),
                amplitudes: psi.amplitudes().iter().map(to_pair).collect(),
            },
            AnyState::Mixed(rho) => {
                let m = rho.matrix();
                let matrix = (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| to_pair(&m[(i, j)])).collect())
                    .collect();
                StateDocument::Mixed {
                    n: rho.n(),
                    matrix,
                }
            }
        }
    }

    /// Parse, validate and normalize into a state. The second value is the
    /// norm (or trace) adjustment applied, when it was large enough to note.
    pub fn ingest(&self) -> Result<(AnyState, Option<f64>)> {
        match self {
            StateDocument::Pure { n, amplitudes } => {
                if *n == 0 || amplitudes.len() != 1 << n {
                    return Err(Error::BadDimension {
                        n: *n,
                        got: amplitudes.len(),
                    });
                }
                let amps: Vec<Complex64> = amplitudes.iter().map(from_pair).collect();
                let norm = crate::linalg::vec_norm(&amps);
                if (norm - 1.0).abs() > DOCUMENT_TOL {
                    return Err(Error::NotNormalized { norm });
                }
                let psi = PureState::from_unnormalized(*n, amps)?;
                Ok((psi.into(), warn_delta(norm)))
            }
            StateDocument::Mixed { n, matrix } => {
                let dim = 1usize << n;
                if *n == 0 || matrix.len() != dim || matrix.iter().any(|row| row.len() != dim) {
                    return Err(Error::BadDimension {
                        n: *n,
                        got: matrix.len(),
                    });
                }
                let raw = CMatrix::new(
                    dim,
                    dim,
                    matrix.iter().flatten().map(from_pair).collect(),
                )?;
                if raw.hermiticity_defect() > DOCUMENT_TOL {
                    return Err(Error::NotHermitian {
                        max_dev: raw.hermiticity_defect(),
                    });
                }
                let trace = raw.trace().re;
                if (trace - 1.0).abs() > DOCUMENT_TOL {
                    return Err(Error::BadDensity(format!(
                        "trace is {trace}, expected 1 within {DOCUMENT_TOL}"
                    )));
                }
                // symmetrize and rescale away document round-off
                let herm = CMatrix::from_fn(dim, dim, |i, j| {
                    (raw[(i, j)] + raw[(j, i)].conj()) / 2.0 / trace
                });
                let rho = MixedState::new(*n, herm)?;
                Ok((rho.into(), warn_delta(trace)))
            }
            StateDocument::Named { which } => Ok((which.build()?, None)),
            StateDocument::Symmetric { n, dicke_coeffs } => {
                if *n == 0 || dicke_coeffs.len() != n + 1 {
                    return Err(Error::BadDimension {
                        n: *n,
                        got: dicke_coeffs.len(),
                    });
                }
                let coeffs: Vec<Complex64> = dicke_coeffs.iter().map(from_pair).collect();
                let norm = crate::linalg::vec_norm(&coeffs);
                if (norm - 1.0).abs() > DOCUMENT_TOL {
                    return Err(Error::NotNormalized { norm });
                }
                let sym = crate::state::SymmetricState::from_unnormalized(*n, coeffs)?;
                Ok((sym.to_pure().into(), warn_delta(norm)))
            }
        }
    }
}

fn warn_delta(norm: f64) -> Option<f64> {
    let delta = (norm - 1.0).abs();
    (delta > RENORM_WARN).then_some(delta)
}

/// One factor of a reported decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorDocument {
    pub qubits: Vec<usize>,
    pub state: StateDocument,
}

/// One bipartite product term of a sum-of-products report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDocument {
    pub left: Vec<[f64; 2]>,
    pub right: Vec<[f64; 2]>,
}

/// Sum-of-products section of a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub cut: Vec<usize>,
    pub term_count: usize,
    pub terms: Vec<TermDocument>,
    /// Largest amplitude error of the reassembled sum against the input.
    pub max_residual: f64,
}

/// Rank of one cut (pure inputs).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutRankEntry {
    pub cut: Vec<usize>,
    pub rank: usize,
}

/// Marginal-oracle outcome of one cut (mixed inputs).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutProductEntry {
    pub cut: Vec<usize>,
    pub product: bool,
    pub frobenius_distance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceDocument {
    pub rank: f64,
    pub frobenius: f64,
    pub eigen_zero: f64,
}

impl From<&Tolerances> for ToleranceDocument {
    fn from(t: &Tolerances) -> Self {
        Self {
            rank: t.rank,
            frobenius: t.frobenius,
            eigen_zero: t.eigen_zero,
        }
    }
}

/// Machine-readable outcome of one CLI command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: StateDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renormalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cut: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_phase: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorDocument>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_ranks: Option<Vec<CutRankEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_products: Option<Vec<CutProductEntry>>,
    pub method: String,
    pub tolerances: ToleranceDocument,
    pub timing_ms: f64,
}

impl ReportDocument {
    pub fn new(input: StateDocument, method: String, tols: &Tolerances) -> Self {
        Self {
            input,
            renormalized: None,
            verdict: None,
            witness_cut: None,
            degree: None,
            degree_witness: None,
            global_phase: None,
            factors: None,
            decomposition: None,
            cut_ranks: None,
            cut_products: None,
            method,
            tolerances: tols.into(),
            timing_ms: 0.0,
        }
    }
}
