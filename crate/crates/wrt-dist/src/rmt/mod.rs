//! Haar sampling on U(d)/SU(d) and seeded random walks in fixed generator
//! sets, recording (1,1)-entries or traces of the products.
//!
//! The walks model the equidistribution step with synthetic generators:
//! the true quantum representation matrices are never constructed, only a
//! Haar-random generator set of the configured size. What the distributional
//! statements need from the representation is density of the generated
//! subgroup, which holds almost surely for Haar-generic generators, so this
//! substitution is the simulation's one modeling assumption.

mod cmat;
mod haar;
mod walk;

pub use cmat::CMatrix;
pub use haar::{
    haar_entry_marginal_set, haar_sample_set, sample_haar_unitary, UnitarySample,
};
pub use walk::{run_entry_walk, run_trace_walk, WalkConfig};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tqft::{Level, TqftError};

/// Matrix-size certificate tolerance: `max|U*U - I|`.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Determinant tolerance for SU-mode samples.
pub const DET_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RmtError {
    #[error("dimension must be >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("orthonormalization hit a numerically zero pivot twice in a row")]
    DegenerateSample,
    #[error("invalid walk config: {0}")]
    InvalidConfig(String),
    #[error(
        "samples were drawn at dimension {have}, but level r={r} genus {genus} \
         needs dimension {need}"
    )]
    DimensionMismatch {
        have: usize,
        need: usize,
        r: u32,
        genus: u32,
    },
    #[error("operation needs (1,1)-entry samples, got trace samples")]
    SampleKindMismatch,
    #[error("unitarity drift {0:.3e} exceeds tolerance {UNITARITY_TOL:.0e}")]
    UnitarityDrift(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Tqft(#[from] TqftError),
}

/// Which compact group Haar measure is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Group {
    U,
    SU,
}

/// What a sample set records from each matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Entry,
    Trace,
}

/// Provenance of a sample set. Serialized verbatim into the CSV comment
/// header and the JSON `meta` key, so a file is always reproducible from
/// its own metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum SampleMeta {
    Haar {
        dim: usize,
        group: Group,
        record: SampleKind,
        num_samples: usize,
        seed: u64,
    },
    /// First-column marginal sampler: O(d) per draw instead of O(d^3).
    HaarEntryMarginal {
        dim: usize,
        num_samples: usize,
        seed: u64,
    },
    Walk {
        record: SampleKind,
        #[serde(flatten)]
        config: WalkConfig,
    },
}

impl SampleMeta {
    pub fn dim(&self) -> usize {
        match *self {
            SampleMeta::Haar { dim, .. } | SampleMeta::HaarEntryMarginal { dim, .. } => dim,
            SampleMeta::Walk { ref config, .. } => config.dim,
        }
    }

    pub fn kind(&self) -> SampleKind {
        match *self {
            SampleMeta::Haar { record, .. } => record,
            SampleMeta::HaarEntryMarginal { .. } => SampleKind::Entry,
            SampleMeta::Walk { record, .. } => record,
        }
    }
}

/// A batch of complex samples ((1,1)-entries or traces) plus the metadata
/// needed to reproduce it bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct EntrySampleSet {
    pub values: Vec<Complex64>,
    pub meta: SampleMeta,
}

impl EntrySampleSet {
    pub fn kind(&self) -> SampleKind {
        self.meta.kind()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    /// Check the declared sample count and the modulus bounds (<= 1 for
    /// entries, <= d for traces, up to the unitarity tolerance).
    pub fn verify(&self) -> Result<(), RmtError> {
        let n = match self.meta {
            SampleMeta::Haar { num_samples, .. }
            | SampleMeta::HaarEntryMarginal { num_samples, .. } => num_samples,
            SampleMeta::Walk { ref config, .. } => config.num_samples,
        };
        if self.values.len() != n {
            return Err(RmtError::Parse(format!(
                "metadata declares {n} samples, found {}",
                self.values.len()
            )));
        }
        let bound = match self.kind() {
            SampleKind::Entry => 1.0,
            SampleKind::Trace => self.meta.dim() as f64,
        };
        for z in &self.values {
            if z.norm() > bound * (1.0 + 1e-9) {
                return Err(RmtError::Parse(format!(
                    "sample modulus {} exceeds bound {bound}",
                    z.norm()
                )));
            }
        }
        Ok(())
    }

    /// CSV rendering: metadata as a `#` comment line, a `re,im` header row,
    /// then one row per sample. Floats print in shortest round-trip form.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&serde_json::to_string(&self.meta).expect("meta serializes"));
        out.push('\n');
        out.push_str("re,im\n");
        for z in &self.values {
            out.push_str(&format!("{},{}\n", z.re, z.im));
        }
        out
    }

    /// JSON rendering: one top-level object with `meta` and `data` keys.
    pub fn to_json_string(&self) -> String {
        let data: Vec<[f64; 2]> = self.values.iter().map(|z| [z.re, z.im]).collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "meta": self.meta,
            "data": data,
        }))
        .expect("sample set serializes")
    }

    pub fn from_csv_str(text: &str) -> Result<Self, RmtError> {
        let mut meta: Option<SampleMeta> = None;
        let mut values = Vec::new();
        let mut saw_header = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if meta.is_none() {
                    meta = serde_json::from_str(rest.trim()).ok();
                }
                continue;
            }
            if !saw_header {
                if line != "re,im" {
                    return Err(RmtError::Parse(format!(
                        "line {}: expected header 're,im', got '{line}'",
                        lineno + 1
                    )));
                }
                saw_header = true;
                continue;
            }
            let (re, im) = line.split_once(',').ok_or_else(|| {
                RmtError::Parse(format!("line {}: expected 're,im' pair", lineno + 1))
            })?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| RmtError::Parse(format!("line {}: {e}", lineno + 1)))
            };
            values.push(Complex64::new(parse(re)?, parse(im)?));
        }
        if !saw_header {
            return Err(RmtError::Parse("missing 're,im' header row".into()));
        }
        let meta = meta.ok_or_else(|| {
            RmtError::Parse("missing '# {...}' metadata comment line".into())
        })?;
        Ok(EntrySampleSet { values, meta })
    }

    pub fn from_json_str(text: &str) -> Result<Self, RmtError> {
        #[derive(Deserialize)]
        struct SampleSetJson {
            meta: SampleMeta,
            data: Vec<[f64; 2]>,
        }
        let parsed: SampleSetJson =
            serde_json::from_str(text).map_err(|e| RmtError::Parse(e.to_string()))?;
        Ok(EntrySampleSet {
            values: parsed
                .data
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
            meta: parsed.meta,
        })
    }
}

/// Rescale (1,1)-entry samples to invariant magnitudes: `mu^(1-g) |value|`.
/// The samples must have been drawn at the Hilbert-space dimension of
/// `(level, genus)`; every output is bounded by `mu^(1-g)`.
pub fn rescale_to_z(
    set: &EntrySampleSet,
    level: &Level,
    genus: u32,
) -> Result<Vec<f64>, RmtError> {
    if genus == 0 {
        return Err(TqftError::InvalidGenus(0).into());
    }
    if set.kind() != SampleKind::Entry {
        return Err(RmtError::SampleKindMismatch);
    }
    let need = level.verlinde_dimension(genus)? as usize;
    if set.meta.dim() != need {
        return Err(RmtError::DimensionMismatch {
            have: set.meta.dim(),
            need,
            r: level.r(),
            genus,
        });
    }
    let scale = level.mu().powi(1 - genus as i32);
    // |entry| <= 1 exactly for a unitary; clamp off the float fuzz so the
    // genus bound holds verbatim on the outputs.
    Ok(set
        .values
        .iter()
        .map(|z| scale * z.norm().min(1.0))
        .collect())
}

/// Per-trial RNG: one counter-based stream per trial index, derived from
/// the run seed, so parallel and serial execution produce identical output.
/// Stream 0 is reserved for drawing walk generators.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    rng
}

pub(crate) fn generator_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}
