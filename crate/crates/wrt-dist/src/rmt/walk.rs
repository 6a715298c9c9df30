//! Random walks in a fixed generator set of U(d) or SU(d).

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cmat::{row_mul, CMatrix};
use super::haar::draw_generators;
use super::{trial_rng, EntrySampleSet, Group, RmtError, SampleKind, SampleMeta, UNITARITY_TOL};

/// Products drift off the unitary group by accumulated rounding; they are
/// re-orthonormalized (and propagated rows renormalized) at this cadence.
const REORTH_INTERVAL: usize = 64;

/// Configuration of one walk run. Identical configs reproduce identical
/// sample sets bit-for-bit, under any thread count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub dim: usize,
    pub group: Group,
    pub num_generators: usize,
    pub include_inverses: bool,
    pub walk_length: usize,
    pub num_samples: usize,
    pub seed: u64,
}

impl WalkConfig {
    /// Defaults: 3 generators plus inverses, walk length `50 * dim` (long
    /// enough that the walk's law is indistinguishable from Haar at the KS
    /// resolutions used here).
    pub fn new(dim: usize, group: Group, num_samples: usize, seed: u64) -> WalkConfig {
        WalkConfig {
            dim,
            group,
            num_generators: 3,
            include_inverses: true,
            walk_length: Self::default_walk_length(dim),
            num_samples,
            seed,
        }
    }

    pub fn default_walk_length(dim: usize) -> usize {
        50 * dim
    }

    pub fn validate(&self) -> Result<(), RmtError> {
        if self.dim < 2 {
            return Err(RmtError::DimensionTooSmall(self.dim));
        }
        let bad = |msg: &str| Err(RmtError::InvalidConfig(msg.into()));
        if self.num_generators < 2 {
            return bad("need at least 2 generators");
        }
        if self.walk_length == 0 {
            return bad("walk length must be >= 1");
        }
        if self.num_samples == 0 {
            return bad("need at least 1 sample");
        }
        Ok(())
    }

    /// The step set: the generators, plus their adjoints when inverses are
    /// enabled (a symmetric support avoids periodicity obstructions).
    fn steps(&self) -> Result<Vec<CMatrix>, RmtError> {
        let generators = draw_generators(self.dim, self.group, self.num_generators, self.seed)?;
        let mut steps = generators.clone();
        if self.include_inverses {
            steps.extend(generators.iter().map(CMatrix::adjoint));
        }
        Ok(steps)
    }
}

/// Walk recording the (1,1)-entry of each length-`walk_length` product.
///
/// The entry of the product is computed by propagating the first row
/// through the factors, which is the same number as the full product's
/// (1,1)-entry at a d-th of the cost; the row (a unit vector for an exact
/// unitary product) is renormalized at the re-orthonormalization cadence.
pub fn run_entry_walk(config: &WalkConfig) -> Result<EntrySampleSet, RmtError> {
    config.validate()?;
    let steps = config.steps()?;
    let values = (0..config.num_samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, trial as u64);
            let mut row = vec![Complex64::ZERO; config.dim];
            row[0] = Complex64::ONE;
            let mut buf = vec![Complex64::ZERO; config.dim];
            for step in 0..config.walk_length {
                let pick = rng.random_range(0..steps.len());
                row_mul(&row, &steps[pick], &mut buf);
                std::mem::swap(&mut row, &mut buf);
                if (step + 1) % REORTH_INTERVAL == 0 {
                    renormalize(&mut row)?;
                }
            }
            renormalize(&mut row)?;
            Ok(row[0])
        })
        .collect::<Result<Vec<_>, RmtError>>()?;
    Ok(EntrySampleSet {
        values,
        meta: SampleMeta::Walk {
            record: SampleKind::Entry,
            config: *config,
        },
    })
}

/// Walk recording the full trace of each product. Needs the whole matrix,
/// so each step is a d x d multiply; products are re-orthonormalized every
/// [`REORTH_INTERVAL`] steps and certified at the end.
///
/// Steps are consumed in groups through a precomputed table of all products
/// of `depth` step matrices, cutting the number of multiplies per trial by
/// `depth` without changing the sampled word: the indices are still drawn
/// one at a time, so the walk visits exactly the words the plain loop would.
pub fn run_trace_walk(config: &WalkConfig) -> Result<EntrySampleSet, RmtError> {
    config.validate()?;
    let steps = config.steps()?;
    let depth = block_depth(steps.len(), config.walk_length);
    run_trace_walk_with_depth(config, &steps, depth)
}

fn run_trace_walk_with_depth(
    config: &WalkConfig,
    steps: &[CMatrix],
    depth: usize,
) -> Result<EntrySampleSet, RmtError> {
    let blocks = build_blocks(steps, depth, config.dim);
    let values = (0..config.num_samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, trial as u64);
            let mut product = CMatrix::identity(config.dim);
            let mut buf = CMatrix::zeros(config.dim);
            let mut done = 0usize;
            let reorth = |product: &mut CMatrix, done: usize| {
                if done % REORTH_INTERVAL == 0 {
                    *product = product
                        .reunitarized()
                        .expect("product of unitaries stays full rank");
                }
            };
            for _ in 0..config.walk_length / depth {
                let mut idx = 0usize;
                for _ in 0..depth {
                    idx = idx * steps.len() + rng.random_range(0..steps.len());
                }
                product.mul_into(&blocks[idx], &mut buf);
                std::mem::swap(&mut product, &mut buf);
                done += depth;
                reorth(&mut product, done);
            }
            for _ in 0..config.walk_length % depth {
                let pick = rng.random_range(0..steps.len());
                product.mul_into(&steps[pick], &mut buf);
                std::mem::swap(&mut product, &mut buf);
                done += 1;
                reorth(&mut product, done);
            }
            let err = product.unitarity_error();
            if err > UNITARITY_TOL {
                return Err(RmtError::UnitarityDrift(err));
            }
            Ok(product.trace())
        })
        .collect::<Result<Vec<_>, RmtError>>()?;
    Ok(EntrySampleSet {
        values,
        meta: SampleMeta::Walk {
            record: SampleKind::Trace,
            config: *config,
        },
    })
}

/// Table size cap for precomputed step blocks (1296 matrices at the default
/// six-element step set and depth 4; a few MB at walk dimensions).
const MAX_BLOCK_TABLE: usize = 4096;

/// Depths are powers of two so they divide [`REORTH_INTERVAL`] exactly.
fn block_depth(num_steps: usize, walk_length: usize) -> usize {
    for depth in [4usize, 2] {
        if walk_length >= depth
            && num_steps.checked_pow(depth as u32).is_some_and(|t| t <= MAX_BLOCK_TABLE)
        {
            return depth;
        }
    }
    1
}

/// `blocks[i1 * L^(B-1) + ... + iB] = steps[i1] * ... * steps[iB]`.
fn build_blocks(steps: &[CMatrix], depth: usize, dim: usize) -> Vec<CMatrix> {
    let mut blocks = steps.to_vec();
    for _ in 1..depth {
        let mut next = Vec::with_capacity(blocks.len() * steps.len());
        for block in &blocks {
            for step in steps {
                let mut out = CMatrix::zeros(dim);
                block.mul_into(step, &mut out);
                next.push(out);
            }
        }
        blocks = next;
    }
    blocks
}

fn renormalize(row: &mut [Complex64]) -> Result<(), RmtError> {
    let norm2: f64 = row.iter().map(|z| z.norm_sqr()).sum();
    let drift = (norm2 - 1.0).abs();
    if drift > UNITARITY_TOL {
        return Err(RmtError::UnitarityDrift(drift));
    }
    let inv = 1.0 / norm2.sqrt();
    for z in row {
        *z *= inv;
    }
    Ok(())
}
