//! Haar-distributed unitaries.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::cmat::CMatrix;
use super::{
    generator_rng, trial_rng, EntrySampleSet, Group, RmtError, SampleKind, SampleMeta, DET_TOL,
    UNITARITY_TOL,
};

/// A unitary matrix with its dimension and a checkable certificate.
#[derive(Debug, Clone)]
pub struct UnitarySample {
    dim: usize,
    matrix: CMatrix,
}

impl UnitarySample {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.entry(i, j)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn unitarity_error(&self) -> f64 {
        self.matrix.unitarity_error()
    }

    /// Certificate check: `max|U*U - I| <= 1e-10`, and in SU mode
    /// additionally `|det U - 1| <= 1e-9`.
    pub fn verify(&self, group: Group) -> Result<(), RmtError> {
        let err = self.unitarity_error();
        if err > UNITARITY_TOL {
            return Err(RmtError::UnitarityDrift(err));
        }
        if group == Group::SU {
            let det_err = (self.matrix.determinant() - Complex64::ONE).norm();
            if det_err > DET_TOL {
                return Err(RmtError::UnitarityDrift(det_err));
            }
        }
        Ok(())
    }
}

/// Draw one Haar-distributed element of U(d) or SU(d).
///
/// Fills a matrix with independent standard complex Gaussians and
/// orthonormalizes its columns; the subsequent per-column phase rotation
/// (making the triangular factor's diagonal real positive) is what makes the
/// output Haar rather than merely unitary — without it the first entry's
/// phase is pinned by the orthonormalization convention. SU mode divides by
/// a d-th root of the determinant.
pub fn sample_haar_unitary(
    dim: usize,
    group: Group,
    rng: &mut impl Rng,
) -> Result<UnitarySample, RmtError> {
    if dim < 2 {
        return Err(RmtError::DimensionTooSmall(dim));
    }
    // A zero pivot has probability zero; resample once, then give up.
    for _ in 0..2 {
        let g = ginibre(dim, rng);
        if let Some(mut u) = g.reunitarized() {
            if group == Group::SU {
                let det = u.determinant();
                let root = det.powf(1.0 / dim as f64);
                let data = u.data().iter().map(|z| z / root).collect();
                u = CMatrix::from_data(dim, data);
            }
            return Ok(UnitarySample { dim, matrix: u });
        }
    }
    Err(RmtError::DegenerateSample)
}

fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    CMatrix::from_data(dim, data)
}

/// A batch of Haar draws recording the (1,1)-entry or the trace of each.
/// Trials use independent RNG streams, so the batch is deterministic for a
/// given seed under any thread count.
pub fn haar_sample_set(
    dim: usize,
    group: Group,
    record: SampleKind,
    num_samples: usize,
    seed: u64,
) -> Result<EntrySampleSet, RmtError> {
    if dim < 2 {
        return Err(RmtError::DimensionTooSmall(dim));
    }
    if num_samples == 0 {
        return Err(RmtError::InvalidConfig("num_samples must be >= 1".into()));
    }
    let values = (0..num_samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let u = sample_haar_unitary(dim, group, &mut rng)?;
            Ok(match record {
                SampleKind::Entry => u.entry(0, 0),
                SampleKind::Trace => u.trace(),
            })
        })
        .collect::<Result<Vec<_>, RmtError>>()?;
    Ok(EntrySampleSet {
        values,
        meta: SampleMeta::Haar {
            dim,
            group,
            record,
            num_samples,
            seed,
        },
    })
}

/// Entry-law samples through the column marginal: the first column of a
/// Haar unitary is uniform on the complex unit sphere, so its first
/// coordinate has the same law as the (1,1)-entry at O(d) per draw. This is
/// what makes entry statistics reachable at dimensions in the hundreds.
pub fn haar_entry_marginal_set(
    dim: usize,
    num_samples: usize,
    seed: u64,
) -> Result<EntrySampleSet, RmtError> {
    if dim < 2 {
        return Err(RmtError::DimensionTooSmall(dim));
    }
    if num_samples == 0 {
        return Err(RmtError::InvalidConfig("num_samples must be >= 1".into()));
    }
    let values = (0..num_samples)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let first = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            let mut norm2 = first.norm_sqr();
            for _ in 1..dim {
                let z: Complex64 =
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                norm2 += z.norm_sqr();
            }
            first / norm2.sqrt()
        })
        .collect();
    Ok(EntrySampleSet {
        values,
        meta: SampleMeta::HaarEntryMarginal {
            dim,
            num_samples,
            seed,
        },
    })
}

/// Draw the fixed generator set for a walk (stream 0 of the seed).
pub(crate) fn draw_generators(
    dim: usize,
    group: Group,
    count: usize,
    seed: u64,
) -> Result<Vec<CMatrix>, RmtError> {
    let mut rng = generator_rng(seed);
    (0..count)
        .map(|_| Ok(sample_haar_unitary(dim, group, &mut rng)?.matrix().clone()))
        .collect()
}
