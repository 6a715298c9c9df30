//! Analytic comparison of scaled entry laws against the Rayleigh limit,
//! without any sampling.

use serde::{Deserialize, Serialize};

/// Sup distance on a fixed grid between the scaled entry tail and the
/// Rayleigh tail for one `(dim, scale)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub dim: u64,
    pub scale: f64,
    pub sup_distance: f64,
}

/// Tail of `scale * |X_dim|` at `x`: `(1 - (x/scale)^2)^(dim-1)` on its
/// support `[0, scale]`, zero beyond.
pub fn scaled_entry_tail(dim: u64, scale: f64, x: f64) -> f64 {
    let t = x / scale;
    if t >= 1.0 {
        return 0.0;
    }
    ((dim as f64 - 1.0) * (-t * t).ln_1p()).exp()
}

/// For each `(dim, scale)` pair, the sup over the grid
/// `x = 0.00, 0.01, .., 3.00` of the absolute difference between the scaled
/// entry tail and `e^(-x^2)`. The grid step bounds the off-grid error since
/// every law involved is Lipschitz-dominated on `[0, 3]`.
pub fn convergence_of_entry_law(pairs: &[(u64, f64)]) -> Vec<ConvergenceRow> {
    pairs
        .iter()
        .map(|&(dim, scale)| {
            let mut sup = 0.0f64;
            for i in 0..=300 {
                let x = i as f64 * 0.01;
                let diff = (scaled_entry_tail(dim, scale, x) - (-x * x).exp()).abs();
                sup = sup.max(diff);
            }
            ConvergenceRow {
                dim,
                scale,
                sup_distance: sup,
            }
        })
        .collect()
}
