use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Most blocks used at the finest blocking level.
pub const MAX_BLOCKS: usize = 1 << 10;
/// Fewest blocks any reported error is based on.
pub const MIN_BLOCKS: usize = 8;

/// Mean of a correlated series with a blocking-analysis standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_blocks: usize,
}

fn naive_error(blocks: &[f64]) -> f64 {
    let n = blocks.len() as f64;
    let mean = blocks.iter().sum::<f64>() / n;
    let var = blocks.iter().map(|b| (b - mean) * (b - mean)).sum::<f64>() / (n - 1.0);
    (var / n).sqrt()
}

/// Blocking (Flyvbjerg–Petersen) estimate.
///
/// The series is first averaged into at most [`MAX_BLOCKS`] blocks, then the
/// block size is doubled until the naive standard error stops growing by
/// more than its own statistical uncertainty `σ/sqrt(2(n_b - 1))`, or until
/// only [`MIN_BLOCKS`] blocks remain.
pub fn blocking_estimate(samples: &[f64]) -> Result<McEstimate> {
    if samples.len() < MIN_BLOCKS {
        return Err(Error::InvalidConfig {
            field: "sweeps",
            reason: "a blocking estimate needs at least 8 samples",
        });
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;

    let block_size = samples.len().div_ceil(MAX_BLOCKS);
    let mut blocks: Vec<f64> = samples
        .chunks_exact(block_size)
        .map(|c| c.iter().sum::<f64>() / block_size as f64)
        .collect();

    let mut levels: Vec<(f64, usize)> = Vec::new();
    while blocks.len() >= MIN_BLOCKS {
        levels.push((naive_error(&blocks), blocks.len()));
        blocks = blocks.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    }

    let mut chosen = *levels.last().expect("at least one level with 8 blocks");
    for pair in levels.windows(2) {
        let (se, nb) = pair[0];
        let (next_se, _) = pair[1];
        let uncertainty = se / (2.0 * (nb as f64 - 1.0)).sqrt();
        if next_se <= se + uncertainty {
            chosen = (se.max(next_se), nb);
            break;
        }
    }
    Ok(McEstimate { mean, std_error: chosen.0, n_blocks: chosen.1 })
}
