use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{McConfig, McModel};

/// Share of O(n) proposals that redraw the spin uniformly instead of
/// perturbing it.
pub const GLOBAL_MOVE_FRACTION: f64 = 0.1;

/// Uniform point on the unit sphere in `out.len()` dimensions, from
/// normalized standard-normal components.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for c in out.iter_mut() {
            *c = rng.sample(StandardNormal);
            norm2 += *c * *c;
        }
        if norm2 > 1e-24 {
            let inv = 1.0 / norm2.sqrt();
            out.iter_mut().for_each(|c| *c *= inv);
            return;
        }
    }
}

/// Metropolis chain for the all-to-all model `H = -(J/2N)|Σ s_i|²`.
///
/// The total spin is carried incrementally, so each proposal costs
/// `O(dim)`: for `s_i → s_i + Δ`,
/// `ΔE = -(J/N) S·Δ - (J/2N)|Δ|²`.
#[derive(Debug, Clone)]
pub struct Chain {
    dim: usize,
    n_spins: usize,
    spins: Vec<f64>,
    total: Vec<f64>,
    proposal_width: f64,
    rng: ChaCha8Rng,
    scratch: Vec<f64>,
}

impl Chain {
    /// Spins start from independent uniform orientations drawn from the
    /// config seed.
    pub fn new(config: &McConfig) -> Self {
        let dim = config.model.dimension();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut spins = vec![0.0; dim * config.n_spins];
        match config.model {
            McModel::CurieWeissIsing => {
                for s in spins.iter_mut() {
                    *s = if rng.random::<bool>() { 1.0 } else { -1.0 };
                }
            }
            McModel::CurieWeissOn { .. } => {
                for s in spins.chunks_exact_mut(dim) {
                    random_unit_vector(&mut rng, s);
                }
            }
        }
        let mut chain = Chain {
            dim,
            n_spins: config.n_spins,
            spins,
            total: vec![0.0; dim],
            proposal_width: config.proposal_width,
            rng,
            scratch: vec![0.0; dim],
        };
        chain.total = chain.recompute_total();
        chain
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn spins(&self) -> &[f64] {
        &self.spins
    }

    pub fn spin(&self, i: usize) -> &[f64] {
        &self.spins[i * self.dim..(i + 1) * self.dim]
    }

    /// Incrementally maintained total spin.
    pub fn total(&self) -> &[f64] {
        &self.total
    }

    /// Total spin summed from scratch.
    pub fn recompute_total(&self) -> Vec<f64> {
        let mut total = vec![0.0; self.dim];
        for s in self.spins.chunks_exact(self.dim) {
            total.iter_mut().zip(s).for_each(|(t, c)| *t += c);
        }
        total
    }

    /// Replaces the running total by a fresh sum.
    pub fn resync(&mut self) {
        self.total = self.recompute_total();
    }

    fn total_norm2(&self) -> f64 {
        self.total.iter().map(|c| c * c).sum()
    }

    /// `|Σ s_i| / N`.
    pub fn magnetization(&self) -> f64 {
        self.total_norm2().sqrt() / self.n_spins as f64
    }

    /// `E/(NJ) = -|Σ s_i|² / (2N²)`.
    pub fn energy_per_spin(&self) -> f64 {
        let n = self.n_spins as f64;
        -self.total_norm2() / (2.0 * n * n)
    }

    /// One sweep of `N` single-spin proposals at random sites. Returns the
    /// number accepted.
    pub fn sweep(&mut self, beta: f64) -> usize {
        let n = self.n_spins as f64;
        let mut accepted = 0;
        for _ in 0..self.n_spins {
            let i = self.rng.random_range(0..self.n_spins);
            let base = i * self.dim;
            let old = &self.spins[base..base + self.dim];
            if self.dim == 1 {
                self.scratch[0] = -old[0];
            } else if self.rng.random::<f64>() < GLOBAL_MOVE_FRACTION {
                random_unit_vector(&mut self.rng, &mut self.scratch);
            } else {
                // Gaussian kick then renormalize: the proposal density depends
                // only on the angle between old and new spin, so it is symmetric.
                let mut norm2 = 0.0;
                for (k, c) in self.scratch.iter_mut().enumerate() {
                    let kick: f64 = self.rng.sample(StandardNormal);
                    *c = old[k] + self.proposal_width * kick;
                    norm2 += *c * *c;
                }
                if norm2 < 1e-24 {
                    continue;
                }
                let inv = 1.0 / norm2.sqrt();
                self.scratch.iter_mut().for_each(|c| *c *= inv);
            }

            let mut s_dot_d = 0.0;
            let mut d2 = 0.0;
            for k in 0..self.dim {
                let d = self.scratch[k] - self.spins[base + k];
                s_dot_d += self.total[k] * d;
                d2 += d * d;
            }
            let delta_e = -s_dot_d / n - d2 / (2.0 * n);
            let accept = delta_e <= 0.0 || self.rng.random::<f64>() < (-beta * delta_e).exp();
            if accept {
                for k in 0..self.dim {
                    let new = self.scratch[k];
                    self.total[k] += new - self.spins[base + k];
                    self.spins[base + k] = new;
                }
                accepted += 1;
            }
        }
        accepted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..6 {
            let mut v = vec![0.0; n];
            for _ in 0..100 {
                random_unit_vector(&mut rng, &mut v);
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unit_vector_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 100_000;
        let mut v = [0.0; 3];
        let mut sums = [0.0; 3];
        let mut z2 = 0.0;
        for _ in 0..draws {
            random_unit_vector(&mut rng, &mut v);
            sums.iter_mut().zip(&v).for_each(|(s, c)| *s += c);
            z2 += v[2] * v[2];
        }
        let tol = 4.0 / (draws as f64).sqrt();
        for s in sums {
            assert!((s / draws as f64).abs() < tol);
        }
        assert!((z2 / draws as f64 - 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn spins_stay_on_the_sphere() {
        let config = McConfig::new(McModel::CurieWeissOn { n: 3 }, 64, 0.3);
        let mut chain = Chain::new(&config);
        for _ in 0..50 {
            chain.sweep(1.0 / 0.3);
        }
        for i in 0..chain.n_spins() {
            let norm = chain.spin(i).iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
