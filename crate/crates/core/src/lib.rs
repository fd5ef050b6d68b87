//! Entropy production of spin models across their ordering transition, and
//! the erasure bounds that follow from it.
//!
//! * [`specfun`]: Langevin, Brillouin, modified Bessel and log-gamma kernels.
//! * [`meanfield`]: self-consistent magnetization, entropy and free energy
//!   of `Z_2`, classical O(n), quantum spin-s and regularized spin models.
//! * [`erasure`]: discrete and analog erasure entropies, state capacity of
//!   an angular momentum and the minimum reset heat.
//! * [`montecarlo`]: Curie–Weiss Metropolis sampling and thermodynamic
//!   integration, used to cross-check the mean-field results.
//!
//! The crate is `no_std` and needs only `alloc`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#![no_std]

extern crate alloc;

pub mod erasure;
mod error;
pub mod meanfield;
pub mod montecarlo;
pub mod specfun;

pub use error::{Error, Result};
pub use meanfield::{HalfInteger, ModelSpec, SpinModel};
