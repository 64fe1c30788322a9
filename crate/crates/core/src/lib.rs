//! Tensor densities on the sphere Sⁿ as a (𝔤,K)-module for 𝔤 = o(n+1,1), K = SO(n+1).
//!
//! Exact symbolic layers ([`exact`], [`chart`], [`harmonic`], [`gk`]) build the action of the
//! conformal algebra on K-finite densities and classify submodules; floating-point layers
//! ([`lorentz`], [`sphere`], [`theta`]) realize the spherical principal series and check the
//! equivalence with densities at ν = nλ.

#![allow(clippy::type_complexity)]

pub mod chart;
pub mod error;
pub mod exact;
pub mod gk;
pub mod harmonic;
pub mod lorentz;
pub mod selftest;
pub mod sphere;
pub mod theta;

pub use error::{Error, Result};

/// Caps the worker threads used by parallel model construction. Call before any other work.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Validation(format!("thread pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> Result<()> {
    Ok(())
}
