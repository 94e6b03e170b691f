//! Optical path: CW laser, Mach-Zehnder and electro-absorption modulators,
//! linear dispersive fiber, EDFA with ASE, and the variable attenuator.
//!
//! One polarization is modeled throughout. Fiber Kerr nonlinearity is not
//! modeled; at <= 13 dBm over a few km the nonlinear phase is negligible.

mod eam;
mod edfa;
mod fiber;
mod laser;
mod mzm;
mod voa;

pub use eam::{eam_modulate, EamSpec};
pub use edfa::{ase_psd, edfa_amplify, EdfaSpec};
pub use fiber::{beta2, fiber_propagate, FiberSpec};
pub use laser::{cw_laser, LaserSpec};
pub use mzm::{mzm_modulate, mzm_modulate_dual, MzmSpec};
pub use voa::{attenuation_for_rop, voa};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Converts ps/(nm km) to s/m^2.
pub fn ps_per_nm_km(d: f64) -> f64 {
    d * 1e-6
}
