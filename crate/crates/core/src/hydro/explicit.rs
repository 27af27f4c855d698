//! Closed-form homoclinic of the special case `D = R1 = sigma = 1`,
//! `beta = 1/2`, `nu = 0`.
//!
//! There `G(R) = (R - 1)^2 Q(R)/8` with `Q = 7 - 2R - R^2`, and
//! `sqrt(8) R/((R - 1) sqrt(Q)) = sqrt(8)/sqrt(Q) + sqrt(8)/((R - 1) sqrt(Q))`
//! integrates to
//! `F(R) = sqrt(8) asin((R + 1)/sqrt(8)) + sqrt(2) ln((R - 1)/(3 - R + sqrt(Q)))`.

use alloc::format;

#[allow(unused_imports)]
use num_traits::Float;

use super::{HydroError, HydroModel};

/// The printed offset `sqrt(2) pi - ln 2`.
pub const PRINTED_OMEGA0: f64 = core::f64::consts::SQRT_2 * core::f64::consts::PI - core::f64::consts::LN_2;

/// Values of the braced expression, so each `omega = +-value`; all three
/// vanish (or, for `printed`, should vanish) at the peak `R3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitHomoclinic {
    /// The printed formula with its printed constant.
    pub printed: f64,
    /// The printed antiderivative shifted to vanish at `R3`.
    pub printed_normalized: f64,
    /// The corrected antiderivative shifted to vanish at `R3`.
    pub corrected: f64,
}

fn r3() -> f64 {
    2.0 * core::f64::consts::SQRT_2 - 1.0
}

fn asin_term(r: f64) -> f64 {
    let s8 = 8f64.sqrt();
    s8 * ((r + 1.0) / s8).min(1.0).asin()
}

/// `F(R)` above.
pub fn corrected_antiderivative(r: f64) -> f64 {
    let q = (7.0 - 2.0 * r - r * r).max(0.0);
    asin_term(r) + core::f64::consts::SQRT_2 * ((r - 1.0) / (3.0 - r + q.sqrt())).ln()
}

/// The printed expression without its constant: the radicand
/// `20 - 2(R^2 + 2R + 3)` equals `2Q`.
pub fn printed_antiderivative(r: f64) -> f64 {
    let q2 = (20.0 - 2.0 * (r * r + 2.0 * r + 3.0)).max(0.0);
    asin_term(r) + core::f64::consts::SQRT_2 * ((r - 1.0) / (3.0 - r + q2.sqrt())).ln()
}

pub fn explicit_homoclinic(model: &HydroModel, r: f64) -> Result<ExplicitHomoclinic, HydroError> {
    if !model.is_reference_instance() {
        return Err(HydroError::InvalidInput(
            "the closed form needs D = R1 = sigma = 1, beta = 1/2, nu = 0".into(),
        ));
    }
    let top = r3();
    if !(r > 1.0 && r <= top + 1e-12) {
        return Err(HydroError::OutOfDomain(format!("R = {r} outside (1, {top}]")));
    }
    let r = r.min(top);
    Ok(ExplicitHomoclinic {
        printed: printed_antiderivative(r) - PRINTED_OMEGA0,
        printed_normalized: printed_antiderivative(r) - printed_antiderivative(top),
        corrected: corrected_antiderivative(r) - corrected_antiderivative(top),
    })
}
