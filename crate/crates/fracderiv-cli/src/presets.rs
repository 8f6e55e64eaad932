//! Reference parameter sets shared by the figure and validation presets.

use fracderiv::solvers::{AbelSpec, BesselSpec, OscillatorSpec};
use fracderiv::Complex;

use crate::parse::Window;

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

pub fn abel_reference() -> AbelSpec {
    AbelSpec::new(c(3.1), c(0.8), c(0.7), c(0.5)).expect("reference parameters are valid")
}

pub fn bessel_reference() -> BesselSpec {
    BesselSpec::new(c(0.7), c(6.3f64.sqrt()), c(1.3), c(1.0))
        .expect("reference parameters are valid")
}

pub fn oscillator_reference() -> OscillatorSpec {
    OscillatorSpec::new(c(-1.21), c(7.1), c(-1.5), c(3.5)).expect("reference parameters are valid")
}

/// Validation window, RK step, and pass threshold for each reference preset.
/// The singular families start strictly inside the domain.
pub struct ValidationPreset {
    pub window: Window,
    pub h: f64,
    pub threshold: f64,
}

pub fn abel_validation() -> ValidationPreset {
    ValidationPreset { window: Window { start: 0.0, end: 2.0, count: 256 }, h: 1e-4, threshold: 1e-6 }
}

pub fn bessel_validation() -> ValidationPreset {
    ValidationPreset {
        window: Window { start: 0.01, end: 3.0, count: 256 },
        h: 1e-4,
        threshold: 1e-6,
    }
}

pub fn oscillator_validation() -> ValidationPreset {
    ValidationPreset {
        window: Window { start: 0.05, end: 10.0, count: 256 },
        h: 1e-4,
        threshold: 1e-5,
    }
}
