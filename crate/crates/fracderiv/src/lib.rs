//! Numerics for a complex-order derivative operator on generalized power
//! series, together with the families of linear ODEs it solves in closed
//! form.
//!
//! The operator acts on powers by
//!
//! ```text
//! D^p (z + c)^q = Γ(1+q)/Γ(1+q−p) · (z + c)^{q−p}
//! ```
//!
//! for complex order p, and extends term by term to series with a complex
//! leading exponent ([`fracop::GenPowerSeries`]). Fixing the order of a
//! series solution of a linear ODE turns the ODE into a recurrence with an
//! explicit gamma-ratio solution; the [`solvers`] module packages three such
//! families (a forced first-order equation, a Bessel-type second-order
//! equation, and a forced oscillator) as evaluators for F and F′. The
//! [`validate`] module cross-checks every closed form against a direct
//! Runge-Kutta integration of its ODE.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! command-line crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fracop;
pub mod solvers;
pub mod specfun;
pub mod validate;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
