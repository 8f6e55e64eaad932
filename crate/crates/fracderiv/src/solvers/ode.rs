//! Pointwise-evaluable ordinary differential equations with power-law
//! coefficients, in the normal forms
//!
//! ```text
//! first order:   F′(t) +                  stiffness(t)·F(t) = forcing(t)
//! second order:  F″(t) + damping(t)·F′(t) + stiffness(t)·F(t) = forcing(t)
//! ```
//!
//! where every coefficient function is a finite sum of terms k·t^e with
//! complex k and e. That family is closed under the variable changes used by
//! the solution evaluators, and it makes singularity detection trivial: a
//! coefficient blows up at t = 0 exactly when some active exponent has
//! negative real part.

use crate::error::{Error, Result};
use crate::specfun::cpow;
use crate::Complex;
use alloc::vec::Vec;

/// One power-law summand k·t^e of a coefficient function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub coeff: Complex,
    pub exponent: Complex,
}

/// A coefficient function of t: a finite sum of power terms. Terms with an
/// exactly-zero coefficient are dropped at construction, so an empty term
/// list is the zero function and singularity checks see only live terms.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffFn {
    terms: Vec<PowerTerm>,
}

impl CoeffFn {
    pub fn new(terms: Vec<PowerTerm>) -> Self {
        let zero = Complex::new(0.0, 0.0);
        CoeffFn { terms: terms.into_iter().filter(|t| t.coeff != zero).collect() }
    }

    /// The zero function.
    pub fn zero() -> Self {
        CoeffFn { terms: Vec::new() }
    }

    /// A constant.
    pub fn constant(c: Complex) -> Self {
        Self::new(alloc::vec![PowerTerm { coeff: c, exponent: Complex::new(0.0, 0.0) }])
    }

    /// A single term k·t^e.
    pub fn power(coeff: Complex, exponent: Complex) -> Self {
        Self::new(alloc::vec![PowerTerm { coeff, exponent }])
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some live term has an exponent with negative real part, so
    /// the function blows up as t → 0⁺.
    pub fn is_singular_at_zero(&self) -> bool {
        self.terms.iter().any(|t| t.exponent.re < 0.0)
    }

    /// Σ k·t^e with principal-branch powers. Exponent 0 contributes the bare
    /// coefficient even at t = 0; negative-real-part exponents at t = 0 are a
    /// domain error.
    pub fn eval(&self, t: f64) -> Result<Complex> {
        let zero = Complex::new(0.0, 0.0);
        let tc = Complex::new(t, 0.0);
        let mut acc = zero;
        for term in &self.terms {
            if term.exponent == zero {
                acc += term.coeff;
            } else {
                acc += term.coeff * cpow(tc, term.exponent)?;
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeOrder {
    First,
    Second,
}

/// An ODE in the normal form at the top of this module. For first-order
/// equations the damping function is unused and kept zero.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSpec {
    pub order: OdeOrder,
    pub damping: CoeffFn,
    pub stiffness: CoeffFn,
    pub forcing: CoeffFn,
}

impl OdeSpec {
    pub fn is_singular_at_zero(&self) -> bool {
        self.damping.is_singular_at_zero()
            || self.stiffness.is_singular_at_zero()
            || self.forcing.is_singular_at_zero()
    }

    /// The first-order system right-hand side at (t, y) where y = [F, F′]
    /// (second slot unused for first-order equations). Errors from
    /// coefficient evaluation (singular points) propagate.
    pub fn rhs(&self, t: f64, y: &[Complex; 2]) -> Result<[Complex; 2]> {
        let g = self.forcing.eval(t)?;
        let k = self.stiffness.eval(t)?;
        match self.order {
            OdeOrder::First => Ok([g - k * y[0], Complex::new(0.0, 0.0)]),
            OdeOrder::Second => {
                let d = self.damping.eval(t)?;
                Ok([y[1], g - d * y[1] - k * y[0]])
            }
        }
    }
}

/// Convenience used by the solvers: rejects nonfinite parameters up front so
/// coefficient arithmetic never launders NaN into a trajectory.
pub(crate) fn require_finite(name: &str, z: Complex) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        let mut msg = alloc::string::String::from(name);
        msg.push_str(" must be finite");
        Err(Error::Spec(msg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn coeff_fn_evaluates_power_sums() {
        let f = CoeffFn::new(alloc::vec![
            PowerTerm { coeff: c(2.0, 0.0), exponent: c(-1.0, 0.0) },
            PowerTerm { coeff: c(3.0, 0.0), exponent: c(2.0, 0.0) },
        ]);
        let v = f.eval(2.0).unwrap();
        assert!((v.re - 13.0).abs() < 1e-14 && v.im == 0.0);
        assert!(f.is_singular_at_zero());
        assert!(matches!(f.eval(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = CoeffFn::new(alloc::vec![
            PowerTerm { coeff: c(0.0, 0.0), exponent: c(-3.0, 0.0) },
        ]);
        assert!(f.is_zero());
        assert!(!f.is_singular_at_zero());
        assert_eq!(f.eval(0.0).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn constant_terms_survive_t_zero() {
        let f = CoeffFn::constant(c(4.0, -1.0));
        assert_eq!(f.eval(0.0).unwrap(), c(4.0, -1.0));
        assert!(!f.is_singular_at_zero());
    }

    #[test]
    fn rhs_first_and_second_order() {
        // F′ + 2F = t at t=3, F=5: F′ = 3 − 10 = −7.
        let ode = OdeSpec {
            order: OdeOrder::First,
            damping: CoeffFn::zero(),
            stiffness: CoeffFn::constant(c(2.0, 0.0)),
            forcing: CoeffFn::power(c(1.0, 0.0), c(1.0, 0.0)),
        };
        let dy = ode.rhs(3.0, &[c(5.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((dy[0].re + 7.0).abs() < 1e-14);
        // F″ + 0.5F′ + 4F = 1 at F=1, F′=2: F″ = 1 − 1 − 4 = −4.
        let ode = OdeSpec {
            order: OdeOrder::Second,
            damping: CoeffFn::constant(c(0.5, 0.0)),
            stiffness: CoeffFn::constant(c(4.0, 0.0)),
            forcing: CoeffFn::constant(c(1.0, 0.0)),
        };
        let dy = ode.rhs(1.0, &[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(dy[0], c(2.0, 0.0));
        assert!((dy[1].re + 4.0).abs() < 1e-14);
    }
}
