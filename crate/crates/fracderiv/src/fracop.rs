//! The complex-order derivative operator, realized on single power terms, on
//! generalized power series, and in closed form on circular functions.
//!
//! The operator is defined by the power rule
//!
//! ```text
//! D^(p) (z+c)^q = Γ(1+q)/Γ(1+q−p) · (z+c)^{q−p}
//! ```
//!
//! extended termwise and linearly to series Σ cₘ w^{q+m}. Positive real order
//! acts as a derivative, negative real order as an antiderivative, and p = 0
//! is the identity; at positive integers it reduces to the ordinary
//! derivative of that order.

use crate::error::{Error, Result};
use crate::specfun::{cpow, gamma_ratio, near_nonpos_int, recip_gamma, recip_gamma_real};
use crate::Complex;
use alloc::vec;
use alloc::vec::Vec;

/// Hard cap on the number of series terms any evaluation will sum. Every
/// series in this crate is entire up to its power-law prefactor and
/// factorially convergent, so the cap is far beyond the point of f64
/// saturation for all supported argument ranges.
pub const MAX_SERIES_TERMS: usize = 200;

/// Evaluation stops early once this many consecutive terms are negligible
/// relative to the running sum. Three in a row means even series with
/// interleaved zero coefficients (every other term exactly 0) cannot stop
/// before genuinely converging.
const STOP_RUN: usize = 3;

/// A term is negligible when |term| < TERM_STOP_REL · |running sum|.
const TERM_STOP_REL: f64 = 1e-16;

/// Evaluations whose largest intermediate term exceeds the summed result by
/// this factor have lost essentially every significant digit of relative
/// accuracy in double precision and are reported as `Error::Precision`.
pub const CANCELLATION_LIMIT: f64 = 1e12;

/// The order p of the operator. Positive real part differentiates, negative
/// integrates, zero is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivOrder {
    pub p: Complex,
}

impl DerivOrder {
    /// A purely real order.
    pub fn real(r: f64) -> Self {
        DerivOrder { p: Complex::new(r, 0.0) }
    }
}

impl From<f64> for DerivOrder {
    fn from(r: f64) -> Self {
        DerivOrder::real(r)
    }
}

impl From<Complex> for DerivOrder {
    fn from(p: Complex) -> Self {
        DerivOrder { p }
    }
}

/// The admissible power exponents of the generalized integration constant:
/// everything a subsequent derivative of order −p annihilates.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeBasis {
    /// Exponents −p−1, …, −p−k with k = ⌊−Re(p)⌋; empty when Re(p) > −1.
    pub exponents: Vec<Complex>,
}

impl GaugeBasis {
    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// f(w) = Σₘ coeffs[m] · w^{offset+m}: a power series with a complex leading
/// exponent and unit exponent spacing. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GenPowerSeries {
    /// Leading exponent q.
    pub offset: Complex,
    /// Coefficients c₀ … c_{M−1}; at least one, all finite.
    pub coeffs: Vec<Complex>,
}

/// Diagnostics from a single series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex,
    /// Terms actually summed before early stop or the coefficient list ended.
    pub terms_used: usize,
    /// Largest |cₘ w^{offset+m}| encountered.
    pub max_term: f64,
    /// max_term / |value| — the factor by which intermediate terms exceed
    /// the result. Relative accuracy is roughly this times machine epsilon.
    pub cancellation: f64,
    /// Magnitude of the last summed term including the prefactor — an
    /// estimate of the truncation error when the term cap was reached.
    pub truncation: f64,
}

/// Compensated (Neumaier) accumulator: the running error of the plain sum is
/// carried in a correction term, so alternating series keep full precision.
#[derive(Clone, Copy, Default)]
struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn total(&self) -> f64 {
        self.s + self.c
    }
}

impl GenPowerSeries {
    /// Builds a series, validating that there is at least one coefficient and
    /// every coefficient is finite.
    pub fn new(offset: Complex, coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Spec(alloc::string::String::from(
                "a series needs at least one coefficient",
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite())
            || !offset.re.is_finite()
            || !offset.im.is_finite()
        {
            return Err(Error::Spec(alloc::string::String::from(
                "series offset and coefficients must be finite",
            )));
        }
        Ok(GenPowerSeries { offset, coeffs })
    }

    /// Drops leading exactly-zero coefficients, bumping the offset to match,
    /// so that the leading exponent is the one actually present. A series of
    /// all zeros collapses to a single zero coefficient.
    pub fn trim_leading_zeros(mut self) -> Self {
        let zero = Complex::new(0.0, 0.0);
        let lead = self
            .coeffs
            .iter()
            .position(|c| *c != zero)
            .unwrap_or(self.coeffs.len() - 1);
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as f64;
        }
        self
    }

    /// Applies the operator termwise: offset → offset − p and
    /// cₘ → cₘ · Γ(1+q+m)/Γ(1+q+m−p). A pole of the numerator gamma on a
    /// term with a nonzero coefficient is an error naming that term; a pole
    /// of the denominator silently zeroes the coefficient (the reciprocal
    /// gamma vanishes there).
    pub fn derivative(&self, order: impl Into<DerivOrder>) -> Result<GenPowerSeries> {
        let p = order.into().p;
        let zero = Complex::new(0.0, 0.0);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (m, &cm) in self.coeffs.iter().enumerate() {
            if cm == zero {
                coeffs.push(zero);
                continue;
            }
            let a = Complex::new(1.0, 0.0) + self.offset + m as f64;
            if near_nonpos_int(a).is_some() {
                return Err(Error::Pole { z: a, term: Some(m) });
            }
            let ratio = gamma_ratio(a, a - p)?;
            coeffs.push(cm * ratio);
        }
        Ok(GenPowerSeries { offset: self.offset - p, coeffs })
    }

    /// The ordinary derivative d/dw, termwise: cₘ (offset+m) w^{offset+m−1}.
    pub fn argument_derivative(&self) -> GenPowerSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &cm)| cm * (self.offset + m as f64))
            .collect();
        GenPowerSeries { offset: self.offset - 1.0, coeffs }
    }

    /// The series of w ↦ f(s·w): coefficients pick up s^{offset+m}.
    pub fn scale_argument(&self, s: Complex) -> Result<GenPowerSeries> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (m, &cm) in self.coeffs.iter().enumerate() {
            coeffs.push(cm * cpow(s, self.offset + m as f64)?);
        }
        Ok(GenPowerSeries { offset: self.offset, coeffs })
    }

    /// a·s₁ + b·s₂ for two series with identical offsets; the shorter
    /// coefficient list is implicitly zero-padded.
    pub fn combine(
        a: Complex,
        s1: &GenPowerSeries,
        b: Complex,
        s2: &GenPowerSeries,
    ) -> Result<GenPowerSeries> {
        if s1.offset != s2.offset {
            return Err(Error::Spec(alloc::string::String::from(
                "series offsets must match to combine linearly",
            )));
        }
        let zero = Complex::new(0.0, 0.0);
        let n = s1.coeffs.len().max(s2.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            let c1 = s1.coeffs.get(m).copied().unwrap_or(zero);
            let c2 = s2.coeffs.get(m).copied().unwrap_or(zero);
            coeffs.push(a * c1 + b * c2);
        }
        Ok(GenPowerSeries { offset: s1.offset, coeffs })
    }

    /// Evaluates with compensated summation and full diagnostics. Unlike
    /// [`eval`](Self::eval) this does not reject high-cancellation results —
    /// callers that only need absolute (not relative) accuracy can inspect
    /// `cancellation` themselves.
    pub fn eval_detailed(&self, w: Complex) -> Result<SeriesEval> {
        let zero = Complex::new(0.0, 0.0);
        if w == zero {
            // Only the term with exponent exactly 0 survives at w = 0; any
            // nonzero coefficient on an exponent with Re ≤ 0 diverges there.
            let mut value = zero;
            for (m, &cm) in self.coeffs.iter().enumerate() {
                if cm == zero {
                    continue;
                }
                let e = self.offset + m as f64;
                if e == zero {
                    value = cm;
                } else if e.re <= 0.0 {
                    return Err(Error::Domain(
                        "series with nonpositive leading exponent evaluated at 0",
                    ));
                }
                break;
            }
            return Ok(SeriesEval {
                value,
                terms_used: 0,
                max_term: value.norm(),
                cancellation: 1.0,
                truncation: 0.0,
            });
        }

        // Each term's power w^{offset+m} is computed directly instead of by
        // a running product: the compounding rounding of successive
        // multiplications leaks through the large intermediate terms of an
        // alternating series and would dominate the error budget.
        let real_pows = w.im == 0.0 && w.re > 0.0 && self.offset.im == 0.0;
        let ln_w = if real_pows { zero } else { w.ln() };
        let mut sum_re = Neumaier::default();
        let mut sum_im = Neumaier::default();
        let mut max_term_sq: f64 = 0.0;
        let mut last_term = 0.0;
        let mut small_run = 0;
        let mut terms_used = 0;
        let cap = self.coeffs.len().min(MAX_SERIES_TERMS);
        for (m, &cm) in self.coeffs.iter().take(cap).enumerate() {
            let term = if cm == zero {
                zero
            } else {
                let e = self.offset + m as f64;
                let wp = if real_pows {
                    Complex::new(libm::pow(w.re, e.re), 0.0)
                } else {
                    (e * ln_w).exp()
                };
                cm * wp
            };
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(Error::Precision { cancellation: f64::INFINITY });
            }
            sum_re.add(term.re);
            sum_im.add(term.im);
            terms_used += 1;
            let tsq = term.norm_sqr();
            max_term_sq = max_term_sq.max(tsq);
            last_term = tsq;
            let run_sq = sum_re.s * sum_re.s + sum_im.s * sum_im.s;
            if tsq <= TERM_STOP_REL * TERM_STOP_REL * run_sq {
                // Zero terms before anything accumulated say nothing about
                // convergence; only count smallness against a nonzero sum.
                if run_sq > 0.0 {
                    small_run += 1;
                    if small_run >= STOP_RUN {
                        break;
                    }
                }
            } else {
                small_run = 0;
            }
        }
        let sum = Complex::new(sum_re.total(), sum_im.total());
        let max_term = libm::sqrt(max_term_sq);
        let cancellation = if sum.norm() > 0.0 {
            max_term / sum.norm()
        } else if max_term == 0.0 {
            1.0
        } else {
            f64::INFINITY
        };
        Ok(SeriesEval {
            value: sum,
            terms_used,
            max_term,
            cancellation,
            truncation: libm::sqrt(last_term),
        })
    }

    /// Evaluates the series at w, rejecting results whose cancellation factor
    /// exceeds [`CANCELLATION_LIMIT`] (all relative accuracy lost).
    pub fn eval(&self, w: Complex) -> Result<Complex> {
        let d = self.eval_detailed(w)?;
        if d.cancellation > CANCELLATION_LIMIT {
            return Err(Error::Precision { cancellation: d.cancellation });
        }
        Ok(d.value)
    }
}

/// D^(p) (z+c)^q = Γ(1+q)/Γ(1+q−p) · (z+c)^{q−p}.
///
/// Exactly 0 when 1+q−p is a nonpositive integer (the reciprocal gamma
/// vanishes); errors when 1+q is one (the gamma factor is infinite) or when
/// z+c = 0 with Re(q−p) ≤ 0.
pub fn power_rule(
    order: impl Into<DerivOrder>,
    q: Complex,
    c_shift: Complex,
    z: Complex,
) -> Result<Complex> {
    let p = order.into().p;
    let one = Complex::new(1.0, 0.0);
    let ratio = gamma_ratio(one + q, one + q - p)?;
    if ratio == Complex::new(0.0, 0.0) {
        return Ok(ratio);
    }
    Ok(ratio * cpow(z + c_shift, q - p)?)
}

/// D^(p) c = c · z^{−p} / Γ(1−p): the order-p derivative of a constant,
/// which vanishes exactly at positive integer orders and reduces to the
/// identity at p = 0.
pub fn deriv_constant(
    order: impl Into<DerivOrder>,
    const_c: Complex,
    z: Complex,
) -> Result<Complex> {
    let p = order.into().p;
    if p == Complex::new(0.0, 0.0) {
        return Ok(const_c);
    }
    let rg = recip_gamma(Complex::new(1.0, 0.0) - p);
    if rg == Complex::new(0.0, 0.0) {
        return Ok(rg);
    }
    Ok(const_c * rg * cpow(z, -p)?)
}

/// The gauge basis admissible after inverting an order-p operation:
/// exponents −p−1, …, −p−k with k = ⌊−Re(p)⌋ when Re(p) ≤ −1, else empty.
/// Each monomial z^{−p−j} is annihilated by D^(−p) through a reciprocal-gamma
/// zero, exactly as an ordinary integration constant is annihilated by d/dz.
pub fn gauge_basis(order: impl Into<DerivOrder>) -> GaugeBasis {
    let p = order.into().p;
    if p.re > -1.0 {
        return GaugeBasis { exponents: Vec::new() };
    }
    let k = libm::floor(-p.re) as usize;
    let exponents = (1..=k).map(|j| -p - j as f64).collect();
    GaugeBasis { exponents }
}

/// Closed form of the order-p derivative of sin(ωt − φ) for real order:
/// ω^p · sin(ωt − φ + pπ/2). This is the exact image for sinusoids taken on
/// the whole line; the series-defined operator approaches it from below at
/// large argument (see `validate::phase_boundary`).
pub fn deriv_sin_closed(order: f64, omega: f64, phase: f64, t: f64) -> f64 {
    debug_assert!(omega > 0.0);
    libm::pow(omega, order) * libm::sin(omega * t - phase + order * core::f64::consts::FRAC_PI_2)
}

/// Closed form of the order-p derivative of cos(ωt − φ) for real order:
/// ω^p · cos(ωt − φ + pπ/2).
pub fn deriv_cos_closed(order: f64, omega: f64, phase: f64, t: f64) -> f64 {
    debug_assert!(omega > 0.0);
    libm::pow(omega, order) * libm::cos(omega * t - phase + order * core::f64::consts::FRAC_PI_2)
}

/// The first `n_terms` terms of the series form of D^(r) sin x for real r:
///
/// ```text
/// Σₘ (−1)^m x^{2m+1−r} / Γ(2m+2−r),  m = 0 … n_terms−1
/// ```
///
/// returned as a unit-spaced series (odd slots are zero). Integer orders that
/// annihilate leading terms are trimmed away, so the truncation is evaluable
/// at x = 0 whenever the surviving leading exponent allows it.
pub fn deriv_sin_series(order: f64, n_terms: usize) -> GenPowerSeries {
    circular_series(order, n_terms, true)
}

/// The first `n_terms` terms of the series form of D^(r) cos x for real r:
/// Σₘ (−1)^m x^{2m−r} / Γ(2m+1−r), as a unit-spaced series.
pub fn deriv_cos_series(order: f64, n_terms: usize) -> GenPowerSeries {
    circular_series(order, n_terms, false)
}

fn circular_series(order: f64, n_terms: usize, sin: bool) -> GenPowerSeries {
    assert!(n_terms >= 1, "a truncation needs at least one term");
    let offset = if sin { 1.0 - order } else { -order };
    let mut coeffs = vec![Complex::new(0.0, 0.0); 2 * n_terms];
    let mut sign = 1.0;
    for m in 0..n_terms {
        let gamma_arg = if sin { 2 * m + 2 } else { 2 * m + 1 } as f64 - order;
        coeffs[2 * m] = Complex::new(sign * recip_gamma_real(gamma_arg), 0.0);
        sign = -sign;
    }
    GenPowerSeries { offset: Complex::new(offset, 0.0), coeffs }
        .trim_leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn real_series(offset: f64, coeffs: &[f64]) -> GenPowerSeries {
        GenPowerSeries::new(
            c(offset, 0.0),
            coeffs.iter().map(|&x| c(x, 0.0)).collect(),
        )
        .unwrap()
    }

    /// Maclaurin coefficients of sin as a unit-spaced series (offset 1).
    fn sin_series(n_terms: usize) -> GenPowerSeries {
        let mut coeffs = vec![c(0.0, 0.0); 2 * n_terms];
        let mut sign = 1.0;
        for m in 0..n_terms {
            coeffs[2 * m] = c(sign * recip_gamma_real((2 * m + 2) as f64), 0.0);
            sign = -sign;
        }
        GenPowerSeries::new(c(1.0, 0.0), coeffs).unwrap()
    }

    fn exp_series(n_terms: usize) -> GenPowerSeries {
        let coeffs = (0..n_terms)
            .map(|m| c(recip_gamma_real(m as f64 + 1.0), 0.0))
            .collect();
        GenPowerSeries::new(c(0.0, 0.0), coeffs).unwrap()
    }

    fn cos_series_maclaurin(n_terms: usize) -> GenPowerSeries {
        let mut coeffs = vec![c(0.0, 0.0); 2 * n_terms];
        let mut sign = 1.0;
        for m in 0..n_terms {
            coeffs[2 * m] = c(sign * recip_gamma_real((2 * m + 1) as f64), 0.0);
            sign = -sign;
        }
        GenPowerSeries::new(c(0.0, 0.0), coeffs).unwrap()
    }

    #[test]
    fn power_rule_pins() {
        // Order 1/2 of z at z=1: Γ(2)/Γ(3/2) = 2/√π.
        let v = power_rule(0.5, c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v.re - core::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-13 && v.im == 0.0);
        // Integer correspondence: d(z²)/dz at 3 = 6.
        let v = power_rule(1.0, c(2.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v.re - 6.0).abs() < 1e-13);
        // Exactly zero at orders p = 1+q+m.
        let v = power_rule(2.3, c(0.3, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!(v, c(0.0, 0.0));
        // Γ(1+q) pole.
        assert!(matches!(
            power_rule(0.5, c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
            Err(Error::Pole { .. })
        ));
        // Fully complex pin (mpmath): p=0.5+0.3i, q=1.2−0.7i, c=0.4, z=2.1+1.1i.
        let v = power_rule(
            DerivOrder { p: c(0.5, 0.3) },
            c(1.2, -0.7),
            c(0.4, 0.0),
            c(2.1, 1.1),
        )
        .unwrap();
        let want = c(3.189_574_659_180_298_7, -3.397_895_390_829_033);
        assert!((v - want).norm() / want.norm() < 2e-12);
    }

    #[test]
    fn deriv_constant_pins() {
        assert_eq!(deriv_constant(1.0, c(5.0, 0.0), c(2.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(deriv_constant(3.0, c(5.0, 0.0), c(2.0, 0.0)).unwrap(), c(0.0, 0.0));
        // Identity operator is exact.
        assert_eq!(deriv_constant(0.0, c(5.0, 0.0), c(2.0, 0.0)).unwrap(), c(5.0, 0.0));
        // Order 1/2 of the constant 1 at z=4: 1/√(4π).
        let v = deriv_constant(0.5, c(1.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!((v.re - 0.282_094_791_773_878_14).abs() < 1e-13 && v.im == 0.0);
    }

    #[test]
    fn derivative_single_term_matches_constant_rule() {
        // {q=0, [1]} differentiated by p=1/2 → offset −1/2, coefficient 1/Γ(1/2).
        let s = real_series(0.0, &[1.0]);
        let d = s.derivative(0.5).unwrap();
        assert_eq!(d.offset, c(-0.5, 0.0));
        assert!((d.coeffs[0].re - 0.564_189_583_547_756_3).abs() < 1e-13);
    }

    #[test]
    fn derivative_at_order_zero_is_bitwise_identity() {
        let s = GenPowerSeries::new(
            c(0.37, -0.8),
            vec![c(1.5, 0.25), c(-0.75, 3.125), c(0.0, 0.0), c(2.0, -1.0)],
        )
        .unwrap();
        let d = s.derivative(0.0).unwrap();
        assert_eq!(d, s);
    }

    #[test]
    fn derivative_of_sin_series_at_order_one_is_cos() {
        let d = sin_series(40).derivative(1.0).unwrap();
        let got = d.eval(c(1.0, 0.0)).unwrap();
        assert!((got.re - libm::cos(1.0)).abs() < 1e-12 && got.im == 0.0);
    }

    #[test]
    fn derivative_pole_names_offending_term() {
        // Term m=0 has 1+q+m = −1: a pole with a nonzero coefficient.
        let s = real_series(-2.0, &[1.0]);
        match s.derivative(0.5) {
            Err(Error::Pole { term: Some(0), .. }) => {}
            other => panic!("expected pole at term 0, got {other:?}"),
        }
        // A zero coefficient at the pole is skipped.
        let s = real_series(-1.0, &[0.0, 1.0]);
        assert!(s.derivative(0.5).is_ok());
    }

    #[test]
    fn eval_exp_series() {
        let e = exp_series(30).eval(c(1.0, 0.0)).unwrap();
        assert!((e.re - core::f64::consts::E).abs() < 1e-12 && e.im == 0.0);
    }

    #[test]
    fn eval_at_one_is_plain_coefficient_sum() {
        let s = GenPowerSeries::new(
            c(0.3, 0.4),
            vec![c(0.2, -1.0), c(1.5, 0.5), c(-0.7, 0.1)],
        )
        .unwrap();
        let naive: Complex = s.coeffs.iter().sum();
        let got = s.eval(c(1.0, 0.0)).unwrap();
        assert!((got - naive).norm() < 1e-14);
    }

    #[test]
    fn eval_flags_catastrophic_cancellation() {
        // cos's Maclaurin truncation at w=30 peaks near e^30 while the result
        // is O(0.1): far past the guard.
        match cos_series_maclaurin(40).eval(c(30.0, 0.0)) {
            Err(Error::Precision { cancellation }) => assert!(cancellation > CANCELLATION_LIMIT),
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn eval_stops_early_once_converged() {
        let s = exp_series(MAX_SERIES_TERMS);
        let d = s.eval_detailed(c(1.0, 0.0)).unwrap();
        assert!(d.terms_used < 30, "terms_used = {}", d.terms_used);
        assert!((d.value.re - core::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn eval_at_zero() {
        assert_eq!(real_series(0.0, &[7.0, 1.0]).eval(c(0.0, 0.0)).unwrap(), c(7.0, 0.0));
        assert_eq!(real_series(0.5, &[7.0]).eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            real_series(-0.5, &[7.0]).eval(c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        // Leading zeros shift the effective exponent: offset −2 but the first
        // nonzero coefficient sits at exponent 0.
        assert_eq!(real_series(-2.0, &[0.0, 0.0, 5.0]).eval(c(0.0, 0.0)).unwrap(), c(5.0, 0.0));
    }

    #[test]
    fn gauge_basis_shapes() {
        assert!(gauge_basis(-0.5).is_empty());
        assert!(gauge_basis(0.3).is_empty());
        let g = gauge_basis(-2.0);
        assert_eq!(g.exponents, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let g = gauge_basis(-1.0);
        assert_eq!(g.exponents, vec![c(0.0, 0.0)]);
    }

    #[test]
    fn gauge_monomials_are_lost_by_composition() {
        // Order p = −2 (double integration). Composing D^(p) after D^(−p)
        // recovers a monomial exactly unless its exponent lies in the gauge
        // basis, where the inner derivative annihilates it.
        let p = -2.0;
        let basis = gauge_basis(p);
        // z^1 is a gauge monomial: D^2 z = 0, so the round trip gives 0.
        let s = real_series(1.0, &[1.0]);
        let inner = s.derivative(-p).unwrap();
        assert!(inner.coeffs.iter().all(|&cm| cm == c(0.0, 0.0)));
        assert!(basis.exponents.contains(&c(1.0, 0.0)));
        // z^2.7 is not: the round trip reproduces it.
        let s = real_series(2.7, &[1.0]);
        let back = s.derivative(-p).unwrap().derivative(p).unwrap();
        assert!((back.offset - s.offset).norm() < 1e-14);
        assert!((back.coeffs[0] - s.coeffs[0]).norm() < 1e-12);
    }

    #[test]
    fn closed_circular_forms() {
        assert!((deriv_sin_closed(1.0, 1.0, 0.0, 0.7) - libm::cos(0.7)).abs() < 1e-15);
        assert!((deriv_sin_closed(0.0, 1.0, 0.0, 0.7) - libm::sin(0.7)).abs() < 1e-15);
        assert!((deriv_cos_closed(1.0, 2.0, 0.3, 0.7) + 2.0 * libm::sin(1.4 - 0.3)).abs() < 1e-14);
        // At large argument the truncated series approaches the closed form:
        // distinct functions, converging phase.
        let series_val = deriv_sin_series(0.5, 40).eval(c(20.0, 0.0)).unwrap().re;
        let closed = deriv_sin_closed(0.5, 1.0, 0.0, 20.0);
        let gap = (series_val - closed).abs();
        assert!(gap < 0.01, "gap {gap}");
        assert!(gap > 1e-4, "the two forms must still differ measurably at x=20");
    }

    #[test]
    fn circular_series_builders() {
        // Order 0 reproduces sin and cos.
        let s = deriv_sin_series(0.0, 30).eval(c(2.0, 0.0)).unwrap();
        assert!((s.re - libm::sin(2.0)).abs() < 1e-13);
        let s = deriv_cos_series(0.0, 30).eval(c(2.0, 0.0)).unwrap();
        assert!((s.re - libm::cos(2.0)).abs() < 1e-13);
        // Order 1 of sin is cos.
        let s = deriv_sin_series(1.0, 30).eval(c(1.0, 0.0)).unwrap();
        assert!((s.re - libm::cos(1.0)).abs() < 1e-13);
        // Integer orders trim annihilated leading terms: D^2 sin starts at x^1.
        let s = deriv_sin_series(2.0, 10);
        assert_eq!(s.offset, c(1.0, 0.0));
        assert_eq!(s.eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn scale_argument_matches_direct_evaluation() {
        let s = exp_series(40);
        let scaled = s.scale_argument(c(2.0, 0.0)).unwrap();
        let got = scaled.eval(c(0.7, 0.0)).unwrap();
        assert!((got.re - libm::exp(1.4)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn combine_is_coefficientwise(
            a in -2.0f64..2.0, b in -2.0f64..2.0,
            c1 in proptest::collection::vec(-1.0f64..1.0, 1..6),
            c2 in proptest::collection::vec(-1.0f64..1.0, 1..6),
        ) {
            let s1 = real_series(0.25, &c1);
            let s2 = real_series(0.25, &c2);
            let combined = GenPowerSeries::combine(c(a, 0.0), &s1, c(b, 0.0), &s2).unwrap();
            for (m, &cm) in combined.coeffs.iter().enumerate() {
                let want = a * c1.get(m).copied().unwrap_or(0.0)
                    + b * c2.get(m).copied().unwrap_or(0.0);
                prop_assert!((cm.re - want).abs() < 1e-15);
            }
        }

        #[test]
        fn scale_by_one_is_identity(coeffs in proptest::collection::vec(-1.0f64..1.0, 1..6)) {
            let s = real_series(-0.35, &coeffs);
            prop_assert_eq!(s.scale_argument(c(1.0, 0.0)).unwrap(), s);
        }

        #[test]
        fn power_rule_composes_additively(
            qre in -2.0f64..3.0, qim in -1.0f64..1.0,
            p1re in -1.5f64..1.5, p1im in -1.0f64..1.0,
            p2re in -1.5f64..1.5, p2im in -1.0f64..1.0,
            zre in 0.3f64..2.5, zim in -2.0f64..2.0,
        ) {
            // D^{p2} applied to the single power left by D^{p1} equals
            // D^{p1+p2} directly, whenever no intermediate pole intervenes.
            let q = c(qre, qim);
            let p1 = c(p1re, p1im);
            let p2 = c(p2re, p2im);
            let z = c(zre, zim);
            let step1 = power_rule(DerivOrder { p: p1 }, q, c(0.0, 0.0), z);
            let chained = power_rule(DerivOrder { p: p2 }, q - p1, c(0.0, 0.0), z);
            let direct = power_rule(DerivOrder { p: p1 + p2 }, q, c(0.0, 0.0), z);
            let (Ok(a), Ok(b), Ok(d)) = (step1, chained, direct) else {
                // A pole along one route: composition is not defined there.
                return Ok(());
            };
            // step1 = R1·z^{q−p1}; the second application contributes R2 and
            // the remaining power, so the product a·b carries z^{q−p1} twice.
            let z_mid = cpow(z, q - p1).unwrap();
            if z_mid.norm() < 1e-12 {
                return Ok(());
            }
            let composed = a * b / z_mid;
            prop_assert!(
                (composed - d).norm() <= 1e-10 * d.norm().max(1e-10),
                "composed {composed} direct {d}"
            );
        }
    }
}
