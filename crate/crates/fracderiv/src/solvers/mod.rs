//! Closed-form solution families and their ordinary differential equations.
//!
//! Three families are covered, each parameterized by complex scalars:
//!
//! * **Abel**: F′ + c·t^a·F = t^b, solved by an exponential part plus a
//!   generalized power series in w = c·t^{a+1}/(a+1).
//! * **Bessel-type**: F″ + (a/t)·F′ + b²·t^{2c−2}·F = 0, solved by an entire
//!   series in w = (b·t^c/(2c))² — the branch regular at the origin.
//! * **Driven oscillator**: F″ + n²F = g(w) with a power-law forcing, whose
//!   exact solution is the order-p derivative of a free oscillation; the
//!   same solution survives the power-law change of variables w = v·t^c
//!   (`transform_ode`).
//!
//! Each family offers a validating spec type, a `solve_*` constructor of an
//! immutable [`SolutionEvaluator`], and an ODE generator producing the
//! pointwise-evaluable [`OdeSpec`] the solution satisfies, so solutions can
//! be cross-checked against independent numerical integration.

mod evaluator;
mod ode;

pub use evaluator::{SolutionEvaluator, BESSEL_ASYM_LIMIT, RAW_SERIES_LIMIT};
pub use ode::{CoeffFn, OdeOrder, OdeSpec, PowerTerm};

use crate::error::{pole_error, Error, Result};
use crate::specfun::{cpow, near_nonpos_int, recip_gamma};
use crate::Complex;
use alloc::string::String;
use evaluator::VarMap;
use ode::require_finite;

fn czero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn cone() -> Complex {
    Complex::new(1.0, 0.0)
}

/// Parameters of the first-order equation F′ + c·t^a·F = t^b with initial
/// value F(0) = f0. The derived order p = (a−b)/(a+1) must satisfy
/// Re(p) < 1, which also keeps the solution's Γ(1−p) prefactor off its
/// poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelSpec {
    a: Complex,
    b: Complex,
    c: Complex,
    f0: Complex,
    p: Complex,
}

impl AbelSpec {
    pub fn new(a: Complex, b: Complex, c: Complex, f0: Complex) -> Result<Self> {
        require_finite("a", a)?;
        require_finite("b", b)?;
        require_finite("c", c)?;
        require_finite("f0", f0)?;
        if a + cone() == czero() {
            return Err(Error::Spec(String::from("a must differ from -1")));
        }
        if c == czero() {
            return Err(Error::Spec(String::from("c must be nonzero")));
        }
        let p = (a - b) / (a + cone());
        if p.re >= 1.0 {
            return Err(Error::Spec(String::from(
                "derived order p = (a-b)/(a+1) must have real part below 1",
            )));
        }
        Ok(AbelSpec { a, b, c, f0, p })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    pub fn c(&self) -> Complex {
        self.c
    }

    pub fn f0(&self) -> Complex {
        self.f0
    }

    /// The derived operator order p = (a−b)/(a+1).
    pub fn order(&self) -> Complex {
        self.p
    }
}

/// Parameters of the second-order equation F″ + (a/t)·F′ + b²·t^{2c−2}·F = 0
/// with F(0) = f0, solved by the branch regular at t = 0. The derived order
/// is p = (1−a)/(2c); positive-integer p puts the solution's Γ(1−p)
/// prefactor on a pole and is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselSpec {
    a: Complex,
    b: Complex,
    c: Complex,
    f0: Complex,
    p: Complex,
}

impl BesselSpec {
    pub fn new(a: Complex, b: Complex, c: Complex, f0: Complex) -> Result<Self> {
        require_finite("a", a)?;
        require_finite("b", b)?;
        require_finite("c", c)?;
        require_finite("f0", f0)?;
        if c == czero() {
            return Err(Error::Spec(String::from("c must be nonzero")));
        }
        if b == czero() {
            return Err(Error::Spec(String::from("b must be nonzero")));
        }
        let p = (cone() - a) / (c * 2.0);
        if near_nonpos_int(cone() - p).is_some() {
            return Err(pole_error(cone() - p));
        }
        Ok(BesselSpec { a, b, c, f0, p })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    pub fn c(&self) -> Complex {
        self.c
    }

    pub fn f0(&self) -> Complex {
        self.f0
    }

    /// The derived operator order p = (1−a)/(2c).
    pub fn order(&self) -> Complex {
        self.p
    }
}

/// Parameters of the order-p derivative of a free oscillation,
/// F(w) = D^(p)[a_n·cos(nw) + b_n·sin(nw)], which solves a driven oscillator
/// equation with power-law forcing (see [`gen_oscillator_ode`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    p: Complex,
    n: Complex,
    a_n: Complex,
    b_n: Complex,
}

impl OscillatorSpec {
    pub fn new(p: Complex, n: Complex, a_n: Complex, b_n: Complex) -> Result<Self> {
        require_finite("p", p)?;
        require_finite("n", n)?;
        require_finite("a_n", a_n)?;
        require_finite("b_n", b_n)?;
        if n == czero() {
            return Err(Error::Spec(String::from("n must be nonzero")));
        }
        Ok(OscillatorSpec { p, n, a_n, b_n })
    }

    pub fn p(&self) -> Complex {
        self.p
    }

    pub fn n(&self) -> Complex {
        self.n
    }

    pub fn a_n(&self) -> Complex {
        self.a_n
    }

    pub fn b_n(&self) -> Complex {
        self.b_n
    }
}

/// Closed-form solution of the Abel equation described by `spec`.
pub fn solve_abel(spec: &AbelSpec) -> SolutionEvaluator {
    SolutionEvaluator::abel(spec)
}

/// Closed-form solution of the Bessel-type equation described by `spec`
/// (the branch regular at the origin).
pub fn solve_bessel(spec: &BesselSpec) -> SolutionEvaluator {
    SolutionEvaluator::bessel(spec)
}

/// The order-p derivative of the free oscillation described by `spec`, as a
/// function of w. Near w = 0 the value behaves like w^{−p}: it diverges for
/// Re(p) > 0 (evaluation at exactly 0 is a domain error) and vanishes for
/// Re(p) < 0.
pub fn solve_oscillator(spec: &OscillatorSpec) -> SolutionEvaluator {
    SolutionEvaluator::oscillator(spec)
}

/// The ODE an Abel solution satisfies: F′ + c·t^a·F = t^b.
pub fn abel_ode(spec: &AbelSpec) -> OdeSpec {
    OdeSpec {
        order: OdeOrder::First,
        damping: CoeffFn::zero(),
        stiffness: CoeffFn::power(spec.c(), spec.a()),
        forcing: CoeffFn::power(cone(), spec.b()),
    }
}

/// The ODE a Bessel-type solution satisfies: F″ + (a/t)·F′ + b²·t^{2c−2}·F = 0.
pub fn bessel_ode(spec: &BesselSpec) -> OdeSpec {
    OdeSpec {
        order: OdeOrder::Second,
        damping: CoeffFn::power(spec.a(), -cone()),
        stiffness: CoeffFn::power(spec.b() * spec.b(), spec.c() * 2.0 - 2.0),
        forcing: CoeffFn::zero(),
    }
}

/// Forcing amplitudes of the driven-oscillator equation: the coefficients of
/// w^{−2−p} and w^{−1−p} in g(w) = [−a_n(1+p) + b_n·n·w] / [Γ(−p)·w^{2+p}].
/// Both vanish exactly when p is a nonnegative integer (reciprocal-gamma
/// zero), making the generated ODE homogeneous.
fn oscillator_forcing_amplitudes(spec: &OscillatorSpec) -> (Complex, Complex) {
    let rg = recip_gamma(-spec.p());
    let amp_a = -spec.a_n() * (cone() + spec.p()) * rg;
    let amp_b = spec.b_n() * spec.n() * rg;
    (amp_a, amp_b)
}

/// The driven-oscillator ODE solved by [`solve_oscillator`]:
/// F″ + n²·F = amp_a·w^{−2−p} + amp_b·w^{−1−p}.
pub fn gen_oscillator_ode(spec: &OscillatorSpec) -> OdeSpec {
    let (amp_a, amp_b) = oscillator_forcing_amplitudes(spec);
    let p = spec.p();
    OdeSpec {
        order: OdeOrder::Second,
        damping: CoeffFn::zero(),
        stiffness: CoeffFn::constant(spec.n() * spec.n()),
        forcing: CoeffFn::new(alloc::vec![
            PowerTerm { coeff: amp_a, exponent: Complex::new(-2.0, 0.0) - p },
            PowerTerm { coeff: amp_b, exponent: Complex::new(-1.0, 0.0) - p },
        ]),
    }
}

/// The driven-oscillator family after the change of variables w = v·t^c:
///
/// ```text
/// F″ + (1−c)/t·F′ + (ncv)²·t^{2c−2}·F
///     = c²·[−a_n(1+p) + b_n·n·v·t^c] / [Γ(−p)·v^p·t^{2+cp}]
/// ```
///
/// returned together with the matching evaluator (the untransformed solution
/// composed with the map). With c = 1, v = 1 this reduces exactly to
/// [`gen_oscillator_ode`].
pub fn transform_ode(
    spec: &OscillatorSpec,
    v: Complex,
    c: Complex,
) -> Result<(OdeSpec, SolutionEvaluator)> {
    require_finite("v", v)?;
    require_finite("c", c)?;
    if v == czero() {
        return Err(Error::Spec(String::from("v must be nonzero")));
    }
    if c == czero() {
        return Err(Error::Spec(String::from("c must be nonzero")));
    }
    let p = spec.p();
    let n = spec.n();
    let (amp_a, amp_b) = oscillator_forcing_amplitudes(spec);
    let c2 = c * c;
    let ncv = n * c * v;
    let ode = OdeSpec {
        order: OdeOrder::Second,
        damping: CoeffFn::power(cone() - c, -cone()),
        stiffness: CoeffFn::power(ncv * ncv, c * 2.0 - 2.0),
        forcing: CoeffFn::new(alloc::vec![
            PowerTerm {
                coeff: c2 * cpow(v, -p)? * amp_a,
                exponent: Complex::new(-2.0, 0.0) - c * p,
            },
            PowerTerm {
                coeff: c2 * cpow(v, cone() - p)? * amp_b,
                exponent: c - 2.0 - c * p,
            },
        ]),
    };
    let ev = SolutionEvaluator::oscillator_with_map(spec, VarMap { scale: v, exponent: c });
    Ok((ode, ev))
}

/// |F″ + damping·F′ + stiffness·F − forcing| at t, with derivatives taken by
/// 5-point central finite differences of the evaluator and the result
/// normalized by the largest participating term magnitude (so an exact
/// solution scores ~1e-10 regardless of the solution's scale, and a wrong
/// one scores O(1)).
pub fn eval_ode_residual(ode: &OdeSpec, sol: &SolutionEvaluator, t: f64) -> Result<f64> {
    let singular = ode.is_singular_at_zero();
    if singular && t <= 0.0 {
        return Err(Error::Domain(
            "residual stencil would cross the coefficient singularity at t = 0",
        ));
    }
    let mut h = 1e-3 * t.abs().max(1.0);
    if singular {
        // Keep the whole 5-point stencil strictly on t > 0.
        h = h.min(t / 8.0);
    }
    let fm2 = sol.value(t - 2.0 * h)?;
    let fm1 = sol.value(t - h)?;
    let f0 = sol.value(t)?;
    let fp1 = sol.value(t + h)?;
    let fp2 = sol.value(t + 2.0 * h)?;
    let d1 = (fm2 - fm1 * 8.0 + fp1 * 8.0 - fp2) / (12.0 * h);
    let d2 = (-fp2 + fp1 * 16.0 - f0 * 30.0 + fm1 * 16.0 - fm2) / (12.0 * h * h);
    let g = ode.forcing.eval(t)?;
    let kf = ode.stiffness.eval(t)? * f0;
    let (lhs, scale) = match ode.order {
        OdeOrder::First => {
            let lhs = d1 + kf - g;
            (lhs, d1.norm().max(kf.norm()).max(g.norm()))
        }
        OdeOrder::Second => {
            let df = ode.damping.eval(t)? * d1;
            let lhs = d2 + df + kf - g;
            (lhs, d2.norm().max(df.norm()).max(kf.norm()).max(g.norm()))
        }
    };
    if scale == 0.0 {
        return Ok(lhs.norm());
    }
    Ok(lhs.norm() / scale)
}
