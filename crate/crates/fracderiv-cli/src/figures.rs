//! Built-in figure presets: the power-law fan, the three reference solution
//! curves, and the sinusoid phase-boundary scan, each as CSV plus SVG.

use clap::ValueEnum;
use fracderiv::fracop::power_rule;
use fracderiv::solvers::{solve_abel, solve_bessel, solve_oscillator};
use fracderiv::validate::{
    phase_boundary, CircularKind, DEFAULT_BOUNDARY_DX, DEFAULT_BOUNDARY_EPS,
    DEFAULT_BOUNDARY_TERMS, DEFAULT_BOUNDARY_X_MAX,
};
use fracderiv::{Complex, Result};

use crate::csv::{Cell, Table};
use crate::parse::Window;
use crate::presets;
use crate::svg::{line_plot, Curve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig1,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3,
}

impl FigureName {
    pub fn file_stem(self) -> &'static str {
        match self {
            FigureName::Fig1 => "fig1",
            FigureName::Fig2a => "fig2a",
            FigureName::Fig2b => "fig2b",
            FigureName::Fig2c => "fig2c",
            FigureName::Fig3 => "fig3",
        }
    }
}

pub struct Figure {
    pub csv: Table,
    pub svg: String,
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Derivatives of the identity function at orders {−1, −1/2, 0, 1/2, 1} over
/// x ∈ (0, 2].
fn fig1() -> Result<Figure> {
    let orders = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut table = Table::new(&["x", "order_-1", "order_-0.5", "order_0", "order_0.5", "order_1"]);
    let mut curves: Vec<Curve> = orders
        .iter()
        .map(|r| Curve { label: format!("r = {r}"), points: Vec::new(), dashed: false })
        .collect();
    for k in 1..=200 {
        let x = 0.01 * k as f64;
        let mut row = vec![Cell::Num(x)];
        for (i, &r) in orders.iter().enumerate() {
            let v = power_rule(r, c(1.0), c(0.0), c(x))?;
            row.push(Cell::Num(v.re));
            curves[i].points.push((x, Some(v.re)));
        }
        table.push(row);
    }
    Ok(Figure { csv: table, svg: line_plot("derivatives of x, fractional orders", "x", "D^r x", &curves) })
}

fn solution_figure(
    title: &str,
    var: &str,
    window: Window,
    value: impl Fn(f64) -> Result<Complex>,
) -> Result<Figure> {
    let mut table = Table::new(&[var, "F_re", "F_im"]);
    let mut points = Vec::new();
    for t in window.grid() {
        let f = value(t)?;
        table.push(vec![Cell::Num(t), Cell::Num(f.re), Cell::Num(f.im)]);
        points.push((t, Some(f.re)));
    }
    let curves = [Curve { label: String::from("Re F"), points, dashed: false }];
    Ok(Figure { csv: table, svg: line_plot(title, var, "F", &curves) })
}

/// Boundary of validity of the phase-shift form for truncated sinusoid
/// derivatives, as a function of the order r.
fn fig3() -> Figure {
    let mut table = Table::new(&["r", "sin_boundary", "cos_boundary"]);
    let mut sin_pts = Vec::new();
    let mut cos_pts = Vec::new();
    for i in 0..=80 {
        let r = -2.0 + 0.05 * i as f64;
        let scan = |kind| {
            phase_boundary(
                kind,
                r,
                DEFAULT_BOUNDARY_TERMS,
                DEFAULT_BOUNDARY_X_MAX,
                DEFAULT_BOUNDARY_EPS,
                DEFAULT_BOUNDARY_DX,
            )
            .boundary
        };
        let bs = scan(CircularKind::Sin);
        let bc = scan(CircularKind::Cos);
        let cell = |b: Option<f64>| b.map_or(Cell::Empty, Cell::Num);
        table.push(vec![Cell::Num(r), cell(bs), cell(bc)]);
        sin_pts.push((r, bs));
        cos_pts.push((r, bc));
    }
    let curves = [
        Curve { label: String::from("sin"), points: sin_pts, dashed: true },
        Curve { label: String::from("cos"), points: cos_pts, dashed: false },
    ];
    Figure {
        csv: table,
        svg: line_plot("phase-shift validity boundary vs order", "r", "x*", &curves),
    }
}

pub fn build(name: FigureName) -> Result<Figure> {
    match name {
        FigureName::Fig1 => fig1(),
        FigureName::Fig2a => {
            let sol = solve_abel(&presets::abel_reference());
            solution_figure(
                "quasi-exponential decay, reference parameters",
                "t",
                Window { start: 0.0, end: 2.0, count: 256 },
                |t| sol.value(t),
            )
        }
        FigureName::Fig2b => {
            let sol = solve_bessel(&presets::bessel_reference());
            solution_figure(
                "power-law Bessel-type solution, reference parameters",
                "t",
                Window { start: 0.0, end: 3.0, count: 256 },
                |t| sol.value(t),
            )
        }
        FigureName::Fig2c => {
            let sol = solve_oscillator(&presets::oscillator_reference());
            solution_figure(
                "driven oscillator solution, reference parameters",
                "w",
                Window { start: 0.05, end: 10.0, count: 256 },
                |t| sol.value(t),
            )
        }
        FigureName::Fig3 => Ok(fig3()),
    }
}
