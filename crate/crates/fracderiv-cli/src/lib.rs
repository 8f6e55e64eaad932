//! Support library for the `fracderiv` binary: flag-value parsing, CSV and
//! SVG emission, reference presets, and figure builders. Split from the
//! binary so integration tests can drive the same formats.

pub mod csv;
pub mod figures;
pub mod parse;
pub mod presets;
pub mod svg;
