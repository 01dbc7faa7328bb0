//! Full-range trigonometric series, source models and their Fourier coefficients.

pub mod quadrature;
pub mod source;
pub mod trig1d;
pub mod trig2d;

pub use source::{fourier_coeffs, SampledFn, SourceModel};
pub use trig1d::{mu, TrigSeries1D};
pub use trig2d::{fourier_coeffs_2d, Parity, SourceModel2D, TrigSeries2D};
