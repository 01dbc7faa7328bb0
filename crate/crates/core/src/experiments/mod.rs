//! Error metrics and reproductions of the convergence and accuracy studies.

pub mod conv1d;
pub mod conv2d;
pub mod green1d;
pub mod metrics;
pub mod oracle;
pub mod report;

pub use conv1d::{run_convergence_1d, ConvergenceCurve, CurvePoint, Experiment1D, M_SEQUENCE};
pub use conv2d::{run_convergence_2d, square_truncations, Experiment2D};
pub use green1d::{run_green_1d, GreenScheme};
pub use metrics::{measure_errors_1d, measure_errors_2d, ErrorReport, RegionErrors};
pub use oracle::{oracle_check_1d, oracle_check_2d, OracleReport};
