//! One-dimensional convection-diffusion-reaction solver.

pub mod basis;
pub mod multidomain;
pub mod particular;
pub mod problem;
pub mod roots;
pub mod solve;
pub mod supplementary;

pub use basis::{homogeneous_basis, HomogeneousBasis1D};
pub use multidomain::{solve_multidomain, MultiDomainSpec, PiecewiseSolution1D, SubdomainScheme};
pub use particular::{particular_cm, particular_fccm, Method};
pub use problem::ProblemFile1D;
pub use roots::{classify_regime, CdrParams1D, Regime, RootData};
pub use solve::{assemble_and_solve, BcKind, Bcs1D, BoundaryCondition1D, Diagnostics1D, FsmSolution1D, Problem1D};
pub use supplementary::{build_interpolant, build_supplementary, ScaledPoly, SupplementarySpec};
