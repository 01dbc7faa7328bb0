//! Two-dimensional convection-diffusion-reaction solver on a rectangle.

pub mod edges;
pub mod family;
pub mod params;
pub mod particular;
pub mod problem;
pub mod solve;

pub use edges::{BcPattern, Edge, EdgeBc, EdgeBcSpec, EdgeData};
pub use family::{homogeneous_family, reference_solution, ExpTerm, HomogeneousFamily, ReferenceField};
pub use params::{mode_roots, CdrParams2D, Direction, ModeRoots};
pub use particular::particular_2d_fccm;
pub use problem::{export_solution_2d, ProblemFile2D};
pub use solve::{solve_2d, Diagnostics2D, FsmSolution2D, Problem2D};
