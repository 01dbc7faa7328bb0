//! Finite-difference oracles used to cross-check the series solvers.

pub mod fd1d;
pub mod fd2d;

pub use fd1d::{fd_solve_1d, richardson, FdGrid1D, DEFAULT_NODES_1D};
pub use fd2d::{fd_solve_2d, richardson_2d, FdGrid2D, DEFAULT_NODES_2D};
