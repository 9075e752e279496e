//! Exact triangularization, generalized eigenspaces and Jordan decomposition
//! for square matrices over the Gaussian rationals Q(i).
//!
//! All arithmetic is exact (arbitrary-precision rationals), so rank decisions
//! and therefore the Jordan structure are never perturbed by rounding.
//!
//! ```
//! use exact_jordan::{jordan_decomposition, Matrix};
//!
//! let a = Matrix::from_int_rows(&[[2, 1, 1], [-4, 5, 4], [1, 0, 2]]);
//! let d = jordan_decomposition(&a).unwrap();
//! assert_eq!(d.m, Matrix::from_int_rows(&[[3, 1, 0], [0, 3, 1], [0, 0, 3]]));
//! assert_eq!(&a * &d.v, &d.v * &d.m);
//! ```

pub mod cli;
pub mod decomp;
pub mod error;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use decomp::{
    block_diagonalize, blockwise_trigonalize, is_jordan_matrix, jordan_analysis, jordan_chains,
    jordan_decomposition, stage_ladder, trigonalize, Block, Decomposition, JordanChain, Kind,
    StageLadder,
};
pub use error::{Error, Result};
pub use matrix::{
    colspace_basis, complete_basis, inverse, krylov_annihilator, nullspace_basis, rank, rref,
    solve, Basis, Matrix,
};
pub use poly::{poly_roots_exact, Polynomial};
pub use scalar::{format_scalar, gaussian_sqrt, parse_scalar, Gaussian, Rational};
pub use spectral::{find_eigenvalue, minimal_polynomial, spectrum, Spectrum, SpectrumEntry};
pub use verify::{
    check_decomposition, exhaustive_structures, generate_case, CheckReport, JordanStructure,
};
