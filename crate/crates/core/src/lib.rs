//! First eigenvalues of drift Laplacians `u'' - a s u'` and Weber operators
//! `u'' - b s² u` on intervals, their exact small-parameter series, and a
//! capped-cylinder model manifold on which the drift lower bound is sharp.

pub mod error;
pub mod manifold;
pub mod ode;
pub mod perturbation;
pub mod quadrature;
pub mod roots;
pub mod spectra;
pub mod sturm_liouville;
pub mod tridiagonal;

pub use error::{Result, SpectralError};
pub use manifold::{build_manifold, ModelManifold, ProfileSpec, RcfReport};
pub use perturbation::{perturbation_coefficients, PiPoly, SeriesTarget};
pub use spectra::{drift_eigenvalue, weber_eigenvalue, DriftEigenQuery, WeberEigenQuery};
pub use sturm_liouville::{solve, EigenSolution, Method, Parity, SLProblem};
