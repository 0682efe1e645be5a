//! Sparse linear algebra: CSR storage, ILU(0), restarted GMRES and a sparse
//! direct LU.

mod csr;
mod direct;
mod gmres;
mod ilu;
mod mtx;
pub mod vector;

pub use csr::CsrMatrix;
pub use direct::{SparseLu, SparseLuPattern};
pub use gmres::{arnoldi, gmres, gmres_with_guess, GmresOptions, GmresReport};
pub use ilu::{ilu0_factorize, IdentityPreconditioner, Ilu0Factors, Preconditioner};
pub use mtx::{read_matrix_market, write_matrix_market};
