pub mod chow;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod filter;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod matroid;
pub mod moebius_algebra;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod ring;
pub mod subset;

pub use error::{Error, Result};
pub use filter::Filter;
pub use matroid::{FiniteFieldMatrix, Graph, Matroid};
pub use par::Exec;
pub use poly::IntPolynomial;
pub use subset::Subset;
