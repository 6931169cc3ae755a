//! Schubert varieties in compact Hermitian symmetric spaces: root data,
//! Hasse diagrams, descriptors, rigidity criteria, Lie algebra cohomology
//! and the Schur-equality test.

pub mod chevalley;
pub mod cohomology;
pub mod error;
pub mod hasse;
pub mod linalg;
pub mod partitions;
pub mod rigidity;
pub mod root_system;
pub mod schubert;
pub mod schur;
pub mod wedge;

pub use error::CoreError;
pub use root_system::{Family, LieType, Root, RootSystem};
