//! Exact computation of Reidemeister numbers (twisted conjugacy class counts)
//! for endomorphisms of finitely generated nilpotent and virtually abelian
//! groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactla`]: arbitrary-precision integer matrices, determinants, Smith
//!   normal form and cokernel orders.
//! * [`freenilp`]: free nilpotent groups through the truncated Magnus
//!   embedding, Lyndon bases of the lower central layers and induced layer
//!   matrices.
//! * [`catalog`]: concrete groups (Klein bottle group, infinite dihedral
//!   group, central towers, finite polycyclic groups).
//! * [`reidemeister`]: Reidemeister numbers, decision procedures, bounded
//!   scans and certificates with an independent verifier.
//! * [`oracle`]: brute-force ground truth on finite groups and word balls.

pub mod catalog;
pub mod error;
pub mod exactla;
pub mod freenilp;
pub mod oracle;
pub mod reidemeister;
pub mod value;

pub use error::{Error, Result};
pub use exactla::IntMatrix;
pub use value::ReidValue;
