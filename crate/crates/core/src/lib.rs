//! Linear codes over GF(q) viewed as multisets of points in PG(k−1, q).

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod projsystem;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Flat, Hyperplane, Point};
pub use gf::{Elem, FieldSpec};
pub use projsystem::{CodeParams, ProjectiveSystem};
