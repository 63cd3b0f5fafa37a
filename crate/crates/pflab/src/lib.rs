//! Exact-arithmetic toolkit for pfaffian numbers of matching covered
//! graphs: perfect-matching machinery, orientation signs and signature
//! matrices, pfaffian-number search, Khatri-Rao rank bounds, tight cut
//! decomposition, and the symbolic pfaffian counting method.

pub mod error;
pub mod families;
pub mod graph;
pub mod limits;
pub mod linalg;
pub mod orientation;
pub mod symbolic;

pub use error::{Error, Result};
pub use limits::Limits;
