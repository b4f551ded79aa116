pub mod classify;
pub mod determining;
pub mod error;
pub mod expr;
pub mod field;
pub mod fixtures;
pub mod jet;
pub mod lie_algebra;
pub mod linalg;
pub mod optimal;
