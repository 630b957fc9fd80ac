//! Exact computations for lifting problems through central torus quotients: lattices and Smith
//! forms, based root data, embedding label data, weight multisets, rational quadratic forms and
//! Heisenberg group representations.

pub mod abelian;
pub mod rootdata;
pub mod serde_util;
pub mod cmdata;
pub mod lifting;
pub mod weights;
pub mod qforms;
pub mod heisenberg;
pub mod verify;
