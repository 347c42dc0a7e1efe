//! Exact computations with Burnside rings, Mackey functors of finite groups
//! and truncated Mackey profunctors of the profinite integers.

pub mod burnside;
pub mod cyclic;
pub mod error;
pub mod group;
pub mod gset;
pub mod json;
pub mod mackey;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod scalar;
pub mod snf;
pub mod zhat;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use module::{FpModule, ModuleMap};
pub use ring::CoeffRing;
pub use scalar::Scalar;
