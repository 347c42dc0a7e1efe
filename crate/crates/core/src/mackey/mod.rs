//! Mackey functors of finite groups.
//!
//! A functor is stored on the orbit category of class representatives: a
//! value `M(G/K)` per class and, for each map `G/K → G/H`, a pushforward
//! (transfer) and a pullback (restriction). Conjugations are the maps
//! between a class and itself.

pub mod examples;
pub mod functor;
pub mod green;
pub mod ops;
pub mod orbit;

pub use examples::{burnside_mackey, fixed_point_mackey, invariants_mackey, permutation_action};
pub use functor::{AxiomReport, Identity, MackeyFunctor, Violation};
pub use green::{burnside_pairing, GreenPairing, GreenReport};
pub use ops::{
    categorical_fixed_points, geometric_fixed_points, inflation, inflation_unit, phi_psi_commute_check,
    CategoricalFixedPoints, GeometricFixedPoints, MackeyMorphism, PhiPsiReport,
};
pub use orbit::{OrbitCategory, OrbitMap};
