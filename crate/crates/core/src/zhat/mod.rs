//! The profinite integers: the completed Burnside ring, truncated Mackey
//! profunctors and their fixed points, p-typical pieces and gluing data.

mod dbh;
mod fixed;
mod gluing;
mod ptypical;
mod trunc;
mod witt;

pub use dbh::{derived_burnside_homology, LevelHomology};
pub use fixed::{
    canonical_filtration, level_fixed_points, normal_system_roundtrip, Filtration, LevelFixedPoints, LevelReport,
    NormalSystemTrunc, Roundtrip, RoundtripReport,
};
pub use gluing::{gluing_value, GluingCase, GluingValue};
pub use ptypical::{p_typical_component, p_typical_reconstruct_check, restrict_to_subgroup, PTypicalReport, Summand};
pub use trunc::{burnside_truncation, inflate_to_zhat, Tail, ZMackeyParts, ZMackeyTrunc, ZRelation, ZReport, ZViolation};
pub use witt::{idempotent_levels, p_local_idempotent, WittElement};
