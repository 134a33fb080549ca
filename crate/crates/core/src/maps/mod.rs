//! The weight ≤ 3 configuration maps: generalized cross-ratio r₃, the line
//! map μ₃, the triangle map a₂, the simplex-pair coproduct ν, the
//! tetrahedron maps a₃′/a₃″/a₃ with their p₃/d/d̂ decompositions, f₅(3), and
//! builders for every relation element.

mod a3;
mod configs;
mod mu3;
mod nu;
mod r3;
pub mod relations;
mod weight2;

pub use a3::{a3, a3_ansatz_config, a3_stream, f5_3, p3_decomposition, A3Variant, P3Variant};
pub use configs::{
    line_config_from_degenerate_plane, line_correspondence_raw, DegeneracyProfile, LineConfig33,
    PlaneConfig6,
};
pub use mu3::{mu3, mu3_limit, mu3_stream};
pub use nu::{nu, NuFormula};
pub use r3::{r3, r3_of_points, r3_stream, R3Mode};
pub use weight2::{a2, a2_stream, boundary_omit, boundary_project, chain_config};
