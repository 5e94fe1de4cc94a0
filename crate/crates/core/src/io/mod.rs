//! File formats: CSV tables, meshes and the verification report.

pub mod mesh;
pub mod report;
pub mod tables;

pub use mesh::{write_mesh, MeshFormat, MeshStats};
pub use report::{tolerance_scale, Check, ReportInputs, VerificationReport};
pub use tables::{
    parse_curve_csv, write_curve_csv, write_profile_csv, write_sampled_csv, write_surface_csv,
    CurveData,
};
