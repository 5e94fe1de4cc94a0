//! Minimal translation surfaces Ψ(s,t) = α(s) + α(t) built from the roots of
//! a real cubic, plus the numerical checks that certify them.

// `!(x > 0.0)` is used deliberately so that NaN is rejected along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arclength;
pub mod curvature_ode;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod integrate;
pub mod io;
pub mod moduli;
pub mod pipeline;
pub mod stencil;
pub mod sym3;
pub mod verify;

pub use error::{Error, Result};
pub use moduli::Moduli;
