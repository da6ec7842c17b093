//! Exact analysis of sparse polynomial systems against their BKK bound, and
//! liftings that rewrite a system into an equivalent one with smaller mixed
//! volume.

pub mod algebra;
pub mod cli;
pub mod analysis;
pub mod gen;
pub mod intmat;
pub mod lifting;
pub mod oracle;
pub mod polytope;
pub mod saturation;
pub mod sysio;
