//! Exact enumeration and classification of cyclotomic matrices over the real
//! quadratic integer rings Z, Z[√2], Z[√3], Z[φ] and their compositum.

pub mod catalog;
pub mod enumerate;
pub mod graph;
pub mod ring;
pub mod spectral;
