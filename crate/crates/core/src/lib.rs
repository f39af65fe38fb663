//! Entry loci, secant varieties and Segre points of complex projective
//! varieties, computed exactly over ℚ or a large prime field.

pub mod catalog;
pub mod entry;
pub mod error;
pub mod file;
pub mod geometry;
pub mod secant;
pub mod segre;
pub mod variety;

pub use catalog::{build_catalog_variety, CatalogKey};
pub use error::{GeomError, Result};
pub use variety::{LinearSubspace, Parametrization, ProjectivePoint, ProjectiveVariety, VarietyMeta};
