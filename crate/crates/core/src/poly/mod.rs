//! Polynomial arithmetic over the integers.

pub mod cyclo;
pub mod laurent;
pub mod lmat;
pub mod mgcd;
pub mod upoly;

pub use cyclo::remove_cyclotomic_factors;
pub use laurent::Laurent;
pub use lmat::LMat;
pub use upoly::UPoly;
