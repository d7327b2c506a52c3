pub mod bounds;
pub mod branched;
pub mod corpus;
pub mod error;
pub mod facemin;
pub mod intmat;
pub mod invariants;
pub mod perm;
pub mod poly;
pub mod rootiso;
pub mod sigio;
pub mod sysolve;
pub mod veer;

pub use error::{Error, Result};
pub use perm::Perm4;
pub use sigio::{emit_taut_sig, parse_taut_sig, validate_gluing, RawTriangulation};
pub use veer::{Color, TetKind, VeeringTriangulation};
