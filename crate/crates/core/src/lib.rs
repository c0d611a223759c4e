//! Valley-restricted weighted Dyck paths: exact generating functions,
//! enumeration, weight systems, bijections and independent oracles.

pub mod bijections;
pub mod cli;
pub mod oracles;
pub mod paths;
pub mod ring;
pub mod series;
pub mod verify;
pub mod weights;

pub use oracles::Params;
pub use paths::{Family, Filter, Part, Path, Step, VStructure};
pub use ring::{Polynomial, Rational, Var};
pub use series::TruncatedSeries;
pub use weights::{TargetWeighting, WeightSpec};
