pub mod check;
pub mod error;
pub mod families;
pub mod foursym;
pub mod linalg;
pub mod report;
pub mod sweep;
pub mod tensors;

pub use check::Check;
pub use error::{Error, Result};
pub use families::{build_family, Family, FamilySpec};
pub use foursym::{make_foursym, FourSymData, Sign};
pub use report::{run_verify, VerificationReport};
