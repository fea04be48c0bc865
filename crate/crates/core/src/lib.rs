pub mod cli;
pub mod cyclo;
pub mod error;
pub mod harness;
pub mod macdonald;
pub mod negut;
pub mod par;
pub mod partition;
pub mod qt;
pub mod symfunc;
pub mod tensor;
pub mod universal;

pub use error::{Error, Result};
pub use partition::{Partition, TriangularPartition};
pub use qt::{QTPoly, QTRational};
