//! Vector subdivision schemes with matrix masks.

pub mod analysis;
pub mod convergence;
pub mod corpus;
pub mod descriptor;
pub mod engine;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod mask;
pub mod normal_form;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod sequence;
pub mod smoothness;

pub use error::{Error, Result};
pub use jet::{Base, Jet};
pub use mask::{Mask, Symmetry};
pub use matrix::Mat;
pub use scalar::{GaussRat, Rational, Scalar};
pub use sequence::{MatrixSequence, SupportWindow};
