//! Exact computer algebra for differential-operator presentations of
//! sl(n+1) and the tensor modules they generate.
//!
//! The crate builds the Weyl-algebra and shift-algebra realizations of
//! sl(n+1) attached to a finite-dimensional gl(n)-module, a variable subset,
//! and a polynomial twist, and mechanically verifies the algebraic identities
//! these realizations are supposed to satisfy: bracket tables, simplicity
//! witnesses, differential-complex identities, intertwiners, central
//! characters, and coherent-family statistics. All arithmetic is exact
//! rational; there is no floating-point path anywhere.
//!
//! ```
//! use sltensor::glmod::GlModule;
//! use sltensor::present::build_omega;
//! use sltensor::rational::rat;
//!
//! // the natural gl(2)-module, realized over the Weyl algebra with S = {1}
//! let v = GlModule::exterior(2, 1);
//! let presentation = build_omega(&v, &[1]);
//! assert!(presentation.verify().passed());
//!
//! // one-dimensional modules carry their weight on the diagonal
//! let w = GlModule::one_dim(2, rat(1, 3));
//! assert_eq!(w.e(0, 0)[(0, 0)], rat(1, 3));
//! ```

pub mod casimir;
pub mod classify;
pub mod coherent;
pub mod derham;
pub mod expr;
pub mod glmod;
pub mod hfree;
pub mod matrix;
pub mod poly;
pub mod present;
pub mod prng;
pub mod rational;
pub mod report;
pub mod simplicity;
pub mod sl;
pub mod shift;
pub mod suite;
pub mod tensor;
pub mod weyl;
pub mod whittaker;

pub use glmod::GlModule;
pub use poly::{MultiIndex, MultiPoly};
pub use present::{build_omega, AlgebraKind, SlPresentation};
pub use rational::Rat;
pub use shift::ShiftOp;
pub use sl::SlElement;
pub use weyl::{OpMatrix, WeylOp};
