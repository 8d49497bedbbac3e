//! Gabor systems with Hermite windows over unions of shifted lattices.
//!
//! The crate evaluates Hermite functions and the Jacobi theta function,
//! applies dilations, chirps, time-frequency shifts and fractional Fourier
//! transforms together with their plane isomorphisms, reduces point sets to
//! multi-window systems over the integer lattice, and decides the frame
//! property from the Zak transform.

pub mod cli;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod special_fn;
pub mod tf_operators;
pub mod window;
pub mod zak;

pub use error::{Error, Result};
pub use frame::{analyze, frame_bounds, reduce_to_multiwindow, FrameReport, GaborSystem, Verdict};
pub use lattice::{coset_split, iwasawa_factor, IwasawaFactors, Matrix2x2, PointSet};
pub use special_fn::{hermite, theta3, HermiteIndex, ThetaValue};
pub use tf_operators::{OperatorChain, TfPoint, UnitaryOp};
pub use window::Window;
pub use zak::{zak_point, zak_surface, Truncation, ZakSurface, ZakValue};
