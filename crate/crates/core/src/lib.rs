//! Exact computation on truncated bounded Vilenkin groups.
//!
//! The crate is `no_std` with `alloc`. It provides the group and its grid
//! ([`group`]), characters and transforms ([`spectral`]), the Dirichlet, Fejér
//! and T-mean kernels ([`kernels`]), the summability means ([`means`]), moduli
//! of continuity with the approximation inequalities ([`approx`]), and suites
//! that check all of it numerically ([`verify`]).
//!
//! ```
//! use vilenkin::group::GroupSpec;
//! use vilenkin::spectral::{analyze, character};
//!
//! let g: GroupSpec = "m=2,3,4;L=3".parse().unwrap();
//! let spectrum = analyze(&character(&g, 5).unwrap());
//! assert!((spectrum.coeffs()[5].re - 1.0).abs() < 1e-12);
//! ```

#![no_std]

extern crate alloc;

pub mod approx;
pub mod error;
pub mod group;
pub mod kernels;
pub mod means;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GroupSpec, Point, VIndex};
pub use means::{WeightClass, WeightKind, WeightSeq};
pub use spectral::{GridFunction, Spectrum};

pub use num_complex::Complex64;
