//! Braid monodromy and Alexander polynomials of completely reducible n-gonal
//! curves (y - y_1(x))···(y - y_n(x)) = 0 with polynomial components over ℂ.
//!
//! The pipeline:
//!
//! 1. [`curve`] parses the curve and locates its singular fibers (the x-values
//!    where two components meet), using the [`numpoly`] root finder.
//! 2. [`rbd`] builds the rectangular braid diagram: an axis-aligned grid with
//!    one cell per fiber, and one canonical loop per fiber plus one at infinity.
//! 3. [`tracker`] walks each loop with an adaptive step size and reads off the
//!    braid word from strand real-part order changes.
//! 4. [`alexander`] stacks the reduced Burau images of the words into the
//!    Libgober matrix and extracts the Alexander polynomial from the gcd of its
//!    maximal minors, using the exact arithmetic in [`exactalg`] and [`braid`].

pub mod alexander;
pub mod braid;
pub mod curve;
pub mod exactalg;
pub mod numpoly;
pub mod rbd;
pub mod tracker;

pub use alexander::{alexander_polynomial, factored_display, AlexanderError};
pub use braid::{BraidWord, FreeWord};
pub use curve::{Curve, CurveError, SingularFiber};
pub use exactalg::{ExactError, LaurentMatrix, LaurentPoly};
pub use numpoly::{ComplexPoly, RootCluster, RootError};
pub use rbd::{Diagram, DiagramLoop};
pub use tracker::{global_monodromy, MonodromyResult, TrackError};
