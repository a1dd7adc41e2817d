//! Crossed-module invariants of knotted surfaces in the 4-sphere.
//!
//! A knotted surface can be presented by a *knot with bands*: a diagram of an
//! unlink (the pre-knot) together with flat bands recording the saddles of a
//! hyperbolic splitting. From such a diagram this crate extracts a finite
//! presentation of the fundamental crossed module of the surface complement
//! relative to its 1-handlebody, and counts morphisms of that presentation
//! into a user-supplied finite crossed module `(G, E, ∂, ▷)`. Rescaling the
//! count by `#E^{b₁}` gives an exact rational invariant of the surface.
//!
//! Two independent computation paths are provided and cross-checked:
//!
//! * [`kwb::count_colorings`] counts diagram colorings directly (an element
//!   of `G` per thin arc, an element of `E` per band arc, subject to the
//!   Wirtinger, band-boundary, arc-change and maximal-circle conditions);
//! * [`kwb::extract_presentation`] followed by [`presentation::count_homs`]
//!   counts crossed-module morphisms of the extracted presentation.
//!
//! On a well-formed diagram the two agree exactly; the CLI's `--via both`
//! mode and the acceptance suite use this as an internal oracle.

pub mod algebra;
pub mod corpus;
pub mod kwb;
pub mod presentation;
pub mod rational;

mod scan;

pub use algebra::{FiniteCrossedModule, FiniteGroup};
pub use presentation::CrossedModulePresentation;
pub use kwb::KwbDiagram;
pub use rational::ExactRational;
pub use scan::ParseError;
