//! Light and atoms in front of a two-sided, semi-transparent mirror.
//!
//! * [`params`]: mirror, atom, packet and medium descriptions.
//! * [`classical`]: mirror-image superpositions of classical fields.
//! * [`modespace`]: the quantised field on a discrete mode grid.
//! * [`rates`]: closed-form decay rate and level shift of an atom.
//! * [`oracle`]: independent quadrature routes to the same rates.
//! * [`mastereq`]: two-level atom dynamics, deterministic and unravelled.
//! * [`io`]: CSV output.

// `!(x > 0.0)` is used throughout so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod io;
pub mod mastereq;
pub mod modespace;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod rates;

pub use error::{Error, Result};
pub use params::{
    phase_constraint_check, AtomSpec, Direction, GaussianPacket, Medium, MirrorSpec, PhaseCheck,
    Side,
};
