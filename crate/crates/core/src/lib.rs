//! Multicut enumeration and multiple-failure probabilities for coherent
//! systems.
//!
//! A coherent system with `n` binary components is described by its minimal
//! cuts: the inclusion-minimal sets of failed components that bring the
//! system down. Identifying each cut with a squarefree monomial turns the
//! failure states into a monomial ideal, and the states realizing at least
//! `i` simultaneous minimal cuts into the ideal generated by lcms of `i`
//! distinct minimal cuts. On top of that encoding the crate provides:
//!
//! * bit-word monomial and ideal arithmetic ([`monomial`]),
//! * the general fold/filtration construction ([`filtration`]),
//! * closed-form multicut structure of k-out-of-n:F systems ([`kofn`]),
//! * gap-based multicut enumeration for consecutive k-out-of-n:F systems
//!   ([`cons`]),
//! * Hilbert-series numerators, failure probabilities, survivor series and
//!   Bonferroni bounds ([`hilbert`]),
//! * exhaustive state-space ground truth ([`oracle`]).

pub mod binomial;
pub mod cons;
pub mod error;
pub mod filtration;
pub mod hilbert;
pub mod kofn;
pub mod monomial;
mod numeric;
pub mod oracle;

pub use error::{Error, Result};
pub use monomial::{MonomialIdeal, SquarefreeMonomial, MAX_VARS};
