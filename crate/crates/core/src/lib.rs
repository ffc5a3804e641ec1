//! Exact arithmetic for Artin-Schreier curves `y^p - y = f(x)` over `F_{p^n}`:
//! trace-zero counts, character sums, L-polynomials, Hasse-Witt invariants,
//! p-adic Newton polygons, improved Hasse-Weil bounds and their corollaries
//! for trace codes and Walsh spectra.

pub mod error;
pub mod field;
pub mod limits;

pub use error::{Error, Result, Violation};
pub use limits::Limits;
pub mod counting;
pub mod poly;
pub mod exact;
pub mod zeta;
pub mod newton;
pub mod bounds;
pub mod codes;
pub mod walsh;
pub mod checks;
