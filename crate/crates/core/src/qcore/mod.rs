//! Exact scalars and truncated series in `t = q^{1/2}`.
//!
//! Every half-integer power of `q` in the geometry becomes an integer power of
//! `t` under `q^a ↦ t^{2a}`.

pub mod cyclotomic;
pub mod laurent;
pub mod qrational;

pub use laurent::Laurent;
pub use qrational::QRational;
pub mod series;
pub mod unity;

pub use series::{QSeries, Truncation};
pub use unity::{expand_at_unity, USeries};
