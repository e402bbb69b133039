//! Integral bases of cubic function fields over F_q(x).

pub mod error;
pub mod gf;
pub mod poly;
pub mod ratfn;
pub mod standard_form;
pub mod disc;
pub mod basis;
pub mod verify;
pub mod parse;
pub mod pipeline;

pub use error::{Error, Result};
pub use gf::{FfElem, Field, FieldCtx};
pub use poly::Poly;
pub use ratfn::{Place, RatFn};
