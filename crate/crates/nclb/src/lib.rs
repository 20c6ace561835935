pub mod cli;
pub mod coeff;
pub mod diffcalc;
pub mod error;
pub mod gralg;
pub mod hermet;
pub mod linemod;
pub mod preset;
pub mod report;
pub mod tensalg;
pub mod thomnum;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub mod algebras {}
    #[doc = include_str!("../../../book/src/line_modules.md")]
    pub mod line_modules {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    pub mod metrics {}
    #[doc = include_str!("../../../book/src/tensor_algebra.md")]
    pub mod tensor_algebra {}
    #[doc = include_str!("../../../book/src/chern.md")]
    pub mod chern {}
    #[doc = include_str!("../../../book/src/thom.md")]
    pub mod thom {}
}
