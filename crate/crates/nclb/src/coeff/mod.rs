//! Exact scalars: rational functions in `q` with Gaussian-rational coefficients.

mod expr;
mod gauss;
mod linsolve;
mod poly;
mod scalar;

pub use expr::{eval_scalar, parse_expr, parse_scalar, Expr};
pub use gauss::Gauss;
pub use linsolve::solve;
pub use poly::Poly;
pub use scalar::Scalar;
