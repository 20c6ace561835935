//! Numeric model of the circle-bundle algebra `B_L` on a grid, acting on a discretized
//! `H₀ ⊕ H₁`.

mod bl;
mod rep;
mod suite;

pub use bl::{bump, BLAlgebra, BLFunction, Grid, Variant, Vector01};
pub use rep::NumericRep;
pub use suite::{adjoint_residual, norm_constant, thom_checks, ThomConfig, ThomReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::Preset;

    fn run(variant: Variant) -> ThomReport {
        let m = Preset::circle().metric().unwrap();
        let cfg = ThomConfig { variant, grid: 129, samples: 6, norm_iterations: 10, ..ThomConfig::default() };
        thom_checks(&m, &cfg).unwrap()
    }

    #[test]
    fn all_variants_pass() {
        for v in [Variant::C0, Variant::Thom, Variant::CircleBundle] {
            for c in run(v).checks {
                assert!(c.passed(), "{v:?}: {c:?}");
            }
        }
    }

    #[test]
    fn slq2_has_no_numeric_model() {
        let m = Preset::slq2().metric().unwrap();
        assert!(NumericRep::circle(&m, 8).is_err());
    }

    #[test]
    fn grids_must_match() {
        let m = Preset::circle().metric().unwrap();
        let rep = std::sync::Arc::new(NumericRep::circle(&m, 4).unwrap());
        let a = BLAlgebra::new(&rep, &std::sync::Arc::new(Grid::uniform(5, 1.0).unwrap()));
        let b = BLAlgebra::new(&rep, &std::sync::Arc::new(Grid::uniform(7, 1.0).unwrap()));
        let f = a.identity();
        assert_eq!(b.star(&f).unwrap_err(), crate::error::Error::GridMismatch);
    }
}
