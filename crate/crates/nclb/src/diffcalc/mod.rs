//! Differential graded algebras over a presentation, covariant derivatives on line
//! modules, their curvature and its trace.

mod connection;
mod dga;
mod form;
mod suite;

pub use connection::{kappa, Connection};
pub use dga::{BasisForm, Dga};
pub use form::{Form, Monomial};
pub use suite::{calculus_checks, chern_checks};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gralg::AlgebraElement;
    use crate::preset::Preset;

    fn slq2() -> (Preset, std::sync::Arc<Dga>) {
        let p = Preset::slq2();
        let d = p.calculus.clone().unwrap();
        (p, d)
    }

    #[test]
    fn differentials_of_generators() {
        let (p, dga) = slq2();
        let a = AlgebraElement::generator(&p.pres, "a").unwrap();
        assert_eq!(dga.d_function(&a).unwrap(), dga.parse("a e0 + q b e+").unwrap());
        assert_eq!(dga.parse("e-^e+").unwrap(), dga.parse("-q^2 e+^e-").unwrap());
        let b = AlgebraElement::generator(&p.pres, "b").unwrap();
        assert!(dga.d(&dga.d_function(&b).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn moving_coefficients() {
        let (p, dga) = slq2();
        let e0 = dga.parse("e0").unwrap();
        let a = AlgebraElement::parse(&p.pres, "a").unwrap();
        assert_eq!(dga.right_mul(&e0, &a).unwrap(), dga.parse("q^2 a e0").unwrap());
        let ab = AlgebraElement::parse(&p.pres, "a b").unwrap();
        assert_eq!(dga.right_mul(&e0, &ab).unwrap(), e0.left_mul(&ab).unwrap());
    }

    #[test]
    fn kappa_values() {
        let (p, dga) = slq2();
        let k = kappa(&dga, p.module("plus").unwrap()).unwrap();
        assert_eq!(k, dga.parse("e0").unwrap());
        let c = Preset::circle();
        let cd = c.calculus.clone().unwrap();
        assert!(kappa(&cd, c.line_module().unwrap()).unwrap().is_zero());
        let t = Preset::trivial();
        let td = t.calculus.clone().unwrap();
        assert!(kappa(&td, t.line_module().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn curvature_trace_slq2() {
        let (p, dga) = slq2();
        let lm = p.module("plus").unwrap();
        let conn = Connection::new(&dga, lm, dga.zero()).unwrap();
        let omega = conn.chern().unwrap();
        assert_eq!(omega, dga.parse("-q^3 e+^e-").unwrap());
        assert_eq!(omega.to_string(), "-q^3 e+^e-");
        let b = AlgebraElement::parse(&p.pres, "a + q c").unwrap();
        assert_eq!(conn.curvature(&b).unwrap(), conn.curvature_direct(&b).unwrap());
    }
}

#[cfg(test)]
mod connection_tests {
    use super::*;
    use crate::error::Error;
    use crate::preset::Preset;

    #[test]
    fn circle_connections() {
        let c = Preset::circle();
        let dga = c.calculus.clone().unwrap();
        let lm = c.line_module().unwrap();
        let conn = Connection::new(&dga, lm, dga.parse("U du").unwrap()).unwrap();
        assert!(conn.metric_compatible().unwrap());
        let conn = Connection::new(&dga, lm, dga.parse("u du").unwrap()).unwrap();
        assert!(!conn.metric_compatible().unwrap());
    }

    #[test]
    fn zeta_must_be_horizontal_of_degree_zero() {
        let p = Preset::slq2();
        let dga = p.calculus.clone().unwrap();
        let lm = p.module("plus").unwrap();
        assert!(matches!(Connection::new(&dga, lm, dga.parse("e0").unwrap()), Err(Error::NotInOmegaA(_))));
        assert!(matches!(Connection::new(&dga, lm, dga.parse("e-").unwrap()), Err(Error::NotInOmegaA(_))));
        assert!(Connection::new(&dga, lm, dga.parse("c c e-").unwrap()).is_ok());
    }
}
