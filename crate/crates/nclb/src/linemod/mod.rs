//! Line modules given by vector data `v`, `w` with `wᵀv = 1`, in the payload picture:
//! an element of `L` is a `b` in `B_g` (standing for `b·wᵀ`), an element of the dual
//! `L°` is a `b` in `B_{-g}` (standing for `v·b`).

mod axioms;
mod module;

pub use axioms::{central_sample, line_axioms};
pub use module::{LineModule, ModuleElement, Side};

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::error::Error;
    use crate::gralg::AlgebraElement;
    use crate::preset::Preset;

    fn el(p: &Preset, s: &str) -> AlgebraElement {
        AlgebraElement::parse(&p.pres, s).unwrap()
    }

    #[test]
    fn presets_satisfy_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [Preset::slq2(), Preset::circle()] {
            for lm in &p.modules {
                for c in line_axioms(lm, 5, &mut rng).unwrap() {
                    assert!(c.passed(), "{} {}: {}", lm.name(), c.id, c.witness);
                }
            }
        }
    }

    #[test]
    fn evaluation_and_coevaluation() {
        let p = Preset::slq2();
        let lm = p.module("plus").unwrap();
        let e = lm.element(&el(&p, "a")).unwrap();
        let f = lm.dual_element(&el(&p, "d")).unwrap();
        assert_eq!(lm.ev(&e, &f).unwrap(), el(&p, "1 + q^-1 b c"));
        assert!(matches!(lm.ev(&e, &e), Err(Error::WrongModule(_))));
        let one = el(&p, "1");
        assert!(lm.coev_inv(&lm.coev(&one).unwrap()).unwrap().is_one());
        let minus = p.module("minus").unwrap();
        let g = minus.element(&el(&p, "d")).unwrap();
        assert!(matches!(lm.ev(&g, &f), Err(Error::WrongModule(_))));
        assert!(matches!(lm.element(&el(&p, "b")), Err(Error::BadDegrees(_))));
    }

    #[test]
    fn centre_automorphisms() {
        let c = Preset::circle();
        let lm = c.line_module().unwrap();
        let z = el(&c, "u u + U U");
        assert_eq!(lm.phi(&z).unwrap(), z);
        assert_eq!(lm.phi_dual(&z).unwrap(), z);
        let p = Preset::slq2();
        let lm = p.module("minus").unwrap();
        assert!(lm.phi(&el(&p, "2 + q")).unwrap() == el(&p, "2 + q"));
        assert!(matches!(lm.phi(&el(&p, "b c")), Err(Error::NotCentral(_))));
    }

    #[test]
    fn degenerate_vectors_rejected() {
        let p = Preset::slq2();
        let gr = p.pres.grading();
        let r = LineModule::new(
            "bad",
            &p.pres,
            gr.element(&[1]).unwrap(),
            vec![el(&p, "a"), el(&p, "0")],
            vec![el(&p, "d"), el(&p, "0")],
            None,
            None,
        );
        assert!(matches!(r, Err(Error::DegenerateVectors(_))));
        let r = LineModule::new("short", &p.pres, gr.zero(), vec![el(&p, "1")], vec![], None, None);
        assert!(matches!(r, Err(Error::DegenerateVectors(_))));
    }

    #[test]
    fn tensor_products() {
        let c = Preset::circle();
        let lm = c.line_module().unwrap();
        let ll = lm.tensor(lm).unwrap();
        assert_eq!(ll.rank(), 4);
        assert_eq!(*ll.degree(), c.pres.grading().zero());
        let p = Preset::slq2();
        let pm = p.module("plus").unwrap().tensor(p.module("minus").unwrap()).unwrap();
        assert_eq!(*pm.degree(), p.pres.grading().zero());
    }
}
