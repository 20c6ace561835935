//! The graded tensor algebra `T_ℤ(L)` in its image `⊕_n B_{ng}`, formal tensors for the
//! associativity case table, Hopf-Galois witnesses, and the `ξ`, `α` machinery.

mod formal;
mod hopf;
mod tz;
mod xi;

pub use formal::{formal_case_check, formal_sign_check, Block, Case, FormalTensor};
pub use hopf::{hopf_galois_check, hopf_galois_witnesses};
pub use tz::{TensorAlgebra, TzElement};
pub use xi::{fourth_root, star_compat_rescale, xi_alpha, xi_properties, EvenOdd, EvenOddElement, XiAlpha};

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::error::Error;
    use crate::gralg::AlgebraElement;
    use crate::preset::Preset;

    #[test]
    fn slq2_products_and_star() {
        let p = Preset::slq2();
        let m = p.metric().unwrap();
        let tz = TensorAlgebra::with_metric(&m);
        let e = |s: &str| AlgebraElement::parse(&p.pres, s).unwrap();
        let x = tz.element(1, &e("d")).unwrap();
        let y = tz.element(-1, &e("a")).unwrap();
        let xy = tz.product(&x, &y).unwrap();
        assert_eq!(xy.grade(), 0);
        assert_eq!(*xy.payload(), e("1 + q b c"));
        let s = tz.star(&x).unwrap();
        assert_eq!((s.grade(), s.payload().clone()), (-1, e("a")));
        assert!(tz.element(1, &e("a")).is_err());
        assert!(tz.dual_basis_checks().unwrap().iter().all(|c| c.passed()));
    }

    #[test]
    fn star_is_an_anti_homomorphism() {
        let p = Preset::slq2();
        let tz = TensorAlgebra::with_metric(&p.metric().unwrap());
        let e = |s: &str| AlgebraElement::parse(&p.pres, s).unwrap();
        let x = tz.element(2, &e("d d - q b d")).unwrap();
        let y = tz.element(-1, &e("a + c b a")).unwrap();
        let lhs = tz.star(&tz.product(&x, &y).unwrap()).unwrap();
        let rhs = tz.product(&tz.star(&y).unwrap(), &tz.star(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn case_table_and_hopf_galois() {
        let p = Preset::slq2();
        let lm = p.line_module().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in Case::ALL {
            let c = formal_case_check(lm, case, 2, 3, &mut rng).unwrap();
            assert!(c.passed(), "{c:?}");
        }
        assert!(hopf_galois_check(lm, 4).unwrap().passed());
        assert_eq!(hopf_galois_witnesses(lm, 2).unwrap().len(), 4);
    }

    #[test]
    fn circle_xi_alpha() {
        let p = Preset::circle();
        let xa = xi_alpha(&p.metric().unwrap()).unwrap();
        assert_eq!(xa.xi.grade(), 2);
        assert!(xa.xi_payload().is_one());
        assert!(xa.alpha.is_one());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for c in xi_properties(&xa, 20, &mut rng).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        let eo = EvenOdd::new(&xa).unwrap();
        for c in eo.checks(20, &mut rng).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn sphere_has_no_star_on_l() {
        let p = Preset::slq2();
        assert_eq!(xi_alpha(&p.metric().unwrap()).unwrap_err(), Error::NoStarOnL);
    }

    #[test]
    fn fourth_roots() {
        let p = Preset::trivial();
        let s = |t: &str| AlgebraElement::parse(&p.pres, t).unwrap();
        assert_eq!(fourth_root(&s("16")).unwrap(), s("2"));
        assert!(matches!(fourth_root(&s("-1")), Err(Error::NoFourthRoot(_))));
        let xa = xi_alpha(&p.metric().unwrap()).unwrap();
        assert!(star_compat_rescale(&xa).unwrap().alpha.is_one());
    }
}
