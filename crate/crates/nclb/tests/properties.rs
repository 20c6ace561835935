use std::sync::LazyLock;

use nclb::coeff::Scalar;
use nclb::gralg::sample::random_element;
use nclb::gralg::{AlgebraElement, DegreeOf, Strategy as Order, Terms};
use nclb::preset::Preset;
use nclb::tensalg::TensorAlgebra;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

static SLQ2: LazyLock<Preset> = LazyLock::new(Preset::slq2);
static CIRCLE: LazyLock<Preset> = LazyLock::new(Preset::circle);

/// `(n/d + i·im)·q^k`.
fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4, -3i64..=3, -2i64..=2).prop_map(|(n, d, k, im)| {
        let re = Scalar::from_ratio(n, d);
        let im = &Scalar::from_int(im) * &Scalar::i();
        &(&re + &im) * &Scalar::q_pow(k)
    })
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..gens as u8, 0..=max)
}

fn element(p: &'static Preset, max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((word(p.pres.generators().len(), max_len), scalar()), 1..=3).prop_map(move |ts| {
        let parts = ts.iter().map(|(w, c)| AlgebraElement::from_word(&p.pres, w, c.clone()).unwrap());
        AlgebraElement::sum(&p.pres, parts)
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_arithmetic_matches_floating_point(a in scalar(), b in scalar(), q0 in 0.3f64..1.7) {
        let (x, y) = (a.eval(q0).unwrap(), b.eval(q0).unwrap());
        prop_assert!(close((&a + &b).eval(q0).unwrap(), x + y));
        prop_assert!(close((&a * &b).eval(q0).unwrap(), x * y));
        prop_assert!(close(a.conj().eval(q0).unwrap(), x.conj()));
        if !b.is_zero() {
            prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
        }
    }

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(a.conj().conj(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_forms_are_normal_and_order_independent(w in word(4, 7), seed in any::<u64>()) {
        let p = &*SLQ2;
        let x = AlgebraElement::from_word(&p.pres, &w, Scalar::one()).unwrap();
        for v in x.terms().keys() {
            prop_assert!(p.pres.is_normal_word(v));
        }
        prop_assert_eq!(&AlgebraElement::from_terms(&p.pres, x.terms()).unwrap(), &x);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start = Terms::new();
        start.insert(w.clone(), Scalar::one());
        for order in [Order::Leftmost, Order::Rightmost, Order::Random] {
            prop_assert_eq!(&p.pres.reduce_with(&start, order, &mut rng).unwrap(), x.terms());
        }
    }

    #[test]
    fn slq2_is_an_associative_star_algebra(x in element(&SLQ2, 3), y in element(&SLQ2, 3), z in element(&SLQ2, 3)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!((&x * &y).star().unwrap(), &y.star().unwrap() * &x.star().unwrap());
        prop_assert_eq!(&x.star().unwrap().star().unwrap(), &x);
        prop_assert_eq!((&x * &y).antipode().unwrap(), &y.antipode().unwrap() * &x.antipode().unwrap());
    }

    #[test]
    fn degrees_add(a in word(4, 5), b in word(4, 5)) {
        let p = &*SLQ2;
        let gr = p.pres.grading();
        let x = AlgebraElement::from_word(&p.pres, &a, Scalar::one()).unwrap();
        let y = AlgebraElement::from_word(&p.pres, &b, Scalar::one()).unwrap();
        let (DegreeOf::Homogeneous(dx), DegreeOf::Homogeneous(dy)) = (x.degree(), y.degree()) else {
            return Err(TestCaseError::fail("words are nonzero and homogeneous"));
        };
        prop_assert_eq!((&x * &y).degree(), DegreeOf::Homogeneous(gr.add(&dx, &dy)));
    }

    #[test]
    fn circle_tz_is_associative(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, seed in any::<u64>()) {
        let p = &*CIRCLE;
        let tz = TensorAlgebra::with_metric(&p.metric().unwrap());
        let lm = tz.line_module().clone();
        let gr = p.pres.grading();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut el = |n: i64| {
            let x = random_element(&p.pres, Some(&gr.scale(lm.degree(), n)), 4, 2, &mut rng);
            tz.element(n, &x).unwrap()
        };
        let (x, y, z) = (el(a), el(b), el(c));
        let l = tz.product(&tz.product(&x, &y).unwrap(), &z).unwrap();
        let r = tz.product(&x, &tz.product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l.payload(), r.payload());
        let back = tz.star(&tz.star(&x).unwrap()).unwrap();
        prop_assert_eq!(back.payload(), x.payload());
    }

    #[test]
    fn evaluation_is_left_linear(seed in any::<u64>()) {
        let p = &*SLQ2;
        let lm = p.module("plus").unwrap();
        let gr = p.pres.grading();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_element(&p.pres, Some(lm.degree()), 3, 2, &mut rng);
        let f = random_element(&p.pres, Some(&gr.neg(lm.degree())), 3, 2, &mut rng);
        let a = random_element(&p.pres, Some(&gr.zero()), 2, 2, &mut rng);
        let fd = lm.dual_element(&f).unwrap();
        let lhs = lm.ev(&lm.element(&(&a * &b)).unwrap(), &fd).unwrap();
        prop_assert_eq!(lhs, &a * &lm.ev(&lm.element(&b).unwrap(), &fd).unwrap());
    }

    #[test]
    fn metric_is_sesquilinear(seed in any::<u64>()) {
        let p = &*SLQ2;
        let m = p.metric().unwrap();
        let lm = m.line_module().clone();
        let gr = p.pres.grading();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |d| random_element(&p.pres, Some(d), 3, 2, &mut rng);
        let (b, c, a) = (pick(lm.degree()), pick(lm.degree()), pick(&gr.zero()));
        let e = lm.element(&b).unwrap();
        let f = lm.element(&c).unwrap();
        let ae = lm.element(&(&a * &b)).unwrap();
        let af = lm.element(&(&a * &c)).unwrap();
        let ef = m.inner(&e, &f).unwrap();
        prop_assert_eq!(m.inner(&ae, &f).unwrap(), &a * &ef);
        prop_assert_eq!(m.inner(&e, &af).unwrap(), &ef * &a.star().unwrap());
        prop_assert_eq!(ef.star().unwrap(), m.inner(&f, &e).unwrap());
    }
}
