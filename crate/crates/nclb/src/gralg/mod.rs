//! Graded algebras given by generators and rewrite rules.

mod element;
mod grading;
mod presentation;
pub mod sample;

pub use element::{AlgebraElement, DegreeOf};
pub use grading::{Degree, Factor, GradingGroup};
pub use presentation::*;

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::preset::Preset;

    fn el(p: &Preset, s: &str) -> AlgebraElement {
        AlgebraElement::parse(&p.pres, s).unwrap()
    }

    #[test]
    fn slq2_normal_forms() {
        let p = Preset::slq2();
        assert_eq!(el(&p, "b a"), el(&p, "q a b"));
        assert_eq!(el(&p, "d a"), el(&p, "1 + q b c"));
        assert_eq!(el(&p, "a d"), el(&p, "1 + q^-1 b c"));
        assert_eq!(el(&p, "a").terms().len(), 1);
        assert_eq!(el(&p, "b c"), el(&p, "c b"));
        assert_eq!(&el(&p, "1") * &el(&p, "c d a"), el(&p, "c d a"));
    }

    #[test]
    fn slq2_star_and_antipode() {
        let p = Preset::slq2();
        assert_eq!(el(&p, "a").star().unwrap(), el(&p, "d"));
        assert_eq!(el(&p, "a b").star().unwrap(), el(&p, "-q^-1 c d"));
        assert_eq!(el(&p, "i").star().unwrap(), el(&p, "-i"));
        assert_eq!(el(&p, "a").antipode().unwrap(), el(&p, "d"));
        assert_eq!(el(&p, "b").antipode().unwrap(), el(&p, "-q b"));
        let x = el(&p, "(1 + i q) a b c + 2 d");
        assert_eq!(x.star().unwrap().star().unwrap(), x);
    }

    #[test]
    fn degrees_and_centre() {
        let p = Preset::slq2();
        let gr = p.pres.grading();
        assert_eq!(el(&p, "a").degree(), DegreeOf::Homogeneous(gr.element(&[1]).unwrap()));
        assert_eq!(el(&p, "b c").degree(), DegreeOf::Homogeneous(gr.zero()));
        assert_eq!(el(&p, "a + b").degree(), DegreeOf::NotHomogeneous);
        assert!(el(&p, "1").is_central());
        assert!(!el(&p, "a").is_central());
        let c = Preset::circle();
        assert!(el(&c, "u u").is_central());
        assert!((&el(&c, "u").star().unwrap() * &el(&c, "u")).is_one());
    }

    #[test]
    fn confluence_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [Preset::slq2(), Preset::circle()] {
            let r = p.pres.check_confluence(300, 8, &mut rng).unwrap();
            assert_eq!(r.words_tested, 300);
            assert!(r.mismatches.is_empty(), "{:?}", r.mismatches.first());
        }
    }

    #[test]
    fn inconsistent_rules_are_caught() {
        let spec = PresentationSpec {
            name: "bad".into(),
            generators: vec!["x".into(), "y".into()],
            grading: GradingGroup::integers(),
            degrees: vec![vec![0], vec![0]],
            rules: vec![("x y".into(), "1".into()), ("y x".into(), "2".into())],
            star: None,
            antipode: None,
        };
        let p = Presentation::new(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = p.check_word_confluence(&[0, 1, 0], 2, &mut rng).unwrap();
        let m = m.expect("xyx reduces to both x and 2x");
        assert_eq!(m.word, "xyx");
    }
}
