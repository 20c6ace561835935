//! Hermitian metrics `G(b̄) = b*·z`, Gram matrices, rescaling and the star obstruction.

mod checks;
mod inverse;
mod metric;
mod obstruction;

pub use checks::metric_checks;
pub use inverse::find_inverse;
pub use metric::{GramData, HermitianMetric};
pub use obstruction::star_obstruction;

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
    fn inner_products() {
        let p = Preset::slq2();
        let m = p.metric().unwrap();
        let lm = m.line_module().clone();
        assert_eq!(m.inner(&lm.e_upper(0), &lm.e_upper(0)).unwrap(), el(&p, "1 + q b c"));
        assert_eq!(m.inner(&lm.e_upper(1), &lm.e_upper(1)).unwrap(), el(&p, "-q^-1 b c"));
        let gd = m.gram().unwrap();
        assert_eq!(gd.upper[0][1], el(&p, "q^-1 d c"));
        for c in m.gram_checks(&gd).unwrap() {
            assert!(c.passed(), "{}: {}", c.id, c.witness);
        }
        let c = Preset::circle();
        let m = c.metric().unwrap();
        let lm = m.line_module().clone();
        assert_eq!(m.inner(&lm.e_upper(0), &lm.e_upper(0)).unwrap(), el(&c, "(u u + 2 + U U)/4"));
    }

    #[test]
    fn sesquilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [Preset::slq2(), Preset::circle()] {
            for c in metric_checks(&p.metric().unwrap(), 6, &mut rng).unwrap() {
                assert!(c.passed(), "{}: {}", c.id, c.witness);
            }
        }
    }

    #[test]
    fn rescaling() {
        let c = Preset::circle();
        let m = c.metric().unwrap();
        assert!(matches!(m.rescale(&el(&c, "i")), Err(Error::NotHermitian(_))));
        assert!(matches!(m.rescale(&el(&c, "u")), Err(Error::NotCentral(_))));
        let m4 = m.rescale(&el(&c, "4")).unwrap();
        assert_eq!(m4.scale_inverse(), &el(&c, "1/4"));
        assert!(m4.gram().unwrap().root.is_some());
    }

    #[test]
    fn star_obstructions() {
        let c = Preset::circle();
        let m = c.metric().unwrap();
        let id = |k: &str| vec![vec![el(&c, k), el(&c, "0")], vec![el(&c, "0"), el(&c, k)]];
        assert!(star_obstruction(&id("1"), &m).unwrap().is_one());
        assert_eq!(star_obstruction(&id("2"), &m).unwrap(), el(&c, "4"));
        let p = Preset::slq2();
        let m = p.metric().unwrap();
        let theta = vec![vec![el(&p, "1"), el(&p, "0")], vec![el(&p, "0"), el(&p, "1")]];
        assert!(matches!(star_obstruction(&theta, &m), Err(Error::NotBimoduleMap(_))));
    }
}
