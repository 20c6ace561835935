use crate::coeff::{solve, Scalar};
use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, DegreeOf};

/// Two-sided inverse of `z`: directly for scalars, otherwise by solving `z x = 1`
/// over normal words of the opposite degree up to a length bound.
pub fn find_inverse(z: &AlgebraElement) -> Result<AlgebraElement> {
    let p = z.presentation();
    if let Some(s) = z.as_scalar() {
        return s
            .inv()
            .map(|i| AlgebraElement::scalar(p, i))
            .map_err(|_| Error::NotInvertible(z.to_string()));
    }
    let DegreeOf::Homogeneous(d) = z.degree() else {
        return Err(Error::NotInvertible(format!("{z} is not homogeneous")));
    };
    let target = p.grading().neg(&d);
    let bound = (2 * z.max_word_len()).max(p.max_rule_len()).min(8);
    let words = p.normal_words(bound, Some(&target));
    let images = words
        .iter()
        .map(|w| z.try_mul(&AlgebraElement::from_word(p, w, Scalar::one())?))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<Vec<u8>> = images.iter().flat_map(|x| x.terms().keys().cloned()).collect();
    rows.push(Vec::new());
    rows.sort();
    rows.dedup();
    let m = rows
        .iter()
        .map(|r| images.iter().map(|x| x.terms().get(r).cloned().unwrap_or_default()).collect())
        .collect();
    let rhs = rows.iter().map(|r| if r.is_empty() { Scalar::one() } else { Scalar::zero() }).collect();
    let sol = solve(m, rhs).ok_or_else(|| Error::NotInvertible(z.to_string()))?;
    let mut x = AlgebraElement::zero(p);
    for (w, c) in words.iter().zip(sol) {
        x = x.try_add(&AlgebraElement::from_word(p, w, c)?)?;
    }
    if z.try_mul(&x)?.is_one() && x.try_mul(z)?.is_one() {
        Ok(x)
    } else {
        Err(Error::NotInvertible(z.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::Preset;

    #[test]
    fn inverse_of_u_squared() {
        let c = Preset::circle();
        let z = AlgebraElement::parse(&c.pres, "u u").unwrap();
        assert_eq!(find_inverse(&z).unwrap(), AlgebraElement::parse(&c.pres, "U U").unwrap());
    }

    #[test]
    fn non_invertible() {
        let c = Preset::circle();
        let z = AlgebraElement::parse(&c.pres, "1 + u u").unwrap();
        assert!(matches!(find_inverse(&z), Err(Error::NotInvertible(_))));
        let s = Preset::slq2();
        let z = AlgebraElement::parse(&s.pres, "0").unwrap();
        assert!(find_inverse(&z).is_err());
    }
}
