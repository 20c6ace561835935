use num_complex::Complex64;

use super::gauss::Gauss;

/// Dense polynomial in `q` over the Gaussian rationals; `coeffs[k]` multiplies `q^k`.
/// Trailing zeros are always trimmed, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: Gauss, k: usize) -> Self {
        let mut v = vec![Gauss::zero(); k];
        v.push(c);
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Gauss>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Gauss] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Gauss> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some(k)` when the polynomial is exactly `q^k`.
    pub fn as_monic_monomial(&self) -> Option<usize> {
        let d = self.degree()?;
        if self.coeffs[d].is_one() && self.coeffs[..d].iter().all(Gauss::is_zero) {
            Some(d)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Gauss::zero();
        let v = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&z);
                let b = o.coeffs.get(k).unwrap_or(&z);
                a + b
            })
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gauss::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, c: &Gauss) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gauss::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Divide by `q^k`; caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn conj(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(Gauss::conj).collect() }
    }

    /// Euclidean division over the field of Gaussian rationals.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = d.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Gauss::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] * &inv_lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(&f * c);
            }
            quot[k - dd] = f;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, q0: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * q0 + c.to_complex())
    }

    /// Sum of coefficient magnitudes times |q0|^k: a scale for judging a vanishing evaluation.
    pub fn eval_scale(&self, q0: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_complex().norm() * q0.abs().powi(k as i32))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| Gauss::from_int(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, -3, 2, 5]);
        let d = p(&[2, 1, 1]);
        let (qt, r) = a.divrem(&d);
        assert_eq!(qt.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let common = p(&[-1, 1]); // q - 1
        let a = common.mul(&p(&[1, 1]));
        let b = common.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), common);
    }
}
