use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gauss::Gauss;
use super::poly::Poly;
use crate::error::{Error, Result};

/// An exact element of Q(i)(q).
///
/// The representation is canonical: the denominator is monic and coprime to
/// the numerator, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(Gauss::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(Gauss::i())
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar { num: Poly::monomial(Gauss::one(), k as usize), den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: Poly::monomial(Gauss::one(), (-k) as usize) }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(Gauss::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(Gauss::from_ratio(n, d))
    }

    pub fn from_gauss(c: Gauss) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    /// `num / den`, reduced to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        // Laurent fast path: denominator q^k.
        if let Some(k) = den.as_monic_monomial() {
            let v = num.valuation().unwrap_or(0);
            let m = k.min(v);
            return Scalar {
                num: num.shift_down(m),
                den: Poly::monomial(Gauss::one(), k - m),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let l = den.lead().unwrap().inv().unwrap();
        Scalar { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a Gaussian rational, when it does not depend on q.
    pub fn as_constant(&self) -> Option<Gauss> {
        if self.is_zero() {
            return Some(Gauss::zero());
        }
        (self.den.is_one() && self.num.degree() == Some(0)).then(|| self.num.coeffs()[0].clone())
    }

    /// Fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn conj(&self) -> Self {
        // Conjugation maps monic to monic and preserves coprimality.
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Numeric value at a real `q0`.
    pub fn eval(&self, q0: f64) -> Result<Complex64> {
        let z = Complex64::new(q0, 0.0);
        let d = self.den.eval(z);
        if d.norm() <= 1e-13 * self.den.eval_scale(q0).max(1.0) {
            return Err(Error::PoleAtQ0(q0.to_string()));
        }
        Ok(self.num.eval(z) / d)
    }

    /// Positive rational `n`-th root of a positive rational constant, if exact.
    pub fn rational_root(&self, n: u32) -> Option<Scalar> {
        let c = self.as_constant()?;
        if !c.is_real() || !c.re.is_positive() {
            return None;
        }
        let root = |x: &BigInt| -> Option<BigInt> {
            let r = x.nth_root(n);
            (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
        };
        let rn = root(c.re.numer())?;
        let rd = root(c.re.denom())?;
        Some(Scalar::from_gauss(Gauss::new(BigRational::new(rn, rd), BigRational::zero())))
    }

    /// Laurent view `(lowest exponent, coefficients)` when the denominator is a power of q.
    pub fn as_laurent(&self) -> Option<(i64, &[Gauss])> {
        let k = self.den.as_monic_monomial()?;
        Some((-(k as i64), self.num.coeffs()))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.den.as_monic_monomial(), o.den.as_monic_monomial()) {
            let m = a.max(b);
            let num = self.num.shift_up(m - a).add(&o.num.shift_up(m - b));
            return Scalar::canonical(num, Poly::monomial(Gauss::one(), m));
        }
        if self.den == o.den {
            return Scalar::canonical(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::canonical(num, self.den.mul(&o.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        Scalar::canonical(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Writes `sum c_k q^(k+shift)` in descending powers, in the scalar input syntax.
fn fmt_laurent(coeffs: &[Gauss], shift: i64) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = k as i64 + shift;
        let qpart = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{e}"),
        };
        let term = if qpart.is_empty() {
            c.to_string()
        } else if c.is_one() {
            qpart
        } else if (-c).is_one() {
            format!("-{qpart}")
        } else {
            format!("{c}*{qpart}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl Scalar {
    /// True when the printed form is a single product term (safe to juxtapose).
    pub fn is_monomial(&self) -> bool {
        self.den.as_monic_monomial().is_some()
            && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && self.num.coeffs().iter().all(|c| c.is_zero() || c.is_simple())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((shift, coeffs)) = self.as_laurent() {
            return write!(f, "{}", fmt_laurent(coeffs, shift));
        }
        write!(
            f,
            "({})/({})",
            fmt_laurent(self.num.coeffs(), 0),
            fmt_laurent(self.den.coeffs(), 0)
        )
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::expr::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn inverse_pair() {
        assert!((&Scalar::q() * &Scalar::q_pow(-1)).is_one());
    }

    #[test]
    fn laurent_sum_collapses() {
        // q(1 - q^-2) + q^-1 = q
        let lhs = &(&Scalar::q() * &(&Scalar::one() - &Scalar::q_pow(-2))) + &Scalar::q_pow(-1);
        assert_eq!(lhs, Scalar::q());
    }

    #[test]
    fn inv_two_i() {
        assert_eq!(s("2i").inv().unwrap(), s("-i/2"));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conj_fixes_q() {
        assert_eq!(Scalar::i().conj(), s("-i"));
        assert_eq!(s("q^2").conj(), s("q^2"));
        assert_eq!(s("(1+i)*q^-1").conj(), s("(1-i)*q^-1"));
    }

    #[test]
    fn eval_and_poles() {
        let v = s("q^3").eval(0.9).unwrap();
        assert!((v.re - 0.729).abs() < 1e-12 && v.im == 0.0);
        assert!(matches!(s("1/(1-q)").eval(1.0), Err(Error::PoleAtQ0(_))));
        assert_eq!(Scalar::i().eval(0.5).unwrap(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn rational_functions_reduce() {
        let a = s("(q^2 - 1)/(q - 1)");
        assert_eq!(a, s("q + 1"));
        let b = s("1/(1+q) + 1/(1-q)");
        assert_eq!(b, s("2/(1 - q^2)"));
        assert_eq!(b.to_string().parse::<Scalar>().unwrap(), b);
    }

    #[test]
    fn display_round_trips() {
        for x in ["q^3", "-q^-1", "1 + q^-1", "(1 + 2i)*q - 3/4", "-i*q^2 + i", "0"] {
            let v = s(x);
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{x} -> {v}");
        }
        assert_eq!(s("q^3").to_string(), "q^3");
    }

    #[test]
    fn fourth_roots() {
        assert_eq!(s("16").rational_root(4), Some(s("2")));
        assert_eq!(s("81/16").rational_root(4), Some(s("3/2")));
        assert_eq!(s("-1").rational_root(4), None);
        assert_eq!(s("2").rational_root(4), None);
    }
}
