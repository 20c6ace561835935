use super::metric::HermitianMetric;
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::gralg::AlgebraElement;

type AE = AlgebraElement;

/// For a left module map `θ: L → L̄` given by `θ(e^i) = Σ_j θ_ij·conj(e^j)`, the central
/// `z` with `bb⁻¹ ∘ θ̄ ∘ θ (e) = e·z`. On payloads `θ(b) = conj(y b*)` with
/// `y = Σ_ij v_j θ_ij* w_i*`, so the composite is `b ↦ y b y*`.
pub fn star_obstruction(theta: &[Vec<AE>], m: &HermitianMetric) -> Result<AE> {
    let lm = m.line_module();
    let p = lm.presentation();
    let n = lm.rank();
    let zero = p.grading().zero();
    if theta.len() != n || theta.iter().any(|r| r.len() != n) {
        return Err(Error::BadDegrees(format!("θ must be {n}x{n}")));
    }
    if let Some(t) = theta.iter().flatten().find(|t| !t.has_degree(&zero)) {
        return Err(Error::BadDegrees(format!("θ entry {t} is not of degree 0")));
    }
    let mut y = AE::zero(p);
    for (i, row) in theta.iter().enumerate() {
        let mut xi = AE::zero(p);
        for (vj, t) in lm.v().iter().zip(row) {
            xi = xi.try_add(&vj.try_mul(&t.star()?)?)?;
        }
        y = y.try_add(&xi.try_mul(&lm.w()[i].star()?)?)?;
    }
    // Right A-linearity of θ is exactly y a* = a* y.
    for w in p.normal_words(4, Some(&zero)) {
        let a = AE::from_word(p, &w, Scalar::one())?;
        if !y.commutes_with(&a) {
            return Err(Error::NotBimoduleMap(format!("y = {y} does not commute with {a}")));
        }
    }
    let ys = y.star()?;
    let composite = |b: &AE| -> Result<AE> { y.try_mul(b)?.try_mul(&ys) };
    let z = lm.right_factor(composite)?;
    for vi in lm.v() {
        if composite(vi)? != vi.try_mul(&z)? {
            return Err(Error::NoSolution(format!("e ↦ y e y* is not e ↦ e z at e = {vi}")));
        }
    }
    let zs = z.star()?;
    let back = lm.phi(&zs).map_err(|e| Error::NoSolution(format!("Φ_L(z*) undefined: {e}")))?;
    if back != z {
        return Err(Error::VerificationFailed(format!("Φ_L(z*) = {back} ≠ z = {z}")));
    }
    Ok(z)
}
