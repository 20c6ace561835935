//! Random elements for property checks and verification suites.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::element::AlgebraElement;
use super::grading::Degree;
use super::presentation::{Presentation, Word};
use crate::coeff::Scalar;

const COEFFS: [&str; 10] = ["1", "-1", "2", "q", "q^-1", "-q^2", "3", "1 + q", "i", "1 - 2i"];

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    COEFFS[rng.gen_range(0..COEFFS.len())].parse().unwrap()
}

/// A random word of the given degree, by rejection; `None` if none was hit.
pub fn random_word(p: &Presentation, degree: Option<&Degree>, max_len: usize, rng: &mut ChaCha8Rng) -> Option<Word> {
    let n = p.generators().len();
    for _ in 0..500 {
        let len = rng.gen_range(0..=max_len);
        if n == 0 && len > 0 {
            continue;
        }
        let w: Word = (0..len).map(|_| rng.gen_range(0..n) as u8).collect();
        if degree.is_none_or(|d| p.degree_of_word(&w) == *d) {
            return Some(w);
        }
    }
    None
}

/// A random nonzero homogeneous element with up to `max_terms` words.
pub fn random_element(
    p: &Arc<Presentation>,
    degree: Option<&Degree>,
    max_len: usize,
    max_terms: usize,
    rng: &mut ChaCha8Rng,
) -> AlgebraElement {
    for _ in 0..50 {
        let k = rng.gen_range(1..=max_terms.max(1));
        let mut x = AlgebraElement::zero(p);
        for _ in 0..k {
            if let Some(w) = random_word(p, degree, max_len, rng) {
                let t = AlgebraElement::from_word(p, &w, random_scalar(rng)).expect("preset rules terminate");
                x = &x + &t;
            }
        }
        if !x.is_zero() {
            return x;
        }
    }
    AlgebraElement::zero(p)
}
