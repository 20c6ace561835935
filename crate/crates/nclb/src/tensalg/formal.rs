use std::fmt;

use rand_chacha::ChaCha8Rng;

use super::tz::TensorAlgebra;
use crate::error::{Error, Result};
use crate::gralg::sample::random_element;
use crate::gralg::AlgebraElement;
use crate::linemod::{LineModule, Side};
use crate::report::{Check, Shrink};

type AE = AlgebraElement;

/// An element of `L^{⊗n}` or `L°^{⊗n}` kept as separate tensor factors, or of `A` when empty.
#[derive(Clone)]
pub struct FormalTensor {
    factors: Vec<(Side, AE)>,
    /// Only meaningful when there are no factors.
    scalar: AE,
}

impl fmt::Debug for FormalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.scalar);
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, x)| format!("{}{x}", if *s == Side::L { "" } else { "°" }))
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

/// One slot of a block operator such as `Id_k ⊗ ev^s ⊗ ẽv^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Id(usize),
    /// `ev^k: L^k ⊗ L°^k → A`.
    Ev(usize),
    /// `ẽv^k: L°^k ⊗ L^k → A`, built from `coev⁻¹`.
    EvT(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    One,
    Two,
    Three,
    Four,
    Five,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::One, Case::Two, Case::Three, Case::Four, Case::Five];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// Whether `(x ∈ L^n)(y ∈ L°^s)(z ∈ L^r)` falls under this case.
    pub fn applies(self, n: usize, s: usize, r: usize) -> bool {
        match self {
            Case::One => s >= n + r,
            Case::Two => n >= s && r >= s,
            Case::Three => n >= s && s >= r,
            Case::Four => r >= s && s >= n,
            Case::Five => n + r >= s && s >= n && s >= r,
        }
    }

    /// Block operators for `(xy)z` and `x(yz)`.
    pub fn blocks(self, n: usize, s: usize, r: usize) -> (Vec<Block>, Vec<Block>) {
        use Block::*;
        match self {
            Case::One => {
                let b = vec![Ev(n), Id(s - n - r), EvT(r)];
                (b.clone(), b)
            }
            Case::Two => (vec![Id(n - s), Ev(s), Id(r)], vec![Id(n), EvT(s), Id(r - s)]),
            Case::Three => (vec![Id(n - s), Ev(s), Id(r)], vec![Id(n - s + r), Ev(s - r), EvT(r)]),
            Case::Four => (vec![Ev(n), EvT(s - n), Id(n + r - s)], vec![Id(n), EvT(s), Id(r - s)]),
            Case::Five => (vec![Ev(n), EvT(s - n), Id(r + n - s)], vec![Id(n + r - s), Ev(s - r), EvT(r)]),
        }
    }
}

impl FormalTensor {
    pub fn scalar(a: &AE) -> Self {
        FormalTensor { factors: Vec::new(), scalar: a.clone() }
    }

    pub fn from_factors(side: Side, xs: Vec<AE>) -> Self {
        let p = xs[0].presentation().clone();
        FormalTensor { factors: xs.into_iter().map(|x| (side, x)).collect(), scalar: AE::one(&p) }
    }

    /// Random element of grade `k` (`L^k` for `k > 0`, `L°^{-k}` for `k < 0`).
    pub fn random(lm: &LineModule, k: i64, rng: &mut ChaCha8Rng) -> Self {
        let p = lm.presentation();
        let gr = p.grading();
        if k == 0 {
            let a = random_element(p, Some(&gr.zero()), 2, 2, rng);
            return FormalTensor::scalar(&a);
        }
        let (side, d) = if k > 0 { (Side::L, lm.degree().clone()) } else { (Side::Dual, gr.neg(lm.degree())) };
        let xs = (0..k.unsigned_abs()).map(|_| random_element(p, Some(&d), 1, 2, rng)).collect();
        FormalTensor::from_factors(side, xs)
    }

    pub fn grade(&self) -> i64 {
        self.factors.iter().map(|(s, _)| if *s == Side::L { 1 } else { -1 }).sum()
    }

    fn len(&self) -> usize {
        self.factors.len()
    }

    /// Multiply every tensor factor out in `B`.
    pub fn collapse(&self) -> Result<AE> {
        if self.factors.is_empty() {
            return Ok(self.scalar.clone());
        }
        let mut acc = AE::one(self.scalar.presentation());
        for (_, x) in &self.factors {
            acc = acc.try_mul(x)?;
        }
        Ok(acc)
    }

    fn size(&self) -> usize {
        self.factors.iter().map(|(_, x)| x.max_word_len()).sum::<usize>() + self.scalar.max_word_len()
    }

    fn concat(&self, o: &FormalTensor) -> Result<FormalTensor> {
        match (self.factors.is_empty(), o.factors.is_empty()) {
            (true, true) => Ok(FormalTensor::scalar(&self.scalar.try_mul(&o.scalar)?)),
            (true, false) => {
                let mut out = o.clone();
                out.factors[0].1 = self.scalar.try_mul(&out.factors[0].1)?;
                Ok(out)
            }
            (false, true) => {
                let mut out = self.clone();
                let last = out.factors.len() - 1;
                out.factors[last].1 = out.factors[last].1.try_mul(&o.scalar)?;
                Ok(out)
            }
            (false, false) => {
                let mut out = self.clone();
                out.factors.extend(o.factors.iter().cloned());
                Ok(out)
            }
        }
    }

    /// Apply block operators side by side; values in `A` join the left neighbour, else the right one.
    pub fn apply(&self, lm: &LineModule, blocks: &[Block]) -> Result<FormalTensor> {
        let p = lm.presentation();
        let want: usize = blocks.iter().map(|b| match b { Block::Id(k) => *k, Block::Ev(k) | Block::EvT(k) => 2 * k }).sum();
        if want != self.len() {
            return Err(Error::VerificationFailed(format!("blocks {blocks:?} need {want} factors, have {}", self.len())));
        }
        let mut out: Vec<(Side, AE)> = Vec::new();
        let mut pending = if self.factors.is_empty() { self.scalar.clone() } else { AE::one(p) };
        let mut pos = 0;
        for b in blocks {
            match *b {
                Block::Id(k) => {
                    for f in &self.factors[pos..pos + k] {
                        let mut f = f.clone();
                        if !pending.is_one() {
                            f.1 = pending.try_mul(&f.1)?;
                            pending = AE::one(p);
                        }
                        out.push(f);
                    }
                    pos += k;
                }
                Block::Ev(k) | Block::EvT(k) => {
                    let (first, second) = if matches!(b, Block::Ev(_)) { (Side::L, Side::Dual) } else { (Side::Dual, Side::L) };
                    let left = &self.factors[pos..pos + k];
                    let right = &self.factors[pos + k..pos + 2 * k];
                    if left.iter().any(|f| f.0 != first) || right.iter().any(|f| f.0 != second) {
                        return Err(Error::WrongModule(format!("block {b:?} applied to {self:?}")));
                    }
                    let xs: Vec<AE> = left.iter().map(|f| f.1.clone()).collect();
                    let ys: Vec<AE> = right.iter().map(|f| f.1.clone()).collect();
                    let a = nested_pairing(lm, first, &xs, &ys)?;
                    pos += 2 * k;
                    match out.last_mut() {
                        Some(last) => last.1 = last.1.try_mul(&a)?,
                        None => pending = pending.try_mul(&a)?,
                    }
                }
            }
        }
        if out.is_empty() {
            return Ok(FormalTensor::scalar(&pending));
        }
        Ok(FormalTensor { factors: out, scalar: AE::one(p) })
    }

    /// The product of `T_ℤ(L)` carried out on formal tensors.
    pub fn product(&self, lm: &LineModule, o: &FormalTensor) -> Result<FormalTensor> {
        let (n, m) = (self.grade(), o.grade());
        if n == 0 || m == 0 || (n > 0) == (m > 0) {
            return self.concat(o);
        }
        let (n, m) = (n.unsigned_abs() as usize, m.unsigned_abs() as usize);
        let ev = |k| if self.grade() > 0 { Block::Ev(k) } else { Block::EvT(k) };
        let blocks = if m >= n { vec![ev(n), Block::Id(m - n)] } else { vec![Block::Id(n - m), ev(m)] };
        self.concat(o)?.apply(lm, &blocks)
    }
}

/// `ev^k(x₁..x_k ⊗ y₁..y_k) = ev(x₁ ⊗ ev^{k-1}(x₂..x_k ⊗ y₁..y_{k-1}) y_k)`, and the same
/// shape for `ẽv^k` with the sides swapped.
fn nested_pairing(lm: &LineModule, first: Side, xs: &[AE], ys: &[AE]) -> Result<AE> {
    let k = xs.len();
    if k == 0 {
        return Ok(AE::one(lm.presentation()));
    }
    let inner = nested_pairing(lm, first, &xs[1..], &ys[..k - 1])?;
    let y = inner.try_mul(&ys[k - 1])?;
    if first == Side::L {
        lm.ev(&lm.element(&xs[0])?, &lm.dual_element(&y)?)
    } else {
        let pair = (lm.dual_element(&xs[0])?, lm.element(&y)?);
        lm.coev_inv(&[pair])
    }
}

/// Both bracketings of `x y z`, the case-table block operators and the `B`-image product,
/// compared for every shape `n, s, r ≤ max` that the case covers.
pub fn formal_case_check(lm: &LineModule, case: Case, max: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut bad = Shrink::default();
    let mut shapes = 0;
    for n in 0..=max {
        for s in 0..=max {
            for r in 0..=max {
                if !case.applies(n, s, r) {
                    continue;
                }
                shapes += 1;
                let (lb, rb) = case.blocks(n, s, r);
                for _ in 0..samples {
                    let x = FormalTensor::random(lm, n as i64, rng);
                    let y = FormalTensor::random(lm, -(s as i64), rng);
                    let z = FormalTensor::random(lm, r as i64, rng);
                    let whole = x.concat(&y)?.concat(&z)?;
                    let image = whole.collapse()?;
                    let values = [
                        whole.apply(lm, &lb)?.collapse()?,
                        whole.apply(lm, &rb)?.collapse()?,
                        x.product(lm, &y)?.product(lm, &z)?.collapse()?,
                        x.product(lm, &y.product(lm, &z)?)?.collapse()?,
                    ];
                    if values.iter().any(|v| *v != image) {
                        bad.record(x.size() + y.size() + z.size(), || format!("shape ({n},{s},{r}), x = {x:?}, y = {y:?}, z = {z:?}"));
                    }
                }
            }
        }
    }
    let id = format!("case {}", case.number());
    Ok(bad.finish(&id, shapes * samples, format!("{shapes} shapes x {samples} samples")))
}

/// Associativity of the formal product for all grade patterns in `[-max, max]³`,
/// against the payload product of `T_ℤ(L)`.
pub fn formal_sign_check(tz: &TensorAlgebra, max: i64, samples: usize, rng: &mut ChaCha8Rng) -> Result<Check> {
    let lm = tz.line_module().clone();
    let mut bad = Shrink::default();
    let mut total = 0;
    for a in -max..=max {
        for b in -max..=max {
            for c in -max..=max {
                for _ in 0..samples {
                    total += 1;
                    let x = FormalTensor::random(&lm, a, rng);
                    let y = FormalTensor::random(&lm, b, rng);
                    let z = FormalTensor::random(&lm, c, rng);
                    let left = x.product(&lm, &y)?.product(&lm, &z)?;
                    let right = x.product(&lm, &y.product(&lm, &z)?)?;
                    let (tx, ty, tzz) = (
                        tz.element(a, &x.collapse()?)?,
                        tz.element(b, &y.collapse()?)?,
                        tz.element(c, &z.collapse()?)?,
                    );
                    let direct = tz.product(&tz.product(&tx, &ty)?, &tzz)?;
                    let ok = left.grade() == a + b + c
                        && right.grade() == a + b + c
                        && left.collapse()? == *direct.payload()
                        && right.collapse()? == *direct.payload();
                    if !ok {
                        bad.record(x.size() + y.size() + z.size(), || format!("grades ({a},{b},{c}), x = {x:?}, y = {y:?}, z = {z:?}"));
                    }
                }
            }
        }
    }
    Ok(bad.finish("formal product associativity", total, format!("grades in [-{max}, {max}]³, {total} triples")))
}
