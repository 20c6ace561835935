use std::sync::Arc;

use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::rep::NumericRep;
use crate::error::{Error, Result};

const ZERO: C = C { re: 0.0, im: 0.0 };

/// Uniform points on `[-X, X]` with trapezoid weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub x: Vec<f64>,
    pub weight: Vec<f64>,
    pub window: f64,
}

impl Grid {
    pub fn uniform(n: usize, window: f64) -> Result<Self> {
        if n < 2 || window <= 0.0 {
            return Err(Error::GridMismatch);
        }
        let h = 2.0 * window / (n - 1) as f64;
        let x = (0..n).map(|k| -window + h * k as f64).collect();
        let weight = (0..n).map(|k| if k == 0 || k == n - 1 { h / 2.0 } else { h }).collect();
        Ok(Grid { x, weight, window })
    }

    /// The grid with every interval halved.
    pub fn refined(&self) -> Self {
        Grid::uniform(2 * self.x.len() - 1, self.window).expect("refining a valid grid")
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Which boundary behaviour `f₀` has at `±∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `f₀ → 0`.
    C0,
    /// `f₀ → λ` at both ends.
    Thom,
    /// `f₀ → a_±` at `±∞`.
    CircleBundle,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::C0 => "c0",
            Variant::Thom => "thom",
            Variant::CircleBundle => "circle-bundle",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c0" => Ok(Variant::C0),
            "thom" => Ok(Variant::Thom),
            "circle-bundle" => Ok(Variant::CircleBundle),
            _ => Err(Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

/// `(f₀, f₁)`: `f₀(x)` in the image of `A`, `f₁(x) = Σ f_{1,i}(x) e^i` with `f_{1,i}(x)` in
/// the image of `A`. Flat storage: `f0[a·M + k]`, `f1[(a·n + i)·M + k]` for grid point `a`,
/// basis index `i` and circle point `k`.
#[derive(Clone, Debug)]
pub struct BLFunction {
    grid: Arc<Grid>,
    pub f0: Vec<C>,
    pub f1: Vec<C>,
}

/// `(v₀, v₁)` with `v₁(x) = Σ_i ē^i ⊗ k_i(x)` held through the coefficients `k_i`,
/// laid out like [`BLFunction`].
#[derive(Clone, Debug)]
pub struct Vector01 {
    grid: Arc<Grid>,
    pub v0: Vec<C>,
    pub k: Vec<C>,
}

/// The algebra `B_L` of the circle on a grid, with its action on `H₀ ⊕ H₁`.
#[derive(Clone, Debug)]
pub struct BLAlgebra {
    rep: Arc<NumericRep>,
    grid: Arc<Grid>,
}

fn smooth_any(rng: &mut ChaCha8Rng) -> Vec<C> {
    (0..5).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn fourier(c: &[C], t: f64) -> C {
    let h = c.len() as i64 / 2;
    c.iter().enumerate().map(|(m, a)| a * C::from_polar(1.0, (m as i64 - h) as f64 * t)).sum()
}

/// `exp(1 - 1/(1-(x/R)²))` on `|x| < R`, zero outside.
pub fn bump(x: f64, radius: f64) -> f64 {
    let s = x / radius;
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

fn max_abs(xs: impl Iterator<Item = C>) -> f64 {
    xs.map(|c| c.norm()).fold(0.0, f64::max)
}

impl BLAlgebra {
    pub fn new(rep: &Arc<NumericRep>, grid: &Arc<Grid>) -> Self {
        BLAlgebra { rep: rep.clone(), grid: grid.clone() }
    }

    pub fn rep(&self) -> &NumericRep {
        &self.rep
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// The same algebra with a different numeric representation (used for negative controls).
    pub fn with_rep(&self, rep: NumericRep) -> Self {
        BLAlgebra { rep: Arc::new(rep), grid: self.grid.clone() }
    }

    fn dims(&self) -> (usize, usize, usize) {
        (self.grid.len(), self.rep.rank(), self.rep.points())
    }

    fn check(&self, g: &Arc<Grid>) -> Result<()> {
        if Arc::ptr_eq(g, &self.grid) || **g == *self.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    fn zero_function(&self) -> BLFunction {
        let (nx, n, m) = self.dims();
        BLFunction { grid: self.grid.clone(), f0: vec![ZERO; nx * m], f1: vec![ZERO; nx * n * m] }
    }

    fn zero_vector(&self) -> Vector01 {
        let (nx, n, m) = self.dims();
        Vector01 { grid: self.grid.clone(), v0: vec![ZERO; nx * m], k: vec![ZERO; nx * n * m] }
    }

    /// Support radius of the random odd parts.
    pub fn support(&self) -> f64 {
        self.grid.window / 4.0
    }

    /// Tabulate `f₀(x, θ)` and `f_{1,i}(x, θ)`.
    pub fn function(&self, f0: impl Fn(f64, f64) -> C, f1: impl Fn(usize, f64, f64) -> C) -> BLFunction {
        let (_, n, m) = self.dims();
        let th = self.rep.theta();
        let mut f = self.zero_function();
        for (a, &x) in self.grid.x.iter().enumerate() {
            for k in 0..m {
                f.f0[a * m + k] = f0(x, th[k]);
                for i in 0..n {
                    f.f1[(a * n + i) * m + k] = f1(i, x, th[k]);
                }
            }
        }
        f
    }

    pub fn identity(&self) -> BLFunction {
        self.function(|_, _| C::new(1.0, 0.0), |_, _, _| ZERO)
    }

    /// A random element with `f₀` of the requested boundary type and `f₁` a bump times
    /// trigonometric polynomials that are even under `θ ↦ θ + π`.
    pub fn random(&self, variant: Variant, rng: &mut ChaCha8Rng) -> BLFunction {
        let (_, n, m) = self.dims();
        let th = self.rep.theta();
        let width = self.grid.window * rng.gen_range(0.04..0.1);
        let even = |rng: &mut ChaCha8Rng| -> Vec<C> {
            let c: Vec<C> = (0..3).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            th.iter().map(|&t| c[0] + c[1] * C::from_polar(1.0, 2.0 * t) + c[2] * C::from_polar(1.0, -2.0 * t)).collect()
        };
        let decay = even(rng);
        let plus = even(rng);
        let minus = even(rng);
        let lambda = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let odd: Vec<Vec<C>> = (0..n).map(|_| even(rng)).collect();
        let radius = self.support();
        let mut f = self.zero_function();
        for (a, &x) in self.grid.x.iter().enumerate() {
            let g = (-x * x / (2.0 * width * width)).exp();
            let s = (1.0 + x.tanh()) / 2.0;
            let b = bump(x, radius);
            for k in 0..m {
                let base = g * decay[k];
                f.f0[a * m + k] = match variant {
                    Variant::C0 => base,
                    Variant::Thom => base + lambda,
                    Variant::CircleBundle => base + minus[k] * (1.0 - s) + plus[k] * s,
                };
                for i in 0..n {
                    f.f1[(a * n + i) * m + k] = b * odd[i][k];
                }
            }
        }
        f
    }

    /// A smooth random vector of `H₀ ⊕ H₁`.
    pub fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vector01 {
        let (_, n, m) = self.dims();
        let th = self.rep.theta();
        let part = |rng: &mut ChaCha8Rng| -> (f64, Vec<C>) {
            let w = rng.gen_range(1.0..5.0);
            let c = smooth_any(rng);
            (w, th.iter().map(|&t| fourier(&c, t)).collect())
        };
        let p0 = part(rng);
        let pk: Vec<_> = (0..n).map(|_| part(rng)).collect();
        let g = |x: f64, w: f64| (-x * x / (2.0 * w * w)).exp();
        let mut v = self.zero_vector();
        for (a, &x) in self.grid.x.iter().enumerate() {
            let g0 = g(x, p0.0);
            for k in 0..m {
                v.v0[a * m + k] = g0 * p0.1[k];
            }
            for (i, (w, vals)) in pk.iter().enumerate() {
                let gi = g(x, *w);
                for k in 0..m {
                    v.k[(a * n + i) * m + k] = gi * vals[k];
                }
            }
        }
        v
    }

    /// `Σ_i c_i v_i` at grid point `a`, circle point `k`, for flat coefficients `c`.
    fn payload(&self, c: &[C], a: usize, k: usize) -> C {
        let (_, n, m) = self.dims();
        (0..n).map(|i| c[(a * n + i) * m + k] * self.rep.v(i, k)).sum()
    }

    /// Coefficients of `f₁*` at one point: `(f₁*)_j = Σ_i (v_i)* conj(f_{1,i}) w_j`.
    fn odd_star_at(&self, f1: &[C], a: usize, k: usize, out: &mut [C]) {
        let (_, n, m) = self.dims();
        let s: C = (0..n).map(|i| self.rep.star_v(i, k) * f1[(a * n + i) * m + k].conj()).sum();
        for (j, o) in out.iter_mut().enumerate() {
            *o = s * self.rep.w(j, k);
        }
    }

    fn odd_star(&self, f1: &[C]) -> Vec<C> {
        let (nx, n, m) = self.dims();
        let mut out = vec![ZERO; f1.len()];
        let mut buf = vec![ZERO; n];
        for a in 0..nx {
            for k in 0..m {
                self.odd_star_at(f1, a, k, &mut buf);
                for j in 0..n {
                    out[(a * n + j) * m + k] = buf[j];
                }
            }
        }
        out
    }

    /// `⟨e, f̄⟩ = Σ a_i g^{ij} conj(b_j)` at one point, for flat coefficient arrays.
    fn pairing(&self, x: &[C], y: &[C], a: usize, k: usize) -> C {
        let (_, n, m) = self.dims();
        let mut s = ZERO;
        for i in 0..n {
            let xi = x[(a * n + i) * m + k];
            for j in 0..n {
                s += xi * self.rep.g(k, i, j) * y[(a * n + j) * m + k].conj();
            }
        }
        s
    }

    /// `h₀ = f₀g₀ + x²⟨f₁, conj(g₁*)⟩`, `h₁ = f₀g₁ + f₁g₀`.
    pub fn multiply(&self, f: &BLFunction, g: &BLFunction) -> Result<BLFunction> {
        self.check(&f.grid)?;
        self.check(&g.grid)?;
        let (nx, n, m) = self.dims();
        let gs = self.odd_star(&g.f1);
        let mut h = self.zero_function();
        for a in 0..nx {
            let x2 = self.grid.x[a].powi(2);
            for k in 0..m {
                let e = a * m + k;
                h.f0[e] = f.f0[e] * g.f0[e] + x2 * self.pairing(&f.f1, &gs, a, k);
                let fp = self.payload(&f.f1, a, k);
                for j in 0..n {
                    let o = (a * n + j) * m + k;
                    h.f1[o] = f.f0[e] * g.f1[o] + fp * g.f0[e] * self.rep.w(j, k);
                }
            }
        }
        Ok(h)
    }

    pub fn star(&self, f: &BLFunction) -> Result<BLFunction> {
        self.check(&f.grid)?;
        Ok(BLFunction { grid: f.grid.clone(), f0: f.f0.iter().map(|c| c.conj()).collect(), f1: self.odd_star(&f.f1) })
    }

    pub fn scale(&self, f: &BLFunction, s: C) -> BLFunction {
        BLFunction {
            grid: f.grid.clone(),
            f0: f.f0.iter().map(|c| c * s).collect(),
            f1: f.f1.iter().map(|c| c * s).collect(),
        }
    }

    /// The even part only.
    pub fn even_part(&self, f: &BLFunction) -> BLFunction {
        BLFunction { f1: vec![ZERO; f.f1.len()], ..f.clone() }
    }

    /// The odd part only.
    pub fn odd_part(&self, f: &BLFunction) -> BLFunction {
        BLFunction { f0: vec![ZERO; f.f0.len()], ..f.clone() }
    }

    /// Pointwise product of the even parts, as an element with zero odd part.
    pub fn pointwise_even(&self, f: &BLFunction, g: &BLFunction) -> BLFunction {
        BLFunction { f0: f.f0.iter().zip(&g.f0).map(|(x, y)| x * y).collect(), ..self.zero_function() }
    }

    /// Largest pointwise difference of `f₀` and of the `f₁` payloads.
    pub fn distance(&self, f: &BLFunction, g: &BLFunction) -> Result<f64> {
        self.check(&f.grid)?;
        self.check(&g.grid)?;
        let (nx, _, m) = self.dims();
        let mut d = max_abs(f.f0.iter().zip(&g.f0).map(|(x, y)| x - y));
        for a in 0..nx {
            for k in 0..m {
                d = d.max((self.payload(&f.f1, a, k) - self.payload(&g.f1, a, k)).norm());
            }
        }
        Ok(d)
    }

    /// Largest odd payload, for grading checks.
    pub fn odd_size(&self, f: &BLFunction) -> f64 {
        let (nx, _, m) = self.dims();
        max_abs((0..nx).flat_map(|a| (0..m).map(move |k| (a, k))).map(|(a, k)| self.payload(&f.f1, a, k)))
    }

    /// `sqrt(sup|f₀|² + sup x²(|⟨f₁*, conj(f₁*)⟩| + |⟨f₁, conj(f₁)⟩|))`.
    pub fn size(&self, f: &BLFunction) -> f64 {
        let (nx, _, m) = self.dims();
        let fs = self.odd_star(&f.f1);
        let s0 = f.f0.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
        let mut s1: f64 = 0.0;
        for a in 0..nx {
            let x2 = self.grid.x[a].powi(2);
            for k in 0..m {
                s1 = s1.max(x2 * (self.pairing(&fs, &fs, a, k).norm() + self.pairing(&f.f1, &f.f1, a, k).norm()));
            }
        }
        (s0 + s1).sqrt()
    }

    /// `w₀ = f₀▷v₀ + x²(⟨,⟩▷id)(f₁⊗v₁)`, `w₁ = conj(f₁*)⊗v₀ + f₀▷v₁`.
    pub fn act(&self, f: &BLFunction, v: &Vector01) -> Result<Vector01> {
        self.check(&f.grid)?;
        self.check(&v.grid)?;
        let (nx, n, m) = self.dims();
        let mut out = self.zero_vector();
        let mut fs = vec![ZERO; n];
        for a in 0..nx {
            let x2 = self.grid.x[a].powi(2);
            for k in 0..m {
                let e = a * m + k;
                let at = |i: usize| (a * n + i) * m + k;
                self.odd_star_at(&f.f1, a, k, &mut fs);
                let mut w0 = f.f0[e] * v.v0[e];
                for j in 0..n {
                    for i in 0..n {
                        w0 += x2 * f.f1[at(j)] * self.rep.g(k, j, i) * v.k[at(i)];
                    }
                }
                out.v0[e] = w0;
                let f0c = f.f0[e].conj();
                for j in 0..n {
                    let mut kj = fs[j].conj() * v.v0[e];
                    for i in 0..n {
                        kj += (self.rep.v(i, k) * f0c * self.rep.w(j, k)).conj() * v.k[at(i)];
                    }
                    out.k[at(j)] = kj;
                }
            }
        }
        Ok(out)
    }

    /// `⟨k, k'⟩₁ = Σ conj(k_i) g^{ij} k'_j` at one grid point and angle.
    fn fibre_inner(&self, u: &Vector01, v: &Vector01, a: usize, k: usize) -> C {
        let (_, n, m) = self.dims();
        let mut s = ZERO;
        for i in 0..n {
            let ui = u.k[(a * n + i) * m + k].conj();
            for j in 0..n {
                s += ui * self.rep.g(k, i, j) * v.k[(a * n + j) * m + k];
            }
        }
        s
    }

    /// `Σ_p |Σ_j r^{pj} k_j|²` at one point.
    fn root_norm_sqr(&self, k_flat: &[C], a: usize, k: usize) -> f64 {
        let (_, n, m) = self.dims();
        (0..n).map(|p| (0..n).map(|j| self.rep.r(k, p, j) * k_flat[(a * n + j) * m + k]).sum::<C>().norm_sqr()).sum()
    }

    /// `⟨(u₀,u₁), (v₀,v₁)⟩₀₁ = ∫ (⟨u₀,v₀⟩₀ + x²⟨u₁,v₁⟩₁)/(1+x²) dx`, averaging over the circle.
    pub fn inner(&self, u: &Vector01, v: &Vector01) -> Result<C> {
        self.check(&u.grid)?;
        self.check(&v.grid)?;
        let (nx, _, m) = self.dims();
        let mut total = ZERO;
        for a in 0..nx {
            let x = self.grid.x[a];
            let mut s = ZERO;
            for k in 0..m {
                s += u.v0[a * m + k].conj() * v.v0[a * m + k] + x * x * self.fibre_inner(u, v, a, k);
            }
            total += s * (self.grid.weight[a] / ((1.0 + x * x) * m as f64));
        }
        Ok(total)
    }

    pub fn norm(&self, v: &Vector01) -> Result<f64> {
        Ok(self.inner(v, v)?.re.max(0.0).sqrt())
    }

    /// Largest `|⟨k,k⟩₁ − Σ_p |Σ_j r^{pj} k_j|²|` over the grid.
    pub fn positivity_residual(&self, v: &Vector01) -> f64 {
        let (nx, _, m) = self.dims();
        let mut res: f64 = 0.0;
        for a in 0..nx {
            for k in 0..m {
                res = res.max((self.fibre_inner(v, v, a, k) - self.root_norm_sqr(&v.k, a, k)).norm());
            }
        }
        res
    }

    /// Pointwise sup of `|u₀ − v₀|` and `‖r(u₁ − v₁)‖`; coefficient vectors are only defined
    /// up to the kernel of `k ↦ Σ ē^i ⊗ k_i`.
    pub fn vector_distance(&self, u: &Vector01, v: &Vector01) -> f64 {
        let (nx, _, m) = self.dims();
        let dk: Vec<C> = u.k.iter().zip(&v.k).map(|(x, y)| x - y).collect();
        let mut d = max_abs(u.v0.iter().zip(&v.v0).map(|(x, y)| x - y));
        for a in 0..nx {
            for k in 0..m {
                d = d.max(self.root_norm_sqr(&dk, a, k).sqrt());
            }
        }
        d
    }

    /// Lower estimate of the operator norm by power iteration on `f*▷f▷`.
    pub fn operator_norm(&self, f: &BLFunction, iterations: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
        let fs = self.star(f)?;
        let mut v = self.random_vector(rng);
        let mut best: f64 = 0.0;
        for _ in 0..iterations {
            let nv = self.norm(&v)?;
            if nv == 0.0 {
                break;
            }
            let fv = self.act(f, &v)?;
            best = best.max(self.norm(&fv)? / nv);
            let next = self.act(&fs, &fv)?;
            let nn = self.norm(&next)?;
            if nn == 0.0 {
                break;
            }
            v = Vector01 {
                grid: next.grid.clone(),
                v0: next.v0.iter().map(|c| c / nn).collect(),
                k: next.k.iter().map(|c| c / nn).collect(),
            };
        }
        Ok(best)
    }

    /// Values of `f₀` at the two ends of the window.
    pub fn ends(&self, f: &BLFunction) -> (Vec<C>, Vec<C>) {
        let m = self.rep.points();
        let last = self.grid.len() - 1;
        (f.f0[..m].to_vec(), f.f0[last * m..].to_vec())
    }

    /// `f₀` at grid point `a`.
    pub fn f0_at(&self, f: &BLFunction, a: usize) -> Vec<C> {
        let m = self.rep.points();
        f.f0[a * m..(a + 1) * m].to_vec()
    }

    /// Largest odd coefficient at `|x| ≥ R`.
    pub fn outside_support(&self, f: &BLFunction) -> f64 {
        let (_, n, m) = self.dims();
        let r = self.support();
        let mut s: f64 = 0.0;
        for (a, &x) in self.grid.x.iter().enumerate() {
            if x.abs() >= r {
                s = s.max(max_abs(f.f1[a * n * m..(a + 1) * n * m].iter().copied()));
            }
        }
        s
    }
}
