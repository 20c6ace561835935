use super::scalar::Scalar;

/// Solve `m x = rhs` over Q(i)(q) by Gaussian elimination.
///
/// Returns one solution (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve(mut m: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                let t = &f * &m[r][k];
                m[i][k] = &m[i][k] - &t;
            }
            let t = &f * &rhs[r];
            rhs[i] = &rhs[i] - &t;
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn two_by_two() {
        // q x + y = 1, x - y = q
        let m = vec![vec![s("q"), s("1")], vec![s("1"), s("-1")]];
        let x = solve(m.clone(), vec![s("1"), s("q")]).unwrap();
        assert_eq!(&(&m[0][0] * &x[0]) + &x[1], s("1"));
        assert_eq!(&x[0] - &x[1], s("q"));
    }

    #[test]
    fn inconsistent() {
        let m = vec![vec![s("1")], vec![s("2")]];
        assert!(solve(m, vec![s("1"), s("1")]).is_none());
    }
}
