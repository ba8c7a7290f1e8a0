//! Minimal polynomials and rational roots, used to split endomorphisms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::matrix::{reduce_rows, Matrix};
use super::scalar::{Field, Scalar};

/// Monic minimal polynomial of a square matrix, coefficients from degree 0 up.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    assert_eq!(m.rows(), m.cols());
    let f = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut p = Matrix::identity(f, n);
    loop {
        powers.push(p.entries().to_vec());
        // Solve sum c_k M^k = M^d for the current degree d.
        let d = powers.len() - 1;
        if d > 0 {
            let len = n * n;
            let mut rows: Vec<Vec<Scalar>> = (0..len)
                .map(|i| (0..=d).map(|k| powers[k][i].clone()).collect())
                .collect();
            let piv = reduce_rows(&mut rows, d + 1);
            if piv.iter().all(|&c| c < d) {
                // M^d lies in the span of lower powers.
                let mut coeff = vec![f.zero(); d + 1];
                for (r, &c) in piv.iter().enumerate() {
                    coeff[c] = -&rows[r][d];
                }
                coeff[d] = f.one();
                return coeff;
            }
        }
        p = p.mul(m);
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Distinct roots of `poly` in the field. Returns `None` when the search is
/// not feasible (coefficients too large, or a large prime field).
pub fn rational_roots(poly: &[Scalar]) -> Option<Vec<Scalar>> {
    let Some(field) = poly.first().map(|c| c.field()) else {
        return Some(Vec::new());
    };
    match field {
        Field::Fp(p) => {
            if p > 100_000 {
                return None;
            }
            Some((0..p as i64).map(|v| field.int(v)).filter(|x| eval(poly, x).is_zero()).collect())
        }
        Field::Q => {
            let mut roots = Vec::new();
            let mut k = 0;
            while k < poly.len() && poly[k].is_zero() {
                k += 1;
            }
            if k > 0 && k < poly.len() {
                roots.push(field.zero());
            }
            let tail = &poly[k..];
            if tail.len() <= 1 {
                return Some(roots);
            }
            let mut lcm = BigInt::one();
            for c in tail {
                lcm = lcm.lcm(c.to_big_rational()?.denom());
            }
            let ints: Vec<BigInt> = tail
                .iter()
                .map(|c| (c.to_big_rational().unwrap() * &lcm).to_integer())
                .collect();
            let nums = divisors(&ints[0])?;
            let dens = divisors(ints.last().unwrap())?;
            for q in &dens {
                for p in &nums {
                    for sign in [1i64, -1] {
                        let r = num_rational::BigRational::new(p * BigInt::from(sign), q.clone());
                        let x = Scalar::from_big_rational(r);
                        if !roots.contains(&x) && eval(tail, &x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
            Some(roots)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_of_projection() {
        let m = Matrix::from_i64(Field::Q, &[&[1, 0], &[0, 0]]);
        let q = Field::Q;
        assert_eq!(minimal_polynomial(&m), vec![q.zero(), q.int(-1), q.one()]);
        assert_eq!(minimal_polynomial(&Matrix::identity(q, 3)), vec![q.int(-1), q.one()]);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let q = Field::Q;
        // (t - 1/2)(t + 3) t = t^3 + 5/2 t^2 - 3/2 t
        let p = vec![q.zero(), q.ratio(-3, 2), q.ratio(5, 2), q.one()];
        let mut r = rational_roots(&p).unwrap();
        r.sort_by(|a, b| a.cmp_value(b));
        assert_eq!(r, vec![q.int(-3), q.zero(), q.ratio(1, 2)]);
        // t^2 + 1 has no rational roots
        assert!(rational_roots(&[q.one(), q.zero(), q.one()]).unwrap().is_empty());
    }

    #[test]
    fn roots_mod_p() {
        let f = Field::Fp(5);
        let r = rational_roots(&[f.int(-1), f.zero(), f.one()]).unwrap();
        assert_eq!(r, vec![f.int(1), f.int(4)]);
    }
}
