//! Dense univariate polynomials over a [`Field`], coefficients in ascending
//! degree. Only what the smoothness certificate needs.

use crate::field::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Poly<F::Elem> {
    let n = p.len().max(q.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(p.get(i).unwrap_or(&zero), q.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, p: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    trim(f, p.iter().map(|x| f.mul(x, c)).collect())
}

pub fn sub<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Poly<F::Elem> {
    add(f, p, &scale(f, q, &f.neg(&f.one())))
}

pub fn mul<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Poly<F::Elem> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(a, b));
        }
    }
    trim(f, out)
}

/// `x^k`
pub fn monomial<F: Field>(f: &F, k: usize) -> Poly<F::Elem> {
    let mut p = vec![f.zero(); k + 1];
    p[k] = f.one();
    p
}

/// `Π (x - r)` over the given roots.
pub fn from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> Poly<F::Elem> {
    roots
        .iter()
        .fold(vec![f.one()], |acc, r| mul(f, &acc, &[f.neg(r), f.one()]))
}

pub fn derivative<F: Field>(f: &F, p: &[F::Elem]) -> Poly<F::Elem> {
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Remainder of `p` modulo a nonzero `q`.
pub fn rem<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Poly<F::Elem> {
    let dq = degree(f, q).expect("division by the zero polynomial");
    let lead_inv = f.inv(&q[dq]).expect("nonzero leading coefficient");
    let mut r = trim(f, p.to_vec());
    while let Some(dr) = degree(f, &r) {
        if dr < dq {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - dq;
        for (i, qi) in q.iter().enumerate().take(dq + 1) {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, qi));
        }
        r = trim(f, r);
    }
    r
}

/// Monic greatest common divisor; the zero polynomial when both vanish.
pub fn gcd<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> Poly<F::Elem> {
    let mut a = trim(f, p.to_vec());
    let mut b = trim(f, q.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    match a.last() {
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero");
            scale(f, &a, &inv)
        }
        None => a,
    }
}

/// True when `p` and `q` have no common root over the algebraic closure.
pub fn coprime<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    degree(f, &gcd(f, p, q)) == Some(0)
}

/// Nonzero with no repeated root over the algebraic closure.
pub fn is_squarefree<F: Field>(f: &F, p: &[F::Elem]) -> bool {
    match degree(f, p) {
        None => false,
        Some(0) => true,
        Some(_) => coprime(f, p, &derivative(f, p)),
    }
}

/// The interpolating polynomial of degree `< xs.len()` (Newton form).
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F::Elem> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.mul(&num, &f.inv(&den).expect("distinct nodes"));
        }
    }
    let mut out: Poly<F::Elem> = Vec::new();
    for i in (0..n).rev() {
        out = mul(f, &out, &[f.neg(&xs[i]), f.one()]);
        out = add(f, &out, &[coef[i].clone()]);
    }
    trim(f, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    #[test]
    fn gcd_and_squarefree() {
        let q = Rationals;
        let r = |v: i64| q.from_i64(v);
        let p = from_roots(&q, &[r(1), r(2), r(2)]);
        assert!(!is_squarefree(&q, &p));
        assert!(is_squarefree(&q, &from_roots(&q, &[r(1), r(2)])));
        let g = gcd(&q, &from_roots(&q, &[r(1), r(3)]), &from_roots(&q, &[r(3), r(5)]));
        assert_eq!(g, from_roots(&q, &[r(3)]));
        assert!(coprime(&q, &from_roots(&q, &[r(1)]), &from_roots(&q, &[r(2)])));
        // x^2 + 1 is squarefree even though it has no rational roots
        assert!(is_squarefree(&q, &[r(1), r(0), r(1)]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Fp::new(101).unwrap();
        let p = vec![3u64, 0, 7, 1];
        let xs: Vec<u64> = (0..4).collect();
        let ys: Vec<u64> = xs.iter().map(|x| eval(&f, &p, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), p);
    }
}
