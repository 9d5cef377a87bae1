//! Oracles written independently of the library's basis ordering and
//! elimination code.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `(x-exponents, y-exponents, coefficient)` of one term.
pub type Term = ((usize, usize), (usize, usize), i64);
type Key = ((usize, usize), (usize, usize));

/// Rank over Q by plain Gaussian elimination with rational arithmetic.
pub fn rank_over_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in 0..ncols {
                    let d = &f * &a[rank][j];
                    a[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank modulo a prime by elimination on `i128` residues.
pub fn rank_mod(rows: &[Vec<i64>], p: i128) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128).rem_euclid(p)).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let inv = |x: i128| {
        let (mut e, mut b, mut acc) = (p - 2, x, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let iv = inv(a[rank][c]);
        for i in rank + 1..a.len() {
            let f = a[i][c] * iv % p;
            if f != 0 {
                for j in 0..ncols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Monomials `x0^(d-i) x1^i` listed as exponent pairs.
pub fn binary_monomials(d: usize) -> Vec<(usize, usize)> {
    (0..=d).map(|i| (d - i, i)).collect()
}

/// Dense matrix of the multiplication–contraction map for a form on
/// `P^1 × P^1` given by `(x-exponents, y-exponents, coefficient)` terms,
/// with rows and columns keyed by monomials instead of positions. Entries are
/// plain integers (no reduction).
pub fn mulcon_by_monomials(terms: &[Term], a: usize, b: usize, r: usize, t: usize) -> HashMap<(Key, Key), i64> {
    let mut out = HashMap::new();
    for xi in binary_monomials(r) {
        for yt in binary_monomials(t) {
            for &(xa, yb, c) in terms {
                assert_eq!(xa.0 + xa.1, a);
                assert_eq!(yb.0 + yb.1, b);
                if yb.0 > yt.0 || yb.1 > yt.1 {
                    continue;
                }
                let row = ((xi.0 + xa.0, xi.1 + xa.1), (yt.0 - yb.0, yt.1 - yb.1));
                *out.entry((row, (xi, yt))).or_insert(0) += c;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Dimension of `S^r k^{m+1} ⊗ S^t k^{n+1}` by direct counting.
pub fn count_dim(m: usize, n: usize, r: usize, t: usize) -> usize {
    count_monomials(m + 1, r) * count_monomials(n + 1, t)
}

fn count_monomials(vars: usize, d: usize) -> usize {
    if vars == 1 {
        return 1;
    }
    (0..=d).map(|e| count_monomials(vars - 1, d - e)).sum()
}
