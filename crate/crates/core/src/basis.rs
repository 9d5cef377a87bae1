//! Monomial bases of `S^r V ⊗ S^t W*` with a fixed, deterministic order.
//!
//! A basis element is a pair of exponent vectors. Bases are ordered
//! graded-lexicographically on the concatenated exponent sequence, x-part
//! first, listed from the largest monomial down: index 0 is `x0^r y0^t`,
//! the last index is `xm^r yn^t`. Since every element of one basis has the
//! same bidegree, this is plain lexicographic order on the exponents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    /// `x_i^d` as an exponent vector of length `len`.
    pub fn pure(len: usize, i: usize, d: u32) -> Self {
        let mut v = vec![0; len];
        v[i] = d;
        ExponentVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `x^I ⊗ y^J`, or `x^I ⊗ (y*)^J` when `dual` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiMonomial {
    pub x: ExponentVector,
    pub y: ExponentVector,
    pub dual: bool,
}

impl BiMonomial {
    pub fn new(x: Vec<u32>, y: Vec<u32>, dual: bool) -> Self {
        BiMonomial {
            x: ExponentVector(x),
            y: ExponentVector(y),
            dual,
        }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.x.degree(), self.y.degree())
    }
}

impl fmt::Display for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.dual { "*" } else { "" };
        write!(f, "x^{} y{}^{}", self.x, star, self.y)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `d` in `vars` variables.
fn count(vars: usize, d: usize) -> usize {
    if vars == 0 {
        return usize::from(d == 0);
    }
    binomial(d + vars - 1, vars - 1) as usize
}

fn rank_exponents(e: &[u32]) -> usize {
    let mut idx = 0;
    let mut rem: usize = e.iter().map(|&v| v as usize).sum();
    let len = e.len();
    for (i, &ei) in e.iter().enumerate().take(len.saturating_sub(1)) {
        let ei = ei as usize;
        // vectors with a larger entry at position i come first
        if rem > ei {
            idx += count(len - i, rem - ei - 1);
        }
        rem -= ei;
    }
    idx
}

fn unrank_exponents(vars: usize, d: usize, mut idx: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(vars);
    let mut rem = d;
    for i in 0..vars {
        if i + 1 == vars {
            out.push(rem as u32);
            break;
        }
        let mut v = rem;
        loop {
            let c = count(vars - i - 1, rem - v);
            if idx < c {
                break;
            }
            idx -= c;
            v -= 1;
        }
        out.push(v as u32);
        rem -= v;
    }
    out
}

/// Dimension of `S^r V ⊗ S^t W*` with `dim V = m+1`, `dim W = n+1`.
pub fn dimension(m: i64, n: i64, r: i64, t: i64) -> Result<usize> {
    if m < 0 || n < 0 || r < 0 || t < 0 {
        return Err(domain!(
            "dimension needs non-negative m, n, r, t; got ({m},{n},{r},{t})"
        ));
    }
    Ok(count(m as usize + 1, r as usize) * count(n as usize + 1, t as usize))
}

/// Indexes the monomial basis of bidegree `(r, t)` in `m+1` x-variables and
/// `n+1` y-variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisIndexer {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// Tags the y-part as the dual basis; does not change the indexing.
    pub dual: bool,
}

impl BasisIndexer {
    pub fn new(m: usize, n: usize, r: usize, t: usize) -> Self {
        BasisIndexer {
            m,
            n,
            r,
            t,
            dual: false,
        }
    }

    pub fn dual(m: usize, n: usize, r: usize, t: usize) -> Self {
        BasisIndexer { m, n, r, t, dual: true }
    }

    fn x_count(&self) -> usize {
        count(self.m + 1, self.r)
    }

    fn y_count(&self) -> usize {
        count(self.n + 1, self.t)
    }

    pub fn dim(&self) -> usize {
        self.x_count() * self.y_count()
    }

    pub fn index_of(&self, mono: &BiMonomial) -> Result<usize> {
        if mono.x.len() != self.m + 1 || mono.y.len() != self.n + 1 {
            return Err(domain!(
                "monomial {mono} has {} x / {} y variables, basis expects {} / {}",
                mono.x.len(),
                mono.y.len(),
                self.m + 1,
                self.n + 1
            ));
        }
        if mono.bidegree() != (self.r, self.t) {
            return Err(domain!(
                "monomial {mono} has bidegree {:?}, basis expects ({}, {})",
                mono.bidegree(),
                self.r,
                self.t
            ));
        }
        Ok(self.index_unchecked(&mono.x, &mono.y))
    }

    /// Index of a pair of exponent vectors already known to match.
    pub(crate) fn index_unchecked(&self, x: &ExponentVector, y: &ExponentVector) -> usize {
        rank_exponents(&x.0) * self.y_count() + rank_exponents(&y.0)
    }

    pub fn monomial_at(&self, i: usize) -> Result<BiMonomial> {
        let dim = self.dim();
        if i >= dim {
            return Err(domain!("index {i} out of range for basis of dimension {dim}"));
        }
        let yc = self.y_count();
        Ok(BiMonomial {
            x: ExponentVector(unrank_exponents(self.m + 1, self.r, i / yc)),
            y: ExponentVector(unrank_exponents(self.n + 1, self.t, i % yc)),
            dual: self.dual,
        })
    }

    /// All basis monomials in index order.
    pub fn iter(&self) -> impl Iterator<Item = BiMonomial> + '_ {
        let xs: Vec<Vec<u32>> = (0..self.x_count())
            .map(|i| unrank_exponents(self.m + 1, self.r, i))
            .collect();
        let ys: Vec<Vec<u32>> = (0..self.y_count())
            .map(|j| unrank_exponents(self.n + 1, self.t, j))
            .collect();
        let dual = self.dual;
        xs.into_iter()
            .flat_map(move |x| ys.clone().into_iter().map(move |y| BiMonomial::new(x.clone(), y, dual)))
    }
}
