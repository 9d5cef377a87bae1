//! Matrices of the multiplication–contraction map, its differential-operator
//! twin, and evaluation at points of `P^m × P^n`.

use crate::basis::{BasisIndexer, ExponentVector};
use crate::error::{domain, Error, Result};
use crate::field::Field;
use crate::form::BiForm;
use crate::matrix::MapMatrix;

/// Matrix of `S^r V ⊗ S^t W* → S^{r+a} V ⊗ S^{t-b} W*` induced by `sigma`.
///
/// The column of `x^I (y*)^T` receives, for each term `c x^A y^B` of `sigma`
/// with `B <= T`, the coefficient `c` in the row of `x^{I+A} (y*)^{T-B}`.
/// Contraction carries unit coefficients.
pub fn build_mulcon_matrix<F: Field>(sigma: &BiForm<F>, r: usize, t: usize) -> Result<MapMatrix<F>> {
    build_with_weight(sigma, r, t, |_, _, c| c.clone())
}

/// Matrix of the differential operator `D = Σ c x^A ∂y^B` acting on
/// `k[x]_r ⊗ k[y]_t`. Same support as [`build_mulcon_matrix`], with the entry
/// for `y^T ↦ y^{T-B}` scaled by the falling factorial `Π T_k! / (T_k-B_k)!`.
///
/// Needs characteristic 0 or greater than `t` so that no factorial vanishes.
pub fn build_diff_matrix<F: Field>(op: &BiForm<F>, r: usize, t: usize) -> Result<MapMatrix<F>> {
    let field = op.field().clone();
    let p = field.characteristic();
    if p != 0 && p <= t as u64 {
        return Err(Error::Precondition(format!(
            "differentiation of degree-{t} forms needs characteristic 0 or > {t}, field has {p}"
        )));
    }
    build_with_weight(op, r, t, |col_y, b, c| {
        let mut w = c.clone();
        for (&tk, &bk) in col_y.entries().iter().zip(b.entries()) {
            for s in (tk - bk + 1)..=tk {
                w = field.mul(&w, &field.from_i64(s as i64));
            }
        }
        w
    })
}

fn build_with_weight<F, W>(sigma: &BiForm<F>, r: usize, t: usize, weight: W) -> Result<MapMatrix<F>>
where
    F: Field,
    W: Fn(&ExponentVector, &ExponentVector, &F::Elem) -> F::Elem,
{
    let (a, b) = sigma.bidegree();
    if t < b {
        return Err(domain!("contraction needs t >= b, got t={t} b={b}"));
    }
    let (m, n) = (sigma.m(), sigma.n());
    let domain = BasisIndexer::dual(m, n, r, t);
    let codomain = BasisIndexer::dual(m, n, r + a, t - b);
    let terms: Vec<_> = sigma.terms().collect();
    let mut triplets = Vec::new();
    for (col, mono) in domain.iter().enumerate() {
        for (term, c) in &terms {
            let Some(rest) = mono.y.checked_sub(&term.y) else {
                continue;
            };
            let x = mono.x.add(&term.x);
            let row = codomain.index_unchecked(&x, &rest);
            triplets.push((row, col, weight(&mono.y, &term.y, c)));
        }
    }
    let out = MapMatrix::from_triplets(sigma.field().clone(), codomain.dim(), domain.dim(), triplets)?;
    Ok(out.with_bases(codomain, domain))
}

/// A point of `P^m × P^n`, stored with each coordinate tuple scaled so that
/// its first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoint<F: Field> {
    x: Vec<F::Elem>,
    y: Vec<F::Elem>,
}

impl<F: Field> QPoint<F> {
    pub fn new(field: &F, x: Vec<F::Elem>, y: Vec<F::Elem>) -> Result<Self> {
        Ok(QPoint {
            x: normalize(field, x, "x")?,
            y: normalize(field, y, "y")?,
        })
    }

    /// The point `([1 : u], [1 : v])` of `P^1 × P^1`.
    pub fn affine(field: &F, u: F::Elem, v: F::Elem) -> Self {
        QPoint {
            x: vec![field.one(), u],
            y: vec![field.one(), v],
        }
    }

    pub fn x(&self) -> &[F::Elem] {
        &self.x
    }

    pub fn y(&self) -> &[F::Elem] {
        &self.y
    }
}

fn normalize<F: Field>(field: &F, coords: Vec<F::Elem>, name: &str) -> Result<Vec<F::Elem>> {
    let Some(lead) = coords.iter().find(|c| !field.is_zero(c)) else {
        return Err(domain!("{name}-coordinates of a point cannot all vanish"));
    };
    let inv = field.inv(lead).expect("nonzero");
    Ok(coords.iter().map(|c| field.mul(c, &inv)).collect())
}

/// Rows are points, columns are the monomials of bidegree `(alpha, beta)` in
/// basis order; each entry is the monomial evaluated at the point. The
/// points impose independent conditions on forms of that bidegree exactly
/// when the matrix has full column rank.
pub fn evaluation_matrix<F: Field>(field: &F, points: &[QPoint<F>], alpha: usize, beta: usize) -> Result<MapMatrix<F>> {
    let (m, n) = match points.first() {
        Some(p) => (p.x.len() - 1, p.y.len() - 1),
        None => (1, 1),
    };
    if points.iter().any(|p| p.x.len() != m + 1 || p.y.len() != n + 1) {
        return Err(domain!("points live in different products of projective spaces"));
    }
    let cols = BasisIndexer::new(m, n, alpha, beta);
    let monos: Vec<_> = cols.iter().collect();
    let mut triplets = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, mono) in monos.iter().enumerate() {
            let mut v = field.one();
            for (c, &e) in p.x.iter().zip(mono.x.entries()) {
                v = field.mul(&v, &field.pow(c, e as u64));
            }
            for (c, &e) in p.y.iter().zip(mono.y.entries()) {
                v = field.mul(&v, &field.pow(c, e as u64));
            }
            triplets.push((i, j, v));
        }
    }
    let out = MapMatrix::from_triplets(field.clone(), points.len(), cols.dim(), triplets)?;
    Ok(out.with_col_basis(cols))
}
