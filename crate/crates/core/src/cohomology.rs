//! Cohomology of line bundles `O_C(h, k)` on a curve `C = {F = 0}` of type
//! `(a, b)` in `P^1 × P^1`.
//!
//! For `h >= a` and `k <= -2` the sequence `0 → O_Q(h-a, k-b) → O_Q(h, k) →
//! O_C(h, k) → 0` identifies `H^0 O_C(h, k)` with the kernel and
//! `H^1 O_C(h, k)` with the cokernel of multiplication by `F` on `H^1`,
//! which is the multiplication–contraction map with `r = h - a`,
//! `t = b - 2 - k`. Other `(h, k)` are reached through Serre duality
//! (`ω_C = O_C(a-2, b-2)`) and the swap of the two rulings.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::field::Field;
use crate::form::BiForm;
use crate::operator::build_mulcon_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub h0: usize,
    pub h1: usize,
    /// Degree of `O_C(h, k)`.
    pub d: i64,
    /// Arithmetic genus of `C`.
    pub g: i64,
    pub euler_check: bool,
}

pub fn genus(a: i64, b: i64) -> i64 {
    (a - 1) * (b - 1)
}

pub fn degree(a: i64, b: i64, h: i64, k: i64) -> i64 {
    h * b + k * a
}

/// `(a-2-h, b-2-k)`.
pub fn serre_dual(a: i64, b: i64, h: i64, k: i64) -> (i64, i64) {
    (a - 2 - h, b - 2 - k)
}

/// Whether `(h, k)` lies in the window where the kernel/cokernel
/// identification applies directly.
pub fn is_admissible(a: i64, h: i64, k: i64) -> bool {
    h >= a && k <= -2
}

/// A curve together with a twist `(h, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveProblem<F: Field> {
    pub form: BiForm<F>,
    pub h: i64,
    pub k: i64,
}

impl<F: Field> CurveProblem<F> {
    pub fn new(form: BiForm<F>, h: i64, k: i64) -> Self {
        CurveProblem { form, h, k }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        let (a, b) = self.form.bidegree();
        (a as i64, b as i64)
    }

    /// The same problem seen through the automorphism exchanging the rulings.
    pub fn swap_rulings(&self) -> Self {
        CurveProblem {
            form: self.form.swap_factors(),
            h: self.k,
            k: self.h,
        }
    }

    /// Twist by `ω_C ⊗ O_C(-h, -k)`; exchanges `h^0` and `h^1`.
    pub fn serre_dual(&self) -> Self {
        let (a, b) = self.bidegree();
        let (h, k) = serre_dual(a, b, self.h, self.k);
        CurveProblem {
            form: self.form.clone(),
            h,
            k,
        }
    }

    pub fn cohomology(&self) -> Result<CohomologyResult> {
        h0_h1(&self.form, self.h, self.k)
    }
}

/// Swaps `(a, b)`, `(h, k)` and the variables of `F`.
pub fn swap_rulings<F: Field>(problem: &CurveProblem<F>) -> CurveProblem<F> {
    problem.swap_rulings()
}

/// `h^0` and `h^1` of `O_C(h, k)` for `h >= a`, `k <= -2`.
pub fn h0_h1<F: Field>(form: &BiForm<F>, h: i64, k: i64) -> Result<CohomologyResult> {
    if form.m() != 1 || form.n() != 1 {
        return Err(domain!("curve cohomology is defined on P^1 x P^1 only"));
    }
    if form.is_zero() {
        return Err(domain!("the zero form does not define a curve"));
    }
    let (a, b) = form.bidegree();
    let (a, b) = (a as i64, b as i64);
    if a < 1 || b < 1 {
        return Err(domain!("curves need bidegree >= (1, 1), got ({a}, {b})"));
    }
    if !is_admissible(a, h, k) {
        return Err(domain!(
            "(h, k) = ({h}, {k}) is outside h >= {a}, k <= -2; apply serre_dual and/or swap_rulings first"
        ));
    }
    let r = (h - a) as usize;
    let t = (b - 2 - k) as usize;
    let mat = build_mulcon_matrix(form, r, t)?;
    debug_assert_eq!(mat.ncols() as i64, (h - a + 1) * (b - 1 - k));
    debug_assert_eq!(mat.nrows() as i64, (h + 1) * (-k - 1));
    let rank = mat.rank();
    let h0 = mat.ncols() - rank;
    let h1 = mat.nrows() - rank;
    let d = degree(a, b, h, k);
    let g = genus(a, b);
    let euler_check = h0 as i64 - h1 as i64 == d + 1 - g;
    assert!(euler_check, "Euler characteristic mismatch at ({a},{b},{h},{k})");
    Ok(CohomologyResult {
        h0,
        h1,
        d,
        g,
        euler_check,
    })
}

/// Like [`h0_h1`], but also accepts the mirrored window `h <= -2`, `k >= b`
/// by exchanging the rulings first.
pub fn h0_h1_routed<F: Field>(form: &BiForm<F>, h: i64, k: i64) -> Result<CohomologyResult> {
    let (a, b) = form.bidegree();
    if is_admissible(a as i64, h, k) {
        h0_h1(form, h, k)
    } else if h <= -2 && k >= b as i64 {
        h0_h1(&form.swap_factors(), k, h)
    } else {
        Err(domain!(
            "(h, k) = ({h}, {k}) lies in neither h >= {a}, k <= -2 nor h <= -2, k >= {b}"
        ))
    }
}

/// `h^1 O_C(h, k)` computed as `h^0` of the swapped Serre-dual problem.
pub fn h1_via_duality<F: Field>(form: &BiForm<F>, h: i64, k: i64) -> Result<usize> {
    let dual = CurveProblem::new(form.clone(), h, k).serre_dual().swap_rulings();
    Ok(dual.cohomology()?.h0)
}

/// `h^0 · h^1 = 0` at `(h, k)`.
pub fn has_maximal_rank_cohomology<F: Field>(form: &BiForm<F>, h: i64, k: i64) -> Result<bool> {
    let res = h0_h1(form, h, k)?;
    Ok(res.h0 * res.h1 == 0)
}
