//! Sparse bihomogeneous forms in `S^a V ⊗ S^b W`.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::{BasisIndexer, BiMonomial, ExponentVector};
use crate::error::{domain, Result};
use crate::field::Field;
use crate::rank::determinant;

/// A form of bidegree `(a, b)` in `m+1` x-variables and `n+1` y-variables.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BiForm<F: Field> {
    field: F,
    m: usize,
    n: usize,
    bidegree: (usize, usize),
    terms: BTreeMap<BiMonomial, F::Elem>,
}

impl<F: Field> fmt::Debug for BiForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiForm")
            .field("field", &self.field.descriptor())
            .field("bidegree", &self.bidegree)
            .field("terms", &self.terms)
            .finish()
    }
}

impl<F: Field> BiForm<F> {
    pub fn zero(field: F, m: usize, n: usize, a: usize, b: usize) -> Self {
        BiForm {
            field,
            m,
            n,
            bidegree: (a, b),
            terms: BTreeMap::new(),
        }
    }

    /// The constant form `c` of bidegree (0, 0).
    pub fn constant(field: F, m: usize, n: usize, c: F::Elem) -> Self {
        let mut f = Self::zero(field, m, n, 0, 0);
        let mono = BiMonomial {
            x: ExponentVector::zero(m + 1),
            y: ExponentVector::zero(n + 1),
            dual: false,
        };
        f.add_term(mono, c);
        f
    }

    /// Builds a form from `(x exponents, y exponents, coefficient)` triples.
    /// Repeated monomials are summed.
    pub fn from_terms<I>(field: F, m: usize, n: usize, a: usize, b: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Vec<u32>, F::Elem)>,
    {
        let mut f = Self::zero(field, m, n, a, b);
        for (x, y, c) in terms {
            let mono = BiMonomial::new(x, y, false);
            if mono.x.len() != m + 1 || mono.y.len() != n + 1 {
                return Err(domain!("term {mono} does not have {} x / {} y variables", m + 1, n + 1));
            }
            if mono.bidegree() != (a, b) {
                return Err(domain!("term {mono} does not have bidegree ({a}, {b})"));
            }
            f.add_term(mono, c);
        }
        Ok(f)
    }

    /// Same as [`BiForm::from_terms`] with small integer coefficients.
    pub fn from_int_terms(
        field: F,
        m: usize,
        n: usize,
        a: usize,
        b: usize,
        terms: &[(&[u32], &[u32], i64)],
    ) -> Result<Self> {
        let converted: Vec<_> = terms
            .iter()
            .map(|(x, y, c)| (x.to_vec(), y.to_vec(), field.from_i64(*c)))
            .collect();
        Self::from_terms(field, m, n, a, b, converted)
    }

    /// A single linear form `Σ c_i x_i` (bidegree (1,0)).
    pub fn linear_x(field: F, m: usize, n: usize, coeffs: &[F::Elem]) -> Self {
        let mut f = Self::zero(field, m, n, 1, 0);
        for (i, c) in coeffs.iter().enumerate() {
            let mono = BiMonomial {
                x: ExponentVector::pure(m + 1, i, 1),
                y: ExponentVector::zero(n + 1),
                dual: false,
            };
            f.add_term(mono, c.clone());
        }
        f
    }

    /// A single linear form `Σ c_j y_j` (bidegree (0,1)).
    pub fn linear_y(field: F, m: usize, n: usize, coeffs: &[F::Elem]) -> Self {
        let mut f = Self::zero(field, m, n, 0, 1);
        for (j, c) in coeffs.iter().enumerate() {
            let mono = BiMonomial {
                x: ExponentVector::zero(m + 1),
                y: ExponentVector::pure(n + 1, j, 1),
                dual: false,
            };
            f.add_term(mono, c.clone());
        }
        f
    }

    fn add_term(&mut self, mono: BiMonomial, c: F::Elem) {
        let field = &self.field;
        match self.terms.remove(&mono) {
            Some(old) => {
                let s = field.add(&old, &c);
                if !field.is_zero(&s) {
                    self.terms.insert(mono, s);
                }
            }
            None => {
                if !field.is_zero(&c) {
                    self.terms.insert(mono, c);
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.bidegree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiMonomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &[u32], y: &[u32]) -> F::Elem {
        let mono = BiMonomial::new(x.to_vec(), y.to_vec(), false);
        self.terms.get(&mono).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field.check_same(&other.field)?;
        if (self.m, self.n) != (other.m, other.n) {
            return Err(domain!(
                "forms live in different variable sets: ({}, {}) vs ({}, {})",
                self.m,
                self.n,
                other.m,
                other.n
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.bidegree != other.bidegree {
            return Err(domain!(
                "cannot add forms of bidegrees {:?} and {:?}",
                self.bidegree,
                other.bidegree
            ));
        }
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.m, self.n, self.bidegree.0, self.bidegree.1);
        for (mono, v) in &self.terms {
            out.add_term(mono.clone(), self.field.mul(v, c));
        }
        out
    }

    /// Product of forms; bidegrees add.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (a, b) = self.bidegree;
        let (c, d) = other.bidegree;
        let mut out = Self::zero(self.field.clone(), self.m, self.n, a + c, b + d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono = BiMonomial {
                    x: m1.x.add(&m2.x),
                    y: m1.y.add(&m2.y),
                    dual: false,
                };
                out.add_term(mono, self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::constant(self.field.clone(), self.m, self.n, self.field.one());
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Evaluates at explicit coordinate vectors.
    pub fn evaluate(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<F::Elem> {
        if x.len() != self.m + 1 || y.len() != self.n + 1 {
            return Err(domain!("point has wrong number of coordinates"));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in x.iter().zip(mono.x.entries()) {
                v = f.mul(&v, &f.pow(xi, e as u64));
            }
            for (yj, &e) in y.iter().zip(mono.y.entries()) {
                v = f.mul(&v, &f.pow(yj, e as u64));
            }
            acc = f.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Exchanges the roles of the x- and y-variables (the two rulings).
    pub fn swap_factors(&self) -> Self {
        let (a, b) = self.bidegree;
        let mut out = Self::zero(self.field.clone(), self.n, self.m, b, a);
        for (mono, c) in &self.terms {
            let swapped = BiMonomial {
                x: mono.y.clone(),
                y: mono.x.clone(),
                dual: false,
            };
            out.add_term(swapped, c.clone());
        }
        out
    }

    /// Substitutes `x ↦ gv·x` and `y ↦ gw·y`: each `x_i` becomes
    /// `Σ_j gv[i][j] x_j`, likewise for `y`. Both matrices must be invertible.
    pub fn substitute_linear(&self, gv: &[Vec<F::Elem>], gw: &[Vec<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        for (g, size, name) in [(gv, self.m + 1, "gV"), (gw, self.n + 1, "gW")] {
            if g.len() != size || g.iter().any(|row| row.len() != size) {
                return Err(domain!("{name} must be {size}x{size}"));
            }
            if f.is_zero(&determinant(f, g)) {
                return Err(domain!("{name} is singular"));
            }
        }
        let xs: Vec<Self> = gv
            .iter()
            .map(|row| Self::linear_x(f.clone(), self.m, self.n, row))
            .collect();
        let ys: Vec<Self> = gw
            .iter()
            .map(|row| Self::linear_y(f.clone(), self.m, self.n, row))
            .collect();
        let (a, b) = self.bidegree;
        let mut out = Self::zero(f.clone(), self.m, self.n, a, b);
        for (mono, c) in &self.terms {
            let mut piece = Self::constant(f.clone(), self.m, self.n, c.clone());
            for (lin, &e) in xs.iter().zip(mono.x.entries()) {
                piece = piece.multiply(&lin.pow(e as usize)?)?;
            }
            for (lin, &e) in ys.iter().zip(mono.y.entries()) {
                piece = piece.multiply(&lin.pow(e as usize)?)?;
            }
            out = out.add(&piece)?;
        }
        Ok(out)
    }
}

/// A dense form with independent uniform coefficients, deterministic in `seed`.
pub fn random_biform<F: Field>(field: &F, m: usize, n: usize, a: usize, b: usize, seed: u64) -> BiForm<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BiForm::zero(field.clone(), m, n, a, b);
    for mono in BasisIndexer::new(m, n, a, b).iter() {
        let c = field.random(&mut rng);
        out.add_term(mono, c);
    }
    out
}

/// Product of two forms over the same field.
pub fn multiply_biforms<F: Field>(f: &BiForm<F>, g: &BiForm<F>) -> Result<BiForm<F>> {
    f.multiply(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f = f7();
        let a = BiForm::from_int_terms(f, 1, 1, 1, 1, &[(&[1, 0], &[1, 0], 1)]).unwrap();
        let b = BiForm::from_int_terms(f, 1, 1, 1, 1, &[(&[0, 1], &[0, 1], 1)]).unwrap();
        let ab = multiply_biforms(&a, &b).unwrap();
        assert_eq!(ab.bidegree(), (2, 2));
        assert_eq!(ab.num_terms(), 1);
        assert_eq!(ab.coefficient(&[1, 1], &[1, 1]), 1);

        let one = BiForm::constant(f, 1, 1, 1);
        assert_eq!(a.multiply(&one).unwrap(), a);

        // (x1 - x0)(x1 - 2 x0)
        let l1 = BiForm::linear_x(f, 1, 1, &[f.from_i64(-1), 1]);
        let l2 = BiForm::linear_x(f, 1, 1, &[f.from_i64(-2), 1]);
        let q = l1.multiply(&l2).unwrap();
        assert_eq!(q.bidegree(), (2, 0));
        assert_eq!(q.coefficient(&[2, 0], &[0, 0]), 2);
        assert_eq!(q.coefficient(&[1, 1], &[0, 0]), f.from_i64(-3));
        assert_eq!(q.coefficient(&[0, 2], &[0, 0]), 1);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = BiForm::constant(f7(), 1, 1, 1);
        let b = BiForm::constant(Fp::new(11).unwrap(), 1, 1, 1);
        assert!(matches!(a.multiply(&b), Err(crate::Error::FieldMismatch(..))));
    }

    #[test]
    fn bad_terms_are_rejected() {
        let r = BiForm::from_int_terms(f7(), 1, 1, 1, 1, &[(&[2, 0], &[1, 0], 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = f7();
        let a = BiForm::from_int_terms(f, 1, 1, 1, 0, &[(&[1, 0], &[0, 0], 3)]).unwrap();
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn random_is_deterministic() {
        let f = Fp::new(65537).unwrap();
        let a = random_biform(&f, 1, 1, 2, 3, 42);
        let b = random_biform(&f, 1, 1, 2, 3, 42);
        let c = random_biform(&f, 1, 1, 2, 3, 43);
        assert_eq!(a, b);
        assert_ne!(a, c);
        let k = random_biform(&f, 1, 1, 0, 0, 5);
        assert_eq!(k.bidegree(), (0, 0));
        assert!(k.num_terms() <= 1);
    }

    #[test]
    fn substitution() {
        let q = Rationals;
        let sigma = random_biform(&q, 1, 1, 2, 1, 3);
        let id = vec![vec![q.one(), q.zero()], vec![q.zero(), q.one()]];
        assert_eq!(sigma.substitute_linear(&id, &id).unwrap(), sigma);

        let swap = vec![vec![q.zero(), q.one()], vec![q.one(), q.zero()]];
        let twice = sigma
            .substitute_linear(&swap, &id)
            .unwrap()
            .substitute_linear(&swap, &id)
            .unwrap();
        assert_eq!(twice, sigma);

        let singular = vec![vec![q.one(), q.one()], vec![q.one(), q.one()]];
        assert!(sigma.substitute_linear(&singular, &id).is_err());
    }

    #[test]
    fn scaling_x_scales_by_monomial_powers() {
        let f = Fp::new(101).unwrap();
        let sigma = random_biform(&f, 1, 1, 2, 1, 9);
        let c = 5u64;
        let g = vec![vec![c, 0], vec![0, 1]];
        let id = vec![vec![1, 0], vec![0, 1]];
        let s = sigma.substitute_linear(&g, &id).unwrap();
        for (mono, v) in sigma.terms() {
            let e = mono.x.entries()[0] as u64;
            let expected = f.mul(v, &f.pow(&c, e));
            assert_eq!(s.coefficient(mono.x.entries(), mono.y.entries()), expected);
        }
    }

    #[test]
    fn swap_is_involution() {
        let f = Fp::new(65537).unwrap();
        let sigma = random_biform(&f, 1, 2, 2, 3, 1);
        let s = sigma.swap_factors();
        assert_eq!((s.m(), s.n()), (2, 1));
        assert_eq!(s.bidegree(), (3, 2));
        assert_eq!(s.swap_factors(), sigma);
    }
}
