//! Sparse exact matrices with optional labelled bases.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use crate::basis::BasisIndexer;
use crate::error::{domain, Result};
use crate::field::Field;

/// A linear map as a sparse matrix: columns index the domain, rows the
/// codomain. Entries are kept sorted by `(row, col)` with no explicit zeros.
#[derive(Clone, PartialEq)]
pub struct MapMatrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    row_basis: Option<BasisIndexer>,
    col_basis: Option<BasisIndexer>,
    entries: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> fmt::Debug for MapMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapMatrix")
            .field("field", &self.field.descriptor())
            .field("shape", &(self.nrows, self.ncols))
            .field("entries", &self.entries)
            .finish()
    }
}

impl<F: Field> MapMatrix<F> {
    /// Builds a matrix from triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets<I>(field: F, nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut acc: BTreeMap<(usize, usize), F::Elem> = BTreeMap::new();
        for (i, j, v) in triplets {
            if i >= nrows || j >= ncols {
                return Err(domain!("entry ({i}, {j}) outside {nrows}x{ncols} matrix"));
            }
            match acc.get_mut(&(i, j)) {
                Some(old) => *old = field.add(old, &v),
                None => {
                    acc.insert((i, j), v);
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|((i, j), v)| (i, j, v))
            .collect();
        Ok(MapMatrix {
            field,
            nrows,
            ncols,
            row_basis: None,
            col_basis: None,
            entries,
        })
    }

    pub fn from_dense(field: F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(domain!("ragged dense matrix"));
        }
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(field, nrows, ncols, triplets)
    }

    pub fn zeros(field: F, nrows: usize, ncols: usize) -> Self {
        MapMatrix {
            field,
            nrows,
            ncols,
            row_basis: None,
            col_basis: None,
            entries: Vec::new(),
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        Self::from_triplets(field, n, n, (0..n).map(|i| (i, i, one.clone()))).expect("diagonal entries are in range")
    }

    pub(crate) fn with_bases(mut self, rows: BasisIndexer, cols: BasisIndexer) -> Self {
        debug_assert_eq!(rows.dim(), self.nrows);
        debug_assert_eq!(cols.dim(), self.ncols);
        self.row_basis = Some(rows);
        self.col_basis = Some(cols);
        self
    }

    pub(crate) fn with_col_basis(mut self, cols: BasisIndexer) -> Self {
        debug_assert_eq!(cols.dim(), self.ncols);
        self.col_basis = Some(cols);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, F::Elem)] {
        &self.entries
    }

    pub fn row_basis(&self) -> Option<&BasisIndexer> {
        self.row_basis.as_ref()
    }

    pub fn col_basis(&self) -> Option<&BasisIndexer> {
        self.col_basis.as_ref()
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.entries.binary_search_by(|(r, c, _)| (*r, *c).cmp(&(i, j))) {
            Ok(pos) => self.entries[pos].2.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.ncols]; self.nrows];
        for (i, j, v) in &self.entries {
            out[*i][*j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(i, j, v)| (*j, *i, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        MapMatrix {
            field: self.field.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            row_basis: self.col_basis,
            col_basis: self.row_basis,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        if self.shape() != other.shape() {
            return Err(domain!("shape mismatch {:?} vs {:?}", self.shape(), other.shape()));
        }
        let mut out = Self::from_triplets(
            self.field.clone(),
            self.nrows,
            self.ncols,
            self.entries.iter().chain(&other.entries).cloned(),
        )?;
        out.row_basis = self.row_basis;
        out.col_basis = self.col_basis;
        Ok(out)
    }

    /// Matrix product `self · other`, i.e. the composite map "other, then self".
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        if self.ncols != other.nrows {
            return Err(domain!("cannot compose {:?} after {:?}", self.shape(), other.shape()));
        }
        let f = &self.field;
        let mut by_row: Vec<Vec<(usize, &F::Elem)>> = vec![Vec::new(); other.nrows];
        for (k, j, v) in &other.entries {
            by_row[*k].push((*j, v));
        }
        let triplets = self
            .entries
            .iter()
            .flat_map(|(i, k, a)| by_row[*k].iter().map(move |(j, b)| (*i, *j, f.mul(a, b))));
        let mut out = Self::from_triplets(f.clone(), self.nrows, other.ncols, triplets)?;
        out.row_basis = self.row_basis;
        out.col_basis = other.col_basis;
        Ok(out)
    }

    /// Writes the matrix in the coordinate text format
    /// (`%%MatrixMarket matrix coordinate integer general`, 1-based indices).
    /// Prime-field entries are written as residues in `[0, p)`.
    pub fn write_matrix_market<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate integer general")?;
        writeln!(w, "% field {}", self.field.descriptor())?;
        writeln!(w, "{} {} {}", self.nrows, self.ncols, self.entries.len())?;
        for (i, j, v) in &self.entries {
            let int = self
                .field
                .to_integer(v)
                .ok_or_else(|| domain!("entry ({i}, {j}) is not integral; cannot export"))?;
            writeln!(w, "{} {} {}", i + 1, j + 1, int)?;
        }
        Ok(())
    }

    pub fn to_matrix_market(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_matrix_market(&mut buf)?;
        Ok(String::from_utf8(buf).expect("ascii output"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Fp, Rationals};

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let f = Fp::new(5).unwrap();
        let m = MapMatrix::from_triplets(f, 2, 2, [(0, 0, 2), (0, 0, 3), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 1);
        assert!(MapMatrix::from_triplets(f, 2, 2, [(2, 0, 1)]).is_err());
    }

    #[test]
    fn compose_matches_dense_product() {
        let f = Fp::new(101).unwrap();
        let a = MapMatrix::from_dense(f, &[vec![1, 2, 0], vec![0, 1, 3]]).unwrap();
        let b = MapMatrix::from_dense(f, &[vec![1, 0], vec![4, 1], vec![0, 5]]).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.to_dense(), vec![vec![9, 2], vec![4, 16]]);
        assert!(b.compose(&b).is_err());
    }

    #[test]
    fn matrix_market_text() {
        let f = Fp::new(7).unwrap();
        let m = MapMatrix::from_dense(f, &[vec![1, 0], vec![0, 6]]).unwrap();
        let text = m.to_matrix_market().unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "%%MatrixMarket matrix coordinate integer general");
        assert_eq!(lines[2], "2 2 2");
        assert_eq!(lines[3], "1 1 1");
        assert_eq!(lines[4], "2 2 6");

        let q = Rationals;
        let frac = MapMatrix::from_dense(q, &[vec![ratio(1, 2)]]).unwrap();
        assert!(frac.to_matrix_market().is_err());
    }
}
