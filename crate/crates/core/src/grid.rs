//! The grid `G = {P_ij}` cut out by `a` lines of one ruling and `b` of the
//! other, balanced bipartite graphs, and subsets `Z ⊂ G` imposing
//! independent conditions in two complementary bidegrees.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::field::Field;
use crate::operator::{evaluation_matrix, QPoint};

/// Points `P_ij = ([1 : λ_i], [1 : μ_j])` for `i < a`, `j < b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<F: Field> {
    field: F,
    lambda: Vec<F::Elem>,
    mu: Vec<F::Elem>,
}

fn all_distinct<F: Field>(values: &[F::Elem]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, x)| values[..i].iter().all(|y| y != x))
}

impl<F: Field> Grid<F> {
    pub fn new(field: F, lambda: Vec<F::Elem>, mu: Vec<F::Elem>) -> Result<Self> {
        if lambda.is_empty() || mu.is_empty() {
            return Err(domain!("a grid needs at least one line in each ruling"));
        }
        if !all_distinct::<F>(&lambda) || !all_distinct::<F>(&mu) {
            return Err(domain!("grid lines must be pairwise distinct"));
        }
        Ok(Grid { field, lambda, mu })
    }

    /// `λ = 1..=a`, `μ = 1..=b`.
    pub fn standard(field: F, a: usize, b: usize) -> Result<Self> {
        let lambda = (1..=a as i64).map(|v| field.from_i64(v)).collect();
        let mu = (1..=b as i64).map(|v| field.from_i64(v)).collect();
        Grid::new(field, lambda, mu)
    }

    /// Distinct nonzero values drawn from a seeded generator.
    pub fn random(field: F, a: usize, b: usize, seed: u64) -> Result<Self> {
        let p = field.characteristic();
        if p != 0 && (p as u128) <= a.max(b) as u128 {
            return Err(domain!("F_{p} has too few nonzero elements for a {a} x {b} grid"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |len: usize| {
            let mut out: Vec<F::Elem> = Vec::with_capacity(len);
            while out.len() < len {
                let x = field.random_nonzero(&mut rng);
                if !out.contains(&x) {
                    out.push(x);
                }
            }
            out
        };
        let lambda = draw(a);
        let mu = draw(b);
        Grid::new(field, lambda, mu)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn a(&self) -> usize {
        self.lambda.len()
    }

    pub fn b(&self) -> usize {
        self.mu.len()
    }

    pub fn lambda(&self) -> &[F::Elem] {
        &self.lambda
    }

    pub fn mu(&self) -> &[F::Elem] {
        &self.mu
    }

    pub fn point(&self, i: usize, j: usize) -> QPoint<F> {
        QPoint::affine(&self.field, self.lambda[i].clone(), self.mu[j].clone())
    }

    /// Row-major: `P_00, P_01, …`.
    pub fn points(&self) -> Vec<QPoint<F>> {
        (0..self.a())
            .flat_map(|i| (0..self.b()).map(move |j| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }
}

/// A bipartite graph on `r` right and `l` left vertices; edges are
/// `(right, left)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub r: usize,
    pub l: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.r];
        for &(i, _) in &self.edges {
            deg[i] += 1;
        }
        deg
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.l];
        for &(_, j) in &self.edges {
            deg[j] += 1;
        }
        deg
    }

    /// Every right degree is `>= ⌊N/r⌋`, every left degree `>= ⌊N/l⌋`, and
    /// no edge repeats.
    pub fn meets_floor_bounds(&self) -> bool {
        let n = self.edges.len();
        let distinct: BTreeSet<_> = self.edges.iter().collect();
        distinct.len() == n
            && self.right_degrees().iter().all(|&d| d >= n / self.r)
            && self.left_degrees().iter().all(|&d| d >= n / self.l)
    }
}

/// Edge `k` joins right vertex `k mod r` to left vertex
/// `(k + ⌊k / lcm(r, l)⌋) mod l`. The first `rl` edges are distinct and both
/// degree sequences of any prefix differ by at most one.
pub fn bipartite_graph(r: usize, l: usize, n: usize) -> Result<BipartiteGraph> {
    if r == 0 || l == 0 || n == 0 || n > r * l {
        return Err(domain!("need 1 <= N <= r*l, got r={r} l={l} N={n}"));
    }
    let period = r.lcm(&l);
    let edges = (0..n).map(|k| (k % r, (k + k / period) % l)).collect();
    Ok(BipartiteGraph { r, l, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZCase {
    /// `α̂ >= α`, `β̂ >= β`: the full subgrid.
    Subgrid,
    /// `α̂ >= α`, `β > β̂`: a balanced graph between x-lines and y-lines.
    Graph,
    /// `α > α̂`, `β̂ >= β`: the previous case with the rulings exchanged.
    SwappedGraph,
    /// Built by hand.
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZSubset<F: Field> {
    pub grid: Grid<F>,
    pub indices: BTreeSet<(usize, usize)>,
    pub alpha: i64,
    pub beta: i64,
    pub alpha_hat: i64,
    pub beta_hat: i64,
    pub case: ZCase,
}

impl<F: Field> ZSubset<F> {
    /// A subset given by explicit grid indices, with `α̂ = a-2-α`,
    /// `β̂ = b-2-β`.
    pub fn from_indices(grid: Grid<F>, alpha: i64, beta: i64, indices: BTreeSet<(usize, usize)>) -> Result<Self> {
        if indices.iter().any(|&(i, j)| i >= grid.a() || j >= grid.b()) {
            return Err(domain!("index outside the {} x {} grid", grid.a(), grid.b()));
        }
        Ok(ZSubset {
            alpha_hat: grid.a() as i64 - 2 - alpha,
            beta_hat: grid.b() as i64 - 2 - beta,
            grid,
            indices,
            alpha,
            beta,
            case: ZCase::Custom,
        })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn points(&self) -> Vec<QPoint<F>> {
        self.indices.iter().map(|&(i, j)| self.grid.point(i, j)).collect()
    }
}

pub fn is_admissible_pair(a: i64, b: i64, alpha: i64, beta: i64) -> bool {
    let (ah, bh) = (a - 2 - alpha, b - 2 - beta);
    (-1..=a - 2).contains(&alpha) && (-1..=b - 2).contains(&beta) && (alpha + 1) * (beta + 1) <= (ah + 1) * (bh + 1)
}

/// A subset of `grid` with `(α̂+1)(β̂+1)` points on which no nonzero form of
/// bidegree `(α, β)` or `(α̂, β̂)` vanishes.
pub fn construct_z<F: Field>(grid: &Grid<F>, alpha: i64, beta: i64) -> Result<ZSubset<F>> {
    let (a, b) = (grid.a() as i64, grid.b() as i64);
    if !is_admissible_pair(a, b, alpha, beta) {
        return Err(domain!(
            "(alpha, beta) = ({alpha}, {beta}) is not admissible for a {a} x {b} grid"
        ));
    }
    let (ah, bh) = (a - 2 - alpha, b - 2 - beta);
    let n = ((ah + 1) * (bh + 1)) as usize;
    let (indices, case): (BTreeSet<_>, _) = if ah >= alpha && bh >= beta {
        let idx = (0..=ah as usize)
            .flat_map(|i| (0..=bh as usize).map(move |j| (i, j)))
            .collect();
        (idx, ZCase::Subgrid)
    } else if ah >= alpha {
        let g = bipartite_graph((ah + 1) as usize, (beta + 1) as usize, n)?;
        (g.edges.into_iter().collect(), ZCase::Graph)
    } else {
        let g = bipartite_graph((bh + 1) as usize, (alpha + 1) as usize, n)?;
        (g.edges.into_iter().map(|(j, i)| (i, j)).collect(), ZCase::SwappedGraph)
    };
    debug_assert_eq!(indices.len(), n);
    Ok(ZSubset {
        grid: grid.clone(),
        indices,
        alpha,
        beta,
        alpha_hat: ah,
        beta_hat: bh,
        case,
    })
}

fn imposes_independent<F: Field>(field: &F, points: &[QPoint<F>], alpha: i64, beta: i64) -> Result<bool> {
    if alpha < 0 || beta < 0 {
        return Ok(true);
    }
    let dim = ((alpha + 1) * (beta + 1)) as usize;
    if points.is_empty() {
        return Ok(false);
    }
    let e = evaluation_matrix(field, points, alpha as usize, beta as usize)?;
    Ok(e.rank() == dim)
}

/// Both evaluation matrices, at `(α, β)` and at `(α̂, β̂)`, have full column
/// rank. A negative degree makes its condition vacuous.
pub fn verify_z<F: Field>(z: &ZSubset<F>) -> bool {
    let pts = z.points();
    let field = z.grid.field();
    imposes_independent(field, &pts, z.alpha, z.beta).unwrap_or(false)
        && imposes_independent(field, &pts, z.alpha_hat, z.beta_hat).unwrap_or(false)
}

/// The points of `grid` outside `z`, row-major.
pub fn grid_points_minus<F: Field>(grid: &Grid<F>, z: &ZSubset<F>) -> Result<Vec<QPoint<F>>> {
    if &z.grid != grid {
        return Err(domain!("the subset belongs to a different grid"));
    }
    Ok((0..grid.a())
        .flat_map(|i| (0..grid.b()).map(move |j| (i, j)))
        .filter(|ij| !z.indices.contains(ij))
        .map(|(i, j)| grid.point(i, j))
        .collect())
}
