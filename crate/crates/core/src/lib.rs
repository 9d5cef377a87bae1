//! Multiplication–contraction maps on bigraded symmetric tensors, randomized
//! maximal-rank certification, and line-bundle cohomology on curves in
//! `P^1 × P^1`.

pub mod basis;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod form;
pub mod grid;
pub mod grid_curve;
pub mod matrix;
pub mod operator;
pub mod poly;
pub mod rank;
pub mod reduction;
pub mod survey;

pub use basis::{dimension, BasisIndexer, BiMonomial, ExponentVector};
pub use cohomology::{h0_h1, h0_h1_routed, serre_dual, swap_rulings, CohomologyResult, CurveProblem};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, Fp, Rationals, DEFAULT_PRIME, ESCALATION_PRIME};
pub use form::{multiply_biforms, random_biform, BiForm};
pub use grid::{bipartite_graph, construct_z, grid_points_minus, verify_z, BipartiteGraph, Grid, ZCase, ZSubset};
pub use grid_curve::{grid_curve_form, smoothness_certificate};
pub use matrix::MapMatrix;
pub use operator::{build_diff_matrix, build_mulcon_matrix, evaluation_matrix, QPoint};
pub use rank::{
    certify_with_escalation, generic_rank_certificate, rank_certificate_with, Certificate, CertificateParams, Verdict,
};
pub use reduction::{classify, critical_band, decompose, CaseKind, Decomposition, ReductionResult};
