//! Reports behind the command-line tool: certification scans, cohomology
//! queries, reductions, grid curves and grid subsets. Everything here is a
//! deterministic function of its inputs and seed unless timing is requested.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cohomology::{h0_h1_routed, is_admissible, CohomologyResult};
use crate::error::{domain, Error, Result};
use crate::field::{Field, FieldDescriptor, Fp};
use crate::form::{random_biform, BiForm};
use crate::grid::{construct_z, is_admissible_pair, verify_z, Grid, ZCase};
use crate::grid_curve::{grid_curve_form, smoothness_certificate};
use crate::matrix::MapMatrix;
use crate::operator::build_mulcon_matrix;
use crate::rank::{certify_with_escalation, Certificate, CertificateParams, Verdict};
use crate::reduction::{classify, critical_band, ReductionResult};

pub const TOOL_NAME: &str = "bigrade";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable overriding the default prime of the CLI.
pub const PRIME_ENV: &str = "BIGRADE_PRIME";
/// Seeds tried when searching for a grid curve with a smoothness certificate.
pub const GRID_CURVE_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<C> {
    pub meta: Meta,
    pub cells: Vec<C>,
}

/// Cells that flatten to one CSV row.
pub trait CsvRecord {
    type Row: Serialize;
    fn csv_row(&self) -> Self::Row;
}

impl<C: Serialize + DeserializeOwned> Report<C> {
    fn new<T: Serialize>(command: &str, config: &T, cells: Vec<C>, started: Option<Instant>) -> Self {
        Report {
            meta: Meta {
                tool: TOOL_NAME.into(),
                version: VERSION.into(),
                command: command.into(),
                config: serde_json::to_value(config).expect("config serializes"),
                wall_ms: started.map(elapsed_ms),
            },
            cells,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| domain!("malformed report: {e}"))
    }
}

impl<C: CsvRecord> Report<C> {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for cell in &self.cells {
            w.serialize(cell.csv_row()).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

impl<C: CsvRecord + Serialize + DeserializeOwned> Report<C> {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn timer(timing: bool) -> Option<Instant> {
    timing.then(Instant::now)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit seed for a parameter cell.
pub fn cell_seed(base: u64, cell: &[i64]) -> u64 {
    cell.iter().fold(splitmix64(base), |h, &v| splitmix64(h ^ v as u64))
}

fn field(prime: u64) -> Result<Fp> {
    Fp::new(prime)
}

// ---------------------------------------------------------------- certify

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyCell {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    pub t: usize,
    /// Prime of the decisive attempt.
    pub prime: u64,
    pub seed: u64,
    pub rank: Option<usize>,
    pub target: Option<usize>,
    pub verdict: Option<Verdict>,
    pub attempts: Vec<Certificate>,
    pub error: Option<String>,
    pub ms: Option<u64>,
}

impl CertifyCell {
    pub fn is_certified(&self) -> bool {
        self.verdict == Some(Verdict::Certified)
    }

    /// The form whose matrix decided the verdict.
    pub fn decisive_form(&self) -> Option<BiForm<Fp>> {
        let last = self.attempts.last()?;
        let FieldDescriptor::Prime(p) = last.field else {
            return None;
        };
        let seed = last.witness_seed.or_else(|| last.seeds_tried.last().copied())?;
        Some(random_biform(&Fp::new(p).ok()?, 1, 1, self.a, self.b, seed))
    }

    pub fn decisive_matrix(&self) -> Result<MapMatrix<Fp>> {
        let form = self
            .decisive_form()
            .ok_or_else(|| domain!("cell ({}, {}, {}, {}) has no attempts", self.a, self.b, self.r, self.t))?;
        build_mulcon_matrix(&form, self.r, self.t)
    }
}

#[derive(Debug, Serialize)]
pub struct CertifyRow {
    a: usize,
    b: usize,
    r: usize,
    t: usize,
    prime: u64,
    seed: u64,
    rank: Option<usize>,
    target: Option<usize>,
    verdict: Option<Verdict>,
    ms: Option<u64>,
}

impl CsvRecord for CertifyCell {
    type Row = CertifyRow;
    fn csv_row(&self) -> CertifyRow {
        CertifyRow {
            a: self.a,
            b: self.b,
            r: self.r,
            t: self.t,
            prime: self.prime,
            seed: self.seed,
            rank: self.rank,
            target: self.target,
            verdict: self.verdict,
            ms: self.ms,
        }
    }
}

/// Certifies one cell. The seed is [`cell_seed`] of `(a, b, r, t)`, so the
/// same cell gets the same forms whether run alone or inside a scan.
pub fn certify_cell(a: usize, b: usize, r: usize, t: usize, config: &CertifyConfig, timing: bool) -> CertifyCell {
    let started = timer(timing);
    let seed = cell_seed(config.seed, &[a as i64, b as i64, r as i64, t as i64]);
    let mut cell = CertifyCell {
        a,
        b,
        r,
        t,
        prime: config.prime,
        seed,
        rank: None,
        target: None,
        verdict: None,
        attempts: Vec::new(),
        error: None,
        ms: None,
    };
    match certify_with_escalation(CertificateParams::planar(a, b, r, t), config.prime, config.trials, seed) {
        Ok(attempts) => {
            let last = attempts.last().expect("at least one attempt");
            if let FieldDescriptor::Prime(p) = last.field {
                cell.prime = p;
            }
            cell.rank = Some(last.achieved_rank);
            cell.target = Some(last.target_rank);
            cell.verdict = Some(last.verdict);
            cell.attempts = attempts;
        }
        Err(e) => cell.error = Some(e.to_string()),
    }
    cell.ms = started.map(elapsed_ms);
    cell
}

fn validate_certify(config: &CertifyConfig) -> Result<()> {
    field(config.prime)?;
    if config.trials == 0 {
        return Err(domain!("trials must be at least 1"));
    }
    Ok(())
}

pub fn cmd_certify(
    a: usize,
    b: usize,
    r: usize,
    t: usize,
    config: &CertifyConfig,
    timing: bool,
) -> Result<Report<CertifyCell>> {
    validate_certify(config)?;
    if t < b {
        return Err(domain!("contraction needs t >= b, got t={t} b={b}"));
    }
    let started = timer(timing);
    #[derive(Serialize)]
    struct Echo<'a> {
        a: usize,
        b: usize,
        r: usize,
        t: usize,
        #[serde(flatten)]
        config: &'a CertifyConfig,
    }
    let cell = certify_cell(a, b, r, t, config, timing);
    Ok(Report::new(
        "certify",
        &Echo { a, b, r, t, config },
        vec![cell],
        started,
    ))
}

// ---------------------------------------------------------------- scan

/// A bound of an inclusive range, either absolute or relative to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Abs(i64),
    RelB(i64),
}

impl Bound {
    fn resolve(self, b: i64) -> i64 {
        match self {
            Bound::Abs(v) => v,
            Bound::RelB(off) => b + off,
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || domain!("cannot parse range bound {s:?}");
        if let Some(rest) = s.strip_prefix('b') {
            if rest.is_empty() {
                return Ok(Bound::RelB(0));
            }
            let off: i64 = rest.strip_prefix('+').unwrap_or(rest).parse().map_err(|_| bad())?;
            return Ok(Bound::RelB(off));
        }
        s.parse().map(Bound::Abs).map_err(|_| bad())
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::Abs(v) => write!(f, "{v}"),
            Bound::RelB(0) => write!(f, "b"),
            Bound::RelB(v) if v > 0 => write!(f, "b+{v}"),
            Bound::RelB(v) => write!(f, "b{v}"),
        }
    }
}

/// Inclusive range `LO:HI` (or a single value); `t` ranges may use bounds
/// like `b+2`. `HI < LO` is an empty range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct RangeSpec {
    pub lo: Bound,
    pub hi: Bound,
}

impl RangeSpec {
    pub fn new(lo: i64, hi: i64) -> Self {
        RangeSpec {
            lo: Bound::Abs(lo),
            hi: Bound::Abs(hi),
        }
    }

    pub fn is_relative(&self) -> bool {
        matches!(self.lo, Bound::RelB(_)) || matches!(self.hi, Bound::RelB(_))
    }

    pub fn values(&self, b: i64) -> std::ops::RangeInclusive<i64> {
        self.lo.resolve(b)..=self.hi.resolve(b)
    }
}

impl FromStr for RangeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((lo, hi)) => Ok(RangeSpec {
                lo: lo.parse()?,
                hi: hi.parse()?,
            }),
            None => {
                let v: Bound = s.parse()?;
                Ok(RangeSpec { lo: v, hi: v })
            }
        }
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl From<RangeSpec> for String {
    fn from(r: RangeSpec) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RangeSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parameter ranges for a scan. `r` may be given through `h` (`r = h - a`)
/// and `t` through `k` (`t = b - 2 - k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub a: RangeSpec,
    pub b: RangeSpec,
    pub r: Option<RangeSpec>,
    pub t: Option<RangeSpec>,
    pub h: Option<RangeSpec>,
    pub k: Option<RangeSpec>,
    #[serde(flatten)]
    pub certify: CertifyConfig,
    pub jobs: usize,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        validate_certify(&self.certify)?;
        if self.r.is_some() == self.h.is_some() {
            return Err(domain!("give exactly one of the r and h ranges"));
        }
        if self.t.is_some() == self.k.is_some() {
            return Err(domain!("give exactly one of the t and k ranges"));
        }
        if self.a.is_relative() || self.b.is_relative() || self.r.is_some_and(|r| r.is_relative()) {
            return Err(domain!("only t and k ranges may be relative to b"));
        }
        Ok(())
    }

    /// Cells `(a, b, r, t)` in scan order; cells with negative entries or
    /// `t < b` are skipped.
    pub fn cells(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for a in self.a.values(0) {
            for b in self.b.values(0) {
                if a < 0 || b < 0 {
                    continue;
                }
                let rs: Vec<i64> = match (self.r, self.h) {
                    (Some(r), _) => r.values(b).collect(),
                    (None, Some(h)) => h.values(b).map(|h| h - a).collect(),
                    _ => Vec::new(),
                };
                let ts: Vec<i64> = match (self.t, self.k) {
                    (Some(t), _) => t.values(b).collect(),
                    (None, Some(k)) => k.values(b).map(|k| b - 2 - k).rev().collect(),
                    _ => Vec::new(),
                };
                for &r in &rs {
                    for &t in &ts {
                        if r >= 0 && t >= b {
                            out.push((a as usize, b as usize, r as usize, t as usize));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn cmd_scan(config: &ScanConfig, timing: bool) -> Result<Report<CertifyCell>> {
    config.validate()?;
    let started = timer(timing);
    let cells = config.cells();
    let run = || {
        cells
            .par_iter()
            .map(|&(a, b, r, t)| certify_cell(a, b, r, t, &config.certify, timing))
            .collect::<Vec<_>>()
    };
    let results = if config.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)
    };
    Ok(Report::new("scan", config, results, started))
}

/// 0 when every cell is certified, 2 otherwise.
pub fn certify_exit_code(report: &Report<CertifyCell>) -> i32 {
    if report.cells.iter().all(CertifyCell::is_certified) {
        0
    } else {
        2
    }
}

// ---------------------------------------------------------------- curves

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// Uniformly random coefficients.
    Random,
    /// A curve through an `a × b` grid of points.
    Grid,
    /// `y0 · G` with `G` random: contains a line of the second ruling.
    LineDegenerate,
}

/// A grid curve together with the data that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCurve {
    pub grid: Grid<Fp>,
    pub h_poly: Vec<u64>,
    pub form: BiForm<Fp>,
    pub seed: u64,
    pub smooth_certified: bool,
}

/// Draws grid lines and `h(u)` from seeds `seed, seed + 1, …` until the
/// smoothness certificate passes; the last attempt is returned otherwise.
pub fn make_grid_curve(field: &Fp, a: usize, b: usize, seed: u64) -> Result<GridCurve> {
    let mut last = None;
    for i in 0..GRID_CURVE_ATTEMPTS {
        let s = seed.wrapping_add(i);
        let grid = Grid::random(*field, a, b, s)?;
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(s));
        let mut h_poly: Vec<u64> = (0..a).map(|_| field.random(&mut rng)).collect();
        h_poly.push(field.random_nonzero(&mut rng));
        let form = grid_curve_form(field, a, b, grid.lambda(), grid.mu(), &h_poly)?;
        let smooth = smoothness_certificate(field, a, b, grid.lambda(), grid.mu(), &h_poly)?;
        let curve = GridCurve {
            grid,
            h_poly,
            form,
            seed: s,
            smooth_certified: smooth,
        };
        if smooth {
            return Ok(curve);
        }
        last = Some(curve);
    }
    Ok(last.expect("at least one attempt"))
}

pub fn make_curve(field: &Fp, kind: CurveKind, a: usize, b: usize, seed: u64) -> Result<BiForm<Fp>> {
    match kind {
        CurveKind::Random => Ok(random_biform(field, 1, 1, a, b, seed)),
        CurveKind::Grid => Ok(make_grid_curve(field, a, b, seed)?.form),
        CurveKind::LineDegenerate => {
            if b == 0 {
                return Err(domain!("a line of the second ruling needs b >= 1"));
            }
            let g = random_biform(field, 1, 1, a, b - 1, seed);
            BiForm::linear_y(*field, 1, 1, &[1, 0]).multiply(&g)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyConfig {
    pub a: usize,
    pub b: usize,
    pub h: i64,
    pub k: i64,
    pub curve: CurveKind,
    pub prime: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyCell {
    pub a: usize,
    pub b: usize,
    pub h: i64,
    pub k: i64,
    pub curve: CurveKind,
    pub prime: u64,
    pub seed: u64,
    #[serde(flatten)]
    pub result: CohomologyResult,
    /// `h^0 · h^1 = 0`.
    pub vanishing: bool,
    pub classification: ReductionResult,
    pub ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct CohomologyRow {
    a: usize,
    b: usize,
    h: i64,
    k: i64,
    curve: CurveKind,
    prime: u64,
    seed: u64,
    h0: usize,
    h1: usize,
    d: i64,
    g: i64,
    euler_check: bool,
    vanishing: bool,
    case: String,
    ms: Option<u64>,
}

impl CsvRecord for CohomologyCell {
    type Row = CohomologyRow;
    fn csv_row(&self) -> CohomologyRow {
        CohomologyRow {
            a: self.a,
            b: self.b,
            h: self.h,
            k: self.k,
            curve: self.curve,
            prime: self.prime,
            seed: self.seed,
            h0: self.result.h0,
            h1: self.result.h1,
            d: self.result.d,
            g: self.result.g,
            euler_check: self.result.euler_check,
            vanishing: self.vanishing,
            case: self.classification.kind.to_string(),
            ms: self.ms,
        }
    }
}

/// The curve form of a cohomology query and its (routed) matrix.
pub fn cohomology_matrix(config: &CohomologyConfig) -> Result<MapMatrix<Fp>> {
    let fl = field(config.prime)?;
    let mut form = make_curve(&fl, config.curve, config.a, config.b, config.seed)?;
    let (mut a, mut b, mut h, mut k) = (config.a as i64, config.b as i64, config.h, config.k);
    if !is_admissible(a, h, k) {
        form = form.swap_factors();
        (a, b, h, k) = (b, a, k, h);
    }
    if !is_admissible(a, h, k) {
        return Err(domain!(
            "(h, k) = ({}, {}) is outside both computable windows",
            config.h,
            config.k
        ));
    }
    build_mulcon_matrix(&form, (h - a) as usize, (b - 2 - k) as usize)
}

pub fn cmd_cohomology(config: &CohomologyConfig, timing: bool) -> Result<Report<CohomologyCell>> {
    let started = timer(timing);
    let fl = field(config.prime)?;
    let form = make_curve(&fl, config.curve, config.a, config.b, config.seed)?;
    let result = h0_h1_routed(&form, config.h, config.k)?;
    let cell = CohomologyCell {
        a: config.a,
        b: config.b,
        h: config.h,
        k: config.k,
        curve: config.curve,
        prime: config.prime,
        seed: config.seed,
        vanishing: result.h0 * result.h1 == 0,
        result,
        classification: classify(config.a as i64, config.b as i64, config.h, config.k),
        ms: started.map(elapsed_ms),
    };
    Ok(Report::new("cohomology", config, vec![cell], started))
}

// ---------------------------------------------------------------- reduce

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceCell {
    pub a: i64,
    pub b: i64,
    pub h: i64,
    pub k: i64,
    pub d: i64,
    pub g: i64,
    /// `(lower, upper)` with `lower < d <= upper`; absent when `a` or `b` is 1.
    pub band: Option<(i64, i64)>,
    pub reduction: ReductionResult,
}

#[derive(Debug, Serialize)]
pub struct ReduceRow {
    a: i64,
    b: i64,
    h: i64,
    k: i64,
    d: i64,
    g: i64,
    case: String,
    steps: usize,
    target_h: Option<i64>,
    target_k: Option<i64>,
}

impl CsvRecord for ReduceCell {
    type Row = ReduceRow;
    fn csv_row(&self) -> ReduceRow {
        ReduceRow {
            a: self.a,
            b: self.b,
            h: self.h,
            k: self.k,
            d: self.d,
            g: self.g,
            case: self.reduction.kind.to_string(),
            steps: self.reduction.chain.len(),
            target_h: self.reduction.target.map(|t| t.2),
            target_k: self.reduction.target.map(|t| t.3),
        }
    }
}

pub fn cmd_reduce(a: i64, b: i64, h: i64, k: i64) -> Result<Report<ReduceCell>> {
    if a < 1 || b < 1 {
        return Err(domain!("bidegree must be positive, got ({a}, {b})"));
    }
    #[derive(Serialize)]
    struct Echo {
        a: i64,
        b: i64,
        h: i64,
        k: i64,
    }
    let cell = ReduceCell {
        a,
        b,
        h,
        k,
        d: h * b + k * a,
        g: (a - 1) * (b - 1),
        band: critical_band(a, b).ok(),
        reduction: classify(a, b, h, k),
    };
    Ok(Report::new("reduce", &Echo { a, b, h, k }, vec![cell], None))
}

// ---------------------------------------------------------------- grid-curve

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCurveConfig {
    pub a: usize,
    pub b: usize,
    pub h: Option<i64>,
    pub k: Option<i64>,
    pub prime: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCurveCell {
    pub a: usize,
    pub b: usize,
    pub prime: u64,
    /// Seed of the accepted attempt.
    pub seed: u64,
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    /// Coefficients of `h(u)`, ascending.
    pub h_poly: Vec<u64>,
    pub smooth_certified: bool,
    pub vanishes_on_grid: bool,
    pub num_terms: usize,
    pub twist: Option<(i64, i64)>,
    pub cohomology: Option<CohomologyResult>,
    pub classification: Option<ReductionResult>,
    pub ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct GridCurveRow {
    a: usize,
    b: usize,
    prime: u64,
    seed: u64,
    smooth_certified: bool,
    vanishes_on_grid: bool,
    num_terms: usize,
    h: Option<i64>,
    k: Option<i64>,
    h0: Option<usize>,
    h1: Option<usize>,
    ms: Option<u64>,
}

impl CsvRecord for GridCurveCell {
    type Row = GridCurveRow;
    fn csv_row(&self) -> GridCurveRow {
        GridCurveRow {
            a: self.a,
            b: self.b,
            prime: self.prime,
            seed: self.seed,
            smooth_certified: self.smooth_certified,
            vanishes_on_grid: self.vanishes_on_grid,
            num_terms: self.num_terms,
            h: self.twist.map(|t| t.0),
            k: self.twist.map(|t| t.1),
            h0: self.cohomology.map(|c| c.h0),
            h1: self.cohomology.map(|c| c.h1),
            ms: self.ms,
        }
    }
}

pub fn cmd_grid_curve(config: &GridCurveConfig, timing: bool) -> Result<(Report<GridCurveCell>, GridCurve)> {
    let started = timer(timing);
    let fl = field(config.prime)?;
    let curve = make_grid_curve(&fl, config.a, config.b, config.seed)?;
    let vanishes = curve
        .grid
        .points()
        .iter()
        .all(|p| curve.form.evaluate(p.x(), p.y()).is_ok_and(|v| v == 0));
    let twist = match (config.h, config.k) {
        (Some(h), Some(k)) => Some((h, k)),
        (None, None) => None,
        _ => return Err(domain!("give both h and k, or neither")),
    };
    let cohomology = twist.map(|(h, k)| h0_h1_routed(&curve.form, h, k)).transpose()?;
    let cell = GridCurveCell {
        a: config.a,
        b: config.b,
        prime: config.prime,
        seed: curve.seed,
        lambda: curve.grid.lambda().to_vec(),
        mu: curve.grid.mu().to_vec(),
        h_poly: curve.h_poly.clone(),
        smooth_certified: curve.smooth_certified,
        vanishes_on_grid: vanishes,
        num_terms: curve.form.num_terms(),
        twist,
        cohomology,
        classification: twist.map(|(h, k)| classify(config.a as i64, config.b as i64, h, k)),
        ms: started.map(elapsed_ms),
    };
    Ok((Report::new("grid-curve", config, vec![cell], started), curve))
}

// ---------------------------------------------------------------- verify-z

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyZConfig {
    pub a: usize,
    pub b: usize,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub prime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZCell {
    pub a: usize,
    pub b: usize,
    pub alpha: i64,
    pub beta: i64,
    pub alpha_hat: i64,
    pub beta_hat: i64,
    pub case: ZCase,
    pub size: usize,
    pub indices: Vec<(usize, usize)>,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct ZRow {
    a: usize,
    b: usize,
    alpha: i64,
    beta: i64,
    alpha_hat: i64,
    beta_hat: i64,
    case: ZCase,
    size: usize,
    verified: bool,
}

impl CsvRecord for ZCell {
    type Row = ZRow;
    fn csv_row(&self) -> ZRow {
        ZRow {
            a: self.a,
            b: self.b,
            alpha: self.alpha,
            beta: self.beta,
            alpha_hat: self.alpha_hat,
            beta_hat: self.beta_hat,
            case: self.case,
            size: self.size,
            verified: self.verified,
        }
    }
}

/// Builds and checks `Z` on the standard grid `λ = 1..=a`, `μ = 1..=b`, for
/// the given `(α, β)` or for every admissible pair.
pub fn cmd_verify_z(config: &VerifyZConfig) -> Result<Report<ZCell>> {
    let fl = field(config.prime)?;
    let grid = Grid::standard(fl, config.a, config.b)?;
    let (a, b) = (config.a as i64, config.b as i64);
    let pairs: Vec<(i64, i64)> = match (config.alpha, config.beta) {
        (Some(alpha), Some(beta)) => vec![(alpha, beta)],
        (None, None) => (-1..=a - 2)
            .flat_map(|al| (-1..=b - 2).map(move |be| (al, be)))
            .filter(|&(al, be)| is_admissible_pair(a, b, al, be))
            .collect(),
        _ => return Err(domain!("give both alpha and beta, or neither")),
    };
    let cells = pairs
        .into_iter()
        .map(|(alpha, beta)| {
            let z = construct_z(&grid, alpha, beta)?;
            Ok(ZCell {
                a: config.a,
                b: config.b,
                alpha,
                beta,
                alpha_hat: z.alpha_hat,
                beta_hat: z.beta_hat,
                case: z.case,
                size: z.len(),
                indices: z.indices.iter().copied().collect(),
                verified: verify_z(&z),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new("verify-z", config, cells, None))
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn export_matrix(m: &MapMatrix<Fp>, path: &std::path::Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    m.write_matrix_market(std::io::BufWriter::new(file))
}
