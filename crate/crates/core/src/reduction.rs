//! Routing of an arbitrary twist `(h, k)` on a curve of type `(a, b)` to the
//! critical degree band, and the split of critical twists into two cases.
//!
//! With `g - 1 = ab - a - b`, the band is `ab - a - b - min(a, b) < d <= g - 1`
//! where `d = hb + ka`. Inside the window `h >= a`, `k <= -2` every twist is
//! written `h = α + m a`, `k = β - n b` with `-1 <= α <= a - 2`,
//! `-1 <= β <= b - 2`, and in the band either `m = n` (case A) or
//! `α = β = -1`, `m = n + 1` (case B).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{degree, genus, is_admissible, serre_dual};
use crate::error::{domain, Result};

/// `(lower, upper)`: the band is `lower < d <= upper`.
pub fn critical_band(a: i64, b: i64) -> Result<(i64, i64)> {
    if a < 2 || b < 2 {
        return Err(domain!("the critical band needs a, b >= 2, got ({a}, {b})"));
    }
    let upper = a * b - a - b;
    Ok((upper - a.min(b), upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub alpha: i64,
    pub m: i64,
    pub beta: i64,
    pub n: i64,
}

impl Decomposition {
    /// `(α + m a, β - n b)`.
    pub fn recompose(&self, a: i64, b: i64) -> (i64, i64) {
        (self.alpha + self.m * a, self.beta - self.n * b)
    }
}

pub fn decompose(a: i64, b: i64, h: i64, k: i64) -> Result<Decomposition> {
    if a < 1 || b < 1 {
        return Err(domain!("bidegree must be positive, got ({a}, {b})"));
    }
    if !is_admissible(a, h, k) {
        return Err(domain!("decomposition needs h >= {a} and k <= -2, got ({h}, {k})"));
    }
    let alpha = (h + 1).rem_euclid(a) - 1;
    let beta = (k + 1).rem_euclid(b) - 1;
    Ok(Decomposition {
        alpha,
        m: (h - alpha) / a,
        beta,
        n: (beta - k) / b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Dual,
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CaseKind {
    Trivial,
    CaseA { alpha: i64, beta: i64, m: i64 },
    CaseB { m: i64 },
    NonCritical { direction: Direction },
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseKind::Trivial => write!(f, "trivial"),
            CaseKind::CaseA { alpha, beta, m } => write!(f, "caseA(alpha={alpha},beta={beta},m={m})"),
            CaseKind::CaseB { m } => write!(f, "caseB(m={m})"),
            CaseKind::NonCritical {
                direction: Direction::Dual,
            } => write!(f, "nonCritical(dual)"),
            CaseKind::NonCritical {
                direction: Direction::Growth,
            } => write!(f, "nonCritical(growth)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepOp {
    /// Exchange the rulings: `(a, b, h, k) -> (b, a, k, h)`.
    Swap,
    /// Serre duality: `(h, k) -> (a - 2 - h, b - 2 - k)`.
    Dual,
    /// `h -> h + 1`.
    GrowH,
    /// `k -> k + 1`.
    GrowK,
}

/// One step of the chain together with the state it produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub op: StepOp,
    pub a: i64,
    pub b: i64,
    pub h: i64,
    pub k: i64,
}

type State = (i64, i64, i64, i64);

fn apply(op: StepOp, (a, b, h, k): State) -> State {
    match op {
        StepOp::Swap => (b, a, k, h),
        StepOp::Dual => {
            let (h, k) = serre_dual(a, b, h, k);
            (a, b, h, k)
        }
        StepOp::GrowH => (a, b, h + 1, k),
        StepOp::GrowK => (a, b, h, k + 1),
    }
}

fn undo(op: StepOp, (a, b, h, k): State) -> State {
    match op {
        StepOp::Swap | StepOp::Dual => apply(op, (a, b, h, k)),
        StepOp::GrowH => (a, b, h - 1, k),
        StepOp::GrowK => (a, b, h, k - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub input: (i64, i64, i64, i64),
    #[serde(flatten)]
    pub kind: CaseKind,
    pub chain: Vec<Step>,
    /// `(a, b, h, k)` where the decomposition was taken.
    pub target: Option<(i64, i64, i64, i64)>,
    pub decomposition: Option<Decomposition>,
}

impl ReductionResult {
    /// Rebuilds the input from the decomposition (or the last chain state)
    /// by undoing the chain.
    pub fn replay(&self) -> (i64, i64, i64, i64) {
        let mut state = match (self.target, self.decomposition) {
            (Some((a, b, _, _)), Some(dec)) => {
                let (h, k) = dec.recompose(a, b);
                (a, b, h, k)
            }
            _ => self.chain.last().map(|s| (s.a, s.b, s.h, s.k)).unwrap_or(self.input),
        };
        for step in self.chain.iter().rev() {
            state = undo(step.op, state);
        }
        state
    }

    pub fn is_critical(&self) -> bool {
        matches!(self.kind, CaseKind::CaseA { .. } | CaseKind::CaseB { .. })
    }
}

fn push(op: StepOp, state: &mut State, chain: &mut Vec<Step>) {
    *state = apply(op, *state);
    let (a, b, h, k) = *state;
    chain.push(Step { op, a, b, h, k });
}

fn in_swapped_window(b: i64, h: i64, k: i64) -> bool {
    h <= -2 && k >= b
}

/// Routes `(h, k)` on a curve of type `(a, b)` to the critical band and
/// classifies the result.
///
/// A twist in the mirrored window `h <= -2`, `k >= b` is first moved into
/// the window by a ruling swap. Twists with `d >= g` are replaced by the
/// swapped Serre dual. Twists below the band are raised one unit at a time,
/// choosing the step that adds less to `d` (ties go to `h`) and never
/// leaving the window.
pub fn classify(a: i64, b: i64, h: i64, k: i64) -> ReductionResult {
    let input = (a, b, h, k);
    let mut result = ReductionResult {
        input,
        kind: CaseKind::Trivial,
        chain: Vec::new(),
        target: None,
        decomposition: None,
    };
    if a <= 1 || b <= 1 {
        return result;
    }
    let mut state = input;

    if in_swapped_window(state.1, state.2, state.3) {
        push(StepOp::Swap, &mut state, &mut result.chain);
    }
    let (a, b, h, k) = state;
    let g = genus(a, b);
    let d = degree(a, b, h, k);
    if d >= g {
        push(StepOp::Dual, &mut state, &mut result.chain);
        push(StepOp::Swap, &mut state, &mut result.chain);
    }
    let (a, b, mut h, mut k) = state;
    if !is_admissible(a, h, k) {
        let direction = if d >= g { Direction::Dual } else { Direction::Growth };
        result.kind = CaseKind::NonCritical { direction };
        return result;
    }
    let (lower, upper) = critical_band(a, b).expect("a, b >= 2");
    loop {
        let d = degree(a, b, h, k);
        debug_assert!(d <= upper);
        if d > lower {
            break;
        }
        let grow_k = a < b && k < -2 && d + a <= upper;
        let op = if grow_k { StepOp::GrowK } else { StepOp::GrowH };
        push(op, &mut state, &mut result.chain);
        (_, _, h, k) = state;
    }
    let dec = decompose(a, b, h, k).expect("admissible");
    result.kind = if dec.m == dec.n {
        CaseKind::CaseA {
            alpha: dec.alpha,
            beta: dec.beta,
            m: dec.m,
        }
    } else {
        debug_assert!(dec.alpha == -1 && dec.beta == -1 && dec.m == dec.n + 1);
        CaseKind::CaseB { m: dec.m }
    };
    result.target = Some(state);
    result.decomposition = Some(dec);
    result
}

/// Whether a decomposition falls in one of the two cases.
pub fn satisfies_dichotomy(dec: &Decomposition) -> bool {
    (dec.m == dec.n && dec.alpha >= 0 && dec.beta >= 0) || (dec.m == dec.n + 1 && dec.alpha == -1 && dec.beta == -1)
}
