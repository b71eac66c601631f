//! Walks diagram loops with an adaptive step size, detects strand real-part
//! order changes, and emits local braid monodromies.

use crate::braid::BraidWord;
use crate::curve::{Curve, CurveError};
use crate::numpoly::{ComplexPoly, DEFAULT_ROOT_TOL};
use crate::rbd::{Diagram, DiagramError, DiagramLoop, DEFAULT_DEDUP_TOL};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

/// Relative floor under which the adaptive step signals a failure.
pub const STEP_FLOOR_FACTOR: f64 = 1e-12;
/// Two strand values closer than this are treated as a collision with the curve.
pub const COLLISION_TOL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrackError {
    #[error("step size underflow at x = {x}: loop passes too close to a singular fiber")]
    StepUnderflow { x: Complex64 },
    #[error("strand collision at x = {x}: two strand values coincide")]
    StrandCollision { x: Complex64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Strand positions over one base point x.
#[derive(Debug, Clone)]
pub struct StrandState {
    pub x: Complex64,
    /// values[i] = y_i(x)
    pub values: Vec<Complex64>,
    /// component indices sorted by Re(value) ascending, ties by index
    pub order: Vec<usize>,
}

impl StrandState {
    pub fn at(curve: &Curve, x: Complex64) -> StrandState {
        let values: Vec<Complex64> = curve.components().iter().map(|p| p.eval(x)).collect();
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| {
            (values[a].re, a).partial_cmp(&(values[b].re, b)).unwrap()
        });
        StrandState { x, values, order }
    }
}

/// Per-fiber tracking record.
#[derive(Debug, Clone)]
pub struct MonodromyResult {
    /// `None` marks the loop at infinity.
    pub fiber: Option<Complex64>,
    pub loop_path: DiagramLoop,
    pub word: BraidWord,
}

/// Upper bounds on how far each strand can move over a step of length `eps`
/// in direction `dir` from `b`: eps * Σ_j |a_j| max(|b|, |b + eps dir|)^j,
/// with a_j the coefficients of y_i'.
pub fn step_bound(curve: &Curve, b: Complex64, eps: f64, dir: Complex64) -> Vec<f64> {
    let reach = b.norm().max((b + dir * eps).norm());
    curve
        .components()
        .iter()
        .map(|y| derivative_bound(y, reach) * eps)
        .collect()
}

fn derivative_bound(y: &ComplexPoly, reach: f64) -> f64 {
    let dy = y.derivative();
    dy.coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| a.norm() * reach.powi(j as i32))
        .sum()
}

/// Largest eps in {eps0, eps0/2, ...} whose movement bounds keep every strand
/// pair separated, or `StepUnderflow` below the relative floor.
pub fn choose_step(
    curve: &Curve,
    state: &StrandState,
    eps0: f64,
    dir: Complex64,
) -> Result<f64, TrackError> {
    let floor = STEP_FLOOR_FACTOR * eps0;
    let mut eps = eps0;
    loop {
        let bounds = step_bound(curve, state.x, eps, dir);
        let mut ok = true;
        'pairs: for i in 0..state.values.len() {
            for j in (i + 1)..state.values.len() {
                let sep = (state.values[i] - state.values[j]).norm();
                if bounds[i] + bounds[j] >= sep {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            return Ok(eps);
        }
        eps /= 2.0;
        if eps < floor {
            return Err(TrackError::StepUnderflow { x: state.x });
        }
    }
}

/// Track one loop and return its braid word. `eps0` defaults to 1/16 of the
/// shortest loop edge. Crossings encountered along the traversal compose like
/// functions (first crossing acts first), so the word is read right-to-left
/// along the walk; the returned letters are in that reading order.
pub fn track_loop(
    curve: &Curve,
    loop_path: &DiagramLoop,
    eps0: Option<f64>,
) -> Result<MonodromyResult, TrackError> {
    let n = curve.n();
    let eps0 = eps0.unwrap_or_else(|| loop_path.shortest_edge() / 16.0);
    let floor = STEP_FLOOR_FACTOR * eps0;
    let mut word = BraidWord::identity(n);
    let mut state = StrandState::at(curve, loop_path.vertices[0]);
    check_collision(&state)?;

    for (start, end) in loop_path.edges() {
        let len = (end - start).norm();
        let dir = (end - start) / len;
        let mut s = 0.0f64;
        while s < len {
            let eps = choose_step(curve, &state, eps0, dir)?;
            let mut h = eps.min(len - s);
            loop {
                // land exactly on the corner at the end of the edge
                let (next_s, next_x) = if len - (s + h) <= 1e-15 * len {
                    (len, end)
                } else {
                    (s + h, start + dir * (s + h))
                };
                let next = StrandState::at_resorted(curve, next_x, &state.order);
                check_collision(&next)?;
                match transpositions(&state.order, &next.order) {
                    Swaps::None => {
                        state = next;
                        s = next_s;
                        break;
                    }
                    Swaps::SingleAdjacent(k) => {
                        word.push(signed_letter(&state, k));
                        state = next;
                        s = next_s;
                        break;
                    }
                    Swaps::Multiple => {
                        if h / 2.0 >= floor {
                            h /= 2.0; // retry: one crossing at a time is the common case
                        } else {
                            // exact multi-strand ties (e.g. at cell corners of
                            // symmetric curves) never separate; decompose the
                            // permutation into adjacent swaps instead
                            for letter in adjacent_swap_letters(&state, &next.order) {
                                word.push(letter);
                            }
                            state = next;
                            s = next_s;
                            break;
                        }
                    }
                }
            }
        }
    }
    let letters: Vec<i32> = word.letters().iter().rev().copied().collect();
    let word = BraidWord::new(n, letters);
    let fiber = loop_path.fiber_index.map(|_| Complex64::default());
    Ok(MonodromyResult { fiber, loop_path: loop_path.clone(), word })
}

impl StrandState {
    /// Evaluate at x and sort by real part, keeping the previous relative
    /// order on exact ties ("the order does not change").
    fn at_resorted(curve: &Curve, x: Complex64, prev_order: &[usize]) -> StrandState {
        let values: Vec<Complex64> = curve.components().iter().map(|p| p.eval(x)).collect();
        let mut order = prev_order.to_vec();
        order.sort_by(|&a, &b| values[a].re.partial_cmp(&values[b].re).unwrap());
        StrandState { x, values, order }
    }
}

fn check_collision(state: &StrandState) -> Result<(), TrackError> {
    for i in 0..state.values.len() {
        for j in (i + 1)..state.values.len() {
            if (state.values[i] - state.values[j]).norm() < COLLISION_TOL {
                return Err(TrackError::StrandCollision { x: state.x });
            }
        }
    }
    Ok(())
}

enum Swaps {
    None,
    SingleAdjacent(usize),
    Multiple,
}

/// Classify the difference between two orderings of the same index set.
fn transpositions(old: &[usize], new: &[usize]) -> Swaps {
    let diffs: Vec<usize> = (0..old.len()).filter(|&k| old[k] != new[k]).collect();
    match diffs.as_slice() {
        [] => Swaps::None,
        [k, k1] if *k1 == k + 1 && old[*k] == new[*k1] && old[*k1] == new[*k] => {
            Swaps::SingleAdjacent(*k)
        }
        _ => Swaps::Multiple,
    }
}

/// Decompose the reordering from the pre-step order to `target` into adjacent
/// transpositions (bubble sort), signing each from the pre-step imaginary
/// parts of the two strands swapped. For disjoint swaps this emits the
/// commuting letters in ascending position order; genuinely overlapping swaps
/// (exact multi-strand real-part ties) get an equivalent decomposition.
fn adjacent_swap_letters(pre: &StrandState, target: &[usize]) -> Vec<i32> {
    let mut rank = vec![0usize; target.len()];
    for (p, &id) in target.iter().enumerate() {
        rank[id] = p;
    }
    let mut cur = pre.order.clone();
    let mut letters = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..cur.len().saturating_sub(1) {
            if rank[cur[k]] > rank[cur[k + 1]] {
                let (a, b) = (cur[k], cur[k + 1]);
                let letter = (k + 1) as i32;
                letters.push(if pre.values[a].im < pre.values[b].im { letter } else { -letter });
                cur.swap(k, k + 1);
                changed = true;
            }
        }
    }
    letters
}

/// σ_{k+1} with orientation from the pre-step imaginary parts: counterclockwise
/// (lower strand on the left) gives the positive generator.
fn signed_letter(pre: &StrandState, k: usize) -> i32 {
    let a = pre.order[k];
    let b = pre.order[k + 1];
    let letter = (k + 1) as i32;
    if pre.values[a].im < pre.values[b].im {
        letter
    } else {
        -letter
    }
}

/// Full pipeline: singular fibers, diagram, every finite loop, then infinity.
/// Loops are tracked in parallel; results keep diagram order, infinity last.
pub fn global_monodromy(
    curve: &Curve,
    eps0: Option<f64>,
    tol: f64,
) -> Result<Vec<MonodromyResult>, TrackError> {
    assert!(curve.n() >= 2, "monodromy needs at least two components");
    let fibers = curve.singular_fibers(tol)?;
    let locations: Vec<Complex64> = fibers.iter().map(|f| f.x).collect();
    let diagram = Diagram::build(&locations, DEFAULT_DEDUP_TOL)?;
    let mut loops = diagram.finite_loops();
    loops.push(diagram.loop_infinity());
    let mut results: Vec<MonodromyResult> = loops
        .par_iter()
        .map(|l| track_loop(curve, l, eps0))
        .collect::<Result<_, _>>()?;
    for r in &mut results {
        r.fiber = r.loop_path.fiber_index.map(|k| locations[k]);
    }
    Ok(results)
}

/// `global_monodromy` with default tolerances.
pub fn global_monodromy_default(curve: &Curve) -> Result<Vec<MonodromyResult>, TrackError> {
    global_monodromy(curve, None, DEFAULT_ROOT_TOL)
}
