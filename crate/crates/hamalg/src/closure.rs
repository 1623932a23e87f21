//! Finite-window closure probes for simplicity and irreducibility.
//!
//! The group grading set is infinite, so every span computation here runs
//! inside a window: a per-coordinate box on group parts plus a degree cap on
//! multi-indices. A closure run under-approximates the iteration `S_{t+1} =
//! S_t + {probe monomial applied to S_t vectors}` with exact row reduction:
//! each generation applies every probe monomial to the seed, to window
//! monomials newly certified as span members, and, when a generation would
//! otherwise go quiet, to a few of its shortest reduced rows. Every input is
//! an exact span member, so certified memberships hold for the full closure
//! while most long mixed rows are never used as inputs again. Products that
//! leave the declared ambient window abort the run with a resize hint; they
//! are never clipped, so every reported span is exact. A run that certifies
//! its goals early reports `stabilized = false`, and `stabilized = true` is
//! claimed only when the worklist drains after every novel row was explored,
//! which makes it a genuine fixed point within the ambient.

use std::collections::HashMap;
use std::fmt;

use crate::action::ModuleAction;
use crate::algebra::{Algebra, AlgebraElement, BasisIndex, ElementError, QuotientElement};
use crate::lattice::{AlgebraSignature, SemigroupSlot};
use crate::rational::{Int, Rational};
use crate::span::{ColumnSpace, SparseRow, SpanBasis};
use crate::text::render_key;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WindowError {
    #[error("empty interval at group coordinate {coord}")]
    EmptyInterval { coord: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosureError {
    #[error("window has {window} group coordinates but the signature has {rank}")]
    RankMismatch { window: usize, rank: usize },
    #[error("probe window must lie inside the ambient window")]
    ProbeOutsideAmbient,
    #[error("generator must be nonzero")]
    ZeroGenerator,
    #[error(transparent)]
    BadElement(#[from] ElementError),
    #[error("generator term {term} lies outside the ambient window")]
    GeneratorOutsideAmbient { term: String },
    #[error("result term {term} escaped the ambient window; enlarge it to at least {suggested}")]
    AmbientEscape { term: String, suggested: Window },
}

/// A finite truncation: inclusive per-coordinate bounds on group parts and
/// a cap on the total multi-index degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    bounds: Vec<(Int, Int)>,
    degree_cap: u32,
}

impl Window {
    pub fn new(bounds: Vec<(Int, Int)>, degree_cap: u32) -> Result<Self, WindowError> {
        for (coord, (lo, hi)) in bounds.iter().enumerate() {
            if lo > hi {
                return Err(WindowError::EmptyInterval { coord });
            }
        }
        Ok(Window { bounds, degree_cap })
    }

    /// The box [-radius, radius] in every coordinate.
    pub fn symmetric(rank: usize, radius: u32, degree_cap: u32) -> Self {
        let r = Int::from(radius);
        Window {
            bounds: (0..rank).map(|_| (-r.clone(), r.clone())).collect(),
            degree_cap,
        }
    }

    pub fn bounds(&self) -> &[(Int, Int)] {
        &self.bounds
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains_group(&self, group: &[Int]) -> bool {
        group.len() == self.bounds.len()
            && group
                .iter()
                .zip(&self.bounds)
                .all(|(g, (lo, hi))| lo <= g && g <= hi)
    }

    pub fn contains(&self, key: &BasisIndex) -> bool {
        self.contains_group(&key.group) && key.degree() <= self.degree_cap
    }

    pub fn contains_element(&self, el: &AlgebraElement) -> bool {
        el.terms().all(|(k, _)| self.contains(k))
    }

    fn encloses(&self, other: &Window) -> bool {
        self.bounds.len() == other.bounds.len()
            && self.degree_cap >= other.degree_cap
            && self
                .bounds
                .iter()
                .zip(&other.bounds)
                .all(|((lo, hi), (olo, ohi))| lo <= olo && ohi <= hi)
    }

    /// The smallest window containing this one and every term of `el`.
    pub fn hull(&self, el: &AlgebraElement) -> Window {
        let mut bounds = self.bounds.clone();
        let mut cap = self.degree_cap;
        for (k, _) in el.terms() {
            for (coord, g) in k.group.iter().enumerate() {
                if *g < bounds[coord].0 {
                    bounds[coord].0 = g.clone();
                }
                if *g > bounds[coord].1 {
                    bounds[coord].1 = g.clone();
                }
            }
            cap = cap.max(k.degree());
        }
        Window { bounds, degree_cap: cap }
    }

    /// All window monomials compatible with the signature's slot masks, in
    /// canonical lexicographic order on (group, index).
    pub fn monomials(&self, sig: &AlgebraSignature) -> Vec<BasisIndex> {
        let indices = index_vectors(&sig.slots, self.degree_cap);
        let mut out = Vec::new();
        let mut group: Vec<Int> = self.bounds.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            for idx in &indices {
                out.push(BasisIndex::new(group.clone(), idx.clone()));
            }
            // Odometer step: last coordinate fastest keeps lex order.
            let mut pos = self.bounds.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                group[pos] += 1;
                if group[pos] <= self.bounds[pos].1 {
                    break;
                }
                group[pos] = self.bounds[pos].0.clone();
            }
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi)) in self.bounds.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "[{lo},{hi}]")?;
        }
        write!(f, " degree cap {}", self.degree_cap)
    }
}

/// Multi-index vectors of degree at most `cap`, zero at pinned slots, in
/// lexicographic order.
fn index_vectors(slots: &[SemigroupSlot], cap: u32) -> Vec<Vec<u32>> {
    fn fill(slots: &[SemigroupSlot], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == slots.len() {
            out.push(cur.clone());
            return;
        }
        let top = match slots[pos] {
            SemigroupSlot::Point => 0,
            SemigroupSlot::Nat => left,
        };
        for v in 0..=top {
            cur.push(v);
            fill(slots, pos + 1, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    fill(slots, 0, cap, &mut Vec::new(), &mut out);
    out
}

/// Largest absolute coordinate over the signature's shift vectors.
fn max_shift(sig: &AlgebraSignature) -> Int {
    let mut m = Int::from(0);
    for v in sig.sigmas.iter().chain(std::iter::once(&sig.epsilon)) {
        for c in v {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
    }
    m
}

/// Default ambient for a closure run: the probe box enlarged in every
/// direction by the largest shift coordinate times (max_iter + 1), with the
/// degree cap raised by two. Each bracket or action application moves group
/// support by at most one probe coordinate plus one shift vector, so this
/// holds every product the iteration can produce before its cap.
pub fn default_ambient(sig: &AlgebraSignature, probe: &Window, max_iter: u32) -> Window {
    let growth = max_shift(sig) * Int::from(max_iter + 1);
    let bounds = probe
        .bounds
        .iter()
        .map(|(lo, hi)| (lo - &growth, hi + &growth))
        .collect();
    Window {
        bounds,
        degree_cap: probe.degree_cap + 2,
    }
}

/// Tight ambient for the one-pass pairwise bracket span: sums of two probe
/// group parts plus any single shift, and doubled degree cap.
pub fn derived_ambient(sig: &AlgebraSignature, probe: &Window) -> Window {
    let mut shifts: Vec<Vec<Int>> = vec![vec![Int::from(0); sig.rank], sig.epsilon.clone()];
    for s in &sig.sigmas {
        shifts.push(crate::lattice::vec_add(&sig.epsilon, s));
    }
    let bounds = probe
        .bounds
        .iter()
        .enumerate()
        .map(|(i, (lo, hi))| {
            let smin = shifts.iter().map(|s| s[i].clone()).min().expect("shift set nonempty");
            let smax = shifts.iter().map(|s| s[i].clone()).max().expect("shift set nonempty");
            (lo + lo + smin, hi + hi + smax)
        })
        .collect();
    Window {
        bounds,
        degree_cap: probe.degree_cap * 2,
    }
}

/// One entry of a membership certificate: the recorded production, its
/// coefficient in the combination, and the produced element so the identity
/// can be re-checked independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub description: String,
    pub coefficient: Rational,
    pub element: AlgebraElement,
}

/// Outcome of a closure run.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// Worklist generations processed, fully or partially.
    pub iterations: u32,
    /// True when the iteration reached a fixed point within the ambient.
    pub stabilized: bool,
    /// Whether x^{0,0} entered the span.
    pub contains_one: bool,
    /// Rank of the final span.
    pub dimension: usize,
    /// Window basis vectors contained in the span.
    pub covered: usize,
    /// Total window basis vectors tracked for coverage.
    pub window_size: usize,
    /// Expression of x^{0,0} over recorded productions, when it was reached.
    pub certificate: Option<Vec<CertificateTerm>>,
}

impl ClosureReport {
    /// Exact covered fraction; an empty window counts as fully covered.
    pub fn coverage(&self) -> Rational {
        if self.window_size == 0 {
            return Rational::one();
        }
        Rational::new(Int::from(self.covered), Int::from(self.window_size))
    }

    pub fn full_coverage(&self) -> bool {
        self.covered == self.window_size
    }
}

fn check_windows(sig: &AlgebraSignature, probe: &Window, ambient: &Window) -> Result<(), ClosureError> {
    for w in [probe, ambient] {
        if w.rank() != sig.rank {
            return Err(ClosureError::RankMismatch { window: w.rank(), rank: sig.rank });
        }
    }
    if !ambient.encloses(probe) {
        return Err(ClosureError::ProbeOutsideAmbient);
    }
    Ok(())
}

fn first_escape<'a>(ambient: &Window, el: &'a AlgebraElement) -> Option<&'a BasisIndex> {
    el.terms().map(|(k, _)| k).find(|k| !ambient.contains(k))
}

/// How many reduced rows a stalled generation feeds back into the worklist.
const RESCUE_WIDTH: usize = 24;

/// Marks newly reachable window monomials and enqueues each one, once, as a
/// future bracketing input. In a fully back-substituted echelon basis a
/// monomial is in the span exactly when its pivot row has singleton support,
/// so only rows changed by this insertion need a look.
#[allow(clippy::too_many_arguments)]
fn mark_covered(
    basis: &SpanBasis,
    changed: impl IntoIterator<Item = u32>,
    target_of: &HashMap<u32, usize>,
    targets: &[BasisIndex],
    covered: &mut [bool],
    covered_col: &mut [bool],
    covered_count: &mut usize,
    enqueued: &mut [bool],
    worklist: &mut Vec<(String, AlgebraElement)>,
) {
    for pivot in changed {
        if basis.row(pivot).is_some_and(|r| r.len() == 1) {
            if let Some(&t) = target_of.get(&pivot) {
                if !covered[t] {
                    covered[t] = true;
                    covered_col[pivot as usize] = true;
                    *covered_count += 1;
                }
                if !enqueued[t] {
                    enqueued[t] = true;
                    worklist.push((
                        render_key(&targets[t]),
                        AlgebraElement::from_term(targets[t].clone(), Rational::one()),
                    ));
                }
            }
        }
    }
}

/// True when every term's column is already a certified span member, making
/// the element a combination of covered unit vectors and thus redundant.
fn supported_on_covered(columns: &ColumnSpace, covered_col: &[bool], el: &AlgebraElement) -> bool {
    el.terms().all(|(k, _)| {
        columns
            .id(k)
            .is_some_and(|c| covered_col.get(c as usize).copied().unwrap_or(false))
    })
}

#[allow(clippy::too_many_arguments)]
fn run_closure(
    seed: AlgebraElement,
    seed_desc: &str,
    probe_keys: &[BasisIndex],
    targets: &[BasisIndex],
    one_key: &BasisIndex,
    require_one: bool,
    ambient: &Window,
    max_iter: u32,
    mut produce: impl FnMut(&BasisIndex, &AlgebraElement) -> AlgebraElement,
) -> Result<ClosureReport, ClosureError> {
    let mut columns = ColumnSpace::new();
    let target_of: HashMap<u32, usize> = targets
        .iter()
        .enumerate()
        .map(|(t, k)| (columns.intern(k), t))
        .collect();
    let one_col = columns.intern(one_key);
    let mut basis = SpanBasis::new();
    let mut sources: Vec<(String, AlgebraElement)> = Vec::new();
    let mut covered = vec![false; targets.len()];
    let mut covered_col = vec![false; columns.len()];
    let mut covered_count = 0usize;
    let mut enqueued = vec![false; targets.len()];
    let mut worklist: Vec<(String, AlgebraElement)> = Vec::new();

    let row = columns.row_of(&seed);
    let outcome = basis.insert(row, 0).expect("nonzero seed into empty span");
    mark_covered(
        &basis,
        std::iter::once(outcome.pivot).chain(outcome.touched.iter().copied()),
        &target_of,
        targets,
        &mut covered,
        &mut covered_col,
        &mut covered_count,
        &mut enqueued,
        &mut worklist,
    );
    worklist.push((seed_desc.to_string(), seed.clone()));
    sources.push((seed_desc.to_string(), seed));

    let mut iterations = 0u32;
    let mut stabilized = false;
    let mut explored_all = true;
    'outer: loop {
        let goals_met =
            covered_count == targets.len() && (!require_one || basis.contains_column(one_col));
        if worklist.is_empty() {
            stabilized = explored_all;
            break;
        }
        if goals_met || iterations >= max_iter {
            break;
        }
        iterations += 1;
        let generation = std::mem::take(&mut worklist);
        let mut gen_rows: Vec<u32> = Vec::new();
        for (label, el) in &generation {
            for key in probe_keys {
                let out = produce(key, el);
                if out.is_zero() {
                    continue;
                }
                if let Some(term) = first_escape(ambient, &out) {
                    return Err(ClosureError::AmbientEscape {
                        term: render_key(term),
                        suggested: ambient.hull(&out),
                    });
                }
                if supported_on_covered(&columns, &covered_col, &out) {
                    continue;
                }
                let row = columns.row_of(&out);
                let id = sources.len() as u32;
                if let Some(outcome) = basis.insert(row, id) {
                    sources.push((format!("[{}, {label}]", render_key(key)), out));
                    gen_rows.push(outcome.pivot);
                    mark_covered(
                        &basis,
                        std::iter::once(outcome.pivot).chain(outcome.touched.iter().copied()),
                        &target_of,
                        targets,
                        &mut covered,
                        &mut covered_col,
                        &mut covered_count,
                        &mut enqueued,
                        &mut worklist,
                    );
                }
            }
            if covered_count == targets.len() && (!require_one || basis.contains_column(one_col)) {
                break 'outer;
            }
        }
        if !gen_rows.is_empty() {
            if worklist.is_empty() {
                let mut ranked: Vec<(usize, usize)> = gen_rows
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &p)| basis.row(p).map(|r| (r.len(), i)))
                    .collect();
                ranked.sort_unstable();
                for &(_, i) in ranked.iter().take(RESCUE_WIDTH) {
                    let pivot = gen_rows[i];
                    let row = basis.row(pivot).expect("ranked pivot row").to_vec();
                    worklist.push((
                        format!("span vector at {}", render_key(columns.key(pivot))),
                        columns.element_of(&row),
                    ));
                }
                if gen_rows.len() > RESCUE_WIDTH {
                    explored_all = false;
                }
            } else {
                explored_all = false;
            }
        }
    }

    let contains_one = basis.contains_column(one_col);
    let certificate = if contains_one {
        basis
            .express(&vec![(one_col, Rational::one())])
            .map(|combo| {
                combo
                    .into_iter()
                    .map(|(sid, c)| CertificateTerm {
                        description: sources[sid as usize].0.clone(),
                        coefficient: c,
                        element: sources[sid as usize].1.clone(),
                    })
                    .collect()
            })
    } else {
        None
    };
    Ok(ClosureReport {
        iterations,
        stabilized,
        contains_one,
        dimension: basis.rank(),
        covered: covered_count,
        window_size: targets.len(),
        certificate,
    })
}

fn check_seed(
    alg: &Algebra,
    seed: &AlgebraElement,
    ambient: &Window,
) -> Result<(), ClosureError> {
    if seed.is_zero() {
        return Err(ClosureError::ZeroGenerator);
    }
    alg.check_element(seed)?;
    if let Some(term) = first_escape(ambient, seed) {
        return Err(ClosureError::GeneratorOutsideAmbient { term: render_key(term) });
    }
    Ok(())
}

/// Iterated bracket closure of a single quotient-algebra generator against
/// the probe window monomials. Coverage counts the probe monomials with
/// nonzero quotient class; the goal is reaching x^{0,0} plus full coverage.
pub fn ideal_closure(
    alg: &Algebra,
    gen: &QuotientElement,
    probe: &Window,
    ambient: &Window,
    max_iter: u32,
) -> Result<ClosureReport, ClosureError> {
    let sig = &alg.signature;
    check_windows(sig, probe, ambient)?;
    let seed = gen.representative().clone();
    check_seed(alg, &seed, ambient)?;
    let central = alg.central_key();
    let probe_keys: Vec<BasisIndex> = probe
        .monomials(sig)
        .into_iter()
        .filter(|k| *k != central)
        .collect();
    let one_key = BasisIndex::unit(sig.rank, sig.slot_count());
    run_closure(
        seed,
        "generator",
        &probe_keys,
        &probe_keys,
        &one_key,
        true,
        ambient,
        max_iter,
        |key, el| {
            let m = AlgebraElement::from_term(key.clone(), Rational::one());
            alg.bracket_quotient(&alg.project(&m), &alg.project(el))
                .into_representative()
        },
    )
}

/// Iterated action closure of a single module vector under the probe window
/// monomials of the acting algebra. Coverage counts every probe monomial:
/// the module carrier has no central line to drop.
pub fn submodule_closure(
    action: &ModuleAction<'_>,
    gen: &AlgebraElement,
    probe: &Window,
    ambient: &Window,
    max_iter: u32,
) -> Result<ClosureReport, ClosureError> {
    let alg = action.algebra;
    let sig = &alg.signature;
    check_windows(sig, probe, ambient)?;
    check_seed(alg, gen, ambient)?;
    let central = alg.central_key();
    let monomials = probe.monomials(sig);
    let probe_keys: Vec<BasisIndex> = monomials
        .iter()
        .filter(|k| **k != central)
        .cloned()
        .collect();
    let one_key = BasisIndex::unit(sig.rank, sig.slot_count());
    run_closure(
        gen.clone(),
        "vector",
        &probe_keys,
        &monomials,
        &one_key,
        false,
        ambient,
        max_iter,
        |key, el| {
            let m = AlgebraElement::from_term(key.clone(), Rational::one());
            action.act(&m, el)
        },
    )
}

/// The windowed derived span described through its window membership.
pub struct DerivedWindowReport {
    /// Number of window classes contained in the span.
    pub dimension: usize,
    /// Probe monomials with nonzero quotient class, in canonical order.
    pub window: Vec<BasisIndex>,
    /// Window classes not contained in the span.
    pub missing: Vec<BasisIndex>,
}

/// Span of all pairwise quotient brackets of probe monomials, compared
/// against the probe classes. One pass over unordered pairs; products must
/// stay inside the ambient.
///
/// Membership is decided exactly in two stages. A production whose support
/// holds a single uncertified column certifies that column, since the rest
/// can be subtracted off; this propagates to a fixed point by column counts.
/// Modulo the certified columns, a monomial lies in the span exactly when
/// its unit vector lies in the reduced span of the stripped remaining
/// productions, a small exact elimination. Both stages together decide
/// membership for every window class without materializing the full span.
pub fn derived_subalgebra_window(
    alg: &Algebra,
    probe: &Window,
    ambient: &Window,
) -> Result<DerivedWindowReport, ClosureError> {
    let sig = &alg.signature;
    check_windows(sig, probe, ambient)?;
    let central = alg.central_key();
    let window: Vec<BasisIndex> = probe
        .monomials(sig)
        .into_iter()
        .filter(|k| *k != central)
        .collect();
    let classes: Vec<QuotientElement> = window
        .iter()
        .map(|k| alg.project(&AlgebraElement::from_term(k.clone(), Rational::one())))
        .collect();
    let mut columns = ColumnSpace::new();
    let window_cols: Vec<u32> = window.iter().map(|k| columns.intern(k)).collect();
    let mut productions: Vec<SparseRow> = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let out = alg.bracket_quotient(&classes[i], &classes[j]).into_representative();
            if out.is_zero() {
                continue;
            }
            if let Some(term) = first_escape(ambient, &out) {
                return Err(ClosureError::AmbientEscape {
                    term: render_key(term),
                    suggested: ambient.hull(&out),
                });
            }
            productions.push(columns.row_of(&out));
        }
    }

    let mut covered = vec![false; columns.len()];
    let mut by_col: Vec<Vec<u32>> = vec![Vec::new(); columns.len()];
    let mut open: Vec<u32> = Vec::with_capacity(productions.len());
    let mut fresh: Vec<u32> = Vec::new();
    for (p, row) in productions.iter().enumerate() {
        for (c, _) in row {
            by_col[*c as usize].push(p as u32);
        }
        open.push(row.len() as u32);
        if row.len() == 1 && !covered[row[0].0 as usize] {
            covered[row[0].0 as usize] = true;
            fresh.push(row[0].0);
        }
    }
    while let Some(c) = fresh.pop() {
        for &p in &by_col[c as usize] {
            open[p as usize] -= 1;
            if open[p as usize] == 1 {
                let last = productions[p as usize]
                    .iter()
                    .find(|(rc, _)| !covered[*rc as usize]);
                if let Some((rc, _)) = last {
                    covered[*rc as usize] = true;
                    fresh.push(*rc);
                }
            }
        }
    }

    let mut basis = SpanBasis::untracked();
    for (p, row) in productions.iter().enumerate() {
        let stripped: SparseRow = row
            .iter()
            .filter(|(c, _)| !covered[*c as usize])
            .cloned()
            .collect();
        if !stripped.is_empty() {
            basis.insert(stripped, p as u32);
        }
    }

    let missing: Vec<BasisIndex> = window
        .iter()
        .zip(&window_cols)
        .filter(|(_, &c)| !covered[c as usize] && !basis.contains_column(c))
        .map(|(k, _)| k.clone())
        .collect();
    let dimension = window.len() - missing.len();
    Ok(DerivedWindowReport { dimension, window, missing })
}
