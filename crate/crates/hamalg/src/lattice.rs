//! Lattice-side data: the group `Z^m`, the skew form, the additive
//! characters, the index semigroup shape, and the hypothesis checks that an
//! algebra signature must satisfy before the bracket is trustworthy.
//!
//! All checks are exact. Failed conditions carry a human-readable witness so
//! a bad configuration can be repaired rather than guessed at.

use crate::hermite::{clear_denominators, integer_kernel, solve_integer, solve_rational};
use crate::rational::{Int, Rational};
use num_traits::Zero;
use thiserror::Error;

/// Structural problems that make a signature unusable before any hypothesis
/// can be checked.
#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("skew form matrix must be square, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("skew form matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("{what} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("signature needs at least one derivation pair")]
    NoPairs,
    #[error("module weights rejected by {name}: {detail}")]
    ModuleWeights { name: &'static str, detail: String },
}

/// Adds two group vectors coordinatewise.
pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Subtracts group vectors coordinatewise.
pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Negates a group vector.
pub fn vec_neg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

/// Renders a group vector as `(a, b, ...)`.
pub fn format_vec(a: &[Int]) -> String {
    let body: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(", "))
}

/// An additive map from the group lattice into the rationals, stored by its
/// values on the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub weights: Vec<Rational>,
}

impl Character {
    pub fn new(weights: Vec<Rational>) -> Self {
        Character { weights }
    }

    pub fn zero(dim: usize) -> Self {
        Character {
            weights: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn eval(&self, v: &[Int]) -> Rational {
        self.weights
            .iter()
            .zip(v)
            .map(|(w, x)| w * Rational::from(x.clone()))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }
}

/// A skew-symmetric bilinear form on the group lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewForm {
    matrix: Vec<Vec<Rational>>,
}

impl SkewForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self, SignatureError> {
        let rows = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rows {
                return Err(SignatureError::NotSquare {
                    rows,
                    cols: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if *v != -matrix[j][i].clone() {
                    return Err(SignatureError::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(SkewForm { matrix })
    }

    /// The zero form on `Z^dim`.
    pub fn zero(dim: usize) -> Self {
        SkewForm {
            matrix: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    /// The elementary form `e_i /\ e_j` on `Z^dim`: `(a, b) -> a_i b_j - a_j b_i`.
    pub fn elementary(dim: usize, i: usize, j: usize) -> Self {
        let mut matrix = vec![vec![Rational::zero(); dim]; dim];
        matrix[i][j] = Rational::from(Int::from(1));
        matrix[j][i] = Rational::from(Int::from(-1));
        SkewForm { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn eval(&self, a: &[Int], b: &[Int]) -> Rational {
        let mut acc = Rational::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            let ai = Rational::from(a[i].clone());
            for (j, w) in row.iter().enumerate() {
                if !w.is_zero() && !b[j].is_zero() {
                    acc += &ai * w * Rational::from(b[j].clone());
                }
            }
        }
        acc
    }

    /// The functional `gamma -> form(gamma, mu)` as a character.
    pub fn pairing_with(&self, mu: &[Int]) -> Character {
        let weights = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(mu)
                    .map(|(w, x)| w * Rational::from(x.clone()))
                    .sum()
            })
            .collect();
        Character::new(weights)
    }

    /// Canonical basis of the radical lattice `{a : form(a, .) = 0}`.
    pub fn radical_basis(&self) -> Vec<Vec<Int>> {
        let cleared = clear_denominators(&self.matrix);
        integer_kernel(&cleared, self.dim())
    }
}

/// Whether an index slot ranges over all of the naturals or is pinned at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupSlot {
    Point,
    Nat,
}

impl SemigroupSlot {
    pub fn admits(self, value: u32) -> bool {
        matches!(self, SemigroupSlot::Nat) || value == 0
    }
}

/// Everything needed to build the algebra: group rank, skew form, one
/// character and one semigroup slot per derivation, the per-pair shift
/// vectors, and the distinguished vector `epsilon`.
///
/// Slots are indexed `0..2n`; the pair `k` couples slots `2k` and `2k + 1`,
/// and for `k >= 1` carries the shift `sigmas[k - 1]`.
#[derive(Debug, Clone)]
pub struct AlgebraSignature {
    pub rank: usize,
    pub phi: SkewForm,
    pub characters: Vec<Character>,
    pub slots: Vec<SemigroupSlot>,
    pub sigmas: Vec<Vec<Int>>,
    pub epsilon: Vec<Int>,
}

impl AlgebraSignature {
    pub fn new(
        rank: usize,
        phi: SkewForm,
        characters: Vec<Character>,
        slots: Vec<SemigroupSlot>,
        sigmas: Vec<Vec<Int>>,
        epsilon: Vec<Int>,
    ) -> Result<Self, SignatureError> {
        if characters.is_empty() || characters.len() % 2 != 0 {
            return Err(SignatureError::NoPairs);
        }
        let pairs = characters.len() / 2;
        if phi.dim() != rank {
            return Err(SignatureError::DimensionMismatch {
                what: "skew form",
                got: phi.dim(),
                expected: rank,
            });
        }
        if slots.len() != characters.len() {
            return Err(SignatureError::DimensionMismatch {
                what: "slot list",
                got: slots.len(),
                expected: characters.len(),
            });
        }
        if sigmas.len() != pairs - 1 {
            return Err(SignatureError::DimensionMismatch {
                what: "shift list",
                got: sigmas.len(),
                expected: pairs - 1,
            });
        }
        for ch in &characters {
            if ch.dim() != rank {
                return Err(SignatureError::DimensionMismatch {
                    what: "character",
                    got: ch.dim(),
                    expected: rank,
                });
            }
        }
        for s in sigmas.iter().chain(std::iter::once(&epsilon)) {
            if s.len() != rank {
                return Err(SignatureError::DimensionMismatch {
                    what: "group vector",
                    got: s.len(),
                    expected: rank,
                });
            }
        }
        Ok(AlgebraSignature {
            rank,
            phi,
            characters,
            slots,
            sigmas,
            epsilon,
        })
    }

    /// Number of derivation pairs `n`.
    pub fn pair_count(&self) -> usize {
        self.characters.len() / 2
    }

    /// Number of index slots `2n`.
    pub fn slot_count(&self) -> usize {
        self.characters.len()
    }

    /// True when every slot is pinned at zero.
    pub fn all_point(&self) -> bool {
        self.slots.iter().all(|s| *s == SemigroupSlot::Point)
    }

    /// The group vector carried by the spectral complement in the all-point
    /// case: the sum of the pair shifts minus twice `epsilon`.
    pub fn sigma_total(&self) -> Vec<Int> {
        let mut acc = vec![Int::zero(); self.rank];
        for s in &self.sigmas {
            acc = vec_add(&acc, s);
        }
        let eps2: Vec<Int> = self.epsilon.iter().map(|x| x * Int::from(2)).collect();
        vec_sub(&acc, &eps2)
    }
}

/// One named hypothesis check with a pass flag and a witness or explanation.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of checking every hypothesis on a signature.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub conditions: Vec<ConditionReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&ConditionReport> {
        self.conditions.iter().filter(|c| !c.passed).collect()
    }
}

fn character_rows(sig: &AlgebraSignature, skip: Option<usize>) -> Vec<Vec<Rational>> {
    sig.characters
        .iter()
        .enumerate()
        .filter(|(p, _)| Some(*p) != skip)
        .map(|(_, ch)| ch.weights.clone())
        .collect()
}

/// Basis of `Rad(phi)` intersected with the kernels of all characters except
/// an optional excluded slot.
fn radical_kernel_basis(sig: &AlgebraSignature, skip: Option<usize>) -> Vec<Vec<Int>> {
    let mut rows = sig.phi.matrix().to_vec();
    rows.extend(character_rows(sig, skip));
    let cleared = clear_denominators(&rows);
    integer_kernel(&cleared, sig.rank)
}

/// Checks every hypothesis the bracket constructions rely on.
///
/// Conditions, in report order:
/// - `slot_support`: each slot has a nonzero character or ranges over the
///   naturals, so no derivation acts by zero on its whole domain.
/// - `radical_separation`: the radical of the form meets the joint character
///   kernel only in zero.
/// - `witness_lines`: for each slot with nonzero character, the radical cut
///   out by the other characters still sees that character.
/// - `shift_membership`: each pair shift lies in the radical and in the
///   kernels of all characters outside its pair.
/// - `shift_support`: a nonzero pair shift is seen by at least one of its
///   pair's characters; pairs whose characters both vanish need a zero shift.
/// - `epsilon_position`: `epsilon` lies in the radical, the first character
///   takes value one on it, and all other characters vanish on it.
pub fn validate_signature(sig: &AlgebraSignature) -> ValidationReport {
    let mut conditions = Vec::new();

    let bad_slots: Vec<usize> = (0..sig.slot_count())
        .filter(|&p| sig.characters[p].is_zero() && sig.slots[p] == SemigroupSlot::Point)
        .collect();
    conditions.push(ConditionReport {
        name: "slot_support",
        passed: bad_slots.is_empty(),
        detail: if bad_slots.is_empty() {
            "every slot has a nonzero character or a natural index range".into()
        } else {
            format!("slots {bad_slots:?} have a zero character and a pinned index")
        },
    });

    let joint = radical_kernel_basis(sig, None);
    conditions.push(ConditionReport {
        name: "radical_separation",
        passed: joint.is_empty(),
        detail: if joint.is_empty() {
            "radical meets the joint character kernel only in zero".into()
        } else {
            format!("nonzero joint vector {}", format_vec(&joint[0]))
        },
    });

    let mut witness_fail = Vec::new();
    let mut witness_detail = Vec::new();
    for q in 0..sig.slot_count() {
        if sig.characters[q].is_zero() {
            continue;
        }
        let line = radical_kernel_basis(sig, Some(q));
        match line.iter().find(|v| !sig.characters[q].eval(v).is_zero()) {
            Some(v) => witness_detail.push(format!("slot {q}: {}", format_vec(v))),
            None => witness_fail.push(q),
        }
    }
    conditions.push(ConditionReport {
        name: "witness_lines",
        passed: witness_fail.is_empty(),
        detail: if witness_fail.is_empty() {
            witness_detail.join("; ")
        } else {
            format!(
                "slots {witness_fail:?} have no radical vector outside their character kernel"
            )
        },
    });

    let mut membership_fail = Vec::new();
    let mut support_fail = Vec::new();
    for (k, sigma) in sig.sigmas.iter().enumerate() {
        let a = 2 * (k + 1);
        let b = a + 1;
        let in_radical = sig
            .phi
            .matrix()
            .iter()
            .all(|row| {
                row.iter()
                    .zip(sigma)
                    .map(|(w, x)| w * Rational::from(x.clone()))
                    .sum::<Rational>()
                    .is_zero()
            });
        let in_kernels = (0..sig.slot_count())
            .filter(|&p| p != a && p != b)
            .all(|p| sig.characters[p].eval(sigma).is_zero());
        if !(in_radical && in_kernels) {
            membership_fail.push(k + 1);
        }
        let nonzero = sigma.iter().any(|x| !x.is_zero());
        let seen = !sig.characters[a].eval(sigma).is_zero()
            || !sig.characters[b].eval(sigma).is_zero();
        if nonzero && !seen {
            support_fail.push(k + 1);
        }
    }
    conditions.push(ConditionReport {
        name: "shift_membership",
        passed: membership_fail.is_empty(),
        detail: if membership_fail.is_empty() {
            "every pair shift lies in the radical and the outside kernels".into()
        } else {
            format!("pairs {membership_fail:?} have shifts outside the required sublattice")
        },
    });
    conditions.push(ConditionReport {
        name: "shift_support",
        passed: support_fail.is_empty(),
        detail: if support_fail.is_empty() {
            "every nonzero pair shift is seen by its own pair".into()
        } else {
            format!("pairs {support_fail:?} have nonzero shifts invisible to their characters")
        },
    });

    let eps = &sig.epsilon;
    let eps_in_radical = sig.phi.pairing_with(eps).is_zero();
    let first_ok = sig.characters[0].eval(eps) == Rational::from(Int::from(1));
    let rest_ok = (1..sig.slot_count()).all(|p| sig.characters[p].eval(eps).is_zero());
    conditions.push(ConditionReport {
        name: "epsilon_position",
        passed: eps_in_radical && first_ok && rest_ok,
        detail: if eps_in_radical && first_ok && rest_ok {
            format!("epsilon = {}", format_vec(eps))
        } else {
            let mut parts = Vec::new();
            if !eps_in_radical {
                parts.push("epsilon is outside the radical".to_string());
            }
            if !first_ok {
                parts.push(format!(
                    "first character takes value {} on epsilon, expected 1",
                    sig.characters[0].eval(eps)
                ));
            }
            if !rest_ok {
                parts.push("a later character is nonzero on epsilon".to_string());
            }
            parts.join("; ")
        },
    });

    ValidationReport { conditions }
}

/// Weight data `(xi, f)` selecting a module: one scalar per slot and one
/// additive map on the group.
#[derive(Debug, Clone)]
pub struct ModuleSignature {
    pub xi: Vec<Rational>,
    pub f: Character,
}

impl ModuleSignature {
    pub fn new(xi: Vec<Rational>, f: Character) -> Self {
        ModuleSignature { xi, f }
    }

    /// The weights that make the module action reproduce the bracket.
    pub fn adjoint(sig: &AlgebraSignature) -> Self {
        let mut xi = vec![Rational::zero(); sig.slot_count()];
        xi[0] = Rational::from(Int::from(1));
        ModuleSignature {
            xi,
            f: Character::zero(sig.rank),
        }
    }
}

/// Checks module weights against a signature.
///
/// Conditions, in report order:
/// - `weight_dimensions`: one scalar per slot and one weight per group
///   coordinate.
/// - `radical_annihilation`: the weight map kills the radical of the form,
///   which the action needs to represent the bracket.
pub fn validate_module_signature(
    sig: &AlgebraSignature,
    module: &ModuleSignature,
) -> ValidationReport {
    let mut conditions = Vec::new();

    let dims_ok = module.xi.len() == sig.slot_count() && module.f.dim() == sig.rank;
    conditions.push(ConditionReport {
        name: "weight_dimensions",
        passed: dims_ok,
        detail: if dims_ok {
            "one scalar per slot, one weight per group coordinate".into()
        } else {
            format!(
                "got {} scalars for {} slots and a weight map on Z^{} instead of Z^{}",
                module.xi.len(),
                sig.slot_count(),
                module.f.dim(),
                sig.rank,
            )
        },
    });

    let violating = if dims_ok {
        sig.phi
            .radical_basis()
            .into_iter()
            .find(|v| !module.f.eval(v).is_zero())
    } else {
        None
    };
    conditions.push(ConditionReport {
        name: "radical_annihilation",
        passed: dims_ok && violating.is_none(),
        detail: match &violating {
            Some(v) => format!("nonzero weight on radical vector {}", format_vec(v)),
            None if dims_ok => "the weight map kills the radical of the form".into(),
            None => "not checked while the dimensions are off".into(),
        },
    });

    ValidationReport { conditions }
}

/// Result of searching for a group vector `mu` with `char_p(mu) = xi_p` for
/// every slot and `phi(., mu) = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuOutcome {
    /// A lattice solution; unique whenever `radical_separation` holds.
    Integral(Vec<Int>),
    /// The system is solvable over the rationals but not over the lattice.
    NonIntegral(Vec<Rational>),
    /// No solution even over the rationals.
    Inconsistent,
}

impl MuOutcome {
    /// True when no lattice vector realizes the weights.
    pub fn predicts_irreducible(&self) -> bool {
        !matches!(self, MuOutcome::Integral(_))
    }
}

/// Solves the weight equations for `mu` exactly, reporting whether the
/// solution is integral, only rational, or absent.
pub fn solve_mu(sig: &AlgebraSignature, module: &ModuleSignature) -> MuOutcome {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (ch, target) in sig.characters.iter().zip(&module.xi) {
        rows.push(ch.weights.clone());
        rhs.push(target.clone());
    }
    // f(gamma) = phi(gamma, mu) for all gamma means the matrix of the form
    // applied to mu must reproduce the weights of f.
    for (row, target) in sig.phi.matrix().iter().zip(&module.f.weights) {
        rows.push(row.clone());
        rhs.push(target.clone());
    }
    let joint: Vec<Vec<Rational>> = rows
        .iter()
        .zip(&rhs)
        .map(|(row, r)| {
            let mut full = row.clone();
            full.push(r.clone());
            full
        })
        .collect();
    let cleared = clear_denominators(&joint);
    let int_rows: Vec<Vec<Int>> = cleared
        .iter()
        .map(|row| row[..sig.rank].to_vec())
        .collect();
    let int_rhs: Vec<Int> = cleared.iter().map(|row| row[sig.rank].clone()).collect();
    if let Some(mu) = solve_integer(&int_rows, &int_rhs) {
        return MuOutcome::Integral(mu);
    }
    match solve_rational(&rows, &rhs) {
        Some(mu) => MuOutcome::NonIntegral(mu),
        None => MuOutcome::Inconsistent,
    }
}
