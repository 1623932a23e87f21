//! Ready-made algebra instances used by the test suites, the benches, and
//! the bundled command line examples.
//!
//! All three share the elementary skew form on the first two group
//! coordinates; they differ in rank, characters, and index ranges.

use crate::algebra::Algebra;
use crate::lattice::{AlgebraSignature, Character, SemigroupSlot, SkewForm};
use crate::rational::{rint, Int};

fn ivec(vals: &[i64]) -> Vec<Int> {
    vals.iter().map(|&v| Int::from(v)).collect()
}

fn char_of(vals: &[i64]) -> Character {
    Character::new(vals.iter().map(|&v| rint(v)).collect())
}

/// Rank five, two pairs, third slot pinned at zero, the rest natural.
pub fn mixed_instance() -> Algebra {
    let sig = AlgebraSignature::new(
        5,
        SkewForm::elementary(5, 0, 1),
        vec![
            char_of(&[0, 0, 1, 0, 0]),
            char_of(&[0, 0, 0, 0, 1]),
            char_of(&[0, 0, 0, 1, 0]),
            char_of(&[0, 0, 0, 0, 0]),
        ],
        vec![
            SemigroupSlot::Nat,
            SemigroupSlot::Nat,
            SemigroupSlot::Point,
            SemigroupSlot::Nat,
        ],
        vec![ivec(&[0, 0, 0, 1, 0])],
        ivec(&[0, 0, 1, 0, 0]),
    )
    .expect("mixed signature is well formed");
    Algebra::new(sig)
}

/// The mixed instance with every index slot opened up to the naturals.
pub fn all_nat_instance() -> Algebra {
    let mut alg = mixed_instance();
    for slot in alg.signature.slots.iter_mut() {
        *slot = SemigroupSlot::Nat;
    }
    alg
}

/// Rank six, two pairs, every index slot pinned at zero.
///
/// With all slots pinned the characters have to do all the separating work,
/// which forces the larger rank. The first character and the pair shift are
/// chosen so that inside the unit box every monomial line off the quotient
/// shift line is hit by a one-term bracket of box monomials: the shift
/// `sigma` satisfies `phi_0(sigma) = -2` with large character steps around
/// it, and `epsilon + sigma_pair` stays within two of the origin in every
/// coordinate.
pub fn all_point_instance() -> Algebra {
    let sig = AlgebraSignature::new(
        6,
        SkewForm::elementary(6, 0, 1),
        vec![
            char_of(&[0, 0, 1, -3, 0, 5]),
            char_of(&[0, 0, 0, 0, 1, 0]),
            char_of(&[0, 0, 0, 1, 0, 0]),
            char_of(&[0, 0, 0, 0, 0, 1]),
        ],
        vec![
            SemigroupSlot::Point,
            SemigroupSlot::Point,
            SemigroupSlot::Point,
            SemigroupSlot::Point,
        ],
        vec![ivec(&[0, 0, 2, -1, 0, -1])],
        ivec(&[0, 0, 1, 0, 0, 0]),
    )
    .expect("all-point signature is well formed");
    Algebra::new(sig)
}

/// Rank two, one pair, zero skew form, natural indices.
///
/// With a single pair and no form the bracket collapses to its twisted
/// first-pair part, giving the smallest carrier on which the twist
/// construction can be compared against the bracket.
pub fn block_instance() -> Algebra {
    let sig = AlgebraSignature::new(
        2,
        SkewForm::zero(2),
        vec![char_of(&[1, 0]), char_of(&[0, 1])],
        vec![SemigroupSlot::Nat, SemigroupSlot::Nat],
        vec![],
        ivec(&[1, 0]),
    )
    .expect("block signature is well formed");
    Algebra::new(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_signature;

    #[test]
    fn bundled_instances_validate() {
        for (name, alg) in [
            ("mixed", mixed_instance()),
            ("all_nat", all_nat_instance()),
            ("all_point", all_point_instance()),
            ("block", block_instance()),
        ] {
            let report = validate_signature(&alg.signature);
            for c in &report.conditions {
                assert!(c.passed, "{name}: {} failed: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn all_point_quotient_shift_stays_in_unit_box() {
        let alg = all_point_instance();
        assert_eq!(alg.signature.sigma_total(), ivec(&[0, 0, 0, -1, 0, -1]));
    }
}
