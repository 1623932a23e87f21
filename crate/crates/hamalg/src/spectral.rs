//! Exact separation of generalized eigencomponents.
//!
//! Works for operators that act on each basis monomial as its own scalar
//! plus terms sharing that scalar, the shape the distinguished derivations
//! take. Separation then reduces to grouping terms by diagonal value, and
//! the classical fact that eigencomponents of a vector in an invariant
//! subspace lie in that subspace individually becomes a checkable assertion.

use std::collections::BTreeMap;

use crate::algebra::AlgebraElement;
use crate::rational::{format_rational, rint, Rational};
use crate::span::ReducedSpan;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EigenError {
    #[error("operator mixes diagonal values {a} and {b} on one monomial's image")]
    NotBlockTriangular { a: String, b: String },
    #[error("an eigencomponent left the subspace; it is not invariant under the operator")]
    ComponentOutsideSubspace,
}

/// Splits `element` into generalized eigencomponents of `t`, returned in
/// ascending eigenvalue order. The diagonal value of a monomial is the
/// coefficient of that monomial in its own image; every other image term
/// must carry the same diagonal value, else the grouping is unsound and an
/// error is returned. When `subspace` is given and contains `element`, each
/// component is checked to lie in it as well.
pub fn eigen_separate(
    mut t: impl FnMut(&AlgebraElement) -> AlgebraElement,
    subspace: Option<&ReducedSpan>,
    element: &AlgebraElement,
) -> Result<Vec<AlgebraElement>, EigenError> {
    let mut diagonal = BTreeMap::new();
    let mut lambda_of = |t: &mut dyn FnMut(&AlgebraElement) -> AlgebraElement,
                         key: &crate::algebra::BasisIndex|
     -> Rational {
        if let Some(v) = diagonal.get(key) {
            return Clone::clone(v);
        }
        let image = t(&AlgebraElement::from_term(key.clone(), rint(1)));
        let v = image.coeff(key);
        diagonal.insert(key.clone(), v.clone());
        v
    };

    let mut parts: BTreeMap<Rational, AlgebraElement> = BTreeMap::new();
    for (key, coeff) in element.terms() {
        let lambda = lambda_of(&mut t, key);
        // The image of this monomial must stay inside the same diagonal
        // block, otherwise grouping by diagonal value proves nothing.
        let image = t(&AlgebraElement::from_term(key.clone(), rint(1)));
        for (ik, _) in image.terms() {
            let il = lambda_of(&mut t, ik);
            if il != lambda {
                return Err(EigenError::NotBlockTriangular {
                    a: format_rational(&lambda),
                    b: format_rational(&il),
                });
            }
        }
        parts
            .entry(lambda)
            .or_insert_with(AlgebraElement::zero)
            .add_term(key.clone(), coeff.clone());
    }

    let components: Vec<AlgebraElement> = parts.into_values().collect();
    if let Some(span) = subspace {
        if span.contains(element) {
            for c in &components {
                if !span.contains(c) {
                    return Err(EigenError::ComponentOutsideSubspace);
                }
            }
        }
    }
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{multiply, AlgebraElement, BasisIndex};
    use crate::instances::mixed_instance;
    use crate::rational::{rint, Int};
    use crate::span::rref_exact;

    fn mono(group: &[i64], index: &[u32]) -> AlgebraElement {
        AlgebraElement::from_term(
            BasisIndex::new(group.iter().map(|&g| Int::from(g)).collect(), index.to_vec()),
            rint(1),
        )
    }

    #[test]
    fn splits_by_eigenvalue_and_checks_membership() {
        let alg = mixed_instance();
        let one = alg.one();
        let u = mono(&[0, 0, 0, 0, 1], &[0, 0, 0, 0]).add(&mono(&[1, 0, 0, 0, 0], &[0, 0, 0, 0]));
        let ambient: Vec<BasisIndex> = u.terms().map(|(k, _)| k.clone()).collect();
        let span = rref_exact(&[u.clone()], &ambient).unwrap();
        // The sum is in the span; the lemma promises nothing for a span that
        // is not invariant, so separate without the subspace first.
        let parts = eigen_separate(|v| alg.bracket(&one, v), None, &u).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], mono(&[1, 0, 0, 0, 0], &[0, 0, 0, 0]));
        assert_eq!(parts[1], mono(&[0, 0, 0, 0, 1], &[0, 0, 0, 0]));
        assert_eq!(parts[0].add(&parts[1]), u);
        // That one-dimensional span is not invariant, and the assertion
        // notices.
        let err = eigen_separate(|v| alg.bracket(&one, v), Some(&span), &u).unwrap_err();
        assert_eq!(err, EigenError::ComponentOutsideSubspace);
        // Over a span containing both components the assertion passes.
        let full = rref_exact(&[parts[0].clone(), parts[1].clone()], &ambient).unwrap();
        let parts2 = eigen_separate(|v| alg.bracket(&one, v), Some(&full), &u).unwrap();
        assert_eq!(parts2, parts);
    }

    #[test]
    fn nilpotent_lowering_stays_in_its_block() {
        let alg = mixed_instance();
        let one = alg.one();
        // Index lowering keeps the group part, hence the diagonal value.
        let u = mono(&[0, 0, 0, 0, 1], &[0, 2, 0, 0]).add(&mono(&[0, 1, 0, 0, 0], &[0, 1, 0, 0]));
        let parts = eigen_separate(|v| alg.bracket(&one, v), None, &u).unwrap();
        assert_eq!(parts.len(), 2);
        let total = parts.iter().fold(AlgebraElement::zero(), |a, p| a.add(p));
        assert_eq!(total, u);
    }

    #[test]
    fn zero_and_single_monomial_inputs() {
        let alg = mixed_instance();
        let one = alg.one();
        let parts = eigen_separate(|v| alg.bracket(&one, v), None, &AlgebraElement::zero()).unwrap();
        assert!(parts.is_empty());
        let m = mono(&[0, 1, 0, 0, 0], &[1, 0, 0, 0]);
        let parts = eigen_separate(|v| alg.bracket(&one, v), None, &m).unwrap();
        assert_eq!(parts, vec![m]);
    }

    #[test]
    fn group_shifting_operator_is_rejected() {
        let alg = mixed_instance();
        // Scalar part plus a shift that changes the diagonal value.
        let shift = alg.group_monomial(vec![
            Int::from(0),
            Int::from(0),
            Int::from(1),
            Int::from(0),
            Int::from(0),
        ]);
        let t = |v: &AlgebraElement| alg.derive(0, v).add(&multiply(&shift, v));
        let u = mono(&[0, 1, 0, 0, 0], &[1, 0, 0, 0]);
        let err = eigen_separate(t, None, &u).unwrap_err();
        assert!(matches!(err, EigenError::NotBlockTriangular { .. }));
    }
}
