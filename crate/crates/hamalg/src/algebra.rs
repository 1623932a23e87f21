//! The commutative carrier algebra, its distinguished derivations, and two
//! independent constructions of the bracket.
//!
//! Basis monomials `x^{alpha, i}` are indexed by a group vector `alpha` and a
//! multi-index `i` over the derivation slots. `bracket` composes the
//! derivations literally; `bracket_direct` expands the same operation into
//! per-term coefficients and never calls the operator route. The two must
//! agree everywhere, and the test suites hold them to that.

use std::collections::BTreeMap;

use crate::lattice::{vec_add, AlgebraSignature, SemigroupSlot};
use crate::rational::{Int, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

/// A basis monomial key: group part and slot multi-index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub group: Vec<Int>,
    pub index: Vec<u32>,
}

impl BasisIndex {
    pub fn new(group: Vec<Int>, index: Vec<u32>) -> Self {
        BasisIndex { group, index }
    }

    /// The identity monomial for the given shape.
    pub fn unit(rank: usize, slots: usize) -> Self {
        BasisIndex {
            group: vec![Int::zero(); rank],
            index: vec![0; slots],
        }
    }

    /// Total slot degree of the multi-index.
    pub fn degree(&self) -> u32 {
        self.index.iter().sum()
    }
}

/// Problems with an element offered from outside the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElementError {
    #[error("group vector has {got} coordinates, expected {expected}")]
    GroupRank { got: usize, expected: usize },
    #[error("multi-index has {got} entries, expected {expected}")]
    IndexLength { got: usize, expected: usize },
    #[error("slot {slot} is pinned at zero but carries index value {value}")]
    PinnedSlot { slot: usize, value: u32 },
}

/// A finite rational combination of basis monomials.
///
/// Zero coefficients are never stored, so equality of maps is equality of
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisIndex, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn from_term(key: BasisIndex, coeff: Rational) -> Self {
        let mut el = AlgebraElement::zero();
        el.add_term(key, coeff);
        el
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisIndex) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff * key`, pruning the entry when it cancels.
    pub fn add_term(&mut self, key: BasisIndex, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (k, c) in self.terms() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        if factor.is_zero() {
            return out;
        }
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    /// Largest slot degree over the support, zero for the zero element.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(BasisIndex::degree).max().unwrap_or(0)
    }
}

/// Product of basis elements adds group parts and multi-indices.
pub fn multiply(u: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ku, cu) in u.terms() {
        for (kw, cw) in w.terms() {
            let key = BasisIndex {
                group: vec_add(&ku.group, &kw.group),
                index: ku.index.iter().zip(&kw.index).map(|(a, b)| a + b).collect(),
            };
            out.add_term(key, cu * cw);
        }
    }
    out
}

fn lowered(index: &[u32], slot: usize) -> Option<Vec<u32>> {
    if index[slot] == 0 {
        return None;
    }
    let mut out = index.to_vec();
    out[slot] -= 1;
    Some(out)
}

/// The algebra built from a validated signature.
pub struct Algebra {
    pub signature: AlgebraSignature,
}

impl Algebra {
    pub fn new(signature: AlgebraSignature) -> Self {
        Algebra { signature }
    }

    /// The multiplicative identity `x^{0, 0}`.
    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::from_term(
            BasisIndex::unit(self.signature.rank, self.signature.slot_count()),
            Rational::one(),
        )
    }

    /// The monomial `x^{group, 0}`.
    pub fn group_monomial(&self, group: Vec<Int>) -> AlgebraElement {
        AlgebraElement::from_term(
            BasisIndex::new(group, vec![0; self.signature.slot_count()]),
            Rational::one(),
        )
    }

    /// The key of the central monomial `x^{-epsilon, 0}`.
    pub fn central_key(&self) -> BasisIndex {
        BasisIndex::new(
            self.signature.epsilon.iter().map(|x| -x).collect(),
            vec![0; self.signature.slot_count()],
        )
    }

    /// Validates shape and slot ranges of an externally supplied element.
    pub fn check_element(&self, el: &AlgebraElement) -> Result<(), ElementError> {
        for (key, _) in el.terms() {
            if key.group.len() != self.signature.rank {
                return Err(ElementError::GroupRank {
                    got: key.group.len(),
                    expected: self.signature.rank,
                });
            }
            if key.index.len() != self.signature.slot_count() {
                return Err(ElementError::IndexLength {
                    got: key.index.len(),
                    expected: self.signature.slot_count(),
                });
            }
            for (slot, &value) in key.index.iter().enumerate() {
                if self.signature.slots[slot] == SemigroupSlot::Point && value != 0 {
                    return Err(ElementError::PinnedSlot { slot, value });
                }
            }
        }
        Ok(())
    }

    /// The derivation attached to slot `p`: multiply by the slot character on
    /// the group part and lower the slot index with its old value as factor.
    pub fn derive(&self, p: usize, u: &AlgebraElement) -> AlgebraElement {
        let ch = &self.signature.characters[p];
        let mut out = AlgebraElement::zero();
        for (key, c) in u.terms() {
            let weight = ch.eval(&key.group);
            if !weight.is_zero() {
                out.add_term(key.clone(), c * weight);
            }
            if let Some(index) = lowered(&key.index, p) {
                let factor = Rational::from(Int::from(key.index[p]));
                out.add_term(BasisIndex::new(key.group.clone(), index), c * factor);
            }
        }
        out
    }

    /// Bilinear extension of `(u, w) -> phi(alpha, beta) * u * w` over terms.
    fn phi_product(&self, u: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (ku, cu) in u.terms() {
            for (kw, cw) in w.terms() {
                let weight = self.signature.phi.eval(&ku.group, &kw.group);
                if weight.is_zero() {
                    continue;
                }
                let key = BasisIndex {
                    group: vec_add(&ku.group, &kw.group),
                    index: ku.index.iter().zip(&kw.index).map(|(a, b)| a + b).collect(),
                };
                out.add_term(key, cu * cw * weight);
            }
        }
        out
    }

    /// The epsilon-wrapped part of the bracket: shifted pair terms for every
    /// pair past the first, plus the skew form term. This is itself a Lie
    /// bracket, and the full bracket is its twist by one along the first two
    /// derivations.
    pub fn inner_bracket(&self, u: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
        let n = self.signature.pair_count();
        let mut inner = self.phi_product(u, w);
        for k in 1..n {
            let a = 2 * k;
            let b = a + 1;
            let da_u = self.derive(a, u);
            let db_w = self.derive(b, w);
            let da_w = self.derive(a, w);
            let db_u = self.derive(b, u);
            let pair = multiply(&da_u, &db_w).sub(&multiply(&da_w, &db_u));
            if pair.is_zero() {
                continue;
            }
            let shift = self.group_monomial(self.signature.sigmas[k - 1].clone());
            inner = inner.add(&multiply(&shift, &pair));
        }
        let eps = self.group_monomial(self.signature.epsilon.clone());
        multiply(&eps, &inner)
    }

    /// The bracket as a composition of derivations and monomial shifts.
    ///
    /// The first slot pair contributes with the first derivation offset by
    /// the identity; every later pair is wrapped in its shift monomial; the
    /// skew form term and all shifted pair terms are wrapped in the epsilon
    /// monomial.
    pub fn bracket(&self, u: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
        let mut out = self.inner_bracket(u, w);
        let d0_u = self.derive(0, u).add(u);
        let d1_w = self.derive(1, w);
        let d0_w = self.derive(0, w).add(w);
        let d1_u = self.derive(1, u);
        out = out.add(&multiply(&d0_u, &d1_w));
        out = out.sub(&multiply(&d0_w, &d1_u));
        out
    }

    /// The bracket from expanded structure constants, term pair by term pair.
    ///
    /// Kept free of any call into `derive`, `multiply`, or `bracket` so the
    /// two routes stay independent checks of each other.
    pub fn bracket_direct(&self, u: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
        let sig = &self.signature;
        let n = sig.pair_count();
        let one = Rational::one();
        let mut out = AlgebraElement::zero();
        for (ku, cu) in u.terms() {
            let alpha = &ku.group;
            let i = &ku.index;
            let p0a = sig.characters[0].eval(alpha);
            let p1a = sig.characters[1].eval(alpha);
            for (kw, cw) in w.terms() {
                let beta = &kw.group;
                let j = &kw.index;
                let p0b = sig.characters[0].eval(beta);
                let p1b = sig.characters[1].eval(beta);
                let scale = cu * cw;
                let base_group = vec_add(alpha, beta);
                let base_index: Vec<u32> =
                    i.iter().zip(j.iter()).map(|(a, b)| a + b).collect();

                let c00 = (&p0a + &one) * &p1b - &p1a * (&p0b + &one);
                if !c00.is_zero() {
                    out.add_term(
                        BasisIndex::new(base_group.clone(), base_index.clone()),
                        &scale * c00,
                    );
                }
                let c10 = Rational::from(Int::from(i[0])) * &p1b
                    - Rational::from(Int::from(j[0])) * &p1a;
                if !c10.is_zero() {
                    let index = lowered(&base_index, 0).expect("nonzero first-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * c10);
                }
                let c01 = (&p0a + &one) * Rational::from(Int::from(j[1]))
                    - Rational::from(Int::from(i[1])) * (&p0b + &one);
                if !c01.is_zero() {
                    let index = lowered(&base_index, 1).expect("nonzero second-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * c01);
                }
                let c11 = Rational::from(Int::from(i[0]) * Int::from(j[1]))
                    - Rational::from(Int::from(i[1]) * Int::from(j[0]));
                if !c11.is_zero() {
                    let index = lowered(&lowered(&base_index, 0).unwrap(), 1)
                        .expect("nonzero both-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * c11);
                }

                let phi_ab = sig.phi.eval(alpha, beta);
                if !phi_ab.is_zero() {
                    let group = vec_add(&base_group, &sig.epsilon);
                    out.add_term(
                        BasisIndex::new(group, base_index.clone()),
                        &scale * phi_ab,
                    );
                }

                for k in 1..n {
                    let a = 2 * k;
                    let b = a + 1;
                    let paa = sig.characters[a].eval(alpha);
                    let pab = sig.characters[a].eval(beta);
                    let pba = sig.characters[b].eval(alpha);
                    let pbb = sig.characters[b].eval(beta);
                    let group = vec_add(
                        &vec_add(&base_group, &sig.epsilon),
                        &sig.sigmas[k - 1],
                    );
                    let d00 = &paa * &pbb - &pba * &pab;
                    if !d00.is_zero() {
                        out.add_term(
                            BasisIndex::new(group.clone(), base_index.clone()),
                            &scale * d00,
                        );
                    }
                    let d10 = Rational::from(Int::from(i[a])) * &pbb
                        - Rational::from(Int::from(j[a])) * &pba;
                    if !d10.is_zero() {
                        let index = lowered(&base_index, a).expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group.clone(), index), &scale * d10);
                    }
                    let d01 = Rational::from(Int::from(j[b])) * &paa
                        - Rational::from(Int::from(i[b])) * &pab;
                    if !d01.is_zero() {
                        let index = lowered(&base_index, b).expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group.clone(), index), &scale * d01);
                    }
                    let d11 = Rational::from(Int::from(i[a]) * Int::from(j[b]))
                        - Rational::from(Int::from(i[b]) * Int::from(j[a]));
                    if !d11.is_zero() {
                        let index = lowered(&lowered(&base_index, a).unwrap(), b)
                            .expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group, index), &scale * d11);
                    }
                }
            }
        }
        out
    }

    /// Canonical coset representative: the central monomial coefficient is
    /// dropped.
    pub fn project(&self, el: &AlgebraElement) -> QuotientElement {
        let central = self.central_key();
        let mut repr = AlgebraElement::zero();
        for (k, c) in el.terms() {
            if *k != central {
                repr.add_term(k.clone(), c.clone());
            }
        }
        QuotientElement { repr }
    }

    /// Bracket on the quotient by the central line, through canonical
    /// representatives.
    pub fn bracket_quotient(&self, u: &QuotientElement, w: &QuotientElement) -> QuotientElement {
        self.project(&self.bracket(&u.repr, &w.repr))
    }

    /// Splits an element into generalized eigencomponents of bracketing with
    /// x^{0,0}. That operator acts on a monomial as the scalar given by the
    /// second character plus a nilpotent lowering of the second index slot,
    /// so the split groups terms by that scalar; the components sum back to
    /// the input and each is annihilated by (ad - lambda)^(1 + max i_1).
    pub fn ad1_spectral_split(&self, u: &AlgebraElement) -> BTreeMap<Rational, AlgebraElement> {
        let chi = &self.signature.characters[1];
        let mut parts: BTreeMap<Rational, AlgebraElement> = BTreeMap::new();
        for (k, c) in u.terms() {
            let lambda = chi.eval(&k.group);
            parts
                .entry(lambda)
                .or_insert_with(AlgebraElement::zero)
                .add_term(k.clone(), c.clone());
        }
        parts
    }
}

/// An element of the quotient by the central line, stored by its canonical
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientElement {
    repr: AlgebraElement,
}

impl QuotientElement {
    pub fn representative(&self) -> &AlgebraElement {
        &self.repr
    }

    pub fn into_representative(self) -> AlgebraElement {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::mixed_instance;
    use crate::rational::{rat, rint};

    fn ivec(vals: &[i64]) -> Vec<Int> {
        vals.iter().map(|&v| Int::from(v)).collect()
    }

    fn mono(alg: &Algebra, group: &[i64], index: &[u32]) -> AlgebraElement {
        assert_eq!(group.len(), alg.signature.rank);
        assert_eq!(index.len(), alg.signature.slot_count());
        AlgebraElement::from_term(
            BasisIndex::new(ivec(group), index.to_vec()),
            Rational::one(),
        )
    }

    #[test]
    fn multiplication_adds_exponents() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 0, 0, 0, 0], &[2, 0, 0, 0]);
        let w = mono(&alg, &[0, -1, 0, 0, 0], &[1, 1, 0, 0]);
        let p = multiply(&u, &w);
        assert_eq!(
            p,
            mono(&alg, &[1, -1, 0, 0, 0], &[3, 1, 0, 0])
        );
    }

    #[test]
    fn derivation_splits_into_weight_and_lowering() {
        let alg = mixed_instance();
        let u = mono(&alg, &[0, 0, 1, 0, 0], &[2, 0, 0, 0]);
        let d = alg.derive(0, &u);
        let mut expected = mono(&alg, &[0, 0, 1, 0, 0], &[2, 0, 0, 0]);
        expected = expected.add(&mono(&alg, &[0, 0, 1, 0, 0], &[1, 0, 0, 0]).scale(&rint(2)));
        assert_eq!(d, expected);
    }

    #[test]
    fn derivations_commute() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 2, 1, 1, 0], &[2, 1, 0, 3])
            .add(&mono(&alg, &[0, 0, 0, 0, 1], &[0, 2, 0, 1]).scale(&rat(1, 2)));
        for p in 0..4 {
            for q in 0..4 {
                let pq = alg.derive(p, &alg.derive(q, &u));
                let qp = alg.derive(q, &alg.derive(p, &u));
                assert_eq!(pq, qp, "slots {p} and {q}");
            }
        }
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 0, 1, 0, 0], &[1, 0, 0, 2]);
        let w = mono(&alg, &[0, 1, 0, 1, 0], &[0, 2, 0, 1]).scale(&rat(3, 4));
        for p in 0..4 {
            let lhs = alg.derive(p, &multiply(&u, &w));
            let rhs = multiply(&alg.derive(p, &u), &w).add(&multiply(&u, &alg.derive(p, &w)));
            assert_eq!(lhs, rhs, "slot {p}");
        }
    }

    #[test]
    fn bracket_with_unit_is_second_derivation() {
        let alg = mixed_instance();
        let one = alg.one();
        let w = mono(&alg, &[2, -1, 0, 1, 1], &[1, 2, 0, 0]);
        assert_eq!(alg.bracket(&one, &w), alg.derive(1, &w));
        assert_eq!(alg.bracket_direct(&one, &w), alg.derive(1, &w));
    }

    #[test]
    fn bracket_of_epsilon_pair_is_constant() {
        let alg = mixed_instance();
        let u = mono(&alg, &[0, 0, 1, 0, 0], &[0, 0, 0, 0]);
        let w = mono(&alg, &[0, 0, -1, 0, 0], &[0, 1, 0, 0]);
        let expected = alg.one().scale(&rint(2));
        assert_eq!(alg.bracket(&u, &w), expected);
        assert_eq!(alg.bracket_direct(&u, &w), expected);
    }

    #[test]
    fn bracket_mixes_weight_and_lowering_terms() {
        let alg = mixed_instance();
        let u = mono(&alg, &[0, 0, 0, 0, -1], &[0, 0, 0, 0]);
        let w = mono(&alg, &[0, 0, 0, 0, 1], &[1, 0, 0, 0]);
        let expected = mono(&alg, &[0, 0, 0, 0, 0], &[1, 0, 0, 0])
            .scale(&rint(2))
            .add(&alg.one());
        assert_eq!(alg.bracket(&u, &w), expected);
        assert_eq!(alg.bracket_direct(&u, &w), expected);
    }

    #[test]
    fn bracket_reaches_shifted_pairs() {
        let alg = mixed_instance();
        let u = mono(&alg, &[0, 0, 0, 1, 0], &[0, 0, 0, 1]);
        let w = mono(&alg, &[0, 0, 0, 0, 0], &[0, 0, 0, 1]);
        // Only the shifted pair contributes: target group is
        // alpha + beta + epsilon + sigma, index drops one at the last slot.
        let expected = mono(&alg, &[0, 0, 1, 2, 0], &[0, 0, 0, 1]);
        assert_eq!(alg.bracket(&u, &w), expected);
        assert_eq!(alg.bracket_direct(&u, &w), expected);
    }

    #[test]
    fn bracket_sees_skew_form() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 0, 0, 0, 0], &[0, 0, 0, 0]);
        let w = mono(&alg, &[0, 1, 0, 0, 0], &[0, 0, 0, 0]);
        let b = alg.bracket(&u, &w);
        // phi(e1, e2) = 1 lands on x^{e1 + e2 + epsilon, 0}.
        let key = BasisIndex::new(ivec(&[1, 1, 1, 0, 0]), vec![0, 0, 0, 0]);
        assert_eq!(b.coeff(&key), rint(1));
        assert_eq!(alg.bracket_direct(&u, &w), b);
    }

    #[test]
    fn routes_agree_on_dense_elements() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 2, -1, 0, 1], &[2, 1, 0, 1])
            .add(&mono(&alg, &[0, -1, 1, 1, 0], &[0, 0, 0, 2]).scale(&rat(2, 3)));
        let w = mono(&alg, &[-1, 1, 0, 1, -1], &[1, 3, 0, 0])
            .add(&mono(&alg, &[2, 0, 0, 0, 1], &[0, 1, 0, 1]).scale(&rat(-5, 2)));
        assert_eq!(alg.bracket(&u, &w), alg.bracket_direct(&u, &w));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 1, 0, 1, 0], &[1, 0, 0, 2]);
        let w = mono(&alg, &[0, -1, 1, 0, 1], &[0, 2, 0, 1]);
        let uw = alg.bracket(&u, &w);
        let wu = alg.bracket(&w, &u);
        assert_eq!(uw, wu.neg());
    }

    #[test]
    fn bracket_satisfies_jacobi() {
        let alg = mixed_instance();
        let u = mono(&alg, &[1, 0, 0, 0, 0], &[1, 0, 0, 0]);
        let v = mono(&alg, &[0, 1, 0, 1, 0], &[0, 1, 0, 1]);
        let w = mono(&alg, &[0, 0, 1, 0, 1], &[1, 1, 0, 0]);
        let total = alg
            .bracket(&u, &alg.bracket(&v, &w))
            .add(&alg.bracket(&v, &alg.bracket(&w, &u)))
            .add(&alg.bracket(&w, &alg.bracket(&u, &v)));
        assert!(total.is_zero(), "jacobi residue {total:?}");
    }

    #[test]
    fn central_monomial_brackets_to_zero() {
        let alg = mixed_instance();
        let c = AlgebraElement::from_term(alg.central_key(), Rational::one());
        for w in [
            mono(&alg, &[1, 2, -1, 1, 0], &[2, 1, 0, 3]),
            mono(&alg, &[0, 0, 1, 0, 0], &[0, 0, 0, 0]),
            alg.one(),
        ] {
            assert!(alg.bracket(&c, &w).is_zero());
            assert!(alg.bracket_direct(&c, &w).is_zero());
        }
    }

    #[test]
    fn quotient_bracket_ignores_central_component() {
        let alg = mixed_instance();
        let c = AlgebraElement::from_term(alg.central_key(), rat(7, 3));
        let u = mono(&alg, &[1, 0, 0, 1, 0], &[1, 1, 0, 0]);
        let w = mono(&alg, &[0, 1, 1, 0, 0], &[2, 0, 0, 1]);
        let plain = alg.bracket_quotient(&alg.project(&u), &alg.project(&w));
        let shifted = alg.bracket_quotient(&alg.project(&u.add(&c)), &alg.project(&w));
        assert_eq!(plain, shifted);
    }

    #[test]
    fn check_element_rejects_pinned_slot_use() {
        let alg = mixed_instance();
        let bad = mono(&alg, &[0, 0, 0, 0, 0], &[0, 0, 1, 0]);
        assert!(matches!(
            alg.check_element(&bad),
            Err(ElementError::PinnedSlot { slot: 2, value: 1 })
        ));
        let good = mono(&alg, &[0, 0, 0, 0, 0], &[1, 0, 0, 2]);
        assert!(alg.check_element(&good).is_ok());
    }

    #[test]
    fn spectral_split_groups_by_second_character() {
        let alg = mixed_instance();
        // Second character reads the fifth group coordinate here.
        let u = mono(&alg, &[0, 0, 0, 0, 1], &[0, 0, 0, 0])
            .add(&mono(&alg, &[1, 0, 0, 0, 0], &[0, 0, 0, 0]));
        let parts = alg.ad1_spectral_split(&u);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&rint(0)], mono(&alg, &[1, 0, 0, 0, 0], &[0, 0, 0, 0]));
        assert_eq!(parts[&rint(1)], mono(&alg, &[0, 0, 0, 0, 1], &[0, 0, 0, 0]));
        let recombined = parts
            .values()
            .fold(AlgebraElement::zero(), |acc, p| acc.add(p));
        assert_eq!(recombined, u);
    }

    #[test]
    fn spectral_components_satisfy_annihilation_identity() {
        let alg = mixed_instance();
        let one = alg.one();
        let u = mono(&alg, &[0, 0, 0, 0, 1], &[0, 2, 0, 0])
            .scale(&rat(3, 2))
            .add(&mono(&alg, &[0, 1, 0, 0, 1], &[1, 1, 0, 1]))
            .add(&mono(&alg, &[1, 0, 0, 0, 0], &[0, 1, 0, 0]));
        for (lambda, part) in alg.ad1_spectral_split(&u) {
            let depth = part
                .terms()
                .map(|(k, _)| k.index[1])
                .max()
                .expect("nonzero component")
                + 1;
            let mut v = part.clone();
            for _ in 0..depth {
                v = alg.bracket(&one, &v).sub(&v.scale(&lambda));
            }
            assert!(v.is_zero(), "component at {lambda} not annihilated");
        }
    }
}
