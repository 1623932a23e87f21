//! Bracket twisting along a pair of commuting derivations.
//!
//! Given a Lie bracket that is a derivation in each argument over a
//! commutative product, a derivation `d2` of both structures, and a `d1`
//! that is a derivation of the product but only a quasi-derivation of the
//! bracket, `d1([u,v]) = [d1(u),v] + [u,d1(v)] + c[u,v]`, the twisted
//! operation `[u, v] + (d1 + c)(u) d2(v) - d2(u) (d1 + c)(v)` at that same
//! constant is again a Lie bracket. The oracle trait lets any carrier plug
//! into the twist and into the empirical law checks; the main bracket, the
//! divergence-form case, and the polynomial contact bracket all arise as
//! twists of simpler oracles.

use crate::algebra::{multiply, Algebra, AlgebraElement};
use crate::rational::Rational;
use num_traits::One;

/// A carrier with a product, a base Lie bracket, and two distinguished
/// derivations, exposed abstractly so twists and law checks can run on it.
pub trait PoissonOracle {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn lie(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn d1(&self, a: &Self::Elem) -> Self::Elem;
    fn d2(&self, a: &Self::Elem) -> Self::Elem;

    /// The constant under which `d1` is a quasi-derivation of `lie`, and at
    /// which the twist of this oracle is a Lie bracket.
    fn quasi_constant(&self) -> Rational;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The twisted bracket at parameter `c`.
pub fn twist<O: PoissonOracle>(o: &O, c: &Rational, u: &O::Elem, v: &O::Elem) -> O::Elem {
    let tu = o.add(&o.d1(u), &o.scale(u, c));
    let tv = o.add(&o.d1(v), &o.scale(v, c));
    let plus = o.product(&tu, &o.d2(v));
    let minus = o.product(&o.d2(u), &tv);
    o.add(&o.lie(u, v), &o.sub(&plus, &minus))
}

/// One checked law with a counterexample when it fails.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Checks the oracle laws on every pair and triple drawn from `samples`:
/// commutativity and associativity of the product, antisymmetry, the Jacobi
/// identity and the Leibniz rule for the bracket, both derivations against
/// both structures, and commutation of the two derivations.
pub fn verify_oracle<O: PoissonOracle>(o: &O, samples: &[O::Elem]) -> Vec<LawReport> {
    let mut reports = Vec::new();
    let mut push = |law: &'static str, counterexample: Option<String>| {
        reports.push(LawReport {
            law,
            passed: counterexample.is_none(),
            detail: counterexample.unwrap_or_default(),
        });
    };

    let pairs = || {
        samples
            .iter()
            .flat_map(|a| samples.iter().map(move |b| (a, b)))
    };
    let triples = || {
        pairs().flat_map(|(a, b)| samples.iter().map(move |c| (a, b, c)))
    };
    let witness = |a: &O::Elem, b: &O::Elem, residual: &O::Elem| {
        format!("u = {a:?}, v = {b:?}, residual = {residual:?}")
    };

    push(
        "product_commutative",
        pairs().find_map(|(a, b)| {
            let r = o.sub(&o.product(a, b), &o.product(b, a));
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    push(
        "product_associative",
        triples().find_map(|(a, b, c)| {
            let r = o.sub(
                &o.product(&o.product(a, b), c),
                &o.product(a, &o.product(b, c)),
            );
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    push(
        "lie_antisymmetric",
        pairs().find_map(|(a, b)| {
            let r = o.add(&o.lie(a, b), &o.lie(b, a));
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    push(
        "lie_jacobi",
        triples().find_map(|(a, b, c)| {
            let r = o.add(
                &o.lie(a, &o.lie(b, c)),
                &o.add(&o.lie(b, &o.lie(c, a)), &o.lie(c, &o.lie(a, b))),
            );
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    push(
        "lie_leibniz",
        triples().find_map(|(a, b, c)| {
            let r = o.sub(
                &o.lie(a, &o.product(b, c)),
                &o.add(&o.product(&o.lie(a, b), c), &o.product(b, &o.lie(a, c))),
            );
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    for (law, d) in [
        ("d1_product_derivation", 1u8),
        ("d2_product_derivation", 2u8),
    ] {
        let dd = |x: &O::Elem| if d == 1 { o.d1(x) } else { o.d2(x) };
        push(
            law,
            pairs().find_map(|(a, b)| {
                let r = o.sub(
                    &dd(&o.product(a, b)),
                    &o.add(&o.product(&dd(a), b), &o.product(a, &dd(b))),
                );
                (!o.is_zero(&r)).then(|| witness(a, b, &r))
            }),
        );
    }
    push(
        "d2_lie_derivation",
        pairs().find_map(|(a, b)| {
            let r = o.sub(
                &o.d2(&o.lie(a, b)),
                &o.add(&o.lie(&o.d2(a), b), &o.lie(a, &o.d2(b))),
            );
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    let c = o.quasi_constant();
    push(
        "d1_lie_quasi_derivation",
        pairs().find_map(|(a, b)| {
            let r = o.sub(
                &o.d1(&o.lie(a, b)),
                &o.add(
                    &o.add(&o.lie(&o.d1(a), b), &o.lie(a, &o.d1(b))),
                    &o.scale(&o.lie(a, b), &c),
                ),
            );
            (!o.is_zero(&r)).then(|| witness(a, b, &r))
        }),
    );
    push(
        "derivations_commute",
        samples.iter().find_map(|a| {
            let r = o.sub(&o.d1(&o.d2(a)), &o.d2(&o.d1(a)));
            (!o.is_zero(&r)).then(|| format!("u = {a:?}, residual = {r:?}"))
        }),
    );
    reports
}

/// The carrier algebra with the zero bracket and its first two derivations.
///
/// Twisting this oracle by one reproduces the bracket of a signature with a
/// single pair and zero form.
pub struct TrivialLieOracle<'a> {
    pub algebra: &'a Algebra,
}

impl PoissonOracle for TrivialLieOracle<'_> {
    type Elem = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero()
    }
    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.add(b)
    }
    fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        a.neg()
    }
    fn scale(&self, a: &AlgebraElement, c: &Rational) -> AlgebraElement {
        a.scale(c)
    }
    fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        multiply(a, b)
    }
    fn lie(&self, _a: &AlgebraElement, _b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::zero()
    }
    fn d1(&self, a: &AlgebraElement) -> AlgebraElement {
        self.algebra.derive(0, a)
    }
    fn d2(&self, a: &AlgebraElement) -> AlgebraElement {
        self.algebra.derive(1, a)
    }
    fn quasi_constant(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.is_zero()
    }
}

/// The carrier algebra with its epsilon-wrapped inner bracket and the first
/// two derivations. Twisting this oracle by one recovers the full bracket.
pub struct InnerPoissonOracle<'a> {
    pub algebra: &'a Algebra,
}

impl PoissonOracle for InnerPoissonOracle<'_> {
    type Elem = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero()
    }
    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.add(b)
    }
    fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        a.neg()
    }
    fn scale(&self, a: &AlgebraElement, c: &Rational) -> AlgebraElement {
        a.scale(c)
    }
    fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        multiply(a, b)
    }
    fn lie(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.algebra.inner_bracket(a, b)
    }
    fn d1(&self, a: &AlgebraElement) -> AlgebraElement {
        self.algebra.derive(0, a)
    }
    fn d2(&self, a: &AlgebraElement) -> AlgebraElement {
        self.algebra.derive(1, a)
    }
    fn quasi_constant(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisIndex;
    use crate::instances::{block_instance, mixed_instance};
    use crate::rational::{rat, rint, Int};
    use num_traits::One;

    fn mono(group: &[i64], index: &[u32]) -> AlgebraElement {
        AlgebraElement::from_term(
            BasisIndex::new(group.iter().map(|&v| Int::from(v)).collect(), index.to_vec()),
            Rational::one(),
        )
    }

    fn block_samples() -> Vec<AlgebraElement> {
        vec![
            mono(&[0, 0], &[0, 0]),
            mono(&[1, 0], &[1, 0]),
            mono(&[0, -1], &[0, 2]).scale(&rat(1, 2)),
            mono(&[-1, 1], &[1, 1]).add(&mono(&[0, 0], &[0, 1]).scale(&rint(3))),
        ]
    }

    #[test]
    fn trivial_oracle_satisfies_all_laws() {
        let alg = block_instance();
        let oracle = TrivialLieOracle { algebra: &alg };
        for report in verify_oracle(&oracle, &block_samples()) {
            assert!(report.passed, "{}: {}", report.law, report.detail);
        }
    }

    #[test]
    fn twisted_trivial_bracket_matches_single_pair_bracket() {
        let alg = block_instance();
        let oracle = TrivialLieOracle { algebra: &alg };
        let one = Rational::one();
        for u in block_samples() {
            for v in block_samples() {
                assert_eq!(twist(&oracle, &one, &u, &v), alg.bracket(&u, &v));
            }
        }
    }

    #[test]
    fn twisted_trivial_bracket_satisfies_jacobi() {
        let alg = block_instance();
        let oracle = TrivialLieOracle { algebra: &alg };
        let c = rat(-3, 2);
        let samples = block_samples();
        for u in &samples {
            for v in &samples {
                for w in &samples {
                    let total = twist(&oracle, &c, u, &twist(&oracle, &c, v, w))
                        .add(&twist(&oracle, &c, v, &twist(&oracle, &c, w, u)))
                        .add(&twist(&oracle, &c, w, &twist(&oracle, &c, u, v)));
                    assert!(total.is_zero());
                }
            }
        }
    }

    #[test]
    fn inner_oracle_satisfies_all_laws() {
        let alg = mixed_instance();
        let oracle = InnerPoissonOracle { algebra: &alg };
        let samples = vec![
            mono(&[1, 0, 0, 0, 0], &[0, 0, 0, 0]),
            mono(&[0, 1, 0, 0, 0], &[1, 0, 0, 0]),
            mono(&[0, 0, 0, 1, 0], &[0, 0, 0, 1]),
            mono(&[-1, 0, 0, 0, 1], &[0, 1, 0, 0]).scale(&rat(2, 3)),
        ];
        for report in verify_oracle(&oracle, &samples) {
            assert!(report.passed, "{}: {}", report.law, report.detail);
        }
    }

    #[test]
    fn full_bracket_is_twist_of_inner_by_one() {
        let alg = mixed_instance();
        let oracle = InnerPoissonOracle { algebra: &alg };
        let one = Rational::one();
        let samples = [
            mono(&[1, 2, -1, 0, 1], &[2, 1, 0, 1]),
            mono(&[0, -1, 1, 1, 0], &[0, 0, 0, 2]).scale(&rat(2, 3)),
            mono(&[-1, 1, 0, 1, -1], &[1, 3, 0, 0]),
        ];
        for u in &samples {
            for v in &samples {
                assert_eq!(twist(&oracle, &one, u, v), alg.bracket(u, v));
            }
        }
    }

    #[test]
    fn broken_oracle_is_flagged() {
        struct ProductAsLie<'a> {
            inner: TrivialLieOracle<'a>,
        }
        impl PoissonOracle for ProductAsLie<'_> {
            type Elem = AlgebraElement;
            fn zero(&self) -> AlgebraElement {
                self.inner.zero()
            }
            fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
                self.inner.add(a, b)
            }
            fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
                self.inner.neg(a)
            }
            fn scale(&self, a: &AlgebraElement, c: &Rational) -> AlgebraElement {
                self.inner.scale(a, c)
            }
            fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
                self.inner.product(a, b)
            }
            fn lie(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
                self.inner.product(a, b)
            }
            fn d1(&self, a: &AlgebraElement) -> AlgebraElement {
                self.inner.d1(a)
            }
            fn d2(&self, a: &AlgebraElement) -> AlgebraElement {
                self.inner.d2(a)
            }
            fn quasi_constant(&self) -> Rational {
                self.inner.quasi_constant()
            }
        }
        let alg = block_instance();
        let oracle = ProductAsLie {
            inner: TrivialLieOracle { algebra: &alg },
        };
        let reports = verify_oracle(&oracle, &block_samples());
        let antisym = reports
            .iter()
            .find(|r| r.law == "lie_antisymmetric")
            .unwrap();
        assert!(!antisym.passed);
        assert!(antisym.detail.contains("residual"));
    }
}
