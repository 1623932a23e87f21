//! Degree-capped polynomial rings and the contact bracket.
//!
//! A ring holds `2n + 1` variables: the first `2n` are symplectic, paired as
//! `(k, n + k)`, and the last is the contact direction. The contact bracket
//! is written out directly, term pair by term pair; the oracle at the bottom
//! rebuilds the same operation as a twist of the canonical Poisson bracket
//! by the symplectic grading operator at constant minus two, and the test
//! suites compare the two.

use std::collections::BTreeMap;

use crate::rational::{Int, Rational};
use crate::twist::PoissonOracle;
use num_traits::{One, Zero};
use thiserror::Error;

/// Raised when an operation would produce a term above the ring's cap.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("term of degree {degree} exceeds the ring cap {cap}")]
pub struct DegreeOverflow {
    pub degree: u32,
    pub cap: u32,
}

/// A polynomial as a map from exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        Poly::from_term(vec![0; vars], c)
    }

    pub fn var(vars: usize, k: usize) -> Self {
        let mut exp = vec![0; vars];
        exp[k] = 1;
        Poly::from_term(exp, Rational::one())
    }

    pub fn from_term(exponents: Vec<u32>, coeff: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(exponents, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in self.terms() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        let mut out = Poly::zero();
        if factor.is_zero() {
            return out;
        }
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * factor);
        }
        out
    }
}

/// A polynomial ring in `2n + 1` variables with a hard total-degree cap.
#[derive(Debug, Clone, Copy)]
pub struct PolyRing {
    pub pairs: usize,
    pub cap: u32,
}

impl PolyRing {
    pub fn new(pairs: usize, cap: u32) -> Self {
        PolyRing { pairs, cap }
    }

    pub fn vars(&self) -> usize {
        2 * self.pairs + 1
    }

    fn contact_var(&self) -> usize {
        2 * self.pairs
    }

    fn guard(&self, degree: u32) -> Result<(), DegreeOverflow> {
        if degree > self.cap {
            Err(DegreeOverflow {
                degree,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly, DegreeOverflow> {
        let mut out = Poly::zero();
        for (ea, ca) in f.terms() {
            for (eb, cb) in g.terms() {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                self.guard(exp.iter().sum())?;
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// Partial derivative in variable `k`.
    pub fn partial(&self, k: usize, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in f.terms() {
            if e[k] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[k] -= 1;
            out.add_term(exp, c * Rational::from(Int::from(e[k])));
        }
        out
    }

    /// The grading operator in the symplectic variables: each term is scaled
    /// by its total degree in the first `2n` variables.
    pub fn symplectic_grading(&self, f: &Poly) -> Poly {
        let sym = 2 * self.pairs;
        let mut out = Poly::zero();
        for (e, c) in f.terms() {
            let weight: u32 = e[..sym].iter().sum();
            if weight > 0 {
                out.add_term(e.clone(), c * Rational::from(Int::from(weight)));
            }
        }
        out
    }

    /// The canonical Poisson bracket over the pairs `(k, n + k)`, computed
    /// through partial derivatives.
    pub fn poisson_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, DegreeOverflow> {
        let n = self.pairs;
        let mut out = Poly::zero();
        for k in 0..n {
            let plus = self.mul(&self.partial(k, f), &self.partial(n + k, g))?;
            let minus = self.mul(&self.partial(n + k, f), &self.partial(k, g))?;
            out = out.add(&plus).sub(&minus);
        }
        Ok(out)
    }

    /// The contact bracket written out directly per term pair: the Poisson
    /// part over the symplectic pairs, plus the grading-minus-two terms along
    /// the contact direction. Independent of the twist machinery.
    pub fn contact_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, DegreeOverflow> {
        let n = self.pairs;
        let z = self.contact_var();
        let two = Rational::from(Int::from(2));
        let mut out = Poly::zero();
        for (ea, ca) in f.terms() {
            let grade_a = Rational::from(Int::from(ea[..2 * n].iter().sum::<u32>()));
            for (eb, cb) in g.terms() {
                let scale = ca * cb;
                for k in 0..n {
                    let (i, j) = (k, n + k);
                    let coeff = Rational::from(Int::from(ea[i]) * Int::from(eb[j]))
                        - Rational::from(Int::from(ea[j]) * Int::from(eb[i]));
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    exp[i] -= 1;
                    exp[j] -= 1;
                    self.guard(exp.iter().sum())?;
                    out.add_term(exp, &scale * coeff);
                }
                let grade_b = Rational::from(Int::from(eb[..2 * n].iter().sum::<u32>()));
                let coeff = (&grade_a - &two) * Rational::from(Int::from(eb[z]))
                    - Rational::from(Int::from(ea[z])) * (&grade_b - &two);
                if !coeff.is_zero() {
                    let mut exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    exp[z] -= 1;
                    self.guard(exp.iter().sum())?;
                    out.add_term(exp, &scale * coeff);
                }
            }
        }
        Ok(out)
    }
}

/// The canonical Poisson oracle whose twist at minus two is the contact
/// bracket.
///
/// Operations panic on degree overflow; callers keep sample degrees at most
/// half the cap so no law check or twist can overflow.
pub struct ContactOracle {
    pub ring: PolyRing,
}

impl PoissonOracle for ContactOracle {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn scale(&self, a: &Poly, c: &Rational) -> Poly {
        a.scale(c)
    }
    fn product(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.mul(a, b).expect("sample degrees stay within the cap")
    }
    fn lie(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring
            .poisson_bracket(a, b)
            .expect("sample degrees stay within the cap")
    }
    fn d1(&self, a: &Poly) -> Poly {
        self.ring.symplectic_grading(a)
    }
    fn d2(&self, a: &Poly) -> Poly {
        self.ring.partial(self.ring.contact_var(), a)
    }
    fn quasi_constant(&self) -> Rational {
        -Rational::from(Int::from(2))
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};
    use crate::twist::{twist, verify_oracle};

    fn term(exp: &[u32], num: i64, den: i64) -> Poly {
        Poly::from_term(exp.to_vec(), rat(num, den))
    }

    fn samples_one_pair() -> Vec<Poly> {
        let v = 3;
        vec![
            Poly::constant(v, rint(1)),
            Poly::var(v, 0),
            Poly::var(v, 1).add(&Poly::var(v, 2).scale(&rint(2))),
            term(&[1, 1, 0], 1, 1),
            term(&[0, 1, 1], -1, 2).add(&term(&[2, 0, 0], 1, 3)),
        ]
    }

    fn samples_two_pairs() -> Vec<Poly> {
        let v = 5;
        vec![
            Poly::var(v, 0),
            Poly::var(v, 3).add(&Poly::var(v, 4)),
            term(&[1, 0, 0, 1, 0], 1, 1),
            term(&[0, 1, 0, 0, 1], 2, 1).add(&term(&[0, 0, 2, 0, 0], -1, 1)),
        ]
    }

    #[test]
    fn partial_and_grading_act_termwise() {
        let ring = PolyRing::new(1, 6);
        let f = term(&[2, 1, 0], 1, 1);
        assert_eq!(ring.partial(0, &f), term(&[1, 1, 0], 2, 1));
        assert_eq!(ring.symplectic_grading(&f), term(&[2, 1, 0], 3, 1));
        assert_eq!(ring.partial(2, &f), Poly::zero());
    }

    #[test]
    fn multiplication_respects_cap() {
        let ring = PolyRing::new(1, 3);
        let f = term(&[2, 0, 0], 1, 1);
        assert_eq!(
            ring.mul(&f, &f),
            Err(DegreeOverflow { degree: 4, cap: 3 })
        );
        assert!(ring.mul(&f, &Poly::var(3, 1)).is_ok());
    }

    #[test]
    fn contact_bracket_on_generators() {
        let ring = PolyRing::new(1, 6);
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        // Symplectic pair gives the constant; the contact direction acts
        // through the grading minus two.
        assert_eq!(
            ring.contact_bracket(&x, &y).unwrap(),
            Poly::constant(3, rint(1))
        );
        assert_eq!(ring.contact_bracket(&x, &z).unwrap(), x.scale(&rint(-1)));
        assert_eq!(ring.contact_bracket(&z, &x).unwrap(), x.clone());
        assert_eq!(
            ring.contact_bracket(&Poly::constant(3, rint(1)), &z).unwrap(),
            Poly::constant(3, rint(-2))
        );
    }

    #[test]
    fn contact_bracket_matches_twisted_poisson() {
        for (ring, samples) in [
            (PolyRing::new(1, 6), samples_one_pair()),
            (PolyRing::new(2, 6), samples_two_pairs()),
        ] {
            let oracle = ContactOracle { ring };
            let c = oracle.quasi_constant();
            for f in &samples {
                for g in &samples {
                    assert_eq!(
                        twist(&oracle, &c, f, g),
                        ring.contact_bracket(f, g).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn contact_bracket_satisfies_jacobi() {
        for (ring, samples) in [
            (PolyRing::new(1, 6), samples_one_pair()),
            (PolyRing::new(2, 6), samples_two_pairs()),
        ] {
            for f in &samples {
                for g in &samples {
                    for h in &samples {
                        let total = ring
                            .contact_bracket(f, &ring.contact_bracket(g, h).unwrap())
                            .unwrap()
                            .add(
                                &ring
                                    .contact_bracket(g, &ring.contact_bracket(h, f).unwrap())
                                    .unwrap(),
                            )
                            .add(
                                &ring
                                    .contact_bracket(h, &ring.contact_bracket(f, g).unwrap())
                                    .unwrap(),
                            );
                        assert!(total.is_zero(), "residual {total:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn poisson_oracle_satisfies_all_laws() {
        for (ring, samples) in [
            (PolyRing::new(1, 6), samples_one_pair()),
            (PolyRing::new(2, 6), samples_two_pairs()),
        ] {
            let oracle = ContactOracle { ring };
            for report in verify_oracle(&oracle, &samples) {
                assert!(report.passed, "{}: {}", report.law, report.detail);
            }
        }
    }
}
