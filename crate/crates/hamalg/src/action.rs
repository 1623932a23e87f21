//! Weighted module structures on the carrier space and the shift map that
//! compares them with the bracket action on the algebra itself.
//!
//! A module is selected by one scalar per slot and one additive weight map
//! on the group. The action is written out per term pair, independent of
//! both bracket routes; with first scalar one and everything else zero it
//! must reproduce the bracket exactly, and when the weights come from a
//! lattice vector `mu` the shift map `x^{beta, j} -> x^{beta + mu - eps, j}`
//! must intertwine the module with the bracket action.

use crate::algebra::{Algebra, AlgebraElement, BasisIndex};
use crate::lattice::{validate_module_signature, vec_add, vec_sub, ModuleSignature, SignatureError};
use crate::rational::{Int, Rational};
use num_traits::{One, Zero};

/// An algebra acting on its carrier space through module weights.
pub struct ModuleAction<'a> {
    pub algebra: &'a Algebra,
    pub module: ModuleSignature,
}

fn lowered(index: &[u32], slot: usize) -> Option<Vec<u32>> {
    if index[slot] == 0 {
        return None;
    }
    let mut out = index.to_vec();
    out[slot] -= 1;
    Some(out)
}

impl<'a> ModuleAction<'a> {
    pub fn new(algebra: &'a Algebra, module: ModuleSignature) -> Result<Self, SignatureError> {
        let report = validate_module_signature(&algebra.signature, &module);
        if let Some(fail) = report.failures().first() {
            return Err(SignatureError::ModuleWeights {
                name: fail.name,
                detail: fail.detail.clone(),
            });
        }
        Ok(ModuleAction { algebra, module })
    }

    /// The module with the weights that reproduce the bracket.
    pub fn adjoint(algebra: &'a Algebra) -> Self {
        ModuleAction {
            module: ModuleSignature::adjoint(&algebra.signature),
            algebra,
        }
    }

    /// Applies the element `u` of the algebra to the module vector `v`.
    pub fn act(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let sig = &self.algebra.signature;
        let xi = &self.module.xi;
        let n = sig.pair_count();
        let one = Rational::one();
        let mut out = AlgebraElement::zero();
        for (ku, cu) in u.terms() {
            let alpha = &ku.group;
            let i = &ku.index;
            let p0a = sig.characters[0].eval(alpha);
            let p1a = sig.characters[1].eval(alpha);
            let fa = self.module.f.eval(alpha);
            for (kv, cv) in v.terms() {
                let beta = &kv.group;
                let j = &kv.index;
                let p0b = &sig.characters[0].eval(beta) + &xi[0];
                let p1b = &sig.characters[1].eval(beta) + &xi[1];
                let scale = cu * cv;
                let base_group = vec_add(alpha, beta);
                let base_index: Vec<u32> =
                    i.iter().zip(j.iter()).map(|(a, b)| a + b).collect();

                let a00 = (&p0a + &one) * &p1b - &p1a * &p0b;
                if !a00.is_zero() {
                    out.add_term(
                        BasisIndex::new(base_group.clone(), base_index.clone()),
                        &scale * a00,
                    );
                }
                let a10 = Rational::from(Int::from(i[0])) * &p1b
                    - Rational::from(Int::from(j[0])) * &p1a;
                if !a10.is_zero() {
                    let index = lowered(&base_index, 0).expect("nonzero first-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * a10);
                }
                let a01 = (&p0a + &one) * Rational::from(Int::from(j[1]))
                    - Rational::from(Int::from(i[1])) * &p0b;
                if !a01.is_zero() {
                    let index = lowered(&base_index, 1).expect("nonzero second-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * a01);
                }
                let a11 = Rational::from(Int::from(i[0]) * Int::from(j[1]))
                    - Rational::from(Int::from(i[1]) * Int::from(j[0]));
                if !a11.is_zero() {
                    let index = lowered(&lowered(&base_index, 0).unwrap(), 1)
                        .expect("nonzero both-slot factor");
                    out.add_term(BasisIndex::new(base_group.clone(), index), &scale * a11);
                }

                let form = &sig.phi.eval(alpha, beta) + &fa;
                if !form.is_zero() {
                    let group = vec_add(&base_group, &sig.epsilon);
                    out.add_term(BasisIndex::new(group, base_index.clone()), &scale * form);
                }

                for k in 1..n {
                    let a = 2 * k;
                    let b = a + 1;
                    let paa = sig.characters[a].eval(alpha);
                    let pba = sig.characters[b].eval(alpha);
                    let pab = &sig.characters[a].eval(beta) + &xi[a];
                    let pbb = &sig.characters[b].eval(beta) + &xi[b];
                    let group = vec_add(
                        &vec_add(&base_group, &sig.epsilon),
                        &sig.sigmas[k - 1],
                    );
                    let b00 = &paa * &pbb - &pba * &pab;
                    if !b00.is_zero() {
                        out.add_term(
                            BasisIndex::new(group.clone(), base_index.clone()),
                            &scale * b00,
                        );
                    }
                    let b10 = Rational::from(Int::from(i[a])) * &pbb
                        - Rational::from(Int::from(j[a])) * &pba;
                    if !b10.is_zero() {
                        let index = lowered(&base_index, a).expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group.clone(), index), &scale * b10);
                    }
                    let b01 = Rational::from(Int::from(j[b])) * &paa
                        - Rational::from(Int::from(i[b])) * &pab;
                    if !b01.is_zero() {
                        let index = lowered(&base_index, b).expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group.clone(), index), &scale * b01);
                    }
                    let b11 = Rational::from(Int::from(i[a]) * Int::from(j[b]))
                        - Rational::from(Int::from(i[b]) * Int::from(j[a]));
                    if !b11.is_zero() {
                        let index = lowered(&lowered(&base_index, a).unwrap(), b)
                            .expect("nonzero pair factor");
                        out.add_term(BasisIndex::new(group, index), &scale * b11);
                    }
                }
            }
        }
        out
    }

    /// `[u, w] . v - u . (w . v) + w . (u . v)`; zero exactly when the
    /// action represents the bracket on the given arguments.
    pub fn representation_residual(
        &self,
        u: &AlgebraElement,
        w: &AlgebraElement,
        v: &AlgebraElement,
    ) -> AlgebraElement {
        let direct = self.act(&self.algebra.bracket(u, w), v);
        let nested = self.act(u, &self.act(w, v)).sub(&self.act(w, &self.act(u, v)));
        direct.sub(&nested)
    }
}

/// The group shift `x^{beta, j} -> x^{beta + mu - eps, j}` extended
/// linearly.
pub fn psi_shift(algebra: &Algebra, mu: &[Int], el: &AlgebraElement) -> AlgebraElement {
    let offset = vec_sub(mu, &algebra.signature.epsilon);
    let mut out = AlgebraElement::zero();
    for (key, c) in el.terms() {
        out.add_term(
            BasisIndex::new(vec_add(&key.group, &offset), key.index.clone()),
            c.clone(),
        );
    }
    out
}

/// `psi(u . v) - [u, psi(v)]` for the shift attached to `mu`; zero for all
/// arguments exactly when `psi` intertwines the module with the bracket
/// action.
pub fn intertwiner_residual(
    action: &ModuleAction<'_>,
    mu: &[Int],
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> AlgebraElement {
    let mapped = psi_shift(action.algebra, mu, &action.act(u, v));
    let target = action.algebra.bracket(u, &psi_shift(action.algebra, mu, v));
    mapped.sub(&target)
}
