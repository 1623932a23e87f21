//! Seeded sampling of window monomials and elements.
//!
//! Everything funnels through one ChaCha stream so a (seed, samples) pair
//! pins down every check suite input exactly, across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, BasisIndex};
use crate::closure::Window;
use crate::lattice::{AlgebraSignature, SemigroupSlot};
use crate::rational::{rat, Int};
use num_traits::ToPrimitive;

/// The stream used for all sampled checks.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform window monomial compatible with the signature's slot masks.
pub fn sample_monomial(rng: &mut impl Rng, sig: &AlgebraSignature, window: &Window) -> BasisIndex {
    let group: Vec<Int> = window
        .bounds()
        .iter()
        .map(|(lo, hi)| {
            let lo = lo.to_i64().expect("window bound fits machine word");
            let hi = hi.to_i64().expect("window bound fits machine word");
            Int::from(rng.random_range(lo..=hi))
        })
        .collect();
    let cap = window.degree_cap();
    let index: Vec<u32> = loop {
        let candidate: Vec<u32> = sig
            .slots
            .iter()
            .map(|slot| match slot {
                SemigroupSlot::Point => 0,
                SemigroupSlot::Nat => rng.random_range(0..=cap),
            })
            .collect();
        if candidate.iter().sum::<u32>() <= cap {
            break candidate;
        }
    };
    BasisIndex::new(group, index)
}

/// Random nonzero element with up to `max_terms` window monomials and small
/// nonzero rational coefficients.
pub fn sample_element(
    rng: &mut impl Rng,
    sig: &AlgebraSignature,
    window: &Window,
    max_terms: usize,
) -> AlgebraElement {
    loop {
        let terms = rng.random_range(1..=max_terms.max(1));
        let mut el = AlgebraElement::zero();
        for _ in 0..terms {
            let key = sample_monomial(rng, sig, window);
            let mut numer = 0i64;
            while numer == 0 {
                numer = rng.random_range(-9..=9);
            }
            let denom = rng.random_range(1..=3);
            el.add_term(key, rat(numer, denom));
        }
        if !el.is_zero() {
            return el;
        }
    }
}
