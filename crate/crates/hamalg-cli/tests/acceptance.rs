//! Acceptance gate: one test per release criterion, each printing a single
//! `criterion N: PASS`/`FAIL` line. Every algebraic check is exact; a
//! nonzero residual anywhere fails the criterion. Criteria share a global
//! lock so that runtime budgets are measured without cross-test contention.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hamalg::action::{intertwiner_residual, ModuleAction};
use hamalg::algebra::{multiply, Algebra, AlgebraElement, BasisIndex};
use hamalg::closure::{
    default_ambient, derived_ambient, derived_subalgebra_window, ideal_closure,
    submodule_closure, Window,
};
use hamalg::instances::{all_nat_instance, all_point_instance, block_instance, mixed_instance};
use hamalg::lattice::{solve_mu, Character, ModuleSignature, MuOutcome};
use hamalg::par::batch_map;
use hamalg::poly::{ContactOracle, Poly, PolyRing};
use hamalg::rational::{rat, Int, Rational};
use hamalg::sample::{sample_element, sample_monomial, seeded_rng};
use hamalg::twist::{twist, TrivialLieOracle};
use num_traits::{One, Zero};
use rand::Rng;

static GATE: Mutex<()> = Mutex::new(());

const SEED: u64 = 20260823;

/// Prints the per-criterion verdict line, then enforces it.
fn verdict(n: u32, ok: bool, elapsed: Duration, budget: Option<Duration>, detail: &str) {
    let within = budget.map_or(true, |b| elapsed <= b);
    let label = if ok && within { "PASS" } else { "FAIL" };
    match budget {
        Some(b) => println!(
            "criterion {n}: {label} ({:.1}s of {:.0}s budget; {detail})",
            elapsed.as_secs_f64(),
            b.as_secs_f64()
        ),
        None => println!(
            "criterion {n}: {label} ({:.1}s; {detail})",
            elapsed.as_secs_f64()
        ),
    }
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(
        within,
        "criterion {n} exceeded its runtime budget: {elapsed:?}"
    );
}

fn desk_instances() -> Vec<(&'static str, Algebra)> {
    vec![
        ("mixed", mixed_instance()),
        ("all_point", all_point_instance()),
        ("all_nat", all_nat_instance()),
    ]
}

fn sampling_window(alg: &Algebra) -> Window {
    Window::symmetric(alg.signature.rank, 2, 2)
}

#[test]
fn c01_bracket_antisymmetry_and_jacobi() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (_, alg) in desk_instances() {
        let window = sampling_window(&alg);
        let mut rng = seeded_rng(SEED);
        let triples: Vec<[AlgebraElement; 3]> = (0..500)
            .map(|_| {
                [0, 1, 2].map(|_| {
                    AlgebraElement::from_term(
                        sample_monomial(&mut rng, &alg.signature, &window),
                        Rational::one(),
                    )
                })
            })
            .collect();
        let residuals = batch_map(&triples, |[u, w, v]| {
            let anti = alg.bracket(u, w).add(&alg.bracket(w, u));
            let jac = alg
                .bracket(&alg.bracket(u, w), v)
                .add(&alg.bracket(&alg.bracket(w, v), u))
                .add(&alg.bracket(&alg.bracket(v, u), w));
            anti.is_zero() && jac.is_zero()
        });
        checked += residuals.len();
        failures += residuals.iter().filter(|ok| !**ok).count();
    }
    verdict(
        1,
        failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(30)),
        &format!("{checked} triples across 3 instances, {failures} nonzero residuals"),
    );
}

#[test]
fn c02_bracket_routes_agree() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (_, alg) in desk_instances() {
        let window = sampling_window(&alg);
        let mut rng = seeded_rng(SEED);
        let pairs: Vec<[AlgebraElement; 2]> = (0..1000)
            .map(|_| {
                [0, 1].map(|_| {
                    AlgebraElement::from_term(
                        sample_monomial(&mut rng, &alg.signature, &window),
                        Rational::one(),
                    )
                })
            })
            .collect();
        let agreements = batch_map(&pairs, |[u, w]| {
            alg.bracket(u, w).sub(&alg.bracket_direct(u, w)).is_zero()
        });
        checked += agreements.len();
        failures += agreements.iter().filter(|ok| !**ok).count();
    }
    verdict(
        2,
        failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(10)),
        &format!("{checked} pairs across 3 instances, {failures} disagreements"),
    );
}

#[test]
fn c03_centrality_and_quotient_invariance() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut central_failures = 0usize;
    for (_, alg) in desk_instances() {
        let central = AlgebraElement::from_term(alg.central_key(), Rational::one());
        let window = sampling_window(&alg);
        let mut rng = seeded_rng(SEED);
        for _ in 0..300 {
            let mono = AlgebraElement::from_term(
                sample_monomial(&mut rng, &alg.signature, &window),
                Rational::one(),
            );
            if !alg.bracket(&central, &mono).is_zero() {
                central_failures += 1;
            }
        }
    }

    let alg = mixed_instance();
    let action = ModuleAction::adjoint(&alg);
    let central = AlgebraElement::from_term(alg.central_key(), Rational::one());
    let window = sampling_window(&alg);
    let mut rng = seeded_rng(SEED);
    let mut quotient_failures = 0usize;
    for _ in 0..200 {
        let u = sample_element(&mut rng, &alg.signature, &window, 2);
        let v = sample_element(&mut rng, &alg.signature, &window, 2);
        let c = rat(rng.random_range(-9..=9), rng.random_range(1..=3));
        let shifted = u.add(&central.scale(&c));
        if !action.act(&shifted, &v).sub(&action.act(&u, &v)).is_zero() {
            quotient_failures += 1;
        }
    }
    verdict(
        3,
        central_failures == 0 && quotient_failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(5)),
        &format!(
            "900 centrality monomials, 200 quotient shifts; {central_failures}+{quotient_failures} failures"
        ),
    );
}

#[test]
fn c04_derivations_satisfy_leibniz_and_commute() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = mixed_instance();
    let window = sampling_window(&alg);
    let slots = alg.signature.slot_count();
    let mut rng = seeded_rng(SEED);
    let mut failures = 0usize;
    let mut checked = 0usize;
    for _ in 0..100 {
        let u = sample_element(&mut rng, &alg.signature, &window, 2);
        let w = sample_element(&mut rng, &alg.signature, &window, 2);
        for p in 0..slots {
            let lhs = alg.derive(p, &multiply(&u, &w));
            let rhs = multiply(&alg.derive(p, &u), &w).add(&multiply(&u, &alg.derive(p, &w)));
            checked += 1;
            if !lhs.sub(&rhs).is_zero() {
                failures += 1;
            }
        }
        for p in 0..slots {
            for q in (p + 1)..slots {
                let pq = alg.derive(p, &alg.derive(q, &u));
                let qp = alg.derive(q, &alg.derive(p, &u));
                checked += 1;
                if !pq.sub(&qp).is_zero() {
                    failures += 1;
                }
            }
        }
    }
    verdict(
        4,
        failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(5)),
        &format!("{checked} Leibniz and commutation checks, {failures} failures"),
    );
}

#[test]
fn c05_module_action_represents_the_bracket() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = mixed_instance();
    let window = sampling_window(&alg);
    let rank = alg.signature.rank;
    let slots = alg.signature.slot_count();

    let adjoint_sig = ModuleSignature::adjoint(&alg.signature);
    let shifted_sig = ModuleSignature::new(
        vec![Rational::zero(); slots],
        Character::new(
            (0..rank)
                .map(|i| {
                    if i == 1 {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        ),
    );
    let weight_sig = ModuleSignature::new(
        (0..slots)
            .map(|p| if p == 3 { Rational::one() } else { Rational::zero() })
            .collect(),
        Character::zero(rank),
    );

    let mut failures = 0usize;
    let mut checked = 0usize;
    for sig in [adjoint_sig, shifted_sig, weight_sig] {
        let action = ModuleAction::new(&alg, sig).expect("module signature admissible");
        let mut rng = seeded_rng(SEED);
        let triples: Vec<[AlgebraElement; 3]> = (0..500)
            .map(|_| [0, 1, 2].map(|_| sample_element(&mut rng, &alg.signature, &window, 2)))
            .collect();
        let results = batch_map(&triples, |[u, w, v]| {
            action.representation_residual(u, w, v).is_zero()
        });
        checked += results.len();
        failures += results.iter().filter(|ok| !**ok).count();
    }

    let adjoint = ModuleAction::adjoint(&alg);
    let mut rng = seeded_rng(SEED);
    let mut adjoint_failures = 0usize;
    for _ in 0..100 {
        let u = sample_element(&mut rng, &alg.signature, &window, 2);
        let v = sample_element(&mut rng, &alg.signature, &window, 2);
        if !adjoint.act(&u, &v).sub(&alg.bracket(&u, &v)).is_zero() {
            adjoint_failures += 1;
        }
    }
    verdict(
        5,
        failures == 0 && adjoint_failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(30)),
        &format!(
            "{checked} residual triples over 3 weight settings, 100 adjoint comparisons; {failures}+{adjoint_failures} failures"
        ),
    );
}

#[test]
fn c06_integral_weight_yields_an_intertwiner() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = mixed_instance();
    let rank = alg.signature.rank;
    let slots = alg.signature.slot_count();
    let module = ModuleSignature::new(
        vec![Rational::zero(); slots],
        Character::new(
            (0..rank)
                .map(|i| {
                    if i == 1 {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        ),
    );
    let mu = match solve_mu(&alg.signature, &module) {
        MuOutcome::Integral(mu) => mu,
        other => panic!("expected an integral weight, got {other:?}"),
    };
    let action = ModuleAction::new(&alg, module).expect("module signature admissible");
    let window = sampling_window(&alg);
    let mut rng = seeded_rng(SEED);
    let pairs: Vec<[AlgebraElement; 2]> = (0..500)
        .map(|_| [0, 1].map(|_| sample_element(&mut rng, &alg.signature, &window, 2)))
        .collect();
    let zeroes = batch_map(&pairs, |[u, v]| {
        intertwiner_residual(&action, &mu, u, v).is_zero()
    });
    let failures = zeroes.iter().filter(|ok| !**ok).count();

    let mut perturbed = mu.clone();
    perturbed[1] += Int::from(1);
    let control_hits = batch_map(&pairs, |[u, v]| {
        !intertwiner_residual(&action, &perturbed, u, v).is_zero()
    })
    .into_iter()
    .filter(|hit| *hit)
    .count();

    verdict(
        6,
        failures == 0 && control_hits > 0,
        start.elapsed(),
        Some(Duration::from_secs(20)),
        &format!(
            "mu = {mu:?}, 500 intertwiner pairs with {failures} nonzero; perturbed weight flags {control_hits} pairs"
        ),
    );
}

#[test]
fn c07_ideal_closures_reach_the_unit_and_cover_the_window() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = mixed_instance();
    let probe = Window::symmetric(alg.signature.rank, 1, 1);
    let max_iter = 32;
    let ambient = default_ambient(&alg.signature, &probe, max_iter);
    let mut rng = seeded_rng(SEED);
    let mut generators = Vec::new();
    while generators.len() < 20 {
        let el = sample_element(&mut rng, &alg.signature, &probe, 3);
        let class = alg.project(&el);
        if !class.is_zero() {
            generators.push(class);
        }
    }
    let mut conclusive = 0usize;
    let mut certified = 0usize;
    let mut max_iterations = 0u32;
    for class in &generators {
        let report = ideal_closure(&alg, class, &probe, &ambient, max_iter)
            .expect("closure stays inside the ambient window");
        max_iterations = max_iterations.max(report.iterations);
        let goals = report.contains_one && report.full_coverage();
        if goals || report.stabilized {
            conclusive += 1;
        }
        if goals && report.iterations <= max_iter {
            certified += 1;
        }
    }
    verdict(
        7,
        certified == 20 && conclusive == 20,
        start.elapsed(),
        Some(Duration::from_secs(120)),
        &format!(
            "{certified}/20 generators certified unit and full coverage, worst case {max_iterations} iterations"
        ),
    );
}

#[test]
fn c08_all_point_derived_window_misses_only_the_sigma_line() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = all_point_instance();
    let probe = Window::symmetric(alg.signature.rank, 1, 1);
    let ambient = derived_ambient(&alg.signature, &probe);
    let report = derived_subalgebra_window(&alg, &probe, &ambient)
        .expect("derived span stays inside the ambient window");
    let sigma_line = BasisIndex::new(
        alg.signature.sigma_total(),
        vec![0; alg.signature.slot_count()],
    );
    let codimension = report.window.len() - report.dimension;
    let ok = codimension == 1 && report.missing == vec![sigma_line];
    verdict(
        8,
        ok,
        start.elapsed(),
        Some(Duration::from_secs(60)),
        &format!(
            "codimension {codimension} over {} window classes, missing {:?}",
            report.window.len(),
            report
                .missing
                .iter()
                .map(hamalg::text::render_key)
                .collect::<Vec<_>>()
        ),
    );
}

#[test]
fn c09_weightless_module_closures_cover_the_window() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let alg = mixed_instance();
    let slots = alg.signature.slot_count();
    let module = ModuleSignature::new(
        (0..slots)
            .map(|p| if p == 3 { Rational::one() } else { Rational::zero() })
            .collect(),
        Character::zero(alg.signature.rank),
    );
    assert!(
        matches!(solve_mu(&alg.signature, &module), MuOutcome::Inconsistent),
        "the weight equations must have no solution"
    );
    let action = ModuleAction::new(&alg, module).expect("module signature admissible");
    let probe = Window::symmetric(alg.signature.rank, 1, 1);
    let max_iter = 32;
    let ambient = default_ambient(&alg.signature, &probe, max_iter);
    let mut rng = seeded_rng(SEED);
    let vectors: Vec<AlgebraElement> = (0..10)
        .map(|_| sample_element(&mut rng, &alg.signature, &probe, 3))
        .collect();
    let mut covered = 0usize;
    for v in &vectors {
        let report = submodule_closure(&action, v, &probe, &ambient, max_iter)
            .expect("closure stays inside the ambient window");
        if report.full_coverage() {
            covered += 1;
        }
    }
    verdict(
        9,
        covered == 10,
        start.elapsed(),
        Some(Duration::from_secs(120)),
        &format!("{covered}/10 vectors generate the full probe window"),
    );
}

#[test]
fn c10_twist_specializations_match_their_models() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();

    let block = block_instance();
    let oracle = TrivialLieOracle { algebra: &block };
    let one = Rational::one();
    let window = Window::symmetric(block.signature.rank, 2, 3);
    let mut rng = seeded_rng(SEED);
    let mut block_failures = 0usize;
    for _ in 0..200 {
        let u = sample_element(&mut rng, &block.signature, &window, 2);
        let w = sample_element(&mut rng, &block.signature, &window, 2);
        let v = sample_element(&mut rng, &block.signature, &window, 2);
        let jac = twist(&oracle, &one, &u, &twist(&oracle, &one, &w, &v))
            .add(&twist(&oracle, &one, &w, &twist(&oracle, &one, &v, &u)))
            .add(&twist(&oracle, &one, &v, &twist(&oracle, &one, &u, &w)));
        if !jac.is_zero() {
            block_failures += 1;
        }
    }

    let minus_two = -rat(2, 1);
    let mut contact_failures = 0usize;
    for pairs_n in [1usize, 2] {
        let ring = PolyRing::new(pairs_n, 6);
        let contact = ContactOracle { ring: ring.clone() };
        let mut rng = seeded_rng(SEED);
        for _ in 0..40 {
            let f = sample_low_poly(&mut rng, &ring, 2);
            let g = sample_low_poly(&mut rng, &ring, 2);
            let h = sample_low_poly(&mut rng, &ring, 2);
            let jac = twist(&contact, &minus_two, &f, &twist(&contact, &minus_two, &g, &h))
                .add(&twist(&contact, &minus_two, &g, &twist(&contact, &minus_two, &h, &f)))
                .add(&twist(&contact, &minus_two, &h, &twist(&contact, &minus_two, &f, &g)));
            if !jac.is_zero() {
                contact_failures += 1;
            }
        }
        for _ in 0..100 {
            let f = sample_low_poly(&mut rng, &ring, 3);
            let g = sample_low_poly(&mut rng, &ring, 3);
            let direct = ring
                .contact_bracket(&f, &g)
                .expect("sample degrees stay within the cap");
            if !twist(&contact, &minus_two, &f, &g).sub(&direct).is_zero() {
                contact_failures += 1;
            }
        }
    }
    verdict(
        10,
        block_failures == 0 && contact_failures == 0,
        start.elapsed(),
        Some(Duration::from_secs(30)),
        &format!(
            "200 block Jacobi triples ({block_failures} failures), contact checks for one and two pairs ({contact_failures} failures)"
        ),
    );
}

fn sample_low_poly(rng: &mut impl Rng, ring: &PolyRing, max_degree: u32) -> Poly {
    loop {
        let mut p = Poly::zero();
        for _ in 0..rng.random_range(1..=2) {
            let exps: Vec<u32> = loop {
                let cand: Vec<u32> = (0..ring.vars()).map(|_| rng.random_range(0..=1)).collect();
                if cand.iter().sum::<u32>() <= max_degree {
                    break cand;
                }
            };
            let mut numer = 0i64;
            while numer == 0 {
                numer = rng.random_range(-9..=9);
            }
            p.add_term(exps, rat(numer, rng.random_range(1..=3)));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn c11_machine_reports_are_reproducible() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let fixture: std::path::PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", "mixed.toml"]
        .iter()
        .collect();
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = Command::new(env!("CARGO_BIN_EXE_hamalg"))
            .args([
                "--config",
                fixture.to_str().expect("fixture path is UTF-8"),
                "--samples",
                "25",
                "--format",
                "machine",
                "check",
                "--suite",
                "jacobi",
            ])
            .output()
            .expect("binary launches");
        assert_eq!(out.status.code(), Some(0), "suite run succeeds");
        outputs.push(out.stdout);
    }
    let ok = outputs[0] == outputs[1] && !outputs[0].is_empty();
    verdict(
        11,
        ok,
        start.elapsed(),
        None,
        "two fixed-seed machine runs of the Jacobi suite are byte-identical",
    );
}
