//! The exact check suites and closure probes behind the CLI commands.
//!
//! Every suite samples its inputs up front from one seeded stream, runs the
//! pure residual computations through `batch_map`, and reports one record
//! per check in sample order, so reports are identical across thread counts.

use hamalg::action::{intertwiner_residual, ModuleAction};
use hamalg::algebra::{AlgebraElement, BasisIndex};
use hamalg::closure::{
    default_ambient, derived_ambient, derived_subalgebra_window, ideal_closure,
    submodule_closure, ClosureError, ClosureReport,
};
use hamalg::lattice::{
    solve_mu, validate_module_signature, validate_signature, format_vec, ModuleSignature,
    MuOutcome, ValidationReport,
};
use hamalg::par::batch_map;
use hamalg::poly::{ContactOracle, Poly, PolyRing};
use hamalg::rational::{format_rational, rat, Rational};
use hamalg::sample::{sample_element, seeded_rng};
use hamalg::text::{parse_element, render_element};
use hamalg::twist::{twist, verify_oracle, InnerPoissonOracle, TrivialLieOracle};
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::config::Built;
use crate::report::{CertificatePair, CheckRecord, Status};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("closure aborted: {0}")]
    Closure(#[from] ClosureError),
}

fn input(msg: impl Into<String>) -> CommandError {
    CommandError::Input(msg.into())
}

fn zero_record(suite: &str, case: String, residual: &AlgebraElement, witness: String) -> CheckRecord {
    let ok = residual.is_zero();
    let status = if ok { Status::Pass } else { Status::Fail };
    let mut record = CheckRecord::new(suite, case, status).residual(ok);
    if !ok {
        record = record.detail(format!("{witness}, residual = {}", render_element(residual)));
    }
    record
}

fn validation_records(suite: &str, report: &ValidationReport) -> Vec<CheckRecord> {
    report
        .conditions
        .iter()
        .map(|c| {
            let status = if c.passed { Status::Pass } else { Status::Fail };
            let mut record = CheckRecord::new(suite, c.name.to_string(), status);
            if !c.passed {
                record = record.detail(c.detail.clone());
            }
            record
        })
        .collect()
}

/// `validate`: every signature condition, and the module conditions when a
/// module section is present.
pub fn cmd_validate(built: &Built) -> Vec<CheckRecord> {
    let mut records = validation_records("signature", &validate_signature(&built.algebra.signature));
    if let Some(module) = &built.module {
        records.extend(validation_records(
            "module",
            &validate_module_signature(&built.algebra.signature, module),
        ));
    }
    records
}

/// `bracket`: both bracket constructions on the given elements, with their
/// agreement as the check.
pub fn cmd_bracket(built: &Built, lhs: &str, rhs: &str) -> Result<Vec<CheckRecord>, CommandError> {
    let alg = &built.algebra;
    let parse = |side: &str, text: &str| {
        let el = parse_element(text).map_err(|e| input(format!("{side}: {e}")))?;
        alg.check_element(&el)
            .map_err(|e| input(format!("{side}: {e}")))?;
        Ok::<AlgebraElement, CommandError>(el)
    };
    let u = parse("lhs", lhs)?;
    let w = parse("rhs", rhs)?;
    let by_derivations = alg.bracket(&u, &w);
    let by_constants = alg.bracket_direct(&u, &w);
    let residual = by_derivations.sub(&by_constants);
    let mut record = zero_record(
        "bracket",
        "agreement".into(),
        &residual,
        format!("lhs = {lhs}, rhs = {rhs}"),
    );
    record = record.detail(format!("result = {}", render_element(&by_derivations)));
    Ok(vec![record])
}

/// `check --suite jacobi`: antisymmetry and the Jacobi identity on sampled
/// triples of the full bracket.
pub fn suite_jacobi(built: &Built) -> Vec<CheckRecord> {
    let alg = &built.algebra;
    let mut rng = seeded_rng(built.run.seed);
    let triples: Vec<[AlgebraElement; 3]> = (0..built.run.samples)
        .map(|_| {
            [
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
            ]
        })
        .collect();
    let residuals = batch_map(&triples, |[u, v, w]| {
        let anti = alg.bracket(u, v).add(&alg.bracket(v, u));
        let jac = alg
            .bracket(&alg.bracket(u, v), w)
            .add(&alg.bracket(&alg.bracket(v, w), u))
            .add(&alg.bracket(&alg.bracket(w, u), v));
        (anti, jac)
    });
    let mut records = Vec::new();
    for (i, ([u, v, w], (anti, jac))) in triples.iter().zip(&residuals).enumerate() {
        let witness = format!("u = {u}, v = {v}, w = {w}");
        records.push(zero_record("jacobi", format!("antisymmetry/{i}"), anti, witness.clone()));
        records.push(zero_record("jacobi", format!("jacobi/{i}"), jac, witness));
    }
    records
}

/// `check --suite leibniz`: each derivation against the product, and
/// pairwise commutation of the derivations.
pub fn suite_leibniz(built: &Built) -> Vec<CheckRecord> {
    let alg = &built.algebra;
    let slots = alg.signature.slot_count();
    let mut rng = seeded_rng(built.run.seed);
    let pairs: Vec<[AlgebraElement; 2]> = (0..built.run.samples)
        .map(|_| {
            [
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
            ]
        })
        .collect();
    let residuals = batch_map(&pairs, |[u, v]| {
        let product = hamalg::algebra::multiply(u, v);
        let leibniz: Vec<AlgebraElement> = (0..slots)
            .map(|p| {
                alg.derive(p, &product)
                    .sub(&hamalg::algebra::multiply(&alg.derive(p, u), v))
                    .sub(&hamalg::algebra::multiply(u, &alg.derive(p, v)))
            })
            .collect();
        let commute: Vec<AlgebraElement> = (0..slots)
            .flat_map(|p| (p + 1..slots).map(move |q| (p, q)))
            .map(|(p, q)| {
                alg.derive(p, &alg.derive(q, u)).sub(&alg.derive(q, &alg.derive(p, u)))
            })
            .collect();
        (leibniz, commute)
    });
    let mut records = Vec::new();
    for (i, ([u, v], (leibniz, commute))) in pairs.iter().zip(&residuals).enumerate() {
        for (p, r) in leibniz.iter().enumerate() {
            records.push(zero_record(
                "leibniz",
                format!("leibniz/d{p}/{i}"),
                r,
                format!("u = {u}, v = {v}"),
            ));
        }
        for ((p, q), r) in (0..slots)
            .flat_map(|p| (p + 1..slots).map(move |q| (p, q)))
            .zip(commute)
        {
            records.push(zero_record(
                "leibniz",
                format!("commute/d{p}d{q}/{i}"),
                r,
                format!("u = {u}"),
            ));
        }
    }
    records
}

/// `check --suite center`: the distinguished monomial brackets to zero, and
/// the module action cannot see central shifts of its first argument.
pub fn suite_center(built: &Built) -> Result<Vec<CheckRecord>, CommandError> {
    let alg = &built.algebra;
    let action = module_action(built)?;
    let central = AlgebraElement::from_term(alg.central_key(), Rational::one());
    let mut rng = seeded_rng(built.run.seed);
    let pairs: Vec<([AlgebraElement; 2], Rational)> = (0..built.run.samples)
        .map(|_| {
            let u = sample_element(&mut rng, &alg.signature, &built.probe, 2);
            let v = sample_element(&mut rng, &alg.signature, &built.probe, 2);
            let c = rat(rng.random_range(1..=9), rng.random_range(1..=3));
            ([u, v], c)
        })
        .collect();
    let residuals = batch_map(&pairs, |([u, v], c)| {
        let central_bracket = alg.bracket(&central, v);
        let shifted = action
            .act(&u.add(&central.scale(c)), v)
            .sub(&action.act(u, v));
        (central_bracket, shifted)
    });
    let mut records = Vec::new();
    for (i, (([u, v], c), (central_bracket, shifted))) in pairs.iter().zip(&residuals).enumerate() {
        records.push(zero_record(
            "center",
            format!("central_bracket/{i}"),
            central_bracket,
            format!("v = {v}"),
        ));
        records.push(zero_record(
            "center",
            format!("quotient_invariant/{i}"),
            shifted,
            format!("u = {u}, v = {v}, c = {}", format_rational(c)),
        ));
    }
    Ok(records)
}

fn module_action<'a>(built: &'a Built) -> Result<ModuleAction<'a>, CommandError> {
    match &built.module {
        None => Ok(ModuleAction::adjoint(&built.algebra)),
        Some(module) => ModuleAction::new(&built.algebra, module.clone())
            .map_err(|e| input(format!("module section rejected: {e}"))),
    }
}

/// `check --suite representation`: the action represents the bracket on
/// sampled triples; under adjoint weights it must equal the bracket itself.
pub fn suite_representation(built: &Built) -> Result<Vec<CheckRecord>, CommandError> {
    let alg = &built.algebra;
    let action = module_action(built)?;
    let adjoint = ModuleSignature::adjoint(&alg.signature);
    let is_adjoint = match &built.module {
        None => true,
        Some(m) => m.xi == adjoint.xi && m.f.is_zero(),
    };
    let mut rng = seeded_rng(built.run.seed);
    let triples: Vec<[AlgebraElement; 3]> = (0..built.run.samples)
        .map(|_| {
            [
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
            ]
        })
        .collect();
    let residuals = batch_map(&triples, |[u, w, v]| {
        let rep = action.representation_residual(u, w, v);
        let adj = is_adjoint.then(|| action.act(u, v).sub(&alg.bracket(u, v)));
        (rep, adj)
    });
    let mut records = Vec::new();
    for (i, ([u, w, v], (rep, adj))) in triples.iter().zip(&residuals).enumerate() {
        records.push(zero_record(
            "representation",
            format!("triple/{i}"),
            rep,
            format!("u = {u}, w = {w}, v = {v}"),
        ));
        if let Some(adj) = adj {
            records.push(zero_record(
                "representation",
                format!("matches_adjoint/{i}"),
                adj,
                format!("u = {u}, v = {v}"),
            ));
        }
    }
    Ok(records)
}

fn law_records(suite: &str, prefix: &str, reports: Vec<hamalg::twist::LawReport>) -> Vec<CheckRecord> {
    reports
        .into_iter()
        .map(|r| {
            let status = if r.passed { Status::Pass } else { Status::Fail };
            let mut record = CheckRecord::new(suite, format!("{prefix}law/{}", r.law), status);
            if !r.passed {
                record = record.detail(r.detail);
            }
            record
        })
        .collect()
}

/// `check --suite twist`: the oracle laws of the inner structure, and the
/// twist of the inner bracket at one against the full bracket.
pub fn suite_twist(built: &Built) -> Vec<CheckRecord> {
    let alg = &built.algebra;
    let oracle = InnerPoissonOracle { algebra: alg };
    let mut rng = seeded_rng(built.run.seed);
    let law_samples: Vec<AlgebraElement> = (0..5)
        .map(|_| sample_element(&mut rng, &alg.signature, &built.probe, 2))
        .collect();
    let mut records = law_records("twist", "", verify_oracle(&oracle, &law_samples));
    let pairs: Vec<[AlgebraElement; 2]> = (0..built.run.samples)
        .map(|_| {
            [
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
            ]
        })
        .collect();
    let one = Rational::one();
    let residuals = batch_map(&pairs, |[u, v]| {
        twist(&oracle, &one, u, v).sub(&alg.bracket(u, v))
    });
    for (i, ([u, v], r)) in pairs.iter().zip(&residuals).enumerate() {
        records.push(zero_record(
            "twist",
            format!("twist_equals_bracket/{i}"),
            r,
            format!("u = {u}, v = {v}"),
        ));
    }
    records
}

fn sample_poly(rng: &mut impl Rng, ring: &PolyRing, max_terms: usize, max_degree: u32) -> Poly {
    loop {
        let terms = rng.random_range(1..=max_terms);
        let mut p = Poly::zero();
        for _ in 0..terms {
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

fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms()
        .map(|(e, c)| {
            let vars: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            format!("{} * z[{}]", format_rational(c), vars.join(","))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `check --suite contact`: for one and two symplectic pairs at degree cap
/// six, the Poisson oracle laws and the twist at minus two against the
/// contact bracket.
pub fn suite_contact(built: &Built) -> Vec<CheckRecord> {
    let mut rng = seeded_rng(built.run.seed);
    let mut records = Vec::new();
    let minus_two = -Rational::from(hamalg::rational::Int::from(2));
    for pairs_n in [1usize, 2] {
        let oracle = ContactOracle { ring: PolyRing::new(pairs_n, 6) };
        // The oracle laws form triple products, so law samples stay at a
        // third of the cap while pairwise twist samples may use half.
        let law_degree = oracle.ring.cap / 3;
        let pair_degree = oracle.ring.cap / 2;
        let law_samples: Vec<Poly> = (0..4)
            .map(|_| sample_poly(&mut rng, &oracle.ring, 2, law_degree))
            .collect();
        records.extend(law_records(
            "contact",
            &format!("n{pairs_n}/"),
            verify_oracle(&oracle, &law_samples),
        ));
        let sampled: Vec<[Poly; 2]> = (0..built.run.samples)
            .map(|_| {
                [
                    sample_poly(&mut rng, &oracle.ring, 2, pair_degree),
                    sample_poly(&mut rng, &oracle.ring, 2, pair_degree),
                ]
            })
            .collect();
        let residuals = batch_map(&sampled, |[f, g]| {
            twist(&oracle, &minus_two, f, g).sub(
                &oracle
                    .ring
                    .contact_bracket(f, g)
                    .expect("sample degrees stay within the cap"),
            )
        });
        for (i, ([f, g], r)) in sampled.iter().zip(&residuals).enumerate() {
            let ok = r.is_zero();
            let status = if ok { Status::Pass } else { Status::Fail };
            let mut record = CheckRecord::new(
                "contact",
                format!("n{pairs_n}/twist_equals_contact/{i}"),
                status,
            )
            .residual(ok);
            if !ok {
                record = record.detail(format!(
                    "f = {}, g = {}, residual = {}",
                    render_poly(f),
                    render_poly(g),
                    render_poly(r)
                ));
            }
            records.push(record);
        }
    }
    records
}

/// `check --suite block`: on a one-pair zero-form signature, Jacobi for the
/// bracket, the trivial oracle laws, and the twist at one against the
/// bracket.
pub fn suite_block(built: &Built) -> Result<Vec<CheckRecord>, CommandError> {
    let alg = &built.algebra;
    if alg.signature.pair_count() != 1 {
        return Err(input("block suite needs a single derivation pair"));
    }
    if alg.signature.phi.matrix().iter().any(|row| row.iter().any(|v| !v.is_zero())) {
        return Err(input("block suite needs the zero skew form"));
    }
    let oracle = TrivialLieOracle { algebra: alg };
    let mut rng = seeded_rng(built.run.seed);
    let law_samples: Vec<AlgebraElement> = (0..5)
        .map(|_| sample_element(&mut rng, &alg.signature, &built.probe, 2))
        .collect();
    let mut records = law_records("block", "", verify_oracle(&oracle, &law_samples));
    let one = Rational::one();
    let triples: Vec<[AlgebraElement; 3]> = (0..built.run.samples)
        .map(|_| {
            [
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
                sample_element(&mut rng, &alg.signature, &built.probe, 2),
            ]
        })
        .collect();
    let residuals = batch_map(&triples, |[u, v, w]| {
        let jac = alg
            .bracket(&alg.bracket(u, v), w)
            .add(&alg.bracket(&alg.bracket(v, w), u))
            .add(&alg.bracket(&alg.bracket(w, u), v));
        let tw = twist(&oracle, &one, u, v).sub(&alg.bracket(u, v));
        (jac, tw)
    });
    for (i, ([u, v, w], (jac, tw))) in triples.iter().zip(&residuals).enumerate() {
        records.push(zero_record(
            "block",
            format!("jacobi/{i}"),
            jac,
            format!("u = {u}, v = {v}, w = {w}"),
        ));
        records.push(zero_record(
            "block",
            format!("twist_equals_bracket/{i}"),
            tw,
            format!("u = {u}, v = {v}"),
        ));
    }
    Ok(records)
}

fn certificate_pairs(report: &ClosureReport) -> Option<Vec<CertificatePair>> {
    report.certificate.as_ref().map(|cert| {
        cert.iter()
            .map(|term| CertificatePair {
                coefficient: format_rational(&term.coefficient),
                path: term.description.clone(),
            })
            .collect()
    })
}

fn closure_record(suite: &str, case: String, report: &ClosureReport, require_one: bool) -> CheckRecord {
    let goals = report.full_coverage() && (!require_one || report.contains_one);
    let status = if goals {
        Status::Pass
    } else if report.stabilized {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    let mut record = CheckRecord::new(suite, case, status).residual(goals);
    if let Some(pairs) = certificate_pairs(report) {
        record = record.certificate(pairs);
    }
    record.detail(format!(
        "iterations {}, dimension {}, coverage {}/{}{}{}",
        report.iterations,
        report.dimension,
        report.covered,
        report.window_size,
        if require_one {
            if report.contains_one { ", contains one" } else { ", missing one" }
        } else {
            ""
        },
        if report.stabilized { ", stabilized" } else { "" },
    ))
}

/// `simplicity`: ideal closures from seeded noncentral generators, or the
/// pairwise derived span against the sigma line when every slot is pinned.
pub fn cmd_simplicity(built: &Built, generators: usize) -> Result<Vec<CheckRecord>, CommandError> {
    if generators == 0 {
        return Err(CommandError::Input("--generators must be at least 1".into()));
    }
    let alg = &built.algebra;
    if alg.signature.all_point() {
        let ambient = derived_ambient(&alg.signature, &built.probe);
        let report = derived_subalgebra_window(alg, &built.probe, &ambient)?;
        let sigma = alg.signature.sigma_total();
        let expected_missing =
            vec![BasisIndex::new(sigma.clone(), vec![0; alg.signature.slot_count()])];
        let ok = report.missing == expected_missing;
        let status = if ok { Status::Pass } else { Status::Fail };
        let record = CheckRecord::new("simplicity", "derived_window_misses_sigma_line", status)
            .residual(ok)
            .detail(format!(
                "window {}, contained {}, missing [{}], sigma line {}",
                report.window.len(),
                report.dimension,
                report
                    .missing
                    .iter()
                    .map(hamalg::text::render_key)
                    .collect::<Vec<_>>()
                    .join(", "),
                hamalg::text::render_key(&expected_missing[0]),
            ));
        return Ok(vec![record]);
    }

    let ambient = default_ambient(&alg.signature, &built.probe, built.run.max_iter);
    let mut rng = seeded_rng(built.run.seed);
    let mut records = Vec::new();
    for i in 0..generators {
        let gen = loop {
            let el = sample_element(&mut rng, &alg.signature, &built.probe, 3);
            let q = alg.project(&el);
            if !q.representative().is_zero() {
                break q;
            }
        };
        let case = format!("generator/{i}");
        let seed_text = render_element(gen.representative());
        let report = ideal_closure(alg, &gen, &built.probe, &ambient, built.run.max_iter)?;
        let mut record = closure_record("simplicity", case, &report, true);
        record.detail = format!("seed {seed_text}: {}", record.detail);
        records.push(record);
    }
    Ok(records)
}

/// `irreducibility`: when the weight equations have a lattice solution the
/// shift intertwiner is checked on samples; otherwise submodule closures
/// from seeded nonzero vectors must cover the window.
pub fn cmd_irreducibility(built: &Built, vectors: usize) -> Result<Vec<CheckRecord>, CommandError> {
    if vectors == 0 {
        return Err(CommandError::Input("--vectors must be at least 1".into()));
    }
    let alg = &built.algebra;
    let module = built
        .module
        .as_ref()
        .ok_or_else(|| input("irreducibility needs a [module] section"))?;
    let action = module_action(built)?;
    let mut records = Vec::new();
    match solve_mu(&alg.signature, module) {
        MuOutcome::Integral(mu) => {
            records.push(
                CheckRecord::new("irreducibility", "mu_exists", Status::Pass)
                    .detail(format!("mu = {}, module is a shifted adjoint picture", format_vec(&mu))),
            );
            let mut rng = seeded_rng(built.run.seed);
            let sampled: Vec<[AlgebraElement; 2]> = (0..built.run.samples)
                .map(|_| {
                    [
                        sample_element(&mut rng, &alg.signature, &built.probe, 2),
                        sample_element(&mut rng, &alg.signature, &built.probe, 2),
                    ]
                })
                .collect();
            let residuals = batch_map(&sampled, |[u, v]| intertwiner_residual(&action, &mu, u, v));
            for (i, ([u, v], r)) in sampled.iter().zip(&residuals).enumerate() {
                records.push(zero_record(
                    "irreducibility",
                    format!("intertwiner/{i}"),
                    r,
                    format!("u = {u}, v = {v}"),
                ));
            }
        }
        outcome => {
            let why = match outcome {
                MuOutcome::NonIntegral(sol) => format!(
                    "weight equations solve only rationally: ({})",
                    sol.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                ),
                _ => "weight equations are inconsistent".to_string(),
            };
            records.push(
                CheckRecord::new("irreducibility", "mu_absent", Status::Pass).detail(why),
            );
            let ambient = default_ambient(&alg.signature, &built.probe, built.run.max_iter);
            let mut rng = seeded_rng(built.run.seed);
            for i in 0..vectors {
                let v = sample_element(&mut rng, &alg.signature, &built.probe, 3);
                let case = format!("vector/{i}");
                let seed_text = render_element(&v);
                let report = submodule_closure(&action, &v, &built.probe, &ambient, built.run.max_iter)?;
                let mut record = closure_record("irreducibility", case, &report, false);
                record.detail = format!("seed {seed_text}: {}", record.detail);
                records.push(record);
            }
        }
    }
    Ok(records)
}
