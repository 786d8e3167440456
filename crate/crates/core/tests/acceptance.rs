//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p cuntz-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuntz_core::suites::{
    check_car, check_ccr, check_cuntz, check_embedding_and_rho, check_f_closed_forms,
    check_fock_suite, check_lemma23, check_main_theorem, check_w_family, check_wedge_suite,
    run_suite,
};
use cuntz_core::{
    poly_normal_form, CheckReport, OperatorExpr, RadicalScalar, Rational, RepSpec, SuiteName,
    SuiteParams,
};

type Outcome = Result<String, String>;

fn reps(words: &[&str]) -> Vec<RepSpec> {
    words
        .iter()
        .map(|w| w.parse().expect("valid rep"))
        .collect()
}

fn params(n_max: u32, m_max: u32, depth: usize) -> SuiteParams {
    SuiteParams {
        n_max,
        m_max,
        depth,
    }
}

/// Folds reports into a one-line summary, failing on the first failed one.
fn summarize(reports: &[CheckReport]) -> Outcome {
    let mut cases = 0;
    for r in reports {
        cases += r.cases;
        if !r.passed {
            let f = &r.failures[0];
            return Err(format!(
                "{} on P({}): {} failures, first: {} on {} gives {} vs {}",
                r.suite,
                r.rep,
                r.failures.len(),
                f.identity,
                f.input,
                f.left,
                f.right
            ));
        }
    }
    Ok(format!("{cases} cases, 0 failures"))
}

fn cuntz_relations() -> Outcome {
    let reports: Vec<_> = reps(&["1", "12", "112"])
        .iter()
        .map(|r| check_cuntz(r, &params(1, 1, 6)))
        .collect();
    summarize(&reports)
}

fn car() -> Outcome {
    let reports: Vec<_> = reps(&["1", "12", "112"])
        .iter()
        .map(|r| check_car(r, &params(5, 5, 6)))
        .collect();
    let summary = summarize(&reports)?;
    // algebra level, independent of any representation
    let a = OperatorExpr::a;
    for n in 1..=4 {
        for m in 1..=4 {
            let anti = a(n) * a(m).adjoint() + a(m).adjoint() * a(n);
            let want = RadicalScalar::from_integer((n == m) as i64);
            let got = poly_normal_form(&anti, Some(6)).map_err(|e| e.to_string())?;
            if got.as_identity_multiple() != Some(want) {
                return Err(format!("normal form of {anti} is {got}"));
            }
            let plain = a(n) * a(m) + a(m) * a(n);
            if !poly_normal_form(&plain, Some(6))
                .map_err(|e| e.to_string())?
                .is_zero()
            {
                return Err(format!("normal form of {plain} is not zero"));
            }
        }
    }
    Ok(format!(
        "{summary}; algebra-level normal forms agree for n, m <= 4"
    ))
}

fn ccr() -> Outcome {
    let reports: Vec<_> = reps(&["1", "12"])
        .iter()
        .map(|r| check_ccr(r, &params(3, 3, 5)))
        .collect();
    summarize(&reports)
}

fn fermionization() -> Outcome {
    let reports: Vec<_> = reps(&["1", "12", "112"])
        .iter()
        .map(|r| check_main_theorem(r, &params(4, 4, 5)))
        .collect();
    summarize(&reports)
}

fn lemmas() -> Outcome {
    let mut reports = Vec::new();
    for r in reps(&["1", "12", "112"]) {
        let p = params(4, 4, 5);
        reports.push(check_w_family(&r, &p));
        reports.push(check_lemma23(&r, &p));
        reports.push(check_embedding_and_rho(&r, &p));
    }
    summarize(&reports)
}

fn closed_forms() -> Outcome {
    let reports: Vec<_> = reps(&["1", "12", "112"])
        .iter()
        .map(|r| check_f_closed_forms(r, &params(4, 3, 4)))
        .collect();
    summarize(&reports)
}

fn fock() -> Outcome {
    let report = check_fock_suite(&params(6, 6, 3));
    let summary = summarize(std::slice::from_ref(&report))?;
    let coverage = &report.measured["coverage"];
    Ok(format!("{summary}; coverage {coverage}"))
}

fn wedge() -> Outcome {
    let report = check_wedge_suite(&params(4, 4, 5));
    let summary = summarize(std::slice::from_ref(&report))?;
    let lambda = &report.measured["lambda"];
    for n in 1..=3 {
        let value = &lambda[n.to_string()];
        if serde_json::from_value::<RadicalScalar>(value.clone()).is_err() {
            return Err(format!(
                "b({n}) b({n})* vac is not a multiple of vac: {value}"
            ));
        }
    }
    let shown: Vec<String> = (1..=4)
        .map(|n| {
            let c: RadicalScalar =
                serde_json::from_value(lambda[n.to_string()].clone()).expect("scalar");
            format!("lambda_{n} = {c}")
        })
        .collect();
    Ok(format!(
        "{summary}; {} (claimed value 2, reported only)",
        shown.join(", ")
    ))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> RadicalScalar {
    const RADICANDS: [u128; 7] = [1, 2, 3, 5, 6, 7, 10];
    let mut out = RadicalScalar::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let d = RADICANDS[rng.gen_range(0..RADICANDS.len())];
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=12);
        let q = Rational::new(BigInt::from(num), BigInt::from(den));
        out = out + RadicalScalar::radical(d, q);
    }
    out
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()))
}

fn scalar_field() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let one = RadicalScalar::one();
    let zero = RadicalScalar::zero();
    let cases = 10_000;
    for i in 0..cases {
        let (a, b, c) = (
            random_scalar(&mut rng),
            random_scalar(&mut rng),
            random_scalar(&mut rng),
        );
        let checks = [
            ("a + b = b + a", &a + &b == &b + &a),
            ("a b = b a", &a * &b == &b * &a),
            (
                "(a + b) + c = a + (b + c)",
                &(&a + &b) + &c == &a + &(&b + &c),
            ),
            ("(a b) c = a (b c)", &(&a * &b) * &c == &a * &(&b * &c)),
            (
                "a (b + c) = a b + a c",
                &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            ),
            ("a + 0 = a", &a + &zero == a),
            ("a 1 = a", &a * &one == a),
            ("a + (-a) = 0", (&a + &(-a.clone())).is_zero()),
            ("a 0 = 0", (&a * &zero).is_zero()),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!(
                "case {i}: {name} fails for a = {a}, b = {b}, c = {c}"
            ));
        }
        let (x, y) = (a.to_f64(), b.to_f64());
        if !close((&a * &b).to_f64(), x * y) || !close((&a + &b).to_f64(), x + y) {
            return Err(format!(
                "case {i}: float cross-check fails for a = {a}, b = {b}"
            ));
        }
    }
    Ok(format!(
        "{cases} random triples, 9 ring axioms each, float agreement within 1e-9"
    ))
}

fn determinism() -> Outcome {
    let rep: RepSpec = "12".parse().expect("valid rep");
    let p = params(3, 3, 4);
    for name in SuiteName::ALL {
        let first = run_suite(name, &rep, &p).to_json();
        let second = run_suite(name, &rep, &p).to_json();
        if first != second {
            return Err(format!("{name}: two runs differ"));
        }
    }
    Ok(format!(
        "{} suites produce byte-identical JSON across two runs",
        SuiteName::ALL.len()
    ))
}

struct Criterion {
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            title: "Cuntz relations on P(1), P(12), P(112), depth 6",
            limit: secs(5),
            run: cuntz_relations,
        },
        Criterion {
            title: "CAR, n,m <= 5, depth 6, three representations",
            limit: secs(30),
            run: car,
        },
        Criterion {
            title: "CCR, n,m <= 3, depth 5, P(1) and P(12)",
            limit: secs(60),
            run: ccr,
        },
        Criterion {
            title: "b_n = t2* F_n, n <= 4, depth 5, three representations",
            limit: secs(60),
            run: fermionization,
        },
        Criterion {
            title: "rho, s_n, W family and X/Y identities, depth 5",
            limit: secs(30),
            run: lemmas,
        },
        Criterion {
            title: "F1/F2 fermion series and rho(W_m), m <= 3, depth 4",
            limit: secs(30),
            run: closed_forms,
        },
        Criterion {
            title: "Fock vacuum in P(1), n <= 6",
            limit: secs(5),
            run: fock,
        },
        Criterion {
            title: "two-sided vacuum in P(12)",
            limit: secs(30),
            run: wedge,
        },
        Criterion {
            title: "scalar field ring axioms",
            limit: secs(5),
            run: scalar_field,
        },
        Criterion {
            title: "determinism of suite reports",
            limit: None,
            run: determinism,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timed_out = c.limit.is_some_and(|l| elapsed > l);
        let limit = c.limit.map_or_else(
            || "no limit".to_string(),
            |l| format!("limit {} s", l.as_secs()),
        );
        let (status, detail) = match (&outcome, timed_out) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {}: {detail} ({:.2} s, {limit})",
            i + 1,
            c.title,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
