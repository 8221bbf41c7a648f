//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails. Runtime budgets are part of the
//! criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cuntz_fock::verification::*;
use cuntz_fock::RadicalScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    report: SuiteReport,
    budget: Duration,
    elapsed: Duration,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.report.pass && self.elapsed <= self.budget
    }
}

fn run(budget_secs: u64, f: impl FnOnce() -> SuiteReport) -> Outcome {
    let start = Instant::now();
    let report = f();
    Outcome {
        report,
        budget: Duration::from_secs(budget_secs),
        elapsed: start.elapsed(),
    }
}

fn combined(name: &str, parts: Vec<SuiteReport>) -> SuiteReport {
    let mut r = SuiteReport::new(name);
    for p in parts {
        r.absorb_report(p);
    }
    r
}

fn criterion_1() -> SuiteReport {
    check_examples(6, 5)
}

fn criterion_2() -> SuiteReport {
    let mut r = check_forward_family(6, 6);
    r.absorb_report(check_forward_family(6, 7));
    r
}

fn criterion_3() -> SuiteReport {
    check_roundtrip(12, 6, 6)
}

fn criterion_4() -> SuiteReport {
    // particle number and per-grade distinctness are part of the family suite
    check_forward_family(6, 6)
}

fn criterion_5() -> SuiteReport {
    combined(
        "relations",
        vec![
            check_cuntz(3, 10),
            check_oinfty(8, 8),
            check_ccr(4, 5),
            check_car(4, 5),
            check_boson_intertwining(4, 5),
            check_fermion_intertwining(4, 5),
        ],
    )
}

fn criterion_6() -> SuiteReport {
    let cfg = SuiteConfig::default();
    let parts = ["branch-oinfty", "branch-boson", "branch-fermion"]
        .iter()
        .map(|s| run_suite(s, &cfg).expect("known suite"))
        .collect();
    combined("branching", parts)
}

fn criterion_7() -> SuiteReport {
    combined(
        "codec and oracle",
        vec![
            check_codec(14),
            check_l2_equations(12, 1 << 14),
            float_oracle_suite(4096, 200, 0x5eed),
        ],
    )
}

fn random_scalar(rng: &mut ChaCha8Rng) -> RadicalScalar {
    let terms = rng.gen_range(0..=3);
    let mut acc = RadicalScalar::zero();
    for _ in 0..terms {
        let radicand = rng.gen_range(1..=100u64);
        let num = rng.gen_range(-1_000_000i64..=1_000_000);
        let den = rng.gen_range(1i64..=1_000_000);
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        acc += &RadicalScalar::term(radicand, q);
    }
    acc
}

fn canonical(x: &RadicalScalar) -> bool {
    let mut prev = 0;
    x.terms().all(|(d, q)| {
        let ok = d > prev && cuntz_fock::scalar::is_squarefree(d) && *q.numer() != BigInt::from(0);
        prev = d;
        ok
    })
}

#[allow(clippy::eq_op)]
fn criterion_8() -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut r = Recorder::default();
    let zero = RadicalScalar::zero();
    let one = RadicalScalar::one();
    for k in 0..100_000 {
        let (a, b, c) = (
            random_scalar(&mut rng),
            random_scalar(&mut rng),
            random_scalar(&mut rng),
        );
        let (sum_ab, sum_bc) = (&a + &b, &b + &c);
        let (ab, bc) = (&a * &b, &b * &c);
        r.eq(|| format!("#{k} (a+b)+c"), &(&sum_ab + &c), &(&a + &sum_bc));
        r.eq(|| format!("#{k} a+b"), &sum_ab, &(&b + &a));
        let abc = &ab * &c;
        r.eq(|| format!("#{k} (ab)c"), &abc, &(&a * &bc));
        r.eq(|| format!("#{k} ab"), &ab, &(&b * &a));
        r.eq(
            || format!("#{k} a(b+c)"),
            &(&a * &sum_bc),
            &(&ab + &(&a * &c)),
        );
        r.eq(|| format!("#{k} a+0"), &a, &(&a + &zero));
        r.eq(|| format!("#{k} a·1"), &a, &(&a * &one));
        r.truth(|| format!("#{k} a-a"), (&a - &a).is_zero());
        r.truth(
            || format!("#{k} canonical"),
            [&sum_ab, &ab, &abc].iter().all(|x| canonical(x)),
        );
    }
    for n in 1..=100u64 {
        let root = RadicalScalar::sqrt_of_nat(n);
        r.eq(
            || format!("√{n}²"),
            &RadicalScalar::from_integer(n as i64),
            &root.square(),
        );
        r.truth(|| format!("√{n} canonical"), canonical(&root));
        for k in 1..=10u64 {
            r.eq(
                || format!("√({k}²·{n})"),
                &RadicalScalar::sqrt_of_nat(k * k * n),
                &root.scale_int(k as i64),
            );
        }
    }
    let mut report = SuiteReport::new("scalar arithmetic").param("triples", 100_000);
    report.absorb(r);
    report
}

/// Name, runtime budget in seconds, suite.
type Criterion = (&'static str, u64, fn() -> SuiteReport);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("example tables", 1, criterion_1),
        ("operational forward map", 30, criterion_2),
        ("inverse consistency", 30, criterion_3),
        ("particle number and grading", 30, criterion_4),
        ("relation suites", 60, criterion_5),
        ("branching witnesses", 60, criterion_6),
        ("codec and float oracle", 60, criterion_7),
        ("scalar arithmetic", 10, criterion_8),
    ];
    let mut all = true;
    for (k, (name, budget, f)) in criteria.into_iter().enumerate() {
        let out = run(budget, f);
        let pass = out.pass();
        all &= pass;
        println!(
            "criterion {} [{name}]: {} ({} cases, {} failures, {:.2} s of {} s)",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            out.report.cases,
            out.report.failures.len(),
            out.elapsed.as_secs_f64(),
            budget,
        );
        for f in out.report.failures.iter().take(5) {
            println!("    {}: expected {}, got {}", f.case, f.expected, f.got);
        }
        for n in out.report.notes.iter().take(8) {
            println!("    note: {n}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
