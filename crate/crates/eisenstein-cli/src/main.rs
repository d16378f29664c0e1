//! `eis` — exact Eisenstein-integer arithmetic from the shell.
//!
//! Literals use `w` for ω: `7`, `-3w`, `2+w`, `5-4w`. Every subcommand
//! accepts `--json` for machine-readable output, with big integers encoded
//! as decimal strings and Eisenstein values as `{"a": "...", "b": "..."}`.
//!
//! Exit codes: 0 success/verified, 1 failed verification, found
//! counterexample, or exhausted effort budget, 2 malformed input.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use eisenstein::bounds::sample_geom_bounds;
use eisenstein::divisors::sigma_of;
use eisenstein::eint::EInt;
use eisenstein::error::Error;
use eisenstein::mersenne::{closed_form, closed_form_norm, mersenne, omega_plus_two};
use eisenstein::perfect::{
    check_two_mersenne_obstruction, construct_candidate, search_norm_perfect_with, verify_with,
    EuclidEulerOutcome, PerfectVerdict,
};
use eisenstein::primes::{factor_with, Confidence, FactorConfig, Factorization};

#[derive(Parser)]
#[command(
    name = "eis",
    version,
    about = "Exact arithmetic and perfect-number search in Z[w]"
)]
struct Cli {
    /// Emit one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Error exponent for probabilistic primality: error probability <= 2^-E
    #[arg(long, global = true, default_value_t = 128)]
    mr_exponent: u32,

    /// Iteration budget for rho factoring of stubborn cofactors
    #[arg(long, global = true, default_value_t = 8_000_000)]
    rho_budget: u64,

    /// Largest admissible --bound for search
    #[arg(long, global = true, default_value_t = 10_000_000)]
    search_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Norm a^2 - ab + b^2 of an Eisenstein integer
    Norm {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// First-sextant associate and the unit reaching it
    Canon {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Sextant index (1..=6) of a nonzero element
    Sextant {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Factorization into canonical first-sextant primes
    Factor {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Complex sum of divisors
    Sigma {
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
    /// Mersenne number M_k = sigma(tau^(k-1)) for a prime tau
    Mersenne {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        k: u32,
    },
    /// Closed-form M_k / A_k table for tau = 2+w, cross-checked against
    /// direct computation
    Table {
        #[arg(long)]
        kmax: u32,
    },
    /// Verify sigma(eta) = tau*eta and N(sigma(eta)) = N(tau*eta)
    Verify {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        eta: String,
    },
    /// Build the candidate tau^(p-1)*M_p (or its conjugate form)
    Construct {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        p: u32,
        /// Use conj(M_p) in place of M_p
        #[arg(long)]
        conj: bool,
    },
    /// Check the Euclid-Euler construction for every gated prime p <= pmax
    /// (tau = 2+w)
    EuclidEuler {
        #[arg(long)]
        pmax: u32,
    },
    /// Exhaustive norm-perfect search over first-sextant multiples of tau
    Search {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        bound: u64,
    },
    /// Randomized exact check of the geometric-sum norm bounds
    CheckBound {
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0x0b0d)]
        seed: u64,
    },
    /// Confirm 2^k - 1 is never an Eisenstein prime for 2 <= k <= kmax
    CheckObstruction {
        #[arg(long)]
        kmax: u32,
    },
}

fn main() {
    // die quietly when a downstream pipe closes (e.g. `eis table | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    if cli.mr_exponent < 64 {
        eprintln!("error: --mr-exponent must be at least 64");
        return 2;
    }
    let config = FactorConfig {
        rho_budget: cli.rho_budget,
        mr_rounds: cli.mr_exponent.div_ceil(2),
        ..FactorConfig::default()
    };
    match dispatch(&cli, &config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::FactorBudget(_) | Error::BudgetExceeded(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli, config: &FactorConfig) -> Result<i32, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Norm { eta } => {
            let eta: EInt = eta.parse()?;
            let norm = eta.norm();
            emit(
                json,
                json!({"eta": eint_json(&eta), "norm": norm.to_string()}),
                || println!("{norm}"),
            );
            Ok(0)
        }
        Command::Canon { eta } => {
            let eta: EInt = eta.parse()?;
            let (unit, canonical) = eta.canonicalize()?;
            emit(
                json,
                json!({
                    "eta": eint_json(&eta),
                    "unit": eint_json(&unit.to_eint()),
                    "canonical": eint_json(&canonical),
                }),
                || println!("unit={unit} canonical={canonical}"),
            );
            Ok(0)
        }
        Command::Sextant { eta } => {
            let eta: EInt = eta.parse()?;
            let sextant = eta.sextant()?;
            emit(
                json,
                json!({"eta": eint_json(&eta), "sextant": sextant.index()}),
                || println!("{sextant}"),
            );
            Ok(0)
        }
        Command::Factor { eta } => {
            let eta: EInt = eta.parse()?;
            let f = factor_with(&eta, config)?;
            emit(
                json,
                json!({
                    "eta": eint_json(&eta),
                    "unit": eint_json(&f.unit.to_eint()),
                    "factors": f.factors.iter().map(|(p, e)| {
                        json!({"prime": eint_json(p), "exponent": e})
                    }).collect::<Vec<_>>(),
                    "confidence": f.confidence.to_string(),
                }),
                || {
                    println!(
                        "{}{}",
                        format_factorization(&f),
                        confidence_marker(f.confidence)
                    )
                },
            );
            Ok(0)
        }
        Command::Sigma { eta } => {
            let eta: EInt = eta.parse()?;
            if eta.is_zero() {
                return Err(Error::ZeroOperand("sigma"));
            }
            let f = factor_with(&eta, config)?;
            let sigma = sigma_of(&f);
            emit(
                json,
                json!({
                    "eta": eint_json(&eta),
                    "sigma": eint_json(&sigma),
                    "confidence": f.confidence.to_string(),
                }),
                || println!("{sigma}{}", confidence_marker(f.confidence)),
            );
            Ok(0)
        }
        Command::Mersenne { tau, k } => {
            let tau: EInt = tau.parse()?;
            let record = mersenne(&tau, *k)?;
            emit(
                json,
                json!({
                    "tau": eint_json(&record.tau),
                    "k": record.k,
                    "m": eint_json(&record.m),
                    "a_k": record.a_k.to_string(),
                    "is_prime": record.prime_status.is_prime,
                    "confidence": record.prime_status.confidence.to_string(),
                }),
                || {
                    println!("M_{k} = {}", record.m);
                    println!("A_{k} = {}", record.a_k);
                    println!(
                        "prime: {}{}",
                        if record.prime_status.is_prime {
                            "yes"
                        } else {
                            "no"
                        },
                        confidence_marker(record.prime_status.confidence)
                    );
                },
            );
            Ok(0)
        }
        Command::Table { kmax } => {
            let tau = omega_plus_two();
            let mut rows = Vec::new();
            let mut all_consistent = true;
            for k in 1..=*kmax {
                let record = mersenne(&tau, k)?;
                let consistent = record.m == closed_form(k) && record.a_k == closed_form_norm(k);
                all_consistent &= consistent;
                rows.push((k, record, consistent));
            }
            emit(
                json,
                json!({
                    "kmax": kmax,
                    "consistent": all_consistent,
                    "rows": rows.iter().map(|(k, r, ok)| json!({
                        "k": k,
                        "m": eint_json(&r.m),
                        "a_k": r.a_k.to_string(),
                        "is_prime": r.prime_status.is_prime,
                        "consistent": ok,
                    })).collect::<Vec<_>>(),
                }),
                || {
                    for (k, r, ok) in &rows {
                        println!(
                            "k={k:<3} M_k={:<24} A_k={:<16} prime={}{}",
                            r.m.to_string(),
                            r.a_k.to_string(),
                            if r.prime_status.is_prime {
                                "yes"
                            } else {
                                "no "
                            },
                            if *ok { "" } else { "  CLOSED-FORM MISMATCH" },
                        );
                    }
                },
            );
            Ok(if all_consistent { 0 } else { 1 })
        }
        Command::Verify { tau, eta } => {
            let tau: EInt = tau.parse()?;
            let eta: EInt = eta.parse()?;
            let v = verify_with(&tau, &eta, config)?;
            emit(json, verdict_json(&v), || print_verdict(&v));
            Ok(if v.is_norm_perfect { 0 } else { 1 })
        }
        Command::Construct { tau, p, conj } => {
            let tau: EInt = tau.parse()?;
            let candidate = construct_candidate(&tau, *p, *conj)?;
            emit(
                json,
                json!({
                    "tau": eint_json(&tau),
                    "p": p,
                    "conjugate": conj,
                    "candidate": eint_json(&candidate),
                }),
                || println!("{candidate}"),
            );
            Ok(0)
        }
        Command::EuclidEuler { pmax } => {
            let report = eisenstein::perfect::verify_euclid_euler(*pmax)?;
            let all_ok = report.all_ok();
            emit(
                json,
                json!({
                    "pmax": pmax,
                    "all_ok": all_ok,
                    "entries": report.entries.iter().map(|e| {
                        let mut obj = json!({
                            "p": e.p,
                            "a_p": e.a_p.to_string(),
                            "a_p_prime": e.a_p_primality.is_prime,
                            "confidence": e.a_p_primality.confidence.to_string(),
                        });
                        let fields = obj.as_object_mut().unwrap();
                        match &e.outcome {
                            EuclidEulerOutcome::ResidueExcluded => {
                                fields.insert("outcome".into(), "residue-excluded".into());
                            }
                            EuclidEulerOutcome::MersenneComposite => {
                                fields.insert("outcome".into(), "mersenne-composite".into());
                            }
                            EuclidEulerOutcome::Checked { verdict, expected_perfect, ok } => {
                                fields.insert("outcome".into(), "checked".into());
                                fields.insert("norm_perfect".into(), verdict.is_norm_perfect.into());
                                fields.insert("perfect".into(), verdict.is_perfect.into());
                                fields.insert("expected_perfect".into(), (*expected_perfect).into());
                                fields.insert("ok".into(), (*ok).into());
                            }
                        }
                        obj
                    }).collect::<Vec<_>>(),
                }),
                || {
                    for e in &report.entries {
                        match &e.outcome {
                            EuclidEulerOutcome::ResidueExcluded => {
                                println!("p={:<6} skipped: p mod 12 is not 1 or 11", e.p);
                            }
                            EuclidEulerOutcome::MersenneComposite => {
                                println!("p={:<6} skipped: A_p = {} is composite", e.p, e.a_p);
                            }
                            EuclidEulerOutcome::Checked { verdict, ok, .. } => {
                                println!(
                                    "p={:<6} norm-perfect={} perfect={} {}{}",
                                    e.p,
                                    verdict.is_norm_perfect,
                                    verdict.is_perfect,
                                    if *ok { "ok" } else { "MISMATCH" },
                                    confidence_marker(verdict.confidence),
                                );
                            }
                        }
                    }
                    println!("{}", if all_ok { "all ok" } else { "FAILURES PRESENT" });
                },
            );
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Search { tau, bound } => {
            let tau: EInt = tau.parse()?;
            let report = search_norm_perfect_with(&tau, *bound, cli.search_budget)?;
            let hits = report.hits.len();
            emit(
                json,
                json!({
                    "tau": eint_json(&report.tau),
                    "bound": report.norm_bound,
                    "candidates_checked": report.candidates_checked,
                    "hits": report.hits.iter().map(verdict_json).collect::<Vec<_>>(),
                }),
                || {
                    println!(
                        "checked {} candidates with norm <= {}: {} hits",
                        report.candidates_checked, report.norm_bound, hits
                    );
                    for hit in &report.hits {
                        println!(
                            "  eta={} N(sigma)={} perfect={}{}",
                            hit.eta,
                            hit.n_sigma,
                            hit.is_perfect,
                            confidence_marker(hit.confidence)
                        );
                    }
                },
            );
            Ok(if hits == 0 { 0 } else { 1 })
        }
        Command::CheckBound { samples, seed } => {
            let report = sample_geom_bounds(*samples, *seed);
            let ok = report.ok();
            emit(
                json,
                json!({
                    "samples": report.samples,
                    "strict_violations": report.strict_violations,
                    "weak_checked": report.weak_checked,
                    "weak_violations": report.weak_violations,
                    "k1_weak_cases": report.k1_weak_cases,
                    "k1_equalities": report.k1_equalities,
                    "spurious_equalities": report.spurious_equalities,
                    "ok": ok,
                }),
                || {
                    println!(
                        "{} samples: {} strict violations, {} weak violations ({} weak-applicable), equality only at k=1: {}",
                        report.samples,
                        report.strict_violations,
                        report.weak_violations,
                        report.weak_checked,
                        report.spurious_equalities == 0 && report.k1_equalities == report.k1_weak_cases,
                    );
                    println!("{}", if ok { "ok" } else { "VIOLATIONS PRESENT" });
                },
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::CheckObstruction { kmax } => {
            let check = check_two_mersenne_obstruction(*kmax)?;
            let ok = check.counterexamples.is_empty();
            emit(
                json,
                json!({
                    "kmax": check.kmax,
                    "counterexamples": check.counterexamples,
                    "ok": ok,
                }),
                || {
                    if ok {
                        println!("2^k - 1 is not an Eisenstein prime for any 2 <= k <= {kmax}");
                    } else {
                        println!("counterexamples: {:?}", check.counterexamples);
                    }
                },
            );
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn emit(json: bool, value: Value, text: impl FnOnce()) {
    if json {
        println!("{value}");
    } else {
        text();
    }
}

fn eint_json(value: &EInt) -> Value {
    json!({"a": value.a().to_string(), "b": value.b().to_string()})
}

fn verdict_json(v: &PerfectVerdict) -> Value {
    json!({
        "tau": eint_json(&v.tau),
        "eta": eint_json(&v.eta),
        "sigma": eint_json(&v.sigma_eta),
        "n_sigma": v.n_sigma.to_string(),
        "n_tau_eta": v.n_tau_eta.to_string(),
        "is_perfect": v.is_perfect,
        "is_norm_perfect": v.is_norm_perfect,
        "confidence": v.confidence.to_string(),
    })
}

fn print_verdict(v: &PerfectVerdict) {
    println!("eta          = {}", v.eta);
    println!("sigma(eta)   = {}", v.sigma_eta);
    println!("N(sigma)     = {}", v.n_sigma);
    println!("N(tau*eta)   = {}", v.n_tau_eta);
    println!(
        "norm-perfect: {}",
        if v.is_norm_perfect { "yes" } else { "no" }
    );
    println!(
        "perfect:      {}{}",
        if v.is_perfect { "yes" } else { "no" },
        confidence_marker(v.confidence)
    );
}

fn format_factorization(f: &Factorization) -> String {
    let mut parts = Vec::new();
    if !f.unit.to_eint().is_one() || f.factors.is_empty() {
        parts.push(format!("{}", f.unit));
    }
    for (p, e) in &f.factors {
        if *e == 1 {
            parts.push(format!("({p})"));
        } else {
            parts.push(format!("({p})^{e}"));
        }
    }
    parts.join(" * ")
}

fn confidence_marker(confidence: Confidence) -> &'static str {
    match confidence {
        Confidence::Deterministic => "",
        Confidence::Probabilistic => " (probabilistic)",
    }
}
