//! `taf`: command-line access to the exact computations and checks.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use taf_core::arithgroups::{reduce::word_string, reduce_to_fundamental_domain, verify_embeddings};
use taf_core::chromatic::{cor1_report, cor2_check, key_lemma_check_with_progress, landweber_check};
use taf_core::curve::log_phi;
use taf_core::fgl::{build_fgl, euler_comparison, euler_law, iso_check};
use taf_core::legendre::{legendre, log_phi_l, LegendreEntry};
use taf_core::qexp::{eval_form, forms, j_g_with_tol, transform_check, FormName, JValue};
use taf_core::verify::{run_selftest, Status, SEED};
use taf_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Law {
    /// Law with logarithm Σ P_k x^{4k+1}/(4k+1)
    Legendre,
    /// Law of the curve's holomorphic differential
    Curve,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "taf", version, about = "Exact formal group laws, Legendre genus, Hazewinkel images and automorphic forms")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Truncation order N for power series
    #[arg(short = 'N', long = "order", default_value = "13", env = "TAF_DEFAULT_ORDER", value_parser = positive, global = true)]
    order: usize,
    /// Truncation order K for q-expansions
    #[arg(short = 'K', long = "qorder", default_value = "50", value_parser = positive, global = true)]
    qorder: usize,
    /// Absolute tolerance for numeric zero checks
    #[arg(long, default_value_t = 1e-6, global = true)]
    zero_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homogeneous Legendre polynomial P_k(α, β)
    Legendre { k: usize },
    /// Logarithm of the curve's formal group through v^N
    Ulog,
    /// Logarithm of the Legendre genus through x^N
    Llog,
    /// Formal group law from a logarithm, with its axioms checked
    Fgl {
        #[arg(long, value_enum, default_value_t = Law::Legendre)]
        law: Law,
    },
    /// Closed-form Euler law compared with the Legendre law at β = 0
    Euler,
    /// Check that t(v) is an isomorphism between the two laws
    IsoCheck,
    /// Hazewinkel images v_1..v_n at p with integrality and Landweber verdicts
    Vgens {
        #[arg(short = 'p', long)]
        prime: u64,
        #[arg(short = 'n', long, default_value_t = 2)]
        n: u32,
    },
    /// The three congruences modulo (5, v₁)
    Cor1,
    /// Binomial valuation argument at p ≡ 5 (mod 8)
    Cor2 {
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// Regularity and height-two checks at p ≡ 1 (mod 4)
    Landweber {
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// q-expansions of δ′, ε′, α, β, Δ_G through s^K
    Qexpand {
        /// Only this form (alpha, beta, delta_g, delta_p, eps_p)
        #[arg(long)]
        form: Option<String>,
    },
    /// Evaluate a form at τ = RE + i·IM
    #[command(allow_negative_numbers = true)]
    EvalTau { form: String, re: f64, im: f64 },
    /// j_G = β/(4α²) at τ
    #[command(allow_negative_numbers = true)]
    Jg { re: f64, im: f64 },
    /// Weight-4 automorphy residuals of α at τ
    #[command(allow_negative_numbers = true)]
    TransformCheck { re: f64, im: f64 },
    /// Reduce τ into the fundamental domain with a certified matrix
    #[command(allow_negative_numbers = true)]
    Reduce { re: f64, im: f64 },
    /// Exact checks of the Cayley map, ρ, ι and the period-matrix identities
    VerifyEmbeddings {
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = SEED)]
        seed: u64,
    },
    /// Run the full acceptance suite
    Selftest,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::UnsupportedPrime { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

type Outcome = Result<bool, CliError>;

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Text => text(),
    };
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn yes(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

fn tau(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    let n = cli.order;
    let k = cli.qorder;
    match &cli.command {
        Command::Legendre { k } => {
            let entry = LegendreEntry { k: *k, poly: legendre(*k) };
            emit(fmt, &entry, || format!("P_{} = {}", entry.k, entry.poly));
            Ok(true)
        }
        Command::Ulog => {
            let l = log_phi(n)?;
            emit(fmt, &l, || format!("log_φ(v) = {}", l.display_in("v")));
            Ok(true)
        }
        Command::Llog => {
            let l = log_phi_l(n);
            emit(fmt, &l, || format!("log_φL(x) = {}", l.display_in("x")));
            Ok(true)
        }
        Command::Fgl { law } => {
            let log = match law {
                Law::Legendre => log_phi_l(n),
                Law::Curve => log_phi(n)?,
            };
            let f = build_fgl(&log)?;
            let axioms = f.check_axioms()?;
            emit(fmt, &json!({ "law": f.law, "axioms": axioms }), || {
                format!(
                    "F(x, y) = {}\nunit {}, commutativity {}, associativity {}, log additivity {}",
                    f.law,
                    yes(axioms.unit),
                    yes(axioms.commutative),
                    yes(axioms.associative),
                    yes(axioms.log_additive)
                )
            });
            Ok(axioms.all_hold())
        }
        Command::Euler => {
            let closed = euler_law(n)?;
            let cmp = euler_comparison(n)?;
            emit(fmt, &json!({ "closed_form": closed, "comparison": cmp }), || {
                let mut s = format!("F_E(x, y) = {closed}\n");
                if cmp.matches {
                    s.push_str(&format!("equals the Legendre law at β = 0 through order {n}"));
                } else {
                    s.push_str("differs from the Legendre law at β = 0:");
                    for d in &cmp.differences {
                        s.push_str(&format!("\n  x^{}y^{}: log gives {}, closed form {}", d.a, d.b, d.from_log, d.closed_form));
                    }
                }
                s
            });
            Ok(cmp.matches)
        }
        Command::IsoCheck => {
            let ok = iso_check(n)?;
            emit(fmt, &json!({ "order": n, "holds": ok }), || {
                format!("t(F_φ(x, y)) = F_φL(t(x), t(y)) through order {n}: {}", yes(ok))
            });
            Ok(ok)
        }
        Command::Vgens { prime, n } => {
            let r = key_lemma_check_with_progress(*prime, *n, |m| eprintln!("[vgens p={prime}] {m}"))?;
            emit(fmt, &r, || {
                let mut s = String::new();
                for (i, (v, ok)) in r.v.iter().zip(&r.integrality).enumerate() {
                    s.push_str(&format!("v_{} = {v}\n  {}-integral: {ok}\n", i + 1, r.p));
                }
                let lw = r.landweber;
                s.push_str(&format!(
                    "Landweber: v1 ≢ 0 mod p: {}, v2 ≢ 0 mod (p, v1): {}, height-two cozero: {}",
                    lw.v1_nonzero_mod_p, lw.v2_nonzero_mod_p_v1, lw.height2_cozero_check
                ));
                for d in &r.details {
                    s.push_str(&format!("\n  {d}"));
                }
                s
            });
            Ok(r.all_integral())
        }
        Command::Cor1 => {
            let r = cor1_report()?;
            emit(fmt, &r, || {
                let mark = |ok: bool| if ok { "" } else { "  [FAILS]" };
                format!(
                    "v₂ ≡ {} (mod (5, v₁)){}\n(α² − β)³ ≡ {} (mod (5, v₁)){}\nv₂ ≡ Δ_G³ (mod (5, v₁)){}",
                    r.v2_reduced.display_terms(),
                    mark(r.v2_reduced == r.target),
                    r.disc_cubed_reduced.display_terms(),
                    mark(r.disc_cubed_reduced == r.target),
                    mark(r.v2_reduced == r.delta_g_cubed_reduced),
                )
            });
            Ok(r.holds)
        }
        Command::Cor2 { prime } => {
            let r = cor2_check(*prime)?;
            emit(fmt, &r, || {
                format!(
                    "p = {}: ν_p(C({}, {})) = {}\nα | v₁: {}\np·v₂ ≡ C(2n, n)(−β/4)^n (mod α): {}\nv₂ ≢ 0 mod (p, v₁): {}",
                    r.p,
                    2 * r.half_index,
                    r.half_index,
                    r.valuation,
                    r.alpha_divides_v1,
                    r.congruence_holds,
                    r.v2_mod_p_v1_nonzero
                )
            });
            Ok(r.argument_concludes && r.v2_mod_p_v1_nonzero)
        }
        Command::Landweber { prime } => {
            let r = landweber_check(*prime)?;
            emit(fmt, &r, || {
                let v = r.verdicts;
                let mut s = format!(
                    "p = {}\n(a) v₁ ≢ 0 mod p: {}\n(b) v₂ ≢ 0 mod (p, v₁): {}{}\n(c) common zeros on Δ_G = 0: {} (gcd {})",
                    r.p,
                    v.v1_nonzero_mod_p,
                    v.v2_nonzero_mod_p_v1,
                    r.v2_mod_p_v1.as_ref().map(|x| format!(", remainder {}", x.display_terms())).unwrap_or_default(),
                    v.height2_cozero_check,
                    r.gcd.as_deref().unwrap_or("undefined"),
                );
                for note in &r.notes {
                    s.push_str(&format!("\n  {note}"));
                }
                s
            });
            Ok(r.verdicts.all_pass())
        }
        Command::Qexpand { form } => {
            let f = forms(k)?;
            match form {
                Some(name) => {
                    let q = f.get(name.parse::<FormName>()?);
                    emit(fmt, q, || format!("{name} = {q}"));
                }
                None => emit(fmt, &f, || {
                    [
                        ("δ′", &f.delta_p),
                        ("ε′", &f.eps_p),
                        ("α", &f.alpha),
                        ("β", &f.beta),
                        ("Δ_G", &f.delta_g),
                    ]
                    .iter()
                    .map(|(n, q)| format!("{n} = {q}"))
                    .collect::<Vec<_>>()
                    .join("\n")
                }),
            }
            Ok(true)
        }
        Command::EvalTau { form, re, im } => {
            let f = forms(k)?;
            let e = eval_form(f.get(form.parse::<FormName>()?), tau(*re, *im))?;
            emit(fmt, &e, || format!("{form}({re} + {im}i) = {} + {}i  (truncation bound {:.3e})", e.re, e.im, e.trunc_bound));
            Ok(true)
        }
        Command::Jg { re, im } => {
            let j = j_g_with_tol(tau(*re, *im), k, cli.zero_tol)?;
            emit(fmt, &j, || match j {
                JValue::Finite { re: a, im: b } => format!("j_G = {a} + {b}i"),
                JValue::Pole { alpha_abs } => format!("j_G has a pole here (|α| = {alpha_abs:.3e})"),
            });
            Ok(true)
        }
        Command::TransformCheck { re, im } => {
            let r = transform_check(tau(*re, *im), k)?;
            let ok = r.residual_c4 < cli.zero_tol && r.residual_s < cli.zero_tol;
            emit(fmt, &r, || {
                format!("C₄ residual {:.3e}\nS residual {:.3e}\n{}", r.residual_c4, r.residual_s, if ok { "ok" } else { "FAILS" })
            });
            Ok(ok)
        }
        Command::Reduce { re, im } => {
            let r = reduce_to_fundamental_domain(tau(*re, *im))?;
            emit(fmt, &r, || {
                format!(
                    "τ = {} + {}i\nword: {}\nmatrix: {}\ncertified: {}",
                    r.tau_reduced.re,
                    r.tau_reduced.im,
                    word_string(&r.word),
                    r.matrix,
                    r.certified
                )
            });
            Ok(r.certified)
        }
        Command::VerifyEmbeddings { samples, seed } => {
            let r = verify_embeddings(*samples, *seed)?;
            emit(fmt, &r, || {
                let mut s = format!("{r:#?}");
                s.push_str(if r.all_hold() { "\nall identities hold" } else { "\nFAILURES" });
                s
            });
            Ok(r.all_hold())
        }
        Command::Selftest => {
            let results = run_selftest();
            emit(fmt, &results, || results.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n"));
            Ok(results.iter().all(|c| !c.gating || c.status == Status::Pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
