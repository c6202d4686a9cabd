//! cyclo: q-cyclotomic cosets, equal-difference structure, multiple
//! equal-difference representations, factorization of X^n - 1, and coset
//! leaders on the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 resource guard, 4 internal
//! invariant violation.

mod output;
mod survey;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cyclo::cosets::CosetContext;
use cyclo::equal_difference::{
    all_cosets_ed, coarsest_exponent, cyclotomic_decomposition, global_coarsest_exponent,
    is_equal_difference_criterion, mer_exponents, mer_set,
};
use cyclo::fields::factor_xn_minus_1;
use cyclo::leaders::{leader_bruteforce, leader_of};
use cyclo::numtheory::radical;
use cyclo::{CyclotomicCoset, Error, LeaderMethod};

use output::{
    format_elements, yes_no, BinomialRow, ComponentRow, CosetRow, CosetsPayload, EdCosetPayload,
    EdGlobalPayload, FactorPayload, FactorRow, Inputs, LeaderPayload, MerPayload, OutputRecord,
    Representation, ELISION_CAP,
};

#[derive(Parser)]
#[command(
    name = "cyclo",
    version,
    about = "q-cyclotomic cosets, equal-difference structure, and factorization of X^n - 1"
)]
struct Cli {
    /// Emit one canonical JSON record instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Suppress headers and progress chatter; print only the result rows
    #[arg(long, global = true)]
    quiet: bool,

    /// Never elide long element lists or polynomials
    #[arg(long, global = true)]
    full: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the q-cyclotomic cosets modulo n
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Equal-difference analysis of one coset (--gamma) or the whole space
    Ed {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gamma: Option<u64>,
    },
    /// Admissible exponents and equal-difference representations of a coset
    Mer {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gamma: u64,
        /// Show only the representation at this exponent
        #[arg(long)]
        t: Option<u64>,
    },
    /// Factor X^n - 1 into irreducibles over F_q, or over the degree-t
    /// extension with --ext
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_name = "T")]
        ext: Option<u64>,
        /// Render factors in symbolic binomial form where available
        #[arg(long)]
        symbolic: bool,
    },
    /// Coset leader via the window algorithm (no orbit materialization)
    Leader {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gamma: u64,
        /// Cross-check against the brute-force oracle
        #[arg(long)]
        verify: bool,
    },
    /// Line-delimited JSON survey over a range of moduli
    Survey {
        #[arg(long)]
        q: u64,
        #[arg(long = "n-from")]
        n_from: u64,
        #[arg(long = "n-to")]
        n_to: u64,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (also via the WORKERS env var; default: all cores)
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(io::Error),
    VerifyMismatch { fast: u64, brute: u64 },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::VerifyMismatch { fast, brute } => write!(
                f,
                "window leader {fast} disagrees with brute-force leader {brute}; \
                 this is an internal bug, not bad input"
            ),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => e.exit_class(),
            CliError::Io(_) => 2,
            CliError::VerifyMismatch { .. } => 4,
        }
    }
}

/// Presentation switches shared by every subcommand.
#[derive(Clone, Copy)]
struct Render {
    json: bool,
    quiet: bool,
    full: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let render = Render {
        json: cli.json,
        quiet: cli.quiet,
        full: cli.full,
    };
    match run(cli.command, render) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command, r: Render) -> Result<(), CliError> {
    match command {
        Command::Cosets { q, n } => cmd_cosets(q, n, r),
        Command::Ed { q, n, gamma } => cmd_ed(q, n, gamma, r),
        Command::Mer { q, n, gamma, t } => cmd_mer(q, n, gamma, t, r),
        Command::Factor {
            q,
            n,
            ext,
            symbolic,
        } => cmd_factor(q, n, ext, symbolic, r),
        Command::Leader {
            q,
            n,
            gamma,
            verify,
        } => cmd_leader(q, n, gamma, verify, r),
        Command::Survey {
            q,
            n_from,
            n_to,
            out,
            workers,
        } => cmd_survey(q, n_from, n_to, out, workers, r),
    }
}

fn coset_row(c: &CyclotomicCoset) -> CosetRow {
    let status = is_equal_difference_criterion(c);
    CosetRow {
        leader: c.leader(),
        size: c.size(),
        is_ed: status.is_ed,
        common_difference: status.common_difference,
        elements: c.elements().to_vec(),
    }
}

fn cmd_cosets(q: u64, n: u64, r: Render) -> Result<(), CliError> {
    let ctx = CosetContext::new(n, q)?;
    let rows: Vec<CosetRow> = ctx.cosets().iter().map(coset_row).collect();
    let ed_count = rows.iter().filter(|row| row.is_ed).count() as u64;
    let payload = CosetsPayload {
        coset_count: rows.len() as u64,
        ed_count,
        cosets: rows,
    };
    if r.json {
        println!(
            "{}",
            OutputRecord::new("cosets", Inputs::new(q, n), payload).to_json()
        );
        return Ok(());
    }
    if !r.quiet {
        println!(
            "{} q-cyclotomic cosets modulo {} for q = {}; {} equal-difference",
            payload.coset_count, n, q, payload.ed_count
        );
        println!("{:>10} {:>6}  {:<3} {:>10}  elements", "leader", "size", "ed", "diff");
    }
    for row in &payload.cosets {
        println!(
            "{:>10} {:>6}  {:<3} {:>10}  {}",
            row.leader,
            row.size,
            yes_no(row.is_ed),
            row.common_difference
                .map_or_else(|| "-".to_string(), |d| d.to_string()),
            format_elements(&row.elements, r.full)
        );
    }
    Ok(())
}

fn cmd_ed(q: u64, n: u64, gamma: Option<u64>, r: Render) -> Result<(), CliError> {
    let ctx = CosetContext::new(n, q)?;
    match gamma {
        Some(raw) => {
            let gamma = raw % n;
            let c = ctx.coset_of(gamma);
            let m = c.primitive_modulus();
            let rad = radical(m)?;
            let status = is_equal_difference_criterion(&c);
            let payload = EdCosetPayload {
                gamma,
                leader: c.leader(),
                size: c.size(),
                primitive_modulus: m,
                radical: rad,
                q_mod_4: q % 4,
                radical_divides_q_minus_1: (q - 1).is_multiple_of(rad),
                four_condition: !m.is_multiple_of(8) || q % 4 == 1,
                is_ed: status.is_ed,
                common_difference: status.common_difference,
                coarsest_exponent: coarsest_exponent(&c),
            };
            if r.json {
                println!(
                    "{}",
                    OutputRecord::new("ed", Inputs::new(q, n).with_gamma(raw), payload).to_json()
                );
                return Ok(());
            }
            if !r.quiet {
                println!(
                    "coset of {} modulo {} (q = {}): leader {}, size {}",
                    payload.gamma, n, q, payload.leader, payload.size
                );
                println!(
                    "  primitive modulus {}, radical {}, q mod 4 = {}",
                    payload.primitive_modulus, payload.radical, payload.q_mod_4
                );
                println!(
                    "  condition (i) radical divides q - 1: {}",
                    yes_no(payload.radical_divides_q_minus_1)
                );
                println!(
                    "  condition (ii) q = 1 (mod 4) if 8 divides the modulus: {}{}",
                    yes_no(payload.four_condition),
                    if payload.primitive_modulus.is_multiple_of(8) {
                        ""
                    } else {
                        " (8 does not divide it)"
                    }
                );
            }
            match payload.common_difference {
                Some(d) => println!("equal-difference: yes, common difference {d}"),
                None => println!("equal-difference: no"),
            }
            if !r.quiet {
                println!("  coarsest exponent ω = {}", payload.coarsest_exponent);
            }
        }
        None => {
            let report = all_cosets_ed(&ctx);
            let payload = EdGlobalPayload {
                radical: report.radical_n,
                q_mod_4: q % 4,
                radical_divides_q_minus_1: report.radical_divides,
                four_condition: report.four_condition,
                all_ed: report.all_ed,
                coarsest_exponent: global_coarsest_exponent(&ctx),
            };
            if r.json {
                println!(
                    "{}",
                    OutputRecord::new("ed", Inputs::new(q, n), payload).to_json()
                );
                return Ok(());
            }
            if !r.quiet {
                println!("equal-difference criterion for all cosets modulo {n} (q = {q}):");
                println!(
                    "  radical {}, q mod 4 = {}",
                    payload.radical, payload.q_mod_4
                );
                println!(
                    "  condition (i) radical divides q - 1: {}",
                    yes_no(payload.radical_divides_q_minus_1)
                );
                println!(
                    "  condition (ii) q = 1 (mod 4) if 8 divides n: {}",
                    yes_no(payload.four_condition)
                );
            }
            let verdict = if payload.all_ed {
                "all cosets equal-difference: yes".to_string()
            } else {
                let mut failing = Vec::new();
                if !payload.radical_divides_q_minus_1 {
                    failing.push("(i)");
                }
                if !payload.four_condition {
                    failing.push("(ii)");
                }
                format!(
                    "all cosets equal-difference: no (condition {} fails)",
                    failing.join(" and ")
                )
            };
            println!("{verdict}");
            if !r.quiet {
                println!("  coarsest exponent ω = {}", payload.coarsest_exponent);
            }
        }
    }
    Ok(())
}

fn component_rows(components: &[CyclotomicCoset]) -> Vec<ComponentRow> {
    components
        .iter()
        .map(|c| {
            let status = is_equal_difference_criterion(c);
            ComponentRow {
                leader: c.leader(),
                size: c.size(),
                common_difference: status.common_difference,
                elements: c.elements().to_vec(),
            }
        })
        .collect()
}

fn cmd_mer(q: u64, n: u64, gamma: u64, t: Option<u64>, r: Render) -> Result<(), CliError> {
    let ctx = CosetContext::new(n, q)?;
    let raw = gamma;
    let gamma = gamma % n;
    let c = ctx.coset_of(gamma);
    let exponents = mer_exponents(&c);
    let representations: Vec<Representation> = match t {
        Some(t) => {
            if t == 0 || !exponents.order.is_multiple_of(t) {
                return Err(Error::ExponentNotDivisor {
                    t,
                    tau: exponents.order,
                }
                .into());
            }
            if !t.is_multiple_of(exponents.coarsest) {
                return Err(Error::ExponentNotMultiple {
                    t,
                    coarsest: exponents.coarsest,
                }
                .into());
            }
            let d = cyclotomic_decomposition(&c, t)?;
            vec![Representation {
                t,
                components: component_rows(d.components()),
            }]
        }
        None => mer_set(&c)?
            .decompositions
            .iter()
            .map(|d| Representation {
                t: d.t(),
                components: component_rows(d.components()),
            })
            .collect(),
    };
    let payload = MerPayload {
        gamma,
        leader: c.leader(),
        size: c.size(),
        coarsest_exponent: exponents.coarsest,
        admissible_exponents: exponents.members.clone(),
        representations,
    };
    if r.json {
        let mut inputs = Inputs::new(q, n).with_gamma(raw);
        if let Some(t) = t {
            inputs = inputs.with_t(t);
        }
        println!("{}", OutputRecord::new("mer", inputs, payload).to_json());
        return Ok(());
    }
    if !r.quiet {
        println!(
            "coset of {} modulo {} (q = {}): leader {}, size {}, coarsest exponent ω = {}",
            payload.gamma, n, q, payload.leader, payload.size, payload.coarsest_exponent
        );
        let exps: Vec<String> = payload
            .admissible_exponents
            .iter()
            .map(u64::to_string)
            .collect();
        println!("admissible exponents Σ = {{{}}}", exps.join(", "));
    }
    for rep in &payload.representations {
        println!("t = {}: {} components", rep.t, rep.components.len());
        for comp in &rep.components {
            println!(
                "  leader {}, size {}{}: {}",
                comp.leader,
                comp.size,
                comp.common_difference
                    .map_or_else(String::new, |d| format!(", difference {d}")),
                format_elements(&comp.elements, r.full)
            );
        }
    }
    Ok(())
}

fn factor_field_name(q: u64, t: u64) -> String {
    if t == 1 {
        format!("F_{q}")
    } else {
        format!("F_{q}^{t}")
    }
}

fn cmd_factor(q: u64, n: u64, ext: Option<u64>, symbolic: bool, r: Render) -> Result<(), CliError> {
    let ctx = CosetContext::new(n, q)?;
    let t = ext.unwrap_or(1);
    let report = factor_xn_minus_1(&ctx, t)?;
    let factors: Vec<FactorRow> = report
        .factors
        .iter()
        .map(|f| FactorRow {
            leader: f.leader,
            degree: f.degree,
            binomial: f.binomial.as_ref().map(|b| BinomialRow {
                degree: b.degree,
                constant_exponent: b.constant_exponent,
                sign: b.sign,
                root_modulus: b.modulus,
                rendered: b.to_string(),
            }),
            base_coeffs: f.base_poly.as_ref().map(|p| p.coeffs().to_vec()),
            ext_coeffs: f.ext_poly.as_ref().map(|p| {
                p.coeffs()
                    .iter()
                    .map(|e| e.coeffs().to_vec())
                    .collect::<Vec<_>>()
            }),
        })
        .collect();
    let payload = FactorPayload {
        t,
        all_binomial: report.all_binomial,
        verified: report.verified,
        symbolic_only: report.symbolic_only,
        binomial_count: report.binomial_count() as u64,
        factor_count: factors.len() as u64,
        factors,
    };
    if r.json {
        let mut inputs = Inputs::new(q, n);
        if t != 1 {
            inputs = inputs.with_t(t);
        }
        println!("{}", OutputRecord::new("factor", inputs, payload).to_json());
        return Ok(());
    }
    if !r.quiet {
        println!(
            "X^{} - 1 over {}: {} factors, {} binomial, {}{}",
            n,
            factor_field_name(q, t),
            payload.factor_count,
            payload.binomial_count,
            if payload.verified {
                "verified"
            } else {
                "not verified"
            },
            if payload.symbolic_only {
                " (symbolic only: coefficient expansion needs prime q)"
            } else {
                ""
            }
        );
    }
    for (f, row) in report.factors.iter().zip(&payload.factors) {
        let rendered = if symbolic {
            match &row.binomial {
                Some(b) => b.rendered.clone(),
                None => format!("(not binomial; degree {})", row.degree),
            }
        } else {
            render_factor(f, r.full)
        };
        println!("  leader {:>6} (degree {:>4}): {}", row.leader, row.degree, rendered);
    }
    Ok(())
}

/// Concrete polynomial if present (base field preferred), symbolic binomial
/// as a fallback, with long polynomials elided unless forced.
fn render_factor(f: &cyclo::fields::Factor, full: bool) -> String {
    if let Some(p) = &f.base_poly {
        if full || p.nonzero_terms() <= ELISION_CAP {
            return p.to_string();
        }
        return format!("{} nonzero terms (--full to expand)", p.nonzero_terms());
    }
    if let Some(p) = &f.ext_poly {
        if full || p.nonzero_terms() <= ELISION_CAP {
            return p.to_string();
        }
        return format!("{} nonzero terms (--full to expand)", p.nonzero_terms());
    }
    match &f.binomial {
        Some(b) => format!("{b} (symbolic)"),
        None => format!("degree {}", f.degree),
    }
}

fn method_name(m: LeaderMethod) -> &'static str {
    match m {
        LeaderMethod::EdClosedForm => "ed-closed-form",
        LeaderMethod::OmegaWindow => "omega-window",
        LeaderMethod::BruteForce => "brute-force",
    }
}

fn cmd_leader(q: u64, n: u64, gamma: u64, verify: bool, r: Render) -> Result<(), CliError> {
    let ctx = CosetContext::new(n, q)?;
    let raw = gamma;
    let gamma = gamma % n;
    let result = leader_of(&ctx, gamma)?;
    let verified = if verify {
        let brute = leader_bruteforce(&ctx.coset_of(gamma));
        if brute.leader != result.leader {
            return Err(CliError::VerifyMismatch {
                fast: result.leader,
                brute: brute.leader,
            });
        }
        Some(true)
    } else {
        None
    };
    let payload = LeaderPayload {
        gamma,
        leader: result.leader,
        method: method_name(result.method).to_string(),
        window_modulus: result.window_modulus,
        window_values: result.window_values.clone(),
        reductions: result.reductions,
        verified,
    };
    if r.json {
        println!(
            "{}",
            OutputRecord::new("leader", Inputs::new(q, n).with_gamma(raw), payload).to_json()
        );
        return Ok(());
    }
    if r.quiet {
        println!("{}", payload.leader);
        return Ok(());
    }
    println!(
        "leader of the coset of {} modulo {} (q = {}): {}",
        payload.gamma, n, q, payload.leader
    );
    print!("  method {}", payload.method);
    if let Some(w) = payload.window_modulus {
        print!(
            ", window modulus {}, values {}",
            w,
            format_elements(&payload.window_values, r.full)
        );
    }
    println!(", reductions {}", payload.reductions);
    if payload.verified == Some(true) {
        println!("  verified against the brute-force oracle");
    }
    Ok(())
}

fn cmd_survey(
    q: u64,
    n_from: u64,
    n_to: u64,
    out: Option<PathBuf>,
    workers: Option<usize>,
    r: Render,
) -> Result<(), CliError> {
    let workers = workers
        .or_else(|| {
            std::env::var("WORKERS")
                .ok()
                .and_then(|s| s.parse::<usize>().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .max(1);
    let outcome = survey::survey_range(q, n_from, n_to, workers)?;
    if !r.quiet {
        for &(n, g) in &outcome.skipped {
            eprintln!("skipping n = {n}: gcd({n}, {q}) = {g}");
        }
    }
    let mut writer: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    for (n, payload) in &outcome.records {
        let record = OutputRecord::new("survey", Inputs::new(q, *n), payload.clone());
        writeln!(writer, "{}", record.to_json())?;
    }
    writer.flush()?;
    if !r.quiet {
        eprintln!(
            "surveyed {} moduli, skipped {}",
            outcome.records.len(),
            outcome.skipped.len()
        );
    }
    Ok(())
}
