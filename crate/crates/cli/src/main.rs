use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use pollard::bounds::normalize_pair;
use pollard::certificate::{build_certificate, verify_certificate, Certificate, Verification};
use pollard::search::{sweep, SearchConfig, SizeRange};
use pollard::setops::parse_set_literal;
use pollard::{BoundSet, Error, Evaluator, GSet, GroupSpec, Mode, SubgroupLattice};
use serde::{Deserialize, Serialize};

mod render;

/// Exit statuses.
const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "pollard", version, about = "Multiplicity spectra and Pollard-type bounds over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Instance {
    /// Group literal such as Z9 or Z2xZ6.
    #[arg(long)]
    group: String,
    /// First operand, e.g. 0,1,2.
    #[arg(long = "a", allow_hyphen_values = true)]
    set_a: String,
    /// Second operand.
    #[arg(long = "b", allow_hyphen_values = true)]
    set_b: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print r(x), the sizes of N_t and the partial sums S_t.
    Spectrum {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every applicable bound on one instance.
    Check {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        t: usize,
        /// Comma-separated bound names, or `all`.
        #[arg(long, default_value = "all")]
        bounds: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a derivation certificate, or verify one from a file.
    Certify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "a", allow_hyphen_values = true)]
        set_a: Option<String>,
        #[arg(long = "b", allow_hyphen_values = true)]
        set_b: Option<String>,
        #[arg(long)]
        t: Option<usize>,
        /// Verify the certificate stored in this JSON file instead of building one.
        #[arg(long, conflicts_with_all = ["group", "set_a", "set_b", "t"])]
        verify: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exhaustive sweep described by a config file and/or flags.
    Sweep {
        /// Config file; defaults to $POLLARD_CONFIG when set.
        #[arg(long, env = "POLLARD_CONFIG")]
        config: Option<PathBuf>,
        /// Comma-separated group literals, or `default`.
        #[arg(long)]
        groups: Option<String>,
        /// Sizes of A: `all`, `n`, `lo..hi`, `lo..=hi` or `lo..`.
        #[arg(long)]
        size_a: Option<String>,
        /// Sizes of B, same syntax; always capped at |A|.
        #[arg(long)]
        size_b: Option<String>,
        /// Thresholds t, same syntax; always capped at |B|.
        #[arg(long)]
        t: Option<String>,
        /// verify, equality-hunt or conjecture-scan.
        #[arg(long)]
        mode: Option<String>,
        /// Comma-separated bound names, or `all`.
        #[arg(long)]
        bounds: Option<String>,
        /// Number of shards, run concurrently.
        #[arg(long)]
        shards: Option<usize>,
        /// Refuse to start a group that would exceed this many instances in total.
        #[arg(long)]
        max_instances: Option<u64>,
        /// Witness output (JSON lines); standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary output (JSON); standard output when absent.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Spectrum { instance, format, out } => spectrum(&instance, format, out.as_deref()),
        Command::Check {
            instance,
            t,
            bounds,
            format,
            out,
        } => check(&instance, t, &bounds, format, out.as_deref()),
        Command::Certify {
            group,
            set_a,
            set_b,
            t,
            verify,
            format,
            out,
        } => match verify {
            Some(path) => verify_file(&path, format, out.as_deref()),
            None => {
                let missing = |name: &str| Failure::Usage(format!("certify needs --{name} (or --verify FILE)"));
                let instance = Instance {
                    group: group.ok_or_else(|| missing("group"))?,
                    set_a: set_a.ok_or_else(|| missing("a"))?,
                    set_b: set_b.ok_or_else(|| missing("b"))?,
                };
                certify(&instance, t.ok_or_else(|| missing("t"))?, format, out.as_deref())
            }
        },
        Command::Sweep {
            config,
            groups,
            size_a,
            size_b,
            t,
            mode,
            bounds,
            shards,
            max_instances,
            out,
            summary,
        } => {
            let mut cfg = match &config {
                Some(path) => SearchConfig::from_file(path)?,
                None => SearchConfig::default(),
            };
            if let Some(g) = groups {
                cfg.groups = if g.trim() == "default" {
                    SearchConfig::default().groups
                } else {
                    g.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
                };
            }
            let range = |s: String| s.parse::<SizeRange>();
            if let Some(r) = size_a {
                cfg.size_a = range(r)?;
            }
            if let Some(r) = size_b {
                cfg.size_b = range(r)?;
            }
            if let Some(r) = t {
                cfg.t = range(r)?;
            }
            if let Some(m) = mode {
                cfg.mode = m.parse::<Mode>()?;
            }
            if let Some(b) = bounds {
                cfg.bounds = b.parse::<BoundSet>()?;
            }
            if let Some(n) = shards {
                cfg.shards = n;
            }
            if max_instances.is_some() {
                cfg.max_instances = max_instances;
            }
            if out.is_some() {
                cfg.out = out;
            }
            run_sweep(&cfg, summary.as_deref())
        }
    }
}

fn parse_instance(instance: &Instance) -> Result<(Arc<GroupSpec>, GSet, GSet), Failure> {
    let g = GroupSpec::parse(&instance.group)?;
    let parse = |literal: &str, name: &str| -> Result<GSet, Failure> {
        let members = parse_set_literal(literal)?;
        if members.is_empty() {
            return Err(Failure::Usage(format!("set --{name} `{literal}` is empty")));
        }
        if let Some(&bad) = members.iter().find(|&&x| x >= g.order()) {
            return Err(Failure::Usage(format!(
                "`{bad}` in --{name} is out of range for {g} (order {})",
                g.order()
            )));
        }
        Ok(GSet::from_indices(&g, members)?)
    };
    let a = parse(&instance.set_a, "a")?;
    let b = parse(&instance.set_b, "b")?;
    Ok((g, a, b))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn spectrum(instance: &Instance, format: Format, out: Option<&Path>) -> Outcome {
    let (_, a, b) = parse_instance(instance)?;
    let s = pollard::compute_spectrum(&a, &b)?;
    let text = match format {
        Format::Json => serde_json::to_string(&s.to_json()).expect("serializable") + "\n",
        Format::Text => render::spectrum_text(&s),
        Format::Csv => return Err(Failure::Usage("spectrum supports text and json output".into())),
    };
    emit(out, &text)?;
    Ok(0)
}

/// Translates both operands to contain 0 and orders them so `|A| >= |B|`.
fn normalized(a: &GSet, b: &GSet) -> Result<(GSet, GSet, [usize; 2], bool), Failure> {
    let (na, nb, shift) = normalize_pair(a, b)?;
    if na.card() < nb.card() {
        Ok((nb, na, [shift[1], shift[0]], true))
    } else {
        Ok((na, nb, shift, false))
    }
}

fn check_t(t: usize, a: &GSet, b: &GSet) -> Result<(), Failure> {
    let max = a.card().min(b.card());
    if t < 1 || t > max {
        return Err(Failure::Usage(format!("--t {t} out of range: need 1 <= t <= min(|A|, |B|) = {max}")));
    }
    Ok(())
}

fn check(instance: &Instance, t: usize, bounds: &str, format: Format, out: Option<&Path>) -> Outcome {
    let (g, a, b) = parse_instance(instance)?;
    check_t(t, &a, &b)?;
    let explicit = bounds.trim() != "all";
    let bounds: BoundSet = bounds.parse()?;
    if explicit && bounds.pollard && !g.has_prime_order() {
        return Err(Failure::Usage(format!("pollard needs a group of prime order, {g} has order {}", g.order())));
    }
    if explicit && bounds.green_ruzsa && g.is_trivial() {
        return Err(Failure::Usage("green_ruzsa needs a nontrivial group".into()));
    }
    let (a, b, shift, swapped) = normalized(&a, &b)?;
    let lat = SubgroupLattice::new(&g)?;
    let ev = Evaluator::new(&lat).with_bounds(bounds);
    let mut report = ev.report(&ev.pair(&a, &b)?, t)?;
    report.normalization_shift = Some(shift);
    report.operands_swapped = swapped;

    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Csv => format!("{}\n{}\n", pollard::BoundReport::CSV_HEADER, report.csv_row()),
        Format::Text => render::report_text(&report),
    };
    emit(out, &text)?;
    Ok(if report.has_violations() { EXIT_VIOLATION } else { 0 })
}

/// What `certify` prints in JSON mode.
#[derive(Serialize, Deserialize)]
struct CertifyOutput {
    certificate: Certificate,
    verification: Verification,
    rhs_main: i64,
    s_t: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalization_shift: Option<[usize; 2]>,
}

fn certify(instance: &Instance, t: usize, format: Format, out: Option<&Path>) -> Outcome {
    let (_, a, b) = parse_instance(instance)?;
    check_t(t, &a, &b)?;
    let (a, b, shift, _) = normalized(&a, &b)?;
    let cert = build_certificate(&a, &b, t)?;
    certificate_output(cert, Some(shift), format, out, EXIT_INTERNAL)
}

fn verify_file(path: &Path, format: Format, out: Option<&Path>) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    // Accept both a bare certificate and the full `certify --format json` output.
    let cert = match serde_json::from_str::<CertifyOutput>(&text) {
        Ok(wrapped) => wrapped.certificate,
        Err(_) => serde_json::from_str::<Certificate>(&text)
            .map_err(|e| Failure::Usage(format!("{} is not a certificate: {e}", path.display())))?,
    };
    certificate_output(cert, None, format, out, EXIT_VIOLATION)
}

fn certificate_output(
    cert: Certificate,
    shift: Option<[usize; 2]>,
    format: Format,
    out: Option<&Path>,
    failure_code: u8,
) -> Outcome {
    let verification = verify_certificate(&cert)?;
    let g = GroupSpec::parse(&cert.group)?;
    let a = GSet::from_indices(&g, cert.root.set_a.iter().copied())?;
    let b = GSet::from_indices(&g, cert.root.set_b.iter().copied())?;
    let s_t = pollard::compute_spectrum(&a, &b)?.partial_sum(cert.root.t)?;
    let rhs_main = cert.root_rhs_main();
    let tight = rhs_main <= cert.claimed_bound() as i64;
    let output = CertifyOutput {
        certificate: cert,
        verification,
        rhs_main,
        s_t,
        normalization_shift: shift,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&output).expect("serializable") + "\n",
        Format::Text => render::certificate_text(&output.certificate, &output.verification, rhs_main, s_t),
        Format::Csv => return Err(Failure::Usage("certify supports text and json output".into())),
    };
    emit(out, &text)?;
    Ok(if output.verification.valid && tight { 0 } else { failure_code })
}

fn run_sweep(cfg: &SearchConfig, summary_path: Option<&Path>) -> Outcome {
    let output = sweep(cfg)?;
    match &cfg.out {
        Some(path) => {
            let file = fs::File::create(path)?;
            let mut w = std::io::BufWriter::new(file);
            output.write_witnesses(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            output.write_witnesses(&mut stdout)?;
            stdout.flush()?;
        }
    }
    emit(summary_path, &(output.summary_json() + "\n"))?;
    if output.violation_count() > 0 {
        return Ok(EXIT_VIOLATION);
    }
    if !output.is_complete() {
        eprintln!("error: sweep stopped at the instance limit; the summary covers completed groups only");
        return Ok(EXIT_USAGE);
    }
    Ok(0)
}
