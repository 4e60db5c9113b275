//! Command-line front end. Exit codes: 0 success, 1 a negative verdict
//! (not solvable, verification failed), 2 bad input or usage.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use ybx_core::invariants::InvariantCache;
use ybx_core::lattice::{check_operator_ybe, enumerate_grid_states, partition_function, transfer_matrix_z};
use ybx_core::model::{ordered_pairs, RSlot, Tag};
use ybx_core::solver::{build_r, check_conditions, Normalization};
use ybx_core::transforms::{apply_rho, apply_zeta, gen_scaled, gen_uq_gln, sample_solvable};
use ybx_core::ybe::{all_boundaries, enumerate_nonzero_boundaries, permutation_class, verify_ybe};
use ybx_core::{Scalar, WeightSet};

use crate::format::{self, FormatError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Environment variable overriding the brute-force state guard.
pub const MAX_STATES_ENV: &str = "YBX_MAX_STATES";

#[derive(Parser, Debug)]
#[command(
    name = "ybx",
    version,
    about = "Solvability and Yang-Baxter checks for n-color ice-type models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VerifyMode {
    Diagram,
    Operator,
    Both,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    Brute,
    Transfer,
    Both,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    UqGln,
    Scaled,
    Sample,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// List the admissible vertices for n colors.
    Vertices {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Evaluate every solvability condition for a pair of weight files.
    Check {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
        /// Write the per-condition report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the R-weights for a solvable pair.
    Solve {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Auxiliary label for the closed form (needs n >= 3).
        #[arg(long)]
        aux: Option<usize>,
    },
    /// Check the Yang-Baxter equation for an (R, S, T) triple.
    Verify {
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, value_enum, default_value = "diagram")]
        mode: VerifyMode,
    },
    /// List the boundaries whose polynomial is not identically zero.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also list permutation classes of color-conserving boundaries.
        #[arg(long)]
        classes: bool,
    },
    /// Apply a rho- or zeta-twist to a weight file.
    #[command(group(ArgGroup::new("twist").required(true).args(["rho", "zeta"])))]
    Twist {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        rho: Option<PathBuf>,
        #[arg(long)]
        zeta: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Partition function of a grid file.
    Partition {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, value_enum, default_value = "transfer")]
        method: Method,
        /// Print every admissible state with its weight (brute force).
        #[arg(long)]
        list_states: bool,
    },
    /// Generate an (S, T) pair from a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        zs: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        zt: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        a0: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        b0: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<Scalar>,
        /// Comma-separated z_i(S).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zs_list: Vec<Scalar>,
        /// Comma-separated z_i(T).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zt_list: Vec<Scalar>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_s: PathBuf,
        #[arg(long)]
        out_t: PathBuf,
    },
    /// Print the cross-ratio invariants of a pair.
    Invariants {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
}

type Outcome = Result<u8, FormatError>;

fn verdict(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = A>,
    A: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn io(e: std::io::Error) -> FormatError {
    FormatError::Write {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Vertices { n } => cmd_vertices(n as usize, out),
        Command::Check { s, t, report } => cmd_check(&s, &t, report.as_deref(), out),
        Command::Solve { s, t, out: path, aux } => cmd_solve(&s, &t, &path, aux, out),
        Command::Verify { r, s, t, mode } => cmd_verify(&r, &s, &t, mode, out),
        Command::Enumerate { n, classes } => cmd_enumerate(n as usize, classes, out),
        Command::Twist {
            weights,
            rho,
            zeta,
            out: path,
        } => cmd_twist(&weights, rho, zeta, &path, out),
        Command::Partition {
            grid,
            method,
            list_states,
        } => cmd_partition(&grid, method, list_states, out),
        Command::Gen {
            family,
            n,
            q,
            zs,
            zt,
            a0,
            b0,
            c0,
            zs_list,
            zt_list,
            seed,
            out_s,
            out_t,
        } => {
            let n = n as usize;
            let need = |v: Option<Scalar>, flag: &str| {
                v.ok_or_else(|| FormatError::Invalid(format!("--family {family:?} needs --{flag}")))
            };
            let (s, t) = match family {
                Family::UqGln => {
                    let q = need(q, "q")?;
                    (
                        gen_uq_gln(n, &q, &need(zs, "zs")?)?,
                        gen_uq_gln(n, &q, &need(zt, "zt")?)?,
                    )
                }
                Family::Scaled => gen_scaled(
                    n,
                    &need(a0, "a0")?,
                    &need(b0, "b0")?,
                    &need(c0, "c0")?,
                    &zs_list,
                    &zt_list,
                )?,
                Family::Sample => {
                    let seed = seed.ok_or_else(|| FormatError::Invalid("--family sample needs --seed".into()))?;
                    sample_solvable(n, seed)?
                }
            };
            format::write_text(&out_s, &format::weights_to_string(&s.with_tag(Tag::S)))?;
            format::write_text(&out_t, &format::weights_to_string(&t.with_tag(Tag::T)))?;
            writeln!(out, "wrote {} and {}", out_s.display(), out_t.display()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Invariants { s, t } => cmd_invariants(&s, &t, out),
    }
}

fn rect_edges(slot: RSlot) -> (usize, usize, usize, usize) {
    // (W, N, E, S)
    match slot {
        RSlot::A(i) => (i, i, i, i),
        RSlot::B(i, j) => (i, j, i, j),
        RSlot::C(i, j) => (i, j, j, i),
    }
}

fn cmd_vertices(n: usize, out: &mut dyn Write) -> Outcome {
    let mut count = 0;
    for slot in RSlot::all(n) {
        let (w, nn, e, s) = rect_edges(slot);
        let label = slot.to_string().to_lowercase();
        writeln!(out, "{label} W={w} N={nn} E={e} S={s}").map_err(io)?;
        count += 1;
    }
    debug_assert_eq!(count, n * (2 * n - 1));
    Ok(EXIT_OK)
}

fn read_pair(s: &Path, t: &Path) -> Result<(WeightSet, WeightSet), FormatError> {
    Ok((format::read_weights(s)?, format::read_weights(t)?))
}

fn cmd_check(s: &Path, t: &Path, report_path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (s, t) = read_pair(s, t)?;
    let report = check_conditions(&s, &t)?;
    let text = report.to_string();
    match report_path {
        Some(p) => {
            format::write_text(p, &format!("{text}\n"))?;
            let last = text.lines().last().unwrap_or_default();
            writeln!(out, "{last}").map_err(io)?;
        }
        None => writeln!(out, "{text}").map_err(io)?,
    }
    Ok(verdict(report.solvable))
}

fn cmd_solve(s: &Path, t: &Path, path: &Path, aux: Option<usize>, out: &mut dyn Write) -> Outcome {
    let (s, t) = read_pair(s, t)?;
    let report = check_conditions(&s, &t)?;
    if !report.solvable {
        for c in report.failures() {
            writeln!(out, "{c}").map_err(io)?;
        }
        writeln!(out, "{}", report.to_string().lines().last().unwrap_or_default()).map_err(io)?;
        return Ok(EXIT_NEGATIVE);
    }
    let r = build_r(&s, &t, aux, Normalization::Aux)?;
    format::write_text(path, &format::r_to_string(&r))?;
    writeln!(out, "wrote {}", path.display()).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(r: &Path, s: &Path, t: &Path, mode: VerifyMode, out: &mut dyn Write) -> Outcome {
    let r = format::read_r(r)?;
    let (s, t) = read_pair(s, t)?;
    let mut ok = true;
    if matches!(mode, VerifyMode::Diagram | VerifyMode::Both) {
        let report = verify_ybe(&r, &s, &t)?;
        for b in &report.failures {
            writeln!(out, "FAIL {b}").map_err(io)?;
        }
        let passed = report.checked - report.failures.len();
        let status = if report.is_ok() { "OK" } else { "FAILED" };
        writeln!(out, "{passed}/{} {status}", report.checked).map_err(io)?;
        ok &= report.is_ok();
    }
    if matches!(mode, VerifyMode::Operator | VerifyMode::Both) {
        let holds = check_operator_ybe(&r, &s, &t)?;
        let line = if holds {
            "operator RST = TSR OK"
        } else {
            "operator RST != TSR FAILED"
        };
        writeln!(out, "{line}").map_err(io)?;
        ok &= holds;
    }
    Ok(verdict(ok))
}

fn cmd_enumerate(n: usize, classes: bool, out: &mut dyn Write) -> Outcome {
    let nonzero = enumerate_nonzero_boundaries(n);
    for b in &nonzero {
        writeln!(out, "{b}").map_err(io)?;
    }
    writeln!(out, "count {}", nonzero.len()).map_err(io)?;
    if classes {
        let mut members: BTreeMap<_, usize> = BTreeMap::new();
        for b in all_boundaries(n).filter(|b| b.conserves_colors()) {
            *members.entry(permutation_class(&b)).or_default() += 1;
        }
        let nonzero_classes: std::collections::BTreeSet<_> = nonzero.iter().map(permutation_class).collect();
        for (rep, size) in &members {
            let kind = if nonzero_classes.contains(rep) {
                "nonzero"
            } else {
                "zero"
            };
            writeln!(out, "class {rep} members={size} {kind}").map_err(io)?;
        }
        writeln!(out, "classes {}", members.len()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_twist(weights: &Path, rho: Option<PathBuf>, zeta: Option<PathBuf>, path: &Path, out: &mut dyn Write) -> Outcome {
    let w = format::read_weights(weights)?;
    let twisted = match (rho, zeta) {
        (Some(p), _) => apply_rho(&w, &format::read_rho(&p)?)?,
        (None, Some(p)) => apply_zeta(&w, &format::read_zeta(&p)?)?,
        (None, None) => unreachable!("clap requires one twist"),
    };
    format::write_text(path, &format::weights_to_string(&twisted))?;
    writeln!(out, "wrote {}", path.display()).map_err(io)?;
    Ok(EXIT_OK)
}

fn state_limit() -> Result<Option<u128>, FormatError> {
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| FormatError::Invalid(format!("{MAX_STATES_ENV}={v} is not a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn cmd_partition(grid: &Path, method: Method, list_states: bool, out: &mut dyn Write) -> Outcome {
    let grid = format::read_grid(grid)?;
    let limit = state_limit()?;
    if list_states {
        for (k, state) in enumerate_grid_states(&grid, limit)?.iter().enumerate() {
            writeln!(out, "state {k} weight {}", state.weight(&grid)?).map_err(io)?;
            for line in format::state_to_string(state).lines() {
                writeln!(out, "  {line}").map_err(io)?;
            }
        }
    }
    let z = match method {
        Method::Brute => partition_function(&grid, limit)?,
        Method::Transfer => transfer_matrix_z(&grid)?,
        Method::Both => {
            let brute = partition_function(&grid, limit)?;
            let transfer = transfer_matrix_z(&grid)?;
            if brute != transfer {
                writeln!(out, "MISMATCH brute {brute} transfer {transfer}").map_err(io)?;
                return Ok(EXIT_NEGATIVE);
            }
            brute
        }
    };
    writeln!(out, "Z = {z}").map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_invariants(s: &Path, t: &Path, out: &mut dyn Write) -> Outcome {
    let (s, t) = read_pair(s, t)?;
    let cache = InvariantCache::new(&s, &t)?;
    for (i, j) in ordered_pairs(s.n()) {
        writeln!(
            out,
            "({i},{j}) delta_s {} delta_t {} tau {} beta {} gamma {} alpha {}",
            cache.delta_s(i, j),
            cache.delta_t(i, j),
            cache.tau(i, j),
            cache.beta(i, j),
            cache.gamma(i, j),
            cache.alpha(i, j)
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}
