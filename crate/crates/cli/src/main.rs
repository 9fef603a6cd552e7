//! `reisner`: Stanley–Reisner invariants, family generators, Cohen–Macaulay
//! covers and verification bundles from the command line.

mod bundles;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reisner::cover::{cm_cover, realize, sandwich_family, RealizationOutcome};
use reisner::families::FamilySpec;
use reisner::hochster::betti_table;
use reisner::props::{BettiSummary, PropertyReport};
use reisner::sc::{parse_sc, to_sc};
use reisner::{reduced_homology, Error, FieldSpec, SimplicialComplex};
use serde::Serialize;

use bundles::{Bundle, BundleReport};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "reisner", version, about)]
struct Cli {
    /// Coefficient field: `q` for the rationals or `gf:<p>` for a prime p.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest accepted vertex count.
    #[arg(long = "max-n", global = true, default_value_t = 16)]
    max_n: usize,

    /// Machine-readable JSON output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Human-readable text output.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants and property verdicts of a complex.
    Props {
        /// `.sc` file, or `-` for stdin.
        file: PathBuf,
    },
    /// Graded Betti table of the Stanley–Reisner ring.
    Betti { file: PathBuf },
    /// Reduced simplicial homology.
    Homology { file: PathBuf },
    /// Alexander dual, written as `.sc`.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generates a member of a named family as `.sc`.
    Gen {
        /// skeleton, max-embdim-cm, disjoint-union-q2, hibi-cycle, terai,
        /// hanano, cyclic-boundary, cyclic-dual, bruns-hibi,
        /// bruns-hibi-dual, rp2 or moebius.
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cohen–Macaulay cover of a Buchsbaum complex with d-linear resolution.
    Cover {
        file: PathBuf,
        /// Also write the cover as `.sc`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adds facets of the upper complex to the lower one until it has
    /// `target` facets.
    Sandwich {
        minus: PathBuf,
        plus: PathBuf,
        target: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Searches for a Buchsbaum q-linear complex with parameters (c, d, q, h).
    Explore {
        c: usize,
        d: usize,
        q: usize,
        h: usize,
        /// Write the witness, if any, as `.sc`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs named verification bundles.
    Verify {
        #[arg(required = true, value_enum)]
        bundles: Vec<Bundle>,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(PathBuf, io::Error),
    /// A bundle found a counterexample; the report was already printed.
    BundleFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::VerificationFailed(_)) | CliError::BundleFailed => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

struct Ctx {
    field: FieldSpec,
    seed: u64,
    max_n: usize,
    text: bool,
}

impl Ctx {
    fn emit<T: Serialize>(&self, command: &str, body: T, text: impl FnOnce(&T) -> String) {
        if self.text {
            print!("{}", text(&body));
        } else {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                body,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&env).expect("reports serialize")
            );
        }
    }

    fn check_size(&self, cx: &SimplicialComplex) -> CliResult<()> {
        if cx.n() > self.max_n {
            return Err(Error::SizeCapExceeded {
                n: cx.n(),
                cap: self.max_n,
            }
            .into());
        }
        Ok(())
    }

    fn load(&self, path: &Path) -> CliResult<SimplicialComplex> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(path.into(), e))?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?
        };
        let cx = parse_sc(&text, false)?;
        self.check_size(&cx)?;
        Ok(cx)
    }
}

fn write_sc(path: &Path, cx: &SimplicialComplex) -> CliResult<()> {
    fs::write(path, to_sc(cx)).map_err(|e| CliError::Io(path.into(), e))
}

/// Shape of a complex written to disk.
#[derive(Serialize)]
struct Written {
    path: String,
    n: usize,
    d: usize,
    facets: usize,
}

impl Written {
    fn new(path: &Path, cx: &SimplicialComplex) -> Self {
        Written {
            path: path.display().to_string(),
            n: cx.n(),
            d: cx.krull_dim(),
            facets: cx.facets().len(),
        }
    }

    fn text(&self) -> String {
        format!(
            "wrote {} (n = {}, d = {}, {} facets)\n",
            self.path, self.n, self.d, self.facets
        )
    }
}

/// Prints `.sc` to stdout, or writes it and reports the file.
fn emit_complex(
    ctx: &Ctx,
    command: &str,
    cx: &SimplicialComplex,
    out: Option<&Path>,
) -> CliResult<()> {
    match out {
        None => print!("{}", to_sc(cx)),
        Some(path) => {
            write_sc(path, cx)?;
            ctx.emit(command, Written::new(path, cx), Written::text);
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BettiOut {
    field: FieldSpec,
    n: usize,
    #[serde(flatten)]
    summary: BettiSummary,
}

#[derive(Serialize)]
struct HomologyEntry {
    degree: isize,
    dim: u64,
}

#[derive(Serialize)]
struct HomologyOut {
    field: FieldSpec,
    n: usize,
    dim: isize,
    reduced: Vec<HomologyEntry>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CoverOut {
    field: FieldSpec,
    seed: u64,
    attempts: usize,
    h: usize,
    added_facets: Vec<Vec<usize>>,
    e: u64,
    cover: SimplicialComplex,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

#[derive(Serialize)]
struct SandwichOut {
    field: FieldSpec,
    seed: u64,
    target: usize,
    e: u64,
    h: u64,
    complex: SimplicialComplex,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

#[derive(Serialize)]
struct ExploreOut {
    field: FieldSpec,
    seed: u64,
    #[serde(flatten)]
    outcome: RealizationOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

#[derive(Serialize)]
struct VerifyOut {
    field: FieldSpec,
    seed: u64,
    passed: bool,
    bundles: Vec<BundleReport>,
}

fn facet_list(facets: &[Vec<usize>]) -> String {
    facets
        .iter()
        .map(|f| {
            format!(
                "{{{}}}",
                f.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn run(cli: Cli) -> CliResult<()> {
    let ctx = Ctx {
        field: cli.field,
        seed: cli.seed,
        max_n: cli.max_n,
        text: cli.text,
    };
    let f = ctx.field;
    match cli.command {
        Command::Props { file } => {
            let cx = ctx.load(&file)?;
            let report = PropertyReport::compute(&cx, f)?;
            ctx.emit("props", report, PropertyReport::to_text);
        }
        Command::Betti { file } => {
            let cx = ctx.load(&file)?;
            let table = betti_table(&cx, f)?;
            let out = BettiOut {
                field: f,
                n: cx.n(),
                summary: BettiSummary::from_table(table),
            };
            ctx.emit("betti", out, |o| o.summary.table.to_string());
        }
        Command::Homology { file } => {
            let cx = ctx.load(&file)?;
            let reduced = reduced_homology(&cx, f)
                .entries()
                .map(|(degree, dim)| HomologyEntry { degree, dim })
                .collect();
            let out = HomologyOut {
                field: f,
                n: cx.n(),
                dim: cx.dim(),
                reduced,
            };
            ctx.emit("homology", out, |o| {
                o.reduced.iter().fold(String::new(), |mut s, e| {
                    let _ = writeln!(s, "H~_{}: {}", e.degree, e.dim);
                    s
                })
            });
        }
        Command::Dual { file, out } => {
            let cx = ctx.load(&file)?;
            emit_complex(&ctx, "dual", &cx.alexander_dual()?, out.as_deref())?;
        }
        Command::Gen {
            family,
            params,
            out,
        } => {
            let cx = FamilySpec::parse(&family, &params)?.generate()?;
            ctx.check_size(&cx)?;
            emit_complex(&ctx, "gen", &cx, out.as_deref())?;
        }
        Command::Cover { file, out } => {
            let cx = ctx.load(&file)?;
            let result = cm_cover(&cx, f, ctx.seed)?;
            if let Some(path) = &out {
                write_sc(path, &result.cover)?;
            }
            let body = CoverOut {
                field: f,
                seed: ctx.seed,
                attempts: result.attempts,
                h: result.added_facets.len(),
                e: result.cover.multiplicity(),
                added_facets: result.added_facets,
                cover: result.cover,
                path: out.map(|p| p.display().to_string()),
            };
            ctx.emit("cover", body, |o| {
                format!(
                    "cover with e = {} after {} attempt(s); added {} facet(s): {}\n",
                    o.e,
                    o.attempts,
                    o.h,
                    facet_list(&o.added_facets)
                )
            });
        }
        Command::Sandwich {
            minus,
            plus,
            target,
            out,
        } => {
            let (lo, hi) = (ctx.load(&minus)?, ctx.load(&plus)?);
            let mid = sandwich_family(&lo, &hi, target, f, ctx.seed)?;
            if let Some(path) = &out {
                write_sc(path, &mid)?;
            }
            let h = reduced_homology(&mid, f).get(mid.krull_dim() as isize - 2);
            let body = SandwichOut {
                field: f,
                seed: ctx.seed,
                target,
                e: mid.multiplicity(),
                h,
                complex: mid,
                path: out.map(|p| p.display().to_string()),
            };
            ctx.emit("sandwich", body, |o| {
                format!("sandwiched complex with e = {} and h = {}\n", o.e, o.h)
            });
        }
        Command::Explore { c, d, q, h, out } => {
            let outcome = realize(c, d, q, h, f, ctx.seed)?;
            let path = match (&out, &outcome.witness) {
                (Some(path), Some(w)) => {
                    write_sc(path, w)?;
                    Some(path.display().to_string())
                }
                _ => None,
            };
            let body = ExploreOut {
                field: f,
                seed: ctx.seed,
                outcome,
                path,
            };
            ctx.emit("explore", body, |o| {
                let p = o.outcome.params;
                let mut s = format!(
                    "(c, d, q, h) = ({}, {}, {}, {}): {:?} via {:?}\n",
                    p.c, p.d, p.q, p.h, o.outcome.status, o.outcome.method
                );
                if let Some(w) = &o.outcome.witness {
                    s.push_str(&to_sc(w));
                }
                s
            });
        }
        Command::Verify { bundles } => {
            let mut chosen: Vec<Bundle> = bundles.into_iter().flat_map(Bundle::expand).collect();
            chosen.dedup();
            let reports: Vec<BundleReport> = chosen.iter().map(|b| b.run(f, ctx.seed)).collect();
            let passed = reports.iter().all(|r| r.passed);
            for failure in reports.iter().flat_map(|r| &r.failures) {
                eprintln!(
                    "FAIL {} on {}: {}",
                    failure.check, failure.complex, failure.detail
                );
                if let Some(sc) = &failure.sc {
                    eprint!("{sc}");
                }
            }
            let body = VerifyOut {
                field: f,
                seed: ctx.seed,
                passed,
                bundles: reports,
            };
            ctx.emit("verify", body, |o| {
                o.bundles.iter().fold(String::new(), |mut s, r| {
                    let verdict = if r.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{verdict} {} over {}: {} checks, {} failure(s)",
                        r.bundle,
                        r.field,
                        r.checks,
                        r.failures.len()
                    );
                    s
                })
            });
            if !passed {
                return Err(CliError::BundleFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Lib(e) => eprintln!("error[{}]: {e}", e.code()),
                CliError::Io(path, e) => eprintln!("error[E_IO]: {}: {e}", path.display()),
                CliError::BundleFailed => eprintln!("error[E_VERIFICATION]: bundle failed"),
            }
            ExitCode::from(err.exit_code())
        }
    }
}
