use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use os_resonance::latin::{self, HypercubeJson, LatinHypercube, LatinSquare, Subsquare};
use os_resonance::matroid::{Matroid, MatroidJson};
use os_resonance::oscohomology::{self, CohomologyReport};
use os_resonance::realization::{self, VerificationReport};
use os_resonance::scalar::parse_rational;
use os_resonance::{QWeight, Rational};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "os-resonance", version, about = "Latin-square matroids and Orlik-Solomon cohomology")]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Also print a human-readable table on stderr.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for parallel steps.
    #[arg(long, env = "OS_RESONANCE_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count main classes of Latin squares of order m and list representatives.
    LatinClassify {
        #[arg(long)]
        order: usize,
    },
    /// Build the matroid of a Latin square or hypercube, optionally degenerated.
    MatroidBuild(BuildArgs),
    /// Dimensions of the Aomoto complex cohomology of a matroid for a weight.
    Cohomology(CohomologyArgs),
    /// Verify a catalog realization.
    Verify {
        #[arg(long)]
        entry: String,
    },
    /// List the catalog of realizations.
    CatalogList,
}

#[derive(Args)]
struct BuildArgs {
    /// Square or hypercube JSON file.
    #[arg(long, alias = "hypercube")]
    square: PathBuf,
    /// Further squares orthogonal to the first.
    #[arg(long, num_args = 1..)]
    mols: Vec<PathBuf>,
    /// Subsquare as "rows;cols", e.g. "1,3;2,4". May be repeated.
    #[arg(long)]
    subsquare: Vec<String>,
    /// One simple matroid JSON file per block.
    #[arg(long, num_args = 1..)]
    blocks: Vec<PathBuf>,
}

#[derive(Args)]
struct CohomologyArgs {
    /// Matroid JSON file.
    #[arg(long)]
    matroid: PathBuf,
    /// Comma-separated weight, one rational per element.
    #[arg(long, conflicts_with = "block_weight", required_unless_present = "block_weight")]
    weight: Option<String>,
    /// Comma-separated block values, each repeated `--order` times.
    #[arg(long, requires = "order")]
    block_weight: Option<String>,
    /// Block size for `--block-weight`.
    #[arg(long)]
    order: Option<usize>,
}

/// Bad input: exit status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<E: Into<anyhow::Error>>(e: E) -> anyhow::Error {
    InputError(e.into()).into()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input)
}

fn read_square(path: &Path) -> Result<LatinSquare> {
    let j: HypercubeJson = read_json(path)?;
    LatinSquare::from_json(&j)
        .with_context(|| format!("{} is not a Latin square", path.display()))
        .map_err(input)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| anyhow!("bad rational {t:?}: {e}")))
        .collect::<Result<_>>()
        .map_err(input)
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!("bad index {t:?}: {e}")))
        .collect::<Result<_>>()
        .map_err(input)
}

fn parse_subsquare(k: &LatinSquare, s: &str) -> Result<Subsquare> {
    let (rows, cols) = s
        .split_once(';')
        .ok_or_else(|| input(anyhow!("subsquare {s:?} should look like \"1,3;2,4\"")))?;
    Subsquare::new(k, &parse_indices(rows)?, &parse_indices(cols)?).map_err(input)
}

fn build(args: &BuildArgs) -> Result<Matroid> {
    let j: HypercubeJson = read_json(&args.square)?;
    let plain = args.mols.is_empty() && args.subsquare.is_empty() && args.blocks.is_empty();
    if j.dim != 2 {
        if !plain {
            bail!(input(anyhow!("degenerations need a Latin square, got dimension {}", j.dim)));
        }
        let k = LatinHypercube::from_json(&j).map_err(input)?;
        return k.build_matroid().map_err(input);
    }
    let k = LatinSquare::from_json(&j).map_err(input)?;
    if plain {
        return k.build_matroid().map_err(input);
    }
    let mut ks = vec![k];
    for p in &args.mols {
        ks.push(read_square(p)?);
    }
    let subsquares = args
        .subsquare
        .iter()
        .map(|s| parse_subsquare(&ks[0], s))
        .collect::<Result<Vec<_>>>()?;
    let blocks = args
        .blocks
        .iter()
        .map(|p| Matroid::from_json(&read_json::<MatroidJson>(p)?).map_err(input))
        .collect::<Result<Vec<_>>>()?;
    let blocks = (!blocks.is_empty()).then_some(blocks.as_slice());
    latin::degenerate(&ks, blocks, &subsquares).map_err(input)
}

fn weight(args: &CohomologyArgs) -> Result<QWeight> {
    match (&args.weight, &args.block_weight, args.order) {
        (Some(w), _, _) => Ok(QWeight::new(parse_list(w)?)),
        (None, Some(b), Some(m)) if m > 0 => Ok(QWeight::from_blocks(m, &parse_list(b)?)),
        _ => Err(input(anyhow!("give --weight, or --block-weight with a positive --order"))),
    }
}

fn compute_cohomology(args: &CohomologyArgs) -> Result<CohomologyReport> {
    let m = Matroid::from_json(&read_json::<MatroidJson>(&args.matroid)?).map_err(input)?;
    let w = weight(args)?;
    if w.len() != m.n() {
        bail!(input(anyhow!("weight has {} entries, matroid has {} elements", w.len(), m.n())));
    }
    Ok(oscohomology::cohomology(&m, &w)?)
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn dims_rows(r: &CohomologyReport) -> Vec<(String, String)> {
    let mut rows: Vec<(String, String)> = r
        .dims_a
        .iter()
        .enumerate()
        .map(|(p, d)| (format!("dim H^{p}(A)"), d.to_string()))
        .collect();
    if let Some(da) = &r.dims_da {
        rows.extend(da.iter().enumerate().map(|(p, d)| (format!("dim H^{p}(dA)"), d.to_string())));
    }
    rows
}

fn verification_rows(r: &VerificationReport) -> Vec<(String, String)> {
    let mut rows = vec![("entry".to_string(), format!("{} over {}", r.entry, r.field))];
    for c in &r.claims {
        let mark = if c.passed { "ok" } else { "FAILED" };
        rows.push((c.claim.clone(), format!("{mark}: {}", c.detail)));
    }
    rows.push(("result".into(), if r.passed { "passed" } else { "failed" }.into()));
    rows
}

struct Outcome {
    json: serde_json::Value,
    table: String,
    success: bool,
}

fn to_value<T: Serialize>(x: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(x)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::LatinClassify { order } => {
            let reps = latin::main_class_representatives(*order).map_err(input)?;
            let squares: Vec<Vec<Vec<usize>>> = reps.iter().map(LatinSquare::rows).collect();
            let mut rows = vec![("order".to_string(), order.to_string()), ("main classes".into(), reps.len().to_string())];
            for (i, k) in reps.iter().enumerate() {
                let text: Vec<String> = k
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                rows.push((format!("class {}", i + 1), text.join(" / ")));
            }
            Ok(Outcome {
                json: json!({ "order": order, "count": reps.len(), "representatives": squares }),
                table: table(&rows),
                success: true,
            })
        }
        Command::MatroidBuild(args) => {
            let m = build(args)?;
            let profile = m.circuit_size_profile();
            let rows = vec![
                ("elements".to_string(), m.n().to_string()),
                ("rank".into(), m.rank().to_string()),
                ("circuits".into(), m.num_circuits().to_string()),
                ("circuits by size".into(), format!("{profile:?}")),
            ];
            Ok(Outcome {
                json: to_value(&m.to_json())?,
                table: table(&rows),
                success: true,
            })
        }
        Command::Cohomology(args) => {
            let r = compute_cohomology(args)?;
            Ok(Outcome {
                json: to_value(&r)?,
                table: table(&dims_rows(&r)),
                success: true,
            })
        }
        Command::Verify { entry } => {
            let e = realization::catalog(entry).map_err(input)?;
            let r = realization::verify(&e);
            Ok(Outcome {
                json: to_value(&r)?,
                table: table(&verification_rows(&r)),
                success: r.passed,
            })
        }
        Command::CatalogList => {
            let mut list = Vec::new();
            let mut rows = Vec::new();
            for name in realization::catalog_names() {
                let e = realization::catalog(name)?;
                list.push(json!({
                    "name": e.name,
                    "description": e.description,
                    "field": e.configuration.field_name(),
                    "rank": e.configuration.rank(),
                    "size": e.configuration.len(),
                    "experimental": e.experimental,
                }));
                let tag = if e.experimental { " (experimental)" } else { "" };
                rows.push((e.name.clone(), format!("{}{tag}", e.description)));
            }
            Ok(Outcome {
                json: serde_json::Value::Array(list),
                table: table(&rows),
                success: true,
            })
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!(input(anyhow!("thread count must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn emit(cli: &Cli, out: &Outcome) -> Result<()> {
    let text = serde_json::to_string_pretty(&out.json)? + "\n";
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if cli.pretty {
        eprint!("{}", out.table);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.threads).and_then(|_| run(&cli)).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out.success)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
