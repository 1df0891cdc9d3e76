//! `coxrack`: build Coxeter racks, check rack tables and compute rack
//! counting invariants of link diagrams from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use coxrack::{
    build_coxeter_rack, cp_invariant, enumerate_colorings, find_isomorphism, parse_matrix_file,
    pr_invariant, verify_rack, CoxeterSpec, FiniteRack, Framing, LinkDiagram, MultiPoly,
};

#[derive(Parser, Debug)]
#[command(
    name = "coxrack",
    version,
    about = "Coxeter racks and rack counting invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build CR((Z/n)^m, alpha, A) and print its rack matrix and element labels.
    Build(SpecArgs),
    /// Check a rack matrix against the rack axioms.
    Verify(RackArgs),
    /// Print the rack rank (order of the diagonal permutation).
    Rank(RackArgs),
    /// Print the rack polynomial.
    Rackpoly(RackArgs),
    /// Search for an isomorphism between two racks.
    Iso {
        #[command(flatten)]
        rack: RackArgs,
        /// Rack matrix file of the second rack.
        #[arg(long)]
        other: PathBuf,
    },
    /// Polynomial rack counting invariant of a diagram.
    Pr(InvariantArgs),
    /// Coxeter enhanced rack counting invariant of a diagram.
    Cp(InvariantArgs),
    /// List every colouring of a diagram at one framing class.
    Colorings {
        #[command(flatten)]
        inv: InvariantArgs,
        /// Target writhe of each component modulo the rack rank, e.g. `1,1`.
        #[arg(long)]
        framing: String,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long)]
    modulus: Option<u32>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<i64>,
    /// Symmetric form, rows separated by `;` and entries by `,`: "1,2;2,0".
    #[arg(long)]
    form: Option<String>,
}

impl SpecArgs {
    fn is_empty(&self) -> bool {
        self.modulus.is_none() && self.dim.is_none() && self.alpha.is_none() && self.form.is_none()
    }

    fn spec(&self) -> Result<CoxeterSpec> {
        let (Some(n), Some(dim), Some(alpha), Some(form)) =
            (self.modulus, self.dim, self.alpha, self.form.as_deref())
        else {
            bail!("usage: --modulus, --dim, --alpha and --form must all be given");
        };
        Ok(CoxeterSpec::from_parts(n, dim, alpha, form)?)
    }
}

#[derive(Args, Debug)]
struct RackArgs {
    /// Rack matrix file.
    #[arg(long)]
    rack: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

impl RackArgs {
    fn load(&self) -> Result<FiniteRack> {
        match (&self.rack, self.spec.is_empty()) {
            (Some(path), true) => {
                let text = read(path)?;
                FiniteRack::parse(&text).with_context(|| format!("{}", path.display()))
            }
            (None, false) => Ok(build_coxeter_rack(&self.spec.spec()?)?),
            (Some(_), false) => bail!("usage: give either --rack or Coxeter flags, not both"),
            (None, true) => bail!("usage: a rack is required (--rack FILE or Coxeter flags)"),
        }
    }
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[command(flatten)]
    rack: RackArgs,
    /// Diagram file (signed crossing code).
    #[arg(long)]
    diagram: PathBuf,
}

impl InvariantArgs {
    fn load(&self) -> Result<(FiniteRack, LinkDiagram)> {
        let rack = self.rack.load()?;
        let text = read(&self.diagram)?;
        let diagram =
            LinkDiagram::parse(&text).with_context(|| format!("{}", self.diagram.display()))?;
        Ok((rack, diagram))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Result of one verb: the document to print and whether it is a failure.
struct Outcome {
    text: String,
    json: serde_json::Value,
    failed: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome {
            text,
            json,
            failed: false,
        }
    }

    fn poly(p: &MultiPoly) -> Self {
        Self::ok(format!("{p}\n"), p.to_json())
    }
}

fn rack_json(rack: &FiniteRack) -> serde_json::Value {
    let labels: Option<Vec<_>> = rack.labels().map(|ls| {
        ls.iter()
            .enumerate()
            .map(|(i, v)| json!({ "index": i + 1, "vector": v.entries() }))
            .collect()
    });
    let module = rack.module().map(|s| {
        json!({
            "modulus": s.modulus().get(),
            "dim": s.dim(),
            "alpha": s.alpha(),
            "form": s.form().rows(),
        })
    });
    json!({
        "size": rack.size(),
        "matrix": rack.table(),
        "labels": labels,
        "module": module,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Build(spec) => {
            let rack = build_coxeter_rack(&spec.spec()?)?;
            Outcome::ok(rack.to_matrix_file(), rack_json(&rack))
        }
        Command::Verify(args) => {
            let table = match &args.rack {
                Some(path) if args.spec.is_empty() => {
                    parse_matrix_file(&read(path)?)
                        .with_context(|| format!("{}", path.display()))?
                        .rows
                }
                _ => args.load()?.table(),
            };
            let report = verify_rack(&table)?;
            let violations: Vec<String> =
                report.violations.iter().map(ToString::to_string).collect();
            Outcome {
                text: format!("{}\n", report.to_string().trim_end()),
                json: json!({
                    "valid": report.is_valid(),
                    "total": report.total,
                    "violations": violations,
                }),
                failed: !report.is_valid(),
            }
        }
        Command::Rank(args) => {
            let rank = args.load()?.rack_rank();
            Outcome::ok(format!("{rank}\n"), json!({ "rank": rank }))
        }
        Command::Rackpoly(args) => Outcome::poly(&args.load()?.rack_polynomial()),
        Command::Iso { rack, other } => {
            let a = rack.load()?;
            let b =
                FiniteRack::parse(&read(other)?).with_context(|| format!("{}", other.display()))?;
            match find_isomorphism(&a, &b) {
                Some(map) => {
                    let lines: String = map
                        .iter()
                        .enumerate()
                        .map(|(i, j)| format!("{} -> {}\n", i + 1, j + 1))
                        .collect();
                    let one_based: Vec<usize> = map.iter().map(|j| j + 1).collect();
                    Outcome::ok(
                        format!("isomorphic\n{lines}"),
                        json!({ "isomorphic": true, "map": one_based }),
                    )
                }
                None => Outcome::ok("none\n".into(), json!({ "isomorphic": false, "map": null })),
            }
        }
        Command::Pr(args) => {
            let (rack, diagram) = args.load()?;
            Outcome::poly(&pr_invariant(&diagram, &rack)?)
        }
        Command::Cp(args) => {
            let (rack, diagram) = args.load()?;
            Outcome::poly(&cp_invariant(&diagram, &rack)?)
        }
        Command::Colorings { inv, framing } => {
            let (rack, diagram) = inv.load()?;
            colorings(&rack, &diagram, framing)?
        }
    })
}

fn colorings(rack: &FiniteRack, diagram: &LinkDiagram, framing: &str) -> Result<Outcome> {
    let rank = rack.rack_rank();
    let target: Vec<u64> = if framing.trim().is_empty() {
        Vec::new()
    } else {
        framing
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map(|w| w % rank)
                    .with_context(|| format!("bad framing entry {t:?}"))
            })
            .collect::<Result<_>>()?
    };
    if target.len() != diagram.num_components() {
        bail!(
            "usage: the diagram has {} component(s) but --framing has {} entries",
            diagram.num_components(),
            target.len()
        );
    }
    let f = Framing::for_target(diagram, &target, rack)?;
    let found = enumerate_colorings(diagram, &f, rack);
    let arcs: Vec<&str> = (0..diagram.num_arcs())
        .map(|a| diagram.arc_label(a))
        .collect();
    let rows: Vec<Vec<usize>> = found
        .iter()
        .map(|c| c.colors().iter().map(|x| x + 1).collect())
        .collect();
    let w: Vec<String> = target.iter().map(u64::to_string).collect();
    let mut text = format!(
        "# framing ({}) mod {rank}: {} coloring(s)\n{}\n",
        w.join(","),
        rows.len(),
        arcs.join(" ")
    );
    for row in &rows {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    Ok(Outcome::ok(
        text,
        json!({ "framing": target, "rank": rank, "arcs": arcs, "colorings": rows }),
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let doc = match cli.format {
        Format::Text => outcome.text,
        Format::Json => format!("{:#}\n", outcome.json),
    };
    let written = match &cli.output {
        Some(path) => {
            fs::write(path, &doc).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{doc}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
