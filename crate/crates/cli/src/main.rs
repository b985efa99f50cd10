use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lieposet::algebra::{matrix_form, render_matrix_form};
use lieposet::enumerate::{canonical_mask, enumerate_h01};
use lieposet::frobenius::{self, SignConvention};
use lieposet::harness::{run_campaign, CampaignConfig, Check};
use lieposet::index::{index_formula, index_oracle, type_a_height_one_index, CommutatorMatrix};
use lieposet::io::{self, PosetSpec};
use lieposet::{reduce, Error, Family, LiePosetAlgebra, MirrorMode, SignedPoset};

#[derive(Parser)]
#[command(name = "lieposet", version, about = "Index, Frobenius functionals and spectra of Lie poset algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value = "text", env = "LIEPOSET_FORMAT")]
    format: Format,

    /// Random evaluations for the generic-rank oracle
    #[arg(long, global = true, default_value_t = 5, env = "LIEPOSET_TRIALS")]
    trials: usize,

    #[arg(long, global = true, default_value_t = 0, env = "LIEPOSET_SEED")]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fallback {
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Poset,
    Hasse,
    RelationGraph,
    Structure,
}

#[derive(Args)]
struct Input {
    /// Poset file (`family=C n=3` header and `x <= y` lines, or JSON)
    file: Option<PathBuf>,

    /// Inline poset, e.g. "C;3;-2<=1,-2<=3"
    #[arg(long, conflicts_with = "file", env = "LIEPOSET_POSET")]
    poset: Option<String>,

    /// Reject inputs whose mirror relations are missing instead of adding them
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the poset axioms and print basic invariants
    Validate(Input),
    /// Print the matrix form of the algebra
    MatrixForm {
        #[command(flatten)]
        input: Input,
        /// Also print the nonzero brackets of basis elements
        #[arg(long)]
        structure: bool,
    },
    Index {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both", env = "LIEPOSET_METHOD")]
        method: Method,
        /// Use the rank oracle when no formula covers the poset
        #[arg(long, value_enum, env = "LIEPOSET_FALLBACK")]
        fallback: Option<Fallback>,
    },
    /// Run the graph-guided reduction of B(P)
    Reduce(Input),
    /// Frobenius criterion, functional F_P and kernel dimension
    Frobenius(Input),
    Principal {
        #[command(flatten)]
        input: Input,
        /// Compare the solved element with both printed closed forms
        #[arg(long)]
        check_closed_form: bool,
    },
    Spectrum(Input),
    /// List the height-(0,1) corpus of a family
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// One poset per isomorphism class of relation graphs
        #[arg(long)]
        canonical: bool,
    },
    /// Run a verification campaign
    Verify {
        /// Corpora as family and largest n, e.g. C4
        #[arg(long = "corpus", value_delimiter = ',', default_value = "C3")]
        corpora: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 1, env = "LIEPOSET_JOBS")]
        jobs: usize,
        /// Write the JSON report here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "poset")]
        what: ExportWhat,
    },
}

enum Failure {
    Input(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(format!("error[{}]: {e}", e.code()))
        } else {
            Failure::Compute(e)
        }
    }
}

type Out = Result<String, Failure>;

fn load(input: &Input) -> Result<SignedPoset, Failure> {
    let text = match (&input.poset, &input.file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("error[InputParseError]: cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Input("error[InputParseError]: give a poset file or --poset".into())),
    };
    let mode = if input.strict { MirrorMode::Strict } else { MirrorMode::Complete };
    Ok(io::parse_any(&text)?.build(mode)?)
}

fn allowed(command: &Command, format: Format) -> bool {
    match format {
        Format::Text => true,
        Format::Json => !matches!(command, Command::Export { what: ExportWhat::Hasse | ExportWhat::RelationGraph, .. }),
        Format::Dot => matches!(
            command,
            Command::Validate(_) | Command::Reduce(_) | Command::Export { what: ExportWhat::Hasse | ExportWhat::RelationGraph, .. }
        ),
    }
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("plain data") + "\n"
}

fn validate(cli: &Cli, input: &Input) -> Out {
    let p = load(input)?;
    let h = p.height();
    Ok(match cli.format {
        Format::Dot => io::hasse_dot(&p),
        Format::Json => pretty(json!({
            "valid": true,
            "poset": io::to_json(&p),
            "height": [h.plus_height, h.total_height],
            "separable": p.is_separable(),
        })),
        Format::Text => {
            let covers: Vec<String> = p.covering_relations().iter().map(|(x, y)| format!("{x}<={y}")).collect();
            format!(
                "valid type-{} poset, n={}\nheight {h}\nseparable {}\ncovering relations: {}\n",
                p.family(),
                p.n(),
                p.is_separable(),
                covers.join(", ")
            )
        }
    })
}

fn matrix_form_cmd(cli: &Cli, input: &Input, structure: bool) -> Out {
    let p = load(input)?;
    let alg = LiePosetAlgebra::new(&p)?;
    Ok(match cli.format {
        Format::Json => {
            let positions: Vec<[i64; 2]> = matrix_form(&p).into_iter().map(|(x, y)| [x, y]).collect();
            let mut v = json!({ "labels": p.elements(), "positions": positions, "basis": alg.names() });
            if structure {
                v["structure"] = alg.structure_json();
            }
            pretty(v)
        }
        _ => {
            let mut s = render_matrix_form(&p);
            s.push_str(&format!("dim {}: {}\n", alg.dim(), alg.names().join(" ")));
            if structure {
                s.push_str(&alg.structure_table());
            }
            s
        }
    })
}

fn index_cmd(cli: &Cli, input: &Input, method: Method, fallback: Option<Fallback>) -> Out {
    let p = load(input)?;
    let formula = if method == Method::Oracle {
        None
    } else if p.family() == Family::A {
        match type_a_height_one_index(&p) {
            Ok(v) => Some(Ok((v, "type-A height one".to_string()))),
            Err(e) => Some(Err(e)),
        }
    } else {
        Some(index_formula(&p).map(|f| (f.value, format!("{:?}", f.rule))))
    };
    let formula = match formula {
        Some(Err(e)) if fallback.is_none() => return Err(e.into()),
        Some(Err(_)) => None,
        other => other.map(|r| r.expect("errors handled above")),
    };
    let use_oracle = method != Method::Formula || formula.is_none();
    let oracle = if use_oracle { Some(index_oracle(&p, cli.trials, cli.seed)?) } else { None };
    let agree = match (&formula, oracle) {
        (Some((f, _)), Some(o)) => Some(*f == o),
        _ => None,
    };
    Ok(match cli.format {
        Format::Json => pretty(json!({
            "formula": formula.as_ref().map(|(v, _)| v),
            "rule": formula.as_ref().map(|(_, r)| r),
            "oracle": oracle,
            "trials": cli.trials,
            "seed": cli.seed,
            "agree": agree,
            "fallback": method != Method::Oracle && formula.is_none(),
        })),
        _ => {
            let mut s = String::new();
            match &formula {
                Some((v, rule)) => s.push_str(&format!("formula: {v} ({rule})\n")),
                None if method != Method::Oracle => s.push_str("formula: not applicable, using the oracle\n"),
                None => {}
            }
            if let Some(o) = oracle {
                s.push_str(&format!("oracle: {o} (trials {}, seed {})\n", cli.trials, cli.seed));
            }
            if let Some(a) = agree {
                s.push_str(&format!("agree: {a}\n"));
            }
            s
        }
    })
}

fn reduce_cmd(cli: &Cli, input: &Input) -> Out {
    let p = load(input)?;
    let t = reduce(&p, cli.seed)?;
    Ok(match cli.format {
        Format::Dot => format!("// seed {}\n{}", cli.seed, t.to_dot()),
        Format::Json => pretty(serde_json::to_value(&t).expect("plain data")),
        Format::Text => {
            let g = p.relation_graph()?;
            format!(
                "{}final rank {} (expected {}), rank preserved: {}\n",
                t.render(),
                t.final_rank(),
                lieposet::reduction::expected_rank(&g),
                t.rank_preserved()
            )
        }
    })
}

fn frobenius_cmd(cli: &Cli, input: &Input) -> Out {
    let p = load(input)?;
    let f = frobenius::frobenius_functional(&p)?;
    let k = frobenius::kernel_dim(&p, &f)?;
    Ok(match cli.format {
        Format::Json => pretty(json!({ "frobenius": true, "functional": f.render(), "kernel_dim": k })),
        _ => format!("Frobenius by the relation graph\nF_P = {f}\nkernel dimension {k}\n"),
    })
}

fn principal_cmd(cli: &Cli, input: &Input, check: bool) -> Out {
    let p = load(input)?;
    let alg = LiePosetAlgebra::new(&p)?;
    let f = frobenius::frobenius_functional(&p)?;
    let fhat = frobenius::principal_element(&alg, &f)?;
    let fixed = frobenius::is_fixed_point(&alg, &f, &fhat);
    let convention = fhat.convention();
    Ok(match cli.format {
        Format::Json => {
            let mut v = fhat.to_json();
            v["functional"] = json!(f.render());
            v["fixed_point"] = json!(fixed);
            pretty(v)
        }
        _ => {
            let mut s = format!("F_P = {f}\nprincipal element: {}\n", fhat.render());
            if let Some(d) = &fhat.diagonal {
                let cells: Vec<String> = d.iter().map(|(i, c)| format!("c({i})={c}")).collect();
                s.push_str(&format!("diagonal: {}\n", cells.join(" ")));
            }
            s.push_str(&format!("F([F^, x]) = F(x) on the basis: {fixed}\n"));
            if check {
                let plus_half = convention == Some(SignConvention::PositiveHalf);
                let minus_half = convention == Some(SignConvention::NegativeHalf);
                s.push_str(&format!("closed form c(i)=1/2 on P+: {}\n", if plus_half { "matches" } else { "does not match" }));
                s.push_str(&format!("closed form c(-j)=1/2, c(j)=-1/2: {}\n", if minus_half { "matches" } else { "does not match" }));
            }
            s
        }
    })
}

fn spectrum_cmd(cli: &Cli, input: &Input) -> Out {
    let p = load(input)?;
    let a = frobenius::analyze(&p)?;
    Ok(match cli.format {
        Format::Json => pretty(a.spectrum.to_json()),
        _ => format!("{}\nbinary={}\n", a.spectrum, a.spectrum.is_binary()),
    })
}

fn enumerate_cmd(cli: &Cli, family: Family, n: usize, canonical: bool) -> Out {
    if !family.is_signed() || n == 0 || lieposet::enumerate::slots(family, n).len() > 20 {
        return Err(Failure::Input("error[InputParseError]: enumerate needs family B, C or D and a small n >= 1".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for (mask, p) in enumerate_h01(family, n) {
        if canonical && !seen.insert(canonical_mask(family, &p.relation_graph()?)) {
            continue;
        }
        rows.push((mask, p));
    }
    Ok(match cli.format {
        Format::Json => pretty(json!(rows.iter().map(|(m, p)| json!({ "mask": m, "poset": io::to_json(p) })).collect::<Vec<_>>())),
        _ => rows.iter().map(|(m, p)| format!("{m}\t{p}\n")).collect(),
    })
}

fn parse_corpus(s: &str) -> Result<(Family, usize), Failure> {
    let bad = || Failure::Input(format!("error[InputParseError]: corpus {s:?} is not a family and size like C4"));
    let (f, n) = s.trim().split_at_checked(1).ok_or_else(bad)?;
    let family: Family = f.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if !family.is_signed() || n == 0 {
        return Err(bad());
    }
    Ok((family, n))
}

fn verify_cmd(cli: &Cli, corpora: &[String], checks: &[Check], jobs: usize, output: &Option<PathBuf>) -> Out {
    let families = corpora.iter().map(|s| parse_corpus(s)).collect::<Result<Vec<_>, _>>()?;
    let cfg = CampaignConfig {
        families,
        checks: if checks.is_empty() { Check::ALL.to_vec() } else { checks.to_vec() },
        seed: cli.seed,
        trials: cli.trials,
        jobs,
    };
    let c = run_campaign(&cfg);
    let report = c.report_string();
    if let Some(path) = output {
        std::fs::write(path, &report).map_err(|e| Failure::Input(format!("error[InputParseError]: cannot write {}: {e}", path.display())))?;
    }
    let out = match cli.format {
        Format::Json => report,
        _ => format!("seed {}, trials {}\n{}", cfg.seed, cfg.trials, c.summary_table()),
    };
    if c.all_passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Compute(Error::UnsupportedPoset(format!("{} checks failed", c.failures().count()))))
    }
}

fn export_cmd(cli: &Cli, input: &Input, what: ExportWhat) -> Out {
    let p = load(input)?;
    Ok(match (what, cli.format) {
        (ExportWhat::Hasse, _) => io::hasse_dot(&p),
        (ExportWhat::RelationGraph, _) => io::relation_graph_dot(&p.relation_graph()?),
        (ExportWhat::Poset, Format::Json) => pretty(serde_json::to_value(PosetSpec::of(&p)).expect("plain data")),
        (ExportWhat::Poset, _) => io::to_text(&p),
        (ExportWhat::Structure, Format::Json) => pretty(LiePosetAlgebra::new(&p)?.structure_json()),
        (ExportWhat::Structure, _) => {
            let alg = LiePosetAlgebra::new(&p)?;
            format!("{}{}", CommutatorMatrix::new(&alg).render(), alg.structure_table())
        }
    })
}

fn dispatch(cli: &Cli) -> Out {
    if !allowed(&cli.command, cli.format) {
        return Err(Failure::Input("error[InputParseError]: this output format is not available for this command".into()));
    }
    match &cli.command {
        Command::Validate(input) => validate(cli, input),
        Command::MatrixForm { input, structure } => matrix_form_cmd(cli, input, *structure),
        Command::Index { input, method, fallback } => index_cmd(cli, input, *method, *fallback),
        Command::Reduce(input) => reduce_cmd(cli, input),
        Command::Frobenius(input) => frobenius_cmd(cli, input),
        Command::Principal { input, check_closed_form } => principal_cmd(cli, input, *check_closed_form),
        Command::Spectrum(input) => spectrum_cmd(cli, input),
        Command::Enumerate { family, n, canonical } => enumerate_cmd(cli, *family, *n, *canonical),
        Command::Verify { corpora, checks, jobs, output } => verify_cmd(cli, corpora, checks, *jobs, output),
        Command::Export { input, what } => export_cmd(cli, input, *what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
