use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cospec::census::{
    census_from_graphs, format_table, report_json, report_text, run_parallel_census, table_rows, CensusOptions,
};
use cospec::format::fmt_list;
use cospec::io::{format_vertex_set, parse_vertex_set, read_graph, read_graph6_file, read_graphs};
use cospec::verify::{run_check, self_piece_widget, VerifyOptions, CHECK_COUNT};
use cospec::{CliError, CliResult};
use cospec_core::canon::is_isomorphic;
use cospec_core::construct::{
    assemble, certify_pair, make_piece, search_pieces, Blueprint, CertifiedPair, PieceCertificate, SearchMode,
};
use cospec_core::families::{
    exponential_family_atd, exponential_family_nl, first_asymmetric_graph, fuzzy_ball, inflated_star, partitions,
    WidgetChoice,
};
use cospec_core::spectra::{numeric_spectrum, spectral_key, MatrixKind};
use cospec_core::{canonical_form, graph6, Graph};
use num_rational::BigRational;
use serde_json::json;

#[derive(Parser)]
#[command(name = "cospec", version, about = "Cospectral graphs by bipartite swapping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectral key and numeric eigenvalues of each graph.
    Spectrum {
        /// `g6:<string>` or `@<file>`.
        graph: String,
        #[arg(long, default_value = "a", value_parser = parse_kind)]
        kind: MatrixKind,
        /// Rational `t` for the A+tD eigenvalues.
        #[arg(long)]
        t: Option<BigRational>,
        #[arg(long)]
        json: bool,
    },
    /// Whether two graphs are cospectral and whether they are isomorphic.
    Check {
        g1: String,
        g2: String,
        #[arg(long, default_value = "nl", value_parser = parse_kind)]
        kind: MatrixKind,
        #[arg(long)]
        json: bool,
    },
    /// Assemble two pieces into one blueprint and certify the result.
    Swap {
        /// Core graph on the A and A' vertices.
        #[arg(long, default_value = "g6:?")]
        core: String,
        /// Core vertices joined to all of B.
        #[arg(long, default_value = "")]
        a_prime: String,
        #[arg(long)]
        b_clique: bool,
        #[arg(long)]
        p1: String,
        /// B side of the first piece.
        #[arg(long)]
        b1: String,
        #[arg(long)]
        p2: String,
        #[arg(long)]
        b2: String,
        #[arg(long, value_enum, default_value_t = Variant::Nl)]
        variant: Variant,
        #[arg(long)]
        json: bool,
    },
    /// Certified pairs of swap pieces on at most the given number of vertices.
    SearchPieces {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = Mode::Nl)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Members of a cospectral family as graph6 lines with a summary.
    Family {
        #[arg(value_enum)]
        family: FamilyKind,
        /// Sum of the partition (fb, is).
        #[arg(long)]
        n: Option<usize>,
        /// Number of parts (fb, is).
        #[arg(long)]
        k: Option<usize>,
        /// Asymmetric base graph (nl, atd); defaults to the first on 6 vertices.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Group all graphs of one order by spectral key.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "nl", value_parser = parse_kind)]
        kind: MatrixKind,
        /// Counts for every order up to n and all four single-matrix kinds.
        #[arg(long)]
        table: bool,
        #[arg(long, env = "COSPEC_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Progress file, resumed from when present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// graph6 file used instead of internal generation.
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance checks and print one line per check.
    VerifyPaper {
        /// Census up to order 7 and a sample of the A+tD family.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// Normalized Laplacian swap.
    Nl,
    /// Biregular swap, cospectral for every A + tD.
    Biregular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Nl,
    Biregular,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Fb,
    Is,
    Nl,
    Atd,
}

fn parse_kind(s: &str) -> Result<MatrixKind, String> {
    s.parse().map_err(|_| format!("unknown matrix kind {s:?} (a, l, q, nl, atd)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Spectrum { graph, kind, t, json } => spectrum(&graph, kind, t, json),
        Command::Check { g1, g2, kind, json } => check(&g1, &g2, kind, json),
        Command::Swap { core, a_prime, b_clique, p1, b1, p2, b2, variant, json } => {
            let p1 = make_piece(read_graph(&p1)?, parse_vertex_set(&b1)?)?;
            let p2 = make_piece(read_graph(&p2)?, parse_vertex_set(&b2)?)?;
            let bp = Blueprint::new(read_graph(&core)?, parse_vertex_set(&a_prime)?, p1.b().len(), b_clique)?;
            swap(&bp, &p1, &p2, variant, json)
        }
        Command::SearchPieces { max_vertices, mode, json } => search(max_vertices, mode, json),
        Command::Family { family, n, k, base, json } => family_cmd(family, n, k, base.as_deref(), json),
        Command::Census { n, kind, table, jobs, checkpoint, source, json } => {
            let opts = CensusOptions { jobs, checkpoint, ..CensusOptions::default() };
            census(n, kind, table, &opts, source, json)
        }
        Command::VerifyPaper { fast } => {
            let opts = VerifyOptions { fast, corrupt_certificate: false };
            let mut all = true;
            for id in 1..=CHECK_COUNT {
                let outcome = run_check(id, &opts);
                println!("{}", outcome.line());
                all &= outcome.passed;
            }
            println!("{}", if all { "all checks passed" } else { "some checks failed" });
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn print_json(value: &serde_json::Value) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn spectrum(arg: &str, kind: MatrixKind, t: Option<BigRational>, json: bool) -> CliResult<ExitCode> {
    if t.is_some() && kind != MatrixKind::AdjacencyPlusTD {
        return Err(CliError::Usage("--t only applies to --kind atd".to_string()));
    }
    let mut records = Vec::new();
    for g in read_graphs(arg)? {
        let key = spectral_key(&g, kind);
        let eigenvalues = match (kind, &t) {
            (MatrixKind::AdjacencyPlusTD, None) => None,
            _ => Some(numeric_spectrum(&g, kind, t.as_ref())?.eigenvalues),
        };
        records.push((graph6::encode(&g), key.serialize(), eigenvalues));
    }
    if json {
        let items: Vec<_> = records
            .iter()
            .map(|(g, key, ev)| {
                let ev: Option<Vec<String>> =
                    ev.as_ref().map(|v| v.iter().map(|&x| cospec::format::fmt_f64(x)).collect());
                json!({ "graph": g, "key": key, "eigenvalues": ev })
            })
            .collect();
        print_json(&json!(items))?;
    } else {
        for (g, key, ev) in records {
            println!("graph: {g}\nkey: {key}");
            if let Some(ev) = ev {
                println!("eigenvalues: {}", fmt_list(&ev));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check(a: &str, b: &str, kind: MatrixKind, json: bool) -> CliResult<ExitCode> {
    let (g1, g2) = (read_graph(a)?, read_graph(b)?);
    let cospectral = spectral_key(&g1, kind) == spectral_key(&g2, kind);
    let isomorphic = is_isomorphic(&g1, &g2);
    if json {
        print_json(&json!({ "kind": kind.tag(), "cospectral": cospectral, "isomorphic": isomorphic }))?;
    } else {
        println!("kind: {kind}\ncospectral: {cospectral}\nisomorphic: {isomorphic}");
    }
    Ok(ExitCode::SUCCESS)
}

fn certificate_json(c: &PieceCertificate) -> serde_json::Value {
    json!({
        "nl_cospectral": c.nl_cospectral,
        "b_degree_match": c.b_degree_match,
        "dim_b_eigenspace_1": [c.dim_b_eigenspace_1.0, c.dim_b_eigenspace_1.1],
        "biregular_cospectral_a": c.biregular_cospectral_a,
        "dim_b_eigenspace_0": c.dim_b_eigenspace_0.map(|(a, b)| [a, b]),
    })
}

fn swap(
    bp: &Blueprint,
    p1: &cospec_core::construct::SwapPiece,
    p2: &cospec_core::construct::SwapPiece,
    variant: Variant,
    json: bool,
) -> CliResult<ExitCode> {
    let cert = certify_pair(p1, p2)?;
    let kind = match variant {
        Variant::Nl => {
            cert.check_theorem1(bp.b_clique())?;
            MatrixKind::NormalizedLaplacian
        }
        Variant::Biregular => {
            cert.check_theorem2()?;
            MatrixKind::AdjacencyPlusTD
        }
    };
    let g1 = assemble(bp, p1)?;
    let g2 = assemble(bp, p2)?;
    let (k1, k2) = (spectral_key(&g1, kind), spectral_key(&g2, kind));
    let cospectral = k1 == k2;
    let isomorphic = is_isomorphic(&g1, &g2);
    if json {
        print_json(&json!({
            "certificate": certificate_json(&cert),
            "g1": graph6::encode(&g1),
            "g2": graph6::encode(&g2),
            "kind": kind.tag(),
            "key": k1.serialize(),
            "cospectral": cospectral,
            "isomorphic": isomorphic,
        }))?;
    } else {
        println!("{}\n{}", graph6::encode(&g1), graph6::encode(&g2));
        println!("key: {k1}\ncospectral: {cospectral}\nisomorphic: {isomorphic}");
    }
    if !cospectral {
        return Err(CliError::Domain(format!("assemblies are not {kind}-cospectral")));
    }
    Ok(ExitCode::SUCCESS)
}

fn pair_json(p: &CertifiedPair) -> serde_json::Value {
    json!({
        "p1": graph6::encode(p.p1.graph()),
        "b1": format_vertex_set(p.p1.b()),
        "p2": graph6::encode(p.p2.graph()),
        "b2": format_vertex_set(p.p2.b()),
        "k": p.p1.k(),
        "ell": p.p1.ell(),
        "self_pair": p.self_pair,
        "certificate": certificate_json(&p.certificate),
    })
}

fn search(max_vertices: usize, mode: Mode, json: bool) -> CliResult<ExitCode> {
    if max_vertices > 16 {
        return Err(CliError::Usage("search is limited to 16 vertices".to_string()));
    }
    let mode = match mode {
        Mode::Nl => SearchMode::NL,
        Mode::Biregular => SearchMode::Biregular,
    };
    let pairs = search_pieces(max_vertices, mode);
    if json {
        print_json(&json!(pairs.iter().map(pair_json).collect::<Vec<_>>()))?;
    } else {
        for p in &pairs {
            println!(
                "{} {} {} {} self={}",
                graph6::encode(p.p1.graph()),
                format_vertex_set(p.p1.b()),
                graph6::encode(p.p2.graph()),
                format_vertex_set(p.p2.b()),
                p.self_pair
            );
        }
        println!("pairs: {}", pairs.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn family_cmd(
    family: FamilyKind,
    n: Option<usize>,
    k: Option<usize>,
    base: Option<&str>,
    json: bool,
) -> CliResult<ExitCode> {
    let (members, kind) = match family {
        FamilyKind::Fb | FamilyKind::Is => {
            if base.is_some() {
                return Err(CliError::Usage("--base applies to the nl and atd families".to_string()));
            }
            let (Some(n), Some(k)) = (n, k) else {
                return Err(CliError::Usage("fb and is need --n and --k".to_string()));
            };
            let build = if matches!(family, FamilyKind::Fb) { fuzzy_ball } else { inflated_star };
            let members = partitions(n, k)?.map(|p| build(&p)).collect::<Result<Vec<_>, _>>()?;
            (members, MatrixKind::NormalizedLaplacian)
        }
        FamilyKind::Nl | FamilyKind::Atd => {
            if n.is_some() || k.is_some() {
                return Err(CliError::Usage("--n and --k apply to the fb and is families".to_string()));
            }
            let base = match base {
                Some(arg) => read_graph(arg)?,
                None => first_asymmetric_graph(6).expect("asymmetric graphs exist on 6 vertices"),
            };
            if base.order() > 20 {
                return Err(CliError::Usage("base graphs are limited to 20 vertices".to_string()));
            }
            let count = 1u64 << base.order();
            if matches!(family, FamilyKind::Nl) {
                let members = (0..count)
                    .map(|i| exponential_family_nl(&base, &WidgetChoice::from_index(i, base.order())))
                    .collect::<Result<Vec<_>, _>>()?;
                (members, MatrixKind::NormalizedLaplacian)
            } else {
                let widget = self_piece_widget().ok_or_else(|| CliError::Domain("no self-piece widget".to_string()))?;
                let members = (0..count)
                    .map(|i| exponential_family_atd(&base, &WidgetChoice::from_index(i, base.order()), &widget))
                    .collect::<Result<Vec<_>, _>>()?;
                (members, MatrixKind::AdjacencyPlusTD)
            }
        }
    };
    let keys: Vec<_> = members.iter().map(|g| spectral_key(g, kind)).collect();
    let cospectral = keys.windows(2).all(|w| w[0] == w[1]);
    let forms: BTreeSet<_> = members.iter().map(canonical_form).collect();
    let distinct = forms.len() == members.len();
    let lines: Vec<String> = members.iter().map(graph6::encode).collect();
    if json {
        print_json(&json!({
            "members": lines,
            "count": members.len(),
            "kind": kind.tag(),
            "key": keys.first().map(|k| k.serialize()),
            "mutually_cospectral": cospectral,
            "pairwise_non_isomorphic": distinct,
        }))?;
    } else {
        for line in &lines {
            println!("{line}");
        }
        println!("members: {}", members.len());
        println!("mutually cospectral: {cospectral}");
        println!("pairwise non-isomorphic: {distinct}");
    }
    Ok(if cospectral && distinct { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn census(
    n: usize,
    kind: MatrixKind,
    table: bool,
    opts: &CensusOptions,
    source: Option<PathBuf>,
    json: bool,
) -> CliResult<ExitCode> {
    if n > 10 {
        return Err(CliError::Usage("census is limited to order 10".to_string()));
    }
    if table {
        if source.is_some() || opts.checkpoint.is_some() {
            return Err(CliError::Usage("--table runs internal generation without checkpoints".to_string()));
        }
        let rows = table_rows(n, opts)?;
        if json {
            let rows: Vec<_> = rows
                .iter()
                .map(|(n, total, c)| json!({ "n": n, "graphs": total, "A": c[0], "L": c[1], "Q": c[2], "NL": c[3] }))
                .collect();
            print_json(&json!(rows))?;
        } else {
            print!("{}", format_table(&rows));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if kind == MatrixKind::AdjacencyPlusTD && n > 8 {
        return Err(CliError::Usage("A+tD censuses are limited to order 8".to_string()));
    }
    let report = match source {
        Some(path) => {
            if opts.checkpoint.is_some() {
                return Err(CliError::Usage("--checkpoint applies to internal generation".to_string()));
            }
            let graphs: Vec<Graph> = read_graph6_file(&path)?;
            census_from_graphs(n, kind, &graphs, opts.jobs)?
        }
        None => run_parallel_census(n, kind, opts)?,
    };
    if json {
        print_json(&serde_json::to_value(report_json(&report))?)?;
    } else {
        print!("{}", report_text(&report));
    }
    Ok(ExitCode::SUCCESS)
}
