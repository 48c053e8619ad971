use std::io::Read;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use layered_decomp::corpus::write_fixtures;
use layered_decomp::decomposition::{verify_path_decomposition, verify_tree_decomposition};
use layered_decomp::dot::{graph_dot, path_decomposition_dot, spqr_dot, tree_decomposition_dot};
use layered_decomp::graph::{is_layering, parse_edge_list, write_edge_list, Family};
use layered_decomp::oracles::{exact_layered_pathwidth, exact_pathwidth, minor_contains, OracleLimits};
use layered_decomp::pipeline::{run_pipeline, PipelineError, PipelineOptions, Report};
use layered_decomp::schema::{
    to_json, verify_artifact, Artifact, DecomposeDoc, DecompositionDoc, MinorModelDoc, SpqrDoc,
};
use layered_decomp::spqr::{build_spqr, verify_spqr};
use layered_decomp::{Graph, GraphError};

use crate::{Cli, Command, Common, Failure, Format, Input, OracleKind};

type Outcome = Result<(), Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

pub(crate) fn run(cli: Cli) -> Outcome {
    let common = &cli.common;
    match cli.command {
        Command::Gen { family, params, seed } => cmd_gen(common, &family, &params, seed),
        Command::Fixtures { dir } => cmd_fixtures(&dir),
        Command::Decompose { input, root } => cmd_decompose(common, &input, root),
        Command::Verify { graph, artifact } => cmd_verify(common, &graph, &artifact),
        Command::Oracle {
            which,
            input,
            pattern,
            pattern_gen,
        } => cmd_oracle(common, which, &input, pattern.as_deref(), pattern_gen.as_deref()),
        Command::Sweep { dir, root } => cmd_sweep(common, &dir, root),
        Command::Spqr { input } => cmd_spqr(common, &input),
    }
}

fn emit(common: &Common, text: &str) -> Outcome {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn limits(common: &Common) -> Result<OracleLimits, Failure> {
    let mut limits = OracleLimits::from_env().map_err(usage)?;
    if let Some(v) = common.limit_pw {
        limits.max_pw_vertices = v;
    }
    if let Some(v) = common.limit_lpw {
        limits.max_lpw_vertices = v;
    }
    if let Some(v) = common.limit_minor {
        limits.max_minor_host = v;
        limits.max_minor_pattern = v;
    }
    limits.validate().map_err(usage)?;
    Ok(limits)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
    };
    parse_edge_list(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn generate(spec: &str, seed: Option<u64>) -> Result<Graph, Failure> {
    let mut words = spec.split_whitespace();
    let family = words.next().ok_or_else(|| usage("empty generator spec"))?;
    let params = words
        .map(|w| w.parse::<u64>().map_err(|_| usage(format!("bad generator parameter {w:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    generate_family(family, &params, seed)
}

fn generate_family(family: &str, params: &[u64], seed: Option<u64>) -> Result<Graph, Failure> {
    Family::from_name(family, params, seed)
        .and_then(|f| f.generate())
        .map_err(|e| usage(format!("{e} (families: {})", Family::NAMES.join(", "))))
}

/// The graph and a name for it.
fn load(input: &Input) -> Result<(String, Graph), Failure> {
    match (&input.input, &input.generator) {
        (Some(path), None) => {
            if input.seed.is_some() {
                return Err(usage("--seed only applies to --gen"));
            }
            Ok((path.display().to_string(), read_graph(path)?))
        }
        (None, Some(spec)) => Ok((spec.clone(), generate(spec, input.seed)?)),
        _ => Err(usage("give exactly one of an input file or --gen SPEC")),
    }
}

fn cmd_gen(common: &Common, family: &str, params: &[u64], seed: Option<u64>) -> Outcome {
    let g = generate_family(family, params, seed)?;
    let text = match common.format {
        None => write_edge_list(&g),
        Some(Format::Dot) => graph_dot(&g),
        Some(other) => return Err(usage(format!("gen writes edge lists or dot, not {other:?}"))),
    };
    emit(common, &text)
}

fn cmd_fixtures(dir: &Path) -> Outcome {
    let written = write_fixtures(dir).map_err(|e| usage(format!("cannot write {}: {e}", dir.display())))?;
    println!("wrote {} fixtures to {}", written.len(), dir.display());
    Ok(())
}

const TSV_HEADER: &str = "name\tn\tm\tw\tp\tell\tbound\tflags\tstatus\n";

fn tsv_row(name: &str, r: &Report, status: &str) -> String {
    let flags = if r.flags.is_empty() { "-".to_string() } else { r.flags.join(",") };
    format!(
        "{name}\t{}\t{}\t{}\t{}\t{}\t{}\t{flags}\t{status}\n",
        r.n, r.m, r.w, r.p, r.ell, r.bound
    )
}

/// Runs the pipeline and the verifiers; `Err` carries the failure class.
fn decompose(
    g: &Graph,
    options: &PipelineOptions,
) -> Result<(Report, DecomposeDoc, String), Failure> {
    let (gd, lpd) = run_pipeline(g, options).map_err(|e| match e {
        PipelineError::Graph(GraphError::VertexOutOfRange { .. }) => usage(e),
        other => Failure::Bound(format!("pipeline failed: {other}")),
    })?;
    verify_tree_decomposition(g, &gd.td)
        .map_err(|v| Failure::Verification(format!("tree decomposition: {v}")))?;
    verify_path_decomposition(g, &lpd.pd)
        .map_err(|v| Failure::Verification(format!("path decomposition: {v}")))?;
    is_layering(g, lpd.layering.layers())
        .map_err(|v| Failure::Verification(format!("layering: {v}")))?;
    let report = Report::new(g, &gd, &lpd);
    let dot = format!(
        "{}{}",
        tree_decomposition_dot(&gd.td, Some(&gd.provenance)),
        path_decomposition_dot(&lpd.pd)
    );
    Ok((report.clone(), DecomposeDoc::new(&report, &gd, &lpd), dot))
}

fn check_bound(r: &Report) -> Outcome {
    if r.within_bound() {
        Ok(())
    } else {
        Err(Failure::Bound(format!(
            "ell = {} exceeds w(p+1)(w+1) = {}",
            r.ell, r.bound
        )))
    }
}

fn cmd_decompose(common: &Common, input: &Input, root: Option<usize>) -> Outcome {
    let (name, g) = load(input)?;
    let options = PipelineOptions {
        root,
        limits: limits(common)?,
    };
    let (report, doc, dot) = decompose(&g, &options)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&doc),
        Format::Dot => dot,
        Format::Summary => {
            let status = if report.within_bound() { "ok" } else { "bound-violation" };
            format!("{TSV_HEADER}{}", tsv_row(&name, &report, status))
        }
    };
    emit(common, &text)?;
    check_bound(&report)
}

fn cmd_verify(common: &Common, graph: &Path, artifact: &Path) -> Outcome {
    let g = read_graph(graph)?;
    let text = std::fs::read_to_string(artifact)
        .map_err(|e| usage(format!("cannot read {}: {e}", artifact.display())))?;
    let artifact = Artifact::parse(&text).map_err(|e| usage(format!("schema error: {e}")))?;
    artifact
        .check_shape()
        .map_err(|e| usage(format!("schema error: {e}")))?;
    verify_artifact(&g, &artifact)
        .map_err(|v| Failure::Verification(format!("{} check failed: {v}", artifact.schema())))?;
    emit(common, &format!("ok\t{}\n", artifact.schema()))
}

fn cmd_oracle(
    common: &Common,
    which: OracleKind,
    input: &Input,
    pattern: Option<&Path>,
    pattern_gen: Option<&str>,
) -> Outcome {
    let (_, g) = load(input)?;
    let limits = limits(common)?;
    let format = common.format.unwrap_or(Format::Summary);
    if format == Format::Dot {
        return Err(usage("oracle output is summary or json"));
    }
    let text = match which {
        OracleKind::Pw => {
            let (pw, pd) = exact_pathwidth(&g, &limits).map_err(usage)?;
            match format {
                Format::Json => to_json(&DecompositionDoc::from_path(&pd, None)),
                _ => format!("pw\t{pw}\n"),
            }
        }
        OracleKind::Lpw => {
            let (lpw, pd, layering) = exact_layered_pathwidth(&g, &limits).map_err(usage)?;
            match format {
                Format::Json => to_json(&DecompositionDoc::from_path(&pd, Some(&layering))),
                _ => format!("lpw\t{lpw}\n"),
            }
        }
        OracleKind::Minor => {
            let h = match (pattern, pattern_gen) {
                (Some(path), None) => read_graph(path)?,
                (None, Some(spec)) => generate(spec, None)?,
                _ => return Err(usage("minor needs exactly one of --pattern or --pattern-gen")),
            };
            let model = minor_contains(&g, &h, &limits).map_err(usage)?;
            match (format, model) {
                (Format::Json, Some(m)) => to_json(&MinorModelDoc::new(&h, &m)),
                (Format::Json, None) => "null\n".to_string(),
                (_, m) => format!("minor\t{}\n", m.is_some()),
            }
        }
    };
    emit(common, &text)
}

fn sweep_one(path: &Path, options: &PipelineOptions) -> (String, u8) {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let empty = Report {
        n: 0,
        m: 0,
        w: 0,
        p: 0,
        ell: 0,
        bound: 0,
        flags: vec![],
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(f) => {
            eprintln!("{name}: {}", f.message());
            return (tsv_row(&name, &empty, "parse-error"), 2);
        }
    };
    match decompose(&g, options) {
        Ok((report, _, _)) => {
            let (status, code) = if report.within_bound() { ("ok", 0) } else { ("bound-violation", 3) };
            (tsv_row(&name, &report, status), code)
        }
        Err(f) => {
            eprintln!("{name}: {}", f.message());
            let status = if f.code() == 1 { "invalid" } else { "error" };
            let report = Report { n: g.n(), m: g.m(), ..empty };
            (tsv_row(&name, &report, status), f.code())
        }
    }
}

fn cmd_sweep(common: &Common, dir: &Path, root: Option<usize>) -> Outcome {
    if !matches!(common.format, None | Some(Format::Summary)) {
        return Err(usage("sweep prints a TSV summary"));
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| usage(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "edges"))
        .collect();
    files.sort();
    let options = PipelineOptions {
        root,
        limits: limits(common)?,
    };
    let rows: Vec<(String, u8)> = files.par_iter().map(|p| sweep_one(p, &options)).collect();
    let passed = rows.iter().filter(|(_, code)| *code == 0).count();
    let mut text = String::from(TSV_HEADER);
    for (row, _) in &rows {
        text.push_str(row);
    }
    text.push_str(&format!("# {passed} passed, {} failed\n", rows.len() - passed));
    emit(common, &text)?;
    let codes: Vec<u8> = rows.iter().map(|(_, c)| *c).collect();
    if codes.contains(&3) {
        Err(Failure::Bound("bound violated on some inputs".into()))
    } else if codes.contains(&1) {
        Err(Failure::Verification("verification failed on some inputs".into()))
    } else if codes.contains(&2) {
        Err(usage("some inputs could not be parsed"))
    } else {
        Ok(())
    }
}

fn cmd_spqr(common: &Common, input: &Input) -> Outcome {
    let (_, g) = load(input)?;
    let s = build_spqr(&g).map_err(usage)?;
    verify_spqr(&g, &s).map_err(|v| Failure::Verification(format!("SPQR tree: {v}")))?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&SpqrDoc::from_spqr(&s)),
        Format::Dot => spqr_dot(&s),
        Format::Summary => {
            let mut out = String::from("node\tkind\tvertices\treal\tvirtual\n");
            for (a, sk) in s.skeletons.iter().enumerate() {
                let vs: Vec<String> = sk.vertices.iter().map(ToString::to_string).collect();
                out.push_str(&format!(
                    "{a}\t{}\t{}\t{}\t{}\n",
                    sk.kind,
                    vs.join(","),
                    sk.real_edges.len(),
                    sk.virtual_edges.len()
                ));
            }
            out
        }
    };
    emit(common, &text)
}
