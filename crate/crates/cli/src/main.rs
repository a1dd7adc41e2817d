//! `crossmod` — validate knot-with-bands inputs, extract presentations, and
//! compute crossed-module invariants.
//!
//! Exit codes: 0 success, 1 input error, 2 internal consistency failure
//! (the diagram and presentation paths disagree).

use clap::{Parser, Subcommand, ValueEnum};
use crossmod::algebra::{parse_crossed_module, FiniteCrossedModule};
use crossmod::corpus::{self, ExampleKind};
use crossmod::kwb::{
    count_colorings_jobs, extract_presentation, last_end_words, parse_diagram, KwbDiagram,
};
use crossmod::presentation::{
    count_homs_jobs, parse_presentation, serialize_presentation, CrossedModulePresentation,
};
use crossmod::ExactRational;
use num_display::display_word;
use serde::Serialize;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "crossmod", version, about = "Crossed-module invariants of knotted surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Diagram,
    Presentation,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a .kwb, .cmp, or crossed-module file.
    Validate {
        /// Path to the file to check.
        path: String,
    },
    /// Compute the invariant of a diagram or presentation.
    Invariant {
        /// Path to a .kwb/.cmp file, or a corpus example name.
        input: String,
        /// Coefficient crossed module: a corpus name (A, conj_S3,
        /// z2_z4_sign, trivial) or a path to a crossed-module file.
        #[arg(long)]
        cm: String,
        /// Computation path. Defaults to `both` for diagrams and
        /// `presentation` for presentation inputs.
        #[arg(long, value_enum)]
        via: Option<Via>,
        /// Worker threads for the counting kernel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extract the presentation of a diagram as a canonical .cmp file.
    Extract {
        /// Path to a .kwb file, or a corpus example name.
        input: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// List the built-in example corpus.
    Examples {
        /// Keep only entries whose name contains this substring.
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Errors that terminate the run: input problems exit 1, internal
/// consistency failures exit 2.
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Input(_) => ExitCode::from(1),
            Failure::Internal(_) => ExitCode::from(2),
        }
    }
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Machine-readable run summary; `invariant = count / (#E)^exponent`.
#[derive(Serialize)]
struct RunReport {
    input: String,
    coefficient: String,
    count: String,
    exponent: usize,
    invariant: String,
    wall_time_s: f64,
    jobs: usize,
}

impl RunReport {
    fn print(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string(self).unwrap()),
            Format::Text => {
                println!("input:       {}", self.input);
                println!("coefficient: {}", self.coefficient);
                println!("count:       {}", self.count);
                println!("exponent:    {}", self.exponent);
                println!("invariant:   {}", self.invariant);
                println!("wall_time_s: {:.6}", self.wall_time_s);
                println!("jobs:        {}", self.jobs);
            }
        }
    }
}

enum Input {
    Diagram(KwbDiagram),
    Presentation(CrossedModulePresentation),
}

/// Resolves a path or corpus example name into a parsed input.
fn resolve_input(spec: &str) -> Result<Input, Failure> {
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("{spec}: {e}")))?;
        return match detect_format(&text) {
            Some("kwb") => parse_diagram(&text)
                .map(Input::Diagram)
                .map_err(|e| input_err(format!("{spec}:{e}"))),
            Some("presentation") => parse_presentation(&text)
                .map(Input::Presentation)
                .map_err(|e| input_err(format!("{spec}:{e}"))),
            Some(other) => Err(input_err(format!(
                "{spec}: a {other} file is not a diagram or presentation"
            ))),
            None => Err(input_err(format!("{spec}: unrecognized file header"))),
        };
    }
    match corpus::load_example(spec) {
        Ok(corpus::Loaded::Diagram(d)) => Ok(Input::Diagram(d)),
        Ok(corpus::Loaded::Presentation(p)) => Ok(Input::Presentation(p)),
        Ok(corpus::Loaded::Coefficient(_)) => {
            Err(input_err(format!("`{spec}` is a coefficient, not a diagram or presentation")))
        }
        Err(e) => Err(input_err(e.to_string())),
    }
}

fn resolve_coefficient(spec: &str) -> Result<(String, FiniteCrossedModule), Failure> {
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("{spec}: {e}")))?;
        let cm = parse_crossed_module(&text)
            .map_err(|e| input_err(format!("{spec}:{e}")))?;
        return Ok((spec.to_string(), cm));
    }
    corpus::coefficient(spec)
        .map(|cm| (spec.to_string(), cm))
        .map_err(|e| input_err(e.to_string()))
}

/// First token of the first non-comment line.
fn detect_format(text: &str) -> Option<&str> {
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        return line.split_whitespace().next();
    }
    None
}

fn cmd_validate(path: &str) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))?;
    let kind = match detect_format(&text) {
        Some("kwb") => {
            parse_diagram(&text).map_err(|e| input_err(format!("{path}:{e}")))?;
            "kwb diagram"
        }
        Some("presentation") => {
            parse_presentation(&text).map_err(|e| input_err(format!("{path}:{e}")))?;
            "presentation"
        }
        Some("crossed_module") => {
            parse_crossed_module(&text).map_err(|e| input_err(format!("{path}:{e}")))?;
            "crossed module"
        }
        _ => {
            return Err(input_err(format!(
                "{path}: expected a `kwb v1`, `presentation v1`, or `crossed_module v1` header"
            )))
        }
    };
    println!("ok: {path} is a valid {kind}");
    Ok(())
}

fn cmd_invariant(
    input_spec: &str,
    cm_spec: &str,
    via: Option<Via>,
    jobs: usize,
    format: Format,
) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(input_err("--jobs must be at least 1"));
    }
    let input = resolve_input(input_spec)?;
    let (cm_name, cm) = resolve_coefficient(cm_spec)?;
    let started = Instant::now();
    let (count, exponent) = match (&input, via) {
        (Input::Presentation(_), Some(Via::Diagram) | Some(Via::Both)) => {
            return Err(input_err(format!(
                "`{input_spec}` is a presentation; the diagram path needs a .kwb input"
            )));
        }
        (Input::Presentation(p), _) => {
            let count = count_homs_jobs(p, &cm, jobs).map_err(|e| input_err(e.to_string()))?;
            (count, p.rank_b1)
        }
        (Input::Diagram(d), via) => {
            let via = via.unwrap_or(Via::Both);
            let diagram_count =
                (via != Via::Presentation).then(|| count_colorings_jobs(d, &cm, jobs));
            let homs_count = if via != Via::Diagram {
                let p = extract_presentation(d).map_err(|e| input_err(e.to_string()))?;
                Some(count_homs_jobs(&p, &cm, jobs).map_err(|e| input_err(e.to_string()))?)
            } else {
                None
            };
            let count = match (diagram_count, homs_count) {
                (Some(dc), Some(hc)) => {
                    if dc != hc {
                        return Err(Failure::Internal(format!(
                            "dual-path disagreement on `{input_spec}` with `{cm_name}`: \
                             {dc} colorings vs {hc} morphisms"
                        )));
                    }
                    dc
                }
                (Some(dc), None) => dc,
                (None, Some(hc)) => hc,
                (None, None) => unreachable!(),
            };
            (count, d.circles)
        }
    };
    let invariant = ExactRational::normalized(&count, cm.principal().order(), exponent);
    RunReport {
        input: input_spec.to_string(),
        coefficient: cm_name,
        count: count.to_string(),
        exponent,
        invariant: invariant.to_string(),
        wall_time_s: started.elapsed().as_secs_f64(),
        jobs,
    }
    .print(format);
    Ok(())
}

fn cmd_extract(input_spec: &str, out: Option<&str>) -> Result<(), Failure> {
    let d = match resolve_input(input_spec)? {
        Input::Diagram(d) => d,
        Input::Presentation(_) => {
            return Err(input_err(format!("`{input_spec}` is already a presentation")))
        }
    };
    let p = extract_presentation(&d).map_err(|e| input_err(e.to_string()))?;
    let mut text = serialize_presentation(&p);
    for (band, w) in last_end_words(&d) {
        text.push_str(&format!("# last_end {band}: {}\n", display_word(&w, &p.base_names)));
    }
    match parse_presentation(&text) {
        Ok(back) if back == p => {}
        _ => {
            return Err(Failure::Internal(format!(
                "extracted presentation for `{input_spec}` failed to round-trip"
            )))
        }
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| input_err(format!("{path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ExampleRow {
    name: &'static str,
    kind: &'static str,
    description: &'static str,
    files: Vec<String>,
}

fn cmd_examples(filter: Option<&str>, format: Format) -> Result<(), Failure> {
    let rows: Vec<ExampleRow> = corpus::list_examples()
        .iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .map(|e| {
            let (kind, files) = match e.kind {
                ExampleKind::Diagram => {
                    ("diagram", vec![format!("{}.kwb", e.name), format!("{}.cmp", e.name)])
                }
                ExampleKind::Coefficient => ("coefficient", vec![format!("{}.cm", e.name)]),
            };
            ExampleRow { name: e.name, kind, description: e.description, files }
        })
        .collect();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
        Format::Text => {
            for r in &rows {
                println!("{:<20} {:<12} {}", r.name, r.kind, r.description);
            }
        }
    }
    Ok(())
}

mod num_display {
    use crossmod::algebra::GroupWord;

    /// `X Y^-1 ...`, or `1` for the empty word.
    pub fn display_word(w: &GroupWord, names: &[String]) -> String {
        if w.0.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&(g, e)| if e < 0 { format!("{}^-1", names[g]) } else { names[g].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Invariant { input, cm, via, jobs, format } => {
            cmd_invariant(input, cm, *via, *jobs, *format)
        }
        Command::Extract { input, out } => cmd_extract(input, out.as_deref()),
        Command::Examples { filter, format } => cmd_examples(filter.as_deref(), *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal consistency failure: {msg}"),
            }
            f.code()
        }
    }
}
