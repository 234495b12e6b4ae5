use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use permclass_core::enumerator::{build_table, Budget, CountTable, Engine};
use permclass_core::injection::{self, InjectionError, Mapping};
use permclass_core::series;
use permclass_core::structure::{classify_boundary, StructureClass};
use permclass_core::verify;
use permclass_core::Permutation;
use serde_json::{json, Value};

use crate::cache;
use crate::conjectures;
use crate::parallel::Parallel;
use crate::render;
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "permclass", version, about = "Exact counts and structure of 1324-avoiders by inversions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Color {
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Removepoint,
    Injection,
    Difference,
    Lemmas,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scan {
    BSeries,
    Unimodal,
    Monotone,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MapChoice {
    Auto,
    F,
    G,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(clap::Args, Debug)]
struct TableSource {
    /// Read counts from a cached table instead of enumerating.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, default_value = "1324", value_parser = parse_perm)]
    pattern: Permutation,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Largest inversion count per row, or `full`.
    #[arg(long, default_value = "full", value_parser = parse_budget)]
    budget: Budget,
    #[arg(long, default_value = "pruned", value_parser = parse_engine)]
    engine: Engine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a table of av_n^k(pattern).
    Table {
        #[arg(long, default_value = "1324", value_parser = parse_perm)]
        pattern: Permutation,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "full", value_parser = parse_budget)]
        budget: Budget,
        #[arg(long, default_value = "pruned", value_parser = parse_engine)]
        engine: Engine,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Also write the table to FILE in the cache format.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recompute with a second engine and compare.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum, default_value = "auto")]
        color: Color,
    },
    /// Column differences av_{n+1}^k - av_n^k next to the closed form.
    Diff {
        #[command(flatten)]
        source: TableSource,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
        #[arg(long, value_enum, default_value = "auto")]
        color: Color,
    },
    /// Run an exhaustive audit and print a JSON report.
    Verify {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        max_n: usize,
    },
    /// Decomposable, almost decomposable (with witnesses), or neither.
    Classify {
        #[arg(value_parser = parse_perm)]
        perm: Permutation,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Apply g (decomposable) or f (almost decomposable).
    Inject {
        #[arg(value_parser = parse_perm)]
        perm: Permutation,
        #[arg(long, value_enum, default_value = "auto")]
        map: MapChoice,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// The classified remainder set R_{n+1}^k as JSON.
    Remainder {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Empirical scans over a table.
    Conjectures {
        #[arg(long, value_enum)]
        which: Scan,
        #[command(flatten)]
        source: TableSource,
        /// Largest r for the b-series scan.
        #[arg(long, default_value_t = 9)]
        max_r: usize,
    },
    /// The growth-rate bound exp(pi * sqrt(2c/3)).
    Bound {
        /// A rational in (0, 1], as `p/q` or a decimal.
        #[arg(long)]
        c: String,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn use_color(c: Color) -> bool {
    match c {
        Color::Always => true,
        Color::Never => false,
        Color::Auto => std::io::stdout().is_terminal(),
    }
}

fn emit(io: &mut Io, value: &Value) -> std::io::Result<()> {
    writeln!(io.out, "{value}")
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<i32, Box<dyn std::error::Error>>;

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Table { pattern, max_n, budget, engine, format, out, cross_check, color } => {
            cmd_table(io, &pattern, max_n, budget, engine, format, out, cross_check, color)
        }
        Command::Diff { source, format, color } => cmd_diff(io, &source, format, color),
        Command::Verify { which, max_n } => cmd_verify(io, which, max_n),
        Command::Classify { perm, format } => cmd_classify(io, &perm, format),
        Command::Inject { perm, map, format } => cmd_inject(io, &perm, map, format),
        Command::Remainder { n, k } => cmd_remainder(io, n, k),
        Command::Conjectures { which, source, max_r } => cmd_conjectures(io, which, &source, max_r),
        Command::Bound { c } => cmd_bound(io, &c),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    io: &mut Io,
    pattern: &Permutation,
    max_n: usize,
    budget: Budget,
    engine: Engine,
    format: TableFormat,
    out: Option<PathBuf>,
    cross_check: bool,
    color: Color,
) -> Outcome {
    let driver = Parallel::from_env();
    let table = build_table(pattern, max_n, budget, engine, &driver)?;
    if let Some(path) = &out {
        cache::write_csv_file(&table, path)?;
        writeln!(io.err, "wrote {} entries to {}", table.len(), path.display())?;
    }
    match format {
        TableFormat::Text => write!(io.out, "{}", render::table_text(&table, use_color(color)))?,
        TableFormat::Csv => cache::write_csv(&table, &mut *io.out)?,
        TableFormat::Json => emit(io, &cache::to_json(&table))?,
    }
    if cross_check {
        let other = match engine {
            Engine::Pruned => Engine::Brute,
            _ => Engine::Pruned,
        };
        let limit = if other == Engine::Brute { max_n.min(9) } else { max_n };
        let check = build_table(pattern, limit, budget, other, &driver)?;
        let disagreements: Vec<(usize, usize)> = check
            .iter()
            .filter(|&(n, k, c)| table.get(n, k).is_some_and(|mine| mine != c))
            .map(|(n, k, _)| (n, k))
            .collect();
        if let Some((n, k)) = disagreements.first() {
            writeln!(io.err, "engines {engine} and {other} disagree at n = {n}, k = {k}")?;
            return Ok(EXIT_VIOLATION);
        }
        writeln!(io.err, "cross-check against {other}: {} cells agree", check.len())?;
    }
    Ok(EXIT_OK)
}

fn load(source: &TableSource) -> Result<CountTable, Box<dyn std::error::Error>> {
    match &source.table {
        Some(path) => Ok(cache::read_csv_file(path)?),
        None => {
            let driver = Parallel::from_env();
            Ok(build_table(&source.pattern, source.max_n, source.budget, source.engine, &driver)?)
        }
    }
}

fn cmd_diff(io: &mut Io, source: &TableSource, format: OutFormat, color: Color) -> Outcome {
    let table = load(source)?;
    let diffs = render::differences(&table);
    let is_1324 = table.pattern().entries() == [1, 3, 2, 4];
    let mut mismatches = Vec::new();
    if is_1324 {
        for (n, row) in &diffs {
            for (k, d) in row {
                let closed = series::diff_closed(*n, *k);
                if closed.in_regime && closed.value != *d {
                    mismatches.push((*n, *k, d.clone(), closed.value));
                }
            }
        }
    }
    match format {
        OutFormat::Text => {
            write!(io.out, "{}", render::differences_text(&diffs, use_color(color) && is_1324))?;
            for (n, k, found, expected) in &mismatches {
                writeln!(io.out, "mismatch at n = {n}, k = {k}: {found} vs closed form {expected}")?;
            }
        }
        OutFormat::Json => {
            let rows: Vec<Value> = diffs
                .iter()
                .flat_map(|(n, row)| {
                    row.iter().map(move |(k, d)| {
                        let closed = series::diff_closed(*n, *k);
                        json!({
                            "n": n,
                            "k": k,
                            "difference": d.to_string(),
                            "closed": is_1324.then(|| closed.value.to_string()),
                            "in_regime": closed.in_regime,
                        })
                    })
                })
                .collect();
            emit(io, &json!({ "pattern": table.pattern().to_string(), "rows": rows, "mismatches": mismatches.len() }))?;
        }
    }
    Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

fn first_violation_json(name: &str, p: &Permutation) -> Value {
    json!({ "check": name, "permutation": p.to_string() })
}

fn cmd_verify(io: &mut Io, which: Which, max_n: usize) -> Outcome {
    let driver = Parallel::from_env();
    let (ok, value) = match which {
        Which::Removepoint => {
            let reports: Vec<_> = (1..=max_n)
                .map(|n| {
                    let _ = writeln!(io.err, "removepoint: n = {n}");
                    verify::removepoint(n, &driver)
                })
                .collect();
            let first = reports.iter().find_map(|r| r.violations.first());
            let list: Vec<Value> = reports.iter().map(report::removepoint_json).collect();
            let mut v = json!({ "which": "removepoint", "max_n": max_n, "ok": first.is_none(), "reports": list });
            if let Some(p) = first {
                v["first_violation"] = first_violation_json("removepoint", p);
            }
            (first.is_none(), v)
        }
        Which::Lemmas => {
            let mut audit = verify::Audit::default();
            for n in 1..=max_n {
                let _ = writeln!(io.err, "lemmas: n = {n}");
                permclass_core::enumerator::Tally::merge(&mut audit, verify::lemmas(n, &driver));
            }
            audit_value(&audit, "lemmas", max_n, verify::unrealised_pairs(&audit))
        }
        Which::Injection => {
            let mut audit = verify::Audit::default();
            for n in 1..=max_n {
                let _ = writeln!(io.err, "injection: n = {n}");
                permclass_core::enumerator::Tally::merge(&mut audit, verify::injection_suite(n, &driver));
                permclass_core::enumerator::Tally::merge(&mut audit, verify::component_suite(n + 1, &driver));
            }
            audit_value(&audit, "injection", max_n, Vec::new())
        }
        Which::Difference => {
            let mut rows = Vec::new();
            for n in 1..=max_n {
                let _ = writeln!(io.err, "difference: n = {n}");
                rows.extend(verify::difference_suite(n, &driver));
            }
            let ok = rows.iter().all(|r| r.is_clean());
            let first = rows.iter().find(|r| !r.is_clean()).map(report::difference_row_json);
            let list: Vec<Value> = rows.iter().map(report::difference_row_json).collect();
            let mut v = json!({ "which": "difference", "max_n": max_n, "ok": ok, "rows": list });
            if let Some(f) = first {
                v["first_violation"] = f;
            }
            (ok, v)
        }
    };
    emit(io, &value)?;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn audit_value(audit: &verify::Audit, which: &str, max_n: usize, unrealised: Vec<&str>) -> (bool, Value) {
    let ok = audit.is_clean();
    let mut v = report::audit_json(audit);
    v["which"] = json!(which);
    v["max_n"] = json!(max_n);
    v["ok"] = json!(ok);
    if which == "lemmas" {
        v["unrealised_pairs"] = json!(unrealised);
    }
    if let Some((name, p)) = audit.first_violation() {
        v["first_violation"] = first_violation_json(name, p);
    }
    (ok, v)
}

fn cmd_classify(io: &mut Io, pi: &Permutation, format: OutFormat) -> Outcome {
    let class = classify_boundary(pi);
    let detail: Vec<String> = match &class {
        StructureClass::Decomposable(parts) => parts.iter().map(|p| p.to_string()).collect(),
        StructureClass::AlmostDecomposable(w) => w.iter().map(|t| t.label().to_string()).collect(),
        StructureClass::Neither => Vec::new(),
    };
    match format {
        OutFormat::Text => match &class {
            StructureClass::Decomposable(_) => {
                writeln!(io.out, "Decomposable components [{}]", detail.join(", "))?
            }
            StructureClass::AlmostDecomposable(_) => {
                writeln!(io.out, "AlmostDecomposable witnesses [{}]", detail.join(", "))?
            }
            StructureClass::Neither => writeln!(io.out, "Neither")?,
        },
        OutFormat::Json => {
            let key = if matches!(class, StructureClass::Decomposable(_)) { "components" } else { "witnesses" };
            emit(io, &json!({ "permutation": pi.to_string(), "class": class.name(), key: detail }))?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_inject(io: &mut Io, pi: &Permutation, map: MapChoice, format: OutFormat) -> Outcome {
    let result: Result<(Permutation, Mapping), InjectionError> = match map {
        MapChoice::Auto => injection::image(pi),
        MapChoice::G => injection::g(pi).map(|p| (p, Mapping::G)),
        MapChoice::F => injection::f_with_case(pi).map(|(p, c)| (p, Mapping::F(c))),
    };
    let (image, mapping) = match result {
        Ok(r) => r,
        Err(e) => {
            writeln!(io.err, "cannot inject {pi}: {e}")?;
            return Ok(EXIT_VIOLATION);
        }
    };
    let (name, case) = match mapping {
        Mapping::G => ("g", None),
        Mapping::F(c) => ("f", Some(c.label())),
    };
    match format {
        OutFormat::Text => match case {
            Some(c) => writeln!(io.out, "{image} (f, case {c})")?,
            None => writeln!(io.out, "{image} (g)")?,
        },
        OutFormat::Json => emit(
            io,
            &json!({ "input": pi.to_string(), "image": image.to_string(), "map": name, "case": case }),
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_remainder(io: &mut Io, n: usize, k: usize) -> Outcome {
    if !series::in_theorem_regime(n, k) {
        writeln!(io.err, "warning: k = {k} > 2n - 7; the class counts are not expected to match")?;
    }
    let set = injection::remainder_set(n, k, &Parallel::from_env());
    emit(io, &report::remainder_json(&set))?;
    Ok(EXIT_OK)
}

fn cmd_conjectures(io: &mut Io, which: Scan, source: &TableSource, max_r: usize) -> Outcome {
    let table = load(source)?;
    let bad = conjectures::sanity(&table);
    if let Some((n, k)) = bad.first() {
        writeln!(io.err, "table entry at n = {n}, k = {k} exceeds the Mahonian number")?;
        return Ok(EXIT_VIOLATION);
    }
    let value = match which {
        Scan::BSeries => conjectures::b_series_json(&conjectures::b_series(&table, max_r)),
        Scan::Unimodal => conjectures::shapes_json(&conjectures::shapes(&table)),
        Scan::Monotone => conjectures::monotone_json(&conjectures::monotone(&table)),
    };
    emit(io, &value)?;
    Ok(EXIT_OK)
}

fn cmd_bound(io: &mut Io, c: &str) -> Outcome {
    let value = series::parse_ratio(c).and_then(series::growth_bound);
    match value {
        Ok(b) => {
            writeln!(io.out, "{b:.4}")?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(io.err, "error: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

/// `av_{n+1}^k − av_n^k` as an exact integer, if the table has both cells.
pub fn column_difference(table: &CountTable, n: usize, k: usize) -> Option<BigInt> {
    Some(render::cell(table, n + 1, k)? - render::cell(table, n, k)?)
}
