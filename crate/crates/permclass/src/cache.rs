//! The on-disk table format and its JSON export.
//!
//! ```text
//! # permclass-table v1
//! # pattern=1324 engine=pruned budget=12
//! n,k,count
//! 1,0,1
//! ```

use std::io::{BufRead, BufReader, Read, Write};

use num_bigint::BigUint;
use permclass_core::enumerator::{Budget, CountTable, Engine};
use permclass_core::Permutation;
use serde_json::{json, Value};

pub const MAGIC: &str = "# permclass-table v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("conflicting entries at n = {0}, k = {1}")]
    Conflict(usize, usize),
}

fn bad(line: usize, msg: impl Into<String>) -> CacheError {
    CacheError::Format { line, msg: msg.into() }
}

pub fn write_csv<W: Write>(table: &CountTable, out: W) -> Result<(), CacheError> {
    let mut out = out;
    writeln!(out, "{MAGIC}")?;
    writeln!(
        out,
        "# pattern={} engine={} budget={}",
        table.pattern(),
        table.engine(),
        table.budget()
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "count"])?;
    for (n, k, c) in table.iter() {
        w.write_record([n.to_string(), k.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_meta(line: &str) -> Result<(Permutation, Engine, Budget), CacheError> {
    let body = line.strip_prefix('#').ok_or_else(|| bad(2, "expected metadata comment"))?;
    let (mut pattern, mut engine, mut budget) = (None, None, None);
    for field in body.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| bad(2, format!("bad field `{field}`")))?;
        match key {
            "pattern" => pattern = Some(value.parse().map_err(|e| bad(2, format!("{e}")))?),
            "engine" => engine = Some(value.parse().map_err(|e| bad(2, format!("{e}")))?),
            "budget" => budget = Some(value.parse().map_err(|e| bad(2, format!("{e}")))?),
            _ => return Err(bad(2, format!("unknown key `{key}`"))),
        }
    }
    match (pattern, engine, budget) {
        (Some(p), Some(e), Some(b)) => Ok((p, e, b)),
        _ => Err(bad(2, "metadata needs pattern, engine and budget")),
    }
}

pub fn read_csv<R: Read>(input: R) -> Result<CountTable, CacheError> {
    let mut reader = BufReader::new(input);
    let mut line = String::new();
    reader.read_line(&mut line)?;
    if line.trim_end() != MAGIC {
        return Err(bad(1, "missing `# permclass-table v1` header"));
    }
    line.clear();
    reader.read_line(&mut line)?;
    let (pattern, engine, budget) = parse_meta(line.trim_end())?;
    let mut table = CountTable::new(pattern, engine, budget);

    let mut rows = csv::Reader::from_reader(reader);
    if rows.headers()? != vec!["n", "k", "count"] {
        return Err(bad(3, "expected header `n,k,count`"));
    }
    let mut last = None;
    for (i, record) in rows.records().enumerate() {
        let record = record?;
        let line = i + 4;
        let field = |j: usize| record.get(j).ok_or_else(|| bad(line, "expected three fields"));
        let n: usize = field(0)?.parse().map_err(|_| bad(line, "bad n"))?;
        let k: usize = field(1)?.parse().map_err(|_| bad(line, "bad k"))?;
        let count: BigUint = field(2)?.parse().map_err(|_| bad(line, "bad count"))?;
        if last.is_some_and(|prev| prev >= (n, k)) {
            return Err(bad(line, "rows must be strictly increasing in (n, k)"));
        }
        last = Some((n, k));
        table.insert(n, k, count);
    }
    Ok(table)
}

pub fn read_csv_file(path: &std::path::Path) -> Result<CountTable, CacheError> {
    read_csv(std::fs::File::open(path)?)
}

pub fn write_csv_file(table: &CountTable, path: &std::path::Path) -> Result<(), CacheError> {
    let file = std::fs::File::create(path)?;
    write_csv(table, std::io::BufWriter::new(file))
}

pub fn to_json(table: &CountTable) -> Value {
    let entries: Vec<Value> = table
        .iter()
        .map(|(n, k, c)| json!({ "n": n, "k": k, "count": c.to_string() }))
        .collect();
    json!({
        "pattern": table.pattern().to_string(),
        "engine": table.engine().name(),
        "budget": table.budget().to_string(),
        "entries": entries,
    })
}

/// Merges `extra` into `base`, refusing disagreeing cells.
pub fn merge_tables(base: &mut CountTable, extra: CountTable) -> Result<(), CacheError> {
    base.merge(extra).map_err(|(n, k)| CacheError::Conflict(n, k))
}
