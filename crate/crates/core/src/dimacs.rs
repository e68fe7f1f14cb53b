//! DIMACS `.col` graph files plus the `<name>.meta` sidecar that carries an
//! instance's planted coloring and generation parameters.
//!
//! The `.col` writer is bit-exact: a single `p edge n m` header followed by
//! `e u v` lines with 1-indexed endpoints in canonical order, LF endings, no
//! comments. The reader tolerates `c` comment lines and blank lines; every
//! parse error names its line number.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::color::Coloring;
use crate::gen::{InstanceSet, PlantedInstance};
use crate::graph::Graph;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug)]
pub enum DimacsError {
    Io(std::io::Error),
    Parse { line: usize, message: String },
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsError::Io(e) => write!(f, "I/O error: {e}"),
            DimacsError::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for DimacsError {}

impl From<std::io::Error> for DimacsError {
    fn from(e: std::io::Error) -> Self {
        DimacsError::Io(e)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Parse {
        line,
        message: message.into(),
    }
}

// ============================================================================
// .col format
// ============================================================================

/// Renders a graph in DIMACS .col format, 1-indexed, LF line endings.
pub fn col_string(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses DIMACS .col text. Comment (`c`) and blank lines are skipped; the
/// declared edge count must match the number of edge lines.
pub fn parse_col(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate problem header"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_err(line_no, format!("malformed header {line:?}")));
                }
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad vertex count {:?}", fields[2])))?;
                let m = fields[3]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad edge count {:?}", fields[3])))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) =
                    header.ok_or_else(|| parse_err(line_no, "edge line before problem header"))?;
                if fields.len() != 3 {
                    return Err(parse_err(line_no, format!("malformed edge line {line:?}")));
                }
                let endpoint = |field: &str| -> Result<usize, DimacsError> {
                    let v = field
                        .parse::<usize>()
                        .map_err(|_| parse_err(line_no, format!("bad endpoint {field:?}")))?;
                    if v < 1 || v > n {
                        return Err(parse_err(
                            line_no,
                            format!("endpoint {v} out of range 1..={n}"),
                        ));
                    }
                    Ok(v - 1)
                };
                let u = endpoint(fields[1])?;
                let v = endpoint(fields[2])?;
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {}", u + 1)));
                }
                raw_edges.push((u, v));
            }
            other => {
                return Err(parse_err(line_no, format!("unknown line type {other:?}")));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem header"))?;
    if raw_edges.len() != m {
        return Err(parse_err(
            last_line,
            format!(
                "edge count mismatch: header declares {m}, found {}",
                raw_edges.len()
            ),
        ));
    }
    Graph::new(n, &raw_edges).map_err(|e| parse_err(last_line, e.to_string()))
}

/// Reads a graph from a .col file.
pub fn read_dimacs(path: impl AsRef<Path>) -> Result<Graph, DimacsError> {
    let text = fs::read_to_string(path)?;
    parse_col(&text)
}

// ============================================================================
// Sidecar metadata
// ============================================================================

/// Renders the `<name>.meta` sidecar: key/value lines plus one bracketed
/// array for the planted coloring.
pub fn meta_string(instance: &PlantedInstance) -> String {
    let planted: Vec<String> = instance
        .planted_coloring
        .assignment()
        .iter()
        .map(|c| c.to_string())
        .collect();
    format!(
        "instance_id = {}\nn = {}\nc = {}\nk_induced = {}\nseed = {}\nplanted = [{}]\n",
        instance.instance_id,
        instance.n,
        instance.c,
        instance.k_induced,
        instance.seed,
        planted.join(", ")
    )
}

struct MetaFields {
    instance_id: String,
    n: usize,
    c: f64,
    k_induced: usize,
    seed: u64,
    planted: Vec<usize>,
}

fn parse_meta(text: &str) -> Result<MetaFields, DimacsError> {
    let mut instance_id = None;
    let mut n = None;
    let mut c = None;
    let mut k_induced = None;
    let mut seed = None;
    let mut planted = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected key = value, got {line:?}")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "instance_id" => instance_id = Some(value.to_string()),
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| parse_err(line_no, format!("bad vertex count {value:?}")))?,
                )
            }
            "c" => {
                c = Some(
                    value
                        .parse::<f64>()
                        .map_err(|_| parse_err(line_no, format!("bad density {value:?}")))?,
                )
            }
            "k_induced" => {
                k_induced = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| parse_err(line_no, format!("bad color count {value:?}")))?,
                )
            }
            "seed" => {
                seed = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| parse_err(line_no, format!("bad seed {value:?}")))?,
                )
            }
            "planted" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| parse_err(line_no, "planted must be a [..] array"))?;
                let mut colors = Vec::new();
                for part in inner.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    colors.push(
                        part.parse::<usize>().map_err(|_| {
                            parse_err(line_no, format!("bad planted color {part:?}"))
                        })?,
                    );
                }
                planted = Some(colors);
            }
            other => return Err(parse_err(line_no, format!("unknown key {other:?}"))),
        }
    }

    Ok(MetaFields {
        instance_id: instance_id.ok_or_else(|| parse_err(1, "missing instance_id"))?,
        n: n.ok_or_else(|| parse_err(1, "missing n"))?,
        c: c.ok_or_else(|| parse_err(1, "missing c"))?,
        k_induced: k_induced.ok_or_else(|| parse_err(1, "missing k_induced"))?,
        seed: seed.ok_or_else(|| parse_err(1, "missing seed"))?,
        planted: planted.ok_or_else(|| parse_err(1, "missing planted"))?,
    })
}

fn meta_path(col_path: &Path) -> PathBuf {
    col_path.with_extension("meta")
}

// ============================================================================
// Instance files
// ============================================================================

/// Writes `instance` as a .col file at `col_path` with its `.meta` sidecar
/// next to it.
pub fn write_dimacs(
    instance: &PlantedInstance,
    col_path: impl AsRef<Path>,
) -> Result<(), DimacsError> {
    let col_path = col_path.as_ref();
    let mut col = fs::File::create(col_path)?;
    col.write_all(col_string(&instance.graph).as_bytes())?;
    let mut meta = fs::File::create(meta_path(col_path))?;
    meta.write_all(meta_string(instance).as_bytes())?;
    Ok(())
}

/// Reads an instance back from its .col file and `.meta` sidecar.
pub fn read_instance(col_path: impl AsRef<Path>) -> Result<PlantedInstance, DimacsError> {
    let col_path = col_path.as_ref();
    let graph = read_dimacs(col_path)?;
    let meta = parse_meta(&fs::read_to_string(meta_path(col_path))?)?;
    if meta.n != graph.n() {
        return Err(parse_err(
            1,
            format!(
                "sidecar n = {} does not match graph n = {}",
                meta.n,
                graph.n()
            ),
        ));
    }
    if meta.planted.len() != graph.n() {
        return Err(parse_err(
            1,
            format!(
                "planted coloring has {} entries for {} vertices",
                meta.planted.len(),
                graph.n()
            ),
        ));
    }
    Ok(PlantedInstance {
        planted_coloring: Coloring::compacted(&meta.planted),
        graph,
        n: meta.n,
        c: meta.c,
        k_induced: meta.k_induced,
        seed: meta.seed,
        instance_id: meta.instance_id,
    })
}

/// Writes every instance of a set into `dir` as `<instance_id>.col` (+ meta)
/// and a `manifest.txt` recording the generation parameters. Returns the
/// .col paths in written order.
pub fn write_instance_set(
    set: &InstanceSet,
    dir: impl AsRef<Path>,
) -> Result<Vec<PathBuf>, DimacsError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(set.instances.len());
    for instance in &set.instances {
        let path = dir.join(format!("{}.col", instance.instance_id));
        write_dimacs(instance, &path)?;
        paths.push(path);
    }
    let sizes: Vec<String> = set.sizes.iter().map(|s| s.to_string()).collect();
    let manifest = format!(
        "kind = instance_set\nmaster_seed = {}\nsizes = [{}]\nper_size = {}\nk_induced = {}\nc = {}\ncount = {}\n",
        set.master_seed,
        sizes.join(", "),
        set.per_size,
        set.k_induced,
        set.c,
        set.instances.len()
    );
    fs::write(dir.join("manifest.txt"), manifest)?;
    Ok(paths)
}

/// Loads every `.col`/`.meta` pair in a directory, sorted by file name.
pub fn read_instance_dir(dir: impl AsRef<Path>) -> Result<Vec<PlantedInstance>, DimacsError> {
    let mut cols: Vec<PathBuf> = fs::read_dir(dir.as_ref())?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|p| p.extension().is_some_and(|e| e == "col"))
        .collect();
    cols.sort();
    cols.iter().map(read_instance).collect()
}

// ============================================================================
// Tests
// ============================================================================
