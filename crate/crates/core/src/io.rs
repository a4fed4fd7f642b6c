//! Text formats.
//!
//! Edge lists hold one edge per line as the two endpoints' tokens, e.g.
//! `x1 y1 x2 y2` on `Z^2` or `word1 word2` on a free group. Readers also
//! accept commas as separators, blank lines and `#` comments, so the CSV
//! edge dumps load back unchanged. A rooted graph is an edge list preceded
//! by a `# root <identity> truncation <t>` header.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cluster::RootedGraph;
use crate::config::{canonical_edge, EdgeId};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::repetitive::PatternLibrary;

/// CSV header used by edge dumps: `x1,y1,x2,y2` on `Z^2`.
pub fn csv_header(spec: &GroupSpec) -> String {
    match spec.element_width() {
        1 if matches!(spec.kind(), crate::group::GroupKind::Free { .. }) => "w1,w2".to_string(),
        1 => "x1,x2".to_string(),
        _ => "x1,y1,x2,y2".to_string(),
    }
}

fn edge_tokens(spec: &GroupSpec, e: &EdgeId) -> Vec<String> {
    let (a, b) = e.endpoints(spec);
    let mut tokens = spec.element_tokens(&a);
    tokens.extend(spec.element_tokens(&b));
    tokens
}

pub fn write_edge_list<'a, W: Write>(
    spec: &GroupSpec,
    edges: impl IntoIterator<Item = &'a EdgeId>,
    out: &mut W,
) -> Result<()> {
    for e in edges {
        writeln!(out, "{}", edge_tokens(spec, e).join(" "))?;
    }
    Ok(())
}

/// The CSV edge dump: header line, then one comma-separated edge per line.
pub fn write_edge_csv<'a, W: Write>(
    spec: &GroupSpec,
    edges: impl IntoIterator<Item = &'a EdgeId>,
    out: &mut W,
) -> Result<()> {
    writeln!(out, "{}", csv_header(spec))?;
    for e in edges {
        writeln!(out, "{}", edge_tokens(spec, e).join(","))?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(spec: &GroupSpec, input: R) -> Result<Vec<EdgeId>> {
    let header = csv_header(spec);
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed == header {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
        let (a, used) = spec.parse_element(&tokens).map_err(|e| parse_err(e.to_string()))?;
        let (b, used_b) = spec
            .parse_element(&tokens[used..])
            .map_err(|e| parse_err(e.to_string()))?;
        if used + used_b != tokens.len() {
            return Err(parse_err(format!("trailing tokens in {trimmed:?}")));
        }
        edges.push(canonical_edge(spec, &a, &b).map_err(|e| parse_err(e.to_string()))?);
    }
    Ok(edges)
}

pub fn read_edge_list_file(spec: &GroupSpec, path: &Path) -> Result<Vec<EdgeId>> {
    read_edge_list(spec, BufReader::new(File::open(path)?))
}

pub fn write_rooted_graph<W: Write>(g: &RootedGraph, out: &mut W) -> Result<()> {
    let spec = g.spec();
    writeln!(
        out,
        "# root {} truncation {}",
        spec.element_tokens(&spec.identity()).join(" "),
        g.truncation()
    )?;
    write_edge_list(spec, g.edges(), out)
}

pub fn read_rooted_graph<R: BufRead>(spec: Arc<GroupSpec>, mut input: R) -> Result<RootedGraph> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse {
        line: 1,
        msg: format!("expected '# root ... truncation <t>', got {:?}", header.trim()),
    };
    if tokens.len() < 4 || tokens[0] != "#" || tokens[1] != "root" {
        return Err(bad_header());
    }
    let (root, used) = spec.parse_element(&tokens[2..]).map_err(|_| bad_header())?;
    if root != spec.identity() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("root {root} is not the identity"),
        });
    }
    let rest = &tokens[2 + used..];
    let truncation = match rest {
        ["truncation", t] => t.parse::<u32>().map_err(|_| bad_header())?,
        _ => return Err(bad_header()),
    };
    let edges = read_edge_list(&spec, input)?;
    RootedGraph::from_edges(spec, edges, truncation)
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    group: String,
    model: String,
    r: u32,
    scan_radius: u32,
    stable: bool,
    patterns: Vec<String>,
}

/// Writes `manifest.json` and one `pattern-NNN.txt` per pattern into `dir`.
pub fn write_library(lib: &PatternLibrary, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::with_capacity(lib.len());
    for (i, pattern) in lib.patterns().iter().enumerate() {
        let name = format!("pattern-{i:03}.txt");
        let mut out = BufWriter::new(File::create(dir.join(&name))?);
        write_rooted_graph(pattern, &mut out)?;
        out.flush()?;
        names.push(name);
    }
    let group = lib
        .patterns()
        .first()
        .map(|p| p.spec().id())
        .unwrap_or_else(|| "z2".to_string());
    let manifest = Manifest {
        group,
        model: lib.model_id().to_string(),
        r: lib.r(),
        scan_radius: lib.scan_radius(),
        stable: lib.stable(),
        patterns: names,
    };
    let mut out = BufWriter::new(File::create(dir.join("manifest.json"))?);
    serde_json::to_writer_pretty(&mut out, &manifest)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_library(dir: &Path) -> Result<PatternLibrary> {
    let manifest: Manifest = serde_json::from_reader(BufReader::new(File::open(dir.join("manifest.json"))?))?;
    let spec = Arc::new(GroupSpec::from_id(&manifest.group)?);
    let patterns = manifest
        .patterns
        .iter()
        .map(|name| read_rooted_graph(Arc::clone(&spec), BufReader::new(File::open(dir.join(name))?)))
        .collect::<Result<Vec<_>>>()?;
    PatternLibrary::from_patterns(
        manifest.model,
        manifest.r,
        manifest.scan_radius,
        manifest.stable,
        patterns,
    )
}
