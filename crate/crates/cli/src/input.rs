use std::io::Read;
use std::path::Path;

use czf_core::deduction::Layout;
use czf_core::search::Strategy;
use czf_core::{parse_edge_list, Graph};

use crate::error::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A graph, plus the pre-occupied vertices when the file has a
/// `preoccupied` line.
pub struct Input {
    pub graph: Graph,
    pub preoccupied: Option<Vec<usize>>,
}

pub fn read_graph(path: &Path) -> Result<Input, CliError> {
    let text = read_text(path)?;
    let mut body = String::new();
    let mut preoccupied: Option<Vec<usize>> = None;
    for line in text.lines() {
        let mut toks = line.split_whitespace();
        if toks.next() == Some("preoccupied") {
            let list = preoccupied.get_or_insert_with(Vec::new);
            for t in toks {
                let v = t
                    .parse()
                    .map_err(|_| CliError::Input(format!("invalid pre-occupied vertex `{t}`")))?;
                list.push(v);
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let graph = parse_edge_list(&body).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(list) = &mut preoccupied {
        if let Some(&v) = list.iter().find(|&&v| v >= graph.n()) {
            return Err(CliError::Input(format!("pre-occupied vertex {v} is out of range")));
        }
        list.sort_unstable();
        list.dedup();
    }
    Ok(Input { graph, preoccupied })
}

pub fn parse_csv(n: usize, csv: &str) -> Result<Vec<usize>, CliError> {
    Layout::parse(n, csv)
        .map(|l| l.vertices())
        .map_err(|e| CliError::Input(format!("vertex list: {e}")))
}

pub fn parse_layout(n: usize, csv: &str) -> Result<Layout, CliError> {
    Layout::parse(n, csv).map_err(|e| CliError::Input(format!("layout: {e}")))
}

pub fn parse_strategy(text: &str) -> Result<Strategy, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("strategy: {e}")))
}
