//! Graph sources accepted on the command line.
//!
//! `family:lambda:<n>`, `family:gamma:<n>`, `example:<name>`, `-` for stdin,
//! or a path to an edge-list file or a file of graph6 lines.

use std::fs;
use std::io::Read;

use raagtl_core::families::{gamma_n, lambda_n, named_example};
use raagtl_core::graph::parse_graphs;
use raagtl_core::Graph;

use crate::CliError;

pub fn load_graphs(source: &str) -> Result<Vec<Graph>, CliError> {
    if let Some(rest) = source.strip_prefix("family:") {
        let (name, n) = rest.split_once(':').ok_or_else(|| {
            CliError::input(format!("expected family:<name>:<n>, got `{source}`"))
        })?;
        let n: usize = n
            .parse()
            .map_err(|_| CliError::input(format!("family size `{n}` is not a number")))?;
        let g = match name {
            "lambda" => lambda_n(n)?,
            "gamma" => gamma_n(n)?,
            _ => {
                return Err(CliError::input(format!(
                    "unknown family `{name}` (lambda, gamma)"
                )))
            }
        };
        return Ok(vec![g]);
    }
    if let Some(name) = source.strip_prefix("example:") {
        return Ok(vec![named_example(name)?]);
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(source)
            .map_err(|e| CliError::input(format!("reading `{source}`: {e}")))?
    };
    let graphs = parse_graphs(&text)?;
    if graphs.is_empty() {
        return Err(CliError::input(format!("`{source}` contains no graphs")));
    }
    Ok(graphs)
}

pub fn load_graph(source: &str) -> Result<Graph, CliError> {
    let mut graphs = load_graphs(source)?;
    if graphs.len() != 1 {
        return Err(CliError::input(format!(
            "`{source}` holds {} graphs; this command takes exactly one",
            graphs.len()
        )));
    }
    Ok(graphs.pop().expect("one graph"))
}

pub fn read_text(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(source).map_err(|e| CliError::input(format!("reading `{source}`: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uris() {
        assert_eq!(load_graph("family:lambda:5").unwrap().order(), 7);
        assert_eq!(load_graph("family:gamma:4").unwrap().order(), 6);
        assert_eq!(load_graph("example:p4").unwrap().order(), 4);
        assert_eq!(load_graph("family:delta:4").unwrap_err().code, 2);
        assert_eq!(load_graph("family:gamma:x").unwrap_err().code, 2);
        assert_eq!(load_graph("example:nope").unwrap_err().code, 2);
        assert_eq!(load_graph("/nonexistent/graph.txt").unwrap_err().code, 2);
    }
}
