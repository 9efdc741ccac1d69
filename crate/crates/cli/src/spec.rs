//! Graph arguments: named shorthands, inline edge lists, or file paths.

use std::fmt;
use std::str::FromStr;

use treehom::extremal::{self, small_targets};
use treehom::graph::{parse_graph, TargetGraph, Tree};
use treehom::trees;

#[derive(Debug)]
pub struct SpecError {
    pub input: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.input, self.message)
    }
}

impl std::error::Error for SpecError {}

/// A graph argument as given on the command line.
#[derive(Clone, Debug)]
pub struct GraphSpec {
    raw: String,
    pub graph: TargetGraph,
}

impl GraphSpec {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// The graph as a tree, or an error if it is not one.
    pub fn to_tree(&self) -> Result<Tree, SpecError> {
        Tree::from_graph(&self.graph).map_err(|e| self.error(e))
    }

    fn error(&self, e: impl fmt::Display) -> SpecError {
        SpecError {
            input: self.raw.clone(),
            message: e.to_string(),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = SpecError;

    fn from_str(raw: &str) -> Result<Self, SpecError> {
        let fail = |message: String| SpecError {
            input: raw.to_string(),
            message,
        };
        let graph = resolve(raw).map_err(fail)?;
        Ok(GraphSpec {
            raw: raw.to_string(),
            graph,
        })
    }
}

fn numbers(args: &str, count: usize) -> Result<Vec<usize>, String> {
    let parsed: Vec<usize> = args
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("{p:?} is not a non-negative integer")))
        .collect::<Result<_, _>>()?;
    if parsed.len() != count {
        return Err(format!("expected {count} comma-separated parameters, got {}", parsed.len()));
    }
    Ok(parsed)
}

fn resolve(raw: &str) -> Result<TargetGraph, String> {
    if raw == "folkman+dom" || raw == "folkman" {
        return Ok(extremal::make_folkman_plus_dominating());
    }
    let Some((kind, args)) = raw.split_once(':') else {
        let text = std::fs::read_to_string(raw).map_err(|e| format!("cannot read graph file: {e}"))?;
        return parse_graph(&text).map_err(|e| e.to_string());
    };
    let one = |args: &str| numbers(args, 1).map(|v| v[0]);
    let built = match kind {
        "inline" => parse_graph(&args.replace("\\n", "\n")),
        "path" => return trees::path(one(args)?).map(|t| t.to_graph()).map_err(|e| e.to_string()),
        "star" => return trees::star(one(args)?).map(|t| t.to_graph()).map_err(|e| e.to_string()),
        "capacity" => extremal::make_capacity_graph(one(args)?),
        "wr" => extremal::make_widom_rowlinson(one(args)?),
        "habl" => {
            let v = numbers(args, 3)?;
            extremal::make_h_abl(v[0], v[1], v[2])
        }
        "lpath" => extremal::make_looped_path(one(args)?),
        "cycle" => extremal::make_cycle(one(args)?),
        "complete" => extremal::make_complete(one(args)?),
        "lcomplete" => extremal::make_looped_complete(one(args)?),
        "kbip" => {
            let v = numbers(args, 2)?;
            extremal::make_complete_bipartite(v[0], v[1])
        }
        "small" => {
            let name = args.trim();
            let want = if name.starts_with('H') { name.to_string() } else { format!("H{name}") };
            return small_targets()
                .into_iter()
                .find(|t| t.name == want)
                .map(|t| t.graph)
                .ok_or_else(|| format!("no small target named {want} (H1..H28)"));
        }
        "file" => {
            let text = std::fs::read_to_string(args).map_err(|e| format!("cannot read graph file: {e}"))?;
            parse_graph(&text)
        }
        other => return Err(format!("unknown graph kind {other:?}")),
    };
    built.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use treehom::graph::is_isomorphic;

    fn spec(s: &str) -> TargetGraph {
        s.parse::<GraphSpec>().unwrap().graph
    }

    #[test]
    fn shorthands_match_constructors() {
        assert_eq!(spec("path:5").edges(), trees::path(5).unwrap().edges());
        assert_eq!(spec("star:4").edges(), trees::star(4).unwrap().edges());
        assert_eq!(spec("capacity:3").edges(), extremal::make_capacity_graph(3).unwrap().edges());
        assert_eq!(spec("wr:2").edges(), extremal::make_widom_rowlinson(2).unwrap().edges());
        assert_eq!(spec("habl:3,2,1").edges(), extremal::make_h_abl(3, 2, 1).unwrap().edges());
        assert_eq!(spec("small:H7").edges(), spec("small:7").edges());
    }

    #[test]
    fn inline_escapes() {
        let g = spec("inline:2 2\\n0 0\\n0 1");
        assert!(is_isomorphic(&g, &extremal::make_capacity_graph(1).unwrap()).unwrap());
    }

    #[test]
    fn errors_echo_input() {
        let err = "cycle:2".parse::<GraphSpec>().unwrap_err();
        assert_eq!(err.input, "cycle:2");
        assert!("habl:1,2".parse::<GraphSpec>().unwrap_err().message.contains("3 comma-separated"));
        assert!("bogus:1".parse::<GraphSpec>().is_err());
        assert!("/no/such/file".parse::<GraphSpec>().is_err());
        assert!("cycle:5".parse::<GraphSpec>().unwrap().to_tree().is_err());
    }
}
