//! JSON formats keyed by vertex id.
//!
//! Lists, sublists and colorings are objects whose keys are decimal vertex
//! ids. Keys come out in numeric order and must cover `0..n` exactly on the
//! way in. Trees and decompositions keep their plain text formats
//! ([`Tree::to_text`], [`PathDecomposition::to_text`]).
//!
//! [`PathDecomposition::to_text`]: crate::decomposition::PathDecomposition::to_text

use std::collections::HashMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::PathPartition;
use crate::graph::Tree;
use crate::repetition::{Coloring, ListAssignment, SublistAssignment};
use crate::{Color, Error, Result, Vertex};

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    }
}

/// `{"0": items[0], "1": items[1], ...}`.
pub fn vertex_map<T: Serialize>(items: &[T]) -> Value {
    let mut m = serde_json::Map::new();
    for (v, x) in items.iter().enumerate() {
        m.insert(v.to_string(), serde_json::to_value(x).expect("plain data"));
    }
    Value::Object(m)
}

/// Renders a value, keeping vertex-keyed objects in numeric key order.
pub fn render(value: &Value, pretty: bool) -> String {
    fn go(v: &Value, pretty: bool, depth: usize, out: &mut String) {
        match v {
            Value::Object(m) => {
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
                    (Ok(x), Ok(y)) => x.cmp(&y),
                    _ => a.cmp(b),
                });
                out.push('{');
                for (i, k) in keys.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    if pretty {
                        out.push('\n');
                        out.push_str(&"  ".repeat(depth + 1));
                    }
                    out.push_str(&serde_json::to_string(k).expect("string"));
                    out.push(':');
                    if pretty {
                        out.push(' ');
                    }
                    go(&m[*k], pretty, depth + 1, out);
                }
                if pretty && !keys.is_empty() {
                    out.push('\n');
                    out.push_str(&"  ".repeat(depth));
                }
                out.push('}');
            }
            // arrays of scalars stay on one line
            Value::Array(a) if !pretty || a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                out.push('[');
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    go(x, false, depth + 1, out);
                }
                out.push(']');
            }
            Value::Array(a) => {
                out.push('[');
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(depth + 1));
                    go(x, pretty, depth + 1, out);
                }
                if !a.is_empty() {
                    out.push('\n');
                    out.push_str(&"  ".repeat(depth));
                }
                out.push(']');
            }
            scalar => out.push_str(&scalar.to_string()),
        }
    }
    let mut out = String::new();
    go(value, pretty, 0, &mut out);
    out
}

/// Parses a vertex-keyed object into a dense vector.
pub fn parse_vertex_map<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let raw: HashMap<String, T> = serde_json::from_str(text).map_err(json_err)?;
    let n = raw.len();
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for (k, x) in raw {
        let v: Vertex = k
            .parse()
            .map_err(|_| Error::Invalid(format!("key {k:?} is not a vertex id")))?;
        if v >= n || k != v.to_string() {
            return Err(Error::Invalid(format!("vertex ids must be exactly 0..{n}; found {k:?}")));
        }
        slots[v] = Some(x);
    }
    Ok(slots.into_iter().map(|x| x.expect("keys are distinct")).collect())
}

pub fn lists_to_json(lists: &ListAssignment) -> Value {
    vertex_map(lists.lists())
}

pub fn parse_lists(text: &str) -> Result<ListAssignment> {
    ListAssignment::new(parse_vertex_map(text)?)
}

pub fn coloring_to_json(phi: &[Color]) -> Value {
    vertex_map(phi)
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    parse_vertex_map(text)
}

/// Undefined entries become `null`.
pub fn sublists_to_json(sub: &SublistAssignment) -> Value {
    vertex_map(&sub.sublists)
}

pub fn parse_sublists(text: &str, ell: usize) -> Result<SublistAssignment> {
    let sublists: Vec<Option<Vec<Color>>> = parse_vertex_map(text)?;
    for (v, s) in sublists.iter().enumerate() {
        if s.as_ref().is_some_and(|s| s.len() != ell) {
            return Err(Error::Invalid(format!("sublist of vertex {v} does not have {ell} colors")));
        }
    }
    Ok(SublistAssignment { sublists, ell })
}

/// Partition as `{root, shape_edges, classes}`; shape edges are
/// `[parent, child]` pairs with children left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub root: usize,
    pub shape_edges: Vec<[usize; 2]>,
    pub classes: Vec<Vec<Vertex>>,
}

impl PartitionJson {
    pub fn from_partition(pp: &PathPartition) -> Self {
        let shape = pp.shape();
        let mut shape_edges = Vec::new();
        for x in 0..pp.classes().len() {
            for &y in shape.children(x) {
                shape_edges.push([x, y]);
            }
        }
        PartitionJson {
            root: pp.root_class(),
            shape_edges,
            classes: pp.classes().to_vec(),
        }
    }

    pub fn into_partition(self, tree: &Tree) -> Result<PathPartition> {
        let k = self.classes.len();
        let mut children = vec![Vec::new(); k];
        for [x, y] in self.shape_edges {
            if x >= k || y >= k {
                return Err(Error::Invalid(format!("shape edge {x}-{y} names a missing class")));
            }
            children[x].push(y);
        }
        PathPartition::new(tree, self.root, children, self.classes)
    }
}

pub fn parse_partition(text: &str, tree: &Tree) -> Result<PathPartition> {
    let pj: PartitionJson = serde_json::from_str(text).map_err(json_err)?;
    pj.into_partition(tree)
}

/// One JSON record per line.
pub fn to_json_lines<T: Serialize>(records: &[T]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("plain data"));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sort_numerically() {
        let phi: Vec<Color> = (1..=12).collect();
        let s = render(&coloring_to_json(&phi), false);
        assert!(s.starts_with(r#"{"0":1,"1":2,"2":3"#));
        assert!(s.ends_with(r#""10":11,"11":12}"#));
        assert_eq!(parse_coloring(&s).unwrap(), phi);
        assert_eq!(parse_coloring(&render(&coloring_to_json(&phi), true)).unwrap(), phi);
    }

    #[test]
    fn rejects_gaps_and_padding() {
        assert!(parse_coloring(r#"{"0":1,"2":1}"#).is_err());
        assert!(parse_coloring(r#"{"0":1,"01":1}"#).is_err());
        assert!(parse_coloring(r#"{"x":1}"#).is_err());
        assert_eq!(parse_coloring("{}").unwrap(), Vec::<Color>::new());
    }

    #[test]
    fn lists_and_sublists_round_trip() {
        let lists = ListAssignment::new(vec![vec![3, 1], vec![2, 5]]).unwrap();
        let text = render(&lists_to_json(&lists), false);
        assert_eq!(text, r#"{"0":[1,3],"1":[2,5]}"#);
        assert_eq!(parse_lists(&text).unwrap(), lists);
        let sub = SublistAssignment {
            sublists: vec![Some(vec![1]), None],
            ell: 1,
        };
        let text = render(&sublists_to_json(&sub), false);
        assert_eq!(text, r#"{"0":[1],"1":null}"#);
        assert_eq!(parse_sublists(&text, 1).unwrap(), sub);
        assert!(parse_sublists(&text, 2).is_err());
    }

    #[test]
    fn partition_round_trip() {
        let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let pp = PathPartition::new(&t, 0, vec![vec![1], vec![2], vec![]], vec![vec![0, 1, 2], vec![3, 4], vec![5]])
            .unwrap();
        let text = serde_json::to_string(&PartitionJson::from_partition(&pp)).unwrap();
        assert_eq!(parse_partition(&text, &t).unwrap(), pp);
    }
}
