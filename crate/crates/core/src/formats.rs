//! Plain-text graph, weight and answer files.
//!
//! Graph: a header line `n m`, then `m` lines `u v` (0-based, ascending).
//! Weights: one positive integer per line. Answers: lines `u v S` or `u v D`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::model::{Answer, AnswerMap, ModelError, QueryGraph, WeightedInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with their 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(line: usize, field: &str) -> Result<usize, FormatError> {
    field.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, got {field:?}"),
        )
    })
}

pub fn write_graph(graph: &QueryGraph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.edge_count());
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<QueryGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing header `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(syntax(hl, "header must be `n m`"));
    };
    let (n, m) = (parse_usize(hl, n)?, parse_usize(hl, m)?);
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(syntax(ln, "edge lines must be `u v`"));
        };
        edges.push((parse_usize(ln, u)?, parse_usize(ln, v)?));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(QueryGraph::new(n, edges)?)
}

pub fn write_weights(instance: &WeightedInstance) -> String {
    instance
        .weights()
        .iter()
        .map(|w| format!("{w}\n"))
        .collect()
}

pub fn parse_weights(text: &str) -> Result<WeightedInstance, FormatError> {
    let mut weights = Vec::new();
    for (ln, l) in content_lines(text) {
        let w: BigUint = l
            .parse()
            .map_err(|_| syntax(ln, format!("expected a positive integer, got {l:?}")))?;
        weights.push(w);
    }
    Ok(WeightedInstance::new(weights)?)
}

pub fn write_answers(answers: &AnswerMap) -> String {
    let mut out = String::new();
    for ((u, v), a) in answers.iter() {
        writeln!(out, "{u} {v} {}", a.symbol()).unwrap();
    }
    out
}

pub fn parse_answer_symbol(line: usize, s: &str) -> Result<Answer, FormatError> {
    match s {
        "S" | "s" => Ok(Answer::Same),
        "D" | "d" => Ok(Answer::Different),
        other => Err(syntax(
            line,
            format!("answer must be S or D, got {other:?}"),
        )),
    }
}

pub fn parse_answers(text: &str) -> Result<AnswerMap, FormatError> {
    let mut answers = AnswerMap::new();
    for (ln, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v, a] = fields[..] else {
            return Err(syntax(ln, "answer lines must be `u v S|D`"));
        };
        let (u, v) = (parse_usize(ln, u)?, parse_usize(ln, v)?);
        if u == v {
            return Err(syntax(ln, "a ball is not compared with itself"));
        }
        if answers.get(u, v).is_some() {
            return Err(syntax(ln, format!("pair ({u}, {v}) answered twice")));
        }
        answers.insert(u, v, parse_answer_symbol(ln, a)?);
    }
    Ok(answers)
}
