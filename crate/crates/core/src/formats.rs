//! Line-oriented text formats for codes and arrangements.
//!
//! Code files:
//!
//! ```text
//! neurons: 3
//! 1 2 3
//! 1
//! -
//! ```
//!
//! Arrangement files:
//!
//! ```text
//! dimension: 2
//! topology: closed
//! set 1
//! 1 0 <= 2
//! -1 0 <= 0
//! set 2
//! 0 1 = 1/2
//! ```
//!
//! `#` starts a comment and blank lines are ignored. Serialization is
//! canonical: no comments, words in lexicographic order, rationals reduced,
//! constraint rows in their stored order, LF line endings.

use std::fmt::Write as _;

use crate::code::{Codeword, NeuralCode};
use crate::error::{Error, Result};
use crate::geometry::{
    parse_rational, Arrangement, LinearConstraint, Polyhedron, Relation, Topology,
};

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split_once('#').map_or(line, |(head, _)| head).trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

/// Line number to blame when the input ends early.
fn end_line(text: &str) -> usize {
    text.lines().count() + 1
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
    text: &str,
) -> Result<(usize, &'a str)> {
    let Some((line, content)) = lines.next() else {
        return Err(Error::parse(
            end_line(text),
            format!("missing `{key}:` header"),
        ));
    };
    match content.split_once(':') {
        Some((k, v)) if k.trim() == key => Ok((line, v.trim())),
        _ => Err(Error::parse(
            line,
            format!("expected `{key}: ...`, found {content:?}"),
        )),
    }
}

fn parse_count(line: usize, value: &str, what: &str) -> Result<usize> {
    value.parse().map_err(|_| {
        Error::parse(
            line,
            format!("{what} must be a nonnegative integer, got {value:?}"),
        )
    })
}

pub fn parse_code(text: &str) -> Result<NeuralCode> {
    let mut lines = content_lines(text);
    let (line, value) = header(&mut lines, "neurons", text)?;
    let n = parse_count(line, value, "neuron count")?;
    if n > 64 {
        return Err(Error::parse(
            line,
            format!("at most 64 neurons are supported, got {n}"),
        ));
    }
    let mut words = Vec::new();
    for (line, content) in lines {
        words.push(parse_word(line, content, n)?);
    }
    NeuralCode::new(n, words)
}

fn parse_word(line: usize, content: &str, n: usize) -> Result<Codeword> {
    if content == "-" {
        return Ok(Codeword::EMPTY);
    }
    let mut word = Codeword::EMPTY;
    let mut last = 0;
    for token in content.split_whitespace() {
        let i: usize = token
            .parse()
            .map_err(|_| Error::parse(line, format!("malformed neuron index {token:?}")))?;
        if i == 0 || i > n {
            return Err(Error::parse(line, format!("neuron {i} is outside 1..={n}")));
        }
        if i <= last {
            return Err(Error::parse(
                line,
                "neuron indices must be strictly increasing",
            ));
        }
        last = i;
        word = word.with(i);
    }
    Ok(word)
}

pub fn serialize_code(code: &NeuralCode) -> String {
    let mut out = format!("neurons: {}\n", code.neurons());
    for w in code.words() {
        if w.is_empty() {
            out.push('-');
        } else {
            let parts: Vec<String> = w.iter().map(|i| i.to_string()).collect();
            out.push_str(&parts.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = content_lines(text);
    let (line, value) = header(&mut lines, "dimension", text)?;
    let dim = parse_count(line, value, "dimension")?;
    if dim == 0 {
        return Err(Error::parse(line, "dimension must be at least 1"));
    }
    let (line, value) = header(&mut lines, "topology", text)?;
    let topology = match value {
        "open" => Topology::Open,
        "closed" => Topology::Closed,
        other => {
            return Err(Error::parse(
                line,
                format!("topology must be `open` or `closed`, got {other:?}"),
            ))
        }
    };
    let mut sets: Vec<Polyhedron> = Vec::new();
    for (line, content) in lines {
        if let Some(rest) = content.strip_prefix("set") {
            let index = parse_count(line, rest.trim(), "set index")?;
            if index != sets.len() + 1 {
                return Err(Error::parse(
                    line,
                    format!("expected `set {}`, found `set {index}`", sets.len() + 1),
                ));
            }
            sets.push(Polyhedron::universe(dim));
            continue;
        }
        let Some(current) = sets.last_mut() else {
            return Err(Error::parse(
                line,
                "constraint row before the first `set` line",
            ));
        };
        let row = parse_row(line, content, dim, topology)?;
        current
            .push(row)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Arrangement::new(dim, topology, sets).map_err(|e| Error::parse(end_line(text), e.to_string()))
}

fn parse_row(
    line: usize,
    content: &str,
    dim: usize,
    topology: Topology,
) -> Result<LinearConstraint> {
    let tokens: Vec<&str> = content.split_whitespace().collect();
    if tokens.len() != dim + 2 {
        return Err(Error::parse(
            line,
            format!(
                "expected {dim} coefficients, a relation and a bound, found {} tokens",
                tokens.len()
            ),
        ));
    }
    let number = |t: &str| {
        parse_rational(t).ok_or_else(|| Error::parse(line, format!("malformed number {t:?}")))
    };
    let coeffs = tokens[..dim]
        .iter()
        .map(|t| number(t))
        .collect::<Result<Vec<_>>>()?;
    let relation = match tokens[dim] {
        "<=" => Relation::Le,
        "=" => Relation::Eq,
        other => {
            return Err(Error::parse(
                line,
                format!("relation must be `<=` or `=`, got {other:?}"),
            ))
        }
    };
    if topology == Topology::Open && relation == Relation::Eq {
        return Err(Error::parse(
            line,
            "topology violation: equality rows are not allowed in an open arrangement",
        ));
    }
    Ok(LinearConstraint::new(
        coeffs,
        relation,
        number(tokens[dim + 1])?,
    ))
}

pub fn serialize_arrangement(arr: &Arrangement) -> String {
    let mut out = format!("dimension: {}\ntopology: {}\n", arr.dim(), arr.topology());
    for (k, set) in arr.sets().iter().enumerate() {
        writeln!(out, "set {}", k + 1).expect("writing to a string");
        for c in set.constraints() {
            for a in &c.coeffs {
                write!(out, "{a} ").expect("writing to a string");
            }
            // Strict rows only occur in open arrangements, where they are
            // stored weak; `Lt` never reaches this point.
            let rel = match c.relation {
                Relation::Eq => "=",
                Relation::Le | Relation::Lt => "<=",
            };
            writeln!(out, "{rel} {}", c.bound).expect("writing to a string");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    #[test]
    fn sunflower_code_file() {
        let code = parse_code("neurons: 3\n1 2 3\n1\n2\n3\n-").unwrap();
        assert_eq!(
            code,
            NeuralCode::from_digits(3, &["123", "1", "2", "3", "-"]).unwrap()
        );
        assert_eq!(serialize_code(&code), "neurons: 3\n-\n1\n1 2 3\n2\n3\n");
    }

    #[test]
    fn empty_word_only() {
        let code = parse_code("neurons: 1\n-").unwrap();
        assert_eq!(code.len(), 1);
        assert!(code.contains(Codeword::EMPTY));
    }

    #[test]
    fn comments_and_duplicates() {
        let code = parse_code("# header follows\nneurons: 2 # two\n\n1 2\n1 2  # again\n").unwrap();
        assert_eq!(code.len(), 1);
    }

    #[test]
    fn code_errors_carry_line_numbers() {
        let line = |text: &str| match parse_code(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(line("neurons: 2\n3"), 2);
        assert_eq!(line(""), 1);
        assert_eq!(line("1 2\n"), 1);
        assert_eq!(line("neurons: 3\n1\n2 1\n"), 3);
        assert_eq!(line("neurons: 3\n\n1 x\n"), 3);
        assert_eq!(line("neurons: 65\n"), 1);
    }

    #[test]
    fn unit_interval() {
        let arr =
            parse_arrangement("dimension: 1\ntopology: closed\nset 1\n1 <= 1\n-1 <= 0").unwrap();
        assert_eq!(arr.len(), 1);
        assert!(arr.sets()[0].contains(Topology::Closed, &[int(0)]).unwrap());
        assert!(arr.sets()[0].contains(Topology::Closed, &[int(1)]).unwrap());
        assert!(!arr.sets()[0].contains(Topology::Closed, &[int(2)]).unwrap());
    }

    #[test]
    fn open_equality_rejected() {
        let err = parse_arrangement("dimension: 1\ntopology: open\nset 1\n1 = 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        assert!(err.to_string().contains("topology violation"));
    }

    #[test]
    fn arrangement_errors() {
        for bad in [
            "topology: closed\n",
            "dimension: 2\n",
            "dimension: 2\ntopology: ajar\n",
            "dimension: 2\ntopology: closed\n1 0 <= 1\n",
            "dimension: 2\ntopology: closed\nset 2\n",
            "dimension: 2\ntopology: closed\nset 1\n1 <= 1\n",
            "dimension: 2\ntopology: closed\nset 1\n1 0 >= 1\n",
            "dimension: 2\ntopology: closed\nset 1\n1 0 <= 1/0\n",
            "dimension: 0\ntopology: closed\n",
        ] {
            assert!(
                matches!(parse_arrangement(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn rationals_are_reduced_and_rows_kept_in_order() {
        let text = "dimension: 2\ntopology: closed\nset 1\n2/4 0 <= 6/3\n0 -1 = -3/9\nset 2\n";
        let arr = parse_arrangement(text).unwrap();
        let out = serialize_arrangement(&arr);
        assert_eq!(
            out,
            "dimension: 2\ntopology: closed\nset 1\n1/2 0 <= 2\n0 -1 = -1/3\nset 2\n"
        );
        assert_eq!(
            serialize_arrangement(&parse_arrangement(&out).unwrap()),
            out
        );
    }
}
