//! Text formats for semigroups and elements.
//!
//! A generator list is either scalars, `10,12,21,38`, or tuples,
//! `(2,0),(3,1),(0,5)`, whose length fixes the dimension. Files hold one
//! semigroup per line as `dim=<d>; gens=<list>`, where `dim=` may be
//! omitted; blank lines and `#` comments are skipped.

use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};

fn parse_int(t: &str) -> Result<i64> {
    let t = t.trim();
    t.parse().map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
}

/// Parses a generator list into vectors (scalars become 1-vectors).
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<i64>>> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::NoGenerators);
    }
    if !text.starts_with('(') {
        return text.split(',').map(|t| parse_int(t).map(|v| vec![v])).collect();
    }
    let mut out = Vec::new();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
        out.push(inner[..close].split(',').map(parse_int).collect::<Result<Vec<_>>>()?);
        rest = &inner[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            rest = r;
            if rest.is_empty() {
                return Err(Error::Parse("trailing comma".into()));
            }
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected ',' at {rest:?}")));
        }
    }
    Ok(out)
}

/// Builds a semigroup from a generator list; the dimension is taken from
/// the first entry and must match `dim` when given.
pub fn parse_generators(text: &str, dim: Option<usize>) -> Result<Semigroup> {
    let vectors = parse_vectors(text)?;
    let inferred = vectors[0].len();
    let dim = dim.unwrap_or(inferred);
    Semigroup::new(vectors.into_iter().map(Element::from).collect(), dim)
}

/// Parses one `dim=<d>; gens=<list>` line.
pub fn parse_line(line: &str) -> Result<Semigroup> {
    let mut dim = None;
    let mut gens = None;
    for part in line.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        match key.trim() {
            "dim" => {
                let d = parse_int(value)?;
                if d < 1 {
                    return Err(Error::Parse(format!("dimension must be positive, got {d}")));
                }
                dim = Some(d as usize);
            }
            "gens" => gens = Some(value.trim()),
            other => return Err(Error::Parse(format!("unknown key {other:?}"))),
        }
    }
    let gens = gens.ok_or_else(|| Error::Parse("missing gens=".into()))?;
    parse_generators(gens, dim)
}

/// Parses a file body; errors carry the 1-based line number.
pub fn parse_file(text: &str) -> Result<Vec<Semigroup>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| parse_line(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

/// Parses `48`, `(30,10)` or `30,10` as an element of dimension `dim`.
pub fn parse_element(text: &str, dim: usize) -> Result<Element> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.trim_start_matches('(').trim_end_matches(')');
    let coords = t.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: coords.len() });
    }
    Ok(Element::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_and_tuple_lists() {
        assert_eq!(parse_vectors("10, 12,21,38").unwrap(), vec![vec![10], vec![12], vec![21], vec![38]]);
        assert_eq!(parse_vectors("(2,0),(3,1), (0,5)").unwrap(), vec![vec![2, 0], vec![3, 1], vec![0, 5]]);
        assert!(parse_vectors("(2,0)(3,1)").is_err());
        assert!(parse_vectors("(2,0),").is_err());
        assert!(parse_vectors("2,x").is_err());
        assert_eq!(parse_vectors(""), Err(Error::NoGenerators));
    }

    #[test]
    fn lines_and_files() {
        let s = parse_line("dim=2; gens=(2,0),(3,1),(0,5)").unwrap();
        assert_eq!(s.dim(), 2);
        let t = parse_line("gens=10,12,21,38").unwrap();
        assert_eq!(t.scalar_generators().unwrap(), vec![10, 12, 21, 38]);
        assert!(matches!(parse_line("dim=3; gens=(2,0),(3,1)"), Err(Error::DimensionMismatch { .. })));
        assert!(parse_line("dim=1").is_err());
        let all = parse_file("# corpus\n\ngens=6,9,20\ndim=1; gens=5,6,8 # trailing\n").unwrap();
        assert_eq!(all.len(), 2);
        let err = parse_file("gens=6,9,20\ngens=6,9,18\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn elements() {
        assert_eq!(parse_element("48", 1).unwrap(), Element::scalar(48));
        assert_eq!(parse_element("(30,10)", 2).unwrap(), Element::from([30, 10]));
        assert_eq!(parse_element("30,10", 2).unwrap(), Element::from([30, 10]));
        assert!(parse_element("30", 2).is_err());
    }
}
