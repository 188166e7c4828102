//! Group specifications: catalog expressions, inline generators and files.
//!
//! * `sym(4)`, `direct(alt(5), cyclic(6))`: catalog expressions;
//! * `4: (1 2); (1 2 3 4)`: degree, then generators in 1-indexed cycle notation;
//! * `@path.toml`: a file with `degree` and `generators` (or `catalog`), and
//!   optionally `kernel`, a list of generators of a normal subgroup.

use serde::Deserialize;

use crate::catalog::parse_catalog;
use crate::error::{Error, Result};
use crate::group::{PermGroup, QuotientRef};
use crate::perm::Perm;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    degree: Option<usize>,
    generators: Option<Vec<String>>,
    catalog: Option<String>,
    kernel: Option<Vec<String>>,
}

/// Parses a group specification; a file may also carry a kernel.
pub fn parse_quotient(text: &str, seed: u64) -> Result<QuotientRef> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        let body = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {path}: {e}")))?;
        return parse_group_file(&body, seed);
    }
    Ok(QuotientRef::whole(parse_inline_or_catalog(text, seed)?))
}

/// Parses a group specification, ignoring any kernel.
pub fn parse_group(text: &str, seed: u64) -> Result<PermGroup> {
    Ok(parse_quotient(text, seed)?.ambient().clone())
}

fn parse_inline_or_catalog(text: &str, seed: u64) -> Result<PermGroup> {
    match text.split_once(':') {
        Some((deg, gens)) if deg.trim().chars().all(|c| c.is_ascii_digit()) && !deg.trim().is_empty() => {
            let degree: usize = deg.trim().parse().map_err(|_| Error::Parse {
                line: 1,
                column: 1,
                message: "bad degree".into(),
            })?;
            let offset = text.len() - gens.len();
            let mut perms = Vec::new();
            let mut pos = offset;
            for piece in gens.split(';') {
                let lead = piece.len() - piece.trim_start().len();
                if !piece.trim().is_empty() {
                    perms.push(parse_perm_at(degree, piece.trim(), 1, pos + lead)?);
                }
                pos += piece.len() + 1;
            }
            Ok(PermGroup::new(degree, perms, seed)?)
        }
        _ => Ok(parse_catalog(text)?.reseeded(seed)),
    }
}

/// Cycle notation with errors shifted to a position in the enclosing text.
fn parse_perm_at(degree: usize, text: &str, line: usize, offset: usize) -> Result<Perm> {
    Perm::parse_cycles(degree, text).map_err(|e| match e {
        Error::Parse { column, message, .. } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    })
}

fn parse_group_file(body: &str, seed: u64) -> Result<QuotientRef> {
    let file: GroupFile = toml::from_str(body).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(body, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let g = match (&file.catalog, file.degree, &file.generators) {
        (Some(c), None, None) => parse_catalog(c)?.reseeded(seed),
        (None, Some(degree), Some(gens)) => PermGroup::new(degree, perms_in_file(body, degree, gens)?, seed)?,
        _ => {
            return Err(Error::InvalidSpec(
                "a group file needs either `catalog` or both `degree` and `generators`".into(),
            ))
        }
    };
    match &file.kernel {
        None => Ok(QuotientRef::whole(g)),
        Some(gens) => {
            let k = PermGroup::new(g.degree(), perms_in_file(body, g.degree(), gens)?, seed)?;
            QuotientRef::new(g, k)
        }
    }
}

fn perms_in_file(body: &str, degree: usize, gens: &[String]) -> Result<Vec<Perm>> {
    gens.iter()
        .map(|s| {
            // report errors at the string's position in the file
            let (line, col) = body
                .find(&format!("\"{s}\""))
                .map_or((1, 1), |at| line_col(body, at + 1));
            parse_perm_at(degree, s, line, col - 1)
        })
        .collect()
}

fn line_col(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_catalog() {
        let g = parse_group("4: (1 2); (1 2 3 4)", 1).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(parse_group("alt(5)", 1).unwrap().order_u64(), Some(60));
        assert_eq!(parse_group("5:", 1).unwrap().order_u64(), Some(1));
        match parse_group("3: (1 2", 1) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 8),
            other => panic!("{other:?}"),
        }
        match parse_group("4: (1 2); (1 5)", 1) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn files() {
        let q = parse_group_file(
            "degree = 4\ngenerators = [\"(1 2)\", \"(1 2 3 4)\"]\nkernel = [\"(1 2)(3 4)\", \"(1 3)(2 4)\"]\n",
            1,
        )
        .unwrap();
        assert_eq!(q.order().to_string(), "6");
        let q = parse_group_file("catalog = \"sym(3)\"\n", 1).unwrap();
        assert_eq!(q.ambient().order_u64(), Some(6));
        // kernel not normal
        assert!(matches!(
            parse_group_file("degree = 3\ngenerators = [\"(1 2)\", \"(1 2 3)\"]\nkernel = [\"(1 2)\"]\n", 1),
            Err(Error::NotNormal(_))
        ));
        match parse_group_file("degree = 3\ngenerators = [\"(1 2\"]\n", 1) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 20)),
            other => panic!("{other:?}"),
        }
        match parse_group_file("degree = \n", 1) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }
}
