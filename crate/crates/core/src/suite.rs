//! Verification suites: groups crossed with formations, checked against the oracle.
//!
//! A suite file is TOML with an optional top-level `formations` list and one
//! `[[group]]` table per group (`spec`, optional `name`, optional per-group
//! `formations` overriding the top-level list).

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formation::{parse_formation, Formation};
use crate::group::PermGroup;
use crate::input::parse_group;
use crate::oracle::{normal_subgroups, radical_oracle, verify_chief, NormalLattice};
use crate::radical::fradical;
use crate::series::chief_series;

pub const STANDARD_FORMATIONS: [&str; 13] = [
    "triv",
    "all",
    "sol",
    "nil",
    "pgrp(2)",
    "pgrp(3)",
    "pigrp(2, 3)",
    "pnil(2)",
    "pnil(3)",
    "psol(2)",
    "qnil",
    "local(* -> nil)",
    "meet(nil, pigrp(2, 3))",
];

/// Transitive catalog groups of degree at most 50 beyond the symmetric and
/// alternating families, used for the scaling checks.
pub const TRANSITIVE_CATALOG: &[&str] = &[
    "cyclic(7)",
    "cyclic(30)",
    "cyclic(50)",
    "dihedral(12)",
    "dihedral(25)",
    "dihedral(50)",
    "psl2(5)",
    "psl2(7)",
    "psl2(11)",
    "psl2(13)",
    "psl2(17)",
    "psl2(19)",
    "psl2(23)",
    "psl2(29)",
    "psl2(31)",
    "psl2(37)",
    "psl2(41)",
    "psl2(43)",
    "psl2(47)",
    "agl1(11)",
    "agl1(23)",
    "agl1(31)",
    "agl1(47)",
    "sl2(3)",
    "sl2(5)",
    "sl2(7)",
    "gl2(3)",
    "gl2(5)",
    "gl2(7)",
    "wreath(sym(2), sym(4))",
    "wreath(sym(2), sym(8))",
    "wreath(sym(2), sym(12))",
    "wreath(sym(2), sym(16))",
    "wreath(sym(2), sym(25))",
    "wreath(sym(3), sym(4))",
    "wreath(sym(3), sym(8))",
    "wreath(sym(3), sym(16))",
    "wreath(sym(4), sym(3))",
    "wreath(sym(4), sym(6))",
    "wreath(sym(4), sym(12))",
    "wreath(sym(5), sym(5))",
    "wreath(sym(5), sym(10))",
    "wreath(sym(10), sym(5))",
    "wreath(sym(6), alt(8))",
    "wreath(alt(5), alt(5))",
    "wreath(alt(5), alt(10))",
    "wreath(alt(5), cyclic(10))",
    "wreath(alt(7), cyclic(7))",
    "wreath(cyclic(2), cyclic(25))",
    "wreath(cyclic(3), sym(16))",
    "wreath(cyclic(5), cyclic(10))",
    "wreath(dihedral(5), sym(5))",
    "wreath(agl1(7), sym(7))",
    "wreath(psl2(7), sym(6))",
    "wreath(sym(4), wreath(sym(2), sym(6)))",
    "wreath(sym(3), wreath(cyclic(2), cyclic(8)))",
];

const STANDARD_TEXT: &str = include_str!("../suites/standard.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default)]
    pub formations: Vec<String>,
    #[serde(rename = "group", default)]
    pub groups: Vec<SuiteGroup>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteGroup {
    pub spec: String,
    pub name: Option<String>,
    #[serde(default)]
    pub formations: Vec<String>,
}

impl SuiteGroup {
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.spec)
    }
}

impl Suite {
    pub fn parse(text: &str) -> Result<Suite> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_col(text, s.start))
                .unwrap_or((1, 1));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn load(path: &str) -> Result<Suite> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("cannot read {path}: {e}")))?;
        Suite::parse(&text)
    }

    /// The built-in suite of 44 groups of order at most 5000.
    pub fn standard() -> Suite {
        Suite::parse(STANDARD_TEXT).expect("built-in suite parses")
    }

    /// The formation texts that apply to `group`.
    pub fn formations_for<'a>(&'a self, group: &'a SuiteGroup) -> Vec<&'a str> {
        let list = if group.formations.is_empty() { &self.formations } else { &group.formations };
        if list.is_empty() {
            STANDARD_FORMATIONS.to_vec()
        } else {
            list.iter().map(String::as_str).collect()
        }
    }

    pub fn build_groups(&self, seed: u64) -> Result<Vec<(String, PermGroup)>> {
        self.groups
            .iter()
            .map(|g| Ok((g.label().to_string(), parse_group(&g.spec, seed)?)))
            .collect()
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

#[derive(Debug, Clone)]
pub struct PairOutcome {
    pub formation: Formation,
    pub engine: PermGroup,
    pub oracle: PermGroup,
}

impl PairOutcome {
    pub fn agrees(&self) -> bool {
        self.engine.same_group(&self.oracle)
    }
}

#[derive(Debug, Clone)]
pub struct GroupOutcome {
    pub lattice: NormalLattice,
    pub chief_verified: bool,
    pub pairs: Vec<PairOutcome>,
}

impl GroupOutcome {
    pub fn passed(&self) -> bool {
        self.chief_verified && self.pairs.iter().all(PairOutcome::agrees)
    }
}

/// Compares engine radicals with oracle radicals for one group.
pub fn check_group(g: &PermGroup, formations: &[Formation], max_order: u64) -> Result<GroupOutcome> {
    let lattice = normal_subgroups(g, max_order)?;
    let series = chief_series(&g.clone().into(), &[], g.seed())?;
    let chief_verified = verify_chief(&series, &lattice);
    let mut pairs = Vec::with_capacity(formations.len());
    for f in formations {
        let engine = fradical(&g.clone().into(), f)?.subgroup;
        let oracle = radical_oracle(f, &lattice)?;
        pairs.push(PairOutcome {
            formation: f.clone(),
            engine,
            oracle,
        });
    }
    Ok(GroupOutcome {
        lattice,
        chief_verified,
        pairs,
    })
}

pub fn parse_formations(texts: &[&str]) -> Result<Vec<Formation>> {
    texts.iter().map(|t| parse_formation(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_suite_is_well_formed() {
        let s = Suite::standard();
        assert!(s.groups.len() >= 30);
        assert_eq!(s.formations.len(), STANDARD_FORMATIONS.len());
        for (a, b) in s.formations.iter().zip(STANDARD_FORMATIONS) {
            assert_eq!(a, b);
        }
        assert!(parse_formations(&STANDARD_FORMATIONS).is_ok());
    }

    #[test]
    fn suite_errors_have_positions() {
        match Suite::parse("[[group]]\nspek = \"sym(3)\"\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_group_checks_out() {
        let g = parse_group("sym(4)", 1).unwrap();
        let fs = parse_formations(&["nil", "qnil", "psol(3)"]).unwrap();
        let out = check_group(&g, &fs, 5000).unwrap();
        assert!(out.passed());
        assert_eq!(out.pairs[0].engine.order_u64(), Some(4));
    }
}
