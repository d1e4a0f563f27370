//! Built-in verification suites.

use crate::scenario::{ScenarioError, ScenarioSpec};

pub struct Suite {
    pub name: &'static str,
    pub anchor: &'static str,
    pub source: &'static str,
}

macro_rules! suite {
    ($name:literal, $anchor:literal) => {
        Suite {
            name: $name,
            anchor: $anchor,
            source: include_str!(concat!("../suites/", $name, ".json")),
        }
    };
}

/// Every named suite, in listing order. `all` is assembled from these.
pub const SUITES: &[Suite] = &[
    suite!("wreath-cznc", "t = s_i^k gives commuting Z/p-conjugates when n_i = k p"),
    suite!("wreath-negative", "no Z/2 witness in S3 wr Z/3"),
    suite!("torsion", "non-abelian torsion groups lack commuting Z-conjugates"),
    suite!("gl-block", "block conjugation, centralizer shape, the Z/2 block swap"),
    suite!("pl-tower", "Gamma_{i+1} = <Gamma_i, t_{i+1}> and its dissipators"),
    suite!("fixed-point", "centralizer of the element fixing only 1/2"),
    suite!("britton", "^d (1, g) = (g, g); Britton's lemma and confluence"),
    suite!("bass-serre", "(g, 1) fixes a unique vertex of the Bass-Serre tree"),
    suite!("binate-tower-no-cc", "b(S3) has no commuting-conjugates witness up to two letters"),
    suite!("mitosis", "^s (g, 1) = (1, g): mitotic and binate witnesses"),
    suite!("hall-analogue", "H wr Z/n embeds with a commuting Z/n-conjugates witness"),
];

pub const ALL: &str = "all";

pub fn names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).chain([ALL]).collect()
}

/// One line per suite: name and anchor.
pub fn listing() -> String {
    let width = names().iter().map(|n| n.len()).max().unwrap_or(0);
    let mut out = String::new();
    for s in SUITES {
        out.push_str(&format!("{:<width$}  {}\n", s.name, s.anchor));
    }
    out.push_str(&format!("{:<width$}  every suite above, in order\n", ALL));
    out
}

/// Loads a named suite. Checks of `all` are prefixed with their suite name.
pub fn load(name: &str) -> Option<Result<ScenarioSpec, ScenarioError>> {
    if name == ALL {
        let mut checks = Vec::new();
        for s in SUITES {
            let spec = match ScenarioSpec::parse(s.source) {
                Ok(spec) => spec,
                Err(e) => return Some(Err(e)),
            };
            checks.extend(spec.checks.into_iter().map(|mut c| {
                c.id = format!("{}/{}", s.name, c.id);
                c
            }));
        }
        let all = ScenarioSpec {
            suite: ALL.into(),
            description: "Every built-in suite.".into(),
            seed: 0,
            checks,
        };
        return Some(all.validate().map(|_| all));
    }
    SUITES
        .iter()
        .find(|s| s.name == name)
        .map(|s| ScenarioSpec::parse(s.source))
}
