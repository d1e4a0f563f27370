//! Scenario files: a list of checks, each pairing a group construction
//! with an operation and the verdict it is expected to produce.

use displace_core::checkers::Relator;
use displace_core::pl::{IntervalSet, MAX_TOWER_DEPTH};
use displace_core::wreath::TowerSpec;
use displace_core::Verdict;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const MAX_DEGREE: usize = 64;
pub const MAX_MATRIX_SIZE: usize = 16;
pub const MAX_WREATH_DEPTH: usize = 8;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub suite: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub seed: u64,
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub anchor: String,
    pub group: Construction,
    pub op: Op,
    pub expect: Expectation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Pass,
    BoundedPass,
    Fail,
    NotApplicable,
}

impl Expectation {
    pub fn matches(self, v: Verdict) -> bool {
        matches!(
            (self, v),
            (Expectation::Pass, Verdict::Pass)
                | (Expectation::BoundedPass, Verdict::BoundedPass)
                | (Expectation::Fail, Verdict::Fail)
                | (Expectation::NotApplicable, Verdict::NotApplicable)
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Construction {
    Sym { degree: usize },
    Wreath { base: Box<Construction>, n: Vec<u64> },
    Tower {
        base: Box<Construction>,
        spec: TowerSpec,
        depth: usize,
    },
    PlTower { depth: usize },
    HnnB { base: Box<Construction> },
    Mitosis { base: Box<Construction> },
    Gl { n: usize },
}

impl Construction {
    /// The symmetric-group degree of a `sym` base, required by the
    /// composite constructions.
    pub fn sym_base(base: &Construction) -> Result<usize, ScenarioError> {
        match base {
            Construction::Sym { degree } => Ok(*degree),
            other => Err(ScenarioError::Invalid(format!(
                "base must be a symmetric group, got {}",
                other.kind()
            ))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Construction::Sym { .. } => "sym",
            Construction::Wreath { .. } => "wreath",
            Construction::Tower { .. } => "tower",
            Construction::PlTower { .. } => "pl-tower",
            Construction::HnnB { .. } => "hnn-b",
            Construction::Mitosis { .. } => "mitosis",
            Construction::Gl { .. } => "gl",
        }
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| Err(ScenarioError::Invalid(m));
        match self {
            Construction::Sym { degree } if *degree == 0 || *degree > MAX_DEGREE => {
                bad(format!("sym degree {degree} outside 1..={MAX_DEGREE}"))
            }
            Construction::Sym { .. } => Ok(()),
            Construction::Wreath { base, n } => {
                Construction::sym_base(base)?;
                if n.is_empty() || n.len() > MAX_WREATH_DEPTH {
                    return bad(format!("wreath needs 1..={MAX_WREATH_DEPTH} tops"));
                }
                match n.iter().find(|&&k| k < 2) {
                    Some(k) => bad(format!("cyclic top {k} is below 2")),
                    None => Ok(()),
                }
            }
            Construction::Tower { base, spec, depth } => {
                Construction::sym_base(base)?;
                if *depth > MAX_WREATH_DEPTH {
                    return bad(format!("tower depth {depth} above {MAX_WREATH_DEPTH}"));
                }
                spec.tops(*depth)
                    .map(|_| ())
                    .map_err(|e| ScenarioError::Invalid(e.to_string()))
            }
            Construction::PlTower { depth } if *depth == 0 || *depth > MAX_TOWER_DEPTH => {
                bad(format!("pl-tower depth {depth} outside 1..={MAX_TOWER_DEPTH}"))
            }
            Construction::PlTower { .. } => Ok(()),
            Construction::HnnB { base } | Construction::Mitosis { base } => {
                Construction::sym_base(base).map(|_| ())
            }
            Construction::Gl { n } if *n == 0 || *n > MAX_MATRIX_SIZE => {
                bad(format!("gl size {n} outside 1..={MAX_MATRIX_SIZE}"))
            }
            Construction::Gl { .. } => Ok(()),
        }
    }
}

/// `n` of a cyclic-conjugates certificate: an integer or `"inf"`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycleSpec {
    Finite(u64),
    Named(Infinity),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum Infinity {
    #[serde(rename = "inf")]
    Inf,
}

/// The operation a check performs. Element-valued fields hold JSON in the
/// element syntax of the check's construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Op {
    Cc { subject: Vec<Value>, t: Value },
    Cznc { subject: Vec<Value>, t: Value, n: u64 },
    Czc { subject: Vec<Value>, t: Value, p_max: u64 },
    Ccc {
        subject: Vec<Value>,
        t: Value,
        n: CycleSpec,
        p_max: u64,
    },
    Binate {
        subject: Vec<Value>,
        f: Vec<Value>,
        t: Value,
        #[serde(default)]
        relators: Option<Vec<Relator>>,
    },
    Mitotic {
        subject: Vec<Value>,
        t1: Value,
        t2: Value,
    },
    M {
        lambda: Vec<Value>,
        t: Value,
        subset: Vec<Value>,
        s: Value,
        p_max: u64,
    },
    Dissipator {
        region: IntervalSet,
        t: Value,
        sample: Vec<Value>,
        p_max: u64,
    },
    /// Cyclic-shift witness in a wreath tower for `H` at level `h_level`.
    ZnWitness {
        h_level: usize,
        subject: Vec<Value>,
        level: usize,
        p: u64,
    },
    /// Exhaustive search of a finite group for a `Z/p` witness.
    ZpSearch { subject: Vec<Value>, p: u64 },
    /// Every element of a finite group fails `CZC` at `p = ord(t)`.
    TorsionSweep { subject: Vec<Value> },
    BlockConjugation { samples: usize },
    Centralizer { expected_dim: usize },
    BlockSwap { subject: Vec<Value> },
    PlTower {
        displace_p_max: u64,
        czc_p_max: u64,
        samples: usize,
        word_length: usize,
    },
    FixedPoint { samples: usize },
    Britton {
        max_letters: usize,
        confluence_words: usize,
    },
    BassSerre { radius: usize },
    FixedEdges { radius: usize },
    CcSearch { max_letters: usize },
    MitosisCheck {},
    SymZn { subject: Vec<Value>, n: u64 },
}

impl Op {
    pub fn kind(&self) -> &'static str {
        match self {
            Op::Cc { .. } => "cc",
            Op::Cznc { .. } => "cznc",
            Op::Czc { .. } => "czc",
            Op::Ccc { .. } => "ccc",
            Op::Binate { .. } => "binate",
            Op::Mitotic { .. } => "mitotic",
            Op::M { .. } => "m",
            Op::Dissipator { .. } => "dissipator",
            Op::ZnWitness { .. } => "zn-witness",
            Op::ZpSearch { .. } => "zp-search",
            Op::TorsionSweep { .. } => "torsion-sweep",
            Op::BlockConjugation { .. } => "block-conjugation",
            Op::Centralizer { .. } => "centralizer",
            Op::BlockSwap { .. } => "block-swap",
            Op::PlTower { .. } => "pl-tower",
            Op::FixedPoint { .. } => "fixed-point",
            Op::Britton { .. } => "britton",
            Op::BassSerre { .. } => "bass-serre",
            Op::FixedEdges { .. } => "fixed-edges",
            Op::CcSearch { .. } => "cc-search",
            Op::MitosisCheck {} => "mitosis-check",
            Op::SymZn { .. } => "sym-zn",
        }
    }

    /// Overrides every `p_max` the operation carries.
    pub fn set_p_max(&mut self, p: u64) {
        match self {
            Op::Czc { p_max, .. }
            | Op::Ccc { p_max, .. }
            | Op::M { p_max, .. }
            | Op::Dissipator { p_max, .. }
            | Op::PlTower {
                czc_p_max: p_max, ..
            } => *p_max = p,
            _ => {}
        }
    }

    /// Which constructions the operation accepts.
    fn accepts(&self, c: &Construction) -> bool {
        use Construction as C;
        match self {
            Op::Cc { .. }
            | Op::Cznc { .. }
            | Op::Czc { .. }
            | Op::Ccc { .. }
            | Op::Binate { .. }
            | Op::Mitotic { .. }
            | Op::M { .. } => true,
            Op::Dissipator { .. } | Op::PlTower { .. } | Op::FixedPoint { .. } => {
                matches!(c, C::PlTower { .. })
            }
            Op::ZnWitness { .. } => matches!(c, C::Wreath { .. } | C::Tower { .. }),
            Op::ZpSearch { .. } | Op::TorsionSweep { .. } => {
                matches!(c, C::Sym { .. } | C::Wreath { .. })
                    || matches!(c, C::Tower { spec, depth, .. } if spec.tops(*depth).is_ok())
            }
            Op::BlockConjugation { .. } => matches!(c, C::Gl { n: 4 }),
            Op::Centralizer { .. } => matches!(c, C::Gl { n: 4 }),
            Op::BlockSwap { .. } => matches!(c, C::Gl { .. }),
            Op::Britton { .. } | Op::BassSerre { .. } | Op::FixedEdges { .. } => {
                matches!(c, C::HnnB { .. } | C::Mitosis { .. })
            }
            Op::CcSearch { .. } => matches!(c, C::HnnB { .. }),
            Op::MitosisCheck {} => matches!(c, C::Mitosis { .. }),
            Op::SymZn { .. } => matches!(c, C::Sym { .. }),
        }
    }

    /// Every element-valued field, for up-front parsing.
    pub fn element_values(&self) -> Vec<&Value> {
        let mut out: Vec<&Value> = Vec::new();
        match self {
            Op::Cc { subject, t } | Op::Cznc { subject, t, .. } | Op::Czc { subject, t, .. } => {
                out.extend(subject);
                out.push(t);
            }
            Op::Ccc { subject, t, .. } => {
                out.extend(subject);
                out.push(t);
            }
            Op::Binate { subject, f, t, .. } => {
                out.extend(subject);
                out.extend(f);
                out.push(t);
            }
            Op::Mitotic { subject, t1, t2 } => {
                out.extend(subject);
                out.push(t1);
                out.push(t2);
            }
            Op::M {
                lambda,
                t,
                subset,
                s,
                ..
            } => {
                out.extend(lambda);
                out.extend(subset);
                out.push(t);
                out.push(s);
            }
            Op::Dissipator { t, sample, .. } => {
                out.extend(sample);
                out.push(t);
            }
            Op::ZpSearch { subject, .. }
            | Op::TorsionSweep { subject }
            | Op::BlockSwap { subject }
            | Op::SymZn { subject, .. } => out.extend(subject),
            // parsed against a lower level of the tower
            Op::ZnWitness { .. } => {}
            _ => {}
        }
        out
    }
}

impl ScenarioSpec {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let mut seen = std::collections::HashSet::new();
        for c in &self.checks {
            if !seen.insert(c.id.as_str()) {
                return Err(ScenarioError::Invalid(format!("duplicate check id {:?}", c.id)));
            }
            c.group
                .validate()
                .map_err(|e| ScenarioError::Invalid(format!("check {:?}: {e}", c.id)))?;
            if !c.op.accepts(&c.group) {
                return Err(ScenarioError::Invalid(format!(
                    "check {:?}: operation {} does not apply to a {} construction",
                    c.id,
                    c.op.kind(),
                    c.group.kind()
                )));
            }
        }
        Ok(())
    }
}
