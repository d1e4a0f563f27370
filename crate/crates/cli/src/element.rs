//! Building realizations from constructions, and reading elements.
//!
//! Element syntax by construction:
//! - `sym`: cycle notation, `"(1 2)(3 4)"`, `"()"` for the identity.
//! - `wreath`/`tower`: a base permutation (embedded at the top level), a
//!   shift generator `"s1"`, `"s2"`, ..., or `{"shift": k, "support": [[x, e], ...]}`
//!   with `e` one level down.
//! - `pl-tower`: a word such as `"x0 t2^-1 x1^2"` over `x0`, `x1`, `t2`, ...,
//!   or a breakpoint list `[["0/1", "0/1"], ...]`.
//! - `hnn-b`/`mitosis`: a list of tokens, each a stable letter (`"d"`,
//!   `"d^-1"`, `"s"`, `"s^-1"`) or a base element `{"minus": p}`,
//!   `{"plus": p}`, `{"diag": p}`, `{"pair": [p, q]}`.
//! - `gl`: rows of rationals, each `"n/d"` or an integer.

use displace_core::group::{pow, Group, Pair};
use displace_core::hnn::{BrittonWord, HnnGroup, Letter};
use displace_core::linalg::{GeneralLinear, RationalMatrix};
use displace_core::perm::{Permutation, SymmetricGroup};
use displace_core::pl::{PlGroup, PlHomeo, PlTower};
use displace_core::rational::{parse_q, Q};
use displace_core::wreath::{TowerElem, TowerLevel, TowerSpec};
use displace_core::{Error, Result};
use serde_json::Value;

use crate::scenario::Construction;

pub enum Realization {
    Sym(SymmetricGroup),
    Wreath(TowerLevel<SymmetricGroup>),
    Pl(PlTower),
    Hnn(HnnGroup<SymmetricGroup>),
    Gl(GeneralLinear),
}

/// Tower sequence of a `wreath` or `tower` construction.
pub fn tower_spec(c: &Construction) -> Option<(usize, TowerSpec, usize)> {
    match c {
        Construction::Wreath { base, n } => Some((
            Construction::sym_base(base).ok()?,
            TowerSpec::explicit(n.clone()),
            n.len(),
        )),
        Construction::Tower { base, spec, depth } => {
            Some((Construction::sym_base(base).ok()?, spec.clone(), *depth))
        }
        _ => None,
    }
}

impl Realization {
    pub fn build(c: &Construction) -> Result<Self> {
        let sym = |base: &Construction| {
            Construction::sym_base(base)
                .map(SymmetricGroup::new)
                .map_err(|e| Error::Precondition(e.to_string()))
        };
        Ok(match c {
            Construction::Sym { degree } => Realization::Sym(SymmetricGroup::new(*degree)),
            Construction::Wreath { .. } | Construction::Tower { .. } => {
                let (k, spec, depth) = tower_spec(c).expect("tower construction");
                Realization::Wreath(TowerLevel::from_spec(SymmetricGroup::new(k), &spec, depth)?)
            }
            Construction::PlTower { depth } => Realization::Pl(PlTower::new(*depth)?),
            Construction::HnnB { base } => Realization::Hnn(HnnGroup::binate(sym(base)?)),
            Construction::Mitosis { base } => Realization::Hnn(HnnGroup::mitosis(sym(base)?)),
            Construction::Gl { n } => Realization::Gl(GeneralLinear::new(*n)),
        })
    }

    /// Parses an element without keeping it; used to reject bad scenarios
    /// before anything runs.
    pub fn check_value(&self, v: &Value) -> Result<()> {
        match self {
            Realization::Sym(g) => parse_perm(g, v).map(drop),
            Realization::Wreath(g) => parse_tower(g, v).map(drop),
            Realization::Pl(t) => parse_pl(t, v).map(drop),
            Realization::Hnn(g) => parse_word(g, v).map(drop),
            Realization::Gl(g) => parse_matrix(g, v).map(drop),
        }
    }
}

fn malformed(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

pub fn parse_perm(g: &SymmetricGroup, v: &Value) -> Result<Permutation> {
    let s = v.as_str().ok_or_else(|| malformed("a permutation in cycle notation", v))?;
    g.parse(s)
}

pub fn parse_tower(g: &TowerLevel<SymmetricGroup>, v: &Value) -> Result<TowerElem<Permutation>> {
    let x = parse_tower_at(g, g.level(), v)?;
    g.check(&x)?;
    Ok(x)
}

fn parse_tower_at(
    top: &TowerLevel<SymmetricGroup>,
    level: usize,
    v: &Value,
) -> Result<TowerElem<Permutation>> {
    let g = top.truncate(level);
    match v {
        Value::String(s) => {
            if let Some(j) = s.strip_prefix('s').and_then(|j| j.parse::<usize>().ok()) {
                return g.shift_generator(j);
            }
            g.base_elem(top.base.parse(s)?)
        }
        Value::Object(map) if level > 0 => {
            let shift = map
                .get("shift")
                .and_then(Value::as_i64)
                .ok_or_else(|| malformed("an integer \"shift\"", v))?;
            let empty = Vec::new();
            let entries = match map.get("support") {
                Some(Value::Array(a)) => a,
                None => &empty,
                Some(other) => return Err(malformed("a \"support\" list", other)),
            };
            if let Some(k) = map.keys().find(|k| *k != "shift" && *k != "support") {
                return Err(Error::Parse(format!("unknown field {k:?} in tower element")));
            }
            let mut support = Vec::new();
            for e in entries {
                let pair = e.as_array().filter(|p| p.len() == 2);
                let Some(pair) = pair else {
                    return Err(malformed("a [coordinate, element] pair", e));
                };
                let x = pair[0]
                    .as_i64()
                    .ok_or_else(|| malformed("an integer coordinate", &pair[0]))?;
                let inner = parse_tower_at(top, level - 1, &pair[1])?;
                support.push((x, inner));
            }
            // canonicalize through the group: sort, drop identities, reduce mod n
            let mut acc = g.identity();
            for (x, inner) in support {
                let coord = TowerElem::Wreath {
                    shift: 0,
                    support: vec![(x, inner)],
                };
                let coord = normalize(&g, coord)?;
                acc = g.op(&acc, &coord);
            }
            let shift_elem = normalize(&g, TowerElem::Wreath { shift, support: Vec::new() })?;
            Ok(g.op(&acc, &shift_elem))
        }
        _ => Err(malformed("a tower element", v)),
    }
}

/// Brings a hand-written wreath element into canonical form, rejecting it
/// when coordinates fall outside a cyclic top.
fn normalize(
    g: &TowerLevel<SymmetricGroup>,
    x: TowerElem<Permutation>,
) -> Result<TowerElem<Permutation>> {
    let x = match x {
        TowerElem::Wreath { shift, support } => {
            let top = g.tops()[g.level() - 1];
            let (shift, support) = match top {
                displace_core::wreath::Top::Cyclic(n) => {
                    let n = n as i64;
                    if support.iter().any(|(c, _)| *c < 0 || *c >= n) {
                        return Err(Error::Parse(format!("coordinate outside 0..{n}")));
                    }
                    (shift.rem_euclid(n), support)
                }
                displace_core::wreath::Top::Integers => (shift, support),
            };
            let support = support
                .into_iter()
                .filter(|(_, v)| !is_trivial(g, v))
                .collect();
            TowerElem::Wreath { shift, support }
        }
        base => base,
    };
    g.check(&x)?;
    Ok(x)
}

fn is_trivial(g: &TowerLevel<SymmetricGroup>, v: &TowerElem<Permutation>) -> bool {
    match v {
        TowerElem::Base(p) => g.base.is_identity(p),
        TowerElem::Wreath { shift, support } => *shift == 0 && support.is_empty(),
    }
}

pub fn parse_pl(tower: &PlTower, v: &Value) -> Result<PlHomeo> {
    match v {
        Value::String(s) => {
            let mut acc = PlHomeo::identity();
            for tok in s.split_whitespace() {
                let (name, exp) = match tok.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                    ),
                    None => (tok, 1),
                };
                let g = match name {
                    "1" | "id" => PlHomeo::identity(),
                    "x0" => tower.base_generators[0].clone(),
                    "x1" => tower.base_generators[1].clone(),
                    t => {
                        let i = t
                            .strip_prefix('t')
                            .and_then(|i| i.parse::<usize>().ok())
                            .filter(|i| (2..=tower.depth()).contains(i))
                            .ok_or_else(|| Error::Parse(format!("unknown PL generator {t:?}")))?;
                        tower.dissipator(i - 1).clone()
                    }
                };
                acc = acc.compose(&pow(&PlGroup, &g, exp));
            }
            Ok(acc)
        }
        Value::Array(_) => {
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
        }
        _ => Err(malformed("a PL word or breakpoint list", v)),
    }
}

pub fn parse_word(
    g: &HnnGroup<SymmetricGroup>,
    v: &Value,
) -> Result<BrittonWord<Permutation>> {
    let toks = v.as_array().ok_or_else(|| malformed("a list of word tokens", v))?;
    let one = || g.gamma.identity();
    let perm = |v: &Value| parse_perm(&g.gamma, v);
    let mut acc = g.identity();
    for tok in toks {
        let factor = match tok {
            Value::String(s) => {
                let letter = match s.as_str() {
                    "d" => Letter::D,
                    "d^-1" => Letter::DInv,
                    "s" => Letter::S,
                    "s^-1" => Letter::SInv,
                    _ => return Err(Error::Parse(format!("unknown stable letter {s:?}"))),
                };
                if !g.letters().contains(&letter) {
                    return Err(Error::Parse(format!("letter {s:?} does not exist in {}", g.describe())));
                }
                g.letter(letter)
            }
            Value::Object(map) if map.len() == 1 => {
                let (key, val) = map.iter().next().unwrap();
                let pair = match key.as_str() {
                    "minus" => Pair(perm(val)?, one()),
                    "plus" => Pair(one(), perm(val)?),
                    "diag" => {
                        let p = perm(val)?;
                        Pair(p.clone(), p)
                    }
                    "pair" => match val.as_array().map(Vec::as_slice) {
                        Some([a, b]) => Pair(perm(a)?, perm(b)?),
                        _ => return Err(malformed("a pair of permutations", val)),
                    },
                    k => return Err(Error::Parse(format!("unknown base token {k:?}"))),
                };
                g.base_word(pair)
            }
            other => return Err(malformed("a stable letter or base token", other)),
        };
        acc = g.op(&acc, &factor);
    }
    Ok(acc)
}

pub fn parse_matrix(g: &GeneralLinear, v: &Value) -> Result<RationalMatrix> {
    let rows = v.as_array().ok_or_else(|| malformed("a list of matrix rows", v))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| malformed("a matrix row", r))?
                .iter()
                .map(parse_entry)
                .collect::<Result<Vec<Q>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = RationalMatrix::from_rows(rows)?;
    g.element(m)
}

fn parse_entry(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n
            .as_i64()
            .map(displace_core::rational::qi)
            .ok_or_else(|| malformed("an integer or \"n/d\" string", v)),
        _ => Err(malformed("an integer or \"n/d\" string", v)),
    }
}
