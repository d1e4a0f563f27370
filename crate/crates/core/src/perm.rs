//! Finite permutations, the symmetric groups, and finite permutation groups.
//!
//! Points are `1..=k` in text and `0..k` internally. Products compose as
//! functions: `(a * b)(x) = a(b(x))`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{mismatch, Error, Result};
use crate::group::{check_budget, enumerate_subgroup, FiniteGroup, Group};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Malformed(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based cycles, e.g. `&[&[1, 2, 3], &[4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p as usize > degree || used[p as usize - 1] {
                    return Err(Error::Malformed(format!(
                        "bad point {p} in cycle {cycle:?} for degree {degree}"
                    )));
                }
                used[p as usize - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                images[p as usize - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Same permutation on a larger point set, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Nontrivial cycles, 1-based, each starting at its least point,
    /// sorted by least moved point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<u32>>> {
    let bad = |why: &str| Error::Parse(format!("cycle notation {s:?}: {why}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &open[..close];
        let points: Vec<u32> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| bad("non-numeric point")))
            .collect::<Result<_>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The degree is not recoverable from cycle text; use [`Permutation::parse`]
/// when it matters. Deserialization takes the largest mentioned point.
impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0) as usize;
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

/// `Sym(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricGroup {
    pub degree: usize,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> Self {
        SymmetricGroup { degree }
    }

    pub fn parse(&self, s: &str) -> Result<Permutation> {
        Permutation::parse(self.degree, s)
    }

    /// A transposition and a full cycle (or nothing, for `k < 2`).
    pub fn standard_generators(&self) -> Vec<Permutation> {
        let k = self.degree as u32;
        match k {
            0 | 1 => Vec::new(),
            2 => vec![Permutation::from_cycles(2, &[&[1, 2]]).unwrap()],
            _ => {
                let full: Vec<u32> = (1..=k).collect();
                vec![
                    Permutation::from_cycles(self.degree, &[&[1, 2]]).unwrap(),
                    Permutation::from_cycles(self.degree, &[&full]).unwrap(),
                ]
            }
        }
    }
}

impl Group for SymmetricGroup {
    type Elem = Permutation;

    fn describe(&self) -> String {
        format!("Sym({})", self.degree)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check(&self, a: &Permutation) -> Result<()> {
        if a.degree() != self.degree {
            return Err(mismatch(self.describe(), format!("Sym({})", a.degree())));
        }
        Ok(())
    }

    fn op(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

impl FiniteGroup for SymmetricGroup {
    fn order(&self) -> u128 {
        (1..=self.degree as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
    }

    /// Lexicographic order of image arrays.
    fn elements(&self, budget: u128) -> Result<Vec<Permutation>> {
        check_budget("symmetric group enumeration", self.order(), budget)?;
        let mut cur: Vec<u32> = (0..self.degree as u32).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { images: cur.clone() });
        }
        Ok(out)
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// A finite subgroup of `Sym(k)` given by generators, with its elements
/// enumerated once at construction.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub degree: usize,
    pub name: String,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl PermGroup {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        budget: usize,
    ) -> Result<Self> {
        let sym = SymmetricGroup::new(degree);
        let mut elements = enumerate_subgroup(&sym, &generators, budget)?;
        elements.sort();
        let members = elements.iter().cloned().collect();
        Ok(PermGroup {
            degree,
            name: name.into(),
            generators,
            elements,
            members,
        })
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

impl Group for PermGroup {
    type Elem = Permutation;

    fn describe(&self) -> String {
        format!("{} <= Sym({})", self.name, self.degree)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check(&self, a: &Permutation) -> Result<()> {
        if !self.contains(a) {
            return Err(mismatch(self.describe(), format!("{a:?}")));
        }
        Ok(())
    }

    fn op(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

impl FiniteGroup for PermGroup {
    fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    fn elements(&self, budget: u128) -> Result<Vec<Permutation>> {
        check_budget("permutation group enumeration", self.order(), budget)?;
        Ok(self.elements.clone())
    }
}
