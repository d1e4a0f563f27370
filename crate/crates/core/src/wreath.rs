//! Restricted wreath products with cyclic or infinite-cyclic tops and the
//! iterated towers built from them.
//!
//! An element of `B ≀ T` is a pair `(f, k)` with `f` a finitely supported
//! map `T -> B` and `k ∈ T`. Multiplication is
//! `(f, k)(g, l) = (f · k⊳g, k + l)` with `(k⊳g)(x) = g(x - k)`.
//! A tower level `i` nests this `i` times over a base group, so one element
//! type covers all levels.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkers::{check_cznc, Witness, WitnessCertificate};
use crate::error::{mismatch, Error, Result};
use crate::group::{check_budget, order, pow, FgSubgroup, FiniteGroup, Group};
use crate::perm::{Permutation, SymmetricGroup};
use crate::report::{Failure, FailureKind, PropertyReport};

/// Largest group the exhaustive searches will enumerate.
pub const SEARCH_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Top {
    Cyclic(u64),
    Integers,
}

impl Top {
    fn normalize(self, x: i64) -> i64 {
        match self {
            Top::Cyclic(n) => x.rem_euclid(n as i64),
            Top::Integers => x,
        }
    }

    fn in_range(self, x: i64) -> bool {
        match self {
            Top::Cyclic(n) => (0..n as i64).contains(&x),
            Top::Integers => true,
        }
    }
}

impl fmt::Display for Top {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Top::Cyclic(n) => write!(f, "Z/{n}"),
            Top::Integers => f.write_str("Z"),
        }
    }
}

/// Element of a tower level. Level 0 is `Base`; every higher level is
/// `Wreath` with a support sorted by index and free of identity values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum TowerElem<E> {
    Base(E),
    Wreath {
        shift: i64,
        support: Vec<(i64, TowerElem<E>)>,
    },
}

impl<E> TowerElem<E> {
    pub fn shift(&self) -> Option<i64> {
        match self {
            TowerElem::Base(_) => None,
            TowerElem::Wreath { shift, .. } => Some(*shift),
        }
    }

    pub fn support(&self) -> &[(i64, TowerElem<E>)] {
        match self {
            TowerElem::Base(_) => &[],
            TowerElem::Wreath { support, .. } => support,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TowerElem::Base(_) => 0,
            TowerElem::Wreath { support, .. } => {
                1 + support.first().map_or(0, |(_, v)| v.depth())
            }
        }
    }
}

impl<E: fmt::Display> fmt::Display for TowerElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerElem::Base(e) => write!(f, "{e}"),
            TowerElem::Wreath { shift, support } => {
                f.write_str("[")?;
                for (i, (x, v)) in support.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}@{x}")?;
                }
                write!(f, "; s^{shift}]")
            }
        }
    }
}

/// `n_i` for `i >= 1`, as an explicit prefix followed by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    #[serde(default)]
    pub prefix: Vec<u64>,
    pub rule: SequenceRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SequenceRule {
    Constant { n: u64 },
    /// `n_i` is the `i`-th prime.
    IncreasingPrimes,
    /// `n_i` is the product of the first `min(i, |P|)` primes of `P`.
    PrimeProducts { primes: Vec<u64> },
    /// Only the prefix is defined.
    PrefixOnly,
}

impl TowerSpec {
    pub fn constant(n: u64) -> Self {
        TowerSpec {
            prefix: Vec::new(),
            rule: SequenceRule::Constant { n },
        }
    }

    pub fn explicit(prefix: Vec<u64>) -> Self {
        TowerSpec {
            prefix,
            rule: SequenceRule::PrefixOnly,
        }
    }

    pub fn with_prefix(mut self, prefix: Vec<u64>) -> Self {
        self.prefix = prefix;
        self
    }

    /// `n_i`, 1-based.
    pub fn n(&self, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(Error::Precondition("tower indices start at 1".into()));
        }
        let n = match self.prefix.get(i - 1) {
            Some(&n) => n,
            None => match &self.rule {
                SequenceRule::Constant { n } => *n,
                SequenceRule::IncreasingPrimes => nth_prime(i),
                SequenceRule::PrimeProducts { primes } => {
                    let mut sorted = primes.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.is_empty() || sorted.iter().any(|&p| !is_prime(p)) {
                        return Err(Error::Precondition(format!(
                            "prime-products rule needs a nonempty set of primes, got {primes:?}"
                        )));
                    }
                    sorted.iter().take(i).product()
                }
                SequenceRule::PrefixOnly => {
                    return Err(Error::Precondition(format!(
                        "sequence has only {} terms, n_{i} requested",
                        self.prefix.len()
                    )))
                }
            },
        };
        if n < 2 {
            return Err(Error::Precondition(format!("n_{i} = {n} is below 2")));
        }
        Ok(n)
    }

    pub fn tops(&self, depth: usize) -> Result<Vec<Top>> {
        (1..=depth).map(|i| self.n(i).map(Top::Cyclic)).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The `i`-th prime, 1-based.
pub fn nth_prime(i: usize) -> u64 {
    (2..).filter(|&n| is_prime(n)).nth(i - 1).unwrap()
}

/// Level `tops.len()` of the tower `B ≀ T_1 ≀ T_2 ≀ ...` over `base`.
#[derive(Debug, Clone)]
pub struct TowerLevel<G> {
    pub base: G,
    tops: Vec<Top>,
}

impl<G: Group> TowerLevel<G> {
    pub fn new(base: G, tops: Vec<Top>) -> Self {
        TowerLevel { base, tops }
    }

    pub fn from_spec(base: G, spec: &TowerSpec, level: usize) -> Result<Self> {
        Ok(TowerLevel::new(base, spec.tops(level)?))
    }

    /// `base ≀ Z ≀ ... ≀ Z` with `depth` infinite-cyclic tops.
    pub fn integers(base: G, depth: usize) -> Self {
        TowerLevel::new(base, vec![Top::Integers; depth])
    }

    pub fn level(&self) -> usize {
        self.tops.len()
    }

    pub fn tops(&self) -> &[Top] {
        &self.tops
    }

    /// The same tower cut off at a lower level.
    pub fn truncate(&self, level: usize) -> Self
    where
        G: Clone,
    {
        TowerLevel::new(self.base.clone(), self.tops[..level].to_vec())
    }

    fn identity_at(&self, level: usize) -> TowerElem<G::Elem> {
        if level == 0 {
            TowerElem::Base(self.base.identity())
        } else {
            TowerElem::Wreath {
                shift: 0,
                support: Vec::new(),
            }
        }
    }

    fn is_identity_at(&self, level: usize, a: &TowerElem<G::Elem>) -> bool {
        match a {
            TowerElem::Base(e) => level == 0 && self.base.is_identity(e),
            TowerElem::Wreath { shift, support } => level > 0 && *shift == 0 && support.is_empty(),
        }
    }

    fn check_at(&self, level: usize, a: &TowerElem<G::Elem>) -> Result<()> {
        match (level, a) {
            (0, TowerElem::Base(e)) => self.base.check(e),
            (0, _) => Err(mismatch(self.base.describe(), "wreath element")),
            (_, TowerElem::Base(_)) => Err(mismatch(self.describe_at(level), "base element")),
            (_, TowerElem::Wreath { shift, support }) => {
                let top = self.tops[level - 1];
                if !top.in_range(*shift) {
                    return Err(Error::Malformed(format!("shift {shift} outside {top}")));
                }
                let mut prev = None;
                for (x, v) in support {
                    if !top.in_range(*x) || prev.is_some_and(|p| p >= *x) {
                        return Err(Error::Malformed(format!(
                            "support indices must be sorted and lie in {top}"
                        )));
                    }
                    prev = Some(*x);
                    self.check_at(level - 1, v)?;
                    if self.is_identity_at(level - 1, v) {
                        return Err(Error::Malformed(format!("identity value stored at index {x}")));
                    }
                }
                Ok(())
            }
        }
    }

    fn op_at(
        &self,
        level: usize,
        a: &TowerElem<G::Elem>,
        b: &TowerElem<G::Elem>,
    ) -> TowerElem<G::Elem> {
        match (a, b) {
            (TowerElem::Base(x), TowerElem::Base(y)) => TowerElem::Base(self.base.op(x, y)),
            (
                TowerElem::Wreath { shift: k, support: f },
                TowerElem::Wreath { shift: l, support: g },
            ) => {
                let top = self.tops[level - 1];
                let mut merged: BTreeMap<i64, TowerElem<G::Elem>> = f.iter().cloned().collect();
                for (y, gy) in g {
                    let x = top.normalize(y + k);
                    let value = match merged.remove(&x) {
                        Some(fx) => self.op_at(level - 1, &fx, gy),
                        None => gy.clone(),
                    };
                    if !self.is_identity_at(level - 1, &value) {
                        merged.insert(x, value);
                    }
                }
                TowerElem::Wreath {
                    shift: top.normalize(k + l),
                    support: merged.into_iter().collect(),
                }
            }
            _ => panic!("tower elements from different levels"),
        }
    }

    fn inverse_at(&self, level: usize, a: &TowerElem<G::Elem>) -> TowerElem<G::Elem> {
        match a {
            TowerElem::Base(x) => TowerElem::Base(self.base.inverse(x)),
            TowerElem::Wreath { shift, support } => {
                let top = self.tops[level - 1];
                let mut out: Vec<_> = support
                    .iter()
                    .map(|(x, v)| (top.normalize(x - shift), self.inverse_at(level - 1, v)))
                    .collect();
                out.sort_by_key(|(x, _)| *x);
                TowerElem::Wreath {
                    shift: top.normalize(-shift),
                    support: out,
                }
            }
        }
    }

    fn describe_at(&self, level: usize) -> String {
        let mut s = self.base.describe();
        for top in &self.tops[..level] {
            s = format!("({s}) wr {top}");
        }
        s
    }

    pub fn base_elem(&self, e: G::Elem) -> Result<TowerElem<G::Elem>> {
        self.base.check(&e)?;
        Ok(self.embed_from(0, TowerElem::Base(e)))
    }

    /// `x ↦ (x@0, 0)`, applied from `from` up to the top level.
    pub fn embed_from(&self, from: usize, mut x: TowerElem<G::Elem>) -> TowerElem<G::Elem> {
        for level in from + 1..=self.level() {
            x = if self.is_identity_at(level - 1, &x) {
                self.identity_at(level)
            } else {
                TowerElem::Wreath {
                    shift: 0,
                    support: vec![(0, x)],
                }
            };
        }
        x
    }

    /// One embedding step, checked.
    pub fn embed_level(&self, level: usize, x: &TowerElem<G::Elem>) -> Result<TowerElem<G::Elem>> {
        if level >= self.level() {
            return Err(Error::Precondition(format!(
                "level {level} has no successor in a tower of height {}",
                self.level()
            )));
        }
        self.check_at(level, x)?;
        Ok(self.truncate_embed(level, x.clone()))
    }

    fn truncate_embed(&self, level: usize, x: TowerElem<G::Elem>) -> TowerElem<G::Elem> {
        if self.is_identity_at(level, &x) {
            self.identity_at(level + 1)
        } else {
            TowerElem::Wreath {
                shift: 0,
                support: vec![(0, x)],
            }
        }
    }

    /// Inverse of [`TowerLevel::embed_from`]: the level-`to` element whose
    /// embedding is `x`, if any.
    pub fn restrict(&self, x: &TowerElem<G::Elem>, to: usize) -> Option<TowerElem<G::Elem>> {
        let mut cur = x.clone();
        for level in (to + 1..=self.level()).rev() {
            cur = match cur {
                TowerElem::Wreath { shift: 0, support } => match support.as_slice() {
                    [] => self.identity_at(level - 1),
                    [(0, v)] => v.clone(),
                    _ => return None,
                },
                _ => return None,
            };
        }
        Some(cur)
    }

    /// The top generator of level `j`, embedded at the top level.
    pub fn shift_generator(&self, j: usize) -> Result<TowerElem<G::Elem>> {
        if j == 0 || j > self.level() {
            return Err(Error::Precondition(format!("no shift generator at level {j}")));
        }
        let s = TowerElem::Wreath {
            shift: 1,
            support: Vec::new(),
        };
        Ok(self.embed_from(j, s))
    }

    /// Generators of level `j` (base generators and shift generators up to
    /// `j`), embedded at the top level.
    pub fn level_generators(
        &self,
        base_generators: &[G::Elem],
        j: usize,
    ) -> Result<Vec<TowerElem<G::Elem>>> {
        let mut gens = base_generators
            .iter()
            .map(|g| self.base_elem(g.clone()))
            .collect::<Result<Vec<_>>>()?;
        for i in 1..=j {
            gens.push(self.shift_generator(i)?);
        }
        Ok(gens)
    }
}

impl<G: Group> Group for TowerLevel<G> {
    type Elem = TowerElem<G::Elem>;

    fn describe(&self) -> String {
        self.describe_at(self.level())
    }

    fn identity(&self) -> Self::Elem {
        self.identity_at(self.level())
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        self.check_at(self.level(), a)
    }

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.op_at(self.level(), a, b)
    }

    fn inverse(&self, a: &Self::Elem) -> Self::Elem {
        self.inverse_at(self.level(), a)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.is_identity_at(self.level(), a)
    }
}

impl<G: FiniteGroup> TowerLevel<G> {
    fn order_at(&self, level: usize) -> Option<u128> {
        if level == 0 {
            return Some(self.base.order());
        }
        let Top::Cyclic(n) = self.tops[level - 1] else {
            return None;
        };
        let lower = self.order_at(level - 1)?;
        let mut acc = n as u128;
        for _ in 0..n {
            acc = acc.checked_mul(lower)?;
        }
        Some(acc)
    }

    /// Shift outermost and ascending, then coordinate tuples in
    /// lexicographic order of the lower level's enumeration.
    fn elements_at(&self, level: usize, budget: u128) -> Result<Vec<TowerElem<G::Elem>>> {
        if level == 0 {
            return Ok(self.base.elements(budget)?.into_iter().map(TowerElem::Base).collect());
        }
        let Top::Cyclic(n) = self.tops[level - 1] else {
            unreachable!("order check rejects infinite tops")
        };
        let lower = self.elements_at(level - 1, budget)?;
        let total = self.order_at(level).unwrap() as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; n as usize];
        for shift in 0..n as i64 {
            digits.iter_mut().for_each(|d| *d = 0);
            loop {
                let support = digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .map(|(x, &d)| (x as i64, lower[d].clone()))
                    .collect();
                out.push(TowerElem::Wreath { shift, support });
                let Some(pos) = (0..digits.len()).rev().find(|&p| digits[p] + 1 < lower.len()) else {
                    break;
                };
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
            }
        }
        Ok(out)
    }
}

impl<G: FiniteGroup> FiniteGroup for TowerLevel<G> {
    fn order(&self) -> u128 {
        self.order_at(self.level()).unwrap_or(u128::MAX)
    }

    fn elements(&self, budget: u128) -> Result<Vec<Self::Elem>> {
        check_budget("wreath enumeration", self.order(), budget)?;
        self.elements_at(self.level(), budget)
    }
}

impl<G: Group<Elem = Permutation>> TowerLevel<G> {
    /// Imprimitive permutation realization on `base_degree · n_1 ⋯ n_i`
    /// points. At each level the point `(x, y)` is `x·m + y`, where `m` is
    /// the degree of the level below, and `(f, s)` acts as `F ∘ σ_s`:
    /// `σ_s` moves block `x` to block `x + s`, and `F` applies `f(x)` inside
    /// block `x`.
    pub fn imprimitive(&self, base_degree: usize, a: &TowerElem<Permutation>) -> Result<Permutation> {
        self.check(a)?;
        self.imprimitive_at(self.level(), base_degree, a)
    }

    fn imprimitive_at(
        &self,
        level: usize,
        base_degree: usize,
        a: &TowerElem<Permutation>,
    ) -> Result<Permutation> {
        match a {
            TowerElem::Base(p) => Ok(p.clone()),
            TowerElem::Wreath { shift, support } => {
                let Top::Cyclic(n) = self.tops[level - 1] else {
                    return Err(Error::Precondition(
                        "infinite tops have no finite permutation realization".into(),
                    ));
                };
                let n = n as usize;
                let m = self.degree_at(level - 1, base_degree)?;
                let mut blocks = vec![Permutation::identity(m); n];
                for (x, v) in support {
                    blocks[*x as usize] = self.imprimitive_at(level - 1, base_degree, v)?;
                }
                let mut images = vec![0u32; n * m];
                for x in 0..n {
                    let target = (x + *shift as usize) % n;
                    for y in 0..m {
                        images[x * m + y] = (target * m + blocks[target].apply(y)) as u32;
                    }
                }
                Permutation::from_images(images)
            }
        }
    }

    fn degree_at(&self, level: usize, base_degree: usize) -> Result<usize> {
        self.tops[..level].iter().try_fold(base_degree, |m, top| match top {
            Top::Cyclic(n) => Ok(m * *n as usize),
            Top::Integers => Err(Error::Precondition(
                "infinite tops have no finite permutation realization".into(),
            )),
        })
    }

    pub fn imprimitive_degree(&self, base_degree: usize) -> Result<usize> {
        self.degree_at(self.level(), base_degree)
    }
}

/// Output of [`zn_witness`].
pub struct ZnWitness<G: Group> {
    pub group: TowerLevel<G>,
    pub k: u64,
    pub certificate: WitnessCertificate<TowerElem<G::Elem>>,
    pub report: PropertyReport<TowerElem<G::Elem>>,
}

/// For `n_i = k·p`, the element `t = s_i^k` (with `s_i` the shift generator
/// of level `i`) and the verified `Z/p` certificate for
/// `H ≤ Γ_{h_level}` embedded in `Γ_i`.
pub fn zn_witness<G: Group + Clone>(
    base: &G,
    spec: &TowerSpec,
    h_level: usize,
    h: &FgSubgroup<TowerElem<G::Elem>>,
    i: usize,
    p: u64,
) -> Result<ZnWitness<G>> {
    if h_level >= i {
        return Err(Error::Precondition(format!(
            "H must live below level {i}, got level {h_level}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let n = spec.n(i)?;
    if n % p != 0 {
        return Err(Error::Precondition(format!("{p} does not divide n_{i} = {n}")));
    }
    let k = n / p;
    let lower = TowerLevel::from_spec(base.clone(), spec, h_level)?;
    h.check_in(&lower)?;
    let group = TowerLevel::from_spec(base.clone(), spec, i)?;
    let embedded = h.map(&group, h.label.clone(), |x| group.embed_from(h_level, x.clone()))?;
    let s = TowerElem::Wreath {
        shift: 1,
        support: Vec::new(),
    };
    let t = pow(&group.truncate(i), &s, k as i64);
    let certificate = WitnessCertificate::new(embedded, Witness::Cznc { t, n: p });
    let report = certificate.verify(&group)?;
    Ok(ZnWitness {
        group,
        k,
        certificate,
        report,
    })
}

/// Exhaustive search of a finite group for `t` with commuting
/// `Z/p`-conjugates on `H`. Returns the first witness in enumeration order.
pub fn brute_search_zp_witness<G: FiniteGroup>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    p: u64,
) -> Result<Option<G::Elem>> {
    h.check_in(group)?;
    let elements = group.elements(SEARCH_BUDGET)?;
    let found = elements
        .par_iter()
        .find_first(|t| matches!(check_cznc(group, h, t, p), Ok(r) if r.is_success()));
    Ok(found.cloned())
}

/// Confirms that a finite-order `t` is no commuting `Z`-conjugates witness
/// for non-abelian `H`: at `p = ord(t)` the condition reads `[H, H] = 1`.
pub fn torsion_obstruction_check<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    order_bound: u64,
) -> Result<PropertyReport<G::Elem>> {
    h.check_in(group)?;
    group.check(t)?;
    let report = PropertyReport::new("torsion-obstruction", h.label.clone()).witness("t", t.clone());
    let gens = h.generators();
    let abelian = gens
        .iter()
        .all(|a| gens.iter().all(|b| group.op(a, b) == group.op(b, a)));
    if abelian {
        return Ok(report.not_applicable("H is abelian"));
    }
    let Some(ord) = order(group, t, order_bound) else {
        return Err(Error::Precondition(format!(
            "t has no finite order up to {order_bound}"
        )));
    };
    let mut report = report.bound("ord(t)", ord);
    let czc = crate::checkers::check_czc(group, h, t, ord)?;
    match &czc.failure {
        Some(f) => report.record(format!(
            "commuting Z-conjugates condition fails at p = {}",
            f.power.unwrap_or(ord)
        )),
        None => report.fail(
            Failure::new(
                FailureKind::NonCommuting,
                format!("[H, ^(t^p) H] = 1 for every p <= ord(t) = {ord}"),
            )
            .at_power(ord),
        ),
    }
    Ok(report)
}

/// Output of [`sym_zn_witness`].
pub struct SymZnWitness {
    pub group: SymmetricGroup,
    pub certificate: WitnessCertificate<Permutation>,
    pub report: PropertyReport<Permutation>,
}

/// `H ≤ Sym(k)` placed on the first block of `Sym(kn)`, with
/// `t = ∏_j (j, j+k, …, j+(n-1)k)` rotating the `n` blocks.
pub fn sym_zn_witness(k: usize, h: &FgSubgroup<Permutation>, n: u64) -> Result<SymZnWitness> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    h.check_in(&SymmetricGroup::new(k))?;
    let degree = k * n as usize;
    let group = SymmetricGroup::new(degree);
    let images = (0..degree).map(|x| ((x + k) % degree) as u32).collect();
    let t = Permutation::from_images(images)?;
    let embedded = h.map(&group, h.label.clone(), |x| x.extend(degree))?;
    let certificate = WitnessCertificate::new(embedded, Witness::Cznc { t, n });
    let report = certificate.verify(&group)?;
    Ok(SymZnWitness {
        group,
        certificate,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> SymmetricGroup {
        SymmetricGroup::new(3)
    }

    fn p3(s: &str) -> Permutation {
        Permutation::parse(3, s).unwrap()
    }

    fn wr(shift: i64, support: Vec<(i64, Permutation)>) -> TowerElem<Permutation> {
        TowerElem::Wreath {
            shift,
            support: support.into_iter().map(|(x, p)| (x, TowerElem::Base(p))).collect(),
        }
    }

    #[test]
    fn multiplication_convention() {
        let g = TowerLevel::new(s3(), vec![Top::Cyclic(2)]);
        let a = p3("(1 2)");
        let b = p3("(1 2 3)");
        let x = wr(1, vec![(0, a.clone())]);
        let y = wr(1, vec![(0, b.clone())]);
        assert_eq!(g.op(&x, &y), wr(0, vec![(0, a.clone()), (1, b)]));
        let ainv = wr(0, vec![(0, a.inverse())]);
        assert!(g.is_identity(&g.op(&wr(0, vec![(0, a)]), &ainv)));
    }

    #[test]
    fn imprimitive_agrees_on_examples() {
        let g = TowerLevel::new(s3(), vec![Top::Cyclic(2)]);
        let x = wr(1, vec![(0, p3("(1 2)"))]);
        let y = wr(1, vec![(0, p3("(1 2 3)"))]);
        let rx = g.imprimitive(3, &x).unwrap();
        let ry = g.imprimitive(3, &y).unwrap();
        assert_eq!(g.imprimitive(3, &g.op(&x, &y)).unwrap(), rx.compose(&ry));
        let e = g.embed_level(0, &TowerElem::Base(p3("(1 2 3)"))).unwrap();
        assert_eq!(g.imprimitive(3, &e).unwrap(), Permutation::parse(6, "(1 2 3)").unwrap());
    }

    #[test]
    fn enumeration_order_and_size() {
        let g = TowerLevel::new(s3(), vec![Top::Cyclic(3)]);
        assert_eq!(g.order(), 648);
        let els = g.elements(1000).unwrap();
        assert_eq!(els.len(), 648);
        assert!(g.is_identity(&els[0]));
        let distinct: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(distinct.len(), 648);
        els.iter().for_each(|e| g.check(e).unwrap());
        assert!(g.elements(100).is_err());
    }

    #[test]
    fn sequence_rules() {
        let primes = TowerSpec {
            prefix: vec![],
            rule: SequenceRule::IncreasingPrimes,
        };
        assert_eq!((1..=4).map(|i| primes.n(i).unwrap()).collect::<Vec<_>>(), [2, 3, 5, 7]);
        let products = TowerSpec {
            prefix: vec![],
            rule: SequenceRule::PrimeProducts { primes: vec![5, 2] },
        };
        assert_eq!((1..=3).map(|i| products.n(i).unwrap()).collect::<Vec<_>>(), [2, 10, 10]);
        assert!(TowerSpec::explicit(vec![2]).n(2).is_err());
        assert!(TowerSpec::explicit(vec![1]).n(1).is_err());
        assert_eq!(TowerSpec::constant(4).with_prefix(vec![3]).n(1).unwrap(), 3);
    }

    #[test]
    fn zn_witness_examples() {
        let base_gens = s3().standard_generators();
        let spec = TowerSpec::constant(2);
        let base_level = TowerLevel::new(s3(), vec![]);
        let h = FgSubgroup::new(
            &base_level,
            "S3",
            base_gens.iter().cloned().map(TowerElem::Base).collect(),
        )
        .unwrap();
        let w = zn_witness(&s3(), &spec, 0, &h, 1, 2).unwrap();
        assert_eq!(w.k, 1);
        assert!(w.report.is_success());
        let w = zn_witness(&s3(), &TowerSpec::constant(4), 0, &h, 1, 2).unwrap();
        assert_eq!(w.k, 2);
        assert!(w.report.is_success());
        assert!(zn_witness(&s3(), &TowerSpec::constant(4), 0, &h, 1, 3).is_err());
    }

    #[test]
    fn brute_search_examples() {
        let g = TowerLevel::new(s3(), vec![Top::Cyclic(2)]);
        let s3_gens = s3().standard_generators();
        let h = FgSubgroup::new(
            &g,
            "S3",
            s3_gens.into_iter().map(|x| g.base_elem(x).unwrap()).collect(),
        )
        .unwrap();
        let t = brute_search_zp_witness(&g, &h, 2).unwrap();
        assert_eq!(t, Some(g.shift_generator(1).unwrap()));
        let ab = FgSubgroup::new(&g, "A", vec![g.base_elem(p3("(1 2)")).unwrap()]).unwrap();
        assert_eq!(brute_search_zp_witness(&g, &ab, 2).unwrap(), Some(g.identity()));
    }

    #[test]
    fn sym_zn_examples() {
        let h = FgSubgroup::new(&s3(), "S3", vec![p3("(1 2 3)"), p3("(1 2)")]).unwrap();
        let w = sym_zn_witness(3, &h, 3).unwrap();
        let Witness::Cznc { t, .. } = &w.certificate.witness else {
            unreachable!()
        };
        assert_eq!(t.to_string(), "(1 4 7)(2 5 8)(3 6 9)");
        assert!(w.report.is_success());
        let h2 = FgSubgroup::new(&SymmetricGroup::new(2), "H", vec![Permutation::parse(2, "(1 2)").unwrap()])
            .unwrap();
        let w = sym_zn_witness(2, &h2, 2).unwrap();
        assert!(matches!(&w.certificate.witness, Witness::Cznc { t, .. } if t.to_string() == "(1 3)(2 4)"));
        assert!(sym_zn_witness(3, &FgSubgroup::trivial("1"), 2).unwrap().report.is_success());
    }

    #[test]
    fn restrict_inverts_embedding() {
        let g = TowerLevel::from_spec(s3(), &TowerSpec::constant(2), 3).unwrap();
        let x = TowerElem::Base(p3("(1 3)"));
        let e = g.embed_from(0, x.clone());
        assert_eq!(e.depth(), 3);
        assert_eq!(g.restrict(&e, 0), Some(x));
        assert_eq!(g.restrict(&g.shift_generator(1).unwrap(), 0), None);
        assert!(g.restrict(&g.shift_generator(1).unwrap(), 1).is_some());
    }
}
