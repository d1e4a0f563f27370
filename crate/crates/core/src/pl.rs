//! Compactly supported piecewise-linear homeomorphisms of the line with
//! rational breakpoints, Thompson's group `F` on `(0, 1)`, and the
//! dissipator tower built on it.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::checkers::MembershipOracle;
use crate::error::{Error, Result};
use crate::group::{commute, pow, FgSubgroup, Group};
use crate::rational::{format_q, is_dyadic, is_power_of_two_q, parse_q, q, qi, Q};
use crate::report::{Failure, FailureKind, PropertyReport};
use crate::wreath::TowerElem;

/// Breakpoints `(x, y)` strictly increasing in both coordinates, the first
/// and last on the diagonal, with no two adjacent segments of equal slope.
/// The empty list is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlHomeo {
    points: Vec<(Q, Q)>,
}

fn slope(a: &(Q, Q), b: &(Q, Q)) -> Q {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PlHomeo {
    pub fn identity() -> Self {
        PlHomeo::default()
    }

    /// Validates and canonicalizes a breakpoint list.
    pub fn from_breakpoints(points: Vec<(Q, Q)>) -> Result<Self> {
        if points.is_empty() {
            return Ok(PlHomeo::identity());
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::Malformed(format!(
                    "breakpoints not strictly increasing at x = {}",
                    format_q(&w[1].0)
                )));
            }
        }
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if first.0 != first.1 || last.0 != last.1 {
            return Err(Error::Malformed(
                "first and last breakpoints must lie on the diagonal".into(),
            ));
        }
        Ok(PlHomeo::canonical(points))
    }

    pub fn from_ints(points: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        PlHomeo::from_breakpoints(
            points
                .iter()
                .map(|&((xn, xd), (yn, yd))| (q(xn, xd), q(yn, yd)))
                .collect(),
        )
    }

    /// Drops breakpoints where the slope does not change, treating the
    /// outside as slope 1.
    fn canonical(points: Vec<(Q, Q)>) -> Self {
        let (lo, hi) = (&points[0].0 - qi(1), &points[points.len() - 1].0 + qi(1));
        let mut stack: Vec<(Q, Q)> = vec![(lo.clone(), lo)];
        for p in points.into_iter().chain([(hi.clone(), hi)]) {
            while stack.len() >= 2
                && slope(&stack[stack.len() - 2], &stack[stack.len() - 1])
                    == slope(&stack[stack.len() - 1], &p)
            {
                stack.pop();
            }
            stack.push(p);
        }
        stack.pop();
        stack.remove(0);
        PlHomeo { points: stack }
    }

    /// Re-checks the canonical-form invariants.
    pub fn validate(&self) -> Result<()> {
        let again = PlHomeo::from_breakpoints(self.points.clone())?;
        if again != *self {
            return Err(Error::Malformed("breakpoint list is not canonical".into()));
        }
        Ok(())
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty()
    }

    fn eval_by(points: &[(Q, Q)], x: &Q, fwd: bool) -> Q {
        let key = |p: &(Q, Q)| if fwd { p.0.clone() } else { p.1.clone() };
        let val = |p: &(Q, Q)| if fwd { p.1.clone() } else { p.0.clone() };
        let (Some(first), Some(last)) = (points.first(), points.last()) else {
            return x.clone();
        };
        if *x <= key(first) || *x >= key(last) {
            return x.clone();
        }
        let j = points.partition_point(|p| key(p) <= *x);
        let (a, b) = (&points[j - 1], &points[j]);
        let (ka, kb, va, vb) = (key(a), key(b), val(a), val(b));
        &va + (x - &ka) * (vb - &va) / (kb - ka)
    }

    pub fn eval(&self, x: &Q) -> Q {
        PlHomeo::eval_by(&self.points, x, true)
    }

    pub fn eval_inverse(&self, y: &Q) -> Q {
        PlHomeo::eval_by(&self.points, y, false)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PlHomeo) -> PlHomeo {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        let xs: BTreeSet<Q> = other
            .points
            .iter()
            .map(|p| p.0.clone())
            .chain(self.points.iter().map(|p| other.eval_inverse(&p.0)))
            .collect();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&other.eval(&x));
                (x, y)
            })
            .collect();
        PlHomeo::canonical(points)
    }

    pub fn inverse(&self) -> PlHomeo {
        PlHomeo {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// Slopes of the segments between consecutive breakpoints.
    pub fn slopes(&self) -> Vec<Q> {
        self.points.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    /// `{x : g(x) ≠ x}`.
    pub fn support(&self) -> IntervalSet {
        let mut pieces: Vec<(Q, Q)> = Vec::new();
        let disp: Vec<Q> = self.points.iter().map(|(x, y)| y - x).collect();
        for j in 0..self.points.len().saturating_sub(1) {
            let (xa, xb) = (&self.points[j].0, &self.points[j + 1].0);
            let (da, db) = (&disp[j], &disp[j + 1]);
            if da.is_zero() && db.is_zero() {
                continue;
            }
            if da.is_positive() && db.is_negative() || da.is_negative() && db.is_positive() {
                let c = xa + da * (xb - xa) / (da - db);
                pieces.push((xa.clone(), c.clone()));
                pieces.push((c, xb.clone()));
            } else {
                pieces.push((xa.clone(), xb.clone()));
            }
        }
        let mut merged: Vec<(Q, Q)> = Vec::new();
        for (l, r) in pieces {
            match merged.last_mut() {
                Some(last) if last.1 == l && self.eval(&l) != l => last.1 = r,
                _ => merged.push((l, r)),
            }
        }
        IntervalSet { intervals: merged }
    }

    /// Conjugate by the increasing affine map `from -> to`.
    pub fn affine_copy(&self, from: (&Q, &Q), to: (&Q, &Q)) -> Result<PlHomeo> {
        if from.0 >= from.1 || to.0 >= to.1 {
            return Err(Error::Precondition("intervals must be nonempty".into()));
        }
        let domain = IntervalSet::single(from.0.clone(), from.1.clone())?;
        if !self.support().is_subset_of(&domain) {
            return Err(Error::Precondition(format!(
                "support {} not contained in {domain}",
                self.support()
            )));
        }
        let scale = (to.1 - to.0) / (from.1 - from.0);
        let phi = |x: &Q| to.0 + (x - from.0) * &scale;
        Ok(PlHomeo {
            points: self.points.iter().map(|(x, y)| (phi(x), phi(y))).collect(),
        })
    }

    /// True when all breakpoints are dyadic and all slopes powers of 2.
    pub fn is_dyadic_pl(&self) -> bool {
        self.points.iter().all(|(x, y)| is_dyadic(x) && is_dyadic(y))
            && self.slopes().iter().all(is_power_of_two_q)
    }
}

impl fmt::Display for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pl[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PlHomeo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<[String; 2]> = self
            .points
            .iter()
            .map(|(x, y)| [format_q(x), format_q(y)])
            .collect();
        pts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlHomeo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let points = raw
            .iter()
            .map(|[x, y]| Ok((parse_q(x)?, parse_q(y)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PlHomeo::from_breakpoints(points).map_err(serde::de::Error::custom)
    }
}

/// Sorted, pairwise disjoint, nonempty open intervals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<(Q, Q)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn single(l: Q, r: Q) -> Result<Self> {
        IntervalSet::new(vec![(l, r)])
    }

    pub fn new(intervals: Vec<(Q, Q)>) -> Result<Self> {
        for (l, r) in &intervals {
            if l >= r {
                return Err(Error::Malformed(format!(
                    "empty interval ({}, {})",
                    format_q(l),
                    format_q(r)
                )));
            }
        }
        for w in intervals.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::Malformed("intervals must be sorted and disjoint".into()));
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn intervals(&self) -> &[(Q, Q)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.intervals.iter().any(|(l, r)| l < x && x < r)
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        self.intervals.iter().any(|(a, b)| {
            other
                .intervals
                .iter()
                .any(|(c, d)| std::cmp::max(a, c) < std::cmp::min(b, d))
        })
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intervals
            .iter()
            .all(|(a, b)| other.intervals.iter().any(|(c, d)| c <= a && b <= d))
    }

    /// `g(X)`; increasing homeomorphisms keep the intervals sorted.
    pub fn image(&self, g: &PlHomeo) -> IntervalSet {
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .map(|(l, r)| (g.eval(l), g.eval(r)))
                .collect(),
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, r)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({l}, {r})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[String; 2]> = self
            .intervals
            .iter()
            .map(|(l, r)| [format_q(l), format_q(r)])
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let intervals = raw
            .iter()
            .map(|[l, r]| Ok((parse_q(l)?, parse_q(r)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        IntervalSet::new(intervals).map_err(serde::de::Error::custom)
    }
}

/// The group of all compactly supported PL homeomorphisms of the line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlGroup;

impl Group for PlGroup {
    type Elem = PlHomeo;

    fn describe(&self) -> String {
        "PL_c(R)".into()
    }

    fn identity(&self) -> PlHomeo {
        PlHomeo::identity()
    }

    fn check(&self, a: &PlHomeo) -> Result<()> {
        a.validate()
    }

    fn op(&self, a: &PlHomeo, b: &PlHomeo) -> PlHomeo {
        a.compose(b)
    }

    fn inverse(&self, a: &PlHomeo) -> PlHomeo {
        a.inverse()
    }

    fn is_identity(&self, a: &PlHomeo) -> bool {
        a.is_identity()
    }
}

/// `x0` and `x1`, generating the standard copy of `F` on `(0, 1)`.
pub fn thompson_generators() -> (PlHomeo, PlHomeo) {
    let x0 = PlHomeo::from_ints(&[((0, 1), (0, 1)), ((1, 2), (1, 4)), ((3, 4), (1, 2)), ((1, 1), (1, 1))])
        .unwrap();
    let x1 = PlHomeo::from_ints(&[((1, 2), (1, 2)), ((3, 4), (5, 8)), ((7, 8), (3, 4)), ((1, 1), (1, 1))])
        .unwrap();
    (x0, x1)
}

/// `h = x0⁻¹` squeezed into `(0, 1/2)`, times `x1`: it pushes `(0, 1/2)`
/// right and `(1/2, 1)` left, so `1/2` is its only fixed point in `(0, 1)`.
pub fn unique_fixed_point_element() -> PlHomeo {
    let (left, right) = fixed_point_bumps();
    left.compose(&right)
}

/// The two commuting factors of [`unique_fixed_point_element`].
pub fn fixed_point_bumps() -> (PlHomeo, PlHomeo) {
    let (x0, x1) = thompson_generators();
    let left = x0
        .inverse()
        .affine_copy((&qi(0), &qi(1)), (&qi(0), &q(1, 2)))
        .expect("x0 is supported in (0, 1)");
    (left, x1)
}

/// `t^p(X) ∩ X = ∅` for `1 <= p <= p_max`, by exact interval images.
pub fn displaces(t: &PlHomeo, x: &IntervalSet, p_max: u64) -> Result<PropertyReport<PlHomeo>> {
    if p_max < 1 {
        return Err(Error::Precondition("p_max must be at least 1".into()));
    }
    let mut report = PropertyReport::new("displaces", x.to_string())
        .witness("t", t.clone())
        .bound("p_max", p_max);
    let mut image = x.clone();
    for p in 1..=p_max {
        image = image.image(t);
        if image.intersects(x) {
            report.fail(
                Failure::new(FailureKind::NotDisplaced, format!("t^{p}(X) meets X")).at_power(p),
            );
            return Ok(report);
        }
    }
    report.record(format!("t^p(X) ∩ X = ∅ for 1 <= p <= {p_max}"));
    Ok(report)
}

/// A PL element with connected support `(l - 1, b)` that moves every point
/// of its support to the right and carries `(l, r)` off itself; the first
/// 50 images of `(l, r)` are translates.
pub fn dissipator_for(l: &Q, r: &Q) -> PlHomeo {
    let c = r - l + qi(1);
    let m = r + &c * qi(50);
    let b = &m + &c * qi(2);
    let start = l - qi(1);
    PlHomeo::from_breakpoints(vec![
        (start.clone(), start),
        (l.clone(), l + &c),
        (m.clone(), &m + &c),
        (b.clone(), b),
    ])
    .expect("dissipator breakpoints are increasing")
}

pub const MAX_TOWER_DEPTH: usize = 5;

/// The restricted tower `Γ_1 < Γ_2 < ...` with `Γ_1` the `F`-copy on
/// `I_1 = (0, 1)` and `Γ_{i+1} = <Γ_i, t_{i+1}>`.
#[derive(Debug, Clone)]
pub struct PlTower {
    /// `x0, x1`.
    pub base_generators: Vec<PlHomeo>,
    /// `t_2, …, t_depth`.
    pub dissipators: Vec<PlHomeo>,
    /// `I_1, …, I_depth`.
    pub intervals: Vec<(Q, Q)>,
}

impl PlTower {
    pub fn new(depth: usize) -> Result<Self> {
        if depth == 0 || depth > MAX_TOWER_DEPTH {
            return Err(Error::BudgetExceeded {
                what: "PL tower depth".into(),
                needed: depth as u128,
                budget: MAX_TOWER_DEPTH as u128,
            });
        }
        let (x0, x1) = thompson_generators();
        let mut intervals = vec![(qi(0), qi(1))];
        let mut dissipators = Vec::new();
        for _ in 1..depth {
            let (l, r) = intervals.last().unwrap().clone();
            let t = dissipator_for(&l, &r);
            let support = t.support();
            intervals.push(support.intervals()[0].clone());
            dissipators.push(t);
        }
        Ok(PlTower {
            base_generators: vec![x0, x1],
            dissipators,
            intervals,
        })
    }

    pub fn depth(&self) -> usize {
        self.intervals.len()
    }

    /// Generators of `Γ_i`, 1-based.
    pub fn generators(&self, i: usize) -> Vec<PlHomeo> {
        let mut gens = self.base_generators.clone();
        gens.extend(self.dissipators[..i - 1].iter().cloned());
        gens
    }

    pub fn subgroup(&self, i: usize) -> FgSubgroup<PlHomeo> {
        FgSubgroup::new(&PlGroup, format!("Gamma_{i}"), self.generators(i)).expect("valid PL maps")
    }

    /// `t_{i+1}`, for `1 <= i < depth`.
    pub fn dissipator(&self, i: usize) -> &PlHomeo {
        &self.dissipators[i - 1]
    }

    pub fn interval(&self, i: usize) -> IntervalSet {
        let (l, r) = self.intervals[i - 1].clone();
        IntervalSet::single(l, r).expect("tower intervals are nonempty")
    }

    /// The map `Γ_1 ≀ Z ≀ … ≀ Z -> Γ_depth` sending `(f, k)` at level `j`
    /// to `∏_x t^x f(x) t^-x · t^k` with `t = t_{j+1}`. Base elements must
    /// already be PL maps in `Γ_1`.
    pub fn realize(&self, x: &TowerElem<PlHomeo>) -> Result<PlHomeo> {
        self.realize_at(self.depth() - 1, x)
    }

    fn realize_at(&self, level: usize, x: &TowerElem<PlHomeo>) -> Result<PlHomeo> {
        match x {
            TowerElem::Base(g) => Ok(g.clone()),
            TowerElem::Wreath { shift, support } => {
                if level == 0 {
                    return Err(Error::Precondition("element deeper than the tower".into()));
                }
                let t = self.dissipator(level);
                let mut acc = PlHomeo::identity();
                for (i, v) in support {
                    let inner = self.realize_at(level - 1, v)?;
                    let tx = pow(&PlGroup, t, *i);
                    acc = acc.compose(&tx.compose(&inner).compose(&tx.inverse()));
                }
                Ok(acc.compose(&pow(&PlGroup, t, *shift)))
            }
        }
    }
}

/// Either `g(I) ∩ I = ∅` or `g(I) = I`.
pub fn satisfies_dichotomy(g: &PlHomeo, interval: &IntervalSet) -> bool {
    let image = interval.image(g);
    image == *interval || !image.intersects(interval)
}

/// Membership in the standard copy of `F` on `(0, 1)`: dyadic breakpoints,
/// power-of-2 slopes, support inside `(0, 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FCopyOracle;

impl MembershipOracle<PlHomeo> for FCopyOracle {
    fn name(&self) -> String {
        "F-copy criteria on (0, 1)".into()
    }

    fn contains(&self, x: &PlHomeo) -> bool {
        let unit = IntervalSet::single(qi(0), qi(1)).unwrap();
        x.is_dyadic_pl() && x.support().is_subset_of(&unit)
    }
}

/// `count` words of length `1..=max_len` in the generators and their
/// inverses, drawn from a seeded ChaCha stream.
pub fn sample_words(gens: &[PlHomeo], count: usize, max_len: usize, seed: u64) -> Vec<PlHomeo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<PlHomeo> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).fold(PlHomeo::identity(), |acc, _| {
                acc.compose(&letters[rng.gen_range(0..letters.len())])
            })
        })
        .collect()
}

/// Elements commuting with [`unique_fixed_point_element`]: products
/// `left^a right^b` of its two bumps, times seeded words in an `F`-copy on
/// `(2, 3)`, kept only after an exact commutation check.
pub fn centralizing_samples(count: usize, seed: u64) -> Vec<PlHomeo> {
    let h = unique_fixed_point_element();
    let (left, right) = fixed_point_bumps();
    let (x0, x1) = thompson_generators();
    let far: Vec<PlHomeo> = [x0, x1]
        .iter()
        .map(|g| g.affine_copy((&qi(0), &qi(1)), (&qi(2), &qi(3))).unwrap())
        .collect();
    let far_words = sample_words(&far, count, 6, seed);
    let mut out = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    let exponents = (-3i64..=3).flat_map(|a| (-3i64..=3).map(move |b| (a, b)));
    for (k, (a, b)) in exponents.cycle().enumerate() {
        if out.len() == count || k > 100 * count {
            break;
        }
        let core = pow(&PlGroup, &left, a).compose(&pow(&PlGroup, &right, b));
        let u = core.compose(&far_words[k % far_words.len().max(1)]);
        if !u.is_identity() && commute(&PlGroup, &u, &h) && seen.insert(u.clone()) {
            out.push(u);
        }
    }
    out
}

/// Orbit of `x` under words of length `<= max_len` in `gens` and inverses.
pub fn orbit(x: &Q, gens: &[PlHomeo], max_len: usize) -> BTreeSet<Q> {
    let letters: Vec<PlHomeo> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([(x.clone(), 0usize)]);
    while let Some((y, d)) = queue.pop_front() {
        if d == max_len {
            continue;
        }
        for g in &letters {
            let z = g.eval(&y);
            if seen.insert(z.clone()) {
                queue.push_back((z, d + 1));
            }
        }
    }
    seen
}

/// True when every closed cell `[k ε, (k+1) ε]` of `[0, 1]` holds a point.
pub fn is_dense(points: &BTreeSet<Q>, cells: u64) -> bool {
    (0..cells).all(|k| {
        let lo = q(k as i64, cells as i64);
        let hi = q(k as i64 + 1, cells as i64);
        points.range(lo..=hi).next().is_some()
    })
}

/// Whether `x` lies in `[0, 1]`; a helper for orbit filtering.
pub fn in_unit(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}
