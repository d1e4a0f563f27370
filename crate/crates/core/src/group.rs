//! The realization-independent group contract.
//!
//! A [`Group`] value is the ambient context: it knows how to multiply and
//! invert its elements and can tell whether a given element belongs to it.
//! Elements are stored in a canonical form per realization, so `==` on
//! elements is group equality.
//!
//! Conjugation is written on the left, `conj(t, g) = t g t^-1`, and the
//! commutator is `[a, b] = a b a^-1 b^-1`.

use std::collections::{HashSet, VecDeque};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Failure, FailureKind, PropertyReport};

pub trait Group: Sync {
    type Elem: Clone + Eq + Hash + Debug + Display + Serialize + Send + Sync;

    /// Human-readable context name, used in error messages and reports.
    fn describe(&self) -> String;

    fn identity(&self) -> Self::Elem;

    /// Rejects elements that do not belong to this context.
    fn check(&self, a: &Self::Elem) -> Result<()>;

    /// Product `a * b`. Both arguments are assumed to have passed [`Group::check`].
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// A group whose elements can be listed exhaustively in a fixed canonical
/// order, identity first.
pub trait FiniteGroup: Group {
    /// Group order, saturating at `u128::MAX`.
    fn order(&self) -> u128;

    /// Every element, in canonical order. Errors when `order() > budget`.
    fn elements(&self, budget: u128) -> Result<Vec<Self::Elem>>;
}

pub(crate) fn check_budget(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed,
            budget,
        });
    }
    Ok(())
}

pub fn mul<G: Group + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<G::Elem> {
    g.check(a)?;
    g.check(b)?;
    Ok(g.op(a, b))
}

pub fn inv<G: Group + ?Sized>(g: &G, a: &G::Elem) -> Result<G::Elem> {
    g.check(a)?;
    Ok(g.inverse(a))
}

pub fn conj<G: Group + ?Sized>(g: &G, t: &G::Elem, x: &G::Elem) -> Result<G::Elem> {
    g.check(t)?;
    g.check(x)?;
    Ok(conj_unchecked(g, t, x))
}

pub fn commutator<G: Group + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<G::Elem> {
    g.check(a)?;
    g.check(b)?;
    Ok(commutator_unchecked(g, a, b))
}

pub(crate) fn conj_unchecked<G: Group + ?Sized>(g: &G, t: &G::Elem, x: &G::Elem) -> G::Elem {
    g.op(&g.op(t, x), &g.inverse(t))
}

pub(crate) fn commutator_unchecked<G: Group + ?Sized>(
    g: &G,
    a: &G::Elem,
    b: &G::Elem,
) -> G::Elem {
    let ab = g.op(a, b);
    let ba = g.op(b, a);
    g.op(&ab, &g.inverse(&ba))
}

pub(crate) fn commute<G: Group + ?Sized>(g: &G, a: &G::Elem, b: &G::Elem) -> bool {
    g.op(a, b) == g.op(b, a)
}

/// `a^k` by repeated squaring; negative exponents invert first.
pub fn pow<G: Group + ?Sized>(g: &G, a: &G::Elem, k: i64) -> G::Elem {
    let mut base = if k < 0 { g.inverse(a) } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = g.identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = g.op(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = g.op(&base, &base);
        }
    }
    acc
}

/// Order of `a`, or `None` if no power up to `bound` is trivial.
pub fn order<G: Group + ?Sized>(g: &G, a: &G::Elem, bound: u64) -> Option<u64> {
    let mut x = a.clone();
    for k in 1..=bound {
        if g.is_identity(&x) {
            return Some(k);
        }
        x = g.op(&x, a);
    }
    None
}

/// A finitely generated subgroup, held by its generator list.
///
/// Construction drops identities and duplicate generators, so an empty
/// generator list denotes the trivial subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgSubgroup<E> {
    pub label: String,
    generators: Vec<E>,
}

impl<E: Clone + Eq> FgSubgroup<E> {
    pub fn new<G>(group: &G, label: impl Into<String>, generators: Vec<E>) -> Result<Self>
    where
        G: Group<Elem = E> + ?Sized,
    {
        let mut kept: Vec<E> = Vec::with_capacity(generators.len());
        for x in generators {
            group.check(&x)?;
            if !group.is_identity(&x) && !kept.contains(&x) {
                kept.push(x);
            }
        }
        Ok(FgSubgroup {
            label: label.into(),
            generators: kept,
        })
    }

    pub fn trivial(label: impl Into<String>) -> Self {
        FgSubgroup {
            label: label.into(),
            generators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn check_in<G: Group<Elem = E> + ?Sized>(&self, group: &G) -> Result<()> {
        self.generators.iter().try_for_each(|x| group.check(x))
    }

    /// `^t H`, generated by the conjugates of the generators.
    pub fn conjugate<G: Group<Elem = E> + ?Sized>(&self, group: &G, t: &E) -> Result<Self> {
        group.check(t)?;
        self.check_in(group)?;
        let gens = self
            .generators
            .iter()
            .map(|x| conj_unchecked(group, t, x))
            .collect();
        FgSubgroup::new(group, format!("^t {}", self.label), gens)
    }

    /// Image under a map applied generator by generator.
    pub fn map<G, F>(&self, group: &G, label: impl Into<String>, f: F) -> Result<FgSubgroup<G::Elem>>
    where
        G: Group + ?Sized,
        F: FnMut(&E) -> G::Elem,
    {
        FgSubgroup::new(group, label, self.generators.iter().map(f).collect())
    }
}

impl<E: Display> Display for FgSubgroup<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = <", self.label)?;
        for (i, x) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(">")
    }
}

/// Tests `[H, K] = 1` on generator pairs. Centralizers are subgroups, so
/// this is equivalent to commutation of the generated subgroups.
pub fn subgroups_commute<G: Group + ?Sized>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    k: &FgSubgroup<G::Elem>,
) -> Result<PropertyReport<G::Elem>> {
    h.check_in(group)?;
    k.check_in(group)?;
    Ok(subgroups_commute_unchecked(group, h, k))
}

pub(crate) fn subgroups_commute_unchecked<G: Group + ?Sized>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    k: &FgSubgroup<G::Elem>,
) -> PropertyReport<G::Elem> {
    let mut report = PropertyReport::new("subgroups-commute", format!("[{}, {}]", h.label, k.label));
    report.record(format!(
        "commutators of {} x {} generator pairs",
        h.generators().len(),
        k.generators().len()
    ));
    for a in h.generators() {
        for b in k.generators() {
            if !commute(group, a, b) {
                report.fail(
                    Failure::new(FailureKind::NonCommuting, format!("[{}, {}] != 1", h.label, k.label))
                        .with_pair(a.clone(), b.clone()),
                );
                return report;
            }
        }
    }
    report
}

/// Every element of `<gens>`, by breadth-first closure. Intended as a
/// brute-force oracle on small finite groups.
pub fn enumerate_subgroup<G: Group + ?Sized>(
    group: &G,
    gens: &[G::Elem],
    budget: usize,
) -> Result<Vec<G::Elem>> {
    gens.iter().try_for_each(|x| group.check(x))?;
    let id = group.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = group.op(&x, s);
            if seen.insert(y.clone()) {
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        what: "subgroup enumeration".into(),
                        needed: out.len() as u128 + 1,
                        budget: budget as u128,
                    });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Element of a direct product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: Display, B: Display> Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Debug, Clone)]
pub struct ProductGroup<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Group, B: Group> ProductGroup<A, B> {
    pub fn new(left: A, right: B) -> Self {
        ProductGroup { left, right }
    }

    pub fn inject_left(&self, a: A::Elem) -> Pair<A::Elem, B::Elem> {
        Pair(a, self.right.identity())
    }

    pub fn inject_right(&self, b: B::Elem) -> Pair<A::Elem, B::Elem> {
        Pair(self.left.identity(), b)
    }
}

impl<A: Group, B: Group> Group for ProductGroup<A, B> {
    type Elem = Pair<A::Elem, B::Elem>;

    fn describe(&self) -> String {
        format!("{} x {}", self.left.describe(), self.right.describe())
    }

    fn identity(&self) -> Self::Elem {
        Pair(self.left.identity(), self.right.identity())
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        self.left.check(&a.0)?;
        self.right.check(&a.1)
    }

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Pair(self.left.op(&a.0, &b.0), self.right.op(&a.1, &b.1))
    }

    fn inverse(&self, a: &Self::Elem) -> Self::Elem {
        Pair(self.left.inverse(&a.0), self.right.inverse(&a.1))
    }
}

impl<A: FiniteGroup, B: FiniteGroup> FiniteGroup for ProductGroup<A, B> {
    fn order(&self) -> u128 {
        self.left.order().saturating_mul(self.right.order())
    }

    fn elements(&self, budget: u128) -> Result<Vec<Self::Elem>> {
        check_budget("product enumeration", self.order(), budget)?;
        let ls = self.left.elements(budget)?;
        let rs = self.right.elements(budget)?;
        Ok(ls
            .iter()
            .flat_map(|a| rs.iter().map(move |b| Pair(a.clone(), b.clone())))
            .collect())
    }
}
