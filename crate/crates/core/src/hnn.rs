//! Binate HNN extensions `b(Γ)` and mitosis groups `m(Γ)` with base `Γ × Γ`,
//! as rewriting systems over alternating words.
//!
//! Relations: `d (1, g) d⁻¹ = (g, g)` and, in `m(Γ)` only,
//! `s (g, 1) s⁻¹ = (1, g)`. For each letter `σ` there is a subgroup `L(σ)`
//! and an isomorphism `ψ_σ` with `a σ = σ ψ_σ(a)` for `a ∈ L(σ)`:
//!
//! | σ    | L(σ) | ψ_σ              |
//! |------|------|------------------|
//! | d    | Δ    | (g, g) ↦ (1, g)  |
//! | d⁻¹  | Γ₊   | (1, g) ↦ (g, g)  |
//! | s    | Γ₊   | (1, g) ↦ (g, 1)  |
//! | s⁻¹  | Γ₋   | (g, 1) ↦ (1, g)  |
//!
//! Elements are kept in normal form `g_0 σ_1 g_1 … σ_m g_m`: no pinch, and
//! every `g_j` with `j < m` is the fixed representative of its left coset
//! of `L(σ_{j+1})`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::checkers::{check_binate, check_mitotic, GeneratorMap};
use crate::error::{mismatch, Error, Result};
use crate::group::{check_budget, conj_unchecked, FgSubgroup, FiniteGroup, Group, Pair, ProductGroup};
use crate::report::{Failure, FailureKind, PropertyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    D,
    DInv,
    S,
    SInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::D => Letter::DInv,
            Letter::DInv => Letter::D,
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::D => "d",
            Letter::DInv => "d^-1",
            Letter::S => "s",
            Letter::SInv => "s^-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HnnKind {
    /// `b(Γ)`, stable letter `d`.
    Binate,
    /// `m(Γ)`, stable letters `d` and `s`.
    Mitosis,
}

/// Alternating word `b_0 σ_1 b_1 … σ_m b_m`, so `bases.len() == letters.len() + 1`
/// in a well-formed word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrittonWord<E> {
    pub bases: Vec<Pair<E, E>>,
    pub letters: Vec<Letter>,
}

impl<E> BrittonWord<E> {
    pub fn stable_letters(&self) -> usize {
        self.letters.len()
    }
}

impl<E: fmt::Display> fmt::Display for BrittonWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

impl<E: fmt::Display> BrittonWord<E> {
    /// Bases and letters in order; every base is written, including `(1, 1)`.
    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(2 * self.bases.len());
        for (i, b) in self.bases.iter().enumerate() {
            out.push(b.to_string());
            if let Some(l) = self.letters.get(i) {
                out.push(l.to_string());
            }
        }
        out
    }
}

impl<E: fmt::Display> Serialize for BrittonWord<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tokens().serialize(s)
    }
}

#[derive(Debug, Clone)]
pub struct HnnGroup<G> {
    pub gamma: G,
    pub kind: HnnKind,
    base: ProductGroup<G, G>,
}

pub type Elem<G> = BrittonWord<<G as Group>::Elem>;
type BasePair<G> = Pair<<G as Group>::Elem, <G as Group>::Elem>;

impl<G: Group + Clone> HnnGroup<G> {
    pub fn new(gamma: G, kind: HnnKind) -> Self {
        HnnGroup {
            base: ProductGroup::new(gamma.clone(), gamma.clone()),
            gamma,
            kind,
        }
    }

    pub fn binate(gamma: G) -> Self {
        HnnGroup::new(gamma, HnnKind::Binate)
    }

    pub fn mitosis(gamma: G) -> Self {
        HnnGroup::new(gamma, HnnKind::Mitosis)
    }
}

impl<G: Group> HnnGroup<G> {
    pub fn base_group(&self) -> &ProductGroup<G, G> {
        &self.base
    }

    pub fn letters(&self) -> &'static [Letter] {
        match self.kind {
            HnnKind::Binate => &[Letter::D, Letter::DInv],
            HnnKind::Mitosis => &[Letter::D, Letter::DInv, Letter::S, Letter::SInv],
        }
    }

    fn one(&self) -> G::Elem {
        self.gamma.identity()
    }

    fn base_id(&self) -> BasePair<G> {
        self.base.identity()
    }

    /// `a ∈ L(σ)`.
    pub fn in_associated(&self, sigma: Letter, a: &BasePair<G>) -> bool {
        match sigma {
            Letter::D => a.0 == a.1,
            Letter::DInv | Letter::S => self.gamma.is_identity(&a.0),
            Letter::SInv => self.gamma.is_identity(&a.1),
        }
    }

    /// `ψ_σ(a)` for `a ∈ L(σ)`.
    fn psi(&self, sigma: Letter, a: &BasePair<G>) -> BasePair<G> {
        match sigma {
            Letter::D => Pair(self.one(), a.1.clone()),
            Letter::DInv => Pair(a.1.clone(), a.1.clone()),
            Letter::S => Pair(a.1.clone(), self.one()),
            Letter::SInv => Pair(self.one(), a.0.clone()),
        }
    }

    /// `b = r · a` with `r` the coset representative and `a ∈ L(σ)`.
    fn split(&self, sigma: Letter, b: &BasePair<G>) -> (BasePair<G>, BasePair<G>) {
        let g = &self.gamma;
        let Pair(x, y) = b;
        match sigma {
            Letter::D => (
                Pair(g.op(x, &g.inverse(y)), self.one()),
                Pair(y.clone(), y.clone()),
            ),
            Letter::DInv | Letter::S => (Pair(x.clone(), self.one()), Pair(self.one(), y.clone())),
            Letter::SInv => (Pair(self.one(), y.clone()), Pair(x.clone(), self.one())),
        }
    }

    fn check_shape(&self, w: &Elem<G>) -> Result<()> {
        if w.bases.len() != w.letters.len() + 1 {
            return Err(Error::Malformed(format!(
                "{} bases for {} stable letters",
                w.bases.len(),
                w.letters.len()
            )));
        }
        if self.kind == HnnKind::Binate {
            if let Some(l) = w.letters.iter().find(|l| matches!(l, Letter::S | Letter::SInv)) {
                return Err(Error::Malformed(format!("letter {l} does not exist in b(Γ)")));
            }
        }
        w.bases.iter().try_for_each(|b| self.base.check(b))
    }

    pub fn base_word(&self, b: BasePair<G>) -> Elem<G> {
        BrittonWord {
            bases: vec![b],
            letters: Vec::new(),
        }
    }

    pub fn letter(&self, sigma: Letter) -> Elem<G> {
        BrittonWord {
            bases: vec![self.base_id(), self.base_id()],
            letters: vec![sigma],
        }
    }

    /// `(g, 1)`, the embedding of `Γ` as `Γ₋`.
    pub fn minus(&self, g: G::Elem) -> Elem<G> {
        self.base_word(Pair(g, self.one()))
    }

    /// `(1, g)`, the embedding of `Γ` as `Γ₊`.
    pub fn plus(&self, g: G::Elem) -> Elem<G> {
        self.base_word(Pair(self.one(), g))
    }

    pub fn diagonal(&self, g: G::Elem) -> Elem<G> {
        self.base_word(Pair(g.clone(), g))
    }

    /// Removes every pinch `σ b σ⁻¹` with `b ∈ L(σ⁻¹)`, scanning left to
    /// right with a stack. The result is equal in the group, has no more
    /// stable letters, and is not coset-normalized.
    pub fn britton_reduce(&self, w: &Elem<G>) -> Result<Elem<G>> {
        self.check_shape(w)?;
        Ok(self.reduce_unchecked(w))
    }

    fn reduce_unchecked(&self, w: &Elem<G>) -> Elem<G> {
        let mut out = self.base_word(w.bases[0].clone());
        for (sigma, b) in w.letters.iter().zip(&w.bases[1..]) {
            self.push_letter(&mut out, *sigma);
            self.push_base(&mut out, b);
        }
        out
    }

    fn push_base(&self, w: &mut Elem<G>, b: &BasePair<G>) {
        let top = w.bases.last_mut().unwrap();
        *top = self.base.op(top, b);
    }

    fn push_letter(&self, w: &mut Elem<G>, sigma: Letter) {
        let top = w.bases.last().unwrap();
        if w.letters.last() == Some(&sigma.inverse()) && self.in_associated(sigma, top) {
            // τ b τ⁻¹ with b ∈ L(τ⁻¹) collapses to ψ_{τ⁻¹}(b)
            let b = w.bases.pop().unwrap();
            w.letters.pop();
            let image = self.psi(sigma, &b);
            self.push_base(w, &image);
        } else {
            w.letters.push(sigma);
            w.bases.push(self.base_id());
        }
    }

    /// Rewrites a pinch-free word so each `g_j`, `j < m`, is a coset
    /// representative, pushing the `L(σ)` part across the letter.
    fn normalize_cosets(&self, mut w: Elem<G>) -> Elem<G> {
        for j in 0..w.letters.len() {
            let sigma = w.letters[j];
            let (r, a) = self.split(sigma, &w.bases[j]);
            let moved = self.psi(sigma, &a);
            w.bases[j] = r;
            w.bases[j + 1] = self.base.op(&moved, &w.bases[j + 1]);
        }
        w
    }

    pub fn normal_form(&self, w: &Elem<G>) -> Result<Elem<G>> {
        self.check_shape(w)?;
        Ok(self.normalize_cosets(self.reduce_unchecked(w)))
    }

    /// True iff `w` represents the identity.
    pub fn represents_identity(&self, w: &Elem<G>) -> Result<bool> {
        let r = self.britton_reduce(w)?;
        Ok(r.letters.is_empty() && self.base.is_identity(&r.bases[0]))
    }

    /// Applies pinches one at a time at randomly chosen sites until none is
    /// left. Used as an independent reduction order.
    pub fn reduce_random_order<R: Rng>(&self, w: &Elem<G>, rng: &mut R) -> Result<Elem<G>> {
        self.check_shape(w)?;
        let mut cur = w.clone();
        loop {
            let sites: Vec<usize> = (0..cur.letters.len().saturating_sub(1))
                .filter(|&j| {
                    cur.letters[j + 1] == cur.letters[j].inverse()
                        && self.in_associated(cur.letters[j + 1], &cur.bases[j + 1])
                })
                .collect();
            let Some(&j) = sites.choose(rng) else {
                return Ok(cur);
            };
            let sigma = cur.letters[j + 1];
            let image = self.psi(sigma, &cur.bases[j + 1]);
            let merged = self.base.op(&self.base.op(&cur.bases[j], &image), &cur.bases[j + 2]);
            cur.bases.splice(j..j + 3, [merged]);
            cur.letters.drain(j..j + 2);
        }
    }

    /// Concatenates raw words without reducing.
    pub fn concat(&self, a: &Elem<G>, b: &Elem<G>) -> Elem<G> {
        let mut bases = a.bases.clone();
        let last = bases.pop().unwrap();
        bases.push(self.base.op(&last, &b.bases[0]));
        bases.extend(b.bases[1..].iter().cloned());
        let mut letters = a.letters.clone();
        letters.extend(b.letters.iter().copied());
        BrittonWord { bases, letters }
    }

    /// The base vertex coset of `w`: its normal form with the last base dropped.
    pub fn vertex_of(&self, w: &Elem<G>) -> Vertex<G::Elem> {
        let mut nf = self.normalize_cosets(self.reduce_unchecked(w));
        *nf.bases.last_mut().unwrap() = self.base_id();
        Vertex { word: nf }
    }

    /// `g · v = v`, decided by `v⁻¹ g v ∈ Γ × Γ`.
    pub fn fixes(&self, g: &Elem<G>, v: &Vertex<G::Elem>) -> bool {
        let w = &v.word;
        let x = self.op(&self.op(&self.inverse(w), g), w);
        x.letters.is_empty()
    }

    pub fn act(&self, g: &Elem<G>, v: &Vertex<G::Elem>) -> Vertex<G::Elem> {
        self.vertex_of(&self.op(g, &v.word))
    }
}

impl<G: Group> Group for HnnGroup<G> {
    type Elem = BrittonWord<G::Elem>;

    fn describe(&self) -> String {
        match self.kind {
            HnnKind::Binate => format!("b({})", self.gamma.describe()),
            HnnKind::Mitosis => format!("m({})", self.gamma.describe()),
        }
    }

    fn identity(&self) -> Self::Elem {
        self.base_word(self.base_id())
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        self.check_shape(a)
            .map_err(|e| mismatch(self.describe(), e))?;
        if self.normalize_cosets(self.reduce_unchecked(a)) != *a {
            return Err(Error::Malformed(format!("{a} is not in normal form")));
        }
        Ok(())
    }

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        self.push_base(&mut out, &b.bases[0]);
        for (sigma, x) in b.letters.iter().zip(&b.bases[1..]) {
            self.push_letter(&mut out, *sigma);
            self.push_base(&mut out, x);
        }
        self.normalize_cosets(out)
    }

    fn inverse(&self, a: &Self::Elem) -> Self::Elem {
        let raw = BrittonWord {
            bases: a.bases.iter().rev().map(|b| self.base.inverse(b)).collect(),
            letters: a.letters.iter().rev().map(|l| l.inverse()).collect(),
        };
        self.normalize_cosets(self.reduce_unchecked(&raw))
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        a.letters.is_empty() && self.base.is_identity(&a.bases[0])
    }
}

/// A vertex of the Bass–Serre tree: the coset `w (Γ × Γ)`, held as the
/// normal form of `w` with trivial last base. Its distance from the base
/// vertex is the number of stable letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex<E> {
    pub word: BrittonWord<E>,
}

impl<E> Vertex<E> {
    pub fn distance(&self) -> usize {
        self.word.letters.len()
    }
}

impl<E: fmt::Display> fmt::Display for Vertex<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Γ²", self.word)
    }
}

impl<E: fmt::Display> Serialize for Vertex<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

pub const MAX_RADIUS: usize = 4;
/// Ceiling on enumerated words in the bounded searches.
pub const WORD_BUDGET: u128 = 10_000_000;

impl<G: FiniteGroup + Clone> HnnGroup<G> {
    /// Coset representatives of `L(σ)` in `Γ × Γ`, identity first.
    pub fn transversal(&self, sigma: Letter) -> Result<Vec<BasePair<G>>> {
        let els = self.gamma.elements(WORD_BUDGET)?;
        Ok(els
            .into_iter()
            .map(|x| match sigma {
                Letter::D | Letter::DInv | Letter::S => Pair(x, self.one()),
                Letter::SInv => Pair(self.one(), x),
            })
            .collect())
    }

    /// Neighbours of `v` one step further from the base vertex, ordered by
    /// letter then representative.
    pub fn children(&self, v: &Vertex<G::Elem>) -> Result<Vec<Vertex<G::Elem>>> {
        let mut out = Vec::new();
        let back = v.word.letters.last().map(|l| l.inverse());
        for &sigma in self.letters() {
            for r in self.transversal(sigma)? {
                if Some(sigma) == back && self.base.is_identity(&r) {
                    continue;
                }
                let mut word = v.word.clone();
                *word.bases.last_mut().unwrap() = r;
                word.letters.push(sigma);
                word.bases.push(self.base_id());
                out.push(Vertex { word });
            }
        }
        Ok(out)
    }

    /// All vertices within `radius`, breadth first, with parent indices.
    pub fn ball(&self, radius: usize) -> Result<Vec<(Vertex<G::Elem>, Option<usize>)>> {
        if radius > MAX_RADIUS {
            return Err(Error::BudgetExceeded {
                what: "Bass-Serre radius".into(),
                needed: radius as u128,
                budget: MAX_RADIUS as u128,
            });
        }
        let base = Vertex {
            word: self.identity(),
        };
        let mut out = vec![(base, None)];
        let mut frontier = VecDeque::from([0usize]);
        while let Some(i) = frontier.pop_front() {
            if out[i].0.distance() == radius {
                continue;
            }
            for c in self.children(&out[i].0)? {
                out.push((c, Some(i)));
                frontier.push_back(out.len() - 1);
            }
        }
        Ok(out)
    }

    pub fn bass_serre_fixed_vertices(
        &self,
        g: &Elem<G>,
        radius: usize,
    ) -> Result<Vec<Vertex<G::Elem>>> {
        self.check(g)?;
        let ball = self.ball(radius)?;
        Ok(ball
            .into_par_iter()
            .filter(|(v, _)| self.fixes(g, v))
            .map(|(v, _)| v)
            .collect())
    }

    /// Edges within `radius` fixed by every element of `h`.
    pub fn fixed_edge_count(&self, h: &FgSubgroup<Elem<G>>, radius: usize) -> Result<usize> {
        h.check_in(self)?;
        let ball = self.ball(radius)?;
        let fixed: Vec<bool> = ball
            .par_iter()
            .map(|(v, _)| h.generators().iter().all(|g| self.fixes(g, v)))
            .collect();
        Ok(ball
            .iter()
            .enumerate()
            .filter(|(i, (_, parent))| fixed[*i] && parent.is_some_and(|p| fixed[p]))
            .count())
    }

    /// All reduced raw words with exactly `m` stable letters and arbitrary
    /// base letters, in canonical order: bases in enumeration order of
    /// `Γ × Γ`, letters in declaration order.
    pub fn reduced_words(&self, m: usize) -> Result<Vec<Elem<G>>> {
        let bases = self.base.elements(WORD_BUDGET)?;
        let letters = self.letters();
        let total = (bases.len() as u128)
            .saturating_mul(((bases.len() * letters.len()) as u128).saturating_pow(m as u32));
        check_budget("reduced word enumeration", total, WORD_BUDGET)?;
        let mut words: Vec<Elem<G>> = bases
            .iter()
            .map(|b| self.base_word(b.clone()))
            .collect();
        for _ in 0..m {
            let mut next = Vec::with_capacity(words.len() * bases.len() * letters.len());
            for w in &words {
                for &sigma in letters {
                    let pinch = w.letters.last() == Some(&sigma.inverse())
                        && self.in_associated(sigma, w.bases.last().unwrap());
                    if pinch {
                        continue;
                    }
                    for b in &bases {
                        let mut x = w.clone();
                        x.letters.push(sigma);
                        x.bases.push(b.clone());
                        next.push(x);
                    }
                }
            }
            words = next;
        }
        Ok(words)
    }

    /// `g_0 σ_1 … σ_m g_m` for every `m`-letter normal form, in canonical
    /// order. Each group element with `m` letters appears exactly once.
    pub fn normal_forms(&self, m: usize) -> Result<Vec<Elem<G>>> {
        let last = self.base.elements(WORD_BUDGET)?;
        let mut prefixes = vec![Vertex {
            word: self.identity(),
        }];
        for _ in 0..m {
            prefixes = prefixes
                .iter()
                .map(|v| self.children(v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
        }
        Ok(prefixes
            .into_iter()
            .flat_map(|v| {
                last.iter().map(move |b| {
                    let mut w = v.word.clone();
                    *w.bases.last_mut().unwrap() = b.clone();
                    w
                })
            })
            .collect())
    }
}

/// Output of [`cc_witness_search_b1`].
#[derive(Debug, Clone, Serialize)]
pub struct CcSearch<E: fmt::Display> {
    pub witness: Option<BrittonWord<E>>,
    /// Reduced words examined, per stable-letter count.
    pub words_per_length: Vec<usize>,
}

impl<E: fmt::Display> CcSearch<E> {
    pub fn words_examined(&self) -> usize {
        self.words_per_length.iter().sum()
    }
}

/// Searches every reduced word `t` in `b(Γ)` with at most `max_letters`
/// stable letters for `[Γ₋, ^t Γ₋] = 1`, in canonical order.
pub fn cc_witness_search_b1<G: FiniteGroup + Clone>(
    gamma: &G,
    gamma_generators: &[G::Elem],
    max_letters: usize,
) -> Result<CcSearch<G::Elem>> {
    let group = HnnGroup::binate(gamma.clone());
    let n = group.base.order();
    let budget = (0..=max_letters as u32).fold(0u128, |acc, m| {
        acc.saturating_add(n.saturating_mul((2 * n).saturating_pow(m)))
    });
    check_budget("binate commuting-conjugates search", budget, WORD_BUDGET)?;
    let h: Vec<Elem<G>> = gamma_generators
        .iter()
        .map(|g| group.minus(g.clone()))
        .collect();
    let mut words_per_length = Vec::new();
    for m in 0..=max_letters {
        let words = group.reduced_words(m)?;
        words_per_length.push(words.len());
        let hit = words.par_iter().find_first(|raw| {
            let t = group.normal_form(raw).expect("enumerated words are well formed");
            let conj: Vec<Elem<G>> = h.iter().map(|x| conj_unchecked(&group, &t, x)).collect();
            h.iter()
                .all(|a| conj.iter().all(|b| group.op(a, b) == group.op(b, a)))
        });
        if let Some(raw) = hit {
            return Ok(CcSearch {
                witness: Some(raw.clone()),
                words_per_length,
            });
        }
    }
    Ok(CcSearch {
        witness: None,
        words_per_length,
    })
}

pub const MITOSIS_ORDER_BUDGET: u128 = 1000;

/// In `m(Γ)` with `H = Γ₋`, `t₁ = s`, `t₂ = d s`: the mitotic conditions,
/// and the binate conditions for `f(h) = ^s h` with `t = t₂ t₁⁻¹ = d`, both
/// by normal forms.
pub fn mitosis_check<G: FiniteGroup + Clone>(
    gamma: &G,
    gamma_generators: &[G::Elem],
) -> Result<PropertyReport<Elem<G>>> {
    check_budget("mitosis base order", gamma.order(), MITOSIS_ORDER_BUDGET)?;
    let m = HnnGroup::mitosis(gamma.clone());
    let h = FgSubgroup::new(
        &m,
        "Gamma_-",
        gamma_generators.iter().map(|g| m.minus(g.clone())).collect(),
    )?;
    let s = m.letter(Letter::S);
    let ds = m.op(&m.letter(Letter::D), &s);
    let mut report = PropertyReport::new("MITOSIS", format!("Gamma_- in {}", m.describe()))
        .witness("t1", s.clone())
        .witness("t2", ds.clone());
    report.absorb("mitotic", check_mitotic(&m, &h, &s, &ds)?);
    let f = GeneratorMap::new(
        h.generators()
            .iter()
            .map(|x| conj_unchecked(&m, &s, x))
            .collect(),
    );
    // a mitotic pair (t1, t2) is binate with f = ^t1 and t = t2 t1⁻¹
    let t = m.op(&ds, &m.inverse(&s));
    report.absorb("binate", check_binate(&m, &h, &f, &t)?);
    for (g, x) in gamma_generators.iter().zip(h.generators()) {
        let expected = m.plus(g.clone());
        if conj_unchecked(&m, &s, x) != expected {
            report.fail(
                Failure::new(FailureKind::Unequal, "^s (g, 1) != (1, g)")
                    .with_pair(conj_unchecked(&m, &s, x), expected),
            );
            return Ok(report);
        }
    }
    report.record("^s (g, 1) = (1, g) on generators");
    Ok(report)
}

/// `x ↦ (x, 1)`, the embedding `Γ -> b(Γ)` of the next tower stage.
pub fn b_tower_embed<G: Group + Clone>(next: &HnnGroup<G>, x: &G::Elem) -> Result<Elem<G>> {
    next.gamma.check(x)?;
    Ok(next.minus(x.clone()))
}

/// Stages of the binate tower: `b(Γ)`, `b(b(Γ))`, `b(b(b(Γ)))`.
pub type BStage1<G> = HnnGroup<G>;
pub type BStage2<G> = HnnGroup<HnnGroup<G>>;
pub type BStage3<G> = HnnGroup<HnnGroup<HnnGroup<G>>>;

pub fn b_tower<G: Group + Clone>(gamma: G) -> (BStage1<G>, BStage2<G>, BStage3<G>) {
    let b1 = HnnGroup::binate(gamma);
    let b2 = HnnGroup::binate(b1.clone());
    let b3 = HnnGroup::binate(b2.clone());
    (b1, b2, b3)
}

/// Distinct group elements among raw words, by normal form.
pub fn distinct_elements<G: Group>(group: &HnnGroup<G>, words: &[Elem<G>]) -> Result<usize> {
    let mut seen = HashSet::new();
    for w in words {
        seen.insert(group.normal_form(w)?);
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, SymmetricGroup};

    fn s3() -> SymmetricGroup {
        SymmetricGroup::new(3)
    }

    fn p(s: &str) -> Permutation {
        Permutation::parse(3, s).unwrap()
    }

    fn raw(tokens: Vec<(Pair<Permutation, Permutation>, Option<Letter>)>) -> Elem<SymmetricGroup> {
        let mut w = BrittonWord {
            bases: vec![],
            letters: vec![],
        };
        for (x, l) in tokens {
            w.bases.push(x);
            if let Some(l) = l {
                w.letters.push(l);
            }
        }
        w
    }

    #[test]
    fn defining_relation() {
        let b = HnnGroup::binate(s3());
        let id = p("()");
        for g in s3().elements(6).unwrap() {
            let w = raw(
                vec![
                    (Pair(id.clone(), id.clone()), Some(Letter::D)),
                    (Pair(id.clone(), g.clone()), Some(Letter::DInv)),
                    (Pair(id.clone(), id.clone()), None),
                ],
            );
            assert_eq!(b.britton_reduce(&w).unwrap(), b.diagonal(g.clone()));
        }
        let g = p("(1 2)");
        let w = raw(
            vec![
                (Pair(id.clone(), id.clone()), Some(Letter::D)),
                (Pair(g.clone(), id.clone()), Some(Letter::DInv)),
                (Pair(id.clone(), id.clone()), None),
            ],
        );
        assert_eq!(b.britton_reduce(&w).unwrap(), w);
        assert!(!b.represents_identity(&w).unwrap());
        let dd = b.concat(&b.letter(Letter::D), &b.letter(Letter::DInv));
        assert!(b.represents_identity(&dd).unwrap());
        assert!(!b.represents_identity(&b.letter(Letter::D)).unwrap());
    }

    #[test]
    fn malformed_words() {
        let b = HnnGroup::binate(s3());
        let bad = BrittonWord {
            bases: vec![b.base_id()],
            letters: vec![Letter::D],
        };
        assert!(b.britton_reduce(&bad).is_err());
        let s_word = HnnGroup::mitosis(s3()).letter(Letter::S);
        assert!(b.britton_reduce(&s_word).is_err());
    }

    #[test]
    fn group_laws_on_letters() {
        let b = HnnGroup::binate(s3());
        let d = b.letter(Letter::D);
        let x = b.plus(p("(1 2 3)"));
        let y = b.op(&b.op(&d, &x), &b.inverse(&d));
        assert_eq!(y, b.diagonal(p("(1 2 3)")));
        assert!(b.is_identity(&b.op(&d, &b.inverse(&d))));
        let w = b.op(&b.op(&d, &b.minus(p("(1 2)"))), &d);
        b.check(&w).unwrap();
        assert!(b.is_identity(&b.op(&w, &b.inverse(&w))));
    }

    #[test]
    fn ball_sizes() {
        let b = HnnGroup::binate(s3());
        let sizes: Vec<usize> = (0..=2).map(|r| b.ball(r).unwrap().len()).collect();
        assert_eq!(sizes, [1, 13, 13 + 12 * 11]);
        assert!(b.ball(5).is_err());
    }

    #[test]
    fn fixed_vertices_examples() {
        let b = HnnGroup::binate(s3());
        let g = b.minus(p("(1 2)"));
        let fixed = b.bass_serre_fixed_vertices(&g, 3).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].distance(), 0);
        let all = b.bass_serre_fixed_vertices(&b.identity(), 2).unwrap();
        assert_eq!(all.len(), b.ball(2).unwrap().len());
        let diag = b.diagonal(p("(1 2 3)"));
        assert!(b.bass_serre_fixed_vertices(&diag, 2).unwrap().len() >= 2);
    }

    #[test]
    fn search_small_cases() {
        let z2 = SymmetricGroup::new(2);
        let r = cc_witness_search_b1(&z2, &z2.standard_generators(), 0).unwrap();
        assert_eq!(r.witness.map(|w| w.letters.len()), Some(0));
        let r = cc_witness_search_b1(&s3(), &s3().standard_generators(), 0).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.words_examined(), 36);
    }

    #[test]
    fn mitosis_small_cases() {
        let r = mitosis_check(&s3(), &s3().standard_generators()).unwrap();
        assert!(r.is_success(), "{r:#?}");
        let z2 = SymmetricGroup::new(2);
        assert!(mitosis_check(&z2, &z2.standard_generators()).unwrap().is_success());
        let trivial = SymmetricGroup::new(1);
        assert!(mitosis_check(&trivial, &[]).unwrap().is_success());
    }

    #[test]
    fn tower_embedding() {
        let (b1, b2, _) = b_tower(s3());
        let g = b1.letter(Letter::D);
        let e = b_tower_embed(&b2, &g).unwrap();
        assert!(!b2.is_identity(&e));
        assert!(b2.is_identity(&b_tower_embed(&b2, &b1.identity()).unwrap()));
        let x = b1.minus(p("(1 2)"));
        let lhs = b_tower_embed(&b2, &b1.op(&g, &x)).unwrap();
        let rhs = b2.op(&e, &b_tower_embed(&b2, &x).unwrap());
        assert_eq!(lhs, rhs);
    }
}
