//! Certificate verifiers for the displacement properties.
//!
//! Every checker works on generators only. Conditions quantified over all
//! `p >= 1` are checked up to an explicit `p_max` and then carry the
//! verdict `bounded-pass`, never `pass`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    commute, conj_unchecked, enumerate_subgroup, pow, subgroups_commute_unchecked, FgSubgroup,
    Group, Pair, ProductGroup,
};
use crate::pl::{displaces, IntervalSet, PlGroup, PlHomeo};
use crate::report::{Failure, FailureKind, PropertyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    #[serde(rename = "CC")]
    CommutingConjugates,
    #[serde(rename = "CCC")]
    CommutingCyclicConjugates,
    #[serde(rename = "CZC")]
    CommutingZConjugates,
    #[serde(rename = "CZNC")]
    CommutingZnConjugates,
    #[serde(rename = "M")]
    ConjugatesInCommutingZConjugate,
    #[serde(rename = "BINATE")]
    Binate,
    #[serde(rename = "MITOTIC")]
    Mitotic,
    #[serde(rename = "DISSIPATOR")]
    Dissipator,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::CommutingConjugates => "CC",
            Property::CommutingCyclicConjugates => "CCC",
            Property::CommutingZConjugates => "CZC",
            Property::CommutingZnConjugates => "CZNC",
            Property::ConjugatesInCommutingZConjugate => "M",
            Property::Binate => "BINATE",
            Property::Mitotic => "MITOTIC",
            Property::Dissipator => "DISSIPATOR",
        })
    }
}

/// `n` in the cyclic-conjugates condition; `t^∞` reads as the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleLength {
    Finite(u64),
    Infinite,
}

impl Serialize for CycleLength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CycleLength::Finite(n) => s.serialize_u64(*n),
            CycleLength::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A word in the generators of a subgroup: `(generator index, exponent)`.
pub type Relator = Vec<(usize, i64)>;

/// Images of the generators of `H`, in generator order. When `relators`
/// is supplied, the map is checked to be a homomorphism on them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorMap<E> {
    pub images: Vec<E>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<Vec<Relator>>,
}

impl<E> GeneratorMap<E> {
    pub fn new(images: Vec<E>) -> Self {
        GeneratorMap {
            images,
            relators: None,
        }
    }

    pub fn with_relators(mut self, relators: Vec<Relator>) -> Self {
        self.relators = Some(relators);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "property")]
pub enum Witness<E> {
    #[serde(rename = "CC")]
    Cc { t: E },
    #[serde(rename = "CZNC")]
    Cznc { t: E, n: u64 },
    #[serde(rename = "CZC")]
    Czc { t: E, p_max: u64 },
    #[serde(rename = "CCC")]
    Ccc { t: E, n: CycleLength, p_max: u64 },
    #[serde(rename = "M")]
    M {
        lambda: FgSubgroup<E>,
        t: E,
        subset: Vec<E>,
        s: E,
        p_max: u64,
    },
    #[serde(rename = "BINATE")]
    Binate { f: GeneratorMap<E>, t: E },
    #[serde(rename = "MITOTIC")]
    Mitotic { t1: E, t2: E },
    #[serde(rename = "DISSIPATOR")]
    Dissipator {
        region: IntervalSet,
        t: E,
        p_max: u64,
    },
}

impl<E> Witness<E> {
    pub fn property(&self) -> Property {
        match self {
            Witness::Cc { .. } => Property::CommutingConjugates,
            Witness::Cznc { .. } => Property::CommutingZnConjugates,
            Witness::Czc { .. } => Property::CommutingZConjugates,
            Witness::Ccc { .. } => Property::CommutingCyclicConjugates,
            Witness::M { .. } => Property::ConjugatesInCommutingZConjugate,
            Witness::Binate { .. } => Property::Binate,
            Witness::Mitotic { .. } => Property::Mitotic,
            Witness::Dissipator { .. } => Property::Dissipator,
        }
    }
}

/// A property tag, its subject subgroup and the witness data. The tag is
/// carried by the witness variant, so the two always agree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessCertificate<E> {
    subject: FgSubgroup<E>,
    #[serde(flatten)]
    pub witness: Witness<E>,
}

impl<E: Clone + Eq> WitnessCertificate<E> {
    pub fn new(subject: FgSubgroup<E>, witness: Witness<E>) -> Self {
        WitnessCertificate { subject, witness }
    }

    pub fn property(&self) -> Property {
        self.witness.property()
    }

    pub fn subject(&self) -> &FgSubgroup<E> {
        &self.subject
    }

    /// Verifies through the matching checker. `M` certificates need a
    /// membership oracle and dissipators need the PL realization; see
    /// [`WitnessCertificate::verify_with`] and [`WitnessCertificate::verify_pl`].
    pub fn verify<G: Group<Elem = E>>(&self, group: &G) -> Result<PropertyReport<E>> {
        self.verify_with(group, None)
    }

    pub fn verify_with<G: Group<Elem = E>>(
        &self,
        group: &G,
        oracle: Option<&dyn MembershipOracle<E>>,
    ) -> Result<PropertyReport<E>> {
        let h = &self.subject;
        match &self.witness {
            Witness::Cc { t } => check_cc(group, h, t),
            Witness::Cznc { t, n } => check_cznc(group, h, t, *n),
            Witness::Czc { t, p_max } => check_czc(group, h, t, *p_max),
            Witness::Ccc { t, n, p_max } => check_ccc(group, h, t, *n, *p_max),
            Witness::M {
                lambda,
                t,
                subset,
                s,
                p_max,
            } => check_m(group, lambda, t, subset, s, *p_max, oracle),
            Witness::Binate { f, t } => check_binate(group, h, f, t),
            Witness::Mitotic { t1, t2 } => check_mitotic(group, h, t1, t2),
            Witness::Dissipator { .. } => Err(Error::Precondition(
                "dissipator certificates are verified in the PL realization".into(),
            )),
        }
    }
}

impl WitnessCertificate<PlHomeo> {
    pub fn verify_pl(
        &self,
        oracle: Option<&dyn MembershipOracle<PlHomeo>>,
    ) -> Result<PropertyReport<PlHomeo>> {
        match &self.witness {
            Witness::Dissipator { region, t, p_max } => {
                check_dissipator(region, t, &self.subject, *p_max)
            }
            _ => self.verify_with(&PlGroup, oracle),
        }
    }
}

/// Decides membership in a (possibly infinite) subgroup `<Λ>`.
pub trait MembershipOracle<E>: Sync {
    fn name(&self) -> String;
    fn contains(&self, x: &E) -> bool;
}

/// Membership by full enumeration of a finite subgroup.
pub struct EnumeratedOracle<E> {
    label: String,
    members: HashSet<E>,
}

impl<E: Clone + Eq + std::hash::Hash + Send + Sync> EnumeratedOracle<E> {
    pub fn new<G: Group<Elem = E>>(group: &G, lambda: &FgSubgroup<E>, budget: usize) -> Result<Self> {
        let members = enumerate_subgroup(group, lambda.generators(), budget)?
            .into_iter()
            .collect();
        Ok(EnumeratedOracle {
            label: lambda.label.clone(),
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl<E: Clone + Eq + std::hash::Hash + Send + Sync> MembershipOracle<E> for EnumeratedOracle<E> {
    fn name(&self) -> String {
        format!("enumeration of <{}> ({} elements)", self.label, self.members.len())
    }

    fn contains(&self, x: &E) -> bool {
        self.members.contains(x)
    }
}

fn prepare<G: Group>(group: &G, h: &FgSubgroup<G::Elem>, elems: &[&G::Elem]) -> Result<()> {
    h.check_in(group)?;
    elems.iter().try_for_each(|x| group.check(x))
}

/// `[H, ^t H] = 1`.
pub fn check_cc<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, h, &[t])?;
    let mut report = PropertyReport::new("CC", h.label.clone()).witness("t", t.clone());
    let conj_h = conjugate_unchecked(group, h, t, "^t H");
    report.absorb("[H, ^t H] = 1", subgroups_commute_unchecked(group, h, &conj_h));
    Ok(report)
}

fn conjugate_unchecked<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    label: &str,
) -> FgSubgroup<G::Elem> {
    let gens = h
        .generators()
        .iter()
        .map(|x| conj_unchecked(group, t, x))
        .collect();
    FgSubgroup::new(group, label, gens).expect("conjugates stay in the group")
}

/// Checks `[H, ^(t^p) H] = 1` for `1 <= p <= last`, stopping at the first failure.
fn conjugate_powers<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    last: u64,
    report: &mut PropertyReport<G::Elem>,
) {
    let mut tp = group.identity();
    for p in 1..=last {
        tp = group.op(&tp, t);
        let conj_h = conjugate_unchecked(group, h, &tp, "^(t^p) H");
        let sub = subgroups_commute_unchecked(group, h, &conj_h);
        if let Some(mut f) = sub.failure {
            f.condition = format!("[H, ^(t^{p}) H] != 1");
            report.fail(f.at_power(p));
            return;
        }
        report.record(format!("[H, ^(t^{p}) H] = 1"));
    }
}

/// `[H, ^(t^p) H] = 1` for `1 <= p < n` and `[H, t^n] = 1`.
pub fn check_cznc<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    n: u64,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, h, &[t])?;
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    let mut report = PropertyReport::new("CZNC", h.label.clone())
        .witness("t", t.clone())
        .bound("n", n);
    conjugate_powers(group, h, t, n - 1, &mut report);
    if report.is_fail() {
        return Ok(report);
    }
    let tn = pow(group, t, n as i64);
    for x in h.generators() {
        if !commute(group, x, &tn) {
            report.fail(
                Failure::new(FailureKind::NonCommuting, format!("[H, t^{n}] != 1"))
                    .with_pair(x.clone(), tn.clone())
                    .at_power(n),
            );
            return Ok(report);
        }
    }
    report.record(format!("[H, t^{n}] = 1"));
    Ok(report)
}

/// `[H, ^(t^p) H] = 1` for `1 <= p <= p_max`; verdict is bounded-pass.
pub fn check_czc<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    p_max: u64,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, h, &[t])?;
    if p_max < 1 {
        return Err(Error::Precondition("p_max must be at least 1".into()));
    }
    let mut report = PropertyReport::new("CZC", h.label.clone())
        .witness("t", t.clone())
        .bound("p_max", p_max);
    conjugate_powers(group, h, t, p_max, &mut report);
    Ok(report.bounded())
}

pub fn check_ccc<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    n: CycleLength,
    p_max: u64,
) -> Result<PropertyReport<G::Elem>> {
    let mut report = match n {
        CycleLength::Finite(n) => check_cznc(group, h, t, n)?,
        CycleLength::Infinite => check_czc(group, h, t, p_max)?,
    };
    report.property = "CCC".into();
    Ok(report)
}

/// `[H, f(H)] = 1` and `^t f(h) = h f(h)` on generators.
///
/// Given the first condition and homomorphy of `f`, both `h -> h f(h)` and
/// `h -> ^t f(h)` are homomorphisms, so the second condition reduces to
/// generators. Homomorphy itself is checked only on supplied relators.
pub fn check_binate<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    f: &GeneratorMap<G::Elem>,
    t: &G::Elem,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, h, &[t])?;
    f.images.iter().try_for_each(|x| group.check(x))?;
    let gens = h.generators();
    if f.images.len() != gens.len() {
        return Err(Error::Precondition(format!(
            "generator map has {} images for {} generators",
            f.images.len(),
            gens.len()
        )));
    }
    let mut report = PropertyReport::new("BINATE", h.label.clone()).witness("t", t.clone());
    for (i, x) in f.images.iter().enumerate() {
        report = report.witness(format!("f(h{i})"), x.clone());
    }

    match &f.relators {
        Some(relators) => {
            for (k, r) in relators.iter().enumerate() {
                let in_h = eval_relator(group, gens, r)?;
                if !group.is_identity(&in_h) {
                    return Err(Error::Precondition(format!("relator {k} does not hold in H")));
                }
                let image = eval_relator(group, &f.images, r)?;
                if !group.is_identity(&image) {
                    report.fail(
                        Failure::new(FailureKind::Unequal, format!("f(relator {k}) != 1"))
                            .with_pair(image, group.identity()),
                    );
                    return Ok(report);
                }
            }
            report.record(format!("f kills all {} relators", relators.len()));
        }
        None => report.note("no presentation supplied: f trusted to be a homomorphism"),
    }

    for a in gens {
        for b in &f.images {
            if !commute(group, a, b) {
                report.fail(
                    Failure::new(FailureKind::NonCommuting, "[H, f(H)] != 1")
                        .with_pair(a.clone(), b.clone()),
                );
                return Ok(report);
            }
        }
    }
    report.record("[H, f(H)] = 1");

    for (x, fx) in gens.iter().zip(&f.images) {
        let lhs = conj_unchecked(group, t, fx);
        let rhs = group.op(x, fx);
        if lhs != rhs {
            report.fail(
                Failure::new(FailureKind::Unequal, format!("^t f({x}) != {x} f({x})"))
                    .with_pair(lhs, rhs),
            );
            return Ok(report);
        }
    }
    report.record("^t f(h) = h f(h) on generators");
    Ok(report)
}

fn eval_relator<G: Group>(group: &G, gens: &[G::Elem], r: &Relator) -> Result<G::Elem> {
    let mut acc = group.identity();
    for &(i, e) in r {
        let g = gens
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("relator mentions generator {i}")))?;
        acc = group.op(&acc, &pow(group, g, e));
    }
    Ok(acc)
}

/// `[H, ^t1 H] = 1` and `^t2 h = h ^t1 h` on generators.
pub fn check_mitotic<G: Group>(
    group: &G,
    h: &FgSubgroup<G::Elem>,
    t1: &G::Elem,
    t2: &G::Elem,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, h, &[t1, t2])?;
    let mut report = PropertyReport::new("MITOTIC", h.label.clone())
        .witness("t1", t1.clone())
        .witness("t2", t2.clone());
    let conj_h = conjugate_unchecked(group, h, t1, "^t1 H");
    report.absorb("[H, ^t1 H] = 1", subgroups_commute_unchecked(group, h, &conj_h));
    if report.is_fail() {
        return Ok(report);
    }
    for (x, cx) in h.generators().iter().zip(conj_h.generators()) {
        let lhs = conj_unchecked(group, t2, x);
        let rhs = group.op(x, cx);
        if lhs != rhs {
            report.fail(
                Failure::new(FailureKind::Unequal, format!("^t2 {x} != {x} ^t1 {x}"))
                    .with_pair(lhs, rhs),
            );
            return Ok(report);
        }
    }
    report.record("^t2 h = h ^t1 h on generators");
    Ok(report)
}

/// `[Λ, ^(t^p) Λ] = 1` for `p <= p_max`, and every element of `subset`
/// lies in `^s <Λ>` according to the oracle. Bounded-pass on success.
pub fn check_m<G: Group>(
    group: &G,
    lambda: &FgSubgroup<G::Elem>,
    t: &G::Elem,
    subset: &[G::Elem],
    s: &G::Elem,
    p_max: u64,
    oracle: Option<&dyn MembershipOracle<G::Elem>>,
) -> Result<PropertyReport<G::Elem>> {
    prepare(group, lambda, &[t, s])?;
    subset.iter().try_for_each(|x| group.check(x))?;
    let Some(oracle) = oracle else {
        return Err(Error::OracleUnavailable(format!(
            "<{}> in {}",
            lambda.label,
            group.describe()
        )));
    };
    if p_max < 1 {
        return Err(Error::Precondition("p_max must be at least 1".into()));
    }
    let mut report = PropertyReport::new("M", lambda.label.clone())
        .witness("t", t.clone())
        .witness("s", s.clone())
        .bound("p_max", p_max);
    conjugate_powers(group, lambda, t, p_max, &mut report);
    if report.is_fail() {
        return Ok(report);
    }
    let s_inv = group.inverse(s);
    for x in subset {
        if !oracle.contains(&conj_unchecked(group, &s_inv, x)) {
            report.fail(
                Failure::new(FailureKind::NotContained, format!("{x} not in ^s <{}>", lambda.label))
                    .with_pair(x.clone(), s.clone()),
            );
            return Ok(report);
        }
    }
    report.record(format!(
        "{} elements contained in ^s <{}> ({})",
        subset.len(),
        lambda.label,
        oracle.name()
    ));
    Ok(report.bounded())
}

/// From an `M` certificate `(Λ, t0, ...)` and `s` with `H <= ^s <Λ>`,
/// the commuting `Z`-conjugates certificate `(H, ^s t0, p_max)`, verified.
pub fn derive_czc_from_m<G: Group>(
    group: &G,
    m: &WitnessCertificate<G::Elem>,
    h: &FgSubgroup<G::Elem>,
    s: &G::Elem,
    oracle: &dyn MembershipOracle<G::Elem>,
) -> Result<(WitnessCertificate<G::Elem>, PropertyReport<G::Elem>)> {
    let Witness::M {
        lambda, t, p_max, ..
    } = &m.witness
    else {
        return Err(Error::Precondition(format!(
            "expected an M certificate, got {}",
            m.property()
        )));
    };
    prepare(group, h, &[s, t])?;
    let s_inv = group.inverse(s);
    if let Some(x) = h
        .generators()
        .iter()
        .find(|x| !oracle.contains(&conj_unchecked(group, &s_inv, x)))
    {
        return Err(Error::Precondition(format!(
            "generator {x} of {} is not in ^s <{}>",
            h.label, lambda.label
        )));
    }
    let t_new = conj_unchecked(group, s, t);
    let cert = WitnessCertificate::new(
        h.clone(),
        Witness::Czc {
            t: t_new,
            p_max: *p_max,
        },
    );
    let report = cert.verify(group)?;
    Ok((cert, report))
}

/// Result of [`product_cc_witness`].
pub struct ProductWitness<A: Group, B: Group> {
    pub group: ProductGroup<A, B>,
    pub certificate: WitnessCertificate<Pair<A::Elem, B::Elem>>,
    pub report: PropertyReport<Pair<A::Elem, B::Elem>>,
}

/// Combines commuting-conjugates certificates for `H1 <= G1` and
/// `H2 <= G2` into one for `H1 x H2` with witness `(t1, t2)`.
pub fn product_cc_witness<A: Group + Clone, B: Group + Clone>(
    left: &A,
    c1: &WitnessCertificate<A::Elem>,
    right: &B,
    c2: &WitnessCertificate<B::Elem>,
) -> Result<ProductWitness<A, B>> {
    let (Witness::Cc { t: t1 }, Witness::Cc { t: t2 }) = (&c1.witness, &c2.witness) else {
        return Err(Error::Precondition("both factors must be CC certificates".into()));
    };
    for (i, ok) in [(1, c1.verify(left)?.is_success()), (2, c2.verify(right)?.is_success())] {
        if !ok {
            return Err(Error::Precondition(format!("factor {i} certificate fails")));
        }
    }
    let group = ProductGroup::new(left.clone(), right.clone());
    let gens: Vec<_> = c1
        .subject
        .generators()
        .iter()
        .map(|x| group.inject_left(x.clone()))
        .chain(c2.subject.generators().iter().map(|y| group.inject_right(y.clone())))
        .collect();
    let subject = FgSubgroup::new(
        &group,
        format!("{} x {}", c1.subject.label, c2.subject.label),
        gens,
    )?;
    let certificate = WitnessCertificate::new(
        subject,
        Witness::Cc {
            t: Pair(t1.clone(), t2.clone()),
        },
    );
    let report = certificate.verify(&group)?;
    Ok(ProductWitness {
        group,
        certificate,
        report,
    })
}

/// Dissipator data on a bounded region `X`: `t^p(X) ∩ X = ∅` for
/// `p <= p_max`, and each truncated diagonal product
/// `∏_{p=1..q} ^(t^p) g` (`q <= p_max`) is a valid PL map commuting with the
/// sample generators. Bounded-pass on success.
pub fn check_dissipator(
    region: &IntervalSet,
    t: &PlHomeo,
    sample: &FgSubgroup<PlHomeo>,
    p_max: u64,
) -> Result<PropertyReport<PlHomeo>> {
    for g in sample.generators() {
        if !g.support().is_subset_of(region) {
            return Err(Error::Precondition(format!(
                "sample generator {g} is not supported in {region}"
            )));
        }
    }
    let mut report = PropertyReport::new("DISSIPATOR", sample.label.clone())
        .witness("t", t.clone())
        .bound("p_max", p_max);
    report.absorb("displacement", displaces(t, region, p_max)?);
    if report.is_fail() {
        return Ok(report.bounded());
    }
    let group = PlGroup;
    let t_inv = t.inverse();
    for g in sample.generators() {
        let mut diagonal = PlHomeo::identity();
        let (mut tp, mut tp_inv) = (PlHomeo::identity(), PlHomeo::identity());
        for q in 1..=p_max {
            tp = t.compose(&tp);
            tp_inv = tp_inv.compose(&t_inv);
            let piece = tp.compose(g).compose(&tp_inv);
            diagonal = diagonal.compose(&piece);
            diagonal.validate()?;
            if let Some(h) = sample.generators().iter().find(|h| !commute(&group, h, &diagonal)) {
                report.fail(
                    Failure::new(
                        FailureKind::NonCommuting,
                        format!("diagonal product up to q = {q} does not commute with the sample"),
                    )
                    .with_pair(h.clone(), diagonal.clone())
                    .at_power(q),
                );
                return Ok(report);
            }
        }
    }
    report.record(format!(
        "truncated diagonal products valid and commuting for q <= {p_max}"
    ));
    Ok(report.bounded())
}
