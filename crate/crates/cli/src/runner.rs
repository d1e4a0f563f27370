//! Executes scenario checks and assembles the suite report.

use displace_core::checkers::{
    CycleLength, EnumeratedOracle, GeneratorMap, MembershipOracle, Witness, WitnessCertificate,
};
use displace_core::group::{conj, FgSubgroup, FiniteGroup, Group, Pair};
use displace_core::hnn::{cc_witness_search_b1, mitosis_check, BrittonWord, HnnGroup, Letter};
use displace_core::linalg::{
    block_conjugate, centralizer_space, centralizer_test_matrices, gl_block_swap_witness,
    GeneralLinear, RationalMatrix,
};
use displace_core::perm::{Permutation, SymmetricGroup};
use displace_core::pl::{
    centralizing_samples, displaces, sample_words, satisfies_dichotomy,
    unique_fixed_point_element, FCopyOracle, IntervalSet, PlGroup, PlHomeo, PlTower,
};
use displace_core::rational::{q, qi};
use displace_core::report::{Failure, FailureKind};
use displace_core::wreath::{
    brute_search_zp_witness, sym_zn_witness, torsion_obstruction_check, zn_witness,
};
use displace_core::{Error, PropertyReport, Result, Verdict};
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::element::{
    parse_matrix, parse_perm, parse_pl, parse_tower, parse_word, tower_spec, Realization,
};
use crate::scenario::{CheckSpec, CycleSpec, Expectation, Op, ScenarioSpec};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub type JsonReport = PropertyReport<Value>;

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_max: Option<u64>,
    pub budget: u64,
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            p_max: None,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub anchor: String,
    pub group: String,
    pub op: String,
    pub expect: Expectation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub budget_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<JsonReport>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Totals {
    pub checks: usize,
    pub met: usize,
    pub violated: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub seed: u64,
    pub settings: Settings,
    pub checks: Vec<CheckOutcome>,
    pub totals: Totals,
}

impl SuiteReport {
    /// 0 when every expectation is met, 3 when a budget was exceeded,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.budget_exceeded) {
            3
        } else if self.checks.iter().all(|c| c.met) {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.checks {
            let status = if c.met { "ok  " } else { "FAIL" };
            let got = match (&c.verdict, &c.error) {
                (_, Some(e)) => format!("error: {e}"),
                (Some(v), None) => v.to_string(),
                (None, None) => "-".into(),
            };
            let expect = serde_json::to_value(c.expect).unwrap();
            out.push_str(&format!(
                "{status} {:<32} {:<18} expect {:<14} got {got}\n",
                c.id,
                c.op,
                expect.as_str().unwrap_or("")
            ));
            if let Some(f) = c.report.as_ref().and_then(|r| r.failure.as_ref()) {
                out.push_str(&format!("       {}\n", f.condition));
            }
        }
        let t = &self.totals;
        out.push_str(&format!(
            "{} checks, {} met, {} violated, {} errors\n",
            t.checks, t.met, t.violated, t.errors
        ));
        out
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("check {id:?}: {message}")]
    Element { id: String, message: String },
    #[error("could not start the worker pool: {0}")]
    Pool(String),
}

/// Seed of the `index`-th check: an independent ChaCha stream per check,
/// so results do not depend on scheduling.
pub fn check_seed(seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

pub fn run_scenario(spec: &ScenarioSpec, settings: &Settings) -> Result<SuiteReport, RunError> {
    let mut checks = spec.checks.clone();
    let mut realizations = Vec::with_capacity(checks.len());
    for c in &mut checks {
        if let Some(p) = settings.p_max {
            c.op.set_p_max(p);
        }
        let element_error = |e: Error| RunError::Element {
            id: c.id.clone(),
            message: e.to_string(),
        };
        let r = Realization::build(&c.group).map_err(element_error)?;
        for v in c.op.element_values() {
            r.check_value(v).map_err(element_error)?;
        }
        realizations.push(r);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs.max(1))
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))?;
    let outcomes: Vec<CheckOutcome> = pool.install(|| {
        checks
            .par_iter()
            .zip(realizations.par_iter())
            .enumerate()
            .map(|(i, (c, r))| {
                let started = std::time::Instant::now();
                let out = run_check(c, r, check_seed(settings.seed, i), settings.budget as u128);
                eprintln!("[{:>8.2?}] {}", started.elapsed(), c.id);
                out
            })
            .collect()
    });
    let mut totals = Totals {
        checks: outcomes.len(),
        ..Totals::default()
    };
    for o in &outcomes {
        if o.error.is_some() {
            totals.errors += 1;
        }
        if o.met {
            totals.met += 1;
        } else {
            totals.violated += 1;
        }
    }
    Ok(SuiteReport {
        suite: spec.suite.clone(),
        description: spec.description.clone(),
        seed: settings.seed,
        settings: settings.clone(),
        checks: outcomes,
        totals,
    })
}

fn run_check(c: &CheckSpec, r: &Realization, seed: u64, budget: u128) -> CheckOutcome {
    let mut out = CheckOutcome {
        id: c.id.clone(),
        anchor: c.anchor.clone(),
        group: c.group.kind().to_string(),
        op: c.op.kind().to_string(),
        expect: c.expect,
        verdict: None,
        met: false,
        error: None,
        budget_exceeded: false,
        report: None,
    };
    match execute(c, r, seed, budget) {
        Ok(report) => {
            out.verdict = Some(report.verdict);
            out.met = c.expect.matches(report.verdict);
            out.report = Some(report);
        }
        Err(e) => {
            out.budget_exceeded = matches!(e, Error::BudgetExceeded { .. });
            out.error = Some(e.to_string());
        }
    }
    out
}

fn to_json<E: Serialize>(r: PropertyReport<E>) -> JsonReport {
    r.map_elems(|e| serde_json::to_value(e).expect("elements serialize"))
}

fn execute(c: &CheckSpec, r: &Realization, seed: u64, budget: u128) -> Result<JsonReport> {
    match r {
        Realization::Sym(g) => {
            let parse = |v: &Value| parse_perm(g, v);
            if let Some(cert) = certificate(g, &c.op, &parse)? {
                return verify_enumerated(g, &cert, budget).map(to_json);
            }
            match &c.op {
                Op::ZpSearch { subject, p } => zp_search(g, &subgroup(g, subject, &parse)?, *p, budget),
                Op::TorsionSweep { subject } => torsion_sweep(g, &subgroup(g, subject, &parse)?, budget),
                Op::SymZn { subject, n } => {
                    let h = subgroup(g, subject, &parse)?;
                    let w = sym_zn_witness(g.degree, &h, *n)?;
                    reverified(w.certificate.verify(&w.group)?, w.report)
                }
                op => unsupported(op, "sym"),
            }
        }
        Realization::Wreath(g) => {
            let parse = |v: &Value| parse_tower(g, v);
            if let Some(cert) = certificate(g, &c.op, &parse)? {
                return verify_enumerated(g, &cert, budget).map(to_json);
            }
            match &c.op {
                Op::ZpSearch { subject, p } => zp_search(g, &subgroup(g, subject, &parse)?, *p, budget),
                Op::TorsionSweep { subject } => torsion_sweep(g, &subgroup(g, subject, &parse)?, budget),
                Op::ZnWitness {
                    h_level,
                    subject,
                    level,
                    p,
                } => {
                    let (_, spec, _) = tower_spec(&c.group).expect("tower construction");
                    let lower = g.truncate((*h_level).min(g.level()));
                    let h = subgroup(&lower, subject, &|v: &Value| parse_tower(&lower, v))?;
                    let w = zn_witness(&g.base, &spec, *h_level, &h, *level, *p)?;
                    reverified(w.certificate.verify(&w.group)?, w.report)
                }
                op => unsupported(op, "wreath"),
            }
        }
        Realization::Pl(tower) => {
            let parse = |v: &Value| parse_pl(tower, v);
            if let Some(cert) = certificate(&PlGroup, &c.op, &parse)? {
                return cert.verify_pl(Some(&FCopyOracle)).map(to_json);
            }
            match &c.op {
                Op::PlTower {
                    displace_p_max,
                    czc_p_max,
                    samples,
                    word_length,
                } => pl_tower(tower, *displace_p_max, *czc_p_max, *samples, *word_length, seed),
                Op::FixedPoint { samples } => fixed_point(*samples, seed),
                op => unsupported(op, "pl-tower"),
            }
        }
        Realization::Hnn(g) => {
            let parse = |v: &Value| parse_word(g, v);
            if let Some(cert) = certificate(g, &c.op, &parse)? {
                let cert = normalize_certificate(g, cert)?;
                return verify_enumerated(g, &cert, budget).map(to_json);
            }
            match &c.op {
                Op::Britton {
                    max_letters,
                    confluence_words,
                } => britton(g, *max_letters, *confluence_words, seed, budget),
                Op::BassSerre { radius } => bass_serre(g, *radius),
                Op::FixedEdges { radius } => fixed_edges(g, *radius),
                Op::CcSearch { max_letters } => cc_search(&g.gamma, *max_letters),
                Op::MitosisCheck {} => {
                    Ok(to_json(mitosis_check(&g.gamma, &g.gamma.standard_generators())?))
                }
                op => unsupported(op, "hnn"),
            }
        }
        Realization::Gl(g) => {
            let parse = |v: &Value| parse_matrix(g, v);
            if let Some(cert) = certificate(g, &c.op, &parse)? {
                return verify_enumerated(g, &cert, budget).map(to_json);
            }
            match &c.op {
                Op::BlockConjugation { samples } => block_conjugation(*samples, seed),
                Op::Centralizer { expected_dim } => centralizer(*expected_dim),
                Op::BlockSwap { subject } => {
                    let h = subgroup(g, subject, &parse)?;
                    let w = gl_block_swap_witness(&h)?;
                    reverified(w.certificate.verify(&w.group)?, w.report)
                }
                op => unsupported(op, "gl"),
            }
        }
    }
}

fn unsupported(op: &Op, realization: &str) -> Result<JsonReport> {
    Err(Error::Precondition(format!(
        "operation {} is not available for {realization}",
        op.kind()
    )))
}

fn subgroup<G: Group>(
    g: &G,
    values: &[Value],
    parse: &dyn Fn(&Value) -> Result<G::Elem>,
) -> Result<FgSubgroup<G::Elem>> {
    let gens = values.iter().map(parse).collect::<Result<Vec<_>>>()?;
    FgSubgroup::new(g, "H", gens)
}

/// The certificate an operation carries, or `None` for procedures.
fn certificate<G: Group>(
    g: &G,
    op: &Op,
    parse: &dyn Fn(&Value) -> Result<G::Elem>,
) -> Result<Option<WitnessCertificate<G::Elem>>> {
    let list = |vs: &[Value]| vs.iter().map(parse).collect::<Result<Vec<_>>>();
    let sub = |vs: &[Value]| subgroup(g, vs, parse);
    let cert = match op {
        Op::Cc { subject, t } => WitnessCertificate::new(sub(subject)?, Witness::Cc { t: parse(t)? }),
        Op::Cznc { subject, t, n } => WitnessCertificate::new(
            sub(subject)?,
            Witness::Cznc {
                t: parse(t)?,
                n: *n,
            },
        ),
        Op::Czc { subject, t, p_max } => WitnessCertificate::new(
            sub(subject)?,
            Witness::Czc {
                t: parse(t)?,
                p_max: *p_max,
            },
        ),
        Op::Ccc {
            subject,
            t,
            n,
            p_max,
        } => WitnessCertificate::new(
            sub(subject)?,
            Witness::Ccc {
                t: parse(t)?,
                n: match n {
                    CycleSpec::Finite(n) => CycleLength::Finite(*n),
                    CycleSpec::Named(_) => CycleLength::Infinite,
                },
                p_max: *p_max,
            },
        ),
        Op::Binate {
            subject,
            f,
            t,
            relators,
        } => {
            let mut map = GeneratorMap::new(list(f)?);
            if let Some(rel) = relators {
                map = map.with_relators(rel.clone());
            }
            WitnessCertificate::new(sub(subject)?, Witness::Binate { f: map, t: parse(t)? })
        }
        Op::Mitotic { subject, t1, t2 } => WitnessCertificate::new(
            sub(subject)?,
            Witness::Mitotic {
                t1: parse(t1)?,
                t2: parse(t2)?,
            },
        ),
        Op::M {
            lambda,
            t,
            subset,
            s,
            p_max,
        } => {
            let lambda = FgSubgroup::new(g, "Lambda", list(lambda)?)?;
            WitnessCertificate::new(
                lambda.clone(),
                Witness::M {
                    lambda,
                    t: parse(t)?,
                    subset: list(subset)?,
                    s: parse(s)?,
                    p_max: *p_max,
                },
            )
        }
        Op::Dissipator {
            region,
            t,
            sample,
            p_max,
        } => WitnessCertificate::new(
            FgSubgroup::new(g, "sample", list(sample)?)?,
            Witness::Dissipator {
                region: region.clone(),
                t: parse(t)?,
                p_max: *p_max,
            },
        ),
        _ => return Ok(None),
    };
    Ok(Some(cert))
}

/// Verifies a certificate, enumerating `Λ` when an `M` certificate needs
/// membership.
fn verify_enumerated<G: Group>(
    g: &G,
    cert: &WitnessCertificate<G::Elem>,
    budget: u128,
) -> Result<PropertyReport<G::Elem>> {
    let oracle = match &cert.witness {
        Witness::M { lambda, .. } => {
            let budget = usize::try_from(budget).unwrap_or(usize::MAX);
            Some(EnumeratedOracle::new(g, lambda, budget)?)
        }
        _ => None,
    };
    cert.verify_with(g, oracle.as_ref().map(|o| o as &dyn MembershipOracle<G::Elem>))
}

/// Brings every element of an HNN certificate into normal form, so that
/// equality tests inside the checkers compare group elements.
fn normalize_certificate(
    g: &HnnGroup<SymmetricGroup>,
    cert: WitnessCertificate<BrittonWord<Permutation>>,
) -> Result<WitnessCertificate<BrittonWord<Permutation>>> {
    let nf = |w: &BrittonWord<Permutation>| g.normal_form(w);
    let list = |ws: &[BrittonWord<Permutation>]| ws.iter().map(nf).collect::<Result<Vec<_>>>();
    let subject = FgSubgroup::new(g, cert.subject().label.clone(), list(cert.subject().generators())?)?;
    let witness = match cert.witness {
        Witness::Cc { t } => Witness::Cc { t: nf(&t)? },
        Witness::Cznc { t, n } => Witness::Cznc { t: nf(&t)?, n },
        Witness::Czc { t, p_max } => Witness::Czc { t: nf(&t)?, p_max },
        Witness::Ccc { t, n, p_max } => Witness::Ccc { t: nf(&t)?, n, p_max },
        Witness::Binate { f, t } => Witness::Binate {
            f: GeneratorMap {
                images: list(&f.images)?,
                relators: f.relators,
            },
            t: nf(&t)?,
        },
        Witness::Mitotic { t1, t2 } => Witness::Mitotic {
            t1: nf(&t1)?,
            t2: nf(&t2)?,
        },
        Witness::M {
            lambda,
            t,
            subset,
            s,
            p_max,
        } => Witness::M {
            lambda: FgSubgroup::new(g, lambda.label.clone(), list(lambda.generators())?)?,
            t: nf(&t)?,
            subset: list(&subset)?,
            s: nf(&s)?,
            p_max,
        },
        w @ Witness::Dissipator { .. } => w,
    };
    Ok(WitnessCertificate::new(subject, witness))
}

/// A witness-producing operation's report, after checking that an
/// independent re-verification of its certificate agrees.
fn reverified<E: Serialize + PartialEq>(
    again: PropertyReport<E>,
    report: PropertyReport<E>,
) -> Result<JsonReport> {
    if again != report {
        return Err(Error::Precondition(
            "certificate re-verification disagrees with the producing operation".into(),
        ));
    }
    let mut report = to_json(report);
    report.note("certificate re-verified by the generic checker");
    Ok(report)
}

fn zp_search<G: FiniteGroup>(
    g: &G,
    h: &FgSubgroup<G::Elem>,
    p: u64,
    budget: u128,
) -> Result<JsonReport> {
    check_budget("exhaustive witness search", g.order(), budget)?;
    match brute_search_zp_witness(g, h, p)? {
        Some(t) => {
            let cert = WitnessCertificate::new(h.clone(), Witness::Cznc { t, n: p });
            let mut report = cert.verify(g)?;
            report.note(format!("found by exhaustive search of {} elements", g.order()));
            Ok(to_json(report))
        }
        None => {
            let mut report = PropertyReport::new(format!("Z/{p}-witness search"), h.label.clone())
                .bound("elements searched", g.order() as u64);
            report.fail(Failure::new(
                FailureKind::NotFound,
                format!("no element of {} is a commuting Z/{p}-conjugates witness", g.describe()),
            ));
            Ok(report)
        }
    }
}

/// Runs the torsion obstruction for every element; passes when every
/// element fails the commuting Z-conjugates condition at its own order.
fn torsion_sweep<G: FiniteGroup>(g: &G, h: &FgSubgroup<G::Elem>, budget: u128) -> Result<JsonReport> {
    check_budget("torsion sweep", g.order(), budget)?;
    let elements = g.elements(budget)?;
    let bound = u64::try_from(g.order()).unwrap_or(u64::MAX);
    let reports = elements
        .par_iter()
        .map(|t| torsion_obstruction_check(g, h, t, bound))
        .collect::<Result<Vec<_>>>()?;
    let mut report = PropertyReport::new("torsion-sweep", h.label.clone())
        .bound("elements", elements.len() as u64);
    let mut orders = std::collections::BTreeMap::<u64, u64>::new();
    for (t, r) in elements.iter().zip(reports) {
        if r.verdict == Verdict::NotApplicable {
            return Ok(to_json(r));
        }
        if let Some(o) = r.bounds.get("ord(t)") {
            *orders.entry(*o).or_default() += 1;
        }
        if r.is_fail() && report.failure.is_none() {
            report.fail(
                Failure::new(
                    FailureKind::NonCommuting,
                    format!("t = {t} satisfies the condition up to its order"),
                )
                .with_pair(t.clone(), t.clone()),
            );
        }
    }
    for (o, count) in orders {
        report.record(format!("{count} elements of order {o} fail at p <= {o}"));
    }
    Ok(to_json(report))
}

fn check_budget(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: what.into(),
            needed,
            budget,
        });
    }
    Ok(())
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows).expect("square");
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

fn block_conjugation(samples: usize, seed: u64) -> Result<JsonReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gl = GeneralLinear::new(4);
    let mut report = PropertyReport::new("block-conjugation", "GL4(Q)").bound("samples", samples as u64);
    for k in 0..samples {
        let x = random_invertible(2, &mut rng);
        let g = random_invertible(4, &mut rng);
        let full = conj(&gl, &x.direct_sum(&RationalMatrix::identity(2)), &g)?;
        let blocks = block_conjugate(&x, &g)?;
        if full != blocks {
            report.fail(
                Failure::new(FailureKind::Unequal, format!("sample {k}: blockwise and full conjugation differ"))
                    .with_pair(serde_json::to_value(&blocks).unwrap(), serde_json::to_value(&full).unwrap()),
            );
            return Ok(report);
        }
    }
    report.record(format!("{samples} random pairs agree exactly"));
    Ok(report)
}

fn centralizer(expected_dim: usize) -> Result<JsonReport> {
    let gens: Vec<_> = centralizer_test_matrices().iter().map(|m| m.embed(4)).collect();
    let space = centralizer_space(&gens)?;
    let mut report = PropertyReport::new("centralizer", "three test matrices in M4(Q)")
        .bound("dimension", space.dim() as u64);
    if space.dim() != expected_dim {
        report.fail(Failure::new(
            FailureKind::Unequal,
            format!("dimension {} instead of {expected_dim}", space.dim()),
        ));
        return Ok(report);
    }
    for b in space.basis() {
        let m = RationalMatrix::from_vector(4, b.clone())?;
        let scalar_top = m.get(0, 0) == m.get(1, 1) && m.get(0, 1).is_zero() && m.get(1, 0).is_zero();
        let off_diagonal_zero =
            (0..2).all(|i| (2..4).all(|j| m.get(i, j).is_zero() && m.get(j, i).is_zero()));
        if !(scalar_top && off_diagonal_zero) {
            report.fail(
                Failure::new(FailureKind::Unequal, "basis element outside a·I2 ⊕ D")
                    .with_pair(serde_json::to_value(&m).unwrap(), Value::Null),
            );
            return Ok(report);
        }
    }
    report.record(format!("every basis element of the {expected_dim}-dimensional space has shape a·I2 ⊕ D"));
    Ok(report)
}

fn pl_tower(
    tower: &PlTower,
    displace_p_max: u64,
    czc_p_max: u64,
    samples: usize,
    word_length: usize,
    seed: u64,
) -> Result<JsonReport> {
    let depth = tower.depth();
    let mut report = PropertyReport::<PlHomeo>::new("pl-tower", format!("Gamma_{depth}"))
        .bound("displacement powers", displace_p_max)
        .bound("p_max", czc_p_max)
        .bound("samples", samples as u64);
    for i in 1..depth {
        let d = displaces(tower.dissipator(i), &tower.interval(i), displace_p_max)?;
        report.absorb(&format!("t_{} displaces I_{i}", i + 1), d);
        let c = displace_core::checkers::check_czc(&PlGroup, &tower.subgroup(i), tower.dissipator(i), czc_p_max)?;
        report.absorb(&format!("CZC of Gamma_{i} by t_{}", i + 1), c);
    }
    let words = sample_words(&tower.generators(depth), samples, word_length, seed);
    for g in &words {
        let s = g.support();
        let disjoint = s.intervals().windows(2).all(|w| w[0].1 <= w[1].0);
        let finite = s.len() <= g.breakpoints().len();
        if !(disjoint && finite) {
            report.fail(
                Failure::new(FailureKind::NotContained, format!("support {s} is not a finite disjoint union"))
                    .with_pair(g.clone(), g.clone()),
            );
        }
        for i in 1..depth {
            if !satisfies_dichotomy(g, &tower.interval(i)) {
                report.fail(
                    Failure::new(FailureKind::NotInvariant, format!("conjugacy dichotomy fails on I_{i}"))
                        .with_pair(g.clone(), g.clone()),
                );
            }
        }
    }
    report.record(format!(
        "{} sampled words have finite disjoint supports and satisfy the dichotomy",
        words.len()
    ));
    Ok(to_json(report.bounded()))
}

fn fixed_point(samples: usize, seed: u64) -> Result<JsonReport> {
    let h = unique_fixed_point_element();
    let half = q(1, 2);
    let mut report = PropertyReport::new("fixed-point", "centralizer of h").witness("h", h.clone());
    let expected = IntervalSet::new(vec![(qi(0), half.clone()), (half.clone(), qi(1))])?;
    if h.support() != expected {
        report.fail(Failure::new(
            FailureKind::Unequal,
            format!("support of h is {}, not (0, 1/2) ∪ (1/2, 1)", h.support()),
        ));
        return Ok(to_json(report));
    }
    report.record("h fixes 1/2 and moves every other point of (0, 1)");
    for u in centralizing_samples(samples, seed) {
        if u.compose(&h) != h.compose(&u) {
            report.fail(Failure::new(FailureKind::NonCommuting, "sample does not commute with h").with_pair(u, h.clone()));
            return Ok(to_json(report));
        }
        if u.eval(&half) != half {
            report.fail(Failure::new(FailureKind::NotInvariant, "centralizing sample moves 1/2").with_pair(u, h.clone()));
            return Ok(to_json(report));
        }
    }
    report.record(format!("{samples} centralizing samples fix 1/2"));
    Ok(to_json(report.bound("samples", samples as u64)))
}

type Hnn = HnnGroup<SymmetricGroup>;

fn britton(g: &Hnn, max_letters: usize, confluence: usize, seed: u64, budget: u128) -> Result<JsonReport> {
    let gamma = &g.gamma;
    let mut report = PropertyReport::<Value>::new("britton", g.describe())
        .bound("stable letters", max_letters as u64)
        .bound("confluence words", confluence as u64);
    for x in gamma.elements(budget)? {
        let d = g.letter(Letter::D);
        if conj(g, &d, &g.plus(x.clone()))? != g.diagonal(x.clone()) {
            report.fail(Failure::new(FailureKind::Unequal, format!("^d (1, {x}) != ({x}, {x})")));
        }
        if g.letters().contains(&Letter::S) && conj(g, &g.letter(Letter::S), &g.minus(x.clone()))? != g.plus(x.clone()) {
            report.fail(Failure::new(FailureKind::Unequal, format!("^s ({x}, 1) != (1, {x})")));
        }
    }
    report.record("defining relations hold for every g in the base");
    for m in 1..=max_letters {
        let base = (gamma.order() * gamma.order()) as u128;
        let count = base * (base * g.letters().len() as u128).pow(m as u32);
        check_budget("reduced word enumeration", count, budget)?;
        let words = g.reduced_words(m)?;
        let trivial = words
            .par_iter()
            .find_first(|w| matches!(g.represents_identity(w), Ok(true)));
        if let Some(w) = trivial {
            report.fail(Failure::new(FailureKind::Unequal, format!("reduced word {w} is trivial")));
            return Ok(to_json(report));
        }
        report.record(format!("{} reduced words with {m} stable letters are nontrivial", words.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = g.base_group().elements(budget)?;
    for _ in 0..confluence {
        let n = rng.gen_range(0..=6);
        let mut w = BrittonWord {
            bases: vec![bases[rng.gen_range(0..bases.len())].clone()],
            letters: Vec::new(),
        };
        for _ in 0..n {
            w.letters.push(g.letters()[rng.gen_range(0..g.letters().len())]);
            let b = bases[rng.gen_range(0..bases.len())].clone();
            // associated-subgroup elements make pinches likely
            let b = if rng.gen_bool(0.5) {
                match w.letters.last().unwrap() {
                    Letter::D => Pair(b.1.clone(), b.1),
                    Letter::DInv | Letter::S => Pair(gamma.identity(), b.1),
                    Letter::SInv => Pair(b.0, gamma.identity()),
                }
            } else {
                b
            };
            w.bases.push(b);
        }
        let nf = g.normal_form(&w)?;
        let other = g.normal_form(&g.reduce_random_order(&w, &mut rng)?)?;
        if nf != other {
            report.fail(Failure::new(FailureKind::Unequal, format!("{w} reduces to {nf} and {other}")));
            return Ok(to_json(report));
        }
    }
    report.record(format!("{confluence} random words reduce to one normal form in random order"));
    Ok(to_json(report))
}

fn bass_serre(g: &Hnn, radius: usize) -> Result<JsonReport> {
    let mut report = PropertyReport::<Value>::new("bass-serre", g.describe()).bound("radius", radius as u64);
    for x in g.gamma.elements(u128::MAX)?.into_iter().skip(1) {
        let fixed = g.bass_serre_fixed_vertices(&g.minus(x.clone()), radius)?;
        if fixed.len() != 1 || fixed[0].distance() != 0 {
            report.fail(Failure::new(
                FailureKind::NotInvariant,
                format!("({x}, 1) fixes {} vertices within radius {radius}", fixed.len()),
            ));
        }
        let diag = g.bass_serre_fixed_vertices(&g.diagonal(x.clone()), 1)?;
        if diag.len() < 2 {
            report.fail(Failure::new(
                FailureKind::NotInvariant,
                format!("({x}, {x}) fixes only {} vertex at radius 1", diag.len()),
            ));
        }
    }
    report.record(format!("every nontrivial (g, 1) fixes only the base vertex within radius {radius}"));
    report.record("every nontrivial (h, h) fixes at least 2 vertices within radius 1");
    Ok(to_json(report))
}

fn fixed_edges(g: &Hnn, radius: usize) -> Result<JsonReport> {
    let gens = g.gamma.standard_generators().into_iter().map(|x| g.minus(x)).collect();
    let h = FgSubgroup::new(g, "Gamma_-", gens)?;
    let mut report = PropertyReport::<BrittonWord<Permutation>>::new("fixed-edges", h.label.clone());
    let mut prev = 0;
    for r in 1..=radius {
        let n = g.fixed_edge_count(&h, r)?;
        report.record(format!("{n} fixed edges within radius {r}"));
        if n < prev {
            report.fail(Failure::new(FailureKind::Unequal, format!("count drops at radius {r}")));
        }
        prev = n;
    }
    if prev == 0 {
        report.fail(Failure::new(FailureKind::NotFound, "no fixed edge"));
    }
    Ok(to_json(report.bound("radius", radius as u64).bound("fixed edges", prev as u64)))
}

fn cc_search(gamma: &SymmetricGroup, max_letters: usize) -> Result<JsonReport> {
    let search = cc_witness_search_b1(gamma, &gamma.standard_generators(), max_letters)?;
    let examined = search.words_examined();
    match search.witness {
        Some(t) => {
            let b = HnnGroup::binate(gamma.clone());
            let h = FgSubgroup::new(&b, "Gamma_-", gamma.standard_generators().into_iter().map(|x| b.minus(x)).collect())?;
            let cert = WitnessCertificate::new(h, Witness::Cc { t });
            Ok(to_json(cert.verify(&b)?))
        }
        None => {
            let mut report = PropertyReport::<Value>::new("CC search", "Gamma_-")
                .bound("stable letters", max_letters as u64)
                .bound("words examined", examined as u64);
            for (m, n) in search.words_per_length.iter().enumerate() {
                report.record(format!("{n} reduced words with {m} stable letters"));
            }
            report.fail(Failure::new(
                FailureKind::NotFound,
                format!("no t with at most {max_letters} stable letters has [Gamma_-, ^t Gamma_-] = 1"),
            ));
            Ok(report)
        }
    }
}
