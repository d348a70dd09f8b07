//! The verification suite: a registry of structural statements checked
//! against brute-force oracles over generated instance families.
//!
//! Every statement this crate's constructions rely on — circuit flips,
//! conservativeness, the cut and path theorems, extreme levels, the
//! equal-distance partition, critical sets, the root gadget, and the
//! capital-component structure — is an executable check here. A check
//! runs on one instance, quantifies over every root and every
//! brute-force minimum join its statement mentions, and reports pass,
//! fail with a replayable witness, or skipped with the cap it hit.

mod checks;
pub mod generate;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::Error;
use crate::graph::VertexSet;
use crate::join::Graft;

use checks::{Context, Flaw};
pub use checks::oracle_audit;
pub use generate::{
    enumerate_grafts, random_graft, GeneratorKind, InstanceSpec, TerminalPolicy,
};

// ======================================================================
// The check registry
// ======================================================================

/// One statement of the registry. The order of `ALL` is the reporting
/// order everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    /// Distance equals the join-number difference of the toggled graft,
    /// in the orientation that the single-edge graft pins down.
    Fact1Sign,
    /// Flipping a zero-weight circuit preserves minimality, and every
    /// edge of such a circuit is allowed.
    CircuitFlip,
    /// A join is minimum exactly when its weighting has no negative
    /// circuit.
    Conservative,
    /// Factor-connected grafts have nonpositive distances everywhere.
    FcNonpos,
    /// Adjacent vertices sit on adjacent levels.
    AdjStep,
    /// A component's cut meets the join once — or not at all when the
    /// component holds the root.
    CutParity,
    /// How shortest paths cross component cuts: the four cases.
    PathCut,
    /// Rootless components induce primal subgrafts, and distance adds up
    /// through their entry vertex.
    PrimalSub,
    /// "Same factor component and distance zero" is an equivalence
    /// relation, and the partition operation returns exactly it.
    KlEquiv,
    /// The top level of every component is extreme, both inside the
    /// induced subgraft and in the whole graft.
    LevelExtreme,
    /// Round ear paths have nonnegative weight; weight zero pins an end
    /// to the component's entry vertex.
    EarNonneg,
    /// Round ear paths at a component holding the root weigh at least 2.
    EarCapital,
    /// Zero-part vertices are distance-minimal roots.
    AMin,
    /// Equal-class vertices have identical distance profiles.
    UnitDist,
    /// The initial component splits into classes and their critical
    /// sets.
    Icomp,
    /// The negative-set fixpoint equals the component-adjacency route to
    /// critical sets, for every root and minimum join.
    CoupEq,
    /// Non-allowed edges join vertices at distance exactly 1.
    NonallowedOne,
    /// The gadget's minimum joins are exactly the lifted ones, and its
    /// root measures root-set distances.
    RootlizeJoin,
    /// The gadget adds one factor component, never shrinks distances,
    /// refines classes, and shifts layers as stated.
    RootlizeSim,
    /// One-color mounts decompose like single roots.
    Homog,
    /// The containment/union/disjointness battery across roots and
    /// mounts.
    Monotone,
    /// Mixed mounts: the per-color-side parts are disjoint, sit inside
    /// the whole-mount parts, and carry the one-color structure.
    Hetero,
    /// Frontier vertices keep positive distance to a capital component's
    /// outside neighbors.
    NeighPosi,
    /// The next capital component is the frontier neighborhood's initial
    /// structure.
    Hinitial,
    /// Per-level class decomposition of capital components.
    Capital,
}

impl CheckId {
    /// Registry order; also the reporting order.
    pub const ALL: [CheckId; 25] = [
        CheckId::Fact1Sign,
        CheckId::CircuitFlip,
        CheckId::Conservative,
        CheckId::FcNonpos,
        CheckId::AdjStep,
        CheckId::CutParity,
        CheckId::PathCut,
        CheckId::PrimalSub,
        CheckId::KlEquiv,
        CheckId::LevelExtreme,
        CheckId::EarNonneg,
        CheckId::EarCapital,
        CheckId::AMin,
        CheckId::UnitDist,
        CheckId::Icomp,
        CheckId::CoupEq,
        CheckId::NonallowedOne,
        CheckId::RootlizeJoin,
        CheckId::RootlizeSim,
        CheckId::Homog,
        CheckId::Monotone,
        CheckId::Hetero,
        CheckId::NeighPosi,
        CheckId::Hinitial,
        CheckId::Capital,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckId::Fact1Sign => "fact1-sign",
            CheckId::CircuitFlip => "circuit-flip",
            CheckId::Conservative => "conservative",
            CheckId::FcNonpos => "fc-nonpos",
            CheckId::AdjStep => "adj-step",
            CheckId::CutParity => "cut-parity",
            CheckId::PathCut => "path-cut",
            CheckId::PrimalSub => "primal-sub",
            CheckId::KlEquiv => "kl-equiv",
            CheckId::LevelExtreme => "level-extreme",
            CheckId::EarNonneg => "ear-nonneg",
            CheckId::EarCapital => "ear-capital",
            CheckId::AMin => "a-min",
            CheckId::UnitDist => "unit-dist",
            CheckId::Icomp => "icomp",
            CheckId::CoupEq => "coup-eq",
            CheckId::NonallowedOne => "nonallowed-one",
            CheckId::RootlizeJoin => "rootlize-join",
            CheckId::RootlizeSim => "rootlize-sim",
            CheckId::Homog => "homog",
            CheckId::Monotone => "monotone",
            CheckId::Hetero => "hetero",
            CheckId::NeighPosi => "neigh-posi",
            CheckId::Hinitial => "hinitial",
            CheckId::Capital => "capital",
        }
    }

    pub fn from_id(s: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.id() == s)
    }

    fn run(self, cx: &Context) -> Result<(), Flaw> {
        match self {
            CheckId::Fact1Sign => checks::fact1_sign(cx),
            CheckId::CircuitFlip => checks::circuit_flip(cx),
            CheckId::Conservative => checks::conservative(cx),
            CheckId::FcNonpos => checks::fc_nonpos(cx),
            CheckId::AdjStep => checks::adj_step(cx),
            CheckId::CutParity => checks::cut_parity(cx),
            CheckId::PathCut => checks::path_cut(cx),
            CheckId::PrimalSub => checks::primal_sub(cx),
            CheckId::KlEquiv => checks::kl_equiv(cx),
            CheckId::LevelExtreme => checks::level_extreme(cx),
            CheckId::EarNonneg => checks::ear_nonneg(cx),
            CheckId::EarCapital => checks::ear_capital(cx),
            CheckId::AMin => checks::a_min(cx),
            CheckId::UnitDist => checks::unit_dist(cx),
            CheckId::Icomp => checks::icomp(cx),
            CheckId::CoupEq => checks::coup_eq(cx),
            CheckId::NonallowedOne => checks::nonallowed_one(cx),
            CheckId::RootlizeJoin => checks::rootlize_join(cx),
            CheckId::RootlizeSim => checks::rootlize_sim(cx),
            CheckId::Homog => checks::homog(cx),
            CheckId::Monotone => checks::monotone(cx),
            CheckId::Hetero => checks::hetero(cx),
            CheckId::NeighPosi => checks::neigh_posi(cx),
            CheckId::Hinitial => checks::hinitial(cx),
            CheckId::Capital => checks::capital(cx),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parses a comma-separated check list, e.g. `"fact1-sign,cut-parity"`.
pub fn parse_check_list(s: &str) -> Result<Vec<CheckId>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            CheckId::from_id(part).ok_or_else(|| format!("unknown check id `{part}`"))
        })
        .collect()
}

// ======================================================================
// Reports
// ======================================================================

/// Everything needed to replay a failure by hand: the instance as a
/// parseable document and the quantifier point that broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The instance in document form (feed it back through the CLI).
    pub instance: String,
    /// Which root / join / component the statement failed at, and how.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Skipped(String),
}

/// The outcome of one check on one instance.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: CheckId,
    /// FNV-1a hash of the instance document, for cross-referencing runs.
    pub digest: u64,
    pub verdict: Verdict,
    /// Wall-clock time; excluded from rendered summaries so that equal
    /// runs stay byte-identical.
    pub millis: u64,
}

/// Runs one check alone. Building the shared per-instance state
/// dominates at small sizes, so prefer [`run_checks`] for more than one.
pub fn run_check(gt: &Graft, check: CheckId) -> CheckReport {
    run_checks(gt, &[check]).pop().expect("one check in, one report out")
}

/// Runs the given checks on one instance with shared cached state.
pub fn run_checks(gt: &Graft, checks: &[CheckId]) -> Vec<CheckReport> {
    let (text, digest) = checks::render_instance(gt);
    match Context::new(gt) {
        Ok(cx) => checks
            .iter()
            .map(|&check| {
                let start = Instant::now();
                let verdict = match check.run(&cx) {
                    Ok(()) => Verdict::Pass,
                    Err(Flaw::Fail(detail)) => Verdict::Fail(Witness {
                        instance: text.clone(),
                        detail,
                    }),
                    Err(Flaw::Skip(reason)) => Verdict::Skipped(reason),
                };
                CheckReport {
                    check,
                    digest,
                    verdict,
                    millis: start.elapsed().as_millis() as u64,
                }
            })
            .collect(),
        Err(flaw) => checks
            .iter()
            .map(|&check| CheckReport {
                check,
                digest,
                verdict: match &flaw {
                    Flaw::Fail(detail) => Verdict::Fail(Witness {
                        instance: text.clone(),
                        detail: detail.clone(),
                    }),
                    Flaw::Skip(reason) => Verdict::Skipped(reason.clone()),
                },
                millis: 0,
            })
            .collect(),
    }
}

// ======================================================================
// Suite runner
// ======================================================================

/// Aggregated outcomes of one check over a whole family.
#[derive(Clone, Debug)]
pub struct CheckTotals {
    pub check: CheckId,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Distinct skip reasons with their multiplicities.
    pub skip_reasons: BTreeMap<String, usize>,
    /// The failure of the earliest instance in generation order.
    pub first_failure: Option<Witness>,
}

impl CheckTotals {
    fn new(check: CheckId) -> Self {
        CheckTotals {
            check,
            pass: 0,
            fail: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
            first_failure: None,
        }
    }

    fn absorb_report(&mut self, report: CheckReport) {
        match report.verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail(witness) => {
                self.fail += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(witness);
                }
            }
            Verdict::Skipped(reason) => {
                self.skipped += 1;
                *self.skip_reasons.entry(reason).or_insert(0) += 1;
            }
        }
    }

    fn absorb(&mut self, other: CheckTotals) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.skipped += other.skipped;
        for (reason, count) in other.skip_reasons {
            *self.skip_reasons.entry(reason).or_insert(0) += count;
        }
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

/// The merged result of a suite run. Rendering excludes wall-clock
/// fields, so two runs of the same spec produce identical text.
#[derive(Clone, Debug)]
pub struct SuiteSummary {
    pub instances: usize,
    pub totals: Vec<CheckTotals>,
    pub millis: u64,
}

impl SuiteSummary {
    pub fn failures(&self) -> usize {
        self.totals.iter().map(|t| t.fail).sum()
    }

    /// Deterministic text form: one line per check plus first-failure
    /// witnesses.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("instances: {}\n", self.instances));
        for t in &self.totals {
            out.push_str(&format!(
                "{:<15} pass {:>7}  fail {:>3}  skipped {:>5}\n",
                t.check.id(),
                t.pass,
                t.fail,
                t.skipped
            ));
            for (reason, count) in &t.skip_reasons {
                out.push_str(&format!("{:<15}   skip reason ({count}): {reason}\n", ""));
            }
        }
        for t in &self.totals {
            if let Some(w) = &t.first_failure {
                out.push_str(&format!(
                    "\nFAILED {}: {}\nwitness instance:\n{}",
                    t.check.id(),
                    w.detail,
                    w.instance
                ));
            }
        }
        out
    }
}

fn unit_totals(checks: &[CheckId], reports: Vec<CheckReport>) -> Vec<CheckTotals> {
    let mut totals: Vec<CheckTotals> = checks.iter().map(|&c| CheckTotals::new(c)).collect();
    for report in reports {
        let slot = totals
            .iter_mut()
            .find(|t| t.check == report.check)
            .expect("reports only for requested checks");
        slot.absorb_report(report);
    }
    totals
}

/// Runs the checks over the whole family described by `spec`. Instances
/// are processed in parallel; partial results are merged back in
/// generation order, so the summary is independent of scheduling.
pub fn run_suite(spec: &InstanceSpec, checks: &[CheckId]) -> Result<SuiteSummary, Error> {
    let start = Instant::now();
    let units: Vec<(usize, Vec<CheckTotals>)> = match spec.kind {
        GeneratorKind::Enumerate => {
            let graphs = generate::enumerate_graphs(spec)?;
            graphs
                .par_iter()
                .map(|g| {
                    let mut unit: Option<Vec<CheckTotals>> = None;
                    let mut count = 0usize;
                    for t in generate::even_terminal_sets(g.vertex_count()) {
                        let gt = Graft::new(g.clone(), t)
                            .expect("even subsets satisfy parity");
                        let totals = unit_totals(checks, run_checks(&gt, checks));
                        match &mut unit {
                            None => unit = Some(totals),
                            Some(acc) => {
                                for (a, b) in acc.iter_mut().zip(totals) {
                                    a.absorb(b);
                                }
                            }
                        }
                        count += 1;
                    }
                    (
                        count,
                        unit.unwrap_or_else(|| {
                            checks.iter().map(|&c| CheckTotals::new(c)).collect()
                        }),
                    )
                })
                .collect()
        }
        GeneratorKind::Random => (0..spec.count)
            .into_par_iter()
            .map(|i| {
                let gt = generate::random_graft(spec, i);
                (1, unit_totals(checks, run_checks(&gt, checks)))
            })
            .collect(),
    };

    let mut totals: Vec<CheckTotals> = checks.iter().map(|&c| CheckTotals::new(c)).collect();
    let mut instances = 0usize;
    for (count, unit) in units {
        instances += count;
        for (a, b) in totals.iter_mut().zip(unit) {
            a.absorb(b);
        }
    }
    Ok(SuiteSummary {
        instances,
        totals,
        millis: start.elapsed().as_millis() as u64,
    })
}

// ======================================================================
// Capital component chains
// ======================================================================

/// One step of the chain: the capital component at `index`, its outside
/// neighborhood, and the verified structure of the next capital
/// component above it.
#[derive(Clone, Debug)]
pub struct CapitalStep {
    pub index: i64,
    /// Capital component at `index`.
    pub capital: VertexSet,
    /// Capital component at `index + 1`.
    pub next_capital: VertexSet,
    /// Outside neighbors of the capital component — the roots of the
    /// step's structure.
    pub frontier: VertexSet,
    /// Level-(index+1) part of the next capital component; equals the
    /// frontier's zero part.
    pub zero_part: VertexSet,
    /// The rest of the growth; equals the frontier's negative part.
    pub negative_part: VertexSet,
    /// Class decomposition of the zero part with critical sets.
    pub atlases: Vec<crate::decomposition::ClassAtlas>,
}

/// The verified ladder of capital components above the root.
#[derive(Clone, Debug)]
pub struct CapitalChain {
    pub root: usize,
    pub steps: Vec<CapitalStep>,
}

/// Climbs the capital components from level 0 to the top, verifying at
/// each step that the growth is exactly the frontier neighborhood's
/// initial structure: the new level is the frontier's zero part, the
/// rest its negative part, and the zero part decomposes into classes
/// with their critical sets.
pub fn capital_chain(gt: &Graft, root: usize) -> Result<CapitalChain, Error> {
    let w = gt.minimum_weighting()?;
    let profile = gt.profile(&w, root)?;
    let family = profile.components(gt.graph());
    let g = gt.graph();
    let mut steps = Vec::new();
    for index in 0..profile.max_level() {
        let capital = family
            .capital_component(index)
            .expect("levels from 0 up hold the root");
        let next_capital = family
            .capital_component(index + 1)
            .expect("levels up to the maximum exist");
        let frontier = g.neighbors(capital);
        if let Some((u, v, d)) = gt.extreme_violation(&w, frontier)? {
            return Err(Error::StructureViolation {
                detail: format!(
                    "frontier of the capital component at level {index} is not extreme: \
                     distance({u}, {v}) = {d}"
                ),
            });
        }
        let zero_part = next_capital.intersection(profile.level(index + 1));
        let negative_part = next_capital
            .difference(capital)
            .difference(profile.level(index + 1));
        let rp = gt.root_set_profile(&w, frontier)?;
        if rp.zero_part() != zero_part || rp.negative_part() != negative_part {
            return Err(Error::StructureViolation {
                detail: format!(
                    "capital growth at level {index} is not the frontier's initial \
                     structure: expected zero {:?} / negative {:?}, frontier gives \
                     {:?} / {:?}",
                    zero_part,
                    negative_part,
                    rp.zero_part(),
                    rp.negative_part()
                ),
            });
        }
        let (side_a, _) = g.bipartition()?;
        let atlases = if frontier.is_subset(side_a) || frontier.is_disjoint(side_a) {
            gt.homogeneous_structure(frontier)?.atlases
        } else {
            gt.heterogeneous_structure(frontier)?.atlases
        };
        steps.push(CapitalStep {
            index,
            capital,
            next_capital,
            frontier,
            zero_part,
            negative_part,
            atlases,
        });
    }
    Ok(CapitalChain { root, steps })
}

/// FNV-1a, the 64-bit variant; used for instance digests.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
