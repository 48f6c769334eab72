//! Isomorph-free exhaustive search over spherical k-regular maps with
//! constrained face degrees, plus the two survey harnesses built on it:
//! a nonexistence sweep for single-disparate-face profiles and an
//! equal-degrees audit of every two-disparate-face class at small vertex
//! counts.
//!
//! A task expands into independent cells, one per candidate vertex count
//! (and disparate degree, where one is fixed). Cells that already violate
//! a counting identity are pruned arithmetically and recorded with the
//! violated identity; the rest run the backtracking enumerator. Cells are
//! processed in parallel but reported in construction order with classes
//! sorted by canonical code, so reports are deterministic for any worker
//! count. A cell stopped by its node or time budget is marked
//! [`CellStatus::Unknown`]; only completed cells count as evidence of
//! nonexistence.

mod cell;
pub mod oracle;

pub use oracle::{brute_force_oracle, OracleError};

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num::{BigInt, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{
    admissible_pairs, feasibility_check, vertices_for_one_disparate, Feasibility, Rational,
    Signature,
};
use crate::families::{generate_family, FamilyId};
use crate::io::report::{CellRecord, CellStatus, ReportDocument, WitnessRecord};
use crate::planar_map::{CanonicalCode, PlanarMap};
use cell::{run_cell, Allowed, CellConfig, CellMode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid search task: {0}")]
    InvalidTask(String),
}

/// Per-cell resource limits. Zero seconds means no time limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_seconds: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 100_000_000, max_seconds: 300 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX, max_seconds: 0 }
    }

    fn time_limit(self) -> Option<Duration> {
        (self.max_seconds > 0).then(|| Duration::from_secs(self.max_seconds))
    }
}

/// What the disparate faces of an [`FaceConstraint::Exact`] task may be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisparateDegrees {
    /// Each disparate face degree must come from this list.
    Fixed(Vec<usize>),
    /// Any degree at least 3 other than the common one.
    AnyOtherThanCommon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceConstraint {
    /// Exactly `disparate_count` faces deviate from the common degree.
    Exact {
        common_degree: usize,
        disparate_count: usize,
        disparate_degrees: DisparateDegrees,
    },
    /// Two distinguished faces of arbitrary degree — possibly equal to the
    /// common degree — with every other face at the common degree. Unlike
    /// `Exact` with two disparate faces, this also reaches the classes
    /// where one or both distinguished faces collapse into the common
    /// degree.
    TwoDesignated { common_degree: usize },
    /// Everything spherical and k-regular; used for oracle cross-checks.
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    pub k: usize,
    pub constraint: FaceConstraint,
    pub v_max: usize,
    pub budget: Budget,
    /// Cut branches whose single fixed disparate face closes as a cycle
    /// with a chord. Only applied to cells with exactly one disparate
    /// face, where the cut is justified; elsewhere it is ignored.
    pub chord_pruning: bool,
}

/// One isomorphism class found by a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundClass {
    pub map: PlanarMap,
    pub code: CanonicalCode,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub k: usize,
    pub d2: Option<usize>,
    pub d1: Option<usize>,
    pub v: usize,
    pub status: CellStatus,
    pub nodes: u64,
    /// Sorted by canonical code.
    pub classes: Vec<FoundClass>,
    /// Why the cell was settled without search, when it was.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub cells: Vec<CellReport>,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn total_classes(&self) -> usize {
        self.cells.iter().map(|c| c.classes.len()).sum()
    }

    pub fn any_unknown(&self) -> bool {
        self.cells.iter().any(|c| c.status == CellStatus::Unknown)
    }

    pub fn codes(&self) -> BTreeSet<CanonicalCode> {
        self.cells
            .iter()
            .flat_map(|c| c.classes.iter().map(|f| f.code.clone()))
            .collect()
    }

    pub fn to_document(&self, task: impl Into<String>, parameters: serde_json::Value) -> ReportDocument {
        let cells = self
            .cells
            .iter()
            .map(|c| CellRecord {
                k: c.k,
                d2: c.d2,
                d1: c.d1,
                v: c.v,
                class_count: c.classes.len(),
                status: c.status,
                nodes_explored: c.nodes,
                witnesses: c.classes.iter().map(|f| WitnessRecord::of_map(&f.map)).collect(),
                note: c.note.clone(),
            })
            .collect();
        ReportDocument::new(task, parameters, cells, self.elapsed.as_millis() as u64)
    }
}

struct CellPlan {
    k: usize,
    d2: Option<usize>,
    d1: Option<usize>,
    v: usize,
    action: PlanAction,
}

enum PlanAction {
    Run { mode: CellMode, chord: bool },
    /// Settled arithmetically; the note names the violated identity.
    Skip { note: String },
}

fn run_plans(plans: Vec<CellPlan>, budget: Budget) -> Vec<CellReport> {
    plans
        .into_par_iter()
        .map(|plan| match plan.action {
            PlanAction::Skip { note } => CellReport {
                k: plan.k,
                d2: plan.d2,
                d1: plan.d1,
                v: plan.v,
                status: CellStatus::Complete,
                nodes: 0,
                classes: Vec::new(),
                note: Some(note),
            },
            PlanAction::Run { mode, chord } => {
                let outcome = run_cell(&CellConfig {
                    k: plan.k,
                    v: plan.v,
                    mode,
                    max_nodes: budget.max_nodes,
                    time_limit: budget.time_limit(),
                    chord_pruning: chord,
                });
                let classes = outcome
                    .classes
                    .into_iter()
                    .map(|(map, code)| {
                        let signature =
                            Signature::of_map(&map).expect("search output is regular");
                        FoundClass { map, code, signature }
                    })
                    .collect();
                CellReport {
                    k: plan.k,
                    d2: plan.d2,
                    d1: plan.d1,
                    v: plan.v,
                    status: if outcome.complete {
                        CellStatus::Complete
                    } else {
                        CellStatus::Unknown
                    },
                    nodes: outcome.nodes,
                    classes,
                    note: None,
                }
            }
        })
        .collect()
}

fn validate(task: &SearchTask) -> Result<(), SearchError> {
    if task.k < 3 {
        return Err(SearchError::InvalidTask(format!(
            "regularity {} is below 3",
            task.k
        )));
    }
    if task.v_max > 255 {
        return Err(SearchError::InvalidTask(
            "vertex counts above 255 are unsupported".to_string(),
        ));
    }
    match &task.constraint {
        FaceConstraint::Exact { common_degree, disparate_count, disparate_degrees } => {
            let pairs = admissible_pairs(*disparate_count).map_err(|e| {
                SearchError::InvalidTask(e.to_string())
            })?;
            if !pairs.contains(&(task.k, *common_degree)) {
                return Err(SearchError::InvalidTask(format!(
                    "({}, {}) is not an admissible pair",
                    task.k, common_degree
                )));
            }
            if let DisparateDegrees::Fixed(list) = disparate_degrees {
                if *disparate_count > 0 && list.is_empty() {
                    return Err(SearchError::InvalidTask(
                        "disparate faces requested but the degree list is empty".to_string(),
                    ));
                }
                for &d in list {
                    if d < 3 || d == *common_degree {
                        return Err(SearchError::InvalidTask(format!(
                            "disparate degree {d} is not a valid deviation from {common_degree}"
                        )));
                    }
                }
            }
        }
        FaceConstraint::TwoDesignated { common_degree } => {
            let pairs = admissible_pairs(2).expect("two disparate faces are supported");
            if !pairs.contains(&(task.k, *common_degree)) {
                return Err(SearchError::InvalidTask(format!(
                    "({}, {}) is not an admissible pair",
                    task.k, common_degree
                )));
            }
        }
        FaceConstraint::Unconstrained => {}
    }
    if task.v_max < task.k + 1 {
        return Err(SearchError::InvalidTask(format!(
            "v_max {} admits no simple {}-regular graph",
            task.v_max, task.k
        )));
    }
    Ok(())
}

fn plan_cells(task: &SearchTask) -> Vec<CellPlan> {
    let k = task.k;
    let mut plans = Vec::new();
    for v in (k + 1)..=task.v_max {
        if (k * v) % 2 == 1 {
            // Only worth a row where the sweep would otherwise search.
            if !matches!(task.constraint, FaceConstraint::Unconstrained) {
                plans.push(CellPlan {
                    k,
                    d2: constraint_d2(&task.constraint),
                    d1: None,
                    v,
                    action: PlanAction::Skip { note: "degree sum kv is odd".to_string() },
                });
            } else {
                plans.push(CellPlan {
                    k,
                    d2: None,
                    d1: None,
                    v,
                    action: PlanAction::Skip { note: "degree sum kv is odd".to_string() },
                });
            }
            continue;
        }
        let e = k * v / 2;
        let f = e + 2 - v;
        match &task.constraint {
            FaceConstraint::Unconstrained => {
                plans.push(CellPlan {
                    k,
                    d2: None,
                    d1: None,
                    v,
                    action: PlanAction::Run {
                        mode: CellMode::Free {
                            f_target: f,
                            chain_cap: 2 * e - 3 * (f - 1),
                        },
                        chord: false,
                    },
                });
            }
            FaceConstraint::TwoDesignated { common_degree: d2 } => {
                plans.push(designated_plan(k, *d2, v));
            }
            FaceConstraint::Exact { common_degree: d2, disparate_count: f1, disparate_degrees } => {
                plans.extend(exact_plans(task, *d2, *f1, disparate_degrees, v, e, f));
            }
        }
    }
    plans
}

fn constraint_d2(constraint: &FaceConstraint) -> Option<usize> {
    match constraint {
        FaceConstraint::Exact { common_degree, .. }
        | FaceConstraint::TwoDesignated { common_degree } => Some(*common_degree),
        FaceConstraint::Unconstrained => None,
    }
}

/// Plan for one two-designated-faces cell: f−2 faces of the common degree
/// plus two faces sharing a degree budget of S = 2e − (f−2)d₂.
fn designated_plan(k: usize, d2: usize, v: usize) -> CellPlan {
    let e = k * v / 2;
    let f = e + 2 - v;
    let mandatory = f.saturating_sub(2);
    let s = (2 * e) as i64 - (mandatory * d2) as i64;
    let action = if f < 2 {
        PlanAction::Skip { note: format!("only {f} faces available for two designated ones") }
    } else if s < 6 {
        PlanAction::Skip {
            note: format!("designated faces would share a degree budget of {s}, below 3+3"),
        }
    } else {
        PlanAction::Run {
            mode: CellMode::Designated {
                d2,
                d2_count: mandatory,
                free_cap: s as usize - 3,
            },
            chord: false,
        }
    };
    CellPlan { k, d2: Some(d2), d1: None, v, action }
}

fn exact_plans(
    task: &SearchTask,
    d2: usize,
    f1: usize,
    degrees: &DisparateDegrees,
    v: usize,
    e: usize,
    f: usize,
) -> Vec<CellPlan> {
    let k = task.k;
    if f1 > f {
        return vec![CellPlan {
            k,
            d2: Some(d2),
            d1: None,
            v,
            action: PlanAction::Skip {
                note: format!("{f1} disparate faces requested but only {f} faces exist"),
            },
        }];
    }
    if f1 == 0 {
        let sig = Signature::new(k, [(d2, f)]).expect("face degrees are at least 3");
        let action = match feasibility_check(&sig, v) {
            Feasibility::Feasible => PlanAction::Run {
                mode: CellMode::Exact {
                    d2,
                    d2_count: f,
                    pinned: None,
                    extra_count: 0,
                    extra: Allowed::Fixed(Vec::new()),
                },
                chord: false,
            },
            Feasibility::Infeasible(reason) => PlanAction::Skip { note: reason.to_string() },
        };
        return vec![CellPlan { k, d2: Some(d2), d1: None, v, action }];
    }
    match degrees {
        DisparateDegrees::Fixed(list) => {
            let allowed: BTreeSet<usize> = list.iter().copied().collect();
            if allowed.len() == 1 {
                // A single permitted degree fixes the whole face vector, so
                // the full identity screen applies.
                let d1 = *allowed.iter().next().unwrap();
                let sig = Signature::new(k, [(d1, f1), (d2, f - f1)])
                    .expect("validated degrees are at least 3");
                let action = match feasibility_check(&sig, v) {
                    Feasibility::Feasible => PlanAction::Run {
                        mode: CellMode::Exact {
                            d2,
                            d2_count: f - f1,
                            pinned: Some(Allowed::Fixed(vec![d1])),
                            extra_count: f1 - 1,
                            extra: Allowed::Fixed(vec![d1]),
                        },
                        chord: task.chord_pruning && f1 == 1,
                    },
                    Feasibility::Infeasible(reason) => {
                        PlanAction::Skip { note: reason.to_string() }
                    }
                };
                vec![CellPlan { k, d2: Some(d2), d1: Some(d1), v, action }]
            } else {
                let list: Vec<usize> = allowed.into_iter().collect();
                vec![CellPlan {
                    k,
                    d2: Some(d2),
                    d1: None,
                    v,
                    action: PlanAction::Run {
                        mode: CellMode::Exact {
                            d2,
                            d2_count: f - f1,
                            pinned: Some(Allowed::Fixed(list.clone())),
                            extra_count: f1 - 1,
                            extra: Allowed::Fixed(list),
                        },
                        chord: false,
                    },
                }]
            }
        }
        DisparateDegrees::AnyOtherThanCommon => {
            // The disparate degrees must sum to exactly
            // S = 2e − (f − f1)·d2, each being at least 3.
            let s = (2 * e) as i64 - ((f - f1) * d2) as i64;
            if s < (3 * f1) as i64 {
                return vec![CellPlan {
                    k,
                    d2: Some(d2),
                    d1: None,
                    v,
                    action: PlanAction::Skip {
                        note: format!(
                            "disparate degrees would sum to {s}, below 3 per face"
                        ),
                    },
                }];
            }
            let s = s as usize;
            if f1 == 1 {
                // One disparate face: its degree is forced outright.
                let action = if s == d2 {
                    PlanAction::Skip {
                        note: format!(
                            "the forced disparate degree {s} equals the common degree"
                        ),
                    }
                } else {
                    let sig = Signature::new(k, [(s, 1), (d2, f - 1)])
                        .expect("degrees are at least 3");
                    match feasibility_check(&sig, v) {
                        Feasibility::Feasible => PlanAction::Run {
                            mode: CellMode::Exact {
                                d2,
                                d2_count: f - 1,
                                pinned: Some(Allowed::Fixed(vec![s])),
                                extra_count: 0,
                                extra: Allowed::Fixed(Vec::new()),
                            },
                            chord: task.chord_pruning,
                        },
                        Feasibility::Infeasible(reason) => {
                            PlanAction::Skip { note: reason.to_string() }
                        }
                    }
                };
                vec![CellPlan { k, d2: Some(d2), d1: Some(s), v, action }]
            } else {
                let cap = s - 3 * (f1 - 1);
                let allowed = Allowed::AnyExcept { forbidden: d2, cap };
                vec![CellPlan {
                    k,
                    d2: Some(d2),
                    d1: None,
                    v,
                    action: PlanAction::Run {
                        mode: CellMode::Exact {
                            d2,
                            d2_count: f - f1,
                            pinned: Some(allowed.clone()),
                            extra_count: f1 - 1,
                            extra: allowed,
                        },
                        chord: false,
                    },
                }]
            }
        }
    }
}

/// Expands a task into cells, prunes the arithmetically impossible ones,
/// and searches the rest exhaustively within the budget.
pub fn enumerate(task: &SearchTask) -> Result<SearchReport, SearchError> {
    validate(task)?;
    let start = Instant::now();
    let cells = run_plans(plan_cells(task), task.budget);
    Ok(SearchReport { cells, elapsed: start.elapsed() })
}

/// Desk-scale vertex ceilings for the one-disparate-face sweep, per
/// admissible pair.
pub fn desk_scale_bounds() -> BTreeMap<(usize, usize), usize> {
    BTreeMap::from([
        ((3, 3), 14),
        ((3, 4), 12),
        ((3, 5), 14),
        ((4, 3), 12),
        ((5, 3), 16),
    ])
}

/// Sweeps every single-disparate-face profile with forced vertex count up
/// to the given ceiling for each admissible pair, recording arithmetically
/// pruned profiles alongside searched ones. Completed cells with zero
/// classes across the board verify nonexistence at this scale.
pub fn verify_theorem_one_disparate(
    bounds: &BTreeMap<(usize, usize), usize>,
    budget: Budget,
    chord_pruning: bool,
) -> Result<SearchReport, SearchError> {
    let pairs = admissible_pairs(1).expect("one disparate face is supported");
    for pair in bounds.keys() {
        if !pairs.contains(pair) {
            return Err(SearchError::InvalidTask(format!(
                "({}, {}) is not an admissible pair",
                pair.0, pair.1
            )));
        }
    }
    let start = Instant::now();
    let mut plans = Vec::new();
    for (&(k, d2), &v_max) in bounds {
        let ceiling = Rational::from_integer(BigInt::from(v_max));
        for d1 in 3.. {
            let required = vertices_for_one_disparate(k, d2, d1)
                .expect("admissible pairs have positive denominators");
            if required > ceiling {
                break;
            }
            if d1 == d2 {
                continue;
            }
            if !required.is_integer() {
                plans.push(CellPlan {
                    k,
                    d2: Some(d2),
                    d1: Some(d1),
                    v: 0,
                    action: PlanAction::Skip {
                        note: format!("forced vertex count {required} is not an integer"),
                    },
                });
                continue;
            }
            let v = required
                .to_integer()
                .to_usize()
                .expect("bounded by the ceiling");
            let plan_task = SearchTask {
                k,
                constraint: FaceConstraint::Exact {
                    common_degree: d2,
                    disparate_count: 1,
                    disparate_degrees: DisparateDegrees::Fixed(vec![d1]),
                },
                v_max,
                budget,
                chord_pruning,
            };
            if (k * v) % 2 == 1 {
                plans.push(CellPlan {
                    k,
                    d2: Some(d2),
                    d1: Some(d1),
                    v,
                    action: PlanAction::Skip { note: "degree sum kv is odd".to_string() },
                });
                continue;
            }
            let e = k * v / 2;
            let f = e + 2 - v;
            plans.extend(exact_plans(
                &plan_task,
                d2,
                1,
                &DisparateDegrees::Fixed(vec![d1]),
                v,
                e,
                f,
            ));
        }
    }
    let cells = run_plans(plans, budget);
    Ok(SearchReport { cells, elapsed: start.elapsed() })
}

/// How one two-designated-faces witness relates to the conjectures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureOutcome {
    pub report: SearchReport,
    /// Exactly two faces deviate from the common degree and their degrees
    /// differ: a counterexample to the equal-degrees conjecture.
    pub unequal_disparate: Vec<FoundClass>,
    /// Exactly one face deviates — these would contradict the
    /// single-disparate-face nonexistence result and deserve loud alarm.
    pub single_disparate: Vec<FoundClass>,
    /// No face deviates: the single-degree map of the pair.
    pub platonic: Vec<FoundClass>,
    /// Equal-degree pairs that match a generated family member, as
    /// (family, unit count) per canonical code.
    pub family_matched: BTreeMap<CanonicalCode, (FamilyId, usize)>,
    /// Equal-degree pairs matching no family member: evidence against the
    /// families-are-everything conjecture.
    pub family_unmatched: Vec<FoundClass>,
}

/// Enumerates every class with two designated faces (degrees free, all
/// other faces at the common degree) up to `v_max` vertices, then sorts
/// the witnesses by how they bear on the two conjectures.
pub fn check_conjecture_equal_degrees(
    k: usize,
    d2: usize,
    v_max: usize,
    budget: Budget,
) -> Result<ConjectureOutcome, SearchError> {
    let pairs = admissible_pairs(2).expect("two disparate faces are supported");
    if !pairs.contains(&(k, d2)) {
        return Err(SearchError::InvalidTask(format!(
            "({k}, {d2}) is not an admissible pair"
        )));
    }
    if v_max < k + 1 {
        return Err(SearchError::InvalidTask(format!(
            "v_max {v_max} admits no simple {k}-regular graph"
        )));
    }
    if v_max > 255 {
        return Err(SearchError::InvalidTask(
            "vertex counts above 255 are unsupported".to_string(),
        ));
    }
    let start = Instant::now();
    let mut plans = Vec::new();
    for v in (k + 1)..=v_max {
        if (k * v) % 2 == 1 {
            plans.push(CellPlan {
                k,
                d2: Some(d2),
                d1: None,
                v,
                action: PlanAction::Skip { note: "degree sum kv is odd".to_string() },
            });
        } else {
            plans.push(designated_plan(k, d2, v));
        }
    }
    let cells = run_plans(plans, budget);
    let report = SearchReport { cells, elapsed: start.elapsed() };

    let pool = family_pool(k, d2, v_max);
    let mut outcome = ConjectureOutcome {
        report: report.clone(),
        unequal_disparate: Vec::new(),
        single_disparate: Vec::new(),
        platonic: Vec::new(),
        family_matched: BTreeMap::new(),
        family_unmatched: Vec::new(),
    };
    for cell in &report.cells {
        for class in &cell.classes {
            let deviating: Vec<(usize, usize)> = class
                .signature
                .entries()
                .iter()
                .copied()
                .filter(|&(degree, _)| degree != d2)
                .collect();
            let deviating_count: usize = deviating.iter().map(|&(_, n)| n).sum();
            match deviating_count {
                0 => outcome.platonic.push(class.clone()),
                1 => outcome.single_disparate.push(class.clone()),
                2 => {
                    if deviating.len() == 1 {
                        match pool.get(&class.code) {
                            Some(&hit) => {
                                outcome.family_matched.insert(class.code.clone(), hit);
                            }
                            None => outcome.family_unmatched.push(class.clone()),
                        }
                    } else {
                        outcome.unequal_disparate.push(class.clone());
                    }
                }
                n => unreachable!("two designated faces cannot deviate {n} times"),
            }
        }
    }
    Ok(outcome)
}

/// Canonical codes of every generated family member with the given
/// regularity and common degree, up to `v_max` vertices.
fn family_pool(
    k: usize,
    d2: usize,
    v_max: usize,
) -> BTreeMap<CanonicalCode, (FamilyId, usize)> {
    let mut pool = BTreeMap::new();
    for family in FamilyId::ALL {
        if family.regularity() != k || family.common_degree() != Some(d2) {
            continue;
        }
        for d in family.min_units()..=family.max_units() {
            let map = match generate_family(family, d) {
                Ok(map) => map,
                Err(_) => break,
            };
            if map.vertex_count() > v_max {
                break;
            }
            pool.insert(map.canonical_code(), (family, d));
        }
    }
    pool
}
