//! The per-cell enumerator: builds k-regular rotation systems on exactly v
//! vertices by matching darts, with face-degree budgets enforced as faces
//! close.
//!
//! Darts are (vertex, slot) pairs numbered vertex·k + slot; a vertex's
//! rotation is its slot order. Matching dart a to dart b makes them the two
//! sides of one edge and fixes two face-walk links: the walk successor of a
//! is the dart after b at b's vertex, and symmetrically. A completed
//! matching therefore determines every face; partial matchings hold open
//! walk chains whose lengths lower-bound the degree of whatever face they
//! end up in.
//!
//! Symmetry is broken by construction: fresh vertices are taken in label
//! order and always entered at slot 0, and when a constraint distinguishes
//! faces, the face through dart 0 is the distinguished one. Any map can be
//! relabeled (vertices renamed, rotations cyclically shifted, a
//! distinguished face moved onto dart 0) to satisfy these conventions, so
//! the restriction loses no isomorphism class. Residual duplicates are
//! removed by canonical code.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::planar_map::{CanonicalCode, PlanarMap};

const UNSET: u32 = u32::MAX;

/// Degrees a distinguished face may close at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Allowed {
    Fixed(Vec<usize>),
    /// Anything at least 3 except the given degree, up to the cap.
    AnyExcept { forbidden: usize, cap: usize },
}

impl Allowed {
    fn allows(&self, degree: usize) -> bool {
        match self {
            Allowed::Fixed(list) => list.contains(&degree),
            Allowed::AnyExcept { forbidden, cap } => degree != *forbidden && degree <= *cap,
        }
    }

    fn cap(&self) -> usize {
        match self {
            Allowed::Fixed(list) => list.iter().copied().max().unwrap_or(0),
            Allowed::AnyExcept { cap, .. } => *cap,
        }
    }
}

/// Face-budget discipline for one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CellMode {
    /// All faces have the common degree except a fixed number of disparate
    /// ones. With any disparate faces at all, the face through dart 0 is
    /// pinned as one of them.
    Exact {
        d2: usize,
        d2_count: usize,
        pinned: Option<Allowed>,
        extra_count: usize,
        extra: Allowed,
    },
    /// Two distinguished faces of unconstrained degree (the face through
    /// dart 0 and one more); everything else has the common degree.
    Designated {
        d2: usize,
        d2_count: usize,
        free_cap: usize,
    },
    /// Only the face total (genus 0) is enforced.
    Free { f_target: usize, chain_cap: usize },
}

impl CellMode {
    fn f_target(&self) -> usize {
        match self {
            CellMode::Exact { d2_count, pinned, extra_count, .. } => {
                d2_count + usize::from(pinned.is_some()) + extra_count
            }
            CellMode::Designated { d2_count, .. } => d2_count + 2,
            CellMode::Free { f_target, .. } => *f_target,
        }
    }

    fn has_pin(&self) -> bool {
        match self {
            CellMode::Exact { pinned, .. } => pinned.is_some(),
            CellMode::Designated { .. } => true,
            CellMode::Free { .. } => false,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CellConfig {
    pub k: usize,
    pub v: usize,
    pub mode: CellMode,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    /// Cut branches that give the pinned face a chord once it has closed
    /// as a simple cycle. Sound only where the caller can justify it.
    pub chord_pruning: bool,
}

#[derive(Debug)]
pub(crate) struct CellOutcome {
    /// One representative per isomorphism class, sorted by canonical code.
    pub classes: Vec<(PlanarMap, CanonicalCode)>,
    pub nodes: u64,
    /// False when a budget stopped the search before exhaustion.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Pinned,
    Common,
    Extra,
    Free,
}

#[derive(Default)]
struct Undo {
    fresh: bool,
    consumed: [Option<Slot>; 2],
    /// Pinned-cycle vertex list to clear when the closure is undone.
    chord_marks: Option<Vec<usize>>,
}

struct Engine {
    k: usize,
    v: usize,
    mode: CellMode,
    mate: Vec<u32>,
    fnext: Vec<u32>,
    fprev: Vec<u32>,
    adj: Vec<bool>,
    used: usize,
    d2_left: usize,
    extra_left: usize,
    pinned_open: bool,
    has_pin: bool,
    faces_closed: usize,
    f_target: usize,
    chord_pruning: bool,
    chord_active: bool,
    on_pinned: Vec<bool>,
    pinned_walk_edge: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    exceeded: bool,
    seen: BTreeSet<CanonicalCode>,
    found: Vec<(PlanarMap, CanonicalCode)>,
}

struct WalkResult {
    cycle: bool,
    /// Darts in the cycle, or darts from the start through the open tail.
    length: usize,
    saw_dart0: bool,
    saw: Option<u32>,
}

pub(crate) fn run_cell(cfg: &CellConfig) -> CellOutcome {
    let f_target = cfg.mode.f_target();
    let (d2_left, extra_left) = match &cfg.mode {
        CellMode::Exact { d2_count, extra_count, .. } => (*d2_count, *extra_count),
        CellMode::Designated { d2_count, .. } => (*d2_count, 1),
        CellMode::Free { .. } => (0, 0),
    };
    let mut engine = Engine {
        k: cfg.k,
        v: cfg.v,
        mode: cfg.mode.clone(),
        mate: vec![UNSET; cfg.k * cfg.v],
        fnext: vec![UNSET; cfg.k * cfg.v],
        fprev: vec![UNSET; cfg.k * cfg.v],
        adj: vec![false; cfg.v * cfg.v],
        used: 1,
        d2_left,
        extra_left,
        pinned_open: cfg.mode.has_pin(),
        has_pin: cfg.mode.has_pin(),
        faces_closed: 0,
        f_target,
        chord_pruning: cfg.chord_pruning,
        chord_active: false,
        on_pinned: vec![false; cfg.v],
        pinned_walk_edge: vec![false; cfg.v * cfg.v],
        nodes: 0,
        max_nodes: cfg.max_nodes,
        deadline: cfg.time_limit.map(|t| Instant::now() + t),
        exceeded: false,
        seen: BTreeSet::new(),
        found: Vec::new(),
    };
    engine.search();
    let mut classes = engine.found;
    classes.sort_by(|a, b| a.1.cmp(&b.1));
    CellOutcome {
        classes,
        nodes: engine.nodes,
        complete: !engine.exceeded,
    }
}

impl Engine {
    fn vertex_of(&self, dart: u32) -> usize {
        dart as usize / self.k
    }

    fn rot_next(&self, dart: u32) -> u32 {
        let (v, s) = (dart as usize / self.k, dart as usize % self.k);
        (v * self.k + (s + 1) % self.k) as u32
    }

    fn rot_prev(&self, dart: u32) -> u32 {
        let (v, s) = (dart as usize / self.k, dart as usize % self.k);
        (v * self.k + (s + self.k - 1) % self.k) as u32
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.v + b]
    }

    /// Next dart to wire: the open end of the pinned face while it is
    /// still open, otherwise the least unmatched dart on a touched vertex.
    /// No such dart with untouched vertices remaining means the component
    /// closed early; that branch is dead.
    fn select(&self) -> Option<u32> {
        if self.has_pin && self.pinned_open {
            let mut d = 0u32;
            loop {
                if self.mate[d as usize] == UNSET {
                    return Some(d);
                }
                d = self.fnext[d as usize];
            }
        }
        (0..(self.used * self.k) as u32).find(|&d| self.mate[d as usize] == UNSET)
    }

    fn search(&mut self) {
        if self.exceeded {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exceeded = true;
            return;
        }
        if self.nodes & 0xFFF == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exceeded = true;
                    return;
                }
            }
        }
        let Some(a) = self.select() else {
            if self.used == self.v {
                self.complete();
            }
            return;
        };
        let va = self.vertex_of(a);
        for w in 0..self.used {
            if w == va || self.adjacent(va, w) {
                continue;
            }
            for t in 0..self.k {
                let b = (w * self.k + t) as u32;
                if self.mate[b as usize] != UNSET {
                    continue;
                }
                if let Some(undo) = self.try_match(a, b) {
                    self.search();
                    self.unmatch(a, b, undo);
                    if self.exceeded {
                        return;
                    }
                }
            }
        }
        if self.used < self.v {
            let b = (self.used * self.k) as u32;
            if let Some(undo) = self.try_match(a, b) {
                self.search();
                self.unmatch(a, b, undo);
            }
        }
    }

    /// Follows face links from `start` until the walk returns to `start`
    /// (a closed face) or reaches an unmatched dart (an open chain end).
    fn walk_forward(&self, start: u32, watch: u32) -> WalkResult {
        let mut cur = start;
        let mut length = 0;
        let mut saw_dart0 = false;
        let mut saw = None;
        loop {
            length += 1;
            if cur == 0 {
                saw_dart0 = true;
            }
            if cur == watch && cur != start {
                saw = Some(cur);
            }
            if self.mate[cur as usize] == UNSET {
                return WalkResult { cycle: false, length, saw_dart0, saw };
            }
            cur = self.fnext[cur as usize];
            if cur == start {
                return WalkResult { cycle: true, length, saw_dart0, saw };
            }
        }
    }

    /// Full length of the open chain through `dart`, and whether dart 0
    /// lies on it.
    fn chain_metrics(&self, dart: u32) -> (usize, bool) {
        let forward = self.walk_forward(dart, dart);
        debug_assert!(!forward.cycle);
        let mut length = forward.length;
        let mut saw_dart0 = forward.saw_dart0;
        let mut cur = dart;
        loop {
            let prev_rot = self.rot_prev(cur);
            if self.mate[prev_rot as usize] == UNSET {
                break;
            }
            cur = self.fprev[cur as usize];
            length += 1;
            if cur == 0 {
                saw_dart0 = true;
            }
        }
        (length, saw_dart0)
    }

    fn pin_cap(&self) -> usize {
        match &self.mode {
            CellMode::Exact { pinned, .. } => pinned.as_ref().map_or(0, |p| p.cap()),
            CellMode::Designated { free_cap, .. } => *free_cap,
            CellMode::Free { .. } => 0,
        }
    }

    /// Largest face degree a chain without the pinned dart may still grow
    /// into. While the pinned face is open, other chains may yet merge into
    /// it, so its cap applies to them too.
    fn other_cap(&self) -> usize {
        let mut cap = 0;
        match &self.mode {
            CellMode::Exact { d2, extra, .. } => {
                if self.d2_left > 0 {
                    cap = *d2;
                }
                if self.extra_left > 0 {
                    cap = cap.max(extra.cap());
                }
            }
            CellMode::Designated { d2, free_cap, .. } => {
                if self.d2_left > 0 {
                    cap = *d2;
                }
                if self.extra_left > 0 {
                    cap = cap.max(*free_cap);
                }
            }
            CellMode::Free { chain_cap, .. } => cap = *chain_cap,
        }
        if self.pinned_open {
            cap = cap.max(self.pin_cap());
        }
        cap
    }

    fn chain_cap(&self, contains_dart0: bool) -> usize {
        if self.has_pin && self.pinned_open && contains_dart0 {
            self.pin_cap()
        } else {
            self.other_cap()
        }
    }

    /// Books a closed face of the given degree against the budgets.
    fn consume(&mut self, degree: usize, contains_dart0: bool) -> Option<Slot> {
        let slot = if self.has_pin && contains_dart0 {
            debug_assert!(self.pinned_open, "the face through dart 0 closes once");
            let ok = match &self.mode {
                CellMode::Exact { pinned, .. } => {
                    pinned.as_ref().is_some_and(|p| p.allows(degree))
                }
                CellMode::Designated { free_cap, .. } => degree <= *free_cap,
                CellMode::Free { .. } => unreachable!("free mode pins nothing"),
            };
            if !ok {
                return None;
            }
            self.pinned_open = false;
            Slot::Pinned
        } else {
            match &self.mode {
                CellMode::Exact { d2, extra, .. } => {
                    if degree == *d2 && self.d2_left > 0 {
                        self.d2_left -= 1;
                        Slot::Common
                    } else if self.extra_left > 0 && extra.allows(degree) {
                        self.extra_left -= 1;
                        Slot::Extra
                    } else {
                        return None;
                    }
                }
                CellMode::Designated { d2, free_cap, .. } => {
                    if degree == *d2 && self.d2_left > 0 {
                        self.d2_left -= 1;
                        Slot::Common
                    } else if self.extra_left > 0 && degree <= *free_cap {
                        self.extra_left -= 1;
                        Slot::Extra
                    } else {
                        return None;
                    }
                }
                CellMode::Free { f_target, .. } => {
                    if self.faces_closed < *f_target {
                        Slot::Free
                    } else {
                        return None;
                    }
                }
            }
        };
        self.faces_closed += 1;
        Some(slot)
    }

    fn restore(&mut self, slot: Slot) {
        self.faces_closed -= 1;
        match slot {
            Slot::Pinned => self.pinned_open = true,
            Slot::Common => self.d2_left += 1,
            Slot::Extra => self.extra_left += 1,
            Slot::Free => {}
        }
    }

    /// After the pinned face closes as a simple cycle, record its vertices
    /// and boundary edges; any other edge between two of its vertices is a
    /// chord. Returns the marks, or None when an existing edge is already
    /// a chord (the branch is dead) — boundary walks that repeat a vertex
    /// are left unmarked, which only disables the pruning.
    fn activate_chord_marks(&mut self) -> Result<Option<Vec<usize>>, ()> {
        let mut verts = Vec::new();
        let mut cur = 0u32;
        loop {
            verts.push(self.vertex_of(cur));
            cur = self.fnext[cur as usize];
            if cur == 0 {
                break;
            }
        }
        let mut dup = vec![false; self.v];
        for &w in &verts {
            if dup[w] {
                return Ok(None);
            }
            dup[w] = true;
        }
        let n = verts.len();
        for i in 0..n {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            self.pinned_walk_edge[a * self.v + b] = true;
            self.pinned_walk_edge[b * self.v + a] = true;
        }
        for w in &verts {
            self.on_pinned[*w] = true;
        }
        let mut chord = false;
        'scan: for i in 0..n {
            for j in i + 1..n {
                if self.adjacent(verts[i], verts[j])
                    && !self.pinned_walk_edge[verts[i] * self.v + verts[j]]
                {
                    chord = true;
                    break 'scan;
                }
            }
        }
        if chord {
            self.clear_chord_marks(&verts);
            return Err(());
        }
        self.chord_active = true;
        Ok(Some(verts))
    }

    fn clear_chord_marks(&mut self, verts: &[usize]) {
        let n = verts.len();
        for i in 0..n {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            self.pinned_walk_edge[a * self.v + b] = false;
            self.pinned_walk_edge[b * self.v + a] = false;
        }
        for w in verts {
            self.on_pinned[*w] = false;
        }
        self.chord_active = false;
    }

    fn try_match(&mut self, a: u32, b: u32) -> Option<Undo> {
        let (va, vb) = (self.vertex_of(a), self.vertex_of(b));
        debug_assert!(va != vb && !self.adjacent(va, vb));
        debug_assert!(self.mate[a as usize] == UNSET && self.mate[b as usize] == UNSET);
        if self.chord_active
            && self.on_pinned[va]
            && self.on_pinned[vb]
            && !self.pinned_walk_edge[va * self.v + vb]
        {
            return None;
        }
        let mut undo = Undo::default();
        if vb == self.used {
            self.used += 1;
            undo.fresh = true;
        }
        self.mate[a as usize] = b;
        self.mate[b as usize] = a;
        let (ra, rb) = (self.rot_next(a), self.rot_next(b));
        self.fnext[a as usize] = rb;
        self.fnext[b as usize] = ra;
        self.fprev[rb as usize] = a;
        self.fprev[ra as usize] = b;
        self.adj[va * self.v + vb] = true;
        self.adj[vb * self.v + va] = true;

        let mut fail = false;
        let walk_a = self.walk_forward(a, b);
        let mut b_handled = walk_a.saw == Some(b);
        if walk_a.cycle {
            b_handled |= walk_a.saw == Some(b);
            match self.consume(walk_a.length, walk_a.saw_dart0) {
                Some(slot) => {
                    undo.consumed[0] = Some(slot);
                    if slot == Slot::Pinned && self.chord_pruning {
                        match self.activate_chord_marks() {
                            Ok(marks) => undo.chord_marks = marks,
                            Err(()) => fail = true,
                        }
                    }
                }
                None => fail = true,
            }
        } else {
            let (length, has0) = self.chain_metrics(a);
            if length > self.chain_cap(has0) {
                fail = true;
            }
        }
        if !fail && !b_handled {
            let walk_b = self.walk_forward(b, a);
            if walk_b.saw != Some(a) {
                if walk_b.cycle {
                    match self.consume(walk_b.length, walk_b.saw_dart0) {
                        Some(slot) => {
                            undo.consumed[1] = Some(slot);
                            if slot == Slot::Pinned && self.chord_pruning {
                                match self.activate_chord_marks() {
                                    Ok(marks) => undo.chord_marks = marks,
                                    Err(()) => fail = true,
                                }
                            }
                        }
                        None => fail = true,
                    }
                } else {
                    let (length, has0) = self.chain_metrics(b);
                    if length > self.chain_cap(has0) {
                        fail = true;
                    }
                }
            }
        }
        if fail {
            self.unmatch(a, b, undo);
            return None;
        }
        Some(undo)
    }

    fn unmatch(&mut self, a: u32, b: u32, undo: Undo) {
        if let Some(verts) = undo.chord_marks {
            self.clear_chord_marks(&verts);
        }
        for slot in undo.consumed.into_iter().flatten() {
            self.restore(slot);
        }
        let (va, vb) = (self.vertex_of(a), self.vertex_of(b));
        self.adj[va * self.v + vb] = false;
        self.adj[vb * self.v + va] = false;
        self.mate[a as usize] = UNSET;
        self.mate[b as usize] = UNSET;
        if undo.fresh {
            self.used -= 1;
        }
        // fnext/fprev entries go stale rather than being cleared: they are
        // only ever read through a matched dart.
    }

    fn complete(&mut self) {
        let budgets_exhausted = match &self.mode {
            CellMode::Exact { .. } | CellMode::Designated { .. } => {
                self.d2_left == 0 && self.extra_left == 0 && !self.pinned_open
            }
            CellMode::Free { f_target, .. } => self.faces_closed == *f_target,
        };
        if !budgets_exhausted {
            return;
        }
        debug_assert_eq!(self.faces_closed, self.f_target);
        let rotations: Vec<Vec<usize>> = (0..self.v)
            .map(|u| {
                (0..self.k)
                    .map(|s| self.vertex_of(self.mate[u * self.k + s]))
                    .collect()
            })
            .collect();
        let map = PlanarMap::new(rotations)
            .expect("completed matchings are simple and connected by construction");
        debug_assert_eq!(map.genus(), 0);
        let code = map.canonical_code();
        if self.seen.insert(code.clone()) {
            self.found.push((map, code));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, generate_platonic, FamilyId, PlatonicId};

    fn unlimited(k: usize, v: usize, mode: CellMode) -> CellConfig {
        CellConfig {
            k,
            v,
            mode,
            max_nodes: u64::MAX,
            time_limit: None,
            chord_pruning: false,
        }
    }

    #[test]
    fn single_degree_cell_finds_the_tetrahedron() {
        let outcome = run_cell(&unlimited(
            3,
            4,
            CellMode::Exact {
                d2: 3,
                d2_count: 4,
                pinned: None,
                extra_count: 0,
                extra: Allowed::Fixed(vec![]),
            },
        ));
        assert!(outcome.complete);
        assert_eq!(outcome.classes.len(), 1);
        assert_eq!(
            outcome.classes[0].1,
            generate_platonic(PlatonicId::Tetrahedron).canonical_code()
        );
    }

    #[test]
    fn two_fixed_triangles_among_squares_find_the_triangular_prism() {
        let outcome = run_cell(&unlimited(
            3,
            6,
            CellMode::Exact {
                d2: 4,
                d2_count: 3,
                pinned: Some(Allowed::Fixed(vec![3])),
                extra_count: 1,
                extra: Allowed::Fixed(vec![3]),
            },
        ));
        assert!(outcome.complete);
        assert_eq!(outcome.classes.len(), 1);
        assert_eq!(
            outcome.classes[0].1,
            generate_family(FamilyId::Prism, 3).unwrap().canonical_code()
        );
    }

    #[test]
    fn one_hexagon_among_triangles_has_no_realization() {
        // v forced to 6 by the counting identities; the search confirms
        // emptiness.
        let outcome = run_cell(&unlimited(
            3,
            6,
            CellMode::Exact {
                d2: 3,
                d2_count: 4,
                pinned: Some(Allowed::Fixed(vec![6])),
                extra_count: 0,
                extra: Allowed::Fixed(vec![]),
            },
        ));
        assert!(outcome.complete);
        assert!(outcome.classes.is_empty());
    }

    #[test]
    fn designated_cell_recovers_the_cube() {
        let outcome = run_cell(&unlimited(
            3,
            8,
            CellMode::Designated { d2: 4, d2_count: 4, free_cap: 5 },
        ));
        assert!(outcome.complete);
        let cube = generate_platonic(PlatonicId::Cube).canonical_code();
        assert!(outcome.classes.iter().any(|(_, code)| *code == cube));
    }

    #[test]
    fn free_cell_enumerates_every_spherical_map() {
        // 3-regular, 6 vertices: the prism is the only simple planar one.
        let outcome = run_cell(&unlimited(
            3,
            6,
            CellMode::Free { f_target: 5, chain_cap: 18 - 3 * 4 },
        ));
        assert!(outcome.complete);
        assert_eq!(outcome.classes.len(), 1);
        assert_eq!(
            outcome.classes[0].1,
            generate_family(FamilyId::Prism, 3).unwrap().canonical_code()
        );
    }

    #[test]
    fn node_budget_reports_incompleteness() {
        let mut cfg = unlimited(
            3,
            8,
            CellMode::Free { f_target: 6, chain_cap: 24 - 3 * 5 },
        );
        cfg.max_nodes = 10;
        let outcome = run_cell(&cfg);
        assert!(!outcome.complete);
        assert!(outcome.nodes <= 11);
    }

    #[test]
    fn chord_pruning_does_not_change_results() {
        // One 9-gon among triangles at v=8: empty either way.
        for chord in [false, true] {
            let mut cfg = unlimited(
                3,
                8,
                CellMode::Exact {
                    d2: 3,
                    d2_count: 5,
                    pinned: Some(Allowed::Fixed(vec![9])),
                    extra_count: 0,
                    extra: Allowed::Fixed(vec![]),
                },
            );
            cfg.chord_pruning = chord;
            let outcome = run_cell(&cfg);
            assert!(outcome.complete);
            assert!(outcome.classes.is_empty(), "chord={chord}");
        }
        // A cell with witnesses: the prism cell above, pruned and not.
        for chord in [false, true] {
            let mut cfg = unlimited(
                3,
                6,
                CellMode::Exact {
                    d2: 4,
                    d2_count: 3,
                    pinned: Some(Allowed::Fixed(vec![3])),
                    extra_count: 1,
                    extra: Allowed::Fixed(vec![3]),
                },
            );
            cfg.chord_pruning = chord;
            let outcome = run_cell(&cfg);
            assert_eq!(outcome.classes.len(), 1, "chord={chord}");
        }
    }
}
