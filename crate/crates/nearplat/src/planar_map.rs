//! Combinatorial maps on orientable surfaces, stored as rotation systems.
//!
//! A map is a simple connected graph together with a cyclic order of
//! neighbors around every vertex (the rotation, read counterclockwise).
//! Faces are traced with the fixed convention that the dart following
//! `u -> v` is the successor of `v -> u` in the rotation of `v`.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("a map needs at least one vertex")]
    Empty,
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),
    #[error("{0} vertices exceed the supported maximum of 255")]
    TooManyVertices(usize),
    #[error("rotation of vertex {vertex} references vertex {target}, which does not exist")]
    TargetOutOfRange { vertex: usize, target: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} lists neighbor {target} more than once (parallel edge)")]
    ParallelEdge { vertex: usize, target: usize },
    #[error("dart {from}->{to} has no reverse dart in the rotation of {to}")]
    InvolutionViolation { from: usize, to: usize },
    #[error("the graph is not connected")]
    Disconnected,
    #[error("face walk revisits a vertex, so its boundary is not a cycle")]
    BoundaryNotACycle,
    #[error("face walk does not occur in this map")]
    ForeignFace,
}

/// One directed half-edge of a face walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub from: usize,
    pub to: usize,
}

/// A closed face walk produced by [`PlanarMap::trace_faces`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Number of edge sides on the walk.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Vertices in walk order (with repeats if the boundary is not a cycle).
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.from).collect()
    }

    /// Length of the shorter arc between positions `i` and `j` along the walk.
    pub fn boundary_distance(&self, i: usize, j: usize) -> usize {
        let n = self.degree();
        assert!(i < n && j < n, "walk positions out of range");
        let a = (i + n - j) % n;
        let b = (j + n - i) % n;
        a.min(b)
    }
}

/// Canonical byte string identifying a map up to relabeling and reflection.
///
/// Two maps have equal codes exactly when some relabeling, combined with an
/// optional reversal of every rotation, carries one onto the other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// A simple connected graph with a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    rotations: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PlanarMap {
    /// Validates and wraps a rotation system.
    ///
    /// Rejects loops, parallel edges (a neighbor repeated within one
    /// rotation), missing reverse darts, disconnected graphs, isolated
    /// vertices and more than 255 vertices.
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self, MapError> {
        let n = rotations.len();
        if n == 0 {
            return Err(MapError::Empty);
        }
        if n > 255 {
            return Err(MapError::TooManyVertices(n));
        }
        let mut dart_total = 0usize;
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(MapError::IsolatedVertex(v));
            }
            dart_total += rot.len();
            let mut seen = vec![false; n];
            for &w in rot {
                if w >= n {
                    return Err(MapError::TargetOutOfRange { vertex: v, target: w });
                }
                if w == v {
                    return Err(MapError::Loop(v));
                }
                if seen[w] {
                    return Err(MapError::ParallelEdge { vertex: v, target: w });
                }
                seen[w] = true;
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &w in rot {
                if !rotations[w].contains(&v) {
                    return Err(MapError::InvolutionViolation { from: v, to: w });
                }
            }
        }
        // Involution symmetry makes the dart total even.
        let edge_count = dart_total / 2;

        // Connectivity by breadth-first search from vertex 0.
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(v) = queue.pop() {
            for &w in &rotations[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(MapError::Disconnected);
        }

        Ok(PlanarMap { rotations, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// The cyclic neighbor order of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.rotations[u].contains(&w)
    }

    /// Position of `u` in the rotation of `w`.
    fn position(&self, w: usize, u: usize) -> usize {
        self.rotations[w]
            .iter()
            .position(|&x| x == u)
            .expect("dart endpoints are validated at construction")
    }

    /// The same map with every rotation reversed (the mirror image).
    pub fn mirrored(&self) -> PlanarMap {
        let rotations = self
            .rotations
            .iter()
            .map(|rot| rot.iter().rev().copied().collect())
            .collect();
        PlanarMap { rotations, edge_count: self.edge_count }
    }

    /// Traces every face walk; each dart occurs in exactly one walk.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        let n = self.vertex_count();
        let mut visited: Vec<Vec<bool>> = self.rotations.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v0 in 0..n {
            for s0 in 0..self.rotations[v0].len() {
                if visited[v0][s0] {
                    continue;
                }
                let mut darts = Vec::new();
                let (mut v, mut s) = (v0, s0);
                loop {
                    visited[v][s] = true;
                    let w = self.rotations[v][s];
                    darts.push(Dart { from: v, to: w });
                    let j = self.position(w, v);
                    let next = (j + 1) % self.rotations[w].len();
                    v = w;
                    s = next;
                    if v == v0 && s == s0 {
                        break;
                    }
                }
                faces.push(FaceWalk { darts });
            }
        }
        faces
    }

    /// Genus of the closed orientable surface carrying this map:
    /// `(2 - v + e - f) / 2`.
    pub fn genus(&self) -> usize {
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = self.trace_faces().len() as i64;
        let doubled = 2 - v + e - f;
        debug_assert!(doubled >= 0 && doubled % 2 == 0, "Euler characteristic of an orientable map");
        (doubled / 2) as usize
    }

    /// Vertex degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self.rotations.iter().map(|r| r.len()).collect();
        degs.sort_unstable();
        degs
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.rotations.iter().all(|r| r.len() == k)
    }

    /// Histogram of face degrees.
    pub fn face_vector(&self) -> BTreeMap<usize, usize> {
        let mut fv = BTreeMap::new();
        for face in self.trace_faces() {
            *fv.entry(face.degree()).or_insert(0) += 1;
        }
        fv
    }

    /// Edges joining two vertices of `face` that are not walk edges.
    ///
    /// Defined only when the walk visits no vertex twice; pairs come back
    /// sorted, each with the smaller endpoint first.
    pub fn chords_of(&self, face: &FaceWalk) -> Result<Vec<(usize, usize)>, MapError> {
        let verts = face.vertices();
        for d in face.darts() {
            if d.from >= self.vertex_count() || !self.has_edge(d.from, d.to) {
                return Err(MapError::ForeignFace);
            }
        }
        let mut seen = vec![false; self.vertex_count()];
        for &v in &verts {
            if seen[v] {
                return Err(MapError::BoundaryNotACycle);
            }
            seen[v] = true;
        }
        let m = verts.len();
        let mut walk_edge = std::collections::HashSet::new();
        for i in 0..m {
            let (a, b) = (verts[i], verts[(i + 1) % m]);
            walk_edge.insert((a.min(b), a.max(b)));
        }
        let mut chords = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (verts[i].min(verts[j]), verts[i].max(verts[j]));
                if self.has_edge(a, b) && !walk_edge.contains(&(a, b)) {
                    chords.push((a, b));
                }
            }
        }
        chords.sort_unstable();
        chords.dedup();
        Ok(chords)
    }

    /// Lexicographically minimal breadth-first relabeling code over every
    /// starting dart and both orientations.
    pub fn canonical_code(&self) -> CanonicalCode {
        let mut best: Option<Vec<u8>> = None;
        for v0 in 0..self.vertex_count() {
            for s0 in 0..self.rotations[v0].len() {
                for mirror in [false, true] {
                    let code = self.rooted_code(v0, s0, mirror);
                    if best.as_ref().map_or(true, |b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        CanonicalCode(best.expect("maps have at least one dart"))
    }

    /// Code for one root: breadth-first vertex labels, each vertex emitting
    /// its rotation (starting from the entry neighbor, in the chosen
    /// direction) as labels terminated by 0.
    fn rooted_code(&self, v0: usize, s0: usize, mirror: bool) -> Vec<u8> {
        let n = self.vertex_count();
        let mut label = vec![0u8; n];
        // Scan start for each visited vertex: position of its entry neighbor.
        let mut start = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        label[v0] = 1;
        start[v0] = s0;
        order.push(v0);
        let mut code = Vec::with_capacity(n * 4 + 1);
        code.push(n as u8);
        let mut next_label = 2u8;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let deg = self.rotations[u].len();
            for i in 0..deg {
                let slot = if mirror {
                    (start[u] + deg - i % deg) % deg
                } else {
                    (start[u] + i) % deg
                };
                let w = self.rotations[u][slot];
                if label[w] == 0 {
                    label[w] = next_label;
                    next_label += 1;
                    start[w] = self.position(w, u);
                    order.push(w);
                }
                code.push(label[w]);
            }
            code.push(0);
        }
        code
    }
}
