//! Constructors for the five single-face-degree maps and fifteen infinite
//! families whose face vector has exactly two disparate faces.
//!
//! Each family repeats a small fundamental unit d times around a cycle. A
//! unit stores, for every local vertex, a rotation whose entries name a
//! vertex of the same (0), next (+1) or previous (−1) unit; gluing resolves
//! the offsets modulo d. The unit data is a transcription of drawings, so it
//! carries no meaning beyond what the validation suite pins down: simplicity,
//! regularity, genus 0, the declared face vector, and the unit-shift
//! symmetry.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::planar_map::{MapError, PlanarMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} needs at least {min} units, got {d}")]
    ParameterTooSmall { family: FamilyId, d: usize, min: usize },
    #[error("{family} supports at most {max} units, got {d}")]
    ParameterTooLarge { family: FamilyId, d: usize, max: usize },
}

/// The five maps in which every face has the common degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlatonicId {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicId {
    pub const ALL: [PlatonicId; 5] = [
        PlatonicId::Tetrahedron,
        PlatonicId::Cube,
        PlatonicId::Octahedron,
        PlatonicId::Dodecahedron,
        PlatonicId::Icosahedron,
    ];

    /// Vertex degree k.
    pub fn regularity(self) -> usize {
        match self {
            PlatonicId::Tetrahedron | PlatonicId::Cube | PlatonicId::Dodecahedron => 3,
            PlatonicId::Octahedron => 4,
            PlatonicId::Icosahedron => 5,
        }
    }

    /// The shared face degree d₂.
    pub fn face_degree(self) -> usize {
        match self {
            PlatonicId::Tetrahedron | PlatonicId::Octahedron | PlatonicId::Icosahedron => 3,
            PlatonicId::Cube => 4,
            PlatonicId::Dodecahedron => 5,
        }
    }

    /// The member with vertex degree k and face degree d₂, if any.
    pub fn from_pair(k: usize, d2: usize) -> Option<PlatonicId> {
        PlatonicId::ALL
            .into_iter()
            .find(|p| p.regularity() == k && p.face_degree() == d2)
    }

    pub fn name(self) -> &'static str {
        match self {
            PlatonicId::Tetrahedron => "tetrahedron",
            PlatonicId::Cube => "cube",
            PlatonicId::Octahedron => "octahedron",
            PlatonicId::Dodecahedron => "dodecahedron",
            PlatonicId::Icosahedron => "icosahedron",
        }
    }
}

impl fmt::Display for PlatonicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fifteen two-disparate-face families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Cycle,
    TetraThinCycle,
    Prism,
    CubeThinCycle,
    Antiprism,
    OctaThinCycle,
    OctaVertexCycle,
    TruncatedTrapezohedron,
    DodecaThinCycle,
    DodecaThickCycle,
    IcosaThinCycle,
    IcosaVertexCycle,
    IcosaThickCycle,
    IcosaFarVertexCycle,
    IcosaOppositeCycle,
}

impl FamilyId {
    pub const ALL: [FamilyId; 15] = [
        FamilyId::Cycle,
        FamilyId::TetraThinCycle,
        FamilyId::Prism,
        FamilyId::CubeThinCycle,
        FamilyId::Antiprism,
        FamilyId::OctaThinCycle,
        FamilyId::OctaVertexCycle,
        FamilyId::TruncatedTrapezohedron,
        FamilyId::DodecaThinCycle,
        FamilyId::DodecaThickCycle,
        FamilyId::IcosaThinCycle,
        FamilyId::IcosaVertexCycle,
        FamilyId::IcosaThickCycle,
        FamilyId::IcosaFarVertexCycle,
        FamilyId::IcosaOppositeCycle,
    ];

    /// Vertex degree k of every member.
    pub fn regularity(self) -> usize {
        use FamilyId::*;
        match self {
            Cycle => 2,
            TetraThinCycle | Prism | CubeThinCycle | TruncatedTrapezohedron
            | DodecaThinCycle | DodecaThickCycle => 3,
            Antiprism | OctaThinCycle | OctaVertexCycle => 4,
            IcosaThinCycle | IcosaVertexCycle | IcosaThickCycle | IcosaFarVertexCycle
            | IcosaOppositeCycle => 5,
        }
    }

    /// Degree shared by every non-disparate face; `None` for the cycle,
    /// whose two faces are the only faces.
    pub fn common_degree(self) -> Option<usize> {
        use FamilyId::*;
        match self {
            Cycle => None,
            TetraThinCycle | Antiprism | OctaThinCycle | OctaVertexCycle | IcosaThinCycle
            | IcosaVertexCycle | IcosaThickCycle | IcosaFarVertexCycle
            | IcosaOppositeCycle => Some(3),
            Prism | CubeThinCycle => Some(4),
            TruncatedTrapezohedron | DodecaThinCycle | DodecaThickCycle => Some(5),
        }
    }

    /// Degree of the two disparate faces of the d-unit member.
    pub fn disparate_degree(self, d: usize) -> usize {
        use FamilyId::*;
        match self {
            Cycle | Prism | Antiprism | TruncatedTrapezohedron | IcosaOppositeCycle => d,
            TetraThinCycle | OctaThinCycle | OctaVertexCycle | IcosaThinCycle
            | IcosaVertexCycle | IcosaThickCycle | IcosaFarVertexCycle => 3 * d,
            CubeThinCycle => 4 * d,
            DodecaThinCycle | DodecaThickCycle => 5 * d,
        }
    }

    /// Smallest unit count that produces a simple map.
    pub fn min_units(self) -> usize {
        use FamilyId::*;
        match self {
            // Fewer units close the cycle onto a parallel edge.
            Cycle | Prism | Antiprism | TruncatedTrapezohedron | IcosaOppositeCycle => 3,
            _ => 2,
        }
    }

    /// Largest unit count that keeps the vertex total within range.
    pub fn max_units(self) -> usize {
        255 / self.unit().size()
    }

    /// The member whose disparate degree equals the common degree, if any;
    /// that member's face vector collapses to a single degree and the map
    /// coincides with a Platonic one.
    pub fn collapse(self) -> Option<(usize, PlatonicId)> {
        use FamilyId::*;
        match self {
            Prism => Some((4, PlatonicId::Cube)),
            Antiprism => Some((3, PlatonicId::Octahedron)),
            TruncatedTrapezohedron => Some((5, PlatonicId::Dodecahedron)),
            IcosaOppositeCycle => Some((3, PlatonicId::Icosahedron)),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        use FamilyId::*;
        match self {
            Cycle => "cycle",
            TetraThinCycle => "tetra-thin-cycle",
            Prism => "prism",
            CubeThinCycle => "cube-thin-cycle",
            Antiprism => "antiprism",
            OctaThinCycle => "octa-thin-cycle",
            OctaVertexCycle => "octa-vertex-cycle",
            TruncatedTrapezohedron => "truncated-trapezohedron",
            DodecaThinCycle => "dodeca-thin-cycle",
            DodecaThickCycle => "dodeca-thick-cycle",
            IcosaThinCycle => "icosa-thin-cycle",
            IcosaVertexCycle => "icosa-vertex-cycle",
            IcosaThickCycle => "icosa-thick-cycle",
            IcosaFarVertexCycle => "icosa-far-vertex-cycle",
            IcosaOppositeCycle => "icosa-opposite-cycle",
        }
    }

    pub fn from_name(name: &str) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.name() == name)
    }

    /// The fundamental unit this family repeats.
    pub fn unit(self) -> UnitTemplate {
        use FamilyId::*;
        // Offsets: S = same unit, N = next unit, P = previous unit.
        const S: i8 = 0;
        const N: i8 = 1;
        const P: i8 = -1;
        let rows: &[&[(i8, usize)]] = match self {
            Cycle => &[&[(N, 0), (P, 0)]],
            // Axis vertex 0, top 1, axis vertex 2, bottom 3; two triangles
            // per unit hang between the two long boundary walks.
            TetraThinCycle => &[
                &[(S, 3), (S, 1), (P, 2)],
                &[(S, 0), (S, 3), (S, 2)],
                &[(N, 0), (S, 1), (S, 3)],
                &[(S, 2), (S, 1), (S, 0)],
            ],
            // Top-ring vertex 0 over bottom-ring vertex 1.
            Prism => &[
                &[(N, 0), (S, 1), (P, 0)],
                &[(S, 0), (N, 1), (P, 1)],
            ],
            // Axis 0 and 3, top pair 1-2, bottom pair 5-4, middle rung 6-7.
            CubeThinCycle => &[
                &[(S, 5), (S, 1), (P, 3)],
                &[(S, 2), (S, 0), (S, 6)],
                &[(S, 1), (S, 7), (S, 3)],
                &[(N, 0), (S, 2), (S, 4)],
                &[(S, 3), (S, 7), (S, 5)],
                &[(S, 4), (S, 6), (S, 0)],
                &[(S, 7), (S, 1), (S, 5)],
                &[(S, 2), (S, 6), (S, 4)],
            ],
            // Top 0 over bottom 1; each top vertex also reaches the next
            // unit's bottom vertex.
            Antiprism => &[
                &[(N, 0), (N, 1), (S, 1), (P, 0)],
                &[(S, 0), (N, 1), (P, 1), (P, 0)],
            ],
            // Axis chain 0-1-2-3 between apex 4 and base 5.
            OctaThinCycle => &[
                &[(S, 1), (S, 4), (P, 3), (S, 5)],
                &[(S, 2), (S, 4), (S, 0), (S, 5)],
                &[(S, 3), (S, 4), (S, 1), (S, 5)],
                &[(N, 0), (S, 4), (S, 2), (S, 5)],
                &[(S, 0), (S, 1), (S, 2), (S, 3)],
                &[(S, 3), (S, 2), (S, 1), (S, 0)],
            ],
            // Pinch vertex 0 where both long faces touch; top pair 1,4 and
            // bottom pair 2,5 around the center vertex 3.
            OctaVertexCycle => &[
                &[(S, 1), (P, 4), (P, 5), (S, 2)],
                &[(S, 4), (S, 0), (S, 2), (S, 3)],
                &[(S, 5), (S, 3), (S, 1), (S, 0)],
                &[(S, 4), (S, 1), (S, 2), (S, 5)],
                &[(S, 1), (S, 3), (S, 5), (N, 0)],
                &[(N, 0), (S, 4), (S, 3), (S, 2)],
            ],
            // Top ring 0, upper shoulder 1, lower shoulder 2, bottom ring 3.
            TruncatedTrapezohedron => &[
                &[(N, 0), (S, 1), (P, 0)],
                &[(S, 0), (N, 2), (S, 2)],
                &[(S, 1), (S, 3), (P, 1)],
                &[(S, 2), (N, 3), (P, 3)],
            ],
            // Narrow band of pentagons: axis vertices 0 and 4 sit on both
            // long faces; 1-3 face the top walk, 5-7 the bottom walk, the
            // rest fill the interior columns.
            DodecaThinCycle => &[
                &[(S, 1), (P, 4), (S, 7)],
                &[(S, 2), (S, 0), (S, 8)],
                &[(S, 1), (S, 14), (S, 3)],
                &[(S, 2), (S, 18), (S, 4)],
                &[(N, 0), (S, 3), (S, 5)],
                &[(S, 4), (S, 19), (S, 6)],
                &[(S, 5), (S, 15), (S, 7)],
                &[(S, 9), (S, 0), (S, 6)],
                &[(S, 10), (S, 1), (S, 9)],
                &[(S, 11), (S, 8), (S, 7)],
                &[(S, 14), (S, 8), (S, 12)],
                &[(S, 12), (S, 9), (S, 15)],
                &[(S, 13), (S, 10), (S, 11)],
                &[(S, 16), (S, 12), (S, 17)],
                &[(S, 2), (S, 10), (S, 16)],
                &[(S, 17), (S, 11), (S, 6)],
                &[(S, 18), (S, 14), (S, 13)],
                &[(S, 19), (S, 13), (S, 15)],
                &[(S, 3), (S, 16), (S, 19)],
                &[(S, 18), (S, 17), (S, 5)],
            ],
            // Wide band: bottom ring 0-4, top ring 5-9, interior 10-19.
            DodecaThickCycle => &[
                &[(S, 1), (S, 5), (P, 4)],
                &[(S, 2), (S, 10), (S, 0)],
                &[(S, 3), (S, 11), (S, 1)],
                &[(S, 4), (S, 16), (S, 2)],
                &[(N, 0), (S, 19), (S, 3)],
                &[(S, 6), (P, 9), (S, 0)],
                &[(S, 7), (S, 5), (S, 10)],
                &[(S, 8), (S, 6), (S, 13)],
                &[(S, 9), (S, 7), (S, 18)],
                &[(N, 5), (S, 8), (S, 19)],
                &[(S, 12), (S, 6), (S, 1)],
                &[(S, 14), (S, 12), (S, 2)],
                &[(S, 13), (S, 10), (S, 11)],
                &[(S, 15), (S, 7), (S, 12)],
                &[(S, 16), (S, 15), (S, 11)],
                &[(S, 18), (S, 13), (S, 14)],
                &[(S, 17), (S, 14), (S, 3)],
                &[(S, 19), (S, 18), (S, 16)],
                &[(S, 8), (S, 15), (S, 17)],
                &[(S, 9), (S, 17), (S, 4)],
            ],
            // Narrow triangle band: axis 0 and 2, top 1, bottom 3,
            // interior 4-11.
            IcosaThinCycle => &[
                &[(S, 4), (S, 1), (P, 2), (S, 3), (S, 7)],
                &[(S, 0), (S, 4), (S, 9), (S, 5), (S, 2)],
                &[(N, 0), (S, 1), (S, 5), (S, 6), (S, 3)],
                &[(S, 2), (S, 6), (S, 11), (S, 7), (S, 0)],
                &[(S, 9), (S, 1), (S, 0), (S, 7), (S, 8)],
                &[(S, 1), (S, 9), (S, 10), (S, 6), (S, 2)],
                &[(S, 2), (S, 5), (S, 10), (S, 11), (S, 3)],
                &[(S, 8), (S, 4), (S, 0), (S, 3), (S, 11)],
                &[(S, 10), (S, 9), (S, 4), (S, 7), (S, 11)],
                &[(S, 1), (S, 4), (S, 8), (S, 10), (S, 5)],
                &[(S, 5), (S, 9), (S, 8), (S, 11), (S, 6)],
                &[(S, 6), (S, 10), (S, 8), (S, 7), (S, 3)],
            ],
            // Pinch vertex 0 on both long faces; quad 1-4 around it,
            // interior 5-11.
            IcosaVertexCycle => &[
                &[(S, 5), (S, 1), (P, 2), (P, 3), (S, 4)],
                &[(S, 2), (S, 0), (S, 5), (S, 6), (S, 8)],
                &[(S, 1), (S, 8), (S, 11), (S, 3), (N, 0)],
                &[(N, 0), (S, 2), (S, 11), (S, 10), (S, 4)],
                &[(S, 3), (S, 10), (S, 7), (S, 5), (S, 0)],
                &[(S, 6), (S, 1), (S, 0), (S, 4), (S, 7)],
                &[(S, 8), (S, 1), (S, 5), (S, 7), (S, 9)],
                &[(S, 10), (S, 9), (S, 6), (S, 5), (S, 4)],
                &[(S, 2), (S, 1), (S, 6), (S, 9), (S, 11)],
                &[(S, 11), (S, 8), (S, 6), (S, 7), (S, 10)],
                &[(S, 11), (S, 9), (S, 7), (S, 4), (S, 3)],
                &[(S, 2), (S, 8), (S, 9), (S, 10), (S, 3)],
            ],
            // Wide triangle band: seam pair 0 (A) and 1 (E); columns 2-11.
            IcosaThickCycle => &[
                &[(S, 3), (S, 2), (S, 1), (P, 11), (P, 8)],
                &[(S, 4), (P, 9), (P, 11), (S, 0), (S, 2)],
                &[(S, 5), (S, 4), (S, 1), (S, 0), (S, 3)],
                &[(S, 8), (S, 6), (S, 5), (S, 2), (S, 0)],
                &[(S, 9), (S, 1), (S, 2), (S, 5), (S, 7)],
                &[(S, 7), (S, 4), (S, 2), (S, 3), (S, 6)],
                &[(S, 10), (S, 7), (S, 5), (S, 3), (S, 8)],
                &[(S, 9), (S, 4), (S, 5), (S, 6), (S, 10)],
                &[(N, 0), (S, 11), (S, 10), (S, 6), (S, 3)],
                &[(N, 1), (S, 4), (S, 7), (S, 10), (S, 11)],
                &[(S, 11), (S, 9), (S, 7), (S, 6), (S, 8)],
                &[(N, 1), (S, 9), (S, 10), (S, 8), (N, 0)],
            ],
            // Band built around the vertex chain 0-3 away from both long
            // faces; interior 4-11.
            IcosaFarVertexCycle => &[
                &[(S, 5), (S, 4), (S, 1), (P, 10), (P, 8)],
                &[(S, 4), (S, 2), (P, 11), (P, 10), (S, 0)],
                &[(S, 6), (S, 3), (P, 11), (S, 1), (S, 4)],
                &[(S, 7), (P, 9), (P, 11), (S, 2), (S, 6)],
                &[(S, 6), (S, 2), (S, 1), (S, 0), (S, 5)],
                &[(S, 8), (S, 7), (S, 6), (S, 4), (S, 0)],
                &[(S, 7), (S, 3), (S, 2), (S, 4), (S, 5)],
                &[(S, 9), (S, 3), (S, 6), (S, 5), (S, 8)],
                &[(N, 0), (S, 10), (S, 9), (S, 7), (S, 5)],
                &[(N, 3), (S, 7), (S, 8), (S, 10), (S, 11)],
                &[(N, 1), (S, 11), (S, 9), (S, 8), (N, 0)],
                &[(N, 2), (N, 3), (S, 9), (S, 10), (N, 1)],
            ],
            // One third of the band between two opposite faces; the ring
            // vertices 0 (top) and 3 (bottom) carry the two d-gons.
            IcosaOppositeCycle => &[
                &[(N, 0), (S, 1), (P, 2), (P, 1), (P, 0)],
                &[(S, 2), (S, 3), (P, 2), (S, 0), (N, 0)],
                &[(N, 1), (N, 3), (S, 3), (S, 1), (N, 0)],
                &[(N, 3), (P, 3), (P, 2), (S, 1), (S, 2)],
            ],
        };
        UnitTemplate {
            rotations: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fundamental unit: local rotations whose entries address the same,
/// next, or previous copy of the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTemplate {
    rotations: Vec<Vec<(i8, usize)>>,
}

impl UnitTemplate {
    pub fn size(&self) -> usize {
        self.rotations.len()
    }

    /// Local darts that reach into the next copy.
    pub fn right_attachments(&self) -> Vec<(usize, usize)> {
        self.attachments(1)
    }

    /// Local darts that reach into the previous copy.
    pub fn left_attachments(&self) -> Vec<(usize, usize)> {
        self.attachments(-1)
    }

    fn attachments(&self, side: i8) -> Vec<(usize, usize)> {
        let mut darts = Vec::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            for (slot, &(offset, _)) in rot.iter().enumerate() {
                if offset == side {
                    darts.push((v, slot));
                }
            }
        }
        darts
    }

    /// Chains d copies around a cycle; vertex u of copy c becomes
    /// `c * size + u`.
    pub fn glue(&self, d: usize) -> Result<PlanarMap, MapError> {
        let size = self.size();
        let mut rotations = Vec::with_capacity(size * d);
        for copy in 0..d {
            for local in &self.rotations {
                rotations.push(
                    local
                        .iter()
                        .map(|&(offset, w)| {
                            let c = (copy as i64 + offset as i64).rem_euclid(d as i64) as usize;
                            c * size + w
                        })
                        .collect(),
                );
            }
        }
        PlanarMap::new(rotations)
    }
}

/// One of the five single-face-degree maps, from a fixed rotation table.
pub fn generate_platonic(id: PlatonicId) -> PlanarMap {
    let rotations: Vec<Vec<usize>> = match id {
        PlatonicId::Tetrahedron => {
            vec![vec![1, 2, 3], vec![2, 0, 3], vec![3, 0, 1], vec![1, 0, 2]]
        }
        PlatonicId::Cube => {
            // Outer ring 0-3 over inner ring 4-7.
            let mut rot: Vec<Vec<usize>> = (0..4)
                .map(|i| vec![(i + 1) % 4, i + 4, (i + 3) % 4])
                .collect();
            rot.extend((0..4).map(|i| vec![i, 4 + (i + 1) % 4, 4 + (i + 3) % 4]));
            rot
        }
        PlatonicId::Octahedron => vec![
            vec![1, 4, 3, 2],
            vec![2, 5, 4, 0],
            vec![0, 3, 5, 1],
            vec![0, 4, 5, 2],
            vec![1, 5, 3, 0],
            vec![2, 3, 4, 1],
        ],
        PlatonicId::Dodecahedron => {
            // Rings: top 0-4, upper shoulder 5-9, lower shoulder 10-14,
            // bottom 15-19.
            let mut rot = Vec::new();
            for i in 0..5 {
                rot.push(vec![(i + 1) % 5, 5 + i, (i + 4) % 5]);
            }
            for i in 0..5 {
                rot.push(vec![i, 10 + (i + 1) % 5, 10 + i]);
            }
            for i in 0..5 {
                rot.push(vec![5 + i, 15 + i, 5 + (i + 4) % 5]);
            }
            for i in 0..5 {
                rot.push(vec![10 + i, 15 + (i + 1) % 5, 15 + (i + 4) % 5]);
            }
            rot
        }
        PlatonicId::Icosahedron => {
            // Hub 0, upper ring 1-5, lower ring 6-10, hub 11.
            let u = |i: usize| 1 + i % 5;
            let l = |i: usize| 6 + i % 5;
            let mut rot = vec![vec![1, 2, 3, 4, 5]];
            for i in 0..5 {
                rot.push(vec![l(i + 1), u(i + 1), 0, u(i + 4), l(i)]);
            }
            for i in 0..5 {
                rot.push(vec![11, l(i + 1), u(i), u(i + 4), l(i + 4)]);
            }
            rot.push(vec![6, 10, 9, 8, 7]);
            rot
        }
    };
    PlanarMap::new(rotations).expect("platonic rotation tables are fixed data")
}

fn check_units(id: FamilyId, d: usize) -> Result<(), FamilyError> {
    let min = id.min_units();
    if d < min {
        return Err(FamilyError::ParameterTooSmall { family: id, d, min });
    }
    let max = id.max_units();
    if d > max {
        return Err(FamilyError::ParameterTooLarge { family: id, d, max });
    }
    Ok(())
}

/// The d-unit member of a family.
pub fn generate_family(id: FamilyId, d: usize) -> Result<PlanarMap, FamilyError> {
    check_units(id, d)?;
    Ok(id
        .unit()
        .glue(d)
        .expect("fundamental units glue cleanly at or above their minimum"))
}

/// The face vector the d-unit member is declared to have; generation must
/// reproduce it exactly.
pub fn declared_face_vector(
    id: FamilyId,
    d: usize,
) -> Result<BTreeMap<usize, usize>, FamilyError> {
    check_units(id, d)?;
    use FamilyId::*;
    let common = match id {
        Cycle => None,
        TetraThinCycle | Antiprism => Some((3, 2 * d)),
        Prism => Some((4, d)),
        CubeThinCycle => Some((4, 4 * d)),
        OctaThinCycle | OctaVertexCycle | IcosaOppositeCycle => Some((3, 6 * d)),
        TruncatedTrapezohedron => Some((5, 2 * d)),
        DodecaThinCycle | DodecaThickCycle => Some((5, 10 * d)),
        IcosaThinCycle | IcosaVertexCycle | IcosaThickCycle | IcosaFarVertexCycle => {
            Some((3, 18 * d))
        }
    };
    let mut vector = BTreeMap::new();
    if let Some((degree, count)) = common {
        vector.insert(degree, count);
    }
    *vector.entry(id.disparate_degree(d)).or_insert(0) += 2;
    Ok(vector)
}

/// A transcribed map with three disparate faces.
pub struct Fixture {
    pub name: &'static str,
    /// Transcriptions come from drawings; this records what the source
    /// fixed and what the validation suite is responsible for.
    pub transcription_note: &'static str,
    pub map: PlanarMap,
}

/// Maps witnessing that three disparate faces are achievable: one with
/// three pairwise-distinct disparate degrees and two symmetric ones.
pub fn f3_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "three-distinct-disparate",
            transcription_note: "built from six kites chained on an axis under an arc; \
                 only the combinatorial structure is meaningful",
            map: distinct_disparate_fixture(),
        },
        Fixture {
            name: "symmetric-squares",
            transcription_note: "transcribed from a drawing; square count and regularity \
                 are what the validation suite pins down",
            map: symmetric_squares_fixture(),
        },
        Fixture {
            name: "symmetric-hexagons",
            transcription_note: "transcribed from a drawing of three nested rings; \
                 hexagon count and regularity are what the validation suite pins down",
            map: symmetric_hexagons_fixture(),
        },
    ]
}

/// Builds rotations from straight-line coordinates: neighbors are sorted
/// counterclockwise by the angle of the (possibly bent) edge leaving each
/// vertex. An edge may carry a via point that fixes its leaving direction
/// at both ends.
fn rotations_from_coordinates(
    coords: &[(f64, f64)],
    edges: &[(usize, usize, Option<(f64, f64)>)],
) -> Vec<Vec<usize>> {
    let mut incident: Vec<Vec<(f64, usize)>> = vec![Vec::new(); coords.len()];
    for &(u, w, via) in edges {
        for (from, to) in [(u, w), (w, u)] {
            let (fx, fy) = coords[from];
            let (tx, ty) = via.unwrap_or(coords[to]);
            let angle = (ty - fy).atan2(tx - fx);
            incident[from].push((angle, to));
        }
    }
    incident
        .into_iter()
        .map(|mut list| {
            list.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("angles are finite"));
            list.into_iter().map(|(_, to)| to).collect()
        })
        .collect()
}

/// 3-regular, 26 vertices: six kites (two triangles each) chained along an
/// axis, a stem kite reaching up to an arc over the whole axis. The three
/// non-triangle faces get degrees 11, 14 and 17.
fn distinct_disparate_fixture() -> PlanarMap {
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut edges: Vec<(usize, usize, Option<(f64, f64)>)> = Vec::new();
    // A kite spans left vertex L, top T, bottom B, right R with a T-B rung;
    // it contributes the triangles (L,T,B) and (T,R,B).
    let kite = |coords: &mut Vec<(f64, f64)>,
                    edges: &mut Vec<(usize, usize, Option<(f64, f64)>)>,
                    cx: f64,
                    cy: f64|
     -> (usize, usize) {
        let base = coords.len();
        coords.push((cx - 0.25, cy)); // L
        coords.push((cx, cy + 0.25)); // T
        coords.push((cx, cy - 0.25)); // B
        coords.push((cx + 0.25, cy)); // R
        for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)] {
            edges.push((base + a, base + b, None));
        }
        (base, base + 3)
    };
    let (l0, r0) = kite(&mut coords, &mut edges, -2.75, 0.0);
    let (l1, r1) = kite(&mut coords, &mut edges, -0.75, 0.0);
    let center = coords.len();
    coords.push((0.0, 0.0));
    let (l2, r2) = kite(&mut coords, &mut edges, 0.75, 0.0);
    let (l3, r3) = kite(&mut coords, &mut edges, 1.75, 0.0);
    let (l4, r4) = kite(&mut coords, &mut edges, 2.75, 0.0);
    // Axis links through the center vertex.
    edges.push((r0, l1, None));
    edges.push((r1, center, None));
    edges.push((center, l2, None));
    edges.push((r2, l3, None));
    edges.push((r3, l4, None));
    // Stem: a kite standing on the center vertex, topped by the arc apex.
    let stem = coords.len();
    coords.push((0.0, 1.0));
    coords.push((-0.5, 1.5));
    coords.push((0.5, 1.5));
    coords.push((0.0, 2.0));
    for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)] {
        edges.push((stem + a, stem + b, None));
    }
    edges.push((center, stem, None));
    let apex = coords.len();
    coords.push((0.0, 3.0));
    edges.push((stem + 3, apex, None));
    // The arc returns to the far ends of the axis; via points keep the
    // leaving directions on the circle of radius 3.
    let via = |deg: f64| {
        let rad = deg.to_radians();
        (3.0 * rad.cos(), 3.0 * rad.sin())
    };
    edges.push((apex, l0, Some(via(165.0))));
    edges.push((apex, r4, Some(via(15.0))));
    PlanarMap::new(rotations_from_coordinates(&coords, &edges))
        .expect("fixture data is fixed")
}

/// 3-regular, 14 vertices: three square faces among six pentagons.
fn symmetric_squares_fixture() -> PlanarMap {
    let coords: [(f64, f64); 14] = [
        (0.0, 0.0),
        (0.0, 5.0),
        (5.0, 5.0),
        (5.0, 0.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (1.0, 4.0),
        (2.0, 1.0),
        (4.0, 1.0),
        (4.0, 3.0),
        (4.0, 4.0),
        (3.0, 4.0),
        (2.0, 3.0),
        (3.0, 2.0),
    ];
    let edges: [(usize, usize); 21] = [
        (0, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (1, 0),
        (1, 2),
        (2, 10),
        (10, 11),
        (11, 6),
        (2, 3),
        (3, 8),
        (8, 9),
        (9, 10),
        (8, 7),
        (7, 4),
        (0, 3),
        (5, 12),
        (12, 13),
        (13, 7),
        (11, 12),
        (13, 9),
    ];
    let edges: Vec<_> = edges.iter().map(|&(u, w)| (u, w, None)).collect();
    PlanarMap::new(rotations_from_coordinates(&coords, &edges))
        .expect("fixture data is fixed")
}

/// 3-regular, 26 vertices: three nested rings (hexagon, 12-ring, 8-ring)
/// joined by spokes so that exactly three faces are hexagons among twelve
/// pentagons.
fn symmetric_hexagons_fixture() -> PlanarMap {
    let mut coords: Vec<(f64, f64)> = Vec::new();
    // Outer hexagon 0-5.
    coords.extend([
        (3.0, 0.0),
        (-1.0, 3.0),
        (-1.0, 5.0),
        (3.0, 8.0),
        (7.0, 5.0),
        (7.0, 3.0),
    ]);
    // Middle ring 6-17.
    coords.extend([
        (3.0, 1.0),
        (1.0, 2.0),
        (1.0, 3.0),
        (1.0, 4.0),
        (1.0, 5.0),
        (1.0, 6.0),
        (3.0, 7.0),
        (5.0, 6.0),
        (5.0, 5.0),
        (5.0, 4.0),
        (5.0, 3.0),
        (5.0, 2.0),
    ]);
    // Inner ring 18-25.
    coords.extend([
        (3.0, 2.0),
        (2.0, 2.0),
        (2.0, 4.0),
        (2.0, 6.0),
        (3.0, 6.0),
        (4.0, 6.0),
        (4.0, 4.0),
        (4.0, 2.0),
    ]);
    let mut edges: Vec<(usize, usize, Option<(f64, f64)>)> = Vec::new();
    for i in 0..6 {
        edges.push((i, (i + 1) % 6, None));
    }
    for i in 0..12 {
        edges.push((6 + i, 6 + (i + 1) % 12, None));
    }
    for i in 0..8 {
        edges.push((18 + i, 18 + (i + 1) % 8, None));
    }
    for (u, w) in [
        (11, 21),
        (23, 13),
        (9, 20),
        (24, 15),
        (7, 19),
        (25, 17),
        (18, 22),
        (2, 10),
        (14, 4),
        (1, 8),
        (16, 5),
        (0, 6),
        (12, 3),
    ] {
        edges.push((u, w, None));
    }
    PlanarMap::new(rotations_from_coordinates(&coords, &edges))
        .expect("fixture data is fixed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting;
    use crate::planar_map::FaceWalk;
    use num::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn platonic_maps_have_their_counted_shapes() {
        for id in PlatonicId::ALL {
            let map = generate_platonic(id);
            let (k, d2) = (id.regularity(), id.face_degree());
            let v = counting::platonic_vertex_count(k, d2);
            assert_eq!(map.vertex_count(), v, "{id}");
            assert!(map.is_regular(k), "{id}");
            assert_eq!(map.genus(), 0, "{id}");
            let f = counting::total_faces(k, v, 0, d2, d2);
            assert_eq!(
                map.face_vector(),
                BTreeMap::from([(d2, f.to_integer().try_into().unwrap())]),
                "{id}"
            );
        }
    }

    #[test]
    fn platonic_maps_are_pairwise_distinct() {
        let codes: Vec<_> = PlatonicId::ALL
            .iter()
            .map(|&id| generate_platonic(id).canonical_code())
            .collect();
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                assert_ne!(codes[i], codes[j]);
            }
        }
    }

    /// The two traced faces matching the disparate degree, when the family
    /// does not collapse at this d.
    fn disparate_walks(id: FamilyId, d: usize, map: &PlanarMap) -> Vec<FaceWalk> {
        let target = id.disparate_degree(d);
        map.trace_faces()
            .into_iter()
            .filter(|f| f.degree() == target)
            .collect()
    }

    #[test]
    fn family_members_validate_across_small_unit_counts() {
        for id in FamilyId::ALL {
            for d in id.min_units()..=10 {
                let map = generate_family(id, d).unwrap();
                let k = id.regularity();
                assert!(map.is_regular(k), "{id} d={d}");
                assert_eq!(map.genus(), 0, "{id} d={d}");
                assert_eq!(
                    map.face_vector(),
                    declared_face_vector(id, d).unwrap(),
                    "{id} d={d}"
                );
                let collapsed = id.collapse().is_some_and(|(cd, _)| cd == d);
                if !collapsed && id != FamilyId::Cycle {
                    let walks = disparate_walks(id, d, &map);
                    assert_eq!(walks.len(), 2, "{id} d={d}");
                    // Equal disparate degrees, by selection; walks must not
                    // share a dart (nor, a fortiori, an edge).
                    let mut darts: Vec<_> = walks
                        .iter()
                        .flat_map(|w| w.darts().iter().map(|dd| (dd.from, dd.to)))
                        .collect();
                    let total = darts.len();
                    darts.sort_unstable();
                    darts.dedup();
                    assert_eq!(darts.len(), total, "{id} d={d} walks overlap");
                }
            }
        }
    }

    #[test]
    fn family_members_satisfy_the_edge_identity() {
        // (e / (k d₂)) · (4 − (k−2)(d₂−2)) = Φ(2, D, d₂) for every member
        // with a genuine two-degree face vector.
        for id in FamilyId::ALL {
            if id == FamilyId::Cycle {
                continue;
            }
            let (k, d2) = (id.regularity(), id.common_degree().unwrap());
            for d in id.min_units()..=10 {
                if id.collapse().is_some_and(|(cd, _)| cd == d) {
                    continue;
                }
                let map = generate_family(id, d).unwrap();
                let e = rat(map.edge_count() as i64);
                let factor = rat(4 - (k as i64 - 2) * (d2 as i64 - 2));
                let lhs = e / rat((k * d2) as i64) * factor;
                assert_eq!(
                    lhs,
                    counting::phi(2, id.disparate_degree(d), d2),
                    "{id} d={d}"
                );
            }
        }
    }

    #[test]
    fn shifting_units_is_an_automorphism() {
        for id in FamilyId::ALL {
            let d = id.min_units() + 2;
            let map = generate_family(id, d).unwrap();
            let size = id.unit().size();
            let shift = |v: usize| (v + size) % (size * d);
            for v in 0..map.vertex_count() {
                let image: Vec<usize> = map.rotation(v).iter().map(|&w| shift(w)).collect();
                assert_eq!(image, map.rotation(shift(v)), "{id} d={d} vertex {v}");
            }
        }
    }

    #[test]
    fn unit_attachments_join_consecutive_copies() {
        for id in FamilyId::ALL {
            let unit = id.unit();
            let left = unit.left_attachments();
            let right = unit.right_attachments();
            assert_eq!(left.len(), right.len(), "{id}");
            assert!(!right.is_empty(), "{id} units must chain");
        }
    }

    #[test]
    fn too_few_or_too_many_units_error() {
        for id in FamilyId::ALL {
            let min = id.min_units();
            assert_eq!(
                generate_family(id, min - 1),
                Err(FamilyError::ParameterTooSmall { family: id, d: min - 1, min }),
            );
            let max = id.max_units();
            assert!(generate_family(id, max).is_ok(), "{id} at max units");
            assert_eq!(
                generate_family(id, max + 1),
                Err(FamilyError::ParameterTooLarge { family: id, d: max + 1, max }),
            );
        }
    }

    #[test]
    fn collapsing_members_coincide_with_platonic_maps() {
        for id in FamilyId::ALL {
            if let Some((d, platonic)) = id.collapse() {
                let family = generate_family(id, d).unwrap();
                let reference = generate_platonic(platonic);
                assert_eq!(
                    family.canonical_code(),
                    reference.canonical_code(),
                    "{id} at d={d} should be the {platonic}"
                );
            }
        }
    }

    #[test]
    fn specific_members_match_expected_counts() {
        let m = generate_family(FamilyId::TetraThinCycle, 4).unwrap();
        assert_eq!(m.vertex_count(), 16);
        assert_eq!(m.edge_count(), 24);
        assert_eq!(m.face_vector(), BTreeMap::from([(12, 2), (3, 8)]));

        let m = generate_family(FamilyId::IcosaThickCycle, 2).unwrap();
        assert_eq!(m.vertex_count(), 24);
        assert_eq!(m.edge_count(), 60);
        assert_eq!(m.face_vector(), BTreeMap::from([(6, 2), (3, 36)]));

        let m = generate_family(FamilyId::Cycle, 7).unwrap();
        assert_eq!(m.vertex_count(), 7);
        assert_eq!(m.face_vector(), BTreeMap::from([(7, 2)]));

        let m = generate_family(FamilyId::Prism, 4).unwrap();
        assert_eq!(m.face_vector(), BTreeMap::from([(4, 6)]));
    }

    #[test]
    fn derived_face_vector_formulas_fit_and_extrapolate() {
        // For families whose vector was fitted rather than given, re-fit
        // {D:2, d2:m} linearly on small d and confirm the frozen formula on
        // d beyond the fitting range.
        let derived = [
            FamilyId::CubeThinCycle,
            FamilyId::OctaThinCycle,
            FamilyId::DodecaThinCycle,
            FamilyId::DodecaThickCycle,
            FamilyId::IcosaThinCycle,
            FamilyId::IcosaVertexCycle,
            FamilyId::IcosaFarVertexCycle,
            FamilyId::IcosaOppositeCycle,
        ];
        for id in derived {
            let d2 = id.common_degree().unwrap();
            let fit_lo = id.min_units().max(2);
            for d in fit_lo..=8 {
                if id.collapse().is_some_and(|(cd, _)| cd == d) {
                    continue;
                }
                let traced = generate_family(id, d).unwrap().face_vector();
                let disparate = id.disparate_degree(d);
                // Shape {D(d):2, d2:m(d)} with both entries linear in d.
                assert_eq!(traced.get(&disparate), Some(&2), "{id} d={d}");
                assert_eq!(disparate % d, 0, "{id} d={d}");
                let m = traced[&d2];
                assert_eq!(m % d, 0, "{id} d={d}");
                assert_eq!(disparate / d, id.disparate_degree(1), "{id} slope");
                assert_eq!(
                    m / d,
                    declared_face_vector(id, fit_lo).unwrap()[&d2] / fit_lo,
                    "{id} slope"
                );
            }
            for d in 9..=12 {
                assert_eq!(
                    generate_family(id, d).unwrap().face_vector(),
                    declared_face_vector(id, d).unwrap(),
                    "{id} d={d}"
                );
            }
        }
    }

    #[test]
    fn disparate_faces_share_vertices_exactly_where_recorded() {
        // Golden data: whether the two disparate faces touch. Dart
        // disjointness is asserted for everyone in the validation test;
        // vertex sharing is a per-family fact worth pinning.
        let expected = [
            (FamilyId::Cycle, true),
            (FamilyId::TetraThinCycle, true),
            (FamilyId::Prism, false),
            (FamilyId::CubeThinCycle, true),
            (FamilyId::Antiprism, false),
            (FamilyId::OctaThinCycle, true),
            (FamilyId::OctaVertexCycle, true),
            (FamilyId::TruncatedTrapezohedron, false),
            (FamilyId::DodecaThinCycle, true),
            (FamilyId::DodecaThickCycle, false),
            (FamilyId::IcosaThinCycle, true),
            (FamilyId::IcosaVertexCycle, true),
            (FamilyId::IcosaThickCycle, false),
            (FamilyId::IcosaFarVertexCycle, false),
            (FamilyId::IcosaOppositeCycle, false),
        ];
        for (id, shares) in expected {
            for extra in [0, 2] {
                let d = id.min_units() + extra;
                if id.collapse().is_some_and(|(cd, _)| cd == d) {
                    continue;
                }
                let map = generate_family(id, d).unwrap();
                let walks = disparate_walks(id, d, &map);
                assert_eq!(walks.len(), 2, "{id} d={d}");
                let a: std::collections::BTreeSet<_> =
                    walks[0].vertices().into_iter().collect();
                let found = walks[1].vertices().iter().any(|v| a.contains(v));
                assert_eq!(found, shares, "{id} d={d}");
            }
        }
    }

    #[test]
    fn fixtures_have_three_disparate_faces() {
        let fixtures = f3_fixtures();
        assert_eq!(fixtures.len(), 3);
        for fixture in &fixtures {
            let map = &fixture.map;
            let k = map.degree(0);
            assert!(map.is_regular(k), "{}", fixture.name);
            assert_eq!(map.genus(), 0, "{}", fixture.name);
            let sig = counting::Signature::of_map(map).unwrap();
            let disparate: usize = sig.disparate_entries().iter().map(|&(_, n)| n).sum();
            assert_eq!(disparate, 3, "{}", fixture.name);
        }
    }

    #[test]
    fn distinct_disparate_fixture_has_three_different_degrees() {
        let fixture = &f3_fixtures()[0];
        let map = &fixture.map;
        assert_eq!(map.vertex_count(), 26);
        assert_eq!(map.edge_count(), 39);
        assert_eq!(
            map.face_vector(),
            BTreeMap::from([(3, 12), (11, 1), (14, 1), (17, 1)])
        );
    }

    #[test]
    fn symmetric_fixtures_match_their_counts() {
        let fixtures = f3_fixtures();
        let squares = &fixtures[1].map;
        assert_eq!(squares.vertex_count(), 14);
        assert_eq!(squares.edge_count(), 21);
        assert_eq!(squares.face_vector(), BTreeMap::from([(4, 3), (5, 6)]));
        let hexagons = &fixtures[2].map;
        assert_eq!(hexagons.vertex_count(), 26);
        assert_eq!(hexagons.edge_count(), 39);
        assert_eq!(hexagons.face_vector(), BTreeMap::from([(5, 12), (6, 3)]));
    }

    #[test]
    fn family_names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(FamilyId::from_name(id.name()), Some(id));
        }
        assert_eq!(FamilyId::from_name("moebius"), None);
    }
}
