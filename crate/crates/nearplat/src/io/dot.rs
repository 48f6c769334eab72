//! Graphviz DOT export. The output is combinatorial only: faces appear as
//! comments, never as layout hints.

use std::fmt::Write;

use crate::planar_map::PlanarMap;

/// Renders the map as an undirected DOT graph, deterministically. With
/// `face_annotations`, a comment block lists the face vector and every face
/// walk before the graph body.
pub fn export_dot(map: &PlanarMap, face_annotations: bool) -> String {
    let mut out = String::new();
    if face_annotations {
        let vector = map
            .face_vector()
            .iter()
            .map(|(degree, count)| format!("{degree}^{count}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "// face vector: {vector}");
        for (i, face) in map.trace_faces().iter().enumerate() {
            let walk = face
                .vertices()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "// face {i} (degree {}): {walk}", face.degree());
        }
    }
    let _ = writeln!(out, "graph map {{");
    for v in 0..map.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for u in 0..map.vertex_count() {
        for &w in map.rotation(u) {
            if u < w {
                let _ = writeln!(out, "  {u} -- {w};");
            }
        }
    }
    out.push_str("}\n");
    out
}
