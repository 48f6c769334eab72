//! The planar_code byte format: a 15-byte ASCII header, then per map one
//! vertex-count byte n followed by n zero-terminated neighbor lists in
//! rotation order, all vertices numbered 1..=n. Only the single-byte
//! variant (n ≤ 255) is supported.

use thiserror::Error;

use crate::planar_map::{MapError, PlanarMap};

pub const PLANAR_CODE_HEADER: &[u8; 15] = b">>planar_code<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("stream does not begin with the planar_code header")]
    BadHeader,
    #[error("record {record} ends before vertex {vertex} of {n} is terminated")]
    TruncatedRecord { record: usize, vertex: usize, n: usize },
    #[error("record {record} encodes a non-simple graph: {source}")]
    NonSimple { record: usize, source: MapError },
    #[error("record {record} lists a dart without its reverse: {source}")]
    InconsistentInvolution { record: usize, source: MapError },
    #[error("record {record} is not a valid map: {source}")]
    InvalidRecord { record: usize, source: MapError },
    #[error("map has {0} vertices; the single-byte format supports at most 255")]
    TooLarge(usize),
}

/// Decodes every record of a planar_code stream, preserving rotation order
/// exactly as stored.
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<PlanarMap>, CodecError> {
    let Some(body) = bytes.strip_prefix(PLANAR_CODE_HEADER) else {
        return Err(CodecError::BadHeader);
    };
    let mut maps = Vec::new();
    let mut pos = 0;
    let mut record = 0;
    while pos < body.len() {
        let n = body[pos] as usize;
        pos += 1;
        let truncated = |vertex: usize| CodecError::TruncatedRecord { record, vertex, n };
        if n == 0 {
            return Err(truncated(0));
        }
        let mut rotations = Vec::with_capacity(n);
        for vertex in 1..=n {
            let mut rot = Vec::new();
            loop {
                let Some(&b) = body.get(pos) else {
                    return Err(truncated(vertex));
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                // Stored labels are 1-based.
                rot.push(b as usize - 1);
            }
            rotations.push(rot);
        }
        let map = PlanarMap::new(rotations).map_err(|source| match source {
            MapError::Loop(_) | MapError::ParallelEdge { .. } => {
                CodecError::NonSimple { record, source }
            }
            MapError::InvolutionViolation { .. } => {
                CodecError::InconsistentInvolution { record, source }
            }
            other => CodecError::InvalidRecord { record, source: other },
        })?;
        maps.push(map);
        record += 1;
    }
    Ok(maps)
}

/// Encodes maps behind one header. Each rotation is serialized starting at
/// the vertex's lowest-numbered neighbor, so write → read → write is
/// byte-stable.
pub fn write_planar_code<'a>(
    maps: impl IntoIterator<Item = &'a PlanarMap>,
) -> Result<Vec<u8>, CodecError> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for map in maps {
        let n = map.vertex_count();
        if n > 255 {
            return Err(CodecError::TooLarge(n));
        }
        out.push(n as u8);
        for v in 0..n {
            let rot = map.rotation(v);
            let start = rot
                .iter()
                .enumerate()
                .min_by_key(|&(_, w)| w)
                .map(|(i, _)| i)
                .expect("maps have no isolated vertices");
            for i in 0..rot.len() {
                out.push(rot[(start + i) % rot.len()] as u8 + 1);
            }
            out.push(0);
        }
    }
    Ok(out)
}

/// A single-map stream; handy for embedding one witness in a report.
pub fn encode_single(map: &PlanarMap) -> Vec<u8> {
    write_planar_code([map]).expect("valid maps always fit the format")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, generate_platonic, FamilyId, PlatonicId};

    fn with_header(body: &[u8]) -> Vec<u8> {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend_from_slice(body);
        bytes
    }

    #[test]
    fn header_only_is_an_empty_stream() {
        assert_eq!(read_planar_code(PLANAR_CODE_HEADER), Ok(vec![]));
        assert_eq!(write_planar_code([]).unwrap(), PLANAR_CODE_HEADER.to_vec());
    }

    #[test]
    fn triangle_decodes_from_hand_written_bytes() {
        let bytes = with_header(&[3, 2, 3, 0, 1, 3, 0, 1, 2, 0]);
        let maps = read_planar_code(&bytes).unwrap();
        assert_eq!(maps.len(), 1);
        let triangle = generate_family(FamilyId::Cycle, 3).unwrap();
        assert_eq!(maps[0].canonical_code(), triangle.canonical_code());
        // Lowest-neighbor starts are already in place, so writing is exact.
        assert_eq!(write_planar_code(&maps).unwrap(), bytes);
    }

    #[test]
    fn tetrahedron_round_trips_exactly() {
        let tetra = generate_platonic(PlatonicId::Tetrahedron);
        let bytes = encode_single(&tetra);
        assert_eq!(
            bytes,
            with_header(&[4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])
        );
        let decoded = read_planar_code(&bytes).unwrap();
        assert_eq!(decoded[0].canonical_code(), tetra.canonical_code());
        assert_eq!(write_planar_code(&decoded).unwrap(), bytes);
    }

    #[test]
    fn ascending_rotations_of_k4_decode_but_are_toroidal() {
        // Sorting each neighbor list ascending is a legal record of the
        // complete graph on four vertices, but that rotation system is a
        // torus embedding, not the tetrahedron.
        let bytes = with_header(&[4, 2, 3, 4, 0, 1, 3, 4, 0, 1, 2, 4, 0, 1, 2, 3, 0]);
        let maps = read_planar_code(&bytes).unwrap();
        assert_eq!(maps[0].vertex_count(), 4);
        assert_eq!(maps[0].edge_count(), 6);
        assert!(maps[0].is_regular(3));
        assert_eq!(maps[0].genus(), 1);
        assert_ne!(
            maps[0].canonical_code(),
            generate_platonic(PlatonicId::Tetrahedron).canonical_code()
        );
    }

    #[test]
    fn multiple_records_share_one_header() {
        let c3 = generate_family(FamilyId::Cycle, 3).unwrap();
        let c5 = generate_family(FamilyId::Cycle, 5).unwrap();
        let bytes = write_planar_code([&c3, &c5]).unwrap();
        let maps = read_planar_code(&bytes).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].vertex_count(), 3);
        assert_eq!(maps[1].vertex_count(), 5);
    }

    #[test]
    fn malformed_streams_are_rejected() {
        assert_eq!(
            read_planar_code(b">>planar_kode<<"),
            Err(CodecError::BadHeader)
        );
        assert_eq!(read_planar_code(b""), Err(CodecError::BadHeader));
        assert_eq!(
            read_planar_code(&with_header(&[4, 2, 3])),
            Err(CodecError::TruncatedRecord { record: 0, vertex: 1, n: 4 })
        );
        assert_eq!(
            read_planar_code(&with_header(&[0])),
            Err(CodecError::TruncatedRecord { record: 0, vertex: 0, n: 0 })
        );
        // A vertex listing itself.
        assert!(matches!(
            read_planar_code(&with_header(&[1, 1, 0])),
            Err(CodecError::NonSimple { .. })
        ));
        // A doubled edge.
        assert!(matches!(
            read_planar_code(&with_header(&[2, 2, 2, 0, 1, 1, 0])),
            Err(CodecError::NonSimple { .. })
        ));
        // Vertex 1 claims vertex 3, which does not reciprocate.
        assert!(matches!(
            read_planar_code(&with_header(&[3, 2, 3, 0, 1, 0, 2, 0])),
            Err(CodecError::InconsistentInvolution { .. })
        ));
        // Neighbor label out of range.
        assert!(matches!(
            read_planar_code(&with_header(&[2, 2, 3, 0, 1, 0])),
            Err(CodecError::InvalidRecord { .. })
        ));
    }

    #[test]
    fn family_outputs_survive_a_write_read_write_cycle() {
        let mut maps = Vec::new();
        for id in FamilyId::ALL {
            for d in id.min_units()..=6 {
                maps.push(generate_family(id, d).unwrap());
            }
        }
        for id in PlatonicId::ALL {
            maps.push(generate_platonic(id));
        }
        let first = write_planar_code(&maps).unwrap();
        let reread = read_planar_code(&first).unwrap();
        let second = write_planar_code(&reread).unwrap();
        assert_eq!(first, second);
        for (a, b) in maps.iter().zip(&reread) {
            assert_eq!(a.canonical_code(), b.canonical_code());
        }
    }
}
