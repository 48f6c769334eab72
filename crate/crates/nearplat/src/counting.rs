//! Exact arithmetic relating vertex count, face degrees, and the number of
//! disparate faces in a k-regular genus-0 map.
//!
//! Everything here is necessary-condition bookkeeping: the identities follow
//! from 2e = kv, the face-degree handshake 2e = Σ nᵢdᵢ, and Euler's formula
//! v − e + f = 2. Passing every check never certifies that a map exists; the
//! search module settles existence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::planar_map::PlanarMap;

/// Exact rational scalar used for every formula in this module.
/// No floating point: values like 4/5 must compare exactly.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error("no positivity guarantee is available for {0} disparate faces (supported: 0..=3)")]
    UnsupportedF1(usize),
    #[error("the vertex-count formula degenerates for k={k}, common degree {d2}")]
    DegenerateDenominator { k: usize, d2: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("malformed signature string: {0}")]
    SignatureSyntax(String),
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `Φ(f₁, d₁, d₂) = 2 + f₁(d₁ − d₂)/d₂`, exactly.
///
/// Positive Φ is what pins (k, d₂) down to five pairs; see
/// [`admissible_pairs`].
pub fn phi(f1: usize, d1: usize, d2: usize) -> Rational {
    debug_assert!(d2 >= 3, "faces are at least triangles");
    let (f1, d1, d2) = (f1 as i64, d1 as i64, d2 as i64);
    ratio(2 * d2 + f1 * (d1 - d2), d2)
}

/// All (k, d₂) with k, d₂ ≥ 3 and (k − 2)(d₂ − 2) < 4, in lexicographic
/// order. These are the only regularity/common-degree combinations a map
/// with at most three disparate faces can have.
///
/// k = 2 (the polygon) is excluded: its two faces always have equal degree,
/// so it carries no information here.
pub fn admissible_pairs(f1: usize) -> Result<Vec<(usize, usize)>, CountingError> {
    if f1 > 3 {
        return Err(CountingError::UnsupportedF1(f1));
    }
    let mut pairs = Vec::new();
    let mut k = 3;
    while (k - 2) * (3 - 2) < 4 {
        let mut d2 = 3;
        while (k - 2) * (d2 - 2) < 4 {
            pairs.push((k, d2));
            d2 += 1;
        }
        k += 1;
    }
    Ok(pairs)
}

/// Total face count implied by the handshake identities:
/// `f = (kv − f₁(d₁ − d₂)) / d₂`.
///
/// The quotient is returned exactly; a non-integer result is evidence of
/// infeasibility, which callers test themselves.
pub fn total_faces(k: usize, v: usize, f1: usize, d1: usize, d2: usize) -> Rational {
    let (k, v, f1, d1, d2) = (k as i64, v as i64, f1 as i64, d1 as i64, d2 as i64);
    ratio(k * v - f1 * (d1 - d2), d2)
}

/// Vertex count forced on a map with exactly one disparate face of degree
/// d₁: `v = 2(d₁ + d₂) / (4 − (k − 2)(d₂ − 2))`.
///
/// An integral value is necessary (not sufficient) for such a map to exist,
/// so the search uses this as cell-level pruning.
pub fn vertices_for_one_disparate(
    k: usize,
    d2: usize,
    d1: usize,
) -> Result<Rational, CountingError> {
    let denom = 4 - (k as i64 - 2) * (d2 as i64 - 2);
    if denom <= 0 {
        return Err(CountingError::DegenerateDenominator { k, d2 });
    }
    Ok(ratio(2 * (d1 as i64 + d2 as i64), denom))
}

/// Vertex count of the unique single-face-degree map for an admissible
/// pair: `v = 4d₂ / (2d₂ − kd₂ + 2k)`.
pub fn platonic_vertex_count(k: usize, d2: usize) -> usize {
    let denom = 2 * d2 as i64 - (k * d2) as i64 + 2 * k as i64;
    assert!(denom > 0, "({k},{d2}) is not an admissible pair");
    let num = 4 * d2 as i64;
    assert!(num % denom == 0, "({k},{d2}) is not an admissible pair");
    (num / denom) as usize
}

/// Solves the regularity identity
/// `v(2d₂ − kd₂ + 2k) = 2f₁d₁ + (4 − 2f₁)d₂` for v, exactly.
///
/// Independent of [`vertices_for_one_disparate`]; at f₁ = 1 the two must
/// agree, which the tests check as an identity.
pub fn solve_regularity_for_v(
    k: usize,
    d2: usize,
    f1: usize,
    d1: usize,
) -> Result<Rational, CountingError> {
    let (k, d2, f1, d1) = (k as i64, d2 as i64, f1 as i64, d1 as i64);
    let coeff = 2 * d2 - k * d2 + 2 * k;
    if coeff <= 0 {
        return Err(CountingError::DegenerateDenominator {
            k: k as usize,
            d2: d2 as usize,
        });
    }
    Ok(ratio(2 * f1 * d1 + (4 - 2 * f1) * d2, coeff))
}

/// A face-degree profile `(k; d₁^n₁ … d_t^n_t)`: vertex regularity plus a
/// multiset of face degrees with multiplicities.
///
/// Entries are kept normalized: duplicate degrees merged, then sorted by
/// ascending count with ascending degree as tie-break, so the common degree
/// (largest count) comes last and disparate degrees come first. This ordering
/// also houses the degenerate case where a "disparate" degree happens to
/// equal the common one: merging collapses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    k: usize,
    faces: Vec<(usize, usize)>,
}

impl Signature {
    pub fn new(
        k: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CountingError> {
        if k < 2 {
            return Err(CountingError::InvalidSignature(format!(
                "vertex degree {k} is below 2"
            )));
        }
        let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
        for (degree, count) in entries {
            if degree < 3 {
                return Err(CountingError::InvalidSignature(format!(
                    "face degree {degree} is below 3"
                )));
            }
            if count == 0 {
                return Err(CountingError::InvalidSignature(format!(
                    "face degree {degree} has count 0"
                )));
            }
            *merged.entry(degree).or_insert(0) += count;
        }
        if merged.is_empty() {
            return Err(CountingError::InvalidSignature(
                "no face entries".to_string(),
            ));
        }
        let mut faces: Vec<(usize, usize)> = merged.into_iter().collect();
        faces.sort_by_key(|&(degree, count)| (count, degree));
        Ok(Signature { k, faces })
    }

    /// Reads the profile off a regular map.
    pub fn of_map(map: &PlanarMap) -> Result<Self, CountingError> {
        let k = map.degree(0);
        if !map.is_regular(k) {
            return Err(CountingError::InvalidSignature(
                "map is not regular".to_string(),
            ));
        }
        Signature::new(k, map.face_vector())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entries as (degree, count), disparate-first.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.faces
    }

    /// Number of distinct face degrees.
    pub fn distinct_degrees(&self) -> usize {
        self.faces.len()
    }

    pub fn total_face_count(&self) -> usize {
        self.faces.iter().map(|&(_, n)| n).sum()
    }

    pub fn face_degree_sum(&self) -> usize {
        self.faces.iter().map(|&(d, n)| d * n).sum()
    }

    /// The degree with the largest count (last entry).
    pub fn common_degree(&self) -> usize {
        self.faces.last().unwrap().0
    }

    /// Every entry except the common one.
    pub fn disparate_entries(&self) -> &[(usize, usize)] {
        &self.faces[..self.faces.len() - 1]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.k)?;
        for &(degree, count) in &self.faces {
            write!(f, " {degree}^{count}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Signature {
    type Err = CountingError;

    /// Parses `(3; 6^1 3^4)`; parentheses optional, `d` alone means `d^1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |msg: &str| CountingError::SignatureSyntax(format!("{msg}: {s:?}"));
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (k_part, faces_part) = body
            .split_once(';')
            .ok_or_else(|| syntax("missing ';' between degree and faces"))?;
        let k: usize = k_part
            .trim()
            .parse()
            .map_err(|_| syntax("vertex degree is not a number"))?;
        let mut entries = Vec::new();
        for token in faces_part.split_whitespace() {
            let (d, n) = match token.split_once('^') {
                Some((d, n)) => (
                    d.parse().map_err(|_| syntax("bad face degree"))?,
                    n.parse().map_err(|_| syntax("bad face count"))?,
                ),
                None => (token.parse().map_err(|_| syntax("bad face degree"))?, 1),
            };
            entries.push((d, n));
        }
        if entries.is_empty() {
            return Err(syntax("no face entries"));
        }
        Signature::new(k, entries)
    }
}

/// Outcome of the necessary-condition screen in [`feasibility_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible(InfeasibilityReason),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// The first identity a candidate profile violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibilityReason {
    /// The forced vertex count 2(d₁+d₂)/(4−(k−2)(d₂−2)) is not an integer,
    /// so no vertex count works for this single-disparate profile.
    DisparateVertexCountNonIntegral { required: Rational },
    /// kv is odd, so the edge count 2e = kv cannot be integral.
    OddDegreeSum,
    /// Σ nᵢdᵢ ≠ kv: faces and vertices disagree about the dart total.
    FaceDegreeSumMismatch { face_degree_sum: usize, dart_count: usize },
    /// v − e + f ≠ 2.
    EulerMismatch { euler_characteristic: i64 },
    /// v(2d₂ − kd₂ + 2k) ≠ 2f₁d₁ + (4 − 2f₁)d₂.
    RegularityIdentityMismatch,
    /// Φ ≤ 0 for a split with at most three disparate faces.
    NonPositivePhi { value: Rational },
}

impl fmt::Display for InfeasibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfeasibilityReason::DisparateVertexCountNonIntegral { required } => {
                write!(f, "forced vertex count {required} is not an integer")
            }
            InfeasibilityReason::OddDegreeSum => {
                write!(f, "degree sum kv is odd")
            }
            InfeasibilityReason::FaceDegreeSumMismatch { face_degree_sum, dart_count } => {
                write!(
                    f,
                    "face degrees sum to {face_degree_sum} but the map has {dart_count} darts"
                )
            }
            InfeasibilityReason::EulerMismatch { euler_characteristic } => {
                write!(f, "v - e + f = {euler_characteristic}, not 2")
            }
            InfeasibilityReason::RegularityIdentityMismatch => {
                write!(f, "vertex count contradicts the regularity identity")
            }
            InfeasibilityReason::NonPositivePhi { value } => {
                write!(f, "phi = {value} is not positive")
            }
        }
    }
}

/// Screens a (signature, vertex count) candidate against every counting
/// identity a genus-0 k-regular map must satisfy.
///
/// `Feasible` means only that no identity rules the candidate out;
/// existence is a strictly harder question.
pub fn feasibility_check(sig: &Signature, v: usize) -> Feasibility {
    use InfeasibilityReason::*;
    let k = sig.k();

    // A single disparate face pins v regardless of the input: if that value
    // is not an integer, no vertex count can work, which is sharper evidence
    // than any per-v mismatch below.
    if sig.distinct_degrees() == 2 && sig.entries()[0].1 == 1 {
        let d1 = sig.entries()[0].0;
        let d2 = sig.common_degree();
        if let Ok(required) = vertices_for_one_disparate(k, d2, d1) {
            if !required.is_integer() {
                return Feasibility::Infeasible(DisparateVertexCountNonIntegral { required });
            }
        }
    }

    if (k * v) % 2 != 0 {
        return Feasibility::Infeasible(OddDegreeSum);
    }
    let dart_count = k * v;
    let face_degree_sum = sig.face_degree_sum();
    if face_degree_sum != dart_count {
        return Feasibility::Infeasible(FaceDegreeSumMismatch { face_degree_sum, dart_count });
    }
    let e = dart_count / 2;
    let chi = v as i64 - e as i64 + sig.total_face_count() as i64;
    if chi != 2 {
        return Feasibility::Infeasible(EulerMismatch { euler_characteristic: chi });
    }

    if sig.distinct_degrees() <= 2 {
        let d2 = sig.common_degree();
        let (d1, f1) = match sig.disparate_entries() {
            [] => (d2, 0),
            [(d, n)] => (*d, *n),
            _ => unreachable!(),
        };
        let (ki, vi, d1i, d2i, f1i) = (k as i64, v as i64, d1 as i64, d2 as i64, f1 as i64);
        if vi * (2 * d2i - ki * d2i + 2 * ki) != 2 * f1i * d1i + (4 - 2 * f1i) * d2i {
            return Feasibility::Infeasible(RegularityIdentityMismatch);
        }
        // Positivity holds under the hypotheses with at most three disparate
        // faces; both ways of naming the split are screened.
        let mut splits = vec![(f1, d1, d2)];
        if sig.distinct_degrees() == 2 {
            let common_count = sig.entries().last().unwrap().1;
            splits.push((common_count, d2, d1));
        }
        for (f1, d1, d2) in splits {
            if f1 <= 3 {
                let value = phi(f1, d1, d2);
                if value <= rat(0) {
                    return Feasibility::Infeasible(NonPositivePhi { value });
                }
            }
        }
    }

    Feasibility::Feasible
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_matches_known_values() {
        assert_eq!(phi(0, 7, 3), rat(2));
        assert_eq!(phi(3, 3, 5), ratio(4, 5));
        assert_eq!(phi(1, 9, 3), rat(4));
    }

    #[test]
    fn phi_is_positive_under_the_small_disparate_count_hypotheses() {
        // With at most two disparate faces the bound is unconditional; with
        // three, the common degree is forced to be at most 5.
        for f1 in 0..=2 {
            for d1 in 3..=40 {
                for d2 in 3..=40 {
                    assert!(phi(f1, d1, d2) > rat(0), "phi({f1},{d1},{d2})");
                }
            }
        }
        for d1 in 3..=40 {
            for d2 in 3..=5 {
                assert!(phi(3, d1, d2) > rat(0), "phi(3,{d1},{d2})");
            }
        }
        // Outside those hypotheses positivity genuinely fails.
        assert!(phi(3, 3, 12) < rat(0));
    }

    #[test]
    fn exactly_five_admissible_pairs() {
        let expected = vec![(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)];
        for f1 in 0..=3 {
            assert_eq!(admissible_pairs(f1).unwrap(), expected);
        }
        for (k, d2) in admissible_pairs(0).unwrap() {
            assert!((k - 2) * (d2 - 2) < 4);
        }
        assert_eq!(admissible_pairs(4), Err(CountingError::UnsupportedF1(4)));
    }

    #[test]
    fn total_faces_matches_known_values() {
        assert_eq!(total_faces(3, 4, 0, 3, 3), rat(4));
        assert_eq!(total_faces(3, 8, 0, 4, 4), rat(6));
        assert_eq!(total_faces(3, 10, 1, 6, 4), rat(7));
        // Non-integral results are reported as-is.
        assert_eq!(total_faces(3, 5, 0, 3, 4), ratio(15, 4));
    }

    #[test]
    fn one_disparate_vertex_counts_match_known_values() {
        assert_eq!(vertices_for_one_disparate(3, 3, 6).unwrap(), rat(6));
        assert_eq!(vertices_for_one_disparate(3, 4, 6).unwrap(), rat(10));
        assert_eq!(vertices_for_one_disparate(4, 3, 4).unwrap(), rat(7));
        assert_eq!(vertices_for_one_disparate(3, 3, 4).unwrap(), ratio(14, 3));
        assert_eq!(
            vertices_for_one_disparate(6, 4, 5),
            Err(CountingError::DegenerateDenominator { k: 6, d2: 4 })
        );
    }

    #[test]
    fn platonic_vertex_counts() {
        let expected = [((3, 3), 4), ((3, 4), 8), ((3, 5), 20), ((4, 3), 6), ((5, 3), 12)];
        for ((k, d2), v) in expected {
            assert_eq!(platonic_vertex_count(k, d2), v);
        }
    }

    #[test]
    fn closed_form_vertex_count_agrees_with_solving_the_identity() {
        for (k, d2) in admissible_pairs(1).unwrap() {
            for d1 in 3..=100 {
                if d1 == d2 {
                    continue;
                }
                assert_eq!(
                    vertices_for_one_disparate(k, d2, d1).unwrap(),
                    solve_regularity_for_v(k, d2, 1, d1).unwrap(),
                    "k={k} d2={d2} d1={d1}"
                );
            }
        }
    }

    #[test]
    fn signature_normalizes_and_prints() {
        let sig = Signature::new(3, [(3, 4), (6, 1)]).unwrap();
        assert_eq!(sig.entries(), &[(6, 1), (3, 4)]);
        assert_eq!(sig.to_string(), "(3; 6^1 3^4)");
        assert_eq!(sig.common_degree(), 3);
        assert_eq!(sig.disparate_entries(), &[(6, 1)]);
        // Duplicate degrees merge, collapsing the equal-degree degeneracy.
        let merged = Signature::new(3, [(4, 2), (4, 4)]).unwrap();
        assert_eq!(merged.entries(), &[(4, 6)]);
        assert_eq!(merged.distinct_degrees(), 1);
    }

    #[test]
    fn signature_round_trips_through_its_notation() {
        for text in ["(3; 6^1 3^4)", "(4; 3^8)", "(5; 4^2 3^18)"] {
            let sig: Signature = text.parse().unwrap();
            assert_eq!(sig.to_string(), text);
        }
        // Bare degrees mean count one.
        let sig: Signature = "3; 6 3^4".parse().unwrap();
        assert_eq!(sig.to_string(), "(3; 6^1 3^4)");
        assert!("(3)".parse::<Signature>().is_err());
        assert!("(3; )".parse::<Signature>().is_err());
        assert!("(3; x^2)".parse::<Signature>().is_err());
    }

    #[test]
    fn signature_rejects_bad_entries() {
        assert!(Signature::new(1, [(3, 1)]).is_err());
        assert!(Signature::new(3, [(2, 1)]).is_err());
        assert!(Signature::new(3, [(3, 0)]).is_err());
        assert!(Signature::new(3, std::iter::empty()).is_err());
    }

    #[test]
    fn feasibility_accepts_consistent_profiles() {
        let tetra = Signature::new(3, [(3, 4)]).unwrap();
        assert_eq!(feasibility_check(&tetra, 4), Feasibility::Feasible);
        // One hexagonal face among triangles at the forced vertex count.
        let hex = Signature::new(3, [(6, 1), (3, 4)]).unwrap();
        assert_eq!(feasibility_check(&hex, 6), Feasibility::Feasible);
        // Polygon: two faces of equal degree.
        let pentagon = Signature::new(2, [(5, 2)]).unwrap();
        assert_eq!(feasibility_check(&pentagon, 5), Feasibility::Feasible);
    }

    #[test]
    fn forced_vertex_count_outranks_per_vertex_mismatches() {
        // 2(4+3)/3 = 14/3: no vertex count works, whatever v says.
        let sig = Signature::new(3, [(4, 1), (3, 6)]).unwrap();
        for v in [4, 5, 6, 14] {
            match feasibility_check(&sig, v) {
                Feasibility::Infeasible(
                    InfeasibilityReason::DisparateVertexCountNonIntegral { required },
                ) => {
                    assert_eq!(required, ratio(14, 3));
                }
                other => panic!("expected non-integral vertex count, got {other:?}"),
            }
        }
    }

    #[test]
    fn feasibility_reports_the_first_violated_identity() {
        let tetra = Signature::new(3, [(3, 4)]).unwrap();
        assert_eq!(
            feasibility_check(&tetra, 5),
            Feasibility::Infeasible(InfeasibilityReason::OddDegreeSum)
        );
        assert_eq!(
            feasibility_check(&tetra, 6),
            Feasibility::Infeasible(InfeasibilityReason::FaceDegreeSumMismatch {
                face_degree_sum: 12,
                dart_count: 18,
            })
        );
        // Dart totals match at v=4 but the face count breaks Euler.
        let torus_like = Signature::new(4, [(4, 4)]).unwrap();
        assert_eq!(
            feasibility_check(&torus_like, 4),
            Feasibility::Infeasible(InfeasibilityReason::EulerMismatch {
                euler_characteristic: 0,
            })
        );
    }

    #[test]
    fn feasibility_on_map_derived_signatures() {
        // Signatures read off genuine maps always pass at their own v.
        let tetra = PlanarMap::new(vec![
            vec![1, 2, 3],
            vec![2, 0, 3],
            vec![3, 0, 1],
            vec![1, 0, 2],
        ])
        .unwrap();
        let sig = Signature::of_map(&tetra).unwrap();
        assert_eq!(sig.to_string(), "(3; 3^4)");
        assert_eq!(feasibility_check(&sig, tetra.vertex_count()), Feasibility::Feasible);
    }
}
