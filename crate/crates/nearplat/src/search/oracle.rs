//! A deliberately naive reference enumerator for cross-checking the
//! backtracking engine: generate every labeled simple k-regular graph,
//! keep one per isomorphism class, try every rotation system of each, and
//! keep the spherical ones. Exponential everywhere, so it is capped to
//! desk sizes — the point is that it shares no search logic with the
//! engine it audits.

use thiserror::Error;

use crate::planar_map::{CanonicalCode, PlanarMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("reference enumeration of {k}-regular maps on {v} vertices exceeds the built-in cap")]
    CapExceeded { k: usize, v: usize },
}

fn cap_for(k: usize) -> usize {
    match k {
        1 => 2,
        2 => 12,
        3 => 10,
        4 => 8,
        5 => 5,
        _ => 0,
    }
}

/// Canonical codes of all spherical k-regular maps on exactly v vertices,
/// sorted. Odd k·v yields an empty list (no such graph exists).
pub fn brute_force_oracle(k: usize, v: usize) -> Result<Vec<CanonicalCode>, OracleError> {
    if k == 0 || v == 0 || (k * v) % 2 == 1 {
        return Ok(Vec::new());
    }
    if v > cap_for(k) || v > 16 {
        return Err(OracleError::CapExceeded { k, v });
    }
    if v < k + 1 {
        return Ok(Vec::new());
    }
    let mut reps: Vec<Vec<u16>> = Vec::new();
    let mut seen_graphs = std::collections::BTreeSet::new();
    for adj in labeled_regular_graphs(k, v) {
        if !connected(&adj, v) {
            continue;
        }
        if seen_graphs.insert(canonical_adjacency(&adj, v)) {
            reps.push(adj);
        }
    }
    let mut codes = std::collections::BTreeSet::new();
    for adj in &reps {
        spherical_rotation_systems(adj, k, v, &mut codes);
    }
    Ok(codes.into_iter().collect())
}

/// Every labeled simple k-regular graph on v vertices, as adjacency
/// bitmask rows. Vertices are completed in order, choosing each one's
/// higher-numbered neighbors as an increasing combination, so each edge
/// set appears exactly once.
fn labeled_regular_graphs(k: usize, v: usize) -> Vec<Vec<u16>> {
    fn next_deficient(deg: &[usize], k: usize, from: usize) -> Option<usize> {
        (from..deg.len()).find(|&u| deg[u] < k)
    }

    fn rec(
        u: usize,
        start: usize,
        k: usize,
        v: usize,
        adj: &mut Vec<u16>,
        deg: &mut Vec<usize>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if deg[u] == k {
            match next_deficient(deg, k, u + 1) {
                None => out.push(adj.clone()),
                Some(u2) => rec(u2, u2 + 1, k, v, adj, deg, out),
            }
            return;
        }
        // Not enough candidates left to finish this vertex.
        let needed = k - deg[u];
        let available = (start..v).filter(|&w| deg[w] < k).count();
        if available < needed {
            return;
        }
        for w in start..v {
            if deg[w] < k {
                adj[u] |= 1 << w;
                adj[w] |= 1 << u;
                deg[u] += 1;
                deg[w] += 1;
                rec(u, w + 1, k, v, adj, deg, out);
                adj[u] &= !(1 << w);
                adj[w] &= !(1 << u);
                deg[u] -= 1;
                deg[w] -= 1;
            }
        }
    }

    let mut out = Vec::new();
    let mut adj = vec![0u16; v];
    let mut deg = vec![0usize; v];
    rec(0, 1, k, v, &mut adj, &mut deg, &mut out);
    out
}

fn connected(adj: &[u16], v: usize) -> bool {
    let mut reached = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0u16;
        for u in 0..v {
            if frontier & (1 << u) != 0 {
                next |= adj[u] & !reached;
            }
        }
        reached |= next;
        frontier = next;
    }
    reached == (1u16 << v) - 1
}

/// Lexicographically minimal upper-triangle bit sequence over all vertex
/// permutations, built column by column with branch-and-bound; two graphs
/// are isomorphic exactly when these agree.
fn canonical_adjacency(adj: &[u16], v: usize) -> Vec<u8> {
    fn rec(
        depth: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        prefix: &mut Vec<u8>,
        best: &mut Option<Vec<u8>>,
        adj: &[u16],
        v: usize,
    ) {
        if depth == v {
            if best.as_ref().is_none_or(|b| prefix[..] < b[..]) {
                *best = Some(prefix.clone());
            }
            return;
        }
        for cand in 0..v {
            if used[cand] {
                continue;
            }
            let base = prefix.len();
            for i in 0..depth {
                prefix.push(u8::from(adj[perm[i]] & (1 << cand) != 0));
            }
            let worse = best
                .as_ref()
                .is_some_and(|b| prefix[..] > b[..prefix.len()]);
            if !worse {
                used[cand] = true;
                perm.push(cand);
                rec(depth + 1, perm, used, prefix, best, adj, v);
                perm.pop();
                used[cand] = false;
            }
            prefix.truncate(base);
        }
    }

    let mut best = None;
    rec(
        0,
        &mut Vec::with_capacity(v),
        &mut vec![false; v],
        &mut Vec::new(),
        &mut best,
        adj,
        v,
    );
    best.expect("at least the identity permutation is considered")
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Tries all (k−1)!^v rotation systems of one graph and records the
/// canonical codes of those that embed in the sphere. Fixing each
/// rotation's first entry costs nothing: a cyclic order is unchanged by
/// where the list starts.
fn spherical_rotation_systems(
    adj: &[u16],
    k: usize,
    v: usize,
    codes: &mut std::collections::BTreeSet<CanonicalCode>,
) {
    let f_target = (k * v / 2 + 2).checked_sub(v).unwrap_or(0);
    if f_target == 0 {
        return;
    }
    let choices: Vec<Vec<Vec<usize>>> = (0..v)
        .map(|u| {
            let nbrs: Vec<usize> = (0..v).filter(|&w| adj[u] & (1 << w) != 0).collect();
            permutations(&nbrs[1..])
                .into_iter()
                .map(|tail| {
                    let mut rot = Vec::with_capacity(k);
                    rot.push(nbrs[0]);
                    rot.extend(tail);
                    rot
                })
                .collect()
        })
        .collect();
    let per_vertex = choices[0].len();
    let mut idx = vec![0usize; v];
    let mut rot: Vec<Vec<usize>> = (0..v).map(|u| choices[u][0].clone()).collect();
    let mut pos = vec![0usize; v * v];
    loop {
        for u in 0..v {
            rot[u].copy_from_slice(&choices[u][idx[u]]);
        }
        for u in 0..v {
            for (s, &w) in rot[u].iter().enumerate() {
                pos[u * v + w] = s;
            }
        }
        if face_count(&rot, &pos, k, v) == f_target {
            let map = PlanarMap::new(rot.clone()).expect("reps are simple and connected");
            codes.insert(map.canonical_code());
        }
        let mut carry = 0;
        loop {
            idx[carry] += 1;
            if idx[carry] < per_vertex {
                break;
            }
            idx[carry] = 0;
            carry += 1;
            if carry == v {
                return;
            }
        }
    }
}

fn face_count(rot: &[Vec<usize>], pos: &[usize], k: usize, v: usize) -> usize {
    let darts = k * v;
    let mut visited = vec![false; darts];
    let mut faces = 0;
    for start in 0..darts {
        if visited[start] {
            continue;
        }
        faces += 1;
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            let (u, s) = (cur / k, cur % k);
            let w = rot[u][s];
            let j = pos[w * v + u];
            cur = w * k + (j + 1) % k;
        }
    }
    faces
}
