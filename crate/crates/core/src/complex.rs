//! The simplicial complex induced by a tiling, realizer verification, and
//! a brute-force Dushnik-Miller dimension oracle for small complexes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::Tiling;

/// A simplicial complex given by its vertex identifiers and the antichain
/// of its maximal faces (all faces are the downward closure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<usize>,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Normalizes: vertices sorted, faces sorted, inclusion-maximal only.
    pub fn new(mut vertices: Vec<usize>, faces: Vec<Vec<usize>>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let mut norm: Vec<Vec<usize>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            for v in &f {
                if !vertices.contains(v) {
                    return Err(Error::Usage(format!("face vertex {v} not in vertex set")));
                }
            }
            norm.push(f);
        }
        // keep only inclusion-maximal faces; make every vertex appear
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for f in &norm {
            if !norm
                .iter()
                .any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))
            {
                maximal.push(f.clone());
            }
        }
        for &v in &vertices {
            if !maximal.iter().any(|f| f.contains(&v)) {
                maximal.push(vec![v]);
            }
        }
        maximal.sort();
        maximal.dedup();
        Ok(SimplicialComplex {
            vertices,
            maximal_faces: maximal,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SimplicialComplex =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        SimplicialComplex::new(raw.vertices, raw.maximal_faces)
    }

    /// Every face of the complex (downward closure of the maximal faces),
    /// deduplicated. Exponential; test-scale only.
    pub fn all_faces(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for f in &self.maximal_faces {
            let n = f.len();
            for mask in 1u32..(1 << n) {
                let sub: Vec<usize> = (0..n)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| f[i])
                    .collect();
                out.push(sub);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Faces of the complex induced by a tiling: subsets of boxes with a
/// common point. Boxes have the Helly property, so these are exactly the
/// cliques of the pairwise-intersection graph.
pub fn build_complex(t: &Tiling) -> Result<SimplicialComplex> {
    let n = t.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if t.boxes()[i].intersect(&t.boxes()[j])?.is_some() {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }

    // Bron-Kerbosch with pivoting.
    fn bk(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = *p.iter().chain(x.iter()).next().unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in candidates {
            let np: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
            r.push(v);
            bk(adj, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }

    let mut faces = Vec::new();
    if n > 0 {
        bk(
            &adj,
            &mut Vec::new(),
            (0..n).collect(),
            Vec::new(),
            &mut faces,
        );
    }
    SimplicialComplex::new((0..n).collect(), faces)
}

/// A total order over vertex identifiers: position in the list is the
/// rank, later entries are greater.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearOrder(pub Vec<usize>);

impl LinearOrder {
    pub fn ranks(&self) -> BTreeMap<usize, usize> {
        self.0.iter().enumerate().map(|(pos, &v)| (v, pos)).collect()
    }
}

/// A tuple of linear orders certifying a Dushnik-Miller dimension bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    pub orders: Vec<LinearOrder>,
}

impl Realizer {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyResult {
    pub ok: bool,
    /// First violating (face, vertex) pair in deterministic order.
    pub violation: Option<(Vec<usize>, usize)>,
}

/// Checks the realizer condition: for every face F and every vertex u
/// there is an order in which u dominates all of F. Faces F are iterated
/// through the maximal faces; a dominated face dominates all its subsets,
/// so this is equivalent to checking the full downward closure.
pub fn verify_realizer(c: &SimplicialComplex, r: &Realizer) -> Result<VerifyResult> {
    if r.orders.is_empty() {
        return Err(Error::Usage("realizer has no orders".into()));
    }
    let mut sorted_vertices = c.vertices.clone();
    sorted_vertices.sort_unstable();
    for o in &r.orders {
        let mut ids = o.0.clone();
        ids.sort_unstable();
        if ids != sorted_vertices {
            return Err(Error::Usage(
                "realizer orders must cover exactly the complex vertices".into(),
            ));
        }
    }
    let ranks: Vec<BTreeMap<usize, usize>> = r.orders.iter().map(|o| o.ranks()).collect();
    for face in &c.maximal_faces {
        for &u in &c.vertices {
            let dominated = ranks.iter().any(|rk| {
                let ru = rk[&u];
                face.iter().all(|v| rk[v] <= ru)
            });
            if !dominated {
                return Ok(VerifyResult {
                    ok: false,
                    violation: Some((face.clone(), u)),
                });
            }
        }
    }
    Ok(VerifyResult {
        ok: true,
        violation: None,
    })
}

/// As `verify_realizer` but iterating the full downward closure; used to
/// assert the maximal-face optimization equivalent on small instances.
pub fn verify_realizer_literal(c: &SimplicialComplex, r: &Realizer) -> Result<bool> {
    let ranks: Vec<BTreeMap<usize, usize>> = r.orders.iter().map(|o| o.ranks()).collect();
    for face in c.all_faces() {
        for &u in &c.vertices {
            let dominated = ranks.iter().any(|rk| {
                let ru = rk[&u];
                face.iter().all(|v| rk[v] <= ru)
            });
            if !dominated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct DmOptions {
    /// Refuse vertex sets larger than this unless `force` is set; the
    /// search enumerates |V|! permutations.
    pub max_vertices: usize,
    pub force: bool,
}

impl Default for DmOptions {
    fn default() -> Self {
        DmOptions {
            max_vertices: 7,
            force: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DmResult {
    /// Smallest k <= kmax admitting a realizer, or None ("exceeds kmax").
    pub dimension: Option<usize>,
    /// Lexicographically least witness realizer for that k.
    pub realizer: Option<Realizer>,
}

/// Exhaustive Dushnik-Miller dimension: the smallest k <= kmax for which
/// some k-tuple of linear orders realizes the complex.
pub fn dm_dimension(c: &SimplicialComplex, kmax: usize, opts: &DmOptions) -> Result<DmResult> {
    let n = c.vertices.len();
    if n > opts.max_vertices && !opts.force {
        return Err(Error::Usage(format!(
            "{n} vertices exceed the brute-force guard of {}; pass force to override",
            opts.max_vertices
        )));
    }
    if n == 0 {
        return Err(Error::Usage("empty complex".into()));
    }

    // All permutations in lexicographic order, as rank arrays indexed by
    // vertex position in c.vertices.
    let perms = permutations_lex(n);

    // Domination pairs (face, u): a bit per pair, orders precomputed as
    // coverage bitsets.
    let faces = &c.maximal_faces;
    let vert_index: BTreeMap<usize, usize> = c
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let n_pairs = faces.len() * n;
    let words = n_pairs.div_ceil(64);
    let mut coverage: Vec<Vec<u64>> = Vec::with_capacity(perms.len());
    for perm in &perms {
        let mut rank = vec![0usize; n];
        for (pos, &v) in perm.iter().enumerate() {
            rank[v] = pos;
        }
        let mut bits = vec![0u64; words];
        for (fi, face) in faces.iter().enumerate() {
            let fmax = face.iter().map(|v| rank[vert_index[v]]).max().unwrap();
            for ui in 0..n {
                if rank[ui] >= fmax {
                    let pair = fi * n + ui;
                    bits[pair / 64] |= 1 << (pair % 64);
                }
            }
        }
        coverage.push(bits);
    }
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let lo = w * 64;
            let hi = ((w + 1) * 64).min(n_pairs);
            if hi - lo == 64 {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            }
        })
        .collect();

    // A realizer is a set of orders, so enumerating non-decreasing index
    // tuples loses nothing; the first hit is the lexicographically least.
    fn search(
        coverage: &[Vec<u64>],
        full: &[u64],
        covered: &[u64],
        chosen: &mut Vec<usize>,
        start: usize,
        slots: usize,
    ) -> bool {
        if covered == full {
            return true;
        }
        if slots == 0 {
            return false;
        }
        for idx in start..coverage.len() {
            let next: Vec<u64> = covered
                .iter()
                .zip(&coverage[idx])
                .map(|(a, b)| a | b)
                .collect();
            if next == covered {
                continue;
            }
            chosen.push(idx);
            if search(coverage, full, &next, chosen, idx, slots - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    // Every vertex of a face must top that face in some order.
    let lower = faces.iter().map(|f| f.len()).max().unwrap_or(1).max(1);
    for k in lower..=kmax {
        let mut chosen = Vec::new();
        let covered = vec![0u64; words];
        if search(&coverage, &full, &covered, &mut chosen, 0, k) {
            // pad with repeats if the cover used fewer than k orders
            while chosen.len() < k {
                let last = *chosen.last().unwrap_or(&0);
                chosen.push(last);
            }
            let orders = chosen
                .iter()
                .map(|&idx| {
                    LinearOrder(perms[idx].iter().map(|&i| c.vertices[i]).collect())
                })
                .collect();
            return Ok(DmResult {
                dimension: Some(k),
                realizer: Some(Realizer { orders }),
            });
        }
    }
    Ok(DmResult {
        dimension: None,
        realizer: None,
    })
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}
