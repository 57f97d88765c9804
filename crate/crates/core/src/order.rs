//! The orientation digraph of a tiling, its acyclicity certificate, the
//! corner-collapse construction, and the (d+1)-order realizer.

use std::collections::BTreeSet;

use crate::complex::{build_complex, Realizer};
use crate::error::{Error, Result};
use crate::geometry::Box;
use crate::properness::check_pairwise;
use crate::tiling::{ExtendedTiling, Tiling};

/// Digraph on the interior box identifiers with an arc (A, B) iff A != B
/// and B_i^- < A_i^+ for every dimension i.
#[derive(Clone, Debug)]
pub struct Digraph {
    n: usize,
    succ: Vec<BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            succ: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, a: usize, b: usize) {
        self.succ[a].insert(b);
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[a].iter().copied()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.succ[a] {
                out.push((a, b));
            }
        }
        out
    }
}

pub fn build_digraph(t: &Tiling) -> Digraph {
    let n = t.len();
    let mut g = Digraph::new(n);
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let arc = (0..t.d()).all(|i| {
                t.boxes()[b].interval(i).lo() < t.boxes()[a].interval(i).hi()
            });
            if arc {
                g.add_arc(a, b);
            }
        }
    }
    g
}

/// Either a topological order or a directed cycle (closed walk, first
/// vertex repeated at the end).
#[derive(Clone, Debug)]
pub enum Acyclicity {
    Acyclic(Vec<usize>),
    Cyclic(Vec<usize>),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic(_))
    }
}

/// Kahn's algorithm, always removing the smallest available identifier so
/// the certificate order is deterministic.
pub fn is_acyclic(g: &Digraph) -> Acyclicity {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for b in g.successors(a) {
            indeg[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    let mut removed = vec![false; n];
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        removed[v] = true;
        order.push(v);
        for b in g.successors(v) {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() == n {
        return Acyclicity::Acyclic(order);
    }
    // Walk successors within the leftover subgraph until a repeat closes
    // the cycle.
    let start = (0..n).find(|&v| !removed[v]).unwrap();
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = vec![start];
    seen_at[start] = 0;
    loop {
        let v = *walk.last().unwrap();
        let next = g
            .successors(v)
            .find(|&b| !removed[b])
            .expect("leftover vertex in Kahn residue has a leftover successor");
        if seen_at[next] != usize::MAX {
            let mut cycle = walk[seen_at[next]..].to_vec();
            cycle.push(next);
            return Acyclicity::Cyclic(cycle);
        }
        seen_at[next] = walk.len();
        walk.push(next);
    }
}

/// Result of one corner-collapse step.
#[derive(Clone, Debug)]
pub struct Collapse {
    /// Identifier of the removed box X (the one containing (-1,...,-1)).
    pub removed: usize,
    /// Identifier of its partner Y.
    pub partner: usize,
    /// 0-based dimension where X and Y touch.
    pub axis: usize,
    pub tiling: Tiling,
    /// new index -> original identifier.
    pub mapping: Vec<usize>,
}

/// Removes the box at the (-1,...,-1) corner, extending its dimension-i
/// neighbors down to -1 on that axis. Requires a proper tiling in general
/// position with at least two boxes.
pub fn collapse_corner(t: &Tiling) -> Result<Collapse> {
    let d = t.d();
    if t.len() < 2 {
        return Err(Error::Precondition(
            "collapse requires at least two boxes".into(),
        ));
    }
    let corner = vec![crate::coord::Coord::int(-1); d];
    let at_corner: Vec<usize> = (0..t.len())
        .filter(|&i| t.boxes()[i].contains_point(&corner))
        .collect();
    let x = match at_corner.as_slice() {
        [x] => *x,
        _ => {
            return Err(Error::Precondition(
                "the corner (-1,...,-1) must lie in exactly one box".into(),
            ))
        }
    };
    let xb = &t.boxes()[x];

    // Find (Y, i) with X_i^+ = Y_i^- and X_j^+ = Y_j^+ for all j != i.
    let mut found = None;
    'outer: for axis in 0..d {
        for y in 0..t.len() {
            if y == x {
                continue;
            }
            let yb = &t.boxes()[y];
            let fits = (0..d).all(|j| {
                if j == axis {
                    yb.interval(j).lo() == xb.interval(j).hi()
                } else {
                    yb.interval(j).hi() == xb.interval(j).hi()
                }
            });
            if fits {
                found = Some((y, axis));
                break 'outer;
            }
        }
    }
    let (partner, axis) = found.ok_or_else(|| {
        Error::Precondition(
            "no collapse partner found; input must be proper and in general position".into(),
        )
    })?;

    let mut boxes: Vec<Box> = Vec::with_capacity(t.len() - 1);
    let mut mapping = Vec::with_capacity(t.len() - 1);
    for i in 0..t.len() {
        if i == x {
            continue;
        }
        let b = &t.boxes()[i];
        let touches_x_on_axis = match b.intersect(xb)? {
            Some(_) => b.touch_dimensions(xb)? == [axis],
            None => false,
        };
        let nb = if touches_x_on_axis {
            let iv = crate::geometry::Interval::new(
                crate::coord::Coord::int(-1),
                b.interval(axis).hi().clone(),
            )?;
            b.with_interval(axis, iv)
        } else {
            b.clone()
        };
        boxes.push(nb);
        mapping.push(i);
    }
    let tiling = Tiling::new(d, boxes)?;
    if !tiling.validate().is_valid() {
        return Err(Error::Integrity("collapse produced an invalid tiling".into()));
    }
    if !check_pairwise(&ExtendedTiling::new(tiling.clone())?).proper {
        return Err(Error::Integrity("collapse produced an improper tiling".into()));
    }
    Ok(Collapse {
        removed: x,
        partner,
        axis,
        tiling,
        mapping,
    })
}

/// Builds the d+1 linear orders realizing the induced complex: the last
/// order is a deterministic linear extension of the digraph relation, and
/// order i sorts by lower endpoint on axis i with the last order as the
/// tie-break.
pub fn construct_realizer(t: &Tiling) -> Result<Realizer> {
    let ext = ExtendedTiling::new(t.clone())?;
    if !check_pairwise(&ext).proper {
        return Err(Error::Precondition(
            "realizer construction requires a proper tiling".into(),
        ));
    }
    let g = build_digraph(t);
    let topo = match is_acyclic(&g) {
        Acyclicity::Acyclic(order) => order,
        Acyclicity::Cyclic(cycle) => {
            return Err(Error::Integrity(format!(
                "orientation digraph of a proper tiling has a cycle {cycle:?}"
            )))
        }
    };
    let mut rank = vec![0usize; t.len()];
    for (pos, &v) in topo.iter().enumerate() {
        rank[v] = pos;
    }

    let mut orders = Vec::with_capacity(t.d() + 1);
    for i in 0..t.d() {
        let mut ids: Vec<usize> = (0..t.len()).collect();
        ids.sort_by(|&a, &b| {
            t.boxes()[a]
                .interval(i)
                .lo()
                .cmp(t.boxes()[b].interval(i).lo())
                .then(rank[a].cmp(&rank[b]))
        });
        orders.push(crate::complex::LinearOrder(ids));
    }
    orders.push(crate::complex::LinearOrder(topo));
    Ok(Realizer { orders })
}

/// Convenience: the realizer together with the complex it realizes.
pub fn realizer_with_complex(t: &Tiling) -> Result<(crate::complex::SimplicialComplex, Realizer)> {
    let c = build_complex(t)?;
    let r = construct_realizer(t)?;
    Ok((c, r))
}
