//! Separations: the equivalence classes of box sides under the
//! "intersect in a (d-1)-dimensional box" relation, the box-shape checker,
//! coplanarity, and the general-position perturbation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::coord::{Coord, Rat};
use crate::error::{Error, Result};
use crate::geometry::{sides_of, Box, BoxId, Interval, Side, Sign};
use crate::properness::check_pairwise;
use crate::tiling::{ExtendedTiling, Tiling};

/// An equivalence class of sides lying in a common hyperplane x_axis = level.
#[derive(Clone, Debug)]
pub struct Separation {
    /// 0-based degenerate dimension.
    pub axis: usize,
    pub level: Coord,
    /// Member sides, sorted by (owner, sign).
    pub sides: Vec<Side>,
}

impl Separation {
    /// The (d-1)-dimensional regions making up the separation.
    pub fn pieces(&self) -> Vec<Box> {
        self.sides.iter().map(|s| s.region.clone()).collect()
    }

    fn min_owner(&self) -> BoxId {
        self.sides.iter().map(|s| s.owner).min().unwrap()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Computes all separations of T union T_ext. Sides at infinite levels
/// (outer faces of the exterior boxes) bound nothing and are skipped.
pub fn compute_separations(ext: &ExtendedTiling) -> Result<Vec<Separation>> {
    let d = ext.d();
    let mut groups: BTreeMap<(usize, Coord), Vec<Side>> = BTreeMap::new();
    for (id, b) in ext.iter_all() {
        for side in sides_of(id, b)? {
            if side.level().is_finite() {
                groups
                    .entry((side.axis, side.level().clone()))
                    .or_default()
                    .push(side);
            }
        }
    }

    let mut out = Vec::new();
    for ((axis, level), mut sides) in groups {
        sides.sort_by_key(|s| (s.owner, s.sign));
        let n = sides.len();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(meet) = sides[i].region.intersect(&sides[j].region)? {
                    if meet.dim() == d - 1 {
                        uf.union(i, j);
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<Side>> = BTreeMap::new();
        for (i, side) in sides.into_iter().enumerate() {
            classes.entry(uf.find(i)).or_default().push(side);
        }
        for (_, sides) in classes {
            out.push(Separation {
                axis,
                level: level.clone(),
                sides,
            });
        }
    }
    out.sort_by(|a, b| {
        (a.axis, &a.level, a.min_owner()).cmp(&(b.axis, &b.level, b.min_owner()))
    });
    Ok(out)
}

/// Result of the box-shape check on a separation.
#[derive(Clone, Debug)]
pub struct ShapeResult {
    pub is_box: bool,
    /// The single-box form of the union when `is_box`.
    pub box_form: Option<Box>,
    /// A point of the bounding box not covered by the union otherwise.
    pub hole: Option<Vec<Rat>>,
}

/// Midpoint-style representative of the open interval (lo, hi).
fn open_interval_rep(lo: &Coord, hi: &Coord) -> Rat {
    let one = Rat::one();
    match (lo, hi) {
        (Coord::NegInf, Coord::PosInf) => Rat::from_integer(0.into()),
        (Coord::NegInf, Coord::Finite(b)) => b - &one,
        (Coord::Finite(a), Coord::PosInf) => a + &one,
        (Coord::Finite(a), Coord::Finite(b)) => (a + b) / Rat::from_integer(2.into()),
        _ => unreachable!("empty open interval"),
    }
}

/// Checks whether the union of the separation's pieces is a single
/// (d-1)-dimensional box: the bounding box is formed and every open cell
/// of the piece-endpoint grid inside it must be covered by some piece.
pub fn separation_is_box(sep: &Separation) -> Result<ShapeResult> {
    let pieces = sep.pieces();
    if pieces.is_empty() {
        return Err(Error::Usage("separation has no sides".into()));
    }
    let d = pieces[0].ambient();

    // Bounding box within the hyperplane.
    let mut bounds: Vec<Interval> = pieces[0].intervals().to_vec();
    for p in &pieces[1..] {
        for (axis, iv) in p.intervals().iter().enumerate() {
            let lo = Coord::min(bounds[axis].lo(), iv.lo());
            let hi = Coord::max(bounds[axis].hi(), iv.hi());
            bounds[axis] = Interval::new(lo, hi)?;
        }
    }
    let bounding = Box::new(bounds)?;

    // Per-axis grids of distinct piece endpoints (skipping the degenerate
    // axis). Every piece is a union of whole open cells of this grid.
    let mut grids: Vec<Vec<Coord>> = Vec::with_capacity(d);
    for axis in 0..d {
        let mut set = BTreeSet::new();
        if axis != sep.axis {
            for p in &pieces {
                set.insert(p.interval(axis).lo().clone());
                set.insert(p.interval(axis).hi().clone());
            }
        }
        grids.push(set.into_iter().collect());
    }

    let mut cell_reps: Vec<Vec<Rat>> = vec![Vec::new()];
    for axis in 0..d {
        let mut next = Vec::new();
        if axis == sep.axis {
            let level = sep.level.finite()?.clone();
            for rep in &cell_reps {
                let mut r = rep.clone();
                r.push(level.clone());
                next.push(r);
            }
        } else {
            let g = &grids[axis];
            for w in g.windows(2) {
                let mid = open_interval_rep(&w[0], &w[1]);
                for rep in &cell_reps {
                    let mut r = rep.clone();
                    r.push(mid.clone());
                    next.push(r);
                }
            }
        }
        cell_reps = next;
    }

    for rep in &cell_reps {
        if pieces.iter().any(|p| p.contains_rat_point(rep)) {
            continue;
        }
        return Ok(ShapeResult {
            is_box: false,
            box_form: None,
            hole: Some(rep.clone()),
        });
    }
    Ok(ShapeResult {
        is_box: true,
        box_form: Some(bounding),
        hole: None,
    })
}

/// All index pairs of separations lying in the same hyperplane. Empty
/// exactly when the tiling is in general position.
pub fn coplanar_pairs(seps: &[Separation]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..seps.len() {
        for j in (i + 1)..seps.len() {
            if seps[i].axis == seps[j].axis && seps[i].level == seps[j].level {
                out.push((i, j));
            }
        }
    }
    out
}

/// The per-dimension touch relation over T union T_ext, as canonical
/// (a, b, axis) triples with a < b.
pub fn touch_relation(ext: &ExtendedTiling) -> Result<BTreeSet<(BoxId, BoxId, usize)>> {
    let all: Vec<(BoxId, &Box)> = ext.iter_all().collect();
    let mut rel = BTreeSet::new();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if let Some(_) = all[i].1.intersect(all[j].1)? {
                for axis in all[i].1.touch_dimensions(all[j].1)? {
                    rel.insert((all[i].0, all[j].0, axis));
                }
            }
        }
    }
    Ok(rel)
}

#[derive(Clone, Debug)]
pub struct PerturbationResult {
    pub tiling: Tiling,
    /// original box id -> new box id (always the identity here; ids are
    /// preserved by the rigid translations).
    pub correspondence: Vec<usize>,
    /// The rational shifts applied, one per translated separation.
    pub epsilons: Vec<Rat>,
}

/// Smallest gap between consecutive distinct finite endpoint values on
/// `axis`, divided by four.
fn quarter_min_gap(t: &Tiling, axis: usize) -> Result<Rat> {
    let mut vals: BTreeSet<Rat> = BTreeSet::new();
    for b in t.boxes() {
        vals.insert(b.interval(axis).lo().finite()?.clone());
        vals.insert(b.interval(axis).hi().finite()?.clone());
    }
    let vals: Vec<Rat> = vals.into_iter().collect();
    let mut gap: Option<Rat> = None;
    for w in vals.windows(2) {
        let g = &w[1] - &w[0];
        if gap.as_ref().map_or(true, |m| g < *m) {
            gap = Some(g);
        }
    }
    let gap = gap.ok_or_else(|| Error::Integrity("single endpoint value on axis".into()))?;
    Ok(gap / Rat::from_integer(BigInt::from(4)))
}

/// Repeatedly translates one coplanar separation by a small rational until
/// the tiling is in general position. Properness and the touch relation
/// are preserved; boundary separations are never moved.
pub fn perturb_general_position(t: &Tiling) -> Result<PerturbationResult> {
    let ext0 = ExtendedTiling::new(t.clone())?;
    if !check_pairwise(&ext0).proper {
        return Err(Error::Precondition(
            "perturbation requires a proper tiling".into(),
        ));
    }
    let touch_before = touch_relation(&ext0)?;
    let sep_count = compute_separations(&ext0)?.len();
    let budget = sep_count * sep_count;

    let mut current = t.clone();
    let mut epsilons = Vec::new();
    for _ in 0..=budget {
        let ext = ExtendedTiling::new(current.clone())?;
        let seps = compute_separations(&ext)?;
        let pairs = coplanar_pairs(&seps);
        if pairs.is_empty() {
            let ext = ExtendedTiling::new(current.clone())?;
            if !check_pairwise(&ext).proper {
                return Err(Error::Integrity("perturbation broke properness".into()));
            }
            if touch_relation(&ext)? != touch_before {
                return Err(Error::Integrity(
                    "perturbation changed the touch relation".into(),
                ));
            }
            let correspondence = (0..current.len()).collect();
            return Ok(PerturbationResult {
                tiling: current,
                correspondence,
                epsilons,
            });
        }

        let mut involved: BTreeSet<usize> = BTreeSet::new();
        for (i, j) in &pairs {
            involved.insert(*i);
            involved.insert(*j);
        }
        // Lexicographic selection by (axis, level, min side owner id).
        let pick = *involved
            .iter()
            .min_by(|&&a, &&b| {
                (seps[a].axis, &seps[a].level, seps[a].min_owner())
                    .cmp(&(seps[b].axis, &seps[b].level, seps[b].min_owner()))
            })
            .unwrap();
        let sep = &seps[pick];
        let eps = quarter_min_gap(&current, sep.axis)?;
        let new_level = Coord::Finite(sep.level.finite()? + &eps);

        let mut boxes = current.boxes().to_vec();
        for side in &sep.sides {
            let b = match side.owner {
                BoxId::Tile(b) => b,
                BoxId::Ext(..) => {
                    return Err(Error::Integrity(
                        "coplanar separation touches the frame boundary".into(),
                    ))
                }
            };
            let iv = boxes[b].interval(sep.axis);
            let new_iv = match side.sign {
                Sign::Pos => Interval::new(iv.lo().clone(), new_level.clone())?,
                Sign::Neg => Interval::new(new_level.clone(), iv.hi().clone())?,
            };
            boxes[b] = boxes[b].with_interval(sep.axis, new_iv);
        }
        current = Tiling::new(current.d(), boxes)?;
        epsilons.push(eps);
    }
    Err(Error::Integrity(format!(
        "general position not reached within {budget} iterations"
    )))
}
