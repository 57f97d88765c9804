//! The three equivalent properness characterizations: maximum coverage
//! depth, pairwise intersection dimension, and intersecting-family
//! dimension, plus the touch-witness finder.

use num_traits::One;

use crate::coord::{Coord, Rat};
use crate::error::{Error, Result};
use crate::geometry::{Box, BoxId};
use crate::tiling::ExtendedTiling;

/// A concrete certificate of improperness. Every witness re-checks true
/// against the raw definitions.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A point covered by at least d+2 boxes of T and T_ext.
    DeepPoint { point: Vec<Rat>, ids: Vec<BoxId> },
    /// An intersecting pair with dim(A cap B) != d-1.
    BadPair { a: BoxId, b: BoxId, meet: Box },
    /// A pairwise-intersecting family violating dim = d+1-k (or of size d+2).
    BadFamily { ids: Vec<BoxId>, meet: Box },
}

#[derive(Clone, Debug)]
pub struct PropernessReport {
    pub proper: bool,
    pub witness: Option<Witness>,
}

impl PropernessReport {
    fn proper() -> Self {
        PropernessReport {
            proper: true,
            witness: None,
        }
    }

    fn improper(w: Witness) -> Self {
        PropernessReport {
            proper: false,
            witness: Some(w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DepthResult {
    pub depth: usize,
    /// Lexicographically least maximizing grid point.
    pub point: Vec<Rat>,
    /// Boxes of T and T_ext containing that point, in canonical order.
    pub ids: Vec<BoxId>,
}

/// Maximum number of boxes of T union T_ext containing a single point.
///
/// Coverage depth of closed boxes attains its maximum at a point whose
/// every coordinate is a box endpoint, and clamping a point into the frame
/// never loses a covering box, so searching the finite per-axis endpoint
/// grid inside [-1,+1]^d is exhaustive.
pub fn max_depth(ext: &ExtendedTiling) -> DepthResult {
    let d = ext.d();
    let one = Rat::one();
    let grid: Vec<Vec<Rat>> = ext
        .coordinate_set()
        .into_iter()
        .map(|axis_vals| {
            axis_vals
                .into_iter()
                .filter_map(|c| match c {
                    Coord::Finite(r) if r >= -one.clone() && r <= one => Some(r),
                    _ => None,
                })
                .collect()
        })
        .collect();

    struct Search<'a> {
        ext: &'a ExtendedTiling,
        grid: &'a [Vec<Rat>],
        point: Vec<Rat>,
        best: Option<DepthResult>,
    }

    impl Search<'_> {
        fn run(&mut self, axis: usize, cand: &[usize]) {
            let d = self.ext.d();
            if axis == d {
                let mut ids: Vec<BoxId> = cand.iter().map(|&i| BoxId::Tile(i)).collect();
                for (id, b) in self.ext.iter_all() {
                    if matches!(id, BoxId::Ext(..)) && b.contains_rat_point(&self.point) {
                        ids.push(id);
                    }
                }
                let depth = ids.len();
                if self.best.as_ref().map_or(true, |b| depth > b.depth) {
                    self.best = Some(DepthResult {
                        depth,
                        point: self.point.clone(),
                        ids,
                    });
                }
                return;
            }
            // Upper bound: surviving interior boxes plus one potential
            // exterior box per remaining or boundary-pinned axis.
            let bound = cand.len() + d;
            if let Some(best) = &self.best {
                if bound <= best.depth {
                    return;
                }
            }
            for x in &self.grid[axis] {
                let next: Vec<usize> = cand
                    .iter()
                    .copied()
                    .filter(|&i| {
                        self.ext.base().boxes()[i]
                            .interval(axis)
                            .contains(&Coord::Finite(x.clone()))
                    })
                    .collect();
                self.point.push(x.clone());
                self.run(axis + 1, &next);
                self.point.pop();
            }
        }
    }

    let all: Vec<usize> = (0..ext.base().len()).collect();
    let mut search = Search {
        ext,
        grid: &grid,
        point: Vec::with_capacity(d),
        best: None,
    };
    search.run(0, &all);
    search.best.unwrap_or(DepthResult {
        depth: 0,
        point: Vec::new(),
        ids: Vec::new(),
    })
}

/// Properness via the depth definition: no point in more than d+1 boxes.
pub fn check_depth(ext: &ExtendedTiling) -> PropernessReport {
    let res = max_depth(ext);
    if res.depth <= ext.d() + 1 {
        PropernessReport::proper()
    } else {
        PropernessReport::improper(Witness::DeepPoint {
            point: res.point,
            ids: res.ids,
        })
    }
}

/// Properness via pairwise intersections: every intersecting pair of
/// T union T_ext meets in a (d-1)-dimensional box.
pub fn check_pairwise(ext: &ExtendedTiling) -> PropernessReport {
    let d = ext.d();
    let all: Vec<(BoxId, &Box)> = ext.iter_all().collect();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            let (ida, a) = &all[i];
            let (idb, b) = &all[j];
            if let Ok(Some(meet)) = a.intersect(b) {
                if meet.dim() != d - 1 {
                    return PropernessReport::improper(Witness::BadPair {
                        a: *ida,
                        b: *idb,
                        meet,
                    });
                }
            }
        }
    }
    PropernessReport::proper()
}

/// Properness via intersecting families: every pairwise-intersecting
/// family of size k <= d+1 meets in a box of dimension d+1-k, and no
/// family of size d+2 exists.
pub fn check_families(ext: &ExtendedTiling) -> PropernessReport {
    let d = ext.d();
    let all: Vec<(BoxId, Box)> = ext.iter_all().map(|(id, b)| (id, b.clone())).collect();
    let n = all.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if let Ok(Some(_)) = all[i].1.intersect(&all[j].1) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }

    // Depth-first clique extension in index order; index order equals
    // canonical identifier order, so the first violation found is the
    // lexicographically least one.
    fn extend(
        all: &[(BoxId, Box)],
        adj: &[Vec<bool>],
        d: usize,
        clique: &mut Vec<usize>,
        meet: &Box,
    ) -> Option<Witness> {
        let k = clique.len();
        if k == d + 2 {
            return Some(Witness::BadFamily {
                ids: clique.iter().map(|&i| all[i].0).collect(),
                meet: meet.clone(),
            });
        }
        if k >= 1 && meet.dim() != d + 1 - k {
            return Some(Witness::BadFamily {
                ids: clique.iter().map(|&i| all[i].0).collect(),
                meet: meet.clone(),
            });
        }
        let start = clique.last().map_or(0, |&l| l + 1);
        for v in start..all.len() {
            if !clique.iter().all(|&u| adj[u][v]) {
                continue;
            }
            // Boxes have the Helly property, so the meet stays non-empty.
            let next = meet
                .intersect(&all[v].1)
                .expect("same ambient dimension")
                .expect("Helly property: pairwise-intersecting boxes share a point");
            clique.push(v);
            if let Some(w) = extend(all, adj, d, clique, &next) {
                return Some(w);
            }
            clique.pop();
        }
        None
    }

    for v in 0..n {
        let mut clique = vec![v];
        let meet = all[v].1.clone();
        if let Some(w) = extend(&all, &adj, d, &mut clique, &meet) {
            return PropernessReport::improper(w);
        }
    }
    PropernessReport::proper()
}

/// Finds some box B of T union T_ext containing `p` that touches `a` only
/// in dimension `axis`. Existence is guaranteed for valid tilings, so a
/// missing witness is an integrity error.
pub fn touch_witness(
    ext: &ExtendedTiling,
    a: BoxId,
    p: &[Rat],
    axis: usize,
) -> Result<BoxId> {
    let d = ext.d();
    if axis >= d {
        return Err(Error::Usage(format!("axis {} out of range", axis + 1)));
    }
    let abox = ext.get(a);
    if !abox.contains_rat_point(p) {
        return Err(Error::Precondition("point not contained in the box".into()));
    }
    let pc = Coord::Finite(p[axis].clone());
    let iv = abox.interval(axis);
    if pc != *iv.lo() && pc != *iv.hi() {
        return Err(Error::Precondition(
            "point coordinate is not an endpoint of the box on this axis".into(),
        ));
    }
    for (id, b) in ext.iter_all() {
        if id == a || !b.contains_rat_point(p) {
            continue;
        }
        if let Ok(touch) = abox.touch_dimensions(b) {
            if touch == [axis] {
                return Ok(id);
            }
        }
    }
    Err(Error::Integrity(
        "no touch witness found; the input is not a valid tiling".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{fixture, Fixture};
    use crate::geometry::Sign;

    fn extended(f: &Fixture) -> ExtendedTiling {
        ExtendedTiling::new(fixture(f).unwrap()).unwrap()
    }

    fn rat(p: i64, q: i64) -> Rat {
        match Coord::rat(p, q) {
            Coord::Finite(r) => r,
            _ => unreachable!(),
        }
    }

    #[test]
    fn depth_grid2x2() {
        let res = max_depth(&extended(&Fixture::Grid2x2));
        assert_eq!(res.depth, 4);
        assert_eq!(res.point, vec![rat(0, 1), rat(0, 1)]);
        assert_eq!(res.ids.len(), 4);
    }

    #[test]
    fn depth_pinwheel() {
        let res = max_depth(&extended(&Fixture::Pinwheel));
        assert_eq!(res.depth, 3);
    }

    #[test]
    fn depth_single_box_d2() {
        // corner (-1,-1) lies in the box, T(1,-), and T(2,-)
        let res = max_depth(&extended(&Fixture::Single(2)));
        assert_eq!(res.depth, 3);
        assert_eq!(res.point, vec![rat(-1, 1), rat(-1, 1)]);
    }

    #[test]
    fn pairwise_grid2x2_witness() {
        let report = check_pairwise(&extended(&Fixture::Grid2x2));
        assert!(!report.proper);
        match report.witness.unwrap() {
            Witness::BadPair { a, b, meet } => {
                assert_eq!((a, b), (BoxId::Tile(0), BoxId::Tile(1)));
                assert_eq!(meet.dim(), 0);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn pairwise_pinwheel_proper() {
        assert!(check_pairwise(&extended(&Fixture::Pinwheel)).proper);
    }

    #[test]
    fn pairwise_three_row_proper() {
        assert!(check_pairwise(&extended(&Fixture::ThreeRowCoplanar)).proper);
    }

    #[test]
    fn families_pinwheel() {
        assert!(check_families(&extended(&Fixture::Pinwheel)).proper);
        // the family {B1, B2, B5} meets at the point (1/2, -1/2)
        let ext = extended(&Fixture::Pinwheel);
        let meet = ext.base().boxes()[0]
            .intersect(&ext.base().boxes()[1])
            .unwrap()
            .unwrap()
            .intersect(&ext.base().boxes()[4])
            .unwrap()
            .unwrap();
        assert_eq!(meet.dim(), 0);
        assert!(meet.contains_rat_point(&[rat(1, 2), rat(-1, 2)]));
    }

    #[test]
    fn families_single_box() {
        assert!(check_families(&extended(&Fixture::Single(2))).proper);
    }

    #[test]
    fn families_grid2x2_witness() {
        let report = check_families(&extended(&Fixture::Grid2x2));
        assert!(!report.proper);
        match report.witness.unwrap() {
            Witness::BadFamily { ids, meet } => {
                assert!(ids.len() >= 2);
                assert!(meet.contains_rat_point(&[rat(0, 1), rat(0, 1)]));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn touch_witness_pinwheel() {
        let ext = extended(&Fixture::Pinwheel);
        let w = touch_witness(&ext, BoxId::Tile(0), &[rat(1, 2), rat(-3, 4)], 0).unwrap();
        assert_eq!(w, BoxId::Tile(1));
        let w = touch_witness(&ext, BoxId::Tile(4), &[rat(0, 1), rat(-1, 2)], 1).unwrap();
        assert_eq!(w, BoxId::Tile(0));
    }

    #[test]
    fn touch_witness_single_box() {
        let ext = extended(&Fixture::Single(2));
        let w = touch_witness(&ext, BoxId::Tile(0), &[rat(-1, 1), rat(0, 1)], 0).unwrap();
        assert_eq!(w, BoxId::Ext(0, Sign::Neg));
    }

    #[test]
    fn touch_witness_preconditions() {
        let ext = extended(&Fixture::Pinwheel);
        // point not on an endpoint of the axis interval
        assert!(matches!(
            touch_witness(&ext, BoxId::Tile(0), &[rat(0, 1), rat(-3, 4)], 0),
            Err(Error::Precondition(_))
        ));
        // point outside the box
        assert!(matches!(
            touch_witness(&ext, BoxId::Tile(0), &[rat(1, 1), rat(1, 1)], 0),
            Err(Error::Precondition(_))
        ));
    }
}
