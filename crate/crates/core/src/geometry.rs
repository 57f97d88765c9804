//! Exact interval and box primitives: intersection, dimension, sides,
//! corners and the touch relation.

use std::fmt;

use crate::coord::{Coord, Rat};
use crate::error::{Error, Result};

/// Endpoint selector of an interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Neg,
    Pos,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Neg => write!(f, "-"),
            Sign::Pos => write!(f, "+"),
        }
    }
}

/// Identifier of a box in a tiling together with its exterior companions.
/// Interior identifiers are dense integers assigned by input order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BoxId {
    Tile(usize),
    /// Exterior box T(axis, sign); `axis` is 0-based internally.
    Ext(usize, Sign),
}

impl fmt::Display for BoxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxId::Tile(i) => write!(f, "B{i}"),
            BoxId::Ext(axis, sign) => write!(f, "T({},{})", axis + 1, sign),
        }
    }
}

/// A closed interval [lo, hi] on the extended real line, lo <= hi.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Coord,
    hi: Coord,
}

impl Interval {
    pub fn new(lo: Coord, hi: Coord) -> Result<Self> {
        if lo > hi {
            return Err(Error::Usage(format!("interval [{lo},{hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(c: Coord) -> Self {
        Interval { lo: c.clone(), hi: c }
    }

    pub fn of_rats(lo: Rat, hi: Rat) -> Result<Self> {
        Interval::new(Coord::Finite(lo), Coord::Finite(hi))
    }

    /// Integer-endpoint literal, panics on lo > hi; intended for fixtures.
    pub fn ints(lo: i64, hi: i64) -> Self {
        Interval::new(Coord::int(lo), Coord::int(hi)).unwrap()
    }

    pub fn lo(&self) -> &Coord {
        &self.lo
    }

    pub fn hi(&self) -> &Coord {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, c: &Coord) -> bool {
        self.lo <= *c && *c <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Coord::max(&self.lo, &other.lo);
        let hi = Coord::min(&self.hi, &other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Length hi - lo; both endpoints must be finite.
    pub fn length(&self) -> Result<Rat> {
        Ok(self.hi.finite()? - self.lo.finite()?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A d-box: Cartesian product of d closed intervals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Box {
    intervals: Vec<Interval>,
}

impl Box {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Usage("a box needs at least one interval".into()));
        }
        Ok(Box { intervals })
    }

    /// Integer-endpoint literal box from (lo, hi) pairs; intended for fixtures.
    pub fn ints(pairs: &[(i64, i64)]) -> Self {
        Box::new(pairs.iter().map(|&(l, h)| Interval::ints(l, h)).collect()).unwrap()
    }

    /// Number of ambient dimensions d.
    pub fn ambient(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> &Interval {
        &self.intervals[axis]
    }

    /// dim(B): the number of non-degenerate component intervals.
    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|iv| !iv.is_degenerate()).count()
    }

    pub fn contains_point(&self, p: &[Coord]) -> bool {
        p.len() == self.ambient() && self.intervals.iter().zip(p).all(|(iv, c)| iv.contains(c))
    }

    pub fn contains_rat_point(&self, p: &[Rat]) -> bool {
        p.len() == self.ambient()
            && self
                .intervals
                .iter()
                .zip(p)
                .all(|(iv, c)| iv.contains(&Coord::Finite(c.clone())))
    }

    /// Componentwise intersection, or None if empty on some axis.
    pub fn intersect(&self, other: &Box) -> Result<Option<Box>> {
        if self.ambient() != other.ambient() {
            return Err(Error::Usage(format!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient(),
                other.ambient()
            )));
        }
        let mut out = Vec::with_capacity(self.ambient());
        for (a, b) in self.intervals.iter().zip(&other.intervals) {
            match a.intersect(b) {
                Some(iv) => out.push(iv),
                None => return Ok(None),
            }
        }
        Ok(Some(Box { intervals: out }))
    }

    /// The set of dimensions i (0-based) where the two intersecting boxes
    /// touch, i.e. where the interval intersection is degenerate.
    pub fn touch_dimensions(&self, other: &Box) -> Result<Vec<usize>> {
        match self.intersect(other)? {
            None => Err(Error::Precondition(
                "touch_dimensions requires intersecting boxes".into(),
            )),
            Some(meet) => Ok(meet
                .intervals
                .iter()
                .enumerate()
                .filter(|(_, iv)| iv.is_degenerate())
                .map(|(i, _)| i)
                .collect()),
        }
    }

    /// The box with the interval on `axis` collapsed to its `sign` endpoint.
    pub fn side_region(&self, axis: usize, sign: Sign) -> Box {
        let mut intervals = self.intervals.clone();
        let c = match sign {
            Sign::Neg => self.intervals[axis].lo().clone(),
            Sign::Pos => self.intervals[axis].hi().clone(),
        };
        intervals[axis] = Interval::point(c);
        Box { intervals }
    }

    /// Replaces the interval on `axis`.
    pub fn with_interval(&self, axis: usize, iv: Interval) -> Box {
        let mut intervals = self.intervals.clone();
        intervals[axis] = iv;
        Box { intervals }
    }

    /// Removes the interval on `axis`, dropping into ambient dimension d-1.
    pub fn without_axis(&self, axis: usize) -> Result<Box> {
        if self.ambient() < 2 {
            return Err(Error::Usage("cannot drop the only axis of a box".into()));
        }
        let mut intervals = self.intervals.clone();
        intervals.remove(axis);
        Ok(Box { intervals })
    }

    /// The 2^dim(B) corner points; every endpoint must be finite.
    pub fn corners(&self) -> Result<Vec<Vec<Rat>>> {
        for iv in &self.intervals {
            if !iv.lo().is_finite() || !iv.hi().is_finite() {
                return Err(Error::Precondition(
                    "corners are undefined for boxes with infinite endpoints".into(),
                ));
            }
        }
        let mut corners: Vec<Vec<Rat>> = vec![Vec::new()];
        for iv in &self.intervals {
            let lo = iv.lo().as_finite().unwrap().clone();
            let hi = iv.hi().as_finite().unwrap().clone();
            let mut next = Vec::with_capacity(corners.len() * 2);
            for c in &corners {
                let mut a = c.clone();
                a.push(lo.clone());
                next.push(a);
                if hi != lo {
                    let mut b = c.clone();
                    b.push(hi.clone());
                    next.push(b);
                }
            }
            corners = next;
        }
        Ok(corners)
    }

    /// Product of interval lengths; finite boxes only.
    pub fn volume(&self) -> Result<Rat> {
        let mut v = Rat::from_integer(1.into());
        for iv in &self.intervals {
            v *= iv.length()?;
        }
        Ok(v)
    }
}

impl fmt::Display for Box {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Box {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A side of a box: the owner with one non-degenerate interval collapsed
/// to an endpoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Side {
    pub owner: BoxId,
    /// 0-based dimension index.
    pub axis: usize,
    pub sign: Sign,
    pub region: Box,
}

impl Side {
    /// The hyperplane coordinate of the side on its axis.
    pub fn level(&self) -> &Coord {
        self.region.interval(self.axis).lo()
    }
}

/// All 2*dim(b) sides of a box of dimension >= 1.
pub fn sides_of(owner: BoxId, b: &Box) -> Result<Vec<Side>> {
    if b.dim() == 0 {
        return Err(Error::Precondition(
            "a 0-dimensional box has no sides".into(),
        ));
    }
    let mut sides = Vec::with_capacity(2 * b.dim());
    for (axis, iv) in b.intervals().iter().enumerate() {
        if iv.is_degenerate() {
            continue;
        }
        for sign in [Sign::Neg, Sign::Pos] {
            sides.push(Side {
                owner,
                axis,
                sign,
                region: b.side_region(axis, sign),
            });
        }
    }
    Ok(sides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(pairs: &[(i64, i64)]) -> Box {
        Box::ints(pairs)
    }

    #[test]
    fn intersect_shared_face() {
        let a = bx(&[(0, 2), (0, 1)]);
        let b = bx(&[(2, 3), (0, 1)]);
        let m = a.intersect(&b).unwrap().unwrap();
        assert_eq!(m, bx(&[(2, 2), (0, 1)]));
    }

    #[test]
    fn intersect_shared_corner() {
        let a = bx(&[(-1, 0), (-1, 0)]);
        let b = bx(&[(0, 1), (0, 1)]);
        let m = a.intersect(&b).unwrap().unwrap();
        assert_eq!(m, bx(&[(0, 0), (0, 0)]));
    }

    #[test]
    fn intersect_disjoint() {
        let a = Box::new(vec![Interval::ints(-1, 0), Interval::ints(-1, 1)]).unwrap();
        let b = Box::new(vec![
            Interval::new(Coord::rat(1, 2), Coord::int(1)).unwrap(),
            Interval::ints(-1, 1),
        ])
        .unwrap();
        assert!(a.intersect(&b).unwrap().is_none());
    }

    #[test]
    fn intersect_ambient_mismatch() {
        let a = bx(&[(0, 1)]);
        let b = bx(&[(0, 1), (0, 1)]);
        assert!(matches!(a.intersect(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn box_dimension() {
        assert_eq!(bx(&[(-1, 1), (0, 0)]).dim(), 1);
        assert_eq!(bx(&[(0, 0), (0, 0), (0, 0)]).dim(), 0);
        assert_eq!(bx(&[(-1, 1), (-1, 1), (-1, 1)]).dim(), 3);
    }

    #[test]
    fn touch_dimensions_examples() {
        let a = bx(&[(-1, 0), (-1, 1)]);
        let b = bx(&[(0, 1), (-1, 1)]);
        assert_eq!(a.touch_dimensions(&b).unwrap(), vec![0]);

        let a = bx(&[(-1, 0), (-1, 0)]);
        let b = bx(&[(0, 1), (0, 1)]);
        assert_eq!(a.touch_dimensions(&b).unwrap(), vec![0, 1]);

        // pinwheel B1 and B5 touch only on the second axis
        let b1 = Box::new(vec![
            Interval::new(Coord::int(-1), Coord::rat(1, 2)).unwrap(),
            Interval::new(Coord::int(-1), Coord::rat(-1, 2)).unwrap(),
        ])
        .unwrap();
        let b5 = Box::new(vec![
            Interval::new(Coord::rat(-1, 2), Coord::rat(1, 2)).unwrap(),
            Interval::new(Coord::rat(-1, 2), Coord::rat(1, 2)).unwrap(),
        ])
        .unwrap();
        assert_eq!(b1.touch_dimensions(&b5).unwrap(), vec![1]);

        let far = bx(&[(5, 6), (5, 6)]);
        assert!(matches!(
            b1.touch_dimensions(&far),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sides_of_square() {
        let b = bx(&[(-1, 1), (-1, 1)]);
        let sides = sides_of(BoxId::Tile(0), &b).unwrap();
        assert_eq!(sides.len(), 4);
        assert!(sides
            .iter()
            .any(|s| s.region == bx(&[(-1, -1), (-1, 1)])));
    }

    #[test]
    fn sides_of_segment_in_plane() {
        let b = bx(&[(-1, 1), (0, 0)]);
        let sides = sides_of(BoxId::Tile(0), &b).unwrap();
        assert_eq!(sides.len(), 2);
        let regions: Vec<_> = sides.iter().map(|s| s.region.clone()).collect();
        assert!(regions.contains(&bx(&[(-1, -1), (0, 0)])));
        assert!(regions.contains(&bx(&[(1, 1), (0, 0)])));
    }

    #[test]
    fn sides_of_exterior_box() {
        // T(1,-) in d=2 has two non-degenerate axes, hence 4 sides.
        let t = Box::new(vec![
            Interval::new(Coord::NegInf, Coord::int(-1)).unwrap(),
            Interval::new(Coord::NegInf, Coord::PosInf).unwrap(),
        ])
        .unwrap();
        let sides = sides_of(BoxId::Ext(0, Sign::Neg), &t).unwrap();
        assert_eq!(sides.len(), 4);
        let expected = Box::new(vec![
            Interval::ints(-1, -1),
            Interval::new(Coord::NegInf, Coord::PosInf).unwrap(),
        ])
        .unwrap();
        assert!(sides.iter().any(|s| s.region == expected));
    }

    #[test]
    fn sides_of_point_is_error() {
        let b = bx(&[(0, 0), (0, 0)]);
        assert!(matches!(
            sides_of(BoxId::Tile(0), &b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn corners_examples() {
        let sq = bx(&[(0, 1), (0, 1)]);
        let mut cs = sq.corners().unwrap();
        cs.sort();
        assert_eq!(cs.len(), 4);

        let seg = bx(&[(0, 0), (2, 3)]);
        assert_eq!(seg.corners().unwrap().len(), 2);

        let cube = bx(&[(-1, 1), (-1, 1), (-1, 1)]);
        assert_eq!(cube.corners().unwrap().len(), 8);

        let inf = Box::new(vec![Interval::new(Coord::NegInf, Coord::int(0)).unwrap()]).unwrap();
        assert!(matches!(inf.corners(), Err(Error::Precondition(_))));
    }

    #[test]
    fn side_region_dim_drops_by_one() {
        let b = bx(&[(-1, 1), (0, 0), (2, 5)]);
        for s in sides_of(BoxId::Tile(0), &b).unwrap() {
            assert_eq!(s.region.dim(), b.dim() - 1);
        }
    }
}
