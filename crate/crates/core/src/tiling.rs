//! Tilings of [-1,+1]^d: validation, the exterior boxes, generic
//! hyperplanes, and the slice / cut transformations.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coord::{rat_from_str, rat_to_string, Coord, Rat};
use crate::error::{Error, Result};
use crate::geometry::{Box, BoxId, Interval, Sign};

/// A claimed tiling of [-1,+1]^d by finite full-dimensional boxes.
/// Box identifiers are the dense indices into `boxes`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tiling {
    d: usize,
    boxes: Vec<Box>,
}

impl Tiling {
    pub fn new(d: usize, boxes: Vec<Box>) -> Result<Self> {
        if d < 1 {
            return Err(Error::Usage("dimension must be at least 1".into()));
        }
        for (i, b) in boxes.iter().enumerate() {
            if b.ambient() != d {
                return Err(Error::Usage(format!(
                    "box {i} has ambient dimension {} but the tiling has d={d}",
                    b.ambient()
                )));
            }
        }
        Ok(Tiling { d, boxes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn boxes(&self) -> &[Box] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Checks frame containment, full-dimensionality, pairwise interior
    /// disjointness, and coverage via the exact volume-sum criterion.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let frame = frame_box(self.d);
        for (i, b) in self.boxes.iter().enumerate() {
            if b.dim() < self.d {
                violations.push(Violation::DegenerateBox { id: i });
            }
            match frame.intersect(b) {
                Ok(Some(m)) if m == *b => {}
                _ => violations.push(Violation::OutsideFrame { id: i }),
            }
        }
        for i in 0..self.boxes.len() {
            for j in (i + 1)..self.boxes.len() {
                if let Ok(Some(m)) = self.boxes[i].intersect(&self.boxes[j]) {
                    if m.dim() == self.d {
                        violations.push(Violation::Overlap {
                            a: i,
                            b: j,
                            witness: m,
                        });
                    }
                }
            }
        }
        // Volume sum is only meaningful once the boxes are finite, inside
        // the frame and interior disjoint; then sum == 2^d certifies
        // coverage.
        if violations.is_empty() {
            let mut total = Rat::from_integer(0.into());
            for b in &self.boxes {
                match b.volume() {
                    Ok(v) => total += v,
                    Err(_) => {
                        violations.push(Violation::CoverageDeficit { total: None });
                        break;
                    }
                }
            }
            if violations.is_empty() {
                let expect = Rat::from_integer(BigInt::from(1) << self.d as u32);
                if total != expect {
                    violations.push(Violation::CoverageDeficit { total: Some(total) });
                }
            }
        }
        ValidationReport { violations }
    }

    /// True iff the hyperplane x_axis = x passes through no box endpoint.
    pub fn is_generic(&self, axis: usize, x: &Coord) -> Result<bool> {
        if axis >= self.d {
            return Err(Error::Usage(format!(
                "axis {} out of range for d={}",
                axis + 1,
                self.d
            )));
        }
        if !x.is_finite() {
            return Err(Error::Usage("generic test requires a finite coordinate".into()));
        }
        Ok(self
            .boxes
            .iter()
            .all(|b| b.interval(axis).lo() != x && b.interval(axis).hi() != x))
    }

    fn require_generic(&self, axis: usize, x: &Coord) -> Result<()> {
        if !self.is_generic(axis, x)? {
            return Err(Error::Precondition(format!(
                "hyperplane x_{} = {} is not generic for this tiling",
                axis + 1,
                x
            )));
        }
        Ok(())
    }

    /// Intersects the tiling with a generic hyperplane, dropping the axis.
    /// The result carries, per new box, the identifier of its original.
    pub fn slice(&self, axis: usize, x: &Coord) -> Result<MappedTiling> {
        if self.d < 2 {
            return Err(Error::Precondition("cannot slice a 1-tiling".into()));
        }
        self.require_generic(axis, x)?;
        let mut boxes = Vec::new();
        let mut source = Vec::new();
        for (i, b) in self.boxes.iter().enumerate() {
            if b.interval(axis).contains(x) {
                boxes.push(b.without_axis(axis)?);
                source.push(i);
            }
        }
        Ok(MappedTiling {
            tiling: Tiling::new(self.d - 1, boxes)?,
            source,
        })
    }

    /// Cuts the tiling at a generic hyperplane, prolonging the crossing
    /// boxes towards +1 (sign -) or -1 (sign +) on the cut axis.
    pub fn cut(&self, axis: usize, x: &Coord, sign: Sign) -> Result<MappedTiling> {
        self.require_generic(axis, x)?;
        let mut boxes = Vec::new();
        let mut source = Vec::new();
        for (i, b) in self.boxes.iter().enumerate() {
            let iv = b.interval(axis);
            let new_iv = match sign {
                Sign::Neg => {
                    if *x <= *iv.lo() {
                        None
                    } else if *iv.hi() < *x {
                        Some(iv.clone())
                    } else {
                        Some(Interval::new(iv.lo().clone(), Coord::int(1))?)
                    }
                }
                Sign::Pos => {
                    if *iv.hi() <= *x {
                        None
                    } else if *x < *iv.lo() {
                        Some(iv.clone())
                    } else {
                        Some(Interval::new(Coord::int(-1), iv.hi().clone())?)
                    }
                }
            };
            if let Some(iv) = new_iv {
                boxes.push(b.with_interval(axis, iv));
                source.push(i);
            }
        }
        Ok(MappedTiling {
            tiling: Tiling::new(self.d, boxes)?,
            source,
        })
    }
}

/// [-1,+1]^d.
pub fn frame_box(d: usize) -> Box {
    Box::new(vec![Interval::ints(-1, 1); d]).unwrap()
}

/// Result of a slice or cut: the new tiling plus, for each new box, the
/// identifier of the original it came from.
#[derive(Clone)]
pub struct MappedTiling {
    pub tiling: Tiling,
    pub source: Vec<usize>,
}

/// A single defect found by `Tiling::validate`.
#[derive(Clone, Debug)]
pub enum Violation {
    OutsideFrame { id: usize },
    DegenerateBox { id: usize },
    Overlap { a: usize, b: usize, witness: Box },
    /// `total` is None when a volume could not even be computed.
    CoverageDeficit { total: Option<Rat> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutsideFrame { id } => {
                write!(f, "box {id} is not contained in [-1,+1]^d")
            }
            Violation::DegenerateBox { id } => {
                write!(f, "box {id} is not full-dimensional")
            }
            Violation::Overlap { a, b, witness } => {
                write!(f, "boxes {a} and {b} overlap on {witness}")
            }
            Violation::CoverageDeficit { total: Some(t) } => {
                write!(f, "volumes sum to {} instead of 2^d", rat_to_string(t))
            }
            Violation::CoverageDeficit { total: None } => {
                write!(f, "volume sum undefined (infinite box)")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The 2d exterior boxes T(i,-), T(i,+) tiling the complement of the frame,
/// in the fixed order T(1,-), T(1,+), ..., T(d,-), T(d,+).
pub fn make_exterior(d: usize) -> Result<Vec<Box>> {
    if d < 1 {
        return Err(Error::Usage("dimension must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        for sign in [Sign::Neg, Sign::Pos] {
            let mut intervals = Vec::with_capacity(d);
            for j in 0..d {
                let iv = if j < i {
                    Interval::ints(-1, 1)
                } else if j == i {
                    match sign {
                        Sign::Neg => Interval::new(Coord::NegInf, Coord::int(-1))?,
                        Sign::Pos => Interval::new(Coord::int(1), Coord::PosInf)?,
                    }
                } else {
                    Interval::new(Coord::NegInf, Coord::PosInf)?
                };
                intervals.push(iv);
            }
            out.push(Box::new(intervals)?);
        }
    }
    Ok(out)
}

/// A tiling together with its exterior boxes; the exterior is derived from
/// d and never serialized.
#[derive(Clone)]
pub struct ExtendedTiling {
    base: Tiling,
    exterior: Vec<Box>,
}

impl ExtendedTiling {
    pub fn new(base: Tiling) -> Result<Self> {
        let exterior = make_exterior(base.d())?;
        Ok(ExtendedTiling { base, exterior })
    }

    pub fn base(&self) -> &Tiling {
        &self.base
    }

    pub fn d(&self) -> usize {
        self.base.d()
    }

    pub fn exterior(&self) -> &[Box] {
        &self.exterior
    }

    /// All boxes of T followed by T_ext, with their identifiers, in the
    /// canonical order.
    pub fn iter_all(&self) -> impl Iterator<Item = (BoxId, &Box)> {
        let tiles = self
            .base
            .boxes()
            .iter()
            .enumerate()
            .map(|(i, b)| (BoxId::Tile(i), b));
        let ext = self.exterior.iter().enumerate().map(|(k, b)| {
            let sign = if k % 2 == 0 { Sign::Neg } else { Sign::Pos };
            (BoxId::Ext(k / 2, sign), b)
        });
        tiles.chain(ext)
    }

    pub fn get(&self, id: BoxId) -> &Box {
        match id {
            BoxId::Tile(i) => &self.base.boxes()[i],
            BoxId::Ext(axis, sign) => {
                &self.exterior[2 * axis + usize::from(sign == Sign::Pos)]
            }
        }
    }

    /// For each axis, the sorted distinct endpoint coordinates of all boxes
    /// of T and T_ext (includes the symbolic infinities).
    pub fn coordinate_set(&self) -> Vec<Vec<Coord>> {
        let mut per_axis: Vec<BTreeSet<Coord>> = vec![BTreeSet::new(); self.d()];
        for (_, b) in self.iter_all() {
            for (axis, iv) in b.intervals().iter().enumerate() {
                per_axis[axis].insert(iv.lo().clone());
                per_axis[axis].insert(iv.hi().clone());
            }
        }
        per_axis
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }
}

// ---- JSON wire format -------------------------------------------------
//
// { "d": 2, "boxes": [ [["-1","0"],["-1","1/2"]], ... ] }
// Each box is a list of d [lo, hi] rational-string pairs; infinities are
// never serialized.

#[derive(Serialize, Deserialize)]
struct TilingWire {
    d: usize,
    boxes: Vec<Vec<[String; 2]>>,
}

impl Tiling {
    pub fn to_json(&self) -> Result<String> {
        let mut boxes = Vec::with_capacity(self.boxes.len());
        for b in &self.boxes {
            let mut ivs = Vec::with_capacity(self.d);
            for iv in b.intervals() {
                let lo = iv.lo().as_finite().ok_or_else(|| {
                    Error::Usage("cannot serialize a box with infinite endpoints".into())
                })?;
                let hi = iv.hi().as_finite().ok_or_else(|| {
                    Error::Usage("cannot serialize a box with infinite endpoints".into())
                })?;
                ivs.push([rat_to_string(lo), rat_to_string(hi)]);
            }
            boxes.push(ivs);
        }
        let wire = TilingWire { d: self.d, boxes };
        serde_json::to_string(&wire).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: TilingWire =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut boxes = Vec::with_capacity(wire.boxes.len());
        for (i, ivs) in wire.boxes.iter().enumerate() {
            if ivs.len() != wire.d {
                return Err(Error::Parse(format!(
                    "box {i} has {} intervals, expected {}",
                    ivs.len(),
                    wire.d
                )));
            }
            let mut intervals = Vec::with_capacity(wire.d);
            for [lo, hi] in ivs {
                let lo = rat_from_str(lo)?;
                let hi = rat_from_str(hi)?;
                intervals.push(
                    Interval::of_rats(lo, hi)
                        .map_err(|e| Error::Parse(format!("box {i}: {e}")))?,
                );
            }
            boxes.push(Box::new(intervals)?);
        }
        Tiling::new(wire.d, boxes)
    }
}

impl fmt::Debug for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tiling(d={}, ", self.d)?;
        f.debug_list().entries(&self.boxes).finish()?;
        write!(f, ")")
    }
}
