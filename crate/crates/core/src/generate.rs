//! Deterministic fixtures and seeded random proper-tiling generation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coord::{Coord, Rat};
use crate::error::{Error, Result};
use crate::geometry::{Box, BoxId, Interval, Sign};
use crate::properness::{check_pairwise, Witness};
use crate::separations::compute_separations;
use crate::tiling::{ExtendedTiling, Tiling};

/// The named deterministic tilings used throughout the tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// {[-1,1]^d}
    Single(usize),
    /// axis-1 halving of [-1,1]^d
    Split(usize),
    /// four quadrants of [-1,1]^2; improper
    Grid2x2,
    /// the 5-box proper 2-tiling that is not guillotine-decomposable
    Pinwheel,
    /// 5-box proper 2-tiling with two coplanar separations at x=0
    ThreeRowCoplanar,
    /// 3-tiling whose interior depth is 4 but which is improper against
    /// the exterior boxes (two points lie in 5 boxes of T and T_ext)
    Fig1LeftLike,
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Single(d) => write!(f, "single({d})"),
            Fixture::Split(d) => write!(f, "split({d})"),
            Fixture::Grid2x2 => write!(f, "grid2x2"),
            Fixture::Pinwheel => write!(f, "pinwheel"),
            Fixture::ThreeRowCoplanar => write!(f, "three_row_coplanar"),
            Fixture::Fig1LeftLike => write!(f, "fig1_left_like"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_d = |s: &str, name: &str| -> Result<usize> {
            s.strip_prefix(name)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| Error::Usage(format!("unknown fixture {s:?}")))
        };
        match s {
            "grid2x2" => Ok(Fixture::Grid2x2),
            "pinwheel" => Ok(Fixture::Pinwheel),
            "three_row_coplanar" => Ok(Fixture::ThreeRowCoplanar),
            "fig1_left_like" => Ok(Fixture::Fig1LeftLike),
            _ if s.starts_with("single") => Ok(Fixture::Single(parse_d(s, "single")?)),
            _ if s.starts_with("split") => Ok(Fixture::Split(parse_d(s, "split")?)),
            _ => Err(Error::Usage(format!("unknown fixture {s:?}"))),
        }
    }
}

pub fn fixture(f: &Fixture) -> Result<Tiling> {
    let iv = |p: i64, q: i64, r: i64, s: i64| {
        Interval::new(Coord::rat(p, q), Coord::rat(r, s)).unwrap()
    };
    match *f {
        Fixture::Single(d) => {
            if d < 1 {
                return Err(Error::Usage("single(d) needs d >= 1".into()));
            }
            Tiling::new(d, vec![Box::new(vec![Interval::ints(-1, 1); d])?])
        }
        Fixture::Split(d) => {
            if d < 1 {
                return Err(Error::Usage("split(d) needs d >= 1".into()));
            }
            let mut left = vec![Interval::ints(-1, 1); d];
            let mut right = vec![Interval::ints(-1, 1); d];
            left[0] = Interval::ints(-1, 0);
            right[0] = Interval::ints(0, 1);
            Tiling::new(d, vec![Box::new(left)?, Box::new(right)?])
        }
        Fixture::Grid2x2 => Tiling::new(
            2,
            vec![
                Box::ints(&[(-1, 0), (-1, 0)]),
                Box::ints(&[(0, 1), (0, 1)]),
                Box::ints(&[(-1, 0), (0, 1)]),
                Box::ints(&[(0, 1), (-1, 0)]),
            ],
        ),
        Fixture::Pinwheel => Tiling::new(
            2,
            vec![
                Box::new(vec![iv(-1, 1, 1, 2), iv(-1, 1, -1, 2)])?,
                Box::new(vec![iv(1, 2, 1, 1), iv(-1, 1, 1, 2)])?,
                Box::new(vec![iv(-1, 2, 1, 1), iv(1, 2, 1, 1)])?,
                Box::new(vec![iv(-1, 1, -1, 2), iv(-1, 2, 1, 1)])?,
                Box::new(vec![iv(-1, 2, 1, 2), iv(-1, 2, 1, 2)])?,
            ],
        ),
        Fixture::ThreeRowCoplanar => Tiling::new(
            2,
            vec![
                Box::new(vec![iv(-1, 1, 0, 1), iv(-1, 1, -1, 3)])?,
                Box::new(vec![iv(0, 1, 1, 1), iv(-1, 1, -1, 3)])?,
                Box::new(vec![iv(-1, 1, 1, 1), iv(-1, 3, 1, 3)])?,
                Box::new(vec![iv(-1, 1, 0, 1), iv(1, 3, 1, 1)])?,
                Box::new(vec![iv(0, 1, 1, 1), iv(1, 3, 1, 1)])?,
            ],
        ),
        Fixture::Fig1LeftLike => Tiling::new(
            3,
            vec![
                Box::ints(&[(-1, 0), (-1, 0), (-1, 1)]),
                Box::ints(&[(0, 1), (-1, 0), (-1, 1)]),
                Box::ints(&[(-1, 0), (0, 1), (-1, 1)]),
                Box::ints(&[(0, 1), (0, 1), (-1, 1)]),
            ],
        ),
    }
}

/// All fixtures at desk dimensions, for sweep-style tests.
pub fn all_fixtures() -> Vec<Fixture> {
    vec![
        Fixture::Single(1),
        Fixture::Single(2),
        Fixture::Single(3),
        Fixture::Split(1),
        Fixture::Split(2),
        Fixture::Split(3),
        Fixture::Grid2x2,
        Fixture::Pinwheel,
        Fixture::ThreeRowCoplanar,
        Fixture::Fig1LeftLike,
    ]
}

/// Parameters for seeded random generation.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub d: usize,
    pub target_boxes: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl GenSpec {
    pub fn new(d: usize, target_boxes: usize, seed: u64) -> Self {
        GenSpec {
            d,
            target_boxes,
            seed,
            max_retries: 32,
        }
    }
}

const CUT_DENOM: i64 = 1 << 16;

/// Random guillotine splits with globally fresh per-axis cut coordinates
/// (denominator 2^16), then a repair loop that translates a separation
/// incident to any properness violation. Deterministic per seed.
pub fn random_proper(spec: &GenSpec) -> Result<Tiling> {
    if spec.d < 1 || spec.target_boxes < 1 {
        return Err(Error::Usage("need d >= 1 and target_boxes >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..=spec.max_retries {
        if let Some(t) = try_generate(spec, &mut rng)? {
            return Ok(t);
        }
    }
    Err(Error::Generation(format!(
        "no proper {}-tiling with ~{} boxes after {} attempts (seed {})",
        spec.d, spec.target_boxes, spec.max_retries + 1, spec.seed
    )))
}

fn try_generate(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Option<Tiling>> {
    let d = spec.d;
    let mut boxes = vec![Box::new(vec![Interval::ints(-1, 1); d])?];
    let mut used: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); d];

    let mut splits = 0;
    let mut attempts = 0;
    while splits < spec.target_boxes - 1 {
        attempts += 1;
        if attempts > 50 * spec.target_boxes {
            return Ok(None);
        }
        let bi = rng.gen_range(0..boxes.len());
        let axis = rng.gen_range(0..d);
        let iv = boxes[bi].interval(axis);
        // integer window for fresh cut numerators strictly inside the interval
        let denom = Rat::from_integer(BigInt::from(CUT_DENOM));
        let lo = (iv.lo().finite()? * &denom).floor().to_integer() + BigInt::from(1);
        let hi = (iv.hi().finite()? * &denom).ceil().to_integer() - BigInt::from(1);
        if lo > hi {
            continue;
        }
        let span = (&hi - &lo) + BigInt::from(1);
        let span: i64 = match span.try_into() {
            Ok(s) => s,
            Err(_) => continue,
        };
        let lo_i: i64 = match lo.try_into() {
            Ok(v) => v,
            Err(_) => continue,
        };
        let k = lo_i + rng.gen_range(0..span);
        if !used[axis].insert(k) {
            continue;
        }
        let cut = Rat::new(BigInt::from(k), BigInt::from(CUT_DENOM));
        let cut_c = Coord::Finite(cut);
        if !(iv.lo() < &cut_c && &cut_c < iv.hi()) {
            used[axis].remove(&k);
            continue;
        }
        let b = boxes[bi].clone();
        let lower = b.with_interval(axis, Interval::new(b.interval(axis).lo().clone(), cut_c.clone())?);
        let upper = b.with_interval(axis, Interval::new(cut_c, b.interval(axis).hi().clone())?);
        boxes[bi] = lower;
        boxes.push(upper);
        splits += 1;
    }

    let mut t = Tiling::new(d, boxes)?;
    // Repair: translate a separation incident to a violating touch until
    // every pair meets in dimension d-1.
    for _ in 0..4 * spec.target_boxes {
        let ext = ExtendedTiling::new(t.clone())?;
        let report = check_pairwise(&ext);
        if report.proper {
            debug_assert!(t.validate().is_valid());
            return Ok(Some(t));
        }
        let (a, b) = match report.witness {
            Some(Witness::BadPair { a, b, .. }) => (a, b),
            _ => return Ok(None),
        };
        let (a, b) = match (a, b) {
            (BoxId::Tile(a), BoxId::Tile(b)) => (a, b),
            _ => return Ok(None), // a tile cannot over-touch the exterior
        };
        let abox = &t.boxes()[a];
        let bbox = &t.boxes()[b];
        let touch = abox.touch_dimensions(bbox)?;
        if touch.len() < 2 {
            return Ok(None);
        }
        // Move the separation through A's side on the second touching axis.
        let axis = touch[1];
        let level = abox
            .interval(axis)
            .intersect(bbox.interval(axis))
            .expect("touching boxes intersect")
            .lo()
            .clone();
        let sign = if abox.interval(axis).hi() == &level {
            Sign::Pos
        } else {
            Sign::Neg
        };
        let seps = compute_separations(&ext)?;
        let sep = seps.iter().find(|s| {
            s.axis == axis
                && s.level == level
                && s.sides
                    .iter()
                    .any(|side| side.owner == BoxId::Tile(a) && side.sign == sign)
        });
        let sep = match sep {
            Some(s) => s,
            None => return Ok(None),
        };
        let eps = fresh_epsilon(&t, axis)?;
        let new_level = Coord::Finite(level.finite()? + &eps);
        let mut nb = t.boxes().to_vec();
        for side in &sep.sides {
            let owner = match side.owner {
                BoxId::Tile(i) => i,
                BoxId::Ext(..) => return Ok(None),
            };
            let iv = nb[owner].interval(axis);
            let niv = match side.sign {
                Sign::Pos => Interval::new(iv.lo().clone(), new_level.clone())?,
                Sign::Neg => Interval::new(new_level.clone(), iv.hi().clone())?,
            };
            nb[owner] = nb[owner].with_interval(axis, niv);
        }
        let candidate = Tiling::new(d, nb)?;
        if !candidate.validate().is_valid() {
            return Ok(None);
        }
        t = candidate;
    }
    Ok(None)
}

fn fresh_epsilon(t: &Tiling, axis: usize) -> Result<Rat> {
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
    let gap = gap.ok_or_else(|| Error::Integrity("degenerate axis values".into()))?;
    Ok(gap / Rat::from_integer(BigInt::from(4)))
}
