//! Base-station deployment: homogeneous PPPs for macro and general small
//! cells, a Thomas cluster process for hotspot small cells, and the
//! rectangular bookkeeping (regions, five-way partition) around them.

use std::fmt;
use std::io::Write;
use std::ops::{Add, Mul, Sub};

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// A point in the plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(radius * c, radius * s)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Axis-aligned rectangle, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Region {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let all_finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !all_finite || x_max <= x_min || y_max <= y_min {
            return Err(Error::invalid(
                "region",
                format!("need x_max > x_min and y_max > y_min, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"),
            ));
        }
        Ok(Region {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// A `side` x `side` square with its lower-left corner at the origin.
    pub fn square(side: f64) -> Result<Self> {
        Region::new(0.0, side, 0.0, side)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }

    /// Closed-rectangle membership.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point::new(
            rng.random_range(self.x_min..self.x_max),
            rng.random_range(self.y_min..self.y_max),
        )
    }
}

/// The three deployment tiers, in association tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    /// Macro cells (PPP).
    Macro,
    /// General small cells (PPP).
    Small,
    /// Hotspot small cells (Thomas cluster process).
    Hotspot,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::Macro, Tier::Small, Tier::Hotspot];

    pub fn label(self) -> &'static str {
        match self {
            Tier::Macro => "M",
            Tier::Small => "S",
            Tier::Hotspot => "S'",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub tier: Tier,
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(tier: Tier, points: Vec<Point>) -> Self {
        PointSet { tier, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Writes `tier,x_m,y_m` rows with a single header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["tier", "x_m", "y_m"])?;
        for p in &self.points {
            w.write_record([self.tier.label().to_string(), p.x.to_string(), p.y.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Thomas cluster process parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig {
    /// Parent (hotspot center) density, per m^2.
    pub lambda_p: f64,
    /// Standard deviation of the isotropic Gaussian scattering, meters.
    pub sigma: f64,
    /// Mean number of offspring per parent.
    pub mean_offspring: f64,
}

impl ClusterConfig {
    pub fn new(lambda_p: f64, sigma: f64, mean_offspring: f64) -> Result<Self> {
        let cfg = ClusterConfig {
            lambda_p,
            sigma,
            mean_offspring,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("lambda_p", self.lambda_p)?;
        ensure_positive("sigma", self.sigma)?;
        ensure_positive("mean_offspring", self.mean_offspring)
    }

    /// Density of the offspring process, `lambda_p * mean_offspring`.
    pub fn offspring_density(&self) -> f64 {
        self.lambda_p * self.mean_offspring
    }
}

/// Draws a Poisson count. `mean == 0` yields 0; the count is exact for
/// every mean (rand_distr switches algorithms internally, not laws).
pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let poisson = Poisson::new(mean).expect("positive finite mean");
    poisson.sample(rng) as usize
}

/// Homogeneous PPP of `density` (per m^2) restricted to `region`.
pub fn sample_ppp<R: Rng + ?Sized>(region: &Region, density: f64, tier: Tier, rng: &mut R) -> Result<PointSet> {
    ensure_positive("density", density)?;
    let n = poisson_count(density * region.area(), rng);
    let points = (0..n).map(|_| region.sample_uniform(rng)).collect();
    Ok(PointSet::new(tier, points))
}

/// A realization of the Thomas cluster process.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSample {
    pub parents: PointSet,
    pub offspring: PointSet,
    /// `parent_index[k]` is the index into `parents` of offspring `k`.
    pub parent_index: Vec<usize>,
}

/// Parents form a PPP inside `region`; every parent spawns a Poisson number
/// of offspring displaced by i.i.d. `N(0, sigma^2 I)`. Offspring that land
/// outside the region are kept.
pub fn sample_tcp<R: Rng + ?Sized>(region: &Region, cfg: &ClusterConfig, rng: &mut R) -> Result<ClusterSample> {
    cfg.validate()?;
    let parents = sample_ppp(region, cfg.lambda_p, Tier::Hotspot, rng)?;
    let scatter = Normal::new(0.0, cfg.sigma).map_err(|e| Error::invalid("sigma", e.to_string()))?;
    let mut offspring = Vec::new();
    let mut parent_index = Vec::new();
    for (i, &parent) in parents.points.iter().enumerate() {
        let n = poisson_count(cfg.mean_offspring, rng);
        for _ in 0..n {
            let dx = scatter.sample(rng);
            let dy = scatter.sample(rng);
            offspring.push(parent + Point::new(dx, dy));
            parent_index.push(i);
        }
    }
    Ok(ClusterSample {
        parents,
        offspring: PointSet::new(Tier::Hotspot, offspring),
        parent_index,
    })
}

/// Index and distance of the point in `targets` closest to `query`.
/// Ties resolve to the lowest index.
pub fn nearest_neighbor(query: Point, targets: &PointSet) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in targets.points.iter().enumerate() {
        let d2 = (*p - query).norm_sq();
        if best.is_none_or(|(_, b)| d2 < b) {
            best = Some((i, d2));
        }
    }
    best.map(|(i, d2)| (i, d2.sqrt()))
        .ok_or(Error::NoBaseStation(targets.tier.label()))
}

pub fn nearest_neighbor_distance(query: Point, targets: &PointSet) -> Result<f64> {
    nearest_neighbor(query, targets).map(|(_, d)| d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubRegion {
    Center,
    Bottom,
    Top,
    Left,
    Right,
}

impl SubRegion {
    pub const ALL: [SubRegion; 5] = [
        SubRegion::Center,
        SubRegion::Bottom,
        SubRegion::Top,
        SubRegion::Left,
        SubRegion::Right,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_border(self) -> bool {
        self != SubRegion::Center
    }
}

/// A central rectangle and four border strips. Bottom and top strips span
/// the full width; left and right strips fill the band between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FivePartition {
    pub region: Region,
    pub border_fraction: f64,
    /// Indexed by [`SubRegion::index`].
    pub parts: [Region; 5],
}

pub fn partition_five(region: &Region, border_fraction: f64) -> Result<FivePartition> {
    if !(border_fraction > 0.0 && border_fraction < 0.5) {
        return Err(Error::invalid(
            "border_fraction",
            format!("must lie in (0, 0.5), got {border_fraction}"),
        ));
    }
    let bx = border_fraction * region.width();
    let by = border_fraction * region.height();
    let (x0, x1, y0, y1) = (region.x_min, region.x_max, region.y_min, region.y_max);
    let parts = [
        Region::new(x0 + bx, x1 - bx, y0 + by, y1 - by)?,
        Region::new(x0, x1, y0, y0 + by)?,
        Region::new(x0, x1, y1 - by, y1)?,
        Region::new(x0, x0 + bx, y0 + by, y1 - by)?,
        Region::new(x1 - bx, x1, y0 + by, y1 - by)?,
    ];
    Ok(FivePartition {
        region: *region,
        border_fraction,
        parts,
    })
}

impl FivePartition {
    /// Sub-region owning `p`; shared edges go to the strips in the order
    /// bottom, top, left, right. `None` outside the region.
    pub fn locate(&self, p: Point) -> Option<SubRegion> {
        if !self.region.contains(p) {
            return None;
        }
        let [_, bottom, top, left, right] = &self.parts;
        Some(if p.y < bottom.y_max {
            SubRegion::Bottom
        } else if p.y > top.y_min {
            SubRegion::Top
        } else if p.x < left.x_max {
            SubRegion::Left
        } else if p.x > right.x_min {
            SubRegion::Right
        } else {
            SubRegion::Center
        })
    }

    pub fn area(&self, part: SubRegion) -> f64 {
        self.parts[part.index()].area()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nearest_is_exact_for_pythagorean_triple() {
        let targets = PointSet::new(Tier::Macro, vec![Point::new(3.0, 4.0)]);
        assert_eq!(nearest_neighbor_distance(Point::ORIGIN, &targets).unwrap(), 5.0);
        assert_eq!(nearest_neighbor_distance(Point::new(3.0, 4.0), &targets).unwrap(), 0.0);
    }

    #[test]
    fn nearest_on_empty_set_reports_tier() {
        let empty = PointSet::new(Tier::Small, vec![]);
        assert!(matches!(nearest_neighbor(Point::ORIGIN, &empty), Err(Error::NoBaseStation("S"))));
    }

    #[test]
    fn ppp_rejects_non_positive_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = Region::square(10.0).unwrap();
        assert!(sample_ppp(&r, 0.0, Tier::Macro, &mut rng).is_err());
        assert!(sample_ppp(&r, -1.0, Tier::Macro, &mut rng).is_err());
    }

    #[test]
    fn tiny_sigma_keeps_offspring_on_parents() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = Region::square(1000.0).unwrap();
        let cfg = ClusterConfig::new(1e-4, 1e-12, 3.0).unwrap();
        let s = sample_tcp(&r, &cfg, &mut rng).unwrap();
        assert!(!s.offspring.is_empty());
        for (o, &pi) in s.offspring.points.iter().zip(&s.parent_index) {
            assert!(o.distance(s.parents.points[pi]) < 1e-9);
        }
    }

    #[test]
    fn region_rejects_inverted_bounds() {
        assert!(Region::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(Region::new(0.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn five_partition_of_unit_square() {
        let r = Region::square(1.0).unwrap();
        let p = partition_five(&r, 0.25).unwrap();
        assert!((p.area(SubRegion::Center) - 0.25).abs() < 1e-15);
        let total: f64 = SubRegion::ALL.iter().map(|&s| p.area(s)).sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!(partition_five(&r, 0.5).is_err());
        assert!(partition_five(&r, 0.0).is_err());
        assert_eq!(p.locate(Point::new(0.5, 0.5)), Some(SubRegion::Center));
        assert_eq!(p.locate(Point::new(0.1, 0.1)), Some(SubRegion::Bottom));
        assert_eq!(p.locate(Point::new(0.1, 0.5)), Some(SubRegion::Left));
        assert_eq!(p.locate(Point::new(0.9, 0.95)), Some(SubRegion::Top));
        assert_eq!(p.locate(Point::new(0.9, 0.5)), Some(SubRegion::Right));
        assert_eq!(p.locate(Point::new(1.5, 0.5)), None);
    }

    #[test]
    fn point_set_csv_has_header() {
        let ps = PointSet::new(Tier::Hotspot, vec![Point::new(1.5, -2.0)]);
        let mut buf = Vec::new();
        ps.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "tier,x_m,y_m\nS',1.5,-2\n");
    }
}
