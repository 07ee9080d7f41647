//! Event-driven Monte Carlo simulation of cross-tier handovers.
//!
//! One trial deploys the three tiers, links every serving BS of a pair kind
//! to its target BS, walks `n_users` MRWP users and intersects their paths
//! with the ERB circles analytically. There is no time stepping: residence
//! in a circle is a union of exact chord and pause intervals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{
    analyze, HandoverThresholds, MeanDistanceMode, PairKind, Scenario,
};
use crate::error::{ensure_positive, Error, Result};
use crate::geometry::{nearest_neighbor, sample_ppp, sample_tcp, ClusterConfig, ClusterSample, Point, PointSet, Region, Tier};
use crate::mobility::{generate_trajectory, MobilityConfig, Trajectory};
use crate::radio::{erb_pair, Circle, Enclosed, TierSet};
use crate::specfun::I0_EXP_FIT;

/// Intervals closer than this (seconds) are merged; shorter ones dropped.
const TIME_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub region: Region,
    pub tiers: TierSet,
    /// Macro density, per m^2.
    pub lambda_m: f64,
    /// PPP small-cell density, per m^2.
    pub lambda_s: f64,
    pub cluster: ClusterConfig,
    pub mobility: MobilityConfig,
    pub thresholds: HandoverThresholds,
    pub n_users: usize,
    pub n_moves: usize,
    pub n_trials: usize,
    pub master_seed: u64,
    /// Worker threads for the campaign; results do not depend on it.
    pub workers: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        Region::new(self.region.x_min, self.region.x_max, self.region.y_min, self.region.y_max)?;
        for t in [&self.tiers.macro_cell, &self.tiers.small_cell, &self.tiers.hotspot] {
            t.validate()?;
        }
        ensure_positive("lambda_m", self.lambda_m)?;
        ensure_positive("lambda_s", self.lambda_s)?;
        self.cluster.validate()?;
        self.mobility.validate()?;
        self.thresholds.validate()?;
        for (name, v) in [
            ("n_users", self.n_users),
            ("n_moves", self.n_moves),
            ("n_trials", self.n_trials),
            ("workers", self.workers),
        ] {
            if v == 0 {
                return Err(Error::invalid(name, "must be >= 1"));
            }
        }
        Ok(())
    }

    /// Analytic counterpart of this configuration.
    pub fn scenario(&self, n_bs_mean: f64, mode: MeanDistanceMode) -> Scenario {
        Scenario {
            region_area: self.region.area(),
            lambda_m: self.lambda_m,
            lambda_s: self.lambda_s,
            sigma: self.cluster.sigma,
            tiers: self.tiers,
            mobility: self.mobility,
            thresholds: self.thresholds,
            n_bs_mean,
            mean_distance_mode: mode,
            table: I0_EXP_FIT,
        }
    }

    /// Private random stream of trial `trial_index`.
    pub fn trial_rng(&self, trial_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial_index);
        rng
    }
}

/// Where a segment meets a circle.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossings {
    /// Segment parameters in `[0, 1]` of the boundary points, ascending.
    pub params: Vec<f64>,
    /// Length of the segment lying inside the circle, meters.
    pub chord: f64,
}

/// Roots of `|p0 + s (p1 - p0) - center|^2 = r^2` on the whole line, if real.
fn line_circle_roots(p0: Point, p1: Point, c: &Circle) -> Option<(f64, f64)> {
    let d = p1 - p0;
    let f = p0 - c.center;
    let a = d.norm_sq();
    let half_b = f.dot(d);
    let cc = f.norm_sq() - c.radius * c.radius;
    let disc = half_b * half_b - a * cc;
    if a == 0.0 || disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // Avoid cancellation by computing the larger-magnitude root first.
    let q = -(half_b + half_b.signum() * sq);
    let (r1, r2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, cc / q)
    };
    Some((r1.min(r2), r1.max(r2)))
}

pub fn segment_circle_crossings(p0: Point, p1: Point, c: &Circle) -> Crossings {
    let Some((s1, s2)) = line_circle_roots(p0, p1, c) else {
        return Crossings {
            params: Vec::new(),
            chord: 0.0,
        };
    };
    let mut params: Vec<f64> = [s1, s2].into_iter().filter(|s| (0.0..=1.0).contains(s)).collect();
    params.dedup();
    let inside = (s2.min(1.0) - s1.max(0.0)).max(0.0);
    Crossings {
        params,
        chord: inside * p0.distance(p1),
    }
}

/// A move (`p0 != p1`) or a pause (`p0 == p1`) on the user's clock.
#[derive(Debug, Clone, Copy)]
struct Piece {
    t0: f64,
    t1: f64,
    p0: Point,
    p1: Point,
}

#[derive(Debug, Clone)]
struct Timeline {
    pieces: Vec<Piece>,
    end: f64,
}

impl Timeline {
    fn new(traj: &Trajectory) -> Self {
        let mut pieces = Vec::with_capacity(2 * traj.waypoints.len());
        let mut t = 0.0;
        for (a, b) in traj.segments() {
            let t1 = t + a.distance(b) / traj.velocity;
            pieces.push(Piece { t0: t, t1, p0: a, p1: b });
            t = t1;
            if traj.pause > 0.0 {
                pieces.push(Piece {
                    t0: t,
                    t1: t + traj.pause,
                    p0: b,
                    p1: b,
                });
                t += traj.pause;
            }
        }
        Timeline { pieces, end: t }
    }

    fn position(&self, t: f64) -> Point {
        let i = self.pieces.partition_point(|p| p.t0 <= t).saturating_sub(1);
        let p = &self.pieces[i];
        if p.t1 <= p.t0 {
            return p.p1;
        }
        let s = ((t - p.t0) / (p.t1 - p.t0)).clamp(0.0, 1.0);
        p.p0 + (p.p1 - p.p0) * s
    }

    /// Time intervals spent strictly inside the disk of `c`.
    fn disk_intervals(&self, c: &Circle) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut push = |t0: f64, t1: f64| {
            if let Some(last) = out.last_mut() {
                if t0 - last.1 <= TIME_EPS {
                    last.1 = last.1.max(t1);
                    return;
                }
            }
            out.push((t0, t1));
        };
        for p in &self.pieces {
            if p.p0 == p.p1 {
                if c.contains(p.p0) {
                    push(p.t0, p.t1);
                }
                continue;
            }
            if let Some((s1, s2)) = line_circle_roots(p.p0, p.p1, c) {
                let (a, b) = (s1.max(0.0), s2.min(1.0));
                if b > a {
                    let dt = p.t1 - p.t0;
                    push(p.t0 + a * dt, p.t0 + b * dt);
                }
            }
        }
        out.retain(|(a, b)| b - a > TIME_EPS);
        out
    }

    /// Time intervals on the target-dominant side of `c`.
    fn target_intervals(&self, c: &Circle) -> Vec<(f64, f64)> {
        let inside = self.disk_intervals(c);
        match c.encloses {
            Enclosed::Target => inside,
            Enclosed::Serving => {
                let mut out = Vec::with_capacity(inside.len() + 1);
                let mut t = 0.0;
                for (a, b) in inside {
                    if a - t > TIME_EPS {
                        out.push((t, a));
                    }
                    t = b;
                }
                if self.end - t > TIME_EPS {
                    out.push((t, self.end));
                }
                out
            }
        }
    }
}

/// A serving BS linked to its handover target, with circles in absolute
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairLink {
    pub kind: PairKind,
    pub serving: Point,
    pub target: Point,
    pub handover: Circle,
    pub failure: Circle,
}

/// One BS realization.
#[derive(Debug, Clone)]
pub struct Deployment {
    pub macro_cells: PointSet,
    pub small_cells: PointSet,
    pub hotspots: ClusterSample,
}

pub fn deploy<R: rand::Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> Result<Deployment> {
    Ok(Deployment {
        macro_cells: sample_ppp(&cfg.region, cfg.lambda_m, Tier::Macro, rng)?,
        small_cells: sample_ppp(&cfg.region, cfg.lambda_s, Tier::Small, rng)?,
        hotspots: sample_tcp(&cfg.region, &cfg.cluster, rng)?,
    })
}

/// Per pair kind: links built and links skipped for a degenerate ERB.
#[derive(Debug, Clone, Default)]
pub struct LinkSet {
    pub links: Vec<PairLink>,
    pub skipped: [u64; 3],
}

/// Links each PPP small cell to its nearest macro cell, and each hotspot
/// to the small cell and the macro cell nearest to its cluster center.
pub fn build_links(cfg: &SimConfig, dep: &Deployment) -> Result<LinkSet> {
    let mut set = LinkSet::default();
    let mut add = |kind: PairKind, serving: Point, target: Point| -> Result<()> {
        let s = cfg.tiers.get(kind.serving_tier());
        let t = cfg.tiers.get(kind.target_tier());
        match erb_pair(s, t, target - serving, cfg.thresholds.q_out) {
            Ok(erb) => {
                set.links.push(PairLink {
                    kind,
                    serving,
                    target,
                    handover: erb.handover_circle.translated(serving),
                    failure: erb.failure_circle.translated(serving),
                });
                Ok(())
            }
            Err(Error::DegenerateBoundary { .. }) => {
                set.skipped[kind_index(kind)] += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    };
    if !dep.macro_cells.is_empty() {
        for &s in &dep.small_cells.points {
            let (j, _) = nearest_neighbor(s, &dep.macro_cells)?;
            add(PairKind::SmallMacro, s, dep.macro_cells.points[j])?;
        }
    }
    let parents = &dep.hotspots.parents.points;
    for (k, &h) in dep.hotspots.offspring.points.iter().enumerate() {
        let parent = parents[dep.hotspots.parent_index[k]];
        if !dep.small_cells.is_empty() {
            let (j, _) = nearest_neighbor(parent, &dep.small_cells)?;
            add(PairKind::HotspotSmall, h, dep.small_cells.points[j])?;
        }
        if !dep.macro_cells.is_empty() {
            let (j, _) = nearest_neighbor(parent, &dep.macro_cells)?;
            add(PairKind::HotspotMacro, h, dep.macro_cells.points[j])?;
        }
    }
    Ok(set)
}

fn kind_index(kind: PairKind) -> usize {
    match kind {
        PairKind::SmallMacro => 0,
        PairKind::HotspotSmall => 1,
        PairKind::HotspotMacro => 2,
    }
}

/// Uniform bucket grid over circle bounding boxes.
struct CircleGrid {
    x0: f64,
    y0: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl CircleGrid {
    fn new(region: &Region, cell: f64, circles: impl Iterator<Item = Circle>) -> Self {
        let nx = (region.width() / cell).ceil().max(1.0) as usize;
        let ny = (region.height() / cell).ceil().max(1.0) as usize;
        let mut grid = CircleGrid {
            x0: region.x_min,
            y0: region.y_min,
            cell,
            nx,
            ny,
            buckets: vec![Vec::new(); nx * ny],
        };
        for (id, c) in circles.enumerate() {
            let (ix0, ix1, iy0, iy1) = grid.span(
                c.center.x - c.radius,
                c.center.x + c.radius,
                c.center.y - c.radius,
                c.center.y + c.radius,
            );
            for iy in iy0..=iy1 {
                for ix in ix0..=ix1 {
                    grid.buckets[iy * nx + ix].push(id as u32);
                }
            }
        }
        grid
    }

    fn span(&self, x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> (usize, usize, usize, usize) {
        let ix = |x: f64| (((x - self.x0) / self.cell).floor().max(0.0) as usize).min(self.nx - 1);
        let iy = |y: f64| (((y - self.y0) / self.cell).floor().max(0.0) as usize).min(self.ny - 1);
        (ix(x_lo), ix(x_hi), iy(y_lo), iy(y_hi))
    }

    /// Ids of circles whose bounding box may touch the segment's, sorted.
    fn candidates(&self, traj: &Trajectory, stamp: &mut [u32], epoch: u32, out: &mut Vec<u32>) {
        out.clear();
        for (a, b) in traj.segments() {
            let (ix0, ix1, iy0, iy1) = self.span(a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y));
            for iy in iy0..=iy1 {
                for ix in ix0..=ix1 {
                    for &id in &self.buckets[iy * self.nx + ix] {
                        if stamp[id as usize] != epoch {
                            stamp[id as usize] = epoch;
                            out.push(id);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    /// Serving BSs linked to a target (the realized `N_bs`).
    pub n_bs: u64,
    /// Links skipped because their ERB is a straight line.
    pub degenerate_skipped: u64,
    pub triggered: u64,
    pub handovers: u64,
    pub failures: u64,
    pub pingpongs: u64,
    /// Triggers counted both as handover and as failure.
    pub overlaps: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EventCounts {
    pub trial: u64,
    /// Indexed like [`PairKind::ALL`].
    pub pairs: [PairCounts; 3],
    /// Total user time (travel plus pauses), seconds.
    pub exposure_time: f64,
}

impl EventCounts {
    pub fn pair(&self, kind: PairKind) -> &PairCounts {
        &self.pairs[kind_index(kind)]
    }
}

/// Counts the events of one user against one link.
fn count_link(tl: &Timeline, link: &PairLink, same_exponent: bool, cfg: &SimConfig, counts: &mut PairCounts) {
    let ho = tl.target_intervals(&link.handover);
    if ho.is_empty() {
        return;
    }
    let fail = tl.target_intervals(&link.failure);
    let t_thr = cfg.thresholds.t_threshold;
    let t_pp = cfg.thresholds.t_pingpong;
    for &(t_in, t_out) in &ho {
        if t_in <= TIME_EPS {
            // Already on the target side when the walk starts: no entry.
            continue;
        }
        counts.triggered += 1;
        let executed = t_out - t_in >= t_thr;
        if executed {
            counts.handovers += 1;
        }
        let first_fail = fail
            .iter()
            .find(|&&(a, b)| b > t_in && a <= t_out)
            .map(|&(a, _)| a.max(t_in));
        let failed = first_fail.is_some_and(|t1| t1 - t_in < t_thr);
        if failed {
            counts.failures += 1;
        }
        if executed && failed {
            counts.overlaps += 1;
        }
        if executed && returns_to_serving(tl, link, same_exponent, cfg, t_out, t_in + t_thr, t_in + t_pp) {
            counts.pingpongs += 1;
        }
    }
}

/// Whether the user is back in the serving BS's area at some time in
/// `[from, until)`. With equal path-loss exponents the circle is the exact
/// boundary; otherwise the two RSS values are compared along the path.
fn returns_to_serving(
    tl: &Timeline,
    link: &PairLink,
    same_exponent: bool,
    cfg: &SimConfig,
    t_out: f64,
    from: f64,
    until: f64,
) -> bool {
    let until = until.min(tl.end);
    if from >= until {
        return false;
    }
    if same_exponent {
        return t_out < until && t_out < tl.end - TIME_EPS;
    }
    let s = cfg.tiers.get(link.kind.serving_tier());
    let t = cfg.tiers.get(link.kind.target_tier());
    let margin = |time: f64| {
        let p = tl.position(time);
        t.log_rss(p.distance(link.target)) - s.log_rss(p.distance(link.serving))
    };
    // Resolve the boundary to a small fraction of the circle radius.
    let dt = (link.handover.radius / (64.0 * cfg.mobility.velocity)).max(1e-3);
    let mut time = from;
    while time < until {
        if margin(time) < 0.0 {
            return true;
        }
        time += dt;
    }
    false
}

/// Runs one independent trial on its own random stream.
pub fn run_trial(cfg: &SimConfig, trial_index: u64) -> Result<EventCounts> {
    let mut rng = cfg.trial_rng(trial_index);
    let dep = deploy(cfg, &mut rng)?;
    let links = build_links(cfg, &dep)?;
    let mut counts = EventCounts {
        trial: trial_index,
        ..EventCounts::default()
    };
    for link in &links.links {
        counts.pairs[kind_index(link.kind)].n_bs += 1;
    }
    for (i, skipped) in links.skipped.iter().enumerate() {
        counts.pairs[i].degenerate_skipped = *skipped;
    }
    let same_exponent = PairKind::ALL.map(|k| {
        cfg.tiers.get(k.serving_tier()).pathloss_exponent == cfg.tiers.get(k.target_tier()).pathloss_exponent
    });
    let cell = 250.0;
    let grid = CircleGrid::new(&cfg.region, cell, links.links.iter().map(|l| l.handover));
    let mut stamp = vec![u32::MAX; links.links.len()];
    let mut candidates = Vec::new();
    for user in 0..cfg.n_users {
        let start = cfg.region.sample_uniform(&mut rng);
        let traj = generate_trajectory(start, cfg.n_moves, &cfg.region, &cfg.mobility, &mut rng)?;
        let tl = Timeline::new(&traj);
        counts.exposure_time += tl.end;
        grid.candidates(&traj, &mut stamp, user as u32, &mut candidates);
        for &id in &candidates {
            let link = &links.links[id as usize];
            let k = kind_index(link.kind);
            count_link(&tl, link, same_exponent[k], cfg, &mut counts.pairs[k]);
        }
    }
    Ok(counts)
}

/// Sample mean with a 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// `None` when fewer than two samples are available.
    pub half_width: Option<f64>,
    pub n: usize,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Estimate {
                mean: 0.0,
                half_width: None,
                n,
            };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let half_width = (n > 1).then(|| {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            1.96 * (var / n as f64).sqrt()
        });
        Estimate { mean, half_width, n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairEstimate {
    pub pair: PairKind,
    pub n_bs_mean: f64,
    pub triggered_rate: Estimate,
    pub handover_rate: Estimate,
    /// Per-trial failures over triggers; trials without triggers are left out.
    pub failure_rate: Estimate,
    pub pingpong_rate: Estimate,
    /// Fraction of triggers counted both as handover and failure.
    pub overlap_fraction: f64,
    pub degenerate_skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsEstimate {
    pub n_trials: usize,
    /// Indexed like [`PairKind::ALL`].
    pub pairs: [PairEstimate; 3],
}

impl MetricsEstimate {
    pub fn pair(&self, kind: PairKind) -> &PairEstimate {
        &self.pairs[kind_index(kind)]
    }
}

pub fn estimate(trials: &[EventCounts]) -> Result<MetricsEstimate> {
    if trials.is_empty() {
        return Err(Error::NoData("no trial to aggregate"));
    }
    if trials.iter().any(|t| t.exposure_time.is_nan() || t.exposure_time <= 0.0) {
        return Err(Error::invalid("exposure_time", "a trial accumulated no user time"));
    }
    let pairs = PairKind::ALL.map(|kind| {
        let k = kind_index(kind);
        let rate = |f: fn(&PairCounts) -> u64| {
            let xs: Vec<f64> = trials.iter().map(|t| f(&t.pairs[k]) as f64 / t.exposure_time).collect();
            Estimate::from_samples(&xs)
        };
        let fails: Vec<f64> = trials
            .iter()
            .filter(|t| t.pairs[k].triggered > 0)
            .map(|t| t.pairs[k].failures as f64 / t.pairs[k].triggered as f64)
            .collect();
        let triggered: u64 = trials.iter().map(|t| t.pairs[k].triggered).sum();
        let overlaps: u64 = trials.iter().map(|t| t.pairs[k].overlaps).sum();
        PairEstimate {
            pair: kind,
            n_bs_mean: trials.iter().map(|t| t.pairs[k].n_bs as f64).sum::<f64>() / trials.len() as f64,
            triggered_rate: rate(|c| c.triggered),
            handover_rate: rate(|c| c.handovers),
            failure_rate: Estimate::from_samples(&fails),
            pingpong_rate: rate(|c| c.pingpongs),
            overlap_fraction: if triggered > 0 { overlaps as f64 / triggered as f64 } else { 0.0 },
            degenerate_skipped: trials.iter().map(|t| t.pairs[k].degenerate_skipped).sum(),
        }
    });
    Ok(MetricsEstimate {
        n_trials: trials.len(),
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignResult {
    /// In trial order.
    pub trials: Vec<EventCounts>,
    pub estimate: MetricsEstimate,
}

/// Runs all trials on a pool of `cfg.workers` threads. Trial `i` always uses
/// stream `i` and results are kept in trial order, so the outcome does not
/// depend on scheduling.
pub fn run_campaign(cfg: &SimConfig) -> Result<CampaignResult> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    let trials: Vec<EventCounts> = pool.install(|| {
        (0..cfg.n_trials as u64)
            .into_par_iter()
            .map(|i| run_trial(cfg, i))
            .collect::<Result<_>>()
    })?;
    let estimate = estimate(&trials)?;
    Ok(CampaignResult { trials, estimate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Triggered,
    Handover,
    Failure,
    PingPong,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Triggered, Metric::Handover, Metric::Failure, Metric::PingPong];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Triggered => "H_t",
            Metric::Handover => "H",
            Metric::Failure => "H_f",
            Metric::PingPong => "H_p",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub pair: PairKind,
    pub metric: Metric,
    /// `None` when the closed form does not apply (see `note`).
    pub analytic: Option<f64>,
    pub simulated: f64,
    pub half_width: Option<f64>,
    /// simulated / analytic.
    pub ratio: Option<f64>,
    pub analytic_below_sim: bool,
    pub note: String,
}

/// Analytic metrics evaluated with the simulated mean `N_bs`, side by side
/// with the simulated estimates.
pub fn comparison_rows(cfg: &SimConfig, est: &MetricsEstimate, mode: MeanDistanceMode) -> Vec<ComparisonRow> {
    let mut rows = Vec::new();
    for pe in &est.pairs {
        let analytic = analyze(&cfg.scenario(pe.n_bs_mean, mode), pe.pair);
        for metric in Metric::ALL {
            let sim = match metric {
                Metric::Triggered => pe.triggered_rate,
                Metric::Handover => pe.handover_rate,
                Metric::Failure => pe.failure_rate,
                Metric::PingPong => pe.pingpong_rate,
            };
            let (value, note) = match &analytic {
                Ok(m) => {
                    let v = match metric {
                        Metric::Triggered => m.triggered_rate,
                        Metric::Handover => m.handover_rate,
                        Metric::Failure => m.failure_rate,
                        Metric::PingPong => m.pingpong_rate,
                    };
                    let note = if metric == Metric::PingPong && m.pingpong_clamped() {
                        format!("clamped from {:e}", m.pingpong_raw)
                    } else {
                        String::new()
                    };
                    (Some(v), note)
                }
                Err(e) => (None, e.to_string()),
            };
            rows.push(ComparisonRow {
                pair: pe.pair,
                metric,
                analytic: value,
                simulated: sim.mean,
                half_width: sim.half_width,
                ratio: value.filter(|v| *v > 0.0).map(|v| sim.mean / v),
                analytic_below_sim: value.is_some_and(|v| v < sim.mean),
                note,
            });
        }
    }
    rows
}

/// Runs the campaign and compares it with the closed forms.
pub fn compare_to_analytics(cfg: &SimConfig, mode: MeanDistanceMode) -> Result<(CampaignResult, Vec<ComparisonRow>)> {
    let campaign = run_campaign(cfg)?;
    let rows = comparison_rows(cfg, &campaign.estimate, mode);
    Ok((campaign, rows))
}
