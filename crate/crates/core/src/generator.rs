//! Sampling of `G(n, r, p)`: uniform points, the geometric graph `G(n, r)`,
//! Bernoulli thinning, and the two-channel labelling `1 - p = (1-p1)(1-p2)`
//! used by the Hamilton cycle construction.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_grid, within, CellGrid, GridMode, TorusPoint};
use crate::graph::Graph;
use crate::par;
use crate::rng::{self, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub r: f64,
    pub p: f64,
    pub seed: u64,
    /// Channel-1 retention probability; `None` means `p1 = p2 = 1 - sqrt(1-p)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
}

impl ModelParams {
    pub fn new(n: usize, r: f64, p: f64, seed: u64) -> Result<Self> {
        let params = ModelParams {
            n,
            r,
            p,
            seed,
            p1: None,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_p1(mut self, p1: f64) -> Result<Self> {
        self.p1 = Some(p1);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if !(self.r > 0.0 && self.r < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "r must lie in (0, 1/2), got {}",
                self.r
            )));
        }
        if self.n > (1 << 30) {
            return Err(Error::InvalidParameter("n must be below 2^30".into()));
        }
        ChannelLaw::new(self.p, self.p1).map(|_| ())
    }

    /// Marginal edge probability `q = π r² p`.
    pub fn q(&self) -> f64 {
        std::f64::consts::PI * self.r * self.r * self.p
    }

    pub fn channel_law(&self) -> ChannelLaw {
        ChannelLaw::new(self.p, self.p1).expect("validated")
    }
}

/// The channels an edge belongs to. Every kept edge is in at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Channel {
    One = 1,
    Two = 2,
    Both = 3,
}

impl Channel {
    #[inline]
    pub fn has_one(self) -> bool {
        self as u8 & 1 != 0
    }

    #[inline]
    pub fn has_two(self) -> bool {
        self as u8 & 2 != 0
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Channel::One),
            2 => Some(Channel::Two),
            3 => Some(Channel::Both),
            _ => None,
        }
    }
}

/// Survival and channel-label law for a geometric edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelLaw {
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    /// `P({1,2} | kept) = p1 p2 / p`.
    pub both: f64,
    /// `P({1} | kept) = p1 (1 - p2) / p`.
    pub only_one: f64,
}

impl ChannelLaw {
    pub fn new(p: f64, p1: Option<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p must lie in [0,1], got {p}")));
        }
        let (p1, p2) = match p1 {
            None => {
                let s = 1.0 - (1.0 - p).sqrt();
                (s, s)
            }
            Some(p1) => {
                if !(0.0..=p).contains(&p1) {
                    return Err(Error::InvalidParameter(format!(
                        "p1 must lie in [0, p] = [0, {p}], got {p1}"
                    )));
                }
                let p2 = if p1 >= 1.0 { 1.0 } else { 1.0 - (1.0 - p) / (1.0 - p1) };
                (p1, p2.clamp(0.0, 1.0))
            }
        };
        let (both, only_one) = if p > 0.0 {
            (p1 * p2 / p, p1 * (1.0 - p2) / p)
        } else {
            (0.0, 0.0)
        };
        Ok(ChannelLaw {
            p,
            p1,
            p2,
            both,
            only_one,
        })
    }

    /// Label from a uniform draw, conditional on survival.
    #[inline]
    pub fn label(&self, u: f64) -> Channel {
        if u < self.both {
            Channel::Both
        } else if u < self.both + self.only_one {
            Channel::One
        } else {
            Channel::Two
        }
    }
}

/// Per-edge coin keys derived from an instance seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeKeys {
    pub thinning: u64,
    pub channel: u64,
}

impl EdgeKeys {
    pub fn from_seed(seed: u64) -> Self {
        EdgeKeys {
            thinning: rng::derive(seed, Stream::Thinning),
            channel: rng::derive(seed, Stream::Channel),
        }
    }

    /// Fate of the geometric edge `{lo, hi}`: survives iff its thinning
    /// coin is below `p`. Coins are shared across `p`, which makes the kept
    /// edge set monotone in `p` for a fixed seed.
    #[inline]
    pub fn classify(&self, law: &ChannelLaw, lo: u32, hi: u32) -> Option<Channel> {
        if rng::pair_uniform(self.thinning, lo, hi) < law.p {
            Some(law.label(rng::pair_uniform(self.channel, lo, hi)))
        } else {
            None
        }
    }
}

pub fn sample_points(n: usize, stream_seed: u64) -> Result<Vec<TorusPoint>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut rng = rng::stream_rng(stream_seed);
    Ok((0..n)
        .map(|_| TorusPoint {
            x: rng.random::<f64>(),
            y: rng.random::<f64>(),
        })
        .collect())
}

/// Grid used to bucket points for radius-`r` pair search: cells of side at
/// least `r`, so every pair within `r` lies in adjacent cells.
fn search_grid(r: f64) -> Result<CellGrid> {
    build_grid(r, GridMode::AtLeast)
}

/// Visits every geometric pair `(lo, hi)` cell by cell; `emit` is called per
/// cell and its outputs concatenated in cell order.
fn collect_pairs<T, F>(points: &[TorusPoint], r: f64, emit: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u32, u32, &mut Vec<T>) + Sync + Send,
{
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::InvalidParameter(format!("r must lie in (0, 1/2), got {r}")));
    }
    let grid = search_grid(r)?;
    let buckets = grid.bucket(points);
    let per_cell = par::map_range(grid.cell_count(), |c| {
        let mut out = Vec::new();
        let around = grid.neighborhood(grid.coords(c));
        for &u in buckets.cell(c) {
            let pu = points[u as usize];
            for &nc in &around {
                for &v in buckets.cell(nc) {
                    if v > u && within(pu, points[v as usize], r) {
                        emit(u, v, &mut out);
                    }
                }
            }
        }
        out
    });
    Ok(per_cell.into_iter().flatten().collect())
}

/// Geometric edges `(lo, hi)` of `G(n, r)`, sorted.
pub fn build_rgg(points: &[TorusPoint], r: f64) -> Result<Vec<(u32, u32)>> {
    let mut edges = collect_pairs(points, r, |u, v, out| out.push((u, v)))?;
    par::sort_unstable(&mut edges);
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thinned {
    pub kept: Vec<(u32, u32)>,
    pub channels: Vec<Channel>,
}

/// Keeps each geometric edge with probability `p` and labels survivors.
pub fn thin_and_label(geo_edges: &[(u32, u32)], law: &ChannelLaw, keys: EdgeKeys) -> Thinned {
    let mut kept = Vec::new();
    let mut channels = Vec::new();
    for &(a, b) in geo_edges {
        let (lo, hi) = (a.min(b), a.max(b));
        if let Some(c) = keys.classify(law, lo, hi) {
            kept.push((lo, hi));
            channels.push(c);
        }
    }
    Thinned { kept, channels }
}

/// A sampled `G(n, r, p)` with its points and channel-labelled edges.
///
/// The geometric edge set is a function of the points and `r`; it is
/// recomputed on demand by [`GnrpInstance::geo_edges`] rather than stored.
#[derive(Debug, Clone, PartialEq)]
pub struct GnrpInstance {
    params: ModelParams,
    points: Vec<TorusPoint>,
    graph: Graph,
    /// Channel of each CSR half-edge of `graph`.
    channels: Vec<Channel>,
}

const CHANNEL_BITS: u32 = 2;
const HI_SHIFT: u32 = CHANNEL_BITS;
const LO_SHIFT: u32 = 32 + CHANNEL_BITS;

#[inline]
fn pack(lo: u32, hi: u32, c: Channel) -> u64 {
    ((lo as u64) << LO_SHIFT) | ((hi as u64) << HI_SHIFT) | c as u64
}

#[inline]
fn unpack(x: u64) -> (u32, u32, Channel) {
    let lo = (x >> LO_SHIFT) as u32;
    let hi = ((x >> HI_SHIFT) & 0xffff_ffff) as u32;
    (lo, hi, Channel::from_code((x & 3) as u8).expect("packed channel"))
}

pub fn generate(params: &ModelParams) -> Result<GnrpInstance> {
    params.validate()?;
    let points = sample_points(params.n, rng::derive(params.seed, Stream::Points))?;
    let law = params.channel_law();
    let keys = EdgeKeys::from_seed(params.seed);
    let mut packed = collect_pairs(&points, params.r, |u, v, out| {
        if let Some(c) = keys.classify(&law, u, v) {
            out.push(pack(u, v, c));
        }
    })?;
    par::sort_unstable(&mut packed);
    Ok(GnrpInstance::from_sorted_packed(*params, points, &packed))
}

impl GnrpInstance {
    fn from_sorted_packed(params: ModelParams, points: Vec<TorusPoint>, packed: &[u64]) -> Self {
        let n = points.len();
        let mut offsets = vec![0usize; n + 1];
        for &x in packed {
            let (lo, hi, _) = unpack(x);
            offsets[lo as usize + 1] += 1;
            offsets[hi as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let total = offsets[n];
        let mut neighbors = vec![0u32; total];
        let mut channels = vec![Channel::One; total];
        let mut fill = offsets.clone();
        // sorted (lo, hi) order fills every list in increasing neighbor order
        for &x in packed {
            let (lo, hi, c) = unpack(x);
            let s = fill[lo as usize];
            neighbors[s] = hi;
            channels[s] = c;
            fill[lo as usize] += 1;
            let s = fill[hi as usize];
            neighbors[s] = lo;
            channels[s] = c;
            fill[hi as usize] += 1;
        }
        GnrpInstance {
            params,
            points,
            graph: Graph::from_csr(offsets, neighbors),
            channels,
        }
    }

    /// Assembles an instance from explicit data, checking that every edge
    /// is geometric (distance `<= r`) and the edge list has no duplicates.
    pub fn from_parts(params: ModelParams, points: Vec<TorusPoint>, edges: &[(usize, usize, Channel)]) -> Result<Self> {
        params.validate()?;
        if points.len() != params.n {
            return Err(Error::Malformed(format!(
                "{} points for n = {}",
                points.len(),
                params.n
            )));
        }
        for p in &points {
            TorusPoint::new(p.x, p.y).map_err(|e| Error::Malformed(e.to_string()))?;
        }
        let mut packed = Vec::with_capacity(edges.len());
        for &(u, v, c) in edges {
            if u >= params.n || v >= params.n || u == v {
                return Err(Error::Malformed(format!("bad edge ({u}, {v})")));
            }
            if !within(points[u], points[v], params.r) {
                return Err(Error::Malformed(format!(
                    "edge ({u}, {v}) is longer than r = {}",
                    params.r
                )));
            }
            packed.push(pack(u.min(v) as u32, u.max(v) as u32, c));
        }
        packed.sort_unstable();
        if packed.windows(2).any(|w| w[0] >> HI_SHIFT == w[1] >> HI_SHIFT) {
            return Err(Error::Malformed("duplicate edge".into()));
        }
        Ok(Self::from_sorted_packed(params, points, &packed))
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    /// The kept graph `G(n, r, p)`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kept_edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Kept edges `(u, v, channel)` with `u < v`, in lexicographic order.
    pub fn kept_edges(&self) -> impl Iterator<Item = (usize, usize, Channel)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.graph
                .half_edge_range(u)
                .map(move |s| (u, self.graph.neighbor_array()[s] as usize, self.channels[s]))
                .filter(move |&(u, v, _)| v > u)
        })
    }

    /// Channel of the kept edge `{u, v}`, if present.
    pub fn channel(&self, u: usize, v: usize) -> Option<Channel> {
        let range = self.graph.half_edge_range(u);
        let list = self.graph.neighbors(u);
        list.binary_search(&(v as u32))
            .ok()
            .map(|k| self.channels[range.start + k])
    }

    /// Subgraph induced by `vertices` using only kept edges whose channel
    /// passes `keep`; local vertex `i` is `vertices[i]`.
    pub fn induced<F>(&self, vertices: &[usize], keep: F) -> Graph
    where
        F: Fn(Channel) -> bool,
    {
        self.graph.induced_filtered(vertices, |slot| keep(self.channels[slot]))
    }

    /// Kept graph restricted to one channel.
    pub fn channel_graph(&self, channel: u8) -> Graph {
        let all: Vec<usize> = (0..self.n()).collect();
        self.induced(&all, |c| c as u8 & channel != 0)
    }

    /// Geometric edges of the underlying `G(n, r)`, recomputed from the points.
    pub fn geo_edges(&self) -> Vec<(u32, u32)> {
        build_rgg(&self.points, self.params.r).expect("validated radius")
    }
}
