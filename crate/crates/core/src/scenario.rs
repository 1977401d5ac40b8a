//! Scenario configuration and rasterization of marking regions to mesh boxes.
//!
//! ```json
//! { "domain": [0, 1], "degree": [2, 2], "variant": "H",
//!   "steps": [ { "region": { "curve": { "preset": "bean" } }, "repeat": 4 },
//!              { "region": { "rect": [0, 0.25, 0, 0.25] } } ] }
//! ```
//!
//! A box is marked when its closed extent meets the closed shape. Preset
//! curves live on the unit square and are scaled to the domain; every other
//! coordinate is in domain units.

use std::f64::consts::PI;

use serde::Deserialize;

use crate::dyadic::Dyadic;
use crate::eg::{Refiner, Variant};
use crate::error::{Error, Result};
use crate::mesh::{Domain, LRMesh, MeshBox, Region};

/// A coordinate given either as a JSON number or as a string (`"3/8"`).
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Coord {
    Num(f64),
    Text(String),
}

impl Coord {
    pub fn to_dyadic(&self) -> Result<Dyadic> {
        match self {
            // judged by the shortest decimal form, so 0.3 is rejected even
            // though its nearest f64 is technically dyadic
            Coord::Num(v) => v.to_string().parse(),
            Coord::Text(s) => s.parse(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum DomainSpec {
    Square([Coord; 2]),
    Ranges([[Coord; 2]; 2]),
}

impl DomainSpec {
    pub fn to_domain(&self) -> Result<Domain> {
        match self {
            DomainSpec::Square([a, b]) => Domain::new(a.to_dyadic()?, b.to_dyadic()?),
            DomainSpec::Ranges([[a, b], [c, d]]) => {
                Domain::from_ranges((a.to_dyadic()?, b.to_dyadic()?), (c.to_dyadic()?, d.to_dyadic()?))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum RegionSpec {
    /// Explicit boxes `[x0, x1, y0, y1]`; each marks every mesh box it meets.
    Boxes(Vec<[Coord; 4]>),
    Rect([Coord; 4]),
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    /// Points within `width / 2` of the segment `from`-`to`.
    Band {
        from: [f64; 2],
        to: [f64; 2],
        width: f64,
    },
    Curve(CurveSpec),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CurveSpec {
    Preset {
        preset: String,
    },
    Points {
        points: Vec<[f64; 2]>,
        #[serde(default)]
        closed: bool,
    },
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Step {
    pub region: RegionSpec,
    /// Number of EG iterations with this region, re-rasterized each time.
    #[serde(default = "one")]
    pub repeat: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub domain: DomainSpec,
    pub degree: [usize; 2],
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn domain(&self) -> Result<Domain> {
        self.domain.to_domain()
    }

    /// The configured variant, horizontal-major when absent.
    pub fn variant(&self) -> Result<Variant> {
        self.variant.as_deref().map_or(Ok(Variant::HorizontalMajor), str::parse)
    }

    pub fn refiner(&self) -> Result<Refiner> {
        Refiner::new(self.domain()?, self.degree, self.variant()?)
    }

    /// Runs every step, calling `after` with the step index (counting
    /// repeats) once each iteration is done.
    pub fn run(&self, mut after: impl FnMut(usize, &Refiner) -> Result<()>) -> Result<Refiner> {
        let mut r = self.refiner()?;
        let mut k = 0;
        for (i, step) in self.steps.iter().enumerate() {
            for _ in 0..step.repeat {
                let omega = rasterize(r.mesh(), &step.region)?;
                if omega.is_empty() {
                    return Err(Error::Config(format!("step {}: region marks no box", i + 1)));
                }
                r.refine(&omega)?;
                k += 1;
                after(k, &r)?;
            }
        }
        Ok(r)
    }
}

pub const PRESETS: [&str; 6] = ["bean", "diagonal", "antidiagonal", "triangle", "circle", "square"];

/// A preset curve as a polyline on the unit square.
pub fn preset_curve(name: &str) -> Result<(Vec<[f64; 2]>, bool)> {
    let ring = |n: usize, f: &dyn Fn(f64) -> [f64; 2]| -> Vec<[f64; 2]> {
        (0..n).map(|i| f(2.0 * PI * i as f64 / n as f64)).collect()
    };
    Ok(match name {
        // shifted off the main diagonal so it does not run through every
        // dyadic vertex and mark whole neighbourhoods by corner contact
        "diagonal" => (vec![[0.0, 0.03], [0.97, 1.0]], false),
        "antidiagonal" => (vec![[0.0, 0.97], [0.97, 0.0]], false),
        "triangle" => (vec![[0.2, 0.2], [0.8, 0.2], [0.5, 0.8]], true),
        "square" => (vec![[0.25, 0.25], [0.75, 0.25], [0.75, 0.75], [0.25, 0.75]], true),
        "circle" => (ring(256, &|t| [0.5 + 0.3 * t.cos(), 0.5 + 0.3 * t.sin()]), true),
        // kidney shape: wider than tall and dented on top, so it is not
        // symmetric under swapping the axes
        "bean" => (
            ring(512, &|t| {
                let r = 0.3 + 0.06 * (2.0 * t).cos() - 0.05 * t.sin();
                [0.5 + 1.1 * r * t.cos(), 0.48 + 0.75 * r * t.sin() - 0.08 * (2.0 * t).cos().powi(2) * t.sin().max(0.0)]
            }),
            true,
        ),
        _ => return Err(Error::Config(format!("unknown preset {name:?}, expected one of {PRESETS:?}"))),
    })
}

fn box_f64(b: &MeshBox) -> [f64; 4] {
    [b.x0.to_f64(), b.x1.to_f64(), b.y0.to_f64(), b.y1.to_f64()]
}

fn point_box_dist_sq(p: [f64; 2], [x0, x1, y0, y1]: [f64; 4]) -> f64 {
    let dx = (x0 - p[0]).max(0.0).max(p[0] - x1);
    let dy = (y0 - p[1]).max(0.0).max(p[1] - y1);
    dx * dx + dy * dy
}

fn point_segment_dist_sq(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (vx, vy) = (b[0] - a[0], b[1] - a[1]);
    let len = vx * vx + vy * vy;
    let t = if len == 0.0 { 0.0 } else { (((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len).clamp(0.0, 1.0) };
    let (dx, dy) = (a[0] + t * vx - p[0], a[1] + t * vy - p[1]);
    dx * dx + dy * dy
}

/// Liang-Barsky clipping against the closed box.
fn segment_meets_box(a: [f64; 2], b: [f64; 2], [x0, x1, y0, y1]: [f64; 4]) -> bool {
    let d = [b[0] - a[0], b[1] - a[1]];
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-d[0], a[0] - x0), (d[0], x1 - a[0]), (-d[1], a[1] - y0), (d[1], y1 - a[1])] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    t0 <= t1
}

fn segment_box_dist_sq(a: [f64; 2], b: [f64; 2], bx: [f64; 4]) -> f64 {
    if segment_meets_box(a, b, bx) {
        return 0.0;
    }
    let [x0, x1, y0, y1] = bx;
    let corners = [[x0, y0], [x1, y0], [x0, y1], [x1, y1]];
    let mut best = point_box_dist_sq(a, bx).min(point_box_dist_sq(b, bx));
    for c in corners {
        best = best.min(point_segment_dist_sq(c, a, b));
    }
    best
}

/// The boxes of `mesh` whose closed extent meets the region.
pub fn rasterize(mesh: &LRMesh, spec: &RegionSpec) -> Result<Region> {
    let dom = mesh.domain();
    let meets_rect = |r: &[Coord; 4]| -> Result<Vec<MeshBox>> {
        let c: Vec<Dyadic> = r.iter().map(Coord::to_dyadic).collect::<Result<_>>()?;
        if c[0] > c[1] || c[2] > c[3] {
            return Err(Error::Config(format!("empty rectangle {r:?}")));
        }
        Ok(mesh.boxes().filter(|b| b.x0 <= c[1] && c[0] <= b.x1 && b.y0 <= c[3] && c[2] <= b.y1).copied().collect())
    };
    let by = |f: &dyn Fn([f64; 4]) -> bool| -> Region { mesh.boxes().filter(|b| f(box_f64(b))).copied().collect() };
    Ok(match spec {
        RegionSpec::Boxes(list) => {
            let mut out = Region::new();
            for r in list {
                for b in meets_rect(r)? {
                    out.insert(b);
                }
            }
            out
        }
        RegionSpec::Rect(r) => meets_rect(r)?.into_iter().collect(),
        RegionSpec::Disk { center, radius } => by(&|b| point_box_dist_sq(*center, b) <= radius * radius),
        RegionSpec::Band { from, to, width } => {
            let h = width / 2.0;
            by(&|b| segment_box_dist_sq(*from, *to, b) <= h * h)
        }
        RegionSpec::Curve(c) => {
            let (pts, closed) = match c {
                CurveSpec::Preset { preset } => {
                    let (pts, closed) = preset_curve(preset)?;
                    let (lo, side) = (dom.lo.to_f64(), dom.side().to_f64());
                    (pts.into_iter().map(|[x, y]| [lo + side * x, lo + side * y]).collect(), closed)
                }
                CurveSpec::Points { points, closed } => (points.clone(), *closed),
            };
            if pts.is_empty() {
                return Err(Error::Config("curve has no points".into()));
            }
            let mut segs: Vec<([f64; 2], [f64; 2])> = pts.windows(2).map(|w| (w[0], w[1])).collect();
            if closed && pts.len() > 2 {
                segs.push((pts[pts.len() - 1], pts[0]));
            }
            if segs.is_empty() {
                segs.push((pts[0], pts[0]));
            }
            by(&|b| segs.iter().any(|&(a, c)| segment_meets_box(a, c, b)))
        }
    })
}
