//! Deterministic SVG output for meshes with optional overlays.

use std::fmt::Write as _;

use crate::bspline::LRBSpline;
use crate::dyadic::Dyadic;
use crate::mesh::{Direction, LRMesh, MeshBox, Region};

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    /// Width and height of the drawing in pixels; 512 when zero.
    pub size: u32,
    pub region: Option<Region>,
    pub shadow: Option<Region>,
    /// A B-spline whose support and local knot grid are drawn on top.
    pub support: Option<LRBSpline>,
}

struct Frame {
    lo: f64,
    scale: f64,
    size: f64,
    pad: f64,
}

impl Frame {
    fn x(&self, v: Dyadic) -> f64 {
        self.pad + (v.to_f64() - self.lo) * self.scale
    }

    fn y(&self, v: Dyadic) -> f64 {
        self.pad + self.size - (v.to_f64() - self.lo) * self.scale
    }

    fn rect(&self, s: &mut String, b: &MeshBox, attrs: &str) {
        let (x0, x1) = (self.x(b.x0), self.x(b.x1));
        let (y0, y1) = (self.y(b.y1), self.y(b.y0));
        writeln!(s, r#"<rect x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" {attrs}/>"#, x1 - x0, y1 - y0)
            .unwrap();
    }

    fn seg(&self, s: &mut String, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic, attrs: &str) {
        let (x1, y1, x2, y2) = match dir {
            Direction::Horizontal => (self.x(lo), self.y(fixed), self.x(hi), self.y(fixed)),
            Direction::Vertical => (self.x(fixed), self.y(lo), self.x(fixed), self.y(hi)),
        };
        writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {attrs}/>"#).unwrap();
    }
}

pub fn render_svg(mesh: &LRMesh, opts: &RenderOptions) -> String {
    let size = if opts.size == 0 { 512.0 } else { opts.size as f64 };
    let dom = mesh.domain();
    let f = Frame { lo: dom.lo.to_f64(), scale: size / dom.side().to_f64(), size, pad: 8.0 };
    let total = size + 2.0 * f.pad;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{total}" height="{total}" fill="white"/>"#).unwrap();
    if let Some(sh) = &opts.shadow {
        s.push_str("<g class=\"shadow\">\n");
        for b in sh {
            f.rect(&mut s, b, r##"fill="#9ecae1" fill-opacity="0.6""##);
        }
        s.push_str("</g>\n");
    }
    if let Some(r) = &opts.region {
        s.push_str("<g class=\"region\">\n");
        for b in r {
            f.rect(&mut s, b, r##"fill="#fb6a4a" fill-opacity="0.6""##);
        }
        s.push_str("</g>\n");
    }
    if let Some(b) = &opts.support {
        s.push_str("<g class=\"support\">\n");
        f.rect(&mut s, &b.support(), r##"fill="#fdd0a2" fill-opacity="0.5" stroke="#d94801" stroke-width="2""##);
        let sup = b.support();
        for v in dedup(&b.knots[0]) {
            f.seg(&mut s, Direction::Vertical, v, sup.y0, sup.y1, r##"stroke="#d94801" stroke-dasharray="4 3""##);
        }
        for v in dedup(&b.knots[1]) {
            f.seg(&mut s, Direction::Horizontal, v, sup.x0, sup.x1, r##"stroke="#d94801" stroke-dasharray="4 3""##);
        }
        s.push_str("</g>\n");
    }
    s.push_str("<g class=\"mesh\" stroke=\"black\">\n");
    for l in mesh.lines() {
        let w = if l.mult > 1 { 2.0 } else { 1.0 };
        f.seg(&mut s, l.direction, l.fixed, l.lo, l.hi, &format!(r#"stroke-width="{w}""#));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn dedup(v: &[Dyadic]) -> Vec<Dyadic> {
    let mut out = v.to_vec();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrset::LRSet;
    use crate::mesh::Domain;

    #[test]
    fn initial_mesh_is_four_lines() {
        let m = LRMesh::open_tensor(Domain::unit(), [2, 2], &[], &[]).unwrap();
        let svg = render_svg(&m, &RenderOptions::default());
        assert_eq!(svg.matches("<line ").count(), 4);
        assert!(svg.starts_with("<svg "));
        assert_eq!(svg, render_svg(&m, &RenderOptions::default()));
    }

    #[test]
    fn overlays_are_drawn() {
        let h: Dyadic = "0.5".parse().unwrap();
        let m = LRMesh::open_tensor(Domain::unit(), [1, 1], &[h], &[h]).unwrap();
        let set = LRSet::initial(&m).unwrap();
        let b = set.members().nth(4).unwrap();
        let region: Region = m.boxes().take(1).copied().collect();
        let opts = RenderOptions {
            size: 100,
            shadow: Some(m.boxes().copied().collect()),
            region: Some(region),
            support: Some(b),
        };
        let svg = render_svg(&m, &opts);
        assert!(svg.contains("class=\"shadow\""));
        assert_eq!(svg.matches("fill=\"#9ecae1\"").count(), 4);
        assert_eq!(svg.matches("fill=\"#fb6a4a\"").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
    }
}
