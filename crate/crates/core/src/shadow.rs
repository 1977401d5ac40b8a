//! Generalized and classic shadow maps and the separation distance.
//!
//! A shadow in direction `dir` is cast by rays running along `dir` that count
//! crossings with lines of the orthogonal direction. A box belongs to the
//! shadow of `A` when it is in `A` or its interior meets one of the segments
//! `[q*1, q*2]` cast from a point `q` of the boundary of `A`.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::mesh::{Direction, LRMesh, MeshBox, Region};

/// End of the ray from `q` along `dir` (towards lower coordinates when
/// `forward` is false): the point where the crossings, counted with
/// multiplicity and starting with a line through `q` itself, reach `pk + 1`,
/// or the last crossing if there are fewer.
fn ray_end(mesh: &LRMesh, q: [Dyadic; 2], dir: Direction, pk: usize, forward: bool) -> Dyadic {
    let (a, o) = (dir.axis(), 1 - dir.axis());
    let orth = dir.orthogonal();
    let need = pk as u32 + 1;
    let mut count = 0u32;
    let mut last = q[a];
    let mut visit = |t: Dyadic| {
        let m = mesh.multiplicity_at(orth, t, q[o]);
        if m > 0 {
            count += m;
            last = t;
        }
        count >= need
    };
    if forward {
        for (t, _) in mesh.fixeds_in(orth, q[a]..) {
            if visit(t) {
                return t;
            }
        }
    } else {
        for (t, _) in mesh.fixeds_in(orth, ..=q[a]).rev() {
            if visit(t) {
                return t;
            }
        }
    }
    last
}

/// The two shadow endpoints `(q*1, q*2)` of `q`, as coordinates along `dir`.
pub fn shadow_endpoints(mesh: &LRMesh, q: [Dyadic; 2], dir: Direction, pk: usize) -> (Dyadic, Dyadic) {
    (ray_end(mesh, q, dir, pk, false), ray_end(mesh, q, dir, pk, true))
}

/// Maximal pieces of the boundary of `region` orthogonal to `dir`, each as
/// `(edge coordinate along dir, open interval on the other axis)`. Only these
/// pieces can cast a shadow beyond the region; each piece contains no line
/// parallel to `dir` in its interior, so every point of it casts the same segment.
fn boundary_pieces(mesh: &LRMesh, region: &Region, dir: Direction) -> Vec<(Dyadic, Dyadic, Dyadic)> {
    let (a, o) = (dir.axis(), 1 - dir.axis());
    let dom = mesh.domain();
    let mut out = Vec::new();
    for b in region {
        let mut cuts = vec![b.lo(o)];
        cuts.extend(mesh.fixeds_in(dir, b.lo(o)..b.hi(o)).map(|(t, _)| t).filter(|&t| t > b.lo(o)));
        cuts.push(b.hi(o));
        for w in cuts.windows(2) {
            let mid = w[0].midpoint(w[1]);
            for (edge, low_side) in [(b.lo(a), true), (b.hi(a), false)] {
                let mut p = [Dyadic::ZERO; 2];
                p[a] = edge;
                p[o] = mid;
                let outside = if edge == dom.lo || edge == dom.hi {
                    true
                } else {
                    let nb = if low_side { mesh.box_before(p, a) } else { mesh.box_at(p) };
                    nb.is_none_or(|n| !region.contains(n))
                };
                if outside {
                    out.push((edge, w[0], w[1]));
                }
            }
        }
    }
    out
}

/// Boxes whose interior meets `[lo, hi]` (along `dir`) times the open interval
/// around `mid` free of parallel lines.
fn boxes_along(mesh: &LRMesh, dir: Direction, mid: Dyadic, lo: Dyadic, hi: Dyadic, out: &mut Region) {
    let (a, o) = (dir.axis(), 1 - dir.axis());
    let mut t = lo;
    loop {
        let mut p = [Dyadic::ZERO; 2];
        p[a] = t;
        p[o] = mid;
        let Some(b) = mesh.box_at(p) else { break };
        out.insert(*b);
        t = b.hi(a);
        if t >= hi {
            break;
        }
    }
}

/// Generalized shadow of `region` in direction `dir` with degree `pk`.
pub fn generalized_shadow(mesh: &LRMesh, region: &Region, dir: Direction, pk: usize) -> Region {
    let (a, o) = (dir.axis(), 1 - dir.axis());
    let mut out = region.clone();
    for (edge, lo, hi) in boundary_pieces(mesh, region, dir) {
        let mid = lo.midpoint(hi);
        let mut q = [Dyadic::ZERO; 2];
        q[a] = edge;
        q[o] = mid;
        let (s, e) = shadow_endpoints(mesh, q, dir, pk);
        boxes_along(mesh, dir, mid, s, e, &mut out);
    }
    out
}

/// Crossings with orthogonal lines on the segment from `p` (excluded) to `q`
/// (included), counted with multiplicity; `None` (infinite) when the points are
/// not aligned along `dir`.
pub fn separation_distance(mesh: &LRMesh, p: [Dyadic; 2], q: [Dyadic; 2], dir: Direction) -> Option<u32> {
    let (a, o) = (dir.axis(), 1 - dir.axis());
    if p[o] != q[o] {
        return None;
    }
    let orth = dir.orthogonal();
    let count = |t: Dyadic| mesh.multiplicity_at(orth, t, p[o]);
    let total = if p[a] <= q[a] {
        mesh.fixeds_in(orth, p[a]..=q[a]).filter(|&(t, _)| t > p[a]).map(|(t, _)| count(t)).sum()
    } else {
        mesh.fixeds_in(orth, q[a]..p[a]).map(|(t, _)| count(t)).sum()
    };
    Some(total)
}

/// Classic shadow on a tensor mesh with the usual threshold `pk`.
pub fn classic_shadow(mesh: &LRMesh, region: &Region, dir: Direction, pk: usize) -> Result<Region> {
    classic_shadow_with_threshold(mesh, region, dir, pk as u32)
}

/// Boxes of a tensor mesh containing points whose separation distance to
/// `region` along `dir` is at most `threshold`. The distance is constant on
/// box interiors, so box centers decide.
pub fn classic_shadow_with_threshold(mesh: &LRMesh, region: &Region, dir: Direction, threshold: u32) -> Result<Region> {
    if !mesh.is_tensor() {
        return Err(Error::NotTensor);
    }
    let o = 1 - dir.axis();
    let mut out = Region::new();
    for b in mesh.boxes() {
        if region.contains(b) {
            out.insert(*b);
            continue;
        }
        let c = b.center();
        let near = region.iter().filter(|r| r.lo(o) == b.lo(o)).any(|r| {
            let mut q = c;
            q[dir.axis()] = r.center()[dir.axis()];
            separation_distance(mesh, c, q, dir).is_some_and(|s| s <= threshold)
        });
        if near {
            out.insert(*b);
        }
    }
    Ok(out)
}

/// Convenience for single boxes.
pub fn box_shadow(mesh: &LRMesh, b: &MeshBox, dir: Direction, pk: usize) -> Region {
    generalized_shadow(mesh, &std::iter::once(*b).collect(), dir, pk)
}
