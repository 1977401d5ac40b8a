//! LR meshes: canonical meshline storage, box partitions and line insertion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// Constant `y`, running along `x`.
    Horizontal,
    /// Constant `x`, running along `y`.
    Vertical,
}

impl Direction {
    pub fn orthogonal(self) -> Self {
        match self {
            Direction::Horizontal => Direction::Vertical,
            Direction::Vertical => Direction::Horizontal,
        }
    }

    /// Parametric axis the direction runs along (0 = x, 1 = y).
    pub fn axis(self) -> usize {
        match self {
            Direction::Horizontal => 0,
            Direction::Vertical => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::Horizontal => 'H',
            Direction::Vertical => 'V',
        }
    }

    pub fn from_letter(c: &str) -> Option<Self> {
        match c {
            "H" | "h" => Some(Direction::Horizontal),
            "V" | "v" => Some(Direction::Vertical),
            _ => None,
        }
    }
}

/// The square parameter domain `[lo, hi]^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Domain {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Domain {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo >= hi {
            return Err(Error::NonSquareDomain);
        }
        Ok(Domain { lo, hi })
    }

    /// Builds a domain from independent x and y ranges, rejecting non-squares.
    pub fn from_ranges(x: (Dyadic, Dyadic), y: (Dyadic, Dyadic)) -> Result<Self> {
        if x != y {
            return Err(Error::NonSquareDomain);
        }
        Domain::new(x.0, x.1)
    }

    pub fn unit() -> Self {
        Domain { lo: Dyadic::ZERO, hi: Dyadic::ONE }
    }

    pub fn side(&self) -> Dyadic {
        self.hi - self.lo
    }

    pub fn as_box(&self) -> MeshBox {
        MeshBox::new(self.lo, self.hi, self.lo, self.hi)
    }

    pub fn is_interior(&self, t: Dyadic) -> bool {
        self.lo < t && t < self.hi
    }

    pub fn contains(&self, t: Dyadic) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Closed interval `[lo, hi]` of a meshline with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub mult: u32,
}

impl Span {
    pub fn contains(&self, t: Dyadic) -> bool {
        self.lo <= t && t <= self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Meshline {
    pub direction: Direction,
    pub fixed: Dyadic,
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub mult: u32,
}

impl Meshline {
    pub fn new(direction: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic, mult: u32) -> Self {
        Meshline { direction, fixed, lo, hi, mult }
    }
}

/// An axis-aligned closed rectangle. Orders lexicographically by its lower-left corner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MeshBox {
    pub x0: Dyadic,
    pub y0: Dyadic,
    pub x1: Dyadic,
    pub y1: Dyadic,
}

impl MeshBox {
    pub fn new(x0: Dyadic, x1: Dyadic, y0: Dyadic, y1: Dyadic) -> Self {
        MeshBox { x0, y0, x1, y1 }
    }

    pub fn lo(&self, axis: usize) -> Dyadic {
        if axis == 0 {
            self.x0
        } else {
            self.y0
        }
    }

    pub fn hi(&self, axis: usize) -> Dyadic {
        if axis == 0 {
            self.x1
        } else {
            self.y1
        }
    }

    pub fn extent(&self, axis: usize) -> Dyadic {
        self.hi(axis) - self.lo(axis)
    }

    pub fn width(&self) -> Dyadic {
        self.x1 - self.x0
    }

    pub fn height(&self) -> Dyadic {
        self.y1 - self.y0
    }

    pub fn area(&self) -> Dyadic {
        self.width() * self.height()
    }

    pub fn diam_sq(&self) -> Dyadic {
        let (w, h) = (self.width(), self.height());
        w * w + h * h
    }

    pub fn center(&self) -> [Dyadic; 2] {
        [self.x0.midpoint(self.x1), self.y0.midpoint(self.y1)]
    }

    pub fn center_f64(&self) -> [f64; 2] {
        let c = self.center();
        [c[0].to_f64(), c[1].to_f64()]
    }

    /// `true` iff `other` lies inside `self` (closed containment).
    pub fn contains_box(&self, other: &MeshBox) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    /// `true` iff the open interiors intersect.
    pub fn interiors_overlap(&self, other: &MeshBox) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    /// Splits at `at` along `axis` (the cut is orthogonal to that axis).
    fn split(&self, axis: usize, at: Dyadic) -> (MeshBox, MeshBox) {
        let mut a = *self;
        let mut b = *self;
        if axis == 0 {
            a.x1 = at;
            b.x0 = at;
        } else {
            a.y1 = at;
            b.y0 = at;
        }
        (a, b)
    }
}

impl fmt::Display for MeshBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x0, self.x1, self.y0, self.y1)
    }
}

impl fmt::Debug for MeshBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A union of boxes of one partition snapshot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    boxes: BTreeSet<MeshBox>,
}

impl Region {
    pub fn new() -> Self {
        Region::default()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: &MeshBox) -> bool {
        self.boxes.contains(b)
    }

    pub fn insert(&mut self, b: MeshBox) -> bool {
        self.boxes.insert(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MeshBox> {
        self.boxes.iter()
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.boxes.is_subset(&other.boxes)
    }

    pub fn retain(&mut self, f: impl FnMut(&MeshBox) -> bool) {
        self.boxes.retain(f)
    }

    /// Fails with the first box that is not a box of `mesh`.
    pub fn check_on(&self, mesh: &LRMesh) -> Result<()> {
        match self.boxes.iter().find(|b| !mesh.contains_box(b)) {
            Some(b) => Err(Error::StaleRegion(b.to_string())),
            None => Ok(()),
        }
    }
}

impl FromIterator<MeshBox> for Region {
    fn from_iter<I: IntoIterator<Item = MeshBox>>(iter: I) -> Self {
        Region { boxes: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a Region {
    type Item = &'a MeshBox;
    type IntoIter = std::collections::btree_set::Iter<'a, MeshBox>;
    fn into_iter(self) -> Self::IntoIter {
        self.boxes.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Contiguous aligned meshlines with different multiplicities.
    C1 { a: Meshline, b: Meshline },
    /// Multiplicity above degree + 1.
    C2 { line: Meshline, max: u32 },
    /// A boundary side is not covered with full multiplicity.
    BoundaryNotFull { direction: Direction, fixed: Dyadic },
    /// A meshline endpoint lies on neither a transversal line nor the boundary.
    Dangling { line: Meshline, at: Dyadic },
    /// A face of the partition is not a rectangle.
    NonRectangularBox { bounds: MeshBox },
}

/// Tensor or locally refined mesh on a square domain.
///
/// Meshlines are stored merged by maximal extent per `(direction, fixed,
/// multiplicity)`. The box partition is kept alongside and updated
/// incrementally by [`LRMesh::insert_segment_in_place`].
#[derive(Clone, Debug)]
pub struct LRMesh {
    domain: Domain,
    degree: [usize; 2],
    lines: [BTreeMap<Dyadic, Vec<Span>>; 2],
    boxes: BTreeMap<(Dyadic, Dyadic), MeshBox>,
    nonrect: Vec<MeshBox>,
    // spans at one fixed coordinate overlap in more than a point (invalid C1 input)
    overlapping: bool,
}

impl PartialEq for LRMesh {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.degree == other.degree && self.lines == other.lines
    }
}

impl Eq for LRMesh {}

impl LRMesh {
    /// Open tensor mesh: full-multiplicity boundary, simple interior lines.
    pub fn open_tensor(
        domain: Domain,
        degree: [usize; 2],
        interior_x: &[Dyadic],
        interior_y: &[Dyadic],
    ) -> Result<Self> {
        for coords in [interior_x, interior_y] {
            for (i, &c) in coords.iter().enumerate() {
                if !domain.is_interior(c) {
                    return Err(Error::OutsideDomain(c));
                }
                if i > 0 && coords[i - 1] >= c {
                    return Err(Error::DuplicateCoordinate(c));
                }
            }
        }
        let mut lines = boundary_lines(domain, degree);
        for &x in interior_x {
            lines.push(Meshline::new(Direction::Vertical, x, domain.lo, domain.hi, 1));
        }
        for &y in interior_y {
            lines.push(Meshline::new(Direction::Horizontal, y, domain.lo, domain.hi, 1));
        }
        LRMesh::from_lines(domain, degree, lines)
    }

    /// Builds a mesh from arbitrary meshlines. Only structural problems are
    /// errors; constraint violations are reported by [`LRMesh::validate`].
    pub fn from_lines(domain: Domain, degree: [usize; 2], lines: impl IntoIterator<Item = Meshline>) -> Result<Self> {
        let mut grouped: [BTreeMap<Dyadic, Vec<Span>>; 2] = Default::default();
        for l in lines {
            if l.lo >= l.hi {
                return Err(Error::InvalidLine(format!("empty span [{}, {}]", l.lo, l.hi)));
            }
            if l.mult == 0 {
                return Err(Error::InvalidLine("multiplicity 0".into()));
            }
            if !domain.contains(l.fixed) || !domain.contains(l.lo) || !domain.contains(l.hi) {
                return Err(Error::InvalidLine(format!(
                    "{} {} [{}, {}] leaves the domain",
                    l.direction.letter(),
                    l.fixed,
                    l.lo,
                    l.hi
                )));
            }
            grouped[l.direction.axis()].entry(l.fixed).or_default().push(Span { lo: l.lo, hi: l.hi, mult: l.mult });
        }
        let mut overlapping = false;
        for map in grouped.iter_mut() {
            for spans in map.values_mut() {
                *spans = merge_spans(std::mem::take(spans));
                overlapping |= spans.windows(2).any(|w| w[1].lo < w[0].hi);
            }
        }
        let mut mesh =
            LRMesh { domain, degree, lines: grouped, boxes: BTreeMap::new(), nonrect: Vec::new(), overlapping };
        let (boxes, nonrect) = mesh.compute_partition();
        mesh.boxes = boxes.into_iter().map(|b| ((b.x0, b.y0), b)).collect();
        mesh.nonrect = nonrect;
        Ok(mesh)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn degree(&self) -> [usize; 2] {
        self.degree
    }

    /// Largest multiplicity allowed for lines of `dir` (constraint C2).
    pub fn max_multiplicity(&self, dir: Direction) -> u32 {
        self.degree[dir.orthogonal().axis()] as u32 + 1
    }

    /// Degree governing crossings of a ray running in `dir`.
    pub fn degree_along(&self, dir: Direction) -> usize {
        self.degree[dir.axis()]
    }

    /// Canonical meshlines sorted by `(direction, fixed, lo)`.
    pub fn lines(&self) -> Vec<Meshline> {
        let mut out = Vec::new();
        for dir in [Direction::Horizontal, Direction::Vertical] {
            for (&fixed, spans) in &self.lines[dir.axis()] {
                for s in spans {
                    out.push(Meshline::new(dir, fixed, s.lo, s.hi, s.mult));
                }
            }
        }
        out
    }

    pub fn num_lines(&self) -> usize {
        self.lines.iter().flat_map(|m| m.values()).map(Vec::len).sum()
    }

    pub fn spans_at(&self, dir: Direction, fixed: Dyadic) -> &[Span] {
        self.lines[dir.axis()].get(&fixed).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Fixed coordinates carrying at least one line of `dir`, ascending.
    pub fn fixeds(&self, dir: Direction) -> impl DoubleEndedIterator<Item = Dyadic> + '_ {
        self.lines[dir.axis()].keys().copied()
    }

    pub fn fixeds_in(
        &self,
        dir: Direction,
        range: impl std::ops::RangeBounds<Dyadic>,
    ) -> impl DoubleEndedIterator<Item = (Dyadic, &[Span])> + '_ {
        self.lines[dir.axis()].range(range).map(|(k, v)| (*k, v.as_slice()))
    }

    /// Boxes of the partition in lexicographic lower-left order.
    pub fn box_partition(&self) -> Vec<MeshBox> {
        self.boxes.values().copied().collect()
    }

    pub fn boxes(&self) -> impl Iterator<Item = &MeshBox> {
        self.boxes.values()
    }

    pub fn num_boxes(&self) -> usize {
        self.boxes.len()
    }

    pub fn contains_box(&self, b: &MeshBox) -> bool {
        self.boxes.get(&(b.x0, b.y0)) == Some(b)
    }

    /// Highest multiplicity among lines at `(dir, fixed)` whose closed span contains `t`.
    pub fn multiplicity_at(&self, dir: Direction, fixed: Dyadic, t: Dyadic) -> u32 {
        let spans = self.spans_at(dir, fixed);
        let idx = spans.partition_point(|s| s.lo <= t);
        if self.overlapping {
            return spans[..idx].iter().filter(|s| s.hi >= t).map(|s| s.mult).max().unwrap_or(0);
        }
        // disjoint up to shared endpoints: only the last two candidates can contain t
        spans[idx.saturating_sub(2)..idx].iter().filter(|s| s.hi >= t).map(|s| s.mult).max().unwrap_or(0)
    }

    /// Minimum multiplicity over `[lo, hi]` at `(dir, fixed)`; 0 unless fully covered.
    pub fn covering_multiplicity(&self, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic) -> u32 {
        let spans = self.spans_at(dir, fixed);
        let mut reach = lo;
        let mut mult = u32::MAX;
        let start = spans.partition_point(|s| s.hi <= lo);
        for s in &spans[start..] {
            if s.lo > reach {
                break;
            }
            if s.hi > reach {
                reach = s.hi;
                mult = mult.min(s.mult);
            }
            if reach >= hi {
                break;
            }
        }
        if reach >= hi && lo < hi {
            mult
        } else if lo == hi {
            self.multiplicity_at(dir, fixed, lo)
        } else {
            0
        }
    }

    pub fn covers(&self, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic) -> bool {
        self.covering_multiplicity(dir, fixed, lo, hi) > 0
    }

    /// Orthogonal meshlines met by the closed segment, counting multiplicities.
    pub fn crossing_count(&self, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic) -> u32 {
        let orth = dir.orthogonal();
        self.fixeds_in(orth, lo..=hi).map(|(t, _)| self.multiplicity_at(orth, t, fixed)).sum()
    }

    /// Box whose half-open region `[x0,x1) x [y0,y1)` contains the point.
    pub fn box_at(&self, p: [Dyadic; 2]) -> Option<&MeshBox> {
        if !(self.domain.lo <= p[0] && p[0] < self.domain.hi && self.domain.lo <= p[1] && p[1] < self.domain.hi) {
            return None;
        }
        // left edge: nearest vertical line at or left of x covering [y, y+)
        let x0 = self
            .fixeds_in(Direction::Vertical, ..=p[0])
            .rev()
            .find(|(_, spans)| spans.iter().any(|s| s.lo <= p[1] && p[1] < s.hi))?
            .0;
        let (&(kx, _), b) = self.boxes.range(..=(x0, p[1])).next_back()?;
        (kx == x0 && p[1] < b.y1 && p[0] < b.x1).then_some(b)
    }

    /// Box containing the points just below `p` along `axis` (same half-open
    /// convention as [`LRMesh::box_at`] on the other axis).
    pub fn box_before(&self, p: [Dyadic; 2], axis: usize) -> Option<&MeshBox> {
        let other = 1 - axis;
        let dir = if axis == 0 { Direction::Vertical } else { Direction::Horizontal };
        let prev = self
            .fixeds_in(dir, ..p[axis])
            .rev()
            .find(|(_, spans)| spans.iter().any(|s| s.lo <= p[other] && p[other] < s.hi))?
            .0;
        let mut q = p;
        q[axis] = prev;
        self.box_at(q)
    }

    pub fn is_tensor(&self) -> bool {
        self.lines
            .iter()
            .flat_map(|m| m.values())
            .all(|spans| spans.len() == 1 && spans[0].lo == self.domain.lo && spans[0].hi == self.domain.hi)
    }

    /// Every line of `coarser` is present here with the same multiplicity.
    pub fn refines(&self, coarser: &LRMesh) -> bool {
        self.domain == coarser.domain
            && self.degree == coarser.degree
            && coarser.lines().iter().all(|l| self.covering_multiplicity(l.direction, l.fixed, l.lo, l.hi) == l.mult)
    }

    /// Inserts a multiplicity-one segment and returns the refined mesh.
    pub fn insert_segment(&self, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic) -> Result<LRMesh> {
        let mut next = self.clone();
        next.insert_segment_in_place(dir, fixed, lo, hi)?;
        Ok(next)
    }

    pub fn insert_segment_in_place(&mut self, dir: Direction, fixed: Dyadic, lo: Dyadic, hi: Dyadic) -> Result<()> {
        if lo >= hi {
            return Err(Error::ZeroLength);
        }
        if fixed == self.domain.lo || fixed == self.domain.hi {
            return Err(Error::OnBoundary);
        }
        if !self.domain.is_interior(fixed) || !self.domain.contains(lo) || !self.domain.contains(hi) {
            return Err(Error::OutsideDomain(fixed));
        }
        let orth = dir.orthogonal();
        for at in [lo, hi] {
            if self.multiplicity_at(orth, at, fixed) == 0 {
                return Err(Error::DanglingEndpoint { direction: dir, fixed, at });
            }
        }
        if self.covers(dir, fixed, lo, hi) {
            return Err(Error::NoChange);
        }
        let spans = self.spans_at(dir, fixed);
        if spans.iter().any(|s| s.mult != 1 && s.lo <= hi && lo <= s.hi) {
            return Err(Error::MultiplicityConflict);
        }

        // split every box whose interior the segment crosses
        let axis = dir.axis();
        let cut_axis = orth.axis();
        let mut to_split = Vec::new();
        let mut t = lo;
        while t < hi {
            if let Some(s) = spans.iter().find(|s| s.lo <= t && t < s.hi) {
                t = s.hi;
                continue;
            }
            let mut p = [Dyadic::ZERO; 2];
            p[axis] = t;
            p[cut_axis] = fixed;
            let b = *self.box_at(p).ok_or_else(|| Error::InvalidLine(format!("no box at ({}, {})", p[0], p[1])))?;
            debug_assert!(b.lo(cut_axis) < fixed && fixed < b.hi(cut_axis));
            to_split.push(b);
            t = b.hi(axis);
        }
        for b in to_split {
            self.boxes.remove(&(b.x0, b.y0));
            let (l, r) = b.split(cut_axis, fixed);
            self.boxes.insert((l.x0, l.y0), l);
            self.boxes.insert((r.x0, r.y0), r);
        }

        let entry = self.lines[axis].entry(fixed).or_default();
        entry.push(Span { lo, hi, mult: 1 });
        *entry = merge_spans(std::mem::take(entry));
        Ok(())
    }

    /// Constraint violations (C1, C2, boundary multiplicity, anchoring, box shape).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let all = self.lines();
        for l in &all {
            let max = self.max_multiplicity(l.direction);
            if l.mult > max {
                out.push(Violation::C2 { line: *l, max });
            }
        }
        for dir in [Direction::Horizontal, Direction::Vertical] {
            for (&fixed, spans) in &self.lines[dir.axis()] {
                for (i, a) in spans.iter().enumerate() {
                    for b in &spans[i + 1..] {
                        if b.lo > a.hi {
                            break;
                        }
                        if a.mult != b.mult {
                            out.push(Violation::C1 {
                                a: Meshline::new(dir, fixed, a.lo, a.hi, a.mult),
                                b: Meshline::new(dir, fixed, b.lo, b.hi, b.mult),
                            });
                        }
                    }
                }
            }
        }
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let full = self.max_multiplicity(dir);
            for fixed in [self.domain.lo, self.domain.hi] {
                let spans = self.spans_at(dir, fixed);
                let covered = self.covering_multiplicity(dir, fixed, self.domain.lo, self.domain.hi) > 0;
                if !covered || spans.iter().any(|s| s.mult != full) {
                    out.push(Violation::BoundaryNotFull { direction: dir, fixed });
                }
            }
        }
        for l in &all {
            let orth = l.direction.orthogonal();
            for at in [l.lo, l.hi] {
                let on_boundary = at == self.domain.lo || at == self.domain.hi;
                if !on_boundary && self.multiplicity_at(orth, at, l.fixed) == 0 {
                    out.push(Violation::Dangling { line: *l, at });
                }
            }
        }
        for b in &self.nonrect {
            out.push(Violation::NonRectangularBox { bounds: *b });
        }
        out
    }

    /// Box partition recomputed from the meshlines alone (union of grid cells
    /// not separated by a line). Returns rectangles and the bounding boxes of
    /// faces that are not rectangles.
    pub fn compute_partition(&self) -> (Vec<MeshBox>, Vec<MeshBox>) {
        let mut xs: BTreeSet<Dyadic> = self.fixeds(Direction::Vertical).collect();
        let mut ys: BTreeSet<Dyadic> = self.fixeds(Direction::Horizontal).collect();
        for s in [&mut xs, &mut ys] {
            s.insert(self.domain.lo);
            s.insert(self.domain.hi);
        }
        let xs: Vec<Dyadic> = xs.into_iter().collect();
        let ys: Vec<Dyadic> = ys.into_iter().collect();
        let (nx, ny) = (xs.len() - 1, ys.len() - 1);
        let mut uf = UnionFind::new(nx * ny);
        let id = |i: usize, j: usize| j * nx + i;
        for j in 0..ny {
            for i in 0..nx {
                if i + 1 < nx && !self.covers(Direction::Vertical, xs[i + 1], ys[j], ys[j + 1]) {
                    uf.union(id(i, j), id(i + 1, j));
                }
                if j + 1 < ny && !self.covers(Direction::Horizontal, ys[j + 1], xs[i], xs[i + 1]) {
                    uf.union(id(i, j), id(i, j + 1));
                }
            }
        }
        // root -> (imin, imax, jmin, jmax, cells)
        let mut comps: BTreeMap<usize, (usize, usize, usize, usize, usize)> = BTreeMap::new();
        for j in 0..ny {
            for i in 0..nx {
                let r = uf.find(id(i, j));
                let e = comps.entry(r).or_insert((i, i, j, j, 0));
                e.0 = e.0.min(i);
                e.1 = e.1.max(i);
                e.2 = e.2.min(j);
                e.3 = e.3.max(j);
                e.4 += 1;
            }
        }
        let mut rects = Vec::new();
        let mut bad = Vec::new();
        for (imin, imax, jmin, jmax, cells) in comps.into_values() {
            let b = MeshBox::new(xs[imin], xs[imax + 1], ys[jmin], ys[jmax + 1]);
            if cells == (imax - imin + 1) * (jmax - jmin + 1) {
                rects.push(b);
            } else {
                bad.push(b);
            }
        }
        rects.sort();
        bad.sort();
        (rects, bad)
    }
}

fn boundary_lines(domain: Domain, degree: [usize; 2]) -> Vec<Meshline> {
    let mut out = Vec::new();
    for fixed in [domain.lo, domain.hi] {
        out.push(Meshline::new(Direction::Horizontal, fixed, domain.lo, domain.hi, degree[1] as u32 + 1));
        out.push(Meshline::new(Direction::Vertical, fixed, domain.lo, domain.hi, degree[0] as u32 + 1));
    }
    out
}

/// Sorts spans and merges overlapping or touching spans of equal multiplicity.
fn merge_spans(mut spans: Vec<Span>) -> Vec<Span> {
    spans.sort();
    let mut by_mult: BTreeMap<u32, Vec<Span>> = BTreeMap::new();
    for s in spans {
        let list = by_mult.entry(s.mult).or_default();
        match list.last_mut() {
            Some(last) if s.lo <= last.hi => last.hi = last.hi.max(s.hi),
            _ => list.push(s),
        }
    }
    let mut out: Vec<Span> = by_mult.into_values().flatten().collect();
    out.sort();
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
