//! Checks for nested supports, support counts, partition of unity, local
//! linear independence, grading and the spanning condition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bspline::{Knots, LRBSpline};
use crate::dyadic::Dyadic;
use crate::lrset::{LRSet, SupportIndex};
use crate::mesh::{LRMesh, MeshBox, Meshline, Violation};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NestedPair {
    pub outer: Knots,
    pub inner: Knots,
}

fn end_multiplicities(t: &[Dyadic]) -> (usize, usize) {
    let first = t.iter().take_while(|&&k| k == t[0]).count();
    let last = t.iter().rev().take_while(|&&k| k == t[t.len() - 1]).count();
    (first, last)
}

/// `true` iff `inner` is nested in `outer`: contained support and, on every
/// shared side of the supports, no larger end-knot multiplicity.
pub fn is_nested(inner: &LRBSpline, outer: &LRBSpline) -> bool {
    if inner.knots == outer.knots {
        return false;
    }
    let (si, so) = (inner.support(), outer.support());
    if !so.contains_box(&si) {
        return false;
    }
    (0..2).all(|axis| {
        let (il, ih) = end_multiplicities(&inner.knots[axis]);
        let (ol, oh) = end_multiplicities(&outer.knots[axis]);
        (si.lo(axis) != so.lo(axis) || il <= ol) && (si.hi(axis) != so.hi(axis) || ih <= oh)
    })
}

pub fn find_nested_pairs(set: &LRSet) -> Vec<NestedPair> {
    let idx = set.support_index();
    let mut out = Vec::new();
    for inner in idx.members() {
        let c = inner.support().center_f64();
        for outer in idx.candidates(c) {
            if is_nested(inner, outer) {
                out.push(NestedPair { outer: outer.knots.clone(), inner: inner.knots.clone() });
            }
        }
    }
    out.sort_by(|a, b| (&a.outer, &a.inner).cmp(&(&b.outer, &b.inner)));
    out
}

/// Number of members whose support contains each box of the mesh.
pub fn box_support_counts(set: &LRSet) -> BTreeMap<MeshBox, usize> {
    let idx = set.support_index();
    set.mesh().boxes().map(|b| (*b, idx.covering(b).len())).collect()
}

/// Uniform random points in the domain.
pub fn random_points(set: &LRSet, n: usize, seed: u64) -> Vec<[f64; 2]> {
    let dom = set.mesh().domain();
    let (lo, hi) = (dom.lo.to_f64(), dom.hi.to_f64());
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| [rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)]).collect()
}

/// `max |1 - sum_B w_B B(p)|` over the points.
pub fn partition_of_unity_deviation(set: &LRSet, points: &[[f64; 2]]) -> f64 {
    deviation(&set.support_index(), points, true)
}

/// As [`partition_of_unity_deviation`] with every weight taken as 1.
pub fn unweighted_deviation(set: &LRSet, points: &[[f64; 2]]) -> f64 {
    deviation(&set.support_index(), points, false)
}

fn deviation(idx: &SupportIndex, points: &[[f64; 2]], weighted: bool) -> f64 {
    points.iter().map(|&p| (1.0 - idx.evaluate(p, weighted)).abs()).fold(0.0, f64::max)
}

pub fn max_weight_deviation(set: &LRSet) -> f64 {
    set.members().map(|b| (b.weight - 1.0).abs()).fold(0.0, f64::max)
}

trait Scalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_dyadic(d: Dyadic) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_dyadic(d: Dyadic) -> Self {
        d.to_f64()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_dyadic(d: Dyadic) -> Self {
        BigRational::new(BigInt::from(d.numerator()), BigInt::one() << d.exponent())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Bernstein coefficients on `[a, b]` of the univariate B-spline with knots
/// `t`, obtained by inserting `a` and `b` until every piece is either a
/// Bernstein polynomial on `[a, b]` or vanishes there. `[a, b]` must not
/// contain knots in its interior.
fn bernstein_coefficients<S: Scalar>(t: &[Dyadic], a: Dyadic, b: Dyadic) -> Vec<S> {
    let p = t.len() - 2;
    let mut work: Vec<(Vec<Dyadic>, S)> = vec![(t.to_vec(), S::one())];
    let mut out = vec![S::zero(); p + 1];
    while let Some((k, c)) = work.pop() {
        let (lo, hi) = (k[0], k[p + 1]);
        let split = [a, b].into_iter().find(|&v| lo < v && v < hi);
        match split {
            Some(v) => {
                let pos = k.partition_point(|&x| x <= v);
                let mut tau = k.clone();
                tau.insert(pos, v);
                let dv = S::from_dyadic;
                let a_low = if v >= k[p] { S::one() } else { dv(v - k[0]).div(&dv(k[p] - k[0])) };
                let a_high = if v <= k[1] { S::one() } else { dv(k[p + 1] - v).div(&dv(k[p + 1] - k[1])) };
                work.push((tau[..p + 2].to_vec(), c.mul(&a_low)));
                work.push((tau[1..].to_vec(), c.mul(&a_high)));
            }
            None => {
                if lo == a && hi == b {
                    let nb = k.iter().filter(|&&x| x == b).count();
                    out[nb - 1] = out[nb - 1].add(&c);
                }
            }
        }
    }
    out
}

fn restriction_rows<S: Scalar>(members: &[&LRBSpline], bx: &MeshBox) -> Vec<Vec<S>> {
    members
        .iter()
        .map(|m| {
            let cx: Vec<S> = bernstein_coefficients(&m.knots[0], bx.x0, bx.x1);
            let cy: Vec<S> = bernstein_coefficients(&m.knots[1], bx.y0, bx.y1);
            let mut row = Vec::with_capacity(cx.len() * cy.len());
            for a in &cx {
                for b in &cy {
                    row.push(a.mul(b));
                }
            }
            row
        })
        .collect()
}

fn rank_f64(mut rows: Vec<Vec<f64>>) -> usize {
    let scale = rows.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = 1e-9 * scale;
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).max_by(|&i, &j| rows[i][col].abs().total_cmp(&rows[j][col].abs())) else {
            break;
        };
        if rows[piv][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, piv);
        for i in rank + 1..rows.len() {
            let f = rows[i][col] / rows[rank][col];
            for j in col..ncols {
                rows[i][j] -= f * rows[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

fn rank_exact(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &rows[rank][col];
            for j in col..ncols {
                let v = &f * &rows[rank][j];
                rows[i][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceCheck {
    pub members: usize,
    pub rank: usize,
    /// Rank in exact rational arithmetic, when computed.
    pub exact_rank: Option<usize>,
}

impl IndependenceCheck {
    pub fn independent(&self) -> bool {
        self.rank == self.members && self.exact_rank.is_none_or(|r| r == self.members)
    }
}

/// Restricts the members covering `bx` to it and checks their polynomial
/// pieces for full row rank. Exact arithmetic confirms the result when the
/// bidegree is at most (2, 2) or `exact` is set.
pub fn local_independence(set: &LRSet, bx: &MeshBox, exact: bool) -> IndependenceCheck {
    let idx = set.support_index();
    local_independence_with(&idx, set.mesh().degree(), bx, exact)
}

fn local_independence_with(idx: &SupportIndex, degree: [usize; 2], bx: &MeshBox, exact: bool) -> IndependenceCheck {
    let members = idx.covering(bx);
    let rank = rank_f64(restriction_rows::<f64>(&members, bx));
    let exact_rank = (exact || (degree[0] <= 2 && degree[1] <= 2))
        .then(|| rank_exact(restriction_rows::<BigRational>(&members, bx)));
    IndependenceCheck { members: members.len(), rank, exact_rank }
}

/// Boolean form used by the battery.
pub fn local_independence_bruteforce(set: &LRSet, bx: &MeshBox) -> bool {
    local_independence(set, bx, false).independent()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradingReport {
    /// Largest `diam^2 / area` over boxes.
    pub max_shape_ratio_sq: f64,
    /// Largest area ratio over edge-adjacent boxes.
    pub max_neighbor_ratio_sq: f64,
    pub shape_bound_attained: bool,
    pub neighbor_bound_attained: bool,
    pub aspect_histogram: BTreeMap<String, usize>,
    pub shape_violations: Vec<MeshBox>,
    pub neighbor_violations: Vec<(MeshBox, MeshBox)>,
}

impl GradingReport {
    pub fn pass(&self) -> bool {
        self.shape_violations.is_empty() && self.neighbor_violations.is_empty()
    }
}

/// Edge-adjacent box pairs, each listed once as (left/below, right/above).
pub fn adjacent_pairs(mesh: &LRMesh) -> Vec<(MeshBox, MeshBox)> {
    let dom = mesh.domain();
    let mut out = Vec::new();
    for b in mesh.boxes() {
        for axis in 0..2 {
            if b.hi(axis) == dom.hi {
                continue;
            }
            let o = 1 - axis;
            let mut t = b.lo(o);
            while t < b.hi(o) {
                let mut p = [Dyadic::ZERO; 2];
                p[axis] = b.hi(axis);
                p[o] = t;
                let Some(n) = mesh.box_at(p) else { break };
                out.push((*b, *n));
                t = n.hi(o);
            }
        }
    }
    out
}

fn aspect_key(b: &MeshBox) -> String {
    match b.width().log2_ratio(b.height()) {
        Some(k) if k >= 0 => format!("{}:1", 1u64 << k.min(63)),
        Some(k) => format!("1:{}", 1u64 << (-k).min(63)),
        None => "other".into(),
    }
}

pub fn grading_report(mesh: &LRMesh) -> GradingReport {
    let (two, four, five) = (Dyadic::from_int(2), Dyadic::from_int(4), Dyadic::from_int(5));
    let mut r = GradingReport {
        max_shape_ratio_sq: 0.0,
        max_neighbor_ratio_sq: 0.0,
        shape_bound_attained: false,
        neighbor_bound_attained: false,
        aspect_histogram: BTreeMap::new(),
        shape_violations: Vec::new(),
        neighbor_violations: Vec::new(),
    };
    for b in mesh.boxes() {
        let (d2, area) = (b.diam_sq(), b.area());
        r.max_shape_ratio_sq = r.max_shape_ratio_sq.max(d2.to_f64() / area.to_f64());
        if two * d2 > five * area {
            r.shape_violations.push(*b);
        }
        r.shape_bound_attained |= two * d2 == five * area;
        *r.aspect_histogram.entry(aspect_key(b)).or_insert(0) += 1;
    }
    for (a, b) in adjacent_pairs(mesh) {
        let (big, small) = if a.area() >= b.area() { (a, b) } else { (b, a) };
        r.max_neighbor_ratio_sq = r.max_neighbor_ratio_sq.max(big.area().to_f64() / small.area().to_f64());
        if big.area() > four * small.area() {
            r.neighbor_violations.push((a, b));
        }
        r.neighbor_bound_attained |= big.area() == four * small.area();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanningFailure {
    pub line: Meshline,
    pub crossings: u32,
    pub required: u32,
}

/// Maximal interior lines crossing fewer than `p_k + 2` orthogonal lines.
pub fn spanning_failures(mesh: &LRMesh) -> Vec<SpanningFailure> {
    let dom = mesh.domain();
    mesh.lines()
        .into_iter()
        .filter(|l| dom.is_interior(l.fixed))
        .filter_map(|l| {
            let required = mesh.degree_along(l.direction) as u32 + 2;
            let crossings = mesh.crossing_count(l.direction, l.fixed, l.lo, l.hi);
            (crossings < required).then_some(SpanningFailure { line: l, crossings, required })
        })
        .collect()
}

pub fn spanning_condition(mesh: &LRMesh) -> bool {
    spanning_failures(mesh).is_empty()
}

/// Tolerances used by the battery.
pub const POU_TOL: f64 = 1e-10;
pub const WEIGHT_TOL: f64 = 1e-12;
const WITNESS_LIMIT: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary<T: Serialize> {
    pub pass: bool,
    #[serde(flatten)]
    pub detail: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeshCheck {
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NestedCheck {
    pub count: usize,
    pub witnesses: Vec<NestedPair>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountCheck {
    pub expected: usize,
    pub min: usize,
    pub max: usize,
    pub bad_boxes: Vec<(MeshBox, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnityCheck {
    pub points: usize,
    pub seed: u64,
    pub unweighted_deviation: f64,
    pub weighted_deviation: f64,
    pub max_weight_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceSummary {
    pub boxes: usize,
    pub exact_cross_checks: usize,
    pub dependent_boxes: Vec<MeshBox>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningCheck {
    pub failures: Vec<SpanningFailure>,
}

/// Full verification battery for one mesh and LR set.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub pass: bool,
    pub boxes: usize,
    pub bsplines: usize,
    pub mesh: CheckSummary<MeshCheck>,
    pub nested_pairs: CheckSummary<NestedCheck>,
    pub support_counts: CheckSummary<CountCheck>,
    pub partition_of_unity: CheckSummary<UnityCheck>,
    pub local_independence: CheckSummary<IndependenceSummary>,
    pub grading: CheckSummary<GradingReport>,
    pub spanning: CheckSummary<SpanningCheck>,
}

impl Report {
    /// The four equivalent conditions for nestedness-free supports.
    pub fn n2s_predicates(&self) -> [bool; 4] {
        [self.nested_pairs.pass, self.support_counts.pass, self.local_independence.pass, self.partition_of_unity.pass]
    }
}

pub fn verify(set: &LRSet, points: usize, seed: u64) -> Report {
    let mesh = set.mesh();
    let [p1, p2] = mesh.degree();
    let expected = (p1 + 1) * (p2 + 1);

    let violations = mesh.validate();
    let mesh_check = CheckSummary { pass: violations.is_empty(), detail: MeshCheck { violations } };

    let nested = find_nested_pairs(set);
    let nested_check = CheckSummary {
        pass: nested.is_empty(),
        detail: NestedCheck { count: nested.len(), witnesses: nested.into_iter().take(WITNESS_LIMIT).collect() },
    };

    let counts = box_support_counts(set);
    let bad: Vec<(MeshBox, usize)> = counts.iter().filter(|(_, &c)| c != expected).map(|(b, &c)| (*b, c)).collect();
    let count_check = CheckSummary {
        pass: bad.is_empty(),
        detail: CountCheck {
            expected,
            min: counts.values().copied().min().unwrap_or(0),
            max: counts.values().copied().max().unwrap_or(0),
            bad_boxes: bad.into_iter().take(WITNESS_LIMIT).collect(),
        },
    };

    let pts = random_points(set, points, seed);
    let idx = set.support_index();
    let unity = UnityCheck {
        points,
        seed,
        unweighted_deviation: deviation(&idx, &pts, false),
        weighted_deviation: deviation(&idx, &pts, true),
        max_weight_deviation: max_weight_deviation(set),
    };
    let unity_check = CheckSummary {
        pass: unity.unweighted_deviation <= POU_TOL && unity.max_weight_deviation <= WEIGHT_TOL,
        detail: unity,
    };

    let mut dependent = Vec::new();
    let mut exact_checks = 0;
    for b in mesh.boxes() {
        let c = local_independence_with(&idx, mesh.degree(), b, false);
        exact_checks += usize::from(c.exact_rank.is_some());
        if !c.independent() {
            dependent.push(*b);
        }
    }
    let li_check = CheckSummary {
        pass: dependent.is_empty(),
        detail: IndependenceSummary {
            boxes: mesh.num_boxes(),
            exact_cross_checks: exact_checks,
            dependent_boxes: dependent.into_iter().take(WITNESS_LIMIT).collect(),
        },
    };

    let grading = grading_report(mesh);
    let grading_check = CheckSummary { pass: grading.pass(), detail: grading };

    let failures = spanning_failures(mesh);
    let spanning_check = CheckSummary { pass: failures.is_empty(), detail: SpanningCheck { failures } };

    let pass = mesh_check.pass
        && nested_check.pass
        && count_check.pass
        && unity_check.pass
        && li_check.pass
        && grading_check.pass
        && spanning_check.pass;
    Report {
        pass,
        boxes: mesh.num_boxes(),
        bsplines: set.len(),
        mesh: mesh_check,
        nested_pairs: nested_check,
        support_counts: count_check,
        partition_of_unity: unity_check,
        local_independence: li_check,
        grading: grading_check,
        spanning: spanning_check,
    }
}

/// Direction-tagged helper for callers that hold a line.
pub fn line_crossings(mesh: &LRMesh, l: &Meshline) -> u32 {
    mesh.crossing_count(l.direction, l.fixed, l.lo, l.hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Direction, Domain};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn tensor(degree: [usize; 2], xs: &[&str], ys: &[&str]) -> LRSet {
        let xs: Vec<Dyadic> = xs.iter().map(|s| d(s)).collect();
        let ys: Vec<Dyadic> = ys.iter().map(|s| d(s)).collect();
        LRSet::initial(&LRMesh::open_tensor(Domain::unit(), degree, &xs, &ys).unwrap()).unwrap()
    }

    #[test]
    fn tensor_sets_pass_everything() {
        for deg in [[1, 1], [2, 2], [3, 2], [0, 1]] {
            let s = tensor(deg, &["0.25", "0.5"], &["0.5", "0.75"]);
            assert!(find_nested_pairs(&s).is_empty(), "{deg:?}");
            let want = (deg[0] + 1) * (deg[1] + 1);
            assert!(box_support_counts(&s).values().all(|&c| c == want));
            let r = verify(&s, 200, 1);
            assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn bernstein_extraction_of_uniform_quadratic() {
        let t: Vec<Dyadic> = (0..4).map(Dyadic::from_int).collect();
        // compare the Bernstein form on [1, 2] against direct evaluation
        let c: Vec<f64> = bernstein_coefficients(&t, d("1"), d("2"));
        let tf = [0.0, 1.0, 2.0, 3.0];
        for i in 0..=10 {
            let u = i as f64 / 10.0;
            let bern = c[0] * (1.0 - u).powi(2) + c[1] * 2.0 * u * (1.0 - u) + c[2] * u * u;
            assert!((bern - crate::bspline::basis(&tf, 1.0 + u, false)).abs() < 1e-14);
        }
        let exact: Vec<BigRational> = bernstein_coefficients(&t, d("1"), d("2"));
        assert_eq!(exact[1], BigRational::new(1.into(), 1.into()));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_f64(vec![vec![1.0, 2.0], vec![2.0, 4.0]]), 1);
        assert_eq!(rank_f64(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]), 2);
        let q = |a: i64| BigRational::from_integer(a.into());
        assert_eq!(rank_exact(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank_exact(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
    }

    #[test]
    fn perturbed_weight_shows_in_weighted_deviation() {
        let s = tensor([2, 2], &["0.5"], &["0.5"]);
        let b = s.members().nth(5).unwrap();
        let bumped = s.with_weight(&b.knots, 1.0 + 1e-3);
        let c = b.support().center_f64();
        assert!(partition_of_unity_deviation(&bumped, &[c]) >= 1e-4);
        assert!(partition_of_unity_deviation(&s, &random_points(&s, 1000, 3)) <= 1e-12);
    }

    #[test]
    fn grading_on_uniform_mesh() {
        let s = tensor([1, 1], &["0.5"], &["0.5"]);
        let g = grading_report(s.mesh());
        assert_eq!(g.max_shape_ratio_sq, 2.0);
        assert_eq!(g.max_neighbor_ratio_sq, 1.0);
        assert!(g.pass());
        assert_eq!(adjacent_pairs(s.mesh()).len(), 4);
    }

    #[test]
    fn grading_flags_four_to_one_neighbours() {
        let m = LRMesh::open_tensor(Domain::unit(), [1, 1], &[d("0.5")], &[d("0.5")]).unwrap();
        let m = m
            .insert_segment(Direction::Vertical, d("0.25"), d("0"), d("0.5"))
            .unwrap()
            .insert_segment(Direction::Vertical, d("0.125"), d("0"), d("0.5"))
            .unwrap();
        let g = grading_report(&m);
        assert!(!g.shape_violations.is_empty());
        let m = LRMesh::open_tensor(Domain::unit(), [1, 1], &[d("0.5")], &[d("0.5")]).unwrap();
        let m = m
            .insert_segment(Direction::Vertical, d("0.25"), d("0"), d("0.5"))
            .unwrap()
            .insert_segment(Direction::Horizontal, d("0.25"), d("0"), d("0.5"))
            .unwrap()
            .insert_segment(Direction::Vertical, d("0.375"), d("0.25"), d("0.5"))
            .unwrap()
            .insert_segment(Direction::Horizontal, d("0.375"), d("0.25"), d("0.5"))
            .unwrap();
        let g = grading_report(&m);
        assert!(g
            .neighbor_violations
            .iter()
            .any(|(a, b)| a.area() == d("16") * b.area() || b.area() == d("16") * a.area()));
    }

    #[test]
    fn spanning_on_tensor_and_short_line() {
        let s = tensor([2, 2], &["0.25", "0.5", "0.75"], &["0.5"]);
        assert!(spanning_condition(s.mesh()));
        let m = s.mesh().insert_segment(Direction::Horizontal, d("0.25"), d("0.25"), d("0.5")).unwrap();
        let f = spanning_failures(&m);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].crossings, 2);
    }
}
