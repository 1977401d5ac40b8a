//! Bivariate B-splines given by local knot vectors.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::mesh::{Direction, Domain, LRMesh, MeshBox};

/// A tensor B-spline `B[x, y]` with its accumulated knot-insertion weight.
#[derive(Clone, PartialEq)]
pub struct LRBSpline {
    pub knots: [Vec<Dyadic>; 2],
    pub weight: f64,
}

pub type Knots = [Vec<Dyadic>; 2];

impl LRBSpline {
    /// Checks `p_k + 2` knots per axis, nondecreasing, at most `p_k + 1`
    /// repeats and a support of positive area.
    pub fn new(knots_x: Vec<Dyadic>, knots_y: Vec<Dyadic>, weight: f64) -> Result<Self> {
        let b = LRBSpline { knots: [knots_x, knots_y], weight };
        for t in &b.knots {
            if t.len() < 2 {
                return Err(Error::InvalidBSpline("fewer than two knots".into()));
            }
            if t.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidBSpline("knots are not sorted".into()));
            }
            if t[0] == t[t.len() - 1] {
                return Err(Error::InvalidBSpline("support has zero extent".into()));
            }
        }
        if weight.is_nan() || weight <= 0.0 || weight.is_infinite() {
            return Err(Error::InvalidBSpline(format!("weight {weight} is not positive")));
        }
        Ok(b)
    }

    pub fn degree(&self) -> [usize; 2] {
        [self.knots[0].len() - 2, self.knots[1].len() - 2]
    }

    pub fn key(&self) -> Knots {
        self.knots.clone()
    }

    pub fn support(&self) -> MeshBox {
        let [x, y] = &self.knots;
        MeshBox::new(x[0], x[x.len() - 1], y[0], y[y.len() - 1])
    }

    /// Number of times `v` appears in the knot vector of `axis`.
    pub fn knot_multiplicity(&self, axis: usize, v: Dyadic) -> u32 {
        self.knots[axis].iter().filter(|&&t| t == v).count() as u32
    }

    pub fn local_mesh(&self) -> LocalMesh {
        let distinct = |t: &[Dyadic]| {
            let mut d: Vec<(Dyadic, u32)> = Vec::new();
            for &v in t {
                match d.last_mut() {
                    Some((last, m)) if *last == v => *m += 1,
                    _ => d.push((v, 1)),
                }
            }
            d
        };
        LocalMesh { lines: [distinct(&self.knots[0]), distinct(&self.knots[1])] }
    }

    /// `true` iff every meshline fully traversing the open support is one of
    /// the knot lines with the same multiplicity, and every knot line exists in
    /// the mesh with at least the knot multiplicity.
    pub fn has_minimal_support(&self, mesh: &LRMesh) -> bool {
        self.first_violation(mesh).is_none() && self.knots_on_mesh(mesh)
    }

    /// Lowest interior meshline coordinate whose mesh multiplicity exceeds the
    /// knot multiplicity, x axis first. The result is `(axis, value)`.
    pub fn first_violation(&self, mesh: &LRMesh) -> Option<(usize, Dyadic)> {
        let s = self.support();
        for axis in 0..2 {
            // lines splitting axis `axis` have constant coordinate on that axis
            let dir = if axis == 0 { Direction::Vertical } else { Direction::Horizontal };
            let other = 1 - axis;
            let (lo, hi) = (s.lo(axis), s.hi(axis));
            for (v, _) in mesh.fixeds_in(dir, lo..=hi) {
                if v == lo || v == hi {
                    continue;
                }
                let m = mesh.covering_multiplicity(dir, v, s.lo(other), s.hi(other));
                if m > self.knot_multiplicity(axis, v) {
                    return Some((axis, v));
                }
            }
        }
        None
    }

    /// Every knot line of the local mesh is covered by mesh lines of at least
    /// its multiplicity across the support.
    pub fn knots_on_mesh(&self, mesh: &LRMesh) -> bool {
        let s = self.support();
        let lm = self.local_mesh();
        (0..2).all(|axis| {
            let dir = if axis == 0 { Direction::Vertical } else { Direction::Horizontal };
            let other = 1 - axis;
            lm.lines[axis].iter().all(|&(v, m)| mesh.covering_multiplicity(dir, v, s.lo(other), s.hi(other)) >= m)
        })
    }

    /// Boehm knot insertion of `value` into the knot vector of `axis`:
    /// `B = a_low * B_low + a_high * B_high`. The children carry the parent
    /// weight multiplied by their coefficient.
    pub fn knot_insert(&self, axis: usize, value: Dyadic) -> Result<(LRBSpline, LRBSpline, f64, f64)> {
        let t = &self.knots[axis];
        let n = t.len();
        let p = n - 2;
        if !(t[0] < value && value < t[n - 1]) {
            return Err(Error::KnotOutsideSupport(value));
        }
        if self.knot_multiplicity(axis, value) as usize > p {
            return Err(Error::MultiplicityOverflow(value));
        }
        let pos = t.partition_point(|&k| k <= value);
        let mut tau = t.clone();
        tau.insert(pos, value);

        // coefficients with 1-based t_1..t_{p+2} mapped to t[0]..t[p+1]
        let a_low = if value >= t[p] { 1.0 } else { ratio(value - t[0], t[p] - t[0]) };
        let a_high = if value <= t[1] { 1.0 } else { ratio(t[p + 1] - value, t[p + 1] - t[1]) };

        let mut low = self.clone();
        low.knots[axis] = tau[..n].to_vec();
        low.weight = self.weight * a_low;
        let mut high = self.clone();
        high.knots[axis] = tau[1..].to_vec();
        high.weight = self.weight * a_high;
        Ok((low, high, a_low, a_high))
    }

    /// Value of the (unweighted) B-spline on half-open knot spans.
    pub fn evaluate(&self, p: [f64; 2]) -> f64 {
        self.evaluate_closed(p, [false, false])
    }

    /// As [`LRBSpline::evaluate`], closing the last knot span on each axis where
    /// the last knot equals the domain's upper end.
    pub fn evaluate_on(&self, domain: &Domain, p: [f64; 2]) -> f64 {
        let close = [self.knots[0].last() == Some(&domain.hi), self.knots[1].last() == Some(&domain.hi)];
        self.evaluate_closed(p, close)
    }

    fn evaluate_closed(&self, p: [f64; 2], close: [bool; 2]) -> f64 {
        let tx: Vec<f64> = self.knots[0].iter().map(|k| k.to_f64()).collect();
        let bx = basis(&tx, p[0], close[0]);
        if bx == 0.0 {
            return 0.0;
        }
        let ty: Vec<f64> = self.knots[1].iter().map(|k| k.to_f64()).collect();
        bx * basis(&ty, p[1], close[1])
    }
}

impl fmt::Debug for LRBSpline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[x: ")?;
        write_knots(f, &self.knots[0])?;
        write!(f, ", y: ")?;
        write_knots(f, &self.knots[1])?;
        write!(f, ", w: {}]", self.weight)
    }
}

fn write_knots(f: &mut fmt::Formatter<'_>, t: &[Dyadic]) -> fmt::Result {
    for (i, k) in t.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{k}")?;
    }
    Ok(())
}

fn ratio(num: Dyadic, den: Dyadic) -> f64 {
    num.to_f64() / den.to_f64()
}

/// The tensor mesh spanned by a B-spline's knot lines, with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMesh {
    /// Distinct knot values per axis with their repeat counts.
    pub lines: [Vec<(Dyadic, u32)>; 2],
}

impl LocalMesh {
    /// Cells of positive area, in lexicographic lower-left order.
    pub fn cells(&self) -> Vec<MeshBox> {
        let mut out = Vec::new();
        for wx in self.lines[0].windows(2) {
            for wy in self.lines[1].windows(2) {
                out.push(MeshBox::new(wx[0].0, wx[1].0, wy[0].0, wy[1].0));
            }
        }
        out.sort();
        out
    }
}

/// Univariate B-spline of degree `t.len() - 2` by the Cox–de Boor recursion.
pub fn basis(t: &[f64], x: f64, close_right: bool) -> f64 {
    let n = t.len() - 1;
    let last = t[n];
    if x < t[0] || x > last || (x == last && !close_right) {
        return 0.0;
    }
    let mut n0 = vec![0.0f64; n];
    if x == last {
        // the last non-degenerate span takes the right endpoint
        if let Some(j) = (0..n).rev().find(|&j| t[j] < t[j + 1]) {
            n0[j] = 1.0;
        }
    } else {
        for j in 0..n {
            if t[j] <= x && x < t[j + 1] {
                n0[j] = 1.0;
            }
        }
    }
    for k in 1..n {
        for j in 0..n - k {
            let mut v = 0.0;
            let d1 = t[j + k] - t[j];
            if d1 > 0.0 {
                v += (x - t[j]) / d1 * n0[j];
            }
            let d2 = t[j + k + 1] - t[j + 1];
            if d2 > 0.0 {
                v += (t[j + k + 1] - x) / d2 * n0[j + 1];
            }
            n0[j] = v;
        }
    }
    n0[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn ks(v: &[i64]) -> Vec<Dyadic> {
        v.iter().map(|&i| Dyadic::from_int(i)).collect()
    }

    /// Independent oracle: the B-spline as a divided difference of truncated
    /// powers is awkward with repeated knots, so compare against the explicit
    /// piecewise quadratic of the uniform case instead.
    fn uniform_quadratic(x: f64) -> f64 {
        match x {
            x if (0.0..1.0).contains(&x) => x * x / 2.0,
            x if (1.0..2.0).contains(&x) => (-2.0 * x * x + 6.0 * x - 3.0) / 2.0,
            x if (2.0..3.0).contains(&x) => (3.0 - x) * (3.0 - x) / 2.0,
            _ => 0.0,
        }
    }

    #[test]
    fn uniform_quadratic_matches_closed_form() {
        let t = [0.0, 1.0, 2.0, 3.0];
        for i in 0..=300 {
            let x = -0.5 + i as f64 * 0.0125;
            assert!((basis(&t, x, false) - uniform_quadratic(x)).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn peak_value() {
        let b = LRBSpline::new(ks(&[0, 1, 2, 3]), ks(&[0, 1, 2, 3]), 1.0).unwrap();
        assert!((b.evaluate([1.5, 1.5]) - 9.0 / 16.0).abs() < 1e-15);
        assert_eq!(b.evaluate([4.0, 1.0]), 0.0);
        assert_eq!(b.evaluate([0.0, 1.5]), 0.0);
        assert_eq!(b.evaluate([3.0, 1.5]), 0.0);
    }

    #[test]
    fn right_end_closed_on_domain_boundary() {
        let b = LRBSpline::new(ks(&[0, 1, 1, 1]), ks(&[0, 0, 0, 1]), 1.0).unwrap();
        let dom = Domain::new(Dyadic::ZERO, Dyadic::ONE).unwrap();
        assert_eq!(b.evaluate([1.0, 0.0]), 0.0);
        assert!((b.evaluate_on(&dom, [1.0, 0.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn knot_insert_coefficients() {
        let b = LRBSpline::new(ks(&[0, 1, 2, 3]), ks(&[0, 1, 2, 3]), 1.0).unwrap();
        let (lo, hi, a, c) = b.knot_insert(0, d("1.5")).unwrap();
        assert_eq!((a, c), (0.75, 0.75));
        assert_eq!(lo.knots[0], vec![d("0"), d("1"), d("1.5"), d("2")]);
        assert_eq!(hi.knots[0], vec![d("1"), d("1.5"), d("2"), d("3")]);

        let b = LRBSpline::new(ks(&[0, 0, 0, 1]), ks(&[0, 1, 2, 3]), 1.0).unwrap();
        let (_, _, a, c) = b.knot_insert(0, d("0.5")).unwrap();
        assert_eq!((a, c), (1.0, 0.5));
    }

    #[test]
    fn knot_insert_errors() {
        let b = LRBSpline::new(ks(&[0, 1, 1, 3]), ks(&[0, 1, 2, 3]), 1.0).unwrap();
        assert!(matches!(b.knot_insert(0, d("3")), Err(Error::KnotOutsideSupport(_))));
        let (lo, hi, _, _) = b.knot_insert(0, d("1")).unwrap();
        assert_eq!(lo.knots[0], ks(&[0, 1, 1, 1]));
        assert_eq!(hi.knots[0], ks(&[1, 1, 1, 3]));
    }

    #[test]
    fn local_mesh_collapses_repeated_knots() {
        let b = LRBSpline::new(ks(&[0, 1, 1, 2]), ks(&[0, 0, 0, 1]), 1.0).unwrap();
        let cells = b.local_mesh().cells();
        assert_eq!(cells.len(), 2);
        let b = LRBSpline::new(ks(&[0, 0, 0, 1]), ks(&[0, 0, 0, 1]), 1.0).unwrap();
        assert_eq!(b.local_mesh().cells(), vec![MeshBox::new(d("0"), d("1"), d("0"), d("1"))]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(LRBSpline::new(ks(&[1, 0, 2]), ks(&[0, 1, 2]), 1.0).is_err());
        assert!(LRBSpline::new(ks(&[1, 1, 1]), ks(&[0, 1, 2]), 1.0).is_err());
        assert!(LRBSpline::new(ks(&[0, 1, 2]), ks(&[0, 1, 2]), 0.0).is_err());
    }

    #[test]
    fn degree_zero_insertion() {
        let b = LRBSpline::new(ks(&[0, 2]), ks(&[0, 2]), 1.0).unwrap();
        let (lo, hi, a, c) = b.knot_insert(1, Dyadic::ONE).unwrap();
        assert_eq!((a, c), (1.0, 1.0));
        assert_eq!(lo.knots[1], ks(&[0, 1]));
        assert_eq!(hi.knots[1], ks(&[1, 2]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn knot_vector() -> impl Strategy<Value = Vec<Dyadic>> {
            (1usize..4).prop_flat_map(|p| {
                prop::collection::vec(0i128..9, p + 2).prop_filter_map("degenerate", |mut v| {
                    v.sort();
                    let p = v.len() - 2;
                    let max_rep = v.windows(p + 2).any(|w| w[0] == w[p + 1]);
                    (!max_rep && v[0] < v[v.len() - 1]).then(|| v.into_iter().map(|i| Dyadic::new(i, 1)).collect())
                })
            })
        }

        proptest! {
            #[test]
            fn insertion_identity(t in knot_vector(), at in 1i128..32) {
                let b = LRBSpline::new(t.clone(), t, 1.0).unwrap();
                let v = Dyadic::new(at, 3);
                if let Ok((lo, hi, a, c)) = b.knot_insert(0, v) {
                    prop_assert!(a > 0.0 && a <= 1.0 && c > 0.0 && c <= 1.0);
                    for i in 0..=80 {
                        let x = i as f64 * 0.06;
                        let p = [x, 1.0];
                        let lhs = b.evaluate(p);
                        let rhs = a * lo.evaluate(p) + c * hi.evaluate(p);
                        prop_assert!((lhs - rhs).abs() <= 1e-12, "x={} {} {}", x, lhs, rhs);
                    }
                }
            }

            #[test]
            fn nonnegative_and_confined(t in knot_vector(), x in -1.0f64..6.0) {
                let tf: Vec<f64> = t.iter().map(|k| k.to_f64()).collect();
                let v = basis(&tf, x, false);
                prop_assert!(v >= 0.0);
                if x < tf[0] || x >= tf[tf.len() - 1] {
                    prop_assert_eq!(v, 0.0);
                }
            }
        }
    }
}
