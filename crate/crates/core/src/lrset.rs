//! LR B-spline sets kept in sync with their mesh by knot insertion.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bspline::{Knots, LRBSpline};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::mesh::{Direction, LRMesh, MeshBox};

/// The LR B-splines of one mesh snapshot, keyed by knot vectors.
#[derive(Clone, Debug)]
pub struct LRSet {
    mesh: Arc<LRMesh>,
    members: BTreeMap<Knots, f64>,
}

impl LRSet {
    /// All tensor B-splines on the global knot vectors of a tensor mesh, weight 1.
    pub fn initial(mesh: &LRMesh) -> Result<Self> {
        if !mesh.is_tensor() {
            return Err(Error::NotTensor);
        }
        let global = |dir: Direction| -> Vec<Dyadic> {
            let dom = mesh.domain();
            mesh.fixeds(dir)
                .flat_map(|v| {
                    let m = mesh.covering_multiplicity(dir, v, dom.lo, dom.hi);
                    std::iter::repeat_n(v, m as usize)
                })
                .collect()
        };
        let gx = global(Direction::Vertical);
        let gy = global(Direction::Horizontal);
        let [p1, p2] = mesh.degree();
        let mut members = BTreeMap::new();
        for wx in gx.windows(p1 + 2) {
            if wx[0] == wx[p1 + 1] {
                continue;
            }
            for wy in gy.windows(p2 + 2) {
                if wy[0] == wy[p2 + 1] {
                    continue;
                }
                members.insert([wx.to_vec(), wy.to_vec()], 1.0);
            }
        }
        Ok(LRSet { mesh: Arc::new(mesh.clone()), members })
    }

    /// Builds a set from explicit members, checking degrees and minimal support.
    pub fn from_members(mesh: LRMesh, members: impl IntoIterator<Item = LRBSpline>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let deg = mesh.degree();
        let dom = mesh.domain();
        for b in members {
            if b.degree() != deg {
                return Err(Error::Mismatch(format!("{b:?} has degree {:?}, mesh has {deg:?}", b.degree())));
            }
            if !dom.as_box().contains_box(&b.support()) {
                return Err(Error::Mismatch(format!("{b:?} leaves the domain")));
            }
            if !b.has_minimal_support(&mesh) {
                return Err(Error::Mismatch(format!("{b:?} does not have minimal support")));
            }
            if map.insert(b.knots.clone(), b.weight).is_some() {
                return Err(Error::Mismatch(format!("duplicate member {b:?}")));
            }
        }
        Ok(LRSet { mesh: Arc::new(mesh), members: map })
    }

    pub fn mesh(&self) -> &LRMesh {
        &self.mesh
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight(&self, knots: &Knots) -> Option<f64> {
        self.members.get(knots).copied()
    }

    /// Members in lexicographic knot order.
    pub fn members(&self) -> impl Iterator<Item = LRBSpline> + '_ {
        self.members.iter().map(|(k, &w)| LRBSpline { knots: k.clone(), weight: w })
    }

    /// Replaces members that lost minimal support on `new_mesh` by knot
    /// insertion until every member has minimal support again.
    pub fn update(&self, new_mesh: LRMesh) -> Result<LRSet> {
        if !new_mesh.refines(&self.mesh) {
            return Err(Error::NotARefinement);
        }
        let mut work = self.members.clone();
        let mut done: BTreeMap<Knots, f64> = BTreeMap::new();
        while let Some((knots, weight)) = work.pop_first() {
            let b = LRBSpline { knots, weight };
            match b.first_violation(&new_mesh) {
                None => *done.entry(b.knots).or_insert(0.0) += weight,
                Some((axis, v)) => {
                    let (lo, hi, _, _) = b.knot_insert(axis, v)?;
                    for c in [lo, hi] {
                        *work.entry(c.knots).or_insert(0.0) += c.weight;
                    }
                }
            }
        }
        Ok(LRSet { mesh: Arc::new(new_mesh), members: done })
    }

    /// `sum_B w_B B(p)`.
    pub fn evaluate(&self, p: [f64; 2]) -> f64 {
        let dom = self.mesh.domain();
        self.members().map(|b| b.weight * b.evaluate_on(&dom, p)).sum()
    }

    /// `sum_B B(p)` ignoring weights.
    pub fn evaluate_unweighted(&self, p: [f64; 2]) -> f64 {
        let dom = self.mesh.domain();
        self.members().map(|b| b.evaluate_on(&dom, p)).sum()
    }

    pub fn support_index(&self) -> SupportIndex {
        SupportIndex::new(self)
    }

    #[doc(hidden)]
    pub fn with_weight(&self, knots: &Knots, weight: f64) -> LRSet {
        let mut s = self.clone();
        if let Some(w) = s.members.get_mut(knots) {
            *w = weight;
        }
        s
    }
}

impl PartialEq for LRSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.mesh == *other.mesh
    }
}

/// Uniform bucket grid over the domain for point and box support queries.
pub struct SupportIndex {
    members: Vec<LRBSpline>,
    domain: crate::mesh::Domain,
    n: usize,
    buckets: Vec<Vec<u32>>,
}

impl SupportIndex {
    pub fn new(set: &LRSet) -> Self {
        let members: Vec<LRBSpline> = set.members().collect();
        let domain = set.mesh().domain();
        let n = ((members.len() as f64).sqrt().ceil() as usize).clamp(1, 256);
        let mut idx = SupportIndex { members, domain, n, buckets: vec![Vec::new(); n * n] };
        for (i, b) in idx.members.iter().enumerate() {
            let s = b.support();
            let (i0, i1) = (idx.bucket(s.x0.to_f64()), idx.bucket(s.x1.to_f64()));
            let (j0, j1) = (idx.bucket(s.y0.to_f64()), idx.bucket(s.y1.to_f64()));
            for j in j0..=j1 {
                for ii in i0..=i1 {
                    idx.buckets[j * n + ii].push(i as u32);
                }
            }
        }
        idx
    }

    fn bucket(&self, v: f64) -> usize {
        let (lo, hi) = (self.domain.lo.to_f64(), self.domain.hi.to_f64());
        (((v - lo) / (hi - lo) * self.n as f64).floor().max(0.0) as usize).min(self.n - 1)
    }

    pub fn members(&self) -> &[LRBSpline] {
        &self.members
    }

    /// Members whose closed support may contain the point.
    pub fn candidates(&self, p: [f64; 2]) -> impl Iterator<Item = &LRBSpline> + '_ {
        let b = &self.buckets[self.bucket(p[1]) * self.n + self.bucket(p[0])];
        b.iter().map(move |&i| &self.members[i as usize])
    }

    pub fn evaluate(&self, p: [f64; 2], weighted: bool) -> f64 {
        self.candidates(p).map(|b| if weighted { b.weight } else { 1.0 } * b.evaluate_on(&self.domain, p)).sum()
    }

    /// Members whose support contains the box.
    pub fn covering(&self, bx: &MeshBox) -> Vec<&LRBSpline> {
        let c = bx.center_f64();
        self.candidates(c).filter(|b| b.support().contains_box(bx)).collect()
    }
}
