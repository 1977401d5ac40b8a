#![allow(dead_code)]

use lr_grade::eg::testing::{eg_grader_with, eg_iterate_with, GraderOptions};
use lr_grade::eg::{Refiner, Variant};
use lr_grade::lrset::LRSet;
use lr_grade::{Direction, Domain, Dyadic, LRMesh, MeshBox};

pub fn q(n: i128, e: u32) -> Dyadic {
    Dyadic::new(n, e)
}

pub fn point_box(x: Dyadic, y: Dyadic) -> MeshBox {
    MeshBox::new(x, x, y, y)
}

/// Degree (1,1), V-major marks for which the shadow cast along the long
/// edges leaves a nested pair.
pub const LONG_EDGE_MARKS: [(i128, i128); 5] = [(50, 7), (20, 4), (44, 4), (58, 32), (53, 9)];

/// Replays point marks (numerators over 64) with the given grader options.
pub fn replay_marks(degree: [usize; 2], variant: Variant, marks: &[(i128, i128)], opts: GraderOptions) -> LRSet {
    let mut set = Refiner::new(Domain::unit(), degree, variant).unwrap().set().clone();
    for &(x, y) in marks {
        let r = Refiner::from_set(set.clone(), variant);
        let om = r.boxes_meeting(&point_box(q(x, 6), q(y, 6)));
        set = eg_iterate_with(&set, &om, variant, opts).unwrap();
    }
    set
}

/// Grader input where two oversized boxes sit in one shadow: a graded mesh of
/// degree (2,1) plus one refining segment in the column next to a coarse one.
pub struct TwoOversized {
    pub base: LRMesh,
    pub graded_in: LRMesh,
    pub refined: LRMesh,
}

pub fn two_oversized() -> TwoOversized {
    let (h, v) = (Direction::Horizontal, Direction::Vertical);
    let xs: Vec<Dyadic> = (1..4).map(|i| q(i, 2)).collect();
    let ys: Vec<Dyadic> = (1..8).map(|i| q(i, 3)).collect();
    let base = LRMesh::open_tensor(Domain::unit(), [2, 1], &xs, &ys).unwrap();
    let mut m = base.clone();
    for x in [5, 7] {
        m.insert_segment_in_place(v, q(x, 3), q(0, 0), q(1, 0)).unwrap();
    }
    for y in (1..16).step_by(2) {
        m.insert_segment_in_place(h, q(y, 4), q(1, 1), q(1, 0)).unwrap();
    }
    m.insert_segment_in_place(v, q(3, 3), q(0, 0), q(1, 1)).unwrap();
    m.insert_segment_in_place(v, q(3, 3), q(5, 3), q(1, 0)).unwrap();
    let graded_in = m.clone();
    m.insert_segment_in_place(v, q(9, 4), q(1, 1), q(5, 3)).unwrap();
    TwoOversized { base, graded_in, refined: m }
}

impl TwoOversized {
    pub fn input_set(&self) -> LRSet {
        LRSet::initial(&self.base).unwrap().update(self.graded_in.clone()).unwrap()
    }

    pub fn graded(&self, batched: bool) -> LRSet {
        let opts = GraderOptions { batched, along_long_edges: false };
        let g = eg_grader_with(&self.refined, Variant::HorizontalMajor, opts).unwrap();
        self.input_set().update(g).unwrap()
    }
}
