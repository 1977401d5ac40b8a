//! Browser bindings: refine an LR mesh by clicking, inspect shadows, verify.

use wasm_bindgen::prelude::*;

use lr_grade::eg::{box_level_and_shape, shadow_direction, Refiner, Variant};
use lr_grade::render::{render_svg, RenderOptions};
use lr_grade::scenario::{rasterize, CurveSpec, RegionSpec};
use lr_grade::shadow::box_shadow;
use lr_grade::{verify, Domain, Dyadic, MeshBox, Region};

fn js(e: lr_grade::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Snaps a coordinate in `[0, 1]` to a dyadic with 16 fractional bits.
fn snap(v: f64) -> Dyadic {
    Dyadic::new((v.clamp(0.0, 1.0) * 65536.0).round() as i128, 16)
}

#[wasm_bindgen]
pub struct Demo {
    refiner: Refiner,
    size: u32,
    /// Box whose shadow is drawn, if any.
    focus: Option<MeshBox>,
}

#[wasm_bindgen]
impl Demo {
    /// `variant` is "H" or "V".
    #[wasm_bindgen(constructor)]
    pub fn new(p1: usize, p2: usize, variant: &str, size: u32) -> Result<Demo, JsError> {
        let variant: Variant = variant.parse().map_err(js)?;
        let refiner = Refiner::new(Domain::unit(), [p1, p2], variant).map_err(js)?;
        Ok(Demo { refiner, size, focus: None })
    }

    /// Runs one refinement on the boxes touching the point `(x, y)` of the unit square.
    pub fn refine_at(&mut self, x: f64, y: f64) -> Result<(), JsError> {
        let (x, y) = (snap(x), snap(y));
        let omega = self.refiner.boxes_meeting(&MeshBox::new(x, x, y, y));
        self.focus = None;
        self.refiner.refine(&omega).map_err(js)
    }

    /// Runs one refinement on the boxes met by a curve preset such as "bean".
    pub fn refine_curve(&mut self, preset: &str) -> Result<(), JsError> {
        let spec = RegionSpec::Curve(CurveSpec::Preset { preset: preset.to_string() });
        let omega = rasterize(self.refiner.mesh(), &spec).map_err(js)?;
        self.focus = None;
        self.refiner.refine(&omega).map_err(js)
    }

    /// Selects the box under the point; its grading shadow is drawn until the next refinement.
    pub fn inspect_at(&mut self, x: f64, y: f64) -> String {
        let mesh = self.refiner.mesh();
        // boxes are half-open, so the top and right edges belong to no box
        let inside = |v: f64| snap(v.min(1.0 - 1.0 / 65536.0));
        self.focus = mesh.box_at([inside(x), inside(y)]).copied();
        let Some(b) = self.focus else { return String::new() };
        match box_level_and_shape(&mesh.domain(), &b) {
            Ok(s) => format!(
                "box [{}, {}] x [{}, {}], level {}, {:?}, shadow {}",
                b.x0,
                b.x1,
                b.y0,
                b.y1,
                s.level,
                s.kind,
                shadow_direction(&s, self.refiner.variant()).letter()
            ),
            Err(e) => e.to_string(),
        }
    }

    pub fn svg(&self) -> String {
        let mesh = self.refiner.mesh();
        let mut opts = RenderOptions { size: self.size, ..Default::default() };
        if let Some(b) = self.focus {
            if let Ok(s) = box_level_and_shape(&mesh.domain(), &b) {
                let dir = shadow_direction(&s, self.refiner.variant());
                opts.shadow = Some(box_shadow(mesh, &b, dir, mesh.degree_along(dir)));
                opts.region = Some(Region::from_iter([b]));
            }
        }
        render_svg(mesh, &opts)
    }

    /// Full verification report as JSON.
    pub fn verify(&self, points: usize, seed: u32) -> String {
        let report = verify::verify(self.refiner.set(), points, u64::from(seed));
        serde_json::to_string_pretty(&report).unwrap_or_default()
    }

    pub fn boxes(&self) -> usize {
        self.refiner.mesh().num_boxes()
    }

    pub fn bsplines(&self) -> usize {
        self.refiner.set().len()
    }
}
