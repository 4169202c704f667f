//! Free-form random masks: random-walk brush strokes plus rectangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::jitter::Range;
use crate::raster::Mask;
use crate::rng::Rng;

/// Shape and coverage controls for [`generate_mask`].
///
/// Lengths are fractions of the image size so the same parameters work
/// across resolutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskGenParams {
    /// Inclusive stroke count range.
    pub strokes: (u32, u32),
    /// Vertices per stroke polyline.
    pub vertices: (u32, u32),
    /// Brush width as a fraction of `min(height, width)`.
    pub stroke_width: Range,
    /// Segment length as a fraction of `max(height, width)`.
    pub step_length: Range,
    /// Inclusive rectangle count range.
    pub rects: (u32, u32),
    /// Rectangle side as a fraction of the corresponding image side.
    pub rect_size: Range,
    /// Accepted fraction of masked pixels.
    pub coverage: Range,
    pub max_retries: u32,
}

impl Default for MaskGenParams {
    fn default() -> Self {
        Self {
            strokes: (1, 4),
            vertices: (4, 10),
            stroke_width: Range::new(0.04, 0.12),
            step_length: Range::new(0.05, 0.2),
            rects: (0, 2),
            rect_size: Range::new(0.1, 0.4),
            coverage: Range::new(0.1, 0.5),
            max_retries: 200,
        }
    }
}

impl MaskGenParams {
    /// Parameters that always produce an empty mask.
    pub fn empty() -> Self {
        Self {
            strokes: (0, 0),
            rects: (0, 0),
            coverage: Range::point(0.0),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [
            ("strokes", self.strokes),
            ("vertices", self.vertices),
            ("rects", self.rects),
        ] {
            if lo > hi {
                return Err(Error::Config(format!("{name}: empty range [{lo}, {hi}]")));
            }
        }
        self.stroke_width.validate("stroke_width")?;
        self.step_length.validate("step_length")?;
        self.rect_size.validate("rect_size")?;
        self.coverage.validate("coverage")?;
        if self.coverage.min < 0.0 || self.coverage.max > 1.0 {
            return Err(Error::Config("coverage must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Draws masks until one lands inside the configured coverage range.
pub fn generate_mask(height: usize, width: usize, params: &MaskGenParams, rng: &mut Rng) -> Result<Mask> {
    params.validate()?;
    let mut last = 0.0;
    for _ in 0..=params.max_retries {
        let bits = draw_once(height, width, params, rng);
        let mask = Mask::from_bools(height, width, &bits)?;
        last = mask.coverage();
        if params.coverage.contains(last) {
            return Ok(mask);
        }
    }
    Err(Error::Generation(format!(
        "coverage range [{}, {}] not reached after {} attempts (last {last:.3})",
        params.coverage.min,
        params.coverage.max,
        params.max_retries + 1
    )))
}

fn draw_once(height: usize, width: usize, p: &MaskGenParams, rng: &mut Rng) -> Vec<bool> {
    let mut canvas = Canvas {
        bits: vec![false; height * width],
        height,
        width,
    };
    let (h, w) = (height as f64, width as f64);
    let short = h.min(w);
    let long = h.max(w);

    let strokes = rng.int_inclusive(p.strokes.0 as i64, p.strokes.1 as i64);
    for _ in 0..strokes {
        let radius = (p.stroke_width.sample(rng) * short / 2.0).max(0.5);
        let vertices = rng.int_inclusive(p.vertices.0 as i64, p.vertices.1 as i64);
        let mut cur = (rng.uniform(0.0, h - 1.0), rng.uniform(0.0, w - 1.0));
        let mut heading = rng.uniform(0.0, std::f64::consts::TAU);
        canvas.stamp(cur, radius);
        for _ in 1..vertices.max(1) {
            heading += rng.uniform(-0.4, 0.4) * std::f64::consts::PI;
            let len = p.step_length.sample(rng) * long;
            let next = (
                (cur.0 + len * heading.sin()).clamp(0.0, h - 1.0),
                (cur.1 + len * heading.cos()).clamp(0.0, w - 1.0),
            );
            canvas.segment(cur, next, radius);
            cur = next;
        }
    }

    let rects = rng.int_inclusive(p.rects.0 as i64, p.rects.1 as i64);
    for _ in 0..rects {
        let rh = (p.rect_size.sample(rng) * h).round().max(1.0) as usize;
        let rw = (p.rect_size.sample(rng) * w).round().max(1.0) as usize;
        let y0 = rng.index(height.saturating_sub(rh) + 1);
        let x0 = rng.index(width.saturating_sub(rw) + 1);
        for y in y0..(y0 + rh).min(height) {
            for x in x0..(x0 + rw).min(width) {
                canvas.bits[y * width + x] = true;
            }
        }
    }
    canvas.bits
}

struct Canvas {
    bits: Vec<bool>,
    height: usize,
    width: usize,
}

impl Canvas {
    fn stamp(&mut self, (cy, cx): (f64, f64), radius: f64) {
        let r2 = radius * radius;
        let y0 = (cy - radius).floor().max(0.0) as usize;
        let y1 = ((cy + radius).ceil() as usize).min(self.height - 1);
        let x0 = (cx - radius).floor().max(0.0) as usize;
        let x1 = ((cx + radius).ceil() as usize).min(self.width - 1);
        for y in y0..=y1 {
            for x in x0..=x1 {
                let (dy, dx) = (y as f64 - cy, x as f64 - cx);
                if dy * dy + dx * dx <= r2 {
                    self.bits[y * self.width + x] = true;
                }
            }
        }
    }

    fn segment(&mut self, a: (f64, f64), b: (f64, f64), radius: f64) {
        let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        let steps = len.ceil().max(1.0) as usize;
        for i in 1..=steps {
            let t = i as f64 / steps as f64;
            self.stamp((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)), radius);
        }
    }
}
