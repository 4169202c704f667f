//! The full simulator: six artifact families applied in a fixed order.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ops::{gaussian_blur, gaussian_noise, paste_back};
use crate::pblend::SolverParams;
use crate::raster::{check_same, Image, Mask, CHANNELS};
use crate::rng::Rng;
use crate::sim::boundary::BoundaryMix;
use crate::sim::codec::{codec_from_reconstruction, codec_stand_in};
use crate::sim::color_shift::{ColorShift, ShiftKind};
use crate::sim::config::{FamilyProbabilities, SimConfig};
use crate::sim::discontinuity::content_discontinuity;
use crate::sim::jpeg::jpeg_simulate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BackgroundColorAug,
    ForegroundColorAug,
    NoiseJpegBlur,
    CodecArtifacts,
    ContentDiscontinuity,
    BoundaryMixing,
}

impl Family {
    /// Application order.
    pub const ALL: [Family; 6] = [
        Family::BackgroundColorAug,
        Family::ForegroundColorAug,
        Family::NoiseJpegBlur,
        Family::CodecArtifacts,
        Family::ContentDiscontinuity,
        Family::BoundaryMixing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BackgroundColorAug => "background_color_aug",
            Family::ForegroundColorAug => "foreground_color_aug",
            Family::NoiseJpegBlur => "noise_jpeg_blur",
            Family::CodecArtifacts => "codec_artifacts",
            Family::ContentDiscontinuity => "content_discontinuity",
            Family::BoundaryMixing => "boundary_mixing",
        }
    }

    pub fn probability(self, p: &FamilyProbabilities) -> f64 {
        match self {
            Family::BackgroundColorAug => p.background_color_aug,
            Family::ForegroundColorAug => p.foreground_color_aug,
            Family::NoiseJpegBlur => p.noise_jpeg_blur,
            Family::CodecArtifacts => p.codec_artifacts,
            Family::ContentDiscontinuity => p.content_discontinuity,
            Family::BoundaryMixing => p.boundary_mixing,
        }
    }
}

/// Sub-operations drawn for the noise/JPEG/blur family.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseJpegBlur {
    pub jpeg_quality: Option<u8>,
    pub blur_sigma: Option<f64>,
    pub noise_sigma: Option<f64>,
}

/// Everything sampled for one pair; written as the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SimRecord {
    pub seed: u64,
    pub stream: u64,
    pub applied: Vec<Family>,
    pub background_shift: Option<ColorShift>,
    pub foreground_shift: Option<ColorShift>,
    pub noise_jpeg_blur: Option<NoiseJpegBlur>,
    pub codec_strength: Option<f64>,
    pub codec_external: bool,
    pub band_width: Option<u32>,
    pub boundary: Option<BoundaryMix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimPair {
    pub degraded: Image,
    pub target: Image,
    /// The mask after boundary mixing; soft when the boundary was blurred.
    pub mask: Mask,
    pub applied: Vec<Family>,
    pub record: SimRecord,
}

fn pick_kind(rng: &mut Rng) -> ShiftKind {
    ShiftKind::ALL[rng.index(ShiftKind::ALL.len())]
}

/// `target + w * (degraded - target)`, copying exactly where `w` is 0 or 1 or
/// the two images already agree.
fn composite(degraded: &Image, target: &Image, mixed: &Mask) -> Image {
    let mut out = target.clone();
    for ((o, d), &w) in out.pixels_mut().zip(degraded.pixels()).zip(mixed.data()) {
        if w == 0.0 {
            continue;
        }
        if w == 1.0 {
            o.copy_from_slice(d);
            continue;
        }
        for c in 0..CHANNELS {
            if d[c] != o[c] {
                o[c] += w * (d[c] - o[c]);
            }
        }
    }
    out
}

pub fn simulate(clean: &Image, mask: &Mask, cfg: &SimConfig, rng: &mut Rng) -> Result<SimPair> {
    simulate_with_reconstruction(clean, mask, cfg, None, rng)
}

/// [`simulate`], optionally replacing the codec stand-in with an externally
/// computed reconstruction (pasted inside the edit region).
pub fn simulate_with_reconstruction(
    clean: &Image,
    mask: &Mask,
    cfg: &SimConfig,
    reconstruction: Option<&Image>,
    rng: &mut Rng,
) -> Result<SimPair> {
    cfg.validate()?;
    check_same(clean.dims(), mask.dims(), "simulate mask")?;
    mask.ensure_binary("simulate mask")?;
    if let Some(r) = reconstruction {
        check_same(clean.dims(), r.dims(), "codec reconstruction")?;
    }
    let (h, w) = clean.dims();
    let mut record = SimRecord {
        seed: rng.seed(),
        stream: rng.stream(),
        ..Default::default()
    };

    // One generator and one gate per family, so a family's draws never depend
    // on what the others sampled.
    let mut forks: Vec<(Family, Rng, bool)> = Family::ALL
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let mut r = rng.fork(i as u64 + 1);
            let on = r.bernoulli(f.probability(&cfg.probabilities));
            (f, r, on)
        })
        .collect();
    let mut take = |f: Family| -> Option<Rng> {
        let slot = forks.iter_mut().find(|(g, _, _)| *g == f).expect("every family forked");
        slot.2.then(|| slot.1.clone())
    };

    // The mixed mask decides the edit region up front, so the soft seam
    // straddles degraded content on both sides of the boundary.
    let boundary_rng = take(Family::BoundaryMixing);
    let mixed = match boundary_rng {
        Some(mut r) => {
            let mix = BoundaryMix::sample(cfg, &mut r);
            record.boundary = Some(mix);
            mix.apply(mask)?
        }
        None => mask.clone(),
    };
    let region = Mask::from_bools(h, w, &mixed.support())?;

    let mut target = clean.clone();
    if let Some(mut r) = take(Family::BackgroundColorAug) {
        let kind = pick_kind(&mut r);
        let shift = ColorShift::sample(kind, h, w, &cfg.background_shift, &mut r)?;
        target = shift.apply(&target, &Mask::ones(h, w)?)?;
        record.background_shift = Some(shift);
        record.applied.push(Family::BackgroundColorAug);
    }
    let mut degraded = target.clone();

    if let Some(mut r) = take(Family::ForegroundColorAug) {
        let kind = pick_kind(&mut r);
        let shift = ColorShift::sample(kind, h, w, &cfg.foreground_shift, &mut r)?;
        degraded = shift.apply(&degraded, &region)?;
        record.foreground_shift = Some(shift);
        record.applied.push(Family::ForegroundColorAug);
    }

    if let Some(mut r) = take(Family::NoiseJpegBlur) {
        let p = cfg.noise_jpeg_blur_sub_probability;
        let mut fire = [r.bernoulli(p), r.bernoulli(p), r.bernoulli(p)];
        if !fire.iter().any(|&f| f) {
            fire[r.index(3)] = true;
        }
        let quality = cfg.jpeg_quality.sample(&mut r) as u8;
        let blur = cfg.blur_sigma.sample(&mut r);
        let noise = cfg.noise_sigma.sample(&mut r);
        let mut sub = NoiseJpegBlur::default();
        if fire[0] {
            // Background compression hits the target too, keeping it self-consistent.
            let compressed = jpeg_simulate(&target, quality)?;
            degraded = paste_back(&degraded, &compressed, &region)?;
            target = compressed;
            sub.jpeg_quality = Some(quality);
        }
        if fire[1] {
            degraded = paste_back(&gaussian_blur(&degraded, blur)?, &degraded, &region)?;
            sub.blur_sigma = Some(blur);
        }
        if fire[2] {
            degraded = gaussian_noise(&degraded, noise, &region, &mut r)?;
            sub.noise_sigma = Some(noise);
        }
        record.noise_jpeg_blur = Some(sub);
        record.applied.push(Family::NoiseJpegBlur);
    }

    if let Some(mut r) = take(Family::CodecArtifacts) {
        let recon = match reconstruction {
            Some(ext) => {
                record.codec_external = true;
                codec_from_reconstruction(&degraded, ext)?
            }
            None => {
                let s = cfg.codec_strength.sample(&mut r);
                record.codec_strength = Some(s);
                codec_stand_in(&degraded, s)?
            }
        };
        degraded = paste_back(&recon, &degraded, &region)?;
        record.applied.push(Family::CodecArtifacts);
    }

    if let Some(mut r) = take(Family::ContentDiscontinuity) {
        let width = cfg.band_width.sample(&mut r);
        degraded = content_discontinuity(&degraded, &region, width as usize, &SolverParams::default())?;
        record.band_width = Some(width);
        record.applied.push(Family::ContentDiscontinuity);
    }

    if record.boundary.is_some() {
        record.applied.push(Family::BoundaryMixing);
    }
    let degraded = composite(&degraded, &target, &mixed);
    Ok(SimPair {
        degraded,
        target,
        mask: mixed,
        applied: record.applied.clone(),
        record,
    })
}
