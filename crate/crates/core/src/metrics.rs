//! Reference-based quality metrics and their JSON/CSV report formats.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::raster::{check_same, Image, Mask, CHANNELS};
use crate::rng::Rng;
use crate::tonemap::{project_disc_space, AmplifyParams};

pub const REPORT_SCHEMA: u32 = 1;

/// Mean absolute difference over the region support (all pixels when `None`),
/// averaged over channels.
pub fn l1(a: &Image, b: &Image, region: Option<&Mask>) -> Result<f64> {
    check_same(a.dims(), b.dims(), "l1 images")?;
    match region {
        None => Ok(a
            .data()
            .iter()
            .zip(b.data())
            .map(|(x, y)| (x - y).abs())
            .sum::<f64>()
            / a.data().len() as f64),
        Some(m) => {
            check_same(a.dims(), m.dims(), "l1 region")?;
            let mut sum = 0.0;
            let mut count = 0usize;
            for ((pa, pb), &w) in a.pixels().zip(b.pixels()).zip(m.data()) {
                if w > 0.0 {
                    sum += pa.iter().zip(pb).map(|(x, y)| (x - y).abs()).sum::<f64>();
                    count += 1;
                }
            }
            if count == 0 {
                return Err(Error::Precondition("l1 region is empty".into()));
            }
            Ok(sum / (count * CHANNELS) as f64)
        }
    }
}

pub fn mse(a: &Image, b: &Image) -> Result<f64> {
    check_same(a.dims(), b.dims(), "mse")?;
    Ok(a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        / a.data().len() as f64)
}

/// PSNR with unit peak; `f64::INFINITY` for identical images.
pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    let e = mse(a, b)?;
    if e == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-10.0 * e.log10())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ReportMetadata {
    pub pred: Option<String>,
    pub gt: Option<String>,
    pub mask: Option<String>,
    pub seed: u64,
    pub stream: u64,
    /// Short SHA-256 digest of the tone-map fitting configuration.
    pub config_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub schema: u32,
    pub l1_full: f64,
    pub l1_masked: f64,
    /// Serialized as `null` when infinite; see `identical`.
    #[serde(serialize_with = "ser_psnr", deserialize_with = "de_psnr")]
    pub psnr: f64,
    pub identical: bool,
    pub disc_l1: f64,
    pub disc_l1_masked: f64,
    pub metadata: ReportMetadata,
}

fn ser_psnr<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_some(v)
    } else {
        s.serialize_none()
    }
}

fn de_psnr<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

pub fn config_digest(params: &AmplifyParams) -> String {
    let json = serde_json::to_string(params).expect("params serialize");
    let digest = Sha256::digest(json.as_bytes());
    hex::encode(&digest[..8])
}

/// Full-image and masked L1, PSNR and discriminative-space L1.
///
/// Deterministic given the rng's `(seed, stream)`.
pub fn evaluate(
    pred: &Image,
    gt: &Image,
    mask: &Mask,
    amplify: &AmplifyParams,
    rng: &mut Rng,
) -> Result<MetricsReport> {
    check_same(pred.dims(), gt.dims(), "evaluate images")?;
    check_same(pred.dims(), mask.dims(), "evaluate mask")?;
    let (seed, stream) = (rng.seed(), rng.stream());
    let l1_full = l1(pred, gt, None)?;
    let l1_masked = l1(pred, gt, Some(mask))?;
    let p = psnr(pred, gt)?;
    let proj = project_disc_space(pred, gt, mask, amplify, rng)?;
    Ok(MetricsReport {
        schema: REPORT_SCHEMA,
        l1_full,
        l1_masked,
        psnr: p,
        identical: p.is_infinite(),
        disc_l1: l1(&proj.y_pred, &proj.y_gt, None)?,
        disc_l1_masked: l1(&proj.y_pred, &proj.y_gt, Some(mask))?,
        metadata: ReportMetadata {
            seed,
            stream,
            config_digest: config_digest(amplify),
            ..Default::default()
        },
    })
}

/// Per-metric means over a corpus of reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub count: usize,
    pub l1_full: f64,
    pub l1_masked: f64,
    /// Mean over finite values only; `identical_count` reports the rest.
    pub psnr: Option<f64>,
    pub identical_count: usize,
    pub disc_l1: f64,
    pub disc_l1_masked: f64,
}

impl CorpusSummary {
    pub fn from_reports(reports: &[MetricsReport]) -> Self {
        let n = reports.len().max(1) as f64;
        let mean = |f: fn(&MetricsReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
        let finite: Vec<f64> = reports.iter().map(|r| r.psnr).filter(|p| p.is_finite()).collect();
        Self {
            count: reports.len(),
            l1_full: mean(|r| r.l1_full),
            l1_masked: mean(|r| r.l1_masked),
            psnr: (!finite.is_empty()).then(|| finite.iter().sum::<f64>() / finite.len() as f64),
            identical_count: reports.len() - finite.len(),
            disc_l1: mean(|r| r.disc_l1),
            disc_l1_masked: mean(|r| r.disc_l1_masked),
        }
    }

    pub fn to_csv(&self) -> String {
        let psnr = self.psnr.map(|p| format!("{p}")).unwrap_or_else(|| "inf".into());
        format!(
            "metric,mean,count\nl1_full,{},{n}\nl1_masked,{},{n}\npsnr,{psnr},{}\ndisc_l1,{},{n}\ndisc_l1_masked,{},{n}\n",
            self.l1_full,
            self.l1_masked,
            self.count - self.identical_count,
            self.disc_l1,
            self.disc_l1_masked,
            n = self.count
        )
    }
}
