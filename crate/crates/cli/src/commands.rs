//! One function per subcommand.

use std::path::{Path, PathBuf};

use seamkit_core::io::{load_image, load_mask, save_image, save_mask};
use seamkit_core::metrics::{evaluate, CorpusSummary, MetricsReport};
use seamkit_core::ops::{generate_mask, JitterParams, MaskGenParams, Range};
use seamkit_core::pblend::{poisson_blend, SolverMethod, SolverParams};
use seamkit_core::refine::{pool_refine, ClassicalRefiner, PoolParams, Refiner, SubprocessRefiner};
use seamkit_core::sim::{simulate_with_reconstruction, IntRange, SimConfig};
use seamkit_core::tonemap::{apply_tonemap, fit_tonemap, AmplifyParams, ToneMap};
use seamkit_core::{Image, Rng};

use crate::args::*;
use crate::batch::{self, Item};
use crate::failure::{Failure, Outcome};

fn write_text(path: &Path, text: &str) -> Outcome<()> {
    std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Outcome<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| Failure::usage(format!("{flag} is required")))
}

/// Whether `--in` names a batch directory.
fn is_batch(input: &Path) -> bool {
    input.is_dir()
}

pub fn mask_gen(a: &MaskGenArgs) -> Outcome<()> {
    let params = MaskGenParams {
        coverage: Range::new(a.coverage_min, a.coverage_max),
        ..Default::default()
    };
    match &a.input {
        Some(dir) if is_batch(dir) => {
            let items = batch::load_manifest(dir)?;
            batch::ensure_dir(&a.out)?;
            batch::run(&items, a.common.jobs, |item| {
                let (h, w) = load_image(&item.image)?.dims();
                let mask = generate_mask(h, w, &params, &mut Rng::new(a.common.seed, item.index as u64))?;
                Ok(save_mask(&mask, item.output(&a.out, ".png"))?)
            })?;
            Ok(())
        }
        input => {
            let (h, w) = match input {
                Some(path) => load_image(path)?.dims(),
                None => (a.height, a.width),
            };
            let mask = generate_mask(h, w, &params, &mut Rng::new(a.common.seed, 0))?;
            Ok(save_mask(&mask, &a.out)?)
        }
    }
}

fn sim_config(a: &SimulateArgs) -> Outcome<SimConfig> {
    let mut cfg = match &a.config {
        Some(path) => SimConfig::from_json(&read_text(path)?).map_err(|e| Failure::from(e).within(path.display()))?,
        None => SimConfig::default(),
    };
    if let Some(q) = a.quality {
        cfg.jpeg_quality = IntRange::new(q, q);
    }
    cfg.validate()?;
    Ok(cfg)
}

struct SimOutputs<'a> {
    degraded: &'a Path,
    target: &'a Path,
    mask: &'a Path,
    sidecar: &'a Path,
}

fn simulate_one(
    image: &Path,
    mask: &Path,
    reconstruction: Option<&Path>,
    cfg: &SimConfig,
    rng: &mut Rng,
    out: SimOutputs,
) -> Outcome<()> {
    let clean = load_image(image)?;
    let mask = load_mask(mask)?;
    let recon = reconstruction.map(load_image).transpose()?;
    let pair = simulate_with_reconstruction(&clean, &mask, cfg, recon.as_ref(), rng)?;
    save_image(&pair.degraded, out.degraded)?;
    save_image(&pair.target, out.target)?;
    save_mask(&pair.mask, out.mask)?;
    let json = serde_json::to_string_pretty(&pair.record).expect("record serializes");
    write_text(out.sidecar, &(json + "\n"))
}

pub fn simulate(a: &SimulateArgs) -> Outcome<()> {
    let cfg = sim_config(a)?;
    let seed = a.common.seed;
    if is_batch(&a.input) {
        if a.reconstruction.is_some() {
            return Err(Failure::usage("--reconstruction is not supported in batch mode"));
        }
        let items = batch::load_manifest(&a.input)?;
        batch::ensure_dir(&a.out)?;
        batch::run(&items, a.common.jobs, |item: &Item| {
            let paths = [
                item.output(&a.out, "_degraded.png"),
                item.output(&a.out, "_target.png"),
                item.output(&a.out, "_mask.png"),
                item.output(&a.out, "_sidecar.json"),
            ];
            simulate_one(
                &item.image,
                item.mask()?,
                None,
                &cfg,
                &mut Rng::new(seed, item.index as u64),
                SimOutputs {
                    degraded: &paths[0],
                    target: &paths[1],
                    mask: &paths[2],
                    sidecar: &paths[3],
                },
            )
        })?;
        return Ok(());
    }
    simulate_one(
        &a.input,
        required(&a.mask, "--mask")?,
        a.reconstruction.as_deref(),
        &cfg,
        &mut Rng::new(seed, 0),
        SimOutputs {
            degraded: &a.out,
            target: required(&a.out_gt, "--out-gt")?,
            mask: required(&a.out_mask, "--out-mask")?,
            sidecar: required(&a.sidecar, "--sidecar")?,
        },
    )
}

fn build_refiner(a: &RefinerArgs) -> Outcome<Box<dyn Refiner>> {
    Ok(match &a.external {
        Some(program) => Box::new(SubprocessRefiner {
            program: program.clone(),
            args: a.external_args.clone(),
        }),
        None => {
            let r = ClassicalRefiner {
                degree: a.degree,
                ring_width: a.ring_width,
                feather_sigma: a.feather_sigma,
                quantiles: a.quantiles,
            };
            r.validate()?;
            Box::new(r)
        }
    })
}

pub fn refine(a: &RefineArgs) -> Outcome<()> {
    let refiner = build_refiner(&a.refiner)?;
    let one = |image: &Path, mask: &Path, out: &Path| -> Outcome<()> {
        let img = load_image(image)?;
        let mask = load_mask(mask)?;
        Ok(save_image(&refiner.refine(&img, &mask)?, out)?)
    };
    if is_batch(&a.input) {
        let items = batch::load_manifest(&a.input)?;
        batch::ensure_dir(&a.out)?;
        batch::run(&items, a.common.jobs, |item| one(&item.image, item.mask()?, &item.output(&a.out, ".png")))?;
        return Ok(());
    }
    one(&a.input, required(&a.mask, "--mask")?, &a.out)
}

pub fn pool(a: &PoolArgs) -> Outcome<()> {
    let refiner = build_refiner(&a.refiner)?;
    let factor = Range::new(a.jitter_min, a.jitter_max);
    let params = PoolParams {
        n: a.n,
        jitter: JitterParams {
            brightness: factor,
            contrast: factor,
            saturation: factor,
            hue_degrees: Range::new(-a.jitter_hue, a.jitter_hue),
        },
        include_original: !a.no_original,
    };
    params.validate()?;
    let seed = a.common.seed;
    let one = |image: &Path, mask: &Path, out: &Path, stream: u64| -> Outcome<()> {
        let img = load_image(image)?;
        let mask = load_mask(mask)?;
        let outcome = pool_refine(refiner.as_ref(), &img, &mask, &params, &mut Rng::new(seed, stream))?;
        Ok(save_image(&outcome.image, out)?)
    };
    if is_batch(&a.input) {
        let items = batch::load_manifest(&a.input)?;
        batch::ensure_dir(&a.out)?;
        batch::run(&items, a.common.jobs, |item| {
            one(&item.image, item.mask()?, &item.output(&a.out, ".png"), item.index as u64)
        })?;
        return Ok(());
    }
    one(&a.input, required(&a.mask, "--mask")?, &a.out, 0)
}

pub fn blend(a: &BlendArgs) -> Outcome<()> {
    let params = SolverParams {
        tolerance: a.tol,
        max_iterations: a.max_iter,
        method: match a.method {
            Method::Cg => SolverMethod::ConjugateGradient,
            Method::GaussSeidel => SolverMethod::GaussSeidel,
        },
    };
    params.validate()?;
    let guide = if a.oracle_gradients {
        load_image(required(&a.gt, "--gt")?)?
    } else {
        load_image(&a.src)?
    };
    let dst = load_image(&a.dst)?;
    let mask = load_mask(&a.mask)?;
    Ok(save_image(&poisson_blend(&guide, &dst, &mask, &params)?, &a.out)?)
}

fn amplify(a: &AmplifyArgs) -> Outcome<AmplifyParams> {
    let p = AmplifyParams {
        beta_min: a.beta_min,
        beta_max: a.beta_max,
        samples_per_side: a.samples,
        degree: a.degree,
    };
    p.validate()?;
    Ok(p)
}

pub fn tonemap_fit(a: &TonemapFitArgs) -> Outcome<()> {
    let params = amplify(&a.amplify)?;
    let pred = load_image(&a.pred)?;
    let gt = load_image(&a.gt)?;
    let mask = load_mask(&a.mask)?;
    let tm = fit_tonemap(&pred, &gt, &mask, &params, &mut Rng::new(a.common.seed, 0))?;
    write_text(&a.out, &(tm.to_json() + "\n"))
}

pub fn tonemap_apply(a: &TonemapApplyArgs) -> Outcome<()> {
    let tm = ToneMap::from_json(&read_text(&a.map)?).map_err(|e| Failure::from(e).within(a.map.display()))?;
    let img = load_image(&a.input)?;
    Ok(save_image(&apply_tonemap(&tm, &img), &a.out)?)
}

fn eval_one(
    pred: &Path,
    gt: &Path,
    mask: &Path,
    names: [String; 3],
    params: &AmplifyParams,
    rng: &mut Rng,
) -> Outcome<MetricsReport> {
    let p: Image = load_image(pred)?;
    let g = load_image(gt)?;
    let m = load_mask(mask)?;
    let mut report = evaluate(&p, &g, &m, params, rng)?;
    let [pred, gt, mask] = names;
    report.metadata.pred = Some(pred);
    report.metadata.gt = Some(gt);
    report.metadata.mask = Some(mask);
    Ok(report)
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

/// Prints the report (a JSON array in batch mode) to stdout.
pub fn eval(a: &EvalArgs) -> Outcome<()> {
    let params = amplify(&a.amplify)?;
    let seed = a.common.seed;
    if is_batch(&a.pred) {
        let items = batch::load_manifest(&a.pred)?;
        let reports = batch::run(&items, a.common.jobs, |item| {
            let names = [
                display(&item.raw.image),
                display(item.raw.gt.as_deref().unwrap_or(Path::new(""))),
                display(item.raw.mask.as_deref().unwrap_or(Path::new(""))),
            ];
            eval_one(
                &item.image,
                item.gt()?,
                item.mask()?,
                names,
                &params,
                &mut Rng::new(seed, item.index as u64),
            )
        })?;
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
        if let Some(dir) = &a.out {
            batch::ensure_dir(dir)?;
            write_text(&dir.join("report.json"), &json)?;
            write_text(&dir.join("summary.csv"), &CorpusSummary::from_reports(&reports).to_csv())?;
        }
        print!("{json}");
        return Ok(());
    }
    let gt = required(&a.gt, "--gt")?;
    let mask = required(&a.mask, "--mask")?;
    let names = [display(&a.pred), display(gt), display(mask)];
    let report = eval_one(&a.pred, gt, mask, names, &params, &mut Rng::new(seed, 0))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(out) = &a.out {
        write_text(out, &json)?;
    }
    print!("{json}");
    Ok(())
}
