//! Out-of-process refiners.
//!
//! The program is run as `program [args..] <input.png> <mask.png> <output.png>`
//! inside a private temporary directory and must write the output PNG.

use std::path::PathBuf;
use std::process::Command;

use crate::error::{Error, Result};
use crate::io::{load_image, save_image, save_mask};
use crate::ops::paste_back;
use crate::raster::{check_same, Image, Mask};
use crate::refine::Refiner;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubprocessRefiner {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl SubprocessRefiner {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        Self {
            program: program.into(),
            args: Vec::new(),
        }
    }
}

impl Refiner for SubprocessRefiner {
    fn refine(&self, x_gen: &Image, mask: &Mask) -> Result<Image> {
        check_same(x_gen.dims(), mask.dims(), "refine mask")?;
        let dir = tempfile::tempdir().map_err(|source| Error::Io {
            path: std::env::temp_dir(),
            source,
        })?;
        let input = dir.path().join("input.png");
        let mask_path = dir.path().join("mask.png");
        let output = dir.path().join("output.png");
        save_image(x_gen, &input)?;
        save_mask(mask, &mask_path)?;
        let status = Command::new(&self.program)
            .args(&self.args)
            .arg(&input)
            .arg(&mask_path)
            .arg(&output)
            .status()
            .map_err(|e| Error::External(format!("{}: {e}", self.program.display())))?;
        if !status.success() {
            return Err(Error::External(format!("{} exited with {status}", self.program.display())));
        }
        let refined = load_image(&output)?;
        check_same(x_gen.dims(), refined.dims(), "external refiner output")?;
        paste_back(&refined, x_gen, mask)
    }
}

#[cfg(all(test, unix))]
mod tests {
    use super::*;
    use crate::io::quantize8;
    use crate::synth::photo;

    #[test]
    fn copying_program_round_trips() {
        // `cp input output` ignoring the mask: sh -c 'cp "$1" "$3"' with $0 = sh.
        let r = SubprocessRefiner {
            program: "sh".into(),
            args: vec!["-c".into(), "cp \"$1\" \"$3\"".into(), "sh".into()],
        };
        let img = quantize8(&photo(16, 16, 1));
        let m = Mask::from_fn(16, 16, |y, _| (y < 8) as u8 as f64).unwrap();
        assert_eq!(r.refine(&img, &m).unwrap(), img);
    }

    #[test]
    fn failing_program_is_reported() {
        let r = SubprocessRefiner {
            program: "sh".into(),
            args: vec!["-c".into(), "exit 3".into(), "sh".into()],
        };
        let img = photo(8, 8, 1);
        let err = r.refine(&img, &Mask::ones(8, 8).unwrap()).unwrap_err();
        assert!(matches!(err, Error::External(_)));
        let missing = SubprocessRefiner::new("/nonexistent/refiner");
        assert!(matches!(missing.refine(&img, &Mask::ones(8, 8).unwrap()), Err(Error::External(_))));
    }
}
