//! Character-variety slice pictures: per-pixel minimum translation length
//! over a word batch.
//!
//! The picture algorithm is two-pass.  First the word batch is evaluated
//! at a trusted interior test point and every word that already has τ = 0
//! there — relators, identically-parabolic subgroup words — is masked out,
//! since it would blacken the whole picture.  Then each pixel of the
//! parameter window gets the minimum τ of the surviving words at that
//! parameter.  Small minima mean a word is close to parabolic or elliptic:
//! dark bands trace the boundary structure of the deformation space.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Error;
use crate::families::FamilySpec;
use crate::mobius::Mobius;
use crate::words::{enumerate_words, random_words, PrefixForest, Word};

/// τ values above this are clamped; they mean "very deep in the interior"
/// and keeping them finite protects downstream statistics.
pub const TAU_CLAMP: f64 = 1e6;

/// A rectangle in the parameter plane together with its pixel resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub centre: Complex64,
    pub width: f64,
    pub height: f64,
    /// pixel columns
    pub px_width: usize,
    /// pixel rows
    pub px_height: usize,
}

impl Window {
    pub fn new(
        centre: Complex64,
        width: f64,
        height: f64,
        px_width: usize,
        px_height: usize,
    ) -> Result<Window, Error> {
        if !(width > 0.0) || !(height > 0.0) {
            return Err(Error::BadWindow);
        }
        if px_width == 0 || px_height == 0 {
            return Err(Error::BadRasterSize {
                width: px_width,
                height: px_height,
            });
        }
        Ok(Window {
            centre,
            width,
            height,
            px_width,
            px_height,
        })
    }

    /// Parameter under the centre of pixel (j, k), 0-indexed from the
    /// top-left corner: j counts columns rightward, k rows downward.
    pub fn pixel_to_point(&self, j: usize, k: usize) -> Complex64 {
        let re = self.centre.re + ((j as f64 + 0.5) / self.px_width as f64 - 0.5) * self.width;
        let im = self.centre.im + (0.5 - (k as f64 + 0.5) / self.px_height as f64) * self.height;
        Complex64::new(re, im)
    }
}

/// How the word batch is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum WordSource {
    /// all reduced words up to this length, in canonical order
    Enumerate { max_len: usize },
    /// deterministic random sample
    Random {
        max_len: usize,
        count: usize,
        seed: u64,
    },
}

/// The finished picture: row-major τ minima plus everything needed to
/// reproduce it.
#[derive(Debug, Clone)]
pub struct Raster {
    pub window: Window,
    /// row-major, index k·px_width + j
    pub values: Vec<f64>,
    pub family: FamilySpec,
    pub source: WordSource,
    pub test_point: Complex64,
    /// words removed by the baseline mask
    pub mask_size: usize,
    /// words contributing to every pixel
    pub word_count: usize,
    /// pixels where a generator went singular or a product overflowed;
    /// these carry value 0
    pub degenerate: Vec<(usize, usize)>,
}

impl Raster {
    pub fn value(&self, j: usize, k: usize) -> f64 {
        self.values[k * self.window.px_width + j]
    }
}

/// Mark the words that are already length-zero at the test point; they are
/// zero over the whole slice (relators and identically-parabolic words)
/// and would hide all structure.
pub fn baseline_mask(words: &[Word], gens: &[Mobius], tol: f64) -> Result<Vec<bool>, Error> {
    words
        .iter()
        .map(|w| Ok(w.evaluate(gens)?.translation_length() <= tol))
        .collect()
}

/// Minimum τ over the batch at one parameter value, or None when the
/// evaluation degenerates (singular generator, overflowed product).
fn min_tau_at(spec: &FamilySpec, forest: &PrefixForest, t: Complex64) -> Option<f64> {
    let gens = spec.generators_at(t);
    if gens
        .iter()
        .any(|g| !g.det().is_finite() || g.det().norm() < 1e-14)
    {
        return None;
    }
    let mats = forest.evaluate_all(&gens).ok()?;
    let min = mats
        .iter()
        .map(|m| m.translation_length())
        .fold(f64::INFINITY, f64::min);
    if min.is_nan() {
        return None;
    }
    Some(min.clamp(0.0, TAU_CLAMP))
}

/// Render a slice of the family's parameter space.
///
/// Pixels are pure functions of (family, word batch, pixel centre), so the
/// result is identical for any thread count; rows are distributed over the
/// rayon pool.
pub fn render_slice(
    spec: &FamilySpec,
    test_point: Complex64,
    window: &Window,
    source: &WordSource,
    tol: f64,
) -> Result<Raster, Error> {
    let g = spec.generator_count();
    if g == 0 {
        return Err(Error::NoGenerators);
    }
    let words = match *source {
        WordSource::Enumerate { max_len } => enumerate_words(g, spec.reduction(), max_len)?,
        WordSource::Random {
            max_len,
            count,
            seed,
        } => random_words(g, spec.reduction(), max_len, count, seed),
    };
    if words.is_empty() {
        return Err(Error::EmptyWordList);
    }

    let gens0 = spec.generators_at(test_point);
    let mask = baseline_mask(&words, &gens0, tol)?;
    let survivors: Vec<Word> = words
        .iter()
        .zip(mask.iter())
        .filter(|(_, &masked)| !masked)
        .map(|(w, _)| w.clone())
        .collect();
    if survivors.is_empty() {
        return Err(Error::AllWordsMasked);
    }
    let mask_size = words.len() - survivors.len();
    let forest = PrefixForest::build(&survivors);

    let (pw, ph) = (window.px_width, window.px_height);
    let mut values = vec![0.0f64; pw * ph];
    let mut degenerate_rows: Vec<Vec<(usize, usize)>> = Vec::new();
    values
        .par_chunks_mut(pw)
        .enumerate()
        .map(|(k, row)| {
            let mut degenerate = Vec::new();
            for (j, slot) in row.iter_mut().enumerate() {
                match min_tau_at(spec, &forest, window.pixel_to_point(j, k)) {
                    Some(v) => *slot = v,
                    None => {
                        *slot = 0.0;
                        degenerate.push((j, k));
                    }
                }
            }
            degenerate
        })
        .collect_into_vec(&mut degenerate_rows);

    Ok(Raster {
        window: window.clone(),
        values,
        family: spec.clone(),
        source: source.clone(),
        test_point,
        mask_size,
        word_count: survivors.len(),
        degenerate: degenerate_rows.concat(),
    })
}

/// 8-bit grayscale: τ_max and above is white, 0 is black.  Dark pixels are
/// where some word is (nearly) parabolic or elliptic.
pub fn colormap(raster: &Raster, tau_max: f64) -> Result<Vec<u8>, Error> {
    if !(tau_max > 0.0) {
        return Err(Error::Invalid(format!(
            "colormap needs a positive τ_max, got {}",
            tau_max
        )));
    }
    Ok(raster
        .values
        .iter()
        .map(|&v| (255.0 * v.min(tau_max) / tau_max).round() as u8)
        .collect())
}
