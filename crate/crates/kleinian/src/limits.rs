//! Limit-set sampling: the chaos game (random left-multiplication walk)
//! and breadth-first orbit enumeration, plus rasterisation of the sampled
//! point clouds.
//!
//! The chaos game leans on ergodicity of the group action on its limit
//! set: a long random product applied to a limit point wanders over the
//! whole limit set.  The breadth-first orbit is better for sparse limit
//! sets, where the random walk revisits the same few clusters.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::mobius::{Mobius, Point};
use crate::words::{enumerate_words_with_cap, Reduction};

/// Points farther out than this are treated as escaping to ∞ and dropped.
const ESCAPE_RADIUS: f64 = 1e12;

/// Number of independent walk streams the chaos game splits into; each is
/// seeded from (seed, stream index) so the output is one fixed sequence
/// regardless of how the streams are scheduled.
const CHAOS_STREAMS: u64 = 8;

/// A sampled approximation to a limit set.
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    /// samples discarded for landing at ∞ or beyond the escape radius
    pub dropped: usize,
    /// "chaos" or "bfs", with the knobs that produced the cloud
    pub method: String,
    pub seed: u64,
}

/// Starting point for the random walk: a fixed point of the first
/// generator, preferring a finite one (∞ is fine — only finite images are
/// recorded).
fn start_point(gens: &[Mobius]) -> Result<Point, Error> {
    let fixed = gens[0].fixed_points().map_err(|_| {
        Error::Invalid("first generator is the identity; the walk has no start point".into())
    })?;
    Ok(fixed
        .iter()
        .find(|p| !p.is_infinity())
        .copied()
        .unwrap_or(Point::Infinity))
}

/// Sample the limit set by a random walk: repeatedly left-multiply the
/// running product by a uniformly random generator or inverse, never
/// picking the immediate inverse of the previous step, and record where
/// the product sends the start point once past `burn_in` steps.
///
/// The walk runs as a fixed number of independent streams concatenated in
/// stream order, so the cloud depends only on (gens, iterations, seed).
pub fn chaos_game(
    gens: &[Mobius],
    iterations: usize,
    seed: u64,
    burn_in: usize,
) -> Result<PointCloud, Error> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    let z0 = start_point(gens)?;

    // alphabet of moves: generator i is move 2i, its inverse 2i+1
    let moves: Vec<Mobius> = gens
        .iter()
        .flat_map(|g| [*g, g.inverse()])
        .collect();

    let per_stream: Vec<usize> = (0..CHAOS_STREAMS as usize)
        .map(|s| iterations / CHAOS_STREAMS as usize + usize::from(s < iterations % CHAOS_STREAMS as usize))
        .collect();

    let streams: Vec<(Vec<Complex64>, usize)> = (0..CHAOS_STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(stream + 1)));
            let quota = per_stream[stream as usize];
            let mut points = Vec::with_capacity(quota);
            let mut dropped = 0usize;
            let mut product = Mobius::identity();
            let mut last: Option<usize> = None;
            let mut step = 0usize;
            while points.len() + dropped < quota {
                step += 1;
                let pick = match last {
                    None => rng.gen_range(0..moves.len()),
                    Some(prev) => {
                        // exclude the move that would cancel the previous one
                        let banned = prev ^ 1;
                        let mut k = rng.gen_range(0..moves.len() - 1);
                        if k >= banned {
                            k += 1;
                        }
                        k
                    }
                };
                last = Some(pick);
                product = match moves[pick].checked_mul(&product) {
                    Ok(p) => p,
                    Err(_) => {
                        // the product overflowed; restart the walk
                        last = None;
                        Mobius::identity()
                    }
                };
                if step <= burn_in {
                    continue;
                }
                match product.apply(z0) {
                    Point::Finite(z) if z.norm() <= ESCAPE_RADIUS => points.push(z),
                    _ => dropped += 1,
                }
            }
            (points, dropped)
        })
        .collect();

    let mut points = Vec::with_capacity(iterations);
    let mut dropped = 0;
    for (p, d) in streams {
        points.extend(p);
        dropped += d;
    }
    Ok(PointCloud {
        points,
        dropped,
        method: format!("chaos(iterations={}, burn_in={})", iterations, burn_in),
        seed,
    })
}

/// Default base points for orbit enumeration: every finite fixed point of
/// every generator.
fn default_base_points(gens: &[Mobius]) -> Vec<Complex64> {
    let mut base = Vec::new();
    for g in gens {
        if let Ok(fixed) = g.fixed_points() {
            base.extend(fixed.iter().filter_map(|p| p.to_complex()));
        }
    }
    base
}

/// Apply every reduced word of length ≤ depth to each base point
/// (generator fixed points when none are given), deduplicating within
/// 1e−9.  Refuses word lists past the enumeration cap with a pointer to
/// the chaos game.
pub fn bfs_orbit(
    gens: &[Mobius],
    depth: usize,
    base_points: Option<&[Complex64]>,
) -> Result<PointCloud, Error> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    if depth == 0 {
        return Err(Error::Invalid("orbit depth must be at least 1".into()));
    }
    let base: Vec<Complex64> = match base_points {
        Some(pts) => pts.to_vec(),
        None => default_base_points(gens),
    };
    if base.is_empty() {
        return Err(Error::Invalid(
            "no finite base points; pass explicit ones".into(),
        ));
    }

    let words = enumerate_words_with_cap(gens.len(), Reduction::Free, depth, 2_000_000).map_err(
        |e| match e {
            Error::WordCapExceeded { would, cap } => Error::OrbitCapExceeded {
                size: would as usize,
                cap: cap as usize,
            },
            other => other,
        },
    )?;

    let mut mats: Vec<Mobius> = words
        .par_iter()
        .map(|w| w.evaluate(gens))
        .collect::<Result<_, _>>()?;
    mats.push(Mobius::identity());

    let mut points: Vec<Complex64> = Vec::with_capacity(mats.len() * base.len());
    let mut dropped = 0usize;
    for m in &mats {
        for &b in &base {
            match m.apply(Point::Finite(b)) {
                Point::Finite(z) if z.norm() <= ESCAPE_RADIUS => points.push(z),
                _ => dropped += 1,
            }
        }
    }

    // dedup on a rounded grid: two samples within 1e−9 of each other are
    // one limit point seen twice
    let mut seen = std::collections::HashSet::new();
    let mut unique = Vec::with_capacity(points.len());
    for z in points {
        let key = ((z.re / 1e-9).round() as i64, (z.im / 1e-9).round() as i64);
        if seen.insert(key) {
            unique.push(z);
        }
    }

    Ok(PointCloud {
        points: unique,
        dropped,
        method: format!("bfs(depth={})", depth),
        seed: 0,
    })
}

/// Count how many cloud points land in each pixel of the window; points
/// outside the window are dropped.
pub fn rasterize(
    cloud: &PointCloud,
    window: &crate::slice::Window,
) -> Result<Vec<u32>, Error> {
    let (pw, ph) = (window.px_width, window.px_height);
    let mut counts = vec![0u32; pw * ph];
    for &z in &cloud.points {
        let fx = (z.re - window.centre.re) / window.width + 0.5;
        let fy = 0.5 - (z.im - window.centre.im) / window.height;
        let j = (fx * pw as f64).floor();
        let k = (fy * ph as f64).floor();
        if (0.0..pw as f64).contains(&j) && (0.0..ph as f64).contains(&k) {
            counts[k as usize * pw + j as usize] += 1;
        }
    }
    Ok(counts)
}
