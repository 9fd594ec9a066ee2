//! File emitters. Numbers in text formats use Rust's shortest
//! round-trip float formatting, so reading a value back recovers the
//! exact f64 that was computed.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

use kleinian::circles::Circle;
use kleinian::mobius::Mobius;
use kleinian::newton::PathTrace;
use kleinian::slice::Raster;

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    write_bytes(path, text.as_bytes())
}

/// Binary PPM, one grayscale byte expanded to an RGB triple.
pub fn ppm_bytes(width: usize, height: usize, gray: &[u8]) -> Result<Vec<u8>> {
    if width == 0 || height == 0 {
        bail!("image must have at least one pixel, got {width}x{height}");
    }
    if gray.len() != width * height {
        bail!(
            "pixel buffer holds {} values, expected {width}x{height} = {}",
            gray.len(),
            width * height
        );
    }
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(3 * gray.len());
    for &g in gray {
        out.extend_from_slice(&[g, g, g]);
    }
    Ok(out)
}

/// Point-count raster → grayscale, log-scaled so sparse and dense pixels
/// both stay visible: 255·ln(1+n)/ln(1+max).
pub fn counts_to_gray(counts: &[u32]) -> Vec<u8> {
    let max = counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return vec![0; counts.len()];
    }
    let scale = 255.0 / (1.0 + max as f64).ln();
    counts
        .iter()
        .map(|&n| ((1.0 + n as f64).ln() * scale).round() as u8)
        .collect()
}

fn json_num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        // JSON has no NaN/∞; write them as strings rather than lying
        .unwrap_or_else(|| serde_json::Value::String(x.to_string()))
}

fn json_cx(z: Complex64) -> serde_json::Value {
    serde_json::Value::Array(vec![json_num(z.re), json_num(z.im)])
}

pub fn circles_json(circles: &[Circle]) -> String {
    let items: Vec<serde_json::Value> = circles
        .iter()
        .map(|c| match *c {
            Circle::Round { centre, radius } => serde_json::json!({
                "centre": json_cx(centre),
                "radius": json_num(radius),
            }),
            Circle::Line { point, direction } => serde_json::json!({
                "line": { "point": json_cx(point), "direction": json_cx(direction) },
            }),
        })
        .collect();
    let doc = serde_json::json!({ "circles": items });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values serialise");
    text.push('\n');
    text
}

pub fn generators_json(names: &[String], gens: &[Mobius]) -> String {
    let items: Vec<serde_json::Value> = names
        .iter()
        .zip(gens)
        .map(|(name, m)| {
            serde_json::json!({
                "name": name,
                "matrix": [json_cx(m.a), json_cx(m.b), json_cx(m.c), json_cx(m.d)],
            })
        })
        .collect();
    let doc = serde_json::json!({ "generators": items });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values serialise");
    text.push('\n');
    text
}

pub fn path_csv(trace: &PathTrace) -> String {
    let mut out = String::from("stage,parameter,target_trace,re,im,residual\n");
    for s in &trace.steps {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.stage, s.parameter, s.target, s.z.re, s.z.im, s.residual
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Row-major grid of slice values: `re,im,value` per pixel centre.
pub fn raster_csv(raster: &Raster) -> String {
    let w = &raster.window;
    let mut out = String::from("re,im,value\n");
    for k in 0..w.px_height {
        for j in 0..w.px_width {
            let z = w.pixel_to_point(j, k);
            writeln!(out, "{},{},{}", z.re, z.im, raster.values[k * w.px_width + j])
                .expect("writing to a String cannot fail");
        }
    }
    out
}

pub fn points_csv(points: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for p in points {
        writeln!(out, "{},{}", p.re, p.im).expect("writing to a String cannot fail");
    }
    out
}

pub fn solution_json(names: [&str; 3], solution: &[Complex64; 3]) -> String {
    let items: Vec<serde_json::Value> = names
        .iter()
        .zip(solution)
        .map(|(name, z)| serde_json::json!({ "name": name, "value": json_cx(*z) }))
        .collect();
    let doc = serde_json::json!({ "solution": items });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values serialise");
    text.push('\n');
    text
}
