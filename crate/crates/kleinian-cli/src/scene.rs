//! The JSON scene schema: one file fully describes one invocation.
//!
//! Conventions shared by every mode:
//! - complex numbers are two-element arrays `[re, im]`;
//! - angles are radians, except keys suffixed `_pi`, which are multiples
//!   of π;
//! - unknown keys are rejected;
//! - every mode carries its `"mode"` tag so a scene file round-trips
//!   through serialisation unchanged.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use kleinian::families::FamilySpec;
use kleinian::slice::WordSource;

/// A complex number in scene files.
pub type Cx = [f64; 2];

pub fn cx(v: Cx) -> Complex64 {
    Complex64::new(v[0], v[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyScene {
    /// a parameterised template (`compression-body`, `grandma`, `riley`,
    /// `pendulum` — with `p0`/`p1` giving the endpoints of the affine
    /// path) or a named preset slice (`solomon`, `whitehead`,
    /// `horizontal-lambda`, `diagonal-schottky`, `eight-five`,
    /// `double-pendulum`)
    pub template: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<Vec<Cx>>,
}

impl FamilyScene {
    pub fn build(&self) -> Result<FamilySpec> {
        let name = self.template.to_lowercase().replace('_', "-");
        let preset = |spec: FamilySpec| -> Result<FamilySpec> {
            if self.p0.is_some() || self.p1.is_some() {
                bail!("preset template \"{}\" does not take p0/p1", self.template);
            }
            Ok(spec)
        };
        let path = |arity: usize| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
            let p0 = self
                .p0
                .as_ref()
                .ok_or_else(|| anyhow!("template \"{name}\" needs p0"))?;
            if p0.len() != arity {
                bail!("template \"{name}\" needs {arity} p0 entr{}, got {}",
                    if arity == 1 { "y" } else { "ies" }, p0.len());
            }
            let p1 = self.p1.as_ref().unwrap_or(p0);
            if p1.len() != arity {
                bail!("p1 needs {arity} entries to match p0, got {}", p1.len());
            }
            Ok((
                p0.iter().copied().map(cx).collect(),
                p1.iter().copied().map(cx).collect(),
            ))
        };
        match name.as_str() {
            "solomon" => preset(FamilySpec::solomon()),
            "whitehead" => preset(FamilySpec::whitehead()),
            "horizontal-lambda" => preset(FamilySpec::horizontal_lambda()),
            "diagonal-schottky" => preset(FamilySpec::diagonal_schottky()),
            "eight-five" => preset(FamilySpec::eight_five()),
            "double-pendulum" => preset(FamilySpec::double_pendulum()),
            "compression-body" => {
                let (p0, p1) = path(3)?;
                Ok(FamilySpec::CompressionBody {
                    p0: [p0[0], p0[1], p0[2]],
                    p1: [p1[0], p1[1], p1[2]],
                })
            }
            "grandma" => {
                let (p0, p1) = path(3)?;
                Ok(FamilySpec::Grandma {
                    p0: [p0[0], p0[1], p0[2]],
                    p1: [p1[0], p1[1], p1[2]],
                })
            }
            "riley" => {
                let (p0, p1) = path(1)?;
                Ok(FamilySpec::Riley { p0: p0[0], p1: p1[0] })
            }
            "pendulum" => {
                let (p0, p1) = path(1)?;
                Ok(FamilySpec::Pendulum { p0: p0[0], p1: p1[0] })
            }
            other => bail!(
                "unknown family template \"{other}\"; expected compression-body, grandma, \
                 riley, pendulum or a preset (solomon, whitehead, horizontal-lambda, \
                 diagonal-schottky, eight-five, double-pendulum)"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowScene {
    pub centre: Cx,
    pub width: f64,
    pub height: f64,
    pub px_width: usize,
    pub px_height: usize,
}

impl WindowScene {
    pub fn build(&self) -> Result<kleinian::slice::Window> {
        kleinian::slice::Window::new(
            cx(self.centre),
            self.width,
            self.height,
            self.px_width,
            self.px_height,
        )
        .map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordKind {
    Enumerate,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordScene {
    pub kind: WordKind,
    pub max_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl WordScene {
    /// `seed_flag` is the command-line override; precedence flag > scene > 0.
    pub fn build(&self, seed_flag: Option<u64>) -> Result<WordSource> {
        if self.max_len == 0 {
            bail!("word max_len must be at least 1");
        }
        match self.kind {
            WordKind::Enumerate => {
                if self.count.is_some() || self.seed.is_some() {
                    bail!("enumerated words take no count or seed");
                }
                Ok(WordSource::Enumerate {
                    max_len: self.max_len,
                })
            }
            WordKind::Random => Ok(WordSource::Random {
                max_len: self.max_len,
                count: self.count.ok_or_else(|| anyhow!("random words need a count"))?,
                seed: seed_flag.or(self.seed).unwrap_or(0),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NecklaceScene {
    pub mode: String,
    /// polygon vertices in order; an explicit closing copy of the first
    /// vertex is allowed
    pub points: Vec<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles_out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators_out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomScene {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_angles: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_angles_pi: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_arm: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guess_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nudge_band: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles_out: Option<String>,
}

impl AtomScene {
    pub fn build(&self) -> Result<kleinian::necklace::SpiralSpec> {
        let mut spec = kleinian::necklace::SpiralSpec::default();
        if let Some(g) = self.growth {
            spec.growth = g;
        }
        if let Some(o) = self.inner_offset {
            spec.inner_offset = o;
        }
        if let Some(a) = self.amplitude {
            spec.amplitude = a;
        }
        match (self.start_angles, self.start_angles_pi) {
            (Some(_), Some(_)) => bail!("give start_angles or start_angles_pi, not both"),
            (Some(a), None) => spec.start_angles = a,
            (None, Some(a)) => spec.start_angles = [a[0] * std::f64::consts::PI, a[1] * std::f64::consts::PI],
            (None, None) => {}
        }
        if let Some(n) = self.half_arm {
            spec.half_arm = n;
        }
        if let Some(f) = self.guess_factor {
            spec.guess_factor = f;
        }
        if let Some(b) = self.nudge_band {
            spec.nudge_band = (b[0], b[1]);
        }
        spec.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitMethod {
    Chaos,
    Bfs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsetScene {
    pub mode: String,
    /// the generators come from a family at parameter `t` …
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyScene>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Cx>,
    /// … or from the necklace of a polygon
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<OrbitMethod>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_points: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowScene>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points_out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceScene {
    pub mode: String,
    pub family: FamilyScene,
    pub window: WindowScene,
    pub words: WordScene,
    /// parameter where the baseline mask is measured
    pub test_point: Cx,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask_tolerance: Option<f64>,
    /// τ value mapped to full white in the image
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values_out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FareyPathScene {
    pub mode: String,
    pub slope: [u64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_hyp: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveScene {
    pub mode: String,
    /// `compression-body` (words over P, Q, M) or `grandma` (words over X, Y)
    pub family: String,
    pub words: Vec<String>,
    /// squared-trace targets; defaults to (4, 4, 4), the parabolic locus
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<Cx>>,
    pub guess: Vec<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyScene {
    pub mode: String,
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scene {
    Necklace(NecklaceScene),
    Atom(AtomScene),
    Limitset(LimitsetScene),
    Slice(SliceScene),
    FareyPath(FareyPathScene),
    Solve(SolveScene),
    Verify(VerifyScene),
}

impl Scene {
    pub fn mode(&self) -> &str {
        match self {
            Scene::Necklace(s) => &s.mode,
            Scene::Atom(s) => &s.mode,
            Scene::Limitset(s) => &s.mode,
            Scene::Slice(s) => &s.mode,
            Scene::FareyPath(s) => &s.mode,
            Scene::Solve(s) => &s.mode,
            Scene::Verify(s) => &s.mode,
        }
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        let mut text = match self {
            Scene::Necklace(s) => serde_json::to_string_pretty(s),
            Scene::Atom(s) => serde_json::to_string_pretty(s),
            Scene::Limitset(s) => serde_json::to_string_pretty(s),
            Scene::Slice(s) => serde_json::to_string_pretty(s),
            Scene::FareyPath(s) => serde_json::to_string_pretty(s),
            Scene::Solve(s) => serde_json::to_string_pretty(s),
            Scene::Verify(s) => serde_json::to_string_pretty(s),
        }
        .expect("scene types always serialise");
        text.push('\n');
        text
    }
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let value: serde_json::Value =
        serde_json::from_str(text).context("scene is not valid JSON")?;
    let mode = value
        .get("mode")
        .and_then(|m| m.as_str())
        .ok_or_else(|| anyhow!("scene is missing the \"mode\" key"))?
        .to_owned();
    let scene = match mode.as_str() {
        "necklace" => Scene::Necklace(serde_json::from_value(value)?),
        "atom" => Scene::Atom(serde_json::from_value(value)?),
        "limitset" => Scene::Limitset(serde_json::from_value(value)?),
        "slice" => Scene::Slice(serde_json::from_value(value)?),
        "farey-path" => Scene::FareyPath(serde_json::from_value(value)?),
        "solve" => Scene::Solve(serde_json::from_value(value)?),
        "verify" => Scene::Verify(serde_json::from_value(value)?),
        other => bail!(
            "unknown mode \"{other}\"; expected necklace, atom, limitset, slice, \
             farey-path, solve or verify"
        ),
    };
    Ok(scene)
}

pub fn read_scene(path: &Path) -> Result<Scene> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read scene file {}", path.display()))?;
    parse_scene(&text).with_context(|| format!("in scene file {}", path.display()))
}
