//! Necklace groups from polygons, and the spiral circle chains that
//! approximate an Accola atom group.
//!
//! A necklace group is generated by reflections in a cyclic chain of
//! pairwise tangent circles.  Given a polygon we refine its vertex list
//! until vertex circles of radius half the shorter adjacent edge cannot
//! collide, then plug any remaining gaps along edges with one extra circle
//! per gap.  The orientation-preserving half of the reflection group is
//! generated by products of reflections in consecutive circles.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::circles::{reflections_to_mobius, tangency_classify, Circle, Tangency};
use crate::error::Error;
use crate::mobius::Mobius;

/// Cyclic vertex list of a polygon.  Consecutive vertices must be distinct;
/// the same point may occur twice at a self-crossing (a figure-eight visits
/// its waist twice).
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonInput {
    points: Vec<Complex64>,
}

/// Cross product z-component of two plane vectors.
fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

impl PolygonInput {
    /// Validate a vertex list.  A final vertex equal to the first (the
    /// common explicit-closure convention) is dropped.
    pub fn new(mut points: Vec<Complex64>) -> Result<PolygonInput, Error> {
        if points.len() >= 2 {
            let first = points[0];
            let last = *points.last().unwrap();
            if (first - last).norm() <= 1e-12 {
                points.pop();
            }
        }
        if points.len() < 3 {
            return Err(Error::TooFewCircles(points.len()));
        }
        let n = points.len();
        for i in 0..n {
            if (points[i] - points[(i + 1) % n]).norm() <= 1e-12 {
                return Err(Error::Invalid(format!(
                    "consecutive polygon vertices {} and {} coincide",
                    i,
                    (i + 1) % n
                )));
            }
        }
        Ok(PolygonInput { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    fn scale(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(1.0, f64::max)
    }
}

/// Intersection of segments a–b and c–d, if any.  Parallel pairs (within a
/// relative cross-product tolerance) report nothing: a collinear overlap is
/// not a crossing point.
fn segment_intersection(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Option<(f64, f64, Complex64)> {
    let u = b - a;
    let v = d - c;
    let den = cross(u, v);
    if den.abs() <= 1e-12 * u.norm() * v.norm() {
        return None;
    }
    let w = c - a;
    let t = cross(w, v) / den;
    let s = cross(w, u) / den;
    let eps = 1e-9;
    if (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&s) {
        Some((t, s, a + u * t))
    } else {
        None
    }
}

/// Insert a vertex at every transversal self-crossing, then split edges
/// until no vertex has a non-neighbour strictly closer than its nearest
/// edge-neighbour.  Original vertices stay in place and in order.
pub fn refine_polygon(p: &PolygonInput) -> Result<PolygonInput, Error> {
    let scale = p.scale();
    let near = 1e-9 * scale;

    // pass 1: self-crossings become vertices of both edges involved
    let pts = &p.points;
    let n = pts.len();
    let mut inserts: Vec<Vec<(f64, Complex64)>> = vec![Vec::new(); n];
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            // edges sharing a vertex meet there by construction; skip them
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if let Some((t, s, z)) = segment_intersection(a, b, c, d) {
                inserts[i].push((t, z));
                inserts[j].push((s, z));
            }
        }
    }
    let mut refined: Vec<Complex64> = Vec::with_capacity(n);
    for i in 0..n {
        refined.push(pts[i]);
        inserts[i].sort_by(|x, y| x.0.total_cmp(&y.0));
        for &(_, z) in inserts[i].iter() {
            // a crossing at an existing vertex (or a duplicate crossing) is
            // already represented
            if (z - *refined.last().unwrap()).norm() > near
                && (z - pts[(i + 1) % n]).norm() > near
            {
                refined.push(z);
            }
        }
    }

    // pass 2: split edges at midpoints until nearest-vertex = edge-neighbour
    const MAX_ROUNDS: usize = 100;
    for _ in 0..MAX_ROUNDS {
        let n = refined.len();
        let nearest_edge: Vec<f64> = (0..n)
            .map(|i| {
                let prev = (refined[i] - refined[(i + n - 1) % n]).norm();
                let next = (refined[i] - refined[(i + 1) % n]).norm();
                prev.min(next)
            })
            .collect();
        let mut split = vec![false; n]; // split[i]: edge i → i+1
        let mut any = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let d = (refined[i] - refined[j]).norm();
                // two visits of a self-crossing are one geometric point,
                // not a pair that is too close
                if d <= near {
                    continue;
                }
                if d + near < nearest_edge[i] || d + near < nearest_edge[j] {
                    // shrink the edges at both offenders
                    for k in [i, (i + n - 1) % n, j, (j + n - 1) % n] {
                        split[k] = true;
                    }
                    any = true;
                }
            }
        }
        if !any {
            return PolygonInput::new(refined);
        }
        let mut next: Vec<Complex64> = Vec::with_capacity(2 * n);
        for i in 0..n {
            next.push(refined[i]);
            if split[i] {
                next.push((refined[i] + refined[(i + 1) % n]) / 2.0);
            }
        }
        refined = next;
    }
    Err(Error::RefinementDiverged(MAX_ROUNDS))
}

/// The circle chain of a refined polygon: one circle per vertex with
/// radius half the shorter adjacent edge, plus one gap circle per edge
/// whose vertex circles fall short of tangency, in chain order.
pub fn necklace_circles(p: &PolygonInput) -> Result<Vec<Circle>, Error> {
    let pts = &p.points;
    let n = pts.len();
    let scale = p.scale();
    let near = 1e-9 * scale;

    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let prev = (pts[i] - pts[(i + n - 1) % n]).norm();
            let next = (pts[i] - pts[(i + 1) % n]).norm();
            0.5 * prev.min(next)
        })
        .collect();

    // precondition from refinement: no non-neighbour closer than the
    // nearest neighbour
    for i in 0..n {
        for j in 0..n {
            if j == i || j == (i + 1) % n || j == (i + n - 1) % n {
                continue;
            }
            let d = (pts[i] - pts[j]).norm();
            if d > near && d + near < 2.0 * radii[i] {
                return Err(Error::NotRefined { i, j });
            }
        }
    }

    let mut circles: Vec<Circle> = Vec::with_capacity(2 * n);
    for i in 0..n {
        circles.push(Circle::round(pts[i], radii[i]));
        let j = (i + 1) % n;
        let u = (pts[j] - pts[i]) / (pts[j] - pts[i]).norm();
        let x = pts[i] + u * radii[i];
        let y = pts[j] - u * radii[j];
        if (x - y).norm() > near {
            circles.push(Circle::round((x + y) / 2.0, (x - y).norm() / 2.0));
        }
    }

    // the chain must close up into a necklace: consecutive circles tangent,
    // all other pairs non-overlapping
    let m = circles.len();
    for i in 0..m {
        for j in (i + 1)..m {
            let class = tangency_classify(&circles[i], &circles[j], near);
            let consecutive = j == i + 1 || (i == 0 && j == m - 1);
            if consecutive && !matches!(class, Tangency::Tangent) {
                return Err(Error::NotTangent { index: i, next: j });
            }
            if matches!(class, Tangency::Overlapping) {
                return Err(Error::Invalid(format!(
                    "necklace circles {} and {} overlap; the polygon is too \
                     thin for the construction",
                    i, j
                )));
            }
        }
    }
    Ok(circles)
}

/// Generators of the orientation-preserving half of the reflection group:
/// the n products of reflections in consecutive circles (cyclically).
/// Tangency of each pair forces every generator to be parabolic.
pub fn necklace_generators(circles: &[Circle]) -> Result<Vec<Mobius>, Error> {
    let n = circles.len();
    if n < 3 {
        return Err(Error::TooFewCircles(n));
    }
    let scale = circles
        .iter()
        .filter_map(|c| c.centre_radius())
        .map(|(w, r)| w.norm() + r)
        .fold(1.0, f64::max);
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        match tangency_classify(&circles[i], &circles[j], 1e-9 * scale) {
            Tangency::Tangent => {}
            _ => return Err(Error::NotTangent { index: i, next: j }),
        }
        gens.push(reflections_to_mobius(&circles[i], &circles[j]));
    }
    Ok(gens)
}

/// Parameters of the two-spiral circle chain whose reflection group
/// approximates an Accola atom group.
///
/// The first spiral is r = inner_offset + amplitude/(2 + 2·exp(−growth·θ))
/// in polar form; the second is the same curve advanced half a turn.  Both
/// wind from the circle of radius inner_offset out towards radius
/// inner_offset + amplitude/2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiralSpec {
    pub growth: f64,
    pub inner_offset: f64,
    pub amplitude: f64,
    /// starting angle for each spiral's seed circle
    pub start_angles: [f64; 2],
    /// circles per half-arm; each spiral carries 2·half_arm circles
    pub half_arm: usize,
    /// radius guesses are (nearest other-arm clearance)/guess_factor;
    /// anything above 2 keeps opposite arms from touching
    pub guess_factor: f64,
    /// accepted ratio r/r_target after nudging
    pub nudge_band: (f64, f64),
}

impl Default for SpiralSpec {
    fn default() -> SpiralSpec {
        SpiralSpec {
            growth: 0.8,
            inner_offset: 0.5,
            amplitude: 3.0,
            start_angles: [std::f64::consts::PI, 0.0],
            half_arm: 25,
            guess_factor: 2.2,
            nudge_band: (0.8, 1.2),
        }
    }
}

impl SpiralSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.guess_factor > 2.0) {
            return Err(Error::Invalid(format!(
                "guess factor must exceed 2 so opposite arms cannot touch, got {}",
                self.guess_factor
            )));
        }
        if !(self.growth > 0.0) || !(self.amplitude > 0.0) || !(self.inner_offset > 0.0) {
            return Err(Error::Invalid(
                "spiral growth, amplitude and inner offset must be positive".into(),
            ));
        }
        if !(0.0 < self.nudge_band.0 && self.nudge_band.0 < 1.0 && self.nudge_band.1 > 1.0) {
            return Err(Error::Invalid(
                "nudge band must straddle 1 with 0 < low < 1 < high".into(),
            ));
        }
        Ok(())
    }

    /// Radial parameterisation of spiral `i` (0 or 1).
    fn sigma(&self, i: usize, theta: f64) -> f64 {
        let shifted = theta + if i == 1 { std::f64::consts::PI } else { 0.0 };
        self.inner_offset + self.amplitude / (2.0 + 2.0 * (-self.growth * shifted).exp())
    }

    /// Radius guess at angle θ on spiral i: the smallest radial clearance
    /// to the other spiral's three nearest crossings of the same ray,
    /// divided by the guess factor.
    fn r_guess(&self, i: usize, theta: f64) -> f64 {
        use std::f64::consts::TAU;
        let other = 1 - i;
        let here = self.sigma(i, theta);
        let clearance = (self.sigma(other, theta - TAU) - here)
            .abs()
            .min((self.sigma(other, theta + TAU) - here).abs())
            .min((self.sigma(other, theta) - here).abs());
        clearance / self.guess_factor
    }
}

struct Bead {
    theta: f64,
    centre: Complex64,
    radius: f64,
}

fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Place 2·half_arm mutually tangent circles along each spiral (inner half
/// and outer half grown separately from a seed circle), returning spiral 0
/// then spiral 1, each ordered outer end to inner end.
pub fn atom_circles(spec: &SpiralSpec) -> Result<Vec<Circle>, Error> {
    spec.validate()?;
    let n = spec.half_arm;
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut out: Vec<Circle> = Vec::with_capacity(4 * n);
    for i in 0..2 {
        let theta0 = spec.start_angles[i];
        let seed = Bead {
            theta: theta0,
            centre: polar(spec.sigma(i, theta0), theta0),
            radius: spec.r_guess(i, theta0),
        };
        let mut chain: VecDeque<Bead> = VecDeque::with_capacity(2 * n);
        chain.push_back(seed);
        // the seed counts towards the inward half, so grow inward n−1
        // times and outward n times for 2n circles in total
        for (delta, steps) in [(1.0, n - 1), (-1.0, n)] {
            for step in 0..steps {
                let prev = if delta < 0.0 {
                    chain.front().unwrap()
                } else {
                    chain.back().unwrap()
                };
                let (theta_prev, c_prev, r_prev) = (prev.theta, prev.centre, prev.radius);
                let r_target = spec.r_guess(i, theta_prev);
                // angle between neighbouring centres if the spiral were
                // locally a circle and the radius exactly r_target
                let mut dtheta = -delta * (r_target / spec.sigma(i, theta_prev)).atan();
                let mut centre = Complex64::new(0.0, 0.0);
                let mut r = 0.0;
                let mut passes = 0usize;
                while r / r_target < spec.nudge_band.0 || r / r_target > spec.nudge_band.1 {
                    if passes >= 64 {
                        return Err(Error::SpiralNudgeFailed { step, passes });
                    }
                    // nudge the angle until the tangency radius lands in
                    // the accepted band around the guess
                    dtheta *= if r < r_target { 1.2 } else { 0.8 };
                    let theta = theta_prev + 2.0 * dtheta;
                    centre = polar(spec.sigma(i, theta), theta);
                    r = ((c_prev - centre).norm() - r_prev).abs();
                    passes += 1;
                }
                let bead = Bead {
                    theta: theta_prev + 2.0 * dtheta,
                    centre,
                    radius: r,
                };
                if delta < 0.0 {
                    chain.push_front(bead);
                } else {
                    chain.push_back(bead);
                }
            }
        }
        out.extend(chain.iter().map(|b| Circle::round(b.centre, b.radius)));
    }
    Ok(out)
}
