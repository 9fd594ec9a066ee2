//! Circles and lines on the extended plane: inversion, tangency, and
//! images under Möbius maps.
//!
//! Lines are first-class so that a circle pushed through the pole of a map
//! degenerates gracefully instead of crashing; every routine here accepts
//! and may return either variant.

use num_complex::Complex64;

use crate::mobius::{Mobius, Point};

/// A circle or a line (circle through ∞) in the plane.
#[derive(Debug, Copy, Clone)]
pub enum Circle {
    Round { centre: Complex64, radius: f64 },
    Line { point: Complex64, direction: Complex64 },
}

/// Mutual position of two circles; `Tangent` covers both external and
/// internal tangency.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Tangency {
    Equal,
    Tangent,
    Disjoint,
    NestedDisjoint,
    Overlapping,
}

impl Circle {
    pub fn round(centre: Complex64, radius: f64) -> Circle {
        debug_assert!(radius > 0.0, "circle radius must be positive");
        Circle::Round { centre, radius }
    }

    /// Line through `point` along `direction` (normalised to modulus 1).
    pub fn line(point: Complex64, direction: Complex64) -> Circle {
        let n = direction.norm();
        debug_assert!(n > 0.0, "line direction must be nonzero");
        Circle::Line {
            point,
            direction: direction / n,
        }
    }

    /// Centre and radius for the bounded variant.
    pub fn centre_radius(&self) -> Option<(Complex64, f64)> {
        match *self {
            Circle::Round { centre, radius } => Some((centre, radius)),
            Circle::Line { .. } => None,
        }
    }

    /// Reflection (inversion) across this circle: z ↦ r²/(z̄ − w̄) + w, or
    /// the Euclidean mirror image for a line.  An involution fixing the
    /// circle pointwise and swapping centre with ∞.
    pub fn reflect(&self, z: Point) -> Point {
        match *self {
            Circle::Round { centre: w, radius: r } => match z {
                Point::Infinity => Point::Finite(w),
                Point::Finite(z) => {
                    let den = (z - w).conj();
                    if den.norm() == 0.0 {
                        return Point::Infinity;
                    }
                    Point::Finite(r * r / den + w)
                }
            },
            Circle::Line { point: p, direction: d } => match z {
                Point::Infinity => Point::Infinity,
                Point::Finite(z) => Point::Finite(p + d * d * (z - p).conj()),
            },
        }
    }

    /// Matrix A with reflect(z) = A(z̄) as a fractional linear expression.
    /// Not determinant-normalised (det = −r² for a circle, d² for a line).
    fn anti_matrix(&self) -> Mobius {
        match *self {
            Circle::Round { centre: w, radius: r } => Mobius::new(
                w,
                Complex64::new(r * r, 0.0) - w * w.conj(),
                Complex64::new(1.0, 0.0),
                -w.conj(),
            ),
            Circle::Line { point: p, direction: d } => Mobius::new(
                d * d,
                p - d * d * p.conj(),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ),
        }
    }

    /// Euclidean distance from a point to the circle's locus.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match *self {
            Circle::Round { centre, radius } => ((z - centre).norm() - radius).abs(),
            Circle::Line { point, direction } => {
                // component of z − point orthogonal to the direction
                ((z - point) * direction.conj()).im.abs()
            }
        }
    }
}

/// The Möbius map reflect(c1, ·) ∘ reflect(c2, ·): two anti-holomorphic
/// inversions compose to a holomorphic map with matrix A₁ · conj(A₂),
/// determinant-normalised.
pub fn reflections_to_mobius(c1: &Circle, c2: &Circle) -> Mobius {
    let a1 = c1.anti_matrix();
    let a2 = c2.anti_matrix();
    let m = Mobius::new(
        a1.a * a2.a.conj() + a1.b * a2.c.conj(),
        a1.a * a2.b.conj() + a1.b * a2.d.conj(),
        a1.c * a2.a.conj() + a1.d * a2.c.conj(),
        a1.c * a2.b.conj() + a1.d * a2.d.conj(),
    );
    // det(A₁·conj A₂) = (−r₁²)·conj(−r₂²) ≠ 0 (or unit-modulus for lines)
    m.normalize_det()
        .expect("reflection matrices are never singular")
}

/// Compare |w₁ − w₂| against r₁ + r₂ and |r₁ − r₂| with tolerance `tol`.
pub fn tangency_classify(c1: &Circle, c2: &Circle, tol: f64) -> Tangency {
    match (c1, c2) {
        (
            Circle::Round { centre: w1, radius: r1 },
            Circle::Round { centre: w2, radius: r2 },
        ) => {
            let d = (w1 - w2).norm();
            if d <= tol && (r1 - r2).abs() <= tol {
                Tangency::Equal
            } else if (d - (r1 + r2)).abs() <= tol || (d - (r1 - r2).abs()).abs() <= tol {
                Tangency::Tangent
            } else if d > r1 + r2 {
                Tangency::Disjoint
            } else if d < (r1 - r2).abs() {
                Tangency::NestedDisjoint
            } else {
                Tangency::Overlapping
            }
        }
        (Circle::Round { centre, radius }, line @ Circle::Line { .. })
        | (line @ Circle::Line { .. }, Circle::Round { centre, radius }) => {
            let dist = match *line {
                Circle::Line { point, direction } => {
                    ((centre - point) * direction.conj()).im.abs()
                }
                _ => unreachable!(),
            };
            if (dist - radius).abs() <= tol {
                Tangency::Tangent
            } else if dist > *radius {
                Tangency::Disjoint
            } else {
                Tangency::Overlapping
            }
        }
        (
            Circle::Line { point: p1, direction: d1 },
            Circle::Line { point: p2, direction: d2 },
        ) => {
            // parallel iff the directions agree up to sign
            let cross = (d1 * d2.conj()).im.abs();
            if cross > tol {
                return Tangency::Overlapping;
            }
            let offset = ((p2 - p1) * d1.conj()).im.abs();
            if offset <= tol {
                Tangency::Equal
            } else {
                Tangency::Disjoint
            }
        }
    }
}

/// Circumcentre of three points, or None when they are collinear.
fn circumcentre(z1: Complex64, z2: Complex64, z3: Complex64) -> Option<Complex64> {
    let n1 = z1.norm_sqr();
    let n2 = z2.norm_sqr();
    let n3 = z3.norm_sqr();
    let num = n1 * (z2 - z3) + n2 * (z3 - z1) + n3 * (z1 - z2);
    let den = z1.conj() * (z2 - z3) + z2.conj() * (z3 - z1) + z3.conj() * (z1 - z2);
    let scale = z1.norm().max(z2.norm()).max(z3.norm()).max(1.0);
    if den.norm() <= 1e-13 * scale * scale {
        None
    } else {
        Some(num / den)
    }
}

/// The image of a circle under a Möbius map.
///
/// Affine maps are handled directly; otherwise three sample points are
/// transported and recircumscribed.  When the pole of the map lies on the
/// circle the image passes through ∞ and comes back as a line.
pub fn image_circle(m: &Mobius, c: &Circle) -> Circle {
    let scale = m.a.norm().max(m.b.norm()).max(m.c.norm()).max(m.d.norm()).max(1.0);
    if m.c.norm() <= 1e-13 * scale {
        // z ↦ (a z + b)/d
        let f = m.a / m.d;
        return match *c {
            Circle::Round { centre, radius } => {
                Circle::round(centre * f + m.b / m.d, radius * f.norm())
            }
            Circle::Line { point, direction } => {
                Circle::line(point * f + m.b / m.d, direction * f)
            }
        };
    }

    let pole = -m.d / m.c;
    let on_circle = c.distance_to(pole) <= 1e-12 * (1.0 + pole.norm());
    let samples = pick_samples(c, pole, on_circle);
    let imgs: Vec<Complex64> = samples
        .iter()
        .map(|&z| match m.apply(Point::Finite(z)) {
            Point::Finite(w) => w,
            Point::Infinity => unreachable!("samples avoid the pole"),
        })
        .collect();

    if on_circle {
        return Circle::line(imgs[0], imgs[1] - imgs[0]);
    }
    match circumcentre(imgs[0], imgs[1], imgs[2]) {
        Some(w) => Circle::round(w, (imgs[0] - w).norm()),
        None => Circle::line(imgs[0], imgs[1] - imgs[0]),
    }
}

/// Two or three points on `c`, all safely away from `pole`.
fn pick_samples(c: &Circle, pole: Complex64, skip_pole: bool) -> Vec<Complex64> {
    let wanted = if skip_pole { 2 } else { 3 };
    let candidates: Vec<Complex64> = match *c {
        Circle::Round { centre: w, radius: r } => (0..8)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * (k as f64) / 8.0;
                w + r * Complex64::new(th.cos(), th.sin())
            })
            .collect(),
        Circle::Line { point: p, direction: d } => [0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 4.0]
            .iter()
            .map(|&t| p + d * t)
            .collect(),
    };
    let clearance = match *c {
        Circle::Round { radius, .. } => 0.1 * radius,
        Circle::Line { .. } => 0.1,
    };
    let picked: Vec<Complex64> = candidates
        .into_iter()
        .filter(|z| !skip_pole || (z - pole).norm() > clearance)
        .take(wanted)
        .collect();
    debug_assert_eq!(picked.len(), wanted);
    picked
}
