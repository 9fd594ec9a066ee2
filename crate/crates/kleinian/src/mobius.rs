//! Möbius maps as determinant-normalised 2×2 complex matrices.
//!
//! A map and its negative act identically on the Riemann sphere, so every
//! classification or length computation here is invariant under `m → −m`.

use num_complex::Complex64;
use std::fmt;
use std::ops::Mul;

use crate::circles::Circle;
use crate::error::Error;

/// Tolerance used by [`Mobius::classify`] on |tr² − 4| and on ‖m ∓ Id‖:
/// roughly the double-precision error after a few dozen matrix products.
pub const CLASS_TOL: f64 = 1e-9;

/// A point on the Riemann sphere: a finite complex number or ∞.
///
/// Infinity is a tagged variant, never a large float, so arithmetic at the
/// pole of a map cannot leak NaNs into downstream geometry.
#[derive(Debug, Copy, Clone, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(re: f64, im: f64) -> Point {
        Point::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// The finite value, if there is one.
    pub fn to_complex(&self) -> Option<Complex64> {
        match *self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Point {
        Point::Finite(z)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(z) => write!(f, "{}", z),
            Point::Infinity => write!(f, "∞"),
        }
    }
}

/// Principal square root: branch cut on the negative real axis, result with
/// nonnegative real part, and nonnegative imaginary part on the cut itself.
///
/// `Complex64::sqrt` already takes the principal branch, but a −0.0
/// imaginary part would land the cut in the lower half-plane; squash the
/// signed zero first so that √(−4) = +2i regardless of the zero's sign.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    };
    z.sqrt()
}

/// Trichotomy of non-trivial Möbius maps, plus the identity.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MapClass::Identity => "identity",
            MapClass::Parabolic => "parabolic",
            MapClass::Elliptic => "elliptic",
            MapClass::Loxodromic => "loxodromic",
        };
        write!(f, "{}", name)
    }
}

/// Möbius transformation z ↦ (az + b)/(cz + d).
///
/// Constructors do not normalise; call [`Mobius::normalize_det`] to scale
/// the determinant to 1 (every group-theoretic routine in this crate
/// expects normalised input and preserves it).
#[derive(Debug, Copy, Clone, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Mobius {
        Mobius { a, b, c, d }
    }

    /// Entries from real pairs, handy for literal matrices in tests.
    pub fn from_reals(a: f64, b: f64, c: f64, d: f64) -> Mobius {
        Mobius::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn identity() -> Mobius {
        Mobius::from_reals(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Scale all entries by a principal square root of the determinant so
    /// that det = 1.
    pub fn normalize_det(self) -> Result<Mobius, Error> {
        let det = self.det();
        if det.norm() < 1e-14 {
            return Err(Error::SingularMatrix);
        }
        let s = principal_sqrt(det);
        Ok(Mobius::new(self.a / s, self.b / s, self.c / s, self.d / s))
    }

    /// Inverse of a determinant-1 map: the adjugate (d, −b, −c, a).
    pub fn inverse(&self) -> Mobius {
        Mobius::new(self.d, -self.b, -self.c, self.a)
    }

    /// Image of a point on the Riemann sphere.
    pub fn apply(&self, z: Point) -> Point {
        let w = match z {
            Point::Infinity => {
                if self.c.norm() == 0.0 {
                    return Point::Infinity;
                }
                self.a / self.c
            }
            Point::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    return Point::Infinity;
                }
                (self.a * z + self.b) / den
            }
        };
        if w.re.is_finite() && w.im.is_finite() {
            Point::Finite(w)
        } else {
            Point::Infinity
        }
    }

    /// Real translation length τ(m) = |2 log(|tr m + √(tr²m − 4)|/2)|.
    ///
    /// Zero exactly for elliptic, parabolic and identity maps; invariant
    /// under m → −m, m → m⁻¹ and conjugation.
    pub fn translation_length(&self) -> f64 {
        let tr = self.trace();
        let s = principal_sqrt(tr * tr - Complex64::new(4.0, 0.0));
        let mag = (tr + s).norm() / 2.0;
        if mag <= 0.0 {
            // tr + s can only vanish in rounding; the map is then elliptic.
            return 0.0;
        }
        (2.0 * mag.ln()).abs()
    }

    /// Identity / parabolic / elliptic / loxodromic, using [`CLASS_TOL`].
    pub fn classify(&self) -> MapClass {
        self.classify_with_tol(CLASS_TOL)
    }

    pub fn classify_with_tol(&self, tol: f64) -> MapClass {
        if self.dist_to_scaled_identity() < tol {
            return MapClass::Identity;
        }
        let tr2 = self.trace() * self.trace();
        if (tr2 - Complex64::new(4.0, 0.0)).norm() < tol {
            return MapClass::Parabolic;
        }
        if tr2.im.abs() < tol && tr2.re >= -tol && tr2.re < 4.0 {
            return MapClass::Elliptic;
        }
        MapClass::Loxodromic
    }

    /// min(‖m − Id‖, ‖m + Id‖) in the max-entry norm.
    fn dist_to_scaled_identity(&self) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        let plus = (self.a - one)
            .norm()
            .max((self.d - one).norm())
            .max(self.b.norm())
            .max(self.c.norm());
        let minus = (self.a + one)
            .norm()
            .max((self.d + one).norm())
            .max(self.b.norm())
            .max(self.c.norm());
        plus.min(minus)
    }

    /// Scale of the entries, used to decide when c is effectively zero.
    fn entry_scale(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
            .max(1.0)
    }

    /// Roots of cz² + (d − a)z − b = 0 on the extended plane: one point for
    /// a parabolic, two otherwise.  Finite points come before ∞.
    pub fn fixed_points(&self) -> Result<Vec<Point>, Error> {
        let class = self.classify();
        if class == MapClass::Identity {
            return Err(Error::FixedPointsUndefined);
        }
        if self.c.norm() <= 1e-13 * self.entry_scale() {
            // Affine map az + b over d: fixes ∞, and b/(d − a) when a ≠ d.
            if class == MapClass::Parabolic {
                return Ok(vec![Point::Infinity]);
            }
            return Ok(vec![
                Point::Finite(self.b / (self.d - self.a)),
                Point::Infinity,
            ]);
        }
        let half = (self.a - self.d) / (2.0 * self.c);
        if class == MapClass::Parabolic {
            return Ok(vec![Point::Finite(half)]);
        }
        // discriminant (d − a)² + 4bc = tr² − 4 for det-1 matrices
        let tr = self.trace();
        let s = principal_sqrt(tr * tr - Complex64::new(4.0, 0.0)) / (2.0 * self.c);
        Ok(vec![Point::Finite(half + s), Point::Finite(half - s)])
    }

    /// Isometric circle |cz + d| = 1: centre −d/c, radius 1/|c|.
    pub fn isometric_circle(&self) -> Result<Circle, Error> {
        if self.c.norm() <= 1e-13 * self.entry_scale() {
            return Err(Error::IsometricCircleUndefined);
        }
        Ok(Circle::round(-self.d / self.c, 1.0 / self.c.norm()))
    }
}

impl Mobius {
    /// Matrix product, reporting failure instead of panicking when entries
    /// have overflowed to the point that the product is numerically
    /// singular or non-finite.
    ///
    /// The product is deliberately *not* re-normalised: determinants are
    /// exactly multiplicative, so products of det-1 maps stay det-1, while
    /// the det *computed* from a product's large entries carries
    /// cancellation noise of order ε·|entries|² — dividing by its square
    /// root would inject that noise into otherwise polynomial-exact
    /// entries.
    pub fn checked_mul(&self, rhs: &Mobius) -> Result<Mobius, Error> {
        let m = Mobius::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        );
        let det = m.det();
        if !det.is_finite() || det.norm() < 1e-14 {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        self.checked_mul(&rhs)
            .expect("product of invertible maps is invertible")
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
