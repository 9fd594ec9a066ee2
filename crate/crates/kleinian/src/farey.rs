//! Farey words of two-bridge slopes and their trace polynomials.
//!
//! The slope-p/q two-bridge link group has presentation ⟨X, Y : W_{p/q}⟩
//! where the Farey word W_{p/q} alternates X^{±1} (odd positions) and
//! Y^{±1} (even positions) for 2q letters, the i-th exponent being
//! (−1)^{⌊ip/q⌋ − ⌊i/q⌋} — the floor-corrected cutting sequence of a line
//! of slope p/q.  In the normalisation where both generators are parabolic,
//!
//! ```text
//! X = [1 1]    Y = [1 0]
//!     [0 1]        [z 1]
//! ```
//!
//! tr W_{p/q}(z) is a degree-q polynomial in z whose level sets organise
//! the Riley slice: tr = 2 at cusps and knot groups, tr = 2cos(π/n) at
//! Heckoid points, real trace in (−2, 2) along conjectural cone-manifold
//! paths.  The continuation solver in [`crate::newton`] walks those paths.

use num_complex::Complex64;

use crate::error::Error;
use crate::families::riley;
use crate::words::{Letter, Reduction, Word};

/// A rational slope p/q in lowest terms with 0 < p < q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Slope {
    pub fn new(p: u64, q: u64) -> Result<Slope, Error> {
        if p == 0 || p >= q || gcd(p, q) != 1 {
            return Err(Error::BadSlope { p, q });
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The Farey word of the slope: 2q letters alternating X and Y, the i-th
/// raised to the sign (−1)^{⌊ip/q⌋ − ⌊i/q⌋}.
///
/// For the figure-eight slope this reproduces
/// W_{3/5} = X Y⁻¹ X⁻¹ Y X Y X⁻¹ Y⁻¹ X Y.
pub fn farey_word(s: Slope) -> Word {
    let letters = (1..=2 * s.q)
        .map(|i| {
            let gen = ((i + 1) % 2) as usize; // X at odd i, Y at even i
            let exponent = (i * s.p) / s.q - i / s.q;
            if exponent % 2 == 0 {
                Letter::plain(gen)
            } else {
                Letter::inv(gen)
            }
        })
        .collect();
    // adjacent letters always use different generators, so nothing reduces
    Word::from_letters(Reduction::Free, letters)
}

/// tr W_{p/q}(z) in the two-parabolic normalisation above — a degree-q
/// polynomial in z.
pub fn farey_trace(s: Slope, z: Complex64) -> Complex64 {
    farey_word(s)
        .evaluate(&riley(z))
        .expect("parabolic generators are invertible")
        .trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::Mobius;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn slope_validation() {
        assert!(Slope::new(3, 5).is_ok());
        assert!(Slope::new(1, 2).is_ok());
        for (p, q) in [(2, 4), (0, 3), (5, 3), (3, 3), (1, 0)] {
            match Slope::new(p, q) {
                Err(Error::BadSlope { p: ep, q: eq }) => assert_eq!((ep, eq), (p, q)),
                other => panic!("{}/{} accepted: {:?}", p, q, other),
            }
        }
        assert_eq!(Slope::new(3, 5).unwrap().to_string(), "3/5");
    }

    #[test]
    fn figure_eight_word_letter_for_letter() {
        let w = farey_word(Slope::new(3, 5).unwrap());
        assert_eq!(
            w.to_string_with(&["X", "Y"]),
            "X Y⁻¹ X⁻¹ Y X Y X⁻¹ Y⁻¹ X Y"
        );
    }

    #[test]
    fn farey_words_alternate_and_close_on_a_plain_letter() {
        for q in 2..=50u64 {
            for p in 1..q {
                if gcd(p, q) != 1 {
                    continue;
                }
                let w = farey_word(Slope::new(p, q).unwrap());
                assert_eq!(w.len() as u64, 2 * q, "length 2q at {}/{}", p, q);
                for (k, letter) in w.letters().iter().enumerate() {
                    assert_eq!(letter.gen, k % 2, "alternation broken at {}/{}", p, q);
                }
                assert!(!w.letters()[0].inverse, "first letter is plain X");
                assert!(
                    !w.letters()[w.len() - 1].inverse,
                    "last letter is plain Y at {}/{}",
                    p,
                    q
                );
            }
        }
    }

    #[test]
    fn half_slope_trace_is_the_quadratic() {
        // W_{1/2} = XYXY and tr (XY)² = tr²(XY) − 2 = (z+2)² − 2
        let s = Slope::new(1, 2).unwrap();
        assert_eq!(farey_word(s).to_string_with(&["X", "Y"]), "X Y X Y");
        for z in [c(0.0, 0.0), c(-4.0, 0.0), c(0.3, -0.7), c(-1.2, 2.5)] {
            let expected = (z + 2.0) * (z + 2.0) - 2.0;
            assert!((farey_trace(s, z) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn trace_is_a_degree_q_polynomial() {
        // (q+1)-th finite differences of a degree-q polynomial vanish;
        // step in a generic complex direction so no axis is special
        for (p, q) in [(1u64, 2u64), (1, 3), (2, 5), (3, 5), (3, 7), (4, 9)] {
            let s = Slope::new(p, q).unwrap();
            let h = c(0.23, 0.11);
            let mut diffs: Vec<Complex64> = (0..2 * q + 2)
                .map(|j| farey_trace(s, c(-0.4, 0.9) + h * j as f64))
                .collect();
            let scale = diffs.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for _ in 0..=q {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let worst = diffs.iter().map(|v| v.norm()).fold(0.0, f64::max);
            assert!(
                worst < 1e-6 * scale,
                "degree exceeds {} at {}/{}: residue {:.3e} of scale {:.3e}",
                q,
                p,
                q,
                worst,
                scale
            );
        }
    }

    #[test]
    fn figure_eight_caption_points() {
        // the cusp and knot-group parameters are printed to 4 decimals, so
        // traces land on ∓2 only to caption precision
        let s = Slope::new(3, 5).unwrap();
        let cusp = farey_trace(s, c(-0.7733, 1.4677));
        assert!((cusp - c(-2.0, 0.0)).norm() < 2e-3, "cusp trace {}", cusp);
        let knot = farey_trace(s, c(-0.5, 0.8660));
        assert!((knot - c(2.0, 0.0)).norm() < 2e-3, "knot trace {}", knot);
    }

    #[test]
    fn knot_group_point_in_exact_form() {
        // z = e^{2πi/3} is the exact figure-eight knot parameter; report
        // whether the relator is ±Id there or merely has trace 2
        let s = Slope::new(3, 5).unwrap();
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let m = farey_word(s).evaluate(&riley(z)).unwrap();
        assert!((m.trace() - 2.0).norm() < 1e-9, "trace {}", m.trace());
        let id = Mobius::identity();
        let to_plus = (m.a - id.a).norm().max((m.b - id.b).norm())
            .max((m.c - id.c).norm())
            .max((m.d - id.d).norm());
        let to_minus = (m.a + id.a).norm().max((m.b + id.b).norm())
            .max((m.c + id.c).norm())
            .max((m.d + id.d).norm());
        println!(
            "W_3/5 at the knot point: distance {:.3e} to Id, {:.3e} to −Id",
            to_plus, to_minus
        );
    }
}
