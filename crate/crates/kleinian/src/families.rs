//! Parameterised families of Kleinian-group generators and their trace
//! identities: the compression-body family G(α, β, λ), the hexagonal
//! circle-pattern (dihedral angle) family inside it, the grandma genus-2
//! normalisation, the Riley groups, and the double-pendulum reflection
//! family — plus affine parameter paths through all of them.

use num_complex::Complex64;

use crate::mobius::{principal_sqrt, Mobius};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Parameters (α, β, λ) of the compression-body family
/// P = [[1, α], [0, 1]], Q = [[1, β], [0, 1]], M = [[λ, λ² − 1], [1, λ]].
#[derive(Debug, Copy, Clone, PartialEq)]
pub struct CompressionBodyParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub lambda: Complex64,
}

/// The generators [P, Q, M] of G(α, β, λ).  All three have determinant 1
/// by construction (λ² − (λ² − 1) = 1).
pub fn compression_body(p: &CompressionBodyParams) -> [Mobius; 3] {
    let one = re(1.0);
    let zero = re(0.0);
    [
        Mobius::new(one, p.alpha, zero, one),
        Mobius::new(one, p.beta, zero, one),
        Mobius::new(p.lambda, p.lambda * p.lambda - one, one, p.lambda),
    ]
}

/// The hexagonal-pattern family: α = 2 + 2cos δ + 2i sin δ, β = ᾱ, λ = 1,
/// where δ is the dihedral angle at the vertex +1 of the hexagon of
/// tangent unit circles.
///
/// CP3 only forces α = ±β̄; we take β = ᾱ because that is the choice
/// reproducing the trace identity tr(P⁻¹MQ⁻¹) = 2 − α − β = −2 − 4cos δ
/// (the worked groups with β = −2ᾱ and similar are index-two re-markings
/// of these).
pub fn delta_family(delta: f64) -> CompressionBodyParams {
    let alpha = Complex64::new(2.0 + 2.0 * delta.cos(), 2.0 * delta.sin());
    CompressionBodyParams {
        alpha,
        beta: alpha.conj(),
        lambda: re(1.0),
    }
}

/// One overlapping (neither equal nor tangent) pair of pattern circles:
/// Cᵢ against the lattice translate mα + nβ + Cⱼ.
#[derive(Debug, Copy, Clone)]
pub struct CpViolation {
    pub m: i64,
    pub n: i64,
    pub i: usize,
    pub j: usize,
    /// distance between the two centres (tangency would be 2, equality 0)
    pub distance: f64,
}

/// Residuals of the circle-pattern conditions for G(α, β, 1), reported
/// rather than rejected: the degenerate valence-4/5/6 patterns are
/// legitimate groups that violate naive readings of the overlap condition.
#[derive(Debug, Clone)]
pub struct CpReport {
    /// |α|² − 4ℜ(α), the parabolicity condition on the vertex cycle MP⁻¹MQ⁻¹
    pub eq_star_residual: f64,
    /// tangency residuals of α + C₁ and β + C₁ against C₂
    pub cp1_residuals: [f64; 2],
    /// overlapping non-coincident translate pairs within the search bound
    pub cp2_violations: Vec<CpViolation>,
    /// min(|α − β̄|, |α + β̄|): symmetry of the lattice quadrilateral
    pub cp3_residual: f64,
}

impl CpReport {
    pub fn worst_tangency_residual(&self) -> f64 {
        self.cp1_residuals[0].max(self.cp1_residuals[1])
    }
}

/// Check the pattern conditions for the paired unit circles C₁, C₂ centred
/// at ∓1 against all lattice translates mα + nβ with |m|, |n| ≤ bound.
/// The configuration assumes λ = 1 (C₁, C₂ are then the isometric circles
/// of M); λ itself does not enter the test.
pub fn check_cp_conditions(p: &CompressionBodyParams, bound: i64) -> CpReport {
    const TOL: f64 = 1e-9;
    let centres = [re(-1.0), re(1.0)];

    // CP1: |centre(α + C₁) − centre(C₂)| should be r + r = 2
    let cp1 = [
        ((p.alpha - re(2.0)).norm() - 2.0).abs(),
        ((p.beta - re(2.0)).norm() - 2.0).abs(),
    ];

    let mut violations = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let shift = p.alpha * re(m as f64) + p.beta * re(n as f64);
            for i in 0..2 {
                for j in 0..2 {
                    if m == 0 && n == 0 && i == j {
                        continue;
                    }
                    let d = (centres[i] - (centres[j] + shift)).norm();
                    // equal (d = 0) and tangent (d = 2) are allowed; only a
                    // strict overlap in between breaks the pattern
                    if d > TOL && d < 2.0 - TOL {
                        violations.push(CpViolation {
                            m,
                            n,
                            i,
                            j,
                            distance: d,
                        });
                    }
                }
            }
        }
    }

    CpReport {
        eq_star_residual: (p.alpha.norm_sqr() - 4.0 * p.alpha.re).abs(),
        cp1_residuals: cp1,
        cp2_violations: violations,
        cp3_residual: (p.alpha - p.beta.conj())
            .norm()
            .min((p.alpha + p.beta.conj()).norm()),
    }
}

/// Trace coordinates (t_X, t_Y, t_XY) of a marked genus-2 group.
#[derive(Debug, Copy, Clone, PartialEq)]
pub struct GrandmaParams {
    pub t_x: Complex64,
    pub t_y: Complex64,
    pub t_xy: Complex64,
}

impl GrandmaParams {
    pub fn new(t_x: Complex64, t_y: Complex64, t_xy: Complex64) -> GrandmaParams {
        GrandmaParams { t_x, t_y, t_xy }
    }

    /// The auxiliary root v with v² = 4 − t_XY² (principal branch; the
    /// conjugate choice gives a conjugate group, so traces are unaffected).
    pub fn v(&self) -> Complex64 {
        principal_sqrt(re(4.0) - self.t_xy * self.t_xy)
    }
}

/// The grandma normalisation of a genus-2 generating pair:
///
/// ```text
/// X = [ (t_X + i·t_XY)/2   −(t_X + v)/2 ]     Y = [ t_Y/2 − i   t_Y/2     ]
///     [ −(t_X − v)/2        (t_X − i·t_XY)/2 ]    [ t_Y/2       t_Y/2 + i ]
/// ```
///
/// Both determinants are 1 identically, and tr X = t_X, tr Y = t_Y,
/// tr XY = t_XY.
pub fn grandma(p: &GrandmaParams) -> [Mobius; 2] {
    let i = Complex64::new(0.0, 1.0);
    let half = re(0.5);
    let v = p.v();
    let x = Mobius::new(
        half * (p.t_x + i * p.t_xy),
        -half * (p.t_x + v),
        -half * (p.t_x - v),
        half * (p.t_x - i * p.t_xy),
    );
    let y = Mobius::new(
        half * p.t_y - i,
        half * p.t_y,
        half * p.t_y,
        half * p.t_y + i,
    );
    [x, y]
}

/// The Riley group generators X = [[1, 1], [0, 1]], Y = [[1, 0], [z, 1]];
/// tr XY = 2 + z.
pub fn riley(z: Complex64) -> [Mobius; 2] {
    let one = re(1.0);
    let zero = re(0.0);
    [
        Mobius::new(one, one, zero, one),
        Mobius::new(one, zero, z, one),
    ]
}

/// The double-pendulum matrices before determinant normalisation.
///
/// Two rods of length 2 hinged at 0, at angles πx and πy: reflections in
/// the unit circles centred on the three joints 0, 2e^{iπx},
/// 2e^{iπx} + 2e^{iπy} compose pairwise to these maps.  Determinants are
/// e^{2iπx}, e^{2iπy} and e^{2iπ(x+y)} respectively.
pub fn pendulum_raw(x: f64, y: f64) -> [Mobius; 3] {
    use std::f64::consts::PI;
    let ex = Complex64::cis(PI * x);
    let ey = Complex64::cis(PI * y);
    let m1 = Mobius::new(-ex, re(2.0) * ex * ex, re(-2.0), re(3.0) * ex);
    let m2 = Mobius::new(
        re(-4.0) * ex - ey,
        re(8.0) * ex * ex + re(8.0) * ex * ey + re(2.0) * ey * ey,
        re(-2.0),
        re(4.0) * ex + re(3.0) * ey,
    );
    let m3 = Mobius::new(
        re(-7.0) * ex * ey - re(4.0) * ey * ey - re(4.0) * ex * ex,
        re(2.0) * ex * ex * ey + re(2.0) * ex * ey * ey,
        re(-2.0) * ex - re(2.0) * ey,
        ex * ey,
    );
    [m1, m2, m3]
}

/// [`pendulum_raw`] with each matrix scaled to determinant 1.
pub fn pendulum(x: f64, y: f64) -> [Mobius; 3] {
    pendulum_raw(x, y).map(|m| {
        m.normalize_det()
            .expect("pendulum determinants are unit-modulus phases")
    })
}

/// A one-parameter family of generating sets: a template instantiated
/// along the affine path t ↦ p₀ + t(p₁ − p₀) in its parameter space, or a
/// fixed explicit list.
///
/// The pendulum's two real parameters are packed into one complex number
/// x + iy, matching how its phase space is drawn as a complex plane.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    CompressionBody {
        p0: [Complex64; 3],
        p1: [Complex64; 3],
    },
    Grandma {
        p0: [Complex64; 3],
        p1: [Complex64; 3],
    },
    Riley {
        p0: Complex64,
        p1: Complex64,
    },
    Pendulum {
        p0: Complex64,
        p1: Complex64,
    },
    Explicit {
        generators: Vec<Mobius>,
        names: Vec<String>,
    },
}

fn lerp(p0: Complex64, p1: Complex64, t: Complex64) -> Complex64 {
    p0 + t * (p1 - p0)
}

impl FamilySpec {
    pub fn generator_count(&self) -> usize {
        match self {
            FamilySpec::CompressionBody { .. } | FamilySpec::Pendulum { .. } => 3,
            FamilySpec::Grandma { .. } | FamilySpec::Riley { .. } => 2,
            FamilySpec::Explicit { generators, .. } => generators.len(),
        }
    }

    /// The word identifications the family's presentation is known to
    /// satisfy: lattice translations P and Q commute in compression-body
    /// groups; elsewhere words are only freely reduced.
    pub fn reduction(&self) -> crate::words::Reduction {
        match self {
            FamilySpec::CompressionBody { .. } => crate::words::Reduction::CommutingPair(0, 1),
            _ => crate::words::Reduction::Free,
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self {
            FamilySpec::CompressionBody { .. } => vec!["P".into(), "Q".into(), "M".into()],
            FamilySpec::Grandma { .. } | FamilySpec::Riley { .. } => {
                vec!["X".into(), "Y".into()]
            }
            FamilySpec::Pendulum { .. } => vec!["M1".into(), "M2".into(), "M3".into()],
            FamilySpec::Explicit { names, .. } => names.clone(),
        }
    }

    /// Instantiate the generators at path parameter t.
    pub fn generators_at(&self, t: Complex64) -> Vec<Mobius> {
        match self {
            FamilySpec::CompressionBody { p0, p1 } => {
                let p = CompressionBodyParams {
                    alpha: lerp(p0[0], p1[0], t),
                    beta: lerp(p0[1], p1[1], t),
                    lambda: lerp(p0[2], p1[2], t),
                };
                compression_body(&p).to_vec()
            }
            FamilySpec::Grandma { p0, p1 } => {
                let p = GrandmaParams::new(
                    lerp(p0[0], p1[0], t),
                    lerp(p0[1], p1[1], t),
                    lerp(p0[2], p1[2], t),
                );
                grandma(&p).to_vec()
            }
            FamilySpec::Riley { p0, p1 } => riley(lerp(*p0, *p1, t)).to_vec(),
            FamilySpec::Pendulum { p0, p1 } => {
                let z = lerp(*p0, *p1, t);
                pendulum(z.re, z.im).to_vec()
            }
            FamilySpec::Explicit { generators, .. } => generators.clone(),
        }
    }

    /// The Solomon's-seal slice t ↦ G(2 + 2it, 2 − 2it, 1): t = 0 is the
    /// Fuchsian lattice point, t = 1 the Solomon cusp.
    pub fn solomon() -> FamilySpec {
        FamilySpec::CompressionBody {
            p0: [re(2.0), re(2.0), re(1.0)],
            p1: [
                Complex64::new(2.0, 2.0),
                Complex64::new(2.0, -2.0),
                re(1.0),
            ],
        }
    }

    /// The slice through the Whitehead-link cusp G(−2−2i, 1−i, 1) at t = 0
    /// and the hexagonal δ = 2π/3 pattern group G(1+i√3, −2+2i√3, 1) at
    /// t = 1.
    pub fn whitehead() -> FamilySpec {
        let s3 = 3.0f64.sqrt();
        FamilySpec::CompressionBody {
            p0: [
                Complex64::new(-2.0, -2.0),
                Complex64::new(1.0, -1.0),
                re(1.0),
            ],
            p1: [
                Complex64::new(1.0, s3),
                Complex64::new(-2.0, 2.0 * s3),
                re(1.0),
            ],
        }
    }

    /// The λ-slice t ↦ G(2 + 2i√3, −1 + i√3, t) through the re-marked
    /// hexagonal cusp at λ = 1.
    pub fn horizontal_lambda() -> FamilySpec {
        let s3 = 3.0f64.sqrt();
        let alpha = Complex64::new(2.0, 2.0 * s3);
        let beta = Complex64::new(-1.0, s3);
        FamilySpec::CompressionBody {
            p0: [alpha, beta, re(0.0)],
            p1: [alpha, beta, re(1.0)],
        }
    }

    /// The diagonal slice of genus-2 Schottky space: the affine path from
    /// the boundary point (−2,−2,−2) at t = 0 to the interior Schottky
    /// point (−3,−3,−3) at t = 1, i.e. all three trace coordinates −2 − t.
    pub fn diagonal_schottky() -> FamilySpec {
        FamilySpec::Grandma {
            p0: [re(-2.0); 3],
            p1: [re(-3.0); 3],
        }
    }

    /// The slice of genus-2 trace space spanned by the two discrete groups
    /// arising from the 8₅ knot: a cofinite orbifold group at t = 0 and a
    /// boundary cusp group at t = 1.
    pub fn eight_five() -> FamilySpec {
        FamilySpec::Grandma {
            p0: [
                Complex64::new(2.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, -2.0),
            ],
            p1: [
                Complex64::new(0.7607, 0.8579),
                Complex64::new(-0.7607, -0.8579),
                Complex64::new(2.3146, -2.6103),
            ],
        }
    }

    /// The double-pendulum phase plane: t = x + iy directly.
    pub fn double_pendulum() -> FamilySpec {
        FamilySpec::Pendulum {
            p0: re(0.0),
            p1: re(1.0),
        }
    }
}
