use thiserror::Error;

/// Errors shared across the crate.
///
/// Numerical failures carry enough context to report which construction
/// broke and where; callers that want a process exit code can map
/// validation errors and numerical errors separately.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular matrix")]
    SingularMatrix,

    #[error("fixed points undefined")]
    FixedPointsUndefined,

    #[error("isometric circle undefined (fixes ∞)")]
    IsometricCircleUndefined,

    #[error("polygon refinement exceeded {0} insertion rounds")]
    RefinementDiverged(usize),

    #[error("necklace needs at least three circles, got {0}")]
    TooFewCircles(usize),

    #[error("spiral step {step}: tangency nudge failed to land in the accepted band after {passes} passes")]
    SpiralNudgeFailed { step: usize, passes: usize },

    #[error("polygon is not refined: vertex {j} is closer to vertex {i} than {i}'s nearest edge-neighbour")]
    NotRefined { i: usize, j: usize },

    #[error("necklace circles {index} and {next} are not tangent")]
    NotTangent { index: usize, next: usize },

    #[error("word count limit exceeded: enumeration would produce {would} words, cap is {cap}")]
    WordCapExceeded { would: u64, cap: u64 },

    #[error("word references generator {index} but only {count} generators were given")]
    GeneratorIndexOutOfRange { index: usize, count: usize },

    #[error("empty word list")]
    EmptyWordList,

    #[error("unknown generator name `{0}` in word")]
    UnknownGenerator(String),

    #[error("malformed word `{0}`")]
    MalformedWord(String),

    #[error("every candidate word is masked at the baseline point; nothing to render")]
    AllWordsMasked,

    #[error("raster dimensions must be positive, got {width}×{height}")]
    BadRasterSize { width: usize, height: usize },

    #[error("window width and height must be positive")]
    BadWindow,

    #[error("orbit size {size} exceeds cap {cap}; lower the depth or use the chaos game")]
    OrbitCapExceeded { size: usize, cap: usize },

    #[error("chaos game needs at least one generator")]
    NoGenerators,

    #[error("slope must satisfy 0 < p < q with gcd(p, q) = 1, got {p}/{q}")]
    BadSlope { p: u64, q: u64 },

    #[error("circle |z| = {0} is not a valid start: |tr W| must exceed 2 everywhere on it and cross the real axis")]
    NoCircleCrossing(f64),

    #[error("Newton iteration failed to converge after {iters} steps (|f − target| = {residual:.3e})")]
    NewtonDiverged { iters: usize, residual: f64 },

    #[error("{0}")]
    Invalid(String),
}
