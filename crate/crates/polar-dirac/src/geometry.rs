//! Flat spherical background: metric, Christoffel symbols, tetrads, spin
//! connection, curvatures, tensorial connection and gauge momentum.
//!
//! Coordinates are ordered (t, r, θ, φ); every field depends on (r, θ) only,
//! with t and φ cyclic. Fields are closed-form evaluators rather than grids,
//! so derivatives are analytic where formulas are known and central
//! differences otherwise.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::clifford::{epsilon, CVec4, GammaBasis, C64, ETA};
use crate::fd::{central, stencil, Scheme};
use crate::{Error, Result, Ten2, Ten3, Ten4, Vec4};

const I: C64 = C64::new(0.0, 1.0);

/// Smallest radius of the validity domain.
pub const R_MIN: f64 = 0.05;
/// Smallest distance of θ from the coordinate axis.
pub const THETA_MARGIN: f64 = 0.05;

/// Coordinate directions in the fixed (t, r, θ, φ) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    T = 0,
    R = 1,
    Theta = 2,
    Phi = 3,
}

impl Dir {
    pub fn all() -> [Dir; 4] {
        [Dir::T, Dir::R, Dir::Theta, Dir::Phi]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Dir {
        Dir::all()[i]
    }
}

/// How a field derivative is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivKind {
    Analytic,
    Fd { h: f64, scheme: Scheme },
}

impl DerivKind {
    pub fn default_fd() -> Self {
        DerivKind::Fd { h: 1e-3, scheme: Scheme::Central4 }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DerivKind::Analytic => "analytic",
            DerivKind::Fd { .. } => "fd",
        }
    }
}

/// Rectangular sampling grid over (r, θ).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Grid {
    pub nr: usize,
    pub ntheta: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub theta_min: f64,
    pub theta_max: f64,
}

impl Grid {
    /// Default certification grid: 32×32 over r ∈ [0.2, 4], θ ∈ [0.3, π−0.3].
    pub fn standard() -> Self {
        Grid { nr: 32, ntheta: 32, r_min: 0.2, r_max: 4.0, theta_min: 0.3, theta_max: PI - 0.3 }
    }

    /// Coarser 16×16 grid over the same window.
    pub fn coarse() -> Self {
        Grid { nr: 16, ntheta: 16, ..Self::standard() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nr < 4 || self.ntheta < 4 {
            return Err(Error::InvalidParameter("grid needs at least 4 points per axis".into()));
        }
        if !(self.r_min >= R_MIN && self.r_max > self.r_min) {
            return Err(Error::InvalidParameter(format!(
                "radial range [{}, {}] must sit inside [{R_MIN}, ∞)",
                self.r_min, self.r_max
            )));
        }
        if !(self.theta_min >= THETA_MARGIN
            && self.theta_max > self.theta_min
            && self.theta_max <= PI - THETA_MARGIN)
        {
            return Err(Error::InvalidParameter(format!(
                "polar range [{}, {}] must sit inside [{THETA_MARGIN}, π−{THETA_MARGIN}]",
                self.theta_min, self.theta_max
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.nr * self.ntheta);
        for i in 0..self.nr {
            let r = self.r_min + (self.r_max - self.r_min) * i as f64 / (self.nr - 1) as f64;
            for j in 0..self.ntheta {
                let th = self.theta_min
                    + (self.theta_max - self.theta_min) * j as f64 / (self.ntheta - 1) as f64;
                pts.push((r, th));
            }
        }
        pts
    }
}

/// Diagonal of g_μν = diag(1, −1, −r², −r² sin²θ).
pub fn metric_diag(r: f64, theta: f64) -> Vec4 {
    let s = theta.sin();
    [1.0, -1.0, -r * r, -r * r * s * s]
}

/// Diagonal of the inverse metric.
pub fn inverse_metric_diag(r: f64, theta: f64) -> Vec4 {
    let s = theta.sin();
    [1.0, -1.0, -1.0 / (r * r), -1.0 / (r * r * s * s)]
}

/// √(−det g) = r² sin θ.
pub fn sqrt_neg_det(r: f64, theta: f64) -> f64 {
    r * r * theta.sin()
}

/// Analytic ∂_dir g_νν (diagonal metric).
pub fn metric_diag_partial(r: f64, theta: f64, dir: Dir) -> Vec4 {
    let (s, c) = theta.sin_cos();
    match dir {
        Dir::R => [0.0, 0.0, -2.0 * r, -2.0 * r * s * s],
        Dir::Theta => [0.0, 0.0, 0.0, -2.0 * r * r * s * c],
        _ => [0.0; 4],
    }
}

/// Coordinate Levi-Civita tensor with lower indices, ε_trθφ = +r² sin θ.
pub fn epsilon_coord_lower(r: f64, theta: f64, a: usize, b: usize, c: usize, d: usize) -> f64 {
    sqrt_neg_det(r, theta) * epsilon(a, b, c, d)
}

/// Coordinate Levi-Civita tensor with upper indices, ε^trθφ = −1/(r² sin θ).
pub fn epsilon_coord_upper(r: f64, theta: f64, a: usize, b: usize, c: usize, d: usize) -> f64 {
    -epsilon(a, b, c, d) / sqrt_neg_det(r, theta)
}

/// Christoffel symbols Λ^ν_σμ of the flat spherical metric, `[nu][sigma][mu]`.
///
/// The only non-zero families are Λ^θ_θr = Λ^φ_φr = 1/r, Λ^r_θθ = −r,
/// Λ^r_φφ = −r sin²θ, Λ^φ_φθ = cot θ and Λ^θ_φφ = −cos θ sin θ.
pub fn christoffel(r: f64, theta: f64) -> Ten3 {
    debug_assert!(r > 0.0 && theta > 0.0 && theta < PI);
    let (s, c) = theta.sin_cos();
    let mut g = [[[0.0; 4]; 4]; 4];
    let (t, rr, th, ph) = (0usize, 1usize, 2usize, 3usize);
    let _ = t;
    g[th][th][rr] = 1.0 / r;
    g[th][rr][th] = 1.0 / r;
    g[ph][ph][rr] = 1.0 / r;
    g[ph][rr][ph] = 1.0 / r;
    g[rr][th][th] = -r;
    g[rr][ph][ph] = -r * s * s;
    g[ph][ph][th] = c / s;
    g[ph][th][ph] = c / s;
    g[th][ph][ph] = -c * s;
    g
}

/// Analytic ∂_dir of the Christoffel symbols.
fn christoffel_partial(r: f64, theta: f64, dir: Dir) -> Ten3 {
    let (s, c) = theta.sin_cos();
    let mut g = [[[0.0; 4]; 4]; 4];
    let (rr, th, ph) = (1usize, 2usize, 3usize);
    match dir {
        Dir::R => {
            g[th][th][rr] = -1.0 / (r * r);
            g[th][rr][th] = -1.0 / (r * r);
            g[ph][ph][rr] = -1.0 / (r * r);
            g[ph][rr][ph] = -1.0 / (r * r);
            g[rr][th][th] = -1.0;
            g[rr][ph][ph] = -s * s;
        }
        Dir::Theta => {
            g[rr][ph][ph] = -2.0 * r * s * c;
            g[ph][ph][th] = -1.0 / (s * s);
            g[ph][th][ph] = -1.0 / (s * s);
            g[th][ph][ph] = s * s - c * c;
        }
        _ => {}
    }
    g
}

/// Riemann tensor of the coordinate Christoffels, evaluated analytically.
/// Vanishes identically: the metric is flat.
pub fn coordinate_riemann_analytic(r: f64, theta: f64) -> Ten4 {
    let gam = christoffel(r, theta);
    let dg = [
        [[[0.0; 4]; 4]; 4],
        christoffel_partial(r, theta, Dir::R),
        christoffel_partial(r, theta, Dir::Theta),
        [[[0.0; 4]; 4]; 4],
    ];
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut v = dg[mu][a][b][nu] - dg[nu][a][b][mu];
                    for s in 0..4 {
                        v += gam[a][s][mu] * gam[s][b][nu] - gam[a][s][nu] * gam[s][b][mu];
                    }
                    out[a][b][mu][nu] = v;
                }
            }
        }
    }
    out
}

type F2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type Ten2F = Arc<dyn Fn(f64, f64) -> Ten2 + Send + Sync>;
type Ten3F = Arc<dyn Fn(f64, f64) -> Ten3 + Send + Sync>;
type Vec4F = Arc<dyn Fn(f64, f64) -> Vec4 + Send + Sync>;
type SpinF = Arc<dyn Fn(f64, f64) -> CVec4 + Send + Sync>;

/// Scalar field over (r, θ) with optional closed-form partials.
#[derive(Clone)]
pub struct ScalarField {
    value: F2,
    partial_r: Option<F2>,
    partial_theta: Option<F2>,
}

impl ScalarField {
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField { value: Arc::new(f), partial_r: None, partial_theta: None }
    }

    pub fn with_partials(
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        fr: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        ftheta: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            value: Arc::new(f),
            partial_r: Some(Arc::new(fr)),
            partial_theta: Some(Arc::new(ftheta)),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::with_partials(move |_, _| c, |_, _| 0.0, |_, _| 0.0)
    }

    pub fn has_partials(&self) -> bool {
        self.partial_r.is_some() && self.partial_theta.is_some()
    }

    pub fn value(&self, r: f64, theta: f64) -> f64 {
        (self.value)(r, theta)
    }

    /// ∂ along a coordinate direction; t and φ derivatives vanish.
    pub fn partial(&self, r: f64, theta: f64, dir: Dir, kind: DerivKind) -> f64 {
        match dir {
            Dir::T | Dir::Phi => 0.0,
            Dir::R | Dir::Theta => match kind {
                DerivKind::Analytic => {
                    let p = if dir == Dir::R { &self.partial_r } else { &self.partial_theta };
                    let p = p
                        .as_ref()
                        .expect("analytic derivative requested on a field without partials");
                    p(r, theta)
                }
                DerivKind::Fd { h, scheme } => {
                    let f = self.value.clone();
                    if dir == Dir::R {
                        central(move |x| f(x, theta), r, h, scheme)
                    } else {
                        central(move |x| f(r, x), theta, h, scheme)
                    }
                }
            },
        }
    }

    /// Gradient (∂_t, ∂_r, ∂_θ, ∂_φ); the cyclic entries are zero.
    pub fn gradient(&self, r: f64, theta: f64, kind: DerivKind) -> Vec4 {
        std::array::from_fn(|mu| self.partial(r, theta, Dir::from_index(mu), kind))
    }
}

/// First derivative of a scalar field with an explicit stencil-domain check.
pub fn fd_derivative(
    field: &ScalarField,
    r: f64,
    theta: f64,
    dir: Dir,
    h: f64,
    scheme: Scheme,
) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let reach = match scheme {
        Scheme::Central2 => h,
        Scheme::Central4 => 2.0 * h,
    };
    let inside = match dir {
        Dir::R => r - reach > 0.0,
        Dir::Theta => theta - reach > 0.0 && theta + reach < PI,
        Dir::T | Dir::Phi => true,
    };
    if !inside {
        return Err(Error::OutsideDomain { r, theta });
    }
    Ok(field.partial(r, theta, dir, DerivKind::Fd { h, scheme }))
}

/// Orthonormal frame field ξᵃ_μ together with its dual ξ_a^μ.
#[derive(Clone)]
pub struct TetradField {
    xi: Ten2F,
    dual: Ten2F,
}

impl TetradField {
    pub fn new(
        xi: impl Fn(f64, f64) -> Ten2 + Send + Sync + 'static,
        dual: impl Fn(f64, f64) -> Ten2 + Send + Sync + 'static,
    ) -> Self {
        TetradField { xi: Arc::new(xi), dual: Arc::new(dual) }
    }

    /// ξᵃ_μ as `xi[a][mu]`.
    pub fn xi(&self, r: f64, theta: f64) -> Ten2 {
        (self.xi)(r, theta)
    }

    /// ξ_a^μ as `dual[a][mu]`.
    pub fn dual(&self, r: f64, theta: f64) -> Ten2 {
        (self.dual)(r, theta)
    }

    /// Max deviation from ξᵃ_μ ξ_b^μ = δᵃ_b and ξᵃ_μ ξᵇ_ν η_ab = g_μν.
    pub fn orthonormality_residual(&self, r: f64, theta: f64) -> f64 {
        let xi = self.xi(r, theta);
        let dual = self.dual(r, theta);
        let g = metric_diag(r, theta);
        let mut dev: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let mut sum = 0.0;
                for mu in 0..4 {
                    sum += xi[a][mu] * dual[b][mu];
                }
                dev = dev.max((sum - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        for mu in 0..4 {
            for nu in 0..4 {
                let mut sum = 0.0;
                for a in 0..4 {
                    sum += xi[a][mu] * xi[a][nu] * ETA[a];
                }
                let target = if mu == nu { g[mu] } else { 0.0 };
                dev = dev.max((sum - target).abs());
            }
        }
        dev
    }
}

/// Spin connection Ω_abμ, antisymmetric in (a, b), as `omega[a][b][mu]`.
#[derive(Clone)]
pub struct SpinConnectionField {
    omega: Ten3F,
}

impl SpinConnectionField {
    pub fn new(f: impl Fn(f64, f64) -> Ten3 + Send + Sync + 'static) -> Self {
        SpinConnectionField { omega: Arc::new(f) }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| [[[0.0; 4]; 4]; 4])
    }

    pub fn value(&self, r: f64, theta: f64) -> Ten3 {
        (self.omega)(r, theta)
    }
}

/// Tensorial connection R_αβμ in coordinate indices, `r[alpha][beta][mu]`,
/// antisymmetric in the first pair.
#[derive(Clone)]
pub struct TensorialConnectionField {
    r: Ten3F,
}

impl TensorialConnectionField {
    pub fn new(f: impl Fn(f64, f64) -> Ten3 + Send + Sync + 'static) -> Self {
        TensorialConnectionField { r: Arc::new(f) }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| [[[0.0; 4]; 4]; 4])
    }

    pub fn value(&self, r: f64, theta: f64) -> Ten3 {
        (self.r)(r, theta)
    }

    /// Largest antisymmetry violation in the first index pair.
    pub fn antisymmetry_residual(&self, r: f64, theta: f64) -> f64 {
        let v = self.value(r, theta);
        let mut dev: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for mu in 0..4 {
                    dev = dev.max((v[a][b][mu] + v[b][a][mu]).abs());
                }
            }
        }
        dev
    }
}

/// Lorentz-index form R_ijμ = ξ_i^α ξ_j^β R_αβμ.
pub fn connection_to_lorentz(coord: &Ten3, tetrad: &TetradField, r: f64, theta: f64) -> Ten3 {
    let dual = tetrad.dual(r, theta);
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for mu in 0..4 {
                let mut v = 0.0;
                for al in 0..4 {
                    for be in 0..4 {
                        v += dual[i][al] * dual[j][be] * coord[al][be][mu];
                    }
                }
                out[i][j][mu] = v;
            }
        }
    }
    out
}

/// Coordinate-index form R_αβμ = ξ^i_α ξ^j_β R_ijμ.
pub fn connection_to_coordinate(lorentz: &Ten3, tetrad: &TetradField, r: f64, theta: f64) -> Ten3 {
    let xi = tetrad.xi(r, theta);
    let mut out = [[[0.0; 4]; 4]; 4];
    for al in 0..4 {
        for be in 0..4 {
            for mu in 0..4 {
                let mut v = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        v += xi[i][al] * xi[j][be] * lorentz[i][j][mu];
                    }
                }
                out[al][be][mu] = v;
            }
        }
    }
    out
}

/// Gauge momentum P_μ with its charge and background potential.
#[derive(Clone)]
pub struct GaugeMomentumField {
    p: Vec4F,
    pub charge: f64,
    pub potential: Vec4F,
}

impl GaugeMomentumField {
    pub fn new(
        p: impl Fn(f64, f64) -> Vec4 + Send + Sync + 'static,
        charge: f64,
        potential: impl Fn(f64, f64) -> Vec4 + Send + Sync + 'static,
    ) -> Self {
        GaugeMomentumField { p: Arc::new(p), charge, potential: Arc::new(potential) }
    }

    /// Constant momentum with unit charge and no potential.
    pub fn constant(p: Vec4) -> Self {
        Self::new(move |_, _| p, 1.0, |_, _| [0.0; 4])
    }

    /// P_μ = q(∂_μξ − A_μ) for a static gauge function ξ(r, θ) extended
    /// linearly in the cyclic coordinates.
    pub fn from_gauge(
        charge: f64,
        gauge: ScalarField,
        linear_t: f64,
        linear_phi: f64,
        potential: impl Fn(f64, f64) -> Vec4 + Send + Sync + 'static,
    ) -> Self {
        let pot = Arc::new(potential);
        let pot2 = pot.clone();
        let kind = DerivKind::default_fd();
        Self::new(
            move |r, th| {
                let a = pot2(r, th);
                let mut grad = gauge.gradient(r, th, if gauge.has_partials() {
                    DerivKind::Analytic
                } else {
                    kind
                });
                grad[0] += linear_t;
                grad[3] += linear_phi;
                std::array::from_fn(|mu| charge * (grad[mu] - a[mu]))
            },
            charge,
            move |r, th| pot(r, th),
        )
    }

    pub fn value(&self, r: f64, theta: f64) -> Vec4 {
        (self.p)(r, theta)
    }
}

/// Goldstone frame parameters ξ_ij(r, θ) with optional linear dependence on
/// the cyclic coordinates (∂_t ξ and ∂_φ ξ constant).
#[derive(Clone)]
pub struct GoldstoneField {
    static_part: Ten2F,
    pub linear_t: Ten2,
    pub linear_phi: Ten2,
}

impl GoldstoneField {
    pub fn new(static_part: impl Fn(f64, f64) -> Ten2 + Send + Sync + 'static) -> Self {
        GoldstoneField {
            static_part: Arc::new(static_part),
            linear_t: [[0.0; 4]; 4],
            linear_phi: [[0.0; 4]; 4],
        }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| [[0.0; 4]; 4])
    }

    pub fn with_cyclic(mut self, linear_t: Ten2, linear_phi: Ten2) -> Self {
        self.linear_t = linear_t;
        self.linear_phi = linear_phi;
        self
    }

    pub fn value(&self, r: f64, theta: f64) -> Ten2 {
        (self.static_part)(r, theta)
    }
}

fn ten2_partial(f: &Ten2F, r: f64, theta: f64, dir: Dir, h: f64, scheme: Scheme) -> Ten2 {
    let mut out = [[0.0; 4]; 4];
    if dir == Dir::T || dir == Dir::Phi {
        return out;
    }
    for (off, w) in stencil(scheme, h) {
        let v = if dir == Dir::R { f(r + off, theta) } else { f(r, theta + off) };
        for a in 0..4 {
            for b in 0..4 {
                out[a][b] += w * v[a][b];
            }
        }
    }
    out
}

fn ten3_partial(f: &Ten3F, r: f64, theta: f64, dir: Dir, h: f64, scheme: Scheme) -> Ten3 {
    let mut out = [[[0.0; 4]; 4]; 4];
    if dir == Dir::T || dir == Dir::Phi {
        return out;
    }
    for (off, w) in stencil(scheme, h) {
        let v = if dir == Dir::R { f(r + off, theta) } else { f(r, theta + off) };
        for a in 0..4 {
            for b in 0..4 {
                for mu in 0..4 {
                    out[a][b][mu] += w * v[a][b][mu];
                }
            }
        }
    }
    out
}

/// Spin connection solving the tetrad postulate
/// ∂_μξᵃ_ν − Λ^σ_νμ ξᵃ_σ + Ωᵃ_bμ ξᵇ_ν = 0, returned as Ω_abμ.
pub fn spin_connection_from_tetrad(
    tetrad: &TetradField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> Ten3 {
    let gam = christoffel(r, theta);
    let dual = tetrad.dual(r, theta);
    let dxi = [
        [[0.0; 4]; 4],
        ten2_partial(&tetrad.xi, r, theta, Dir::R, h, scheme),
        ten2_partial(&tetrad.xi, r, theta, Dir::Theta, h, scheme),
        [[0.0; 4]; 4],
    ];
    let xi = tetrad.xi(r, theta);
    let mut omega = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for c in 0..4 {
            for mu in 0..4 {
                // Ω^a_cμ = −(∂_μ ξ^a_ν) ξ_c^ν + Λ^σ_νμ ξ^a_σ ξ_c^ν
                let mut v = 0.0;
                for nu in 0..4 {
                    v -= dxi[mu][a][nu] * dual[c][nu];
                    for s in 0..4 {
                        v += gam[s][nu][mu] * xi[a][s] * dual[c][nu];
                    }
                }
                omega[a][c][mu] = v;
            }
        }
    }
    // Lower the first index.
    let mut low = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for c in 0..4 {
            for mu in 0..4 {
                low[a][c][mu] = ETA[a] * omega[a][c][mu];
            }
        }
    }
    low
}

/// Max deviation of the tetrad postulate for a given (tetrad, Ω) pair.
pub fn tetrad_postulate_residual(
    tetrad: &TetradField,
    omega: &SpinConnectionField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> f64 {
    let gam = christoffel(r, theta);
    let xi = tetrad.xi(r, theta);
    let om = omega.value(r, theta);
    let dxi = [
        [[0.0; 4]; 4],
        ten2_partial(&tetrad.xi, r, theta, Dir::R, h, scheme),
        ten2_partial(&tetrad.xi, r, theta, Dir::Theta, h, scheme),
        [[0.0; 4]; 4],
    ];
    let mut dev: f64 = 0.0;
    for a in 0..4 {
        for nu in 0..4 {
            for mu in 0..4 {
                let mut v = dxi[mu][a][nu];
                for s in 0..4 {
                    v -= gam[s][nu][mu] * xi[a][s];
                }
                for b in 0..4 {
                    // Ωᵃ_bμ ξᵇ_ν with the first index raised by η.
                    v += ETA[a] * om[a][b][mu] * xi[b][nu];
                }
                dev = dev.max(v.abs());
            }
        }
    }
    dev
}

/// Curvature of a spin connection,
/// R_ijμν = ∂_μΩ_ijν − ∂_νΩ_ijμ + Ω_ikμ Ω^k_jν − Ω_ikν Ω^k_jμ,
/// with all Lorentz indices down.
pub fn riemann_from_spin_connection(
    omega: &SpinConnectionField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> Ten4 {
    let om = omega.value(r, theta);
    let dom = [
        [[[0.0; 4]; 4]; 4],
        ten3_partial(&omega.omega, r, theta, Dir::R, h, scheme),
        ten3_partial(&omega.omega, r, theta, Dir::Theta, h, scheme),
        [[[0.0; 4]; 4]; 4],
    ];
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut v = dom[mu][i][j][nu] - dom[nu][i][j][mu];
                    for k in 0..4 {
                        v += ETA[k] * (om[i][k][mu] * om[k][j][nu] - om[i][k][nu] * om[k][j][mu]);
                    }
                    out[i][j][mu][nu] = v;
                }
            }
        }
    }
    out
}

/// Tensorial connection R_ijμ = ∂_μξ_ij − Ω_ijμ in Lorentz indices.
pub fn tensorial_connection(
    goldstone: &GoldstoneField,
    omega: &SpinConnectionField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> Ten3 {
    let om = omega.value(r, theta);
    let dxi = [
        goldstone.linear_t,
        ten2_partial(&goldstone.static_part, r, theta, Dir::R, h, scheme),
        ten2_partial(&goldstone.static_part, r, theta, Dir::Theta, h, scheme),
        goldstone.linear_phi,
    ];
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for mu in 0..4 {
                out[i][j][mu] = dxi[mu][i][j] - om[i][j][mu];
            }
        }
    }
    out
}

/// Curvature carried by a tensorial connection in coordinate indices:
/// −(∇_μ R^α_βν − ∇_ν R^α_βμ + R^α_σμ R^σ_βν − R^α_σν R^σ_βμ),
/// returned as `out[alpha][beta][mu][nu]` with the first index raised.
/// The covariant derivatives act with the coordinate Christoffels.
pub fn curvature_from_tensorial(
    conn: &TensorialConnectionField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> Ten4 {
    let raised: Ten3F = {
        let inner = conn.r.clone();
        Arc::new(move |rr, tt| {
            let ginv = inverse_metric_diag(rr, tt);
            let v = inner(rr, tt);
            let mut up = [[[0.0; 4]; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    for mu in 0..4 {
                        up[a][b][mu] = ginv[a] * v[a][b][mu];
                    }
                }
            }
            up
        })
    };
    let rv = raised(r, theta);
    let drv = [
        [[[0.0; 4]; 4]; 4],
        ten3_partial(&raised, r, theta, Dir::R, h, scheme),
        ten3_partial(&raised, r, theta, Dir::Theta, h, scheme),
        [[[0.0; 4]; 4]; 4],
    ];
    let gam = christoffel(r, theta);
    // ∇_μ R^α_βν with the Christoffels on every coordinate index.
    let nabla = |mu: usize, al: usize, be: usize, nu: usize| -> f64 {
        let mut v = drv[mu][al][be][nu];
        for s in 0..4 {
            v += gam[al][s][mu] * rv[s][be][nu];
            v -= gam[s][be][mu] * rv[al][s][nu];
            v -= gam[s][nu][mu] * rv[al][be][s];
        }
        v
    };
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for al in 0..4 {
        for be in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut v = nabla(mu, al, be, nu) - nabla(nu, al, be, mu);
                    for s in 0..4 {
                        v += rv[al][s][mu] * rv[s][be][nu] - rv[al][s][nu] * rv[s][be][mu];
                    }
                    out[al][be][mu][nu] = -v;
                }
            }
        }
    }
    out
}

/// Field strength recovered from the momentum, qF_μν = −(∇_μP_ν − ∇_νP_μ).
pub fn maxwell_from_momentum(
    p: &GaugeMomentumField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> Result<Ten2> {
    if p.charge == 0.0 {
        return Err(Error::InvalidParameter("momentum carries no charge".into()));
    }
    // The Christoffel terms cancel in the antisymmetrized derivative.
    let dp = |dir: Dir| -> Vec4 {
        let mut out = [0.0; 4];
        if dir == Dir::T || dir == Dir::Phi {
            return out;
        }
        for (off, w) in stencil(scheme, h) {
            let v = if dir == Dir::R { p.value(r + off, theta) } else { p.value(r, theta + off) };
            for mu in 0..4 {
                out[mu] += w * v[mu];
            }
        }
        out
    };
    let grads = [dp(Dir::T), dp(Dir::R), dp(Dir::Theta), dp(Dir::Phi)];
    let mut f = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            f[mu][nu] = -(grads[mu][nu] - grads[nu][mu]) / p.charge;
        }
    }
    Ok(f)
}

/// Spinor field ψ = e^{i(ω_t t + ω_φ φ)} χ(r, θ); the cyclic dependence is a
/// pure phase with constant frequencies.
#[derive(Clone)]
pub struct SpinorField {
    static_part: SpinF,
    pub freq_t: f64,
    pub freq_phi: f64,
}

impl SpinorField {
    pub fn new(static_part: impl Fn(f64, f64) -> CVec4 + Send + Sync + 'static) -> Self {
        SpinorField { static_part: Arc::new(static_part), freq_t: 0.0, freq_phi: 0.0 }
    }

    pub fn with_frequencies(mut self, freq_t: f64, freq_phi: f64) -> Self {
        self.freq_t = freq_t;
        self.freq_phi = freq_phi;
        self
    }

    /// Value on the t = φ = 0 slice.
    pub fn value(&self, r: f64, theta: f64) -> CVec4 {
        (self.static_part)(r, theta)
    }

    /// ∂_μψ on the t = φ = 0 slice.
    pub fn partial(&self, r: f64, theta: f64, dir: Dir, h: f64, scheme: Scheme) -> CVec4 {
        match dir {
            Dir::T => self.value(r, theta) * (I * self.freq_t),
            Dir::Phi => self.value(r, theta) * (I * self.freq_phi),
            Dir::R | Dir::Theta => {
                let mut out = CVec4::zeros();
                for (off, w) in stencil(scheme, h) {
                    let v = if dir == Dir::R {
                        self.value(r + off, theta)
                    } else {
                        self.value(r, theta + off)
                    };
                    out += v.scale(w);
                }
                out
            }
        }
    }
}

/// ∇_μψ = ∂_μψ + ½Ω_ijμ σ^ij ψ + iqA_μ ψ for every direction.
pub fn spinor_covariant_derivative(
    psi: &SpinorField,
    omega: &SpinConnectionField,
    potential: &Vec4,
    charge: f64,
    basis: &GammaBasis,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
) -> [CVec4; 4] {
    let om = omega.value(r, theta);
    let val = psi.value(r, theta);
    std::array::from_fn(|mu| {
        let mut slice = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                slice[i][j] = om[i][j][mu];
            }
        }
        psi.partial(r, theta, Dir::from_index(mu), h, scheme)
            + basis.sigma_contraction(&slice) * val
            + val * (I * charge * potential[mu])
    })
}

/// Residual of the curved-space Dirac equation
/// iγ^μ∇_μψ − X W_μ γ^μ π ψ − mψ with γ^μ = ξ_a^μ γᵃ.
#[allow(clippy::too_many_arguments)]
pub fn spinor_dirac_residual(
    psi: &SpinorField,
    omega: &SpinConnectionField,
    potential: Vec4,
    charge: f64,
    torsion_w: Vec4,
    torsion_coupling: f64,
    mass: f64,
    tetrad: &TetradField,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
    basis: &GammaBasis,
) -> CVec4 {
    let nabla = spinor_covariant_derivative(psi, omega, &potential, charge, basis, r, theta, h, scheme);
    let dual = tetrad.dual(r, theta);
    let val = psi.value(r, theta);
    let mut res = val.scale(-mass);
    for mu in 0..4 {
        for a in 0..4 {
            if dual[a][mu] != 0.0 {
                res += (basis.gamma(a) * nabla[mu]).scale(dual[a][mu]) * I;
                res -= (basis.gamma(a) * basis.pi() * val)
                    .scale(torsion_coupling * torsion_w[mu] * dual[a][mu]);
            }
        }
    }
    res
}

/// Max deviation of [∇_μ, ∇_ν]ψ from ½ R_ijμν σ^ij ψ + iqF_μν ψ, with the
/// left side taken by nested finite differences.
#[allow(clippy::too_many_arguments)]
pub fn commutator_check(
    psi: &SpinorField,
    omega: &SpinConnectionField,
    potential: impl Fn(f64, f64) -> Vec4 + Send + Sync + Clone + 'static,
    charge: f64,
    r: f64,
    theta: f64,
    h: f64,
    scheme: Scheme,
    basis: &GammaBasis,
) -> f64 {
    // ∇_νψ as a spinor field sharing the phase structure of ψ.
    let (freq_t, freq_phi) = (psi.freq_t, psi.freq_phi);
    let nabla_field = |nu: usize| -> SpinorField {
        let psi = psi.clone();
        let omega = omega.clone();
        let potential = potential.clone();
        let basis = basis.clone();
        SpinorField {
            static_part: Arc::new(move |rr, tt| {
                let om = omega.value(rr, tt);
                let mut slice = [[0.0; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        slice[i][j] = om[i][j][nu];
                    }
                }
                let val = psi.value(rr, tt);
                psi.partial(rr, tt, Dir::from_index(nu), h, scheme)
                    + basis.sigma_contraction(&slice) * val
                    + val * (I * charge * potential(rr, tt)[nu])
            }),
            freq_t,
            freq_phi,
        }
    };

    let riemann = riemann_from_spin_connection(omega, r, theta, h, scheme);
    let pot_field = GaugeMomentumField::new(potential.clone(), 1.0, potential.clone());
    // F_μν from the potential directly: F = ∂A − ∂A.
    let f = match maxwell_from_momentum(&pot_field, r, theta, h, scheme) {
        Ok(v) => {
            // maxwell gives −curl(P)/q with q=1; the potential curl needs the
            // opposite sign convention F = ∂A − ∂A.
            let mut out = [[0.0; 4]; 4];
            for mu in 0..4 {
                for nu in 0..4 {
                    out[mu][nu] = -v[mu][nu];
                }
            }
            out
        }
        Err(_) => [[0.0; 4]; 4],
    };

    let a_here = potential(r, theta);
    let psi_val = psi.value(r, theta);
    let mut dev: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            if mu == nu {
                continue;
            }
            let gnu = nabla_field(nu);
            let gmu = nabla_field(mu);
            let om = omega.value(r, theta);
            let apply = |dir: usize, field: &SpinorField| -> CVec4 {
                let mut slice = [[0.0; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        slice[i][j] = om[i][j][dir];
                    }
                }
                field.partial(r, theta, Dir::from_index(dir), h, scheme)
                    + basis.sigma_contraction(&slice) * field.value(r, theta)
                    + field.value(r, theta) * (I * charge * a_here[dir])
            };
            let lhs = apply(mu, &gnu) - apply(nu, &gmu);
            let mut slice = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    slice[i][j] = riemann[i][j][mu][nu];
                }
            }
            let rhs = basis.sigma_contraction(&slice) * psi_val
                + psi_val * (I * charge * f[mu][nu]);
            dev = dev.max((lhs - rhs).norm());
        }
    }
    dev
}

/// Writes grid samples of named components as CSV with 13 significant digits.
pub fn dump_grid_csv(
    path: &std::path::Path,
    grid: &Grid,
    names: &[&str],
    eval: impl Fn(f64, f64) -> Vec<f64>,
) -> Result<()> {
    use std::io::Write;
    let mut out = String::new();
    out.push_str("r,theta");
    for n in names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for (r, th) in grid.points() {
        out.push_str(&format!("{r:.12e},{th:.12e}"));
        let vals = eval(r, th);
        debug_assert_eq!(vals.len(), names.len());
        for v in vals {
            out.push_str(&format!(",{v:.12e}"));
        }
        out.push('\n');
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn christoffel_component_values() {
        let g = christoffel(2.0, PI / 2.0);
        assert!((g[2][2][1] - 0.5).abs() < 1e-15); // Λ^θ_θr = 1/r
        let g = christoffel(1.0, PI / 2.0);
        assert!(g[2][3][3].abs() < 1e-15); // Λ^θ_φφ = −cosθ sinθ = 0
        let g = christoffel(1.0, PI / 4.0);
        assert!((g[3][3][2] - 1.0).abs() < 1e-12); // Λ^φ_φθ = cot(π/4)
    }

    #[test]
    fn metric_compatibility_is_exact() {
        for &(r, th) in &[(0.7, 0.9), (2.3, 1.9), (3.9, 0.4)] {
            let gam = christoffel(r, th);
            let g = metric_diag(r, th);
            for sig in 0..4 {
                let dg = metric_diag_partial(r, th, Dir::from_index(sig));
                for mu in 0..4 {
                    for nu in 0..4 {
                        let mut v = if mu == nu { dg[mu] } else { 0.0 };
                        for rho in 0..4 {
                            if rho == nu {
                                v -= gam[rho][mu][sig] * g[nu];
                            }
                            if rho == mu {
                                v -= gam[rho][nu][sig] * g[mu];
                            }
                        }
                        assert!(v.abs() < 1e-12, "∇g at ({mu},{nu};{sig}) = {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn coordinate_riemann_vanishes_analytically() {
        for &(r, th) in &[(0.3, 0.5), (1.5, 1.0), (3.7, 2.6)] {
            let rm = coordinate_riemann_analytic(r, th);
            let max = rm
                .iter()
                .flatten()
                .flatten()
                .flatten()
                .fold(0.0f64, |acc, v| acc.max(v.abs()));
            assert!(max < 1e-12, "max {max}");
        }
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::standard().validate().is_ok());
        let mut g = Grid::standard();
        g.nr = 2;
        assert!(g.validate().is_err());
        let mut g = Grid::standard();
        g.r_min = 0.01;
        assert!(g.validate().is_err());
        let mut g = Grid::standard();
        g.theta_max = PI;
        assert!(g.validate().is_err());
    }

    #[test]
    fn scalar_field_partials_and_domain() {
        let f = ScalarField::with_partials(|r, _| r * r, |r, _| 2.0 * r, |_, _| 0.0);
        assert!((f.partial(1.0, 1.0, Dir::R, DerivKind::Analytic) - 2.0).abs() < 1e-15);
        let d = fd_derivative(&f, 1.0, 1.0, Dir::R, 1e-3, Scheme::Central2).unwrap();
        assert!((d - 2.0).abs() < 1e-6);
        assert!(fd_derivative(&f, 1e-4, 1.0, Dir::R, 1e-3, Scheme::Central2).is_err());
        assert_eq!(f.partial(2.0, 1.0, Dir::Phi, DerivKind::Analytic), 0.0);
    }

    #[test]
    fn maxwell_examples() {
        // Constant momentum: zero field strength.
        let p = GaugeMomentumField::constant([1.5, 0.0, 0.0, 0.0]);
        let f = maxwell_from_momentum(&p, 1.3, 0.8, 1e-3, Scheme::Central2).unwrap();
        let max = f.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(max < 1e-12);

        // Gradient momentum: still zero.
        let grad = GaugeMomentumField::new(|r, th| [0.0, 2.0 * r * th, r * r, 0.0], 1.0, |_, _| [0.0; 4]);
        let f = maxwell_from_momentum(&grad, 1.1, 0.7, 1e-3, Scheme::Central2).unwrap();
        let max = f.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(max < 1e-9, "max {max}");

        // P_φ = c r: F_rφ = −c/q.
        let c = 0.75;
        let q = 2.0;
        let p = GaugeMomentumField::new(move |r, _| [0.0, 0.0, 0.0, c * r], q, |_, _| [0.0; 4]);
        let f = maxwell_from_momentum(&p, 1.7, 1.1, 1e-3, Scheme::Central2).unwrap();
        assert!((f[1][3] + c / q).abs() < 1e-9);
        assert!((f[3][1] - c / q).abs() < 1e-9);
    }

    #[test]
    fn riemann_of_zero_and_constant_single_component() {
        let zero = SpinConnectionField::zero();
        let rm = riemann_from_spin_connection(&zero, 1.0, 1.0, 1e-3, Scheme::Central2);
        let max = rm.iter().flatten().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(max < 1e-15);

        // One constant component commutes with itself: flat.
        let single = SpinConnectionField::new(|_, _| {
            let mut om = [[[0.0; 4]; 4]; 4];
            om[0][1][0] = 0.8;
            om[1][0][0] = -0.8;
            om
        });
        let rm = riemann_from_spin_connection(&single, 1.4, 0.9, 1e-3, Scheme::Central2);
        let max = rm.iter().flatten().flatten().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(max < 1e-12);
    }

    #[test]
    fn tensorial_connection_examples() {
        let omega = SpinConnectionField::zero();
        let zero = tensorial_connection(&GoldstoneField::zero(), &omega, 1.0, 1.0, 1e-3, Scheme::Central2);
        assert!(zero.iter().flatten().flatten().all(|v| v.abs() < 1e-15));

        // Linear-in-φ Goldstone parameter: R_12μ = c δ_μφ.
        let c = 0.4;
        let mut lin = [[0.0; 4]; 4];
        lin[1][2] = c;
        lin[2][1] = -c;
        let gs = GoldstoneField::zero().with_cyclic([[0.0; 4]; 4], lin);
        let r = tensorial_connection(&gs, &omega, 1.0, 1.0, 1e-3, Scheme::Central2);
        assert!((r[1][2][3] - c).abs() < 1e-15);
        assert!((r[2][1][3] + c).abs() < 1e-15);
        assert!(r[1][2][0].abs() < 1e-15);
    }

    #[test]
    fn plane_wave_dirac_residual_on_a_trivial_frame() {
        // Cartesian-like patch: identity tetrad, no connection, ψ = e^{−imt}ψ₀
        // with γ⁰ψ₀ = ψ₀.
        let basis = GammaBasis::chiral();
        let m = 1.7;
        let tetrad = TetradField::new(
            |_, _| {
                let mut xi = [[0.0; 4]; 4];
                for a in 0..4 {
                    xi[a][a] = 1.0;
                }
                xi
            },
            |_, _| {
                let mut xi = [[0.0; 4]; 4];
                for a in 0..4 {
                    xi[a][a] = 1.0;
                }
                xi
            },
        );
        let psi = SpinorField::new(|_, _| crate::polar::regular_rest_column())
            .with_frequencies(-m, 0.0);
        let res = spinor_dirac_residual(
            &psi,
            &SpinConnectionField::zero(),
            [0.0; 4],
            0.0,
            [0.0; 4],
            0.0,
            m,
            &tetrad,
            1.0,
            1.0,
            1e-3,
            Scheme::Central2,
            &basis,
        );
        assert!(res.norm() < 1e-12, "residual {}", res.norm());

        let zero = SpinorField::new(|_, _| CVec4::zeros());
        let res = spinor_dirac_residual(
            &zero,
            &SpinConnectionField::zero(),
            [0.0; 4],
            0.0,
            [0.0; 4],
            0.0,
            m,
            &tetrad,
            1.0,
            1.0,
            1e-3,
            Scheme::Central2,
            &basis,
        );
        assert!(res.norm() == 0.0);
    }

    #[test]
    fn commutator_matches_curvature_for_a_synthetic_connection() {
        let basis = GammaBasis::chiral();
        // Non-flat single-component connection varying with θ.
        let omega = SpinConnectionField::new(|_, th: f64| {
            let mut om = [[[0.0; 4]; 4]; 4];
            om[0][1][0] = 0.3 * th.sin();
            om[1][0][0] = -0.3 * th.sin();
            om
        });
        let psi = SpinorField::new(|r, th| {
            CVec4::new(
                C64::new(r.cos(), th.sin()),
                C64::new(0.2, -0.1 * r),
                C64::new(th.cos(), 0.0),
                C64::new(0.1 * r * th, 0.3),
            )
        });
        let dev = commutator_check(
            &psi,
            &omega,
            |_, _| [0.0; 4],
            0.0,
            1.2,
            1.0,
            1e-3,
            Scheme::Central2,
            &basis,
        );
        assert!(dev < 1e-6, "deviation {dev}");

        let flat_dev = commutator_check(
            &SpinorField::new(|_, _| crate::polar::regular_rest_column()),
            &SpinConnectionField::zero(),
            |_, _| [0.0; 4],
            0.0,
            1.2,
            1.0,
            1e-3,
            Scheme::Central2,
            &basis,
        );
        assert!(flat_dev < 1e-12);
    }
}
