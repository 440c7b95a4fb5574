//! Clifford algebra of Minkowski space in a fixed chiral representation,
//! closed-form Lorentz/spinorial transformations, and the bridge between the
//! spin-1/2 and vector representations.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * signature η = diag(+1, −1, −1, −1);
//! * Levi-Civita symbol with ε₀₁₂₃ = +1, hence ε^0123 = −1 after raising all
//!   four indices with η;
//! * chiral basis: γ⁰ is block-off-diagonal with identity blocks,
//!   γᵏ = offdiag(σᵏ, −σᵏ), and the parity-odd matrix π (the usual "γ⁵",
//!   written without an index since there is no fifth direction) comes out
//!   diagonal, π = i γ⁰γ¹γ²γ³ = diag(−1, −1, 1, 1), as forced by the duality
//!   identity 2i σ_ab = ε_abcd π σ^cd;
//! * in this basis γ⁰ (1,0,1,0)ᵀ = (1,0,1,0)ᵀ and (1,0,0,1)ᵀ/√2 is
//!   self-conjugate under ψ ↦ i γ² ψ*.

use nalgebra::{DMatrix, DVector, Matrix4, Vector4};
use num_complex::Complex64;

use crate::{Error, Result, Ten2};

pub type C64 = Complex64;
pub type CMat4 = Matrix4<C64>;
pub type CVec4 = Vector4<C64>;

/// Diagonal of the Minkowski metric.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

const I: C64 = C64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Levi-Civita symbol with ε₀₁₂₃ = +1 (0 on repeated indices).
pub fn epsilon(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let idx = [a as i32, b as i32, c as i32, d as i32];
    let mut sign = 1i32;
    for i in 0..4 {
        for j in (i + 1)..4 {
            match idx[j].cmp(&idx[i]) {
                std::cmp::Ordering::Equal => return 0.0,
                std::cmp::Ordering::Less => sign = -sign,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    sign as f64
}

/// Levi-Civita symbol with all four Lorentz indices raised by η (ε^0123 = −1).
pub fn epsilon_upper(a: usize, b: usize, c: usize, d: usize) -> f64 {
    // The product of the four diagonal η entries is −1 whenever the indices
    // form a permutation of (0,1,2,3).
    -epsilon(a, b, c, d)
}

/// The four γ matrices, the σ generators and the π matrix in a fixed basis.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    gamma: [CMat4; 4],
    sigma: [[CMat4; 4]; 4],
    pi: CMat4,
}

impl GammaBasis {
    /// Builds the single supported chiral basis (see the module docs).
    pub fn chiral() -> Self {
        let g0 = CMat4::from_row_slice(&[
            c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.),
            c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.),
            c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.),
        ]);
        let g1 = CMat4::from_row_slice(&[
            c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.),
            c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.),
            c(0., 0.), c(-1., 0.), c(0., 0.), c(0., 0.),
            c(-1., 0.), c(0., 0.), c(0., 0.), c(0., 0.),
        ]);
        let g2 = CMat4::from_row_slice(&[
            c(0., 0.), c(0., 0.), c(0., 0.), c(0., -1.),
            c(0., 0.), c(0., 0.), c(0., 1.), c(0., 0.),
            c(0., 0.), c(0., 1.), c(0., 0.), c(0., 0.),
            c(0., -1.), c(0., 0.), c(0., 0.), c(0., 0.),
        ]);
        let g3 = CMat4::from_row_slice(&[
            c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(0., 0.), c(-1., 0.),
            c(-1., 0.), c(0., 0.), c(0., 0.), c(0., 0.),
            c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.),
        ]);
        let gamma = [g0, g1, g2, g3];

        let mut sigma = [[CMat4::zeros(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let (ga, gb) = (gamma[a].scale(ETA[a]), gamma[b].scale(ETA[b]));
                sigma[a][b] = (ga * gb - gb * ga).scale(0.25);
            }
        }
        // π = i γ⁰γ¹γ²γ³; the sign is pinned by 2iσ_ab = ε_abcd π σ^cd with
        // ε₀₁₂₃ = +1.
        let pi = CMat4::from_diagonal(&CVec4::new(c(-1., 0.), c(-1., 0.), c(1., 0.), c(1., 0.)));
        Self { gamma, sigma, pi }
    }

    /// γᵃ with an upper Lorentz index.
    pub fn gamma(&self, a: usize) -> &CMat4 {
        &self.gamma[a]
    }

    /// γ_a = η_aa γᵃ.
    pub fn gamma_lower(&self, a: usize) -> CMat4 {
        self.gamma[a].scale(ETA[a])
    }

    /// σ_ab = ¼ [γ_a, γ_b] with both indices down.
    pub fn sigma(&self, a: usize, b: usize) -> &CMat4 {
        &self.sigma[a][b]
    }

    /// σ^ab with both Lorentz indices raised by η.
    pub fn sigma_upper(&self, a: usize, b: usize) -> CMat4 {
        self.sigma[a][b].scale(ETA[a] * ETA[b])
    }

    pub fn pi(&self) -> &CMat4 {
        &self.pi
    }

    /// ½ K_ab σ^ab summed over all index pairs of an antisymmetric K.
    pub fn sigma_contraction(&self, coeffs: &Ten2) -> CMat4 {
        let mut out = CMat4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                if coeffs[a][b] != 0.0 {
                    out += self.sigma_upper(a, b).scale(0.5 * coeffs[a][b]);
                }
            }
        }
        out
    }

    /// e^{−i β π / 2} = cos(β/2) 𝟙 − i sin(β/2) π, using π² = 𝟙.
    pub fn chiral_phase(&self, beta: f64) -> CMat4 {
        CMat4::identity().scale((0.5 * beta).cos()) - self.pi.scale((0.5 * beta).sin()) * I
    }

    /// Charge conjugate i γ² ψ*.
    pub fn charge_conjugate(&self, psi: &CVec4) -> CVec4 {
        (self.gamma[2] * psi.map(|z| z.conj())) * I
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        Self::chiral()
    }
}

/// Builds a basis from a convention tag; only `"chiral"` is supported.
pub fn build_gamma_basis(convention: &str) -> Result<GammaBasis> {
    match convention {
        "chiral" => Ok(GammaBasis::chiral()),
        other => Err(Error::UnknownConvention(other.to_string())),
    }
}

/// Largest entrywise |a − b|.
pub fn max_abs_dev(a: &CMat4, b: &CMat4) -> f64 {
    let mut dev: f64 = 0.0;
    for r in 0..4 {
        for cidx in 0..4 {
            dev = dev.max((a[(r, cidx)] - b[(r, cidx)]).norm());
        }
    }
    dev
}

/// Entrywise deviation with relative scaling once entries exceed unity.
pub fn scaled_dev(a: &CMat4, b: &CMat4) -> f64 {
    let mut scale: f64 = 1.0;
    for r in 0..4 {
        for cidx in 0..4 {
            scale = scale.max(a[(r, cidx)].norm()).max(b[(r, cidx)].norm());
        }
    }
    max_abs_dev(a, b) / scale
}

/// Reference matrix exponential by plain power series.
///
/// Used as an independent oracle against the closed-form transformations; the
/// closed forms never call it.
pub fn matrix_exp_series(m: &CMat4) -> CMat4 {
    let mut sum = CMat4::identity();
    let mut term = CMat4::identity();
    for n in 1..=120 {
        term = (term * m).scale(1.0 / n as f64);
        sum += term;
        let mut norm: f64 = 0.0;
        for r in 0..4 {
            for cidx in 0..4 {
                norm = norm.max(term[(r, cidx)].norm());
            }
        }
        if norm < 1e-300 {
            break;
        }
    }
    sum
}

/// Parameters of a finite spinorial transformation: antisymmetric θ_ab plus a
/// gauge phase q·α.
#[derive(Debug, Clone, Copy)]
pub struct LorentzParams {
    pub theta: Ten2,
    pub charge: f64,
    pub phase: f64,
}

impl LorentzParams {
    pub fn new(theta: Ten2) -> Self {
        Self { theta, charge: 0.0, phase: 0.0 }
    }

    pub fn with_phase(theta: Ten2, charge: f64, phase: f64) -> Self {
        Self { theta, charge, phase }
    }

    /// Pure boost of rapidity χ along the spatial axis `k` (1..=3).
    pub fn boost(k: usize, chi: f64) -> Self {
        let mut theta = [[0.0; 4]; 4];
        theta[0][k] = chi;
        theta[k][0] = -chi;
        Self::new(theta)
    }

    /// Rotation by `angle` about the spatial axis `k` (1..=3).
    pub fn rotation(k: usize, angle: f64) -> Self {
        let (i, j) = match k {
            1 => (2, 3),
            2 => (3, 1),
            _ => (1, 2),
        };
        let mut theta = [[0.0; 4]; 4];
        theta[i][j] = angle;
        theta[j][i] = -angle;
        Self::new(theta)
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        for a in 0..4 {
            for b in 0..4 {
                if (self.theta[a][b] + self.theta[b][a]).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Closed-form coefficients (a, b, x, y, X, Y, Z^ab) of the exponential
/// Λ = X 𝟙 + Y iπ + ½ Z^ab σ_ab.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormCoefficients {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub y: f64,
    pub big_x: f64,
    pub big_y: f64,
    /// Z with both Lorentz indices up.
    pub z_upper: Ten2,
}

impl ClosedFormCoefficients {
    /// Residual of X² − Y² + ⅛ Z^ab Z_ab = 1.
    pub fn norm_residual(&self) -> f64 {
        let mut zz = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                zz += self.z_upper[a][b] * self.z_upper[a][b] * ETA[a] * ETA[b];
            }
        }
        self.big_x * self.big_x - self.big_y * self.big_y + zz / 8.0 - 1.0
    }

    /// Residual of 2XY − (1/16) Z^ij Z^ab ε_ijab = 0.
    pub fn dual_residual(&self) -> f64 {
        let mut zze = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for a in 0..4 {
                    for b in 0..4 {
                        zze += self.z_upper[i][j] * self.z_upper[a][b] * epsilon(i, j, a, b);
                    }
                }
            }
        }
        2.0 * self.big_x * self.big_y - zze / 16.0
    }
}

/// Closed form of Λ = exp(½ θ_ab σ^ab).
///
/// The branch with a = b = 0 (null rotations included) is evaluated by the
/// analytic limit of the two coefficient functions.
pub fn lorentz_closed_form(p: &LorentzParams, basis: &GammaBasis) -> (ClosedFormCoefficients, CMat4) {
    let th = &p.theta;
    // a = −⅛ θ_ij θ^ij,  b = 1/16 θ_ij θ_ab ε^ijab.
    let mut a = 0.0;
    let mut b = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            a -= 0.125 * th[i][j] * th[i][j] * ETA[i] * ETA[j];
            for k in 0..4 {
                for l in 0..4 {
                    b += th[i][j] * th[k][l] * epsilon_upper(i, j, k, l) / 16.0;
                }
            }
        }
    }
    let s = a.hypot(b);
    let x = (0.5 * (s + a)).max(0.0).sqrt();
    let y_mag = (0.5 * (s - a)).max(0.0).sqrt();
    // (x + iy)² must equal a + ib, so y carries the sign of b.
    let y = if b < 0.0 { -y_mag } else { y_mag };

    let big_x = y.cos() * x.cosh();
    let big_y = y.sin() * x.sinh();

    let r2 = x * x + y * y;
    let (c1, c2) = if r2 < 1e-8 {
        (1.0 + (x * x - y * y) / 6.0, x * y / 3.0)
    } else {
        (
            (x * x.sinh() * y.cos() + y * y.sin() * x.cosh()) / r2,
            (x * x.cosh() * y.sin() - y * y.cos() * x.sinh()) / r2,
        )
    };

    let mut z_upper = [[0.0; 4]; 4];
    for aa in 0..4 {
        for bb in 0..4 {
            let th_up = ETA[aa] * ETA[bb] * th[aa][bb];
            let mut dual_up = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    dual_up += 0.5 * th[i][j] * epsilon_upper(i, j, aa, bb);
                }
            }
            z_upper[aa][bb] = c1 * th_up + c2 * dual_up;
        }
    }

    let coeffs = ClosedFormCoefficients { a, b, x, y, big_x, big_y, z_upper };
    let lambda = assemble(&coeffs, basis, 1.0);
    (coeffs, lambda)
}

fn assemble(coeffs: &ClosedFormCoefficients, basis: &GammaBasis, z_sign: f64) -> CMat4 {
    let mut m = CMat4::identity().scale(coeffs.big_x) + basis.pi().scale(coeffs.big_y) * I;
    for a in 0..4 {
        for b in 0..4 {
            // ½ Z^ab σ_ab over the full double sum.
            m += basis.sigma(a, b).scale(0.5 * z_sign * coeffs.z_upper[a][b]);
        }
    }
    m
}

/// Λ⁻¹ = X 𝟙 + Y iπ − ½ Z^ab σ_ab from the same coefficients.
pub fn lorentz_inverse(coeffs: &ClosedFormCoefficients, basis: &GammaBasis) -> CMat4 {
    assemble(coeffs, basis, -1.0)
}

/// Full spinorial transformation S = Λ e^{iqα}.
pub fn spinor_transform(p: &LorentzParams, basis: &GammaBasis) -> CMat4 {
    let (_, lambda) = lorentz_closed_form(p, basis);
    lambda * C64::from_polar(1.0, p.charge * p.phase)
}

/// Real vector representation (Λ)ᵃ_b of a spinorial S, extracted from
/// S⁻¹ γᵃ S = Λᵃ_b γᵇ; it satisfies Λᵃ_b S γᵇ S⁻¹ = γᵃ and preserves η.
pub fn vector_representation(s: &CMat4, basis: &GammaBasis) -> Result<Ten2> {
    let s_inv = s.try_inverse().ok_or(Error::SingularMatrix)?;
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        let conj = s_inv * basis.gamma(a) * s;
        for b in 0..4 {
            out[a][b] = 0.25 * (conj * basis.gamma_lower(b)).trace().re;
        }
    }
    Ok(out)
}

/// Deviation of Λᵀ η Λ from η; zero for a genuine vector representation.
pub fn eta_preservation_residual(lambda: &Ten2) -> f64 {
    let mut dev: f64 = 0.0;
    for c in 0..4 {
        for d in 0..4 {
            let mut sum = 0.0;
            for a in 0..4 {
                sum += lambda[a][c] * lambda[a][d] * ETA[a];
            }
            let target = if c == d { ETA[c] } else { 0.0 };
            dev = dev.max((sum - target).abs());
        }
    }
    dev
}

/// Result of projecting S⁻¹ ∂S onto the span of {σ^ab, i𝟙}.
#[derive(Debug, Clone, Copy)]
pub struct TangentDecomposition {
    /// Antisymmetric ∂ζ_ab such that S⁻¹∂S ≈ ½ ∂ζ_ab σ^ab + i q∂α 𝟙.
    pub dzeta: Ten2,
    /// Coefficient of i𝟙 (equals q ∂α).
    pub dphase: f64,
    /// Norm of the remainder outside the span; O(h²) for smooth group paths.
    pub offspan_residual: f64,
}

/// Central-difference S⁻¹ ∂S at `lambda0`, decomposed on the Lorentz + phase
/// generators by real least squares.
pub fn s_inv_ds_decompose<F: Fn(f64) -> CMat4>(
    path: F,
    basis: &GammaBasis,
    lambda0: f64,
    h: f64,
) -> Result<TangentDecomposition> {
    let s0 = path(lambda0);
    let s_inv = s0.try_inverse().ok_or(Error::SingularMatrix)?;
    let ds = (path(lambda0 + h) - path(lambda0 - h)).scale(1.0 / (2.0 * h));
    let g = s_inv * ds;

    // Real 32-dimensional least squares over the 7 generators.
    let pairs = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut cols: Vec<CMat4> = pairs.iter().map(|&(a, b)| basis.sigma_upper(a, b)).collect();
    cols.push(CMat4::identity() * I);

    let mut mat = DMatrix::<f64>::zeros(32, 7);
    let mut rhs = DVector::<f64>::zeros(32);
    for (k, col) in cols.iter().enumerate() {
        for r in 0..4 {
            for cc in 0..4 {
                mat[(8 * r + 2 * cc, k)] = col[(r, cc)].re;
                mat[(8 * r + 2 * cc + 1, k)] = col[(r, cc)].im;
            }
        }
    }
    for r in 0..4 {
        for cc in 0..4 {
            rhs[8 * r + 2 * cc] = g[(r, cc)].re;
            rhs[8 * r + 2 * cc + 1] = g[(r, cc)].im;
        }
    }
    let svd = mat.clone().svd(true, true);
    let sol = svd.solve(&rhs, 1e-14).map_err(|_| Error::SingularMatrix)?;
    let residual = (&mat * &sol - &rhs).norm();

    let mut dzeta = [[0.0; 4]; 4];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        dzeta[a][b] = sol[k];
        dzeta[b][a] = -sol[k];
    }
    Ok(TangentDecomposition { dzeta, dphase: sol[6], offspan_residual: residual })
}

/// Per-family maximum deviation of the defining algebra identities.
#[derive(Debug, Clone)]
pub struct IdentityFamilyReport {
    pub name: &'static str,
    pub max_dev: f64,
    pub worst_at: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub families: Vec<IdentityFamilyReport>,
    pub tolerance: f64,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.families.iter().all(|f| f.pass)
    }
}

/// Checks, entrywise over all index combinations:
/// the anticommutator {γ_a, γ_b} = 2η_ab 𝟙, the definition σ_ab = ¼[γ_a, γ_b],
/// the duality 2iσ_ab = ε_abcd π σ^cd, and the triple product
/// γ_i γ_j γ_k = γ_i η_jk − γ_j η_ik + γ_k η_ij + iε_ijkq π γ^q.
pub fn verify_clifford_identities(basis: &GammaBasis, tol: f64) -> IdentityReport {
    let mut families = Vec::new();

    let mut dev: f64 = 0.0;
    let mut at = String::new();
    for a in 0..4 {
        for b in 0..4 {
            let lhs = basis.gamma_lower(a) * basis.gamma_lower(b)
                + basis.gamma_lower(b) * basis.gamma_lower(a);
            let eta_ab = if a == b { ETA[a] } else { 0.0 };
            let d = max_abs_dev(&lhs, &CMat4::identity().scale(2.0 * eta_ab));
            if d >= dev {
                dev = d;
                at = format!("(a,b)=({a},{b})");
            }
        }
    }
    families.push(IdentityFamilyReport { name: "anticommutator", max_dev: dev, worst_at: at, pass: dev <= tol });

    let mut dev: f64 = 0.0;
    let mut at = String::new();
    for a in 0..4 {
        for b in 0..4 {
            let comm = (basis.gamma_lower(a) * basis.gamma_lower(b)
                - basis.gamma_lower(b) * basis.gamma_lower(a))
            .scale(0.25);
            let d = max_abs_dev(&comm, basis.sigma(a, b));
            if d >= dev {
                dev = d;
                at = format!("(a,b)=({a},{b})");
            }
        }
    }
    families.push(IdentityFamilyReport { name: "sigma_commutator", max_dev: dev, worst_at: at, pass: dev <= tol });

    let mut dev: f64 = 0.0;
    let mut at = String::new();
    for a in 0..4 {
        for b in 0..4 {
            let lhs = basis.sigma(a, b).scale(2.0) * I;
            let mut rhs = CMat4::zeros();
            for cc in 0..4 {
                for d in 0..4 {
                    let e = epsilon(a, b, cc, d);
                    if e != 0.0 {
                        rhs += (basis.pi() * basis.sigma_upper(cc, d)).scale(e);
                    }
                }
            }
            let d = max_abs_dev(&lhs, &rhs);
            if d >= dev {
                dev = d;
                at = format!("(a,b)=({a},{b})");
            }
        }
    }
    families.push(IdentityFamilyReport { name: "pi_duality", max_dev: dev, worst_at: at, pass: dev <= tol });

    let mut dev: f64 = 0.0;
    let mut at = String::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let lhs = basis.gamma_lower(i) * basis.gamma_lower(j) * basis.gamma_lower(k);
                let eta = |p: usize, q: usize| if p == q { ETA[p] } else { 0.0 };
                let mut rhs = basis.gamma_lower(i).scale(eta(j, k))
                    - basis.gamma_lower(j).scale(eta(i, k))
                    + basis.gamma_lower(k).scale(eta(i, j));
                for q in 0..4 {
                    let e = epsilon(i, j, k, q);
                    if e != 0.0 {
                        rhs += (basis.pi() * basis.gamma(q)).scale(e) * I;
                    }
                }
                let d = max_abs_dev(&lhs, &rhs);
                if d >= dev {
                    dev = d;
                    at = format!("(i,j,k)=({i},{j},{k})");
                }
            }
        }
    }
    families.push(IdentityFamilyReport { name: "triple_product", max_dev: dev, worst_at: at, pass: dev <= tol });

    IdentityReport { families, tolerance: tol }
}

/// Exponent ½ θ_ab σ^ab of a spinorial transformation.
pub fn spin_generator(p: &LorentzParams, basis: &GammaBasis) -> CMat4 {
    let mut m = CMat4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            if p.theta[a][b] != 0.0 {
                m += basis.sigma_upper(a, b).scale(0.5 * p.theta[a][b]);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> GammaBasis {
        GammaBasis::chiral()
    }

    #[test]
    fn identities_hold_exactly_in_the_chiral_basis() {
        let report = verify_clifford_identities(&basis(), 1e-12);
        assert!(report.pass(), "{report:?}");
        for fam in &report.families {
            assert!(fam.max_dev < 1e-14, "{}: {}", fam.name, fam.max_dev);
        }
    }

    #[test]
    fn unknown_convention_is_rejected() {
        assert!(build_gamma_basis("dirac").is_err());
        assert!(build_gamma_basis("chiral").is_ok());
    }

    #[test]
    fn scaled_gamma_breaks_the_anticommutator_family() {
        let mut b = basis();
        b.gamma[1] = b.gamma[1].scale(2.0);
        let report = verify_clifford_identities(&b, 1e-12);
        let anti = &report.families[0];
        assert!(!anti.pass);
        // {2γ¹, 2γ¹} = −8𝟙 against the expected −2𝟙.
        assert!((anti.max_dev - 6.0).abs() < 1e-12, "max dev {}", anti.max_dev);
        assert_eq!(anti.worst_at, "(a,b)=(1,1)");
    }

    #[test]
    fn pi_is_diagonal_and_anticommutes_with_every_gamma() {
        let b = basis();
        for a in 0..4 {
            let anti = b.pi() * b.gamma(a) + b.gamma(a) * b.pi();
            assert!(max_abs_dev(&anti, &CMat4::zeros()) < 1e-15);
        }
        assert!(max_abs_dev(&(b.pi() * b.pi()), &CMat4::identity()) < 1e-15);
    }

    #[test]
    fn representation_pins_hold() {
        let b = basis();
        // γ⁰ fixes the regular rest-frame column.
        let psi0 = CVec4::new(c(1., 0.), c(0., 0.), c(1., 0.), c(0., 0.));
        assert!((b.gamma(0) * psi0 - psi0).norm() < 1e-15);
        // The singular column is self-conjugate under i γ² (·)*.
        let inv = 1.0 / 2f64.sqrt();
        let eta0 = CVec4::new(c(inv, 0.), c(0., 0.), c(0., 0.), c(inv, 0.));
        assert!((b.charge_conjugate(&eta0) - eta0).norm() < 1e-15);
    }

    #[test]
    fn zero_parameters_give_the_identity() {
        let b = basis();
        let (coeffs, lambda) = lorentz_closed_form(&LorentzParams::new([[0.0; 4]; 4]), &b);
        assert!((coeffs.big_x - 1.0).abs() < 1e-15);
        assert!(coeffs.big_y.abs() < 1e-15);
        assert!(max_abs_dev(&lambda, &CMat4::identity()) < 1e-15);
    }

    #[test]
    fn boost_matches_the_series_exponential() {
        let b = basis();
        let p = LorentzParams::boost(3, 0.5);
        let (_, lambda) = lorentz_closed_form(&p, &b);
        let series = matrix_exp_series(&spin_generator(&p, &b));
        assert!(scaled_dev(&lambda, &series) < 1e-12);
    }

    #[test]
    fn full_turn_rotation_flips_the_sign() {
        let b = basis();
        let p = LorentzParams::rotation(3, 2.0 * std::f64::consts::PI);
        let (_, lambda) = lorentz_closed_form(&p, &b);
        assert!(max_abs_dev(&lambda, &CMat4::identity().scale(-1.0)) < 1e-12);
    }

    #[test]
    fn null_rotation_branch_is_exact() {
        // θ chosen so that a = b = 0 but θ ≠ 0: boost and rotation of equal
        // magnitude sharing an axis pair.
        let b = basis();
        let mut theta = [[0.0; 4]; 4];
        theta[0][1] = 0.7;
        theta[1][0] = -0.7;
        theta[1][3] = 0.0;
        theta[3][1] = 0.0;
        theta[3][0] = 0.0;
        // null combination: K_x + J_y acts on (0,1) and (1,3) planes
        theta[1][3] = -0.7;
        theta[3][1] = 0.7;
        // recompute invariants to confirm degeneracy
        let p = LorentzParams::new(theta);
        let (coeffs, lambda) = lorentz_closed_form(&p, &b);
        assert!(coeffs.a.abs() < 1e-15 && coeffs.b.abs() < 1e-15, "a={} b={}", coeffs.a, coeffs.b);
        let series = matrix_exp_series(&spin_generator(&p, &b));
        assert!(scaled_dev(&lambda, &series) < 1e-12);
    }

    #[test]
    fn random_parameters_match_series_and_identities() {
        use rand::{Rng, SeedableRng};
        let b = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut theta = [[0.0; 4]; 4];
            for a in 0..4 {
                for bb in (a + 1)..4 {
                    let v = rng.gen_range(-2.0..2.0);
                    theta[a][bb] = v;
                    theta[bb][a] = -v;
                }
            }
            let p = LorentzParams::new(theta);
            let (coeffs, lambda) = lorentz_closed_form(&p, &b);
            let series = matrix_exp_series(&spin_generator(&p, &b));
            assert!(scaled_dev(&lambda, &series) < 1e-9);
            assert!(coeffs.norm_residual().abs() < 1e-10);
            assert!(coeffs.dual_residual().abs() < 1e-10);

            let inv = lorentz_inverse(&coeffs, &b);
            assert!(max_abs_dev(&(inv * lambda), &CMat4::identity()) < 1e-9);
            let num_inv = lambda.try_inverse().unwrap();
            assert!(scaled_dev(&inv, &num_inv) < 1e-9);
        }
    }

    #[test]
    fn spinor_transform_phases() {
        let b = basis();
        let p = LorentzParams::with_phase([[0.0; 4]; 4], 1.0, std::f64::consts::PI);
        let s = spinor_transform(&p, &b);
        assert!(max_abs_dev(&s, &CMat4::identity().scale(-1.0)) < 1e-12);

        let p = LorentzParams::with_phase([[0.0; 4]; 4], 1.0, std::f64::consts::FRAC_PI_2);
        let s = spinor_transform(&p, &b);
        assert!(max_abs_dev(&s, &(CMat4::identity() * I)) < 1e-12);

        let p = LorentzParams::with_phase(LorentzParams::boost(3, 1.0).theta, 1.0, 0.3);
        let s = spinor_transform(&p, &b);
        assert!((s.determinant().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vector_representation_of_unit_and_boost() {
        let b = basis();
        let id = vector_representation(&CMat4::identity(), &b).unwrap();
        let neg = vector_representation(&CMat4::identity().scale(-1.0), &b).unwrap();
        for a in 0..4 {
            for bb in 0..4 {
                let expected = if a == bb { 1.0 } else { 0.0 };
                assert!((id[a][bb] - expected).abs() < 1e-14);
                assert!((neg[a][bb] - expected).abs() < 1e-14);
            }
        }

        let eta_boost = 0.5;
        let s = spinor_transform(&LorentzParams::boost(3, eta_boost), &b);
        let v = vector_representation(&s, &b).unwrap();
        assert!((v[0][0] - eta_boost.cosh()).abs() < 1e-10);
        assert!((v[3][3] - eta_boost.cosh()).abs() < 1e-10);
        assert!((v[0][3] - eta_boost.sinh()).abs() < 1e-10);
        assert!((v[3][0] - eta_boost.sinh()).abs() < 1e-10);
        assert!(eta_preservation_residual(&v) < 1e-10);
    }

    #[test]
    fn vector_representation_is_a_homomorphism_and_phase_blind() {
        use rand::{Rng, SeedableRng};
        let b = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut t1 = [[0.0; 4]; 4];
            let mut t2 = [[0.0; 4]; 4];
            for a in 0..4 {
                for bb in (a + 1)..4 {
                    let (v1, v2) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                    t1[a][bb] = v1;
                    t1[bb][a] = -v1;
                    t2[a][bb] = v2;
                    t2[bb][a] = -v2;
                }
            }
            let s1 = spinor_transform(&LorentzParams::new(t1), &b);
            let s2 = spinor_transform(&LorentzParams::new(t2), &b);
            let v12 = vector_representation(&(s1 * s2), &b).unwrap();
            let (v1, v2) = (
                vector_representation(&s1, &b).unwrap(),
                vector_representation(&s2, &b).unwrap(),
            );
            for a in 0..4 {
                for bb in 0..4 {
                    let mut prod = 0.0;
                    for k in 0..4 {
                        prod += v1[a][k] * v2[k][bb];
                    }
                    assert!((v12[a][bb] - prod).abs() < 1e-9);
                }
            }
            // The gauge phase drops out of the conjugation.
            let s_phase = s1 * C64::from_polar(1.0, rng.gen_range(-3.0..3.0));
            let vp = vector_representation(&s_phase, &b).unwrap();
            for a in 0..4 {
                for bb in 0..4 {
                    assert!((vp[a][bb] - v1[a][bb]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn tangent_decomposition_examples() {
        let b = basis();

        let constant = |_: f64| CMat4::identity();
        let d = s_inv_ds_decompose(constant, &b, 0.0, 1e-4).unwrap();
        assert!(d.dphase.abs() < 1e-12 && d.offspan_residual < 1e-12);
        assert!(d.dzeta.iter().flatten().all(|v| v.abs() < 1e-12));

        let phase = |l: f64| CMat4::identity() * C64::from_polar(1.0, l);
        let d = s_inv_ds_decompose(phase, &b, 0.3, 1e-4).unwrap();
        assert!((d.dphase - 1.0).abs() < 1e-8);
        assert!(d.offspan_residual < 1e-8);

        let sigma12 = *b.sigma(1, 2);
        let subgroup = move |l: f64| matrix_exp_series(&sigma12.scale(l));
        let d = s_inv_ds_decompose(subgroup, &b, 0.2, 1e-4).unwrap();
        assert!((d.dzeta[1][2] - 1.0).abs() < 1e-8, "dzeta12 = {}", d.dzeta[1][2]);
        assert!(d.offspan_residual < 1e-8);
        assert!(d.dphase.abs() < 1e-8);
    }
}
