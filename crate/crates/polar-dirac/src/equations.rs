//! Polar Dirac field equations in tensor form, for regular and singular
//! spinors, with the Weyl and Majorana reductions.
//!
//! All inputs carry lower coordinate indices on the fixed spherical chart;
//! raising uses the diagonal inverse metric and the coordinate Levi-Civita
//! tensor carries the √(−g) weight.

use crate::geometry::{epsilon_coord_lower, epsilon_coord_upper, inverse_metric_diag, metric_diag};
use crate::{Error, Result, Ten2, Vec4};

/// Inputs of the regular-spinor system.
#[derive(Debug, Clone, Copy)]
pub struct RegularInputs {
    /// Unit velocity u_μ.
    pub u: Vec4,
    /// Unit spin axis s_μ.
    pub s: Vec4,
    /// Trace part R_μ of the tensorial connection.
    pub r_vec: Vec4,
    /// Dual part B_μ.
    pub b_vec: Vec4,
    /// Gauge momentum P_μ.
    pub p: Vec4,
    /// Torsion axial-vector W_μ.
    pub w: Vec4,
    /// Torsion-spin coupling X.
    pub torsion_coupling: f64,
    pub mass: f64,
    pub beta: f64,
    /// ∂_μ β.
    pub dbeta: Vec4,
    /// ∂_μ ln φ².
    pub dlnphi2: Vec4,
}

/// The two vector equations governing a regular spinor:
///
/// first:  B_μ − 2P^ι u_[ι s_μ] + ∂_μβ − 2X W_μ + 2 s_μ m cos β,
/// second: R_μ − 2P^ρ u^ν s^α ε_μρνα + 2 s_μ m sin β + ∂_μ ln φ².
pub fn regular_field_residuals(inp: &RegularInputs, r: f64, th: f64) -> (Vec4, Vec4) {
    let ginv = inverse_metric_diag(r, th);
    let dot = |a: &Vec4, b: &Vec4| -> f64 { (0..4).map(|m| ginv[m] * a[m] * b[m]).sum() };
    let pu = dot(&inp.p, &inp.u);
    let ps = dot(&inp.p, &inp.s);
    let mut first = [0.0; 4];
    let mut second = [0.0; 4];
    for mu in 0..4 {
        first[mu] = inp.b_vec[mu] - 2.0 * (pu * inp.s[mu] - ps * inp.u[mu]) + inp.dbeta[mu]
            - 2.0 * inp.torsion_coupling * inp.w[mu]
            + 2.0 * inp.s[mu] * inp.mass * inp.beta.cos();

        let mut eps_term = 0.0;
        for rho in 0..4 {
            for nu in 0..4 {
                for al in 0..4 {
                    let e = epsilon_coord_lower(r, th, mu, rho, nu, al);
                    if e != 0.0 {
                        eps_term += ginv[rho] * inp.p[rho]
                            * ginv[nu] * inp.u[nu]
                            * ginv[al] * inp.s[al]
                            * e;
                    }
                }
            }
        }
        second[mu] = inp.r_vec[mu] - 2.0 * eps_term
            + 2.0 * inp.s[mu] * inp.mass * inp.beta.sin()
            + inp.dlnphi2[mu];
    }
    (first, second)
}

/// Inputs of the singular-spinor system.
#[derive(Debug, Clone, Copy)]
pub struct SingularInputs {
    /// Moment tensor M_μν.
    pub m_tensor: Ten2,
    /// Null current U_μ.
    pub u: Vec4,
    /// Chiral degree of freedom α and its gradient.
    pub alpha: f64,
    pub dalpha: Vec4,
    pub r_vec: Vec4,
    pub b_vec: Vec4,
    pub p: Vec4,
    pub w: Vec4,
    pub torsion_coupling: f64,
    pub mass: f64,
}

/// Residuals of the four singular-spinor tensor equations.
///
/// Near α = ±π/2 the sec/tan factors blow up; callers should use
/// [`weyl_residuals`] there instead.
pub fn singular_general_residuals(inp: &SingularInputs, r: f64, th: f64) -> Result<[Vec4; 4]> {
    if inp.alpha.cos().abs() < 1e-8 {
        return Err(Error::InvalidParameter(
            "singular system degenerates at α = ±π/2; use the Weyl equations".into(),
        ));
    }
    let g = metric_diag(r, th);
    let ginv = inverse_metric_diag(r, th);
    let tan = inp.alpha.tan();
    let sec = 1.0 / inp.alpha.cos();

    // (2XW − B)^σ with the index raised.
    let wb: Vec4 = std::array::from_fn(|s| {
        ginv[s] * (2.0 * inp.torsion_coupling * inp.w[s] - inp.b_vec[s])
    });
    // K_μρν = (2XW−B)^σ ε_σμρν + R_[μ g_ρ]ν + g_ν[μ ∂_ρ]α tan α.
    let kk = |mu: usize, rho: usize, nu: usize| -> f64 {
        let mut v = 0.0;
        for s in 0..4 {
            // lower the raised σ back through the ε tensor
            let e = epsilon_coord_lower(r, th, s, mu, rho, nu);
            if e != 0.0 {
                v += wb[s] * e;
            }
        }
        if rho == nu {
            v += inp.r_vec[mu] * g[nu];
        }
        if mu == nu {
            v -= inp.r_vec[rho] * g[nu];
            v += g[nu] * inp.dalpha[rho] * tan;
        }
        if rho == nu {
            v -= g[nu] * inp.dalpha[mu] * tan;
        }
        v
    };

    let m_up = |a: usize, b: usize| -> f64 { ginv[a] * ginv[b] * inp.m_tensor[a][b] };
    // Dual moment T^μρ = M_ηζ ε^μρηζ.
    let t_up = |mu: usize, rho: usize| -> f64 {
        let mut v = 0.0;
        for e1 in 0..4 {
            for e2 in 0..4 {
                let e = epsilon_coord_upper(r, th, mu, rho, e1, e2);
                if e != 0.0 {
                    v += inp.m_tensor[e1][e2] * e;
                }
            }
        }
        v
    };

    let mut f1 = [0.0; 4];
    let mut f2 = [0.0; 4];
    let mut f3 = [0.0; 4];
    let mut f4 = [0.0; 4];
    for nu in 0..4 {
        for mu in 0..4 {
            for rho in 0..4 {
                let k = kk(mu, rho, nu);
                f1[nu] += k * t_up(mu, rho);
                f2[nu] += k * m_up(mu, rho);
            }
        }
        f2[nu] += 4.0 * inp.mass * inp.u[nu];

        // Third and fourth equations carry an upper free index.
        for rho in 0..4 {
            for sg in 0..4 {
                let mut coeff3 = 0.0;
                let mut coeff4 = 0.0;
                for mu in 0..4 {
                    let e = epsilon_coord_upper(r, th, mu, rho, sg, nu);
                    if e != 0.0 {
                        coeff3 += e * inp.dalpha[mu] * sec;
                        coeff4 -= 2.0 * inp.p[mu] * e;
                    }
                }
                // −2P^[ρ g^σ]ν
                if nu == sg {
                    coeff3 -= 2.0 * ginv[rho] * inp.p[rho] * ginv[sg];
                }
                if nu == rho {
                    coeff3 += 2.0 * ginv[sg] * inp.p[sg] * ginv[rho];
                }
                // g^ν[ρ ∇^σ]α sec α
                if nu == rho {
                    coeff4 += ginv[nu] * ginv[sg] * inp.dalpha[sg] * sec;
                }
                if nu == sg {
                    coeff4 -= ginv[nu] * ginv[rho] * inp.dalpha[rho] * sec;
                }
                f3[nu] += coeff3 * inp.m_tensor[rho][sg];
                f4[nu] += coeff4 * inp.m_tensor[rho][sg];
            }
        }
        f4[nu] += 4.0 * inp.mass * inp.alpha.sin() * ginv[nu] * inp.u[nu];
    }
    Ok([f1, f2, f3, f4])
}

/// Residuals of the three Weyl equations for a massless singular spinor:
/// R_μU^μ, (−B + 2XW ± 2P)·U, and the rank-2 combination.
#[derive(Debug, Clone)]
pub struct WeylResiduals {
    pub current_trace: f64,
    pub current_dual: f64,
    pub rank2: Ten2,
}

pub fn weyl_residuals(
    u: &Vec4,
    r_vec: &Vec4,
    b_vec: &Vec4,
    p: &Vec4,
    w: &Vec4,
    torsion_coupling: f64,
    helicity_sign: f64,
    r: f64,
    th: f64,
) -> WeylResiduals {
    let ginv = inverse_metric_diag(r, th);
    let combo: Vec4 = std::array::from_fn(|m| {
        -b_vec[m] + 2.0 * torsion_coupling * w[m] + 2.0 * helicity_sign * p[m]
    });
    let current_trace: f64 = (0..4).map(|m| ginv[m] * r_vec[m] * u[m]).sum();
    let current_dual: f64 = (0..4).map(|m| ginv[m] * combo[m] * u[m]).sum();
    let mut rank2 = [[0.0; 4]; 4];
    for al in 0..4 {
        for nu in 0..4 {
            let mut v = 0.0;
            for rho in 0..4 {
                let mut bracket = 0.0;
                for mu in 0..4 {
                    let e = epsilon_coord_upper(r, th, mu, rho, al, nu);
                    if e != 0.0 {
                        bracket += combo[mu] * e;
                    }
                }
                if rho == al {
                    bracket += ginv[al] * ginv[nu] * r_vec[nu];
                }
                if rho == nu {
                    bracket -= ginv[nu] * ginv[al] * r_vec[al];
                }
                v += bracket * u[rho];
            }
            rank2[al][nu] = v;
        }
    }
    WeylResiduals { current_trace, current_dual, rank2 }
}

/// Residuals of the two Majorana equations (the singular system at α = 0
/// with torsion decoupled): the first is mass-free, the mass lives in the
/// second through −2mU^σ.
pub fn majorana_tensor_residuals(
    m_tensor: &Ten2,
    u: &Vec4,
    r_vec: &Vec4,
    b_vec: &Vec4,
    mass: f64,
    r: f64,
    th: f64,
) -> (Vec4, Vec4) {
    let g = metric_diag(r, th);
    let ginv = inverse_metric_diag(r, th);
    let m_up = |a: usize, b: usize| -> f64 { ginv[a] * ginv[b] * m_tensor[a][b] };
    let mut first = [0.0; 4];
    let mut second = [0.0; 4];
    for sg in 0..4 {
        for pi in 0..4 {
            for ka in 0..4 {
                let mut c1 = 0.0;
                if sg == pi {
                    c1 += g[sg] * b_vec[ka];
                }
                if sg == ka {
                    c1 -= g[sg] * b_vec[pi];
                }
                for mu in 0..4 {
                    let e = epsilon_coord_lower(r, th, mu, sg, pi, ka);
                    if e != 0.0 {
                        c1 -= ginv[mu] * r_vec[mu] * e;
                    }
                }
                first[sg] += c1 * m_up(pi, ka);

                let mut c2 = 0.0;
                for mu in 0..4 {
                    let e = epsilon_coord_upper(r, th, mu, sg, pi, ka);
                    if e != 0.0 {
                        c2 += b_vec[mu] * e;
                    }
                }
                if sg == pi {
                    c2 += ginv[sg] * ginv[ka] * r_vec[ka];
                }
                if sg == ka {
                    c2 -= ginv[sg] * ginv[pi] * r_vec[pi];
                }
                second[sg] += 0.5 * c2 * m_tensor[pi][ka];
            }
        }
        second[sg] -= 2.0 * mass * ginv[sg] * u[sg];
    }
    (first, second)
}
