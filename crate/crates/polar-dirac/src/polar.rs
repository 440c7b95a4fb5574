//! Spinor bilinears, the regular/singular classification, polar decomposition
//! and reconstruction, and the covariant derivative in polar variables.
//!
//! A regular spinor is written as φ e^{−iβπ/2} L⁻¹ (1,0,1,0)ᵀ with module φ
//! and chiral angle β; a singular one as
//! (𝟙 cos(α/2) − π sin(α/2)) L⁻¹ (1,0,0,1)ᵀ/√2 with the single degree of
//! freedom α. In the rest frame of the fixed chiral basis the regular column
//! has velocity u = (1,0,0,0) and spin axis s = (0,0,0,1); the frame L⁻¹
//! returned by the decomposition is the boost-to-rest composed with the
//! rotation aligning s onto the third axis, with the residual third-axis
//! rotation fixed by the phase of the first component.

use crate::clifford::{
    epsilon, lorentz_closed_form, lorentz_inverse, vector_representation, CMat4, CVec4,
    GammaBasis, LorentzParams, C64, ETA,
};
use crate::{Error, Result, Ten2, Ten3, Vec4};

const I: C64 = C64::new(0.0, 1.0);

/// Rest-frame column of the regular polar form.
pub fn regular_rest_column() -> CVec4 {
    CVec4::new(C64::new(1., 0.), C64::new(0., 0.), C64::new(1., 0.), C64::new(0., 0.))
}

/// Rest-frame column of the singular polar form, normalized to unit density.
pub fn singular_rest_column() -> CVec4 {
    let inv = 1.0 / 2f64.sqrt();
    CVec4::new(C64::new(inv, 0.), C64::new(0., 0.), C64::new(0., 0.), C64::new(inv, 0.))
}

/// The full set of real bilinear covariants of a spinor.
#[derive(Debug, Clone, Copy)]
pub struct BilinearSet {
    /// ψ̄ψ
    pub scalar: f64,
    /// iψ̄πψ
    pub pseudoscalar: f64,
    /// U^a = ψ̄γᵃψ
    pub vector: Vec4,
    /// S^a = ψ̄γᵃπψ
    pub axial: Vec4,
    /// M^ab = 2iψ̄σ^abψ
    pub tensor: Ten2,
    /// Largest imaginary part left over by the defining contractions.
    pub imag_residual: f64,
}

impl BilinearSet {
    /// Minkowski square of the vector bilinear.
    pub fn vector_square(&self) -> f64 {
        minkowski_square(&self.vector)
    }
}

pub fn minkowski_square(v: &Vec4) -> f64 {
    (0..4).map(|a| ETA[a] * v[a] * v[a]).sum()
}

pub fn minkowski_dot(v: &Vec4, w: &Vec4) -> f64 {
    (0..4).map(|a| ETA[a] * v[a] * w[a]).sum()
}

pub fn bilinears(psi: &CVec4, basis: &GammaBasis) -> BilinearSet {
    let form = |m: &CMat4| -> C64 { (psi.adjoint() * basis.gamma(0) * m * psi)[(0, 0)] };
    let mut imag: f64 = 0.0;
    let mut take = |z: C64| -> f64 {
        imag = imag.max(z.im.abs());
        z.re
    };

    let scalar = take(form(&CMat4::identity()));
    let pseudo = take(form(basis.pi()) * I);
    let mut vector = [0.0; 4];
    let mut axial = [0.0; 4];
    for a in 0..4 {
        vector[a] = take(form(basis.gamma(a)));
        axial[a] = take(form(&(basis.gamma(a) * basis.pi())));
    }
    let mut tensor = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            tensor[a][b] = take(form(&basis.sigma_upper(a, b)) * 2.0 * I);
        }
    }
    BilinearSet { scalar, pseudoscalar: pseudo, vector, axial, tensor, imag_residual: imag }
}

/// Classification of a spinor by its bilinears.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorClass {
    Regular,
    Singular(SingularKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    /// Vanishing tensor bilinear (single chirality).
    Weyl,
    /// Vanishing axial bilinear (charge-conjugation eigenstate).
    Majorana,
    Generic,
}

/// Classifies by scalar² + pseudoscalar² against `tol` relative to the
/// density ψ̄γ⁰ψ.
pub fn classify(b: &BilinearSet, tol: f64) -> SpinorClass {
    let scale = b.vector[0].abs().max(f64::MIN_POSITIVE);
    if b.scalar.hypot(b.pseudoscalar) > tol * scale {
        return SpinorClass::Regular;
    }
    let max_tensor = b
        .tensor
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_tensor <= tol * scale {
        return SpinorClass::Singular(SingularKind::Weyl);
    }
    let max_axial = b.axial.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_axial <= tol * scale {
        return SpinorClass::Singular(SingularKind::Majorana);
    }
    SpinorClass::Singular(SingularKind::Generic)
}

/// Default relative threshold separating regular from singular spinors.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Module, chiral angle and frame of a regular spinor.
#[derive(Debug, Clone)]
pub struct RegularPolarData {
    pub module: f64,
    /// Chiral angle in (−π, π].
    pub chiral_angle: f64,
    /// Spinorial L⁻¹ of the polar form.
    pub frame: CMat4,
}

/// Chiral degree of freedom and frame of a singular spinor.
#[derive(Debug, Clone)]
pub struct SingularPolarData {
    /// α = 0 is Majorana, α = ±π/2 is Weyl.
    pub chiral: f64,
    pub frame: CMat4,
}

fn epsilon3(i: usize, j: usize, k: usize) -> f64 {
    epsilon(0, i, j, k)
}

fn rotation_params_between(v: &[f64; 3], w: &[f64; 3]) -> LorentzParams {
    let dot = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
    let cross = [
        v[1] * w[2] - v[2] * w[1],
        v[2] * w[0] - v[0] * w[2],
        v[0] * w[1] - v[1] * w[0],
    ];
    let cn = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let (axis, angle) = if cn > 1e-13 {
        ([cross[0] / cn, cross[1] / cn, cross[2] / cn], cn.atan2(dot))
    } else if dot >= 0.0 {
        return LorentzParams::new([[0.0; 4]; 4]);
    } else {
        // Antipodal pair: rotate by π about any axis orthogonal to w.
        let seed = if w[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let proj = seed[0] * w[0] + seed[1] * w[1] + seed[2] * w[2];
        let mut a = [seed[0] - proj * w[0], seed[1] - proj * w[1], seed[2] - proj * w[2]];
        let an = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        for x in &mut a {
            *x /= an;
        }
        (a, std::f64::consts::PI)
    };
    let mut theta = [[0.0; 4]; 4];
    for j in 1..=3 {
        for l in 1..=3 {
            let mut val = 0.0;
            for k in 1..=3 {
                val += angle * epsilon3(j, l, k) * axis[k - 1];
            }
            theta[j][l] = val;
        }
    }
    LorentzParams::new(theta)
}

fn boost_to_rest_params(u: &Vec4, sign: f64) -> Option<LorentzParams> {
    let spatial = (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]).sqrt();
    if spatial <= 1e-14 {
        return None;
    }
    let chi = u[0].max(1.0).acosh();
    let mut theta = [[0.0; 4]; 4];
    for k in 1..=3 {
        theta[0][k] = sign * chi * u[k] / spatial;
        theta[k][0] = -sign * chi * u[k] / spatial;
    }
    Some(LorentzParams::new(theta))
}

/// Extracts module, chiral angle and canonical frame from a regular spinor.
///
/// Postcondition: `reconstruct_regular` returns the input back up to the
/// global sign of the double cover.
pub fn polar_decompose_regular(psi: &CVec4, basis: &GammaBasis) -> Result<RegularPolarData> {
    let b = bilinears(psi, basis);
    if classify(&b, CLASSIFY_TOL) != SpinorClass::Regular {
        return Err(Error::SingularSpinor);
    }
    let two_phi2 = b.scalar.hypot(b.pseudoscalar);
    let module = (0.5 * two_phi2).sqrt();
    let beta = b.pseudoscalar.atan2(b.scalar);

    let u: Vec4 = std::array::from_fn(|a| b.vector[a] / two_phi2);
    let s: Vec4 = std::array::from_fn(|a| b.axial[a] / two_phi2);

    let (boost, boost_inv) = match boost_to_rest_params(&u, -1.0) {
        Some(p) => {
            let (coeffs, m) = lorentz_closed_form(&p, basis);
            (m, lorentz_inverse(&coeffs, basis))
        }
        None => (CMat4::identity(), CMat4::identity()),
    };
    let vb = vector_representation(&boost, basis)?;
    let mut s_rest = [0.0; 4];
    for a in 0..4 {
        for c in 0..4 {
            s_rest[a] += vb[a][c] * s[c];
        }
    }
    let sn = (s_rest[1] * s_rest[1] + s_rest[2] * s_rest[2] + s_rest[3] * s_rest[3]).sqrt();
    let v3 = [s_rest[1] / sn, s_rest[2] / sn, s_rest[3] / sn];
    let (rot_coeffs, rot) =
        lorentz_closed_form(&rotation_params_between(&v3, &[0.0, 0.0, 1.0]), basis);
    let rot_inv = lorentz_inverse(&rot_coeffs, basis);

    let candidate = rot * boost;
    let w = candidate * basis.chiral_phase(-beta) * psi.scale(1.0 / module);
    // w = e^{−iδ/2} (1,0,1,0)ᵀ up to rounding; δ is the residual rotation.
    let delta = -2.0 * w[0].arg();
    let spin_rot = lorentz_closed_form(&LorentzParams::rotation(3, delta), basis).1;

    let frame = boost_inv * rot_inv * spin_rot;
    Ok(RegularPolarData { module, chiral_angle: beta, frame })
}

/// φ e^{−iβπ/2} L⁻¹ (1,0,1,0)ᵀ.
pub fn reconstruct_regular(data: &RegularPolarData, basis: &GammaBasis) -> CVec4 {
    (basis.chiral_phase(data.chiral_angle) * data.frame * regular_rest_column())
        .scale(data.module)
}

/// (𝟙 cos(α/2) − π sin(α/2)) L⁻¹ (1,0,0,1)ᵀ/√2.
pub fn reconstruct_singular(data: &SingularPolarData, basis: &GammaBasis) -> CVec4 {
    let half = 0.5 * data.chiral;
    let op = CMat4::identity().scale(half.cos()) - basis.pi().scale(half.sin());
    op * data.frame * singular_rest_column()
}

/// Either polar form, for operations accepting both.
#[derive(Debug, Clone)]
pub enum PolarData {
    Regular(RegularPolarData),
    Singular(SingularPolarData),
}

pub fn reconstruct_spinor(data: &PolarData, basis: &GammaBasis) -> CVec4 {
    match data {
        PolarData::Regular(d) => reconstruct_regular(d, basis),
        PolarData::Singular(d) => reconstruct_singular(d, basis),
    }
}

/// Normalization identities among the bilinears.
#[derive(Debug, Clone)]
pub struct FierzReport {
    pub class: SpinorClass,
    pub deviations: Vec<(&'static str, f64)>,
    pub pass: bool,
}

/// Checks u·u = 1, s·s = −1, u·s = 0 for regular spinors and
/// scalar = pseudoscalar = 0, U·U = 0 for singular ones.
pub fn fierz_check(b: &BilinearSet, tol: f64) -> FierzReport {
    let class = classify(b, CLASSIFY_TOL);
    let mut deviations = Vec::new();
    match class {
        SpinorClass::Regular => {
            let two_phi2 = b.scalar.hypot(b.pseudoscalar);
            let u: Vec4 = std::array::from_fn(|a| b.vector[a] / two_phi2);
            let s: Vec4 = std::array::from_fn(|a| b.axial[a] / two_phi2);
            deviations.push(("u_unit", (minkowski_square(&u) - 1.0).abs()));
            deviations.push(("s_unit", (minkowski_square(&s) + 1.0).abs()));
            deviations.push(("u_s_orthogonal", minkowski_dot(&u, &s).abs()));
        }
        SpinorClass::Singular(_) => {
            let scale = b.vector[0].abs().max(f64::MIN_POSITIVE);
            deviations.push(("scalar", b.scalar.abs() / scale));
            deviations.push(("pseudoscalar", b.pseudoscalar.abs() / scale));
            deviations.push(("vector_null", b.vector_square().abs() / (scale * scale)));
        }
    }
    let pass = deviations.iter().all(|(_, d)| *d <= tol);
    FierzReport { class, deviations, pass }
}

/// Which polar covariant derivative to apply.
#[derive(Debug, Clone, Copy)]
pub enum PolarDerivativeKind {
    Regular {
        /// ∂_μ β
        dbeta: Vec4,
        /// ∂_μ ln φ
        dlnphi: Vec4,
    },
    Singular {
        alpha: f64,
        dalpha: Vec4,
    },
    Weyl,
    Majorana,
}

/// ∇_μψ in polar variables, for each μ.
///
/// `r_lorentz` is the tensorial connection with both antisymmetric indices in
/// Lorentz (tetrad) position, `r_lorentz[i][j][mu]`; `p` is the gauge
/// momentum. For Majorana data any non-zero momentum is rejected.
pub fn covariant_derivative_polar(
    psi: &CVec4,
    kind: &PolarDerivativeKind,
    r_lorentz: &Ten3,
    p: &Vec4,
    basis: &GammaBasis,
) -> Result<[CVec4; 4]> {
    if let PolarDerivativeKind::Majorana = kind {
        let pmax = p.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if pmax > 1e-14 {
            return Err(Error::MajoranaMomentum(pmax));
        }
    }
    let mut out = [CVec4::zeros(); 4];
    for mu in 0..4 {
        let mut slice = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                slice[i][j] = r_lorentz[i][j][mu];
            }
        }
        // −½ R_ijμ σ^ij − iP_μ, shared by every polar form.
        let mut op = basis.sigma_contraction(&slice).scale(-1.0) - CMat4::identity() * (I * p[mu]);
        match kind {
            PolarDerivativeKind::Regular { dbeta, dlnphi } => {
                op += basis.pi().scale(-0.5 * dbeta[mu]) * I + CMat4::identity().scale(dlnphi[mu]);
            }
            PolarDerivativeKind::Singular { alpha, dalpha } => {
                if alpha.cos().abs() < 1e-12 {
                    return Err(Error::InvalidParameter(
                        "singular derivative is undefined at α = ±π/2; use the Weyl form".into(),
                    ));
                }
                let tan = alpha.tan();
                let sec = 1.0 / alpha.cos();
                op += (CMat4::identity().scale(tan) + basis.pi().scale(sec))
                    .scale(-0.5 * dalpha[mu]);
            }
            PolarDerivativeKind::Weyl | PolarDerivativeKind::Majorana => {}
        }
        out[mu] = op * psi;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn basis() -> GammaBasis {
        GammaBasis::chiral()
    }

    fn random_theta(rng: &mut impl Rng, scale: f64) -> Ten2 {
        let mut theta = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in (a + 1)..4 {
                let v = rng.gen_range(-scale..scale);
                theta[a][b] = v;
                theta[b][a] = -v;
            }
        }
        theta
    }

    #[test]
    fn rest_column_bilinears() {
        let b = bilinears(&regular_rest_column(), &basis());
        assert!((b.scalar - 2.0).abs() < 1e-14);
        assert!(b.pseudoscalar.abs() < 1e-14);
        assert!((b.vector[0] - 2.0).abs() < 1e-14);
        assert!((b.axial[3] - 2.0).abs() < 1e-14);
        assert!(b.imag_residual < 1e-14);
        assert_eq!(classify(&b, CLASSIFY_TOL), SpinorClass::Regular);
    }

    #[test]
    fn zero_spinor_has_zero_bilinears() {
        let b = bilinears(&CVec4::zeros(), &basis());
        assert_eq!(b.scalar, 0.0);
        assert_eq!(b.pseudoscalar, 0.0);
        assert!(b.vector.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn singular_column_is_majorana_and_null() {
        let b = bilinears(&singular_rest_column(), &basis());
        assert!(b.scalar.abs() < 1e-14 && b.pseudoscalar.abs() < 1e-14);
        assert!(b.vector_square().abs() < 1e-14);
        assert_eq!(classify(&b, CLASSIFY_TOL), SpinorClass::Singular(SingularKind::Majorana));
    }

    #[test]
    fn single_chirality_is_weyl() {
        let g = basis();
        let psi = CVec4::new(C64::new(1., 0.), C64::new(0., 0.), C64::new(0., 0.), C64::new(0., 0.));
        let b = bilinears(&psi, &g);
        let max_tensor = b.tensor.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
        assert!(max_tensor < 1e-14);
        assert_eq!(classify(&b, CLASSIFY_TOL), SpinorClass::Singular(SingularKind::Weyl));
    }

    #[test]
    fn decompose_rest_column() {
        let g = basis();
        let data = polar_decompose_regular(&regular_rest_column(), &g).unwrap();
        assert!((data.module - 1.0).abs() < 1e-12);
        assert!(data.chiral_angle.abs() < 1e-12);
        let psi = reconstruct_regular(&data, &g);
        assert!((psi - regular_rest_column()).norm() < 1e-12);
    }

    #[test]
    fn decompose_rejects_singular_input() {
        let g = basis();
        assert!(matches!(
            polar_decompose_regular(&singular_rest_column(), &g),
            Err(Error::SingularSpinor)
        ));
    }

    #[test]
    fn decompose_scaled_chiral_rotation() {
        let g = basis();
        let psi = (g.chiral_phase(std::f64::consts::FRAC_PI_2) * regular_rest_column()).scale(2.0);
        let data = polar_decompose_regular(&psi, &g).unwrap();
        assert!((data.module - 2.0).abs() < 1e-12);
        assert!((data.chiral_angle - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn decompose_boosted_column_recovers_the_boost() {
        let g = basis();
        let chi = 0.8;
        let s = lorentz_closed_form(&LorentzParams::boost(3, chi), &g).1;
        let psi = s * regular_rest_column();
        let data = polar_decompose_regular(&psi, &g).unwrap();
        assert!((data.module - 1.0).abs() < 1e-10);
        assert!(data.chiral_angle.abs() < 1e-10);
        let v = vector_representation(&data.frame, &g).unwrap();
        assert!((v[0][0] - chi.cosh()).abs() < 1e-9, "frame v = {v:?}");
        assert!((v[0][3] - chi.sinh()).abs() < 1e-9);
        let back = reconstruct_regular(&data, &g);
        assert!((back - psi).norm().min((back + psi).norm()) < 1e-9);
    }

    #[test]
    fn reconstruct_matches_closed_form_bilinears() {
        let g = basis();
        let data = RegularPolarData { module: 3.0, chiral_angle: 0.2, frame: CMat4::identity() };
        let psi = reconstruct_regular(&data, &g);
        let b = bilinears(&psi, &g);
        assert!((b.pseudoscalar - 2.0 * 9.0 * 0.2f64.sin()).abs() < 1e-12);
        assert!((b.scalar - 2.0 * 9.0 * 0.2f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn reconstruct_singular_rest() {
        let g = basis();
        let data = SingularPolarData { chiral: 0.0, frame: CMat4::identity() };
        let psi = reconstruct_singular(&data, &g);
        assert!((psi - singular_rest_column()).norm() < 1e-15);
    }

    #[test]
    fn roundtrip_on_seeded_random_regular_spinors() {
        let g = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut done = 0;
        while done < 1000 {
            let psi = CVec4::from_fn(|_, _| {
                C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
            });
            let b = bilinears(&psi, &g);
            if classify(&b, 1e-6) != SpinorClass::Regular {
                continue;
            }
            done += 1;
            let data = polar_decompose_regular(&psi, &g).unwrap();
            let back = reconstruct_regular(&data, &g);
            let dev = (back - psi).norm().min((back + psi).norm());
            assert!(dev < 1e-9 * psi.norm().max(1.0), "dev {dev} for {psi:?}");
        }
    }

    #[test]
    fn bilinears_transform_covariantly() {
        let g = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let psi = CVec4::from_fn(|_, _| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let p = LorentzParams::with_phase(
                random_theta(&mut rng, 1.0),
                1.0,
                rng.gen_range(-3.0..3.0),
            );
            let s = crate::clifford::spinor_transform(&p, &g);
            let v = vector_representation(&s, &g).unwrap();
            let before = bilinears(&psi, &g);
            let after = bilinears(&(s * psi), &g);
            assert!((after.scalar - before.scalar).abs() < 1e-9);
            assert!((after.pseudoscalar - before.pseudoscalar).abs() < 1e-9);
            for a in 0..4 {
                let mut expect_v = 0.0;
                let mut expect_s = 0.0;
                for c in 0..4 {
                    expect_v += v[a][c] * before.vector[c];
                    expect_s += v[a][c] * before.axial[c];
                }
                assert!((after.vector[a] - expect_v).abs() < 1e-9);
                assert!((after.axial[a] - expect_s).abs() < 1e-9);
            }
            for a in 0..4 {
                for bb in 0..4 {
                    let mut expect = 0.0;
                    for c in 0..4 {
                        for d in 0..4 {
                            expect += v[a][c] * v[bb][d] * before.tensor[c][d];
                        }
                    }
                    assert!((after.tensor[a][bb] - expect).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn singular_axial_is_minus_sin_alpha_times_vector() {
        let g = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let alpha = rng.gen_range(-1.5..1.5);
            let frame = lorentz_closed_form(&LorentzParams::new(random_theta(&mut rng, 1.0)), &g).1;
            let psi = reconstruct_singular(&SingularPolarData { chiral: alpha, frame }, &g);
            let b = bilinears(&psi, &g);
            assert!(b.scalar.abs() < 1e-10 && b.pseudoscalar.abs() < 1e-10);
            for a in 0..4 {
                assert!(
                    (b.axial[a] + alpha.sin() * b.vector[a]).abs() < 1e-10,
                    "component {a}: axial {} vector {}",
                    b.axial[a],
                    b.vector[a]
                );
            }
        }
    }

    #[test]
    fn fierz_regular_and_corrupted() {
        let g = basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let s = lorentz_closed_form(&LorentzParams::new(random_theta(&mut rng, 1.0)), &g).1;
        let psi = s * regular_rest_column();
        let mut b = bilinears(&psi, &g);
        let report = fierz_check(&b, 1e-10);
        assert!(report.pass, "{report:?}");

        b.vector[0] += 0.1;
        let report = fierz_check(&b, 1e-10);
        assert!(!report.pass);

        let b0 = bilinears(&singular_rest_column(), &g);
        let report = fierz_check(&b0, 1e-12);
        assert!(report.pass);
        assert!(report.deviations.iter().any(|(n, d)| *n == "vector_null" && *d < 1e-14));
    }

    #[test]
    fn covariant_derivative_special_cases() {
        let g = basis();
        let psi = regular_rest_column();
        let zero3 = [[[0.0; 4]; 4]; 4];

        let kind = PolarDerivativeKind::Regular { dbeta: [0.0; 4], dlnphi: [0.0; 4] };
        let d = covariant_derivative_polar(&psi, &kind, &zero3, &[0.0; 4], &g).unwrap();
        for du in d.iter() {
            assert!(du.norm() < 1e-15);
        }

        let m = 1.3;
        let d = covariant_derivative_polar(&psi, &kind, &zero3, &[m, 0.0, 0.0, 0.0], &g).unwrap();
        assert!((d[0] - psi.scale(m) * C64::new(0.0, -1.0)).norm() < 1e-14);

        let err = covariant_derivative_polar(
            &singular_rest_column(),
            &PolarDerivativeKind::Majorana,
            &zero3,
            &[0.5, 0.0, 0.0, 0.0],
            &g,
        );
        assert!(matches!(err, Err(Error::MajoranaMomentum(_))));
    }
}
