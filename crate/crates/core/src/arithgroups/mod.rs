//! The unitary group `U(1,1; Z[i])`, its Cayley conjugate `G` acting on the
//! upper half-plane, and the integral symplectic embeddings `ρ` and `ι`.
//!
//! Conventions: `H = diag(1, −1)`, `J = (0 −H; H 0)`, `J₀ = (0 𝟙; −𝟙 0)`,
//! `g₀ = (1 i; i 1)/√2`. Conjugation by `g₀` only ever needs
//! `(1 i; i 1)` and its inverse, so everything stays in Q(i).

mod matrix;
pub mod reduce;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

pub use matrix::{j0, GaussianMatrix, GaussianMatrix2, IntMatrix4};
use matrix::{half, is_real_integer, real_int};
pub use reduce::{in_fundamental_domain, reduce_to_fundamental_domain, Reduction};

use crate::exact::{rat, GaussianRational, Rational};
use crate::{Error, Result};

/// `H = diag(1, −1)`.
pub fn h() -> GaussianMatrix2 {
    GaussianMatrix::from_real_ints(2, 2, &[1, 0, 0, -1])
}

/// `antidiag(1, 1)`.
pub fn h_swap() -> GaussianMatrix2 {
    GaussianMatrix::from_real_ints(2, 2, &[0, 1, 1, 0])
}

/// `diag(i, 1)`, the preimage of the order-four generator of `G`.
pub fn h_twist() -> GaussianMatrix2 {
    GaussianMatrix::from_ints(2, 2, &[(0, 1), (0, 0), (0, 0), (1, 0)])
}

/// `J = (0 −H; H 0)`.
pub fn j_matrix() -> IntMatrix4 {
    IntMatrix4([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
}

/// The conjugating matrix `t = (H_swap 0; 𝟙 H_swap)` relating `ρ` and `ι`.
pub fn t_matrix() -> IntMatrix4 {
    IntMatrix4([[0, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 1], [0, 1, 1, 0]])
}

/// The expected value of `σ(t) J σ(t)⁻¹`.
pub fn conjugated_j_expected() -> IntMatrix4 {
    IntMatrix4([[0, 1, 1, 0], [-1, 0, 0, -1], [0, 0, 0, 1], [0, 0, -1, 0]])
}

/// `ḡᵗ H g = H` with Gaussian-integer entries.
pub fn is_unitary_member(u: &GaussianMatrix2) -> bool {
    (u.rows(), u.cols()) == (2, 2)
        && u.is_gaussian_integral()
        && u.conj().transpose().mul(&h()).mul(u) == h()
}

fn check_member(u: &GaussianMatrix2) -> Result<()> {
    if is_unitary_member(u) {
        Ok(())
    } else {
        Err(Error::Membership(format!("{u} is not in U(1,1; Z[i])")))
    }
}

/// `ρ(g) = (Re g, Im g·H; −H·Im g, H·Re g·H)`.
pub fn rho(u: &GaussianMatrix2) -> Result<IntMatrix4> {
    check_member(u)?;
    let (re, im, h) = (u.re(), u.im(), h());
    let m = GaussianMatrix::from_blocks(&re, &im.mul(&h), &h.mul(&im).neg(), &h.mul(&re).mul(&h));
    Ok(m.to_int4().expect("ρ of a Gaussian-integer matrix is integral"))
}

fn g0_scaled() -> GaussianMatrix2 {
    GaussianMatrix::from_ints(2, 2, &[(1, 0), (0, 1), (0, 1), (1, 0)])
}

/// `g₀ g g₀⁻¹`.
pub fn cayley(u: &GaussianMatrix2) -> GaussianMatrix2 {
    let m = g0_scaled();
    m.mul(u).mul(&m.inverse().expect("g₀ is invertible"))
}

/// `g₀⁻¹ γ g₀`.
pub fn cayley_inverse(gamma: &GaussianMatrix2) -> GaussianMatrix2 {
    let m = g0_scaled();
    m.inverse().expect("g₀ is invertible").mul(gamma).mul(&m)
}

/// The entrywise formula `½(a+ic−ib+d, −ia+c+b+id; ia+c+b−id, a−ic+ib+d)`.
pub fn cayley_formula(u: &GaussianMatrix2) -> GaussianMatrix2 {
    let i = GaussianRational::i();
    let (a, b, c, d) = (u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
    let (ia, ib, ic, id) = (&i * a, &i * b, &i * c, &i * d);
    let e00 = &(&(a + &ic) - &ib) + d;
    let e01 = &(&(&(-&ia) + c) + b) + &id;
    let e10 = &(&(&ia + c) + b) - &id;
    let e11 = &(&(a - &ic) + &ib) + d;
    GaussianMatrix::m2(e00, e01, e10, e11).scale(&half())
}

/// Membership in `G = g₀ U(1,1; Z[i]) g₀⁻¹`.
pub fn is_in_g(gamma: &GaussianMatrix2) -> bool {
    is_unitary_member(&cayley_inverse(gamma))
}

/// `ι(γ) = t ρ(g₀⁻¹ γ g₀) t⁻¹`.
pub fn iota(gamma: &GaussianMatrix2) -> Result<IntMatrix4> {
    let u = cayley_inverse(gamma);
    if !is_unitary_member(&u) {
        return Err(Error::Membership(format!("{gamma} is not in G")));
    }
    let t = t_matrix();
    Ok(t.mul(&rho(&u)?).mul(&t.symplectic_inverse()))
}

/// The generators of `G` acting on the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    /// `τ ↦ τ + 2`
    T,
    /// `τ ↦ −1/τ`
    S,
    /// `τ ↦ (1 + τ)/(1 − τ)`
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::T, Generator::S, Generator::C];

    pub fn matrix(self) -> GaussianMatrix2 {
        match self {
            Generator::T => GaussianMatrix::from_real_ints(2, 2, &[1, 2, 0, 1]),
            Generator::S => GaussianMatrix::from_real_ints(2, 2, &[0, 1, -1, 0]),
            Generator::C => {
                GaussianMatrix::from_real_ints(2, 2, &[1, 1, -1, 1]).scale(&GaussianRational::new(rat(1, 2), rat(1, 2)))
            }
        }
    }

    pub fn inverse_matrix(self) -> GaussianMatrix2 {
        self.matrix().inverse().expect("generators are invertible")
    }

    /// Preimage in `U(1,1; Z[i])` under the Cayley map.
    pub fn unitary_preimage(self) -> GaussianMatrix2 {
        match self {
            Generator::T => GaussianMatrix::from_ints(2, 2, &[(1, 1), (1, 0), (1, 0), (1, -1)]),
            Generator::S => GaussianMatrix::from_ints(2, 2, &[(0, 1), (0, 0), (0, 0), (0, -1)]),
            Generator::C => h_twist(),
        }
    }

    /// The image under `ι`, as frozen integer matrices.
    pub fn iota_image(self) -> IntMatrix4 {
        match self {
            Generator::T => IntMatrix4([[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
            Generator::S => IntMatrix4([[0, -1, 1, 0], [-1, 0, 0, 1], [-2, 0, 0, 1], [0, -2, 1, 0]]),
            Generator::C => IntMatrix4([[1, 0, 0, 0], [-1, 0, 0, 1], [-1, -1, 1, 1], [1, -1, 0, 0]]),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::T => "T",
            Generator::S => "S",
            Generator::C => "C",
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn matrix(self) -> GaussianMatrix2 {
        if self.inverse {
            self.generator.inverse_matrix()
        } else {
            self.generator.matrix()
        }
    }

    pub fn unitary_preimage(self) -> GaussianMatrix2 {
        let u = self.generator.unitary_preimage();
        if self.inverse {
            u.inverse().expect("unitary matrices are invertible")
        } else {
            u
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.generator.symbol(), if self.inverse { "^-1" } else { "" })
    }
}

/// Word in the generators of `G` with its product, leftmost letter acting last.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> (Vec<Letter>, GaussianMatrix2) {
    let mut word = Vec::with_capacity(len);
    let mut m = GaussianMatrix::identity(2);
    for _ in 0..len {
        let l = Letter { generator: Generator::ALL[rng.gen_range(0..3)], inverse: rng.gen_bool(0.5) };
        m = m.mul(&l.matrix());
        word.push(l);
    }
    (word, m)
}

/// `Ω_z = i/(1 − z²)·(1 + z², 2z; 2z, 1 + z²)` for `|z| < 1`.
pub fn period_matrix_ball(z: &GaussianRational) -> Result<GaussianMatrix2> {
    if z.norm() >= Rational::from_integer(1.into()) {
        return Err(Error::InvalidInput(format!("|z| ≥ 1 for z = {z}")));
    }
    let one = GaussianRational::one();
    let z2 = z * z;
    let f = &GaussianRational::i() / &(&one - &z2);
    let (diag, off) = (&one + &z2, z * &real_int(2));
    Ok(GaussianMatrix::m2(diag.clone(), off.clone(), off, diag).scale(&f))
}

/// `Ω_τ = (τ/2, 1/2; 1/2, τ/2)` for `Im τ > 0`.
pub fn period_matrix_half_plane(tau: &GaussianRational) -> Result<GaussianMatrix2> {
    if tau.im <= Rational::zero() {
        return Err(Error::InvalidInput(format!("Im τ ≤ 0 for τ = {tau}")));
    }
    let t = tau * &half();
    Ok(GaussianMatrix::m2(t.clone(), half(), half(), t))
}

/// Symmetric with positive-definite imaginary part.
pub fn is_siegel(omega: &GaussianMatrix2) -> bool {
    let im = omega.im();
    let (a, b, d) = (&im.get(0, 0).re, &im.get(0, 1).re, &im.get(1, 1).re);
    omega == &omega.transpose() && a > &Rational::zero() && a * d - b * b > Rational::zero()
}

/// `z(τ) = (τ − i)/(1 − iτ)`.
pub fn ball_coordinate(tau: &GaussianRational) -> Result<GaussianRational> {
    let i = GaussianRational::i();
    let den = &GaussianRational::one() - &(&i * tau);
    den.inv()
        .map(|d| &(tau - &i) * &d)
        .ok_or_else(|| Error::Degenerate("τ = −i has no ball coordinate".into()))
}

fn blocks(m: &GaussianMatrix) -> [GaussianMatrix; 4] {
    [m.block(0, 0, 2, 2), m.block(0, 2, 2, 2), m.block(2, 0, 2, 2), m.block(2, 2, 2, 2)]
}

/// `(AΩ + B)(CΩ + D)⁻¹` and `((CΩ + D)ᵗ)⁻¹ w`.
pub fn symplectic_action(
    m: &GaussianMatrix,
    omega: &GaussianMatrix2,
    w: &GaussianMatrix,
) -> Result<(GaussianMatrix2, GaussianMatrix)> {
    let [a, b, c, d] = blocks(m);
    let n = c.mul(omega).add(&d);
    let n_inv = n
        .inverse()
        .ok_or_else(|| Error::Degenerate("CΩ + D is singular".into()))?;
    let omega2 = a.mul(omega).add(&b).mul(&n_inv);
    let w2 = n.transpose().inverse().expect("transpose of invertible").mul(w);
    Ok((omega2, w2))
}

/// `R_z = −iΩ_z H`.
pub fn r_matrix(z: &GaussianRational) -> Result<GaussianMatrix2> {
    Ok(period_matrix_ball(z)?.mul(&h()).scale(&-&GaussianRational::i()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BallIdentities {
    /// `(𝟙, Ω_z)·J = (Ω_z H, −H) = iR_z·(𝟙, Ω_z)`
    pub j_action: bool,
    /// `R_z (z, 1)ᵗ = −(z, 1)ᵗ`
    pub r_eigenvector: bool,
    pub r_det: bool,
    pub r_involution: bool,
    pub siegel: bool,
}

impl BallIdentities {
    pub fn all_hold(&self) -> bool {
        self.j_action && self.r_eigenvector && self.r_det && self.r_involution && self.siegel
    }
}

pub fn ball_identities(z: &GaussianRational) -> Result<BallIdentities> {
    let omega = period_matrix_ball(z)?;
    let r = r_matrix(z)?;
    let h = h();
    let id = GaussianMatrix::identity(2);
    let row = GaussianMatrix::hstack(&id, &omega);
    let lhs = row.mul(&j_matrix().to_gaussian());
    let mid = GaussianMatrix::hstack(&omega.mul(&h), &h.neg());
    let rhs = r.scale(&GaussianRational::i()).mul(&row);
    let v = GaussianMatrix::new(2, 1, vec![z.clone(), GaussianRational::one()]);
    Ok(BallIdentities {
        j_action: lhs == mid && mid == rhs,
        r_eigenvector: r.mul(&v) == v.neg(),
        r_det: r.det() == real_int(-1),
        r_involution: r.mul(&r) == id,
        siegel: is_siegel(&omega),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfPlaneIdentities {
    /// `σ(t) J σ(t)⁻¹` is the expected matrix.
    pub conjugated_j_matches: bool,
    /// `(𝟙, Ω_τ)·σ(t)Jσ(t)⁻¹ = (0 1; −1 0)·(𝟙, Ω_τ)`
    pub conjugated_j_action: bool,
    /// `t·Ω_{z(τ)} = Ω_τ`
    pub cayley_compatible: bool,
    pub siegel: bool,
}

impl HalfPlaneIdentities {
    pub fn all_hold(&self) -> bool {
        self.conjugated_j_matches && self.conjugated_j_action && self.cayley_compatible && self.siegel
    }
}

pub fn conjugated_j() -> IntMatrix4 {
    let st = t_matrix().sigma();
    st.mul(&j_matrix()).mul(&st.symplectic_inverse())
}

pub fn half_plane_identities(tau: &GaussianRational) -> Result<HalfPlaneIdentities> {
    let omega = period_matrix_half_plane(tau)?;
    let cj = conjugated_j();
    let row = GaussianMatrix::hstack(&GaussianMatrix::identity(2), &omega);
    let k = GaussianMatrix::from_real_ints(2, 2, &[0, 1, -1, 0]);
    let zero_w = GaussianMatrix::zero(2, 1);
    let (pulled, _) = symplectic_action(&t_matrix().to_gaussian(), &period_matrix_ball(&ball_coordinate(tau)?)?, &zero_w)?;
    Ok(HalfPlaneIdentities {
        conjugated_j_matches: cj == conjugated_j_expected(),
        conjugated_j_action: row.mul(&cj.to_gaussian()) == k.mul(&row),
        cayley_compatible: pulled == omega,
        siegel: is_siegel(&omega),
    })
}

/// `σ(ρ(u)) J = J σ(ρ(u))`.
pub fn commutes_with_j(m: &IntMatrix4) -> bool {
    let (s, j) = (m.sigma(), j_matrix());
    s.mul(&j) == j.mul(&s)
}

/// `(τ, w) ↦ (Ω_τ, (iw, w))` intertwines `γ` on `H₁ × C` with `ι(γ)` on Siegel space.
pub fn equivariance_check(gamma: &GaussianMatrix2, tau: &GaussianRational, w: &GaussianRational) -> Result<bool> {
    let m = iota(gamma)?.to_gaussian();
    let omega = period_matrix_half_plane(tau)?;
    let i = GaussianRational::i();
    let wv = GaussianMatrix::new(2, 1, vec![&i * w, w.clone()]);
    let (omega2, w2) = symplectic_action(&m, &omega, &wv)?;
    let j = &(gamma.get(1, 0) * tau) + gamma.get(1, 1);
    let j_inv = j.inv().ok_or_else(|| Error::Degenerate("cτ + d = 0".into()))?;
    let tau2 = gamma.mobius(tau).expect("denominator checked");
    let w_new = w * &j_inv;
    let expected_w = GaussianMatrix::new(2, 1, vec![&i * &w_new, w_new]);
    Ok(omega2 == period_matrix_half_plane(&tau2)? && w2 == expected_w)
}

/// Image under the Cayley map of a determinant-one unitary matrix lies in
/// `Γ_θ`: integral, determinant one, `ab ≡ cd ≡ 0 (mod 2)`.
pub fn lands_in_theta_group(u: &GaussianMatrix2) -> bool {
    let c = cayley(u);
    if !c.entries().iter().all(is_real_integer) || c.det() != GaussianRational::one() {
        return false;
    }
    let e = |r, k| c.get(r, k).re.to_integer();
    let two = num_bigint::BigInt::from(2);
    (e(0, 0) * e(0, 1)) % &two == 0.into() && (e(1, 0) * e(1, 1)) % &two == 0.into()
}

/// A random point in the ball with small height.
pub fn random_ball_point<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let d = rng.gen_range(2..20);
        let (a, b) = (rng.gen_range(-d..=d), rng.gen_range(-d..=d));
        if a * a + b * b < d * d {
            return GaussianRational::new(rat(a, d), rat(b, d));
        }
    }
}

/// A random point in the upper half-plane with small height.
pub fn random_half_plane_point<R: Rng>(rng: &mut R) -> GaussianRational {
    let d = rng.gen_range(1..12);
    GaussianRational::new(rat(rng.gen_range(-30..=30), d), rat(rng.gen_range(1..=30), d))
}

fn random_nonzero<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let d = rng.gen_range(1..8);
        let w = GaussianRational::new(rat(rng.gen_range(-9..=9), d), rat(rng.gen_range(-9..=9), d));
        if !w.is_zero() {
            return w;
        }
    }
}

/// Outcome of the full embedding suite.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub cayley_generators: bool,
    pub cayley_formula: bool,
    pub iota_generators: bool,
    pub rho_commutes_with_j: bool,
    pub symplectic: bool,
    pub homomorphism: bool,
    pub theta_group: bool,
    pub ball_identities: bool,
    pub half_plane_identities: bool,
    pub equivariance: bool,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every exact identity on the generators and on `samples` random
/// parameters and words drawn from a seeded generator.
pub fn verify_embeddings(samples: usize, seed: u64) -> Result<EmbeddingReport> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut fail = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
        ok
    };

    let cayley_targets = [
        (Generator::T, Generator::T.matrix()),
        (Generator::S, Generator::S.matrix()),
        (Generator::C, Generator::C.matrix()),
    ];
    let mut cayley_generators = true;
    let mut iota_generators = true;
    for (gen, target) in &cayley_targets {
        let u = gen.unitary_preimage();
        cayley_generators &= fail(
            is_unitary_member(&u) && cayley(&u) == *target,
            format!("Cayley image of {} preimage", gen.symbol()),
        );
        iota_generators &= fail(iota(target)? == gen.iota_image(), format!("ι({})", gen.symbol()));
    }

    let mut cayley_formula = true;
    let mut rho_commutes_with_j = true;
    let mut symplectic = true;
    let mut homomorphism = true;
    let mut theta_group = true;
    let mut ball_ok = true;
    let mut half_ok = true;
    let mut equivariance = true;
    for k in 0..samples {
        let (l1, l2) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let (w1, g1) = random_word(&mut rng, l1);
        let (w2, g2) = random_word(&mut rng, l2);
        let word = |w: &[Letter]| w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        let (u1, u2) = (cayley_inverse(&g1), cayley_inverse(&g2));
        cayley_formula &= fail(cayley_formula_matches(&u1), format!("Cayley formula on {}", word(&w1)));
        let (r1, r2) = (rho(&u1)?, rho(&u2)?);
        rho_commutes_with_j &= fail(commutes_with_j(&r1), format!("σ(ρ)J = Jσ(ρ) on {}", word(&w1)));
        let (i1, i2) = (iota(&g1)?, iota(&g2)?);
        symplectic &= fail(r1.is_symplectic() && i1.is_symplectic(), format!("symplectic on {}", word(&w1)));
        homomorphism &= fail(
            rho(&u1.mul(&u2))? == r1.mul(&r2) && iota(&g1.mul(&g2))? == i1.mul(&i2),
            format!("homomorphism on {} · {}", word(&w1), word(&w2)),
        );
        if u1.det() == GaussianRational::one() {
            theta_group &= fail(lands_in_theta_group(&u1), format!("Γ_θ image of {}", word(&w1)));
        }
        let z = random_ball_point(&mut rng);
        ball_ok &= fail(ball_identities(&z)?.all_hold(), format!("ball identities at z = {z}"));
        let tau = random_half_plane_point(&mut rng);
        half_ok &= fail(half_plane_identities(&tau)?.all_hold(), format!("half-plane identities at τ = {tau}"));
        let w = random_nonzero(&mut rng);
        let gen = Generator::ALL[k % 3];
        for gamma in [gen.matrix(), g1.clone()] {
            match equivariance_check(&gamma, &tau, &w) {
                Ok(ok) => equivariance &= fail(ok, format!("equivariance for {gamma} at τ = {tau}")),
                Err(Error::Degenerate(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    // a fixed theta-group sample so the check never goes vacuous
    let u = Generator::T.unitary_preimage().mul(&Generator::S.unitary_preimage());
    theta_group &= fail(lands_in_theta_group(&u), "Γ_θ image of fixed word".into());

    Ok(EmbeddingReport {
        cayley_generators,
        cayley_formula,
        iota_generators,
        rho_commutes_with_j,
        symplectic,
        homomorphism,
        theta_group,
        ball_identities: ball_ok,
        half_plane_identities: half_ok,
        equivariance,
        samples,
        failures,
    })
}

fn cayley_formula_matches(u: &GaussianMatrix2) -> bool {
    cayley(u) == cayley_formula(u)
}

#[cfg(test)]
mod tests {
    use super::matrix::g;
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cayley_generators() {
        assert_eq!(cayley(&Generator::T.unitary_preimage()), GaussianMatrix::from_real_ints(2, 2, &[1, 2, 0, 1]));
        assert_eq!(cayley(&Generator::S.unitary_preimage()), GaussianMatrix::from_real_ints(2, 2, &[0, 1, -1, 0]));
        assert_eq!(cayley(&h_twist()), Generator::C.matrix());
        for gen in Generator::ALL {
            let u = gen.unitary_preimage();
            assert_eq!(cayley_formula(&u), cayley(&u));
            assert_eq!(cayley_inverse(&cayley(&u)), u);
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&GaussianMatrix::identity(2)).unwrap(), IntMatrix4::identity());
        let r = rho(&Generator::S.unitary_preimage()).unwrap();
        // Re-block zero, Im g·H = diag(1, −1)·diag(1, −1) = 𝟙
        assert_eq!(r, IntMatrix4([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]));
        assert!(r.is_symplectic() && commutes_with_j(&r));
        let not_member = GaussianMatrix::from_real_ints(2, 2, &[1, 1, 0, 1]);
        assert!(matches!(rho(&not_member), Err(Error::Membership(_))));
    }

    #[test]
    fn iota_generators() {
        for gen in Generator::ALL {
            let m = iota(&gen.matrix()).unwrap();
            assert_eq!(m, gen.iota_image(), "ι({})", gen.symbol());
            assert!(m.is_symplectic());
        }
        // the determinant-i/2 matrix (1+i)/2·(0 1; −1 0) is not in G
        let bad = GaussianMatrix::from_real_ints(2, 2, &[0, 1, -1, 0]).scale(&GaussianRational::new(rat(1, 2), rat(1, 2)));
        assert!(!is_in_g(&bad));
        assert!(matches!(iota(&bad), Err(Error::Membership(_))));
    }

    #[test]
    fn period_matrices() {
        let om = period_matrix_ball(&GaussianRational::zero()).unwrap();
        assert_eq!(om, GaussianMatrix::from_ints(2, 2, &[(0, 1), (0, 0), (0, 0), (0, 1)]));
        let ot = period_matrix_half_plane(&GaussianRational::i()).unwrap();
        assert_eq!(ot, GaussianMatrix::m2(GaussianRational::new(rat(0, 1), rat(1, 2)), half(), half(), GaussianRational::new(rat(0, 1), rat(1, 2))));
        assert!(is_siegel(&om) && is_siegel(&ot));
        assert!(period_matrix_ball(&g(1, 0)).is_err());
        assert!(period_matrix_half_plane(&g(1, 0)).is_err());
    }

    #[test]
    fn ball_and_half_plane() {
        assert_eq!(r_matrix(&GaussianRational::zero()).unwrap(), h());
        let z = GaussianRational::new(rat(1, 3), rat(1, 3));
        assert!(ball_identities(&z).unwrap().all_hold());
        assert_eq!(conjugated_j(), conjugated_j_expected());
        assert!(half_plane_identities(&GaussianRational::new(rat(1, 3), rat(5, 7))).unwrap().all_hold());
    }

    #[test]
    fn equivariance() {
        let tau = GaussianRational::i();
        let w = GaussianRational::one();
        assert!(equivariance_check(&GaussianMatrix::identity(2), &tau, &w).unwrap());
        for gen in Generator::ALL {
            for tau in [g(0, 1), GaussianRational::new(rat(1, 2), rat(3, 2)), GaussianRational::new(rat(-2, 3), rat(1, 5))] {
                assert!(equivariance_check(&gen.matrix(), &tau, &g(2, -1)).unwrap());
            }
        }
        // C at τ = 1 is a pole
        assert!(equivariance_check(&Generator::C.matrix(), &g(1, 0), &w).is_err());
    }

    #[test]
    fn theta_group() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut hits = 0;
        for _ in 0..60 {
            let len = rng.gen_range(1..8);
            let mut u = GaussianMatrix::identity(2);
            for _ in 0..len {
                let l = Letter { generator: Generator::ALL[rng.gen_range(0..3)], inverse: rng.gen_bool(0.5) };
                u = u.mul(&l.unitary_preimage());
            }
            assert!(is_unitary_member(&u));
            if u.det() == GaussianRational::one() {
                hits += 1;
                assert!(lands_in_theta_group(&u));
            }
        }
        assert!(hits > 5);
    }

    #[test]
    fn suite() {
        let r = verify_embeddings(10, 7).unwrap();
        assert!(r.all_hold(), "{:?}", r.failures);
    }
}
