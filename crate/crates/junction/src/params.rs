//! Physical parameters and closed-form constants of the 1D junction profile.

use std::fmt;

/// Physical parameters of the junction model.
///
/// `a` scales the normal-side potential (related to the distance from the
/// critical temperature), `m` is the mass/conductivity ratio between the two
/// materials, and `eps` is the Ginzburg-Landau length (inverse GL parameter).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub a: f64,
    pub m: f64,
    pub eps: f64,
}

/// Construction rejected a non-positive or non-finite parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamError {
    pub name: &'static str,
    pub value: f64,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} must be > 0 and finite (got {})", self.name, self.value)
    }
}

impl std::error::Error for ParamError {}

impl Params {
    pub fn new(a: f64, m: f64, eps: f64) -> Result<Self, ParamError> {
        for (name, value) in [("a", a), ("m", m), ("eps", eps)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ParamError { name, value });
            }
        }
        Ok(Params { a, m, eps })
    }
}

/// Derived scalars of the 1D profile.
///
/// The closed-form energy constants carry both branches of the published
/// expressions and the quadrature values of the defining integrals. The two
/// disagree on the `Ω₂` side for m ≠ 1 (see [`c1_closed_parts`]); quadrature
/// is authoritative, so `c1_quad`/`c2_quad` start unset and are filled by
/// `profile1d`, and reports always carry both with the absolute difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileConstants {
    /// ℓ = √(a/(2m))
    pub ell: f64,
    /// β = (1 + √(1+ℓ²))/ℓ, always > 1
    pub beta: f64,
    /// Interface amplitude A = U(0) = (β−1)/(β+1), in (0,1)
    pub amp: f64,
    /// de Gennes coefficient γ = √(a/m): U'(0⁺) = γ·U(0)
    pub gamma: f64,
    /// Extrapolation length b = 1/γ
    pub b: f64,
    /// Closed-form c₁ (sum of both parts of [`c1_closed_parts`])
    pub c1_closed: f64,
    /// Closed-form c₂ (sum of both parts of [`c2_closed_parts`])
    pub c2_closed: f64,
    /// Quadrature of the defining c₁ integral; `None` until filled
    pub c1_quad: Option<f64>,
    /// Quadrature of the defining c₂ integral; `None` until filled
    pub c2_quad: Option<f64>,
}

/// Closed-form constants derived from `(a, m)`. Quadrature fields stay unset;
/// use [`crate::profile1d::constants_with_quadrature`] for the full set.
pub fn derive_constants(p: Params) -> ProfileConstants {
    let ell = (p.a / (2.0 * p.m)).sqrt();
    let beta = (1.0 + (1.0 + ell * ell).sqrt()) / ell;
    let amp = (beta - 1.0) / (beta + 1.0);
    let gamma = (p.a / p.m).sqrt();
    let c1p = c1_closed_parts(p);
    let c2p = c2_closed_parts(p);
    ProfileConstants {
        ell,
        beta,
        amp,
        gamma,
        b: 1.0 / gamma,
        c1_closed: c1p.0 + c1p.1,
        c2_closed: c2p.0 + c2p.1,
        c1_quad: None,
        c2_quad: None,
    }
}

/// Alternative route to β used as a cross-check: (√(2m)+√(a+2m))/√a.
pub fn beta_alt(p: Params) -> f64 {
    ((2.0 * p.m).sqrt() + (p.a + 2.0 * p.m).sqrt()) / p.a.sqrt()
}

/// The two summands of the published closed form for c₁: the `Ω₁`-side
/// (t > 0) integral `4√2(3β+1)/(3(β+1)³)` and the `Ω₂`-side expression
/// `(1/2)√(a/m)(1+1/m)A²`.
///
/// The `Ω₂`-side summand disagrees with direct quadrature of the defining
/// integral (which evaluates analytically to `√(a/m)A²`) except at m = 1.
pub fn c1_closed_parts(p: Params) -> (f64, f64) {
    let c = derive_raw(p);
    let (beta, amp) = (c.0, c.1);
    let first = 4.0 * 2.0_f64.sqrt() * (3.0 * beta + 1.0) / (3.0 * (beta + 1.0).powi(3));
    let second = 0.5 * (p.a / p.m).sqrt() * (1.0 + 1.0 / p.m) * amp * amp;
    (first, second)
}

/// The two summands of the published closed form for c₂: the `Ω₁`-side
/// integral `(4/3)[ln((1+β)/β) − β/(1+β)²]` and the `Ω₂`-side expression
/// `(A²/4)(1+1/m)`.
///
/// The `Ω₂`-side summand has the opposite sign from direct quadrature of the
/// defining integral (whose weight t is negative on that side and which
/// evaluates analytically to `−A²/(2m)`).
pub fn c2_closed_parts(p: Params) -> (f64, f64) {
    let c = derive_raw(p);
    let (beta, amp) = (c.0, c.1);
    let first = (4.0 / 3.0) * (((1.0 + beta) / beta).ln() - beta / (1.0 + beta).powi(2));
    let second = amp * amp / 4.0 * (1.0 + 1.0 / p.m);
    (first, second)
}

fn derive_raw(p: Params) -> (f64, f64) {
    let ell = (p.a / (2.0 * p.m)).sqrt();
    let beta = (1.0 + (1.0 + ell * ell).sqrt()) / ell;
    ((beta), (beta - 1.0) / (beta + 1.0))
}
