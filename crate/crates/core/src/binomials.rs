//! Real-argument binomial coefficients and the scalar inequalities behind the bounds.
//!
//! All logarithms are base 2.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Relative slack allowed when comparing two evaluated sides of an inequality.
pub const RELATIVE_SLACK: f64 = 1e-12;

/// `C(y, i)` for real `y >= 0`.
///
/// Evaluated as the running product `∏ (y - j) / (j + 1)`, which is exact for
/// integer `y` up to the accumulated rounding. Products leaving the `f64`
/// range are redone in log space with the sign tracked separately. The value
/// is negative when the falling factorial crosses zero an odd number of times
/// (non-integer `y` with `i > ⌈y⌉`); see [`binom_real_clamped`].
pub fn binom_real(y: f64, i: usize) -> f64 {
    if i == 0 {
        return 1.0;
    }
    let mut i = i;
    if y.fract() == 0.0 && y >= 0.0 {
        if i as f64 > y {
            return 0.0;
        }
        // symmetry shortens the product for integer arguments
        i = i.min((y - i as f64) as usize);
    }
    let mut acc = 1.0f64;
    for j in 0..i {
        acc *= (y - j as f64) / (j as f64 + 1.0);
    }
    if acc.is_finite() && (acc != 0.0 || (0..i).any(|j| y == j as f64)) {
        return acc;
    }
    let mut log = 0.0f64;
    let mut negative = false;
    for j in 0..i {
        let factor = y - j as f64;
        if factor == 0.0 {
            return 0.0;
        }
        negative ^= factor < 0.0;
        log += factor.abs().ln() - (j as f64 + 1.0).ln();
    }
    let magnitude = log.exp();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// `max(C(y, i), 0)` and whether clamping happened.
pub fn binom_real_clamped(y: f64, i: usize) -> (f64, bool) {
    let v = binom_real(y, i);
    if v < 0.0 {
        (0.0, true)
    } else {
        (v, false)
    }
}

/// A validated `(y, i)` pair for the generalized binomial coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealBinomialQuery {
    pub y: f64,
    pub i: usize,
}

impl RealBinomialQuery {
    pub fn new(y: f64, i: usize) -> Result<Self> {
        if !(y >= 0.0 && y.is_finite()) {
            return Err(invalid(format!("binomial argument must be finite and >= 0, got {y}")));
        }
        Ok(Self { y, i })
    }

    pub fn value(&self) -> f64 {
        binom_real(self.y, self.i)
    }
}

/// The `y >= k - 1` with `C(y, k) = m`.
///
/// The bracket starts at `[k - 1, k - 1 + max(2, 2 m^{1/k} k)]` and doubles
/// its width until it contains the root; bisection then runs until the
/// endpoints are within `1e-12` relative (so within `1e-9` absolute for
/// `y <= 1000`). The result never overshoots: `C(y, k) <= m` unless the root
/// is hit exactly.
pub fn invert_binomial(m: f64, k: usize) -> Result<f64> {
    let (lo, hi) = root_bracket(m, k)?;
    Ok(if binom_real(hi, k) == m { hi } else { lo })
}

/// Like [`invert_binomial`] but never undershoots: `C(y, k) >= m`.
pub fn invert_binomial_upper(m: f64, k: usize) -> Result<f64> {
    root_bracket(m, k).map(|(_, hi)| hi)
}

fn root_bracket(m: f64, k: usize) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(invalid("invert_binomial needs k >= 1"));
    }
    if !(m >= 0.0 && m.is_finite()) {
        return Err(invalid(format!("invert_binomial needs finite m >= 0, got {m}")));
    }
    let lo0 = k as f64 - 1.0;
    if m == 0.0 {
        return Ok((lo0, lo0));
    }
    let mut lo = lo0;
    let mut width = (2.0 * m.powf(1.0 / k as f64) * k as f64).max(2.0);
    let mut hi = lo0 + width;
    let mut iterations = 0;
    while binom_real(hi, k) < m {
        lo = hi;
        width *= 2.0;
        hi = lo0 + width;
        iterations += 1;
        if iterations > 200 || !hi.is_finite() {
            return Err(Error::Numeric(format!("no bracket for C(y, {k}) = {m}")));
        }
    }
    for _ in 0..200 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi || hi - lo <= 1e-12 * hi.max(1.0) {
            return Ok((lo, hi));
        }
        if binom_real(mid, k) < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Numeric(format!(
        "bisection for C(y, {k}) = {m} did not converge"
    )))
}

/// Binary entropy, with `H(0) = H(1) = 0`.
pub fn entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(invalid(format!("r must be finite and >= 1, got {r}")));
    }
    Ok(())
}

/// `μ(r, α) = (r + 1 - log(1 + α)) / (2 - log(1 + α))`.
pub fn mu(r: f64, alpha: f64) -> Result<f64> {
    check_r(r)?;
    check_alpha(alpha)?;
    let l = (1.0 + alpha).log2();
    Ok((r + 1.0 - l) / (2.0 - l))
}

/// The lower-bound exponent `λ(α)` for `τ(n, n^2, αn)`.
///
/// `log(1 + α)` when `α >= √2 - 1`, otherwise `log(1 + α) / H(log(1 + α))`.
pub fn lambda_br(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let l = (1.0 + alpha).log2();
    if alpha >= std::f64::consts::SQRT_2 - 1.0 {
        Ok(l)
    } else {
        Ok(l / entropy(l))
    }
}

/// The exponent bundle `(r, α, γ, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentParams {
    pub r: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ExponentParams {
    pub fn new(r: f64, alpha: f64, gamma: f64, delta: f64) -> Result<Self> {
        check_r(r)?;
        check_alpha(alpha)?;
        if !(0.0..=1.0).contains(&gamma) {
            return Err(invalid(format!("gamma must lie in [0, 1], got {gamma}")));
        }
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(invalid(format!("delta must be finite and >= 0, got {delta}")));
        }
        Ok(Self {
            r,
            alpha,
            gamma,
            delta,
        })
    }

    pub fn mu(&self) -> f64 {
        mu(self.r, self.alpha).expect("validated on construction")
    }

    pub fn lambda(&self) -> f64 {
        lambda_br(self.alpha).expect("validated on construction")
    }
}

/// Both sides of an inequality `lhs >= rhs` and whether it held.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn at_least(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs >= rhs - RELATIVE_SLACK * rhs.abs(),
        }
    }
}

/// `Σ_{i<=k} C(x, i) γ^i >= ¼ (Σ_{i<=k} C(x, i))^{log(1+γ)}`.
pub fn sum_binom_gamma_lower(k: usize, x: f64, gamma: f64) -> Result<InequalityCheck> {
    if k == 0 {
        return Err(invalid("k must be >= 1"));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(invalid(format!("gamma must lie in [0, 1], got {gamma}")));
    }
    if !(x >= k as f64 && x.is_finite()) {
        return Err(invalid(format!("x must be finite and >= k = {k}, got {x}")));
    }
    let mut weighted = 0.0;
    let mut plain = 0.0;
    let mut power = 1.0;
    for i in 0..=k {
        let c = binom_real(x, i);
        weighted += c * power;
        plain += c;
        power *= gamma;
    }
    let rhs = 0.25 * plain.powf((1.0 + gamma).log2());
    Ok(InequalityCheck::at_least(weighted, rhs))
}

/// `2^{x-1} < Σ_{i<=⌊x⌋} C(x, i) <= 2^x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSumBounds {
    pub lower: f64,
    pub sum: f64,
    pub upper: f64,
    pub holds: bool,
}

pub fn newton_partial_sum_bounds(x: f64) -> Result<PartialSumBounds> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(invalid(format!("x must be finite and > 0, got {x}")));
    }
    let sum: f64 = (0..=x.floor() as usize).map(|i| binom_real(x, i)).sum();
    let lower = (x - 1.0).exp2();
    let upper = x.exp2();
    Ok(PartialSumBounds {
        lower,
        sum,
        upper,
        holds: lower < sum && sum <= upper * (1.0 + RELATIVE_SLACK),
    })
}

/// `C(y, i) / C(y, k) >= i^{-Δ} C(x, i - Δ) / C(x, k - Δ)` given `C(y, k) <= C(x, k - Δ)`.
///
/// All four binomials must be strictly positive, which holds when
/// `k < y + 1` and `k - Δ < x + 1`.
pub fn binom_ratio_lower(x: f64, y: f64, k: usize, i: usize, delta: usize) -> Result<InequalityCheck> {
    if !(delta <= i && i <= k) {
        return Err(invalid(format!("need Δ <= i <= k, got Δ={delta}, i={i}, k={k}")));
    }
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(invalid("x and y must be finite and positive"));
    }
    if !((k as f64) < y + 1.0 && ((k - delta) as f64) < x + 1.0) {
        return Err(invalid(format!(
            "need k < y + 1 and k - Δ < x + 1 (x={x}, y={y}, k={k}, Δ={delta})"
        )));
    }
    let y_k = binom_real(y, k);
    let x_kd = binom_real(x, k - delta);
    if y_k > x_kd * (1.0 + RELATIVE_SLACK) {
        return Err(invalid(format!(
            "hypothesis C(y, k) = {y_k} <= C(x, k - Δ) = {x_kd} fails"
        )));
    }
    let lhs = binom_real(y, i) / y_k;
    let rhs = (i as f64).powi(-(delta as i32)) * binom_real(x, i - delta) / x_kd;
    Ok(InequalityCheck::at_least(lhs, rhs))
}

/// `e^{-2x} <= 1 - x <= e^{-x}`; the lower side is only claimed on `[0, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichCheck {
    /// `None` outside `[0, 1/2]`.
    pub lower: Option<bool>,
    pub upper: bool,
}

pub fn exp_sandwich(x: f64) -> SandwichCheck {
    let mid = 1.0 - x;
    // a few ulps of room for the rounded exponential near x = 0
    let tol = 4.0 * f64::EPSILON;
    let upper = mid <= (-x).exp() + tol * mid.abs().max(1.0);
    let lower = (0.0..=0.5)
        .contains(&x)
        .then(|| (-2.0 * x).exp() <= mid + tol);
    SandwichCheck { lower, upper }
}

/// `P[H = h]` for `H = |X ∩ Y|`, `X` a uniform `x`-subset of `[n]`, `|Y| = y`.
pub fn hypergeom_pmf(n: u64, x: u64, y: u64, h: u64) -> Result<f64> {
    if !(h <= x && x <= n && y <= n) {
        return Err(invalid(format!(
            "need h <= x <= n and y <= n (n={n}, x={x}, y={y}, h={h})"
        )));
    }
    if h > y || x - h > n - y {
        return Ok(0.0);
    }
    // C(x,h) ∏_{t<h} (y-t)/(n-t) ∏_{t<x-h} (n-y-t)/(n-h-t)
    let mut p = binom_real(x as f64, h as usize);
    for t in 0..h {
        p *= (y - t) as f64 / (n - t) as f64;
    }
    for t in 0..x - h {
        p *= (n - y - t) as f64 / (n - h - t) as f64;
    }
    Ok(p)
}

/// `P[B = h]` for `B ~ Bin(x, p)`.
pub fn binom_pmf(x: u64, p: f64, h: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || h > x {
        return Err(invalid(format!("need 0 <= p <= 1 and h <= x (p={p}, h={h}, x={x})")));
    }
    Ok(binom_real(x as f64, h as usize) * p.powi(h as i32) * (1.0 - p).powi((x - h) as i32))
}

fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Decides `P[H = h] <= 2 P[B = h]` with `B ~ Bin(x, y/n)` in exact integer arithmetic.
pub fn hypergeom_dominated_exact(n: u64, x: u64, y: u64, h: u64) -> bool {
    // C(y,h) C(n-y,x-h) n^x <= 2 C(x,h) y^h (n-y)^{x-h} C(n,x)
    if h > y || x - h > n - y {
        return true;
    }
    let pow = |b: u64, e: u64| num_bigint::BigUint::from(b).pow(e as u32);
    let lhs = big_binomial(y, h) * big_binomial(n - y, x - h) * pow(n, x);
    let rhs = BigUint::from(2u32) * big_binomial(x, h) * pow(y, h) * pow(n - y, x - h) * big_binomial(n, x);
    lhs <= rhs
}

/// Counts violations of `P[H = h] <= 2 P[B = h]` over every `y <= n` and `h <= x`.
///
/// Floating evaluation settles clear cases; anything within `1e-9` relative of
/// the boundary is decided exactly.
pub fn hypergeom_domination_violations(n: u64, x: u64) -> Result<u64> {
    if x > n {
        return Err(invalid(format!("need x <= n, got x={x}, n={n}")));
    }
    let mut violations = 0;
    for y in 0..=n {
        let p = y as f64 / n as f64;
        for h in 0..=x {
            let hyper = hypergeom_pmf(n, x, y, h)?;
            let bound = 2.0 * binom_pmf(x, p, h)?;
            let clear = hyper <= bound * (1.0 - 1e-9);
            if !clear && !hypergeom_dominated_exact(n, x, y, h) {
                violations += 1;
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn binom_real_examples() {
        assert_eq!(binom_real(4.0, 2), 6.0);
        assert_eq!(binom_real(2.5, 2), 1.875);
        assert_eq!(binom_real(7.3, 0), 1.0);
        assert_eq!(binom_real(3.0, 5), 0.0);
        assert!(binom_real(2.5, 4) < 0.0);
        assert_eq!(binom_real_clamped(2.5, 4), (0.0, true));
    }

    #[test]
    fn binom_real_survives_overflow() {
        let v = binom_real(3000.5, 1500);
        assert!(v.is_infinite() || v > 1e300);
        let tiny = binom_real(1500.5, 1500);
        assert!(tiny.is_finite() && tiny > 0.0);
    }

    #[test]
    fn invert_examples() {
        assert!(close(invert_binomial(6.0, 2).unwrap(), 4.0, 1e-12));
        assert!(close(invert_binomial(10.0, 3).unwrap(), 5.0, 1e-12));
        let root = (1.0 + 57f64.sqrt()) / 2.0;
        assert!((invert_binomial(7.0, 2).unwrap() - root).abs() < 1e-9);
        assert_eq!(invert_binomial(0.0, 3).unwrap(), 2.0);
        assert!(invert_binomial(0.5, 2).unwrap() < 2.0);
        assert!(invert_binomial(1.0, 0).is_err());
        let up = invert_binomial_upper(7.0, 2).unwrap();
        assert!(binom_real(up, 2) >= 7.0 && (up - root).abs() < 1e-9);
    }

    #[test]
    fn exponents() {
        assert!((mu(2.0, 0.5).unwrap() - 1.706695).abs() < 1e-6);
        assert_eq!(mu(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(mu(2.0, 1.0).unwrap(), 2.0);
        assert!(mu(2.0, 0.0).is_err());
        assert_eq!(lambda_br(1.0).unwrap(), 1.0);
        assert!((2.0 * lambda_br(0.5).unwrap() - 1.169925).abs() < 1e-6);
        let l = 1.2f64.log2();
        assert_eq!(lambda_br(0.2).unwrap(), l / entropy(l));
        assert_eq!(entropy(0.0), 0.0);
        assert_eq!(entropy(1.0), 0.0);
        assert_eq!(entropy(0.5), 1.0);
    }

    #[test]
    fn scalar_claims_examples() {
        let c = sum_binom_gamma_lower(5, 5.0, 1.0).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (32.0, 8.0, true));
        let c = sum_binom_gamma_lower(3, 7.5, 0.0).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (1.0, 0.25, true));
        assert!(sum_binom_gamma_lower(4, 3.0, 0.5).is_err());

        let b = newton_partial_sum_bounds(3.5).unwrap();
        assert_eq!(b.sum, 11.0625);
        assert!(b.holds);
        assert_eq!(newton_partial_sum_bounds(6.0).unwrap().sum, 64.0);
        let b = newton_partial_sum_bounds(0.5).unwrap();
        assert_eq!(b.sum, 1.0);

        let r = binom_ratio_lower(10.0, 10.0, 4, 3, 0).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.holds);
        assert!(binom_ratio_lower(10.0, 8.0, 4, 3, 1).unwrap().holds);
        assert!(binom_ratio_lower(3.0, 8.0, 4, 3, 0).is_err());

        for x in [0.0, 0.25, 0.5] {
            let s = exp_sandwich(x);
            assert_eq!(s.lower, Some(true));
            assert!(s.upper);
        }
        assert_eq!(exp_sandwich(-1.0).lower, None);
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(hypergeom_pmf(10, 10, 4, 4).unwrap(), 1.0);
        assert_eq!(hypergeom_pmf(10, 10, 4, 3).unwrap(), 0.0);
        let h = hypergeom_pmf(100, 10, 50, 5).unwrap();
        assert!(h <= 2.0 * binom_pmf(10, 0.5, 5).unwrap());
        assert_eq!(hypergeom_pmf(7, 1, 3, 1).unwrap(), binom_pmf(1, 3.0 / 7.0, 1).unwrap());
        assert!(hypergeom_pmf(5, 6, 1, 0).is_err());
        assert!(hypergeom_dominated_exact(100, 10, 50, 5));
        assert_eq!(hypergeom_domination_violations(36, 6).unwrap(), 0);
    }
}
