//! Laurent polynomials in `t` with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::ops::{Gcd, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// `Σ coeffs[i]·t^(val+i)`. Normalized: no leading or trailing zero coefficients,
/// and the zero polynomial has `val == 0` and no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<IBig>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(IBig::ONE, 0)
    }

    pub fn monomial(c: IBig, k: i64) -> Self {
        Laurent::from_coeffs(k, vec![c])
    }

    pub fn from_coeffs(val: i64, coeffs: Vec<IBig>) -> Self {
        let mut p = Laurent { val, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, IBig)>>(terms: I) -> Self {
        let terms: Vec<(i64, IBig)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Laurent::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![IBig::ZERO; (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Laurent::from_coeffs(lo, coeffs)
    }

    pub fn from_small(val: i64, coeffs: &[i64]) -> Self {
        Laurent::from_coeffs(val, coeffs.iter().map(|&c| IBig::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.val += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> i64 {
        self.val + self.coeffs.len() as i64 - 1
    }

    /// Number of coefficient slots between valuation and degree.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i64) -> IBig {
        let i = k - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            IBig::ZERO
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[IBig] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&IBig> {
        self.coeffs.last()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &IBig)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { val: self.val + k, coeffs: self.coeffs.clone() }
    }

    /// Same coefficients with the valuation moved to zero.
    pub fn unshifted(&self) -> Self {
        self.shift(-self.val)
    }

    /// `p(1/t)`.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { val: -self.degree(), coeffs }
    }

    pub fn scale(&self, c: &IBig) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_small(&self, c: i64) -> Self {
        self.scale(&IBig::from(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &IBig) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> UBig {
        let mut g = UBig::ZERO;
        for c in &self.coeffs {
            g = gcd_ubig(&g, &c.unsigned_abs());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multiplies by a polynomial with small integer coefficients (`val` 0).
    pub fn mul_small_poly(&self, p: &[i64]) -> Self {
        if self.is_zero() || p.is_empty() {
            return Laurent::zero();
        }
        let mut out = vec![IBig::ZERO; self.coeffs.len() + p.len() - 1];
        for (j, &b) in p.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                match b {
                    1 => out[i + j] += a,
                    -1 => out[i + j] -= a,
                    _ => out[i + j] += a * IBig::from(b),
                }
            }
        }
        Laurent::from_coeffs(self.val, out)
    }

    /// Exact division by a monic polynomial with small coefficients and nonzero
    /// constant term. `None` if the division leaves a remainder.
    pub fn div_exact_small_monic(&self, d: &[i64]) -> Option<Self> {
        let dn = d.len() - 1;
        debug_assert_eq!(d[dn], 1);
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.coeffs.len() <= dn {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dn;
        let mut quot = vec![IBig::ZERO; qlen];
        for k in (0..qlen).rev() {
            let c = std::mem::take(&mut rem[k + dn]);
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in d[..dn].iter().enumerate() {
                match dj {
                    0 => {}
                    1 => rem[k + j] -= &c,
                    -1 => rem[k + j] += &c,
                    _ => rem[k + j] -= &c * IBig::from(dj),
                }
            }
            quot[k] = c;
        }
        if rem[..dn].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_coeffs(self.val, quot))
    }

    /// Exact division by an arbitrary nonzero Laurent polynomial over the integers.
    pub fn div_exact(&self, d: &Laurent) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return None;
        }
        let lead = d.coeffs[dn].clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dn;
        let mut quot = vec![IBig::ZERO; qlen];
        for k in (0..qlen).rev() {
            let top = std::mem::take(&mut rem[k + dn]);
            if top.is_zero() {
                continue;
            }
            if !(&top % &lead).is_zero() {
                return None;
            }
            let c = &top / &lead;
            for j in 0..dn {
                rem[k + j] -= &c * &d.coeffs[j];
            }
            quot[k] = c;
        }
        if rem[..dn].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_coeffs(self.val - d.val, quot))
    }

    /// Primitive part with positive leading coefficient, valuation shifted to zero.
    pub fn primitive_monic_sign(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let c = IBig::from(self.content());
        let mut p = self.unshifted().div_scalar_exact(&c);
        if p.leading().unwrap() < &IBig::ZERO {
            p = -p;
        }
        p
    }

    pub fn eval(&self, t: &RBig) -> RBig {
        let mut acc = RBig::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + RBig::from(c.clone());
        }
        if self.val >= 0 {
            acc * pow_r(t, self.val as u64)
        } else {
            acc / pow_r(t, (-self.val) as u64)
        }
    }

    /// Writes `Σ c·var^k` in descending exponent order, e.g. `2*t^3 - t + 1 - t^-2`.
    pub fn render(&self, var: &str) -> String {
        render_terms(self.terms().rev().map(|(k, c)| (k, RBig::from(c.clone()))), var)
    }
}

pub(crate) fn pow_r(t: &RBig, n: u64) -> RBig {
    let mut acc = RBig::ONE;
    for _ in 0..n {
        acc *= t;
    }
    acc
}

pub(crate) fn gcd_ubig(a: &UBig, b: &UBig) -> UBig {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    a.gcd(b)
}

/// Renders `(exponent, rational coefficient)` terms already in display order.
pub(crate) fn render_terms<I: Iterator<Item = (i64, RBig)>>(terms: I, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c < RBig::ZERO;
        let mag = if neg { -c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -self.clone()
    }
}

fn add_signed(a: &Laurent, b: &Laurent, negate_b: bool) -> Laurent {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.val.min(b.val);
    let hi = a.degree().max(b.degree());
    let mut coeffs = vec![IBig::ZERO; (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.val - lo) as usize + i] = c.clone();
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.val - lo) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    Laurent::from_coeffs(lo, coeffs)
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        add_signed(self, rhs, false)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        add_signed(self, rhs, true)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![IBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Laurent::from_coeffs(self.val + rhs.val, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Primitive gcd over `Z[t]` of two polynomials (valuations ignored), with positive
/// leading coefficient. Uses the primitive polynomial remainder sequence.
pub fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() {
        return b.primitive_monic_sign();
    }
    if b.is_zero() {
        return a.primitive_monic_sign();
    }
    let mut x = a.primitive_monic_sign();
    let mut y = b.primitive_monic_sign();
    if x.span() < y.span() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { r.primitive_monic_sign() };
    }
    x.primitive_monic_sign()
}

/// Pseudo-remainder of `a` by `b` (both with valuation zero).
fn pseudo_rem(a: &Laurent, b: &Laurent) -> Laurent {
    let bn = b.coeffs.len() - 1;
    let lead = b.coeffs[bn].clone();
    let mut rem = a.coeffs.clone();
    while rem.len() > bn && !rem.is_empty() {
        let top = rem.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = rem.len() - bn;
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for j in 0..bn {
            rem[k + j] -= &top * &b.coeffs[j];
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    Laurent::from_coeffs(0, rem)
}
