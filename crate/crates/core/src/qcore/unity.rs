//! Laurent expansion in `u` after the substitution `t = e^{u/2}` (i.e. `q = e^u`).

use std::collections::BTreeMap;
use std::fmt;

use dashu_int::IBig;
use dashu_ratio::RBig;

use super::laurent::{render_terms, Laurent};
use super::QRational;
use crate::error::{Error, Result};

/// Truncated Laurent series `Σ_{k ≤ order} c_k u^k` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    pub order: i64,
    terms: BTreeMap<i64, RBig>,
}

impl USeries {
    pub fn coeff(&self, k: i64) -> RBig {
        self.terms.get(&k).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn terms(&self) -> &BTreeMap<i64, RBig> {
        &self.terms
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(k, c)| (*k, c.clone())), "u")
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Taylor coefficients `[u^n] p(e^{u/2})` for `n < len`.
fn taylor(p: &Laurent, len: usize) -> Vec<RBig> {
    let mut out = vec![RBig::ZERO; len];
    for (k, c) in p.terms() {
        let x = RBig::from_parts_signed(IBig::from(k), IBig::from(2));
        // c·e^{x u} = Σ c·x^n/n! u^n
        let mut term = RBig::from(c.clone());
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                term = term * &x / RBig::from(n as u64);
            }
            *slot += &term;
        }
    }
    out
}

/// Laurent expansion of `f(e^{u/2})` through `u^order`.
pub fn expand_at_unity(f: &QRational, order: i64) -> Result<USeries> {
    if f.is_zero() {
        return Ok(USeries { order, terms: BTreeMap::new() });
    }
    let num = f.numerator();
    let den = f.denominator();
    // A nonzero polynomial of degree D vanishes at t = 1 to order at most D,
    // so D + 1 Taylor terms always reveal the pole order.
    let probe = den.degree().max(0) as usize + 1;
    let dser = taylor(&den, probe);
    let vd = dser.iter().position(|c| !c.is_zero()).ok_or(Error::InsufficientOrder)? as i64;
    // The result starts at u^{vn - vd} with vn ≥ 0.
    if order < -vd {
        return Ok(USeries { order, terms: BTreeMap::new() });
    }
    let len = (order + vd + 1) as usize;
    let nser = taylor(num, len);
    let dfull = taylor(&den, len + vd as usize);
    let d: Vec<RBig> = dfull[vd as usize..].to_vec();
    // num(u) / (u^vd · d(u)), d(0) ≠ 0: power-series division.
    let mut quot = vec![RBig::ZERO; len];
    for n in 0..len {
        let mut acc = nser[n].clone();
        for k in 1..=n {
            acc -= &d[k] * &quot[n - k];
        }
        quot[n] = acc / &d[0];
    }
    let terms = quot
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n as i64 - vd, c))
        .collect();
    Ok(USeries { order, terms })
}
