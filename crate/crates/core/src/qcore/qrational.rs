//! Rational functions in `t = q^{1/2}` over the rationals, kept in a canonical
//! reduced form so that structural equality is mathematical equality.
//!
//! The denominator is stored factored as `scale · ∏ Φ_d(t)^{e_d} · rest(t)`
//! where `Φ_d` are cyclotomic polynomials. Sums and products of principal
//! specializations only ever produce cyclotomic denominators; `rest` holds any
//! other primitive factor (it appears only after dividing by a general value)
//! and is reduced against the numerator with a polynomial gcd.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use dashu_int::ops::UnsignedAbs;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::cyclotomic::{cyclotomic, divisors, euler_phi};
use super::laurent::{gcd_ubig, poly_gcd, Laurent};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRational {
    num: Laurent,
    scale: UBig,
    cyclo: Vec<(u32, u32)>,
    rest: Option<Arc<Laurent>>,
}

impl Default for QRational {
    fn default() -> Self {
        QRational::zero()
    }
}

impl QRational {
    pub fn zero() -> Self {
        QRational { num: Laurent::zero(), scale: UBig::ONE, cyclo: Vec::new(), rest: None }
    }

    pub fn one() -> Self {
        QRational::from_laurent(Laurent::one())
    }

    pub fn from_int(n: i64) -> Self {
        QRational::from_laurent(Laurent::monomial(IBig::from(n), 0))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QRational::from_rbig(RBig::from_parts_signed(IBig::from(n), IBig::from(d)))
    }

    pub fn from_rbig(c: RBig) -> Self {
        let (n, d) = c.into_parts();
        QRational { num: Laurent::monomial(n, 0), scale: d, cyclo: Vec::new(), rest: None }
    }

    /// `t^k`, i.e. `q^{k/2}`.
    pub fn t_pow(k: i64) -> Self {
        QRational::from_laurent(Laurent::monomial(IBig::ONE, k))
    }

    /// `c·t^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        QRational::from_laurent(Laurent::monomial(IBig::from(c), k))
    }

    pub fn from_laurent(p: Laurent) -> Self {
        QRational { num: p, scale: UBig::ONE, cyclo: Vec::new(), rest: None }
    }

    pub fn from_fraction(num: Laurent, den: Laurent) -> Result<Self> {
        let inv = QRational::from_laurent(den).inv()?;
        Ok(&QRational::from_laurent(num) * &inv)
    }

    /// Closed form of `Σ_{n≥0} q^{a + n·step}` with `a = first_t_exp / 2`, i.e.
    /// `t^{first_t_exp} / (1 - t^{2·step})`.
    pub fn geometric_tail(first_t_exp: i64, step: i64) -> Result<Self> {
        if step >= 0 {
            return Err(Error::NonSummableTail { step });
        }
        let m = u32::try_from(-2 * step).expect("tail step too large");
        // 1/(1 - t^{-m}) = t^m / (t^m - 1) = t^m / ∏_{d|m} Φ_d
        Ok(QRational {
            num: Laurent::monomial(IBig::ONE, first_t_exp + m as i64),
            scale: UBig::ONE,
            cyclo: divisors(m).into_iter().map(|d| (d, 1)).collect(),
            rest: None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.has_unit_denominator()
    }

    fn has_unit_denominator(&self) -> bool {
        self.scale.is_one() && self.cyclo.is_empty() && self.rest.is_none()
    }

    /// The numerator (integer coefficients, any valuation).
    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    /// Expanded denominator `scale · ∏Φ_d^{e_d} · rest`, valuation zero,
    /// positive leading coefficient.
    pub fn denominator(&self) -> Laurent {
        let mut d = Laurent::monomial(IBig::from(self.scale.clone()), 0);
        for &(k, e) in &self.cyclo {
            let phi = cyclotomic(k);
            for _ in 0..e {
                d = d.mul_small_poly(&phi);
            }
        }
        if let Some(r) = &self.rest {
            d = &d * r;
        }
        d
    }

    /// Cyclotomic factorization of the denominator as `(d, multiplicity)` pairs.
    pub fn cyclotomic_factors(&self) -> &[(u32, u32)] {
        &self.cyclo
    }

    /// `Some(p)` when the value is a Laurent polynomial with integer coefficients.
    pub fn as_integer_laurent(&self) -> Option<&Laurent> {
        self.has_unit_denominator().then_some(&self.num)
    }

    /// True when the denominator is a positive integer (no `t` dependence).
    pub fn is_laurent_polynomial(&self) -> bool {
        self.cyclo.is_empty() && self.rest.is_none()
    }

    /// Coefficient of `t^k` when the value is a Laurent polynomial.
    pub fn laurent_coeff(&self, k: i64) -> Option<RBig> {
        if !self.is_laurent_polynomial() {
            return None;
        }
        Some(RBig::from_parts(self.num.coeff(k), self.scale.clone()))
    }

    /// `Some(c)` when the value is a constant.
    pub fn as_constant(&self) -> Option<RBig> {
        if self.is_zero() {
            return Some(RBig::ZERO);
        }
        if !self.is_laurent_polynomial() || self.num.span() != 1 || self.num.valuation() != 0 {
            return None;
        }
        Some(RBig::from_parts(self.num.coeffs()[0].clone(), self.scale.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = self.num.valuation();
        let p = self.num.unshifted();
        let content = IBig::from(p.content());
        let negative = p.leading().unwrap() < &IBig::ZERO;
        let mut p = p.div_scalar_exact(&content);
        if negative {
            p = -p;
        }
        let (cyclo, rest) = extract_cyclotomic(p);
        let mut num = self.denominator().shift(-v);
        if negative {
            num = -num;
        }
        Ok(QRational {
            num,
            scale: content.unsigned_abs(),
            cyclo,
            rest: (rest.span() > 1).then(|| Arc::new(rest)),
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QRational::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, t: &RBig) -> Option<RBig> {
        if t.is_zero() && (self.num.valuation() < 0) {
            return None;
        }
        let den = self.denominator().eval(t);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / den)
    }

    /// The substitution `t ↦ 1/t` (equivalently `q ↦ 1/q`).
    pub fn invert_t(&self) -> Self {
        if self.is_zero() {
            return QRational::zero();
        }
        // Φ_1(1/t) = -t^{-1}Φ_1(t) and Φ_d(1/t) = t^{-φ(d)}Φ_d(t) for d ≥ 2.
        let mut shift: i64 = 0;
        let mut negate = false;
        for &(d, e) in &self.cyclo {
            shift += (euler_phi(d) * e) as i64;
            if d == 1 && e % 2 == 1 {
                negate = !negate;
            }
        }
        let rest = self.rest.as_ref().map(|r| {
            shift += r.degree();
            let mut rr = r.reversed().unshifted();
            if rr.leading().unwrap() < &IBig::ZERO {
                rr = -rr;
                negate = !negate;
            }
            Arc::new(rr)
        });
        let mut num = self.num.reversed().shift(shift);
        if negate {
            num = -num;
        }
        QRational { num, scale: self.scale.clone(), cyclo: self.cyclo.clone(), rest }
    }

    /// Sum of many values over one common denominator, reduced once.
    pub fn sum<'a, I: IntoIterator<Item = &'a QRational>>(items: I) -> Self {
        let items: Vec<&QRational> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return QRational::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        if items.iter().any(|x| x.rest.is_some()) {
            return items.iter().fold(QRational::zero(), |acc, x| &acc + *x);
        }
        let mut cyclo: Vec<(u32, u32)> = Vec::new();
        let mut scale = UBig::ONE;
        for x in &items {
            cyclo = merge_max(&cyclo, &x.cyclo);
            scale = lcm_ubig(&scale, &x.scale);
        }
        let mut num = Laurent::zero();
        for x in &items {
            let k = IBig::from(&scale / &x.scale);
            let mut term = x.num.scale(&k);
            term = mul_cyclo_cofactor(term, &cyclo, &x.cyclo);
            num = &num + &term;
        }
        reduce(num, scale, cyclo, None)
    }

    /// Product of many values.
    pub fn product<'a, I: IntoIterator<Item = &'a QRational>>(items: I) -> Self {
        items.into_iter().fold(QRational::one(), |acc, x| &acc * x)
    }

    pub fn render(&self) -> String {
        let num = if self.is_laurent_polynomial() {
            let s = self.scale.clone();
            let terms = self
                .num
                .terms()
                .rev()
                .map(|(k, c)| (k, RBig::from_parts(c.clone(), s.clone())))
                .collect::<Vec<_>>();
            return super::laurent::render_terms(terms.into_iter(), "t");
        } else {
            self.num.render("t")
        };
        format!("({})/({})", num, self.denominator().render("t"))
    }
}

/// Splits a primitive polynomial (valuation zero, positive leading coefficient)
/// into cyclotomic factors and a cyclotomic-free remainder.
fn extract_cyclotomic(mut p: Laurent) -> (Vec<(u32, u32)>, Laurent) {
    let mut found = Vec::new();
    let mut deg = p.degree() as u32;
    // φ(d) ≥ d/6 for every d below ~10^6, so larger indices cannot divide.
    let bound = 6 * deg + 6;
    let mut d = 1;
    while d <= bound && deg > 0 {
        let phi = euler_phi(d);
        if phi <= deg {
            let c = cyclotomic(d);
            let mut e = 0;
            while deg >= phi {
                match p.div_exact_small_monic(&c) {
                    Some(q) => {
                        p = q;
                        e += 1;
                        deg -= phi;
                    }
                    None => break,
                }
            }
            if e > 0 {
                found.push((d, e));
            }
        }
        d += 1;
    }
    (found, p)
}

fn merge_max(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    merge_with(a, b, |x, y| x.max(y))
}

fn merge_sum(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    merge_with(a, b, |x, y| x + y)
}

fn merge_with(a: &[(u32, u32)], b: &[(u32, u32)], f: impl Fn(u32, u32) -> u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                out.push((x.0, f(x.1, y.1)));
                i += 1;
                j += 1;
                continue;
            }
            (Some(x), Some(y)) => x.0 < y.0,
            (Some(_), None) => true,
            _ => false,
        };
        if take {
            out.push((a[i].0, f(a[i].1, 0)));
            i += 1;
        } else {
            out.push((b[j].0, f(0, b[j].1)));
            j += 1;
        }
    }
    out.retain(|x| x.1 > 0);
    out
}

/// Multiplies `num` by `∏Φ_d^{full_d - own_d}`.
fn mul_cyclo_cofactor(mut num: Laurent, full: &[(u32, u32)], own: &[(u32, u32)]) -> Laurent {
    for &(d, e) in full {
        let have = own.iter().find(|x| x.0 == d).map_or(0, |x| x.1);
        if e > have {
            let phi = cyclotomic(d);
            for _ in 0..(e - have) {
                num = num.mul_small_poly(&phi);
            }
        }
    }
    num
}

/// Divides `num` by as many factors from `cyclo` as possible, updating exponents.
fn cancel_cyclo(num: &mut Laurent, cyclo: &mut Vec<(u32, u32)>) {
    for entry in cyclo.iter_mut() {
        let phi = cyclotomic(entry.0);
        while entry.1 > 0 {
            match num.div_exact_small_monic(&phi) {
                Some(q) => {
                    *num = q;
                    entry.1 -= 1;
                }
                None => break,
            }
        }
    }
    cyclo.retain(|x| x.1 > 0);
}

fn cancel_scale(num: &mut Laurent, scale: &mut UBig) {
    if scale.is_one() {
        return;
    }
    let g = gcd_ubig(&num.content(), scale);
    if !g.is_one() {
        *num = num.div_scalar_exact(&IBig::from(g.clone()));
        *scale = &*scale / &g;
    }
}

fn cancel_rest(num: &mut Laurent, rest: &mut Option<Arc<Laurent>>) {
    let Some(r) = rest.as_ref() else { return };
    let g = poly_gcd(num, r);
    if g.span() > 1 {
        *num = num.div_exact(&g).expect("gcd divides numerator");
        let nr = r.div_exact(&g).expect("gcd divides denominator");
        *rest = (nr.span() > 1).then(|| Arc::new(nr));
    }
}

fn reduce(
    mut num: Laurent,
    mut scale: UBig,
    mut cyclo: Vec<(u32, u32)>,
    mut rest: Option<Arc<Laurent>>,
) -> QRational {
    if num.is_zero() {
        return QRational::zero();
    }
    cancel_cyclo(&mut num, &mut cyclo);
    cancel_rest(&mut num, &mut rest);
    cancel_scale(&mut num, &mut scale);
    QRational { num, scale, cyclo, rest }
}

fn lcm_ubig(a: &UBig, b: &UBig) -> UBig {
    let g = gcd_ubig(a, b);
    a / &g * b
}

fn rest_or_one(r: &Option<Arc<Laurent>>) -> Laurent {
    r.as_ref().map_or_else(Laurent::one, |r| (**r).clone())
}

fn mul_impl(a: &QRational, b: &QRational) -> QRational {
    if a.is_zero() || b.is_zero() {
        return QRational::zero();
    }
    if b.is_one() {
        return a.clone();
    }
    if a.is_one() {
        return b.clone();
    }
    let (mut an, mut bn) = (a.num.clone(), b.num.clone());
    let (mut ac, mut bc) = (a.cyclo.clone(), b.cyclo.clone());
    let (mut asc, mut bsc) = (a.scale.clone(), b.scale.clone());
    let (mut ar, mut br) = (a.rest.clone(), b.rest.clone());
    // Each side is already reduced; only cross cancellation can occur.
    cancel_cyclo(&mut an, &mut bc);
    cancel_cyclo(&mut bn, &mut ac);
    cancel_scale(&mut an, &mut bsc);
    cancel_scale(&mut bn, &mut asc);
    cancel_rest(&mut an, &mut br);
    cancel_rest(&mut bn, &mut ar);
    let rest = match (ar, br) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(Arc::new(&*x * &*y)),
    };
    QRational { num: &an * &bn, scale: asc * bsc, cyclo: merge_sum(&ac, &bc), rest }
}

fn add_impl(a: &QRational, b: &QRational, negate_b: bool) -> QRational {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let cyclo = merge_max(&a.cyclo, &b.cyclo);
    let scale = lcm_ubig(&a.scale, &b.scale);
    let (rest, ca, cb) = match (&a.rest, &b.rest) {
        (None, None) => (None, None, None),
        (x, y) if x == y => (x.clone(), None, None),
        _ => {
            let (ra, rb) = (rest_or_one(&a.rest), rest_or_one(&b.rest));
            let g = poly_gcd(&ra, &rb);
            let ca = rb.div_exact(&g).unwrap();
            let cb = ra.div_exact(&g).unwrap();
            let l = &ra * &ca;
            (Some(Arc::new(l)), Some(ca), Some(cb))
        }
    };
    let mut na = a.num.scale(&IBig::from(&scale / &a.scale));
    na = mul_cyclo_cofactor(na, &cyclo, &a.cyclo);
    if let Some(c) = ca {
        na = &na * &c;
    }
    let mut nb = b.num.scale(&IBig::from(&scale / &b.scale));
    nb = mul_cyclo_cofactor(nb, &cyclo, &b.cyclo);
    if let Some(c) = cb {
        nb = &nb * &c;
    }
    let num = if negate_b { &na - &nb } else { &na + &nb };
    reduce(num, scale, cyclo, rest)
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        add_impl(self, rhs, false)
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        add_impl(self, rhs, true)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        mul_impl(self, rhs)
    }
}

/// Panics on division by zero; use [`QRational::inv`] for a fallible form.
impl Div for &QRational {
    type Output = QRational;
    fn div(self, rhs: &QRational) -> QRational {
        mul_impl(self, &rhs.inv().expect("division by zero rational function"))
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            num: -&self.num,
            scale: self.scale.clone(),
            cyclo: self.cyclo.clone(),
            rest: self.rest.clone(),
        }
    }
}

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRational {
            type Output = QRational;
            fn $m(self, rhs: QRational) -> QRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRational> for QRational {
            type Output = QRational;
            fn $m(self, rhs: &QRational) -> QRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for QRational {
    fn from(n: i64) -> Self {
        QRational::from_int(n)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64) -> QRational {
        QRational::t_pow(k)
    }

    fn r(n: i64, d: i64) -> RBig {
        RBig::from_parts_signed(IBig::from(n), IBig::from(d))
    }

    #[test]
    fn geometric_tail_examples() {
        // Σ_{i≥1} q^{-i+1/2} = 1/(t - t^{-1})
        let a = QRational::geometric_tail(-1, -1).unwrap();
        let expect = (t(1) - t(-1)).inv().unwrap();
        assert_eq!(a, expect);
        let b = QRational::geometric_tail(0, -1).unwrap();
        assert_eq!(b, (QRational::one() - t(-2)).inv().unwrap());
        let c = QRational::geometric_tail(-2, -2).unwrap();
        assert_eq!(c, &t(-2) * &(QRational::one() - t(-4)).inv().unwrap());
        assert!(matches!(
            QRational::geometric_tail(0, 0),
            Err(Error::NonSummableTail { .. })
        ));
    }

    #[test]
    fn reduction_is_canonical() {
        // (t^2 - 1)/(t - 1) = t + 1
        let a = QRational::from_fraction(
            Laurent::from_small(0, &[-1, 0, 1]),
            Laurent::from_small(0, &[-1, 1]),
        )
        .unwrap();
        assert_eq!(a, t(1) + QRational::one());
        assert!(a.as_integer_laurent().is_some());
        let half = QRational::from_ratio(1, 2);
        assert_eq!(&half + &half, QRational::one());
    }

    #[test]
    fn non_cyclotomic_denominators() {
        let p = &(&t(2) + &t(1)) + &QRational::from_int(-1); // t^2 + t - 1
        let x = QRational::one() / p.clone();
        let back = &x * &p;
        assert!(back.is_one());
        let y = &x + &(QRational::from_int(3) / (t(1) - QRational::one()));
        let z = &y - &x;
        assert_eq!(z, QRational::from_int(3) / (t(1) - QRational::one()));
        assert_eq!(x.invert_t().invert_t(), x);
        let at = r(2, 1);
        assert_eq!(x.invert_t().eval(&at).unwrap(), x.eval(&(RBig::ONE / at)).unwrap());
    }

    #[test]
    fn invert_t_matches_evaluation() {
        let a = QRational::geometric_tail(3, -2).unwrap() * QRational::from_ratio(3, 7)
            + t(-5);
        let b = a.invert_t();
        for p in [r(2, 1), r(-3, 5), r(7, 3)] {
            assert_eq!(b.eval(&p).unwrap(), a.eval(&(RBig::ONE / p.clone())).unwrap());
        }
    }

    #[test]
    fn pow_and_inverse() {
        let a = t(1) - t(-1);
        let b = a.pow(-2).unwrap();
        assert_eq!(&b * &a.pow(2).unwrap(), QRational::one());
        assert!(QRational::zero().inv().is_err());
    }

    #[test]
    fn render_forms() {
        assert_eq!(QRational::from_ratio(-3, 2).render(), "-3/2");
        let a = (t(1) - t(-1)).inv().unwrap();
        assert_eq!(a.render(), "(t)/(t^2 - 1)");
    }

    #[test]
    fn sum_matches_pairwise() {
        let xs: Vec<QRational> = (1..6)
            .map(|k| QRational::geometric_tail(k, -k).unwrap() * QRational::from_ratio(k, 3))
            .collect();
        let pairwise = xs.iter().fold(QRational::zero(), |a, b| &a + b);
        assert_eq!(QRational::sum(&xs), pairwise);
    }
}
