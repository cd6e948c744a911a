//! Skew Schur functions at principal specializations `q^{ν+ρ}` and at
//! alphabets built from them by scaling and concatenation.
//!
//! Values go through power sums in closed form, complete (or elementary)
//! symmetric functions by Newton's identities, and a Jacobi–Trudi determinant.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::partitions::Partition;
use crate::qcore::{QRational, QSeries};

/// A (possibly infinite) list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `x_i = q^{ν_i − i + 1/2}`, `i ≥ 1`; with `inverted` the alphabet
    /// `q^{−ν−ρ}`, i.e. the same under `t ↦ 1/t`.
    Principal { nu: Partition, inverted: bool },
    /// Finitely many variables `t^{k}`.
    Finite(Vec<i64>),
    /// Every variable multiplied by `t^{t_exp}·Q^{monomial}`.
    Scaled { base: Box<Alphabet>, t_exp: i64, monomial: Vec<u32> },
    /// Concatenation `(x, y, …)`.
    Joined(Vec<Alphabet>),
}

impl Alphabet {
    pub fn principal(nu: &Partition) -> Self {
        Alphabet::Principal { nu: nu.clone(), inverted: false }
    }

    pub fn principal_inverted(nu: &Partition) -> Self {
        Alphabet::Principal { nu: nu.clone(), inverted: true }
    }

    /// `q^ρ`.
    pub fn rho() -> Self {
        Alphabet::principal(&Partition::empty())
    }

    pub fn scaled(self, t_exp: i64, monomial: Vec<u32>) -> Self {
        Alphabet::Scaled { base: Box::new(self), t_exp, monomial }
    }

    pub fn joined(parts: Vec<Alphabet>) -> Self {
        Alphabet::Joined(parts)
    }

    /// True when no Kähler variable enters, so values are plain rational functions.
    pub fn is_scalar(&self) -> bool {
        match self {
            Alphabet::Principal { .. } | Alphabet::Finite(_) => true,
            Alphabet::Scaled { base, monomial, .. } => monomial.iter().all(|&e| e == 0) && base.is_scalar(),
            Alphabet::Joined(v) => v.iter().all(Alphabet::is_scalar),
        }
    }

    /// The first `n` variables of a principal alphabet as a finite one.
    pub fn truncated(&self, n: usize) -> Alphabet {
        match self {
            Alphabet::Principal { nu, inverted } => {
                let s = if *inverted { -1 } else { 1 };
                Alphabet::Finite((1..=n).map(|i| s * (2 * (nu.part(i) as i64 - i as i64) + 1)).collect())
            }
            Alphabet::Finite(v) => Alphabet::Finite(v.iter().take(n).copied().collect()),
            Alphabet::Scaled { base, t_exp, monomial } => {
                base.truncated(n).scaled(*t_exp, monomial.clone())
            }
            Alphabet::Joined(v) => Alphabet::Joined(v.iter().map(|a| a.truncated(n)).collect()),
        }
    }
}

/// `p_r` of the principal alphabet `q^{ν+ρ}` in closed form.
fn principal_power_sum(nu: &Partition, r: i64) -> QRational {
    let l = nu.length() as i64;
    let mut parts: Vec<QRational> = (1..=l)
        .map(|i| QRational::t_pow(r * (2 * (nu.part(i as usize) as i64 - i) + 1)))
        .collect();
    parts.push(QRational::geometric_tail(r * (-2 * l - 1), -r).expect("r ≥ 1"));
    QRational::sum(&parts)
}

/// `p_r(a)` for an alphabet without Kähler variables.
pub fn power_sum_rational(a: &Alphabet, r: u32) -> QRational {
    assert!(r >= 1, "power sums start at r = 1");
    let r = r as i64;
    match a {
        Alphabet::Principal { nu, inverted } => {
            let p = principal_power_sum(nu, r);
            if *inverted {
                p.invert_t()
            } else {
                p
            }
        }
        Alphabet::Finite(v) => QRational::sum(&v.iter().map(|k| QRational::t_pow(r * k)).collect::<Vec<_>>()),
        Alphabet::Scaled { base, t_exp, monomial } => {
            assert!(monomial.iter().all(|&e| e == 0), "alphabet carries Kähler variables");
            &QRational::t_pow(r * t_exp) * &power_sum_rational(base, r as u32)
        }
        Alphabet::Joined(v) => {
            QRational::sum(&v.iter().map(|x| power_sum_rational(x, r as u32)).collect::<Vec<_>>())
        }
    }
}

/// `p_r(a)` in the series ring of `ring`.
pub fn power_sum(a: &Alphabet, r: u32, ring: &QSeries) -> QSeries {
    match a {
        Alphabet::Scaled { base, t_exp, monomial } if !a.is_scalar() => {
            let inner = power_sum(base, r, ring);
            let e: Vec<u32> = monomial.iter().map(|&m| m * r).collect();
            inner.mul(&ring.monomial_like(e, QRational::t_pow(r as i64 * t_exp)))
        }
        Alphabet::Joined(v) if !a.is_scalar() => {
            v.iter().fold(ring.empty_like(), |acc, x| acc.add(&power_sum(x, r, ring)))
        }
        _ => ring.constant_like(power_sum_rational(a, r)),
    }
}

/// Minimal commutative-ring interface shared by scalars and series.
pub(crate) trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn times_q(&self, c: &QRational) -> Self;
    fn zero(&self) -> bool;
}

impl Ring for QRational {
    fn zero_like(&self) -> Self {
        QRational::zero()
    }
    fn one_like(&self) -> Self {
        QRational::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn times_q(&self, c: &QRational) -> Self {
        self * c
    }
    fn zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for QSeries {
    fn zero_like(&self) -> Self {
        self.empty_like()
    }
    fn one_like(&self) -> Self {
        self.constant_like(QRational::one())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn times_q(&self, c: &QRational) -> Self {
        self.scale(c)
    }
    fn zero(&self) -> bool {
        self.is_zero()
    }
}

/// `h_0..=h_n` (or `e_0..=e_n` when `elementary`) from power sums `p[r-1] = p_r`
/// by Newton's identities.
pub(crate) fn newton<R: Ring>(p: &[R], n: usize, elementary: bool, one: &R) -> Vec<R> {
    let mut h = vec![one.one_like()];
    for k in 1..=n {
        let mut acc = one.zero_like();
        for r in 1..=k {
            let mut term = p[r - 1].times(&h[k - r]);
            if elementary && r % 2 == 0 {
                term = term.times_q(&QRational::from_int(-1));
            }
            acc = acc.plus(&term);
        }
        h.push(acc.times_q(&QRational::from_ratio(1, k as i64)));
    }
    h
}

/// Division-free determinant by dynamic programming over column subsets.
pub(crate) fn determinant<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let k = m.len();
    if k == 0 {
        return one.one_like();
    }
    let mut dp: Vec<Option<R>> = vec![None; 1 << k];
    dp[0] = Some(one.one_like());
    for mask in 0usize..(1 << k) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == k {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..k {
            if mask & (1 << c) != 0 || m[row][c].zero() {
                continue;
            }
            let inversions = (mask >> (c + 1)).count_ones();
            let mut term = cur.times(&m[row][c]);
            if inversions % 2 == 1 {
                term = term.times_q(&QRational::from_int(-1));
            }
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(v) => v.plus(&term),
                None => term,
            });
        }
        dp[mask] = Some(cur);
    }
    dp[(1 << k) - 1].take().unwrap_or_else(|| one.zero_like())
}

/// Jacobi–Trudi: `det(h_{λ_i − μ_j − i + j})`, or the dual form with `e` and
/// conjugates when that matrix is smaller.
fn jacobi_trudi<R: Ring>(lambda: &Partition, mu: &Partition, p: impl Fn(u32) -> R, one: &R) -> R {
    if !lambda.contains(mu) {
        return one.zero_like();
    }
    let n = (lambda.size() - mu.size()) as usize;
    if n == 0 {
        return one.one_like();
    }
    let dual = lambda.length() > lambda.part(1) as usize;
    let (l, m) = if dual { (lambda.conjugate(), mu.conjugate()) } else { (lambda.clone(), mu.clone()) };
    let k = l.length();
    // Entries above the diagonal can exceed |λ| − |μ|.
    let top = (l.part(1) as usize + k).max(n);
    let ps: Vec<R> = (1..=top as u32).map(p).collect();
    let h = newton(&ps, top, dual, one);
    let mat: Vec<Vec<R>> = (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    let idx = l.part(i) as i64 - m.part(j) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        one.zero_like()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&mat, one)
}

/// `s_{λ/μ}(a)` for an alphabet without Kähler variables.
pub fn skew_schur_rational(lambda: &Partition, mu: &Partition, a: &Alphabet) -> QRational {
    if let Alphabet::Principal { nu, inverted } = a {
        return schur_principal(lambda, mu, nu, *inverted);
    }
    jacobi_trudi(lambda, mu, |r| power_sum_rational(a, r), &QRational::one())
}

/// `s_{λ/μ}(a)` in the series ring of `ring`.
pub fn skew_schur(lambda: &Partition, mu: &Partition, a: &Alphabet, ring: &QSeries) -> QSeries {
    if a.is_scalar() {
        return ring.constant_like(skew_schur_rational(lambda, mu, a));
    }
    jacobi_trudi(lambda, mu, |r| power_sum(a, r, ring), &ring.one_like())
}

type PrincipalKey = (Partition, Partition, Partition, bool);

fn principal_cache() -> &'static DashMap<PrincipalKey, Arc<QRational>> {
    static CACHE: OnceLock<DashMap<PrincipalKey, Arc<QRational>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Memoized `s_{λ/μ}(q^{ν+ρ})`, or `s_{λ/μ}(q^{−ν−ρ})` when `inverted`.
pub fn schur_principal(lambda: &Partition, mu: &Partition, nu: &Partition, inverted: bool) -> QRational {
    if !lambda.contains(mu) {
        return QRational::zero();
    }
    if lambda.size() == mu.size() {
        return QRational::one();
    }
    let key = (lambda.clone(), mu.clone(), nu.clone(), inverted);
    if let Some(v) = principal_cache().get(&key) {
        return (**v).clone();
    }
    let v = if inverted {
        schur_principal(lambda, mu, nu, false).invert_t()
    } else {
        let a = Alphabet::principal(nu);
        jacobi_trudi(lambda, mu, |r| power_sum_rational(&a, r), &QRational::one())
    };
    principal_cache().insert(key, Arc::new(v.clone()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;
    use crate::qcore::Truncation;
    use dashu_int::IBig;
    use dashu_ratio::RBig;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    fn one_over_t_minus_inv() -> QRational {
        (&QRational::t_pow(1) - &QRational::t_pow(-1)).inv().unwrap()
    }

    /// Branching rule over horizontal strips, evaluated at rational points.
    fn tableau_value(lambda: &Partition, mu: &Partition, xs: &[RBig]) -> RBig {
        if !lambda.contains(mu) {
            return RBig::ZERO;
        }
        let Some((last, rest)) = xs.split_last() else {
            return if lambda == mu { RBig::ONE } else { RBig::ZERO };
        };
        let mut total = RBig::ZERO;
        for kappa in lambda.subpartitions() {
            if !kappa.contains(mu) {
                continue;
            }
            // λ/κ must be a horizontal strip: λ_{i+1} ≤ κ_i ≤ λ_i.
            let strip = (1..=lambda.length()).all(|i| {
                kappa.part(i) <= lambda.part(i) && lambda.part(i + 1) <= kappa.part(i)
            });
            if !strip {
                continue;
            }
            let mut w = RBig::ONE;
            for _ in 0..(lambda.size() - kappa.size()) {
                w *= last;
            }
            total += w * tableau_value(&kappa, mu, rest);
        }
        total
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_rational(&Alphabet::rho(), 1), one_over_t_minus_inv());
        let expected = &QRational::t_pow(1) + &(&QRational::t_pow(-3) * &(&QRational::one() - &QRational::t_pow(-2)).inv().unwrap());
        assert_eq!(power_sum_rational(&Alphabet::principal(&p(&[1])), 1), expected);
        let ring = QSeries::zero(&["Q"], Truncation::total(1, 3));
        let s = power_sum(&Alphabet::rho().scaled(0, vec![1]), 2, &ring);
        let p2 = (&QRational::t_pow(2) - &QRational::t_pow(-2)).inv().unwrap();
        assert_eq!(s, ring.monomial_like(vec![2], p2));
    }

    #[test]
    fn skew_schur_examples() {
        let e = p(&[]);
        assert!(skew_schur_rational(&e, &e, &Alphabet::rho()).is_one());
        assert_eq!(skew_schur_rational(&p(&[1]), &e, &Alphabet::rho()), one_over_t_minus_inv());
        assert!(skew_schur_rational(&p(&[1]), &p(&[1]), &Alphabet::principal(&p(&[2]))).is_one());
        assert!(skew_schur_rational(&p(&[1]), &p(&[2]), &Alphabet::rho()).is_zero());
    }

    #[test]
    fn jacobi_trudi_matches_tableaux_on_finite_alphabets() {
        let xs_exp = vec![1i64, -1, -3, 2];
        let a = Alphabet::Finite(xs_exp.clone());
        let t0 = RBig::from_parts_signed(IBig::from(2), IBig::from(3));
        let xs: Vec<RBig> = xs_exp.iter().map(|&k| a_pow(&t0, k)).collect();
        for lam in enumerate(5) {
            for mu in lam.subpartitions() {
                let v = skew_schur_rational(&lam, &mu, &a);
                assert_eq!(v.eval(&t0).unwrap(), tableau_value(&lam, &mu, &xs), "{lam}/{mu}");
            }
        }
    }

    fn a_pow(t: &RBig, k: i64) -> RBig {
        let mut r = RBig::ONE;
        for _ in 0..k.abs() {
            r *= t;
        }
        if k < 0 {
            RBig::ONE / r
        } else {
            r
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for lam in enumerate(3) {
            for mu in lam.subpartitions() {
                for nu in enumerate(3) {
                    let lhs = schur_principal(&lam, &mu, &nu, false);
                    let rhs = schur_principal(&lam.conjugate(), &mu.conjugate(), &nu.conjugate(), true);
                    let sign = if (lam.size() - mu.size()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(lhs, &QRational::from_int(sign) * &rhs);
                }
            }
        }
    }

    #[test]
    fn homogeneity() {
        let ring = QSeries::zero(&["Q"], Truncation::total(1, 4));
        let a = Alphabet::principal(&p(&[2, 1]));
        for lam in enumerate(4) {
            for mu in lam.subpartitions() {
                let scaled = skew_schur(&lam, &mu, &a.clone().scaled(0, vec![1]), &ring);
                let d = lam.size() - mu.size();
                let expect = ring.monomial_like(vec![d], skew_schur_rational(&lam, &mu, &a));
                assert_eq!(scaled, expect);
            }
        }
    }

    #[test]
    fn determinant_small() {
        let m: Vec<Vec<QRational>> = vec![
            vec![QRational::from_int(2), QRational::from_int(3)],
            vec![QRational::from_int(5), QRational::from_int(7)],
        ];
        assert_eq!(determinant(&m, &QRational::one()), QRational::from_int(-1));
        let m3: Vec<Vec<QRational>> = [[0, 1, 2], [3, 4, 5], [6, 7, 9]]
            .iter()
            .map(|r| r.iter().map(|&x| QRational::from_int(x)).collect())
            .collect();
        assert_eq!(determinant(&m3, &QRational::one()), QRational::from_int(-3));
    }
}
