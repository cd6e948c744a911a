//! Two-vertex amplitudes around a (−1,−1)-curve, their normalizations by the
//! conifold factor, the closed forms for them and the local flop identity.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{c_table, enumerate, kappa, CkTable, Partition};
use crate::qcore::{QRational, QSeries, Truncation};
use crate::schur::{power_sum_rational, skew_schur_rational, Alphabet};
use crate::vertex::vertex;

/// `[Q^d] log Z_{(−1,−1)} = −q^d / (d(1−q^d)²)`.
pub fn conifold_log_coeff(d: u32) -> QRational {
    let d = d as i64;
    let one_minus = &QRational::one() - &QRational::t_pow(2 * d);
    let den = (&one_minus * &one_minus).inv().expect("nonzero");
    &(&QRational::t_pow(2 * d) * &den) * &QRational::from_ratio(-1, d)
}

/// `∏_{k≥1}(1 − Q_v q^k)^k` in the ring of `ring`, along variable `v`.
pub fn conifold_in(ring: &QSeries, v: usize) -> QSeries {
    let mut log = ring.empty_like();
    let mut d = 1u32;
    loop {
        let mut e = vec![0; ring.nvars()];
        e[v] = d;
        if !ring.keeps(&e) {
            break;
        }
        log.add_term(e, conifold_log_coeff(d));
        d += 1;
    }
    log.exp().expect("log has no constant term")
}

/// `Z_{(−1,−1)}(q, Q)` through `Q^cap`.
pub fn conifold_factor(cap: u32) -> QSeries {
    conifold_in(&QSeries::zero(&["Q"], Truncation::total(1, cap)), 0)
}

/// `∏_k (1 − Q_v q^k)^{C_k}` in the ring of `ring`.
pub fn ck_product(table: &CkTable, ring: &QSeries, v: usize) -> QSeries {
    let mut e = vec![0; ring.nvars()];
    e[v] = 1;
    let mut acc = ring.constant_like(QRational::one());
    for (k, c) in table.iter() {
        let f = ring.constant_like(QRational::one()).sub(&ring.monomial_like(e.clone(), QRational::t_pow(2 * k)));
        acc = acc.mul(&f.pow(c as u32));
    }
    acc
}

/// `s_{λ/μ}(x, Q_v·y)` by branching: `Σ_ξ s_{λ/ξ}(x) Q_v^{|ξ|−|μ|} s_{ξ/μ}(y)`.
pub fn two_alphabet_schur(
    lambda: &Partition,
    mu: &Partition,
    x: &Alphabet,
    y: &Alphabet,
    ring: &QSeries,
    v: usize,
) -> QSeries {
    let mut out = ring.empty_like();
    for xi in lambda.subpartitions() {
        if !xi.contains(mu) {
            continue;
        }
        let c = &skew_schur_rational(lambda, &xi, x) * &skew_schur_rational(&xi, mu, y);
        let mut e = vec![0; ring.nvars()];
        e[v] = xi.size() - mu.size();
        out.add_term(e, c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Original,
    Flopped,
}

/// A one-variable series in `Q0` (original side) or `Q0+` (flopped side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAmplitude {
    pub boundary: [Partition; 4],
    pub side: Side,
    pub series: QSeries,
}

impl LocalAmplitude {
    pub fn coeff(&self, k: u32) -> QRational {
        self.series.coeff(&[k])
    }

    /// Highest power present, `None` for the zero series.
    pub fn degree(&self) -> Option<u32> {
        self.series.terms().keys().map(|e| e[0]).max()
    }

    fn var(side: Side) -> &'static str {
        match side {
            Side::Original => "Q0",
            Side::Flopped => "Q0+",
        }
    }
}

fn ring(side: Side, cap: u32) -> QSeries {
    QSeries::zero(&[LocalAmplitude::var(side)], Truncation::total(1, cap))
}

fn total_size(l: &[Partition; 4]) -> u32 {
    l.iter().map(Partition::size).sum()
}

fn sign(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn raw(l: &[Partition; 4], cap: u32, side: Side) -> LocalAmplitude {
    let [l1, l2, l3, l4] = l;
    let terms: Vec<(u32, QRational)> = enumerate(cap)
        .par_iter()
        .map(|mu| {
            let mt = mu.conjugate();
            let v = match side {
                Side::Original => &*vertex(l1, l2, &mt) * &*vertex(l3, l4, mu),
                Side::Flopped => &*vertex(l1, &mt, l4) * &*vertex(l3, mu, l2),
            };
            (mu.size(), &v * &QRational::from_int(sign(mu.size())))
        })
        .collect();
    let mut s = ring(side, cap);
    for (k, c) in terms {
        s.add_term(vec![k], c);
    }
    LocalAmplitude { boundary: l.clone(), side, series: s }
}

/// `Z_0 = Σ_μ (−Q0)^{|μ|} C_{λ1,λ2,μᵗ} C_{λ3,λ4,μ}` through `Q0^cap`.
pub fn z0(l: &[Partition; 4], cap: u32) -> LocalAmplitude {
    raw(l, cap, Side::Original)
}

/// `Z_0^+ = Σ_μ (−Q0+)^{|μ|} C_{λ1,μᵗ,λ4} C_{λ3,μ,λ2}` through `Q0+^cap`.
pub fn z0_plus(l: &[Partition; 4], cap: u32) -> LocalAmplitude {
    raw(l, cap, Side::Flopped)
}

fn normalized(l: &[Partition; 4], side: Side) -> Result<LocalAmplitude> {
    let n = total_size(l);
    let amp = raw(l, n + 2, side);
    let q = amp.series.div(&conifold_in(&amp.series, 0))?;
    if q.terms().keys().any(|e| e[0] > n) {
        return Err(Error::Internal(format!(
            "normalized amplitude for {:?} is not a polynomial of degree ≤ {n}",
            l.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(LocalAmplitude { boundary: l.clone(), side, series: q.retruncate(Truncation::total(1, n)) })
}

/// `Z_0' = Z_0 / Z_{(−1,−1)}(Q0)`, checked to be a polynomial of degree `≤ Σ|λ_i|`.
pub fn z0_normalized(l: &[Partition; 4]) -> Result<LocalAmplitude> {
    normalized(l, Side::Original)
}

pub fn z0_plus_normalized(l: &[Partition; 4]) -> Result<LocalAmplitude> {
    normalized(l, Side::Flopped)
}

fn rho_sq(a: &Partition) -> QRational {
    skew_schur_rational(a, &Partition::empty(), &Alphabet::rho())
}

/// The τ-sum on the original side as a polynomial in `Q0`.
pub fn tau_sum(l: &[Partition; 4], ring: &QSeries) -> QSeries {
    let [l1, l2, l3, l4] = l;
    let (l2t, l4t) = (l2.conjugate(), l4.conjugate());
    let xa = Alphabet::principal(l1);
    let ya = Alphabet::principal_inverted(l3);
    let xb = Alphabet::principal(l3);
    let yb = Alphabet::principal_inverted(l1);
    let mut acc = ring.empty_like();
    for tau in l2.subpartitions() {
        if !l4t.contains(&tau) {
            continue;
        }
        let a = two_alphabet_schur(&l2t, &tau.conjugate(), &xa, &ya, ring, 0);
        let b = two_alphabet_schur(&l4t, &tau, &xb, &yb, ring, 0);
        let s = tau.size();
        acc = acc.add(&a.mul(&b).mul(&ring.monomial_like(vec![s], QRational::from_int(sign(s)))));
    }
    acc
}

/// The τ-sum on the flopped side as a polynomial in `Q0+`.
pub fn tau_sum_plus(l: &[Partition; 4], ring: &QSeries) -> QSeries {
    let [l1, l2, l3, l4] = l;
    let (l1t, l3t) = (l1.conjugate(), l3.conjugate());
    let xa = Alphabet::principal(&l3t);
    let ya = Alphabet::principal_inverted(&l1t);
    let xb = Alphabet::principal(&l1t);
    let yb = Alphabet::principal_inverted(&l3t);
    let mut acc = ring.empty_like();
    for tau in l2.subpartitions() {
        if !l4.contains(&tau.conjugate()) {
            continue;
        }
        let a = two_alphabet_schur(l2, &tau, &xa, &ya, ring, 0);
        let b = two_alphabet_schur(l4, &tau.conjugate(), &xb, &yb, ring, 0);
        let s = tau.size();
        acc = acc.add(&a.mul(&b).mul(&ring.monomial_like(vec![s], QRational::from_int(sign(s)))));
    }
    acc
}

/// Closed form of `Z_0'` as a product of Schur values, a `C_k` product and a τ-sum.
pub fn z0_closed(l: &[Partition; 4]) -> Result<LocalAmplitude> {
    let [l1, l2, l3, l4] = l;
    let r = ring(Side::Original, total_size(l));
    let pre = &(&QRational::t_pow(kappa(l2) + kappa(l4)) * &rho_sq(l1)) * &rho_sq(l3);
    let prod = ck_product(&c_table(&l1.conjugate(), &l3.conjugate())?, &r, 0);
    let series = prod.mul(&tau_sum(l, &r)).scale(&pre);
    Ok(LocalAmplitude { boundary: l.clone(), side: Side::Original, series })
}

/// Closed form of `Z_0^{+}'`.
pub fn z0_plus_closed(l: &[Partition; 4]) -> Result<LocalAmplitude> {
    let [l1, _, l3, _] = l;
    let r = ring(Side::Flopped, total_size(l));
    let pre = &rho_sq(l1) * &rho_sq(l3);
    let prod = ck_product(&c_table(l1, l3)?, &r, 0);
    let series = prod.mul(&tau_sum_plus(l, &r)).scale(&pre);
    Ok(LocalAmplitude { boundary: l.clone(), side: Side::Flopped, series })
}

/// Laurent polynomial in `Q0`, keyed by exponent.
pub type QLaurent = BTreeMap<i64, QRational>;

/// `P(Q0+)` read under `Q0+ = Q0^{-1}`.
fn invert_variable(s: &QSeries) -> QLaurent {
    s.terms().iter().map(|(e, c)| (-(e[0] as i64), c.clone())).collect()
}

/// `c·Q0^{shift}·P(Q0)`.
fn shifted(s: &QSeries, shift: i64, c: &QRational) -> QLaurent {
    s.terms()
        .iter()
        .map(|(e, v)| (e[0] as i64 + shift, v * c))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: i64,
    pub lhs: QRational,
    pub rhs: QRational,
}

fn first_mismatch(a: &QLaurent, b: &QLaurent) -> Option<Mismatch> {
    let keys: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(&k).cloned().unwrap_or_default(), b.get(&k).cloned().unwrap_or_default());
        (x != y).then_some(Mismatch { degree: k, lhs: x, rhs: y })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopCheck {
    pub holds: bool,
    pub witness: Option<Mismatch>,
}

/// `Z_0^{+}'(Q0^{-1}) = (−Q0)^{−Σ|λ_i|} q^{(κ1−κ2+κ3−κ4)/2} Z_0'(Q0)`.
pub fn check_flop_identity(l: &[Partition; 4]) -> Result<FlopCheck> {
    let lhs = invert_variable(&z0_plus_normalized(l)?.series);
    let n = total_size(l);
    let k = kappa(&l[0]) - kappa(&l[1]) + kappa(&l[2]) - kappa(&l[3]);
    let c = &QRational::from_int(sign(n)) * &QRational::t_pow(k);
    let rhs = shifted(&z0_normalized(l)?.series, -(n as i64), &c);
    let witness = first_mismatch(&lhs, &rhs);
    Ok(FlopCheck { holds: witness.is_none(), witness })
}

/// The τ-sum transform under `Q0+ = Q0^{-1}`.
pub fn check_tau_sum_transform(l: &[Partition; 4]) -> Option<Mismatch> {
    let n = total_size(l);
    let lhs = invert_variable(&tau_sum_plus(l, &ring(Side::Flopped, n)));
    let s = l[1].size() + l[3].size();
    let rhs = shifted(&tau_sum(l, &ring(Side::Original, n)), -(s as i64), &QRational::from_int(sign(s)));
    first_mismatch(&lhs, &rhs)
}

/// `∏(1−Q0^{-1}q^k)^{C_k(λ1,λ3)} = (−Q0)^{−|λ1|−|λ3|} q^{(κ(λ1)+κ(λ3))/2} ∏(1−Q0 q^k)^{C_k(λ1ᵗ,λ3ᵗ)}`.
pub fn check_ck_product_inversion(l1: &Partition, l3: &Partition) -> Result<Option<Mismatch>> {
    let n = l1.size() + l3.size();
    let r = ring(Side::Original, n);
    let lhs = invert_variable(&ck_product(&c_table(l1, l3)?, &r, 0));
    let c = &QRational::from_int(sign(n)) * &QRational::t_pow(kappa(l1) + kappa(l3));
    let rhs = shifted(&ck_product(&c_table(&l1.conjugate(), &l3.conjugate())?, &r, 0), -(n as i64), &c);
    Ok(first_mismatch(&lhs, &rhs))
}

/// Both sides of `∏_{i,j}(1 − Q q^{h_{μ,ν}(i,j)}) = Z_{(−1,−1)}(Q)·∏_k(1 − Q q^k)^{C_k(μ,ν)}`.
///
/// The left side is `exp(−Σ_d Q^d p_d(q^{μ+ρ}) p_d(q^{ν+ρ}) / d)` with closed-form power sums.
pub fn hook_product_sides(mu: &Partition, nu: &Partition, cap: u32) -> Result<(QSeries, QSeries)> {
    let r = QSeries::zero(&["Q"], Truncation::total(1, cap));
    let (x, y) = (Alphabet::principal(mu), Alphabet::principal(nu));
    let mut log = r.empty_like();
    for d in 1..=cap {
        let c = &(&power_sum_rational(&x, d) * &power_sum_rational(&y, d)) * &QRational::from_ratio(-1, d as i64);
        log.add_term(vec![d], c);
    }
    let lhs = log.exp()?;
    let rhs = conifold_in(&r, 0).mul(&ck_product(&c_table(mu, nu)?, &r, 0));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    fn tuple(a: &[u32], b: &[u32], c: &[u32], d: &[u32]) -> [Partition; 4] {
        [p(a), p(b), p(c), p(d)]
    }

    #[test]
    fn conifold_examples() {
        assert_eq!(conifold_factor(0).len(), 1);
        let c1 = conifold_factor(1);
        let q = QRational::t_pow(2);
        let om = &QRational::one() - &q;
        assert_eq!(c1.coeff(&[1]), -(&q / &(&om * &om)));
        // Q² coefficient: (a² − b)/2 with a = −q/(1−q)², b = q²/(1−q²)².
        let a = -(&q / &(&om * &om));
        let q2 = &q * &q;
        let om2 = &QRational::one() - &q2;
        let b = &q2 / &(&om2 * &om2);
        let expect = &(&(&a * &a) - &b) * &QRational::from_ratio(1, 2);
        assert_eq!(conifold_factor(2).coeff(&[2]), expect);
    }

    #[test]
    fn trivial_boundary() {
        let e = tuple(&[], &[], &[], &[]);
        let a = z0(&e, 2);
        assert_eq!(a.series.terms(), conifold_factor(2).terms());
        assert_eq!(a.series.terms(), z0_plus(&e, 2).series.terms());
        assert!(z0_normalized(&e).unwrap().series.constant_term().is_one());
        assert!(z0_closed(&e).unwrap().series.constant_term().is_one());
    }

    #[test]
    fn single_box() {
        let l = tuple(&[1], &[], &[], &[]);
        let n = z0_normalized(&l).unwrap();
        assert_eq!(n.degree(), Some(1));
        let s1 = (&QRational::t_pow(1) - &QRational::t_pow(-1)).inv().unwrap();
        assert_eq!(z0_closed(&l).unwrap().coeff(0), s1);
        assert_eq!(z0_closed(&l).unwrap().coeff(1), -&s1);
        assert_eq!(n.series, z0_closed(&l).unwrap().series);
    }

    #[test]
    fn flop_identity_small() {
        for l in [tuple(&[], &[], &[], &[]), tuple(&[1], &[], &[], &[]), tuple(&[1], &[1], &[1], &[1])] {
            let c = check_flop_identity(&l).unwrap();
            assert!(c.holds, "{:?}", c.witness);
        }
    }

    #[test]
    fn hook_product_canary() {
        let e = p(&[]);
        let (l, r) = hook_product_sides(&e, &e, 4).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, conifold_factor(4));
    }
}
