//! The combinatorial identity battery: κ and `C_k` symmetries, the hook
//! product, Cauchy-type summations, branching, homogeneity, conjugation
//! symmetry, and a numeric oracle for the vertex.

use std::collections::BTreeMap;

use dashu_int::IBig;
use dashu_ratio::RBig;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::localflop::hook_product_sides;
use crate::partitions::{c_table, enumerate, kappa, Partition};
use crate::qcore::{QRational, QSeries, Truncation};
use crate::schur::{power_sum_rational, schur_principal, skew_schur, skew_schur_rational, Alphabet};
use crate::vertex::vertex;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn report<T: Sync>(name: &'static str, cases: &[T], check: impl Fn(&T) -> Result<Option<String>> + Sync) -> Result<IdentityReport> {
    let outcomes: Vec<Option<String>> = cases.par_iter().map(&check).collect::<Result<_>>()?;
    Ok(IdentityReport { name, cases: cases.len(), failures: outcomes.into_iter().flatten().collect() })
}

fn pairs(max: u32) -> Vec<(Partition, Partition)> {
    let ps = enumerate(max);
    ps.iter().flat_map(|a| ps.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn skew_pairs(max: u32) -> Vec<(Partition, Partition)> {
    enumerate(max).into_iter().flat_map(|l| l.subpartitions().into_iter().map(move |m| (l.clone(), m))).collect()
}

pub fn kappa_conjugation(max: u32) -> Result<IdentityReport> {
    report("kappa-conjugation", &enumerate(max), |mu| {
        let ok = kappa(&mu.conjugate()) == -kappa(mu) && kappa(mu) % 2 == 0;
        Ok((!ok).then(|| format!("{mu}")))
    })
}

pub fn ck_sum_rules(max: u32) -> Result<IdentityReport> {
    report("ck-sum-rules", &pairs(max), |(mu, nu)| {
        let c = c_table(mu, nu)?;
        let ok = c.total() == (mu.size() + nu.size()) as u64 && 2 * c.first_moment() == kappa(mu) + kappa(nu);
        Ok((!ok).then(|| format!("({mu}, {nu})")))
    })
}

pub fn ck_conjugation(max: u32) -> Result<IdentityReport> {
    report("ck-conjugation", &pairs(max), |(mu, nu)| {
        let a = c_table(mu, nu)?;
        let b = c_table(&mu.conjugate(), &nu.conjugate())?;
        let ok = a.iter().all(|(k, c)| b.get(-k) == c) && a.total() == b.total();
        Ok((!ok).then(|| format!("({mu}, {nu})")))
    })
}

pub fn hook_product(max: u32, cap: u32) -> Result<IdentityReport> {
    report("hook-product", &pairs(max), |(mu, nu)| {
        let (lhs, rhs) = hook_product_sides(mu, nu, cap)?;
        Ok((lhs != rhs).then(|| format!("({mu}, {nu})")))
    })
}

/// `exp(±Σ_d (±1)^{d+1} Q^d p_d(x) p_d(y) / d)`: with `dual` false this is
/// `∏(1 − Q x_i y_j)^{−1}`, with `dual` true `∏(1 + Q x_i y_j)`.
fn cauchy_kernel(x: &Alphabet, y: &Alphabet, dual: bool, ring: &QSeries) -> Result<QSeries> {
    let cap = ring.truncation().constraints()[0].1;
    let mut log = ring.empty_like();
    for d in 1..=cap {
        let sign = if dual && d % 2 == 0 { -1 } else { 1 };
        let c = &(&power_sum_rational(x, d) * &power_sum_rational(y, d)) * &QRational::from_ratio(sign, d as i64);
        log.add_term(vec![d], c);
    }
    log.exp()
}

fn cauchy_alphabets() -> (Alphabet, Alphabet) {
    (Alphabet::principal(&Partition::of(&[1])), Alphabet::principal(&Partition::of(&[2])))
}

/// Both sides of `Σ_λ s_{λ/λ1}(Qx) s_{λ/λ2}(y) = ∏(1 − Q x_i y_j)^{−1} Σ_μ s_{λ2/μ}(Qx) s_{λ1/μ}(y)`,
/// with `Q` recording the `x`-degree and the sum over λ cut at the series cap.
pub fn cauchy_sides(l1: &Partition, l2: &Partition, cap: u32) -> Result<(QSeries, QSeries)> {
    let ring = QSeries::zero(&["Q"], Truncation::total(1, cap));
    let (x, y) = cauchy_alphabets();
    let mut lhs = ring.empty_like();
    for lam in enumerate(l1.size() + cap) {
        if lam.contains(l1) && lam.contains(l2) {
            let c = &skew_schur_rational(&lam, l1, &x) * &skew_schur_rational(&lam, l2, &y);
            lhs.add_term(vec![lam.size() - l1.size()], c);
        }
    }
    let mut sum = ring.empty_like();
    for mu in l2.subpartitions().into_iter().filter(|m| l1.contains(m)) {
        let c = &skew_schur_rational(l2, &mu, &x) * &skew_schur_rational(l1, &mu, &y);
        sum.add_term(vec![l2.size() - mu.size()], c);
    }
    Ok((lhs, cauchy_kernel(&x, &y, false, &ring)?.mul(&sum)))
}

/// Both sides of `Σ_λ s_{λ/λ1}(Qx) s_{λᵗ/λ2}(y) = ∏(1 + Q x_i y_j) Σ_μ s_{λ2ᵗ/μ}(Qx) s_{λ1ᵗ/μᵗ}(y)`.
pub fn dual_cauchy_sides(l1: &Partition, l2: &Partition, cap: u32) -> Result<(QSeries, QSeries)> {
    let ring = QSeries::zero(&["Q"], Truncation::total(1, cap));
    let (x, y) = cauchy_alphabets();
    let mut lhs = ring.empty_like();
    for lam in enumerate(l1.size() + cap) {
        let lt = lam.conjugate();
        if lam.contains(l1) && lt.contains(l2) {
            let c = &skew_schur_rational(&lam, l1, &x) * &skew_schur_rational(&lt, l2, &y);
            lhs.add_term(vec![lam.size() - l1.size()], c);
        }
    }
    let (l1t, l2t) = (l1.conjugate(), l2.conjugate());
    let mut sum = ring.empty_like();
    for mu in l2t.subpartitions().into_iter().filter(|m| l1t.contains(&m.conjugate())) {
        let c = &skew_schur_rational(&l2t, &mu, &x) * &skew_schur_rational(&l1t, &mu.conjugate(), &y);
        sum.add_term(vec![l2t.size() - mu.size()], c);
    }
    Ok((lhs, cauchy_kernel(&x, &y, true, &ring)?.mul(&sum)))
}

pub fn cauchy(max: u32, cap: u32) -> Result<IdentityReport> {
    report("cauchy", &pairs(max), |(a, b)| {
        let (l, r) = cauchy_sides(a, b, cap)?;
        Ok((l != r).then(|| format!("({a}, {b})")))
    })
}

pub fn dual_cauchy(max: u32, cap: u32) -> Result<IdentityReport> {
    report("dual-cauchy", &pairs(max), |(a, b)| {
        let (l, r) = dual_cauchy_sides(a, b, cap)?;
        Ok((l != r).then(|| format!("({a}, {b})")))
    })
}

/// `s_{μ/ν}(x, y) = Σ_ξ s_{μ/ξ}(x) s_{ξ/ν}(y)`, the left side by Jacobi–Trudi
/// on the concatenated alphabet.
pub fn branching(max: u32) -> Result<IdentityReport> {
    let x = Alphabet::principal(&Partition::of(&[2, 1]));
    let y = Alphabet::principal(&Partition::of(&[1])).scaled(1, vec![]);
    let xy = Alphabet::joined(vec![x.clone(), y.clone()]);
    report("branching", &skew_pairs(max), |(mu, nu)| {
        let lhs = skew_schur_rational(mu, nu, &xy);
        let terms: Vec<QRational> = mu
            .subpartitions()
            .into_iter()
            .filter(|xi| xi.contains(nu))
            .map(|xi| &skew_schur_rational(mu, &xi, &x) * &skew_schur_rational(&xi, nu, &y))
            .collect();
        Ok((lhs != QRational::sum(&terms)).then(|| format!("{mu}/{nu}")))
    })
}

/// `s_{λ/μ}(Qx) = Q^{|λ|−|μ|} s_{λ/μ}(x)`, the left side computed in the series ring.
pub fn homogeneity(max: u32) -> Result<IdentityReport> {
    let ring = QSeries::zero(&["Q"], Truncation::total(1, max));
    let a = Alphabet::principal(&Partition::of(&[2, 1]));
    let qa = a.clone().scaled(0, vec![1]);
    report("homogeneity", &skew_pairs(max), |(lam, mu)| {
        let lhs = skew_schur(lam, mu, &qa, &ring);
        let rhs = ring.monomial_like(vec![lam.size() - mu.size()], skew_schur_rational(lam, mu, &a));
        Ok((lhs != rhs).then(|| format!("{lam}/{mu}")))
    })
}

/// `s_{λ/μ}(q^{ν+ρ}) = (−1)^{|λ|−|μ|} s_{λᵗ/μᵗ}(q^{−νᵗ−ρ})`.
pub fn conjugation_symmetry(max: u32) -> Result<IdentityReport> {
    let cases: Vec<(Partition, Partition, Partition)> = skew_pairs(max)
        .into_iter()
        .flat_map(|(l, m)| enumerate(max).into_iter().map(move |n| (l.clone(), m.clone(), n)))
        .collect();
    report("conjugation-symmetry", &cases, |(lam, mu, nu)| {
        let lhs = schur_principal(lam, mu, nu, false);
        let rhs = schur_principal(&lam.conjugate(), &mu.conjugate(), &nu.conjugate(), true);
        let sign = if (lam.size() - mu.size()) % 2 == 0 { 1 } else { -1 };
        Ok((lhs != &QRational::from_int(sign) * &rhs).then(|| format!("{lam}/{mu} at {nu}")))
    })
}

fn rpow(t: &RBig, k: i64) -> RBig {
    let mut r = RBig::ONE;
    for _ in 0..k.unsigned_abs() {
        r *= t;
    }
    if k < 0 {
        RBig::ONE / r
    } else {
        r
    }
}

fn abs(x: RBig) -> RBig {
    if x < RBig::ZERO {
        -x
    } else {
        x
    }
}

/// `s_{λ/μ}(x_1, …, x_n)` by adding one horizontal strip per variable.
pub fn skew_schur_numeric(lambda: &Partition, mu: &Partition, xs: &[RBig]) -> RBig {
    if !lambda.contains(mu) {
        return RBig::ZERO;
    }
    let shapes: Vec<Partition> = lambda.subpartitions().into_iter().filter(|k| k.contains(mu)).collect();
    let mut vals: BTreeMap<Partition, RBig> = BTreeMap::from([(mu.clone(), RBig::ONE)]);
    for x in xs {
        let mut next = BTreeMap::new();
        for big in &shapes {
            let mut acc = RBig::ZERO;
            for (small, v) in &vals {
                let strip = big.contains(small)
                    && (1..=big.length()).all(|i| big.part(i + 1) <= small.part(i));
                if strip {
                    acc += v * rpow(x, (big.size() - small.size()) as i64);
                }
            }
            if acc != RBig::ZERO {
                next.insert(big.clone(), acc);
            }
        }
        vals = next;
    }
    vals.remove(lambda).unwrap_or(RBig::ZERO)
}

/// The first `n` variables of `q^{ν+ρ}` at `t = t0`.
fn principal_numeric(nu: &Partition, t0: &RBig, n: usize) -> Vec<RBig> {
    (1..=n).map(|i| rpow(t0, 2 * (nu.part(i) as i64 - i as i64) + 1)).collect()
}

/// The vertex evaluated at `t0` from truncated alphabets, independently of
/// power sums and Jacobi–Trudi.
pub fn vertex_numeric(l1: &Partition, l2: &Partition, l3: &Partition, t0: &RBig, n: usize) -> RBig {
    let e = Partition::empty();
    let (l2t, l3t) = (l2.conjugate(), l3.conjugate());
    let x = principal_numeric(&l2t, t0, n);
    let y = principal_numeric(l2, t0, n);
    let mut sum = RBig::ZERO;
    for mu in l1.subpartitions().into_iter().filter(|m| l3t.contains(m)) {
        sum += skew_schur_numeric(l1, &mu, &x) * skew_schur_numeric(&l3t, &mu, &y);
    }
    rpow(t0, kappa(l3)) * skew_schur_numeric(l2, &e, &principal_numeric(&e, t0, n)) * sum
}

/// Symbolic vertex against [`vertex_numeric`] at `points` random `t0` with
/// `2 ≤ |t0| ≤ 5` and 40 variables; the dropped tail is `O(t0^{−79})`
/// relative, so agreement to `10^{−20}` relative is demanded.
pub fn vertex_oracle(max: u32, points: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let ts: Vec<RBig> = (0..points)
        .map(|_| {
            let b: i64 = rng.gen_range(1..=4);
            let a: i64 = rng.gen_range(2 * b..=5 * b);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            RBig::from_parts_signed(IBig::from(s * a), IBig::from(b))
        })
        .collect();
    let ps = enumerate(max);
    let mut cases = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                for t in &ts {
                    cases.push((a.clone(), b.clone(), c.clone(), t.clone()));
                }
            }
        }
    }
    let tol = RBig::from_parts_signed(IBig::ONE, IBig::from(10).pow(20));
    report("vertex-oracle", &cases, |(a, b, c, t)| {
        let Some(exact) = vertex(a, b, c).eval(t) else {
            return Ok(Some(format!("({a}, {b}, {c}) has a pole at t = {t}")));
        };
        let approx = vertex_numeric(a, b, c, t, 40);
        let err = abs(&exact - &approx);
        let bound = &tol * (abs(exact) + RBig::ONE);
        Ok((err > bound).then(|| format!("({a}, {b}, {c}) at t = {t}")))
    })
}

/// Single-partition identities run to `max_size`, those in two varying
/// partitions to `max_size − 1`.
pub fn battery(max_size: u32, oracle_points: usize) -> Result<Vec<IdentityReport>> {
    let pair = max_size.saturating_sub(1);
    let mut out = vec![
        kappa_conjugation(max_size)?,
        ck_sum_rules(pair)?,
        ck_conjugation(pair)?,
        hook_product(pair, 4)?,
        cauchy(pair, 2)?,
        dual_cauchy(pair, 2)?,
        branching(max_size)?,
        homogeneity(max_size)?,
        conjugation_symmetry(pair)?,
    ];
    if oracle_points > 0 {
        out.push(vertex_oracle(max_size.min(2), oracle_points, 7)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        for r in battery(2, 1).unwrap() {
            assert!(r.passed(), "{} failed on {:?}", r.name, r.failures);
            assert!(r.cases > 0, "{}", r.name);
        }
    }

    #[test]
    fn numeric_schur_of_one_box() {
        let xs: Vec<RBig> = [1, 2, 3].map(|k| RBig::from(IBig::from(k))).to_vec();
        let v = skew_schur_numeric(&Partition::of(&[1]), &Partition::empty(), &xs);
        assert_eq!(v, RBig::from(IBig::from(6)));
        let v = skew_schur_numeric(&Partition::of(&[1, 1]), &Partition::empty(), &xs);
        assert_eq!(v, RBig::from(IBig::from(11)));
    }

    #[test]
    fn broken_kernel_is_detected() {
        let p1 = Partition::of(&[1]);
        let (l, r) = cauchy_sides(&p1, &p1, 2).unwrap();
        let (dl, _) = dual_cauchy_sides(&p1, &p1, 2).unwrap();
        assert_eq!(l, r);
        assert_ne!(l, dl);
    }
}
