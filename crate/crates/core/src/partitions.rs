//! Integer partitions and the statistics κ, f_μ, f_{μ,ν} and C_k(μ,ν).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::qcore::{Laurent, QRational};

/// Weakly decreasing positive parts; the empty list is ∅.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates and wraps a part list.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Panics on invalid input; intended for literals.
    pub fn of(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec()).expect("invalid partition literal")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// `μ_i` for `i ≥ 1`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "parts are indexed from 1");
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Boxes `(i, j)`, 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as i64).map(move |j| (i as i64 + 1, j)))
    }

    pub fn kappa(&self) -> i64 {
        kappa(self)
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(bound: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if i >= bound.len() {
                return;
            }
            for p in (1..=cap.min(bound[i])).rev() {
                cur.push(p);
                rec(bound, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.0, 0, u32::MAX, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `|μ| + Σ_j μ_j(μ_j − 2j)`.
pub fn kappa(mu: &Partition) -> i64 {
    let size = mu.size() as i64;
    size + mu.0.iter().enumerate().map(|(j, &m)| m as i64 * (m as i64 - 2 * (j as i64 + 1))).sum::<i64>()
}

/// `h_{μ,ν}(i,j) = μ_i − i + ν_j − j + 1`.
pub fn hook_exponent(mu: &Partition, nu: &Partition, i: usize, j: usize) -> i64 {
    mu.part(i) as i64 - i as i64 + nu.part(j) as i64 - j as i64 + 1
}

/// `f_μ(q) = Σ_{boxes (i,j)} q^{j−i}` as a Laurent polynomial in `t`.
pub fn f_mu(mu: &Partition) -> Laurent {
    Laurent::from_terms(mu.boxes().map(|(i, j)| (2 * (j - i), IBig::ONE)))
}

/// `(q/(q−1))·Σ_i (q^{μ_i−i} − q^{−i})`, evaluated as a rational function.
pub fn f_mu_closed(mu: &Partition) -> QRational {
    let q = QRational::t_pow(2);
    let sum = QRational::sum(
        &(1..=mu.length())
            .map(|i| &QRational::t_pow(2 * (mu.part(i) as i64 - i as i64)) - &QRational::t_pow(-2 * i as i64))
            .collect::<Vec<_>>(),
    );
    &(&q / &(&q - &QRational::one())) * &sum
}

/// `f_{μ,ν} = (q − 2 + q^{−1}) f_μ f_ν + f_μ + f_ν`.
pub fn f_mu_nu(mu: &Partition, nu: &Partition) -> Laurent {
    let (a, b) = (f_mu(mu), f_mu(nu));
    let w = Laurent::from_small(-2, &[1, 0, -2, 0, 1]);
    &(&(&w * &a) * &b) + &(&a + &b)
}

/// The coefficients `C_k(μ,ν)` of `f_{μ,ν}(q) = Σ_k C_k q^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CkTable(BTreeMap<i64, u64>);

impl CkTable {
    pub fn get(&self, k: i64) -> u64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn first_moment(&self) -> i64 {
        self.0.iter().map(|(k, c)| k * *c as i64).sum()
    }
}

pub fn c_table(mu: &Partition, nu: &Partition) -> Result<CkTable> {
    let f = f_mu_nu(mu, nu);
    let mut map = BTreeMap::new();
    for (e, c) in f.terms() {
        if c.is_zero() {
            continue;
        }
        if e % 2 != 0 {
            return Err(Error::Internal(format!("f_mu_nu has a half-integer power t^{e}")));
        }
        let c = i64::try_from(c.clone()).map_err(|_| Error::Internal("C_k overflow".into()))?;
        if c < 0 {
            return Err(Error::NegativeCk { k: e / 2, coeff: c });
        }
        map.insert(e / 2, c as u64);
    }
    Ok(CkTable(map))
}

/// All partitions of `n`, reverse-lexicographic.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition of size `≤ max_size`, sizes ascending, reverse-lexicographic within a size.
pub fn enumerate(max_size: u32) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&p(&[])), 0);
        assert_eq!(kappa(&p(&[2])), 2);
        assert_eq!(kappa(&p(&[1, 1])), -2);
    }

    #[test]
    fn f_mu_examples() {
        assert!(f_mu(&p(&[])).is_zero());
        assert!(f_mu(&p(&[1])).is_one());
        assert_eq!(f_mu(&p(&[2])), Laurent::from_small(0, &[1, 0, 1]));
        for mu in enumerate(6) {
            assert_eq!(QRational::from_laurent(f_mu(&mu)), f_mu_closed(&mu), "{mu}");
        }
    }

    #[test]
    fn c_table_examples() {
        assert!(c_table(&p(&[]), &p(&[])).unwrap().is_empty());
        let t = c_table(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(-1, 1), (1, 1)]);
        let t = c_table(&p(&[1]), &p(&[])).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_exponent(&p(&[]), &p(&[]), 1, 1), -1);
        assert_eq!(hook_exponent(&p(&[1]), &p(&[1]), 1, 1), 1);
        assert_eq!(hook_exponent(&p(&[2]), &p(&[]), 1, 2), 0);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate(0), vec![p(&[])]);
        assert_eq!(enumerate(2), vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]);
        assert_eq!(enumerate(4).len(), 12);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!(p(&[]).to_string(), "[]");
        assert_eq!("[3,1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert!("[1,2]".parse::<Partition>().is_err());
    }

    #[test]
    fn subpartitions_are_the_contained_ones() {
        let lam = p(&[3, 2]);
        let subs = lam.subpartitions();
        let brute: Vec<Partition> = enumerate(5).into_iter().filter(|m| lam.contains(m)).collect();
        assert_eq!(subs.len(), brute.len());
        assert!(brute.iter().all(|m| subs.contains(m)));
    }

    #[test]
    fn conjugation_and_kappa_symmetry() {
        for mu in enumerate(8) {
            assert_eq!(mu.conjugate().conjugate(), mu);
            assert_eq!(kappa(&mu.conjugate()), -kappa(&mu));
            assert_eq!(kappa(&mu) % 2, 0);
        }
    }

    #[test]
    fn ck_sum_rules() {
        for mu in enumerate(5) {
            for nu in enumerate(5) {
                let t = c_table(&mu, &nu).unwrap();
                assert_eq!(t.total(), (mu.size() + nu.size()) as u64);
                assert_eq!(2 * t.first_moment(), kappa(&mu) + kappa(&nu));
                let tc = c_table(&mu.conjugate(), &nu.conjugate()).unwrap();
                for (k, c) in t.iter() {
                    assert_eq!(tc.get(-k), c);
                }
            }
        }
    }
}
