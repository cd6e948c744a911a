//! Cyclotomic polynomials `Φ_d(t)`, cached process-wide.
//!
//! Every denominator produced by principal specializations is a product of
//! factors `1 - t^m = -∏_{d|m} Φ_d(t)`, so rational functions keep their
//! denominators factored over this table.

use std::sync::{Arc, OnceLock, RwLock};

type Table = RwLock<Vec<Option<Arc<[i64]>>>>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Vec::new()))
}

/// Coefficients of `Φ_d`, lowest degree first. `d >= 1`.
pub fn cyclotomic(d: u32) -> Arc<[i64]> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(Some(p)) = table().read().unwrap().get(d as usize) {
        return p.clone();
    }
    let computed: Arc<[i64]> = compute(d).into();
    let mut w = table().write().unwrap();
    if w.len() <= d as usize {
        w.resize(d as usize + 1, None);
    }
    w[d as usize].get_or_insert(computed).clone()
}

fn compute(d: u32) -> Vec<i64> {
    // t^d - 1 divided by Φ_e for every proper divisor e.
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            p = div_monic(&p, &cyclotomic(e));
        }
    }
    p
}

fn div_monic(a: &[i64], d: &[i64]) -> Vec<i64> {
    let dn = d.len() - 1;
    let mut rem = a.to_vec();
    let qlen = a.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for j in 0..=dn {
            rem[k + j] -= c * d[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(&*cyclotomic(1), &[-1, 1]);
        assert_eq!(&*cyclotomic(2), &[1, 1]);
        assert_eq!(&*cyclotomic(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic(6), &[1, -1, 1]);
        assert_eq!(cyclotomic(12).len() as u32 - 1, euler_phi(12));
    }

    #[test]
    fn phi_105_has_a_two() {
        assert!(cyclotomic(105).iter().any(|&c| c.abs() == 2));
    }
}
