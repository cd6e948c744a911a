//! The topological vertex
//! `C_{λ1λ2λ3}(q) = q^{κ(λ3)/2} s_{λ2}(q^ρ) Σ_μ s_{λ1/μ}(q^{λ2ᵗ+ρ}) s_{λ3ᵗ/μ}(q^{λ2+ρ})`.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::partitions::{kappa, Partition};
use crate::qcore::QRational;
use crate::schur::schur_principal;

type Key = (Partition, Partition, Partition);

fn cache() -> &'static DashMap<Key, Arc<QRational>> {
    static CACHE: OnceLock<DashMap<Key, Arc<QRational>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Memoized vertex value.
pub fn vertex(l1: &Partition, l2: &Partition, l3: &Partition) -> Arc<QRational> {
    let key = (l1.clone(), l2.clone(), l3.clone());
    if let Some(v) = cache().get(&key) {
        return v.clone();
    }
    let v = Arc::new(compute(l1, l2, l3));
    cache().insert(key, v.clone());
    v
}

fn compute(l1: &Partition, l2: &Partition, l3: &Partition) -> QRational {
    let e = Partition::empty();
    let l2t = l2.conjugate();
    let l3t = l3.conjugate();
    let terms: Vec<QRational> = l1
        .subpartitions()
        .into_iter()
        .filter(|mu| l3t.contains(mu))
        .map(|mu| &schur_principal(l1, &mu, &l2t, false) * &schur_principal(&l3t, &mu, l2, false))
        .collect();
    let sum = QRational::sum(&terms);
    let pre = &QRational::t_pow(kappa(l3)) * &schur_principal(l2, &e, &e, false);
    &pre * &sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn examples() {
        let e = p(&[]);
        assert!(vertex(&e, &e, &e).is_one());
        let s1 = (&QRational::t_pow(1) - &QRational::t_pow(-1)).inv().unwrap();
        assert_eq!(*vertex(&p(&[1]), &e, &e), s1);
        assert_eq!(*vertex(&e, &e, &p(&[1])), s1);
        assert_eq!(*vertex(&e, &p(&[1]), &e), s1);
    }

    #[test]
    fn one_leg_is_a_schur_function() {
        let e = p(&[]);
        for lam in enumerate(5) {
            assert_eq!(*vertex(&lam, &e, &e), schur_principal(&lam, &e, &e, false));
        }
    }

    #[test]
    fn cyclic_symmetry() {
        let ps = enumerate(3);
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    assert_eq!(vertex(a, b, c), vertex(b, c, a), "{a} {b} {c}");
                }
            }
        }
    }
}
