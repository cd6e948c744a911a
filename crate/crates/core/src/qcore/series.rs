//! Truncated multivariate power series in Kähler variables with [`QRational`]
//! coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::QRational;
use crate::error::{Error, Result};

/// A monomial is kept iff `Σ w_i·e_i ≤ cap` holds for every constraint.
/// Weights are nonnegative, so the kept set is closed under division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    constraints: Vec<(Vec<u32>, u32)>,
}

impl Truncation {
    /// Total degree `≤ cap` in `n` variables.
    pub fn total(n: usize, cap: u32) -> Self {
        Truncation { constraints: vec![(vec![1; n], cap)] }
    }

    pub fn weighted(weights: Vec<u32>, cap: u32) -> Self {
        Truncation { constraints: vec![(weights, cap)] }
    }

    /// Adds a further constraint.
    pub fn and(mut self, weights: Vec<u32>, cap: u32) -> Self {
        self.constraints.push((weights, cap));
        self
    }

    pub fn constraints(&self) -> &[(Vec<u32>, u32)] {
        &self.constraints
    }

    pub fn keeps(&self, e: &[u32]) -> bool {
        self.constraints.iter().all(|(w, cap)| {
            let s: u64 = w.iter().zip(e).map(|(&w, &e)| w as u64 * e as u64).sum();
            s <= *cap as u64
        })
    }

    fn bounds_every_variable(&self, n: usize) -> bool {
        (0..n).all(|i| self.constraints.iter().any(|(w, _)| w.get(i).is_some_and(|&x| x > 0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    vars: Arc<[String]>,
    trunc: Arc<Truncation>,
    terms: BTreeMap<Vec<u32>, QRational>,
}

fn degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

fn add_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_exp(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

impl QSeries {
    pub fn zero(vars: &[&str], trunc: Truncation) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        QSeries::zero_with(vars.into(), Arc::new(trunc))
    }

    pub fn zero_with(vars: Arc<[String]>, trunc: Arc<Truncation>) -> Self {
        assert!(
            trunc.constraints.iter().all(|(w, _)| w.len() == vars.len()),
            "truncation weights must match the variable count"
        );
        assert!(trunc.bounds_every_variable(vars.len()), "every variable must be truncated");
        QSeries { vars, trunc, terms: BTreeMap::new() }
    }

    pub fn one(vars: &[&str], trunc: Truncation) -> Self {
        let mut s = QSeries::zero(vars, trunc);
        s.add_term(vec![0; s.nvars()], QRational::one());
        s
    }

    /// A series in the same ring as `self` (same variables and truncation).
    pub fn empty_like(&self) -> Self {
        QSeries { vars: self.vars.clone(), trunc: self.trunc.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: QRational) -> Self {
        let mut s = self.empty_like();
        s.add_term(vec![0; self.nvars()], c);
        s
    }

    /// `c·∏ x_i^{e_i}` in the ring of `self`, or zero if above the cap.
    pub fn monomial_like(&self, e: Vec<u32>, c: QRational) -> Self {
        let mut s = self.empty_like();
        s.add_term(e, c);
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, QRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Vec<u32>, QRational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> QRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QRational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn keeps(&self, e: &[u32]) -> bool {
        self.trunc.keeps(e)
    }

    /// Adds `c·x^e`; terms above the cap are dropped.
    pub fn add_term(&mut self, e: Vec<u32>, c: QRational) {
        assert_eq!(e.len(), self.nvars(), "exponent length mismatch");
        if c.is_zero() || !self.trunc.keeps(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same_ring(&self, other: &QSeries) {
        assert!(
            self.vars == other.vars && self.trunc == other.trunc,
            "series live in different rings"
        );
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.check_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        out
    }

    pub fn scale(&self, k: &QRational) -> QSeries {
        let mut out = self.empty_like();
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.check_same_ring(other);
        let mut acc: BTreeMap<Vec<u32>, Vec<QRational>> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exp(ea, eb);
                if self.trunc.keeps(&e) {
                    acc.entry(e).or_default().push(ca * cb);
                }
            }
        }
        let mut out = self.empty_like();
        for (e, cs) in acc {
            let c = QRational::sum(&cs);
            if !c.is_zero() {
                out.terms.insert(e, c);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> QSeries {
        let mut acc = self.constant_like(QRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Monomials reachable as sums of elements of `support` inside the cap,
    /// in increasing total degree.
    fn reachable(&self, support: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let zero = vec![0; self.nvars()];
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(m) = frontier.pop() {
            for a in support {
                let e = add_exp(&m, a);
                if self.trunc.keeps(&e) && seen.insert(e.clone()) {
                    frontier.push(e);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_by_key(|e| degree(e));
        out
    }

    fn nonconstant_support(&self) -> Vec<(Vec<u32>, QRational)> {
        self.terms
            .iter()
            .filter(|(e, _)| degree(e) > 0)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<QSeries> {
        let c0 = self.constant_term();
        let c0_inv = c0.inv().map_err(|_| Error::NotInvertible)?;
        let supp = self.nonconstant_support();
        let keys: Vec<Vec<u32>> = supp.iter().map(|x| x.0.clone()).collect();
        let mut res: BTreeMap<Vec<u32>, QRational> = BTreeMap::new();
        for m in self.reachable(&keys) {
            if degree(&m) == 0 {
                res.insert(m, c0_inv.clone());
                continue;
            }
            let parts: Vec<QRational> = supp
                .iter()
                .filter_map(|(a, c)| {
                    let rest = sub_exp(&m, a)?;
                    res.get(&rest).map(|r| c * r)
                })
                .collect();
            let v = -(&QRational::sum(&parts) * &c0_inv);
            if !v.is_zero() {
                res.insert(m, v);
            }
        }
        let mut out = self.empty_like();
        out.terms = res;
        Ok(out)
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<QSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NonUnitalLog);
        }
        // With E the Euler operator, E(s) = s·E(log s) gives a degree recursion.
        let supp = self.nonconstant_support();
        let keys: Vec<Vec<u32>> = supp.iter().map(|x| x.0.clone()).collect();
        let mut res: BTreeMap<Vec<u32>, QRational> = BTreeMap::new();
        for m in self.reachable(&keys) {
            let dm = degree(&m);
            if dm == 0 {
                continue;
            }
            let parts: Vec<QRational> = supp
                .iter()
                .filter_map(|(b, c)| {
                    let a = sub_exp(&m, b)?;
                    let la = res.get(&a)?;
                    Some(&(la * c) * &QRational::from_int(degree(&a) as i64))
                })
                .collect();
            let corr = &QRational::sum(&parts) * &QRational::from_ratio(1, dm as i64);
            let v = &self.coeff(&m) - &corr;
            if !v.is_zero() {
                res.insert(m, v);
            }
        }
        let mut out = self.empty_like();
        out.terms = res;
        Ok(out)
    }

    /// Formal exponential; requires zero constant term.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::Internal("exp of a series with nonzero constant term".into()));
        }
        let supp = self.nonconstant_support();
        let keys: Vec<Vec<u32>> = supp.iter().map(|x| x.0.clone()).collect();
        let mut res: BTreeMap<Vec<u32>, QRational> = BTreeMap::new();
        for m in self.reachable(&keys) {
            let dm = degree(&m);
            if dm == 0 {
                res.insert(m, QRational::one());
                continue;
            }
            let parts: Vec<QRational> = supp
                .iter()
                .filter_map(|(a, c)| {
                    let rest = sub_exp(&m, a)?;
                    let er = res.get(&rest)?;
                    Some(&(c * er) * &QRational::from_int(degree(a) as i64))
                })
                .collect();
            let v = &QRational::sum(&parts) * &QRational::from_ratio(1, dm as i64);
            if !v.is_zero() {
                res.insert(m, v);
            }
        }
        let mut out = self.empty_like();
        out.terms = res;
        Ok(out)
    }

    /// Keeps only the terms whose exponents satisfy `pred`.
    pub fn filter(&self, pred: impl Fn(&[u32]) -> bool) -> QSeries {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().filter(|(e, _)| pred(e)).map(|(e, c)| (e.clone(), c.clone())).collect();
        out
    }

    /// Same terms in a ring with a (possibly tighter) truncation.
    pub fn retruncate(&self, trunc: Truncation) -> QSeries {
        let mut out = QSeries::zero_with(self.vars.clone(), Arc::new(trunc));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Moves every term to a new ring through an exponent map; terms mapped
    /// to `None` or above the new cap are dropped, and collisions accumulate.
    pub fn remap(
        &self,
        vars: &[&str],
        trunc: Truncation,
        f: impl Fn(&[u32]) -> Option<Vec<u32>>,
    ) -> QSeries {
        let mut out = QSeries::zero(vars, trunc);
        for (e, c) in &self.terms {
            if let Some(ne) = f(e) {
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(self.vars.iter())
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
