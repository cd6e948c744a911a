//! Two local `P¹×P¹` joined by a (−1,−1)-curve, and the five-dimensional
//! `SU(2)×SU(2)` instanton sum with bifundamental matter.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partfun::{variables, z_graph};
use crate::partitions::{enumerate, kappa, Partition};
use crate::qcore::{QRational, QSeries, Truncation};
use crate::schur::{power_sum_rational, Alphabet};
use crate::toricgeom::{Fan, ToricGraph};

/// Series variables, in this order.
pub const VARS: [&str; 5] = ["QB1", "QB2", "QF1", "QF2", "Q0"];
const B1: usize = 0;
const B2: usize = 1;
const F1: usize = 2;
const F2: usize = 3;
const Q0: usize = 4;

pub fn figure5_fan() -> Fan {
    let mut fan = Fan::new(
        vec![[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [2, 1], [1, 2]],
        vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 1, 6], [5, 6, 7], [5, 7, 2], [5, 2, 1]],
    );
    for (name, e) in [
        ("QB1", [0, 2]),
        ("QB1'", [0, 4]),
        ("QF1", [0, 1]),
        ("QF1'", [0, 3]),
        ("QB2", [1, 5]),
        ("QB2'", [5, 7]),
        ("QF2", [2, 5]),
        ("QF2'", [5, 6]),
        ("Q0", [1, 2]),
    ] {
        fan.edge_names.insert(name.into(), e);
    }
    fan
}

/// `Q_B` total degree `≤ cap`; each of `Q_F1`, `Q_F2`, `Q0` of degree `≤ fiber_cap`.
pub fn truncation(cap: u32, fiber_cap: u32) -> Truncation {
    Truncation::weighted(vec![1, 1, 0, 0, 0], cap)
        .and(vec![0, 0, 1, 0, 0], fiber_cap)
        .and(vec![0, 0, 0, 1, 0], fiber_cap)
        .and(vec![0, 0, 0, 0, 1], fiber_cap)
}

/// `Z_X` of the two-square geometry with one variable per curve class.
pub fn z_figure5(cap: u32, fiber_cap: u32) -> Result<QSeries> {
    let graph = ToricGraph::build(&figure5_fan())?;
    let (names, edge_var, _) = variables(&graph, true);
    let slot: Vec<usize> = names
        .iter()
        .map(|n| VARS.iter().position(|v| v == n).ok_or_else(|| Error::Internal(format!("unexpected class {n}"))))
        .collect::<Result<_>>()?;
    let edge_var: Vec<usize> = edge_var.iter().map(|&v| slot[v]).collect();
    Ok(z_graph(&graph, &VARS, &edge_var, &truncation(cap, fiber_cap)))
}

/// `Z_X / Z_X|_{Q_B1 = Q_B2 = 0}`.
pub fn z_inst(cap: u32, fiber_cap: u32) -> Result<QSeries> {
    let z = z_figure5(cap, fiber_cap)?;
    let base = z.filter(|e| e[B1] == 0 && e[B2] == 0);
    z.div(&base)
}

/// Coefficients `c_k` of `Σ_{i,j≥1} (q^{μ_i−ν_j+j−i} − q^{j−i}) = Σ_k c_k q^k`,
/// computed as `p_1(q^{μ+ρ})p_1(q^{−ν−ρ}) − p_1(q^ρ)p_1(q^{−ρ})`.
pub fn shift_multiset(mu: &Partition, nu: &Partition) -> Result<BTreeMap<i64, i64>> {
    let e = Partition::empty();
    let p = |a: &Partition, inv: bool| {
        power_sum_rational(&Alphabet::Principal { nu: a.clone(), inverted: inv }, 1)
    };
    let d = &(&p(mu, false) * &p(nu, true)) - &(&p(&e, false) * &p(&e, true));
    let lp = d
        .as_integer_laurent()
        .ok_or_else(|| Error::Internal(format!("shift multiset of {mu}, {nu} is not a Laurent polynomial")))?;
    let mut out = BTreeMap::new();
    for (k, c) in lp.terms() {
        if c.is_zero() {
            continue;
        }
        if k % 2 != 0 {
            return Err(Error::Internal(format!("odd power t^{k} in shift multiset")));
        }
        let c = i64::try_from(c.clone()).map_err(|_| Error::Internal("shift multiset overflow".into()))?;
        out.insert(k / 2, c);
    }
    Ok(out)
}

/// A monomial `e^{−2Rx}` in `(QF1, QF2, Q0)` times `q^c`.
#[derive(Clone, Copy, Debug)]
struct Arg {
    mono: [i64; 3],
    c: i64,
}

/// One 4-tuple's contribution, before expansion: `2^{two}·sign·t^{t_exp}·Q^{half/2}
/// ·∏(1 − M q^c)^e`.
#[derive(Clone, Debug, Default)]
pub struct TupleTerm {
    pub two: i64,
    sign: i64,
    t_exp: i64,
    /// Exponents of `(QB1, QB2, QF1, QF2, Q0)` in half units.
    half: [i64; 5],
    factors: Vec<([i64; 3], i64, i64)>,
}

impl TupleTerm {
    fn new() -> Self {
        TupleTerm { sign: 1, ..Default::default() }
    }

    /// Multiplies by `sinh R(x)^e = (X^{−1/2}(1 − X)/2)^e`, `X = e^{−2Rx}`.
    fn sinh_pow(&mut self, x: Arg, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        for k in 0..3 {
            self.half[2 + k] -= e * x.mono[k];
        }
        self.t_exp -= e * x.c;
        self.two -= e;
        if x.mono.iter().all(|&m| m >= 0) {
            if x.mono == [0, 0, 0] && x.c == 0 {
                return Err(Error::Internal("sinh(0) in the instanton sum".into()));
            }
            self.factors.push((x.mono, x.c, e));
        } else if x.mono.iter().all(|&m| m <= 0) {
            // 1 − X = −X(1 − X^{−1})
            if e % 2 != 0 {
                self.sign = -self.sign;
            }
            for k in 0..3 {
                self.half[2 + k] += 2 * e * x.mono[k];
            }
            self.t_exp += 2 * e * x.c;
            self.factors.push((x.mono.map(|m| -m), -x.c, e));
        } else {
            return Err(Error::Internal(format!("mixed-sign monomial {:?}", x.mono)));
        }
        Ok(())
    }
}

/// The instanton summand for `(μ¹₁, μ¹₂, μ²₁, μ²₂)`, with every doubly infinite
/// `(i,j)` product replaced by its finite shift multiset.
pub fn tuple_term(mu: &[Partition; 4]) -> Result<TupleTerm> {
    let [m11, m12, m21, m22] = mu;
    let size = |p: &Partition| p.size() as i64;
    let n1 = size(m11) + size(m12);
    let n2 = size(m21) + size(m22);
    let mut t = TupleTerm::new();
    // (Q_Bk / (2⁴ Q_Fk))^{|μ^k|}
    t.half[B1] += 2 * n1;
    t.half[B2] += 2 * n2;
    t.half[F1] -= 2 * n1;
    t.half[F2] -= 2 * n2;
    t.two -= 4 * (n1 + n2);
    t.t_exp += kappa(m11) + kappa(m12) - kappa(m21) - kappa(m22);
    t.two += 2 * (n1 + n2);
    t.half[Q0] += 2 * (n1 + n2);
    t.half[F1] += 2 * size(m11) + size(m21) + size(m22);
    t.half[F2] += size(m11) + size(m12) + 2 * size(m22);
    // Vector multiplets: a_12 = −a_21 = 2a_k, e^{−4R a_k} = Q_Fk.
    for (k, pair) in [(0usize, [m11, m12]), (1, [m21, m22])] {
        for l in 0..2 {
            for n in 0..2 {
                let mut mono = [0i64; 3];
                mono[k] = match (l, n) {
                    (0, 1) => 1,
                    (1, 0) => -1,
                    _ => 0,
                };
                for (c, e) in shift_multiset(pair[l], pair[n])? {
                    t.sinh_pow(Arg { mono, c }, e)?;
                }
            }
        }
    }
    // Bifundamental: e^{−2R(a^{(1,2)}_{ln} + m)}.
    let bif = [[[1, 1, 1], [1, 0, 1]], [[0, 1, 1], [0, 0, 1]]];
    let first = [m11, m12];
    // Against the geometry, the second group's labels pair up exchanged.
    let second = [m22, m21];
    for l in 0..2 {
        for n in 0..2 {
            for (c, e) in shift_multiset(first[l], second[n])? {
                t.sinh_pow(Arg { mono: bif[l][n], c }, -e)?;
            }
        }
    }
    Ok(t)
}

/// Expands one tuple's term; exponents of the result may be negative.
fn expand(t: &TupleTerm, fiber_cap: u32) -> Result<Vec<(Vec<i64>, QRational)>> {
    let mut pre = [0i64; 5];
    for k in 0..5 {
        if t.half[k] % 2 != 0 {
            return Err(Error::Internal(format!("half-integer power of {} survives", VARS[k])));
        }
        pre[k] = t.half[k] / 2;
    }
    let caps: Vec<i64> = (0..3).map(|k| fiber_cap as i64 - pre[2 + k]).collect();
    if caps.iter().any(|&c| c < 0) {
        return Ok(Vec::new());
    }
    let trunc = Truncation::weighted(vec![1, 0, 0], caps[0] as u32)
        .and(vec![0, 1, 0], caps[1] as u32)
        .and(vec![0, 0, 1], caps[2] as u32);
    let ring = QSeries::one(&["QF1", "QF2", "Q0"], trunc);
    let mut constant = QRational::monomial(t.sign, t.t_exp);
    let two = QRational::from_int(2).pow(t.two)?;
    constant = &constant * &two;
    let mut acc = ring.clone();
    for &(mono, c, e) in &t.factors {
        let x = QRational::t_pow(2 * c);
        if mono == [0, 0, 0] {
            constant = &constant * &(&QRational::one() - &x).pow(e)?;
            continue;
        }
        let m: Vec<u32> = mono.iter().map(|&v| v as u32).collect();
        let f = ring.sub(&ring.monomial_like(m, x));
        let f = if e > 0 { f } else { f.inverse()? };
        acc = acc.mul(&f.pow(e.unsigned_abs() as u32));
    }
    Ok(acc
        .terms()
        .iter()
        .map(|(s, c)| {
            let mut e = pre.to_vec();
            for k in 0..3 {
                e[2 + k] += s[k] as i64;
            }
            (e, c * &constant)
        })
        .collect())
}

/// All 4-tuples of partitions with total size `≤ cap`.
pub fn tuples(cap: u32) -> Vec<[Partition; 4]> {
    let ps = enumerate(cap);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                for d in &ps {
                    if a.size() + b.size() + c.size() + d.size() <= cap {
                        out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
    }
    out
}

/// The instanton sum in the ring of [`truncation`].
pub fn nekrasov_rhs(cap: u32, fiber_cap: u32) -> Result<QSeries> {
    let parts: Vec<Result<Vec<(Vec<i64>, QRational)>>> =
        tuples(cap).par_iter().map(|mu| expand(&tuple_term(mu)?, fiber_cap)).collect();
    let mut acc: BTreeMap<Vec<i64>, Vec<QRational>> = BTreeMap::new();
    for p in parts {
        for (e, c) in p? {
            acc.entry(e).or_default().push(c);
        }
    }
    let mut out = QSeries::zero(&VARS, truncation(cap, fiber_cap));
    for (e, cs) in acc {
        let c = QRational::sum(&cs);
        if c.is_zero() {
            continue;
        }
        if e.iter().any(|&x| x < 0) {
            return Err(Error::Internal(format!("negative power {e:?} survives in the instanton sum")));
        }
        out.add_term(e.iter().map(|&x| x as u32).collect(), c);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct InstantonComparison {
    pub geometry: QSeries,
    pub gauge: QSeries,
    pub difference: QSeries,
}

impl InstantonComparison {
    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

pub fn compare(cap: u32, fiber_cap: u32) -> Result<InstantonComparison> {
    let geometry = z_inst(cap, fiber_cap)?;
    let gauge = nekrasov_rhs(cap, fiber_cap)?;
    let difference = geometry.sub(&gauge);
    Ok(InstantonComparison { geometry, gauge, difference })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `−Σ_{s∈μ} q^{a_μ(s)+l_ν(s)+1} − Σ_{s∈ν} q^{−(a_ν(s)+l_μ(s)+1)}`.
    fn arm_leg(mu: &Partition, nu: &Partition) -> BTreeMap<i64, i64> {
        let (mt, nt) = (mu.conjugate(), nu.conjugate());
        let mut out = BTreeMap::new();
        for (i, j) in mu.boxes() {
            let (i, j) = (i as usize, j as usize);
            let k = mu.part(i) as i64 - j as i64 + nt.part(j) as i64 - i as i64 + 1;
            *out.entry(k).or_insert(0) -= 1;
        }
        for (i, j) in nu.boxes() {
            let (i, j) = (i as usize, j as usize);
            let k = -(nu.part(i) as i64 - j as i64 + mt.part(j) as i64 - i as i64 + 1);
            *out.entry(k).or_insert(0) -= 1;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn shift_multiset_is_arm_leg() {
        for mu in enumerate(4) {
            for nu in enumerate(4) {
                assert_eq!(shift_multiset(&mu, &nu).unwrap(), arm_leg(&mu, &nu), "{mu} {nu}");
            }
        }
    }

    #[test]
    fn powers_of_two_cancel() {
        for mu in tuples(3) {
            assert_eq!(tuple_term(&mu).unwrap().two, 0);
        }
    }

    #[test]
    fn empty_tuple_is_one() {
        let e = Partition::empty();
        let t = expand(&tuple_term(&[e.clone(), e.clone(), e.clone(), e]).unwrap(), 2).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].0.iter().all(|&x| x == 0) && t[0].1.is_one());
    }

    #[test]
    fn figure5_geometry() {
        let fan = figure5_fan();
        assert!(fan.validate().is_valid());
        let g = ToricGraph::build(&fan).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (8, 9));
        let (b, _) = crate::toricgeom::homology_basis(&fan);
        assert_eq!(b.rank(), 5);
        assert!(fan.curve_class([1, 2]).unwrap().is_conifold());
        for e in &g.edges {
            assert_eq!(e.framing.abs(), if e.label == "Q0" { 0 } else { 1 }, "{}", e.label);
        }
    }

    #[test]
    fn cap_zero_is_one() {
        assert!(z_inst(0, 2).unwrap().constant_term().is_one());
        assert_eq!(z_inst(0, 2).unwrap().len(), 1);
        assert_eq!(nekrasov_rhs(0, 2).unwrap().len(), 1);
    }

    #[test]
    fn instanton_sums_agree() {
        assert!(compare(2, 2).unwrap().holds());
    }

    #[test]
    fn square_exchange_symmetry() {
        let r = nekrasov_rhs(2, 2).unwrap();
        for (e, c) in r.terms() {
            assert_eq!(&r.coeff(&[e[1], e[0], e[3], e[2], e[4]]), c, "{e:?}");
        }
    }
}
