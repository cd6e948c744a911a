//! Global partition functions from the vertex formalism, Gromov–Witten
//! extraction, and the global flop and blowup comparisons.

use std::collections::{BTreeMap, HashMap};

use dashu_int::IBig;
use dashu_ratio::RBig;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localflop::conifold_log_coeff;
use crate::partitions::{enumerate, kappa, Partition};
use crate::qcore::{expand_at_unity, QRational, QSeries, Truncation};
use crate::toricgeom::{homology_basis, ks_fan, Edge, Fan, LatticeBasis, SurfaceFan, ToricGraph};
use crate::vertex::vertex;

/// `(−1)^{|λ|(n+1)} q^{κ(λ)n/2}`.
fn edge_weight(lambda: &Partition, framing: i64) -> QRational {
    let sign = if (lambda.size() as i64 * (framing + 1)) % 2 == 0 { 1 } else { -1 };
    QRational::monomial(sign, kappa(lambda) * framing)
}

type Buckets = HashMap<Vec<u32>, Vec<QRational>>;

struct Plan<'a> {
    graph: &'a ToricGraph,
    edge_var: &'a [usize],
    trunc: &'a Truncation,
    nvars: usize,
    order: Vec<usize>,
    /// Vertices whose last internal edge is `order[d]`.
    closing: Vec<Vec<usize>>,
    candidates: Vec<Vec<Partition>>,
}

impl Plan<'_> {
    fn dfs(&self, depth: usize, assignment: &mut Vec<Partition>, exps: &mut Vec<u32>, acc: QRational, out: &mut Buckets) {
        if depth == self.order.len() {
            out.entry(exps.clone()).or_default().push(acc);
            return;
        }
        let e = self.order[depth];
        let v = self.edge_var[e];
        for lam in &self.candidates[e] {
            exps[v] += lam.size();
            if self.trunc.keeps(exps) {
                assignment[e] = lam.clone();
                let mut next = &acc * &edge_weight(lam, self.graph.edges[e].framing);
                for &t in &self.closing[depth] {
                    let [a, b, c] = self.graph.vertex_arguments(t, assignment);
                    next = &next * &*vertex(&a, &b, &c);
                }
                self.dfs(depth + 1, assignment, exps, next, out);
            }
            exps[v] -= lam.size();
        }
    }
}

/// `Σ_λ ∏_e (edge weight)·x_{v(e)}^{|λ(e)|} ∏_v C_{λ_v}` over assignments kept
/// by `trunc`, where edge `e` carries variable `edge_var[e]`.
pub fn z_graph(graph: &ToricGraph, vars: &[&str], edge_var: &[usize], trunc: &Truncation) -> QSeries {
    let ne = graph.edges.len();
    let mut out = QSeries::zero(vars, trunc.clone());
    let mut order: Vec<usize> = (0..ne).collect();
    order.sort_by_key(|&e| (graph.edges[e].from.max(graph.edges[e].to), graph.edges[e].from.min(graph.edges[e].to), e));
    let position: Vec<usize> = {
        let mut p = vec![0; ne];
        for (d, &e) in order.iter().enumerate() {
            p[e] = d;
        }
        p
    };
    let mut closing = vec![Vec::new(); ne];
    let mut base = QRational::one();
    for (t, v) in graph.vertices.iter().enumerate() {
        let last = v
            .slots
            .iter()
            .filter_map(|s| match s {
                crate::toricgeom::Slot::Internal { edge, .. } => Some(position[*edge]),
                _ => None,
            })
            .max();
        match last {
            Some(d) => closing[d].push(t),
            None => base = &base * &*vertex(&Partition::empty(), &Partition::empty(), &Partition::empty()),
        }
    }
    let candidates: Vec<Vec<Partition>> = (0..ne)
        .map(|e| {
            let mut unit = vec![0; vars.len()];
            let mut k = 0;
            loop {
                unit[edge_var[e]] = k + 1;
                if !trunc.keeps(&unit) {
                    break;
                }
                k += 1;
                assert!(k < 64, "truncation does not bound edge {e}");
            }
            enumerate(k)
        })
        .collect();
    let plan = Plan { graph, edge_var, trunc, nvars: vars.len(), order, closing, candidates };
    if ne == 0 {
        out.add_term(vec![0; vars.len()], base);
        return out;
    }
    let first = plan.order[0];
    let merged: Buckets = plan.candidates[first]
        .par_iter()
        .map(|lam| {
            let mut buckets = Buckets::new();
            let mut exps = vec![0; plan.nvars];
            exps[plan.edge_var[first]] = lam.size();
            if plan.trunc.keeps(&exps) {
                let mut assignment = vec![Partition::empty(); ne];
                assignment[first] = lam.clone();
                let mut acc = &base * &edge_weight(lam, graph.edges[first].framing);
                for &t in &plan.closing[0] {
                    let [a, b, c] = graph.vertex_arguments(t, &assignment);
                    acc = &acc * &*vertex(&a, &b, &c);
                }
                plan.dfs(1, &mut assignment, &mut exps, acc, &mut buckets);
            }
            buckets
        })
        .reduce(Buckets::new, |mut a, b| {
            for (k, mut v) in b {
                a.entry(k).or_default().append(&mut v);
            }
            a
        });
    let summed: Vec<(Vec<u32>, QRational)> =
        merged.into_par_iter().map(|(e, cs)| (e, QRational::sum(&cs))).collect();
    for (e, c) in summed {
        out.add_term(e, c);
    }
    out
}

#[derive(Clone, Debug)]
pub struct PartitionFunction {
    pub graph: ToricGraph,
    pub vars: Vec<String>,
    pub edge_var: Vec<usize>,
    /// The curve class `l_X` carried by each variable.
    pub var_class: Vec<Vec<i64>>,
    pub series: QSeries,
}

/// One variable per internal edge, or per curve class with `by_class`.
pub fn variables(graph: &ToricGraph, by_class: bool) -> (Vec<String>, Vec<usize>, Vec<Vec<i64>>) {
    let fan = &graph.fan;
    let mut names = Vec::new();
    let mut edge_var = Vec::new();
    let mut classes: Vec<Vec<i64>> = Vec::new();
    for e in &graph.edges {
        let slot = if by_class { classes.iter().position(|c| *c == e.class.l) } else { None };
        match slot {
            Some(v) => edge_var.push(v),
            None => {
                edge_var.push(classes.len());
                classes.push(e.class.l.clone());
                names.push(None);
            }
        }
    }
    for (e, &v) in graph.edges.iter().zip(&edge_var) {
        if let Some((name, _)) = fan.edge_names.iter().find(|(_, c)| crate::toricgeom::edge(c[0], c[1]) == e.cone) {
            if names[v].as_ref().is_none_or(|n: &String| name < n) {
                names[v] = Some(name.clone());
            }
        }
    }
    let names = names
        .into_iter()
        .enumerate()
        .map(|(v, n)| {
            n.unwrap_or_else(|| {
                if by_class {
                    format!("Q{}", v + 1)
                } else {
                    let c = graph.edges[edge_var.iter().position(|&x| x == v).unwrap()].cone;
                    format!("Q[{},{}]", c[0], c[1])
                }
            })
        })
        .collect();
    (names, edge_var, classes)
}

/// `Z_X` with total degree `≤ cap` in its variables.
pub fn z_fan(fan: &Fan, cap: u32, by_class: bool) -> Result<PartitionFunction> {
    let graph = ToricGraph::build(fan)?;
    Ok(z_from_graph(graph, cap, by_class))
}

pub fn z_from_graph(graph: ToricGraph, cap: u32, by_class: bool) -> PartitionFunction {
    let (vars, edge_var, var_class) = variables(&graph, by_class);
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let series = z_graph(&graph, &names, &edge_var, &Truncation::total(vars.len(), cap));
    PartitionFunction { graph, vars, edge_var, var_class, series }
}

/// A height function `h` on the rays with `h·l(C_e) ≥ 1` for every interior
/// edge, so `Σ_e d_e ≤ h·β` whenever `Σ_e d_e [C_e] = β`.
pub fn positive_heights(fan: &Fan) -> Result<Vec<i64>> {
    let ls: Vec<Vec<i64>> =
        fan.interior_edges().into_iter().map(|e| fan.curve_class(e).map(|c| c.l)).collect::<Result<_>>()?;
    let ok = |h: &[i64]| ls.iter().all(|l| l.iter().zip(h).map(|(a, b)| a * b).sum::<i64>() >= 1);
    let norm: Vec<i64> = fan.rays.iter().map(|r| r[0] * r[0] + r[1] * r[1]).collect();
    if ok(&norm) {
        return Ok(norm);
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for round in 0..400_000u64 {
        let h: Vec<i64> = if round % 2 == 0 {
            norm.iter().map(|n| 4 * n + rng.gen_range(0..4)).collect()
        } else {
            let k = 4 + (round / 4000) as i64;
            (0..norm.len()).map(|_| rng.gen_range(0..k)).collect()
        };
        if ok(&h) {
            return Ok(h);
        }
    }
    Err(Error::Internal("no positive height function found; is the triangulation regular?".into()))
}

/// Whether every multidegree of class `beta` is kept by the truncation.
fn class_is_complete(var_class: &[Vec<i64>], weights: &[i64], beta: &[i64], trunc: &Truncation) -> bool {
    let budget: i64 = weights.iter().zip(beta).map(|(a, b)| a * b).sum::<i64>();
    let wv: Vec<i64> = var_class.iter().map(|l| l.iter().zip(weights).map(|(a, b)| a * b).sum()).collect();
    fn rec(v: usize, budget: i64, rest: &mut Vec<i64>, d: &mut Vec<u32>, vc: &[Vec<i64>], wv: &[i64], tr: &Truncation) -> bool {
        if v == vc.len() {
            return rest.iter().any(|&x| x != 0) || tr.keeps(d);
        }
        let mut k = 0;
        loop {
            if !rec(v + 1, budget - k * wv[v], rest, d, vc, wv, tr) {
                return false;
            }
            if budget - (k + 1) * wv[v] < 0 {
                break;
            }
            k += 1;
            d[v] += 1;
            for (r, l) in rest.iter_mut().zip(&vc[v]) {
                *r -= l;
            }
        }
        for (r, l) in rest.iter_mut().zip(&vc[v]) {
            *r += k * l;
        }
        d[v] -= k as u32;
        true
    }
    let mut rest = beta.to_vec();
    let mut d = vec![0; var_class.len()];
    rec(0, budget, &mut rest, &mut d, var_class, &wv, trunc)
}

/// Every exponent vector kept by a truncation that bounds all variables.
fn kept_exponents(trunc: &Truncation, n: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, d: &mut Vec<u32>, trunc: &Truncation, out: &mut Vec<Vec<u32>>) {
        if k == d.len() {
            out.push(d.clone());
            return;
        }
        while trunc.keeps(d) {
            rec(k + 1, d, trunc, out);
            d[k] += 1;
        }
        d[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, &mut vec![0; n], trunc, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub coords: Vec<i64>,
    pub l: Vec<i64>,
    pub free_energy: QRational,
    /// `N_{g,β}` for `g = 0..=genus_max`.
    pub invariants: Vec<RBig>,
}

#[derive(Clone, Debug)]
pub struct GwTable {
    pub genus_max: u32,
    pub basis: LatticeBasis,
    /// Complete classes keyed by their coordinates.
    pub classes: BTreeMap<Vec<i64>, ClassEntry>,
}

impl GwTable {
    pub fn by_l(&self, l: &[i64]) -> Option<&ClassEntry> {
        self.classes.values().find(|c| c.l == l)
    }

    pub fn get(&self, g: u32, coords: &[i64]) -> Option<&RBig> {
        self.classes.get(coords).and_then(|c| c.invariants.get(g as usize))
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("class\tgenus\tN\n");
        for (coords, c) in &self.classes {
            let cs: Vec<String> = coords.iter().map(i64::to_string).collect();
            for (g, n) in c.invariants.iter().enumerate() {
                s.push_str(&format!("{}\t{}\t{}\n", cs.join(","), g, n));
            }
        }
        s
    }
}

/// `N_{g} = (−1)^{g−1}[u^{2g−2}]F(e^{u/2})` for `g ≤ genus_max`; odd powers
/// must vanish.
pub fn genus_expansion(f: &QRational, genus_max: u32, label: &str) -> Result<Vec<RBig>> {
    let order = 2 * genus_max as i64 - 2;
    let e = expand_at_unity(f, order)?;
    for (&k, c) in e.terms() {
        if k < -2 {
            return Err(Error::Internal(format!("pole of order {} at q = 1 in class {label}", -k)));
        }
        if k % 2 != 0 && !c.is_zero() {
            return Err(Error::OddPower { power: k, class: label.into() });
        }
    }
    Ok((0..=genus_max as i64)
        .map(|g| {
            let c = e.coeff(2 * g - 2);
            if g % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .collect())
}

/// Free energies and invariants of every class whose multidegrees all lie
/// below the truncation of `pf`.
pub fn gw_extract(pf: &PartitionFunction, genus_max: u32) -> Result<GwTable> {
    let fan = &pf.graph.fan;
    let (basis, _) = homology_basis(fan);
    let log = pf.series.log()?;
    let mut grouped: BTreeMap<Vec<i64>, Vec<QRational>> = BTreeMap::new();
    for (e, c) in log.terms() {
        let mut l = vec![0; fan.rays.len()];
        for (k, &d) in e.iter().enumerate() {
            for (x, y) in l.iter_mut().zip(&pf.var_class[k]) {
                *x += d as i64 * y;
            }
        }
        grouped.entry(l).or_default().push(c.clone());
    }
    // Classes reached below the cap whose free energy vanishes identically.
    for d in kept_exponents(pf.series.truncation(), pf.vars.len()) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let mut l = vec![0; fan.rays.len()];
        for (k, &x) in d.iter().enumerate() {
            for (a, b) in l.iter_mut().zip(&pf.var_class[k]) {
                *a += x as i64 * b;
            }
        }
        grouped.entry(l).or_default();
    }
    let heights = if grouped.is_empty() { Vec::new() } else { positive_heights(fan)? };
    let complete: Vec<(Vec<i64>, Vec<QRational>)> = grouped
        .into_iter()
        .filter(|(l, _)| class_is_complete(&pf.var_class, &heights, l, pf.series.truncation()))
        .collect();
    let entries: Vec<Result<ClassEntry>> = complete
        .into_par_iter()
        .map(|(l, cs)| {
            let coords = basis.coordinates(&l).ok_or_else(|| Error::Internal(format!("class {l:?} outside lattice")))?;
            let f = QRational::sum(&cs);
            let label = format!("{coords:?}");
            let invariants = genus_expansion(&f, genus_max, &label)?;
            Ok(ClassEntry { coords, l, free_energy: f, invariants })
        })
        .collect();
    let mut classes = BTreeMap::new();
    for e in entries {
        let e = e?;
        classes.insert(e.coords.clone(), e);
    }
    Ok(GwTable { genus_max, basis, classes })
}

/// The conifold invariants `N_{g,d}` from `−q^d/(d(1−q^d)²)`.
pub fn conifold_invariants(d: u32, genus_max: u32) -> Result<Vec<RBig>> {
    genus_expansion(&conifold_log_coeff(d), genus_max, &format!("conifold degree {d}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWitness {
    pub monomial: Vec<(String, u32)>,
    pub lhs: QRational,
    pub rhs: QRational,
}

#[derive(Clone, Debug)]
pub struct GlobalFlopReport {
    pub old_edge: Edge,
    pub new_edge: Edge,
    pub compared_terms: usize,
    /// Monomials of `Z′_X` violating `d0 ≤ Σ_adjacent d_i` with nonzero coefficient.
    pub vanishing_violations: Vec<Vec<u32>>,
    pub witness: Option<SeriesWitness>,
}

impl GlobalFlopReport {
    pub fn holds(&self) -> bool {
        self.vanishing_violations.is_empty() && self.witness.is_none()
    }
}

/// `Z′ = Z / Z|_{only e0}` with `d0 ≤ cap` and the other edges of total degree `≤ cap`.
fn normalized_around(graph: &ToricGraph, e0: usize, cap: u32) -> Result<(Vec<String>, QSeries)> {
    let (vars, edge_var, _) = variables(graph, false);
    let n = vars.len();
    let others: Vec<u32> = (0..n).map(|v| (v != edge_var[e0]) as u32).collect();
    let own: Vec<u32> = (0..n).map(|v| (v == edge_var[e0]) as u32).collect();
    let trunc = Truncation::weighted(others, cap).and(own, cap);
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let z = z_graph(graph, &names, &edge_var, &trunc);
    let v0 = edge_var[e0];
    let only = z.filter(|e| e.iter().enumerate().all(|(k, &d)| k == v0 || d == 0));
    Ok((vars, z.div(&only)?))
}

/// Checks that `Z′_X` re-expanded under `Q0 = (Q0+)^{−1}`, `Qi = Q0+·Qi+`
/// equals `Z′_{X+}` below the cap.
pub fn check_flop_global(fan: &Fan, e: Edge, cap: u32) -> Result<GlobalFlopReport> {
    let flop = fan.flop(e)?;
    let gx = ToricGraph::build(fan)?;
    let gp = ToricGraph::build(&flop.fan)?;
    let x0 = gx.edge_index(flop.old_edge).ok_or(Error::NotInterior(flop.old_edge))?;
    let p0 = gp.edge_index(flop.new_edge).ok_or(Error::NotInterior(flop.new_edge))?;
    // Edge k of X maps to edge target[k] of X+ with the Q0+ exponent shift.
    let mut target = vec![0; gx.edges.len()];
    let mut adjacent = vec![false; gx.edges.len()];
    for (old, image) in &flop.class_map {
        let k = gx.edge_index(*old).expect("interior edge");
        let mut l = vec![0; fan.rays.len()];
        for (c, m) in image {
            let j = gp.edge_index(*c).ok_or(Error::NotInterior(*c))?;
            for (x, y) in l.iter_mut().zip(&gp.edges[j].class.l) {
                *x += m * y;
            }
        }
        if l != gx.edges[k].class.l {
            return Err(Error::Internal(format!("class map fails on edge {old:?}")));
        }
        target[k] = if k == x0 { p0 } else { gp.edge_index(*old).expect("surviving edge") };
        adjacent[k] = image.len() == 2;
    }
    let (_, zx) = normalized_around(&gx, x0, cap)?;
    let (pvars, zp) = normalized_around(&gp, p0, cap)?;
    let mut vanishing_violations = Vec::new();
    let mut mapped = zp.empty_like();
    for (d, c) in zx.terms() {
        let adj: u32 = (0..d.len()).filter(|&k| adjacent[k]).map(|k| d[k]).sum();
        if d[x0] > adj {
            vanishing_violations.push(d.clone());
            continue;
        }
        let mut p = vec![0; d.len()];
        for k in 0..d.len() {
            if k != x0 {
                p[target[k]] = d[k];
            }
        }
        p[p0] = adj - d[x0];
        mapped.add_term(p, c.clone());
    }
    let diff = mapped.sub(&zp);
    let witness = diff.terms().iter().next().map(|(e, _)| SeriesWitness {
        monomial: pvars.iter().cloned().zip(e.iter().copied()).filter(|(_, d)| *d > 0).collect(),
        lhs: mapped.coeff(e),
        rhs: zp.coeff(e),
    });
    Ok(GlobalFlopReport {
        old_edge: flop.old_edge,
        new_edge: flop.new_edge,
        compared_terms: zp.len().max(mapped.len()),
        vanishing_violations,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMismatch {
    pub class: Vec<i64>,
    pub genus: u32,
    pub expected: RBig,
    pub found: RBig,
}

#[derive(Clone, Debug)]
pub struct BlowupReport {
    /// The exceptional curve's class in `K_Ŝ`.
    pub exceptional: Vec<i64>,
    pub negative_checked: Vec<Vec<i64>>,
    pub negative_failures: Vec<Vec<i64>>,
    /// `(class in K_Ŝ, class in K_S)` pairs compared.
    pub orthogonal_compared: Vec<(Vec<i64>, Vec<i64>)>,
    pub orthogonal_failures: Vec<ClassMismatch>,
    pub exceptional_degrees: Vec<u32>,
    pub exceptional_failures: Vec<ClassMismatch>,
    pub original: GwTable,
    pub blown_up: GwTable,
}

impl BlowupReport {
    pub fn holds(&self) -> bool {
        self.negative_failures.is_empty() && self.orthogonal_failures.is_empty() && self.exceptional_failures.is_empty()
    }
}

fn compare_invariants(class: &[i64], expected: &[RBig], found: &[RBig], out: &mut Vec<ClassMismatch>) {
    for (g, (a, b)) in expected.iter().zip(found).enumerate() {
        if a != b {
            out.push(ClassMismatch { class: class.to_vec(), genus: g as u32, expected: a.clone(), found: b.clone() });
        }
    }
}

/// Compares the invariants of `K_S` with those of `K_Ŝ`, `Ŝ` the blowup of
/// `S` at the fixed point of the cone spanned by rays `i`, `j`.
pub fn check_blowup(surface: &SurfaceFan, cone: (usize, usize), cap: u32, genus_max: u32) -> Result<BlowupReport> {
    let hat_surface = surface.blowup(cone.0, cone.1)?;
    let ks = ks_fan(surface)?;
    let hat = ks_fan(&hat_surface)?;
    let new_ray = *hat_surface.rays.last().expect("blowup adds a ray");
    let ni = hat.ray_index(new_ray).expect("new ray present");
    let exceptional = hat.curve_class([0, ni])?.l;
    let original = gw_extract(&z_fan(&ks, cap, false)?, genus_max)?;
    let blown_up = gw_extract(&z_fan(&hat, cap, false)?, genus_max)?;
    let to_ks: Vec<Option<usize>> = hat.rays.iter().map(|&r| ks.ray_index(r)).collect();
    let mut rep = BlowupReport {
        exceptional: exceptional.clone(),
        negative_checked: Vec::new(),
        negative_failures: Vec::new(),
        orthogonal_compared: Vec::new(),
        orthogonal_failures: Vec::new(),
        exceptional_degrees: Vec::new(),
        exceptional_failures: Vec::new(),
        original: original.clone(),
        blown_up: blown_up.clone(),
    };
    for c in blown_up.classes.values() {
        let dot = c.l[ni];
        let multiple = (1..=64).find(|&d| c.l.iter().zip(&exceptional).all(|(a, b)| *a == d * b));
        if let Some(d) = multiple {
            let want = conifold_invariants(d as u32, genus_max)?;
            rep.exceptional_degrees.push(d as u32);
            compare_invariants(&c.coords, &want, &c.invariants, &mut rep.exceptional_failures);
        } else if dot < 0 {
            rep.negative_checked.push(c.coords.clone());
            if !c.free_energy.is_zero() {
                rep.negative_failures.push(c.coords.clone());
            }
        } else if dot == 0 {
            let mut l = vec![0; ks.rays.len()];
            for (k, &x) in c.l.iter().enumerate() {
                if let Some(j) = to_ks[k] {
                    l[j] = x;
                }
            }
            if let Some(o) = original.by_l(&l) {
                rep.orthogonal_compared.push((c.coords.clone(), o.coords.clone()));
                compare_invariants(&o.coords, &o.invariants, &c.invariants, &mut rep.orthogonal_failures);
            }
        }
    }
    rep.exceptional_degrees.sort();
    Ok(rep)
}

/// Half-integers rendered exactly, for reports.
pub fn rational(n: i64, d: i64) -> RBig {
    RBig::from_parts_signed(IBig::from(n), IBig::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localflop::conifold_factor;

    fn conifold() -> Fan {
        Fan::new(vec![[0, 0], [1, 0], [0, 1], [1, 1]], vec![[0, 1, 2], [1, 2, 3]])
    }

    fn local_p2() -> Fan {
        Fan::new(vec![[0, 0], [1, 0], [0, 1], [-1, -1]], vec![[0, 1, 2], [0, 2, 3], [0, 3, 1]])
    }

    #[test]
    fn conifold_matches_closed_form() {
        let pf = z_fan(&conifold(), 3, false).unwrap();
        let want = conifold_factor(3);
        assert_eq!(pf.series.terms(), want.terms());
    }

    #[test]
    fn c3_is_trivial() {
        let c3 = Fan::new(vec![[0, 0], [1, 0], [0, 1]], vec![[0, 1, 2]]);
        let pf = z_fan(&c3, 4, false).unwrap();
        assert_eq!(pf.series.len(), 1);
        assert!(pf.series.constant_term().is_one());
        assert!(gw_extract(&pf, 2).unwrap().classes.is_empty());
    }

    #[test]
    fn conifold_invariants_closed_form() {
        let t = gw_extract(&z_fan(&conifold(), 3, false).unwrap(), 2).unwrap();
        for d in 1..=3i64 {
            assert_eq!(t.get(0, &[d]).unwrap(), &rational(1, d * d * d));
            assert_eq!(t.get(1, &[d]).unwrap(), &rational(1, 12 * d));
            assert_eq!(t.get(2, &[d]).unwrap(), &rational(d, 240));
        }
    }

    #[test]
    fn local_p2_genus_zero() {
        let t = gw_extract(&z_fan(&local_p2(), 2, true).unwrap(), 1).unwrap();
        assert_eq!(t.get(0, &[1]).unwrap(), &rational(3, 1));
        assert_eq!(t.get(0, &[2]).unwrap(), &rational(-45, 8));
    }

    #[test]
    fn direction_reversal() {
        for fan in [conifold(), local_p2()] {
            let g = ToricGraph::build(&fan).unwrap();
            let a = z_from_graph(g.clone(), 2, false);
            let b = z_from_graph(g.reversed(), 2, false);
            assert_eq!(a.series, b.series);
        }
    }

    #[test]
    fn completeness() {
        let pf = z_fan(&local_p2(), 2, false).unwrap();
        let h = positive_heights(&pf.graph.fan).unwrap();
        let l = |d: i64| vec![-3 * d, d, d, d];
        assert!(class_is_complete(&pf.var_class, &h, &l(2), pf.series.truncation()));
        assert!(!class_is_complete(&pf.var_class, &h, &l(3), pf.series.truncation()));
    }

    #[test]
    fn conifold_flop_is_trivial() {
        let r = check_flop_global(&conifold(), [1, 2], 3).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
