//! Fans of toric Calabi–Yau threefolds, given by their slice at height one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [i64; 2];
/// A 2-cone as a sorted pair of ray indices.
pub type Edge = [usize; 2];

pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// `det(ω_a, ω_b, ω_c)` for `ω = (v, 1)`: twice the signed area of the slice triangle.
pub fn orient(a: Point, b: Point, c: Point) -> i64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_names: BTreeMap<String, Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: &'static str,
    pub cone: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: &'static str, cone: Vec<usize>, message: String) {
        self.violations.push(Violation { kind, cone, message });
    }
}

/// The intersection numbers `l_X(C) = (D_ρ · C)_ρ` of a torus-invariant curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveClass {
    pub edge: Edge,
    pub l: Vec<i64>,
}

impl CurveClass {
    /// Normal bundle degrees `(D_a·C, D_b·C)` at the edge rays `[a, b]`.
    pub fn normal_degrees(&self) -> (i64, i64) {
        (self.l[self.edge[0]], self.l[self.edge[1]])
    }

    pub fn is_conifold(&self) -> bool {
        self.normal_degrees() == (-1, -1)
    }
}

fn segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    let on = |a: Point, b: Point, c: Point| {
        orient(a, b, c) == 0
            && c[0] >= a[0].min(b[0])
            && c[0] <= a[0].max(b[0])
            && c[1] >= a[1].min(b[1])
            && c[1] <= a[1].max(b[1])
    };
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    on(q1, q2, p1) || on(q1, q2, p2) || on(p1, p2, q1) || on(p1, p2, q2)
}

impl Fan {
    pub fn new(rays: Vec<Point>, triangles: Vec<[usize; 3]>) -> Self {
        Fan { rays, triangles, edge_names: BTreeMap::new() }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("fan JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan serializes")
    }

    pub fn ray_index(&self, p: Point) -> Option<usize> {
        self.rays.iter().position(|&r| r == p)
    }

    /// Every 2-cone with the triangles containing it.
    pub fn two_cones(&self) -> BTreeMap<Edge, Vec<usize>> {
        let mut m: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                m.entry(edge(tri[i], tri[j])).or_default().push(t);
            }
        }
        m
    }

    /// 2-cones shared by two triangles, sorted.
    pub fn interior_edges(&self) -> Vec<Edge> {
        self.two_cones().into_iter().filter(|(_, t)| t.len() == 2).map(|(e, _)| e).collect()
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.two_cones().into_iter().filter(|(_, t)| t.len() == 1).map(|(e, _)| e).collect()
    }

    /// The triangle's vertices in counterclockwise order.
    pub fn ccw(&self, t: usize) -> [usize; 3] {
        let [a, b, c] = self.triangles[t];
        if orient(self.rays[a], self.rays[b], self.rays[c]) > 0 {
            [a, b, c]
        } else {
            [a, c, b]
        }
    }

    fn third(&self, t: usize, e: Edge) -> usize {
        *self.triangles[t].iter().find(|&&v| v != e[0] && v != e[1]).expect("triangle contains edge")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.rays.len();
        let mut seen = BTreeMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            if let Some(j) = seen.insert(*r, i) {
                rep.push("duplicate-ray", vec![j, i], format!("rays {j} and {i} coincide at {r:?}"));
            }
        }
        if self.triangles.is_empty() {
            rep.push("empty", vec![], "fan has no 3-cones".into());
            return rep;
        }
        let mut tri_set = BTreeSet::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= n) {
                rep.push("bad-index", tri.to_vec(), format!("triangle {t} references a missing ray"));
                continue;
            }
            let mut s = *tri;
            s.sort();
            if s[0] == s[1] || s[1] == s[2] {
                rep.push("degenerate", tri.to_vec(), format!("triangle {t} repeats a ray"));
                continue;
            }
            if !tri_set.insert(s) {
                rep.push("duplicate-cone", tri.to_vec(), format!("triangle {t} listed twice"));
            }
            let d = orient(self.rays[tri[0]], self.rays[tri[1]], self.rays[tri[2]]);
            if d.abs() != 1 {
                rep.push("not-unimodular", tri.to_vec(), format!("|det| = {} for triangle {t}", d.abs()));
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        let cones = self.two_cones();
        for (e, ts) in &cones {
            if ts.len() > 2 {
                rep.push("overlap", e.to_vec(), format!("2-cone shared by {} triangles", ts.len()));
            } else if ts.len() == 2 {
                let (a, b) = (self.rays[e[0]], self.rays[e[1]]);
                let s1 = orient(a, b, self.rays[self.third(ts[0], *e)]);
                let s2 = orient(a, b, self.rays[self.third(ts[1], *e)]);
                if s1.signum() == s2.signum() {
                    rep.push("overlap", e.to_vec(), "triangles on the same side of a shared 2-cone".into());
                }
            }
        }
        let used: BTreeSet<usize> = self.triangles.iter().flatten().copied().collect();
        for i in 0..n {
            if !used.contains(&i) {
                rep.push("unused-ray", vec![i], format!("ray {i} lies in no 3-cone"));
            }
        }
        let euler = used.len() as i64 - cones.len() as i64 + self.triangles.len() as i64;
        if euler != 1 {
            rep.push("not-simply-connected", vec![], format!("Euler characteristic {euler}, expected 1"));
        }
        // The boundary must be one simple closed polygon.
        let boundary: Vec<Edge> = cones.iter().filter(|(_, t)| t.len() == 1).map(|(e, _)| *e).collect();
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &boundary {
            *deg.entry(e[0]).or_default() += 1;
            *deg.entry(e[1]).or_default() += 1;
        }
        for (v, d) in &deg {
            if *d != 2 {
                rep.push("boundary-not-simple", vec![*v], format!("ray {v} meets {d} boundary 2-cones"));
            }
        }
        if rep.is_valid() && !boundary.is_empty() {
            let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for e in &boundary {
                adj.entry(e[0]).or_default().push(e[1]);
                adj.entry(e[1]).or_default().push(e[0]);
            }
            let start = boundary[0][0];
            let (mut prev, mut cur, mut len) = (start, adj[&start][0], 1);
            while cur != start {
                let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            if len != boundary.len() {
                rep.push("boundary-not-simple", vec![], "boundary splits into several cycles".into());
            }
            for (i, e) in boundary.iter().enumerate() {
                for f in &boundary[i + 1..] {
                    if e.iter().any(|v| f.contains(v)) {
                        continue;
                    }
                    let (p, q) = ((self.rays[e[0]], self.rays[e[1]]), (self.rays[f[0]], self.rays[f[1]]));
                    if segments_cross(p.0, p.1, q.0, q.1) {
                        rep.push("boundary-not-simple", vec![e[0], e[1], f[0], f[1]], "boundary self-intersects".into());
                    }
                }
            }
        }
        rep
    }

    pub fn check(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = r.violations.iter().map(|v| format!("{}: {}", v.kind, v.message)).collect();
            Err(Error::InvalidFan(msgs.join("; ")))
        }
    }

    /// The two triangles on either side of an interior 2-cone.
    pub fn adjacent_triangles(&self, e: Edge) -> Result<(usize, usize)> {
        let e = edge(e[0], e[1]);
        match self.two_cones().get(&e).map(Vec::as_slice) {
            Some([a, b]) => Ok((*a, *b)),
            _ => Err(Error::NotInterior(e)),
        }
    }

    /// Solves `A·l = 0` with `+1` at the two opposite rays.
    pub fn curve_class(&self, e: Edge) -> Result<CurveClass> {
        let e = edge(e[0], e[1]);
        let (s, t) = self.adjacent_triangles(e)?;
        let (c, d) = (self.third(s, e), self.third(t, e));
        let (va, vb, vc, vd) = (self.rays[e[0]], self.rays[e[1]], self.rays[c], self.rays[d]);
        // x·ω_a + y·ω_b + ω_c + ω_d = 0 with x + y = −2.
        let rhs = [2 * vb[0] - vc[0] - vd[0], 2 * vb[1] - vc[1] - vd[1]];
        let dir = [va[0] - vb[0], va[1] - vb[1]];
        let k = if dir[0] != 0 { 0 } else { 1 };
        if rhs[k] % dir[k] != 0 {
            return Err(Error::Internal(format!("non-integral curve class at {e:?}")));
        }
        let x = rhs[k] / dir[k];
        if x * dir[1 - k] != rhs[1 - k] {
            return Err(Error::Internal(format!("inconsistent curve class at {e:?}")));
        }
        let mut l = vec![0; self.rays.len()];
        l[e[0]] = x;
        l[e[1]] = -2 - x;
        l[c] += 1;
        l[d] += 1;
        Ok(CurveClass { edge: e, l })
    }

    /// `n(e) = (D_{ρ1}·C − D_{ρ2}·C)/2` for the edge traversed from triangle
    /// `from` into its neighbour; `ρ1` is the ray on the right of travel.
    pub fn framing(&self, e: Edge, from: usize) -> Result<i64> {
        let class = self.curve_class(e)?;
        let [a, b, c] = self.ccw(from);
        // Walking the source triangle counterclockwise along the shared side
        // P → Q, the target lies to the right and ρ1 = P.
        let (p, q) = [(a, b), (b, c), (c, a)]
            .into_iter()
            .find(|&(p, q)| edge(p, q) == class.edge)
            .ok_or(Error::NotInterior(e))?;
        let diff = class.l[p] - class.l[q];
        if diff % 2 != 0 {
            return Err(Error::Internal(format!("odd framing numerator at {e:?}")));
        }
        Ok(diff / 2)
    }

    /// Resolves an edge by name, or by `a,b` / `a-b` ray indices.
    pub fn edge_by_name(&self, name: &str) -> Result<Edge> {
        if let Some(e) = self.edge_names.get(name) {
            return Ok(edge(e[0], e[1]));
        }
        let parts: Vec<&str> = name.split([',', '-']).map(str::trim).collect();
        if let [a, b] = parts.as_slice() {
            if let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) {
                let e = edge(a, b);
                if self.two_cones().contains_key(&e) {
                    return Ok(e);
                }
            }
        }
        let mut valid: Vec<String> = self.edge_names.keys().cloned().collect();
        valid.extend(self.interior_edges().iter().map(|e| format!("{},{}", e[0], e[1])));
        Err(Error::UnknownEdge { name: name.into(), valid })
    }

    /// Display name of an edge: its given name if any, else `a,b`.
    pub fn edge_label(&self, e: Edge) -> String {
        self.edge_names
            .iter()
            .find(|(_, v)| edge(v[0], v[1]) == e)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| format!("{},{}", e[0], e[1]))
    }
}

/// Outcome of flopping a (−1,−1)-curve.
#[derive(Clone, Debug)]
pub struct Flop {
    pub fan: Fan,
    /// The flopped 2-cone `τ0` and its replacement `τ0+`.
    pub old_edge: Edge,
    pub new_edge: Edge,
    /// `φ_*[C_e]` as integer combinations of classes of `X+`.
    pub class_map: Vec<(Edge, Vec<(Edge, i64)>)>,
    /// `(edge, n(e), n(e+))` for the sides of the quadrilateral, each directed
    /// away from it.
    pub framing_shifts: Vec<(Edge, i64, i64)>,
}

impl Fan {
    pub fn flop(&self, e: Edge) -> Result<Flop> {
        let e = edge(e[0], e[1]);
        let class = self.curve_class(e)?;
        let (a, b) = class.normal_degrees();
        if (a, b) != (-1, -1) {
            return Err(Error::FlopUndefined { edge: e, a, b });
        }
        let (s, t) = self.adjacent_triangles(e)?;
        let (c, d) = (self.third(s, e), self.third(t, e));
        let mut triangles = self.triangles.clone();
        triangles[s] = [e[0], c, d];
        triangles[t] = [e[1], c, d];
        let mut names = self.edge_names.clone();
        for v in names.values_mut() {
            if edge(v[0], v[1]) == e {
                *v = edge(c, d);
            }
        }
        let fan = Fan { rays: self.rays.clone(), triangles, edge_names: names };
        let new_edge = edge(c, d);
        let sides = [edge(e[0], c), edge(c, e[1]), edge(e[1], d), edge(d, e[0])];
        let mut class_map = Vec::new();
        for old in self.interior_edges() {
            let image = if old == e {
                vec![(new_edge, -1)]
            } else if sides.contains(&old) {
                vec![(old, 1), (new_edge, 1)]
            } else {
                vec![(old, 1)]
            };
            class_map.push((old, image));
        }
        let mut framing_shifts = Vec::new();
        let inner_tri = |f: &Fan, side: Edge| -> Option<usize> {
            let ts = f.two_cones().get(&side)?.clone();
            ts.into_iter().find(|&t| {
                let tri = f.triangles[t];
                tri.contains(&side[0]) && tri.contains(&side[1]) && tri.iter().all(|v| [e[0], e[1], c, d].contains(v))
            })
        };
        for side in sides {
            if self.two_cones().get(&side).is_none_or(|v| v.len() != 2) {
                continue;
            }
            let (Some(t0), Some(t1)) = (inner_tri(self, side), inner_tri(&fan, side)) else { continue };
            framing_shifts.push((side, self.framing(side, t0)?, fan.framing(side, t1)?));
        }
        Ok(Flop { fan, old_edge: e, new_edge, class_map, framing_shifts })
    }
}

/// A complete smooth toric surface, given by its rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFan {
    pub rays: Vec<Point>,
}

fn angle_cmp(a: Point, b: Point) -> std::cmp::Ordering {
    let half = |p: Point| if p[1] > 0 || (p[1] == 0 && p[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

impl SurfaceFan {
    pub fn new(rays: Vec<Point>) -> Self {
        SurfaceFan { rays }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("surface fan JSON: {e}")))
    }

    /// Indices of the rays in counterclockwise order.
    pub fn ccw_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rays.len()).collect();
        idx.sort_by(|&i, &j| angle_cmp(self.rays[i], self.rays[j]));
        idx
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rays.len();
        if n < 3 {
            return Err(Error::InvalidSurface("a complete fan needs at least three rays".into()));
        }
        if self.rays.contains(&[0, 0]) {
            return Err(Error::InvalidSurface("zero ray".into()));
        }
        let ord = self.ccw_order();
        for k in 0..n {
            let (a, b) = (self.rays[ord[k]], self.rays[ord[(k + 1) % n]]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det != 1 {
                return Err(Error::InvalidSurface(format!(
                    "consecutive rays {a:?}, {b:?} have det {det}; the fan must be complete and smooth"
                )));
            }
        }
        Ok(())
    }

    /// Subdivides the cone spanned by rays `i` and `j` with `v_i + v_j`.
    pub fn blowup(&self, i: usize, j: usize) -> Result<SurfaceFan> {
        self.validate()?;
        let n = self.rays.len();
        if i >= n || j >= n {
            return Err(Error::InvalidSurface(format!("cone ({i},{j}) references a missing ray")));
        }
        let ord = self.ccw_order();
        let adjacent = (0..n).any(|k| {
            let (a, b) = (ord[k], ord[(k + 1) % n]);
            (a, b) == (i, j) || (a, b) == (j, i)
        });
        if !adjacent {
            return Err(Error::InvalidSurface(format!("rays {i} and {j} do not span a 2-cone")));
        }
        let mut rays = self.rays.clone();
        rays.push([self.rays[i][0] + self.rays[j][0], self.rays[i][1] + self.rays[j][1]]);
        Ok(SurfaceFan { rays })
    }
}

/// The fan of `K_S`: the origin plus the surface rays, one triangle per 2-cone.
/// The origin is ray 0 and the surface rays follow in counterclockwise order.
pub fn ks_fan(s: &SurfaceFan) -> Result<Fan> {
    s.validate()?;
    let ord = s.ccw_order();
    let mut rays = vec![[0, 0]];
    rays.extend(ord.iter().map(|&i| s.rays[i]));
    let n = ord.len();
    let triangles = (0..n).map(|k| [0, k + 1, (k + 1) % n + 1]).collect();
    let fan = Fan::new(rays, triangles);
    fan.check()?;
    Ok(fan)
}
