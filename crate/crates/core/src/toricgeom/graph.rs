//! The toric graph dual to a fan's slice.

use serde_json::{json, Value};

use super::fan::{edge, CurveClass, Edge, Fan};
use super::lattice::homology_basis;
use crate::error::Result;
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// An internal edge, outgoing from this vertex or not.
    Internal { edge: usize, outgoing: bool },
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriVertex {
    pub triangle: usize,
    /// Rays of the 3-cone, counterclockwise.
    pub rays: [usize; 3],
    /// Incident edges in counterclockwise order, rotated so that the internal
    /// edge of smallest index comes first.
    pub slots: [Slot; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub cone: Edge,
    pub label: String,
    pub from: usize,
    pub to: usize,
    pub framing: i64,
    pub class: CurveClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub cone: Edge,
    pub vertex: usize,
}

/// Trivalent vertices are indexed like the fan's triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricGraph {
    pub fan: Fan,
    pub vertices: Vec<TriVertex>,
    pub edges: Vec<GraphEdge>,
    pub legs: Vec<Leg>,
}

impl ToricGraph {
    /// Internal edges are directed from the lower triangle index to the higher.
    pub fn build(fan: &Fan) -> Result<Self> {
        fan.check()?;
        let cones = fan.two_cones();
        let mut edges = Vec::new();
        let mut legs = Vec::new();
        let mut index = std::collections::BTreeMap::new();
        for (cone, ts) in &cones {
            if ts.len() == 2 {
                let (from, to) = (ts[0].min(ts[1]), ts[0].max(ts[1]));
                index.insert(*cone, Slot::Internal { edge: edges.len(), outgoing: false });
                edges.push(GraphEdge {
                    cone: *cone,
                    label: fan.edge_label(*cone),
                    from,
                    to,
                    framing: fan.framing(*cone, from)?,
                    class: fan.curve_class(*cone)?,
                });
            } else {
                index.insert(*cone, Slot::Leg(legs.len()));
                legs.push(Leg { cone: *cone, vertex: ts[0] });
            }
        }
        let vertices = (0..fan.triangles.len())
            .map(|t| {
                let rays = fan.ccw(t);
                let mut slots = [(0, 1), (1, 2), (2, 0)].map(|(i, j)| match index[&edge(rays[i], rays[j])] {
                    Slot::Internal { edge: e, .. } => Slot::Internal { edge: e, outgoing: edges[e].from == t },
                    leg => leg,
                });
                let first = (0..3)
                    .filter_map(|k| match slots[k] {
                        Slot::Internal { edge, .. } => Some((edge, k)),
                        Slot::Leg(_) => None,
                    })
                    .min()
                    .map_or(0, |(_, k)| k);
                slots.rotate_left(first);
                TriVertex { triangle: t, rays, slots }
            })
            .collect();
        Ok(ToricGraph { fan: fan.clone(), vertices, edges, legs })
    }

    /// Reverses the direction of edge `e`, flipping its framing.
    pub fn reverse_edge(&mut self, e: usize) {
        let ed = &mut self.edges[e];
        std::mem::swap(&mut ed.from, &mut ed.to);
        ed.framing = -ed.framing;
        for v in &mut self.vertices {
            for s in &mut v.slots {
                if let Slot::Internal { edge, outgoing } = s {
                    if *edge == e {
                        *outgoing = !*outgoing;
                    }
                }
            }
        }
    }

    pub fn reversed(&self) -> Self {
        let mut g = self.clone();
        for e in 0..g.edges.len() {
            g.reverse_edge(e);
        }
        g
    }

    pub fn edge_index(&self, cone: Edge) -> Option<usize> {
        let cone = edge(cone[0], cone[1]);
        self.edges.iter().position(|e| e.cone == cone)
    }

    /// The vertex arguments `(λ1, λ2, λ3)` under an edge assignment: `λ(e)`
    /// on outgoing edges, `λ(e)ᵗ` on incoming ones, `∅` on legs.
    pub fn vertex_arguments(&self, v: usize, assignment: &[Partition]) -> [Partition; 3] {
        self.vertices[v].slots.map(|s| match s {
            Slot::Internal { edge, outgoing: true } => assignment[edge].clone(),
            Slot::Internal { edge, outgoing: false } => assignment[edge].conjugate(),
            Slot::Leg(_) => Partition::empty(),
        })
    }

    pub fn to_json(&self) -> Value {
        let (basis, coords) = homology_basis(&self.fan);
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| {
                let slots: Vec<Value> = v
                    .slots
                    .iter()
                    .map(|s| match s {
                        Slot::Internal { edge, outgoing } => {
                            json!({"edge": edge, "direction": if *outgoing { "out" } else { "in" }})
                        }
                        Slot::Leg(l) => json!({"leg": l}),
                    })
                    .collect();
                json!({"triangle": v.triangle, "rays": v.rays, "slots": slots})
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let c = coords.iter().find(|(k, _)| *k == e.cone).map(|(_, c)| c.clone());
                let (a, b) = e.class.normal_degrees();
                json!({
                    "name": e.label, "cone": e.cone, "from": e.from, "to": e.to,
                    "framing": e.framing, "normal_bundle": [a, b],
                    "l_vector": e.class.l, "class_coordinates": c,
                })
            })
            .collect();
        let legs: Vec<Value> = self.legs.iter().map(|l| json!({"cone": l.cone, "vertex": l.vertex})).collect();
        json!({"vertices": vertices, "edges": edges, "legs": legs, "homology_rank": basis.rank()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conifold() -> Fan {
        Fan::new(vec![[0, 0], [1, 0], [0, 1], [1, 1]], vec![[0, 1, 2], [1, 2, 3]])
    }

    fn local_p2() -> Fan {
        Fan::new(vec![[0, 0], [1, 0], [0, 1], [-1, -1]], vec![[0, 1, 2], [0, 2, 3], [0, 3, 1]])
    }

    #[test]
    fn graph_examples() {
        let g = ToricGraph::build(&conifold()).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len(), g.legs.len()), (2, 1, 4));
        assert_eq!(g.edges[0].framing, 0);
        let g = ToricGraph::build(&local_p2()).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len(), g.legs.len()), (3, 3, 3));
        assert!(g.edges.iter().all(|e| e.framing.abs() == 2));
        let c3 = Fan::new(vec![[0, 0], [1, 0], [0, 1]], vec![[0, 1, 2]]);
        let g = ToricGraph::build(&c3).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len(), g.legs.len()), (1, 0, 3));
    }

    #[test]
    fn reversal_flips_framings_and_slots() {
        let g = ToricGraph::build(&local_p2()).unwrap();
        let r = g.reversed();
        for (a, b) in g.edges.iter().zip(&r.edges) {
            assert_eq!(a.framing, -b.framing);
            assert_eq!((a.from, a.to), (b.to, b.from));
        }
        assert_eq!(r.reversed(), g);
    }

    #[test]
    fn every_internal_edge_appears_twice() {
        let g = ToricGraph::build(&local_p2()).unwrap();
        for e in 0..g.edges.len() {
            let uses: Vec<bool> = g
                .vertices
                .iter()
                .flat_map(|v| v.slots)
                .filter_map(|s| match s {
                    Slot::Internal { edge, outgoing } if edge == e => Some(outgoing),
                    _ => None,
                })
                .collect();
            assert_eq!(uses.len(), 2);
            assert_ne!(uses[0], uses[1]);
        }
    }
}
