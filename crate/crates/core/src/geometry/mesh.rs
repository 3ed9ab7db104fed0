//! Triangulated surfaces of revolution and mesh shortest paths.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use num_traits::Float;

#[derive(Debug, Clone, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
}

/// Latitude-longitude mesh through the given meridian points `(x, ρ)`.
/// Rings with `ρ = 0` collapse to a single pole vertex.
pub fn revolve(rings: &[(f64, f64)], segments: usize) -> Mesh {
    let mut mesh = Mesh::default();
    let mut ring_start = Vec::with_capacity(rings.len());
    for &(x, rho) in rings {
        ring_start.push(mesh.vertices.len() as u32);
        if rho == 0.0 {
            mesh.vertices.push([x, 0.0, 0.0]);
        } else {
            for j in 0..segments {
                let a = 2.0 * PI * j as f64 / segments as f64;
                mesh.vertices
                    .push([x, rho * Float::cos(a), rho * Float::sin(a)]);
            }
        }
    }
    let m = segments as u32;
    for i in 0..rings.len().saturating_sub(1) {
        let (p0, p1) = (rings[i].1 == 0.0, rings[i + 1].1 == 0.0);
        let (s0, s1) = (ring_start[i], ring_start[i + 1]);
        for j in 0..m {
            let jn = (j + 1) % m;
            match (p0, p1) {
                (true, true) => {}
                (true, false) => mesh.triangles.push([s0, s1 + j, s1 + jn]),
                (false, true) => mesh.triangles.push([s0 + j, s1, s0 + jn]),
                (false, false) => {
                    mesh.triangles.push([s0 + j, s1 + j, s1 + jn]);
                    mesh.triangles.push([s0 + j, s1 + jn, s0 + jn]);
                }
            }
        }
    }
    mesh
}

/// Weighted graph on mesh vertices plus `steiner` extra points per edge; every
/// pair of points on different edges of a triangle is joined by a straight segment.
#[derive(Debug, Clone)]
pub struct GeodesicGraph {
    pub points: Vec<[f64; 3]>,
    adjacency: Vec<Vec<(u32, f64)>>,
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    Float::sqrt((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2))
}

impl GeodesicGraph {
    pub fn new(mesh: &Mesh, steiner: usize) -> Self {
        let mut points = mesh.vertices.clone();
        let mut edge_points: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut edge_list = |u: u32, v: u32, points: &mut Vec<[f64; 3]>| -> Vec<u32> {
            let key = (u.min(v), u.max(v));
            let base = *edge_points.entry(key).or_insert_with(|| {
                let base = points.len() as u32;
                let (a, b) = (mesh.vertices[key.0 as usize], mesh.vertices[key.1 as usize]);
                for s in 1..=steiner {
                    let f = s as f64 / (steiner + 1) as f64;
                    points.push([
                        a[0] + f * (b[0] - a[0]),
                        a[1] + f * (b[1] - a[1]),
                        a[2] + f * (b[2] - a[2]),
                    ]);
                }
                base
            });
            let mut list = vec![key.0];
            list.extend((0..steiner as u32).map(|s| base + s));
            list.push(key.1);
            list
        };
        let mut tri_edges = Vec::with_capacity(mesh.triangles.len());
        for t in &mesh.triangles {
            tri_edges.push([
                edge_list(t[0], t[1], &mut points),
                edge_list(t[1], t[2], &mut points),
                edge_list(t[2], t[0], &mut points),
            ]);
        }
        let mut adjacency = vec![Vec::new(); points.len()];
        let mut link = |u: u32, v: u32, points: &[[f64; 3]]| {
            if u != v {
                let d = dist(&points[u as usize], &points[v as usize]);
                adjacency[u as usize].push((v, d));
                adjacency[v as usize].push((u, d));
            }
        };
        let mut seen_edges: BTreeMap<(u32, u32), ()> = BTreeMap::new();
        for edges in &tri_edges {
            for e in edges {
                let key = (e[0].min(e[e.len() - 1]), e[0].max(e[e.len() - 1]));
                if seen_edges.insert(key, ()).is_none() {
                    for w in e.windows(2) {
                        link(w[0], w[1], &points);
                    }
                }
            }
            for a in 0..3 {
                for b in (a + 1)..3 {
                    for &u in &edges[a] {
                        for &v in &edges[b] {
                            let shared = u == v;
                            let both_on_a_b = edges[a].contains(&v) || edges[b].contains(&u);
                            if !shared && !both_on_a_b {
                                link(u, v, &points);
                            }
                        }
                    }
                }
            }
        }
        GeodesicGraph { points, adjacency }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Shortest-path distances from `source` to every point.
    pub fn distances(&self, source: usize) -> Vec<f64> {
        let mut d = vec![f64::INFINITY; self.points.len()];
        let mut heap = BinaryHeap::new();
        d[source] = 0.0;
        heap.push(State {
            cost: 0.0,
            node: source as u32,
        });
        while let Some(State { cost, node }) = heap.pop() {
            if cost > d[node as usize] {
                continue;
            }
            for &(next, w) in &self.adjacency[node as usize] {
                let c = cost + w;
                if c < d[next as usize] {
                    d[next as usize] = c;
                    heap.push(State {
                        cost: c,
                        node: next,
                    });
                }
            }
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct State {
    cost: f64,
    node: u32,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| self.node.cmp(&other.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_square_diagonal_is_shortened_by_steiner_points() {
        // Two triangles of the unit square; true diagonal distance √2 between
        // opposite corners that are not joined by the split edge.
        let mesh = Mesh {
            vertices: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 1.0, 0.0],
            ],
            triangles: vec![[0, 1, 2], [0, 2, 3]],
        };
        let g0 = GeodesicGraph::new(&mesh, 0);
        let d0 = g0.distances(1)[3];
        assert!((d0 - 2.0).abs() < 1e-12);
        let g = GeodesicGraph::new(&mesh, 8);
        let d = g.distances(1)[3];
        assert!(d < d0 && d >= 2f64.sqrt() - 1e-12);
        assert!(d - 2f64.sqrt() < 0.05);
    }

    #[test]
    fn revolve_counts() {
        let rings = [(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)];
        let m = revolve(&rings, 6);
        assert_eq!(m.vertices.len(), 8);
        assert_eq!(m.triangles.len(), 12);
    }
}
