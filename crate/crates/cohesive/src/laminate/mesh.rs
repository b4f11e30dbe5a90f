//! Structured triangulation of a rectangle and linear (P1) element geometry.

use serde::Deserialize;

/// One of the four sides of the rectangle boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSide {
    Left,
    Right,
    Bottom,
    Top,
}

/// A conforming triangulation of [0, lx] x [0, ly] with nx x ny cells, each
/// split into two triangles along the south-west/north-east diagonal.
#[derive(Debug, Clone)]
pub struct RectMesh {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    /// Node coordinates, row-major: node (i, j) at index j * (nx + 1) + i.
    pub nodes: Vec<[f64; 2]>,
    /// Triangles as counterclockwise node-index triples.
    pub tris: Vec<[usize; 3]>,
}

impl RectMesh {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Self {
        assert!(nx >= 1 && ny >= 1 && lx > 0.0 && ly > 0.0);
        let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                nodes.push([lx * i as f64 / nx as f64, ly * j as f64 / ny as f64]);
            }
        }
        let idx = |i: usize, j: usize| j * (nx + 1) + i;
        let mut tris = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            }
        }
        Self {
            nx,
            ny,
            lx,
            ly,
            nodes,
            tris,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.tris.len()
    }

    pub fn diameter(&self) -> f64 {
        (self.lx * self.lx + self.ly * self.ly).sqrt()
    }

    /// Signed area and the constant P1 shape-function gradients of a triangle.
    pub fn element_geometry(&self, e: usize) -> (f64, [[f64; 2]; 3]) {
        let [a, b, c] = self.tris[e];
        triangle_geometry(self.nodes[a], self.nodes[b], self.nodes[c])
    }

    /// Indices of the nodes lying on a given side.
    pub fn side_nodes(&self, side: EdgeSide) -> Vec<usize> {
        let idx = |i: usize, j: usize| j * (self.nx + 1) + i;
        match side {
            EdgeSide::Left => (0..=self.ny).map(|j| idx(0, j)).collect(),
            EdgeSide::Right => (0..=self.ny).map(|j| idx(self.nx, j)).collect(),
            EdgeSide::Bottom => (0..=self.nx).map(|i| idx(i, 0)).collect(),
            EdgeSide::Top => (0..=self.nx).map(|i| idx(i, self.ny)).collect(),
        }
    }
}

/// Area and P1 shape gradients for a triangle given by its vertices.
pub fn triangle_geometry(p0: [f64; 2], p1: [f64; 2], p2: [f64; 2]) -> (f64, [[f64; 2]; 3]) {
    let det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    let area = 0.5 * det;
    let inv = 1.0 / det;
    let grads = [
        [(p1[1] - p2[1]) * inv, (p2[0] - p1[0]) * inv],
        [(p2[1] - p0[1]) * inv, (p0[0] - p2[0]) * inv],
        [(p0[1] - p1[1]) * inv, (p1[0] - p0[0]) * inv],
    ];
    (area, grads)
}
