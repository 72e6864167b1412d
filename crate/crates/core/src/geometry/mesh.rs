//! Triangle meshes and the parametric shapes the scene is built from.

use std::f64::consts::TAU;

use super::GeometryError;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub positions: Vec<[f32; 3]>,
    pub normals: Vec<[f32; 3]>,
    /// Triangle list, counter-clockwise when seen from outside.
    pub indices: Vec<u32>,
    pub material: usize,
}

impl Mesh {
    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.indices.len() / 3
    }

    fn push(&mut self, p: [f64; 3], n: [f64; 3]) -> u32 {
        let at = self.positions.len() as u32;
        self.positions.push(p.map(|c| c as f32));
        self.normals.push(normalize(n).map(|c| c as f32));
        at
    }

    fn tri(&mut self, a: u32, b: u32, c: u32) {
        self.indices.extend_from_slice(&[a, b, c]);
    }

    /// Componentwise (min, max) of the positions; `None` when empty.
    pub fn bounds(&self) -> Option<([f32; 3], [f32; 3])> {
        let first = *self.positions.first()?;
        Some(self.positions.iter().fold((first, first), |(lo, hi), p| {
            (
                [lo[0].min(p[0]), lo[1].min(p[1]), lo[2].min(p[2])],
                [hi[0].max(p[0]), hi[1].max(p[1]), hi[2].max(p[2])],
            )
        }))
    }

    /// Checks the structural invariants: whole triangles, indices in range,
    /// one normal per vertex, unit normals within 1e-6.
    pub fn validate(&self) -> Result<(), String> {
        if !self.indices.len().is_multiple_of(3) {
            return Err(format!("index count {} is not a multiple of 3", self.indices.len()));
        }
        if self.normals.len() != self.positions.len() {
            return Err("normal count differs from vertex count".into());
        }
        if let Some(bad) = self.indices.iter().find(|&&i| i as usize >= self.positions.len()) {
            return Err(format!("index {bad} out of range for {} vertices", self.positions.len()));
        }
        for (i, n) in self.normals.iter().enumerate() {
            let len = (n.iter().map(|&c| f64::from(c) * f64::from(c)).sum::<f64>()).sqrt();
            if (len - 1.0).abs() > 1e-6 {
                return Err(format!("normal {i} has length {len}"));
            }
        }
        Ok(())
    }
}

pub fn normalize(v: [f64; 3]) -> [f64; 3] {
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if len == 0.0 {
        return [0.0, 1.0, 0.0];
    }
    [v[0] / len, v[1] / len, v[2] / len]
}

fn ring(i: usize, segments: usize) -> (f64, f64) {
    let a = TAU * i as f64 / segments as f64;
    (a.cos(), a.sin())
}

/// Closed cylinder centred on the origin, axis along +y.
///
/// Vertices: 2 side rings, 2 cap rings, 2 cap centres (4·s + 2).
pub fn cylinder(radius: f64, height: f64, segments: usize, material: usize) -> Mesh {
    let mut m = Mesh {
        material,
        ..Mesh::default()
    };
    let (y0, y1) = (-height / 2.0, height / 2.0);
    let s = segments as u32;
    for i in 0..segments {
        let (c, sn) = ring(i, segments);
        m.push([radius * c, y0, radius * sn], [c, 0.0, sn]);
        m.push([radius * c, y1, radius * sn], [c, 0.0, sn]);
    }
    for i in 0..s {
        let j = (i + 1) % s;
        let (b0, t0, b1, t1) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        m.tri(b0, t0, t1);
        m.tri(b0, t1, b1);
    }
    for (y, up) in [(y1, 1.0), (y0, -1.0)] {
        let centre = m.push([0.0, y, 0.0], [0.0, up, 0.0]);
        let first = m.positions.len() as u32;
        for i in 0..segments {
            let (c, sn) = ring(i, segments);
            m.push([radius * c, y, radius * sn], [0.0, up, 0.0]);
        }
        for i in 0..s {
            let (a, b) = (first + i, first + (i + 1) % s);
            if up > 0.0 {
                m.tri(centre, b, a);
            } else {
                m.tri(centre, a, b);
            }
        }
    }
    m
}

/// UV sphere centred on the origin with `segments` slices and stacks.
///
/// Vertices: 2 poles plus (stacks − 1) rings of `segments`.
pub fn sphere(radius: f64, segments: usize, material: usize) -> Mesh {
    let mut m = Mesh {
        material,
        ..Mesh::default()
    };
    let (slices, stacks) = (segments as u32, segments);
    let north = m.push([0.0, radius, 0.0], [0.0, 1.0, 0.0]);
    for k in 1..stacks {
        let phi = std::f64::consts::PI * k as f64 / stacks as f64;
        let (y, r) = (phi.cos(), phi.sin());
        for i in 0..segments {
            let (c, s) = ring(i, segments);
            let dir = [r * c, y, r * s];
            m.push(dir.map(|d| d * radius), dir);
        }
    }
    let south = m.push([0.0, -radius, 0.0], [0.0, -1.0, 0.0]);
    let at = |k: u32, i: u32| 1 + (k - 1) * slices + i % slices;
    for i in 0..slices {
        m.tri(north, at(1, i + 1), at(1, i));
    }
    for k in 1..(stacks as u32 - 1) {
        for i in 0..slices {
            let (a, b, c, d) = (at(k, i), at(k, i + 1), at(k + 1, i), at(k + 1, i + 1));
            m.tri(a, b, d);
            m.tri(a, d, c);
        }
    }
    let last = stacks as u32 - 1;
    for i in 0..slices {
        m.tri(south, at(last, i), at(last, i + 1));
    }
    m
}

/// Terraced island: one frustum per tier, each `drop` tall and flaring
/// outward by `drop / 2`, with a flat cap at the tier height.
///
/// Vertices per tier: top ring, bottom ring, cap ring and cap centre (3·s + 1).
pub fn island(tier_heights: &[f64], tier_radii: &[f64], drop: f64, segments: usize, material: usize) -> Result<Mesh, GeometryError> {
    if segments < 8 {
        return Err(GeometryError::TooFewSegments(segments));
    }
    let mut m = Mesh {
        material,
        ..Mesh::default()
    };
    let s = segments as u32;
    let flare = 0.5 * drop;
    for (&top_y, &top_r) in tier_heights.iter().zip(tier_radii) {
        let bottom_y = top_y - drop;
        let bottom_r = top_r + flare;
        let side_start = m.positions.len() as u32;
        for i in 0..segments {
            let (c, sn) = ring(i, segments);
            // Outward normal of the slanted wall.
            let n = [c * drop, flare, sn * drop];
            m.push([top_r * c, top_y, top_r * sn], n);
            m.push([bottom_r * c, bottom_y, bottom_r * sn], n);
        }
        for i in 0..s {
            let j = (i + 1) % s;
            let (t0, b0, t1, b1) = (
                side_start + 2 * i,
                side_start + 2 * i + 1,
                side_start + 2 * j,
                side_start + 2 * j + 1,
            );
            m.tri(b0, t0, t1);
            m.tri(b0, t1, b1);
        }
        let centre = m.push([0.0, top_y, 0.0], [0.0, 1.0, 0.0]);
        let cap = m.positions.len() as u32;
        for i in 0..segments {
            let (c, sn) = ring(i, segments);
            m.push([top_r * c, top_y, top_r * sn], [0.0, 1.0, 0.0]);
        }
        for i in 0..s {
            m.tri(centre, cap + (i + 1) % s, cap + i);
        }
    }
    Ok(m)
}

/// Flat ribbon of width `width` following `points`, two triangles per segment.
pub fn ribbon(points: &[[f64; 3]], width: f64, material: usize) -> Result<Mesh, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::DegenerateSegment(0));
    }
    for (i, w) in points.windows(2).enumerate() {
        if (w[1][0] - w[0][0]).hypot(w[1][2] - w[0][2]) < 1e-9 {
            return Err(GeometryError::DegenerateSegment(i));
        }
    }
    let mut m = Mesh {
        material,
        ..Mesh::default()
    };
    let half = width / 2.0;
    let last = points.len() - 1;
    for i in 0..points.len() {
        let (a, b) = (points[i.saturating_sub(1)], points[(i + 1).min(last)]);
        let tangent = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let flat = normalize([tangent[0], 0.0, tangent[2]]);
        let side = [-flat[2], 0.0, flat[0]];
        let normal = cross(side, tangent);
        let p = points[i];
        m.push([p[0] + side[0] * half, p[1], p[2] + side[2] * half], normal);
        m.push([p[0] - side[0] * half, p[1], p[2] - side[2] * half], normal);
    }
    for i in 0..last as u32 {
        let (l0, r0, l1, r1) = (2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3);
        m.tri(r0, l0, r1);
        m.tri(l0, l1, r1);
    }
    Ok(m)
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
