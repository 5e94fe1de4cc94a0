//! Triangle meshes of a surface grid in OBJ and ASCII PLY.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::TranslationSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MeshFormat::Obj => "obj",
            MeshFormat::Ply => "ply",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MeshStats {
    pub vertices: usize,
    pub triangles: usize,
    /// Grid cells dropped because a corner is degenerate.
    pub omitted_cells: usize,
}

/// Two triangles per grid cell, (v00, v10, v11) and (v00, v11, v01), wound so
/// the face normal follows Ψ_s × Ψ_t. Indices are 0-based.
pub fn triangulate(surf: &TranslationSurface) -> (Vec<[usize; 3]>, usize) {
    let (rows, cols) = (surf.rows(), surf.cols());
    let mut faces = Vec::with_capacity(2 * rows.saturating_sub(1) * cols.saturating_sub(1));
    let mut omitted = 0;
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols.saturating_sub(1) {
            let v00 = surf.index(i, j);
            let v10 = surf.index(i + 1, j);
            let v11 = surf.index(i + 1, j + 1);
            let v01 = surf.index(i, j + 1);
            if [v00, v10, v11, v01].iter().any(|&k| surf.degenerate[k]) {
                omitted += 1;
                continue;
            }
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }
    (faces, omitted)
}

pub fn write_mesh<W: Write>(
    surf: &TranslationSurface,
    format: MeshFormat,
    w: W,
) -> Result<MeshStats> {
    if surf.rows() < 2 || surf.cols() < 2 {
        return Err(Error::GridTooCoarse(format!(
            "{}×{} grid cannot be meshed",
            surf.rows(),
            surf.cols()
        )));
    }
    let (faces, omitted_cells) = triangulate(surf);
    let stats = MeshStats {
        vertices: surf.position.len(),
        triangles: faces.len(),
        omitted_cells,
    };
    let mut w = std::io::BufWriter::new(w);
    match format {
        MeshFormat::Obj => {
            for p in &surf.position {
                writeln!(w, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
            }
            for f in &faces {
                writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
            }
        }
        MeshFormat::Ply => {
            write!(
                w,
                "ply\nformat ascii 1.0\nelement vertex {}\nproperty double x\nproperty double y\n\
                 property double z\nelement face {}\nproperty list uchar int vertex_indices\nend_header\n",
                stats.vertices, stats.triangles
            )?;
            for p in &surf.position {
                writeln!(w, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
            }
            for f in &faces {
                writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
            }
        }
    }
    w.flush()?;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{straight_line, Vec3};
    use crate::fixtures::{helicoid_surface, scherk_surface, ScherkParams};
    use crate::geometry::surface_from_curves;

    #[test]
    fn two_by_two_grid() {
        let s = [0.0, 1.0];
        let surf = surface_from_curves(
            &straight_line(&Vec3::x(), &s),
            &straight_line(&Vec3::y(), &s),
        )
        .unwrap();
        let mut buf = Vec::new();
        let stats = write_mesh(&surf, MeshFormat::Obj, &mut buf).unwrap();
        assert_eq!(
            stats,
            MeshStats {
                vertices: 4,
                triangles: 2,
                omitted_cells: 0
            }
        );
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "v 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n\
             v 0.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0\n\
             v 1.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n\
             v 1.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0\n\
             f 1 3 4\nf 1 4 2\n"
        );
    }

    #[test]
    fn winding_follows_surface_normal() {
        let surf = scherk_surface(ScherkParams::new(1.0, 1.2).unwrap(), 21).unwrap();
        let (faces, omitted) = triangulate(&surf);
        assert_eq!(omitted, 0);
        for f in faces {
            let [a, b, c] = f.map(|k| surf.position[k]);
            let n = (b - a).cross(&(c - a));
            assert!(n.dot(&surf.normal[f[0]]) > 0.0);
        }
    }

    #[test]
    fn helicoid_counts_and_degenerate_cells() {
        let surf = helicoid_surface((-3.0, 3.0), 41).unwrap();
        let mut buf = Vec::new();
        let stats = write_mesh(&surf, MeshFormat::Ply, &mut buf).unwrap();
        assert_eq!(stats.vertices, 1681);
        // The diagonal s = t is degenerate: each of its 41 nodes kills the
        // cells around it, 40 + 2·39 distinct cells in all.
        assert_eq!(stats.omitted_cells, 118);
        assert_eq!(stats.triangles, 2 * (1600 - 118));
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("ply\nformat ascii 1.0\nelement vertex 1681\n"));
        assert_eq!(text.lines().count(), 9 + 1681 + stats.triangles);
    }
}
