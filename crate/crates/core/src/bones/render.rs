//! SVG pictures of bones and skeletons.

use super::{Bone, Side, SkeletonGraph, VertexKind};
use crate::svg::{Svg, Window};

const SIZE: f64 = 640.0;

fn colour(side: Side) -> &'static str {
    match side {
        Side::Left => "#1f5fbf",
        Side::Right => "#c0392b",
    }
}

fn draw_bone(svg: &mut Svg, b: &Bone) {
    let pts: Vec<(f64, f64)> = b.geometry.iter().map(|p| (p.v1, p.v2)).collect();
    svg.polyline(&pts, colour(b.side), 1.2);
}

/// Triangle with the given bones overlaid: left bones blue, right bones
/// red, centers as black dots.
pub fn bones_svg(bones: &[Bone]) -> String {
    let mut svg = Svg::new(SIZE, Window::UNIT);
    svg.triangle();
    for b in bones {
        draw_bone(&mut svg, b);
        if let Some(c) = b.center {
            svg.dot(c.v1, c.v2, 2.5, "black");
        }
    }
    svg.finish()
}

/// Triangle with every bone of the skeleton and its vertices.
pub fn skeleton_svg(g: &SkeletonGraph) -> String {
    let mut svg = Svg::new(SIZE, Window::UNIT);
    svg.triangle();
    for b in &g.bones {
        draw_bone(&mut svg, b);
    }
    for v in &g.vertices {
        let (r, fill) = match v.kind {
            VertexKind::Endpoint => (2.0, "black"),
            VertexKind::Crossing => (2.0, "#555555"),
            VertexKind::Center => (3.0, "black"),
        };
        svg.dot(v.point.v1, v.point.v2, r, if v.flagged { "orange" } else { fill });
    }
    svg.text(0.02, 0.95, 14.0, &format!("{}-skeleton, {} family", g.n, g.family.name()));
    svg.finish()
}
