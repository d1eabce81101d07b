//! Grid and contour file formats.
//!
//! CSV: a `#` header line `family=<f> m=<m> window=<x0>,<x1>,<y0>,<y1>
//! tol=<t>`, a column line `v1,v2,s,h,err,converged`, then one row per
//! sampled node in node order. Floats use the shortest round-trip form, so
//! a grid read back is identical to the one written.

use std::fmt::Write as _;

use super::{node_coords, IsentropeGrid, Sample};
use crate::error::{Error, Result};
use crate::isentropes::ContourSet;
use crate::svg::{Svg, Window};

pub fn grid_to_csv(g: &IsentropeGrid) -> String {
    let w = g.window;
    let mut out = format!(
        "# family={} m={} window={},{},{},{} tol={}\nv1,v2,s,h,err,converged\n",
        g.family.name(),
        g.m,
        w.x0,
        w.x1,
        w.y0,
        w.y1,
        g.tol
    );
    for j in 0..=g.m {
        for i in 0..=g.m {
            if let Some(x) = g.get(i, j) {
                let (v1, v2) = g.node(i, j);
                let _ = writeln!(out, "{v1},{v2},{},{},{},{}", x.s, x.s.ln(), x.err, x.converged as u8);
            }
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(format!("grid csv: {}", msg.into()))
}

pub fn grid_from_csv(text: &str) -> Result<IsentropeGrid> {
    let mut lines = text.lines();
    let header = lines.next().and_then(|l| l.strip_prefix('#')).ok_or_else(|| bad("missing header"))?;
    let (mut family, mut m, mut window, mut tol) = (None, None, None, None);
    for kv in header.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad(format!("bad field {kv}")))?;
        match k {
            "family" => family = Some(v.parse()?),
            "m" => m = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
            "window" => {
                let xs: Vec<f64> = v
                    .split(',')
                    .map(|x| x.parse::<f64>().map_err(|e| bad(e.to_string())))
                    .collect::<Result<_>>()?;
                if xs.len() != 4 {
                    return Err(bad("window needs four numbers"));
                }
                window = Some(Window {
                    x0: xs[0],
                    x1: xs[1],
                    y0: xs[2],
                    y1: xs[3],
                });
            }
            "tol" => tol = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            _ => return Err(bad(format!("unknown field {k}"))),
        }
    }
    let (family, m, window, tol) = (
        family.ok_or_else(|| bad("no family"))?,
        m.ok_or_else(|| bad("no m"))?,
        window.ok_or_else(|| bad("no window"))?,
        tol.ok_or_else(|| bad("no tol"))?,
    );
    lines.next().ok_or_else(|| bad("missing column line"))?;
    let mut samples = vec![None; (m + 1) * (m + 1)];
    let mut rows = lines.filter(|l| !l.trim().is_empty());
    for j in 0..=m {
        for i in 0..=m {
            let (v1, v2) = node_coords(&window, m, i, j);
            if !super::in_triangle(v1, v2) {
                continue;
            }
            let row = rows.next().ok_or_else(|| bad("too few rows"))?;
            let f: Vec<&str> = row.split(',').collect();
            if f.len() != 6 {
                return Err(bad(format!("row has {} fields", f.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| bad(e.to_string()));
            if num(f[0])? != v1 || num(f[1])? != v2 {
                return Err(bad(format!("row {row} is not node ({i}, {j})")));
            }
            samples[j * (m + 1) + i] = Some(Sample {
                s: num(f[2])?,
                err: num(f[4])?,
                converged: f[5].trim() == "1",
            });
        }
    }
    if rows.next().is_some() {
        return Err(bad("too many rows"));
    }
    Ok(IsentropeGrid {
        family,
        m,
        window,
        tol,
        samples,
    })
}

/// Plain (ASCII) PGM heatmap, top row = largest `v2`. Masked nodes are
/// white; `s = 1` is light grey and `s = 3` black.
pub fn grid_to_pgm(g: &IsentropeGrid) -> String {
    let n = g.m + 1;
    let mut out = format!("P2\n{n} {n}\n255\n");
    for j in (0..n).rev() {
        let row: Vec<String> = (0..n)
            .map(|i| match g.s(i, j) {
                None => 255,
                Some(s) => (230.0 * (3.0 - s.clamp(1.0, 3.0)) / 2.0).round() as u32,
            })
            .map(|v| v.to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Contours over the triangle outline, each level labelled once.
pub fn contours_svg(c: &ContourSet, window: Window) -> String {
    let mut svg = Svg::new(640.0, window);
    svg.triangle();
    for (l, lines) in c.levels.iter().zip(&c.lines) {
        for p in lines {
            svg.polyline(&p.points, "black", 0.8);
        }
        if let Some(p) = lines.iter().max_by_key(|p| p.points.len()) {
            let q = p.points[p.points.len() / 2];
            svg.text(q.0, q.1, 9.0, &format!("{}", (l * 1000.0).round() / 1000.0));
        }
    }
    svg.finish()
}
