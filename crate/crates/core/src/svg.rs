//! Minimal SVG writer for parameter-plane figures.
//!
//! Coordinates are parameter coordinates `(v1, v2)`: origin lower left,
//! `v1` to the right, `v2` upward. Numbers are printed with fixed
//! precision so equal inputs give byte-identical files.

use std::fmt::Write as _;

/// A rectangular window `[x0, x1] × [y0, y1]` of the parameter plane.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub const UNIT: Window = Window {
        x0: 0.0,
        x1: 1.0,
        y0: 0.0,
        y1: 1.0,
    };
}

pub struct Svg {
    body: String,
    size: f64,
    margin: f64,
    win: Window,
}

impl Svg {
    /// A square canvas of `size` pixels showing `win`.
    pub fn new(size: f64, win: Window) -> Svg {
        Svg {
            body: String::new(),
            size,
            margin: 20.0,
            win,
        }
    }

    fn scale(&self) -> f64 {
        (self.size - 2.0 * self.margin) / (self.win.x1 - self.win.x0).max(self.win.y1 - self.win.y0)
    }

    /// Pixel position of a parameter point.
    pub fn px(&self, v1: f64, v2: f64) -> (f64, f64) {
        let s = self.scale();
        (
            self.margin + (v1 - self.win.x0) * s,
            self.size - self.margin - (v2 - self.win.y0) * s,
        )
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &(a, b)) in pts.iter().enumerate() {
            let (x, y) = self.px(a, b);
            let _ = write!(d, "{}{x:.2},{y:.2}", if i == 0 { "" } else { " " });
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{d}" fill="none" stroke="{stroke}" stroke-width="{width:.2}"/>"#
        );
    }

    pub fn dot(&mut self, v1: f64, v2: f64, r: f64, fill: &str) {
        let (x, y) = self.px(v1, v2);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{fill}"/>"#);
    }

    pub fn text(&mut self, v1: f64, v2: f64, size: f64, s: &str) {
        let (x, y) = self.px(v1, v2);
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="{size:.1}" font-family="sans-serif">{s}</text>"#
        );
    }

    /// Outline of the triangle `1 ≥ v1 ≥ v2 ≥ 0`, clipped to the window.
    pub fn triangle(&mut self) {
        let w = self.win;
        let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 0.0)];
        let clipped: Vec<(f64, f64)> = corners
            .iter()
            .map(|&(a, b): &(f64, f64)| (a.clamp(w.x0, w.x1), b.clamp(w.y0, w.y1)))
            .collect();
        self.polyline(&clipped, "black", 1.0);
    }

    pub fn finish(self) -> String {
        let s = self.size;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s:.0}\" height=\"{s:.0}\" viewBox=\"0 0 {s:.0} {s:.0}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_lower_left() {
        let svg = Svg::new(240.0, Window::UNIT);
        assert_eq!(svg.px(0.0, 0.0), (20.0, 220.0));
        assert_eq!(svg.px(1.0, 1.0), (220.0, 20.0));
    }

    #[test]
    fn output_is_deterministic() {
        let draw = || {
            let mut s = Svg::new(100.0, Window::UNIT);
            s.triangle();
            s.polyline(&[(0.1, 0.05), (0.5, 0.2)], "red", 1.0);
            s.finish()
        };
        assert_eq!(draw(), draw());
        assert!(draw().starts_with("<svg"));
    }
}
