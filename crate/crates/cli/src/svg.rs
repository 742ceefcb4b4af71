//! Minimal SVG plotting: one rectangular plot area, linear or log axes,
//! and a handful of primitives. Coordinates are written with two decimals
//! so output is stable across runs.

use std::fmt::Write;

pub const PALETTE: [&str; 8] = [
    "#e6b800", "#7b3fa0", "#2e9e4f", "#2f6fd0", "#d9534f", "#8c564b", "#17becf", "#7f7f7f",
];

pub fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub log: bool,
}

impl Axis {
    /// Linear axis covering `values` with a 5% margin on both ends.
    pub fn linear(values: impl IntoIterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = bounds(values);
        if lo == hi {
            lo -= 1.0;
            hi += 1.0;
        }
        let pad = (hi - lo) * 0.05;
        Self {
            min: lo - pad,
            max: hi + pad,
            log: false,
        }
    }

    /// Linear axis that always includes zero.
    pub fn from_zero(values: impl IntoIterator<Item = f64>) -> Self {
        let (_, hi) = bounds(values.into_iter().chain([0.0]));
        let hi = if hi <= 0.0 { 1.0 } else { hi * 1.08 };
        Self {
            min: 0.0,
            max: hi,
            log: false,
        }
    }

    /// Log10 axis snapped outward to whole decades. Values must be positive.
    pub fn log10(values: impl IntoIterator<Item = f64>) -> Self {
        let (lo, hi) = bounds(values);
        let lo = lo.log10().floor();
        let mut hi = hi.log10().ceil();
        if hi <= lo {
            hi = lo + 1.0;
        }
        Self {
            min: 10f64.powf(lo),
            max: 10f64.powf(hi),
            log: true,
        }
    }

    fn fraction(&self, v: f64) -> f64 {
        if self.log {
            (v.log10() - self.min.log10()) / (self.max.log10() - self.min.log10())
        } else {
            (v - self.min) / (self.max - self.min)
        }
    }

    pub fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.min.log10().round() as i32, self.max.log10().round() as i32);
            return (a..=b).map(|e| 10f64.powi(e)).collect();
        }
        let span = self.max - self.min;
        let raw = span / 6.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let start = (self.min / step).ceil() as i64;
        let end = (self.max / step).floor() as i64;
        (start..=end).map(|i| i as f64 * step).collect()
    }
}

fn bounds(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

pub fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1000.0 || v.abs() < 0.01 {
        format!("{v:e}")
    } else {
        let s = format!("{v:.2}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

pub struct Plot {
    pub width: f64,
    pub height: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
    pub x: Axis,
    pub y: Axis,
    body: String,
}

impl Plot {
    pub fn new(x: Axis, y: Axis) -> Self {
        Self {
            width: 820.0,
            height: 560.0,
            left: 80.0,
            right: 220.0,
            top: 50.0,
            bottom: 70.0,
            x,
            y,
            body: String::new(),
        }
    }

    pub fn px(&self, v: f64) -> f64 {
        self.left + self.x.fraction(v) * (self.width - self.left - self.right)
    }

    pub fn py(&self, v: f64) -> f64 {
        self.height - self.bottom - self.y.fraction(v) * (self.height - self.top - self.bottom)
    }

    fn plot_right(&self) -> f64 {
        self.width - self.right
    }

    fn plot_bottom(&self) -> f64 {
        self.height - self.bottom
    }

    pub fn raw(&mut self, element: &str) {
        self.body.push_str(element);
        self.body.push('\n');
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str, title: Option<&str>) {
        let (cx, cy) = (self.px(x), self.py(y));
        match title {
            Some(t) => self.raw(&format!(
                r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}" fill-opacity="0.85"><title>{}</title></circle>"#,
                escape(t)
            )),
            None => self.raw(&format!(
                r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}" fill-opacity="0.85"/>"#
            )),
        }
    }

    pub fn text(&mut self, x: f64, y: f64, text: &str, size: f64) {
        let (tx, ty) = (self.px(x) + 5.0, self.py(y) - 5.0);
        self.raw(&format!(
            r#"<text x="{tx:.2}" y="{ty:.2}" font-size="{size}">{}</text>"#,
            escape(text)
        ));
    }

    /// Polyline in data coordinates. `dash` is an SVG dasharray.
    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64, dash: Option<&str>) {
        let mut d = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            if i > 0 {
                d.push(' ');
            }
            let _ = write!(d, "{:.2},{:.2}", self.px(x), self.py(y));
        }
        let dash = dash
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        self.raw(&format!(
            r#"<polyline points="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"{dash}/>"#
        ));
    }

    pub fn polygon(&mut self, pts: &[[f64; 2]], fill: &str) {
        let d = pts
            .iter()
            .map(|p| format!("{:.2},{:.2}", self.px(p[0]), self.py(p[1])))
            .collect::<Vec<_>>()
            .join(" ");
        self.raw(&format!(
            r#"<polygon points="{d}" fill="{fill}" fill-opacity="0.18" stroke="{fill}" stroke-width="1.5"/>"#
        ));
    }

    /// Bar from the x-axis baseline, with pixel-space horizontal placement.
    pub fn bar(&mut self, x_px: f64, width_px: f64, value: f64, fill: &str, title: &str) {
        let y0 = self.py(self.y.min.max(0.0));
        let y1 = self.py(value);
        let (top, h) = if y1 < y0 { (y1, y0 - y1) } else { (y0, y1 - y0) };
        self.raw(&format!(
            r#"<rect x="{x_px:.2}" y="{top:.2}" width="{width_px:.2}" height="{h:.2}" fill="{fill}"><title>{}</title></rect>"#,
            escape(title)
        ));
    }

    /// Horizontal reference line across the plot area.
    pub fn hline(&mut self, y: f64, stroke: &str, dash: Option<&str>, label: &str) {
        let py = self.py(y);
        let dash = dash
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        self.raw(&format!(
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="{stroke}" stroke-width="2"{dash}/>"#,
            self.left,
            self.plot_right()
        ));
        self.raw(&format!(
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{stroke}">{}</text>"#,
            self.plot_right() + 6.0,
            py + 4.0,
            escape(label)
        ));
    }

    /// Category labels under the x axis at pixel positions.
    pub fn category_labels(&mut self, labels: &[(f64, String)]) {
        let y = self.plot_bottom() + 16.0;
        for (x, l) in labels {
            self.raw(&format!(
                r#"<text x="{x:.2}" y="{y:.2}" font-size="12" text-anchor="end" transform="rotate(-30 {x:.2} {y:.2})">{}</text>"#,
                escape(l)
            ));
        }
    }

    pub fn render(
        &self,
        title: &str,
        x_label: &str,
        y_label: &str,
        legend: &[(String, String)],
        run_id: &str,
        x_ticks: bool,
    ) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif">"#,
            self.width, self.height, self.width, self.height
        );
        let _ = writeln!(s, "<!-- run: {} -->", escape(run_id));
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
            self.width, self.height
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="28" font-size="16" text-anchor="middle" font-weight="bold">{}</text>"#,
            self.width / 2.0,
            escape(title)
        );

        // axes and grid
        let (l, r, t, b) = (self.left, self.plot_right(), self.top, self.plot_bottom());
        for v in self.y.ticks() {
            let y = self.py(v);
            let _ = writeln!(
                s,
                r##"<line x1="{l:.2}" y1="{y:.2}" x2="{r:.2}" y2="{y:.2}" stroke="#dddddd"/>"##
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
                l - 6.0,
                y + 4.0,
                tick_label(v)
            );
        }
        if x_ticks {
            for v in self.x.ticks() {
                let x = self.px(v);
                let _ = writeln!(
                    s,
                    r##"<line x1="{x:.2}" y1="{t:.2}" x2="{x:.2}" y2="{b:.2}" stroke="#eeeeee"/>"##
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                    b + 16.0,
                    tick_label(v)
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<rect x="{l:.2}" y="{t:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            r - l,
            b - t
        );

        s.push_str(&self.body);

        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
            (l + r) / 2.0,
            self.height - 12.0,
            escape(x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            (t + b) / 2.0,
            (t + b) / 2.0,
            escape(y_label)
        );
        for (i, (color, label)) in legend.iter().enumerate() {
            let y = t + 10.0 + i as f64 * 20.0;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{y:.2}" width="12" height="12" fill="{color}"/>"#,
                r + 12.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                r + 30.0,
                y + 10.0,
                escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
