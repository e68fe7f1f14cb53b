//! Minimal standalone SVG charts for the report: line plots with optional
//! error bars, and a stacked cumulative-time chart. No styling ambitions,
//! just self-contained vector files a reviewer can open anywhere.

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// One polyline: points plus optional per-point error-bar endpoints.
/// A `capped` point is drawn as an open marker (used for unbounded values
/// clipped to the plot ceiling).
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub bars: Option<Vec<(f64, f64)>>,
    pub capped: Vec<bool>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Series {
        let capped = vec![false; points.len()];
        Series {
            label: label.into(),
            points,
            bars: None,
            capped,
        }
    }

    pub fn with_bars(mut self, bars: Vec<(f64, f64)>) -> Series {
        self.bars = Some(bars);
        self
    }
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(f64::MIN_POSITIVE);
        MARGIN_LEFT + (x - self.x_min) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, y: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(f64::MIN_POSITIVE);
        HEIGHT - MARGIN_BOTTOM - (y - self.y_min) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn frame_for(series: &[Series]) -> Frame {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            xs.push(x);
            ys.push(y);
        }
        if let Some(bars) = &s.bars {
            for &(lo, hi) in bars {
                ys.push(lo);
                ys.push(hi);
            }
        }
    }
    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let x_max = xs.iter().copied().fold(0.0, f64::max).max(1.0);
    let y_min = ys.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let y_max = ys.iter().copied().fold(0.0, f64::max).max(1e-9) * 1.05;
    Frame {
        x_min,
        x_max,
        y_min,
        y_max,
    }
}

fn axes(out: &mut String, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"28\" font-size=\"16\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    out.push_str(&format!(
        "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x1:.1}\" y2=\"{y0:.1}\" stroke=\"black\"/>\n"
    ));
    out.push_str(&format!(
        "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x0:.1}\" y2=\"{y1:.1}\" stroke=\"black\"/>\n"
    ));
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let xv = frame.x_min + t * (frame.x_max - frame.x_min);
        let yv = frame.y_min + t * (frame.y_max - frame.y_min);
        let xp = frame.x(xv);
        let yp = frame.y(yv);
        out.push_str(&format!(
            "<line x1=\"{xp:.1}\" y1=\"{y0:.1}\" x2=\"{xp:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            y0 + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{xp:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>\n",
            y0 + 18.0,
            format_tick(xv)
        ));
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{yp:.1}\" x2=\"{x0:.1}\" y2=\"{yp:.1}\" stroke=\"black\"/>\n",
            x0 - 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">{}</text>\n",
            x0 - 8.0,
            yp + 4.0,
            format_tick(yv)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"20\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 20 {:.1})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    ));
}

fn format_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 1e6 {
        format!("{:.1}M", v / 1e6)
    } else if a >= 1e3 {
        format!("{:.1}k", v / 1e3)
    } else if a >= 1.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders a line chart with one polyline per series.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let frame = frame_for(series);
    let mut out = svg_open();
    axes(&mut out, &frame, title, x_label, y_label);

    for (si, s) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        if s.points.len() > 1 {
            let path: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.1},{:.1}", frame.x(x), frame.y(y)))
                .collect();
            out.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        if let Some(bars) = &s.bars {
            for (&(x, _), &(lo, hi)) in s.points.iter().zip(bars) {
                let xp = frame.x(x);
                out.push_str(&format!(
                    "<line x1=\"{xp:.1}\" y1=\"{:.1}\" x2=\"{xp:.1}\" y2=\"{:.1}\" stroke=\"{color}\" stroke-width=\"1\"/>\n",
                    frame.y(lo),
                    frame.y(hi)
                ));
            }
        }
        for (pi, &(x, y)) in s.points.iter().enumerate() {
            let fill = if s.capped.get(pi).copied().unwrap_or(false) {
                "white"
            } else {
                color
            };
            out.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{fill}\" stroke=\"{color}\"/>\n",
                frame.x(x),
                frame.y(y)
            ));
        }
        legend_entry(&mut out, si, color, &s.label);
    }
    out.push_str("</svg>\n");
    out
}

/// Stacked cumulative chart: each category's line sits on top of the sum of
/// the ones before it, so the gap between adjacent lines is that category's
/// contribution.
pub fn stacked_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    categories: &[(String, Vec<f64>)],
) -> String {
    let mut cumulative = vec![0.0; xs.len()];
    let mut series = Vec::new();
    for (label, values) in categories {
        for (acc, v) in cumulative.iter_mut().zip(values) {
            *acc += v;
        }
        series.push(Series::new(
            label.clone(),
            xs.iter().copied().zip(cumulative.iter().copied()).collect(),
        ));
    }
    line_chart(title, x_label, y_label, &series)
}

fn svg_open() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    )
}

fn legend_entry(out: &mut String, index: usize, color: &str, label: &str) {
    let x = WIDTH - MARGIN_RIGHT + 12.0;
    let y = MARGIN_TOP + 14.0 * index as f64;
    out.push_str(&format!(
        "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
        x + 16.0
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" font-family=\"sans-serif\">{}</text>\n",
        x + 20.0,
        y + 4.0,
        escape(label)
    ));
}
