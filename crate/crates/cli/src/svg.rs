//! Self-contained SVG figures with fixed formatting.

use std::fmt::Write as _;

use blotto::metrics::average_allocation;
use blotto::{Checkpoint, Player, RunRecord};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn axes(out: &mut String) {
    let (x0, y0, x1, y1) = (LEFT, HEIGHT - BOTTOM, WIDTH - RIGHT, TOP);
    let _ = writeln!(out, r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" stroke="black" fill="none"/>"#);
}

struct LogScale {
    lo: f64,
    hi: f64,
    a: f64,
    b: f64,
}

impl LogScale {
    fn new(values: impl Iterator<Item = f64>, a: f64, b: f64) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| *v > 0.0 && v.is_finite()) {
            lo = lo.min(v.log10().floor());
            hi = hi.max(v.log10().ceil());
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi <= lo {
            hi = lo + 1.0;
        }
        LogScale { lo, hi, a, b }
    }

    fn map(&self, v: f64) -> f64 {
        self.a + (v.log10() - self.lo) / (self.hi - self.lo) * (self.b - self.a)
    }

    fn decades(&self) -> impl Iterator<Item = i32> {
        self.lo as i32..=self.hi as i32
    }
}

/// Log-log regret curve; includes the equilibrium distance when recorded.
pub fn regret_svg(checkpoints: &[Checkpoint]) -> String {
    let mut out = String::new();
    header(&mut out, "Total regret");
    axes(&mut out);
    let xs = LogScale::new(checkpoints.iter().map(|c| c.round as f64), LEFT, WIDTH - RIGHT);
    let ys = LogScale::new(
        checkpoints
            .iter()
            .flat_map(|c| [Some(c.total_regret), c.eq_distance])
            .flatten(),
        HEIGHT - BOTTOM,
        TOP,
    );
    for d in xs.decades() {
        let x = xs.map(10f64.powi(d));
        let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, HEIGHT - BOTTOM, HEIGHT - BOTTOM + 5.0);
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{}" text-anchor="middle">1e{d}</text>"#, HEIGHT - BOTTOM + 18.0);
    }
    for d in ys.decades() {
        let y = ys.map(10f64.powi(d));
        let _ = writeln!(out, r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(out, r#"<text x="{}" y="{:.2}" text-anchor="end">1e{d}</text>"#, LEFT - 8.0, y + 4.0);
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">round</text>"#, (LEFT + WIDTH - RIGHT) / 2.0, HEIGHT - 10.0);

    type Series = fn(&Checkpoint) -> Option<f64>;
    let series: [(&str, &str, Series); 2] = [
        ("total regret", "#1f77b4", |c| Some(c.total_regret)),
        ("equilibrium distance", "#d62728", |c| c.eq_distance),
    ];
    let mut legend_y = TOP + 10.0;
    for (label, color, get) in series {
        let points: Vec<String> = checkpoints
            .iter()
            .filter_map(|c| get(c).filter(|v| *v > 0.0).map(|v| (c.round as f64, v)))
            .map(|(x, y)| format!("{:.2},{:.2}", xs.map(x), ys.map(y)))
            .collect();
        if points.is_empty() {
            continue;
        }
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, points.join(" "));
        let _ = writeln!(out, r#"<rect x="{}" y="{}" width="12" height="3" fill="{color}"/>"#, WIDTH - RIGHT - 150.0, legend_y - 4.0);
        let _ = writeln!(out, r#"<text x="{}" y="{legend_y}">{label}</text>"#, WIDTH - RIGHT - 132.0);
        legend_y += 16.0;
    }
    out.push_str("</svg>\n");
    out
}

/// Average allocations per battle with the reference allocations in gray.
pub fn allocation_svg(record: &RunRecord, names: &[String]) -> String {
    let avg = Player::BOTH.map(|p| average_allocation(record, p));
    let [prop, three] = crate::output::reference_targets(record, Player::One);
    let k = record.spec.k();
    let series = [
        ("player 1", "#1f77b4", &avg[0]),
        ("player 2", "#d62728", &avg[1]),
        ("proportional", "#c8c8c8", &prop),
        ("three-halves", "#808080", &three),
    ];
    let top = series
        .iter()
        .flat_map(|s| s.2.iter().copied())
        .fold(1.0f64, f64::max)
        .ceil();

    let mut out = String::new();
    header(&mut out, "Average allocation");
    axes(&mut out);
    let plot_h = HEIGHT - BOTTOM - TOP;
    let y = |v: f64| HEIGHT - BOTTOM - v / top * plot_h;
    for i in 0..=4 {
        let v = top * i as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{}" y="{:.2}" text-anchor="end">{v}</text>"#, LEFT - 8.0, y(v) + 4.0);
    }
    let group = (WIDTH - RIGHT - LEFT) / k.max(1) as f64;
    let bar = group * 0.8 / series.len() as f64;
    for j in 0..k {
        let gx = LEFT + group * j as f64 + group * 0.1;
        for (s, (_, color, values)) in series.iter().enumerate() {
            let v = values[j];
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{bar:.2}" height="{:.2}" fill="{color}"/>"#,
                gx + bar * s as f64,
                y(v),
                HEIGHT - BOTTOM - y(v)
            );
        }
        let name = names.get(j).cloned().unwrap_or_else(|| (j + 1).to_string());
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            gx + group * 0.4,
            HEIGHT - BOTTOM + 18.0,
            escape(&name)
        );
    }
    for (s, (label, color, _)) in series.iter().enumerate() {
        let ly = TOP + 10.0 + 16.0 * s as f64;
        let _ = writeln!(out, r#"<rect x="{}" y="{}" width="10" height="10" fill="{color}"/>"#, LEFT + 10.0, ly - 9.0);
        let _ = writeln!(out, r#"<text x="{}" y="{ly}">{label}</text>"#, LEFT + 26.0);
    }
    out.push_str("</svg>\n");
    out
}
