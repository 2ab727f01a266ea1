//! Deterministic SVG emission for energy–frequency diagrams: one polyline
//! per input curve, styling by element kind, markers as dots. Identical
//! inputs produce byte-identical output.

use std::fmt::Write;

pub struct PlotSeries {
    pub name: String,
    /// (Ω, E) samples.
    pub points: Vec<(f64, f64)>,
}

pub struct PlotMarker {
    pub kind: String,
    pub omega: f64,
    pub energy: f64,
}

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 640.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

fn series_color(name: &str) -> &'static str {
    if name.starts_with("trunk") {
        "#1f77b4"
    } else if name.starts_with("branch") {
        "#d62728"
    } else {
        "#444444"
    }
}

fn marker_color(kind: &str) -> &'static str {
    match kind {
        "fold" => "#7f7f7f",
        "bifurcation-candidate" => "#d62728",
        "closed-loop" => "#2ca02c",
        _ => "#000000",
    }
}

pub fn render(
    series: &[PlotSeries],
    markers: &[PlotMarker],
    window: (f64, f64, f64, f64),
) -> String {
    let (w_lo, w_hi, e_lo, e_hi) = window;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |omega: f64| MARGIN_LEFT + (omega - w_lo) / (w_hi - w_lo) * plot_w;
    let y_of = |energy: f64| MARGIN_TOP + (e_hi - energy) / (e_hi - e_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "<defs><clipPath id=\"plot\"><rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\"/></clipPath></defs>"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>");

    // Axes and ticks.
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"#000000\"/>"
    );
    for k in 0..=6 {
        let f = k as f64 / 6.0;
        let omega = w_lo + f * (w_hi - w_lo);
        let x = x_of(omega);
        let _ = writeln!(
            svg,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#000000\"/>",
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 6.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            MARGIN_TOP + plot_h + 22.0,
            tick_label(omega)
        );
        let energy = e_lo + f * (e_hi - e_lo);
        let y = y_of(energy);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#000000\"/>",
            MARGIN_LEFT - 6.0,
            MARGIN_LEFT
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 10.0,
            y + 4.0,
            tick_label(energy)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-size=\"16\" text-anchor=\"middle\">Ω</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"18\" y=\"{}\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">E</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let _ = writeln!(svg, "<g clip-path=\"url(#plot)\">");
    for s in series {
        if s.points.is_empty() {
            continue;
        }
        let mut coords = String::new();
        for &(omega, energy) in &s.points {
            let _ = write!(coords, "{:.3},{:.3} ", x_of(omega), y_of(energy));
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.4\" points=\"{}\"/>",
            series_color(&s.name),
            coords.trim_end()
        );
    }
    for m in markers {
        let _ = writeln!(
            svg,
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3.5\" fill=\"{}\"/>",
            x_of(m.omega),
            y_of(m.energy),
            marker_color(&m.kind)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

fn tick_label(v: f64) -> String {
    // Shortest stable decimal for tick values.
    let rounded = (v * 1000.0).round() / 1000.0;
    format!("{rounded}")
}
