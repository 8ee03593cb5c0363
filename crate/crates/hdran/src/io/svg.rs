//! Minimal SVG emission for Lorenz curves: hand-rolled polylines on the
//! unit square, no plotting dependency.

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn map_x(x: f64) -> f64 {
    MARGIN + x * SIZE
}

fn map_y(y: f64) -> f64 {
    // SVG y grows downward
    MARGIN + (1.0 - y) * SIZE
}

fn polyline(points: &[(f64, f64)], color: &str, dashed: bool) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", map_x(x), map_y(y)))
        .collect();
    let dash = if dashed {
        " stroke-dasharray=\"6,4\""
    } else {
        ""
    };
    format!(
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash} points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Render labeled Lorenz curves plus the equality diagonal into a
/// standalone SVG document. Curves are drawn in input order.
pub fn lorenz_svg(curves: &[(String, Vec<(f64, f64)>)]) -> String {
    let total = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" \
         viewBox=\"0 0 {total} {total}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" \
         fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));
    // equality diagonal
    out.push_str(&polyline(&[(0.0, 0.0), (1.0, 1.0)], "#7f7f7f", true));
    for (i, (label, points)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        out.push_str(&polyline(points, color, false));
        let y = MARGIN + 16.0 + 16.0 * i as f64;
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{y:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
             fill=\"{color}\">{label}</text>\n",
            MARGIN + 10.0
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Number of `<polyline>` elements in an SVG document (test helper for
/// callers; cheap substring count).
pub fn polyline_count(svg: &str) -> usize {
    svg.matches("<polyline").count()
}
