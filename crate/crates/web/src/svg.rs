use std::fmt::Write as _;

use pn_bundles::BettiLattice;

const BOX_W: f64 = 150.0;
const BOX_H: f64 = 52.0;
const GAP_X: f64 = 24.0;
const ROW_H: f64 = 104.0;
const MARGIN: f64 = 20.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Hasse diagram with grade 0 (the minimal pair) at the bottom, each grade
/// centred on its own row, nodes in the lattice's sorted order.
pub fn hasse(l: &BettiLattice) -> String {
    let grades: Vec<usize> = l.nodes().iter().map(|c| l.grade(c)).collect();
    let top = grades.iter().copied().max().unwrap_or(0);
    let widest = l.rank_sizes().into_iter().max().unwrap_or(1);
    let width = 2.0 * MARGIN + widest as f64 * (BOX_W + GAP_X) - GAP_X;
    let height = 2.0 * MARGIN + top as f64 * ROW_H + BOX_H;

    let mut slot = vec![0usize; top + 1];
    let centres: Vec<(f64, f64)> = grades
        .iter()
        .map(|&g| {
            let count = l.rank_sizes()[g] as f64;
            let row_w = count * (BOX_W + GAP_X) - GAP_X;
            let x = (width - row_w) / 2.0 + slot[g] as f64 * (BOX_W + GAP_X) + BOX_W / 2.0;
            slot[g] += 1;
            let y = MARGIN + (top - g) as f64 * ROW_H + BOX_H / 2.0;
            (x, y)
        })
        .collect();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}" font-family="monospace" font-size="11">"#
    );
    for e in l.hasse() {
        let (x0, y0) = centres[e.from];
        let (x1, y1) = centres[e.to];
        let _ = writeln!(
            s,
            r##"<g class="edge"><line x1="{x0}" y1="{}" x2="{x1}" y2="{}" stroke="#789" /><text x="{}" y="{}" fill="#567">+{}</text></g>"##,
            y0 - BOX_H / 2.0,
            y1 + BOX_H / 2.0,
            (x0 + x1) / 2.0 + 4.0,
            (y0 + y1) / 2.0,
            e.add
        );
    }
    for (c, &(x, y)) in l.nodes().iter().zip(&centres) {
        let p = l.pair(c);
        let lines = [
            format!("c={c}"),
            format!("a={} b={}", p.a(), p.b()),
            format!("reg {}", p.regularity()),
        ];
        let _ = write!(
            s,
            r##"<g class="node"><title>{}</title><rect x="{}" y="{}" width="{BOX_W}" height="{BOX_H}" rx="6" fill="#f4f7fb" stroke="#345" />"##,
            escape(&p.to_string()),
            x - BOX_W / 2.0,
            y - BOX_H / 2.0
        );
        for (k, line) in lines.iter().enumerate() {
            let _ = write!(
                s,
                r#"<text x="{x}" y="{}" text-anchor="middle" textLength="{}" lengthAdjust="spacingAndGlyphs">{}</text>"#,
                y - 10.0 + 14.0 * k as f64,
                (line.len() as f64 * 6.6).min(BOX_W - 10.0),
                escape(line)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
