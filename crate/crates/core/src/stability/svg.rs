use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};

use super::wall::WallDiagram;
use crate::rational::{frac, rat, Rational};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const SAMPLES: i64 = 400;

fn fill(sign: i8) -> &'static str {
    match sign {
        1 => "#c6dbef",
        -1 => "#fdd0a2",
        _ => "#e0e0e0",
    }
}

/// Renders chambers as filled cells and the wall as polylines, with `beta`
/// horizontal and `alpha` vertical.
pub fn render_svg(d: &WallDiagram) -> String {
    let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
    let (b0, b1) = (f(&d.grid.beta.0), f(&d.grid.beta.1));
    let (a0, a1) = (f(&d.grid.alpha.0), f(&d.grid.alpha.1));
    let bw = if b1 > b0 { b1 - b0 } else { 1.0 };
    let aw = a1 - a0;
    let px = |b: f64| MARGIN + (b - b0) / bw * SIZE;
    let py = |a: f64| MARGIN + (a1 - a) / aw * SIZE;
    let total = SIZE + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let cw = SIZE / d.betas.len() as f64;
    let ch = SIZE / d.alphas.len() as f64;
    let _ = writeln!(out, r#"<g id="chambers" shape-rendering="crispEdges">"#);
    for (i, row) in d.cells.iter().enumerate() {
        let top = MARGIN + SIZE - (i as f64 + 1.0) * ch;
        for (j, &s) in row.iter().enumerate() {
            let left = MARGIN + j as f64 * cw;
            let _ = writeln!(
                out,
                r#"<rect x="{left:.3}" y="{top:.3}" width="{cw:.3}" height="{ch:.3}" fill="{}"/>"#,
                fill(s)
            );
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g id="wall" fill="none" stroke="#08306b" stroke-width="2">"##);
    if !d.degenerate() {
        for line in wall_polylines(d) {
            let pts: Vec<String> = line.iter().map(|(b, a)| format!("{:.3},{:.3}", px(*b), py(*a))).collect();
            let _ = writeln!(out, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#000"/>"##
    );
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">beta [{b0}, {b1}]</text>"#, MARGIN, total - 12.0);
    let _ = writeln!(out, r#"<text x="4" y="{}" font-size="12">alpha (0, {a1}]</text>"#, MARGIN - 12.0);
    if d.degenerate() {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="14">degenerate: no wall</text>"#,
            MARGIN + 8.0,
            MARGIN + 20.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Points `(beta, alpha)` on the wall inside the plotted window. The wall is
/// sampled exactly in `A = alpha^2`; only the final coordinates are floats.
pub(crate) fn wall_polylines(d: &WallDiagram) -> Vec<Vec<(f64, f64)>> {
    let c = &d.conic;
    let (blo, bhi) = (&d.grid.beta.0, &d.grid.beta.1);
    let (alo, ahi) = (&d.grid.alpha.0, &d.grid.alpha.1);
    let mut lines: Vec<Vec<(f64, f64)>> = Vec::new();
    if c.c_a.is_zero() {
        // The wall is a union of vertical lines at the real roots in beta.
        for b in real_roots(&c.c_bb, &c.c_b, &c.c_1) {
            if b >= blo.to_f64().unwrap_or(f64::NAN) && b <= bhi.to_f64().unwrap_or(f64::NAN) {
                lines.push(vec![(b, alo.to_f64().unwrap_or(0.0)), (b, ahi.to_f64().unwrap_or(0.0))]);
            }
        }
        return lines;
    }
    let ahi_sq = ahi * ahi;
    let alo_sq = alo * alo;
    let mut current: Vec<(f64, f64)> = Vec::new();
    for k in 0..=SAMPLES {
        let beta = blo + (bhi - blo) * frac(k, SAMPLES);
        let a = -(&c.c_bb * &beta * &beta + &c.c_b * &beta + &c.c_1) / &c.c_a;
        if a.is_positive() && a <= ahi_sq && a >= alo_sq {
            let b = beta.to_f64().unwrap_or(f64::NAN);
            current.push((b, a.to_f64().unwrap_or(f64::NAN).sqrt()));
        } else if !current.is_empty() {
            lines.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        lines.push(current);
    }
    lines
}

fn real_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<f64> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![(-c / b).to_f64().unwrap_or(f64::NAN)];
    }
    let disc = b * b - rat(4) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let s = disc.to_f64().unwrap_or(f64::NAN).sqrt();
    let (af, bf) = (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN));
    let mut roots = vec![(-bf - s) / (2.0 * af), (-bf + s) / (2.0 * af)];
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::ChernVector;
    use crate::ring::preset;
    use crate::stability::{wall_scan, Grid};

    fn diagram(e_twist: i64) -> WallDiagram {
        let x = preset("P3").unwrap();
        let r = &x.ring;
        let o = ChernVector::structure_sheaf(r);
        let f = ChernVector::line_bundle(r, &r.divisor(&[e_twist]).unwrap()).unwrap();
        let g = Grid::new((rat(0), rat(2)), (rat(-2), rat(2)), 50, 50);
        wall_scan(r, &o, &f, &r.divisor(&[1]).unwrap(), &g).unwrap()
    }

    #[test]
    fn single_branch_for_adjacent_line_bundles() {
        let d = diagram(1);
        assert_eq!(wall_polylines(&d).len(), 1);
        let svg = render_svg(&d);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<rect").count(), 50 * 50 + 1);
    }

    #[test]
    fn degenerate_diagram_has_uniform_fill() {
        let d = diagram(0);
        let svg = render_svg(&d);
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert!(svg.contains("degenerate"));
        assert_eq!(svg.matches(fill(0)).count(), 50 * 50);
    }

    #[test]
    fn output_is_reproducible() {
        assert_eq!(render_svg(&diagram(1)), render_svg(&diagram(1)));
    }
}
