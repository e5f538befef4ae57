use std::fmt::Write;

use super::Figure;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const TICKS: usize = 5;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn spanning(values: impl Iterator<Item = f64>) -> Axis {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if hi > lo {
            Axis { lo, hi }
        } else {
            Axis {
                lo: lo - 0.5,
                hi: hi + 0.5,
            }
        }
    }

    fn unit(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }

    fn tick(&self, i: usize) -> f64 {
        self.lo + (self.hi - self.lo) * i as f64 / (TICKS - 1) as f64
    }
}

fn polyline(points: &[(f64, f64)], x: &Axis, y: &Axis, style: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|&(k, e)| {
            let px = MARGIN + x.unit(k) * (WIDTH - 2.0 * MARGIN);
            let py = HEIGHT - MARGIN - y.unit(e) * (HEIGHT - 2.0 * MARGIN);
            format!("{px:.2},{py:.2}")
        })
        .collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"black\"{style} points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Standalone SVG of the curve (solid) and the overlay, if any (dashed), on
/// linear axes with five labelled ticks each.
pub fn render_svg(fig: &Figure) -> String {
    let ours: Vec<(f64, f64)> = fig
        .samples
        .iter()
        .map(|s| (s.k.to_f64(), s.e0.to_f64()))
        .collect();
    let overlay = fig.overlay.as_deref().unwrap_or(&[]);
    let all = || ours.iter().chain(overlay);
    let x = Axis::spanning(all().map(|p| p.0));
    let y = Axis::spanning(all().map(|p| p.1));

    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .unwrap();
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    writeln!(
        s,
        "  <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" stroke=\"black\"/>"
    )
    .unwrap();
    writeln!(
        s,
        "  <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{left}\" y2=\"{top}\" stroke=\"black\"/>"
    )
    .unwrap();
    for i in 0..TICKS {
        let frac = i as f64 / (TICKS - 1) as f64;
        let px = left + frac * (right - left);
        let py = bottom - frac * (bottom - top);
        writeln!(
            s,
            "  <line x1=\"{px:.2}\" y1=\"{bottom}\" x2=\"{px:.2}\" y2=\"{}\" stroke=\"black\"/>",
            bottom + 5.0
        )
        .unwrap();
        writeln!(
            s,
            "  <text x=\"{px:.2}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{:.4}</text>",
            bottom + 20.0,
            x.tick(i)
        )
        .unwrap();
        writeln!(
            s,
            "  <line x1=\"{}\" y1=\"{py:.2}\" x2=\"{left}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            left - 5.0
        )
        .unwrap();
        writeln!(
            s,
            "  <text x=\"{}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>",
            left - 8.0,
            py + 4.0,
            y.tick(i)
        )
        .unwrap();
    }
    writeln!(
        s,
        "  <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">k</text>",
        WIDTH / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        s,
        "  <text x=\"15\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">E0</text>",
        HEIGHT / 2.0
    )
    .unwrap();
    s.push_str(&polyline(&ours, &x, &y, ""));
    if !overlay.is_empty() {
        s.push_str(&polyline(overlay, &x, &y, " stroke-dasharray=\"6,4\""));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::CurveSample;
    use crate::numerics::{BigReal, Precision};

    fn fig(overlay: Option<Vec<(f64, f64)>>) -> Figure {
        let p = Precision::digits(50);
        let samples = [("0.01", "0.5"), ("0.1", "1.3"), ("0.25", "2")]
            .iter()
            .map(|(k, e)| CurveSample {
                k: BigReal::parse(k, p).unwrap(),
                e0: BigReal::parse(e, p).unwrap(),
            })
            .collect();
        Figure { samples, overlay }
    }

    #[test]
    fn structure() {
        let s = render_svg(&fig(None));
        assert_eq!(s.matches("<svg").count(), 1);
        assert_eq!(s.matches("<polyline").count(), 1);
        assert_eq!(s.matches("<text").count(), 2 * TICKS + 2);
        let s = render_svg(&fig(Some(vec![(0.02, 0.6), (0.2, 1.9)])));
        assert_eq!(s.matches("<polyline").count(), 2);
        assert_eq!(s.matches("stroke-dasharray").count(), 1);
    }
}
