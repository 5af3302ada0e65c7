//! Minimal standalone SVG plots of sweep records against `t`, one series per `p`.

use std::fmt::Write;

use super::records::fmt_real;
use crate::error::{Error, Result};
use crate::spectra::PslRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Betti,
    Lambda,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Betti => "betti",
            Channel::Lambda => "lambda",
        }
    }

    fn value(self, r: &PslRecord) -> Option<f64> {
        match self {
            Channel::Betti => Some(r.betti as f64),
            Channel::Lambda => r.lambda_min,
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    t0: f64,
    t1: f64,
    v0: f64,
    v1: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        LEFT + (t - self.t0) / (self.t1 - self.t0) * (WIDTH - LEFT - RIGHT)
    }
    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.v0) / (self.v1 - self.v0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn short(x: f64) -> String {
    let s = format!("{:.3}", x);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Plots `channel` of the degree-`q` records: a step plot for Betti numbers,
/// a broken line for `lambda_min` (gaps where it is absent).
pub fn emit_svg(records: &[PslRecord], channel: Channel, q: usize) -> Result<String> {
    let mut selected: Vec<&PslRecord> = records
        .iter()
        .filter(|r| r.q == q && channel.value(r).is_some())
        .collect();
    if selected.is_empty() {
        return Err(Error::NoData(format!("{} q={q}", channel.name())));
    }
    selected.sort_by(|a, b| a.key_cmp(b));

    let mut ps: Vec<f64> = selected.iter().map(|r| r.p).collect();
    ps.sort_by(f64::total_cmp);
    ps.dedup();

    let (mut t0, mut t1) = selected
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.t), b.max(r.t)));
    if t1 <= t0 {
        t0 -= 0.5;
        t1 += 0.5;
    }
    let vmax = selected
        .iter()
        .filter_map(|r| channel.value(r))
        .fold(0.0f64, f64::max);
    let frame = Frame {
        t0,
        t1,
        v0: 0.0,
        v1: if vmax > 0.0 { vmax * 1.1 } else { 1.0 },
    };

    let symbol = match channel {
        Channel::Betti => format!("β{q}"),
        Channel::Lambda => format!("λ{q}"),
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="yes"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, "<title>{symbol} vs t</title>");
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // axes
    let (xa, xb) = (frame.x(t0), frame.x(t1));
    let (ya, yb) = (frame.y(frame.v0), frame.y(frame.v1));
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{xa:.2}" y1="{ya:.2}" x2="{xb:.2}" y2="{ya:.2}"/><line x1="{xa:.2}" y1="{ya:.2}" x2="{xa:.2}" y2="{yb:.2}"/></g>"#
    );
    let _ = writeln!(s, r#"<g class="ticks" font-family="sans-serif" font-size="11">"#);
    for k in 0..=5 {
        let t = t0 + (t1 - t0) * k as f64 / 5.0;
        let x = frame.x(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{ya:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            ya + 5.0,
            ya + 18.0,
            short(t)
        );
        let v = frame.v0 + (frame.v1 - frame.v0) * k as f64 / 5.0;
        let y = frame.y(v);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{xa:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            xa - 5.0,
            xa - 8.0,
            y + 4.0,
            short(v)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">t</text>"#,
        (xa + xb) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">{symbol}</text>"#,
        (ya + yb) / 2.0,
        (ya + yb) / 2.0
    );

    for (k, p) in ps.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let series: Vec<&&PslRecord> = selected.iter().filter(|r| r.p == *p).collect();
        let mut d = String::new();
        match channel {
            Channel::Betti => {
                for (i, r) in series.iter().enumerate() {
                    let (x, y) = (frame.x(r.t), frame.y(r.betti as f64));
                    if i == 0 {
                        let _ = write!(d, "M{x:.2},{y:.2}");
                    } else {
                        let _ = write!(d, " H{x:.2} V{y:.2}");
                    }
                }
            }
            Channel::Lambda => {
                let mut pen_down = false;
                let mut all: Vec<&PslRecord> =
                    records.iter().filter(|r| r.q == q && r.p == *p).collect();
                all.sort_by(|a, b| a.t.total_cmp(&b.t));
                for r in all
                {
                    match r.lambda_min {
                        Some(v) => {
                            let cmd = if pen_down { 'L' } else { 'M' };
                            let _ = write!(d, "{cmd}{:.2},{:.2} ", frame.x(r.t), frame.y(v));
                            pen_down = true;
                        }
                        None => pen_down = false,
                    }
                }
            }
        }
        let _ = writeln!(
            s,
            r#"<g class="series" data-p="{}" stroke="{color}" fill="{color}">"#,
            fmt_real(*p)
        );
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke-width="2"/>"#,
            d.trim_end()
        );
        for r in &series {
            let v = channel.value(r).unwrap_or_default();
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" data-t="{}" data-value="{}"/>"#,
                frame.x(r.t),
                frame.y(v),
                fmt_real(r.t),
                fmt_real(v)
            );
        }
        let _ = writeln!(s, "</g>");
        let ly = TOP + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<g class="legend" font-family="sans-serif" font-size="12"><line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">p = {}</text></g>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            short(*p)
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
