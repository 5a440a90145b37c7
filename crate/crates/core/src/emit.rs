//! CSV, JSON and SVG writers.

use crate::error::{Error, Result};
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

/// `%.9g`-style formatting: 9 significant digits, exponent form outside [1e-4, 1e9).
pub fn fmt9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    let s = format!("{:.8e}", v);
    let (mant, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    // rounding may have bumped the exponent
    let e = if exp != e { exp } else { e };
    if (-4..9).contains(&e) {
        let decimals = (8 - e).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        let m = trim(mant);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// CSV text with header `x,value` and LF line endings.
pub fn csv_string(x: &[f64], y: &[f64]) -> String {
    let mut out = String::with_capacity(24 * x.len() + 8);
    out.push_str("x,value\n");
    for (a, b) in x.iter().zip(y) {
        out.push_str(&fmt9(*a));
        out.push(',');
        out.push_str(&fmt9(*b));
        out.push('\n');
    }
    out
}

pub fn write_csv(path: impl AsRef<Path>, x: &[f64], y: &[f64]) -> Result<()> {
    fs::write(path, csv_string(x, y))?;
    Ok(())
}

/// Read two numeric columns; a non-numeric first line is taken as a header.
pub fn read_xy_csv(path: impl AsRef<Path>) -> Result<(Vec<f64>, Vec<f64>)> {
    let path = path.as_ref();
    let file = fs::File::open(path)?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split(',').map(str::trim);
        let (a, b) = (it.next().unwrap_or(""), it.next().unwrap_or(""));
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if i == 0 => continue,
            _ => {
                return Err(Error::Config(format!(
                    "{}:{}: expected two numeric columns",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok((xs, ys))
}

/// Pretty JSON with a trailing newline.
pub fn json_string<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Config(format!("serialisation failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: serde::Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    fs::write(path, json_string(value)?)?;
    Ok(())
}

/// One named curve of an SVG plot.
#[derive(Debug, Clone)]
pub struct Series<'a> {
    pub label: String,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

const COLORS: [&str; 6] = ["#000000", "#1f4fd8", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

/// Single-panel SVG: one polyline per series, axes with end ticks, legend.
pub fn svg_string(title: &str, series: &[Series<'_>]) -> String {
    let (w, h, m) = (640.0, 420.0, 56.0);
    let finite = |v: &&f64| v.is_finite();
    let xs = series.iter().flat_map(|s| s.x.iter()).filter(finite);
    let ys = series.iter().flat_map(|s| s.y.iter()).filter(finite);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let (mut y0, mut y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    y0 = y0.min(0.0);
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let (x0, x1) = if x1 > x0 { (x0, x1) } else { (x0 - 1.0, x0 + 1.0) };
    let px = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let py = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        w / 2.0,
        xml_escape(title)
    ));
    // axes
    let yz = if y0 <= 0.0 && y1 >= 0.0 { py(0.0) } else { h - m };
    s.push_str(&format!(
        "<g class=\"axes\" stroke=\"#444\" stroke-width=\"1\">\n<line x1=\"{m}\" y1=\"{yz:.2}\" x2=\"{:.2}\" y2=\"{yz:.2}\"/>\n<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{:.2}\"/>\n</g>\n",
        w - m,
        h - m
    ));
    let label = |x: f64, y: f64, anchor: &str, text: String| {
        format!("<text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"{anchor}\">{text}</text>\n")
    };
    s.push_str(&label(m, h - m + 16.0, "middle", fmt9(x0)));
    s.push_str(&label(w - m, h - m + 16.0, "middle", fmt9(x1)));
    s.push_str(&label(m - 6.0, py(y0) + 4.0, "end", fmt9(y0)));
    s.push_str(&label(m - 6.0, py(y1) + 4.0, "end", fmt9(y1)));
    s.push_str(&label(w / 2.0, h - 12.0, "middle", "x".into()));
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser
            .x
            .iter()
            .zip(ser.y)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(&a, &b)| format!("{:.2},{:.2}", px(a), py(b)))
            .collect();
        s.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
    }
    s.push_str("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n");
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let y = m + 8.0 + 18.0 * i as f64;
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            w - m - 150.0,
            w - m - 126.0,
            w - m - 120.0,
            y + 4.0,
            xml_escape(&ser.label)
        ));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn write_svg(path: impl AsRef<Path>, title: &str, series: &[Series<'_>]) -> Result<()> {
    fs::write(path, svg_string(title, series))?;
    Ok(())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digit_format() {
        assert_eq!(fmt9(0.408023711), "0.408023711");
        assert_eq!(fmt9(1.0), "1");
        assert_eq!(fmt9(-10.0), "-10");
        assert_eq!(fmt9(2.0 / 3.0), "0.666666667");
        assert_eq!(fmt9(1.234e-7), "1.234e-07");
        assert_eq!(fmt9(123456789.4), "123456789");
        assert_eq!(fmt9(1.5e12), "1.5e+12");
        assert_eq!(fmt9(0.0001), "0.0001");
        assert_eq!(fmt9(9.9999999999e-5), "0.0001");
        assert_eq!(fmt9(999999999.7), "1e+09");
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.csv");
        let x = [-1.0, 0.0, 0.25];
        let y = [0.1, 2.5e-12, -3.0];
        write_csv(&p, &x, &y).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("x,value\n"));
        assert!(!text.contains('\r'));
        let (rx, ry) = read_xy_csv(&p).unwrap();
        assert_eq!(rx, x);
        assert_eq!(ry, y);
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 1.0, 0.0];
        let s = svg_string(
            "t",
            &[
                Series { label: "a".into(), x: &x, y: &y },
                Series { label: "b".into(), x: &x, y: &y },
            ],
        );
        assert_eq!(s.matches("<polyline").count(), 2);
        assert!(s.contains("legend"));
    }
}
