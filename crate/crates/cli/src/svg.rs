use std::fmt::Write as _;

use num_complex::Complex64;

const SIZE: f64 = 800.0;
const CENTER: f64 = 400.0;
const MARGIN: f64 = 30.0;

/// Static scatter plot of roots in the complex plane with the annulus
/// `r ≤ |z| ≤ R` drawn as two stroked circles.
pub fn roots_svg(title: &str, roots: &[Complex64], r: f64, big_r: f64) -> String {
    let extent = roots
        .iter()
        .map(|z| z.norm())
        .chain([r, big_r, 1.0])
        .filter(|x| x.is_finite())
        .fold(0.0f64, f64::max)
        * 1.05;
    let scale = (CENTER - MARGIN) / extent;
    let px = |x: f64| CENTER + x * scale;
    let py = |y: f64| CENTER - y * scale;
    let tick = tick_step(extent);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    let _ = writeln!(
        s,
        "<!-- {title}: 1 unit = {scale:.6} px, origin at ({CENTER}, {CENTER}), imaginary axis up; \
         annulus r = {r:.9}, R = {big_r:.9}; tick spacing {tick} -->"
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<g stroke="#888" stroke-width="1"><line x1="0" y1="{CENTER}" x2="{SIZE}" y2="{CENTER}"/><line x1="{CENTER}" y1="0" x2="{CENTER}" y2="{SIZE}"/></g>"##
    );

    let _ = write!(s, r##"<g stroke="#888" stroke-width="1">"##);
    let count = (extent / tick).floor() as i64;
    for k in (-count..=count).filter(|&k| k != 0) {
        let t = k as f64 * tick;
        let _ = write!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            px(t),
            CENTER - 4.0,
            px(t),
            CENTER + 4.0,
            CENTER - 4.0,
            py(t),
            CENTER + 4.0,
            py(t)
        );
    }
    let _ = writeln!(s, "</g>");

    for (radius, colour) in [(r, "#2a7"), (big_r, "#c33")] {
        if radius.is_finite() && radius > 0.0 {
            let _ = writeln!(
                s,
                r#"<circle cx="{CENTER}" cy="{CENTER}" r="{:.3}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
                radius * scale
            );
        }
    }

    let _ = write!(s, r##"<g fill="#1f4e9c">"##);
    for z in roots {
        let _ = write!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4"/>"#,
            px(z.re),
            py(z.im)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

/// A 1-2-5 step giving at most about ten ticks per half axis.
fn tick_step(extent: f64) -> f64 {
    let raw = extent / 10.0;
    let base = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * base)
        .find(|&step| step >= raw)
        .unwrap_or(10.0 * base)
}
