//! Static SVG and ASCII renders of placed rectangles.
//!
//! Output depends only on the input, so identical documents render to
//! identical bytes. The first line of every render names the format version.

use std::fmt::Write;

use crate::formats::Rect;

pub const RENDER_FORMAT: &str = "mondrian-render/1";

/// Widest ASCII render, in characters.
pub const ASCII_COLUMNS: u32 = 64;

const LABELS: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

/// Board coordinates have the origin bottom left; SVG's is top left, so rows
/// are flipped.
pub fn svg(width: u32, height: u32, rects: &[Rect], title: &str) -> String {
    let mut s = String::new();
    let stroke = (width.max(height) as f64 / 400.0).max(0.05);
    writeln!(s, "<!-- {RENDER_FORMAT} -->").unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" data-format="{RENDER_FORMAT}" viewBox="0 0 {width} {height}" width="{}" height="{}">"#,
        scale_px(width, height).0,
        scale_px(width, height).1
    )
    .unwrap();
    writeln!(s, "  <title>{}</title>", escape(title)).unwrap();
    writeln!(
        s,
        r#"  <rect class="board" x="0" y="0" width="{width}" height="{height}" fill="white" stroke="black" stroke-width="{}"/>"#,
        fmt_num(stroke * 2.0)
    )
    .unwrap();
    for (i, r) in rects.iter().enumerate() {
        let top = height as i64 - r.y as i64 - r.h as i64;
        writeln!(
            s,
            r#"  <rect class="piece" data-index="{i}" x="{}" y="{top}" width="{}" height="{}" fill="{}" stroke="black" stroke-width="{}"/>"#,
            r.x,
            r.w,
            r.h,
            fill(i),
            fmt_num(stroke)
        )
        .unwrap();
        let font = (r.w.min(r.h) as f64 / 4.0).min(r.w as f64 / 6.0).max(0.5);
        writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{}x{}</text>"#,
            fmt_num(r.x as f64 + r.w as f64 / 2.0),
            fmt_num(top as f64 + r.h as f64 / 2.0),
            fmt_num(font),
            r.w,
            r.h
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Output size: the longer side becomes 600 pixels.
fn scale_px(width: u32, height: u32) -> (u32, u32) {
    let long = width.max(height).max(1) as f64;
    let k = 600.0 / long;
    (
        ((width as f64 * k).round() as u32).max(1),
        ((height as f64 * k).round() as u32).max(1),
    )
}

fn fill(i: usize) -> String {
    // Golden-angle hue steps keep neighbouring indices apart.
    let hue = (i as u64 * 137_508 / 1000) % 360;
    format!("hsl({hue},55%,80%)")
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_owned()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// A character grid of at most [`ASCII_COLUMNS`] columns, followed by a
/// legend. Each cell shows the piece covering its centre, `.` if none.
pub fn ascii(width: u32, height: u32, rects: &[Rect]) -> String {
    let cols = width.clamp(1, ASCII_COLUMNS);
    // Terminal cells are about twice as tall as wide.
    let rows = ((height as u64 * cols as u64).div_ceil(2 * width.max(1) as u64)).max(1) as u32;
    let mut s = format!("{RENDER_FORMAT} ascii {width}x{height}\n");
    for row in (0..rows).rev() {
        for col in 0..cols {
            // Cell centre in board units, scaled by 2*cols*rows to stay integral.
            let cx = (2 * col as u64 + 1) * width as u64;
            let cy = (2 * row as u64 + 1) * height as u64;
            let hit = rects.iter().position(|r| {
                let (x0, x1) = (
                    r.x as u64 * 2 * cols as u64,
                    (r.x + r.w) as u64 * 2 * cols as u64,
                );
                let (y0, y1) = (
                    r.y as u64 * 2 * rows as u64,
                    (r.y + r.h) as u64 * 2 * rows as u64,
                );
                x0 <= cx && cx < x1 && y0 <= cy && cy < y1
            });
            s.push(match hit {
                Some(i) => label(i),
                None => '.',
            });
        }
        s.push('\n');
    }
    for (i, r) in rects.iter().enumerate() {
        writeln!(s, "{} {}x{} at ({}, {})", label(i), r.w, r.h, r.x, r.y).unwrap();
    }
    s
}

fn label(i: usize) -> char {
    if i < LABELS.len() {
        LABELS[i] as char
    } else {
        '#'
    }
}
