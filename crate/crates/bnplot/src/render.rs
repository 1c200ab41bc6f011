//! SVG output.
//!
//! Normalized plot coordinates map uniformly onto the canvas: `x` in `[0, 1]`
//! spans the width and `y` in `[0, h]` spans `h * width` pixels, with `y = 0`
//! at the bottom edge. Dots are emitted in layout order and carry their
//! layout index in a `data-index` attribute.

use std::collections::HashMap;
use std::fmt::Write;

use bnplot_core::{DotLayout, HeightProfile};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("palette has {palette} colors but the layout uses {classes} classes")]
    PaletteTooShort { palette: usize, classes: usize },
    #[error("{icons} icons given for {dots} dots")]
    IconCount { icons: usize, dots: usize },
}

/// Ten well-separated categorical colors.
pub const DEFAULT_PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeStyle {
    pub stroke: String,
    pub stroke_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub dot_radius_px: f64,
    pub canvas_width_px: u32,
    pub palette: Vec<String>,
    pub background: String,
    pub envelope: Option<EnvelopeStyle>,
}

impl RenderStyle {
    /// Dots drawn at the layout's own radius on a canvas `width` pixels wide.
    pub fn for_layout(layout: &DotLayout, width: u32) -> Self {
        RenderStyle {
            dot_radius_px: layout.domain.radius * width as f64,
            canvas_width_px: width,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
            background: "#ffffff".into(),
            envelope: None,
        }
    }

    fn canvas_height(&self, layout: &DotLayout) -> f64 {
        self.canvas_width_px as f64 * layout.height()
    }

    /// Pixel center of a normalized point.
    pub fn to_pixels(&self, layout: &DotLayout, x: f64, y: f64) -> (f64, f64) {
        let w = self.canvas_width_px as f64;
        (x * w, (layout.height() - y) * w)
    }

    /// Inverse of [`RenderStyle::to_pixels`].
    pub fn from_pixels(&self, layout: &DotLayout, px: f64, py: f64) -> (f64, f64) {
        let w = self.canvas_width_px as f64;
        (px / w, layout.height() - py / w)
    }
}

fn class_count(layout: &DotLayout) -> usize {
    layout
        .labels
        .as_ref()
        .and_then(|l| l.iter().max())
        .map_or(1, |&m| m as usize + 1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, layout: &DotLayout, style: &RenderStyle) {
    let w = style.canvas_width_px;
    let h = style.canvas_height(layout);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{w}" height="{h:.4}" viewBox="0 0 {w} {h:.4}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{w}" height="{h:.4}" fill="{}"/>"#,
        escape(&style.background)
    )
    .unwrap();
}

fn envelope(out: &mut String, layout: &DotLayout, style: &RenderStyle, profile: &HeightProfile) {
    let Some(env) = &style.envelope else {
        return;
    };
    let h = layout.height();
    let samples = profile.samples();
    for side in [1.0, -1.0] {
        let points: Vec<String> = samples
            .iter()
            .map(|&(x, band)| {
                let y = 0.5 * h + side * 0.5 * band.min(h);
                let (px, py) = style.to_pixels(layout, x, y);
                format!("{px:.4},{py:.4}")
            })
            .collect();
        writeln!(
            out,
            r#"<polyline class="envelope" fill="none" stroke="{}" stroke-width="{}" points="{}"/>"#,
            escape(&env.stroke),
            env.stroke_width,
            points.join(" ")
        )
        .unwrap();
    }
}

fn footer(out: &mut String, layout: &DotLayout, style: &RenderStyle) {
    let w = style.canvas_width_px;
    let h = style.canvas_height(layout);
    writeln!(
        out,
        r##"<line class="baseline" x1="0" y1="{h:.4}" x2="{w}" y2="{h:.4}" stroke="#333333" stroke-width="1"/>"##
    )
    .unwrap();
    out.push_str("</svg>\n");
}

/// One circle per dot, colored by class.
pub fn render_svg(layout: &DotLayout, style: &RenderStyle) -> Result<String, RenderError> {
    render_svg_with_envelope(layout, style, None)
}

/// [`render_svg`], plus the centrality band outline when both an envelope
/// style and a height profile are given.
pub fn render_svg_with_envelope(
    layout: &DotLayout,
    style: &RenderStyle,
    profile: Option<&HeightProfile>,
) -> Result<String, RenderError> {
    let classes = class_count(layout);
    if style.palette.len() < classes {
        return Err(RenderError::PaletteTooShort {
            palette: style.palette.len(),
            classes,
        });
    }
    let mut out = String::new();
    header(&mut out, layout, style);
    if let Some(profile) = profile {
        envelope(&mut out, layout, style, profile);
    }
    for (i, p) in layout.dots.iter().enumerate() {
        let class = layout.labels.as_ref().map_or(0, |l| l[i] as usize);
        let (cx, cy) = style.to_pixels(layout, p.x, p.y);
        writeln!(
            out,
            r#"<circle data-index="{i}" cx="{cx:.4}" cy="{cy:.4}" r="{:.4}" fill="{}"/>"#,
            style.dot_radius_px,
            escape(&style.palette[class])
        )
        .unwrap();
    }
    footer(&mut out, layout, style);
    Ok(out)
}

/// Places one square icon of edge `2 * dot_radius_px` centered on each dot.
///
/// Icons used once are inlined as `<image>`; a reference shared by several
/// dots is defined once and instanced with `<use>`.
pub fn render_icons(
    layout: &DotLayout,
    icons: &[String],
    style: &RenderStyle,
) -> Result<String, RenderError> {
    if icons.len() != layout.len() {
        return Err(RenderError::IconCount {
            icons: icons.len(),
            dots: layout.len(),
        });
    }
    let mut uses: HashMap<&str, usize> = HashMap::new();
    for icon in icons {
        *uses.entry(icon.as_str()).or_default() += 1;
    }
    // Definition ids in first-use order.
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for icon in icons {
        if uses[icon.as_str()] > 1 && !ids.contains_key(icon.as_str()) {
            ids.insert(icon, ids.len());
        }
    }

    let size = 2.0 * style.dot_radius_px;
    let half = style.dot_radius_px;
    let mut out = String::new();
    header(&mut out, layout, style);
    if !ids.is_empty() {
        let mut defs: Vec<(&str, usize)> = ids.iter().map(|(&k, &v)| (k, v)).collect();
        defs.sort_by_key(|&(_, id)| id);
        out.push_str("<defs>\n");
        for (href, id) in defs {
            writeln!(
                out,
                r#"<image id="icon-{id}" x="{:.4}" y="{:.4}" width="{size:.4}" height="{size:.4}" xlink:href="{}"/>"#,
                -half,
                -half,
                escape(href)
            )
            .unwrap();
        }
        out.push_str("</defs>\n");
    }
    for (i, (p, icon)) in layout.dots.iter().zip(icons).enumerate() {
        let (cx, cy) = style.to_pixels(layout, p.x, p.y);
        match ids.get(icon.as_str()) {
            Some(id) => writeln!(
                out,
                r##"<use data-index="{i}" x="{cx:.4}" y="{cy:.4}" xlink:href="#icon-{id}"/>"##
            ),
            None => writeln!(
                out,
                r#"<image data-index="{i}" x="{:.4}" y="{:.4}" width="{size:.4}" height="{size:.4}" xlink:href="{}"/>"#,
                cx - half,
                cy - half,
                escape(icon)
            ),
        }
        .unwrap();
    }
    footer(&mut out, layout, style);
    Ok(out)
}
