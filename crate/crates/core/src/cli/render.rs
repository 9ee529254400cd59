//! SVG figures of scenes, defect generations, lifting cells, stressed
//! frameworks and box grids.
//!
//! Everything is drawn in window coordinates under one global transform, so
//! figures of the same window overlay exactly.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::{ConvexPolygon, Rect};
use crate::growth::BoxGrid;
use crate::stress::Framework;

/// Pixels along the longer window side.
pub const DEFAULT_SIZE_PX: f64 = 800.0;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("no data for layer {0}")]
    MissingLayer(&'static str),
    #[error("nothing to render: no layers requested")]
    NoLayers,
    #[error("window {0:?} is empty")]
    BadWindow(Rect),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Holes,
    Defects,
    Cells,
    Framework,
    Boxes,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Holes => "holes",
            Layer::Defects => "defects",
            Layer::Cells => "cells",
            Layer::Framework => "framework",
            Layer::Boxes => "boxes",
        }
    }
}

impl std::str::FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "holes" => Ok(Layer::Holes),
            "defects" => Ok(Layer::Defects),
            "cells" => Ok(Layer::Cells),
            "framework" => Ok(Layer::Framework),
            "boxes" => Ok(Layer::Boxes),
            _ => Err(format!("unknown layer {s:?} (holes, defects, cells, framework, boxes)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub layers: Vec<Layer>,
    /// Outline drawn on top of everything.
    pub core: Option<Rect>,
    pub size_px: f64,
}

impl RenderSpec {
    pub fn new(layers: Vec<Layer>) -> Self {
        RenderSpec {
            layers,
            core: None,
            size_px: DEFAULT_SIZE_PX,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderData {
    pub window: Rect,
    pub holes: Option<Vec<ConvexPolygon>>,
    /// `defects[g]` are the new defects of generation `g + 1`.
    pub defects: Option<Vec<Vec<ConvexPolygon>>>,
    pub cells: Option<Vec<ConvexPolygon>>,
    pub framework: Option<(Framework, Option<Vec<f64>>)>,
    /// Grid and box side.
    pub boxes: Option<(BoxGrid, f64)>,
}

impl RenderData {
    pub fn new(window: Rect) -> Self {
        RenderData {
            window,
            holes: None,
            defects: None,
            cells: None,
            framework: None,
            boxes: None,
        }
    }
}

/// Line style of generation `g`: holes solid, then dash, then dots.
pub fn generation_dash(g: usize) -> Option<&'static str> {
    match g {
        0 => None,
        1 => Some("8 4"),
        _ => Some("1.5 3"),
    }
}

fn path_d(p: &ConvexPolygon) -> String {
    let mut d = String::new();
    for (k, v) in p.vertices().iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, v.x, v.y);
    }
    d.push('Z');
    d
}

fn polygon_path(out: &mut String, class: &str, p: &ConvexPolygon, dash: Option<&str>, fill: &str) {
    let dash = dash.map(|d| format!(" stroke-dasharray=\"{d}\"")).unwrap_or_default();
    let _ = writeln!(out, "<path class=\"{class}\" d=\"{}\" fill=\"{fill}\"{dash}/>", path_d(p));
}

fn rect_el(out: &mut String, class: &str, r: &Rect, fill: &str, extra: &str) {
    let _ = writeln!(
        out,
        "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"{extra}/>",
        r.xmin,
        r.ymin,
        r.width(),
        r.height()
    );
}

/// Renders the requested layers in order over the window outline.
pub fn svg_render(spec: &RenderSpec, data: &RenderData) -> Result<String, RenderError> {
    if spec.layers.is_empty() {
        return Err(RenderError::NoLayers);
    }
    let w = data.window;
    if !w.is_valid() {
        return Err(RenderError::BadWindow(w));
    }
    let scale = spec.size_px / w.width().max(w.height());
    let (wpx, hpx) = (w.width() * scale, w.height() * scale);
    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{wpx}\" height=\"{hpx}\" viewBox=\"0 0 {wpx} {hpx}\">"
    );
    // y up, window corner at the origin of the picture
    let _ = writeln!(
        s,
        "<g transform=\"matrix({scale} 0 0 {} {} {})\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" style=\"vector-effect:non-scaling-stroke\">",
        -scale,
        -scale * w.xmin,
        scale * w.ymax
    );
    rect_el(&mut s, "window", &w, "none", "");
    for &layer in &spec.layers {
        let _ = writeln!(s, "<g class=\"layer-{}\">", layer.name());
        match layer {
            Layer::Holes => {
                let holes = data.holes.as_ref().ok_or(RenderError::MissingLayer("holes"))?;
                for p in holes {
                    polygon_path(&mut s, "hole", p, generation_dash(0), "#d8d8d8");
                }
            }
            Layer::Defects => {
                let gens = data.defects.as_ref().ok_or(RenderError::MissingLayer("defects"))?;
                for (g, defects) in gens.iter().enumerate() {
                    let class = format!("defect gen{}", g + 1);
                    for p in defects {
                        polygon_path(&mut s, &class, p, generation_dash(g + 1), "none");
                    }
                }
            }
            Layer::Cells => {
                let cells = data.cells.as_ref().ok_or(RenderError::MissingLayer("cells"))?;
                for p in cells {
                    polygon_path(&mut s, "cell", p, None, "none");
                }
            }
            Layer::Framework => {
                let (fw, stress) = data.framework.as_ref().ok_or(RenderError::MissingLayer("framework"))?;
                let smax = stress
                    .as_ref()
                    .map(|st| st.iter().fold(0.0f64, |m, &x| m.max(x.abs())))
                    .filter(|&m| m > 0.0);
                for (e, &(i, j)) in fw.edges.iter().enumerate() {
                    let width = match (stress, smax) {
                        (Some(st), Some(m)) => 0.5 + 3.5 * st[e].abs() / m,
                        _ => 1.0,
                    };
                    let (a, b) = (fw.vertices[i], fw.vertices[j]);
                    let _ = writeln!(
                        s,
                        "<path class=\"edge\" d=\"M{} {} L{} {}\" stroke-width=\"{width:.3}\"/>",
                        a.x, a.y, b.x, b.y
                    );
                }
            }
            Layer::Boxes => {
                let (grid, side) = data.boxes.as_ref().ok_or(RenderError::MissingLayer("boxes"))?;
                for j in 0..grid.ny {
                    for i in 0..grid.nx {
                        let r = Rect::new(
                            i as f64 * side,
                            (i + 1) as f64 * side,
                            j as f64 * side,
                            (j + 1) as f64 * side,
                        );
                        if grid.is_open(i, j) {
                            rect_el(&mut s, "box open", &r, "#7fbf7f", "");
                        } else {
                            rect_el(&mut s, "box closed", &r, "none", "");
                        }
                    }
                }
            }
        }
        let _ = writeln!(s, "</g>");
    }
    if let Some(core) = spec.core {
        rect_el(&mut s, "core", &core, "none", " stroke=\"red\" stroke-dasharray=\"4 2\"");
    }
    let _ = writeln!(s, "</g>\n</svg>");
    Ok(s)
}
