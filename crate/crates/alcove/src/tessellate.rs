//! Alcove picture of the group as an SVG scene. Each element of the
//! ball of a given radius becomes one triangle (the image of the
//! fundamental alcove under the element's affine map), wall segments
//! are colored by the generator whose reflection crosses them, and
//! fills encode either the region decomposition or a lower interval.

use crate::coxeter::{ball, bruhat_leq, Element, Generator};
use crate::families::classify;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Fill rule for the scene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorMode {
    /// Gray per region: big lightest, thin between, thick darkest.
    Region,
    /// Shade the lower Bruhat interval of the given element.
    Interval(Element),
}

/// Vertices of the fundamental alcove, in the order south-west,
/// south-east, north. Wall `s1` joins indices 0 and 2, wall `s2`
/// indices 0 and 1, wall `s0` indices 1 and 2.
const FUNDAMENTAL: [[i32; 2]; 3] = [[0, 0], [2, 0], [1, 1]];

fn wall_indices(g: Generator) -> (usize, usize) {
    match g {
        Generator::S1 => (0, 2),
        Generator::S2 => (0, 1),
        Generator::S0 => (1, 2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub element: Element,
    pub verts: [[i32; 2]; 3],
    /// Coarse region (`identity`, `big`, `thick`, `thin`).
    pub region: &'static str,
    /// In interval mode, whether the element lies in the interval.
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub radius: u32,
    pub mode: ColorMode,
    pub triangles: Vec<Triangle>,
}

fn coarse_region(w: &Element) -> &'static str {
    let full = classify(w).region();
    full.split('-').next().unwrap()
}

impl Scene {
    pub fn build(radius: u32, mode: ColorMode) -> Scene {
        let mut elements: Vec<Element> = ball(radius).into_iter().flatten().collect();
        elements.sort_by_key(|w| w.sort_key());
        let triangles = elements
            .into_iter()
            .map(|w| {
                let verts = FUNDAMENTAL.map(|p| w.apply(p));
                let shaded = match &mode {
                    ColorMode::Region => false,
                    ColorMode::Interval(top) => bruhat_leq(&w, top),
                };
                Triangle {
                    element: w,
                    verts,
                    region: coarse_region(&w),
                    shaded,
                }
            })
            .collect();
        Scene {
            radius,
            mode,
            triangles,
        }
    }

    pub fn svg(&self) -> String {
        const SCALE: i32 = 40;
        let px = |p: [i32; 2]| [SCALE * p[0], -SCALE * p[1]];

        let mut min = [i32::MAX; 2];
        let mut max = [i32::MIN; 2];
        for t in &self.triangles {
            for v in t.verts {
                let q = px(v);
                for i in 0..2 {
                    min[i] = min[i].min(q[i]);
                    max[i] = max[i].max(q[i]);
                }
            }
        }
        let margin = SCALE / 2;
        let (x0, y0) = (min[0] - margin, min[1] - margin);
        let (w, h) = (max[0] - min[0] + 2 * margin, max[1] - min[1] + 2 * margin);

        let mut out = String::new();
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\">"
        )
        .unwrap();
        writeln!(out, "<style>{STYLESHEET}</style>").unwrap();

        for t in &self.triangles {
            let points = t
                .verts
                .iter()
                .map(|&v| {
                    let q = px(v);
                    format!("{},{}", q[0], q[1])
                })
                .collect::<Vec<_>>()
                .join(" ");
            let fill_class = match self.mode {
                ColorMode::Region => format!("region-{}", t.region),
                ColorMode::Interval(_) => {
                    if t.shaded {
                        "in-interval".to_string()
                    } else {
                        "outside".to_string()
                    }
                }
            };
            writeln!(
                out,
                "<polygon class=\"alcove {}\" points=\"{}\" data-word=\"{}\"/>",
                fill_class,
                points,
                t.element.canonical_word()
            )
            .unwrap();
        }

        // walls, deduplicated: interior segments are shared by the two
        // alcoves they separate, with the same generator on both sides
        let mut walls: BTreeSet<([i32; 2], [i32; 2], Generator)> = BTreeSet::new();
        for t in &self.triangles {
            for g in crate::coxeter::GENS {
                let (i, j) = wall_indices(g);
                let (mut a, mut b) = (t.verts[i], t.verts[j]);
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                walls.insert((a, b, g));
            }
        }
        for (a, b, g) in walls {
            let (a, b) = (px(a), px(b));
            writeln!(
                out,
                "<line class=\"wall-s{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                g.index(),
                a[0],
                a[1],
                b[0],
                b[1]
            )
            .unwrap();
        }

        // mark the fundamental alcove
        writeln!(
            out,
            "<circle class=\"origin\" cx=\"{}\" cy=\"{}\" r=\"5\"/>",
            SCALE,
            -SCALE / 3
        )
        .unwrap();
        out.push_str("</svg>\n");
        out
    }
}

/// All scene styling in one place.
pub const STYLESHEET: &str = "\
.alcove { stroke: none; }\n\
.region-identity { fill: #ffffff; }\n\
.region-big { fill: #ededed; }\n\
.region-thin { fill: #c4c4c4; }\n\
.region-thick { fill: #8f8f8f; }\n\
.in-interval { fill: #90aec8; }\n\
.outside { fill: #f4f4f4; }\n\
.wall-s1 { stroke: #c0392b; stroke-width: 2; }\n\
.wall-s2 { stroke: #2980b9; stroke-width: 2; }\n\
.wall-s0 { stroke: #27ae60; stroke-width: 2; }\n\
.origin { fill: #111111; }\n";
