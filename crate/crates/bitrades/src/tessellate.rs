//! Labelled tessellation of the plane for 3-homogeneous bitrades.
//!
//! A 3-homogeneous bitrade lives on the torus, whose universal cover is the
//! Euclidean plane: the canonical triangulation unrolls to the tessellation
//! by unit triangles. Starting from a base shaded triangle at the origin,
//! rotating by 120 degrees about a triangle's own black, white, or star
//! vertex and applying the matching generator to its label propagates
//! first-half entries to every shaded triangle in a clipping disc; unshaded
//! triangles pick up the second-half entry of their witness dart. Label
//! agreement at every multiply-reached triangle is checked and any
//! disagreement is surfaced as an error.
//!
//! Axis convention: the origin is a black vertex, the positive x axis
//! passes through the nearest star vertex, and the positive y axis bisects
//! the base shaded triangle. Black vertices form the lattice spanned by
//! `(3/2, sqrt(3)/2)` and `(3/2, -sqrt(3)/2)`.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::bitrade::{is_k_homogeneous, Bitrade, Entry};
use crate::exact::{rotate_120, vertex_color, Point, Rat, Sqrt3};
use crate::permrep::tau_representation;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TessellateError {
    #[error("bitrade is not 3-homogeneous")]
    Not3Homogeneous,
    #[error("base entry {0} is not in the first half")]
    BaseNotInFirstHalf(String),
    #[error("clipping radius must be nonnegative")]
    NegativeRadius,
    #[error("label conflict at {at}: {first} vs {second} (corrupt input)")]
    LabelConflict {
        at: String,
        first: String,
        second: String,
    },
}

/// One unit triangle of the drawing, carrying its entry label and its three
/// colored vertices. Shaded triangles read black, white, star in
/// anticlockwise order; unshaded ones in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTriangle {
    pub label: Entry,
    pub shaded: bool,
    pub black: Point,
    pub white: Point,
    pub star: Point,
}

impl PlanarTriangle {
    pub fn centroid(&self) -> Point {
        let third = Sqrt3::from_rat(Rat::new(1, 3));
        let sum = self.black + self.white + self.star;
        Point::new(sum.x * third, sum.y * third)
    }

    /// For a shaded triangle, its station around its own black vertex:
    /// 0 directly above, 1 to the lower-left, 2 to the lower-right.
    pub fn position_class(&self) -> Option<u8> {
        if !self.shaded {
            return None;
        }
        let v = self.centroid() - self.black;
        use std::cmp::Ordering::*;
        match (v.x.sign(), v.y.sign()) {
            (Equal, Greater) => Some(0),
            (Less, Less) => Some(1),
            (Greater, Less) => Some(2),
            _ => None,
        }
    }
}

/// The two generators of the black-vertex lattice under the fixed axis
/// convention.
pub fn black_lattice_basis() -> [Point; 2] {
    [
        Point::from_unit_coords(1, 1),
        Point::from_unit_coords(2, -1),
    ]
}

/// Reminder of the coordinate frame every drawing uses.
pub const AXIS_CONVENTION: &str =
    "origin at a black vertex; +x through a star vertex; +y bisects the base shaded triangle";

/// A clipped, labelled patch of the plane tessellation.
#[derive(Debug, Clone)]
pub struct TessellationDrawing {
    /// All triangles, sorted by centroid with shaded before unshaded.
    pub triangles: Vec<PlanarTriangle>,
    pub radius: Rat,
    pub base: Entry,
    pub axis_convention: &'static str,
}

impl TessellationDrawing {
    pub fn empty() -> TessellationDrawing {
        TessellationDrawing {
            triangles: Vec::new(),
            radius: Rat::from_integer(0),
            base: Entry::new(0, 0, 0),
            axis_convention: AXIS_CONVENTION,
        }
    }

    pub fn shaded(&self) -> impl Iterator<Item = &PlanarTriangle> {
        self.triangles.iter().filter(|t| t.shaded)
    }

    pub fn unshaded(&self) -> impl Iterator<Item = &PlanarTriangle> {
        self.triangles.iter().filter(|t| !t.shaded)
    }
}

#[derive(Clone)]
struct TriangleGeom {
    black: Point,
    white: Point,
    star: Point,
}

impl TriangleGeom {
    fn centroid(&self) -> Point {
        let third = Sqrt3::from_rat(Rat::new(1, 3));
        let sum = self.black + self.white + self.star;
        Point::new(sum.x * third, sum.y * third)
    }
}

fn check_colors(t: &TriangleGeom) {
    debug_assert!({
        let ok = |p: Point, expect: u8| {
            p.unit_coords()
                .map(|(m, n)| vertex_color(m, n) == expect)
                .unwrap_or(false)
        };
        ok(t.black, 0) && ok(t.star, 1) && ok(t.white, 2)
    });
}

/// Lifts the bitrade to the plane: the base entry's shaded triangle is
/// placed directly above the origin, and labels are propagated
/// breadth-first through the six 120-degree rotations within the clipping
/// disc of the given radius. The base triangle is always kept, so radius 0
/// yields exactly one triangle.
pub fn lift_to_plane(
    b: &Bitrade,
    base: &Entry,
    radius: Rat,
) -> Result<TessellationDrawing, TessellateError> {
    if !is_k_homogeneous(b, 3) {
        return Err(TessellateError::Not3Homogeneous);
    }
    if !b.t_dia().entries().contains(base) {
        return Err(TessellateError::BaseNotInFirstHalf(base.dart()));
    }
    if radius < Rat::from_integer(0) {
        return Err(TessellateError::NegativeRadius);
    }
    let rep = tau_representation(b).expect("3-homogeneous with a base entry is nonempty");
    let inverses = [
        rep.tau(0).inverse(),
        rep.tau(1).inverse(),
        rep.tau(2).inverse(),
    ];
    let r2 = Sqrt3::from_rat(radius * radius);

    let base_geom = TriangleGeom {
        black: Point::origin(),
        white: Point::from_unit_coords(0, 1),
        star: Point::from_unit_coords(-1, 1),
    };

    let mut shaded: BTreeMap<Point, (TriangleGeom, Entry)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let start = base_geom.centroid();
    shaded.insert(start, (base_geom, base.clone()));
    queue.push_back(start);

    while let Some(at) = queue.pop_front() {
        let (geom, label) = shaded[&at].clone();
        #[allow(clippy::needless_range_loop)]
        for generator in 0..3 {
            // Generator k rotates about the triangle's own vertex of the
            // matching color: black, then white, then star.
            let center = match generator {
                0 => geom.black,
                1 => geom.white,
                _ => geom.star,
            };
            for clockwise in [false, true] {
                let image = TriangleGeom {
                    black: rotate_120(geom.black, center, clockwise),
                    white: rotate_120(geom.white, center, clockwise),
                    star: rotate_120(geom.star, center, clockwise),
                };
                check_colors(&image);
                let centroid = image.centroid();
                if centroid.norm2() > r2 {
                    continue;
                }
                let new_label = if clockwise {
                    inverses[generator].apply(&label)
                } else {
                    rep.apply(generator, &label)
                };
                match shaded.get(&centroid) {
                    Some((_, existing)) => {
                        if *existing != new_label {
                            return Err(TessellateError::LabelConflict {
                                at: format!("shaded triangle at {centroid:?}"),
                                first: existing.dart(),
                                second: new_label.dart(),
                            });
                        }
                    }
                    None => {
                        shaded.insert(centroid, (image, new_label));
                        queue.push_back(centroid);
                    }
                }
            }
        }
    }

    // Unshaded triangles: reflect each shaded triangle through its three
    // edge midpoints. The witness dart of the neighbor across the
    // black-star edge is the shaded label itself; across the black-white
    // edge it is the label pulled back along the row generator; across the
    // white-star edge it is the label pushed along the symbol generator.
    let oti_entry = |witness: &Entry| -> Entry {
        let along = rep.apply(0, witness);
        Entry::new(
            witness.row().value.clone(),
            along.col().value.clone(),
            witness.sym().value.clone(),
        )
    };
    let mut unshaded: BTreeMap<Point, (TriangleGeom, Entry)> = BTreeMap::new();
    for (geom, label) in shaded.values() {
        let mirror = |p: Point, q: Point, r: Point| -> Point {
            Point::new(p.x + q.x - r.x, p.y + q.y - r.y)
        };
        let neighbors = [
            // across the black-star (dotted) edge
            (
                TriangleGeom {
                    black: geom.black,
                    white: mirror(geom.black, geom.star, geom.white),
                    star: geom.star,
                },
                label.clone(),
            ),
            // across the black-white (solid) edge
            (
                TriangleGeom {
                    black: geom.black,
                    white: geom.white,
                    star: mirror(geom.black, geom.white, geom.star),
                },
                inverses[0].apply(label),
            ),
            // across the white-star (dashed) edge
            (
                TriangleGeom {
                    black: mirror(geom.white, geom.star, geom.black),
                    white: geom.white,
                    star: geom.star,
                },
                rep.apply(2, label),
            ),
        ];
        for (image, witness) in neighbors {
            check_colors(&image);
            let centroid = image.centroid();
            if centroid.norm2() > r2 {
                continue;
            }
            let entry = oti_entry(&witness);
            debug_assert!(b.t_oti().entries().contains(&entry));
            match unshaded.get(&centroid) {
                Some((_, existing)) => {
                    if *existing != entry {
                        return Err(TessellateError::LabelConflict {
                            at: format!("unshaded triangle at {centroid:?}"),
                            first: existing.dart(),
                            second: entry.dart(),
                        });
                    }
                }
                None => {
                    unshaded.insert(centroid, (image, entry));
                }
            }
        }
    }

    let mut triangles: Vec<PlanarTriangle> = Vec::with_capacity(shaded.len() + unshaded.len());
    for (map, is_shaded) in [(shaded, true), (unshaded, false)] {
        for (geom, label) in map.into_values() {
            triangles.push(PlanarTriangle {
                label,
                shaded: is_shaded,
                black: geom.black,
                white: geom.white,
                star: geom.star,
            });
        }
    }
    triangles.sort_by(|a, b| {
        a.centroid()
            .cmp(&b.centroid())
            .then(b.shaded.cmp(&a.shaded))
    });
    Ok(TessellationDrawing {
        triangles,
        radius,
        base: base.clone(),
        axis_convention: AXIS_CONVENTION,
    })
}

/// Rendering knobs for [`render_svg`].
#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub show_labels: bool,
    pub show_axes: bool,
    pub shade_color: String,
    /// Pixels per unit length.
    pub scale: f64,
    /// Optional fundamental-domain parallelogram, given as two vectors in
    /// the black-lattice basis and drawn from the origin.
    pub domain: Option<[(i64, i64); 2]>,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions {
            show_labels: true,
            show_axes: false,
            shade_color: "#c9c9c9".to_owned(),
            scale: 60.0,
            domain: None,
        }
    }
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_owned()
    } else {
        s
    }
}

fn svg_point(p: Point) -> String {
    let (x, y) = p.to_f64();
    format!("{},{}", fmt_num(x), fmt_num(-y))
}

/// Deterministic SVG rendering: identical drawings and options produce
/// identical bytes. One `<polygon>` per triangle (shaded filled, unshaded
/// unfilled), solid black-white edges, dotted black-star edges, dashed
/// white-star edges, filled dots for black vertices, hollow circles for
/// white, small hexagrams for star, entry labels at centroids.
pub fn render_svg(drawing: &TessellationDrawing, options: &RenderOptions) -> String {
    let r = *drawing.radius.numer() as f64 / *drawing.radius.denom() as f64;
    let pad = 1.2;
    let extent = r + pad;
    let size = 2.0 * extent * options.scale;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">\n",
        fmt_num(-extent),
        fmt_num(-extent),
        fmt_num(2.0 * extent),
        fmt_num(2.0 * extent),
        fmt_num(size),
        fmt_num(size)
    ));

    // Triangles first, so edges and markers draw on top.
    for t in &drawing.triangles {
        let fill = if t.shaded {
            options.shade_color.as_str()
        } else {
            "none"
        };
        out.push_str(&format!(
            "  <polygon points=\"{} {} {}\" fill=\"{fill}\" stroke=\"none\"/>\n",
            svg_point(t.black),
            svg_point(t.white),
            svg_point(t.star)
        ));
    }

    // Shared edges, deduplicated; the kind is determined by the endpoint
    // colors and therefore agrees from both sides.
    let mut edges: BTreeMap<(Point, Point), u8> = BTreeMap::new();
    for t in &drawing.triangles {
        for (p, q, kind) in [
            (t.black, t.white, 0u8),
            (t.black, t.star, 1u8),
            (t.white, t.star, 2u8),
        ] {
            let key = if p <= q { (p, q) } else { (q, p) };
            let prev = edges.insert(key, kind);
            debug_assert!(prev.is_none() || prev == Some(kind));
        }
    }
    for ((p, q), kind) in &edges {
        let style = match kind {
            0 => "",
            1 => " stroke-dasharray=\"0.035,0.065\"",
            _ => " stroke-dasharray=\"0.14,0.07\"",
        };
        let (x1, y1) = p.to_f64();
        let (x2, y2) = q.to_f64();
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"0.02\"{style}/>\n",
            fmt_num(x1),
            fmt_num(-y1),
            fmt_num(x2),
            fmt_num(-y2)
        ));
    }

    if options.show_axes {
        for (x2, y2, name, dx, dy) in [
            (extent - 0.4, 0.0, "x", 0.12, -0.08),
            (0.0, extent - 0.4, "y", 0.12, 0.12),
        ] {
            out.push_str(&format!(
                "  <line x1=\"0.0000\" y1=\"0.0000\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"0.025\"/>\n",
                fmt_num(x2),
                fmt_num(-y2)
            ));
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"0.24\" fill=\"#888888\">{name}</text>\n",
                fmt_num(x2 + dx),
                fmt_num(-y2 + dy)
            ));
        }
    }

    if let Some([v1, v2]) = options.domain {
        let [b1, b2] = black_lattice_basis();
        let lat = |(a, b): (i64, i64)| -> Point {
            let scale = |p: Point, k: i64| {
                let k = Sqrt3::from_int(k);
                Point::new(p.x * k, p.y * k)
            };
            scale(b1, a) + scale(b2, b)
        };
        let p1 = lat(v1);
        let p2 = lat(v2);
        let p12 = p1 + p2;
        out.push_str(&format!(
            "  <path d=\"M 0,0 L {} L {} L {} Z\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.07\"/>\n",
            svg_point(p1),
            svg_point(p12),
            svg_point(p2)
        ));
    }

    // Vertex markers.
    let mut vertices: BTreeMap<Point, u8> = BTreeMap::new();
    for t in &drawing.triangles {
        vertices.insert(t.black, 0);
        vertices.insert(t.star, 1);
        vertices.insert(t.white, 2);
    }
    for (p, color) in &vertices {
        let (x, y) = p.to_f64();
        match color {
            0 => out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"0.07\" fill=\"#000000\"/>\n",
                fmt_num(x),
                fmt_num(-y)
            )),
            2 => out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"0.07\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.02\"/>\n",
                fmt_num(x),
                fmt_num(-y)
            )),
            _ => {
                // Hexagram: two opposed triangles as one path.
                let r_out = 0.11;
                let mut d = String::new();
                for (start, offset) in [(0, "M"), (1, "M")] {
                    let mut cmd = offset;
                    for k in 0..3 {
                        let angle = (start as f64) * std::f64::consts::PI / 6.0 * 2.0
                            + (k as f64) * 2.0 * std::f64::consts::PI / 3.0
                            + std::f64::consts::FRAC_PI_2;
                        let px = x + r_out * angle.cos();
                        let py = y + r_out * angle.sin();
                        d.push_str(&format!("{cmd} {},{} ", fmt_num(px), fmt_num(-py)));
                        cmd = "L";
                    }
                    d.push_str("Z ");
                }
                out.push_str(&format!(
                    "  <path d=\"{}\" fill=\"#000000\"/>\n",
                    d.trim_end()
                ));
            }
        }
    }

    if options.show_labels {
        for t in &drawing.triangles {
            let (x, y) = t.centroid().to_f64();
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"0.16\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"#333333\">{}</text>\n",
                fmt_num(x),
                fmt_num(-y),
                t.label.dart()
            ));
        }
    }

    out.push_str("</svg>\n");
    out
}
