//! SVG images of concentric circles and radial segments, and the plain-text
//! coefficient dump format.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;

use crate::harmonic::HarmonicMap;
use crate::series::TaylorSeries;
use crate::{Error, Result};

const WIDTH: f64 = 800.0;
const MIN_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    /// Bounding box of `points` padded by 5% of its extent on each side.
    pub fn fit(points: impl IntoIterator<Item = Complex64>) -> Result<Self> {
        let mut vp = Self {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for p in points {
            vp.x_min = vp.x_min.min(p.re);
            vp.x_max = vp.x_max.max(p.re);
            vp.y_min = vp.y_min.min(p.im);
            vp.y_max = vp.y_max.max(p.im);
        }
        if !vp.x_min.is_finite() || !vp.y_min.is_finite() {
            return Err(Error::BadParameter(
                "no finite points to fit a viewport".into(),
            ));
        }
        let pad_x = 0.05 * (vp.x_max - vp.x_min).max(1e-9);
        let pad_y = 0.05 * (vp.y_max - vp.y_min).max(1e-9);
        vp.x_min -= pad_x;
        vp.x_max += pad_x;
        vp.y_min -= pad_y;
        vp.y_max += pad_y;
        Ok(vp)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite())
            && self.x_min < self.x_max
            && self.y_min < self.y_max;
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameter(format!("degenerate viewport {self:?}")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub map: HarmonicMap,
    pub radii: Vec<f64>,
    /// Radial segments from the origin to the largest circle; zero for none.
    pub rays: usize,
    pub samples: usize,
    pub viewport: Option<Viewport>,
    pub output: Option<PathBuf>,
}

impl RenderSpec {
    /// Radii 0.1, 0.2, ..., 0.9, no rays, 256 samples per circle.
    pub fn new(map: HarmonicMap) -> Self {
        Self {
            map,
            radii: (1..=9).map(|k| k as f64 / 10.0).collect(),
            rays: 0,
            samples: 256,
            viewport: None,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::BadParameter(
                "at least one circle radius is required".into(),
            ));
        }
        for &r in &self.radii {
            if r >= 1.0 {
                return Err(Error::EvalOutsideDisk {
                    z: Complex64::new(r, 0.0),
                    r_max: 1.0,
                });
            }
            if r.is_nan() || r <= 0.0 {
                return Err(Error::BadParameter(format!(
                    "circle radius {r} must be positive"
                )));
            }
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::BadParameter(format!(
                "samples per circle must be >= {MIN_SAMPLES}"
            )));
        }
        if let Some(vp) = &self.viewport {
            vp.validate()?;
        }
        Ok(())
    }
}

/// Closed form when the map carries one (valid on the whole open disk),
/// otherwise the series.
fn eval_for_render(map: &HarmonicMap, z: Complex64) -> Result<Complex64> {
    match map.closed_form {
        Some(named) => named.eval(z),
        None => map.eval_series(z),
    }
}

/// Image polylines: one per circle, then one per ray.
pub fn image_polylines(spec: &RenderSpec) -> Result<Vec<Vec<Complex64>>> {
    spec.validate()?;
    let m = spec.samples;
    let mut lines = Vec::with_capacity(spec.radii.len() + spec.rays);
    for &r in &spec.radii {
        let line = (0..=m)
            .map(|j| {
                eval_for_render(
                    &spec.map,
                    Complex64::from_polar(r, TAU * (j % m) as f64 / m as f64),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        lines.push(line);
    }
    let r_out = spec.radii.iter().cloned().fold(0.0, f64::max);
    for k in 0..spec.rays {
        let t = TAU * k as f64 / spec.rays as f64;
        let line = (0..=m)
            .map(|j| {
                eval_for_render(
                    &spec.map,
                    Complex64::from_polar(r_out * j as f64 / m as f64, t),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        lines.push(line);
    }
    Ok(lines)
}

/// SVG 1.1 document of the image curves, with the imaginary axis pointing up.
pub fn render_map(spec: &RenderSpec) -> Result<String> {
    let lines = image_polylines(spec)?;
    let vp = match spec.viewport {
        Some(vp) => vp,
        None => Viewport::fit(
            lines
                .iter()
                .flatten()
                .copied()
                .filter(|p| p.re.is_finite() && p.im.is_finite()),
        )?,
    };
    let height = (WIDTH * (vp.y_max - vp.y_min) / (vp.x_max - vp.x_min)).clamp(50.0, 4.0 * WIDTH);
    let sx = WIDTH / (vp.x_max - vp.x_min);
    let sy = height / (vp.y_max - vp.y_min);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {WIDTH:.3} {height:.3}\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&spec.map.label));
    let _ = writeln!(
        out,
        "<desc>viewport x [{}, {}] y [{}, {}]</desc>",
        vp.x_min, vp.x_max, vp.y_min, vp.y_max
    );
    let n_circles = spec.radii.len();
    for (i, line) in lines.iter().enumerate() {
        let (class, stroke) = if i < n_circles {
            ("circle", "#1f4e9c")
        } else {
            ("ray", "#9c1f1f")
        };
        let mut pts = String::new();
        for p in line.iter().filter(|p| p.re.is_finite() && p.im.is_finite()) {
            let _ = write!(
                pts,
                "{:.3},{:.3} ",
                (p.re - vp.x_min) * sx,
                (vp.y_max - p.im) * sy
            );
        }
        let _ = writeln!(
            out,
            "<polyline class=\"{class}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\" points=\"{}\"/>",
            pts.trim_end()
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders and writes to `spec.output`.
pub fn write_svg(spec: &RenderSpec) -> Result<PathBuf> {
    let path = spec
        .output
        .clone()
        .ok_or_else(|| Error::BadParameter("no output path".into()))?;
    let svg = render_map(spec)?;
    std::fs::write(&path, svg).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Plain-text dump: `#` header lines with metadata, then `# part h` and
/// `# part g` sections with one `k re im` line per coefficient.
pub fn write_dump(map: &HarmonicMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# harmconv coefficient dump");
    let _ = writeln!(out, "# label {}", map.label);
    let _ = writeln!(out, "# order {}", map.order());
    for (name, part) in [("h", &map.h), ("g", &map.g)] {
        let _ = writeln!(out, "# part {name}");
        for (k, c) in part.coeffs().iter().enumerate() {
            let _ = writeln!(out, "{k} {:.16e} {:.16e}", c.re, c.im);
        }
    }
    out
}

/// Inverse of [`write_dump`].
pub fn parse_dump(text: &str) -> Result<HarmonicMap> {
    let bad = |line: usize, msg: &str| Error::BadParameter(format!("dump line {line}: {msg}"));
    let mut label = None;
    let mut parts: [Vec<Complex64>; 2] = [Vec::new(), Vec::new()];
    let mut current: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(rest) = meta.strip_prefix("part ") {
                current = match rest.trim() {
                    "h" => Some(0),
                    "g" => Some(1),
                    other => return Err(bad(i + 1, &format!("unknown part {other}"))),
                };
            } else if let Some(rest) = meta.strip_prefix("label ") {
                label = Some(rest.to_string());
            }
            continue;
        }
        let idx = current.ok_or_else(|| bad(i + 1, "coefficient before any part header"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(bad(i + 1, "expected `k re im`"));
        }
        let k: usize = fields[0].parse().map_err(|_| bad(i + 1, "bad index"))?;
        if k != parts[idx].len() {
            return Err(bad(i + 1, "indices must be consecutive from 0"));
        }
        let re: f64 = fields[1].parse().map_err(|_| bad(i + 1, "bad real part"))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| bad(i + 1, "bad imaginary part"))?;
        parts[idx].push(Complex64::new(re, im));
    }
    let [h, g] = parts;
    let map = HarmonicMap::new(TaylorSeries::new(h)?, TaylorSeries::new(g)?)?;
    Ok(match label {
        Some(l) => map.with_label(l),
        None => map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{canonical_f0, example_map, NamedMap};

    #[test]
    fn identity_circle_is_a_circle() {
        let map = HarmonicMap::analytic(TaylorSeries::identity(4)).unwrap();
        let mut spec = RenderSpec::new(map);
        spec.radii = vec![0.5];
        let lines = image_polylines(&spec).unwrap();
        assert_eq!(lines.len(), 1);
        assert!(lines[0].iter().all(|p| (p.norm() - 0.5).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = RenderSpec::new(canonical_f0(16));
        spec.radii = vec![0.5, 1.0];
        assert!(matches!(
            render_map(&spec),
            Err(Error::EvalOutsideDisk { .. })
        ));
        spec.radii = vec![0.5];
        spec.samples = 10;
        assert!(render_map(&spec).is_err());
    }

    #[test]
    fn f0_curves_are_nested_right_of_minus_half() {
        let spec = RenderSpec::new(canonical_f0(64));
        let lines = image_polylines(&spec).unwrap();
        let min_re: Vec<f64> = lines
            .iter()
            .map(|l| l.iter().map(|p| p.re).fold(f64::INFINITY, f64::min))
            .collect();
        assert!(min_re.iter().all(|&x| x > -0.5));
        assert!(min_re.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn svg_is_deterministic_with_expected_polylines() {
        let mut spec = RenderSpec::new(example_map(NamedMap::Conv1, 64));
        spec.rays = 4;
        let a = render_map(&spec).unwrap();
        let b = render_map(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<polyline").count(), 13);
        assert!(a.starts_with("<?xml"));
        assert!(a.contains("version=\"1.1\""));
    }

    #[test]
    fn viewport_padding() {
        let vp = Viewport::fit([Complex64::new(0.0, 0.0), Complex64::new(10.0, 2.0)]).unwrap();
        assert_eq!(vp.x_min, -0.5);
        assert_eq!(vp.x_max, 10.5);
        assert!((vp.y_max - 2.1).abs() < 1e-15);
    }

    #[test]
    fn dump_round_trip_exact() {
        let map = example_map(NamedMap::Shear2, 32);
        let back = parse_dump(&write_dump(&map)).unwrap();
        assert_eq!(back.h, map.h);
        assert_eq!(back.g, map.g);
        assert_eq!(back.label, map.label);
    }

    #[test]
    fn dump_parse_errors() {
        assert!(parse_dump("0 1 2\n").is_err());
        assert!(parse_dump("# part h\n1 0 0\n").is_err());
        assert!(parse_dump("# part q\n").is_err());
        assert!(parse_dump("# part h\n0 x 0\n").is_err());
    }
}
