//! Zero location by the argument principle.
//!
//! The winding number `(1/2 pi i) \oint h'/h dw` is evaluated with the
//! trapezoid rule, doubling the sample count until two consecutive estimates
//! agree on an integer and the latest lies within `1e-3` of it. Cells are
//! polar: the search disk splits into an inner disk and four annular
//! sectors, and sectors split into four by halving radius and angle. Once a
//! cell holds `m` zeros, the first moment `\oint w h'/h` gives their centroid,
//! and shrinking circles around it isolate a zero cluster down to diameter
//! `1e-8` (coarser for multiple zeros, whose values drown in rounding
//! first).

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use super::{Zero, ZeroMethod, ZeroSet};
use crate::error::{Error, Result};
use crate::transform::Holomorphic;

pub const DEFAULT_RADIUS: f64 = 0.999;
pub const DEFAULT_MAX_DEPTH: usize = 60;

const BASE_POINTS: usize = 1 << 10;
const MAX_POINTS: usize = 1 << 16;
const INTEGER_TOL: f64 = 1e-3;
const TERMINAL_DIAMETER: f64 = 1e-8;
/// Terminal diameter accepted when shrinking stalls (multiple zeros).
const STALLED_DIAMETER: f64 = 1e-5;
const CONTOUR_CLEARANCE: f64 = 1e-8;
const MAX_NUDGES: usize = 8;
const NUDGE_STEP: f64 = 1e-4;
const ORIGIN: Complex64 = Complex64::new(0.0, 0.0);
const SPLIT_VARIANTS: [(f64, f64); 6] =
    [(0.5, 0.5), (0.47, 0.53), (0.53, 0.46), (0.44, 0.57), (0.56, 0.43), (0.41, 0.6)];

#[derive(Clone, Copy, Debug)]
pub struct ArgumentPrincipleOptions {
    pub radius: f64,
    pub max_depth: usize,
}

impl Default for ArgumentPrincipleOptions {
    fn default() -> Self {
        Self { radius: DEFAULT_RADIUS, max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Clone, Copy, Debug)]
enum Segment {
    /// `center + radius e^{i theta}` for theta from `t0` to `t1`.
    Arc {
        center: Complex64,
        radius: f64,
        t0: f64,
        t1: f64,
    },
    Line {
        from: Complex64,
        to: Complex64,
    },
}

impl Segment {
    fn length(&self) -> f64 {
        match *self {
            Segment::Arc { radius, t0, t1, .. } => radius * (t1 - t0).abs(),
            Segment::Line { from, to } => (to - from).norm(),
        }
    }

    /// Point, its offset from `reference`, and the derivative with respect to
    /// the unit parameter. Arcs centred at `reference` return the offset
    /// exactly, which keeps moments accurate on tiny circles.
    fn at(&self, s: f64, reference: Complex64) -> (Complex64, Complex64, Complex64) {
        match *self {
            Segment::Arc { center, radius, t0, t1 } => {
                let e = Complex64::from_polar(radius, t0 + s * (t1 - t0));
                let w = center + e;
                let offset = if center == reference { e } else { w - reference };
                (w, offset, Complex64::new(0.0, t1 - t0) * e)
            }
            Segment::Line { from, to } => {
                let w = from + (to - from) * s;
                (w, w - reference, to - from)
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Disk { center: Complex64, radius: f64 },
    Sector { r0: f64, r1: f64, t0: f64, t1: f64 },
}

impl Cell {
    fn diameter(&self) -> f64 {
        match *self {
            Cell::Disk { radius, .. } => 2.0 * radius,
            Cell::Sector { r0, r1, t0, t1 } => (r1 - r0) + r1 * (t1 - t0),
        }
    }

    fn contour(&self) -> Vec<Segment> {
        match *self {
            Cell::Disk { center, radius } => vec![Segment::Arc { center, radius, t0: 0.0, t1: TAU }],
            Cell::Sector { r0, r1, t0, t1 } => {
                let origin = Complex64::new(0.0, 0.0);
                let mut segs = vec![
                    Segment::Arc { center: origin, radius: r1, t0, t1 },
                    Segment::Line { from: Complex64::from_polar(r1, t1), to: Complex64::from_polar(r0, t1) },
                ];
                if r0 > 0.0 {
                    segs.push(Segment::Arc { center: origin, radius: r0, t0: t1, t1: t0 });
                }
                segs.push(Segment::Line { from: Complex64::from_polar(r0, t0), to: Complex64::from_polar(r1, t0) });
                segs
            }
        }
    }

    fn split(&self, variant: usize) -> Vec<Cell> {
        let (f, g) = SPLIT_VARIANTS[variant % SPLIT_VARIANTS.len()];
        match *self {
            Cell::Disk { radius, .. } => {
                let inner = f * radius;
                // offset keeps the cut lines off the coordinate axes, where
                // symmetric test functions like to put their zeros
                let offset = 0.3 + 0.11 * variant as f64;
                let mut cells = vec![Cell::Disk { center: Complex64::new(0.0, 0.0), radius: inner }];
                for k in 0..4 {
                    let t0 = offset + k as f64 * FRAC_PI_2;
                    cells.push(Cell::Sector { r0: inner, r1: radius, t0, t1: t0 + FRAC_PI_2 });
                }
                cells
            }
            Cell::Sector { r0, r1, t0, t1 } => {
                let rm = r0 + f * (r1 - r0);
                let tm = t0 + g * (t1 - t0);
                vec![
                    Cell::Sector { r0, r1: rm, t0, t1: tm },
                    Cell::Sector { r0, r1: rm, t0: tm, t1 },
                    Cell::Sector { r0: rm, r1, t0, t1: tm },
                    Cell::Sector { r0: rm, r1, t0: tm, t1 },
                ]
            }
        }
    }
}

/// Result of one converged contour integration.
#[derive(Clone, Copy, Debug)]
struct Winding {
    count: usize,
    /// `(1/2 pi i) \oint w h'/h dw`: sum of the enclosed zeros.
    moment: Complex64,
    min_abs: f64,
}

/// Returns the winding estimate, the first moment about `reference`, and the
/// smallest sampled `|h|`.
fn integrate<F: Holomorphic + ?Sized>(
    f: &F,
    segments: &[Segment],
    reference: Complex64,
    points: usize,
) -> (Complex64, Complex64, f64) {
    let total: f64 = segments.iter().map(Segment::length).sum();
    let mut i0 = Complex64::new(0.0, 0.0);
    let mut i1 = Complex64::new(0.0, 0.0);
    let mut min_abs = f64::INFINITY;
    for seg in segments {
        let m = ((points as f64 * seg.length() / total).ceil() as usize).max(8);
        let mut s0 = Complex64::new(0.0, 0.0);
        let mut s1 = Complex64::new(0.0, 0.0);
        for j in 0..=m {
            let (w, offset, dw) = seg.at(j as f64 / m as f64, reference);
            let h = f.value(w);
            min_abs = min_abs.min(h.norm());
            let ratio = f.derivative(w) / h * dw;
            let weight = if j == 0 || j == m { 0.5 } else { 1.0 };
            s0 += ratio * weight;
            s1 += ratio * offset * weight;
        }
        i0 += s0 / m as f64;
        i1 += s1 / m as f64;
    }
    let scale = Complex64::new(0.0, TAU);
    (i0 / scale, i1 / scale, min_abs)
}

fn converge<F: Holomorphic + ?Sized>(f: &F, segments: &[Segment], reference: Complex64) -> Result<Winding> {
    let mut points = BASE_POINTS;
    let mut previous: Option<f64> = None;
    let mut last = f64::NAN;
    while points <= MAX_POINTS {
        let (count, moment, min_abs) = integrate(f, segments, reference, points);
        let est = count.re;
        if est.is_finite() && count.im.is_finite() {
            let nearest = est.round();
            let agrees = previous.is_some_and(|p| p.round() == nearest);
            if agrees && (est - nearest).abs() <= INTEGER_TOL && count.im.abs() <= INTEGER_TOL && nearest >= 0.0 {
                let count = nearest as usize;
                let moment = if count == 0 { Complex64::new(0.0, 0.0) } else { reference * count as f64 + moment };
                return Ok(Winding { count, moment, min_abs });
            }
        }
        previous = Some(est);
        last = est;
        points *= 2;
    }
    Err(Error::WindingNoConvergence { estimate: last })
}

/// Winding number of `h` around the circle `|w - center| = radius`.
pub fn winding_number<F: Holomorphic + ?Sized>(f: &F, center: Complex64, radius: f64) -> Result<usize> {
    converge(f, &[Segment::Arc { center, radius, t0: 0.0, t1: TAU }], center).map(|w| w.count)
}

/// Zeros of `f` inside `|w| < radius` (radius capped at 0.999) with their
/// multiplicities, by contour integration alone.
pub fn zeros_via_argument_principle<F: Holomorphic + ?Sized>(f: &F, radius: f64, max_depth: usize) -> Result<ZeroSet> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidInput(format!("search radius must lie in (0, 1), got {radius}")));
    }
    let requested = radius.min(DEFAULT_RADIUS);

    let mut top = None;
    for attempt in 0..=MAX_NUDGES {
        let k = attempt.div_ceil(2) as f64;
        let sign = if attempt % 2 == 1 { -1.0 } else { 1.0 };
        let r = requested + sign * k * NUDGE_STEP;
        let cell = Cell::Disk { center: Complex64::new(0.0, 0.0), radius: r };
        if let Ok(w) = converge(f, &cell.contour(), ORIGIN) {
            if w.min_abs > CONTOUR_CLEARANCE {
                top = Some((r, cell, w));
                break;
            }
        }
    }
    let Some((used_radius, cell, winding)) = top else {
        return Err(Error::ContourThroughZero { nudges: MAX_NUDGES });
    };

    let mut found = Vec::new();
    locate(f, cell, winding, 0, max_depth, &mut found)?;
    let total: usize = found.iter().map(|z: &Zero| z.multiplicity).sum();
    if total != winding.count {
        return Err(Error::WindingNoConvergence { estimate: total as f64 });
    }
    Ok(ZeroSet::sorted(found, ZeroMethod::ArgumentPrinciple, used_radius))
}

fn locate<F: Holomorphic + ?Sized>(
    f: &F,
    cell: Cell,
    winding: Winding,
    depth: usize,
    max_depth: usize,
    out: &mut Vec<Zero>,
) -> Result<()> {
    let m = winding.count;
    if m == 0 {
        return Ok(());
    }
    if depth > max_depth {
        return Err(Error::MaxDepthExceeded { max_depth });
    }

    if let Some(zero) = shrink_around_centroid(f, &cell, &winding) {
        out.push(zero);
        return Ok(());
    }
    if cell.diameter() <= TERMINAL_DIAMETER {
        out.push(Zero { location: winding.moment / m as f64, multiplicity: m });
        return Ok(());
    }

    for variant in 0..SPLIT_VARIANTS.len() {
        let children = cell.split(variant);
        let windings: Result<Vec<Winding>> = children.iter().map(|c| converge(f, &c.contour(), ORIGIN)).collect();
        let Ok(windings) = windings else { continue };
        if windings.iter().map(|w| w.count).sum::<usize>() != m {
            continue;
        }
        for (child, w) in children.into_iter().zip(windings) {
            locate(f, child, w, depth + 1, max_depth, out)?;
        }
        return Ok(());
    }
    Err(Error::WindingNoConvergence { estimate: m as f64 })
}

/// Contracts circles around the centroid of the `m` zeros in `cell`. Succeeds
/// when a circle of diameter [`TERMINAL_DIAMETER`] still encloses all of
/// them, or when contraction stalls below [`STALLED_DIAMETER`].
fn shrink_around_centroid<F: Holomorphic + ?Sized>(f: &F, cell: &Cell, winding: &Winding) -> Option<Zero> {
    let m = winding.count;
    let mut center = winding.moment / m as f64;
    let room = 1.0 - center.norm();
    if room <= 0.0 {
        return None;
    }
    let mut rho = (cell.diameter() / 8.0).min(0.5 * room);
    let mut good: Option<(Complex64, f64)> = None;
    loop {
        match converge(f, &[Segment::Arc { center, radius: rho, t0: 0.0, t1: TAU }], center) {
            Ok(w) if w.count == m => {
                center = w.moment / m as f64;
                good = Some((center, rho));
                if 2.0 * rho <= TERMINAL_DIAMETER {
                    break;
                }
                rho = (rho / 64.0).max(0.5 * TERMINAL_DIAMETER);
            }
            _ => break,
        }
    }
    match good {
        Some((location, r)) if 2.0 * r <= STALLED_DIAMETER => Some(Zero { location, multiplicity: m }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{AtomicMeasure, UnitPoint};
    use crate::transform::CauchyFunction;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_zero_of_shifted_dirac() {
        // h = (1 + 3w) / (1 + w)
        let f = CauchyFunction::shifted(AtomicMeasure::dirac(UnitPoint::new(c(-1.0, 0.0)).unwrap(), c(2.0, 0.0)));
        let z = zeros_via_argument_principle(&f, 0.9, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(z.count(), 1, "{z:?}");
        assert!((z.zeros[0].location - c(-1.0 / 3.0, 0.0)).norm() < 1e-10, "{z:?}");
        assert!((z.zeros[0].location - c(-1.0 / 3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn constant_has_no_zeros() {
        let f = CauchyFunction::shifted(AtomicMeasure::zero());
        let z = zeros_via_argument_principle(&f, 0.9, DEFAULT_MAX_DEPTH).unwrap();
        assert!(z.zeros.is_empty());
    }

    #[test]
    fn winding_counts_enclosed_zero() {
        let f = CauchyFunction::shifted(AtomicMeasure::dirac(UnitPoint::new(c(-1.0, 0.0)).unwrap(), c(1.0, 0.0)));
        assert_eq!(winding_number(&f, c(0.0, 0.0), 0.6).unwrap(), 1);
        assert_eq!(winding_number(&f, c(0.0, 0.0), 0.4).unwrap(), 0);
    }

    #[test]
    fn radius_must_be_inside_disk() {
        let f = CauchyFunction::shifted(AtomicMeasure::zero());
        assert!(zeros_via_argument_principle(&f, 1.0, 10).is_err());
    }
}
