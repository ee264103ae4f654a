//! Asymptotic rate-distance bounds: Gilbert-Varshamov and the
//! algebraic-geometry (Tsfasman-Vladut-Zink) line.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Bisection tolerance for crossing endpoints.
pub const CROSSING_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPoint {
    pub delta: f64,
    pub r_gv: f64,
    /// `None` when the AG bound is undefined for this `q` (`q < 4`).
    pub r_ag: Option<f64>,
    pub q: u64,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Domain(format!("delta = {delta} is outside [0, 1]")));
    }
    Ok(())
}

/// `x * log_q(x)`, continuous at 0.
fn xlogx(x: f64, ln_q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln() / ln_q
    }
}

/// `1 - H_q(delta)`, clamped to 0 past the Plotkin point `(q-1)/q`.
pub fn gv_bound(q: u64, delta: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size {q} < 2")));
    }
    check_delta(delta)?;
    let qf = q as f64;
    if delta > (qf - 1.0) / qf {
        return Ok(0.0);
    }
    let ln_q = qf.ln();
    let entropy = delta * (qf - 1.0).ln() / ln_q - xlogx(delta, ln_q) - xlogx(1.0 - delta, ln_q);
    Ok((1.0 - entropy).clamp(0.0, 1.0))
}

pub fn is_perfect_square(q: u64) -> bool {
    let r = (q as f64).sqrt().round() as u64;
    r * r == q
}

/// `1 - 1/(sqrt(q) - 1) - delta`, unclamped. Warns when `q` is not a square.
pub fn ag_bound(q: u64, delta: f64) -> Result<f64> {
    if q < 4 {
        return Err(Error::Domain(format!("AG bound needs q >= 4, got {q}")));
    }
    check_delta(delta)?;
    if !is_perfect_square(q) {
        log::warn!("q = {q} is not a perfect square; the AG bound is only established for square q");
    }
    Ok(1.0 - 1.0 / ((q as f64).sqrt() - 1.0) - delta)
}

pub fn bound_point(q: u64, delta: f64) -> Result<BoundPoint> {
    let r_gv = gv_bound(q, delta)?;
    let r_ag = if q >= 4 { Some(ag_bound(q, delta)?) } else { None };
    Ok(BoundPoint { delta, r_gv, r_ag, q })
}

/// Grid `0, step, 2*step, ...` up to 1 (inclusive when it lands on 1).
pub fn delta_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Domain(format!("grid step {step} must lie in (0, 1]")));
    }
    let n = (1.0 / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| (i as f64 * step).min(1.0)).collect())
}

/// Maximal intervals of `[0, 1]` where the AG line lies strictly above GV.
///
/// Scans the grid, then bisects each sign change until the midpoint stops
/// moving, which is well inside [`CROSSING_TOLERANCE`].
pub fn crossing_region(q: u64, grid_step: f64) -> Result<Vec<(f64, f64)>> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(Error::Domain(format!("grid step {grid_step} must lie in (0, 0.01]")));
    }
    if q < 4 || !is_perfect_square(q) {
        return Err(Error::Domain(format!("crossing region needs a square q >= 4, got {q}")));
    }
    let gap = |d: f64| -> f64 {
        // Both bounds are defined on the whole grid once q and delta are checked.
        ag_bound(q, d).unwrap() - gv_bound(q, d).unwrap()
    };
    let refine = |mut lo: f64, mut hi: f64| -> f64 {
        // gap(lo) and gap(hi) have opposite "above" status.
        let lo_above = gap(lo) > 0.0;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if (gap(mid) > 0.0) == lo_above {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let grid = delta_grid(grid_step)?;
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut prev = (grid[0], gap(grid[0]) > 0.0);
    if prev.1 {
        start = Some(0.0);
    }
    for &d in &grid[1..] {
        let above = gap(d) > 0.0;
        if above != prev.1 {
            let edge = refine(prev.0, d);
            if above {
                start = Some(edge);
            } else if let Some(s) = start.take() {
                out.push((s, edge));
            }
        }
        prev = (d, above);
    }
    if let Some(s) = start {
        out.push((s, *grid.last().unwrap()));
    }
    Ok(out)
}

/// Formats like C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        trim(&format!("{x:.*}", (11 - exp).max(0) as usize))
    } else {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// Writes the CSV table `delta,r_gv,r_ag` over the grid, followed by a
/// comment line with `q` and the crossing intervals.
pub fn write_bounds_table(q: u64, grid_step: f64, out: &mut impl Write) -> Result<usize> {
    let grid = delta_grid(grid_step)?;
    writeln!(out, "delta,r_gv,r_ag")?;
    for &d in &grid {
        let pt = bound_point(q, d)?;
        let ag = pt.r_ag.map(format_sig12).unwrap_or_default();
        writeln!(out, "{},{},{}", format_sig12(d), format_sig12(pt.r_gv), ag)?;
    }
    let crossing = if q >= 4 && is_perfect_square(q) {
        let region = crossing_region(q, grid_step.min(0.01))?;
        if region.is_empty() {
            "none".to_string()
        } else {
            region
                .iter()
                .map(|(a, b)| format!("[{},{}]", format_sig12(*a), format_sig12(*b)))
                .collect::<Vec<_>>()
                .join(";")
        }
    } else {
        "n/a".to_string()
    };
    writeln!(out, "# q={q} crossing={crossing}")?;
    Ok(grid.len())
}

/// [`write_bounds_table`] into a file; returns the number of data rows.
pub fn emit_bounds_table(q: u64, grid_step: f64, destination: &Path) -> Result<usize> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(destination)?);
    let rows = write_bounds_table(q, grid_step, &mut file)?;
    file.flush()?;
    Ok(rows)
}
