//! Golden-section search on a bracketing interval.

use crate::error::Result;

// 1 / phi
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// A located extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Minimizes `f` on `[lo, hi]` until the bracket is no wider than `tol`.
///
/// Returns the better of the two final interior probes. On exact ties the
/// smaller abscissa wins.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Extremum>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd {
        Extremum { x: c, value: fc }
    } else {
        Extremum { x: d, value: fd }
    })
}

/// Maximizes `f` on `[lo, hi]`; see [`golden_section_min`].
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Extremum>
where
    F: FnMut(f64) -> Result<f64>,
{
    let found = golden_section_min(|x| f(x).map(|v| -v), lo, hi, tol)?;
    Ok(Extremum {
        x: found.x,
        value: -found.value,
    })
}
