//! Grid scan followed by golden-section refinement on a closed interval.

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`. Returns `(x_min, f_min)`.
pub fn golden_section<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64), E> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while (b - a) > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Minimizes `f` over `[lo, hi]` without assuming convexity: evaluates a
/// uniform grid of `grid_points` (endpoints included), then refines around the
/// best grid point with golden-section search down to `tol`.
pub fn grid_then_golden<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    grid_points: usize,
    tol: f64,
) -> Result<(f64, f64), E> {
    if !(hi > lo) || grid_points < 2 {
        return Ok((lo, f(lo)?));
    }
    let step = (hi - lo) / (grid_points - 1) as f64;
    let at = |i: usize| if i == grid_points - 1 { hi } else { lo + step * i as f64 };
    let mut best = (0usize, f64::INFINITY);
    for i in 0..grid_points {
        let v = f(at(i))?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let (i, fv) = best;
    let a = at(i.saturating_sub(1));
    let b = at((i + 1).min(grid_points - 1));
    let (x, fx) = golden_section(&mut f, a, b, tol)?;
    Ok(if fx < fv { (x, fx) } else { (at(i), fv) })
}
