/// Composite Simpson rule on `[lo, hi]` with `panels` subintervals (rounded
/// up to an even count). An empty interval integrates to zero.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let panels = (panels.max(2) + 1) & !1;
    let h = (hi - lo) / panels as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for k in 1..panels {
        let x = lo + k as f64 * h;
        if k % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi))
}

/// Simpson on `[0, 1]` with the interval split at `kink`, each smooth piece
/// receiving `panels` subintervals.
pub fn simpson_split(f: impl Fn(f64) -> f64, kink: f64, panels: usize) -> f64 {
    let kink = kink.clamp(0.0, 1.0);
    simpson(&f, 0.0, kink, panels) + simpson(&f, kink, 1.0, panels)
}
