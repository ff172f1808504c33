//! Derivative-free local maximisation used to polish sampled candidates.

/// Compass (pattern) search: probe `±step` along every coordinate, move on
/// improvement, halve the step otherwise. Returns the best point and value.
pub fn compass_maximize<F>(
    mut f: F,
    x0: Vec<f64>,
    initial_step: f64,
    min_step: f64,
    max_evals: usize,
) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64]) -> f64,
{
    let mut x = x0;
    let mut best = f(&x);
    let mut step = initial_step;
    let mut evals = 1;
    let mut probe = x.clone();
    while step > min_step && evals < max_evals {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                probe.copy_from_slice(&x);
                probe[i] += dir * step;
                let v = f(&probe);
                evals += 1;
                if v > best {
                    best = v;
                    x.copy_from_slice(&probe);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}
