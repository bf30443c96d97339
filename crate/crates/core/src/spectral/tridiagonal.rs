//! Implicit QL iteration for symmetric tridiagonal matrices (EISPACK `tql2`).
//!
//! Only the requested rows of the eigenvector matrix are accumulated, so the
//! Lanczos convergence test can track just the last row in `O(m^2)`.

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and sub-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
///
/// Returns eigenvalues in ascending order and, for each requested row index
/// `r`, the row `r` of the orthogonal eigenvector matrix (entry `c` belongs to
/// the `c`-th returned eigenvalue).
pub(crate) fn tridiagonal_eigen(
    diag: &[f64],
    offdiag: &[f64],
    rows: &[usize],
) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = diag.len();
    debug_assert_eq!(offdiag.len() + 1, n.max(1));
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&offdiag[..n.saturating_sub(1)]);
    let mut z: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| (0..n).map(|c| if c == r { 1.0 } else { 0.0 }).collect())
        .collect();

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in z.iter_mut() {
                        let t = row[i + 1];
                        row[i + 1] = s * row[i] + c * t;
                        row[i] = c * row[i] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 || iter >= 60 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let z = z
        .into_iter()
        .map(|row| order.iter().map(|&k| row[k]).collect())
        .collect();
    (values, z)
}
