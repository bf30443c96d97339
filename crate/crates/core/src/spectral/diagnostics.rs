use crate::error::{Error, Result};

/// `values[k] - values[k-1]`: the gap between the k-th and (k+1)-th smallest
/// eigenvalue, counting from one.
pub fn eigengap(values: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k + 1 > values.len() {
        return Err(Error::InvalidArgument(format!(
            "eigengap index {k} out of range for {} values",
            values.len()
        )));
    }
    Ok(values[k] - values[k - 1])
}

/// Inverse participation ratio `sum v_i^4` of a unit vector. Ranges from
/// `1/n` (fully spread) to 1 (a single spike).
pub fn inverse_participation_ratio(v: &[f64]) -> Result<f64> {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitNorm(norm));
    }
    Ok(v.iter().map(|a| a.powi(4)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps() {
        assert!((eigengap(&[0.0, 0.1, 0.5], 2).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(eigengap(&[0.0, 0.3], 1).unwrap(), 0.3);
        assert!(eigengap(&[0.0, 0.3], 2).is_err());
        assert!(eigengap(&[0.0, 0.3], 0).is_err());
    }

    #[test]
    fn ipr_extremes() {
        let u = vec![0.1; 100];
        assert!((inverse_participation_ratio(&u).unwrap() - 0.01).abs() < 1e-12);
        let mut e = vec![0.0; 7];
        e[3] = 1.0;
        assert_eq!(inverse_participation_ratio(&e).unwrap(), 1.0);
        assert!(inverse_participation_ratio(&[1.0, 1.0]).is_err());
    }
}
