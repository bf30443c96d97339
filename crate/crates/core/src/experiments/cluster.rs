use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng::{self, streams};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn lloyd(points: &[Vec<f64>], mut centers: Vec<Vec<f64>>) -> (Vec<usize>, f64) {
    let k = centers.len();
    let dim = points[0].len();
    let mut labels = vec![0usize; points.len()];
    for _ in 0..300 {
        let mut changed = false;
        for (p, l) in points.iter().zip(labels.iter_mut()) {
            let best = (0..k)
                .min_by(|&a, &b| sq_dist(p, &centers[a]).total_cmp(&sq_dist(p, &centers[b])))
                .expect("k > 0");
            if best != *l {
                *l = best;
                changed = true;
            }
        }
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.iter().zip(&labels) {
            counts[l] += 1;
            sums[l].iter_mut().zip(p).for_each(|(s, x)| *s += x);
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        if !changed {
            break;
        }
    }
    let inertia = points.iter().zip(&labels).map(|(p, &l)| sq_dist(p, &centers[l])).sum();
    (labels, inertia)
}

/// k-means++ seeding followed by Lloyd iterations; the lowest within-cluster
/// sum of squares over `restarts` runs wins.
pub fn kmeans(points: &[Vec<f64>], k: usize, restarts: usize, seed: u64) -> Result<Vec<usize>> {
    if k == 0 || points.len() < k || restarts == 0 {
        return Err(Error::InvalidArgument(format!(
            "kmeans needs 0 < k <= points and restarts > 0 (k={k}, points={})",
            points.len()
        )));
    }
    let mut rng = rng::stream(seed, streams::KMEANS);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..restarts {
        let mut centers = vec![points[rng.random_range(0..points.len())].clone()];
        let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();
        while centers.len() < k {
            let total: f64 = d2.iter().sum();
            let next = if total > 0.0 {
                let mut r = rng.random::<f64>() * total;
                d2.iter()
                    .position(|&d| {
                        r -= d;
                        r < 0.0
                    })
                    .unwrap_or(points.len() - 1)
            } else {
                rng.random_range(0..points.len())
            };
            centers.push(points[next].clone());
            for (d, p) in d2.iter_mut().zip(points) {
                *d = d.min(sq_dist(p, &centers[centers.len() - 1]));
            }
        }
        let (labels, inertia) = lloyd(points, centers);
        if best.as_ref().is_none_or(|(b, _)| inertia < *b) {
            best = Some((inertia, labels));
        }
    }
    Ok(best.expect("restarts > 0").1)
}

fn choose2(x: usize) -> f64 {
    x as f64 * (x as f64 - 1.0) / 2.0
}

/// Adjusted Rand index between two labelings.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!("label lengths differ: {} vs {}", a.len(), b.len())));
    }
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let kb = b.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0usize; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        table[x][y] += 1;
    }
    let index: f64 = table.iter().flatten().map(|&c| choose2(c)).sum();
    let rows: f64 = table.iter().map(|r| choose2(r.iter().sum())).sum();
    let cols: f64 = (0..kb).map(|j| choose2(table.iter().map(|r| r[j]).sum())).sum();
    let all = choose2(a.len());
    let expected = rows * cols / all;
    let max = (rows + cols) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ari_known_values() {
        assert_eq!(adjusted_rand_index(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap(), 1.0);
        // Reference value for this pair of labelings is -0.5.
        assert!((adjusted_rand_index(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap() + 0.5).abs() < 1e-12);
        let a = [0, 0, 0, 1, 1, 1];
        let b = [0, 0, 1, 1, 2, 2];
        assert!((adjusted_rand_index(&a, &b).unwrap() - 0.242_424_242_424_242_4).abs() < 1e-12);
    }

    #[test]
    fn separated_clusters() {
        let mut pts = Vec::new();
        let mut truth = Vec::new();
        for c in 0..3 {
            for i in 0..20 {
                pts.push(vec![10.0 * c as f64 + 0.01 * i as f64, -(c as f64) * 5.0]);
                truth.push(c);
            }
        }
        let labels = kmeans(&pts, 3, 5, 1).unwrap();
        assert_eq!(adjusted_rand_index(&labels, &truth).unwrap(), 1.0);
        assert_eq!(labels, kmeans(&pts, 3, 5, 1).unwrap());
        assert!(kmeans(&pts, 0, 5, 1).is_err());
    }
}
