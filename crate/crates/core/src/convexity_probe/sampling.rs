const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while index > 0 {
        r += f * (index % b) as f64;
        index /= b;
        f *= inv;
    }
    r
}

/// `count` deterministic points of the open Euclidean ball `B_radius(center)`.
///
/// The first point is the centre; the rest come from a Halton sequence on
/// the enclosing cube, keeping points that fall inside the ball.
pub fn ball_samples(center: &[f64], radius: f64, count: usize) -> Vec<Vec<f64>> {
    let dim = center.len();
    assert!(dim <= PRIMES.len(), "Halton sampling supports up to {} dimensions", PRIMES.len());
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(center.to_vec());
    let mut index = 1u64;
    while out.len() < count {
        let u: Vec<f64> = PRIMES[..dim].iter().map(|&p| 2.0 * radical_inverse(index, p) - 1.0).collect();
        index += 1;
        let norm2: f64 = u.iter().map(|c| c * c).sum();
        if norm2 < 1.0 {
            out.push(center.iter().zip(&u).map(|(c, o)| c + radius * o).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_stay_in_the_ball() {
        let pts = ball_samples(&[1.0, -2.0, 0.5], 0.1, 300);
        assert_eq!(pts.len(), 300);
        assert_eq!(pts[0], vec![1.0, -2.0, 0.5]);
        for p in &pts {
            let d2: f64 = p.iter().zip([1.0, -2.0, 0.5]).map(|(a, b)| (a - b) * (a - b)).sum();
            assert!(d2 < 0.01);
        }
        assert_eq!(pts, ball_samples(&[1.0, -2.0, 0.5], 0.1, 300));
    }

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }
}
