//! Random seeds and test points for randomized verification.

use num_integer::Integer;
use rand::Rng;

use crate::seed::Seed;

/// Random skew-symmetrizable seed of the given rank with `d_i ∈ {1, 2, 3}`
/// and `|ε_ij| ≤ max_entry · lcm(d_i, d_j)/d_i`.
pub fn random_seed<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_entry: i64) -> Seed {
    let d: Vec<i64> = (0..rank).map(|_| rng.gen_range(1..=3)).collect();
    let mut eps = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in i + 1..rank {
            let s = rng.gen_range(-max_entry..=max_entry);
            let l = d[i].lcm(&d[j]);
            // ε_ij/d_j = -ε_ji/d_i with ε_ij = s·l/d_i
            eps[i][j] = s * l / d[i];
            eps[j][i] = -s * l / d[j];
        }
    }
    Seed::from_matrix(eps, d).expect("construction is skew-symmetrizable")
}

/// Random point with coordinates `exp(u)`, `u` uniform in `[-spread, spread]`.
pub fn random_positive_point<R: Rng + ?Sized>(rng: &mut R, n: usize, spread: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-spread..=spread).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_seeds_are_valid_and_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for rank in 1..=4 {
            assert_eq!(random_seed(&mut a, rank, 2), random_seed(&mut b, rank, 2));
        }
    }
}
