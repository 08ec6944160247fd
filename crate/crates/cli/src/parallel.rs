use comaxdom_core::domination::BruteForce;
use comaxdom_core::{IntPoly, Result, SimpleGraph};
use rayon::prelude::*;

const CHUNKS: u64 = 64;

/// Subset enumeration split over disjoint high-part ranges. Per-size counts
/// are summed, so the result does not depend on scheduling.
pub fn brute_force(g: &SimpleGraph) -> Result<IntPoly> {
    let bf = BruteForce::new(g)?;
    let total = bf.high_count();
    let step = total.div_ceil(CHUNKS).max(1);
    let counts = (0..total.div_ceil(step))
        .into_par_iter()
        .map(|c| bf.count_range(c * step..((c + 1) * step).min(total)))
        .reduce(
            || vec![0u64; bf.order() + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(BruteForce::finish(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use comaxdom_core::domination::brute_force_counts;
    use comaxdom_core::ringgraph::build_comaximal;

    #[test]
    fn matches_serial() {
        for n in [2u64, 9, 17, 22] {
            let g = build_comaximal(n).unwrap();
            assert_eq!(brute_force(&g).unwrap(), brute_force_counts(&g).unwrap());
        }
    }
}
