//! The lattice sum of a Chen fraction over positive integer points equals the
//! multiple zeta series of its exponents. Checked exactly at matching cutoffs:
//! the lattice points with `x_1 + ... + x_k <= N` biject with the index range
//! `N >= n_1 > ... > n_k > 0` of the truncated series.

use extshuffle::chen::fraction::Point;
use extshuffle::convergence::is_convergent;
use extshuffle::zeta::zeta_truncated;
use extshuffle::{ChenFraction, Composition, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact sum of `f` over positive integer points with coordinate sum `<= cutoff`.
fn lattice_sum(f: &ChenFraction, cutoff: i64) -> Rational {
    fn go(f: &ChenFraction, vars: &[u32], point: &mut Point, budget: i64, total: &mut Rational) {
        match vars.split_first() {
            None => *total += f.evaluate(point).unwrap(),
            Some((&v, rest)) => {
                // Leave at least one unit for each remaining coordinate.
                for x in 1..=budget - rest.len() as i64 {
                    point.insert(v, Rational::from_integer(BigInt::from(x)));
                    go(f, rest, point, budget - x, total);
                }
                point.remove(&v);
            }
        }
    }
    let mut total = Rational::zero();
    go(f, f.vars(), &mut Point::new(), cutoff, &mut total);
    total
}

#[test]
fn lattice_sum_matches_truncated_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 40 {
        let depth = rng.gen_range(1..=3);
        let exps: Vec<i64> = (0..depth).map(|_| rng.gen_range(-2..=4)).collect();
        let c = Composition::new(exps.clone());
        if !is_convergent(&c) {
            continue;
        }
        let mut labels: Vec<u32> = (1..=6).collect();
        labels.shuffle(&mut rng);
        labels.truncate(depth);
        let f = ChenFraction::new(c.clone(), labels).unwrap();
        let cutoff = 18;
        let lattice = lattice_sum(&f, cutoff).to_f64().unwrap();
        let series = zeta_truncated(&c, cutoff as u64).unwrap();
        assert!(
            (lattice - series).abs() <= 1e-12 * series.abs().max(1.0),
            "{f}: lattice {lattice}, series {series}"
        );
        checked += 1;
    }
}
