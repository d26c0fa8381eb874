//! Synthetic inputs for the benchmarks.

use maabo::mining::{Direction, Literal, RuleSource};
use maabo::{Dataset, FeatureInfo, Rule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Binary task on `d` uniform features where only the first two carry signal.
pub fn synthetic(n: usize, d: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<f64>> = (0..d).map(|_| (0..n).map(|_| rng.gen()).collect()).collect();
    let labels = (0..n)
        .map(|r| {
            let y = usize::from(columns[0][r] + 0.5 * columns[1][r] > 0.75);
            if rng.gen_bool(0.1) {
                1 - y
            } else {
                y
            }
        })
        .collect();
    let features = (0..d).map(|i| FeatureInfo::new(format!("x{i}"))).collect();
    Dataset::new(features, columns, labels, vec!["neg".into(), "pos".into()]).unwrap()
}

/// `count` leaf rules over `d` features, most of them passing the default filters.
pub fn rule_set(count: usize, d: usize, seed: u64) -> Vec<Rule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let len = rng.gen_range(1..=4);
            let literals = (0..len)
                .map(|_| {
                    let dir = if rng.gen_bool(0.5) { Direction::Small } else { Direction::Large };
                    Literal::new(rng.gen_range(0..d), dir)
                })
                .collect();
            Rule {
                literals,
                class: rng.gen_range(0..2),
                n: rng.gen_range(40..200),
                gini: rng.gen_range(0.0..0.2),
                source: RuleSource { tree: i / 8, leaf: i % 8 },
            }
        })
        .collect()
}
