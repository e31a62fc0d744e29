//! Benchmark workloads: fixed instances of increasing size.

use multiflower::{generate_random, PolynomialInstance};

/// `(label, instance)` pairs with growing vertex and edge counts at rank 4.
pub fn workloads() -> Vec<(String, PolynomialInstance)> {
    [(8, 6), (12, 10), (16, 16), (20, 24)]
        .into_iter()
        .map(|(n, m)| (format!("n{n}_m{m}"), generate_random(n, m, 4, 7).expect("valid parameters")))
        .collect()
}
