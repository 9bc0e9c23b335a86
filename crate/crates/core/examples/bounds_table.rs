//! Lower bounds for two-color k-majority side by side, and the binomial
//! identity tying them together.

use ballsearch::bounds::{adaptive_lower_bounds, binomial_identity_check};

fn main() {
    println!("n   k   aigner  prop1  prop2  prop2_fix");
    for (n, k) in [(9, 6), (10, 8), (12, 7), (16, 9), (20, 15)] {
        let set = adaptive_lower_bounds(n, k).unwrap();
        let v = |name: &str| set.get(name).unwrap().value.to_string();
        println!(
            "{n:<3} {k:<3} {:>6}  {:>5}  {:>5}  {:>9}",
            v("aigner"),
            v("prop1"),
            v("prop2"),
            v("prop2_fix")
        );
    }
    let all = (1..=40).all(|n| (1..=n).all(|k| binomial_identity_check(n, k)));
    println!("identity holds for all 1 <= k <= n <= 40: {all}");
}
