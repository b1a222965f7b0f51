//! Certified approximate roots of a univariate polynomial:
//! `cargo run --example certify_roots -- "x^5 - x - 1"`.

use vankampen::numeric::{gauss_norm, truncate_decimal};
use vankampen::poly::{MultiPoly, UniPoly};
use vankampen::roots::{certify_roots, RootOptions};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "x^5 - x - 1".into());
    let p = MultiPoly::parse(&text).expect("polynomial");
    let var = p.vars().first().cloned().unwrap_or_else(|| "x".into());
    let u = UniPoly::from_multi(&p, &var).expect("one variable");
    let c = certify_roots(&u, &RootOptions::default()).expect("certification");
    println!("{} roots of {}", c.degree(), text);
    for (z, e2) in c.sorted().points().iter().zip(c.sorted().eps_sq()) {
        println!(
            "  {}  (radius^2 {}, residual^2 {})",
            truncate_decimal(z, -6),
            e2,
            gauss_norm(&u.eval(z))
        );
    }
    let fine = c.refine(30, 2);
    println!(
        "refined to 30 digits: {}",
        truncate_decimal(&fine.sorted().points()[0], -30)
    );
}
