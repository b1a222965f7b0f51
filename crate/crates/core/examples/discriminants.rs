//! Discriminants of the catalog groups as determinants of their
//! derivation matrices, with weighted degrees and plane restrictions.

use std::time::Instant;

use vankampen::catalog::{discriminant_of, get_entry, plane_curve, GroupId};

fn main() {
    for id in [
        GroupId::G24,
        GroupId::G27,
        GroupId::G29,
        GroupId::G31,
        GroupId::G33,
    ] {
        let e = get_entry(id);
        let start = Instant::now();
        let d = discriminant_of(id).unwrap();
        let weights: Vec<(&str, u64)> = e
            .vars
            .iter()
            .copied()
            .zip(e.weights.iter().copied())
            .collect();
        println!(
            "{}: {} terms, weighted degree {:?} (expected {}), {:.1?}",
            id,
            d.num_terms(),
            d.weighted_degree_named(&weights).unwrap(),
            e.discriminant_degree(),
            start.elapsed()
        );
        if let Ok(c) = plane_curve(id) {
            println!("  plane curve: {}", c);
        }
    }
}
