//! Fundamental groups of the complements of a few small curves.

use vankampen::group::abelianization;
use vankampen::pipeline::{run_vk, PipelineConfig};
use vankampen::poly::MultiPoly;

fn main() {
    let curves: Vec<String> = match std::env::args().nth(1) {
        Some(c) => vec![c],
        None => [
            "x - y^5",
            "x^2 - y^3",
            "x^2 - y^2",
            "x^3 - y^2",
            "x^2 - y^4 + y",
            "x^3 - 3*x*y + y^3",
        ]
        .map(String::from)
        .to_vec(),
    };
    for c in curves {
        let run = run_vk(&MultiPoly::parse(&c).unwrap(), &PipelineConfig::default()).unwrap();
        let p = &run.presentation;
        println!(
            "{} (fiber {}, {} loops): abelianization {}",
            c,
            run.fiber,
            run.braids.len(),
            abelianization(p)
        );
        print!("{}", p);
    }
}
