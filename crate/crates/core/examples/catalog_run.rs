//! Van Kampen on a catalog plane curve, followed by the invariant-level
//! checks: `cargo run --release --example catalog_run -- G24`.

use std::time::Instant;

use vankampen::catalog::GroupId;
use vankampen::pipeline::{run_catalog, PipelineConfig};

fn main() {
    env_logger::init();
    let id: GroupId = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("G24")
        .parse()
        .expect("group id");
    let start = Instant::now();
    let r = run_catalog(id, &PipelineConfig::default()).expect("catalog run");
    println!("curve: {}", r.curve);
    println!("strings: {}, loops: {}", r.run.strands, r.run.braids.len());
    print!("{}", r.run.presentation);
    print!("{}", r.report.to_text());
    println!(
        "expected order: {} ({})",
        r.expected_order,
        if r.order_ok() { "ok" } else { "MISMATCH" }
    );
    println!("matches a printed presentation: {:?}", r.matches_target);
    println!("elapsed: {:.1?}", start.elapsed());
}
