//! Voronoi graph of the discriminant roots of a curve and the loops
//! around them, in the text dump format.

use vankampen::geometry::{dump_text, loop_system, voronoi, BoundingBox};
use vankampen::pipeline::{curve_discriminant, fiber_and_base};
use vankampen::poly::MultiPoly;
use vankampen::roots::{certify_roots, RootOptions};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "x^3 - 3*x - y^2 + 1".into());
    let curve = MultiPoly::parse(&text).expect("polynomial");
    let (fiber, base) = fiber_and_base(&curve, None).expect("monic curve");
    let (_, disc) = curve_discriminant(&curve, &fiber, &base).expect("squarefree curve");
    let roots = certify_roots(&disc, &RootOptions::default()).expect("roots");
    let sites = roots.sorted().points().to_vec();
    let graph = voronoi(&sites, &BoundingBox::around(&sites)).expect("voronoi");
    let loops = loop_system(&graph, &sites, None).expect("loops");
    println!(
        "# {} sites, {} vertices, basepoint {}",
        sites.len(),
        graph.vertices().len(),
        loops.basepoint
    );
    print!("{}", dump_text(&graph, &sites, Some(&loops)));
    for row in loops
        .winding_matrix(&graph, &sites)
        .expect("winding numbers")
    {
        println!("# winding {:?}", row);
    }
}
