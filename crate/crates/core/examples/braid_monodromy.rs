//! Braid of a square loop around the branch point of `X^3 - Y` (a full
//! turn of three roots) and of a loop avoiding it.

use vankampen::monodromy::{segment_braid, vertex_configuration, BraidWord, FollowOptions, Point};
use vankampen::poly::{BivariatePoly, MultiPoly};

fn loop_braid(curve: &BivariatePoly, corners: &[Point]) -> BraidWord {
    let opts = FollowOptions::default();
    let configs: Vec<_> = corners
        .iter()
        .map(|y| vertex_configuration(curve, y, 0, 2).unwrap())
        .collect();
    let mut w = BraidWord::identity(curve.fiber_degree());
    for k in 0..corners.len() {
        let l = (k + 1) % corners.len();
        w.append(
            &segment_braid(
                curve,
                &corners[k],
                &corners[l],
                &configs[k],
                &configs[l],
                &opts,
            )
            .unwrap(),
        );
    }
    w
}

fn main() {
    let curve = BivariatePoly::from_multi(&MultiPoly::parse("X^3 - Y").unwrap(), "X", "Y").unwrap();
    let p = |a, b| Point::from_ratios(a, 1, b, 1);
    let around = [p(1, -1), p(1, 1), p(-1, 1), p(-1, -1)];
    let w = loop_braid(&curve, &around);
    println!("around 0: {} (permutation {:?})", w, w.permutation());
    let beside = [p(2, -1), p(3, -1), p(3, 1), p(2, 1)];
    let w = loop_braid(&curve, &beside);
    println!("beside 0: [{}]", w);
}
