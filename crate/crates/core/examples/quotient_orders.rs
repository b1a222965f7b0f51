//! Enumerates the reflection-group quotient of every catalog braid
//! presentation and checks the central word.

use std::time::Instant;

use vankampen::catalog::{get_entry, GroupId};
use vankampen::group::{
    abelianization, is_central, todd_coxeter_with, Strategy, DEFAULT_MAX_COSETS,
};

fn main() {
    let strategy = match std::env::args().nth(1).as_deref() {
        Some("hlt") => Strategy::Hlt,
        _ => Strategy::Felsch,
    };
    for id in [
        GroupId::G24,
        GroupId::G27,
        GroupId::G29,
        GroupId::G31,
        GroupId::G33,
    ] {
        let e = get_entry(id);
        for (k, p) in e.presentations.iter().enumerate() {
            let start = Instant::now();
            let t = todd_coxeter_with(&p.with_quadratics(), &[], DEFAULT_MAX_COSETS, strategy)
                .expect("enumeration");
            println!(
                "{} #{}: order {} (expected {}), ({})^{} central: {}, abelianization {}, {:.2?}",
                id,
                k + 1,
                t.count(),
                e.order,
                e.central_base.display(p.gens()),
                e.central_exponent,
                is_central(&t, &e.central_word()),
                abelianization(p),
                start.elapsed()
            );
        }
    }
}
