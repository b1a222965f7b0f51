//! Van Kampen presentation of a braid file, its simplification and
//! abelianization. Reads the file named on the command line, or uses the
//! two braids `s1^3` and `s2^2` on three strings.

use vankampen::group::{abelianization, tietze_simplify, vankampen};
use vankampen::monodromy::{format_braids, parse_braids, BraidWord};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("braid file"),
        None => format_braids(
            3,
            &[
                BraidWord::parse(3, "1 1 1").unwrap(),
                BraidWord::parse(3, "2 2").unwrap(),
            ],
        ),
    };
    let (n, braids) = parse_braids(&text).expect("braid file");
    let raw = vankampen(n, &braids).expect("braids on n strings");
    println!("raw:\n{}", raw);
    let p = tietze_simplify(&raw, 0, 2000);
    println!("simplified:\n{}", p);
    println!("abelianization: {}", abelianization(&p));
}
