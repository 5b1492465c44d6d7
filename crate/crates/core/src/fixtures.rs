//! Reference structures and diagrams used by tests, examples and the CLI.

use crate::biquandle::{FiniteBiquandle, Tables};
use crate::bracket::Coefficients;
use crate::diagram::{self, KnotoidCode};
use crate::ring::Modulus;

fn build(under: &[Vec<usize>], over: &[Vec<usize>]) -> FiniteBiquandle {
    FiniteBiquandle::new(&Tables::from_one_based(under, over)).expect("fixture biquandle is valid")
}

/// A three-element biquandle with a bracket over Z_5 ([`bracket_a`]).
pub fn biquandle_a() -> FiniteBiquandle {
    build(
        &[vec![2, 1, 3], vec![1, 3, 2], vec![3, 2, 1]],
        &[vec![2, 2, 2], vec![3, 3, 3], vec![1, 1, 1]],
    )
}

/// Bracket on [`biquandle_a`] over Z_5 with δ = 2 and w = 1.
pub fn bracket_a() -> Coefficients {
    Coefficients::from_block_rows(
        Modulus::new(5).unwrap(),
        &[
            vec![1, 2, 4, 4, 3, 1],
            vec![1, 1, 2, 4, 4, 3],
            vec![4, 4, 1, 1, 1, 4],
        ],
    )
}

/// A second three-element biquandle with a bracket over Z_7 ([`bracket_b`]).
pub fn biquandle_b() -> FiniteBiquandle {
    build(
        &[vec![2, 3, 1], vec![3, 1, 2], vec![1, 2, 3]],
        &[vec![2, 2, 2], vec![1, 1, 1], vec![3, 3, 3]],
    )
}

/// Bracket on [`biquandle_b`] over Z_7 with δ = 6 and w = 2.
pub fn bracket_b() -> Coefficients {
    Coefficients::from_block_rows(
        Modulus::new(7).unwrap(),
        &[
            vec![1, 2, 2, 3, 6, 6],
            vec![3, 1, 4, 2, 3, 5],
            vec![1, 6, 1, 3, 4, 3],
        ],
    )
}

/// Table knotoids by name, as signed Gauss codes.
pub const KNOTOIDS: &[(&str, &str)] = &[
    ("2.1", "O1- U2- U1- O2-"),
    ("3.1", "O1- U2+ O3+ U1- U3+ O2+"),
    ("4.1", "O1- U2- O3- U1- U4- O2- U3- O4-"),
    ("4.3", "O1- U2- O3- U4- U1- O4- U3- O2-"),
    ("4.4", "U1+ O2+ U3+ O4+ O1+ U2+ O3+ U4+"),
    ("5.14", "O1+ O2+ U3+ U1+ O4+ U5+ O3+ U2+ U4+ O5+"),
    ("5.27", "O1- O2+ U3+ U2+ O4- U5- U1- O5- U4- O3+"),
];

/// Parses a bare passage sequence into a named code.
pub fn code(name: &str, sequence: &str) -> KnotoidCode {
    let c = sequence.split_whitespace().count() / 2;
    diagram::parse(&format!("knotoid {name} crossings {c}\n{sequence}\n"))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Looks up a knotoid from [`KNOTOIDS`].
pub fn knotoid(name: &str) -> KnotoidCode {
    let (_, seq) = KNOTOIDS
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture knotoid {name}"));
    code(name, seq)
}

pub fn knotoid_table() -> Vec<KnotoidCode> {
    KNOTOIDS.iter().map(|(n, s)| code(n, s)).collect()
}

/// The one-crossing positive kink `U1+ O1+`.
pub fn kink() -> KnotoidCode {
    code("kink", "U1+ O1+")
}
