#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use knotoid_bracket::biquandle::{FiniteBiquandle, Tables};
use knotoid_bracket::bracket::BiquandleBracket;
use knotoid_bracket::diagram::{KnotoidCode, Passage, Role, Sign};
use knotoid_bracket::fixtures;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn bracket_a() -> BiquandleBracket {
    BiquandleBracket::new(Arc::new(fixtures::biquandle_a()), &fixtures::bracket_a()).unwrap()
}

pub fn bracket_b() -> BiquandleBracket {
    BiquandleBracket::new(Arc::new(fixtures::biquandle_b()), &fixtures::bracket_b()).unwrap()
}

/// `x ▷̲ y = x ▷̄ y = σ(x)` for the permutation `sigma`.
pub fn permutation_biquandle(sigma: &[usize]) -> FiniteBiquandle {
    let n = sigma.len();
    let t: Vec<Vec<usize>> = (0..n).map(|x| vec![sigma[x]; n]).collect();
    FiniteBiquandle::new(&Tables {
        under: t.clone(),
        over: t,
    })
    .unwrap()
}

pub fn sign(positive: bool) -> Sign {
    if positive {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// A uniformly shuffled well-formed code with exactly `c` crossings.
pub fn random_code<R: Rng>(rng: &mut R, c: usize) -> KnotoidCode {
    let mut slots: Vec<usize> = (0..2 * c).collect();
    slots.shuffle(rng);
    let mut passages = vec![Passage::new(0, Role::Over, Sign::Positive); 2 * c];
    for i in 0..c {
        let s = sign(rng.gen());
        let (r1, r2) = if rng.gen() {
            (Role::Over, Role::Under)
        } else {
            (Role::Under, Role::Over)
        };
        passages[slots[2 * i]] = Passage::new(i as u32 + 1, r1, s);
        passages[slots[2 * i + 1]] = Passage::new(i as u32 + 1, r2, s);
    }
    KnotoidCode::new(format!("r{c}"), passages)
        .unwrap()
        .normalized()
}

/// Every colour assignment of the semiarcs, in lexicographic order.
pub fn all_assignments(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |mut idx| {
        let mut colors = vec![0; len];
        for c in colors.iter_mut().rev() {
            *c = idx % n;
            idx /= n;
        }
        colors
    })
}

/// Fixtures plus a dozen random codes for each crossing count up to 5.
pub fn test_codes() -> Vec<KnotoidCode> {
    let mut rng = StdRng::seed_from_u64(11);
    let mut codes = fixtures::knotoid_table();
    codes.push(fixtures::kink());
    codes.push(KnotoidCode::unknotoid());
    for c in 0..=5 {
        for _ in 0..12 {
            codes.push(random_code(&mut rng, c));
        }
    }
    codes
}
