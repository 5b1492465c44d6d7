use proptest::prelude::*;

use crate::diagram::{KnotoidCode, Passage, Role, Sign};

/// Random well-formed codes with at most `max_c` crossings.
pub fn arb_code(max_c: usize) -> impl Strategy<Value = KnotoidCode> {
    (0..=max_c).prop_flat_map(|c| {
        let slots = Just((0..2 * c).collect::<Vec<_>>()).prop_shuffle();
        (slots, prop::collection::vec(any::<(bool, bool)>(), c)).prop_map(move |(slots, flags)| {
            let mut passages = vec![Passage::new(0, Role::Over, Sign::Positive); 2 * c];
            for (i, &(over_first, positive)) in flags.iter().enumerate() {
                let sign = if positive {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                let (r1, r2) = if over_first {
                    (Role::Over, Role::Under)
                } else {
                    (Role::Under, Role::Over)
                };
                passages[slots[2 * i]] = Passage::new(i as u32 + 1, r1, sign);
                passages[slots[2 * i + 1]] = Passage::new(i as u32 + 1, r2, sign);
            }
            KnotoidCode::new("k", passages).unwrap().normalized()
        })
    })
}
