//! Words of at most 25 letters packed into a `u128`, five bits per letter.
//! Code `v + 16` stores letter `v`; a zero code ends the word.

use crate::classical::{Letter, Word};

pub const MAX_WORD: usize = 25;

#[inline]
pub fn encode(word: &[Letter]) -> u128 {
    debug_assert!(word.len() <= MAX_WORD);
    let mut key = 0u128;
    for (k, x) in word.iter().enumerate() {
        key |= ((x.0 as i32 + 16) as u128) << (5 * k);
    }
    key
}

#[inline]
pub fn decode_into(key: u128, out: &mut Word) {
    out.clear();
    let mut k = key;
    while k != 0 {
        out.push(Letter(((k & 31) as i32 - 16) as i8));
        k >>= 5;
    }
}

pub fn decode(key: u128) -> Word {
    let mut w = Vec::with_capacity(MAX_WORD);
    decode_into(key, &mut w);
    w
}
