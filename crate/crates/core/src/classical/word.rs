//! The tensor product (signature) rule on words of letters.
//!
//! Convention: each factor contributes `−^{ε_i} +^{φ_i}` read left to right,
//! adjacent `+−` pairs cancel, `e_i` acts on the factor of the rightmost
//! surviving `−` and `f_i` on the factor of the leftmost surviving `+`.
//! For two factors this is `e_i(b₁⊗b₂) = e_i b₁ ⊗ b₂` iff `φ_i(b₁) ≥ ε_i(b₂)`.

use super::letter::{ClassicalType, Letter, Op, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub eps: u32,
    pub phi: u32,
    /// Factor on which `e_i` acts.
    pub e_at: Option<usize>,
    /// Factor on which `f_i` acts.
    pub f_at: Option<usize>,
}

/// Signature rule over `len` factors with `(ε_i, φ_i)` given by `item`.
#[inline]
pub fn signature_rule(len: usize, item: impl Fn(usize) -> (u32, u32)) -> Signature {
    let mut sig = Signature::default();
    let mut open = 0u32;
    for k in 0..len {
        let (eps, phi) = item(k);
        let m = open.min(eps);
        open -= m;
        if eps > m {
            sig.eps += eps - m;
            sig.e_at = Some(k);
        }
        open += phi;
    }
    sig.phi = open;
    if open > 0 {
        let mut close = 0u32;
        for k in (0..len).rev() {
            let (eps, phi) = item(k);
            let m = close.min(phi);
            close -= m;
            if phi > m {
                sig.f_at = Some(k);
            }
            close += eps;
        }
    }
    sig
}

#[inline]
pub fn word_signature(ty: ClassicalType, i: usize, word: &[Letter]) -> Signature {
    signature_rule(word.len(), |k| ty.letter_signs(i, word[k]))
}

pub fn word_eps(ty: ClassicalType, i: usize, word: &[Letter]) -> u32 {
    word_signature(ty, i, word).eps
}

pub fn word_phi(ty: ClassicalType, i: usize, word: &[Letter]) -> u32 {
    word_signature(ty, i, word).phi
}

/// Applies `e_i` in place; returns false (word untouched) when `e_i` is null.
#[inline]
pub fn word_e(ty: ClassicalType, i: usize, word: &mut [Letter]) -> bool {
    match word_signature(ty, i, word).e_at {
        Some(k) => {
            word[k] = ty.raw_e(i, word[k]).expect("signature rule picked an inert letter");
            true
        }
        None => false,
    }
}

/// Applies `f_i` in place; returns false (word untouched) when `f_i` is null.
#[inline]
pub fn word_f(ty: ClassicalType, i: usize, word: &mut [Letter]) -> bool {
    match word_signature(ty, i, word).f_at {
        Some(k) => {
            word[k] = ty.raw_f(i, word[k]).expect("signature rule picked an inert letter");
            true
        }
        None => false,
    }
}

#[inline]
pub fn word_apply(ty: ClassicalType, op: Op, i: usize, word: &mut [Letter]) -> bool {
    match op {
        Op::E => word_e(ty, i, word),
        Op::F => word_f(ty, i, word),
    }
}

/// Checked operator on a word, returning the image or `None` when null.
pub fn tensor_apply(ty: ClassicalType, op: Op, i: usize, word: &[Letter]) -> Result<Option<Word>> {
    if word.is_empty() {
        return Err(Error::Precondition("operator applied to an empty word".into()));
    }
    ty.check_color(i)?;
    for &x in word {
        ty.check_letter(x)?;
    }
    let mut w = word.to_vec();
    Ok(word_apply(ty, op, i, &mut w).then_some(w))
}

pub fn is_highest(ty: ClassicalType, colors: &[usize], word: &[Letter]) -> bool {
    colors.iter().all(|&i| word_signature(ty, i, word).eps == 0)
}

/// Raises `word` to the highest element over `colors`, always applying the
/// smallest applicable color. Returns the colors applied, in order.
pub fn raise_to_highest(ty: ClassicalType, colors: &[usize], word: &mut [Letter]) -> Vec<u8> {
    let mut path = Vec::new();
    'outer: loop {
        for &i in colors {
            if word_e(ty, i, word) {
                path.push(i as u8);
                continue 'outer;
            }
        }
        return path;
    }
}

/// Undoes [`raise_to_highest`]: applies `f` along the reversed path.
pub fn lower_along(ty: ClassicalType, path: &[u8], word: &mut [Letter]) -> bool {
    path.iter().rev().all(|&i| word_f(ty, i as usize, word))
}

/// `(highest, e-path)` such that lowering `highest` along the path gives `word`.
pub fn to_highest(ty: ClassicalType, colors: &[usize], word: &[Letter]) -> Result<(Word, Vec<u8>)> {
    for &i in colors {
        ty.check_color(i)?;
    }
    let mut w = word.to_vec();
    let path = raise_to_highest(ty, colors, &mut w);
    Ok((w, path))
}

/// Renders a color path: digits when every color is below 10, comma separated otherwise.
pub fn path_string(path: &[u8]) -> String {
    if path.iter().all(|&c| c < 10) {
        path.iter().map(|c| char::from(b'0' + c)).collect()
    } else {
        path.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}
