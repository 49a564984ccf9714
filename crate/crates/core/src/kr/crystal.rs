use std::collections::HashSet;

use super::pack::{decode, encode, MAX_WORD};
use super::promotion::promotion;
use super::sigma::solve_sigma;
use super::spec::{kr_components, Family, KrSpec};
use crate::classical::{
    highest_word, word_apply, word_signature, ClassicalType, Letter, Op, Word,
};
use crate::combinat::{Partition, WeightVector};
use crate::error::{Error, Result};

/// Largest single KR crystal that will be materialized.
pub const FACTOR_LIMIT: usize = 8_000_000;

/// How the 0-arrows are obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroMap {
    /// `e_0 = σ e_n σ`.
    Sigma(Vec<u32>),
    /// `e_0 = pr⁻¹ e_1 pr` (type A).
    Promotion { pr: Vec<u32>, pr_inv: Vec<u32> },
}

/// A KR crystal `B^{r,s}` with its vertices stored as sorted packed words.
#[derive(Clone, Debug)]
pub struct KrCrystal {
    spec: KrSpec,
    ty: ClassicalType,
    components: Vec<Partition>,
    keys: Vec<u128>,
    shape_of: Vec<u8>,
    zero: ZeroMap,
}

impl KrCrystal {
    /// Builds the vertex set, then `σ` (types C, D) or promotion (type A).
    pub fn build(spec: KrSpec) -> Result<Self> {
        let mut kr = Self::classical_part(spec)?;
        kr.zero = match spec.alg.family {
            Family::A => promotion_map(&kr)?,
            Family::C | Family::D => ZeroMap::Sigma(solve_sigma(&kr)?),
        };
        Ok(kr)
    }

    /// Vertices and classical structure only; the zero map is left empty.
    pub(crate) fn classical_part(spec: KrSpec) -> Result<Self> {
        let ty = spec.alg.classical();
        let components = kr_components(spec);
        let mut keys = Vec::new();
        let mut shapes = Vec::new();
        for (c, lam) in components.iter().enumerate() {
            let comp = closure(ty, &highest_word(lam), FACTOR_LIMIT - keys.len(), spec)?;
            shapes.resize(shapes.len() + comp.len(), c as u8);
            keys.extend(comp);
        }
        let mut perm: Vec<u32> = (0..keys.len() as u32).collect();
        perm.sort_unstable_by_key(|&k| keys[k as usize]);
        let sorted_keys: Vec<u128> = perm.iter().map(|&k| keys[k as usize]).collect();
        let shape_of: Vec<u8> = perm.iter().map(|&k| shapes[k as usize]).collect();
        Ok(KrCrystal {
            spec,
            ty,
            components,
            keys: sorted_keys,
            shape_of,
            zero: ZeroMap::Sigma(Vec::new()),
        })
    }

    pub(crate) fn from_parts(
        spec: KrSpec,
        keys: Vec<u128>,
        shape_of: Vec<u8>,
        zero: ZeroMap,
    ) -> Self {
        KrCrystal {
            spec,
            ty: spec.alg.classical(),
            components: kr_components(spec),
            keys,
            shape_of,
            zero,
        }
    }

    pub fn spec(&self) -> KrSpec {
        self.spec
    }

    pub fn classical_type(&self) -> ClassicalType {
        self.ty
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub(crate) fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub(crate) fn shape_indices(&self) -> &[u8] {
        &self.shape_of
    }

    pub fn zero_map(&self) -> &ZeroMap {
        &self.zero
    }

    pub fn index(&self, w: &[Letter]) -> Option<u32> {
        if w.len() > MAX_WORD {
            return None;
        }
        self.index_key(encode(w))
    }

    #[inline]
    pub fn index_key(&self, key: u128) -> Option<u32> {
        self.keys.binary_search(&key).ok().map(|k| k as u32)
    }

    pub fn word(&self, v: u32) -> Word {
        decode(self.keys[v as usize])
    }

    pub fn shape(&self, v: u32) -> &Partition {
        &self.components[self.shape_of[v as usize] as usize]
    }

    /// Index of `u`, the highest element of the `(s^r)` component.
    pub fn u(&self) -> u32 {
        self.index(&highest_word(&self.spec.rectangle())).expect("u is a vertex")
    }

    pub fn weight(&self, v: u32) -> WeightVector {
        self.ty.weight_of(&self.word(v))
    }

    pub fn sigma(&self, v: u32) -> Option<u32> {
        match &self.zero {
            ZeroMap::Sigma(s) => Some(s[v as usize]),
            ZeroMap::Promotion { .. } => None,
        }
    }

    /// Classical operator on an index.
    #[inline]
    pub fn apply_classical(&self, op: Op, i: usize, v: u32) -> Option<u32> {
        let mut w = self.word(v);
        if !word_apply(self.ty, op, i, &mut w) {
            return None;
        }
        Some(self.index(&w).expect("classical operators preserve the crystal"))
    }

    /// `e_i` or `f_i` for any affine color `0 ≤ i ≤ n`.
    pub fn apply(&self, op: Op, i: usize, v: u32) -> Option<u32> {
        if i > 0 {
            return self.apply_classical(op, i, v);
        }
        match &self.zero {
            ZeroMap::Sigma(s) => {
                let n = self.spec.alg.n();
                self.apply_classical(op, n, s[v as usize]).map(|t| s[t as usize])
            }
            ZeroMap::Promotion { pr, pr_inv } => {
                self.apply_classical(op, 1, pr[v as usize]).map(|t| pr_inv[t as usize])
            }
        }
    }

    /// `(ε_i, φ_i)` for any affine color.
    pub fn signs(&self, i: usize, v: u32) -> (u32, u32) {
        let (j, t) = match (&self.zero, i) {
            (_, i) if i > 0 => (i, v),
            (ZeroMap::Sigma(s), _) => (self.spec.alg.n(), s[v as usize]),
            (ZeroMap::Promotion { pr, .. }, _) => (1, pr[v as usize]),
        };
        let sig = word_signature(self.ty, j, &self.word(t));
        (sig.eps, sig.phi)
    }

    /// Single-factor coenergy `(rs − |λ|)/|◇|`, zero in type A.
    pub fn d_bar(&self, v: u32) -> i64 {
        match self.spec.alg.diamond().cells() {
            Some(cells) if self.spec.alg.family != Family::A => {
                let missing = self.spec.boxes() as i64 - self.shape(v).size() as i64;
                missing / cells as i64
            }
            _ => 0,
        }
    }

    /// Affine operators on a word of this crystal.
    pub fn apply_word(&self, op: Op, i: usize, w: &[Letter]) -> Result<Option<Word>> {
        let v = self.require(w)?;
        Ok(self.apply(op, i, v).map(|t| self.word(t)))
    }

    pub fn require(&self, w: &[Letter]) -> Result<u32> {
        self.index(w).ok_or_else(|| Error::NotAnElement {
            word: format!("{:?}", w.iter().map(|x| x.0).collect::<Vec<_>>()),
            crystal: self.spec.to_string(),
        })
    }
}

fn closure(ty: ClassicalType, hw: &[Letter], budget: usize, spec: KrSpec) -> Result<Vec<u128>> {
    let colors: Vec<usize> = ty.colors().collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut stack = vec![hw.to_vec()];
    seen.insert(encode(hw));
    while let Some(w) = stack.pop() {
        for &i in &colors {
            let mut x = w.clone();
            if word_apply(ty, Op::F, i, &mut x) && seen.insert(encode(&x)) {
                if seen.len() > budget {
                    return Err(Error::Guard {
                        what: spec.to_string(),
                        needed: seen.len() as u128,
                        limit: FACTOR_LIMIT as u128,
                    });
                }
                stack.push(x);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn promotion_map(kr: &KrCrystal) -> Result<ZeroMap> {
    let (r, s) = (kr.spec.r(), kr.spec.s());
    let big_n = kr.spec.alg.n() as i8 + 1;
    let mut pr = Vec::with_capacity(kr.len());
    for v in 0..kr.len() as u32 {
        let img = promotion(&kr.word(v), r, s, big_n)?;
        pr.push(kr.index(&img).ok_or_else(|| {
            Error::Inconsistent(format!("promotion leaves {}", kr.spec))
        })?);
    }
    let mut pr_inv = vec![u32::MAX; pr.len()];
    for (v, &t) in pr.iter().enumerate() {
        pr_inv[t as usize] = v as u32;
    }
    if pr_inv.contains(&u32::MAX) {
        return Err(Error::Inconsistent(format!("promotion is not a bijection on {}", kr.spec)));
    }
    Ok(ZeroMap::Promotion { pr, pr_inv })
}
