use std::fmt;
use std::sync::Arc;

use super::cache::Session;
use super::crystal::KrCrystal;
use super::spec::{AlgebraSpec, Family, KrSpec};
use crate::classical::{
    is_highest, raise_to_highest, signature_rule, word_apply, word_signature, ClassicalType,
    KnTableau, Letter, Op, Word,
};
use crate::combinat::{Partition, WeightVector};
use crate::error::{Error, Result};

/// Hard cap on enumerated or materialized tensor elements.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// An element `b_1 ⊗ … ⊗ b_L`, stored as the concatenated reading words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    letters: Word,
    cuts: Vec<u16>,
}

impl TensorElement {
    pub fn from_factors<I: IntoIterator<Item = Word>>(factors: I) -> Self {
        let mut letters = Vec::new();
        let mut cuts = vec![0];
        for f in factors {
            letters.extend(f);
            cuts.push(letters.len() as u16);
        }
        TensorElement { letters, cuts }
    }

    pub fn len(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factor(&self, k: usize) -> &[Letter] {
        &self.letters[self.cuts[k] as usize..self.cuts[k + 1] as usize]
    }

    pub fn factors(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        (0..self.len()).map(|k| self.factor(k))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [Letter] {
        &mut self.letters
    }

    pub fn replace_factor(&self, k: usize, w: &[Letter]) -> Self {
        Self::from_factors(
            (0..self.len()).map(|j| if j == k { w.to_vec() } else { self.factor(j).to_vec() }),
        )
    }

    /// `b_1 ⊗ … ⊗ b_k` followed by `c_1 ⊗ …`.
    pub fn concat(&self, other: &TensorElement) -> Self {
        Self::from_factors(self.factors().chain(other.factors()).map(<[Letter]>::to_vec))
    }

    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self::from_factors((from..to).map(|k| self.factor(k).to_vec()))
    }
}

/// A tensor product `B^{r_1,s_1} ⊗ … ⊗ B^{r_L,s_L}` of one algebra.
#[derive(Clone, Debug)]
pub struct Tensor {
    alg: AlgebraSpec,
    factors: Vec<Arc<KrCrystal>>,
}

impl Tensor {
    pub fn new(session: &Session, alg: AlgebraSpec, shapes: &[(usize, usize)]) -> Result<Self> {
        if shapes.is_empty() {
            return Err(Error::InvalidSpec("a tensor product needs at least one factor".into()));
        }
        let mut factors = Vec::with_capacity(shapes.len());
        for &(r, s) in shapes {
            factors.push(session.crystal(alg.kr(r, s)?)?);
        }
        Ok(Tensor { alg, factors })
    }

    pub fn from_crystals(factors: Vec<Arc<KrCrystal>>) -> Result<Self> {
        let alg = factors
            .first()
            .ok_or_else(|| Error::InvalidSpec("a tensor product needs at least one factor".into()))?
            .spec()
            .alg;
        if factors.iter().any(|f| f.spec().alg != alg) {
            return Err(Error::InvalidSpec("factors belong to different algebras".into()));
        }
        Ok(Tensor { alg, factors })
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn classical_type(&self) -> ClassicalType {
        self.alg.classical()
    }

    pub fn factors(&self) -> &[Arc<KrCrystal>] {
        &self.factors
    }

    pub fn specs(&self) -> Vec<KrSpec> {
        self.factors.iter().map(|f| f.spec()).collect()
    }

    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|f| (f.spec().r(), f.spec().s())).collect()
    }

    /// `|B| = Σ r_j s_j`.
    pub fn boxes(&self) -> usize {
        self.factors.iter().map(|f| f.spec().boxes()).sum()
    }

    /// Number of elements, saturating.
    pub fn cardinality(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.len() as u128))
    }

    /// `B_k ⊗ … ⊗ B_{l-1}` sharing the same factor crystals.
    pub fn sub(&self, from: usize, to: usize) -> Tensor {
        Tensor { alg: self.alg, factors: self.factors[from..to].to_vec() }
    }

    /// `B_2 ⊗ B_1` for a two-factor tensor, and generally the reversed order.
    pub fn reversed(&self) -> Tensor {
        Tensor { alg: self.alg, factors: self.factors.iter().rev().cloned().collect() }
    }

    pub fn colors(&self) -> Vec<usize> {
        self.classical_type().colors().collect()
    }

    pub fn u(&self) -> TensorElement {
        TensorElement::from_factors(self.factors.iter().map(|f| f.word(f.u())))
    }

    pub fn indices(&self, b: &TensorElement) -> Result<Vec<u32>> {
        self.check_arity(b)?;
        self.factors.iter().enumerate().map(|(k, f)| f.require(b.factor(k))).collect()
    }

    fn check_arity(&self, b: &TensorElement) -> Result<()> {
        if b.len() != self.factors.len() {
            return Err(Error::Precondition(format!(
                "element has {} factors, tensor has {}",
                b.len(),
                self.factors.len()
            )));
        }
        Ok(())
    }

    /// Builds an element from factor words, checking membership.
    pub fn element(&self, factors: Vec<Word>) -> Result<TensorElement> {
        let b = TensorElement::from_factors(factors);
        self.indices(&b)?;
        Ok(b)
    }

    /// Parses `[[[1,2]],[[1,3,-3]]]` or `[[1,2]] ⊗ [[1,3,-3]]`.
    pub fn parse(&self, text: &str) -> Result<TensorElement> {
        let text = text.trim();
        let tableaux: Vec<Vec<Vec<i64>>> = if text.contains('⊗') {
            text.split('⊗')
                .map(|t| serde_json::from_str(t.trim()))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("element {text:?}: {e}")))?
        } else {
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("element {text:?}: {e}")))?
        };
        self.from_tableaux(&tableaux)
    }

    pub fn from_tableaux(&self, tableaux: &[Vec<Vec<i64>>]) -> Result<TensorElement> {
        if tableaux.len() != self.factors.len() {
            return Err(Error::Parse(format!(
                "expected {} factors, got {}",
                self.factors.len(),
                tableaux.len()
            )));
        }
        let ty = self.classical_type();
        let mut words = Vec::with_capacity(tableaux.len());
        for (f, cols) in self.factors.iter().zip(tableaux) {
            let t = KnTableau::from_ints(ty, cols)?;
            let w = t.reading_word();
            let v = f.require(&w)?;
            if f.shape(v) != &t.shape() {
                return Err(Error::NotAnElement {
                    word: t.render(),
                    crystal: f.spec().to_string(),
                });
            }
            words.push(w);
        }
        Ok(TensorElement::from_factors(words))
    }

    /// Columns of each factor, bottom to top.
    pub fn tableaux(&self, b: &TensorElement) -> Result<Vec<Vec<Vec<i64>>>> {
        let idx = self.indices(b)?;
        Ok(self
            .factors
            .iter()
            .zip(idx)
            .enumerate()
            .map(|(k, (f, v))| columns_of(b.factor(k), f.shape(v)))
            .collect())
    }

    /// JSON payload accepted by [`Tensor::parse`].
    pub fn to_json(&self, b: &TensorElement) -> Result<String> {
        Ok(serde_json::to_string(&self.tableaux(b)?).expect("integers serialize"))
    }

    pub fn render(&self, b: &TensorElement) -> Result<String> {
        Ok(self
            .tableaux(b)?
            .iter()
            .map(|t| serde_json::to_string(t).expect("integers serialize"))
            .collect::<Vec<_>>()
            .join(" ⊗ "))
    }

    pub fn weight(&self, b: &TensorElement) -> WeightVector {
        self.classical_type().weight_of(b.letters())
    }

    /// `(ε_i, φ_i)` for any affine color.
    pub fn signs(&self, i: usize, b: &TensorElement) -> (u32, u32) {
        if i > 0 {
            let s = word_signature(self.classical_type(), i, b.letters());
            return (s.eps, s.phi);
        }
        let idx: Vec<u32> =
            self.factors.iter().enumerate().map(|(k, f)| f.index(b.factor(k)).expect("member")).collect();
        let s = signature_rule(idx.len(), |k| self.factors[k].signs(0, idx[k]));
        (s.eps, s.phi)
    }

    /// Factor on which `e_i`/`f_i` acts, if any.
    pub fn acting_factor(&self, op: Op, i: usize, b: &TensorElement) -> Option<usize> {
        let ty = self.classical_type();
        let s = if i > 0 {
            signature_rule(b.len(), |k| {
                let s = word_signature(ty, i, b.factor(k));
                (s.eps, s.phi)
            })
        } else {
            let idx: Vec<u32> =
                self.factors.iter().enumerate().map(|(k, f)| f.index(b.factor(k)).expect("member")).collect();
            signature_rule(idx.len(), |k| self.factors[k].signs(0, idx[k]))
        };
        match op {
            Op::E => s.e_at,
            Op::F => s.f_at,
        }
    }

    /// `e_i`/`f_i` for `0 ≤ i ≤ n` by the signature rule.
    pub fn apply(&self, op: Op, i: usize, b: &TensorElement) -> Option<TensorElement> {
        if i > 0 {
            let mut out = b.clone();
            return word_apply(self.classical_type(), op, i, out.letters_mut()).then_some(out);
        }
        let idx: Vec<u32> =
            self.factors.iter().enumerate().map(|(k, f)| f.index(b.factor(k)).expect("member")).collect();
        let s = signature_rule(idx.len(), |k| self.factors[k].signs(0, idx[k]));
        let k = match op {
            Op::E => s.e_at?,
            Op::F => s.f_at?,
        };
        let f = &self.factors[k];
        let t = f.apply(op, 0, idx[k]).expect("signature rule picked an active factor");
        Some(b.replace_factor(k, &f.word(t)))
    }

    /// Factorwise `σ`; unavailable in type A.
    pub fn sigma(&self, b: &TensorElement) -> Result<TensorElement> {
        if self.alg.family == Family::A {
            return Err(Error::OutOfScope("sigma is only defined here for types C and D".into()));
        }
        let idx = self.indices(b)?;
        Ok(TensorElement::from_factors(
            self.factors.iter().zip(idx).map(|(f, v)| f.word(f.sigma(v).expect("sigma installed"))),
        ))
    }

    pub fn is_highest(&self, b: &TensorElement) -> bool {
        is_highest(self.classical_type(), &self.colors(), b.letters())
    }

    /// `High(b)` with the `e`-path applied (smallest color first).
    pub fn high(&self, b: &TensorElement) -> (TensorElement, Vec<u8>) {
        let mut out = b.clone();
        let path = raise_to_highest(self.classical_type(), &self.colors(), out.letters_mut());
        (out, path)
    }

    /// Lowers along an `e`-path returned by [`Tensor::high`].
    pub fn lower(&self, b: &TensorElement, path: &[u8]) -> Option<TensorElement> {
        let mut out = b.clone();
        path.iter()
            .rev()
            .all(|&c| word_apply(self.classical_type(), Op::F, c as usize, out.letters_mut()))
            .then_some(out)
    }

    /// `λ(High(b))`.
    pub fn highest_weight(&self, b: &TensorElement) -> WeightVector {
        self.weight(&self.high(b).0)
    }

    /// `b ∈ max(B)`, i.e. `|λ(High(b))| = |B|`.
    pub fn is_max(&self, b: &TensorElement) -> bool {
        self.highest_weight(b).size() == self.boxes() as i32
    }

    /// Single-factor coenergies `D̄(b_k)`.
    pub fn factor_d_bar(&self, b: &TensorElement, k: usize) -> Result<i64> {
        let f = &self.factors[k];
        Ok(f.d_bar(f.require(b.factor(k))?))
    }

    /// All classically highest elements, optionally of a fixed weight.
    ///
    /// Prefix pruning: `b_1 ⊗ … ⊗ b_k` is highest iff the prefix is highest and
    /// `ε_i(b_k) ≤ φ_i(b_1 ⊗ … ⊗ b_{k-1})` for every color.
    pub fn highest_elements(&self, weight: Option<&WeightVector>) -> Result<Vec<TensorElement>> {
        self.highest_elements_for(&self.colors(), weight)
    }

    /// Elements killed by `e_i` for every `i` in `colors`.
    pub fn highest_elements_for(
        &self,
        colors: &[usize],
        weight: Option<&WeightVector>,
    ) -> Result<Vec<TensorElement>> {
        let ty = self.classical_type();
        let mut budget = ENUMERATION_LIMIT;
        let mut out = Vec::new();
        let mut frontier = vec![TensorElement::from_factors(std::iter::empty())];
        for f in &self.factors {
            let needed = (frontier.len() as u128).saturating_mul(f.len() as u128);
            if needed > budget {
                return Err(Error::Guard {
                    what: "highest-element enumeration".into(),
                    needed: ENUMERATION_LIMIT - budget + needed,
                    limit: ENUMERATION_LIMIT,
                });
            }
            budget -= needed;
            let eps: Vec<Vec<u32>> = (0..f.len() as u32)
                .map(|v| {
                    let w = f.word(v);
                    colors.iter().map(|&i| word_signature(ty, i, &w).eps).collect()
                })
                .collect();
            let mut next = Vec::new();
            for prefix in &frontier {
                let phi: Vec<u32> =
                    colors.iter().map(|&i| word_signature(ty, i, prefix.letters()).phi).collect();
                for (v, e) in eps.iter().enumerate() {
                    if e.iter().zip(&phi).all(|(a, b)| a <= b) {
                        let mut factors: Vec<Word> = prefix.factors().map(<[Letter]>::to_vec).collect();
                        factors.push(f.word(v as u32));
                        next.push(TensorElement::from_factors(factors));
                    }
                }
            }
            frontier = next;
        }
        for b in frontier {
            if weight.is_none_or(|w| &self.weight(&b) == w) {
                out.push(b);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Every element of the tensor product, guarded by [`ENUMERATION_LIMIT`].
    pub fn all_elements(&self) -> Result<Vec<TensorElement>> {
        let total = self.cardinality();
        if total > ENUMERATION_LIMIT {
            return Err(Error::Guard {
                what: "tensor product materialization".into(),
                needed: total,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut out = vec![TensorElement::from_factors(std::iter::empty())];
        for f in &self.factors {
            let mut next = Vec::with_capacity(out.len() * f.len());
            for prefix in &out {
                for v in 0..f.len() as u32 {
                    next.push(prefix.concat(&TensorElement::from_factors([f.word(v)])));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Shapes `λ` of the classical components of each factor of `b`.
    pub fn factor_shapes(&self, b: &TensorElement) -> Result<Vec<Partition>> {
        let idx = self.indices(b)?;
        Ok(self.factors.iter().zip(idx).map(|(f, v)| f.shape(v).clone()).collect())
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.factors.iter().map(|k| format!("B^{{{},{}}}", k.spec().r, k.spec().s)).collect();
        write!(f, "{} of {}", parts.join("⊗"), self.alg)
    }
}

/// Cuts a reading word into columns of `shape` without admissibility checks.
pub fn columns_of(word: &[Letter], shape: &Partition) -> Vec<Vec<i64>> {
    let heights = shape.column_heights();
    let mut cols = vec![Vec::new(); heights.len()];
    let mut pos = 0;
    for (j, &h) in heights.iter().enumerate().rev() {
        cols[j] = word[pos..pos + h].iter().map(|x| x.0 as i64).collect();
        pos += h;
    }
    cols
}
