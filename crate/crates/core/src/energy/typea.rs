//! Type-A engine: promotion, R by component matching, and `H̄`/`D̄` tables.
//!
//! Products of rectangles are classically multiplicity free, so a classically
//! highest element of `B_1 ⊗ B_2` is determined by its weight. That makes R a
//! lookup and `H̄` a function of the component shape `ν`. `H̄` tables come from
//! the breadth-first oracle over `A_{N-1}^(1)` with the smallest workable `N`;
//! the values do not depend on `N` once the component exists.

use std::collections::HashMap;
use std::sync::Arc;

use super::Engine;
use crate::classical::{
    generate_component, highest_word, is_highest, lower_along, raise_to_highest, ClassicalType,
    KnTableau, Letter, Word,
};
use crate::combinat::{Partition, WeightVector};
use crate::error::{Error, Result};
use crate::kr::{promotion, AlgebraSpec, Family, Tensor, TensorElement, MAX_LETTER};

/// Promotion on a rectangular tableau over `{1,…,n+1}`.
pub fn typea_promotion(t: &KnTableau, n: usize) -> Result<KnTableau> {
    let shape = t.shape();
    let (r, s) = (shape.len(), shape.part(0) as usize);
    if shape != Partition::rectangle(r, s) {
        return Err(Error::Precondition(format!("promotion needs a rectangle, got shape {shape}")));
    }
    let ty = ClassicalType::A { letters: n as u8 + 1 };
    for col in t.columns() {
        for &x in col {
            ty.check_letter(x)?;
        }
    }
    let w = promotion(&t.reading_word(), r, s, n as i8 + 1)?;
    KnTableau::from_word(ty, &w, &shape)
}

/// Smallest `N` such that `gl_N` carries a component of length `len` and every
/// rectangle `B^{r,s}` is a KR crystal of `A_{N-1}^(1)`.
pub fn typea_rank(len: usize, shapes: &[(usize, usize)]) -> usize {
    shapes.iter().map(|&(r, _)| r + 1).chain([len, 2]).max().unwrap_or(2)
}

fn gl(big_n: usize) -> (ClassicalType, Vec<usize>) {
    (ClassicalType::A { letters: big_n as u8 }, (1..big_n).collect())
}

fn largest_letter(b: &TensorElement) -> usize {
    b.letters().iter().map(|x| x.index()).max().unwrap_or(1)
}

impl Engine {
    /// Reading words of the `r × s` rectangle over `{1,…,N}`.
    pub(crate) fn rectangle_words(&self, r: usize, s: usize, big_n: usize) -> Result<Arc<Vec<Word>>> {
        let mut memo = self.rectangles.lock().expect("memo poisoned");
        if let Some(w) = memo.get(&(r, s, big_n)) {
            return Ok(w.clone());
        }
        let g = generate_component(&Partition::rectangle(r, s), ClassicalType::A { letters: big_n as u8 })?;
        let words = Arc::new(g.vertices);
        memo.insert((r, s, big_n), words.clone());
        Ok(words)
    }

    /// The unique `y_1` with `u(B_2) ⊗ y_1` highest of weight `ν`, searched
    /// among unbarred rectangles. `ty` decides highestness.
    pub(crate) fn match_highest(
        &self,
        ty: ClassicalType,
        nu: &WeightVector,
        left: (usize, usize),
        right: (usize, usize),
        big_n: usize,
    ) -> Result<TensorElement> {
        let colors: Vec<usize> = ty.colors().collect();
        let u2 = highest_word(&Partition::rectangle(right.0, right.1));
        let target = nu - &ty.weight_of(&u2);
        let mut found: Vec<Word> = Vec::new();
        for y1 in self.rectangle_words(left.0, left.1, big_n)?.iter() {
            if ty.weight_of(y1) != target {
                continue;
            }
            let mut w = u2.clone();
            w.extend_from_slice(y1);
            if is_highest(ty, &colors, &w) {
                found.push(y1.clone());
            }
        }
        match found.len() {
            1 => Ok(TensorElement::from_factors([u2, found.pop().unwrap()])),
            0 => Err(Error::Inconsistent(format!("no highest element of weight {nu:?} in the reversed product"))),
            k => Err(Error::AmbiguousMatching(format!("{k} highest elements of weight {nu:?}"))),
        }
    }

    /// Type-A R on `B^{r_1,s_1} ⊗ B^{r_2,s_2}` over `gl_N`.
    pub fn typea_r(&self, shapes: [(usize, usize); 2], b: &TensorElement, big_n: usize) -> Result<TensorElement> {
        let (ty, colors) = gl(big_n);
        let mut h = b.letters().to_vec();
        let path = raise_to_highest(ty, &colors, &mut h);
        let nu = ty.weight_of(&h);
        let top = self.match_highest(ty, &nu, shapes[0], shapes[1], big_n)?;
        let mut w = top.letters().to_vec();
        if !lower_along(ty, &path, &mut w) {
            return Err(Error::Inconsistent("type-A R image cannot be lowered back".into()));
        }
        Ok(TensorElement::from_factors([w[..top.factor(0).len()].to_vec(), w[top.factor(0).len()..].to_vec()]))
    }

    /// `H̄` on the classical components of `B^{r_1,s_1} ⊗ B^{r_2,s_2}` over `gl_N`.
    pub(crate) fn typea_h_table(
        &self,
        shapes: [(usize, usize); 2],
        big_n: usize,
    ) -> Result<Arc<HashMap<Partition, i64>>> {
        let key = (shapes[0].0, shapes[0].1, shapes[1].0, shapes[1].1, big_n);
        if let Some(t) = self.typea_h.lock().expect("memo poisoned").get(&key) {
            return Ok(t.clone());
        }
        if big_n > MAX_LETTER {
            return Err(Error::OutOfScope(format!("type-A rank {big_n} exceeds the supported maximum")));
        }
        let alg = AlgebraSpec::new(Family::A, big_n - 1)?;
        let t = Tensor::new(self.session(), alg, &shapes)?;
        let oracle = self.pair_oracle(&t)?;
        let mut table = HashMap::new();
        for (b, _, h) in oracle.entries() {
            if t.is_highest(&b) {
                let nu = t.weight(&b).to_partition().expect("highest weights are partitions");
                table.insert(nu, h);
            }
        }
        let table = Arc::new(table);
        self.typea_h.lock().expect("memo poisoned").insert(key, table.clone());
        Ok(table)
    }

    /// Type-A `H̄` of a two-factor element, looked up by its component shape.
    pub fn typea_h(&self, shapes: [(usize, usize); 2], b: &TensorElement) -> Result<i64> {
        let big_n = largest_letter(b).max(2);
        let (ty, colors) = gl(big_n);
        let mut h = b.letters().to_vec();
        raise_to_highest(ty, &colors, &mut h);
        let nu = ty.weight_of(&h).to_partition().expect("highest weights are partitions");
        let table = self.typea_h_table(shapes, typea_rank(nu.len(), &shapes))?;
        table
            .get(&nu)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("shape {nu} is not a component of the type-A product")))
    }

    /// Type-A intrinsic coenergy `D̄^∅` by the right-split recursion.
    ///
    /// `b` must use unbarred letters; it is read over `gl_N` with `N` large
    /// enough for its letters and for every rectangle.
    pub fn typea_coenergy(&self, shapes: &[(usize, usize)], b: &TensorElement) -> Result<i64> {
        if shapes.len() != b.len() {
            return Err(Error::Precondition(format!("{} shapes for {} factors", shapes.len(), b.len())));
        }
        if let Some(x) = b.letters().iter().find(|x| x.is_barred()) {
            return Err(Error::Precondition(format!("barred letter {} in a type-A element", x.0)));
        }
        let big_n = typea_rank(largest_letter(b), shapes);
        self.typea_d_rec(shapes, b, big_n)
    }

    fn typea_d_rec(&self, shapes: &[(usize, usize)], b: &TensorElement, big_n: usize) -> Result<i64> {
        let l = shapes.len();
        if l <= 1 {
            return Ok(0);
        }
        let mut total = self.typea_d_rec(&shapes[..l - 1], &b.slice(0, l - 1), big_n)?;
        let mut x: Vec<Letter> = b.factor(l - 1).to_vec();
        for j in (0..l - 1).rev() {
            let pair = TensorElement::from_factors([b.factor(j).to_vec(), x.clone()]);
            let pshapes = [shapes[j], shapes[l - 1]];
            total += self.typea_h(pshapes, &pair)?;
            x = self.typea_r(pshapes, &pair, big_n)?.factor(0).to_vec();
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::Session;

    fn elt(factors: &[&[i8]]) -> TensorElement {
        TensorElement::from_factors(factors.iter().map(|f| f.iter().map(|&x| Letter(x)).collect()))
    }

    #[test]
    fn single_box_promotion() {
        let ty = ClassicalType::A { letters: 4 };
        for i in 1..=4 {
            let t = KnTableau::from_ints(ty, &[vec![i]]).unwrap();
            let p = typea_promotion(&t, 3).unwrap();
            assert_eq!(p.to_ints(), vec![vec![i % 4 + 1]]);
        }
        let bad = KnTableau::from_ints(ty, &[vec![1, 2], vec![1]]).unwrap();
        assert!(typea_promotion(&bad, 3).is_err());
    }

    #[test]
    fn two_boxes() {
        let e = Engine::new(Session::in_memory());
        // 1⊗1 spans the symmetric square, 1⊗2 the exterior one; a row 12 reads 2,1
        assert_eq!(e.typea_h([(1, 1), (1, 1)], &elt(&[&[1], &[1]])).unwrap(), 0);
        assert_eq!(e.typea_h([(1, 1), (1, 1)], &elt(&[&[1], &[2]])).unwrap(), 1);
        assert_eq!(e.typea_h([(1, 1), (1, 1)], &elt(&[&[2], &[1]])).unwrap(), 0);
        assert_eq!(e.typea_r([(1, 1), (1, 2)], &elt(&[&[2], &[1, 1]]), 3).unwrap(), elt(&[&[2, 1], &[1]]));
    }

    #[test]
    fn tables_do_not_depend_on_rank() {
        let e = Engine::new(Session::in_memory());
        for shapes in [[(1, 1), (1, 2)], [(2, 1), (1, 2)], [(1, 2), (2, 2)]] {
            let base = typea_rank(0, &shapes);
            let small = e.typea_h_table(shapes, base + 1).unwrap();
            let big = e.typea_h_table(shapes, base + 2).unwrap();
            for (nu, h) in small.iter() {
                assert_eq!(big.get(nu), Some(h), "{shapes:?} at {nu}");
            }
            assert!(big.len() >= small.len());
        }
    }

    #[test]
    fn u_has_zero_coenergy() {
        let e = Engine::new(Session::in_memory());
        let shapes = [(2, 2), (1, 3), (3, 1)];
        let u = TensorElement::from_factors(
            shapes.iter().map(|&(r, s)| highest_word(&Partition::rectangle(r, s))),
        );
        assert_eq!(e.typea_coenergy(&shapes, &u).unwrap(), 0);
    }
}
