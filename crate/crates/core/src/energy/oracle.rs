//! Breadth-first oracles on a full two-factor product.
//!
//! Starting from `u(B_1)⊗u(B_2) ↦ u(B_2)⊗u(B_1)` with `H̄ = 0`, every arrow of
//! `B_1 ⊗ B_2` is mirrored in `B_2 ⊗ B_1`. `H̄` is constant along classical
//! arrows; along `e_0` it drops by one when `e_0` hits the left factor on both
//! sides (LL), rises by one when it hits the right factor on both sides (RR),
//! and stays put otherwise.

use std::collections::VecDeque;
use std::sync::Arc;

use super::Engine;
use crate::classical::{signature_rule, Op};
use crate::error::{Error, Result};
use crate::kr::{KrCrystal, Tensor, TensorElement, ENUMERATION_LIMIT};

const UNSEEN: u64 = u64::MAX;

/// R and `H̄` on every element of a two-factor product, stored densely by
/// factor indices.
#[derive(Debug)]
pub struct PairOracle {
    left: Arc<KrCrystal>,
    right: Arc<KrCrystal>,
    image: Vec<u64>,
    energy: Vec<i32>,
}

fn pack(x: u32, y: u32) -> u64 {
    (x as u64) << 32 | y as u64
}

fn unpack(p: u64) -> (u32, u32) {
    ((p >> 32) as u32, p as u32)
}

const NONE: u32 = u32::MAX;

/// `(ε_i, φ_i, e_i, f_i)` for every vertex and affine color of one factor.
struct Arrows {
    colors: usize,
    rows: Vec<(u32, u32, u32, u32)>,
}

impl Arrows {
    fn new(kr: &KrCrystal) -> Self {
        let colors = kr.spec().alg.n() + 1;
        let mut rows = Vec::with_capacity(kr.len() * colors);
        for v in 0..kr.len() as u32 {
            for i in 0..colors {
                let (eps, phi) = kr.signs(i, v);
                let e = kr.apply(Op::E, i, v).unwrap_or(NONE);
                let f = kr.apply(Op::F, i, v).unwrap_or(NONE);
                rows.push((eps, phi, e, f));
            }
        }
        Arrows { colors, rows }
    }

    fn row(&self, v: u32, i: usize) -> (u32, u32, u32, u32) {
        self.rows[v as usize * self.colors + i]
    }
}

/// `e_i`/`f_i` on `x ⊗ y` by index, with the factor it acted on.
fn step(a: &Arrows, b: &Arrows, op: Op, i: usize, x: u32, y: u32) -> Option<(u32, u32, usize)> {
    let (ra, rb) = (a.row(x, i), b.row(y, i));
    let s = signature_rule(2, |k| if k == 0 { (ra.0, ra.1) } else { (rb.0, rb.1) });
    let (k, t) = match op {
        Op::E => (s.e_at?, if s.e_at? == 0 { ra.2 } else { rb.2 }),
        Op::F => (s.f_at?, if s.f_at? == 0 { ra.3 } else { rb.3 }),
    };
    debug_assert!(t != NONE);
    Some(if k == 0 { (t, y, 0) } else { (x, t, 1) })
}

impl PairOracle {
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    fn slot(&self, b: &TensorElement) -> Option<usize> {
        if b.len() != 2 {
            return None;
        }
        let x = self.left.index(b.factor(0))?;
        let y = self.right.index(b.factor(1))?;
        Some(x as usize * self.right.len() + y as usize)
    }

    fn element(a: &KrCrystal, b: &KrCrystal, p: u64) -> TensorElement {
        let (x, y) = unpack(p);
        TensorElement::from_factors([a.word(x), b.word(y)])
    }

    pub fn r(&self, b: &TensorElement) -> Option<TensorElement> {
        self.slot(b).map(|k| Self::element(&self.right, &self.left, self.image[k]))
    }

    pub fn h(&self, b: &TensorElement) -> Option<i64> {
        self.slot(b).map(|k| self.energy[k] as i64)
    }

    /// Every `(b, R(b), H̄(b))`.
    pub fn entries(&self) -> impl Iterator<Item = (TensorElement, TensorElement, i64)> + '_ {
        let m = self.right.len();
        (0..self.image.len()).map(move |k| {
            let b = Self::element(&self.left, &self.right, pack((k / m) as u32, (k % m) as u32));
            (b, Self::element(&self.right, &self.left, self.image[k]), self.energy[k] as i64)
        })
    }
}

/// Builds R and `H̄` on all of `t12 = B_1 ⊗ B_2`.
pub fn bfs_pair(t12: &Tensor) -> Result<PairOracle> {
    if t12.factors().len() != 2 {
        return Err(Error::Precondition("the pair oracle needs exactly two factors".into()));
    }
    let total = t12.cardinality();
    if total > ENUMERATION_LIMIT {
        return Err(Error::Guard { what: "pair oracle".into(), needed: total, limit: ENUMERATION_LIMIT });
    }
    let (a, b) = (t12.factors()[0].clone(), t12.factors()[1].clone());
    let n = t12.algebra().n();
    let m = b.len();
    let mut image = vec![UNSEEN; total as usize];
    let mut energy = vec![0i32; total as usize];
    let mut queue = VecDeque::new();
    image[a.u() as usize * m + b.u() as usize] = pack(b.u(), a.u());
    queue.push_back((a.u(), b.u()));
    let mut seen = 1usize;
    let (arr_a, arr_b) = (Arrows::new(&a), Arrows::new(&b));
    while let Some((x, y)) = queue.pop_front() {
        let k = x as usize * m + y as usize;
        let (rx, ry) = unpack(image[k]);
        let h = energy[k];
        for i in 0..=n {
            for op in [Op::E, Op::F] {
                let (x2, y2, rx2, ry2, side, rside) = match (step(&arr_a, &arr_b, op, i, x, y), step(&arr_b, &arr_a, op, i, rx, ry)) {
                    (None, None) => continue,
                    (Some((x2, y2, s)), Some((rx2, ry2, rs))) => (x2, y2, rx2, ry2, s, rs),
                    _ => {
                        return Err(Error::Inconsistent(format!(
                            "color {i} {op:?} arrow is not mirrored at {}",
                            t12.render(&PairOracle::element(&a, &b, pack(x, y)))?
                        )))
                    }
                };
                // LL lowers H̄ along e_0, RR raises it; f_0 undoes that
                let delta = match (side, rside) {
                    (0, 0) => -1,
                    (1, 1) => 1,
                    _ => 0,
                };
                let h2 = match (i, op) {
                    (0, Op::E) => h + delta,
                    (0, Op::F) => h - delta,
                    _ => h,
                };
                let k2 = x2 as usize * m + y2 as usize;
                if image[k2] == UNSEEN {
                    image[k2] = pack(rx2, ry2);
                    energy[k2] = h2;
                    seen += 1;
                    queue.push_back((x2, y2));
                } else if image[k2] != pack(rx2, ry2) || energy[k2] != h2 {
                    return Err(Error::Inconsistent(format!(
                        "conflicting propagation at {}",
                        t12.render(&PairOracle::element(&a, &b, pack(x2, y2)))?
                    )));
                }
            }
        }
    }
    if seen as u128 != total {
        return Err(Error::Inconsistent(format!("reached {seen} of {total} elements")));
    }
    let mut hit = vec![false; total as usize];
    for &p in &image {
        let (u, v) = unpack(p);
        let k = u as usize * a.len() + v as usize;
        if std::mem::replace(&mut hit[k], true) {
            return Err(Error::Inconsistent("the propagated map is not injective".into()));
        }
    }
    Ok(PairOracle { left: a, right: b, image, energy })
}

impl Engine {
    /// Memoized [`bfs_pair`] for a two-factor tensor.
    pub fn pair_oracle(&self, t12: &Tensor) -> Result<Arc<PairOracle>> {
        let specs = t12.specs();
        if specs.len() != 2 {
            return Err(Error::Precondition("the pair oracle needs exactly two factors".into()));
        }
        let key = (specs[0], specs[1]);
        if let Some(o) = self.oracles.lock().expect("memo poisoned").get(&key) {
            return Ok(o.clone());
        }
        let o = Arc::new(bfs_pair(t12)?);
        self.oracles.lock().expect("memo poisoned").insert(key, o.clone());
        Ok(o)
    }

    /// The full R map on `B_1 ⊗ B_2` from the oracle.
    pub fn bfs_r(&self, t12: &Tensor) -> Result<Arc<PairOracle>> {
        self.pair_oracle(t12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::{AlgebraSpec, Family, Session};

    fn tensor(e: &Engine, fam: Family, n: usize, shapes: &[(usize, usize)]) -> Tensor {
        Tensor::new(e.session(), AlgebraSpec::new(fam, n).unwrap(), shapes).unwrap()
    }

    #[test]
    fn anchor_and_involution() {
        let e = Engine::new(Session::in_memory());
        for (fam, n, shapes) in [
            (Family::D, 4, [(1, 1), (1, 1)]),
            (Family::C, 2, [(1, 2), (1, 1)]),
            (Family::A, 2, [(1, 1), (2, 1)]),
        ] {
            let t = tensor(&e, fam, n, &shapes);
            let fwd = e.bfs_r(&t).unwrap();
            let back = e.bfs_r(&t.reversed()).unwrap();
            assert_eq!(fwd.r(&t.u()), Some(t.reversed().u()));
            assert_eq!(fwd.h(&t.u()), Some(0));
            for (b, rb, _) in fwd.entries() {
                assert_eq!(back.r(&rb), Some(b));
            }
        }
    }

    #[test]
    fn identical_factors_give_the_identity() {
        let e = Engine::new(Session::in_memory());
        let t = tensor(&e, Family::D, 4, &[(1, 1), (1, 1)]);
        let o = e.bfs_r(&t).unwrap();
        assert_eq!(o.len(), 64);
        assert!(o.entries().all(|(b, rb, _)| b == rb));
    }

    #[test]
    fn guard() {
        let e = Engine::new(Session::in_memory());
        let t = tensor(&e, Family::D, 6, &[(2, 2), (2, 2)]);
        assert!(matches!(bfs_pair(&t), Err(Error::Guard { .. })));
    }
}
