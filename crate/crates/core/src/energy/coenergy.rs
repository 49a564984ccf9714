//! Local coenergy `H̄` and intrinsic coenergy `D̄`.

use serde::{Deserialize, Serialize};

use super::phi::phi;
use super::Engine;
use crate::combinat::exact_exponent;
use crate::error::{Error, Result};
use crate::kr::{Family, Tensor, TensorElement};

/// Which route computes `D̄` and `H̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// `Φ` descent for two factors, right-split recursion beyond; the type-A
    /// engine in type A.
    Primary,
    /// `Φ` descent for any number of factors.
    Phi,
    /// Right-split recursion on breadth-first R and `H̄` tables.
    Oracle,
}

impl std::fmt::Display for Pipeline {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pipeline::Primary => "primary",
            Pipeline::Phi => "phi",
            Pipeline::Oracle => "oracle",
        })
    }
}

fn pair(t: &Tensor, j: usize, k: usize) -> Result<Tensor> {
    Tensor::from_crystals(vec![t.factors()[j].clone(), t.factors()[k].clone()])
}

fn cells(t: &Tensor) -> i64 {
    t.algebra().diamond().cells().unwrap_or(1) as i64
}

impl Engine {
    /// Intrinsic coenergy `D̄(b)`.
    pub fn coenergy(&self, t: &Tensor, b: &TensorElement, p: Pipeline) -> Result<i64> {
        t.indices(b)?;
        let l = t.factors().len();
        if l == 1 {
            return t.factor_d_bar(b, 0);
        }
        match (t.algebra().family, p) {
            (Family::A, Pipeline::Phi) => {
                Err(Error::OutOfScope("the Φ descent needs σ, which is not used in type A".into()))
            }
            (Family::A, Pipeline::Primary) => self.typea_coenergy(&t.shapes(), b),
            (_, Pipeline::Phi) => self.d_phi(t, b),
            (_, Pipeline::Primary) if l == 2 => self.d_phi(t, b),
            _ => self.d_split(t, b, p),
        }
    }

    /// `D̄` by iterating `Φ` down to `max(B)`, where `D̄ = (2/|◇|) D̄^∅`.
    fn d_phi(&self, t: &Tensor, b: &TensorElement) -> Result<i64> {
        let boxes = t.boxes() as i64;
        let cells = cells(t);
        let mut x = t.high(b).0;
        let mut corr = 0i64;
        for _ in 0..=boxes {
            let size = t.weight(&x).size() as i64;
            if size == boxes {
                if x.letters().iter().any(|c| c.is_barred()) {
                    return Err(Error::Inconsistent(format!(
                        "highest element {} of max(B) has barred letters",
                        t.render(&x)?
                    )));
                }
                let d0 = self.typea_coenergy(&t.shapes(), &x)?;
                return Ok(corr + exact_exponent(2 * d0, cells)? as i64);
            }
            corr += exact_exponent(boxes - size, cells)? as i64;
            x = phi(t, &x)?.0;
        }
        Err(Error::IterationCap(boxes as usize))
    }

    /// `D̄(b) = D̄(b_1⊗…⊗b_{L-1}) + Σ_j H̄(b_j ⊗ x_{j+1}) + D̄(x_1)`, where the
    /// last factor is carried to the front by R, `x_j` being its value at slot `j`.
    fn d_split(&self, t: &Tensor, b: &TensorElement, p: Pipeline) -> Result<i64> {
        let l = t.factors().len();
        let mut total = self.coenergy(&t.sub(0, l - 1), &b.slice(0, l - 1), p)?;
        let mut x = b.factor(l - 1).to_vec();
        for j in (0..l - 1).rev() {
            let pt = pair(t, j, l - 1)?;
            let pb = TensorElement::from_factors([b.factor(j).to_vec(), x]);
            total += self.local_h(&pt, &pb, p)?;
            x = self.r_image(&pt, &pb, p)?.factor(0).to_vec();
        }
        let last = &t.factors()[l - 1];
        Ok(total + last.d_bar(last.require(&x)?))
    }

    /// `R(b)` by the chosen route.
    pub fn r_image(&self, t: &Tensor, b: &TensorElement, p: Pipeline) -> Result<TensorElement> {
        match p {
            Pipeline::Oracle => self
                .pair_oracle(t)?
                .r(b)
                .ok_or_else(|| Error::Inconsistent("element missing from the R oracle".into())),
            _ => Ok(self.combinatorial_r(t, b)?.image),
        }
    }

    /// Local coenergy `H̄(b_1 ⊗ b_2)`, normalized by `H̄(u ⊗ u) = 0`.
    ///
    /// The primary route is `D̄(b_1⊗b_2) − D̄(b_1) − D̄(b'_2)` with
    /// `R(b_1⊗b_2) = b'_2⊗b'_1`; the oracle route reads the breadth-first table.
    pub fn local_h(&self, t: &Tensor, b: &TensorElement, p: Pipeline) -> Result<i64> {
        if t.factors().len() != 2 {
            return Err(Error::Precondition("H̄ needs exactly two factors".into()));
        }
        t.indices(b)?;
        match (p, t.algebra().family) {
            (Pipeline::Oracle, _) => self
                .pair_oracle(t)?
                .h(b)
                .ok_or_else(|| Error::Inconsistent("element missing from the H̄ oracle".into())),
            (_, Family::A) => {
                let s = t.shapes();
                self.typea_h([s[0], s[1]], b)
            }
            _ => {
                let r = self.combinatorial_r(t, b)?;
                let d = self.d_phi(t, b)?;
                Ok(d - t.factor_d_bar(b, 0)? - t.reversed().factor_d_bar(&r.image, 0)?)
            }
        }
    }
}
