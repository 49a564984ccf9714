//! `Φ = High∘σ` and the combinatorial R-matrix by descent to `max(B)`.

use serde_json::{json, Value};

use super::Engine;
use crate::classical::{path_string, ClassicalType};
use crate::error::{Error, Result};
use crate::kr::{Family, Tensor, TensorElement};

/// `Φ(b) = High(σ(b))` for a classically highest `b`, with the `e`-path used.
pub fn phi(t: &Tensor, b: &TensorElement) -> Result<(TensorElement, Vec<u8>)> {
    if !t.is_highest(b) {
        return Err(Error::Precondition(format!("Φ needs a highest element, got {}", t.render(b)?)));
    }
    Ok(t.high(&t.sigma(b)?))
}

/// How an R image was obtained.
///
/// `b = lower(b_0, high_path)` and `b_k = e_{a_k} σ(b_{k-1})` with
/// `paths[k-1] = a_k`; `max_image = R(b_m)` for the last iterate `b_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub high_path: Vec<u8>,
    pub paths: Vec<Vec<u8>>,
    pub max_pair: TensorElement,
    pub max_image: TensorElement,
}

impl Certificate {
    /// `(σ∘f_{Rev(a_1)}∘…∘σ∘f_{Rev(a_m)})` applied to `max_image`, then the
    /// classical path back down.
    pub fn replay(&self, t21: &Tensor) -> Result<TensorElement> {
        let stuck = || Error::Inconsistent("an R certificate cannot be replayed".into());
        let mut x = self.max_image.clone();
        for a in self.paths.iter().rev() {
            x = t21.lower(&x, a).ok_or_else(stuck)?;
            x = t21.sigma(&x)?;
        }
        t21.lower(&x, &self.high_path).ok_or_else(stuck)
    }
}

#[derive(Clone, Debug)]
pub struct RResult {
    pub image: TensorElement,
    pub certificate: Certificate,
    /// `High(b), Φ(High(b)), …` up to the max element.
    pub iterates: Vec<TensorElement>,
}

impl RResult {
    pub fn to_json(&self, t12: &Tensor) -> Result<Value> {
        let t21 = t12.reversed();
        let iterates: Result<Vec<Value>> =
            self.iterates.iter().map(|b| Ok(json!(t12.tableaux(b)?))).collect();
        Ok(json!({
            "image": t21.tableaux(&self.image)?,
            "iterates": iterates?,
            "certificate": {
                "high_path": path_string(&self.certificate.high_path),
                "paths": self.certificate.paths.iter().map(|p| path_string(p)).collect::<Vec<_>>(),
                "max_pair": t12.tableaux(&self.certificate.max_pair)?,
                "max_image": t21.tableaux(&self.certificate.max_image)?,
            },
        }))
    }
}

impl Engine {
    /// R on a classically highest element of `max(B_1 ⊗ B_2)`.
    fn r_at_max(&self, t: &Tensor, top: &TensorElement) -> Result<TensorElement> {
        let shapes = t.shapes();
        let (ty, big_n) = match t.classical_type() {
            ClassicalType::A { letters } => (t.classical_type(), letters as usize),
            ty @ (ClassicalType::C { n } | ClassicalType::D { n }) => {
                if top.letters().iter().any(|x| x.is_barred()) {
                    return Err(Error::Inconsistent(format!(
                        "highest element {} of max(B) has barred letters",
                        t.render(top)?
                    )));
                }
                (ty, n as usize)
            }
        };
        let image = self.match_highest(ty, &t.weight(top), shapes[0], shapes[1], big_n)?;
        t.reversed().indices(&image)?;
        Ok(image)
    }

    /// The combinatorial R-matrix `B_1 ⊗ B_2 → B_2 ⊗ B_1`.
    pub fn combinatorial_r(&self, t: &Tensor, b: &TensorElement) -> Result<RResult> {
        if t.factors().len() != 2 {
            return Err(Error::Precondition("R needs exactly two factors".into()));
        }
        t.indices(b)?;
        let (h, high_path) = t.high(b);
        let mut iterates = vec![h];
        let mut paths = Vec::new();
        if t.algebra().family != Family::A {
            let cap = t.boxes();
            while !t.is_max(iterates.last().unwrap()) {
                if paths.len() >= cap {
                    return Err(Error::IterationCap(cap));
                }
                let (next, a) = phi(t, iterates.last().unwrap())?;
                paths.push(a);
                iterates.push(next);
            }
        }
        let max_pair = iterates.last().unwrap().clone();
        let max_image = self.r_at_max(t, &max_pair)?;
        let certificate = Certificate { high_path, paths, max_pair, max_image };
        let image = certificate.replay(&t.reversed())?;
        Ok(RResult { image, certificate, iterates })
    }
}
