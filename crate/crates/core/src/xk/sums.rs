//! One-dimensional sums and the right side of the X=K identity.

use serde::Serialize;

use crate::combinat::{exact_exponent, lr_coefficient, tiled_partitions, Diamond, Partition, QPolynomial, WeightVector};
use crate::energy::{typea_rank, Engine, Pipeline};
use crate::error::{Error, Result};
use crate::kr::{AlgebraSpec, Family, Tensor, MAX_LETTER};

/// `n > (2ℓ+1) + |B| − |λ|` guarantees the X=K identity.
pub fn rank_bound(lambda: &Partition, shapes: &[(usize, usize)]) -> i64 {
    let boxes: usize = shapes.iter().map(|&(r, s)| r * s).sum();
    2 * lambda.len() as i64 + 1 + boxes as i64 - lambda.size() as i64
}

/// `X̄_{λ,B}(q) = Σ q^{D̄(b)}` over classically highest `b` of weight `λ`.
pub fn one_dim_sum(engine: &Engine, t: &Tensor, lambda: &Partition, p: Pipeline) -> Result<QPolynomial> {
    let dim = t.classical_type().weight_dim();
    let mut out = QPolynomial::zero();
    if lambda.len() > dim {
        return Ok(out);
    }
    let wt = WeightVector::from_partition(lambda, dim);
    for b in t.highest_elements(Some(&wt))? {
        let d = engine.coenergy(t, &b, p)?;
        out.add_term(exact_exponent(d, 1)?, 1);
    }
    Ok(out)
}

/// Type-A sum `X̄^∅_{ν,B}` over `gl_N` with the smallest workable `N`.
pub fn typea_one_dim_sum(engine: &Engine, shapes: &[(usize, usize)], nu: &Partition) -> Result<QPolynomial> {
    let big_n = typea_rank(nu.len(), shapes);
    if big_n > MAX_LETTER {
        return Err(Error::OutOfScope(format!("type-A rank {big_n} exceeds the supported maximum")));
    }
    let t = Tensor::new(engine.session(), AlgebraSpec::new(Family::A, big_n - 1)?, shapes)?;
    one_dim_sum(engine, &t, nu, Pipeline::Primary)
}

/// One `ν` term of the right side.
#[derive(Clone, Debug, Serialize)]
pub struct NuTerm {
    pub nu: Partition,
    /// `Σ_μ c^ν_{λμ}` over `μ ∈ P^◇_{|B|−|λ|}`.
    pub lr_sum: u64,
    pub typea_sum: QPolynomial,
}

/// `Σ_μ c^ν_{λμ}` over `◇`-tiled `μ` of size `|ν| − |λ|`.
pub fn branching_sum(lambda: &Partition, nu: &Partition, diamond: Diamond) -> Result<u64> {
    let d = nu.size() as i64 - lambda.size() as i64;
    if d < 0 {
        return Ok(0);
    }
    let mus = tiled_partitions(d as u32, diamond)?;
    Ok(mus.iter().map(|mu| lr_coefficient(lambda, mu, nu)).sum())
}

/// `q^{(|B|−|λ|)/|◇|} Σ c^ν_{λμ} X̄^∅_{ν,B}(q^{2/|◇|})` with its per-`ν` terms.
pub fn xk_rhs(
    engine: &Engine,
    lambda: &Partition,
    shapes: &[(usize, usize)],
    diamond: Diamond,
) -> Result<(QPolynomial, Vec<NuTerm>)> {
    let cells = match diamond {
        Diamond::Box => {
            return Err(Error::NotImplemented("the single-box case needs a twisted affine algebra".into()))
        }
        Diamond::Empty => return Err(Error::EmptyDiamond),
        d => d.cells().expect("dominoes have two cells"),
    };
    let boxes: u32 = shapes.iter().map(|&(r, s)| (r * s) as u32).sum();
    let rows: usize = shapes.iter().map(|&(r, _)| r).sum();
    let cols: u32 = shapes.iter().map(|&(_, s)| s as u32).sum();
    let d = boxes as i64 - lambda.size() as i64;
    if d < 0 || d % cells as i64 != 0 {
        return Ok((QPolynomial::zero(), Vec::new()));
    }
    let mut total = QPolynomial::zero();
    let mut terms = Vec::new();
    for nu in Partition::all_of(boxes) {
        // a product of rectangles has no component taller or wider than this
        if nu.len() > rows || nu.part(0) > cols || !nu.contains(lambda) {
            continue;
        }
        let lr_sum = branching_sum(lambda, &nu, diamond)?;
        if lr_sum == 0 {
            continue;
        }
        let x = typea_one_dim_sum(engine, shapes, &nu)?.substitute(2, cells)?;
        if x.is_zero() {
            continue;
        }
        for (e, c) in x.terms() {
            total.add_term(e, lr_sum as i64 * c);
        }
        terms.push(NuTerm { nu, lr_sum, typea_sum: x });
    }
    Ok((total.shift(d as u32 / cells), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::Session;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(rank_bound(&p(&[2, 1, 1]), &[(2, 2), (3, 1), (1, 3)]), 13);
        assert_eq!(rank_bound(&Partition::empty(), &[(1, 1)]), 2);
        assert_eq!(rank_bound(&p(&[1]), &[(1, 1)]), 3);
    }

    #[test]
    fn trivial_sums() {
        let e = Engine::new(Session::in_memory());
        let t = Tensor::new(e.session(), AlgebraSpec::new(Family::D, 4).unwrap(), &[(1, 1)]).unwrap();
        assert_eq!(one_dim_sum(&e, &t, &p(&[1]), Pipeline::Primary).unwrap(), QPolynomial::one());
        // two boxes: the symmetric square at q^0, the exterior one at q^1
        let two = typea_one_dim_sum(&e, &[(1, 1), (1, 1)], &p(&[1, 1])).unwrap();
        assert_eq!(two, QPolynomial::monomial(1, 1));
        assert_eq!(typea_one_dim_sum(&e, &[(1, 1), (1, 1)], &p(&[2])).unwrap(), QPolynomial::one());
    }

    #[test]
    fn full_weight_rhs_is_the_type_a_sum() {
        let e = Engine::new(Session::in_memory());
        let shapes = [(1, 2), (1, 1)];
        let lambda = p(&[2, 1]);
        let (rhs, terms) = xk_rhs(&e, &lambda, &shapes, Diamond::VerticalDomino).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(rhs, typea_one_dim_sum(&e, &shapes, &lambda).unwrap());
        assert!(matches!(xk_rhs(&e, &lambda, &shapes, Diamond::Box), Err(Error::NotImplemented(_))));
    }

    #[test]
    fn branching_for_the_worked_example() {
        let lambda = p(&[2, 1, 1]);
        let nu = p(&[3, 3, 2, 1, 1]);
        assert_eq!(lr_coefficient(&lambda, &p(&[3, 3]), &nu), 1);
        assert_eq!(lr_coefficient(&lambda, &p(&[2, 2, 1, 1]), &nu), 2);
        assert_eq!(branching_sum(&lambda, &nu, Diamond::VerticalDomino).unwrap(), 3);
    }
}
