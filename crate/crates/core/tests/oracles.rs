//! Independent arithmetic and crystal oracles for the combinatorial layer.

mod common;

use std::collections::HashMap;

use common::{engine, p, weyl_dimension};
use krc::classical::{generate_component, highest_word, is_highest, ClassicalType, Word};
use krc::combinat::{lr_coefficient, Partition};
use krc::kr::{verify_structure, AlgebraSpec, Family};

#[test]
fn weyl_formula_sanity() {
    assert_eq!(weyl_dimension(ClassicalType::D { n: 4 }, &p(&[1, 1])), 28);
    assert_eq!(weyl_dimension(ClassicalType::C { n: 3 }, &p(&[1])), 6);
    assert_eq!(weyl_dimension(ClassicalType::A { letters: 3 }, &p(&[2, 1])), 8);
    assert_eq!(weyl_dimension(ClassicalType::D { n: 6 }, &Partition::empty()), 1);
}

#[test]
fn components_have_weyl_dimension() {
    let types = [
        ClassicalType::A { letters: 3 },
        ClassicalType::A { letters: 4 },
        ClassicalType::C { n: 2 },
        ClassicalType::C { n: 3 },
        ClassicalType::D { n: 4 },
        ClassicalType::D { n: 5 },
    ];
    for ty in types {
        for size in 0..=4 {
            for lambda in Partition::all_of(size) {
                let Ok(g) = generate_component(&lambda, ty) else { continue };
                assert_eq!(g.len() as u128, weyl_dimension(ty, &lambda), "{ty} {lambda}");
            }
        }
    }
}

#[test]
fn kr_crystals_decompose_into_weyl_modules() {
    let e = engine();
    for (fam, n, r, s) in [
        (Family::D, 4, 1, 2),
        (Family::D, 4, 2, 2),
        (Family::D, 5, 3, 1),
        (Family::D, 6, 2, 2),
        (Family::C, 2, 2, 2),
        (Family::C, 3, 1, 3),
        (Family::C, 3, 3, 1),
        (Family::A, 3, 2, 2),
    ] {
        let alg = AlgebraSpec::new(fam, n).unwrap();
        let kr = e.session().crystal(alg.kr(r, s).unwrap()).unwrap();
        let rep = verify_structure(&kr);
        assert!(rep.passed(), "{rep:?}");
        let ty = alg.classical();
        let mut total = 0;
        for (lambda, size) in &rep.components {
            assert_eq!(*size as u128, weyl_dimension(ty, lambda), "{} {lambda}", rep.crystal);
            total += size;
        }
        assert_eq!(total, kr.len());
    }
}

/// `c^ν_{λμ}` as the number of `y ∈ B(μ)` with `u_λ ⊗ y` highest of weight `ν`.
fn crystal_lr(
    words: &mut HashMap<(Partition, u8), Vec<Word>>,
    lambda: &Partition,
    mu: &Partition,
    big_n: u8,
) -> HashMap<Partition, u64> {
    let ty = ClassicalType::A { letters: big_n };
    let colors: Vec<usize> = ty.colors().collect();
    let ys = words
        .entry((mu.clone(), big_n))
        .or_insert_with(|| generate_component(mu, ty).unwrap().vertices);
    let u = highest_word(lambda);
    let mut out = HashMap::new();
    for y in ys.iter() {
        let mut w = u.clone();
        w.extend_from_slice(y);
        if is_highest(ty, &colors, &w) {
            let nu = ty.weight_of(&w).to_partition().unwrap();
            *out.entry(nu).or_insert(0) += 1;
        }
    }
    out
}

#[test]
fn lr_coefficients_match_crystal_decomposition() {
    let mut words = HashMap::new();
    let mut triples = 0;
    for total in 0..=8u32 {
        for a in 0..=total {
            for lambda in Partition::all_of(a) {
                for mu in Partition::all_of(total - a) {
                    let big_n = (lambda.len() + mu.len()).max(1) as u8;
                    let counts = crystal_lr(&mut words, &lambda, &mu, big_n);
                    for nu in Partition::all_of(total) {
                        let expected = counts.get(&nu).copied().unwrap_or(0);
                        assert_eq!(lr_coefficient(&lambda, &mu, &nu), expected, "{lambda} {mu} {nu}");
                        triples += 1;
                    }
                }
            }
        }
    }
    assert!(triples > 1000);
}
