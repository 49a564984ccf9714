#![allow(dead_code)]

use std::path::PathBuf;

use krc::classical::ClassicalType;
use krc::combinat::Partition;
use krc::energy::Engine;
use krc::kr::{AlgebraSpec, Family, Session, Tensor};

pub fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

/// Shared on-disk cache so large crystals are built once per target dir.
pub fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("krc-cache")
}

pub fn engine() -> Engine {
    Engine::new(Session::new(Some(cache_dir())))
}

pub fn tensor(e: &Engine, fam: Family, n: usize, shapes: &[(usize, usize)]) -> Tensor {
    Tensor::new(e.session(), AlgebraSpec::new(fam, n).unwrap(), shapes).unwrap()
}

/// Exact product of rational factors `num/den`.
fn ratio_product(factors: impl IntoIterator<Item = (i128, i128)>) -> u128 {
    let (mut num, mut den) = (1i128, 1i128);
    for (a, b) in factors {
        num *= a;
        den *= b;
        let g = gcd(num.abs(), den.abs());
        num /= g;
        den /= g;
    }
    assert_eq!(den.abs(), 1, "Weyl formula must give an integer");
    (num / den) as u128
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weyl dimension formula for the irreducible module of highest weight `λ`.
pub fn weyl_dimension(ty: ClassicalType, lambda: &Partition) -> u128 {
    let dim = ty.weight_dim();
    let lam: Vec<i128> = (0..dim).map(|i| lambda.part(i) as i128).collect();
    let mut pairs = Vec::new();
    match ty {
        ClassicalType::A { .. } => {
            for i in 0..dim {
                for j in i + 1..dim {
                    pairs.push((lam[i] - lam[j] + (j - i) as i128, (j - i) as i128));
                }
            }
        }
        ClassicalType::C { .. } => {
            let rho: Vec<i128> = (0..dim).map(|i| (dim - i) as i128).collect();
            let l: Vec<i128> = (0..dim).map(|i| lam[i] + rho[i]).collect();
            for i in 0..dim {
                pairs.push((l[i], rho[i]));
                for j in i + 1..dim {
                    pairs.push(((l[i] - l[j]) * (l[i] + l[j]), (rho[i] - rho[j]) * (rho[i] + rho[j])));
                }
            }
        }
        ClassicalType::D { .. } => {
            let rho: Vec<i128> = (0..dim).map(|i| (dim - 1 - i) as i128).collect();
            let l: Vec<i128> = (0..dim).map(|i| lam[i] + rho[i]).collect();
            for i in 0..dim {
                for j in i + 1..dim {
                    pairs.push((l[i] * l[i] - l[j] * l[j], rho[i] * rho[i] - rho[j] * rho[j]));
                }
            }
        }
    }
    ratio_product(pairs)
}

/// Prints one acceptance line and records the outcome.
pub fn report(results: &mut Vec<(usize, bool)>, k: usize, passed: bool, what: &str) {
    println!("criterion {k}: {} {what}", if passed { "PASS" } else { "FAIL" });
    results.push((k, passed));
}
