use serde::Serialize;

use super::crystal::{KrCrystal, ZeroMap};
use super::promotion::promotion;
use super::sigma::{check_sigma, UnionFind};
use crate::classical::Op;
use crate::combinat::Partition;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub crystal: String,
    pub size: usize,
    pub components: Vec<(Partition, usize)>,
    pub checks: Vec<Check>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, result: Result<(), String>) -> Check {
    Check {
        name: name.into(),
        passed: result.is_ok(),
        detail: result.err().unwrap_or_default(),
    }
}

/// Exhaustive structural checks on a built KR crystal.
pub fn verify_structure(kr: &KrCrystal) -> StructureReport {
    let mut sizes = vec![0usize; kr.components().len()];
    for v in 0..kr.len() as u32 {
        let shape = kr.shape(v);
        let k = kr.components().iter().position(|c| c == shape).expect("known shape");
        sizes[k] += 1;
    }
    let components: Vec<(Partition, usize)> =
        kr.components().iter().cloned().zip(sizes).collect();

    let mut checks = Vec::new();
    match kr.zero_map() {
        ZeroMap::Sigma(sigma) => checks.push(check("sigma", check_sigma(kr, sigma))),
        ZeroMap::Promotion { .. } => checks.push(check("promotion", check_promotion(kr))),
    }
    checks.push(check("classical components", classical_pieces(kr)));
    StructureReport { crystal: kr.spec().to_string(), size: kr.len(), components, checks }
}

/// Removing color 0 leaves exactly the listed components.
fn classical_pieces(kr: &KrCrystal) -> Result<(), String> {
    let n = kr.spec().alg.classical().max_color();
    let mut uf = UnionFind::new(kr.len());
    for v in 0..kr.len() as u32 {
        for i in 1..=n {
            if let Some(t) = kr.apply(Op::F, i, v) {
                if kr.shape(t) != kr.shape(v) {
                    return Err(format!("color {i} leaves the component of vertex {v}"));
                }
                uf.union(v, t);
            }
        }
    }
    if uf.count() != kr.components().len() {
        return Err(format!("{} classical pieces, expected {}", uf.count(), kr.components().len()));
    }
    Ok(())
}

/// `pr^N = id`, `pr e_i = e_{i+1} pr` and affine connectivity in type A.
fn check_promotion(kr: &KrCrystal) -> Result<(), String> {
    let spec = kr.spec();
    let n = spec.alg.n();
    let big_n = n as i8 + 1;
    let ZeroMap::Promotion { pr, pr_inv } = kr.zero_map() else {
        return Err("no promotion installed".into());
    };
    let mut uf = UnionFind::new(kr.len());
    for v in 0..kr.len() as u32 {
        if pr_inv[pr[v as usize] as usize] != v {
            return Err(format!("pr_inv is not inverse at vertex {v}"));
        }
        let mut x = kr.word(v);
        for _ in 0..=n {
            x = promotion(&x, spec.r(), spec.s(), big_n).map_err(|e| e.to_string())?;
        }
        if x != kr.word(v) {
            return Err(format!("pr^{} is not the identity at vertex {v}", n + 1));
        }
        for i in 1..n {
            let lhs = kr.apply(Op::E, i, v).map(|t| pr[t as usize]);
            if lhs != kr.apply(Op::E, i + 1, pr[v as usize]) {
                return Err(format!("pr e_{i} != e_{} pr at vertex {v}", i + 1));
            }
        }
        for i in 0..=n {
            if let Some(t) = kr.apply(Op::F, i, v) {
                uf.union(v, t);
            }
        }
    }
    if !uf.connected() {
        return Err("the affine crystal graph is disconnected".into());
    }
    Ok(())
}
