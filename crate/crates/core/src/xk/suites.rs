//! Verification suites: X=K, the strange relation and properties (i)-(iv).

use std::collections::HashMap;

use serde::Serialize;

use super::sums::{branching_sum, one_dim_sum, rank_bound, xk_rhs, NuTerm};
use crate::combinat::{exact_exponent, Partition, QPolynomial, WeightVector};
use crate::energy::{phi, Engine, Pipeline};
use crate::error::{Error, Result};
use crate::kr::{AlgebraSpec, Check, Family, Tensor, TensorElement, ENUMERATION_LIMIT};

fn check(name: &str, failures: Vec<String>) -> Check {
    Check { name: name.into(), passed: failures.is_empty(), detail: failures.into_iter().take(5).collect::<Vec<_>>().join("; ") }
}

/// The breadth-first route when every pair table fits, else the primary one.
pub fn independent_pipeline(t: &Tensor) -> Pipeline {
    let f = t.factors();
    let fits = (0..f.len()).all(|i| {
        (i + 1..f.len()).all(|j| (f[i].len() as u128) * (f[j].len() as u128) <= ENUMERATION_LIMIT)
    });
    if fits {
        Pipeline::Oracle
    } else {
        Pipeline::Primary
    }
}

fn require_sigma(alg: AlgebraSpec) -> Result<()> {
    if alg.family == Family::A {
        return Err(Error::OutOfScope("this check needs σ and a nonempty diamond, i.e. types C and D".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct XkReport {
    pub algebra: String,
    pub n: usize,
    pub shapes: Vec<(usize, usize)>,
    pub lambda: Partition,
    pub diamond: String,
    pub lhs: QPolynomial,
    pub rhs: QPolynomial,
    pub terms: Vec<NuTerm>,
    pub rank_bound: i64,
    pub above_bound: bool,
    pub verdict: bool,
}

pub fn verify_xk(engine: &Engine, alg: AlgebraSpec, shapes: &[(usize, usize)], lambda: &Partition) -> Result<XkReport> {
    require_sigma(alg)?;
    let t = Tensor::new(engine.session(), alg, shapes)?;
    let lhs = one_dim_sum(engine, &t, lambda, Pipeline::Primary)?;
    let (rhs, terms) = xk_rhs(engine, lambda, shapes, alg.diamond())?;
    let bound = rank_bound(lambda, shapes);
    Ok(XkReport {
        algebra: alg.to_string(),
        n: alg.n(),
        shapes: shapes.to_vec(),
        lambda: lambda.clone(),
        diamond: alg.diamond().to_string(),
        verdict: lhs == rhs,
        lhs,
        rhs,
        terms,
        rank_bound: bound,
        above_bound: alg.n() as i64 > bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrangeViolation {
    pub element: String,
    pub difference: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrangeReport {
    pub tensor: String,
    pub pipeline: Pipeline,
    pub checked: usize,
    pub violations: Vec<StrangeViolation>,
}

impl StrangeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `D̄(b) − D̄(σ(b)) = (|B| − |λ(b)|)/|◇|` on every classically highest `b`,
/// with `D̄(σ(b))` read at `High(σ(b))`.
pub fn verify_strange(engine: &Engine, t: &Tensor) -> Result<StrangeReport> {
    require_sigma(t.algebra())?;
    verify_strange_on(engine, t, &t.highest_elements(None)?)
}

/// The strange relation on the given classically highest elements.
pub fn verify_strange_on(engine: &Engine, t: &Tensor, hw: &[TensorElement]) -> Result<StrangeReport> {
    require_sigma(t.algebra())?;
    let p = independent_pipeline(t);
    let cells = t.algebra().diamond().cells().expect("types C and D have dominoes") as i64;
    let boxes = t.boxes() as i64;
    let mut violations = Vec::new();
    for b in hw {
        let (sb, _) = phi(t, b)?;
        let difference = engine.coenergy(t, b, p)? - engine.coenergy(t, &sb, p)?;
        let expected = exact_exponent(boxes - t.weight(b).size() as i64, cells)? as i64;
        if difference != expected {
            violations.push(StrangeViolation { element: t.render(b)?, difference, expected });
        }
    }
    Ok(StrangeReport { tensor: t.to_string(), pipeline: p, checked: hw.len(), violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCount {
    pub highest: String,
    pub nu: Partition,
    pub observed: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertiesReport {
    pub tensor: String,
    pub lambda: Partition,
    pub n: usize,
    pub rank_bound: i64,
    pub above_bound: bool,
    pub pipeline: Pipeline,
    pub highest: usize,
    pub components: Vec<ComponentCount>,
    pub checks: Vec<Check>,
}

impl PropertiesReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Properties (i)-(iv) of `σ` on the highest elements of weight `λ`.
pub fn verify_properties(engine: &Engine, t: &Tensor, lambda: &Partition) -> Result<PropertiesReport> {
    require_sigma(t.algebra())?;
    let n = t.algebra().n();
    let dim = t.classical_type().weight_dim();
    let cells = t.algebra().diamond().cells().expect("types C and D have dominoes") as i64;
    let boxes = t.boxes() as i64;
    let diamond = t.algebra().diamond();
    let p = independent_pipeline(t);
    let wt = WeightVector::from_partition(lambda, dim);
    let hw = if lambda.len() <= dim { t.highest_elements(Some(&wt))? } else { Vec::new() };

    // (i) σ maps onto the {1..n-1}-highest elements of max(B) of weight λ̄
    let inner: Vec<usize> = (1..n).collect();
    let mut bad = Vec::new();
    let mut images = Vec::with_capacity(hw.len());
    for b in &hw {
        let sb = t.sigma(b)?;
        let ok = crate::classical::is_highest(t.classical_type(), &inner, sb.letters())
            && t.weight(&sb) == wt.flip()
            && t.is_max(&sb);
        if !ok {
            bad.push(format!("σ({}) = {}", t.render(b)?, t.render(&sb)?));
        }
        images.push(sb);
    }
    images.sort();
    let mut targets: Vec<TensorElement> = t
        .highest_elements_for(&inner, Some(&wt.flip()))?
        .into_iter()
        .filter(|x| t.is_max(x))
        .collect();
    targets.sort();
    if bad.is_empty() && images != targets {
        bad.push(format!("{} images but {} targets", images.len(), targets.len()));
    }
    let mut checks = vec![check("(i) σ bijection onto max(B)", bad)];

    // (ii) the strange relation on each element
    let shift = exact_exponent(boxes - lambda.size() as i64, cells).ok().map(|d| d as i64);
    let mut bad = Vec::new();
    let mut tops: HashMap<TensorElement, u64> = HashMap::new();
    for b in &hw {
        let (top, _) = phi(t, b)?;
        let lhs = engine.coenergy(t, b, p)?;
        let rhs = engine.coenergy(t, &top, p)?;
        if Some(lhs - rhs) != shift {
            bad.push(format!("{}: {lhs} vs {rhs} + {shift:?}", t.render(b)?));
        }
        *tops.entry(top).or_default() += 1;
    }
    checks.push(check("(ii) D̄(b) = D̄(σ(b)) + (|B|-|λ|)/|◇|", bad));

    // (iii) images per component of max(B) against Σ_μ c^ν_{λμ}
    let maxes: Vec<TensorElement> = t
        .highest_elements(None)?
        .into_iter()
        .filter(|x| t.weight(x).size() as i64 == boxes)
        .collect();
    let mut bad = Vec::new();
    let mut components = Vec::new();
    for top in tops.keys() {
        if !maxes.contains(top) {
            bad.push(format!("{} is not a highest element of max(B)", t.render(top)?));
        }
    }
    for top in &maxes {
        let nu = t.weight(top).to_partition().expect("highest weights are partitions");
        let expected = branching_sum(lambda, &nu, diamond)?;
        let observed = tops.get(top).copied().unwrap_or(0);
        if observed != expected {
            bad.push(format!("{}: {observed} images, expected {expected}", t.render(top)?));
        }
        if observed > 0 || expected > 0 {
            components.push(ComponentCount { highest: t.render(top)?, nu, observed, expected });
        }
    }
    checks.push(check("(iii) branching counts", bad));

    // (iv) max(B) is unbarred and D̄ there is the type-A value
    let mut bad = Vec::new();
    let shapes = t.shapes();
    for top in &maxes {
        if top.letters().iter().any(|x| x.is_barred()) {
            bad.push(format!("{} has barred letters", t.render(top)?));
            continue;
        }
        let d = engine.coenergy(t, top, p)?;
        let d0 = engine.typea_coenergy(&shapes, top)?;
        if d * cells != 2 * d0 {
            bad.push(format!("{}: D̄ = {d}, type A {d0}", t.render(top)?));
        }
    }
    checks.push(check("(iv) unbarred max(B) with D̄ = (2/|◇|) D̄^∅", bad));

    let bound = rank_bound(lambda, &shapes);
    Ok(PropertiesReport {
        tensor: t.to_string(),
        lambda: lambda.clone(),
        n,
        rank_bound: bound,
        above_bound: n as i64 > bound,
        pipeline: p,
        highest: hw.len(),
        components,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub above_bound: bool,
    pub xk: bool,
    pub properties: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub family: Family,
    pub shapes: Vec<(usize, usize)>,
    pub lambda: Partition,
    pub rank_bound: i64,
    pub rows: Vec<ProbeRow>,
    /// Smallest probed `n` from which every larger probed `n` passes.
    pub stable_from: Option<usize>,
}

/// Runs the X=K and property checks over a range of ranks.
pub fn rank_probe(
    engine: &Engine,
    family: Family,
    shapes: &[(usize, usize)],
    lambda: &Partition,
    ns: impl IntoIterator<Item = usize>,
) -> Result<ProbeReport> {
    let bound = rank_bound(lambda, shapes);
    let mut rows = Vec::new();
    for n in ns {
        let alg = AlgebraSpec::new(family, n)?;
        let xk = verify_xk(engine, alg, shapes, lambda)?.verdict;
        let t = Tensor::new(engine.session(), alg, shapes)?;
        let properties = verify_properties(engine, &t, lambda)?.passed();
        rows.push(ProbeRow { n, above_bound: n as i64 > bound, xk, properties });
    }
    let mut stable_from = None;
    for row in rows.iter().rev() {
        if !(row.xk && row.properties) {
            break;
        }
        stable_from = Some(row.n);
    }
    Ok(ProbeReport { family, shapes: shapes.to_vec(), lambda: lambda.clone(), rank_bound: bound, rows, stable_from })
}
