//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{cache_dir, engine, p, report, tensor, weyl_dimension};
use krc::combinat::{lr_coefficient, Partition};
use krc::energy::{phi, Engine, Pipeline};
use krc::kr::{verify_structure, AlgebraSpec, Family, Tensor, TensorElement};
use krc::Error;
use krc::xk::{branching_sum, one_dim_sum, rank_bound, verify_properties, verify_strange, verify_xk};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Engine) -> Outcome);
type Shapes = &'static [(usize, usize)];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(format!("{t:.1?}"))
}

fn parse(t: &Tensor, s: &str) -> TensorElement {
    t.parse(s).unwrap()
}

fn triple_regression(e: &Engine) -> Outcome {
    let t = tensor(e, Family::D, 6, &[(2, 2), (3, 1), (1, 3)]);
    let start = Instant::now();
    let rows = [
        ("[[1,2]] ⊗ [[1,3,-3]] ⊗ [[1],[3],[-1]]", "[[-6,6],[-6,-5]] ⊗ [[5,-6,-5]] ⊗ [[5],[-5],[-4]]"),
        ("[[1,2]] ⊗ [[3,4,-4]] ⊗ [[1],[3],[-3]]", "[[-6,6],[-6,-5]] ⊗ [[5,-5,-4]] ⊗ [[3],[-6],[-3]]"),
        ("[[1,2],[1,2]] ⊗ [[-2]] ⊗ [[1],[3],[-1]]", "[[-6,-5],[-6,-5]] ⊗ [[5,-6,6]] ⊗ [[5],[-5],[-4]]"),
    ];
    let hat = parse(&t, "[[1,2],[1,2]] ⊗ [[1,3,4]] ⊗ [[2],[3],[5]]");
    let lambda = p(&[2, 1, 1]);
    for (b, sb) in rows {
        let b = parse(&t, b);
        ensure(t.weight(&b).to_partition() == Some(lambda.clone()), || format!("weight of {b:?}"))?;
        let s = t.sigma(&b).map_err(|e| e.to_string())?;
        ensure(s == parse(&t, sb), || format!("σ gives {}", t.render(&s).unwrap()))?;
        ensure(t.high(&s).0 == hat, || "High(σ(b)) is not b̂".into())?;
        for pl in [Pipeline::Primary, Pipeline::Phi, Pipeline::Oracle] {
            let d = e.coenergy(&t, &b, pl).map_err(|e| e.to_string())?;
            ensure(d == 7, || format!("D̄ = {d} by {pl}"))?;
        }
    }
    ensure(t.weight(&hat).to_partition() == Some(p(&[3, 3, 2, 1, 1])), || "weight of b̂".into())?;
    let d_hat = e.coenergy(&t, &hat, Pipeline::Primary).map_err(|e| e.to_string())?;
    ensure(d_hat == 4, || format!("D̄(b̂) = {d_hat}"))?;
    let nu = p(&[3, 3, 2, 1, 1]);
    ensure(lr_coefficient(&lambda, &p(&[3, 3]), &nu) == 1, || "c for (3,3)".into())?;
    ensure(lr_coefficient(&lambda, &p(&[2, 2, 1, 1]), &nu) == 2, || "c for (2,2,1,1)".into())?;
    let sum = branching_sum(&lambda, &nu, t.algebra().diamond()).map_err(|e| e.to_string())?;
    ensure(sum == 3, || format!("branching sum {sum}"))?;
    within(start, Duration::from_secs(60))
}

fn pair_regression(e: &Engine) -> Outcome {
    let start = Instant::now();
    let t = tensor(e, Family::D, 6, &[(4, 3), (3, 3)]);
    let t21 = t.reversed();
    let b = parse(&t, "[[1,2,3,4],[1,2]] ⊗ [[3,-3,-2],[4],[-4]]");
    let r = e.combinatorial_r(&t, &b).map_err(|e| e.to_string())?;
    let phi1 = parse(&t, "[[1,2,3,4],[1,2,3,4],[1,2,3,4]] ⊗ [[1,2,3],[1,2,5],[5,6,-6]]");
    let phi2 = parse(&t, "[[1,2,3,4],[1,2,3,4],[1,2,3,4]] ⊗ [[1,2,3],[1,2,5],[1,5,6]]");
    ensure(t.is_highest(&b), || "b is not highest".into())?;
    ensure(phi(&t, &b).map_err(|e| e.to_string())?.0 == phi1, || "Φ(b) differs".into())?;
    ensure(phi(&t, &phi1).map_err(|e| e.to_string())?.0 == phi2, || "Φ²(b) differs".into())?;
    ensure(r.iterates.get(2) == Some(&phi2), || "R descent does not pass through Φ²(b)".into())?;
    let image = parse(&t21, "[[1,2,3],[1,2,3],[1]] ⊗ [[4,-4,-3,-2],[4,-1]]");
    ensure(r.image == image, || format!("R(b) = {}", t21.render(&r.image).unwrap()))?;
    let d = e.coenergy(&t, &b, Pipeline::Primary).map_err(|e| e.to_string())?;
    let d2 = e.coenergy(&t, &phi2, Pipeline::Primary).map_err(|e| e.to_string())?;
    let d1 = t.factor_d_bar(&b, 0).map_err(|e| e.to_string())?;
    let d2p = t21.factor_d_bar(&image, 0).map_err(|e| e.to_string())?;
    let h = e.local_h(&t, &b, Pipeline::Primary).map_err(|e| e.to_string())?;
    ensure((d, d2, d1, d2p, h) == (12, 3, 3, 1, 8), || format!("D̄ {d}, D̄(Φ²) {d2}, D̄(b₁) {d1}, D̄(b′₂) {d2p}, H̄ {h}"))?;
    within(start, Duration::from_secs(600))
}

fn oracle_equivalence(e: &Engine) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (fam, n) in [(Family::D, 4), (Family::C, 2), (Family::C, 3)] {
        for shapes in [[(1, 1), (1, 1)], [(1, 1), (1, 2)], [(2, 1), (1, 1)]] {
            let t = tensor(e, fam, n, &shapes);
            let oracle = e.bfs_r(&t).map_err(|e| e.to_string())?;
            for (b, r, h) in oracle.entries() {
                let ours = e.combinatorial_r(&t, &b).map_err(|e| e.to_string())?.image;
                let hb = e.local_h(&t, &b, Pipeline::Primary).map_err(|e| e.to_string())?;
                ensure(ours == r && hb == h, || format!("{fam}{n} {shapes:?} at {}", t.render(&b).unwrap()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} elements, {}", within(start, Duration::from_secs(300))?))
}

fn strange_suite(e: &Engine) -> Outcome {
    let start = Instant::now();
    let cases: [(Family, usize, Shapes); 8] = [
        (Family::D, 4, &[(1, 1), (2, 1)]),
        (Family::D, 4, &[(1, 2), (1, 1), (1, 1)]),
        (Family::D, 5, &[(2, 1), (1, 2)]),
        (Family::D, 5, &[(1, 1), (2, 2), (1, 1)]),
        (Family::C, 2, &[(1, 1), (1, 2)]),
        (Family::C, 2, &[(2, 1), (1, 1), (1, 1)]),
        (Family::C, 3, &[(1, 2), (2, 1)]),
        (Family::C, 3, &[(1, 1), (1, 1), (1, 1)]),
    ];
    let (mut checked, mut below) = (0, 0);
    for (fam, n, shapes) in cases {
        let t = tensor(e, fam, n, shapes);
        let rep = verify_strange(e, &t).map_err(|e| e.to_string())?;
        ensure(rep.passed() && rep.checked > 0, || format!("{rep:?}"))?;
        checked += rep.checked;
        if (n as i64) <= rank_bound(&Partition::empty(), shapes) {
            below += 1;
        }
    }
    ensure(below > 0, || "no tensor below the rank bound".into())?;
    Ok(format!("{} tensors, {checked} highest elements, {below} below the bound, {:.1?}", cases.len(), start.elapsed()))
}

fn xk_suite(e: &Engine) -> Outcome {
    let start = Instant::now();
    let cases: [(Family, usize, Shapes, Partition); 7] = [
        (Family::D, 4, &[(1, 1), (1, 1)], Partition::empty()),
        (Family::D, 6, &[(1, 1), (1, 1)], p(&[1, 1])),
        (Family::D, 4, &[(1, 1), (1, 1)], p(&[2])),
        (Family::D, 6, &[(1, 2), (1, 1)], p(&[1])),
        (Family::C, 4, &[(1, 1), (1, 1)], Partition::empty()),
        (Family::C, 6, &[(1, 1), (1, 1)], p(&[1, 1])),
        (Family::C, 6, &[(1, 2), (1, 1)], p(&[1])),
    ];
    for (fam, n, shapes, lambda) in &cases {
        let rep = verify_xk(e, AlgebraSpec::new(*fam, *n).unwrap(), shapes, lambda).map_err(|e| e.to_string())?;
        ensure(rep.verdict && rep.above_bound && !rep.lhs.is_zero(), || format!("{rep:?}"))?;
    }
    let t = tensor(e, Family::D, 6, &[(2, 2), (3, 1), (1, 3)]);
    let lambda = p(&[2, 1, 1]);
    let props = verify_properties(e, &t, &lambda).map_err(|e| e.to_string())?;
    ensure(props.passed() && props.rank_bound == 13, || format!("{props:?}"))?;
    let x = one_dim_sum(e, &t, &lambda, Pipeline::Primary).map_err(|e| e.to_string())?;
    Ok(format!("{} configurations; the D_6 triple has X̄ = {x}, {:.1?}", cases.len(), start.elapsed()))
}

fn yang_baxter(e: &Engine, t: &Tensor) -> Result<(), String> {
    let step = |t: &Tensor, b: &TensorElement, k: usize| -> (Tensor, TensorElement) {
        let img = e.r_image(&t.sub(k, k + 2), &b.slice(k, k + 2), Pipeline::Primary).unwrap();
        let mut f: Vec<Vec<_>> = b.factors().map(<[_]>::to_vec).collect();
        f[k] = img.factor(0).to_vec();
        f[k + 1] = img.factor(1).to_vec();
        let mut c = t.factors().to_vec();
        c.swap(k, k + 1);
        let t2 = Tensor::from_crystals(c).unwrap();
        let b2 = t2.element(f).unwrap();
        (t2, b2)
    };
    for b in t.all_elements().map_err(|e| e.to_string())? {
        let (t1, x) = step(t, &b, 0);
        let (t2, x) = step(&t1, &x, 1);
        let lhs = step(&t2, &x, 0).1;
        let (t1, y) = step(t, &b, 1);
        let (t2, y) = step(&t1, &y, 0);
        let rhs = step(&t2, &y, 1).1;
        ensure(lhs == rhs, || format!("Yang-Baxter fails at {}", t.render(&b).unwrap()))?;
    }
    Ok(())
}

fn structure(e: &Engine) -> Outcome {
    let start = Instant::now();
    let mut specs = Vec::new();
    for (fam, n) in [(Family::D, 4), (Family::D, 5), (Family::C, 2), (Family::C, 3), (Family::A, 2), (Family::A, 3)] {
        let alg = AlgebraSpec::new(fam, n).unwrap();
        for r in 1..=n {
            for s in 1..=4 {
                if r * s <= 4 {
                    if let Ok(k) = alg.kr(r, s) {
                        specs.push(k);
                    }
                }
            }
        }
    }
    let d6 = AlgebraSpec::new(Family::D, 6).unwrap();
    for (r, s) in [(2, 2), (3, 1), (1, 3), (3, 3), (4, 3)] {
        specs.push(d6.kr(r, s).unwrap());
    }
    for spec in &specs {
        let kr = e.session().crystal(*spec).map_err(|e| e.to_string())?;
        let rep = verify_structure(&kr);
        ensure(rep.passed(), || format!("{rep:?}"))?;
        let ty = spec.alg.classical();
        for (lambda, size) in &rep.components {
            ensure(*size as u128 == weyl_dimension(ty, lambda), || format!("{spec}: {lambda} has {size} elements"))?;
        }
    }
    for (fam, n) in [(Family::D, 4), (Family::C, 2)] {
        yang_baxter(e, &tensor(e, fam, n, &[(1, 1), (1, 1), (1, 1)]))?;
    }
    yang_baxter(e, &tensor(e, Family::D, 4, &[(1, 1), (1, 2), (2, 1)]))?;
    yang_baxter(e, &tensor(e, Family::C, 2, &[(2, 1), (1, 1), (1, 2)]))?;
    Ok(format!("{} crystals, {:.1?}", specs.len(), start.elapsed()))
}

fn guard(e: &Engine) -> Outcome {
    let t = tensor(e, Family::D, 6, &[(4, 3), (3, 3)]);
    let res = one_dim_sum(e, &t, &p(&[2, 1]), Pipeline::Primary);
    ensure(matches!(res, Err(Error::Guard { .. })), || format!("library returned {res:?}"))?;
    let pair = tensor(e, Family::D, 6, &[(2, 2), (2, 2)]);
    let res = e.bfs_r(&pair);
    ensure(matches!(res, Err(Error::Guard { .. })), || "pair oracle was not refused".into())?;
    let out = Command::new(env!("CARGO_BIN_EXE_krc"))
        .args(["xsum", "--alg", "D1", "--n", "6", "--shapes", "4,3", "3,3", "--lambda", "2,1"])
        .env("KRC_CACHE_DIR", cache_dir())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(3), || format!("exit status {:?}", out.status.code()))?;
    Ok("refused with exit code 3".into())
}

fn main() {
    let e = engine();
    let criteria: [Criterion; 7] = [
        ("D_6 triple B^{2,2}⊗B^{3,1}⊗B^{1,3} regression", triple_regression),
        ("D_6 pair B^{4,3}⊗B^{3,3} regression", pair_regression),
        ("R and H̄ agree with the breadth-first oracle", oracle_equivalence),
        ("strange relation suite", strange_suite),
        ("X=K above the rank bound and properties (i)-(iv) for the D_6 triple", xk_suite),
        ("structural invariants and Yang-Baxter", structure),
        ("resource guard", guard),
    ];
    let mut results = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&e))).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &outcome {
            Ok(d) => format!("{name} ({d})"),
            Err(d) => format!("{name}: {d}"),
        };
        report(&mut results, k + 1, outcome.is_ok(), &line);
    }
    let failed = results.iter().filter(|r| !r.1).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
