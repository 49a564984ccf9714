//! Constraint solver for the Dynkin-flip automorphism `σ` of a single KR
//! crystal of type C or D.
//!
//! `σ` permutes the components under colors `1..n-1` (blocks), sending a
//! block with highest weight `μ` to one with highest weight `flip(μ)` by the
//! unique isomorphism exchanging `f_i` and `f_{n-i}`. The seed `σ(u)` is forced
//! by weight. A block reached from a solved one by `e_n`/`f_n` must be paired
//! so that `ε_j, φ_j` agree with the image of its neighbour for every color `j`
//! orthogonal to 0, because `σ e_n = e_0 σ`. Forced choices are propagated;
//! anything left open is searched exhaustively.

use std::collections::{HashMap, VecDeque};

use super::crystal::KrCrystal;
use super::spec::Family;
use crate::classical::{is_highest, lower_along, raise_to_highest, word_apply, Op};
use crate::combinat::WeightVector;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

struct Blocks {
    of: Vec<u32>,
    hw: Vec<u32>,
    start: Vec<usize>,
    members: Vec<u32>,
    weight: Vec<Vec<i32>>,
}

impl Blocks {
    fn members(&self, b: u32) -> &[u32] {
        &self.members[self.start[b as usize]..self.start[b as usize + 1]]
    }

    fn len(&self) -> usize {
        self.hw.len()
    }
}

#[derive(Clone)]
struct State {
    partner: Vec<u32>,
    sigma: Vec<u32>,
    cands: HashMap<u32, Vec<u32>>,
}

struct Solver<'a> {
    kr: &'a KrCrystal,
    n: usize,
    a_colors: Vec<usize>,
    orth: Vec<usize>,
    blocks: Blocks,
    by_weight: HashMap<Vec<i32>, Vec<u32>>,
}

type Fail = String;

pub(crate) fn solve_sigma(kr: &KrCrystal) -> Result<Vec<u32>> {
    let spec = kr.spec();
    let n = spec.alg.n();
    let a_colors: Vec<usize> = (1..n).collect();
    let zero_adj = spec.alg.zero_neighbours();
    let orth: Vec<usize> = (1..=n).filter(|i| !zero_adj.contains(i)).collect();
    let blocks = decompose(kr, &a_colors);
    let mut by_weight: HashMap<Vec<i32>, Vec<u32>> = HashMap::new();
    for b in 0..blocks.len() as u32 {
        by_weight.entry(blocks.weight[b as usize].clone()).or_default().push(b);
    }
    let solver = Solver { kr, n, a_colors, orth, blocks, by_weight };
    let no_sigma = |reason: String| Error::NoSigma { crystal: spec.to_string(), reason };

    let u = kr.u();
    let target = kr.weight(u).flip();
    let top: Vec<u32> = (0..kr.len() as u32).filter(|&v| kr.weight(v) == target).collect();
    if top.len() != 1 {
        return Err(no_sigma(format!("{} elements have weight {target}", top.len())));
    }
    let mut st = State {
        partner: vec![NONE; solver.blocks.len()],
        sigma: vec![NONE; kr.len()],
        cands: HashMap::new(),
    };
    let (y0, z0) = (solver.blocks.of[u as usize], solver.blocks.of[top[0] as usize]);
    if solver.blocks.hw[z0 as usize] != top[0] {
        return Err(no_sigma("the image of u is not highest for colors 1..n-1".into()));
    }
    solver.assign(&mut st, y0, z0).map_err(no_sigma)?;
    let mut queue: VecDeque<u32> = [y0, z0].into_iter().collect();

    let mut solutions = Vec::new();
    let mut failures = Vec::new();
    solver.search(st, &mut queue, &mut solutions, &mut failures);
    match solutions.len() {
        1 => Ok(solutions.pop().expect("one solution")),
        0 => Err(no_sigma(failures.first().cloned().unwrap_or_else(|| "search exhausted".into()))),
        count => Err(Error::AmbiguousSigma {
            crystal: spec.to_string(),
            count,
            detail: "several block pairings satisfy every constraint".into(),
        }),
    }
}

fn decompose(kr: &KrCrystal, a_colors: &[usize]) -> Blocks {
    let ty = kr.classical_type();
    let mut of = vec![NONE; kr.len()];
    let mut hw = Vec::new();
    let mut start = vec![0];
    let mut members = Vec::with_capacity(kr.len());
    let mut weight = Vec::new();
    for v in 0..kr.len() as u32 {
        if of[v as usize] != NONE || !is_highest(ty, a_colors, &kr.word(v)) {
            continue;
        }
        let id = hw.len() as u32;
        hw.push(v);
        weight.push(kr.weight(v).0);
        of[v as usize] = id;
        let first = members.len();
        members.push(v);
        let mut next = first;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &c in a_colors {
                if let Some(y) = kr.apply_classical(Op::F, c, x) {
                    if of[y as usize] == NONE {
                        of[y as usize] = id;
                        members.push(y);
                    }
                }
            }
        }
        start.push(members.len());
    }
    debug_assert!(of.iter().all(|&b| b != NONE));
    Blocks { of, hw, start, members, weight }
}

impl Solver<'_> {
    fn flip_color(&self, c: usize) -> usize {
        self.n - c
    }

    /// Pairs blocks `y` and `z` and fills `σ` on both by lockstep traversal.
    fn assign(&self, st: &mut State, y: u32, z: u32) -> std::result::Result<(), Fail> {
        if st.partner[y as usize] != NONE || st.partner[z as usize] != NONE {
            return Err(format!("block {y} or {z} is already paired"));
        }
        st.partner[y as usize] = z;
        st.partner[z as usize] = y;
        self.fill(st, y, z)?;
        if y != z {
            self.fill(st, z, y)?;
        }
        Ok(())
    }

    fn fill(&self, st: &mut State, y: u32, z: u32) -> std::result::Result<(), Fail> {
        let (hy, hz) = (self.blocks.hw[y as usize], self.blocks.hw[z as usize]);
        st.sigma[hy as usize] = hz;
        let mut queue = VecDeque::from([(hy, hz)]);
        while let Some((a, b)) = queue.pop_front() {
            for &c in &self.a_colors {
                let a2 = self.kr.apply_classical(Op::F, c, a);
                let b2 = self.kr.apply_classical(Op::F, self.flip_color(c), b);
                match (a2, b2) {
                    (None, None) => {}
                    (Some(a2), Some(b2)) => {
                        let slot = &mut st.sigma[a2 as usize];
                        if *slot == NONE {
                            *slot = b2;
                            queue.push_back((a2, b2));
                        } else if *slot != b2 {
                            return Err(format!("blocks {y} and {z} are not flip-isomorphic"));
                        }
                    }
                    _ => return Err(format!("blocks {y} and {z} are not flip-isomorphic")),
                }
            }
        }
        Ok(())
    }

    /// Image of `y` if its block were paired with block `z`.
    fn image_in(&self, z: u32, y: u32) -> Option<u32> {
        let ty = self.kr.classical_type();
        let mut w = self.kr.word(y);
        let path = raise_to_highest(ty, &self.a_colors, &mut w);
        let flipped: Vec<u8> = path.iter().map(|&c| self.flip_color(c as usize) as u8).collect();
        let mut img = self.kr.word(self.blocks.hw[z as usize]);
        if !lower_along(ty, &flipped, &mut img) {
            return None;
        }
        self.kr.index(&img)
    }

    /// Blocks whose highest weight is the flip of that of `b`.
    fn initial(&self, b: u32) -> Vec<u32> {
        let flipped = WeightVector(self.blocks.weight[b as usize].clone()).flip();
        self.by_weight.get(&flipped.0).cloned().unwrap_or_default()
    }

    fn fits(&self, z: u32, y: u32, sb: u32) -> bool {
        match self.image_in(z, y) {
            Some(t) => self.orth.iter().all(|&j| self.kr.signs(j, t) == self.kr.signs(j, sb)),
            None => false,
        }
    }

    fn propagate(&self, st: &mut State, queue: &mut VecDeque<u32>) -> std::result::Result<(), Fail> {
        while let Some(yb) = queue.pop_front() {
            for &b in self.blocks.members(yb) {
                let sb = st.sigma[b as usize];
                for op in [Op::F, Op::E] {
                    let Some(y) = self.kr.apply_classical(op, self.n, b) else { continue };
                    let target = self.blocks.of[y as usize];
                    if st.partner[target as usize] != NONE {
                        continue;
                    }
                    let forced = {
                        let State { partner, cands, .. } = &mut *st;
                        let list = cands.entry(target).or_insert_with(|| self.initial(target));
                        list.retain(|&z| partner[z as usize] == NONE && self.fits(z, y, sb));
                        match list.len() {
                            0 => return Err(format!("no block can be paired with block {target}")),
                            1 => Some(list[0]),
                            _ => None,
                        }
                    };
                    if let Some(z) = forced {
                        self.assign(st, target, z)?;
                        queue.push_back(target);
                        if z != target {
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn search(
        &self,
        mut st: State,
        queue: &mut VecDeque<u32>,
        solutions: &mut Vec<Vec<u32>>,
        failures: &mut Vec<Fail>,
    ) {
        if solutions.len() > 1 {
            return;
        }
        if let Err(e) = self.propagate(&mut st, queue) {
            failures.push(e);
            return;
        }
        // pick the open block with the fewest remaining partners
        let mut best: Option<(u32, Vec<u32>)> = None;
        for b in 0..self.blocks.len() as u32 {
            if st.partner[b as usize] != NONE {
                continue;
            }
            let list = st.cands.get(&b).cloned().unwrap_or_else(|| self.initial(b));
            let list: Vec<u32> =
                list.into_iter().filter(|&z| st.partner[z as usize] == NONE).collect();
            if best.as_ref().is_none_or(|(_, l)| list.len() < l.len()) {
                best = Some((b, list));
            }
        }
        let Some((b, list)) = best else {
            match check_sigma(self.kr, &st.sigma) {
                Ok(()) => solutions.push(st.sigma),
                Err(e) => failures.push(e),
            }
            return;
        };
        for z in list {
            let mut branch = st.clone();
            if let Err(e) = self.assign(&mut branch, b, z) {
                failures.push(e);
                continue;
            }
            let mut q: VecDeque<u32> = [b, z].into_iter().collect();
            self.search(branch, &mut q, solutions, failures);
            if solutions.len() > 1 {
                return;
            }
        }
    }
}

/// Checks that `sigma` is an involution intertwining `i ↔ n−i`, that the
/// induced `f_0 = σ f_n σ` changes weight by `θ`, leaves `ε_j, φ_j` unchanged
/// for colors `j` orthogonal to 0, satisfies `φ_0 − ε_0 = ⟨wt, α_0^∨⟩`, and that
/// the affine graph is connected.
pub(crate) fn check_sigma(kr: &KrCrystal, sigma: &[u32]) -> std::result::Result<(), Fail> {
    let spec = kr.spec();
    let ty = kr.classical_type();
    let n = spec.alg.n();
    let theta = spec.alg.theta();
    let zero_adj = spec.alg.zero_neighbours();
    let orth: Vec<usize> = (1..=n).filter(|i| !zero_adj.contains(i)).collect();
    let len = kr.len();
    if sigma.len() != len || sigma.iter().any(|&s| s as usize >= len) {
        return Err("sigma is not a total map".into());
    }
    let mut uf = UnionFind::new(len);
    for v in 0..len as u32 {
        let s = sigma[v as usize];
        if sigma[s as usize] != v {
            return Err(format!("sigma is not an involution at vertex {v}"));
        }
        let wt = kr.weight(v);
        if kr.weight(s) != wt.flip() {
            return Err(format!("sigma does not flip the weight of vertex {v}"));
        }
        for i in 1..n {
            let fv = kr.apply_classical(Op::F, i, v);
            if let Some(t) = fv {
                uf.union(v, t);
            }
            if fv.map(|t| sigma[t as usize]) != kr.apply_classical(Op::F, n - i, s) {
                return Err(format!("sigma f_{i} != f_{} sigma at vertex {v}", n - i));
            }
        }
        if let Some(t) = kr.apply_classical(Op::F, n, v) {
            uf.union(v, t);
        }
        let mut w = kr.word(s);
        let (eps0, phi0) = {
            let sig = crate::classical::word_signature(ty, n, &w);
            (sig.eps as i32, sig.phi as i32)
        };
        let pairing = match spec.alg.family {
            Family::D => -(wt.0[0] + wt.0[1]),
            Family::C => -wt.0[0],
            Family::A => -(wt.0[0] - wt.0[wt.0.len() - 1]),
        };
        if phi0 - eps0 != pairing {
            return Err(format!("phi_0 - eps_0 != <wt, alpha_0> at vertex {v}"));
        }
        if word_apply(ty, Op::F, n, &mut w) {
            let f0 = sigma[kr.index(&w).ok_or("f_n left the crystal")? as usize];
            uf.union(v, f0);
            let dw = &kr.weight(f0) - &wt;
            if dw.0 != theta {
                return Err(format!("f_0 changes the weight of vertex {v} by {dw}"));
            }
            for &j in &orth {
                if kr.signs(j, f0) != kr.signs(j, v) {
                    return Err(format!("f_0 changes eps_{j}/phi_{j} at vertex {v}"));
                }
            }
        }
    }
    if !uf.connected() {
        return Err("the affine crystal graph is disconnected".into());
    }
    Ok(())
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), sets: n }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
            self.sets -= 1;
        }
    }

    pub(crate) fn connected(&self) -> bool {
        self.sets <= 1
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}
