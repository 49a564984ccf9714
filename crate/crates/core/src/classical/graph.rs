use std::collections::HashMap;

use super::letter::{ClassicalType, Letter, Word};
use super::word::word_f;
use crate::combinat::{Partition, WeightVector};
use crate::error::{Error, Result};

/// A finite crystal given by its vertices and `f_i` arrows.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub ty: ClassicalType,
    pub vertices: Vec<Word>,
    index: HashMap<Word, u32>,
    /// `f[v][i-1]` is the target of the color-`i` arrow out of `v`.
    f: Vec<Vec<Option<u32>>>,
}

impl CrystalGraph {
    /// Closure of `seeds` under all `f_i`.
    pub fn closure(ty: ClassicalType, seeds: &[Word]) -> Self {
        let colors = ty.max_color();
        let mut g = CrystalGraph { ty, vertices: Vec::new(), index: HashMap::new(), f: Vec::new() };
        for s in seeds {
            g.intern(s.clone());
        }
        let mut next = 0;
        while next < g.vertices.len() {
            let mut row = vec![None; colors];
            for (c, slot) in row.iter_mut().enumerate() {
                let mut w = g.vertices[next].clone();
                if word_f(ty, c + 1, &mut w) {
                    *slot = Some(g.intern(w));
                }
            }
            g.f.push(row);
            next += 1;
        }
        g
    }

    fn intern(&mut self, w: Word) -> u32 {
        if let Some(&k) = self.index.get(&w) {
            return k;
        }
        let k = self.vertices.len() as u32;
        self.index.insert(w.clone(), k);
        self.vertices.push(w);
        k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, w: &[Letter]) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn f_target(&self, v: u32, i: usize) -> Option<u32> {
        self.f[v as usize][i - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, usize, u32)> + '_ {
        self.f.iter().enumerate().flat_map(|(v, row)| {
            row.iter().enumerate().filter_map(move |(c, t)| t.map(|t| (v as u32, c + 1, t)))
        })
    }

    pub fn weight(&self, v: u32) -> WeightVector {
        self.ty.weight_of(&self.vertices[v as usize])
    }
}

/// Column-filled highest word of shape `λ`: every column reads `1,2,…,h`.
pub fn highest_word(lambda: &Partition) -> Word {
    lambda
        .column_heights()
        .iter()
        .rev()
        .flat_map(|&h| (1..=h as i8).map(Letter))
        .collect()
}

pub fn check_shape(lambda: &Partition, ty: ClassicalType) -> Result<()> {
    let max_len = match ty {
        ClassicalType::A { letters } => letters as usize,
        ClassicalType::C { n } => n as usize,
        ClassicalType::D { n } => n as usize - 1,
    };
    if lambda.len() > max_len {
        return Err(Error::ShapeOutOfBounds { shape: lambda.to_string(), ty: ty.to_string() });
    }
    Ok(())
}

/// The highest weight crystal `B(λ)` as the `f`-closure of its highest word.
pub fn generate_component(lambda: &Partition, ty: ClassicalType) -> Result<CrystalGraph> {
    check_shape(lambda, ty)?;
    Ok(CrystalGraph::closure(ty, &[highest_word(lambda)]))
}
