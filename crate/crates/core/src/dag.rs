//! Graded interval DAGs shared by the r-Bruhat and affine enumerations.
//!
//! Every edge raises length by one, so BFS depth from the source is the rank
//! and the DAG is layered. Only vertices lying on some source-to-sink path are
//! kept.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use rayon::prelude::*;

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::qsym::{QBasis, QuasiSymFn};
use crate::scalar::Coefficient;

pub(crate) struct IntervalDag<V, E> {
    pub vertices: Vec<V>,
    /// `edges[v]` lists `(edge, target)` with targets on a path to the sink.
    pub edges: Vec<Vec<(E, usize)>>,
    /// Vertex indices grouped by depth; `layers[0] == [source]`.
    pub layers: Vec<Vec<usize>>,
    pub sink: Option<usize>,
}

impl<V, E> IntervalDag<V, E>
where
    V: Clone + Eq + Hash + Send + Sync,
    E: Clone + Ord + Send + Sync,
{
    /// Explores `rank` levels from `source` through `expand`, discarding
    /// vertices rejected by `admissible`, then prunes to paths ending at `sink`.
    pub fn build(
        source: V,
        sink: &V,
        rank: usize,
        expand: impl Fn(&V) -> Vec<(E, V)> + Sync,
        admissible: impl Fn(&V) -> bool + Sync,
    ) -> Self {
        let mut vertices = vec![source];
        let mut index: HashMap<V, usize> = HashMap::new();
        index.insert(vertices[0].clone(), 0);
        let mut raw_edges: Vec<Vec<(E, usize)>> = vec![Vec::new()];
        let mut layers = vec![vec![0usize]];
        for _ in 0..rank {
            let current = layers.last().unwrap().clone();
            let expanded: Vec<(usize, Vec<(E, V)>)> = current
                .par_iter()
                .map(|&v| {
                    let out = expand(&vertices[v])
                        .into_iter()
                        .filter(|(_, t)| admissible(t))
                        .collect();
                    (v, out)
                })
                .collect();
            let mut next = Vec::new();
            for (v, out) in expanded {
                for (e, t) in out {
                    let id = match index.get(&t) {
                        Some(&id) => id,
                        None => {
                            let id = vertices.len();
                            index.insert(t.clone(), id);
                            vertices.push(t);
                            raw_edges.push(Vec::new());
                            next.push(id);
                            id
                        }
                    };
                    raw_edges[v].push((e, id));
                }
            }
            layers.push(next);
        }

        let sink_id = index
            .get(sink)
            .copied()
            .filter(|id| layers[rank].contains(id));
        let mut good = vec![false; vertices.len()];
        if let Some(s) = sink_id {
            good[s] = true;
            for layer in layers[..rank].iter().rev() {
                for &v in layer {
                    good[v] = raw_edges[v].iter().any(|(_, t)| good[*t]);
                }
            }
        }
        let edges: Vec<Vec<(E, usize)>> = raw_edges
            .into_iter()
            .enumerate()
            .map(|(v, mut out)| {
                if !good[v] {
                    return Vec::new();
                }
                out.retain(|(_, t)| good[*t]);
                out.sort_by(|x, y| x.0.cmp(&y.0));
                out
            })
            .collect();
        let layers = layers
            .into_iter()
            .map(|l| l.into_iter().filter(|&v| good[v]).collect())
            .collect();
        IntervalDag {
            vertices,
            edges,
            layers,
            sink: sink_id,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.sink.is_none()
    }

    /// Number of source-to-sink paths, saturating at `u128::MAX`.
    pub fn path_count(&self) -> u128 {
        let Some(sink) = self.sink else { return 0 };
        let mut count = vec![0u128; self.vertices.len()];
        count[sink] = 1;
        for layer in self.layers.iter().rev().skip(1) {
            for &v in layer {
                count[v] = self.edges[v]
                    .iter()
                    .fold(0u128, |acc, (_, t)| acc.saturating_add(count[*t]));
            }
        }
        count[0]
    }

    /// All paths as edge sequences, sorted lexicographically.
    pub fn paths(&self, cap: usize) -> Result<Vec<Vec<E>>> {
        if self.sink.is_none() {
            return Ok(Vec::new());
        }
        if self.path_count() > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        if self.layers.len() == 1 {
            return Ok(vec![Vec::new()]);
        }
        let mut out: Vec<Vec<E>> = self.edges[0]
            .par_iter()
            .flat_map_iter(|(e, t)| {
                let mut acc = Vec::new();
                let mut prefix = vec![e.clone()];
                self.dfs(*t, &mut prefix, &mut acc);
                acc
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn dfs(&self, v: usize, prefix: &mut Vec<E>, acc: &mut Vec<Vec<E>>) {
        if Some(v) == self.sink {
            acc.push(prefix.clone());
            return;
        }
        for (e, t) in &self.edges[v] {
            prefix.push(e.clone());
            self.dfs(*t, prefix, acc);
            prefix.pop();
        }
    }

    /// `Σ_paths F_{D(labels)}` by forward dynamic programming over
    /// `(vertex, last label)` without materializing paths.
    pub fn k_function<C, L>(&self, label: impl Fn(&E) -> L) -> QuasiSymFn<C>
    where
        C: Coefficient,
        L: Ord + Clone,
    {
        let Some(sink) = self.sink else {
            return QuasiSymFn::zero(QBasis::Fundamental);
        };
        type State<L, C> = BTreeMap<(Option<L>, Composition), C>;
        let mut states: Vec<State<L, C>> = vec![BTreeMap::new(); self.vertices.len()];
        states[0].insert((None, Composition::empty()), C::one());
        for layer in &self.layers {
            for &v in layer {
                if v == sink {
                    continue;
                }
                let here = std::mem::take(&mut states[v]);
                for (e, t) in &self.edges[v] {
                    let b = label(e);
                    for ((last, comp), count) in &here {
                        let descent = last.as_ref().is_some_and(|l| *l > b);
                        let key = (Some(b.clone()), comp.push_step(descent));
                        let slot = states[*t].entry(key).or_insert_with(C::zero);
                        *slot = slot.clone() + count.clone();
                    }
                }
            }
        }
        QuasiSymFn::from_terms(
            QBasis::Fundamental,
            std::mem::take(&mut states[sink])
                .into_iter()
                .map(|((_, comp), c)| (comp, c)),
        )
    }
}
