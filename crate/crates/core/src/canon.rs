//! Canonical forms of quivers under vertex relabeling.
//!
//! Vertices are first coloured by iterated neighbourhood refinement; the
//! colours are isomorphism invariant, so every isomorphic copy sees the same
//! ordered colour cells. The canonical form is then the lexicographically
//! smallest matrix, read row by row below the diagonal, over all orderings
//! whose colour sequence is nondecreasing. Branch and bound on row prefixes
//! keeps the search small for the ranks that matter here.

use std::cmp::Ordering;

use crate::quiver::ExchangeMatrix;

/// Isomorphism-invariant vertex colours, as dense ranks `0..k`.
pub fn refined_colours(b: &ExchangeMatrix) -> Vec<usize> {
    let n = b.rank();
    let mut colours = vec![0usize; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let signatures: Vec<(usize, Vec<(i64, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(i64, usize)> = (0..n)
                    .filter(|&u| u != v && b.get(v, u) != 0)
                    .map(|u| (b.get(v, u), colours[u]))
                    .collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let next_classes = distinct.len();
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

struct Search<'a> {
    b: &'a ExchangeMatrix,
    /// Colour required at each position.
    slots: Vec<usize>,
    colours: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    /// Lower-triangular key of the current partial ordering.
    key: Vec<i64>,
    best: Option<(Vec<i64>, Vec<usize>)>,
}

impl Search<'_> {
    fn row(&self, v: usize) -> Vec<i64> {
        self.order.iter().map(|&u| self.b.get(v, u)).collect()
    }

    fn run(&mut self, depth: usize) {
        let n = self.slots.len();
        if depth == n {
            let better = match &self.best {
                None => true,
                Some((k, _)) => self.key < *k,
            };
            if better {
                self.best = Some((self.key.clone(), self.order.clone()));
            }
            return;
        }
        let want = self.slots[depth];
        let mut candidates: Vec<(Vec<i64>, usize)> = (0..n)
            .filter(|&v| !self.used[v] && self.colours[v] == want)
            .map(|v| (self.row(v), v))
            .collect();
        candidates.sort();
        for (row, v) in candidates {
            let offset = self.key.len();
            self.key.extend_from_slice(&row);
            let pruned = match &self.best {
                Some((best, _)) => self.key.as_slice().cmp(&best[..self.key.len()]) == Ordering::Greater,
                None => false,
            };
            if !pruned {
                self.order.push(v);
                self.used[v] = true;
                self.run(depth + 1);
                self.used[v] = false;
                self.order.pop();
            }
            self.key.truncate(offset);
        }
    }
}

/// Returns the canonical ordering: position `p` holds original vertex `order[p]`.
pub fn canonical_order(b: &ExchangeMatrix) -> Vec<usize> {
    let n = b.rank();
    let colours = refined_colours(b);
    let mut slots = colours.clone();
    slots.sort_unstable();
    let mut search = Search {
        b,
        slots,
        colours,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        key: Vec::with_capacity(n * n / 2),
        best: None,
    };
    search.run(0);
    search.best.map(|(_, o)| o).unwrap_or_default()
}

/// Canonical representative of the isomorphism class of `b`.
pub fn canonical_form(b: &ExchangeMatrix) -> ExchangeMatrix {
    b.reorder(&canonical_order(b))
}

/// Cheap isomorphism-invariant key for ranks where exact search is skipped:
/// sorted colour classes followed by the multiset of sorted columns.
pub fn invariant_key(b: &ExchangeMatrix) -> Vec<i64> {
    let colours = refined_colours(b);
    let n = b.rank();
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut c: Vec<i64> = (0..n).map(|i| b.get(i, j)).collect();
            c.sort_unstable();
            c.insert(0, colours[j] as i64);
            c
        })
        .collect();
    cols.sort();
    let mut key = vec![n as i64];
    for c in cols {
        key.extend(c);
    }
    key
}
