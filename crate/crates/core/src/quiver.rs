//! Quivers without loops or 2-cycles, encoded as skew-symmetric integer
//! matrices, and Fomin–Zelevinsky matrix mutation.
//!
//! `b[i][j]` is the number of arrows `i -> j` minus the number of arrows
//! `j -> i`. Vertices are 0-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square skew-symmetric integer matrix describing a quiver.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// Builds a matrix from rows, checking skew-symmetry.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        let m = ExchangeMatrix { n, entries };
        m.check_skew()?;
        Ok(m)
    }

    /// Builds a quiver from an arrow list `(source, target, multiplicity)`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut m = ExchangeMatrix::zero(n);
        for &(i, j, w) in arrows {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if i == j {
                return Err(Error::Parse(format!("loop at vertex {i}")));
            }
            let v = m.get(i, j).checked_add(w).ok_or(Error::Overflow("arrow count"))?;
            m.set(i, j, v);
            m.set(j, i, -v);
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// The `m`-Kronecker quiver `K_m` with `m` arrows `0 -> 1`.
    pub fn kronecker(m: i64) -> Self {
        let mut k = ExchangeMatrix::zero(2);
        k.set(0, 1, m);
        k.set(1, 0, -m);
        k
    }

    /// The Markov quiver: an oriented 3-cycle with double arrows.
    pub fn markov() -> Self {
        ExchangeMatrix::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).expect("static quiver")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Arrow list with positive multiplicities, ordered by source then target.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.get(i, j);
                if w > 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    fn check_skew(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i..self.n {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if a.checked_neg() != Some(b) {
                    return Err(Error::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// The opposite quiver `-B`.
    pub fn opposite(&self) -> Self {
        ExchangeMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = ExchangeMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }

    /// Matrix `m` with `m[p][q] = self[order[p]][order[q]]`.
    pub(crate) fn reorder(&self, order: &[usize]) -> Self {
        let n = self.n;
        let mut out = ExchangeMatrix::zero(n);
        for p in 0..n {
            for q in 0..n {
                out.set(p, q, self.get(order[p], order[q]));
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_weight(&self) -> i64 {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for u in 0..n {
                    if self.get(v, u) != 0 && comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    mutated_entry(self.get(i, j), self.get(i, k), self.get(k, j))?
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Applies a sequence of mutations left to right.
    pub fn mutate_along(&self, seq: &[usize]) -> Result<Self> {
        seq.iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    /// Parses either the text format (`n` then `i j w` lines) or the JSON
    /// object `{"n": .., "arrows": [[i, j, w], ..]}`.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let file: QuiverFile =
                serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
            return ExchangeMatrix::from_arrows(file.n, &file.arrows);
        }
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut arrows = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("expected `i j w`, got `{line}`")));
            }
            let i = fields[0].parse().map_err(|e| Error::Parse(format!("`{line}`: {e}")))?;
            let j = fields[1].parse().map_err(|e| Error::Parse(format!("`{line}`: {e}")))?;
            let w = fields[2].parse().map_err(|e| Error::Parse(format!("`{line}`: {e}")))?;
            arrows.push((i, j, w));
        }
        ExchangeMatrix::from_arrows(n, &arrows)
    }

    pub fn to_quiver_file(&self) -> QuiverFile {
        QuiverFile {
            n: self.n,
            arrows: self.arrows(),
        }
    }
}

/// One entry of the mutation rule away from the mutated row and column.
#[inline]
pub(crate) fn mutated_entry(bij: i64, bik: i64, bkj: i64) -> Result<i64> {
    let prod = bik.checked_mul(bkj).ok_or(Error::Overflow("mutation"))?;
    if prod <= 0 {
        return Ok(bij);
    }
    let delta = if bik > 0 { prod } else { -prod };
    bij.checked_add(delta).ok_or(Error::Overflow("mutation"))
}

/// On-disk quiver description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverFile {
    pub n: usize,
    pub arrows: Vec<(usize, usize, i64)>,
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        ExchangeMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> ExchangeMatrix {
        // b12 = b23 = b31 = 1 in 1-indexed labels
        ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
    }

    #[test]
    fn a2_mutation_reverses_arrow() {
        let k1 = ExchangeMatrix::kronecker(1);
        assert_eq!(k1.mutate(0).unwrap().rows(), vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn three_cycle_mutation_at_middle_vertex() {
        let m = three_cycle().mutate(1).unwrap();
        // arrows at vertex 2 reversed, composite 1->2->3 cancels 3->1
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(2, 1), 1);
        assert_eq!(m.get(0, 2), 0);
        assert_eq!(m.get(2, 0), 0);
    }

    #[test]
    fn rank_two_mutation_negates() {
        let k3 = ExchangeMatrix::kronecker(3);
        for k in 0..2 {
            assert_eq!(k3.mutate(k).unwrap(), k3.opposite());
        }
    }

    #[test]
    fn mutation_index_out_of_range() {
        assert_eq!(
            ExchangeMatrix::kronecker(1).mutate(2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn rejects_non_skew() {
        assert!(ExchangeMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::from_rows(&[vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn parses_text_and_json() {
        let text = "3\n0 1 1\n1 2 1\n2 0 1\n";
        let json = r#"{"n": 3, "arrows": [[0,1,1],[1,2,1],[2,0,1]]}"#;
        assert_eq!(ExchangeMatrix::parse(text).unwrap(), three_cycle());
        assert_eq!(ExchangeMatrix::parse(json).unwrap(), three_cycle());
        assert!(ExchangeMatrix::parse("2\n0 0 1\n").is_err());
        assert!(ExchangeMatrix::parse("2\n0 1\n").is_err());
        assert!(ExchangeMatrix::parse("2\n0 5 1\n").is_err());
    }

    #[test]
    fn components_split_disconnected() {
        let q = ExchangeMatrix::from_arrows(4, &[(0, 1, 1), (2, 3, 2)]).unwrap();
        assert_eq!(q.components(), vec![vec![0, 1], vec![2, 3]]);
    }
}
