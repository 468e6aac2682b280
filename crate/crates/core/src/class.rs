//! Mutation-class exploration, mutation-finiteness and recognition of the
//! named mutation-finite families.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, invariant_key};
use crate::error::Result;
use crate::quiver::ExchangeMatrix;

/// Largest rank for which class dedup uses exact canonical forms.
pub const EXACT_CANON_MAX_RANK: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Finite,
    Infinite,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationClassReport {
    pub verdict: Verdict,
    /// `true` iff the verdict is `finite`.
    pub finite: bool,
    pub class_size: Option<usize>,
    /// Mutation sequence, on the input labeling, reaching a quiver with a
    /// weight of at least 3 inside a connected component of rank at least 3.
    pub witness: Option<Vec<usize>>,
    /// Number of distinct quivers (up to the dedup key) visited.
    pub explored: usize,
    /// `false` when dedup fell back to an invariant key (rank above 10), so
    /// sizes are not guaranteed to be counted up to isomorphism.
    pub exact_isomorphism: bool,
}

/// Explored part of a mutation class.
#[derive(Debug, Clone)]
pub struct MutationClass {
    pub report: MutationClassReport,
    /// Canonical forms visited, in BFS order.
    pub members: Vec<ExchangeMatrix>,
    key_index: HashMap<Vec<i64>, usize>,
    exact: bool,
}

impl MutationClass {
    /// Whether a quiver isomorphic to `b` was visited.
    pub fn contains(&self, b: &ExchangeMatrix) -> bool {
        self.key_index.contains_key(&dedup_key(b, self.exact))
    }
}

fn dedup_key(b: &ExchangeMatrix, exact: bool) -> Vec<i64> {
    if exact {
        let c = canonical_form(b);
        let mut key = vec![c.rank() as i64];
        key.extend(c.rows().into_iter().flatten());
        key
    } else {
        invariant_key(b)
    }
}

/// Position of a weight ≥ 3 entry inside a component with ≥ 3 vertices.
fn heavy_entry(b: &ExchangeMatrix) -> Option<(usize, usize)> {
    if b.max_weight() < 3 {
        return None;
    }
    for comp in b.components() {
        if comp.len() < 3 {
            continue;
        }
        for &i in &comp {
            for &j in &comp {
                if b.get(i, j).abs() >= 3 {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Breadth-first exploration of the mutation class of `b`, visiting at most
/// `max_nodes` quivers up to isomorphism.
pub fn explore_class(b: &ExchangeMatrix, max_nodes: usize) -> Result<MutationClass> {
    explore_class_with(b, max_nodes, true)
}

/// As [`explore_class`]; with `weight_rule` off the search never stops early
/// on heavy weights and only ends on an empty frontier or the budget.
pub fn explore_class_with(b: &ExchangeMatrix, max_nodes: usize, weight_rule: bool) -> Result<MutationClass> {
    let max_nodes = max_nodes.max(1);
    let exact = b.rank() <= EXACT_CANON_MAX_RANK;
    let n = b.rank();

    let mut key_index = HashMap::new();
    let mut members = Vec::new();
    let root_key = dedup_key(b, exact);
    key_index.insert(root_key, 0);
    members.push(if exact { canonical_form(b) } else { b.clone() });

    let finish = |verdict: Verdict,
                  witness: Option<Vec<usize>>,
                  members: Vec<ExchangeMatrix>,
                  key_index: HashMap<Vec<i64>, usize>| {
        let explored = members.len();
        MutationClass {
            report: MutationClassReport {
                verdict,
                finite: verdict == Verdict::Finite,
                class_size: (verdict == Verdict::Finite).then_some(explored),
                witness,
                explored,
                exact_isomorphism: exact,
            },
            members,
            key_index,
            exact,
        }
    };

    if weight_rule && heavy_entry(b).is_some() {
        return Ok(finish(Verdict::Infinite, Some(Vec::new()), members, key_index));
    }

    // frontier holds labeled matrices reached from the input, with their trails
    let mut frontier: Vec<(ExchangeMatrix, Vec<usize>)> = vec![(b.clone(), Vec::new())];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(ExchangeMatrix, Vec<usize>, Vec<i64>)>> = frontier
            .par_iter()
            .map(|(m, trail)| {
                (0..n)
                    .map(|k| {
                        let child = m.mutate(k)?;
                        let key = dedup_key(&child, exact);
                        let mut t = trail.clone();
                        t.push(k);
                        Ok((child, t, key))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut next = Vec::new();
        for (child, trail, key) in expanded.into_iter().flatten() {
            if key_index.contains_key(&key) {
                continue;
            }
            if weight_rule && heavy_entry(&child).is_some() {
                return Ok(finish(Verdict::Infinite, Some(trail), members, key_index));
            }
            if members.len() >= max_nodes {
                return Ok(finish(Verdict::BudgetExhausted, None, members, key_index));
            }
            key_index.insert(key, members.len());
            members.push(if exact { canonical_form(&child) } else { child.clone() });
            next.push((child, trail));
        }
        frontier = next;
    }
    Ok(finish(Verdict::Finite, None, members, key_index))
}

/// Mutation-finiteness report for `b` within a budget of `max_nodes` quivers.
pub fn mutation_class(b: &ExchangeMatrix, max_nodes: usize) -> Result<MutationClassReport> {
    Ok(explore_class(b, max_nodes)?.report)
}

/// Named quivers from the classification of mutation-finite quivers that are
/// neither rank 2 nor of surface type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exceptional {
    E6,
    E7,
    E8,
    AffineE6,
    AffineE7,
    AffineE8,
    EllipticE6,
    EllipticE7,
    EllipticE8,
    X6,
    X7,
}

impl Exceptional {
    pub const ALL: [Exceptional; 11] = [
        Exceptional::E6,
        Exceptional::E7,
        Exceptional::E8,
        Exceptional::AffineE6,
        Exceptional::AffineE7,
        Exceptional::AffineE8,
        Exceptional::EllipticE6,
        Exceptional::EllipticE7,
        Exceptional::EllipticE8,
        Exceptional::X6,
        Exceptional::X7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Exceptional::E6 => "E6",
            Exceptional::E7 => "E7",
            Exceptional::E8 => "E8",
            Exceptional::AffineE6 => "E6~",
            Exceptional::AffineE7 => "E7~",
            Exceptional::AffineE8 => "E8~",
            Exceptional::EllipticE6 => "E6(1,1)",
            Exceptional::EllipticE7 => "E7(1,1)",
            Exceptional::EllipticE8 => "E8(1,1)",
            Exceptional::X6 => "X6",
            Exceptional::X7 => "X7",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Exceptional::ALL.into_iter().find(|e| e.name().eq_ignore_ascii_case(name))
    }

    /// Representative quiver, drawn as in the standard pictures.
    pub fn quiver(self) -> ExchangeMatrix {
        // star-shaped E-types: centre 0, arms listed outward, every arm
        // oriented towards the centre
        fn star(arms: &[usize]) -> ExchangeMatrix {
            let n = 1 + arms.iter().sum::<usize>();
            let mut arrows = Vec::new();
            let mut next = 1;
            for &len in arms {
                let mut inner = 0;
                for _ in 0..len {
                    arrows.push((next, inner, 1));
                    inner = next;
                    next += 1;
                }
            }
            ExchangeMatrix::from_arrows(n, &arrows).expect("static quiver")
        }
        // tubular quivers: vertices u = 0 and d = 1 joined by d => u; each leg
        // hangs off a vertex c with u -> c -> d, and further vertices point
        // towards c
        fn tubular(legs: &[usize]) -> ExchangeMatrix {
            let n = 2 + legs.iter().sum::<usize>();
            let mut arrows = vec![(1, 0, 2)];
            let mut next = 2;
            for &len in legs {
                let c = next;
                arrows.push((0, c, 1));
                arrows.push((c, 1, 1));
                next += 1;
                let mut inner = c;
                for _ in 1..len {
                    arrows.push((next, inner, 1));
                    inner = next;
                    next += 1;
                }
            }
            ExchangeMatrix::from_arrows(n, &arrows).expect("static quiver")
        }
        match self {
            Exceptional::E6 => star(&[2, 1, 2]),
            Exceptional::E7 => star(&[2, 1, 3]),
            Exceptional::E8 => star(&[2, 1, 4]),
            Exceptional::AffineE6 => star(&[2, 2, 2]),
            Exceptional::AffineE7 => star(&[3, 1, 3]),
            Exceptional::AffineE8 => star(&[2, 1, 5]),
            Exceptional::EllipticE6 => tubular(&[2, 2, 2]),
            Exceptional::EllipticE7 => tubular(&[3, 1, 3]),
            Exceptional::EllipticE8 => tubular(&[2, 1, 5]),
            // centre 0 with oriented triangles 0 -> a => b -> 0
            Exceptional::X6 => ExchangeMatrix::from_arrows(
                6,
                &[(0, 1, 1), (1, 2, 2), (2, 0, 1), (0, 3, 1), (3, 4, 2), (4, 0, 1), (5, 0, 1)],
            )
            .expect("static quiver"),
            Exceptional::X7 => ExchangeMatrix::from_arrows(
                7,
                &[
                    (0, 1, 1),
                    (1, 2, 2),
                    (2, 0, 1),
                    (0, 3, 1),
                    (3, 4, 2),
                    (4, 0, 1),
                    (0, 5, 1),
                    (5, 6, 2),
                    (6, 0, 1),
                ],
            )
            .expect("static quiver"),
        }
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Kronecker(i64),
    Exceptional(Exceptional),
    MutationInfinite,
    SurfaceOrUnknown,
    BudgetExhausted,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Kronecker(m) => write!(f, "kronecker({m})"),
            Classification::Exceptional(e) => write!(f, "exceptional({})", e.name()),
            Classification::MutationInfinite => f.write_str("mutation-infinite"),
            Classification::SurfaceOrUnknown => f.write_str("surface-or-unknown"),
            Classification::BudgetExhausted => f.write_str("budget-exhausted"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Names the mutation class of `b`: rank 2 is read off directly, otherwise
/// the explored class is matched against the exceptional representatives of
/// the same rank.
pub fn classify(b: &ExchangeMatrix, max_nodes: usize) -> Result<Classification> {
    if b.rank() == 2 {
        return Ok(Classification::Kronecker(b.get(0, 1).abs()));
    }
    let class = explore_class(b, max_nodes)?;
    match class.report.verdict {
        Verdict::Infinite => return Ok(Classification::MutationInfinite),
        Verdict::BudgetExhausted => return Ok(Classification::BudgetExhausted),
        Verdict::Finite => {}
    }
    for e in Exceptional::ALL {
        let q = e.quiver();
        if q.rank() == b.rank() && class.contains(&q) {
            return Ok(Classification::Exceptional(e));
        }
    }
    Ok(Classification::SurfaceOrUnknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_classes_are_singletons() {
        for m in 0..6 {
            let r = mutation_class(&ExchangeMatrix::kronecker(m), 10).unwrap();
            assert_eq!(r.verdict, Verdict::Finite);
            assert_eq!(r.class_size, Some(1));
        }
    }

    #[test]
    fn markov_is_a_singleton_class() {
        let r = mutation_class(&ExchangeMatrix::markov(), 10).unwrap();
        assert_eq!(r.class_size, Some(1));
    }

    #[test]
    fn triple_arrow_with_pendant_is_infinite() {
        let q = ExchangeMatrix::from_arrows(3, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        let r = mutation_class(&q, 100).unwrap();
        assert_eq!(r.verdict, Verdict::Infinite);
        assert_eq!(r.witness, Some(vec![]));
    }

    #[test]
    fn infinite_verdict_carries_a_valid_witness() {
        // A 3-cycle with weights (2, 2, 1) is mutation-infinite
        let q = ExchangeMatrix::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 1)]).unwrap();
        let r = mutation_class(&q, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::Infinite);
        let w = r.witness.unwrap();
        assert!(q.mutate_along(&w).unwrap().max_weight() >= 3);
    }

    #[test]
    fn disconnected_kronecker_component_is_not_flagged() {
        let q = ExchangeMatrix::from_arrows(3, &[(0, 1, 5)]).unwrap();
        let r = mutation_class(&q, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.class_size, Some(1));
    }

    #[test]
    fn budget_exhaustion_is_a_verdict() {
        let r = mutation_class(&Exceptional::E6.quiver(), 3).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetExhausted);
        assert_eq!(r.class_size, None);
    }

    #[test]
    fn classify_labels() {
        assert_eq!(
            classify(&ExchangeMatrix::kronecker(5), 10).unwrap().to_string(),
            "kronecker(5)"
        );
        assert_eq!(
            classify(&Exceptional::X6.quiver(), 100).unwrap(),
            Classification::Exceptional(Exceptional::X6)
        );
        assert_eq!(
            classify(&ExchangeMatrix::markov(), 100).unwrap(),
            Classification::SurfaceOrUnknown
        );
        let heavy = ExchangeMatrix::from_arrows(3, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        assert_eq!(classify(&heavy, 100).unwrap(), Classification::MutationInfinite);
        assert_eq!(
            classify(&Exceptional::E6.quiver(), 2).unwrap(),
            Classification::BudgetExhausted
        );
    }

    #[test]
    fn representative_ranks() {
        let ranks: Vec<usize> = Exceptional::ALL.iter().map(|e| e.quiver().rank()).collect();
        assert_eq!(ranks, vec![6, 7, 8, 7, 8, 9, 8, 9, 10, 6, 7]);
    }
}
