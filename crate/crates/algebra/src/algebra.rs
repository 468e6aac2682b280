//! Path algebras with admissible relations, their bases and multiplication.
//!
//! Paths compose right to left: the product `β·α` of a path `α: i → j` and a
//! path `β: j → k` is the path that runs along `α` first. A path is stored as
//! its arrows in the order they are traversed. The block `e_j Λ e_i` holds the
//! paths from `i` to `j`, which is also `Hom(P_i, P_j)` for `P_i = e_i Λ`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Rationals};
use crate::linalg::{rref, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A coefficient written either as an integer or as a string like `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn value(&self) -> Result<BigRational> {
        match self {
            Coefficient::Int(v) => Ok(BigRational::from_integer((*v).into())),
            Coefficient::Text(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("bad coefficient `{s}`"))),
        }
    }
}

/// One term of a relation. `path` lists arrow names as the product is
/// written, so `["b", "a"]` is `b·a`: first `a`, then `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: Coefficient,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

/// Input description of `kQ / I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub vertices: usize,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<Term>>,
    pub nilpotency_bound: usize,
    #[serde(default)]
    pub field: FieldSpec,
}

impl AlgebraPresentation {
    /// Kronecker quiver: arrows `a`, `b` from vertex 0 to vertex 1.
    pub fn kronecker() -> Self {
        Self::kronecker_m(2)
    }

    /// `m` parallel arrows `a_1, …, a_m` from 0 to 1; `m = 2` names them `a`, `b`.
    pub fn kronecker_m(m: usize) -> Self {
        let names: Vec<String> = if m == 2 {
            vec!["a".into(), "b".into()]
        } else {
            (1..=m).map(|i| format!("a{i}")).collect()
        };
        AlgebraPresentation {
            vertices: 2,
            arrows: names
                .into_iter()
                .map(|name| ArrowSpec {
                    name,
                    source: 0,
                    target: 1,
                })
                .collect(),
            relations: Vec::new(),
            nilpotency_bound: 2,
            field: FieldSpec::Rationals,
        }
    }

    /// Linearly oriented `A_n`, `0 → 1 → … → n−1`, without relations.
    pub fn linear_a(n: usize) -> Self {
        AlgebraPresentation {
            vertices: n,
            arrows: (0..n.saturating_sub(1))
                .map(|i| ArrowSpec {
                    name: format!("x{i}"),
                    source: i,
                    target: i + 1,
                })
                .collect(),
            relations: Vec::new(),
            nilpotency_bound: n.max(1),
            field: FieldSpec::Rationals,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A path: start vertex plus arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Degree-lexicographic sort key.
    fn order_key(&self) -> (usize, usize, usize, Vec<usize>) {
        (self.len(), self.source, self.target, self.arrows.clone())
    }
}

/// `kQ / I` with a basis of standard paths in every block `e_j Λ e_i` and
/// rational structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    presentation: AlgebraPresentation,
    /// `blocks[j][i]`: global basis indices of `e_j Λ e_i`, in order.
    blocks: Vec<Vec<Vec<usize>>>,
    /// Every basis path, indexed globally.
    elements: Vec<Path>,
    /// Position of each global index inside its block.
    local: Vec<usize>,
    /// `products[(β, α)]`: `β·α` as (global index, coefficient) pairs.
    products: HashMap<(usize, usize), Vec<(usize, BigRational)>>,
    /// Each arrow in the basis.
    arrow_forms: Vec<Vec<(usize, BigRational)>>,
    arrow_names: HashMap<String, usize>,
}

impl Algebra {
    pub fn new(pres: AlgebraPresentation) -> Result<Self> {
        let n = pres.vertices;
        let l = pres.nilpotency_bound;
        if l == 0 {
            return Err(Error::Presentation("nilpotency bound must be positive".into()));
        }
        let mut index_of_name = HashMap::new();
        for (k, a) in pres.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Presentation(format!("arrow `{}` has an endpoint outside 0..{n}", a.name)));
            }
            if index_of_name.insert(a.name.clone(), k).is_some() {
                return Err(Error::Presentation(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        let arrows: Vec<(usize, usize)> = pres.arrows.iter().map(|a| (a.source, a.target)).collect();

        // all paths of length ≤ L
        let mut paths: Vec<Path> = (0..n)
            .map(|v| Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            })
            .collect();
        let mut layer = paths.clone();
        for _ in 0..l {
            let mut next = Vec::new();
            for p in &layer {
                for (k, &(s, t)) in arrows.iter().enumerate() {
                    if s == p.target {
                        let mut a = p.arrows.clone();
                        a.push(k);
                        next.push(Path {
                            source: p.source,
                            target: t,
                            arrows: a,
                        });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            layer = next;
        }
        // columns ordered largest first, so pivots are leading monomials
        paths.sort_by_key(|p| std::cmp::Reverse(p.order_key()));
        let col: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        // relations as parallel path combinations
        let mut rels: Vec<Vec<(Path, BigRational)>> = Vec::new();
        for (ri, rel) in pres.relations.iter().enumerate() {
            let mut terms = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            for term in rel {
                if term.path.is_empty() {
                    return Err(Error::Presentation(format!("relation {ri} has an empty path")));
                }
                let mut arrows_fwd = Vec::new();
                for name in term.path.iter().rev() {
                    let k = *index_of_name
                        .get(name)
                        .ok_or_else(|| Error::Presentation(format!("unknown arrow `{name}` in relation {ri}")))?;
                    arrows_fwd.push(k);
                }
                for w in arrows_fwd.windows(2) {
                    if arrows[w[0]].1 != arrows[w[1]].0 {
                        return Err(Error::Presentation(format!("relation {ri}: path {:?} does not compose", term.path)));
                    }
                }
                let p = Path {
                    source: arrows[arrows_fwd[0]].0,
                    target: arrows[*arrows_fwd.last().expect("nonempty")].1,
                    arrows: arrows_fwd,
                };
                match ends {
                    None => ends = Some((p.source, p.target)),
                    Some(e) if e != (p.source, p.target) => {
                        return Err(Error::Presentation(format!("relation {ri} mixes non-parallel paths")));
                    }
                    _ => {}
                }
                terms.push((p, term.coefficient.value()?));
            }
            rels.push(terms);
        }

        // ideal generators u·ρ·w truncated at length L, plus all length-L paths
        let by_target = |v: usize| paths.iter().filter(move |p| p.target == v);
        let by_source = |v: usize| paths.iter().filter(move |p| p.source == v);
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        for rel in &rels {
            let Some((first, _)) = rel.first() else { continue };
            let (s, t) = (first.source, first.target);
            let min_len = rel.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
            for w in by_target(s) {
                for u in by_source(t) {
                    if w.len() + u.len() + min_len > l {
                        continue;
                    }
                    let mut row = vec![BigRational::zero(); paths.len()];
                    let mut nonzero = false;
                    for (p, c) in rel {
                        let mut a = w.arrows.clone();
                        a.extend(&p.arrows);
                        a.extend(&u.arrows);
                        if a.len() > l {
                            continue;
                        }
                        let q = Path {
                            source: w.source,
                            target: u.target,
                            arrows: a,
                        };
                        row[col[&q]] += c;
                        nonzero = true;
                    }
                    if nonzero {
                        gens.push(row);
                    }
                }
            }
        }
        let ideal_rank = if gens.is_empty() {
            0
        } else {
            rref(&Rationals, &mut Mat::from_rows(paths.len(), gens.clone()))
                .len()
        };
        for p in paths.iter().filter(|p| p.len() == l) {
            let mut row = vec![BigRational::zero(); paths.len()];
            row[col[p]] = BigRational::one();
            gens.push(row);
            let r = rref(&Rationals, &mut Mat::from_rows(paths.len(), gens.clone())).len();
            if r != ideal_rank {
                return Err(Error::Nilpotency(describe(&pres, p)));
            }
            gens.pop();
        }
        for p in paths.iter().filter(|p| p.len() == l) {
            let mut row = vec![BigRational::zero(); paths.len()];
            row[col[p]] = BigRational::one();
            gens.push(row);
        }
        let mut m = Mat::from_rows(paths.len(), gens);
        let pivots = if m.rows == 0 { Vec::new() } else { rref(&Rationals, &mut m) };
        let mut pivot_row = HashMap::new();
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row.insert(c, r);
        }
        for v in 0..n {
            if pivot_row.contains_key(&col[&Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            }]) {
                return Err(Error::Presentation(format!("relations kill the idempotent at vertex {v}")));
            }
        }

        // standard paths, ascending within each block
        let mut standard: Vec<Path> = paths
            .iter()
            .enumerate()
            .filter(|(c, _)| !pivot_row.contains_key(c))
            .map(|(_, p)| p.clone())
            .collect();
        standard.sort_by_key(|p| (p.target, p.source, p.order_key()));
        let mut blocks = vec![vec![Vec::new(); n]; n];
        let mut local = Vec::with_capacity(standard.len());
        for (g, p) in standard.iter().enumerate() {
            local.push(blocks[p.target][p.source].len());
            blocks[p.target][p.source].push(g);
        }
        let global_of: HashMap<Path, usize> = standard.iter().enumerate().map(|(g, p)| (p.clone(), g)).collect();

        // normal form of any path of length ≤ L
        let normal_form = |p: &Path| -> Vec<(usize, BigRational)> {
            if p.len() > l {
                return Vec::new();
            }
            let c = col[p];
            match pivot_row.get(&c) {
                None => vec![(global_of[p], BigRational::one())],
                Some(&r) => m
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(j, x)| *j != c && !x.is_zero())
                    .map(|(j, x)| (global_of[&paths[j]], -x.clone()))
                    .collect(),
            }
        };
        let arrow_forms = (0..arrows.len())
            .map(|k| {
                normal_form(&Path {
                    source: arrows[k].0,
                    target: arrows[k].1,
                    arrows: vec![k],
                })
            })
            .collect();
        let mut products = HashMap::new();
        for (bi, beta) in standard.iter().enumerate() {
            for (ai, alpha) in standard.iter().enumerate() {
                if alpha.target != beta.source {
                    continue;
                }
                let mut a = alpha.arrows.clone();
                a.extend(&beta.arrows);
                let prod = Path {
                    source: alpha.source,
                    target: beta.target,
                    arrows: a,
                };
                products.insert((bi, ai), normal_form(&prod));
            }
        }

        Ok(Algebra {
            presentation: pres,
            blocks,
            elements: standard,
            local,
            products,
            arrow_forms,
            arrow_names: index_of_name,
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn vertices(&self) -> usize {
        self.presentation.vertices
    }

    /// `dim e_j Λ e_i`.
    pub fn block_dim(&self, j: usize, i: usize) -> usize {
        self.blocks[j][i].len()
    }

    /// Global indices spanning `e_j Λ e_i`.
    pub fn block(&self, j: usize, i: usize) -> &[usize] {
        &self.blocks[j][i]
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &Path {
        &self.elements[g]
    }

    pub fn local_index(&self, g: usize) -> usize {
        self.local[g]
    }

    /// Structure constants of `β·α` for global indices.
    pub fn product(&self, beta: usize, alpha: usize) -> &[(usize, BigRational)] {
        self.products.get(&(beta, alpha)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Global index of the trivial path at `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.blocks[v][v][0]
    }

    /// The product of named arrows, written right to left as in `["b", "a"]`
    /// for `b·a`, expanded in the basis. Returns source, target and terms.
    pub fn word(&self, names: &[&str]) -> Result<(usize, usize, Vec<(usize, BigRational)>)> {
        let mut ks = Vec::with_capacity(names.len());
        for name in names.iter().rev() {
            ks.push(*self.arrow_names.get(*name).ok_or_else(|| Error::Presentation(format!("unknown arrow `{name}`")))?);
        }
        let Some(&first) = ks.first() else {
            return Err(Error::Presentation("empty word".into()));
        };
        let arrows = &self.presentation.arrows;
        let mut acc = self.arrow_forms[first].clone();
        for w in ks.windows(2) {
            if arrows[w[0]].target != arrows[w[1]].source {
                return Err(Error::Presentation(format!("word {names:?} does not compose")));
            }
            let mut next: Vec<(usize, BigRational)> = Vec::new();
            for (b, cb) in &self.arrow_forms[w[1]] {
                for (a, ca) in &acc {
                    for (g, c) in self.product(*b, *a) {
                        let v = c * cb * ca;
                        match next.iter_mut().find(|(h, _)| h == g) {
                            Some(slot) => slot.1 += v,
                            None => next.push((*g, v)),
                        }
                    }
                }
            }
            next.retain(|(_, c)| !c.is_zero());
            acc = next;
        }
        Ok((arrows[first].source, arrows[*ks.last().expect("nonempty")].target, acc))
    }

    /// Human-readable name of a basis path, written right to left.
    pub fn path_name(&self, g: usize) -> String {
        let p = &self.elements[g];
        if p.arrows.is_empty() {
            return format!("e{}", p.source);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&k| self.presentation.arrows[k].name.as_str())
            .collect::<Vec<_>>()
            .join("")
    }
}

fn describe(pres: &AlgebraPresentation, p: &Path) -> String {
    p.arrows
        .iter()
        .rev()
        .map(|&k| pres.arrows[k].name.clone())
        .collect::<Vec<_>>()
        .join("")
}
