//! Group and quandle presentations, abelianization and linking numbers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::{canonical_form, components, Comte, SelfIndexedGraph};
use crate::homology::smith_normal_form;

/// A letter of a group word: generator index and exponent `±1`.
pub type Letter = (usize, i8);

/// `<V | a·b = c·a for each arrow b --a--> c>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Vec<Letter>, Vec<Letter>)>,
}

pub fn group_presentation(g: &SelfIndexedGraph) -> GroupPresentation {
    GroupPresentation {
        generators: g.vertices().to_vec(),
        relations: g
            .arrows()
            .iter()
            .map(|a| (vec![(a.label, 1), (a.source, 1)], vec![(a.target, 1), (a.label, 1)]))
            .collect(),
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, gens: &[String], w: &[Letter]) -> fmt::Result {
    if w.is_empty() {
        return f.write_str("1");
    }
    for (i, &(g, e)) in w.iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        f.write_str(&gens[g])?;
        if e < 0 {
            f.write_str("^-1")?;
        }
    }
    Ok(())
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for (l, r) in &self.relations {
            write_word(f, &self.generators, l)?;
            f.write_str(" = ")?;
            write_word(f, &self.generators, r)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Free quandle on `V` modulo `a |> b = c` for each arrow `b --a--> c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub generators: Vec<String>,
    /// `(a, b, c)` meaning `a |> b = c`
    pub relations: Vec<(usize, usize, usize)>,
}

pub fn quandle_presentation(g: &SelfIndexedGraph) -> QuandlePresentation {
    QuandlePresentation {
        generators: g.vertices().to_vec(),
        relations: g.arrows().iter().map(|a| (a.label, a.source, a.target)).collect(),
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        let n = |i: usize| &self.generators[i];
        for &(a, b, c) in &self.relations {
            writeln!(f, "{} |> {} = {}", n(a), n(b), n(c))?;
        }
        Ok(())
    }
}

/// Rank of the abelianized group: relations become `b - c = 0` since the
/// label cancels.
pub fn abelianization_rank(g: &SelfIndexedGraph) -> usize {
    let n = g.vertex_count();
    let rows: Vec<Vec<BigInt>> = g
        .arrows()
        .iter()
        .map(|a| {
            let mut row = vec![BigInt::zero(); n];
            row[a.source] += 1;
            row[a.target] -= 1;
            row
        })
        .collect();
    let snf = smith_normal_form(&rows, n);
    n - snf.rank()
}

/// `lk[i][j]`: total flow on arrows whose source lies in component `j` and
/// whose label lies in component `i`. Components are numbered by their
/// smallest vertex in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix {
    pub components: Vec<Vec<usize>>,
    entries: Vec<Vec<BigInt>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.components.len()
    }

    /// `None` on the diagonal, where the number is not defined.
    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        (i != j).then(|| &self.entries[i][j])
    }

    pub fn component_of_vertex(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&v))
    }

    /// Entry between the components containing vertices `u` and `v`.
    pub fn between(&self, u: usize, v: usize) -> Option<&BigInt> {
        self.get(self.component_of_vertex(u)?, self.component_of_vertex(v)?)
    }

    /// The lexicographically least off-diagonal entry list over all
    /// renumberings of the components; equal for matrices that differ only in
    /// the numbering. Exhaustive, so meant for a handful of components.
    pub fn normal_form(&self) -> Vec<Vec<Option<BigInt>>> {
        let k = self.size();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut best: Option<Vec<Vec<Option<BigInt>>>> = None;
        loop {
            let m: Vec<Vec<Option<BigInt>>> =
                (0..k).map(|i| (0..k).map(|j| self.get(perm[i], perm[j]).cloned()).collect()).collect();
            if best.as_ref().is_none_or(|b| &m < b) {
                best = Some(m);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size() {
            let row: Vec<String> =
                (0..self.size()).map(|j| self.get(i, j).map_or("*".to_string(), |x| x.to_string())).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

pub fn linking_matrix(c: &Comte) -> LinkingMatrix {
    let g = c.graph();
    let pos = canonical_form(g, Some(c.flows())).position;
    let mut comps = components(g);
    comps.sort_by_key(|class| class.iter().map(|&v| pos[v]).min());
    let mut which = vec![0; g.vertex_count()];
    for (k, class) in comps.iter().enumerate() {
        for &v in class {
            which[v] = k;
        }
    }
    let k = comps.len();
    let mut entries = vec![vec![BigInt::zero(); k]; k];
    for (a, flow) in g.arrows().iter().zip(c.flows()) {
        entries[which[a.label]][which[a.source]] += flow;
    }
    LinkingMatrix { components: comps, entries }
}
