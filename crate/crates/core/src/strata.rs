//! Stratum symbols for fixed `(g, m)` and their collision-generated adjacency.
//!
//! A node is a symbol `(m_free, n_poles, {l: n(l)}, ε)`; the marked points are the
//! poles, the free marked points and `m − m_free − n_poles` of the zeros. One move
//! collides a group of points carrying at most one mark into a single point whose
//! order is the sum (at least −1); the mark survives. A square (`ε = +1`) may arise
//! from `ε = −1` only when every order is even and the dimension drops.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{QdError, Result};
use crate::surface::{stratum_dim, StratumSymbol};

/// Symbols of nonempty strata for genus `g` with `m` marked points, by decreasing dimension.
pub fn enumerate_symbols(g: usize, m: usize) -> Vec<StratumSymbol> {
    if 2 * g as i64 - 2 + m as i64 <= 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n_poles in 0..=m {
        let total = 4 * g as i64 - 4 + n_poles as i64;
        if total < 0 {
            continue;
        }
        for parts in partitions(total as u32, total as u32) {
            let mut n_zeros = BTreeMap::new();
            for p in &parts {
                *n_zeros.entry(*p).or_insert(0) += 1;
            }
            for m_free in 0..=(m - n_poles) {
                if m - n_poles - m_free > parts.len() {
                    continue;
                }
                for epsilon in [-1i8, 1] {
                    let s = StratumSymbol { m_free, n_poles, n_zeros: n_zeros.clone(), epsilon };
                    if s.validate(g).is_ok() && is_nonempty(&s, g) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| dim(b, g).cmp(&dim(a, g)).then_with(|| a.cmp(b)));
    out
}

fn dim(s: &StratumSymbol, g: usize) -> usize {
    stratum_dim(s, g).expect("enumerated symbols are valid")
}

/// Partitions of `n` into positive parts of size at most `max`, in decreasing order.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Strata that are known to be empty: `Q(∅)` and `Q(1, −1)` in genus 1, `Q(4)` and `Q(3, 1)` in genus 2.
pub fn is_nonempty(s: &StratumSymbol, g: usize) -> bool {
    if s.epsilon == 1 {
        return true;
    }
    let orders: Vec<(u32, usize)> = s.n_zeros.iter().map(|(&l, &n)| (l, n)).collect();
    match (g, s.n_poles, orders.as_slice()) {
        (1, 0, []) | (1, 1, [(1, 1)]) => false,
        (2, 0, [(4, 1)]) | (2, 0, [(1, 1), (3, 1)]) => false,
        _ => true,
    }
}

/// A singular or marked point: order and whether it carries a mark.
type Point = (i64, bool);

/// Point configurations realizing a symbol with `m` marks.
fn configurations(s: &StratumSymbol, m: usize) -> Vec<Vec<Point>> {
    let Some(marked_zeros) = m.checked_sub(s.m_free + s.n_poles) else {
        return Vec::new();
    };
    let mut base: Vec<Point> = Vec::new();
    base.extend(std::iter::repeat_n((0, true), s.m_free));
    base.extend(std::iter::repeat_n((-1, true), s.n_poles));
    let kinds: Vec<(u32, usize)> = s.n_zeros.iter().map(|(&l, &n)| (l, n)).collect();
    let mut out = Vec::new();
    choose_marks(&kinds, 0, marked_zeros, &mut Vec::new(), &mut |marks| {
        let mut c = base.clone();
        for ((l, n), k) in kinds.iter().zip(marks) {
            c.extend(std::iter::repeat_n((*l as i64, true), *k));
            c.extend(std::iter::repeat_n((*l as i64, false), n - k));
        }
        c.sort();
        out.push(c);
    });
    out
}

fn choose_marks(kinds: &[(u32, usize)], i: usize, left: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == kinds.len() {
        if left == 0 {
            f(acc);
        }
        return;
    }
    for k in 0..=kinds[i].1.min(left) {
        acc.push(k);
        choose_marks(kinds, i + 1, left - k, acc, f);
        acc.pop();
    }
}

/// Whether `to` is obtained from `from` by colliding disjoint groups of points.
fn coarsens(from: &[Point], to: &[Point]) -> bool {
    if from.len() <= to.len() {
        return false;
    }
    let mut used = vec![false; from.len()];
    assign(from, to, 0, &mut used)
}

fn assign(from: &[Point], to: &[Point], j: usize, used: &mut [bool]) -> bool {
    if j == to.len() {
        return used.iter().all(|&u| u);
    }
    let (order, marked) = to[j];
    let free: Vec<usize> = (0..from.len()).filter(|&i| !used[i]).collect();
    group(from, to, j, used, &free, 0, order, if marked { 1 } else { 0 }, 0)
}

#[allow(clippy::too_many_arguments)]
fn group(
    from: &[Point],
    to: &[Point],
    j: usize,
    used: &mut [bool],
    free: &[usize],
    k: usize,
    need: i64,
    marks: usize,
    size: usize,
) -> bool {
    if need == 0 && marks == 0 && size > 0 && assign(from, to, j + 1, used) {
        return true;
    }
    for idx in k..free.len() {
        let i = free[idx];
        // equal points are interchangeable: only take the first unused copy
        if idx > k && from[free[idx - 1]] == from[i] && !used[free[idx - 1]] {
            continue;
        }
        let (o, mk) = from[i];
        if mk && marks == 0 {
            continue;
        }
        used[i] = true;
        let ok = group(from, to, j, used, free, idx + 1, need - o, marks - usize::from(mk), size + 1);
        used[i] = false;
        if ok {
            return true;
        }
    }
    false
}

/// One simultaneous collision between the two symbols, ignoring `ε`.
fn collides(a: &StratumSymbol, b: &StratumSymbol, m: usize) -> bool {
    let ca = configurations(a, m);
    let cb = configurations(b, m);
    ca.iter().any(|x| cb.iter().any(|y| coarsens(x, y)))
}

fn admissible(a: &StratumSymbol, b: &StratumSymbol, g: usize, m: usize) -> bool {
    if a.epsilon == 1 && b.epsilon == -1 {
        return false;
    }
    dim(b, g) < dim(a, g) && collides(a, b, m)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolPoset {
    pub genus: usize,
    pub marked: usize,
    pub nodes: Vec<StratumSymbol>,
    pub dims: Vec<usize>,
    /// `reach[i]` holds every `j` that node `i` degenerates to.
    #[serde(skip)]
    reach: Vec<BTreeSet<usize>>,
    /// Covering relations of the degeneration order.
    pub edges: Vec<(usize, usize)>,
}

impl SymbolPoset {
    pub fn new(g: usize, m: usize) -> Self {
        let nodes = enumerate_symbols(g, m);
        let n = nodes.len();
        let dims: Vec<usize> = nodes.iter().map(|s| dim(s, g)).collect();
        let mut reach: Vec<BTreeSet<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| admissible(&nodes[i], &nodes[j], g, m)).collect())
            .collect();
        // nodes are sorted by decreasing dimension, so closing from the bottom up suffices
        for i in (0..n).rev() {
            let direct: Vec<usize> = reach[i].iter().copied().collect();
            for j in direct {
                let below = reach[j].clone();
                reach[i].extend(below);
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for &j in &reach[i] {
                if !reach[i].iter().any(|&k| k != j && reach[k].contains(&j)) {
                    edges.push((i, j));
                }
            }
        }
        SymbolPoset { genus: g, marked: m, nodes, dims, reach, edges }
    }

    pub fn index(&self, s: &StratumSymbol) -> Option<usize> {
        self.nodes.iter().position(|x| x == s)
    }

    pub fn degenerates_to(&self, a: &StratumSymbol, b: &StratumSymbol) -> Result<bool> {
        let missing = |s: &StratumSymbol| {
            QdError::MismatchedType(format!("{s} is not a stratum with g = {}, m = {}", self.genus, self.marked))
        };
        let i = self.index(a).ok_or_else(|| missing(a))?;
        let j = self.index(b).ok_or_else(|| missing(b))?;
        Ok(self.reach[i].contains(&j))
    }

    /// Nodes that nothing degenerates to.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| !self.reach.iter().any(|r| r.contains(&j))).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph strata_g{}_m{} {{", self.genus, self.marked);
        let _ = writeln!(s, "  rankdir=TB;");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{node}\\ndim {}\"];", self.dims[i]);
        }
        for (i, j) in &self.edges {
            let _ = writeln!(s, "  n{i} -> n{j};");
        }
        s.push_str("}\n");
        s
    }
}

/// Collision-generated adjacency between two symbols with `m` marked points.
pub fn degenerates_to(a: &StratumSymbol, b: &StratumSymbol, m: usize) -> Result<bool> {
    let g = a.genus()?;
    if b.genus()? != g {
        return Err(QdError::MismatchedType(format!("{a} and {b} have different genus")));
    }
    SymbolPoset::new(g, m).degenerates_to(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(m_free: usize, n_poles: usize, zeros: &[(u32, usize)], epsilon: i8) -> StratumSymbol {
        StratumSymbol { m_free, n_poles, n_zeros: zeros.iter().copied().collect(), epsilon }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_symbols(0, 4), vec![sym(0, 4, &[], -1)]);
        assert_eq!(enumerate_symbols(1, 1), vec![sym(1, 0, &[], 1)]);
        assert!(enumerate_symbols(0, 3).is_empty());
        assert!(enumerate_symbols(0, 1).is_empty());
    }

    #[test]
    fn genus_two_unmarked() {
        let p = SymbolPoset::new(2, 0);
        let names: Vec<String> = p.nodes.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            names,
            ["(0, 0, {1:4}, -1)", "(0, 0, {1:2, 2:1}, -1)", "(0, 0, {2:2}, +1)", "(0, 0, {2:2}, -1)", "(0, 0, {4:1}, +1)"]
        );
        let principal = sym(0, 0, &[(1, 4)], -1);
        let square = sym(0, 0, &[(2, 2)], 1);
        assert!(p.degenerates_to(&principal, &square).unwrap());
        assert!(!p.degenerates_to(&sym(0, 0, &[(1, 2), (2, 1)], -1), &square).unwrap());
        assert!(p.degenerates_to(&square, &sym(0, 0, &[(4, 1)], 1)).unwrap());
        assert!(!p.degenerates_to(&square, &sym(0, 0, &[(2, 2)], -1)).unwrap());
        assert_eq!(p.maximal(), vec![0]);
    }

    #[test]
    fn free_marked_point_lands_on_a_zero() {
        let a = sym(1, 0, &[(1, 4)], -1);
        let b = sym(0, 0, &[(1, 4)], -1);
        assert!(degenerates_to(&a, &b, 1).unwrap());
        assert!(!degenerates_to(&b, &a, 1).unwrap());
        let c = sym(1, 0, &[(1, 2), (2, 1)], -1);
        assert!(degenerates_to(&a, &c, 1).unwrap());
    }

    #[test]
    fn mismatched_genus_is_an_error() {
        let a = sym(0, 4, &[], -1);
        let b = sym(1, 0, &[], 1);
        assert!(matches!(degenerates_to(&a, &b, 4), Err(QdError::MismatchedType(_))));
    }
}
