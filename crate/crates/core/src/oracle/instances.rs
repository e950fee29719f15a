//! Known `(d, 2)` instances: generated line digraphs plus the `(2, 2)`
//! digraphs found by exhaustive search, shipped as data files.

use std::collections::BTreeSet;

use super::digraph::{gen_line_digraph_complete, parse_digraph, Digraph, Instance};
use super::moore::verify_moore;

/// Canonical `(2, 2)` representatives, one per isomorphism class.
pub const BUNDLED_D2K2: [&str; 3] = [
    include_str!("../../data/d2k2_a.txt"),
    include_str!("../../data/d2k2_b.txt"),
    include_str!("../../data/d2k2_c.txt"),
];

/// Row-major adjacency bits, minimized over all relabellings. Only meant
/// for the tiny orders searched here.
pub fn canonical_form(g: &Digraph) -> Vec<bool> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        // perm[new] = old
        let bits: Vec<bool> = (0..n * n).map(|x| g.has_arc(perm[x / n], perm[x % n])).collect();
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn from_canonical(bits: &[bool], n: usize) -> Digraph {
    Digraph::new((0..n).map(|u| (0..n).filter(|&v| bits[u * n + v]).collect()).collect()).expect("canonical form is simple")
}

/// Every labelled `(2, 2)`-digraph on six vertices, and the distinct
/// isomorphism classes among them in canonical form.
pub fn search_d2k2() -> (usize, Vec<Digraph>) {
    const N: usize = 6;
    let pairs: Vec<Vec<[usize; 2]>> = (0..N)
        .map(|v| {
            let others: Vec<usize> = (0..N).filter(|&w| w != v).collect();
            let mut ps = Vec::new();
            for a in 0..others.len() {
                for b in a + 1..others.len() {
                    ps.push([others[a], others[b]]);
                }
            }
            ps
        })
        .collect();
    let mut labelled = 0;
    let mut classes = BTreeSet::new();
    let mut choice = [0usize; N];
    let mut indeg = [0u8; N];
    fn rec(
        v: usize,
        pairs: &[Vec<[usize; 2]>],
        choice: &mut [usize; 6],
        indeg: &mut [u8; 6],
        found: &mut dyn FnMut(&[usize; 6]),
    ) {
        if v == 6 {
            found(choice);
            return;
        }
        for (i, p) in pairs[v].iter().enumerate() {
            if p.iter().any(|&w| indeg[w] == 2) {
                continue;
            }
            for &w in p {
                indeg[w] += 1;
            }
            choice[v] = i;
            rec(v + 1, pairs, choice, indeg, found);
            for &w in p {
                indeg[w] -= 1;
            }
        }
    }
    rec(0, &pairs, &mut choice, &mut indeg, &mut |c| {
        let g = Digraph::new((0..N).map(|v| pairs[v][c[v]].to_vec()).collect()).unwrap();
        if verify_moore(&g, 2, 2).is_ok() {
            labelled += 1;
            classes.insert(canonical_form(&g));
        }
    });
    (labelled, classes.iter().map(|b| from_canonical(b, N)).collect())
}

/// Line digraphs for `d` in `2..=5` followed by the bundled `(2, 2)` classes.
pub fn bundled_instances() -> Vec<Instance> {
    let mut out: Vec<Instance> = (2..=5)
        .map(|d| Instance {
            graph: gen_line_digraph_complete(d),
            d: d as u64,
            k: 2,
        })
        .collect();
    out.extend(BUNDLED_D2K2.iter().map(|s| parse_digraph(s).expect("bundled instance parses")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::digraph::serialize_digraph;

    #[test]
    fn search_matches_bundled_data() {
        let (labelled, classes) = search_d2k2();
        assert_eq!(labelled, 540);
        assert_eq!(classes.len(), 3);
        let shipped: Vec<Digraph> = BUNDLED_D2K2.iter().map(|s| parse_digraph(s).unwrap().graph).collect();
        assert_eq!(shipped, classes);
        for (s, g) in BUNDLED_D2K2.iter().zip(&classes) {
            let inst = Instance { graph: g.clone(), d: 2, k: 2 };
            assert_eq!(serialize_digraph(&inst).unwrap(), *s);
        }
    }

    #[test]
    fn bundled_cycle_types() {
        let mut types: Vec<Vec<(u64, u64)>> = BUNDLED_D2K2
            .iter()
            .map(|s| {
                let i = parse_digraph(s).unwrap();
                verify_moore(&i.graph, 2, 2).unwrap().cycle_counts().into_iter().collect()
            })
            .collect();
        types.sort();
        assert_eq!(types, vec![vec![(1, 6)], vec![(2, 1), (4, 1)], vec![(3, 2)]]);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = gen_line_digraph_complete(2);
        let relabel = [3, 0, 5, 1, 4, 2];
        let mut out = vec![Vec::new(); 6];
        for (u, v) in g.arcs() {
            out[relabel[u]].push(relabel[v]);
        }
        let h = Digraph::new(out).unwrap();
        assert_ne!(g, h);
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }
}
