//! Subdigraphs induced by the vertices whose repeat order divides
//! `2^t * alpha`, and the structural claims made about them.

use crate::algebra::arith::{lcm, odd_part};

use super::digraph::Digraph;
use super::moore::{moore_order, verify_moore, MooreCheck};

/// Ascending vertices `v` with `ord_r(v) | 2^t * alpha` for some `t >= 0`,
/// i.e. with the odd part of the order dividing `alpha`.
pub fn h_alpha_vertices(check: &MooreCheck, alpha: u64) -> Vec<usize> {
    assert!(alpha > 1);
    (0..check.perm.len())
        .filter(|&v| alpha.is_multiple_of(odd_part(check.orders[v])))
        .collect()
}

pub fn build_h_alpha(g: &Digraph, check: &MooreCheck, alpha: u64) -> (Vec<usize>, Digraph) {
    let vs = h_alpha_vertices(check, alpha);
    let h = g.induced(&vs);
    (vs, h)
}

/// A walk of length at most `k` between two distinct vertices of `h` that
/// leaves `h`: `(from, to, outside vertex)`; or a vertex whose repeat leaves
/// `h` as `(v, r(v), r(v))`.
pub fn closure_violation(g: &Digraph, h: &[usize], check: &MooreCheck, k: u64) -> Option<(usize, usize, usize)> {
    let mut inside = vec![false; g.n()];
    for &v in h {
        inside[v] = true;
    }
    for &v in h {
        let r = check.repeat(v);
        if !inside[r] {
            return Some((v, r, r));
        }
    }
    let mut bad = None;
    for &u in h {
        g.walks_from(u, k as usize, |walk| {
            let v = *walk.last().unwrap();
            if bad.is_none() && v != u && inside[v] {
                if let Some(&w) = walk.iter().find(|&&w| !inside[w]) {
                    bad = Some((u, v, w));
                }
            }
        });
        if bad.is_some() {
            return bad;
        }
    }
    None
}

/// Whether `h` is `(r, k)`-closed: every walk of length at most `k` between
/// two of its distinct vertices stays inside, and `r(h)` is inside.
pub fn check_rk_closed(g: &Digraph, h: &[usize], check: &MooreCheck, k: u64) -> bool {
    closure_violation(g, h, check, k).is_none()
}

/// For every power `phi = r^m` and distinct `phi`-fixed `u, v`, each walk of
/// length at most `k` from `u` to `v` is fixed vertex by vertex by `phi^2`.
/// Returns the first `(m, u, v, w)` where that fails.
pub fn lemma_fixed_walks(g: &Digraph, check: &MooreCheck) -> Option<(u64, usize, usize, usize)> {
    let period = check.orders.iter().fold(1, |a, &o| lcm(a, o));
    for m in 1..=period {
        let fixed: Vec<bool> = (0..g.n()).map(|v| check.repeat_pow(v, m) == v).collect();
        for u in (0..g.n()).filter(|&u| fixed[u]) {
            let mut bad = None;
            g.walks_from(u, check.k as usize, |walk| {
                let v = *walk.last().unwrap();
                if bad.is_none() && v != u && fixed[v] {
                    if let Some(&w) = walk.iter().find(|&&w| check.repeat_pow(w, 2 * m) != w) {
                        bad = Some((m, u, v, w));
                    }
                }
            });
            if bad.is_some() {
                return bad;
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdigraphKind {
    /// No vertex has a qualifying order (only possible without self-repeats).
    Empty,
    /// The directed `k`-cycle of self-repeats.
    SelfRepeatCycle,
    AlmostMoore { d_prime: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdigraphReport {
    pub alpha: u64,
    pub vertices: Vec<usize>,
    pub kind: Option<SubdigraphKind>,
    /// Empty when every assertion held.
    pub failures: Vec<String>,
}

impl SubdigraphReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `H_alpha` is either the self-repeat cycle or a `(d', k)`-digraph with
/// `d' <= d`: diregular, of order `d' + ... + d'^k`, diameter exactly `k`,
/// `(r, k)`-closed.
pub fn check_subdigraph_theorem(g: &Digraph, check: &MooreCheck, alpha: u64) -> SubdigraphReport {
    let (vs, h) = build_h_alpha(g, check, alpha);
    let mut rep = SubdigraphReport {
        alpha,
        vertices: vs.clone(),
        kind: None,
        failures: Vec::new(),
    };
    if vs.is_empty() {
        rep.kind = Some(SubdigraphKind::Empty);
        return rep;
    }
    let k = check.k;
    if let Some((u, v, w)) = closure_violation(g, &vs, check, k) {
        rep.failures.push(format!("not (r,k)-closed: walk {u} -> {v} leaves through {w}"));
    }
    let outdeg: Vec<usize> = (0..h.n()).map(|v| h.out(v).len()).collect();
    let indeg = h.in_degrees();
    let d_prime = outdeg[0] as u64;
    if outdeg.iter().chain(&indeg).any(|&x| x as u64 != d_prime) {
        rep.failures.push(format!("not diregular: out {outdeg:?}, in {indeg:?}"));
        return rep;
    }
    if d_prime > check.d {
        rep.failures.push(format!("degree {d_prime} exceeds {}", check.d));
    }
    match d_prime {
        0 => rep.failures.push("isolated vertices".into()),
        1 => {
            rep.kind = Some(SubdigraphKind::SelfRepeatCycle);
            if vs != check.self_repeats {
                rep.failures.push("1-regular but not the self-repeat set".into());
            }
            if h.n() as u64 != k || h.diameter().is_none() {
                rep.failures.push(format!("not a directed {k}-cycle"));
            }
        }
        dp => {
            rep.kind = Some(SubdigraphKind::AlmostMoore { d_prime: dp });
            if moore_order(dp, k) != Some(h.n() as u64) {
                rep.failures.push(format!("order {} is not {dp}+...+{dp}^{k}", h.n()));
            }
            if h.diameter() != Some(k as usize) {
                rep.failures.push(format!("diameter {:?}, expected {k}", h.diameter()));
            }
            if let Err(e) = verify_moore(&h, dp, k) {
                rep.failures.push(format!("not almost Moore: {e}"));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::digraph::gen_line_digraph_complete;
    use crate::oracle::instances::bundled_instances;

    #[test]
    fn identity_repeat_gives_whole_graph() {
        let g = gen_line_digraph_complete(3);
        let c = verify_moore(&g, 3, 2).unwrap();
        for alpha in 2..=7 {
            let (vs, h) = build_h_alpha(&g, &c, alpha);
            assert_eq!(vs.len(), g.n());
            assert_eq!(h, g);
            let rep = check_subdigraph_theorem(&g, &c, alpha);
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.kind, Some(SubdigraphKind::AlmostMoore { d_prime: 3 }));
        }
    }

    #[test]
    fn membership_matches_definition() {
        for inst in bundled_instances() {
            let c = verify_moore(&inst.graph, inst.d, inst.k).unwrap();
            for alpha in 2..=12u64 {
                let vs = h_alpha_vertices(&c, alpha);
                for v in 0..inst.graph.n() {
                    let def = (0..8).any(|t| ((1u64 << t) * alpha).is_multiple_of(c.orders[v]));
                    assert_eq!(vs.contains(&v), def);
                    assert_eq!(vs.contains(&v), vs.contains(&c.repeat(v)));
                }
                assert!(c.self_repeats.iter().all(|v| vs.contains(v)));
            }
        }
    }

    #[test]
    fn corrupted_subset_is_not_closed() {
        let g = gen_line_digraph_complete(2);
        let c = verify_moore(&g, 2, 2).unwrap();
        let all: Vec<usize> = (0..g.n()).collect();
        assert!(check_rk_closed(&g, &all, &c, 2));
        // 0 -> 3 -> 4 with 0 and 4 distinct; drop the interior vertex.
        assert!(g.has_arc(0, 3) && g.has_arc(3, 4));
        let cut: Vec<usize> = all.iter().copied().filter(|&v| v != 3).collect();
        assert!(!check_rk_closed(&g, &cut, &c, 2));
    }

    #[test]
    fn fixed_walk_lemma_on_instances() {
        for inst in bundled_instances() {
            let c = verify_moore(&inst.graph, inst.d, inst.k).unwrap();
            assert_eq!(lemma_fixed_walks(&inst.graph, &c), None);
        }
    }
}
