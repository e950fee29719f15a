//! Local structure around a vertex: which out-branch each in-neighbour of
//! `v` is reached through.

use super::digraph::Digraph;
use super::moore::MooreCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Case {
    /// Every branch returns once and `v` is a self-repeat.
    #[serde(rename = "I_i")]
    OneSelfRepeat,
    /// Every branch returns once and `v` is not a self-repeat.
    #[serde(rename = "I_ii")]
    OneNoSelfRepeat,
    /// One branch returns twice; two other branches share their return vertex.
    #[serde(rename = "II_i")]
    TwoShared,
    /// One branch returns twice; another branch shares one of those vertices.
    #[serde(rename = "II_ii")]
    TwoCrossed,
}

/// In-neighbours of `v` lying in one branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Back {
    One(usize),
    Two(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InNeighborhoodProfile {
    pub v: usize,
    /// `v_1, ..., v_d`, ascending.
    pub out: Vec<usize>,
    /// `t_sets[j]`: vertices with a shortest walk from `v` through `v_j`.
    pub t_sets: Vec<Vec<usize>>,
    pub n_counts: Vec<usize>,
    pub back: Vec<Back>,
    pub case: Case,
    /// In-neighbours of `v_1` in each branch.
    pub w1_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vertex {v}, branch {j:?}: {what}")]
pub struct ProfileViolation {
    pub v: usize,
    pub j: Option<usize>,
    pub what: String,
}

pub fn profile_in_neighborhood(
    g: &Digraph,
    check: &MooreCheck,
    dist: &[Vec<Option<usize>>],
    v: usize,
) -> Result<InNeighborhoodProfile, ProfileViolation> {
    let fail = |j: Option<usize>, what: String| ProfileViolation { v, j, what };
    let k = check.k as usize;
    let out = g.out(v).to_vec();
    let d = out.len();
    let inn = g.in_lists();
    let dv = &dist[v];
    let t_sets: Vec<Vec<usize>> = out
        .iter()
        .map(|&vj| {
            (0..g.n())
                .filter(|&w| matches!((dv[w], dist[vj][w]), (Some(a), Some(b)) if a == b + 1))
                .collect()
        })
        .collect();

    let rv = check.repeat(v);
    let mut shared = 0;
    for a in 0..d {
        for b in a + 1..d {
            let common: Vec<usize> = t_sets[a].iter().copied().filter(|w| t_sets[b].contains(w)).collect();
            if !common.is_empty() {
                if common != [rv] {
                    return Err(fail(Some(a), format!("branches {a} and {b} share {common:?}")));
                }
                shared += 1;
            }
        }
    }
    if shared > 1 {
        return Err(fail(None, format!("{shared} overlapping branch pairs")));
    }

    let mut back = Vec::with_capacity(d);
    for (j, &vj) in out.iter().enumerate() {
        let zs: Vec<usize> = inn[v].iter().copied().filter(|z| t_sets[j].contains(z)).collect();
        let twice = check.repeat(vj) == v;
        match (zs.as_slice(), twice) {
            (&[z], false) => back.push(Back::One(z)),
            (&[z1, z2], true) => back.push(Back::Two(z1, z2)),
            _ => {
                return Err(fail(Some(j), format!("returns through {zs:?}, r(v_j) = v is {twice}")));
            }
        }
        let to_v = dist[vj][v].ok_or_else(|| fail(Some(j), "v unreachable".into()))?;
        let both_fixed = check.is_self_repeat(v) && check.is_self_repeat(vj);
        if !(to_v == k || (to_v + 1 == k && both_fixed)) {
            return Err(fail(Some(j), format!("distance back to v is {to_v}")));
        }
    }
    let n_counts: Vec<usize> = back.iter().map(|b| if matches!(b, Back::One(_)) { 1 } else { 2 }).collect();

    let ones: Vec<(usize, usize)> = back
        .iter()
        .enumerate()
        .filter_map(|(j, b)| if let Back::One(z) = b { Some((j, *z)) } else { None })
        .collect();
    let equal_pairs = (0..ones.len())
        .flat_map(|a| (a + 1..ones.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| ones[a].1 == ones[b].1)
        .count();
    let doubled: Vec<(usize, usize, usize)> = back
        .iter()
        .enumerate()
        .filter_map(|(j, b)| if let Back::Two(x, y) = b { Some((j, *x, *y)) } else { None })
        .collect();
    let case = match doubled.as_slice() {
        [] => {
            if equal_pairs != 0 {
                return Err(fail(None, "two branches return through the same vertex".into()));
            }
            if check.is_self_repeat(v) {
                Case::OneSelfRepeat
            } else {
                Case::OneNoSelfRepeat
            }
        }
        &[(_, x, y)] => {
            let crossed = ones.iter().filter(|(_, z)| *z == x || *z == y).count();
            match (equal_pairs, crossed) {
                (1, 0) => Case::TwoShared,
                (0, 1) => Case::TwoCrossed,
                _ => {
                    return Err(fail(None, format!("{equal_pairs} equal pairs, {crossed} crossings")));
                }
            }
        }
        _ => return Err(fail(None, "several branches return twice".into())),
    };

    let v1 = out[0];
    let w1_sets: Vec<Vec<usize>> = t_sets
        .iter()
        .map(|t| inn[v1].iter().copied().filter(|w| t.contains(w)).collect())
        .collect();
    for (j, w) in w1_sets.iter().enumerate().skip(1) {
        if w.len() > 2 {
            return Err(fail(Some(j), format!("|W_1| = {}", w.len())));
        }
        if w.len() == 2 && check.repeat(out[j]) != v1 {
            return Err(fail(Some(j), "|W_1| = 2 without v_1 = r(v_j)".into()));
        }
        if w.is_empty() && !(check.is_self_repeat(v) && check.is_self_repeat(out[j])) {
            return Err(fail(Some(j), "|W_1| = 0 away from self-repeats".into()));
        }
    }

    Ok(InNeighborhoodProfile {
        v,
        out,
        t_sets,
        n_counts,
        back,
        case,
        w1_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::digraph::gen_line_digraph_complete;
    use crate::oracle::instances::bundled_instances;
    use crate::oracle::moore::verify_moore;

    #[test]
    fn line_digraph_vertices_are_case_one_self_repeat() {
        let g = gen_line_digraph_complete(3);
        let c = verify_moore(&g, 3, 2).unwrap();
        let dist = g.distance_matrix();
        for v in 0..g.n() {
            let p = profile_in_neighborhood(&g, &c, &dist, v).unwrap();
            assert_eq!(p.case, Case::OneSelfRepeat);
            assert_eq!(p.n_counts, vec![1; 3]);
            // The branches partition everything except v itself.
            assert_eq!(p.t_sets.iter().map(Vec::len).sum::<usize>(), g.n() - 1);
        }
    }

    #[test]
    fn every_vertex_classifies() {
        let mut seen = std::collections::BTreeSet::new();
        for inst in bundled_instances() {
            let c = verify_moore(&inst.graph, inst.d, inst.k).unwrap();
            let dist = inst.graph.distance_matrix();
            for v in 0..inst.graph.n() {
                let p = profile_in_neighborhood(&inst.graph, &c, &dist, v).unwrap();
                seen.insert(format!("{:?}", p.case));
            }
        }
        assert!(seen.contains("OneSelfRepeat"));
        assert!(seen.len() >= 2, "{seen:?}");
    }
}
