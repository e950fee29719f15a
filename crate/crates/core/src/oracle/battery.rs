//! Runs every structural check on one instance and collects named results.

use serde::Serialize;

use super::closure::{check_subdigraph_theorem, lemma_fixed_walks};
use super::digraph::{Digraph, Matrix};
use super::moore::{verify_moore, MooreCheck};
use super::profile::{profile_in_neighborhood, Case};
use super::OracleError;

/// Both sides of `|R_{l,j}| = Tr(P^j A^l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RSetCount {
    /// Vertices `v` with at least one walk `r^j(v) -> v` of length `l`.
    pub vertices: u64,
    /// Such walks counted one by one, by search.
    pub walks: u64,
    /// `Tr(P^j A^l)`.
    pub trace: i64,
}

/// Counts `R_{l,j}` by explicit walk search and compares with the trace.
/// The trace counts walks, so it matches `walks` always and `vertices` only
/// when no vertex has two such walks.
pub fn r_set_size(g: &Digraph, check: &MooreCheck, a_pows: &[Matrix], ell: usize, j: u64) -> RSetCount {
    let mut vertices = 0;
    let mut walks = 0;
    for v in 0..g.n() {
        let start = check.repeat_pow(v, j);
        let mut here = 0;
        g.walks_from(start, ell, |w| {
            if w.len() == ell + 1 && w[ell] == v {
                here += 1;
            }
        });
        walks += here;
        vertices += u64::from(here > 0);
    }
    let pj: Vec<usize> = (0..g.n()).map(|v| check.repeat_pow(v, j)).collect();
    let trace = Matrix::permutation(&pj).mul(&a_pows[ell]).trace();
    RSetCount { vertices, walks, trace }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub n: usize,
    pub d: u64,
    pub k: u64,
    /// `(j, m_j)` for the repeat permutation, empty when verification failed.
    pub cycle_structure: Vec<(u64, u64)>,
    pub case_counts: Vec<(Case, usize)>,
    pub assertions: Vec<Assertion>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

pub const R_SET_MAX_ELL: usize = 4;

pub fn run_battery(g: &Digraph, d: u64, k: u64) -> BatteryReport {
    let mut rep = BatteryReport {
        n: g.n(),
        d,
        k,
        cycle_structure: Vec::new(),
        case_counts: Vec::new(),
        assertions: Vec::new(),
    };
    let push = |rep: &mut BatteryReport, name: &str, passed: bool, detail: String| {
        rep.assertions.push(Assertion {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    let check = match verify_moore(g, d, k) {
        Ok(c) => c,
        Err(e) => {
            let name = match e {
                OracleError::NotAutomorphism { .. } => "repeat is an automorphism",
                OracleError::TraceIdentity { .. } => "trace identities",
                _ => "almost Moore equation",
            };
            push(&mut rep, name, false, e.to_string());
            return rep;
        }
    };
    rep.cycle_structure = check.cycle_counts().into_iter().collect();
    push(
        &mut rep,
        "almost Moore equation",
        true,
        format!("residual is a permutation with {} self-repeats", check.self_repeats.len()),
    );
    push(&mut rep, "repeat is an automorphism", true, String::new());
    push(&mut rep, "trace identities", true, String::new());

    let lemma = lemma_fixed_walks(g, &check);
    push(
        &mut rep,
        "walks between fixed vertices are fixed by the square",
        lemma.is_none(),
        lemma.map_or_else(String::new, |(m, u, v, w)| format!("r^{m}: walk {u} -> {v} through {w}")),
    );

    let max_order = check.orders.iter().copied().max().unwrap_or(1).max(2);
    let mut sub_fail = Vec::new();
    let mut kinds = Vec::new();
    for alpha in 2..=max_order.max(g.n() as u64) {
        let s = check_subdigraph_theorem(g, &check, alpha);
        if !s.passed() {
            sub_fail.push(format!("alpha={alpha}: {}", s.failures.join("; ")));
        }
        kinds.push(format!("{alpha}:{}", s.vertices.len()));
    }
    push(
        &mut rep,
        "every H_alpha is closed, diregular, of Moore order and diameter k",
        sub_fail.is_empty(),
        if sub_fail.is_empty() { format!("sizes {}", kinds.join(" ")) } else { sub_fail.join(" | ") },
    );

    let dist = g.distance_matrix();
    let mut counts: Vec<(Case, usize)> = Vec::new();
    let mut prof_fail = Vec::new();
    for v in 0..g.n() {
        match profile_in_neighborhood(g, &check, &dist, v) {
            Ok(p) => match counts.iter_mut().find(|(c, _)| *c == p.case) {
                Some(e) => e.1 += 1,
                None => counts.push((p.case, 1)),
            },
            Err(e) => prof_fail.push(e.to_string()),
        }
    }
    counts.sort_by_key(|(c, _)| *c as u8);
    push(
        &mut rep,
        "every vertex falls in exactly one in-neighbourhood case",
        prof_fail.is_empty(),
        prof_fail.join(" | "),
    );
    rep.case_counts = counts;

    let a = g.adjacency();
    let mut a_pows = vec![Matrix::identity(g.n())];
    for l in 1..=R_SET_MAX_ELL {
        a_pows.push(a_pows[l - 1].mul(&a));
    }
    let mut r_fail = Vec::new();
    let mut strict = 0;
    let qualifies = check.cycle_counts().into_iter().all(|(j, m)| if j == 1 { m == k } else { j < d });
    for ell in 1..=R_SET_MAX_ELL {
        for j in 1..=g.n() as u64 {
            let c = r_set_size(g, &check, &a_pows, ell, j);
            if c.walks as i64 != c.trace || c.vertices > c.walks {
                r_fail.push(format!("l={ell} j={j}: {c:?}"));
            }
            if qualifies && (ell as u64) * (d - 1) < k + 1 && c.walks != 0 {
                r_fail.push(format!("l={ell} j={j}: nonempty below the bound"));
            }
            strict += u64::from(c.vertices < c.walks);
        }
    }
    push(
        &mut rep,
        "walk counts r^j(v) -> v equal Tr(P^j A^l)",
        r_fail.is_empty(),
        if r_fail.is_empty() {
            format!("{strict} cells where some vertex has several walks")
        } else {
            r_fail.join(" | ")
        },
    );
    rep
}
