use super::digraph::{Digraph, Matrix};
use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreCheck {
    pub d: u64,
    pub k: u64,
    /// `perm[v] = r(v)`.
    pub perm: Vec<usize>,
    /// `orders[v]` is the length of the cycle of `r` through `v`.
    pub orders: Vec<u64>,
    pub self_repeats: Vec<usize>,
}

impl MooreCheck {
    pub fn repeat(&self, v: usize) -> usize {
        self.perm[v]
    }

    /// `r^j(v)`.
    pub fn repeat_pow(&self, v: usize, j: u64) -> usize {
        let mut w = v;
        for _ in 0..j % self.orders[v] {
            w = self.perm[w];
        }
        w
    }

    pub fn is_self_repeat(&self, v: usize) -> bool {
        self.perm[v] == v
    }

    /// `m_j`, the number of cycles of `r` of each length `j`.
    pub fn cycle_counts(&self) -> std::collections::BTreeMap<u64, u64> {
        let mut m = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *m.entry(o).or_insert(0) += 1;
        }
        for (j, c) in m.iter_mut() {
            *c /= j;
        }
        m
    }
}

pub fn moore_order(d: u64, k: u64) -> Option<u64> {
    let mut term = 1u64;
    let mut sum = 0u64;
    for _ in 0..k {
        term = term.checked_mul(d)?;
        sum = sum.checked_add(term)?;
    }
    Some(sum)
}

/// Checks `I + A + ... + A^k = J + P` exactly for a permutation matrix `P`,
/// then the consequences: `r` is an automorphism, `Tr(A^l) = 0` for `l < k`
/// and `Tr(A^k) = Tr(P)`.
pub fn verify_moore(g: &Digraph, d: u64, k: u64) -> Result<MooreCheck, OracleError> {
    if d < 2 || k < 2 {
        return Err(OracleError::InvalidDegree { d, k });
    }
    let n = g.n();
    let indeg = g.in_degrees();
    for (v, &deg) in indeg.iter().enumerate() {
        if g.out(v).len() as u64 != d || deg as u64 != d {
            return Err(OracleError::NotDiregular { vertex: v });
        }
    }
    let expected = moore_order(d, k).ok_or(OracleError::OrderMismatch { expected: u64::MAX, found: n as u64 })?;
    if expected != n as u64 {
        return Err(OracleError::OrderMismatch { expected, found: n as u64 });
    }

    let a = g.adjacency();
    let mut power = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    let mut traces = Vec::with_capacity(k as usize);
    for _ in 0..k {
        power = power.mul(&a);
        traces.push(power.trace());
        sum = sum.add(&power);
    }
    let mut perm = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    for (i, row) in sum.0.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            match x - 1 {
                0 => {}
                1 if perm[i] == usize::MAX && !hit[j] => {
                    perm[i] = j;
                    hit[j] = true;
                }
                _ => return Err(OracleError::NotAlmostMoore { row: i, col: j, entry: x }),
            }
        }
        if perm[i] == usize::MAX {
            return Err(OracleError::NotAlmostMoore { row: i, col: i, entry: row[i] });
        }
    }

    for (u, v) in g.arcs() {
        if !g.has_arc(perm[u], perm[v]) {
            return Err(OracleError::NotAutomorphism { from: u, to: v });
        }
    }
    let fixed = (0..n).filter(|&v| perm[v] == v).count() as i64;
    for (l, &t) in traces.iter().enumerate() {
        let want = if l + 1 == k as usize { fixed } else { 0 };
        if t != want {
            return Err(OracleError::TraceIdentity { ell: l as u64 + 1, trace: t, expected: want });
        }
    }

    let mut orders = vec![0u64; n];
    for v in 0..n {
        if orders[v] != 0 {
            continue;
        }
        let mut cycle = vec![v];
        let mut w = perm[v];
        while w != v {
            cycle.push(w);
            w = perm[w];
        }
        for &c in &cycle {
            orders[c] = cycle.len() as u64;
        }
    }
    Ok(MooreCheck {
        d,
        k,
        self_repeats: (0..n).filter(|&v| perm[v] == v).collect(),
        perm,
        orders,
    })
}
