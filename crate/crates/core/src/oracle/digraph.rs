use std::collections::VecDeque;
use std::fmt::Write as _;

use super::OracleError;

/// Loopless digraph on `0..n` with sorted, duplicate-free out-lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(mut out: Vec<Vec<usize>>) -> Result<Self, OracleError> {
        let n = out.len();
        for (v, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(OracleError::DuplicateArc { from: v, to: w[0] });
                }
            }
            if let Some(&bad) = list.iter().find(|&&w| w >= n) {
                return Err(OracleError::VertexOutOfRange { vertex: bad, n });
            }
            if list.binary_search(&v).is_ok() {
                return Err(OracleError::SelfLoop(v));
            }
        }
        Ok(Self { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    pub fn in_lists(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.n()];
        for (u, v) in self.arcs() {
            inn[v].push(u);
        }
        inn
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.in_lists().iter().map(Vec::len).collect()
    }

    pub fn adjacency(&self) -> Matrix {
        let mut a = Matrix::zero(self.n());
        for (u, v) in self.arcs() {
            a.0[u][v] = 1;
        }
        a
    }

    /// Breadth-first distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.out[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distances, `dist[u][v]`.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n()).map(|s| self.distances_from(s)).collect()
    }

    /// `None` when not strongly connected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Subdigraph induced on the ascending vertex list `keep`, relabelled
    /// `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let out = keep
            .iter()
            .map(|&v| {
                self.out[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Digraph { out }
    }

    /// Every walk from `s` of length `1..=max_len`, as vertex sequences.
    pub fn walks_from(&self, s: usize, max_len: usize, mut visit: impl FnMut(&[usize])) {
        let mut path = vec![s];
        self.walk_rec(&mut path, max_len, &mut visit);
    }

    fn walk_rec(&self, path: &mut Vec<usize>, max_len: usize, visit: &mut impl FnMut(&[usize])) {
        if path.len() > max_len {
            return;
        }
        let last = *path.last().unwrap();
        for &w in &self.out[last] {
            path.push(w);
            visit(path);
            self.walk_rec(path, max_len, visit);
            path.pop();
        }
    }
}

/// Dense square matrix over `i64`; entries stay tiny at the sizes used here
/// and every operation is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix(pub Vec<Vec<i64>>);

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix(vec![vec![0; n]; n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.0[i][i] = 1;
        }
        m
    }

    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zero(perm.len());
        for (i, &j) in perm.iter().enumerate() {
            m.0[i][j] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n();
        let mut out = Self::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.0[i][l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.0[i][j] = a
                        .checked_mul(other.0[l][j])
                        .and_then(|x| x.checked_add(out.0[i][j]))
                        .expect("matrix entry overflow");
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("overflow")).collect())
                .collect(),
        )
    }

    pub fn trace(&self) -> i64 {
        (0..self.n()).map(|i| self.0[i][i]).sum()
    }
}

/// A digraph together with the `(d, k)` it claims to be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Digraph,
    pub d: u64,
    pub k: u64,
}

/// Header `n d k`, then one line of ascending out-neighbours per vertex.
/// Blank lines and `#` comments are skipped.
pub fn parse_digraph(text: &str) -> Result<Instance, OracleError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(OracleError::Parse { line: 0, msg: "missing header".into() })?;
    let nums = |line: usize, s: &str| -> Result<Vec<u64>, OracleError> {
        s.split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| OracleError::Parse { line, msg: format!("{t:?}: {e}") }))
            .collect()
    };
    let h = nums(hl, header)?;
    let [n, d, k] = h[..] else {
        return Err(OracleError::Parse { line: hl, msg: "header must be `n d k`".into() });
    };
    let mut out = Vec::with_capacity(n as usize);
    for (line, l) in lines {
        if out.len() == n as usize {
            return Err(OracleError::Parse { line, msg: "more vertex lines than n".into() });
        }
        let list = nums(line, l)?;
        let ascending = list.windows(2).all(|w| w[0] < w[1]);
        if !ascending {
            return Err(OracleError::Parse { line, msg: "out-neighbours must be strictly ascending".into() });
        }
        out.push(list.into_iter().map(|x| x as usize).collect());
    }
    if out.len() != n as usize {
        return Err(OracleError::Parse {
            line: 0,
            msg: format!("expected {n} vertex lines, found {}", out.len()),
        });
    }
    Ok(Instance {
        graph: Digraph::new(out)?,
        d,
        k,
    })
}

/// Canonical text form; `parse_digraph` inverts it exactly. Vertices without
/// out-neighbours have no representation.
pub fn serialize_digraph(inst: &Instance) -> Result<String, OracleError> {
    let g = &inst.graph;
    let mut s = format!("{} {} {}\n", g.n(), inst.d, inst.k);
    for v in 0..g.n() {
        if g.out(v).is_empty() {
            return Err(OracleError::EmptyOutList(v));
        }
        let line: Vec<String> = g.out(v).iter().map(|w| w.to_string()).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    Ok(s)
}

/// Line digraph of the complete digraph on `d + 1` symbols: vertex `(a, b)`,
/// `a != b`, is numbered `a*d + b'` with `b' = b` if `b < a` else `b - 1`,
/// and `(a, b) -> (b, c)` for every `c != b`.
pub fn gen_line_digraph_complete(d: usize) -> Digraph {
    assert!(d >= 2, "degree must be at least 2");
    let id = |a: usize, b: usize| a * d + if b < a { b } else { b - 1 };
    let mut out = vec![Vec::new(); d * (d + 1)];
    for a in 0..=d {
        for b in (0..=d).filter(|&b| b != a) {
            out[id(a, b)] = (0..=d).filter(|&c| c != b).map(|c| id(b, c)).collect();
        }
    }
    Digraph::new(out).expect("line digraph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_digraph_shape() {
        for d in 2..=5 {
            let g = gen_line_digraph_complete(d);
            assert_eq!(g.n(), d * (d + 1));
            assert!((0..g.n()).all(|v| g.out(v).len() == d));
            assert!(g.in_degrees().iter().all(|&x| x == d));
            assert_eq!(g.diameter(), Some(2));
        }
        let g = gen_line_digraph_complete(2);
        // (0,1) = 0 -> (1,0) = 2, (1,2) = 3
        assert_eq!(g.out(0), &[2, 3]);
    }

    #[test]
    fn file_round_trip() {
        let text = "# comment\n3 1 3\n\n1\n2  # tail\n0\n";
        let inst = parse_digraph(text).unwrap();
        let canon = serialize_digraph(&inst).unwrap();
        assert_eq!(canon, "3 1 3\n1\n2\n0\n");
        assert_eq!(parse_digraph(&canon).unwrap(), inst);
        let g = Instance { graph: gen_line_digraph_complete(3), d: 3, k: 2 };
        let s = serialize_digraph(&g).unwrap();
        assert_eq!(serialize_digraph(&parse_digraph(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_digraph(""), Err(OracleError::Parse { .. })));
        assert!(matches!(parse_digraph("2 1 2\n1\n"), Err(OracleError::Parse { .. })));
        assert!(matches!(parse_digraph("2 1 2\n1\n0\n0\n"), Err(OracleError::Parse { .. })));
        assert!(matches!(parse_digraph("2 1 2\n1 0\n0\n"), Err(OracleError::Parse { .. })));
        assert_eq!(parse_digraph("2 1 2\n0\n0\n"), Err(OracleError::SelfLoop(0)));
        assert!(matches!(parse_digraph("2 1 2\n5\n0\n"), Err(OracleError::VertexOutOfRange { .. })));
    }

    #[test]
    fn walks_enumerate_all() {
        let g = gen_line_digraph_complete(2);
        let mut count = 0;
        g.walks_from(0, 3, |_| count += 1);
        assert_eq!(count, 2 + 4 + 8);
    }

    #[test]
    fn matrix_ops() {
        let a = gen_line_digraph_complete(2).adjacency();
        let a2 = a.mul(&a);
        assert_eq!(a2.0.iter().flatten().sum::<i64>(), 6 * 4);
        assert_eq!(Matrix::identity(6).mul(&a), a);
        assert_eq!(Matrix::permutation(&[1, 2, 0]).trace(), 0);
    }
}
