//! Finite-dimensional gl(n)-modules on explicit weight bases.
//!
//! A module stores the n^2 action matrices of the elementary matrices E_ij
//! together with the weight of each basis vector. Constructors cover the
//! one-dimensional twists V_a, exterior powers of the natural module, tensor
//! products, explicit matrix data, and simple highest-weight modules built by
//! lowering-operator closure inside a tensor power.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::matrix::{RatMatrix, RowSpace};
use crate::rational::{is_integer, rat_from_str, rat_to_string, to_i64, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct GlModule {
    pub n: usize,
    pub dim: usize,
    /// Action matrices, indexed by `i * n + j` for E_{i+1, j+1}.
    action: Vec<RatMatrix>,
    /// Weight of each basis vector: the E_kk eigenvalue tuple.
    pub weights: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub enum GlError {
    BracketFailure { i: usize, j: usize, k: usize, l: usize },
    NotDiagonal { k: usize },
    WeightMismatch { k: usize, basis: usize },
    NonDominant(String),
    BadSpec(String),
    TooLarge(String),
}

impl std::fmt::Display for GlError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlError::BracketFailure { i, j, k, l } => write!(
                f,
                "bracket identity fails at (E{}{}, E{}{})",
                i + 1,
                j + 1,
                k + 1,
                l + 1
            ),
            GlError::NotDiagonal { k } => write!(f, "E{}{} is not diagonal", k + 1, k + 1),
            GlError::WeightMismatch { k, basis } => write!(
                f,
                "diagonal of E{}{} disagrees with declared weight at basis vector {}",
                k + 1,
                k + 1,
                basis
            ),
            GlError::NonDominant(s) => write!(f, "weight is not dominant: {s}"),
            GlError::BadSpec(s) => write!(f, "bad module spec: {s}"),
            GlError::TooLarge(s) => write!(f, "construction too large: {s}"),
        }
    }
}

impl std::error::Error for GlError {}

impl GlModule {
    pub fn e(&self, i: usize, j: usize) -> &RatMatrix {
        &self.action[i * self.n + j]
    }

    /// The one-dimensional module of weight `a`: E_ij acts by `a * delta_ij`.
    pub fn one_dim(n: usize, a: Rat) -> Self {
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut m = RatMatrix::zero(1, 1);
                if i == j {
                    m[(0, 0)] = a.clone();
                }
                action.push(m);
            }
        }
        GlModule { n, dim: 1, action, weights: vec![vec![a; n]] }
    }

    /// The k-th exterior power of the natural module. Basis: increasing
    /// k-subsets in lexicographic order.
    pub fn exterior(n: usize, k: usize) -> Self {
        assert!(k <= n, "exterior degree out of range");
        let basis = subsets(n, k);
        let index: BTreeMap<Vec<usize>, usize> =
            basis.iter().cloned().enumerate().map(|(p, s)| (s, p)).collect();
        let dim = basis.len();
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut m = RatMatrix::zero(dim, dim);
                for (col, subset) in basis.iter().enumerate() {
                    if let Some((target, sign)) = wedge_substitute(subset, i, j) {
                        let row = index[&target];
                        m[(row, col)] = Rat::from_integer(sign.into());
                    }
                }
                action.push(m);
            }
        }
        let weights = basis
            .iter()
            .map(|s| {
                (0..n)
                    .map(|k| if s.contains(&k) { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        GlModule { n, dim, action, weights }
    }

    /// Tensor product with the Leibniz action and summed weights.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let dim = self.dim * other.dim;
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let a = self.e(i, j);
                let b = other.e(i, j);
                let mut m = RatMatrix::zero(dim, dim);
                for r1 in 0..self.dim {
                    for c1 in 0..self.dim {
                        if a[(r1, c1)].is_zero() {
                            continue;
                        }
                        for r2 in 0..other.dim {
                            // a (x) 1
                            m[(r1 * other.dim + r2, c1 * other.dim + r2)] =
                                &m[(r1 * other.dim + r2, c1 * other.dim + r2)] + &a[(r1, c1)];
                        }
                    }
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        if b[(r2, c2)].is_zero() {
                            continue;
                        }
                        for r1 in 0..self.dim {
                            // 1 (x) b
                            m[(r1 * other.dim + r2, r1 * other.dim + c2)] =
                                &m[(r1 * other.dim + r2, r1 * other.dim + c2)] + &b[(r2, c2)];
                        }
                    }
                }
                action.push(m);
            }
        }
        let mut weights = Vec::with_capacity(dim);
        for w1 in &self.weights {
            for w2 in &other.weights {
                weights.push(w1.iter().zip(w2).map(|(x, y)| x + y).collect());
            }
        }
        GlModule { n, dim, action, weights }
    }

    /// Builds a module from explicit matrices, validating the bracket
    /// identity before accepting.
    pub fn explicit(
        n: usize,
        matrices: Vec<RatMatrix>,
        weights: Vec<Vec<Rat>>,
    ) -> Result<Self, GlError> {
        assert_eq!(matrices.len(), n * n);
        let dim = matrices[0].rows;
        let m = GlModule { n, dim, action: matrices, weights };
        m.verify()?;
        Ok(m)
    }

    /// Simple highest-weight module L(lam) for dominant `lam`, built as the
    /// lowering-operator closure of the highest vector inside a tensor power
    /// of the natural module, then tensored with a one-dimensional twist.
    pub fn highest_weight(n: usize, lam: &[Rat]) -> Result<Self, GlError> {
        assert_eq!(lam.len(), n);
        for i in 0..n.saturating_sub(1) {
            let diff = &lam[i] - &lam[i + 1];
            if !is_integer(&diff) || diff < Rat::zero() {
                return Err(GlError::NonDominant(format!(
                    "lam{} - lam{} = {} is not a non-negative integer",
                    i + 1,
                    i + 2,
                    rat_to_string(&diff)
                )));
            }
        }
        let c = lam[n - 1].clone();
        let mu: Vec<i64> = lam
            .iter()
            .map(|x| to_i64(&(x - &c)).expect("integral differences"))
            .collect();
        let core = integral_highest_weight(n, &mu)?;
        if c.is_zero() {
            return Ok(core);
        }
        let twist = GlModule::one_dim(n, c);
        Ok(core.tensor(&twist))
    }

    /// Checks `[E_ij, E_kl] = d_jk E_il - d_li E_kj` exhaustively, plus
    /// diagonality of each E_kk against the declared weights.
    pub fn verify(&self) -> Result<(), GlError> {
        let n = self.n;
        for k in 0..n {
            let m = self.e(k, k);
            if !m.is_diagonal() {
                return Err(GlError::NotDiagonal { k });
            }
            for b in 0..self.dim {
                if m[(b, b)] != self.weights[b][k] {
                    return Err(GlError::WeightMismatch { k, basis: b });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = self.e(i, j).commutator(self.e(k, l));
                        let mut rhs = RatMatrix::zero(self.dim, self.dim);
                        if j == k {
                            rhs = rhs.add(self.e(i, l));
                        }
                        if l == i {
                            rhs = rhs.sub(self.e(k, j));
                        }
                        if lhs != rhs {
                            return Err(GlError::BracketFailure { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The gl(n) highest weight of the module when it is a simple
    /// constructor product: the maximum weight in lexicographic order.
    pub fn top_weight(&self) -> Vec<Rat> {
        self.weights
            .iter()
            .cloned()
            .max_by(|a, b| {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        std::cmp::Ordering::Equal => continue,
                        o => return o,
                    }
                }
                std::cmp::Ordering::Equal
            })
            .expect("nonempty basis")
    }
}

/// The full exterior algebra as one graded module: basis ordered by degree
/// then lexicographically. Returns the module together with the subset list
/// indexing its basis.
pub fn exterior_algebra(n: usize) -> (GlModule, Vec<Vec<usize>>) {
    let mut basis: Vec<Vec<usize>> = Vec::new();
    for k in 0..=n {
        basis.extend(subsets(n, k));
    }
    let index: BTreeMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(p, s)| (s, p)).collect();
    let dim = basis.len();
    let mut action = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = RatMatrix::zero(dim, dim);
            for (col, subset) in basis.iter().enumerate() {
                if let Some((target, sign)) = wedge_substitute(subset, i, j) {
                    let row = index[&target];
                    m[(row, col)] = Rat::from_integer(sign.into());
                }
            }
            action.push(m);
        }
    }
    let weights = basis
        .iter()
        .map(|s| {
            (0..n)
                .map(|k| if s.contains(&k) { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    (GlModule { n, dim, action, weights }, basis)
}

/// `e_i wedge e_L`: the sorted target subset and sign, or `None` on repeats.
pub fn wedge_insert(subset: &[usize], i: usize) -> Option<(Vec<usize>, i64)> {
    if subset.contains(&i) {
        return None;
    }
    let below = subset.iter().filter(|&&l| l < i).count();
    let mut target = subset.to_vec();
    target.push(i);
    target.sort_unstable();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    Some((target, sign))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// E_ij applied to the wedge monomial `e_L`; returns the target subset and
/// sign, or `None` when it annihilates.
fn wedge_substitute(subset: &[usize], i: usize, j: usize) -> Option<(Vec<usize>, i64)> {
    let pos = subset.iter().position(|&x| x == j)?;
    if i == j {
        return Some((subset.to_vec(), 1));
    }
    if subset.contains(&i) {
        return None;
    }
    let mut replaced: Vec<usize> = subset.to_vec();
    replaced[pos] = i;
    // sort back to increasing order, tracking the permutation sign
    let mut sign = 1i64;
    let mut arr = replaced;
    for a in 1..arr.len() {
        let mut b = a;
        while b > 0 && arr[b - 1] > arr[b] {
            arr.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    Some((arr, sign))
}

/// Sparse vector in the |mu|-fold tensor power of the natural module.
type TensorVec = BTreeMap<Vec<u8>, Rat>;

fn integral_highest_weight(n: usize, mu: &[i64]) -> Result<GlModule, GlError> {
    let degree: i64 = mu.iter().sum();
    if degree == 0 {
        return Ok(GlModule::one_dim(n, Rat::zero()));
    }
    let degree = degree as usize;
    if (n as f64).powi(degree as i32) > 2.0e5 {
        return Err(GlError::TooLarge(format!("tensor power n^{degree} with n={n}")));
    }

    // highest vector: one antisymmetrized column per Young-diagram column
    let mut v0: TensorVec = BTreeMap::new();
    v0.insert(Vec::new(), Rat::one());
    let num_cols = mu[0];
    for c in 1..=num_cols {
        let h = mu.iter().filter(|&&m| m >= c).count();
        let w = antisym_column(h);
        v0 = tensor_concat(&v0, &w);
    }

    // close under the lowering operators E_{i+1, i}
    let apply_e = |i: usize, j: usize, v: &TensorVec| -> TensorVec {
        let mut out: TensorVec = BTreeMap::new();
        for (tuple, c) in v {
            for p in 0..tuple.len() {
                if tuple[p] as usize == j {
                    let mut t2 = tuple.clone();
                    t2[p] = i as u8;
                    let entry = out.entry(t2).or_insert_with(Rat::zero);
                    *entry += c.clone();
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };

    let weight_of = |tuple: &[u8]| -> Vec<i64> {
        let mut w = vec![0i64; n];
        for &x in tuple {
            w[x as usize] += 1;
        }
        w
    };

    // coordinates per weight: all tuples of that content, lexicographic
    let mut coords: BTreeMap<Vec<i64>, Vec<Vec<u8>>> = BTreeMap::new();
    let mut coord_index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    {
        let mut all = vec![Vec::new()];
        for _ in 0..degree {
            let mut next = Vec::with_capacity(all.len() * n);
            for t in &all {
                for x in 0..n {
                    let mut t2: Vec<u8> = t.clone();
                    t2.push(x as u8);
                    next.push(t2);
                }
            }
            all = next;
        }
        for t in all {
            coords.entry(weight_of(&t)).or_default().push(t);
        }
        for tuples in coords.values() {
            for (p, t) in tuples.iter().enumerate() {
                coord_index.insert(t.clone(), p);
            }
        }
    }
    let to_coords = |v: &TensorVec| -> (Vec<i64>, Vec<Rat>) {
        let w = weight_of(v.keys().next().expect("nonzero"));
        let len = coords[&w].len();
        let mut out = vec![Rat::zero(); len];
        for (t, c) in v {
            out[coord_index[t]] = c.clone();
        }
        (w, out)
    };

    let mut spaces: BTreeMap<Vec<i64>, RowSpace> = BTreeMap::new();
    let mut basis: Vec<TensorVec> = Vec::new();
    let mut queue = vec![v0];
    while let Some(v) = queue.pop() {
        if v.is_empty() {
            continue;
        }
        let (w, x) = to_coords(&v);
        let space = spaces
            .entry(w.clone())
            .or_insert_with(|| RowSpace::new(coords[&w].len()));
        if !space.insert(&x) {
            continue;
        }
        basis.push(v.clone());
        for i in 0..n.saturating_sub(1) {
            queue.push(apply_e(i + 1, i, &v));
        }
    }

    // stable basis order: by weight (descending lex), then insertion order
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        let wa = weight_of(basis[a].keys().next().unwrap());
        let wb = weight_of(basis[b].keys().next().unwrap());
        wb.cmp(&wa).then(a.cmp(&b))
    });
    let basis: Vec<TensorVec> = order.into_iter().map(|i| basis[i].clone()).collect();
    let dim = basis.len();

    // per-weight matrix of basis columns, for coordinate solves
    let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (p, v) in basis.iter().enumerate() {
        by_weight
            .entry(weight_of(v.keys().next().unwrap()))
            .or_default()
            .push(p);
    }
    let column_matrix = |w: &Vec<i64>| -> (RatMatrix, Vec<usize>) {
        let members = by_weight[w].clone();
        let rows = coords[w].len();
        let mut m = RatMatrix::zero(rows, members.len());
        for (col, &b) in members.iter().enumerate() {
            let (_, x) = to_coords(&basis[b]);
            for (r, val) in x.into_iter().enumerate() {
                m[(r, col)] = val;
            }
        }
        (m, members)
    };

    let mut action = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = RatMatrix::zero(dim, dim);
            for (col, v) in basis.iter().enumerate() {
                let image = apply_e(i, j, v);
                if image.is_empty() {
                    continue;
                }
                let (w, x) = to_coords(&image);
                let (a, members) = column_matrix(&w);
                let sol = a
                    .solve(&x)
                    .expect("closure is invariant under the gl action");
                for (p, &b) in members.iter().enumerate() {
                    m[(b, col)] = sol[p].clone();
                }
            }
            action.push(m);
        }
    }

    let weights = basis
        .iter()
        .map(|v| {
            weight_of(v.keys().next().unwrap())
                .into_iter()
                .map(|x| Rat::from_integer(x.into()))
                .collect()
        })
        .collect();

    Ok(GlModule { n, dim, action, weights })
}

fn antisym_column(h: usize) -> TensorVec {
    let mut out: TensorVec = BTreeMap::new();
    let mut perm: Vec<u8> = (0..h as u8).collect();
    // iterate permutations via Heap's algorithm
    fn heaps(k: usize, perm: &mut Vec<u8>, sign: &mut i64, out: &mut TensorVec) {
        if k == 1 {
            out.insert(perm.clone(), Rat::from_integer((*sign).into()));
            return;
        }
        for i in 0..k {
            heaps(k - 1, perm, sign, out);
            if i < k - 1 {
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1i64;
    heaps(h, &mut perm, &mut sign, &mut out);
    out
}

fn tensor_concat(a: &TensorVec, b: &TensorVec) -> TensorVec {
    let mut out: TensorVec = BTreeMap::new();
    for (t1, c1) in a {
        for (t2, c2) in b {
            let mut t = t1.clone();
            t.extend_from_slice(t2);
            out.insert(t, c1 * c2);
        }
    }
    out
}

/// Weyl dimension formula for an integral dominant gl(n) weight; used as an
/// independent oracle on the highest-weight construction.
pub fn weyl_dimension(mu: &[i64]) -> Rat {
    let n = mu.len();
    let mut acc = Rat::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let num = mu[i] - mu[j] + (j as i64 - i as i64);
            let den = j as i64 - i as i64;
            acc = acc * Rat::from_integer(num.into()) / Rat::from_integer(den.into());
        }
    }
    acc
}

/// Parses module spec strings: `va:1/3`, `wedge:2`, `hw:2,0`,
/// `tensor(wedge:1,va:1/2)`.
pub fn parse_module_spec(spec: &str, n: usize) -> Result<GlModule, GlError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("tensor(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| GlError::BadSpec(format!("unbalanced parentheses in {spec:?}")))?;
        // split at the top-level comma
        let mut depth = 0usize;
        let mut split = None;
        for (p, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    split = Some(p);
                    break;
                }
                _ => {}
            }
        }
        let split = split.ok_or_else(|| GlError::BadSpec("tensor needs two factors".into()))?;
        let left = parse_module_spec(&inner[..split], n)?;
        let right = parse_module_spec(&inner[split + 1..], n)?;
        return Ok(left.tensor(&right));
    }
    if let Some(arg) = spec.strip_prefix("va:") {
        let a = rat_from_str(arg)
            .ok_or_else(|| GlError::BadSpec(format!("bad rational {arg:?}")))?;
        return Ok(GlModule::one_dim(n, a));
    }
    if let Some(arg) = spec.strip_prefix("wedge:") {
        let k: usize = arg
            .trim()
            .parse()
            .map_err(|_| GlError::BadSpec(format!("bad exterior degree {arg:?}")))?;
        if k > n {
            return Err(GlError::BadSpec(format!("wedge:{k} exceeds rank {n}")));
        }
        return Ok(GlModule::exterior(n, k));
    }
    if let Some(arg) = spec.strip_prefix("hw:") {
        let parts: Vec<&str> = arg.split(',').collect();
        if parts.len() != n {
            return Err(GlError::BadSpec(format!(
                "hw needs {n} components, got {}",
                parts.len()
            )));
        }
        let lam: Option<Vec<Rat>> = parts.iter().map(|p| rat_from_str(p)).collect();
        let lam = lam.ok_or_else(|| GlError::BadSpec(format!("bad rational in {arg:?}")))?;
        return GlModule::highest_weight(n, &lam);
    }
    Err(GlError::BadSpec(format!("unrecognized module spec {spec:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn one_dim_spec_example() {
        let m = GlModule::one_dim(2, rat(1, 3));
        assert_eq!(m.dim, 1);
        assert_eq!(m.e(0, 0)[(0, 0)], rat(1, 3));
        assert_eq!(m.e(1, 1)[(0, 0)], rat(1, 3));
        assert!(m.e(0, 1).is_zero());
        assert!(m.e(1, 0).is_zero());
        m.verify().unwrap();
    }

    #[test]
    fn natural_module_action() {
        let m = GlModule::exterior(2, 1);
        assert_eq!(m.dim, 2);
        // E12 e2 = e1
        assert_eq!(m.e(0, 1)[(0, 1)], rint(1));
        m.verify().unwrap();
    }

    #[test]
    fn top_exterior_power_is_determinant_twist() {
        let m = GlModule::exterior(2, 2);
        assert_eq!(m.dim, 1);
        assert_eq!(m.e(0, 0)[(0, 0)], rint(1));
        assert_eq!(m.e(1, 1)[(0, 0)], rint(1));
        m.verify().unwrap();
    }

    #[test]
    fn exterior_relations_exhaustive() {
        for n in 1..=4 {
            for k in 0..=n {
                GlModule::exterior(n, k).verify().unwrap();
            }
        }
    }

    #[test]
    fn corrupted_module_rejected_with_witness() {
        let good = GlModule::exterior(2, 1);
        let mut mats: Vec<RatMatrix> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| good.e(i, j).clone())
            .collect();
        mats[1][(1, 0)] = rint(7); // corrupt E12
        let err = GlModule::explicit(2, mats, good.weights.clone()).unwrap_err();
        assert!(matches!(err, GlError::BracketFailure { .. }));
    }

    #[test]
    fn highest_weight_natural() {
        for n in 2..=3usize {
            let mut lam = vec![rint(1)];
            lam.extend(vec![rint(0); n - 1]);
            let m = GlModule::highest_weight(n, &lam).unwrap();
            assert_eq!(m.dim, n);
            m.verify().unwrap();
            // matches exterior(1) entrywise
            let nat = GlModule::exterior(n, 1);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(m.e(i, j), nat.e(i, j), "n={n} E{}{}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn highest_weight_dimensions_match_weyl_formula() {
        let cases: Vec<(usize, Vec<i64>)> =
            vec![(2, vec![2, 0]), (2, vec![2, 1]), (3, vec![1, 1, 0]), (3, vec![2, 1, 0])];
        for (n, mu) in cases {
            let lam: Vec<Rat> = mu.iter().map(|&x| rint(x)).collect();
            let m = GlModule::highest_weight(n, &lam).unwrap();
            assert_eq!(rint(m.dim as i64), weyl_dimension(&mu), "dim L({mu:?})");
            m.verify().unwrap();
        }
    }

    #[test]
    fn hw_110_matches_exterior_2() {
        let m = GlModule::highest_weight(3, &[rint(1), rint(1), rint(0)]).unwrap();
        assert_eq!(m.dim, 3);
        let w = GlModule::exterior(3, 2);
        // same multiset of weights
        let mut a = m.weights.clone();
        let mut b = w.weights.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn tensor_weights_are_sums() {
        let a = GlModule::exterior(2, 1);
        let b = GlModule::one_dim(2, rat(1, 2));
        let t = a.tensor(&b);
        t.verify().unwrap();
        let mut expect: Vec<Vec<Rat>> = a
            .weights
            .iter()
            .map(|w| w.iter().map(|x| x + rat(1, 2)).collect())
            .collect();
        let mut got = t.weights.clone();
        expect.sort();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn non_dominant_rejected() {
        assert!(GlModule::highest_weight(2, &[rint(0), rint(1)]).is_err());
        assert!(GlModule::highest_weight(2, &[rat(1, 2), rint(0)]).is_err());
    }

    #[test]
    fn module_spec_parsing() {
        assert_eq!(parse_module_spec("va:1/3", 2).unwrap().dim, 1);
        assert_eq!(parse_module_spec("wedge:2", 3).unwrap().dim, 3);
        assert_eq!(parse_module_spec("hw:2,0", 2).unwrap().dim, 3);
        assert_eq!(parse_module_spec("tensor(wedge:1,va:1/2)", 2).unwrap().dim, 2);
        assert!(parse_module_spec("nope:1", 2).is_err());
    }
}
