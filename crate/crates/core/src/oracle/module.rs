use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::oracle::fp::{self, Mat, Subspace};
use crate::rootsys::RootDatum;
use crate::weight::Weight;

/// Lie algebras the oracle can build explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Sl2,
    Sl3,
}

impl Algebra {
    pub fn for_datum(d: &RootDatum) -> Result<Self> {
        match d.label.as_str() {
            "A1" => Ok(Algebra::Sl2),
            "A2" => Ok(Algebra::Sl3),
            other => Err(Error::UnsupportedAlgebra(format!("no explicit model for type {other}"))),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Algebra::Sl2 => 1,
            Algebra::Sl3 => 2,
        }
    }

    /// Simple roots in fundamental-weight coordinates.
    pub fn simple_roots(self) -> Vec<Weight> {
        match self {
            Algebra::Sl2 => vec![Weight(vec![2])],
            Algebra::Sl3 => vec![Weight(vec![2, -1]), Weight(vec![-1, 2])],
        }
    }

    /// Positive roots in PBW order, as simple-root coefficient vectors.
    /// For `sl3` the order is `f₁, f₁₂, f₂` with `f₁₂ = f₂f₁ − f₁f₂`.
    fn pbw_roots(self) -> Vec<Vec<i64>> {
        match self {
            Algebra::Sl2 => vec![vec![1]],
            Algebra::Sl3 => vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        }
    }

    fn simple_position(self, i: usize) -> usize {
        match (self, i) {
            (Algebra::Sl2, _) => 0,
            (Algebra::Sl3, 0) => 0,
            (Algebra::Sl3, _) => 2,
        }
    }
}

/// A `Λ`-graded module over the restricted enveloping algebra, stored weight space by
/// weight space. `e[i][k]` maps the `k`-th weight space to the space of weight
/// `weights[k] + α_i` (zero when that weight is absent); `f` likewise lowers.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub algebra: Algebra,
    pub p: u32,
    pub weights: Vec<Weight>,
    pub dims: Vec<usize>,
    /// Basis labels per weight space.
    pub labels: Vec<Vec<String>>,
    pub e: Vec<Vec<Option<Mat>>>,
    pub f: Vec<Vec<Option<Mat>>>,
    /// PBW exponents of every basis vector, for baby Verma modules only.
    pub pbw: Vec<Vec<Vec<u32>>>,
    index: HashMap<Weight, usize>,
}

/// A graded subspace: one subspace of every weight space.
pub type GradedSubspace = Vec<Subspace>;

impl FpModule {
    fn assemble(
        algebra: Algebra,
        p: u32,
        weights: Vec<Weight>,
        labels: Vec<Vec<String>>,
        e: Vec<Vec<Option<Mat>>>,
        f: Vec<Vec<Option<Mat>>>,
    ) -> Self {
        let dims = labels.iter().map(Vec::len).collect();
        let index = weights.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        FpModule { algebra, p, weights, dims, labels, e, f, pbw: Vec::new(), index }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn weight_index(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub(crate) fn target(&self, k: usize, i: usize, raise: bool) -> Option<usize> {
        let a = &self.algebra.simple_roots()[i];
        let t = if raise { &self.weights[k] + a } else { &self.weights[k] - a };
        self.weight_index(&t)
    }

    /// Baby Verma module `Ẑ(μ) = u(g) ⊗_{u(b⁺)} μ` with basis the PBW monomials
    /// `f_{β₁}^{a₁}⋯f_{β_N}^{a_N}v₊`, `0 ≤ a < p`.
    #[allow(clippy::needless_range_loop)]
    pub fn baby_verma(algebra: Algebra, mu: &Weight, p: u32) -> Result<Self> {
        if mu.rank() != algebra.rank() {
            return Err(Error::UnsupportedAlgebra(format!("weight {mu} has the wrong rank")));
        }
        let roots = algebra.pbw_roots();
        let n = roots.len();
        let total = (p as usize).pow(n as u32);
        let exps: Vec<Vec<u32>> = (0..total)
            .map(|mut k| {
                let mut e = vec![0u32; n];
                for x in e.iter_mut() {
                    *x = (k % p as usize) as u32;
                    k /= p as usize;
                }
                e
            })
            .collect();
        let simple = algebra.simple_roots();
        let weight_of = |e: &[u32]| -> Weight {
            let mut w = mu.clone();
            for (a, root) in e.iter().zip(&roots) {
                for (j, &c) in root.iter().enumerate() {
                    w = &w - &simple[j].scale(c * i64::from(*a));
                }
            }
            w
        };
        let idx_of = |e: &[u32]| -> usize { e.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize) };
        let pm = i64::from(p);
        // left multiplication by f_β (β by PBW position) on a monomial
        let left_f = |pos: usize, e: &[u32]| -> Vec<(usize, i64)> {
            let mut out = Vec::new();
            let mut bump = |e2: Vec<u32>, c: i64| {
                if e2.iter().all(|&x| x < p) && c.rem_euclid(pm) != 0 {
                    out.push((idx_of(&e2), c));
                }
            };
            match (algebra, pos) {
                (Algebra::Sl2, _) | (Algebra::Sl3, 0 | 1) => {
                    let mut e2 = e.to_vec();
                    e2[pos] += 1;
                    bump(e2, 1);
                }
                (Algebra::Sl3, _) => {
                    // f₂f₁^a = f₁^a f₂ + a f₁^{a−1} f₁₂
                    let mut e2 = e.to_vec();
                    e2[2] += 1;
                    bump(e2, 1);
                    if e[0] > 0 {
                        let mut e3 = e.to_vec();
                        e3[0] -= 1;
                        e3[1] += 1;
                        bump(e3, i64::from(e[0]));
                    }
                }
            }
            out
        };
        let apply_f = |pos: usize, v: &HashMap<usize, i64>| -> HashMap<usize, i64> {
            let mut out: HashMap<usize, i64> = HashMap::new();
            for (&k, &c) in v {
                for (t, d) in left_f(pos, &exps[k]) {
                    *out.entry(t).or_default() += c * d;
                }
            }
            out.retain(|_, c| c.rem_euclid(pm) != 0);
            out
        };
        // e_i on monomials, by peeling the leftmost factor: e(Xm) = X(em) + [e,X]m
        let r = algebra.rank();
        let mut e_memo: Vec<Vec<Option<HashMap<usize, i64>>>> = vec![vec![None; total]; r];
        for i in 0..r {
            for k in 0..total {
                let e = &exps[k];
                let Some(first) = (0..n).find(|&j| e[j] > 0) else {
                    e_memo[i][k] = Some(HashMap::new());
                    continue;
                };
                let mut rest = e.clone();
                rest[first] -= 1;
                let rk = idx_of(&rest);
                let inner = e_memo[i][rk].clone().expect("shorter monomials come first");
                let mut out = apply_f(first, &inner);
                let single: HashMap<usize, i64> = HashMap::from([(rk, 1)]);
                let bracket: HashMap<usize, i64> = match (algebra, first, i) {
                    (Algebra::Sl2, _, _) => {
                        let h = weight_of(&rest)[0];
                        HashMap::from([(rk, h)])
                    }
                    (Algebra::Sl3, 0, 0) => HashMap::from([(rk, weight_of(&rest)[0])]),
                    (Algebra::Sl3, 2, 1) => HashMap::from([(rk, weight_of(&rest)[1])]),
                    // [e₁, f₁₂] = −f₂, [e₂, f₁₂] = f₁
                    (Algebra::Sl3, 1, 0) => apply_f(2, &single).into_iter().map(|(k, c)| (k, -c)).collect(),
                    (Algebra::Sl3, 1, 1) => apply_f(0, &single),
                    _ => HashMap::new(),
                };
                for (t, c) in bracket {
                    *out.entry(t).or_default() += c;
                }
                out.retain(|_, c| c.rem_euclid(pm) != 0);
                e_memo[i][k] = Some(out);
            }
        }
        // group by weight
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, e) in exps.iter().enumerate() {
            by_weight.entry(weight_of(e)).or_default().push(k);
        }
        let weights: Vec<Weight> = by_weight.keys().cloned().collect();
        let mut pos_in_space = vec![(0usize, 0usize); total];
        for (wi, ks) in by_weight.values().enumerate() {
            for (j, &k) in ks.iter().enumerate() {
                pos_in_space[k] = (wi, j);
            }
        }
        let label = |e: &[u32]| -> String {
            let names: &[&str] = match algebra {
                Algebra::Sl2 => &["f"],
                Algebra::Sl3 => &["f1", "f12", "f2"],
            };
            let parts: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(a, _)| **a > 0)
                .map(|(a, nm)| if *a == 1 { nm.to_string() } else { format!("{nm}^{a}") })
                .collect();
            if parts.is_empty() {
                "v+".to_string()
            } else {
                format!("{}v+", parts.join(" "))
            }
        };
        let labels: Vec<Vec<String>> =
            by_weight.values().map(|ks| ks.iter().map(|&k| label(&exps[k])).collect()).collect();
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        let windex: HashMap<Weight, usize> = weights.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut emats: Vec<Vec<Option<Mat>>> = vec![vec![None; weights.len()]; r];
        let mut fmats: Vec<Vec<Option<Mat>>> = vec![vec![None; weights.len()]; r];
        for i in 0..r {
            for (wi, ks) in by_weight.values().enumerate() {
                let up = windex.get(&(&weights[wi] + &simple[i])).copied();
                let down = windex.get(&(&weights[wi] - &simple[i])).copied();
                if let Some(t) = up {
                    let mut m = Mat::zero(dims[t], dims[wi]);
                    for (j, &k) in ks.iter().enumerate() {
                        for (&tk, &c) in e_memo[i][k].as_ref().expect("filled") {
                            let (tw, tj) = pos_in_space[tk];
                            debug_assert_eq!(tw, t);
                            m.set(tj, j, fp::reduce(c, p));
                        }
                    }
                    emats[i][wi] = Some(m);
                }
                if let Some(t) = down {
                    let mut m = Mat::zero(dims[t], dims[wi]);
                    let single_pos = algebra.simple_position(i);
                    for (j, &k) in ks.iter().enumerate() {
                        for (tk, c) in left_f(single_pos, &exps[k]) {
                            let (tw, tj) = pos_in_space[tk];
                            debug_assert_eq!(tw, t);
                            m.set(tj, j, fp::reduce(c, p));
                        }
                    }
                    fmats[i][wi] = Some(m);
                }
            }
        }
        let mut m = Self::assemble(algebra, p, weights, labels, emats, fmats);
        m.pbw = by_weight.values().map(|ks| ks.iter().map(|&k| exps[k].clone()).collect()).collect();
        Ok(m)
    }

    /// The contravariant dual `M^τ`: same weights, `e` and `f` exchanged and transposed.
    pub fn tau_dual(&self) -> Self {
        let r = self.rank();
        let mut e = vec![vec![None; self.weights.len()]; r];
        let mut f = vec![vec![None; self.weights.len()]; r];
        for i in 0..r {
            for k in 0..self.weights.len() {
                // new e on weight k comes from old f on weight k+α_i
                if let Some(t) = self.target(k, i, true) {
                    e[i][k] = self.f[i][t].as_ref().map(Mat::transpose);
                }
                if let Some(t) = self.target(k, i, false) {
                    f[i][k] = self.e[i][t].as_ref().map(Mat::transpose);
                }
            }
        }
        let labels = self.labels.iter().map(|ls| ls.iter().map(|l| format!("{l}*")).collect()).collect();
        Self::assemble(self.algebra, self.p, self.weights.clone(), labels, e, f)
    }

    pub fn zero_subspace(&self) -> GradedSubspace {
        self.dims.iter().map(|&n| Subspace::zero(n)).collect()
    }

    /// The submodule generated by graded vectors `(weight index, vector)`.
    pub fn generate(&self, gens: &[(usize, Vec<u32>)]) -> GradedSubspace {
        let mut sub = self.zero_subspace();
        let mut queue: VecDeque<(usize, Vec<u32>)> = VecDeque::new();
        for (k, v) in gens {
            if sub[*k].add_vector(v.clone(), self.p) {
                queue.push_back((*k, v.clone()));
            }
        }
        while let Some((k, v)) = queue.pop_front() {
            for i in 0..self.rank() {
                for (maps, raise) in [(&self.e, true), (&self.f, false)] {
                    if let (Some(m), Some(t)) = (&maps[i][k], self.target(k, i, raise)) {
                        let img = m.apply(&v, self.p);
                        if sub[t].add_vector(img.clone(), self.p) {
                            queue.push_back((t, img));
                        }
                    }
                }
            }
        }
        sub
    }

    /// Largest submodule contained in the graded subspace `s`.
    pub fn largest_submodule_in(&self, mut s: GradedSubspace) -> GradedSubspace {
        loop {
            let mut changed = false;
            for k in 0..self.weights.len() {
                for i in 0..self.rank() {
                    for (maps, raise) in [(&self.e, true), (&self.f, false)] {
                        if let (Some(m), Some(t)) = (&maps[i][k], self.target(k, i, raise)) {
                            let next = s[k].preimage_within(m, &s[t], self.p);
                            if next.dim() < s[k].dim() {
                                s[k] = next;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return s;
            }
        }
    }

    /// `M / S` with bases given by the free columns of each echelon form.
    pub fn quotient(&self, s: &GradedSubspace) -> Self {
        let keep: Vec<usize> = (0..self.weights.len()).filter(|&k| s[k].dim() < self.dims[k]).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &k)| (k, n)).collect();
        let weights: Vec<Weight> = keep.iter().map(|&k| self.weights[k].clone()).collect();
        let free: Vec<Vec<usize>> = keep.iter().map(|&k| s[k].free_columns()).collect();
        let labels: Vec<Vec<String>> = keep
            .iter()
            .zip(&free)
            .map(|(&k, cols)| cols.iter().map(|&c| self.labels[k][c].clone()).collect())
            .collect();
        let r = self.rank();
        let mut e = vec![vec![None; keep.len()]; r];
        let mut f = vec![vec![None; keep.len()]; r];
        for i in 0..r {
            for (nk, &k) in keep.iter().enumerate() {
                for (maps, out, raise) in [(&self.e, &mut e, true), (&self.f, &mut f, false)] {
                    let (Some(m), Some(t)) = (&maps[i][k], self.target(k, i, raise)) else {
                        continue;
                    };
                    let Some(&nt) = new_index.get(&t) else {
                        continue;
                    };
                    let cols: Vec<Vec<u32>> =
                        free[nk].iter().map(|&c| s[t].quotient_coords(&m.column(c), self.p)).collect();
                    out[i][nk] = Some(Mat::from_columns(free[nt].len(), &cols));
                }
            }
        }
        Self::assemble(self.algebra, self.p, weights, labels, e, f)
    }

    /// The submodule `s` as a module in its own right, in its echelon bases.
    pub fn submodule(&self, s: &GradedSubspace) -> Self {
        let keep: Vec<usize> = (0..self.weights.len()).filter(|&k| s[k].dim() > 0).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &k)| (k, n)).collect();
        let weights: Vec<Weight> = keep.iter().map(|&k| self.weights[k].clone()).collect();
        let labels = keep.iter().map(|&k| (0..s[k].dim()).map(|j| format!("b{j}")).collect()).collect();
        let r = self.rank();
        let mut e = vec![vec![None; keep.len()]; r];
        let mut f = vec![vec![None; keep.len()]; r];
        for i in 0..r {
            for (nk, &k) in keep.iter().enumerate() {
                for (maps, out, raise) in [(&self.e, &mut e, true), (&self.f, &mut f, false)] {
                    let (Some(m), Some(t)) = (&maps[i][k], self.target(k, i, raise)) else {
                        continue;
                    };
                    if !new_index.contains_key(&t) {
                        continue;
                    }
                    let cols: Vec<Vec<u32>> =
                        s[k].rows.iter().map(|b| coords_in(&s[t], &m.apply(b, self.p), self.p)).collect();
                    out[i][nk] = Some(Mat::from_columns(s[t].dim(), &cols));
                }
            }
        }
        Self::assemble(self.algebra, self.p, weights, labels, e, f)
    }

    /// Full matrix of `e_i` (raise) or `f_i` (lower) in the concatenated weight bases.
    pub fn full_matrix(&self, i: usize, raise: bool) -> Mat {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let n = self.dim();
        let mut out = Mat::zero(n, n);
        let maps = if raise { &self.e } else { &self.f };
        for k in 0..self.weights.len() {
            if let (Some(m), Some(t)) = (&maps[i][k], self.target(k, i, raise)) {
                for a in 0..m.rows {
                    for b in 0..m.cols {
                        out.set(offsets[t] + a, offsets[k] + b, m.get(a, b));
                    }
                }
            }
        }
        out
    }

    /// Diagonal matrix of `h_i`: `<ν, α_i^∨> mod p` on the weight space of `ν`.
    pub fn h_matrix(&self, i: usize) -> Mat {
        let n = self.dim();
        let mut out = Mat::zero(n, n);
        let mut o = 0;
        for (k, w) in self.weights.iter().enumerate() {
            for j in 0..self.dims[k] {
                out.set(o + j, o + j, fp::reduce(w[i], self.p));
            }
            o += self.dims[k];
        }
        out
    }

    /// Character as weight multiplicities.
    pub fn character(&self) -> BTreeMap<Weight, usize> {
        self.weights.iter().cloned().zip(self.dims.iter().copied()).filter(|(_, d)| *d > 0).collect()
    }
}

/// Coordinates of `v ∈ s` in the echelon basis of `s`.
fn coords_in(s: &Subspace, v: &[u32], p: u32) -> Vec<u32> {
    debug_assert!(s.contains(v, p));
    s.pivots.iter().map(|&c| v[c] % p).collect()
}
