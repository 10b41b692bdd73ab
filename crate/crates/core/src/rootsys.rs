//! Root data of rank at most three, their finite Weyl groups, and parabolic subdata.
//!
//! Weights are fundamental-weight coordinates throughout. A simple root `α_j` is
//! column `j` of the Cartan matrix `a_ij = <α_i^∨, α_j>`. Root-lattice vectors that
//! need exact integrality (translations of the affine Weyl group) are kept in
//! simple-root coordinates and converted with the adjugate of the Cartan matrix.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// The root system types this crate knows how to build.
pub const SUPPORTED_TYPES: [&str; 6] = ["A1", "A1xA1", "A2", "B2", "G2", "A3"];

/// A positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Simple-root coordinates.
    pub coeffs: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// The coroot in simple-coroot coordinates; `<λ, β^∨> = Σ coroot_i λ_i`.
    pub coroot: Vec<i64>,
    pub height: i64,
    /// Half the squared length, normalized so the shortest simple root of each component has 1.
    pub norm: i64,
}

/// An element of the finite Weyl group.
#[derive(Clone, Debug)]
pub struct WeylElt {
    /// Lexicographically smallest reduced word (0-based generator indices).
    pub word: Vec<usize>,
    /// Action on fundamental-weight coordinates, row major.
    pub matrix: Vec<i64>,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots ordered by height, then lexicographically.
    pub roots: Vec<Root>,
    /// `simple[i]` is the index in `roots` of `α_i`.
    pub simple: Vec<usize>,
    /// Connected components of the Dynkin diagram.
    pub components: Vec<Vec<usize>>,
    /// Index in `roots` of the highest short root of each component.
    pub highest_short: Vec<usize>,
    pub coxeter_number: i64,
    pub weyl: Vec<WeylElt>,
    pub w0: usize,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// `root_image[w][b] = (c, sign)` with `w(β_b) = sign * β_c`.
    root_image: Vec<Vec<(usize, i8)>>,
    by_matrix: HashMap<Vec<i64>, usize>,
    cartan_det: i64,
    cartan_adj: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Builds the datum for one of [`SUPPORTED_TYPES`].
    pub fn build(label: &str) -> Result<Self> {
        let cartan: Vec<Vec<i64>> = match label {
            "A1" => vec![vec![2]],
            "A1xA1" => vec![vec![2, 0], vec![0, 2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            // α_1 long, α_2 short.
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            // α_1 short, α_2 long.
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            other => return Err(Error::UnsupportedType(other.to_string())),
        };
        Ok(Self::from_cartan(label, cartan))
    }

    /// Builds a datum from an arbitrary finite-type Cartan matrix of small rank.
    pub fn from_cartan(label: &str, cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let components = dynkin_components(&cartan);
        let sym = symmetrizer(&cartan, &components);
        let roots = positive_roots(&cartan, &sym);
        let simple = (0..rank).map(|i| roots.iter().position(|r| r.height == 1 && r.coeffs[i] == 1).unwrap()).collect();

        let highest_short: Vec<usize> = components
            .iter()
            .map(|comp| {
                let in_comp = |r: &Root| r.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || comp.contains(&i));
                let min_norm = roots.iter().filter(|r| in_comp(r)).map(|r| r.norm).min().unwrap();
                let (idx, _) = roots
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| in_comp(r) && r.norm == min_norm)
                    .max_by_key(|(_, r)| r.height)
                    .unwrap();
                idx
            })
            .collect();
        let coxeter_number = highest_short.iter().map(|&b| roots[b].coroot.iter().sum::<i64>() + 1).max().unwrap_or(1);

        let (cartan_det, cartan_adj) = det_adj(&cartan);

        let mut datum = RootDatum {
            label: label.to_string(),
            rank,
            cartan,
            roots,
            simple,
            components,
            highest_short,
            coxeter_number,
            weyl: Vec::new(),
            w0: 0,
            mult: Vec::new(),
            inverse: Vec::new(),
            root_image: Vec::new(),
            by_matrix: HashMap::new(),
            cartan_det,
            cartan_adj,
        };
        datum.enumerate_weyl();
        datum
    }

    fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for k in 0..r {
            for j in 0..r {
                let delta = i64::from(k == j);
                let corr = if i == j { self.cartan[k][i] } else { 0 };
                m[k * r + j] = delta - corr;
            }
        }
        m
    }

    fn enumerate_weyl(&mut self) {
        let r = self.rank;
        let gens: Vec<Vec<i64>> = (0..r).map(|i| self.reflection_matrix(i)).collect();
        let mut ident = vec![0; r * r];
        for i in 0..r {
            ident[i * r + i] = 1;
        }
        let mut elts = vec![WeylElt { word: vec![], matrix: ident.clone(), length: 0 }];
        let mut by_matrix = HashMap::new();
        by_matrix.insert(ident, 0usize);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &x in &layer {
                for (i, g) in gens.iter().enumerate() {
                    let m = mat_mul(&elts[x].matrix, g, r);
                    if by_matrix.contains_key(&m) {
                        continue;
                    }
                    let mut word = elts[x].word.clone();
                    word.push(i);
                    by_matrix.insert(m.clone(), elts.len());
                    next.push(elts.len());
                    elts.push(WeylElt { length: word.len(), word, matrix: m });
                }
            }
            layer = next;
        }
        let n = elts.len();
        let mut mult = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mult[a][b] = by_matrix[&mat_mul(&elts[a].matrix, &elts[b].matrix, r)];
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| mult[a][b] == 0).unwrap()).collect();
        let root_index: HashMap<Weight, usize> =
            self.roots.iter().enumerate().map(|(i, b)| (b.weight.clone(), i)).collect();
        let root_image = elts
            .iter()
            .map(|e| {
                self.roots
                    .iter()
                    .map(|b| {
                        let img = Weight(mat_vec(&e.matrix, &b.weight.0, r));
                        match root_index.get(&img) {
                            Some(&c) => (c, 1),
                            None => (root_index[&-img], -1),
                        }
                    })
                    .collect()
            })
            .collect();
        self.w0 = (0..n).max_by_key(|&i| elts[i].length).unwrap_or(0);
        self.weyl = elts;
        self.mult = mult;
        self.inverse = inverse;
        self.root_image = root_image;
        self.by_matrix = by_matrix;
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn length(&self, w: usize) -> usize {
        self.weyl[w].length
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.element_of_word(&[i])
    }

    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| {
            let s = self.by_matrix[&self.reflection_matrix(i)];
            self.mult[acc][s]
        })
    }

    pub fn element_of_matrix(&self, m: &[i64]) -> Option<usize> {
        self.by_matrix.get(m).copied()
    }

    /// The reflection `s_β` for the positive root with index `b`.
    pub fn root_reflection(&self, b: usize) -> usize {
        let r = self.rank;
        let root = &self.roots[b];
        let mut m = vec![0; r * r];
        for k in 0..r {
            for j in 0..r {
                m[k * r + j] = i64::from(k == j) - root.weight[k] * root.coroot[j];
            }
        }
        self.by_matrix[&m]
    }

    /// `w(β_b)` as `(index, sign)`.
    pub fn root_image(&self, w: usize, b: usize) -> (usize, i8) {
        self.root_image[w][b]
    }

    /// Pairing `<λ, β_b^∨>`.
    pub fn pair(&self, lambda: &[i64], b: usize) -> i64 {
        self.roots[b].coroot.iter().zip(lambda).map(|(c, x)| c * x).sum()
    }

    /// Pairing of a root-lattice vector (simple-root coordinates) with `β_b^∨`.
    pub fn pair_root(&self, nu: &[i64], b: usize) -> i64 {
        let mut s = 0;
        for (j, &n) in nu.iter().enumerate() {
            if n != 0 {
                s += n * self.pair(&self.roots[self.simple[j]].weight.0, b);
            }
        }
        s
    }

    pub fn act(&self, w: usize, lambda: &Weight) -> Weight {
        Weight(mat_vec(&self.weyl[w].matrix, &lambda.0, self.rank))
    }

    /// `w` acting on a root-lattice vector in simple-root coordinates.
    pub fn act_root(&self, w: usize, nu: &[i64]) -> Vec<i64> {
        let wt = self.act(w, &self.root_to_weight(nu));
        self.weight_to_root(&wt).expect("Weyl group preserves the root lattice")
    }

    pub fn root_to_weight(&self, nu: &[i64]) -> Weight {
        let r = self.rank;
        Weight((0..r).map(|k| (0..r).map(|j| self.cartan[k][j] * nu[j]).sum()).collect())
    }

    /// Simple-root coordinates of a weight, if it lies in the root lattice.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let r = self.rank;
        let mut out = Vec::with_capacity(r);
        for j in 0..r {
            let num: i64 = (0..r).map(|k| self.cartan_adj[j][k] * lambda[k]).sum();
            if num % self.cartan_det != 0 {
                return None;
            }
            out.push(num / self.cartan_det);
        }
        Some(out)
    }

    /// Simple-root coordinates of a weight as exact rationals `(numerators, denominator)`.
    pub fn weight_to_root_rational(&self, lambda: &Weight) -> (Vec<i64>, i64) {
        let r = self.rank;
        let nums = (0..r).map(|j| (0..r).map(|k| self.cartan_adj[j][k] * lambda[k]).sum()).collect();
        (nums, self.cartan_det)
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.rank)
    }

    /// `2ρ` in simple-root coordinates.
    pub fn two_rho_root(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for b in &self.roots {
            for (x, c) in v.iter_mut().zip(&b.coeffs) {
                *x += c;
            }
        }
        v
    }

    /// Dot action of a finite Weyl element: `w(λ+ρ) - ρ`.
    pub fn dot(&self, w: usize, lambda: &Weight) -> Weight {
        let rho = self.rho();
        &self.act(w, &(lambda + &rho)) - &rho
    }

    /// Sub-root-system spanned by the simple roots in `idx` (order preserved).
    pub fn sub_datum(&self, idx: &[usize]) -> RootDatum {
        let cartan: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let label = classify(&cartan);
        RootDatum::from_cartan(&label, cartan)
    }

    pub fn check_index_set(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&i| i >= self.rank) {
            Some(&index) => Err(Error::IndexOutOfRange { index, rank: self.rank }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {} (rank {})", self.label, self.rank)?;
        writeln!(f, "cartan {:?}", self.cartan)?;
        writeln!(f, "|R+| = {}, |W| = {}, h = {}", self.roots.len(), self.weyl.len(), self.coxeter_number)?;
        for (i, b) in self.roots.iter().enumerate() {
            writeln!(f, "  beta{} = {:?}  weight {}  coroot {:?}", i, b.coeffs, b.weight, b.coroot)?;
        }
        let w0: Vec<String> = self.weyl[self.w0].word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "w0 = {} (length {})", w0.join(""), self.weyl[self.w0].length)
    }
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut c = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik != 0 {
                for j in 0..r {
                    c[i * r + j] += aik * b[k * r + j];
                }
            }
        }
    }
    c
}

fn mat_vec(a: &[i64], v: &[i64], r: usize) -> Vec<i64> {
    (0..r).map(|i| (0..r).map(|j| a[i * r + j] * v[j]).sum()).collect()
}

fn dynkin_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = cartan.len();
    let mut seen = vec![false; r];
    let mut comps = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..r {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// `d_i` with `d_i a_ij = d_j a_ji`, smallest positive per component.
fn symmetrizer(cartan: &[Vec<i64>], comps: &[Vec<usize>]) -> Vec<i64> {
    let r = cartan.len();
    let mut d = vec![0i64; r];
    for comp in comps {
        // rationals as (num, den) propagated along a spanning tree
        let mut num = vec![0i64; r];
        let mut den = vec![1i64; r];
        num[comp[0]] = 1;
        let mut stack = vec![comp[0]];
        let mut done = vec![false; r];
        done[comp[0]] = true;
        while let Some(i) = stack.pop() {
            for &j in comp {
                if !done[j] && cartan[i][j] != 0 {
                    // d_j = d_i a_ij / a_ji
                    num[j] = num[i] * cartan[i][j];
                    den[j] = den[i] * cartan[j][i];
                    done[j] = true;
                    stack.push(j);
                }
            }
        }
        let l: i64 = comp.iter().fold(1, |acc, &i| lcm(acc, den[i].abs()));
        let vals: Vec<i64> = comp.iter().map(|&i| num[i] * (l / den[i])).collect();
        let g = vals.iter().fold(0, |acc, &x| gcd(acc, x.abs()));
        for (k, &i) in comp.iter().enumerate() {
            d[i] = vals[k] / g;
        }
    }
    d
}

fn positive_roots(cartan: &[Vec<i64>], sym: &[i64]) -> Vec<Root> {
    let r = cartan.len();
    // reflect until closed; roots in simple-root coordinates
    let mut found: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut idx = 0;
    while idx < found.len() {
        let beta = found[idx].clone();
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && !found.contains(&img) {
                found.push(img);
            }
        }
        idx += 1;
    }
    let mut roots: Vec<Root> = found
        .into_iter()
        .map(|coeffs| {
            let weight = Weight((0..r).map(|k| (0..r).map(|j| cartan[k][j] * coeffs[j]).sum()).collect());
            // (β,β)/2 with (α_i, α_j) = d_i a_ij
            let mut two_norm = 0;
            for i in 0..r {
                for j in 0..r {
                    two_norm += coeffs[i] * coeffs[j] * sym[i] * cartan[i][j];
                }
            }
            let norm = two_norm / 2;
            let coroot = coeffs.iter().zip(sym).map(|(c, d)| c * d / norm).collect();
            Root { height: coeffs.iter().sum(), coeffs, weight, coroot, norm }
        })
        .collect();
    roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.coeffs.cmp(&a.coeffs)));
    roots
}

#[allow(clippy::needless_range_loop)]
fn det_adj(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let r = m.len();
    if r == 0 {
        return (1, vec![]);
    }
    let d = det(m);
    let mut adj = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            let minor: Vec<Vec<i64>> =
                (0..r).filter(|&a| a != j).map(|a| (0..r).filter(|&b| b != i).map(|b| m[a][b]).collect()).collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * det(&minor);
        }
    }
    (d, adj)
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Names a Cartan matrix of rank at most three.
pub fn classify(cartan: &[Vec<i64>]) -> String {
    let comps = dynkin_components(cartan);
    if comps.is_empty() {
        return "T".to_string();
    }
    let names: Vec<String> = comps
        .iter()
        .map(|c| match c.len() {
            1 => "A1".to_string(),
            2 => match cartan[c[0]][c[1]] * cartan[c[1]][c[0]] {
                1 => "A2".to_string(),
                2 => "B2".to_string(),
                3 => "G2".to_string(),
                _ => "X2".to_string(),
            },
            3 => {
                let simply_laced = c.iter().all(|&i| c.iter().all(|&j| i == j || cartan[i][j] >= -1));
                if simply_laced { "A3" } else { "X3" }.to_string()
            }
            n => format!("X{n}"),
        })
        .collect();
    names.join("x")
}

/// Parabolic subdatum attached to a subset `I` of the simple roots.
#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    /// Sorted 0-based indices of the simple roots in `I`.
    pub subset: Vec<usize>,
    /// Indices (into the ambient `roots`) of `R_I^+`.
    pub levi_roots: Vec<usize>,
    /// Elements of `W_I` (indices into the ambient Weyl group).
    pub levi_weyl: Vec<usize>,
    pub w_i: usize,
    /// `w^I = w_0 w_I`.
    pub w_upper: usize,
    /// Minimal length coset representatives of `W / W_I`.
    pub min_coset_reps: Vec<usize>,
    pub two_rho_i: Weight,
    pub two_rho_p: Weight,
}

impl ParabolicDatum {
    /// Builds the subdatum and verifies `2ρ_P = w_I ρ + ρ` together with the range
    /// condition `<2ρ_P, α^∨> ∈ [2, h]` for simple `α ∉ I`.
    pub fn new(datum: &RootDatum, subset: &[usize]) -> Result<Self> {
        datum.check_index_set(subset)?;
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let in_levi = |coeffs: &[i64]| coeffs.iter().enumerate().all(|(i, &c)| c == 0 || subset.contains(&i));
        let levi_roots: Vec<usize> = (0..datum.roots.len()).filter(|&b| in_levi(&datum.roots[b].coeffs)).collect();
        let levi_weyl: Vec<usize> =
            (0..datum.weyl.len()).filter(|&w| datum.weyl[w].word.iter().all(|i| subset.contains(i))).collect();
        let w_i = *levi_weyl.iter().max_by_key(|&&w| datum.length(w)).unwrap();
        let w_upper = datum.mul(datum.w0, w_i);
        let min_coset_reps = (0..datum.weyl.len())
            .filter(|&w| levi_weyl.iter().all(|&u| datum.length(datum.mul(w, u)) == datum.length(w) + datum.length(u)))
            .collect();

        let mut two_rho_i = Weight::zero(datum.rank);
        let mut two_rho_p = Weight::zero(datum.rank);
        for (b, root) in datum.roots.iter().enumerate() {
            if levi_roots.contains(&b) {
                two_rho_i = &two_rho_i + &root.weight;
            } else {
                two_rho_p = &two_rho_p + &root.weight;
            }
        }

        let rho = datum.rho();
        let lemma = &datum.act(w_i, &rho) + &rho;
        if lemma != two_rho_p {
            return Err(Error::InternalInconsistency(format!("2rho_P = {two_rho_p} but w_I rho + rho = {lemma}")));
        }
        // w_0 (w^I . 0) agrees as well
        let via_wupper = datum.act(datum.w0, &datum.dot(w_upper, &Weight::zero(datum.rank)));
        if via_wupper != two_rho_p {
            return Err(Error::InternalInconsistency(format!(
                "w_0(w^I . 0) = {via_wupper} differs from 2rho_P = {two_rho_p}"
            )));
        }
        for i in 0..datum.rank {
            let v = two_rho_p[i];
            let ok = if subset.contains(&i) { v == 0 } else { (2..=datum.coxeter_number).contains(&v) };
            if !ok {
                return Err(Error::InternalInconsistency(format!(
                    "<2rho_P, alpha_{}^v> = {v} violates the range condition",
                    i + 1
                )));
            }
        }
        Ok(ParabolicDatum { subset, levi_roots, levi_weyl, w_i, w_upper, min_coset_reps, two_rho_i, two_rho_p })
    }

    /// `ℓ(w^I)`.
    pub fn upper_length(&self, datum: &RootDatum) -> usize {
        datum.length(self.w_upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_constants() {
        let expect =
            [("A1", 1, 2, 2), ("A1xA1", 2, 4, 2), ("A2", 3, 6, 3), ("B2", 4, 8, 4), ("G2", 6, 12, 6), ("A3", 6, 24, 4)];
        for (label, npos, order, h) in expect {
            let d = RootDatum::build(label).unwrap();
            assert_eq!(d.num_positive_roots(), npos, "{label}");
            assert_eq!(d.weyl_order(), order, "{label}");
            assert_eq!(d.coxeter_number, h, "{label}");
            assert_eq!(d.length(d.w0), npos, "{label}");
        }
    }

    #[test]
    fn unsupported_label() {
        assert!(matches!(RootDatum::build("E8"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn a1_longest_element_is_simple_reflection() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(d.w0, d.simple_reflection(0));
        assert_eq!(d.weyl[d.w0].word, vec![0]);
    }

    #[test]
    fn lengths_count_inversions() {
        for label in SUPPORTED_TYPES {
            let d = RootDatum::build(label).unwrap();
            for w in 0..d.weyl_order() {
                let inversions = (0..d.roots.len()).filter(|&b| d.root_image(w, b).1 < 0).count();
                assert_eq!(d.length(w), inversions);
            }
        }
    }

    #[test]
    fn rho_identities() {
        for label in SUPPORTED_TYPES {
            let d = RootDatum::build(label).unwrap();
            let sum = d.roots.iter().fold(Weight::zero(d.rank), |acc, b| &acc + &b.weight);
            assert_eq!(sum, d.rho().scale(2));
            for i in 0..d.rank {
                assert_eq!(d.pair(&d.rho().0, d.simple[i]), 1);
            }
            for &a0 in &d.highest_short {
                assert!(d.pair(&d.rho().0, a0) < d.coxeter_number);
            }
        }
    }

    #[test]
    fn lexicographic_words_are_minimal() {
        let d = RootDatum::build("A2").unwrap();
        let words: Vec<&Vec<usize>> = d.weyl.iter().map(|w| &w.word).collect();
        assert!(words.contains(&&vec![0, 1, 0]));
        assert!(!words.contains(&&vec![1, 0, 1]));
    }

    #[test]
    fn parabolic_a2_i1() {
        let d = RootDatum::build("A2").unwrap();
        let p = ParabolicDatum::new(&d, &[0]).unwrap();
        assert_eq!(p.w_i, d.simple_reflection(0));
        assert_eq!(p.upper_length(&d), 2);
        assert_eq!(p.two_rho_p, Weight(vec![0, 3]));
        let mut reps: Vec<Vec<usize>> = p.min_coset_reps.iter().map(|&w| d.weyl[w].word.clone()).collect();
        reps.sort();
        assert_eq!(reps, vec![vec![], vec![0, 1], vec![1]]);
    }

    #[test]
    fn parabolic_extremes() {
        for label in SUPPORTED_TYPES {
            let d = RootDatum::build(label).unwrap();
            let empty = ParabolicDatum::new(&d, &[]).unwrap();
            assert_eq!(empty.w_upper, d.w0);
            assert_eq!(empty.two_rho_p, d.rho().scale(2));
            assert_eq!(empty.min_coset_reps.len(), d.weyl_order());
            let all: Vec<usize> = (0..d.rank).collect();
            let full = ParabolicDatum::new(&d, &all).unwrap();
            assert_eq!(full.w_upper, 0);
            assert_eq!(full.two_rho_p, Weight::zero(d.rank));
            assert_eq!(full.min_coset_reps, vec![0]);
        }
    }

    #[test]
    fn lemma_and_coset_counts_exhaustive() {
        for label in SUPPORTED_TYPES {
            let d = RootDatum::build(label).unwrap();
            for mask in 0..(1usize << d.rank) {
                let subset: Vec<usize> = (0..d.rank).filter(|i| mask >> i & 1 == 1).collect();
                let p = ParabolicDatum::new(&d, &subset).unwrap();
                assert_eq!(p.min_coset_reps.len() * p.levi_weyl.len(), d.weyl_order());
                assert_eq!(p.upper_length(&d), d.length(d.w0) - d.length(p.w_i));
            }
        }
    }

    #[test]
    fn index_out_of_range() {
        let d = RootDatum::build("A2").unwrap();
        assert!(matches!(ParabolicDatum::new(&d, &[2]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn root_lattice_conversion() {
        let d = RootDatum::build("G2").unwrap();
        for b in &d.roots {
            assert_eq!(d.weight_to_root(&b.weight).unwrap(), b.coeffs);
        }
        let a2 = RootDatum::build("A2").unwrap();
        assert!(a2.weight_to_root(&Weight(vec![1, 0])).is_none());
    }

    #[test]
    fn sub_datum_labels() {
        let d = RootDatum::build("A3").unwrap();
        assert_eq!(d.sub_datum(&[0, 2]).label, "A1xA1");
        assert_eq!(d.sub_datum(&[1, 2]).label, "A2");
        assert_eq!(RootDatum::build("B2").unwrap().sub_datum(&[0, 1]).label, "B2");
    }
}
