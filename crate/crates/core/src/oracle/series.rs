use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::oracle::fp::{Mat, Subspace};
use crate::oracle::module::{Algebra, FpModule, GradedSubspace};
use crate::weight::Weight;

/// Layer `j` of a socle series: highest weights of the simple factors with multiplicities.
pub type Layer = BTreeMap<Weight, usize>;

/// Builds modules and socle series for one algebra and prime, caching the radicals
/// of baby Verma modules.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub algebra: Algebra,
    pub p: u32,
    radicals: HashMap<Weight, (FpModule, GradedSubspace)>,
}

impl Oracle {
    pub fn new(algebra: Algebra, p: u32) -> Self {
        Oracle { algebra, p, radicals: HashMap::new() }
    }

    /// `Ẑ(μ)` with its unique maximal submodule.
    fn verma_with_radical(&mut self, mu: &Weight) -> Result<&(FpModule, GradedSubspace)> {
        if !self.radicals.contains_key(mu) {
            let z = FpModule::baby_verma(self.algebra, mu, self.p)?;
            let top = z.weight_index(mu).expect("highest weight present");
            let below: GradedSubspace = (0..z.weights.len())
                .map(|k| if k == top { Subspace::zero(z.dims[k]) } else { Subspace::full(z.dims[k]) })
                .collect();
            let rad = z.largest_submodule_in(below);
            self.radicals.insert(mu.clone(), (z, rad));
        }
        Ok(&self.radicals[mu])
    }

    /// The simple module `L̂(μ)`.
    pub fn simple_head(&mut self, mu: &Weight) -> Result<FpModule> {
        let (z, rad) = self.verma_with_radical(mu)?;
        Ok(z.quotient(rad))
    }

    /// `∇̂(μ)`, the τ-dual of the baby Verma module.
    pub fn costandard(&mut self, mu: &Weight) -> Result<FpModule> {
        Ok(FpModule::baby_verma(self.algebra, mu, self.p)?.tau_dual())
    }

    /// `∇̂_P(L̂^P(λ))` for the parabolic with Levi simple roots `subset`: the τ-dual of
    /// `Ẑ(λ)` modulo the submodule generated by `f_i^{a_i+1}v₊`, `i ∈ I`, where
    /// `a_i = <λ, α_i^∨> mod p`.
    pub fn induce_parabolic(&mut self, subset: &[usize], lambda: &Weight) -> Result<FpModule> {
        let r = self.algebra.rank();
        if let Some(&i) = subset.iter().find(|&&i| i >= r) {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        let mut set = subset.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.len() == r {
            return self.simple_head(lambda);
        }
        let z = FpModule::baby_verma(self.algebra, lambda, self.p)?;
        let top = z.weight_index(lambda).expect("highest weight present");
        let p = self.p;
        let mut gens = Vec::new();
        for &i in &set {
            let a = lambda[i].rem_euclid(i64::from(p)) as u32;
            if a + 1 >= p {
                continue;
            }
            let mut k = top;
            let mut v = vec![1u32];
            let mut alive = true;
            for _ in 0..=a {
                match (&z.f[i][k], z.target(k, i, false)) {
                    (Some(m), Some(t)) => {
                        v = m.apply(&v, p);
                        k = t;
                    }
                    _ => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                gens.push((k, v));
            }
        }
        let kernel = z.generate(&gens);
        Ok(z.quotient(&kernel).tau_dual())
    }

    /// Vectors `v ∈ M_μ` spanning the image of `Hom(L̂(μ), M)` in `M_μ`.
    pub fn hom_from_simple(&mut self, mu: &Weight, m: &FpModule) -> Result<Vec<Vec<u32>>> {
        let p = self.p;
        let Some(k) = m.weight_index(mu) else {
            return Ok(Vec::new());
        };
        let n = m.dims[k];
        if n == 0 {
            return Ok(Vec::new());
        }
        // primitive vectors: common kernel of the e_i
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for i in 0..m.rank() {
            if let Some(e) = &m.e[i][k] {
                for r in 0..e.rows {
                    rows.push((0..n).map(|c| e.get(r, c)).collect());
                }
            }
        }
        let primitive = kernel_of_rows(rows, n, p);
        if primitive.is_empty() {
            return Ok(primitive);
        }
        let algebra = self.algebra;
        let (z, rad) = self.verma_with_radical(mu)?;
        let mut conditions: Vec<Vec<u32>> = Vec::new();
        for (zk, sub) in rad.iter().enumerate() {
            if sub.dim() == 0 {
                continue;
            }
            let Some(mk) = m.weight_index(&z.weights[zk]) else {
                continue;
            };
            let dim_target = m.dims[mk];
            for x in &sub.rows {
                // Σ_j x_j (m_j · v), as a map from primitive coordinates to M_ν
                let mut mat = Mat::zero(dim_target, primitive.len());
                for (j, &c) in x.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (h, v) in primitive.iter().enumerate() {
                        if let Some((t, img)) = act_monomial(algebra, m, k, v, &z.pbw[zk][j]) {
                            debug_assert_eq!(t, mk);
                            for (row, val) in img.iter().enumerate() {
                                let cur = mat.get(row, h);
                                mat.set(row, h, (cur + c * val) % p);
                            }
                        }
                    }
                }
                for r in 0..mat.rows {
                    conditions.push((0..mat.cols).map(|c| mat.get(r, c)).collect());
                }
            }
        }
        let coeffs = kernel_of_rows(conditions, primitive.len(), p);
        Ok(coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u32; n];
                for (ci, b) in c.iter().zip(&primitive) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + ci * y) % p;
                    }
                }
                v
            })
            .collect())
    }

    /// Socle layers of `m`, from the socle upward.
    pub fn socle_series(&mut self, m: &FpModule) -> Result<Vec<Layer>> {
        let mut layers = Vec::new();
        let mut cur = m.clone();
        while cur.dim() > 0 {
            let mut layer = Layer::new();
            let mut gens = Vec::new();
            for k in 0..cur.weights.len() {
                let mu = cur.weights[k].clone();
                let h = self.hom_from_simple(&mu, &cur)?;
                if !h.is_empty() {
                    layer.insert(mu, h.len());
                    gens.extend(h.into_iter().map(|v| (k, v)));
                }
            }
            if gens.is_empty() {
                return Err(Error::InternalInconsistency("nonzero module with zero socle".into()));
            }
            let soc = cur.generate(&gens);
            cur = cur.quotient(&soc);
            layers.push(layer);
        }
        Ok(layers)
    }
}

fn kernel_of_rows(rows: Vec<Vec<u32>>, n: usize, p: u32) -> Vec<Vec<u32>> {
    if rows.is_empty() {
        return (0..n).map(|i| crate::oracle::fp::unit(n, i)).collect();
    }
    let mat = Mat { rows: rows.len(), cols: n, data: rows.concat() };
    mat.kernel(p)
}

/// Applies a PBW monomial to `v` in weight space `k`; `None` if the result leaves the
/// weights of `m` (and so vanishes).
fn act_monomial(algebra: Algebra, m: &FpModule, k: usize, v: &[u32], mono: &[u32]) -> Option<(usize, Vec<u32>)> {
    let p = m.p;
    let lower = |k: usize, v: &[u32], i: usize| -> Option<(usize, Vec<u32>)> {
        match (&m.f[i][k], m.target(k, i, false)) {
            (Some(mat), Some(t)) => Some((t, mat.apply(v, p))),
            _ => None,
        }
    };
    let mut state = (k, v.to_vec());
    match algebra {
        Algebra::Sl2 => {
            for _ in 0..mono[0] {
                state = lower(state.0, &state.1, 0)?;
            }
        }
        Algebra::Sl3 => {
            // f₁^a f₁₂^b f₂^c v, applied right to left
            for _ in 0..mono[2] {
                state = lower(state.0, &state.1, 1)?;
            }
            for _ in 0..mono[1] {
                // f₁₂ = f₂f₁ − f₁f₂
                let a = lower(state.0, &state.1, 0).and_then(|(t, w)| lower(t, &w, 1));
                let b = lower(state.0, &state.1, 1).and_then(|(t, w)| lower(t, &w, 0));
                state = match (a, b) {
                    (Some((t, x)), Some((_, y))) => (t, x.iter().zip(&y).map(|(x, y)| (x + p - y) % p).collect()),
                    (Some(s), None) => s,
                    (None, Some((t, y))) => (t, y.iter().map(|y| (p - y) % p).collect()),
                    (None, None) => return None,
                };
            }
            for _ in 0..mono[0] {
                state = lower(state.0, &state.1, 0)?;
            }
        }
    }
    Some(state)
}
