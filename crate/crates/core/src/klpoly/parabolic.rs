use std::collections::{BinaryHeap, HashMap};

use crate::alcove::{AffElt, AffineGenerators, Alcove};
use crate::klpoly::poly::HalfLaurent;
use crate::rootsys::RootDatum;

/// Which one-dimensional representation of the finite Hecke algebra is induced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `H_s` acts on the finite part by `v^{-1}`.
    Spherical,
    /// `H_s` acts on the finite part by `−v`.
    Antispherical,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Up(u32),
    Down(u32),
    Out,
}

/// Parabolic Kazhdan–Lusztig polynomials on the minimal coset representatives
/// `W_f\W_aff`, i.e. on dominant alcoves, computed level by level in the length.
///
/// The canonical basis element of `y` is stored as a list of `(x, m_{x,y})` with
/// `m_{x,y} ∈ ℤ[v]` dense in nonnegative powers of `v`.
#[derive(Clone, Debug)]
pub struct ParabolicKl {
    datum: RootDatum,
    gens: AffineGenerators,
    flavor: Flavor,
    elts: Vec<AffElt>,
    alcoves: Vec<Alcove>,
    index: HashMap<Alcove, u32>,
    lengths: Vec<u32>,
    /// Right action of every generator; `None` until the next level is generated.
    right: Vec<Vec<Option<Step>>>,
    parent: Vec<(u32, usize)>,
    basis: Vec<Column>,
    /// Start index of every length level.
    levels: Vec<usize>,
}

impl ParabolicKl {
    pub fn new(datum: &RootDatum, flavor: Flavor) -> Self {
        let gens = AffineGenerators::new(datum);
        let n = gens.len();
        let base = Alcove::base(datum);
        let mut index = HashMap::new();
        index.insert(base.clone(), 0);
        ParabolicKl {
            datum: datum.clone(),
            gens,
            flavor,
            elts: vec![AffElt::identity(datum.rank)],
            alcoves: vec![base],
            index,
            lengths: vec![0],
            right: vec![vec![None; n]],
            parent: vec![(0, usize::MAX)],
            basis: vec![Column::unit(0)],
            levels: vec![0],
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Largest length for which every dominant alcove has been generated.
    pub fn max_length(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Number of dominant alcoves generated so far.
    pub fn len(&self) -> usize {
        self.elts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elts.is_empty()
    }

    fn push_level(&mut self) {
        let start = *self.levels.last().expect("level zero exists");
        let end = self.elts.len();
        let level = self.levels.len() as u32;
        for x in start..end {
            for g in 0..self.gens.len() {
                let y = self.elts[x].compose(&self.datum, &self.gens.elements[g]);
                let a = y.alcove(&self.datum);
                let step = if !a.is_dominant() {
                    Step::Out
                } else if let Some(&id) = self.index.get(&a) {
                    if self.lengths[id as usize] < level - 1 {
                        Step::Down(id)
                    } else {
                        Step::Up(id)
                    }
                } else {
                    let id = self.elts.len() as u32;
                    debug_assert_eq!(a.hyperplane_count() as u32, level);
                    self.index.insert(a.clone(), id);
                    self.alcoves.push(a);
                    self.elts.push(y);
                    self.lengths.push(level);
                    self.right.push(vec![None; self.gens.len()]);
                    self.parent.push((x as u32, g));
                    self.basis.push(Column::default());
                    Step::Up(id)
                };
                self.right[x][g] = Some(step);
            }
        }
        self.levels.push(end);
    }

    /// Generates dominant alcoves and canonical basis elements through length `n`.
    pub fn ensure_length(&mut self, n: u32) {
        while self.max_length() < n {
            let new_level = self.levels.len();
            self.push_level();
            let start = self.levels[new_level];
            for y in start..self.elts.len() {
                self.fill_basis(y);
            }
        }
    }

    fn fill_basis(&mut self, y: usize) {
        let (x, g) = self.parent[y];
        let mut acc: HashMap<u32, Vec<i64>> = HashMap::new();
        let add = |acc: &mut HashMap<u32, Vec<i64>>, id: u32, low: u16, m: &[i32], shift: i64| {
            let entry = acc.entry(id).or_default();
            let top = i64::from(low) + 2 * m.len() as i64 + shift;
            if entry.len() < top.max(0) as usize {
                entry.resize(top as usize, 0);
            }
            for (k, &c) in m.iter().enumerate() {
                let e = i64::from(low) + 2 * k as i64 + shift;
                debug_assert!(e >= 0);
                entry[e as usize] += i64::from(c);
            }
        };
        let parent = &self.basis[x as usize];
        for i in 0..parent.len() {
            let (z, low, m) = parent.entry(i);
            match self.right[z as usize][g].expect("right action known below the new level") {
                Step::Up(t) => {
                    add(&mut acc, t, low, m, 0);
                    add(&mut acc, z, low, m, 1);
                }
                Step::Down(t) => {
                    add(&mut acc, t, low, m, 0);
                    add(&mut acc, z, low, m, -1);
                }
                Step::Out => {
                    if self.flavor == Flavor::Spherical {
                        add(&mut acc, z, low, m, 1);
                        add(&mut acc, z, low, m, -1);
                    }
                }
            }
        }
        // strip constant terms below y using already known basis elements
        let mut heap: BinaryHeap<u32> = acc.keys().copied().filter(|&k| k as usize != y).collect();
        let mut queued: std::collections::HashSet<u32> = heap.iter().copied().collect();
        while let Some(id) = heap.pop() {
            let c = acc.get(&id).and_then(|p| p.first().copied()).unwrap_or(0);
            if c == 0 {
                continue;
            }
            let col = &self.basis[id as usize];
            for i in 0..col.len() {
                let (w, low, m) = col.entry(i);
                let entry = acc.entry(w).or_default();
                let top = usize::from(low) + 2 * m.len();
                if entry.len() < top {
                    entry.resize(top, 0);
                }
                for (k, &mc) in m.iter().enumerate() {
                    entry[usize::from(low) + 2 * k] -= c * i64::from(mc);
                }
                if w != id && queued.insert(w) {
                    heap.push(w);
                }
            }
        }
        let mut ids: Vec<u32> = acc.iter().filter(|(_, p)| p.iter().any(|&c| c != 0)).map(|(&id, _)| id).collect();
        ids.sort_unstable();
        let mut col = Column::default();
        for id in ids {
            let p = &acc[&id];
            let low = p.iter().position(|&c| c != 0).expect("nonzero entry");
            let high = p.iter().rposition(|&c| c != 0).expect("nonzero entry");
            debug_assert!((id as usize == y) == (low == 0));
            debug_assert!(p[low..=high].iter().skip(1).step_by(2).all(|&c| c == 0), "parity");
            let coeffs: Vec<i32> = p[low..=high]
                .iter()
                .step_by(2)
                .map(|&c| i32::try_from(c).expect("KL coefficient exceeds 32 bits"))
                .collect();
            col.push(id, u16::try_from(low).expect("degree fits 16 bits"), &coeffs);
        }
        self.basis[y] = col;
    }

    /// Stored `(x, y)` pairs and coefficients, a measure of memory use.
    pub fn storage(&self) -> (usize, usize) {
        (self.basis.iter().map(Column::len).sum(), self.basis.iter().map(|c| c.coeffs.len()).sum())
    }

    fn id(&mut self, a: &Alcove) -> Option<u32> {
        if !a.is_dominant() {
            return None;
        }
        self.ensure_length(a.hyperplane_count() as u32);
        self.index.get(a).copied()
    }

    /// `m_{x,y}(v)` for dominant alcoves `x·A⁺`, `y·A⁺`.
    pub fn m(&mut self, x: &Alcove, y: &Alcove) -> Option<Vec<i64>> {
        let (xi, yi) = (self.id(x)?, self.id(y)?);
        let col = &self.basis[yi as usize];
        Some(col.ids.binary_search(&xi).map_or_else(|_| Vec::new(), |i| col.dense(i)))
    }

    /// The classical polynomial `m_{x,y} = v^{ℓ(y)−ℓ(x)} P(v^{-2})`, as a polynomial in `q = v^{-2}`.
    pub fn poly(&mut self, x: &Alcove, y: &Alcove) -> HalfLaurent {
        let Some(m) = self.m(x, y) else {
            return HalfLaurent::zero();
        };
        let d = y.hyperplane_count() as i64 - x.hyperplane_count() as i64;
        HalfLaurent::from_terms(m.iter().enumerate().map(|(j, &c)| (d - j as i64, c)))
    }

    /// Dominant alcoves `x` with `m_{x,y} ≠ 0` and the corresponding polynomials in `q`.
    pub fn column(&mut self, y: &Alcove) -> Vec<(Alcove, HalfLaurent)> {
        let Some(yi) = self.id(y) else {
            return Vec::new();
        };
        let ly = self.lengths[yi as usize] as i64;
        let col = &self.basis[yi as usize];
        (0..col.len())
            .map(|i| {
                let x = col.ids[i] as usize;
                let d = ly - self.lengths[x] as i64;
                let m = col.dense(i);
                (
                    self.alcoves[x].clone(),
                    HalfLaurent::from_terms(m.iter().enumerate().map(|(j, &c)| (d - j as i64, c))),
                )
            })
            .collect()
    }
}

/// The canonical basis element of one `y`: entries `(x, m_{x,y})` sorted by `x`, with
/// `m_{x,y} = Σ_k c_k v^{low + 2k}` (only one parity of exponents occurs).
#[derive(Clone, Debug, Default)]
struct Column {
    ids: Vec<u32>,
    low: Vec<u16>,
    offsets: Vec<u32>,
    coeffs: Vec<i32>,
}

impl Column {
    fn unit(id: u32) -> Self {
        let mut c = Column::default();
        c.push(id, 0, &[1]);
        c
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn push(&mut self, id: u32, low: u16, coeffs: &[i32]) {
        if self.offsets.is_empty() {
            self.offsets.push(0);
        }
        self.ids.push(id);
        self.low.push(low);
        self.coeffs.extend_from_slice(coeffs);
        self.offsets.push(self.coeffs.len() as u32);
    }

    fn entry(&self, i: usize) -> (u32, u16, &[i32]) {
        (self.ids[i], self.low[i], &self.coeffs[self.offsets[i] as usize..self.offsets[i + 1] as usize])
    }

    /// `m` as a dense vector over `v^0, v^1, ...`.
    fn dense(&self, i: usize) -> Vec<i64> {
        let (_, low, m) = self.entry(i);
        let mut out = vec![0; usize::from(low) + 2 * m.len() - 1];
        for (k, &c) in m.iter().enumerate() {
            out[usize::from(low) + 2 * k] = i64::from(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klpoly::KlEngine;

    fn dominant_upto(d: &RootDatum, n: u32) -> Vec<Alcove> {
        let mut pk = ParabolicKl::new(d, Flavor::Spherical);
        pk.ensure_length(n);
        pk.alcoves.clone()
    }

    #[test]
    fn counts_dominant_alcoves() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(dominant_upto(&d, 7).len(), 8);
        let d = RootDatum::build("A2").unwrap();
        // dominant alcoves come in pairs of lengths 3k and 3k+1 ... checked against brute force
        let mut kl = KlEngine::new(&d);
        let all = kl.elements_up_to(8);
        let brute = all.iter().filter(|x| x.alcove(&d).is_dominant()).count();
        assert_eq!(dominant_upto(&d, 8).len(), brute);
    }

    /// `m_{x,y}` of the spherical module equals `P_{w₀x, w₀y}`.
    #[test]
    fn spherical_matches_ordinary_kl() {
        for label in ["A1", "A2", "B2"] {
            let d = RootDatum::build(label).unwrap();
            let mut pk = ParabolicKl::new(&d, Flavor::Spherical);
            pk.ensure_length(9);
            let mut kl = KlEngine::new(&d);
            let w0 = AffElt { w: d.w0, nu: vec![0; d.rank] };
            let alcoves = pk.alcoves.clone();
            for y in &alcoves {
                let ye = w0.compose(&d, &y.element(&d));
                for x in &alcoves {
                    let xe = w0.compose(&d, &x.element(&d));
                    assert_eq!(pk.poly(x, y), kl.kl(&xe, &ye), "{label} x={x} y={y}");
                }
            }
        }
    }
}
