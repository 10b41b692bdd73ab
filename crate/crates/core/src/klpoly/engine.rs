use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use crate::alcove::{AffElt, AffineGenerators, Alcove};
use crate::klpoly::poly::{dense, HalfLaurent};
use crate::rootsys::RootDatum;

/// Multiplicative hasher for dense integer ids.
#[derive(Default, Clone, Copy)]
pub(crate) struct IdHasher(u64);

impl Hasher for IdHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ u64::from(b)).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u32(&mut self, i: u32) {
        self.0 = (self.0.rotate_left(5) ^ u64::from(i)).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

pub(crate) type IdMap<V> = HashMap<u32, V, BuildHasherDefault<IdHasher>>;

const NONE: u32 = u32::MAX;

/// Left action of one affine generator on floor coordinates.
#[derive(Clone, Debug)]
pub(crate) struct LeftAction {
    perm: Vec<(usize, i8)>,
    shift: Vec<i64>,
}

impl LeftAction {
    pub(crate) fn new(d: &RootDatum, x: &AffElt) -> Self {
        let winv = d.inv(x.w);
        LeftAction {
            perm: (0..d.roots.len()).map(|b| d.root_image(winv, b)).collect(),
            shift: (0..d.roots.len()).map(|b| d.pair_root(&x.nu, b)).collect(),
        }
    }

    pub(crate) fn apply(&self, a: &Alcove) -> Alcove {
        Alcove(
            self.perm
                .iter()
                .zip(&self.shift)
                .map(|(&(c, sign), s)| if sign > 0 { a.0[c] + s } else { -a.0[c] - 1 + s })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Column {
    pub(crate) entries: IdMap<Vec<i64>>,
    /// `(z, μ(z, y))` for every `z < y` with nonzero `μ`.
    pub(crate) mu: Vec<(u32, i64)>,
}

/// Ordinary Kazhdan–Lusztig polynomials of the affine Weyl group, memoized column by
/// column: computing `P_{x,y}` fills `P_{·,y}` on the whole lower Bruhat interval of `y`.
///
/// Elements are interned by their alcoves. The recursion always uses the left descent
/// with the smallest generator index, so cache contents are reproducible.
#[derive(Clone, Debug)]
pub struct KlEngine {
    pub(crate) datum: RootDatum,
    pub(crate) gens: AffineGenerators,
    actions: Vec<LeftAction>,
    pub(crate) alcoves: Vec<Alcove>,
    index: HashMap<Alcove, u32>,
    lengths: Vec<u32>,
    left: Vec<Vec<u32>>,
    pub(crate) columns: IdMap<Column>,
}

impl KlEngine {
    pub fn new(datum: &RootDatum) -> Self {
        let gens = AffineGenerators::new(datum);
        let actions = gens.elements.iter().map(|g| LeftAction::new(datum, g)).collect();
        let mut engine = KlEngine {
            datum: datum.clone(),
            gens,
            actions,
            alcoves: Vec::new(),
            index: HashMap::new(),
            lengths: Vec::new(),
            left: Vec::new(),
            columns: IdMap::default(),
        };
        engine.intern(Alcove::base(datum));
        engine
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// Number of columns currently held.
    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub(crate) fn intern(&mut self, a: Alcove) -> u32 {
        if let Some(&id) = self.index.get(&a) {
            return id;
        }
        let id = self.alcoves.len() as u32;
        self.lengths.push(a.hyperplane_count() as u32);
        self.index.insert(a.clone(), id);
        self.alcoves.push(a);
        self.left.push(vec![NONE; self.gens.len()]);
        id
    }

    pub(crate) fn id_of_elt(&mut self, x: &AffElt) -> u32 {
        let a = x.alcove(&self.datum);
        self.intern(a)
    }

    pub(crate) fn length(&self, x: u32) -> u32 {
        self.lengths[x as usize]
    }

    pub(crate) fn left_mul(&mut self, x: u32, g: usize) -> u32 {
        let cached = self.left[x as usize][g];
        if cached != NONE {
            return cached;
        }
        let img = self.actions[g].apply(&self.alcoves[x as usize]);
        let id = self.intern(img);
        self.left[x as usize][g] = id;
        self.left[id as usize][g] = x;
        id
    }

    pub(crate) fn is_left_descent(&self, x: u32, g: usize) -> bool {
        self.gens.separates(g, &self.alcoves[x as usize])
    }

    pub(crate) fn first_descent(&self, x: u32) -> Option<usize> {
        (0..self.gens.len()).find(|&g| self.is_left_descent(x, g))
    }

    /// All left descents of `x`.
    pub fn left_descents(&mut self, x: &AffElt) -> Vec<usize> {
        let id = self.id_of_elt(x);
        (0..self.gens.len()).filter(|&g| self.is_left_descent(id, g)).collect()
    }

    /// Bruhat order by the lifting property along left descents.
    pub fn bruhat_leq(&mut self, x: &AffElt, y: &AffElt) -> bool {
        let (x, y) = (self.id_of_elt(x), self.id_of_elt(y));
        self.bruhat_leq_ids(x, y)
    }

    pub(crate) fn bruhat_leq_ids(&mut self, mut x: u32, mut y: u32) -> bool {
        loop {
            if x == y {
                return true;
            }
            if self.length(x) >= self.length(y) {
                return false;
            }
            let s = self.first_descent(y).expect("nonidentity element has a descent");
            if self.is_left_descent(x, s) {
                x = self.left_mul(x, s);
            }
            y = self.left_mul(y, s);
        }
    }

    /// `P_{x,y}` as a polynomial in integral powers of `q`.
    pub fn kl(&mut self, x: &AffElt, y: &AffElt) -> HalfLaurent {
        let (x, y) = (self.id_of_elt(x), self.id_of_elt(y));
        self.kl_ids(x, y)
    }

    pub(crate) fn kl_ids(&mut self, x: u32, y: u32) -> HalfLaurent {
        if self.length(x) > self.length(y) {
            return HalfLaurent::zero();
        }
        self.ensure_column(y);
        self.columns[&y].entries.get(&x).map_or_else(HalfLaurent::zero, |p| HalfLaurent::from_q_coeffs(p))
    }

    /// `μ(x,y)`: coefficient of `q^{(ℓ(y)−ℓ(x)−1)/2}` in `P_{x,y}`, zero unless `x < y`.
    pub fn mu(&mut self, x: &AffElt, y: &AffElt) -> i64 {
        let (x, y) = (self.id_of_elt(x), self.id_of_elt(y));
        let (lx, ly) = (self.length(x), self.length(y));
        if lx >= ly || (ly - lx) % 2 == 0 {
            return 0;
        }
        self.kl_ids(x, y).coeff(i64::from(ly - lx - 1))
    }

    /// Recomputes `P_{x,y}` through the recursion with left descent `s` of `y`,
    /// reading lower values from the memo table.
    pub fn kl_via_descent(&mut self, x: &AffElt, y: &AffElt, s: usize) -> HalfLaurent {
        let (x, y) = (self.id_of_elt(x), self.id_of_elt(y));
        assert!(self.is_left_descent(y, s), "s{s} is not a left descent");
        let v = self.left_mul(y, s);
        self.ensure_column(v);
        let mus: Vec<(u32, i64)> =
            self.columns[&v].mu.iter().copied().filter(|&(z, _)| self.is_left_descent(z, s)).collect();
        for &(z, _) in &mus {
            self.ensure_column(z);
        }
        let sx = self.left_mul(x, s);
        let c = usize::from(self.is_left_descent(x, s));
        let p = self.combine(x, sx, c, y, v, &mus);
        HalfLaurent::from_q_coeffs(&p)
    }

    fn combine(&self, x: u32, sx: u32, c: usize, y: u32, v: u32, mus: &[(u32, i64)]) -> Vec<i64> {
        let col_v = &self.columns[&v];
        let mut p = Vec::new();
        if let Some(a) = col_v.entries.get(&sx) {
            dense::add_scaled(&mut p, a, 1, 1 - c);
        }
        if let Some(b) = col_v.entries.get(&x) {
            dense::add_scaled(&mut p, b, 1, c);
        }
        let ly = self.length(y);
        for &(z, m) in mus {
            if let Some(pz) = self.columns[&z].entries.get(&x) {
                dense::add_scaled(&mut p, pz, -m, ((ly - self.length(z)) / 2) as usize);
            }
        }
        dense::trim(&mut p);
        p
    }

    pub(crate) fn ensure_column(&mut self, y: u32) {
        if self.columns.contains_key(&y) {
            return;
        }
        // iterative post-order over the dependency graph
        let mut stack = vec![(y, false)];
        while let Some((t, expanded)) = stack.pop() {
            if self.columns.contains_key(&t) {
                continue;
            }
            let Some(s) = self.first_descent(t) else {
                let mut col = Column::default();
                col.entries.insert(t, vec![1]);
                self.columns.insert(t, col);
                continue;
            };
            let v = self.left_mul(t, s);
            if !expanded {
                stack.push((t, true));
                match self.columns.get(&v) {
                    None => stack.push((v, false)),
                    Some(col) => {
                        let pending: Vec<u32> = col
                            .mu
                            .iter()
                            .map(|&(z, _)| z)
                            .filter(|&z| self.is_left_descent(z, s) && !self.columns.contains_key(&z))
                            .collect();
                        stack.extend(pending.into_iter().map(|z| (z, false)));
                    }
                }
                continue;
            }
            let mus: Vec<(u32, i64)> =
                self.columns[&v].mu.iter().copied().filter(|&(z, _)| self.is_left_descent(z, s)).collect();
            if mus.iter().any(|(z, _)| !self.columns.contains_key(z)) {
                stack.push((t, true));
                stack.extend(mus.iter().filter(|(z, _)| !self.columns.contains_key(z)).map(|&(z, _)| (z, false)));
                continue;
            }
            self.fill_column(t, s, v, &mus);
        }
    }

    fn fill_column(&mut self, y: u32, s: usize, v: u32, mus: &[(u32, i64)]) {
        let lower_v: Vec<u32> = self.columns[&v].entries.keys().copied().collect();
        let mut lower: Vec<u32> = Vec::with_capacity(2 * lower_v.len());
        for &x in &lower_v {
            lower.push(x);
            lower.push(self.left_mul(x, s));
        }
        lower.sort_unstable();
        lower.dedup();
        let triples: Vec<(u32, u32, usize)> = lower
            .into_iter()
            .map(|x| {
                let sx = self.left_mul(x, s);
                (x, sx, usize::from(self.is_left_descent(x, s)))
            })
            .collect();
        let mut col = Column::default();
        for (x, sx, c) in triples {
            let p = self.combine(x, sx, c, y, v, mus);
            if !p.is_empty() {
                col.entries.insert(x, p);
            }
        }
        let ly = self.length(y);
        let mut mu: Vec<(u32, i64)> = col
            .entries
            .iter()
            .filter_map(|(&x, p)| {
                let lx = self.length(x);
                if lx >= ly || (ly - lx).is_multiple_of(2) {
                    return None;
                }
                let top = ((ly - lx - 1) / 2) as usize;
                p.get(top).copied().filter(|&m| m != 0).map(|m| (x, m))
            })
            .collect();
        mu.sort_unstable();
        col.mu = mu;
        self.columns.insert(y, col);
    }

    /// Elements of the lower Bruhat interval of `y` together with `P_{x,y}`.
    pub fn column(&mut self, y: &AffElt) -> Vec<(Alcove, HalfLaurent)> {
        let id = self.id_of_elt(y);
        self.ensure_column(id);
        let mut out: Vec<(Alcove, HalfLaurent)> = self.columns[&id]
            .entries
            .iter()
            .map(|(&x, p)| (self.alcoves[x as usize].clone(), HalfLaurent::from_q_coeffs(p)))
            .collect();
        out.sort_by(|a, b| a.0.hyperplane_count().cmp(&b.0.hyperplane_count()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// All elements of length at most `n`, by breadth-first search from the identity.
    pub fn elements_up_to(&mut self, n: u32) -> Vec<AffElt> {
        let mut seen = vec![0u32];
        let mut frontier = vec![0u32];
        for _ in 0..n {
            let mut next = Vec::new();
            for &x in &frontier {
                for g in 0..self.gens.len() {
                    let y = self.left_mul(x, g);
                    if self.length(y) > self.length(x) && !seen.contains(&y) && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
            seen.extend(&next);
            frontier = next;
        }
        seen.iter().map(|&id| self.alcoves[id as usize].element(&self.datum)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::element_of_word;

    #[test]
    fn trivial_cases() {
        let d = RootDatum::build("A2").unwrap();
        let mut kl = KlEngine::new(&d);
        let e = AffElt::identity(2);
        let y = element_of_word(&d, &[0, 1, 2, 0]).unwrap();
        assert!(kl.kl(&y, &y).is_one());
        assert_eq!(kl.kl(&e, &y).to_string(), "1 + q");
        assert!(kl.bruhat_leq(&e, &y));
        assert!(!kl.bruhat_leq(&y, &e));
        assert_eq!(kl.mu(&y, &y), 0);
        let sy = element_of_word(&d, &[1, 2, 0]).unwrap();
        assert_eq!(kl.mu(&sy, &y), 1);
    }

    #[test]
    fn affine_a1_all_ones_to_length_12() {
        let d = RootDatum::build("A1").unwrap();
        let mut kl = KlEngine::new(&d);
        let elts = kl.elements_up_to(12);
        assert_eq!(elts.len(), 25);
        for y in &elts {
            for x in &elts {
                let p = kl.kl(x, y);
                if kl.bruhat_leq(x, y) {
                    assert!(p.is_one(), "P = {p}");
                    let gap = y.length(&d) as i64 - x.length(&d) as i64;
                    if gap == 3 {
                        assert_eq!(kl.mu(x, y), 0);
                    }
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn degree_bound_and_positivity_a2() {
        let d = RootDatum::build("A2").unwrap();
        let mut kl = KlEngine::new(&d);
        let elts = kl.elements_up_to(9);
        let mut nontrivial = 0;
        for y in &elts {
            for (xa, p) in kl.column(y) {
                let x = xa.element(&d);
                let gap = y.length(&d) as i64 - x.length(&d) as i64;
                assert_eq!(p.coeff(0), 1);
                assert!(p.has_nonnegative_coefficients());
                if gap > 0 {
                    assert!(2 * p.q_degree().unwrap() < gap);
                }
                if gap <= 2 {
                    assert!(p.is_one());
                }
                if !p.is_one() {
                    nontrivial += 1;
                }
            }
        }
        assert!(nontrivial > 0, "affine A2 has nontrivial KL polynomials by length 9");
    }
}
