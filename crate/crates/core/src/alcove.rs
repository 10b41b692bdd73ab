//! The affine Weyl group `W ⋉ ℤR` acting on normalized points `v = (λ+ρ)/p`,
//! alcoves, signed distances and weight bookkeeping.
//!
//! An alcove is stored by its floor coordinates `k_β = ⌊<v, β^∨>⌋` over the positive
//! roots, for any interior point `v`. With that encoding the signed distance is a
//! coordinate difference and the number of separating hyperplanes is an `ℓ¹` norm.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::RootDatum;
use crate::weight::Weight;

/// `x = (w, ν)` acting by `v ↦ w(v) + ν`; `ν` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffElt {
    pub w: usize,
    pub nu: Vec<i64>,
}

/// Floor coordinates of an alcove, indexed like `RootDatum::roots`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alcove(pub Vec<i64>);

/// `λ = λ⁰ + pλ¹` with `λ⁰` restricted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomp {
    pub restricted: Weight,
    pub upper: Weight,
}

impl AffElt {
    pub fn identity(rank: usize) -> Self {
        AffElt { w: 0, nu: vec![0; rank] }
    }

    pub fn translation(nu: Vec<i64>) -> Self {
        AffElt { w: 0, nu }
    }

    pub fn is_identity(&self) -> bool {
        self.w == 0 && self.nu.iter().all(|&x| x == 0)
    }

    /// Group law `(w₁,ν₁)(w₂,ν₂) = (w₁w₂, w₁ν₂ + ν₁)`.
    pub fn compose(&self, d: &RootDatum, other: &AffElt) -> AffElt {
        let moved = d.act_root(self.w, &other.nu);
        AffElt { w: d.mul(self.w, other.w), nu: moved.iter().zip(&self.nu).map(|(a, b)| a + b).collect() }
    }

    pub fn inverse(&self, d: &RootDatum) -> AffElt {
        let winv = d.inv(self.w);
        let nu = d.act_root(winv, &self.nu).into_iter().map(|x| -x).collect();
        AffElt { w: winv, nu }
    }

    /// Number of hyperplanes separating `A⁺` and `x·A⁺`.
    pub fn length(&self, d: &RootDatum) -> usize {
        self.alcove(d).hyperplane_count()
    }

    /// The alcove `x·A⁺`.
    pub fn alcove(&self, d: &RootDatum) -> Alcove {
        act_on_alcove(d, self, &Alcove::base(d))
    }
}

/// `x·A` in floor coordinates.
pub fn act_on_alcove(d: &RootDatum, x: &AffElt, a: &Alcove) -> Alcove {
    let winv = d.inv(x.w);
    Alcove(
        (0..d.roots.len())
            .map(|b| {
                let (c, sign) = d.root_image(winv, b);
                let base = if sign > 0 { a.0[c] } else { -a.0[c] - 1 };
                base + d.pair_root(&x.nu, b)
            })
            .collect(),
    )
}

impl Alcove {
    /// The base alcove `A⁺ = {0 < <v, β^∨> < 1}`.
    pub fn base(d: &RootDatum) -> Self {
        Alcove(vec![0; d.roots.len()])
    }

    pub fn hyperplane_count(&self) -> usize {
        self.0.iter().map(|k| k.unsigned_abs() as usize).sum()
    }

    /// Every floor coordinate is nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    /// Translate by a root-lattice vector given in simple-root coordinates.
    pub fn translate(&self, d: &RootDatum, nu: &[i64]) -> Alcove {
        Alcove(self.0.iter().enumerate().map(|(b, k)| k + d.pair_root(nu, b)).collect())
    }

    /// The unique `x` with `x·A⁺ = self`, found by walking down along left descents.
    /// The letters visited form the lexicographically smallest reduced word.
    pub fn element(&self, d: &RootDatum) -> AffElt {
        let word = self.reduced_word(d);
        let gens = AffineGenerators::new(d);
        word.iter().fold(AffElt::identity(d.rank), |acc, &g| acc.compose(d, &gens.elements[g]))
    }

    /// Lexicographically smallest reduced word over the affine generators.
    pub fn reduced_word(&self, d: &RootDatum) -> Vec<usize> {
        let gens = AffineGenerators::new(d);
        let mut word = Vec::new();
        let mut cur = self.clone();
        while let Some(g) = (0..gens.len()).find(|&g| gens.separates(g, &cur)) {
            cur = act_on_alcove(d, &gens.elements[g], &cur);
            word.push(g);
        }
        word
    }

    /// Exact barycenter as `(numerators, denominator)` in fundamental-weight coordinates.
    pub fn barycenter(&self, d: &RootDatum) -> (Vec<i64>, i64) {
        let x = self.element(d);
        // ρ/h lies in A⁺; the image point is (wρ + hν)/h
        let h = d.coxeter_number;
        let wr = d.act(x.w, &d.rho());
        let nu = d.root_to_weight(&x.nu);
        ((0..d.rank).map(|i| wr[i] + h * nu[i]).collect(), h)
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The Coxeter generators of the affine Weyl group: `s₀` (the reflection in
/// `<v, α₀^∨> = 1`, `α₀` the highest short root) followed by `s₁..s_r`. A reducible
/// datum gets one extra affine generator per further component, numbered after `s_r`.
#[derive(Clone, Debug)]
pub struct AffineGenerators {
    pub elements: Vec<AffElt>,
    /// For each generator: the root whose hyperplane it fixes, and the level `n` of `H_{β,n}`.
    pub walls: Vec<(usize, i64)>,
}

impl AffineGenerators {
    pub fn new(d: &RootDatum) -> Self {
        let mut elements = Vec::new();
        let mut walls = Vec::new();
        let affine = |b: usize| {
            let root = &d.roots[b];
            (AffElt { w: d.root_reflection(b), nu: root.coeffs.clone() }, (b, 1))
        };
        if let Some(&b) = d.highest_short.first() {
            let (e, w) = affine(b);
            elements.push(e);
            walls.push(w);
        }
        for i in 0..d.rank {
            elements.push(AffElt { w: d.simple_reflection(i), nu: vec![0; d.rank] });
            walls.push((d.simple[i], 0));
        }
        for &b in d.highest_short.iter().skip(1) {
            let (e, w) = affine(b);
            elements.push(e);
            walls.push(w);
        }
        AffineGenerators { elements, walls }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the fixed hyperplane of generator `g` separates `A⁺` from `a`,
    /// i.e. `g` is a left descent of the element of `a`.
    pub fn separates(&self, g: usize, a: &Alcove) -> bool {
        let (b, level) = self.walls[g];
        if level == 0 {
            a.0[b] < 0
        } else {
            a.0[b] >= level
        }
    }
}

/// Formats a word over the affine generators as `s0s1...`; the empty word is `e`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|g| format!("s{g}")).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '.').collect();
    let mut out = Vec::new();
    let mut chars = cleaned.chars().peekable();
    while let Some(c) = chars.next() {
        if c != 's' {
            return Err(Error::Parse(format!("bad word `{s}`")));
        }
        let mut digits = String::new();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() {
                digits.push(d);
                chars.next();
            } else {
                break;
            }
        }
        out.push(digits.parse().map_err(|_| Error::Parse(format!("bad word `{s}`")))?);
    }
    Ok(out)
}

/// Element of a word over the affine generators.
pub fn element_of_word(d: &RootDatum, word: &[usize]) -> Result<AffElt> {
    let gens = AffineGenerators::new(d);
    word.iter().try_fold(AffElt::identity(d.rank), |acc, &g| {
        gens.elements
            .get(g)
            .map(|s| acc.compose(d, s))
            .ok_or_else(|| Error::Parse(format!("generator s{g} does not exist for {}", d.label)))
    })
}

/// `x•λ = w(λ+ρ) − ρ + pν`.
pub fn dot_act(d: &RootDatum, x: &AffElt, lambda: &Weight, p: u64) -> Weight {
    let shifted = d.dot(x.w, lambda);
    &shifted + &d.root_to_weight(&x.nu).scale(p as i64)
}

pub fn decompose(lambda: &Weight, p: u64) -> WeightDecomp {
    let p = p as i64;
    let restricted = Weight(lambda.0.iter().map(|x| x.rem_euclid(p)).collect());
    let upper = Weight(lambda.0.iter().map(|x| x.div_euclid(p)).collect());
    WeightDecomp { restricted, upper }
}

pub fn is_regular(d: &RootDatum, lambda: &Weight, p: u64) -> bool {
    let shifted = lambda + &d.rho();
    (0..d.roots.len()).all(|b| d.pair(&shifted.0, b).rem_euclid(p as i64) != 0)
}

/// The alcove containing `(λ+ρ)/p`.
pub fn alcove_of(d: &RootDatum, lambda: &Weight, p: u64) -> Result<Alcove> {
    let shifted = lambda + &d.rho();
    let p = p as i64;
    let mut coords = Vec::with_capacity(d.roots.len());
    for b in 0..d.roots.len() {
        let m = d.pair(&shifted.0, b);
        if m.rem_euclid(p) == 0 {
            return Err(Error::NotRegular { weight: lambda.0.clone(), p: p as u64 });
        }
        coords.push(m.div_euclid(p));
    }
    Ok(Alcove(coords))
}

/// Signed distance: each separating hyperplane counts `+1` if `b` lies on its upper side.
pub fn signed_distance(a: &Alcove, b: &Alcove) -> i64 {
    a.0.iter().zip(&b.0).map(|(x, y)| y - x).sum()
}

/// Signed distance counting only hyperplanes of the roots listed in `roots`.
pub fn signed_distance_restricted(a: &Alcove, b: &Alcove, roots: &[usize]) -> i64 {
    roots.iter().map(|&r| b.0[r] - a.0[r]).sum()
}

/// The alcove form of `β↑`: reflect `a` in the lowest `β`-hyperplane above it.
pub fn up_reflect(d: &RootDatum, beta: usize, a: &Alcove) -> Alcove {
    let level = a.0[beta] + 1;
    let root = &d.roots[beta];
    let x = AffElt { w: d.root_reflection(beta), nu: root.coeffs.iter().map(|c| c * level).collect() };
    act_on_alcove(d, &x, a)
}

/// The weight in the orbit `W_p•λ` whose alcove is `target`.
pub fn orbit_weight(d: &RootDatum, lambda: &Weight, p: u64, target: &Alcove) -> Result<Weight> {
    let base = alcove_of(d, lambda, p)?.element(d);
    let x = target.element(d).compose(d, &base.inverse(d));
    Ok(dot_act(d, &x, lambda, p))
}

/// All `μ ∈ W_p•λ` (or `W_{I,p}•λ` when `levi` is given) with `λ − μ` in the box
/// `0 ≤ a_i ≤ (2(p−1)ρ)_i` of simple-root coordinates. Sorted by height of `λ − μ`,
/// then lexicographically.
pub fn box_window(d: &RootDatum, lambda: &Weight, p: u64, levi: Option<&[usize]>) -> Result<Vec<Weight>> {
    alcove_of(d, lambda, p)?;
    let pi = p as i64;
    let bound: Vec<i64> = d.two_rho_root().iter().map(|x| x * (pi - 1)).collect();
    let shifted = lambda + &d.rho();
    let r = d.rank;
    let mut out = Vec::new();
    for w in 0..d.weyl_order() {
        if let Some(set) = levi {
            if !d.weyl[w].word.iter().all(|i| set.contains(i)) {
                continue;
            }
        }
        let diff = d.weight_to_root(&(&shifted - &d.act(w, &shifted))).expect("root lattice");
        let mut ranges = Vec::with_capacity(r);
        let mut empty = false;
        for i in 0..r {
            let free = levi.is_none_or(|set| set.contains(&i));
            let (lo, hi) = if free {
                (
                    (diff[i] - bound[i]).div_euclid(pi) + i64::from((diff[i] - bound[i]).rem_euclid(pi) != 0),
                    diff[i].div_euclid(pi),
                )
            } else if (0..=bound[i]).contains(&diff[i]) {
                (0, 0)
            } else {
                (1, 0)
            };
            if lo > hi {
                empty = true;
                break;
            }
            ranges.push((lo, hi));
        }
        if empty {
            continue;
        }
        let mut nu: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let x = AffElt { w, nu: nu.clone() };
            out.push(dot_act(d, &x, lambda, p));
            let mut i = 0;
            while i < r {
                if nu[i] < ranges[i].1 {
                    nu[i] += 1;
                    break;
                }
                nu[i] = ranges[i].0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    let key = |mu: &Weight| {
        let c = d.weight_to_root(&(lambda - mu)).unwrap();
        (c.iter().sum::<i64>(), c)
    };
    out.sort_by_key(|mu| key(mu));
    out.dedup();
    Ok(out)
}

/// One `p`-regular restricted weight per alcove meeting the fundamental box
/// `0 ≤ <λ, α_i^∨> < p`, taking the lexicographically first weight in each.
pub fn box_representatives(d: &RootDatum, p: u64) -> Vec<Weight> {
    let r = d.rank;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut lambda = vec![0i64; r];
    loop {
        let w = Weight(lambda.clone());
        if let Ok(a) = alcove_of(d, &w, p) {
            if seen.insert(a) {
                out.push(w);
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if lambda[i] + 1 < p as i64 {
                lambda[i] += 1;
                break;
            }
            lambda[i] = 0;
        }
    }
}

/// `λ⟨w⟩ = λ + (p−1)(w•0)`.
pub fn lambda_bracket(d: &RootDatum, lambda: &Weight, w: usize, p: u64) -> Weight {
    lambda + &d.dot(w, &Weight::zero(d.rank)).scale(p as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn dot_action_examples() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(dot_act(&d, &AffElt::identity(1), &w(&[7]), 5), w(&[7]));
        let s = AffElt { w: d.simple_reflection(0), nu: vec![0] };
        assert_eq!(dot_act(&d, &s, &w(&[-1]), 5), w(&[-1]));
        // reflection in <v+ρ, α^∨> = 5
        let s1 = AffElt { w: d.simple_reflection(0), nu: vec![1] };
        assert_eq!(dot_act(&d, &s1, &w(&[2]), 5), w(&[6]));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&w(&[6]), 5), WeightDecomp { restricted: w(&[1]), upper: w(&[1]) });
        assert_eq!(decompose(&w(&[3, 4]), 5), WeightDecomp { restricted: w(&[3, 4]), upper: w(&[0, 0]) });
        assert_eq!(decompose(&w(&[-4]), 5), WeightDecomp { restricted: w(&[1]), upper: w(&[-1]) });
    }

    #[test]
    fn alcove_of_examples() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(alcove_of(&d, &w(&[2]), 5).unwrap(), Alcove::base(&d));
        assert!(matches!(alcove_of(&d, &w(&[-1]), 5), Err(Error::NotRegular { .. })));
        let a = alcove_of(&d, &w(&[6]), 5).unwrap();
        assert_eq!(a, Alcove(vec![1]));
        let s0 = element_of_word(&d, &[0]).unwrap();
        assert_eq!(a, s0.alcove(&d));
    }

    #[test]
    fn signed_distance_examples() {
        let d = RootDatum::build("A1").unwrap();
        let a = alcove_of(&d, &w(&[-4]), 5).unwrap();
        let b = alcove_of(&d, &w(&[2]), 5).unwrap();
        assert_eq!(signed_distance(&a, &b), 1);
        assert_eq!(signed_distance(&b, &a), -1);
        assert_eq!(signed_distance(&a, &a), 0);
    }

    #[test]
    fn up_reflection_examples() {
        let d = RootDatum::build("A1").unwrap();
        let base = Alcove::base(&d);
        let up = up_reflect(&d, 0, &base);
        assert_eq!(up, element_of_word(&d, &[0]).unwrap().alcove(&d));
        let up2 = up_reflect(&d, 0, &up);
        assert!(signed_distance(&up, &up2) > 0 && signed_distance(&base, &up) > 0);

        let a2 = RootDatum::build("A2").unwrap();
        let base = Alcove::base(&a2);
        let up = up_reflect(&a2, a2.simple[0], &base);
        // reflection in <v, α₁^∨> = 1 sends ρ/3 = (1/3,1/3) to (5/3,-1/3)
        let expected = alcove_of(&a2, &Weight(vec![4, -2]), 3).unwrap();
        assert_eq!(up, expected);
        assert_eq!(up.0[a2.simple[0]], 1);
    }

    #[test]
    fn box_window_a1() {
        let d = RootDatum::build("A1").unwrap();
        let win = box_window(&d, &w(&[2]), 5, None).unwrap();
        assert_eq!(win, vec![w(&[2]), w(&[-4])]);
        assert_eq!(box_window(&d, &w(&[2]), 5, Some(&[0])).unwrap(), win);
        let a2 = RootDatum::build("A2").unwrap();
        let full = box_window(&a2, &w(&[1, 1]), 5, Some(&[0, 1])).unwrap();
        assert!(full.contains(&w(&[1, 1])));
        assert!(box_window(&a2, &w(&[1, 1]), 5, Some(&[])).unwrap() == vec![w(&[1, 1])]);
    }

    #[test]
    fn lambda_bracket_examples() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(lambda_bracket(&d, &w(&[2]), 0, 5), w(&[2]));
        assert_eq!(lambda_bracket(&d, &w(&[2]), d.w0, 5), w(&[-6]));
        let g2 = RootDatum::build("G2").unwrap();
        assert_eq!(lambda_bracket(&g2, &Weight::zero(2), g2.w0, 7), g2.rho().scale(-12));
    }

    #[test]
    fn words_roundtrip() {
        for label in ["A1", "A2", "B2", "G2"] {
            let d = RootDatum::build(label).unwrap();
            let words: [&[usize]; 4] = [&[], &[0], &[1, 0, 2 % (d.rank + 1)], &[0, 1, 0, 1, 0]];
            for word in words {
                let x = element_of_word(&d, word).unwrap();
                let a = x.alcove(&d);
                assert_eq!(a.element(&d), x);
                let lex = a.reduced_word(&d);
                assert_eq!(lex.len(), a.hyperplane_count());
                assert_eq!(element_of_word(&d, &lex).unwrap(), x);
                assert_eq!(parse_word(&format_word(&lex)).unwrap(), lex);
            }
        }
    }

    #[test]
    fn box_representatives_count_alcoves() {
        for (label, p, n) in [("A1", 5, 1), ("A2", 5, 2), ("B2", 7, 4), ("G2", 7, 12)] {
            let d = RootDatum::build(label).unwrap();
            let reps = box_representatives(&d, p);
            assert_eq!(reps.len(), n, "{label}");
            assert!(reps.iter().all(|l| is_regular(&d, l, p)));
        }
    }
}
