//! Loewy layer tables of `∇̂_P(L̂^P(λ))` from periodic KL polynomials, with the
//! head, length and placement predictions they must satisfy.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alcove::{
    alcove_of, box_window, decompose, format_word, signed_distance, signed_distance_restricted, Alcove,
};
use crate::error::{Error, Result};
use crate::klpoly::{Flavor, HalfLaurent, ParabolicKl};
use crate::periodic::Periodic;
use crate::rootsys::{ParabolicDatum, RootDatum};
use crate::weight::Weight;

/// Socle layers with multiplicities; layer 0 is the socle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewyTable {
    pub label: String,
    /// 0-based simple-root indices of the Levi.
    pub subset: Vec<usize>,
    pub lambda: Weight,
    pub p: u64,
    pub layers: Vec<BTreeMap<Weight, u64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FactorJson {
    pub weight: Weight,
    pub alcove_word: String,
    pub mult: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LayerJson {
    pub j: usize,
    pub factors: Vec<FactorJson>,
}

/// Serialized form of a [`LoewyTable`]; `I` is 1-based.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LoewyTableJson {
    #[serde(rename = "type")]
    pub label: String,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
    pub p: u64,
    pub lambda: Weight,
    pub loewy_length: usize,
    pub layers: Vec<LayerJson>,
}

impl LoewyTable {
    pub fn new(label: &str, subset: &[usize], lambda: &Weight, p: u64) -> Self {
        LoewyTable { label: label.to_string(), subset: subset.to_vec(), lambda: lambda.clone(), p, layers: Vec::new() }
    }

    pub fn add(&mut self, j: usize, mu: Weight, mult: u64) {
        if mult == 0 {
            return;
        }
        if self.layers.len() <= j {
            self.layers.resize(j + 1, BTreeMap::new());
        }
        *self.layers[j].entry(mu).or_default() += mult;
    }

    pub fn get(&self, j: usize, mu: &Weight) -> u64 {
        self.layers.get(j).and_then(|l| l.get(mu)).copied().unwrap_or(0)
    }

    /// `1 + max j` over nonzero entries.
    pub fn loewy_length(&self) -> usize {
        self.layers.iter().rposition(|l| !l.is_empty()).map_or(0, |j| j + 1)
    }

    /// Number of composition factors, with multiplicity.
    pub fn total_factors(&self) -> u64 {
        self.layers.iter().flat_map(|l| l.values()).sum()
    }

    /// Entries `(j, μ, mult)` in layer order, weights ascending within a layer.
    pub fn entries(&self) -> Vec<(usize, Weight, u64)> {
        self.layers.iter().enumerate().flat_map(|(j, l)| l.iter().map(move |(w, m)| (j, w.clone(), *m))).collect()
    }

    /// The same table indexed from the head: radical layer `j` is socle layer `ℓℓ − 1 − j`.
    pub fn radical_layers(&self) -> Vec<BTreeMap<Weight, u64>> {
        let n = self.loewy_length();
        (0..n).map(|j| self.layers[n - 1 - j].clone()).collect()
    }

    /// Entries keyed by alcove instead of weight; comparable across primes.
    pub fn alcove_view(&self, d: &RootDatum) -> Result<BTreeMap<(usize, Alcove), u64>> {
        let mut out = BTreeMap::new();
        for (j, w, m) in self.entries() {
            out.insert((j, alcove_of(d, &w, self.p)?), m);
        }
        Ok(out)
    }

    pub fn to_json_value(&self, d: &RootDatum) -> Result<LoewyTableJson> {
        let mut layers = Vec::new();
        for (j, l) in self.layers.iter().enumerate() {
            let mut factors = Vec::new();
            for (w, &mult) in l {
                let word = match alcove_of(d, w, self.p) {
                    Ok(a) => format_word(&a.reduced_word(d)),
                    Err(_) => String::new(),
                };
                factors.push(FactorJson { weight: w.clone(), alcove_word: word, mult });
            }
            layers.push(LayerJson { j, factors });
        }
        Ok(LoewyTableJson {
            label: self.label.clone(),
            subset: self.subset.iter().map(|i| i + 1).collect(),
            p: self.p,
            lambda: self.lambda.clone(),
            loewy_length: self.loewy_length(),
            layers,
        })
    }

    pub fn to_json(&self, d: &RootDatum) -> Result<String> {
        serde_json::to_string_pretty(&self.to_json_value(d)?).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: LoewyTableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = LoewyTable::new(&v.label, &v.subset.iter().map(|i| i - 1).collect::<Vec<_>>(), &v.lambda, v.p);
        for layer in v.layers {
            for f in layer.factors {
                t.add(layer.j, f.weight, f.mult);
            }
        }
        Ok(t)
    }

    /// Flat form `j,weight,mult` with the weight written `(a;b)`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,weight,mult\n");
        for (j, w, m) in self.entries() {
            let coords: Vec<String> = w.0.iter().map(i64::to_string).collect();
            let _ = writeln!(s, "{j},({}),{m}", coords.join(";"));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let subset: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(
            s,
            "{} I={{{}}} lambda={} p={} loewy length {}",
            self.label,
            subset.join(","),
            self.lambda,
            self.p,
            self.loewy_length()
        );
        for (j, l) in self.layers.iter().enumerate() {
            let items: Vec<String> =
                l.iter().map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{m}x{w}") }).collect();
            let _ = writeln!(s, "  soc{}: {}", j + 1, items.join(" "));
        }
        s
    }

    /// Like [`LoewyTable::to_text`], with each weight followed by its alcove word.
    pub fn to_report(&self, d: &RootDatum) -> String {
        let word =
            |w: &Weight| alcove_of(d, w, self.p).map_or_else(|_| "-".to_string(), |a| format_word(&a.reduced_word(d)));
        let mut s = String::new();
        let subset: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(
            s,
            "{} I={{{}}} lambda={} [{}] p={} loewy length {}",
            self.label,
            subset.join(","),
            self.lambda,
            word(&self.lambda),
            self.p,
            self.loewy_length()
        );
        for (j, l) in self.layers.iter().enumerate() {
            let items: Vec<String> = l
                .iter()
                .map(|(w, m)| if *m == 1 { format!("{w}[{}]", word(w)) } else { format!("{m}x{w}[{}]", word(w)) })
                .collect();
            let _ = writeln!(s, "  soc{}: {}", j + 1, items.join(" "));
        }
        s
    }
}

/// Evaluates the right-hand side `Σ_ν Q^{μ,ν}(−1)^{rd_I(ν,λ)} P̂^I_{ν,λ}` and reads the
/// layer table off its coefficients.
pub fn layer_table(per: &mut Periodic, subset: &[usize], lambda: &Weight, p: u64) -> Result<LoewyTable> {
    let d = per.datum().clone();
    let pd = ParabolicDatum::new(&d, subset)?;
    let la = alcove_of(&d, lambda, p)?;
    let max_j = pd.upper_length(&d) as i64;
    let candidates = box_window(&d, lambda, p, None)?;
    let orbit = box_window(&d, lambda, p, Some(&pd.subset))?;
    let sub = d.sub_datum(&pd.subset);
    let levi_alcove = |w: &Weight| -> Result<Alcove> {
        if pd.subset.is_empty() {
            return Ok(Alcove(Vec::new()));
        }
        alcove_of(&sub, &w.project(&pd.subset), p)
    };
    let la_levi = levi_alcove(lambda)?;
    // P̂^I_{ν,λ} with signs, independent of μ
    let mut levi_terms: Vec<(Alcove, HalfLaurent)> = Vec::new();
    for nu in &orbit {
        let na = alcove_of(&d, nu, p)?;
        let p_levi = per.phat_levi(&pd.subset, &levi_alcove(nu)?, &la_levi)?;
        if p_levi.is_zero() {
            continue;
        }
        let sign = if signed_distance_restricted(&na, &la, &pd.levi_roots).rem_euclid(2) == 0 { 1 } else { -1 };
        levi_terms.push((na, p_levi.scale(sign)));
    }
    let mut table = LoewyTable::new(&d.label, &pd.subset, lambda, p);
    for mu in &candidates {
        let ma = alcove_of(&d, mu, p)?;
        let mut rhs = HalfLaurent::zero();
        for (na, term) in &levi_terms {
            let q = per.q_periodic(&ma, na)?;
            if !q.is_zero() {
                rhs += &(&q * term);
            }
        }
        let rd = signed_distance(&ma, &la);
        for &(k, c) in rhs.terms() {
            let j = rd - k;
            if c < 0 || k % 2 != 0 || j < 0 || j > max_j {
                return Err(Error::InternalInconsistency(format!(
                    "coefficient {c} at q^({k}/2) for mu = {mu} (rd = {rd})"
                )));
            }
            table.add(j as usize, mu.clone(), c as u64);
        }
    }
    Ok(table)
}

/// Predicted Loewy length `ℓ(w^I) + 1`.
pub fn predicted_loewy_length(d: &RootDatum, subset: &[usize]) -> Result<usize> {
    Ok(ParabolicDatum::new(d, subset)?.upper_length(d) + 1)
}

/// Compares the table's Loewy length with `ℓ(w^I) + 1`.
pub fn loewy_length(d: &RootDatum, table: &LoewyTable) -> Result<usize> {
    let got = table.loewy_length();
    let want = predicted_loewy_length(d, &table.subset)?;
    if got != want {
        return Err(Error::PredictionMismatch(format!("Loewy length {got}, predicted {want}")));
    }
    Ok(got)
}

/// `L̂(ν)^* = L̂(−w₀ν⁰ − pν¹)`.
pub fn dual_simple_weight(d: &RootDatum, nu: &Weight, p: u64) -> Weight {
    let dec = decompose(nu, p);
    &(-d.act(d.w0, &dec.restricted)) - &dec.upper.scale(p as i64)
}

/// Highest weight of the head: `L̂(−w_Iλ⁰ − pλ¹ + 2(p−1)ρ_P)^*`.
pub fn head_weight(d: &RootDatum, lambda: &Weight, p: u64, subset: &[usize]) -> Result<Weight> {
    let pd = ParabolicDatum::new(d, subset)?;
    let dec = decompose(lambda, p);
    let nu = &(&(-d.act(pd.w_i, &dec.restricted)) - &dec.upper.scale(p as i64)) + &pd.two_rho_p.scale(p as i64 - 1);
    Ok(dual_simple_weight(d, &nu, p))
}

/// The second displayed form of the head:
/// `w^I•λ + p(λ¹ − 2ρ_P − w_Iλ¹ + w₀((−w_I)•λ)¹ − ((−w_I)•λ)¹)`.
pub fn head_weight_second_form(d: &RootDatum, lambda: &Weight, p: u64, subset: &[usize]) -> Result<Weight> {
    let pd = ParabolicDatum::new(d, subset)?;
    let pi = p as i64;
    let l1 = decompose(lambda, p).upper;
    let rho = d.rho();
    // (−w_I)•λ = −w_I(λ+ρ) − ρ
    let minus_wi_dot = &(-d.act(pd.w_i, &(lambda + &rho))) - &rho;
    let m1 = decompose(&minus_wi_dot, p).upper;
    let twist = &(&(&(&l1 - &pd.two_rho_p) - &d.act(pd.w_i, &l1)) + &d.act(d.w0, &m1)) - &m1;
    Ok(&d.dot(pd.w_upper, lambda) + &twist.scale(pi))
}

/// A predicted factor `L((w•λ)⁰) ⊗ p(w^{-1}•(w•λ)¹)` at socle layer `ℓ(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub w: usize,
    pub word: String,
    pub weight: Weight,
    pub layer: usize,
}

pub fn wi_factor_placements(d: &RootDatum, lambda: &Weight, p: u64, subset: &[usize]) -> Result<Vec<Placement>> {
    let pd = ParabolicDatum::new(d, subset)?;
    alcove_of(d, lambda, p)?;
    let mut out: Vec<Placement> = pd
        .min_coset_reps
        .iter()
        .map(|&w| {
            let dec = decompose(&d.dot(w, lambda), p);
            let upper = d.dot(d.inv(w), &dec.upper);
            let word: String = d.weyl[w].word.iter().map(|i| format!("s{}", i + 1)).collect();
            Placement {
                w,
                word: if word.is_empty() { "e".into() } else { word },
                weight: &dec.restricted + &upper.scale(p as i64),
                layer: d.length(w),
            }
        })
        .collect();
    out.sort_by(|a, b| a.layer.cmp(&b.layer).then_with(|| a.weight.cmp(&b.weight)));
    Ok(out)
}

/// Checks every placement against the table.
pub fn verify_placements(d: &RootDatum, table: &LoewyTable) -> Result<Vec<Placement>> {
    let placements = wi_factor_placements(d, &table.lambda, table.p, &table.subset)?;
    for pl in &placements {
        if table.get(pl.layer, &pl.weight) == 0 {
            return Err(Error::PredictionMismatch(format!(
                "w = {}: expected {} in socle layer {}",
                pl.word,
                pl.weight,
                pl.layer + 1
            )));
        }
    }
    Ok(placements)
}

/// Weyl's dimension formula for `V(ν)`, `ν + ρ` dominant; zero on walls.
pub fn weyl_dimension(d: &RootDatum, nu: &Weight) -> i128 {
    let shifted = nu + &d.rho();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for b in 0..d.roots.len() {
        num *= i128::from(d.pair(&shifted.0, b));
        den *= i128::from(d.pair(&d.rho().0, b));
    }
    num / den
}

/// Dimensions of simple `G₁T`-modules `dim L̂(μ) = dim L(μ⁰)`, from the Lusztig character
/// formula in Weyl characters over the dominant alcoves below `μ⁰`.
#[derive(Clone, Debug)]
pub struct SimpleDimensions {
    datum: RootDatum,
    p: u64,
    engine: ParabolicKl,
}

impl SimpleDimensions {
    pub fn new(d: &RootDatum, p: u64) -> Self {
        SimpleDimensions { datum: d.clone(), p, engine: ParabolicKl::new(d, Flavor::Spherical) }
    }

    pub fn dim(&mut self, mu: &Weight) -> Result<u128> {
        let d = self.datum.clone();
        if d.rank == 0 {
            return Ok(1);
        }
        let restricted = decompose(mu, self.p).restricted;
        let top = alcove_of(&d, &restricted, self.p)?;
        let mut total: i128 = 0;
        for (lower, poly) in self.engine.column(&top) {
            let weight = crate::alcove::orbit_weight(&d, &restricted, self.p, &lower)?;
            let sign = if signed_distance(&lower, &top).rem_euclid(2) == 0 { 1 } else { -1 };
            total += sign * i128::from(poly.eval_one()) * weyl_dimension(&d, &weight);
        }
        u128::try_from(total).map_err(|_| Error::InternalInconsistency(format!("negative dimension for {mu}")))
    }
}

/// Socle is `{λ:1}` and the top layer is the single head factor.
pub fn head_socle_check(d: &RootDatum, table: &LoewyTable) -> Result<Weight> {
    let socle = table.layers.first().cloned().unwrap_or_default();
    if socle != BTreeMap::from([(table.lambda.clone(), 1)]) {
        return Err(Error::PredictionMismatch(format!("socle is {socle:?}, expected {{{}: 1}}", table.lambda)));
    }
    let head = head_weight(d, &table.lambda, table.p, &table.subset)?;
    let top = table.layers.last().cloned().unwrap_or_default();
    if top != BTreeMap::from([(head.clone(), 1)]) {
        return Err(Error::PredictionMismatch(format!("top layer is {top:?}, expected {{{head}: 1}}")));
    }
    Ok(head)
}

/// Every entry `(j, μ)` has `rd(μ,λ) − j` even.
pub fn parity_check(d: &RootDatum, table: &LoewyTable) -> Result<()> {
    let la = alcove_of(d, &table.lambda, table.p)?;
    for (j, mu, _) in table.entries() {
        let rd = signed_distance(&alcove_of(d, &mu, table.p)?, &la);
        if (rd - j as i64).rem_euclid(2) != 0 {
            return Err(Error::PredictionMismatch(format!("{mu} in layer {j} with rd = {rd}")));
        }
    }
    Ok(())
}

/// Outcome of [`dimension_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub lhs: u128,
    pub rhs: u128,
}

/// `Σ mult·dim L̂(μ) = p^{|R⁺∖R_I⁺|}·dim L̂^P(λ)`.
pub fn dimension_check(d: &RootDatum, table: &LoewyTable) -> Result<DimensionReport> {
    let pd = ParabolicDatum::new(d, &table.subset)?;
    let mut dims = SimpleDimensions::new(d, table.p);
    let mut lhs: u128 = 0;
    for (_, mu, m) in table.entries() {
        lhs += u128::from(m) * dims.dim(&mu)?;
    }
    let levi_dim = if pd.subset.is_empty() {
        1
    } else {
        let sub = d.sub_datum(&pd.subset);
        SimpleDimensions::new(&sub, table.p).dim(&table.lambda.project(&pd.subset))?
    };
    let upper = (d.roots.len() - pd.levi_roots.len()) as u32;
    let rhs = u128::from(table.p).pow(upper) * levi_dim;
    if lhs != rhs {
        return Err(Error::DimensionMismatch { lhs, rhs });
    }
    Ok(DimensionReport { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn sl2_baby_verma_table() {
        let d = RootDatum::build("A1").unwrap();
        let mut per = Periodic::new(&d);
        let t = layer_table(&mut per, &[], &w(&[2]), 5).unwrap();
        assert_eq!(t.entries(), vec![(0, w(&[2]), 1), (1, w(&[-4]), 1)]);
        assert_eq!(loewy_length(&d, &t).unwrap(), 2);
        assert_eq!(dimension_check(&d, &t).unwrap(), DimensionReport { lhs: 5, rhs: 5 });
        let full = layer_table(&mut per, &[0], &w(&[2]), 5).unwrap();
        assert_eq!(full.entries(), vec![(0, w(&[2]), 1)]);
    }

    #[test]
    fn head_weight_examples() {
        let d = RootDatum::build("A1").unwrap();
        assert_eq!(head_weight(&d, &w(&[2]), 5, &[]).unwrap(), w(&[-4]));
        assert_eq!(head_weight_second_form(&d, &w(&[2]), 5, &[]).unwrap(), w(&[-4]));
        assert_eq!(head_weight(&d, &w(&[2]), 5, &[0]).unwrap(), w(&[2]));
    }

    #[test]
    fn placements_a2() {
        let d = RootDatum::build("A2").unwrap();
        let pl = wi_factor_placements(&d, &w(&[0, 0]), 5, &[0]).unwrap();
        let layers: Vec<usize> = pl.iter().map(|x| x.layer).collect();
        assert_eq!(layers, vec![0, 1, 2]);
        assert_eq!(pl[0].weight, w(&[0, 0]));
        let words: Vec<&str> = pl.iter().map(|x| x.word.as_str()).collect();
        assert_eq!(words, vec!["e", "s2", "s1s2"]);
    }

    #[test]
    fn simple_dimensions() {
        let d = RootDatum::build("A1").unwrap();
        let mut dims = SimpleDimensions::new(&d, 5);
        assert_eq!(dims.dim(&w(&[2])).unwrap(), 3);
        assert_eq!(dims.dim(&w(&[-4])).unwrap(), 2);
        let d = RootDatum::build("A2").unwrap();
        let mut dims = SimpleDimensions::new(&d, 5);
        assert_eq!(dims.dim(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(dims.dim(&w(&[1, 0])).unwrap(), 3);
        assert_eq!(dims.dim(&w(&[2, 0])).unwrap(), 6);
        assert_eq!(dims.dim(&w(&[1, 1])).unwrap(), 8);
    }

    #[test]
    fn json_and_csv() {
        let d = RootDatum::build("A1").unwrap();
        let mut per = Periodic::new(&d);
        let t = layer_table(&mut per, &[], &w(&[2]), 5).unwrap();
        let js = t.to_json(&d).unwrap();
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["type"], "A1");
        assert_eq!(v["loewy_length"], 2);
        assert_eq!(v["layers"][1]["factors"][0]["weight"], serde_json::json!([-4]));
        assert_eq!(v["layers"][1]["factors"][0]["alcove_word"], "s1");
        assert_eq!(LoewyTable::from_json(&js).unwrap(), t);
        assert_eq!(t.to_csv(), "j,weight,mult\n0,(2),1\n1,(-4),1\n");
        assert_eq!(t.radical_layers()[0], t.layers[1]);
    }
}
