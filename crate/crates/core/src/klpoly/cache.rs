use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::alcove::{element_of_word, format_word, parse_word};
use crate::error::{Error, Result};
use crate::klpoly::engine::KlEngine;
use crate::klpoly::poly::HalfLaurent;
use crate::periodic::{Periodic, PeriodicTable};
use crate::rootsys::RootDatum;

const HEADER: &str = "# loewy kl-cache v1";

/// On-disk store of computed KL columns, one text file per root system.
///
/// Each record line is `x y k:c,k:c` with `x`, `y` reduced words and the polynomial
/// in doubled exponents. Lines are sorted, so saving the same table twice gives
/// identical bytes.
#[derive(Clone, Debug)]
pub struct KlCache {
    dir: PathBuf,
}

impl KlCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        KlCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, datum: &RootDatum) -> PathBuf {
        self.dir.join(format!("kl-{}.txt", datum.label))
    }

    /// A warm engine if a cache file exists, otherwise a fresh one.
    pub fn open(&self, datum: &RootDatum) -> Result<KlEngine> {
        let path = self.path_for(datum);
        if !path.exists() {
            return Ok(KlEngine::new(datum));
        }
        let file = fs::File::open(&path)?;
        read_engine(datum, BufReader::new(file))
    }

    pub fn store(&self, engine: &KlEngine) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(engine.datum());
        let tmp = path.with_extension("tmp");
        {
            let mut out = BufWriter::new(fs::File::create(&tmp)?);
            write_engine(engine, &mut out)?;
            out.flush()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

impl KlCache {
    pub fn periodic_path(&self, datum: &RootDatum, subset: Option<&[usize]>) -> PathBuf {
        match subset {
            None => self.dir.join(format!("periodic-{}.txt", datum.label)),
            Some(k) => {
                let tag: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
                self.dir.join(format!("periodic-{}-I{}.txt", datum.label, tag.join(",")))
            }
        }
    }

    /// Seeds `per` with any stored periodic memo for its root system and Levi subsets.
    pub fn load_periodic(&self, per: &mut Periodic) -> Result<()> {
        let datum = per.datum().clone();
        let r = datum.rank;
        let mut subsets: Vec<Option<Vec<usize>>> = vec![None];
        subsets.extend((1..(1usize << r) - 1).map(|m| Some((0..r).filter(|i| m >> i & 1 == 1).collect())));
        for subset in subsets {
            let path = self.periodic_path(&datum, subset.as_deref());
            if !path.exists() {
                continue;
            }
            let sub = subset.as_ref().map_or_else(|| datum.clone(), |k| datum.sub_datum(k));
            let mut table = PeriodicTable::from_text(&sub, &fs::read_to_string(&path)?)?;
            table.subset = subset;
            per.load_memo(&table)?;
        }
        Ok(())
    }

    pub fn store_periodic(&self, per: &Periodic) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let datum = per.datum();
        let mut tables = vec![(None, datum.clone(), per.memo())];
        for (k, t) in per.levi_memos() {
            let sub = datum.sub_datum(&k);
            tables.push((Some(k), sub, t));
        }
        for (subset, sub, table) in tables {
            let path = self.periodic_path(datum, subset.as_deref());
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, table.to_text(&sub))?;
            fs::rename(tmp, path)?;
        }
        Ok(())
    }
}

pub fn write_engine<W: Write>(engine: &KlEngine, out: &mut W) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "# type {}", engine.datum.label)?;
    let words: Vec<String> = engine.alcoves.iter().map(|a| format_word(&a.reduced_word(&engine.datum))).collect();
    let mut lines: Vec<(u32, u32, String)> = Vec::new();
    for (&y, col) in &engine.columns {
        for (&x, p) in &col.entries {
            lines.push((
                engine.alcoves[y as usize].hyperplane_count() as u32,
                engine.alcoves[x as usize].hyperplane_count() as u32,
                format!("{} {} {}", words[x as usize], words[y as usize], HalfLaurent::from_q_coeffs(p).to_record()),
            ));
        }
    }
    lines.sort();
    for (_, _, l) in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

pub fn read_engine<R: BufRead>(datum: &RootDatum, input: R) -> Result<KlEngine> {
    let mut engine = KlEngine::new(datum);
    let mut lines = input.lines();
    let first = lines.next().transpose()?.unwrap_or_default();
    if first.trim() != HEADER {
        return Err(Error::Parse(format!("unrecognized cache header `{first}`")));
    }
    let second = lines.next().transpose()?.unwrap_or_default();
    match second.trim().strip_prefix("# type ") {
        Some(label) if label == datum.label => {}
        _ => return Err(Error::Parse(format!("cache is not for {}: `{second}`", datum.label))),
    }
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(xw), Some(yw), Some(rec)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("bad cache line `{line}`")));
        };
        let x = engine.id_of_elt(&element_of_word(datum, &parse_word(xw)?)?);
        let y = engine.id_of_elt(&element_of_word(datum, &parse_word(yw)?)?);
        let p = HalfLaurent::from_record(rec)?;
        if !p.is_integral_polynomial() {
            return Err(Error::Parse(format!("non-polynomial entry `{rec}`")));
        }
        let dense: Vec<i64> = (0..=p.q_degree().unwrap_or(-1)).map(|k| p.coeff(2 * k)).collect();
        engine.columns.entry(y).or_default().entries.insert(x, dense);
    }
    let ids: Vec<u32> = engine.columns.keys().copied().collect();
    for y in ids {
        let ly = engine.length(y);
        let mut mu: Vec<(u32, i64)> = engine.columns[&y]
            .entries
            .iter()
            .filter_map(|(&x, p)| {
                let lx = engine.length(x);
                if lx >= ly || (ly - lx).is_multiple_of(2) {
                    return None;
                }
                p.get(((ly - lx - 1) / 2) as usize).copied().filter(|&m| m != 0).map(|m| (x, m))
            })
            .collect();
        mu.sort_unstable();
        engine.columns.get_mut(&y).expect("column present").mu = mu;
    }
    Ok(engine)
}
