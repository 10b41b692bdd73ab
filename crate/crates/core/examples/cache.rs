//! Persisting periodic values between runs.
use loewy_kl::klpoly::KlCache;
use loewy_kl::loewy::layer_table;
use loewy_kl::periodic::Periodic;
use loewy_kl::{RootDatum, Weight};

fn main() -> loewy_kl::Result<()> {
    let dir = std::env::temp_dir().join("loewy-kl-example-cache");
    let cache = KlCache::new(&dir);
    let d = RootDatum::build("B2")?;
    let lambda = Weight(vec![1, 1]);

    let mut cold = Periodic::new(&d);
    cache.load_periodic(&mut cold)?;
    let t = std::time::Instant::now();
    let a = layer_table(&mut cold, &[], &lambda, 7)?;
    println!("first run {:?}", t.elapsed());
    cache.store_periodic(&cold)?;

    let mut warm = Periodic::new(&d);
    cache.load_periodic(&mut warm)?;
    let t = std::time::Instant::now();
    let b = layer_table(&mut warm, &[], &lambda, 7)?;
    println!("from {} in {:?}, identical: {}", cache.periodic_path(&d, None).display(), t.elapsed(), a == b);
    Ok(())
}
