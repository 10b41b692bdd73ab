//! Ordinary affine Kazhdan-Lusztig polynomials and the spherical parabolic variant.
use loewy_kl::alcove::{element_of_word, format_word, parse_word, Alcove};
use loewy_kl::klpoly::{Flavor, KlEngine, ParabolicKl};
use loewy_kl::RootDatum;

fn main() -> loewy_kl::Result<()> {
    let d = RootDatum::build("A2")?;
    let mut eng = KlEngine::new(&d);
    let y = element_of_word(&d, &parse_word("s1s2s0s1s2s1")?)?;
    println!("P_(x,y) for y = s1s2s0s1s2s1 in affine A2:");
    for x in eng.elements_up_to(6) {
        let p = eng.kl(&x, &y);
        if !p.is_zero() && !p.is_one() {
            let word = x.alcove(&d).reduced_word(&d);
            println!("  x = {:<12} {p}", format_word(&word));
        }
    }

    let g2 = RootDatum::build("G2")?;
    let mut eng = KlEngine::new(&g2);
    let elts = eng.elements_up_to(10);
    let top = elts.last().expect("nonempty");
    let nontrivial = elts
        .iter()
        .filter(|x| {
            let p = eng.kl(x, top);
            !p.is_zero() && !p.is_one()
        })
        .count();
    println!("\nG2: {} elements of length <= 10, {nontrivial} nontrivial P_(x,y) below the last", elts.len());

    let mut sph = ParabolicKl::new(&d, Flavor::Spherical);
    sph.ensure_length(9);
    let base = Alcove::base(&d);
    let far = base.translate(&d, &d.two_rho_root());
    println!("\nspherical m(A+, A+ + 2rho) = {}", sph.poly(&base, &far));
    println!("stored: {:?} (columns, coefficients)", sph.storage());
    Ok(())
}
