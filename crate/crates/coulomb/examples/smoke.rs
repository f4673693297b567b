//! End-to-end smoke: present the A1 ring, quantize a commutator, run a
//! duality check, and print everything a user would look at first.

use coulomb::rat::HalfInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theory = coulomb::theory::TorusTheory::new(1, vec![vec![1], vec![1]])?;

    let p = coulomb::find_relations(&theory, None, HalfInt::new_halves(6))?;
    println!("presentation: {}", p.render());
    let report = coulomb::verify_presentation(&p)?;
    println!("verified: {}", report.pass());

    let x = coulomb::algebra::monopole_generator(&theory, &[1])?;
    let y = coulomb::algebra::monopole_generator(&theory, &[-1])?;
    let q = x.multiply(&y, coulomb::algebra::Mode::Quantized)?;
    println!("quantized x*y = {}", q);

    let b = coulomb::lattice::IntMatrix::from_rows(&[vec![1], vec![1]])?;
    let dual = coulomb::duality_check(&b, HalfInt::new_halves(16))?;
    println!("duality: {}", dual.to_json());

    let series = coulomb::monopole_hilbert_series(
        &coulomb::monopole::NonabelianTheory::from_torus(&theory),
        HalfInt::new_halves(8),
        false,
    )?;
    println!("coulomb series:\n{}", series.render());
    Ok(())
}
