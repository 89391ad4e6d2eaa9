//! `x1` as a function of `x1^2`: the origin is a bad translation, a random
//! point is good, and Newton lifting agrees with the linear solve.

use rankpit::algdep::{
    dependent_annihilators, is_good_translation, newton_reconstruct, reconstruct_dependence, sample_good_translation,
    TranslationSampler,
};
use rankpit::{Domain, Polynomial, Result};

pub fn run_example() -> Result<bool> {
    let q = Domain::rational();
    let e2 = vec![Polynomial::parse(q, Some(1), "x1^2")?, Polynomial::parse(q, Some(1), "x1")?];
    let basis = [0];
    let anns = dependent_annihilators(&e2, &basis)?;
    println!("A(z, y) = {}", anns[0].1.r.to_text("z"));
    println!("origin good: {}", is_good_translation(&e2, &basis, &anns, &[q.zero()])?);

    let sampler = TranslationSampler::new(2, 1, 2, 7);
    let tr = sample_good_translation(&e2, &basis, &sampler)?;
    let w = reconstruct_dependence(&e2, &basis, &tr.point, None)?;
    println!(
        "a = {} after {} attempts, F = {}",
        q.format(&tr.point[0]),
        tr.attempts,
        w.f[&1].to_text("z")
    );
    let newton = newton_reconstruct(&e2, &basis, &tr.point, 1)?;
    let agrees = newton.series == e2[1].translate(&tr.point)?;
    println!("newton: {} iterations, agrees {agrees}", newton.iterations);
    Ok(w.verify(&e2)? && agrees)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
