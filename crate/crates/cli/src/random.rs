use num_complex::Complex64;
use qext_core::{Expr, Generator, LaurentCoeff, Word};
use rand::Rng;

pub fn random_coeff(rng: &mut impl Rng) -> LaurentCoeff {
    let mut c = LaurentCoeff::zero();
    for _ in 0..rng.random_range(1..=3) {
        let num = loop {
            let n: i64 = rng.random_range(-9..=9);
            if n != 0 {
                break n;
            }
        };
        let den = rng.random_range(1..=5);
        let mono = LaurentCoeff::pq_pow(rng.random_range(-3..=3), rng.random_range(-3..=3));
        c = &c + &(&LaurentCoeff::rational(num, den) * &mono);
    }
    c
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Word<Generator> {
    let len = rng.random_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Generator::ALL[rng.random_range(0..Generator::ALL.len())])
            .collect(),
    )
}

/// Up to four terms, words of length at most five.
pub fn random_expr(rng: &mut impl Rng) -> Expr {
    let mut e = Expr::zero();
    for _ in 0..rng.random_range(0..=4) {
        e.add_term(random_word(rng, 5), random_coeff(rng));
    }
    e
}

/// A point with `0.1 ≤ |q| ≤ 10`.
pub fn random_q(rng: &mut impl Rng) -> Complex64 {
    let r = 10f64.powf(rng.random_range(-1.0..=1.0));
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}
