//! Deciding whether a Laurent polynomial is divisible by `1 - z^α`.

use gkm_ktheory::algebra::{divides_binomial, is_divisible_by_binomial, one_minus_character, LaurentPoly, Weight};

fn main() {
    let alpha = Weight::new(vec![1, -1, 0]);
    let beta = Weight::new(vec![0, 1, -1]);
    let p = &LaurentPoly::var(3, 0) - &LaurentPoly::var(3, 1);
    println!("P = {p}");
    println!("1 - z^{alpha} divides P: {}", is_divisible_by_binomial(&p, &alpha).unwrap());
    println!("P / (1 - z^{alpha}) = {}", divides_binomial(&p, &alpha).unwrap().unwrap());

    // an independent factor never helps
    let q = &LaurentPoly::var(3, 2) + &LaurentPoly::one(3);
    let qb = &q * &one_minus_character(&beta);
    println!("Q = {q}: divisible {}", is_divisible_by_binomial(&q, &alpha).unwrap());
    println!("(1 - z^{beta}) Q: divisible {}", is_divisible_by_binomial(&qb, &alpha).unwrap());
}
