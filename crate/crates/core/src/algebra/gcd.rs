//! Multivariate gcd over the integers. The heuristic gcd (evaluate the main
//! variable at a large integer, recurse, recover the result from its ξ-adic
//! expansion and confirm by exact division) handles almost every input; a
//! primitive pseudo-remainder sequence is the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::poly_div_exact;
use super::LaurentPoly;

/// Coefficients of `p` viewed as a univariate polynomial in `var`, indexed by
/// degree. `p` must have no negative exponents.
fn coefficients_in(p: &LaurentPoly, var: usize) -> Vec<LaurentPoly> {
    let deg = p.degree_in(var).unwrap_or(0).max(0) as usize;
    let mut out = vec![LaurentPoly::zero(p.rank()); deg + 1];
    for (e, c) in p.terms() {
        let d = e[var] as usize;
        let mut e = e.clone();
        e[var] = 0;
        out[d].add_term(e, c.clone());
    }
    out
}

fn var_power(rank: usize, var: usize, k: i64) -> Vec<i64> {
    let mut e = vec![0; rank];
    e[var] = k;
    e
}

fn first_variable(p: &LaurentPoly) -> Option<usize> {
    (0..p.rank()).find(|&v| p.terms().any(|(e, _)| e[v] != 0))
}

/// Makes the lexicographically leading coefficient positive.
pub(crate) fn normalize_sign(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

/// Content of `p` with respect to `var`: gcd of its coefficients. Once the
/// running gcd is a constant only integer contents matter.
fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut coeffs: Vec<LaurentPoly> = coefficients_in(p, var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(LaurentPoly::num_terms);
    let mut g = LaurentPoly::zero(p.rank());
    for (i, c) in coeffs.iter().enumerate() {
        if let Some(k) = g.as_constant() {
            if !k.is_zero() {
                let k = coeffs[i..].iter().fold(k, |k, c| k.gcd(&integer_content(c)));
                return LaurentPoly::constant(p.rank(), k);
            }
        }
        g = gcd(&g, c);
    }
    g
}

fn total_degree(p: &LaurentPoly) -> i64 {
    p.terms().map(|(e, _)| e.iter().sum::<i64>()).max().unwrap_or(0)
}

fn primitive_part_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    normalize_sign(poly_div_exact(p, &c).expect("content divides"))
}

/// `lc(b)^k * a mod b` in `var`, with `k` the number of reduction steps.
fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let rank = a.rank();
    let db = b.degree_in(var).unwrap_or(0);
    let lb = coefficients_in(b, var).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = coefficients_in(&r, var).pop().expect("nonzero");
        let shift = LaurentPoly::monomial(var_power(rank, var, dr - db), BigInt::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// Greatest common divisor in `Z[y_1, ..., y_n]`, normalized so that its
/// lexicographic leading coefficient is positive. Both arguments must be
/// polynomials (no negative exponents).
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let rank = a.rank();
    for (x, y) in [(a, b), (b, a)] {
        if let Some(k) = x.as_constant() {
            return LaurentPoly::constant(rank, k.gcd(&integer_content(y)));
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        // a primitive polynomial of degree one is irreducible
        if total_degree(x) == 1 {
            let cx = integer_content(x);
            let px = divide_integer(x, &cx);
            let (py, k) = match poly_div_exact(y, &px) {
                Some(q) => (normalize_sign(px), integer_content(&q)),
                None => (LaurentPoly::one(rank), integer_content(y)),
            };
            return py.scale(&cx.gcd(&k));
        }
    }
    let ka = integer_content(a);
    let kb = integer_content(b);
    let pa = divide_integer(a, &ka);
    let pb = divide_integer(b, &kb);
    let g = heuristic_gcd(&pa, &pb).unwrap_or_else(|| prs_gcd(&pa, &pb));
    normalize_sign(g.scale(&ka.gcd(&kb)))
}

fn divide_integer(p: &LaurentPoly, k: &BigInt) -> LaurentPoly {
    LaurentPoly::from_terms(p.rank(), p.terms().map(|(e, c)| (e.clone(), c / k))).expect("same rank")
}

fn max_norm(p: &LaurentPoly) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// `p` with `var` replaced by the integer `xi`.
fn evaluate(p: &LaurentPoly, var: usize, xi: &BigInt) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.rank());
    for (e, c) in p.terms() {
        let mut e = e.clone();
        let k = std::mem::take(&mut e[var]);
        out.add_term(e, c * num_traits::pow(xi.clone(), k as usize));
    }
    out
}

/// Reads every integer coefficient of `g` in balanced base `xi` and turns
/// the digits into powers of `var`.
fn interpolate(g: &LaurentPoly, var: usize, xi: &BigInt) -> LaurentPoly {
    let half = xi / 2;
    let mut out = LaurentPoly::zero(g.rank());
    for (e, c) in g.terms() {
        let mut c = c.clone();
        let mut k = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            c = (c - &d) / xi;
            let mut e = e.clone();
            e[var] = k;
            out.add_term(e, d);
            k += 1;
        }
    }
    out
}

/// Heuristic gcd of two polynomials with integer content one.
fn heuristic_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let rank = a.rank();
    let Some(var) = [first_variable(a), first_variable(b)].into_iter().flatten().min() else {
        return Some(LaurentPoly::one(rank));
    };
    let mut xi: BigInt = 2 * max_norm(a).min(max_norm(b)) + 29;
    for _ in 0..6 {
        let (ea, eb) = (evaluate(a, var, &xi), evaluate(b, var, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let h = interpolate(&gcd(&ea, &eb), var, &xi);
            if !h.is_zero() {
                let h = normalize_sign(divide_integer(&h, &integer_content(&h)));
                if poly_div_exact(a, &h).is_some() && poly_div_exact(b, &h).is_some() {
                    return Some(h);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// gcd of two nonconstant polynomials by a primitive pseudo-remainder
/// sequence in the first variable, with contents handled recursively.
fn prs_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let rank = a.rank();
    let var = match (first_variable(a), first_variable(b)) {
        (None, None) => {
            let g = a.as_constant().unwrap().gcd(&b.as_constant().unwrap());
            return LaurentPoly::constant(rank, g);
        }
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
    };
    if a.degree_in(var) == Some(0) {
        return gcd(a, &content_in(b, var));
    }
    if b.degree_in(var) == Some(0) {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content_gcd = gcd(&ca, &cb);
    let mut p = poly_div_exact(a, &ca).expect("content divides");
    let mut q = poly_div_exact(b, &cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            q = LaurentPoly::one(rank);
            break;
        }
        p = q;
        q = primitive_part_in(&r, var);
    }
    normalize_sign(&content_gcd * &primitive_part_in(&q, var))
}

/// gcd of the integer coefficients, as a `BigInt`.
pub fn integer_content(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}
