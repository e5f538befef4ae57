#![allow(dead_code)]

use eigenbench::harmonium_rpm::RadialProblem;
use eigenbench::numerics::{quadrature, BigReal, Precision};

/// Published ground energies, `(k, E0)`.
pub const TABLE1: [(&str, &str); 14] = [
    ("0.25", "2"),
    ("0.23", "1.9273546297410884205"),
    ("0.20", "1.8116899843671347580"),
    ("0.18", "1.7292911575097244563"),
    ("0.15", "1.5958054174355393322"),
    ("0.10", "1.3360503187251752778"),
    ("0.09", "1.2760601721269501937"),
    ("0.05", "0.98925143507101418781"),
    ("0.04", "0.89879859060929913976"),
    ("0.026", "0.74778853894031961765"),
    ("0.01", "0.5"),
    ("0.004", "0.34224945694769201625"),
    ("0.0013", "0.21689817637450858280"),
    ("0.0012", "0.21004123606565067787"),
];

pub fn rel_diff(a: &BigReal, b: &BigReal) -> BigReal {
    ((a - b) / b).abs()
}

pub fn problem(lambda: BigReal) -> RadialProblem {
    RadialProblem::new(lambda).unwrap()
}

/// `λ = k^(-1/4)`
pub fn lambda_for_k(k: &str, p: Precision) -> BigReal {
    BigReal::parse(k, p).unwrap().sqrt().sqrt().recip()
}

/// Which integral of the Gaussian-monomial basis to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    Overlap,
    Kinetic,
    Potential,
}

/// One basis integral by direct quadrature on `[0, 40]`, to an absolute
/// tolerance `rel_tol` times the largest moment involved.
pub fn element_quadrature(
    which: Element,
    i: usize,
    j: usize,
    lambda: &BigReal,
    rel_tol: i32,
    p: Precision,
) -> BigReal {
    let zero = BigReal::zero(p);
    let forty = BigReal::from_i64(40, p);
    let gauss = |q: &BigReal| (-(q * q) / 4).exp();
    let f = |n: usize, q: &BigReal| q.powi(n as u32) * gauss(q);
    // f_n' = (n q^(n-1) - q^(n+1)/2) e^(-q²/4)
    let df = |n: usize, q: &BigReal| {
        let lead = if n == 0 {
            BigReal::zero(p)
        } else {
            q.powi(n as u32 - 1) * (n as i64)
        };
        (lead - q.powi(n as u32 + 1) / 2) * gauss(q)
    };
    let tol = moment_scale(i + j + 4, p) * BigReal::pow10(rel_tol, p);
    let v = match which {
        Element::Overlap => quadrature(|q| f(i, q) * f(j, q) * q * q, &zero, &forty, &tol),
        Element::Kinetic => quadrature(|q| df(i, q) * df(j, q) * q * q, &zero, &forty, &tol),
        Element::Potential => quadrature(
            |q| {
                let pot = q * q / 4 + &(lambda / q);
                pot * f(i, q) * f(j, q) * q * q
            },
            &zero,
            &forty,
            &tol,
        ),
    };
    v.unwrap()
}

/// `(S, T, V)` by quadrature, to `1e-24` of the largest moment.
pub fn element_oracle(
    i: usize,
    j: usize,
    lambda: &BigReal,
    p: Precision,
) -> (BigReal, BigReal, BigReal) {
    (
        element_quadrature(Element::Overlap, i, j, lambda, -24, p),
        element_quadrature(Element::Kinetic, i, j, lambda, -24, p),
        element_quadrature(Element::Potential, i, j, lambda, -24, p),
    )
}

/// Rough size of `M(n)`: `(n-1)!!`, at least one.
pub fn moment_scale(n: usize, p: Precision) -> BigReal {
    let mut acc = BigReal::one(p);
    let mut k = n as i64 - 1;
    while k > 1 {
        acc = acc * k;
        k -= 2;
    }
    acc
}
