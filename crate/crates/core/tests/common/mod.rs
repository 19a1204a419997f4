#![allow(dead_code)]

use quiverdt::numkernel::{Poly, RationalFunction};
use quiverdt::quivermod::Quiver;
use rand::Rng;

/// Small quivers covering loops, multiple arrows, cycles and three vertices.
pub fn corpus() -> Vec<(&'static str, Quiver)> {
    vec![
        ("arrowless(1)", Quiver::arrowless(1)),
        ("arrowless(2)", Quiver::arrowless(2)),
        ("jordan", Quiver::jordan()),
        ("loops(2)", Quiver::loops(2)),
        ("a2", Quiver::a2()),
        ("kronecker(2)", Quiver::kronecker(2)),
        ("kronecker(3)", Quiver::kronecker(3)),
        ("cycle(2)", Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap()),
        ("loop+arrow", Quiver::new(2, vec![(0, 0), (0, 1)]).unwrap()),
        ("a3", Quiver::new(3, vec![(0, 1), (1, 2)]).unwrap()),
    ]
}

/// Every `w` with `r` entries summing to exactly `n`.
pub fn compositions(r: usize, n: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(r - 1, n - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Every nonzero `w` with `r` entries and `sum w <= n`.
pub fn vectors_up_to(r: usize, n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| compositions(r, k)).collect()
}

pub fn gcd_all(v: &[usize]) -> usize {
    v.iter().fold(0, |a, &b| {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    })
}

/// A small rational function: integer numerator of degree <= 2 over one of
/// a few fixed denominators.
pub fn random_ratfun(rng: &mut impl Rng) -> RationalFunction {
    let num: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
    let den: &[i64] = match rng.gen_range(0..4) {
        0 => &[1, 1],
        1 => &[-1, 1],
        _ => &[1],
    };
    RationalFunction::new(Poly::from_ints(&num), Poly::from_ints(den))
}
