//! Closed forms used by the pipelines against brute-force finite-field data.

mod common;

use num_bigint::BigInt;
use quiverdt::fforacle::group::glv_order;
use quiverdt::fforacle::{
    fixed_count, inner_product, multiplicity_oracle, ClassFunction, ClassTable, Fq, GroupElement,
    Which, DEFAULT_BUDGET,
};
use quiverdt::invariants::{dt_invariants, kac_polynomials};
use quiverdt::numkernel::{CyclotomicNumber, Q};
use quiverdt::parttype::centralizer_poly_type;

use common::{corpus, vectors_up_to};

const FIELDS: [u32; 3] = [2, 3, 4];

#[test]
fn class_sizes_sum_to_group_order() {
    for (_, gamma) in corpus() {
        for v in vectors_up_to(gamma.r(), 3) {
            for q in FIELDS {
                let f = Fq::new(q).unwrap();
                let table = ClassTable::by_classes(&v, &f, DEFAULT_BUDGET).unwrap();
                let total: BigInt = table.classes.iter().map(|c| &c.size).sum();
                assert_eq!(total, glv_order(&v, q), "v={v:?} q={q}");
            }
        }
    }
}

#[test]
fn centralizers_match_type_polynomial() {
    for v in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1]] {
        for q in FIELDS {
            let f = Fq::new(q).unwrap();
            let table = ClassTable::by_classes(&v, &f, DEFAULT_BUDGET).unwrap();
            for c in &table.classes {
                let z = centralizer_poly_type(&c.omega).eval(&Q::from_integer(q.into()));
                assert_eq!(
                    z,
                    Q::from_integer(c.centralizer.clone()),
                    "{} at q={q}",
                    c.omega
                );
            }
        }
    }
}

/// Fixed points of a class on representations factor over Frobenius orbits,
/// each orbit of degree `d` contributing `q^{d * sum_{i->j} <h_i, h_j>}`.
#[test]
fn fixed_counts_factor_over_frobenius_orbits() {
    for (name, gamma) in corpus() {
        for v in vectors_up_to(gamma.r(), 3) {
            let q = 3;
            let f = Fq::new(q).unwrap();
            let table = ClassTable::by_classes(&v, &f, DEFAULT_BUDGET).unwrap();
            for c in &table.classes {
                let exponent: usize = c
                    .omega
                    .entries()
                    .map(|(d, mu, m)| d * m * gamma.hua_exponent(mu))
                    .sum();
                let expected = BigInt::from(q).pow(exponent as u32);
                assert_eq!(
                    fixed_count(&gamma, &f, &c.representative),
                    expected,
                    "{name} v={v:?} class {}",
                    c.omega
                );
            }
        }
    }
}

#[test]
fn steinberg_character_sanity() {
    for (v, q) in [
        (vec![2], 2),
        (vec![2], 3),
        (vec![3], 2),
        (vec![1, 2], 3),
        (vec![2, 2], 2),
    ] {
        let f = Fq::new(q).unwrap();
        let table = ClassTable::by_classes(&v, &f, DEFAULT_BUDGET).unwrap();
        let st = ClassFunction::steinberg(&table);
        let one = ClassFunction::trivial(&table);
        assert_eq!(
            inner_product(&table, &st, &st).unwrap(),
            CyclotomicNumber::from_int(1)
        );
        assert_eq!(
            inner_product(&table, &st, &one).unwrap(),
            CyclotomicNumber::from_int(0)
        );
        let identity = table
            .classes
            .iter()
            .position(|c| c.representative == GroupElement::identity(&v))
            .expect("identity class");
        let exponent: usize = v.iter().map(|n| n * (n - 1) / 2).sum();
        let expected = Q::from_integer(BigInt::from(q).pow(exponent as u32));
        assert_eq!(
            st.values[identity],
            CyclotomicNumber::from_rational(expected)
        );
    }
}

/// `A_v(q)` and `DT_v(q)` at the smallest admissible `q` equal the inner
/// products with the generic linear character.
#[test]
fn specialization_across_corpus() {
    for (name, gamma) in corpus() {
        for v in vectors_up_to(gamma.r(), 3) {
            let n: usize = v.iter().sum();
            let q = quiverdt::cli::auto_q(n, 9).unwrap();
            let f = Fq::new(q).unwrap();
            let table = ClassTable::by_classes(&v, &f, DEFAULT_BUDGET).unwrap();
            let qq = Q::from_integer(q.into());
            let a = kac_polynomials(&gamma, &v).unwrap()[&v].eval(&qq).unwrap();
            let dt = dt_invariants(&gamma, &v).unwrap()[&v].eval(&qq).unwrap();
            assert_eq!(
                multiplicity_oracle(&gamma, &table, Which::Trivial).unwrap(),
                a,
                "{name} A{v:?}({q})"
            );
            assert_eq!(
                multiplicity_oracle(&gamma, &table, Which::Steinberg).unwrap(),
                dt,
                "{name} DT{v:?}({q})"
            );
        }
    }
}
