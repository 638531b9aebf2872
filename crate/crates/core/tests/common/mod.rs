#![allow(dead_code)]

use proptest::prelude::*;
use tdi_core::polynomial::rational;
use tdi_core::{LowerSet, MultiIndex, Point, Polynomial, Rational};

pub fn dims() -> impl Strategy<Value = usize> {
    1usize..=3
}

pub fn index(dim: usize, max_entry: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max_entry, dim).prop_map(MultiIndex::new)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>())
        .prop_map(|(n, d, neg)| rational(if neg { -n } else { n }, d))
}

pub fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(small_rational(), dim).prop_map(Point::new)
}

pub fn nonzero_point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(nonzero_rational(), dim).prop_map(Point::new)
}

/// Up to `terms` terms with exponents bounded by `max_entry` per variable.
pub fn polynomial(dim: usize, max_entry: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((index(dim, max_entry), small_rational()), 0..=terms)
        .prop_map(move |t| Polynomial::from_terms(dim, t))
}

pub fn nonzero_polynomial(
    dim: usize,
    max_entry: u32,
    terms: usize,
) -> impl Strategy<Value = Polynomial> {
    polynomial(dim, max_entry, terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Finite downward closures, optionally widened by a slab.
pub fn lower_set(dim: usize) -> impl Strategy<Value = LowerSet> {
    (
        prop::collection::vec(index(dim, 4), 0..=4),
        prop::option::of((0..dim, 0u32..=3)),
    )
        .prop_map(move |(gens, slab)| {
            let base = LowerSet::downward_closure(&gens, dim).unwrap();
            match slab {
                Some((axis, bound)) => base
                    .union(&LowerSet::slab(axis, bound, dim).unwrap())
                    .unwrap(),
                None => base,
            }
        })
}

/// `cases` cases without on-disk failure persistence.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
