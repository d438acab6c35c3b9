use std::collections::HashSet;

use ccforge_core::field::Field;
use ccforge_core::moebius::{
    default_field, fiber_points, group_closure, group_preset, search_involutions, subfield_elements, Family,
    GroupParams, MoebiusMap,
};
use ccforge_core::poly::{BinaryForm, Poly};

fn params(p: u64, m: Option<u64>, t: Option<u32>, q: Option<u64>) -> GroupParams {
    GroupParams { m, p, t, q }
}

fn order_of(family: Family, p: GroupParams) -> usize {
    let field = default_field(family, &p).unwrap();
    let g = group_preset(family, &p, &field).unwrap();
    let elems = group_closure(&g, g.expected_order as usize).unwrap();
    assert_eq!(elems.len() as u64, g.expected_order, "{family} {p:?}");
    let set: HashSet<_> = elems.iter().cloned().collect();
    for a in elems.iter().step_by(7) {
        assert!(set.contains(&a.inverse()));
        for b in elems.iter().step_by(11) {
            assert!(set.contains(&a.compose(b)));
        }
    }
    elems.len()
}

#[test]
fn cyclic_and_dihedral_orders() {
    for m in 2..=8 {
        assert_eq!(order_of(Family::C, params(0, Some(m), None, None)), m as usize);
        assert_eq!(order_of(Family::D, params(0, Some(m), None, None)), 2 * m as usize);
    }
    for p in [3, 5, 7] {
        for m in [2, 4] {
            if m % p != 0 {
                assert_eq!(order_of(Family::D, params(p, Some(m), None, None)), 2 * m as usize);
            }
        }
    }
}

#[test]
fn polyhedral_orders() {
    assert_eq!(order_of(Family::A4, params(0, None, None, None)), 12);
    assert_eq!(order_of(Family::S4, params(0, None, None, None)), 24);
    assert_eq!(order_of(Family::A5, params(0, None, None, None)), 60);
    assert_eq!(order_of(Family::A5, params(11, None, None, None)), 60);
    assert_eq!(order_of(Family::A5, params(31, None, None, None)), 60);
    assert_eq!(order_of(Family::A5, params(3, None, None, None)), 60);
    assert_eq!(order_of(Family::A4, params(5, None, None, None)), 12);
    assert_eq!(order_of(Family::S4, params(7, None, None, None)), 24);
}

#[test]
fn klein_four_over_q() {
    let q = Field::rationals();
    let g = group_preset(Family::D, &params(0, Some(2), None, None), &q).unwrap();
    let elems = group_closure(&g, 4).unwrap();
    let expect: HashSet<MoebiusMap> = [[1, 0, 0, 1], [-1, 0, 0, 1], [0, 1, 1, 0], [0, -1, 1, 0]]
        .into_iter()
        .map(|m| MoebiusMap::from_i64s(&q, m).unwrap())
        .collect();
    assert_eq!(elems.into_iter().collect::<HashSet<_>>(), expect);
}

#[test]
fn cyclic_four_over_gaussian_rationals() {
    let qi = Field::cyclotomic(4).unwrap();
    let g = group_preset(Family::C, &params(0, Some(4), None, None), &qi).unwrap();
    assert_eq!(group_closure(&g, 4).unwrap().len(), 4);
}

#[test]
fn wild_orders() {
    for (p, t) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
        assert_eq!(order_of(Family::U, params(p, None, Some(t), None)), p.pow(t) as usize);
    }
    for (p, t, m) in [(3, 2, 4), (5, 1, 2), (7, 1, 3), (3, 2, 2)] {
        assert_eq!(order_of(Family::K, params(p, Some(m), Some(t), None)), (m * p.pow(t)) as usize);
    }
    for q in [3u64, 5, 7, 9] {
        let p = if q == 9 { 3 } else { q };
        assert_eq!(order_of(Family::Psl, params(p, None, None, Some(q))), (q * (q * q - 1) / 2) as usize);
        assert_eq!(order_of(Family::Pgl, params(p, None, None, Some(q))), (q * (q * q - 1)) as usize);
    }
}

#[test]
fn additive_roots_form_a_group() {
    for (p, t) in [(3, 1), (5, 1), (3, 2)] {
        let field = Field::gf(p, t).unwrap();
        let h = subfield_elements(&field, t).unwrap();
        let prod = h.iter().fold(Poly::one(&field), |acc, a| {
            acc.mul(&Poly::new(&field, vec![a.clone(), field.one()]))
        });
        let roots: HashSet<_> = h.iter().map(|a| field.neg(a)).collect();
        for r in &roots {
            assert!(field.is_zero(&prod.eval(r)));
            for s in &roots {
                assert!(roots.contains(&field.add(r, s)));
            }
        }
    }
}

#[test]
fn k_roots_stable_under_scaling_and_addition() {
    let (p, t, m) = (3u64, 2u32, 4u64);
    let field = Field::gf(p, t).unwrap();
    let pt = p.pow(t);
    let roots: HashSet<_> = field.elements().unwrap().into_iter().filter(|x| field.pow(x, pt) == *x).collect();
    let zeta = field.root_of_unity(m).unwrap();
    for r in &roots {
        assert!(roots.contains(&field.mul(r, &zeta)));
        for s in &roots {
            assert!(roots.contains(&field.add(r, s)));
        }
    }
}

#[test]
fn frozen_icosahedral_involution_is_found_by_search() {
    let field = Field::prime(31).unwrap();
    let g = group_preset(Family::A5, &params(31, None, None, None), &field).unwrap();
    let vertex_poly = Poly::from_i64s(&field, &[0, -1, 0, 0, 0, 0, 11, 0, 0, 0, 0, 1]);
    let vertices = fiber_points(&BinaryForm::from_poly(&vertex_poly, 12).unwrap()).unwrap();
    assert_eq!(vertices.len(), 12);
    let found = search_involutions(&field, &vertices, &g.generators[..1], 60).unwrap();
    assert!(found.contains(&g.generators[1]));
}
