use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use orchard_core::counting::{count_3rich_formula, green_tao_bound};
use orchard_core::curve::{ProjPoint, WeierstrassCurve};
use orchard_core::field::{FieldOp, FieldSpec};
use orchard_core::orchard::{
    iso_covering_curves, lines_from_group, lines_geometric, max_points_on_a_line,
};
use orchard_core::rational::{rat_collinear, rat_reduce_mod_p, RationalPoint};

const FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    (7, 1),
    (11, 1),
    (13, 1),
    (17, 1),
    (31, 1),
];

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(FIELDS).prop_map(|(p, n)| FieldSpec::new(p, n, None).unwrap())
}

fn curve_strategy() -> impl Strategy<Value = WeierstrassCurve> {
    (field_strategy(), any::<prop::sample::Index>()).prop_map(|(f, idx)| {
        let all: Vec<WeierstrassCurve> = iso_covering_curves(&f).collect();
        all[idx.index(all.len())].clone()
    })
}

/// Determinant of three projective points over the field.
fn det(f: &FieldSpec, p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    let m = |a, b| f.arith(FieldOp::Mul, a, b).unwrap();
    let s = |a, b| f.arith(FieldOp::Sub, a, b).unwrap();
    let a = |a, b| f.arith(FieldOp::Add, a, b).unwrap();
    let [x1, y1, z1] = p.coords();
    let [x2, y2, z2] = q.coords();
    let [x3, y3, z3] = r.coords();
    let d = a(
        s(m(x1, s(m(y2, z3), m(z2, y3))), m(y1, s(m(x2, z3), m(z2, x3)))),
        m(z1, s(m(x2, y3), m(y2, x3))),
    );
    d.is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), i in any::<u32>(), j in any::<u32>(), k in any::<u32>()) {
        let q = f.order();
        let (a, b, c) = (f.element(i % q).unwrap(), f.element(j % q).unwrap(), f.element(k % q).unwrap());
        let mul = |x, y| f.arith(FieldOp::Mul, x, y).unwrap();
        let add = |x, y| f.arith(FieldOp::Add, x, y).unwrap();
        prop_assert_eq!(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
        prop_assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)));
        prop_assert_eq!(f.pow(a, q as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn group_law(e in curve_strategy(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let pts = e.points().unwrap();
        let (p, q, r) = (pts[i.index(pts.len())], pts[j.index(pts.len())], pts[k.index(pts.len())]);
        let add = |a: &ProjPoint, b: &ProjPoint| e.add(a, b).unwrap();
        prop_assert_eq!(add(&add(&p, &q), &r), add(&p, &add(&q, &r)));
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert!(add(&p, &e.neg(&p)).is_infinity());
        prop_assert!(e.scalar_mul(pts.len() as i64, &p).unwrap().is_infinity());
        prop_assert_eq!(e.order(), pts.len() as u64);
    }

    #[test]
    fn arrangement_laws(e in curve_strategy()) {
        let arr = lines_from_group(&e).unwrap();
        let f = e.field();
        let structure = e.group_structure().unwrap();
        prop_assert_eq!(arr.n_lines() as u64, count_3rich_formula(&structure).unwrap());
        prop_assert!(max_points_on_a_line(arr.points(), f).unwrap() <= 3);
        for l in arr.lines() {
            let [p, q, r] = l.map(|i| arr.points()[i]);
            prop_assert!(p != q && q != r && p != r);
            prop_assert!(det(f, &p, &q, &r));
        }
        let geo = lines_geometric(arr.points(), f).unwrap();
        prop_assert_eq!(geo.lines(), arr.lines());
        if let Ok(bound) = green_tao_bound(structure.order()) {
            let n1 = structure.as_pair().unwrap().0;
            let excess = arr.n_lines() as i64 - bound as i64;
            prop_assert_eq!(excess, if n1 % 3 == 0 { 2 } else { 0 });
        }
    }

    #[test]
    fn reduction_preserves_collinearity(
        x1 in -50i64..50, y1 in -50i64..50, dx in 1i64..20, dy in -20i64..20,
        num in -30i64..30, den in 1i64..30, p in prop::sample::select(vec![7u64, 11, 13, 17, 19, 23]),
    ) {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let lambda = r(num, den);
        prop_assume!(num != 0 && num != den);
        let a = RationalPoint::new(r(x1, 1), r(y1, 1));
        let b = RationalPoint::new(r(x1 + dx, 1), r(y1 + dy, 1));
        let c = RationalPoint::new(
            r(x1, 1) + &lambda * r(dx, 1),
            r(y1, 1) + &lambda * r(dy, 1),
        );
        prop_assert!(rat_collinear(&a, &b, &c).unwrap());
        if let Ok(red) = rat_reduce_mod_p(&[a, b, c], p) {
            let f = FieldSpec::prime(p).unwrap();
            prop_assert!(det(&f, &red[0], &red[1], &red[2]));
        }
    }
}
