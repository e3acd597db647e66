use blockfuse::field::{FieldElement, FieldSpec};
use proptest::prelude::*;

fn element(f: &FieldSpec, digits: &[u32]) -> FieldElement {
    let p = f.p() as u64;
    let mut x = f.zero();
    let mut power = f.one();
    let t = f.generator();
    for &d in digits.iter().take(f.degree()) {
        x = f.add(&x, &f.mul(&power, &f.from_int((d as u64 % p) as i64)));
        power = f.mul(&power, &t);
    }
    x
}

fn field_strategy() -> impl Strategy<Value = (u32, usize)> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=4)
}

proptest! {
    #[test]
    fn frobenius_is_additive_and_multiplicative(
        (p, m) in field_strategy(),
        a in prop::collection::vec(0u32..7, 4),
        b in prop::collection::vec(0u32..7, 4),
    ) {
        let f = FieldSpec::new(p, m).unwrap();
        let (x, y) = (element(&f, &a), element(&f, &b));
        prop_assert_eq!(f.frobenius(&f.add(&x, &y)), f.add(&f.frobenius(&x), &f.frobenius(&y)));
        prop_assert_eq!(f.frobenius(&f.mul(&x, &y)), f.mul(&f.frobenius(&x), &f.frobenius(&y)));
        prop_assert_eq!(f.pth_root(&f.frobenius(&x)), x);
    }

    #[test]
    fn nonzero_elements_satisfy_fermat((p, m) in field_strategy(), a in prop::collection::vec(0u32..7, 4)) {
        let f = FieldSpec::new(p, m).unwrap();
        let x = element(&f, &a);
        prop_assume!(!x.is_zero());
        prop_assert_eq!(f.pow(&x, f.order() as u128 - 1), f.one());
        prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
    }
}
