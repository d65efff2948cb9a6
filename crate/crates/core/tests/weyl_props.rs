mod common;

use common::system;
use multifiber::interp::{dim_oracle, InterpConfig};
use multifiber::lattice::{reflect, weyl_generators};
use multifiber::weyl::{is_pre_standard, is_standard, standard_form, Reduction};
use proptest::prelude::*;

fn count(c: &multifiber::DivisorClassY) -> i64 {
    dim_oracle(c, &InterpConfig::default()).unwrap().dim_affine
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Reflections preserve the section count as long as the image is still
    /// an honest system (non-negative degrees and multiplicities).
    #[test]
    fn section_count_is_weyl_invariant(c in system(2..=3, 2..=6, 5, 5)) {
        let h0 = count(&c);
        prop_assume!(h0 > 0);
        for root in weyl_generators(c.n(), c.r()).unwrap() {
            let img = reflect(&c, &root).unwrap();
            if img.d().iter().all(|&x| x >= 0) && img.m().iter().all(|&x| x >= 0) {
                prop_assert_eq!(count(&img), h0, "reflection {:?}", root);
            }
        }
    }

    #[test]
    fn standard_form_keeps_sections(c in system(2..=3, 0..=6, 5, 5)) {
        let h0 = count(&c);
        match standard_form(&c).outcome {
            Reduction::Empty => prop_assert_eq!(h0, 0),
            Reduction::Final(s) => prop_assert_eq!(count(&s), h0),
        }
    }

    /// A reduction may end with a negative multiplicity, a fixed exceptional
    /// component: `(2,0)(1)` becomes `(1,0)(-1)`. Degrees stay non-negative.
    #[test]
    fn reduction_of_systems_is_pre_standard(c in system(2..=4, 0..=8, 8, 8)) {
        if let Reduction::Final(s) = standard_form(&c).outcome {
            prop_assert!(is_pre_standard(&s), "{:?}", s);
            prop_assert!(s.d().iter().all(|&x| x >= 0));
        }
    }
}

#[test]
fn reduction_can_leave_a_fixed_exceptional_component() {
    let c = multifiber::DivisorClassY::new(vec![2, 0], vec![1]).unwrap();
    let s = standard_form(&c).outcome.class().cloned().unwrap();
    assert_eq!((s.d(), s.m()), (&[1, 0][..], &[-1][..]));
    assert!(!is_standard(&s));
    assert_eq!(count(&s), count(&c));
}
