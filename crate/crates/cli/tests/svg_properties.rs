use adlv_cli::svg::pairing_figure;
use adlv_core::coweight::{int, rat};
use adlv_core::{pairing, Rational, RelCocharacter};
use proptest::prelude::*;

/// `(lower, upper)` with `lower ⪯ upper` and `upper` integral.
fn valid_pair() -> impl Strategy<Value = (RelCocharacter, RelCocharacter)> {
    (1usize..=7)
        .prop_flat_map(|h| {
            (
                prop::collection::vec(-4i64..=4, h),
                prop::collection::vec((0i64..=9, 1i64..=5, any::<bool>()), h),
            )
        })
        .prop_map(|(upper, moves)| {
            let mut lower: Vec<Rational> = upper.iter().map(|&x| int(x)).collect();
            for (j, &(n, d, on)) in moves.iter().enumerate().take(upper.len() - 1) {
                if on {
                    lower[j] += rat(n, d);
                    lower[j + 1] -= rat(n, d);
                }
            }
            (RelCocharacter(lower), RelCocharacter::from_ints(&upper))
        })
}

proptest! {
    #[test]
    fn dot_count_is_the_pairing((lower, upper) in valid_pair()) {
        let fig = pairing_figure(&lower, &upper).unwrap();
        let dots = fig.svg.matches("<circle").count() as i64;
        prop_assert_eq!(dots, pairing(&lower, &upper));
        prop_assert_eq!(fig.points.len() as i64, dots);
    }
}
