//! Instance generators for exhaustive checks.

use itertools::Itertools;
use num_integer::Integer;

use crate::coweight::{GCocharacter, SuperbasicDatum};

/// The `(d, h)` shapes of the standard test grid.
pub const STANDARD_SHAPES: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)];

/// Weakly increasing rows of length `h` with entries in `[0, max_entry]`.
pub fn dominant_rows(h: usize, max_entry: i64) -> Vec<Vec<i64>> {
    (0..=max_entry).combinations_with_replacement(h).collect()
}

/// Every dominant `mu >= 0` of shape `d x h` with entries at most `max_entry`.
pub fn dominant_cocharacters(d: usize, h: usize, max_entry: i64) -> Vec<GCocharacter> {
    let rows = dominant_rows(h, max_entry);
    std::iter::repeat_n(rows, d)
        .multi_cartesian_product()
        .map(|rows| GCocharacter::from_rows(&rows).expect("rows share a shape"))
        .collect()
}

/// Dominant `mu >= 0` with entries at most `max_entry` and total prime to `h`,
/// each paired with its standard superbasic datum.
pub fn superbasic_instances(
    d: usize,
    h: usize,
    max_entry: i64,
) -> Vec<(GCocharacter, SuperbasicDatum)> {
    dominant_cocharacters(d, h, max_entry)
        .into_iter()
        .filter(|mu| mu.total().gcd(&(h as i64)) == 1)
        .map(|mu| {
            let datum = SuperbasicDatum::for_mu(&mu).expect("total is prime to h");
            (mu, datum)
        })
        .collect()
}

/// The union of [`superbasic_instances`] over [`STANDARD_SHAPES`].
pub fn standard_grid(max_entry: i64) -> Vec<(GCocharacter, SuperbasicDatum)> {
    STANDARD_SHAPES
        .iter()
        .flat_map(|&(d, h)| superbasic_instances(d, h, max_entry))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(dominant_rows(2, 4).len(), 15);
        assert_eq!(dominant_rows(3, 4).len(), 35);
        assert_eq!(dominant_cocharacters(2, 2, 1).len(), 9);
    }

    #[test]
    fn instances_are_superbasic() {
        for (mu, datum) in superbasic_instances(2, 3, 2) {
            assert!(mu.is_dominant());
            assert_eq!(datum.m(), mu.total());
            assert_ne!(mu.total() % 3, 0);
        }
    }
}
