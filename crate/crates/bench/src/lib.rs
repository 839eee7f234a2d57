//! Named instances shared by the benchmarks.

use adlv_core::{GCocharacter, SuperbasicDatum};

/// A benchmark input: a label, `mu` and its standard datum.
pub struct Instance {
    pub label: &'static str,
    pub mu: GCocharacter,
    pub datum: SuperbasicDatum,
}

fn instance(label: &'static str, rows: &[&[i64]]) -> Instance {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    let mu = GCocharacter::from_rows(&rows).expect("fixture rows share a length");
    let datum = SuperbasicDatum::for_mu(&mu).expect("fixture totals are prime to h");
    Instance { label, mu, datum }
}

/// Instances of growing size, from a handful of charts to several hundred.
pub fn enumeration_instances() -> Vec<Instance> {
    vec![
        instance("d1_h3", &[&[0, 1, 3]]),
        instance("d2_h3", &[&[0, 1, 3], &[0, 2, 2]]),
        instance("d3_h2", &[&[0, 3], &[1, 2], &[0, 1]]),
        instance("d2_h4", &[&[0, 1, 2, 4], &[0, 1, 2, 3]]),
        instance("d1_h5", &[&[0, 2, 4, 6, 9]]),
    ]
}
