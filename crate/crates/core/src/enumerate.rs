//! Exhaustive enumeration of the extended EL-charts with a given Hodge point.
//!
//! Candidate types come from the comparison `mu'_dom ⪯ mu` and the partial-sum
//! condition on orbit sums. For a fixed type the chart is determined, and the
//! components of `phi` are independent, so extensions are searched per
//! component and combined as a cartesian product.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::chart::{type_partial_sums_ok, ELChart};
use crate::coweight::{dominance_leq_int, kappa_match, GCocharacter, SuperbasicDatum};
use crate::error::{Error, Result};
use crate::extended::{ExtendedELChart, Strand, ABSENT};

fn check_instance(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<()> {
    if (mu.d(), mu.h()) != (datum.d(), datum.h()) {
        return Err(Error::Shape(format!(
            "mu has shape {}x{}, datum has {}x{}",
            mu.d(),
            mu.h(),
            datum.d(),
            datum.h()
        )));
    }
    if !mu.is_dominant() {
        return Err(Error::InvalidInput(format!("{mu} is not dominant")));
    }
    if !mu.is_nonnegative() {
        return Err(Error::InvalidInput(format!("{mu} has a negative entry")));
    }
    if !kappa_match(mu, datum) {
        return Err(Error::KappaMismatch {
            mu_sum: mu.total(),
            kappa: datum.m(),
        });
    }
    Ok(())
}

/// All `lambda` with `sort(lambda) ⪯ row`. Entries of such a `lambda` lie
/// between the smallest and largest entry of `row`.
pub fn dominated_rearrangements(row: &[i64]) -> Vec<Vec<i64>> {
    let h = row.len();
    let (lo, hi) = row
        .iter()
        .copied()
        .minmax()
        .into_option()
        .expect("nonempty row");
    let total: i64 = row.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(h);
    fn rec(
        cur: &mut Vec<i64>,
        h: usize,
        lo: i64,
        hi: i64,
        left: i64,
        row: &[i64],
        out: &mut Vec<Vec<i64>>,
    ) {
        let slots = (h - cur.len()) as i64;
        if slots == 0 {
            if left == 0 {
                let mut sorted = cur.clone();
                sorted.sort_unstable();
                if dominance_leq_int(&sorted, row) {
                    out.push(cur.clone());
                }
            }
            return;
        }
        for v in lo..=hi {
            let rest = left - v;
            if rest < lo * (slots - 1) || rest > hi * (slots - 1) {
                continue;
            }
            cur.push(v);
            rec(cur, h, lo, hi, rest, row, out);
            cur.pop();
        }
    }
    rec(&mut cur, h, lo, hi, total, row, &mut out);
    out
}

/// Types `mu'` of normalized charts that can carry an extension with Hodge
/// point `mu`, in lexicographic order.
pub fn candidate_types(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<Vec<GCocharacter>> {
    check_instance(mu, datum)?;
    let per_row: Vec<Vec<Vec<i64>>> = mu.rows().map(dominated_rearrangements).collect();
    let mut out: Vec<GCocharacter> = per_row
        .into_iter()
        .multi_cartesian_product()
        .map(|rows| GCocharacter::from_rows(&rows).expect("rows share a shape"))
        .filter(|t| type_partial_sums_ok(t, datum.m()))
        .collect();
    out.sort();
    Ok(out)
}

/// A single-component extension: the low table and its share of `|V|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandExtension {
    pub table: Vec<i64>,
    pub v_count: usize,
}

/// All `phi` tables on one component whose Hodge row is `target`, sorted.
///
/// Members are assigned in decreasing order, so that the counting axiom at
/// `a` only involves values already fixed.
pub fn strand_extensions(strand: &Strand, target: &[i64]) -> Vec<StrandExtension> {
    let order: Vec<i64> = strand.low_elements().into_iter().rev().collect();
    let mut table = vec![ABSENT; strand.table_len()];
    let mut out = Vec::new();
    search(strand, target, &order, 0, -1, &mut table, &mut out);
    out.sort_by(|x, y| x.table.cmp(&y.table));
    out
}

fn search(
    strand: &Strand,
    target: &[i64],
    order: &[i64],
    idx: usize,
    max_assigned: i64,
    table: &mut [i64],
    out: &mut Vec<StrandExtension>,
) {
    let h = strand.h();
    if idx == order.len() {
        let view = strand.view(table);
        if view.hodge_row().is_ok_and(|row| row == target) {
            out.push(StrandExtension {
                table: table.to_vec(),
                v_count: view.v_count(),
            });
        }
        return;
    }
    let a = order[idx];
    let slot = (a - strand.min()) as usize;
    let above = strand.view(table).phi_or_min(a + h);
    let cap = strand.height_of_f(a).min(above - 1);
    for v in 0..=cap {
        table[slot] = v;
        let top = max_assigned.max(v);
        let view = strand.view(table);
        let counting_ok = (0..=top).all(|n| view.count_ge(a, n) <= view.count_ge(a + h, n + 1));
        if counting_ok {
            search(strand, target, order, idx + 1, top, table, out);
        }
    }
    table[slot] = ABSENT;
}

/// Everything found for one candidate type.
#[derive(Debug, Clone)]
pub struct TypeExtensions {
    pub mu_prime: GCocharacter,
    pub chart: ELChart,
    /// Per component, the admissible tables in canonical order.
    pub per_strand: Vec<Vec<StrandExtension>>,
}

impl TypeExtensions {
    pub fn chart_count(&self) -> usize {
        self.per_strand.iter().map(Vec::len).product()
    }

    /// Largest `|V|` over the extensions of this type.
    pub fn max_dim(&self) -> Option<usize> {
        self.per_strand
            .iter()
            .map(|exts| exts.iter().map(|e| e.v_count).max())
            .sum()
    }

    /// Number of extensions reaching `dim`.
    pub fn count_at(&self, dim: usize) -> usize {
        if self.max_dim() != Some(dim) {
            return 0;
        }
        self.per_strand
            .iter()
            .map(|exts| {
                let best = exts.iter().map(|e| e.v_count).max().unwrap_or(0);
                exts.iter().filter(|e| e.v_count == best).count()
            })
            .product()
    }

    fn build(&self, choice: &[&StrandExtension]) -> ExtendedELChart {
        ExtendedELChart::new(
            self.chart.clone(),
            choice.iter().map(|e| e.table.clone()).collect(),
        )
        .expect("tables come from this chart")
    }

    /// All charts of this type, in canonical order.
    pub fn charts(&self) -> impl Iterator<Item = (ExtendedELChart, usize)> + '_ {
        self.per_strand
            .iter()
            .map(|exts| exts.iter())
            .multi_cartesian_product()
            .map(|choice| (self.build(&choice), choice.iter().map(|e| e.v_count).sum()))
    }

    /// The charts of this type attaining `dim`.
    pub fn charts_at(&self, dim: usize) -> Vec<ExtendedELChart> {
        if self.max_dim() != Some(dim) {
            return Vec::new();
        }
        self.per_strand
            .iter()
            .map(|exts| {
                let best = exts.iter().map(|e| e.v_count).max().unwrap_or(0);
                exts.iter()
                    .filter(move |e| e.v_count == best)
                    .collect::<Vec<_>>()
            })
            .multi_cartesian_product()
            .map(|choice| self.build(&choice))
            .collect()
    }
}

/// Extensions with Hodge point `mu` of the chart of type `mu_prime`.
pub fn type_extensions(
    mu_prime: &GCocharacter,
    mu: &GCocharacter,
    datum: &SuperbasicDatum,
) -> Result<TypeExtensions> {
    let chart = ELChart::from_type(mu_prime, datum)?;
    let d = datum.d();
    let per_strand = (0..d)
        .map(|tau| strand_extensions(&Strand::new(&chart, tau), mu.row((tau + 1) % d)))
        .collect();
    Ok(TypeExtensions {
        mu_prime: mu_prime.clone(),
        chart,
        per_strand,
    })
}

/// All extended EL-charts `(A, phi)` with `phi` of Hodge point `mu`,
/// grouped by type.
pub fn search_all(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<Vec<TypeExtensions>> {
    let types = candidate_types(mu, datum)?;
    let found = types
        .par_iter()
        .map(|t| type_extensions(t, mu, datum))
        .collect::<Result<Vec<_>>>()?;
    let found: Vec<_> = found.into_iter().filter(|t| t.chart_count() > 0).collect();
    if found.is_empty() {
        return Err(Error::Internal(format!(
            "no extended EL-chart for {mu} although the Kottwitz condition holds"
        )));
    }
    Ok(found)
}

/// Counts from an enumeration, without materializing the charts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub type_count: usize,
    pub chart_count: usize,
    pub max_dim: usize,
    pub top_count: usize,
}

impl EnumerationSummary {
    pub fn from_types(types: &[TypeExtensions]) -> Self {
        let max_dim = types
            .iter()
            .filter_map(TypeExtensions::max_dim)
            .max()
            .unwrap_or(0);
        EnumerationSummary {
            type_count: types.len(),
            chart_count: types.iter().map(TypeExtensions::chart_count).sum(),
            max_dim,
            top_count: types.iter().map(|t| t.count_at(max_dim)).sum(),
        }
    }
}

pub fn summarize(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<EnumerationSummary> {
    Ok(EnumerationSummary::from_types(&search_all(mu, datum)?))
}

/// The full list of charts for `mu` with their `|V|`.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub mu: GCocharacter,
    pub datum: SuperbasicDatum,
    pub charts: Vec<ExtendedELChart>,
    pub dims: Vec<usize>,
    pub max_dim: usize,
}

/// Every extended EL-chart with Hodge point `mu`, ordered by type and then by
/// the `phi` tables.
pub fn enumerate_charts(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<EnumerationResult> {
    let types = search_all(mu, datum)?;
    let (charts, dims): (Vec<_>, Vec<_>) = types.iter().flat_map(TypeExtensions::charts).unzip();
    let max_dim = dims.iter().copied().max().unwrap_or(0);
    Ok(EnumerationResult {
        mu: mu.clone(),
        datum: datum.clone(),
        charts,
        dims,
        max_dim,
    })
}

/// `max |V(A, phi)|` over all extended EL-charts for `mu`.
pub fn dimension(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<i64> {
    Ok(summarize(mu, datum)?.max_dim as i64)
}

/// The charts with maximal `|V|`.
pub fn top_charts(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<Vec<ExtendedELChart>> {
    let types = search_all(mu, datum)?;
    let best = EnumerationSummary::from_types(&types).max_dim;
    Ok(types.iter().flat_map(|t| t.charts_at(best)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[i64]]) -> GCocharacter {
        GCocharacter::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn std_datum(mu: &GCocharacter) -> SuperbasicDatum {
        SuperbasicDatum::for_mu(mu).unwrap()
    }

    #[test]
    fn dominated_rows() {
        let mut r = dominated_rearrangements(&[0, 2]);
        r.sort();
        assert_eq!(r, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(dominated_rearrangements(&[0, 0, 1]).len(), 3);
    }

    #[test]
    fn candidate_type_examples() {
        let mu = g(&[&[0, 1]]);
        assert_eq!(
            candidate_types(&mu, &std_datum(&mu)).unwrap(),
            vec![mu.clone()]
        );
        // (0,1,0) has first two partial sums 0 and 1, and 1 > 2/3.
        let mu = g(&[&[0, 0, 1]]);
        assert_eq!(
            candidate_types(&mu, &std_datum(&mu)).unwrap(),
            vec![mu.clone()]
        );
        let neg = g(&[&[-1, 2]]);
        let dat = SuperbasicDatum::new(1, 2, vec![1]).unwrap();
        assert!(matches!(
            candidate_types(&neg, &dat),
            Err(Error::InvalidInput(_))
        ));
        let wrong = SuperbasicDatum::new(1, 2, vec![3]).unwrap();
        assert!(matches!(
            candidate_types(&g(&[&[0, 1]]), &wrong),
            Err(Error::KappaMismatch { .. })
        ));
    }

    #[test]
    fn single_chart_for_minimal_case() {
        let mu = g(&[&[0, 1]]);
        let res = enumerate_charts(&mu, &std_datum(&mu)).unwrap();
        assert_eq!(res.charts.len(), 1);
        assert!(res.charts[0].is_cyclic());
        assert_eq!(res.max_dim, 0);
    }

    #[test]
    fn dimension_examples() {
        for (mu, dim) in [
            (g(&[&[0, 1]]), 0),
            (g(&[&[0, 1, 3]]), 2),
            (g(&[&[0, 1], &[0, 0]]), 0),
        ] {
            assert_eq!(dimension(&mu, &std_datum(&mu)).unwrap(), dim, "{mu}");
        }
    }

    #[test]
    fn enumerated_charts_are_sound() {
        let mu = g(&[&[0, 1, 3]]);
        let res = enumerate_charts(&mu, &std_datum(&mu)).unwrap();
        assert!(res.charts.len() > 1);
        for (ext, &dim) in res.charts.iter().zip(&res.dims) {
            assert!(ext.is_valid(), "{ext}");
            assert_eq!(ext.hodge_point().unwrap(), mu);
            assert_eq!(ext.v_dim(), dim);
        }
        let keys: Vec<_> = res.charts.iter().map(|c| c.canonical_key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cyclic_chart_is_top() {
        let mu = g(&[&[0, 1, 3]]);
        let datum = std_datum(&mu);
        let cyclic = ExtendedELChart::cyclic(&ELChart::from_type(&mu, &datum).unwrap());
        assert!(top_charts(&mu, &datum).unwrap().contains(&cyclic));
    }

    #[test]
    fn minuscule_d1_is_singleton() {
        let mu = g(&[&[0, 0, 1, 1, 1]]);
        let datum = std_datum(&mu);
        assert_eq!(top_charts(&mu, &datum).unwrap().len(), 1);
        assert!(enumerate_charts(&mu, &datum)
            .unwrap()
            .charts
            .iter()
            .all(|c| c.is_cyclic()));
    }

    #[test]
    fn several_top_charts_for_two_nonconstant_rows() {
        let mu = g(&[&[0, 0, 1], &[0, 0, 1]]);
        assert!(top_charts(&mu, &std_datum(&mu)).unwrap().len() >= 2);
    }
}
