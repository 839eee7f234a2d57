//! The canonical deformation `(A, phi_i)` between the cyclic `phi_0` and a
//! given `phi`, and the bookkeeping of a single unit step.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::coweight::{dominance_leq_int, IndexedInt};
use crate::error::{Error, Result};
use crate::extended::{ExtendedELChart, StrandPhi, ABSENT};
use crate::polygon::pairing_int;

/// The jump points of `phi` per component, frozen from the base chart.
#[derive(Debug, Clone)]
pub struct DeformationFrame {
    base: ExtendedELChart,
    /// `x_lists[tau]`: all `a` in `A_(tau)` with `phi(a + h) > phi(a) + 1`, decreasing.
    x_lists: Vec<Vec<i64>>,
}

impl DeformationFrame {
    pub fn new(base: &ExtendedELChart) -> Self {
        let x_lists = base
            .views()
            .map(|v| {
                let h = v.strand.h();
                let mut xs: Vec<i64> = v
                    .strand
                    .low_elements()
                    .into_iter()
                    .filter(|&a| v.phi_or_min(a + h) > v.phi_or_min(a) + 1)
                    .collect();
                xs.reverse();
                xs
            })
            .collect();
        DeformationFrame {
            base: base.clone(),
            x_lists,
        }
    }

    pub fn base(&self) -> &ExtendedELChart {
        &self.base
    }

    pub fn x_list(&self, tau: usize) -> &[i64] {
        &self.x_lists[tau]
    }

    /// `(n_tau)`: the number of jump points per component.
    pub fn n_vec(&self) -> Vec<usize> {
        self.x_lists.iter().map(Vec::len).collect()
    }

    fn check_index(&self, i_vec: &[usize]) -> Result<()> {
        let n = self.n_vec();
        if i_vec.len() != n.len() || i_vec.iter().zip(&n).any(|(i, n)| i > n) {
            return Err(Error::InvalidInput(format!(
                "index {i_vec:?} outside the box [0, {n:?}]"
            )));
        }
        Ok(())
    }

    /// `phi_i`: on component `tau` equal to `phi_0` if `i_tau = 0`, to `phi`
    /// from `x_{tau, i_tau}` upward, and below it continued down by steps of one
    /// along `a, a + h, a + 2h, ...`.
    pub fn phi_index(&self, i_vec: &[usize]) -> Result<ExtendedELChart> {
        self.check_index(i_vec)?;
        let tables = self
            .base
            .views()
            .zip(i_vec)
            .map(|(view, &i)| {
                let s = view.strand;
                if i == 0 {
                    return s.cyclic_table();
                }
                let x = self.x_lists[s.tau()][i - 1];
                (s.min()..s.threshold())
                    .map(|a| {
                        if !s.contains(a) {
                            ABSENT
                        } else if a >= x {
                            view.phi_or_min(a)
                        } else {
                            let k = (x - a + s.h() - 1) / s.h();
                            view.phi_or_min(a + k * s.h()) - k
                        }
                    })
                    .collect()
            })
            .collect();
        ExtendedELChart::new(self.base.chart().clone(), tables)
    }

    /// The canonical unit-step path from `0` to `n`: components in order,
    /// each raised to its maximum before the next.
    pub fn canonical_path(&self) -> Vec<(Vec<usize>, usize)> {
        self.path_in_order(&(0..self.x_lists.len()).collect::<Vec<_>>())
    }

    /// A unit-step path that raises components in the given order.
    pub fn path_in_order(&self, order: &[usize]) -> Vec<(Vec<usize>, usize)> {
        let n = self.n_vec();
        let mut i = vec![0; n.len()];
        let mut out = Vec::new();
        for &sigma in order {
            while i[sigma] < n[sigma] {
                out.push((i.clone(), sigma));
                i[sigma] += 1;
            }
        }
        out
    }

    /// Hodge points along the canonical path.
    pub fn hodge_chain_check(&self) -> Result<HodgeChainReport> {
        let d = self.n_vec().len();
        let mut steps = Vec::new();
        for (i_vec, sigma) in self.canonical_path() {
            let before = self.phi_index(&i_vec)?;
            let mut next = i_vec.clone();
            next[sigma] += 1;
            let after = self.phi_index(&next)?;
            let x = self.x_lists[sigma][i_vec[sigma]];
            let view = self.base.view(sigma);
            let alpha = view.phi_or_min(x + view.strand.h()) - view.phi_or_min(x) - 1;
            let row = (sigma + 1) % d;
            let hb = before.hodge_point()?;
            let ha = after.hodge_point()?;
            let (rb, ra) = (hb.row(row).to_vec(), ha.row(row).to_vec());
            steps.push(ChainStep {
                i_vec,
                sigma,
                alpha,
                strict: rb != ra && dominance_leq_int(&rb, &ra),
                before: rb,
                after: ra,
            });
        }
        let start = self.phi_index(&vec![0; d])?.hodge_point()?;
        let end = self.phi_index(&self.n_vec())?.hodge_point()?;
        Ok(HodgeChainReport {
            endpoints_ok: start == self.base.type_of().mu_prime.dominant()
                && end == self.base.hodge_point()?,
            steps,
        })
    }

    /// The unit step raising `i_sigma` by one.
    pub fn step_delta(&self, i_vec: &[usize], sigma: usize) -> Result<StepRecord> {
        self.check_index(i_vec)?;
        let n = self.n_vec();
        if sigma >= n.len() || i_vec[sigma] >= n[sigma] {
            return Err(Error::InvalidInput(format!(
                "cannot step component {sigma} from {i_vec:?} inside [0, {n:?}]"
            )));
        }
        let mut next = i_vec.to_vec();
        next[sigma] += 1;
        let before = self.phi_index(i_vec)?;
        let after = self.phi_index(&next)?;
        let base = self.base.view(sigma);
        let h = base.strand.h();
        let x = self.x_lists[sigma][i_vec[sigma]];
        let alpha = base.phi_or_min(x + h) - base.phi_or_min(x) - 1;
        let height = base.strand.height(x);
        let (p, q) = (before.view(sigma), after.view(sigma));
        let px = p.phi_or_min(x);

        let changed: Vec<i64> = (0..=height).map(|k| x - k * h).collect();
        let changed_ok = (base.strand.min()..base.strand.threshold()).all(|a| {
            let (u, v) = (p.phi(a), q.phi(a));
            if changed.contains(&a) {
                u.zip(v).is_some_and(|(u, v)| u - v == alpha)
            } else {
                u == v
            }
        });

        let d = n.len();
        let row_before = before.hodge_point()?.row((sigma + 1) % d).to_vec();
        let row_after = after.hodge_point()?.row((sigma + 1) % d).to_vec();
        let count = |v: i64| row_before.iter().filter(|&&y| y == v).count() as i64;
        let mut delta = 0;
        for k in 0..alpha {
            for l in 0..=height {
                delta += count(px - k - l);
            }
        }
        delta -= alpha.min(height + 1);

        let v_before: BTreeSet<(i64, i64)> = p.v_pairs().into_iter().collect();
        let v_after: BTreeSet<(i64, i64)> = q.v_pairs().into_iter().collect();
        let gained: BTreeSet<_> = v_after.difference(&v_before).copied().collect();
        let lost: BTreeSet<_> = v_before.difference(&v_after).copied().collect();

        let d1 = d1_set(&q, x, h);
        let y = x - height * h;
        let d2 = d2_set(&p, &q, y);
        let mut d3 = BTreeSet::new();
        for b in base.strand.generators() {
            for delta_k in 0..=height {
                let c = x - delta_k * h;
                if b != y
                    && b < c
                    && q.phi_or_min(b) > q.phi_or_min(c)
                    && p.phi_or_min(b) <= p.phi_or_min(c)
                {
                    d3.insert((b, c));
                }
            }
        }

        let window = |lo: i64, hi: i64| members_with_phi_in(&p, lo, hi);
        let s1 = window(px - alpha + 1, px)
            .iter()
            .filter(|&&a| a > x + h)
            .count() as i64;
        let s2 = window(px - alpha - height, px - height - 1)
            .iter()
            .filter(|&&a| a > y)
            .count() as i64;
        let mut s3 = 0;
        for b in base.strand.generators() {
            for k in 0..=height {
                let pb = p.phi_or_min(b);
                if b != y && b < x - k * h && pb > px - k - alpha && pb <= px - k {
                    s3 += 1;
                }
            }
        }
        let c1: BTreeSet<i64> = window(px - alpha + 1, px)
            .into_iter()
            .filter(|&a| a <= x + h)
            .collect();
        let c2_shifted: BTreeSet<i64> = window(px - alpha - height, px - height - 1)
            .into_iter()
            .filter(|&a| a <= y)
            .map(|a| a + (height + 1) * h)
            .collect();
        let c3 = c1.difference(&c2_shifted).count() as i64;

        let tau_pairs = |s: BTreeSet<(i64, i64)>| -> Vec<(IndexedInt, IndexedInt)> {
            s.into_iter()
                .map(|(a, c)| (IndexedInt::new(sigma, a), IndexedInt::new(sigma, c)))
                .collect()
        };
        let d1_or_d3: BTreeSet<_> = d1.union(&d3).copied().collect();
        Ok(StepRecord {
            i_vec: i_vec.to_vec(),
            sigma,
            x: IndexedInt::new(sigma, x),
            alpha,
            height,
            delta,
            length: pairing_int(&row_before, &row_after),
            changed_ok,
            gained_matches: gained == d1_or_d3,
            lost_matches: lost == d2,
            v_diff: v_after.len() as i64 - v_before.len() as i64,
            s1,
            s2,
            s3,
            c3,
            hodge_before: row_before,
            hodge_after: row_after,
            d1: tau_pairs(d1),
            d2: tau_pairs(d2),
            d3: tau_pairs(d3),
        })
    }
}

/// Members whose `phi` lies in `[lo, hi]`, increasing.
fn members_with_phi_in(view: &StrandPhi<'_>, lo: i64, hi: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (lo.max(0)..=hi)
        .flat_map(|n| view.elements_at_level(n))
        .collect();
    out.sort_unstable();
    out
}

fn d1_set(q: &StrandPhi<'_>, x: i64, h: i64) -> BTreeSet<(i64, i64)> {
    let (top, bottom) = (q.phi_or_min(x + h), q.phi_or_min(x));
    members_with_phi_in(q, bottom + 1, top - 1)
        .into_iter()
        .filter(|&c| c > x + h)
        .map(|c| (x + h, c))
        .collect()
}

fn d2_set(p: &StrandPhi<'_>, q: &StrandPhi<'_>, y: i64) -> BTreeSet<(i64, i64)> {
    let (py, qy) = (p.phi_or_min(y), q.phi_or_min(y));
    members_with_phi_in(p, 0, py - 1)
        .into_iter()
        .filter(|&c| c > y && qy <= q.phi_or_min(c))
        .map(|c| (y, c))
        .collect()
}

/// One step of the Hodge chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub i_vec: Vec<usize>,
    pub sigma: usize,
    pub alpha: i64,
    pub before: Vec<i64>,
    pub after: Vec<i64>,
    /// The Hodge row strictly increased in the dominance order.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeChainReport {
    pub steps: Vec<ChainStep>,
    /// `phi_0` has Hodge point `mu'_dom` and `phi_n` has that of the base.
    pub endpoints_ok: bool,
}

impl HodgeChainReport {
    pub fn holds(&self) -> bool {
        self.endpoints_ok && self.steps.iter().all(|s| s.alpha <= 0 || s.strict)
    }
}

/// Everything computed for one unit step `i -> i + e_sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub i_vec: Vec<usize>,
    pub sigma: usize,
    /// The jump point that enters at this step.
    pub x: IndexedInt,
    pub alpha: i64,
    /// `height(x)`.
    pub height: i64,
    /// The transfer-length expression.
    pub delta: i64,
    /// Length between the Hodge rows before and after.
    pub length: i64,
    /// `phi` drops by exactly `alpha` on `x, x - h, ..., x - height * h` and
    /// nowhere else.
    pub changed_ok: bool,
    /// `V' \ V = D1 ∪ D3`.
    pub gained_matches: bool,
    /// `V \ V' = D2`.
    pub lost_matches: bool,
    pub v_diff: i64,
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
    pub c3: i64,
    pub hodge_before: Vec<i64>,
    pub hodge_after: Vec<i64>,
    pub d1: Vec<(IndexedInt, IndexedInt)>,
    pub d2: Vec<(IndexedInt, IndexedInt)>,
    pub d3: Vec<(IndexedInt, IndexedInt)>,
}

impl StepRecord {
    /// All identities and inequalities of the step.
    pub fn holds(&self) -> bool {
        let floor = self.alpha.min(self.height + 1);
        self.changed_ok
            && self.gained_matches
            && self.lost_matches
            && self.v_diff == (self.d1.len() + self.d3.len()) as i64 - self.d2.len() as i64
            && self.v_diff <= self.delta
            && self.delta == self.length
            && self.v_diff == self.s1 - self.s2 + self.s3
            && self.c3 >= self.s3 + floor
            && self.delta == self.s1 - self.s2 + self.c3 - floor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coweight::{GCocharacter, SuperbasicDatum};
    use crate::enumerate::enumerate_charts;

    fn g(rows: &[&[i64]]) -> GCocharacter {
        GCocharacter::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn charts(mu: &GCocharacter) -> Vec<ExtendedELChart> {
        enumerate_charts(mu, &SuperbasicDatum::for_mu(mu).unwrap())
            .unwrap()
            .charts
    }

    #[test]
    fn cyclic_frame_is_trivial() {
        for ext in charts(&g(&[&[0, 1, 3]]))
            .into_iter()
            .filter(|e| e.is_cyclic())
        {
            let frame = DeformationFrame::new(&ext);
            assert!(frame.n_vec().iter().all(|&n| n == 0));
            assert!(frame.canonical_path().is_empty());
            assert_eq!(frame.phi_index(&[0]).unwrap(), ext);
        }
    }

    #[test]
    fn endpoints() {
        let all = charts(&g(&[&[0, 1, 2, 4]]));
        let non_cyclic: Vec<_> = all.iter().filter(|e| !e.is_cyclic()).collect();
        assert!(!non_cyclic.is_empty());
        for ext in non_cyclic {
            let frame = DeformationFrame::new(ext);
            assert!(frame.n_vec()[0] > 0);
            assert_eq!(&frame.phi_index(&frame.n_vec()).unwrap(), ext);
            assert!(!frame.hodge_chain_check().unwrap().steps.is_empty());
            assert_eq!(
                frame.phi_index(&[0]).unwrap(),
                ExtendedELChart::cyclic(ext.chart())
            );
            assert!(frame.hodge_chain_check().unwrap().holds());
        }
    }

    #[test]
    fn unit_steps_balance() {
        for mu in [
            g(&[&[0, 1, 2, 4]]),
            g(&[&[0, 0, 3, 4]]),
            g(&[&[0, 3], &[0, 4]]),
        ] {
            for ext in charts(&mu) {
                let frame = DeformationFrame::new(&ext);
                for (i_vec, sigma) in frame.canonical_path() {
                    let rec = frame.step_delta(&i_vec, sigma).unwrap();
                    assert!(rec.holds(), "{mu} {ext} {rec:?}");
                }
            }
        }
    }

    #[test]
    fn out_of_range_index() {
        let ext = charts(&g(&[&[0, 1, 2, 4]]))
            .into_iter()
            .find(|e| !e.is_cyclic())
            .unwrap();
        let frame = DeformationFrame::new(&ext);
        let n = frame.n_vec()[0];
        assert!(frame.phi_index(&[n + 1]).is_err());
        assert!(frame.step_delta(&[n], 0).is_err());
    }
}
