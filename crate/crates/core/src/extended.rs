//! Extended EL-charts `(A, phi)`.
//!
//! `phi` is stored only on `A_low`, the elements of `A_(tau)` below
//! `threshold(tau) = max B_(tau) - h + 1`. Every value at or above the threshold
//! lies in `A`, so `phi(a) = height(f(a))` is forced there.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::chart::{ELChart, TypeVector};
use crate::coweight::{GCocharacter, IndexedInt};
use crate::error::{Error, Result};

/// Table entry for a value outside `A`.
pub const ABSENT: i64 = i64::MIN;

/// One Galois component of a chart, with what is needed to evaluate the
/// forced part of `phi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strand {
    tau: usize,
    h: i64,
    min: i64,
    threshold: i64,
    own: Vec<i64>,
    next: Vec<i64>,
    next_slope: i64,
}

impl Strand {
    pub fn new(chart: &ELChart, tau: usize) -> Self {
        let d = chart.d();
        let h = chart.h();
        let nt = (tau + 1) % d;
        let by_res = |t: usize| (0..h as i64).map(|r| chart.generator_for(t, r)).collect();
        Strand {
            tau,
            h: h as i64,
            min: chart.min(tau),
            threshold: chart.threshold(tau),
            own: by_res(tau),
            next: by_res(nt),
            next_slope: chart.datum().slope(nt),
        }
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// Length of a `phi` table: one slot per value in `[min, threshold)`.
    pub fn table_len(&self) -> usize {
        (self.threshold - self.min).max(0) as usize
    }

    fn res(&self, a: i64) -> usize {
        a.rem_euclid(self.h) as usize
    }

    pub fn contains(&self, a: i64) -> bool {
        a >= self.own[self.res(a)]
    }

    pub fn is_generator(&self, a: i64) -> bool {
        a == self.own[self.res(a)]
    }

    pub fn generators(&self) -> impl Iterator<Item = i64> + '_ {
        self.own.iter().copied()
    }

    /// Height of a member `a`.
    pub fn height(&self, a: i64) -> i64 {
        (a - self.own[self.res(a)]) / self.h
    }

    /// `height(f(a))` for a member `a`.
    pub fn height_of_f(&self, a: i64) -> i64 {
        let b = a + self.next_slope;
        (b - self.next[self.res(b)]) / self.h
    }

    pub fn low_elements(&self) -> Vec<i64> {
        (self.min..self.threshold)
            .filter(|&a| self.contains(a))
            .collect()
    }

    /// The cyclic table `phi_0 = height(f(.))` on `A_low`.
    pub fn cyclic_table(&self) -> Vec<i64> {
        (self.min..self.threshold)
            .map(|a| {
                if self.contains(a) {
                    self.height_of_f(a)
                } else {
                    ABSENT
                }
            })
            .collect()
    }

    pub fn view<'a>(&'a self, table: &'a [i64]) -> StrandPhi<'a> {
        StrandPhi {
            strand: self,
            table,
        }
    }
}

/// `phi` restricted to one component: a strand plus its low table.
#[derive(Debug, Clone, Copy)]
pub struct StrandPhi<'a> {
    pub strand: &'a Strand,
    pub table: &'a [i64],
}

impl StrandPhi<'_> {
    /// `phi(a)`, or `None` outside `A`.
    pub fn phi(&self, a: i64) -> Option<i64> {
        let s = self.strand;
        if !s.contains(a) {
            None
        } else if a >= s.threshold {
            Some(s.height_of_f(a))
        } else {
            Some(self.table[(a - s.min) as usize])
        }
    }

    /// `phi(a)` with `-infinity` encoded as `i64::MIN`.
    pub fn phi_or_min(&self, a: i64) -> i64 {
        self.phi(a).unwrap_or(i64::MIN)
    }

    pub fn max_low(&self) -> Option<i64> {
        self.table.iter().copied().filter(|&v| v != ABSENT).max()
    }

    /// Largest forced value on the first `h` values of the forced region.
    pub fn max_frontier(&self) -> i64 {
        let s = self.strand;
        (0..s.h)
            .map(|j| s.height_of_f(s.threshold + j))
            .max()
            .expect("h > 0")
    }

    /// `|{c >= a : phi(c) = n}|`.
    pub fn count_ge(&self, a: i64, n: i64) -> usize {
        let s = self.strand;
        let start = (a.max(s.min) - s.min) as usize;
        let mut count = self
            .table
            .get(start..)
            .map_or(0, |t| t.iter().filter(|&&v| v == n).count());
        for j in 0..s.h {
            let c = s.threshold + j;
            let k = n - s.height_of_f(c);
            if k >= 0 && c + k * s.h >= a {
                count += 1;
            }
        }
        count
    }

    /// Members `c` with `phi(c) = n`, increasing.
    pub fn elements_at_level(&self, n: i64) -> Vec<i64> {
        let s = self.strand;
        let mut out: Vec<i64> = self
            .table
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == n)
            .map(|(i, _)| s.min + i as i64)
            .collect();
        for j in 0..s.h {
            let c = s.threshold + j;
            let k = n - s.height_of_f(c);
            if k >= 0 {
                out.push(c + k * s.h);
            }
        }
        out.sort_unstable();
        out
    }

    /// Level at which every level count equals `h`.
    fn saturation_level(&self) -> i64 {
        self.max_low().unwrap_or(0).max(self.max_frontier()) + 1
    }

    /// The Hodge row: `n` occurs `|phi^{-1}(n)| - |phi^{-1}(n-1)|` times.
    pub fn hodge_row(&self) -> Result<Vec<i64>> {
        let s = self.strand;
        let h = s.h as usize;
        let mut row = Vec::with_capacity(h);
        let mut prev = 0usize;
        for n in 0..=self.saturation_level() {
            let level = self.count_ge(i64::MIN / 2, n);
            if level < prev || level > h {
                return Err(Error::Axiom(format!(
                    "level counts of component {} are not monotone at {n}",
                    s.tau
                )));
            }
            row.extend(std::iter::repeat_n(n, level - prev));
            prev = level;
            if row.len() == h {
                return Ok(row);
            }
        }
        Err(Error::Axiom(format!(
            "level counts of component {} never reach {h}",
            s.tau
        )))
    }

    /// Elements `a` for which `phi(a) - phi(a - h) > 1` is possible: the
    /// generators and the translates by `h` of low members.
    fn v_candidates(&self) -> Vec<i64> {
        let s = self.strand;
        let mut cands: Vec<i64> = s.generators().collect();
        cands.extend(
            (s.min..s.threshold)
                .filter(|&a| s.contains(a))
                .map(|a| a + s.h),
        );
        cands.sort_unstable();
        cands.dedup();
        cands
    }

    /// Calls `emit(a, c)` for every pair with `a < c` and
    /// `phi(a) > phi(c) > phi(a - h)`.
    pub fn for_each_v_pair(&self, mut emit: impl FnMut(i64, i64)) {
        let s = self.strand;
        for a in self.v_candidates() {
            let pa = self.phi_or_min(a);
            let below = self.phi_or_min(a - s.h);
            if pa <= below.saturating_add(1) {
                continue;
            }
            let lo = below.max(-1);
            for c in (a + 1).max(s.min)..s.threshold {
                let v = self.table[(c - s.min) as usize];
                if v != ABSENT && v > lo && v < pa {
                    emit(a, c);
                }
            }
            for j in 0..s.h {
                let start = s.threshold + j;
                let base = s.height_of_f(start);
                for n in (lo + 1).max(base)..pa {
                    let c = start + (n - base) * s.h;
                    if c > a {
                        emit(a, c);
                    }
                }
            }
        }
    }

    pub fn v_count(&self) -> usize {
        let mut n = 0;
        self.for_each_v_pair(|_, _| n += 1);
        n
    }

    pub fn v_pairs(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        self.for_each_v_pair(|a, c| out.push((a, c)));
        out.sort_unstable();
        out
    }

    /// Margin above the threshold that a direct scan needs to see every pair.
    pub fn required_margin(&self) -> i64 {
        let top = self
            .v_candidates()
            .into_iter()
            .filter_map(|a| self.phi(a))
            .max()
            .unwrap_or(0);
        self.strand.h * (top + 1)
    }

    /// Direct double loop over `[min, threshold + margin)`.
    pub fn v_pairs_window(&self, margin: i64) -> Vec<(i64, i64)> {
        let s = self.strand;
        let members: Vec<(i64, i64)> = (s.min..s.threshold + margin)
            .filter_map(|a| self.phi(a).map(|p| (a, p)))
            .collect();
        let mut out = Vec::new();
        for &(a, pa) in &members {
            let below = self.phi_or_min(a - s.h);
            for &(c, pc) in &members {
                if c > a && pa > pc && pc > below {
                    out.push((a, c));
                }
            }
        }
        out
    }
}

/// Which axiom of an extended EL-chart failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    /// `phi = -infinity` exactly off `A`.
    Support,
    /// `phi(a + h) >= phi(a) + 1`.
    Monotone,
    /// `0 <= phi(a) <= height(f(a))`.
    Bounded,
    /// The level-count inequality between `a` and `a + h`.
    Counting,
}

/// A single axiom failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub at: IndexedInt,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}: {}", self.axiom, self.at, self.detail)
    }
}

/// An EL-chart with a function `phi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedELChart {
    chart: ELChart,
    strands: Vec<Strand>,
    tables: Vec<Vec<i64>>,
}

impl ExtendedELChart {
    /// Wraps per-component tables on `[min, threshold)`; entries outside `A`
    /// must be [`ABSENT`]. Axioms are not checked here, see [`Self::validate`].
    pub fn new(chart: ELChart, tables: Vec<Vec<i64>>) -> Result<Self> {
        let strands: Vec<Strand> = (0..chart.d()).map(|t| Strand::new(&chart, t)).collect();
        if tables.len() != strands.len()
            || tables
                .iter()
                .zip(&strands)
                .any(|(t, s)| t.len() != s.table_len())
        {
            return Err(Error::Shape("phi tables do not match the chart".into()));
        }
        Ok(ExtendedELChart {
            chart,
            strands,
            tables,
        })
    }

    /// Builds the tables from explicit values on every element of `A_low`.
    pub fn from_entries(chart: ELChart, entries: &[(IndexedInt, i64)]) -> Result<Self> {
        let strands: Vec<Strand> = (0..chart.d()).map(|t| Strand::new(&chart, t)).collect();
        let mut tables: Vec<Vec<i64>> = strands
            .iter()
            .map(|s| vec![ABSENT; s.table_len()])
            .collect();
        for &(a, v) in entries {
            let s = strands
                .get(a.tau.0)
                .ok_or_else(|| Error::InvalidInput(format!("component of {a} out of range")))?;
            if !s.contains(a.value) || a.value >= s.threshold {
                return Err(Error::InvalidInput(format!(
                    "{a} is not a member of A below the forced threshold"
                )));
            }
            tables[a.tau.0][(a.value - s.min) as usize] = v;
        }
        for (s, t) in strands.iter().zip(&tables) {
            for a in s.low_elements() {
                if t[(a - s.min) as usize] == ABSENT {
                    return Err(Error::InvalidInput(format!(
                        "no value given for {}",
                        IndexedInt::new(s.tau, a)
                    )));
                }
            }
        }
        ExtendedELChart::new(chart, tables)
    }

    /// The unique cyclic extension `phi_0 = height(f(.))`.
    pub fn cyclic(chart: &ELChart) -> Self {
        let strands: Vec<Strand> = (0..chart.d()).map(|t| Strand::new(chart, t)).collect();
        let tables = strands.iter().map(Strand::cyclic_table).collect();
        ExtendedELChart {
            chart: chart.clone(),
            strands,
            tables,
        }
    }

    pub fn chart(&self) -> &ELChart {
        &self.chart
    }

    pub fn tables(&self) -> &[Vec<i64>] {
        &self.tables
    }

    pub fn strand(&self, tau: usize) -> &Strand {
        &self.strands[tau]
    }

    pub fn view(&self, tau: usize) -> StrandPhi<'_> {
        self.strands[tau].view(&self.tables[tau])
    }

    pub fn views(&self) -> impl Iterator<Item = StrandPhi<'_>> {
        (0..self.strands.len()).map(|t| self.view(t))
    }

    pub fn type_of(&self) -> TypeVector {
        self.chart.type_of()
    }

    /// `phi(a)`, or `None` for `-infinity`.
    pub fn phi(&self, a: IndexedInt) -> Option<i64> {
        self.strands.get(a.tau.0)?;
        self.view(a.tau.0).phi(a.value)
    }

    /// The stored values, in canonical order.
    pub fn low_entries(&self) -> Vec<(IndexedInt, i64)> {
        self.strands
            .iter()
            .zip(&self.tables)
            .flat_map(|(s, t)| {
                t.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != ABSENT)
                    .map(move |(i, &v)| (IndexedInt::new(s.tau, s.min + i as i64), v))
            })
            .collect()
    }

    /// Key for the canonical order: type first, then the tables.
    pub fn canonical_key(&self) -> (Vec<i64>, Vec<Vec<i64>>) {
        (
            self.type_of().mu_prime.entries().to_vec(),
            self.tables.clone(),
        )
    }

    /// All axiom failures; empty iff `(A, phi)` is an extended EL-chart.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for view in self.views() {
            let s = view.strand;
            let at = |a: i64| IndexedInt::new(s.tau, a);
            for (i, &v) in view.table.iter().enumerate() {
                let a = s.min + i as i64;
                if s.contains(a) != (v != ABSENT) {
                    out.push(Violation {
                        axiom: Axiom::Support,
                        at: at(a),
                        detail: if v == ABSENT {
                            "member of A without a value".into()
                        } else {
                            "value stored outside A".into()
                        },
                    });
                    continue;
                }
                if v == ABSENT {
                    continue;
                }
                let cap = s.height_of_f(a);
                if v < 0 || v > cap {
                    out.push(Violation {
                        axiom: Axiom::Bounded,
                        at: at(a),
                        detail: format!("phi = {v} outside [0, {cap}]"),
                    });
                }
                let up = view.phi_or_min(a + s.h);
                if up < v.saturating_add(1) {
                    out.push(Violation {
                        axiom: Axiom::Monotone,
                        at: at(a),
                        detail: format!("phi(a + h) = {up} < phi(a) + 1 = {}", v + 1),
                    });
                }
            }
            let top = view.max_low().unwrap_or(0).max(0) + 1;
            for a in (s.min - s.h)..s.threshold {
                for n in 0..=top {
                    let lhs = view.count_ge(a, n);
                    let rhs = view.count_ge(a + s.h, n + 1);
                    if lhs > rhs {
                        out.push(Violation {
                            axiom: Axiom::Counting,
                            at: at(a),
                            detail: format!(
                                "level {n}: {lhs} elements above a, {rhs} at level {} above a + h",
                                n + 1
                            ),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The Hodge point. The level counts of component `tau` give row `tau + 1`.
    pub fn hodge_point(&self) -> Result<GCocharacter> {
        let d = self.chart.d();
        let mut mu = GCocharacter::zero(d, self.chart.h());
        for view in self.views() {
            let row = view.hodge_row()?;
            mu.row_mut((view.strand.tau + 1) % d).copy_from_slice(&row);
        }
        Ok(mu)
    }

    /// Equality `phi = height(f(.))` everywhere.
    pub fn is_cyclic(&self) -> bool {
        self.strands
            .iter()
            .zip(&self.tables)
            .all(|(s, t)| *t == s.cyclic_table())
    }

    /// `{(a, c) : a < c, phi(a) > phi(c) > phi(a - h)}`, within components.
    pub fn v_set(&self) -> Vec<(IndexedInt, IndexedInt)> {
        self.views()
            .flat_map(|v| {
                let tau = v.strand.tau;
                v.v_pairs()
                    .into_iter()
                    .map(move |(a, c)| (IndexedInt::new(tau, a), IndexedInt::new(tau, c)))
            })
            .collect()
    }

    pub fn v_dim(&self) -> usize {
        self.views().map(|v| v.v_count()).sum()
    }

    /// Smallest margin accepted by [`Self::v_set_bruteforce`].
    pub fn required_margin(&self) -> i64 {
        self.views().map(|v| v.required_margin()).max().unwrap_or(0)
    }

    /// `v_set` by a direct double loop over `[min A, threshold + margin)`.
    pub fn v_set_bruteforce(&self, margin: i64) -> Result<Vec<(IndexedInt, IndexedInt)>> {
        let need = self.required_margin();
        if margin < need {
            return Err(Error::InvalidInput(format!(
                "window margin {margin} is below the safe bound {need}"
            )));
        }
        let mut out: Vec<_> = self
            .views()
            .flat_map(|v| {
                let tau = v.strand.tau;
                v.v_pairs_window(margin)
                    .into_iter()
                    .map(move |(a, c)| (IndexedInt::new(tau, a), IndexedInt::new(tau, c)))
            })
            .collect();
        out.sort_by(|x, y| x.0.canonical_cmp(&y.0).then(x.1.canonical_cmp(&y.1)));
        Ok(out)
    }

    /// A decomposition of each `A_(tau)` into `h` chains along which `phi`
    /// grows by one.
    pub fn adapted_family(&self) -> Result<AdaptedFamily> {
        let chains = self
            .views()
            .map(adapted_chains)
            .collect::<Result<Vec<_>>>()?;
        Ok(AdaptedFamily {
            h: self.chart.h() as i64,
            chains,
        })
    }
}

impl fmt::Display for ExtendedELChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self
            .low_entries()
            .iter()
            .map(|(a, v)| format!("{a}:{v}"))
            .join(" ");
        write!(f, "{} phi[{entries}]", self.chart)
    }
}

fn adapted_chains(view: StrandPhi<'_>) -> Result<Vec<Vec<i64>>> {
    let s = view.strand;
    let h = s.h as usize;
    let mut chains: Vec<Vec<i64>> = Vec::with_capacity(h);
    let last_level = view.saturation_level() + 1;
    for n in 0..=last_level {
        let level = view.elements_at_level(n);
        let mut used = vec![false; level.len()];
        let mut waiting = Vec::new();
        for (l, chain) in chains.iter().enumerate() {
            let next = chain.last().expect("chains are nonempty") + s.h;
            match level.binary_search(&next) {
                Ok(k) => used[k] = true,
                Err(_) => waiting.push(l),
            }
        }
        let mut extensions: Vec<(usize, i64)> = chains
            .iter()
            .enumerate()
            .filter(|(l, _)| !waiting.contains(l))
            .map(|(l, c)| (l, c.last().unwrap() + s.h))
            .collect();
        waiting.sort_by_key(|&l| std::cmp::Reverse(*chains[l].last().unwrap()));
        for l in waiting {
            let bound = chains[l].last().unwrap() + s.h;
            let pick = (0..level.len()).find(|&k| !used[k] && level[k] > bound);
            match pick {
                Some(k) => {
                    used[k] = true;
                    extensions.push((l, level[k]));
                }
                None => {
                    return Err(Error::Axiom(format!(
                        "no continuation at level {n} for the chain ending at {}",
                        IndexedInt::new(s.tau, bound - s.h)
                    )))
                }
            }
        }
        for (l, c) in extensions {
            chains[l].push(c);
        }
        for (k, &c) in level.iter().enumerate() {
            if !used[k] {
                chains.push(vec![c]);
            }
        }
        if chains.len() > h {
            return Err(Error::Axiom(format!(
                "component {} needs more than {h} chains",
                s.tau
            )));
        }
    }
    if chains.len() != h {
        return Err(Error::Axiom(format!(
            "component {} splits into {} chains instead of {h}",
            s.tau,
            chains.len()
        )));
    }
    chains.sort_unstable();
    Ok(chains)
}

/// Chains `a_0, a_1, ...` per component with `phi(a_{j+1}) = phi(a_j) + 1`,
/// and `a_{j+1} = a_j + h` whenever `phi(a_j + h) = phi(a_j) + 1`. Each stored
/// prefix continues by `+h` forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdaptedFamily {
    h: i64,
    chains: Vec<Vec<Vec<i64>>>,
}

impl AdaptedFamily {
    pub fn chains(&self, tau: usize) -> &[Vec<i64>] {
        &self.chains[tau]
    }

    /// First elements of the chains of component `tau`.
    pub fn initial_elements(&self, tau: usize) -> Vec<i64> {
        self.chains[tau].iter().map(|c| c[0]).collect()
    }

    /// Checks both chain conditions against `ext` and that the chains cover
    /// `A_(tau)` disjointly up to the stored length.
    pub fn check(&self, ext: &ExtendedELChart) -> Result<()> {
        for view in ext.views() {
            let tau = view.strand.tau;
            let mut seen = Vec::new();
            for chain in &self.chains[tau] {
                for w in chain.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let (pa, pb) = (view.phi_or_min(a), view.phi_or_min(b));
                    if pb != pa + 1 {
                        return Err(Error::Axiom(format!(
                            "chain step {a} -> {b} does not raise phi by one"
                        )));
                    }
                    let forced = view.phi_or_min(a + self.h) == pa + 1;
                    if (forced && b != a + self.h) || (!forced && b <= a + self.h) {
                        return Err(Error::Axiom(format!("chain step {a} -> {b} ignores a + h")));
                    }
                }
                seen.extend(chain.iter().copied());
            }
            let top = self.chains[tau]
                .iter()
                .map(|c| *c.last().unwrap())
                .min()
                .unwrap_or(0);
            seen.sort_unstable();
            let covered: Vec<i64> = seen.iter().copied().filter(|&a| a <= top).collect();
            let expected: Vec<i64> = (view.strand.min..=top)
                .filter(|&a| view.strand.contains(a))
                .collect();
            if covered != expected || seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Axiom(format!(
                    "chains of component {tau} do not partition A"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coweight::SuperbasicDatum;

    fn g(rows: &[&[i64]]) -> GCocharacter {
        GCocharacter::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn chart_of(mu: &GCocharacter) -> ELChart {
        let datum = SuperbasicDatum::for_mu(mu).unwrap();
        ELChart::from_type(mu, &datum).unwrap()
    }

    #[test]
    fn cyclic_phi_small() {
        let a = chart_of(&g(&[&[0, 1]]));
        let ext = ExtendedELChart::cyclic(&a);
        for v in 0..8 {
            assert_eq!(ext.phi(IndexedInt::new(0, v)), Some((v + 1) / 2));
        }
        assert_eq!(ext.phi(IndexedInt::new(0, -1)), None);
        assert!(ext.is_cyclic());
        assert!(ext.is_valid());
        assert_eq!(ext.hodge_point().unwrap(), g(&[&[0, 1]]));
        assert_eq!(ext.v_dim(), 0);
        assert!(ext
            .v_set_bruteforce(ext.required_margin())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cyclic_hodge_is_dominant_type() {
        for mu in [
            g(&[&[0, 1, 3]]),
            g(&[&[0, 0, 1], &[0, 0, 1]]),
            g(&[&[0, 1], &[0, 2]]),
        ] {
            let ext = ExtendedELChart::cyclic(&chart_of(&mu));
            assert!(ext.is_valid());
            assert_eq!(ext.hodge_point().unwrap(), mu);
        }
    }

    #[test]
    fn v_dim_of_cyclic_chart() {
        let ext = ExtendedELChart::cyclic(&chart_of(&g(&[&[0, 1, 3]])));
        assert_eq!(ext.v_dim(), 2);
        let brute = ext.v_set_bruteforce(ext.required_margin()).unwrap();
        assert_eq!(brute, ext.v_set());
    }

    #[test]
    fn bruteforce_margin_is_checked() {
        let ext = ExtendedELChart::cyclic(&chart_of(&g(&[&[0, 1, 3]])));
        let need = ext.required_margin();
        assert!(need > 0);
        assert!(ext.v_set_bruteforce(need - 1).is_err());
    }

    #[test]
    fn tampering_is_reported() {
        let ext = ExtendedELChart::cyclic(&chart_of(&g(&[&[0, 1, 3]])));
        let entries = ext.low_entries();
        assert!(!entries.is_empty());

        let (a0, v0) = entries[0];
        let mut bumped = entries.clone();
        bumped[0].1 = v0 + 5;
        let bad = ExtendedELChart::from_entries(ext.chart().clone(), &bumped).unwrap();
        assert!(bad
            .validate()
            .iter()
            .any(|v| v.axiom == Axiom::Bounded && v.at == a0));

        // Raise a low value to meet the one above it.
        let h = ext.chart().h() as i64;
        let (pos, &(a, _)) = entries
            .iter()
            .find_position(|(a, _)| ext.phi(*a + h).is_some())
            .unwrap();
        let mut flat = entries.clone();
        flat[pos].1 = ext.phi(a + h).unwrap();
        let bad = ExtendedELChart::from_entries(ext.chart().clone(), &flat).unwrap();
        assert!(bad.validate().iter().any(|v| v.axiom == Axiom::Monotone));
    }

    #[test]
    fn adapted_family_of_cyclic_chart() {
        let ext = ExtendedELChart::cyclic(&chart_of(&g(&[&[0, 1, 3]])));
        let fam = ext.adapted_family().unwrap();
        fam.check(&ext).unwrap();
        let mut inits = fam.initial_elements(0);
        inits.sort_unstable();
        assert_eq!(inits, ext.chart().generators(0));
        let mut phis: Vec<i64> = inits
            .iter()
            .map(|&a| ext.phi(IndexedInt::new(0, a)).unwrap())
            .collect();
        phis.sort_unstable();
        assert_eq!(phis, vec![0, 1, 3]);
    }

    #[test]
    fn entries_round_trip() {
        let ext = ExtendedELChart::cyclic(&chart_of(&g(&[&[0, 1], &[0, 2]])));
        let back = ExtendedELChart::from_entries(ext.chart().clone(), &ext.low_entries()).unwrap();
        assert_eq!(back, ext);
        assert!(
            ExtendedELChart::from_entries(ext.chart().clone(), &[]).is_err()
                || ext.low_entries().is_empty()
        );
    }
}
