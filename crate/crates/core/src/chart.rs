//! EL-charts: subsets of `Z^(d)` stable under `+h` and the twisted shift
//! `f(a_(tau)) = (a + m_{tau+1})_(tau+1)`, stored through their generators.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::coweight::{GCocharacter, IndexedInt, SuperbasicDatum};
use crate::error::{Error, Result};

/// `f(a_(tau)) = (a + m_{tau+1})_(tau+1)`.
pub fn f_step(a: IndexedInt, datum: &SuperbasicDatum) -> IndexedInt {
    let next = a.tau.succ(datum.d());
    IndexedInt {
        tau: next,
        value: a.value + datum.slope(next.0),
    }
}

/// An EL-chart `A`, given by its generator set `B = A \ (A + h)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ELChart {
    datum: SuperbasicDatum,
    /// Sorted generators per component.
    generators: Vec<Vec<i64>>,
    /// `by_residue[tau][r]` is the generator of component `tau` congruent to `r` mod `h`.
    #[serde(skip)]
    by_residue: Vec<Vec<i64>>,
}

impl ELChart {
    /// Builds a chart from per-component generators, checking residue coverage
    /// and stability under `f`. Normalization is not required.
    pub fn new(datum: SuperbasicDatum, generators: Vec<Vec<i64>>) -> Result<Self> {
        let (d, h) = (datum.d(), datum.h());
        if generators.len() != d {
            return Err(Error::Shape(format!(
                "expected {d} generator components, got {}",
                generators.len()
            )));
        }
        let mut by_residue = Vec::with_capacity(d);
        let mut sorted = Vec::with_capacity(d);
        for (tau, gens) in generators.into_iter().enumerate() {
            if gens.len() != h {
                return Err(Error::InvalidInput(format!(
                    "component {tau} has {} generators, expected {h}",
                    gens.len()
                )));
            }
            let mut slot = vec![None; h];
            for &b in &gens {
                let r = b.rem_euclid(h as i64) as usize;
                if slot[r].replace(b).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "component {tau} has two generators with residue {r} mod {h}"
                    )));
                }
            }
            by_residue.push(slot.into_iter().map(Option::unwrap).collect());
            sorted.push(gens.into_iter().sorted().collect());
        }
        let chart = ELChart {
            datum,
            generators: sorted,
            by_residue,
        };
        for b in chart.generator_elements() {
            let fb = f_step(b, &chart.datum);
            if !chart.contains(fb) {
                return Err(Error::InvalidInput(format!(
                    "not stable under f: f({b}) = {fb} is missing"
                )));
            }
        }
        Ok(chart)
    }

    /// Shifts `B` by the unique integer that normalizes it.
    pub fn normalize(datum: SuperbasicDatum, generators: Vec<Vec<i64>>) -> Result<(Self, i64)> {
        let chart = ELChart::new(datum, generators)?;
        let h = chart.h() as i64;
        let target = h * (h - 1) / 2;
        let sum: i64 = chart.generators[0].iter().sum();
        let shift = (target - sum) / h;
        debug_assert_eq!((target - sum) % h, 0);
        Ok((chart.shifted(shift), shift))
    }

    /// `A + n`.
    pub fn shifted(&self, n: i64) -> Self {
        ELChart {
            datum: self.datum.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|b| b + n).collect())
                .collect(),
            by_residue: self
                .by_residue
                .iter()
                .map(|g| {
                    let h = g.len();
                    let mut out = vec![0; h];
                    for &b in g {
                        out[(b + n).rem_euclid(h as i64) as usize] = b + n;
                    }
                    out
                })
                .collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        let h = self.h() as i64;
        self.generators[0].iter().sum::<i64>() == h * (h - 1) / 2
    }

    pub fn datum(&self) -> &SuperbasicDatum {
        &self.datum
    }

    pub fn d(&self) -> usize {
        self.datum.d()
    }

    pub fn h(&self) -> usize {
        self.datum.h()
    }

    /// Sorted generators of component `tau`.
    pub fn generators(&self, tau: usize) -> &[i64] {
        &self.generators[tau]
    }

    pub fn all_generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn generator_elements(&self) -> impl Iterator<Item = IndexedInt> + '_ {
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(tau, g)| g.iter().map(move |&b| IndexedInt::new(tau, b)))
    }

    /// The generator of component `tau` congruent to `value` mod `h`.
    pub fn generator_for(&self, tau: usize, value: i64) -> i64 {
        self.by_residue[tau][value.rem_euclid(self.h() as i64) as usize]
    }

    pub fn contains(&self, a: IndexedInt) -> bool {
        a.tau.0 < self.d() && a.value >= self.generator_for(a.tau.0, a.value)
    }

    /// `max {n >= 0 : a - n h in A}`.
    pub fn height(&self, a: IndexedInt) -> Result<i64> {
        if !self.contains(a) {
            return Err(Error::NotInChart(a.to_string()));
        }
        Ok((a.value - self.generator_for(a.tau.0, a.value)) / self.h() as i64)
    }

    /// Smallest element of `A_(tau)`.
    pub fn min(&self, tau: usize) -> i64 {
        self.generators[tau][0]
    }

    /// `max B_(tau) - h + 1`: every value at or above it lies in `A_(tau)`,
    /// and it is the least such value.
    pub fn threshold(&self, tau: usize) -> i64 {
        self.generators[tau][self.h() - 1] - self.h() as i64 + 1
    }

    /// The values of `A_(tau)` below the threshold, increasing.
    pub fn low_elements(&self, tau: usize) -> Vec<i64> {
        (self.min(tau)..self.threshold(tau))
            .filter(|&a| self.contains(IndexedInt::new(tau, a)))
            .collect()
    }

    pub fn f(&self, a: IndexedInt) -> IndexedInt {
        f_step(a, &self.datum)
    }

    /// `height(f(a))` for `a` in `A`.
    pub fn height_of_f(&self, a: IndexedInt) -> Result<i64> {
        if !self.contains(a) {
            return Err(Error::NotInChart(a.to_string()));
        }
        self.height(self.f(a))
    }

    /// The type recursion `b_{k+1} = f(b_k) - mu'_{k+1} h` from `b_0 = min B_(0)`.
    pub fn type_of(&self) -> TypeVector {
        let (d, h) = (self.d(), self.h());
        let mut sequence = Vec::with_capacity(d * h);
        let mut linear = Vec::with_capacity(d * h);
        let mut b = IndexedInt::new(0, self.min(0));
        for _ in 0..d * h {
            sequence.push(b);
            let fb = self.f(b);
            let gen = self.generator_for(fb.tau.0, fb.value);
            linear.push((fb.value - gen) / h as i64);
            b = IndexedInt::new(fb.tau.0, gen);
        }
        debug_assert_eq!(b, sequence[0]);
        let mu_prime = linear_to_rows(&linear, d, h);
        TypeVector {
            mu_prime,
            sequence,
            linear,
        }
    }

    /// The unique normalized chart whose type is `mu_prime`.
    pub fn from_type(mu_prime: &GCocharacter, datum: &SuperbasicDatum) -> Result<Self> {
        let (d, h) = (datum.d(), datum.h());
        if (mu_prime.d(), mu_prime.h()) != (d, h) {
            return Err(Error::Shape(format!(
                "type has shape {}x{}, datum has {d}x{h}",
                mu_prime.d(),
                mu_prime.h()
            )));
        }
        if mu_prime.entries().iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput(format!(
                "type {mu_prime} has a negative entry, so the chart is not stable under f"
            )));
        }
        if !type_partial_sums_ok(mu_prime, datum.m()) {
            return Err(Error::InvalidInput(format!(
                "type {mu_prime} violates the partial-sum condition for m = {}",
                datum.m()
            )));
        }
        let linear = rows_to_linear(mu_prime);
        let mut gens = vec![Vec::with_capacity(h); d];
        let mut b = IndexedInt::new(0, 0);
        for &step in &linear {
            gens[b.tau.0].push(b.value);
            b = f_step(b, datum) - step * h as i64;
        }
        if b != IndexedInt::new(0, 0) {
            return Err(Error::Internal(format!(
                "type recursion of {mu_prime} does not close"
            )));
        }
        let (chart, _) = ELChart::normalize(datum.clone(), gens)?;
        let back = chart.type_of();
        if &back.mu_prime != mu_prime {
            return Err(Error::Internal(format!(
                "type {mu_prime} round-trips to {}",
                back.mu_prime
            )));
        }
        Ok(chart)
    }
}

impl fmt::Display for ELChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .generators
            .iter()
            .enumerate()
            .map(|(tau, g)| format!("B_{tau}={{{}}}", g.iter().join(",")))
            .join(" ");
        write!(f, "{parts}")
    }
}

/// `sum_{i<=k} <mu'>_i * h <= k * m` for `k < h` and equality at `k = h`.
pub fn type_partial_sums_ok(mu_prime: &GCocharacter, m: i64) -> bool {
    let h = mu_prime.h() as i64;
    let cols = mu_prime.orbit_sum_int();
    let mut s = 0;
    for (k, c) in cols.iter().enumerate() {
        s += c;
        let k = k as i64 + 1;
        if k < h && s * h > k * m {
            return false;
        }
    }
    s == m
}

/// Entry `k` (0-based) of the linear type is `mu'_{k+1}`, stored in row
/// `(k+1) mod d` and column `ceil((k+1)/d)`.
fn linear_to_rows(linear: &[i64], d: usize, h: usize) -> GCocharacter {
    let mut rows = GCocharacter::zero(d, h);
    for (k0, &v) in linear.iter().enumerate() {
        let k = k0 + 1;
        rows.row_mut(k % d)[k.div_ceil(d) - 1] = v;
    }
    rows
}

fn rows_to_linear(mu: &GCocharacter) -> Vec<i64> {
    let d = mu.d();
    (1..=d * mu.h())
        .map(|k| mu.row(k % d)[k.div_ceil(d) - 1])
        .collect()
}

/// The type `mu'` of a chart together with the cyclic generator sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVector {
    /// `mu'` in row form: row `tau`, column `i` is `mu'_{tau,i}`.
    pub mu_prime: GCocharacter,
    /// `b_0, ..., b_{dh-1}`.
    pub sequence: Vec<IndexedInt>,
    /// `mu'_1, ..., mu'_{dh}`.
    pub linear: Vec<i64>,
}

impl TypeVector {
    /// `b_{tau,i}` with 1-based `i`.
    pub fn b(&self, tau: usize, i: usize) -> IndexedInt {
        let d = self.mu_prime.d();
        self.sequence[tau + (i - 1) * d]
    }

    /// `suc(b_k) = b_{k+1}`, cyclically.
    pub fn suc(&self, b: IndexedInt) -> Option<IndexedInt> {
        let k = self.sequence.iter().position(|&x| x == b)?;
        Some(self.sequence[(k + 1) % self.sequence.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(d: usize, h: usize, slopes: &[i64]) -> SuperbasicDatum {
        SuperbasicDatum::new(d, h, slopes.to_vec()).unwrap()
    }

    fn g(rows: &[&[i64]]) -> GCocharacter {
        GCocharacter::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn f_step_examples() {
        let d1 = datum(1, 2, &[1]);
        assert_eq!(f_step(IndexedInt::new(0, 5), &d1), IndexedInt::new(0, 6));
        let d2 = datum(2, 3, &[1, 0]);
        assert_eq!(f_step(IndexedInt::new(0, 0), &d2), IndexedInt::new(1, 0));
        assert_eq!(f_step(IndexedInt::new(1, 0), &d2), IndexedInt::new(0, 1));
    }

    #[test]
    fn height_and_membership() {
        let a = ELChart::new(datum(1, 2, &[1]), vec![vec![0, 1]]).unwrap();
        assert_eq!(a.height(IndexedInt::new(0, 5)).unwrap(), 2);
        assert_eq!(a.height(IndexedInt::new(0, 1)).unwrap(), 0);
        assert!(!a.contains(IndexedInt::new(0, -1)));
        assert!(a.height(IndexedInt::new(0, -1)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let (a, n) = ELChart::normalize(datum(1, 2, &[1]), vec![vec![2, 3]]).unwrap();
        assert_eq!(n, -2);
        assert_eq!(a.generators(0), &[0, 1]);
        let (_, n) = ELChart::normalize(datum(1, 2, &[1]), vec![vec![0, 1]]).unwrap();
        assert_eq!(n, 0);
        assert!(ELChart::new(datum(1, 2, &[1]), vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn type_examples() {
        let a = ELChart::new(datum(1, 2, &[1]), vec![vec![0, 1]]).unwrap();
        let t = a.type_of();
        assert_eq!(t.mu_prime, g(&[&[0, 1]]));
        assert_eq!(ELChart::from_type(&t.mu_prime, a.datum()).unwrap(), a);
        assert!(ELChart::from_type(&g(&[&[1, 0]]), a.datum()).is_err());
    }

    #[test]
    fn from_type_rejects_negative_entries() {
        // Partial sums are fine but the chart would not be f-stable.
        let mu = g(&[&[-1, 2]]);
        assert!(matches!(
            ELChart::from_type(&mu, &datum(1, 2, &[1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn round_trip_d2() {
        let dat = datum(2, 3, &[1, 1]);
        for mu in [
            g(&[&[0, 0, 1], &[0, 0, 1]]),
            g(&[&[0, 1, 0], &[1, 0, 0]]),
            g(&[&[0, 0, 1], &[0, 1, 0]]),
        ] {
            if !type_partial_sums_ok(&mu, 2) {
                continue;
            }
            let a = ELChart::from_type(&mu, &dat).unwrap();
            assert!(a.is_normalized());
            assert_eq!(a.type_of().mu_prime, mu);
        }
    }

    #[test]
    fn suc_cycles() {
        let dat = datum(2, 3, &[1, 1]);
        let a = ELChart::from_type(&g(&[&[0, 0, 1], &[0, 0, 1]]), &dat).unwrap();
        let t = a.type_of();
        let mut b = t.sequence[0];
        for _ in 0..6 {
            b = t.suc(b).unwrap();
        }
        assert_eq!(b, t.sequence[0]);
        assert_eq!(t.b(0, 1).value, a.min(0));
    }
}
