//! General (not necessarily superbasic) classes: non-emptiness, the closed
//! dimension formula, and the reduction to a Levi subgroup in which the class
//! becomes superbasic.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::coweight::{
    dominance_leq, int, rat, rational_to_string, GCocharacter, Rational, RationalCocharacter,
    RelCocharacter, SuperbasicDatum,
};
use crate::enumerate::dominated_rearrangements;
use crate::error::{Error, Result};
use crate::polygon::{dim_formula, dim_formula_raw, rho_pairing, rho_weights};

/// A class given by its Newton point `nu` (dominant) and Kottwitz invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralClassDatum {
    d: usize,
    newton: RelCocharacter,
    kappa: i64,
}

impl GeneralClassDatum {
    /// Checks dominance, that every isoclinic block has integral total
    /// `d * slope * height`, and that these totals add up to `kappa`.
    pub fn new(d: usize, newton: RelCocharacter) -> Result<Self> {
        if d == 0 || newton.h() == 0 {
            return Err(Error::Shape("d and h must be positive".into()));
        }
        if !newton.is_dominant() {
            return Err(Error::InvalidInput(format!(
                "Newton point {newton} is not dominant"
            )));
        }
        let dd = int(d as i64);
        for (slope, run) in &newton.entries().iter().chunk_by(|x| (*x).clone()) {
            let total = &slope * &dd * int(run.count() as i64);
            if !total.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "block of slope {} has non-integral total {}",
                    rational_to_string(&slope),
                    rational_to_string(&total)
                )));
            }
        }
        let kappa = (newton.total() * dd)
            .to_integer()
            .to_i64()
            .expect("kappa fits in i64");
        Ok(GeneralClassDatum { d, newton, kappa })
    }

    pub fn from_superbasic(datum: &SuperbasicDatum) -> Self {
        GeneralClassDatum::new(datum.d(), datum.newton_point()).expect("superbasic data are valid")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn h(&self) -> usize {
        self.newton.h()
    }

    pub fn newton(&self) -> &RelCocharacter {
        &self.newton
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }
}

/// One superbasic factor `Res GL_{height}` of the Levi subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviBlock {
    pub start: usize,
    pub height: usize,
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(q))
}

impl LeviBlock {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.height
    }
}

/// Ordered decomposition `h = h_1 + ... + h_r`; slopes weakly increase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviPartition {
    pub blocks: Vec<LeviBlock>,
}

impl LeviPartition {
    /// The partition with a single block.
    pub fn whole(h: usize, slope: Rational) -> Self {
        LeviPartition {
            blocks: vec![LeviBlock {
                start: 0,
                height: h,
                slope,
            }],
        }
    }

    /// The maximal torus: `h` blocks of height one.
    pub fn torus(nu: &RelCocharacter) -> Self {
        LeviPartition {
            blocks: nu
                .entries()
                .iter()
                .enumerate()
                .map(|(i, s)| LeviBlock {
                    start: i,
                    height: 1,
                    slope: s.clone(),
                })
                .collect(),
        }
    }

    pub fn heights(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.height).collect()
    }

    pub fn h(&self) -> usize {
        self.blocks.iter().map(|b| b.height).sum()
    }
}

/// Splits `nu` into isoclinic blocks, and a block of height `H` and total
/// `v = d * slope * H` further into `gcd(v, H)` superbasic pieces.
pub fn newton_levi(datum: &GeneralClassDatum) -> LeviPartition {
    let dd = int(datum.d as i64);
    let mut blocks = Vec::new();
    let mut start = 0;
    for (slope, run) in &datum.newton.entries().iter().chunk_by(|x| (*x).clone()) {
        let height = run.count();
        let total = (&slope * &dd * int(height as i64))
            .to_integer()
            .to_i64()
            .expect("validated integral");
        let pieces = total.gcd(&(height as i64)) as usize;
        let piece = height / pieces;
        for _ in 0..pieces {
            blocks.push(LeviBlock {
                start,
                height: piece,
                slope: slope.clone(),
            });
            start += piece;
        }
    }
    LeviPartition { blocks }
}

/// The Kottwitz invariants agree and `d * nu ⪯ <mu>`.
pub fn mazur_nonempty(mu: &GCocharacter, datum: &GeneralClassDatum) -> bool {
    mu.h() == datum.h()
        && mu.d() == datum.d
        && mu.total() == datum.kappa
        && dominance_leq(
            &datum.newton.scale(&int(datum.d as i64)),
            &mu.dominant().orbit_sum(),
        )
}

/// `<rho, mu - nu> - defect/2` for a non-empty variety.
pub fn general_dim(mu: &GCocharacter, datum: &GeneralClassDatum) -> Result<i64> {
    if mu.d() != datum.d {
        return Err(Error::Shape(format!(
            "mu has d={}, datum has d={}",
            mu.d(),
            datum.d
        )));
    }
    dim_formula(mu, &datum.newton)
}

/// `Sigma(mu) = {mu' : mu'_dom ⪯ mu}`, sorted.
pub fn sigma_mu_set(mu: &GCocharacter) -> Vec<GCocharacter> {
    let mut out: Vec<GCocharacter> = mu
        .rows()
        .map(dominated_rearrangements)
        .multi_cartesian_product()
        .map(|rows| GCocharacter::from_rows(&rows).expect("rows share a shape"))
        .collect();
    out.sort();
    out
}

/// Weakly increasing inside every block, in every row.
pub fn is_m_dominant(x: &GCocharacter, partition: &LeviPartition) -> bool {
    x.rows().all(|r| {
        partition
            .blocks
            .iter()
            .all(|b| r[b.range()].windows(2).all(|w| w[0] <= w[1]))
    })
}

pub fn sigma_m_dom(mu: &GCocharacter, partition: &LeviPartition) -> Vec<GCocharacter> {
    sigma_mu_set(mu)
        .into_iter()
        .filter(|x| is_m_dominant(x, partition))
        .collect()
}

/// `x ≤_M y`: `y - x` is a non-negative combination of simple coroots of `M`
/// (`e_{i+1} - e_i` inside a block, since the Borel is lower triangular).
pub fn leq_m(x: &GCocharacter, y: &GCocharacter, partition: &LeviPartition) -> bool {
    x.rows().zip(y.rows()).all(|(rx, ry)| {
        partition.blocks.iter().all(|b| {
            let mut s = 0;
            for i in b.range() {
                s += ry[i] - rx[i];
                if s > 0 {
                    return false;
                }
            }
            s == 0
        })
    })
}

/// The maximal elements of `Sigma(mu)_{M-dom}` for `≤_M`.
pub fn sigma_m_max(mu: &GCocharacter, partition: &LeviPartition) -> Vec<GCocharacter> {
    let dom = sigma_m_dom(mu, partition);
    dom.iter()
        .filter(|x| !dom.iter().any(|y| y != *x && leq_m(x, y, partition)))
        .cloned()
        .collect()
}

/// `<rho_M, x>` with weights `(p - (H+1)/2)` inside each block.
pub fn rho_m_pairing(x: &RationalCocharacter, partition: &LeviPartition) -> Rational {
    let mut total = Rational::zero();
    for row in x.rows() {
        for b in &partition.blocks {
            for (w, v) in rho_weights(b.height).iter().zip(&row[b.range()]) {
                total += w * v;
            }
        }
    }
    total
}

/// `<rho, mu + mu_M> - 2 <rho_M, mu_M>` for `mu_M` in `Sigma(mu)_{M-max}`.
pub fn d_value(
    mu: &GCocharacter,
    mu_m: &GCocharacter,
    partition: &LeviPartition,
) -> Result<Rational> {
    if !sigma_m_max(mu, partition).contains(mu_m) {
        return Err(Error::InvalidInput(format!(
            "{mu_m} is not a maximal element of Sigma({mu})_M-dom"
        )));
    }
    Ok(d_value_unchecked(mu, mu_m, partition))
}

fn d_value_unchecked(
    mu: &GCocharacter,
    mu_m: &GCocharacter,
    partition: &LeviPartition,
) -> Rational {
    let sum = RationalCocharacter::from(&(mu + mu_m));
    rho_pairing(&sum) - int(2) * rho_m_pairing(&RationalCocharacter::from(mu_m), partition)
}

/// `mu` restricted to the columns of one block.
fn block_part(x: &GCocharacter, block: &LeviBlock) -> GCocharacter {
    let rows: Vec<Vec<i64>> = x.rows().map(|r| r[block.range()].to_vec()).collect();
    GCocharacter::from_rows(&rows).expect("rows share a shape")
}

/// Outcome of comparing the Levi recursion with the closed formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub partition: Vec<usize>,
    pub fiber_size: usize,
    pub general_dim: i64,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
    pub best: Option<GCocharacter>,
    pub holds: bool,
}

/// Evaluates the right-hand side of the Levi recursion
/// `max_{mu_M} (dim X^M_{mu_M} + d(mu, mu_M)) + <rho, nu - nu_dom> - <2 rho_N, nu>`
/// over the `≤_M`-maximal `mu_M` with the right blockwise Kottwitz invariant.
pub fn recursion_check(mu: &GCocharacter, datum: &GeneralClassDatum) -> Result<RecursionReport> {
    if !mazur_nonempty(mu, datum) {
        return Err(Error::MazurFails(format!(
            "no points for mu = {mu} and nu = {}",
            datum.newton
        )));
    }
    let lhs = general_dim(mu, datum)?;
    let partition = newton_levi(datum);
    let dd = int(datum.d as i64);
    let kappa_m: Vec<Rational> = partition
        .blocks
        .iter()
        .map(|b| datum.newton.entries()[b.range()].iter().sum::<Rational>() * &dd)
        .collect();
    let fiber: Vec<GCocharacter> = sigma_m_max(mu, &partition)
        .into_iter()
        .filter(|x| {
            partition
                .blocks
                .iter()
                .zip(&kappa_m)
                .all(|(b, k)| int(block_part(x, b).total()) == *k)
        })
        .collect();
    let mut best: Option<(Rational, GCocharacter)> = None;
    for x in &fiber {
        let mut value = d_value_unchecked(mu, x, &partition);
        for b in &partition.blocks {
            value += dim_formula_raw(
                &block_part(x, b),
                &datum.newton.slice(b.start, b.start + b.height),
            );
        }
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, x.clone()));
        }
    }
    let nu_emb = RationalCocharacter::embed(&datum.newton, datum.d);
    // nu is dominant, so <rho, nu - nu_dom> vanishes.
    let two_rho_n = int(2) * (rho_pairing(&nu_emb) - rho_m_pairing(&nu_emb, &partition));
    let rhs = best
        .as_ref()
        .map(|(v, _)| v - &two_rho_n)
        .unwrap_or_else(|| rat(-1, 1));
    Ok(RecursionReport {
        partition: partition.heights(),
        fiber_size: fiber.len(),
        general_dim: lhs,
        holds: best.is_some() && rhs == int(lhs),
        rhs,
        best: best.map(|(_, x)| x),
    })
}

/// Newton points of non-empty classes for `mu`: convex polygons with integral
/// breakpoints lying between the polygon of `<mu>` and the straight line.
pub fn newton_points(mu: &GCocharacter) -> Vec<RelCocharacter> {
    let h = mu.h();
    let d = mu.d() as i64;
    let kappa = mu.total();
    let cols = mu.dominant().orbit_sum_int();
    let mut lower = vec![0i64];
    for c in &cols {
        lower.push(lower.last().unwrap() + c);
    }
    let mut out = Vec::new();
    let mut points = vec![(0usize, 0i64)];
    newton_rec(h, kappa, &lower, None, &mut points, &mut out);
    let orbit = RelCocharacter::from_ints(&cols);
    out.into_iter()
        .filter_map(|pts| {
            let mut slopes = Vec::with_capacity(h);
            for w in pts.windows(2) {
                let ((x1, y1), (x2, y2)) = (w[0], w[1]);
                let s = rat(y2 - y1, (x2 - x1) as i64);
                slopes.extend(std::iter::repeat_n(s, x2 - x1));
            }
            let d_nu = RelCocharacter(slopes);
            dominance_leq(&d_nu, &orbit).then(|| d_nu.scale(&rat(1, d)))
        })
        .collect()
}

fn newton_rec(
    h: usize,
    kappa: i64,
    lower: &[i64],
    last: Option<Rational>,
    points: &mut Vec<(usize, i64)>,
    out: &mut Vec<Vec<(usize, i64)>>,
) {
    let (x, y) = *points.last().unwrap();
    if x == h {
        if y == kappa {
            out.push(points.clone());
        }
        return;
    }
    for x2 in x + 1..=h {
        let mut y2 = lower[x2];
        while y2 * h as i64 <= x2 as i64 * kappa {
            let s = rat(y2 - y, (x2 - x) as i64);
            if last.as_ref().is_none_or(|l| s > *l) {
                points.push((x2, y2));
                newton_rec(h, kappa, lower, Some(s), points, out);
                points.pop();
            }
            y2 += 1;
        }
    }
}
