//! Combinatorics of top-dimensional components: the rearranged type attached
//! to a cyclic chart, the two-part count of its `V`-set, the interpolating
//! chain of rational vectors, and the minuscule counting experiments.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coweight::{
    dominance_leq, floor_i64, int, rat, weyl_orbit, GCocharacter, RationalCocharacter,
    RelCocharacter, SuperbasicDatum,
};
use crate::enumerate::{enumerate_charts, top_charts};
use crate::error::{Error, Result};
use crate::extended::ExtendedELChart;
use crate::polygon::{length_to_dom, pairing_g};

/// `(b, mu', suc(b))` for the generators of one component, sorted by `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Link {
    b: i64,
    weight: i64,
    suc: i64,
}

fn sorted_links(ext: &ExtendedELChart) -> Result<Vec<Vec<Link>>> {
    if !ext.is_cyclic() {
        return Err(Error::InvalidInput(
            "the construction is only defined for cyclic charts".into(),
        ));
    }
    let ty = ext.type_of();
    let d = ext.chart().d();
    let n = ty.sequence.len();
    let mut links = vec![Vec::new(); d];
    for k in 0..n {
        let b = ty.sequence[k];
        links[b.tau.0].push(Link {
            b: b.value,
            weight: ty.linear[k],
            suc: ty.sequence[(k + 1) % n].value,
        });
    }
    for l in &mut links {
        l.sort_by_key(|x| x.b);
    }
    Ok(links)
}

/// Sort each component's generators increasingly and carry the type entries
/// along: row `tau + 1` of the result lists `mu'` in the order of `B_(tau)`.
pub fn tilde_mu(ext: &ExtendedELChart) -> Result<GCocharacter> {
    let links = sorted_links(ext)?;
    let d = links.len();
    let mut rows = vec![Vec::new(); d];
    for (tau, l) in links.iter().enumerate() {
        rows[(tau + 1) % d] = l.iter().map(|x| x.weight).collect();
    }
    GCocharacter::from_rows(&rows)
}

/// `d nu ⪯ <tilde_mu> ⪯ <mu>`.
pub fn sandwich_holds(tilde: &GCocharacter, mu: &GCocharacter, datum: &SuperbasicDatum) -> bool {
    let d_nu = datum.newton_point().scale(&int(datum.d() as i64));
    let mid = tilde.orbit_sum();
    dominance_leq(&d_nu, &mid) && dominance_leq(&mid, &mu.dominant().orbit_sum())
}

/// The split `|V| = s1 + s2` of a cyclic chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub s1: i64,
    pub s2: i64,
}

pub fn s1_s2_decomposition(ext: &ExtendedELChart) -> Result<Decomposition> {
    let links = sorted_links(ext)?;
    let h = ext.chart().h() as i64;
    let tilde = tilde_mu(ext)?;
    let s1 = tilde.rows().map(length_to_dom).sum();
    let mut s2 = 0;
    for l in &links {
        for i in 1..l.len() {
            for j in 0..i {
                s2 += (l[j].suc - l[i].suc).div_euclid(h).max(0);
            }
        }
    }
    Ok(Decomposition { s1, s2 })
}

/// Which end of the chain carries `<tilde_mu>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainOrientation {
    /// First vector `<tilde_mu>`, last vector `d nu`.
    TildeFirst,
    /// First vector `d nu`, last vector `<tilde_mu>`.
    NewtonFirst,
    Neither,
}

/// The chain of vectors interpolating between `<tilde_mu>` and `d nu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiChain {
    pub vectors: Vec<RelCocharacter>,
    pub orientation: ChainOrientation,
    /// Consecutive vectors move weakly down in `⪯`.
    pub monotone: bool,
    /// Lattice points gained at step `i` (the first entry is zero).
    pub step_points: Vec<i64>,
    /// Lower bound for `step_points[i]` from the successor differences.
    pub step_bounds: Vec<i64>,
}

impl PsiChain {
    pub fn bounds_hold(&self) -> bool {
        self.step_points
            .iter()
            .zip(&self.step_bounds)
            .all(|(p, b)| p >= b)
    }

    pub fn total_points(&self) -> i64 {
        self.step_points.iter().sum()
    }

    pub fn total_bound(&self) -> i64 {
        self.step_bounds.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.orientation != ChainOrientation::Neither && self.monotone && self.bounds_hold()
    }
}

/// Step `i` sorts the successors of the first `i` generators of every
/// component; the orbit sum of `m/h - (suc_i(b) - b)/h` gives vector `i`.
pub fn psi_chain(ext: &ExtendedELChart) -> Result<PsiChain> {
    let links = sorted_links(ext)?;
    let datum = ext.chart().datum();
    let h = datum.h();
    let hh = h as i64;
    let m = datum.m();
    let mut vectors = Vec::with_capacity(h);
    for i in 1..=h {
        let mut shift = vec![0i64; h];
        for l in &links {
            let mut head: Vec<i64> = l[..i].iter().map(|x| x.suc).collect();
            head.sort_unstable();
            for (j, x) in l.iter().enumerate() {
                let s = if j < i { head[j] } else { x.suc };
                shift[j] += s - x.b;
            }
        }
        vectors.push(RelCocharacter(
            shift.iter().map(|s| rat(m - s, hh)).collect(),
        ));
    }
    let tilde = tilde_mu(ext)?.orbit_sum();
    let d_nu = datum.newton_point().scale(&int(datum.d() as i64));
    let orientation = if vectors[0] == tilde && vectors[h - 1] == d_nu {
        ChainOrientation::TildeFirst
    } else if vectors[0] == d_nu && vectors[h - 1] == tilde {
        ChainOrientation::NewtonFirst
    } else {
        ChainOrientation::Neither
    };
    let monotone = vectors.windows(2).all(|w| dominance_leq(&w[1], &w[0]));
    let floors = |v: &RelCocharacter| -> Vec<i64> {
        let p = v.partial_sums();
        p[..h - 1].iter().map(floor_i64).collect()
    };
    let mut step_points = vec![0];
    let mut step_bounds = vec![0];
    for i in 1..h {
        let (lo, hi) = (floors(&vectors[i - 1]), floors(&vectors[i]));
        step_points.push(hi.iter().zip(&lo).map(|(a, b)| a - b).sum());
        let mut bound = 0;
        for l in &links {
            for j in 0..i {
                bound += (l[j].suc - l[i].suc).div_euclid(hh).max(0);
            }
        }
        step_bounds.push(bound);
    }
    Ok(PsiChain {
        vectors,
        orientation,
        monotone,
        step_points,
        step_bounds,
    })
}

/// `|M_mu|`, the number of charts of maximal dimension.
pub fn component_count(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<usize> {
    Ok(top_charts(mu, datum)?.len())
}

/// `mu` with rows `0..upto` rotated so that the smallest entry moves to the
/// back: `(mu_2, ..., mu_h, mu_1)`.
pub fn rotated_witness(mu: &GCocharacter, upto: usize) -> GCocharacter {
    let mut out = mu.clone();
    for tau in 0..upto {
        out.row_mut(tau).rotate_left(1);
    }
    out
}

/// Outcome of the two parts of the lemma on `|M_mu|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ComponentLemmaReport {
    /// At least two non-constant rows: two distinct cyclic top charts.
    Several {
        count: usize,
        max_dim: usize,
        witnesses: [GCocharacter; 2],
        /// The rotated type reaches the maximum; otherwise the second witness
        /// is the first other cyclic top chart.
        rotation_attains: bool,
        holds: bool,
    },
    /// Exactly one non-constant row: the count reduces to `d = 1`.
    Single {
        row: usize,
        count: usize,
        reduced_count: usize,
        holds: bool,
    },
}

impl ComponentLemmaReport {
    pub fn holds(&self) -> bool {
        match self {
            ComponentLemmaReport::Several { holds, .. }
            | ComponentLemmaReport::Single { holds, .. } => *holds,
        }
    }
}

pub fn component_lemma_checks(
    mu: &GCocharacter,
    datum: &SuperbasicDatum,
) -> Result<ComponentLemmaReport> {
    if !mu.is_dominant() {
        return Err(Error::InvalidInput(format!("{mu} is not dominant")));
    }
    let moving: Vec<usize> = (0..mu.d()).filter(|&t| !mu.row_is_constant(t)).collect();
    match moving.as_slice() {
        [] => Err(Error::InvalidInput(format!(
            "every row of {mu} is constant, neither part applies"
        ))),
        [row] => {
            let count = component_count(mu, datum)?;
            let single = GCocharacter::from_rows(&[mu.row(*row).to_vec()])?;
            let reduced = SuperbasicDatum::for_mu(&single)?;
            let reduced_count = component_count(&single, &reduced)?;
            Ok(ComponentLemmaReport::Single {
                row: *row,
                count,
                reduced_count,
                holds: count == reduced_count,
            })
        }
        [_, second, ..] => {
            let result = enumerate_charts(mu, datum)?;
            let max_dim = result.max_dim;
            let top: Vec<&ExtendedELChart> = result
                .charts
                .iter()
                .zip(&result.dims)
                .filter(|(_, &x)| x == max_dim)
                .map(|(c, _)| c)
                .collect();
            let cyclic_top: Vec<GCocharacter> = top
                .iter()
                .filter(|c| c.is_cyclic())
                .map(|c| c.type_of().mu_prime)
                .collect();
            let rotated = rotated_witness(mu, *second);
            let rotation_attains = cyclic_top.contains(&rotated);
            let other = if rotation_attains {
                Some(rotated)
            } else {
                cyclic_top.iter().find(|t| *t != mu).cloned()
            };
            let holds = top.len() >= 2 && cyclic_top.contains(mu) && other.is_some();
            Ok(ComponentLemmaReport::Several {
                count: top.len(),
                max_dim,
                witnesses: [mu.clone(), other.unwrap_or_else(|| mu.clone())],
                rotation_attains,
                holds,
            })
        }
    }
}

/// Empirical checks attached to a [`ConjectureReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureFlags {
    pub injective: bool,
    pub surjective: bool,
    pub top_matches_prediction: bool,
    pub image_in_orbit_set: bool,
    pub sandwich_all: bool,
    pub decomposition_all: bool,
}

/// Both sides of the minuscule counting conjecture for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub mu: GCocharacter,
    pub datum: SuperbasicDatum,
    pub chart_count: usize,
    pub orbit_count: usize,
    pub top_count: usize,
    pub predicted_top: usize,
    /// Each image of [`tilde_mu`] with its multiplicity.
    pub image: Vec<(GCocharacter, usize)>,
    pub flags: ConjectureFlags,
}

impl ConjectureReport {
    /// The report's own bookkeeping is sound; the conjecture itself is not judged.
    pub fn is_consistent(&self) -> bool {
        self.flags.image_in_orbit_set
            && self.flags.sandwich_all
            && self.flags.decomposition_all
            && self.image.iter().map(|(_, n)| n).sum::<usize>() == self.chart_count
    }
}

/// `floor(m/h)` repeated `h(1 - {m/h})` times followed by `ceil(m/h)`.
pub fn balanced_vector(h: usize, m: i64) -> Vec<i64> {
    let (q, r) = (m.div_euclid(h as i64), m.rem_euclid(h as i64) as usize);
    let mut v = vec![q; h - r];
    v.extend(std::iter::repeat_n(q + 1, r));
    v
}

pub fn conjecture_report(mu: &GCocharacter, datum: &SuperbasicDatum) -> Result<ConjectureReport> {
    if !crate::coweight::is_minuscule(mu) {
        return Err(Error::InvalidInput(format!("{mu} is not minuscule")));
    }
    let result = enumerate_charts(mu, datum)?;
    let d_nu = datum.newton_point().scale(&int(datum.d() as i64));
    let orbit: Vec<GCocharacter> = weyl_orbit(mu)
        .into_iter()
        .filter(|x| dominance_leq(&d_nu, &x.orbit_sum()))
        .collect();
    let target = balanced_vector(datum.h(), datum.m());
    let predicted_top = weyl_orbit(mu)
        .iter()
        .filter(|x| x.orbit_sum_int() == target)
        .count();
    let mut image: BTreeMap<GCocharacter, usize> = BTreeMap::new();
    let mut sandwich_all = true;
    let mut decomposition_all = true;
    for (ext, &dim) in result.charts.iter().zip(&result.dims) {
        let tilde = tilde_mu(ext)?;
        sandwich_all &= sandwich_holds(&tilde, mu, datum);
        let parts = s1_s2_decomposition(ext)?;
        decomposition_all &= parts.s1 + parts.s2 == dim as i64;
        *image.entry(tilde).or_default() += 1;
    }
    let top_count = result.dims.iter().filter(|&&x| x == result.max_dim).count();
    let flags = ConjectureFlags {
        injective: image.values().all(|&n| n == 1),
        surjective: orbit.iter().all(|x| image.contains_key(x)),
        top_matches_prediction: top_count == predicted_top,
        image_in_orbit_set: image.keys().all(|x| orbit.contains(x)),
        sandwich_all,
        decomposition_all,
    };
    Ok(ConjectureReport {
        mu: mu.clone(),
        datum: datum.clone(),
        chart_count: result.charts.len(),
        orbit_count: orbit.len(),
        top_count,
        predicted_top,
        image: image.into_iter().collect(),
        flags,
    })
}

/// `<nu, tilde_mu>_G`, the bound for `s2`.
pub fn s2_bound(tilde: &GCocharacter, datum: &SuperbasicDatum) -> i64 {
    let nu = RationalCocharacter::embed(&datum.newton_point(), datum.d());
    pairing_g(&nu, tilde)
}
