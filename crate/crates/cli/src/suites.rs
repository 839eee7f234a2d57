//! Verification suites behind `adlv verify`.

use std::str::FromStr;

use adlv_core::components::{psi_chain, s1_s2_decomposition};
use adlv_core::coweight::{dominance_leq_int, int, rat};
use adlv_core::grid::{dominant_cocharacters, standard_grid, superbasic_instances};
use adlv_core::levi::newton_points;
use adlv_core::polygon::{bracket_int, pairing_int};
use adlv_core::{
    component_count, component_lemma_checks, conjecture_report, dim_formula, enumerate_charts,
    general_dim, half_defect, is_minuscule, lattice_points_between, length_to_dom, pairing,
    pairing_g, recursion_check, rho_pairing, summarize, ComponentLemmaReport, DeformationFrame,
    ELChart, ExtendedELChart, GCocharacter, GeneralClassDatum, RationalCocharacter, RelCocharacter,
    SuperbasicDatum,
};
use clap::ValueEnum;
use rayon::prelude::*;

use crate::document::ChartLine;
use crate::error::{CliError, CliResult};
use crate::report::Check;

/// Environment variable holding the worker count for suites.
pub const WORKERS_VAR: &str = "ADLV_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Metrics,
    Charts,
    Deformation,
    Levi,
    Components,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Metrics => "metrics",
            Suite::Charts => "charts",
            Suite::Deformation => "deformation",
            Suite::Levi => "levi",
            Suite::Components => "components",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Metrics,
                Suite::Charts,
                Suite::Deformation,
                Suite::Levi,
                Suite::Components,
            ],
            s => vec![s],
        }
    }
}

/// Size of the instance grid: the largest entry of `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridSize {
    Small,
    Standard,
    Large,
}

impl GridSize {
    pub fn max_entry(self) -> i64 {
        match self {
            GridSize::Small => 2,
            GridSize::Standard => 3,
            GridSize::Large => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GridSize::Small => "small",
            GridSize::Standard => "standard",
            GridSize::Large => "large",
        }
    }
}

/// Runs `suite` on a pool sized by [`WORKERS_VAR`], defaulting to the
/// available parallelism.
pub fn run(suite: Suite, grid: GridSize) -> CliResult<Vec<(Suite, Check)>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(WORKERS_VAR) {
        let n = usize::from_str(raw.trim())
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                CliError::Input(format!(
                    "{WORKERS_VAR} must be a positive integer, got {raw:?}"
                ))
            })?;
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Input(format!("cannot start workers: {e}")))?;
    Ok(pool.install(|| {
        suite
            .members()
            .into_iter()
            .flat_map(|s| run_one(s, grid).into_iter().map(move |c| (s, c)))
            .collect()
    }))
}

fn run_one(suite: Suite, grid: GridSize) -> Vec<Check> {
    let e = grid.max_entry();
    match suite {
        Suite::Metrics => metrics(e),
        Suite::Charts => charts(e),
        Suite::Deformation => vec![deformation(e)],
        Suite::Levi => levi(e),
        Suite::Components => components(e),
        Suite::All => unreachable!("expanded by members"),
    }
}

/// Applies `check` to every item; the detail is the count or the first failure.
fn scan<T, F>(name: &str, items: &[T], unit: &str, check: F) -> Check
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    match items.par_iter().find_map_first(check) {
        None => Check::hard(name, true, format!("{} {unit}", items.len())),
        Some(failure) => Check::hard(name, false, failure),
    }
}

fn from_outcome(name: &str, outcome: Result<String, String>) -> Check {
    match outcome {
        Ok(detail) => Check::hard(name, true, detail),
        Err(detail) => Check::hard(name, false, detail),
    }
}

fn nu_of(datum: &SuperbasicDatum) -> RationalCocharacter {
    RationalCocharacter::embed(&datum.newton_point(), datum.d())
}

fn all_vectors(h: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..h)
        .map(|_| -bound..=bound)
        .fold(vec![Vec::new()], |acc, range| {
            acc.iter()
                .flat_map(|v| {
                    range.clone().map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect()
        })
}

fn sorted(v: &[i64]) -> Vec<i64> {
    let mut w = v.to_vec();
    w.sort_unstable();
    w
}

fn metrics(e: i64) -> Vec<Check> {
    let mut out = Vec::new();

    let nu1 = RelCocharacter::constant(rat(3, 7), 7);
    let nu2 = RelCocharacter::from_ints(&[0, 0, 0, 0, 0, 1, 2]);
    let p = pairing(&nu1, &nu2);
    let n = lattice_points_between(&nu1, &nu2).unwrap_or(-1);
    out.push(Check::hard(
        "lattice figure",
        p == 5 && n == 5,
        format!("pairing {p}, points {n}"),
    ));

    let grid = standard_grid(e);
    out.push(scan(
        "pairing identity",
        &grid,
        "instances",
        |(mu, datum)| {
            let nu = nu_of(datum);
            let lhs = int(pairing_g(&nu, mu));
            let rhs = rho_pairing(&(&RationalCocharacter::from(mu) - &nu))
                - half_defect(&datum.newton_point(), datum.d());
            (lhs != rhs).then(|| format!("{mu}: {lhs} vs {rhs}"))
        },
    ));

    let pairs: Vec<(Vec<i64>, Vec<i64>)> = (1..=3)
        .flat_map(|h| {
            let vs = all_vectors(h, 2);
            let mut pairs = Vec::new();
            for a in &vs {
                for b in &vs {
                    if a.iter().sum::<i64>() == b.iter().sum::<i64>() && dominance_leq_int(a, b) {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
            }
            pairs
        })
        .collect();
    out.push(scan("lattice oracle", &pairs, "pairs", |(a, b)| {
        let (ra, rb) = (RelCocharacter::from_ints(a), RelCocharacter::from_ints(b));
        let p = pairing(&ra, &rb);
        let n = lattice_points_between(&ra, &rb).unwrap_or(-1);
        let diff: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        let br = bracket_int(&diff);
        (p != n || p != br).then(|| format!("{a:?} / {b:?}: pairing {p}, points {n}, bracket {br}"))
    }));

    let vectors: Vec<Vec<i64>> = (1..=4).flat_map(|h| all_vectors(h, 2)).collect();
    out.push(scan("length to dominant", &vectors, "vectors", |v| {
        let (a, b) = (length_to_dom(v), pairing_int(v, &sorted(v)));
        (a != b).then(|| format!("{v:?}: {a} vs {b}"))
    }));
    out
}

fn charts(e: i64) -> Vec<Check> {
    let grid = standard_grid(e);
    let mut out = Vec::new();
    out.push(scan(
        "dimension formula",
        &grid,
        "instances",
        |(mu, datum)| {
            let found = match summarize(mu, datum) {
                Ok(s) => s.max_dim as i64,
                Err(err) => return Some(format!("{mu}: {err}")),
            };
            match dim_formula(mu, &datum.newton_point()) {
                Ok(x) if x == found => None,
                Ok(x) => Some(format!("{mu}: enumerated {found}, formula {x}")),
                Err(err) => Some(format!("{mu}: {err}")),
            }
        },
    ));
    out.push(scan(
        "cyclic chart attains the bound",
        &grid,
        "instances",
        |(mu, datum)| {
            let bound = pairing_g(&nu_of(datum), mu) as usize;
            let cyclic = match ELChart::from_type(mu, datum) {
                Ok(chart) => ExtendedELChart::cyclic(&chart).v_dim(),
                Err(err) => return Some(format!("{mu}: {err}")),
            };
            (cyclic != bound).then(|| format!("{mu}: cyclic {cyclic}, bound {bound}"))
        },
    ));
    let minuscule: Vec<_> = grid
        .iter()
        .filter(|(mu, _)| is_minuscule(mu))
        .cloned()
        .collect();
    out.push(scan(
        "minuscule charts are cyclic",
        &minuscule,
        "instances",
        |(mu, datum)| match enumerate_charts(mu, datum) {
            Ok(r) => r
                .charts
                .iter()
                .find(|c| !c.is_cyclic())
                .map(|c| format!("{mu}: {c}")),
            Err(err) => Some(format!("{mu}: {err}")),
        },
    ));
    out.push(scan(
        "documents re-validate",
        &grid,
        "instances",
        |(mu, datum)| {
            let charts = match enumerate_charts(mu, datum) {
                Ok(r) => r.charts,
                Err(err) => return Some(format!("{mu}: {err}")),
            };
            charts.iter().find_map(|ext| {
                let line = ChartLine::new(ext).ok()?;
                match ChartLine::load(&line.to_json()) {
                    Ok(back) if back == line && line.hodge().ok().as_ref() == Some(mu) => None,
                    Ok(_) => Some(format!("{ext}: reload differs")),
                    Err(err) => Some(format!("{ext}: {err}")),
                }
            })
        },
    ));
    out
}

fn check_frame(ext: &ExtendedELChart) -> Result<usize, String> {
    let frame = DeformationFrame::new(ext);
    let n = frame.n_vec();
    let points: Vec<Vec<usize>> = n.iter().fold(vec![Vec::new()], |acc, &k| {
        acc.iter()
            .flat_map(|v| {
                (0..=k).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    });
    let mut steps = 0;
    for i_vec in points {
        frame
            .phi_index(&i_vec)
            .map_err(|err| format!("{ext}: phi at {i_vec:?}: {err}"))?;
        for sigma in (0..n.len()).filter(|&s| i_vec[s] < n[s]) {
            let rec = frame
                .step_delta(&i_vec, sigma)
                .map_err(|err| format!("{ext}: step {i_vec:?}/{sigma}: {err}"))?;
            let strict = rec.hodge_before != rec.hodge_after
                && dominance_leq_int(&rec.hodge_before, &rec.hodge_after);
            if !rec.holds() || (rec.alpha > 0 && !strict) {
                return Err(format!("{ext}: step {i_vec:?}/{sigma}"));
            }
            steps += 1;
        }
    }
    Ok(steps)
}

fn deformation(e: i64) -> Check {
    let grid = standard_grid(e);
    let outcome = grid
        .par_iter()
        .map(|(mu, datum)| -> Result<usize, String> {
            let charts = enumerate_charts(mu, datum)
                .map_err(|err| err.to_string())?
                .charts;
            let mut steps = 0;
            for ext in charts.iter().filter(|c| !c.is_cyclic()) {
                steps += check_frame(ext)?;
            }
            Ok(steps)
        })
        .collect::<Result<Vec<usize>, String>>()
        .map(|v| format!("{} unit steps", v.iter().sum::<usize>()));
    from_outcome("deformation bookkeeping", outcome)
}

fn levi(e: i64) -> Vec<Check> {
    let e = e.min(3);
    let mut cases: Vec<GCocharacter> = Vec::new();
    for h in 1..=4 {
        cases.extend(dominant_cocharacters(1, h, e));
    }
    for h in 1..=3 {
        cases.extend(dominant_cocharacters(2, h, e));
    }
    let pairs: Vec<(GCocharacter, RelCocharacter)> = cases
        .iter()
        .flat_map(|mu| {
            newton_points(mu)
                .into_iter()
                .map(move |nu| (mu.clone(), nu))
        })
        .collect();
    let recursion = scan(
        "dimension recursion",
        &pairs,
        "(mu, nu) pairs",
        |(mu, nu)| {
            let datum = match GeneralClassDatum::new(mu.d(), nu.clone()) {
                Ok(x) => x,
                Err(err) => return Some(format!("{mu} {nu}: {err}")),
            };
            match recursion_check(mu, &datum) {
                Ok(r) if r.holds => None,
                Ok(r) => Some(format!("{mu} {nu}: {r:?}")),
                Err(err) => Some(format!("{mu} {nu}: {err}")),
            }
        },
    );
    let grid = standard_grid(e);
    let superbasic = scan(
        "superbasic classes agree",
        &grid,
        "instances",
        |(mu, datum)| {
            let general = GeneralClassDatum::from_superbasic(datum);
            let a = general_dim(mu, &general).ok();
            let b = summarize(mu, datum).ok().map(|s| s.max_dim as i64);
            (a.is_none() || a != b).then(|| format!("{mu}: general {a:?}, enumerated {b:?}"))
        },
    );
    vec![recursion, superbasic]
}

fn components(e: i64) -> Vec<Check> {
    let mut out = Vec::new();
    let single: Vec<_> = (2..=4)
        .flat_map(|h| superbasic_instances(1, h, e))
        .filter(|(mu, _)| is_minuscule(mu))
        .collect();
    out.push(scan(
        "d=1 minuscule has one component",
        &single,
        "instances",
        |(mu, datum)| match component_count(mu, datum) {
            Ok(1) => None,
            Ok(n) => Some(format!("{mu}: {n}")),
            Err(err) => Some(format!("{mu}: {err}")),
        },
    ));

    let grid: Vec<_> = standard_grid(e)
        .into_iter()
        .filter(|(mu, _)| (0..mu.d()).any(|t| !mu.row_is_constant(t)))
        .collect();
    let reports: Vec<Result<ComponentLemmaReport, String>> = grid
        .par_iter()
        .map(|(mu, datum)| component_lemma_checks(mu, datum).map_err(|err| format!("{mu}: {err}")))
        .collect();
    let failure = reports.iter().zip(&grid).find_map(|(r, (mu, _))| match r {
        Ok(r) if r.holds() => None,
        Ok(r) => Some(format!("{mu}: {r:?}")),
        Err(err) => Some(err.clone()),
    });
    out.push(match failure {
        None => Check::hard("component lemma", true, format!("{} instances", grid.len())),
        Some(f) => Check::hard("component lemma", false, f),
    });
    let several = reports
        .iter()
        .filter(|r| matches!(r, Ok(ComponentLemmaReport::Several { .. })))
        .count();
    let rotated = reports
        .iter()
        .filter(|r| {
            matches!(
                r,
                Ok(ComponentLemmaReport::Several {
                    rotation_attains: true,
                    ..
                })
            )
        })
        .count();
    out.push(Check::soft(
        "rotated witness is top-dimensional",
        rotated == several,
        format!("{rotated} of {several}"),
    ));

    out.push(scan(
        "sorting and chain bounds",
        &standard_grid(e),
        "instances",
        |(mu, datum)| {
            let result = match enumerate_charts(mu, datum) {
                Ok(r) => r,
                Err(err) => return Some(format!("{mu}: {err}")),
            };
            let cyclic = result
                .charts
                .iter()
                .zip(&result.dims)
                .filter(|(ext, _)| ext.is_cyclic());
            cyclic.into_iter().find_map(|(ext, &dim)| {
                let (parts, chain) = match (s1_s2_decomposition(ext), psi_chain(ext)) {
                    (Ok(p), Ok(c)) => (p, c),
                    (Err(err), _) | (_, Err(err)) => return Some(format!("{ext}: {err}")),
                };
                let ok = parts.s1 + parts.s2 == dim as i64
                    && chain.holds()
                    && chain.total_bound() == parts.s2;
                (!ok).then(|| format!("{ext}: {parts:?}"))
            })
        },
    ));

    let minuscule: Vec<_> = standard_grid(e)
        .into_iter()
        .filter(|(mu, _)| is_minuscule(mu))
        .collect();
    let conj: Vec<_> = minuscule
        .par_iter()
        .map(|(mu, datum)| conjecture_report(mu, datum).map_err(|err| format!("{mu}: {err}")))
        .collect();
    let consistent = conj.iter().find_map(|r| match r {
        Ok(r) if r.is_consistent() => None,
        Ok(r) => Some(format!("{}: {:?}", r.mu, r.flags)),
        Err(err) => Some(err.clone()),
    });
    out.push(match consistent {
        None => Check::hard(
            "conjecture bookkeeping",
            true,
            format!("{} instances", conj.len()),
        ),
        Some(f) => Check::hard("conjecture bookkeeping", false, f),
    });
    let ok: Vec<_> = conj.iter().flatten().collect();
    let tally = |f: fn(&adlv_core::ConjectureReport) -> bool| ok.iter().filter(|r| f(r)).count();
    let total = ok.len();
    for (name, n) in [
        (
            "conjecture: top count predicted",
            tally(|r| r.flags.top_matches_prediction),
        ),
        ("conjecture: map injective", tally(|r| r.flags.injective)),
        ("conjecture: map surjective", tally(|r| r.flags.surjective)),
    ] {
        out.push(Check::soft(name, n == total, format!("{n} of {total}")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_expands_to_every_suite() {
        assert_eq!(Suite::All.members().len(), 5);
        assert_eq!(Suite::Levi.members(), vec![Suite::Levi]);
    }

    #[test]
    fn vectors_are_exhaustive() {
        assert_eq!(all_vectors(3, 2).len(), 125);
        assert_eq!(all_vectors(0, 2), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn metrics_pass_on_the_small_grid() {
        let checks = metrics(GridSize::Small.max_entry());
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert_eq!(checks[0].detail, "pairing 5, points 5");
    }
}
