//! The subcommands, each turning parsed arguments into a [`RunReport`].

use std::io::Write;
use std::path::PathBuf;

use adlv_core::enumerate::search_all;
use adlv_core::{
    conjecture_report, dim_formula, dimension, general_dim, GCocharacter, GeneralClassDatum,
    RelCocharacter, SuperbasicDatum,
};
use clap::{Args, ValueEnum};

use crate::document::ChartLine;
use crate::error::{CliError, CliResult};
use crate::report::{Check, RunReport};
use crate::suites::{self, GridSize, Suite};
use crate::svg::pairing_figure;

/// A superbasic instance: shape, slopes and a dominant `mu`.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Degree of the unramified extension.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Rank of each factor.
    #[arg(long)]
    pub h: usize,
    /// Per-component slopes `m_tau`, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "m"
    )]
    pub slopes: Option<Vec<i64>>,
    /// Total slope `m`, placed on component 0.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Entries of `mu`, row-major, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub mu: Vec<i64>,
}

impl InstanceArgs {
    pub fn mu(&self) -> CliResult<GCocharacter> {
        let mu = GCocharacter::new(self.d, self.h, self.mu.clone())?;
        if !mu.is_dominant() {
            return Err(CliError::Input(format!("mu = {mu} is not dominant")));
        }
        Ok(mu)
    }

    /// The datum, after checking that `mu` has the right Kottwitz invariant.
    pub fn datum(&self, mu: &GCocharacter) -> CliResult<SuperbasicDatum> {
        let m = match (&self.slopes, self.m) {
            (Some(s), _) => s.iter().sum(),
            (None, Some(m)) => m,
            (None, None) => return Err(CliError::Input("give --slopes or --m".into())),
        };
        if mu.total() != m {
            return Err(adlv_core::Error::KappaMismatch {
                mu_sum: mu.total(),
                kappa: m,
            }
            .into());
        }
        Ok(match &self.slopes {
            Some(s) => SuperbasicDatum::new(self.d, self.h, s.clone())?,
            None => SuperbasicDatum::with_total(self.d, self.h, m)?,
        })
    }

    fn echo(&self, report: &mut RunReport) {
        report.param("d", self.d).param("h", self.h);
        match (&self.slopes, self.m) {
            (Some(s), _) => report.param("slopes", join(s)),
            (None, Some(m)) => report.param("m", m),
            _ => report,
        };
        report.param("mu", join(&self.mu));
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Enumerate,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long)]
    pub h: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["m", "newton"])]
    pub slopes: Option<Vec<i64>>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "newton")]
    pub m: Option<i64>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub mu: Vec<i64>,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    pub method: Method,
    /// Newton point of a general class, one slope per coordinate (`p/q` allowed).
    #[arg(long, allow_hyphen_values = true)]
    pub newton: Option<String>,
}

impl DimArgs {
    fn instance(&self) -> InstanceArgs {
        InstanceArgs {
            d: self.d,
            h: self.h,
            slopes: self.slopes.clone(),
            m: self.m,
            mu: self.mu.clone(),
        }
    }
}

pub fn cmd_dim(args: &DimArgs) -> CliResult<RunReport> {
    let instance = args.instance();
    let mu = instance.mu()?;
    let mut report = RunReport::new("dim");
    report.columns(&["quantity", "value"]);

    if let Some(raw) = &args.newton {
        report
            .param("d", args.d)
            .param("h", args.h)
            .param("newton", raw)
            .param("mu", join(&args.mu));
        if args.method != Method::Formula {
            return Err(CliError::Input(
                "enumeration needs a superbasic class (--slopes or --m)".into(),
            ));
        }
        let nu = RelCocharacter::parse(raw)?;
        let datum = GeneralClassDatum::new(args.d, nu)?;
        if mu.total() != datum.kappa() {
            return Err(adlv_core::Error::KappaMismatch {
                mu_sum: mu.total(),
                kappa: datum.kappa(),
            }
            .into());
        }
        let dim = general_dim(&mu, &datum)?;
        report.row(vec!["formula".into(), dim.to_string()]);
        report.row(vec!["dimension".into(), dim.to_string()]);
        return Ok(report);
    }

    instance.echo(&mut report);
    report.param("method", format!("{:?}", args.method).to_lowercase());
    let datum = instance.datum(&mu)?;
    let formula = match args.method {
        Method::Formula | Method::Both => Some(dim_formula(&mu, &datum.newton_point())?),
        Method::Enumerate => None,
    };
    let enumerated = match args.method {
        Method::Enumerate | Method::Both => Some(dimension(&mu, &datum)?),
        Method::Formula => None,
    };
    if let Some(x) = formula {
        report.row(vec!["formula".into(), x.to_string()]);
    }
    if let Some(x) = enumerated {
        report.row(vec!["enumerate".into(), x.to_string()]);
    }
    if let (Some(a), Some(b)) = (formula, enumerated) {
        if a != b {
            return Err(CliError::Disagreement(format!(
                "formula gives {a}, enumeration gives {b}"
            )));
        }
        report.check(Check::hard("agreement", true, format!("{a} = {b}")));
    }
    let dim = formula.or(enumerated).expect("one method always runs");
    report.row(vec!["dimension".into(), dim.to_string()]);
    Ok(report)
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// JSON-lines output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Streams one [`ChartLine`] per chart to `sink`, in canonical order.
pub fn cmd_enumerate(args: &EnumerateArgs, sink: &mut dyn Write) -> CliResult<RunReport> {
    let mu = args.instance.mu()?;
    let datum = args.instance.datum(&mu)?;
    let mut report = RunReport::new("enumerate");
    args.instance.echo(&mut report);
    if let Some(p) = &args.out {
        report.param("out", p.display());
    }
    let target = args
        .out
        .as_ref()
        .map_or("stdout".to_string(), |p| p.display().to_string());

    let types = search_all(&mu, &datum)?;
    let (mut charts, mut cyclic, mut max_dim, mut top) = (0usize, 0usize, 0usize, 0usize);
    for t in &types {
        for (ext, dim) in t.charts() {
            let line = ChartLine::new(&ext)?;
            writeln!(sink, "{}", line.to_json()).map_err(|e| CliError::io(&target, e))?;
            charts += 1;
            cyclic += usize::from(line.cyclic);
            match dim.cmp(&max_dim) {
                std::cmp::Ordering::Greater => (max_dim, top) = (dim, 1),
                std::cmp::Ordering::Equal => top += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sink.flush().map_err(|e| CliError::io(&target, e))?;
    report.columns(&["quantity", "value"]);
    for (k, v) in [
        ("types", types.len()),
        ("charts", charts),
        ("cyclic", cyclic),
        ("dimension", max_dim),
        ("top-dimensional", top),
    ] {
        report.row(vec![k.into(), v.to_string()]);
    }
    Ok(report)
}

#[derive(Debug, Clone, Args)]
pub struct PolygonArgs {
    /// Upper vector, e.g. `3/7,3/7,3/7,3/7,3/7,3/7,3/7`.
    #[arg(long, allow_hyphen_values = true)]
    pub nu1: String,
    /// Lower vector, integral.
    #[arg(long, allow_hyphen_values = true)]
    pub nu2: String,
    /// Where to write the SVG.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_polygon(args: &PolygonArgs) -> CliResult<RunReport> {
    let nu1 = RelCocharacter::parse(&args.nu1)?;
    let nu2 = RelCocharacter::parse(&args.nu2)?;
    let figure = pairing_figure(&nu1, &nu2)?;
    std::fs::write(&args.out, &figure.svg)
        .map_err(|e| CliError::io(args.out.display().to_string(), e))?;
    let dots = figure.points.len() as i64;
    let value = adlv_core::pairing(&nu1, &nu2);
    if dots != value {
        return Err(CliError::Disagreement(format!(
            "{dots} dots but pairing {value}"
        )));
    }
    let mut report = RunReport::new("polygon");
    report
        .param("nu1", &nu1)
        .param("nu2", &nu2)
        .param("out", args.out.display())
        .columns(&["quantity", "value"])
        .row(vec!["dots".into(), dots.to_string()])
        .row(vec!["pairing".into(), value.to_string()])
        .check(Check::hard(
            "dots equal pairing",
            true,
            format!("{dots} = {value}"),
        ));
    Ok(report)
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = GridSize::Small)]
    pub grid: GridSize,
}

/// Runs the suites; hard failures are left in the report for the caller.
pub fn cmd_verify(args: &VerifyArgs) -> CliResult<RunReport> {
    let mut report = RunReport::new("verify");
    report
        .param("suite", args.suite.name())
        .param("grid", args.grid.name());
    for (suite, check) in suites::run(args.suite, args.grid)? {
        report.check(Check {
            name: format!("{}: {}", suite.name(), check.name),
            ..check
        });
    }
    Ok(report)
}

pub fn cmd_conjecture(args: &InstanceArgs) -> CliResult<RunReport> {
    let mu = args.mu()?;
    if !adlv_core::is_minuscule(&mu) {
        return Err(CliError::Input(format!("mu = {mu} is not minuscule")));
    }
    let datum = args.datum(&mu)?;
    let result = conjecture_report(&mu, &datum)?;
    let mut report = RunReport::new("conjecture");
    args.echo(&mut report);
    report.columns(&["quantity", "value"]);
    for (k, v) in [
        ("charts", result.chart_count),
        ("orbit", result.orbit_count),
        ("top", result.top_count),
        ("predicted top", result.predicted_top),
    ] {
        report.row(vec![k.into(), v.to_string()]);
    }
    for (tilde, n) in &result.image {
        report.row(vec![format!("image {tilde}"), n.to_string()]);
    }
    report.check(Check::hard(
        "bookkeeping consistent",
        result.is_consistent(),
        "",
    ));
    let f = &result.flags;
    report
        .check(Check::soft(
            "top count as predicted",
            f.top_matches_prediction,
            "",
        ))
        .check(Check::soft("injective", f.injective, ""))
        .check(Check::soft("surjective", f.surjective, ""));
    report.details = Some(serde_json::to_value(&result)?);
    Ok(report)
}
