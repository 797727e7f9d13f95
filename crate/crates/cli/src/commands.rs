use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use nullcone::induction::{induce, Induced, InductionOptions, LeviStratum, Method};
use nullcone::instability::{torus_optimal, Budget, DEFAULT_BUDGET};
use nullcone::realization::{SamplingOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
use nullcone::relative_spec::load_relative;
use nullcone::root_datum::{mu_p, simple_name, LatticeKind, ParabolicSpec, RootDatum};
use nullcone::stratification::{enumerate_strata_with_budget, StratumLabel};
use nullcone::{Error, RationalVector};

use crate::record::*;

#[derive(Debug, Parser)]
#[command(name = "nullcone", version, about = "Exact instability strata of nilpotent cones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stratum table of the nilpotent cone.
    Strata(StrataArgs),
    /// Optimal virtual cocharacter of a support over the maximal torus.
    Optimal(OptimalArgs),
    /// The min-norm point `μ_P` of a standard parabolic.
    MuP(MuPArgs),
    /// Induce a Levi stratum through a standard parabolic.
    Induce(InduceArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LatticeArg {
    Sc,
    Adjoint,
}

#[derive(Debug, Args)]
pub struct DatumArgs {
    /// Split type such as A2, C2, G2, A1xA1.
    #[arg(long = "type", conflicts_with = "relative", required_unless_present = "relative")]
    pub type_tag: Option<String>,
    /// Built-in relative datum (su21, bc1(m1,m2)) or a description file.
    #[arg(long)]
    pub relative: Option<String>,
    /// File with one positive rational Gram scale per irreducible factor.
    #[arg(long)]
    pub gram: Option<PathBuf>,
    /// Cocharacter lattice used for levels.
    #[arg(long, value_enum)]
    pub lattice: Option<LatticeArg>,
    /// Limit on semistability calls.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Emit the structured record as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct StrataArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Comma-separated root names such as `a,b` or `2a+b`.
    #[arg(long, required_unless_present = "support_raw", conflicts_with = "support_raw")]
    pub support: Option<String>,
    /// Raw characters, `;`-separated, coordinates `,`-separated: `1,-1;0,2`.
    #[arg(long, allow_hyphen_values = true)]
    pub support_raw: Option<String>,
}

#[derive(Debug, Args)]
pub struct MuPArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Simple roots of the Levi, by name (`a,b`); empty for the minimal parabolic.
    #[arg(long, default_value = "")]
    pub levi: String,
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    #[arg(long, default_value = "")]
    pub levi: String,
    /// `trivial`, or a Levi label in coordinates such as `(1/2,-1/2)`.
    #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
    pub stratum: String,
    /// Seed for the sampling fallback.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Samples drawn by the fallback.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

impl Command {
    pub fn json(&self) -> bool {
        self.datum_args().json
    }

    fn datum_args(&self) -> &DatumArgs {
        match self {
            Self::Strata(a) => &a.datum,
            Self::Optimal(a) => &a.datum,
            Self::MuP(a) => &a.datum,
            Self::Induce(a) => &a.datum,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Engine(#[from] Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// 2 for bad input, 3 for exhausted budgets and size limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Engine(Error::BudgetExceeded { .. } | Error::SizeLimit { .. }) => 3,
            _ => 2,
        }
    }
}

fn load_datum(args: &DatumArgs, inputs: &mut Inputs) -> Result<RootDatum, CliError> {
    let mut datum = match (&args.type_tag, &args.relative) {
        (Some(t), None) => RootDatum::build(t)?,
        (None, Some(r)) => load_relative(r)?,
        _ => return Err(CliError::Input("give exactly one of --type and --relative".into())),
    };
    inputs.datum = datum.label().to_string();
    if let Some(l) = args.lattice {
        if datum.is_relative() {
            return Err(CliError::Input("--lattice applies to split data only".into()));
        }
        let (kind, name) = match l {
            LatticeArg::Sc => (LatticeKind::SimplyConnected, "sc"),
            LatticeArg::Adjoint => (LatticeKind::Adjoint, "adjoint"),
        };
        datum = datum.with_lattice(kind)?;
        inputs.lattice = Some(name.into());
    }
    if let Some(path) = &args.gram {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let scales = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| parse_rat(s).ok_or_else(|| CliError::Input(format!("bad Gram scale `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        datum = datum.with_factor_scales(&scales)?;
        inputs.gram_scales = Some(scales.iter().map(rat_str).collect());
    }
    inputs.budget = args.budget;
    Ok(datum)
}

fn levi_names(p: &ParabolicSpec) -> Vec<String> {
    p.levi.iter().map(|&i| simple_name(i)).collect()
}

fn weight_name(datum: &RootDatum, w: &RationalVector) -> String {
    datum.root_name(w).unwrap_or_else(|| w.to_string())
}

pub fn stratum_row(label: &StratumLabel) -> StratumRow {
    StratumRow {
        mu: vec_strs(&label.mu),
        lambda: vec_strs(&label.lambda),
        m: label.m,
        q2: rat_str(&label.q2),
        parabolic: levi_names(&label.parabolic),
        dim_saturation: label.dim_saturation,
        dim_stratum: label.dim_stratum,
        certificate: label.certificate.as_ref().map(TraceRecord::from),
    }
}

fn record(command: &str, inputs: Inputs, results: Results, diagnostics: Vec<Diagnostic>) -> OutputRecord {
    OutputRecord {
        schema_version: SCHEMA_VERSION.into(),
        command: command.into(),
        inputs,
        results,
        diagnostics,
    }
}

pub fn run(command: &Command) -> Result<OutputRecord, CliError> {
    let mut inputs = Inputs::default();
    match command {
        Command::Strata(a) => {
            let datum = load_datum(&a.datum, &mut inputs)?;
            let table = enumerate_strata_with_budget(&datum, &mut Budget::new(a.datum.budget))?;
            let diagnostics = table
                .rejected
                .iter()
                .map(|r| Diagnostic {
                    kind: "rejected_candidate".into(),
                    message: format!(
                        "candidate {} passes the optimality conditions but its stratum is empty: \
                         the generic graded vector is unstable for the orthogonal Levi",
                        r.mu
                    ),
                    label: Some(vec_strs(&r.mu)),
                    trace: Some(TraceRecord::from(&r.trace)),
                })
                .collect();
            Ok(record(
                "strata",
                inputs,
                Results::Strata {
                    rows: table.rows.iter().map(stratum_row).collect(),
                },
                diagnostics,
            ))
        }
        Command::Optimal(a) => {
            let datum = load_datum(&a.datum, &mut inputs)?;
            let support: Vec<RationalVector> = match (&a.support, &a.support_raw) {
                (Some(names), None) => names
                    .split(',')
                    .map(|s| datum.parse_root_expr(s))
                    .collect::<Result<_, _>>()?,
                (None, Some(raw)) => raw
                    .split(';')
                    .map(|s| {
                        s.parse::<RationalVector>()
                            .map_err(|_| CliError::Input(format!("bad character `{s}`")))
                    })
                    .collect::<Result<_, _>>()?,
                _ => return Err(CliError::Input("give exactly one of --support and --support-raw".into())),
            };
            inputs.support = Some(support.iter().map(vec_strs).collect());
            let k = torus_optimal(&support, &datum)?;
            let (dominant, _) = datum.dominantize(&k.mu);
            let kr = KempfRecord {
                mu: vec_strs(&k.mu),
                lambda: vec_strs(&k.lambda),
                m: k.m,
                q2: rat_str(&k.q2),
                dominant: vec_strs(&dominant),
                active_set: k
                    .certificate
                    .active_set
                    .iter()
                    .map(|&i| weight_name(&datum, &support[i]))
                    .collect(),
                multipliers: k.certificate.multipliers.iter().map(rat_str).collect(),
            };
            Ok(record("optimal", inputs, Results::Optimal(kr), vec![]))
        }
        Command::MuP(a) => {
            let datum = load_datum(&a.datum, &mut inputs)?;
            let p = datum.parabolic(&datum.resolve_simple_names(&a.levi)?)?;
            inputs.levi = Some(levi_names(&p));
            let value = mu_p(&p, &datum)?;
            let rec = MuPRecord {
                mu_p: vec_strs(&value),
                delta_p: datum.delta_p(&p).into_iter().map(simple_name).collect(),
                cone_route: vec_strs(&datum.mu_p_qp(&p)?),
                closed_form_route: vec_strs(&datum.mu_p_closed_form(&p)),
            };
            Ok(record("mu-p", inputs, Results::MuP(rec), vec![]))
        }
        Command::Induce(a) => {
            let datum = load_datum(&a.datum, &mut inputs)?;
            let p = datum.parabolic(&datum.resolve_simple_names(&a.levi)?)?;
            inputs.levi = Some(levi_names(&p));
            let stratum = if a.stratum.trim().eq_ignore_ascii_case("trivial") {
                LeviStratum::Trivial
            } else {
                LeviStratum::Label(
                    a.stratum
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad stratum `{}`", a.stratum)))?,
                )
            };
            inputs.stratum = Some(match &stratum {
                LeviStratum::Trivial => "trivial".into(),
                LeviStratum::Label(x) => x.to_string(),
            });
            inputs.seed = Some(a.seed);
            inputs.samples = Some(a.samples);
            let options = InductionOptions {
                sampling: SamplingOptions {
                    seed: a.seed,
                    samples: a.samples,
                    ..SamplingOptions::default()
                },
                budget: a.datum.budget,
            };
            let res = induce(&datum, &p, &stratum, &options)?;
            let (status, induced, fallback) = match &res.induced {
                Induced::Certified(l) => ("certified", Some(stratum_row(l)), None),
                Induced::Flagged { fallback } => (
                    "flagged",
                    None,
                    fallback.as_ref().map(|f| FallbackRecord {
                        mu: vec_strs(&f.mu),
                        q2: rat_str(&f.q2),
                        seed: f.seed,
                        samples: f.samples,
                        evaluated: f.evaluated,
                        best_effort: true,
                    }),
                ),
            };
            let rec = InductionRecord {
                status: status.into(),
                eta: vec_strs(&res.eta),
                blade_nonempty: res.blade_nonempty,
                method: match res.method {
                    Method::Primary => "primary",
                    Method::SamplingFallback => "sampling_fallback",
                }
                .into(),
                w_sub: res
                    .w_sub
                    .iter()
                    .map(|(w, m)| WeightRecord {
                        weight: vec_strs(w),
                        mult: *m,
                    })
                    .collect(),
                induced,
                fallback,
            };
            let diagnostics = res.diagnostics.iter().map(Diagnostic::note).collect();
            Ok(record("induce", inputs, Results::Induce(rec), diagnostics))
        }
    }
}
