use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use setdyn::harness::{self, report, DEFAULT_RANDOM_COUNT};
use setdyn::pl::analysis::{
    default_eps_schedule, find_non_sensitivity_witness_with, is_lsc, pl_is_transitive_bounded,
    pl_periodic_dense_bounded, verify_strong_sensitivity, DEFAULT_GRID, DEFAULT_HORIZON,
};
use setdyn::shift::oracle::shift_oracle;
use setdyn::system_file::{load_system, SystemDescription};
use setdyn::{Certificate, Error, IntervalUnion, PLMultiMap, Rational, RelationSystem, Result, Truth, Verdict, VertexShift};

#[derive(Parser)]
#[command(name = "setdyn", version, about = "Exact checks for set-valued dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Transitive,
    PeriodicDense,
    Sensitive,
    StrongSensitive,
    Devaney,
    StrongDevaney,
    Lsc,
    Surjective,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    Map,
    Inverse,
    Limit,
    InverseLimit,
}

#[derive(Subcommand)]
enum Command {
    /// Decide or bound one property of a system (`builtin:NAME` selects a built-in).
    Check {
        file: String,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, value_enum, default_value = "map")]
        object: Object,
        /// Grid points `i/N` for interval searches.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Comma-separated radii such as `1/8,1/16`.
        #[arg(long)]
        eps_schedule: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[arg(long, default_value = "1/8")]
        delta: Rational,
        /// Dyadic resolution of the basis cells.
        #[arg(long, default_value_t = 3)]
        resolution: u32,
        /// Largest period tried for periodic points.
        #[arg(long, default_value_t = 4)]
        period: usize,
    },
    /// Brute-force bundle for the limit shift of a finite system.
    Oracle {
        file: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        period: usize,
    },
    /// Run registered claims and write a JSON report.
    Harness {
        /// `all` or comma-separated claim ids.
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long, default_value_t = 3)]
        exhaustive: usize,
        #[arg(long, default_value_t = DEFAULT_RANDOM_COUNT)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the worked-example suite.
    Examples {
        #[arg(long)]
        json: bool,
    },
    /// Render a JSON report as text.
    Report { file: String },
}

fn parse_schedule(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|p| p.trim().parse::<Rational>().map_err(|e| Error::Argument(format!("bad radius {p:?}: {e}"))))
        .collect()
}

fn unsupported(what: &str) -> Error {
    Error::Argument(format!("{what} is not available for this system"))
}

fn check_finite(f: &RelationSystem, property: Property, object: Object) -> Result<Verdict> {
    let map = match object {
        Object::Map | Object::Limit => f.clone(),
        Object::Inverse | Object::InverseLimit => f.invert()?,
    };
    if matches!(object, Object::Map | Object::Inverse) {
        return Ok(match property {
            Property::Transitive => map.is_transitive(),
            Property::PeriodicDense => map.periodic_dense(),
            Property::Sensitive => map.is_sensitive(),
            Property::StrongSensitive => map.is_strongly_sensitive(),
            Property::Devaney => map.is_devaney(),
            Property::StrongDevaney => map.is_strong_devaney(),
            Property::Surjective => map.is_surjective(),
            Property::Lsc => Verdict::yes(Certificate::Note {
                text: "every map on a discrete space is lower semi-continuous".into(),
            }),
        });
    }
    let shift = VertexShift::build(&map);
    Ok(match property {
        Property::Transitive => shift.transitive(),
        Property::PeriodicDense => shift.periodic_dense(),
        Property::Sensitive => shift.sensitive(),
        Property::Devaney => shift.devaney(),
        _ => return Err(unsupported("this property of the shift")),
    })
}

struct SearchArgs {
    grid: usize,
    eps: Vec<Rational>,
    horizon: usize,
    delta: Rational,
    resolution: u32,
    period: usize,
}

fn check_pl(f: &PLMultiMap, property: Property, object: Object, a: &SearchArgs) -> Result<Verdict> {
    let map = match object {
        Object::Map => f.clone(),
        Object::Inverse => f.invert()?,
        Object::Limit | Object::InverseLimit => return Err(unsupported("a limit check")),
    };
    let transitive = || pl_is_transitive_bounded(&map, a.resolution, a.horizon);
    let dense = || pl_periodic_dense_bounded(&map, a.resolution, a.period);
    let sensitive = || find_non_sensitivity_witness_with(&map, &a.delta, a.grid, &a.eps, a.horizon);
    let strong = || verify_strong_sensitivity(&map, &a.delta, a.grid, &a.eps, a.horizon);
    Ok(match property {
        Property::Transitive => transitive()?,
        Property::PeriodicDense => dense()?,
        Property::Sensitive => sensitive()?,
        Property::StrongSensitive => strong()?,
        Property::Devaney => Verdict::all(vec![
            ("transitive", transitive()?),
            ("periodic-dense", dense()?),
            ("sensitive", sensitive()?),
        ]),
        Property::StrongDevaney => Verdict::all(vec![
            ("transitive", transitive()?),
            ("periodic-dense", dense()?),
            ("strongly-sensitive", strong()?),
        ]),
        Property::Lsc => is_lsc(&map),
        Property::Surjective => {
            let img = map.image_of(&IntervalUnion::unit());
            Verdict::new(
                Truth::from_bool(img.is_unit()),
                Certificate::Note {
                    text: format!("F([0, 1]) = {img}"),
                },
            )
        }
    })
}

// A closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")))
}

fn exit_for(values: &[Truth]) -> ExitCode {
    if !values.is_empty() && values.iter().all(|v| *v == Truth::Undecided) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check {
            file,
            property,
            object,
            grid,
            eps_schedule,
            horizon,
            delta,
            resolution,
            period,
        } => {
            let sys = load_system(&file)?;
            let verdict = match &sys {
                SystemDescription::Finite(f) => check_finite(f, property, object)?,
                SystemDescription::Pl(f) => {
                    let eps = match eps_schedule {
                        Some(s) => parse_schedule(&s)?,
                        None => default_eps_schedule(),
                    };
                    let args = SearchArgs {
                        grid,
                        eps,
                        horizon,
                        delta,
                        resolution,
                        period,
                    };
                    check_pl(f, property, object, &args)?
                }
            };
            print_json(&verdict)?;
            Ok(exit_for(&[verdict.value]))
        }
        Command::Oracle { file, depth, period } => {
            let SystemDescription::Finite(f) = load_system(&file)? else {
                return Err(unsupported("the shift oracle"));
            };
            let shift = VertexShift::build(&f);
            let bundle = shift_oracle(&shift, depth, period)?;
            let disagreements = bundle.disagreements(&shift);
            print_json(&serde_json::json!({ "oracle": bundle, "disagreements": disagreements }))?;
            Ok(exit_for(&[
                bundle.transitive.value,
                bundle.periodic_dense.value,
                bundle.sensitive.value,
            ]))
        }
        Command::Harness {
            claims,
            exhaustive,
            random,
            seed,
            out,
        } => {
            let ids: Option<Vec<String>> = if claims == "all" {
                None
            } else {
                Some(claims.split(',').map(|s| s.trim().to_string()).collect())
            };
            let families = harness::default_families(exhaustive, random, seed);
            let reports = harness::run_claims(ids.as_deref(), &families)?;
            let text = report::to_json(&reports);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => emit(&text)?,
            }
            let statuses: Vec<Truth> = reports
                .iter()
                .map(|r| {
                    if r.status == harness::Status::Undecided {
                        Truth::Undecided
                    } else {
                        Truth::True
                    }
                })
                .collect();
            Ok(exit_for(&statuses))
        }
        Command::Examples { json } => {
            let reports = harness::paper_example_suite();
            let text = report::to_json(&reports);
            if json {
                emit(&text)?;
            } else {
                emit(&report::render(&text)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { file } => {
            let text = std::fs::read_to_string(&file)?;
            emit(&report::render(&text)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
