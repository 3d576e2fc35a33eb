use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galoisph::diagram::{
    diagram_of, equivalent, fibered_barcode, rank_diagram_direct, rank_diagram_formula_zero_top,
    render_diagram, save_diagram, slice_restriction_diagram, Diagram, Route,
};
use galoisph::homology::{parse_filtration, persistence_module};
use galoisph::interleave::{load_interleaving, stability_matching};
use galoisph::linalg::PrimeField;
use galoisph::matching::{
    bottleneck_distance, matching_cost, render_matching, validate_matching, Matching,
};
use galoisph::mobius::{mobius_invert, parse_intfn, render_intfn, zeta_transform};
use galoisph::pmod::parse_module;
use galoisph::poset::load_poset;
use galoisph::rat::{ExtRat, Rat};
use galoisph::Error;

#[derive(Parser)]
#[command(
    name = "galoisph",
    version,
    about = "Exact Mobius-inversion persistence diagrams over finite posets"
)]
struct Cli {
    /// Prime field characteristic (default 2; the GALOISPH_FIELD environment
    /// variable overrides the default, and this flag overrides both).
    #[arg(long, global = true)]
    field: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Kernel,
    Presentation,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Invert,
    Zeta,
}

#[derive(Subcommand)]
enum Cmd {
    /// Persistence diagram of a filtration in one homology dimension.
    Diagram {
        filtration: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Kernel)]
        route: RouteArg,
        /// Write the diagram (and a sibling `.poset` file) here instead of
        /// printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact bottleneck distance between two diagram files.
    Bottleneck {
        dgm1: PathBuf,
        dgm2: PathBuf,
        /// Write the optimal matching certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Stability certificate for an interleaving spec file.
    Stability {
        spec: PathBuf,
        /// Write the glued matching certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Slice diagram of a two-parameter filtration along a line.
    Fiber {
        filtration: PathBuf,
        /// Line spec `o1,o2;d1,d2`: offset and nonnegative direction.
        #[arg(long)]
        line: String,
        #[arg(long, default_value_t = 0)]
        dim: usize,
        /// Also compute the direct slice restriction and check equality.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mobius inversion or zeta transform of a function file over a poset.
    Mobius {
        poset: PathBuf,
        func: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Invert)]
        direction: DirectionArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank diagram of a module file, directly and via the kernel formula.
    Rank {
        poset: PathBuf,
        module: PathBuf,
        /// Also evaluate the kernel-pushforward formula and compare.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized identity suites with a deterministic report.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        iters: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let p = match cli.field {
        Some(p) => p,
        None => match std::env::var("GALOISPH_FIELD") {
            Ok(s) => match s.parse() {
                Ok(p) => p,
                Err(_) => {
                    eprintln!("GALOISPH_FIELD must be a prime, got \"{}\"", s);
                    return ExitCode::from(3);
                }
            },
            Err(_) => 2,
        },
    };
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    if let Cmd::Selftest { seed, iters } = cli.cmd {
        let report = galoisph::selftest::run(seed, iters, field);
        print!("{}", report.text());
        return if report.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(7)
        };
    }
    match run(&cli.cmd, field) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&cli.cmd, &e))
        }
    }
}

fn exit_code(cmd: &Cmd, e: &Error) -> u8 {
    if matches!(e, Error::Parse { .. } | Error::Io(_)) {
        return 2;
    }
    match cmd {
        Cmd::Bottleneck { .. } => {
            if matches!(e, Error::NegativeDiagram(..)) {
                4
            } else {
                3
            }
        }
        Cmd::Stability { .. } => 5,
        Cmd::Fiber { .. } => {
            if matches!(e, Error::BadDirection(_) | Error::EmptyIntersection(_)) {
                6
            } else {
                3
            }
        }
        _ => 3,
    }
}

fn run(cmd: &Cmd, field: PrimeField) -> Result<(), Error> {
    match cmd {
        Cmd::Diagram {
            filtration,
            dim,
            route,
            out,
        } => cmd_diagram(filtration, *dim, *route, out.as_deref(), field),
        Cmd::Bottleneck {
            dgm1,
            dgm2,
            certificate,
        } => cmd_bottleneck(dgm1, dgm2, certificate.as_deref()),
        Cmd::Stability { spec, certificate } => cmd_stability(spec, certificate.as_deref(), field),
        Cmd::Fiber {
            filtration,
            line,
            dim,
            check,
            out,
        } => cmd_fiber(filtration, line, *dim, *check, out.as_deref(), field),
        Cmd::Mobius {
            poset,
            func,
            direction,
            out,
        } => cmd_mobius(poset, func, *direction, out.as_deref()),
        Cmd::Rank {
            poset,
            module,
            compare,
            out,
        } => cmd_rank(poset, module, *compare, out.as_deref(), field),
        Cmd::Selftest { .. } => unreachable!("handled in main"),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn emit_diagram(d: &Diagram, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => save_diagram(d, path),
        None => {
            print!("{}", render_diagram(d, "-"));
            Ok(())
        }
    }
}

fn cmd_diagram(
    path: &Path,
    dim: usize,
    route: RouteArg,
    out: Option<&Path>,
    field: PrimeField,
) -> Result<(), Error> {
    let f = parse_filtration(&read(path)?)?;
    let m = persistence_module(&f, dim, field)?;
    let route = match route {
        RouteArg::Kernel => Route::Kernel,
        RouteArg::Presentation => Route::Presentation,
    };
    emit_diagram(&diagram_of(&m, route), out)
}

/// Re-validate a certificate and confirm its cost before anything reaches
/// disk.
fn write_certificate(m: &Matching, want_cost: &ExtRat, path: &Path) -> Result<(), Error> {
    let again = validate_matching(m.source(), m.target(), m.rows().to_vec())?;
    let cost = matching_cost(&again)?;
    if &cost != want_cost {
        return Err(Error::Validation(format!(
            "certificate cost {} does not match the reported {}",
            cost, want_cost
        )));
    }
    fs::write(path, render_matching(&again)?)
        .map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn cmd_bottleneck(p1: &Path, p2: &Path, certificate: Option<&Path>) -> Result<(), Error> {
    let d1 = galoisph::diagram::load_diagram(p1)?;
    let d2 = galoisph::diagram::load_diagram(p2)?;
    let (dist, matching) = bottleneck_distance(&d1, &d2)?;
    println!("{}", dist);
    if let Some(path) = certificate {
        write_certificate(&matching, &dist, path)?;
    }
    Ok(())
}

fn cmd_stability(spec: &Path, certificate: Option<&Path>, field: PrimeField) -> Result<(), Error> {
    let interleaving = load_interleaving(spec, field)?;
    let report = stability_matching(&interleaving)?;
    println!("epsilon {}", report.epsilon);
    let mut criticals: Vec<Rat> = report.steps.iter().map(|s| s.from.clone()).collect();
    if let Some(last) = report.steps.last() {
        criticals.push(last.to.clone());
    }
    let rendered: Vec<String> = criticals.iter().map(|c| c.to_string()).collect();
    println!("criticals {}", rendered.join(" "));
    for step in &report.steps {
        println!("step {} {} cost {}", step.from, step.to, step.cost);
    }
    println!("final {}", report.cost);
    if report.cost <= report.epsilon {
        println!("final <= epsilon: PASS");
    } else {
        println!("final <= epsilon: FAIL");
    }
    if let Some(path) = certificate {
        write_certificate(&report.matching, &report.cost, path)?;
    }
    Ok(())
}

fn parse_line_spec(line: &str) -> Result<(Vec<Rat>, Vec<Rat>), Error> {
    let bad = |msg: String| Error::BadDirection(msg);
    let mut halves = line.split(';');
    let o = halves
        .next()
        .ok_or_else(|| bad("empty line spec".into()))?;
    let d = halves
        .next()
        .ok_or_else(|| bad(format!("line spec \"{}\" needs offset;direction", line)))?;
    if halves.next().is_some() {
        return Err(bad(format!("line spec \"{}\" has too many ';'", line)));
    }
    let part = |s: &str| -> Result<Vec<Rat>, Error> {
        s.split(',')
            .map(|tok| {
                let v: ExtRat = tok
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad line component \"{}\"", tok)))?;
                v.as_finite()
                    .cloned()
                    .ok_or_else(|| bad(format!("line component \"{}\" must be finite", tok)))
            })
            .collect()
    };
    Ok((part(o)?, part(d)?))
}

fn cmd_fiber(
    path: &Path,
    line: &str,
    dim: usize,
    check: bool,
    out: Option<&Path>,
    field: PrimeField,
) -> Result<(), Error> {
    let (offset, direction) = parse_line_spec(line)?;
    let f = parse_filtration(&read(path)?)?;
    let m = persistence_module(&f, dim, field)?;
    let slice = fibered_barcode(&m, &offset, &direction)?;
    if check {
        let direct = slice_restriction_diagram(&m, &slice)?;
        if !equivalent(&slice.diagram, &direct)? {
            return Err(Error::Validation(
                "pushforward slice differs from the direct restriction".into(),
            ));
        }
        println!("check: equivalent");
    }
    emit_diagram(&slice.diagram, out)
}

fn cmd_mobius(
    poset: &Path,
    func: &Path,
    direction: DirectionArg,
    out: Option<&Path>,
) -> Result<(), Error> {
    let p = load_poset(poset)?;
    let f = parse_intfn(&read(func)?, &p)?;
    let result = match direction {
        DirectionArg::Invert => mobius_invert(&f),
        DirectionArg::Zeta => zeta_transform(&f),
    };
    let text = render_intfn(&result);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_rank(
    poset: &Path,
    module: &Path,
    compare: bool,
    out: Option<&Path>,
    field: PrimeField,
) -> Result<(), Error> {
    let p = load_poset(poset)?;
    let m = parse_module(&read(module)?, &p, field)?;
    let direct = rank_diagram_direct(&m);
    emit_diagram(&direct, out)?;
    if compare {
        let formula = rank_diagram_formula_zero_top(&m);
        if equivalent(&direct, &formula)? {
            println!("compare: equal");
        } else {
            return Err(Error::Validation(
                "formula rank diagram differs from the direct inversion".into(),
            ));
        }
    }
    Ok(())
}
