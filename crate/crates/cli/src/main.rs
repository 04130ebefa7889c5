//! `curvop`: verify presets and twisting morphisms, build units, twist
//! algebras and compute homology windows.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvop::curv::{terminal_morphism, validate_curv, CurvObject};
use curvop::dg::{check_square_zero, Report};
use curvop::endo::{check_structure, curvature_of, twist_algebra, AlgebraManifest};
use curvop::homology::{bracket_kappa_windows, dt_windows, estimated_bracket_size, estimated_dt_size, windows_report};
use curvop::operad::parse_element;
use curvop::presets::{build_preset, PresetName};
use curvop::twisting::{eta_morphism, unit_of, verify_chain_map};
use curvop::Mode;

/// Largest estimated term count run without `--force`.
const SIZE_LIMIT: u128 = 10_000_000;

#[derive(Parser)]
#[command(name = "curvop", version, about = "Curved A-infinity/L-infinity operads and Maurer-Cartan twisting")]
struct Cli {
    /// Print only failures and the summary line.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check d^2 = 0 on the generators of the preset operads.
    VerifyPresets {
        /// One preset (cAinf, AinfPlus, Ainf, cLinf, LinfPlus, Linf, T); all if omitted.
        #[arg(long)]
        preset: Option<PresetName>,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[command(flatten)]
        size: SizeGuard,
    },
    /// Check that the twisting morphism eta commutes with the differentials.
    VerifyEta {
        #[arg(long, value_enum, default_value_t = ModeArg::Ns)]
        mode: ModeArg,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        /// alpha-precision
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[command(flatten)]
        size: SizeGuard,
    },
    /// Build the unit of the adjunction on a curved-object manifest.
    ConstructUnit {
        manifest: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        /// Write the morphism manifest here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Twist an algebra manifest by one of its named elements.
    Twist {
        manifest: PathBuf,
        #[arg(long)]
        element: String,
        /// Arity bound for the structure checks.
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact homology of the bracket with kappa or of d_T on finite slices.
    Homology {
        #[arg(long, value_parser = parse_lemma)]
        lemma: Lemma,
        #[arg(long, value_enum, default_value_t = ModeArg::Ns)]
        mode: ModeArg,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        /// Largest alpha-count (d_T windows).
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        /// Largest kappa-weight (bracket windows).
        #[arg(long, default_value_t = 2)]
        weight: usize,
        #[command(flatten)]
        size: SizeGuard,
    },
    /// Parse an expression over a preset and print its canonical form.
    Parse {
        expression: String,
        #[arg(long, default_value = "cAinf")]
        preset: PresetName,
        /// Arity bound of the preset.
        #[arg(long, default_value_t = 6)]
        arity: usize,
    },
}

#[derive(Args)]
struct SizeGuard {
    /// Run even when the estimated size exceeds the limit.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ns,
    Sym,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ns => Mode::Nonsymmetric,
            ModeArg::Sym => Mode::Symmetric,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Lemma {
    Bracket,
    Dt,
}

fn parse_lemma(s: &str) -> Result<Lemma, String> {
    match s {
        "bracket" | "2.6" => Ok(Lemma::Bracket),
        "dt" | "4.2" | "5.2" => Ok(Lemma::Dt),
        _ => Err(format!("unknown lemma `{s}`; expected `bracket` or `dt`")),
    }
}

/// Outcome of a command: identity failures exit 1, configuration errors 2.
enum Failure {
    Check(String),
    Config(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Check(s) | Failure::Config(s) => f.write_str(s),
        }
    }
}

impl From<curvop::Error> for Failure {
    fn from(e: curvop::Error) -> Failure {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(what: &str, estimate: u128, force: bool) -> Outcome {
    println!("{what}: estimated size {estimate}");
    if estimate > SIZE_LIMIT && !force {
        return Err(Failure::Config(format!(
            "estimated size {estimate} exceeds {SIZE_LIMIT}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn print_report(title: &str, r: &Report, quiet: bool) {
    if quiet {
        for line in r.to_string().lines().filter(|l| l.contains(" FAIL")) {
            println!("{line}");
        }
    } else {
        print!("{r}");
    }
    println!("{title}: {} passed, {} failed, {} skipped", r.passed(), r.failed(), r.skipped());
}

fn conclude(r: &Report) -> Outcome {
    if r.all_pass() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} check(s) failed", r.failed())))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Terms of `d²(g)` for `g` of arity `n`: three-vertex trees.
fn preset_estimate(mode: Mode, n: usize) -> u128 {
    let n = n as u128 + 1;
    match mode {
        Mode::Nonsymmetric => n * n * n,
        Mode::Symmetric => n * n * 3u128.saturating_pow(n as u32),
    }
}

/// Terms of `η(g)` for `g` of arity `n`, times the two-vertex trees of `d g`.
fn eta_estimate(mode: Mode, n: usize, k: usize) -> u128 {
    let terms = match mode {
        Mode::Nonsymmetric => curvop::signs::binomial(n + 1 + k, k),
        Mode::Symmetric => k as u128 + 1,
    };
    let n = n as u128 + k as u128 + 1;
    terms.saturating_mul(n * n)
}

fn verify_presets(preset: Option<PresetName>, arity: usize, force: bool, quiet: bool) -> Outcome {
    let presets = match preset {
        Some(p) => vec![p],
        None => PresetName::ALL.to_vec(),
    };
    let estimate = presets.iter().map(|p| preset_estimate(p.mode(), arity)).max().unwrap_or(0);
    guard("verify-presets", estimate, force)?;
    let mut all = Report::default();
    for p in presets {
        let pres = build_preset(p, arity + 2)?;
        let r = check_square_zero(&pres.differential, arity);
        print_report(&format!("{p}"), &r, quiet);
        all.extend(r);
    }
    conclude(&all)
}

fn verify_eta(mode: Mode, arity: usize, alpha: usize, force: bool, quiet: bool) -> Outcome {
    guard("verify-eta", eta_estimate(mode, arity, alpha + 1), force)?;
    // d lowers the known α-range by one, so images are built at alpha + 1
    let eta = eta_morphism(mode, arity, alpha + 1)?;
    let r = verify_chain_map(&eta, arity);
    print_report(&format!("eta {mode} through alpha-count {alpha}"), &r, quiet);
    conclude(&r)
}

fn construct_unit(path: &Path, alpha: usize, output: Option<&Path>, quiet: bool) -> Outcome {
    let q = CurvObject::from_manifest(&read(path)?).map_err(|e| Failure::Config(e.to_string()))?;
    let report = validate_curv(&q, q.arity_bound);
    if !report.all_pass() {
        print_report("curved object", &report, quiet);
        let failed = report.failures().join(", ");
        return Err(Failure::Check(format!("not a valid curved object: failed {failed}")));
    }
    let phi = unit_of(&q, alpha)?;
    let r = verify_chain_map(&phi, q.arity_bound);
    eprintln!("unit through alpha-count {alpha}: {} chain-map checks passed, {} skipped", r.passed(), r.skipped());
    if let Ok(t) = terminal_morphism(&q) {
        let assignment: Vec<String> = t.images.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| format!("{k} -> {v}")).collect();
        eprintln!("terminal assignment: {}", assignment.join(", "));
    }
    if !r.all_pass() {
        print_report("unit", &r, quiet);
        return conclude(&r);
    }
    emit(&phi.to_manifest(), output)
}

fn twist(path: &Path, element: &str, arity: usize, output: Option<&Path>, quiet: bool) -> Outcome {
    let m = AlgebraManifest::from_json(&read(path)?).map_err(|e| Failure::Config(e.to_string()))?;
    let a = m.element(element).map_err(|e| Failure::Config(e.to_string()))?.clone();
    if !a.is_zero() && a.degree != 0 {
        return Err(Failure::Config(format!("element `{element}` has degree {}, expected 0", a.degree)));
    }
    let s = &m.structure;
    let r = check_structure(s, arity);
    if !r.all_pass() {
        print_report("input structure", &r, quiet);
        return conclude(&r);
    }
    let curvature = curvature_of(s, &a)?;
    eprintln!("curvature: {}", curvature.display(&s.space));
    eprintln!("maurer-cartan: {}", if curvature.is_zero() { "yes" } else { "no" });
    let tw = twist_algebra(s, &a)?;
    let r = check_structure(&tw, arity);
    if !r.all_pass() {
        print_report("twisted structure", &r, quiet);
        return conclude(&r);
    }
    let out = AlgebraManifest {
        structure: tw,
        elements: m.elements.clone(),
    };
    emit(&out.to_json(), output)
}

fn homology(lemma: Lemma, mode: Mode, arity: usize, alpha: usize, weight: usize, force: bool, quiet: bool) -> Outcome {
    let estimate = match lemma {
        Lemma::Bracket => estimated_bracket_size(mode, arity, weight),
        Lemma::Dt => estimated_dt_size(mode, arity, alpha),
    };
    guard("homology", estimate, force)?;
    let windows = match lemma {
        Lemma::Bracket => bracket_kappa_windows(mode, arity, weight)?,
        Lemma::Dt => dt_windows(mode, arity, alpha)?,
    };
    for w in &windows {
        if !quiet || !w.passed() {
            println!("{w}");
        }
    }
    let r = windows_report(&windows);
    println!("homology: {} passed, {} failed", r.passed(), r.failed());
    conclude(&r)
}

fn parse(expression: &str, preset: PresetName, arity: usize) -> Outcome {
    let p = build_preset(preset, arity)?;
    let x = parse_element(expression, &p.table(), p.mode).map_err(|e| Failure::Config(e.to_string()))?;
    let again = parse_element(&x.to_string(), &p.table(), p.mode)?;
    if again != x {
        return Err(Failure::Check(format!("canonical form {x} does not round-trip")));
    }
    println!("{x}");
    println!("arity {} degree {} terms {}", x.arity(), x.degree(), x.len());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let q = cli.quiet;
    match cli.command {
        Command::VerifyPresets { preset, arity, size } => verify_presets(preset, arity, size.force, q),
        Command::VerifyEta { mode, arity, alpha, size } => verify_eta(mode.into(), arity, alpha, size.force, q),
        Command::ConstructUnit { manifest, alpha, output } => construct_unit(&manifest, alpha, output.as_deref(), q),
        Command::Twist {
            manifest,
            element,
            arity,
            output,
        } => twist(&manifest, &element, arity, output.as_deref(), q),
        Command::Homology {
            lemma,
            mode,
            arity,
            alpha,
            weight,
            size,
        } => homology(lemma, mode.into(), arity, alpha, weight, size.force, q),
        Command::Parse {
            expression,
            preset,
            arity,
        } => parse(&expression, preset, arity),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
