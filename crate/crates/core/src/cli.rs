//! Command-line front end: argument parsing, builder names, file input and JSON reports.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 input error, 3 window insufficient.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::cech::{self, IdentificationStatus, PolyhedralTower};
use crate::error::{Error, Result};
use crate::factor::{self, DiagonalStop, FactorOutcome, FindingStatus};
use crate::fgab::{self, FgAbGroup, FgAbHom, Subgroup};
use crate::simplicial::{self, SimplicialComplex};
use crate::tower::{self, FormulaHom, InverseTower, Thread, ThreadHom, TowerJson};
use crate::witnesses::{self, HigmanSystem};
use crate::zlinalg::{self, IntMatrix};

pub const WINDOW_MAX_VAR: &str = "PROLIM_WINDOW_MAX";
pub const DEFAULT_WINDOW_MAX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    VerificationFailed = 1,
    InputError = 2,
    WindowInsufficient = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of_error(e: &Error) -> Self {
        match e {
            Error::NotStabilizedInWindow { .. } => ExitCode::WindowInsufficient,
            _ => ExitCode::InputError,
        }
    }

    /// Combines two parts: a failed verification dominates an insufficient window.
    fn worst(self, other: Self) -> Self {
        let rank = |c: Self| match c {
            ExitCode::Success => 0,
            ExitCode::WindowInsufficient => 1,
            ExitCode::InputError => 2,
            ExitCode::VerificationFailed => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// Parsed command line.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "prolim",
    version,
    about = "Exact computations with abelian groups, towers and polyhedral (co)homology"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print a human-readable summary on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Smith normal form of a matrix file.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    #[command(subcommand)]
    Group(GroupCommand),
    /// Hom(A, B).
    Hom(PairArgs),
    /// Ext(A, B).
    Ext(PairArgs),
    /// Saturation of a subgroup of a free group.
    Purify {
        /// Ambient group (`Z^3` style or a JSON file).
        #[arg(long)]
        ambient: String,
        /// Matrix file whose columns generate the subgroup.
        #[arg(long)]
        generators: PathBuf,
    },
    #[command(subcommand)]
    Tower(TowerCommand),
    #[command(subcommand)]
    Complex(ComplexCommand),
    #[command(subcommand)]
    Cech(CechCommand),
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Clone, Debug, Subcommand)]
pub enum GroupCommand {
    /// Canonical form of a group.
    Canon {
        #[arg(long)]
        group: String,
    },
}

#[derive(Clone, Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub dom: String,
    #[arg(long)]
    pub cod: String,
}

#[derive(Clone, Debug, Args)]
pub struct TowerArgs {
    /// Builder (`hawaii`, `solenoid:p`, `const:<group>`) or tower JSON file.
    #[arg(long)]
    pub tower: String,
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum TowerCommand {
    /// Mittag-Leffler analysis and lim¹ status.
    Analyze(TowerArgs),
    /// Diagnostics for colim Hom(H_i, G) → Hom(lim H, G).
    Nabla {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Factor a homomorphism out of the limit through a finite stage.
    Factor {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Stage of a factored homomorphism given by `--hom`.
        #[arg(long, requires = "hom")]
        stage: Option<usize>,
        /// Matrix file of the stage homomorphism.
        #[arg(long)]
        hom: Option<PathBuf>,
        /// `coordinate:c` or `sum` on the top component.
        #[arg(long, conflicts_with = "hom")]
        formula: Option<String>,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum ComplexCommand {
    Homology {
        /// Builder (`circle:m`, `bouquet:i`, `sphere2`, `wedge_spheres:i`, `proj_plane`, `point`) or JSON file.
        #[arg(long)]
        complex: String,
        #[arg(long)]
        dim: usize,
    },
    Cohomology {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum CechCommand {
    /// Stage-wise universal coefficient sequences, ladder and colimit.
    Uct {
        /// Builder (`hawaiian`, `solenoid:p`, `const:<complex>`) or tower JSON file.
        #[arg(long)]
        tower: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum DemoCommand {
    Hawaiian {
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
    Solenoid {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 5)]
        window: usize,
    },
    Projplane {
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
    Padic {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long = "K", default_value_t = 10)]
        precision: u32,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    Higman {
        /// Comma-separated positive coefficients.
        #[arg(long, value_delimiter = ',', default_value = "2,2,2,2")]
        n: Vec<i64>,
        /// Comma-separated targets in the coefficient group (single-generator groups).
        #[arg(long, value_delimiter = ',', default_value = "1,1,1,1")]
        b: Vec<i64>,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    Specker {
        #[arg(long, default_value_t = 5)]
        window: usize,
    },
}

/// Result of one run: the exit code and the JSON report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: ExitCode,
    pub report: Value,
}

impl Outcome {
    fn new(exit: ExitCode, result: Value) -> Self {
        Outcome {
            exit,
            report: result,
        }
    }

    fn error(e: &Error) -> Self {
        let kind = match e {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Input(_) => "input",
            Error::IllDefined(_) => "ill_defined",
            Error::Precondition(_) => "precondition",
            Error::NotStabilizedInWindow { .. } => "not_stabilized_in_window",
        };
        Outcome::new(
            ExitCode::of_error(e),
            json!({"error": {"kind": kind, "message": e.to_string()}}),
        )
    }

    /// Report text: pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut wrapped = serde_json::Map::new();
        wrapped.insert("exit_code".into(), json!(self.exit.code()));
        wrapped.insert("report".into(), self.report.clone());
        let mut s =
            serde_json::to_string_pretty(&Value::Object(wrapped)).expect("value serializes");
        s.push('\n');
        s
    }
}

pub fn window_max() -> usize {
    std::env::var(WINDOW_MAX_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WINDOW_MAX)
}

fn check_window(w: usize) -> Result<usize> {
    let max = window_max();
    if w < 2 {
        return Err(Error::Input(format!("window must be at least 2, got {w}")));
    }
    if w > max {
        return Err(Error::Input(format!(
            "window {w} exceeds {WINDOW_MAX_VAR}={max}"
        )));
    }
    Ok(w)
}

/// Runs a parsed command without touching stdout.
pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(&config.command) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

/// Full entry point: parse, run, write the report; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::InputError.code()
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&config);
    let text = outcome.render();
    match &config.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::InputError.code();
            }
        }
        None => print!("{text}"),
    }
    if config.verbose || config.out.is_some() {
        eprintln!("{}", summary(&outcome));
    }
    outcome.exit.code()
}

fn summary(o: &Outcome) -> String {
    let verdict = match o.exit {
        ExitCode::Success => "ok",
        ExitCode::VerificationFailed => "verification failed",
        ExitCode::InputError => "input error",
        ExitCode::WindowInsufficient => "window insufficient",
    };
    match o.report.get("error") {
        Some(e) => format!("{verdict}: {}", e["message"].as_str().unwrap_or_default()),
        None => format!("{verdict} (exit {})", o.exit.code()),
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Snf { matrix } => snf(&read_json(matrix)?),
        Command::Group(GroupCommand::Canon { group }) => {
            let g = group_arg(group)?;
            Ok(Outcome::new(
                ExitCode::Success,
                json!({"group": g, "canonical": g.canonical_form()}),
            ))
        }
        Command::Hom(p) => hom(&group_arg(&p.dom)?, &group_arg(&p.cod)?),
        Command::Ext(p) => ext(&group_arg(&p.dom)?, &group_arg(&p.cod)?),
        Command::Purify {
            ambient,
            generators,
        } => purify(&group_arg(ambient)?, &read_json(generators)?),
        Command::Tower(t) => tower_command(t),
        Command::Complex(c) => complex_command(c),
        Command::Cech(CechCommand::Uct {
            tower,
            dim,
            coeff,
            window,
        }) => {
            let pt = polyhedral_arg(tower, *window)?;
            uct(&pt, *dim, &parse_group(coeff)?)
        }
        Command::Demo(d) => demo(d),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("cannot parse {}: {e}", path.display())))
}

fn looks_like_file(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// `Z`, `Z^k`, `Z/n`, `0` and sums of these joined by `+`.
pub fn parse_group(text: &str) -> Result<FgAbGroup> {
    let mut g = FgAbGroup::trivial();
    for term in text.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let summand = if term == "0" {
            FgAbGroup::trivial()
        } else if term == "Z" {
            FgAbGroup::free(1)
        } else if let Some(k) = term.strip_prefix("Z^") {
            FgAbGroup::free(
                k.parse()
                    .map_err(|_| Error::Input(format!("bad rank in {term:?}")))?,
            )
        } else if let Some(n) = term.strip_prefix("Z/") {
            let n: BigInt = n
                .parse()
                .map_err(|_| Error::Input(format!("bad modulus in {term:?}")))?;
            if n <= BigInt::from(0) {
                return Err(Error::Input(format!(
                    "modulus must be positive in {term:?}"
                )));
            }
            FgAbGroup::cyclic(n)
        } else {
            return Err(Error::Input(format!("cannot parse group {text:?}")));
        };
        g = g.direct_sum(&summand);
    }
    Ok(g)
}

fn group_arg(arg: &str) -> Result<FgAbGroup> {
    if looks_like_file(arg) {
        read_json(Path::new(arg))
    } else {
        parse_group(arg)
    }
}

fn tower_arg(args: &TowerArgs) -> Result<InverseTower> {
    if looks_like_file(&args.tower) {
        let t = read_json::<TowerJson>(Path::new(&args.tower))?.into_tower()?;
        let w = check_window(args.window.unwrap_or(t.window()))?;
        return t.truncate(w);
    }
    let w = check_window(args.window.unwrap_or(8))?;
    algebraic_tower(&args.tower, w)
}

/// `hawaii`, `solenoid:p`, `const:<group>`.
pub fn algebraic_tower(name: &str, window: usize) -> Result<InverseTower> {
    if name == "hawaii" || name == "hawaiian" {
        return Ok(InverseTower::hawaii(window));
    }
    if let Some(p) = name.strip_prefix("solenoid:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Input(format!("bad degree in {name:?}")))?;
        if p < 2 {
            return Err(Error::Input("solenoid degree must be at least 2".into()));
        }
        return Ok(InverseTower::solenoid(p, window));
    }
    if let Some(g) = name.strip_prefix("const:") {
        return Ok(InverseTower::constant(&parse_group(g)?, window));
    }
    Err(Error::Input(format!("unknown tower {name:?}")))
}

fn polyhedral_arg(arg: &str, window: Option<usize>) -> Result<PolyhedralTower> {
    if looks_like_file(arg) {
        let t: PolyhedralTower = read_json(Path::new(arg))?;
        let w = check_window(window.unwrap_or(t.window()))?;
        return t.truncate(w);
    }
    PolyhedralTower::by_name(arg, check_window(window.unwrap_or(6))?)
}

fn complex_arg(arg: &str) -> Result<SimplicialComplex> {
    if looks_like_file(arg) {
        read_json(Path::new(arg))
    } else {
        simplicial::complex_by_name(arg)
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn snf(a: &IntMatrix) -> Result<Outcome> {
    let s = zlinalg::snf(a);
    let check = &(&s.u * a) * &s.v == s.d;
    let exit = if check {
        ExitCode::Success
    } else {
        ExitCode::VerificationFailed
    };
    Ok(Outcome::new(
        exit,
        json!({
            "d": s.d, "u": s.u, "v": s.v,
            "rank": s.rank,
            "invariant_factors": strings(&s.invariant_factors()),
            "uav_equals_d": check,
        }),
    ))
}

fn hom(a: &FgAbGroup, b: &FgAbGroup) -> Result<Outcome> {
    let h = fgab::hom_group(a, b);
    let homs = h.basis();
    Ok(Outcome::new(
        ExitCode::Success,
        json!({
            "dom": a.canonical_form(), "cod": b.canonical_form(),
            "hom": h.group.canonical_form(),
            "generators": homs.iter().map(FgAbHom::matrix).collect::<Vec<_>>(),
        }),
    ))
}

fn ext(a: &FgAbGroup, b: &FgAbGroup) -> Result<Outcome> {
    let e = fgab::ext_group(a, b);
    Ok(Outcome::new(
        ExitCode::Success,
        json!({"dom": a.canonical_form(), "cod": b.canonical_form(), "ext": e.group.canonical_form()}),
    ))
}

fn purify(h: &FgAbGroup, gens: &IntMatrix) -> Result<Outcome> {
    let b = Subgroup::new(h.clone(), gens.clone())?;
    let c = fgab::purify(h, &b)?;
    let index = fgab::index(&b, &c)?;
    let quotient = fgab::kic(&c.as_group().1).cokernel.group;
    let torsion_free = quotient.is_torsion_free();
    let exit = if torsion_free && index != fgab::Index::Infinite {
        ExitCode::Success
    } else {
        ExitCode::VerificationFailed
    };
    Ok(Outcome::new(
        exit,
        json!({
            "purified": c.generators(),
            "index": index,
            "quotient": quotient.canonical_form(),
            "quotient_torsion_free": torsion_free,
        }),
    ))
}

fn tower_command(cmd: &TowerCommand) -> Result<Outcome> {
    match cmd {
        TowerCommand::Analyze(args) => {
            let t = tower_arg(args)?;
            let ml = tower::is_mittag_leffler(&t)?;
            let exit = if ml.certified {
                ExitCode::Success
            } else {
                ExitCode::WindowInsufficient
            };
            let lim1 = tower::lim1_status(&t)?;
            let lim1 = match lim1 {
                tower::Lim1Status::Lim1Vanishes { .. } => "vanishes",
                tower::Lim1Status::Unknown => "unknown",
            };
            Ok(Outcome::new(
                exit,
                json!({"mittag_leffler": ml, "lim1": lim1}),
            ))
        }
        TowerCommand::Nabla { tower, coeff } => {
            let t = tower_arg(tower)?;
            let r = factor::nabla_diagnostics(&t, &parse_group(coeff)?)?;
            let exit = if r
                .findings
                .iter()
                .all(|f| f.status == FindingStatus::Certified)
            {
                ExitCode::Success
            } else if r
                .findings
                .iter()
                .any(|f| f.status == FindingStatus::Refuted)
            {
                ExitCode::VerificationFailed
            } else {
                ExitCode::WindowInsufficient
            };
            Ok(Outcome::new(
                exit,
                serde_json::to_value(&r).expect("report serializes"),
            ))
        }
        TowerCommand::Factor {
            tower,
            coeff,
            stage,
            hom,
            formula,
        } => {
            let t = tower_arg(tower)?;
            let g = parse_group(coeff)?;
            let phi = match (stage, hom, formula) {
                (Some(s), Some(path), None) => {
                    if *s == 0 || *s > t.window() {
                        return Err(Error::Input(format!("stage {s} outside window")));
                    }
                    let m: IntMatrix = read_json(path)?;
                    ThreadHom::Factored {
                        stage: *s,
                        hom: FgAbHom::new(t.group(*s).clone(), g.clone(), m)?,
                    }
                }
                (None, None, Some(f)) => formula_hom(f, &t, &g)?,
                _ => {
                    return Err(Error::Input(
                        "give either --stage with --hom, or --formula".into(),
                    ))
                }
            };
            factor_report(&t, &phi, &g)
        }
    }
}

fn formula_hom(formula: &str, t: &InverseTower, g: &FgAbGroup) -> Result<ThreadHom> {
    if g.ngens() != 1 || !g.is_torsion_free() || g.is_trivial() {
        return Err(Error::Input(
            "formula homomorphisms take values in Z".into(),
        ));
    }
    let top = t.window();
    let width = t.group(top).ngens();
    if formula == "sum" {
        return Ok(ThreadHom::Formula(FormulaHom::new(
            "sum",
            g.clone(),
            move |th: &Thread| Ok(vec![th.component(top).iter().sum()]),
        )));
    }
    if let Some(c) = formula.strip_prefix("coordinate:") {
        let c: usize = c
            .parse()
            .map_err(|_| Error::Input(format!("bad coordinate in {formula:?}")))?;
        if c == 0 || c > width {
            return Err(Error::Input(format!("coordinate {c} outside 1..={width}")));
        }
        return Ok(ThreadHom::Formula(FormulaHom::new(
            formula,
            g.clone(),
            move |th: &Thread| Ok(vec![th.component(top)[c - 1].clone()]),
        )));
    }
    Err(Error::Input(format!("unknown formula {formula:?}")))
}

fn factor_report(t: &InverseTower, phi: &ThreadHom, g: &FgAbGroup) -> Result<Outcome> {
    let witness_json = |w: &factor::LevelWitness| json!({"level": w.level, "thread": w.thread, "value": strings(&w.value)});
    match factor::factor_hom(t, phi, g)? {
        FactorOutcome::Factors(f) => {
            let check = ThreadHom::Factored {
                stage: f.stage,
                hom: f.hom.clone(),
            }
            .agrees_with(phi, &t.thread_generators())?;
            let exit = if check {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            Ok(Outcome::new(
                exit,
                json!({
                    "outcome": "factors",
                    "level": f.level,
                    "stage": f.stage,
                    "hom": f.hom.matrix(),
                    "reproduces_on_thread_generators": check,
                    "refuted_levels": f.refuted.iter().map(witness_json).collect::<Vec<_>>(),
                }),
            ))
        }
        FactorOutcome::NoFactorWitness { witnesses } => Ok(Outcome::new(
            ExitCode::WindowInsufficient,
            json!({
                "outcome": "no_factor_witness",
                "window_exhausted": true,
                "witnesses": witnesses.iter().map(witness_json).collect::<Vec<_>>(),
            }),
        )),
    }
}

fn complex_command(cmd: &ComplexCommand) -> Result<Outcome> {
    match cmd {
        ComplexCommand::Homology { complex, dim } => {
            let k = complex_arg(complex)?;
            let h = k.homology(*dim);
            Ok(Outcome::new(
                ExitCode::Success,
                json!({"dim": dim, "homology": h.group.canonical_form(), "cycles": h.cycles}),
            ))
        }
        ComplexCommand::Cohomology {
            complex,
            dim,
            coeff,
        } => {
            let k = complex_arg(complex)?;
            let g = parse_group(coeff)?;
            let seq = cech::stage_sequence(&k, *dim, &g)?;
            let split = seq
                .ext
                .group
                .direct_sum(&seq.hom.group)
                .isomorphic(seq.cohomology.group());
            let exit = if split {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            Ok(Outcome::new(
                exit,
                json!({
                    "dim": dim,
                    "coeff": g.canonical_form(),
                    "cohomology": seq.cohomology.group().canonical_form(),
                    "ext_part": seq.ext.group.canonical_form(),
                    "hom_part": seq.hom.group.canonical_form(),
                    "matches_ext_plus_hom": split,
                }),
            ))
        }
    }
}

fn uct(pt: &PolyhedralTower, dim: usize, g: &FgAbGroup) -> Result<Outcome> {
    let r = cech::uct_ladder(pt, dim, g)?;
    let stage_exit = if r.ladder_holds() {
        ExitCode::Success
    } else {
        ExitCode::VerificationFailed
    };
    let nabla_exit = match r.nabla.status {
        IdentificationStatus::Certified | IdentificationStatus::NotApplicable => ExitCode::Success,
        IdentificationStatus::Withheld => ExitCode::WindowInsufficient,
    };
    let mut report = r.to_json();
    report["parts"] = json!({
        "stage_suite": {"exit_code": stage_exit.code()},
        "nabla_identification": {"exit_code": nabla_exit.code()},
    });
    Ok(Outcome::new(stage_exit.worst(nabla_exit), report))
}

fn demo(cmd: &DemoCommand) -> Result<Outcome> {
    match cmd {
        DemoCommand::Hawaiian { window } => {
            let pt = PolyhedralTower::hawaiian(check_window(*window)?)?;
            let t = cech::homology_tower(&pt, 1)?;
            let ml = tower::is_mittag_leffler(&t)?;
            let u = uct(&pt, 1, &FgAbGroup::free(1))?;
            let exit = if ml.certified {
                u.exit
            } else {
                u.exit.worst(ExitCode::WindowInsufficient)
            };
            Ok(Outcome::new(
                exit,
                json!({"homology_tower": ml, "uct": u.report}),
            ))
        }
        DemoCommand::Solenoid { p, window } => {
            let pt = PolyhedralTower::solenoid(*p, check_window(*window)?)?;
            let t = cech::homology_tower(&pt, 1)?;
            let ml = tower::is_mittag_leffler(&t)?;
            let u = uct(&pt, 1, &FgAbGroup::free(1))?;
            Ok(Outcome::new(
                u.exit,
                json!({"homology_tower": ml, "uct": u.report}),
            ))
        }
        DemoCommand::Projplane { window } => {
            let pt = PolyhedralTower::by_name("const:proj_plane", check_window(*window)?)?;
            let k = pt.complex(1);
            let homology: Vec<Value> = (0..=2)
                .map(|n| json!(k.homology(n).group.canonical_form()))
                .collect();
            let u = uct(&pt, 2, &FgAbGroup::free(1))?;
            Ok(Outcome::new(
                u.exit,
                json!({"homology": homology, "uct": u.report}),
            ))
        }
        DemoCommand::Padic {
            p,
            precision,
            window,
        } => {
            let w = check_window(*window)?;
            let r = witnesses::non_factoring_report(*p, *precision, w)?;
            let t = InverseTower::hawaii(w);
            let d =
                factor::diagonal_witness(&t, &witnesses::padic_thread_hom(*p, *precision, &t)?)?;
            let exit = if r.all_verified() {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            let stop = match &d.stop {
                DiagonalStop::FactorsAt { .. } => "factors",
                DiagonalStop::WindowExhausted { .. } => "window_exhausted",
            };
            Ok(Outcome::new(
                exit,
                json!({
                    "non_factoring": r,
                    "diagonal": {
                        "rounds": d.rounds.iter().map(|r| json!({"round": r.round, "k": r.k, "searched": r.searched})).collect::<Vec<_>>(),
                        "stop": d.stop,
                        "stop_kind": stop,
                    },
                }),
            ))
        }
        DemoCommand::Higman { n, b, coeff } => {
            let g = parse_group(coeff)?;
            if g.ngens() != 1 {
                return Err(Error::Input(
                    "higman demo needs a single-generator coefficient group".into(),
                ));
            }
            let targets: Vec<Vec<BigInt>> = b.iter().map(|&x| vec![BigInt::from(x)]).collect();
            let sys = HigmanSystem::from_targets(
                n.iter().map(|&x| BigInt::from(x)).collect(),
                &g,
                &targets,
            )?;
            let sol = witnesses::higman_verify(&sys)?;
            let exit = if sol.verified {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            Ok(Outcome::new(
                exit,
                serde_json::to_value(&sol).expect("report serializes"),
            ))
        }
        DemoCommand::Specker { window } => {
            let w = *window;
            if w == 0 || w > window_max() {
                return Err(Error::Input(format!(
                    "window {w} outside 1..={}",
                    window_max()
                )));
            }
            let r = cech::specker_check(w)?;
            let exit = if r.passed {
                ExitCode::Success
            } else {
                ExitCode::VerificationFailed
            };
            Ok(Outcome::new(
                exit,
                serde_json::to_value(&r).expect("report serializes"),
            ))
        }
    }
}
