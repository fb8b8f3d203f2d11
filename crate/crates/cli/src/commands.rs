use std::fmt;
use std::fs;
use std::path::Path;

use qlefschetz::catalog::{self, ClassSpec};
use qlefschetz::moves::{self, apply_twist_word};
use qlefschetz::obstructions::{
    betti_lower_bound, kernel_classes, nonzero_primitive_certificate, self_pairing, sphere_test,
};
use qlefschetz::{
    render, ClassSpecFile, Error, FibrationFile, IntMatrix, KClass, LefschetzAlgebra, TwistWord,
};
use serde_json::{json, Value};

use crate::{CatalogKind, Cli, Command, Format, MoveKind, Quantity};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// Well-formed input that fails a mathematical check.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Validation(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            // the library reports 0-based indices; positions on the command line are 1-based
            Error::IndexOutOfRange { index, len } => {
                CliError::Usage(format!("position {} is not in 1..={len}", index + 1))
            }
            Error::Parse(_) | Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A result in both output formats.
struct Report {
    json: Value,
    table: String,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_file(path: &Path) -> CliResult<FibrationFile> {
    FibrationFile::parse(&read(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path, n: Option<i64>) -> CliResult<(FibrationFile, LefschetzAlgebra)> {
    let file = load_file(path)?;
    let alg = file
        .to_algebra(n)
        .map_err(|e| CliError::from(e).with_context(path))?;
    Ok((file, alg))
}

impl CliError {
    fn with_context(self, path: &Path) -> Self {
        match self {
            CliError::Usage(s) => CliError::Usage(format!("{}: {s}", path.display())),
            CliError::Validation(s) => CliError::Validation(format!("{}: {s}", path.display())),
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    let entries: Vec<Vec<Value>> = m
        .row_vecs()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| match i64::try_from(&x) {
                    Ok(v) => json!(v),
                    Err(_) => json!(x.to_string()),
                })
                .collect()
        })
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn fibration_report(file: &FibrationFile, alg: &LefschetzAlgebra) -> Report {
    Report {
        json: to_json(file),
        table: format!("n = {}, m = {}\nB =\n{}", alg.n(), alg.m(), alg.b()),
    }
}

fn emit(cli: &Cli, report: Report) -> CliResult<()> {
    let text = match cli.format {
        Format::Json => render(&report.json),
        Format::Table => {
            let mut s = report.table;
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let report = match &cli.command {
        Command::Verify { file } => verify(file, cli.n)?,
        Command::Compute { file, what } => compute(file, cli.n, *what)?,
        Command::Obstruct { file } => obstruct(file, cli.n)?,
        Command::Move {
            file,
            kind,
            transition,
        } => apply_move(file, cli.n, kind, transition.as_deref())?,
        Command::Twist {
            file,
            generators,
            word,
            seed,
            target,
        } => twist(file, cli.n, generators, word, *seed, target.as_deref())?,
        Command::Catalog { which } => catalog_cmd(which, cli.n)?,
    };
    emit(cli, report)
}

fn verify(path: &Path, n: Option<i64>) -> CliResult<Report> {
    let (file, alg) = load(path, n)?;
    let labels = file.labels.clone().unwrap_or_default();
    let mut table = format!(
        "consistent: yes\nn = {}, m = {}\nA =\n{}B =\n{}",
        alg.n(),
        alg.m(),
        alg.a(),
        alg.b()
    );
    if !labels.is_empty() {
        table.push_str(&format!("labels: {}\n", labels.join(", ")));
    }
    Ok(Report {
        json: json!({
            "consistent": true,
            "n": alg.n(),
            "m": alg.m(),
            "A": to_json(alg.a()),
            "B": to_json(alg.b()),
            "labels": labels,
        }),
        table,
    })
}

fn compute(path: &Path, n: Option<i64>, what: Quantity) -> CliResult<Report> {
    let (_, alg) = load(path, n)?;
    Ok(match what {
        Quantity::Det => {
            let det = alg.b().det()?;
            Report {
                json: json!({"det": to_json(&det)}),
                table: format!("det(B) = {det}"),
            }
        }
        Quantity::Nullspace => {
            let ns = alg.b().nullspace();
            let lines: Vec<String> = ns.iter().map(ToString::to_string).collect();
            Report {
                json: json!({"rank": alg.b().rank(), "nullspace": to_json(&ns)}),
                table: format!(
                    "rank(B) = {}\nnullspace ({}):\n{}",
                    alg.b().rank(),
                    ns.len(),
                    lines.join("\n")
                ),
            }
        }
        Quantity::Monodromy => {
            let nq = alg.monodromy();
            Report {
                json: json!({"monodromy": to_json(&nq)}),
                table: format!("N_q =\n{nq}"),
            }
        }
        Quantity::Givental => {
            let g = alg.givental_matrix();
            let det = g.det()?;
            Report {
                json: json!({"givental": to_json(&g), "det": to_json(&det)}),
                table: format!("A(1) - q(-1)^n A(1)^T =\n{g}det = {det}"),
            }
        }
        Quantity::Classical => {
            let cl = alg.classical();
            Report {
                json: json!({
                    "A": int_matrix_json(&cl.a),
                    "B": int_matrix_json(&cl.b),
                    "N": int_matrix_json(&cl.monodromy),
                }),
                table: format!("A =\n{}B =\n{}N =\n{}", cl.a, cl.b, cl.monodromy),
            }
        }
        Quantity::DoubleCover => {
            let cover = alg.double_cover();
            let mut value = to_json(&FibrationFile::from_algebra(&cover.algebra));
            value["matching_classes"] = to_json(&cover.matching_classes);
            let lines: Vec<String> = cover
                .matching_classes
                .iter()
                .map(ToString::to_string)
                .collect();
            Report {
                json: value,
                table: format!(
                    "n = {}, m = {}\nB =\n{}matching classes:\n{}",
                    cover.algebra.n(),
                    cover.algebra.m(),
                    cover.algebra.b(),
                    lines.join("\n")
                ),
            }
        }
    })
}

fn obstruct(path: &Path, n: Option<i64>) -> CliResult<Report> {
    let (_, alg) = load(path, n)?;
    let kernel = kernel_classes(&alg);
    let mut per_class = Vec::new();
    let mut table = format!(
        "n = {}, m = {}\nkernel rank: {}\n",
        alg.n(),
        alg.m(),
        kernel.len()
    );
    for h in &kernel {
        let c = self_pairing(&alg, h)?;
        let bound = betti_lower_bound(&c);
        let cert = nonzero_primitive_certificate(&c);
        table.push_str(&format!(
            "  class {h}\n    self-pairing {c}\n    Betti lower bound {bound}\n    nonzero at q=1: {}, primitivity gcd bound {}\n",
            cert.nonzero_at_one, cert.primitive_gcd_bound
        ));
        per_class.push(json!({
            "class": to_json(h),
            "self_pairing": to_json(&c),
            "betti_lower_bound": bound.to_string(),
            "certificate": to_json(&cert),
        }));
    }
    let result = sphere_test(&alg);
    table.push_str(&format!(
        "sphere test: {}\n",
        describe_verdict(&result.verdict)
    ));
    Ok(Report {
        json: json!({
            "n": alg.n(),
            "m": alg.m(),
            "kernel": per_class,
            "sphere_test": to_json(&result),
        }),
        table,
    })
}

fn describe_verdict(v: &qlefschetz::SphereVerdict) -> String {
    use qlefschetz::obstructions::Obstruction::*;
    use qlefschetz::SphereVerdict::*;
    match v {
        NotObstructed { witness } => format!("NotObstructed (witness f = {witness})"),
        Inconclusive { reason } => format!("Inconclusive ({reason})"),
        Obstructed { reason } => {
            let why = match reason {
                TrivialKernel => "kernel rank 0".to_string(),
                ZeroSelfPairing => "kernel generator is isotropic".to_string(),
                SpanMismatch { span } => format!("self-pairing has span {span}, not 1"),
                ExtremeCoefficients { lowest, highest } => {
                    format!("extreme coefficients {lowest} and {highest} differ in size")
                }
                NoSquareSolution { coefficient } => {
                    format!("a^2 * {coefficient} = 1 has no integer solution")
                }
                ExponentMismatch => "self-pairing is not 1 + (-1)^n q up to a square".to_string(),
            };
            format!("Obstructed ({why})")
        }
    }
}

/// 1-based position to 0-based.
fn position(k: usize) -> CliResult<usize> {
    k.checked_sub(1)
        .ok_or_else(|| CliError::Usage("positions are 1-based".into()))
}

fn apply_move(
    path: &Path,
    n: Option<i64>,
    kind: &MoveKind,
    transition: Option<&Path>,
) -> CliResult<Report> {
    let (file, alg) = load(path, n)?;
    let mut labels = file.labels.clone();
    let mv = match *kind {
        MoveKind::Hurwitz { k } | MoveKind::HurwitzInverse { k } => {
            let k = position(k)?;
            let mv = if matches!(kind, MoveKind::Hurwitz { .. }) {
                moves::hurwitz_move(&alg, k)?
            } else {
                moves::hurwitz_inverse_move(&alg, k)?
            };
            if let Some(l) = labels.as_mut() {
                l.swap(k, k + 1);
            }
            mv
        }
        MoveKind::Rescale { k, shift } => moves::rescale_object(&alg, position(k)?, shift)?,
        MoveKind::Shift { k } => moves::shift_object(&alg, position(k)?)?,
    };
    if let Some(t) = transition {
        let text = render(&to_json(&mv.transition));
        fs::write(t, text).map_err(|e| CliError::Usage(format!("{}: {e}", t.display())))?;
    }
    let out = FibrationFile::from_algebra(&mv.algebra).with_labels(labels);
    Ok(fibration_report(&out, &mv.algebra))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn twist(
    path: &Path,
    n: Option<i64>,
    generators: &Path,
    word: &str,
    seed: Option<usize>,
    target: Option<&Path>,
) -> CliResult<Report> {
    let (_, alg) = load(path, n)?;
    let gens: Vec<KClass> = parse_json(generators)?;
    let word: TwistWord = word.parse()?;
    let start = match (seed, target) {
        (Some(s), _) => gens
            .get(position(s)?)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("seed {s} is not in 1..={}", gens.len())))?,
        (None, Some(t)) => parse_json(t)?,
        (None, None) => return Err(CliError::Usage("need --seed or --target".into())),
    };
    let class = apply_twist_word(alg.n(), alg.a(), &gens, &word, &start)?;
    let sp = self_pairing(&alg, &class)?;
    Ok(Report {
        json: json!({"class": to_json(&class), "self_pairing": to_json(&sp)}),
        table: format!("{word} applied to {start}:\n{class}\nself-pairing {sp}"),
    })
}

fn require_n(n: Option<i64>) -> CliResult<i64> {
    n.ok_or_else(|| CliError::Usage("catalog constructions need --n".into()))
}

fn catalog_cmd(which: &CatalogKind, n: Option<i64>) -> CliResult<Report> {
    let alg = match which {
        CatalogKind::Milnor { r } => catalog::milnor_ar(*r, require_n(n)?)?.algebra(),
        CatalogKind::Xab { a, b } => catalog::xab(*a, *b, require_n(n)?)?,
        CatalogKind::MirrorP2 => catalog::mirror_p2(require_n(n)?)?,
        CatalogKind::Induce { fibre, classes } => {
            let n = require_n(n)?;
            let (_, fibre_alg) = load(fibre, None)?;
            let spec_file = ClassSpecFile::parse(&read(classes)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", classes.display())))?;
            let specs: Vec<ClassSpec> = spec_file.specs()?;
            catalog::induced_total_space(&fibre_alg, &spec_file.generators, n, &specs)?.algebra
        }
    };
    Ok(fibration_report(&FibrationFile::from_algebra(&alg), &alg))
}
