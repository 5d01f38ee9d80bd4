//! Command-line front end for qgroupoid.

pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use qgroupoid::double::drinfeld_double;
use qgroupoid::examples::{builtin, elementary, groupoid_algebra, temperley_lieb, GroupoidSpec, BUILTIN_NAMES};
use qgroupoid::invariants::{link_invariant, rt_invariant, BraidWord, InvariantError};
use qgroupoid::linalg::Matrix;
use qgroupoid::modular::modularity_verdict;
use qgroupoid::qt::{find_ribbons, is_ribbon, validate_r, QtData, QtError, RibbonData};
use qgroupoid::rep::{irreducibles, HModule};
use qgroupoid::star::{canonical_grouplike, star_ribbon, validate_star};
use qgroupoid::wha::{AxiomReport, QuantumGroupoid, WhaError};
use qgroupoid::FieldElement;
use serde_json::{json, Value};
use thiserror::Error;

use format::{sparse_matrix, sparse_vector, FormatError, Provenance, SpecDocument};

pub const MAX_DIM_VAR: &str = "QGROUPOID_MAX_DIM";
pub const DEFAULT_MAX_DIM: usize = 128;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("could not compute: {0}")]
    Compute(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
        }
    }
}

pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

#[derive(Parser, Debug)]
#[command(name = "qgroupoid", version, about = "Exact computations for finite quantum groupoids")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms and any attached R-matrix, ribbon element and star.
    Validate { file: PathBuf },
    /// Write the dual quantum groupoid.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the Drinfeld double with its canonical R-matrix.
    Double {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the quotient projection and section.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Irreducible modules and their characters.
    Characters { file: PathBuf },
    /// S-matrix, twists and the modularity verdict.
    Smatrix { file: PathBuf },
    /// All ribbon elements of the attached R-matrix.
    Ribbon { file: PathBuf },
    /// The normalized Haar integral.
    Haar { file: PathBuf },
    /// Invariant of the closure of a colored framed braid.
    Link {
        file: PathBuf,
        #[arg(long)]
        braid: String,
        #[arg(long, value_delimiter = ',')]
        colors: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framing: Vec<i64>,
    },
    /// Surgery invariant of the 3-manifold given by a framed braid closure.
    Rt {
        file: PathBuf,
        #[arg(long)]
        braid: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framing: Vec<i64>,
    },
    /// Write a built-in example (see `example list`).
    Example {
        name: String,
        #[arg(long, value_delimiter = ',')]
        partition: Vec<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        objects: Option<usize>,
        #[arg(long)]
        dual: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Parse, run and render; returns the exit code and what to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let as_json = cli.json;
    match execute(cli.command) {
        Ok(out) => {
            let text = if as_json {
                let mut s = serde_json::to_string_pretty(&out.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                out.text
            };
            (out.status.code(), text)
        }
        Err(e) => {
            let text = if as_json {
                format!("{}\n", json!({ "error": e.to_string() }))
            } else {
                format!("error: {e}\n")
            };
            (2, text)
        }
    }
}

pub fn execute(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Validate { file } => validate(&load(&file)?),
        Command::Dual { file, output } => {
            let h = load(&file)?;
            let d = h.dual();
            emit(&d, None, output.as_deref(), format!("dual of dimension {}", d.dim()))
        }
        Command::Double { file, output, sidecar } => double(&load(&file)?, output.as_deref(), sidecar.as_deref()),
        Command::Characters { file } => characters(&load(&file)?),
        Command::Smatrix { file } => smatrix(&load(&file)?),
        Command::Ribbon { file } => ribbons(&load(&file)?),
        Command::Haar { file } => haar(&load(&file)?),
        Command::Link {
            file,
            braid,
            colors,
            framing,
        } => link(&load(&file)?, &braid, colors, framing),
        Command::Rt { file, braid, framing } => rt(&load(&file)?, &braid, framing),
        Command::Example {
            name,
            partition,
            n,
            order,
            objects,
            dual,
            output,
        } => example(&name, &partition, n, order, objects, dual, output.as_deref()),
    }
}

pub fn max_dim() -> usize {
    std::env::var(MAX_DIM_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn check_dim(d: usize, what: &str) -> Result<(), CliError> {
    let cap = max_dim();
    if d > cap {
        Err(CliError::Input(format!("{what} has dimension {d}, above {MAX_DIM_VAR} = {cap}")))
    } else {
        Ok(())
    }
}

pub fn load(path: &Path) -> Result<QuantumGroupoid, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let doc = SpecDocument::parse(&text)?;
    check_dim(doc.dim, "input")?;
    Ok(doc.to_groupoid()?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Write a document to `output`, or make it the report when there is none.
fn emit(h: &QuantumGroupoid, prov: Option<Provenance>, output: Option<&Path>, summary: String) -> Result<Output, CliError> {
    let doc = SpecDocument::from_groupoid(h, prov).write();
    match output {
        Some(p) => {
            write_file(p, &doc)?;
            Ok(Output {
                text: format!("{summary}\nwrote {}\n", p.display()),
                json: json!({ "summary": summary, "written": p.display().to_string(), "dim": h.dim() }),
                status: Status::Ok,
            })
        }
        None => Ok(Output {
            json: serde_json::from_str(&doc).expect("documents are JSON"),
            text: doc,
            status: Status::Ok,
        }),
    }
}

// ---------------------------------------------------------------- rendering

pub fn approx(c: &FieldElement) -> (f64, f64) {
    let z = c.to_complex();
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    (clean(z.re), clean(z.im))
}

pub fn fe_text(c: &FieldElement) -> String {
    let (re, im) = approx(c);
    if c.is_rational() {
        return c.to_string();
    }
    if im == 0.0 {
        format!("{c} ≈ {re:.6}")
    } else {
        format!("{c} ≈ {re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

pub fn fe_json(c: &FieldElement) -> Value {
    let (re, im) = approx(c);
    json!({ "exact": c.to_string(), "approx": [re, im] })
}

fn report_json(r: &AxiomReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "witness": c.witness }))
            .collect(),
    )
}

fn report_text(title: &str, r: &AxiomReport) -> String {
    let mut s = format!("{title}: {}\n", if r.all_passed() { "pass" } else { "FAIL" });
    for c in &r.checks {
        match &c.witness {
            None => s.push_str(&format!("  {:<32} pass\n", c.name)),
            Some(w) => s.push_str(&format!("  {:<32} FAIL witness {w:?}\n", c.name)),
        }
    }
    s
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| fe_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

// ---------------------------------------------------------------- commands

fn validate(h: &QuantumGroupoid) -> Result<Output, CliError> {
    let axioms = h.validate_axioms();
    let mut ok = axioms.all_passed();
    let mut text = format!("dimension {} over Q(zeta_{})\n", h.dim(), h.conductor());
    text.push_str(&report_text("axioms", &axioms));
    let mut js = json!({ "dim": h.dim(), "conductor": h.conductor(), "axioms": report_json(&axioms) });
    let mut qt = None;
    if let Some(r) = &h.r_matrix {
        match validate_r(h, r) {
            Ok(q) => {
                text.push_str(&report_text("r_matrix", &q.report));
                js["r_matrix"] = report_json(&q.report);
                qt = Some(q);
            }
            Err(QtError::AxiomFailure(rep)) | Err(QtError::TheoremFailed(rep)) => {
                ok = false;
                text.push_str(&report_text("r_matrix", &rep));
                js["r_matrix"] = report_json(&rep);
            }
            Err(e) => {
                ok = false;
                text.push_str(&format!("r_matrix: FAIL {e}\n"));
                js["r_matrix"] = json!({ "error": e.to_string() });
            }
        }
    }
    if let Some(nu) = &h.ribbon {
        let passed = qt.as_ref().is_some_and(|q| is_ribbon(q, nu));
        ok &= passed;
        text.push_str(&format!("ribbon: {}\n", if passed { "pass" } else { "FAIL" }));
        js["ribbon"] = json!({ "passed": passed });
    }
    if let Some(star) = &h.star {
        let rep = validate_star(h, star);
        ok &= rep.axioms.all_passed();
        text.push_str(&report_text("star", &rep.axioms));
        text.push_str(&format!(
            "positivity probe (numeric, heuristic): min eigenvalue {:.3e}, {}\n",
            rep.probe.min_eigenvalue,
            if rep.probe.positive { "positive" } else { "not positive" }
        ));
        js["star"] = report_json(&rep.axioms);
        js["positivity_probe"] = json!({
            "min_eigenvalue": rep.probe.min_eigenvalue,
            "positive": rep.probe.positive,
            "heuristic": rep.probe.heuristic,
        });
    }
    js["verdict"] = json!(ok);
    text.push_str(if ok { "verdict: valid\n" } else { "verdict: invalid\n" });
    Ok(Output {
        text,
        json: js,
        status: if ok { Status::Ok } else { Status::Negative },
    })
}

fn double(h: &QuantumGroupoid, output: Option<&Path>, sidecar: Option<&Path>) -> Result<Output, CliError> {
    check_dim(h.dim() * h.dim(), "pre-double")?;
    let data = drinfeld_double(h).map_err(|e| CliError::Compute(e.to_string()))?;
    if let Some(p) = sidecar {
        let big_n = data.d.conductor();
        let side = json!({
            "format": "qgroupoid-double/1",
            "pre_dim": h.dim() * h.dim(),
            "dim": data.d.dim(),
            "projection": sparse_matrix(&data.projection, big_n),
            "section": sparse_matrix(&data.section, big_n),
        });
        let mut s = serde_json::to_string_pretty(&side).expect("sidecar serializes");
        s.push('\n');
        write_file(p, &s)?;
    }
    let summary = format!(
        "Drinfeld double of dimension {} (pre-double {}, J of dimension {}); checks: {}",
        data.d.dim(),
        h.dim() * h.dim(),
        data.j_basis.len(),
        data.checks.summary()
    );
    emit(&data.d, None, output, summary)
}

fn palette(h: &QuantumGroupoid) -> Result<Vec<HModule>, CliError> {
    Ok(irreducibles(h)
        .map_err(|e| CliError::Compute(e.to_string()))?
        .into_iter()
        .map(|i| i.module)
        .collect())
}

fn characters(h: &QuantumGroupoid) -> Result<Output, CliError> {
    let irr = irreducibles(h).map_err(|e| CliError::Compute(e.to_string()))?;
    let mut text = format!("{} irreducible modules\n", irr.len());
    let mut list = Vec::new();
    for (i, v) in irr.iter().enumerate() {
        let chi: Vec<String> = v.character.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("V{i} rank {}: chi = [{}]\n", v.module.rank, chi.join(", ")));
        list.push(json!({
            "index": i,
            "rank": v.module.rank,
            "character": v.character.iter().map(fe_json).collect::<Vec<_>>(),
        }));
    }
    Ok(Output {
        text,
        json: json!({ "irreducibles": list }),
        status: Status::Ok,
    })
}

/// The validated R-matrix with a ribbon element: the attached one, ν = u⁻¹g from the star, or the first found.
fn qt_and_ribbon(h: &QuantumGroupoid) -> Result<(QtData, RibbonData, &'static str), CliError> {
    let r = h
        .r_matrix
        .as_ref()
        .ok_or_else(|| CliError::Input("the document has no r_matrix".into()))?;
    let qt = validate_r(h, r).map_err(|e| CliError::Input(format!("r_matrix rejected: {e}")))?;
    let found = find_ribbons(&qt).map_err(|e| CliError::Compute(e.to_string()))?;
    if let Some(nu) = &h.ribbon {
        let rib = found
            .into_iter()
            .find(|r| &r.nu == nu)
            .ok_or_else(|| CliError::Input("the attached ribbon element is not a ribbon element".into()))?;
        return Ok((qt, rib, "attached"));
    }
    if let Some(star) = &h.star {
        let g = canonical_grouplike(h, star).map_err(|e| CliError::Compute(e.to_string()))?;
        let rib = star_ribbon(&qt, &g).map_err(|e| CliError::Compute(e.to_string()))?;
        return Ok((qt, rib, "star"));
    }
    let one = h.unit().clone();
    let pick = found.iter().position(|r| r.nu == one).unwrap_or(0);
    let rib = found
        .into_iter()
        .nth(pick)
        .ok_or_else(|| CliError::Compute("no ribbon element exists".into()))?;
    Ok((qt, rib, "search"))
}

fn smatrix(h: &QuantumGroupoid) -> Result<Output, CliError> {
    let (qt, rib, source) = qt_and_ribbon(h)?;
    let v = modularity_verdict(&qt, &rib).map_err(|e| CliError::Compute(e.to_string()))?;
    let mut text = format!("ribbon element: {source}\n");
    let mut js = json!({
        "ribbon_source": source,
        "connected": v.connected,
        "haar_exists": v.haar_exists,
        "factorizable": v.factorizable,
        "s_invertible": v.s_invertible,
        "verdict": v.verdict,
        "reasons": v.reasons,
        "unit_index": v.unit_index,
        "duality": v.duality,
    });
    if let Some(s) = &v.s {
        let k = s.s.rows();
        text.push_str(&format!("S ({k}x{k}):\n"));
        for i in 0..k {
            let row: Vec<String> = (0..k).map(|j| fe_text(&s.s[(i, j)])).collect();
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
        let th: Vec<String> = s.theta.iter().map(fe_text).collect();
        text.push_str(&format!("theta: [{}]\n", th.join(", ")));
        js["s"] = matrix_json(&s.s);
        js["theta"] = Value::Array(s.theta.iter().map(fe_json).collect());
        js["categorical_checked"] = json!(s.categorical_checked);
    }
    text.push_str(&format!(
        "connected: {}, Haar integral: {}, factorizable: {}, S invertible: {}\n",
        v.connected, v.haar_exists, v.factorizable, v.s_invertible
    ));
    if v.verdict {
        text.push_str("verdict: modular\n");
    } else {
        text.push_str(&format!("verdict: not modular ({})\n", v.reasons.join("; ")));
    }
    Ok(Output {
        text,
        json: js,
        status: if v.verdict { Status::Ok } else { Status::Negative },
    })
}

fn ribbons(h: &QuantumGroupoid) -> Result<Output, CliError> {
    let r = h
        .r_matrix
        .as_ref()
        .ok_or_else(|| CliError::Input("the document has no r_matrix".into()))?;
    let qt = validate_r(h, r).map_err(|e| CliError::Input(format!("r_matrix rejected: {e}")))?;
    let (found, reason) = match find_ribbons(&qt) {
        Ok(f) => (f, None),
        Err(QtError::SquareRootNotInField { block, value, conductor }) => (
            Vec::new(),
            Some(format!("{value} on block {block} has no square root in Q(zeta_{conductor})")),
        ),
        Err(e) => return Err(CliError::Compute(e.to_string())),
    };
    let big_n = h.conductor();
    let mut text = format!("{} ribbon elements\n", found.len());
    let mut list = Vec::new();
    for (i, r) in found.iter().enumerate() {
        let th: Vec<String> = r.theta.iter().map(|t| t.to_string()).collect();
        text.push_str(&format!("nu{i}: block scalars [{}]\n", th.join(", ")));
        list.push(json!({
            "nu": sparse_vector(&r.nu, big_n),
            "block_scalars": r.theta.iter().map(fe_json).collect::<Vec<_>>(),
        }));
    }
    if let Some(r) = &reason {
        text.push_str(&format!("{r}\n"));
    }
    Ok(Output {
        text,
        json: json!({ "ribbons": list, "reason": reason }),
        status: if found.is_empty() { Status::Negative } else { Status::Ok },
    })
}

fn haar(h: &QuantumGroupoid) -> Result<Output, CliError> {
    match h.haar_integral() {
        Ok(x) => {
            let sv = sparse_vector(&x, h.conductor());
            let terms: Vec<String> = sv.iter().map(|(i, c)| format!("({c}) {}", h.labels()[*i])).collect();
            Ok(Output {
                text: format!("Haar integral: {}\n", terms.join(" + ")),
                json: json!({ "haar": sv }),
                status: Status::Ok,
            })
        }
        Err(WhaError::NoHaar) => Ok(Output {
            text: "no normalized Haar integral\n".into(),
            json: json!({ "haar": null, "reason": "no normalized Haar integral" }),
            status: Status::Negative,
        }),
        Err(e) => Err(CliError::Compute(e.to_string())),
    }
}

fn braid_input(e: InvariantError) -> CliError {
    match e {
        InvariantError::Parse(_) | InvariantError::IndexOutOfRange(_) | InvariantError::InconsistentColoring(_) => {
            CliError::Input(e.to_string())
        }
        other => CliError::Compute(other.to_string()),
    }
}

fn parse_braid(word: &str, framing: Vec<i64>) -> Result<BraidWord, CliError> {
    let b: BraidWord = word.parse().map_err(braid_input)?;
    if framing.is_empty() {
        Ok(b)
    } else {
        b.with_framing(framing).map_err(braid_input)
    }
}

fn link(h: &QuantumGroupoid, word: &str, colors: Vec<usize>, framing: Vec<i64>) -> Result<Output, CliError> {
    let (qt, rib, source) = qt_and_ribbon(h)?;
    let pal = palette(h)?;
    let mut b = parse_braid(word, framing)?;
    if !colors.is_empty() {
        b = b.with_colors(colors).map_err(braid_input)?;
    }
    let v = link_invariant(&b, &qt, &rib, &pal).map_err(braid_input)?;
    Ok(Output {
        text: format!("braid {b} colors {:?}\ninvariant: {}\n", b.colors, fe_text(&v)),
        json: json!({
            "braid": b.to_string(),
            "colors": b.colors,
            "ribbon_source": source,
            "invariant": fe_json(&v),
        }),
        status: Status::Ok,
    })
}

fn rt(h: &QuantumGroupoid, word: &str, framing: Vec<i64>) -> Result<Output, CliError> {
    let (qt, rib, source) = qt_and_ribbon(h)?;
    let b = parse_braid(word, framing)?;
    match rt_invariant(&b, &qt, &rib) {
        Ok(v) => Ok(Output {
            text: format!(
                "surgery on {b}\nsignature (+{}, -{})\ninvariant: {}\n",
                v.signature.0,
                v.signature.1,
                fe_text(&v.value)
            ),
            json: json!({
                "braid": b.to_string(),
                "ribbon_source": source,
                "signature": [v.signature.0, v.signature.1],
                "gauss_plus": fe_json(&v.gauss_plus),
                "gauss_minus": fe_json(&v.gauss_minus),
                "unnormalized": fe_json(&v.unnormalized),
                "invariant": fe_json(&v.value),
            }),
            status: Status::Ok,
        }),
        Err(e @ (InvariantError::NotModular | InvariantError::DegenerateGaussSum(_))) => Ok(Output {
            text: format!("not available: {e}\n"),
            json: json!({ "invariant": null, "reason": e.to_string() }),
            status: Status::Negative,
        }),
        Err(e) => Err(braid_input(e)),
    }
}

fn example(
    name: &str,
    partition: &[usize],
    n: Option<usize>,
    order: Option<usize>,
    objects: Option<usize>,
    dual: bool,
    output: Option<&Path>,
) -> Result<Output, CliError> {
    let input = |e: qgroupoid::examples::ExampleError| CliError::Input(e.to_string());
    let mut params = std::collections::BTreeMap::new();
    let h = match name {
        "list" => {
            let mut names: Vec<String> = BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
            names.extend(
                ["elementary --partition a,b,..", "temperley-lieb --n 2", "cyclic --order m [--dual]", "pair --objects k [--dual]"]
                    .map(String::from),
            );
            return Ok(Output {
                text: names.join("\n") + "\n",
                json: json!({ "examples": names }),
                status: Status::Ok,
            });
        }
        "elementary" => {
            if partition.is_empty() {
                return Err(CliError::Input("elementary needs --partition".into()));
            }
            let p: Vec<String> = partition.iter().map(|x| x.to_string()).collect();
            params.insert("partition".to_string(), p.join(","));
            elementary(partition).map_err(input)?
        }
        "temperley-lieb" => {
            let n = n.unwrap_or(2);
            params.insert("n".to_string(), n.to_string());
            temperley_lieb(n).map_err(input)?
        }
        "cyclic" | "pair" => {
            let (g, key, k) = if name == "cyclic" {
                let m = order.ok_or_else(|| CliError::Input("cyclic needs --order".into()))?;
                (GroupoidSpec::cyclic(m), "order", m)
            } else {
                let k = objects.ok_or_else(|| CliError::Input("pair needs --objects".into()))?;
                (GroupoidSpec::pair(k), "objects", k)
            };
            check_dim(
                if name == "cyclic" { k } else { k * k },
                "requested groupoid algebra",
            )?;
            params.insert(key.to_string(), k.to_string());
            params.insert("dual".to_string(), dual.to_string());
            groupoid_algebra(&g, dual).map_err(input)?
        }
        other => builtin(other).map_err(input)?,
    };
    check_dim(h.dim(), "example")?;
    let prov = Provenance {
        generator: name.to_string(),
        params,
    };
    emit(&h, Some(prov), output, format!("{name}: dimension {} over Q(zeta_{})", h.dim(), h.conductor()))
}
