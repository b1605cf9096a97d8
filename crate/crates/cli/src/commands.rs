use std::fmt::{Display, Write as _};
use std::path::Path;

use frobasis::finset::{check_comonoid_hom, check_full_hom_unitary, hom_to_function, FinsetError};
use frobasis::frobenius::{check_axioms, classify_report, conjugate_element, from_basis, Axiom, Classification};
use frobasis::spectrum::{extract_copyables_with, ExtractionPath};
use frobasis::{Frobenius64, Tensor64, Tolerance64, C64};
use serde::Serialize;

use crate::error::CliError;
use crate::files::{self, to_json, to_pairs, AlgebraFile, BasisFile, BasisLoad, ElementFile, MatrixFile, Pair};
use crate::{Cli, Command, Format, Mode};

/// What a command prints on success, and whether its check passed.
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Outcome { stdout, passed: true }
    }
}

fn failed(e: impl Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = cli.tolerance()?;
    match &cli.command {
        Command::Check { algebra } => check(cli, &tol, algebra),
        Command::FromBasis { basis, out } => build(cli, basis, out.as_deref()),
        Command::Extract { algebra, out } => extract(cli, &tol, algebra, out.as_deref()),
        Command::Classify { algebra } => classify(cli, &tol, algebra),
        Command::Homcheck {
            map,
            domain,
            codomain,
            mode,
        } => homcheck(cli, &tol, map, domain, codomain, *mode),
        Command::Conjugate { algebra, element, out } => conjugate(cli, algebra, element, out.as_deref()),
        Command::Normprofile { algebra } => normprofile(cli, &tol, algebra),
    }
}

#[derive(Serialize)]
struct AxiomLine {
    axiom: &'static str,
    residual: f64,
    bound: f64,
    claimed: bool,
    passed: bool,
}

#[derive(Serialize)]
struct CheckReport {
    passed: bool,
    classification: &'static str,
    axioms: Vec<AxiomLine>,
}

fn check(cli: &Cli, tol: &Tolerance64, path: &Path) -> Result<Outcome, CliError> {
    let f = AlgebraFile::load(path)?;
    let report = check_axioms(&f, tol).map_err(failed)?;
    let claimed = Axiom::claimed_by(&f);
    let passed = report.all_passed(&claimed);
    let out = CheckReport {
        passed,
        classification: classify_report(&report).name(),
        axioms: report
            .entries
            .iter()
            .map(|e| AxiomLine {
                axiom: e.axiom.name(),
                residual: e.residual,
                bound: e.bound,
                claimed: claimed.contains(&e.axiom),
                passed: e.passed,
            })
            .collect(),
    };
    let stdout = match cli.format {
        Format::Json => to_json(&out),
        Format::Text => {
            let mut s = format!("{:<16} {:>10} {:>10}  claimed  result\n", "axiom", "residual", "bound");
            for a in &out.axioms {
                let _ = writeln!(
                    s,
                    "{:<16} {:>10.3e} {:>10.3e}  {:<7}  {}",
                    a.axiom,
                    a.residual,
                    a.bound,
                    if a.claimed { "yes" } else { "no" },
                    if a.passed { "pass" } else { "FAIL" }
                );
            }
            let _ = writeln!(s, "classification: {}", out.classification);
            let _ = writeln!(s, "result: {}", if passed { "pass" } else { "fail" });
            s
        }
    };
    Ok(Outcome { stdout, passed })
}

fn emit(cli: &Cli, json: String, out: Option<&Path>, what: &str) -> Result<String, CliError> {
    match out {
        None => Ok(json),
        Some(p) => {
            files::write(p, &json)?;
            Ok(match cli.format {
                Format::Text => format!("wrote {what} to {}\n", p.display()),
                Format::Json => to_json(&serde_json::json!({ "written": p.display().to_string() })),
            })
        }
    }
}

fn build(cli: &Cli, path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let basis = match BasisFile::load(path)? {
        BasisLoad::Ok(b) => b,
        BasisLoad::Rejected(e) => return Err(failed(e)),
    };
    let f = from_basis(&basis).map_err(failed)?;
    let json = to_json(&AlgebraFile::from_structure(&f));
    Ok(Outcome::pass(emit(cli, json, out, "algebra")?))
}

#[derive(Serialize)]
struct ExtractReport {
    classification: &'static str,
    path: &'static str,
    seed: u64,
    attempts: usize,
    copy_residuals: Vec<f64>,
    counit_residuals: Vec<f64>,
    basis: BasisFile,
}

fn path_name(p: ExtractionPath) -> &'static str {
    match p {
        ExtractionPath::Dagger => "hermitian",
        ExtractionPath::General => "general",
        ExtractionPath::OneDimensional => "one-dimensional",
    }
}

fn fmt_vector(v: &[Pair]) -> String {
    let parts: Vec<String> = v.iter().map(|[re, im]| format!("[{re}, {im}]")).collect();
    format!("[{}]", parts.join(", "))
}

fn extract(cli: &Cli, tol: &Tolerance64, path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let f = AlgebraFile::load(path)?;
    let r = extract_copyables_with(&f, tol, cli.seed, cli.max_retries).map_err(failed)?;
    let kind = r.classification.basis_kind().ok_or_else(|| failed("algebra is not of basis type"))?;
    let basis = BasisFile::new(kind, &r.copyables);
    if let Some(p) = out {
        files::write(p, &to_json(&basis))?;
    }
    let report = ExtractReport {
        classification: r.classification.name(),
        path: path_name(r.path),
        seed: r.seed,
        attempts: r.attempts,
        copy_residuals: r.copy_residuals.clone(),
        counit_residuals: r.counit_residuals.clone(),
        basis,
    };
    let stdout = match cli.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "classification: {}\neigensolver: {}\nseed: {}\nattempts: {}\n",
                report.classification, report.path, report.seed, report.attempts
            );
            for (i, v) in report.basis.vectors.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "copyable {i}: {}  copy residual {:.3e}  counit residual {:.3e}",
                    fmt_vector(v),
                    report.copy_residuals[i],
                    report.counit_residuals[i]
                );
            }
            if let Some(p) = out {
                let _ = writeln!(s, "wrote basis to {}", p.display());
            }
            s
        }
    };
    Ok(Outcome::pass(stdout))
}

fn classify(cli: &Cli, tol: &Tolerance64, path: &Path) -> Result<Outcome, CliError> {
    let f = AlgebraFile::load(path)?;
    let report = check_axioms(&f, tol).map_err(failed)?;
    let class = classify_report(&report);
    let failed_axioms: Vec<&str> = report.failed().iter().map(|a| a.name()).collect();
    let stdout = match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "classification": class.name(),
            "failed": failed_axioms,
        })),
        Format::Text if failed_axioms.is_empty() => format!("{}\n", class.name()),
        Format::Text => format!("{}\nfailed: {}\n", class.name(), failed_axioms.join(", ")),
    };
    Ok(Outcome {
        stdout,
        passed: class != Classification::Invalid,
    })
}

fn finset_error(e: FinsetError, map: &Path) -> CliError {
    match e {
        FinsetError::Shape { expected, found } => CliError::Field {
            path: map.to_path_buf(),
            field: "rows".into(),
            message: format!("map has shape {found:?}, the algebras need {expected:?}"),
        },
        other => failed(other),
    }
}

#[derive(Serialize)]
struct ComonoidReport {
    passed: bool,
    comult_residual: f64,
    counit_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct FullReport {
    passed: bool,
    mult_residual: f64,
    unit_residual: f64,
    comult_residual: f64,
    counit_residual: f64,
    unitary_residual: Option<f64>,
}

fn homcheck(cli: &Cli, tol: &Tolerance64, map: &Path, a: &Path, b: &Path, mode: Mode) -> Result<Outcome, CliError> {
    let g = MatrixFile::load(map)?;
    let (fa, fb) = (AlgebraFile::load(a)?, AlgebraFile::load(b)?);
    match mode {
        Mode::Comonoid => comonoid(cli, tol, &g, &fa, &fb, map),
        Mode::Full => full(cli, tol, &g, &fa, &fb, map),
    }
}

fn comonoid(
    cli: &Cli,
    tol: &Tolerance64,
    g: &Tensor64,
    a: &Frobenius64,
    b: &Frobenius64,
    map: &Path,
) -> Result<Outcome, CliError> {
    let r = check_comonoid_hom(g, a, b, tol).map_err(|e| finset_error(e, map))?;
    let (function, note) = if r.is_comonoid_hom {
        match hom_to_function(g, a, b, tol) {
            Ok(func) => (Some(func.mapping().to_vec()), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let report = ComonoidReport {
        passed: function.is_some(),
        comult_residual: r.comult_residual,
        counit_residual: r.counit_residual,
        function,
        note,
    };
    let stdout = match cli.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "comultiplication residual: {:.3e}\ncounit residual: {:.3e}\nresult: {}\n",
                report.comult_residual,
                report.counit_residual,
                if report.passed { "pass" } else { "fail" }
            );
            if let Some(func) = &report.function {
                let idx: Vec<String> = func.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "function: {}", idx.join(" "));
            }
            if let Some(n) = &report.note {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
    };
    Ok(Outcome {
        passed: report.passed,
        stdout,
    })
}

fn full(
    cli: &Cli,
    tol: &Tolerance64,
    g: &Tensor64,
    a: &Frobenius64,
    b: &Frobenius64,
    map: &Path,
) -> Result<Outcome, CliError> {
    let r = check_full_hom_unitary(g, a, b, tol).map_err(|e| finset_error(e, map))?;
    let report = FullReport {
        passed: r.holds(),
        mult_residual: r.mult_residual,
        unit_residual: r.unit_residual,
        comult_residual: r.comult_residual,
        counit_residual: r.counit_residual,
        unitary_residual: r.unitary_residual,
    };
    let stdout = match cli.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "multiplication residual: {:.3e}\nunit residual: {:.3e}\ncomultiplication residual: {:.3e}\ncounit residual: {:.3e}\n",
                report.mult_residual, report.unit_residual, report.comult_residual, report.counit_residual
            );
            if let Some(u) = report.unitary_residual {
                let _ = writeln!(s, "unitarity residual: {u:.3e}");
            }
            let _ = writeln!(s, "result: {}", if report.passed { "pass" } else { "fail" });
            s
        }
    };
    Ok(Outcome {
        passed: report.passed,
        stdout,
    })
}

fn conjugate(cli: &Cli, algebra: &Path, element: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let f = AlgebraFile::load(algebra)?;
    let alpha = ElementFile::load(element, f.dim())?;
    let conj: Vec<C64> = conjugate_element(&f, &alpha).map_err(failed)?;
    let file = ElementFile { vector: to_pairs(&conj) };
    let stdout = match (out, cli.format) {
        (None, Format::Text) => format!("{}\n", fmt_vector(&file.vector)),
        _ => emit(cli, to_json(&file), out, "element")?,
    };
    Ok(Outcome::pass(stdout))
}

fn normprofile(cli: &Cli, tol: &Tolerance64, path: &Path) -> Result<Outcome, CliError> {
    let f = AlgebraFile::load(path)?;
    let class = classify_report(&check_axioms(&f, tol).map_err(failed)?);
    if !matches!(class, Classification::Orthonormal | Classification::Orthogonal) {
        return Err(failed(format!("norm profiles need an orthogonal-type algebra, this one is {class}")));
    }
    let r = extract_copyables_with(&f, tol, cli.seed, cli.max_retries).map_err(failed)?;
    let mut norms: Vec<f64> = r.copyables.iter().map(|v| frobasis::numlin::vec_norm(v)).collect();
    norms.sort_by(f64::total_cmp);
    let stdout = match cli.format {
        Format::Json => to_json(&serde_json::json!({ "classification": class.name(), "norms": norms })),
        Format::Text => {
            let parts: Vec<String> = norms.iter().map(|x| format!("{x:.12}")).collect();
            format!("{}\n", parts.join(" "))
        }
    };
    Ok(Outcome::pass(stdout))
}
