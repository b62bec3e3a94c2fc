//! Command-line interface: enumeration, classification, stabilizers,
//! factorization, lifting/projection, weak equivalence, presentations, and
//! the `verify` harness replaying the named checks.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage
//! errors. Output is byte-stable for fixed inputs; `--format json` selects
//! structured documents tagged with the schema version.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spincover_core::bridge::{is_realizable, lift_to_symp, project_to_orth, weak_class, weak_witness};
use spincover_core::form::{FormSpace, Isometry};
use spincover_core::gf2::{GF2Mat, GF2Vec};
use spincover_core::orth_action::{classify_a1, stabilizer_check, AlphaClass};
use spincover_core::surfaces::{
    epi_set, presentation, specials, OSurface, SectionParams, SpecialCovering, TotalN,
};
use spincover_core::symp_action::{classify_epi_guarded, factorize_transvections, EpiMode};
use spincover_core::verify::{run_all, run_check, CheckReport, VerifyOptions, CHECK_NAMES};
use spincover_core::{Error, SCHEMA};

#[derive(Parser)]
#[command(
    name = "spincover",
    about = "Exact GF(2) classification of special double coverings of trivial circle bundles over non-orientable surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the special coverings (or the pulled-back family) at one genus,
    /// with their classes.
    Enumerate {
        /// Genus parameter (the base surface has first homology of
        /// dimension g+1).
        #[arg(long)]
        g: usize,
        /// List the pulled-back family of the orientation cover instead.
        #[arg(long)]
        epi: bool,
        /// Quadratic-section parameters for the family's invariant labels,
        /// 2g bits (default all zero; only used with --epi).
        #[arg(long)]
        r: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Orbit decomposition of the coverings under the orthogonal action.
    ClassifyO {
        #[arg(long)]
        g: usize,
        /// Linear-section parameters, g+1 bits (default all zero).
        #[arg(long)]
        rho: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Orbit decomposition of the pulled-back family under the symplectic
    /// subgroup actions.
    ClassifySp {
        #[arg(long)]
        g: usize,
        /// Quadratic-section parameters, 2g bits (default all zero).
        #[arg(long)]
        r: Option<String>,
        /// kt: generator-driven; gs: full-group filter (guarded); both:
        /// run the two routes and require identical partitions.
        #[arg(long, default_value = "kt")]
        mode: String,
        /// Override the genus guard of the full-enumeration route.
        #[arg(long)]
        guard: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Stabilizer of a distinguished linear form, with generator closure.
    Stabilizer {
        #[arg(long)]
        g: usize,
        /// Which distinguished form: 0 (values 1,1,0,..) or 1 (values 1,0,..).
        #[arg(long)]
        alpha: u8,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Factor a symplectic map into transvections orthogonal to a subspace.
    Factor {
        #[arg(long)]
        g: usize,
        /// Matrix file: 2g rows of '0'/'1' in the pairing basis.
        #[arg(long)]
        matrix: PathBuf,
        /// Quadratic-section parameters, 2g bits (default all zero); they
        /// determine the distinguished vector t of the subspace.
        #[arg(long)]
        r: Option<String>,
        /// Subspace choice; `kt` is the projection kernel plus t.
        #[arg(long, default_value = "kt")]
        subspace: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Lift an orthogonal base map to a symplectic map of the cover
    /// (output on the split basis e_1..e_g, e'_1..e'_g).
    Lift {
        #[arg(long)]
        g: usize,
        /// Matrix file: g+1 rows of '0'/'1'.
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Project a symplectic map of the cover (split basis) to the
    /// orthogonal base maps covering it.
    Project {
        #[arg(long)]
        g: usize,
        /// Matrix file: 2g rows of '0'/'1' in the split basis.
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Weak-equivalence class and witness between two special coverings.
    Weak {
        #[arg(long)]
        g: usize,
        /// Values of the first covering on the barred base classes, g+1 bits.
        #[arg(long)]
        psi: String,
        /// Values of the second covering, g+1 bits.
        #[arg(long)]
        psi2: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Presentation of the covering space determined by a special covering.
    Presentation {
        #[arg(long)]
        g: usize,
        /// Values on the barred base classes, g+1 bits.
        #[arg(long)]
        psi: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Replay the named checks; exit 0 only when every check passes.
    Verify {
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Run one named check.
        #[arg(long)]
        theorem: Option<String>,
        /// Cap the genus ranges.
        #[arg(long, default_value_t = 3)]
        max_g: usize,
        /// Restrict to one genus.
        #[arg(long)]
        g: Option<usize>,
        /// Explicit linear-section parameters.
        #[arg(long)]
        rho: Option<String>,
        /// Explicit quadratic-section parameters.
        #[arg(long)]
        r: Option<String>,
        /// Regenerate the golden fixtures document instead of checking.
        #[arg(long)]
        regen_fixtures: bool,
        /// Where to write the regenerated fixtures (stdout when omitted).
        #[arg(long)]
        fixtures_path: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_bits(text: &str, expected_len: usize, what: &str) -> Result<GF2Vec, String> {
    let v = GF2Vec::parse(text).map_err(|e| e.to_string())?;
    if v.len() != expected_len {
        return Err(format!("{what} must have {expected_len} bits, got {}", v.len()));
    }
    Ok(v)
}

fn read_matrix(path: &PathBuf, rows: usize, cols: usize) -> Result<GF2Mat, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let m = GF2Mat::parse_text(&text).map_err(|e| e.to_string())?;
    if m.rows() != rows || m.cols() != cols {
        return Err(format!(
            "matrix in {} must be {rows}x{cols}, got {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        ));
    }
    Ok(m)
}

fn matrix_rows(m: &GF2Mat) -> Vec<String> {
    (0..m.rows()).map(|i| m.row(i).to_string()).collect()
}

fn emit(format: Format, text: String, doc: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        ),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Some(map), Some(extra)) = (doc.as_object_mut(), body.as_object()) {
        for (k, v) in extra {
            map.insert(k.clone(), v.clone());
        }
    }
    doc
}

fn check_reports_output(
    reports: &[CheckReport],
    format: Format,
    max_g: usize,
    g: Option<usize>,
) -> ExitCode {
    let passed = reports.iter().all(|r| r.passed);
    match format {
        Format::Text => {
            for r in reports {
                print!("{r}");
            }
            let scope = match g {
                Some(g) => format!("genus {g}"),
                None => format!("max genus {max_g}"),
            };
            println!(
                "verify: {} of {} checks passed ({scope})",
                reports.iter().filter(|r| r.passed).count(),
                reports.len()
            );
        }
        Format::Json => {
            let doc = envelope(
                "verify",
                json!({
                    "max_g": max_g,
                    "g": g,
                    "passed": passed,
                    "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
                }),
            );
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    // die quietly when the downstream pipe closes (e.g. `spincover ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => usage_error(&message),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate { g, epi, r, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            if epi {
                let r = match r {
                    Some(text) => parse_bits(&text, 2 * g, "--r")?,
                    None => GF2Vec::zeros(2 * g),
                };
                let params = SectionParams::with_r(g, r.clone()).map_err(|e| e.to_string())?;
                let members = epi_set(g);
                let labeled: Vec<(String, u8)> = members
                    .iter()
                    .map(|m| {
                        let (arf, _) = spincover_core::symp_action::arf_closed_form(&m.phi, &params)
                            .expect("family members admit the invariant");
                        (m.phi.bitstring(), arf)
                    })
                    .collect();
                let text = {
                    let mut lines = vec![format!(
                        "{} pulled-back coverings at genus {g} (2^{g}), r={r}",
                        members.len()
                    )];
                    for (m, (_, arf)) in members.iter().zip(&labeled) {
                        lines.push(format!(
                            "{}  arf={arf}  induced-by {} and {}",
                            m.phi.bitstring(),
                            m.preimages.0.bitstring(),
                            m.preimages.1.bitstring()
                        ));
                    }
                    lines.join("\n")
                };
                let doc = envelope(
                    "enumerate",
                    json!({
                        "g": g,
                        "family": true,
                        "r": r.to_string(),
                        "count": members.len(),
                        "members": members.iter().zip(&labeled).map(|(m, (_, arf))| json!({
                            "phi": m.phi.bitstring(),
                            "arf": arf,
                            "preimages": [
                                m.preimages.0.bitstring(),
                                m.preimages.1.bitstring(),
                            ],
                        })).collect::<Vec<_>>(),
                    }),
                );
                emit(format.format, text, doc);
            } else {
                let list = specials(TotalN { g });
                let text = {
                    let mut lines =
                        vec![format!("{} special coverings at genus {g} (2^{})", list.len(), g + 1)];
                    for psi in &list {
                        lines.push(format!("{}  class={}", psi.bitstring(), psi.base_sum()));
                    }
                    lines.join("\n")
                };
                let doc = envelope(
                    "enumerate",
                    json!({
                        "g": g,
                        "family": false,
                        "count": list.len(),
                        "coverings": list.iter().map(|psi| json!({
                            "psi": psi.bitstring(),
                            "class": psi.base_sum(),
                        })).collect::<Vec<_>>(),
                    }),
                );
                emit(format.format, text, doc);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifyO { g, rho, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let rho = match rho {
                Some(text) => parse_bits(&text, g + 1, "--rho")?,
                None => GF2Vec::zeros(g + 1),
            };
            let params = SectionParams::with_rho(g, rho.clone()).map_err(|e| e.to_string())?;
            let report = classify_a1(g, &params).map_err(|e| e.to_string())?;
            let text = format!(
                "orthogonal action at genus {g}, rho={rho}\n{report}"
            );
            let doc = envelope(
                "classify-o",
                json!({
                    "g": g,
                    "rho": rho.to_string(),
                    "report": report.to_json(),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifySp { g, r, mode, guard, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let r = match r {
                Some(text) => parse_bits(&text, 2 * g, "--r")?,
                None => GF2Vec::zeros(2 * g),
            };
            let mode: EpiMode = mode.parse().map_err(|e: Error| e.to_string())?;
            let params = SectionParams::with_r(g, r.clone()).map_err(|e| e.to_string())?;
            let report = classify_epi_guarded(
                g,
                &params,
                mode,
                guard.unwrap_or(spincover_core::symp_action::GS_ENUM_GUARD_G),
            )
            .map_err(|e| e.to_string())?;
            let text = format!(
                "symplectic action at genus {g}, r={r}, mode {}{}\n{report}",
                format!("{mode:?}").to_lowercase(),
                if params.is_exceptional() {
                    " (exceptional section: single orbit)"
                } else {
                    ""
                }
            );
            let doc = envelope(
                "classify-sp",
                json!({
                    "g": g,
                    "r": r.to_string(),
                    "mode": format!("{mode:?}").to_lowercase(),
                    "exceptional": params.is_exceptional(),
                    "report": report.to_json(),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Stabilizer { g, alpha, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let which = match alpha {
                0 => AlphaClass::Alpha0,
                1 => AlphaClass::Alpha1,
                other => return Err(format!("--alpha must be 0 or 1, got {other}")),
            };
            let report = stabilizer_check(g, which);
            let doc = envelope(
                "stabilizer",
                json!({
                    "g": g,
                    "alpha": alpha,
                    "report": report.to_json(),
                }),
            );
            emit(format.format, format!("{report}"), doc);
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Factor {
            g,
            matrix,
            r,
            subspace,
            format,
        } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            if subspace != "kt" {
                return Err(format!("unknown subspace {subspace:?} (only kt is available)"));
            }
            let r = match r {
                Some(text) => parse_bits(&text, 2 * g, "--r")?,
                None => GF2Vec::zeros(2 * g),
            };
            let params = SectionParams::with_r(g, r.clone()).map_err(|e| e.to_string())?;
            let mat = read_matrix(&matrix, 2 * g, 2 * g)?;
            let surface = OSurface::new(g);
            let f = Isometry::new(std::sync::Arc::clone(surface.space()), mat)
                .map_err(|e| e.to_string())?;
            let mut v_basis: Vec<GF2Vec> = (1..=g).map(|i| surface.e_prime(i)).collect();
            if !params.t_vec().is_zero() {
                v_basis.push(params.t_vec());
            }
            let factors = factorize_transvections(&f, &v_basis).map_err(|e| e.to_string())?;
            let text = {
                let mut lines = vec![format!(
                    "{} transvection factor(s), product replays the input",
                    factors.len()
                )];
                for y in &factors {
                    lines.push(y.to_string());
                }
                lines.join("\n")
            };
            let doc = envelope(
                "factor",
                json!({
                    "g": g,
                    "r": r.to_string(),
                    "subspace": subspace,
                    "factors": factors.iter().map(GF2Vec::to_string).collect::<Vec<_>>(),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Lift { g, matrix, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let mat = read_matrix(&matrix, g + 1, g + 1)?;
            let base = Isometry::new(FormSpace::dot(g + 1), mat).map_err(|e| e.to_string())?;
            let f = lift_to_symp(&base).map_err(|e| e.to_string())?;
            let text = format!(
                "symplectic lift on the split basis (2g x 2g):\n{}",
                f.matrix()
            );
            let doc = envelope(
                "lift",
                json!({
                    "g": g,
                    "matrix": matrix_rows(f.matrix()),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { g, matrix, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let mat = read_matrix(&matrix, 2 * g, 2 * g)?;
            let f = Isometry::new(FormSpace::symplectic_split(g), mat)
                .map_err(|e| e.to_string())?;
            let candidates = project_to_orth(&f).map_err(|e| e.to_string())?;
            let text = if candidates.is_empty() {
                "no orthogonal projection (the top block fails the restricted product)".into()
            } else {
                let mut lines = vec![format!("{} orthogonal projection(s):", candidates.len())];
                for c in &candidates {
                    lines.push(c.matrix().to_string());
                    lines.push(String::new());
                }
                lines.join("\n").trim_end().to_string()
            };
            let doc = envelope(
                "project",
                json!({
                    "g": g,
                    "count": candidates.len(),
                    "candidates": candidates
                        .iter()
                        .map(|c| matrix_rows(c.matrix()))
                        .collect::<Vec<_>>(),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Weak { g, psi, psi2, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let psi = SpecialCovering::over_n(g, &parse_bits(&psi, g + 1, "--psi")?)
                .map_err(|e| e.to_string())?;
            let psi2 = SpecialCovering::over_n(g, &parse_bits(&psi2, g + 1, "--psi2")?)
                .map_err(|e| e.to_string())?;
            let class = weak_class(&psi).map_err(|e| e.to_string())?;
            let class2 = weak_class(&psi2).map_err(|e| e.to_string())?;
            let witness = weak_witness(&psi, &psi2).map_err(|e| e.to_string())?;
            let text = match &witness {
                Some(aut) => format!(
                    "classes {class} and {class2}: weakly equivalent\nrealizable witness ({}):\n{}",
                    if is_realizable(aut) { "verified" } else { "NOT realizable" },
                    aut.matrix()
                ),
                None => format!("classes {class} and {class2}: not weakly equivalent"),
            };
            let doc = envelope(
                "weak",
                json!({
                    "g": g,
                    "psi": psi.bitstring(),
                    "psi2": psi2.bitstring(),
                    "class": class,
                    "class2": class2,
                    "equivalent": witness.is_some(),
                    "witness": witness.as_ref().map(|a| matrix_rows(a.matrix())),
                }),
            );
            emit(format.format, text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Presentation { g, psi, format } => {
            if g == 0 {
                return Err("--g must be at least 1".into());
            }
            let psi = SpecialCovering::over_n(g, &parse_bits(&psi, g + 1, "--psi")?)
                .map_err(|e| e.to_string())?;
            let p = presentation(&psi).map_err(|e| e.to_string())?;
            let doc = envelope(
                "presentation",
                json!({
                    "g": g,
                    "psi": psi.bitstring(),
                    "presentation": p.to_json(),
                    "text": p.text(),
                }),
            );
            emit(format.format, p.text(), doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            all,
            theorem,
            max_g,
            g,
            rho,
            r,
            regen_fixtures,
            fixtures_path,
            format,
        } => {
            if regen_fixtures {
                let document =
                    spincover_oracles::fixtures::to_canonical_json(&spincover_oracles::fixtures::build_fixtures());
                match fixtures_path {
                    Some(path) => {
                        let changed = std::fs::read_to_string(&path)
                            .map(|old| old != document)
                            .unwrap_or(true);
                        std::fs::write(&path, &document)
                            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                        println!(
                            "fixtures written to {} ({})",
                            path.display(),
                            if changed { "updated" } else { "unchanged" }
                        );
                    }
                    None => print!("{document}"),
                }
                return Ok(ExitCode::SUCCESS);
            }
            let rho = match rho {
                Some(text) => {
                    let g = g.ok_or("--rho requires --g")?;
                    Some(parse_bits(&text, g + 1, "--rho")?)
                }
                None => None,
            };
            let r = match r {
                Some(text) => {
                    let g = g.ok_or("--r requires --g")?;
                    Some(parse_bits(&text, 2 * g, "--r")?)
                }
                None => None,
            };
            let opts = VerifyOptions { max_g, g, rho, r };
            let reports = match (&theorem, all) {
                (Some(name), false) => {
                    vec![run_check(name, &opts).map_err(|e| e.to_string())?]
                }
                (None, true) => run_all(&opts),
                (Some(_), true) => {
                    return Err("--theorem and --all are mutually exclusive".into())
                }
                (None, false) => {
                    return Err(format!(
                        "pass --all or --theorem NAME (known checks: {})",
                        CHECK_NAMES.join(", ")
                    ))
                }
            };
            Ok(check_reports_output(&reports, format.format, max_g, g))
        }
    }
}
