use std::fmt::Write as _;
use std::path::Path;

use blockset::algebra::{FiniteField, Quasifield};
use blockset::blocking::hitting::SearchOptions;
use blockset::blocking::{
    axes_construction, greedy_blocking, is_blocking, min_blocking, min_cover_excluding, verify_duality,
    BlockingError, Certificate, CoverConfig,
};
use blockset::knots::{counting_trials, hypothesis_audit, KnotSpectrum};
use blockset::oracle::{afschatting_suite, feasibility_sweep, inequality_audit, sweep_csv, FailedFlag};
use blockset::planes::{
    build_desarguesian_affine, build_desarguesian_projective, build_translation_plane, complete, desargues_violation,
    dualize, io, verify_axioms, IncidenceStructure, LineSet, PlaneError, PlaneKind, PointSet, Provenance,
};
use serde_json::json;

use crate::{BlockingCmd, Family, Format, PlaneCmd, SearchArgs, Source, VerifyCmd};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

type Run = Result<Output, Failure>;

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: USAGE,
        message: message.to_string(),
    }
}

fn done(text: String, code: u8) -> Run {
    Ok(Output { text, code })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn no_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        Err(usage("csv output is not available for this command"))
    } else {
        Ok(())
    }
}

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

// Parse and size errors are usage errors; a file that parses but is not a
// plane is an axiom failure.
fn plane_failure(e: PlaneError) -> Failure {
    let code = match e {
        PlaneError::Axiom(_) => VIOLATION,
        _ => USAGE,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn blocking_failure(e: BlockingError) -> Failure {
    match e {
        BlockingError::Plane(e) => plane_failure(e),
        BlockingError::NotBlocking { .. } => Failure {
            code: VIOLATION,
            message: e.to_string(),
        },
        e => usage(e),
    }
}

fn build(family: Family, q: u64) -> Result<IncidenceStructure, Failure> {
    let field = || FiniteField::of_order(q).map_err(usage);
    match family {
        Family::Pg => build_desarguesian_projective(&field()?).map_err(plane_failure),
        Family::Ag => build_desarguesian_affine(&field()?).map_err(plane_failure),
        Family::Hall => {
            let base = u32::try_from(q).map_err(|_| usage(format!("hall base order {q} out of range")))?;
            let qf = Quasifield::hall(base).map_err(usage)?;
            build_translation_plane(&qf).map_err(plane_failure)
        }
    }
}

fn load(path: &Path) -> Result<IncidenceStructure, Failure> {
    io::load(path).map_err(|e| match e {
        PlaneError::Io(err) => usage(format!("{}: {err}", path.display())),
        e => plane_failure(e),
    })
}

fn resolve(source: &Source) -> Result<IncidenceStructure, Failure> {
    match (&source.input, source.family, source.q) {
        (Some(path), _, _) => Ok(adopt_coordinates(load(path)?)),
        (None, Some(family), Some(q)) => build(family, q),
        _ => Err(usage("give either --in FILE or --family with --q")),
    }
}

/// A loaded affine plane that is literally the plane built from GF(q) or
/// from the Hall quasifield gets that plane's coordinates back.
fn adopt_coordinates(plane: IncidenceStructure) -> IncidenceStructure {
    if plane.kind() != PlaneKind::Affine {
        return plane;
    }
    let q = plane.order() as u64;
    if let Ok(field) = FiniteField::of_order(q) {
        if build_desarguesian_affine(&field).is_ok_and(|ag| ag == plane) {
            return plane.with_provenance(Provenance::Ag);
        }
    }
    let r = q.isqrt();
    if r * r == q {
        let hall = u32::try_from(r)
            .ok()
            .and_then(|r| Quasifield::hall(r).ok())
            .and_then(|qf| build_translation_plane(&qf).ok());
        if hall.is_some_and(|h| h == plane) {
            return plane.with_provenance(Provenance::Hall);
        }
    }
    plane
}

fn require(plane: &IncidenceStructure, kind: PlaneKind, what: &str) -> Result<(), Failure> {
    if plane.kind() == kind {
        Ok(())
    } else {
        Err(usage(format!("{what} needs a {kind} plane, got a {} one", plane.kind())))
    }
}

fn options(search: &SearchArgs) -> SearchOptions {
    SearchOptions {
        node_budget: search.budget,
        threads: search.threads.max(1),
        deterministic: search.deterministic,
    }
}

fn certificate_output(mut cert: Certificate, search: &SearchArgs, format: Format, extra: &str) -> Run {
    if search.deterministic {
        cert.ms = 0;
    }
    let code = if cert.is_optimal() { OK } else { BUDGET };
    let text = match format {
        Format::Json => pretty(&cert),
        Format::Csv => format!(
            "problem,plane,value,status,nodes,ms,witness\n{},{},{},{},{},{},{}\n",
            cert.problem,
            cert.plane,
            cert.value,
            cert.status,
            cert.nodes,
            cert.ms,
            join(cert.witness.iter().copied())
        ),
        Format::Text => {
            let mut t = String::new();
            writeln!(t, "problem: {}", cert.problem).unwrap();
            writeln!(t, "plane: {}", cert.plane).unwrap();
            writeln!(t, "value: {}", cert.value).unwrap();
            writeln!(t, "status: {}", cert.status).unwrap();
            writeln!(t, "witness: {}", join(cert.witness.iter().copied())).unwrap();
            writeln!(t, "nodes: {}", cert.nodes).unwrap();
            if !search.deterministic {
                writeln!(t, "ms: {}", cert.ms).unwrap();
            }
            t.push_str(extra);
            t
        }
    };
    done(text, code)
}

pub fn plane(cmd: PlaneCmd, format: Format) -> Run {
    no_csv(format)?;
    match cmd {
        PlaneCmd::Build { family, q, out } => {
            let plane = build(family, q)?;
            let report = verify_axioms(&plane);
            let code = if report.pass { OK } else { VIOLATION };
            let summary = json!({
                "family": plane.provenance().to_string(),
                "kind": plane.kind().to_string(),
                "order": plane.order(),
                "points": plane.point_count(),
                "lines": plane.line_count(),
                "axioms": report.to_string(),
            });
            if let Some(path) = out {
                io::save(&plane, &path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let text = match format {
                    Format::Json => pretty(&summary),
                    _ => format!(
                        "{} plane of order {} ({} points, {} lines) written to {}\naxioms: {report}\n",
                        plane.kind(),
                        plane.order(),
                        plane.point_count(),
                        plane.line_count(),
                        path.display()
                    ),
                };
                return done(text, code);
            }
            let text = match format {
                Format::Json => {
                    let mut v = summary;
                    v["incidences"] = json!(plane.lines());
                    pretty(&v)
                }
                _ => format!("# {}, axioms: {report}\n{}", plane.provenance(), io::to_text(&plane)),
            };
            done(text, code)
        }
        PlaneCmd::Check { input, desargues, seed } => {
            let text = std::fs::read_to_string(&input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let plane = io::parse_str(&text).map_err(plane_failure)?;
            let report = verify_axioms(&plane);
            let mut witness = None;
            if let (true, Some(samples)) = (report.pass, desargues) {
                let projective = match plane.kind() {
                    PlaneKind::Affine => complete(&plane).map_err(plane_failure)?.0,
                    PlaneKind::Projective => plane.clone(),
                };
                let found = desargues_violation(&projective, samples, seed).map_err(plane_failure)?;
                if let Some(w) = &found {
                    assert!(w.recheck(&projective), "witness fails its own recheck");
                }
                witness = Some(found);
            }
            let code = if report.pass { OK } else { VIOLATION };
            let out = match format {
                Format::Json => pretty(&json!({
                    "kind": plane.kind().to_string(),
                    "order": plane.order(),
                    "points": plane.point_count(),
                    "lines": plane.line_count(),
                    "pass": report.pass,
                    "total": report.total,
                    "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "desargues_seed": desargues.map(|_| seed),
                    "desargues_witness": witness.clone().flatten(),
                })),
                _ => {
                    let mut t = format!(
                        "{} plane of order {} ({} points, {} lines)\naxioms: {report}\n",
                        plane.kind(),
                        plane.order(),
                        plane.point_count(),
                        plane.line_count()
                    );
                    match witness {
                        Some(Some(w)) => writeln!(
                            t,
                            "desargues: violated after {} samples (seed {seed}); center {}, triangles {:?} {:?}, axis points {:?}",
                            w.samples, w.center, w.triangle, w.image, w.axis
                        )
                        .unwrap(),
                        Some(None) => writeln!(
                            t,
                            "desargues: no violation in {} samples (seed {seed})",
                            desargues.unwrap()
                        )
                        .unwrap(),
                        None => {}
                    }
                    t
                }
            };
            done(out, code)
        }
        PlaneCmd::Dual { input, out } => {
            let plane = load(&input)?;
            require(&plane, PlaneKind::Projective, "dual")?;
            let dual = dualize(&plane).map_err(plane_failure)?;
            io::save(&dual, &out).map_err(|e| usage(format!("{}: {e}", out.display())))?;
            let text = match format {
                Format::Json => pretty(&json!({ "order": dual.order(), "out": out.display().to_string() })),
                _ => format!("dual of order {} written to {}\n", dual.order(), out.display()),
            };
            done(text, OK)
        }
        PlaneCmd::Complete { input, out } => {
            let plane = load(&input)?;
            require(&plane, PlaneKind::Affine, "complete")?;
            let (projective, inf) = complete(&plane).map_err(plane_failure)?;
            io::save(&projective, &out).map_err(|e| usage(format!("{}: {e}", out.display())))?;
            let text = match format {
                Format::Json => pretty(&json!({
                    "order": projective.order(),
                    "line_at_infinity": inf,
                    "out": out.display().to_string(),
                })),
                _ => format!(
                    "completion of order {} written to {}\nline at infinity: {inf}\n",
                    projective.order(),
                    out.display()
                ),
            };
            done(text, OK)
        }
    }
}

fn set_output(plane: &IncidenceStructure, name: &str, points: Vec<usize>, format: Format) -> Run {
    let set = PointSet::from_indices(plane, points.iter().copied()).map_err(plane_failure)?;
    let check = is_blocking(plane, &set).map_err(blocking_failure)?;
    let code = if check.blocking { OK } else { VIOLATION };
    let text = match format {
        Format::Json => pretty(&json!({
            "set": name,
            "plane": plane.provenance().to_string(),
            "size": set.len(),
            "points": set.to_vec(),
            "blocking": check.blocking,
            "missed_line": check.witness,
        })),
        Format::Csv => format!(
            "set,plane,size,blocking,points\n{name},{},{},{},{}\n",
            plane.provenance(),
            set.len(),
            check.blocking,
            join(set.iter())
        ),
        Format::Text => {
            let mut t = format!("{name} set of size {}\npoints: {}\n", set.len(), join(set.iter()));
            match check.witness {
                None => t.push_str("blocking: yes\n"),
                Some(l) => writeln!(t, "blocking: no\nmissed line {l}: {}", join(plane.line(l).iter().copied())).unwrap(),
            }
            t
        }
    };
    done(text, code)
}

pub fn blocking(cmd: BlockingCmd, format: Format) -> Run {
    match cmd {
        BlockingCmd::Min { source, search } => {
            let plane = resolve(&source)?;
            require(&plane, PlaneKind::Affine, "blocking min")?;
            let cert = min_blocking(&plane, &options(&search)).map_err(blocking_failure)?;
            certificate_output(cert, &search, format, "")
        }
        BlockingCmd::Greedy { source } => {
            let plane = resolve(&source)?;
            require(&plane, PlaneKind::Affine, "blocking greedy")?;
            let set = greedy_blocking(&plane);
            set_output(&plane, "greedy", set.to_vec(), format)
        }
        BlockingCmd::Check { source, set } => {
            let plane = resolve(&source)?;
            set_output(&plane, "given", set, format)
        }
        BlockingCmd::Axes { source } => {
            let plane = resolve(&source)?;
            require(&plane, PlaneKind::Affine, "blocking axes")?;
            let set = axes_construction(&plane).map_err(blocking_failure)?;
            set_output(&plane, "axes", set.to_vec(), format)
        }
        BlockingCmd::DualCover { source, point, search } => {
            let plane = resolve(&source)?;
            require(&plane, PlaneKind::Projective, "blocking dual-cover")?;
            let cert = min_cover_excluding(&plane, point, &options(&search)).map_err(blocking_failure)?;
            let lines = LineSet::from_indices(&plane, cert.witness.iter().copied()).map_err(plane_failure)?;
            let cfg = CoverConfig::new(plane, lines, point).map_err(blocking_failure)?;
            let spectrum = KnotSpectrum::of_config(&cfg);
            let audit = hypothesis_audit(&cfg);
            let violated = audit.violations().count() > 0;
            if format == Format::Json {
                let mut cert = cert;
                if search.deterministic {
                    cert.ms = 0;
                }
                let code = if violated {
                    VIOLATION
                } else if cert.is_optimal() {
                    OK
                } else {
                    BUDGET
                };
                let text = pretty(&json!({ "certificate": cert, "spectrum": spectrum, "audit": audit }));
                return done(text, code);
            }
            let mut extra = String::new();
            if format == Format::Text {
                writeln!(extra, "spectrum: {}", join(spectrum.x.iter().map(|&c| c as usize))).unwrap();
                writeln!(extra, "max knot: {}", spectrum.k).unwrap();
                for e in &audit.entries {
                    let state = match e.holds {
                        None => "not applicable",
                        Some(true) => "holds",
                        Some(false) => "VIOLATED",
                    };
                    writeln!(extra, "claim {}: {state}", e.claim).unwrap();
                }
            }
            let mut out = certificate_output(cert, &search, format, &extra)?;
            if violated {
                out.code = VIOLATION;
            }
            Ok(out)
        }
    }
}

pub fn verify(cmd: VerifyCmd, format: Format) -> Run {
    match cmd {
        VerifyCmd::Afschatting {
            b_max,
            k_max,
            trials,
            seed,
        } => {
            no_csv(format)?;
            let r = afschatting_suite(b_max, k_max, trials, seed).map_err(usage)?;
            let code = if r.ok() { OK } else { VIOLATION };
            let text = match format {
                Format::Json => pretty(&r),
                _ => {
                    let mut t = format!(
                        "averaging bound: {} (b, k) pairs with b <= {b_max}, k <= {k_max} against brute force\n\
                         rebalancing: {trials} random tuples (seed {seed})\nviolations: {}\n",
                        r.cases,
                        r.violations.len()
                    );
                    for v in &r.violations {
                        writeln!(t, "  {v}").unwrap();
                    }
                    t
                }
            };
            done(text, code)
        }
        VerifyCmd::Counts { source, trials, seed } => {
            no_csv(format)?;
            let plane = resolve(&source)?;
            let projective = match plane.kind() {
                PlaneKind::Affine => complete(&plane).map_err(plane_failure)?.0,
                PlaneKind::Projective => plane,
            };
            let r = counting_trials(&projective, trials, seed).map_err(usage)?;
            let code = if r.ok() { OK } else { VIOLATION };
            let text = match format {
                Format::Json => pretty(&r),
                _ => {
                    let mut t = format!(
                        "order {}, {trials} trials (seed {seed})\narbitrary sets passing: {}\ncovers passing: {}\n",
                        r.q, r.arbitrary_passed, r.cover_passed
                    );
                    for f in &r.failures {
                        writeln!(t, "  {f}").unwrap();
                    }
                    t
                }
            };
            done(text, code)
        }
        VerifyCmd::Inequalities { q_min, q_max } => {
            let r = inequality_audit(q_min, q_max).map_err(usage)?;
            let code = if r.violation_count() == 0 { OK } else { VIOLATION };
            let range = |c: &blockset::oracle::ClaimResult| match c.q_range {
                Some([lo, hi]) => (lo.to_string(), hi.to_string()),
                None => (String::new(), String::new()),
            };
            let text = match format {
                Format::Json => pretty(&r),
                Format::Csv => {
                    let mut t = String::from("claim,q_lo,q_hi,violations\n");
                    for c in &r.claims {
                        let (lo, hi) = range(c);
                        writeln!(t, "{},{lo},{hi},{}", c.claim, c.violations.len()).unwrap();
                    }
                    t
                }
                Format::Text => {
                    let mut t = String::new();
                    for c in &r.claims {
                        let span = match c.q_range {
                            Some([lo, hi]) => format!("[{lo}, {hi}]"),
                            None => "outside range".into(),
                        };
                        write!(t, "{:<48} {span:<16} violations: {}", c.claim, c.violations.len()).unwrap();
                        if !c.violations.is_empty() {
                            write!(t, " (first q = {})", c.violations[0]).unwrap();
                        }
                        if !c.below_range.is_empty() {
                            write!(t, "; fails below range at q = {}", join(c.below_range.iter().map(|&q| q as usize))).unwrap();
                        }
                        t.push('\n');
                    }
                    writeln!(t, "total violations: {}", r.violation_count()).unwrap();
                    t
                }
            };
            done(text, code)
        }
        VerifyCmd::Feasibility { q_min, q_max } => {
            let rows = feasibility_sweep(q_min, q_max).map_err(usage)?;
            let feasible = rows.iter().filter(|r| r.failed.is_none()).count();
            let code = if feasible == 0 { OK } else { VIOLATION };
            let flag = |f: Option<FailedFlag>| f.map_or("feasible", FailedFlag::as_str);
            let text = match format {
                Format::Csv => sweep_csv(&rows),
                Format::Json => pretty(
                    &rows
                        .iter()
                        .map(|r| json!({ "q": r.q, "d": r.d, "b": r.b, "failed_flag": flag(r.failed) }))
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    let mut t = format!("{} rows for q in [{q_min}, {q_max}], d in 1..=5, b in 0..=q\n", rows.len());
                    for f in [
                        None,
                        Some(FailedFlag::Integrality),
                        Some(FailedFlag::Nonnegativity),
                        Some(FailedFlag::BigKnotBound),
                        Some(FailedFlag::BAtMostQ),
                    ] {
                        let n = rows.iter().filter(|r| r.failed == f).count();
                        writeln!(t, "{}: {n}", flag(f)).unwrap();
                    }
                    t
                }
            };
            done(text, code)
        }
        VerifyCmd::Duality { q, search } => {
            no_csv(format)?;
            let plane = build(Family::Ag, q)?;
            let mut r = verify_duality(&plane, &options(&search)).map_err(blocking_failure)?;
            if search.deterministic {
                r.blocking.ms = 0;
                r.cover.ms = 0;
            }
            let code = if !r.blocking.is_optimal() || !r.cover.is_optimal() {
                BUDGET
            } else if r.agrees() {
                OK
            } else {
                VIOLATION
            };
            let text = match format {
                Format::Json => pretty(&json!({
                    "order": r.order,
                    "blocking": r.blocking,
                    "cover": r.cover,
                    "transferred": r.transferred,
                    "agrees": r.agrees(),
                })),
                _ => format!(
                    "order {}\nminimum blocking set: {} ({})\nminimum cover missing a point: {} ({})\n\
                     transferred witness: {} lines\nagrees: {}\n",
                    r.order,
                    r.blocking.value,
                    r.blocking.status,
                    r.cover.value,
                    r.cover.status,
                    r.transferred,
                    if r.agrees() { "yes" } else { "no" }
                ),
            };
            done(text, code)
        }
    }
}
