use std::fs;
use std::path::{Path, PathBuf};

use braidloc::fixtures::{gyb31_operator, path_fusion, sl3_level3};
use braidloc::gybe::{build_generator, SIXTH_ROOT_ANGLE};
use braidloc::hecke::root_of_unity_order;
use braidloc::linalg::{eigenvalues, frobenius_distance, identity_residual, unitarity_residual};
use braidloc::quaternion::build_r_as_printed;
use braidloc::{
    build_r, check_braid_relations, check_far_commutativity, check_gybe, classify_spectrum, emit_matrix, fit_quadratic,
    hom_dims, image_closure, markov_check, multiplicity_search, obstruction_test, quasi, represent, tl_quotient_dims,
    BraidWord, Error, EtaFormula, FusionData, GybOperator, QuasiBraidedSpace, Result, Tolerance,
};

use crate::report::RunReport;
use crate::{
    Cli, Command, FixturesCmd, FusionCmd, HeckeCmd, ImageCmd, QuasiCmd, QuaternionCmd, SpectrumCmd, TlCmd, TraceCmd,
};

/// Strand counts used for the braid relation check on operator files.
const RELATION_STRANDS: std::ops::RangeInclusive<usize> = 3..=5;
const FIXTURE_ELLS: std::ops::RangeInclusive<usize> = 3..=12;

/// Malformed files, bad arguments and truncated associator requests exit with 2.
pub fn is_input_error(err: &Error) -> bool {
    err.is_input() || matches!(err, Error::Truncation { .. })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_operator(path: &Path) -> Result<GybOperator> {
    GybOperator::from_json(&read(path)?)
}

fn load_fusion(path: &Path) -> Result<FusionData> {
    FusionData::from_json(&read(path)?)
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let tol = cli.global.tolerance()?;
    let seed = cli.global.seed;
    let mut report = match &cli.command {
        Command::Verify { file } => verify(&load_operator(file)?, tol)?,
        Command::Rep { file, n, word } => {
            let out = cli.global.out.clone().unwrap_or_else(|| PathBuf::from("rep.json"));
            return rep(&load_operator(file)?, *n, word, &out);
        }
        Command::CaseStudy { eta } => case_study((*eta).into(), tol, seed)?,
        Command::Fusion(FusionCmd::Obstruct { file }) => fusion_obstruct(&load_fusion(file)?, tol)?,
        Command::Fusion(FusionCmd::Multiplicities { file, w, m, window, bound }) => {
            fusion_multiplicities(&load_fusion(file)?, *w, *m, *window, *bound)?
        }
        Command::Hecke(HeckeCmd::Check { file, n }) => hecke_check(&load_operator(file)?, *n, tol)?,
        Command::Trace(TraceCmd::Markov { file, n, cap, eta }) => {
            trace_markov(&load_operator(file)?, *n, *cap, (*eta).into(), tol, seed)?
        }
        Command::Quasi(QuasiCmd::Verify { file, max_n }) => {
            quasi_verify(&QuasiBraidedSpace::from_json(&read(file)?)?, *max_n, tol)?
        }
        Command::Tl(TlCmd::Dims { ell, n }) => tl_dims(*ell, *n)?,
        Command::Image(ImageCmd::Closure { file, n, budget }) => closure(&load_operator(file)?, *n, *budget)?,
        Command::Spectrum(SpectrumCmd::Classify { file, n, theta }) => {
            spectrum(&load_operator(file)?, *n, *theta, tol)?
        }
        Command::Quaternion(QuaternionCmd::EmitR { as_printed }) => {
            let out = cli.global.out.clone().unwrap_or_else(|| PathBuf::from("r.json"));
            return emit_r(*as_printed, tol, &out);
        }
        Command::Fixtures(FixturesCmd::Generate) => {
            let dir = cli.global.out.clone().unwrap_or_else(|| PathBuf::from("fixtures"));
            return generate_fixtures(&dir);
        }
    };
    report.seed = Some(seed);
    if let Some(out) = &cli.global.out {
        report.artifacts.push(out.display().to_string());
        write_json(out, &report)?;
    }
    Ok(report)
}

/// gYBE, far-commutativity and unitarity.
fn verify_into(report: &mut RunReport, op: &GybOperator, tol: Tolerance) -> Result<()> {
    let gybe = check_gybe(op, tol);
    report.check("gybe", gybe.residual, gybe.pass);
    for far in check_far_commutativity(op, tol) {
        report.check(&format!("far_commutativity_{}", far.distance), far.residual, far.pass);
    }
    let unitary = unitarity_residual(op.matrix())?;
    report.check("unitarity", unitary, tol.accepts(unitary, 1.0));
    report.detail("k", op.k());
    report.detail("m", op.m());
    report.detail("dim", op.local_dim());
    Ok(())
}

fn verify(op: &GybOperator, tol: Tolerance) -> Result<RunReport> {
    let mut report = RunReport::new("verify");
    verify_into(&mut report, op, tol)?;
    Ok(report)
}

fn rep(op: &GybOperator, n: usize, word: &str, out: &Path) -> Result<RunReport> {
    let w = BraidWord::parse(n, word)?;
    let m = represent(op, &w);
    write_json(out, &m)?;
    let mut report = RunReport::new("rep");
    report.residuals.insert("identity_distance".into(), identity_residual(&m));
    report.detail("n", n);
    report.detail("word", w.letters());
    report.detail("dim", m.rows());
    report.artifacts.push(out.display().to_string());
    Ok(report)
}

fn case_study(eta: EtaFormula, tol: Tolerance, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::new("case-study");
    let op = gyb31_operator();

    let quat = frobenius_distance(&emit_matrix(&build_r()), op.matrix())?;
    report.check("quaternion_match", quat, tol.accepts(quat, op.matrix().frobenius_norm()));
    verify_into(&mut report, &op, tol)?;

    let g1 = build_generator(&op, 3, 1)?;
    let class = classify_spectrum(&eigenvalues(&g1, tol)?, SIXTH_ROOT_ANGLE, tol)?;
    report.require(class.matches_ratio);
    report.detail("spectrum_sixth_root_ratio", class.matches_ratio);

    let fit = fit_quadratic(&build_generator(&op, 4, 1)?, tol)?;
    let order = root_of_unity_order(fit.q, 24, tol.abs);
    report.check("hecke_fit", fit.residual, tol.accepts(fit.residual, 1.0) && order == Some(6));
    report.detail("q", fit.q);
    report.detail("q_order", order);

    let trace = markov_check(&op, 4, 6, eta, tol, seed)?;
    report.check("markov", trace.markov_residual, trace.pass);
    report.detail("eta", trace.eta);
    report.detail("observed_weight", trace.observed_weight);
    report.detail("markov_words", trace.words_checked);

    for n in RELATION_STRANDS {
        let rel = check_braid_relations(&op, n, tol)?;
        report.check(&format!("braid_relations_n{n}"), rel.worst_residual, rel.pass);
    }

    let sl3 = sl3_level3();
    let obs = obstruction_test(&sl3, tol)?;
    let lambda_ok = obs.lambda_check.candidate == 2 && obs.lambda_check.integral() && obs.period == 3;
    report.check("sl3_lambda", (obs.fpdim - 2.0).abs(), lambda_ok && obs.verdict);
    report.detail("sl3_lambda", obs.fpdim);
    report.detail("sl3_period", obs.period);
    report.detail("sl3_stabilization", obs.stabilization);

    let win = multiplicity_search(&sl3, 2, 1, braidloc::fusion::DEFAULT_WINDOW, braidloc::fusion::DEFAULT_BOUND)?;
    report.require(win.feasible && win.verify(&sl3));
    report.detail("sl3_multiplicities", &win.vectors);
    Ok(report)
}

fn fusion_obstruct(f: &FusionData, tol: Tolerance) -> Result<RunReport> {
    let mut report = RunReport::new("fusion obstruct");
    let obs = obstruction_test(f, tol)?;
    report.residuals.insert("lambda_sq_gap".into(), (obs.fpdim_sq - obs.fpdim_sq.round()).abs());
    report.require(obs.verdict);
    report.detail("label", &obs.label);
    report.detail("report", &obs);
    Ok(report)
}

fn fusion_multiplicities(f: &FusionData, w: u64, m: u32, window: usize, bound: u64) -> Result<RunReport> {
    let mut report = RunReport::new("fusion multiplicities");
    let win = multiplicity_search(f, w, m, window, bound)?;
    report.require(win.feasible && win.verify(f));
    report.detail("label", f.label());
    report.detail("window", &win);
    Ok(report)
}

fn hecke_check(op: &GybOperator, n: usize, tol: Tolerance) -> Result<RunReport> {
    let mut report = RunReport::new("hecke check");
    if n < 2 {
        return Err(Error::Input(format!("Hecke check needs n >= 2, got {n}")));
    }
    let fit = fit_quadratic(&build_generator(op, n, 1)?, tol)?;
    report.check("quadratic", fit.residual, tol.accepts(fit.residual, 1.0));
    report.detail("q", fit.q);
    report.detail("rescale", fit.rescale);
    report.detail("q_order", root_of_unity_order(fit.q, 24, tol.abs));
    Ok(report)
}

fn trace_markov(
    op: &GybOperator,
    n: usize,
    cap: usize,
    eta: EtaFormula,
    tol: Tolerance,
    seed: u64,
) -> Result<RunReport> {
    let mut report = RunReport::new("trace markov");
    let t = markov_check(op, n, cap, eta, tol, seed)?;
    report.residuals.insert("symmetry".into(), t.symmetry_residual);
    report.residuals.insert("markov".into(), t.markov_residual);
    report.residuals.insert("hecke_fit".into(), t.fit_residual);
    report.require(t.pass);
    report.detail("trace", &t);
    Ok(report)
}

fn quasi_verify(qbs: &QuasiBraidedSpace, max_n: usize, tol: Tolerance) -> Result<RunReport> {
    let mut report = RunReport::new("quasi verify");
    let q = quasi::verify(qbs, max_n, tol)?;
    report.residuals.insert("axiom1".into(), q.axiom1);
    for a in &q.axiom2 {
        report.residuals.insert(format!("axiom2_{}_{}", a.p, a.q), a.residual);
    }
    for (n, r) in &q.relations {
        report.residuals.insert(format!("braid_relations_n{n}"), *r);
    }
    report.require(q.pass);
    Ok(report)
}

/// Quotient dimensions, cross-checked against `Σ_i dim Hom(X_i, X^{⊗k})²` on the path graph.
fn tl_dims(ell: usize, n: usize) -> Result<RunReport> {
    let mut report = RunReport::new("tl dims");
    let dims = tl_quotient_dims(ell, n)?;
    let path = path_fusion(ell);
    let expected: Vec<usize> = (1..=n).map(|k| hom_dims(&path, k).iter().map(|&h| (h * h) as usize).sum()).collect();
    report.require(dims == expected);
    report.detail("ell", ell);
    report.detail("dims", &dims);
    report.detail("path_walk_dims", &expected);
    Ok(report)
}

fn closure(op: &GybOperator, n: usize, budget: usize) -> Result<RunReport> {
    let mut report = RunReport::new("image closure");
    let c = image_closure(op, n, budget)?;
    report.require(c.closed);
    report.detail("n", n);
    report.detail("closure", c);
    Ok(report)
}

fn spectrum(op: &GybOperator, n: usize, theta: f64, tol: Tolerance) -> Result<RunReport> {
    let mut report = RunReport::new("spectrum classify");
    let g1 = build_generator(op, n, 1)?;
    let class = classify_spectrum(&eigenvalues(&g1, tol)?, theta, tol)?;
    report.require(class.matches_ratio);
    report.detail("theta", theta);
    report.detail("chi", class.chi);
    report.detail("distinct", &class.distinct);
    Ok(report)
}

fn emit_r(as_printed: bool, tol: Tolerance, out: &Path) -> Result<RunReport> {
    let mut report = RunReport::new("quaternion emit-r");
    let t = if as_printed { build_r_as_printed() } else { build_r() };
    let m = emit_matrix(&t);
    write_json(out, &m)?;
    let target = gyb31_operator();
    let d = frobenius_distance(&m, target.matrix())?;
    report.check("distance_to_bundled_operator", d, tol.accepts(d, target.matrix().frobenius_norm()));
    report.detail("variant", if as_printed { "as-printed" } else { "corrected" });
    report.artifacts.push(out.display().to_string());
    Ok(report)
}

fn generate_fixtures(dir: &Path) -> Result<RunReport> {
    let mut report = RunReport::new("fixtures generate");
    fs::create_dir_all(dir)?;
    for ell in FIXTURE_ELLS {
        let f = path_fusion(ell).with_comment(format!(
            "Fusion with the generating object of SU(2) at level {}: adjacency of the path graph A_{}.",
            ell - 2,
            ell - 1
        ));
        let path = dir.join(format!("sl2-path-{ell}.json"));
        write_json(&path, &f)?;
        report.artifacts.push(path.display().to_string());
    }
    Ok(report)
}
