//! One function per subcommand. Each returns its artifact plus the checks
//! that failed, if any.

use std::f64::consts::PI;

use fuzzy_dirac::bridge::linking::demo_instance;
use fuzzy_dirac::bridge::{bridge_report, convergence_study, trend_checks, BridgeReport};
use fuzzy_dirac::dirac::{
    build_dirac, ld_seminorm_with, lell_estimate, spectrum_report, verify_suite, CheckRow, SuiteTolerances,
};
use fuzzy_dirac::liealg::{casimir_image, irrep};
use fuzzy_dirac::numlin::ComplexMatrix;
use fuzzy_dirac::spheremodel::{group_point, symbol_covariant};
use fuzzy_dirac::Exec;
use serde_json::json;

use crate::config::{CommandKind, Resolved};
use crate::output::{Artifact, Cell, Table};
use crate::CliError;

pub struct Outcome {
    pub artifact: Artifact,
    pub failures: Vec<CheckRow>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            artifact: table.into(),
            failures: Vec::new(),
        }
    }
}

pub fn run(cfg: &Resolved) -> Result<Outcome, CliError> {
    match cfg.command {
        CommandKind::Spectrum => spectrum(cfg),
        CommandKind::Verify => verify(cfg),
        CommandKind::Seminorm => seminorm(cfg),
        CommandKind::Symbol => symbol(cfg),
        CommandKind::Bridge => bridge(cfg),
        CommandKind::Converge => converge(cfg),
        CommandKind::Linking => linking(cfg),
        CommandKind::Irrep => irrep_dump(cfg),
    }
}

fn load_matrix(cfg: &Resolved) -> Result<Option<ComplexMatrix>, CliError> {
    let Some(path) = &cfg.matrix else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let a: ComplexMatrix = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("bad matrix in {}: {e}", path.display())))?;
    if !a.is_square() || a.rows() < 2 {
        return Err(CliError::Config(format!("matrix must be square of size ≥ 2, got {}x{}", a.rows(), a.cols())));
    }
    Ok(Some(a))
}

/// The matrix from `--matrix`, or the weight operator `H` of level `n`.
fn element(cfg: &Resolved) -> Result<(usize, ComplexMatrix), CliError> {
    match load_matrix(cfg)? {
        Some(a) => Ok((a.rows() - 1, a)),
        None => Ok((cfg.n, irrep(cfg.n).ladder().0.clone())),
    }
}

fn spectrum(cfg: &Resolved) -> Result<Outcome, CliError> {
    let report = spectrum_report(&build_dirac(cfg.n, cfg.sign)?)?;
    let mut table = Table::new(&["eigenvalue", "multiplicity", "predicted", "predicted_multiplicity", "deviation"]);
    for c in &report.clusters {
        table.push(vec![
            c.eigenvalue.into(),
            c.multiplicity.into(),
            c.predicted.into(),
            c.predicted_multiplicity.into(),
            c.deviation.into(),
        ]);
    }
    let mut failures = Vec::new();
    if !report.matches(cfg.tol_eig) {
        let value = if report.max_deviation > cfg.tol_eig { report.max_deviation } else { f64::INFINITY };
        failures.push(CheckRow::new("spectrum", value, cfg.tol_eig));
    }
    let artifact = Artifact {
        json: Some(serde_json::to_value(&report)?),
        table,
    };
    Ok(Outcome { artifact, failures })
}

fn check_table(rows: &[CheckRow]) -> Table {
    let mut table = Table::new(&["check", "value", "tolerance", "passed"]);
    for r in rows {
        table.push(vec![r.name.clone().into(), r.value.into(), r.tolerance.into(), r.passed.into()]);
    }
    table
}

fn verify(cfg: &Resolved) -> Result<Outcome, CliError> {
    let tol = SuiteTolerances {
        identity: cfg.tol_id,
        spectrum: cfg.tol_eig,
    };
    let rows = verify_suite(cfg.n, cfg.seed, tol)?;
    Ok(Outcome {
        artifact: check_table(&rows).into(),
        failures: rows.into_iter().filter(|r| !r.passed).collect(),
    })
}

fn seminorm(cfg: &Resolved) -> Result<Outcome, CliError> {
    let (n, a) = element(cfg)?;
    if n == 0 {
        return Err(CliError::Config("seminorms need level n ≥ 1".into()));
    }
    let minus = build_dirac(n, -1)?;
    let plus = build_dirac(n, 1)?;
    let ld = ld_seminorm_with(minus.rep(), &a, cfg.samples, Exec::default());
    let rows: Vec<(&str, f64)> = vec![
        ("lip[minus]", minus.lip_seminorm(&a)?),
        ("lip[plus]", plus.lip_seminorm(&a)?),
        ("lip_clifford_norm", minus.lip_seminorm_reduced(&a)?),
        ("ld", ld.value),
        ("lell", lell_estimate(minus.rep(), &a, cfg.samples, cfg.seed)),
    ];
    let mut table = Table::new(&["n", "quantity", "value"]);
    for (q, v) in rows {
        table.push(vec![n.into(), q.into(), v.into()]);
    }
    Ok(table.into())
}

fn symbol(cfg: &Resolved) -> Result<Outcome, CliError> {
    let (_, b) = element(cfg)?;
    let f = symbol_covariant(&b)?;
    let self_adjoint = b.hermitian_residual() <= fuzzy_dirac::numlin::TAU_HERM;
    let res = cfg.grid;
    let mut table = Table::new(&["theta", "phi", "f_re", "f_im", "grad_norm"]);
    for i in 0..res {
        for j in 0..2 * res {
            let (theta, phi) = (PI * (i as f64 + 0.5) / res as f64, PI * j as f64 / res as f64);
            let p = group_point(theta, phi);
            let v = f.eval(&p);
            let grad = if self_adjoint { Some(f.grad_norm(&p)?) } else { None };
            table.push(vec![theta.into(), phi.into(), v.re.into(), v.im.into(), grad.into()]);
        }
    }
    Ok(table.into())
}

const REPORT_COLUMNS: &[&str] = &[
    "m",
    "lambda_min",
    "gap",
    "gamma_A",
    "gamma_B",
    "delta_hat",
    "delta_surrogate",
    "length_bound",
    "covariant_margin",
    "contravariant_margin",
    "runtime_ms",
];

fn report_table(cfg: &Resolved, reports: &[BridgeReport]) -> Table {
    let mut table = Table::new(REPORT_COLUMNS);
    for r in reports {
        // Wall-clock time would break byte-identical reruns.
        let runtime = if cfg.timing { r.runtime_ms as usize } else { 0 };
        table.push(vec![
            r.m.into(),
            r.lambda_min.into(),
            r.gap.into(),
            r.gamma_a.into(),
            r.gamma_b.into(),
            r.delta_hat.into(),
            r.delta_surrogate.into(),
            r.length_bound.into(),
            r.covariant_margin.into(),
            r.contravariant_margin.into(),
            runtime.into(),
        ]);
    }
    table
}

fn bridge(cfg: &Resolved) -> Result<Outcome, CliError> {
    let report = bridge_report(cfg.m, cfg.budget, cfg.seed)?;
    Ok(report_table(cfg, &[report]).into())
}

fn converge(cfg: &Resolved) -> Result<Outcome, CliError> {
    let reports = convergence_study(cfg.m_max, cfg.budget, cfg.seed)?;
    Ok(Outcome {
        artifact: report_table(cfg, &reports).into(),
        failures: trend_checks(&reports).into_iter().filter(|r| !r.passed).collect(),
    })
}

fn linking(cfg: &Resolved) -> Result<Outcome, CliError> {
    if !cfg.demo {
        return Err(CliError::Config("only the built-in instance is available; pass --demo".into()));
    }
    let op = demo_instance(cfg.seed)?;
    let terms = op.sample_terms(cfg.pairs, cfg.seed);
    let mut table = Table::new(&["pair", "direct", "la", "bridge", "lb", "formula", "residual"]);
    let mut worst = 0.0f64;
    for (i, t) in terms.iter().enumerate() {
        let residual = (t.direct - t.formula()).abs();
        worst = worst.max(residual);
        table.push(vec![
            i.into(),
            t.direct.into(),
            t.la.into(),
            t.bridge.into(),
            t.lb.into(),
            t.formula().into(),
            residual.into(),
        ]);
    }
    let check = CheckRow::new("linking_identity", worst, cfg.tol_id);
    Ok(Outcome {
        artifact: table.into(),
        failures: if check.passed { vec![] } else { vec![check] },
    })
}

fn irrep_dump(cfg: &Resolved) -> Result<Outcome, CliError> {
    let rep = irrep(cfg.n);
    let (h, e, f) = rep.ladder();
    let g = rep.generators();
    let casimir = casimir_image(&rep);
    let named: Vec<(&str, &ComplexMatrix)> = vec![
        ("U_E1", &g[0]),
        ("U_E2", &g[1]),
        ("U_E3", &g[2]),
        ("H", h),
        ("E", e),
        ("F", f),
        ("P", rep.highest_projector()),
        ("casimir", &casimir),
    ];
    let mut table = Table::new(&["matrix", "row", "col", "re", "im"]);
    for (name, m) in &named {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let z = m[(r, c)];
                table.push(vec![Cell::from(*name), r.into(), c.into(), z.re.into(), z.im.into()]);
            }
        }
    }
    let json = json!({
        "n": cfg.n,
        "dim": rep.dim(),
        "generators": [g[0], g[1], g[2]],
        "ladder": { "h": h, "e": e, "f": f },
        "highest_projector": rep.highest_projector(),
        "casimir": casimir,
    });
    Ok(Outcome {
        artifact: Artifact { table, json: Some(json) },
        failures: Vec::new(),
    })
}
