use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use seqring::algebra::{parse_rat, ratio};
use seqring::json::{EquationJson, OrbitStateJson, RegularFunctionJson, SystemJson, ZeroReport};
use seqring::orbit::orbit_membership_set;
use seqring::recurrence::guess_recurrence;
use seqring::sequence::{fundamental_matrix, solve_equation, start_index};
use seqring::zeros::{decompose_zero_set, pv_period_lower_bound, zero_set, Witness};
use seqring::{
    ApSet, Decomposition, Equation, ExactSeq, LinSystem, OrbitState, OrbitTrace, PeriodBound, Rat,
    Status,
};

use crate::{input, Failure, Outcome, RunConfig, SystemArg};

type CmdResult = Result<Outcome, Failure>;

fn emit<T: Serialize>(cfg: &RunConfig, report: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let out = if cfg.json {
        let mut s = serde_json::to_string_pretty(report).map_err(anyhow::Error::from)?;
        s.push('\n');
        s
    } else {
        text()
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(())
}

fn strings(values: &[Rat]) -> Vec<String> {
    values.iter().map(Rat::to_string).collect()
}

/// Set in braces; long sets are elided in the middle (JSON output always
/// lists every point).
fn set_text(s: &BTreeSet<u64>) -> String {
    const SHOWN: usize = 24;
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    if items.len() <= SHOWN {
        return format!("{{{}}}", items.join(", "));
    }
    format!(
        "{{{}, ..., {}}} ({} points)",
        items[..SHOWN - 1].join(", "),
        items.last().unwrap(),
        items.len()
    )
}

fn values_text(seq: &ExactSeq) -> String {
    let mut out = String::new();
    for (k, v) in seq.values().iter().enumerate() {
        let _ = writeln!(out, "  {}: {v}", seq.start() + k as u64);
    }
    out
}

/// Zero set of a sequence together with its decomposition.
#[derive(Serialize)]
struct ZeroAnalysis {
    zero_set: Vec<u64>,
    period: Option<u64>,
    verification_window: (u64, u64),
    #[serde(flatten)]
    report: ZeroReport,
}

impl ZeroAnalysis {
    fn text(&self) -> String {
        let zeros: BTreeSet<u64> = self.zero_set.iter().copied().collect();
        let (a, b) = self.report.zero_set_window;
        let (va, vb) = self.verification_window;
        let mut out = String::new();
        let _ = writeln!(out, "zero set on [{a}, {b}]: {}", set_text(&zeros));
        let _ = writeln!(out, "decomposition: {}", self.report.apset);
        let _ = writeln!(out, "status: {}", self.report.status);
        match self.period {
            _ if self.report.status == Status::ExactFinite => {
                let _ = writeln!(out, "no zeros on [{va}, {vb}]");
            }
            Some(p) => {
                let _ = writeln!(out, "period: {p} (verified on [{va}, {vb}])");
            }
            None => {
                let _ = writeln!(
                    out,
                    "period: none up to {} (verification window [{va}, {vb}])",
                    self.report.periods_checked
                );
            }
        }
        out
    }

    fn outcome(&self) -> Outcome {
        if self.report.status == Status::Inconclusive {
            Outcome::Inconclusive
        } else {
            Outcome::Done
        }
    }
}

/// Decomposes the zero set of `f` and checks that the result describes the
/// zeros exactly on the inspected range.
fn analyze(cfg: &RunConfig, f: &ExactSeq) -> Result<(ZeroAnalysis, Decomposition), Failure> {
    let d = decompose_zero_set(f, cfg.params())?;
    let zeros = zero_set(f);
    let (lo, hi) = d.window;
    if let Some(i) = (lo..=hi).find(|&i| d.apset.contains(i) != zeros.contains(&i)) {
        return Err(Failure::Invariant(format!(
            "decomposition {} disagrees with the zero set at index {i}",
            d.apset
        )));
    }
    let a = ZeroAnalysis {
        zero_set: zeros.into_iter().collect(),
        period: d.period,
        verification_window: d.verification,
        report: ZeroReport::new(&d, vec![]),
    };
    Ok((a, d))
}

#[derive(Serialize)]
struct SolveReport {
    equation: EquationJson,
    bell_case: bool,
    sequence: ExactSeq,
    window: (u64, u64),
    zero_set: Vec<u64>,
}

fn solve_input(cfg: &RunConfig, equation: &str, init: &str, start: u64) -> Result<(Equation, ExactSeq), Failure> {
    let eq = input::equation(equation)?;
    let init = input::rationals(init)?;
    if init.len() != eq.order() {
        return Err(Failure::Input(anyhow::anyhow!(
            "equation has order {} but {} initial values were given",
            eq.order(),
            init.len()
        )));
    }
    let f = solve_equation(&eq, &init, start, cfg.horizon)?;
    Ok((eq, f))
}

pub fn solve(cfg: &RunConfig, equation: &str, init: &str, start: u64) -> CmdResult {
    let (eq, f) = solve_input(cfg, equation, init, start)?;
    let zeros = zero_set(&f);
    let report = SolveReport {
        equation: (&eq).into(),
        bell_case: eq.is_bell_case(),
        window: f.window(),
        zero_set: zeros.iter().copied().collect(),
        sequence: f,
    };
    emit(cfg, &report, || {
        let (a, b) = report.window;
        format!(
            "equation: {eq}\nbell case: {}\nwindow: [{a}, {b}]\nzero set: {}\nvalues:\n{}",
            report.bell_case,
            set_text(&zeros),
            values_text(&report.sequence)
        )
    })?;
    Ok(Outcome::Done)
}

pub fn zeros(cfg: &RunConfig, values: &str, start: u64) -> CmdResult {
    let f = ExactSeq::new(start, input::rationals(values)?, "input");
    let (a, _) = analyze(cfg, &f)?;
    emit(cfg, &a, || a.text())?;
    Ok(a.outcome())
}

#[derive(Serialize)]
struct DecomposeReport {
    equation: EquationJson,
    bell_case: bool,
    #[serde(flatten)]
    analysis: ZeroAnalysis,
}

pub fn decompose(cfg: &RunConfig, equation: &str, init: &str, start: u64) -> CmdResult {
    let (eq, f) = solve_input(cfg, equation, init, start)?;
    let (analysis, _) = analyze(cfg, &f)?;
    let report = DecomposeReport {
        equation: (&eq).into(),
        bell_case: eq.is_bell_case(),
        analysis,
    };
    emit(cfg, &report, || {
        let guarantee = if report.bell_case {
            "bell case: true (the zero set is a finite union of progressions)"
        } else {
            "bell case: false (decomposition is empirical only)"
        };
        format!("equation: {eq}\n{guarantee}\n{}", report.analysis.text())
    })?;
    Ok(report.analysis.outcome())
}

fn orbit_start(sys: &LinSystem, state: Option<&str>) -> Result<OrbitState, Failure> {
    Ok(match state {
        Some(s) => input::state(s)?,
        None => OrbitState::identity(start_index(sys) as i64, sys.dim()),
    })
}

#[derive(Serialize)]
struct OrbitReport {
    system: SystemJson,
    state: OrbitStateJson,
    membership: Vec<u64>,
    #[serde(flatten)]
    analysis: ZeroAnalysis,
}

pub fn orbit(cfg: &RunConfig, system: &SystemArg, state: Option<&str>, subvariety: &str) -> CmdResult {
    let sys = input::system_or_equation(system.system.as_deref(), system.equation.as_deref())?;
    let x = orbit_start(&sys, state)?;
    let y = input::subvariety(subvariety, sys.dim())?;
    let members = orbit_membership_set(&sys, &x, &y, cfg.horizon)?;
    // vanishes exactly where the orbit lies on the subvariety
    let hits = ExactSeq::from_fn(x.b() as u64, cfg.horizon, "membership", |i| {
        if members.contains(&i) {
            Rat::from(0)
        } else {
            Rat::from(1)
        }
    });
    let (analysis, _) = analyze(cfg, &hits)?;
    let report = OrbitReport {
        system: (&sys).into(),
        state: (&x).into(),
        membership: members.iter().copied().collect(),
        analysis,
    };
    emit(cfg, &report, || {
        let gens: Vec<String> = y.generators().iter().map(|g| g.to_string()).collect();
        let (lo, hi) = report.analysis.report.zero_set_window;
        format!(
            "start: b = {}\nsubvariety: V({})\nmembership on [{lo}, {hi}]: {}\ndecomposition: {}\nstatus: {}\n",
            x.b(),
            gens.join(", "),
            set_text(&members),
            report.analysis.report.apset,
            report.analysis.report.status
        )
    })?;
    Ok(report.analysis.outcome())
}

#[derive(Serialize)]
struct PsiReport {
    function: RegularFunctionJson,
    state: OrbitStateJson,
    sequence: ExactSeq,
    #[serde(flatten)]
    analysis: ZeroAnalysis,
}

pub fn psi(cfg: &RunConfig, system: &SystemArg, state: Option<&str>, function: &str) -> CmdResult {
    let sys = input::system_or_equation(system.system.as_deref(), system.equation.as_deref())?;
    let x = orbit_start(&sys, state)?;
    let f = input::function(function, sys.dim())?;
    let trace = OrbitTrace::compute(&sys, &x, cfg.horizon)?;
    let seq = trace.evaluate(&f)?;
    let (analysis, _) = analyze(cfg, &seq)?;
    let report = PsiReport {
        function: (&f).into(),
        state: (&x).into(),
        sequence: seq,
        analysis,
    };
    emit(cfg, &report, || {
        format!(
            "function: {f}\nstart: b = {}\n{}values:\n{}",
            x.b(),
            report.analysis.text(),
            values_text(&report.sequence)
        )
    })?;
    Ok(report.analysis.outcome())
}

#[derive(Serialize)]
struct Relation {
    order: usize,
    degree: usize,
    /// Coefficient polynomials `c_0, ..., c_r` of `Σ c_j(i) f(i+j) = 0`.
    polys: Vec<String>,
    text: String,
    equation: EquationJson,
}

#[derive(Serialize)]
struct GuessReport {
    start: u64,
    values: usize,
    max_order: usize,
    max_degree: usize,
    relation: Option<Relation>,
}

pub fn guess(cfg: &RunConfig, values: &str, start: u64, max_order: usize, max_degree: usize) -> CmdResult {
    let vals = input::rationals(values)?;
    let found = guess_recurrence(start, &vals, max_order, max_degree)?;
    let relation = match &found {
        Some(rel) => {
            if !rel.holds_on(start, &vals) {
                return Err(Failure::Invariant(format!("guessed relation {rel} fails on the input")));
            }
            Some(Relation {
                order: rel.order(),
                degree: rel.degree,
                polys: rel.polys.iter().map(|p| p.to_string()).collect(),
                text: rel.to_string(),
                equation: (&rel.to_equation()?).into(),
            })
        }
        None => None,
    };
    let report = GuessReport {
        start,
        values: vals.len(),
        max_order,
        max_degree,
        relation,
    };
    emit(cfg, &report, || match &found {
        Some(rel) => format!(
            "relation: {rel}\norder: {}\ndegree: {}\nequation: {}\n",
            rel.order(),
            rel.degree,
            rel.to_equation().map(|e| e.to_string()).unwrap_or_default()
        ),
        None => format!("no relation of order <= {max_order} and degree <= {max_degree} fits {} values\n", vals.len()),
    })?;
    Ok(if found.is_some() {
        Outcome::Done
    } else {
        Outcome::Inconclusive
    })
}

#[derive(Serialize)]
struct BellReport {
    kind: &'static str,
    bell_case: bool,
    polynomial_entries: bool,
    det: String,
}

pub fn bell_check(cfg: &RunConfig, system: &SystemArg) -> CmdResult {
    let (kind, bell, sys) = match (&system.system, &system.equation) {
        (_, Some(e)) => {
            let eq = input::equation(e)?;
            ("equation", eq.is_bell_case(), eq.companion_matrix())
        }
        (Some(s), None) => {
            let sys = input::system(s)?;
            ("system", sys.is_bell_case(), sys)
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    if bell != sys.is_bell_case() {
        return Err(Failure::Invariant(
            "equation and companion classifications disagree".into(),
        ));
    }
    let report = BellReport {
        kind,
        bell_case: bell,
        polynomial_entries: sys.matrix().is_polynomial(),
        det: sys.det().to_string(),
    };
    emit(cfg, &report, || {
        format!(
            "{kind}: bell case {}\npolynomial entries: {}\ndet A = {}\n",
            report.bell_case, report.polynomial_entries, report.det
        )
    })?;
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct PeriodReport {
    degree_bound: u32,
    horizon: u64,
    #[serde(flatten)]
    bound: PeriodBound,
}

fn witnesses_text(ws: &[Witness]) -> String {
    ws.iter()
        .map(|w| format!("  {} vanishes on {} (period {})\n", w.label, w.apset, w.period))
        .collect()
}

pub fn period_bound(cfg: &RunConfig, system: &SystemArg) -> CmdResult {
    let sys = input::system_or_equation(system.system.as_deref(), system.equation.as_deref())?;
    let bound = pv_period_lower_bound(&sys, cfg.degree_bound, cfg.horizon, cfg.params())?;
    let report = PeriodReport {
        degree_bound: cfg.degree_bound,
        horizon: cfg.horizon,
        bound,
    };
    emit(cfg, &report, || {
        let b = &report.bound;
        let mut out = format!(
            "period lower bound: {}\ncandidates checked: {}\n",
            b.period, b.candidates_checked
        );
        if !b.witnesses.is_empty() {
            out.push_str("witnesses:\n");
            out.push_str(&witnesses_text(&b.witnesses));
        }
        if !b.inconclusive.is_empty() {
            let _ = writeln!(out, "no period found for: {}", b.inconclusive.join(", "));
        }
        out
    })?;
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
}

#[derive(Serialize)]
struct RandomSolution {
    init: Vec<String>,
    zero_set: Vec<u64>,
    status: Status,
}

#[derive(Serialize)]
struct DemoReport {
    fibonacci_30: String,
    period_bound: PeriodBound,
    random_solutions: Vec<RandomSolution>,
    checks: Vec<Check>,
}

pub fn demo(cfg: &RunConfig) -> CmdResult {
    let fib = Equation::fibonacci();
    let sys = fib.companion_matrix();
    let h = cfg.horizon;
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| {
        checks.push(Check {
            name: name.into(),
            pass,
        })
    };

    let f = solve_equation(&fib, &[Rat::from(0), Rat::from(1)], 0, h)?;
    let f30 = f.get(30).cloned().ok_or_else(|| anyhow::anyhow!("--horizon must be at least 30"))?;
    check("F(30) = 832040", f30 == parse_rat("832040")?);

    let y = fundamental_matrix(&sys, h, None)?;
    let alternating = y
        .det()
        .values()
        .iter()
        .enumerate()
        .all(|(i, v)| *v == if i % 2 == 0 { 1 } else { -1 });
    check("det Y(i) = (-1)^i", alternating);

    let bound = pv_period_lower_bound(&sys, 1, h, cfg.params())?;
    check("period lower bound is 2", bound.period == 2);
    let witness = bound
        .witnesses
        .iter()
        .any(|w| w.label == "detY + 1" && w.apset == ApSet::progression(1, 2));
    check("detY + 1 vanishes exactly on 1 + 2N", witness);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut solutions = Vec::new();
    for _ in 0..5 {
        let init = loop {
            let v: Vec<Rat> = (0..2).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect();
            if v.iter().any(|x| *x != 0) {
                break v;
            }
        };
        let s = solve_equation(&fib, &init, 0, h)?;
        let d = decompose_zero_set(&s, cfg.params())?;
        solutions.push(RandomSolution {
            init: strings(&init),
            zero_set: zero_set(&s).into_iter().collect(),
            status: d.status,
        });
    }
    check(
        "random non-zero solutions have finitely many zeros",
        solutions.iter().all(|s| s.status == Status::ExactFinite),
    );

    let report = DemoReport {
        fibonacci_30: f30.to_string(),
        period_bound: bound,
        random_solutions: solutions,
        checks,
    };
    emit(cfg, &report, || {
        let mut out = String::new();
        let _ = writeln!(out, "Fibonacci: f(i+2) = f(i+1) + f(i), horizon {h}");
        let _ = writeln!(out, "F(30) = {}", report.fibonacci_30);
        let _ = writeln!(out, "det Y(i) = (-1)^i on [0, {h}]: {alternating}");
        let _ = writeln!(out, "period lower bound (degree 1): {}", report.period_bound.period);
        out.push_str(&witnesses_text(&report.period_bound.witnesses));
        let _ = writeln!(out, "the ring's exact period is known to be 2, so the bound is attained");
        for s in &report.random_solutions {
            let zeros: BTreeSet<u64> = s.zero_set.iter().copied().collect();
            let _ = writeln!(out, "init ({}): zeros {} [{}]", s.init.join(", "), set_text(&zeros), s.status);
        }
        for c in &report.checks {
            let _ = writeln!(out, "[{}] {}", if c.pass { "ok" } else { "FAILED" }, c.name);
        }
        out
    })?;
    match report.checks.iter().find(|c| !c.pass) {
        Some(c) => Err(Failure::Invariant(format!("demo check failed: {}", c.name))),
        None => Ok(Outcome::Done),
    }
}
