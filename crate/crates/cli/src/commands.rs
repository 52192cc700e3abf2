use hypercat::combinatorics::{
    fine_lhs, fine_rhs, hyper_catalan, partitions_of, tubdigon_count, tubdigon_count_factorial,
};
use hypercat::series::{
    edge_layered_monomials, solve_subdigon_series, solve_tubdigon_series, subdigon_residual,
    tubdigon_residual, tubdigon_series_via_geometric, GradedSeries,
};
use hypercat::shapes::{
    enumerate_subdigons_bounded, enumerate_tubdigons_bounded, DEFAULT_SUBDIGON_EDGE_BOUND,
    DEFAULT_TUBDIGON_GRADE_BOUND,
};
use hypercat::solver::{
    convergence_profile, parse_coefficients, residual, wildberger_root, Coefficients, Number,
    PolynomialProblem,
};
use hypercat::{Error, TubType};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::output::{approx, float_string, rational_string, Report};

/// Types up to this edge grade are cross-checked by enumeration in `count`
/// unless `--bound` says otherwise.
pub const COUNT_ENUMERATION_GRADE: u64 = 12;

/// A failure that maps onto a process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Bound(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Bound(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Bound(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn parse_type(literal: &str) -> Result<TubType, Failure> {
    literal
        .parse()
        .map_err(|e| Failure::Usage(format!("bad type literal {literal:?}: {e}")))
}

fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

pub fn count(literal: &str, bound: Option<u64>) -> Outcome {
    let t = parse_type(literal)?;
    let mut report = Report::new(format!("count {literal}"));
    report.input("type", t.to_string());
    if let Some(b) = bound {
        report.input("bound", b);
    }

    let counts = t.counts();
    let grade = t.edge_grade();
    let (name, primary_route, primary) = match t.as_subdigon() {
        Some(m) => ("C", "hyper-catalan", hyper_catalan(m)),
        None => ("R", "stars-and-bars", tubdigon_count(&t)),
    };
    let mut routes = vec![(primary_route, primary.clone())];
    routes.push(("factorial", tubdigon_count_factorial(&t)));

    // Enumeration edges are E = grade + 1.
    let enumerate = match bound {
        Some(b) => {
            if counts.edges > b {
                return Err(Failure::Bound(format!(
                    "edge count {} exceeds the configured bound {b}",
                    counts.edges
                )));
            }
            true
        }
        None => grade <= COUNT_ENUMERATION_GRADE,
    };
    if enumerate {
        let n = enumerate_tubdigons_bounded(&t, grade)?.count();
        routes.push(("enumeration", BigUint::from(n)));
    }
    let agree = routes.iter().all(|(_, v)| *v == primary);

    report.result("name", name);
    report.result("value", big(&primary));
    report.result("vertices", counts.vertices);
    report.result("edges", counts.edges);
    report.result("faces", counts.faces);
    report.result("edge_grade", grade);
    report.result(
        "routes",
        routes
            .iter()
            .map(|(r, v)| json!({ "route": r, "value": v.to_string() }))
            .collect::<Vec<_>>(),
    );
    report.verdict("routes_agree", agree);

    report.line(format!("type {t}"));
    report.line(format!(
        "V = {}, E = {}, F = {}",
        counts.vertices, counts.edges, counts.faces
    ));
    report.line(format!("{name} = {primary}"));
    for (r, v) in &routes {
        report.line(format!("route {r}: {v}"));
    }
    report.line(format!("routes agree: {agree}"));
    Ok(report)
}

pub fn fine(n: u64, r: Option<u64>) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    if let Some(r) = r {
        if r == 0 || r > n {
            return Err(Failure::Usage(format!("r must lie in 1..={n}, got {r}")));
        }
    }
    partitions_of(n)?;

    let mut report = Report::new(match r {
        Some(r) => format!("fine {n} {r}"),
        None => format!("fine {n}"),
    });
    report.input("n", n);
    if let Some(r) = r {
        report.input("r", r);
        let lhs = fine_lhs(n, r)?;
        let rhs = fine_rhs(n, r);
        let holds = lhs == rhs;
        report.result("lhs", big(&lhs));
        report.result("rhs", big(&rhs));
        report.verdict("holds", holds);
        report.line(format!("{lhs} = {rhs}, {}", pass(holds)));
        return Ok(report);
    }

    let mut rows = Vec::new();
    let mut row_sum = BigUint::ZERO;
    let mut all = true;
    report.line("r\tlhs\trhs\tverdict");
    for r in 1..=n {
        let lhs = fine_lhs(n, r)?;
        let rhs = fine_rhs(n, r);
        let holds = lhs == rhs;
        all &= holds;
        report.line(format!("{r}\t{lhs}\t{rhs}\t{}", pass(holds)));
        rows.push(json!({
            "r": r,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "holds": holds,
        }));
        row_sum += lhs;
    }
    let power = BigUint::from(1u32) << (n - 1);
    let sum_holds = row_sum == power;
    report.result("rows", rows);
    report.verdict("all_rows_hold", all);
    report.result("row_sum", big(&row_sum));
    report.result("power_of_two", big(&power));
    report.verdict("row_sum_holds", sum_holds);
    report.line(format!(
        "row sum {row_sum} = 2^{} = {power}, {}",
        n - 1,
        pass(sum_holds)
    ));
    Ok(report)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Display forms for a solver value: the exact string (if any) and an
/// approximation.
trait Shown: Number {
    fn exact(&self) -> Option<String>;
    fn approx(&self) -> String;
}

impl Shown for BigRational {
    fn exact(&self) -> Option<String> {
        Some(rational_string(self))
    }
    fn approx(&self) -> String {
        approx(self)
    }
}

impl Shown for f64 {
    fn exact(&self) -> Option<String> {
        None
    }
    fn approx(&self) -> String {
        float_string(*self)
    }
}

fn shown<T: Shown>(x: &T) -> Value {
    match x.exact() {
        Some(e) => json!({ "exact": e, "approx": x.approx() }),
        None => json!({ "approx": x.approx() }),
    }
}

fn text_value<T: Shown>(x: &T) -> String {
    match x.exact() {
        Some(e) => format!("{e} (~ {})", x.approx()),
        None => x.approx(),
    }
}

pub fn solve(literals: &[String], order: u64, profile: bool) -> Outcome {
    let coeffs = parse_coefficients(literals)?;
    let mut report = Report::new(format!("solve {}", literals.join(" ")));
    report.input("coefficients", literals.to_vec());
    report.input("order", order);
    report.input("profile", profile);
    match coeffs {
        Coefficients::Exact(c) => solve_with(report, c, "exact", order, profile),
        Coefficients::Float(c) => solve_with(report, c, "float", order, profile),
    }
}

fn solve_with<T: Shown>(
    mut report: Report,
    coefficients: Vec<T>,
    arithmetic: &str,
    order: u64,
    profile: bool,
) -> Outcome {
    let p = PolynomialProblem::new(coefficients)?;
    let root = wildberger_root(&p, order);
    let res = residual(&p, &root);
    report.result("arithmetic", arithmetic);
    report.result("root", shown(&root));
    report.result("residual", shown(&res));
    report.line(format!("arithmetic: {arithmetic}"));
    report.line(format!("root: {}", text_value(&root)));
    report.line(format!("residual: {}", text_value(&res)));

    if profile {
        let prof = convergence_profile(&p, order);
        let rows = prof
            .rows
            .iter()
            .map(|row| {
                json!({
                    "order": row.order,
                    "partial_sum": shown(&row.partial_sum),
                    "residual": shown(&row.residual),
                })
            })
            .collect::<Vec<_>>();
        report.result("profile", rows);
        report.result("strictly_decreasing", prof.strictly_decreasing());
        report.line("order\tpartial_sum\tresidual");
        for row in &prof.rows {
            report.line(format!(
                "{}\t{}\t{}",
                row.order,
                row.partial_sum.approx(),
                row.residual.approx()
            ));
        }
        report.line(format!(
            "residuals strictly decreasing: {}",
            prof.strictly_decreasing()
        ));
    }
    Ok(report)
}

pub fn layers(n: u64) -> Outcome {
    let layers = edge_layered_monomials(n)?;
    let mut report = Report::new(format!("layers {n}"));
    report.input("n", n);
    let mut rows = Vec::new();
    let mut tallies = Vec::new();
    for (k, monomials) in &layers {
        let rendered: Vec<String> = monomials.iter().map(|t| t.monomial("u")).collect();
        report.line(format!(
            "e^{k} ({}): {}",
            monomials.len(),
            rendered.join(" + ")
        ));
        rows.push(json!({
            "n": k,
            "size": monomials.len(),
            "monomials": rendered,
            "types": monomials.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        }));
        tallies.push(monomials.len());
    }
    report.result("layers", rows);
    report.result("partition_counts", tallies.clone());
    report.line(format!(
        "p(n): {}",
        tallies
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    Ok(report)
}

pub fn enumerate(literal: &str, bound: Option<u64>) -> Outcome {
    let t = parse_type(literal)?;
    let mut report = Report::new(format!("enumerate {literal}"));
    report.input("type", t.to_string());
    if let Some(b) = bound {
        report.input("bound", b);
    }
    let (shapes, closed): (Vec<String>, BigUint) = match t.as_subdigon() {
        Some(m) => {
            let edges = bound.unwrap_or(DEFAULT_SUBDIGON_EDGE_BOUND);
            let shapes = enumerate_subdigons_bounded(m, edges)?;
            (shapes.map(|s| s.to_string()).collect(), hyper_catalan(m))
        }
        None => {
            let grade = bound.map_or(DEFAULT_TUBDIGON_GRADE_BOUND, |e| e.saturating_sub(1));
            let shapes = enumerate_tubdigons_bounded(&t, grade)?;
            (shapes.map(|s| s.to_string()).collect(), tubdigon_count(&t))
        }
    };
    let agree = BigUint::from(shapes.len()) == closed;
    for s in &shapes {
        report.line(s.clone());
    }
    report
        .notes
        .push(format!("{} shapes, closed form {closed}", shapes.len()));
    report.result("count", shapes.len().to_string());
    report.result("closed_form", big(&closed));
    report.verdict("count_matches", agree);
    report.result("shapes", shapes);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    Subdigon,
    Tubdigon,
}

pub fn series(kind: SeriesKind, order: u64, max_gonality: Option<u32>) -> Outcome {
    let g = max_gonality.unwrap_or(u32::try_from(order + 1).unwrap_or(u32::MAX));
    if g < 2 {
        return Err(Failure::Usage("max gonality must be at least 2".into()));
    }
    let mut report = Report::new(format!(
        "series {} --order {order}",
        match kind {
            SeriesKind::Subdigon => "subdigon",
            SeriesKind::Tubdigon => "tubdigon",
        }
    ));
    report.input("order", order);
    report.input("max_gonality", g);

    match kind {
        SeriesKind::Subdigon => {
            let s = solve_subdigon_series(order, g);
            let residual_zero = subdigon_residual(&s, g).is_empty();
            let closed = s.terms().all(|(t, c)| {
                t.as_subdigon()
                    .is_some_and(|m| *c == whole(&hyper_catalan(m)))
            });
            push_series(&mut report, "series", &s);
            report.verdict("residual_zero", residual_zero);
            report.verdict("closed_form_agrees", closed);
            report.line(format!("residual zero: {residual_zero}"));
            report.line(format!("closed form agrees: {closed}"));
        }
        SeriesKind::Tubdigon => {
            let fixed = solve_tubdigon_series(order, g);
            let geometric = tubdigon_series_via_geometric(order, g);
            let residual_zero = tubdigon_residual(&fixed, g).is_empty();
            let agree = fixed == geometric;
            push_series(&mut report, "fixed_point", &fixed);
            report.result("geometric", series_json(&geometric));
            report.verdict("residual_zero", residual_zero);
            report.verdict("routes_agree", agree);
            report.line(format!("residual zero: {residual_zero}"));
            report.line(format!("routes agree: {agree}"));
        }
    }
    Ok(report)
}

fn whole(n: &BigUint) -> BigRational {
    BigRational::from_integer(n.clone().into())
}

fn series_json(s: &GradedSeries) -> Value {
    s.terms()
        .map(|(t, c)| json!({ "type": t.to_string(), "coefficient": rational_string(c) }))
        .collect()
}

fn push_series(report: &mut Report, key: &str, s: &GradedSeries) {
    report.result(key, series_json(s));
    for line in s.to_text().lines() {
        report.line(line);
    }
}
