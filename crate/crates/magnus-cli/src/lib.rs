//! File formats, report rendering, and the command implementations behind
//! the `magnus` binary.
//!
//! Presentation files are UTF-8 and line-oriented: `rank <n>`, `extras <l>`,
//! then one `rel <word>` line per relator, with `#` starting a comment.
//! Endomorphism files are `rank <n>` followed by n `img <word>` lines in the
//! plain generators g1..gn. All reports are canonical text: two runs on the
//! same input are byte-identical.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use magnus_core::laurent::FactorError;
use magnus_core::words::parse_word;
use magnus_core::{
    independence_rank, r_tilde, witness_family_cfk, AdmissiblePresentation, Budget,
    FreeEndomorphism, GenTable, IntMatrix, MagnusMatrix, QuotientClass, QuotientError,
    RationalFunction, Word,
};

/// CLI-level failure, carrying the process exit code contract:
/// 1 invalid input, 2 incomplete factorization on a requested invariant,
/// 3 internal assertion failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Incomplete(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Incomplete(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Incomplete(m) | CliError::Internal(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Classifies a quotient-level failure: budget/strategy exhaustion is a
/// per-invariant "incomplete" outcome, everything else is an input problem.
fn quotient_err(e: QuotientError) -> CliError {
    match e {
        QuotientError::Factor(FactorError::FactorizationIncomplete)
        | QuotientError::Factor(FactorError::BudgetExhausted) => {
            CliError::Incomplete(format!("{}", e))
        }
        other => CliError::Input(format!("{}", other)),
    }
}

// ---------------------------------------------------------------------------
// file formats

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn split_directive(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(p) => (&line[..p], line[p..].trim_start()),
        None => (line, ""),
    }
}

fn parse_count(lineno: usize, key: &str, arg: &str) -> Result<usize, CliError> {
    arg.parse().map_err(|_| {
        CliError::Input(format!("line {}: `{}` needs a nonnegative integer", lineno, key))
    })
}

/// Parses a presentation file. The relator count is not checked here: an
/// admissibility violation is a validation result, not a parse error.
pub fn parse_presentation(text: &str) -> Result<AdmissiblePresentation, CliError> {
    let mut lines = content_lines(text);
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty file: expected `rank <n>`".into()))?;
    let (key, arg) = split_directive(line);
    if key != "rank" {
        return Err(CliError::Input(format!(
            "line {}: expected `rank <n>`, found `{}`",
            lineno, key
        )));
    }
    let rank = parse_count(lineno, "rank", arg)?;
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| CliError::Input("missing `extras <l>` line".into()))?;
    let (key, arg) = split_directive(line);
    if key != "extras" {
        return Err(CliError::Input(format!(
            "line {}: expected `extras <l>`, found `{}`",
            lineno, key
        )));
    }
    let extras = parse_count(lineno, "extras", arg)?;
    let table = GenTable::presentation(rank as u32, extras as u32);
    let mut relators = Vec::new();
    for (lineno, line) in lines {
        let (key, arg) = split_directive(line);
        if key != "rel" {
            return Err(CliError::Input(format!(
                "line {}: expected `rel <word>`, found `{}`",
                lineno, key
            )));
        }
        let w = parse_word(arg, &table)
            .map_err(|e| CliError::Input(format!("line {}: {}", lineno, e)))?;
        relators.push(w);
    }
    Ok(AdmissiblePresentation::new(rank, extras, relators))
}

/// Parses an endomorphism file: `rank <n>` then exactly n `img <word>` lines.
pub fn parse_endomorphism(text: &str) -> Result<FreeEndomorphism, CliError> {
    let mut lines = content_lines(text);
    let (lineno, line) = lines
        .next()
        .ok_or_else(|| CliError::Input("empty file: expected `rank <n>`".into()))?;
    let (key, arg) = split_directive(line);
    if key != "rank" {
        return Err(CliError::Input(format!(
            "line {}: expected `rank <n>`, found `{}`",
            lineno, key
        )));
    }
    let rank = parse_count(lineno, "rank", arg)?;
    let table = GenTable::free(rank as u32);
    let mut images = Vec::new();
    for (lineno, line) in lines {
        let (key, arg) = split_directive(line);
        if key != "img" {
            return Err(CliError::Input(format!(
                "line {}: expected `img <word>`, found `{}`",
                lineno, key
            )));
        }
        let w = parse_word(arg, &table)
            .map_err(|e| CliError::Input(format!("line {}: {}", lineno, e)))?;
        images.push(w);
    }
    if images.len() != rank {
        return Err(CliError::Input(format!(
            "expected {} `img` lines, found {}",
            rank,
            images.len()
        )));
    }
    FreeEndomorphism::new(images).map_err(|e| CliError::Input(format!("{}", e)))
}

fn serialize_relator(w: &Word) -> String {
    if w.is_identity() {
        // the grammar has no empty word; spell the identity explicitly
        String::from("ip1 ip1^-1")
    } else {
        w.serialize()
    }
}

/// Writes a presentation back in the file format (parse round-trips).
pub fn serialize_presentation(p: &AdmissiblePresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rank {}", p.rank());
    let _ = writeln!(out, "extras {}", p.extras());
    for r in p.relators() {
        let _ = writeln!(out, "rel {}", serialize_relator(r));
    }
    out
}

// ---------------------------------------------------------------------------
// report rendering

fn int_matrix_line(m: &IntMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.at(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn int_matrix_block(m: &IntMatrix, indent: &str) -> String {
    (0..m.rows())
        .map(|i| {
            let row = (0..m.cols())
                .map(|j| m.at(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            format!("{}[ {} ]", indent, row)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// One invariant value or its per-invariant failure; failures never abort
/// the rest of the report.
fn value_or_note<T, F: FnOnce(&T) -> String>(
    v: &Result<T, CliError>,
    show: F,
) -> String {
    match v {
        Ok(x) => show(x),
        Err(e) => format!("<unavailable: {}>", e.message()),
    }
}

/// The `check` report: validation certificate or the enumerated failure.
pub fn check_report(p: &AdmissiblePresentation) -> Result<String, CliError> {
    let report = p
        .validate()
        .map_err(|e| CliError::Input(format!("invalid presentation: {}", e)))?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "valid admissible presentation: rank {}, extras {}",
        p.rank(),
        p.extras()
    );
    let _ = writeln!(out, "H1 free of rank {}", report.h1_rank);
    let factors = report
        .invariant_factors
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "SNF invariant factors: {}", factors);
    let _ = writeln!(out, "P_ip:\n{}", int_matrix_block(&report.p_ip, "  "));
    let _ = writeln!(out, "P_im:\n{}", int_matrix_block(&report.p_im, "  "));
    Ok(out)
}

struct Invariants {
    sigma: IntMatrix,
    magnus: MagnusMatrix,
    tau: Result<String, CliError>,
    det_r: Result<RationalFunction, CliError>,
    r_hat: Result<QuotientClass, CliError>,
    tau_tilde: Result<QuotientClass, CliError>,
}

fn compute_invariants(p: &AdmissiblePresentation, budget: u64) -> Result<Invariants, CliError> {
    p.validate()
        .map_err(|e| CliError::Input(format!("invalid presentation: {}", e)))?;
    let sigma = p.sigma().map_err(|e| CliError::Internal(format!("{}", e)))?;
    let magnus = p
        .magnus_matrix()
        .map_err(|e| CliError::Internal(format!("{}", e)))?;
    let tau = p
        .torsion()
        .map(|t| t.to_text())
        .map_err(|e| CliError::Internal(format!("{}", e)));
    let det_r = magnus
        .det()
        .map_err(|e| CliError::Internal(format!("{}", e)));
    let r_hat = magnus_core::r_hat(p, &mut Budget::new(budget)).map_err(quotient_err);
    let tau_tilde = magnus_core::tau_tilde(p, &mut Budget::new(budget)).map_err(quotient_err);
    Ok(Invariants {
        sigma,
        magnus,
        tau,
        det_r,
        r_hat,
        tau_tilde,
    })
}

fn render_invariants(inv: &Invariants, format: Format) -> String {
    let mut out = String::new();
    let r = &inv.magnus.mat;
    match format {
        Format::Machine => {
            let _ = writeln!(out, "sigma = {}", int_matrix_line(&inv.sigma));
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    let _ = writeln!(out, "magnus[{}][{}] = {}", i + 1, j + 1, r.at(i, j));
                }
            }
            let _ = writeln!(out, "tau = {}", value_or_note(&inv.tau, |t| t.clone()));
            let _ = writeln!(out, "det_r = {}", value_or_note(&inv.det_r, |d| d.to_text()));
            let _ = writeln!(out, "r_hat = {}", value_or_note(&inv.r_hat, |c| c.to_text()));
            let _ = writeln!(
                out,
                "tau_tilde = {}",
                value_or_note(&inv.tau_tilde, |c| c.to_text())
            );
        }
        Format::Text => {
            let _ = writeln!(out, "sigma:\n{}", int_matrix_block(&inv.sigma, "  "));
            let _ = writeln!(out, "Magnus matrix r:");
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    let _ = writeln!(out, "  r[{}][{}] = {}", i + 1, j + 1, r.at(i, j));
                }
            }
            let _ = writeln!(out, "tau = {}", value_or_note(&inv.tau, |t| t.clone()));
            let _ = writeln!(out, "det r = {}", value_or_note(&inv.det_r, |d| d.to_text()));
            let _ = writeln!(out, "r_hat = {}", value_or_note(&inv.r_hat, |c| c.to_text()));
            let _ = writeln!(
                out,
                "tau_tilde = {}",
                value_or_note(&inv.tau_tilde, |c| c.to_text())
            );
        }
    }
    out
}

/// The `inv` report for one presentation. A per-invariant factorization
/// failure is reported inline; the accompanying error (exit code 2) still
/// carries the report so callers can print it before exiting.
pub fn invariants_report(
    p: &AdmissiblePresentation,
    budget: u64,
    format: Format,
) -> Result<String, (CliError, String)> {
    let inv = compute_invariants(p, budget).map_err(|e| (e, String::new()))?;
    let text = render_invariants(&inv, format);
    let incomplete = matches!(inv.tau, Err(CliError::Incomplete(_)))
        || matches!(inv.r_hat, Err(CliError::Incomplete(_)))
        || matches!(inv.tau_tilde, Err(CliError::Incomplete(_)));
    if incomplete {
        Err((
            CliError::Incomplete("factorization incomplete on a requested invariant".into()),
            text,
        ))
    } else {
        Ok(text)
    }
}

/// The `endo` report: abelianization, Magnus matrix, determinant, r_tilde.
pub fn endo_report(
    phi: &FreeEndomorphism,
    budget: u64,
    format: Format,
) -> Result<String, (CliError, String)> {
    let magnus = phi.magnus();
    let det = magnus
        .det()
        .map_err(|e| (CliError::Internal(format!("{}", e)), String::new()))?;
    let rt = r_tilde(phi, &mut Budget::new(budget)).map_err(quotient_err);
    let mut out = String::new();
    let r = &magnus.mat;
    match format {
        Format::Machine => {
            let _ = writeln!(out, "sigma = {}", int_matrix_line(&magnus.sigma));
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    let _ = writeln!(out, "magnus[{}][{}] = {}", i + 1, j + 1, r.at(i, j));
                }
            }
            let _ = writeln!(out, "det_r = {}", det.to_text());
            let _ = writeln!(out, "r_tilde = {}", value_or_note(&rt, |c| c.to_text()));
        }
        Format::Text => {
            let _ = writeln!(out, "abelianization:\n{}", int_matrix_block(&magnus.sigma, "  "));
            let _ = writeln!(out, "Magnus matrix r:");
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    let _ = writeln!(out, "  r[{}][{}] = {}", i + 1, j + 1, r.at(i, j));
                }
            }
            let _ = writeln!(out, "det r = {}", det.to_text());
            let _ = writeln!(out, "r_tilde = {}", value_or_note(&rt, |c| c.to_text()));
        }
    }
    if let Err(e @ CliError::Incomplete(_)) = rt {
        return Err((e, out));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// witness families

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cfk,
    Fm,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The `witness` report: one class per line, a pairwise-distinctness matrix,
/// and the independence rank as the final line.
pub fn witness_report(family: Family, count: usize, budget: u64) -> Result<String, CliError> {
    assert!(count >= 1, "count must be at least 1");
    let (label, classes): (&str, Vec<QuotientClass>) = match family {
        Family::Cfk => {
            let classes = witness_family_cfk(count - 1, &mut Budget::new(budget))
                .map_err(quotient_err)?;
            ("cfk", classes)
        }
        Family::Fm => {
            // the irreducibility criterion needs 2m+1 prime, so take the
            // first `count` such m
            let ms: Vec<u32> = (1..).filter(|&m| is_prime(2 * m + 1)).take(count).collect();
            let mut classes = Vec::with_capacity(count);
            for m in ms {
                let phi = FreeEndomorphism::f_m(2, m)
                    .map_err(|e| CliError::Internal(format!("{}", e)))?;
                classes.push(r_tilde(&phi, &mut Budget::new(budget)).map_err(quotient_err)?);
            }
            ("fm", classes)
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "family {}: {} classes", label, classes.len());
    for (i, c) in classes.iter().enumerate() {
        let _ = writeln!(out, "class[{}] = {}", i, c.to_text());
    }
    let _ = writeln!(out, "pairwise (D distinct, ? not separated, - self):");
    for (i, a) in classes.iter().enumerate() {
        let row: String = classes
            .iter()
            .enumerate()
            .map(|(j, b)| {
                if i == j {
                    '-'
                } else if a != b {
                    'D'
                } else {
                    '?'
                }
            })
            .collect();
        let _ = writeln!(out, "  {}", row);
    }
    let rank = independence_rank(&classes).map_err(quotient_err)?;
    let _ = writeln!(out, "independence rank = {}", rank);
    Ok(out)
}

// ---------------------------------------------------------------------------
// corpus mode

/// Runs `f` over `0..n` on a bounded worker pool and returns the results in
/// input order.
pub fn run_ordered<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    assert!(workers >= 1);
    let workers = workers.min(n.max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let out = f(i);
                slots.lock().expect("worker panicked")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|o| o.expect("all indices visited"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ML: &str = "\
rank 4
extras 1
rel ip1 im3^-1 ip4 im1^-1
rel [ip1,ip3] ip2 z1 im2^-1 [im3,im1]
rel ip4 im3 ip4^-1 z1^-1
rel im3 ip3^-1 im3^-1 z1
rel im4 z1^-1 ip4^-1 z1
";

    #[test]
    fn parse_ml_fixture() {
        let p = parse_presentation(ML).unwrap();
        assert_eq!(p.rank(), 4);
        assert_eq!(p.extras(), 1);
        assert_eq!(p.relators().len(), 5);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = format!("# a homology cylinder\n\n{}# trailing\n", ML);
        assert!(parse_presentation(&text).is_ok());
    }

    #[test]
    fn deficiency_mismatch_is_validation_not_parse() {
        let mut text = String::new();
        for line in ML.lines().take(6) {
            text.push_str(line);
            text.push('\n');
        }
        let p = parse_presentation(&text).unwrap();
        assert!(p.validate().is_err());
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(
            parse_presentation("# only a comment\n"),
            Err(CliError::Input(_))
        ));
    }

    #[test]
    fn parse_error_carries_line_number() {
        let text = "rank 2\nextras 0\nrel ip1 bogus\n";
        let err = parse_presentation(text).unwrap_err();
        assert!(err.message().contains("line 3"), "{}", err.message());
    }

    #[test]
    fn presentation_roundtrip() {
        let p = parse_presentation(ML).unwrap();
        let text = serialize_presentation(&p);
        let q = parse_presentation(&text).unwrap();
        assert_eq!(p.relators(), q.relators());
    }

    #[test]
    fn endomorphism_file() {
        let phi = parse_endomorphism("rank 2\nimg g1 g2^-1 g1^-1 g2^-1 g1 g2^2\nimg g2\n").unwrap();
        assert_eq!(phi.rank(), 2);
        // abelianization [[1,1],[1,1]] is singular: not 2-connected
        let bad = parse_endomorphism("rank 2\nimg g1 g2\nimg g2 g1\n");
        assert!(matches!(bad, Err(CliError::Input(_))));
    }

    #[test]
    fn machine_report_is_deterministic() {
        let p = parse_presentation(ML).unwrap();
        let a = invariants_report(&p, 100_000, Format::Machine).unwrap();
        let b = invariants_report(&p, 100_000, Format::Machine).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("tau = "));
        assert!(a.contains("magnus[3][1] = "));
    }

    #[test]
    fn pool_preserves_order() {
        let out = run_ordered(17, 4, |i| i * i);
        assert_eq!(out, (0..17).map(|i| i * i).collect::<Vec<_>>());
    }
}
