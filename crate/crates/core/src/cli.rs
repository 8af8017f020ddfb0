//! The `qsym` command line.
//!
//! Every command produces a [`CommandResult`]: a status, a payload rendered
//! either as text or as JSON records, and free-form diagnostics. Output is
//! deterministic for fixed arguments.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::composition::{enumerate, Composition, Filter};
use crate::error::{Error, Result};
use crate::hopf::{coproduct, coproduct_m, kernel_basis, product, theta_coproduct, TensorElement};
use crate::linalg;
use crate::qsym::{Basis, QSymElement};
use crate::theta::{self, express_in_theta, reduce, theta_m, Ambient, ThetaElement};
use crate::verify::{self, Status, Suite, SuiteReport};

#[derive(Debug, Parser)]
#[command(name = "qsym", version, about = "Exact quasi-symmetric, peak and shifted quasi-symmetric functions")]
pub struct Cli {
    /// Emit machine-readable JSON records.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// θ_α in the M or F basis.
    Theta {
        alpha: String,
        #[arg(long, value_enum, default_value_t = BasisArg::M)]
        basis: BasisArg,
    },
    /// Coproduct of M_α, or of θ_α (structural or expanded and checked).
    Coproduct {
        alpha: String,
        #[arg(long, value_enum, default_value_t = CoproductMode::M)]
        mode: CoproductMode,
    },
    /// Product of two elements, checked against the polynomial oracle.
    Product {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = OutBasis::M)]
        basis: OutBasis,
        /// Spanning set used for θ output.
        #[arg(long, value_enum, default_value_t = AmbientArg::Pi)]
        ambient: AmbientArg,
    },
    /// Rewrite an element in another basis.
    Convert {
        f: String,
        #[arg(long, value_enum)]
        basis: OutBasis,
        #[arg(long, value_enum, default_value_t = AmbientArg::Xi)]
        ambient: AmbientArg,
    },
    /// Rewrite θ_α over internal-peak-free indices.
    Reduce {
        /// Omit together with --degree to reduce every sqs composition of that degree.
        alpha: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Basis F_α − F_Λ(α) of the kernel of Θ in degree n.
    Kernel { n: usize },
    /// Ranks of Π^n and Ξ^n for n = 1..=max-n.
    Ranks {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long)]
        with_matrix: bool,
        /// Largest degree for which matrix ranks are computed.
        #[arg(long, default_value_t = 9)]
        matrix_cap: usize,
    },
    /// Run cross-check suites.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutBasis {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "theta", alias = "θ")]
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoproductMode {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "theta-structural", alias = "theta_structural")]
    ThetaStructural,
    #[value(name = "theta-expanded", alias = "theta_expanded")]
    ThetaExpanded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AmbientArg {
    Pi,
    Xi,
}

impl From<AmbientArg> for Ambient {
    fn from(a: AmbientArg) -> Self {
        match a {
            AmbientArg::Pi => Ambient::Pi,
            AmbientArg::Xi => Ambient::Xi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Bijection,
    Hopf,
    #[value(alias = "lemma1")]
    ThetaCoproduct,
    #[value(alias = "theorem37")]
    BhSequences,
    Closure,
    Kernel,
    Reduction,
    Ranks,
    Ambiguities,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Bijection => vec![Suite::Bijection],
            SuiteArg::Hopf => vec![Suite::Hopf],
            SuiteArg::ThetaCoproduct => vec![Suite::ThetaCoproduct],
            SuiteArg::BhSequences => vec![Suite::BhSequences],
            SuiteArg::Closure => vec![Suite::Closure],
            SuiteArg::Kernel => vec![Suite::Kernel],
            SuiteArg::Reduction => vec![Suite::Reduction],
            SuiteArg::Ranks => vec![Suite::Ranks],
            SuiteArg::Ambiguities => vec![Suite::Ambiguities],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    #[serde(skip)]
    pub text: String,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(command: &str, text: String, payload: Value) -> Self {
        CommandResult {
            command: command.to_string(),
            status: Status::Ok,
            text,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn error(command: &str, err: &Error) -> Self {
        CommandResult {
            command: command.to_string(),
            status: Status::Error,
            text: String::new(),
            payload: Value::Null,
            diagnostics: vec![err.to_string()],
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.diagnostics.push(note.into());
        self
    }

    /// Text rendering: payload, then one `note:` line per diagnostic.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if self.status == Status::Error {
            for d in &self.diagnostics {
                out.push_str(&format!("error: {d}\n"));
            }
            return out;
        }
        out.push_str(&self.text);
        if !out.ends_with('\n') {
            out.push('\n');
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn element_json(f: &QSymElement) -> Result<Value> {
    Ok(serde_json::to_value(f.to_records()?).expect("serializable"))
}

fn tensor_json(t: &TensorElement) -> Result<Value> {
    Ok(serde_json::to_value(t.to_records()?).expect("serializable"))
}

fn parse_composition(s: &str) -> Result<Composition> {
    s.parse()
}

/// Runs one command; failures become `Status::Error` results.
pub fn run(command: &Command) -> CommandResult {
    let name = command_name(command);
    match dispatch(command) {
        Ok(r) => r,
        Err(e) => CommandResult::error(name, &e),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Theta { .. } => "theta",
        Command::Coproduct { .. } => "coproduct",
        Command::Product { .. } => "product",
        Command::Convert { .. } => "convert",
        Command::Reduce { .. } => "reduce",
        Command::Kernel { .. } => "kernel",
        Command::Ranks { .. } => "ranks",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(command: &Command) -> Result<CommandResult> {
    match command {
        Command::Theta { alpha, basis } => cmd_theta(&parse_composition(alpha)?, *basis),
        Command::Coproduct { alpha, mode } => cmd_coproduct(&parse_composition(alpha)?, *mode),
        Command::Product {
            f,
            g,
            basis,
            ambient,
        } => cmd_product(&f.parse()?, &g.parse()?, *basis, (*ambient).into()),
        Command::Convert { f, basis, ambient } => cmd_convert(&f.parse()?, *basis, (*ambient).into()),
        Command::Reduce { alpha, degree } => match (alpha, degree) {
            (Some(a), _) => cmd_reduce(&parse_composition(a)?),
            (None, Some(n)) => cmd_reduce_batch(*n),
            (None, None) => Err(Error::parse(0, "reduce needs a composition or --degree")),
        },
        Command::Kernel { n } => cmd_kernel(*n),
        Command::Ranks {
            max_n,
            with_matrix,
            matrix_cap,
        } => cmd_ranks(*max_n, *with_matrix, *matrix_cap),
        Command::Verify { suite, max_n } => Ok(cmd_verify(*suite, *max_n)),
    }
}

pub fn cmd_theta(alpha: &Composition, basis: BasisArg) -> Result<CommandResult> {
    let m = theta_m(alpha);
    let out = match basis {
        BasisArg::M => m,
        BasisArg::F => m.convert(Basis::F)?,
    };
    let mut result = CommandResult::ok("theta", out.render(), element_json(&out)?);
    if basis == BasisArg::F && alpha.parts() == [2, 1, 1] {
        let reference = verify::reference_theta_211();
        result = result.note(match verify::theta_211_constant() {
            Some(c) => format!("equals {c} × ({reference})"),
            None => format!("not proportional to {reference}"),
        });
    }
    Ok(result)
}

pub fn cmd_coproduct(alpha: &Composition, mode: CoproductMode) -> Result<CommandResult> {
    let result = match mode {
        CoproductMode::M => {
            let t = coproduct_m(alpha);
            CommandResult::ok("coproduct", t.render(), tensor_json(&t)?)
        }
        CoproductMode::ThetaStructural => {
            let t = theta_coproduct(alpha);
            CommandResult::ok("coproduct", t.render(), tensor_json(&t)?)
        }
        CoproductMode::ThetaExpanded => {
            let structural = theta_coproduct(alpha).to_m()?;
            let direct = coproduct(&theta_m(alpha))?;
            let mut r = CommandResult::ok("coproduct", structural.render(), tensor_json(&structural)?);
            if structural == direct {
                r = r.note("structural θ coproduct agrees with the M-basis coproduct of θ");
            } else {
                r.status = Status::Mismatch;
                r = r.note(format!("M-basis coproduct of θ is {direct}"));
            }
            r
        }
    };
    Ok(result)
}

/// Product of two elements computed both by quasi-shuffle and by multiplying
/// polynomial expansions in enough variables.
pub fn oracle_product(f: &QSymElement, g: &QSymElement) -> Result<QSymElement> {
    let fm = theta::to_monomial(f)?;
    let gm = theta::to_monomial(g)?;
    let max_deg = |e: &QSymElement| e.terms().keys().map(Composition::degree).max().unwrap_or(0);
    let vars = (max_deg(&fm) + max_deg(&gm)).max(1);
    let p = fm.expand(vars)?.mul(&gm.expand(vars)?);
    QSymElement::from_polynomial_graded(&p)
}

pub fn cmd_product(
    f: &QSymElement,
    g: &QSymElement,
    basis: OutBasis,
    ambient: Ambient,
) -> Result<CommandResult> {
    let prod = product(f, g)?;
    let oracle = oracle_product(f, g)?;
    let agrees = prod == oracle;
    let mut result = match basis {
        OutBasis::M => CommandResult::ok("product", prod.render(), element_json(&prod)?),
        OutBasis::F => {
            let x = prod.convert(Basis::F)?;
            CommandResult::ok("product", x.render(), element_json(&x)?)
        }
        OutBasis::Theta => {
            let x = express_in_theta(&prod, ambient)?;
            let q = x.to_qsym();
            let mut r = CommandResult::ok("product", x.render(), element_json(&q)?);
            if x.terms().values().any(|c| !c.is_integer()) {
                r = r.note("θ coefficients are not all integers");
            }
            r
        }
    };
    if agrees {
        result = result.note("quasi-shuffle product agrees with polynomial oracle");
    } else {
        result.status = Status::Mismatch;
        result = result.note(format!("polynomial oracle gives {oracle}"));
    }
    Ok(result)
}

pub fn cmd_convert(f: &QSymElement, basis: OutBasis, ambient: Ambient) -> Result<CommandResult> {
    let m = theta::to_monomial(f)?;
    Ok(match basis {
        OutBasis::M => CommandResult::ok("convert", m.render(), element_json(&m)?),
        OutBasis::F => {
            let x = m.convert(Basis::F)?;
            CommandResult::ok("convert", x.render(), element_json(&x)?)
        }
        OutBasis::Theta => {
            let x = express_in_theta(&m, ambient)?;
            CommandResult::ok("convert", x.render(), element_json(&x.to_qsym())?)
        }
    })
}

fn fingerprint(f: &QSymElement) -> String {
    let digest = Sha256::digest(f.render().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Certificate {
    reduced: ThetaElement,
    lhs: String,
    rhs: String,
}

fn certify(alpha: &Composition) -> Result<Certificate> {
    if !alpha.is_sqs() {
        return Err(Error::NotSqsIndex(alpha.to_string()));
    }
    let reduced = reduce(&ThetaElement::single(alpha.clone())?);
    Ok(Certificate {
        lhs: fingerprint(&theta_m(alpha)),
        rhs: fingerprint(&reduced.to_m()),
        reduced,
    })
}

pub fn cmd_reduce(alpha: &Composition) -> Result<CommandResult> {
    let cert = certify(alpha)?;
    let payload = json!({
        "element": element_json(&cert.reduced.to_qsym())?,
        "lhs_hash": cert.lhs,
        "rhs_hash": cert.rhs,
    });
    let mut r = CommandResult::ok("reduce", cert.reduced.render(), payload);
    r = r.note(format!("M-expansion sha256 prefix: θ[{alpha}] {} / reduced {}", cert.lhs, cert.rhs));
    if cert.lhs != cert.rhs {
        r.status = Status::Mismatch;
    }
    Ok(r)
}

pub fn cmd_reduce_batch(n: usize) -> Result<CommandResult> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for alpha in enumerate(n, Filter::Sqs) {
        let cert = certify(&alpha)?;
        let ok = cert.lhs == cert.rhs;
        failures += usize::from(!ok);
        text.push_str(&format!(
            "θ[{alpha}] = {}  [{}]\n",
            cert.reduced.render(),
            if ok { "ok" } else { "mismatch" }
        ));
        rows.push(json!({
            "alpha": alpha.parts(),
            "element": element_json(&cert.reduced.to_qsym())?,
            "lhs_hash": cert.lhs,
            "rhs_hash": cert.rhs,
            "ok": ok,
        }));
    }
    let mut r = CommandResult::ok("reduce", text, Value::Array(rows));
    if failures > 0 {
        r.status = Status::Mismatch;
    }
    Ok(r.note(format!("{failures} certificate mismatches")))
}

pub fn cmd_kernel(n: usize) -> Result<CommandResult> {
    if n == 0 {
        return Err(Error::ZeroDegreeRank);
    }
    let basis = kernel_basis(n);
    let rank = linalg::rank_of_elements(&basis);
    let text: String = basis.iter().map(|k| format!("{}\n", k.render())).collect();
    let payload = basis
        .iter()
        .map(element_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(CommandResult::ok("kernel", text, Value::Array(payload)).note(format!(
        "{} elements, rank {rank}, expected 2^{} - f_{} = {}",
        basis.len(),
        n - 1,
        n,
        verify::kernel_dimension(n)
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub n: usize,
    pub fib: u128,
    pub pi_rec: u128,
    pub pi_words: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_matrix: Option<usize>,
    pub agree: bool,
}

pub fn rank_rows(max_n: usize, with_matrix: bool, matrix_cap: usize) -> Result<Vec<RankRow>> {
    (1..=max_n)
        .map(|n| {
            let cap = if with_matrix { matrix_cap } else { 0 };
            let report = theta::rank_pi(n, cap)?;
            let fib = theta::fibonacci(n);
            let peak_ok = theta::rank_peak(n) as u128 == fib
                && (!with_matrix
                    || n > matrix_cap
                    || theta::matrix_rank(n, Filter::Peak) as u128 == fib);
            Ok(RankRow {
                n,
                fib,
                pi_rec: report.rank_recurrence,
                pi_words: report.rank_words,
                pi_matrix: report.rank_matrix,
                agree: report.agree && peak_ok,
            })
        })
        .collect()
}

pub fn cmd_ranks(max_n: usize, with_matrix: bool, matrix_cap: usize) -> Result<CommandResult> {
    if max_n == 0 {
        return Err(Error::ZeroDegreeRank);
    }
    let rows = rank_rows(max_n, with_matrix, matrix_cap)?;
    let mut text = format!("{:>3} {:>8} {:>8} {:>8} {:>9} {}\n", "n", "f_n", "pi_rec", "pi_words", "pi_matrix", "agree");
    for r in &rows {
        let m = r.pi_matrix.map_or("-".to_string(), |m| m.to_string());
        text.push_str(&format!(
            "{:>3} {:>8} {:>8} {:>8} {:>9} {}\n",
            r.n, r.fib, r.pi_rec, r.pi_words, m, r.agree
        ));
    }
    let mut result = CommandResult::ok("ranks", text, serde_json::to_value(&rows).expect("serializable"));
    if rows.iter().any(|r| !r.agree) {
        result.status = Status::Mismatch;
    }
    if with_matrix && max_n > matrix_cap {
        result = result.note(format!("matrix ranks computed for n <= {matrix_cap} only"));
    }
    Ok(result)
}

pub fn cmd_verify(suite: SuiteArg, max_n: Option<usize>) -> CommandResult {
    let reports: Vec<SuiteReport> = suite
        .suites()
        .into_iter()
        .map(|s| s.run(max_n.unwrap_or_else(|| s.default_max_n())))
        .collect();
    let text: String = reports.iter().map(SuiteReport::render).collect();
    let status = if reports.iter().any(|r| !r.passed()) {
        Status::Error
    } else if reports.iter().any(|r| r.status() == Status::Mismatch) {
        Status::Mismatch
    } else {
        Status::Ok
    };
    let failed: usize = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.passed())
        .count();
    let mut r = CommandResult::ok("verify", text, serde_json::to_value(&reports).expect("serializable"));
    r.status = status;
    r.note(format!("{failed} failing checks"))
}

fn configure_threads() {
    if let Some(n) = std::env::var("QSYM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a second initialization in the same process is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn exit_code(command: &Command, result: &CommandResult) -> ExitCode {
    match (result.status, command) {
        (Status::Error, Command::Verify { .. }) => ExitCode::from(1),
        (Status::Error, _) => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}

pub fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = run(&cli.command);
    let rendered = if cli.json {
        result.render_json()
    } else {
        result.render_text()
    };
    let write = match &cli.out {
        Some(path) => fs::write(path, rendered.as_bytes()),
        None if result.status == Status::Error && !cli.json => {
            std::io::stderr().write_all(rendered.as_bytes())
        }
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = write {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    exit_code(&cli.command, &result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn theta_command() {
        let r = cmd_theta(&c("2,1"), BasisArg::M).unwrap();
        assert_eq!(r.text, "4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]");
        assert_eq!(cmd_theta(&c("1"), BasisArg::M).unwrap().text, "2*M[1]");
        let f = cmd_theta(&c("2,1,1"), BasisArg::F).unwrap();
        assert!(f.text.ends_with("− 4*F[1,1,1,1]"), "{}", f.text);
        assert!(f.diagnostics[0].starts_with("equals 4 ×"));
    }

    #[test]
    fn coproduct_command() {
        let r = cmd_coproduct(&c("3,2"), CoproductMode::M).unwrap();
        assert_eq!(r.text, "1⊗M[3,2] + M[3]⊗M[2] + M[3,2]⊗1");
        let t = cmd_coproduct(&c("2"), CoproductMode::ThetaStructural).unwrap();
        assert_eq!(t.text, "1⊗θ[2] + θ[1]⊗θ[1] + θ[2]⊗1");
        assert_eq!(cmd_coproduct(&Composition::empty(), CoproductMode::M).unwrap().text, "1⊗1");
        let x = cmd_coproduct(&c("2,1,2"), CoproductMode::ThetaExpanded).unwrap();
        assert_eq!(x.status, Status::Ok);
    }

    #[test]
    fn product_command() {
        let m1: QSymElement = "M[1]".parse().unwrap();
        let r = cmd_product(&m1, &m1, OutBasis::M, Ambient::Pi).unwrap();
        assert_eq!(r.text, "M[2] + 2*M[1,1]");
        assert_eq!(r.status, Status::Ok);
        let unit: QSymElement = "M[]".parse().unwrap();
        let f: QSymElement = "3*M[2,1] − M[1]".parse().unwrap();
        let u = cmd_product(&unit, &f, OutBasis::M, Ambient::Pi).unwrap();
        assert_eq!(u.text, f.to_m().unwrap().render());
        let t2: QSymElement = "theta[2]".parse().unwrap();
        let t1: QSymElement = "theta[1]".parse().unwrap();
        let w = cmd_product(&t2, &t1, OutBasis::Theta, Ambient::Pi).unwrap();
        assert_eq!(w.status, Status::Ok);
        assert!(!w.text.is_empty());
    }

    #[test]
    fn reduce_command() {
        let r = cmd_reduce(&c("3,2")).unwrap();
        assert_eq!(r.text, "θ[3,1,1] + θ[2,1,2] − θ[2,1,1,1]");
        assert_eq!(r.status, Status::Ok);
        assert_eq!(cmd_reduce(&c("4,1")).unwrap().text, "θ[4,1]");
        assert!(matches!(cmd_reduce(&c("1,3")), Err(Error::NotSqsIndex(_))));
        let batch = cmd_reduce_batch(7).unwrap();
        assert_eq!(batch.status, Status::Ok);
    }

    #[test]
    fn ranks_command() {
        let rows = rank_rows(4, false, 9).unwrap();
        let pis: Vec<u128> = rows.iter().map(|r| r.pi_rec).collect();
        assert_eq!(pis, vec![1, 1, 2, 4]);
        assert!(rank_rows(8, true, 9).unwrap().iter().all(|r| r.agree));
    }

    #[test]
    fn errors_become_results() {
        let r = run(&Command::Theta {
            alpha: "2,x".into(),
            basis: BasisArg::M,
        });
        assert_eq!(r.status, Status::Error);
        assert!(r.render_text().starts_with("error: "));
    }
}
