use std::io::Read;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::json::{certificate_from_json, certificate_to_string, operator_from_json, CertificateJson, OperatorJson};
use super::parse_operator;
use super::report::{Outcome, Report};
use crate::algsols::{all_algebraic_of_degree_seeded, AlgDecision, DEFAULT_BUDGET, DEFAULT_SEED};
use crate::certsearch::{
    ansatz_search, default_bounds, growth_probe, monomial_search, pseudoconstant_certificate,
    singularity_certificate, sympow_pseudoconstant_search, verify_certificate, AnsatzConfig, Certificate,
};
use crate::error::{Error, Result};
use crate::integrality::DEFAULT_GUARD;
use crate::localsolve::{classify_point, Point};
use crate::ore::{singular_support, symmetric_power, OrePoly};

#[derive(Parser, Debug)]
#[command(name = "dct", version, about = "Certify transcendental solutions of linear ODEs over Q(x)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular structure, pseudoconstant searches and the growth probe.
    Analyze(AnalyzeArgs),
    /// Pseudoconstant search on L or its symmetric powers.
    Pseudo(PseudoArgs),
    /// Monomial and ansatz search on each symmetric power.
    Sympow(SympowArgs),
    /// Orders of the symmetric powers.
    Growth(GrowthArgs),
    /// Decide whether all solutions are algebraic of a given degree.
    Algsols(AlgsolsArgs),
    /// Re-check a certificate.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Monomial,
    Ansatz,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenomBound {
    Auto,
    Fixed(usize),
}

impl FromStr for DenomBound {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(DenomBound::Auto);
        }
        s.parse().map(DenomBound::Fixed).map_err(|_| format!("expected a number or 'auto', got {s:?}"))
    }
}

#[derive(Args, Debug)]
pub struct Common {
    /// Operator as an expression, operator JSON, or @file.
    pub operator: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SearchFlags {
    #[arg(long, default_value = "auto")]
    pub denom_bound: DenomBound,
    #[arg(long, default_value_t = 2)]
    pub escalations: usize,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub nterms_guard: usize,
    /// Also write the certificate JSON, when one is found, to this file.
    #[arg(long)]
    pub certificate_out: Option<std::path::PathBuf>,
}

impl SearchFlags {
    fn config(&self, l: &OrePoly) -> Result<AnsatzConfig> {
        let denom_bounds = match self.denom_bound {
            DenomBound::Auto => None,
            DenomBound::Fixed(n) => Some(default_bounds(l)?.into_iter().map(|(xi, _)| (xi, n)).collect()),
        };
        Ok(AnsatzConfig {
            denom_bounds,
            guard: self.nterms_guard,
            max_escalations: self.escalations,
        })
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub max_s: usize,
    #[arg(long, default_value_t = 2)]
    pub max_s_ansatz: usize,
    /// Largest power for the growth probe; below 2 skips it.
    #[arg(long, default_value_t = 4)]
    pub growth_max_s: usize,
    #[command(flatten)]
    pub search: SearchFlags,
}

#[derive(Args, Debug)]
pub struct PseudoArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub max_s: usize,
    #[arg(long, value_enum, default_value = "ansatz")]
    pub method: Method,
    #[command(flatten)]
    pub search: SearchFlags,
}

#[derive(Args, Debug)]
pub struct SympowArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 2)]
    pub max_s: usize,
    #[command(flatten)]
    pub search: SearchFlags,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub max_s: usize,
    /// Take the lclm with D^2 first, so polynomial solutions are present.
    #[arg(long)]
    pub adjoin_polynomials: bool,
}

#[derive(Args, Debug)]
pub struct AlgsolsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON file, or - for stdin. A report with a certificate field also works.
    pub certificate: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Operator from an expression, operator JSON, or `@path` holding either.
pub fn read_operator(src: &str) -> Result<OrePoly> {
    let text = match src.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => src.to_string(),
    };
    let text = text.trim();
    let l = if text.starts_with('{') {
        let j: OperatorJson = serde_json::from_str(text)?;
        operator_from_json(&j)?
    } else {
        parse_operator(text)?
    };
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    Ok(l)
}

/// Runs a command; returns the rendered report and the exit code.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let cert_out = match &cli.command {
        Command::Analyze(a) => a.search.certificate_out.as_ref(),
        Command::Pseudo(a) => a.search.certificate_out.as_ref(),
        Command::Sympow(a) => a.search.certificate_out.as_ref(),
        _ => None,
    };
    let (report, format) = match &cli.command {
        Command::Analyze(a) => (analyze(a)?, a.common.format),
        Command::Pseudo(a) => (pseudo(a)?, a.common.format),
        Command::Sympow(a) => (sympow(a)?, a.common.format),
        Command::Growth(a) => (growth(a)?, a.common.format),
        Command::Algsols(a) => (algsols(a)?, a.common.format),
        Command::Verify(a) => (verify(a)?, a.format),
    };
    if let (Some(path), Some(c)) = (cert_out, &report.certificate) {
        std::fs::write(path, certificate_to_string(c) + "\n")?;
    }
    let out = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    Ok((out, report.exit_code()))
}

fn found(r: &mut Report, c: Certificate) {
    r.certificate = Some(c);
    r.outcome = Outcome::Found;
}

/// Non-Puiseux operators get a singular-structure certificate instead.
fn fallback(r: &mut Report, l: &OrePoly, e: Error) -> Result<()> {
    if let Error::NotPuiseux(m) = &e {
        if let Some(c) = singularity_certificate(l)? {
            r.notes.push(format!("search stopped: {m}"));
            found(r, c);
            return Ok(());
        }
    }
    Err(e)
}

fn ansatz_on_power(l: &OrePoly, s: usize, flags: &SearchFlags, r: &mut Report) -> Result<Option<Certificate>> {
    let ls = if s == 1 { l.clone() } else { symmetric_power(l, s)? };
    let cfg = flags.config(&ls)?;
    match ansatz_search(&ls, &cfg) {
        Ok(out) => match out.classes.into_iter().next() {
            Some(c) => Ok(Some(pseudoconstant_certificate(l, s, c.rep().clone())?)),
            None => {
                let b: Vec<String> = out.bounds.iter().map(|(xi, n)| format!("{xi}: {n}")).collect();
                r.notes.push(format!("ansatz s = {s}: none found at bounds {{{}}}", b.join(", ")));
                Ok(None)
            }
        },
        Err(Error::IrrationalPoint(m)) => {
            r.notes.push(format!("ansatz s = {s} skipped: {m}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn singularity_table(l: &OrePoly, r: &mut Report) -> Result<()> {
    let sup = singular_support(l)?;
    for xi in sup.finite_points {
        r.singularities.push(classify_point(l, &Point::Finite(xi))?);
    }
    r.singularities.push(classify_point(l, &Point::Infinity)?);
    if sup.has_irrational_singularities {
        r.notes.push("some singular points are irrational and not listed".into());
    }
    Ok(())
}

fn analyze(a: &AnalyzeArgs) -> Result<Report> {
    let l = read_operator(&a.common.operator)?;
    let mut r = Report::new("analyze", l.clone());
    singularity_table(&l, &mut r)?;
    if let Some(c) = singularity_certificate(&l)? {
        found(&mut r, c);
    }
    if r.certificate.is_none() {
        if let Some(c) = ansatz_on_power(&l, 1, &a.search, &mut r)? {
            found(&mut r, c);
        }
    }
    if r.certificate.is_none() && a.max_s >= 1 {
        match monomial_search(&l, a.max_s) {
            Ok(out) => match out.certificate {
                Some(c) => found(&mut r, c),
                None => r.notes.push(format!("monomial search: none found up to s = {}", a.max_s)),
            },
            Err(Error::IrrationalPoint(m)) => r.notes.push(format!("monomial search skipped: {m}")),
            Err(e) => return Err(e),
        }
    }
    for s in 2..=a.max_s_ansatz {
        if r.certificate.is_some() {
            break;
        }
        if let Some(c) = ansatz_on_power(&l, s, &a.search, &mut r)? {
            found(&mut r, c);
        }
    }
    if a.growth_max_s >= 2 {
        r.growth = Some(growth_probe(&l, a.growth_max_s, false)?);
    }
    Ok(r)
}

fn pseudo(a: &PseudoArgs) -> Result<Report> {
    let l = read_operator(&a.common.operator)?;
    let mut r = Report::new("pseudo", l.clone());
    let res = match a.method {
        Method::Monomial => monomial_search(&l, a.max_s).map(|out| {
            if out.certificate.is_none() {
                r.notes.push(format!("monomial search: none found up to s = {}", a.max_s));
            }
            out.certificate
        }),
        Method::Ansatz => (|| {
            for s in 1..=a.max_s {
                if let Some(c) = ansatz_on_power(&l, s, &a.search, &mut r)? {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        })(),
        Method::Both => sympow_pseudoconstant_search(&l, a.max_s, &a.search.config(&l)?).map(|out| {
            r.notes.extend(out.notes);
            out.certificate
        }),
    };
    match res {
        Ok(Some(c)) => found(&mut r, c),
        Ok(None) => {}
        Err(e) => fallback(&mut r, &l, e)?,
    }
    Ok(r)
}

fn sympow(a: &SympowArgs) -> Result<Report> {
    let l = read_operator(&a.common.operator)?;
    let mut r = Report::new("sympow", l.clone());
    match sympow_pseudoconstant_search(&l, a.max_s, &a.search.config(&l)?) {
        Ok(out) => {
            r.notes.extend(out.notes);
            match out.certificate {
                Some(c) => found(&mut r, c),
                None => r.notes.push(format!("none found up to s = {}", a.max_s)),
            }
        }
        Err(e) => fallback(&mut r, &l, e)?,
    }
    Ok(r)
}

fn growth(a: &GrowthArgs) -> Result<Report> {
    let l = read_operator(&a.common.operator)?;
    let mut r = Report::new("growth", l.clone());
    let g = growth_probe(&l, a.max_s, a.adjoin_polynomials)?;
    if g.classification != crate::certsearch::GrowthClass::Inconclusive {
        r.outcome = Outcome::Found;
    }
    if g.operator != l {
        r.notes.push(format!("measured lclm(L, D^2) = {}", g.operator));
    }
    r.notes.push("growth is a heuristic and certifies nothing".into());
    r.growth = Some(g);
    Ok(r)
}

fn algsols(a: &AlgsolsArgs) -> Result<Report> {
    let l = read_operator(&a.common.operator)?;
    let mut r = Report::new("algsols", l.clone());
    let d = all_algebraic_of_degree_seeded(&l, a.degree, a.budget, a.seed)?;
    if d != AlgDecision::InconclusiveBudget {
        r.outcome = Outcome::Found;
    }
    r.algsols = Some((a.degree, d));
    Ok(r)
}

fn parse_certificate(text: &str) -> Result<Certificate> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let v = match v.get("certificate") {
        Some(c) if v.get("kind").is_none() => c.clone(),
        _ => v,
    };
    if v.is_null() {
        return Err(Error::MalformedCertificate("report holds no certificate".into()));
    }
    let j: CertificateJson = serde_json::from_value(v)?;
    certificate_from_json(&j)
}

fn verify(a: &VerifyArgs) -> Result<Report> {
    let text = if a.certificate == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&a.certificate)?
    };
    let c = parse_certificate(&text)?;
    let ok = verify_certificate(&c)?;
    let mut r = Report::new("verify", c.operator.clone());
    r.verified = Some(ok);
    r.certificate = Some(c);
    if ok {
        r.outcome = Outcome::Found;
    }
    Ok(r)
}
