use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use jlcalc::duality::dual_irr;
use jlcalc::gkring::{expand_u, expand_u_prime, expand_ubar, recognize_unitary, ubar_factor};
use jlcalc::global::{
    d_compatible_mw, g_inverse, local_component, s_rho_d, DiscreteSeriesLabel, GlobalAlgebra, GlobalCuspidalData,
    LocalComponent,
};
use jlcalc::lfactors::{eps_irr, l_irr};
use jlcalc::multiseg::{enumerate_multisegments, is_lower};
use jlcalc::suites::{run_all, run_suite};
use jlcalc::transfer::{ll_less, lj_std, lj_u};
use jlcalc::{qi, s_invariant, LineId, LineRegistry, Multisegment, Segment, Side, DEFAULT_SEARCH_LIMIT};

use crate::parse::{parse_multisegment, parse_params, parse_virtual};
use crate::render;
use crate::CliError;

/// Calculator for multisegments, Speh representations and the
/// Jacquet-Langlands transfer.
#[derive(Debug, Parser)]
#[command(name = "jlcalc", version)]
pub struct Cli {
    /// JSON file with the cuspidal lines (default: one unramified line `rho`).
    #[arg(long, global = true)]
    pub lines: Option<PathBuf>,
    /// Inner form: `GL_m(D)` with `dim D = d^2`.
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on support sizes for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_LIMIT)]
    pub limit: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zelevinsky-Aubert dual of an irreducible label.
    Dual { multisegment: String },
    /// Compare two labels in the order generated by elementary operations.
    Order { lower: String, upper: String },
    /// Expansion of u(Z(rho,l),k) over standard modules (with --d: of u'(T(rho',l),k)).
    ExpandU {
        /// `l=<int> k=<int>`
        #[arg(num_args = 2)]
        params: Vec<String>,
        #[arg(long, default_value = "rho")]
        line: String,
    },
    /// Expansion of u-bar(T(rho',l),k) over standard modules; needs --d.
    ExpandUbar {
        /// `l=<int> k=<int>`
        #[arg(num_args = 2)]
        params: Vec<String>,
        #[arg(long, default_value = "rho")]
        line: String,
    },
    /// Jacquet-Langlands transfer; needs --d.
    Lj {
        /// A virtual representation of the split group.
        input: Option<String>,
        /// Transfer the expansion of u(Z(rho,l),k): `--expand-u l=<int> k=<int>`.
        #[arg(long, num_args = 2, conflicts_with_all = ["input", "unit"])]
        expand_u: Option<Vec<String>>,
        /// Transfer of u(Z(rho,l),k) as a signed product of units.
        #[arg(long, num_args = 2, conflicts_with = "input")]
        unit: Option<Vec<String>>,
        #[arg(long, default_value = "rho")]
        line: String,
    },
    /// Write a label as a product of Speh units and complementary pairs.
    Recognize { multisegment: String },
    /// Formal L-function of an irreducible label.
    Lfun { multisegment: String },
    /// Formal epsilon'-factor of an irreducible label.
    Eps { multisegment: String },
    /// All labels with the cuspidal support of the given one.
    Enumerate { multisegment: String },
    /// Global data: s_rho,D, compatibility, G^-1 and local components.
    GlobalCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        cuspidal: PathBuf,
        /// Defaults to s_rho,D.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Number of partitions of an n-set into l blocks of equal size.
    CountLevi { n: u32, l: u32 },
    /// Run the built-in check suites.
    Selfcheck {
        #[arg(long)]
        suite: Option<u8>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    /// `false` when the command ran but reported failures (selfcheck).
    pub ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, ok: true }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("plain data")
        } else {
            self.text.clone()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))
}

fn registry(cli: &Cli) -> Result<LineRegistry, CliError> {
    match &cli.lines {
        None => Ok(LineRegistry::standard()),
        Some(path) => Ok(LineRegistry::from_json(&read(path)?)?),
    }
}

fn need_d(cli: &Cli) -> Result<u32, CliError> {
    match cli.d {
        Some(0) => Err(CliError::Domain("--d must be positive".into())),
        Some(d) => Ok(d),
        None => Err(CliError::Domain("this command needs --d".into())),
    }
}

fn label(cli: &Cli, reg: &LineRegistry, text: &str) -> Result<(Side, Multisegment), CliError> {
    let (side, m) = parse_multisegment(text, reg, cli.d)?;
    Ok((side.unwrap_or(Side::Split), m))
}

fn d_of(side: Side) -> u32 {
    match side {
        Side::Split => 1,
        Side::Inner { d } => d,
    }
}

fn lk(params: &[String]) -> Result<(u32, u32), CliError> {
    let pairs = parse_params(params, &["l", "k"])?;
    let get = |key: &str| {
        pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| CliError::Parse(format!("missing `{key}=`")))
    };
    Ok((get("l")?, get("k")?))
}

fn line(reg: &LineRegistry, name: &str) -> Result<LineId, CliError> {
    reg.lookup(name).map_err(|_| CliError::Parse(format!("unknown line `{name}`")))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let reg = registry(cli)?;
    match &cli.command {
        Command::Dual { multisegment } => {
            let (side, m) = label(cli, &reg, multisegment)?;
            let dual = dual_irr(&m);
            Ok(Output::new(render::multisegment(&reg, &dual, side), render::multisegment_value(&reg, &dual, side)))
        }
        Command::Order { lower, upper } => {
            let (sa, a) = label(cli, &reg, lower)?;
            let (sb, b) = label(cli, &reg, upper)?;
            if !a.is_empty() && !b.is_empty() && sa != sb {
                return Err(CliError::Parse("labels live on different sides".into()));
            }
            let le = is_lower(&a, &b);
            let mut text = format!("<=: {le}");
            let mut value = json!({ "lower_or_equal": le });
            if let Side::Inner { d } = sa.max(sb) {
                let ll = ll_less(&a, &b, d, &reg)?;
                text.push_str(&format!("\n<<: {ll}"));
                value["ll_less"] = json!(ll);
            }
            Ok(Output::new(text, value))
        }
        Command::ExpandU { params, line: name } => {
            let (l, k) = lk(params)?;
            let rho = line(&reg, name)?;
            let x = match cli.d {
                None => expand_u(l, rho, k),
                Some(_) => {
                    let d = need_d(cli)?;
                    let s = s_invariant(reg.p(rho)?, d);
                    expand_u_prime(&Segment::centered(rho, qi(0), l, s), k, d)
                }
            };
            Ok(Output::new(render::virtual_rep(&reg, &x), render::virtual_value(&reg, &x)))
        }
        Command::ExpandUbar { params, line: name } => {
            let d = need_d(cli)?;
            let (l, k) = lk(params)?;
            let rho = line(&reg, name)?;
            let sigma = Segment::centered(rho, qi(0), l, s_invariant(reg.p(rho)?, d));
            let x = expand_ubar(&sigma, k, d);
            let factors = ubar_factor(&sigma, k);
            let side = Side::Inner { d };
            let text = format!("= {}\n= {}", render::product(&reg, &factors, side), render::virtual_rep(&reg, &x));
            let value = json!({ "factors": render::product_value(&reg, &factors), "expansion": render::virtual_value(&reg, &x) });
            Ok(Output::new(text, value))
        }
        Command::Lj { input, expand_u: ex, unit, line: name } => {
            let d = need_d(cli)?;
            if let Some(params) = unit {
                let (l, k) = lk(params)?;
                let t = lj_u(l, line(&reg, name)?, k, d, &reg)?;
                return Ok(Output::new(render::signed_product(&reg, &t, d), render::signed_product_value(&reg, &t)));
            }
            let x = match (input, ex) {
                (Some(text), None) => {
                    let x = parse_virtual(text, &reg, cli.d)?;
                    if x.side() != Side::Split {
                        return Err(CliError::Parse("lj takes a split-side expression".into()));
                    }
                    x
                }
                (None, Some(params)) => {
                    let (l, k) = lk(params)?;
                    expand_u(l, line(&reg, name)?, k)
                }
                _ => return Err(CliError::Parse("lj needs an expression, --expand-u or --unit".into())),
            };
            let image = lj_std(&x, d, &reg)?;
            Ok(Output::new(render::virtual_rep(&reg, &image), render::virtual_value(&reg, &image)))
        }
        Command::Recognize { multisegment } => {
            let (side, m) = label(cli, &reg, multisegment)?;
            let found = recognize_unitary(&m, cli.limit)?;
            let text = match &found {
                Some(p) => render::product(&reg, p, side),
                None => "none".into(),
            };
            let value = json!({ "units": found.as_ref().map(|p| render::product_value(&reg, p)) });
            Ok(Output::new(text, value))
        }
        Command::Lfun { multisegment } => {
            let (side, m) = label(cli, &reg, multisegment)?;
            let l = l_irr(&m, d_of(side), &reg)?;
            let shifts: Vec<String> = l.shifts().iter().rev().map(|a| a.to_string()).collect();
            Ok(Output::new(l.to_string(), json!({ "shifts": shifts })))
        }
        Command::Eps { multisegment } => {
            let (side, m) = label(cli, &reg, multisegment)?;
            let e = eps_irr(&m, d_of(side), &reg)?;
            let terms: Vec<Value> = e
                .terms()
                .iter()
                .rev()
                .map(|p| json!({ "line": reg.name(p.line), "shift": p.exp.to_string() }))
                .collect();
            Ok(Output::new(e.render(&reg), json!({ "terms": terms })))
        }
        Command::Enumerate { multisegment } => {
            let (side, m) = label(cli, &reg, multisegment)?;
            let steps: std::collections::BTreeSet<u32> = m.iter().map(|s| s.step).collect();
            let step = match steps.len() {
                0 | 1 => steps.into_iter().next().unwrap_or(1),
                _ => return Err(CliError::Domain("lines with different steps in one support".into())),
            };
            let all = enumerate_multisegments(&m.support(), step, cli.limit)?;
            let text: Vec<String> = all.iter().map(|x| render::multisegment(&reg, x, side)).collect();
            let value: Vec<Value> = all.iter().map(|x| render::multisegment_value(&reg, x, side)).collect();
            Ok(Output::new(text.join("\n"), json!({ "count": all.len(), "labels": value })))
        }
        Command::GlobalCheck { algebra, cuspidal, k } => global_check(&reg, algebra, cuspidal, *k),
        Command::CountLevi { n, l } => {
            let count = jlcalc::global::levi_conjugate_count(*n, *l)?;
            Ok(Output::new(count.to_string(), json!({ "count": count.to_string() })))
        }
        Command::Selfcheck { suite } => {
            let reports = match suite {
                None => run_all(),
                Some(id) => vec![run_suite(*id).ok_or_else(|| CliError::Domain(format!("no suite {id}")))?],
            };
            let text: Vec<String> = reports.iter().map(|r| r.line()).collect();
            let value: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "cases": r.cases, "detail": r.detail }))
                .collect();
            let mut out = Output::new(text.join("\n"), Value::Array(value));
            out.ok = reports.iter().all(|r| r.passed);
            Ok(out)
        }
    }
}

fn global_check(reg: &LineRegistry, algebra: &Path, cuspidal: &Path, k: Option<u32>) -> Result<Output, CliError> {
    let alg = GlobalAlgebra::from_json(&read(algebra)?)?;
    let rho = GlobalCuspidalData::from_json(&read(cuspidal)?, reg)?;
    let s = s_rho_d(&rho, &alg, reg)?;
    let k = k.unwrap_or(s);
    let compatible = d_compatible_mw(&rho, k, &alg, reg)?;
    let mut lines = vec![
        format!("d = {}", alg.d()),
        format!("s_rho,D = {s}"),
        format!("MW({},{k}) D-compatible: {compatible}", rho.name),
    ];
    let mut value = json!({ "d": alg.d(), "s_rho_D": s, "k": k, "compatible": compatible });
    if compatible {
        let image = g_inverse(&DiscreteSeriesLabel::mw(&rho.name, k), &rho, &alg, reg)?;
        lines.push(format!("G^-1(MW({},{k})) = MW'({},{})", rho.name, image.rho, image.k));
        value["g_inverse"] = json!(image);
    }
    let mut locals = serde_json::Map::new();
    for place in rho.locals.keys() {
        let (text, v) = match local_component(&rho, k, place, &alg, reg)? {
            LocalComponent::Split(p) => (render::product(reg, &p, Side::Split), render::product_value(reg, &p)),
            LocalComponent::Inner(t) => {
                let d = alg.d_at(place);
                (render::signed_product(reg, &t, d), render::signed_product_value(reg, &t))
            }
        };
        lines.push(format!("{place}: {text}"));
        locals.insert(place.clone(), v);
    }
    value["locals"] = Value::Object(locals);
    Ok(Output::new(lines.join("\n"), value))
}
