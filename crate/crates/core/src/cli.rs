//! Command-line front end. Exit codes: 0 when every check passed, 1 on a
//! mathematical mismatch, 2 on bad input or configuration.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fforacle::field::{Fq, DEFAULT_MAX_Q};
use crate::fforacle::{
    additive_side, burnside_count, multiplicity_oracle, orbit_count, verify_om, ClassTable,
    Endpoint, Which, DEFAULT_BUDGET,
};
use crate::invariants::{
    dt_series, dt_via_steinberg, hua_family, kac_polynomials, total_count_series,
};
use crate::numkernel::series::box_points;
use crate::numkernel::{ratfun_json, rational_to_string, RationalFunction, Q};
use crate::parttype::{centralizer_poly, enumerate_multipartitions, multipartitions_in_box};
use crate::quivermod::{variety_dim, DimVector, Quiver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "quiverdt",
    version,
    about = "Kac polynomials and DT-invariants of quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Quiver JSON: {"vertices": n, "arrows": [[i, j], ...]}, 1-based.
    #[arg(long)]
    pub quiver: PathBuf,
    /// Dimension vector, e.g. "2,1".
    #[arg(long)]
    pub dim: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// Class sums of the generic character per type.
    Om,
    /// Character inner products against A_v(q) or DT_v(q).
    Mult,
    /// Additive (Lie algebra) side against the multiplicity oracle.
    Additive,
    /// Total counts: Exp route, product route, Burnside and orbit counts.
    Total,
    /// Both dimension expressions for every Jordan type.
    Dims,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Trivial,
    Steinberg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EndpointArg {
    Kac,
    Dt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Element,
    Class,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kac polynomials A_w for all w <= dim.
    Kac(Common),
    /// DT-invariants DT_w for all w <= dim, by two routes.
    Dt(Common),
    /// Check identities over finite fields.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum, required = true)]
        identities: Vec<Identity>,
        /// "auto" or a comma-separated list of prime powers.
        #[arg(long, default_value = "auto")]
        q: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_Q)]
        max_q: u32,
        #[arg(long, value_enum, default_value_t = WhichArg::Trivial)]
        which: WhichArg,
        #[arg(long, value_enum, default_value_t = EndpointArg::Kac)]
        endpoint: EndpointArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Class)]
        mode: ModeArg,
    },
    /// Coefficients of the DT and Hua generating series inside the box.
    Series(Common),
}

struct Loaded {
    quiver: Quiver,
    dim: DimVector,
}

fn load(common: &Common) -> Result<Loaded> {
    let text = std::fs::read_to_string(&common.quiver)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", common.quiver.display())))?;
    let quiver = Quiver::from_json(&text)?;
    let dim = DimVector::parse(&common.dim)?;
    if dim.len() != quiver.r() {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector {dim} has {} entries, quiver has {} vertices",
            dim.len(),
            quiver.r()
        )));
    }
    Ok(Loaded { quiver, dim })
}

fn label(w: &[usize]) -> String {
    DimVector(w.to_vec()).to_string()
}

fn table_lines(prefix: &str, rows: &[(Vec<usize>, RationalFunction)]) -> Vec<String> {
    let width = rows.iter().map(|(w, _)| label(w).len()).max().unwrap_or(0);
    rows.iter()
        .map(|(w, f)| format!("{prefix} {:<width$} = {f}", label(w)))
        .collect()
}

fn poly_rows(
    key: &str,
    loaded: &Loaded,
    rows: Vec<(Vec<usize>, RationalFunction)>,
    format: Format,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for line in table_lines(key, &rows) {
                writeln!(out, "{line}")?;
            }
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(w, f)| json!({"w": w, "value": ratfun_json(f)}))
                .collect();
            let doc = json!({
                "schema": 1,
                "command": key.to_lowercase(),
                "quiver": loaded.quiver.to_json(),
                "dim": loaded.dim.0,
                "entries": entries,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Check {
    identity: String,
    parameters: Value,
    lhs: String,
    rhs: String,
    pass: bool,
}

impl Check {
    fn json(&self) -> Value {
        json!({
            "identity": self.identity,
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.pass,
        })
    }

    fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!(
            "{status} {} {} lhs={} rhs={}",
            self.identity, self.parameters, self.lhs, self.rhs
        )
    }
}

fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Smallest prime power `q <= max_q` with `n | q - 1`.
pub fn auto_q(n: usize, max_q: u32) -> Result<u32> {
    (2..=max_q)
        .find(|&q| is_prime_power(q) && ((q - 1) as usize).is_multiple_of(n.max(1)))
        .ok_or(Error::InadmissibleQ { q: max_q, n })
}

fn parse_qs(spec: &str, n: usize, max_q: u32, needs_divisibility: bool) -> Result<Vec<u32>> {
    if spec.trim() == "auto" {
        return Ok(vec![auto_q(n, max_q)?]);
    }
    let mut qs = Vec::new();
    for part in spec.split(',') {
        let q: u32 = part
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("q value {part:?}: {e}")))?;
        if !is_prime_power(q) {
            return Err(Error::UnsupportedField(q));
        }
        if needs_divisibility && !((q - 1) as usize).is_multiple_of(n.max(1)) {
            return Err(Error::InadmissibleQ { q, n });
        }
        qs.push(q);
    }
    Ok(qs)
}

struct VerifyConfig {
    budget: u64,
    max_q: u32,
    which: Which,
    endpoint: Endpoint,
    mode: ModeArg,
}

fn class_table(v: &[usize], f: &Fq, cfg: &VerifyConfig) -> Result<ClassTable> {
    match cfg.mode {
        ModeArg::Element => ClassTable::by_elements(v, f, cfg.budget),
        ModeArg::Class => ClassTable::by_classes(v, f, cfg.budget),
    }
}

fn reference_value(gamma: &Quiver, v: &[usize], which: Which, q: u32) -> Result<Q> {
    let table = match which {
        Which::Trivial => kac_polynomials(gamma, v)?,
        Which::Steinberg => dt_via_steinberg(gamma, v)?,
    };
    table[v].eval(&Q::from_integer(q.into()))
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Trivial => "trivial",
        Which::Steinberg => "steinberg",
    }
}

fn run_identity(
    id: Identity,
    loaded: &Loaded,
    qs: &[u32],
    cfg: &VerifyConfig,
) -> Result<Vec<Check>> {
    let gamma = &loaded.quiver;
    let v = loaded.dim.as_slice();
    let mut checks = Vec::new();
    let field = |q: u32| Fq::with_limit(q, cfg.max_q);
    match id {
        Identity::Dims => {
            for mu in enumerate_multipartitions(v) {
                let result = variety_dim(gamma, v, &mu);
                let (lhs, pass) = match &result {
                    Ok(d) => (d.dimension.to_string(), d.dimension % 2 == 0),
                    Err(e) => (e.to_string(), false),
                };
                checks.push(Check {
                    identity: "dims".into(),
                    parameters: json!({"v": v, "mu": mu.to_string()}),
                    lhs,
                    rhs: "cartan form = orbit count, even".into(),
                    pass,
                });
            }
        }
        Identity::Om => {
            for &q in qs {
                let report = verify_om(&class_table(v, &field(q)?, cfg)?)?;
                for e in &report.entries {
                    checks.push(Check {
                        identity: "om".into(),
                        parameters: json!({"v": v, "q": q, "mode": report.mode, "omega": e.omega}),
                        lhs: e.lhs.clone(),
                        rhs: e.rhs.clone(),
                        pass: e.pass,
                    });
                }
            }
        }
        Identity::Mult => {
            for &q in qs {
                let lhs = multiplicity_oracle(gamma, &class_table(v, &field(q)?, cfg)?, cfg.which)?;
                let rhs = reference_value(gamma, v, cfg.which, q)?;
                checks.push(Check {
                    identity: format!("mult-{}", which_name(cfg.which)),
                    parameters: json!({"v": v, "q": q}),
                    lhs: rational_to_string(&lhs),
                    rhs: rational_to_string(&rhs),
                    pass: lhs == rhs,
                });
            }
        }
        Identity::Additive => {
            for &q in qs {
                let f = field(q)?;
                let lhs = additive_side(gamma, v, &f, cfg.endpoint, cfg.budget)?;
                let which = match cfg.endpoint {
                    Endpoint::Kac => Which::Trivial,
                    Endpoint::Dt => Which::Steinberg,
                };
                let rhs = multiplicity_oracle(gamma, &class_table(v, &f, cfg)?, which)?;
                checks.push(Check {
                    identity: format!(
                        "additive-{}",
                        if cfg.endpoint == Endpoint::Kac {
                            "kac"
                        } else {
                            "dt"
                        }
                    ),
                    parameters: json!({"v": v, "q": q}),
                    lhs: rational_to_string(&lhs),
                    rhs: rational_to_string(&rhs),
                    pass: lhs == rhs,
                });
            }
        }
        Identity::Total => {
            for &q in qs {
                let f = field(q)?;
                let series = total_count_series(gamma, v, q)?;
                let lhs = &series[v];
                let burnside = burnside_count(gamma, v, &f, cfg.budget)?;
                let orbits = Q::from_integer(orbit_count(gamma, v, &f, cfg.budget)?.into());
                checks.push(Check {
                    identity: "total".into(),
                    parameters: json!({"v": v, "q": q}),
                    lhs: rational_to_string(lhs),
                    rhs: format!(
                        "burnside {} orbits {}",
                        rational_to_string(&burnside),
                        rational_to_string(&orbits)
                    ),
                    pass: *lhs == burnside && burnside == orbits,
                });
            }
        }
    }
    Ok(checks)
}

fn series_doc(loaded: &Loaded) -> Result<Value> {
    let gamma = &loaded.quiver;
    let v = loaded.dim.as_slice();
    let dt = dt_series(gamma, v)?;
    let hua = hua_family(gamma);
    let mut hua_coeffs = Vec::new();
    let points = box_points(v);
    for w in &points {
        let mut acc = RationalFunction::zero();
        for mu in multipartitions_in_box(v)
            .into_iter()
            .filter(|mu| &mu.sizes() == w)
        {
            acc += &(&hua.get(&mu) / &RationalFunction::from_poly(centralizer_poly(&mu)));
        }
        hua_coeffs.push(acc);
    }
    let dt_entries: Vec<Value> = points
        .iter()
        .map(|w| json!({"w": w, "value": ratfun_json(&dt.coeff(w))}))
        .collect();
    let hua_entries: Vec<Value> = points
        .iter()
        .zip(&hua_coeffs)
        .map(|(w, c)| json!({"w": w, "value": ratfun_json(c)}))
        .collect();
    Ok(json!({
        "schema": 1,
        "command": "series",
        "quiver": gamma.to_json(),
        "dim": v,
        "dt_series": dt_entries,
        "hua_series": hua_entries,
    }))
}

fn exit_for(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_MISMATCH
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Kac(common) => {
            let loaded = load(&common)?;
            let rows: Vec<_> = kac_polynomials(&loaded.quiver, &loaded.dim)?
                .into_iter()
                .collect();
            poly_rows("A", &loaded, rows, common.format, out).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Dt(common) => {
            let loaded = load(&common)?;
            let rows: Vec<_> = dt_via_steinberg(&loaded.quiver, &loaded.dim)?
                .into_iter()
                .collect();
            poly_rows("DT", &loaded, rows, common.format, out).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Series(common) => {
            let loaded = load(&common)?;
            let doc = series_doc(&loaded)?;
            match common.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()),
                Format::Text => {
                    let mut r = Ok(());
                    for key in ["dt_series", "hua_series"] {
                        for e in doc[key].as_array().unwrap() {
                            r = r.and_then(|_| {
                                writeln!(
                                    out,
                                    "{key} {} = {}",
                                    e["w"],
                                    e["value"]["text"].as_str().unwrap()
                                )
                            });
                        }
                    }
                    r
                }
            }
            .map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            common,
            identities,
            q,
            budget,
            max_q,
            which,
            endpoint,
            mode,
        } => {
            let loaded = load(&common)?;
            if budget == 0 {
                return Err(Error::Parse("budget must be positive".into()));
            }
            let cfg = VerifyConfig {
                budget,
                max_q,
                which: match which {
                    WhichArg::Trivial => Which::Trivial,
                    WhichArg::Steinberg => Which::Steinberg,
                },
                endpoint: match endpoint {
                    EndpointArg::Kac => Endpoint::Kac,
                    EndpointArg::Dt => Endpoint::Dt,
                },
                mode,
            };
            let n = loaded.dim.delta();
            let mut checks = Vec::new();
            let mut chosen = Vec::new();
            for id in identities {
                let qs = match id {
                    Identity::Dims => Vec::new(),
                    Identity::Total => parse_qs(&q, n, max_q, false)?,
                    _ => parse_qs(&q, n, max_q, true)?,
                };
                chosen.extend(qs.iter().copied());
                checks.extend(run_identity(id, &loaded, &qs, &cfg)?);
            }
            chosen.sort_unstable();
            chosen.dedup();
            let all = checks.iter().all(|c| c.pass);
            match common.format {
                Format::Text => {
                    if q.trim() == "auto" && !chosen.is_empty() {
                        writeln!(
                            out,
                            "# q = {chosen:?} (auto: smallest prime power with {n} | q - 1)"
                        )
                        .map_err(io_err)?;
                    }
                    for c in &checks {
                        writeln!(out, "{}", c.line()).map_err(io_err)?;
                    }
                }
                Format::Json => {
                    let doc = json!({
                        "schema": 1,
                        "command": "verify",
                        "quiver": loaded.quiver.to_json(),
                        "dim": loaded.dim.0,
                        "q": chosen,
                        "q_policy": if q.trim() == "auto" { "auto" } else { "explicit" },
                        "reports": checks.iter().map(Check::json).collect::<Vec<_>>(),
                        "pass": all,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())
                        .map_err(io_err)?;
                }
            }
            Ok(if all { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::InadmissibleQ { n, .. } = e {
                let _ = writeln!(err, "hint: admissible q are prime powers with {n} | q - 1");
            }
            exit_for(&e)
        }
    }
}
