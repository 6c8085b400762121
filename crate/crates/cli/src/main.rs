use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use thetachar::affine::{enumerate_boundary, AdmissibleDescriptor};
use thetachar::characters::{boundary_character, sl2_descriptor};
use thetachar::fusion::{sl3_descriptor, SConfig, SMatrix, Sl3Label};
use thetachar::record::OutputRecord;
use thetachar::roots::RootSystem;
use thetachar::verify::run_suite;
use thetachar::{Error, Rational};

#[derive(Parser)]
#[command(name = "thetachar", version, about = "Boundary-level affine characters as theta products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the character of one boundary admissible weight.
    Character(CharacterArgs),
    /// Run a verification suite.
    Verify {
        /// denominator, oracle, eq5, example2, positivity, smatrix, fusion, virasoro or all
        suite: String,
    },
    /// Print the full fusion tensor at a boundary level.
    FusionTable(FusionArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
#[command(group(ArgGroup::new("weight").required(true).args(["j", "beta", "p_k1_k2", "index"])))]
struct CharacterArgs {
    /// Cartan type, e.g. A1, A2, B2, G2
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    u: i64,
    /// sl2 label: Λ = t_{−jα/2}.(kΛ₀)
    #[arg(long)]
    j: Option<i64>,
    /// β in fundamental-weight coordinates, e.g. -1,1/2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Option<Vec<Rational>>,
    /// y as a word in simple reflections, 0-based, e.g. 0,1 (empty for the identity)
    #[arg(long, value_delimiter = ',', requires = "beta")]
    y: Option<Vec<usize>>,
    /// sl3 label p,k1,k2
    #[arg(long = "p-k1-k2", value_delimiter = ',', num_args = 1)]
    p_k1_k2: Option<Vec<i64>>,
    /// Position in the enumeration of boundary weights
    #[arg(long)]
    index: Option<usize>,
    /// Truncation depth above the leading term
    #[arg(long, env = "THETACHAR_ORDER", default_value_t = 10)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FusionArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    u: i64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonIntegerFusion { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed pipe (e.g. `| head`) is not an error.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure { code: 0, message: String::new() };
        }
        Failure { code: 1, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Character(a) => cmd_character(a),
        Command::Verify { suite } => cmd_verify(&suite),
        Command::FusionTable(a) => cmd_fusion_table(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn descriptor(a: &CharacterArgs) -> Result<AdmissibleDescriptor, Error> {
    let rs = RootSystem::parse(&a.algebra)?;
    thetachar::affine::boundary_level(&rs, a.u)?;
    if let Some(j) = a.j {
        if rs.rank() != 1 {
            return Err(Error::InvalidInput("--j is for A1".into()));
        }
        return sl2_descriptor(a.u, j);
    }
    if let Some(beta) = &a.beta {
        if beta.len() != rs.rank() {
            return Err(Error::InvalidInput(format!("--beta needs {} coordinates", rs.rank())));
        }
        let y = rs.weyl_from_word(a.y.as_deref().unwrap_or(&[]))?;
        return AdmissibleDescriptor::new(&rs, a.u, beta.clone(), y);
    }
    if let Some(pk) = &a.p_k1_k2 {
        let [p, k1, k2] = pk[..] else {
            return Err(Error::InvalidInput("--p-k1-k2 takes three integers".into()));
        };
        return sl3_descriptor(&rs, a.u, Sl3Label { p, k1, k2 });
    }
    let i = a.index.expect("clap enforces one selector");
    let ws = enumerate_boundary(&rs, a.u)?;
    let n = ws.len();
    ws.into_iter().nth(i).ok_or_else(|| Error::InvalidInput(format!("--index {i} out of range (0..{n})")))
}

fn cmd_character(a: CharacterArgs) -> Result<(), Failure> {
    if a.order < 1 {
        return Err(Error::InvalidInput("--order must be positive".into()).into());
    }
    let d = descriptor(&a)?;
    let ch = boundary_character(&d, &Rational::from_integer(a.order))?;
    let rec = OutputRecord::new(&d, a.order, &ch.series)?;
    let mut out = io::stdout().lock();
    match a.format {
        Format::Json => writeln!(out, "{}", rec.to_json())?,
        Format::Text => {
            writeln!(out, "{} u={} k={} Λ={:?}", rec.meta.algebra, d.u, d.level, strs(&d.lambda.finite))?;
            writeln!(out, "m_Λ = {}", ch.m_lambda)?;
            writeln!(out, "{}", ch.product_form)?;
            writeln!(out, "i^{} e^{{2πi({})t}} ×", ch.series.unit(), ch.series.t_exp())?;
            for t in &rec.terms {
                let w: Vec<String> = t.weight_coords.iter().map(|f| Rational::new(f.num, f.den).to_string()).collect();
                let q = Rational::new(t.q_num, t.q_den);
                writeln!(out, "  {:>8} q^{} e^{:?}", Rational::new(t.coeff_num, t.coeff_den), q, w)?;
            }
            if let Some(t) = ch.series.trunc() {
                writeln!(out, "  + O(deg {t})")?;
            }
        }
    }
    Ok(())
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn cmd_verify(suite: &str) -> Result<(), Failure> {
    let checks = run_suite(suite)?;
    let mut failed = 0;
    for c in &checks {
        println!("{c}");
        if !c.passed {
            failed += 1;
        }
    }
    println!("{suite}: {} of {} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(Failure { code: 1, message: String::new() });
    }
    Ok(())
}

fn cmd_fusion_table(a: FusionArgs) -> Result<(), Failure> {
    let rs: Arc<RootSystem> = RootSystem::parse(&a.algebra)?;
    let s = SMatrix::build(&rs, a.u, SConfig::default())?;
    if s.is_empty() {
        return Err(Error::InvalidU { u: a.u, reason: "no boundary weights".into() }.into());
    }
    let t = s.fusion_tensor()?;
    let labels: Vec<String> = s.weights.iter().map(|d| format!("[{}]", strs(&d.lambda.finite).join(" "))).collect();
    let mut out = io::stdout().lock();
    match a.format {
        TableFormat::Json => {
            let weights: Vec<_> = s.weights.iter().map(|d| d.to_record()).collect();
            let v = json!({ "algebra": a.algebra, "u": a.u, "labels": labels, "weights": weights, "tensor": t });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain json"))?;
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["a", "b", "c", "n"]).map_err(csv_err)?;
            for (i, ti) in t.iter().enumerate() {
                for (j, tij) in ti.iter().enumerate() {
                    for (k, n) in tij.iter().enumerate() {
                        w.write_record([&labels[i], &labels[j], &labels[k], &n.to_string()]).map_err(csv_err)?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Failure {
    Failure { code: 1, message: e.to_string() }
}
