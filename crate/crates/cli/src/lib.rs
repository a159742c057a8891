//! The `quadfix` command line: subcommands, emitters and the exit-code
//! contract (0 all checks pass, 1 a check or expectation failed, 2 usage).

pub mod expect;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadfix::fixed_space::GenericFixedMatrix;
use quadfix::quadric::{
    null_basis, restricted_matrices, upper_right_matrix, witness_minor, Certification, DEFAULT_SYMBOLIC_BOUND,
};
use quadfix::report::{sweep, Check, Config, Report, SweepReport, Verifier};
use quadfix::{Partition, RingMatrix, ZPoly};

use render::{checks_text, fields_text, latex_table, math, Ruled};

#[derive(Parser, Debug)]
#[command(
    name = "quadfix",
    version,
    about = "Symmetric matrices fixed by a unipotent operator of given Jordan type"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Name variables a, b, c, … (at most 26 variables).
    #[arg(long, global = true)]
    letters: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random specializations per randomized check.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Largest n (or factor size) expanded symbolically.
    #[arg(long, global = true, default_value_t = DEFAULT_SYMBOLIC_BOUND)]
    symbolic_bound: usize,
    /// Worker threads for `sweep`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parallel: u64,
    /// JSON file whose values must all appear in the output.
    #[arg(long, global = true, value_name = "FILE")]
    expect: Option<PathBuf>,
    /// Record per-check wall-clock time (output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generic element M.
    Generic {
        partition: Partition,
        /// Also print M' (last d_p columns of each block).
        #[arg(long)]
        m_prime: bool,
        /// Also print M'' (M' restricted to the first d_p rows of each block).
        #[arg(long)]
        m_double_prime: bool,
        /// Also print the matrix P of upper-right block corners.
        #[arg(long)]
        corner: bool,
    },
    /// Dimensions of the fixed space and of its projectivization.
    Dim { partition: Partition },
    /// Determinant as a product of leading minors of P.
    Det { partition: Partition },
    /// Generic corank against the degeneracy number.
    Rank { partition: Partition },
    /// Symbolic null vectors of M.
    Nullspace { partition: Partition },
    /// A nonzero minor of size n - d.
    Minor { partition: Partition },
    /// Every check for one partition.
    Verify { partition: Partition },
    /// Every check for every partition of n.
    Sweep {
        #[arg(long)]
        n: usize,
    },
}

struct Output {
    value: Value,
    json: String,
    text: String,
    latex: String,
    failures: Vec<String>,
}

impl Output {
    fn from_report(report: &Report, text: String, latex: String) -> Self {
        Output {
            value: serde_json::to_value(report).expect("report serializes"),
            json: serde_json::to_string_pretty(report).expect("report serializes"),
            text,
            latex,
            failures: report.failures().into_iter().map(String::from).collect(),
        }
    }

    fn from_value(value: Value, text: String, latex: String, failures: Vec<String>) -> Self {
        Output {
            json: serde_json::to_string_pretty(&value).expect("value serializes"),
            value,
            text,
            latex,
            failures,
        }
    }
}

/// Parse `args` (including the program name), run the command and write
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let output = match execute(&cli) {
        Ok(output) => output,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut failed = !output.failures.is_empty();
    for name in &output.failures {
        let _ = writeln!(err, "check failed: {name}");
    }
    if let Some(path) = &cli.opts.expect {
        match expect::load(path) {
            Ok(expected) => {
                for m in expect::compare(&expected, &output.value) {
                    let _ = writeln!(err, "expectation failed: {m}");
                    failed = true;
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
        }
    }
    let body = match cli.opts.format {
        Format::Text => output.text,
        Format::Json => output.json,
        Format::Latex => output.latex,
    };
    let _ = writeln!(out, "{}", body.trim_end());
    i32::from(failed)
}

fn config(opts: &Options) -> Config {
    Config {
        seed: opts.seed,
        trials: opts.trials as usize,
        symbolic_bound: opts.symbolic_bound,
        letters: opts.letters,
        timings: opts.timings,
        ..Config::default()
    }
}

fn execute(cli: &Cli) -> quadfix::Result<Output> {
    let cfg = config(&cli.opts);
    match &cli.command {
        Command::Generic {
            partition,
            m_prime,
            m_double_prime,
            corner,
        } => generic(&cfg.generic(partition)?, *m_prime, *m_double_prime, *corner),
        Command::Dim { partition } => {
            let report = Verifier::new(partition, &cfg)?.report(&[Check::Dimension, Check::Span]);
            let fields = vec![
                ("partition", report.partition.to_string()),
                ("n", report.n.to_string()),
                ("dim_S", report.dim_s.to_string()),
                ("dim_Q", report.dim_q.to_string()),
            ];
            Ok(report_output(&report, fields))
        }
        Command::Det { partition } => {
            let report = Verifier::new(partition, &cfg)?.report(&[Check::DetFormula, Check::Vanishing]);
            let sizes = partition.conjugate().parts().to_vec();
            let mut fields = vec![("partition", report.partition.to_string()), ("det", shown(&report.det))];
            let labels: Vec<String> = sizes
                .iter()
                .enumerate()
                .map(|(i, s)| format!("det P_{} ({s}x{s})", i + 1))
                .collect();
            for (label, factor) in labels.iter().zip(&report.det_factors) {
                fields.push((label.as_str(), shown(factor)));
            }
            Ok(report_output(&report, fields))
        }
        Command::Rank { partition } => {
            let report = Verifier::new(partition, &cfg)?.report(&[Check::CorankRandom, Check::CorankExact]);
            let fields = vec![
                ("partition", report.partition.to_string()),
                ("n", report.n.to_string()),
                ("degeneracy", report.degeneracy.to_string()),
                ("corank", report.corank.to_string()),
                ("rank", (report.n - report.corank).to_string()),
            ];
            Ok(report_output(&report, fields))
        }
        Command::Nullspace { partition } => nullspace(partition, &cfg),
        Command::Minor { partition } => minor(partition, &cfg),
        Command::Verify { partition } => {
            let report = quadfix::verify(partition, &cfg)?;
            let fields = summary_fields(&report);
            Ok(report_output(&report, fields))
        }
        Command::Sweep { n } => {
            let threads = (cli.opts.parallel > 1).then_some(cli.opts.parallel as usize);
            Ok(sweep_output(&sweep(*n, &cfg, threads)?))
        }
    }
}

fn shown(s: &Option<String>) -> String {
    s.clone().unwrap_or_else(|| "(not expanded)".to_string())
}

fn summary_fields(report: &Report) -> Vec<(&'static str, String)> {
    vec![
        ("partition", report.partition.to_string()),
        ("n", report.n.to_string()),
        ("dim_S", report.dim_s.to_string()),
        ("dim_Q", report.dim_q.to_string()),
        ("degeneracy", report.degeneracy.to_string()),
        ("corank", report.corank.to_string()),
        ("det", shown(&report.det)),
    ]
}

fn report_output(report: &Report, fields: Vec<(&str, String)>) -> Output {
    let mut text = fields_text(&fields);
    if !report.checks.is_empty() {
        text.push_str("checks\n");
        text.push_str(&checks_text(&report.checks));
    }
    let latex_fields: Vec<(&str, String)> = fields
        .iter()
        .map(|(k, v)| {
            let cell = if v.starts_with('(') || v.parse::<i64>().is_ok() || v.is_empty() {
                format!("${v}$")
            } else {
                math(v)
            };
            (*k, cell)
        })
        .collect();
    Output::from_report(report, text, latex_table(&latex_fields, &report.checks))
}

fn cells(m: &RingMatrix<ZPoly>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

/// Rules between consecutive runs of equal block labels.
fn rules_between(labels: &[usize]) -> Vec<usize> {
    labels
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, _)| i)
        .collect()
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn generic(g: &GenericFixedMatrix, m_prime: bool, m_double_prime: bool, corner: bool) -> quadfix::Result<Output> {
    let grid = g.grid();
    let rules: Vec<usize> = grid.rule_after().collect();
    let main = Ruled {
        cells: cells(g.matrix()),
        row_rules: rules.clone(),
        col_rules: rules,
    };
    let mut value = json!({
        "partition": g.partition(),
        "n": g.n(),
        "variables": g.catalog().names(),
        "matrix": main.cells,
    });
    let mut text = format!(
        "M for {} ({}x{}, {} variables)\n{}",
        g.partition(),
        g.n(),
        g.n(),
        g.num_variables(),
        main.text()
    );
    let mut latex = format!("M = {}\n", main.latex());

    if m_prime || m_double_prime {
        let r = restricted_matrices(g);
        let col_blocks: Vec<usize> = r.columns.iter().map(|&c| grid.block_of(c)).collect();
        let row_blocks: Vec<usize> = r.rows.iter().map(|&c| grid.block_of(c)).collect();
        if m_prime {
            let m = Ruled {
                cells: cells(&r.m_prime),
                row_rules: grid.rule_after().collect(),
                col_rules: rules_between(&col_blocks),
            };
            value["m_prime"] = json!({"columns": one_based(&r.columns), "matrix": m.cells});
            text.push_str(&format!("\nM' (columns {:?})\n{}", one_based(&r.columns), m.text()));
            latex.push_str(&format!("M' = {}\n", m.latex()));
        }
        if m_double_prime {
            let m = Ruled {
                cells: cells(&r.m_double_prime),
                row_rules: rules_between(&row_blocks),
                col_rules: rules_between(&col_blocks),
            };
            value["m_double_prime"] = json!({
                "rows": one_based(&r.rows),
                "columns": one_based(&r.columns),
                "matrix": m.cells,
            });
            text.push_str(&format!(
                "\nM'' (rows {:?}, columns {:?})\n{}",
                one_based(&r.rows),
                one_based(&r.columns),
                m.text()
            ));
            latex.push_str(&format!("M'' = {}\n", m.latex()));
        }
    }
    if corner {
        let p = Ruled::plain(cells(&upper_right_matrix(g)));
        value["corner"] = json!(p.cells);
        text.push_str(&format!("\nP\n{}", p.text()));
        latex.push_str(&format!("P = {}\n", p.latex()));
    }
    Ok(Output::from_value(value, text, latex, Vec::new()))
}

fn nullspace(partition: &Partition, cfg: &Config) -> quadfix::Result<Output> {
    let verifier = Verifier::new(partition, cfg)?;
    let g = verifier.generic();
    let vectors: Vec<Vec<String>> = null_basis(g)
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    let check = verifier.run(Check::NullWitness);
    let checks = [(Check::NullWitness.name().to_string(), check)].into_iter().collect();

    let mut text = format!("{} null vectors of M for {}\n", vectors.len(), partition);
    for (k, v) in vectors.iter().enumerate() {
        let entries: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| x.as_str() != "0")
            .map(|(i, x)| format!("{}: {x}", i + 1))
            .collect();
        text.push_str(&format!("  v{} = {{{}}}\n", k + 1, entries.join(", ")));
    }
    text.push_str("checks\n");
    text.push_str(&checks_text(&checks));
    let columns: Vec<Vec<String>> = (0..g.n())
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let latex = if vectors.is_empty() {
        "\\text{no null vectors}".to_string()
    } else {
        Ruled::plain(columns).latex()
    };
    let failures = failed_names(&checks);
    let value = json!({
        "partition": partition,
        "n": g.n(),
        "corank": vectors.len(),
        "null_vectors": vectors,
        "checks": checks,
    });
    Ok(Output::from_value(value, text, latex, failures))
}

fn minor(partition: &Partition, cfg: &Config) -> quadfix::Result<Output> {
    let verifier = Verifier::new(partition, cfg)?;
    let g = verifier.generic();
    let w = witness_minor(g, cfg.symbolic_bound, cfg.seed, cfg.trials)?;
    let check = verifier.run(Check::MinorWitness);
    let checks = [(Check::MinorWitness.name().to_string(), check)].into_iter().collect();
    let certification = match w.certification {
        Certification::Symbolic => "symbolic",
        Certification::Specialization => "specialization",
    };
    let transversal = w.transversal_product.as_ref().map(ToString::to_string);
    let minor_det = w.minor_det.as_ref().map(ToString::to_string);
    let fields = vec![
        ("partition", partition.to_string()),
        ("size", w.size().to_string()),
        ("rows", format!("{:?}", one_based(&w.rows))),
        ("cols", format!("{:?}", one_based(&w.cols))),
        ("certification", certification.to_string()),
        ("from construction", w.from_construction.to_string()),
        ("transversal product", shown(&transversal)),
        ("minor", shown(&minor_det)),
    ];
    let mut text = fields_text(&fields);
    text.push_str("checks\n");
    text.push_str(&checks_text(&checks));
    let latex_fields: Vec<(&str, String)> = fields
        .iter()
        .map(|(k, v)| (*k, format!("${}$", render::latex_poly(v))))
        .collect();
    let latex = latex_table(&latex_fields, &checks);
    let failures = failed_names(&checks);
    let value = json!({
        "partition": partition,
        "n": g.n(),
        "size": w.size(),
        "rows": one_based(&w.rows),
        "cols": one_based(&w.cols),
        "certification": certification,
        "from_construction": w.from_construction,
        "transversal_product": transversal,
        "minor_det": minor_det,
        "checks": checks,
    });
    Ok(Output::from_value(value, text, latex, failures))
}

fn failed_names(checks: &std::collections::BTreeMap<String, quadfix::CheckResult>) -> Vec<String> {
    checks
        .iter()
        .filter(|(_, c)| c.status == quadfix::Status::Fail)
        .map(|(k, _)| k.clone())
        .collect()
}

fn sweep_output(s: &SweepReport) -> Output {
    let mut rows = vec![vec![
        "partition".to_string(),
        "dim_S".to_string(),
        "dim_Q".to_string(),
        "d".to_string(),
        "corank".to_string(),
        "checks".to_string(),
    ]];
    for r in &s.reports {
        let failures = r.failures();
        rows.push(vec![
            r.partition.to_string(),
            r.dim_s.to_string(),
            r.dim_q.to_string(),
            r.degeneracy.to_string(),
            r.corank.to_string(),
            if failures.is_empty() {
                "pass".to_string()
            } else {
                format!("FAIL {}", failures.join(","))
            },
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut text = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        text.push_str(line.join("  ").trim_end());
        text.push('\n');
    }
    text.push_str(&format!(
        "{} partitions of {}, {} failed\n",
        s.partitions, s.n, s.failed
    ));

    let mut latex = String::from("\\begin{tabular}{lrrrrl}\n");
    latex.push_str("$\\lambda$ & $\\dim S$ & $\\dim Q$ & $d$ & corank & checks \\\\\n\\hline\n");
    for r in &s.reports {
        latex.push_str(&format!(
            "${}$ & {} & {} & {} & {} & {} \\\\\n",
            r.partition,
            r.dim_s,
            r.dim_q,
            r.degeneracy,
            r.corank,
            if r.passed() { "pass" } else { "FAIL" }
        ));
    }
    latex.push_str("\\end{tabular}");

    let failures = s
        .reports
        .iter()
        .flat_map(|r| r.failures().into_iter().map(move |c| format!("{} {c}", r.partition)))
        .collect();
    Output {
        value: serde_json::to_value(s).expect("sweep serializes"),
        json: serde_json::to_string_pretty(s).expect("sweep serializes"),
        text,
        latex,
        failures,
    }
}
