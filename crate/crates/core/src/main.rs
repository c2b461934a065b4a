use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use a2web::exactmath::{format_rational, ExactMatrix, LaurentPoly};
use a2web::immanants::immanant_table;
use a2web::labelings::{enumerate_labelings, qsize, BoundaryLabeling};
use a2web::minors::{decompose_triple, MinorTriple};
use a2web::networks::PlanarNetwork;
use a2web::perm::Perm;
use a2web::spider::{parse_expression, reduce, Spider, WebCombo};
use a2web::tlbridge::{bridge_report, ThirdMinor};
use a2web::verify::{run_suite, Suite, SuiteConfig};
use a2web::webcore::Web;
use a2web::{Error, Result};

/// Exact A2-web calculus: spider reduction, labelings and web immanants.
#[derive(Parser)]
#[command(name = "a2web", version)]
struct Cli {
    /// Print Laurent polynomials in q instead of values at q = 1.
    #[arg(long, global = true)]
    q: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a product expression (e.g. "E1*E2*E1") or generator word.
    Reduce {
        #[arg(long)]
        n: usize,
        /// Expression over E<i>, D<i>, Id, q, t and integers.
        expr: Option<String>,
        /// Generator word such as 1,2,1 (alternative to EXPR).
        #[arg(long, value_parser = parse_list)]
        word: Option<IndexList>,
        /// Include the reduction tree (word input only).
        #[arg(long, requires = "word")]
        trace: bool,
    },
    /// Consistent labelings of a generator product.
    Labelings {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        word: IndexList,
        /// Boundary word "sources:sinks", e.g. "1,2,3:3,2,1".
        #[arg(long)]
        boundary: Option<String>,
        /// List the edge labels of every labeling.
        #[arg(long)]
        list: bool,
    },
    /// Web immanant table or values on a matrix.
    Immanants {
        #[arg(long)]
        n: usize,
        /// JSON matrix: rows of integers or "p/q" strings.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Print every coefficient f_D(w).
        #[arg(long)]
        table: bool,
    },
    /// Expand a product of three complementary minors.
    Decompose(DecomposeArgs),
    /// Expand a TL immanant times a minor in web immanants.
    Bridge {
        #[arg(long)]
        n: usize,
        /// 321-avoiding permutation in one-line notation on n - |I3| letters.
        #[arg(long)]
        w: String,
        #[arg(long = "I3", value_parser = parse_list, default_value = "")]
        i3: IndexList,
        #[arg(long = "J3", value_parser = parse_list, default_value = "")]
        j3: IndexList,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Path matrix, immanants and checks for a planar network file.
    Network {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        what: NetworkOutput,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "A2WEB_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Zero the timings so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "I1", value_parser = parse_list, default_value = "")]
    i1: IndexList,
    #[arg(long = "J1", value_parser = parse_list, default_value = "")]
    j1: IndexList,
    #[arg(long = "I2", value_parser = parse_list, default_value = "")]
    i2: IndexList,
    #[arg(long = "J2", value_parser = parse_list, default_value = "")]
    j2: IndexList,
    #[arg(long = "I3", value_parser = parse_list, default_value = "")]
    i3: IndexList,
    #[arg(long = "J3", value_parser = parse_list, default_value = "")]
    j3: IndexList,
    /// Also compare both sides on this many random matrices.
    #[arg(long, default_value_t = 0)]
    verify: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NetworkOutput {
    #[arg(long)]
    immanants: bool,
    #[arg(long)]
    matrix: bool,
    #[arg(long)]
    check_corollary: bool,
    #[arg(long)]
    lindstrom: bool,
}

#[derive(Clone, Debug)]
struct IndexList(Vec<usize>);

fn parse_list(s: &str) -> std::result::Result<IndexList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(IndexList)
}

fn laurent(p: &LaurentPoly, q: bool) -> Value {
    if q {
        json!(p.to_q_string())
    } else {
        json!(format_rational(&p.eval_q1()))
    }
}

fn combo_json(c: &WebCombo, q: bool) -> Value {
    let m: BTreeMap<String, Value> = c.terms().map(|(k, v)| (k.key(), laurent(v, q))).collect();
    json!(m)
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })
}

fn read_matrix(path: &PathBuf) -> Result<ExactMatrix> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse {
        location: format!("{}:{}:{}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })
}

/// The JSON to print and whether the command's check passed.
fn run(cli: Cli) -> Result<(Value, bool)> {
    let q = cli.q;
    match cli.cmd {
        Cmd::Reduce { n, expr, word, trace } => {
            if let Some(IndexList(word)) = word {
                let (c, tr) = reduce(&Web::from_word(n, &word)?)?;
                let mut out = json!({ "n": n, "terms": combo_json(&c, q) });
                if trace {
                    out["trace"] = serde_json::to_value(&tr).expect("serializable");
                }
                Ok((out, true))
            } else {
                let src = expr.ok_or_else(|| Error::Domain("give an expression or --word".into()))?;
                let c = parse_expression(&src, n, &mut Spider::new())?;
                Ok((json!({ "n": n, "terms": combo_json(&c, q) }), true))
            }
        }
        Cmd::Labelings { n, word: IndexList(word), boundary, list } => {
            let w = Web::from_word(n, &word)?;
            let mut out = json!({ "n": n, "web": w.code().key() });
            match boundary {
                Some(b) => {
                    let g = BoundaryLabeling::parse(&b)?;
                    let ls = enumerate_labelings(w.map(), Some(&g))?;
                    out["boundary"] = json!(g.to_string());
                    out["count"] = json!(ls.len());
                    out["qsize"] = laurent(&qsize(&w, &g)?, true);
                    if list {
                        out["labelings"] = json!(ls.iter().map(|f| f.edges.clone()).collect::<Vec<_>>());
                    }
                }
                None => {
                    let ls = enumerate_labelings(w.map(), None)?;
                    let mut by: BTreeMap<String, LaurentPoly> = BTreeMap::new();
                    for f in &ls {
                        let e = by.entry(f.boundary(w.map()).to_string()).or_insert_with(LaurentPoly::zero);
                        *e += &a2web::labelings::alpha(&w, f);
                    }
                    out["count"] = json!(ls.len());
                    out["by_boundary"] = json!(by
                        .iter()
                        .map(|(g, v)| (g.clone(), laurent(v, q)))
                        .collect::<BTreeMap<_, _>>());
                    if list {
                        out["labelings"] = json!(ls.iter().map(|f| f.edges.clone()).collect::<Vec<_>>());
                    }
                }
            }
            Ok((out, true))
        }
        Cmd::Immanants { n, matrix, table } => {
            let t = immanant_table(n)?;
            let mut out = json!({ "n": n, "webs": t.web_count() });
            if table {
                out = t.to_json();
            }
            if let Some(path) = matrix {
                let x = read_matrix(&path)?;
                let vals: BTreeMap<String, String> = t
                    .webs
                    .iter()
                    .zip(t.evaluate_all(&x)?)
                    .map(|(w, v)| (w.code.key(), format_rational(&v)))
                    .collect();
                out["values"] = json!(vals);
            }
            Ok((out, true))
        }
        Cmd::Decompose(a) => {
            let t = MinorTriple::new(a.n, [a.i1.0, a.i2.0, a.i3.0], [a.j1.0, a.j2.0, a.j3.0])?;
            let d = decompose_triple(&t)?;
            let mut out = d.to_json();
            let mut ok = true;
            if a.verify > 0 {
                ok = d.verify(a.verify, a.seed)?;
                out["verified"] = json!(ok);
            }
            Ok((out, ok))
        }
        Cmd::Bridge { n, w, i3, j3, samples, seed } => {
            let third = ThirdMinor::new(n, i3.0, j3.0)?;
            let rep = bridge_report(&Perm::parse_one_line(&w)?, &third, samples, seed)?;
            let ok = rep.verified;
            Ok((serde_json::to_value(&rep).expect("serializable"), ok))
        }
        Cmd::Network { file, what } => {
            let net = PlanarNetwork::from_json(&read(&file)?)?;
            if what.matrix {
                Ok((serde_json::to_value(net.path_matrix()?).expect("serializable"), true))
            } else if what.immanants {
                let m: BTreeMap<String, String> = net
                    .network_immanants()?
                    .into_iter()
                    .map(|(k, v)| (k.key(), format_rational(&v)))
                    .collect();
                Ok((json!(m), true))
            } else if what.lindstrom {
                let rep = net.lindstrom_check()?;
                let ok = rep.passed;
                Ok((serde_json::to_value(&rep).expect("serializable"), ok))
            } else {
                let rep = net.corollary_check()?;
                let ok = rep.passed;
                Ok((serde_json::to_value(&rep).expect("serializable"), ok))
            }
        }
        Cmd::Verify { suite, n, samples, seed, workers, no_timing } => {
            let cfg = SuiteConfig { suite: suite.parse::<Suite>()?, n, samples, seed, workers };
            let mut rep = run_suite(&cfg)?;
            if no_timing {
                rep.checks.iter_mut().for_each(|c| c.millis = 0);
            }
            let ok = rep.passed;
            Ok((serde_json::to_value(&rep).expect("serializable"), ok))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            let text = serde_json::to_string_pretty(&out).expect("serializable");
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
