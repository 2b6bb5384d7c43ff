use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altiso_cli::experiment::{self, Caps, Kind};
use altiso_cli::fixtures;
use altiso_cli::format::{self, SpaceFile};
use altiso_core::adjoint::{adjoint_algebra, adjoint_space};
use altiso_core::baer::{baer_group_capped, group_iso_micro, DEFAULT_BAER_CAP};
use altiso_core::dp::dp_isometry;
use altiso_core::individualisation::individualisation_count;
use altiso_core::main_algorithm::{choose_r, main_isometry, MainOptions, ResultKind};
use altiso_core::matrix::DEFAULT_GL_CAP;
use altiso_core::oracle::brute_force_iso_capped;
use altiso_core::random::{sample_bipnait, sample_liner, sample_nait, trial_rng};
use altiso_core::stability::{
    check_exhaustive, is_semistable_capped, is_stable_capped, Condition, DEFAULT_STABILITY_CAP,
};
use altiso_core::subspace::{enumerate_subspaces, gaussian_binomial, DEFAULT_SUBSPACE_CAP};
use altiso_core::tensor::{flip_slice, AlternatingTuple, MatrixTuple};
use altiso_core::{Matrix, PrimeField};
use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_NOT_PROPERTY_F: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_ERROR: u8 = 4;

/// Isometry testing for alternating matrix spaces over prime fields.
#[derive(Parser, Debug)]
#[command(name = "altiso", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Nait,
    Liner,
    Bipnait,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Main,
    Dp,
    Brute,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Draw a random space (nait, liner) or matrix tuple (bipnait).
    Sample {
        #[arg(long, value_enum, default_value = "liner")]
        model: Model,
        /// Matrix size (nait/liner) or row count s (bipnait).
        #[arg(long)]
        n: usize,
        /// Number of matrices.
        #[arg(long)]
        m: usize,
        /// Column count for bipnait (defaults to n).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide or enumerate isometries between two spaces.
    Isometry {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, value_enum, default_value = "main")]
        algo: Algo,
        /// Stop at the first isometry instead of enumerating all of them.
        #[arg(long)]
        find_one: bool,
        /// Individualisation size for `main`.
        #[arg(long)]
        r: Option<usize>,
        /// Recorded in the report; all three algorithms are deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = MainOptions::default().individualisation_cap)]
        cap_individualisations: u128,
        #[arg(long, default_value_t = MainOptions::default().pi1_cap)]
        cap_pi1: u128,
        /// Bound on q^(n²) for the brute-force search.
        #[arg(long, default_value_t = DEFAULT_GL_CAP as u128)]
        cap_gl: u128,
        /// Bound on the number of isometries listed by `dp`.
        #[arg(long, default_value_t = 1_000_000)]
        cap_elements: u128,
    },
    /// Stability (or semi-stability) of a matrix tuple.
    Stable {
        file: PathBuf,
        /// Test semi-stability instead.
        #[arg(long)]
        semi: bool,
        /// Flip an alternating space at this r first.
        #[arg(long)]
        r: Option<usize>,
        /// Enumerate every subspace instead of the pruned search.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_STABILITY_CAP)]
        cap_stability: u128,
        #[arg(long)]
        json: bool,
    },
    /// Adjoint algebra of a tuple, or adjoint space of two tuples.
    Adjoint {
        file: PathBuf,
        other: Option<PathBuf>,
        /// Flip alternating spaces at this r first.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Count (and optionally list) the subspaces of F_q^n.
    Subspaces {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_SUBSPACE_CAP)]
        cap_subspaces: u128,
        #[arg(long)]
        json: bool,
    },
    /// Build the Baer group of a space; with two files, test isomorphism.
    Baer {
        file: PathBuf,
        other: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BAER_CAP)]
        cap_baer: u128,
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo experiment; prints a CSV report.
    Experiment {
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// JSON lines instead of CSV.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_STABILITY_CAP)]
        cap_stability: u128,
        #[arg(long, default_value_t = MainOptions::default().individualisation_cap)]
        cap_individualisations: u128,
        #[arg(long, default_value_t = MainOptions::default().pi1_cap)]
        cap_pi1: u128,
    },
    /// Parse and check matrix files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Regenerate the oracle-derived test fixtures.
    MakeFixtures {
        #[arg(long, default_value = "crates/cli/tests/fixtures")]
        out: PathBuf,
    },
}

fn field(q: u32) -> anyhow::Result<PrimeField> {
    Ok(PrimeField::new(q)?)
}

fn read_alt(path: &Path) -> anyhow::Result<AlternatingTuple> {
    match format::read(path)? {
        SpaceFile::Alt(g) => Ok(g),
        SpaceFile::Tuple(_) => bail!("{}: expected an altmatspace file", path.display()),
    }
}

/// A matrix tuple from either kind of file; alternating spaces are flipped
/// at `r`.
fn read_tuple(path: &Path, r: Option<usize>) -> anyhow::Result<MatrixTuple> {
    match (format::read(path)?, r) {
        (SpaceFile::Tuple(b), None) => Ok(b),
        (SpaceFile::Tuple(_), Some(_)) => bail!("{}: --r only applies to altmatspace files", path.display()),
        (SpaceFile::Alt(g), Some(r)) => Ok(flip_slice(&g, r)?),
        (SpaceFile::Alt(_), None) => bail!("{}: pass --r to flip an altmatspace file", path.display()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rows(a: &Matrix) -> Vec<Vec<u16>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Without an explicit `--r`: the smallest r meeting the individualisation
/// inequalities, or ⌈n/2⌉ when none does.
/// `choose_r` when feasible; otherwise ⌈n/2⌉, lowered until the
/// individualisations fit under `cap`.
fn default_r(n: usize, m: usize, q: u32, cap: u128) -> usize {
    choose_r(n, m).unwrap_or_else(|_| {
        let mut r = n.div_ceil(2).clamp(1, n.saturating_sub(1).max(1));
        while r > 1 && individualisation_count(n, r, q as u64) > cap {
            r -= 1;
        }
        r
    })
}

struct Verdict {
    code: u8,
    witness: Option<Matrix>,
    count: Option<usize>,
    extra: serde_json::Value,
}

#[allow(clippy::too_many_arguments)]
fn cmd_isometry(
    g: &Path,
    h: &Path,
    algo: Algo,
    find_one: bool,
    r: Option<usize>,
    seed: u64,
    json: bool,
    caps: (u128, u128, u128, u128),
) -> anyhow::Result<u8> {
    let (cap_ind, cap_pi1, cap_gl, cap_elements) = caps;
    let (g, h) = (read_alt(g)?, read_alt(h)?);
    let v = match algo {
        Algo::Main => {
            let r = r.unwrap_or_else(|| default_r(g.n(), g.m(), g.field().p() as u32, cap_ind));
            let opts = MainOptions {
                find_one,
                individualisation_cap: cap_ind,
                pi1_cap: cap_pi1,
            };
            let res = main_isometry(&g, &h, r, &opts)?;
            let extra = json!({
                "r": res.r,
                "dim_pi1": res.dim_pi1,
                "individualisations": res.stats.individualisations,
                "adjoint_candidates": res.stats.adjoint_candidates,
                "invertible_candidates": res.stats.invertible_candidates,
                "verified": res.stats.verified,
            });
            if res.kind == ResultKind::NotPropertyF {
                Verdict {
                    code: EXIT_NOT_PROPERTY_F,
                    witness: None,
                    count: None,
                    extra,
                }
            } else {
                Verdict {
                    code: if res.isometries.is_empty() { EXIT_NO } else { EXIT_YES },
                    witness: res.isometries.first().cloned(),
                    count: (!find_one).then_some(res.isometries.len()),
                    extra,
                }
            }
        }
        Algo::Dp => {
            let res = dp_isometry(&g, &h)?;
            let (witness, count) = if res.is_empty() {
                (None, Some(0))
            } else if find_one {
                let rep = res.coset.rep().expect("non-empty coset");
                (Some(res.domain.component_matrix(rep, 0)), None)
            } else {
                let all = res.g_projection(cap_elements)?;
                (all.first().cloned(), Some(all.len()))
            };
            Verdict {
                code: if witness.is_some() { EXIT_YES } else { EXIT_NO },
                witness,
                count,
                extra: json!({ "coset_size": res.coset.size().to_string() }),
            }
        }
        Algo::Brute => {
            let all = brute_force_iso_capped(&g, &h, cap_gl)?;
            Verdict {
                code: if all.is_empty() { EXIT_NO } else { EXIT_YES },
                witness: all.first().cloned(),
                count: (!find_one).then_some(all.len()),
                extra: json!({}),
            }
        }
    };
    let result = match v.code {
        EXIT_YES => "isometric",
        EXIT_NO => "not-isometric",
        _ => "not-property-f",
    };
    if json {
        let report = json!({
            "command": "isometry",
            "algo": format!("{algo:?}").to_lowercase(),
            "result": result,
            "n": g.n(),
            "m": g.m(),
            "q": g.field().p(),
            "seed": seed,
            "count": v.count,
            "witness": v.witness.as_ref().map(rows),
            "details": v.extra,
        });
        println!("{report}");
    } else {
        println!("{result}");
        if let Some(w) = &v.witness {
            println!("witness:");
            print!("{}", format_matrix(w));
        }
        if let Some(c) = v.count {
            println!("|S| = {c}");
        }
        if v.code == EXIT_NOT_PROPERTY_F {
            println!(
                "dim pi1 = {} > n - r = {}",
                v.extra["dim_pi1"],
                g.n() - v.extra["r"].as_u64().unwrap_or(0) as usize
            );
        }
    }
    Ok(v.code)
}

fn format_matrix(a: &Matrix) -> String {
    let mut s = String::new();
    for row in rows(a) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Sample {
            model,
            n,
            m,
            t,
            q,
            seed,
            stream,
            output,
        } => {
            let f = field(q)?;
            let mut rng = trial_rng(seed, stream);
            let text = match model {
                Model::Nait => format::write_alt(&sample_nait(n, m, f, &mut rng)),
                Model::Liner => format::write_alt(&sample_liner(n, m, f, &mut rng)?.0),
                Model::Bipnait => format::write_tuple(&sample_bipnait(n, t.unwrap_or(n), m, f, &mut rng)),
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_YES)
        }
        Cmd::Isometry {
            g,
            h,
            algo,
            find_one,
            r,
            seed,
            json,
            cap_individualisations,
            cap_pi1,
            cap_gl,
            cap_elements,
        } => cmd_isometry(
            &g,
            &h,
            algo,
            find_one,
            r,
            seed,
            json,
            (cap_individualisations, cap_pi1, cap_gl, cap_elements),
        ),
        Cmd::Stable {
            file,
            semi,
            r,
            exhaustive,
            cap_stability,
            json,
        } => {
            let b = read_tuple(&file, r)?;
            let cond = if semi { Condition::Semistable } else { Condition::Stable };
            let ok = match (exhaustive, semi) {
                (true, _) => check_exhaustive(&b, cond, cap_stability)?,
                (false, true) => is_semistable_capped(&b, cap_stability)?,
                (false, false) => is_stable_capped(&b, cap_stability)?,
            };
            let word = match (semi, ok) {
                (false, true) => "stable",
                (false, false) => "not-stable",
                (true, true) => "semistable",
                (true, false) => "not-semistable",
            };
            if json {
                println!("{}", json!({"command": "stable", "result": word, "s": b.s(), "t": b.t(), "len": b.len(), "q": b.field().p()}));
            } else {
                println!("{word}");
            }
            Ok(if ok { EXIT_YES } else { EXIT_NO })
        }
        Cmd::Adjoint { file, other, r, json } => {
            let b = read_tuple(&file, r)?;
            let adj = match &other {
                Some(o) => adjoint_space(&b, &read_tuple(o, r)?)?,
                None => adjoint_algebra(&b),
            };
            let pi1 = adj.pi1().dim();
            let basis: Vec<_> = (0..adj.dim())
                .map(|i| {
                    let mut c = vec![0u16; adj.dim()];
                    c[i] = 1;
                    let (a, d) = adj.combination(&c);
                    json!({"a": rows(&a), "d": rows(&d)})
                })
                .collect();
            if json {
                println!("{}", json!({"command": "adjoint", "dim": adj.dim(), "dim_pi1": pi1, "basis": basis}));
            } else {
                println!("dim Adj = {}", adj.dim());
                println!("dim pi1 = {pi1}");
                if other.is_none() {
                    if let Some(r) = r {
                        // the flipped tuple has n - r rows
                        let bound = b.s();
                        let verdict = if pi1 <= bound { "holds" } else { "fails" };
                        println!("property F at r = {r}: {verdict} (bound {bound})");
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Cmd::Subspaces {
            n,
            q,
            list,
            cap_subspaces,
            json,
        } => {
            let f = field(q)?;
            let table = enumerate_subspaces(n, f, cap_subspaces)?;
            let mut all_match = true;
            for d in 0..=n {
                let found = table.level(d).len() as u128;
                let expected = gaussian_binomial(n, d, q as u64);
                all_match &= found == expected;
                if json {
                    let mut obj = json!({"command": "subspaces", "n": n, "q": q, "dim": d, "count": found.to_string(), "gaussian_binomial": expected.to_string()});
                    if list {
                        let bases: Vec<_> = table.level(d).iter().map(|s| s.canonical.rows().to_vec()).collect();
                        obj["subspaces"] = json!(bases);
                    }
                    println!("{obj}");
                } else {
                    println!("dim {d}: {found} (gaussian binomial {expected})");
                    if list {
                        for s in table.level(d) {
                            let rows: Vec<String> = s
                                .canonical
                                .rows()
                                .iter()
                                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
                                .collect();
                            println!("  [{}]", rows.join(", "));
                        }
                    }
                }
            }
            if !json {
                println!("total: {}", table.len());
            }
            if all_match {
                Ok(EXIT_YES)
            } else {
                Err(anyhow!("enumeration disagrees with the Gaussian binomials"))
            }
        }
        Cmd::Baer {
            file,
            other,
            cap_baer,
            json,
        } => {
            let g = read_alt(&file)?;
            let t1 = baer_group_capped(&g, cap_baer)?;
            let checks = |t: &altiso_core::baer::FiniteGroupTable| {
                json!({
                    "order": t.order(),
                    "group": t.is_group(),
                    "class_at_most_two": t.has_class_at_most_two(),
                    "exponent_p": t.has_exponent(t.p() as u64),
                    "abelian": t.is_abelian(),
                    "derived_order": t.derived_subgroup().len(),
                })
            };
            let c1 = checks(&t1);
            let Some(other) = other else {
                if json {
                    println!("{}", json!({"command": "baer", "group": c1}));
                } else {
                    for (k, v) in c1.as_object().expect("object") {
                        println!("{k}: {v}");
                    }
                }
                return Ok(EXIT_YES);
            };
            let t2 = baer_group_capped(&read_alt(&other)?, cap_baer)?;
            let iso = group_iso_micro(&t1, &t2)?;
            let word = if iso { "isomorphic" } else { "not-isomorphic" };
            if json {
                println!("{}", json!({"command": "baer", "result": word, "first": c1, "second": checks(&t2)}));
            } else {
                println!("{word}");
            }
            Ok(if iso { EXIT_YES } else { EXIT_NO })
        }
        Cmd::Experiment {
            kind,
            n,
            m,
            q,
            r,
            trials,
            seed,
            output,
            json,
            cap_stability,
            cap_individualisations,
            cap_pi1,
        } => {
            let caps = Caps {
                stability: cap_stability,
                individualisations: cap_individualisations,
                pi1: cap_pi1,
            };
            let points = experiment::grid(kind, &n, &m, &q, &r);
            let report = experiment::report(&points, trials, seed, &caps);
            let text = if json {
                report
                    .iter()
                    .map(|row| serde_json::to_string(row).map(|s| s + "\n"))
                    .collect::<Result<String, _>>()?
            } else {
                experiment::to_csv(&report)
            };
            emit(output.as_deref(), &text)?;
            for row in report.iter().filter(|r| r.skipped.is_some()) {
                eprintln!("skipped {}: {}", row.to_csv(), row.skipped.as_deref().unwrap_or(""));
            }
            Ok(EXIT_YES)
        }
        Cmd::Validate { files } => {
            let mut bad = 0;
            for path in &files {
                match format::read(path) {
                    Ok(SpaceFile::Alt(g)) => {
                        println!("{}: ok altmatspace n={} m={} q={} dim={}", path.display(), g.n(), g.m(), g.field().p(), g.space().dim())
                    }
                    Ok(SpaceFile::Tuple(b)) => {
                        println!("{}: ok matrixtuple s={} t={} r={} q={}", path.display(), b.s(), b.t(), b.len(), b.field().p())
                    }
                    Err(e) => {
                        bad += 1;
                        eprintln!("{}: {e}", path.display());
                    }
                }
            }
            Ok(if bad == 0 { EXIT_YES } else { EXIT_USAGE })
        }
        Cmd::MakeFixtures { out } => {
            for p in fixtures::write_all(&out)? {
                println!("wrote {}", p.display());
            }
            Ok(EXIT_YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<format::FormatError>().is_some();
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_ERROR })
        }
    }
}
