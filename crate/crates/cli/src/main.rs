//! equigeo command line: document I/O, subcommand dispatch, seeded
//! reproducibility, and the verify-all acceptance driver. Exit codes:
//! 0 success, 1 assertion or violation, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use equigeo::blend::{self, Target};
use equigeo::body::{hausdorff, minkowski_combination};
use equigeo::doc::{self, numeral};
use equigeo::error::{Error, Result};
use equigeo::selectors::{self, SelectorId};
use equigeo::symmetry;
use equigeo::transform::{sample, GroupTag, SampleBounds};
use equigeo::verify::{self, VerifyConfig};
use equigeo::{lab, point, Point, VERSION};

#[derive(Parser)]
#[command(name = "equigeo", version, about = "Convex bodies, group actions, invariant points, and equivariant blends")]
struct Cli {
    /// Seed for every randomized routine; recorded in report headers.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Trial count for sampled suites.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Write a CSV report here instead of stdout (where applicable).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Write an SVG plot here (where applicable).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hausdorff distance between two bodies (inline JSON or paths).
    Hausdorff { a: String, b: String },
    /// Minkowski combination (1-t) A + t B, printed as a body document.
    Minkowski {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
    },
    /// Evaluate an invariant-point selector on a body.
    InvariantPoint {
        #[arg(long)]
        method: String,
        #[arg(long)]
        body: String,
    },
    /// Enumerate the stabilizer of a body inside a group.
    Symmetry {
        #[arg(long)]
        body: String,
        #[arg(long, default_value = "euclidean")]
        group: String,
    },
    /// Fixed-point set of the stabilizer: base point plus directions.
    FixedSet {
        #[arg(long)]
        body: String,
        #[arg(long, default_value = "euclidean")]
        group: String,
    },
    /// Check selector outputs against the stabilizer's fixed subspace.
    Containment {
        #[arg(long)]
        body: String,
        #[arg(long, default_value = "euclidean")]
        group: String,
        /// Comma-separated selector names; defaults to all six.
        #[arg(long, value_delimiter = ',')]
        selectors: Vec<String>,
    },
    /// Evaluate the blend map on a probe, or run its verification suite.
    Blend {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        probe: Option<String>,
        /// Run the interpolation/equivariance suite and emit a CSV report.
        #[arg(long)]
        verify: bool,
    },
    /// Sampled check of the similarity properness bounds.
    Properness {
        #[arg(long)]
        body: String,
        #[arg(long)]
        delta: f64,
    },
    /// Width profile and constant-width verdict for a body.
    ConstantWidth {
        #[arg(long)]
        body: String,
        /// Width deviation tolerance.
        #[arg(long, default_value_t = 2e-3)]
        tol: f64,
    },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
    /// Run the acceptance suite and print its report.
    VerifyAll {
        /// Run only criteria whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Tolerance override, name=value; repeatable.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Midpoint of a segment via its Euclidean stabilizer.
    SegmentMidpoint {
        /// Endpoint as x,y.
        #[arg(long, default_value = "0,0")]
        a: String,
        #[arg(long, default_value = "2,0")]
        b: String,
    },
    /// Thin triangles whose centroids split from the segment midpoint.
    TriangleCounterexample {
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
    },
}

fn parse_xy(text: &str) -> Result<Point> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() < 2 {
        return Err(Error::Document(format!("expected x,y coordinates, got `{text}`")));
    }
    let coords: Vec<f64> = parts
        .iter()
        .map(|p| {
            f64::from_str(p.trim())
                .map_err(|e| Error::Document(format!("bad coordinate `{p}`: {e}")))
        })
        .collect::<Result<_>>()?;
    Ok(Point::from_column_slice(&coords))
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Document(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Hausdorff { a, b } => {
            let a = doc::load_body(&a)?;
            let b = doc::load_body(&b)?;
            println!("{}", numeral(hausdorff(&a, &b)?));
            Ok(true)
        }
        Command::Minkowski { a, b, t } => {
            let a = doc::load_body(&a)?;
            let b = doc::load_body(&b)?;
            println!("{}", doc::body_doc(&minkowski_combination(&a, &b, t)?));
            Ok(true)
        }
        Command::InvariantPoint { method, body } => {
            let id = SelectorId::from_str(&method)?;
            let body = doc::load_body(&body)?;
            let mut out = format!(
                "{{\"version\": \"{VERSION}\", \"method\": \"{id}\", \"point\": {}",
                doc::point_doc(&selectors::evaluate(id, &body)?)
            );
            match id {
                SelectorId::Chebyshev => {
                    let (_, r) = selectors::chebyshev(&body)?;
                    let _ = write!(out, ", \"radius\": {}", numeral(r));
                }
                SelectorId::Circumcenter => {
                    let (_, r) = selectors::circumball(&body);
                    let _ = write!(out, ", \"radius\": {}", numeral(r));
                }
                SelectorId::LownerCenter | SelectorId::JohnCenter => {
                    let e = if id == SelectorId::LownerCenter {
                        selectors::lowner(&body)?
                    } else {
                        selectors::john(&body)?
                    };
                    out.push_str(", \"shape\": [");
                    for i in 0..e.shape.nrows() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        out.push('[');
                        for j in 0..e.shape.ncols() {
                            if j > 0 {
                                out.push_str(", ");
                            }
                            out.push_str(&numeral(e.shape[(i, j)]));
                        }
                        out.push(']');
                    }
                    out.push(']');
                }
                _ => {}
            }
            out.push('}');
            println!("{out}");
            Ok(true)
        }
        Command::Symmetry { body, group } => {
            let body = doc::load_body(&body)?;
            let group = GroupTag::from_str(&group)?;
            let stab = symmetry::stabilizer(&body, group)?;
            println!("order {} within {}", stab.elements.len(), stab.group);
            for g in &stab.elements {
                println!("{}", doc::transform_doc(g));
            }
            Ok(true)
        }
        Command::FixedSet { body, group } => {
            let body = doc::load_body(&body)?;
            let group = GroupTag::from_str(&group)?;
            let stab = symmetry::stabilizer(&body, group)?;
            let fixed = symmetry::fixed_point_set(&stab);
            println!("dim {}", fixed.dim());
            println!("base {}", doc::point_doc(&fixed.base));
            for d in &fixed.directions {
                println!("direction {}", doc::point_doc(d));
            }
            Ok(true)
        }
        Command::Containment {
            body,
            group,
            selectors: names,
        } => {
            let body = doc::load_body(&body)?;
            let group = GroupTag::from_str(&group)?;
            let ids: Vec<SelectorId> = if names.is_empty() {
                SelectorId::ALL.to_vec()
            } else {
                names
                    .iter()
                    .map(|n| SelectorId::from_str(n))
                    .collect::<Result<_>>()?
            };
            let report = symmetry::check_containment(&body, &ids, group)?;
            let eps = 1e-6;
            for row in &report.rows {
                println!(
                    "{:<13} distance {} {}",
                    row.selector.to_string(),
                    numeral(row.distance),
                    if row.distance <= eps { "ok" } else { "OUTSIDE" }
                );
            }
            println!("max distance {}", numeral(report.max_distance()));
            Ok(report.all_within(eps))
        }
        Command::Blend {
            scenario,
            probe,
            verify,
        } => {
            let scenario = blend::validate(&doc::load_scenario(&scenario)?)?;
            if let Some(probe) = probe {
                let probe = doc::load_body(&probe)?;
                if scenario
                    .pairs
                    .iter()
                    .any(|p| matches!(p.target, Target::Body(_)))
                {
                    println!("{}", doc::body_doc(&blend::blend_body(&probe, &scenario)?));
                } else {
                    println!("{}", doc::point_doc(&blend::blend(&probe, &scenario)?));
                }
            }
            if verify {
                let report = blend_verify_csv(&scenario, cli.seed, cli.trials)?;
                emit(&cli.csv, &report)?;
            }
            Ok(true)
        }
        Command::Properness { body, delta } => {
            let body = doc::load_body(&body)?;
            let rep = lab::thin_bound_check(&body, delta, cli.trials, cli.seed)?;
            println!("diameter {}", numeral(rep.m));
            println!("delta {}", numeral(rep.delta));
            println!("coordinate bound {}", numeral(rep.coord_bound));
            println!(
                "lambda interval ({}, {})",
                numeral(rep.lambda_interval.0),
                numeral(rep.lambda_interval.1)
            );
            println!("translation bound {}", numeral(rep.translation_bound));
            println!("violations {} of {} trials", rep.violations, rep.trials);
            Ok(rep.violations == 0)
        }
        Command::ConstantWidth { body, tol } => {
            let body = doc::load_body(&body)?;
            let check = lab::width_check(&body, tol)?;
            println!("constant {}", check.constant);
            println!("mean width {}", numeral(check.d));
            println!("max deviation {}", numeral(check.max_deviation));
            println!("difference gap {}", numeral(check.difference_gap));
            println!("ball slack {}", numeral(check.ball_slack));
            Ok(true)
        }
        Command::Demo { which } => match which {
            DemoCommand::SegmentMidpoint { a, b } => {
                let a = parse_xy(&a)?;
                let b = parse_xy(&b)?;
                let rep = lab::segment_midpoint_demo(&a, &b)?;
                println!("midpoint {}", doc::point_doc(&rep.midpoint));
                println!("stabilizer order {}", rep.stabilizer_order);
                println!("fixed-set dim {}", rep.fixed_set.dim());
                println!("deviation {}", numeral(rep.deviation));
                Ok(rep.deviation <= 1e-8)
            }
            DemoCommand::TriangleCounterexample { n_max } => {
                let table = lab::triangle_counterexample(n_max)?;
                let last = table.rows.last().expect("n_max >= 1");
                println!(
                    "centroid(T_{}) {}",
                    last.n,
                    doc::point_doc(&last.centroid)
                );
                println!("limit {}", doc::point_doc(&table.limit_point));
                println!(
                    "segment midpoint {}",
                    doc::point_doc(&table.segment_midpoint)
                );
                println!("terminal gap {}", numeral(table.terminal_gap));
                println!(
                    "hausdorff(T_{}, I) {}",
                    last.n,
                    numeral(last.hausdorff_to_segment)
                );
                if cli.csv.is_some() {
                    let params = format!("triangle-counterexample;seed={};n_max={n_max}", cli.seed);
                    let mut csv = format!(
                        "# equigeo v{VERSION} triangle-counterexample seed={} n_max={n_max} config={:016x}\n",
                        cli.seed,
                        verify::fingerprint(&params)
                    );
                    csv.push_str("n,centroid_x,centroid_y,formula_error,hausdorff_to_segment\n");
                    for row in &table.rows {
                        let _ = writeln!(
                            csv,
                            "{},{},{},{},{}",
                            row.n,
                            numeral(row.centroid[0]),
                            numeral(row.centroid[1]),
                            numeral(row.formula_error),
                            numeral(row.hausdorff_to_segment)
                        );
                    }
                    emit(&cli.csv, &csv)?;
                }
                if cli.svg.is_some() {
                    emit(&cli.svg, &triangle_svg(&table))?;
                }
                Ok(true)
            }
        },
        Command::VerifyAll { filter, tol } => {
            let mut cfg = VerifyConfig {
                seed: cli.seed,
                overrides: Default::default(),
                filter,
            };
            for t in tol {
                let (name, value) = verify::parse_override(&t)?;
                cfg.overrides.insert(name, value);
            }
            let summary = verify::run_all(&cfg);
            print!("{}", summary.render());
            Ok(summary.all_passed())
        }
    }
}

/// Interpolation and equivariance rows for one scenario, seeded and
/// byte-stable.
fn blend_verify_csv(
    scenario: &blend::Scenario,
    seed: u64,
    trials: usize,
) -> Result<String> {
    use rand::Rng;

    let params = format!(
        "blend-verify;seed={seed};trials={trials};group={}",
        scenario.group
    );
    let mut out = format!(
        "# equigeo v{VERSION} blend-verify seed={seed} trials={trials} group={} config={:016x}\n",
        scenario.group,
        verify::fingerprint(&params)
    );
    out.push_str("kind,i,j,value\n");
    for (i, pair) in scenario.pairs.iter().enumerate() {
        let err = match &pair.target {
            Target::Point(y) => (blend::blend(&pair.anchor, scenario)? - y).norm(),
            Target::Body(y) => hausdorff(&blend::blend_body(&pair.anchor, scenario)?, y)?,
        };
        let _ = writeln!(out, "interpolation,{i},,{}", numeral(err));
    }
    let bounds = SampleBounds::default();
    let mut rng = rand_seed(seed);
    for trial in 0..trials {
        let pair = &scenario.pairs[trial % scenario.pairs.len()];
        let radius = 0.2 * pair.delta.expect("validated scenario");
        let probe = {
            let pts: Vec<Point> = pair
                .anchor
                .vertices()
                .iter()
                .map(|v| {
                    let angle = rng.random_range(0.0..std::f64::consts::TAU);
                    let r = radius * rng.random::<f64>();
                    v + point(&[r * angle.cos(), r * angle.sin()])
                })
                .collect();
            equigeo::body::ConvexBody::canonicalize(&pts)?
        };
        let g = sample(
            scenario.group,
            &bounds,
            seed.wrapping_mul(7919).wrapping_add(trial as u64),
        )?;
        let moved = g.apply(&probe)?;
        let gap = if scenario
            .pairs
            .iter()
            .any(|p| matches!(p.target, Target::Body(_)))
        {
            let lhs = blend::blend_body(&moved, scenario)?;
            let rhs = g.apply(&blend::blend_body(&probe, scenario)?)?;
            hausdorff(&lhs, &rhs)? / (1.0 + rhs.diameter())
        } else {
            let lhs = blend::blend(&moved, scenario)?;
            let rhs = g.apply_point(&blend::blend(&probe, scenario)?);
            (lhs - &rhs).norm() / (1.0 + rhs.norm())
        };
        let _ = writeln!(out, "equivariance,{trial},{},{}", trial % scenario.pairs.len(), numeral(gap));
    }
    Ok(out)
}

fn rand_seed(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_chacha::rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Minimal SVG: centroid trajectory with the limit point and the segment
/// midpoint marked.
fn triangle_svg(table: &lab::TriangleTable) -> String {
    let w = 480.0;
    let h = 360.0;
    let margin = 40.0;
    // Data ranges: x in [0, max centroid x], y around [1/3, 1/2].
    let max_x = table.rows.first().map(|r| r.centroid[0]).unwrap_or(1.0);
    let map_x = |x: f64| margin + (w - 2.0 * margin) * x / max_x;
    let map_y = |y: f64| h - margin - (h - 2.0 * margin) * (y - 0.25) / 0.35;
    let mut path = String::new();
    for (k, row) in table.rows.iter().enumerate() {
        let _ = write!(
            path,
            "{}{:.2},{:.2}",
            if k == 0 { "M" } else { " L" },
            map_x(row.centroid[0]),
            map_y(row.centroid[1])
        );
    }
    let limit = (map_x(table.limit_point[0]), map_y(table.limit_point[1]));
    let mid = (
        map_x(table.segment_midpoint[0]),
        map_y(table.segment_midpoint[1]),
    );
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<path d=\"{path}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n",
            "<circle cx=\"{lx:.2}\" cy=\"{ly:.2}\" r=\"4\" fill=\"steelblue\"/>\n",
            "<circle cx=\"{mx:.2}\" cy=\"{my:.2}\" r=\"4\" fill=\"crimson\"/>\n",
            "<text x=\"{lx:.2}\" y=\"{lty:.2}\" font-size=\"12\">centroid limit</text>\n",
            "<text x=\"{mx:.2}\" y=\"{mty:.2}\" font-size=\"12\">segment midpoint</text>\n",
            "</svg>\n"
        ),
        w = w,
        h = h,
        path = path,
        lx = limit.0,
        ly = limit.1,
        lty = limit.1 + 20.0,
        mx = mid.0,
        my = mid.1,
        mty = mid.1 - 10.0,
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
