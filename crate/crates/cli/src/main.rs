use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use quasitree::census::{self, CensusOptions};
use quasitree::duality::{dual_facets, sr_complex, sr_ideal};
use quasitree::homology::{betti, is_exact_frame, pd};
use quasitree::io;
use quasitree::monomial::polarize;
use quasitree::resolution::{floystad_tree, frame, homogenize, taylor, JointChoice, LabeledComplex};
use quasitree::verify::{dual_with_room, trees_for_ideal, verify};
use quasitree::{LeafOrderMode, MonomialIdeal, SimplicialComplex};

#[derive(Parser)]
#[command(name = "quasitree", version, about = "Quasi-forests, tree resolutions and projective dimension one")]
struct Cli {
    /// Read input from FILE instead of stdin.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Joint {
    Smallest,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recognizer {
    Exhaustive,
    Greedy,
    Induced,
}

/// Commands reading an ideal also accept it inline as the last argument.
#[derive(Subcommand)]
enum Command {
    /// Facets of the dual complex of an ideal.
    Dual { ideal: Option<String> },
    /// Stanley-Reisner ideal of a complex (JSON input) or complex of an ideal (text input).
    Sr { ideal: Option<String> },
    /// Whether a complex (JSON) or the dual of an ideal (text) is a quasi-forest.
    Quasiforest {
        #[arg(long, value_enum, default_value_t = Recognizer::Exhaustive)]
        recognizer: Recognizer,
        ideal: Option<String>,
    },
    /// Graph tree built from the dual quasi-forest.
    Tree {
        #[arg(long, value_enum, default_value_t = Joint::Smallest)]
        joint: Joint,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        ideal: Option<String>,
    },
    /// Tree from nested spanning forests of the lcm-weighted complete graph.
    Floystad {
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        ideal: Option<String>,
    },
    /// Build the tree, homogenize it, check it, and print the resolution.
    Resolve { ideal: Option<String> },
    /// Taylor resolution.
    Taylor { ideal: Option<String> },
    /// Multigraded Betti numbers of S/I.
    Betti { ideal: Option<String> },
    /// Projective dimension of I.
    Pd { ideal: Option<String> },
    /// pd(I) <= 1, dual quasi-forest and tree resolution, decided independently.
    Verify {
        /// Where to write the reproducer if the three answers disagree.
        #[arg(long, value_name = "FILE", default_value = "verify-reproducer.txt")]
        reproducer: PathBuf,
        ideal: Option<String>,
    },
    /// Check every invariant on all complexes up to a vertex count.
    Census {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        /// Largest vertex count that also gets the resolution checks.
        #[arg(long, default_value_t = 4)]
        three_way_max: usize,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        /// Seed for the Taylor and polarization suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE", default_value = "census-failures.json")]
        reproducer: PathBuf,
    },
    /// Squarefree ideal with the same projective dimension.
    Polarize { ideal: Option<String> },
}

/// A command outcome: `Ok(true)` exits 0, `Ok(false)` exits 1.
struct Out {
    text: String,
    ok: bool,
}

fn done(text: String) -> Result<Out> {
    Ok(Out { text, ok: true })
}

fn read_input(inline: Option<String>, path: &Option<PathBuf>) -> Result<String> {
    if let Some(s) = inline {
        return Ok(s);
    }
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn ideal_from(text: &str) -> Result<MonomialIdeal> {
    Ok(io::parse_ideal(text)?)
}

fn complex_text(d: &SimplicialComplex) -> String {
    let facets: Vec<String> = d.facets().iter().map(|&f| d.format_facet(f)).collect();
    facets.join("\n") + "\n"
}

fn emit_complex(d: &SimplicialComplex, format: Format) -> String {
    match format {
        Format::Text => complex_text(d),
        Format::Json => io::complex_to_json(d) + "\n",
    }
}

fn emit_ideal(i: &MonomialIdeal, format: Format) -> String {
    match format {
        Format::Text => io::format_ideal(i),
        Format::Json => {
            let gens: Vec<String> = i.generators().iter().map(|g| i.fmt_mono(g)).collect();
            serde_json::json!({ "vars": i.vars().names(), "generators": gens }).to_string() + "\n"
        }
    }
}

fn emit_trees(trees: &[LabeledComplex], format: Format, dot: &Option<PathBuf>) -> Result<String> {
    if let Some(path) = dot {
        let text: String = trees.iter().map(io::tree_to_dot).collect();
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(match format {
        Format::Text => trees.iter().map(io::tree_to_text).collect::<Vec<_>>().join("\n"),
        Format::Json if trees.len() == 1 => io::tree_to_json(&trees[0]) + "\n",
        Format::Json => format!("[{}]\n", trees.iter().map(io::tree_to_json).collect::<Vec<_>>().join(",\n")),
    })
}

fn order_names(order: &[usize]) -> String {
    order.iter().map(|i| format!("F{}", i + 1)).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<Out> {
    let format = cli.format;
    let input = |inline| read_input(inline, &cli.input);
    match cli.command {
        Command::Dual { ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            done(emit_complex(&dual_facets(&i)?, format))
        }
        Command::Sr { ideal } => {
            let text = input(ideal)?;
            if io::looks_like_json(&text) {
                match sr_ideal(&io::complex_from_json(&text)?)? {
                    Some(i) => done(emit_ideal(&i, format)),
                    None => bail!("the full simplex has the zero ideal"),
                }
            } else {
                done(emit_complex(&sr_complex(&ideal_from(&text)?)?, format))
            }
        }
        Command::Quasiforest { recognizer, ideal } => {
            let text = input(ideal)?;
            let d = if io::looks_like_json(&text) {
                io::complex_from_json(&text)?
            } else {
                dual_with_room(&ideal_from(&text)?)?.0
            };
            let (name, order, yes) = match recognizer {
                Recognizer::Induced => ("induced", None, d.is_quasi_forest_by_induced()?),
                Recognizer::Exhaustive | Recognizer::Greedy => {
                    let (name, mode) = match recognizer {
                        Recognizer::Greedy => ("greedy", LeafOrderMode::Greedy),
                        _ => ("exhaustive", LeafOrderMode::Exhaustive),
                    };
                    let o = d.leaf_order(mode)?;
                    (name, o.clone(), o.is_some())
                }
            };
            let kind = if d.is_connected() { "quasi-tree" } else { "quasi-forest" };
            let text = match (yes, order) {
                (true, Some(o)) => format!("yes: {kind}, leaf order {} ({name})\n", order_names(&o)),
                (true, None) => format!("yes: {kind} ({name})\n"),
                (false, _) => format!("no leaf order ({name})\n"),
            };
            Ok(Out { text, ok: yes })
        }
        Command::Tree { joint, dot, ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            let choice = match joint {
                Joint::Smallest => JointChoice::SmallestIndex,
                Joint::All => JointChoice::EnumerateAll,
            };
            done(emit_trees(&trees_for_ideal(&i, choice)?, format, &dot)?)
        }
        Command::Floystad { dot, ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            let t = floystad_tree(&i)?;
            let mut text = emit_trees(std::slice::from_ref(&t), format, &dot)?;
            if format == Format::Text {
                let ok = t.supports_resolution()? && t.is_minimal_support()?;
                text.push_str(&format!("supports minimal resolution: {}\n", if ok { "yes" } else { "no" }));
            }
            done(text)
        }
        Command::Resolve { ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            let t = trees_for_ideal(&i, JointChoice::SmallestIndex)?.remove(0);
            let fc = homogenize(&t)?;
            fc.check_square_zero()?;
            let supports = t.supports_resolution()?;
            let minimal = t.is_minimal_support()? && fc.is_minimal();
            let exact = is_exact_frame(&frame(&fc))?;
            if !(supports && minimal && exact) {
                bail!("tree fails: supports={supports} minimal={minimal} exact frame={exact}");
            }
            done(match format {
                Format::Text => io::free_complex_to_text(&fc) + "supports resolution: yes; minimal: yes\n",
                Format::Json => io::free_complex_to_json(&fc) + "\n",
            })
        }
        Command::Taylor { ideal } => {
            let fc = taylor(&ideal_from(&input(ideal)?)?)?;
            done(match format {
                Format::Text => io::free_complex_to_text(&fc),
                Format::Json => io::free_complex_to_json(&fc) + "\n",
            })
        }
        Command::Betti { ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            let table = betti(&i)?;
            done(match format {
                Format::Json => io::betti_to_json(&table, i.vars()) + "\n",
                Format::Text => {
                    let mut s = format!("total {:?}\n", table.totals());
                    for (k, m, b) in table.graded() {
                        s.push_str(&format!("{k} {} {b}\n", i.fmt_mono(m)));
                    }
                    s
                }
            })
        }
        Command::Pd { ideal } => done(format!("{}\n", pd(&ideal_from(&input(ideal)?)?)?)),
        Command::Verify { reproducer, ideal } => {
            let i = ideal_from(&input(ideal)?)?;
            let v = verify(&i)?;
            if !v.consistent() {
                let body = format!("{}# {}\n", io::format_ideal(&i), v.report());
                fs::write(&reproducer, body).with_context(|| format!("writing {}", reproducer.display()))?;
                bail!("one-sided equivalence ({}); reproducer written to {}", v.report(), reproducer.display());
            }
            Ok(Out { text: v.report() + "\n", ok: v.pd_at_most_one() })
        }
        Command::Census { max_vertices, three_way_max, workers, seed, reproducer } => {
            let report =
                census::run(CensusOptions { max_vertices, three_way_max_vertices: three_way_max, workers })?;
            let taylor = census::taylor_suite(seed, 100)?;
            let polar = census::polarization_suite(seed, 50)?;
            let failed = !report.passed() || !taylor.passed() || !polar.passed();
            if failed {
                let body = serde_json::json!({
                    "census": report.failures,
                    "taylor": taylor.failures,
                    "polarization": polar.failures,
                });
                fs::write(&reproducer, serde_json::to_string_pretty(&body)?)
                    .with_context(|| format!("writing {}", reproducer.display()))?;
            }
            let mut text = match format {
                Format::Text => report.summary(),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            if format == Format::Text {
                text.push_str(&format!("taylor suite: {} cases, {} failures\n", taylor.cases, taylor.failures.len()));
                text.push_str(&format!("polarization suite: {} cases, {} failures\n", polar.cases, polar.failures.len()));
            }
            if failed {
                emit(&cli.output, &text)?;
                bail!("census found failures; details written to {}", reproducer.display());
            }
            done(text)
        }
        Command::Polarize { ideal } => {
            let (p, _) = polarize(&ideal_from(&input(ideal)?)?)?;
            done(emit_ideal(&p, format))
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli).and_then(|out| emit(&output, &out.text).map(|_| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
