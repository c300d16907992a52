//! Text and JSON formats for ideals, complexes, free complexes, Betti tables
//! and trees, plus DOT output for trees.
//!
//! Ideal text: an optional header `vars x1 x2 ...`, then generators one per
//! line or comma-separated, each a `*`-separated product of `name` or
//! `name^k`. Without a header, variables are numbered in order of first
//! appearance. `#` starts a comment.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::BettiTable;
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};
use crate::resolution::{edge_labels, Entry, FreeComplex, LabeledComplex};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

struct Factor<'a> {
    name: &'a str,
    exp: u32,
    line: usize,
    column: usize,
}

/// Split `text` (1-based `line`, starting at 1-based `column`) into factors.
fn parse_product<'a>(text: &'a str, line: usize, column: usize) -> Result<Vec<Factor<'a>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split('*') {
        let lead = raw.len() - raw.trim_start().len();
        let col = column + offset + lead;
        let token = raw.trim();
        offset += raw.len() + 1;
        if token.is_empty() {
            return Err(parse_error(line, col, "empty factor"));
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line, col + n.len() + 1, format!("bad exponent `{}`", e.trim())))?;
                if e == 0 {
                    return Err(parse_error(line, col + n.len() + 1, "exponent must be positive"));
                }
                (n.trim(), e)
            }
            None => (token, 1),
        };
        if !valid_name(name) {
            return Err(parse_error(line, col, format!("`{name}` is not a variable name")));
        }
        out.push(Factor { name, exp, line, column: col });
    }
    Ok(out)
}

/// Parse the ideal text format. Generators must form a minimal generating set.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut header: Option<VariableSet> = None;
    let mut seen_content = false;
    let mut products: Vec<Vec<Factor>> = Vec::new();
    for (ln, raw_line) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("vars").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) {
            if seen_content {
                return Err(parse_error(line, 1, "`vars` header must come first"));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            header = Some(VariableSet::new(names).map_err(|e| parse_error(line, 1, e.to_string()))?);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut offset = 0;
        for item in content.split(',') {
            if !item.trim().is_empty() {
                products.push(parse_product(item.trim_end(), line, offset + 1)?);
            }
            offset += item.len() + 1;
        }
    }
    if products.is_empty() {
        return Err(Error::NoGenerators);
    }
    let vars = match header {
        Some(v) => v,
        None => {
            let mut names: Vec<&str> = Vec::new();
            for f in products.iter().flatten() {
                if !names.contains(&f.name) {
                    names.push(f.name);
                }
            }
            VariableSet::new(names)?
        }
    };
    let mut gens = Vec::with_capacity(products.len());
    for p in &products {
        let mut exps = vec![0u32; vars.len()];
        for f in p {
            let i = vars
                .index_of(f.name)
                .ok_or_else(|| parse_error(f.line, f.column, format!("variable `{}` is not declared", f.name)))?;
            exps[i] += f.exp;
        }
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::new(vars, gens)
}

/// Ideal text with a `vars` header, one generator per line; re-parses to an
/// equal ideal.
pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars {}\n", ideal.vars().names().join(" "));
    for g in ideal.generators() {
        out.push_str(&ideal.fmt_mono(g));
        out.push('\n');
    }
    out
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Whether `text` looks like JSON rather than ideal text.
pub fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

pub fn complex_to_json(d: &SimplicialComplex) -> String {
    let v = d.vertices();
    let facets = d
        .facets()
        .iter()
        .map(|&f| crate::bits::ones(f).map(|i| v.name(i).to_string()).collect())
        .collect();
    to_json(&ComplexJson { vertices: v.names().to_vec(), facets })
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let c: ComplexJson = from_json(text)?;
    SimplicialComplex::from_names(VariableSet::new(c.vertices)?, &c.facets)
}

#[derive(Serialize, Deserialize)]
struct FreeComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<Vec<String>>,
    ranks: Vec<usize>,
    multidegrees: Vec<Vec<Monomial>>,
    differentials: Vec<Vec<Entry>>,
}

fn vars_or_numbered(vars: Option<Vec<String>>, n: usize) -> Result<VariableSet> {
    match vars {
        Some(v) => VariableSet::new(v),
        None => VariableSet::numbered("x", n),
    }
}

pub fn free_complex_to_json(c: &FreeComplex) -> String {
    to_json(&FreeComplexJson {
        vars: Some(c.vars().names().to_vec()),
        ranks: c.ranks(),
        multidegrees: c.modules().to_vec(),
        differentials: c.differentials().to_vec(),
    })
}

/// Without a `vars` key, variables are `x1..xn` with `n` the exponent-vector length.
pub fn free_complex_from_json(text: &str) -> Result<FreeComplex> {
    let c: FreeComplexJson = from_json(text)?;
    let n = c.multidegrees.first().and_then(|m| m.first()).map_or(0, Monomial::len);
    if c.ranks != c.multidegrees.iter().map(Vec::len).collect::<Vec<_>>() {
        return Err(Error::Format("ranks do not match the multidegree lists".into()));
    }
    FreeComplex::new(vars_or_numbered(c.vars, n)?, c.multidegrees, c.differentials)
}

#[derive(Serialize, Deserialize)]
struct GradedBetti {
    i: usize,
    multidegree: Monomial,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<Vec<String>>,
    total: Vec<usize>,
    graded: Vec<GradedBetti>,
}

pub fn betti_to_json(table: &BettiTable, vars: &VariableSet) -> String {
    to_json(&BettiJson {
        vars: Some(vars.names().to_vec()),
        total: table.totals(),
        graded: table.graded().map(|(i, m, beta)| GradedBetti { i, multidegree: m.clone(), beta }).collect(),
    })
}

pub fn betti_from_json(text: &str) -> Result<BettiTable> {
    let b: BettiJson = from_json(text)?;
    let mut table = BettiTable::default();
    for g in b.graded {
        table.insert(g.i, g.multidegree, g.beta);
    }
    if table.totals() != b.total {
        return Err(Error::Format("totals do not match the graded entries".into()));
    }
    Ok(table)
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    vars: Vec<String>,
    labels: Vec<Monomial>,
    edges: Vec<(usize, usize)>,
}

pub fn tree_to_json(t: &LabeledComplex) -> String {
    to_json(&TreeJson { vars: t.vars().names().to_vec(), labels: t.labels().to_vec(), edges: t.edges() })
}

pub fn tree_from_json(text: &str) -> Result<LabeledComplex> {
    let t: TreeJson = from_json(text)?;
    LabeledComplex::graph(VariableSet::new(t.vars)?, t.labels, &t.edges)
}

/// Human-readable tree: one line per vertex, then one per edge with its lcm.
pub fn tree_to_text(t: &LabeledComplex) -> String {
    let mut out = String::new();
    for (i, l) in t.labels().iter().enumerate() {
        out.push_str(&format!("v{} {}\n", i + 1, t.fmt_mono(l)));
    }
    for ((a, b), l) in t.edges().into_iter().zip(edge_labels(t)) {
        out.push_str(&format!("v{} -- v{} {}\n", a + 1, b + 1, t.fmt_mono(&l)));
    }
    out
}

/// Graphviz DOT: vertices labeled by their monomials, edges by the lcm of their ends.
pub fn tree_to_dot(t: &LabeledComplex) -> String {
    let mut out = String::from("graph tree {\n");
    for (i, l) in t.labels().iter().enumerate() {
        out.push_str(&format!("  v{} [label=\"{}\"];\n", i + 1, t.fmt_mono(l)));
    }
    for ((a, b), l) in t.edges().into_iter().zip(edge_labels(t)) {
        out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", a + 1, b + 1, t.fmt_mono(&l)));
    }
    out.push_str("}\n");
    out
}

/// Dense text rendering of every differential of a free complex.
pub fn free_complex_to_text(c: &FreeComplex) -> String {
    let mut out = format!("ranks {:?}\n", c.ranks());
    for (deg, module) in c.modules().iter().enumerate().skip(1) {
        let degs: Vec<String> = module.iter().map(|m| m.display(c.vars()).to_string()).collect();
        out.push_str(&format!("F{deg} multidegrees: {}\n", degs.join(", ")));
    }
    for deg in 1..=c.length() {
        out.push_str(&format!("d{deg}:\n"));
        let rows = c.dense_strings(deg);
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&format!("  [ {} ]\n", cells.join("  ")));
        }
    }
    out
}
