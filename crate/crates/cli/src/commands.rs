use std::fmt::Write as _;

use brieskorn_core::idempotents::format_bits;
use brieskorn_core::{
    adc_certificate, build_e1, cz_brieskorn, delta_shift, idempotent_group, minimal_feasible_k,
    morse_bott_families, search_exponent_tuples, sh_bounds, AdcVerdict, Catalog, E1Page,
    ExponentTuple, GradedAlgebraF2, PageError, Window, ZeroColumnSpec, DEFAULT_DIM_CAP,
};
use num_rational::Rational64;

use crate::error::CliError;
use crate::tuple::{parse_tuple, parse_window};
use crate::{Command, Format, Inputs, EXIT_FAIL};

/// Rows of string cells rendered in one of the three formats.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Tsv => {
                writeln!(out, "{}", self.header.join("\t")).unwrap();
                for r in &self.rows {
                    writeln!(out, "{}", r.join("\t")).unwrap();
                }
            }
            Format::Records => {
                for r in &self.rows {
                    let fields: Vec<String> = self
                        .header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| format!("{h}={c}"))
                        .collect();
                    writeln!(out, "{}", fields.join("\t")).unwrap();
                }
            }
            Format::Pretty => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].chars().count())
                            .chain([self.header[i].chars().count()])
                            .max()
                            .unwrap()
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:>w$}"))
                        .collect();
                    padded.join("  ")
                };
                writeln!(out, "{}", line(self.header.clone())).unwrap();
                for r in &self.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
                }
            }
        }
        out
    }
}

pub fn execute(
    command: &Command,
    format: Format,
    inputs: &Inputs,
) -> Result<(String, i32), CliError> {
    match command {
        Command::Spectrum { tuple, pmax } => {
            spectrum(&parse_tuple(tuple)?, *pmax, format).map(|s| (s, 0))
        }
        Command::Adc { tuple } => Ok(adc(&parse_tuple(tuple)?, format)),
        Command::ShBounds {
            tuple,
            degree,
            window,
            ..
        } => {
            let (lo, hi) = match (degree, window) {
                (Some(d), _) => (*d, *d),
                (None, Some(w)) => parse_window(w)?,
                (None, None) => {
                    return Err(CliError::Input(
                        "sh-bounds needs --degree or --window".into(),
                    ))
                }
            };
            sh(&parse_tuple(tuple)?, lo, hi, inputs, format).map(|s| (s, 0))
        }
        Command::Idempotents { power, .. } => {
            let (path, text) = inputs.algebra.as_ref().expect("algebra file loaded");
            let alg = GradedAlgebraF2::parse(text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            idempotents(&alg, *power, format).map(|s| (s, 0))
        }
        Command::Search {
            k,
            bound,
            minimal_k,
        } => search(*k, *bound, *minimal_k, format).map(|s| (s, 0)),
    }
}

fn spectrum(a: &ExponentTuple, pmax: Option<i64>, format: Format) -> Result<String, CliError> {
    let pmax = pmax.unwrap_or_else(|| a.big_l());
    if pmax < 1 {
        return Err(CliError::Input(format!(
            "--pmax must be positive, got {pmax}"
        )));
    }
    let mut table = Table::new(vec!["p", "subtuple", "dim", "f_a", "delta"]);
    for fam in morse_bott_families(a, pmax) {
        table.row(vec![
            fam.period.to_string(),
            fam.subtuple.compact(),
            fam.dim.to_string(),
            cz_brieskorn(a, Rational64::from_integer(fam.period)).to_string(),
            delta_shift(a, &fam).to_string(),
        ]);
    }
    let mut out = String::new();
    if format == Format::Pretty {
        writeln!(
            out,
            "Morse–Bott families of Σ({}) with period ≤ {pmax}: {}",
            a.compact(),
            table.rows.len()
        )
        .unwrap();
    }
    out.push_str(&table.render(format));
    Ok(out)
}

fn adc(a: &ExponentTuple, format: Format) -> (String, i32) {
    let report = adc_certificate(a);
    let (verdict, reason, code) = match &report.verdict {
        AdcVerdict::Pass => ("PASS", String::new(), 0),
        AdcVerdict::Fail(r) => ("FAIL", r.clone(), EXIT_FAIL),
    };
    let dash = || "-".to_string();
    let m = report
        .min_index
        .map(|m| m.value.to_string())
        .unwrap_or_else(dash);
    let witness = report
        .min_index
        .map(|m| m.witness.to_string())
        .unwrap_or_else(dash);
    let m_pretty = match report.min_index {
        Some(mi) => format!("{} (at x = {})", mi.value, mi.witness),
        None => dash(),
    };
    let bound = report.bound.map(|b| b.to_string()).unwrap_or_else(dash);
    let out = match format {
        Format::Pretty => {
            let mut s = format!(
                "tuple      {}\nm(a)       {m_pretty}\nn          {}\nbound      {bound}\nverdict    {verdict}\n",
                a.compact(),
                report.n
            );
            if !reason.is_empty() {
                writeln!(s, "reason     {reason}").unwrap();
            }
            s
        }
        _ => {
            let mut t = Table::new(vec![
                "tuple",
                "min_index",
                "witness",
                "n",
                "bound",
                "verdict",
                "reason",
            ]);
            t.row(vec![
                a.compact(),
                m,
                witness,
                report.n.to_string(),
                bound,
                verdict.into(),
                reason,
            ]);
            t.render(format)
        }
    };
    (out, code)
}

fn catalog_from(inputs: &Inputs) -> Result<Catalog, CliError> {
    let mut catalog = Catalog::new();
    for (path, text) in &inputs.catalogs {
        catalog
            .load_str(text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    catalog.freeze();
    Ok(catalog)
}

fn page_error(e: PageError, inputs: &Inputs) -> CliError {
    match e {
        PageError::UnknownHomology(key, period) => CliError::CatalogGap {
            key: key.to_string(),
            message: format!(
                "no homology for sub-tuple {key} (Morse–Bott family at period {period})"
            ),
            hint: inputs
                .catalogs
                .last()
                .map(|(p, _)| p.display().to_string())
                .unwrap_or_else(|| "a catalog file passed with --catalog".into()),
        },
        other => CliError::Input(other.to_string()),
    }
}

fn sh(
    a: &ExponentTuple,
    lo: i64,
    hi: i64,
    inputs: &Inputs,
    format: Format,
) -> Result<String, CliError> {
    let catalog = catalog_from(inputs)?;
    let zero = match &inputs.zero_column {
        Some((path, text)) => ZeroColumnSpec::parse(text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => ZeroColumnSpec::zero(),
    };
    let mut table = Table::new(vec!["degree", "lower", "upper", "certified"]);
    for d in lo..=hi {
        let b = sh_bounds(a, d, &zero, &catalog).map_err(|e| page_error(e, inputs))?;
        let certified = if b.certified { "yes" } else { "no" };
        table.row(vec![
            d.to_string(),
            b.lower.to_string(),
            b.upper.to_string(),
            certified.into(),
        ]);
    }
    let page = build_e1(a, Window::new(lo - 1, hi + 1), &zero, &catalog)
        .map_err(|e| page_error(e, inputs))?;
    let mut out = String::new();
    if format == Format::Pretty {
        writeln!(
            out,
            "bounds on dim SH⁰_d of the quotient of Σ({})",
            a.compact()
        )
        .unwrap();
    }
    out.push_str(&table.render(format));
    out.push('\n');
    out.push_str(&render_page(&page, lo - 1, hi + 1, format));
    Ok(out)
}

fn render_page(page: &E1Page, lo: i64, hi: i64, format: Format) -> String {
    match format {
        Format::Tsv => page.to_tsv(),
        Format::Records => page.to_records(),
        Format::Pretty => {
            let mut out = format!("E¹ page, total degrees {lo}..{hi}:\n");
            for ((p, q), e) in page.entries() {
                writeln!(out, "  E¹[{p},{q}] = {}  ({})", e.dim, e.provenance).unwrap();
            }
            if page.entries().next().is_none() {
                out.push_str("  (empty)\n");
            }
            out
        }
    }
}

fn idempotents(
    alg: &GradedAlgebraF2,
    power: Option<usize>,
    format: Format,
) -> Result<String, CliError> {
    let mut out = String::new();
    match power {
        None => {
            let g = idempotent_group(alg, DEFAULT_DIM_CAP)?;
            let mut t = Table::new(vec!["dim", "size", "index"]);
            t.row(vec![
                alg.dim().to_string(),
                g.size.to_string(),
                (g.size / 2).to_string(),
            ]);
            out.push_str(&t.render(format));
            if alg.dim() <= 8 {
                let mut e = Table::new(vec!["element"]);
                for &x in &g.elements {
                    e.row(vec![format_bits(x, alg.dim())]);
                }
                out.push('\n');
                out.push_str(&e.render(format));
            }
        }
        Some(n) => {
            if n == 0 {
                return Err(CliError::Input("--power must be at least 1".into()));
            }
            let mut t = Table::new(vec!["i", "dim", "size", "index"]);
            for i in 1..=n {
                let ri = alg.power(i)?;
                let g = idempotent_group(&ri, DEFAULT_DIM_CAP)?;
                t.row(vec![
                    i.to_string(),
                    ri.dim().to_string(),
                    g.size.to_string(),
                    (g.size / 2).to_string(),
                ]);
            }
            out.push_str(&t.render(format));
        }
    }
    Ok(out)
}

fn search(k: Option<usize>, bound: i64, minimal: bool, format: Format) -> Result<String, CliError> {
    let mut t = Table::new(vec!["k", "tuple"]);
    let mut out = String::new();
    if minimal {
        let limit = k.unwrap_or(32);
        match minimal_feasible_k(bound, limit) {
            Some((k, found)) => {
                if format == Format::Pretty {
                    writeln!(out, "minimal feasible k = {k} (bound {bound})").unwrap();
                }
                for a in found {
                    t.row(vec![k.to_string(), a.compact()]);
                }
            }
            None => {
                if format == Format::Pretty {
                    writeln!(out, "no feasible k ≤ {limit} (bound {bound})").unwrap();
                }
            }
        }
    } else {
        let k = k.ok_or_else(|| CliError::Input("search needs --k (or --minimal-k)".into()))?;
        if k == 0 {
            return Err(CliError::Input("--k must be positive".into()));
        }
        let found = search_exponent_tuples(k, bound);
        if format == Format::Pretty {
            writeln!(out, "{} tuple(s) with k = {k}, bound {bound}", found.len()).unwrap();
        }
        for a in found {
            t.row(vec![k.to_string(), a.compact()]);
        }
    }
    out.push_str(&t.render(format));
    Ok(out)
}
