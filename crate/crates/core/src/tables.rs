//! Classification tables: solver output next to closed forms.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::poly::CubicPoly;
use crate::sphere::IsoparametricFamily;
use crate::verify::{certified_root, family_roots, scal_rows};
use crate::{Error, Result};

pub const THEOREMS: [&str; 4] = ["thm2", "thm3", "thm4", "thm5-scal"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub hypersurface: String,
    pub quantity: String,
    pub computed: f64,
    pub relation: Relation,
    pub reference: f64,
    pub reference_form: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub theorem: String,
    pub ambient: String,
    pub rows: Vec<TableRow>,
}

fn row(h: &str, q: &str, computed: f64, reference: f64, form: &str) -> TableRow {
    TableRow {
        hypersurface: h.into(),
        quantity: q.into(),
        computed,
        relation: Relation::Equal,
        reference,
        reference_form: form.into(),
    }
}

pub fn table(theorem: &str) -> Result<Table> {
    let (ambient, rows) = match theorem {
        "thm2" => ("S3", sphere_rows(2)?),
        "thm3" => ("S4", sphere_rows(3)?),
        "thm4" => ("S5", sphere_rows(4)?),
        "thm5-scal" => ("S5", scal_table()?),
        other => return Err(Error::UnknownTheorem(other.to_string())),
    };
    Ok(Table {
        theorem: theorem.into(),
        ambient: ambient.into(),
        rows,
    })
}

fn hypersphere_rows(m: u32) -> Result<Vec<TableRow>> {
    let fam = IsoparametricFamily::new(1, m, 0)?;
    let roots = family_roots(&fam)?;
    let geodesic = roots.iter().copied().find(|s| (s - PI / 2.0).abs() < 1e-9);
    let small = roots.iter().copied().find(|&s| s < PI / 2.0 - 1e-9);
    let (small_ref, form) = match m {
        2 => (1.0 / 3f64.sqrt(), "1/sqrt3"),
        3 => (0.5f64.sqrt(), "1/sqrt2"),
        _ => (3f64.sqrt() / 2.0, "sqrt3/2"),
    };
    Ok(vec![
        row(
            &format!("S{m} totally geodesic"),
            "radius",
            geodesic.map_or(f64::NAN, f64::sin),
            1.0,
            "1",
        ),
        row(
            &format!("S{m}({form})"),
            "radius",
            small.map_or(f64::NAN, f64::sin),
            small_ref,
            form,
        ),
    ])
}

/// Squared radii at the solver root whose r₁² is nearest the closed form.
fn torus_rows(label: &str, m1: u32, m2: u32, r1_sq: f64, forms: (&str, &str)) -> Result<Vec<TableRow>> {
    let fam = IsoparametricFamily::new(2, m1, m2)?;
    let roots = family_roots(&fam)?;
    let gap = |s: f64| (s.sin().powi(2) - r1_sq).abs();
    let s = roots
        .iter()
        .copied()
        .min_by(|a, b| gap(*a).total_cmp(&gap(*b)))
        .unwrap_or(f64::NAN);
    let (a, b) = if s.is_nan() {
        (f64::NAN, f64::NAN)
    } else {
        fam.torus_radii(s)?
    };
    Ok(vec![
        row(label, "r1^2", a, r1_sq, forms.0),
        row(label, "r2^2", b, 1.0 - r1_sq, forms.1),
    ])
}

fn cubic_r1_sq(p: &CubicPoly) -> Result<f64> {
    let t = certified_root(p, 0, 100, 1e-14)?.refined_value;
    Ok(t / (1.0 + t))
}

fn minimal_row(label: &str, ell: u32, mult: u32, s_ref: f64, form: &str) -> Result<TableRow> {
    let roots = family_roots(&IsoparametricFamily::uniform(ell, mult)?)?;
    let s = if roots.len() == 1 { roots[0] } else { f64::NAN };
    Ok(row(label, "s", s, s_ref, form))
}

fn sphere_rows(m: u32) -> Result<Vec<TableRow>> {
    let mut rows = hypersphere_rows(m)?;
    match m {
        2 => rows.extend(torus_rows("S1(1/sqrt2)xS1(1/sqrt2)", 1, 1, 0.5, ("1/2", "1/2"))?),
        3 => {
            rows.extend(torus_rows(
                "S1xS2",
                1,
                2,
                cubic_r1_sq(&CubicPoly::s1_s2_cubic())?,
                ("T/(1+T), 8T^3-32T^2+11T-3=0", "1/(1+T)"),
            )?);
            rows.push(minimal_row("degree-3 minimal", 3, 1, PI / 6.0, "pi/6")?);
        }
        _ => {
            rows.extend(torus_rows("S2(1/sqrt2)xS2(1/sqrt2)", 2, 2, 0.5, ("1/2", "1/2"))?);
            let r = 0.5 * (1.0 - 1.0 / 3f64.sqrt());
            rows.extend(torus_rows(
                "S2xS2 non-minimal",
                2,
                2,
                r,
                ("(1-1/sqrt3)/2", "(1+1/sqrt3)/2"),
            )?);
            rows.extend(torus_rows(
                "S1xS3",
                1,
                3,
                cubic_r1_sq(&CubicPoly::p3())?,
                ("T/(1+T), 9T^3-19T^2+3T-1=0", "1/(1+T)"),
            )?);
            rows.push(minimal_row("degree-4 minimal", 4, 1, PI / 8.0, "pi/8")?);
        }
    }
    Ok(rows)
}

fn scal_table() -> Result<Vec<TableRow>> {
    Ok(scal_rows()?
        .into_iter()
        .map(|(label, computed, reference)| {
            if label == "S1xS3" {
                TableRow {
                    relation: Relation::AtLeast,
                    ..row(label, "Scal", computed, reference, "5+16H^2")
                }
            } else {
                row(label, "Scal", computed, reference, &format!("{reference}"))
            }
        })
        .collect())
}

impl Table {
    /// Largest |computed − reference| over the equality rows.
    pub fn max_deviation(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.relation == Relation::Equal)
            .map(|r| (r.computed - r.reference).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.theorem, self.ambient);
        let _ = writeln!(
            out,
            "{:<26} {:<6} {:>18}    {:>18}  form",
            "hypersurface", "qty", "computed", "reference"
        );
        for r in &self.rows {
            let rel = match r.relation {
                Relation::Equal => "=",
                Relation::AtLeast => ">=",
            };
            let _ = writeln!(
                out,
                "{:<26} {:<6} {:>18.12} {:<2} {:>18.12}  {}",
                r.hypersurface, r.quantity, r.computed, rel, r.reference, r.reference_form
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_match_closed_forms() {
        for id in THEOREMS {
            let t = table(id).unwrap();
            assert!(!t.rows.is_empty());
            assert!(t.max_deviation() < 1e-9, "{id}: {}", t.to_text());
            for r in &t.rows {
                assert!(r.computed.is_finite(), "{id}: {}", r.hypersurface);
                if r.relation == Relation::AtLeast {
                    assert!(r.computed >= r.reference);
                }
            }
        }
    }

    #[test]
    fn unknown_theorem() {
        assert_eq!(table("thm9").unwrap_err().code(), "UNKNOWN_THEOREM");
    }

    #[test]
    fn text_has_one_line_per_row() {
        let t = table("thm5-scal").unwrap();
        assert_eq!(t.to_text().lines().count(), t.rows.len() + 2);
    }
}
