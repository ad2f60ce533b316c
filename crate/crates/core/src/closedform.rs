//! Closed formulas for the Omega polynomial, CI index and counts of the
//! multi-torus families, plus a harness comparing them with graph-level
//! computation.
//!
//! The evaluators here use only the net parameters; nothing is shared with
//! the graph engine except the polynomial container.

use std::fmt;

use thiserror::Error;

use crate::assembly::{AssemblyError, StructureParams};
use crate::omega::{self, OmegaError, OmegaPolynomial};
use crate::polymap::genus_pentagonal;

/// Double and triple joints of the twelve-unit array.
pub const MT_DOUBLE_JOINTS: u64 = 30;
pub const MT_TRIPLE_JOINTS: u64 = 20;
pub const MT_UNITS: u64 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("no closed formula at rmax={0} (only 5 and 6)")]
    UnsupportedRmax(usize),
    #[error(transparent)]
    Params(#[from] AssemblyError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

fn check(params: &StructureParams, rmax: usize) -> Result<(), ClosedFormError> {
    params.validate()?;
    if rmax != 5 && rmax != 6 {
        return Err(ClosedFormError::UnsupportedRmax(rmax));
    }
    Ok(())
}

pub fn omega_closed(
    params: &StructureParams,
    rmax: usize,
) -> Result<OmegaPolynomial, ClosedFormError> {
    check(params, rmax)?;
    let terms: Vec<(u64, u64)> = match (*params, rmax) {
        (StructureParams::Dendrimer { m, r }, 5) => {
            let (m, r) = (m as u64, r as u64);
            vec![(1, 36 * m - 3 * (m + r - 1))]
        }
        (StructureParams::Dendrimer { m, r }, _) => {
            let (m, r) = (m as u64, r as u64);
            vec![(1, 24 * m - 3 * (m + r - 1)), (3, 4 * m)]
        }
        (StructureParams::ULinear { u }, 5) => vec![(1, 465 * u as u64 + 165)],
        (StructureParams::ULinear { u }, _) => {
            let u = u as u64;
            vec![(1, 285 * u + 105), (3, 60 * u + 20)]
        }
        (StructureParams::UCyclic { u }, 5) => vec![(1, 465 * u as u64)],
        (StructureParams::UCyclic { u }, _) => {
            let u = u as u64;
            vec![(1, 285 * u), (3, 60 * u)]
        }
        (StructureParams::MT12U, 5) => vec![(1, 133 * MT_DOUBLE_JOINTS)],
        (StructureParams::MT12U, _) => vec![(1, 81 * MT_DOUBLE_JOINTS), (3, 26 * MT_TRIPLE_JOINTS)],
    };
    Ok(OmegaPolynomial::from_terms(terms)?)
}

/// CI from the factored closed forms. The twelve-unit array has no factored
/// form, so its value is evaluated directly from the closed polynomial.
pub fn ci_closed(params: &StructureParams, rmax: usize) -> Result<u64, ClosedFormError> {
    check(params, rmax)?;
    let value = match (*params, rmax) {
        (StructureParams::Dendrimer { m, r }, 5) => {
            let (m, r) = (m as u64, r as u64);
            3 * (11 * m + 1 - r) * (33 * m + 2 - 3 * r)
        }
        (StructureParams::Dendrimer { m, r }, _) => {
            let (m, r) = (m as u64, r as u64);
            (33 * m + 3 - 3 * r).pow(2) - 3 * (19 * m + 1 - r)
        }
        (StructureParams::ULinear { u }, 5) => {
            let u = u as u64;
            15 * (31 * u + 11) * (465 * u + 164)
        }
        (StructureParams::ULinear { u }, _) => {
            let u = u as u64;
            (465 * u + 165).pow(2) - 825 * u - 285
        }
        (StructureParams::UCyclic { u }, 5) => {
            let u = u as u64;
            465 * u * (465 * u - 1)
        }
        (StructureParams::UCyclic { u }, _) => {
            let u = u as u64;
            75 * u * (2883 * u - 11)
        }
        (StructureParams::MT12U, _) => {
            // e² - Σ m·s² over the closed polynomial
            let p = omega_closed(params, rmax)?;
            let e: u64 = p.terms().map(|(s, m)| s * m).sum();
            let sq: u64 = p.terms().map(|(s, m)| s * s * m).sum();
            e * e - sq
        }
    };
    Ok(value)
}

/// Published vertex count that disagrees with the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountNote {
    pub quantity: &'static str,
    pub published_formula: &'static str,
    pub published: u64,
    pub constructed_formula: &'static str,
    pub constructed: u64,
}

impl fmt::Display for CountNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "published {} = {} gives {}; the construction gives {} = {}",
            self.quantity,
            self.published_formula,
            self.published,
            self.constructed_formula,
            self.constructed
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedCounts {
    pub tt: u64,
    pub v: u64,
    pub note: Option<CountNote>,
}

/// Monomer and atom counts from the net parameters.
///
/// For cyclic arrays the published `v = 256u` contradicts the monomer and
/// edge counts; `255u` is returned and the published value is attached as a
/// note.
pub fn counts_closed(params: &StructureParams) -> Result<ClosedCounts, ClosedFormError> {
    params.validate()?;
    let counts = match *params {
        StructureParams::Dendrimer { m, .. } => {
            let m = m as u64;
            let v = if m <= 11 { 19 * m + 3 } else { 16 * m + 36 };
            ClosedCounts {
                tt: m,
                v,
                note: None,
            }
        }
        StructureParams::ULinear { u } => {
            let u = u as u64;
            ClosedCounts {
                tt: 20 * u - 5 * (u - 1),
                v: 255 * u + 95,
                note: None,
            }
        }
        StructureParams::UCyclic { u } => {
            let u = u as u64;
            ClosedCounts {
                tt: 20 * u - 5 * u,
                v: 255 * u,
                note: Some(CountNote {
                    quantity: "v",
                    published_formula: "256u",
                    published: 256 * u,
                    constructed_formula: "255u",
                    constructed: 255 * u,
                }),
            }
        }
        StructureParams::MT12U => {
            let tt = 20 * MT_UNITS - (5 * MT_DOUBLE_JOINTS - 2 * MT_TRIPLE_JOINTS);
            ClosedCounts {
                tt,
                v: 5 * (5 * tt - 18 * MT_UNITS),
                note: None,
            }
        }
    };
    Ok(counts)
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub quantity: &'static str,
    pub graph: String,
    pub closed: String,
}

impl Comparison {
    fn new(quantity: &'static str, graph: impl ToString, closed: impl ToString) -> Self {
        Comparison {
            quantity,
            graph: graph.to_string(),
            closed: closed.to_string(),
        }
    }

    pub fn agrees(&self) -> bool {
        self.graph == self.closed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub params: StructureParams,
    pub rmax: usize,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<CountNote>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(Comparison::agrees)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.agrees())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} rmax={}", self.params, self.rmax)?;
        for c in &self.comparisons {
            let mark = if c.agrees() { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "  {:<8} graph={} closed={} {}",
                c.quantity, c.graph, c.closed, mark
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {}", n)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Builds the structure, computes everything on its graph and compares with
/// the closed forms.
pub fn cross_validate(
    params: &StructureParams,
    rmax: usize,
) -> Result<ValidationReport, ClosedFormError> {
    check(params, rmax)?;
    let map = params.assemble()?;
    let summary = map.summary();
    let graph = map.graph();
    let poly = omega::omega(&graph, rmax)?;
    let ci = omega::ci(&poly)?;

    let closed_poly = omega_closed(params, rmax)?;
    let closed_ci = ci_closed(params, rmax)?;
    let counts = counts_closed(params)?;
    let closed_e: u64 = closed_poly.terms().map(|(s, m)| s * m).sum();
    let closed_f5 = 12 * counts.tt;
    let closed_genus = genus_pentagonal(counts.v as i64, closed_e as i64, closed_f5 as i64)
        .map_err(AssemblyError::from)?;
    let tt = params.skeleton()?.vertex_count();
    let graph_genus = summary
        .genus_pentagonal
        .map_or_else(|| "odd".to_string(), |g| g.to_string());

    let comparisons = vec![
        Comparison::new("tt", tt, counts.tt),
        Comparison::new("v", summary.v, counts.v),
        Comparison::new("e", summary.e, closed_e),
        Comparison::new("f5", summary.f5, closed_f5),
        Comparison::new("genus", graph_genus, closed_genus),
        Comparison::new("omega", &poly, &closed_poly),
        Comparison::new("ci", ci, closed_ci),
    ];
    Ok(ValidationReport {
        params: *params,
        rmax,
        comparisons,
        notes: counts.note.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u64, u64)]) -> OmegaPolynomial {
        OmegaPolynomial::from_terms(terms.iter().copied()).unwrap()
    }

    #[test]
    fn table_examples() {
        let m4 = StructureParams::Dendrimer { m: 4, r: 0 };
        assert_eq!(omega_closed(&m4, 5).unwrap(), poly(&[(1, 135)]));
        assert_eq!(
            omega_closed(&StructureParams::ULinear { u: 3 }, 6).unwrap(),
            poly(&[(1, 960), (3, 200)])
        );
        assert_eq!(
            omega_closed(&StructureParams::MT12U, 5).unwrap(),
            poly(&[(1, 3990)])
        );
        assert_eq!(
            ci_closed(&StructureParams::Dendrimer { m: 3, r: 0 }, 5),
            Ok(10302)
        );
        assert_eq!(
            ci_closed(&StructureParams::ULinear { u: 4 }, 5),
            Ok(4098600)
        );
        assert_eq!(
            ci_closed(&StructureParams::UCyclic { u: 6 }, 6),
            Ok(7779150)
        );
        assert_eq!(ci_closed(&StructureParams::MT12U, 6), Ok(15912990));
        assert_eq!(ci_closed(&StructureParams::MT12U, 5), Ok(15916110));
    }

    #[test]
    fn count_examples() {
        let c = counts_closed(&StructureParams::ULinear { u: 4 }).unwrap();
        assert_eq!((c.tt, c.v), (65, 1115));
        let mt = counts_closed(&StructureParams::MT12U).unwrap();
        assert_eq!((mt.tt, mt.v), (130, 2170));
        let m1 = counts_closed(&StructureParams::Dendrimer { m: 1, r: 0 }).unwrap();
        assert_eq!((m1.tt, m1.v), (1, 22));
        let cyc = counts_closed(&StructureParams::UCyclic { u: 6 }).unwrap();
        assert_eq!((cyc.tt, cyc.v), (90, 1530));
        assert_eq!(cyc.note.unwrap().published, 1536);
    }

    #[test]
    fn unsupported_rmax() {
        assert_eq!(
            omega_closed(&StructureParams::MT12U, 7),
            Err(ClosedFormError::UnsupportedRmax(7))
        );
        assert!(ci_closed(&StructureParams::UCyclic { u: 5 }, 5).is_err());
    }

    #[test]
    fn factored_ci_matches_polynomial() {
        let mut all = vec![StructureParams::MT12U];
        all.extend((1..=17).map(StructureParams::dendrimer));
        all.extend((1..=40).map(|u| StructureParams::ULinear { u }));
        all.extend((6..=40).map(|u| StructureParams::UCyclic { u }));
        for p in all {
            for rmax in [5, 6] {
                let poly = omega_closed(&p, rmax).unwrap();
                assert_eq!(
                    ci_closed(&p, rmax).unwrap(),
                    omega::ci(&poly).unwrap(),
                    "{} rmax={}",
                    p,
                    rmax
                );
            }
            let e5 = omega::derivative_at_one(&omega_closed(&p, 5).unwrap(), 1).unwrap();
            let e6 = omega::derivative_at_one(&omega_closed(&p, 6).unwrap(), 1).unwrap();
            assert_eq!(e5, e6, "{}", p);
        }
    }

    #[test]
    fn small_structures_validate() {
        for rmax in [5, 6] {
            let report = cross_validate(&StructureParams::dendrimer(5), rmax).unwrap();
            assert!(report.passed(), "{}", report);
        }
    }
}
