//! Per-graph classification records.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclo::CyclotomicExpression;
use crate::polyzq::{DyadicInterval, IntPolynomial};

/// What was classified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subject {
    ThreeSpider { a: u32, b: u32, c: u32 },
    Morrison { a: u32, b: u32 },
    /// Any other spider: base vertex count, attachment points and legs.
    Spider { base: usize, attach: Vec<usize>, legs: Vec<u32> },
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::ThreeSpider { a, b, c } => write!(f, "({a},{b},{c})"),
            Subject::Morrison { a, b } => write!(f, "morrison({a},{b})"),
            Subject::Spider { base, attach, legs } => write!(f, "spider(base={base}, at={attach:?}, legs={legs:?})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotAbelianKind {
    /// A prime whose factorization pattern is not uniform.
    NotGalois { prime: u64, degrees: Vec<usize> },
    /// Every admissible conductor was refuted.
    ConductorsRefuted { reason: String },
    /// `D` is too large for `M(λ² - 2) ≥ 14/5`, and `λ² - 2` is not exceptional.
    Degree { degree: usize, threshold: usize },
    /// The Morrison window excludes every exceptional value.
    Window,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Dynkin,
    AffineDynkin,
    Abelian(CyclotomicExpression),
    NotAbelian(NotAbelianKind),
    Unknown { reason: String },
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::Dynkin => "Dynkin".into(),
            Verdict::AffineDynkin => "AffineDynkin".into(),
            Verdict::Abelian(e) => format!("Abelian(f={})", e.conductor),
            Verdict::NotAbelian(k) => match k {
                NotAbelianKind::NotGalois { prime, .. } => format!("NotAbelian(not Galois mod {prime})"),
                NotAbelianKind::ConductorsRefuted { .. } => "NotAbelian(conductors refuted)".into(),
                NotAbelianKind::Degree { degree, .. } => format!("NotAbelian(degree {degree})"),
                NotAbelianKind::Window => "NotAbelian(window)".into(),
            },
            Verdict::Unknown { .. } => "Unknown".into(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, Verdict::Dynkin | Verdict::AffineDynkin | Verdict::Abelian(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }
}

/// Which step decided the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// `λ ≤ 2` from the shape of the graph.
    Spectrum,
    /// Degree of the non-cyclotomic part of the numerator in `t`, and `D`.
    DegreeObstruction { t_degree: usize, degree: usize },
    ExceptionalList { label: String },
    AbelianCheck,
    /// Morrison pairs with both legs `≥ 56`.
    MorrisonBounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub subject: Subject,
    /// Enclosure of λ.
    pub pf_interval: DyadicInterval,
    /// Minimal polynomial of λ²; absent when a bound decided the verdict.
    pub lambda2_minpoly: Option<IntPolynomial>,
    /// `M(λ² - 2)`.
    #[serde(with = "crate::serde_util::rational_opt")]
    pub m_value: Option<BigRational>,
    /// `[Q(λ²):Q]`.
    pub degree: Option<usize>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl ClassificationRecord {
    /// One CSV line: subject, λ interval, verdict, provenance.
    pub fn csv_row(&self) -> String {
        let (lo, hi) = self.pf_interval.to_f64();
        let subject = match &self.subject {
            Subject::ThreeSpider { a, b, c } => format!("{a},{b},{c}"),
            Subject::Morrison { a, b } => format!("{a},{b},"),
            other => format!("\"{other}\",,"),
        };
        let prov = match &self.provenance {
            Provenance::Spectrum => "spectrum".to_string(),
            Provenance::DegreeObstruction { t_degree, degree } => format!("degree(t={t_degree};D={degree})"),
            Provenance::ExceptionalList { label } => format!("exceptional({label})"),
            Provenance::AbelianCheck => "abelian_check".to_string(),
            Provenance::MorrisonBounds => "morrison_bounds".to_string(),
        };
        format!("{subject},{lo:.9},{hi:.9},{},{}", self.verdict.label(), prov.replace(',', ";"))
    }
}

pub const CSV_HEADER: &str = "a,b,c,lambda_lo,lambda_hi,verdict,provenance";
