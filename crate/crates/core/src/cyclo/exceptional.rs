//! Totally real cyclotomic integers of normalized trace below 14/5 that are not
//! sums of at most two roots of unity (up to conjugation and sign).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ch::m_value;
use super::field::CycloInt;
use crate::polyzq::elementary::sqrt_interval;
use crate::polyzq::{isolate_real_roots, refine_interval, square_transform, DyadicInterval, IntPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalEntry {
    pub label: String,
    /// Largest absolute conjugate of β.
    pub house: DyadicInterval,
    #[serde(with = "crate::serde_util::rational")]
    pub m_value: BigRational,
    /// `[Q(β):Q]` as listed.
    pub degree: usize,
    pub conductor: u64,
    pub minpoly_beta: IntPolynomial,
    pub minpoly_beta2: IntPolynomial,
}

/// Closed-form definition of one entry: `(Σ c ζ_f^e) / den`.
pub struct ExceptionalDef {
    pub label: &'static str,
    pub f: u64,
    pub terms: &'static [(i64, i64)],
    pub den: i64,
    pub house: &'static str,
    pub m_value: (i64, i64),
    pub degree: usize,
}

const fn def(
    label: &'static str,
    f: u64,
    terms: &'static [(i64, i64)],
    house: &'static str,
    m_value: (i64, i64),
    degree: usize,
) -> ExceptionalDef {
    ExceptionalDef { label, f, terms, den: 1, house, m_value, degree }
}

/// The nineteen exceptional numbers, in increasing order of house.
pub const EXCEPTIONAL_DEFS: [ExceptionalDef; 19] = [
    // √3 = ζ^7 + ζ^-7 and √7 = -i Σ (a/7) ζ_7^a, both in Q(ζ_84)
    ExceptionalDef {
        label: "(√3 + √7)/2",
        f: 84,
        terms: &[(7, 1), (-7, 1), (75, 1), (87, 1), (111, 1), (99, -1), (123, -1), (135, -1)],
        den: 2,
        house: "2.188901",
        m_value: (5, 2),
        degree: 4,
    },
    def("1 + 2cos(2π/7)", 7, &[(0, 1), (1, 1), (-1, 1)], "2.246979", (2, 1), 3),
    def("ζ_12 + ζ_20 + ζ_20^17", 60, &[(5, 1), (3, 1), (51, 1)], "2.404867", (2, 1), 8),
    def("2cos(11π/42) + 2cos(13π/42)", 84, &[(11, 1), (-11, 1), (13, 1), (-13, 1)], "2.486985", (8, 3), 12),
    def("1 + 2cos(2π/11)", 11, &[(0, 1), (1, 1), (-1, 1)], "2.682507", (12, 5), 5),
    def("1 + 2cos(2π/13)", 13, &[(0, 1), (1, 1), (-1, 1)], "2.770912", (5, 2), 6),
    def("1 + 2cos(2π/17)", 17, &[(0, 1), (1, 1), (-1, 1)], "2.864944", (21, 8), 8),
    def("1 + 2cos(2π/19)", 19, &[(0, 1), (1, 1), (-1, 1)], "2.891634", (8, 3), 9),
    def("2cos(2π/35) + 2cos(12π/35)", 35, &[(1, 1), (-1, 1), (6, 1), (-6, 1)], "2.915596", (5, 2), 6),
    def("1 + 2cos(2π/23)", 23, &[(0, 1), (1, 1), (-1, 1)], "2.925834", (30, 11), 11),
    def("1 + 2cos(2π/29)", 29, &[(0, 1), (1, 1), (-1, 1)], "2.953241", (39, 14), 14),
    def("1 + 2cos(2π/30)", 30, &[(0, 1), (1, 1), (-1, 1)], "2.956295", (11, 4), 4),
    def("1 + 2cos(2π/60)", 60, &[(0, 1), (1, 1), (-1, 1)], "2.989043", (11, 4), 8),
    def("ζ_84^-9 + ζ_84^-7 + ζ_84^3 + ζ_84^15", 84, &[(-9, 1), (-7, 1), (3, 1), (15, 1)], "3.056668", (5, 2), 12),
    def("2cos(6π/55) + 2cos(16π/55)", 55, &[(3, 1), (-3, 1), (8, 1), (-8, 1)], "3.104984", (27, 10), 10),
    def("2cos(8π/65) + 2cos(18π/65)", 65, &[(4, 1), (-4, 1), (9, 1), (-9, 1)], "3.142033", (11, 4), 12),
    def("2cos(11π/70) + 2cos(17π/70)", 140, &[(11, 1), (-11, 1), (17, 1), (-17, 1)], "3.206780", (8, 3), 24),
    def("2cos(37π/210) + 2cos(47π/210)", 420, &[(37, 1), (-37, 1), (47, 1), (-47, 1)], "3.227019", (11, 4), 24),
    def("2cos(π/42) + 2cos(11π/42)", 84, &[(1, 1), (-1, 1), (11, 1), (-11, 1)], "3.354753", (8, 3), 12),
];

impl ExceptionalDef {
    pub fn numerator(&self) -> CycloInt {
        CycloInt::from_terms(self.f, self.terms)
    }

    /// Minimal polynomial of β, from the numerator's by `x ↦ den·x`.
    pub fn minpoly_beta(&self) -> IntPolynomial {
        let q = self.numerator().minpoly();
        if self.den == 1 {
            return q;
        }
        let scaled = q.compose(&IntPolynomial::from_i64(&[0, self.den]));
        scaled.primitive_part()
    }

    /// Derives the full entry by exact cyclotomic expansion.
    pub fn derive(&self) -> ExceptionalEntry {
        let minpoly_beta = self.minpoly_beta();
        let minpoly_beta2 = square_transform(&minpoly_beta);
        let m = m_value(&minpoly_beta2).expect("β² is an algebraic integer");
        ExceptionalEntry {
            label: self.label.to_string(),
            house: house_of(&minpoly_beta2, 64),
            m_value: m,
            degree: self.degree,
            conductor: self.f,
            minpoly_beta,
            minpoly_beta2,
        }
    }

    pub fn printed_m_value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.m_value.0), BigInt::from(self.m_value.1))
    }
}

/// Square root of the largest root of a polynomial with nonnegative real roots.
fn house_of(minpoly_beta2: &IntPolynomial, bits: u32) -> DyadicInterval {
    let top = isolate_real_roots(minpoly_beta2).pop().expect("real roots");
    let iv = refine_interval(&top.factor, &top.interval, bits + 4);
    sqrt_interval(&iv, bits).expect("nonnegative")
}

/// Derives all nineteen entries.
pub fn derive_exceptional_list() -> Vec<ExceptionalEntry> {
    EXCEPTIONAL_DEFS.iter().map(ExceptionalDef::derive).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entry() {
        let e = EXCEPTIONAL_DEFS[0].derive();
        assert_eq!(e.minpoly_beta2, IntPolynomial::from_i64(&[1, -5, 1]));
        assert_eq!(e.minpoly_beta.deg(), 4);
        assert!((e.house.to_f64().0 - 2.188901).abs() < 1e-6);
    }

    #[test]
    fn table_matches_printed_columns() {
        for d in EXCEPTIONAL_DEFS.iter() {
            let e = d.derive();
            let printed = crate::polyzq::dyadic::parse_decimal(d.house).unwrap();
            let ulp = BigRational::new(1.into(), 1_000_000.into());
            let h = e.house.lo.to_rational();
            assert!(printed <= h && h < printed + ulp, "{}", d.label);
            assert_eq!(e.m_value, d.printed_m_value(), "{}", d.label);
            assert_eq!(e.minpoly_beta.deg(), d.degree, "{}", d.label);
        }
    }
}
