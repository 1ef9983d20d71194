//! The 3-spider engine: every `(a,b,c)` inside the caps, one record each.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_bigint::BigInt;

use super::pipeline::{decide_beta, record_for_beta, select_factor, DegreeRule};
use super::record::{ClassificationRecord, Provenance, Subject, Verdict, CSV_HEADER};
use super::rho::{lambda2_from_rho2, star_class, three_spider_rho2};
use super::tables::BoundTable;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::par;
use crate::polyzq::{
    largest_real_root, laurent_descend, real_cyclotomic, strip_cyclotomic, AlgebraicNumber, Dyadic, IntPolynomial,
};

/// Which triples to run.
#[derive(Clone, Debug)]
pub enum Scope {
    /// `1 ≤ a ≤ b ≤ c ≤ c_max`.
    Desk { c_max: u32 },
    /// Everything the caps admit. Pairs without a `c` cap only have Dynkin
    /// members and are cut at the table's `c_max`.
    Certified(BoundTable),
    Triples(Vec<(u32, u32, u32)>),
}

impl Scope {
    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        match self {
            Scope::Desk { c_max } => {
                let n = *c_max;
                (1..=n).flat_map(|a| (a..=n).flat_map(move |b| (b..=n).map(move |c| (a, b, c)))).collect()
            }
            Scope::Certified(t) => {
                let mut out = Vec::new();
                for (&a, &bm) in &t.rows {
                    for b in a..=bm {
                        let cm = t.c_rows.get(&(a, b)).copied().unwrap_or(t.c_max);
                        out.extend((b..=cm).map(|c| (a, b, c)));
                    }
                }
                out
            }
            Scope::Triples(v) => v.iter().map(|&(a, b, c)| sorted(a, b, c)).collect(),
        }
    }
}

fn sorted(a: u32, b: u32, c: u32) -> (u32, u32, u32) {
    let mut l = [a, b, c];
    l.sort_unstable();
    (l[0], l[1], l[2])
}

/// Coxeter number of the Dynkin diagram `(a,b,c)`, `a ≤ b ≤ c`.
fn coxeter_number(a: u32, b: u32, c: u32) -> Option<u64> {
    match (a, b, c) {
        (0, b, c) => Some(b as u64 + c as u64 + 2),
        (1, 1, c) => Some(2 * c as u64 + 4),
        (1, 2, 2) => Some(12),
        (1, 2, 3) => Some(18),
        (1, 2, 4) => Some(30),
        _ => None,
    }
}

/// Classifies one 3-spider.
pub fn classify_triple(a: u32, b: u32, c: u32, budget: &Budget) -> Result<ClassificationRecord> {
    let (a, b, c) = sorted(a, b, c);
    let subject = Subject::ThreeSpider { a, b, c };
    match star_class(a, b, c) {
        Ordering::Less => {
            // λ = 2cos(π/h), so λ² - 2 = 2cos(2π/h)
            let h = coxeter_number(a, b, c).ok_or_else(|| Error::Precondition(format!("{subject} is not Dynkin")))?;
            let m = real_cyclotomic(h);
            let (_, iv) = largest_real_root(&m).expect("Ψ_h has real roots");
            record_for_beta(subject, &AlgebraicNumber::new(m, iv)?, Verdict::Dynkin, Provenance::Spectrum)
        }
        Ordering::Equal => {
            let two = AlgebraicNumber::new(IntPolynomial::from_i64(&[-2, 1]), crate::polyzq::DyadicInterval::from_ints(2, 2))?;
            record_for_beta(subject, &two, Verdict::AffineDynkin, Provenance::Spectrum)
        }
        Ordering::Greater => hyperbolic(subject, a, b, c, budget),
    }
}

fn hyperbolic(subject: Subject, a: u32, b: u32, c: u32, budget: &Budget) -> Result<ClassificationRecord> {
    let v = crate::spider::three_spider_v(a, b, c).to_dense();
    let (mut w, _) = strip_cyclotomic(&v);
    if w.leading() < BigInt::from(0) {
        w = -w;
    }
    let t_degree = 2 * w.deg();
    let g = laurent_descend(&w)?;
    let beta = select_factor(&g, |bits| {
        let u = three_spider_rho2(a, b, c, bits + 8).expect("hyperbolic");
        lambda2_from_rho2(&u, bits + 8).add_dyadic(&Dyadic::from_int(-2), bits)
    })?;
    let rule = DegreeRule::AtLeast(super::pipeline::three_spider_degree_threshold());
    let (verdict, provenance) = decide_beta(&beta, 1, t_degree, rule, budget)?;
    record_for_beta(subject, &beta, verdict, provenance)
}

/// Append-only JSON-lines journal keyed by subject; a rerun skips what is already there.
pub struct Journal {
    file: File,
    done: Vec<ClassificationRecord>,
}

impl Journal {
    pub fn open(path: &Path) -> Result<Journal> {
        let mut done = Vec::new();
        let mut seen = BTreeSet::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                // a torn last line from an interrupted run is dropped
                let Ok(r) = serde_json::from_str::<ClassificationRecord>(&line) else { continue };
                if seen.insert(r.subject.clone()) {
                    done.push(r);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Journal { file, done })
    }

    pub fn records(&self) -> &[ClassificationRecord] {
        &self.done
    }

    pub fn contains(&self, s: &Subject) -> bool {
        self.done.iter().any(|r| &r.subject == s)
    }

    pub fn append(&mut self, r: &ClassificationRecord) -> Result<()> {
        writeln!(self.file, "{}", serde_json::to_string(r)?)?;
        self.file.flush()?;
        self.done.push(r.clone());
        Ok(())
    }
}

/// Runs every triple in `scope`, in chunks of one `a` at a time so the journal
/// advances steadily. Records come back sorted by `(a,b,c)`.
pub fn classify_three_spiders(scope: &Scope, budget: &Budget, journal: Option<&mut Journal>) -> Result<Vec<ClassificationRecord>> {
    let mut todo = scope.triples();
    todo.sort_unstable();
    todo.dedup();
    let mut out: Vec<ClassificationRecord> = Vec::new();
    let mut journal = journal;
    if let Some(j) = journal.as_deref() {
        let seen: BTreeSet<Subject> = j.records().iter().map(|r| r.subject.clone()).collect();
        todo.retain(|&(a, b, c)| {
            let s = Subject::ThreeSpider { a, b, c };
            if seen.contains(&s) {
                out.extend(j.records().iter().filter(|r| r.subject == s).cloned());
                false
            } else {
                true
            }
        });
    }
    let mut by_a: Vec<Vec<(u32, u32, u32)>> = Vec::new();
    for t in todo {
        match by_a.last_mut() {
            Some(v) if v[0].0 == t.0 => v.push(t),
            _ => by_a.push(vec![t]),
        }
    }
    for chunk in by_a {
        let recs = par::map(budget.mode, chunk, |(a, b, c)| classify_triple(a, b, c, budget));
        for r in recs {
            let r = r?;
            if let Some(j) = journal.as_deref_mut() {
                j.append(&r)?;
            }
            out.push(r);
        }
    }
    out.sort_by(|x, y| x.subject.cmp(&y.subject));
    Ok(out)
}

/// The non-Dynkin records with an abelian verdict.
pub fn abelian_hyperbolic(records: &[ClassificationRecord]) -> Vec<&ClassificationRecord> {
    records.iter().filter(|r| matches!(r.verdict, Verdict::Abelian(_))).collect()
}

pub fn write_csv(records: &[ClassificationRecord], w: &mut impl Write) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::record::NotAbelianKind;
    use crate::classify::pipeline::check_spider;
    use crate::spider::SpiderSpec;

    fn lambda2(r: &ClassificationRecord) -> f64 {
        let (lo, hi) = r.pf_interval.to_f64();
        (lo * lo + hi * hi) / 2.0
    }

    #[test]
    fn dynkin_values() {
        let b = Budget::default();
        // E8: λ = 2cos(π/30)
        let r = classify_triple(1, 2, 4, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Dynkin);
        assert!((r.pf_interval.to_f64().0 - 2.0 * (std::f64::consts::PI / 30.0).cos()).abs() < 1e-12);
        let r = classify_triple(3, 1, 1, &b).unwrap();
        assert!((r.pf_interval.to_f64().0 - 2.0 * (std::f64::consts::PI / 10.0).cos()).abs() < 1e-12);
        assert_eq!(classify_triple(2, 2, 2, &b).unwrap().verdict, Verdict::AffineDynkin);
    }

    #[test]
    fn agrees_with_generic_pipeline() {
        let b = Budget::default();
        for (a, bb, c) in [(1, 1, 4), (1, 2, 6), (2, 3, 4), (3, 3, 3), (2, 2, 5)] {
            let fast = classify_triple(a, bb, c, &b).unwrap();
            let slow = check_spider(&SpiderSpec::star(&[a, bb, c]), &b).unwrap();
            assert_eq!(fast.lambda2_minpoly, slow.lambda2_minpoly, "({a},{bb},{c})");
            assert_eq!(fast.verdict.is_abelian(), slow.verdict.is_abelian(), "({a},{bb},{c})");
        }
    }

    #[test]
    fn not_abelian_cubic() {
        let r = classify_triple(5, 5, 8, &Budget::default()).unwrap();
        assert!(matches!(r.verdict, Verdict::NotAbelian(NotAbelianKind::NotGalois { .. })), "{:?}", r.verdict);
        // β = λ² - 2 has minimal polynomial θ³ - 2θ² - 4θ + 7
        assert_eq!(r.lambda2_minpoly.unwrap().shift(&BigInt::from(2)), IntPolynomial::from_i64(&[7, -4, -2, 1]));
    }

    #[test]
    fn reducible_numerator() {
        let r = classify_triple(2, 6, 20, &Budget::default()).unwrap();
        assert!(r.degree.unwrap() < 13, "{:?}", r.degree);
        assert!(!r.verdict.is_unknown());
    }

    #[test]
    fn desk_subset() {
        let recs = classify_three_spiders(&Scope::Desk { c_max: 12 }, &Budget::default(), None).unwrap();
        assert_eq!(recs.len(), 364);
        assert!(recs.iter().all(|r| !r.verdict.is_unknown()));
        let ab = abelian_hyperbolic(&recs);
        let mut classes: Vec<(i64, Vec<Subject>)> = Vec::new();
        for r in &ab {
            let key = (lambda2(r) * 1e6).round() as i64;
            match classes.iter_mut().find(|(k, _)| (k - key).abs() <= 1) {
                Some((_, v)) => v.push(r.subject.clone()),
                None => classes.push((key, vec![r.subject.clone()])),
            }
        }
        classes.sort();
        let keys: Vec<i64> = classes.iter().map(|c| c.0).collect();
        assert_eq!(keys.len(), 3, "{classes:?}");
        for (k, want) in keys.iter().zip([4302776, 4377202, 4414214]) {
            assert!((k - want).abs() <= 1, "{k}");
        }
        assert!(classes.iter().all(|(_, v)| v.len() == 3), "{classes:?}");
        assert!(classes[0].1.contains(&Subject::ThreeSpider { a: 3, b: 3, c: 3 }));
        assert!(classes[1].1.contains(&Subject::ThreeSpider { a: 3, b: 3, c: 7 }));
    }

    #[test]
    fn journal_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("j.jsonl");
        let b = Budget::default();
        let first = {
            let mut j = Journal::open(&path).unwrap();
            classify_three_spiders(&Scope::Desk { c_max: 4 }, &b, Some(&mut j)).unwrap()
        };
        let mut j = Journal::open(&path).unwrap();
        assert_eq!(j.records().len(), first.len());
        let again = classify_three_spiders(&Scope::Desk { c_max: 5 }, &b, Some(&mut j)).unwrap();
        assert_eq!(&again[..], &classify_three_spiders(&Scope::Desk { c_max: 5 }, &b, None).unwrap()[..]);
        let mut csv = Vec::new();
        write_csv(&again, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), again.len() + 1);
    }
}
