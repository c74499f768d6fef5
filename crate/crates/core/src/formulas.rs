//! Closed-form diameters and the sweep that checks them against graph search.

use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_graph, GraphOptions};
use crate::perm::Permutation;

/// `binom(m, r)`, zero when `m < r` (including negative `m`).
pub fn binom(m: i64, r: i64) -> i64 {
    if r < 0 || m < r {
        return 0;
    }
    let r = r.min(m - r);
    (0..r).fold(1i64, |acc, i| acc * (m - i) / (i + 1))
}

/// Diameter of `C(w)`: the number of 321-triples of `w`.
pub fn diameter_formula(w: &Permutation) -> usize {
    w.triples_321().len()
}

/// Diameter of `C(n ... 21)`.
pub fn longest_diameter(n: usize) -> usize {
    binom(n as i64, 3) as usize
}

/// `binom(n - i + 1, 3) + sum_{k < i} binom(w_k - k, 2)` for a unimodal `w`
/// with peak `i`.
pub fn unimodal_diameter(w: &Permutation) -> Result<usize> {
    let peak = w
        .unimodal_peak()
        .ok_or_else(|| Error::NotUnimodal(w.to_compact_string()))?;
    let n = w.n() as i64;
    let i = peak as i64;
    let head: i64 = (1..peak).map(|k| binom(w.value_at(k) as i64 - k as i64, 2)).sum();
    Ok((binom(n - i + 1, 3) + head) as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterBounds {
    pub n: usize,
    /// Length deficiency `binom(n, 2) - ℓ(w)`.
    pub k: usize,
    pub lower: i64,
    pub upper: i64,
}

impl DiameterBounds {
    pub fn contains(&self, d: usize) -> bool {
        (self.lower..=self.upper).contains(&(d as i64))
    }
}

/// Interval containing the diameter of every `C(w)` with `ℓ(w) = binom(n,2) - k`.
pub fn diameter_bounds(n: usize, k: usize) -> Result<DiameterBounds> {
    let max_k = binom(n as i64, 2) as usize;
    if n == 0 || k > max_k {
        return Err(Error::OutOfRange(format!("deficiency {k} not in 0..={max_k} for n = {n}")));
    }
    let (nn, kk) = (n as i64, k as i64);
    let lower = binom(nn, 3) - kk * (nn - 2);
    Ok(DiameterBounds { n, k, lower, upper: lower + binom(kk, 2) })
}

pub fn bounds_for(w: &Permutation) -> DiameterBounds {
    let k = binom(w.n() as i64, 2) as usize - w.length();
    diameter_bounds(w.n(), k).expect("deficiency of a permutation is in range")
}

/// The four largest diameters over `S_n`, `n >= 4`.
pub fn top_diameter_values(n: usize) -> [i64; 4] {
    let (d, n) = (binom(n as i64, 3), n as i64);
    [d, d - n + 2, d - 2 * n + 5, d - 2 * n + 4]
}

/// Permutations attaining each of [`top_diameter_values`], in order:
/// `n ... 21`, `(n-1) n (n-2) ... 21`, `(n-2) n (n-1) (n-3) ... 21` and
/// `(n-1) n (n-2) (n-3) ... 3 1 2`.
pub fn top_witnesses(n: usize) -> [Permutation; 4] {
    assert!(n >= 4, "witnesses are defined for n >= 4");
    let desc = |hi: usize, lo: usize| (lo..=hi).rev().collect::<Vec<_>>();
    let build = |parts: Vec<Vec<usize>>| {
        Permutation::new(parts.concat()).expect("witness is a permutation")
    };
    [
        Permutation::longest(n),
        build(vec![vec![n - 1, n], desc(n - 2, 1)]),
        build(vec![vec![n - 2, n, n - 1], desc(n - 3, 1)]),
        build(vec![vec![n - 1, n], desc(n - 2, 3), vec![1, 2]]),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct TopDiametersReport {
    pub n: usize,
    pub expected: [i64; 4],
    pub observed: Vec<i64>,
    /// Witnesses in one-line comma form with their diameters.
    pub witnesses: Vec<(String, usize)>,
    pub longest_unique: bool,
}

pub fn top_diameters_check(n: usize) -> Result<TopDiametersReport> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("top-diameter classification needs n >= 4, got {n}")));
    }
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let diameters: Vec<usize> = all.par_iter().map(diameter_formula).collect();
    let distinct: BTreeSet<usize> = diameters.iter().copied().collect();
    let observed: Vec<i64> = distinct.iter().rev().take(4).map(|&d| d as i64).collect();
    let expected = top_diameter_values(n);
    let violation = |detail: String| Error::PropertyViolation { perm: format!("S_{n}"), detail };
    if observed != expected {
        return Err(violation(format!(
            "four largest diameters {observed:?}, expected {expected:?}"
        )));
    }
    let at_top = diameters.iter().filter(|&&d| d as i64 == expected[0]).count();
    let witnesses: Vec<(String, usize)> = top_witnesses(n)
        .iter()
        .map(|w| (w.to_string(), diameter_formula(w)))
        .collect();
    for ((w, d), e) in witnesses.iter().zip(expected) {
        if *d as i64 != e {
            return Err(Error::PropertyViolation {
                perm: w.clone(),
                detail: format!("witness has diameter {d}, expected {e}"),
            });
        }
    }
    if at_top != 1 {
        return Err(violation(format!("{at_top} permutations attain the maximum")));
    }
    Ok(TopDiametersReport { n, expected, observed, witnesses, longest_unique: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Counting identities only.
    Formula,
    /// Also build every `C(w)` and compare its BFS diameter.
    Full,
}

impl SweepMode {
    pub fn default_max_n(self) -> usize {
        match self {
            SweepMode::Formula => 9,
            SweepMode::Full => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    pub graph: GraphOptions,
    /// Overrides [`SweepMode::default_max_n`].
    pub max_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub w: String,
    pub length: usize,
    pub triples: usize,
    pub formula_diameter: usize,
    pub bfs_diameter: Option<usize>,
    pub class_count: Option<usize>,
    pub radius: Option<usize>,
    pub bounds_lower: i64,
    pub bounds_upper: i64,
    pub unimodal_peak: Option<usize>,
    #[serde(skip)]
    pub failure: Option<String>,
    #[serde(skip)]
    pub discrepancies: usize,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub mode: SweepMode,
    #[serde(skip)]
    pub rows: Vec<SweepRow>,
    pub total: usize,
    pub passed: usize,
    /// Class pairs whose graph distance differs from signature Hamming
    /// distance, summed over `S_n` (full mode only).
    pub distance_discrepancies: usize,
}

impl SweepReport {
    pub fn first_failure(&self) -> Option<&SweepRow> {
        self.rows.iter().find(|r| !r.passed())
    }

    pub fn into_result(self) -> Result<SweepReport> {
        match self.first_failure() {
            None => Ok(self),
            Some(row) => Err(Error::PropertyViolation {
                perm: row.w.clone(),
                detail: row.failure.clone().unwrap_or_default(),
            }),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::OutOfRange(format!("CSV write failed: {e}"));
        writer
            .write_record([
                "w",
                "length",
                "t_w",
                "formula_diameter",
                "bfs_diameter",
                "class_count",
                "radius",
                "bounds_lower",
                "bounds_upper",
                "unimodal_peak",
                "status",
            ])
            .map_err(io)?;
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            writer
                .write_record([
                    r.w.clone(),
                    r.length.to_string(),
                    r.triples.to_string(),
                    r.formula_diameter.to_string(),
                    opt(r.bfs_diameter),
                    opt(r.class_count),
                    opt(r.radius),
                    r.bounds_lower.to_string(),
                    r.bounds_upper.to_string(),
                    opt(r.unimodal_peak),
                    if r.passed() { "pass" } else { "fail" }.to_string(),
                ])
                .map_err(io)?;
        }
        writer.flush().map_err(|e| Error::OutOfRange(format!("CSV write failed: {e}")))
    }
}

fn sweep_row(w: &Permutation, mode: SweepMode, opts: &SweepOptions) -> Result<SweepRow> {
    let triples = w.triples_321().len();
    let formula = diameter_formula(w);
    let bounds = bounds_for(w);
    let peak = w.unimodal_peak();
    let mut failures = Vec::new();
    if !bounds.contains(formula) {
        failures.push(format!("diameter {formula} outside [{}, {}]", bounds.lower, bounds.upper));
    }
    if peak.is_some() {
        let u = unimodal_diameter(w)?;
        if u != formula {
            failures.push(format!("unimodal formula gives {u}, triples give {formula}"));
        }
    }
    let r321 = Permutation::longest(3);
    let avoids_321 = w.n() < 3 || w.avoids(&r321)?;
    if avoids_321 != (triples == 0) {
        failures.push("321-avoidance disagrees with empty triple set".into());
    }
    let mut row = SweepRow {
        w: w.to_string(),
        length: w.length(),
        triples,
        formula_diameter: formula,
        bfs_diameter: None,
        class_count: None,
        radius: None,
        bounds_lower: bounds.lower,
        bounds_upper: bounds.upper,
        unimodal_peak: peak,
        failure: None,
        discrepancies: 0,
    };
    if mode == SweepMode::Full {
        let g = build_graph(w, opts.graph);
        let metrics = g.metrics()?;
        row.bfs_diameter = Some(metrics.diameter);
        row.class_count = Some(g.class_count());
        row.radius = Some(metrics.radius);
        row.discrepancies = g.distance_discrepancies()?;
        if metrics.diameter != triples {
            failures.push(format!("BFS diameter {} differs from |T_w| = {triples}", metrics.diameter));
        }
        if (g.class_count() == 1) != (triples == 0) {
            failures.push(format!("{} classes but |T_w| = {triples}", g.class_count()));
        }
        let poset = g.poset_check()?;
        if !poset.passed() {
            failures.push(format!("graded poset violated: {:?}", poset.violations));
        }
    }
    if !failures.is_empty() {
        row.failure = Some(failures.join("; "));
    }
    Ok(row)
}

/// Checks every permutation of `S_n`. Rows come back in lexicographic order
/// of `w` whatever the thread count; failed checks are recorded on their
/// rows rather than returned as errors, so the CSV can still be written.
pub fn verify_sweep(n: usize, mode: SweepMode, opts: &SweepOptions) -> Result<SweepReport> {
    let limit = opts.max_n.unwrap_or(mode.default_max_n());
    if n == 0 || n > limit {
        return Err(Error::OutOfRange(format!("sweep size n = {n} not in 1..={limit}")));
    }
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let rows: Vec<SweepRow> = all
        .par_iter()
        .map(|w| sweep_row(w, mode, opts))
        .collect::<Result<_>>()?;
    let passed = rows.iter().filter(|r| r.passed()).count();
    let distance_discrepancies = rows.iter().map(|r| r.discrepancies).sum();
    Ok(SweepReport { n, mode, total: rows.len(), passed, rows, distance_discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 3), 10);
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(1, 2), 0);
        assert_eq!(binom(-1, 2), 0);
        assert_eq!(binom(4, 0), 1);
        assert_eq!(binom(0, 0), 1);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(diameter_formula(&p("456312")), 6);
        assert_eq!(diameter_formula(&p("312")), 0);
        assert_eq!(diameter_formula(&p("25431")), 4);
        assert_eq!(longest_diameter(4), 4);
        assert_eq!(longest_diameter(6), 20);
        for n in 1..=8 {
            let wo = Permutation::longest(n);
            assert_eq!(longest_diameter(n), diameter_formula(&wo));
            assert_eq!(unimodal_diameter(&wo).unwrap(), longest_diameter(n));
        }
        assert_eq!(unimodal_diameter(&p("2431")).unwrap(), 1);
        assert_eq!(diameter_formula(&p("2431")), 1);
        assert!(matches!(unimodal_diameter(&p("456312")), Err(Error::NotUnimodal(_))));
    }

    #[test]
    fn bounds() {
        let b = diameter_bounds(5, 0).unwrap();
        assert_eq!((b.lower, b.upper), (10, 10));
        let b = diameter_bounds(5, 1).unwrap();
        assert_eq!((b.lower, b.upper), (7, 7));
        let b = diameter_bounds(5, 2).unwrap();
        assert_eq!((b.lower, b.upper), (4, 5));
        assert!(diameter_bounds(5, 11).is_err());
    }

    #[test]
    fn witnesses() {
        let [a, b, c, d] = top_witnesses(5);
        assert_eq!(a, p("54321"));
        assert_eq!(b, p("45321"));
        assert_eq!(c, p("35421"));
        assert_eq!(d, p("45312"));
        assert_eq!(diameter_formula(&b), 7);
        let [_, _, c4, d4] = top_witnesses(4);
        assert_eq!((c4, d4), (p("2431"), p("3412")));
    }

    #[test]
    fn printed_middle_witness_is_one_step_too_short() {
        // (n-2)(n-1)n(n-3)...21 leaves three pairs uninverted, so it has
        // length binom(n,2) - 3 and misses δ - 2n + 5.
        for n in 5..=7 {
            let mut v = vec![n - 2, n - 1, n];
            v.extend((1..=n - 3).rev());
            let w = Permutation::new(v).unwrap();
            assert_eq!(w.length() + 3, n * (n - 1) / 2);
            assert_ne!(diameter_formula(&w) as i64, top_diameter_values(n)[2]);
        }
    }

    #[test]
    fn top_values() {
        assert_eq!(top_diameters_check(5).unwrap().observed, vec![10, 7, 5, 4]);
        assert_eq!(top_diameters_check(4).unwrap().observed, vec![4, 2, 1, 0]);
        assert!(top_diameters_check(3).is_err());
    }

    #[test]
    fn small_sweeps() {
        let r = verify_sweep(3, SweepMode::Full, &SweepOptions::default()).unwrap();
        assert_eq!((r.total, r.passed), (6, 6));
        let row = r.rows.iter().find(|row| row.w == "3,2,1").unwrap();
        assert_eq!(row.bfs_diameter, Some(1));
        let r = verify_sweep(1, SweepMode::Formula, &SweepOptions::default()).unwrap();
        assert_eq!((r.total, r.passed), (1, 1));
        assert!(verify_sweep(7, SweepMode::Full, &SweepOptions::default()).is_err());
        assert!(verify_sweep(0, SweepMode::Formula, &SweepOptions::default()).is_err());
    }

    #[test]
    fn csv_columns() {
        let r = verify_sweep(3, SweepMode::Formula, &SweepOptions::default()).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "w,length,t_w,formula_diameter,bfs_diameter,class_count,radius,bounds_lower,bounds_upper,unimodal_peak,status"
        );
        assert_eq!(lines.next().unwrap(), "\"1,2,3\",0,0,0,,,,-2,1,3,pass");
        assert_eq!(text.lines().count(), 7);
    }
}
