//! Join probabilities and the per-triplet charging sums.
//!
//! For a triplet `{u, v, w}` with edges `(uv, uw, vw)` and pivot `w`,
//! `d(u,v|w)` is the probability that `uv` ends up a disagreement and
//! `b(u,v|w)` the probability that a cover edge `uv` is removed. With
//! `p_xy` the chance that `x` joins `y`'s cluster:
//!
//! * `d = p_uw + p_vw - 2 p_uw p_vw` for positive `uv`, `p_uw p_vw` for negative `uv`;
//! * `b = p_uw + p_vw - p_uw p_vw` if `uv` is a cover edge, else 0.
//!
//! Summed over the three choices of pivot, `d ≤ (3/2) b` for every triplet
//! that is not an uncovered bad triangle.

use serde::Serialize;

use crate::error::{BttError, Result};
use crate::graph::Sign;
use num_traits::Zero;

use crate::scalar::{Rational, Scalar};

/// Probability that a candidate joins the pivot's cluster.
pub fn inclusion_probability(sign: Sign, in_cover: bool) -> Rational {
    match (sign, in_cover) {
        (Sign::Positive, false) => Rational::from_ratio(1, 1),
        (Sign::Positive, true) => Rational::from_ratio(1, 4),
        (Sign::Negative, true) => Rational::from_ratio(3, 4),
        (Sign::Negative, false) => Rational::from_ratio(0, 1),
    }
}

/// Signs and cover membership of the edges `(uv, uw, vw)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripletConfig {
    pub signs: [Sign; 3],
    pub in_cover: [bool; 3],
}

impl TripletConfig {
    /// Parses strings such as `("-++", "+--")`: `-`/`+` are signs in the
    /// first string and out/in in the second.
    pub fn parse(signs: &str, membership: &str) -> Option<Self> {
        let s: Vec<char> = signs.chars().collect();
        let m: Vec<char> = membership.chars().collect();
        if s.len() != 3 || m.len() != 3 {
            return None;
        }
        let sign = |c: char| match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        };
        let member = |c: char| match c {
            '+' => Some(true),
            '-' => Some(false),
            _ => None,
        };
        Some(TripletConfig {
            signs: [sign(s[0])?, sign(s[1])?, sign(s[2])?],
            in_cover: [member(m[0])?, member(m[1])?, member(m[2])?],
        })
    }

    pub fn is_bad(&self) -> bool {
        self.signs.iter().filter(|s| **s == Sign::Negative).count() == 1
    }

    /// A bad triangle with none of its edges in the cover.
    pub fn is_uncovered_bad(&self) -> bool {
        self.is_bad() && !self.in_cover.iter().any(|&m| m)
    }

    fn p(&self, edge: usize) -> Rational {
        inclusion_probability(self.signs[edge], self.in_cover[edge])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripletSums {
    pub d: Rational,
    pub b: Rational,
    /// `d / b`, absent when `b = 0`.
    pub ratio: Option<Rational>,
}

/// Disagreement probability of the pair edge given the two spoke probabilities.
fn d_term(pair_sign: Sign, p1: &Rational, p2: &Rational) -> Rational {
    match pair_sign {
        Sign::Positive => p1 + p2 - Rational::from_ratio(2, 1) * p1 * p2,
        Sign::Negative => p1 * p2,
    }
}

fn b_term(pair_in_cover: bool, p1: &Rational, p2: &Rational) -> Rational {
    if pair_in_cover {
        p1 + p2 - p1 * p2
    } else {
        Rational::from_ratio(0, 1)
    }
}

/// Sums of `d` and `b` over the three pivot choices.
pub fn triplet_sums(c: &TripletConfig) -> TripletSums {
    // Edge indices: 0 = uv, 1 = uw, 2 = vw. Pivot w uses spokes uw, vw for
    // pair uv; pivot v uses uv, vw for pair uw; pivot u uses uv, uw for vw.
    let cases = [(0, 1, 2), (1, 0, 2), (2, 0, 1)];
    let mut d = Rational::from_ratio(0, 1);
    let mut b = Rational::from_ratio(0, 1);
    for (pair, s1, s2) in cases {
        let (p1, p2) = (c.p(s1), c.p(s2));
        d += d_term(c.signs[pair], &p1, &p2);
        b += b_term(c.in_cover[pair], &p1, &p2);
    }
    let ratio = if b.is_zero() { None } else { Some(&d / &b) };
    TripletSums { d, b, ratio }
}

/// `d(u,v|v)` and `b(u,v|v)`: the pair's own endpoint is the pivot.
pub fn endpoint_pivot_terms(sign: Sign, in_cover: bool) -> (Rational, Rational) {
    let p = inclusion_probability(sign, in_cover);
    let one = Rational::from_ratio(1, 1);
    let d = match sign {
        Sign::Positive => &one - &p,
        Sign::Negative => p,
    };
    let b = if in_cover { one } else { Rational::from_ratio(0, 1) };
    (d, b)
}

pub const SIGN_ROWS: [&str; 4] = ["---", "--+", "-++", "+++"];
pub const MEMBERSHIP_COLUMNS: [&str; 8] = ["---", "--+", "-+-", "+--", "-++", "++-", "+-+", "+++"];

/// Reference values, `"-"` marking the excluded uncovered bad triangle and
/// `"0/0"` an undefined ratio.
pub const REFERENCE_D: [[&str; 8]; 4] = [
    ["0", "0", "0", "0", "0.5625", "0.5625", "0.5625", "1.688"],
    ["0", "0", "1.5", "1.5", "0.9375", "1.875", "0.9375", "0.75"],
    ["-", "1.5", "1.5", "1.5", "0.5625", "1.125", "1.125", "1.312"],
    ["0", "1.5", "1.5", "1.5", "1.875", "1.875", "1.875", "1.125"],
];
pub const REFERENCE_B: [[&str; 8]; 4] = [
    ["0", "0", "0", "0", "1.5", "1.5", "1.5", "2.812"],
    ["0", "0", "1", "1", "1", "2", "1", "2.562"],
    ["-", "1", "1", "1", "0.5", "2", "2", "2.062"],
    ["0", "1", "1", "1", "2", "2", "2", "1.312"],
];
pub const REFERENCE_RATIO: [[&str; 8]; 4] = [
    ["0/0", "0/0", "0/0", "0/0", "0.375", "0.375", "0.375", "0.6"],
    ["0/0", "0/0", "1.5", "1.5", "0.9375", "0.9375", "0.9375", "0.2927"],
    ["-", "1.5", "1.5", "1.5", "1.125", "0.5625", "0.5625", "0.6364"],
    ["0/0", "1.5", "1.5", "1.5", "0.9375", "0.9375", "0.9375", "0.8571"],
];

/// Whether the exact value rounds to a printed decimal: the difference is
/// at most half a unit in the last printed digit.
pub fn matches_printed(value: &Rational, printed: &str) -> bool {
    let Some(p) = crate::scalar::parse_rational(printed) else {
        return false;
    };
    let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len()) as usize;
    let half_unit = Rational::from_ratio(1, 2) / num_traits::pow(Rational::from_ratio(10, 1), decimals);
    crate::scalar::abs(value - &p) <= half_unit
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub signs: String,
    pub membership: String,
    /// Exact values as fractions; `None` for the excluded cell.
    pub d: Option<String>,
    pub b: Option<String>,
    pub ratio: Option<String>,
    pub matches_reference: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// Recomputed tables plus named checks.
#[derive(Clone, Debug, Serialize)]
pub struct ChargingReport {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub d_table: Vec<Vec<Option<String>>>,
    pub b_table: Vec<Vec<Option<String>>>,
    pub ratio_table: Vec<Vec<Option<String>>>,
    pub cells: Vec<TableCell>,
    pub defined_cells: usize,
    pub matched_cells: usize,
    pub max_ratio: String,
    pub checks: Vec<Check>,
}

impl ChargingReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Builds the report without failing on mismatches.
pub fn charging_report() -> ChargingReport {
    let three_halves = Rational::from_ratio(3, 2);
    let mut cells = Vec::new();
    let mut checks = Vec::new();
    let mut tables: [Vec<Vec<Option<String>>>; 3] = Default::default();
    let mut max_ratio = Rational::from_ratio(0, 1);
    let mut excluded = Vec::new();

    for (ri, row) in SIGN_ROWS.iter().enumerate() {
        let mut lines: [Vec<Option<String>>; 3] = Default::default();
        for (ci, col) in MEMBERSHIP_COLUMNS.iter().enumerate() {
            let cfg = TripletConfig::parse(row, col).expect("table labels are well formed");
            let name = format!("{row}/{col}");
            if cfg.is_uncovered_bad() {
                excluded.push(name.clone());
                let ok = REFERENCE_D[ri][ci] == "-" && REFERENCE_B[ri][ci] == "-" && REFERENCE_RATIO[ri][ci] == "-";
                for l in lines.iter_mut() {
                    l.push(None);
                }
                cells.push(TableCell { signs: row.to_string(), membership: col.to_string(), d: None, b: None, ratio: None, matches_reference: ok });
                continue;
            }
            let s = triplet_sums(&cfg);
            let ratio_ok = match (&s.ratio, REFERENCE_RATIO[ri][ci]) {
                (None, "0/0") => s.d.is_zero(),
                (Some(r), printed) => matches_printed(r, printed),
                _ => false,
            };
            let ok = matches_printed(&s.d, REFERENCE_D[ri][ci]) && matches_printed(&s.b, REFERENCE_B[ri][ci]) && ratio_ok;
            if let Some(r) = &s.ratio {
                if *r > max_ratio {
                    max_ratio = r.clone();
                }
                if *r > three_halves {
                    checks.push(Check { name: format!("ratio {name} <= 3/2"), pass: false });
                }
            }
            let ratio_text = s.ratio.as_ref().map(Scalar::to_text).unwrap_or_else(|| "0/0".to_string());
            lines[0].push(Some(s.d.to_text()));
            lines[1].push(Some(s.b.to_text()));
            lines[2].push(Some(ratio_text.clone()));
            cells.push(TableCell {
                signs: row.to_string(),
                membership: col.to_string(),
                d: Some(s.d.to_text()),
                b: Some(s.b.to_text()),
                ratio: Some(ratio_text),
                matches_reference: ok,
            });
        }
        for (t, l) in tables.iter_mut().zip(lines) {
            t.push(l);
        }
    }

    let defined = cells.iter().filter(|c| c.d.is_some()).count();
    let matched = cells.iter().filter(|c| c.d.is_some() && c.matches_reference).count();
    for c in cells.iter().filter(|c| !c.matches_reference) {
        checks.push(Check { name: format!("cell {}/{} matches reference", c.signs, c.membership), pass: false });
    }
    checks.push(Check { name: format!("{matched}/{defined} defined cells match"), pass: matched == defined && defined == 31 });
    checks.push(Check {
        name: "every defined ratio <= 3/2".into(),
        pass: max_ratio <= three_halves,
    });
    checks.push(Check {
        name: "only excluded cell is the uncovered bad triangle -++/---".into(),
        pass: excluded == ["-++/---"],
    });
    for sign in [Sign::Positive, Sign::Negative] {
        for in_cover in [false, true] {
            let (d, b) = endpoint_pivot_terms(sign, in_cover);
            let zero_when_uncovered = in_cover || d.is_zero();
            checks.push(Check {
                name: format!("d(u,v|v) <= b(u,v|v) for {} edge {} cover", sign.as_i8(), if in_cover { "in" } else { "outside" }),
                pass: d <= b && zero_when_uncovered,
            });
        }
    }
    let [d_table, b_table, ratio_table] = tables;
    ChargingReport {
        rows: SIGN_ROWS.iter().map(|s| s.to_string()).collect(),
        columns: MEMBERSHIP_COLUMNS.iter().map(|s| s.to_string()).collect(),
        d_table,
        b_table,
        ratio_table,
        cells,
        defined_cells: defined,
        matched_cells: matched,
        max_ratio: max_ratio.to_text(),
        checks,
    }
}

/// Recomputes the tables exactly and fails on the first failing check.
pub fn verify_charging_tables() -> Result<ChargingReport> {
    let report = charging_report();
    if let Some(c) = report.checks.iter().find(|c| !c.pass) {
        return Err(BttError::Verification(c.name.clone()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn sums(s: &str, m: &str) -> TripletSums {
        triplet_sums(&TripletConfig::parse(s, m).unwrap())
    }

    #[test]
    fn probabilities() {
        assert_eq!(inclusion_probability(Sign::Positive, false), q(1, 1));
        assert_eq!(inclusion_probability(Sign::Positive, true), q(1, 4));
        assert_eq!(inclusion_probability(Sign::Negative, true), q(3, 4));
        assert_eq!(inclusion_probability(Sign::Negative, false), q(0, 1));
    }

    #[test]
    fn named_cells() {
        let s = sums("---", "+++");
        assert_eq!((s.d, s.b, s.ratio), (q(27, 16), q(45, 16), Some(q(3, 5))));
        let s = sums("+++", "+++");
        assert_eq!((s.d, s.b, s.ratio), (q(9, 8), q(21, 16), Some(q(6, 7))));
        let s = sums("---", "---");
        assert_eq!((s.d, s.b, s.ratio), (q(0, 1), q(0, 1), None));
        assert_eq!(sums("--+", "-+-").ratio, Some(q(3, 2)));
    }

    /// Independent oracle: enumerate pivots and joint coin outcomes directly.
    #[test]
    fn sums_match_outcome_enumeration() {
        for row in SIGN_ROWS {
            for col in MEMBERSHIP_COLUMNS {
                let c = TripletConfig::parse(row, col).unwrap();
                let nodes_of = [(0, 1), (0, 2), (1, 2)];
                let mut d = q(0, 1);
                let mut b = q(0, 1);
                for pivot in 0..3usize {
                    let others: Vec<usize> = (0..3).filter(|&x| x != pivot).collect();
                    let spoke = |x: usize| (0..3).find(|&e| {
                        let (a, bb) = nodes_of[e];
                        (a == x && bb == pivot) || (bb == x && a == pivot)
                    }).unwrap();
                    let pair = (0..3).find(|&e| nodes_of[e] == (others[0], others[1])).unwrap();
                    let p: Vec<Rational> = others.iter().map(|&x| inclusion_probability(c.signs[spoke(x)], c.in_cover[spoke(x)])).collect();
                    for j0 in [false, true] {
                        for j1 in [false, true] {
                            let pr = |p: &Rational, j: bool| if j { p.clone() } else { q(1, 1) - p.clone() };
                            let prob = pr(&p[0], j0) * pr(&p[1], j1);
                            let disagree = match c.signs[pair] {
                                Sign::Positive => j0 != j1,
                                Sign::Negative => j0 && j1,
                            };
                            if disagree {
                                d += prob.clone();
                            }
                            if c.in_cover[pair] && (j0 || j1) {
                                b += prob;
                            }
                        }
                    }
                }
                let s = triplet_sums(&c);
                assert_eq!((s.d, s.b), (d, b), "{row}/{col}");
            }
        }
    }

    #[test]
    fn per_triplet_bound_over_all_configurations() {
        for mask in 0..64u32 {
            let bit = |i: u32| mask >> i & 1 == 1;
            let c = TripletConfig {
                signs: std::array::from_fn(|i| if bit(i as u32) { Sign::Positive } else { Sign::Negative }),
                in_cover: std::array::from_fn(|i| bit(3 + i as u32)),
            };
            if c.is_uncovered_bad() {
                continue;
            }
            let s = triplet_sums(&c);
            assert!(s.d <= q(3, 2) * s.b.clone() || (s.d.is_zero() && s.b.is_zero()), "{c:?}");
        }
    }

    #[test]
    fn full_verification_passes() {
        let report = verify_charging_tables().unwrap();
        assert_eq!(report.defined_cells, 31);
        assert_eq!(report.matched_cells, 31);
        assert_eq!(report.max_ratio, "3/2");
    }

    #[test]
    fn endpoint_pivot_uncovered_is_free() {
        assert_eq!(endpoint_pivot_terms(Sign::Positive, false).0, q(0, 1));
        assert_eq!(endpoint_pivot_terms(Sign::Negative, false).0, q(0, 1));
    }

    #[test]
    fn printed_matching_rule() {
        assert!(matches_printed(&q(45, 16), "2.812"));
        assert!(matches_printed(&q(6, 7), "0.8571"));
        assert!(!matches_printed(&q(6, 7), "0.8572"));
        assert!(matches_printed(&q(3, 2), "1.5"));
    }
}
