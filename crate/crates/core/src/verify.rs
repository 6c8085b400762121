//! Named verification suites, one check per acceptance criterion.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::affine::{enumerate_boundary, AdmissibleDescriptor};
use crate::characters::{
    boundary_character, denominator, half_fundamental_closed_form, half_fundamental_descriptor, oracle_character,
    positivity_report, sl2_closed_form, sl2_descriptor, substitution_identity_check,
};
use crate::error::{Error, Result};
use crate::fusion::{
    position_of, sl2_fusion_closed_form, sl2_label, sl2_s_closed_form, sl3_descriptor, sl3_fusion_closed_form,
    sl3_labels, SConfig, SMatrix,
};
use crate::oracle::{gordon_andrews, macdonald_sum};
use crate::rational::Rational;
use crate::roots::RootSystem;
use crate::series::GradedSeries;
use crate::theta::evaluate_product_form;
use crate::wreduction::{principal_grading, reduced_by_substitution, virasoro_character};

pub const SUITES: [&str; 8] =
    ["denominator", "oracle", "eq5", "example2", "positivity", "smatrix", "fusion", "virasoro"];

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2}. {} ({:.2?}): {}", self.criterion, self.name, self.elapsed, self.detail)
    }
}

pub fn criteria_of(suite: &str) -> Result<Vec<u8>> {
    Ok(match suite {
        "denominator" => vec![1],
        "oracle" => vec![2, 3, 10],
        "example2" => vec![4],
        "eq5" => vec![5],
        "positivity" => vec![6],
        "smatrix" => vec![7],
        "fusion" => vec![8],
        "virasoro" => vec![9, 11],
        "all" => (1..=11).collect(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

pub fn run_suite(suite: &str) -> Result<Vec<Check>> {
    Ok(criteria_of(suite)?.into_iter().map(run_criterion).collect())
}

const NAMES: [&str; 11] = [
    "denominator identity",
    "boundary characters vs orbit-sum oracle",
    "sl2 u=3 closed form",
    "sl3 theta01 closed form",
    "denominator substitution identity",
    "positivity of weight multiplicities",
    "S-matrix closed form and unitarity",
    "fusion tensors",
    "Virasoro reduction",
    "boundary weight counts",
    "two-route reduction equality",
];

/// Runs criterion `n` (1..=11); errors count as failures.
pub fn run_criterion(n: u8) -> Check {
    assert!((1..=11).contains(&n), "criteria are numbered 1 to 11");
    let start = Instant::now();
    let out = match n {
        1 => c1_denominator(),
        2 => c2_oracle(),
        3 => c3_sl2_closed_form(),
        4 => c4_example2(),
        5 => c5_substitution(),
        6 => c6_positivity(),
        7 => c7_smatrix(),
        8 => c8_fusion(),
        9 => c9_virasoro(),
        10 => c10_counts(),
        _ => c11_two_routes(),
    };
    let (passed, detail) = match out {
        Ok(Ok(msg)) => (true, msg),
        Ok(Err(msg)) => (false, msg),
        Err(e) => (false, format!("error: {e}")),
    };
    Check { criterion: n, name: NAMES[n as usize - 1], passed, detail, elapsed: start.elapsed() }
}

/// `Ok(Ok(summary))` on success, `Ok(Err(reason))` on a failed comparison.
type Outcome = Result<std::result::Result<String, String>>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn exact_match(a: &GradedSeries, b: &GradedSeries, depth: &Rational) -> std::result::Result<usize, String> {
    let diff = a.compare(b);
    if let Some((t, x, y)) = diff.mismatches.first() {
        return Err(format!("coefficient of q^{} e^{:?}: {x} vs {y}", t.q, t.w));
    }
    if diff.t_exp_mismatch.is_some() || diff.unit_mismatch.is_some() {
        return Err("t-exponent or unit differs".into());
    }
    if diff.checked_below.as_ref().is_some_and(|c| c < &(&a.lowest_degree().unwrap_or_default() + depth)) {
        return Err(format!("only compared below degree {}", diff.checked_below.unwrap()));
    }
    Ok(diff.compared_terms)
}

fn boundary_range() -> Result<Vec<(AdmissibleDescriptor, Rational)>> {
    let mut out = Vec::new();
    for (t, us, depth) in [("A1", [3, 5], 30), ("A2", [2, 4], 12)] {
        let rs = RootSystem::parse(t)?;
        for u in us {
            for d in enumerate_boundary(&rs, u)? {
                out.push((d, r(depth)));
            }
        }
    }
    Ok(out)
}

fn label(d: &AdmissibleDescriptor) -> String {
    format!("{} u={} β={:?}", d.rs.cartan_type, d.u, d.beta.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn c1_denominator() -> Outcome {
    let depth = r(20);
    let mut terms = 0;
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = RootSystem::parse(t)?;
        match exact_match(&denominator(&rs, &depth)?, &macdonald_sum(&rs, &depth)?, &depth) {
            Ok(n) => terms += n,
            Err(e) => return Ok(Err(format!("{t}: {e}"))),
        }
    }
    Ok(Ok(format!("A1, A2, B2, G2 through depth 20, {terms} terms")))
}

fn c2_oracle() -> Outcome {
    let range = boundary_range()?;
    let mut terms = 0;
    for (d, depth) in &range {
        let ch = boundary_character(d, depth)?.series;
        match exact_match(&ch, &oracle_character(d, depth)?, depth) {
            Ok(n) => terms += n,
            Err(e) => return Ok(Err(format!("{}: {e}", label(d)))),
        }
    }
    Ok(Ok(format!("{} weights, {terms} terms", range.len())))
}

fn c3_sl2_closed_form() -> Outcome {
    let depth = r(30);
    for j in 0..3 {
        let d = sl2_descriptor(3, j)?;
        let ch = boundary_character(&d, &depth)?;
        let lit = sl2_closed_form(3, j)?;
        if !ch.product_form.same_as(&lit) {
            return Ok(Err(format!("j={j}: {} vs {}", ch.product_form, lit)));
        }
        let s = evaluate_product_form(d.rs.weight_space(), &lit, &depth)?;
        if let Err(e) = exact_match(&ch.series, &s, &depth) {
            return Ok(Err(format!("j={j}: {e}")));
        }
    }
    Ok(Ok("j = 0, 1, 2 structurally and as series".into()))
}

fn c4_example2() -> Outcome {
    let depth = r(12);
    let mut terms = 0;
    for p in 0..2 {
        let ch = boundary_character(&half_fundamental_descriptor(3, p)?, &depth)?.series;
        match exact_match(&ch, &half_fundamental_closed_form(3, p, &depth)?, &depth) {
            Ok(n) => terms += n,
            Err(e) => return Ok(Err(format!("p={p}: {e}"))),
        }
    }
    Ok(Ok(format!("N=3, p=0,1 through depth 12, {terms} terms")))
}

fn c5_substitution() -> Outcome {
    let range = boundary_range()?;
    let depth = r(20);
    for (d, _) in &range {
        let rep = substitution_identity_check(d, &depth)?;
        if !rep.holds() {
            return Ok(Err(format!("{}: {:?}", label(d), rep.diff.mismatches.first())));
        }
    }
    Ok(Ok(format!("{} weights through depth 20", range.len())))
}

fn c6_positivity() -> Outcome {
    let range = boundary_range()?;
    let mut terms = 0;
    for (d, depth) in &range {
        let rep = positivity_report(d, depth)?;
        if !rep.is_clean() {
            return Ok(Err(format!("{}: {:?}", label(d), rep.violations.first())));
        }
        terms += rep.checked_terms;
    }
    Ok(Ok(format!("{} weights, {terms} multiplicities", range.len())))
}

fn c7_smatrix() -> Outcome {
    let a1 = RootSystem::parse("A1")?;
    let a2 = RootSystem::parse("A2")?;
    let mut worst_closed: f64 = 0.0;
    for u in [3, 5, 7] {
        let s = SMatrix::build(&a1, u, SConfig::default())?;
        for (a, da) in s.weights.iter().enumerate() {
            for (b, db) in s.weights.iter().enumerate() {
                let (j, jp) = (sl2_label(da).unwrap_or(-1), sl2_label(db).unwrap_or(-1));
                worst_closed = worst_closed.max((s.entries[a][b] - sl2_s_closed_form(u, j, jp)).norm());
            }
        }
    }
    if worst_closed > 1e-12 {
        return Ok(Err(format!("sl2 closed form off by {worst_closed:e}")));
    }
    let mut worst_unit: f64 = 0.0;
    for (rs, us) in [(&a1, vec![3, 5, 7]), (&a2, vec![2, 4])] {
        for u in us {
            worst_unit = worst_unit.max(SMatrix::build(rs, u, SConfig::default())?.unitarity_defect());
        }
    }
    if worst_unit > 1e-9 {
        return Ok(Err(format!("unitarity defect {worst_unit:e}")));
    }
    Ok(Ok(format!("closed form within {worst_closed:.1e}, unitarity within {worst_unit:.1e}")))
}

fn c8_fusion() -> Outcome {
    let a1 = RootSystem::parse("A1")?;
    for u in [3, 5] {
        let s = SMatrix::build(&a1, u, SConfig::default())?;
        let t = s.fusion_tensor()?;
        let l: Vec<i64> = s.weights.iter().map(|d| sl2_label(d).unwrap_or(-1)).collect();
        for (a, ta) in t.iter().enumerate() {
            for (b, tab) in ta.iter().enumerate() {
                for (c, &n) in tab.iter().enumerate() {
                    if n != sl2_fusion_closed_form(u, l[a], l[b], l[c]) {
                        return Ok(Err(format!("A1 u={u} ({}, {}, {}): {n}", l[a], l[b], l[c])));
                    }
                }
            }
        }
    }
    let a2 = RootSystem::parse("A2")?;
    for u in [2, 4] {
        let s = SMatrix::build(&a2, u, SConfig::default())?;
        let t = s.fusion_tensor()?;
        let labels = sl3_labels(u);
        let mut pos = Vec::new();
        for l in &labels {
            match position_of(&s.weights, &sl3_descriptor(&a2, u, *l)?) {
                Some(i) => pos.push(i),
                None => return Ok(Err(format!("A2 u={u}: label {l:?} not enumerated"))),
            }
        }
        for (ia, a) in labels.iter().enumerate() {
            for (ib, b) in labels.iter().enumerate() {
                for (ic, c) in labels.iter().enumerate() {
                    let n = t[pos[ia]][pos[ib]][pos[ic]];
                    if n != sl3_fusion_closed_form(u, *a, *b, *c) {
                        return Ok(Err(format!("A2 u={u} {a:?} {b:?} {c:?}: {n}")));
                    }
                }
            }
        }
    }
    Ok(Ok("A1 u=3,5 and A2 u=2,4 tensors".into()))
}

fn c9_virasoro() -> Outcome {
    let d40 = r(40);
    for j in 0..2 {
        let s = virasoro_character(3, j, &d40)?.series;
        if s.as_constant() != Some(Rational::from_integer(1)) || s.trunc().is_none_or(|t| t < &d40) {
            return Ok(Err(format!("u=3 j={j} is not the constant 1: {s:?}")));
        }
    }
    if !virasoro_character(3, 2, &d40)?.is_zero() {
        return Ok(Err("u=3 j=2 is not zero".into()));
    }
    let d50 = r(50);
    for j in 0..4 {
        let s = virasoro_character(5, j, &d50)?.series;
        let Some(lead) = s.lowest_degree() else {
            return Ok(Err(format!("u=5 j={j} vanished")));
        };
        let zero = vec![Rational::from_integer(0); s.rank()];
        let ga = gordon_andrews(s.space(), 5, j, 50)?.mul_monomial(&lead, &zero, &r(1), &r(0));
        if let Err(e) = exact_match(&s, &ga, &d50) {
            return Ok(Err(format!("u=5 j={j}: {e}")));
        }
    }
    if !virasoro_character(5, 4, &d50)?.is_zero() {
        return Ok(Err("u=5 j=4 is not zero".into()));
    }
    Ok(Ok("u=3 trivial/zero through 40, u=5 Gordon-Andrews through 50".into()))
}

fn c10_counts() -> Outcome {
    let mut seen = Vec::new();
    for (t, us) in [("A1", vec![3, 5, 7, 9]), ("A2", vec![2, 4, 5, 7])] {
        let rs = RootSystem::parse(t)?;
        for u in us {
            let ws = enumerate_boundary(&rs, u)?;
            let want = if rs.rank() == 1 { u } else { u * u } as usize;
            if ws.len() != want {
                return Ok(Err(format!("{t} u={u}: {} weights, expected {want}", ws.len())));
            }
            for (i, a) in ws.iter().enumerate() {
                if ws[..i].iter().any(|b| b.lambda == a.lambda) {
                    return Ok(Err(format!("{t} u={u}: duplicate weight")));
                }
            }
            seen.push(format!("{t}/{u}:{}", ws.len()));
        }
    }
    Ok(Ok(seen.join(" ")))
}

fn c11_two_routes() -> Outcome {
    let depth = r(40);
    let a1: Arc<RootSystem> = RootSystem::parse("A1")?;
    let g = principal_grading(&a1)?;
    let mut cases = 0;
    for (u, js) in [(3, 0..3), (5, 0..5)] {
        for j in js {
            let d = sl2_descriptor(u, j)?;
            let a = virasoro_character(u, j, &depth)?.series;
            let b = reduced_by_substitution(&d, &g, &depth)?;
            if a.is_zero() != b.is_zero() {
                return Ok(Err(format!("u={u} j={j}: only one route vanishes")));
            }
            if let Err(e) = exact_match(&a, &b, &depth) {
                return Ok(Err(format!("u={u} j={j}: {e}")));
            }
            cases += 1;
        }
    }
    Ok(Ok(format!("{cases} cases through depth 40")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_every_criterion() {
        let mut all: Vec<u8> = SUITES.iter().flat_map(|s| criteria_of(s).unwrap()).collect();
        all.sort();
        assert_eq!(all, (1..=11).collect::<Vec<_>>());
        assert!(matches!(criteria_of("nope"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn fast_criteria() {
        for n in [3, 7, 8, 10] {
            let c = run_criterion(n);
            assert!(c.passed, "{c}");
        }
    }
}
