//! Verdict layer: inequalities, equality diagnostics and classification
//! predicates evaluated against a defect ledger. All comparisons use the
//! doubled integer forms (e.g. 2s vs (k+2)n + 2k) to avoid rational halves.

use serde::Serialize;

use crate::terracini::DefectLedger;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Vacuous,
    Inconclusive,
}

/// One named check with the substituted numbers as its witness.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub verdict: Verdict,
    pub witness: String,
}

impl Check {
    fn new(name: &str, k: impl Into<Option<usize>>, verdict: Verdict, witness: String) -> Self {
        Check {
            name: name.to_string(),
            k: k.into(),
            verdict,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub checks: Vec<Check>,
    /// k values passing the numerical k-Severi test.
    pub severi: Vec<usize>,
}

/// Monotonicity, superadditivity and the linear lower bound for the
/// projection defects. The underlying theorem assumes a smooth variety;
/// on non-smooth models a failing instance is reported as outside the
/// hypotheses rather than violated.
pub fn check_subadditivity(ledger: &DefectLedger, smooth: bool) -> Vec<Check> {
    let kmax = ledger.kmax();
    if kmax < 2 {
        return vec![Check::new(
            "subadditivity",
            None,
            Verdict::Vacuous,
            format!("ledger depth kmax={} has no comparisons", kmax),
        )];
    }
    let psi = |k: usize| ledger.row(k).unwrap().psi;
    let mut out = Vec::new();
    let soften = |holds: bool| -> Verdict {
        if holds {
            Verdict::Holds
        } else if smooth {
            Verdict::Violated
        } else {
            Verdict::Inconclusive
        }
    };
    let suffix = if smooth { "" } else { " [outside theorem hypotheses: model not smooth]" };
    for k in 2..=kmax {
        out.push(Check::new(
            "psi_monotone",
            k,
            soften(psi(k - 1) <= psi(k)),
            format!("psi_{}={} <= psi_{}={}{}", k - 1, psi(k - 1), k, psi(k), suffix),
        ));
        out.push(Check::new(
            "psi_superadditive",
            k,
            soften(psi(k) >= psi(k - 1) + psi(1)),
            format!(
                "psi_{}={} >= psi_{}={} + psi_1={}{}",
                k,
                psi(k),
                k - 1,
                psi(k - 1),
                psi(1),
                suffix
            ),
        ));
        out.push(Check::new(
            "psi_linear_lower",
            k,
            soften(psi(k) >= k * psi(1)),
            format!("psi_{}={} >= {}*psi_1={}{}", k, psi(k), k, k * psi(1), suffix),
        ));
    }
    let last = kmax;
    out.push(Check::new(
        "psi_bounded_by_dim",
        last,
        soften(psi(last) <= ledger.n),
        format!("psi_{}={} <= n={}{}", last, psi(last), ledger.n, suffix),
    ));
    out
}

/// Scorza predicate: psi_1 > 0, psi_k = k psi_1 through k0, and
/// k0 = floor(n / psi_1). Needs the ledger computed through k0. A first
/// secant variety that already fills carries no defect evidence, so its
/// psi_1 counts as zero here.
pub fn check_scorza(ledger: &DefectLedger, smooth: bool) -> Check {
    let psi1 = match ledger.row(1) {
        Some(row) if row.s < ledger.r => row.psi,
        Some(_) => 0,
        None => {
            return Check::new(
                "scorza",
                None,
                Verdict::Vacuous,
                "k0 = 0: the variety already fills".into(),
            )
        }
    };
    if psi1 == 0 {
        return Check::new(
            "scorza",
            None,
            Verdict::Violated,
            "psi_1 = 0 (predicate requires psi_1 > 0)".into(),
        );
    }
    if ledger.kmax() < ledger.k0 {
        return Check::new(
            "scorza",
            None,
            Verdict::Inconclusive,
            format!(
                "ledger truncated at kmax={} below k0={}",
                ledger.kmax(),
                ledger.k0
            ),
        );
    }
    let mut equalities = true;
    for row in &ledger.rows {
        if row.k >= 1 && row.psi != row.k * psi1 {
            equalities = false;
        }
    }
    let k0_matches = ledger.k0 == ledger.n / psi1;
    let verdict = if equalities && k0_matches {
        if smooth {
            Verdict::Holds
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::Violated
    };
    Check::new(
        "scorza",
        None,
        verdict,
        format!(
            "psi_1={}, psi_k = k*psi_1 for k<=k0: {}, k0={} vs floor(n/psi_1)={}",
            psi1,
            equalities,
            ledger.k0,
            ledger.n / psi1
        ),
    )
}

/// The fiber-defect bound 2 f_k <= k n, with the equality diagnostics
/// gamma_i = psi_i = i f, f_i = i(i+1)f/2 and n = (k+1)f when it is attained.
pub fn check_step2(ledger: &DefectLedger, k: usize) -> Vec<Check> {
    let Some(row) = ledger.row(k) else {
        return vec![Check::new(
            "fiber_bound",
            k,
            Verdict::Vacuous,
            format!("no ledger row at k={}", k),
        )];
    };
    if row.s >= ledger.r {
        return vec![Check::new(
            "fiber_bound",
            k,
            Verdict::Vacuous,
            format!("S^{}(X) fills P^{}", k, ledger.r),
        )];
    }
    let n = ledger.n;
    let lhs = 2 * row.f;
    let rhs = k * n;
    let mut out = Vec::new();
    let verdict = if lhs <= rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    let relation = if lhs < rhs {
        "<"
    } else if lhs == rhs {
        "="
    } else {
        ">"
    };
    out.push(Check::new(
        "fiber_bound",
        k,
        verdict,
        format!("2*f_{}={} {} k*n={}", k, lhs, relation, rhs),
    ));
    if lhs == rhs {
        let f = ledger.row(1).map_or(0, |r| r.f);
        for i in 1..=k {
            let ri = ledger.row(i).unwrap();
            let psi_ok = ri.psi == i * f;
            let gamma_ok = ri.gamma.map(|g| g == i * f);
            let verdict = match gamma_ok {
                Some(true) if psi_ok => Verdict::Holds,
                None if psi_ok => Verdict::Inconclusive,
                _ => Verdict::Violated,
            };
            out.push(Check::new(
                "fiber_bound.eq.contact",
                i,
                verdict,
                format!(
                    "gamma_{}={}, psi_{}={}, i*f={}",
                    i,
                    ri.gamma.map_or("?".into(), |g| g.to_string()),
                    i,
                    ri.psi,
                    i * f
                ),
            ));
            let fi_ok = 2 * ri.f == i * (i + 1) * f;
            out.push(Check::new(
                "fiber_bound.eq.fiber_ladder",
                i,
                if fi_ok { Verdict::Holds } else { Verdict::Violated },
                format!("f_{}={} vs i(i+1)f/2={}", i, ri.f, i * (i + 1) * f / 2),
            ));
        }
        let n_ok = n == (k + 1) * f;
        out.push(Check::new(
            "fiber_bound.eq.dim",
            k,
            if n_ok { Verdict::Holds } else { Verdict::Violated },
            format!("n={} vs (k+1)*f={}", n, (k + 1) * f),
        ));
    }
    out
}

/// The linear-normality lower bound 2 s^(k) >= (k+2) n + 2k, vacuous when
/// the secant variety fills. A violation certifies that the variety does
/// not have the k-th regularity property.
pub fn check_extended_ln(ledger: &DefectLedger, k: usize) -> Check {
    let Some(row) = ledger.row(k) else {
        return Check::new(
            "linear_normality",
            k,
            Verdict::Vacuous,
            format!("no ledger row at k={}", k),
        );
    };
    if row.s == ledger.r {
        return Check::new(
            "linear_normality",
            k,
            Verdict::Vacuous,
            format!("S^{}(X) = P^{}", k, ledger.r),
        );
    }
    let lhs = 2 * row.s;
    let rhs = (k + 2) * ledger.n + 2 * k;
    let verdict = if lhs >= rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    let note = if verdict == Verdict::Violated {
        " => not an R_k-variety"
    } else {
        ""
    };
    Check::new(
        "linear_normality",
        k,
        verdict,
        format!("2*s^({})={} vs (k+2)n+2k={}{}", k, lhs, rhs, note),
    )
}

/// All k with r > s^(k) and 2 s^(k) = (k+2) n + 2k: numerical k-Severi
/// candidates. The regularity property itself is not decided here.
pub fn detect_k_severi(ledger: &DefectLedger) -> Vec<usize> {
    ledger
        .rows
        .iter()
        .filter(|row| {
            row.k >= 1 && row.s < ledger.r && 2 * row.s == (row.k + 2) * ledger.n + 2 * row.k
        })
        .map(|row| row.k)
        .collect()
}

/// Sufficient criterion for the k-th regularity property: gamma_i = psi_i
/// for i = 1..k (the indeterminacy-locus hypothesis is not checked). Never
/// asserts failure; a violated linear-normality bound does that elsewhere.
pub fn check_rk_surrogate(ledger: &DefectLedger, k: usize) -> Check {
    let Some(row) = ledger.row(k) else {
        return Check::new(
            "rk_criterion",
            k,
            Verdict::Vacuous,
            format!("no ledger row at k={}", k),
        );
    };
    if row.s >= ledger.r {
        return Check::new(
            "rk_criterion",
            k,
            Verdict::Vacuous,
            format!("S^{}(X) fills P^{}", k, ledger.r),
        );
    }
    let mut pairs = Vec::new();
    let mut all_equal = true;
    let mut all_known = true;
    for i in 1..=k {
        let ri = ledger.row(i).unwrap();
        match ri.gamma {
            Some(g) => {
                pairs.push(format!("gamma_{}={} psi_{}={}", i, g, i, ri.psi));
                if g != ri.psi {
                    all_equal = false;
                }
            }
            None => {
                all_known = false;
                pairs.push(format!("gamma_{}=? psi_{}={}", i, i, ri.psi));
            }
        }
    }
    let verdict = if !all_known {
        Verdict::Inconclusive
    } else if all_equal {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    let note = if verdict == Verdict::Holds {
        " (criterion satisfied; indeterminacy-locus hypothesis assumed)"
    } else {
        " (criterion inconclusive: it is only sufficient)"
    };
    Check::new("rk_criterion", k, verdict, format!("{}{}", pairs.join(", "), note))
}

/// Run every check against the ledger and assemble the report. When the
/// linear-normality bound is violated at some k, the regularity verdict at
/// that k is refuted by contraposition.
pub fn evaluate_bounds(ledger: &DefectLedger, smooth: bool) -> BoundReport {
    let mut checks = Vec::new();
    checks.extend(check_subadditivity(ledger, smooth));
    checks.push(check_scorza(ledger, smooth));
    let kmax = ledger.kmax();
    for k in 1..=kmax.max(1) {
        checks.extend(check_step2(ledger, k));
        checks.push(check_extended_ln(ledger, k));
        let rk = check_rk_surrogate(ledger, k);
        let ln_violated = checks
            .iter()
            .any(|c| c.name == "linear_normality" && c.k == Some(k) && c.verdict == Verdict::Violated);
        if ln_violated && rk.verdict == Verdict::Inconclusive {
            checks.push(Check::new(
                "rk_criterion",
                k,
                Verdict::Violated,
                format!("{}; refuted via the linear-normality bound", rk.witness),
            ));
        } else {
            checks.push(rk);
        }
    }
    let severi = detect_k_severi(ledger);
    BoundReport { checks, severi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terracini::{DefectLedger, LedgerRow};

    /// Assemble a ledger directly from (s, gamma) values.
    fn ledger(n: usize, r: usize, k0: usize, svals: &[usize], gammas: &[Option<usize>]) -> DefectLedger {
        let mut rows = Vec::new();
        let mut prev_f = 0;
        for (k, &s) in svals.iter().enumerate() {
            let e = r.min(n * (k + 1) + k);
            let f = (k + 1) * n + k - s;
            let psi = if k == 0 { 0 } else { f - prev_f };
            let gamma = gammas.get(k).copied().flatten();
            rows.push(LedgerRow {
                k,
                s,
                e,
                delta: e - s,
                f,
                psi,
                gamma,
                t: gamma.map(|g| k * g + k + g - f),
            });
            prev_f = f;
        }
        DefectLedger { n, r, k0, rows }
    }

    fn seg34() -> DefectLedger {
        ledger(7, 19, 3, &[7, 13, 17], &[None, Some(2), Some(4)])
    }

    fn scroll_1_10() -> DefectLedger {
        ledger(2, 12, 5, &[2, 5, 7, 9, 11], &[None, Some(1), Some(1), Some(1), Some(1)])
    }

    fn veronese32() -> DefectLedger {
        // independently frozen from the symmetric rank-locus oracle:
        // s^(k) = min(9, 4(k+1) - k(k+1)/2 - 1)
        ledger(3, 9, 3, &[3, 6, 8, 9], &[None, Some(1), Some(2), None])
    }

    #[test]
    fn subadditivity_on_segre() {
        let checks = check_subadditivity(&seg34(), true);
        assert!(checks.iter().all(|c| c.verdict == Verdict::Holds));
        // psi_2 = 4 >= psi_1 + psi_1 = 4 with equality
        let sup = checks
            .iter()
            .find(|c| c.name == "psi_superadditive" && c.k == Some(2))
            .unwrap();
        assert!(sup.witness.contains("psi_2=4"));
    }

    #[test]
    fn subadditivity_on_scroll() {
        let checks = check_subadditivity(&scroll_1_10(), true);
        assert!(checks.iter().all(|c| c.verdict == Verdict::Holds));
    }

    #[test]
    fn subadditivity_vacuous_when_k0_is_one() {
        let l = ledger(1, 3, 1, &[1, 3], &[]);
        let checks = check_subadditivity(&l, true);
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].verdict, Verdict::Vacuous);
    }

    #[test]
    fn scorza_veronese_threefold() {
        let c = check_scorza(&veronese32(), true);
        assert_eq!(c.verdict, Verdict::Holds);
    }

    #[test]
    fn scorza_needs_positive_psi1() {
        // quadric surface: fills at k=1 with no defect
        let l = ledger(2, 3, 1, &[2, 3], &[]);
        let c = check_scorza(&l, true);
        assert_eq!(c.verdict, Verdict::Violated);
        assert!(c.witness.contains("psi_1 = 0"));
    }

    #[test]
    fn scorza_segre_3_3() {
        // generic rank-locus oracle: s^(k) = min(15, (k+1)(7-k) - 1)
        let l = ledger(6, 15, 3, &[6, 11, 14, 15], &[]);
        let c = check_scorza(&l, true);
        assert_eq!(c.verdict, Verdict::Holds);
    }

    #[test]
    fn step2_segre_strict() {
        let checks = check_step2(&seg34(), 2);
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].verdict, Verdict::Holds);
        assert_eq!(checks[0].witness, "2*f_2=12 < k*n=14");
    }

    #[test]
    fn step2_veronese_equality_diagnostics() {
        let checks = check_step2(&veronese32(), 2);
        assert_eq!(checks[0].witness, "2*f_2=6 = k*n=6");
        assert!(checks.len() > 1);
        assert!(checks.iter().all(|c| c.verdict == Verdict::Holds));
    }

    #[test]
    fn step2_trivial_when_f_zero() {
        let l = ledger(3, 30, 9, &[3, 7, 11], &[]);
        let checks = check_step2(&l, 2);
        assert_eq!(checks[0].verdict, Verdict::Holds);
    }

    #[test]
    fn extended_ln_cases() {
        // equality at the bound
        let v22 = ledger(2, 5, 2, &[2, 4], &[]);
        let c = check_extended_ln(&v22, 1);
        assert_eq!(c.verdict, Verdict::Holds);
        assert!(c.witness.contains("=8 vs"));
        // violated for the triple scroll at k=5
        let fon = ledger(3, 24, 10, &[3, 7, 9, 11, 13, 15], &[]);
        let c = check_extended_ln(&fon, 5);
        assert_eq!(c.verdict, Verdict::Violated);
        assert!(c.witness.contains("30"));
        assert!(c.witness.contains("31"));
        // vacuous when filled
        let filled = ledger(2, 4, 1, &[2, 4], &[]);
        assert_eq!(check_extended_ln(&filled, 1).verdict, Verdict::Vacuous);
    }

    #[test]
    fn severi_detection() {
        let v22 = ledger(2, 5, 2, &[2, 4], &[]);
        assert_eq!(detect_k_severi(&v22), vec![1]);
        // skew rank-locus oracle: G(1,7) has s^(2) = 26 in P^27
        let g17 = ledger(12, 27, 3, &[12, 21, 26], &[]);
        assert_eq!(detect_k_severi(&g17), vec![2]);
        assert_eq!(detect_k_severi(&scroll_1_10()), Vec::<usize>::new());
    }

    #[test]
    fn rk_surrogate_cases() {
        let c = check_rk_surrogate(&seg34(), 2);
        assert_eq!(c.verdict, Verdict::Holds);
        let c = check_rk_surrogate(&veronese32(), 2);
        assert_eq!(c.verdict, Verdict::Holds);
        // no gamma known -> inconclusive
        let l = ledger(3, 24, 10, &[3, 7, 9], &[]);
        assert_eq!(check_rk_surrogate(&l, 2).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn ln_violation_refutes_rk() {
        let fon = ledger(3, 24, 10, &[3, 7, 9, 11, 13, 15], &[]);
        let report = evaluate_bounds(&fon, true);
        let rk5 = report
            .checks
            .iter()
            .find(|c| c.name == "rk_criterion" && c.k == Some(5))
            .unwrap();
        assert_eq!(rk5.verdict, Verdict::Violated);
        assert!(rk5.witness.contains("linear-normality"));
    }

    #[test]
    fn violated_ln_never_with_satisfied_rk() {
        for l in [seg34(), scroll_1_10(), veronese32()] {
            let report = evaluate_bounds(&l, true);
            for k in 1..=l.kmax() {
                let ln = report
                    .checks
                    .iter()
                    .find(|c| c.name == "linear_normality" && c.k == Some(k))
                    .unwrap();
                let rk = report
                    .checks
                    .iter()
                    .find(|c| c.name == "rk_criterion" && c.k == Some(k))
                    .unwrap();
                assert!(!(ln.verdict == Verdict::Violated && rk.verdict == Verdict::Holds));
            }
        }
    }

    #[test]
    fn nonsmooth_failures_marked_outside_hypotheses() {
        // fabricated psi dip (1, 0, 1): monotonicity and superadditivity
        // fail, but on a non-smooth model they must not read "violated"
        let l = ledger(4, 40, 9, &[4, 8, 13, 17], &[]);
        let smooth_checks = check_subadditivity(&l, true);
        assert!(smooth_checks.iter().any(|c| c.verdict == Verdict::Violated));
        let checks = check_subadditivity(&l, false);
        for c in &checks {
            assert_ne!(c.verdict, Verdict::Violated);
        }
    }
}
