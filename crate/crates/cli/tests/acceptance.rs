//! Acceptance suite: one line per criterion with its verdict and time.
//!
//! Criteria tagged slow only run with `JACTYPE_ACCEPTANCE_SLOW=1`.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use jactype::groebner::satisfies_buchberger_criterion;
use jactype::jacobian::top_witness;
use jactype::{
    CheckResult, DivisorData, Field, FieldSpec, Ideal, Monomial, PolyRing, PrimeField, Rationals,
    ReesPresentation,
};
use jactype_cli::corpus::{run_entry, Corpus};
use jactype_cli::report::{ReportDocument, EXACT};
use jactype_cli::sweep::{parse_points, sweep};
use jactype_cli::ProblemSpec;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GF: FieldSpec = FieldSpec::PrimeField(32003);
const KATO_FAMILY: &str = include_str!("../corpus/kato_family.toml");
const KATO_POINTS: &str = include_str!("../corpus/kato_points.txt");
/// Corpus entries in the same order as the sweep points.
const KATO_ENTRIES: [&str; 7] = [
    "kato-t52-nonzero-special",
    "kato-t52-nonzero-generic",
    "kato-t33-zero-t52-t43",
    "kato-t33-zero-t52",
    "kato-t43",
    "kato-t53",
    "kato-homogeneous",
];
/// Wall-clock budget for each Q run in the field-agreement criterion.
const Q_BUDGET: Duration = Duration::from_secs(240);

type Outcome = Result<(), String>;

struct Ctx {
    corpus: Corpus,
    /// Every report produced so far, tagged with its entry name.
    docs: Vec<(String, ReportDocument)>,
}

impl Ctx {
    fn entry(&mut self, name: &str, field: FieldSpec) -> Result<ReportDocument, String> {
        let entry = self
            .corpus
            .entry(name)
            .ok_or_else(|| format!("no corpus entry {name}"))?;
        let out = run_entry(entry, field, false);
        if let Some(e) = &out.error {
            return Err(format!("{name} [{field}]: {e}"));
        }
        let doc = *out.report.clone().expect("report without error");
        self.docs.push((name.to_string(), doc.clone()));
        if !out.mismatches.is_empty() || !out.failed_checks.is_empty() {
            let mut all = out.mismatches.clone();
            all.extend(out.failed_checks.iter().cloned());
            return Err(format!("{name} [{field}]: {}", all.join("; ")));
        }
        Ok(doc)
    }

    fn find(&self, name: &str, field: FieldSpec) -> Option<&ReportDocument> {
        self.docs
            .iter()
            .find(|(n, d)| n == name && d.problem.field == field)
            .map(|(_, d)| d)
    }
}

fn timed(bound: Option<Duration>, run: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = run();
    let took = start.elapsed();
    if let (Ok(()), Some(b)) = (&out, bound) {
        if took > b {
            out = Err(format!(
                "took {:.1}s, bound {:.0}s",
                took.as_secs_f64(),
                b.as_secs_f64()
            ));
        }
    }
    (out, took)
}

fn criterion_1(ctx: &mut Ctx) -> Outcome {
    for name in ["cusp", "e12-quasi-homogeneous"] {
        let (r, took) = timed(Some(Duration::from_secs(5)), || {
            let doc = ctx.entry(name, FieldSpec::Rationals)?;
            if doc.evidence != EXACT {
                return Err(format!("{name}: evidence label {}", doc.evidence));
            }
            Ok(())
        });
        r.map_err(|e| format!("{e} ({:.1}s)", took.as_secs_f64()))?;
    }
    Ok(())
}

fn criterion_2(ctx: &mut Ctx) -> Outcome {
    timed(Some(Duration::from_secs(60)), || {
        ctx.entry("reiffen-4-5", FieldSpec::Rationals).map(drop)
    })
    .0
}

fn criterion_3(ctx: &mut Ctx) -> Outcome {
    let five_min = Duration::from_secs(300);
    for name in ["reiffen-5-6", "reiffen-6-7"] {
        timed(Some(five_min), || ctx.entry(name, GF).map(drop)).0?;
    }
    // rt = floor(a/2), rn = rt - 1
    for (name, a) in [("reiffen-5-6", 5), ("reiffen-6-7", 6)] {
        let doc = ctx.find(name, GF).expect("ran above");
        if doc.analysis.rt != a / 2 || doc.analysis.rn + 1 != doc.analysis.rt {
            return Err(format!(
                "{name}: rt = {}, rn = {}",
                doc.analysis.rt, doc.analysis.rn
            ));
        }
    }
    Ok(())
}

fn criterion_4(ctx: &mut Ctx) -> Outcome {
    let family = ProblemSpec::from_text(KATO_FAMILY).map_err(|e| e.to_string())?;
    let points = parse_points(KATO_POINTS).map_err(|e| e.to_string())?;
    if points.len() != KATO_ENTRIES.len() {
        return Err(format!("{} points", points.len()));
    }
    let rows = sweep(&family, &points, false);
    let last = rows.len() - 1;
    for (k, row) in rows.iter().enumerate() {
        let doc = row
            .outcome
            .as_ref()
            .map_err(|e| format!("{}: {e}", row.point.label))?;
        ctx.docs
            .push((KATO_ENTRIES[k].to_string(), (**doc).clone()));
        let want = if k == last { 1 } else { 2 };
        if doc.analysis.rt != want {
            return Err(format!(
                "{}: rt = {}, expected {want}",
                row.point.label, doc.analysis.rt
            ));
        }
        if !doc.checks_passed() {
            return Err(format!("{}: consistency check failed", row.point.label));
        }
        let t2 = doc.analysis.t_table.iter().filter(|e| e.i == 2 && e.d >= 2);
        if t2.clone().any(|e| !e.vanishes) {
            return Err(format!("{}: some T_(2,d) != 0", row.point.label));
        }
        // the published L(f) bounds rt from above
        let entry = ctx
            .corpus
            .entry(KATO_ENTRIES[k])
            .expect("corpus has every stratum");
        let l = entry
            .metadata
            .get("l_of_f")
            .and_then(|v| v.as_u64())
            .unwrap_or(u64::MAX);
        if doc.analysis.rt as u64 > l {
            return Err(format!(
                "{}: rt = {} > L(f) = {l}",
                row.point.label, doc.analysis.rt
            ));
        }
    }
    Ok(())
}

fn criterion_5(ctx: &mut Ctx) -> Outcome {
    timed(Some(Duration::from_secs(300)), || {
        ctx.entry("two-exponents-easy", GF).map(drop)
    })
    .0
}

fn criterion_6(ctx: &mut Ctx) -> Outcome {
    timed(Some(Duration::from_secs(2 * 3600)), || {
        ctx.entry("two-exponents-hard", GF).map(drop)
    })
    .0
}

fn criterion_7(ctx: &mut Ctx) -> Outcome {
    let ten_min = Duration::from_secs(600);
    let doc = {
        timed(Some(ten_min), || ctx.entry("narvaez-1", GF).map(drop)).0?;
        ctx.find("narvaez-1", GF).expect("ran above").clone()
    };
    if doc.analysis.verdict.is_expected() {
        return Err("narvaez-1 classified as expected".into());
    }
    timed(Some(ten_min), || ctx.entry("narvaez-2", GF).map(drop)).0
}

fn criterion_7c(ctx: &mut Ctx) -> Outcome {
    timed(Some(Duration::from_secs(3600)), || {
        ctx.entry("narvaez-3", GF).map(drop)
    })
    .0
}

const THEOREM_CHECKS: [&str; 5] = [
    "reduction_bound",
    "id_equals_rn_plus_one",
    "r_at_most_id",
    "verdict_logic",
    "top_equation",
];

fn criterion_8(ctx: &mut Ctx) -> Outcome {
    if ctx.docs.is_empty() {
        return Err("no analyses ran".into());
    }
    let mut seen = BTreeSet::new();
    let mut applied = BTreeSet::new();
    for (name, doc) in &ctx.docs {
        let checks: &[CheckResult] = &doc.checks;
        if let Some(c) = checks.iter().find(|c| !c.passed) {
            return Err(format!(
                "{name} [{}]: {} ({}) failed: {}",
                doc.problem.field, c.name, c.statement, c.detail
            ));
        }
        for c in checks {
            seen.insert(c.name.clone());
            if c.applicable {
                applied.insert(c.name.clone());
            }
        }
        let smooth = doc.analysis.smooth;
        for required in THEOREM_CHECKS {
            let present = checks.iter().any(|c| c.name == required);
            if !present && !(smooth && required == "top_equation") {
                return Err(format!("{name}: check {required} did not run"));
            }
        }
        if doc.problem.metadata.contains_key("l_of_f")
            && !checks.iter().any(|c| c.name == "bernstein_sato_bound")
        {
            return Err(format!("{name}: L(f) supplied but not compared"));
        }
    }
    for must in ["vanishing_implies_expected", "bernstein_sato_bound"] {
        if !applied.contains(must) {
            return Err(format!("{must} never applicable (seen {seen:?})"));
        }
    }
    Ok(())
}

fn rees_and_bases_sound<F: Field>(field: F, vars: &[&str], f: &str) -> Outcome {
    let ring = PolyRing::grevlex(field, vars).map_err(|e| e.to_string())?;
    let data = DivisorData::parse(&ring, f).map_err(|e| e.to_string())?;
    let n = data.nvars();
    let mut ideals: Vec<Ideal<F>> = vec![
        data.gradient().clone(),
        data.jacobian().clone(),
        (*data.jacobian_power(2)).clone(),
        (*data.chain_product(n, 1)).clone(),
        data.gradient().colon(data.f()),
        data.chain_product(n, 1).colon(&ring.pow(data.f(), 2)),
    ];
    ideals.push(
        data.chain_product(1, 2)
            .colon(data.chain_generator(2))
            .intersect(&data.jacobian_power(2))
            .map_err(|e| e.to_string())?,
    );
    for (k, ideal) in ideals.iter().enumerate() {
        let gb = ideal.groebner_basis();
        if !satisfies_buchberger_criterion(gb.ring(), gb.elements()) {
            return Err(format!("{f}: basis {k} fails the Buchberger criterion"));
        }
    }
    let mut gens: Vec<_> = data.partials().to_vec();
    gens.push(data.f().clone());
    let pres = ReesPresentation::with_s_last(&ring, &gens).map_err(|e| e.to_string())?;
    if !satisfies_buchberger_criterion(pres.ring(), pres.basis().elements()) {
        return Err(format!("{f}: Rees basis fails the Buchberger criterion"));
    }
    if !pres.substitution_sound() {
        return Err(format!(
            "{f}: a Rees equation does not vanish under substitution"
        ));
    }
    // witnesses re-verify as global memberships
    if let Some(w) = data.gradient().member_local(data.f()) {
        if !w.verify(data.gradient()) {
            return Err(format!("{f}: Euler witness does not verify"));
        }
    }
    for l in 1..=3 {
        if let Some(w) = top_witness(&data, l) {
            if !w.verify(&data.chain_product(n, l - 1)) {
                return Err(format!("{f}: witness for f^{l} does not verify"));
            }
            break;
        }
    }
    Ok(())
}

type Exps = [u16; 3];

fn mono_ideal(r: &PolyRing<Rationals>, gens: &[Exps]) -> Ideal<Rationals> {
    Ideal::new(
        r,
        gens.iter()
            .map(|e| r.monomial(Monomial::from_exponents(e), r.field().one()))
            .collect(),
    )
}

fn random_monomials(rng: &mut StdRng) -> Vec<Exps> {
    let k = rng.random_range(1..=4);
    (0..k)
        .map(|_| {
            [
                rng.random_range(0..5),
                rng.random_range(0..5),
                rng.random_range(0..5),
            ]
        })
        .collect()
}

fn lcm(a: &Exps, b: &Exps) -> Exps {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

fn quotient(a: &Exps, b: &Exps) -> Exps {
    [
        a[0] - a[0].min(b[0]),
        a[1] - a[1].min(b[1]),
        a[2] - a[2].min(b[2]),
    ]
}

fn monomial_oracles(cases: usize) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let r = PolyRing::grevlex(Rationals, &["x", "y", "z"]).unwrap();
    for case in 0..cases {
        let a = random_monomials(&mut rng);
        let b = random_monomials(&mut rng);
        let n = random_monomials(&mut rng)[0];
        let (ia, ib) = (mono_ideal(&r, &a), mono_ideal(&r, &b));
        let colon_want: Vec<Exps> = a.iter().map(|m| quotient(m, &n)).collect();
        let g = r.monomial(Monomial::from_exponents(&n), r.field().one());
        if !ia.colon(&g).equals(&mono_ideal(&r, &colon_want)) {
            return Err(format!("case {case}: colon of {a:?} by {n:?}"));
        }
        let inter_want: Vec<Exps> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| lcm(x, y)))
            .collect();
        if !ia
            .intersect(&ib)
            .unwrap()
            .equals(&mono_ideal(&r, &inter_want))
        {
            return Err(format!("case {case}: intersection of {a:?} and {b:?}"));
        }
        // local witnesses: pick g in (a) times a unit
        let unit = r.parse("1 + x + y*z").unwrap();
        let target = r.mul(
            &unit,
            &r.monomial(Monomial::from_exponents(&a[0]), r.field().one()),
        );
        let w = ia
            .member_local(&target)
            .ok_or_else(|| format!("case {case}: membership missed"))?;
        if !w.verify(&ia) {
            return Err(format!("case {case}: witness does not verify"));
        }
    }
    Ok(())
}

fn criterion_9(_: &mut Ctx) -> Outcome {
    monomial_oracles(200)?;
    rees_and_bases_sound(Rationals, &["x", "y"], "x^2 + y^3")?;
    rees_and_bases_sound(Rationals, &["x", "y"], "x^4 + y^5 + x*y^4")?;
    rees_and_bases_sound(Rationals, &["x", "y"], "x^4*y^5")?;
    let gf = PrimeField::new(32003).unwrap();
    rees_and_bases_sound(gf, &["x", "y"], "x^7 + y^5 - x^5*y^3")?;
    rees_and_bases_sound(gf, &["x", "y", "z"], "x*y*(x + y)*(x + y*z)")?;
    Ok(())
}

/// Runs the CLI on `spec`; `None` when it does not finish within `budget`.
fn run_bounded(spec: &ProblemSpec, budget: Duration) -> Result<Option<ReportDocument>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec_path = dir.path().join("problem.toml");
    let out_path = dir.path().join("report.json");
    std::fs::write(
        &spec_path,
        toml::to_string(spec).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let mut child = Command::new(env!("CARGO_BIN_EXE_jactype"))
        .args(["analyze", "--no-timings", "--spec"])
        .arg(&spec_path)
        .arg("--out")
        .arg(&out_path)
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    loop {
        if let Some(status) = child.try_wait().map_err(|e| e.to_string())? {
            if !status.success() {
                return Err(format!("{}: exit {status}", spec.name));
            }
            let text = std::fs::read_to_string(&out_path).map_err(|e| e.to_string())?;
            return serde_json::from_str(&text)
                .map(Some)
                .map_err(|e| e.to_string());
        }
        if start.elapsed() > budget {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(None);
        }
        std::thread::sleep(Duration::from_millis(50));
    }
}

fn integer_outputs(doc: &ReportDocument) -> serde_json::Value {
    let a = &doc.analysis;
    let t: Vec<_> = a.t_table.iter().map(|e| (e.i, e.d, e.vanishes)).collect();
    let eq: Vec<_> = a
        .effective_quotients
        .iter()
        .map(|e| (e.d, e.vanishes))
        .collect();
    serde_json::json!({
        "rn": a.rn, "rt": a.rt, "rt_gradient": a.rt_gradient, "r_of_f": a.r_of_f,
        "id_of_f": a.id_of_f, "verdict": a.verdict, "euler": a.euler_homogeneous,
        "regular_sequence": a.regular_sequence, "dmax": a.dmax, "t": t, "eq": eq,
    })
}

fn criterion_10(ctx: &mut Ctx) -> Outcome {
    let mut names: Vec<&str> = vec!["cusp", "e12-quasi-homogeneous", "reiffen-4-5"];
    names.extend(["reiffen-5-6", "reiffen-6-7", "two-exponents-easy"]);
    names.extend(KATO_ENTRIES);
    let mut compared = 0;
    let mut incomplete = Vec::new();
    for name in names {
        let entry = ctx.corpus.entry(name).expect("corpus entry").clone();
        let q = match ctx.find(name, FieldSpec::Rationals) {
            Some(d) => d.clone(),
            None => match run_bounded(&entry.spec(FieldSpec::Rationals), Q_BUDGET)? {
                Some(d) => d,
                None => {
                    incomplete.push(name);
                    continue;
                }
            },
        };
        let gf = match ctx.find(name, GF) {
            Some(d) => d.clone(),
            None => ctx.entry(name, GF)?,
        };
        if integer_outputs(&q) != integer_outputs(&gf) {
            return Err(format!(
                "{name}: Q {} vs GF {}",
                integer_outputs(&q),
                integer_outputs(&gf)
            ));
        }
        compared += 1;
    }
    if !incomplete.is_empty() {
        println!(
            "    note: Q did not finish within {}s for {}",
            Q_BUDGET.as_secs(),
            incomplete.join(", ")
        );
    }
    if compared < 3 {
        return Err(format!("only {compared} entries compared"));
    }
    Ok(())
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    slow: bool,
    run: fn(&mut Ctx) -> Outcome,
}

fn main() {
    let slow = std::env::var("JACTYPE_ACCEPTANCE_SLOW").is_ok_and(|v| v == "1");
    let criteria = [
        Criterion {
            id: "1",
            title: "quasi-homogeneous baseline over Q",
            slow: false,
            run: criterion_1,
        },
        Criterion {
            id: "2",
            title: "Reiffen(4,5) over Q",
            slow: false,
            run: criterion_2,
        },
        Criterion {
            id: "3",
            title: "Reiffen scaling (5,6), (6,7)",
            slow: false,
            run: criterion_3,
        },
        Criterion {
            id: "4",
            title: "Kato strata sweep (< 10 min)",
            slow: false,
            run: criterion_4,
        },
        Criterion {
            id: "5",
            title: "two exponents, easy",
            slow: false,
            run: criterion_5,
        },
        Criterion {
            id: "6",
            title: "two exponents, hard",
            slow: true,
            run: criterion_6,
        },
        Criterion {
            id: "7",
            title: "Narvaez examples 1 and 2",
            slow: false,
            run: criterion_7,
        },
        Criterion {
            id: "7c",
            title: "Narvaez example 3",
            slow: false,
            run: criterion_7c,
        },
        Criterion {
            id: "8",
            title: "theorem checks on every analysis",
            slow: false,
            run: criterion_8,
        },
        Criterion {
            id: "9",
            title: "engine oracle suite (< 2 min)",
            slow: false,
            run: criterion_9,
        },
        Criterion {
            id: "10",
            title: "Q and GF(32003) agreement",
            slow: false,
            run: criterion_10,
        },
    ];
    let bounds = [("4", 600), ("9", 120)];
    let mut ctx = Ctx {
        corpus: Corpus::bundled(),
        docs: Vec::new(),
    };
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for c in &criteria {
        if c.slow && !slow {
            println!(
                "criterion {:>3}  SKIP  {} (slow; set JACTYPE_ACCEPTANCE_SLOW=1)",
                c.id, c.title
            );
            skipped += 1;
            continue;
        }
        let bound = bounds
            .iter()
            .find(|(id, _)| *id == c.id)
            .map(|&(_, s)| Duration::from_secs(s));
        let (out, took) = timed(bound, || (c.run)(&mut ctx));
        match out {
            Ok(()) => {
                passed += 1;
                println!(
                    "criterion {:>3}  PASS  {} ({:.1}s)",
                    c.id,
                    c.title,
                    took.as_secs_f64()
                );
            }
            Err(e) => {
                failed += 1;
                println!(
                    "criterion {:>3}  FAIL  {} ({:.1}s): {e}",
                    c.id,
                    c.title,
                    took.as_secs_f64()
                );
            }
        }
        let _ = std::io::stdout().flush();
    }
    println!("acceptance: {passed} passed, {failed} failed, {skipped} skipped");
    if failed > 0 {
        std::process::exit(1);
    }
}
