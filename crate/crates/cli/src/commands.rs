//! Subcommand bodies. Each returns the text rendering, the structured
//! report, and whether every verification passed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use groupoid_homology::complex::ComplexDump;
use groupoid_homology::mv::{ConnectingReport, LesRecord, SesDegreeReport};
use groupoid_homology::sft::{all_ones, gcd_table, Classification, Collision, GcdRow};
use groupoid_homology::{
    chain_ses, classify as classify_family, collision_search, direct_sum, family_integral, family_mod,
    full_shift_homology, sft_matrix_homology, uct_assemble, uct_verify, Coefficients, FamilySpec, FinAbGroup,
    FiniteGroupoid, IntegerMatrix, MvDecomposition, UctReport, UnitSubset,
};
use serde::Serialize;

use crate::{preset, CliError, Outcome};

#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    pub primary: bool,
}

impl Style {
    fn show(&self, g: &FinAbGroup) -> String {
        if self.primary {
            g.display_primary()
        } else {
            g.to_string()
        }
    }
}

fn outcome(text: String, report: &impl Serialize, passed: bool) -> Outcome {
    Outcome { text, report: serde_json::to_value(report).expect("reports serialize"), passed }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn matrix_text(m: &IntegerMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{}x{} [{}]", m.rows(), m.cols(), rows.join(", "))
}

fn unit_list(g: &FiniteGroupoid, u: &UnitSubset) -> String {
    let pos: Vec<String> = g
        .unit_arrows()
        .iter()
        .enumerate()
        .filter(|(_, &a)| u.contains(a))
        .map(|(i, _)| i.to_string())
        .collect();
    format!("{{{}}}", pos.join(","))
}

fn modulus(d: &num_bigint::BigInt) -> Result<u64, CliError> {
    u64::try_from(d).map_err(|_| CliError::Usage(format!("coefficient modulus {d} is too large")))
}

pub fn gen(preset_str: &str, out: Option<&Path>) -> Result<Outcome, CliError> {
    let g = preset::build(preset_str)?;
    let file = g.to_file();
    let mut json = serde_json::to_string_pretty(&file).expect("groupoid files serialize");
    json.push('\n');
    let text = match out {
        Some(path) => {
            fs::write(path, &json).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            format!("wrote {} ({} arrows, {} units)\n", path.display(), g.arrow_count(), g.unit_arrows().len())
        }
        None => json,
    };
    Ok(outcome(text, &file, true))
}

#[derive(Serialize)]
struct DegreeRow {
    degree: usize,
    group: FinAbGroup,
    text: String,
}

#[derive(Serialize)]
struct HomologyReport {
    command: &'static str,
    arrows: usize,
    units: usize,
    coefficients: FinAbGroup,
    degrees: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complex: Option<ComplexDump>,
}

pub fn homology(
    input: &Path,
    top: usize,
    coeff: &FinAbGroup,
    budget: u64,
    dump: bool,
    style: Style,
) -> Result<Outcome, CliError> {
    let g = preset::load(input)?;
    let integral = g.moore_complex(top, Coefficients::Integers, budget)?;
    let reduced = coeff
        .torsion()
        .iter()
        .map(|d| {
            let q = modulus(d)?;
            Ok((q, g.moore_complex(top, Coefficients::Mod(q), budget)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut degrees = Vec::with_capacity(top);
    for n in 0..top {
        let mut parts = Vec::new();
        if coeff.rank() > 0 {
            let h = integral.homology_int(n)?.group;
            parts.extend(std::iter::repeat_n(h, coeff.rank()));
        }
        for (q, c) in &reduced {
            parts.push(c.homology_mod(*q, n)?.group);
        }
        let group = direct_sum(&parts);
        degrees.push(DegreeRow { degree: n, text: group.to_string(), group });
    }
    let mut text = String::new();
    writeln!(text, "groupoid: {} arrows, {} units", g.arrow_count(), g.unit_arrows().len()).unwrap();
    writeln!(text, "coefficients: {}", style.show(coeff)).unwrap();
    writeln!(text, "chain ranks: {:?}", integral.dims()).unwrap();
    for row in &degrees {
        writeln!(text, "H_{} = {}", row.degree, style.show(&row.group)).unwrap();
    }
    let complex = if dump { Some(ComplexDump::from_complex(&integral)?) } else { None };
    let report = HomologyReport {
        command: "homology",
        arrows: g.arrow_count(),
        units: g.unit_arrows().len(),
        coefficients: coeff.clone(),
        degrees,
        complex,
    };
    Ok(outcome(text, &report, true))
}

#[derive(Serialize)]
struct UctRun {
    command: &'static str,
    coefficients: FinAbGroup,
    degrees: Vec<UctReport>,
    passed: bool,
}

pub fn uct(input: &Path, top: usize, coeff: &FinAbGroup, budget: u64, style: Style) -> Result<Outcome, CliError> {
    let g = preset::load(input)?;
    let degrees = uct_verify(&g, coeff, top, budget)?;
    let passed = degrees.iter().all(|r| r.matches && r.order_equation != Some(false));
    let mut text = String::new();
    writeln!(text, "coefficients A = {}", style.show(coeff)).unwrap();
    for r in &degrees {
        writeln!(
            text,
            "n={}: H_n = {}; H_n⊗A = {}; Tor(H_n-1, A) = {}; assembled = {}; direct = {}; match={}",
            r.degree,
            style.show(&r.integral_n),
            style.show(&r.tensor_part),
            style.show(&r.tor_part),
            style.show(&r.assembled),
            style.show(&r.direct),
            r.matches
        )
        .unwrap();
    }
    writeln!(text, "verdict: {}", verdict(passed)).unwrap();
    Ok(outcome(text, &UctRun { command: "uct", coefficients: coeff.clone(), degrees, passed }, passed))
}

#[derive(Serialize)]
struct MvRun {
    command: &'static str,
    u1: Vec<usize>,
    u2: Vec<usize>,
    chain_level: Vec<SesDegreeReport>,
    sequence: Vec<LesRecord>,
    connecting: Vec<ConnectingReport>,
    orbit_decomposition: Vec<bool>,
    passed: bool,
}

pub fn mv(
    input: &Path,
    top: usize,
    u1: &[usize],
    u2: &[usize],
    budget: u64,
    seed: u64,
    style: Style,
) -> Result<Outcome, CliError> {
    let g = preset::load(input)?;
    let d = MvDecomposition::from_positions(&g, u1, u2)?;
    let ses = chain_ses(&d, top, budget)?;
    let les = ses.long_exact_sequence(seed)?;
    let orbits = ses.orbit_decomposition(budget)?;
    let chain_ok = ses.reports().iter().all(SesDegreeReport::passed);
    let passed = chain_ok && les.is_exact() && les.connecting_verified() && orbits.iter().all(|&x| x);

    let mut text = String::new();
    writeln!(
        text,
        "cover: U1 = {}, U2 = {}, U12 = {}",
        unit_list(&g, &d.u1),
        unit_list(&g, &d.u2),
        unit_list(&g, &d.u12)
    )
    .unwrap();
    writeln!(text, "chain level:").unwrap();
    for r in ses.reports() {
        writeln!(
            text,
            "  degree {}: alpha injective {}, beta surjective {}, ranks add {}, ker beta = im alpha {}, chain maps {}",
            r.degree, r.alpha_injective, r.beta_surjective, r.rank_sum, r.kernel_is_image, r.chain_maps
        )
        .unwrap();
    }
    writeln!(text, "long exact sequence:").unwrap();
    let records = les.records();
    for r in &records {
        let exact = match r.exact {
            Some(true) => "exact",
            Some(false) => "NOT EXACT",
            None => "end",
        };
        writeln!(text, "  {} = {}  [{}]", r.label, style.show(&r.group), exact).unwrap();
        if let Some(m) = &r.map_matrix {
            writeln!(text, "    map {}", matrix_text(m)).unwrap();
        }
    }
    writeln!(text, "connecting maps:").unwrap();
    for (i, c) in les.connecting.iter().enumerate() {
        writeln!(
            text,
            "  degree {} generator {}: class {:?}, zig-zag boundary {}, alternative lift agrees {}",
            c.degree,
            i,
            c.class.iter().map(ToString::to_string).collect::<Vec<_>>(),
            c.is_boundary,
            c.alternative_agrees
        )
        .unwrap();
    }
    writeln!(text, "orbit decomposition: {:?}", orbits).unwrap();
    writeln!(text, "verdict: {}", verdict(passed)).unwrap();
    let report = MvRun {
        command: "mv",
        u1: u1.to_vec(),
        u2: u2.to_vec(),
        chain_level: ses.reports().to_vec(),
        sequence: records,
        connecting: les.connecting.clone(),
        orbit_decomposition: orbits,
        passed,
    };
    Ok(outcome(text, &report, passed))
}

#[derive(Serialize)]
struct FullShiftRun {
    command: &'static str,
    symbols: u64,
    closed_form: Vec<FinAbGroup>,
    matrix_route: Vec<FinAbGroup>,
    passed: bool,
}

pub fn full_shift(n: u64, style: Style) -> Result<Outcome, CliError> {
    if n < 2 {
        return Err(CliError::Usage("the full shift needs at least 2 symbols".into()));
    }
    let closed = full_shift_homology(n, 2)?;
    let size = usize::try_from(n).map_err(|_| CliError::Usage(format!("{n} symbols is too many")))?;
    let (h0, h1) = sft_matrix_homology(&all_ones(size))?;
    let matrix_route = vec![h0, h1];
    let passed = closed == matrix_route;
    let mut text = format!("full shift on {n} symbols\n");
    for (k, h) in closed.iter().enumerate() {
        writeln!(text, "H_{k} = {}", style.show(h)).unwrap();
    }
    writeln!(text, "matrix route agrees: {passed}").unwrap();
    let report = FullShiftRun { command: "sft", symbols: n, closed_form: closed, matrix_route, passed };
    Ok(outcome(text, &report, passed))
}

#[derive(Serialize)]
struct FamilyRow {
    #[serde(flatten)]
    row: GcdRow,
    uct_agrees: bool,
}

#[derive(Serialize)]
struct FamilyRun {
    command: &'static str,
    family: FamilySpec,
    integral: Vec<FinAbGroup>,
    rows: Vec<FamilyRow>,
    passed: bool,
}

pub fn family(n: u64, m: u64, qs: Option<&[u64]>, style: Style) -> Result<Outcome, CliError> {
    let spec = FamilySpec::new(n, m)?;
    let integral = family_integral(spec, 3);
    let rows: Vec<FamilyRow> = gcd_table(spec, qs.unwrap_or_default().iter().copied())?
        .into_iter()
        .map(|row| {
            let a = FinAbGroup::cyclic(row.q);
            let h0 = uct_assemble(&integral[0], &FinAbGroup::trivial(), &a).2;
            let h1 = uct_assemble(&integral[1], &integral[0], &a).2;
            let h2 = uct_assemble(&integral[2], &integral[1], &a).2;
            let uct_agrees = h0 == row.h0 && h1 == row.h1 && h2.is_trivial();
            FamilyRow { row, uct_agrees }
        })
        .collect();
    let passed = rows.iter().all(|r| r.uct_agrees);
    let mut text = format!("family {spec}\n");
    match rows.as_slice() {
        [] => {
            for (k, h) in integral.iter().enumerate() {
                writeln!(text, "H_{k} = {}", style.show(h)).unwrap();
            }
        }
        [r] => {
            writeln!(text, "coefficients Z/{}", r.row.q).unwrap();
            writeln!(text, "H_0 = {}", style.show(&r.row.h0)).unwrap();
            writeln!(text, "H_1 = {}", style.show(&r.row.h1)).unwrap();
            writeln!(text, "uct route agrees: {}", r.uct_agrees).unwrap();
        }
        many => {
            writeln!(text, "q\tH_0\tH_1\tuct").unwrap();
            for r in many {
                writeln!(text, "{}\t{}\t{}\t{}", r.row.q, style.show(&r.row.h0), style.show(&r.row.h1), r.uct_agrees)
                    .unwrap();
            }
        }
    }
    if !rows.is_empty() {
        writeln!(text, "verdict: {}", verdict(passed)).unwrap();
    }
    Ok(outcome(text, &FamilyRun { command: "sft", family: spec, integral, rows, passed }, passed))
}

#[derive(Serialize)]
struct ClassifyRun {
    command: &'static str,
    family: FamilySpec,
    classification: Classification,
    sound: bool,
    qmax: u64,
    collisions: Vec<Collision>,
    flagged_for_review: Vec<Collision>,
    passed: bool,
}

pub fn classify(n: u64, m: u64, bound: u64, qmax: u64, style: Style) -> Result<Outcome, CliError> {
    let spec = FamilySpec::new(n, m)?;
    let classification = classify_family(|q| family_mod(spec, q).expect("probes are positive").h1, bound)?;
    let in_range = spec.m <= bound;
    let sound = !in_range || classification.candidates.contains(&spec);
    let collisions = collision_search(bound, qmax);
    let flagged: Vec<Collision> =
        collisions.iter().filter(|c| classification.candidates.contains(&c.left)).copied().collect();

    let mut text = format!("oracle: H_1 of family {spec}, bound {bound}\n");
    for p in &classification.probes {
        writeln!(text, "  q = {} = {}^{}: H_1 = {}", p.q, p.p, p.l, style.show(&p.h1)).unwrap();
    }
    let names: Vec<String> = classification.candidates.iter().map(ToString::to_string).collect();
    writeln!(text, "candidates: {}", names.join(" ")).unwrap();
    if in_range {
        writeln!(text, "contains {spec}: {sound}").unwrap();
    } else {
        writeln!(text, "{spec} lies outside the bound; soundness not applicable").unwrap();
    }
    writeln!(text, "collisions among n, m <= {bound} over q <= {qmax}: {}", collisions.len()).unwrap();
    for c in &collisions {
        let mark = if flagged.contains(c) { "  [flagged for review]" } else { "" };
        writeln!(text, "  {} ~ {}{mark}", c.left, c.right).unwrap();
    }
    writeln!(text, "verdict: {}", verdict(sound)).unwrap();
    let report = ClassifyRun {
        command: "classify",
        family: spec,
        classification,
        sound,
        qmax,
        collisions,
        flagged_for_review: flagged,
        passed: sound,
    };
    Ok(outcome(text, &report, sound))
}
