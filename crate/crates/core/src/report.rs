//! One verification run per family spec, assembled into a serializable report.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::families::{build_family, FamilySpec};
use crate::foursym::{make_foursym, Dims, FourSymData, Nondegeneracy, Sign};
use crate::linalg::{GramForm, Signature};
use crate::tensors::connection::{
    chern_torsion_check, connections_agree, form_parallel_check, j_parallel_check, koszul_identity_check,
    torsion_free_check, Connection,
};
use crate::tensors::curvature::{curvature, curvature_oracle, j_invariance_check, CurvatureKind, CurvatureTable};
use crate::tensors::nijenhuis::nijenhuis_summary;
use crate::tensors::ricci::{
    chern_ricci_minus_with, chern_ricci_plus_with, einstein_check, hermitian_check, ricci_gram_with, special_check,
    Proportionality,
};

/// Seed for the random Nijenhuis lift. Fixed so reports are reproducible.
pub const LIFT_SEED: u64 = 0x4f53_594d;

#[derive(Debug, Clone, Serialize)]
pub struct Signatures {
    pub gplus: Option<Signature>,
    pub gminus: Option<Signature>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NijenhuisReport {
    pub jplus_zero: Check,
    pub jminus_image_dim: Option<usize>,
    pub maximal: bool,
    pub symmetric_mode: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictSet {
    pub jplus_nijenhuis_zero: Check,
    pub jminus_image_dim: Option<usize>,
    pub maximal: bool,
    pub hermitian_plus: Check,
    pub hermitian_minus: Check,
    pub einstein_plus: Proportionality,
    /// Informational: Ric^{g⁻} against G⁻. Not counted towards the exit status.
    pub einstein_minus: Proportionality,
    pub special_minus: Proportionality,
    pub special_plus: Proportionality,
    pub oracle_match: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct Consistency {
    pub oracle_match: Check,
    pub closedness: Check,
    pub compatibility: Check,
    pub lift_independence: Check,
    pub construction: Check,
    pub sigma_order4: Check,
    pub automorphism: Check,
    pub projectors: Check,
    pub graded_brackets: Check,
    pub isotropy_invariance: Check,
    pub omega_invariance: Check,
    pub nondegeneracy_equivalence: Check,
    pub nijenhuis_minus_formula: Check,
    pub nijenhuis_image_structure: Check,
    pub torsion_free: Check,
    pub koszul_identity: Check,
    pub metric_parallel: Check,
    pub kaehler_parallel: Check,
    pub curvature_antisymmetry: Check,
    pub curvature_j_invariance: Check,
    pub ricci_routes: Check,
    pub chern_routes: Check,
    pub chern_torsion: Check,
    pub chern_parallel: Check,
    pub chern_ricci_routes: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct Phase {
    pub phase: &'static str,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub spec: FamilySpec,
    pub dims: Option<Dims>,
    pub nondegenerate: Option<Nondegeneracy>,
    pub signatures: Signatures,
    pub nijenhuis: NijenhuisReport,
    pub verdicts: VerdictSet,
    pub consistency: Consistency,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Phase>>,
}

impl VerificationReport {
    /// Every tri-state flag that counts towards the exit status, with a dotted name.
    pub fn checks(&self) -> Vec<(String, &Check)> {
        let v = &self.verdicts;
        let c = &self.consistency;
        let mut out: Vec<(String, &Check)> = vec![
            ("nijenhuis.jplus_zero".into(), &self.nijenhuis.jplus_zero),
            ("verdicts.jplus_nijenhuis_zero".into(), &v.jplus_nijenhuis_zero),
            ("verdicts.hermitian_plus".into(), &v.hermitian_plus),
            ("verdicts.hermitian_minus".into(), &v.hermitian_minus),
            ("verdicts.einstein_plus".into(), &v.einstein_plus.check),
            ("verdicts.special_minus".into(), &v.special_minus.check),
            ("verdicts.special_plus".into(), &v.special_plus.check),
            ("verdicts.oracle_match".into(), &v.oracle_match),
        ];
        let named: [(&str, &Check); 25] = [
            ("oracle_match", &c.oracle_match),
            ("closedness", &c.closedness),
            ("compatibility", &c.compatibility),
            ("lift_independence", &c.lift_independence),
            ("construction", &c.construction),
            ("sigma_order4", &c.sigma_order4),
            ("automorphism", &c.automorphism),
            ("projectors", &c.projectors),
            ("graded_brackets", &c.graded_brackets),
            ("isotropy_invariance", &c.isotropy_invariance),
            ("omega_invariance", &c.omega_invariance),
            ("nondegeneracy_equivalence", &c.nondegeneracy_equivalence),
            ("nijenhuis_minus_formula", &c.nijenhuis_minus_formula),
            ("nijenhuis_image_structure", &c.nijenhuis_image_structure),
            ("torsion_free", &c.torsion_free),
            ("koszul_identity", &c.koszul_identity),
            ("metric_parallel", &c.metric_parallel),
            ("kaehler_parallel", &c.kaehler_parallel),
            ("curvature_antisymmetry", &c.curvature_antisymmetry),
            ("curvature_j_invariance", &c.curvature_j_invariance),
            ("ricci_routes", &c.ricci_routes),
            ("chern_routes", &c.chern_routes),
            ("chern_torsion", &c.chern_torsion),
            ("chern_parallel", &c.chern_parallel),
            ("chern_ricci_routes", &c.chern_ricci_routes),
        ];
        out.extend(named.into_iter().map(|(n, ch)| (format!("consistency.{n}"), ch)));
        out
    }

    pub fn failures(&self) -> Vec<(String, &Check)> {
        self.checks().into_iter().filter(|(_, c)| c.is_fail()).collect()
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| !c.is_fail())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn emit(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                out.write_all(self.to_json()?.as_bytes())?;
                out.write_all(b"\n")?;
            }
            Format::Text => out.write_all(self.to_text().as_bytes())?,
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.spec);
        if let Some(d) = &self.dims {
            s += &format!(
                "  dims        g={} gsigma={} gsigma_m1={} p={} m={}\n",
                d.g, d.gsigma, d.gsigma_m1, d.p, d.m
            );
        }
        if let Some(n) = &self.nondegenerate {
            s += &format!(
                "  nondegen    omega={} gprime={} betav={} beta={}\n",
                n.omega, n.gprime, n.betav, n.beta
            );
        }
        for (name, sig) in [("g+", &self.signatures.gplus), ("g-", &self.signatures.gminus)] {
            if let Some(sig) = sig {
                s += &format!("  signature   {name} ({}, {}, {})\n", sig.pos, sig.neg, sig.zero);
            }
        }
        let n = &self.nijenhuis;
        s += &format!(
            "  nijenhuis   image dim {} maximal={} symmetric_mode={}\n",
            n.jminus_image_dim.map_or("-".into(), |d| d.to_string()),
            n.maximal,
            n.symmetric_mode
        );
        let v = &self.verdicts;
        for (name, p) in [
            ("einstein g+", &v.einstein_plus),
            ("einstein g- (info)", &v.einstein_minus),
            ("special j-", &v.special_minus),
            ("special j+", &v.special_plus),
        ] {
            let factor = p.factor.as_ref().map_or(String::new(), |f| format!(" factor {f}"));
            s += &format!("  {name:<20}{}{factor}\n", status(&p.check));
        }
        for (name, c) in self.checks() {
            s += &format!("  {:<44}{}\n", name, status(c));
        }
        if let Some(t) = &self.timing {
            for p in t {
                s += &format!("  time {:<16}{} ms\n", p.phase, p.millis);
            }
        }
        s
    }
}

fn status(c: &Check) -> String {
    match c {
        Check::Pass { note: None } => "pass".into(),
        Check::Pass { note: Some(n) } => format!("pass ({n})"),
        Check::Fail { witness } => format!("FAIL {witness}"),
        Check::Skipped { reason } => format!("skipped ({reason})"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub timing: bool,
}

struct Timer {
    enabled: bool,
    last: Instant,
    phases: Vec<Phase>,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Self { enabled, last: Instant::now(), phases: Vec::new() }
    }

    fn lap(&mut self, phase: &'static str) {
        let now = Instant::now();
        self.phases.push(Phase { phase, millis: (now - self.last).as_millis() });
        self.last = now;
    }

    fn finish(self) -> Option<Vec<Phase>> {
        self.enabled.then_some(self.phases)
    }
}

fn from_result<T>(r: &Result<T>) -> Check {
    match r {
        Ok(_) => Check::pass(),
        Err(e) => Check::fail(e.to_string()),
    }
}

fn skipped_prop(reason: &str) -> Proportionality {
    Proportionality::skipped(reason)
}

/// Runs the whole pipeline. Mathematical failures end up in the report; only an invalid
/// spec is an error.
pub fn run_verify(spec: FamilySpec) -> Result<VerificationReport> {
    run_verify_with(spec, Options::default())
}

pub fn run_verify_with(spec: FamilySpec, opts: Options) -> Result<VerificationReport> {
    let mut timer = Timer::new(opts.timing);
    let built = build_family(spec).and_then(make_foursym);
    timer.lap("build");
    match built {
        Ok(data) => Ok(verify_data(&data, timer)),
        Err(e @ Error::InvalidSpec(_)) => Err(e),
        Err(e) => Ok(failed_construction(spec, e, timer)),
    }
}

fn failed_construction(spec: FamilySpec, e: Error, timer: Timer) -> VerificationReport {
    let s = || Check::skipped("construction failed");
    VerificationReport {
        spec,
        dims: None,
        nondegenerate: None,
        signatures: Signatures { gplus: None, gminus: None },
        nijenhuis: NijenhuisReport { jplus_zero: s(), jminus_image_dim: None, maximal: false, symmetric_mode: false },
        verdicts: VerdictSet {
            jplus_nijenhuis_zero: s(),
            jminus_image_dim: None,
            maximal: false,
            hermitian_plus: s(),
            hermitian_minus: s(),
            einstein_plus: skipped_prop("construction failed"),
            einstein_minus: skipped_prop("construction failed"),
            special_minus: skipped_prop("construction failed"),
            special_plus: skipped_prop("construction failed"),
            oracle_match: s(),
        },
        consistency: Consistency {
            oracle_match: s(),
            closedness: s(),
            compatibility: s(),
            lift_independence: s(),
            construction: Check::fail(e.to_string()),
            sigma_order4: s(),
            automorphism: s(),
            projectors: s(),
            graded_brackets: s(),
            isotropy_invariance: s(),
            omega_invariance: s(),
            nondegeneracy_equivalence: s(),
            nijenhuis_minus_formula: s(),
            nijenhuis_image_structure: s(),
            torsion_free: s(),
            koszul_identity: s(),
            metric_parallel: s(),
            kaehler_parallel: s(),
            curvature_antisymmetry: s(),
            curvature_j_invariance: s(),
            ricci_routes: s(),
            chern_routes: s(),
            chern_torsion: s(),
            chern_parallel: s(),
            chern_ricci_routes: s(),
        },
        timing: timer.finish(),
    }
}

const SYMMETRIC_NOTE: &str = "symmetric mode: gsigma_m1 = 0 and j- = j+";

fn oracle_tables(data: &FourSymData) -> Vec<(CurvatureTable, Check)> {
    CurvatureKind::ALL
        .iter()
        .map(|&kind| {
            let t = curvature(data, kind);
            let agreement = t.agreement_check(data, &curvature_oracle(data, kind));
            (t, agreement)
        })
        .collect()
}

fn verify_data(data: &FourSymData, mut timer: Timer) -> VerificationReport {
    let symmetric = data.symmetric_mode();
    let mark = |c: Check| match c {
        Check::Pass { note: None } if symmetric => Check::degenerate(SYMMETRIC_NOTE),
        c => c,
    };
    let invariants = data.invariant_checks();
    let inv = |name: &str| invariants.iter().find(|(n, _)| *n == name).map(|(_, c)| c.clone()).expect("named check");

    let metric = |s: Sign| data.metric_gram(s);
    let signatures = Signatures {
        gplus: metric(Sign::Plus).ok().and_then(|g| g.signature().ok()),
        gminus: metric(Sign::Minus).ok().and_then(|g| g.signature().ok()),
    };
    let compatibility = Check::all(Sign::BOTH.map(|s| data.compatibility_check(s)));
    timer.lap("forms");

    let nij = nijenhuis_summary(data, LIFT_SEED);
    let dm = data.dim_m();
    let image_dim = nij.minus_image.dim;
    let maximal = dm > 0 && image_dim == dm;
    let image_structure = if nij.minus_image.structural_agreement() && nij.plus_image.structural_agreement() {
        mark(Check::pass())
    } else {
        Check::fail(format!(
            "image dim {} but structural spans give {} + {}",
            image_dim, nij.minus_image.p_gm1_dim, nij.minus_image.pp_gm1_dim
        ))
    };
    timer.lap("nijenhuis");

    let mut torsion_free = Vec::new();
    let mut koszul = Vec::new();
    let mut metric_parallel = Vec::new();
    for s in Sign::BOTH {
        let lc = Connection::levi_civita(data, s);
        torsion_free.push(torsion_free_check(data, &lc));
        koszul.push(koszul_identity_check(data, s, &lc));
        if let Ok(g) = metric(s) {
            metric_parallel.push(form_parallel_check(data, &lc, &g, "G"));
        }
    }
    let lc_plus = Connection::levi_civita(data, Sign::Plus);
    let jp = data.j_structure(Sign::Plus);
    let jm = data.j_structure(Sign::Minus);
    let kaehler_parallel = Check::all([
        j_parallel_check(data, &lc_plus, &jp, "J+"),
        form_parallel_check(data, &lc_plus, data.omega_gram(), "omega"),
    ]);
    let chern = Connection::chern(data);
    let chern_routes = connections_agree(data, &chern, &Connection::chern_via_levi_civita(data));
    let chern_torsion = mark(chern_torsion_check(data, &chern, &nij.minus_table));
    let chern_parallel = mark(Check::all([
        j_parallel_check(data, &chern, &jm, "J-"),
        form_parallel_check(data, &chern, data.omega_gram(), "omega"),
    ]));
    timer.lap("connections");

    let tables = oracle_tables(data);
    let oracle_match = Check::all(tables.iter().map(|(_, c)| c.clone()));
    let antisymmetry = Check::all(tables.iter().map(|(t, _)| t.antisymmetry_check(data)));
    let (t_plus, t_minus, t_chern) = (&tables[0].0, &tables[1].0, &tables[2].0);
    let curvature_j_invariance = j_invariance_check(data, t_plus, &jp);
    timer.lap("curvature");

    let ric_plus = ricci_gram_with(data, Sign::Plus, t_plus);
    let ric_minus = ricci_gram_with(data, Sign::Minus, t_minus);
    let ricci_routes = Check::all([from_result(&ric_plus), from_result(&ric_minus)]);
    let herm = |r: &Result<GramForm>, j| match r {
        Ok(r) => hermitian_check(data, r, j),
        Err(_) => Check::skipped("ricci routes disagree"),
    };
    let hermitian_plus = herm(&ric_plus, &jp);
    let hermitian_minus = herm(&ric_minus, &jm);
    let einstein = |s: Sign, r: &Result<GramForm>| match r {
        Ok(r) => einstein_check(data, s, r),
        Err(_) => skipped_prop("ricci routes disagree"),
    };
    let einstein_plus = einstein(Sign::Plus, &ric_plus);
    let einstein_minus = einstein(Sign::Minus, &ric_minus);

    let cr_minus = chern_ricci_minus_with(data, t_chern);
    let cr_plus = match &ric_plus {
        Ok(r) => chern_ricci_plus_with(data, r, t_plus),
        Err(e) => Err(Error::Consistency { what: "ricci", witness: e.to_string() }),
    };
    let chern_ricci_routes = Check::all([from_result(&cr_minus), from_result(&cr_plus)]);
    let special = |r: &Result<GramForm>| match r {
        Ok(r) => special_check(data, r),
        Err(_) => skipped_prop("chern-ricci routes disagree"),
    };
    let mut special_minus = special(&cr_minus);
    if symmetric {
        special_minus.check = mark(special_minus.check);
    }
    let special_plus = special(&cr_plus);
    timer.lap("ricci");

    VerificationReport {
        spec: data.alg.spec,
        dims: Some(data.dims()),
        nondegenerate: Some(data.nondegeneracy_report()),
        signatures,
        nijenhuis: NijenhuisReport {
            jplus_zero: nij.plus_zero.clone(),
            jminus_image_dim: Some(image_dim),
            maximal,
            symmetric_mode: symmetric,
        },
        verdicts: VerdictSet {
            jplus_nijenhuis_zero: nij.plus_zero,
            jminus_image_dim: Some(image_dim),
            maximal,
            hermitian_plus,
            hermitian_minus: mark(hermitian_minus),
            einstein_plus,
            einstein_minus,
            special_minus,
            special_plus,
            oracle_match: oracle_match.clone(),
        },
        consistency: Consistency {
            oracle_match,
            closedness: data.closedness_check(),
            compatibility,
            lift_independence: nij.lift_independence,
            construction: Check::pass(),
            sigma_order4: inv("sigma_order4"),
            automorphism: inv("automorphism"),
            projectors: inv("projectors"),
            graded_brackets: inv("graded_brackets"),
            isotropy_invariance: data.isotropy_invariance_check(),
            omega_invariance: data.omega_invariance_check(),
            nondegeneracy_equivalence: data.nondegeneracy_equivalence_check(),
            nijenhuis_minus_formula: mark(nij.minus_formula),
            nijenhuis_image_structure: image_structure,
            torsion_free: Check::all(torsion_free),
            koszul_identity: Check::all(koszul),
            metric_parallel: Check::all(metric_parallel),
            kaehler_parallel,
            curvature_antisymmetry: antisymmetry,
            curvature_j_invariance,
            ricci_routes,
            chern_routes,
            chern_torsion,
            chern_parallel,
            chern_ricci_routes,
        },
        timing: timer.finish(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::linalg::Rational;

    #[test]
    fn sl12_report() {
        let r = run_verify(FamilySpec::new(Family::Sl, 1, 2).unwrap()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.verdicts.einstein_plus.factor, Some(Rational::from_int(3)));
        assert_eq!(r.verdicts.special_minus.factor, Some(Rational::from_int(2)));
        assert!(r.nijenhuis.maximal);
        assert!(r.timing.is_none());
    }

    #[test]
    fn symmetric_mode_reported() {
        let r = run_verify(FamilySpec::new(Family::SoCompact, 1, 1).unwrap()).unwrap();
        assert!(r.nijenhuis.symmetric_mode);
        assert_eq!(r.dims.unwrap().gsigma_m1, 0);
        assert!(r.passed(), "{:?}", r.failures());
    }
}
