//! The `teachdim` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::class::{disjoint_union, powerset_class, warmuth_class, HypothesisClass, LabeledExample};
use crate::constructions::{
    build_tree, double_sigma, find_gvs_beats_local_class, order_to_global_sigma, powerset7_node, powerset7_tree,
    tree_to_local_sigma, verify_subadditive, wsls_disjoint_union_sigma, wsls_td_one_matching, GapSearchBounds,
};
use crate::engines::{
    count_pref_relations, count_pref_relations_by_compositions, is_nonclashing, nctd, nctd_edge_lower_bound,
    powerset_td_lower_bound, rtd, sigma_from_teacher, td_of_sigma, vcd, wc_td, weak_orders, Cost, InitialTarget,
    NctdOptions, TdOptions, TeacherMapping, DEFAULT_BUDGET_NODES,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hc;
use crate::learner::{run_protocol, TieRule};
use crate::preference::{check_family, file as pref_file, is_collusion_free, Family, PreferenceFunction};
use crate::report::{Check, Provenance, Report, SimulationReport, TdRow};

#[derive(Debug, Parser)]
#[command(name = "teachdim", version, about = "Exact teaching dimensions for version-space learners")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Search-node budget per target before giving up (exit code 3).
    #[arg(long, global = true, env = "TEACHDIM_BUDGET_NODES", default_value_t = DEFAULT_BUDGET_NODES)]
    pub budget_nodes: usize,
    /// How a target equal to the start hypothesis is counted: reteach, exclude or zero.
    #[arg(long, global = true, default_value = "reteach")]
    pub initial_target: InitialTarget,
    /// Shorthand for `--initial-target zero`.
    #[arg(long, global = true, conflicts_with = "initial_target")]
    pub include_initial_target: bool,
    /// adversarial (ties go against the teacher) or lowest-index.
    #[arg(long, global = true, default_value = "adversarial")]
    pub tie_mode: TieRule,
}

impl Common {
    fn td_options(&self) -> TdOptions {
        TdOptions {
            initial_target: if self.include_initial_target {
                InitialTarget::Zero
            } else {
                self.initial_target
            },
            budget_nodes: self.budget_nodes,
            parallel: true,
        }
    }

    fn provenance(&self) -> Provenance {
        let o = self.td_options();
        let tie = match self.tie_mode {
            TieRule::Adversarial => "adversarial",
            TieRule::LowestIndex => "lowest-index",
        };
        let it = match o.initial_target {
            InitialTarget::Reteach => "reteach",
            InitialTarget::Exclude => "exclude",
            InitialTarget::Zero => "zero",
        };
        Provenance::new(self.budget_nodes, it, tie)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute teaching dimensions of a class.
    Compute(ComputeArgs),
    /// Replay a teaching sequence and dump the learner's trajectory.
    Simulate(SimulateArgs),
    /// Check collusion-freeness, family membership or a teacher mapping.
    Verify(VerifyArgs),
    /// Build a preference function, save it and certify its teaching cost.
    Construct(ConstructArgs),
    /// Recompute a known result and compare with the expected values.
    Reproduce(ReproduceArgs),
    /// Number of preference relations (weak orders) on m hypotheses.
    FamilySize {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Vcd,
    Wctd,
    Rtd,
    Nctd,
    Tdsigma,
    All,
}

#[derive(Debug, Args)]
pub struct ClassArg {
    /// `.hc` class file.
    #[arg(long = "class", value_name = "FILE")]
    pub class: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub measure: Measure,
    /// Class file (same as `--class`).
    #[arg(value_name = "CLASS")]
    pub class_file: Option<PathBuf>,
    #[command(flatten)]
    pub class: ClassArg,
    /// `.pref` file, needed for `tdsigma`.
    #[arg(long)]
    pub pref: Option<PathBuf>,
    /// Start hypothesis: index, name or `all`.
    #[arg(long, default_value = "0")]
    pub h0: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub class: ClassArg,
    #[arg(long)]
    pub pref: PathBuf,
    #[arg(long, default_value = "0")]
    pub h0: String,
    #[arg(long)]
    pub target: String,
    /// Examples such as `x3,x4` (labels taken from the target), `x3:1 x4:0`
    /// or `(x3,1),(x4,0)`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub sequence: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    CollusionFree,
    Family,
    NonClashing,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub kind: VerifyKind,
    #[command(flatten)]
    pub class: ClassArg,
    #[arg(long)]
    pub pref: Option<PathBuf>,
    #[arg(long, default_value = "0")]
    pub h0: String,
    /// Family to test; defaults to every family.
    #[arg(long)]
    pub family: Option<Family>,
    /// JSON teacher mapping: one list of instances (indices or names) per hypothesis.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Powerset7Local,
    Double,
    Union,
    OrderGlobal,
    SearchGap,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub construction: Construction,
    /// Directory for the emitted `.hc`, `.pref` and `.cert.json` files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Base name of the emitted files.
    #[arg(long)]
    pub name: Option<String>,
    #[command(flatten)]
    pub class: ClassArg,
    /// Input preference function (`double`); the star on `{0,1}` when omitted.
    #[arg(long = "in", alias = "pref")]
    pub input: Option<PathBuf>,
    /// Ranks for `order-global`, comma separated, lower preferred.
    #[arg(long)]
    pub ranks: Option<String>,
    /// `union` operands as CLASS PREF CLASS PREF; powerset(3) and powerset(4) when omitted.
    #[arg(num_args = 0..)]
    pub operands: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reproduction {
    Table2,
    Powerset7Gap,
    Subadditivity,
    FamilySizes,
    LowerBounds,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub target: Reproduction,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 7)]
    pub d: u64,
}

/// Result of one invocation: the report and the process exit code.
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_class(path: &Path, prov: &mut Provenance) -> Result<HypothesisClass> {
    let bytes = read(path)?;
    prov.input("class", &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Input(format!("{} is not UTF-8", path.display())))?;
    hc::parse(&text)
}

fn load_pref(path: &Path, class: &HypothesisClass, prov: &mut Provenance) -> Result<PreferenceFunction> {
    let bytes = read(path)?;
    prov.input("pref", &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Input(format!("{} is not UTF-8", path.display())))?;
    pref_file::from_json(&text, class)
}

fn class_path<'a>(positional: Option<&'a PathBuf>, flag: &'a ClassArg) -> Result<&'a PathBuf> {
    positional
        .or(flag.class.as_ref())
        .ok_or_else(|| Error::input("a class file is required (--class FILE)"))
}

/// Resolve a hypothesis given by name or index.
pub fn resolve_hypothesis(class: &HypothesisClass, s: &str) -> Result<usize> {
    if let Some(h) = class.hypothesis_by_name(s) {
        return Ok(h);
    }
    match s.parse::<usize>() {
        Ok(h) if h < class.hypothesis_count() => Ok(h),
        _ => Err(Error::Input(format!("unknown hypothesis {s:?}"))),
    }
}

fn resolve_start(class: &HypothesisClass, s: &str) -> Result<Vec<usize>> {
    if s == "all" {
        Ok((0..class.hypothesis_count()).collect())
    } else {
        Ok(vec![resolve_hypothesis(class, s)?])
    }
}

fn resolve_instance(class: &HypothesisClass, s: &str) -> Result<usize> {
    if let Some(x) = class.instance_by_name(s) {
        return Ok(x);
    }
    match s.parse::<usize>() {
        Ok(x) if x < class.instance_count() => Ok(x),
        _ => Err(Error::Input(format!("unknown instance {s:?}"))),
    }
}

fn parse_label(s: &str) -> Result<bool> {
    match s.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(Error::Input(format!("label must be 0 or 1, got {other:?}"))),
    }
}

/// Parse a sequence; unlabeled instances take the target's label.
pub fn parse_sequence(class: &HypothesisClass, target: usize, text: &str) -> Result<Vec<LabeledExample>> {
    let text = text.trim();
    let mut out = Vec::new();
    if text.contains('(') {
        let mut rest = text;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::input("unbalanced parenthesis in sequence"))?;
            let inner = &rest[open + 1..open + close];
            let mut parts = inner.split(',');
            let x = resolve_instance(class, parts.next().unwrap_or("").trim())?;
            let label = match parts.next() {
                Some(l) => parse_label(l)?,
                None => class.label(target, x),
            };
            if parts.next().is_some() {
                return Err(Error::Input(format!("malformed example ({inner})")));
            }
            out.push(LabeledExample::new(x, label));
            rest = &rest[open + close + 1..];
        }
        return Ok(out);
    }
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (name, label) = match tok.split_once([':', '=']) {
            Some((n, l)) => (n, Some(parse_label(l)?)),
            None => (tok, None),
        };
        let x = resolve_instance(class, name)?;
        out.push(LabeledExample::new(x, label.unwrap_or_else(|| class.label(target, x))));
    }
    Ok(out)
}

fn td_rows(
    class: &HypothesisClass,
    sigma: &PreferenceFunction,
    starts: &[usize],
    opts: &TdOptions,
) -> Result<Vec<TdRow>> {
    starts
        .iter()
        .map(|&h0| {
            let r = td_of_sigma(class, sigma, h0, opts)?;
            Ok(TdRow {
                h0: class.hypothesis_name(h0),
                value: r.value,
                per_target: r
                    .per_target
                    .iter()
                    .filter(|t| !t.excluded)
                    .map(|t| (class.hypothesis_name(t.target), t.cost))
                    .collect(),
            })
        })
        .collect()
}

fn compute(common: &Common, args: &ComputeArgs) -> Result<Outcome> {
    let mut prov = common.provenance();
    let class = load_class(class_path(args.class_file.as_ref(), &args.class)?, &mut prov)?;
    let sigma = match &args.pref {
        Some(p) => Some(load_pref(p, &class, &mut prov)?),
        None => None,
    };
    let mut report = Report::new("compute", prov);
    let want = |m: Measure| args.measure == m || args.measure == Measure::All;
    if want(Measure::Vcd) {
        report.results.push(vcd(&class, None)?);
    }
    if want(Measure::Wctd) {
        report.results.push(wc_td(&class));
    }
    if want(Measure::Rtd) {
        report.results.push(rtd(&class));
    }
    if want(Measure::Nctd) {
        let opts = NctdOptions {
            budget_nodes: common.budget_nodes,
            ..NctdOptions::default()
        };
        report.results.push(nctd(&class, &opts)?);
    }
    if args.measure == Measure::Tdsigma || (args.measure == Measure::All && sigma.is_some()) {
        let sigma = sigma.ok_or_else(|| Error::input("tdsigma needs --pref"))?;
        let starts = resolve_start(&class, &args.h0)?;
        report.td = td_rows(&class, &sigma, &starts, &common.td_options())?;
    }
    Ok(Outcome { report, exit_code: 0 })
}

fn simulate(common: &Common, args: &SimulateArgs) -> Result<Outcome> {
    let mut prov = common.provenance();
    let class = load_class(class_path(None, &args.class)?, &mut prov)?;
    let sigma = load_pref(&args.pref, &class, &mut prov)?;
    let h0 = resolve_hypothesis(&class, &args.h0)?;
    let target = resolve_hypothesis(&class, &args.target)?;
    let seq = parse_sequence(&class, target, &args.sequence)?;
    let traj = run_protocol(&class, &sigma, h0, target, &seq, common.tie_mode.against(target))?;
    let exit_code = if traj.terminated { 0 } else { 1 };
    let mut report = Report::new("simulate", prov);
    report.simulation = Some(SimulationReport {
        h0: class.hypothesis_name(h0),
        target: class.hypothesis_name(target),
        dump: traj.dump(&class),
        trajectory: traj,
    });
    Ok(Outcome { report, exit_code })
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum InstanceRef {
    Index(usize),
    Name(String),
}

fn load_mapping(path: &Path, class: &HypothesisClass, prov: &mut Provenance) -> Result<TeacherMapping> {
    let bytes = read(path)?;
    prov.input("mapping", &bytes);
    let raw: Vec<Vec<InstanceRef>> = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut sets = Vec::with_capacity(raw.len());
    for list in raw {
        let xs = list
            .into_iter()
            .map(|r| match r {
                InstanceRef::Index(x) if x < class.instance_count() => Ok(x),
                InstanceRef::Index(x) => Err(Error::Input(format!("instance {x} out of range"))),
                InstanceRef::Name(s) => resolve_instance(class, &s),
            })
            .collect::<Result<Vec<_>>>()?;
        sets.push(xs);
    }
    if sets.len() != class.hypothesis_count() {
        return Err(Error::Input(format!(
            "mapping has {} entries for {} hypotheses",
            sets.len(),
            class.hypothesis_count()
        )));
    }
    Ok(TeacherMapping::from_instances(class, &sets))
}

const ALL_FAMILIES: [Family; 6] = [
    Family::Const,
    Family::Global,
    Family::Gvs,
    Family::Local,
    Family::Lvs,
    Family::Wsls,
];

fn verify(common: &Common, args: &VerifyArgs) -> Result<Outcome> {
    let mut prov = common.provenance();
    let class = load_class(class_path(None, &args.class)?, &mut prov)?;
    let budget = crate::preference::DEFAULT_SPACE_BUDGET.max(common.budget_nodes);
    let mut verdicts = Vec::new();
    match args.kind {
        VerifyKind::NonClashing => {
            let path = args.mapping.as_ref().ok_or_else(|| Error::input("non-clashing needs --mapping"))?;
            let mapping = load_mapping(path, &class, &mut prov)?;
            verdicts.push(is_nonclashing(&class, &mapping)?);
        }
        VerifyKind::CollusionFree | VerifyKind::Family => {
            let path = args.pref.as_ref().ok_or_else(|| Error::input("--pref is required"))?;
            let sigma = load_pref(path, &class, &mut prov)?;
            if args.kind == VerifyKind::Family {
                let families: Vec<Family> = args.family.map_or(ALL_FAMILIES.to_vec(), |f| vec![f]);
                for f in families {
                    verdicts.push(check_family(&sigma, f, &class, budget)?);
                }
            } else {
                for h0 in resolve_start(&class, &args.h0)? {
                    let mut v = is_collusion_free(&sigma, &class, h0, budget)?;
                    v.property = format!("collusion-free from {}", class.hypothesis_name(h0));
                    verdicts.push(v);
                }
            }
        }
    }
    let mut report = Report::new("verify", prov);
    report.verdicts = verdicts;
    let exit_code = if report.all_verdicts_hold() { 0 } else { 1 };
    Ok(Outcome { report, exit_code })
}

fn save(out: &Path, name: &str, class: &HypothesisClass, sigma: &PreferenceFunction, cert: &serde_json::Value) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| Error::Input(format!("{}: {e}", out.display())))?;
    let write = |ext: &str, body: String| {
        let p = out.join(format!("{name}.{ext}"));
        fs::write(&p, body).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
    };
    write("hc", hc::serialize(class))?;
    write("pref", pref_file::to_json(sigma, class)?)?;
    write("cert.json", serde_json::to_string_pretty(cert).expect("json value"))?;
    Ok(())
}

fn property_checks(class: &HypothesisClass, sigma: &PreferenceFunction, h0: usize, budget: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for f in [sigma.family(), Family::Wsls] {
        let v = check_family(sigma, f, class, budget)?;
        checks.push(Check::holds(format!("family {f}"), "holds", if v.holds { "holds" } else { "fails" }, v.holds));
    }
    let v = is_collusion_free(sigma, class, h0, budget)?;
    checks.push(Check::holds("collusion-free", "holds", if v.holds { "holds" } else { "fails" }, v.holds));
    Ok(checks)
}

fn certificate(
    construction: &str,
    prov: &Provenance,
    h0: usize,
    td: Cost,
    extra: serde_json::Value,
    checks: &[Check],
) -> serde_json::Value {
    json!({
        "construction": construction,
        "inputs": prov.inputs,
        "verified_td": { "h0": h0, "value": td, "detail": extra },
        "property_checks": checks,
    })
}

fn construct(common: &Common, args: &ConstructArgs) -> Result<Outcome> {
    let mut prov = common.provenance();
    let opts = common.td_options();
    let budget = crate::preference::DEFAULT_SPACE_BUDGET.max(common.budget_nodes);
    let name = args.name.clone().unwrap_or_else(|| {
        Construction::value_variants()
            .iter()
            .find(|c| **c == args.construction)
            .and_then(|c| c.to_possible_value())
            .map(|v| v.get_name().to_string())
            .expect("variant has a name")
    });
    let label = name.clone();
    let mut report;
    let mut exit_code = 0;
    match args.construction {
        Construction::SearchGap => {
            report = Report::new("construct", prov);
            match find_gvs_beats_local_class(GapSearchBounds::default())? {
                Some(cert) => {
                    report.checks.push(Check::new("nctd", 1, cert.nctd));
                    report.checks.push(Check::new("rtd", 2, cert.rtd));
                    report.checks.push(Check::holds(
                        "no one-example local learner",
                        "none",
                        format!("{:?}", cert.local_td_one),
                        cert.local_td_one.is_empty(),
                    ));
                    fs::create_dir_all(&args.out).map_err(|e| Error::Input(e.to_string()))?;
                    let p = args.out.join(format!("{name}.hc"));
                    fs::write(&p, hc::serialize(&cert.class)).map_err(|e| Error::Input(e.to_string()))?;
                    let gvs = sigma_from_teacher(&cert.class, &TeacherMapping { sets: cert.mapping.clone() })?;
                    let p = args.out.join(format!("{name}.pref"));
                    fs::write(&p, pref_file::to_json(&gvs, &cert.class)?).map_err(|e| Error::Input(e.to_string()))?;
                    let body = serde_json::to_value(&cert).expect("certificate serializes");
                    let p = args.out.join(format!("{name}.cert.json"));
                    fs::write(&p, serde_json::to_string_pretty(&body).expect("json"))
                        .map_err(|e| Error::Input(e.to_string()))?;
                    report.certificate = Some(body);
                }
                None => {
                    report.notes.push("no class within bounds".into());
                    exit_code = 1;
                }
            }
            return Ok(Outcome { report, exit_code });
        }
        Construction::Powerset7Local => {
            let (class, tree) = powerset7_tree()?;
            let sigma = tree_to_local_sigma(&class, &tree)?;
            let td = td_of_sigma(&class, &sigma, 0, &opts)?.value;
            let checks = property_checks(&class, &sigma, 0, budget)?;
            let cert = certificate(&label, &prov, 0, td, json!({ "tree_depth": tree.depth() }), &checks);
            save(&args.out, &name, &class, &sigma, &cert)?;
            report = Report::new("construct", prov);
            report.checks = checks;
            report.checks.push(Check::new("td", 3, td));
            report.certificate = Some(cert);
        }
        Construction::Double => {
            let (class_k, sigma_k) = match (&args.class.class, &args.input) {
                (Some(c), Some(p)) => {
                    let class = load_class(c, &mut prov)?;
                    let sigma = load_pref(p, &class, &mut prov)?;
                    (class, sigma)
                }
                (None, None) => {
                    let p = powerset_class(1)?;
                    let s = tree_to_local_sigma(&p, &crate::constructions::star_tree(&p)?)?;
                    (p, s)
                }
                _ => return Err(Error::input("double needs both --class and --in, or neither")),
            };
            let (class, sigma) = double_sigma(&class_k, &sigma_k)?;
            let td_k = td_of_sigma(&class_k, &sigma_k, 0, &opts)?.value;
            let td = td_of_sigma(&class, &sigma, 0, &opts)?.value;
            let bound = td_k.finite().map_or(Cost::Infinite, |t| Cost::Finite(2 * t));
            let checks = property_checks(&class, &sigma, 0, budget)?;
            let cert = certificate(&label, &prov, 0, td, json!({ "input_td": td_k, "bound": bound }), &checks);
            save(&args.out, &name, &class, &sigma, &cert)?;
            report = Report::new("construct", prov);
            report.checks = checks;
            report.checks.push(Check::holds("td <= 2 * input td", bound, td, td <= bound));
            report.certificate = Some(cert);
        }
        Construction::Union => {
            let (ca, sa, cb, sb) = match &args.operands[..] {
                [a, pa, b, pb] => {
                    let ca = load_class(a, &mut prov)?;
                    let sa = load_pref(pa, &ca, &mut prov)?;
                    let cb = load_class(b, &mut prov)?;
                    let sb = load_pref(pb, &cb, &mut prov)?;
                    (ca, sa, cb, sb)
                }
                [] => {
                    let ca = powerset_class(3)?;
                    let sa = tree_to_local_sigma(&ca, &build_tree(&ca, 0, 2)?)?;
                    let cb = powerset_class(4)?;
                    let sb = tree_to_local_sigma(&cb, &build_tree(&cb, 0, 3)?)?;
                    (ca, sa, cb, sb)
                }
                _ => return Err(Error::input("union takes CLASS_A PREF_A CLASS_B PREF_B")),
            };
            let c = verify_subadditive(&ca, &sa, 0, &cb, &sb, 0, &opts)?;
            let (class, sigma) = wsls_disjoint_union_sigma(&ca, &sa, &cb, &sb)?;
            let mut checks = Vec::new();
            let v = check_family(&sigma, Family::Wsls, &class, budget)?;
            checks.push(Check::holds("family wsls", "holds", if v.holds { "holds" } else { "fails" }, v.holds));
            let cert = certificate(
                &label,
                &prov,
                0,
                c.td_union,
                serde_json::to_value(&c).expect("serializes"),
                &checks,
            );
            save(&args.out, &name, &class, &sigma, &cert)?;
            report = Report::new("construct", prov);
            report.checks = checks;
            report.checks.push(Check::holds(
                "td(union) <= td(a) + td(b)",
                format!("<= {} + {}", c.td_a, c.td_b),
                c.td_union,
                c.holds,
            ));
            report.certificate = Some(cert);
        }
        Construction::OrderGlobal => {
            let path = args.class.class.as_ref().ok_or_else(|| Error::input("order-global needs --class"))?;
            let class = load_class(path, &mut prov)?;
            let ranks = args
                .ranks
                .as_deref()
                .ok_or_else(|| Error::input("order-global needs --ranks"))?
                .split(',')
                .map(|r| r.trim().parse::<i64>().map_err(|e| Error::Input(format!("rank {r:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let sigma = order_to_global_sigma(&class, &ranks)?;
            let td = td_of_sigma(&class, &sigma, 0, &opts)?.value;
            let v = check_family(&sigma, Family::Global, &class, budget)?;
            let checks = vec![Check::holds("family global", "holds", if v.holds { "holds" } else { "fails" }, v.holds)];
            let cert = certificate(&label, &prov, 0, td, json!({ "rtd": rtd(&class).value }), &checks);
            save(&args.out, &name, &class, &sigma, &cert)?;
            report = Report::new("construct", prov);
            report.checks = checks;
            report.certificate = Some(cert);
        }
    }
    if !report.all_checks_pass() {
        exit_code = 1;
    }
    Ok(Outcome { report, exit_code })
}

fn reproduce(common: &Common, args: &ReproduceArgs) -> Result<Outcome> {
    let opts = common.td_options();
    let budget = crate::preference::DEFAULT_SPACE_BUDGET.max(common.budget_nodes);
    let mut report = Report::new("reproduce", common.provenance());
    let checks = &mut report.checks;
    match args.target {
        Reproduction::Table2 => {
            let w = warmuth_class();
            report.notes.push("Warmuth class, start h1".into());
            for ((name, sigma), want) in fixtures::warmuth_reference_sigmas(&w).iter().zip([3, 3, 2, 2, 1]) {
                let td = td_of_sigma(&w, sigma, 0, &opts)?.value;
                checks.push(Check::new(format!("TD(sigma_{name})"), want, td));
                let Some(_) = fixtures::warmuth_sequence(&w, name, 0) else { continue };
                let mut longest = 0;
                let mut all = true;
                for t in 0..w.hypothesis_count() {
                    let seq = fixtures::warmuth_sequence(&w, name, t).expect("listed");
                    let r = run_protocol(&w, sigma, 0, t, &seq, common.tie_mode.against(t))?;
                    all &= r.terminated || seq.is_empty() && t == 0;
                    longest = longest.max(seq.len());
                }
                checks.push(Check::holds(format!("listed sequences teach sigma_{name}"), "all", if all { "all" } else { "some fail" }, all));
                checks.push(Check::new(format!("longest listed sequence for sigma_{name}"), want, longest));
            }
            checks.push(Check::new("VCD", 2, vcd(&w, None)?.value));
            checks.push(Check::new("wc-TD", 3, wc_td(&w).value));
            checks.push(Check::new("RTD", 3, rtd(&w).value));
            checks.push(Check::new("NCTD", 2, nctd(&w, &NctdOptions::default())?.value));
        }
        Reproduction::Powerset7Gap => {
            let (class, tree) = powerset7_tree()?;
            let sigma = tree_to_local_sigma(&class, &tree)?;
            checks.push(Check::new("tree nodes", 128, tree.node_count()));
            checks.push(Check::new("tree depth", 3, tree.depth()));
            let h9 = powerset7_node("h9").expect("named");
            let seq: Vec<String> = tree.sequence(h9).expect("placed").iter().map(ToString::to_string).collect();
            checks.push(Check::new("sequence for h9", "(x0,1)(x2,1)", seq.concat()));
            let td = td_of_sigma(&class, &sigma, 0, &opts)?.value;
            checks.push(Check::new("TD(local tree sigma)", 3, td));
            checks.extend(property_checks(&class, &sigma, 0, budget)?);
            let lb = nctd_edge_lower_bound(&class);
            checks.push(Check::new("NCTD lower bound", 4, lb));
            let gap = td.finite().is_some_and(|t| lb > t);
            checks.push(Check::holds("gvs minus local", ">= 1", format!("{lb} - {td}"), gap));
        }
        Reproduction::Subadditivity => {
            let p3 = powerset_class(3)?;
            let p4 = powerset_class(4)?;
            for p in [&p3, &p4] {
                let k = p.instance_count();
                let none = (0..p.hypothesis_count()).all(|h0| matches!(wsls_td_one_matching(p, h0), Ok(None)));
                checks.push(Check::holds(
                    format!("no wsls learner teaches powerset({k}) in one example"),
                    "none",
                    if none { "none" } else { "found" },
                    none,
                ));
                let depth = if k == 3 { 2 } else { 3 };
                let s = tree_to_local_sigma(p, &build_tree(p, 0, depth)?)?;
                let td = td_of_sigma(p, &s, 0, &opts)?.value;
                let ok = Cost::Finite(2) <= td && td <= Cost::Finite(depth as u32);
                checks.push(Check::holds(format!("TD of a depth-{depth} tree on powerset({k})"), format!("2..={depth}"), td, ok));
            }
            let union = disjoint_union(&p3, &p4)?;
            let (p7, tree) = powerset7_tree()?;
            let same = (0..union.hypothesis_count()).all(|h| union.row(h) == p7.row(h));
            checks.push(Check::holds("powerset(3) + powerset(4) is powerset(7)", "equal", if same { "equal" } else { "different" }, same));
            let sigma = tree_to_local_sigma(&union, &tree)?;
            checks.push(Check::new("TD on the union", 3, td_of_sigma(&union, &sigma, 0, &opts)?.value));
            let v = check_family(&sigma, Family::Wsls, &union, budget)?;
            checks.push(Check::holds("union sigma is wsls", "holds", if v.holds { "holds" } else { "fails" }, v.holds));
        }
        Reproduction::FamilySizes => {
            let m = args.m;
            let count = count_pref_relations(m);
            if m <= 8 {
                checks.push(Check::new(format!("weak orders on {m}"), weak_orders(m).len(), &count));
            }
            if (1..=24).contains(&m) {
                checks.push(Check::new(format!("composition sum for {m}"), count_pref_relations_by_compositions(m)?, &count));
            }
            report.notes.push(format!("C({m}) = {count}"));
        }
        Reproduction::LowerBounds => {
            let d = args.d;
            let k = powerset_td_lower_bound(d)?;
            report.notes.push(format!("powerset({d}) needs at least {k} examples"));
            let base = num_bigint::BigUint::from(2 * d);
            let pow = num_bigint::BigUint::from(1u8) << d;
            checks.push(Check::holds("(2d)^(k+1) > 2^d", "true", "true", base.pow(k as u32 + 1) > pow));
            checks.push(Check::holds("k is minimal", "true", "true", k == 0 || base.pow(k as u32) <= pow));
            if (1..=3).contains(&d) {
                let p = powerset_class(d as usize)?;
                let s = tree_to_local_sigma(&p, &build_tree(&p, 0, d as usize)?)?;
                let td = td_of_sigma(&p, &s, 0, &opts)?.value;
                checks.push(Check::holds("bound <= TD of a tree learner", format!(">= {k}"), td, Cost::Finite(k as u32) <= td));
            }
        }
    }
    let exit_code = if report.all_checks_pass() { 0 } else { 1 };
    Ok(Outcome { report, exit_code })
}

fn family_size(common: &Common, m: usize) -> Result<Outcome> {
    let mut report = Report::new("family-size", common.provenance());
    report.notes.push(format!("C({m}) = {}", count_pref_relations(m)));
    Ok(Outcome { report, exit_code: 0 })
}

/// Run a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Compute(a) => compute(&cli.common, a),
        Command::Simulate(a) => simulate(&cli.common, a),
        Command::Verify(a) => verify(&cli.common, a),
        Command::Construct(a) => construct(&cli.common, a),
        Command::Reproduce(a) => reproduce(&cli.common, a),
        Command::FamilySize { m } => family_size(&cli.common, *m),
    }
}

/// Parse `args`, run, print the report, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.common.format {
                Format::Json => println!("{}", out.report.to_json()),
                Format::Text => print!("{}", out.report.to_text()),
            }
            out.exit_code
        }
        Err(e) => {
            match cli.common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "error": { "reason": e.reason_code(), "message": e.to_string() } }))
                        .expect("json")
                ),
                Format::Text => eprintln!("error[{}]: {e}", e.reason_code()),
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_parse_in_all_forms() {
        let w = warmuth_class();
        let t = 2;
        let a = parse_sequence(&w, t, "x3,x4").unwrap();
        let b = parse_sequence(&w, t, "x3:1 x4=1").unwrap();
        let c = parse_sequence(&w, t, "(x3,1),(x4,1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a[0], LabeledExample::new(2, true));
        assert!(parse_sequence(&w, t, "x9").is_err());
        assert!(parse_sequence(&w, t, "").unwrap().is_empty());
    }

    #[test]
    fn hypotheses_resolve_by_name_then_index() {
        let w = warmuth_class();
        assert_eq!(resolve_hypothesis(&w, "h1").unwrap(), 0);
        assert_eq!(resolve_hypothesis(&w, "3").unwrap(), 3);
        assert!(resolve_hypothesis(&w, "h11").is_err());
    }
}
