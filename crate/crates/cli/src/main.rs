use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gyract::action::{ActionTable, FiniteGSet};
use gyract::ball::{BallGyrogroup, BallVariant, DEFAULT_DELTA};
use gyract::carrier::{self, check_axioms, check_cancellation_laws, LawOutcome, Samples};
use gyract::coset::{build_coset_action, coset_criterion, sampled_nontrivial_gyration};
use gyract::equivalence::{are_equivalent_transitive, match_components};
use gyract::error::AnalysisError;
use gyract::finite::{
    cycle_decomposition, enumerate_subgyrogroups, is_l_subgyrogroup, left_cosets, CayleyTable,
    Check, FiniteGyrogroup, Subgyrogroup,
};
use gyract::pair::{PairElement, PairGyrogroup};
use gyract::report::{CheckRecord, Report, Status, Witness};
use gyract::sampling::{seeded_rng, DEFAULT_MAX_NORM, TRIPLE_MAX_NORM};

/// Largest extracted-gyration-matrix deviation from orthogonality accepted.
const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "gyract", version, about = "Finite gyrogroups, ball gyrogroups and their actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Mobius,
    Einstein,
}

impl From<Variant> for BallVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Mobius => BallVariant::Mobius,
            Variant::Einstein => BallVariant::Einstein,
        }
    }
}

#[derive(Args)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    report: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Cayley table against the gyrogroup axioms.
    Validate {
        table: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print gyr[a,b], or every distinct gyration when a and b are omitted.
    Gyr {
        table: PathBuf,
        a: Option<usize>,
        b: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate subgyrogroups.
    Subgyro {
        table: PathBuf,
        /// Refuse tables of larger order.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Left cosets of a subgyrogroup.
    Cosets {
        table: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Validate an action and verify the orbit theorems.
    Act {
        table: PathBuf,
        action: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Count orbits by averaging fixed points.
    Burnside {
        table: PathBuf,
        action: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Faithful / transitive / free / semiregular / sharply transitive.
    Classify {
        table: PathBuf,
        action: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Check the coset criterion for a subgyrogroup and optionally build the action.
    CosetAction {
        table: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long)]
        build: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether two actions of the same gyrogroup are equivalent.
    Equiv {
        action1: PathBuf,
        action2: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Sampled axiom and cancellation checks on a ball gyrogroup.
    Ball {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value = "mobius")]
        variant: Variant,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Sampled checks on ball-rotation pairs and their coset action.
    Pairs {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, value_enum, default_value = "mobius")]
        variant: Variant,
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

/// Input that could not be read or parsed.
struct UsageError(String);

type CmdResult = Result<Document, UsageError>;

#[derive(Serialize)]
struct Document {
    command: String,
    status: Status,
    summary: Vec<String>,
    checks: Vec<CheckRecord>,
}

impl Document {
    fn new(report: Report, summary: Vec<String>) -> Self {
        Self {
            status: Status::from_bool(report.passed()),
            command: report.command,
            summary,
            checks: report.checks,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for line in &self.summary {
                    s.push_str(line);
                    s.push('\n');
                }
                let report = Report {
                    command: self.command.clone(),
                    checks: self.checks.clone(),
                };
                s.push_str(&report.render_text());
                s
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match cli.command {
        Command::Validate { table, out } => (validate(&table), out.report),
        Command::Gyr { table, a, b, out } => (gyr(&table, a, b), out.report),
        Command::Subgyro { table, cap, out } => (subgyro(&table, cap), out.report),
        Command::Cosets { table, subset, out } => (cosets(&table, &subset), out.report),
        Command::Act { table, action, out } => (act(&table, &action), out.report),
        Command::Burnside { table, action, out } => (burnside(&table, &action), out.report),
        Command::Classify { table, action, out } => (classify(&table, &action), out.report),
        Command::CosetAction {
            table,
            subset,
            build,
            out,
        } => (coset_action(&table, &subset, build), out.report),
        Command::Equiv {
            action1,
            action2,
            table,
            out,
        } => (equiv(&table, &action1, &action2), out.report),
        Command::Ball {
            dim,
            variant,
            eps,
            seed,
            samples,
            out,
        } => (ball(dim, variant.into(), eps, seed, samples), out.report),
        Command::Pairs {
            m,
            variant,
            samples,
            seed,
            out,
        } => (pairs(m, variant.into(), samples, seed), out.report),
    };
    match result {
        Ok(doc) => {
            print!("{}", doc.render(format));
            if doc.status == Status::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<CayleyTable, UsageError> {
    CayleyTable::parse(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_action(path: &Path) -> Result<ActionTable, UsageError> {
    ActionTable::parse(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// Loads a table that must be a gyrogroup. A table that fails validation
/// is an analysis failure, reported as a document.
fn load_group(path: &Path, command: &str) -> Result<Result<Arc<FiniteGyrogroup>, Document>, UsageError> {
    let table = load_table(path)?;
    Ok(match FiniteGyrogroup::validate(table) {
        Ok(g) => Ok(Arc::new(g)),
        Err(failure) => {
            let mut report = Report::new(command);
            report.push(
                CheckRecord::new("table is a gyrogroup", false)
                    .detail(format!("failed: {}", names(&failure.failed_checks()))),
            );
            Err(Document::new(report, vec![format!("gyrogroup: invalid ({failure})")]))
        }
    })
}

fn load_gset(group: &Arc<FiniteGyrogroup>, path: &Path, report: &mut Report) -> Result<Option<FiniteGSet>, UsageError> {
    let table = load_action(path)?;
    match FiniteGSet::from_action_table(group.clone(), &table) {
        Ok(x) => {
            report.push(CheckRecord::new(format!("{} is an action", path.display()), true));
            Ok(Some(x))
        }
        Err(e) => {
            report.push(CheckRecord::new(format!("{} is an action", path.display()), false).detail(e.to_string()));
            Ok(None)
        }
    }
}

fn names(checks: &[Check]) -> String {
    checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
}

fn set(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn cycles(perm: &[usize]) -> String {
    let c = cycle_decomposition(perm);
    if c.is_empty() {
        return "id".into();
    }
    c.iter()
        .map(|cy| format!("({})", cy.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
        .collect()
}

/// Records an analysis error as a failing check.
fn record_error(report: &mut Report, check: &str, err: &AnalysisError) {
    let mut rec = CheckRecord::new(check, false).detail(err.to_string());
    if let AnalysisError::TheoremViolation { witness, .. } = err {
        rec = rec.indices(witness.clone());
    }
    report.push(rec);
}

macro_rules! group_or_return {
    ($path:expr, $command:expr) => {
        match load_group($path, $command)? {
            Ok(g) => g,
            Err(doc) => return Ok(doc),
        }
    };
}

fn validate(path: &Path) -> CmdResult {
    let table = load_table(path)?;
    let mut report = Report::new("validate");
    let summary = match FiniteGyrogroup::validate(table) {
        Ok(g) => {
            for check in Check::ALL {
                report.push(CheckRecord::new(check.name(), true));
            }
            if g.is_degenerate() {
                vec!["gyrogroup: valid (degenerate: all gyrations identity)".to_string()]
            } else {
                vec![format!(
                    "gyrogroup: valid (non-degenerate: {} distinct gyrations)",
                    g.distinct_gyrations().len()
                )]
            }
        }
        Err(failure) => {
            for check in Check::ALL {
                let rec = if failure.skipped.contains(&check) {
                    CheckRecord {
                        status: Status::Skip,
                        ..CheckRecord::new(check.name(), true).detail("requires two-sided inverses")
                    }
                } else if let Some(d) = failure.diagnostic(check) {
                    let mut rec = CheckRecord::new(check.name(), false)
                        .detail(format!("{} violation(s)", d.total));
                    if let Some(w) = d.witnesses.first() {
                        rec = rec.indices(w.clone());
                    }
                    rec
                } else {
                    CheckRecord::new(check.name(), true)
                };
                report.push(rec);
            }
            vec![format!("gyrogroup: invalid (failed: {})", names(&failure.failed_checks()))]
        }
    };
    Ok(Document::new(report, summary))
}

fn gyr(path: &Path, a: Option<usize>, b: Option<usize>) -> CmdResult {
    let g = group_or_return!(path, "gyr");
    let n = g.order();
    let mut report = Report::new("gyr");
    let mut summary = Vec::new();
    match (a, b) {
        (Some(a), Some(b)) => {
            if a >= n || b >= n {
                return Err(UsageError(format!("elements must lie in 0..{n}")));
            }
            let perm = g.gyration_permutation(a, b);
            summary.push(format!("gyr[{a},{b}] = {}", cycles(perm)));
            summary.push(format!("images: {perm:?}"));
        }
        (None, None) => {
            for perm in g.distinct_gyrations() {
                let pairs = (0..n * n)
                    .filter(|&ab| g.gyration_permutation(ab / n, ab % n) == perm.as_slice())
                    .count();
                summary.push(format!("{}: {pairs} pair(s)", cycles(&perm)));
            }
        }
        _ => return Err(UsageError("give both a and b, or neither".into())),
    }
    report.push(CheckRecord::new("table is a gyrogroup", true));
    Ok(Document::new(report, summary))
}

fn subgyro(path: &Path, cap: usize) -> CmdResult {
    let g = group_or_return!(path, "subgyro");
    let subs = enumerate_subgyrogroups(&g, cap).map_err(|e| UsageError(e.to_string()))?;
    let mut report = Report::new("subgyro");
    let mut summary = Vec::new();
    let mut partition_ok = true;
    for h in &subs {
        let l = is_l_subgyrogroup(&g, h);
        let p = left_cosets(&g, h);
        let crit = coset_criterion(&g, h).passed();
        partition_ok &= !l || (p.is_partition() && p.equal_sizes);
        summary.push(format!(
            "{} order {} L-subgyrogroup: {} cosets: {}{} criterion: {}",
            set(h.members()),
            h.order(),
            yes(l),
            p.index,
            if p.is_partition() { "" } else { " (overlapping)" },
            yes(crit)
        ));
    }
    report.push(CheckRecord::new("enumeration", true).detail(format!("{} subgyrogroups", subs.len())));
    report.push(CheckRecord::new("cosets of L-subgyrogroups partition G", partition_ok));
    Ok(Document::new(report, summary))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn subgroup(g: &FiniteGyrogroup, subset: &[usize], report: &mut Report) -> Result<Option<Subgyrogroup>, UsageError> {
    if let Some(&x) = subset.iter().find(|&&x| x >= g.order()) {
        return Err(UsageError(format!("element {x} is outside 0..{}", g.order())));
    }
    Ok(match Subgyrogroup::new(g, subset) {
        Ok(h) => {
            report.push(CheckRecord::new("subset is a subgyrogroup", true));
            Some(h)
        }
        Err(e) => {
            report.push(CheckRecord::new("subset is a subgyrogroup", false).detail(e.to_string()));
            None
        }
    })
}

fn cosets(path: &Path, subset: &[usize]) -> CmdResult {
    let g = group_or_return!(path, "cosets");
    let mut report = Report::new("cosets");
    let mut summary = Vec::new();
    if let Some(h) = subgroup(&g, subset, &mut report)? {
        let p = left_cosets(&g, &h);
        for (rep, c) in p.representatives.iter().zip(&p.cosets) {
            summary.push(format!("{rep}⊕H = {}", set(c)));
        }
        summary.push(format!("index [G:H] = {}", p.index));
        let mut rec = CheckRecord::new("cosets partition G", p.is_partition());
        if let Some(&(i, j)) = p.overlaps.first() {
            rec = rec.indices(vec![i, j]);
        }
        report.push(rec);
        report.push(CheckRecord::new("cosets have equal size", p.equal_sizes));
        report.push(
            CheckRecord::new("index formula |G| = [G:H]|H|", p.index_formula_holds)
                .detail(format!("{} = {}·{}", g.order(), p.index, h.order())),
        );
        report.push(CheckRecord::new("L-subgyrogroup", is_l_subgyrogroup(&g, &h)));
    }
    Ok(Document::new(report, summary))
}

fn act(table: &Path, action: &Path) -> CmdResult {
    let g = group_or_return!(table, "act");
    let mut report = Report::new("act");
    let mut summary = Vec::new();
    let Some(x) = load_gset(&g, action, &mut report)? else {
        return Ok(Document::new(report, summary));
    };
    match x.orbits_and_stabilizers() {
        Ok(dec) => {
            for o in &dec.orbits {
                summary.push(format!("orbit {} with stabilizer {}", set(o), set(dec.stabilizers[o[0]].members())));
            }
            summary.push(format!("Fix(X) = {}", set(&dec.fixed_points)));
            report.push(CheckRecord::new("stabilizers are gyration-invariant L-subgyrogroups", true));
        }
        Err(e) => record_error(&mut report, "stabilizers are gyration-invariant L-subgyrogroups", &e),
    }
    match x.representation() {
        Ok(rep) => {
            summary.push(format!("kernel = {}", set(rep.kernel.members())));
            report.push(CheckRecord::new("kernel is the intersection of stabilizers", true));
        }
        Err(e) => record_error(&mut report, "kernel is the intersection of stabilizers", &e),
    }
    match x.check_orbit_stabilizer() {
        Ok(recs) => report.push(
            CheckRecord::new("|G| = |orb x||stab x|", true).detail(format!("{} point(s)", recs.len())),
        ),
        Err(e) => record_error(&mut report, "|G| = |orb x||stab x|", &e),
    }
    match x.orbit_decomposition_equation() {
        Ok(eq) => report.push(CheckRecord::new("orbit decomposition equation", eq.holds).detail(eq.render())),
        Err(e) => record_error(&mut report, "orbit decomposition equation", &e),
    }
    match x.check_translate_stabilizers() {
        Ok(()) => report.push(CheckRecord::new("stab(a·x) is the conjugate of stab x by a", true)),
        Err(e) => record_error(&mut report, "stab(a·x) is the conjugate of stab x by a", &e),
    }
    Ok(Document::new(report, summary))
}

fn burnside(table: &Path, action: &Path) -> CmdResult {
    let g = group_or_return!(table, "burnside");
    let mut report = Report::new("burnside");
    let mut summary = Vec::new();
    let Some(x) = load_gset(&g, action, &mut report)? else {
        return Ok(Document::new(report, summary));
    };
    match x.burnside_count() {
        Ok(b) => {
            summary.push("a  |fix(a)|".into());
            for (a, c) in b.fixed_counts.iter().enumerate() {
                summary.push(format!("{a}  {c}"));
            }
            summary.push(format!(
                "{}/{} = {} orbit(s)",
                b.total_fixed,
                b.group_order,
                b.ratio()
            ));
            report.push(
                CheckRecord::new("Burnside count equals orbit count", true)
                    .detail(format!("orbit count {}", b.orbit_count)),
            );
        }
        Err(e) => record_error(&mut report, "Burnside count equals orbit count", &e),
    }
    Ok(Document::new(report, summary))
}

fn classify(table: &Path, action: &Path) -> CmdResult {
    let g = group_or_return!(table, "classify");
    let mut report = Report::new("classify");
    let mut summary = Vec::new();
    let Some(x) = load_gset(&g, action, &mut report)? else {
        return Ok(Document::new(report, summary));
    };
    match x.classify() {
        Ok(c) => {
            summary.push(format!("faithful: {}", yes(c.faithful)));
            summary.push(format!("transitive: {}", yes(c.transitive)));
            summary.push(format!("free: {}", yes(c.free)));
            summary.push(format!("semiregular: {}", yes(c.semiregular)));
            summary.push(format!("sharply transitive: {}", yes(c.sharply_transitive)));
            report.push(CheckRecord::new("classification is consistent", true));
        }
        Err(e) => record_error(&mut report, "classification is consistent", &e),
    }
    Ok(Document::new(report, summary))
}

fn coset_action(path: &Path, subset: &[usize], build: bool) -> CmdResult {
    let g = group_or_return!(path, "coset-action");
    let mut report = Report::new("coset-action");
    let mut summary = Vec::new();
    let Some(h) = subgroup(&g, subset, &mut report)? else {
        return Ok(Document::new(report, summary));
    };
    let crit = coset_criterion(&g, &h);
    let mut rec = CheckRecord::new("gyr[a,b](H) ⊆ H", crit.gyration_invariant).samples(crit.invariance_checked);
    if let Some(w) = &crit.gyration_witness {
        rec = rec.indices(w.clone());
    }
    report.push(rec);
    let mut rec = CheckRecord::new("⊖x⊕gyr[a,b]x ∈ H", crit.translate_condition).samples(crit.samples);
    if let Some(w) = &crit.translate_witness {
        rec = rec.indices(w.clone());
    }
    report.push(rec);
    summary.push(format!(
        "criterion for H = {}: {}",
        set(h.members()),
        if crit.passed() { "holds" } else { "fails" }
    ));
    if build && crit.passed() {
        match build_coset_action(g.clone(), &h) {
            Ok(c) => {
                for (i, coset) in c.partition.cosets.iter().enumerate() {
                    summary.push(format!("coset {i}: {}", set(coset)));
                }
                summary.push(format!(
                    "transitive action on {} coset(s); {} = {}·{}",
                    c.index(),
                    g.order(),
                    c.index(),
                    h.order()
                ));
                report.push(CheckRecord::new("coset action is well defined and valid", true));
                report.push(CheckRecord::new("coset action is transitive", c.classification.transitive));
                report.push(CheckRecord::new("stab(x⊕H) is the conjugate of H by x", true));
                report.push(CheckRecord::new(
                    "not semiregular when H ≠ {0}",
                    h.is_trivial() || !c.classification.semiregular,
                ));
                report.push(CheckRecord::new("index formula |G| = [G:H]|H|", c.partition.index_formula_holds));
            }
            Err(e) => record_error(&mut report, "coset action", &e),
        }
    }
    Ok(Document::new(report, summary))
}

fn equiv(table: &Path, a1: &Path, a2: &Path) -> CmdResult {
    let g = group_or_return!(table, "equiv");
    let mut report = Report::new("equiv");
    let mut summary = Vec::new();
    let x = load_gset(&g, a1, &mut report)?;
    let y = load_gset(&g, a2, &mut report)?;
    let (Some(x), Some(y)) = (x, y) else {
        return Ok(Document::new(report, summary));
    };
    let transitive = x.orbit(0).len() == x.points() && y.orbit(0).len() == y.points();
    if transitive {
        match are_equivalent_transitive(&x, &y) {
            Ok(Some(phi)) => {
                summary.push(format!("equivalent: yes, map {:?}", phi.map));
                report.push(CheckRecord::new("G-sets are equivalent", true));
            }
            Ok(None) => {
                summary.push("equivalent: no (stabilizers are not conjugate)".into());
                report.push(CheckRecord::new("G-sets are equivalent", false));
            }
            Err(e) => record_error(&mut report, "G-sets are equivalent", &e),
        }
    } else {
        match match_components(&x, &y) {
            Ok(m) => {
                for (i, j) in &m.pairs {
                    summary.push(format!("component {i} ≡ component {j}"));
                }
                let mut rec = CheckRecord::new("G-sets are equivalent", m.is_equivalent());
                if let Some(map) = &m.map {
                    summary.push(format!("equivalent: yes, map {map:?}"));
                } else {
                    let mut text = String::from("equivalent: no");
                    if let Some(i) = m.unmatched_source.first() {
                        let _ = write!(text, ", component {i} of the first G-set has no partner");
                    } else if let Some(j) = m.unmatched_target.first() {
                        let _ = write!(text, ", component {j} of the second G-set has no partner");
                    }
                    summary.push(text);
                    rec = rec.indices(m.unmatched_source.clone());
                }
                report.push(rec);
            }
            Err(e) => record_error(&mut report, "G-sets are equivalent", &e),
        }
    }
    Ok(Document::new(report, summary))
}

fn law_record<E: std::fmt::Debug>(law: &LawOutcome<E>, seed: u64, tolerance: f64) -> CheckRecord {
    let mut rec = CheckRecord::new(law.law, law.passed)
        .seed(seed)
        .samples(law.checked)
        .tolerance(tolerance)
        .detail(format!("max residual {:e}", law.max_residual));
    if let Some(w) = &law.witness {
        rec = rec.witness(Witness::Text(format!("{w:?}")));
    }
    rec
}

fn ball(dim: usize, variant: BallVariant, eps: f64, seed: u64, samples: usize) -> CmdResult {
    let b = BallGyrogroup::with_tolerances(dim, variant, eps, DEFAULT_DELTA)
        .map_err(|e| UsageError(e.to_string()))?;
    let mut report = Report::new("ball");
    let mut rng = seeded_rng(seed);
    let pairs: Vec<_> = (0..samples)
        .map(|_| (b.random_element(&mut rng, DEFAULT_MAX_NORM), b.random_element(&mut rng, DEFAULT_MAX_NORM)))
        .collect();
    let triples: Vec<_> = (0..samples)
        .map(|_| {
            (
                b.random_element(&mut rng, TRIPLE_MAX_NORM),
                b.random_element(&mut rng, TRIPLE_MAX_NORM),
                b.random_element(&mut rng, TRIPLE_MAX_NORM),
            )
        })
        .collect();
    for law in &check_cancellation_laws(&b, Samples::Pairs(&pairs)).laws {
        report.push(law_record(law, seed, eps));
    }
    for law in &check_axioms(&b, &triples, eps).laws {
        report.push(law_record(law, seed, eps));
    }
    let mut worst_orth = 0.0f64;
    let mut worst_lin = 0.0f64;
    let mut failure = None;
    for (i, (x, y, z)) in triples.iter().enumerate() {
        match b.gyration_matrix(x, y, std::slice::from_ref(z)) {
            Ok(m) => {
                worst_orth = worst_orth.max(m.orthogonality_residual);
                worst_lin = worst_lin.max(m.linearity_residual);
            }
            Err(e) => {
                failure.get_or_insert((i, e.to_string()));
            }
        }
    }
    let mut rec = CheckRecord::new("gyration matrix is orthogonal", failure.is_none() && worst_orth <= ORTHOGONALITY_TOLERANCE)
        .seed(seed)
        .samples(triples.len())
        .tolerance(ORTHOGONALITY_TOLERANCE)
        .detail(format!("max ‖MᵀM − I‖ {worst_orth:e}"));
    if let Some((i, e)) = &failure {
        rec = rec.witness(Witness::Text(format!("sample {i}: {e}")));
    }
    report.push(rec);
    report.push(
        CheckRecord::new("gyration acts linearly", failure.is_none() && worst_lin <= eps)
            .seed(seed)
            .samples(triples.len())
            .tolerance(eps)
            .detail(format!("max residual {worst_lin:e}")),
    );
    let summary = vec![format!("{variant} ball of dimension {dim}, seed {seed}, {samples} samples")];
    Ok(Document::new(report, summary))
}

fn pairs(m: usize, variant: BallVariant, samples: usize, seed: u64) -> CmdResult {
    let p = PairGyrogroup::new(m, variant).map_err(|e| UsageError(e.to_string()))?;
    let eps = p.ball().epsilon();
    let mut report = Report::new("pairs");
    let mut summary = vec![format!("{variant} pairs with m = {m}, seed {seed}, {samples} samples")];
    let mut rng = seeded_rng(seed);
    let triples = p.random_triples(&mut rng, samples, TRIPLE_MAX_NORM);

    for law in &check_axioms(&p, &triples, eps).laws {
        report.push(law_record(law, seed, eps));
    }
    let pair_samples: Vec<(PairElement, PairElement)> =
        triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
    for law in &check_cancellation_laws(&p, Samples::Pairs(&pair_samples)).laws {
        report.push(law_record(law, seed, eps));
    }
    let cross = p.gyration_cross_check(&triples);
    let worst = cross.as_ref().copied().unwrap_or(f64::INFINITY);
    report.push(
        CheckRecord::new("closed-form gyration matches the gyrator identity", worst <= eps)
            .seed(seed)
            .samples(samples)
            .tolerance(eps)
            .detail(format!("max residual {worst:e}")),
    );
    let nontrivial = sampled_nontrivial_gyration(&p, &triples);
    let mut rec = CheckRecord::new("left gyroaddition is not an action of the carrier on itself", nontrivial.is_some())
        .seed(seed)
        .samples(samples);
    if let Some(i) = nontrivial {
        rec = rec.witness(Witness::Text(format!("sample {i}")));
    }
    report.push(rec);

    let space = match p.hat_coset_space(&triples, seed) {
        Ok(space) => {
            report.push(
                CheckRecord::new("coset criterion for the translation subgroup", true)
                    .seed(seed)
                    .samples(space.criterion.samples),
            );
            space
        }
        Err(e) => {
            record_error(&mut report, "coset criterion for the translation subgroup", &e);
            return Ok(Document::new(report, summary));
        }
    };
    let elements: Vec<&PairElement> = triples.iter().flat_map(|(x, y, z)| [x, y, z]).collect();
    let mut seen = vec![false; m];
    for x in &elements {
        seen[p.hat_coset_index(x)] = true;
    }
    let observed = seen.iter().filter(|&&s| s).count();
    report.push(
        CheckRecord::new("every coset is observed", observed == m)
            .seed(seed)
            .samples(elements.len())
            .detail(format!("{observed} of {m} cosets")),
    );
    let orbit = space.orbit(0, elements.iter().copied());
    report.push(
        CheckRecord::new("coset action is transitive", orbit.len() == m)
            .seed(seed)
            .samples(elements.len())
            .detail(format!("orbit of coset 0 has {} coset(s)", orbit.len())),
    );
    let mut stabilizing = 0;
    let mut outside = None;
    for k in 0..m {
        for g in elements.iter().filter(|g| space.fixes(g, k)) {
            stabilizing += 1;
            if !p.in_hat(g) && outside.is_none() {
                outside = Some(k);
            }
        }
    }
    let mut rec = CheckRecord::new("stabilizers of cosets lie in the translation subgroup", outside.is_none())
        .seed(seed)
        .samples(stabilizing);
    if let Some(k) = outside {
        rec = rec.indices(vec![k]);
    }
    report.push(rec);
    let mut conj_failure = None;
    let hat: Vec<&&PairElement> = elements.iter().filter(|g| p.in_hat(g)).collect();
    'outer: for k in 0..m {
        let shift = PairElement::new(gyract::ball::BallElement::zero(2), k);
        for h in &hat {
            let ok = carrier::conjugate(&p, &shift, h)
                .map(|c| space.fixes(&c, k))
                .unwrap_or(false);
            if !ok {
                conj_failure = Some(k);
                break 'outer;
            }
        }
    }
    let mut rec = CheckRecord::new("stab(coset k) contains the conjugate of the translation subgroup", conj_failure.is_none())
        .seed(seed)
        .samples(hat.len() * m);
    if let Some(k) = conj_failure {
        rec = rec.indices(vec![k]);
    }
    report.push(rec);
    let semiregular_free = (0..m).all(|k| {
        let (g, image) = space.stabilizing_nonidentity(k);
        image == k && g != carrier::Gyrogroup::identity(&p)
    });
    report.push(CheckRecord::new("coset action is not semiregular", semiregular_free));
    summary.push(format!("{m} cosets; the coset action is {}", if orbit.len() == m { "transitive" } else { "not transitive" }));
    Ok(Document::new(report, summary))
}
