//! Command-line front end: parses input files, runs one operation and
//! renders a deterministic report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use sheaf_core::classify::{
    cell_bound, cellularize, check_kernel, compactness_witness, cross_validate_kernel, is_compact, is_proper,
    DirectedSystem,
};
use sheaf_core::format::{self, Sheaf};
use sheaf_core::funcat::{hocolim, holim, rhom};
use sheaf_core::kernel::convolve;
use sheaf_core::localize::{check_bireflective, transfer_report, yoneda_image};
use sheaf_core::witness::{truncation_colimit, TowerFunctor};
use sheaf_core::{Complex, Error, Field, Kernel, MonotoneMap, Poset, Report, Section, Subject};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "sheafctl", version, about = "Exact computations with constructible sheaves on finite posets")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Emit::Human, global = true)]
    emit: Emit,
    /// Coefficient field, overriding the one named in the input files: F2, Fp:<p> or Q.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Number of truncation stages for tower computations.
    #[arg(long, default_value_t = 2, global = true)]
    horizon: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Inputs {
    /// Input files. Posets named in headers are also looked up as `<name>.poset`
    /// next to the file that names them.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse every input and summarize it.
    Validate(Inputs),
    /// Cohomology of every stalk, or of the nerve for a bare poset.
    Homology(Inputs),
    /// Cohomology of one stalk.
    Stalk {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        at: String,
    },
    /// Global sections: the homotopy limit.
    Sections(Inputs),
    /// Derived homomorphisms between two sheaves or two towers.
    Rhom(Inputs),
    /// Homotopy colimit.
    Hocolim(Inputs),
    /// Finite cellular presentation of a compact object.
    Cellularize(Inputs),
    /// Compactness or properness verdict.
    Classify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "proper", required_unless_present = "proper")]
        compact: bool,
        #[arg(long)]
        proper: bool,
    },
    /// Convolution of a sheaf with a kernel.
    Convolve(Inputs),
    /// Whether a kernel preserves compact objects.
    CheckKernel(Inputs),
    /// Compare the kernel verdict with convolution of generators and samples.
    CrossValidate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Whether restriction along a monotone map is bi-reflective.
    LocalizeCheck(Inputs),
    /// Transfer of compactness and properness along a verified map.
    TransferReport {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Built-in demonstrations.
    Demo {
        #[arg(value_parser = ["towers"])]
        which: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let emit = cli.emit;
    match execute(cli) {
        Ok(report) => {
            let code = match report.verdict() {
                Some(false) => 1,
                _ => 0,
            };
            let stdout = match emit {
                Emit::Human => report.render_human(),
                Emit::Machine => report.render_machine(),
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Everything loaded from the command line.
#[derive(Default)]
struct Loaded {
    posets: BTreeMap<String, Arc<Poset>>,
    sheaves: Vec<Sheaf>,
    kernels: Vec<Kernel>,
    monos: Vec<MonotoneMap>,
    towers: Vec<TowerFunctor>,
    /// `(path, sha256)` for every file read, in reading order.
    digests: Vec<(String, String)>,
    summaries: Vec<(String, String)>,
}

fn read(path: &Path, loaded: &mut Loaded) -> Result<String, Error> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        file: shown.clone(),
        line: 0,
        token: String::new(),
        message: e.to_string(),
    })?;
    if !loaded.digests.iter().any(|(p, _)| *p == shown) {
        loaded.digests.push((shown, hex::encode(Sha256::digest(text.as_bytes()))));
    }
    Ok(text)
}

fn load_poset(path: &Path, loaded: &mut Loaded) -> Result<Arc<Poset>, Error> {
    let text = read(path, loaded)?;
    let p = Arc::new(format::parse_poset(&path.display().to_string(), &text)?);
    loaded.posets.entry(p.name().to_string()).or_insert_with(|| p.clone());
    Ok(loaded.posets[p.name()].clone())
}

/// Loads posets named in `text` that were not given explicitly.
fn resolve(path: &Path, text: &str, loaded: &mut Loaded) -> Result<(), Error> {
    for name in format::referenced_posets(text) {
        if loaded.posets.contains_key(&name) {
            continue;
        }
        let candidate = path.parent().unwrap_or(Path::new(".")).join(format!("{name}.poset"));
        if candidate.exists() {
            load_poset(&candidate, loaded)?;
        }
    }
    Ok(())
}

fn load(files: &[PathBuf], field: Option<&Field>) -> Result<Loaded, Error> {
    let mut loaded = Loaded::default();
    let mut texts = Vec::new();
    for path in files {
        let text = read(path, &mut loaded)?;
        let shown = path.display().to_string();
        match format::detect_kind(&text) {
            Some("poset") => {
                let p = load_poset(path, &mut loaded)?;
                loaded.summaries.push((shown, format!("poset {} with {} elements", p.name(), p.len())));
            }
            Some(kind) => texts.push((path.clone(), text, kind)),
            None => {
                return Err(Error::Parse {
                    file: shown,
                    line: 1,
                    token: text.split_whitespace().next().unwrap_or("").to_string(),
                    message: "expected `poset`, `sheaf`, `kernel`, `map` or `tower`".into(),
                })
            }
        }
    }
    for (path, text, kind) in texts {
        resolve(&path, &text, &mut loaded)?;
        let shown = path.display().to_string();
        match kind {
            "sheaf" => {
                let s = format::parse_sheaf(&shown, &text, &loaded.posets, field)?;
                loaded.summaries.push((
                    shown,
                    format!("sheaf {} over {} field {}", s.name, s.functor.base().name(), s.functor.field()),
                ));
                loaded.sheaves.push(s);
            }
            "kernel" => {
                let k = format::parse_kernel(&shown, &text, &loaded.posets, field)?;
                loaded.summaries.push((
                    shown,
                    format!("kernel {} from {} to {} field {}", k.name(), k.left().name(), k.right().name(), k.field()),
                ));
                loaded.kernels.push(k);
            }
            "mono" => {
                let m = format::parse_mono(&shown, &text, &loaded.posets)?;
                loaded
                    .summaries
                    .push((shown, format!("map {} from {} to {}", m.name(), m.source().name(), m.target().name())));
                loaded.monos.push(m);
            }
            _ => {
                let t = format::parse_tower(&shown, &text, field)?;
                loaded.summaries.push((shown, format!("tower {} horizon {} field {}", t.name(), t.horizon(), t.field())));
                loaded.towers.push(t);
            }
        }
    }
    Ok(loaded)
}

fn usage(message: impl Into<String>) -> Error {
    Error::Parse { file: "<command line>".into(), line: 0, token: String::new(), message: message.into() }
}

fn one<'a, T>(items: &'a [T], what: &str) -> Result<&'a T, Error> {
    match items {
        [x] => Ok(x),
        [] => Err(usage(format!("expected one {what} file"))),
        _ => Err(usage(format!("expected exactly one {what} file"))),
    }
}

struct Ctx {
    field: Option<Field>,
    seed: u64,
    horizon: usize,
}

fn execute(cli: Cli) -> Result<Report, Error> {
    let field = match &cli.field {
        Some(f) => Some(f.parse::<Field>()?),
        None => None,
    };
    let ctx = Ctx { field, seed: cli.seed, horizon: cli.horizon };
    let (name, files) = match &cli.command {
        Command::Validate(i) => ("validate", i.files.clone()),
        Command::Homology(i) => ("homology", i.files.clone()),
        Command::Stalk { inputs, .. } => ("stalk", inputs.files.clone()),
        Command::Sections(i) => ("sections", i.files.clone()),
        Command::Rhom(i) => ("rhom", i.files.clone()),
        Command::Hocolim(i) => ("hocolim", i.files.clone()),
        Command::Cellularize(i) => ("cellularize", i.files.clone()),
        Command::Classify { inputs, .. } => ("classify", inputs.files.clone()),
        Command::Convolve(i) => ("convolve", i.files.clone()),
        Command::CheckKernel(i) => ("check-kernel", i.files.clone()),
        Command::CrossValidate { inputs, .. } => ("cross-validate", inputs.files.clone()),
        Command::LocalizeCheck(i) => ("localize-check", i.files.clone()),
        Command::TransferReport { inputs, .. } => ("transfer-report", inputs.files.clone()),
        Command::Demo { .. } => ("demo towers", Vec::new()),
    };
    let loaded = load(&files, ctx.field.as_ref())?;
    let mut report = Report::new(name);
    report.meta("version", VERSION);
    report.meta("field", ctx.field.as_ref().map(|f| f.to_string()).unwrap_or_else(|| field_of(&loaded, &cli.command)));
    report.meta("seed", ctx.seed);
    for (p, d) in &loaded.digests {
        report.meta(format!("input {p}"), format!("sha256:{d}"));
    }
    match &cli.command {
        Command::Validate(_) => {
            let mut s = Section::new("inputs").verdict(true);
            for (p, what) in &loaded.summaries {
                s.push(p, what);
            }
            report.push(s);
        }
        Command::Homology(_) => homology(&loaded, &ctx, &mut report)?,
        Command::Stalk { at, .. } => {
            let sh = one(&loaded.sheaves, "sheaf")?;
            let p = sh.functor.base().index_of(at).map_err(|_| usage(format!("no element `{at}`")))?;
            report.push(Section::new("stalk").with("element", at).with("betti", sh.functor.stalk(p).betti()));
        }
        Command::Sections(_) => {
            let sh = finite(one(&loaded.sheaves, "sheaf")?)?;
            let c = holim(sh)?;
            report.push(
                Section::new("sections")
                    .with("over", sh.base().name())
                    .with("betti", c.homology())
                    .with("euler", c.euler_characteristic())
                    .with("chain_dims", dims(&c)),
            );
        }
        Command::Rhom(_) => rhom_cmd(&loaded, &ctx, &mut report)?,
        Command::Hocolim(_) => {
            let sh = finite(one(&loaded.sheaves, "sheaf")?)?;
            let c = hocolim(sh)?;
            report.push(
                Section::new("hocolim")
                    .with("over", sh.base().name())
                    .with("betti", c.homology())
                    .with("betti_homological", c.homology().homological())
                    .with("chain_dims", dims(&c)),
            );
        }
        Command::Cellularize(_) => cellularize_cmd(&loaded, &mut report)?,
        Command::Classify { compact, .. } => {
            let subject = subject(&loaded)?;
            let v = if *compact { is_compact(subject) } else { is_proper(subject) };
            report.push(v.section("classify"));
        }
        Command::Convolve(_) => {
            let sh = finite(one(&loaded.sheaves, "sheaf")?)?;
            let k = one(&loaded.kernels, "kernel")?;
            let out = convolve(sh, k)?;
            let mut s = Section::new("convolve").with("kernel", k.name()).with("over", k.right().name());
            for q in 0..k.right().len() {
                s.push(format!("stalk {}", k.right().element(q)), out.stalk(q).betti());
            }
            report.push(s);
            report.push(is_compact(Subject::Tame(&out)).section("result-compact"));
        }
        Command::CheckKernel(_) => {
            let k = one(&loaded.kernels, "kernel")?;
            report.push(check_kernel(k)?.section());
        }
        Command::CrossValidate { samples, .. } => {
            let k = one(&loaded.kernels, "kernel")?;
            let r = cross_validate_kernel(k, *samples, ctx.seed)?;
            report.sections.extend(r.sections);
        }
        Command::LocalizeCheck(_) => {
            let m = one(&loaded.monos, "map")?;
            let f = ctx.field.clone().unwrap_or(Field::F2);
            let b = check_bireflective(m, &f)?;
            report.push(b.section());
            let mut y = Section::new("yoneda-images");
            let mut all = true;
            for p in 0..m.source().len() {
                let ok = yoneda_image(m, p, &f)?.is_quasi_iso();
                y.push(format!("{} -> {}", m.source().element(p), m.target().element(m.apply(p))), ok);
                all &= ok;
            }
            y.set_verdict(all);
            report.push(y);
        }
        Command::TransferReport { samples, .. } => {
            let m = one(&loaded.monos, "map")?;
            let f = ctx.field.clone().unwrap_or(Field::Rational);
            let b = check_bireflective(m, &f)?;
            if b.is_verified() {
                report.sections.extend(transfer_report(&b, *samples, ctx.seed)?.sections);
            } else {
                report.push(b.section());
            }
        }
        Command::Demo { .. } => demo_towers(&ctx, &mut report)?,
    }
    Ok(report)
}

fn field_of(loaded: &Loaded, command: &Command) -> String {
    let fields: Vec<String> = loaded
        .sheaves
        .iter()
        .map(|s| s.functor.field().to_string())
        .chain(loaded.kernels.iter().map(|k| k.field().to_string()))
        .chain(loaded.towers.iter().map(|t| t.field().to_string()))
        .collect();
    let fallback = match command {
        Command::TransferReport { .. } | Command::Demo { .. } => "Q",
        _ => "F2",
    };
    fields.first().cloned().unwrap_or_else(|| fallback.into())
}

fn dims(c: &Complex) -> String {
    let parts: Vec<String> = c.dims().iter().map(|(n, d)| format!("{n}:{d}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn finite(s: &Sheaf) -> Result<&sheaf_core::PFunctor, Error> {
    s.functor
        .as_finite()
        .ok_or_else(|| Error::Unsupported(format!("sheaf `{}` has tail values; this command needs finite ones", s.name)))
}

fn subject(loaded: &Loaded) -> Result<Subject<'_>, Error> {
    match (loaded.sheaves.as_slice(), loaded.towers.as_slice()) {
        ([s], []) => Ok(Subject::Tame(&s.functor)),
        ([], [t]) => Ok(Subject::Tower(t)),
        _ => Err(usage("expected one sheaf or one tower file")),
    }
}

fn homology(loaded: &Loaded, ctx: &Ctx, report: &mut Report) -> Result<(), Error> {
    if let Some(s) = loaded.sheaves.first() {
        let f = &s.functor;
        let mut sec = Section::new("homology").with("sheaf", &s.name);
        for p in 0..f.base().len() {
            sec.push(format!("stalk {}", f.base().element(p)), f.stalk(p).betti());
        }
        report.push(sec);
    } else if let Some(t) = loaded.towers.first() {
        let mut sec = Section::new("homology").with("tower", t.name());
        for n in 0..=t.horizon() {
            sec.push(format!("position {n}"), t.value(n).homology());
        }
        sec.push(format!("position >{}", t.horizon()), t.eventual().homology());
        report.push(sec);
    } else {
        if loaded.posets.is_empty() {
            return Err(usage("expected a poset, sheaf or tower file"));
        }
        let field = ctx.field.clone().unwrap_or(Field::F2);
        for p in loaded.posets.values() {
            let k = sheaf_core::PFunctor::constant(p.clone(), &Complex::unit(&field));
            report.push(Section::new(format!("nerve {}", p.name())).with("betti", holim(&k)?.homology()));
        }
    }
    Ok(())
}

fn rhom_cmd(loaded: &Loaded, ctx: &Ctx, report: &mut Report) -> Result<(), Error> {
    match (loaded.sheaves.as_slice(), loaded.towers.as_slice()) {
        ([a, b], []) => {
            let c = rhom(finite(a)?, finite(b)?)?;
            report.push(
                Section::new("rhom")
                    .with("source", &a.name)
                    .with("target", &b.name)
                    .with("betti", c.homology())
                    .with("chain_dims", dims(&c)),
            );
        }
        ([], [a, b]) => {
            let m = a.horizon().max(b.horizon()).max(ctx.horizon) + 2;
            let c = sheaf_core::witness::tower_rhom(a, b, m)?;
            let c2 = sheaf_core::witness::tower_rhom(a, b, m + 1)?;
            let stable = c.homology() == c2.homology();
            report.push(
                Section::new("rhom")
                    .verdict(stable)
                    .with("source", a.name())
                    .with("target", b.name())
                    .with("window", m)
                    .with("betti", c.homology())
                    .with("window_stable", stable),
            );
        }
        _ => return Err(usage("expected two sheaf files or two tower files")),
    }
    Ok(())
}

fn cellularize_cmd(loaded: &Loaded, report: &mut Report) -> Result<(), Error> {
    let subject = subject(loaded)?;
    let pres = match cellularize(subject) {
        Ok(p) => p,
        Err(Error::NotCompact(why)) => {
            report.push(Section::new("cellularize").verdict(false).with("not_compact", why));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let target = pres.target().clone();
    let base = target.base().clone();
    let exact = pres.is_exact()?;
    let mut s = Section::new("cellularize").verdict(exact);
    s.push("cells", pres.len());
    s.push("bound", cell_bound(&target));
    for (i, c) in pres.cells().iter().enumerate() {
        s.push(format!("cell {i}"), format!("y({}) x {}", base.element(c.element), dims(&c.value)));
    }
    for j in 0..pres.len() {
        for i in 0..j {
            if pres.attaching(i, j).is_some_and(|m| !m.is_empty()) {
                s.push(format!("attach {j}->{i}"), "nonzero");
            }
        }
    }
    s.push("comparison_quasi_iso", exact);
    report.push(s);
    Ok(())
}

/// Constant tower versus its truncations, the representable at 0 as a
/// control, and the same comparison one stage further out.
fn demo_towers(ctx: &Ctx, report: &mut Report) -> Result<(), Error> {
    let field = ctx.field.clone().unwrap_or(Field::Rational);
    let k = Complex::unit(&field);
    let constant = TowerFunctor::constant(&k);
    let yoneda = TowerFunctor::yoneda(&field, 0);

    let proper = is_proper(Subject::Tower(&constant));
    let compact = is_compact(Subject::Tower(&constant));
    report.push(proper.section("const proper"));
    let mut not_compact = compact.section("const not compact");
    not_compact.set_verdict(!compact.value);
    not_compact.push("compact", compact.value);
    report.push(not_compact);

    let horizons = [ctx.horizon.max(1), ctx.horizon.max(1) + 1];
    let mut results = Vec::new();
    for stages in horizons {
        let a = truncation_colimit(&constant, &k, stages, stages + 2)?;
        let mut b = truncation_colimit(&constant, &k, stages, stages + 3)?;
        b.window = a.window;
        let stable = a == b;
        let mut s = Section::new(format!("const horizon {stages}")).verdict(!a.quasi_iso && stable);
        s.push("colim_rhom", &a.lhs);
        s.push("rhom_at_colimit", &a.rhs);
        s.push("comparison_rank", &a.comparison_rank);
        s.push("quasi_iso", a.quasi_iso);
        s.push("window_stable", stable);
        report.push(s);
        results.push(a);
    }
    let agree = results.windows(2).all(|w| w[0].lhs == w[1].lhs && w[0].rhs == w[1].rhs);
    report.push(
        Section::new("horizons agree")
            .verdict(agree)
            .with("horizons", format!("{} and {}", horizons[0], horizons[1])),
    );

    let w = compactness_witness(Subject::Tower(&yoneda), &DirectedSystem::Truncations(k.clone()))?;
    let mut control = w.sections.into_iter().next().expect("one comparison section");
    control.name = "yoneda0 control".into();
    let control_ok = control.verdict == Some(true);
    report.push(control);

    let first = &results[0];
    let ok = proper.value && !compact.value && !first.quasi_iso && agree && control_ok;
    report.push(
        Section::new("certificate")
            .verdict(ok)
            .with("proper", proper.value)
            .with("compact", compact.value)
            .with("colim_rhom", &first.lhs)
            .with("rhom_at_colimit", &first.rhs),
    );
    Ok(())
}
