//! Command dispatch for the `shapecalc` binary.
//!
//! Every command reads documents in the text format, runs one computation under a work budget
//! and prints a report. Exit status: 0 success, 2 rejected input, 3 budget exhausted, 64 usage.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::catcore::{catalog, subobject_classifier, FiniteCategory};
use crate::complex::{Complex, Operator};
use crate::cubical::{cube, pushout, triangulate, verify_pushout_product, CubeMorphism, PushoutCase};
use crate::descent::{bar_diagonal, cech_diagonal, colimit, van_kampen_check};
use crate::error::{Budget, Error, Result};
use crate::format::{parse_kind, serialize, Document, InputDocument};
use crate::homotopical::{boxslash, factor_bounded, find_lift, retract_search, GeneratingMap, LiftingProblem};
use crate::invariants::{contractibility_probe, homology, pi1_presentation, DEFAULT_TIETZE_BUDGET};
use crate::shape::{nerve_comparison, shape_invariants, sifted_probe, test_category_probe, IntervalData, ProbeMode};
use crate::simplicial::{boundary, horn, simplex, Monotone};

pub const DEFAULT_BUDGET: usize = 50_000_000;
pub const DEFAULT_SEED: u64 = 20_240_517;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "shapecalc", version, about = "Exact shape invariants of finite presheaves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// input document
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// highest degree examined
    #[arg(long, default_value_t = 2)]
    dmax: usize,
    /// work budget shared by every search of the command
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// accepted for reproducible scripting; every command is deterministic
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// write the constructed object, when there is one, as a document
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ShapeName {
    Simplex,
    Cube,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Interval,
    Omega,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Case {
    Boundary,
    HornLeft,
    HornRight,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Generators {
    Boundary,
    Horn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// integral homology of a simplicial or cubical set
    Homology(Common),
    /// presentation of the fundamental group
    Pi1 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// bounded contractibility probe
    Probe(Common),
    /// shape of a presheaf through its category of elements
    Shape(Common),
    /// the subobject classifier of a category
    Omega {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4096)]
        size_budget: usize,
    },
    /// test-category probes on a truncated shape category or a category document
    Testcat {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shape: Option<ShapeName>,
        #[arg(long, default_value_t = 2)]
        truncation: usize,
        #[arg(long, value_enum, default_value_t = Mode::Interval)]
        mode: Mode,
        #[arg(long, default_value_t = 4096)]
        size_budget: usize,
    },
    /// siftedness probe: the nerve and the diagonal comma categories
    Sifted(Common),
    /// compare the shape of a presheaf with the shape of its restriction along a functor
    Compare {
        #[command(flatten)]
        common: Common,
        /// presheaf on the functor's target
        #[arg(long, value_name = "PATH")]
        presheaf: PathBuf,
    },
    /// Čech diagonal of a cover, with its homology
    Cech(Common),
    /// diagonal of the bar construction of a diagram
    Bar(Common),
    /// strict colimit of a diagram
    Colimit(Common),
    /// Mayer–Vietoris and Van Kampen for a two-member cover
    Vankampen {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// solve one lifting problem
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "i")]
        i: String,
        #[arg(long, default_value = "p")]
        p: String,
        #[arg(long, default_value = "f")]
        f: String,
        #[arg(long, default_value = "g")]
        g: String,
    },
    /// the left lifting property of one map against another
    Boxslash {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "i")]
        left: String,
        #[arg(long, default_value = "p")]
        right: String,
    },
    /// bounded small object argument
    Factor {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "f")]
        map: String,
        #[arg(long, value_enum, default_value_t = Generators::Boundary)]
        generators: Generators,
        /// largest generator dimension
        #[arg(long, default_value_t = 2)]
        gen_dim: usize,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
    },
    /// search for a retract diagram exhibiting one map as a retract of another
    Retract {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "f")]
        left: String,
        #[arg(long, default_value = "g")]
        right: String,
    },
    /// pushout-product of cube boundary and horn inclusions
    CubeVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Case::Boundary)]
        case: Case,
        /// horn coordinate, counted from 1 within its factor
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        xi: u8,
        /// run every case with m + n at most this instead
        #[arg(long)]
        all: Option<usize>,
    },
    /// simplicial model of a cubical set through its category of elements
    Triangulate(Common),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homology(_) => "homology",
            Command::Pi1 { .. } => "pi1",
            Command::Probe(_) => "probe",
            Command::Shape(_) => "shape",
            Command::Omega { .. } => "omega",
            Command::Testcat { .. } => "testcat",
            Command::Sifted(_) => "sifted",
            Command::Compare { .. } => "compare",
            Command::Cech(_) => "cech",
            Command::Bar(_) => "bar",
            Command::Colimit(_) => "colimit",
            Command::Vankampen { .. } => "vankampen",
            Command::Lift { .. } => "lift",
            Command::Boxslash { .. } => "boxslash",
            Command::Factor { .. } => "factor",
            Command::Retract { .. } => "retract",
            Command::CubeVerify { .. } => "cube-verify",
            Command::Triangulate(_) => "triangulate",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Homology(c)
            | Command::Probe(c)
            | Command::Shape(c)
            | Command::Sifted(c)
            | Command::Cech(c)
            | Command::Bar(c)
            | Command::Colimit(c)
            | Command::Triangulate(c) => c,
            Command::Pi1 { common, .. }
            | Command::Omega { common, .. }
            | Command::Testcat { common, .. }
            | Command::Compare { common, .. }
            | Command::Vankampen { common, .. }
            | Command::Lift { common, .. }
            | Command::Boxslash { common, .. }
            | Command::Factor { common, .. }
            | Command::Retract { common, .. }
            | Command::CubeVerify { common, .. } => common,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Rejected(String),
    BudgetExhausted(String),
}

/// What a command prints: the invocation, input digests, the bounds it worked under, the result
/// and the budget spent. The last line is a digest of everything above it.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub bounds: Vec<String>,
    pub status: Status,
    pub payload: Vec<String>,
    pub budget_used: usize,
    pub budget_limit: usize,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::Rejected(_) => EXIT_REJECTED,
            Status::BudgetExhausted(_) => EXIT_BUDGET,
        }
    }

    /// First payload line starting with `key `, without the key.
    pub fn field(&self, key: &str) -> Option<&str> {
        self.payload.iter().find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
    }

    fn body(&self) -> String {
        let mut s = String::from("report v1\n");
        s += &format!("command {}\n", self.command);
        for (p, d) in &self.inputs {
            s += &format!("input {p} sha256 {d}\n");
        }
        for b in &self.bounds {
            s += &format!("bound {b}\n");
        }
        s += &match &self.status {
            Status::Ok => "status ok\n".to_string(),
            Status::Rejected(m) => format!("status rejected {m}\n"),
            Status::BudgetExhausted(m) => format!("status budget-exhausted {m}\n"),
        };
        for l in &self.payload {
            s += l;
            s.push('\n');
        }
        s += &format!("budget-used {} of {}\n", self.budget_used, self.budget_limit);
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.body();
        write!(f, "{body}digest sha256 {}\n", sha256_hex(body.as_bytes()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

struct Session {
    common: Common,
    budget: Budget,
    inputs: Vec<(String, String)>,
    bounds: Vec<String>,
    payload: Vec<String>,
}

impl Session {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push((path.display().to_string(), sha256_hex(&bytes)));
        String::from_utf8(bytes).map_err(|_| Error::invalid(format!("{} is not UTF-8", path.display())))
    }

    fn document(&mut self, kinds: &[&str]) -> Result<InputDocument> {
        let path = self
            .common
            .input
            .clone()
            .ok_or_else(|| Error::invalid("this command needs --in <PATH>"))?;
        let text = self.read(&path)?;
        parse_kind(&text, kinds)
    }

    fn line(&mut self, l: impl Into<String>) {
        for part in l.into().lines() {
            self.payload.push(part.to_string());
        }
    }

    fn bound(&mut self, b: impl Into<String>) {
        self.bounds.push(b.into());
    }

    fn degree_bound(&mut self) -> usize {
        let d = self.common.dmax;
        self.bound(format!("degree <= {d}"));
        d
    }

    fn emit(&mut self, doc: Document) -> Result<()> {
        if let Some(p) = &self.common.emit {
            std::fs::write(p, serialize(&InputDocument::new(doc)))
                .map_err(|e| Error::invalid(format!("cannot write {}: {e}", p.display())))?;
            self.payload.push(format!("emitted {}", p.display()));
        }
        Ok(())
    }

    fn homology_lines<O: Operator>(&mut self, prefix: &str, x: &Complex<O>, d: usize) -> Result<()> {
        let h = homology(x, d)?;
        let counts: Vec<String> = x.counts().iter().map(|c| c.to_string()).collect();
        self.line(format!("{prefix}cells {}", counts.join(" ")));
        self.line(format!("{prefix}homology {h}"));
        self.line(format!("{prefix}betti {}", join(&h.betti_trimmed())));
        Ok(())
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn truncated(shape: ShapeName, n: usize) -> Arc<FiniteCategory> {
    Arc::new(match shape {
        ShapeName::Simplex => catalog::truncated::<Monotone>(n),
        ShapeName::Cube => catalog::truncated::<CubeMorphism>(n),
    })
}

fn interval<O: Operator>(x: &Complex<O>, base: Arc<FiniteCategory>, n: usize) -> Result<IntervalData> {
    let v: Vec<String> = x.cell_ids(0).map(|c| x.id(c).to_string()).collect();
    IntervalData::from_vertices(x, base, n, &v[0], &v[1])
}

fn generators(kind: Generators, k: usize) -> Result<Vec<GeneratingMap<Monotone>>> {
    let mut out = Vec::new();
    for n in 0..=k {
        match kind {
            Generators::Boundary => {
                let a = if n == 0 { Complex::new() } else { boundary(n) };
                out.push(GeneratingMap::inclusion(format!("boundary{n}"), a, simplex(n))?);
            }
            Generators::Horn if n >= 1 => {
                for j in 0..=n {
                    out.push(GeneratingMap::inclusion(format!("horn{n}-{j}"), horn(n, j)?, simplex(n))?);
                }
            }
            Generators::Horn => {}
        }
    }
    Ok(out)
}

fn pushout_case(case: Case, i: usize, xi: u8) -> Result<PushoutCase> {
    if xi > 1 {
        return Err(Error::invalid("--xi is 0 or 1"));
    }
    Ok(match case {
        Case::Boundary => PushoutCase::Boundary,
        Case::HornLeft => PushoutCase::HornLeft(i, xi == 1),
        Case::HornRight => PushoutCase::HornRight(i, xi == 1),
    })
}

fn case_name(case: PushoutCase) -> String {
    match case {
        PushoutCase::Boundary => "boundary".into(),
        PushoutCase::HornLeft(i, xi) => format!("horn-left {i} {}", xi as u8),
        PushoutCase::HornRight(i, xi) => format!("horn-right {i} {}", xi as u8),
    }
}

fn execute(cmd: &Command, s: &mut Session) -> Result<()> {
    match cmd {
        Command::Homology(_) | Command::Probe(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["simplicial", "cubical"])?;
            let probe = matches!(cmd, Command::Probe(_));
            match &doc.body {
                Document::Simplicial(x) => run_homology(s, x, d, probe),
                Document::Cubical(x) => run_homology(s, x, d, probe),
                _ => unreachable!(),
            }?;
        }
        Command::Pi1 { basepoint, .. } => {
            let doc = s.document(&["simplicial", "cubical"])?;
            s.bound(format!("tietze moves <= {DEFAULT_TIETZE_BUDGET}"));
            match &doc.body {
                Document::Simplicial(x) => run_pi1(s, x, basepoint.as_deref()),
                Document::Cubical(x) => run_pi1(s, x, basepoint.as_deref()),
                _ => unreachable!(),
            }?;
        }
        Command::Shape(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["presheaf"])?;
            let Document::Presheaf(x) = &doc.body else { unreachable!() };
            let name = doc.name.clone().unwrap_or_else(|| "X".into());
            let r = shape_invariants(x, d, &s.budget)?.named("base", name);
            s.line(r.to_string());
        }
        Command::Omega { size_budget, .. } => {
            s.bound(format!("sieves per object <= {size_budget}"));
            let doc = s.document(&["category"])?;
            let Document::Category(c) = doc.body else { unreachable!() };
            let c = Arc::new(c);
            let omega = subobject_classifier(c.clone(), *size_budget)?;
            for (a, o) in c.objects().iter().enumerate() {
                s.line(format!("sieves {o} {}", omega.size(a)));
            }
            s.line(format!("total {}", omega.total_size()));
            s.emit(Document::Presheaf(omega))?;
        }
        Command::Testcat {
            shape,
            truncation,
            mode,
            size_budget,
            ..
        } => {
            let d = s.degree_bound();
            let (a, label) = match shape {
                Some(sh) => {
                    if s.common.input.is_some() {
                        return Err(Error::invalid("give either --shape or --in, not both"));
                    }
                    let name = match sh {
                        ShapeName::Simplex => "simplex",
                        ShapeName::Cube => "cube",
                    };
                    (truncated(*sh, *truncation), format!("{name}<={truncation}"))
                }
                None => {
                    let doc = s.document(&["category"])?;
                    let Document::Category(c) = doc.body else { unreachable!() };
                    (Arc::new(c), doc.name.unwrap_or_else(|| "category".into()))
                }
            };
            let probe_mode = match (mode, shape) {
                (Mode::Omega, _) => {
                    s.bound(format!("sieves per object <= {size_budget}"));
                    ProbeMode::Omega { size_budget: *size_budget }
                }
                (Mode::Interval, Some(ShapeName::Simplex)) => ProbeMode::Interval(interval(&simplex(1), a.clone(), *truncation)?),
                (Mode::Interval, Some(ShapeName::Cube)) => ProbeMode::Interval(interval(&cube(1), a.clone(), *truncation)?),
                (Mode::Interval, None) => return Err(Error::invalid("interval mode needs --shape; use --mode omega for a category document")),
            };
            let r = test_category_probe(a, &label, d, &probe_mode, &s.budget)?;
            s.line(r.to_string());
        }
        Command::Sifted(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["category"])?;
            let Document::Category(c) = doc.body else { unreachable!() };
            let r = sifted_probe(Arc::new(c), d, &s.budget)?;
            s.line(r.to_string());
        }
        Command::Compare { presheaf, .. } => {
            let d = s.degree_bound();
            let doc = s.document(&["functor"])?;
            let Document::Functor(u) = doc.body else { unreachable!() };
            let text = s.read(presheaf)?;
            let Document::Presheaf(x) = parse_kind(&text, &["presheaf"])?.body else { unreachable!() };
            if *x.base != *u.target {
                return Err(Error::invalid("the presheaf is not on the functor's target category"));
            }
            let r = nerve_comparison(&u, &x, d, None, &s.budget)?;
            s.line(r.to_string());
        }
        Command::Cech(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["cover"])?;
            let Document::Cover(_, cover) = &doc.body else { unreachable!() };
            s.bound(format!("diagonal dimension <= {}", d + 1));
            let c = cech_diagonal(cover, d + 1, &s.budget)?;
            s.homology_lines("ambient-", &cover.ambient, d)?;
            s.homology_lines("diagonal-", &c, d)?;
            let same = homology(&c, d)? == homology(&cover.ambient, d)?;
            s.line(format!("descent {same}"));
            s.emit(Document::Simplicial(c))?;
        }
        Command::Bar(_) | Command::Colimit(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["diagram"])?;
            let Document::Diagram(dg) = &doc.body else { unreachable!() };
            let x = if matches!(cmd, Command::Bar(_)) {
                s.bound(format!("bar dimension <= {}", d + 1));
                bar_diagonal(dg, d + 1, &s.budget)?
            } else {
                colimit(dg, &s.budget)?
            };
            s.homology_lines("", &x, d)?;
            s.emit(Document::Simplicial(x))?;
        }
        Command::Vankampen { basepoint, .. } => {
            let d = s.degree_bound();
            let doc = s.document(&["cover"])?;
            let Document::Cover(names, cover) = &doc.body else { unreachable!() };
            if names.len() != 2 {
                return Err(Error::invalid(format!("Van Kampen needs exactly two members, got {}", names.len())));
            }
            let u: Vec<_> = cover.members[0].iter().copied().collect();
            let v: Vec<_> = cover.members[1].iter().copied().collect();
            let r = van_kampen_check(&cover.ambient, &u, &v, d, basepoint.as_deref())?;
            s.line(r.to_string());
        }
        Command::Lift { i, p, f, g, .. } => {
            let doc = s.document(&["lifting-problem"])?;
            let Document::Lifting(fam) = &doc.body else { unreachable!() };
            let (a, b, im) = fam.map(i)?;
            let (x, y, pm) = fam.map(p)?;
            let (.., fm) = fam.map(f)?;
            let (.., gm) = fam.map(g)?;
            let problem = LiftingProblem::new((a, b, im), (x, y, pm), fm, gm)?;
            match find_lift(&problem, &s.budget)? {
                Some(l) => {
                    s.line("lift found");
                    s.line(format!("lift-map {}", l.describe(b, x).join(" ")));
                }
                None => s.line("lift none"),
            }
        }
        Command::Boxslash { left, right, .. } => {
            let doc = s.document(&["lifting-problem"])?;
            let Document::Lifting(fam) = &doc.body else { unreachable!() };
            let (a, b, i) = fam.map(left)?;
            let (x, y, p) = fam.map(right)?;
            let v = boxslash((a, b, i), (x, y, p), &s.budget)?;
            s.line(format!("squares {}", v.squares));
            s.line(format!("holds {}", v.holds));
            if let Some(w) = &v.witness {
                s.line(format!("witness-top {}", w.f.describe(a, x).join(" ")));
                s.line(format!("witness-bottom {}", w.g.describe(b, y).join(" ")));
            }
        }
        Command::Factor {
            map,
            generators: kind,
            gen_dim,
            rounds,
            ..
        } => {
            let d = s.degree_bound();
            s.bound(format!("rounds <= {rounds}"));
            let doc = s.document(&["lifting-problem"])?;
            let Document::Lifting(fam) = &doc.body else { unreachable!() };
            let (x, y, f) = fam.map(map)?;
            let gens = generators(*kind, *gen_dim)?;
            let r = factor_bounded(f, x, y, &gens, *rounds, &s.budget)?;
            s.line(r.to_string());
            s.homology_lines("middle-", &r.middle, d)?;
            s.emit(Document::Simplicial(r.middle))?;
        }
        Command::Retract { left, right, .. } => {
            let doc = s.document(&["lifting-problem"])?;
            let Document::Lifting(fam) = &doc.body else { unreachable!() };
            let (a, b, f) = fam.map(left)?;
            let (a2, b2, g) = fam.map(right)?;
            match retract_search((a, b, f), (a2, b2, g), &s.budget)? {
                Some(r) => {
                    s.line("retract found");
                    s.line(format!("s-source {}", r.s_a.describe(a, a2).join(" ")));
                    s.line(format!("r-source {}", r.r_a.describe(a2, a).join(" ")));
                    s.line(format!("s-target {}", r.s_b.describe(b, b2).join(" ")));
                    s.line(format!("r-target {}", r.r_b.describe(b2, b).join(" ")));
                }
                None => s.line("retract none"),
            }
        }
        Command::CubeVerify { m, n, case, i, xi, all, .. } => {
            let cases = match all {
                Some(t) => {
                    s.bound(format!("m + n <= {t}"));
                    pushout::all_cases(*t)
                }
                None => vec![(*m, *n, pushout_case(*case, *i, *xi)?)],
            };
            let mut every = true;
            for (m, n, c) in cases {
                let v = verify_pushout_product(m, n, c, &s.budget)?;
                every &= v.holds;
                s.line(format!(
                    "case m {m} n {n} {} expected {} pushout-cells {} expected-cells {} verdict {}",
                    case_name(c),
                    v.expected,
                    join(&v.pushout_counts),
                    join(&v.expected_counts),
                    v.holds
                ));
            }
            s.line(format!("verdict {every}"));
        }
        Command::Triangulate(_) => {
            let d = s.degree_bound();
            let doc = s.document(&["cubical"])?;
            let Document::Cubical(x) = &doc.body else { unreachable!() };
            let t = triangulate(x, d + 1, &s.budget)?;
            s.homology_lines("cubical-", x, d)?;
            s.homology_lines("simplicial-", &t, d)?;
            s.emit(Document::Simplicial(t))?;
        }
    }
    Ok(())
}

fn run_homology<O: Operator>(s: &mut Session, x: &Complex<O>, d: usize, probe: bool) -> Result<()> {
    if probe {
        let r = contractibility_probe(x, d)?;
        s.line(format!("homology {}", r.homology));
        s.line(format!("connected {}", r.connected));
        s.line(format!("pi1-abelianization-trivial {}", r.pi1_abelian_trivial));
        s.line(format!("verdict {}", r.verdict));
        Ok(())
    } else {
        s.homology_lines("", x, d)?;
        let h = homology(x, d)?;
        for n in 0..=d {
            let t = h.torsion(n);
            if !t.is_empty() {
                s.line(format!("torsion {n} {}", join(&t)));
            }
        }
        Ok(())
    }
}

fn run_pi1<O: Operator>(s: &mut Session, x: &Complex<O>, basepoint: Option<&str>) -> Result<()> {
    let base = match basepoint {
        Some(b) => b.to_string(),
        None => x
            .cell_ids(0)
            .map(|c| x.id(c))
            .min()
            .ok_or_else(|| Error::invalid("the complex has no vertices"))?
            .to_string(),
    };
    let p = pi1_presentation(x, &base, DEFAULT_TIETZE_BUDGET)?;
    s.line(format!("basepoint {}", p.basepoint));
    s.line(format!("presentation {p}"));
    s.line(format!("simplified {}", p.simplified));
    s.line(format!("abelianization {}", p.abelianization()));
    Ok(())
}

/// Runs one invocation; `args` includes the program name. Writes `--out` and `--emit` files.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                    report: None,
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                    report: None,
                },
            };
        }
    };
    let common = cli.command.common().clone();
    let mut session = Session {
        budget: Budget::new("work", common.budget),
        common,
        inputs: Vec::new(),
        bounds: Vec::new(),
        payload: Vec::new(),
    };
    session.bound(format!("work <= {}", session.common.budget));
    let result = execute(&cli.command, &mut session);
    let status = match &result {
        Ok(()) => Status::Ok,
        Err(e) if e.is_budget() => Status::BudgetExhausted(e.to_string()),
        Err(e) => Status::Rejected(e.to_string()),
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let report = Report {
        command: echo.join(" "),
        inputs: session.inputs,
        bounds: session.bounds,
        status: status.clone(),
        payload: if result.is_ok() { session.payload } else { Vec::new() },
        budget_used: session.budget.used().min(session.budget.limit()),
        budget_limit: session.budget.limit(),
    };
    let text = report.to_string();
    let stderr = match &status {
        Status::Ok => String::new(),
        Status::Rejected(m) | Status::BudgetExhausted(m) => format!("shapecalc {}: {m}\n", cli.command.name()),
    };
    let mut out = Outcome {
        code: report.exit_code(),
        stdout: text.clone(),
        stderr,
        report: Some(report),
    };
    if let Some(p) = &session.common.out {
        if let Err(e) = std::fs::write(p, &text) {
            out.stderr += &format!("cannot write {}: {e}\n", p.display());
            out.code = EXIT_REJECTED;
        } else {
            out.stdout.clear();
        }
    }
    out
}
