//! The `mackeylab` command line.
//!
//! Every command produces a text rendering and a JSON value; `--json`
//! selects the latter. Exit code 0 is success, 1 a domain error and 2
//! malformed input.

pub mod fuzz;
pub mod input;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mackeylab::burnside::{burnside_product, ghost, hom_basis, table_of_marks, BurnsideElement};
use mackeylab::cyclic::cyclic_tate;
use mackeylab::json::{GroupSpec, MackeySpec, ZMackeySpec};
use mackeylab::mackey::{categorical_fixed_points, geometric_fixed_points, inflation, MackeyFunctor};
use mackeylab::zhat::{
    canonical_filtration, derived_burnside_homology, gluing_value, level_fixed_points, normal_system_roundtrip,
    p_local_idempotent, p_typical_reconstruct_check, GluingCase, WittElement,
};
use mackeylab::Error;

#[derive(Parser, Debug)]
#[command(name = "mackeylab", version, about = "Exact computations with Burnside rings and Mackey functors")]
pub struct Cli {
    /// Print JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of marks of a finite group.
    Marks(GroupArg),
    /// Product in the Burnside ring, e.g. `bmul --group S3 G/e G/C2`.
    Bmul {
        #[arg(long)]
        group: String,
        a: String,
        b: String,
    },
    /// Basis of the span morphisms between two G-sets.
    Homs {
        #[arg(long)]
        group: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    #[command(subcommand)]
    Mackey(MackeyCommand),
    #[command(subcommand)]
    Zhat(ZhatCommand),
    /// Tate cohomology of a cyclic group with coefficients in a module.
    Tate(TateArgs),
    /// Derived Burnside homology of two level sets.
    Dbh(DbhArgs),
    /// The gluing functor evaluated on a module.
    Glue(GlueArgs),
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// `cyclic:<n>`, `S3`, `D8`, `Q8`, `V4` or a JSON group.
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct MackeyInput {
    /// `burnside:<group>`, `fixed:<class>:<group>`, a JSON file or inline JSON.
    pub input: String,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Subcommand, Debug)]
pub enum MackeyCommand {
    /// Check the Mackey axioms.
    Check(MackeyInput),
    /// Geometric fixed points for a normal subgroup.
    Phi {
        #[command(flatten)]
        m: MackeyInput,
        #[arg(long)]
        subgroup: String,
    },
    /// Categorical fixed points for a subgroup.
    Psi {
        #[command(flatten)]
        m: MackeyInput,
        #[arg(long)]
        subgroup: String,
    },
    /// Inflation from the quotient by a normal subgroup; the input is read over the quotient.
    Infl {
        #[command(flatten)]
        m: MackeyInput,
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Value at a G-set, e.g. `--gset "2*G/e + G/G"`.
    Eval {
        #[command(flatten)]
        m: MackeyInput,
        #[arg(long)]
        gset: String,
    },
    /// Seeded single-entry mutations, each checked against the axioms.
    Fuzz {
        #[command(flatten)]
        m: MackeyInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Args, Debug)]
pub struct Trunc {
    /// Truncation bound.
    #[arg(short = 'N', default_value_t = 12)]
    pub bound: u64,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Args, Debug)]
pub struct ZInput {
    /// `burnside`, `inflated:<group>`, a JSON file or inline JSON.
    pub input: String,
    #[command(flatten)]
    pub trunc: Trunc,
}

#[derive(Subcommand, Debug)]
pub enum ZhatCommand {
    /// Product of completed Burnside ring elements, e.g. `"e2*e3"`.
    Mul {
        expr: String,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// Ghost components of an element.
    Ghost {
        expr: String,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// The p-local idempotent attached to `l`.
    Idem {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'l')]
        l: u64,
        #[arg(short = 'N', default_value_t = 12)]
        bound: u64,
    },
    /// Check the relations of a truncated profunctor.
    Check(ZInput),
    /// p-typical decomposition of the value at a level.
    Ptypical {
        #[command(flatten)]
        z: ZInput,
        #[arg(short = 'p')]
        p: u64,
        #[arg(long)]
        level: u64,
    },
    /// The canonical filtration `F^{nẐ}` at a level.
    Filt {
        #[command(flatten)]
        z: ZInput,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Fixed points at a level, a Mackey functor for `Z/n`.
    Phi {
        #[command(flatten)]
        z: ZInput,
        #[arg(long)]
        level: u64,
    },
    /// Reconstruction from the normal system of fixed points.
    Roundtrip(ZInput),
    /// Values per level; with `--json` the explicit input form.
    Show(ZInput),
    Dbh(DbhArgs),
    Glue(GlueArgs),
}

#[derive(Args, Debug)]
pub struct TateArgs {
    #[arg(long)]
    pub n: u64,
    /// `trivZ`, `sign`, `regular`, `free:<k>`, `perm:<images>` or a JSON map.
    #[arg(long)]
    pub module: String,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Args, Debug)]
pub struct DbhArgs {
    #[arg(short = 'N', default_value_t = 12)]
    pub bound: u64,
    #[arg(long, default_value_t = 0)]
    pub deg: u32,
    /// Orbit levels of the left set.
    #[arg(long, default_value = "1")]
    pub left: String,
    #[arg(long, default_value = "1")]
    pub right: String,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Args, Debug)]
pub struct GlueArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(short = 'l')]
    pub l: u64,
    #[arg(long)]
    pub module: String,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

pub struct Output {
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain(Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Malformed(m) => json!({"error": "malformed-input", "message": m}),
            CliError::Domain(e) => json!({"error": "domain", "message": e.to_string()}),
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

/// Errors while reading inputs; everything but the size bound is malformed input.
fn inp<T>(r: mackeylab::Result<T>) -> Res<T> {
    r.map_err(|e| match e {
        Error::TooLarge { .. } => CliError::Domain(e),
        e => CliError::Malformed(e.to_string()),
    })
}

fn dom<T>(r: mackeylab::Result<T>) -> Res<T> {
    r.map_err(|e| if e.is_malformed_input() { CliError::Malformed(e.to_string()) } else { CliError::Domain(e) })
}

/// Runs a parsed command line and returns `(stdout, stderr, exit code)`.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    match run(&cli.command) {
        Ok(out) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&out.json).expect("values serialize");
                s.push('\n');
                s
            } else {
                out.text
            };
            (body, String::new(), 0)
        }
        Err(e) => (String::new(), format!("{}\n", e.to_json()), e.code()),
    }
}

/// Parses `args` (without the program name) and runs them.
pub fn execute_args<I: IntoIterator<Item = S>, S: Into<String>>(args: I) -> (String, String, i32) {
    let argv = std::iter::once("mackeylab".to_string()).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                (text, String::new(), 0)
            } else {
                (String::new(), text, 2)
            }
        }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn burnside_text(labels: &[String], coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (l, &c) in labels.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let term = if c.abs() == 1 { format!("G/{l}") } else { format!("{}*G/{l}", c.abs()) };
        if out.is_empty() {
            out = if c < 0 { format!("-{term}") } else { term };
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn mackey_output(m: &MackeyFunctor) -> Output {
    let labels = m.group().class_labels();
    let rows: Vec<Vec<String>> =
        labels.iter().zip(m.values()).map(|(l, v)| vec![format!("G/{l}"), v.to_string()]).collect();
    Output {
        text: format!("group {}\n{}", m.group().name(), table(&["orbit", "value"], &rows)),
        json: serde_json::to_value(MackeySpec::of(m)).expect("values serialize"),
    }
}

fn witt(expr: &str, t: &Trunc) -> Res<WittElement> {
    let ring = inp(input::ring(&t.ring))?;
    inp(WittElement::parse(expr, ring, t.bound))
}

fn run(cmd: &Command) -> Res<Output> {
    match cmd {
        Command::Marks(g) => {
            let g = inp(input::group(&g.group))?;
            let t = table_of_marks(&g);
            Ok(Output { text: t.to_string(), json: json!(t) })
        }
        Command::Bmul { group, a, b } => {
            let g = inp(input::group(group))?;
            let elem = |s: &str| -> Res<BurnsideElement> {
                let c = inp(input::burnside_coeffs(&g, s))?;
                let terms: Vec<(usize, i64)> = c.into_iter().enumerate().collect();
                dom(BurnsideElement::from_classes(&g, &terms))
            };
            let p = dom(burnside_product(&elem(a)?, &elem(b)?))?;
            let coeffs = p.class_coeffs();
            let labels = g.class_labels();
            let gh = ghost(&p);
            Ok(Output {
                text: format!("{}\nghost ({})\n", burnside_text(&labels, &coeffs), join(&gh)),
                json: json!({"classes": labels, "coefficients": coeffs, "ghost": gh}),
            })
        }
        Command::Homs { group, source, target } => {
            let g = inp(input::group(group))?;
            let s1 = inp(input::gset(&g, source))?;
            let s2 = inp(input::gset(&g, target))?;
            let basis = hom_basis(&s1, &s2);
            let labels = g.class_labels();
            let rows: Vec<Vec<String>> = basis
                .iter()
                .map(|k| vec![format!("G/{}", labels[k.class]), k.left.to_string(), k.right.to_string()])
                .collect();
            Ok(Output {
                text: format!("{} basis spans\n{}", basis.len(), table(&["middle", "left", "right"], &rows)),
                json: json!({"rank": basis.len(), "basis": basis}),
            })
        }
        Command::Mackey(c) => run_mackey(c),
        Command::Zhat(c) => run_zhat(c),
        Command::Tate(a) => {
            let ring = inp(input::ring(&a.ring))?;
            let sigma = inp(input::cyclic_module(&a.module, a.n, ring))?;
            let t = dom(cyclic_tate(a.n, &sigma))?;
            Ok(Output { text: format!("even: {}\nodd: {}\n", t.even, t.odd), json: json!(t) })
        }
        Command::Dbh(a) => dbh(a),
        Command::Glue(a) => glue(a),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn run_mackey(c: &MackeyCommand) -> Res<Output> {
    let load = |m: &MackeyInput| -> Res<MackeyFunctor> {
        let ring = inp(input::ring(&m.ring))?;
        inp(input::mackey(&m.input, ring))
    };
    match c {
        MackeyCommand::Check(m) => {
            let f = load(m)?;
            let r = dom(f.check_axioms())?;
            let described: Vec<String> = r.violations.iter().map(|v| r.describe(v)).collect();
            Ok(Output {
                text: r.to_string(),
                json: json!({"group": r.group, "passed": r.passed(), "violations": described}),
            })
        }
        MackeyCommand::Phi { m, subgroup } => {
            let f = load(m)?;
            let n = inp(input::subgroup(f.group(), subgroup))?;
            Ok(mackey_output(&dom(geometric_fixed_points(&f, &n))?.functor))
        }
        MackeyCommand::Psi { m, subgroup } => {
            let f = load(m)?;
            let h = inp(input::subgroup(f.group(), subgroup))?;
            Ok(mackey_output(&dom(categorical_fixed_points(&f, &h))?.functor))
        }
        MackeyCommand::Infl { m, group, subgroup } => {
            let g = inp(input::group(group))?;
            let n = inp(input::subgroup(&g, subgroup))?;
            if !g.is_normal(&n) {
                return Err(CliError::Domain(Error::NotNormal(format!("{:?}", n.elements()))));
            }
            let w = g.weyl(g.class_of(&n)).group.clone();
            let mut spec = MackeySpec::of(&load(m)?);
            spec.group = GroupSpec::of(&w);
            let over_w = inp(spec.build())?;
            Ok(mackey_output(&dom(inflation(&over_w, &g, &n))?))
        }
        MackeyCommand::Eval { m, gset } => {
            let f = load(m)?;
            let s = inp(input::gset(f.group(), gset))?;
            let v = f.evaluate(&s);
            Ok(Output { text: format!("{v}\n"), json: json!({"module": v.to_string()}) })
        }
        MackeyCommand::Fuzz { m, seed, count } => {
            let f = load(m)?;
            let r = dom(fuzz::mutation_fuzz(&f, *seed, *count))?;
            let rows: Vec<Vec<String>> = r
                .mutations
                .iter()
                .map(|x| {
                    vec![
                        if x.pushforward { "push" } else { "pull" }.to_string(),
                        x.map.to_string(),
                        format!("({}, {})", x.row, x.col),
                        format!("{:+}", x.delta),
                        x.caught.clone().unwrap_or_else(|| "still a Mackey functor".into()),
                    ]
                })
                .collect();
            Ok(Output {
                text: format!(
                    "{}/{} mutations rejected\n{}",
                    r.caught(),
                    r.mutations.len(),
                    table(&["kind", "map", "entry", "delta", "caught"], &rows)
                ),
                json: json!(r),
            })
        }
    }
}

fn run_zhat(c: &ZhatCommand) -> Res<Output> {
    let load = |z: &ZInput| {
        let ring = inp(input::ring(&z.trunc.ring))?;
        inp(input::zmackey(&z.input, ring, z.trunc.bound))
    };
    match c {
        ZhatCommand::Mul { expr, trunc } => {
            let x = witt(expr, trunc)?;
            Ok(Output { text: format!("{x}\n"), json: json!(x) })
        }
        ZhatCommand::Ghost { expr, trunc } => {
            let x = witt(expr, trunc)?;
            let g = x.ghost_vector();
            let rows: Vec<Vec<String>> =
                g.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v.to_string()]).collect();
            Ok(Output { text: table(&["level", "ghost"], &rows), json: json!(g) })
        }
        ZhatCommand::Idem { p, l, bound } => {
            let x = dom(p_local_idempotent(*p, *l, *bound))?;
            Ok(Output { text: format!("{x}\n"), json: json!(x) })
        }
        ZhatCommand::Check(z) => {
            let r = load(z)?.check();
            Ok(Output { text: r.to_string(), json: json!({"passed": r.passed(), "violations": r.violations}) })
        }
        ZhatCommand::Ptypical { z, p, level } => {
            let r = dom(p_typical_reconstruct_check(&load(z)?, *p, *level))?;
            let rows: Vec<Vec<String>> = r
                .summands
                .iter()
                .map(|s| vec![s.cofactor.to_string(), s.level.to_string(), s.component.clone(), s.coinvariants.clone()])
                .collect();
            let text = format!(
                "{}value {}\nreconstructed {}\nisomorphic {}\nexact {}\n",
                table(&["cofactor", "level", "component", "coinvariants"], &rows),
                r.value,
                r.reconstructed,
                r.isomorphic,
                r.exact
            );
            Ok(Output { text, json: json!(r) })
        }
        ZhatCommand::Filt { z, n, level } => {
            let f = dom(canonical_filtration(&load(z)?, *n, *level))?;
            let text = format!(
                "step {}\ncumulative {}\nquotient {}\nexact {}\n",
                f.step_module(),
                f.cumulative_module(),
                f.quotient(),
                f.exact
            );
            let json = json!({
                "level": f.level, "n": f.n, "step_module": f.step_module().to_string(),
                "cumulative": f.cumulative_module().to_string(), "quotient": f.quotient().to_string(), "exact": f.exact,
            });
            Ok(Output { text, json })
        }
        ZhatCommand::Phi { z, level } => {
            let lf = dom(level_fixed_points(&load(z)?, *level))?;
            let mut out = mackey_output(&lf.functor);
            let rows: Vec<Vec<String>> = lf
                .classes
                .iter()
                .map(|(d, &c)| vec![format!("Z/{d}"), lf.functor.value(c).to_string()])
                .collect();
            out.text = format!("{}exact {}\n", table(&["orbit", "value"], &rows), lf.exact);
            Ok(out)
        }
        ZhatCommand::Roundtrip(z) => {
            let r = dom(normal_system_roundtrip(&load(z)?))?.report;
            let rows: Vec<Vec<String>> = r
                .levels
                .iter()
                .map(|l| vec![l.level.to_string(), l.surjective.to_string(), l.injective.to_string()])
                .collect();
            let text = format!(
                "{}components valid {}\ntransitions iso {}\nsurjective {}\nseparated {}\nexact {}\n",
                table(&["level", "surjective", "injective"], &rows),
                r.components_valid,
                r.transitions_iso,
                r.surjective,
                r.separated,
                r.exact
            );
            Ok(Output { text, json: json!(r) })
        }
        ZhatCommand::Show(z) => {
            let m = load(z)?;
            let mut rows = Vec::new();
            for &l in m.levels() {
                rows.push(vec![l.to_string(), dom(m.value(l))?.to_string()]);
            }
            Ok(Output {
                text: format!("ring {}, bound {}, tail {:?}\n{}", m.ring(), m.bound(), m.tail(), table(&["level", "value"], &rows)),
                json: serde_json::to_value(ZMackeySpec::of(&m)).expect("values serialize"),
            })
        }
        ZhatCommand::Dbh(a) => dbh(a),
        ZhatCommand::Glue(a) => glue(a),
    }
}

fn dbh(a: &DbhArgs) -> Res<Output> {
    let ring = inp(input::ring(&a.ring))?;
    let left = inp(input::levels(&a.left))?;
    let right = inp(input::levels(&a.right))?;
    let h = dom(derived_burnside_homology(&left, &right, a.deg, a.bound, ring))?;
    let rows: Vec<Vec<String>> = h.iter().map(|x| vec![x.level.to_string(), x.module.clone()]).collect();
    Ok(Output { text: table(&["level", format!("H_{}", a.deg).as_str()], &rows), json: json!(h) })
}

fn glue(a: &GlueArgs) -> Res<Output> {
    let ring = inp(input::ring(&a.ring))?;
    let sigma = inp(input::cyclic_module(&a.module, a.n, ring))?;
    let v = dom(gluing_value(a.n, a.l, &sigma))?;
    let body = match &v.case {
        GluingCase::Identity { module } => format!("identity: {module}"),
        GluingCase::Tate { prime, tate } => format!("tate (p = {prime}): even {}, odd {}", tate.even, tate.odd),
        GluingCase::Zero => "zero".into(),
    };
    Ok(Output { text: format!("{body}\nmultiplicity {}\n", v.multiplicity), json: json!(v) })
}

