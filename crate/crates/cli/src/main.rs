//! `tsalg`: batch front end for twisted Steinberg algebras of finite groupoids.
//!
//! Exit codes: 0 on success, 1 on invalid input (violations are printed),
//! 2 on usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twisted_steinberg::algebra::{AlgebraContext, AlgebraElement, EquivariantModel};
use twisted_steinberg::catalog;
use twisted_steinberg::cocycle::{Grading, TwoCocycle};
use twisted_steinberg::coefficients::{Involution, Ring, RingKind};
use twisted_steinberg::error::{Error, Violation};
use twisted_steinberg::formats;
use twisted_steinberg::groupoid::FiniteGroupoid;
use twisted_steinberg::structure::{self, NonSimplicity, SimplicityMode, SimplicityVerdict};
use twisted_steinberg::twist::{self, DiscreteTwist};

#[derive(Parser)]
#[command(name = "tsalg", version, about = "Exact twisted Steinberg algebras of finite groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AlgebraOpts {
    /// Coefficient ring: Z, Q, GF(p), Z/p, GF(p^2), Q(zeta_n).
    #[arg(long, default_value = "Q")]
    ring: String,
    /// Cocycle file; the algebra is untwisted without one.
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a file.
    Validate {
        #[command(subcommand)]
        what: ValidateWhat,
    },
    /// Print the orbits of the unit space, one per line.
    Orbits { groupoid: PathBuf },
    /// Whether the isotropy is the unit space.
    Effective { groupoid: PathBuf },
    /// Whether there is a single orbit.
    Minimal { groupoid: PathBuf },
    /// Twisted convolution of two elements.
    Mul {
        groupoid: PathBuf,
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// The involution of an element.
    Star {
        groupoid: PathBuf,
        element: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
        /// id, conj or frobenius; defaults to the natural one for the ring.
        #[arg(long)]
        involution: Option<String>,
    },
    /// Write an element as a combination of characteristic functions of
    /// disjoint bisections.
    Decompose {
        groupoid: PathBuf,
        element: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// Whether two cocycles differ by a coboundary.
    Cohomologous {
        groupoid: PathBuf,
        first: PathBuf,
        second: PathBuf,
        /// Directory for the witness `witness.cob`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete twists.
    Twist {
        #[command(subcommand)]
        what: TwistWhat,
    },
    /// The image of a T-equivariant function on the twist, in the algebra
    /// twisted by the inverse of the induced cocycle.
    Psi {
        twist: PathBuf,
        /// An element over the arrows of the twist.
        element: PathBuf,
        #[arg(long, default_value = "Q")]
        ring: String,
        /// Section file; the first section found is used without one.
        #[arg(long)]
        section: Option<PathBuf>,
    },
    /// Graded components of an element.
    Grade {
        groupoid: PathBuf,
        element: PathBuf,
        #[arg(long)]
        grading: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// Two-sided ideals (fields only).
    Ideal {
        #[command(subcommand)]
        what: IdealWhat,
    },
    /// `1_V` for units `V` inside a nonzero ideal of an effective groupoid.
    CkWitness {
        groupoid: PathBuf,
        ideal: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// `1_K` for units `K` inside a nonzero graded ideal.
    GradedWitness {
        groupoid: PathBuf,
        ideal: PathBuf,
        #[arg(long)]
        grading: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// Decide simplicity of the algebra.
    Simple {
        groupoid: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
        #[arg(long, value_enum, default_value_t = Mode::Structural)]
        mode: Mode,
        /// Bound on |F|^|G| for exhaustive mode.
        #[arg(long, default_value_t = structure::DEFAULT_CAP)]
        cap: u128,
        /// Directory for the certificate of non-simplicity.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        what: CatalogWhat,
    },
}

#[derive(Subcommand)]
enum ValidateWhat {
    Groupoid { groupoid: PathBuf },
    Cocycle { groupoid: PathBuf, cocycle: PathBuf },
    Grading { groupoid: PathBuf, grading: PathBuf },
    Twist { twist: PathBuf },
}

#[derive(Subcommand)]
enum TwistWhat {
    /// `G ×_σ T` from a groupoid and a cocycle.
    Build { groupoid: PathBuf, cocycle: PathBuf },
    /// Whether two twists over the same groupoid are isomorphic.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Directory for the isomorphism `iso.mor`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A global section.
    Section { twist: PathBuf },
    /// The cocycle induced by a section.
    Induced {
        twist: PathBuf,
        /// Section file; the first section found is used without one.
        #[arg(long)]
        section: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IdealWhat {
    /// The ideal generated by elements.
    Gen {
        groupoid: PathBuf,
        #[arg(required = true)]
        elements: Vec<PathBuf>,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
    /// Whether an element lies in an ideal.
    Member {
        groupoid: PathBuf,
        ideal: PathBuf,
        element: PathBuf,
        #[command(flatten)]
        algebra: AlgebraOpts,
    },
}

#[derive(Subcommand)]
enum CatalogWhat {
    /// Fixture names with their structural facts.
    List,
    /// Write a groupoid, cocycle or grading fixture (with its groupoid).
    Emit {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Structural,
}

type Outcome = Result<String, Failure>;

enum Failure {
    Violations(Vec<Violation>),
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid { violations, .. } => Failure::Violations(violations),
            e => Failure::Error(e),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn violations(v: Vec<Violation>) -> Outcome {
    if v.is_empty() {
        Ok("valid\n".into())
    } else {
        Err(Failure::Violations(v))
    }
}

fn load_groupoid(path: &Path) -> Result<FiniteGroupoid, Failure> {
    let g = formats::parse_groupoid(&read(path)?)?;
    g.ensure_valid()?;
    Ok(g)
}

fn load_cocycle(path: &Path, g: &FiniteGroupoid) -> Result<TwoCocycle, Failure> {
    let c = formats::parse_cocycle(&read(path)?, g)?;
    c.ensure_valid(g)?;
    Ok(c)
}

fn load_twist(path: &Path) -> Result<DiscreteTwist, Failure> {
    let t = formats::parse_twist(&read(path)?)?;
    t.ensure_valid()?;
    Ok(t)
}

fn load_grading(path: &Path, g: &FiniteGroupoid) -> Result<Grading, Failure> {
    let c = formats::parse_grading(&read(path)?, g)?;
    let v = c.validate(g);
    if !v.is_empty() {
        return Err(Failure::Violations(v));
    }
    Ok(c)
}

fn context(g: FiniteGroupoid, opts: &AlgebraOpts, involution: Option<Involution>) -> Result<AlgebraContext, Failure> {
    let ring = Ring::parse(&opts.ring)?;
    let sigma = match &opts.cocycle {
        Some(p) => load_cocycle(p, &g)?,
        None => TwoCocycle::trivial(&g, 1),
    };
    Ok(AlgebraContext::standard(g, ring, sigma, involution)?)
}

fn load_element(path: &Path, ctx: &AlgebraContext) -> Result<AlgebraElement, Failure> {
    Ok(formats::parse_element(&read(path)?, ctx.groupoid(), ctx.ring())?)
}

fn natural_involution(ring: &Ring) -> Involution {
    match ring.kind() {
        RingKind::CyclotomicField(_) => Involution::Conjugation,
        RingKind::QuadraticGaloisField(_) => Involution::Frobenius,
        _ => Involution::Identity,
    }
}

fn flag(name: &str, value: bool) -> String {
    format!("{name}: {value}\n")
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { what } => match what {
            ValidateWhat::Groupoid { groupoid } => violations(formats::parse_groupoid(&read(&groupoid)?)?.validate()),
            ValidateWhat::Cocycle { groupoid, cocycle } => {
                let g = load_groupoid(&groupoid)?;
                violations(formats::parse_cocycle(&read(&cocycle)?, &g)?.validate(&g))
            }
            ValidateWhat::Grading { groupoid, grading } => {
                let g = load_groupoid(&groupoid)?;
                violations(formats::parse_grading(&read(&grading)?, &g)?.validate(&g))
            }
            ValidateWhat::Twist { twist } => violations(formats::parse_twist(&read(&twist)?)?.validate()),
        },
        Command::Orbits { groupoid } => {
            let g = load_groupoid(&groupoid)?;
            Ok(g.orbits()
                .iter()
                .map(|o| {
                    let labels: Vec<&str> = o.iter().map(|&u| g.label(u)).collect();
                    format!("orbit {}\n", labels.join(" "))
                })
                .collect())
        }
        Command::Effective { groupoid } => Ok(flag("effective", load_groupoid(&groupoid)?.is_effective())),
        Command::Minimal { groupoid } => Ok(flag("minimal", load_groupoid(&groupoid)?.is_minimal())),
        Command::Mul { groupoid, left, right, algebra } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let f = ctx.convolve(&load_element(&left, &ctx)?, &load_element(&right, &ctx)?);
            Ok(formats::emit_element(ctx.groupoid(), ctx.ring(), &f))
        }
        Command::Star { groupoid, element, algebra, involution } => {
            let ring = Ring::parse(&algebra.ring)?;
            let conj = match involution {
                Some(s) => Involution::parse(&s)?,
                None => natural_involution(&ring),
            };
            let ctx = context(load_groupoid(&groupoid)?, &algebra, Some(conj))?;
            let f = ctx.involute(&load_element(&element, &ctx)?)?;
            Ok(formats::emit_element(ctx.groupoid(), ctx.ring(), &f))
        }
        Command::Decompose { groupoid, element, algebra } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let terms = ctx.disjoint_decomposition(&load_element(&element, &ctx)?)?;
            Ok(formats::emit_decomposition(ctx.groupoid(), ctx.ring(), &terms))
        }
        Command::Cohomologous { groupoid, first, second, out } => {
            let g = load_groupoid(&groupoid)?;
            let (s, t) = (load_cocycle(&first, &g)?, load_cocycle(&second, &g)?);
            let w = s.cohomologous_witness(&g, &t)?;
            if let (Some(b), Some(dir)) = (&w, &out) {
                write(dir, "witness.cob", &formats::emit_coboundary(&g, b))?;
            }
            Ok(flag("cohomologous", w.is_some()))
        }
        Command::Twist { what } => match what {
            TwistWhat::Build { groupoid, cocycle } => {
                let g = load_groupoid(&groupoid)?;
                let sigma = load_cocycle(&cocycle, &g)?;
                Ok(formats::emit_twist(&DiscreteTwist::build(&g, &sigma)?))
            }
            TwistWhat::Iso { first, second, out } => {
                let (a, b) = (load_twist(&first)?, load_twist(&second)?);
                let psi = twist::twists_isomorphic(&a, &b)?;
                if let (Some(m), Some(dir)) = (&psi, &out) {
                    write(dir, "iso.mor", &formats::emit_morphism(&a, &b, m))?;
                }
                Ok(flag("isomorphic", psi.is_some()))
            }
            TwistWhat::Section { twist } => {
                let t = load_twist(&twist)?;
                Ok(formats::emit_section(&t, &t.find_section()))
            }
            TwistWhat::Induced { twist, section } => {
                let t = load_twist(&twist)?;
                let p = match section {
                    Some(p) => formats::parse_section(&read(&p)?, &t)?,
                    None => t.find_section(),
                };
                Ok(formats::emit_cocycle(t.base(), &t.induced_cocycle(&p)?))
            }
        },
        Command::Psi { twist, element, ring, section } => {
            let t = load_twist(&twist)?;
            let ring = Ring::parse(&ring)?;
            let p = match section {
                Some(p) => formats::parse_section(&read(&p)?, &t)?,
                None => t.find_section(),
            };
            let f = formats::parse_element(&read(&element)?, t.total(), &ring)?;
            let model = EquivariantModel::new(t.clone(), p, ring.clone(), None)?;
            let values: Vec<_> = t.total().arrows().map(|e| f.get(e).cloned().unwrap_or_else(|| ring.zero())).collect();
            let h = model.psi(&model.from_function(&values)?);
            Ok(formats::emit_element(t.base(), &ring, &h))
        }
        Command::Grade { groupoid, element, grading, algebra } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let c = load_grading(&grading, ctx.groupoid())?;
            let parts = ctx.graded_components(&load_element(&element, &ctx)?, &c)?;
            Ok(formats::emit_components(ctx.groupoid(), ctx.ring(), &parts))
        }
        Command::Ideal { what } => match what {
            IdealWhat::Gen { groupoid, elements, algebra } => {
                let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
                let fs = elements.iter().map(|p| load_element(p, &ctx)).collect::<Result<Vec<_>, _>>()?;
                Ok(formats::emit_ideal(&ctx, &structure::ideal_generated(&ctx, &fs)?))
            }
            IdealWhat::Member { groupoid, ideal, element, algebra } => {
                let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
                let i = formats::parse_ideal(&read(&ideal)?, &ctx)?;
                Ok(flag("member", i.contains(&ctx, &load_element(&element, &ctx)?)))
            }
        },
        Command::CkWitness { groupoid, ideal, algebra } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let i = load_ideal(&ideal, &ctx)?;
            let v = structure::ck_witness(&ctx, &i)?;
            Ok(unit_element(&ctx, &v))
        }
        Command::GradedWitness { groupoid, ideal, grading, algebra } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let c = load_grading(&grading, ctx.groupoid())?;
            let i = load_ideal(&ideal, &ctx)?;
            let k = structure::graded_ck_witness(&ctx, &c, &i)?;
            Ok(unit_element(&ctx, &k))
        }
        Command::Simple { groupoid, algebra, mode, cap, out } => {
            let ctx = context(load_groupoid(&groupoid)?, &algebra, None)?;
            let mode = match mode {
                Mode::Exhaustive => SimplicityMode::Exhaustive { cap },
                Mode::Structural => SimplicityMode::Structural,
            };
            match structure::is_simple(&ctx, mode)? {
                SimplicityVerdict::Simple => Ok("simple: true\n".into()),
                SimplicityVerdict::Unknown(why) => Ok(format!("simple: unknown\nreason: {why}\n")),
                SimplicityVerdict::NotSimple(cert) => {
                    if let Some(dir) = &out {
                        write_certificate(&ctx, &cert, dir)?;
                    }
                    Ok("simple: false\n".into())
                }
            }
        }
        Command::Catalog { what } => match what {
            CatalogWhat::List => Ok(catalog_list()),
            CatalogWhat::Emit { name, out } => catalog_emit(&name, &out),
        },
    }
}

fn load_ideal(path: &Path, ctx: &AlgebraContext) -> Result<structure::Ideal, Failure> {
    let i = formats::parse_ideal(&read(path)?, ctx)?;
    if !i.is_closed(ctx) {
        return Err(Failure::Violations(vec![Violation::new(
            "ideal",
            "the span is not closed under multiplication by δ_γ",
        )]));
    }
    Ok(i)
}

fn unit_element(ctx: &AlgebraContext, units: &BTreeSet<usize>) -> String {
    let f = AlgebraElement::from_map(ctx.ring(), units.iter().map(|&u| (u, ctx.ring().one())));
    formats::emit_element(ctx.groupoid(), ctx.ring(), &f)
}

fn write_certificate(ctx: &AlgebraContext, cert: &NonSimplicity, dir: &Path) -> Result<(), Failure> {
    write(dir, "ideal.idl", &formats::emit_ideal(ctx, cert.ideal()))?;
    match cert {
        NonSimplicity::Element { element, .. } => {
            write(dir, "generator.elt", &formats::emit_element(ctx.groupoid(), ctx.ring(), element))
        }
        NonSimplicity::Invariant { units, .. } => write(dir, "invariant.elt", &unit_element(ctx, units)),
    }
}

fn catalog_list() -> String {
    let mut out = String::new();
    for e in catalog::entries() {
        out.push_str(&format!(
            "{} arrows={} units={} effective={} minimal={} orbits={} # {}\n",
            e.name,
            e.dimension,
            e.groupoid.units().len(),
            e.effective,
            e.minimal,
            e.orbits,
            e.description
        ));
    }
    for name in catalog::COCYCLE_NAMES {
        let (base, c) = catalog::named_cocycle(name).expect("listed");
        out.push_str(&format!("{name} cocycle on {base} order={}\n", c.order()));
    }
    for name in catalog::GRADING_NAMES {
        let (base, _) = catalog::named_grading(name).expect("listed");
        out.push_str(&format!("{name} grading on {base}\n"));
    }
    out
}

fn file_stem(name: &str) -> String {
    name.replace('+', "_")
}

fn catalog_emit(name: &str, dir: &Path) -> Outcome {
    let base = if let Some(e) = catalog::entry(name) {
        e
    } else if let Some((base, c)) = catalog::named_cocycle(name) {
        let e = catalog::entry(base).expect("catalog base");
        write(dir, &format!("{name}.coc"), &formats::emit_cocycle(&e.groupoid, &c))?;
        e
    } else if let Some((base, c)) = catalog::named_grading(name) {
        let e = catalog::entry(base).expect("catalog base");
        write(dir, &format!("{name}.grd"), &formats::emit_grading(&e.groupoid, &c))?;
        e
    } else {
        return Err(Failure::Error(Error::Precondition(format!("no catalog fixture named `{name}`"))));
    };
    let file = format!("{}.gpd", file_stem(base.name));
    write(dir, &file, &formats::emit_groupoid(&base.groupoid))?;
    Ok(String::new())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violations(v)) => {
            for x in v {
                println!("{x}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
