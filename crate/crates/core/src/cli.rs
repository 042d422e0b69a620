//! Command-line front end.
//!
//! Exit status: 0 success, 1 mathematical negative (hypothesis not met,
//! no certificate found, inconclusive search), 2 usage or input error,
//! 3 resource limit.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::abelian::{degree_one_torsion, h1_class, h1_nonzero};
use crate::algebra::{desingularize, JExpression, SingularBraidWord};
use crate::braid::{bounded_equal, epsilon0, relators, BraidWord, EqualityResult, DEFAULT_NODE_BUDGET};
use crate::diagram::{
    degree_one_symbol, diagram_equal, ideal_member, Membership, Trunc, WreathDiagram,
    DEFAULT_WINDOW,
};
use crate::error::{Error, Result};
use crate::surface::SurfaceParams;
use crate::symplectic::{symp_dims, symp_twist_redundancy, Grading, DEFAULT_WORD_CAP};
use crate::verifier::{verify_nonexistence, Verdict};

pub const CACHE_FORMAT: &str = "# surface-braids symplectic-dims v1";

#[derive(Parser, Debug)]
#[command(name = "surface-braids", version, about = "Surface braid groups and beaded chord diagrams")]
pub struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub boundary: Option<usize>,
    #[arg(long)]
    pub strands: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Braid words.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Singular braids.
    #[command(subcommand)]
    Singular(SingularCmd),
    /// Associated graded.
    #[command(subcommand)]
    Gr(GrCmd),
    /// Beaded chord diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Abelianization.
    #[command(subcommand)]
    H1(H1Cmd),
    /// Run the non-existence obstruction at the given parameters.
    VerifyTheorem {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Symplectic chord-diagram algebra.
    #[command(subcommand)]
    Symplectic(SympCmd),
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    Parse {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
    },
    Mul {
        #[command(flatten)]
        surface: SurfaceArgs,
        left: String,
        right: String,
    },
    Inv {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
    },
    /// Underlying permutation.
    Perm {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
    },
    /// Image in the wreath product (beads per strand and permutation).
    Theta {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
    },
    Relators {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Search for a relator-move rewriting of one word into another.
    Equal {
        #[command(flatten)]
        surface: SurfaceArgs,
        left: String,
        right: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SingularCmd {
    /// Expand double points `x<i>` into signed resolutions.
    Desing {
        #[command(flatten)]
        surface: SurfaceArgs,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GrCmd {
    /// Degree-one symbol of a J-expression `coef | u | i | v ; ...`.
    Symbol {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        jexpr: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiagramCmd {
    /// Decide membership in the relation ideal.
    Member {
        #[command(flatten)]
        surface: SurfaceArgs,
        element: String,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Decide equality in the quotient.
    Equal {
        #[command(flatten)]
        surface: SurfaceArgs,
        left: String,
        right: String,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum H1Cmd {
    /// Class of a diagram of chord degree ≤ 1.
    Class {
        #[command(flatten)]
        surface: SurfaceArgs,
        element: String,
    },
    /// Integer elementary divisors of the degree-one relation span.
    Torsion {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum SympCmd {
    /// Table of graded dimensions.
    Dims {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        max_degree: usize,
        /// Give chords degree 1 (genus 0 only).
        #[arg(long)]
        regrade: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
    },
    /// Whether chords are redundant given the twist relation.
    TwistCheck {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
}

/// Settings from the config file, overridden by flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub genus: usize,
    pub boundary: usize,
    pub strands: usize,
    pub trunc: Trunc,
    pub window: usize,
    pub node_budget: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            genus: 1,
            boundary: 1,
            strands: 2,
            trunc: Trunc::default(),
            window: DEFAULT_WINDOW,
            node_budget: DEFAULT_NODE_BUDGET,
            cache_dir: None,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let num = || {
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("config line {}: `{v}` is not a number", no + 1)))
            };
            match k {
                "genus" => c.genus = num()?,
                "boundary" => c.boundary = num()?,
                "strands" => c.strands = num()?,
                "max_chords" => c.trunc.max_chords = num()?,
                "max_beads" => c.trunc.max_beads = num()?,
                "window" => c.window = num()?,
                "node_budget" => c.node_budget = num()?,
                "cache_dir" => c.cache_dir = Some(PathBuf::from(v)),
                _ => return Err(Error::Parse(format!("config line {}: unknown key `{k}`", no + 1))),
            }
        }
        if c.window < c.trunc.max_chords {
            return Err(Error::Parameter(format!(
                "window {} is below the chord truncation {}",
                c.window, c.trunc.max_chords
            )));
        }
        Ok(c)
    }

    fn surface_raw(&self, a: &SurfaceArgs) -> SurfaceParams {
        SurfaceParams {
            genus: a.genus.unwrap_or(self.genus),
            boundary: a.boundary.unwrap_or(self.boundary),
            strands: a.strands.unwrap_or(self.strands),
        }
    }

    fn surface(&self, a: &SurfaceArgs) -> Result<SurfaceParams> {
        let s = self.surface_raw(a);
        SurfaceParams::new(s.genus, s.boundary, s.strands)
    }
}

/// Error to exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::Overflow(_) => 3,
        Error::Hypothesis(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // fails only if a pool exists already, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let config = match &cli.config {
        None => Ok(Config::default()),
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", p.display())))
            .and_then(|t| Config::parse(&t)),
    };
    let result = config.and_then(|c| dispatch(&cli.command, &c, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Resource(format!("i/o: {e}"))
}

fn parse_word(text: &str, s: &SurfaceParams) -> Result<BraidWord> {
    let w = BraidWord::parse(text)?;
    w.validate(s)?;
    Ok(w)
}

fn parse_diagram(text: &str, s: &SurfaceParams, c: &Config) -> Result<WreathDiagram> {
    let x = WreathDiagram::parse(text, s.strands, c.trunc)?;
    x.check(s)?;
    Ok(x)
}

fn report_membership(m: &Membership, out: &mut dyn Write) -> Result<i32> {
    match m {
        Membership::Member(cert) => {
            writeln!(out, "MEMBER").map_err(io)?;
            write!(out, "{cert}").map_err(io)?;
            Ok(0)
        }
        Membership::NotFoundAtWindow => {
            writeln!(out, "NOT FOUND AT WINDOW").map_err(io)?;
            Ok(1)
        }
    }
}

fn dispatch(cmd: &Command, c: &Config, out: &mut dyn Write) -> Result<i32> {
    let mut line = |text: String| writeln!(out, "{text}").map_err(io);
    match cmd {
        Command::Braid(b) => match b {
            BraidCmd::Parse { surface, word } => {
                let s = c.surface(surface)?;
                line(parse_word(word, &s)?.to_string())?;
            }
            BraidCmd::Mul { surface, left, right } => {
                let s = c.surface(surface)?;
                let w = parse_word(left, &s)?.concat(&parse_word(right, &s)?);
                line(w.free_reduced().to_string())?;
            }
            BraidCmd::Inv { surface, word } => {
                let s = c.surface(surface)?;
                line(parse_word(word, &s)?.inverse().free_reduced().to_string())?;
            }
            BraidCmd::Perm { surface, word } => {
                let s = c.surface(surface)?;
                line(epsilon0(&parse_word(word, &s)?, &s)?.perm.to_string())?;
            }
            BraidCmd::Theta { surface, word } => {
                let s = c.surface(surface)?;
                line(epsilon0(&parse_word(word, &s)?, &s)?.to_string())?;
            }
            BraidCmd::Relators { surface } => {
                let s = c.surface(surface)?;
                for r in relators(&s) {
                    line(r.to_string())?;
                }
            }
            BraidCmd::Equal { surface, left, right, depth } => {
                let s = c.surface(surface)?;
                let (u, v) = (parse_word(left, &s)?, parse_word(right, &s)?);
                match bounded_equal(&u, &v, &s, *depth, c.node_budget)? {
                    EqualityResult::Equal(moves) => {
                        line(format!("EQUAL in {} move(s)", moves.len()))?;
                        for m in moves {
                            line(m.to_string())?;
                        }
                    }
                    EqualityResult::Unknown => {
                        line("UNKNOWN".into())?;
                        return Ok(1);
                    }
                }
            }
        },
        Command::Singular(SingularCmd::Desing { surface, word }) => {
            let s = c.surface(surface)?;
            let w = SingularBraidWord::parse(word)?;
            w.validate(&s)?;
            line(desingularize(&w).to_string())?;
        }
        Command::Gr(GrCmd::Symbol { surface, jexpr }) => {
            let s = c.surface(surface)?;
            let e = JExpression::parse(jexpr)?;
            line(degree_one_symbol(&e, &s, c.trunc)?.to_string())?;
        }
        Command::Diagram(d) => match d {
            DiagramCmd::Member { surface, element, window } => {
                let s = c.surface(surface)?;
                let x = parse_diagram(element, &s, c)?;
                let m = ideal_member(&x, &s, c.trunc, window.unwrap_or(c.window))?;
                return report_membership(&m, out);
            }
            DiagramCmd::Equal { surface, left, right, window } => {
                let s = c.surface(surface)?;
                let (x, y) = (parse_diagram(left, &s, c)?, parse_diagram(right, &s, c)?);
                let m = diagram_equal(&x, &y, &s, c.trunc, window.unwrap_or(c.window))?;
                return report_membership(&m, out);
            }
        },
        Command::H1(h) => match h {
            H1Cmd::Class { surface, element } => {
                let s = c.surface(surface)?;
                let h = h1_class(&parse_diagram(element, &s, c)?, &s)?;
                line(h.to_string())?;
                match h1_nonzero(&h) {
                    Some((m, k)) => line(format!("nonzero: coefficient {k} at {m}"))?,
                    None => line("zero".into())?,
                }
            }
            H1Cmd::Torsion { surface } => {
                let s = c.surface(surface)?;
                let r = degree_one_torsion(&s, c.trunc);
                line(r.to_string())?;
                if !r.torsion_free() {
                    return Ok(1);
                }
            }
        },
        Command::VerifyTheorem { surface, report } => {
            let s = c.surface(surface)?;
            let r = verify_nonexistence(&s)?;
            let text = r.to_string();
            write!(out, "{text}").map_err(io)?;
            if let Some(p) = report {
                fs::write(p, &text).map_err(io)?;
            }
            return Ok(if r.verdict == Verdict::ObstructionEstablished { 0 } else { 1 });
        }
        Command::Symplectic(sc) => match sc {
            SympCmd::Dims { surface, max_degree, regrade, word_cap } => {
                let s = c.surface_raw(surface);
                if s.strands == 0 {
                    return Err(Error::Parameter("need at least one strand".into()));
                }
                let gr = if *regrade { Grading::regraded() } else { Grading::default() };
                let table = symp_table(&s, *max_degree, gr, *word_cap, c.cache_dir.as_deref())?;
                write!(out, "{table}").map_err(io)?;
            }
            SympCmd::TwistCheck { surface } => {
                let s = c.surface(surface)?;
                let ok = symp_twist_redundancy(&s)?;
                line(ok.to_string())?;
                return Ok(if ok { 0 } else { 1 });
            }
        },
    }
    Ok(0)
}

fn render_table(s: &SurfaceParams, gr: Grading, dims: &[usize]) -> String {
    let mut t = format!(
        "{CACHE_FORMAT}\n# genus={} boundary={} strands={} chord_degree={}\ndegree, dimension\n",
        s.genus, s.boundary, s.strands, gr.chord
    );
    for (d, x) in dims.iter().enumerate() {
        t.push_str(&format!("{d}, {x}\n"));
    }
    t
}

fn cache_path(dir: &Path, s: &SurfaceParams, d: usize, gr: Grading) -> PathBuf {
    dir.join(format!(
        "symp-g{}-p{}-n{}-d{}-c{}.txt",
        s.genus, s.boundary, s.strands, d, gr.chord
    ))
}

/// The dimension table, read from the cache when a current one exists.
pub fn symp_table(
    s: &SurfaceParams,
    max_degree: usize,
    gr: Grading,
    word_cap: usize,
    cache: Option<&Path>,
) -> Result<String> {
    if let Some(dir) = cache {
        let p = cache_path(dir, s, max_degree, gr);
        if let Ok(text) = fs::read_to_string(&p) {
            if text.lines().next() == Some(CACHE_FORMAT) {
                return Ok(text);
            }
        }
    }
    let table = render_table(s, gr, &symp_dims(s, max_degree, gr, word_cap)?);
    if let Some(dir) = cache {
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(cache_path(dir, s, max_degree, gr), &table).map_err(io)?;
    }
    Ok(table)
}

/// Recognised config keys with a short description.
pub fn config_keys() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("genus", "surface genus"),
        ("boundary", "boundary components"),
        ("strands", "number of strands"),
        ("max_chords", "truncation: chord degree"),
        ("max_beads", "truncation: bead length"),
        ("window", "membership search window (bead length)"),
        ("node_budget", "braid equality search budget"),
        ("cache_dir", "directory for cached tables"),
    ])
}
