//! Command-line frontend for `convexcodes`.
//!
//! Each subcommand is a pure function from file contents to output text, so
//! tests can drive them without touching the file system. [`run`] adds file
//! I/O and maps outcomes to exit codes: 0 on success, 1 on any operational
//! error, 2 when `verify` finds a mismatch.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use convexcodes::formats::{parse_arrangement, parse_code, serialize_arrangement, serialize_code};
use convexcodes::generators::{
    corpus, gen_an, gen_cn, gen_sn, realization_an_r2, realization_cn_rn, CorpusEntry,
};
use convexcodes::topology::link;
use convexcodes::{
    code_of_arrangement, contractibility, AnalysisReport, Codeword, Error, NeuralCode,
};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "convexcodes",
    version,
    about = "Exact analysis of convex neural codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report maximal codewords, intersections, mandatory faces and local goodness.
    Analyze {
        code: PathBuf,
        /// Also compute reduced Betti numbers of the simplicial complex.
        #[arg(long)]
        homology: bool,
    },
    /// Print the code of an arrangement.
    CodeOf { arrangement: PathBuf },
    /// Check that an arrangement realizes a code (exit 2 on mismatch).
    Verify { arrangement: PathBuf, code: PathBuf },
    /// Write a family member or corpus entry as files.
    Gen {
        /// `an`, `sn`, `cn`, a corpus entry name, or `all` for the whole corpus.
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// `r2` or `rn` for families; a realization label or `all` for corpus entries.
        #[arg(long)]
        realization: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the link of a face and whether it is contractible.
    Link {
        code: PathBuf,
        /// Neurons of the face, separated by spaces or commas; `-` for the empty face.
        #[arg(long, allow_hyphen_values = true)]
        face: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn cmd_analyze(code_text: &str, homology: bool) -> CliResult<String> {
    let code = parse_code(code_text)?;
    Ok(AnalysisReport::new(&code, homology).to_string())
}

pub fn cmd_code_of(arrangement_text: &str) -> CliResult<String> {
    let arr = parse_arrangement(arrangement_text)?;
    Ok(serialize_code(&code_of_arrangement(&arr)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub matches: bool,
    pub report: String,
}

pub fn cmd_verify(arrangement_text: &str, code_text: &str) -> CliResult<Verification> {
    let arr = parse_arrangement(arrangement_text)?;
    let expected = parse_code(code_text)?;
    let actual = code_of_arrangement(&arr)?;
    let missing: Vec<Codeword> = expected
        .words()
        .difference(actual.words())
        .copied()
        .collect();
    let extra: Vec<Codeword> = actual
        .words()
        .difference(expected.words())
        .copied()
        .collect();
    let matches = missing.is_empty() && extra.is_empty() && actual.neurons() == expected.neurons();
    let mut report = String::new();
    if matches {
        writeln!(
            report,
            "ok: the arrangement realizes the code ({} codewords)",
            actual.len()
        )
        .expect("writing to a string");
    } else {
        writeln!(report, "mismatch").expect("writing to a string");
        if actual.neurons() != expected.neurons() {
            writeln!(
                report,
                "  arrangement has {} sets, code has {} neurons",
                actual.neurons(),
                expected.neurons()
            )
            .expect("writing to a string");
        }
        let list = |ws: &[Codeword]| convexcodes::code::format_words(ws);
        writeln!(report, "  in code, not realized: {}", list(&missing))
            .expect("writing to a string");
        writeln!(report, "  realized, not in code: {}", list(&extra)).expect("writing to a string");
    }
    Ok(Verification { matches, report })
}

/// Parses a face such as `"1 3"`, `"1,3"` or `"-"`.
pub fn parse_face(spec: &str, n: usize) -> CliResult<Codeword> {
    let mut face = Codeword::EMPTY;
    for token in spec
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        if token == "-" {
            continue;
        }
        let i: usize = token
            .parse()
            .map_err(|_| usage(format!("malformed neuron {token:?} in face")))?;
        if i == 0 || i > n {
            return Err(usage(format!("neuron {i} in face is outside 1..={n}")));
        }
        face = face.with(i);
    }
    Ok(face)
}

pub fn cmd_link(code_text: &str, face: &str) -> CliResult<String> {
    let code = parse_code(code_text)?;
    let sigma = parse_face(face, code.neurons())?;
    let lk = link(&code.simplicial_complex(), sigma)?;
    let status = contractibility(&lk);
    let mut out = String::new();
    writeln!(out, "face: {sigma}").expect("writing to a string");
    writeln!(
        out,
        "link facets: {}",
        convexcodes::code::format_words(lk.facets())
    )
    .expect("writing to a string");
    writeln!(out, "status: {status}").expect("writing to a string");
    if let convexcodes::ContractibilityStatus::Contractible(
        convexcodes::topology::ContractionCertificate::Collapses { steps, .. },
    ) = &status
    {
        for step in steps {
            writeln!(out, "  remove {} with {}", step.free, step.coface)
                .expect("writing to a string");
        }
    }
    Ok(out)
}

/// A file to be written by `gen`: name relative to the output directory and
/// its contents.
pub type GeneratedFile = (String, String);

pub fn cmd_gen(
    family: &str,
    n: Option<usize>,
    realization: Option<&str>,
) -> CliResult<Vec<GeneratedFile>> {
    match family {
        "an" | "sn" | "cn" => gen_family(family, n, realization),
        _ => {
            if n.is_some() {
                return Err(usage(format!(
                    "--n applies only to an, sn and cn, not {family:?}"
                )));
            }
            let entries = corpus()?;
            if family == "all" {
                let mut files = Vec::new();
                for entry in &entries {
                    files.extend(entry_files(entry, Some("all"))?);
                }
                return Ok(files);
            }
            let entry = entries
                .iter()
                .find(|e| e.name == family)
                .ok_or_else(|| usage(format!("unknown family or corpus entry {family:?}")))?;
            entry_files(entry, realization)
        }
    }
}

fn gen_family(
    family: &str,
    n: Option<usize>,
    realization: Option<&str>,
) -> CliResult<Vec<GeneratedFile>> {
    let n = n.ok_or_else(|| usage(format!("family {family} needs --n")))?;
    let code: NeuralCode = match family {
        "an" => gen_an(n)?,
        "sn" => gen_sn(n)?,
        _ => gen_cn(n)?,
    };
    let name = format!("{family}{n}");
    let mut files = vec![(format!("{name}.code"), serialize_code(&code))];
    if let Some(label) = realization {
        let arr = match (family, label) {
            ("an", "r2") => realization_an_r2(n)?,
            ("sn", "r2") => realization_an_r2(n)?.restrict(Codeword::full(n + 1))?,
            ("cn", "rn") => realization_cn_rn(n)?,
            ("cn", "r2") if n == 2 => realization_cn_rn(n)?,
            _ => {
                return Err(usage(format!(
                    "no {label:?} realization for {family} with n = {n}"
                )))
            }
        };
        files.push((format!("{name}.arr"), serialize_arrangement(&arr)));
    }
    Ok(files)
}

fn entry_files(entry: &CorpusEntry, realization: Option<&str>) -> CliResult<Vec<GeneratedFile>> {
    let mut files = vec![(entry.code_file_name(), serialize_code(&entry.code))];
    let Some(wanted) = realization else {
        return Ok(files);
    };
    let mut found = false;
    for (k, r) in entry.realizations.iter().enumerate() {
        if wanted == "all" || wanted == r.label {
            found = true;
            files.push((
                entry.arrangement_file_name(k),
                serialize_arrangement(&r.arrangement),
            ));
        }
    }
    if !found && wanted != "all" {
        let labels: Vec<&str> = entry
            .realizations
            .iter()
            .map(|r| r.label.as_str())
            .collect();
        return Err(usage(format!(
            "{} has no realization {wanted:?} (available: {})",
            entry.name,
            if labels.is_empty() {
                "none".to_string()
            } else {
                labels.join(", ")
            }
        )));
    }
    Ok(files)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn with_path(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Core(inner) => CliError::Usage(format!("{}: {inner}", path.display())),
        other => other,
    }
}

/// Executes a parsed command, writing results to `out`; returns the exit code.
pub fn execute(command: &Command, out: &mut dyn Write) -> CliResult<i32> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
    };
    match command {
        Command::Analyze { code, homology } => {
            let text = cmd_analyze(&read(code)?, *homology).map_err(|e| with_path(code, e))?;
            emit(out, &text)?;
        }
        Command::CodeOf { arrangement } => {
            let text = cmd_code_of(&read(arrangement)?).map_err(|e| with_path(arrangement, e))?;
            emit(out, &text)?;
        }
        Command::Verify { arrangement, code } => {
            let arr_text = read(arrangement)?;
            let code_text = read(code)?;
            parse_arrangement(&arr_text).map_err(|e| with_path(arrangement, e.into()))?;
            parse_code(&code_text).map_err(|e| with_path(code, e.into()))?;
            let v = cmd_verify(&arr_text, &code_text)?;
            emit(out, &v.report)?;
            if !v.matches {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Gen {
            family,
            n,
            realization,
            out: dir,
        } => {
            let files = cmd_gen(family, *n, realization.as_deref())?;
            std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.clone(),
                source,
            })?;
            for (name, contents) in files {
                let path = dir.join(name);
                std::fs::write(&path, contents).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                emit(out, &format!("wrote {}\n", path.display()))?;
            }
        }
        Command::Link { code, face } => {
            let text = cmd_link(&read(code)?, face).map_err(|e| with_path(code, e))?;
            emit(out, &text)?;
        }
    }
    Ok(EXIT_SUCCESS)
}

/// Parses arguments and runs the command. Usage errors exit with 1, not
/// clap's default of 2, which is reserved for verification mismatches.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_SUCCESS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
