//! `rootres`: closedness decisions, separation certificates and their
//! verification from the command line.
//!
//! Exit status: 0 for a positive verdict, 1 for a negative verdict (with a
//! report on standard output), 2 for usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use rootres::axioms::axiom_sweep;
use rootres::format::{load_group, load_scheme, load_word, parse_element, parse_subgroup};
use rootres::residuality::verify_json;
use rootres::{
    is_k_closed, residual_core, separate_free_word, separate_in_power, Error, FreeWord,
    RootClassSpec, SeparationCertificate, DEFAULT_ORDER_CAP,
};

#[derive(Parser)]
#[command(name = "rootres", version, about = "Root-class residuality of generalized free products")]
struct Cli {
    /// Largest group order any closure may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a subgroup is closed for a root class.
    Closed {
        /// Catalog name or group file.
        #[arg(long)]
        group: String,
        /// Named subgroup or element list such as "(1 2), (3 4)".
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        class: RootClassSpec,
        /// Element whose closedness certificate --out receives (default: the
        /// first witnessed element).
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separate an element of a free power through a quotient power.
    Separate {
        /// Scheme file or FACTOR^k/SUBGROUP.
        #[arg(long)]
        scheme: String,
        /// Word file or inline "(0:a b)(1:a c)".
        #[arg(long)]
        word: String,
        #[arg(long)]
        class: RootClassSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separate a free-group word in a truncated power-series unit group.
    SeparateFree {
        /// Word such as "x1 x2^-1 x1^-1 x2".
        #[arg(long)]
        word: String,
        /// p:q selects modulus q; finite and solvable select modulus 2.
        #[arg(long)]
        class: Option<RootClassSpec>,
        /// Coefficient modulus: a prime, or 0 for the integers.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify {
        certificate: PathBuf,
    },
    /// Sweep the root-class axioms over the catalog.
    Axioms {
        #[arg(long)]
        class: RootClassSpec,
        #[arg(long, default_value_t = 48)]
        max_order: usize,
    },
    /// Reduce a word to its canonical form.
    NormalForm {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        word: String,
    },
    /// Print the residual core of a group.
    Core {
        #[arg(long)]
        group: String,
        #[arg(long)]
        class: RootClassSpec,
    },
}

/// Failure of a command: a negative verdict or an input error.
enum Failure {
    Negative(serde_json::Value),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<serde_json::Value, Failure>;

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn write_certificate(cert: &SeparationCertificate, out: Option<&Path>) -> Result<(), Failure> {
    let text = cert.to_json() + "\n";
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn closed(
    cap: usize,
    group: &str,
    subgroup: &str,
    class: RootClassSpec,
    element: Option<&str>,
    out: Option<&Path>,
) -> Outcome {
    let loaded = load_group(group, cap)?;
    let h = parse_subgroup(&loaded.group, &loaded.subgroups, subgroup)?;
    let report = is_k_closed(&loaded.group, &h, class)?;
    if let Some(out) = out {
        let a = match element {
            Some(text) => parse_element(&loaded.group, text)?,
            None => report
                .witnesses
                .first()
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Failure::Input("no element has a closedness witness".into()))?,
        };
        write_certificate(&report.certificate(&a)?, Some(out))?;
    }
    let summary = serde_json::to_value(report.summary()).expect("summary serializes");
    if report.closed {
        Ok(summary)
    } else {
        Err(Failure::Negative(summary))
    }
}

fn separate(cap: usize, scheme: &str, word: &str, class: RootClassSpec, out: Option<&Path>) -> Outcome {
    let scheme = load_scheme(scheme, cap)?;
    let g = load_word(&scheme, word)?;
    match separate_in_power(&scheme, &g, class) {
        Ok(cert) => {
            write_certificate(&cert, out)?;
            Ok(serde_json::Value::Null)
        }
        Err(Error::TrivialWord) => Err(Failure::Input(
            "trivial word: g reduces to the identity".into(),
        )),
        Err(Error::Hypothesis(reason)) => Err(Failure::Negative(json!({
            "separated": false,
            "class": class,
            "reason": reason,
        }))),
        Err(e) => Err(e.into()),
    }
}

fn separate_free(
    word: &str,
    class: Option<RootClassSpec>,
    modulus: Option<u64>,
    max_degree: usize,
    out: Option<&Path>,
) -> Outcome {
    let modulus = modulus.unwrap_or(match class {
        Some(RootClassSpec::FiniteP(p)) => p,
        _ => 2,
    });
    let w = FreeWord::parse(word)?;
    match separate_free_word(&w, modulus, max_degree) {
        Ok(cert) => {
            write_certificate(&cert, out)?;
            Ok(serde_json::Value::Null)
        }
        Err(Error::TrivialWord) => Err(Failure::Input("trivial word: w freely reduces to 1".into())),
        Err(e @ Error::DegreeExhausted { .. }) => Err(Failure::Negative(json!({
            "separated": false,
            "reason": e.to_string(),
        }))),
        Err(e) => Err(e.into()),
    }
}

fn verify(path: &Path) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("reading {}: {e}", path.display())))?;
    let verdict = verify_json(&text)
        .map_err(|e| Failure::Input(format!("malformed certificate: {e}")))?;
    let report = json!({ "accepted": verdict.accepted, "failures": verdict.failures });
    if verdict.accepted {
        Ok(report)
    } else {
        Err(Failure::Negative(report))
    }
}

fn axioms(cap: usize, class: RootClassSpec, max_order: usize) -> Outcome {
    if max_order > cap {
        return Err(Failure::Input(format!("--max-order {max_order} exceeds --cap {cap}")));
    }
    let report = axiom_sweep(class, max_order, cap)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.passed() {
        Ok(value)
    } else {
        Err(Failure::Negative(value))
    }
}

fn normal_form(cap: usize, scheme: &str, word: &str) -> Outcome {
    let scheme = load_scheme(scheme, cap)?;
    let g = load_word(&scheme, word)?;
    let nf = scheme.reduce(&g)?;
    Ok(json!({
        "length": nf.length(),
        "head": nf.head,
        "tail": nf.tail,
        "text": nf.to_string(),
    }))
}

fn core(cap: usize, group: &str, class: RootClassSpec) -> Outcome {
    let loaded = load_group(group, cap)?;
    let core = residual_core(&loaded.group, class);
    let value = json!({
        "group_order": loaded.group.order(),
        "class": class,
        "core": core.core.generators(),
        "core_order": core.core.order(),
        "residual": core.is_residual(),
    });
    if core.is_residual() {
        Ok(value)
    } else {
        Err(Failure::Negative(value))
    }
}

fn run(cli: Cli) -> Outcome {
    let cap = cli.cap;
    match cli.command {
        Command::Closed {
            group,
            subgroup,
            class,
            element,
            out,
        } => closed(cap, &group, &subgroup, class, element.as_deref(), out.as_deref()),
        Command::Separate {
            scheme,
            word,
            class,
            out,
        } => separate(cap, &scheme, &word, class, out.as_deref()),
        Command::SeparateFree {
            word,
            class,
            modulus,
            max_degree,
            out,
        } => separate_free(&word, class, modulus, max_degree, out.as_deref()),
        Command::Verify { certificate } => verify(&certificate),
        Command::Axioms { class, max_order } => axioms(cap, class, max_order),
        Command::NormalForm { scheme, word } => normal_form(cap, &scheme, &word),
        Command::Core { group, class } => core(cap, &group, class),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(serde_json::Value::Null) => ExitCode::SUCCESS,
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(value)) => {
            emit(&value);
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
