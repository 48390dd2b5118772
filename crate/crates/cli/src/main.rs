use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use linmonad::io::{FormatError, MonadDocument, TableDocument};
use linmonad::monad::{chern_total, FloystadReport};
use linmonad::scalar::SUPPORTED_PRIMES;
use linmonad::{
    cohomology_table, floystad_exists, gallery, h_p, instanton_check, nullcorrelation, random_monad, stability_probe,
    with_scalar, Error, FieldTag, LinearMonad, Matrix, Scalar, GALLERY,
};
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "linmonad", version, about = "Exact computations with linear monads on projective space")]
struct Cli {
    /// Emit one JSON document on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check beta*alpha = 0, surjectivity of beta and generic injectivity of alpha.
    Validate(Input),
    /// Degeneration locus and sheaf class.
    Classify(Input),
    /// Total Chern class of the cohomology sheaf.
    Chern(Input),
    /// Euler characteristics chi(E(k)) over a window.
    Euler(Windowed),
    /// Table of h^p(E(k)).
    Cohomology(CohomologyArgs),
    /// Instanton conditions.
    Instanton(Input),
    /// Sections of E and E* and what they say about stability.
    ProbeStability(Input),
    /// Whether a linear monad of the given shape exists.
    Exists(Shape),
    /// Seeded random monad of the given shape.
    Random(RandomArgs),
    /// Nullcorrelation monad from an antisymmetric matrix.
    Nullcorrelation(NullcorrelationArgs),
    /// List the built-in examples, or print one.
    Gallery(GalleryArgs),
    /// Restrict to the hyperplane x_i = 0.
    Restrict(RestrictArgs),
    /// Dual monad.
    Dual(Output),
    /// Direct sum of two monads.
    Sum(SumArgs),
}

#[derive(Args)]
struct Input {
    /// Monad JSON file, or gallery:<name>.
    input: String,
}

#[derive(Args)]
struct Output {
    #[command(flatten)]
    input: Input,
    /// Also write the resulting monad JSON here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Window {
    #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
    kmin: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 3)]
    kmax: i64,
}

#[derive(Args)]
struct Windowed {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    window: Window,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    window: Window,
    /// Only this cohomological degree.
    #[arg(short, long)]
    p: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct Shape {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    v: usize,
    #[arg(short)]
    w: usize,
    #[arg(short)]
    u: usize,
}

#[derive(Args)]
struct RandomArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 50)]
    max_tries: usize,
    /// Q or F<p>, e.g. F101.
    #[arg(long, default_value = "F101")]
    field: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NullcorrelationArgs {
    #[arg(short)]
    n: usize,
    /// Rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
    matrix: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GalleryArgs {
    name: Option<String>,
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RestrictArgs {
    #[command(flatten)]
    out: Output,
    /// Index of the coordinate set to zero.
    #[arg(long)]
    index: usize,
}

#[derive(Args)]
struct SumArgs {
    first: String,
    second: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// What a command produced: text for humans, a JSON value, and an exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
    /// Monad to write with `--output`.
    monad_json: Option<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0, monad_json: None }
    }

    fn monad<F: Scalar>(m: &LinearMonad<F>, header: String) -> Self {
        let doc = MonadDocument::from_monad(m);
        let text = format!("{header}\nalpha ({} x {}):\n{}beta ({} x {}):\n{}", m.w(), m.v(), m.alpha(), m.u(), m.w(), m.beta());
        Report { text, json: serde_json::to_value(&doc).expect("document serializes"), code: 0, monad_json: Some(doc.to_json()) }
    }
}

fn parse_field(s: &str) -> anyhow::Result<FieldTag> {
    if s == "Q" {
        return Ok(FieldTag::Q);
    }
    let p: u64 = s
        .strip_prefix('F')
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| anyhow!("field must be Q or F<p>, got {s:?}"))?;
    if !SUPPORTED_PRIMES.contains(&p) {
        bail!("unsupported prime {p}; supported: {SUPPORTED_PRIMES:?}");
    }
    Ok(FieldTag::Fp { p })
}

/// Reads a monad document; `gallery:<name>` yields the item over Q.
fn load(spec: &str) -> anyhow::Result<MonadDocument> {
    if let Some(name) = spec.strip_prefix("gallery:") {
        let m = gallery::<linmonad::Rational>(name)?;
        return Ok(MonadDocument::from_monad(&m));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("cannot read {spec}"))?;
    MonadDocument::parse(&text).with_context(|| format!("cannot parse {spec}"))
}

fn to_monad<F: Scalar>(doc: &MonadDocument) -> anyhow::Result<LinearMonad<F>> {
    // unwrap core errors so the exit code logic can see them
    doc.to_monad::<F>().map_err(|e| match e {
        FormatError::Monad(e) => e.into(),
        e => e.into(),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate<F: Scalar>(m: &LinearMonad<F>) -> Report {
    let r = m.validate();
    let text = format!("{}\n{r}", if r.is_valid() { "valid" } else { "invalid" });
    let json = json!({
        "valid": r.is_valid(),
        "complex": r.complex_ok,
        "beta_surjective": r.beta_surjective,
        "alpha_generically_injective": r.alpha_generically_injective,
    });
    Report { code: if r.is_valid() { 0 } else { 2 }, ..Report::ok(text, json) }
}

fn classify<F: Scalar>(m: &LinearMonad<F>) -> anyhow::Result<Report> {
    let c = m.classify()?;
    let codim = c.codim.map_or("empty".to_string(), |c| c.to_string());
    let text = format!(
        "class: {}\ndegeneration locus: {}\ncodimension: {codim}\nHilbert polynomial: {}\nrank {}, c1 {}",
        c.class, c.locus, c.locus_hilbert, c.rank, c.c1
    );
    let json = json!({
        "class": c.class.as_str(),
        "codim": c.codim,
        "projective_dim": c.locus.projective_dim,
        "length": c.locus.length,
        "hilbert_polynomial": c.locus_hilbert.to_string(),
        "rank": c.rank,
        "c1": c.c1,
        "minors": c.ideal.len(),
    });
    Ok(Report::ok(text, json))
}

fn chern<F: Scalar>(m: &LinearMonad<F>) -> Report {
    let c = chern_total(m.n(), m.v(), m.u());
    Report::ok(format!("c(E) = {c}"), json!({ "coeffs": c.coeffs, "display": c.to_string() }))
}

fn check_window(w: &Window) -> anyhow::Result<()> {
    if w.kmin > w.kmax {
        return Err(Error::EmptyWindow { k_min: w.kmin, k_max: w.kmax }.into());
    }
    Ok(())
}

fn euler<F: Scalar>(m: &LinearMonad<F>, w: &Window) -> anyhow::Result<Report> {
    check_window(w)?;
    let chi: Vec<i64> = (w.kmin..=w.kmax).map(|k| m.euler_characteristic(k)).collect();
    let text = (w.kmin..=w.kmax).zip(&chi).map(|(k, c)| format!("chi(E({k})) = {c}")).collect::<Vec<_>>().join("\n");
    Ok(Report::ok(text, json!({ "k_min": w.kmin, "k_max": w.kmax, "chi": chi })))
}

fn cohomology<F: Scalar>(m: &LinearMonad<F>, w: &Window, p: Option<usize>) -> anyhow::Result<Report> {
    if let Some(p) = p {
        check_window(w)?;
        let values = (w.kmin..=w.kmax).map(|k| h_p(m, p, k)).collect::<Result<Vec<_>, _>>()?;
        let text = (w.kmin..=w.kmax).zip(&values).map(|(k, h)| format!("h^{p}(E({k})) = {h}")).collect::<Vec<_>>().join("\n");
        return Ok(Report::ok(text, json!({ "p": p, "k_min": w.kmin, "k_max": w.kmax, "h": values })));
    }
    let t = cohomology_table(m, w.kmin, w.kmax)?;
    let json = serde_json::to_value(TableDocument::from(&t))?;
    Ok(Report::ok(t.to_string().trim_end().to_string(), json))
}

fn instanton<F: Scalar>(m: &LinearMonad<F>) -> anyhow::Result<Report> {
    let r = instanton_check(m)?;
    let mut text = format!(
        "instanton: {}\ncharge {}, rank {}, c1 {}, {}",
        yes_no(r.is_instanton_candidate),
        r.charge,
        r.rank,
        r.c1,
        r.class
    );
    for (p, k, h) in &r.checked {
        text.push_str(&format!("\nh^{p}(E({k})) = {h}"));
    }
    for f in &r.failures {
        text.push_str(&format!("\nfailure: {f}"));
    }
    let json = json!({
        "instanton": r.is_instanton_candidate,
        "charge": r.charge,
        "rank": r.rank,
        "c1": r.c1,
        "class": r.class.as_str(),
        "checked": r.checked.iter().map(|(p, k, h)| json!({ "p": p, "k": k, "h": h })).collect::<Vec<_>>(),
        "middle_degrees_structural": r.middle_degrees_structural,
        "failures": r.failures.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Report::ok(text, json))
}

fn verdict(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn probe<F: Scalar>(m: &LinearMonad<F>) -> anyhow::Result<Report> {
    let s = stability_probe(m)?;
    let opt = |x: Option<usize>| x.map_or("not computed".to_string(), |x| x.to_string());
    let mut text = format!(
        "h^0(E(-1)) = {}\nh^0(E) = {} (at least {})\nh^0(E*(-1)) = {}\nh^0(E*) = {}\nsemistable: {}\nstable: {}",
        s.h0_e_minus1,
        s.h0_e,
        s.lower_bound_h0,
        opt(s.h0_dual_minus1),
        opt(s.h0_dual),
        verdict(s.semistable),
        verdict(s.stable)
    );
    for c in &s.caveats {
        text.push_str(&format!("\nnote: {c}"));
    }
    let json = json!({
        "h0_e_minus1": s.h0_e_minus1,
        "h0_e": s.h0_e,
        "h0_dual_minus1": s.h0_dual_minus1,
        "h0_dual": s.h0_dual,
        "lower_bound_h0": s.lower_bound_h0,
        "class": s.class.as_str(),
        "rank": s.rank,
        "instanton": s.instanton,
        "charge": s.charge,
        "stability_excluded": s.stability_excluded,
        "semistable": s.semistable,
        "stable": s.stable,
        "caveats": s.caveats,
    });
    Ok(Report::ok(text, json))
}

fn exists(s: Shape) -> Report {
    let FloystadReport { condition_i, condition_ii, exists, expected_codim } = floystad_exists(s.n, s.v, s.w, s.u);
    let mut text = yes_no(exists).to_string();
    if exists {
        let codim = expected_codim.map_or("empty".to_string(), |c| c.to_string());
        text.push_str(&format!("\nexpected degeneration codimension: {codim}"));
    }
    let json = json!({
        "exists": exists,
        "condition_i": condition_i,
        "condition_ii": condition_ii,
        "expected_codim": if exists { expected_codim } else { None },
    });
    Report::ok(text, json)
}

fn parse_matrix<F: Scalar>(s: &str) -> anyhow::Result<Matrix<F>> {
    let rows = s
        .split(';')
        .map(|r| r.split(',').map(|x| F::parse(x.trim())).collect::<Result<Vec<F>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        bail!("--matrix must be square");
    }
    Ok(Matrix::from_rows(rows))
}

fn nullcorrelation_cmd<F: Scalar>(a: &NullcorrelationArgs) -> anyhow::Result<Report> {
    let matrix = match (&a.matrix, a.seed) {
        (Some(text), _) => parse_matrix::<F>(text)?,
        (None, Some(seed)) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            linmonad::monad::random_antisymmetric::<F, _>(a.n, &mut rng)
        }
        (None, None) => bail!("nullcorrelation needs --matrix or --seed"),
    };
    let m = nullcorrelation(a.n, &matrix)?;
    Ok(Report::monad(&m, format!("nullcorrelation monad on P^{} over {}", a.n, F::field())))
}

fn describe<F: Scalar>(m: &LinearMonad<F>) -> String {
    format!("monad on P^{} over {}: v = {}, w = {}, u = {}, rank {}", m.n(), m.field(), m.v(), m.w(), m.u(), m.rank())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let field_of = |doc: &MonadDocument| doc.field;
    macro_rules! on_input {
        ($spec:expr, |$m:ident: $S:ident| $body:expr) => {{
            let doc = load($spec)?;
            with_scalar!(field_of(&doc), $S => {
                let $m = to_monad::<$S>(&doc)?;
                $body
            })?
        }};
    }
    Ok(match &cli.command {
        Command::Validate(i) => on_input!(&i.input, |m: S| validate(&m)),
        Command::Classify(i) => on_input!(&i.input, |m: S| classify(&m)?),
        Command::Chern(i) => on_input!(&i.input, |m: S| chern(&m)),
        Command::Euler(a) => on_input!(&a.input.input, |m: S| euler(&m, &a.window)?),
        Command::Cohomology(a) => on_input!(&a.input.input, |m: S| cohomology(&m, &a.window, a.p)?),
        Command::Instanton(i) => on_input!(&i.input, |m: S| instanton(&m)?),
        Command::ProbeStability(i) => on_input!(&i.input, |m: S| probe(&m)?),
        Command::Exists(s) => exists(*s),
        Command::Random(a) => {
            let seed = a.seed.ok_or_else(|| anyhow!("random requires --seed"))?;
            let Shape { n, v, w, u } = a.shape;
            let mut r = with_scalar!(parse_field(&a.field)?, S => {
                let m = random_monad::<S>(n, v, w, u, seed, a.max_tries)?;
                Report::monad(&m, describe(&m))
            })?;
            write_output(&mut r, a.output.as_ref())?;
            r
        }
        Command::Nullcorrelation(a) => {
            let mut r = with_scalar!(parse_field(&a.field)?, S => nullcorrelation_cmd::<S>(a)?)?;
            write_output(&mut r, a.output.as_ref())?;
            r
        }
        Command::Gallery(a) => match &a.name {
            None => Report::ok(GALLERY.join("\n"), json!(GALLERY)),
            Some(name) => {
                let mut r = with_scalar!(parse_field(&a.field)?, S => {
                    let m = gallery::<S>(name)?;
                    Report::monad(&m, describe(&m))
                })?;
                write_output(&mut r, a.output.as_ref())?;
                r
            }
        },
        Command::Restrict(a) => {
            let index = a.index;
            let mut r = on_input!(&a.out.input.input, |m: S| match m.restrict_hyperplane(index) {
                Ok((restricted, _)) => Report::monad(&restricted, format!("restriction to x{index} = 0, {}", describe(&restricted))),
                Err(Error::InvalidRestriction { index, report }) => Report {
                    code: 2,
                    ..Report::ok(
                        format!("restriction to x{index} = 0 is not a valid monad\n{report}"),
                        json!({
                            "valid": false,
                            "index": index,
                            "complex": report.complex_ok,
                            "beta_surjective": report.beta_surjective,
                            "alpha_generically_injective": report.alpha_generically_injective,
                        }),
                    )
                },
                Err(e) => return Err(e.into()),
            });
            write_output(&mut r, a.out.output.as_ref())?;
            r
        }
        Command::Dual(a) => {
            let mut r = on_input!(&a.input.input, |m: S| {
                let d = m.dual_report()?;
                let note = if d.represents_dual { "" } else { "\nnote: E is not locally free; this monad need not represent E*" };
                let mut r = Report::monad(&d.monad, describe(&d.monad));
                r.text.push_str(note);
                r
            });
            write_output(&mut r, a.output.as_ref())?;
            r
        }
        Command::Sum(a) => {
            let first = load(&a.first)?;
            let second = load(&a.second)?;
            if first.field != second.field {
                bail!("summands are over {} and {}", first.field, second.field);
            }
            let mut r = with_scalar!(first.field, S => {
                let s = to_monad::<S>(&first)?.direct_sum(&to_monad::<S>(&second)?)?;
                Report::monad(&s, describe(&s))
            })?;
            write_output(&mut r, a.output.as_ref())?;
            r
        }
    })
}

fn write_output(r: &mut Report, path: Option<&PathBuf>) -> anyhow::Result<()> {
    if let (Some(path), Some(doc)) = (path, &r.monad_json) {
        fs::write(path, doc).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                println!("{}", r.text.trim_end());
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            let invalid = matches!(e.downcast_ref::<Error>(), Some(Error::InvalidMonad(_) | Error::InvalidRestriction { .. }));
            eprintln!("error: {e:#}");
            ExitCode::from(if invalid { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), FieldTag::Q);
        assert_eq!(parse_field("F101").unwrap(), FieldTag::Fp { p: 101 });
        assert!(parse_field("F100").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn matrices() {
        let a = parse_matrix::<linmonad::Rational>("0,1;-1,0").unwrap();
        assert_eq!(a.rows(), 2);
        assert!(parse_matrix::<linmonad::Rational>("0,1;-1").is_err());
    }
}
