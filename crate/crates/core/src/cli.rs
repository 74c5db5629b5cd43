//! Command-line front end. [`dispatch`] runs one invocation and returns its
//! exit status and output streams; the binary only prints them.
//!
//! Exit codes: 0 success, 1 domain error (JSON error object on stderr),
//! 2 usage error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{Num, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::logic::{check_proof, godel_sentence_with, justify, prov_bounded_formula, Proof, TheoryConfig};
use crate::numeric::{cantor_pair, cantor_unpair, fib, Nat};
use crate::oracle::{mp_witness, oracle_check, oracle_solve, OracleTriple};
use crate::primecode::compare_sizes;
use crate::seqcode::{concat, is_code, seq_decode, seq_encode, symbol_at, SeqCode, DEFAULT_MATERIALIZE_LIMIT};
use crate::substitution::{diag_with, fixed_point_with, sub_free, sub_z, DiagOptions, SubRequest};
use crate::syntax::random::{formula_of_size, GenConfig};
use crate::syntax::text::{parse_formula_text, parse_syntax_text, parse_term_text};
use crate::syntax::{
    decode_proof, decode_syntax, encode_formula, encode_proof, encode_syntax, encode_term, is_term_code,
    is_wff_code, Alphabet, Formula, Syntax,
};
use crate::zeckendorf::{z_decode, z_encode, ZeckSupport};

/// Default step budget for `prov`.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "zeckgodel", version, about = "Gödel numbering over Zeckendorf representations")]
pub struct Cli {
    /// Alphabet JSON file.
    #[arg(long, global = true)]
    pub alphabet: Option<PathBuf>,
    /// Theory JSON file.
    #[arg(long, global = true)]
    pub theory: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest support index printed as a decimal number.
    #[arg(long, global = true, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
    pub threshold: u64,
    /// Step budget for proof search.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// F_e with F_1 = 1, F_2 = 2.
    Fib { e: u64 },
    /// Cantor pair of x and y.
    Pair { x: String, y: String },
    /// Inverse of `pair`.
    Unpair { p: String },
    /// Zeckendorf supports.
    #[command(subcommand)]
    Zeck(ZeckCmd),
    /// Sequence codes.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Terms and formulas.
    #[command(subcommand)]
    Syntax(SyntaxCmd),
    /// Substitute a term for a variable in a formula.
    Sub(SubArgs),
    /// Diagonalization of a formula.
    Diag(DiagArgs),
    /// Fixed point of a formula in one variable.
    Fixpoint(DiagArgs),
    /// Proof codes.
    #[command(subcommand)]
    Proof(ProofCmd),
    /// Bounded proof search.
    Prov {
        formula: String,
        /// Read the formula as a code literal.
        #[arg(long)]
        code: bool,
    },
    /// The sentence G with ⌜G⌝ = diag(m) for ¬Prov(x).
    Godel,
    /// The Fibonacci sum relation F_n + 2F_m = F_k.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Code sizes and substitution timings under both codings.
    Compare(CompareArgs),
}

#[derive(Subcommand, Debug)]
pub enum ZeckCmd {
    /// Support (`Z[e1,e2,...]` or `e1,e2,...`) to number.
    Encode { support: String },
    /// Number to support.
    Decode { n: String },
}

#[derive(Subcommand, Debug)]
pub enum SeqCmd {
    /// JSON array of naturals to a sequence code.
    Encode { items: String },
    Decode { code: String },
    /// Element at a 1-based position.
    At { code: String, i: String },
    Concat { left: String, right: String },
}

#[derive(Subcommand, Debug)]
pub enum SyntaxCmd {
    /// Parse prefix text and print it canonically.
    Parse { text: String },
    Encode { text: String },
    Decode { code: String },
    /// Classify a code as wff, term, other sequence code, or non-code.
    Check { code: String },
}

#[derive(Args, Debug)]
pub struct SubArgs {
    pub formula: String,
    pub term: String,
    /// Index of the variable replaced.
    #[arg(long, default_value_t = 0)]
    pub var: u64,
    /// Replace free occurrences only.
    #[arg(long)]
    pub free: bool,
    /// Read both arguments as code literals.
    #[arg(long)]
    pub code: bool,
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    pub formula: String,
    #[arg(long, default_value_t = 0)]
    pub var: u64,
    #[arg(long)]
    pub code: bool,
}

#[derive(Subcommand, Debug)]
pub enum ProofCmd {
    /// Check a proof given as a code literal or a file holding a code
    /// literal or a JSON array of formulas.
    Check { input: String },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    Check { n: u64, m: u64, k: u64 },
    Solve { n: u64, m: u64 },
    Mp { n: u64 },
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Length of a random sentence to benchmark.
    #[arg(long, conflicts_with = "formula")]
    pub symbols: Option<usize>,
    /// A specific sentence in prefix text.
    #[arg(long)]
    pub formula: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    alphabet: Alphabet,
    theory: TheoryConfig,
    format: Format,
    threshold: u64,
    bound: usize,
}

/// What a command prints: the JSON document, and the text rendering.
struct Out {
    json: Value,
    text: Option<String>,
}

impl Out {
    fn json(json: Value) -> Self {
        Self { json, text: None }
    }

    fn both(json: Value, text: impl Into<String>) -> Self {
        Self { json, text: Some(text.into()) }
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut obj = json!({ "code": e.code(), "message": e.to_string() });
    if let Some(p) = e.position() {
        obj["position"] = json!(p);
    }
    obj
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let rendered = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { status: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match run(cli) {
        Ok(stdout) => Outcome { status: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { status: 1, stdout: String::new(), stderr: format!("{}\n", error_json(&e)) },
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String> {
    let alphabet = match &cli.alphabet {
        Some(p) => Alphabet::from_json(&read_file(p)?)?,
        None => Alphabet::default(),
    };
    let theory = match &cli.theory {
        Some(p) => TheoryConfig::from_json(&read_file(p)?)?,
        None => TheoryConfig::default(),
    };
    let ctx = Ctx { alphabet, theory, format: cli.format, threshold: cli.threshold, bound: cli.bound };
    let out = execute(&ctx, cli.command)?;
    Ok(match (ctx.format, out.text) {
        (Format::Text, Some(text)) => format!("{text}\n"),
        _ => format!("{}\n", out.json),
    })
}

fn nat(s: &str) -> Result<Nat> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => BigUint::from_str_radix(hex, 16).ok(),
        None if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => s.parse().ok(),
        None => None,
    };
    parsed.ok_or_else(|| Error::Config(format!("not a natural number: {s:?}")))
}

fn index_list(s: &str) -> Result<Vec<BigUint>> {
    let body = s.trim();
    let body = body.strip_prefix("Z[").and_then(|b| b.strip_suffix(']')).unwrap_or(body);
    let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap_or(body);
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(|e| nat(e.trim_matches(|c: char| c.is_whitespace() || c == '"'))).collect()
}

fn json_nat(v: &Value) -> Result<Nat> {
    match v {
        Value::Number(n) => n.as_u64().map(Nat::from).ok_or_else(|| Error::Config(format!("not a natural: {n}"))),
        Value::String(s) => nat(s),
        other => Err(Error::Config(format!("not a natural: {other}"))),
    }
}

/// Decimal, `0x` hex, `Z[e1,...]` support form, or a JSON object with a
/// `support` or `number` field as printed by this tool.
pub fn parse_code_literal(s: &str) -> Result<SeqCode> {
    let s = s.trim();
    if s.starts_with("Z[") {
        return Ok(SeqCode::from_support(ZeckSupport::new(index_list(s)?)?));
    }
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(Value::Array(items)) = v.get("support") {
            let indices = items.iter().map(json_nat).collect::<Result<Vec<_>>>()?;
            return Ok(SeqCode::from_support(ZeckSupport::new(indices)?));
        }
        if let Some(n) = v.get("number") {
            return Ok(SeqCode::from_number(json_nat(n)?));
        }
        return Err(Error::Config("code object needs a support or number field".into()));
    }
    Ok(SeqCode::from_number(nat(s)?))
}

/// JSON array of naturals (numbers or decimal strings).
pub fn parse_sequence_literal(s: &str) -> Result<Vec<Nat>> {
    let v: Value = serde_json::from_str(s.trim()).map_err(|e| Error::Config(format!("sequence literal: {e}")))?;
    match v {
        Value::Array(items) => items.iter().map(json_nat).collect(),
        _ => Err(Error::Config("sequence literal must be a JSON array".into())),
    }
}

fn nat_json(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn support_json(s: &ZeckSupport) -> Value {
    Value::Array(s.indices().iter().map(nat_json).collect())
}

impl Ctx {
    /// Support plus the decimal value when the largest index is at most
    /// the threshold, otherwise a bit estimate.
    fn code_json(&self, c: &SeqCode) -> Result<Value> {
        if c.is_materializable(self.threshold) {
            Ok(json!({ "support": support_json(c.support()), "number": c.to_number_with_limit(self.threshold)?.to_string() }))
        } else {
            Ok(Self::support_form(c))
        }
    }

    fn support_form(c: &SeqCode) -> Value {
        json!({ "support": support_json(c.support()), "bits_estimate": c.bits_estimate().to_string() })
    }

    fn code_out(&self, c: &SeqCode) -> Result<Out> {
        let v = self.code_json(c)?;
        Ok(Out::both(v.clone(), v.to_string()))
    }

    fn formula_input(&self, s: &str, as_code: bool) -> Result<Formula> {
        if as_code {
            crate::syntax::decode_formula(&parse_code_literal(s)?, &self.alphabet)
        } else {
            parse_formula_text(s)
        }
    }

    fn proof_steps_json(&self, p: &Proof) -> Value {
        Value::Array(
            p.steps
                .iter()
                .map(|s| json!({ "formula": s.formula.to_string(), "justification": s.justification.to_string() }))
                .collect(),
        )
    }
}

fn proof_text(p: &Proof) -> String {
    p.steps
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{i}. {}  [{}]", s.formula, s.justification))
        .collect::<Vec<_>>()
        .join("\n")
}

fn proof_input(ctx: &Ctx, input: &str) -> Result<SeqCode> {
    let path = Path::new(input);
    let text = if path.is_file() { read_file(path)? } else { input.to_string() };
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let items: Vec<String> = serde_json::from_str(trimmed).map_err(|e| Error::Config(format!("proof file: {e}")))?;
        let formulas = items.iter().map(|s| parse_formula_text(s)).collect::<Result<Vec<_>>>()?;
        return encode_proof(&formulas, &ctx.alphabet);
    }
    parse_code_literal(trimmed)
}

fn execute(ctx: &Ctx, command: Command) -> Result<Out> {
    let a = &ctx.alphabet;
    match command {
        Command::Fib { e } => {
            let v = fib(e)?;
            Ok(Out::both(json!({ "index": e, "value": v.to_string() }), v.to_string()))
        }
        Command::Pair { x, y } => {
            let p = cantor_pair(&nat(&x)?, &nat(&y)?);
            Ok(Out::both(json!({ "pair": p.to_string() }), p.to_string()))
        }
        Command::Unpair { p } => {
            let (x, y) = cantor_unpair(&nat(&p)?);
            Ok(Out::both(json!({ "x": x.to_string(), "y": y.to_string() }), format!("{x} {y}")))
        }
        Command::Zeck(ZeckCmd::Encode { support }) => {
            let n = z_encode(&ZeckSupport::new(index_list(&support)?)?)?;
            Ok(Out::both(json!({ "number": n.to_string() }), n.to_string()))
        }
        Command::Zeck(ZeckCmd::Decode { n }) => {
            let s = z_decode(&nat(&n)?);
            Ok(Out::both(json!({ "support": support_json(&s) }), s.to_string()))
        }
        Command::Seq(SeqCmd::Encode { items }) => ctx.code_out(&seq_encode(&parse_sequence_literal(&items)?)),
        Command::Seq(SeqCmd::Decode { code }) => {
            let items = seq_decode(&parse_code_literal(&code)?)?;
            let arr = Value::Array(items.iter().map(nat_json).collect());
            Ok(Out::both(json!({ "items": arr.clone(), "length": items.len() }), arr.to_string()))
        }
        Command::Seq(SeqCmd::At { code, i }) => {
            let v = symbol_at(&parse_code_literal(&code)?, &nat(&i)?);
            Ok(Out::both(json!({ "value": v.to_string() }), v.to_string()))
        }
        Command::Seq(SeqCmd::Concat { left, right }) => {
            ctx.code_out(&concat(&parse_code_literal(&left)?, &parse_code_literal(&right)?)?)
        }
        Command::Syntax(SyntaxCmd::Parse { text }) => {
            let x = parse_syntax_text(&text)?;
            let category = match x {
                Syntax::Term(_) => "term",
                Syntax::Formula(_) => "formula",
            };
            let symbols: Vec<String> = x.symbols().iter().map(ToString::to_string).collect();
            Ok(Out::both(
                json!({ "category": category, "text": x.to_string(), "symbols": symbols }),
                x.to_string(),
            ))
        }
        Command::Syntax(SyntaxCmd::Encode { text }) => ctx.code_out(&encode_syntax(&parse_syntax_text(&text)?, a)),
        Command::Syntax(SyntaxCmd::Decode { code }) => {
            let x = decode_syntax(&parse_code_literal(&code)?, a)?;
            let category = if matches!(x, Syntax::Term(_)) { "term" } else { "formula" };
            Ok(Out::both(json!({ "category": category, "text": x.to_string() }), x.to_string()))
        }
        Command::Syntax(SyntaxCmd::Check { code }) => {
            let c = parse_code_literal(&code)?;
            let (code_ok, wff, term) = (is_code(&c), is_wff_code(&c, a), is_term_code(&c, a));
            let class = if wff {
                "wff"
            } else if term {
                "term"
            } else if code_ok {
                "code"
            } else {
                "not a code"
            };
            Ok(Out::both(json!({ "is_code": code_ok, "is_wff": wff, "is_term": term }), class))
        }
        Command::Sub(args) => {
            let (fc, tc) = if args.code {
                (parse_code_literal(&args.formula)?, parse_code_literal(&args.term)?)
            } else {
                (encode_formula(&parse_formula_text(&args.formula)?, a), encode_term(&parse_term_text(&args.term)?, a))
            };
            let req = SubRequest::new(fc, tc).with_var(args.var);
            let out = if args.free { sub_free(&req, a)? } else { sub_z(&req, a)? };
            let text = crate::syntax::decode_formula(&out, a).ok().map(|f| f.to_string());
            let code = ctx.code_json(&out)?;
            let rendered = text.clone().unwrap_or_else(|| code.to_string());
            Ok(Out::both(json!({ "code": code, "text": text }), rendered))
        }
        Command::Diag(args) => {
            let f = ctx.formula_input(&args.formula, args.code)?;
            let opts = DiagOptions { target_var: args.var, ..DiagOptions::default() };
            let d = diag_with(&encode_formula(&f, a), a, &opts)?;
            let v = json!({ "code": Ctx::support_form(&d), "length": crate::seqcode::len(&d) });
            Ok(Out::json(v))
        }
        Command::Fixpoint(args) => {
            let f = ctx.formula_input(&args.formula, args.code)?;
            let opts = DiagOptions { target_var: args.var, ..DiagOptions::default() };
            let fp = fixed_point_with(&encode_formula(&f, a), a, &opts)?;
            let holds = fp.psi == diag_with(&fp.m, a, &opts)?;
            Ok(Out::json(json!({
                "psi": Ctx::support_form(&fp.psi),
                "m": ctx.code_json(&fp.m)?,
                "theta": fp.theta.to_string(),
                "occurrences": fp.occurrences,
                "numeral_length": fp.numeral_len,
                "length": crate::seqcode::len(&fp.psi),
                "identity_holds": holds,
            })))
        }
        Command::Proof(ProofCmd::Check { input }) => {
            let code = proof_input(ctx, &input)?;
            let valid = check_proof(&code, &ctx.theory, a);
            let steps = if valid {
                decode_proof(&code, a).ok().and_then(|fs| justify(&fs, &ctx.theory)).map(|p| ctx.proof_steps_json(&p))
            } else {
                None
            };
            Ok(Out::both(json!({ "valid": valid, "steps": steps }), valid.to_string()))
        }
        Command::Prov { formula, code } => {
            let f = ctx.formula_input(&formula, code)?;
            match prov_bounded_formula(&f, ctx.bound, &ctx.theory, a) {
                Some(p) => {
                    let pc = p.encode(a)?;
                    Ok(Out::both(
                        json!({ "found": true, "steps": ctx.proof_steps_json(&p), "code": Ctx::support_form(&pc) }),
                        proof_text(&p),
                    ))
                }
                None => Ok(Out::both(json!({ "found": false, "bound": ctx.bound }), "none")),
            }
        }
        Command::Godel => {
            let fp = godel_sentence_with(&ctx.theory, a, &DiagOptions::default())?;
            let holds = fp.psi == diag_with(&fp.m, a, &DiagOptions::default())?;
            Ok(Out::json(json!({
                "g": Ctx::support_form(&fp.psi),
                "m": ctx.code_json(&fp.m)?,
                "theta": fp.theta.to_string(),
                "length": crate::seqcode::len(&fp.psi),
                "numeral_length": fp.numeral_len,
                "max_index": fp.psi.max_index().map(nat_json),
                "identity_holds": holds,
            })))
        }
        Command::Oracle(OracleCmd::Check { n, m, k }) => {
            let ok = oracle_check(&OracleTriple::new(n, m, k)?);
            Ok(Out::both(json!({ "holds": ok }), ok.to_string()))
        }
        Command::Oracle(OracleCmd::Solve { n, m }) => {
            let k = oracle_solve(n, m)?;
            let text = k.map_or_else(|| "none".to_string(), |k| k.to_string());
            Ok(Out::both(json!({ "k": k }), text))
        }
        Command::Oracle(OracleCmd::Mp { n }) => {
            let t = mp_witness(n)?;
            Ok(Out::both(json!({ "n": t.n, "m": t.m, "k": t.k }), format!("{} {} {}", t.n, t.m, t.k)))
        }
        Command::Compare(args) => {
            let formula = match (&args.formula, args.symbols) {
                (Some(text), _) => parse_formula_text(text)?,
                (None, symbols) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    formula_of_size(&mut rng, symbols.unwrap_or(50), &GenConfig::default())
                }
            };
            let seq = a.codes(&formula.symbols());
            let report = compare_sizes(&seq, a)?;
            let v = serde_json::to_value(&report).expect("report serializes");
            if let Some(path) = &args.json {
                std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            }
            Ok(Out::json(v))
        }
    }
}
