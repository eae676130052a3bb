use std::error::Error as StdError;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use intform_core::combinatorics::{LabelConfig, LabelMode, Multiset};
use intform_core::forms::{enumerate_basis, FormEngine, Reading};
use intform_core::identities::{run_check, CheckName, CheckReport, CheckSpec, Checker};
use intform_core::pbw::{Algebra, Element, ElementTermJson, PresetKind, Sign};
use intform_core::Error;

use crate::{CheckArgs, Cli, Command, EvalArgs, Format, Mode, Object};

type Res<T> = Result<T, Box<dyn StdError>>;

/// Resolved configuration for one invocation, echoed into every output.
struct Session {
    algebra: Option<PresetKind>,
    labels: LabelConfig,
    format: Format,
    jobs: usize,
    seed: u64,
}

impl Session {
    fn resolve(cli: &Cli, file_config: Option<&Value>) -> Res<Self> {
        let s = &cli.session;
        let from_file = |key: &str| file_config.and_then(|c| c.get(key));
        let algebra = match (s.algebra, from_file("algebra").and_then(Value::as_str)) {
            (Some(k), _) => Some(k),
            (None, Some(name)) => name.parse().ok(),
            (None, None) => None,
        };
        let vars = s
            .vars
            .or_else(|| {
                from_file("variables")
                    .and_then(Value::as_u64)
                    .map(|v| v as u32)
            })
            .unwrap_or(1);
        let mode = s
            .mode
            .or_else(|| match from_file("mode").and_then(Value::as_str) {
                Some("laurent") => Some(Mode::Laurent),
                Some("polynomial") => Some(Mode::Polynomial),
                _ => None,
            })
            .unwrap_or(Mode::Polynomial);
        let mode = match mode {
            Mode::Polynomial => LabelMode::Polynomial,
            Mode::Laurent => LabelMode::Laurent,
        };
        Ok(Session {
            algebra,
            labels: LabelConfig::new(vars as usize, mode)?,
            format: s.format,
            jobs: s.jobs,
            seed: s.seed,
        })
    }

    fn kind(&self) -> PresetKind {
        self.algebra.unwrap_or(PresetKind::Sl2)
    }

    fn echo(&self) -> Value {
        json!({
            "algebra": self.algebra.map_or("per-check".to_string(), |k| k.name().to_string()),
            "variables": self.labels.vars,
            "mode": self.labels.mode,
            "outputFormat": match self.format { Format::Text => "text", Format::Json => "json" },
            "jobs": self.jobs,
            "seed": self.seed,
        })
    }

    fn echo_for(&self, kind: PresetKind) -> Value {
        let mut v = self.echo();
        v["algebra"] = json!(kind.name());
        v
    }

    fn header(&self, algebra: &str) -> String {
        let mode = match self.labels.mode {
            LabelMode::Polynomial => "polynomial",
            LabelMode::Laurent => "laurent",
        };
        format!(
            "# algebra={algebra} variables={} mode={mode} jobs={} seed={}",
            self.labels.vars, self.jobs, self.seed
        )
    }

    fn engine(&self) -> Res<FormEngine> {
        let alg = Algebra::new(self.kind(), self.labels)?;
        Ok(FormEngine::new(Arc::new(alg))?)
    }
}

pub fn run(cli: &Cli) -> Res<ExitCode> {
    match &cli.command {
        Command::Eval(args) => eval(&Session::resolve(cli, None)?, args),
        Command::Straighten { file } => straighten(cli, file),
        Command::Reduce { file } => reduce(cli, file),
        Command::Basis {
            max_degree,
            max_label_degree,
        } => basis(
            &Session::resolve(cli, None)?,
            *max_degree,
            *max_label_degree,
        ),
        Command::Check(args) => check(&Session::resolve(cli, None)?, args),
    }
}

fn emit(line: &str) -> Res<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    Ok(())
}

fn emit_json(v: &Value) -> Res<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

/// A multiset given inline (`{[1]:2}`) or as JSON pairs (`[[[1], 2]]`).
fn multiset_value(v: &Value, labels: &LabelConfig) -> Res<Multiset> {
    let m = match v {
        Value::String(s) => Multiset::parse_inline(s, labels)?,
        other => serde_json::from_value(other.clone())?,
    };
    for a in m.support() {
        labels.validate(a)?;
    }
    Ok(m)
}

fn eval(session: &Session, args: &EvalArgs) -> Res<ExitCode> {
    let json_args: Map<String, Value> = match &args.args {
        Some(src) => serde_json::from_str(src).map_err(|e| Error::Parse {
            pos: e.column().saturating_sub(1),
            msg: e.to_string(),
        })?,
        None => Map::new(),
    };
    let get = |name: &str, flag: &Option<String>| -> Res<Option<Multiset>> {
        match (flag, json_args.get(name)) {
            (Some(s), _) => Ok(Some(Multiset::parse_inline(s, &session.labels)?)),
            (None, Some(v)) => Ok(Some(multiset_value(v, &session.labels)?)),
            (None, None) => Ok(None),
        }
    };
    let need = |name: &str, flag: &Option<String>| -> Res<Multiset> {
        get(name, flag)?.ok_or_else(|| Error::Arity(format!("missing argument --{name}")).into())
    };
    let sign = match (args.sign, json_args.get("sign").and_then(Value::as_str)) {
        (Some(s), _) => Some(s),
        (None, Some(s)) => Some(s.parse::<Sign>()?),
        (None, None) => None,
    };
    let need_sign = || {
        sign.ok_or_else(|| {
            Box::<dyn StdError>::from(Error::Arity("missing argument --sign".into()))
        })
    };
    let root = args
        .root
        .or_else(|| {
            json_args
                .get("root")
                .and_then(Value::as_u64)
                .map(|r| r as usize)
        })
        .unwrap_or(0);

    let f = session.engine()?;
    let mut echo_args = Map::new();
    let mut note = |k: &str, m: &Multiset| {
        echo_args.insert(k.into(), json!(m.to_string()));
    };
    let element: Element = match args.object {
        Object::P => {
            let chi = need("chi", &args.chi)?;
            note("chi", &chi);
            match get("phi", &args.phi)? {
                Some(phi) => {
                    note("phi", &phi);
                    f.p_alpha_pair(root, &phi, &chi)?
                }
                None => f.p_alpha(root, &chi)?,
            }
        }
        Object::D | Object::Bbd => {
            let (p1, p2, p3) = (
                need("psi1", &args.psi1)?,
                need("psi2", &args.psi2)?,
                need("psi3", &args.psi3)?,
            );
            note("psi1", &p1);
            note("psi2", &p2);
            note("psi3", &p3);
            if args.object == Object::D {
                let s = need_sign()?;
                echo_args.insert("sign".into(), json!(s));
                f.d_alpha(s, root, &p1, &p2, &p3)?
            } else {
                f.bbd_alpha(root, &p1, &p2, &p3)?
            }
        }
        Object::Xpow => {
            let psi = need("psi", &args.psi)?;
            note("psi", &psi);
            let s = need_sign()?;
            echo_args.insert("sign".into(), json!(s));
            f.x_power(s, root, &psi)?
        }
    };
    echo_args.insert("root".into(), json!(root));
    let object = match args.object {
        Object::P => "p",
        Object::D => "D",
        Object::Bbd => "bbD",
        Object::Xpow => "xpow",
    };
    let alg = f.algebra();
    match session.format {
        Format::Text => {
            emit(&session.header(alg.kind().name()))?;
            emit(&alg.render(&element))?;
        }
        Format::Json => emit_json(&json!({
            "config": session.echo_for(alg.kind()),
            "object": object,
            "args": echo_args,
            "rendered": alg.render(&element),
            "element": element.to_json(),
        }))?,
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads a term list, or an object holding one under `element`, plus any
/// configuration echo the file carries.
fn read_element_file(path: &Path) -> Res<(Vec<ElementTermJson>, Option<Value>)> {
    let src = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&src).map_err(|e| Error::Parse {
        pos: e.column().saturating_sub(1),
        msg: format!("{}: {e}", path.display()),
    })?;
    let (terms, config) = match v {
        Value::Array(_) => (v, None),
        Value::Object(mut o) => {
            let terms = o.remove("element").ok_or_else(|| {
                Error::Config("expected a term list or an object with `element`".into())
            })?;
            (terms, o.remove("config"))
        }
        _ => {
            return Err(
                Error::Config("expected a term list or an object with `element`".into()).into(),
            )
        }
    };
    let terms = serde_json::from_value(terms)
        .map_err(|e| Error::Config(format!("malformed element: {e}")))?;
    Ok((terms, config))
}

fn load(cli: &Cli, path: &Path) -> Res<(Session, FormEngine, Element)> {
    let (terms, config) = read_element_file(path)?;
    let session = Session::resolve(cli, config.as_ref())?;
    let f = session.engine()?;
    let e = f.algebra().from_json(&terms)?;
    Ok((session, f, e))
}

fn straighten(cli: &Cli, path: &Path) -> Res<ExitCode> {
    let (session, f, e) = load(cli, path)?;
    let alg = f.algebra();
    match session.format {
        Format::Text => {
            emit(&session.header(alg.kind().name()))?;
            emit(&alg.render(&e))?;
        }
        Format::Json => emit_json(&json!({
            "config": session.echo_for(alg.kind()),
            "rendered": alg.render(&e),
            "element": e.to_json(),
        }))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce(cli: &Cli, path: &Path) -> Res<ExitCode> {
    let (session, f, e) = load(cli, path)?;
    let r = f.reduce_to_basis(&e)?;
    let alg = f.algebra();
    match session.format {
        Format::Text => {
            emit(&session.header(alg.kind().name()))?;
            for (idx, c) in &r.terms {
                emit(&format!("{c:>8}  {idx}"))?;
            }
            emit(&format!("terms: {}", r.terms.len()))?;
            emit(&format!("integral: {}", r.integral))?;
            emit(&format!("residual: {}", alg.render(&r.residual)))?;
        }
        Format::Json => {
            let mut v = serde_json::to_value(&r)?;
            v["config"] = session.echo_for(alg.kind());
            v["residual"] = serde_json::to_value(r.residual.to_json())?;
            emit_json(&v)?;
        }
    }
    Ok(if r.residual.is_zero() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn basis(session: &Session, max_degree: u32, max_label_degree: u32) -> Res<ExitCode> {
    let alg = Algebra::new(session.kind(), session.labels)?;
    let list: Vec<_> =
        enumerate_basis(alg.preset(), alg.labels(), max_degree, max_label_degree).collect();
    match session.format {
        Format::Text => {
            emit(&session.header(alg.kind().name()))?;
            for idx in &list {
                emit(&idx.to_string())?;
            }
            emit(&format!("count: {}", list.len()))?;
        }
        Format::Json => emit_json(&json!({
            "config": session.echo_for(alg.kind()),
            "maxDegree": max_degree,
            "maxLabelDegree": max_label_degree,
            "basis": list,
            "count": list.len(),
        }))?,
    }
    Ok(ExitCode::SUCCESS)
}

/// Builds and validates every spec before anything runs, so usage errors
/// exit early with code 2.
fn check_specs(session: &Session, args: &CheckArgs) -> Res<Vec<CheckSpec>> {
    let mut names = Vec::new();
    for n in &args.names {
        if n.eq_ignore_ascii_case("all") {
            names.extend(CheckName::ALL);
        } else {
            names.push(n.parse::<CheckName>()?);
        }
    }
    let mut seen = std::collections::HashSet::new();
    names.retain(|n| seen.insert(*n));

    let mut specs = Vec::new();
    for name in names {
        let mut spec = CheckSpec::for_profile(name, args.profile, &session.labels);
        spec.preset = session.algebra;
        spec.seed = session.seed;
        if args.literal {
            spec.reading = Reading::Literal;
        }
        for (k, v) in &args.bounds {
            if spec.bounds.contains_key(k) {
                spec.set_bound(k, *v)?;
            }
        }
        spec.validate()?;
        specs.push(spec);
    }
    for (k, _) in &args.bounds {
        if !specs.iter().any(|s| s.bounds.contains_key(k)) {
            return Err(Error::Config(format!("no selected check has a bound `{k}`")).into());
        }
    }
    Ok(specs)
}

fn report_json(session: &Session, spec: &CheckSpec, r: &CheckReport) -> Res<Value> {
    let mut v = serde_json::to_value(r)?;
    v["config"] = session.echo();
    v["profileBounds"] = json!(spec.bounds);
    Ok(v)
}

fn check(session: &Session, args: &CheckArgs) -> Res<ExitCode> {
    let specs = check_specs(session, args)?;
    let checker = Checker::new(session.labels, session.jobs);
    if session.format == Format::Text {
        let algebra = session.algebra.map_or("per-check", |k| k.name());
        let reading = if args.literal { "literal" } else { "corrected" };
        emit(&session.header(algebra))?;
        emit(&format!(
            "# profile={} reading={reading}",
            args.profile.as_str()
        ))?;
    }
    let mut reports = Vec::new();
    let mut failed = 0;
    for spec in &specs {
        let r = run_check(&checker, spec)?;
        failed += usize::from(!r.pass);
        match session.format {
            Format::Text => {
                emit(&r.summary())?;
                for f in &r.failures {
                    emit(&format!("  {} {}", f.part, f.args))?;
                }
            }
            Format::Json => reports.push(report_json(session, spec, &r)?),
        }
    }
    match session.format {
        Format::Text => emit(&format!(
            "summary: {} check(s), {} failed",
            specs.len(),
            failed
        ))?,
        Format::Json => emit_json(&Value::Array(reports))?,
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
