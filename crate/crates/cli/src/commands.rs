//! One function per subcommand. Each returns the `results` value, the counterexamples, and an
//! optional table for CSV export.

use std::fs;
use std::io::{self, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hallforge::cpx::{GradedObject, PeriodSpec};
use hallforge::dha::{gamma_terms, CheckReport, DhaContext, Mismatch, RelationFamily};
use hallforge::hall::hall_table;
use hallforge::repcat::{Category, DimVec, Quiver};
use hallforge::sweep::{
    assoc_sweep, assoc_triples, graded_pool, green_sweep, relation_sweep, theorem_crosscheck, GradedBounds,
};
use hallforge::Limits;

use crate::cache::{cache_dir_from_env, Cache};
use crate::report::{fingerprint, mismatch_table, CliError, Report, Table, EXIT_MISMATCH, EXIT_OK};
use crate::RunArgs;

type Outcome = (Value, Vec<Mismatch>, Option<Table>);

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn period(args: &RunArgs, default: i64) -> Result<PeriodSpec, CliError> {
    Ok(PeriodSpec::new(args.t.unwrap_or(default))?)
}

pub fn run(command: &str, args: &RunArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let text = fs::read_to_string(&args.quiver)
        .map_err(|e| usage(format!("cannot read quiver {}: {e}", args.quiver.display())))?;
    let quiver = Quiver::from_json(&text)?;
    let canonical = quiver.to_canonical_json();
    if args.q < 2 {
        return Err(usage("--q must be a prime"));
    }
    let cat = Category::new(quiver, args.q, Limits::default())?;

    let cache = cache_dir_from_env().map(|dir| Cache::new(dir, &canonical, args.q, args.t.unwrap_or(0)));
    if let Some(c) = &cache {
        if let Err(e) = c.load(&cat) {
            eprintln!("warning: {e}; recomputing");
        }
    }

    let (results, counterexamples, table) = match command {
        "classes" => classes(&cat, args)?,
        "hall" => hall(&cat, args)?,
        "green" => green(&cat, args)?,
        "gamma" => gamma(&cat, args)?,
        "dha-mul" => dha_mul(&cat, args)?,
        "dha-assoc" => dha_assoc(&cat, args)?,
        "relations" => relations(&cat, args)?,
        "crosscheck" => crosscheck(&cat, args)?,
        other => return Err(usage(format!("unknown command {other}"))),
    };

    if let Some(c) = &cache {
        if let Err(e) = c.store(&cat) {
            eprintln!("warning: could not store cache: {e}");
        }
    }
    if let (Some(path), Some(t)) = (&args.csv, &table) {
        t.write(path)?;
    }
    let report = Report {
        command: command.to_string(),
        fingerprint: fingerprint(&canonical, &(command, args)),
        results,
        counterexamples,
        timing_ms: (!args.no_timing).then(|| start.elapsed().as_millis() as u64),
    };
    // a closed stdout (e.g. piped into `head`) is not an error worth reporting
    let _ = writeln!(
        io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(if report.counterexamples.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn dims_in_scope(cat: &Category, args: &RunArgs, default_max: usize) -> Result<Vec<DimVec>, CliError> {
    match &args.dim {
        Some(d) => {
            let d = DimVec::new(d)?;
            if d.len() != cat.vertex_count() {
                return Err(usage(format!("--dim needs {} entries", cat.vertex_count())));
            }
            Ok(vec![d])
        }
        None => Ok(DimVec::all_up_to(
            cat.vertex_count(),
            args.max_dim.unwrap_or(default_max),
        )),
    }
}

fn classes(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let mut list = Vec::new();
    let mut table = Table::new(vec!["class", "dims", "aut", "orbit_size"]);
    for d in dims_in_scope(cat, args, 2)? {
        for c in cat.classes(&d)? {
            let rep = cat.rep(&c)?;
            let maps: Vec<Vec<Vec<u32>>> = rep
                .maps()
                .iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
                .collect();
            let aut = cat.aut(&c)?.to_string();
            let orbit = cat.orbit_size(&c)?;
            table.push(vec![c.label(), d.to_string(), aut.clone(), orbit.to_string()]);
            list.push(json!({ "class": c.label(), "dims": d.to_vec(), "aut": aut, "orbit_size": orbit, "maps": maps }));
        }
    }
    Ok((json!({ "count": list.len(), "classes": list }), Vec::new(), Some(table)))
}

fn hall(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let mut entries = Vec::new();
    let mut table = Table::new(vec!["quotient", "sub", "middle", "g"]);
    for d in dims_in_scope(cat, args, 2)? {
        for c in cat.classes(&d)? {
            for (&(a, b), &g) in hall_table(cat, &c)?.iter() {
                table.push(vec![a.label(), b.label(), c.label(), g.to_string()]);
                entries.push(json!({ "quotient": a.label(), "sub": b.label(), "middle": c.label(), "g": g }));
            }
        }
    }
    Ok((
        json!({ "count": entries.len(), "entries": entries }),
        Vec::new(),
        Some(table),
    ))
}

fn summary(reports: &[CheckReport]) -> Value {
    let items: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "checked": r.checked,
                "failed": r.mismatches.len(),
                "passed": r.passed(),
                "notes": r.notes,
            })
        })
        .collect();
    json!({ "checks": items, "passed": reports.iter().all(CheckReport::passed) })
}

fn check_outcome(reports: Vec<CheckReport>) -> Outcome {
    let results = summary(&reports);
    let mut mismatches: Vec<Mismatch> = reports.into_iter().flat_map(|r| r.mismatches).collect();
    mismatches.sort_by(|a, b| (&a.instance, &a.basis).cmp(&(&b.instance, &b.basis)));
    let table = mismatch_table(&mismatches);
    (results, mismatches, Some(table))
}

fn green(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let cap = match &args.dim {
        Some(d) => Some(DimVec::new(d)?),
        None => None,
    };
    let max = args.max_dim.unwrap_or_else(|| cap.map_or(2, |c| c.total()));
    Ok(check_outcome(vec![green_sweep(cat, max, cap.as_ref())?]))
}

fn gamma(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let classes = cat.classes_up_to(args.max_dim.unwrap_or(2))?;
    let mut entries = Vec::new();
    let mut table = Table::new(vec!["a", "b", "m", "n", "gamma"]);
    for a in &classes {
        for b in &classes {
            for (m, n, g) in gamma_terms(cat, a, b)? {
                table.push(vec![a.label(), b.label(), m.label(), n.label(), g.to_string()]);
                entries.push(
                    json!({ "a": a.label(), "b": b.label(), "m": m.label(), "n": n.label(), "gamma": g.to_string() }),
                );
            }
        }
    }
    Ok((
        json!({ "count": entries.len(), "entries": entries }),
        Vec::new(),
        Some(table),
    ))
}

fn dha_mul(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let p = period(args, 0)?;
    let (Some(l), Some(r)) = (&args.lhs, &args.rhs) else {
        return Err(usage("dha-mul needs --lhs and --rhs"));
    };
    let lhs = GradedObject::parse(cat, p, l)?;
    let rhs = GradedObject::parse(cat, p, r)?;
    let ctx = DhaContext::new(cat, p);
    let prod = ctx.mul(&lhs, &rhs)?;
    let mut table = Table::new(vec!["basis", "coefficient"]);
    for (k, v) in prod.to_string_map() {
        table.push(vec![k, v]);
    }
    let results = json!({
        "t": p.t(),
        "lhs": lhs.to_string(),
        "rhs": rhs.to_string(),
        "coefficients": prod.to_string_map(),
    });
    Ok((results, Vec::new(), Some(table)))
}

/// Default family of graded objects for sweeps: for bounded objects `max_dim` bounds each
/// component and supports stay in `0..=hi` with width at most 2; for periodic objects it bounds
/// the total dimension.
fn pool(cat: &Category, p: PeriodSpec, max_dim: usize, hi: i64) -> Result<Vec<GradedObject>, CliError> {
    let bounds = if p.is_bounded() {
        GradedBounds::bounded(0, hi, max_dim, 2)
    } else {
        GradedBounds::periodic(p, max_dim)
    };
    Ok(graded_pool(cat, p, &bounds)?)
}

fn dha_assoc(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let p = period(args, 0)?;
    let max = args.max_dim.unwrap_or(if p.is_bounded() { 1 } else { 2 });
    let objects = pool(cat, p, max, 2)?;
    let ctx = DhaContext::new(cat, p);
    let report = match args.samples {
        None => assoc_sweep(&ctx, &objects)?,
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let triples: Vec<_> = (0..n)
                .map(|_| {
                    let mut pick = || objects.choose(&mut rng).expect("pool is never empty").clone();
                    (pick(), pick(), pick())
                })
                .collect();
            assoc_triples(&ctx, &triples)?
        }
    };
    let mut out = check_outcome(vec![report]);
    out.0["pool_size"] = json!(objects.len());
    Ok(out)
}

fn relations(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let families: Vec<RelationFamily> = match &args.family {
        Some(f) => vec![f.parse()?],
        None => RelationFamily::ALL
            .into_iter()
            .filter(|f| args.t.is_none_or(|t| t >= 0 && f.supports_period(t as u32)))
            .collect(),
    };
    if families.is_empty() {
        return Err(usage("no relation family applies to this period"));
    }
    let max = args.max_dim.unwrap_or(2);
    let mut reports = Vec::new();
    for f in families {
        let p = PeriodSpec::new(args.t.unwrap_or(f.default_period()))?;
        let ctx = DhaContext::new(cat, p);
        reports.push(relation_sweep(&ctx, f, max)?);
    }
    Ok(check_outcome(reports))
}

fn crosscheck(cat: &Category, args: &RunArgs) -> Result<Outcome, CliError> {
    let p = period(args, 0)?;
    if p.t() > 1 {
        return Err(usage("crosscheck supports --t 0 and --t 1"));
    }
    let max = args.max_dim.unwrap_or(if p.is_bounded() { 1 } else { 2 });
    let objects = pool(cat, p, max, 3)?;
    let ctx = DhaContext::new(cat, p);
    Ok(check_outcome(vec![theorem_crosscheck(&ctx, &objects)?]))
}
