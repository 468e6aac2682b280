//! Command pipelines.

use std::path::Path;
use std::sync::Arc;

use gvfan_algebra::complex::is_minimal;
use gvfan_algebra::{
    cylinder_iterates, generic_decomposition, hom_complexes, is_presilting, is_presilting_over, Algebra, AlgebraPresentation, ComplexFile, Field,
    FieldSpec, GenericDecomposition, Gf, Rationals, Ring, TwoTermComplex,
};
use gvfan_core::{
    classify, coverage, enumerate_seeds, fan_from_seeds, fan_is_valid, halfspace_detect, mutation_class, CoverageReport, ExchangeMatrix, Fan, FanFile,
    MutationClassReport, Sampler, SeedSet, ValidityReport,
};
use gvfan_scatter::{attach_fan_functions, complete_rank2, ScatterLattice, WallFile};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::*;
use crate::cache::{cache_key, Cache, CacheStatus};
use crate::error::CliError;
use crate::io::{read_json, read_text, to_pretty, write_atomic};

/// Everything a report carries besides the result.
#[derive(Serialize)]
pub struct Report<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: &'a Cli,
    pub result: Value,
}

fn json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Mutate(_) => "mutate",
        Command::Class(_) => "class",
        Command::Classify(_) => "classify",
        Command::Fan(_) => "fan",
        Command::Density(_) => "density",
        Command::Halfspace(_) => "halfspace",
        Command::Alg(AlgCommand::Hom(_)) => "alg-hom",
        Command::Alg(AlgCommand::Presilt(_)) => "alg-presilt",
        Command::Alg(AlgCommand::Cyl(_)) => "alg-cyl",
        Command::Alg(AlgCommand::Gdecomp(_)) => "alg-gdecomp",
        Command::Scatter(ScatterCommand::Complete(_)) => "scatter-complete",
        Command::Scatter(ScatterCommand::Attach(_)) => "scatter-attach",
    }
}

/// Runs `cli` and returns the report bytes, also written to `--output`
/// when given.
pub fn execute(cli: &Cli) -> Result<Vec<u8>, CliError> {
    if let Some(t) = cli.global.threads {
        // a pool may already exist when running in-process more than once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global();
    }
    let cache = Cache::new(cli.global.cache_dir.clone(), cli.global.verify_cache);
    let result = match &cli.command {
        Command::Mutate(a) => mutate(a)?,
        Command::Class(a) => class(a, &cache)?,
        Command::Classify(a) => {
            let b = read_quiver(&a.quiver)?;
            json(serde_json::json!({ "rank": b.rank(), "classification": classify(&b, a.budget as usize)? }))
        }
        Command::Fan(a) => fan(a, &cache)?,
        Command::Density(a) => density(a, &cache)?,
        Command::Halfspace(a) => halfspace(a, &cache)?,
        Command::Alg(c) => alg(c, cli.global.seed)?,
        Command::Scatter(c) => scatter(c)?,
    };
    let bytes = to_pretty(&Report {
        tool: "gvfan",
        version: env!("CARGO_PKG_VERSION"),
        command: command_name(&cli.command),
        config: cli,
        result,
    });
    if let Some(out) = &cli.global.output {
        write_atomic(out, &bytes)?;
    }
    Ok(bytes)
}

fn read_quiver(path: &Path) -> Result<ExchangeMatrix, CliError> {
    ExchangeMatrix::parse(&read_text(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn note(status: CacheStatus, key: &str) {
    match status {
        CacheStatus::Disabled => {}
        CacheStatus::Miss => eprintln!("cache miss {key}"),
        CacheStatus::Hit => eprintln!("cache hit {key}"),
        CacheStatus::Verified => eprintln!("cache verified {key}"),
    }
}

#[derive(Serialize)]
struct MutateResult {
    input: ExchangeMatrix,
    sequence: Vec<usize>,
    result: ExchangeMatrix,
    arrows: Vec<(usize, usize, i64)>,
}

fn mutate(a: &MutateArgs) -> Result<Value, CliError> {
    let b = read_quiver(&a.quiver)?;
    let out = b.mutate_along(&a.seq)?;
    Ok(json(MutateResult {
        arrows: out.arrows(),
        input: b,
        sequence: a.seq.clone(),
        result: out,
    }))
}

fn class(a: &ClassArgs, cache: &Cache) -> Result<Value, CliError> {
    let b = read_quiver(&a.quiver)?;
    let key = cache_key("class", &b, &format!("budget={}", a.budget));
    let (report, status) = cache.get_or_compute::<MutationClassReport, _>(&key, || Ok(mutation_class(&b, a.budget as usize)?))?;
    note(status, &key);
    Ok(json(report))
}

fn seeds(a: &SeedArgs, cache: &Cache) -> Result<(ExchangeMatrix, SeedSet), CliError> {
    let b = read_quiver(&a.quiver)?;
    let key = cache_key("seeds", &b, &format!("depth={};max_seeds={}", a.depth, a.max_seeds));
    let (set, status) = cache.get_or_compute::<SeedSet, _>(&key, || Ok(enumerate_seeds(&b, a.depth as usize, a.max_seeds as usize)?))?;
    note(status, &key);
    Ok((b, set))
}

#[derive(Serialize)]
struct SeedSummary {
    depth: u64,
    seeds: usize,
    complete: bool,
    truncated: bool,
}

fn summary(a: &SeedArgs, s: &SeedSet) -> SeedSummary {
    SeedSummary {
        depth: a.depth,
        seeds: s.len(),
        complete: s.complete,
        truncated: s.truncated,
    }
}

#[derive(Serialize)]
struct FanResult {
    enumeration: SeedSummary,
    rays: Vec<Vec<i64>>,
    cones: usize,
    fan: FanFile,
    validity: ValidityReport,
    coverage: CoverageReport,
}

fn sampler_for(f: &Fan, s: Option<Sampler>) -> Sampler {
    s.unwrap_or_else(|| Sampler::for_dim(f.ambient_dim()))
}

fn fan(a: &FanArgs, cache: &Cache) -> Result<Value, CliError> {
    let (_, set) = seeds(&a.seeds, cache)?;
    let f = fan_from_seeds(&set)?;
    let file = f.to_file();
    if let Some(p) = &a.fan_out {
        write_atomic(p, &to_pretty(&file))?;
    }
    Ok(json(FanResult {
        enumeration: summary(&a.seeds, &set),
        rays: f.rays(),
        cones: f.cones().len(),
        validity: fan_is_valid(&f, Some(a.max_pairs as usize)),
        coverage: coverage(&f, a.samples as usize, sampler_for(&f, a.sampler))?,
        fan: file,
    }))
}

fn density(a: &DensityArgs, cache: &Cache) -> Result<Value, CliError> {
    let (_, set) = seeds(&a.seeds, cache)?;
    let f = fan_from_seeds(&set)?;
    let cov = coverage(&f, a.samples as usize, sampler_for(&f, a.sampler))?;
    Ok(json(serde_json::json!({ "enumeration": summary(&a.seeds, &set), "coverage": cov })))
}

#[derive(Serialize)]
struct HalfspaceResult {
    enumeration: SeedSummary,
    rays: usize,
    normal: Option<Vec<i64>>,
    /// Every ray has `normal · r ≤ 0`.
    verified: bool,
}

fn halfspace(a: &HalfspaceArgs, cache: &Cache) -> Result<Value, CliError> {
    let (_, set) = seeds(&a.seeds, cache)?;
    let f = fan_from_seeds(&set)?;
    let rays = f.rays();
    let normal = halfspace_detect(&f);
    let verified = normal
        .as_ref()
        .is_some_and(|v| rays.iter().all(|r| r.iter().zip(v).map(|(x, y)| (*x as i128) * (*y as i128)).sum::<i128>() <= 0));
    Ok(json(HalfspaceResult {
        enumeration: summary(&a.seeds, &set),
        rays: rays.len(),
        normal,
        verified,
    }))
}

fn load_algebra(path: &Path) -> Result<Arc<Algebra>, CliError> {
    let pres = AlgebraPresentation::parse(&read_text(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(Algebra::new(pres)?))
}

/// Presilting test over the ring's own field.
trait Presilt: Field + Sized {
    fn presilting(ring: &Ring<Self>, x: &TwoTermComplex<Self::Elem>) -> gvfan_algebra::Result<bool>;
}

impl Presilt for Rationals {
    fn presilting(ring: &Ring<Self>, x: &TwoTermComplex<Self::Elem>) -> gvfan_algebra::Result<bool> {
        is_presilting(ring, x)
    }
}

impl Presilt for Gf {
    fn presilting(ring: &Ring<Self>, x: &TwoTermComplex<Self::Elem>) -> gvfan_algebra::Result<bool> {
        is_presilting_over(ring, x)
    }
}

fn load_complex<F: Field>(ring: &Ring<F>, path: &Path) -> Result<TwoTermComplex<F::Elem>, CliError> {
    let file: ComplexFile = read_json(path)?;
    file.to_complex(ring).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct CylStep {
    m: usize,
    d: usize,
    g_vector: Vec<i64>,
    presilting: bool,
    complex: ComplexFile,
}

fn alg_over<F: Presilt>(ring: Ring<F>, c: &AlgCommand) -> Result<Value, CliError> {
    match c {
        AlgCommand::Hom(a) => {
            let x = load_complex(&ring, &a.x)?;
            let y = load_complex(&ring, &a.y)?;
            let h = hom_complexes(&ring, &x, &y, a.shift)?;
            Ok(serde_json::json!({
                "shift": a.shift,
                "dim": h.quotient_dim,
                "ambient_dim": h.ambient_dim,
                "chain_dim": h.chain_dim,
                "null_homotopic_dim": h.homotopy.rank(),
            }))
        }
        AlgCommand::Presilt(a) => {
            let x = load_complex(&ring, &a.complex)?;
            Ok(serde_json::json!({
                "g_vector": x.g_vector(),
                "minimal": is_minimal(&ring, &x),
                "presilting": F::presilting(&ring, &x)?,
            }))
        }
        AlgCommand::Cyl(a) => {
            let u = load_complex(&ring, &a.u)?;
            let h = load_complex(&ring, &a.h)?;
            let steps = cylinder_iterates(&ring, &u, &h, a.iterations as usize)?
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    Ok(CylStep {
                        m: i + 1,
                        d: c.d,
                        g_vector: c.complex.g_vector(),
                        presilting: F::presilting(&ring, &c.complex)?,
                        complex: ComplexFile::from_complex(&ring, &c.complex),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(json(serde_json::json!({ "steps": steps })))
        }
        AlgCommand::Gdecomp(_) => unreachable!("handled over the rationals"),
    }
}

fn alg(c: &AlgCommand, seed: u64) -> Result<Value, CliError> {
    let path = match c {
        AlgCommand::Hom(a) => &a.algebra,
        AlgCommand::Presilt(a) => &a.algebra,
        AlgCommand::Cyl(a) => &a.algebra,
        AlgCommand::Gdecomp(a) => &a.algebra,
    };
    let algebra = load_algebra(path)?;
    let field = algebra.presentation().field.clone();
    if let AlgCommand::Gdecomp(a) = c {
        if field != FieldSpec::Rationals {
            return Err(CliError::Domain("generic decomposition needs an algebra over the rationals".into()));
        }
        if a.g.len() != algebra.vertices() {
            return Err(CliError::Domain(format!("g has {} entries, the algebra has {} vertices", a.g.len(), algebra.vertices())));
        }
        let ring = Ring::new(algebra, Rationals)?;
        let d: GenericDecomposition = generic_decomposition(&ring, &a.g, a.trials as usize, a.coeff_range as i64, seed)?;
        return Ok(json(serde_json::json!({ "g": a.g, "decomposition": d })));
    }
    match field {
        FieldSpec::Rationals => alg_over(Ring::new(algebra, Rationals)?, c),
        FieldSpec::Prime(p) => alg_over(Ring::new(algebra, Gf::prime(p))?, c),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormFile {
    Bare(Vec<Vec<i64>>),
    Wrapped { form: Vec<Vec<i64>> },
}

fn read_form(path: &Path) -> Result<ScatterLattice, CliError> {
    let rows = match read_json::<FormFile>(path)? {
        FormFile::Bare(m) | FormFile::Wrapped { form: m } => m,
    };
    Ok(ScatterLattice::new(rows)?)
}

#[derive(Serialize)]
struct CompleteResult {
    form: Vec<Vec<i64>>,
    order: u64,
    inserted: usize,
    consistent: bool,
    walls: Vec<WallFile>,
}

fn scatter(c: &ScatterCommand) -> Result<Value, CliError> {
    match c {
        ScatterCommand::Complete(a) => {
            let l = read_form(&a.form)?;
            let comp = complete_rank2(&l, a.order as usize)?;
            if !comp.loop_product.is_zero() {
                return Err(CliError::Domain(format!("loop product is nonzero at order {}", a.order)));
            }
            Ok(json(CompleteResult {
                form: l.form.clone(),
                order: a.order,
                inserted: comp.inserted.len(),
                consistent: true,
                walls: comp.walls.iter().map(|w| w.to_file()).collect(),
            }))
        }
        ScatterCommand::Attach(a) => {
            let file: FanFile = read_json(&a.fan)?;
            let f = Fan::from_file(&file)?;
            let l = match (&a.form, &a.quiver) {
                (Some(p), _) => read_form(p)?,
                (None, Some(q)) => ScatterLattice::from_quiver(&read_quiver(q)?),
                (None, None) => return Err(CliError::Usage("one of --form or --quiver is required".into())),
            };
            let att = attach_fan_functions(&f, &l, a.order as usize)?;
            for w in &att.skipped {
                eprintln!("warning: {w}");
            }
            Ok(serde_json::json!({
                "order": a.order,
                "walls": att.walls.iter().map(|w| w.to_file()).collect::<Vec<_>>(),
                "skipped": att.skipped,
            }))
        }
    }
}
