//! The `compute`, `diagram`, `verify` and `perturb` pipelines.

use std::collections::BTreeMap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wellcap_core::perturbation::{
    containment_check_with, extension_to_perturbation, sample_perturbations, skeletal_perturbation,
    PerturbationError, PerturbationSample, Strategy, Verdict,
};
use wellcap_core::{
    cap_image, cap_module, extract_events, obstruction_class, obstruction_cocycle, Filtration, PLMap,
    Simplex, SublevelPair, VertexId, Q,
};

use crate::problem::{MapFile, Problem, ProblemFile};
use crate::report::{
    ints, matrix, rational, DegreeReport, EventReport, MapReport, ObstructionReport, RadiusReport, Report,
    VerdictReport, VerificationReport,
};
use crate::CliError;

fn filtration(problem: &Problem, extra: &[Q]) -> Result<Filtration, CliError> {
    let schedule = problem.schedule(extra)?;
    Ok(Filtration::new(&problem.k, &problem.b, &problem.f, schedule, problem.norm)?)
}

/// Degrees `k` to cap against: `n ≤ k ≤ dim X`, or the one requested.
fn degrees(pair: &SublevelPair, n: usize, only: Option<usize>) -> Vec<usize> {
    let top = pair.x.dim().unwrap_or(0);
    match only {
        Some(k) => vec![k],
        None if pair.x.is_empty() || top < n => Vec::new(),
        None => (n..=top).collect(),
    }
}

fn radius_report(filt: &Filtration, r: &Q, only: Option<usize>) -> Result<RadiusReport, CliError> {
    let pair = filt.pair(r)?;
    let z = obstruction_cocycle(&pair, &filt.f_star)?;
    let class = obstruction_class(&z)?;
    let mut degs = Vec::new();
    for k in degrees(&pair, filt.n(), only) {
        if k < filt.n() {
            return Err(CliError::Invalid(format!("degree {k} is below n = {}", filt.n())));
        }
        degs.push(DegreeReport::from_cap(&cap_image(&pair, &z, k)?));
    }
    Ok(RadiusReport {
        radius: rational(r),
        x_simplices: pair.x.len(),
        a_simplices: pair.a.len(),
        b_simplices: pair.b_cap.len(),
        obstruction: ObstructionReport {
            test_point: z.test_point.iter().map(rational).collect(),
            support: z.cochain.support().count(),
            group: class.group.iso_type().to_string(),
            class: ints(&class.coordinates),
            trivial: class.is_trivial,
        },
        degrees: degs,
    })
}

fn base_report(command: &str, problem: &Problem, radii: Vec<RadiusReport>) -> Report {
    Report {
        command: command.to_string(),
        norm: problem.norm.name().to_string(),
        n: problem.f.n(),
        radii,
        maps: None,
        events: None,
        verification: None,
    }
}

/// Sublevel pair, obstruction class and cap images at `radius`, or at every
/// radius of the file when none is given.
pub fn compute(problem: &Problem, radius: Option<Q>, degree: Option<usize>) -> Result<Report, CliError> {
    let extra: Vec<Q> = radius.iter().cloned().collect();
    let filt = filtration(problem, &extra)?;
    let targets: Vec<Q> = match radius {
        Some(r) => vec![r],
        None => filt.radii.radii().to_vec(),
    };
    let radii = targets.iter().map(|r| radius_report(&filt, r, degree)).collect::<Result<_, _>>()?;
    Ok(base_report("compute", problem, radii))
}

/// The cap module over the radius schedule and its events.
pub fn diagram(problem: &Problem, radii: Option<Vec<Q>>) -> Result<Report, CliError> {
    let problem = match radii {
        Some(rs) => Problem { radii: rs, ..problem.clone() },
        None => problem.clone(),
    };
    let schedule = problem.schedule(&[])?;
    let module = cap_module(&problem.k, &problem.b, &problem.f, schedule, problem.norm)?;
    let mut radius_reports = Vec::new();
    for (i, r) in module.radii().radii().iter().enumerate() {
        let mut rep = radius_report(&module.filtration, r, None)?;
        rep.degrees = module.reports[i].iter().map(DegreeReport::from_cap).collect();
        radius_reports.push(rep);
    }
    let mut maps = Vec::new();
    let rs = module.radii().radii();
    for (i, per_degree) in module.maps.iter().enumerate() {
        for (d, iota) in per_degree.iter().enumerate() {
            maps.push(MapReport {
                from: rational(&rs[i]),
                to: rational(&rs[i + 1]),
                degree: module.degrees[d],
                iota: matrix(iota),
                returns: matrix(&module.returns[i][d]),
            });
        }
    }
    let events = extract_events(&module)
        .into_iter()
        .map(|e| EventReport {
            radius: rational(&e.radius),
            degree: e.degree,
            multiplicity: e.multiplicity,
            torsion: e.torsion.map(|t| t.to_string()),
        })
        .collect();
    let mut report = base_report("diagram", &problem, radius_reports);
    report.maps = Some(maps);
    report.events = Some(events);
    Ok(report)
}

/// How `count` samples split into strategies: one constant shift, a third
/// extremal, the rest random.
fn split(count: usize) -> [(Strategy, usize); 3] {
    let adversarial = count.min(1);
    let extremal = count.saturating_sub(adversarial) / 3;
    [
        (Strategy::Random, count - adversarial - extremal),
        (Strategy::Extremal, extremal),
        (Strategy::Adversarial, adversarial),
    ]
}

/// Draws `count` perturbations with `seed` and checks containment in every
/// degree. The returned flag is true if some sample violated containment.
pub fn verify(
    problem: &Problem,
    radius: Q,
    count: usize,
    seed: u64,
    degree: Option<usize>,
) -> Result<(Report, bool), CliError> {
    let filt = filtration(problem, std::slice::from_ref(&radius))?;
    let rep = radius_report(&filt, &radius, degree)?;
    let pair = filt.pair(&radius)?;
    let z = obstruction_cocycle(&pair, &filt.f_star)?;
    let caps = rep
        .degrees
        .iter()
        .map(|d| cap_image(&pair, &z, d.k))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<PerturbationSample> = Vec::new();
    for (strategy, n) in split(count) {
        samples.extend(sample_perturbations(&pair.x, &filt.f_star, &radius, problem.norm, n, strategy, &mut rng));
    }
    let mut verdicts = Vec::new();
    let (mut contained, mut violated, mut rejected) = (0, 0, 0);
    for (idx, s) in samples.iter().enumerate() {
        for cap in &caps {
            let mut v = VerdictReport {
                sample: idx,
                provenance: s.provenance.name().to_string(),
                bound: rational(&s.bound),
                k: cap.k,
                verdict: String::new(),
                generator: None,
                detail: None,
            };
            match containment_check_with(&pair, cap, s) {
                Ok(Verdict::Contained) => {
                    contained += 1;
                    v.verdict = "contained".into();
                }
                Ok(Verdict::Violated { generator, coordinates }) => {
                    violated += 1;
                    v.verdict = "violated".into();
                    v.generator = Some(generator);
                    v.detail = Some(format!("generator coordinates {:?}", ints(&coordinates)));
                }
                Err(PerturbationError::NonGeneric(sigma)) => {
                    rejected += 1;
                    v.verdict = "rejected".into();
                    v.detail = Some(format!("non-generic zero set on {sigma}"));
                }
                Err(e) => return Err(e.into()),
            }
            verdicts.push(v);
        }
    }
    let mut report = base_report("verify", problem, vec![rep]);
    report.verification = Some(VerificationReport {
        radius: rational(&radius),
        seed,
        samples: samples.len(),
        contained,
        violated,
        rejected,
        verdicts,
    });
    Ok((report, violated > 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Dual,
    Extension,
}

/// Completes an auxiliary map on the vertices of `X`: explicit values win,
/// vertices of `A` take `f`, and the rest are interpolated from the original
/// vertices of their carrier when all of those have values.
fn complete_aux(filt: &Filtration, pair: &SublevelPair, aux: &PLMap) -> Result<PLMap, CliError> {
    if aux.n() != filt.n() {
        return Err(CliError::Precondition(format!("auxiliary map has n = {}, expected {}", aux.n(), filt.n())));
    }
    let mut values = BTreeMap::new();
    for v in pair.x.vertices() {
        let val = if let Some(x) = aux.get(v) {
            x.to_vec()
        } else if pair.a.contains(&Simplex::vertex(v)) {
            filt.f_star.value(v).to_vec()
        } else {
            let coords = &filt.record.vertex_coords[&v];
            if coords.keys().any(|u| aux.get(*u).is_none()) {
                return Err(PerturbationError::MissingValue(v).into());
            }
            let mut acc = vec![Q::from_integer(0.into()); aux.n()];
            for (u, t) in coords {
                for (a, x) in acc.iter_mut().zip(aux.value(*u)) {
                    *a += t * x;
                }
            }
            acc
        };
        values.insert(v, val);
    }
    Ok(PLMap::new(aux.n(), values)?)
}

/// Builds a strict `r`-perturbation; `i` is the skeleton index of dual mode.
pub fn construct(
    problem: &Problem,
    radius: &Q,
    mode: Mode,
    aux: Option<&MapFile>,
    i: Option<usize>,
) -> Result<(Filtration, SublevelPair, PerturbationSample), CliError> {
    let filt = filtration(problem, std::slice::from_ref(radius))?;
    let pair = filt.pair(radius)?;
    let aux = aux.map(MapFile::to_map).transpose()?;
    let sample = match mode {
        Mode::Dual => {
            let h = aux.ok_or_else(|| {
                CliError::Precondition("dual mode needs the map h on A and the skeleton (--aux PATH)".into())
            })?;
            let h = complete_aux(&filt, &pair, &h)?;
            skeletal_perturbation(&pair, &filt.f_star, &h, i.unwrap_or(filt.n()), problem.norm)?.sample
        }
        Mode::Extension => {
            let e = match aux {
                Some(e) => complete_aux(&filt, &pair, &e)?,
                None => filt.f_star.clone(),
            };
            extension_to_perturbation(&pair, &filt.f_star, &e, problem.norm)?
        }
    };
    Ok((filt, pair, sample))
}

/// [`construct`], returned as a problem file over the subdivision `g` lives on.
pub fn perturb(
    problem: &Problem,
    radius: Q,
    mode: Mode,
    aux: Option<&MapFile>,
    i: Option<usize>,
) -> Result<ProblemFile, CliError> {
    let (_, pair, sample) = construct(problem, &radius, mode, aux, i)?;
    let target = &sample.domain.target;
    let b = target.filter(|s| pair.b_cap.contains(&sample.domain.carrier[s]));
    let g = PLMap::new(sample.g.n(), target.vertices().map(|v| (v, sample.g.value(v).to_vec())).collect::<BTreeMap<VertexId, _>>())?;
    Ok(ProblemFile::from_parts(target, &b, &g, problem.norm, &[radius]))
}
